//! Epimorphism detection by divisibility of Riley polynomials, and the
//! classification scans built on it.
//!
//! If `phi_{K2}` divides `phi_{K1}` there is an epimorphism `G(K1) -> G(K2)`.
//! The converse is not claimed: an empty result says nothing about
//! non-existence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::poly::{Divisibility, IntPoly};
use crate::riley::{compute_records, riley_polynomial, RileyRecord};
use crate::two_bridge::{enumerate_s, enumerate_s_plus, enumerate_sbar, TwoBridgePair};

/// Evidence for an epimorphism `G(source) -> G(target)`: `phi_source = phi_target · cofactor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpiPair {
    pub source: TwoBridgePair,
    pub target: TwoBridgePair,
    /// `None` when the quotient exists over `Q` but is not integral.
    pub cofactor: Option<IntPoly>,
    pub integral: bool,
}

impl EpiPair {
    fn from_division(source: TwoBridgePair, target: TwoBridgePair, division: Divisibility) -> Option<Self> {
        match division {
            Divisibility::No => None,
            Divisibility::Integral(q) => Some(EpiPair { source, target, cofactor: Some(q), integral: true }),
            Divisibility::Rational(_) => Some(EpiPair { source, target, cofactor: None, integral: false }),
        }
    }
}

/// Returns the divisibility evidence when `phi_{k2}` divides `phi_{k1}`.
pub fn detects_epimorphism(k1: &TwoBridgePair, k2: &TwoBridgePair) -> Option<EpiPair> {
    let source = riley_polynomial(k1);
    let target = riley_polynomial(k2);
    let division = target.divides(&source).expect("Riley polynomials are nonzero");
    EpiPair::from_division(*k1, *k2, division)
}

const SCREEN_POINTS: [i64; 5] = [-2, -1, 1, 2, 3];

/// Values at a few integers; a primitive divisor `f | g` forces `f(a) | g(a)`.
struct Screen {
    values: Vec<BigInt>,
    primitive: bool,
    degree: usize,
}

impl Screen {
    fn new(phi: &IntPoly) -> Self {
        Screen {
            values: SCREEN_POINTS.iter().map(|&a| phi.eval_int(&BigInt::from(a))).collect(),
            primitive: phi.content().is_one(),
            degree: phi.coeffs().len().saturating_sub(1),
        }
    }

    /// False only when `target` provably cannot divide `source`.
    fn may_divide(target: &Screen, source: &Screen) -> bool {
        if target.degree > source.degree {
            return false;
        }
        if !target.primitive {
            return true;
        }
        target.values.iter().zip(&source.values).all(|(t, s)| {
            if t.is_zero() {
                s.is_zero()
            } else {
                (s % t).is_zero()
            }
        })
    }
}

/// All `(k1, k2)` among `records` with `alpha1 > alpha2` and `phi_{k2} | phi_{k1}`,
/// ordered by `(alpha1, beta1, alpha2, beta2)` when `records` is in `(alpha, beta)` order.
pub fn scan_epi_pairs_in(records: &[RileyRecord]) -> Vec<EpiPair> {
    let screens: Vec<Screen> = records.par_iter().map(|r| Screen::new(&r.phi)).collect();
    records
        .par_iter()
        .enumerate()
        .map(|(i, source)| {
            records
                .iter()
                .enumerate()
                .filter(|(j, target)| {
                    target.pair.alpha() < source.pair.alpha() && Screen::may_divide(&screens[*j], &screens[i])
                })
                .filter_map(|(_, target)| {
                    let division = target.phi.divides(&source.phi).expect("Riley polynomials are nonzero");
                    EpiPair::from_division(source.pair, target.pair, division)
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn scan_epi_pairs(max_alpha: i64) -> Vec<EpiPair> {
    scan_epi_pairs_in(&compute_records(&enumerate_s_plus(max_alpha)))
}

/// Pairs sharing one exact Riley polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyGroup {
    pub phi: IntPoly,
    pub members: Vec<TwoBridgePair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub first: TwoBridgePair,
    pub second: TwoBridgePair,
    pub phi: IntPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub max_alpha: i64,
    pub sbar_size: usize,
    /// Polynomial classes with more than one member.
    pub duplicate_groups: Vec<PolyGroup>,
    pub violations: Vec<Violation>,
}

impl ClassificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_injective(&self) -> bool {
        self.duplicate_groups.is_empty()
    }
}

/// Groups records by exact polynomial; groups ordered by their first member.
pub fn group_by_polynomial(records: &[RileyRecord]) -> Vec<PolyGroup> {
    let mut index: BTreeMap<&IntPoly, Vec<TwoBridgePair>> = BTreeMap::new();
    for r in records {
        index.entry(&r.phi).or_default().push(r.pair);
    }
    let mut groups: Vec<PolyGroup> = index
        .into_iter()
        .map(|(phi, mut members)| {
            members.sort();
            PolyGroup { phi: phi.clone(), members }
        })
        .collect();
    groups.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    groups
}

/// Equal polynomial must imply equivalence up to mirror image. `records`
/// should cover both signs of beta.
pub fn check_equal_polynomials_in(max_alpha: i64, records: &[RileyRecord]) -> ClassificationReport {
    let groups = group_by_polynomial(records);
    let mut violations = Vec::new();
    for g in &groups {
        for (i, a) in g.members.iter().enumerate() {
            for b in &g.members[i + 1..] {
                if !a.equivalent(b, true) {
                    violations.push(Violation { first: *a, second: *b, phi: g.phi.clone() });
                }
            }
        }
    }
    ClassificationReport {
        max_alpha,
        sbar_size: enumerate_sbar(max_alpha).len(),
        duplicate_groups: groups.into_iter().filter(|g| g.members.len() > 1).collect(),
        violations,
    }
}

pub fn check_equal_polynomials(max_alpha: i64) -> ClassificationReport {
    check_equal_polynomials_in(max_alpha, &compute_records(&enumerate_s(max_alpha)))
}

/// Any two distinct members of `sbar_records` with the same polynomial are reported.
pub fn check_injectivity_sbar_in(max_alpha: i64, sbar_records: &[RileyRecord]) -> ClassificationReport {
    let duplicate_groups: Vec<PolyGroup> =
        group_by_polynomial(sbar_records).into_iter().filter(|g| g.members.len() > 1).collect();
    let violations = duplicate_groups
        .iter()
        .flat_map(|g| {
            g.members.iter().enumerate().flat_map(move |(i, a)| {
                g.members[i + 1..].iter().map(move |b| Violation { first: *a, second: *b, phi: g.phi.clone() })
            })
        })
        .collect();
    ClassificationReport {
        max_alpha,
        sbar_size: sbar_records.len(),
        duplicate_groups,
        violations,
    }
}

pub fn check_injectivity_sbar(max_alpha: i64) -> ClassificationReport {
    check_injectivity_sbar_in(max_alpha, &compute_records(&enumerate_sbar(max_alpha)))
}
