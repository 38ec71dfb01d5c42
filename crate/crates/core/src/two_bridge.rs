//! 2-bridge knots `S(alpha, beta)` in Schubert normal form.
//!
//! Both parameters are odd with `-alpha < beta < alpha` and `gcd(alpha, beta) = 1`.
//! `S(a, b)` and `S(a, b')` are equivalent iff `b' = b^{±1} (mod a)`; up to
//! mirror image also `b' = -b^{±1} (mod a)`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("alpha must be positive (got {0})")]
    NonPositiveAlpha(i64),
    #[error("alpha must be odd (got {0})")]
    EvenAlpha(i64),
    #[error("beta must be odd (got {0})")]
    EvenBeta(i64),
    #[error("beta must satisfy -alpha < beta < alpha (got alpha={alpha}, beta={beta})")]
    BetaOutOfRange { alpha: i64, beta: i64 },
    #[error("gcd(alpha,beta) must be 1 (got gcd({alpha},{beta}) = {gcd})")]
    NotCoprime { alpha: i64, beta: i64, gcd: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoBridgePair {
    alpha: i64,
    beta: i64,
}

impl TwoBridgePair {
    /// Validates a Schubert pair. Checks run in a fixed order so each input
    /// reports the first invariant it breaks.
    pub fn new(alpha: i64, beta: i64) -> Result<Self, PairError> {
        if alpha <= 0 {
            return Err(PairError::NonPositiveAlpha(alpha));
        }
        if alpha.is_even() {
            return Err(PairError::EvenAlpha(alpha));
        }
        if beta <= -alpha || beta >= alpha {
            return Err(PairError::BetaOutOfRange { alpha, beta });
        }
        let gcd = alpha.gcd(&beta);
        if gcd != 1 {
            return Err(PairError::NotCoprime { alpha, beta, gcd });
        }
        if beta.is_even() {
            return Err(PairError::EvenBeta(beta));
        }
        Ok(TwoBridgePair { alpha, beta })
    }

    /// Accepts the even-beta convention: an even `beta` is replaced by
    /// `beta - alpha·sign(beta)`, which is odd and names the same knot.
    pub fn normalize_odd(alpha: i64, beta: i64) -> Result<Self, PairError> {
        if alpha > 0 && alpha.is_odd() && beta != 0 && beta.abs() < alpha && beta.is_even() {
            let gcd = alpha.gcd(&beta);
            if gcd != 1 {
                return Err(PairError::NotCoprime { alpha, beta, gcd });
            }
            return Self::new(alpha, beta - alpha * beta.signum());
        }
        Self::new(alpha, beta)
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn mirror(&self) -> Self {
        TwoBridgePair { alpha: self.alpha, beta: -self.beta }
    }

    pub fn epsilon_sequence(&self) -> EpsilonSequence {
        let eps = (1..self.alpha)
            .map(|i| {
                // floor(beta·i / alpha), rounding toward -infinity for negative beta
                if (self.beta * i).div_euclid(self.alpha).is_even() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        EpsilonSequence { eps }
    }

    /// Equivalence of knots; with `include_mirror` the mirror image counts as the same knot.
    pub fn equivalent(&self, other: &TwoBridgePair, include_mirror: bool) -> bool {
        if self.alpha != other.alpha {
            return false;
        }
        let a = self.alpha;
        let target = other.beta.rem_euclid(a);
        let b = self.beta.rem_euclid(a);
        let b_inv = mod_inverse(self.beta, a).expect("valid pairs are coprime");
        let mut candidates = vec![b, b_inv];
        if include_mirror {
            candidates.push((-b).rem_euclid(a));
            candidates.push((-b_inv).rem_euclid(a));
        }
        candidates.contains(&target)
    }

    /// True iff `beta = ±1 (mod alpha)`, i.e. the knot is the torus knot `T(2, alpha)`.
    pub fn is_torus(&self) -> bool {
        let b = self.beta.rem_euclid(self.alpha);
        b == 1 || b == self.alpha - 1
    }

    /// Lexicographically smallest positive-beta pair among the odd
    /// representatives of `beta`, `beta^-1`, `-beta`, `-beta^-1` (mod alpha).
    pub fn canonical(&self) -> TwoBridgePair {
        let a = self.alpha;
        let b_inv = mod_inverse(self.beta, a).expect("valid pairs are coprime");
        [self.beta, b_inv, -self.beta, -b_inv]
            .into_iter()
            .map(|r| odd_representative(r, a))
            .filter(|&b| b > 0)
            .min()
            .map(|beta| TwoBridgePair { alpha: a, beta })
            .expect("one of beta, -beta has a positive odd representative")
    }
}

impl fmt::Display for TwoBridgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.alpha, self.beta)
    }
}

/// The odd integer in `(-alpha, alpha)` congruent to `r` mod odd `alpha`.
fn odd_representative(r: i64, alpha: i64) -> i64 {
    let r = r.rem_euclid(alpha);
    if r.is_odd() {
        r
    } else {
        r - alpha
    }
}

/// Inverse of `b` modulo `m > 0` in `[0, m)` by the extended Euclidean algorithm.
pub fn mod_inverse(b: i64, m: i64) -> Option<i64> {
    let egcd = b.rem_euclid(m).extended_gcd(&m);
    (egcd.gcd == 1).then(|| egcd.x.rem_euclid(m))
}

/// The exponents `eps_1, ..., eps_{alpha-1}` of the relator word, each `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EpsilonSequence {
    eps: Vec<i8>,
}

impl EpsilonSequence {
    /// Wraps raw exponents; rejects any entry other than `±1`.
    pub fn from_signs(eps: Vec<i8>) -> Option<Self> {
        eps.iter().all(|&e| e == 1 || e == -1).then_some(EpsilonSequence { eps })
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.eps
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn is_palindrome(&self) -> bool {
        self.eps.iter().eq(self.eps.iter().rev())
    }

    pub fn negated(&self) -> Self {
        EpsilonSequence { eps: self.eps.iter().map(|e| -e).collect() }
    }
}

impl fmt::Display for EpsilonSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.eps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// All valid pairs with `3 <= alpha <= max_alpha` and `0 < beta < alpha`, in
/// lexicographic order. This is the set usually written `S_+`.
pub fn enumerate_s_plus(max_alpha: i64) -> Vec<TwoBridgePair> {
    (3..=max_alpha)
        .step_by(2)
        .flat_map(|alpha| {
            (1..alpha)
                .step_by(2)
                .filter_map(move |beta| TwoBridgePair::new(alpha, beta).ok())
        })
        .collect()
}

/// Members of `S_+` without a partner `(alpha, beta')` in `S_+` such that
/// `beta·beta' = 1 (mod alpha)` and `beta' < beta`.
pub fn enumerate_sbar(max_alpha: i64) -> Vec<TwoBridgePair> {
    enumerate_s_plus(max_alpha)
        .into_iter()
        .filter(|p| !has_smaller_inverse_partner(p))
        .collect()
}

fn has_smaller_inverse_partner(p: &TwoBridgePair) -> bool {
    // the only candidate in (0, alpha) is the residue of beta^-1 itself
    let inv = mod_inverse(p.beta, p.alpha).expect("valid pairs are coprime");
    inv.is_odd() && inv < p.beta
}

/// Every valid pair with `3 <= alpha <= max_alpha`, both signs of beta, ordered by (alpha, beta).
pub fn enumerate_s(max_alpha: i64) -> Vec<TwoBridgePair> {
    (3..=max_alpha)
        .step_by(2)
        .flat_map(|alpha| {
            (-alpha + 1..alpha)
                .filter_map(move |beta| TwoBridgePair::new(alpha, beta).ok())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(a: i64, b: i64) -> TwoBridgePair {
        TwoBridgePair::new(a, b).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(TwoBridgePair::new(7, 3).is_ok());
        assert_eq!(TwoBridgePair::new(7, 2), Err(PairError::EvenBeta(2)));
        assert!(matches!(TwoBridgePair::new(9, 3), Err(PairError::NotCoprime { gcd: 3, .. })));
        assert_eq!(TwoBridgePair::new(8, 3), Err(PairError::EvenAlpha(8)));
        assert_eq!(TwoBridgePair::new(-7, 3), Err(PairError::NonPositiveAlpha(-7)));
        assert_eq!(TwoBridgePair::new(0, 1), Err(PairError::NonPositiveAlpha(0)));
        assert!(matches!(TwoBridgePair::new(7, 7), Err(PairError::BetaOutOfRange { .. })));
        assert!(matches!(TwoBridgePair::new(7, -9), Err(PairError::BetaOutOfRange { .. })));
        assert!(TwoBridgePair::new(7, -3).is_ok());
        assert!(TwoBridgePair::new(1, 0).is_err());
    }

    #[test]
    fn error_message_names_gcd() {
        let msg = TwoBridgePair::new(9, 3).unwrap_err().to_string();
        assert!(msg.contains("gcd(alpha,beta) must be 1"), "{msg}");
    }

    #[test]
    fn normalize_odd_examples() {
        assert_eq!(TwoBridgePair::normalize_odd(15, 4).unwrap(), pair(15, -11));
        assert_eq!(TwoBridgePair::normalize_odd(7, 3).unwrap(), pair(7, 3));
        assert_eq!(TwoBridgePair::normalize_odd(5, 2).unwrap(), pair(5, -3));
        assert_eq!(TwoBridgePair::normalize_odd(5, -2).unwrap(), pair(5, 3));
        assert!(matches!(TwoBridgePair::normalize_odd(9, 6), Err(PairError::NotCoprime { .. })));
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(pair(7, 3).epsilon_sequence().as_slice(), &[1, 1, -1, -1, 1, 1]);
        assert_eq!(pair(7, 5).epsilon_sequence().as_slice(), &[1, -1, 1, 1, -1, 1]);
        assert_eq!(pair(3, 1).epsilon_sequence().as_slice(), &[1, 1]);
        assert_eq!(pair(5, 3).epsilon_sequence().as_slice(), &[1, -1, -1, 1]);
        // true floor: floor(-3/7) = -1
        assert_eq!(pair(7, -3).epsilon_sequence().as_slice(), &[-1, -1, 1, 1, -1, -1]);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(pair(7, 3).mirror(), pair(7, -3));
        assert_eq!(pair(15, 11).mirror(), pair(15, -11));
        assert_eq!(pair(9, 5).mirror().mirror(), pair(9, 5));
    }

    #[test]
    fn equivalence_examples() {
        assert!(pair(7, 3).equivalent(&pair(7, 5), false));
        assert!(pair(7, 3).equivalent(&pair(7, 3), false));
        assert!(!pair(5, 1).equivalent(&pair(5, 3), true));
        assert!(!pair(7, 3).equivalent(&pair(7, -3), false));
        assert!(pair(7, 3).equivalent(&pair(7, -3), true));
        assert!(!pair(7, 3).equivalent(&pair(9, 5), true));
    }

    #[test]
    fn enumerations() {
        let s = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| pair(a, b)).collect::<Vec<_>>();
        assert_eq!(enumerate_s_plus(3), s(&[(3, 1)]));
        assert_eq!(enumerate_s_plus(5), s(&[(3, 1), (5, 1), (5, 3)]));
        assert_eq!(enumerate_s_plus(7), s(&[(3, 1), (5, 1), (5, 3), (7, 1), (7, 3), (7, 5)]));
        assert_eq!(enumerate_s_plus(8), enumerate_s_plus(7));
        assert_eq!(enumerate_sbar(7), s(&[(3, 1), (5, 1), (5, 3), (7, 1), (7, 3)]));
        assert_eq!(enumerate_sbar(3), s(&[(3, 1)]));
        assert_eq!(enumerate_s(3), s(&[(3, -1), (3, 1)]));
        let sbar = enumerate_sbar(99);
        for a in (3..=99).step_by(2) {
            assert!(sbar.contains(&pair(a, 1)));
        }
    }

    #[test]
    fn torus_examples() {
        assert!(pair(5, 1).is_torus());
        assert!(!pair(7, 3).is_torus());
        assert!(pair(9, -1).is_torus());
        assert!(!pair(9, 7).is_torus());
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(pair(7, 5).canonical(), pair(7, 3));
        assert_eq!(pair(7, -3).canonical(), pair(7, 3));
        assert_eq!(pair(5, -3).canonical(), pair(5, 3));
        assert_eq!(pair(15, -11).canonical(), pair(15, 11));
    }

    #[test]
    fn palindrome_and_mirror_negation_exhaustive() {
        for p in enumerate_s(99) {
            let eps = p.epsilon_sequence();
            assert_eq!(eps.len() as i64, p.alpha() - 1);
            assert!(eps.is_palindrome(), "{p}");
            assert_eq!(p.mirror().epsilon_sequence(), eps.negated(), "{p}");
        }
    }

    #[test]
    fn sbar_is_subset_of_s_plus() {
        for n in [3, 5, 7, 21, 51] {
            let plus = enumerate_s_plus(n);
            assert!(enumerate_sbar(n).iter().all(|p| plus.contains(p)));
        }
    }

    fn arb_pair_triple() -> impl Strategy<Value = (TwoBridgePair, TwoBridgePair, TwoBridgePair)> {
        (1i64..25).prop_map(|k| 2 * k + 1).prop_flat_map(|a| {
            let betas: Vec<i64> = (-a + 1..a).filter(|b| TwoBridgePair::new(a, *b).is_ok()).collect();
            let pick = prop::sample::select(betas);
            (pick.clone(), pick.clone(), pick).prop_map(move |(x, y, z)| (pair(a, x), pair(a, y), pair(a, z)))
        })
    }

    proptest! {
        #[test]
        fn equivalence_relation((p, q, r) in arb_pair_triple(), mirror in any::<bool>()) {
            prop_assert!(p.equivalent(&p, mirror));
            prop_assert_eq!(p.equivalent(&q, mirror), q.equivalent(&p, mirror));
            if p.equivalent(&q, mirror) && q.equivalent(&r, mirror) {
                prop_assert!(p.equivalent(&r, mirror));
            }
            prop_assert_eq!(p.equivalent(&q, true), p.canonical() == q.canonical());
        }
    }
}
