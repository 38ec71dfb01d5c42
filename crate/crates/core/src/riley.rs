//! The word matrix `W` over `Z[u]` and the Riley polynomial `w11`.
//!
//! The meridians map to `X = [[1, 1], [0, 1]]` and `Y = [[1, 0], [-u, 1]]`.
//! `W` is the product `X^e1 Y^e2 ... X^e(a-2) Y^e(a-1)` taken left to right.

use std::ops::Mul;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IntPoly;
use crate::two_bridge::{EpsilonSequence, PairError, TwoBridgePair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RileyError {
    #[error("epsilon sequence has odd length {0}")]
    OddLength(usize),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("record for {pair} does not match recomputation: {field} differs")]
    Mismatch { pair: TwoBridgePair, field: &'static str },
    #[error("epsilon sequence contains an entry other than +1/-1")]
    BadEpsilon,
}

/// A 2×2 matrix with entries in `Z[u]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2Poly {
    pub w11: IntPoly,
    pub w12: IntPoly,
    pub w21: IntPoly,
    pub w22: IntPoly,
}

impl Mat2Poly {
    pub fn identity() -> Self {
        Mat2Poly {
            w11: IntPoly::one(),
            w12: IntPoly::zero(),
            w21: IntPoly::zero(),
            w22: IntPoly::one(),
        }
    }

    pub fn from_i64_entries(w11: &[i64], w12: &[i64], w21: &[i64], w22: &[i64]) -> Self {
        Mat2Poly {
            w11: IntPoly::from_i64s(w11),
            w12: IntPoly::from_i64s(w12),
            w21: IntPoly::from_i64s(w21),
            w22: IntPoly::from_i64s(w22),
        }
    }

    /// `X^exponent` for `exponent = ±1`.
    pub fn generator_x(exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Mat2Poly {
            w12: IntPoly::constant(exponent),
            ..Self::identity()
        }
    }

    /// `Y^exponent` for `exponent = ±1`.
    pub fn generator_y(exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Mat2Poly {
            w21: IntPoly::from_i64s(&[0, -i64::from(exponent)]),
            ..Self::identity()
        }
    }

    pub fn determinant(&self) -> IntPoly {
        &(&self.w11 * &self.w22) - &(&self.w12 * &self.w21)
    }

    // Right multiplication by a generator is a column operation:
    // M·X^e adds e·col1 to col2, M·Y^e subtracts e·u·col2 from col1.

    fn right_mul_x(&mut self, e: i8) {
        let e = BigInt::from(e);
        self.w12 = &self.w12 + &self.w11.scale(&e);
        self.w22 = &self.w22 + &self.w21.scale(&e);
    }

    fn right_mul_y(&mut self, e: i8) {
        let e = BigInt::from(e);
        self.w11 = &self.w11 - &self.w12.shift(1).scale(&e);
        self.w21 = &self.w21 - &self.w22.shift(1).scale(&e);
    }
}

impl Mul for &Mat2Poly {
    type Output = Mat2Poly;
    fn mul(self, rhs: &Mat2Poly) -> Mat2Poly {
        Mat2Poly {
            w11: &(&self.w11 * &rhs.w11) + &(&self.w12 * &rhs.w21),
            w12: &(&self.w11 * &rhs.w12) + &(&self.w12 * &rhs.w22),
            w21: &(&self.w21 * &rhs.w11) + &(&self.w22 * &rhs.w21),
            w22: &(&self.w21 * &rhs.w12) + &(&self.w22 * &rhs.w22),
        }
    }
}

/// `W` for an epsilon sequence of even length; the empty sequence gives the identity.
pub fn word_matrix(eps: &EpsilonSequence) -> Result<Mat2Poly, RileyError> {
    let signs = eps.as_slice();
    if !signs.len().is_multiple_of(2) {
        return Err(RileyError::OddLength(signs.len()));
    }
    let mut w = Mat2Poly::identity();
    for pair in signs.chunks_exact(2) {
        w.right_mul_x(pair[0]);
        w.right_mul_y(pair[1]);
    }
    Ok(w)
}

pub fn pair_word_matrix(p: &TwoBridgePair) -> Mat2Poly {
    word_matrix(&p.epsilon_sequence()).expect("alpha is odd so the sequence has even length")
}

/// The Riley polynomial `phi_{S(alpha,beta)}(u)`, the (1,1) entry of `W`.
pub fn riley_polynomial(p: &TwoBridgePair) -> IntPoly {
    pair_word_matrix(p).w11
}

/// Checks `w11* = w11`, `w12* = -w12`, `w21* = -w21`, `w22* = w22` where
/// `W*` is the word matrix of the mirror image.
pub fn mirror_entry_check(p: &TwoBridgePair) -> bool {
    let w = pair_word_matrix(p);
    let m = pair_word_matrix(&p.mirror());
    m.w11 == w.w11 && m.w12 == -&w.w12 && m.w21 == -&w.w21 && m.w22 == w.w22
}

/// A computed `(pair, eps, phi)` triple; the unit of caching and export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RileyRecord {
    pub pair: TwoBridgePair,
    pub eps: EpsilonSequence,
    pub phi: IntPoly,
}

impl RileyRecord {
    pub fn compute(pair: TwoBridgePair) -> Self {
        let eps = pair.epsilon_sequence();
        let phi = word_matrix(&eps).expect("alpha is odd").w11;
        RileyRecord { pair, eps, phi }
    }

    /// Recomputes the record and fails if any field differs.
    pub fn verify(&self) -> Result<(), RileyError> {
        let fresh = Self::compute(self.pair);
        if fresh.eps != self.eps {
            return Err(RileyError::Mismatch { pair: self.pair, field: "eps" });
        }
        if fresh.phi != self.phi {
            return Err(RileyError::Mismatch { pair: self.pair, field: "phi" });
        }
        Ok(())
    }
}

/// Records for `pairs`, computed in parallel and returned in input order.
pub fn compute_records(pairs: &[TwoBridgePair]) -> Vec<RileyRecord> {
    pairs.par_iter().map(|p| RileyRecord::compute(*p)).collect()
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    alpha: i64,
    beta: i64,
    eps: Vec<i8>,
    phi: IntPoly,
}

impl Serialize for RileyRecord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RecordWire {
            alpha: self.pair.alpha(),
            beta: self.pair.beta(),
            eps: self.eps.as_slice().to_vec(),
            phi: self.phi.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RileyRecord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = RecordWire::deserialize(deserializer)?;
        let pair = TwoBridgePair::new(wire.alpha, wire.beta).map_err(D::Error::custom)?;
        let eps = EpsilonSequence::from_signs(wire.eps).ok_or_else(|| D::Error::custom(RileyError::BadEpsilon))?;
        Ok(RileyRecord { pair, eps, phi: wire.phi })
    }
}
