//! Numeric certification of parabolic representations.
//!
//! Roots of a Riley polynomial are found with simultaneous Aberth iteration in
//! double precision, evaluating the polynomial through the word matrix, and
//! polished by Newton steps. At each root `u0` the map
//! `x -> X`, `y -> Y(u0)` is rebuilt in complex arithmetic and the relator
//! `w x = y w` is checked directly.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{ComplexValue, Degree, IntPoly};
use crate::riley::riley_polynomial;
use crate::two_bridge::{PairError, TwoBridgePair};

pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_REP_TOLERANCE: f64 = 1e-6;

const MAX_ITERATIONS: usize = 200;
const UPDATE_THRESHOLD: f64 = 1e-13;
const POLISH_STEPS: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial has degree {0}; root finding needs degree >= 1")]
    ConstantPolynomial(Degree),
    #[error("coefficients do not fit in double precision")]
    CoefficientOverflow,
    #[error("root iteration did not converge after {iterations} iterations (worst residual {worst_residual:e})")]
    NoConvergence {
        iterations: usize,
        best: Vec<ComplexValue>,
        residuals: Vec<f64>,
        worst_residual: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("torus check needs an odd q >= 3 (got {0})")]
    BadTorusParameter(i64),
}

/// One root, or a cluster of numerically coincident roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub value: ComplexValue,
    pub multiplicity: usize,
    /// Backward error: `|f(z)| / sum |c_k| |z|^k`, or the word-matrix analogue.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    /// Number of roots counted with multiplicity.
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn all_real(&self, tolerance: f64) -> bool {
        self.roots.iter().all(|r| r.value.im.abs() < tolerance)
    }
}

/// Unevaluated sum `hi + lo`, used for compensated evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    DoubleDouble { hi: s, lo: b - (s - a) }
}

impl DoubleDouble {
    const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    fn add(self, rhs: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, rhs.hi);
        quick_two_sum(s, e + self.lo + rhs.lo)
    }

    fn neg(self) -> DoubleDouble {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }

    fn mul_f64(self, b: f64) -> DoubleDouble {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p);
        quick_two_sum(p, e + self.lo * b)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Horner evaluation carrying double-double accumulators; `z` itself is a plain double.
fn horner_compensated(coeffs: &[DoubleDouble], z: Complex64) -> Complex64 {
    let (mut re, mut im) = (DoubleDouble::ZERO, DoubleDouble::ZERO);
    for c in coeffs.iter().rev() {
        let next_re = re.mul_f64(z.re).add(im.mul_f64(z.im).neg()).add(*c);
        let next_im = re.mul_f64(z.im).add(im.mul_f64(z.re));
        re = next_re;
        im = next_im;
    }
    Complex64::new(re.value(), im.value())
}

/// What the simultaneous iteration needs from a polynomial.
trait RootTarget: Sync {
    fn degree(&self) -> usize;

    /// `(f(z), f'(z))` in plain double precision.
    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64);

    /// Backward error of the fast evaluation.
    fn backward_error_fast(&self, z: Complex64) -> f64;

    /// Value as accurate as the representation allows, for the final Newton steps.
    fn eval_accurate(&self, z: Complex64) -> Complex64;

    fn backward_error(&self, z: Complex64) -> f64;

    /// Noise floor of `backward_error_fast`.
    fn noise(&self) -> f64 {
        8.0 * f64::EPSILON * (self.degree() as f64 + 1.0)
    }
}

struct FloatPoly {
    coeffs: Vec<Complex64>,
    /// Exact integer coefficients split as `hi + lo`.
    split: Vec<DoubleDouble>,
    abs_coeffs: Vec<f64>,
    derivative: Vec<Complex64>,
}

impl FloatPoly {
    fn new(f: &IntPoly) -> Result<Self, RootError> {
        let real = f.to_f64_coeffs();
        if real.iter().any(|c| !c.is_finite()) {
            return Err(RootError::CoefficientOverflow);
        }
        let coeffs: Vec<Complex64> = real.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        let derivative = coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
        let split = f
            .coeffs()
            .iter()
            .zip(&real)
            .map(|(exact, &hi)| {
                let rest = exact - BigInt::from_f64(hi).expect("finite");
                DoubleDouble { hi, lo: rest.to_f64().unwrap_or(0.0) }
            })
            .collect();
        Ok(FloatPoly { abs_coeffs: real.iter().map(|c| c.abs()).collect(), coeffs, split, derivative })
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    fn scale(&self, z: Complex64) -> f64 {
        self.abs_coeffs.iter().rev().fold(0.0, |acc, c| acc * z.norm() + c)
    }

    /// Starting points spread on a circle, radius from the coefficient bound.
    fn initial_guesses(&self) -> Vec<Complex64> {
        let n = self.coeffs.len() - 1;
        let lead = self.abs_coeffs[n];
        let radius = (0..n)
            .filter(|&k| self.abs_coeffs[k] > 0.0)
            .map(|k| (self.abs_coeffs[k] / lead).powf(1.0 / (n - k) as f64))
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE.sqrt());
        (0..n)
            .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
            .collect()
    }
}

impl RootTarget for FloatPoly {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        (self.eval(z), horner(&self.derivative, z))
    }

    fn backward_error_fast(&self, z: Complex64) -> f64 {
        match self.scale(z) {
            0.0 => 0.0,
            scale => self.eval(z).norm() / scale,
        }
    }

    /// Compensated Horner on the exact coefficients.
    fn eval_accurate(&self, z: Complex64) -> Complex64 {
        horner_compensated(&self.split, z)
    }

    fn backward_error(&self, z: Complex64) -> f64 {
        match self.scale(z) {
            0.0 => 0.0,
            scale => self.eval_accurate(z).norm() / scale,
        }
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// A Riley polynomial evaluated as the `(1,1)` entry of the word matrix
/// product, never through its monomial coefficients. The coefficients grow
/// exponentially with alpha and alternate in sign, so the monomial basis loses
/// every significant digit near the larger roots; the product of small
/// matrices does not.
struct WordPoly {
    eps: Vec<i8>,
}

impl WordPoly {
    fn new(p: &TwoBridgePair) -> Self {
        WordPoly { eps: p.epsilon_sequence().as_slice().to_vec() }
    }

    /// `(W, dW/du)` at `z`.
    fn product(&self, z: Complex64) -> (Mat2C, Mat2C) {
        let zero = Complex64::new(0.0, 0.0);
        let mut w = Mat2C::identity();
        let mut dw = Mat2C([[zero; 2]; 2]);
        for s in self.eps.chunks_exact(2) {
            let (ex, ey) = (f64::from(s[0]), f64::from(s[1]));
            // right multiplication by X^ex adds ex·(column 0) to column 1
            for row in 0..2 {
                w.0[row][1] += w.0[row][0] * ex;
                dw.0[row][1] += dw.0[row][0] * ex;
            }
            // right multiplication by Y^ey adds -ey·z·(column 1) to column 0,
            // with derivative term -ey·(column 1 of W)
            for row in 0..2 {
                dw.0[row][0] += dw.0[row][1] * (-ey * z) - w.0[row][1] * ey;
                w.0[row][0] += w.0[row][1] * (-ey * z);
            }
        }
        (w, dw)
    }
}

impl RootTarget for WordPoly {
    fn degree(&self) -> usize {
        self.eps.len() / 2
    }

    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let (w, dw) = self.product(z);
        (w.0[0][0], dw.0[0][0])
    }

    fn backward_error_fast(&self, z: Complex64) -> f64 {
        self.backward_error(z)
    }

    fn eval_accurate(&self, z: Complex64) -> Complex64 {
        self.product(z).0 .0[0][0]
    }

    /// `|W_11(z)| / max(1, max |W_ij(z)|)`. The entrywise bound on a matrix
    /// product grows like `(1 + |z|)^n` and would accept almost any point, so
    /// the value is measured against the size of the matrix actually computed.
    fn backward_error(&self, z: Complex64) -> f64 {
        let w = self.product(z).0;
        let size = w.0.iter().flatten().map(|x| x.norm()).fold(1.0, f64::max);
        w.0[0][0].norm() / size
    }

    fn noise(&self) -> f64 {
        8.0 * f64::EPSILON * (self.eps.len() as f64 + 1.0)
    }
}

/// All complex roots of `f`, counted with multiplicity.
///
/// Roots closer than `10·tolerance` are merged into one entry with the
/// combined multiplicity. Fails if the iteration does not settle within the
/// cap or if any polished root has backward error `>= tolerance`.
pub fn find_roots(f: &IntPoly, tolerance: f64) -> Result<RootSet, RootError> {
    match f.degree() {
        Degree::Finite(d) if d >= 1 => {}
        other => return Err(RootError::ConstantPolynomial(other)),
    }
    let poly = FloatPoly::new(f)?;
    let start = poly.initial_guesses();
    aberth(&poly, start, tolerance)
}

/// Roots of `phi_p`, with every evaluation done through the word matrix.
///
/// Same contract as [`find_roots`]; residuals are backward errors of the
/// matrix product. Preferred for large alpha.
pub fn find_riley_roots(p: &TwoBridgePair, tolerance: f64) -> Result<RootSet, RootError> {
    let phi = riley_polynomial(p);
    match phi.degree() {
        Degree::Finite(d) if d >= 1 => {}
        other => return Err(RootError::ConstantPolynomial(other)),
    }
    // the coefficients only seed the starting circle
    let start = FloatPoly::new(&phi)?.initial_guesses();
    aberth(&WordPoly::new(p), start, tolerance)
}

fn aberth<T: RootTarget>(poly: &T, mut z: Vec<Complex64>, tolerance: f64) -> Result<RootSet, RootError> {
    let n = poly.degree();
    let mut done = vec![false; n];
    let mut iterations = 0;
    let noise = poly.noise();

    while iterations < MAX_ITERATIONS && done.iter().any(|d| !d) {
        iterations += 1;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let zk = z[k];
            let (value, derivative) = poly.eval_with_derivative(zk);
            if value.norm() == 0.0 || poly.backward_error_fast(zk) <= noise {
                done[k] = true;
                continue;
            }
            let ratio = value / derivative;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (zk - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[k] = zk - step;
            if step.norm() <= UPDATE_THRESHOLD * zk.norm().max(1.0) {
                done[k] = true;
            }
        }
    }

    for zk in z.iter_mut() {
        *zk = newton_polish(poly, *zk);
    }
    let residuals: Vec<f64> = z.iter().map(|&zk| poly.backward_error(zk)).collect();
    let worst_residual = residuals.iter().copied().fold(0.0, f64::max);
    if done.iter().any(|d| !d) || worst_residual >= tolerance || z.iter().any(|zk| !zk.is_finite()) {
        return Err(RootError::NoConvergence { iterations, best: z, residuals, worst_residual });
    }

    let mut roots = cluster(poly, &z, 10.0 * tolerance);
    roots.sort_by(|a, b| cmp_complex(&a.value, &b.value));
    Ok(RootSet { roots })
}

/// Newton steps with the most accurate available value, so the polished root
/// is limited by the root's conditioning rather than by cancellation.
fn newton_polish<T: RootTarget>(poly: &T, mut z: Complex64) -> Complex64 {
    let mut value_at_z = poly.eval_accurate(z);
    let mut best = value_at_z.norm();
    for _ in 0..POLISH_STEPS {
        let d = poly.eval_with_derivative(z).1;
        if d.norm() == 0.0 || best == 0.0 {
            break;
        }
        let candidate = z - value_at_z / d;
        let candidate_value = poly.eval_accurate(candidate);
        let value = candidate_value.norm();
        if !(value < best) {
            break;
        }
        z = candidate;
        value_at_z = candidate_value;
        best = value;
    }
    z
}

/// Single-linkage clustering of approximations within `radius`.
fn cluster<T: RootTarget>(poly: &T, z: &[Complex64], radius: f64) -> Vec<Root> {
    let n = z.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() < radius {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut roots = Vec::new();
    for i in 0..n {
        if find(&mut label, i) != i {
            continue;
        }
        let members: Vec<Complex64> = (0..n).filter(|&j| find(&mut label, j) == i).map(|j| z[j]).collect();
        let value = members.iter().sum::<Complex64>() / members.len() as f64;
        roots.push(Root { value, multiplicity: members.len(), residual: poly.backward_error(value) });
    }
    roots
}

/// Ascending (re, im) lexicographic order.
pub fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2C(pub [[Complex64; 2]; 2]);

impl Mat2C {
    pub fn identity() -> Self {
        let (o, l) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        Mat2C([[l, o], [o, l]])
    }

    pub fn mul(&self, rhs: &Mat2C) -> Mat2C {
        let (a, b) = (&self.0, &rhs.0);
        Mat2C([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }

    /// Largest entry modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Mat2C) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
}

/// Images of the meridians and of the word `w` under `x -> X`, `y -> Y(u0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicRep {
    pub x: Mat2C,
    pub y: Mat2C,
    pub w: Mat2C,
}

fn x_power(e: i8) -> Mat2C {
    let mut m = Mat2C::identity();
    m.0[0][1] = Complex64::new(f64::from(e), 0.0);
    m
}

fn y_power(e: i8, u0: Complex64) -> Mat2C {
    let mut m = Mat2C::identity();
    m.0[1][0] = -u0 * f64::from(e);
    m
}

pub fn build_parabolic_rep(p: &TwoBridgePair, u0: ComplexValue) -> ParabolicRep {
    let eps = p.epsilon_sequence();
    let w = eps
        .as_slice()
        .chunks_exact(2)
        .fold(Mat2C::identity(), |acc, s| acc.mul(&x_power(s[0])).mul(&y_power(s[1], u0)));
    ParabolicRep { x: x_power(1), y: y_power(1, u0), w }
}

/// `|f(z)| / sum |c_k| |z|^k`, falling back to `|f(z)|` if coefficients overflow `f64`.
pub fn phi_backward_error(f: &IntPoly, z: ComplexValue) -> f64 {
    match FloatPoly::new(f) {
        Ok(poly) if !f.is_zero() => poly.backward_error(z),
        _ => f.eval_complex(z).norm(),
    }
}

/// Result of checking the relator at one point `u0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub u: ComplexValue,
    pub multiplicity: usize,
    pub phi_residual: f64,
    /// `max |(ρ(w)ρ(x) - ρ(y)ρ(w))_ij|`.
    pub relator_residual: f64,
    pub parabolic: bool,
    pub nonabelian: bool,
    pub passed: bool,
}

pub fn verify_relation(p: &TwoBridgePair, u0: ComplexValue, tolerance: f64) -> RelationCheck {
    let rep = build_parabolic_rep(p, u0);
    let relator_residual = rep.w.mul(&rep.x).max_abs_diff(&rep.y.mul(&rep.w));
    let two = Complex64::new(2.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let parabolic = rep.x.trace() == two
        && rep.y.trace() == two
        && rep.x.determinant() == one
        && rep.y.determinant() == one;
    let nonabelian = u0 != Complex64::new(0.0, 0.0);
    RelationCheck {
        u: u0,
        multiplicity: 1,
        phi_residual: phi_backward_error(&riley_polynomial(p), u0),
        relator_residual,
        parabolic,
        nonabelian,
        passed: relator_residual < tolerance && parabolic && nonabelian,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepCheckReport {
    pub pair: TwoBridgePair,
    pub degree: usize,
    pub roots: Vec<RelationCheck>,
    pub all_real: bool,
    pub passed: bool,
}

impl RepCheckReport {
    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Finds every root of `phi_p` and checks the relator at each one.
pub fn verify_pair(p: &TwoBridgePair, root_tolerance: f64, rep_tolerance: f64) -> Result<RepCheckReport, RootError> {
    let phi = riley_polynomial(p);
    let root_set = find_riley_roots(p, root_tolerance)?;
    let roots: Vec<RelationCheck> = root_set
        .roots
        .par_iter()
        .map(|root| RelationCheck {
            multiplicity: root.multiplicity,
            phi_residual: root.residual,
            ..verify_relation(p, root.value, rep_tolerance)
        })
        .collect();
    let passed = !roots.is_empty() && roots.iter().all(|r| r.passed) && root_set.count() == phi.coeffs().len() - 1;
    Ok(RepCheckReport {
        pair: *p,
        degree: phi.coeffs().len() - 1,
        all_real: root_set.all_real(root_tolerance),
        roots,
        passed,
    })
}

/// True iff every root of `phi_{S(q,1)}` is real to within `root_tolerance`.
pub fn torus_real_root_check(q: i64, root_tolerance: f64) -> Result<bool, RepError> {
    if q < 3 || q % 2 == 0 {
        return Err(RepError::BadTorusParameter(q));
    }
    let p = TwoBridgePair::new(q, 1)?;
    let roots = find_riley_roots(&p, root_tolerance)?;
    Ok(roots.all_real(root_tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: i64, b: i64) -> TwoBridgePair {
        TwoBridgePair::new(a, b).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_root() {
        let r = find_roots(&IntPoly::from_i64s(&[1, -1]), 1e-9).unwrap();
        assert_eq!(r.count(), 1);
        assert!((r.roots[0].value - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quadratic_roots_against_formula() {
        let s3 = 3f64.sqrt() / 2.0;
        let r = find_roots(&IntPoly::from_i64s(&[1, 1, 1]), 1e-9).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0].value - c(-0.5, -s3)).norm() < 1e-12);
        assert!((r.roots[1].value - c(-0.5, s3)).norm() < 1e-12);
        let f = IntPoly::from_i64s(&[1, 1, 1]);
        assert!(r.roots.iter().all(|x| f.eval_complex(x.value).norm() < 1e-12));

        let s5 = 5f64.sqrt();
        let r = find_roots(&IntPoly::from_i64s(&[1, -3, 1]), 1e-9).unwrap();
        assert!((r.roots[0].value - c((3.0 - s5) / 2.0, 0.0)).norm() < 1e-12);
        assert!((r.roots[1].value - c((3.0 + s5) / 2.0, 0.0)).norm() < 1e-12);
        assert!(r.all_real(1e-9));
    }

    #[test]
    fn multiple_root_is_clustered() {
        // (u - 2)^2 (u + 1)
        let f = IntPoly::from_i64s(&[4, 0, -3, 1]);
        let r = find_roots(&f, 1e-7).unwrap();
        assert_eq!(r.count(), 3);
        let double = r.roots.iter().find(|x| x.multiplicity == 2).expect("double root reported");
        assert!((double.value - c(2.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn compensated_horner_survives_cancellation() {
        // (u - 3)^5 at 3 + 2^-10 is exactly 2^-50
        let f = IntPoly::from_i64s(&[-243, 405, -270, 90, -15, 1]);
        let poly = FloatPoly::new(&f).unwrap();
        let z = c(3.0 + 2f64.powi(-10), 0.0);
        let exact = 2f64.powi(-50);
        let accurate = poly.eval_accurate(z);
        assert!((accurate.re - exact).abs() < 1e-6 * exact, "{accurate}");
        assert_eq!(accurate.im, 0.0);
    }

    #[test]
    fn large_coefficients_are_split_exactly() {
        let big: BigInt = "29381992672540989321".parse().unwrap();
        let f = IntPoly::from_coeffs(vec![big.clone(), BigInt::from(1)]);
        let poly = FloatPoly::new(&f).unwrap();
        let c0 = poly.split[0];
        let back = BigInt::from_f64(c0.hi).unwrap() + BigInt::from_f64(c0.lo).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn constant_polynomial_rejected() {
        assert!(matches!(find_roots(&IntPoly::one(), 1e-9), Err(RootError::ConstantPolynomial(_))));
        assert!(matches!(find_roots(&IntPoly::zero(), 1e-9), Err(RootError::ConstantPolynomial(_))));
    }

    #[test]
    fn trefoil_rep() {
        let rep = build_parabolic_rep(&pair(3, 1), c(1.0, 0.0));
        assert_eq!(rep.y.0, [[c(1.0, 0.0), c(0.0, 0.0)], [c(-1.0, 0.0), c(1.0, 0.0)]]);
        let check = verify_relation(&pair(3, 1), c(1.0, 0.0), 1e-9);
        assert!(check.passed && check.relator_residual < 1e-9);
        let off = verify_relation(&pair(3, 1), c(2.0, 0.0), 1e-6);
        assert!(!off.passed && off.relator_residual >= 1e-6);
    }

    #[test]
    fn abelian_point_flagged() {
        let check = verify_relation(&pair(7, 3), c(0.0, 0.0), 1e-6);
        assert!(!check.nonabelian && !check.passed);
        assert_eq!(build_parabolic_rep(&pair(7, 3), c(0.0, 0.0)).y, Mat2C::identity());
    }

    #[test]
    fn figure_eight_rep() {
        let u0 = c(-0.5, 3f64.sqrt() / 2.0);
        assert!(verify_relation(&pair(5, 3), u0, 1e-9).passed);
    }

    #[test]
    fn seven_three_roots() {
        let report = verify_pair(&pair(7, 3), DEFAULT_ROOT_TOLERANCE, DEFAULT_REP_TOLERANCE).unwrap();
        assert_eq!(report.root_count(), 3);
        assert!(report.passed);
        assert!(report.roots.iter().all(|r| r.relator_residual < 1e-6));
        assert!(report.roots.windows(2).all(|w| cmp_complex(&w[0].u, &w[1].u) == Ordering::Less));
    }

    #[test]
    fn torus_small_cases() {
        for q in [3, 5, 7, 9] {
            assert!(torus_real_root_check(q, 1e-9).unwrap(), "q = {q}");
        }
        assert_eq!(torus_real_root_check(4, 1e-9), Err(RepError::BadTorusParameter(4)));
        assert_eq!(torus_real_root_check(1, 1e-9), Err(RepError::BadTorusParameter(1)));
    }

    #[test]
    fn word_roots_match_torus_closed_form() {
        // phi_{S(q,1)} has the simple roots 4cos^2(pi k / q), k = 1..(q-1)/2
        for q in [5, 21, 41, 61] {
            let roots = find_riley_roots(&pair(q, 1), 1e-9).unwrap();
            let mut exact: Vec<f64> =
                (1..=(q - 1) / 2).map(|k| 4.0 * (std::f64::consts::PI * k as f64 / q as f64).cos().powi(2)).collect();
            exact.sort_by(f64::total_cmp);
            assert_eq!(roots.roots.len(), exact.len());
            for (r, e) in roots.roots.iter().zip(&exact) {
                assert!((r.value - c(*e, 0.0)).norm() < 1e-12, "q = {q}: {} vs {e}", r.value);
            }
        }
    }

    #[test]
    fn word_and_coefficient_roots_agree_for_small_alpha() {
        for (a, b) in [(7, 3), (9, 5), (13, 5), (15, 11)] {
            let p = pair(a, b);
            let word = find_riley_roots(&p, 1e-9).unwrap();
            let coeff = find_roots(&riley_polynomial(&p), 1e-9).unwrap();
            assert_eq!(word.roots.len(), coeff.roots.len());
            for (x, y) in word.roots.iter().zip(&coeff.roots) {
                assert!((x.value - y.value).norm() < 1e-10, "S({a},{b}): {} vs {}", x.value, y.value);
            }
        }
    }
}
