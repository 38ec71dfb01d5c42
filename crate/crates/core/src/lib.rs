//! Riley polynomials of 2-bridge knots.
//!
//! Exact computation of the Riley polynomial `phi_{S(alpha,beta)}(u)` from the
//! Schubert normal form, epimorphism detection between knot groups by
//! polynomial divisibility, classification scans, and numeric certification
//! of the parabolic representations at the roots.

pub mod classify;
pub mod epimorphism;
pub mod poly;
pub mod rep_verify;
pub mod riley;
pub mod two_bridge;

pub use classify::{build_table, full_report, knot_classes, FullReport, KnotClass, RileyTable};
pub use epimorphism::{detects_epimorphism, scan_epi_pairs, ClassificationReport, EpiPair};
pub use poly::{ComplexValue, Degree, Divisibility, IntPoly};
pub use riley::{riley_polynomial, Mat2Poly, RileyRecord};
pub use two_bridge::{EpsilonSequence, PairError, TwoBridgePair};
