//! Simultaneous `(a,b)`-core partitions viewed as lattice points in a rational
//! simplex.
//!
//! The signed abacus identifies `a`-cores with the charge lattice
//! `{c ∈ ℤ^a : Σ cᵢ = 0}`; the `b`-cores among them are the lattice points of a
//! simplex. On top of that identification this crate provides:
//!
//! * partitions, hooks, Maya diagrams and the partition-level statistics used
//!   as oracles ([`partition`]),
//! * the abacus bijection and the quadratic size form ([`abacus`]),
//! * exhaustive enumeration of `(a,b)`-cores, the trivial-determinant
//!   coordinates and conjugation ([`simplex`]),
//! * exact Laurent polynomials ([`laurent`]), `q`-analogs and `Cat_{a,b}(q)`
//!   ([`qpoly`]),
//! * length / skew length as piecewise-linear lattice functions and
//!   `Cat_{a,b}(q,t)` ([`qt_catalan`]),
//! * the `maj`/`siz` permutation statistics and factorization codes
//!   ([`perm`]),
//! * exact quasipolynomial fitting and reciprocity checks ([`ehrhart`]),
//! * named verification suites that drive all of the above ([`verify`]).
//!
//! All arithmetic is exact: integers, big integers and big rationals.

pub mod abacus;
pub mod ehrhart;
pub mod error;
pub mod laurent;
pub mod partition;
pub mod perm;
pub mod qpoly;
pub mod qt_catalan;
pub mod simplex;
pub mod verify;

pub(crate) mod util;

pub use abacus::{ChargeVector, ShiftedPoint};
pub use error::{Error, Result};
pub use laurent::{LaurentPoly1, LaurentPoly2};
pub use partition::{Cell, MayaState, Partition};
pub use perm::{Permutation, ValidSequence};
pub use simplex::{CoreRecord, EnumerationCap, RepVector, SimplexSpec};
