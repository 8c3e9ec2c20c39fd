//! Periodic sphere packings as points of the parameter space of periodic forms.
//!
//! A periodic form `X = (Q, t)` describes the union of `m` translates of a
//! lattice: `Q` is the Gram matrix of a lattice basis and the columns of `t`
//! are the translation vectors `t_1, ..., t_{m-1}` in basis coordinates
//! (`t_m = 0` is implicit). This crate computes packing invariants of such
//! forms exactly and decides local optimality of the packing density:
//!
//! * [`linalg`]: exact rational symmetric matrices, LDL, inverses, ranks and
//!   the inner product on the tangent space.
//! * [`lattice`]: LLL reduction plus exact shortest/closest vector enumeration.
//! * [`periodic`]: generalized arithmetical minimum, density and the
//!   constraint polynomials `p_{i,j,v}(X) = Q[t_i - t_j - v]`.
//! * [`certify`]: Voronoi domain, perfection, eutaxy, improving directions and
//!   the final [`Certificate`](certify::Certificate).
//! * [`catalog`]: named lattices and periodic sets.
//! * [`improve`]: iterative density improvement.
//! * [`format`]: the `pform/1` JSON document format.

pub mod catalog;
pub mod certify;
mod error;
pub mod format;
pub mod improve;
pub mod lattice;
pub mod linalg;
pub mod periodic;
pub mod rational;

pub use error::{Error, Result};
pub use linalg::{Pqf, SymForm, TangentVector};
pub use periodic::{DensityReport, MinRep, PeriodicForm};
pub use rational::Rational;
