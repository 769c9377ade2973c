//! Exact construction and verification of the attenuated space poset.
//!
//! Fix a prime power q and integers N >= 1, M >= 1. Inside the vector space
//! H = F_q^(N+M), fix the M-dimensional subspace h spanned by the last M
//! coordinates. The attenuated space poset A_q(N, M) is the set
//!
//! ```text
//!     X = { subspaces y of H  :  y ∩ h = 0 }
//! ```
//!
//! ordered by inclusion. It is ranked by dimension, with ranks 0..N.
//!
//! Everything in this crate is computed exactly. Matrix entries live in
//! Q(sqrt q), represented as `a + b*sqrt(q)` with arbitrary-precision
//! rational `a`, `b`; there are no floats and no tolerances anywhere. The
//! verification routines accept an identity only when the residual is
//! literally zero.
//!
//! The modules build on each other in order:
//!
//! * [`qcomb`]: q-integers, q-binomials, the multiplicity weights mu_r, and
//!   the scalar type [`ExactScalar`] for Q(sqrt q).
//! * [`gflinalg`]: dense linear algebra over F_q, reduced row echelon forms,
//!   and the canonical enumeration of the poset's vertices.
//! * [`poset`]: the poset itself (vertices grouped by rank plus the cover
//!   relation) and counting checks against closed formulas.
//! * [`operators`]: exact matrices over Q(sqrt q), the seven operators
//!   E*_0..E*_N, A*, S, R, L', L, A on the free module Q(sqrt q)^X, and the
//!   machine check of the full list of algebraic relations among them.
//! * [`spectral`]: eigenvalues theta_i of A indexed by i in {0, 1/2, 1, ...,
//!   N}, exact eigenspace bases, primitive idempotents E_i, and the
//!   tridiagonal band profile of A* with respect to the E_i.
//! * [`tmodules`]: the classification data (r, d) of the irreducible
//!   modules for the algebra T generated by A and A*, the decomposition of
//!   Q(sqrt q)^X into those modules with explicit witness bases, and the
//!   Leonard-pair profile of each module.
//!
//! The companion binary crate `atspace-cli` exposes all of this behind a
//! command line with JSON and table output.
//!
//! The crate is no_std-compatible (`default-features = false` drops `std`
//! and keeps `alloc`); nothing in the core needs an operating system.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod gflinalg;
pub mod operators;
pub mod poset;
pub mod qcomb;
pub mod spectral;
pub mod tmodules;

pub use gflinalg::{CapacityError, GFMatrix, Vertex};
pub use operators::{ExactMatrix, Operators, RelationReport};
pub use poset::{build_poset, build_poset_with_cap, PosetInstance};
pub use qcomb::{ExactScalar, Rational};
pub use spectral::{BandProfile, HalfIndex, Spectrum};
pub use tmodules::{
    DecomposeError, LeonardProfile, ModuleReport, ModuleWitness, PsiEntry, PsiSumReport,
};

