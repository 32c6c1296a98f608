//! Exact-arithmetic toolkit for the numerical side of moduli spaces of
//! semistable sheaves on elliptic K3 surfaces.
//!
//! The crate computes, entirely in integer and exact rational arithmetic:
//!
//! * intersection numbers, Mukai pairings, fiber degrees, and line-bundle
//!   twists against a fixed even Gram matrix ([`lattice`]);
//! * the charge-level action of the relative Fourier–Mukai equivalences on
//!   (rank, fiber degree) pairs, orthogonality conditions, fiber sheaves,
//!   and WIT indices ([`fm`]);
//! * ceiling continued fractions, Bézout cofactors, the reversal identity,
//!   and the associated SL₂(ℤ) factorizations ([`cf`]);
//! * the Euclid-style reduction of a moduli problem `(r, -d, t)` to the
//!   Hilbert-scheme state `(1, 0, t)` by alternating transforms and twists
//!   ([`efm`]);
//! * stability thresholds, discriminant inequalities, orthogonality and
//!   purity parameters, and fiber destabilizer budgets ([`stability`]);
//! * the classification of the induced birational map as isomorphism,
//!   Mukai flop, or beyond-bound, with indeterminacy-locus numerics and
//!   Picard-group reports ([`classifier`]).
//!
//! All operations are pure functions on immutable values and are safe for
//! unrestricted concurrent use.

pub mod cf;
pub mod classifier;
pub mod efm;
pub mod error;
pub mod fm;
pub mod lattice;
pub mod stability;

pub use classifier::{classify, Classification, HilbReport, IndeterminacyReport, Verdict};
pub use error::{Error, Result};
pub use lattice::{LatticeBasis, ModuliNumerics, MukaiVector, NsClass};
