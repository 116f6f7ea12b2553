//! Exact computation of orbifold Chow rings of root stacks over weighted
//! projective spaces, presented as Jacobian algebras of a mirror fibration.
//!
//! The stack `X(w, p)` is encoded by a weight vector `p` (the coarse space is
//! `P(p)`) and root multiplicities `w`. Classes of `N = Z^{n+1} / <p>` are
//! stored through their canonical nonnegative representative [`AlphaRep`],
//! and every coefficient is an exact rational.
//!
//! Module map:
//!
//! * [`lattice`]: weights, `gamma`, `alpha`, cone test, dual lattice.
//! * [`semigroup`]: generators of the semigroups `S` and `T`, membership.
//! * [`deformed_ring`]: the deformed group ring, its derivations and the
//!   graded Jacobian quotient.
//! * [`fibration`]: the coordinate ring of the mirror fibration and its
//!   zero fibre.
//! * [`presentation`]: affine embeddings, Chow presentations, exporters.
//! * [`isomorphism`]: the weight-rescaling isomorphisms.
//! * [`verify`]: randomized property suites with JSON reports.

pub mod deformed_ring;
pub mod error;
pub mod fibration;
pub mod isomorphism;
pub mod lattice;
mod linalg;
mod par;
pub mod presentation;
pub mod rational;
pub mod semigroup;
pub mod verify;

pub use deformed_ring::{DeformedElement, DeformedRing, GradedQuotient};
pub use fibration::{FiberedElement, FiberedMonomial, Fibration};
pub use presentation::{AffinePresentation, Binomial, Format};
pub use error::{Error, Result};

pub use lattice::{AlphaRep, DualFunctional, WeightKind, WeightVector};
pub use par::Strategy;

pub use rational::{Coeff, Rat};
