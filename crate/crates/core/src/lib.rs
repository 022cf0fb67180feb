//! Exact-arithmetic engine for the polynomial ring Q[x,y].
//!
//! The crate decides whether a pair (P, Q) of polynomials defines an
//! automorphism of Q[x,y] and, when it does, produces a certificate: a word
//! of elementary and linear moves whose composition reproduces the pair
//! exactly. Rejections carry the structural reason that rules the input out.
//!
//! Modules:
//! - [`poly`]: big-rational scalars and sparse bivariate polynomials,
//!   including substitution and the Jacobian bracket.
//! - [`newton`]: weighted degrees, leading forms, Newton polygons, edge
//!   directions and corner points.
//! - [`jung`]: tame moves and words, leading-form classification, the
//!   degree-reduction step and the full decomposition loop.
//! - [`witness`]: instance-level oracles (homogeneous bracket witnesses,
//!   bracket orbits, corner identities, the Jacobian chain rule) and a
//!   seeded generator of random tame words.

pub mod jung;
pub mod newton;
pub mod poly;
pub mod witness;


pub use jung::{AutoPair, LeadClass, Reject, TameMove, TameWord};
pub use newton::Direction;
pub use poly::{BiPoly, Monomial, Rational, Var};
