//! Exact symbolic ground truth: the Temperley-Lieb diagram algebra, its Markov
//! trace, and Jones polynomials of braid closures.

pub mod jones;
pub mod laurent;
pub mod matching;
pub mod tl;

pub use jones::{
    closure_bracket, jones_polynomial_exact, jones_rep_tl, verify_markov_axioms,
    verify_tl_relations, writhe_factor, JonesPolynomial, RelationReport, WritheFactor,
};
pub use laurent::{LaurentPoly, PolyJson};
pub use matching::PlanarMatching;
pub use tl::{TLElement, TraceValue};
