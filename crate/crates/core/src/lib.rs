//! Turán numbers of double stars `S_{a,b}`: graphs, containment, closed forms,
//! extremal constructions and an exhaustive search for small orders.

pub mod canon;
pub mod construct;
pub mod detect;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod oracle;

pub use canon::{canonical_form, isomorphic, CanonicalForm};
pub use detect::{contains_double_star, find_double_star, DoubleStar, Witness};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexId};
