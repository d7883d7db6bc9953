//! Link diagrams, Kauffman bracket state sums, rational tangle twisting and
//! checkers for the adequate, homogeneous and alternative link classes.

pub mod bracket;
pub mod catalog;
pub mod checkerboard;
pub mod conventions;
pub mod determinant;
pub mod diagram;
pub mod error;
pub mod graph;
mod net;
pub mod poly;
pub mod seifert;
pub mod tangle;
pub mod twist;
pub mod verify;
mod uf;

pub use diagram::{
    parse_pd, parse_pd_code, validate_pd, ArcLabel, ArcSide, Crossing, Diagram, Faces, PdCode,
    Port, SeifertType, SmoothingResult, State, Violation, ViolationKind,
};
pub use error::{Error, Result};
pub use net::Tag;
pub use poly::LaurentPoly;
