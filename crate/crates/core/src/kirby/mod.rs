//! Algebraic Kirby calculus: framings and linking numbers as affine
//! expressions in the family parameters, pass sequences through 1-handles,
//! handle moves and homology presentations.

mod affine;
mod diagram;
mod script;

pub use affine::{Affine, Params};
pub use diagram::{HomologyPresentation, KirbyDiagram, KirbyFileError, TwoHandle};
pub use script::{apply_move, replay, Move, MoveScript, ReplayError, ReplayReport, ReplayRow};
