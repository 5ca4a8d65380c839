//! Planar diagrams of oriented links: writhe, linking numbers, Seifert
//! matrices and the Alexander polynomial.

mod morse;
mod pd;
mod seifert;

pub use morse::{braid_closure, from_morse, MorseEvent};
pub use pd::{Arc, Component, Crossing, PDCode, PdFileError};
pub use seifert::{alexander, braid_form, seifert_matrix, SeifertMatrix};
