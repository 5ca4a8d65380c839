//! Exact invariants for Mazur-type 4-manifolds and corks presented by
//! shadows: Laurent polynomials, link diagrams, special polyhedra with
//! gleams, the shadow-to-Kirby gleam ledger, algebraic Kirby calculus,
//! Legendrian fronts and the parametric families built from them.

pub mod error;
pub mod families;
pub mod kirby;
pub mod laurent;
pub mod legendrian;
pub mod linkdiag;
pub mod polyhedron;
pub mod shadowmap;
pub mod smith;

pub use laurent::LaurentPoly;

/// Directory holding the shipped fixtures. The `CORKATLAS_FIXTURES`
/// environment variable overrides the location inside the source tree.
pub fn fixtures_dir() -> std::path::PathBuf {
    match std::env::var_os("CORKATLAS_FIXTURES") {
        Some(dir) => dir.into(),
        None => concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures").into(),
    }
}
