//! Exact computations with Leibniz algebras, rack bialgebras, Hopf dialgebras,
//! their star products and deformation complexes over the rationals.

pub mod coalgebra;
pub mod deformation;
pub mod env_hopf;
mod error;
pub mod exact_core;
pub mod fixtures;
pub mod io;
pub mod leibniz;
pub mod rack_bialg;
pub mod report;
pub mod right_hopf_dialg;
pub mod star_product;
pub mod symcoalg;

pub use error::{Error, Result};
