//! Exact symbolic-numeric verification engine for Drinfeld-Kohno 2-algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`coeffs`]: the coefficient ring `Q[iπ, λ, ζ(..)]` and certified multiple zeta values.
//! * [`dkalg`]: the free model of the Drinfeld-Kohno 2-algebra, its relations and exact kernels.
//! * [`series`]: ħ-truncated power series, exponentials and the Drinfeld associator.
//! * [`mods`]: modification series (congruences, BCH splittings, commutations, hexagonator,
//!   Breen element, pentagonator) and the ∂-contract verifier.
//! * [`forms`]: exact rational differential forms and the Knizhnik-Zamolodchikov 2-connection.
//! * [`holonomy`]: numeric transports and surface holonomies over the pentagon paths.
//! * [`cli`]: the `dk2` command-line front end.

pub mod cli;
pub mod coeffs;
pub mod dkalg;
pub mod error;
pub mod forms;
pub mod holonomy;
pub mod mods;
pub mod series;
pub mod verdict;

pub use error::{Dk2Error, Result};
pub use verdict::Verdict;
