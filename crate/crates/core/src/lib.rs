//! Asynchronous cellular automata under purely and fully asynchronous
//! updating.
//!
//! * [`rule`] and [`config`]: rule tables, finite windows and the step
//!   operator `Δ_A`.
//! * [`invertibility`]: exact deciders for phase-space invertibility.
//! * [`nakamura`]: the time-stamp construction that turns synchronous inverse
//!   pairs into purely asynchronous ones.
//! * [`atlas`]: classification of the 256 elementary automata.
//! * [`simulate`]: random asynchronous runs on cyclic lattices.

pub mod atlas;
pub mod config;
pub mod error;
pub mod invertibility;
pub mod nakamura;
pub mod rule;
pub mod simulate;

pub use config::{step, ActivationSet, WindowConfig};
pub use error::{Error, Result};
pub use rule::{Alphabet, Cell, LocalRule, Neighborhood, State};
