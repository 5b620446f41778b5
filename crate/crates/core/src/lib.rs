//! Graded Kostka matrices of complex reflection groups, computed exactly.

pub mod amod;
pub mod builtin;
pub mod error;
pub mod kostka;
pub mod linalg;
pub mod molien;
pub mod scalars;
pub mod wgroup;

pub use error::{KostkaError, Result};
