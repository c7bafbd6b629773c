//! File formats and the `specball` command-line tool on top of [`specball_core`].

pub mod cli;
pub mod formats;
mod selftest;

pub use specball_core;
