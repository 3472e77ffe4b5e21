//! Higher-dimensional automata and their pomset languages.
//!
//! The crate is organized bottom-up: `ipomset` provides pomsets with
//! interfaces (the language elements), `precubical` the cell complexes,
//! `hda` the automata and their constructions, `track` and `geometry` the
//! two execution models (combinatorial and piecewise-linear), `language`
//! the language operations, and `bisim` the behavioural equivalence.

pub mod ipomset;
pub mod precubical;
pub mod hda;
pub mod track;
pub mod geometry;
pub mod language;
pub mod bisim;
pub mod io;
pub mod fixtures;
