//! Workbench for combinatorial group theory over rewriting machines:
//! free-group words, S-machines and Turing machines, group-presentation
//! compilers, a brute-force area oracle with triviality certificates,
//! subgroup-distortion experiments and small-cancellation word families.

pub mod words;
pub mod smachine;
pub mod turing;
pub mod presentation;
pub mod word_problem;
pub mod distortion;
pub mod length_embed;
pub mod acceptance;

pub use words::{Alphabet, Gen, Letter, Word, WordError};
