//! Calculus of framed affine tangle diagrams and the annular arc algebra.
//!
//! The crate works at the combinatorial level throughout:
//!
//! * [`word`] — tangle words over cup/cap/crossing/twist/rotation generators,
//!   with a small textual DSL;
//! * [`rewrite`] — the diagram isotopy relations as bidirectional rewrite
//!   rules, plus bounded-search crossing elimination;
//! * [`matching`] / [`evaluate`] — affine crossingless matchings of `2n`
//!   circle points, the ± sign-sequence bijection, and evaluation of flat
//!   words to a matching plus classified closed loops;
//! * [`geom`] — an exact rational PL kernel for the punctured plane: loop
//!   extraction, winding numbers, nesting, and surgery;
//! * [`algebra`] — the graded spaces attached to loops, the structure maps
//!   with the nested sign rule, and composition of morphisms via surgery;
//! * [`verify`] — semantic verification sweeps (relation soundness,
//!   associativity, rotation transport, surgery order independence, and the
//!   combinatorial-vs-geometric loop oracle).
//!
//! All arithmetic is exact; there are no tolerances anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod evaluate;
pub mod geom;
pub mod matching;
pub mod rewrite;
pub mod token;
pub mod verify;
pub mod word;

pub use evaluate::{act_generator, evaluate_word, EvalError, EvaluationResult};
pub use matching::{AffineMatching, MatchArc, SignSequence};
pub use token::{GeneratorToken, RotDir, Sign};
pub use word::{TangleWord, WordError};
