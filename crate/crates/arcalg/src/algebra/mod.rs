//! The annular arc algebra: graded spaces attached to loops, the structure
//! maps with the nested sign rule, and composition of morphisms by surgery.

mod compose;
mod hom;
mod label;

pub use compose::{compose, compose_table, compose_with_order, transport_rotation};
pub use hom::{hom_space, identity, Degree, HomElement, HomSpace, Tensor};
pub use label::{
    act_merge, coact_split, copair_split, iota, merge_nested, merge_separated, pair_merge,
    split_nested, split_separated, AlgebraError, CoactionVariant, LoopLabel,
};
