//! Basis labels of the two-dimensional loop spaces and the structure maps.
//!
//! A 0-loop carries the graded space with basis `1` (degree -1) and `X`
//! (degree +1); a 1-loop carries the degree-0 space with symplectic basis
//! `V`, `W`, normalized so the pairing of `V` with `W` is `+1`. Structure
//! constants all lie in `{-1, 0, 1}`.

use alloc::vec::Vec;
use core::fmt;

use crate::evaluate::LoopClass;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LoopLabel {
    /// Unit of a 0-loop, degree -1.
    One,
    /// Dot of a 0-loop, degree +1.
    X,
    /// First symplectic basis vector of a 1-loop, degree 0.
    V,
    /// Second symplectic basis vector of a 1-loop, degree 0.
    W,
}

impl LoopLabel {
    pub fn class(&self) -> LoopClass {
        match self {
            LoopLabel::One | LoopLabel::X => LoopClass::Trivial,
            LoopLabel::V | LoopLabel::W => LoopClass::Essential,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            LoopLabel::One => -1,
            LoopLabel::X => 1,
            LoopLabel::V | LoopLabel::W => 0,
        }
    }

    pub fn parse(text: &str) -> Option<LoopLabel> {
        match text {
            "1" => Some(LoopLabel::One),
            "X" | "x" => Some(LoopLabel::X),
            "V" | "v" => Some(LoopLabel::V),
            "W" | "w" => Some(LoopLabel::W),
            _ => None,
        }
    }
}

impl fmt::Display for LoopLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopLabel::One => write!(f, "1"),
            LoopLabel::X => write!(f, "X"),
            LoopLabel::V => write!(f, "V"),
            LoopLabel::W => write!(f, "W"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    /// A structure map was applied to labels of the wrong loop class.
    LabelClassMismatch,
    /// Composition requires the first element's target matching to equal the
    /// second's source matching.
    MiddleMismatch,
    /// Element does not belong to the expected hom space.
    SpaceMismatch,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::LabelClassMismatch => write!(f, "label class mismatch"),
            AlgebraError::MiddleMismatch => write!(f, "middle matchings differ"),
            AlgebraError::SpaceMismatch => write!(f, "element from a different hom space"),
        }
    }
}

/// Which map a 1-loop split uses for the label of the shed 0-loop.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CoactionVariant {
    /// The unit label: degree drops by one at such an event.
    #[default]
    Paper,
    /// The dotted label, which keeps every event degree-homogeneous.
    Homogeneous,
}

/// The involution of the 0-loop space fixing `1` and negating `X`.
pub fn iota(label: LoopLabel) -> Result<(LoopLabel, i64), AlgebraError> {
    match label {
        LoopLabel::One => Ok((LoopLabel::One, 1)),
        LoopLabel::X => Ok((LoopLabel::X, -1)),
        _ => Err(AlgebraError::LabelClassMismatch),
    }
}

fn trivial(label: LoopLabel) -> Result<LoopLabel, AlgebraError> {
    match label.class() {
        LoopClass::Trivial => Ok(label),
        LoopClass::Essential => Err(AlgebraError::LabelClassMismatch),
    }
}

fn essential(label: LoopLabel) -> Result<LoopLabel, AlgebraError> {
    match label.class() {
        LoopClass::Essential => Ok(label),
        LoopClass::Trivial => Err(AlgebraError::LabelClassMismatch),
    }
}

/// Merging two separated 0-loops: the unit acts as identity, two dots kill.
pub fn merge_separated(
    a: LoopLabel,
    b: LoopLabel,
) -> Result<Vec<(LoopLabel, i64)>, AlgebraError> {
    match (trivial(a)?, trivial(b)?) {
        (LoopLabel::One, other) | (other, LoopLabel::One) => Ok(alloc::vec![(other, 1)]),
        (LoopLabel::X, LoopLabel::X) => Ok(Vec::new()),
        _ => unreachable!(),
    }
}

/// Merging two nested 0-loops; the second argument is the inner loop's
/// label. Differs from the separated merge by the sign of `1 (x) X`.
pub fn merge_nested(
    outer: LoopLabel,
    inner: LoopLabel,
) -> Result<Vec<(LoopLabel, i64)>, AlgebraError> {
    match (trivial(outer)?, trivial(inner)?) {
        (out, LoopLabel::One) => Ok(alloc::vec![(out, 1)]),
        (LoopLabel::One, LoopLabel::X) => Ok(alloc::vec![(LoopLabel::X, -1)]),
        (LoopLabel::X, LoopLabel::X) => Ok(Vec::new()),
        _ => unreachable!(),
    }
}

/// Splitting a 0-loop into two separated 0-loops: `1` goes to
/// `1 (x) X + X (x) 1` and the dot duplicates. The dot image is forced by
/// compatibility of merging and splitting (it is the unique degree-2
/// element), which composition associativity requires.
pub fn split_separated(
    source: LoopLabel,
) -> Result<Vec<((LoopLabel, LoopLabel), i64)>, AlgebraError> {
    match trivial(source)? {
        LoopLabel::One => Ok(alloc::vec![
            ((LoopLabel::One, LoopLabel::X), 1),
            ((LoopLabel::X, LoopLabel::One), 1),
        ]),
        _ => Ok(alloc::vec![((LoopLabel::X, LoopLabel::X), 1)]),
    }
}

/// Splitting a 0-loop into two nested 0-loops: the separated split with the
/// involution applied to the inner (second) slot, `1 -> -1 (x) X + X (x) 1`
/// and `X -> -X (x) X`.
pub fn split_nested(
    source: LoopLabel,
) -> Result<Vec<((LoopLabel, LoopLabel), i64)>, AlgebraError> {
    match trivial(source)? {
        LoopLabel::One => Ok(alloc::vec![
            ((LoopLabel::One, LoopLabel::X), -1),
            ((LoopLabel::X, LoopLabel::One), 1),
        ]),
        _ => Ok(alloc::vec![((LoopLabel::X, LoopLabel::X), -1)]),
    }
}

/// A 0-loop merging into a 1-loop: the unit acts as identity, the dot kills.
pub fn act_merge(
    trivial_label: LoopLabel,
    essential_label: LoopLabel,
) -> Result<Vec<(LoopLabel, i64)>, AlgebraError> {
    let e = essential(essential_label)?;
    match trivial(trivial_label)? {
        LoopLabel::One => Ok(alloc::vec![(e, 1)]),
        _ => Ok(Vec::new()),
    }
}

/// A 1-loop shedding a 0-loop: the 1-loop keeps its label and the new
/// 0-loop is labelled by the variant.
pub fn coact_split(
    source: LoopLabel,
    variant: CoactionVariant,
) -> Result<Vec<((LoopLabel, LoopLabel), i64)>, AlgebraError> {
    let e = essential(source)?;
    let t = match variant {
        CoactionVariant::Paper => LoopLabel::One,
        CoactionVariant::Homogeneous => LoopLabel::X,
    };
    Ok(alloc::vec![((t, e), 1)])
}

/// Two 1-loops merging into a 0-loop: the symplectic pairing of the outer
/// label with the inner one times the dot.
pub fn pair_merge(
    outer: LoopLabel,
    inner: LoopLabel,
) -> Result<Vec<(LoopLabel, i64)>, AlgebraError> {
    let omega = match (essential(outer)?, essential(inner)?) {
        (LoopLabel::V, LoopLabel::W) => 1,
        (LoopLabel::W, LoopLabel::V) => -1,
        _ => 0,
    };
    if omega == 0 {
        Ok(Vec::new())
    } else {
        Ok(alloc::vec![(LoopLabel::X, omega)])
    }
}

/// A 0-loop splitting into two 1-loops: the unit goes to the inverse
/// pairing tensor `V (x) W - W (x) V` (outer slot first), the dot dies.
pub fn copair_split(
    source: LoopLabel,
) -> Result<Vec<((LoopLabel, LoopLabel), i64)>, AlgebraError> {
    match trivial(source)? {
        LoopLabel::One => Ok(alloc::vec![
            ((LoopLabel::V, LoopLabel::W), 1),
            ((LoopLabel::W, LoopLabel::V), -1),
        ]),
        _ => Ok(Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separated_merge_table() {
        assert_eq!(
            merge_separated(LoopLabel::One, LoopLabel::X).unwrap(),
            alloc::vec![(LoopLabel::X, 1)]
        );
        assert_eq!(merge_separated(LoopLabel::X, LoopLabel::X).unwrap(), alloc::vec![]);
        assert!(merge_separated(LoopLabel::V, LoopLabel::One).is_err());
    }

    #[test]
    fn nested_merge_sign() {
        assert_eq!(
            merge_nested(LoopLabel::One, LoopLabel::X).unwrap(),
            alloc::vec![(LoopLabel::X, -1)]
        );
        assert_eq!(
            merge_nested(LoopLabel::X, LoopLabel::One).unwrap(),
            alloc::vec![(LoopLabel::X, 1)]
        );
    }

    #[test]
    fn copair_is_inverse_pairing_tensor() {
        assert_eq!(
            copair_split(LoopLabel::One).unwrap(),
            alloc::vec![
                ((LoopLabel::V, LoopLabel::W), 1),
                ((LoopLabel::W, LoopLabel::V), -1),
            ]
        );
        assert_eq!(copair_split(LoopLabel::X).unwrap(), alloc::vec![]);
    }

    #[test]
    fn nested_merge_is_conjugated_separated_merge() {
        // As matrices: nested = iota^{-1} . separated . (iota (x) id).
        for a in [LoopLabel::One, LoopLabel::X] {
            for b in [LoopLabel::One, LoopLabel::X] {
                let (ia, sa) = iota(a).unwrap();
                let direct = merge_nested(a, b).unwrap();
                let conj: Vec<(LoopLabel, i64)> = merge_separated(ia, b)
                    .unwrap()
                    .into_iter()
                    .map(|(l, c)| {
                        let (il, si) = iota(l).unwrap();
                        (il, c * sa * si)
                    })
                    .collect();
                assert_eq!(direct, conj, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn every_map_raises_degree_except_unit_coaction() {
        for (out, c) in merge_separated(LoopLabel::One, LoopLabel::One).unwrap() {
            assert_eq!(out.degree(), LoopLabel::One.degree() * 2 + 1 + (c - c));
        }
        for ((t, e), _) in coact_split(LoopLabel::V, CoactionVariant::Paper).unwrap() {
            assert_eq!(t.degree() + e.degree() - LoopLabel::V.degree(), -1);
        }
        for ((t, e), _) in coact_split(LoopLabel::V, CoactionVariant::Homogeneous).unwrap() {
            assert_eq!(t.degree() + e.degree() - LoopLabel::V.degree(), 1);
        }
    }
}
