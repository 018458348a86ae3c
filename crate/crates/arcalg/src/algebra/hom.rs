//! Graded hom spaces between matchings and their elements.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::label::{AlgebraError, LoopLabel};
use crate::evaluate::{pair_loops, LoopClass, PairLoop};
use crate::matching::AffineMatching;

/// The space of morphisms from `source` to `target`: one two-dimensional
/// factor per loop of the glued link, shifted so that the identity
/// endomorphism sits in degree zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomSpace {
    source: AffineMatching,
    target: AffineMatching,
    loops: Vec<PairLoop>,
    shift: i64,
}

pub fn hom_space(source: &AffineMatching, target: &AffineMatching) -> HomSpace {
    assert_eq!(source.n(), target.n(), "matchings of different sizes");
    let loops = pair_loops(source, target);
    HomSpace {
        source: source.clone(),
        target: target.clone(),
        loops,
        shift: i64::from(source.n()),
    }
}

impl HomSpace {
    pub fn source(&self) -> &AffineMatching {
        &self.source
    }

    pub fn target(&self) -> &AffineMatching {
        &self.target
    }

    pub fn n(&self) -> u32 {
        self.source.n()
    }

    /// Loops of the glued link in canonical order (by smallest marked point).
    pub fn loops(&self) -> &[PairLoop] {
        &self.loops
    }

    pub fn loop_classes(&self) -> Vec<LoopClass> {
        self.loops.iter().map(PairLoop::class).collect()
    }

    /// `(n0, n1)` counts.
    pub fn loop_counts(&self) -> (u32, u32) {
        let n0 = self.loops.iter().filter(|l| l.class() == LoopClass::Trivial).count();
        (n0 as u32, (self.loops.len() - n0) as u32)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn dim(&self) -> u64 {
        1u64 << self.loops.len()
    }

    /// Dimensions per degree.
    pub fn dims(&self) -> BTreeMap<i64, u64> {
        let mut dims = BTreeMap::new();
        dims.insert(self.shift, 1u64);
        for l in &self.loops {
            let mut next = BTreeMap::new();
            let degrees: &[i64] = match l.class() {
                LoopClass::Trivial => &[-1, 1],
                LoopClass::Essential => &[0, 0],
            };
            for (d, c) in dims {
                for extra in degrees {
                    *next.entry(d + extra).or_insert(0) += c;
                }
            }
            dims = next;
        }
        dims
    }

    /// All basis tensors in lexicographic order.
    pub fn basis(&self) -> Vec<Tensor> {
        let mut out = alloc::vec![Tensor(Vec::new())];
        for l in &self.loops {
            let choices: &[LoopLabel] = match l.class() {
                LoopClass::Trivial => &[LoopLabel::One, LoopLabel::X],
                LoopClass::Essential => &[LoopLabel::V, LoopLabel::W],
            };
            let mut next = Vec::with_capacity(out.len() * 2);
            for t in &out {
                for &c in choices {
                    let mut labels = t.0.clone();
                    labels.push(c);
                    next.push(Tensor(labels));
                }
            }
            out = next;
        }
        out
    }

    /// Degree of a basis tensor: label degrees plus the shift.
    pub fn degree_of(&self, t: &Tensor) -> i64 {
        self.shift + t.0.iter().map(LoopLabel::degree).sum::<i64>()
    }

    /// Checks that a tensor's labels match the loop classes.
    pub fn admits(&self, t: &Tensor) -> bool {
        t.0.len() == self.loops.len()
            && t.0
                .iter()
                .zip(&self.loops)
                .all(|(label, l)| label.class() == l.class())
    }
}

/// An ordered tuple of loop labels, one per loop in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Tensor(pub Vec<LoopLabel>);

impl Tensor {
    /// Parses factor lists like `1(x)V` written with `⊗` or `*`.
    pub fn parse(text: &str) -> Option<Tensor> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Some(Tensor(Vec::new()));
        }
        cleaned
            .split(['⊗', '*'])
            .map(LoopLabel::parse)
            .collect::<Option<Vec<_>>>()
            .map(Tensor)
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Degree of an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Mixed,
}

/// A linear combination of basis tensors with exact rational coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct HomElement {
    space: HomSpace,
    terms: BTreeMap<Tensor, BigRational>,
}

impl HomElement {
    pub fn zero(space: HomSpace) -> Self {
        HomElement { space, terms: BTreeMap::new() }
    }

    pub fn basis_element(space: HomSpace, t: Tensor) -> Result<Self, AlgebraError> {
        if !space.admits(&t) {
            return Err(AlgebraError::LabelClassMismatch);
        }
        let mut terms = BTreeMap::new();
        terms.insert(t, BigRational::one());
        Ok(HomElement { space, terms })
    }

    pub fn space(&self) -> &HomSpace {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Tensor, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Tensor, c: BigRational) {
        debug_assert!(self.space.admits(&t));
        let entry = self.terms.entry(t).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let dead: Vec<Tensor> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &HomElement) -> Result<HomElement, AlgebraError> {
        if self.space != other.space {
            return Err(AlgebraError::SpaceMismatch);
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> HomElement {
        if c.is_zero() {
            return HomElement::zero(self.space.clone());
        }
        HomElement {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    pub fn degree(&self) -> Degree {
        let mut degrees = self.terms.keys().map(|t| self.space.degree_of(t));
        match degrees.next() {
            None => Degree::Zero,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Degree::Homogeneous(d)
                } else {
                    Degree::Mixed
                }
            }
        }
    }
}

impl fmt::Display for HomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The identity endomorphism: the all-units tensor of `hom(alpha, alpha)`.
pub fn identity(alpha: &AffineMatching) -> HomElement {
    let space = hom_space(alpha, alpha);
    debug_assert!(space.loop_classes().iter().all(|c| *c == LoopClass::Trivial));
    let t = Tensor(alloc::vec![LoopLabel::One; space.loops().len()]);
    HomElement::basis_element(space, t).expect("identity tensor is admissible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::SignSequence;

    fn m(s: &str) -> AffineMatching {
        AffineMatching::from_signs(&SignSequence::parse(s).unwrap()).unwrap()
    }

    fn dims(a: &str, b: &str) -> BTreeMap<i64, u64> {
        hom_space(&m(a), &m(b)).dims()
    }

    #[test]
    fn endomorphism_dims_of_two_points() {
        for a in ["+-", "-+"] {
            assert_eq!(dims(a, a), BTreeMap::from([(0, 1), (2, 1)]));
        }
    }

    #[test]
    fn cross_dims_of_two_points() {
        assert_eq!(dims("+-", "-+"), BTreeMap::from([(1, 2)]));
        assert_eq!(dims("-+", "+-"), BTreeMap::from([(1, 2)]));
    }

    #[test]
    fn four_point_endomorphism_dims() {
        assert_eq!(dims("+-+-", "+-+-"), BTreeMap::from([(0, 1), (2, 2), (4, 1)]));
    }

    #[test]
    fn dim_is_two_to_the_loops() {
        for a in AffineMatching::enumerate(2) {
            for b in AffineMatching::enumerate(2) {
                let h = hom_space(&a, &b);
                let (n0, n1) = h.loop_counts();
                assert_eq!(h.dim(), 1u64 << (n0 + n1));
                assert_eq!(h.dims().values().sum::<u64>(), h.dim());
            }
        }
    }

    #[test]
    fn degrees_of_named_elements() {
        let h = hom_space(&m("+-"), &m("+-"));
        assert_eq!(h.degree_of(&Tensor(alloc::vec![LoopLabel::X])), 2);
        assert_eq!(h.degree_of(&Tensor(alloc::vec![LoopLabel::One])), 0);
        let h = hom_space(&m("+-"), &m("-+"));
        assert_eq!(h.degree_of(&Tensor(alloc::vec![LoopLabel::V])), 1);
    }

    #[test]
    fn identity_has_degree_zero() {
        for a in AffineMatching::enumerate(2) {
            let id = identity(&a);
            assert_eq!(id.degree(), Degree::Homogeneous(0));
        }
    }

    #[test]
    fn tensor_parsing() {
        assert_eq!(
            Tensor::parse("1⊗V"),
            Some(Tensor(alloc::vec![LoopLabel::One, LoopLabel::V]))
        );
        assert_eq!(
            Tensor::parse("X*w"),
            Some(Tensor(alloc::vec![LoopLabel::X, LoopLabel::W]))
        );
        assert_eq!(Tensor::parse("q"), None);
    }

    #[test]
    fn element_display() {
        let h = hom_space(&m("+-"), &m("+-"));
        let mut e = HomElement::zero(h.clone());
        e.add_term(Tensor(alloc::vec![LoopLabel::One]), BigRational::one());
        e.add_term(Tensor(alloc::vec![LoopLabel::X]), -BigRational::one());
        assert_eq!(alloc::format!("{e}"), "1 - X");
    }
}
