//! Composition of hom elements by folding surgery events, and rotation
//! transport of elements between hom spaces.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::hom::{hom_space, HomElement, Tensor};
use super::label::{
    act_merge, coact_split, copair_split, merge_nested, merge_separated, pair_merge,
    split_nested, split_separated, AlgebraError, CoactionVariant, LoopLabel,
};
use crate::evaluate::act_generator;
use crate::geom::surgery::{
    composition_plan, CompositionPlan, LoopKey, SurgeryEvent, SurgeryEventKind,
};
use crate::token::{GeneratorToken, RotDir};

/// Composes `x : alpha -> beta` with `y : beta -> gamma`.
pub fn compose(
    x: &HomElement,
    y: &HomElement,
    variant: CoactionVariant,
) -> Result<HomElement, AlgebraError> {
    compose_inner(x, y, variant, None)
}

/// Composes along an explicit admissible surgery order.
pub fn compose_with_order(
    x: &HomElement,
    y: &HomElement,
    variant: CoactionVariant,
    order: &[usize],
) -> Result<HomElement, AlgebraError> {
    compose_inner(x, y, variant, Some(order))
}

fn compose_inner(
    x: &HomElement,
    y: &HomElement,
    variant: CoactionVariant,
    order: Option<&[usize]>,
) -> Result<HomElement, AlgebraError> {
    if x.space().target() != y.space().source() {
        return Err(AlgebraError::MiddleMismatch);
    }
    let alpha = x.space().source();
    let beta = x.space().target();
    let gamma = y.space().target();
    let plan =
        composition_plan(alpha, beta, gamma, order).map_err(|_| AlgebraError::MiddleMismatch)?;
    let mut out = HomElement::zero(hom_space(alpha, gamma));
    for (tx, cx) in x.terms() {
        for (ty, cy) in y.terms() {
            let mut assign: BTreeMap<LoopKey, LoopLabel> = BTreeMap::new();
            for (key, label) in plan.outer_keys.iter().zip(&tx.0) {
                assign.insert(*key, *label);
            }
            for (key, label) in plan.inner_keys.iter().zip(&ty.0) {
                assign.insert(*key, *label);
            }
            let folded = fold_events(&plan, assign, variant)?;
            for (final_assign, coeff) in folded {
                let labels: Vec<LoopLabel> = plan
                    .final_keys
                    .iter()
                    .map(|k| final_assign[k])
                    .collect();
                out.add_term(Tensor(labels), coeff * cx * cy);
            }
        }
    }
    Ok(out)
}

type Assignment = BTreeMap<LoopKey, LoopLabel>;

fn fold_events(
    plan: &CompositionPlan,
    start: Assignment,
    variant: CoactionVariant,
) -> Result<Vec<(Assignment, BigRational)>, AlgebraError> {
    let mut states = alloc::vec![(start, BigRational::from_integer(1.into()))];
    for event in &plan.events {
        let mut next: Vec<(Assignment, BigRational)> = Vec::new();
        for (assign, coeff) in states {
            for (out_assign, c) in apply_event(event, &assign, variant)? {
                next.push((out_assign, &coeff * BigRational::from_integer(c.into())));
            }
        }
        states = next;
        if states.is_empty() {
            break;
        }
    }
    Ok(states)
}

fn apply_event(
    event: &SurgeryEvent,
    assign: &Assignment,
    variant: CoactionVariant,
) -> Result<Vec<(Assignment, i64)>, AlgebraError> {
    let mut base = assign.clone();
    match event.kind {
        SurgeryEventKind::MergeTrivialTrivial { .. }
        | SurgeryEventKind::MergeTrivialEssential { .. }
        | SurgeryEventKind::MergeEssentialEssential { .. } => {
            let (k1, _) = event.before[0];
            let (k2, _) = event.before[1];
            let (result, _) = event.after[0];
            let l1 = base.remove(&k1).ok_or(AlgebraError::SpaceMismatch)?;
            let l2 = base.remove(&k2).ok_or(AlgebraError::SpaceMismatch)?;
            let images = match event.kind {
                SurgeryEventKind::MergeTrivialTrivial { nested: false, .. } => {
                    merge_separated(l1, l2)?
                }
                SurgeryEventKind::MergeTrivialTrivial { nested: true, inner } => {
                    let (outer_label, inner_label) =
                        if inner == Some(k1) { (l2, l1) } else { (l1, l2) };
                    merge_nested(outer_label, inner_label)?
                }
                SurgeryEventKind::MergeTrivialEssential { trivial } => {
                    let (t, e) = if trivial == k1 { (l1, l2) } else { (l2, l1) };
                    act_merge(t, e)?
                }
                SurgeryEventKind::MergeEssentialEssential { inner } => {
                    let (outer_label, inner_label) =
                        if inner == k1 { (l2, l1) } else { (l1, l2) };
                    pair_merge(outer_label, inner_label)?
                }
                _ => unreachable!(),
            };
            Ok(images
                .into_iter()
                .map(|(label, c)| {
                    let mut a = base.clone();
                    a.insert(result, label);
                    (a, c)
                })
                .collect())
        }
        SurgeryEventKind::SplitTrivialTrivial { .. }
        | SurgeryEventKind::SplitTrivialEssential { .. }
        | SurgeryEventKind::SplitEssentialEssential { .. } => {
            let (source, _) = event.before[0];
            let (k1, _) = event.after[0];
            let (k2, _) = event.after[1];
            let ls = base.remove(&source).ok_or(AlgebraError::SpaceMismatch)?;
            // Images are listed as (first slot, second slot) for the key
            // pair chosen per kind below.
            let (slot1, slot2, images) = match event.kind {
                SurgeryEventKind::SplitTrivialTrivial { nested: false, .. } => {
                    (k1, k2, split_separated(ls)?)
                }
                SurgeryEventKind::SplitTrivialTrivial { nested: true, inner } => {
                    let inner = inner.expect("nested split has an inner loop");
                    let outer = if inner == k1 { k2 } else { k1 };
                    (outer, inner, split_nested(ls)?)
                }
                SurgeryEventKind::SplitTrivialEssential { trivial } => {
                    let essential = if trivial == k1 { k2 } else { k1 };
                    (trivial, essential, coact_split(ls, variant)?)
                }
                SurgeryEventKind::SplitEssentialEssential { inner } => {
                    let outer = if inner == k1 { k2 } else { k1 };
                    (outer, inner, copair_split(ls)?)
                }
                _ => unreachable!(),
            };
            Ok(images
                .into_iter()
                .map(|((l1, l2), c)| {
                    let mut a = base.clone();
                    a.insert(slot1, l1);
                    a.insert(slot2, l2);
                    (a, c)
                })
                .collect())
        }
    }
}

/// The full bilinear composition table over one surgery plan: every basis
/// pair of `hom(alpha, beta) (x) hom(beta, gamma)` mapped to its composite.
pub fn compose_table(
    alpha: &crate::matching::AffineMatching,
    beta: &crate::matching::AffineMatching,
    gamma: &crate::matching::AffineMatching,
    variant: CoactionVariant,
    order: Option<&[usize]>,
) -> Result<BTreeMap<(Tensor, Tensor), HomElement>, AlgebraError> {
    let plan =
        composition_plan(alpha, beta, gamma, order).map_err(|_| AlgebraError::MiddleMismatch)?;
    let left = hom_space(alpha, beta);
    let right = hom_space(beta, gamma);
    let out_space = hom_space(alpha, gamma);
    let mut table = BTreeMap::new();
    for tx in left.basis() {
        for ty in right.basis() {
            let mut assign: BTreeMap<LoopKey, LoopLabel> = BTreeMap::new();
            for (key, label) in plan.outer_keys.iter().zip(&tx.0) {
                assign.insert(*key, *label);
            }
            for (key, label) in plan.inner_keys.iter().zip(&ty.0) {
                assign.insert(*key, *label);
            }
            let mut out = HomElement::zero(out_space.clone());
            for (final_assign, coeff) in fold_events(&plan, assign, variant)? {
                let labels: Vec<LoopLabel> =
                    plan.final_keys.iter().map(|k| final_assign[k]).collect();
                out.add_term(Tensor(labels), coeff);
            }
            table.insert((tx.clone(), ty.clone()), out);
        }
    }
    Ok(table)
}

/// Transports an element along one rotation of both boundary matchings.
/// Loops map to loops by rotating marked points; labels ride along.
pub fn transport_rotation(x: &HomElement, dir: RotDir) -> HomElement {
    let space = x.space();
    let m = 2 * space.n();
    let rot = GeneratorToken::Rot { strands: m, dir };
    let alpha = act_generator(space.source(), rot)
        .expect("rotation acts on any matching")
        .matching;
    let beta = act_generator(space.target(), rot)
        .expect("rotation acts on any matching")
        .matching;
    let new_space = hom_space(&alpha, &beta);
    let step = |p: u32| -> u32 {
        match dir {
            RotDir::Ccw => p % m + 1,
            RotDir::Cw => (p + m - 2) % m + 1,
        }
    };
    // Position of each old loop in the new canonical order.
    let position: Vec<usize> = space
        .loops()
        .iter()
        .map(|l| {
            let mut moved: Vec<u32> = l.points.iter().map(|&p| step(p)).collect();
            moved.sort_unstable();
            new_space
                .loops()
                .iter()
                .position(|nl| nl.points == moved)
                .expect("rotated loop exists")
        })
        .collect();
    let mut out = HomElement::zero(new_space.clone());
    for (t, c) in x.terms() {
        let mut labels = alloc::vec![LoopLabel::One; t.0.len()];
        for (old_idx, &new_idx) in position.iter().enumerate() {
            labels[new_idx] = t.0[old_idx];
        }
        out.add_term(Tensor(labels), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom::identity;
    use crate::matching::{AffineMatching, SignSequence};

    fn m(s: &str) -> AffineMatching {
        AffineMatching::from_signs(&SignSequence::parse(s).unwrap()).unwrap()
    }

    fn basis(a: &str, b: &str, t: &str) -> HomElement {
        let space = hom_space(&m(a), &m(b));
        HomElement::basis_element(space, Tensor::parse(t).unwrap()).unwrap()
    }

    fn one() -> BigRational {
        BigRational::from_integer(1.into())
    }

    #[test]
    fn dots_multiply_to_zero() {
        let x = basis("+-", "+-", "X");
        let z = compose(&x, &x, CoactionVariant::Paper).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn unit_laws_on_two_points() {
        for a in ["+-", "-+"] {
            for b in ["+-", "-+"] {
                let space = hom_space(&m(a), &m(b));
                for t in space.basis() {
                    let e = HomElement::basis_element(space.clone(), t).unwrap();
                    let left = compose(&identity(&m(a)), &e, CoactionVariant::Paper).unwrap();
                    let right = compose(&e, &identity(&m(b)), CoactionVariant::Paper).unwrap();
                    assert_eq!(left, e);
                    assert_eq!(right, e);
                }
            }
        }
    }

    #[test]
    fn symplectic_pairing_of_essential_labels() {
        let v = basis("+-", "-+", "V");
        let w = basis("-+", "+-", "W");
        let vw = compose(&v, &w, CoactionVariant::Paper).unwrap();
        assert_eq!(vw, basis("+-", "+-", "X"));
        // Pairing in the other order picks up the sign.
        let w2 = basis("+-", "-+", "W");
        let v2 = basis("-+", "+-", "V");
        let wv = compose(&w2, &v2, CoactionVariant::Paper).unwrap();
        assert_eq!(wv, basis("+-", "+-", "X").scale(&-one()));
    }

    #[test]
    fn dot_kills_essential() {
        let x = basis("+-", "+-", "X");
        let v = basis("+-", "-+", "V");
        let xv = compose(&x, &v, CoactionVariant::Paper).unwrap();
        assert!(xv.is_zero());
    }

    #[test]
    fn identity_composes_on_four_points() {
        let beta1 = m("+-+-");
        let id = identity(&beta1);
        let sq = compose(&id, &id, CoactionVariant::Paper).unwrap();
        assert_eq!(sq, id);
    }

    #[test]
    fn rotation_transport_round_trip_two_points() {
        for a in ["+-", "-+"] {
            for b in ["+-", "-+"] {
                let space = hom_space(&m(a), &m(b));
                for t in space.basis() {
                    let e = HomElement::basis_element(space.clone(), t).unwrap();
                    let mut moved = e.clone();
                    for _ in 0..2 {
                        moved = transport_rotation(&moved, RotDir::Ccw);
                    }
                    assert_eq!(moved, e);
                }
            }
        }
    }
}
