//! Surgery on the concatenated diagram of two composable morphism links.
//!
//! Composition of hom-space elements folds one surgery step per arc of the
//! shared middle matching: the two mirror copies of the arc are replaced by
//! two radial strands, merging or splitting loops. Each step is admissible
//! only while the new strands cross nothing, which forces enclosing arcs to
//! be surgered before the arcs they enclose; any admissible order gives the
//! same composite (verified elsewhere, not assumed).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use super::diagram::{matching_band, BandSide, DiagramLoop, MarkedCircle, MarkedPoint, PLDiagram, PlArc};
use super::{dir, rat, segments_clash};
use crate::evaluate::LoopClass;
use crate::matching::AffineMatching;

/// Stable identity of a loop across surgery steps.
pub type LoopKey = u32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SurgeryError {
    /// The middle matchings of the two links differ.
    MiddleMismatch,
    /// The site is already surgered or its radial strands are blocked.
    InvalidSite(usize),
}

impl fmt::Display for SurgeryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurgeryError::MiddleMismatch => write!(f, "middle matchings differ"),
            SurgeryError::InvalidSite(s) => write!(f, "surgery site {s} is not admissible"),
        }
    }
}

/// One surgery step, with loop identities and classes before and after.
#[derive(Clone, Debug)]
pub struct SurgeryEvent {
    pub kind: SurgeryEventKind,
    pub before: Vec<(LoopKey, LoopClass)>,
    pub after: Vec<(LoopKey, LoopClass)>,
    /// Endpoints of the surgered middle arc.
    pub site: (u32, u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurgeryEventKind {
    /// Two 0-loops merge; `inner` is set when one encloses the other.
    MergeTrivialTrivial { nested: bool, inner: Option<LoopKey> },
    /// A 0-loop is absorbed into a 1-loop.
    MergeTrivialEssential { trivial: LoopKey },
    /// Two 1-loops merge into a 0-loop; `inner` is the one nearer the
    /// puncture.
    MergeEssentialEssential { inner: LoopKey },
    /// A 0-loop splits into two 0-loops.
    SplitTrivialTrivial { nested: bool, inner: Option<LoopKey> },
    /// A 1-loop sheds a 0-loop.
    SplitTrivialEssential { trivial: LoopKey },
    /// A 0-loop splits into two 1-loops; `inner` is nearer the puncture.
    SplitEssentialEssential { inner: LoopKey },
}

/// The four-band diagram for composing over a shared middle matching:
/// `gamma` inside the inner circle, the mirror of `beta` outside it, `beta`
/// inside the outer circle, the mirror of `alpha` outside it.
pub struct SurgeryDiagram {
    circles: Vec<MarkedCircle>,
    arcs: Vec<PlArc>,
    alive: Vec<bool>,
    /// Per middle-matching arc: `(endpoints, inner copy, outer copy)`.
    sites: Vec<((u32, u32), usize, usize)>,
    surgered: Vec<bool>,
    loops: Vec<(LoopKey, BTreeSet<usize>, DiagramLoop)>,
    next_key: LoopKey,
}

impl SurgeryDiagram {
    pub fn new(
        alpha: &AffineMatching,
        beta: &AffineMatching,
        gamma: &AffineMatching,
    ) -> Result<SurgeryDiagram, SurgeryError> {
        if alpha.n() != beta.n() || beta.n() != gamma.n() {
            return Err(SurgeryError::MiddleMismatch);
        }
        let m = alpha.points();
        let circles = alloc::vec![
            MarkedCircle { radius: rat(8, 1), points: m, rank: 0 },
            MarkedCircle { radius: rat(4, 1), points: m, rank: 1 },
        ];
        let shell = PLDiagram { circles: circles.clone(), arcs: Vec::new() };
        let mut arcs = matching_band(&shell, 1, gamma, BandSide::Inward);
        let n = beta.arcs().len();
        arcs.extend(matching_band(&shell, 1, beta, BandSide::Outward));
        arcs.extend(matching_band(&shell, 0, beta, BandSide::Inward));
        arcs.extend(matching_band(&shell, 0, alpha, BandSide::Outward));
        let sites = beta
            .arcs()
            .iter()
            .enumerate()
            .map(|(s, arc)| ((arc.from, arc.to), n + s, 2 * n + s))
            .collect();
        let alive = alloc::vec![true; arcs.len()];
        let mut sd = SurgeryDiagram {
            circles,
            arcs,
            alive,
            sites,
            surgered: alloc::vec![false; n],
            loops: Vec::new(),
            next_key: 0,
        };
        debug_assert_eq!(sd.diagram().validate_crossingless(), Ok(()));
        let initial = sd.extract_loops();
        for (set, l) in initial {
            let key = sd.next_key;
            sd.next_key += 1;
            sd.loops.push((key, set, l));
        }
        Ok(sd)
    }

    /// Materializes the live arcs. Arc indices are preserved via the alive
    /// mask in `extract_loops`.
    pub fn diagram(&self) -> PLDiagram {
        PLDiagram {
            circles: self.circles.clone(),
            arcs: self
                .arcs
                .iter()
                .zip(&self.alive)
                .filter(|(_, &alive)| alive)
                .map(|(a, _)| a.clone())
                .collect(),
        }
    }

    fn extract_loops(&self) -> Vec<(BTreeSet<usize>, DiagramLoop)> {
        // Build on the full index space so arc identities persist.
        let live: Vec<usize> = (0..self.arcs.len()).filter(|&k| self.alive[k]).collect();
        let d = PLDiagram {
            circles: self.circles.clone(),
            arcs: live.iter().map(|&k| self.arcs[k].clone()).collect(),
        };
        let loops = d.loops().expect("surgery diagram is closed");
        loops
            .into_iter()
            .map(|mut l| {
                let set: BTreeSet<usize> = l.arcs.iter().map(|&k| live[k]).collect();
                l.arcs = set.iter().copied().collect();
                (set, l)
            })
            .collect()
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    /// Loops currently present, each with its stable key.
    pub fn live_loops(&self) -> &[(LoopKey, BTreeSet<usize>, DiagramLoop)] {
        &self.loops
    }

    /// Keys of the loops of one initial link, in canonical order (smallest
    /// marked point of the interface circle). Rank 0 is the outer link.
    pub fn link_loop_keys(&self, rank: u32) -> Vec<LoopKey> {
        let mut keyed: Vec<(u32, LoopKey)> = self
            .loops
            .iter()
            .filter(|(_, _, l)| l.min_marker.0 == rank)
            .map(|(k, _, l)| (l.min_marker.1, *k))
            .collect();
        keyed.sort();
        keyed.into_iter().map(|(_, k)| k).collect()
    }

    fn radial_strand(&self, p: u32) -> PlArc {
        let m = self.circles[0].points;
        let phi = rat(i64::from(p) - 1, i64::from(m));
        let d = dir(&phi);
        PlArc {
            ends: (
                MarkedPoint { circle: 1, index: p },
                MarkedPoint { circle: 0, index: p },
            ),
            verts: alloc::vec![
                d.scale(&self.circles[1].radius),
                d.scale(&self.circles[0].radius)
            ],
        }
    }

    /// A site is admissible when not yet surgered and both of its radial
    /// strands avoid every remaining arc.
    pub fn is_admissible(&self, site: usize) -> bool {
        if site >= self.sites.len() || self.surgered[site] {
            return false;
        }
        let ((i, j), inner, outer) = self.sites[site];
        for p in [i, j] {
            let strand = self.radial_strand(p);
            for (k, arc) in self.arcs.iter().enumerate() {
                if !self.alive[k] || k == inner || k == outer {
                    continue;
                }
                for sa in strand.verts.windows(2) {
                    for sb in arc.verts.windows(2) {
                        if segments_clash(&sa[0], &sa[1], &sb[0], &sb[1]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn admissible_sites(&self) -> Vec<usize> {
        (0..self.sites.len()).filter(|&s| self.is_admissible(s)).collect()
    }

    /// Performs one surgery step and classifies the event.
    pub fn surgery(&mut self, site: usize) -> Result<SurgeryEvent, SurgeryError> {
        if !self.is_admissible(site) {
            return Err(SurgeryError::InvalidSite(site));
        }
        let ((i, j), inner_copy, outer_copy) = self.sites[site];
        self.surgered[site] = true;
        self.alive[inner_copy] = false;
        self.alive[outer_copy] = false;
        for p in [i, j] {
            self.arcs.push(self.radial_strand(p));
            self.alive.push(true);
        }
        debug_assert_eq!(self.diagram().validate_crossingless(), Ok(()));

        let fresh = self.extract_loops();
        let mut before: Vec<(LoopKey, LoopClass)> = Vec::new();
        let mut after: Vec<(LoopKey, LoopClass)> = Vec::new();
        let mut after_loops: Vec<(LoopKey, DiagramLoop)> = Vec::new();
        let mut next = Vec::new();
        let mut dead: Vec<(LoopKey, DiagramLoop)> = Vec::new();
        // Loops untouched by the removed copies keep their keys.
        let mut unmatched_new: Vec<(BTreeSet<usize>, DiagramLoop)> = Vec::new();
        'outer: for (set, l) in fresh {
            for (key, old_set, _) in &self.loops {
                if *old_set == set {
                    next.push((*key, set, l));
                    continue 'outer;
                }
            }
            unmatched_new.push((set, l));
        }
        for (key, set, l) in &self.loops {
            if set.contains(&inner_copy) || set.contains(&outer_copy) {
                dead.push((*key, l.clone()));
                before.push((*key, l.class()));
            }
        }
        for (set, l) in unmatched_new {
            let key = self.next_key;
            self.next_key += 1;
            after.push((key, l.class()));
            after_loops.push((key, l.clone()));
            next.push((key, set, l));
        }
        next.sort_by_key(|(_, _, l)| l.min_marker);
        self.loops = next;

        let kind = match (dead.len(), after_loops.len()) {
            (2, 1) => {
                let (ka, la) = &dead[0];
                let (kb, lb) = &dead[1];
                classify_merge(*ka, la, *kb, lb)
            }
            (1, 2) => {
                let (kc, lc) = &after_loops[0];
                let (kd, ld) = &after_loops[1];
                classify_split(*kc, lc, *kd, ld)
            }
            other => unreachable!("surgery changed loop count by {other:?}"),
        };
        Ok(SurgeryEvent { kind, before, after, site: (i, j) })
    }

    /// Final loop keys in the canonical order of the composed link.
    pub fn final_loop_keys(&self) -> Vec<LoopKey> {
        debug_assert!(self.surgered.iter().all(|&s| s));
        self.loops.iter().map(|(k, _, _)| *k).collect()
    }
}

fn classify_merge(ka: LoopKey, la: &DiagramLoop, kb: LoopKey, lb: &DiagramLoop) -> SurgeryEventKind {
    match (la.class(), lb.class()) {
        (LoopClass::Trivial, LoopClass::Trivial) => {
            let a_in_b = lb.contains(la);
            let b_in_a = la.contains(lb);
            let inner = if a_in_b {
                Some(ka)
            } else if b_in_a {
                Some(kb)
            } else {
                None
            };
            SurgeryEventKind::MergeTrivialTrivial { nested: inner.is_some(), inner }
        }
        (LoopClass::Trivial, LoopClass::Essential) => {
            SurgeryEventKind::MergeTrivialEssential { trivial: ka }
        }
        (LoopClass::Essential, LoopClass::Trivial) => {
            SurgeryEventKind::MergeTrivialEssential { trivial: kb }
        }
        (LoopClass::Essential, LoopClass::Essential) => {
            // Exactly one lies on the puncture side of the other.
            let a_inner = lb.contains(la);
            let b_inner = la.contains(lb);
            debug_assert!(a_inner != b_inner);
            SurgeryEventKind::MergeEssentialEssential { inner: if a_inner { ka } else { kb } }
        }
    }
}

fn classify_split(kc: LoopKey, lc: &DiagramLoop, kd: LoopKey, ld: &DiagramLoop) -> SurgeryEventKind {
    match (lc.class(), ld.class()) {
        (LoopClass::Trivial, LoopClass::Trivial) => {
            let c_in_d = ld.contains(lc);
            let d_in_c = lc.contains(ld);
            let inner = if c_in_d {
                Some(kc)
            } else if d_in_c {
                Some(kd)
            } else {
                None
            };
            SurgeryEventKind::SplitTrivialTrivial { nested: inner.is_some(), inner }
        }
        (LoopClass::Trivial, LoopClass::Essential) => {
            SurgeryEventKind::SplitTrivialEssential { trivial: kc }
        }
        (LoopClass::Essential, LoopClass::Trivial) => {
            SurgeryEventKind::SplitTrivialEssential { trivial: kd }
        }
        (LoopClass::Essential, LoopClass::Essential) => {
            let c_inner = ld.contains(lc);
            let d_inner = lc.contains(ld);
            debug_assert!(c_inner != d_inner);
            SurgeryEventKind::SplitEssentialEssential { inner: if c_inner { kc } else { kd } }
        }
    }
}

/// The full event sequence for one composition, surgering sites in the given
/// order (or, by default, always the admissible site with the smallest
/// endpoint).
pub struct CompositionPlan {
    /// Loop keys of the outer link in canonical order.
    pub outer_keys: Vec<LoopKey>,
    /// Loop keys of the inner link in canonical order.
    pub inner_keys: Vec<LoopKey>,
    pub events: Vec<SurgeryEvent>,
    /// Final loop keys in the canonical order of the composed link.
    pub final_keys: Vec<LoopKey>,
    /// Classes of the final loops, canonical order.
    pub final_classes: Vec<LoopClass>,
}

pub fn composition_plan(
    alpha: &AffineMatching,
    beta: &AffineMatching,
    gamma: &AffineMatching,
    order: Option<&[usize]>,
) -> Result<CompositionPlan, SurgeryError> {
    let mut sd = SurgeryDiagram::new(alpha, beta, gamma)?;
    let outer_keys = sd.link_loop_keys(0);
    let inner_keys = sd.link_loop_keys(1);
    let mut events = Vec::new();
    if let Some(order) = order {
        if order.len() != sd.site_count() {
            return Err(SurgeryError::InvalidSite(order.len()));
        }
        for &site in order {
            events.push(sd.surgery(site)?);
        }
    } else {
        for _ in 0..sd.site_count() {
            let site = *sd
                .admissible_sites()
                .first()
                .expect("crossingless middle matching always has an admissible site");
            events.push(sd.surgery(site)?);
        }
    }
    let final_keys = sd.final_loop_keys();
    let final_classes = sd.live_loops().iter().map(|(_, _, l)| l.class()).collect();
    Ok(CompositionPlan { outer_keys, inner_keys, events, final_keys, final_classes })
}

/// All admissible complete surgery orders, for order-independence sweeps.
pub fn admissible_orders(
    alpha: &AffineMatching,
    beta: &AffineMatching,
    gamma: &AffineMatching,
) -> Result<Vec<Vec<usize>>, SurgeryError> {
    fn rec(
        alpha: &AffineMatching,
        beta: &AffineMatching,
        gamma: &AffineMatching,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), SurgeryError> {
        let mut sd = SurgeryDiagram::new(alpha, beta, gamma)?;
        for &site in prefix.iter() {
            sd.surgery(site)?;
        }
        let open = sd.admissible_sites();
        if open.is_empty() {
            out.push(prefix.clone());
            return Ok(());
        }
        for site in open {
            prefix.push(site);
            rec(alpha, beta, gamma, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(alpha, beta, gamma, &mut Vec::new(), &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::SignSequence;

    fn m(s: &str) -> AffineMatching {
        AffineMatching::from_signs(&SignSequence::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn single_arc_middle_merges_separated_bubbles() {
        let a = m("+-");
        let mut sd = SurgeryDiagram::new(&a, &a, &a).unwrap();
        assert_eq!(sd.admissible_sites(), alloc::vec![0]);
        let ev = sd.surgery(0).unwrap();
        assert!(matches!(
            ev.kind,
            SurgeryEventKind::MergeTrivialTrivial { nested: false, .. }
        ));
        assert_eq!(sd.final_loop_keys().len(), 1);
    }

    #[test]
    fn essential_pair_merges_to_trivial() {
        let a1 = m("+-");
        let a2 = m("-+");
        let plan = composition_plan(&a1, &a2, &a1, None).unwrap();
        assert_eq!(plan.events.len(), 1);
        match plan.events[0].kind {
            SurgeryEventKind::MergeEssentialEssential { inner } => {
                // The inner link's loop is the one nearer the puncture.
                assert_eq!(inner, plan.inner_keys[0]);
            }
            ref other => panic!("unexpected event {other:?}"),
        }
        assert_eq!(plan.final_classes, alloc::vec![LoopClass::Trivial]);
    }

    #[test]
    fn nested_middle_forces_enclosing_arc_first() {
        let nested = m("++--"); // arcs {1,4} and {2,3}, the former enclosing
        let a = m("+-+-");
        let sd = SurgeryDiagram::new(&a, &nested, &a).unwrap();
        // Only the enclosing arc {1,4} admits radial strands.
        let sites = sd.admissible_sites();
        assert_eq!(sites.len(), 1);
        let ((i, j), _, _) = sd.sites[sites[0]];
        assert_eq!((i, j), (1, 4));
        let orders = admissible_orders(&a, &nested, &a).unwrap();
        assert_eq!(orders.len(), 1);
    }

    #[test]
    fn disjoint_middle_allows_both_orders() {
        let beta1 = m("+-+-");
        let orders = admissible_orders(&beta1, &beta1, &beta1).unwrap();
        assert_eq!(orders.len(), 2);
    }

    #[test]
    fn split_event_when_middle_arc_lies_on_one_loop() {
        // alpha = gamma = nested, beta = disjoint: the outer and inner links
        // each have one loop through all four points, so the first surgery
        // merges and the second splits.
        let nested = m("++--");
        let beta1 = m("+-+-");
        let plan = composition_plan(&nested, &beta1, &nested, None).unwrap();
        assert_eq!(plan.events.len(), 2);
        assert!(matches!(
            plan.events[0].kind,
            SurgeryEventKind::MergeTrivialTrivial { .. }
        ));
        assert!(matches!(
            plan.events[1].kind,
            SurgeryEventKind::SplitTrivialTrivial { .. }
        ));
        assert_eq!(plan.final_keys.len(), 2);
    }
}
