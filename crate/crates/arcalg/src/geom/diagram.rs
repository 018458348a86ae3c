//! PL diagrams: embeddings of flat tangle data in the punctured plane with
//! exact rational vertices, loop extraction and the nesting forest.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{dir, origin, rat, segments_clash, sweep_vertices, winding_number, Point, Rat};
use crate::evaluate::LoopClass;
use crate::matching::AffineMatching;
use crate::token::{GeneratorToken, RotDir};
use crate::word::TangleWord;

/// A concentric circle carrying equally spaced marked points; point `k` sits
/// at angle `(k-1)/points` turns. `rank` orders marked points globally:
/// lower ranks sort first.
#[derive(Clone, Debug)]
pub struct MarkedCircle {
    pub radius: Rat,
    pub points: u32,
    pub rank: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MarkedPoint {
    pub circle: usize,
    pub index: u32,
}

/// A PL arc between two marked points. Vertices run from `ends.0` to
/// `ends.1` and successive vertices are distinct.
#[derive(Clone, Debug)]
pub struct PlArc {
    pub ends: (MarkedPoint, MarkedPoint),
    pub verts: Vec<Point>,
}

#[derive(Clone, Debug)]
pub struct PLDiagram {
    pub circles: Vec<MarkedCircle>,
    pub arcs: Vec<PlArc>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GeomError {
    /// Two arcs touch away from a shared marked point.
    Crossing { arc_a: usize, arc_b: usize },
    /// A marked point is not met by exactly two arc ends.
    OpenDiagram(MarkedPoint),
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::Crossing { arc_a, arc_b } => {
                write!(f, "arcs {arc_a} and {arc_b} intersect")
            }
            GeomError::OpenDiagram(p) => {
                write!(f, "marked point ({}, {}) is not 2-valent", p.circle, p.index)
            }
        }
    }
}

/// A closed loop of a diagram: its arcs, concatenated vertices, exact
/// winding number around the puncture, and the smallest marked point it
/// visits (by circle rank, then index).
#[derive(Clone, Debug)]
pub struct DiagramLoop {
    pub arcs: Vec<usize>,
    pub verts: Vec<Point>,
    pub winding: i64,
    pub min_marker: (u32, u32),
}

impl DiagramLoop {
    pub fn class(&self) -> LoopClass {
        LoopClass::of_winding(self.winding)
    }

    /// Whether `other` lies in the region enclosed by `self`: the bounded
    /// disk for a trivial loop, the origin side for an essential one.
    pub fn contains(&self, other: &DiagramLoop) -> bool {
        winding_number(&self.verts, &other.verts[0]) != 0
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        winding_number(&self.verts, p) != 0
    }
}

/// Containment partial order on the loops of a diagram: `parent[k]` is the
/// smallest loop whose region contains loop `k`.
#[derive(Clone, Debug)]
pub struct NestingForest {
    pub parent: Vec<Option<usize>>,
}

impl NestingForest {
    pub fn from_loops(loops: &[DiagramLoop]) -> Self {
        let n = loops.len();
        let mut contains = alloc::vec![alloc::vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    contains[i][j] = loops[i].contains(&loops[j]);
                }
            }
        }
        let parent = (0..n)
            .map(|j| {
                // Containers of j are totally ordered; the parent is the one
                // contained in every other container.
                let containers: Vec<usize> = (0..n).filter(|&i| contains[i][j]).collect();
                containers
                    .iter()
                    .copied()
                    .find(|&a| containers.iter().all(|&b| b == a || contains[b][a]))
            })
            .collect();
        NestingForest { parent }
    }
}

impl PLDiagram {
    pub fn point_angle(&self, p: MarkedPoint) -> Rat {
        let c = &self.circles[p.circle];
        rat(i64::from(p.index) - 1, i64::from(c.points))
    }

    pub fn point_coords(&self, p: MarkedPoint) -> Point {
        dir(&self.point_angle(p)).scale(&self.circles[p.circle].radius)
    }

    /// Exact crossingless check over all arc pairs; contact at a shared
    /// marked point is the only contact allowed.
    pub fn validate_crossingless(&self) -> Result<(), GeomError> {
        for a in 0..self.arcs.len() {
            for b in a + 1..self.arcs.len() {
                if self.arcs_clash(a, b) {
                    return Err(GeomError::Crossing { arc_a: a, arc_b: b });
                }
            }
        }
        Ok(())
    }

    fn arcs_clash(&self, a: usize, b: usize) -> bool {
        let va = &self.arcs[a].verts;
        let vb = &self.arcs[b].verts;
        for sa in va.windows(2) {
            for sb in vb.windows(2) {
                if segments_clash(&sa[0], &sa[1], &sb[0], &sb[1]) {
                    return true;
                }
            }
        }
        false
    }

    fn incidence(&self) -> BTreeMap<MarkedPoint, Vec<usize>> {
        let mut at: BTreeMap<MarkedPoint, Vec<usize>> = BTreeMap::new();
        for (k, arc) in self.arcs.iter().enumerate() {
            at.entry(arc.ends.0).or_default().push(k);
            at.entry(arc.ends.1).or_default().push(k);
        }
        at
    }

    /// Extracts the closed loops of a closed diagram (every marked point
    /// 2-valent), with exact winding numbers.
    pub fn loops(&self) -> Result<Vec<DiagramLoop>, GeomError> {
        let at = self.incidence();
        for (p, arcs) in &at {
            if arcs.len() != 2 {
                return Err(GeomError::OpenDiagram(*p));
            }
        }
        let mut used = alloc::vec![false; self.arcs.len()];
        let mut out = Vec::new();
        for start in 0..self.arcs.len() {
            if used[start] {
                continue;
            }
            let mut arc_ids = Vec::new();
            let mut verts: Vec<Point> = Vec::new();
            let mut markers: Vec<MarkedPoint> = Vec::new();
            let mut arc = start;
            let mut entry = self.arcs[start].ends.0;
            loop {
                used[arc] = true;
                arc_ids.push(arc);
                let a = &self.arcs[arc];
                let exit = if a.ends.0 == entry { a.ends.1 } else { a.ends.0 };
                markers.push(entry);
                if a.ends.0 == entry {
                    extend_dedup(&mut verts, a.verts.iter().cloned());
                } else {
                    extend_dedup(&mut verts, a.verts.iter().rev().cloned());
                }
                let next = *at[&exit]
                    .iter()
                    .find(|&&k| k != arc)
                    .expect("2-valent marked point");
                entry = exit;
                arc = next;
                if arc == start && entry == self.arcs[start].ends.0 {
                    break;
                }
            }
            let winding = winding_number(&verts, &origin());
            let min_marker = markers
                .iter()
                .map(|p| (self.circles[p.circle].rank, p.index))
                .min()
                .expect("loop visits a marked point");
            out.push(DiagramLoop { arcs: arc_ids, verts, winding, min_marker });
        }
        out.sort_by_key(|l| l.min_marker);
        Ok(out)
    }

    pub fn loops_with_nesting(&self) -> Result<(Vec<DiagramLoop>, NestingForest), GeomError> {
        let loops = self.loops()?;
        let forest = NestingForest::from_loops(&loops);
        Ok((loops, forest))
    }

    /// Debug dump: one line per arc with exact rational coordinates.
    pub fn dump(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        for (k, arc) in self.arcs.iter().enumerate() {
            let _ = write!(
                s,
                "arc {k} ({},{})-({},{}):",
                arc.ends.0.circle, arc.ends.0.index, arc.ends.1.circle, arc.ends.1.index
            );
            for v in &arc.verts {
                let _ = write!(s, " {v}");
            }
            let _ = writeln!(s);
        }
        s
    }
}

fn extend_dedup(target: &mut Vec<Point>, src: impl Iterator<Item = Point>) {
    for p in src {
        if target.last() != Some(&p) {
            target.push(p);
        }
    }
}

fn polyline(pieces: Vec<Vec<Point>>) -> Vec<Point> {
    let mut verts = Vec::new();
    for piece in pieces {
        extend_dedup(&mut verts, piece.into_iter());
    }
    verts
}

/// Which side of its circle a band of matching arcs occupies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BandSide {
    /// Toward the puncture.
    Inward,
    /// Away from the puncture.
    Outward,
}

/// Builds the PL arcs of a matching attached to circle `circle_id`, drawn in
/// a band of unit thickness on the chosen side. Nested arcs take staggered
/// radii: an arc that encloses others is drawn farther from the circle.
pub fn matching_band(
    diagram: &PLDiagram,
    circle_id: usize,
    matching: &AffineMatching,
    side: BandSide,
) -> Vec<PlArc> {
    let m = matching.points();
    if m == 0 {
        return Vec::new();
    }
    let radius = diagram.circles[circle_id].radius.clone();
    debug_assert_eq!(diagram.circles[circle_id].points, m);

    // Lift intervals of the canonical sweeps.
    let spans: Vec<(Rat, Rat)> = matching
        .arcs()
        .iter()
        .map(|a| {
            let start = rat(i64::from(a.from) - 1, i64::from(m));
            let end = &start + rat(a.displacement(m), i64::from(m));
            (start, end)
        })
        .collect();
    let contains = |a: &(Rat, Rat), b: &(Rat, Rat)| -> bool {
        for k in -1..=1i64 {
            let shift = rat(k, 1);
            if a.0 < &b.0 + &shift && &b.1 + &shift < a.1 {
                return true;
            }
        }
        false
    };
    let depth: Vec<usize> = spans
        .iter()
        .map(|b| spans.iter().filter(|a| contains(a, b)).count())
        .collect();
    let max_depth = depth.iter().copied().max().unwrap_or(0);

    matching
        .arcs()
        .iter()
        .zip(spans.iter().zip(depth.iter()))
        .map(|(arc, ((start, end), &d))| {
            let offset = rat((max_depth - d + 1) as i64, (max_depth + 2) as i64);
            let rho = match side {
                BandSide::Inward => &radius - &offset,
                BandSide::Outward => &radius + &offset,
            };
            let p_from = dir(start).scale(&radius);
            let p_to = dir(end).scale(&radius);
            let verts = polyline(alloc::vec![
                alloc::vec![p_from, dir(start).scale(&rho)],
                sweep_vertices(&rho, start, end),
                alloc::vec![dir(end).scale(&rho), p_to],
            ]);
            PlArc {
                ends: (
                    MarkedPoint { circle: circle_id, index: arc.from },
                    MarkedPoint { circle: circle_id, index: arc.to },
                ),
                verts,
            }
        })
        .collect()
}

/// The closed diagram of `dual(alpha) . beta`: `beta` drawn inside the
/// marked circle, the mirror of `alpha` outside it.
pub fn embed_pair(alpha: &AffineMatching, beta: &AffineMatching) -> PLDiagram {
    assert_eq!(alpha.n(), beta.n());
    let mut d = PLDiagram {
        circles: alloc::vec![MarkedCircle { radius: rat(4, 1), points: alpha.points(), rank: 0 }],
        arcs: Vec::new(),
    };
    let mut arcs = matching_band(&d, 0, beta, BandSide::Inward);
    arcs.extend(matching_band(&d, 0, alpha, BandSide::Outward));
    d.arcs = arcs;
    debug_assert_eq!(d.validate_crossingless(), Ok(()));
    d
}

/// Layered embedding of a flat word read inside-out: token `j` occupies the
/// annulus between circles `j` and `j+1`. Every strand is routed as a radial
/// stub, a constant-radius sweep, and a short chord to its target point;
/// radius staggering keeps the layer embedded.
pub fn embed_word(word: &TangleWord) -> Result<PLDiagram, crate::evaluate::EvalError> {
    let mut circles = Vec::with_capacity(word.len() + 1);
    for j in 0..=word.len() {
        circles.push(MarkedCircle {
            radius: rat(2 + j as i64, 1),
            points: word.arity_at(j),
            rank: j as u32,
        });
    }
    let mut d = PLDiagram { circles, arcs: Vec::new() };
    for (j, &tok) in word.tokens().iter().enumerate() {
        if tok.is_crossing() {
            return Err(crate::evaluate::EvalError::Flatness(tok));
        }
        let arcs = route_layer(&d, j, tok);
        d.arcs.extend(arcs);
    }
    debug_assert_eq!(d.validate_crossingless(), Ok(()));
    Ok(d)
}

/// Index maps of one flat generator: pass-through strands plus an optional
/// created or capped adjacent pair.
struct LayerPlan {
    /// `(bottom index, top index, lift of the top angle)`.
    passes: Vec<(u32, u32, Rat)>,
    /// Two top indices joined below the top circle.
    cup: Option<(u32, u32)>,
    /// Two bottom indices joined above the bottom circle.
    cap: Option<(u32, u32)>,
}

fn layer_plan(tok: GeneratorToken) -> LayerPlan {
    let mut passes = Vec::new();
    let mut cup = None;
    let mut cap = None;
    match tok {
        GeneratorToken::Cup { strands, index } => {
            let m_in = strands - 2;
            for k in 1..=m_in {
                let k_out = if k < index { k } else { k + 2 };
                passes.push((k, k_out, rat(i64::from(k_out) - 1, i64::from(strands))));
            }
            cup = Some((index, index + 1));
        }
        GeneratorToken::Cap { strands, index } => {
            let m_out = strands - 2;
            for k in 1..=strands {
                if k == index || k == index + 1 {
                    continue;
                }
                let k_out = if k < index { k } else { k - 2 };
                passes.push((k, k_out, rat(i64::from(k_out) - 1, i64::from(m_out.max(1)))));
            }
            cap = Some((index, index + 1));
        }
        GeneratorToken::Rot { strands: m, dir } => {
            for k in 1..=m {
                let (k_out, lift) = match dir {
                    RotDir::Ccw => (k % m + 1, rat(i64::from(k), i64::from(m))),
                    RotDir::Cw => ((k + m - 2) % m + 1, rat(i64::from(k) - 2, i64::from(m))),
                };
                passes.push((k, k_out, lift));
            }
        }
        GeneratorToken::Twist { strands, .. } | GeneratorToken::Id { strands } => {
            for k in 1..=strands {
                passes.push((k, k, rat(i64::from(k) - 1, i64::from(strands.max(1)))));
            }
        }
        GeneratorToken::Cross { .. } => unreachable!("flat layers only"),
    }
    LayerPlan { passes, cup, cap }
}

fn route_layer(d: &PLDiagram, layer: usize, tok: GeneratorToken) -> Vec<PlArc> {
    let m_in = tok.source();
    let m_out = tok.target();
    let r_in = d.circles[layer].radius.clone();
    let r_out = d.circles[layer + 1].radius.clone();
    let plan = layer_plan(tok);
    let eps = rat(1, 8 * i64::from(m_in.max(1)) * i64::from(m_out.max(1)));
    let delta = rat(1, 16 * (i64::from(m_in) + 2));

    // Per-strand sweep radii; groups sweeping toward each other are kept in
    // disjoint radius bands (see the cup/cap analysis in the tests).
    let cup_index = match tok {
        GeneratorToken::Cup { index, .. } => Some(index),
        _ => None,
    };
    let cap_index = match tok {
        GeneratorToken::Cap { index, .. } => Some(index),
        _ => None,
    };
    let rho_of = |k: u32| -> Rat {
        let quarter = rat(1, 4);
        let half = rat(1, 2);
        let stagger = |j: u32| rat(i64::from(j), 1) * &delta;
        match (cup_index, cap_index) {
            (Some(i), _) => {
                if k < i {
                    &r_in + &quarter + stagger(k)
                } else {
                    &r_in + &half - stagger(k - i + 1)
                }
            }
            (_, Some(i)) => {
                if k < i {
                    &r_in + &half - stagger(k)
                } else {
                    &r_in + &quarter + stagger(k)
                }
            }
            _ => &r_in + &quarter + stagger(k),
        }
    };

    let mut arcs = Vec::new();
    for &(k, k_out, ref lift_out) in &plan.passes {
        let a = rat(i64::from(k) - 1, i64::from(m_in));
        let p_in = dir(&a).scale(&r_in);
        let p_out = dir(lift_out).scale(&r_out);
        let verts = if &a == lift_out {
            alloc::vec![p_in, p_out]
        } else {
            let rho = rho_of(k);
            let shy = if lift_out > &a { lift_out - &eps } else { lift_out + &eps };
            polyline(alloc::vec![
                alloc::vec![p_in, dir(&a).scale(&rho)],
                sweep_vertices(&rho, &a, &shy),
                alloc::vec![dir(&shy).scale(&rho), p_out],
            ])
        };
        arcs.push(PlArc {
            ends: (
                MarkedPoint { circle: layer, index: k },
                MarkedPoint { circle: layer + 1, index: k_out },
            ),
            verts,
        });
    }
    if let Some((i, j)) = plan.cup {
        let rho = &r_in + rat(3, 4);
        let phi_i = rat(i64::from(i) - 1, i64::from(m_out));
        let phi_j = rat(i64::from(j) - 1, i64::from(m_out));
        let verts = polyline(alloc::vec![
            alloc::vec![dir(&phi_i).scale(&r_out), dir(&phi_i).scale(&rho)],
            sweep_vertices(&rho, &phi_i, &phi_j),
            alloc::vec![dir(&phi_j).scale(&rho), dir(&phi_j).scale(&r_out)],
        ]);
        arcs.push(PlArc {
            ends: (
                MarkedPoint { circle: layer + 1, index: i },
                MarkedPoint { circle: layer + 1, index: j },
            ),
            verts,
        });
    }
    if let Some((i, j)) = plan.cap {
        let rho = &r_in + rat(1, 8);
        let phi_i = rat(i64::from(i) - 1, i64::from(m_in));
        let phi_j = rat(i64::from(j) - 1, i64::from(m_in));
        let verts = polyline(alloc::vec![
            alloc::vec![dir(&phi_i).scale(&r_in), dir(&phi_i).scale(&rho)],
            sweep_vertices(&rho, &phi_i, &phi_j),
            alloc::vec![dir(&phi_j).scale(&rho), dir(&phi_j).scale(&r_in)],
        ]);
        arcs.push(PlArc {
            ends: (
                MarkedPoint { circle: layer, index: i },
                MarkedPoint { circle: layer, index: j },
            ),
            verts,
        });
    }
    arcs
}

/// Winding-free check used by tests: no vertex sits at the origin.
pub fn away_from_origin(d: &PLDiagram) -> bool {
    d.arcs
        .iter()
        .all(|a| a.verts.iter().all(|v| !(v.x.is_zero() && v.y.is_zero())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::pair_loops;
    use crate::matching::SignSequence;

    fn m(s: &str) -> AffineMatching {
        AffineMatching::from_signs(&SignSequence::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn pair_diagram_is_crossingless_and_closed() {
        let d = embed_pair(&m("+-+-"), &m("+--+"));
        assert_eq!(d.validate_crossingless(), Ok(()));
        let loops = d.loops().unwrap();
        assert_eq!(loops.len(), 2);
    }

    #[test]
    fn pair_loops_match_combinatorics_small() {
        for a in AffineMatching::enumerate(2) {
            for b in AffineMatching::enumerate(2) {
                let d = embed_pair(&a, &b);
                assert_eq!(d.validate_crossingless(), Ok(()), "{a} {b}");
                let geo = d.loops().unwrap();
                let comb = pair_loops(&a, &b);
                assert_eq!(geo.len(), comb.len(), "{a} {b}");
                for (g, c) in geo.iter().zip(comb.iter()) {
                    assert_eq!(g.min_marker.1, c.min_point, "{a} {b}");
                    assert_eq!(g.class(), c.class(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn single_arc_word_embeds() {
        let word = TangleWord::parse("g(2,1)").unwrap();
        let d = embed_word(&word).unwrap();
        assert_eq!(d.validate_crossingless(), Ok(()));
        assert_eq!(d.arcs.len(), 1);
    }

    #[test]
    fn enclosing_pair_has_essential_loop() {
        let alpha1 = m("+-");
        let alpha2 = m("-+");
        let same = embed_pair(&alpha2, &alpha2).loops().unwrap();
        assert_eq!(same.len(), 1);
        assert_eq!(same[0].class(), LoopClass::Trivial);
        let cross = embed_pair(&alpha1, &alpha2).loops().unwrap();
        assert_eq!(cross.len(), 1);
        assert_eq!(cross[0].class(), LoopClass::Essential);
        assert!(cross[0].contains_point(&origin()));
        assert!(!same[0].contains_point(&origin()));
    }

    #[test]
    fn nested_bubbles_in_word_diagram() {
        let word = TangleWord::parse("g(2,1); g(4,2); f(4,2); f(2,1)").unwrap();
        let d = embed_word(&word).unwrap();
        assert_eq!(d.validate_crossingless(), Ok(()));
        let (loops, forest) = d.loops_with_nesting().unwrap();
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|l| l.class() == LoopClass::Trivial));
        // The inner bubble sits inside the outer loop.
        let nested = forest.parent.iter().filter(|p| p.is_some()).count();
        assert_eq!(nested, 1);
    }

    #[test]
    fn rotated_word_diagram_stays_embedded() {
        let word = TangleWord::parse("g(2,1); r(2); g(4,1); r(4); r(4); f(4,2)").unwrap();
        let d = embed_word(&word).unwrap();
        assert_eq!(d.validate_crossingless(), Ok(()));
    }

    #[test]
    fn word_loops_agree_with_evaluation() {
        for text in [
            "g(2,1); f(2,1)",
            "g(2,1); r(2); f(2,1)",
            "g(2,1); g(4,2); f(4,2); f(2,1)",
            "g(2,1); g(4,1); r(4); f(4,1); r(2); f(2,1)",
        ] {
            let word = TangleWord::parse(text).unwrap();
            let d = embed_word(&word).unwrap();
            assert_eq!(d.validate_crossingless(), Ok(()), "{text}");
            let loops = d.loops().unwrap();
            let res = crate::evaluate::evaluate_word(&word).unwrap();
            let n0 = loops.iter().filter(|l| l.class() == LoopClass::Trivial).count() as u32;
            let n1 = loops.iter().filter(|l| l.class() == LoopClass::Essential).count() as u32;
            assert_eq!((n0, n1), (res.n0, res.n1), "{text}");
        }
    }
}
