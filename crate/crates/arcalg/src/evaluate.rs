//! Evaluation of flat tangle words to matchings, classified closed loops and
//! a degree shift, by folding generators over the combinatorial state.

use alloc::vec::Vec;
use core::fmt;

use crate::matching::{seam_of_sweep, AffineMatching, MatchArc};
use crate::token::{GeneratorToken, RotDir};
use crate::word::TangleWord;

/// Classification of a closed loop in the punctured plane.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LoopClass {
    /// Winding number zero around the puncture (a 0-loop).
    Trivial,
    /// Winding number `±1` (a 1-loop).
    Essential,
}

impl LoopClass {
    pub fn of_winding(w: i64) -> LoopClass {
        debug_assert!(w.abs() <= 1, "embedded loop winding out of range: {w}");
        if w == 0 {
            LoopClass::Trivial
        } else {
            LoopClass::Essential
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvalError {
    /// Token does not chain with the current state, or the word does not
    /// start at arity zero.
    Arity { expected: u32, found: u32 },
    /// Evaluation is defined on even strand counts only.
    OddArity(u32),
    /// A crossing token reached the flat evaluator.
    Flatness(GeneratorToken),
    /// Crossing elimination exhausted its search budget.
    CrossingsIrreducible,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Arity { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            EvalError::OddArity(m) => write!(f, "odd strand count {m} has no evaluation"),
            EvalError::Flatness(t) => write!(f, "crossing token {t} in flat evaluation"),
            EvalError::CrossingsIrreducible => write!(f, "crossings could not be eliminated"),
        }
    }
}

/// Result of evaluating a flat word: the boundary matching (empty for closed
/// diagrams), loop counts by class, and the accumulated twist shift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvaluationResult {
    pub matching: AffineMatching,
    /// Number of 0-loops.
    pub n0: u32,
    /// Number of 1-loops.
    pub n1: u32,
    /// Homological shift from framing twists.
    pub shift: i64,
}

impl EvaluationResult {
    pub fn new(matching: AffineMatching) -> Self {
        EvaluationResult { matching, n0: 0, n1: 0, shift: 0 }
    }
}

impl fmt::Display for EvaluationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "signs={} n0={} n1={} shift={}",
            self.matching.to_signs(),
            self.n0,
            self.n1,
            self.shift
        )
    }
}

/// Applies one flat generator to a matching. The returned counts and shift
/// describe this step alone.
pub fn act_generator(
    state: &AffineMatching,
    token: GeneratorToken,
) -> Result<EvaluationResult, EvalError> {
    let m_in = state.points();
    if token.source() != m_in {
        return Err(EvalError::Arity { expected: token.source(), found: m_in });
    }
    if token.source() % 2 == 1 || token.target() % 2 == 1 {
        return Err(EvalError::OddArity(token.source().max(token.target())));
    }
    match token {
        GeneratorToken::Cross { .. } => Err(EvalError::Flatness(token)),
        GeneratorToken::Id { .. } => Ok(EvaluationResult::new(state.clone())),
        GeneratorToken::Twist { sign, .. } => {
            let mut res = EvaluationResult::new(state.clone());
            res.shift = sign.as_shift();
            Ok(res)
        }
        GeneratorToken::Rot { strands, dir } => Ok(EvaluationResult::new(rotate(state, strands, dir))),
        GeneratorToken::Cup { strands, index } => Ok(EvaluationResult::new(cup(state, strands, index))),
        GeneratorToken::Cap { strands, index } => Ok(cap(state, strands, index)),
    }
}

/// Evaluates a word with source arity zero. Words with crossings are first
/// flattened by [`crate::rewrite::eliminate_crossings`] with the default
/// search budget.
pub fn evaluate_word(word: &TangleWord) -> Result<EvaluationResult, EvalError> {
    let flat;
    let word = if word.has_crossings() {
        flat = crate::rewrite::eliminate_crossings(word, crate::rewrite::DEFAULT_SEARCH_BUDGET)
            .map_err(|_| EvalError::CrossingsIrreducible)?;
        &flat
    } else {
        word
    };
    evaluate_flat(word)
}

/// Evaluates a crossing-free word with source arity zero.
pub fn evaluate_flat(word: &TangleWord) -> Result<EvaluationResult, EvalError> {
    if word.source() != 0 {
        return Err(EvalError::Arity { expected: 0, found: word.source() });
    }
    for k in 0..=word.len() {
        let a = word.arity_at(k);
        if a % 2 == 1 {
            return Err(EvalError::OddArity(a));
        }
    }
    let mut acc = EvaluationResult::new(AffineMatching::empty());
    for &tok in word.tokens() {
        let step = act_generator(&acc.matching, tok)?;
        acc.matching = step.matching;
        acc.n0 += step.n0;
        acc.n1 += step.n1;
        acc.shift += step.shift;
    }
    Ok(acc)
}

fn rotate(state: &AffineMatching, m: u32, dir: RotDir) -> AffineMatching {
    if m == 0 {
        return AffineMatching::empty();
    }
    let step = |p: u32| -> u32 {
        match dir {
            RotDir::Ccw => p % m + 1,
            RotDir::Cw => (p + m - 2) % m + 1,
        }
    };
    let arcs = state
        .arcs()
        .iter()
        .map(|arc| {
            let d = arc.displacement(m);
            let from = step(arc.from);
            let to = step(arc.to);
            // The sweep is rigid, so the displacement is unchanged and the
            // seam count follows from the new start point.
            MatchArc { from, to, seam: seam_of_sweep(from, d, m) }
        })
        .collect();
    AffineMatching::from_arcs(state.n(), arcs)
}

fn cup(state: &AffineMatching, m_new: u32, index: u32) -> AffineMatching {
    let relabel = |p: u32| if p >= index { p + 2 } else { p };
    let mut arcs: Vec<MatchArc> = state
        .arcs()
        .iter()
        .map(|a| MatchArc { from: relabel(a.from), to: relabel(a.to), seam: a.seam })
        .collect();
    arcs.push(MatchArc { from: index, to: index + 1, seam: 0 });
    debug_assert_eq!(m_new, state.points() + 2);
    AffineMatching::from_arcs(m_new / 2, arcs)
}

fn cap(state: &AffineMatching, m: u32, index: u32) -> EvaluationResult {
    let (i, j) = (index, index + 1);
    let arc_i = *state.arc_at(i);
    let mut n0 = 0;
    let mut n1 = 0;
    let mut kept: Vec<MatchArc> = Vec::with_capacity(state.arcs().len());

    if arc_i.touches(j) {
        // The cap closes a single arc into a loop; the bridge across the
        // capped gap contributes one gap unit to the total sweep.
        let d = arc_i.displacement(m);
        let total = if arc_i.from == i { d - 1 } else { d + 1 };
        debug_assert_eq!(total.rem_euclid(i64::from(m)), 0);
        let winding = total / i64::from(m);
        match LoopClass::of_winding(winding) {
            LoopClass::Trivial => n0 += 1,
            LoopClass::Essential => n1 += 1,
        }
        kept.extend(state.arcs().iter().filter(|a| **a != arc_i).copied());
    } else {
        let arc_j = *state.arc_at(j);
        // Traverse free end of the first arc to `i`, bridge to `j`, then on
        // to the free end of the second arc.
        let d_i = arc_i.displacement(m);
        let d_j = arc_j.displacement(m);
        let (start, to_i) = if arc_i.to == i { (arc_i.from, d_i) } else { (arc_i.to, -d_i) };
        let (end, from_j) = if arc_j.from == j { (arc_j.to, d_j) } else { (arc_j.from, -d_j) };
        let total = to_i + 1 + from_j;
        kept.push(MatchArc {
            from: start,
            to: end,
            seam: seam_of_sweep(start, total, m),
        });
        kept.extend(
            state
                .arcs()
                .iter()
                .filter(|a| **a != arc_i && **a != arc_j)
                .copied(),
        );
    }

    let relabel = |p: u32| if p > j { p - 2 } else { p };
    let arcs = kept
        .into_iter()
        .map(|a| MatchArc { from: relabel(a.from), to: relabel(a.to), seam: a.seam })
        .collect();
    let mut res = EvaluationResult::new(AffineMatching::from_arcs(m / 2 - 1, arcs));
    res.n0 = n0;
    res.n1 = n1;
    res
}

/// A closed loop of the link `dual(alpha) . beta`, recorded by the marked
/// points it visits (sorted) and its winding number around the puncture.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PairLoop {
    pub min_point: u32,
    pub winding: i64,
    pub points: Vec<u32>,
}

impl PairLoop {
    pub fn class(&self) -> LoopClass {
        LoopClass::of_winding(self.winding)
    }
}

/// Loops of the closed diagram obtained by gluing `beta` (inside the marked
/// circle) to the radial mirror of `alpha` (outside it). Loops come sorted by
/// their smallest marked point.
pub fn pair_loops(alpha: &AffineMatching, beta: &AffineMatching) -> Vec<PairLoop> {
    assert_eq!(alpha.n(), beta.n(), "matchings of different sizes");
    let m = alpha.points();
    if m == 0 {
        return Vec::new();
    }
    let mut seen = alloc::vec![false; m as usize];
    let mut loops = Vec::new();
    for start in 1..=m {
        if seen[(start - 1) as usize] {
            continue;
        }
        let mut winding_units = 0i64;
        let mut points = Vec::new();
        let mut p = start;
        loop {
            // Inner band: an arc of beta.
            let arc = beta.arc_at(p);
            winding_units += if arc.from == p {
                arc.displacement(m)
            } else {
                -arc.displacement(m)
            };
            seen[(p - 1) as usize] = true;
            points.push(p);
            p = arc.other_end(p);
            seen[(p - 1) as usize] = true;
            points.push(p);
            // Outer band: an arc of the mirror of alpha; radial inversion
            // preserves angular displacements.
            let arc = alpha.arc_at(p);
            winding_units += if arc.from == p {
                arc.displacement(m)
            } else {
                -arc.displacement(m)
            };
            p = arc.other_end(p);
            if p == start {
                break;
            }
        }
        debug_assert_eq!(winding_units.rem_euclid(i64::from(m)), 0);
        points.sort_unstable();
        loops.push(PairLoop {
            min_point: start,
            winding: winding_units / i64::from(m),
            points,
        });
    }
    loops
}

/// Loop counts `(n0, n1)` of `dual(alpha) . beta`.
pub fn pair_loop_counts(alpha: &AffineMatching, beta: &AffineMatching) -> (u32, u32) {
    let mut n0 = 0;
    let mut n1 = 0;
    for l in pair_loops(alpha, beta) {
        match l.class() {
            LoopClass::Trivial => n0 += 1,
            LoopClass::Essential => n1 += 1,
        }
    }
    (n0, n1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::SignSequence;

    fn m(s: &str) -> AffineMatching {
        AffineMatching::from_signs(&SignSequence::parse(s).unwrap()).unwrap()
    }

    fn eval(text: &str) -> EvaluationResult {
        evaluate_word(&TangleWord::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn single_cup_is_plain_arc() {
        let res = eval("g(2,1)");
        assert_eq!(res.matching, m("+-"));
        assert_eq!((res.n0, res.n1, res.shift), (0, 0, 0));
    }

    #[test]
    fn rotation_swaps_the_two_matchings() {
        assert_eq!(eval("g(2,1); r(2)").matching, m("-+"));
        assert_eq!(eval("g(2,1); r(2); r(2)").matching, m("+-"));
        assert_eq!(eval("g(2,1); r(2); r'(2)").matching, m("+-"));
    }

    #[test]
    fn cap_closes_trivial_loop() {
        let res = eval("g(2,1); f(2,1)");
        assert!(res.matching.is_empty());
        assert_eq!((res.n0, res.n1), (1, 0));
    }

    #[test]
    fn rotated_cap_closes_essential_loop() {
        let res = eval("g(2,1); r(2); f(2,1)");
        assert_eq!((res.n0, res.n1), (0, 1));
    }

    #[test]
    fn twists_accumulate_shift() {
        let res = eval("g(2,1); w+(2,1); w+(2,2); w-(2,1); f(2,1)");
        assert_eq!(res.shift, 1);
        assert_eq!(res.n0, 1);
    }

    #[test]
    fn beta_words_for_four_points() {
        assert_eq!(eval("g(2,1); g(4,1)").matching, m("+-+-"));
        assert_eq!(eval("g(2,1); r(2); g(4,1)").matching, m("+--+"));
        assert_eq!(eval("g(2,1); r(2); g(4,3)").matching, m("-++-"));
    }

    #[test]
    fn pair_loops_of_equal_matchings_are_trivial() {
        for n in 0..=3 {
            for alpha in AffineMatching::enumerate(n) {
                let loops = pair_loops(&alpha, &alpha);
                assert_eq!(loops.len() as u32, n);
                assert!(loops.iter().all(|l| l.class() == LoopClass::Trivial));
            }
        }
    }

    #[test]
    fn pair_loops_cross_matching() {
        // One plain and one seam-wrapping arc close to an essential loop.
        assert_eq!(pair_loop_counts(&m("+-"), &m("-+")), (0, 1));
        let beta1 = m("+-+-");
        let beta2 = m("+--+");
        let beta3 = m("-++-");
        assert_eq!(pair_loop_counts(&beta1, &beta1), (2, 0));
        assert_eq!(pair_loop_counts(&beta1, &beta2), (1, 1));
        assert_eq!(pair_loop_counts(&beta3, &beta2), (0, 2));
    }

    #[test]
    fn full_rotation_is_identity_on_matchings() {
        for n in 1..=3u32 {
            for alpha in AffineMatching::enumerate(n) {
                let mut state = alpha.clone();
                for _ in 0..2 * n {
                    state = act_generator(
                        &state,
                        GeneratorToken::Rot { strands: 2 * n, dir: RotDir::Ccw },
                    )
                    .unwrap()
                    .matching;
                }
                assert_eq!(state, alpha, "n = {n}");
            }
        }
    }

    #[test]
    fn crossing_rejected_by_flat_evaluator() {
        let word = TangleWord::parse("g(2,1); t+(2,1)").unwrap();
        assert!(matches!(evaluate_flat(&word), Err(EvalError::Flatness(_))));
    }

    #[test]
    fn odd_arity_rejected() {
        // Odd arities cannot even be reached from arity zero by these
        // generators; a non-zero source is the representative failure.
        let word = TangleWord::identity(3);
        assert!(matches!(evaluate_flat(&word), Err(EvalError::Arity { .. })));
    }
}
