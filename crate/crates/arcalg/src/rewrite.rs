//! The diagram isotopy relations as bidirectional rewrite rules on words,
//! and bounded-search crossing elimination.
//!
//! Relations are stored fully instantiated: a [`RewriteRule`] carries both
//! sides as concrete token sequences with matching signatures. Soundness is
//! semantic and is checked, not assumed: [`check_relation`] completes both
//! sides of an instance with random flat contexts and compares evaluations.

use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use rand_core::{RngCore, SeedableRng};

use crate::evaluate::{evaluate_flat, EvaluationResult};
use crate::token::{GeneratorToken, RotDir, Sign};
use crate::word::TangleWord;

/// Default number of search states for crossing elimination.
pub const DEFAULT_SEARCH_BUDGET: usize = 10_000;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RuleId {
    /// Cup-cap zigzag straightening.
    R0,
    /// Kink removal: a crossing beside a zigzag is a framing twist.
    R1F,
    /// Inverse crossings cancel.
    R2,
    /// The braid relation on adjacent crossings.
    R3,
    CupCup,
    CapCap,
    CupCap,
    CupCross,
    CapCross,
    CrossCross,
    Pitchfork,
    CapPitchfork,
    /// A crossing on a cup's own legs is a twist of the opposite sign.
    CupKink,
    CapKink,
    /// The two rotations are inverse.
    AffRotInv,
    AffCap,
    AffCup,
    AffCross,
    TwistInv,
    TwistCommute,
    TwistCup,
    TwistCap,
    TwistCross,
    TwistRot,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RuleId::R0 => "R0",
            RuleId::R1F => "R1F",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::CupCup => "CupCup",
            RuleId::CapCap => "CapCap",
            RuleId::CupCap => "CupCap",
            RuleId::CupCross => "CupCross",
            RuleId::CapCross => "CapCross",
            RuleId::CrossCross => "CrossCross",
            RuleId::Pitchfork => "Pitchfork",
            RuleId::CapPitchfork => "CapPitchfork",
            RuleId::CupKink => "CupKink",
            RuleId::CapKink => "CapKink",
            RuleId::AffRotInv => "AffRR'",
            RuleId::AffCap => "AffCap",
            RuleId::AffCup => "AffCup",
            RuleId::AffCross => "AffCross",
            RuleId::TwistInv => "TwistInv",
            RuleId::TwistCommute => "TwistCommute",
            RuleId::TwistCup => "TwistCup",
            RuleId::TwistCap => "TwistCap",
            RuleId::TwistCross => "TwistCross",
            RuleId::TwistRot => "TwistRot",
        };
        write!(f, "{name}")
    }
}

/// A fully instantiated relation. Both sides have equal signatures.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RewriteRule {
    pub id: RuleId,
    pub lhs: Vec<GeneratorToken>,
    pub rhs: Vec<GeneratorToken>,
}

impl RewriteRule {
    fn new(id: RuleId, lhs: Vec<GeneratorToken>, rhs: Vec<GeneratorToken>) -> Self {
        RewriteRule { id, lhs, rhs }
    }

    pub fn side(&self, dir: Direction) -> &[GeneratorToken] {
        match dir {
            Direction::Forward => &self.lhs,
            Direction::Backward => &self.rhs,
        }
    }

    /// Source arity of both sides.
    pub fn source_arity(&self) -> u32 {
        self.lhs
            .first()
            .or(self.rhs.first())
            .map(GeneratorToken::source)
            .unwrap_or(0)
    }

    pub fn target_arity(&self) -> u32 {
        self.lhs
            .last()
            .or(self.rhs.last())
            .map(GeneratorToken::target)
            .unwrap_or(self.source_arity())
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, toks: &[GeneratorToken], arity: u32| {
            if toks.is_empty() {
                write!(f, "id({arity})")
            } else {
                for (k, t) in toks.iter().enumerate() {
                    if k > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        };
        write!(f, "{}[", self.id)?;
        side(f, &self.lhs, self.source_arity())?;
        write!(f, " ~ ")?;
        side(f, &self.rhs, self.source_arity())?;
        write!(f, "]")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RewriteError {
    /// The rule's side does not occur at the given position.
    NotApplicable,
    /// Bounded search failed to remove all crossings; the word may be
    /// genuinely knotted.
    CrossingsIrreducible,
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::NotApplicable => write!(f, "rewrite not applicable"),
            RewriteError::CrossingsIrreducible => write!(f, "crossings irreducible within budget"),
        }
    }
}

/// Applies `rule` at token position `pos` in the given direction.
pub fn rewrite(
    word: &TangleWord,
    rule: &RewriteRule,
    pos: usize,
    dir: Direction,
) -> Result<TangleWord, RewriteError> {
    let from = rule.side(dir);
    let to = rule.side(dir.flip());
    let toks = word.tokens();
    if pos + from.len() > toks.len() || &toks[pos..pos + from.len()] != from {
        return Err(RewriteError::NotApplicable);
    }
    if word.arity_at(pos) != rule.source_arity() {
        return Err(RewriteError::NotApplicable);
    }
    let mut out = Vec::with_capacity(toks.len() - from.len() + to.len());
    out.extend_from_slice(&toks[..pos]);
    out.extend_from_slice(to);
    out.extend_from_slice(&toks[pos + from.len()..]);
    let result = TangleWord::new(word.source(), out).map_err(|_| RewriteError::NotApplicable)?;
    debug_assert_eq!(result.signature(), word.signature());
    Ok(result)
}

/// Every applicable `(rule, position, direction)` triple, including
/// reverse-direction expansions that insert a cancelling pair at a gap.
pub fn applicable_rewrites(word: &TangleWord) -> Vec<(RewriteRule, usize, Direction)> {
    let mut out = Vec::new();
    for pos in 0..=word.len() {
        for (rule, dir) in matches_at(word, pos) {
            out.push((rule.clone(), pos, dir));
        }
        for rule in insertions_at(word.arity_at(pos)) {
            out.push((rule, pos, Direction::Backward));
        }
    }
    out
}

fn cup(n: u32, i: u32) -> GeneratorToken {
    GeneratorToken::Cup { strands: n, index: i }
}
fn cap(n: u32, i: u32) -> GeneratorToken {
    GeneratorToken::Cap { strands: n, index: i }
}
fn cross(n: u32, i: u32, sign: Sign) -> GeneratorToken {
    GeneratorToken::Cross { strands: n, index: i, sign }
}
fn twist(n: u32, i: u32, sign: Sign) -> GeneratorToken {
    GeneratorToken::Twist { strands: n, index: i, sign }
}
fn rot(n: u32) -> GeneratorToken {
    GeneratorToken::Rot { strands: n, dir: RotDir::Ccw }
}
fn rot_inv(n: u32) -> GeneratorToken {
    GeneratorToken::Rot { strands: n, dir: RotDir::Cw }
}

/// Rules whose one side is empty, instantiated at ambient arity `m`; applying
/// one backward inserts a cancelling pair.
fn insertions_at(m: u32) -> Vec<RewriteRule> {
    let mut out = Vec::new();
    let n = m + 2;
    for i in 1..=n.saturating_sub(2) {
        out.push(RewriteRule::new(RuleId::R0, alloc::vec![cup(n, i + 1), cap(n, i)], Vec::new()));
        out.push(RewriteRule::new(RuleId::R0, alloc::vec![cup(n, i), cap(n, i + 1)], Vec::new()));
    }
    for i in 1..m.max(1) {
        for s in [Sign::Pos, Sign::Neg] {
            out.push(RewriteRule::new(
                RuleId::R2,
                alloc::vec![cross(m, i, s), cross(m, i, s.flip())],
                Vec::new(),
            ));
        }
    }
    for i in 1..=m {
        for s in [Sign::Pos, Sign::Neg] {
            out.push(RewriteRule::new(
                RuleId::TwistInv,
                alloc::vec![twist(m, i, s), twist(m, i, s.flip())],
                Vec::new(),
            ));
        }
    }
    out.push(RewriteRule::new(RuleId::AffRotInv, alloc::vec![rot(m), rot_inv(m)], Vec::new()));
    out.push(RewriteRule::new(RuleId::AffRotInv, alloc::vec![rot_inv(m), rot(m)], Vec::new()));
    out
}

/// Matches every non-insertion rule whose present side starts at `pos`.
fn matches_at(word: &TangleWord, pos: usize) -> Vec<(RewriteRule, Direction)> {
    use Direction::{Backward, Forward};
    use GeneratorToken::*;

    let toks = &word.tokens()[pos..];
    let mut out: Vec<(RewriteRule, Direction)> = Vec::new();
    let mut push = |rule: RewriteRule, dir: Direction| out.push((rule, dir));

    // Window of length 1: backward sides of contraction rules.
    if let Some(&t0) = toks.first() {
        match t0 {
            Twist { strands: m, index: t, sign } if m >= 2 => {
                // R1F backward: expand a twist into a kinked zigzag.
                let n = m + 2;
                if t <= m {
                    push(
                        RewriteRule::new(
                            RuleId::R1F,
                            alloc::vec![cup(n, t), cross(n, t + 1, sign), cap(n, t)],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                    push(
                        RewriteRule::new(
                            RuleId::R1F,
                            alloc::vec![cup(n, t + 1), cross(n, t, sign), cap(n, t + 1)],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                }
            }
            Cap { strands: n, index } => {
                if index >= 2 {
                    push(
                        RewriteRule::new(
                            RuleId::AffCap,
                            alloc::vec![rot_inv(n), cap(n, index - 1), rot(n - 2)],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                }
                if index == 1 && n >= 3 {
                    push(
                        RewriteRule::new(
                            RuleId::AffCap,
                            alloc::vec![rot_inv(n), rot_inv(n), cap(n, n - 1)],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                }
            }
            Cup { strands: n, index } => {
                if index >= 2 {
                    push(
                        RewriteRule::new(
                            RuleId::AffCup,
                            alloc::vec![rot_inv(n - 2), cup(n, index - 1), rot(n)],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                }
                if index == 1 && n >= 3 {
                    push(
                        RewriteRule::new(
                            RuleId::AffCup,
                            alloc::vec![cup(n, n - 1), rot(n), rot(n)],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                }
            }
            Cross { strands: n, index, sign } => {
                if index >= 2 {
                    push(
                        RewriteRule::new(
                            RuleId::AffCross,
                            alloc::vec![rot_inv(n), cross(n, index - 1, sign), rot(n)],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                }
                if index == 1 && n >= 3 {
                    push(
                        RewriteRule::new(
                            RuleId::AffCross,
                            alloc::vec![
                                rot_inv(n),
                                rot_inv(n),
                                cross(n, n - 1, sign),
                                rot(n),
                                rot(n)
                            ],
                            alloc::vec![t0],
                        ),
                        Backward,
                    );
                }
            }
            _ => {}
        }
    }

    // Windows of length 2.
    if toks.len() >= 2 {
        let (t0, t1) = (toks[0], toks[1]);
        match (t0, t1) {
            // R0 forward and the cup-cap slide between distant indices.
            (Cup { strands: n, index: u }, Cap { strands: n2, index: a }) if n == n2 => {
                if u == a + 1 || a == u + 1 {
                    push(
                        RewriteRule::new(RuleId::R0, alloc::vec![t0, t1], Vec::new()),
                        Forward,
                    );
                } else if u >= a + 2 {
                    push(
                        RewriteRule::new(
                            RuleId::CupCap,
                            alloc::vec![cap(n - 2, a), cup(n - 2, u - 2)],
                            alloc::vec![t0, t1],
                        ),
                        Backward,
                    );
                } else if a >= u + 2 {
                    push(
                        RewriteRule::new(
                            RuleId::CupCap,
                            alloc::vec![cap(n - 2, a - 2), cup(n - 2, u)],
                            alloc::vec![t0, t1],
                        ),
                        Backward,
                    );
                }
            }
            (Cap { strands: n, index: a }, Cup { strands: n2, index: u }) if n2 == n => {
                if u >= a {
                    push(
                        RewriteRule::new(
                            RuleId::CupCap,
                            alloc::vec![t0, t1],
                            alloc::vec![cup(n + 2, u + 2), cap(n + 2, a)],
                        ),
                        Forward,
                    );
                }
                if u + 2 <= a {
                    push(
                        RewriteRule::new(
                            RuleId::CupCap,
                            alloc::vec![t0, t1],
                            alloc::vec![cup(n + 2, u), cap(n + 2, a + 2)],
                        ),
                        Forward,
                    );
                }
            }
            // R2 forward.
            (Cross { index: i, sign: s, .. }, Cross { index: j, sign: t, .. })
                if i == j && t == s.flip() =>
            {
                push(RewriteRule::new(RuleId::R2, alloc::vec![t0, t1], Vec::new()), Forward);
            }
            _ => {}
        }
        // Distant crossings commute (listed once, as forward).
        if let (Cross { strands: n, index: i, sign: si }, Cross { index: j, sign: sj, .. }) = (t0, t1) {
            if i + 2 <= j || j + 2 <= i {
                push(
                    RewriteRule::new(
                        RuleId::CrossCross,
                        alloc::vec![t0, t1],
                        alloc::vec![cross(n, j, sj), cross(n, i, si)],
                    ),
                    Forward,
                );
            }
        }
        // Cup-cup slides.
        if let (Cup { strands: n, index: a }, Cup { strands: n2, index: b }) = (t0, t1) {
            debug_assert_eq!(n2, n + 2);
            if b >= a + 2 {
                push(
                    RewriteRule::new(
                        RuleId::CupCup,
                        alloc::vec![t0, t1],
                        alloc::vec![cup(n, b - 2), cup(n + 2, a)],
                    ),
                    Forward,
                );
            }
            if b <= a {
                push(
                    RewriteRule::new(
                        RuleId::CupCup,
                        alloc::vec![cup(n, b), cup(n + 2, a + 2)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            }
        }
        // Cap-cap slides.
        if let (Cap { strands: n, index: a }, Cap { strands: _, index: b }) = (t0, t1) {
            if b >= a {
                push(
                    RewriteRule::new(
                        RuleId::CapCap,
                        alloc::vec![t0, t1],
                        alloc::vec![cap(n, b + 2), cap(n - 2, a)],
                    ),
                    Forward,
                );
            }
            if a >= b + 2 {
                push(
                    RewriteRule::new(
                        RuleId::CapCap,
                        alloc::vec![cap(n, b), cap(n - 2, a - 2)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            }
        }
        // Crossing below a cup: slides, pitchfork, and the leg kink.
        if let (Cross { strands: _, index: c, sign: s }, Cup { strands: n, index: u }) = (t0, t1) {
            if c >= u {
                push(
                    RewriteRule::new(
                        RuleId::CupCross,
                        alloc::vec![t0, t1],
                        alloc::vec![cup(n, u), cross(n, c + 2, s)],
                    ),
                    Forward,
                );
            } else if c + 2 <= u {
                push(
                    RewriteRule::new(
                        RuleId::CupCross,
                        alloc::vec![t0, t1],
                        alloc::vec![cup(n, u), cross(n, c, s)],
                    ),
                    Forward,
                );
            }
        }
        if let (Cup { strands: n, index: u }, Cross { strands: _, index: e, sign: s }) = (t0, t1) {
            if e >= u + 2 {
                push(
                    RewriteRule::new(
                        RuleId::CupCross,
                        alloc::vec![cross(n - 2, e - 2, s), cup(n, u)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            } else if e + 2 <= u {
                push(
                    RewriteRule::new(
                        RuleId::CupCross,
                        alloc::vec![cross(n - 2, e, s), cup(n, u)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            } else if e + 1 == u {
                // Pitchfork: the strand slides across the cup, flipping the
                // crossing sign.
                push(
                    RewriteRule::new(
                        RuleId::Pitchfork,
                        alloc::vec![t0, t1],
                        alloc::vec![cup(n, u - 1), cross(n, u, s.flip())],
                    ),
                    Forward,
                );
            } else if e == u + 1 {
                push(
                    RewriteRule::new(
                        RuleId::Pitchfork,
                        alloc::vec![cup(n, u + 1), cross(n, u, s.flip())],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            } else if e == u {
                // Crossing the two legs of the fresh cup: a framing kink of
                // the opposite sign.
                push(
                    RewriteRule::new(
                        RuleId::CupKink,
                        alloc::vec![t0, t1],
                        alloc::vec![cup(n, u), twist(n, u, s.flip())],
                    ),
                    Forward,
                );
            }
        }
        if let (Cup { strands: n, index: u }, Twist { strands: _, index: t, sign: s }) = (t0, t1) {
            if t == u + 1 {
                push(
                    RewriteRule::new(
                        RuleId::CupKink,
                        alloc::vec![cup(n, u), cross(n, u, s.flip())],
                        alloc::vec![cup(n, u), twist(n, u + 1, s)],
                    ),
                    Backward,
                );
            }
            if t == u {
                push(
                    RewriteRule::new(
                        RuleId::CupKink,
                        alloc::vec![cup(n, u), cross(n, u, s.flip())],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
                push(
                    RewriteRule::new(
                        RuleId::TwistCup,
                        alloc::vec![t0, t1],
                        alloc::vec![cup(n, u), twist(n, u + 1, s)],
                    ),
                    Forward,
                );
            }
            // Twist away from the cup commutes below it.
            if t + 1 < u || t > u + 1 {
                let below = if t > u + 1 { t - 2 } else { t };
                push(
                    RewriteRule::new(
                        RuleId::TwistCup,
                        alloc::vec![twist(n - 2, below, s), cup(n, u)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            }
        }
        if let (Twist { strands: _, index: t, sign: s }, Cup { strands: n, index: u }) = (t0, t1) {
            let above = if t >= u { t + 2 } else { t };
            push(
                RewriteRule::new(
                    RuleId::TwistCup,
                    alloc::vec![t0, t1],
                    alloc::vec![cup(n, u), twist(n, above, s)],
                ),
                Forward,
            );
        }
        // Crossing above a cap: slides, cap pitchfork, and the leg kink.
        if let (Cross { strands: n, index: c, sign: s }, Cap { strands: _, index: a }) = (t0, t1) {
            if c >= a + 2 {
                push(
                    RewriteRule::new(
                        RuleId::CapCross,
                        alloc::vec![t0, t1],
                        alloc::vec![cap(n, a), cross(n - 2, c - 2, s)],
                    ),
                    Forward,
                );
            } else if c + 2 <= a {
                push(
                    RewriteRule::new(
                        RuleId::CapCross,
                        alloc::vec![t0, t1],
                        alloc::vec![cap(n, a), cross(n - 2, c, s)],
                    ),
                    Forward,
                );
            } else if a == c + 1 {
                push(
                    RewriteRule::new(
                        RuleId::CapPitchfork,
                        alloc::vec![t0, t1],
                        alloc::vec![cross(n, c + 1, s.flip()), cap(n, c)],
                    ),
                    Forward,
                );
            } else if c == a + 1 {
                push(
                    RewriteRule::new(
                        RuleId::CapPitchfork,
                        alloc::vec![cross(n, a, s.flip()), cap(n, a + 1)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            } else if c == a {
                push(
                    RewriteRule::new(
                        RuleId::CapKink,
                        alloc::vec![t0, t1],
                        alloc::vec![twist(n, a, s.flip()), cap(n, a)],
                    ),
                    Forward,
                );
            }
        }
        if let (Cap { strands: n, index: a }, Cross { strands: _, index: e, sign: s }) = (t0, t1) {
            if e >= a {
                push(
                    RewriteRule::new(
                        RuleId::CapCross,
                        alloc::vec![cross(n, e + 2, s), cap(n, a)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            }
            if e + 2 <= a {
                push(
                    RewriteRule::new(
                        RuleId::CapCross,
                        alloc::vec![cross(n, e, s), cap(n, a)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            }
        }
        if let (Twist { strands: n, index: t, sign: s }, Cap { strands: _, index: a }) = (t0, t1) {
            if t == a {
                push(
                    RewriteRule::new(
                        RuleId::CapKink,
                        alloc::vec![cross(n, a, s.flip()), cap(n, a)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
                push(
                    RewriteRule::new(
                        RuleId::TwistCap,
                        alloc::vec![t0, t1],
                        alloc::vec![twist(n, a + 1, s), cap(n, a)],
                    ),
                    Forward,
                );
            }
            if t == a + 1 {
                push(
                    RewriteRule::new(
                        RuleId::CapKink,
                        alloc::vec![cross(n, a, s.flip()), cap(n, a)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            }
            // Twist away from the cap commutes above it.
            if t + 1 < a || t > a + 1 {
                let below_cap = if t > a + 1 { t - 2 } else { t };
                push(
                    RewriteRule::new(
                        RuleId::TwistCap,
                        alloc::vec![t0, t1],
                        alloc::vec![cap(n, a), twist(n - 2, below_cap, s)],
                    ),
                    Forward,
                );
            }
        }
        if let (Cap { strands: n, index: a }, Twist { strands: _, index: t, sign: s }) = (t0, t1) {
            let above = if t >= a { t + 2 } else { t };
            push(
                RewriteRule::new(
                    RuleId::TwistCap,
                    alloc::vec![twist(n, above, s), cap(n, a)],
                    alloc::vec![t0, t1],
                ),
                Backward,
            );
        }
        // Twists commute with each other.
        if let (Twist { strands: n, index: i, sign: si }, Twist { index: j, sign: sj, .. }) = (t0, t1) {
            if i == j && sj == si.flip() {
                push(RewriteRule::new(RuleId::TwistInv, alloc::vec![t0, t1], Vec::new()), Forward);
            }
            if i != j {
                push(
                    RewriteRule::new(
                        RuleId::TwistCommute,
                        alloc::vec![t0, t1],
                        alloc::vec![twist(n, j, sj), twist(n, i, si)],
                    ),
                    Forward,
                );
            }
        }
        // Twists ride strands through crossings.
        if let (Cross { strands: n, index: j, sign: cs }, Twist { index: t, sign: ts, .. }) = (t0, t1) {
            if t == j {
                push(
                    RewriteRule::new(
                        RuleId::TwistCross,
                        alloc::vec![twist(n, j + 1, ts), cross(n, j, cs)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            } else if t == j + 1 {
                push(
                    RewriteRule::new(
                        RuleId::TwistCross,
                        alloc::vec![twist(n, j, ts), cross(n, j, cs)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            } else {
                push(
                    RewriteRule::new(
                        RuleId::TwistCross,
                        alloc::vec![twist(n, t, ts), cross(n, j, cs)],
                        alloc::vec![t0, t1],
                    ),
                    Backward,
                );
            }
        }
        if let (Twist { strands: n, index: t, sign: ts }, Cross { index: j, sign: cs, .. }) = (t0, t1) {
            let after = if t == j {
                j + 1
            } else if t == j + 1 {
                j
            } else {
                t
            };
            push(
                RewriteRule::new(
                    RuleId::TwistCross,
                    alloc::vec![t0, t1],
                    alloc::vec![cross(n, j, cs), twist(n, after, ts)],
                ),
                Forward,
            );
        }
        // Twists slide past rotations, shifting their strand.
        if let (Rot { strands: n, dir }, Twist { index: t, sign: ts, .. }) = (t0, t1) {
            let before = match dir {
                RotDir::Ccw => (t + n - 2) % n + 1,
                RotDir::Cw => t % n + 1,
            };
            push(
                RewriteRule::new(
                    RuleId::TwistRot,
                    alloc::vec![twist(n, before, ts), GeneratorToken::Rot { strands: n, dir }],
                    alloc::vec![t0, t1],
                ),
                Backward,
            );
        }
        if let (Twist { strands: n, index: t, sign: ts }, Rot { dir, .. }) = (t0, t1) {
            let after = match dir {
                RotDir::Ccw => t % n + 1,
                RotDir::Cw => (t + n - 2) % n + 1,
            };
            push(
                RewriteRule::new(
                    RuleId::TwistRot,
                    alloc::vec![t0, t1],
                    alloc::vec![GeneratorToken::Rot { strands: n, dir }, twist(n, after, ts)],
                ),
                Forward,
            );
        }
        // Forward sides of the rotation-inverse rule.
        if let (Rot { dir: d0, .. }, Rot { dir: d1, .. }) = (t0, t1) {
            if d1 == d0.flip() {
                push(
                    RewriteRule::new(RuleId::AffRotInv, alloc::vec![t0, t1], Vec::new()),
                    Forward,
                );
            }
        }
    }

    // Windows of length 3.
    if toks.len() >= 3 {
        let (t0, t1, t2) = (toks[0], toks[1], toks[2]);
        use GeneratorToken::{Cap as CapT, Cross as CrossT, Cup as CupT, Rot as RotT};
        // R1F forward: kinked zigzag contracts to a twist.
        if let (
            CupT { strands: n, index: u },
            CrossT { index: c, sign: s, .. },
            CapT { index: a, .. },
        ) = (t0, t1, t2)
        {
            if a == u && n >= 4 {
                if c == u + 1 {
                    push(
                        RewriteRule::new(
                            RuleId::R1F,
                            alloc::vec![t0, t1, t2],
                            alloc::vec![twist(n - 2, u, s)],
                        ),
                        Forward,
                    );
                } else if c + 1 == u {
                    push(
                        RewriteRule::new(
                            RuleId::R1F,
                            alloc::vec![t0, t1, t2],
                            alloc::vec![twist(n - 2, u - 1, s)],
                        ),
                        Forward,
                    );
                }
            }
        }
        // R3, both signs.
        if let (
            CrossT { strands: n, index: i, sign: s0 },
            CrossT { index: j, sign: s1, .. },
            CrossT { index: k, sign: s2, .. },
        ) = (t0, t1, t2)
        {
            if s0 == s1 && s1 == s2 {
                if j == i + 1 && k == i {
                    push(
                        RewriteRule::new(
                            RuleId::R3,
                            alloc::vec![t0, t1, t2],
                            alloc::vec![cross(n, i + 1, s0), cross(n, i, s0), cross(n, i + 1, s0)],
                        ),
                        Forward,
                    );
                }
                if i >= 1 && j + 1 == i && k == i {
                    push(
                        RewriteRule::new(
                            RuleId::R3,
                            alloc::vec![cross(n, j, s0), cross(n, i, s0), cross(n, j, s0)],
                            alloc::vec![t0, t1, t2],
                        ),
                        Backward,
                    );
                }
            }
        }
        // Rotation conjugation shifts indices by one.
        if let (RotT { strands: n0, dir: RotDir::Cw }, CapT { strands: n, index: i }, RotT { dir: RotDir::Ccw, .. }) =
            (t0, t1, t2)
        {
            if n0 == n && i + 1 <= n - 1 {
                push(
                    RewriteRule::new(
                        RuleId::AffCap,
                        alloc::vec![t0, t1, t2],
                        alloc::vec![cap(n, i + 1)],
                    ),
                    Forward,
                );
            }
        }
        if let (RotT { dir: RotDir::Cw, .. }, CupT { strands: n, index: i }, RotT { strands: n2, dir: RotDir::Ccw }) =
            (t0, t1, t2)
        {
            if n2 == n && i + 1 <= n - 1 {
                push(
                    RewriteRule::new(
                        RuleId::AffCup,
                        alloc::vec![t0, t1, t2],
                        alloc::vec![cup(n, i + 1)],
                    ),
                    Forward,
                );
            }
        }
        if let (RotT { strands: n0, dir: RotDir::Cw }, CrossT { strands: n, index: i, sign }, RotT { dir: RotDir::Ccw, .. }) =
            (t0, t1, t2)
        {
            if n0 == n && i + 1 <= n - 1 {
                push(
                    RewriteRule::new(
                        RuleId::AffCross,
                        alloc::vec![t0, t1, t2],
                        alloc::vec![cross(n, i + 1, sign)],
                    ),
                    Forward,
                );
            }
        }
        // Wrap-around forms r;r;f(n,n-1) ~ f(n,1) and g(n,n-1);r';r' ~ g(n,1).
        if let (RotT { dir: RotDir::Cw, .. }, RotT { dir: RotDir::Cw, .. }, CapT { strands: n, index }) =
            (t0, t1, t2)
        {
            if index == n - 1 && n >= 2 {
                push(
                    RewriteRule::new(
                        RuleId::AffCap,
                        alloc::vec![t0, t1, t2],
                        alloc::vec![cap(n, 1)],
                    ),
                    Forward,
                );
            }
        }
        if let (CupT { strands: n, index }, RotT { dir: RotDir::Ccw, .. }, RotT { dir: RotDir::Ccw, .. }) =
            (t0, t1, t2)
        {
            if index == n - 1 && n >= 2 {
                push(
                    RewriteRule::new(
                        RuleId::AffCup,
                        alloc::vec![t0, t1, t2],
                        alloc::vec![cup(n, 1)],
                    ),
                    Forward,
                );
            }
        }
    }

    // Window of length 5: wrapped crossing conjugation.
    if toks.len() >= 5 {
        use GeneratorToken::{Cross as CrossT, Rot as RotT};
        if let (
            RotT { dir: RotDir::Cw, .. },
            RotT { dir: RotDir::Cw, .. },
            CrossT { strands: n, index, sign },
            RotT { dir: RotDir::Ccw, .. },
            RotT { dir: RotDir::Ccw, .. },
        ) = (toks[0], toks[1], toks[2], toks[3], toks[4])
        {
            if index == n - 1 && n >= 2 {
                push(
                    RewriteRule::new(
                        RuleId::AffCross,
                        alloc::vec![toks[0], toks[1], toks[2], toks[3], toks[4]],
                        alloc::vec![cross(n, 1, sign)],
                    ),
                    Forward,
                );
            }
        }
    }

    out
}

/// Searches for a relation-equivalent word without crossing tokens.
///
/// Best-first search ordered by crossing count then length; expansion uses
/// every matched rewrite except gap insertions. No confluence is claimed;
/// exhaustion of `budget` states reports failure.
pub fn eliminate_crossings(
    word: &TangleWord,
    budget: usize,
) -> Result<TangleWord, RewriteError> {
    if !word.has_crossings() {
        return Ok(word.clone());
    }
    let cost = |w: &TangleWord| -> (usize, usize) {
        let crossings = w.tokens().iter().filter(|t| t.is_crossing()).count();
        (crossings, w.len())
    };

    let mut visited: BTreeSet<Vec<GeneratorToken>> = BTreeSet::new();
    let mut heap: BinaryHeap<(Reverse<(usize, usize)>, u64, TangleWord)> = BinaryHeap::new();
    let mut counter = 0u64;
    visited.insert(word.tokens().to_vec());
    heap.push((Reverse(cost(word)), counter, word.clone()));

    while let Some((_, _, current)) = heap.pop() {
        if !current.has_crossings() {
            return Ok(current);
        }
        if visited.len() >= budget {
            return Err(RewriteError::CrossingsIrreducible);
        }
        for pos in 0..current.len() {
            for (rule, dir) in matches_at(&current, pos) {
                let Ok(next) = rewrite(&current, &rule, pos, dir) else {
                    continue;
                };
                if visited.insert(next.tokens().to_vec()) {
                    counter += 1;
                    heap.push((Reverse(cost(&next)), counter, next));
                }
            }
        }
    }
    Err(RewriteError::CrossingsIrreducible)
}

/// Semantic soundness check of one relation instance: both sides are
/// completed by the same pseudo-random flat contexts and must evaluate to
/// identical results (matching, loop counts and shift). Words with crossings
/// are flattened first.
pub fn check_relation(rule: &RewriteRule, samples: u32, seed: u64) -> bool {
    let src = rule.source_arity();
    let tgt = rule.target_arity();
    if src % 2 != 0 || tgt % 2 != 0 {
        return false;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let lhs = TangleWord::new(src, rule.lhs.clone()).expect("rule side is well formed");
    let rhs = TangleWord::new(src, rule.rhs.clone()).expect("rule side is well formed");
    let crossing_rule = lhs.has_crossings() || rhs.has_crossings();
    let mut conclusive = 0u32;
    let mut attempts = 0u32;
    while conclusive < samples && attempts < samples * 8 {
        attempts += 1;
        let prefix = random_flat_word(&mut rng, 0, src, 3);
        // Crossing-free sides may be left open at the top, in which case the
        // boundary matchings are compared as well. Sides with crossings are
        // always closed off, since open braids have no flat representative.
        let suffix = if crossing_rule || attempts % 2 == 0 {
            Some(random_flat_word(&mut rng, tgt, 0, 3))
        } else {
            None
        };
        let complete = |side: &TangleWord| -> Option<EvaluationResult> {
            let mut w = prefix.compose(side).expect("context chains");
            if let Some(sfx) = &suffix {
                w = w.compose(sfx).expect("context chains");
            }
            let flat = if w.has_crossings() {
                eliminate_crossings(&w, DEFAULT_SEARCH_BUDGET).ok()?
            } else {
                w
            };
            evaluate_flat(&flat).ok()
        };
        match (complete(&lhs), complete(&rhs)) {
            (Some(a), Some(b)) => {
                if a != b {
                    return false;
                }
                conclusive += 1;
            }
            // A closure may knot both sides beyond the search budget; such a
            // sample decides nothing either way.
            (None, None) => {}
            _ => return false,
        }
    }
    conclusive >= samples.min(3)
}

/// A pseudo-random crossing-free word from arity `from` to arity `to`
/// (both even), with roughly `wander` extra generator pairs.
pub fn random_flat_word<R: RngCore>(rng: &mut R, from: u32, to: u32, wander: u32) -> TangleWord {
    assert_eq!(from % 2, 0);
    assert_eq!(to % 2, 0);
    let mut tokens: Vec<GeneratorToken> = Vec::new();
    let mut arity = from;
    let mut wobble = wander;
    loop {
        let choice = rng.next_u32() % 8;
        match choice {
            0 | 1 if wobble > 0 => {
                let n = arity + 2;
                tokens.push(cup(n, 1 + rng.next_u32() % (n - 1)));
                arity = n;
                wobble -= 1;
            }
            2 if wobble > 0 && arity > to && arity >= 2 => {
                tokens.push(cap(arity, 1 + rng.next_u32() % (arity - 1)));
                arity -= 2;
                wobble -= 1;
            }
            3 if arity >= 1 => {
                tokens.push(rot(arity));
            }
            4 if arity >= 1 => {
                tokens.push(rot_inv(arity));
            }
            _ => {
                // Drift toward the target arity.
                if arity < to {
                    let n = arity + 2;
                    tokens.push(cup(n, 1 + rng.next_u32() % (n - 1)));
                    arity = n;
                } else if arity > to {
                    tokens.push(cap(arity, 1 + rng.next_u32() % (arity - 1)));
                    arity -= 2;
                } else if wobble == 0 {
                    break;
                } else {
                    wobble -= 1;
                }
            }
        }
        if arity == to && wobble == 0 {
            break;
        }
    }
    TangleWord::new(from, tokens).expect("random word is well formed")
}

/// Every relation instance with all strand counts even and at most `max_n`,
/// for the semantic soundness sweep.
pub fn relation_instances(max_n: u32) -> Vec<RewriteRule> {
    let mut out: Vec<RewriteRule> = Vec::new();
    let evens = |lo: u32| (lo..=max_n).filter(|n| n % 2 == 0).collect::<Vec<_>>();

    for n in evens(2) {
        // R0, both variants.
        for i in 1..=n.saturating_sub(2) {
            out.push(RewriteRule::new(RuleId::R0, alloc::vec![cup(n, i + 1), cap(n, i)], Vec::new()));
            out.push(RewriteRule::new(RuleId::R0, alloc::vec![cup(n, i), cap(n, i + 1)], Vec::new()));
        }
        // R1F.
        if n >= 4 {
            for i in 1..=n - 2 {
                for s in [Sign::Pos, Sign::Neg] {
                    out.push(RewriteRule::new(
                        RuleId::R1F,
                        alloc::vec![cup(n, i), cross(n, i + 1, s), cap(n, i)],
                        alloc::vec![twist(n - 2, i, s)],
                    ));
                    out.push(RewriteRule::new(
                        RuleId::R1F,
                        alloc::vec![cup(n, i + 1), cross(n, i, s), cap(n, i + 1)],
                        alloc::vec![twist(n - 2, i, s)],
                    ));
                }
            }
        }
        // R2 and the leg kinks.
        for i in 1..n {
            for s in [Sign::Pos, Sign::Neg] {
                out.push(RewriteRule::new(
                    RuleId::R2,
                    alloc::vec![cross(n, i, s), cross(n, i, s.flip())],
                    Vec::new(),
                ));
                out.push(RewriteRule::new(
                    RuleId::CupKink,
                    alloc::vec![cup(n, i), cross(n, i, s)],
                    alloc::vec![cup(n, i), twist(n, i, s.flip())],
                ));
                out.push(RewriteRule::new(
                    RuleId::CapKink,
                    alloc::vec![cross(n, i, s), cap(n, i)],
                    alloc::vec![twist(n, i, s.flip()), cap(n, i)],
                ));
            }
        }
        // R3.
        for i in 1..n.saturating_sub(1) {
            for s in [Sign::Pos, Sign::Neg] {
                out.push(RewriteRule::new(
                    RuleId::R3,
                    alloc::vec![cross(n, i, s), cross(n, i + 1, s), cross(n, i, s)],
                    alloc::vec![cross(n, i + 1, s), cross(n, i, s), cross(n, i + 1, s)],
                ));
            }
        }
        // Pitchforks.
        for i in 1..n.saturating_sub(1) {
            for s in [Sign::Pos, Sign::Neg] {
                out.push(RewriteRule::new(
                    RuleId::Pitchfork,
                    alloc::vec![cup(n, i + 1), cross(n, i, s)],
                    alloc::vec![cup(n, i), cross(n, i + 1, s.flip())],
                ));
                out.push(RewriteRule::new(
                    RuleId::CapPitchfork,
                    alloc::vec![cross(n, i, s), cap(n, i + 1)],
                    alloc::vec![cross(n, i + 1, s.flip()), cap(n, i)],
                ));
            }
        }
        // Distant commutation families.
        for i in 1..n {
            for k in 2..n {
                if i + k <= n + 1 {
                    out.push(RewriteRule::new(
                        RuleId::CupCup,
                        alloc::vec![cup(n, i), cup(n + 2, i + k)],
                        alloc::vec![cup(n, i + k - 2), cup(n + 2, i)],
                    ));
                    out.push(RewriteRule::new(
                        RuleId::CapCap,
                        alloc::vec![cap(n + 2, i), cap(n, i + k - 2)],
                        alloc::vec![cap(n + 2, i + k), cap(n, i)],
                    ));
                    out.push(RewriteRule::new(
                        RuleId::CupCap,
                        alloc::vec![cap(n, i), cup(n, i + k - 2)],
                        alloc::vec![cup(n + 2, i + k), cap(n + 2, i)],
                    ));
                    out.push(RewriteRule::new(
                        RuleId::CupCap,
                        alloc::vec![cap(n, i + k - 2), cup(n, i)],
                        alloc::vec![cup(n + 2, i), cap(n + 2, i + k)],
                    ));
                }
                if i + k <= n - 1 {
                    for s in [Sign::Pos, Sign::Neg] {
                        out.push(RewriteRule::new(
                            RuleId::CupCross,
                            alloc::vec![cross(n - 2, i + k - 2, s), cup(n, i)],
                            alloc::vec![cup(n, i), cross(n, i + k, s)],
                        ));
                        out.push(RewriteRule::new(
                            RuleId::CapCross,
                            alloc::vec![cross(n, i + k, s), cap(n, i)],
                            alloc::vec![cap(n, i), cross(n - 2, i + k - 2, s)],
                        ));
                        out.push(RewriteRule::new(
                            RuleId::CrossCross,
                            alloc::vec![cross(n, i, s), cross(n, i + k, s.flip())],
                            alloc::vec![cross(n, i + k, s.flip()), cross(n, i, s)],
                        ));
                    }
                }
            }
        }
        // Rotation inverse and conjugation.
        out.push(RewriteRule::new(RuleId::AffRotInv, alloc::vec![rot(n), rot_inv(n)], Vec::new()));
        out.push(RewriteRule::new(RuleId::AffRotInv, alloc::vec![rot_inv(n), rot(n)], Vec::new()));
        for i in 1..=n.saturating_sub(2) {
            out.push(RewriteRule::new(
                RuleId::AffCap,
                alloc::vec![rot_inv(n), cap(n, i), rot(n - 2)],
                alloc::vec![cap(n, i + 1)],
            ));
            out.push(RewriteRule::new(
                RuleId::AffCup,
                alloc::vec![rot_inv(n - 2), cup(n, i), rot(n)],
                alloc::vec![cup(n, i + 1)],
            ));
            for s in [Sign::Pos, Sign::Neg] {
                out.push(RewriteRule::new(
                    RuleId::AffCross,
                    alloc::vec![rot_inv(n), cross(n, i, s), rot(n)],
                    alloc::vec![cross(n, i + 1, s)],
                ));
            }
        }
        if n >= 2 {
            out.push(RewriteRule::new(
                RuleId::AffCap,
                alloc::vec![rot_inv(n), rot_inv(n), cap(n, n - 1)],
                alloc::vec![cap(n, 1)],
            ));
            out.push(RewriteRule::new(
                RuleId::AffCup,
                alloc::vec![cup(n, n - 1), rot(n), rot(n)],
                alloc::vec![cup(n, 1)],
            ));
            for s in [Sign::Pos, Sign::Neg] {
                out.push(RewriteRule::new(
                    RuleId::AffCross,
                    alloc::vec![rot_inv(n), rot_inv(n), cross(n, n - 1, s), rot(n), rot(n)],
                    alloc::vec![cross(n, 1, s)],
                ));
            }
        }
        // Twist relations.
        for i in 1..=n {
            for s in [Sign::Pos, Sign::Neg] {
                out.push(RewriteRule::new(
                    RuleId::TwistInv,
                    alloc::vec![twist(n, i, s), twist(n, i, s.flip())],
                    Vec::new(),
                ));
                out.push(RewriteRule::new(
                    RuleId::TwistRot,
                    alloc::vec![twist(n, i, s), rot(n)],
                    alloc::vec![rot(n), twist(n, i % n + 1, s)],
                ));
                for j in 1..=n {
                    if i != j {
                        out.push(RewriteRule::new(
                            RuleId::TwistCommute,
                            alloc::vec![twist(n, i, s), twist(n, j, s)],
                            alloc::vec![twist(n, j, s), twist(n, i, s)],
                        ));
                    }
                }
            }
        }
        for u in 1..n {
            for s in [Sign::Pos, Sign::Neg] {
                out.push(RewriteRule::new(
                    RuleId::TwistCup,
                    alloc::vec![cup(n, u), twist(n, u, s)],
                    alloc::vec![cup(n, u), twist(n, u + 1, s)],
                ));
                out.push(RewriteRule::new(
                    RuleId::TwistCap,
                    alloc::vec![twist(n, u, s), cap(n, u)],
                    alloc::vec![twist(n, u + 1, s), cap(n, u)],
                ));
                for t in 1..=n - 2 {
                    let above = if t >= u { t + 2 } else { t };
                    out.push(RewriteRule::new(
                        RuleId::TwistCup,
                        alloc::vec![twist(n - 2, t, s), cup(n, u)],
                        alloc::vec![cup(n, u), twist(n, above, s)],
                    ));
                    out.push(RewriteRule::new(
                        RuleId::TwistCap,
                        alloc::vec![twist(n, above, s), cap(n, u)],
                        alloc::vec![cap(n, u), twist(n - 2, t, s)],
                    ));
                }
                for cs in [Sign::Pos, Sign::Neg] {
                    out.push(RewriteRule::new(
                        RuleId::TwistCross,
                        alloc::vec![twist(n, u, s), cross(n, u, cs)],
                        alloc::vec![cross(n, u, cs), twist(n, u + 1, s)],
                    ));
                    out.push(RewriteRule::new(
                        RuleId::TwistCross,
                        alloc::vec![twist(n, u + 1, s), cross(n, u, cs)],
                        alloc::vec![cross(n, u, cs), twist(n, u, s)],
                    ));
                }
            }
        }
    }
    out.retain(|r| r.source_arity() % 2 == 0 && r.target_arity() % 2 == 0);
    out
}

/// Name for suite output: the rule head plus both sides.
pub fn instance_label(rule: &RewriteRule) -> String {
    alloc::format!("{rule}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluate::evaluate_word;

    fn w(text: &str) -> TangleWord {
        TangleWord::parse(text).unwrap()
    }

    #[test]
    fn zigzag_contains_r0_redex() {
        let word = w("g(4,2); f(4,1)");
        let hits = applicable_rewrites(&word);
        assert!(hits
            .iter()
            .any(|(r, pos, dir)| r.id == RuleId::R0 && *pos == 0 && *dir == Direction::Forward));
        let (r, pos, dir) = hits
            .iter()
            .find(|(r, _, _)| r.id == RuleId::R0)
            .expect("r0 instance");
        assert_eq!(rewrite(&word, r, *pos, *dir).unwrap(), TangleWord::identity(2));
    }

    #[test]
    fn rotation_pair_cancels() {
        let word = w("r(4); r'(4)");
        let hits = applicable_rewrites(&word);
        assert!(hits
            .iter()
            .any(|(r, pos, dir)| r.id == RuleId::AffRotInv && *pos == 0 && *dir == Direction::Forward));
    }

    #[test]
    fn identity_word_offers_only_expansions() {
        let word = TangleWord::identity(4);
        let hits = applicable_rewrites(&word);
        assert!(!hits.is_empty());
        assert!(hits.iter().all(|(_, _, dir)| *dir == Direction::Backward));
    }

    #[test]
    fn crossing_pair_eliminates_to_identity() {
        let word = w("t-(2,1); t+(2,1)");
        let flat = eliminate_crossings(&word, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(flat, TangleWord::identity(2));
    }

    #[test]
    fn disjoint_crossing_slides_under_cup_cap() {
        // The crossing on the far strands commutes below the cup, and the
        // zigzag straightens: two rewrites reach t+(2,1).
        let word = w("g(4,1); t+(4,3); f(4,2)");
        let (rule, pos, dir) = applicable_rewrites(&word)
            .into_iter()
            .find(|(r, _, _)| r.id == RuleId::CupCross)
            .expect("cup-cross slide");
        let step1 = rewrite(&word, &rule, pos, dir).unwrap();
        assert_eq!(step1, w("t+(2,1); g(4,1); f(4,2)"));
        let (rule, pos, dir) = applicable_rewrites(&step1)
            .into_iter()
            .find(|(r, _, dir)| r.id == RuleId::R0 && *dir == Direction::Forward)
            .expect("zigzag");
        let step2 = rewrite(&step1, &rule, pos, dir).unwrap();
        assert_eq!(step2, w("t+(2,1)"));
    }

    #[test]
    fn kinked_circle_flattens_to_twisted_circle() {
        let word = w("g(2,1); t-(2,1); f(2,1)");
        let flat = eliminate_crossings(&word, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(!flat.has_crossings());
        let res = evaluate_word(&word).unwrap();
        assert_eq!((res.n0, res.n1), (1, 0));
        assert_eq!(res.shift, 1);
    }

    #[test]
    fn trefoil_closure_is_irreducible() {
        let word = w("g(2,1); g(4,1); t+(4,2); t+(4,2); t+(4,2); f(4,1); f(2,1)");
        assert!(matches!(
            eliminate_crossings(&word, 2_000),
            Err(RewriteError::CrossingsIrreducible)
        ));
    }

    #[test]
    fn rewrites_preserve_signature_and_semantics() {
        let word = w("g(2,1); r(2); g(4,1); f(4,2)");
        for (rule, pos, dir) in applicable_rewrites(&word) {
            let next = rewrite(&word, &rule, pos, dir).unwrap();
            assert_eq!(next.signature(), word.signature(), "{rule} at {pos}");
            if !next.has_crossings() {
                assert_eq!(
                    evaluate_word(&next).unwrap(),
                    evaluate_word(&word).unwrap(),
                    "{rule} at {pos} ({dir:?})"
                );
            }
        }
    }

    #[test]
    fn affine_cup_conjugation_checks() {
        let rule = RewriteRule::new(
            RuleId::AffCup,
            alloc::vec![rot_inv(2), cup(4, 2), rot(4)],
            alloc::vec![cup(4, 3)],
        );
        assert!(check_relation(&rule, 8, 11));
    }

    #[test]
    fn r0_checks_semantically() {
        let rule = RewriteRule::new(RuleId::R0, alloc::vec![cup(4, 2), cap(4, 1)], Vec::new());
        assert!(check_relation(&rule, 8, 7));
    }

    #[test]
    fn wrong_relation_fails_check() {
        // A cup-cap pinch at the same index creates a loop and is not the
        // identity; the checker must notice.
        let bogus = RewriteRule::new(RuleId::R0, alloc::vec![cup(4, 1), cap(4, 1)], Vec::new());
        assert!(!check_relation(&bogus, 8, 3));
    }

    #[test]
    fn random_flat_words_are_flat_and_typed() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let word = random_flat_word(&mut rng, 0, 4, 3);
            assert_eq!(word.signature(), (0, 4));
            assert!(!word.has_crossings());
        }
    }
}
