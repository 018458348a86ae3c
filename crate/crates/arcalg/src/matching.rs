//! Affine crossingless matchings of `2n` points on a circle around a
//! puncture, and their ± sign-sequence serialization.
//!
//! Conventions. Point `k` of `m = 2n` sits at angle `(k-1)/m` turns,
//! counterclockwise from the positive x-axis. A fixed seam ray sits in the
//! gap between point `m` and point `1`, just below angle zero. Every arc is
//! stored oriented, together with the signed number of times its canonical
//! drawing crosses the seam (counterclockwise crossings count `+1`).
//!
//! The bijection with balanced sign sequences connects each plus to the
//! nearest minus counterclockwise that leaves a balanced stretch between
//! them; the arc is drawn along that counterclockwise path.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// A balanced word over `{+,-}`: as many pluses as minuses.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignSequence(Vec<bool>); // true = '+'

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MatchingError {
    /// The sign sequence has unequal plus and minus counts, or a bad char.
    UnbalancedSequence(String),
}

impl fmt::Display for MatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingError::UnbalancedSequence(s) => write!(f, "unbalanced sign sequence: {s}"),
        }
    }
}

impl SignSequence {
    pub fn parse(text: &str) -> Result<Self, MatchingError> {
        let mut signs = Vec::with_capacity(text.len());
        for c in text.chars() {
            match c {
                '+' => signs.push(true),
                '-' | '\u{2212}' => signs.push(false),
                _ => return Err(MatchingError::UnbalancedSequence(String::from(text))),
            }
        }
        let seq = SignSequence(signs);
        if seq.is_balanced() {
            Ok(seq)
        } else {
            Err(MatchingError::UnbalancedSequence(String::from(text)))
        }
    }

    pub fn from_bools(signs: Vec<bool>) -> Result<Self, MatchingError> {
        let seq = SignSequence(signs);
        if seq.is_balanced() {
            Ok(seq)
        } else {
            Err(MatchingError::UnbalancedSequence(seq.to_string()))
        }
    }

    fn is_balanced(&self) -> bool {
        self.0.iter().filter(|&&b| b).count() * 2 == self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `true` iff position `k` (1-based) carries a plus.
    pub fn is_plus(&self, k: u32) -> bool {
        self.0[(k - 1) as usize]
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", if b { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// One oriented arc of a matching. `from` is the plus endpoint; traversing
/// the arc from `from` to `to` crosses the seam `seam` times, with sign.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MatchArc {
    pub from: u32,
    pub to: u32,
    pub seam: i64,
}

impl MatchArc {
    /// Counterclockwise angular displacement of the arc in gap units, the
    /// unique integer congruent to `to - from` mod `m` whose monotone sweep
    /// from `from` crosses the seam `seam` times. Canonical arcs have
    /// `1 <= displacement <= m - 1`.
    pub fn displacement(&self, m: u32) -> i64 {
        let m = i64::from(m);
        let base = (i64::from(self.to) - i64::from(self.from)).rem_euclid(m);
        let base_seam = seam_of_sweep(self.from, base, m as u32);
        base + m * (self.seam - base_seam)
    }

    pub fn reversed(&self) -> MatchArc {
        MatchArc { from: self.to, to: self.from, seam: -self.seam }
    }

    pub fn touches(&self, p: u32) -> bool {
        self.from == p || self.to == p
    }

    pub fn other_end(&self, p: u32) -> u32 {
        if self.from == p {
            self.to
        } else {
            self.from
        }
    }
}

/// Signed seam crossings of a monotone sweep that starts at point `a` of `m`
/// and travels `d` gap units counterclockwise (negative `d` is clockwise).
/// The seam sits just below angle zero, so a sweep arriving exactly at a
/// point-1 lift from below has crossed it.
pub(crate) fn seam_of_sweep(a: u32, d: i64, m: u32) -> i64 {
    debug_assert!(m > 0);
    (i64::from(a) - 1 + d).div_euclid(i64::from(m))
}

/// A crossingless matching of `2n` points in the punctured disk.
///
/// Arcs are kept in canonical form: oriented plus-to-minus with displacement
/// in `1..m`, sorted by plus endpoint. Canonical arcs have `|seam| <= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AffineMatching {
    n: u32,
    arcs: Vec<MatchArc>,
}

impl AffineMatching {
    pub fn empty() -> Self {
        AffineMatching { n: 0, arcs: Vec::new() }
    }

    /// Builds from raw arcs, normalizing orientation and order. Callers must
    /// pass a perfect matching of `1..=2n`.
    pub(crate) fn from_arcs(n: u32, arcs: Vec<MatchArc>) -> Self {
        let m = 2 * n;
        let mut arcs: Vec<MatchArc> = arcs
            .into_iter()
            .map(|a| {
                let d = a.displacement(m);
                debug_assert!(d != 0 && d.unsigned_abs() < u64::from(m), "arc wraps too far");
                if d < 0 {
                    a.reversed()
                } else {
                    a
                }
            })
            .collect();
        arcs.sort();
        let matching = AffineMatching { n, arcs };
        matching.debug_validate();
        matching
    }

    fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        {
            let m = 2 * self.n;
            let mut seen = alloc::vec![false; m as usize];
            for arc in &self.arcs {
                for p in [arc.from, arc.to] {
                    assert!(p >= 1 && p <= m, "endpoint out of range");
                    assert!(!seen[(p - 1) as usize], "endpoint reused");
                    seen[(p - 1) as usize] = true;
                }
                let d = arc.displacement(m);
                assert!(d >= 1 && d < i64::from(m), "non-canonical displacement {d}");
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of circle points, `2n`.
    pub fn points(&self) -> u32 {
        2 * self.n
    }

    pub fn arcs(&self) -> &[MatchArc] {
        &self.arcs
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The arc incident to point `p`.
    pub fn arc_at(&self, p: u32) -> &MatchArc {
        self.arcs
            .iter()
            .find(|a| a.touches(p))
            .expect("point of a perfect matching")
    }

    /// The matching partner of point `p`.
    pub fn partner(&self, p: u32) -> u32 {
        self.arc_at(p).other_end(p)
    }

    /// Serializes by marking each arc's source with a plus and its target
    /// with a minus. Inverse of [`from_signs`].
    pub fn to_signs(&self) -> SignSequence {
        let m = self.points() as usize;
        let mut signs = alloc::vec![false; m];
        for arc in &self.arcs {
            signs[(arc.from - 1) as usize] = true;
        }
        SignSequence(signs)
    }

    /// The matching of a balanced sign sequence: each plus connects to the
    /// nearest counterclockwise minus with a balanced stretch between them.
    /// This is cyclic bracket matching; the wrap-around pairs are exactly the
    /// arcs that cross the seam once.
    pub fn from_signs(seq: &SignSequence) -> Result<Self, MatchingError> {
        if !seq.is_balanced() {
            return Err(MatchingError::UnbalancedSequence(seq.to_string()));
        }
        let m = seq.len() as u32;
        let n = m / 2;
        let mut stack: Vec<u32> = Vec::new();
        let mut unmatched_minus: Vec<u32> = Vec::new();
        let mut arcs: Vec<MatchArc> = Vec::with_capacity(n as usize);
        for k in 1..=m {
            if seq.is_plus(k) {
                stack.push(k);
            } else if let Some(p) = stack.pop() {
                arcs.push(MatchArc { from: p, to: k, seam: 0 });
            } else {
                unmatched_minus.push(k);
            }
        }
        // Remaining pluses wrap past the seam to the leading minuses.
        for q in unmatched_minus {
            let p = stack.pop().expect("balanced sequence");
            arcs.push(MatchArc { from: p, to: q, seam: 1 });
        }
        debug_assert!(stack.is_empty());
        Ok(AffineMatching::from_arcs(n, arcs))
    }

    /// All matchings of `2n` points, in lexicographic sign-sequence order
    /// (`+` before `-`). There are `binom(2n, n)` of them.
    pub fn enumerate(n: u32) -> Vec<AffineMatching> {
        let m = 2 * n;
        let mut out = Vec::new();
        let mut signs = alloc::vec![false; m as usize];
        fn rec(signs: &mut Vec<bool>, k: usize, plus_left: u32, minus_left: u32, out: &mut Vec<AffineMatching>) {
            if k == signs.len() {
                let seq = SignSequence(signs.clone());
                out.push(AffineMatching::from_signs(&seq).expect("balanced by construction"));
                return;
            }
            if plus_left > 0 {
                signs[k] = true;
                rec(signs, k + 1, plus_left - 1, minus_left, out);
            }
            if minus_left > 0 {
                signs[k] = false;
                rec(signs, k + 1, plus_left, minus_left - 1, out);
            }
        }
        rec(&mut signs, 0, n, n, &mut out);
        out
    }
}

impl fmt::Display for AffineMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(s: &str) -> SignSequence {
        SignSequence::parse(s).unwrap()
    }

    fn matching(s: &str) -> AffineMatching {
        AffineMatching::from_signs(&signs(s)).unwrap()
    }

    #[test]
    fn plus_minus_is_plain_arc() {
        assert_eq!(matching("+-").arcs(), &[MatchArc { from: 1, to: 2, seam: 0 }]);
    }

    #[test]
    fn minus_plus_wraps_the_seam() {
        assert_eq!(matching("-+").arcs(), &[MatchArc { from: 2, to: 1, seam: 1 }]);
    }

    #[test]
    fn nested_pair() {
        assert_eq!(
            matching("++--").arcs(),
            &[
                MatchArc { from: 1, to: 4, seam: 0 },
                MatchArc { from: 2, to: 3, seam: 0 },
            ]
        );
    }

    #[test]
    fn doubly_wrapped_sequence() {
        assert_eq!(
            matching("--++").arcs(),
            &[
                MatchArc { from: 3, to: 2, seam: 1 },
                MatchArc { from: 4, to: 1, seam: 1 },
            ]
        );
    }

    #[test]
    fn counts_are_central_binomials() {
        for (n, expected) in [(0u32, 1usize), (1, 2), (2, 6), (3, 20), (4, 70)] {
            assert_eq!(AffineMatching::enumerate(n).len(), expected, "n = {n}");
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let list = AffineMatching::enumerate(3);
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn signs_round_trip() {
        for matching in AffineMatching::enumerate(3) {
            let seq = matching.to_signs();
            assert_eq!(AffineMatching::from_signs(&seq).unwrap(), matching);
        }
    }

    #[test]
    fn unbalanced_rejected() {
        assert!(SignSequence::parse("++-").is_err());
        assert!(SignSequence::parse("+*").is_err());
    }

    #[test]
    fn displacement_matches_seam() {
        let alpha2 = matching("-+");
        let arc = alpha2.arcs()[0];
        assert_eq!(arc.displacement(2), 1);
        assert_eq!(seam_of_sweep(arc.from, arc.displacement(2), 2), 1);
    }
}
