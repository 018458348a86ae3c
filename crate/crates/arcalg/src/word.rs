//! Tangle words: composable sequences of generator tokens with a textual DSL.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! word := "id(" NAT ")" | gen (";" gen)*
//! gen  := "g(" NAT "," NAT ")" | "f(" NAT "," NAT ")"
//!       | "t+(" NAT "," NAT ")" | "t-(" NAT "," NAT ")"
//!       | "w+(" NAT "," NAT ")" | "w-(" NAT "," NAT ")"
//!       | "r(" NAT ")" | "r'(" NAT ")"
//! ```
//!
//! Tokens apply left-to-right, i.e. reading the diagram from the inside of
//! the annulus outward (bottom to top). Cup, cap and crossing symbols with
//! `index == strands` denote the derived wrap-around generators and are
//! expanded by the parser into their defining rotation conjugates.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::token::{GeneratorToken, RotDir, Sign};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordError {
    /// Unrecognized token text.
    Syntax(String),
    /// A token's index is outside its legal range.
    Index(String),
    /// Consecutive tokens do not chain, or two words do not compose.
    Arity { position: usize, expected: u32, found: u32 },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::Syntax(s) => write!(f, "syntax error: {s}"),
            WordError::Index(s) => write!(f, "index error: {s}"),
            WordError::Arity { position, expected, found } => write!(
                f,
                "arity mismatch at token {position}: expected source {expected}, found {found}"
            ),
        }
    }
}

/// A composable sequence of generators, applied first-to-last.
///
/// The empty word is the identity on a declared arity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TangleWord {
    source: u32,
    tokens: Vec<GeneratorToken>,
}

impl TangleWord {
    /// Builds a word, validating token ranges and the arity chain.
    pub fn new(source: u32, tokens: Vec<GeneratorToken>) -> Result<Self, WordError> {
        let mut arity = source;
        for (position, tok) in tokens.iter().enumerate() {
            tok.check_ranges()
                .map_err(|e| WordError::Index(e.to_string()))?;
            if tok.source() != arity {
                return Err(WordError::Arity {
                    position,
                    expected: tok.source(),
                    found: arity,
                });
            }
            arity = tok.target();
        }
        Ok(TangleWord { source, tokens })
    }

    /// The identity word on `strands` strands.
    pub fn identity(strands: u32) -> Self {
        TangleWord { source: strands, tokens: Vec::new() }
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn target(&self) -> u32 {
        self.tokens.last().map_or(self.source, |t| t.target())
    }

    /// `(source arity, target arity)`.
    pub fn signature(&self) -> (u32, u32) {
        (self.source(), self.target())
    }

    pub fn tokens(&self) -> &[GeneratorToken] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// Arity after the first `k` tokens.
    pub fn arity_at(&self, k: usize) -> u32 {
        if k == 0 {
            self.source
        } else {
            self.tokens[k - 1].target()
        }
    }

    pub fn has_crossings(&self) -> bool {
        self.tokens.iter().any(GeneratorToken::is_crossing)
    }

    /// Stacks `other` on top of `self`.
    pub fn compose(&self, other: &TangleWord) -> Result<TangleWord, WordError> {
        if self.target() != other.source() {
            return Err(WordError::Arity {
                position: self.tokens.len(),
                expected: other.source(),
                found: self.target(),
            });
        }
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Ok(TangleWord { source: self.source, tokens })
    }

    /// The radially inverted word: token order reverses and every token is
    /// replaced by its mirror image. Signatures swap; `dual` is an involution.
    ///
    /// The homological shift that accompanies inversion at the level of
    /// morphism spaces is not recorded here; the hom-space builder applies it.
    pub fn dual(&self) -> TangleWord {
        let tokens: Vec<_> = self.tokens.iter().rev().map(GeneratorToken::dual).collect();
        TangleWord { source: self.target(), tokens }
    }

    /// Parses the DSL described in the module docs.
    pub fn parse(text: &str) -> Result<TangleWord, WordError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(WordError::Syntax("empty input".to_string()));
        }
        if let Some(rest) = compact.strip_prefix("id(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| WordError::Syntax("missing ')'".to_string()))?;
            if inner.contains(';') || inner.contains('(') {
                return Err(WordError::Syntax("id(..) must stand alone".to_string()));
            }
            let n = parse_nat(inner)?;
            return Ok(TangleWord::identity(n));
        }

        let mut tokens: Vec<GeneratorToken> = Vec::new();
        let mut source = None;
        for item in compact.split(';') {
            let expanded = parse_generator(item)?;
            if source.is_none() {
                source = Some(expanded[0].source());
            }
            tokens.extend(expanded);
        }
        TangleWord::new(source.unwrap(), tokens)
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "id({})", self.source);
        }
        for (k, tok) in self.tokens.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{tok}")?;
        }
        Ok(())
    }
}

fn parse_nat(s: &str) -> Result<u32, WordError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(WordError::Syntax(format!("expected a number, found {s:?}")));
    }
    s.parse()
        .map_err(|_| WordError::Syntax(format!("number out of range: {s}")))
}

fn parse_args(item: &str, head: &str) -> Result<Vec<u32>, WordError> {
    let rest = item
        .strip_prefix(head)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| WordError::Syntax(format!("bad token {item:?}")))?;
    rest.split(',').map(parse_nat).collect()
}

/// One DSL item to tokens; wrap-around indices expand to rotation conjugates.
fn parse_generator(item: &str) -> Result<Vec<GeneratorToken>, WordError> {
    let (head, args_wanted): (&str, usize) = if item.starts_with("t+") || item.starts_with("t-") {
        (&item[..2], 2)
    } else if item.starts_with("w+") || item.starts_with("w-") {
        (&item[..2], 2)
    } else if item.starts_with("r'") {
        (&item[..2], 1)
    } else if item.starts_with('g') || item.starts_with('f') {
        (&item[..1], 2)
    } else if item.starts_with('r') {
        (&item[..1], 1)
    } else {
        return Err(WordError::Syntax(format!("unknown generator {item:?}")));
    };
    let args = parse_args(item, head)?;
    if args.len() != args_wanted {
        return Err(WordError::Syntax(format!("wrong argument count in {item:?}")));
    }

    let ok = |tok: GeneratorToken| -> Result<Vec<GeneratorToken>, WordError> {
        tok.check_ranges()
            .map_err(|e| WordError::Index(e.to_string()))?;
        Ok(alloc::vec![tok])
    };

    match head {
        "r" => ok(GeneratorToken::Rot { strands: args[0], dir: RotDir::Ccw }),
        "r'" => ok(GeneratorToken::Rot { strands: args[0], dir: RotDir::Cw }),
        "w+" | "w-" => ok(GeneratorToken::Twist {
            strands: args[0],
            index: args[1],
            sign: if head == "w+" { Sign::Pos } else { Sign::Neg },
        }),
        "g" | "f" | "t+" | "t-" => {
            let (n, i) = (args[0], args[1]);
            if n >= 2 && i == n {
                return Ok(expand_wraparound(head, n));
            }
            match head {
                "g" => ok(GeneratorToken::Cup { strands: n, index: i }),
                "f" => ok(GeneratorToken::Cap { strands: n, index: i }),
                _ => ok(GeneratorToken::Cross {
                    strands: n,
                    index: i,
                    sign: if head == "t+" { Sign::Pos } else { Sign::Neg },
                }),
            }
        }
        _ => unreachable!(),
    }
}

/// Defining words of the derived index-`n` generators, in application order:
/// the cup is `r(n-2)` then `g(n,n-1)` then `r'(n)`, and symmetrically for
/// caps and crossings.
fn expand_wraparound(head: &str, n: u32) -> Vec<GeneratorToken> {
    let r = |strands| GeneratorToken::Rot { strands, dir: RotDir::Ccw };
    let r_inv = |strands| GeneratorToken::Rot { strands, dir: RotDir::Cw };
    match head {
        "g" => alloc::vec![r_inv(n - 2), GeneratorToken::Cup { strands: n, index: n - 1 }, r(n)],
        "f" => alloc::vec![r_inv(n), GeneratorToken::Cap { strands: n, index: n - 1 }, r(n - 2)],
        "t+" | "t-" => {
            let sign = if head == "t+" { Sign::Pos } else { Sign::Neg };
            alloc::vec![r_inv(n), GeneratorToken::Cross { strands: n, index: n - 1, sign }, r(n)]
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> TangleWord {
        TangleWord::parse(text).unwrap()
    }

    #[test]
    fn single_cup_signature() {
        assert_eq!(w("g(2,1)").signature(), (0, 2));
    }

    #[test]
    fn chained_cups_signature() {
        assert_eq!(w("g(2,1); g(4,1)").signature(), (0, 4));
    }

    #[test]
    fn chain_mismatch_rejected() {
        assert!(matches!(
            TangleWord::parse("g(2,1); g(2,1)"),
            Err(WordError::Arity { .. })
        ));
    }

    #[test]
    fn format_round_trips() {
        for text in ["g(2,1)", "id(4)", "g(2,1); r(2)", "g(2,1); g(4,1); t+(4,1)"] {
            let word = w(text);
            assert_eq!(word.to_string(), text);
            assert_eq!(TangleWord::parse(&word.to_string()).unwrap(), word);
        }
    }

    #[test]
    fn whitespace_ignored() {
        assert_eq!(w("  g( 2 , 1 ) ;\n r(2)"), w("g(2,1); r(2)"));
    }

    #[test]
    fn compose_identity_is_neutral() {
        let cup = w("g(2,1)");
        assert_eq!(cup.compose(&TangleWord::identity(2)).unwrap(), cup);
        assert_eq!(TangleWord::identity(0).compose(&cup).unwrap(), cup);
    }

    #[test]
    fn compose_cup_cap_closes() {
        assert_eq!(w("g(2,1)").compose(&w("f(2,1)")).unwrap().signature(), (0, 0));
    }

    #[test]
    fn compose_mismatch_rejected() {
        assert!(w("g(2,1)").compose(&w("g(2,1)")).is_err());
    }

    #[test]
    fn dual_swaps_cup_cap() {
        assert_eq!(w("g(2,1)").dual(), w("f(2,1)"));
        assert_eq!(w("t+(4,2)").dual(), w("t-(4,2)"));
    }

    #[test]
    fn dual_involution() {
        let word = w("g(2,1); g(4,1); t+(4,1); r(4)");
        assert_eq!(word.dual().dual(), word);
        let (a, b) = word.signature();
        assert_eq!(word.dual().signature(), (b, a));
    }

    #[test]
    fn index_out_of_range_rejected() {
        assert!(matches!(TangleWord::parse("g(2,5)"), Err(WordError::Index(_))));
        assert!(matches!(TangleWord::parse("t+(4,0)"), Err(WordError::Syntax(_) | WordError::Index(_))));
    }

    #[test]
    fn wraparound_generators_expand() {
        let cup = w("g(4,4)");
        assert_eq!(cup, w("r'(2); g(4,3); r(4)"));
        assert_eq!(cup.signature(), (2, 4));
        let cap = w("f(4,4)");
        assert_eq!(cap, w("r'(4); f(4,3); r(2)"));
        assert_eq!(cap.signature(), (4, 2));
        let cross = w("t-(4,4)");
        assert_eq!(cross, w("r'(4); t-(4,3); r(4)"));
    }

    #[test]
    fn twist_full_index_range() {
        assert!(TangleWord::parse("w+(4,4)").is_ok());
        assert!(TangleWord::parse("w+(4,5)").is_err());
    }
}
