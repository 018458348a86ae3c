//! Elementary generators of framed affine tangle diagrams.

use core::fmt;

/// Sign of a crossing or framing twist.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_shift(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// Direction of the rotation generator that shifts all strands by one
/// position around the annulus.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RotDir {
    Ccw,
    Cw,
}

impl RotDir {
    pub fn flip(self) -> Self {
        match self {
            RotDir::Ccw => RotDir::Cw,
            RotDir::Cw => RotDir::Ccw,
        }
    }
}

/// One elementary diagram. Words compose these bottom-to-top.
///
/// Arities: `Cup { strands: n, .. }` maps `n-2 -> n`, `Cap` maps `n -> n-2`,
/// and the remaining generators preserve the strand count. For cups the
/// `strands` field is the target count, for caps the source count.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GeneratorToken {
    /// Creates strands `index`, `index + 1`.
    Cup { strands: u32, index: u32 },
    /// Connects strands `index`, `index + 1`.
    Cap { strands: u32, index: u32 },
    /// Crosses strands `index`, `index + 1`; `Pos` passes strand `index` over.
    Cross { strands: u32, index: u32, sign: Sign },
    /// Framing twist of strand `index`; evaluates to a degree shift of `±1`.
    Twist { strands: u32, index: u32, sign: Sign },
    /// Shifts every strand one position counterclockwise (`Ccw`) or back.
    Rot { strands: u32, dir: RotDir },
    /// The identity on `strands` strands.
    Id { strands: u32 },
}

/// Violation of a token's index or strand-count range.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TokenRangeError(pub GeneratorToken);

impl fmt::Display for TokenRangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "index out of range for {}", self.0)
    }
}

impl GeneratorToken {
    pub fn source(&self) -> u32 {
        match *self {
            GeneratorToken::Cup { strands, .. } => strands - 2,
            GeneratorToken::Cap { strands, .. }
            | GeneratorToken::Cross { strands, .. }
            | GeneratorToken::Twist { strands, .. }
            | GeneratorToken::Rot { strands, .. }
            | GeneratorToken::Id { strands } => strands,
        }
    }

    pub fn target(&self) -> u32 {
        match *self {
            GeneratorToken::Cup { strands, .. } => strands,
            GeneratorToken::Cap { strands, .. } => strands - 2,
            GeneratorToken::Cross { strands, .. }
            | GeneratorToken::Twist { strands, .. }
            | GeneratorToken::Rot { strands, .. }
            | GeneratorToken::Id { strands } => strands,
        }
    }

    /// Index and strand-count ranges: cups, caps and crossings need
    /// `strands >= 2` and `1 <= index <= strands - 1`; twists sit on a single
    /// strand, `1 <= index <= strands`; rotations and identities accept any
    /// strand count including zero.
    pub fn check_ranges(&self) -> Result<(), TokenRangeError> {
        let ok = match *self {
            GeneratorToken::Cup { strands, index }
            | GeneratorToken::Cap { strands, index }
            | GeneratorToken::Cross { strands, index, .. } => {
                strands >= 2 && index >= 1 && index <= strands - 1
            }
            GeneratorToken::Twist { strands, index, .. } => {
                strands >= 1 && index >= 1 && index <= strands
            }
            GeneratorToken::Rot { .. } | GeneratorToken::Id { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            Err(TokenRangeError(*self))
        }
    }

    /// Mirror image under radial inversion: cups and caps swap, crossing and
    /// twist signs flip, rotations reverse. Used by word duals.
    pub fn dual(&self) -> GeneratorToken {
        match *self {
            GeneratorToken::Cup { strands, index } => GeneratorToken::Cap { strands, index },
            GeneratorToken::Cap { strands, index } => GeneratorToken::Cup { strands, index },
            GeneratorToken::Cross { strands, index, sign } => GeneratorToken::Cross {
                strands,
                index,
                sign: sign.flip(),
            },
            GeneratorToken::Twist { strands, index, sign } => GeneratorToken::Twist {
                strands,
                index,
                sign: sign.flip(),
            },
            GeneratorToken::Rot { strands, dir } => GeneratorToken::Rot {
                strands,
                dir: dir.flip(),
            },
            GeneratorToken::Id { strands } => GeneratorToken::Id { strands },
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, GeneratorToken::Cross { .. })
    }
}

impl fmt::Display for GeneratorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorToken::Cup { strands, index } => write!(f, "g({strands},{index})"),
            GeneratorToken::Cap { strands, index } => write!(f, "f({strands},{index})"),
            GeneratorToken::Cross { strands, index, sign: Sign::Pos } => {
                write!(f, "t+({strands},{index})")
            }
            GeneratorToken::Cross { strands, index, sign: Sign::Neg } => {
                write!(f, "t-({strands},{index})")
            }
            GeneratorToken::Twist { strands, index, sign: Sign::Pos } => {
                write!(f, "w+({strands},{index})")
            }
            GeneratorToken::Twist { strands, index, sign: Sign::Neg } => {
                write!(f, "w-({strands},{index})")
            }
            GeneratorToken::Rot { strands, dir: RotDir::Ccw } => write!(f, "r({strands})"),
            GeneratorToken::Rot { strands, dir: RotDir::Cw } => write!(f, "r'({strands})"),
            GeneratorToken::Id { strands } => write!(f, "id({strands})"),
        }
    }
}
