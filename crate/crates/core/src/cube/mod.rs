//! The 96-facelet model: generators, move words and cube states.

pub mod geometry;
mod state;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::perm::Permutation;
pub use geometry::{cube_rotations, geometry, Color, CubieKind, EdgeType, Face, FACELETS};
pub use state::{CubeState, Mode, Sticker};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad move token `{token}` at byte offset {offset}")]
    BadToken { token: String, offset: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("malformed state: {0}")]
    Malformed(String),
}

/// One of the twelve clockwise slice quarter turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    U,
    D,
    L,
    R,
    F,
    B,
    CU,
    CD,
    CL,
    CR,
    CF,
    CB,
}

impl Generator {
    pub const ALL: [Generator; 12] = [
        Generator::U,
        Generator::D,
        Generator::L,
        Generator::R,
        Generator::F,
        Generator::B,
        Generator::CU,
        Generator::CD,
        Generator::CL,
        Generator::CR,
        Generator::CF,
        Generator::CB,
    ];

    /// R, L, F, B, U, D, C_R, C_F, C_U.
    pub const NINE: [Generator; 9] = [
        Generator::R,
        Generator::L,
        Generator::F,
        Generator::B,
        Generator::U,
        Generator::D,
        Generator::CR,
        Generator::CF,
        Generator::CU,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::U => "U",
            Generator::D => "D",
            Generator::L => "L",
            Generator::R => "R",
            Generator::F => "F",
            Generator::B => "B",
            Generator::CU => "CU",
            Generator::CD => "CD",
            Generator::CL => "CL",
            Generator::CR => "CR",
            Generator::CF => "CF",
            Generator::CB => "CB",
        }
    }

    /// The face the slice is named after.
    pub fn face(self) -> Face {
        match self {
            Generator::U | Generator::CU => Face::U,
            Generator::D | Generator::CD => Face::D,
            Generator::L | Generator::CL => Face::L,
            Generator::R | Generator::CR => Face::R,
            Generator::F | Generator::CF => Face::F,
            Generator::B | Generator::CB => Face::B,
        }
    }

    pub fn is_inner(self) -> bool {
        matches!(
            self,
            Generator::CU | Generator::CD | Generator::CL | Generator::CR | Generator::CF | Generator::CB
        )
    }

    /// Facelet permutation of the clockwise quarter turn.
    pub fn permutation(self) -> &'static Permutation {
        static TABLE: OnceLock<Vec<Permutation>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            let g = geometry();
            Generator::ALL
                .iter()
                .map(|gen| {
                    let n = gen.face().normal();
                    let depth = if gen.is_inner() { 1 } else { 3 };
                    g.turn(n, |p| geometry::dot(p, n) == depth)
                })
                .collect()
        });
        &table[self as usize]
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| CubeError::UnknownGenerator(s.to_string()))
    }
}

pub fn generator_permutation(name: &str) -> Result<Permutation, CubeError> {
    Ok(name.parse::<Generator>()?.permutation().clone())
}

/// A generator raised to 1, 2 or 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Turn {
    pub generator: Generator,
    pub exponent: u8,
}

impl Turn {
    pub fn new(generator: Generator, exponent: u8) -> Self {
        debug_assert!((1..=3).contains(&exponent));
        Self { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Self::new(self.generator, 4 - self.exponent)
    }

    pub fn permutation(self) -> Permutation {
        self.generator.permutation().pow(self.exponent as u64)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            1 => write!(f, "{}", self.generator),
            2 => write!(f, "{}2", self.generator),
            _ => write!(f, "{}'", self.generator),
        }
    }
}

/// A parsed move word, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoveSequence {
    pub turns: Vec<Turn>,
}

impl MoveSequence {
    pub fn new(turns: Vec<Turn>) -> Self {
        Self { turns }
    }

    /// Whitespace-separated tokens `NAME`, `NAME'` or `NAME2`.
    pub fn parse(text: &str) -> Result<Self, CubeError> {
        let mut turns = Vec::new();
        let mut offset = 0;
        for piece in text.split_inclusive(char::is_whitespace) {
            let token = piece.trim_end_matches(char::is_whitespace);
            if !token.is_empty() {
                turns.push(parse_turn(token, offset)?);
            }
            offset += piece.len();
        }
        Ok(Self { turns })
    }

    pub fn len(&self) -> usize {
        self.turns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.turns.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            turns: self.turns.iter().rev().map(|t| t.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut turns = self.turns.clone();
        turns.extend_from_slice(&other.turns);
        Self { turns }
    }

    /// Expanded commutator `m n m⁻¹ n⁻¹`.
    pub fn commutator(m: &Self, n: &Self) -> Self {
        m.concat(n).concat(&m.inverse()).concat(&n.inverse())
    }

    /// Facelet permutation of the word, composed in reading order.
    pub fn permutation(&self) -> Permutation {
        self.turns
            .iter()
            .fold(Permutation::identity(FACELETS), |acc, t| acc.then(&t.permutation()))
    }
}

fn parse_turn(token: &str, offset: usize) -> Result<Turn, CubeError> {
    let bad = || CubeError::BadToken {
        token: token.to_string(),
        offset,
    };
    let (name, exponent) = if let Some(n) = token.strip_suffix('\'') {
        (n, 3)
    } else if let Some(n) = token.strip_suffix('2') {
        (n, 2)
    } else {
        (token, 1)
    };
    let generator = name.parse::<Generator>().map_err(|_| bad())?;
    Ok(Turn::new(generator, exponent))
}

impl FromStr for MoveSequence {
    type Err = CubeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.turns.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

pub fn parse_sequence(text: &str) -> Result<MoveSequence, CubeError> {
    MoveSequence::parse(text)
}

pub fn sequence_permutation(seq: &MoveSequence) -> Permutation {
    seq.permutation()
}

pub fn solved_state(mode: Mode) -> CubeState {
    CubeState::solved(mode)
}

pub fn apply(state: &CubeState, seq: &MoveSequence) -> CubeState {
    state.permuted(&seq.permutation())
}

/// Uniformly random word of `length` turns. Consecutive turns use different
/// generators.
pub fn random_word<R: rand::Rng + ?Sized>(rng: &mut R, length: usize) -> MoveSequence {
    let mut turns: Vec<Turn> = Vec::with_capacity(length);
    while turns.len() < length {
        let g = Generator::ALL[rng.random_range(0..12)];
        if turns.last().is_some_and(|t| t.generator == g) {
            continue;
        }
        turns.push(Turn::new(g, rng.random_range(1..=3)));
    }
    MoveSequence { turns }
}
