//! Configurations `(σ, τ, ρ, x, y)` and their codec to labeled cube states.
//!
//! * `sigma(i)` is the corner slot holding corner `i`; `x[j]` is the number
//!   of the sticker of the corner in slot `j` that lies on U or D.
//! * `tau(e)` is the edge sub-slot holding edge `e`; sub-slots and edges are
//!   linearised 1a, 1b, .., 12b. `y[j]` is the number of the sticker on the
//!   reference facelet of sub-slot `j`.
//! * `rho(i)` is the centre slot holding centre `i`.
//!
//! Internally everything is 0-indexed; the text format is 1-indexed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::cube::geometry::{cube_rotations, geometry, CORNERS, CENTERS, EDGE_SLOTS};
use crate::cube::{Color, CubeState, CubieKind, EdgeType, MoveSequence, FACELETS};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("state is not labeled")]
    NotLabeled,
    #[error("state is not colored")]
    NotColored,
    #[error("malformed labeled state: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("no white-red-green corner found")]
    NoReferenceCorner,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub rho: Permutation,
    pub x: [u8; CORNERS],
    pub y: [u8; EDGE_SLOTS],
}

/// Who sits in an edge sub-slot and how it is turned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeOccupancy {
    /// Numbered position, 1..=12.
    pub position: u8,
    pub slot_type: EdgeType,
    pub occupant_type: EdgeType,
    pub orientation: u8,
}

impl EdgeOccupancy {
    /// Orientation demanded by the edge law: 0 in a slot of the occupant's
    /// own type, 1 otherwise.
    pub fn expected_orientation(&self) -> u8 {
        (self.slot_type != self.occupant_type) as u8
    }
}

impl fmt::Display for EdgeOccupancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{{{},{}}}",
            self.position,
            self.slot_type.letter(),
            self.occupant_type.letter()
        )
    }
}

/// Type of every edge sub-slot, in the 1a, 1b, .., 12b linearisation.
pub fn slot_type_table() -> [EdgeType; EDGE_SLOTS] {
    std::array::from_fn(EdgeType::of_index)
}

/// Type of edge `e` (0-based): the type of its solved sub-slot.
pub fn edge_type(edge: usize) -> EdgeType {
    EdgeType::of_index(edge)
}

impl Configuration {
    pub fn initial() -> Self {
        Self {
            sigma: Permutation::identity(CORNERS),
            tau: Permutation::identity(EDGE_SLOTS),
            rho: Permutation::identity(CENTERS),
            x: [0; CORNERS],
            y: [0; EDGE_SLOTS],
        }
    }

    /// Uniform element of the whole configuration space.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut shuffled = |n: usize| {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(rng);
            Permutation::from_images(v).unwrap()
        };
        let sigma = shuffled(CORNERS);
        let tau = shuffled(EDGE_SLOTS);
        let rho = shuffled(CENTERS);
        Self {
            sigma,
            tau,
            rho,
            x: std::array::from_fn(|_| rng.random_range(0..3)),
            y: std::array::from_fn(|_| rng.random_range(0..2)),
        }
    }

    pub fn extract(state: &CubeState) -> Result<Self, ConfigError> {
        let homes = state.homes().ok_or(ConfigError::NotLabeled)?;
        let g = geometry();
        let cubie = |facelet: usize, want: CubieKind| -> Result<(usize, usize), ConfigError> {
            let (kind, id, index) = g.slot_of[homes[facelet] as usize];
            if kind != want {
                return Err(ConfigError::Malformed(format!(
                    "facelet {} holds a {kind:?} sticker in a {want:?} slot",
                    facelet + 1
                )));
            }
            Ok((id, index))
        };

        let mut sigma = [0usize; CORNERS];
        let mut x = [0u8; CORNERS];
        for (slot, fs) in g.corner_slots.iter().enumerate() {
            let (id, x0) = cubie(fs[0], CubieKind::Corner)?;
            for (k, &f) in fs.iter().enumerate().skip(1) {
                if cubie(f, CubieKind::Corner)? != (id, (x0 + k) % 3) {
                    return Err(ConfigError::Malformed(format!("corner slot {} is not a single corner", slot + 1)));
                }
            }
            sigma[id] = slot;
            x[slot] = x0 as u8;
        }

        let mut tau = [0usize; EDGE_SLOTS];
        let mut y = [0u8; EDGE_SLOTS];
        for (slot, fs) in g.edge_slots.iter().enumerate() {
            let (id, y0) = cubie(fs[0], CubieKind::Edge)?;
            if cubie(fs[1], CubieKind::Edge)? != (id, 1 - y0) {
                return Err(ConfigError::Malformed(format!("edge sub-slot {} is not a single edge", slot + 1)));
            }
            tau[id] = slot;
            y[slot] = y0 as u8;
        }

        let mut rho = [0usize; CENTERS];
        for (slot, &f) in g.center_slots.iter().enumerate() {
            let (id, _) = cubie(f, CubieKind::Center)?;
            rho[id] = slot;
        }

        let perm = |v: &[usize]| Permutation::from_images(v.to_vec()).map_err(|e| ConfigError::Malformed(e.to_string()));
        Ok(Self {
            sigma: perm(&sigma)?,
            tau: perm(&tau)?,
            rho: perm(&rho)?,
            x,
            y,
        })
    }

    pub fn realize(&self) -> CubeState {
        let g = geometry();
        let mut homes = vec![0u8; FACELETS];
        for corner in 0..CORNERS {
            let slot = self.sigma.image(corner);
            let x = self.x[slot] as usize;
            for k in 0..3 {
                homes[g.corner_slots[slot][k]] = g.corner_slots[corner][(x + k) % 3] as u8;
            }
        }
        for edge in 0..EDGE_SLOTS {
            let slot = self.tau.image(edge);
            let y = self.y[slot] as usize;
            for k in 0..2 {
                homes[g.edge_slots[slot][k]] = g.edge_slots[edge][(y + k) % 2] as u8;
            }
        }
        for center in 0..CENTERS {
            homes[g.center_slots[self.rho.image(center)]] = g.center_slots[center] as u8;
        }
        CubeState::Labeled(homes)
    }

    /// Facelet permutation sending each sticker's solved position to its
    /// position in `realize()`.
    pub fn to_facelet_permutation(&self) -> Permutation {
        self.realize().facelet_permutation().expect("realize yields a labeled state")
    }

    /// Configuration reached from the initial one by `word`.
    pub fn of_word(word: &MoveSequence) -> Self {
        let state = CubeState::from_facelet_permutation(&word.permutation());
        Self::extract(&state).expect("moves keep cubies intact")
    }

    /// Product in the configuration group: `self` followed by `other`, where
    /// `other` is read as the motion taking the initial configuration to it.
    pub fn then(&self, other: &Self) -> Self {
        let mut x = [0u8; CORNERS];
        for j in 0..CORNERS {
            let to = other.sigma.image(j);
            x[to] = (self.x[j] + other.x[to]) % 3;
        }
        let mut y = [0u8; EDGE_SLOTS];
        for j in 0..EDGE_SLOTS {
            let to = other.tau.image(j);
            y[to] = (self.y[j] + other.y[to]) % 2;
        }
        Self {
            sigma: self.sigma.then(&other.sigma),
            tau: self.tau.then(&other.tau),
            rho: self.rho.then(&other.rho),
            x,
            y,
        }
    }

    /// Occupancy of every sub-slot, in linearised order.
    pub fn edge_occupancy(&self) -> [EdgeOccupancy; EDGE_SLOTS] {
        let occupant = self.tau.inverse();
        std::array::from_fn(|slot| EdgeOccupancy {
            position: (slot / 2) as u8 + 1,
            slot_type: EdgeType::of_index(slot),
            occupant_type: edge_type(occupant.image(slot)),
            orientation: self.y[slot],
        })
    }
}

fn write_perm(f: &mut fmt::Formatter<'_>, key: &str, p: &Permutation) -> fmt::Result {
    let images: Vec<String> = p.images().map(|i| (i + 1).to_string()).collect();
    writeln!(f, "{key}: {}", images.join(" "))
}

fn write_digits(f: &mut fmt::Formatter<'_>, key: &str, v: &[u8]) -> fmt::Result {
    let digits: Vec<String> = v.iter().map(u8::to_string).collect();
    writeln!(f, "{key}: {}", digits.join(" "))
}

/// Five lines: `sigma:`, `tau:`, `rho:` with 1-indexed images in one-line
/// notation, then `x:` and `y:` digits.
impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_perm(f, "sigma", &self.sigma)?;
        write_perm(f, "tau", &self.tau)?;
        write_perm(f, "rho", &self.rho)?;
        write_digits(f, "x", &self.x)?;
        write_digits(f, "y", &self.y)
    }
}

/// Line-oriented reader for `key: values` records in a fixed key order.
struct Fields<'a> {
    lines: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Fields<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            lines: text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(k, l)| (k + 1, l))
                .collect(),
            next: 0,
        }
    }

    fn take(&mut self, key: &str) -> Result<(usize, &'a str), ConfigError> {
        let Some(&(line, text)) = self.lines.get(self.next) else {
            return Err(ConfigError::Format {
                line: self.lines.last().map_or(1, |l| l.0),
                message: format!("missing `{key}:` line"),
            });
        };
        self.next += 1;
        let rest = text
            .trim()
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| ConfigError::Format {
                line,
                message: format!("expected `{key}:`"),
            })?;
        Ok((line, rest))
    }

    fn perm(&mut self, key: &str, degree: usize) -> Result<Permutation, ConfigError> {
        let (line, rest) = self.take(key)?;
        let err = |message: String| ConfigError::Format { line, message };
        let images = rest
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if (1..=degree).contains(&v) => Ok(v - 1),
                _ => Err(err(format!("bad image `{t}`"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if images.len() != degree {
            return Err(err(format!("expected {degree} images, found {}", images.len())));
        }
        Permutation::from_images(images).map_err(|_| err(format!("`{key}` is not a permutation")))
    }

    fn digits<const N: usize>(&mut self, key: &str, modulus: u8) -> Result<[u8; N], ConfigError> {
        let (line, rest) = self.take(key)?;
        let err = |message: String| ConfigError::Format { line, message };
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        // accept both `0 1 2` and `012`
        let chars: Vec<char> = if tokens.len() == 1 && tokens[0].len() == N {
            tokens[0].chars().collect()
        } else if tokens.iter().all(|t| t.len() == 1) {
            tokens.iter().map(|t| t.chars().next().unwrap()).collect()
        } else {
            return Err(err(format!("`{key}` must be {N} digits")));
        };
        if chars.len() != N {
            return Err(err(format!("expected {N} digits, found {}", chars.len())));
        }
        let mut out = [0u8; N];
        for (k, c) in chars.into_iter().enumerate() {
            match c.to_digit(10) {
                Some(d) if d < modulus as u32 => out[k] = d as u8,
                _ => return Err(err(format!("bad digit `{c}` in `{key}`"))),
            }
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), ConfigError> {
        match self.lines.get(self.next) {
            Some(&(line, _)) => Err(ConfigError::Format {
                line,
                message: "unexpected trailing line".into(),
            }),
            None => Ok(()),
        }
    }
}

impl FromStr for Configuration {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut fields = Fields::new(s);
        let c = Self {
            sigma: fields.perm("sigma", CORNERS)?,
            tau: fields.perm("tau", EDGE_SLOTS)?,
            rho: fields.perm("rho", CENTERS)?,
            x: fields.digits("x", 3)?,
            y: fields.digits("y", 2)?,
        };
        fields.finish()?;
        Ok(c)
    }
}

/// Configuration `(σ, τ, x, y)` of the 3×3×3 cube.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration3 {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub x: [u8; 8],
    pub y: [u8; 12],
}

impl Configuration3 {
    pub fn initial() -> Self {
        Self {
            sigma: Permutation::identity(8),
            tau: Permutation::identity(12),
            x: [0; 8],
            y: [0; 12],
        }
    }
}

impl fmt::Display for Configuration3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_perm(f, "sigma", &self.sigma)?;
        write_perm(f, "tau", &self.tau)?;
        write_digits(f, "x", &self.x)?;
        write_digits(f, "y", &self.y)
    }
}

impl FromStr for Configuration3 {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut fields = Fields::new(s);
        let c = Self {
            sigma: fields.perm("sigma", 8)?,
            tau: fields.perm("tau", 12)?,
            x: fields.digits("x", 3)?,
            y: fields.digits("y", 2)?,
        };
        fields.finish()?;
        Ok(c)
    }
}

/// Whole-cube rotation bringing the white-red-green corner to the
/// up-front-left slot with its white sticker on top.
pub fn normalizing_rotation(state: &CubeState) -> Result<&'static Permutation, ConfigError> {
    let g = geometry();
    let target = g.corner_slots[0];
    let mut found = None;
    for fs in &g.corner_slots {
        for start in 0..3 {
            let colors: Vec<Color> = (0..3).map(|k| state.color_at(fs[(start + k) % 3])).collect();
            let mut sorted = colors.clone();
            sorted.sort();
            if colors[0] == Color::White && sorted == [Color::White, Color::Red, Color::Green] {
                found = Some(fs[start]);
            }
        }
    }
    let white = found.ok_or(ConfigError::NoReferenceCorner)?;
    cube_rotations()
        .iter()
        .find(|r| r.image(white) == target[0])
        .ok_or(ConfigError::NoReferenceCorner)
}

/// Rotates a colored state so that the white-red-green corner sits in slot 1
/// with white on U.
pub fn normalize_orientation(state: &CubeState) -> Result<CubeState, ConfigError> {
    if state.homes().is_some() {
        return Err(ConfigError::NotColored);
    }
    Ok(state.permuted(normalizing_rotation(state)?))
}
