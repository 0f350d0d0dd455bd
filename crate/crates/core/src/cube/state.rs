use std::fmt;
use std::str::FromStr;

use super::geometry::{geometry, Color, CubieKind, EdgeType, FACELETS};
use super::CubeError;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Labeled,
    Colored,
}

/// Identity of a single sticker: which cubie it belongs to and its number
/// on that cubie. Ids are 1-based as in the printed format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sticker {
    Corner { id: u8, index: u8 },
    Edge { position: u8, kind: EdgeType, index: u8 },
    Center { id: u8 },
}

impl Sticker {
    /// The sticker whose solved position is `facelet`.
    pub fn from_home(facelet: usize) -> Sticker {
        let (kind, slot, index) = geometry().slot_of[facelet];
        match kind {
            CubieKind::Corner => Sticker::Corner {
                id: slot as u8 + 1,
                index: index as u8,
            },
            CubieKind::Edge => Sticker::Edge {
                position: (slot / 2) as u8 + 1,
                kind: EdgeType::of_index(slot),
                index: index as u8,
            },
            CubieKind::Center => Sticker::Center { id: slot as u8 + 1 },
        }
    }

    pub fn home(self) -> usize {
        let g = geometry();
        match self {
            Sticker::Corner { id, index } => g.corner_slots[id as usize - 1][index as usize],
            Sticker::Edge { position, kind, index } => {
                let slot = 2 * (position as usize - 1) + (kind == EdgeType::B) as usize;
                g.edge_slots[slot][index as usize]
            }
            Sticker::Center { id } => g.center_slots[id as usize - 1],
        }
    }

    pub fn kind(self) -> CubieKind {
        match self {
            Sticker::Corner { .. } => CubieKind::Corner,
            Sticker::Edge { .. } => CubieKind::Edge,
            Sticker::Center { .. } => CubieKind::Center,
        }
    }

    pub fn color(self) -> Color {
        geometry().face_of(self.home()).color()
    }
}

impl fmt::Display for Sticker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sticker::Corner { id, index } => write!(f, "C{id}.{index}"),
            Sticker::Edge { position, kind, index } => {
                write!(f, "E{position}{}.{index}", kind.letter())
            }
            Sticker::Center { id } => write!(f, "Z{id}"),
        }
    }
}

impl FromStr for Sticker {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad sticker token `{s}`");
        let num = |t: &str, lo: u8, hi: u8| -> Result<u8, String> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) || (t.len() > 1 && t.starts_with('0')) {
                return Err(bad());
            }
            let v: u8 = t.parse().map_err(|_| bad())?;
            if (lo..=hi).contains(&v) {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        if let Some(rest) = s.strip_prefix('C') {
            let (id, index) = rest.split_once('.').ok_or_else(bad)?;
            Ok(Sticker::Corner {
                id: num(id, 1, 8)?,
                index: num(index, 0, 2)?,
            })
        } else if let Some(rest) = s.strip_prefix('E') {
            let (head, index) = rest.split_once('.').ok_or_else(bad)?;
            let (position, kind) = if let Some(p) = head.strip_suffix('a') {
                (p, EdgeType::A)
            } else if let Some(p) = head.strip_suffix('b') {
                (p, EdgeType::B)
            } else {
                return Err(bad());
            };
            Ok(Sticker::Edge {
                position: num(position, 1, 12)?,
                kind,
                index: num(index, 0, 1)?,
            })
        } else if let Some(rest) = s.strip_prefix('Z') {
            Ok(Sticker::Center { id: num(rest, 1, 24)? })
        } else {
            Err(bad())
        }
    }
}

/// Assignment of stickers to the 96 facelets.
///
/// A labeled state stores, for each facelet, the solved position of the
/// sticker now lying there. A colored state stores only colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CubeState {
    Labeled(Vec<u8>),
    Colored(Vec<Color>),
}

impl CubeState {
    pub fn solved(mode: Mode) -> Self {
        match mode {
            Mode::Labeled => CubeState::Labeled((0..FACELETS as u8).collect()),
            Mode::Colored => {
                let g = geometry();
                CubeState::Colored((0..FACELETS).map(|f| g.face_of(f).color()).collect())
            }
        }
    }

    /// Labeled state from the home facelet of the sticker on each facelet.
    pub fn from_homes(homes: Vec<u8>) -> Result<Self, CubeError> {
        if homes.len() != FACELETS {
            return Err(CubeError::Malformed(format!("expected 96 stickers, got {}", homes.len())));
        }
        let mut seen = [false; FACELETS];
        for &h in &homes {
            let h = h as usize;
            if h >= FACELETS || seen[h] {
                return Err(CubeError::Malformed(format!(
                    "sticker {} appears more than once",
                    Sticker::from_home(h.min(FACELETS - 1))
                )));
            }
            seen[h] = true;
        }
        Ok(CubeState::Labeled(homes))
    }

    pub fn from_colors(colors: Vec<Color>) -> Result<Self, CubeError> {
        if colors.len() != FACELETS {
            return Err(CubeError::Malformed(format!("expected 96 stickers, got {}", colors.len())));
        }
        for c in [Color::White, Color::Yellow, Color::Red, Color::Orange, Color::Green, Color::Blue] {
            let n = colors.iter().filter(|&&x| x == c).count();
            if n != 16 {
                return Err(CubeError::Malformed(format!("color {} appears {n} times", c.letter())));
            }
        }
        Ok(CubeState::Colored(colors))
    }

    /// Labeled state whose sticker with home `h` lies at `perm(h)`.
    pub fn from_facelet_permutation(perm: &Permutation) -> Self {
        let mut homes = vec![0u8; FACELETS];
        for h in 0..FACELETS {
            homes[perm.image(h)] = h as u8;
        }
        CubeState::Labeled(homes)
    }

    pub fn mode(&self) -> Mode {
        match self {
            CubeState::Labeled(_) => Mode::Labeled,
            CubeState::Colored(_) => Mode::Colored,
        }
    }

    pub fn homes(&self) -> Option<&[u8]> {
        match self {
            CubeState::Labeled(h) => Some(h),
            CubeState::Colored(_) => None,
        }
    }

    /// Permutation sending each sticker's solved position to its current one.
    pub fn facelet_permutation(&self) -> Option<Permutation> {
        let homes = self.homes()?;
        let mut images = vec![0usize; FACELETS];
        for (f, &h) in homes.iter().enumerate() {
            images[h as usize] = f;
        }
        Some(Permutation::from_images(images).expect("labeled state is a bijection"))
    }

    pub fn color_at(&self, facelet: usize) -> Color {
        match self {
            CubeState::Labeled(h) => Sticker::from_home(h[facelet] as usize).color(),
            CubeState::Colored(c) => c[facelet],
        }
    }

    pub fn to_colored(&self) -> CubeState {
        CubeState::Colored((0..FACELETS).map(|f| self.color_at(f)).collect())
    }

    /// Moves the sticker on facelet `i` to facelet `perm(i)`.
    pub fn permuted(&self, perm: &Permutation) -> CubeState {
        fn scatter<T: Copy>(src: &[T], perm: &Permutation) -> Vec<T> {
            let mut out = src.to_vec();
            for (i, &v) in src.iter().enumerate() {
                out[perm.image(i)] = v;
            }
            out
        }
        match self {
            CubeState::Labeled(h) => CubeState::Labeled(scatter(h, perm)),
            CubeState::Colored(c) => CubeState::Colored(scatter(c, perm)),
        }
    }

    /// Facelets whose contents differ from `other`.
    pub fn differing_facelets(&self, other: &CubeState) -> Vec<usize> {
        match (self, other) {
            (CubeState::Labeled(a), CubeState::Labeled(b)) => (0..FACELETS).filter(|&i| a[i] != b[i]).collect(),
            _ => (0..FACELETS).filter(|&i| self.color_at(i) != other.color_at(i)).collect(),
        }
    }

    fn token(&self, facelet: usize) -> String {
        match self {
            CubeState::Labeled(h) => Sticker::from_home(h[facelet] as usize).to_string(),
            CubeState::Colored(c) => c[facelet].letter().to_string(),
        }
    }
}

/// Six blocks of four lines in face order U, L, F, R, B, D, separated by
/// blank lines. Lines starting with `#` are skipped when parsing.
impl fmt::Display for CubeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for face in 0..6 {
            if face > 0 {
                writeln!(f)?;
            }
            for row in 0..4 {
                let line: Vec<String> = (0..4).map(|col| self.token(16 * face + 4 * row + col)).collect();
                writeln!(f, "{}", line.join(" "))?;
            }
        }
        Ok(())
    }
}

impl FromStr for CubeState {
    type Err = CubeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut tokens: Vec<(usize, &str)> = Vec::with_capacity(FACELETS);
        let mut rows = 0;
        let mut blank_run = true;
        for (k, line) in text.lines().enumerate() {
            let lineno = k + 1;
            if line.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                blank_run = true;
                continue;
            }
            if rows % 4 == 0 && !blank_run && rows > 0 {
                return Err(CubeError::Format {
                    line: lineno,
                    message: "expected a blank line between faces".into(),
                });
            }
            if rows % 4 != 0 && blank_run {
                return Err(CubeError::Format {
                    line: lineno,
                    message: "face block has fewer than 4 rows".into(),
                });
            }
            blank_run = false;
            if fields.len() != 4 {
                return Err(CubeError::Format {
                    line: lineno,
                    message: format!("expected 4 tokens, found {}", fields.len()),
                });
            }
            rows += 1;
            if rows > 24 {
                return Err(CubeError::Format {
                    line: lineno,
                    message: "more than 6 faces".into(),
                });
            }
            tokens.extend(fields.into_iter().map(|t| (lineno, t)));
        }
        if rows != 24 {
            return Err(CubeError::Format {
                line: text.lines().count(),
                message: format!("expected 24 rows, found {rows}"),
            });
        }

        let colored = tokens.iter().all(|(_, t)| t.len() == 1);
        if colored {
            let mut colors = Vec::with_capacity(FACELETS);
            for &(line, t) in &tokens {
                let c = t.chars().next().and_then(Color::from_letter).ok_or_else(|| CubeError::Format {
                    line,
                    message: format!("bad color `{t}`"),
                })?;
                colors.push(c);
            }
            CubeState::from_colors(colors)
        } else {
            let mut homes = Vec::with_capacity(FACELETS);
            for &(line, t) in &tokens {
                let s: Sticker = t.parse().map_err(|message| CubeError::Format { line, message })?;
                homes.push(s.home() as u8);
            }
            CubeState::from_homes(homes)
        }
    }
}
