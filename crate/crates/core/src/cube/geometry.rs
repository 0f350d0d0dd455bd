//! Facelet coordinates, slot tables and rotations of the 4×4×4 cube.
//!
//! Cubie centres live on the doubled grid `{-3, -1, 1, 3}³`; x points right,
//! y up and z towards the front. A facelet is a (cubie position, outward
//! normal) pair.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::perm::Permutation;

pub const FACELETS: usize = 96;
pub const CORNERS: usize = 8;
pub const EDGE_SLOTS: usize = 24;
pub const CENTERS: usize = 24;

pub type Vec3 = [i32; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    U,
    L,
    F,
    R,
    B,
    D,
}

impl Face {
    pub const ALL: [Face; 6] = [Face::U, Face::L, Face::F, Face::R, Face::B, Face::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn normal(self) -> Vec3 {
        match self {
            Face::U => [0, 1, 0],
            Face::L => [-1, 0, 0],
            Face::F => [0, 0, 1],
            Face::R => [1, 0, 0],
            Face::B => [0, 0, -1],
            Face::D => [0, -1, 0],
        }
    }

    pub fn from_normal(n: Vec3) -> Face {
        *Face::ALL
            .iter()
            .find(|f| f.normal() == n)
            .expect("axis-aligned unit normal")
    }

    pub fn color(self) -> Color {
        match self {
            Face::U => Color::White,
            Face::L => Color::Green,
            Face::F => Color::Red,
            Face::R => Color::Blue,
            Face::B => Color::Orange,
            Face::D => Color::Yellow,
        }
    }

    /// Faces whose stickers carry orientation number 0 for corners.
    pub fn is_up_down(self) -> bool {
        matches!(self, Face::U | Face::D)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Yellow,
    Red,
    Orange,
    Green,
    Blue,
}

impl Color {
    pub fn letter(self) -> char {
        match self {
            Color::White => 'W',
            Color::Yellow => 'Y',
            Color::Red => 'R',
            Color::Orange => 'O',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        Some(match c {
            'W' => Color::White,
            'Y' => Color::Yellow,
            'R' => Color::Red,
            'O' => Color::Orange,
            'G' => Color::Green,
            'B' => Color::Blue,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CubieKind {
    Corner,
    Edge,
    Center,
}

/// Position and outward normal of a facelet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Facelet {
    pub position: Vec3,
    pub normal: Vec3,
}

impl Facelet {
    pub fn face(&self) -> Face {
        Face::from_normal(self.normal)
    }

    pub fn kind(&self) -> CubieKind {
        match self.position.iter().filter(|c| c.abs() == 3).count() {
            3 => CubieKind::Corner,
            2 => CubieKind::Edge,
            _ => CubieKind::Center,
        }
    }
}

/// Sub-slot type of an edge position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeType {
    A,
    B,
}

impl EdgeType {
    pub fn of_index(slot: usize) -> EdgeType {
        if slot.is_multiple_of(2) {
            EdgeType::A
        } else {
            EdgeType::B
        }
    }

    pub fn letter(self) -> char {
        match self {
            EdgeType::A => 'a',
            EdgeType::B => 'b',
        }
    }
}

/// Fixed tables derived once from the geometric model.
pub struct Geometry {
    pub facelets: Vec<Facelet>,
    lookup: HashMap<(Vec3, Vec3), usize>,
    /// Facelets of each corner slot: U/D facelet first, then clockwise as
    /// seen from outside along the corner diagonal.
    pub corner_slots: [[usize; 3]; CORNERS],
    /// Facelets of each edge sub-slot, reference facelet first. Sub-slots are
    /// linearised 1a, 1b, 2a, .., 12b.
    pub edge_slots: [[usize; 2]; EDGE_SLOTS],
    /// Centre facelets in facelet-index order.
    pub center_slots: [usize; CENTERS],
    /// `slot_of[f]` = (kind, slot index, sticker position within the slot).
    pub slot_of: [(CubieKind, usize, usize); FACELETS],
}

pub fn geometry() -> &'static Geometry {
    static GEOMETRY: OnceLock<Geometry> = OnceLock::new();
    GEOMETRY.get_or_init(Geometry::build)
}

fn coord(k: usize) -> i32 {
    2 * k as i32 - 3
}

/// Position of facelet (row, col) of `face` in the unfolded net with U above
/// F and L, F, R, B in a strip.
fn facelet_position(face: Face, row: usize, col: usize) -> Vec3 {
    let (r, c) = (coord(row), coord(col));
    match face {
        Face::U => [c, 3, r],
        Face::L => [-3, -r, c],
        Face::F => [c, -r, 3],
        Face::R => [3, -r, -c],
        Face::B => [-c, -r, -3],
        Face::D => [c, -3, -r],
    }
}

pub fn dot(a: Vec3, b: Vec3) -> i32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn det(a: Vec3, b: Vec3, c: Vec3) -> i32 {
    dot(a, cross(b, c))
}

/// Quarter turn about `axis`, clockwise when looking at the cube from the
/// `axis` side.
pub fn rotate_clockwise(axis: Vec3, v: Vec3) -> Vec3 {
    let d = dot(v, axis);
    let c = cross(axis, v);
    [d * axis[0] - c[0], d * axis[1] - c[1], d * axis[2] - c[2]]
}

/// Sign vectors of corner slots 1..8: UFL, UBL, UBR, UFR, DFL, DFR, DBR, DBL.
const CORNER_SIGNS: [Vec3; CORNERS] = [
    [-1, 1, 1],
    [-1, 1, -1],
    [1, 1, -1],
    [1, 1, 1],
    [-1, -1, 1],
    [1, -1, 1],
    [1, -1, -1],
    [-1, -1, -1],
];

/// Faces of numbered edge positions 1..12: UF, UL, UB, UR, FL, BL, BR, FR,
/// DF, DR, DB, DL.
const EDGE_POSITIONS: [(Face, Face); 12] = [
    (Face::U, Face::F),
    (Face::U, Face::L),
    (Face::U, Face::B),
    (Face::U, Face::R),
    (Face::F, Face::L),
    (Face::B, Face::L),
    (Face::B, Face::R),
    (Face::F, Face::R),
    (Face::D, Face::F),
    (Face::D, Face::R),
    (Face::D, Face::B),
    (Face::D, Face::L),
];

impl Geometry {
    fn build() -> Self {
        let mut facelets = Vec::with_capacity(FACELETS);
        for face in Face::ALL {
            for row in 0..4 {
                for col in 0..4 {
                    facelets.push(Facelet {
                        position: facelet_position(face, row, col),
                        normal: face.normal(),
                    });
                }
            }
        }
        let lookup: HashMap<_, _> = facelets
            .iter()
            .enumerate()
            .map(|(i, f)| ((f.position, f.normal), i))
            .collect();
        let find = |p: Vec3, n: Vec3| lookup[&(p, n)];

        let mut corner_slots = [[0; 3]; CORNERS];
        for (slot, signs) in CORNER_SIGNS.iter().enumerate() {
            let p = signs.map(|s| 3 * s);
            let axes: Vec<Vec3> = (0..3)
                .map(|k| {
                    let mut n = [0; 3];
                    n[k] = signs[k];
                    n
                })
                .collect();
            let n0 = axes[1];
            let (mut n1, mut n2) = (axes[0], axes[2]);
            // clockwise from outside: det(n0, n1, n2) = -1
            if det(n0, n1, n2) != -1 {
                std::mem::swap(&mut n1, &mut n2);
            }
            corner_slots[slot] = [find(p, n0), find(p, n1), find(p, n2)];
        }

        let mut edge_slots = [[0; 2]; EDGE_SLOTS];
        for (k, &(reference, other)) in EDGE_POSITIONS.iter().enumerate() {
            let (nr, no) = (reference.normal(), other.normal());
            let axis = cross(nr, no);
            let wing = |offset: i32| -> Vec3 {
                [0, 1, 2].map(|i| 3 * nr[i] + 3 * no[i] + offset * axis[i])
            };
            // slot a has chirality det(n_ref, n_other, p) = +1
            let (pa, pb) = if det(nr, no, wing(1)) == 1 {
                (wing(1), wing(-1))
            } else {
                (wing(-1), wing(1))
            };
            edge_slots[2 * k] = [find(pa, nr), find(pa, no)];
            edge_slots[2 * k + 1] = [find(pb, nr), find(pb, no)];
        }

        let mut center_slots = [0; CENTERS];
        let centers = (0..FACELETS).filter(|&i| facelets[i].kind() == CubieKind::Center);
        for (k, f) in centers.enumerate() {
            center_slots[k] = f;
        }

        let mut slot_of = [(CubieKind::Center, 0, 0); FACELETS];
        for (s, fs) in corner_slots.iter().enumerate() {
            for (k, &f) in fs.iter().enumerate() {
                slot_of[f] = (CubieKind::Corner, s, k);
            }
        }
        for (s, fs) in edge_slots.iter().enumerate() {
            for (k, &f) in fs.iter().enumerate() {
                slot_of[f] = (CubieKind::Edge, s, k);
            }
        }
        for (s, &f) in center_slots.iter().enumerate() {
            slot_of[f] = (CubieKind::Center, s, 0);
        }

        Self {
            facelets,
            lookup,
            corner_slots,
            edge_slots,
            center_slots,
            slot_of,
        }
    }

    pub fn index_of(&self, position: Vec3, normal: Vec3) -> Option<usize> {
        self.lookup.get(&(position, normal)).copied()
    }

    /// Facelet permutation of a clockwise quarter turn about `axis` of every
    /// cubie accepted by `in_slice`.
    pub fn turn(&self, axis: Vec3, in_slice: impl Fn(Vec3) -> bool) -> Permutation {
        let images = self
            .facelets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if in_slice(f.position) {
                    let p = rotate_clockwise(axis, f.position);
                    let n = rotate_clockwise(axis, f.normal);
                    self.lookup[&(p, n)]
                } else {
                    i
                }
            })
            .collect();
        Permutation::from_images(images).expect("rotation is a bijection")
    }

    pub fn facelets_of_kind(&self, kind: CubieKind) -> Vec<usize> {
        (0..FACELETS)
            .filter(|&i| self.facelets[i].kind() == kind)
            .collect()
    }

    pub fn face_of(&self, facelet: usize) -> Face {
        self.facelets[facelet].face()
    }
}

/// The 24 whole-cube rotations as facelet permutations, identity first.
pub fn cube_rotations() -> &'static [Permutation] {
    static ROTATIONS: OnceLock<Vec<Permutation>> = OnceLock::new();
    ROTATIONS.get_or_init(|| {
        let g = geometry();
        let gens: Vec<Permutation> = [Face::R, Face::U, Face::F]
            .iter()
            .map(|f| g.turn(f.normal(), |_| true))
            .collect();
        let mut all = vec![Permutation::identity(FACELETS)];
        let mut k = 0;
        while k < all.len() {
            for s in &gens {
                let next = all[k].then(s);
                if !all.contains(&next) {
                    all.push(next);
                }
            }
            k += 1;
        }
        all
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facelet_counts() {
        let g = geometry();
        assert_eq!(g.facelets.len(), 96);
        assert_eq!(g.facelets_of_kind(CubieKind::Corner).len(), 24);
        assert_eq!(g.facelets_of_kind(CubieKind::Edge).len(), 48);
        assert_eq!(g.facelets_of_kind(CubieKind::Center).len(), 24);
        for (i, f) in g.facelets.iter().enumerate() {
            assert_eq!(f.face().index(), i / 16);
            assert_eq!(dot(f.position, f.normal), 3);
        }
    }

    #[test]
    fn net_layout_corners_of_faces() {
        let g = geometry();
        // U row 3 col 0 touches F and L; F row 0 col 0 touches U and L
        assert_eq!(g.facelets[12].position, [-3, 3, 3]);
        assert_eq!(g.facelets[32].position, [-3, 3, 3]);
        // R row 0 col 0 sits next to F
        assert_eq!(g.facelets[48].position, [3, 3, 3]);
        // D row 0 col 0 sits under F's bottom-left
        assert_eq!(g.facelets[80].position, [-3, -3, 3]);
        // L row 0 col 3 sits next to F
        assert_eq!(g.facelets[19].position, [-3, 3, 3]);
        // B row 0 col 0 sits next to R's right column
        assert_eq!(g.facelets[64].position, [3, 3, -3]);
    }

    #[test]
    fn every_slot_table_is_a_partition() {
        let g = geometry();
        let mut seen = [false; FACELETS];
        for f in g.corner_slots.iter().flatten().chain(g.edge_slots.iter().flatten()).chain(g.center_slots.iter()) {
            assert!(!seen[*f]);
            seen[*f] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn corner_slot_one_is_white_red_green() {
        let g = geometry();
        let colors: Vec<Color> = g.corner_slots[0].iter().map(|&f| g.face_of(f).color()).collect();
        assert_eq!(colors[0], Color::White);
        let mut rest = colors[1..].to_vec();
        rest.sort();
        assert_eq!(rest, vec![Color::Red, Color::Green]);
    }

    #[test]
    fn corner_reference_facelets_are_up_or_down() {
        let g = geometry();
        for s in 0..4 {
            assert_eq!(g.face_of(g.corner_slots[s][0]), Face::U);
            assert_eq!(g.face_of(g.corner_slots[s + 4][0]), Face::D);
        }
        // UFR clockwise from outside: U, R, F
        let ufr: Vec<Face> = g.corner_slots[3].iter().map(|&f| g.face_of(f)).collect();
        assert_eq!(ufr, vec![Face::U, Face::R, Face::F]);
    }

    #[test]
    fn edge_reference_facelet_priority() {
        let g = geometry();
        for (s, fs) in g.edge_slots.iter().enumerate() {
            let (r, o) = (g.face_of(fs[0]), g.face_of(fs[1]));
            let is_ref = |f: Face| matches!(f, Face::U | Face::D | Face::F | Face::B);
            assert!(is_ref(r), "slot {s}");
            if r.is_up_down() {
                assert!(!o.is_up_down());
            } else {
                assert!(!is_ref(o), "slot {s} has two reference faces");
            }
        }
    }

    #[test]
    fn edge_a_slots_follow_traversal_rule_on_u_and_d() {
        let g = geometry();
        let pos = |s: usize| g.facelets[g.edge_slots[s][0]].position;
        // U layer: 1a UF x=+1, 2a UL z=+1, 3a UB x=-1, 4a UR z=-1
        assert_eq!(pos(0), [1, 3, 3]);
        assert_eq!(pos(2), [-3, 3, 1]);
        assert_eq!(pos(4), [-1, 3, -3]);
        assert_eq!(pos(6), [3, 3, -1]);
        // D layer: 9a DF x=-1, 10a DR z=+1, 11a DB x=+1, 12a DL z=-1
        assert_eq!(pos(16), [-1, -3, 3]);
        assert_eq!(pos(18), [3, -3, 1]);
        assert_eq!(pos(20), [1, -3, -3]);
        assert_eq!(pos(22), [-3, -3, -1]);
        // equator, by chirality: 5a FL lower, 6a BL upper, 7a BR lower, 8a FR upper
        assert_eq!(pos(8), [-3, -1, 3]);
        assert_eq!(pos(10), [-3, 1, -3]);
        assert_eq!(pos(12), [3, -1, -3]);
        assert_eq!(pos(14), [3, 1, 3]);
    }

    #[test]
    fn twenty_four_rotations() {
        let rots = cube_rotations();
        assert_eq!(rots.len(), 24);
        assert!(rots[0].is_identity());
    }
}
