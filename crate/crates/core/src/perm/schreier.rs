use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;

use super::{PermError, Permutation};

/// One level of the stabilizer chain.
#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    /// Indices into `Bsgs::strong_generators` of the generators fixing every
    /// earlier base point.
    generators: Vec<usize>,
    /// Orbit of the base point, in discovery order.
    orbit: Vec<usize>,
    /// `transversal[pt] = (u, u⁻¹)` with `u(base_point) = pt`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
    /// (orbit point, generator index) pairs whose Schreier generator is known
    /// to sift through the deeper levels.
    checked: HashSet<(u32, u32)>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some((Permutation::identity(degree), Permutation::identity(degree)));
        Self {
            base_point,
            generators: Vec::new(),
            orbit: vec![base_point],
            transversal,
            checked: HashSet::new(),
        }
    }

    /// Closes the orbit after generator `new_gen` was appended, keeping
    /// existing representatives untouched.
    fn extend_orbit(&mut self, gens: &[Permutation], new_gen: usize) {
        let old = self.orbit.len();
        for k in 0..old {
            self.visit(gens, self.orbit[k], new_gen);
        }
        let mut k = old;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for j in 0..self.generators.len() {
                self.visit(gens, pt, self.generators[j]);
            }
            k += 1;
        }
    }

    fn visit(&mut self, gens: &[Permutation], pt: usize, gi: usize) {
        let g = &gens[gi];
        let img = g.image(pt);
        if self.transversal[img].is_none() {
            let u = self.transversal[pt].as_ref().unwrap().0.then(g);
            let inv = u.inverse();
            self.transversal[img] = Some((u, inv));
            self.orbit.push(img);
        }
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Debug, Clone)]
pub struct Bsgs {
    degree: usize,
    strong_generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Deterministic Schreier–Sims. New base points are always the smallest
    /// point moved by the element that needs them.
    pub fn new(generators: &[Permutation]) -> Result<Self, PermError> {
        let Some(first) = generators.first() else {
            return Err(PermError::NoGenerators);
        };
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }

        let mut bsgs = Self {
            degree,
            strong_generators: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() || bsgs.strong_generators.contains(g) {
                continue;
            }
            let depth = bsgs
                .levels
                .iter()
                .position(|l| g.image(l.base_point) != l.base_point)
                .unwrap_or(bsgs.levels.len());
            bsgs.insert_generator(g.clone(), depth);
        }
        bsgs.complete();
        Ok(bsgs)
    }

    /// Adds `g` as a strong generator. `g` fixes the first `depth` base
    /// points; a new base point is appended when `depth` is the chain length.
    fn insert_generator(&mut self, g: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let pt = g.smallest_moved_point().expect("non-identity generator");
            self.levels.push(Level::new(pt, self.degree));
        }
        let idx = self.strong_generators.len();
        self.strong_generators.push(g);
        for level in &mut self.levels[..=depth] {
            level.generators.push(idx);
            level.extend_orbit(&self.strong_generators, idx);
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            match self.find_schreier_residue(level) {
                Some((residue, depth)) => {
                    self.insert_generator(residue, depth);
                    i = depth + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Sifts the unchecked Schreier generators of `level` through the deeper
    /// levels and returns the first nontrivial residue with its depth.
    fn find_schreier_residue(&mut self, level: usize) -> Option<(Permutation, usize)> {
        let mut k = 0;
        while k < self.levels[level].orbit.len() {
            let pt = self.levels[level].orbit[k];
            let mut j = 0;
            while j < self.levels[level].generators.len() {
                let gi = self.levels[level].generators[j];
                j += 1;
                let key = (pt as u32, gi as u32);
                if !self.levels[level].checked.insert(key) {
                    continue;
                }
                let lv = &self.levels[level];
                let g = &self.strong_generators[gi];
                let img = g.image(pt);
                let (u_pt, _) = lv.transversal[pt].as_ref().unwrap();
                let (u_img, u_img_inv) = lv.transversal[img].as_ref().unwrap();
                let h = u_pt.then(g);
                if &h == u_img {
                    continue;
                }
                let h = h.then(u_img_inv);
                let (residue, depth) = self.sift(h, level + 1);
                if !residue.is_identity() {
                    return Some((residue, depth));
                }
            }
            k += 1;
        }
        None
    }

    /// Strips `h` through the chain starting at `from`. Returns the residue
    /// and the level where stripping stopped (`levels.len()` if it ran through).
    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let pt = h.image(level.base_point);
            match &level.transversal[pt] {
                Some((_, inv)) => h = h.then(inv),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_generators
    }

    /// Orbit lengths of the base points, top level first.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Representative `u` with `u(base[level]) = point`, if `point` lies in
    /// that level's orbit.
    pub fn transversal(&self, level: usize, point: usize) -> Option<&Permutation> {
        self.levels.get(level)?.transversal.get(point)?.as_ref().map(|(u, _)| u)
    }

    /// Exact group order: the product of the basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strips `h` through the levels in `levels` only. `None` if some image
    /// leaves a basic orbit.
    pub fn strip(&self, mut h: Permutation, levels: std::ops::Range<usize>) -> Option<Permutation> {
        for level in &self.levels[levels] {
            let (_, inv) = level.transversal[h.image(level.base_point)].as_ref()?;
            h = h.then(inv);
        }
        Some(h)
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, PermError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        let (residue, depth) = self.sift(p.clone(), 0);
        Ok(depth == self.levels.len() && residue.is_identity())
    }
}

/// Builds the stabilizer chain of the group generated by `generators`.
pub fn schreier_sims(generators: &[Permutation]) -> Result<Bsgs, PermError> {
    Bsgs::new(generators)
}
