//! Finite permutations and a deterministic Schreier–Sims engine.
//!
//! Permutations act on `0..degree`. Composition reads left to right:
//! `p.then(&q)` sends `i` to `q(p(i))`, so the move word `R U` maps to
//! `φ(R).then(&φ(U))`.

mod schreier;

use std::fmt;

use thiserror::Error;

pub use schreier::{schreier_sims, Bsgs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a bijection: point {0} is repeated or out of range")]
    NotBijective(usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("subset is not invariant: generator {generator} sends point {point} outside of it")]
    NotInvariant { generator: usize, point: usize },
    #[error("subset point {0} is out of range or repeated")]
    BadSubset(usize),
}

/// A bijection of `{0, .., degree - 1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(i));
            }
            seen[i] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree || touched[p] {
                    return Err(PermError::NotBijective(p));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(degree);
        p.images.swap(a, b);
        p
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked form of [`Permutation::compose`]; panics on a degree mismatch.
    #[inline]
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Self { images }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two. Each cycle starts at its
    /// smallest point and cycles are sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted lengths of the nontrivial cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.degree()];
        let mut cycles = 0usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image(p);
            }
        }
        if (self.degree() - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            let len = c.len() as u64;
            acc / gcd(acc, len) * len
        })
    }

    pub fn moved_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i)
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.moved_points().next()
    }

    /// The action on `subset`, renumbered by position in `subset`. The
    /// caller guarantees invariance; see [`restrict`] for the checked form.
    fn restrict_unchecked(&self, index_of: &[Option<usize>], subset: &[usize]) -> Self {
        Self {
            images: subset
                .iter()
                .map(|&p| index_of[self.image(p)].expect("subset is invariant") as u32)
                .collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self)
    }
}

/// Cycle notation with 0-indexed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Restricts every generator to `subset`, renumbering points by their
/// position in `subset`.
pub fn restrict(generators: &[Permutation], subset: &[usize]) -> Result<Vec<Permutation>, PermError> {
    let Some(first) = generators.first() else {
        return Err(PermError::NoGenerators);
    };
    let degree = first.degree();
    let mut index_of = vec![None; degree];
    for (k, &p) in subset.iter().enumerate() {
        if p >= degree || index_of[p].is_some() {
            return Err(PermError::BadSubset(p));
        }
        index_of[p] = Some(k);
    }
    for (gi, g) in generators.iter().enumerate() {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        if let Some(&point) = subset.iter().find(|&&p| index_of[g.image(p)].is_none()) {
            return Err(PermError::NotInvariant {
                generator: gi,
                point,
            });
        }
    }
    Ok(generators
        .iter()
        .map(|g| g.restrict_unchecked(&index_of, subset))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    /// All 6 elements of S3 as image tables.
    fn s3() -> Vec<[usize; 3]> {
        vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
    }

    #[test]
    fn compose_matches_s3_table() {
        // oracle: (p ; q)(i) = q[p[i]] evaluated directly on the tables
        for a in s3() {
            for b in s3() {
                let expected: Vec<usize> = (0..3).map(|i| b[a[i]]).collect();
                assert_eq!(p(&a).compose(&p(&b)).unwrap(), p(&expected));
            }
        }
    }

    #[test]
    fn compose_three_cycle_with_transposition() {
        // (0 1 2) then (0 1): 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let r = c.compose(&t).unwrap();
        assert_eq!(r.cycles(), vec![vec![1, 2]]);
        assert_eq!(r.image(0), 0);
    }

    #[test]
    fn identity_and_inverse() {
        let q = p(&[2, 0, 3, 1]);
        let id = Permutation::identity(4);
        assert_eq!(id.compose(&q).unwrap(), q);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
        assert!(q.inverse().compose(&q).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert_eq!(err, Err(PermError::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn sign_and_order() {
        assert_eq!(Permutation::identity(5).sign(), 1);
        assert_eq!(Permutation::identity(5).order(), 1);
        let four = Permutation::from_cycles(6, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(four.sign(), -1);
        assert_eq!(four.order(), 4);
        let three = Permutation::from_cycles(6, &[&[5, 1, 3]]).unwrap();
        assert_eq!(three.sign(), 1);
        assert_eq!(three.order(), 3);
        let mixed = Permutation::from_cycles(7, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(mixed.order(), 6);
        assert_eq!(mixed.sign(), -1);
    }

    #[test]
    fn cycles_canonical_form() {
        assert!(Permutation::identity(4).cycles().is_empty());
        let q = Permutation::from_cycles(8, &[&[6, 2, 4], &[5, 1]]).unwrap();
        assert_eq!(q.cycles(), vec![vec![1, 5], vec![2, 4, 6]]);
        assert_eq!(q.to_string(), "(1 5)(2 4 6)");
    }

    #[test]
    fn pow_matches_iteration() {
        let q = p(&[3, 0, 4, 1, 2, 5]);
        let mut acc = Permutation::identity(6);
        for k in 0..10 {
            assert_eq!(q.pow(k), acc);
            acc = acc.then(&q);
        }
    }

    #[test]
    fn restrict_renumbers_and_checks_invariance() {
        let g = Permutation::from_cycles(6, &[&[1, 3], &[0, 4, 5]]).unwrap();
        let r = restrict(std::slice::from_ref(&g), &[3, 1]).unwrap();
        assert_eq!(r[0], p(&[1, 0]));
        assert_eq!(restrict(&[Permutation::identity(6)], &[2, 5]).unwrap()[0], Permutation::identity(2));
        assert_eq!(
            restrict(&[g], &[0, 4]),
            Err(PermError::NotInvariant { generator: 0, point: 4 })
        );
    }
}
