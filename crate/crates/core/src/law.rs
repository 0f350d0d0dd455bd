//! First-law validity checks for the Revenge and the 3×3×3 cube.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::config::{Configuration, Configuration3, EdgeOccupancy};
use crate::cube::geometry::EDGE_SLOTS;
use crate::perm::Permutation;

/// Condition 1: `sgn(σ) = sgn(ρ)` (Revenge) or `sgn(σ) = sgn(τ)` (3×3×3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityCheck {
    pub pass: bool,
    pub corner_sign: i8,
    pub other_sign: i8,
}

/// Condition 2: `Σ x ≡ 0 (mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistCheck {
    pub pass: bool,
    pub sum_mod3: u8,
}

/// Condition 3 of the Revenge law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCheck {
    pub pass: bool,
    pub violations: Vec<EdgeOccupancy>,
}

/// Condition 3 of the 3×3×3 law: `Σ y ≡ 0 (mod 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipCheck {
    pub pass: bool,
    pub sum_mod2: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub condition1: ParityCheck,
    pub condition2: TwistCheck,
    pub condition3: EdgeCheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict3 {
    pub valid: bool,
    pub condition1: ParityCheck,
    pub condition2: TwistCheck,
    pub condition3: FlipCheck,
}

fn machine_line(valid: bool, c1: bool, c2: bool, c3: bool) -> String {
    format!("valid={valid} c1={c1} c2={c2} c3={c3}")
}

impl Verdict {
    pub fn machine_line(&self) -> String {
        machine_line(self.valid, self.condition1.pass, self.condition2.pass, self.condition3.pass)
    }

    /// Indices (1, 2, 3) of the failing conditions.
    pub fn failed(&self) -> Vec<u8> {
        [self.condition1.pass, self.condition2.pass, self.condition3.pass]
            .iter()
            .zip(1..)
            .filter(|(pass, _)| !**pass)
            .map(|(_, k)| k)
            .collect()
    }
}

impl Verdict3 {
    pub fn machine_line(&self) -> String {
        machine_line(self.valid, self.condition1.pass, self.condition2.pass, self.condition3.pass)
    }
}

fn mark(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c1 = &self.condition1;
        writeln!(
            f,
            "condition 1 (sgn sigma = sgn rho): {} (sgn sigma = {:+}, sgn rho = {:+})",
            mark(c1.pass),
            c1.corner_sign,
            c1.other_sign
        )?;
        writeln!(
            f,
            "condition 2 (sum x = 0 mod 3): {} (sum = {} mod 3)",
            mark(self.condition2.pass),
            self.condition2.sum_mod3
        )?;
        let v: Vec<String> = self.condition3.violations.iter().map(|o| o.to_string()).collect();
        if v.is_empty() {
            writeln!(f, "condition 3 (y = 1 - delta): ok")?;
        } else {
            writeln!(f, "condition 3 (y = 1 - delta): FAIL at {}", v.join(" "))?;
        }
        writeln!(f, "{}", self.machine_line())
    }
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c1 = &self.condition1;
        writeln!(
            f,
            "condition i (sgn sigma = sgn tau): {} (sgn sigma = {:+}, sgn tau = {:+})",
            mark(c1.pass),
            c1.corner_sign,
            c1.other_sign
        )?;
        writeln!(
            f,
            "condition ii (sum x = 0 mod 3): {} (sum = {} mod 3)",
            mark(self.condition2.pass),
            self.condition2.sum_mod3
        )?;
        writeln!(
            f,
            "condition iii (sum y = 0 mod 2): {} (sum = {} mod 2)",
            mark(self.condition3.pass),
            self.condition3.sum_mod2
        )?;
        writeln!(f, "{}", self.machine_line())
    }
}

fn parity(corners: &Permutation, other: &Permutation) -> ParityCheck {
    let (a, b) = (corners.sign(), other.sign());
    ParityCheck {
        pass: a == b,
        corner_sign: a,
        other_sign: b,
    }
}

fn twist(x: &[u8]) -> TwistCheck {
    let s = (x.iter().map(|&v| v as u32).sum::<u32>() % 3) as u8;
    TwistCheck { pass: s == 0, sum_mod3: s }
}

pub fn check_revenge(c: &Configuration) -> Verdict {
    let violations: Vec<EdgeOccupancy> = c
        .edge_occupancy()
        .into_iter()
        .filter(|o| o.orientation != o.expected_orientation())
        .collect();
    let condition1 = parity(&c.sigma, &c.rho);
    let condition2 = twist(&c.x);
    let condition3 = EdgeCheck {
        pass: violations.is_empty(),
        violations,
    };
    Verdict {
        valid: condition1.pass && condition2.pass && condition3.pass,
        condition1,
        condition2,
        condition3,
    }
}

pub fn check_cube3(c: &Configuration3) -> Verdict3 {
    let condition1 = parity(&c.sigma, &c.tau);
    let condition2 = twist(&c.x);
    let flips = (c.y.iter().map(|&v| v as u32).sum::<u32>() % 2) as u8;
    let condition3 = FlipCheck {
        pass: flips == 0,
        sum_mod2: flips,
    };
    Verdict3 {
        valid: condition1.pass && condition2.pass && condition3.pass,
        condition1,
        condition2,
        condition3,
    }
}

/// Orbit invariants of a configuration under the move group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvariantSignature {
    /// `sgn(σ)·sgn(ρ)`.
    pub parity_product: i8,
    /// `Σ x mod 3`.
    pub twist_sum: u8,
    /// Bit `e` set iff edge `e` breaks the edge law in the sub-slot it
    /// occupies. Indexed by edge, so the defect travels with the cubie.
    pub edge_defect: u32,
}

impl InvariantSignature {
    pub const TRIVIAL: InvariantSignature = InvariantSignature {
        parity_product: 1,
        twist_sum: 0,
        edge_defect: 0,
    };
}

pub fn signature(c: &Configuration) -> InvariantSignature {
    let occupancy = c.edge_occupancy();
    let edge_defect = (0..EDGE_SLOTS)
        .filter(|&e| {
            let o = occupancy[c.tau.image(e)];
            o.orientation != o.expected_orientation()
        })
        .fold(0u32, |acc, e| acc | (1 << e));
    InvariantSignature {
        parity_product: c.sigma.sign() * c.rho.sign(),
        twist_sum: twist(&c.x).sum_mod3,
        edge_defect,
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// `|S_Conf| = (24!)²·2²⁴·3⁸·8!`.
pub fn config_space_size() -> BigUint {
    factorial(24).pow(2) * BigUint::from(2u32).pow(24) * BigUint::from(3u32).pow(8) * factorial(8)
}

/// Number of orbits of the move group on the configuration space, `2·3·2²⁴`.
pub fn orbit_count() -> u64 {
    2 * 3 * (1 << 24)
}

/// `|S_Conf| / N`, which equals `(24!)²·8!·3⁷/2`.
pub fn group_order_closed_form() -> BigUint {
    config_space_size() / BigUint::from(orbit_count())
}

/// `(24!)²·8!·3⁷/2`, written out directly.
pub fn group_order_formula() -> BigUint {
    factorial(24).pow(2) * factorial(8) * BigUint::from(3u32).pow(7) / 2u32
}

/// Uniform random configuration satisfying the first law.
pub fn random_valid<R: Rng + ?Sized>(rng: &mut R) -> Configuration {
    let mut c = Configuration::random(rng);
    if c.sigma.sign() != c.rho.sign() {
        let mut images: Vec<usize> = c.rho.images().collect();
        images.swap(0, 1);
        c.rho = Permutation::from_images(images).unwrap();
    }
    let partial: u32 = c.x[..7].iter().map(|&v| v as u32).sum();
    c.x[7] = ((3 - partial % 3) % 3) as u8;
    for (j, o) in c.edge_occupancy().iter().enumerate() {
        c.y[j] = o.expected_orientation();
    }
    c
}
