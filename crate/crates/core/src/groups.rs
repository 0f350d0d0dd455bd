//! Computational checks of the structure of the move group: its order,
//! subgroup orders, commutator witnesses, orbit invariants and the
//! equivalence between the first law and membership.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::cube::geometry::{CENTERS, EDGE_SLOTS};
use crate::cube::{cube_rotations, geometry, random_word, CubeState, CubieKind, Generator, MoveSequence};
use crate::law::{check_revenge, group_order_closed_form, orbit_count, random_valid, signature, config_space_size};
use crate::perm::{restrict, Bsgs, Permutation};

/// One machine-readable verification result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check={} pass={}", self.name, self.pass)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

pub fn permutations_of(gens: &[Generator]) -> Vec<Permutation> {
    gens.iter().map(|g| g.permutation().clone()).collect()
}

/// Stabilizer chain of the group generated by the twelve slice turns.
pub fn move_group() -> &'static Bsgs {
    static BSGS: OnceLock<Bsgs> = OnceLock::new();
    BSGS.get_or_init(|| Bsgs::new(&permutations_of(&Generator::ALL)).expect("twelve generators"))
}

fn word(text: &str) -> MoveSequence {
    MoveSequence::parse(text).expect("built-in word")
}

/// `[[CF, CD], U⁻¹]`, expanded.
pub fn witness_z() -> MoveSequence {
    MoveSequence::commutator(&MoveSequence::commutator(&word("CF"), &word("CD")), &word("U'"))
}

/// `[CL⁻¹, [L, U⁻¹]]`, expanded.
pub fn witness_e() -> MoveSequence {
    MoveSequence::commutator(&word("CL'"), &MoveSequence::commutator(&word("L"), &word("U'")))
}

/// Cycle types of a facelet permutation at the cubie level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubieCycles {
    pub corners: Vec<usize>,
    pub edges: Vec<usize>,
    pub centers: Vec<usize>,
    pub twisted: bool,
    pub flipped: bool,
    /// Moved facelets by kind: corner, edge, center.
    pub moved: [usize; 3],
}

impl CubieCycles {
    pub fn of(p: &Permutation) -> Self {
        let c = Configuration::extract(&CubeState::from_facelet_permutation(p)).expect("moves keep cubies intact");
        let g = geometry();
        let mut moved = [0; 3];
        for f in p.moved_points() {
            let k = match g.facelets[f].kind() {
                CubieKind::Corner => 0,
                CubieKind::Edge => 1,
                CubieKind::Center => 2,
            };
            moved[k] += 1;
        }
        Self {
            corners: c.sigma.cycle_type(),
            edges: c.tau.cycle_type(),
            centers: c.rho.cycle_type(),
            twisted: c.x.iter().any(|&v| v != 0),
            flipped: c.y.iter().any(|&v| v != 0),
            moved,
        }
    }

    /// A 3-cycle of centres, nothing else moved.
    pub fn is_center_three_cycle(&self) -> bool {
        self.centers == [3] && self.moved == [0, 0, 3]
    }

    /// A 3-cycle of edge cubies; corner and centre facelets fixed.
    pub fn is_edge_three_cycle(&self) -> bool {
        self.edges == [3] && self.moved[0] == 0 && self.moved[2] == 0
    }
}

impl fmt::Display for CubieCycles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "corners={:?} edges={:?} centers={:?} twisted={} flipped={} moved={:?}",
            self.corners, self.edges, self.centers, self.twisted, self.flipped, self.moved
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub name: &'static str,
    pub word: MoveSequence,
    pub order: u64,
    pub structure: CubieCycles,
    pub matches_claim: bool,
}

pub fn witness_reports() -> Vec<WitnessReport> {
    let z = witness_z();
    let e = witness_e();
    let zp = z.permutation();
    let ep = e.permutation();
    let zs = CubieCycles::of(&zp);
    let es = CubieCycles::of(&ep);
    vec![
        WitnessReport {
            name: "z",
            order: zp.order(),
            matches_claim: zs.is_center_three_cycle() && zp.cycle_type() == [3],
            structure: zs,
            word: z,
        },
        WitnessReport {
            name: "e",
            order: ep.order(),
            matches_claim: es.is_edge_three_cycle(),
            structure: es,
            word: e,
        },
    ]
}

/// Conjugates `g z g⁻¹` and `g e g⁻¹` keep the shape of the witnesses.
pub fn verify_conjugates(trials: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = witness_z().permutation();
    let e = witness_e().permutation();
    for t in 0..trials {
        let g = random_word(&mut rng, 20).permutation();
        let gi = g.inverse();
        // word order g z g⁻¹ reads g first
        let cz = CubieCycles::of(&g.then(&z).then(&gi));
        let ce = CubieCycles::of(&g.then(&e).then(&gi));
        if !cz.is_center_three_cycle() || !ce.is_edge_three_cycle() {
            return Check::new("conjugates", false, format!("trial={t}"));
        }
    }
    Check::new("conjugates", true, format!("trials={trials}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    DirectBsgs,
    KernelQuotient,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::DirectBsgs => "direct-bsgs",
            Method::KernelQuotient => "kernel-quotient",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupReport {
    pub name: &'static str,
    pub computed_order: BigUint,
    pub expected_order: BigUint,
    pub method: Method,
}

impl SubgroupReport {
    pub fn pass(&self) -> bool {
        self.computed_order == self.expected_order
    }

    pub fn check(&self) -> Check {
        Check::new(
            self.name,
            self.pass(),
            format!(
                "method={} computed={} expected={}",
                self.method, self.computed_order, self.expected_order
            ),
        )
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Order of the group generated by all twelve turns and by the nine-turn
/// subset, both against the closed form.
pub fn verify_group_order() -> Vec<SubgroupReport> {
    let nine = Bsgs::new(&permutations_of(&Generator::NINE)).expect("nine generators");
    vec![
        SubgroupReport {
            name: "G",
            computed_order: move_group().order(),
            expected_order: group_order_closed_form(),
            method: Method::DirectBsgs,
        },
        SubgroupReport {
            name: "G_nine",
            computed_order: nine.order(),
            expected_order: group_order_closed_form(),
            method: Method::DirectBsgs,
        },
        SubgroupReport {
            name: "G_times_N",
            computed_order: move_group().order() * BigUint::from(orbit_count()),
            expected_order: config_space_size(),
            method: Method::DirectBsgs,
        },
    ]
}

fn facelets_without(kind: CubieKind) -> Vec<usize> {
    let g = geometry();
    (0..g.facelets.len()).filter(|&f| g.facelets[f].kind() != kind).collect()
}

/// Order of the group induced on `subset`.
pub fn image_order(subset: &[usize]) -> BigUint {
    let gens = restrict(&permutations_of(&Generator::ALL), subset).expect("kind classes are invariant");
    Bsgs::new(&gens).expect("nonempty").order()
}

/// Order of the subgroup fixing every facelet outside `kind`, as `|G| / |image|`.
pub fn kernel_order(kind: CubieKind) -> BigUint {
    let image = image_order(&facelets_without(kind));
    let g = move_group().order();
    assert!((&g % &image).is_zero(), "image order divides the group order");
    g / image
}

pub fn verify_subgroups() -> Vec<SubgroupReport> {
    let g = geometry();
    vec![
        SubgroupReport {
            name: "Z",
            computed_order: kernel_order(CubieKind::Center),
            expected_order: factorial(24) / 2u32,
            method: Method::KernelQuotient,
        },
        SubgroupReport {
            name: "E",
            computed_order: kernel_order(CubieKind::Edge),
            expected_order: factorial(24),
            method: Method::KernelQuotient,
        },
        SubgroupReport {
            name: "C.T",
            computed_order: kernel_order(CubieKind::Corner),
            expected_order: factorial(8) * BigUint::from(3u32).pow(7) / 2u32,
            method: Method::KernelQuotient,
        },
        SubgroupReport {
            name: "center_image",
            computed_order: image_order(&g.facelets_of_kind(CubieKind::Center)),
            expected_order: factorial(24),
            method: Method::DirectBsgs,
        },
        SubgroupReport {
            name: "edge_image",
            computed_order: image_order(&g.facelets_of_kind(CubieKind::Edge)),
            expected_order: factorial(24),
            method: Method::DirectBsgs,
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub trials: usize,
    pub counterexample: Option<String>,
    /// M₁ = {R, U, D, L} change no orientation bit.
    pub m1_keeps_y: bool,
    /// M₂ = {F, B, CR, CF, CU} flip exactly the sub-slots they move.
    pub m2_flips_moved: bool,
}

impl LemmaReport {
    pub fn checks(&self) -> Vec<Check> {
        vec![
            Check::new(
                "lemma_invariants",
                self.counterexample.is_none(),
                match &self.counterexample {
                    Some(c) => format!("trials={} counterexample={c}", self.trials),
                    None => format!("trials={}", self.trials),
                },
            ),
            Check::new("m1_keeps_y", self.m1_keeps_y, ""),
            Check::new("m2_flips_moved", self.m2_flips_moved, ""),
        ]
    }
}

pub const M1: [Generator; 4] = [Generator::R, Generator::U, Generator::D, Generator::L];
pub const M2: [Generator; 5] = [Generator::F, Generator::B, Generator::CR, Generator::CF, Generator::CU];

/// Orientation increments a generator adds to every sub-slot.
pub fn generator_flips(g: Generator) -> ([u8; EDGE_SLOTS], Permutation) {
    let c = Configuration::of_word(&MoveSequence::new(vec![crate::cube::Turn::new(g, 1)]));
    (c.y, c.tau)
}

fn m1_keeps_y() -> bool {
    M1.iter().all(|&g| generator_flips(g).0 == [0; EDGE_SLOTS])
}

fn m2_flips_moved() -> bool {
    M2.iter().all(|&g| {
        let (y, tau) = generator_flips(g);
        let moved = (0..EDGE_SLOTS).filter(|&j| tau.image(j) != j).count();
        (moved == 4 || moved == 8) && (0..EDGE_SLOTS).all(|j| (y[j] == 1) == (tau.image(j) != j))
    })
}

/// Random configuration followed by a random word: parity product, twist
/// sum and the edge-law defects must be unchanged.
pub fn verify_lemmas(trials: usize, seed: u64) -> LemmaReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexample = None;
    for t in 0..trials {
        let c = Configuration::random(&mut rng);
        let len = rng.random_range(1..=30);
        let w = random_word(&mut rng, len);
        let moved = c.then(&Configuration::of_word(&w));
        if signature(&c) != signature(&moved) {
            counterexample = Some(format!("trial {t}: word `{w}`"));
            break;
        }
    }
    LemmaReport {
        trials,
        counterexample,
        m1_keeps_y: m1_keeps_y(),
        m2_flips_moved: m2_flips_moved(),
    }
}

/// A valid configuration with exactly one condition broken.
pub fn break_one_condition<R: Rng + ?Sized>(rng: &mut R, condition: u8) -> Configuration {
    let mut c = random_valid(rng);
    match condition {
        1 => {
            let a = rng.random_range(0..CENTERS);
            let b = (a + rng.random_range(1..CENTERS)) % CENTERS;
            c.rho = Permutation::transposition(CENTERS, a, b).then(&c.rho);
        }
        2 => {
            let k = rng.random_range(0..8);
            c.x[k] = (c.x[k] + rng.random_range(1..3)) % 3;
        }
        _ => {
            let mask: u32 = rng.random_range(1..1u32 << EDGE_SLOTS);
            for j in 0..EDGE_SLOTS {
                c.y[j] ^= ((mask >> j) & 1) as u8;
            }
        }
    }
    c
}

pub fn single_edge_flip() -> Configuration {
    let mut c = Configuration::initial();
    c.y[0] = 1;
    c
}

pub fn single_center_transposition() -> Configuration {
    let mut c = Configuration::initial();
    c.rho = Permutation::transposition(CENTERS, 0, 1);
    c
}

/// The two members of pair 1 exchanged, both flipped.
pub fn pair_swap_double_flip() -> Configuration {
    let mut c = Configuration::initial();
    c.tau = Permutation::transposition(EDGE_SLOTS, 0, 1);
    c.y[0] = 1;
    c.y[1] = 1;
    c
}

pub fn is_member(c: &Configuration) -> bool {
    move_group().contains(&c.to_facelet_permutation()).expect("degree 96")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub samples: usize,
    pub valid_members: usize,
    /// Members among configurations breaking exactly one condition.
    pub invalid_members: usize,
    /// Samples where the verdict and membership disagree.
    pub disagreements: usize,
    pub single_edge_flip_member: bool,
    pub single_center_transposition_member: bool,
    pub pair_swap_member: bool,
}

impl MembershipReport {
    pub fn checks(&self) -> Vec<Check> {
        vec![
            Check::new(
                "valid_are_members",
                self.valid_members == self.samples,
                format!("members={}/{}", self.valid_members, self.samples),
            ),
            Check::new(
                "invalid_are_not_members",
                self.invalid_members == 0,
                format!("members={}/{}", self.invalid_members, self.samples),
            ),
            Check::new("verdict_matches_membership", self.disagreements == 0, format!("disagreements={}", self.disagreements)),
            Check::new("single_edge_flip", !self.single_edge_flip_member, format!("member={}", self.single_edge_flip_member)),
            Check::new(
                "single_center_transposition",
                !self.single_center_transposition_member,
                format!("member={}", self.single_center_transposition_member),
            ),
            Check::new("pair_swap_double_flip", self.pair_swap_member, format!("member={}", self.pair_swap_member)),
        ]
    }
}

/// `n` valid and `n` singly-broken configurations through the membership test.
pub fn verify_first_law_membership(n: usize, seed: u64) -> MembershipReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut valid_members = 0;
    let mut invalid_members = 0;
    let mut disagreements = 0;
    for k in 0..n {
        let good = random_valid(&mut rng);
        let bad = break_one_condition(&mut rng, (k % 3) as u8 + 1);
        for (c, tally) in [(good, &mut valid_members), (bad, &mut invalid_members)] {
            let member = is_member(&c);
            if member {
                *tally += 1;
            }
            if member != check_revenge(&c).valid {
                disagreements += 1;
            }
        }
    }
    MembershipReport {
        samples: n,
        valid_members,
        invalid_members,
        disagreements,
        single_edge_flip_member: is_member(&single_edge_flip()),
        single_center_transposition_member: is_member(&single_center_transposition()),
        pair_swap_member: is_member(&pair_swap_double_flip()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClReport {
    /// `L⁻¹ CR R = CL` as facelet permutations.
    pub literal: bool,
    /// `L⁻¹ CR R = CL · X` with `X = R CR CL⁻¹ L⁻¹`.
    pub modulo_rotation: bool,
    /// `X` is one of the 24 whole-cube rotations.
    pub rotation_is_rigid: bool,
    pub rotation_is_member: bool,
    pub nine_generate_all: bool,
}

impl ClReport {
    pub fn checks(&self) -> Vec<Check> {
        vec![
            Check::new("cl_literal_is_false", !self.literal, format!("literal={}", self.literal)),
            Check::new("cl_modulo_rotation", self.modulo_rotation, ""),
            Check::new("rotation_is_rigid", self.rotation_is_rigid, ""),
            Check::new("rotation_is_member", self.rotation_is_member, ""),
            Check::new("nine_generate_all", self.nine_generate_all, ""),
        ]
    }
}

pub fn verify_cl_relation() -> ClReport {
    let lhs = word("L' CR R").permutation();
    let cl = Generator::CL.permutation();
    let x = word("R CR CL' L'").permutation();
    let nine = Bsgs::new(&permutations_of(&Generator::NINE)).expect("nine generators");
    ClReport {
        literal: &lhs == cl,
        modulo_rotation: lhs == cl.then(&x),
        rotation_is_rigid: cube_rotations().contains(&x),
        rotation_is_member: move_group().contains(&x).expect("degree 96"),
        nine_generate_all: Generator::ALL
            .iter()
            .all(|g| nine.contains(g.permutation()).expect("degree 96"))
            && nine.order() == move_group().order(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_have_claimed_shape() {
        let r = witness_reports();
        assert!(r.iter().all(|w| w.matches_claim), "{r:?}");
        assert_eq!(r[0].order, 3);
        assert_eq!(r[0].word.len(), 10);
        assert_eq!(r[1].word.len(), 10);
        assert_eq!(r[1].structure.corners, Vec::<usize>::new());
        assert_eq!(r[1].structure.centers, Vec::<usize>::new());
    }

    #[test]
    fn witness_z_differs_from_solved_in_three_centres() {
        let solved = CubeState::solved(crate::cube::Mode::Labeled);
        let moved = crate::cube::apply(&solved, &witness_z());
        let diff = solved.differing_facelets(&moved);
        assert_eq!(diff.len(), 3);
        assert!(diff.iter().all(|&f| geometry().facelets[f].kind() == CubieKind::Center));
    }

    #[test]
    fn conjugates_keep_shape() {
        assert!(verify_conjugates(50, 6).pass);
    }

    #[test]
    fn orbit_invariants_hold() {
        let r = verify_lemmas(1000, 1);
        assert!(r.checks().iter().all(|c| c.pass), "{r:?}");
    }

    #[test]
    fn parity_under_single_turns() {
        let r = Configuration::of_word(&word("R"));
        assert_eq!((r.sigma.sign(), r.rho.sign()), (-1, -1));
        let cr = Configuration::of_word(&word("CR"));
        assert_eq!((cr.sigma.sign(), cr.rho.sign()), (1, 1));
        assert_eq!(cr.rho.cycle_type(), vec![4, 4]);
        assert_eq!(cr.tau.cycle_type(), vec![4]);
        assert!(cr.sigma.is_identity());
    }

    #[test]
    fn generator_flip_sets() {
        for g in M2 {
            let (_, tau) = generator_flips(g);
            let moved = (0..EDGE_SLOTS).filter(|&j| tau.image(j) != j).count();
            assert_eq!(moved, if g.is_inner() { 4 } else { 8 }, "{g}");
        }
    }

    #[test]
    fn special_configurations() {
        assert!(!is_member(&single_edge_flip()));
        assert!(!is_member(&single_center_transposition()));
        assert!(is_member(&pair_swap_double_flip()));
        assert!(check_revenge(&pair_swap_double_flip()).valid);
        assert_eq!(pair_swap_double_flip().tau.sign(), -1);
    }

    #[test]
    fn broken_configurations_break_one_condition() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for k in 1..=3u8 {
            for _ in 0..50 {
                assert_eq!(check_revenge(&break_one_condition(&mut rng, k)).failed(), vec![k]);
            }
        }
    }

    #[test]
    fn membership_matches_first_law() {
        let r = verify_first_law_membership(30, 2);
        assert!(r.checks().iter().all(|c| c.pass), "{r:?}");
    }

    #[test]
    fn cl_relation() {
        let r = verify_cl_relation();
        assert!(!r.literal);
        assert!(r.modulo_rotation && r.rotation_is_rigid && r.rotation_is_member && r.nine_generate_all);
    }

    #[test]
    fn check_line_format() {
        let c = Check::new("G", true, "computed=1");
        assert_eq!(c.to_string(), "check=G pass=true computed=1");
        assert_eq!(Check::new("x", false, "").to_string(), "check=x pass=false");
    }
}
