use std::collections::{BTreeSet, HashSet, VecDeque};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use revenge::config::Configuration;
use revenge::cube::{apply, random_word, CubeState, Generator, Mode, MoveSequence, Turn};
use revenge::groups;
use revenge::law::{check_revenge, signature, InvariantSignature};
use revenge::perm::{Bsgs, Permutation};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm(n), perm(n)))
}

fn word() -> impl Strategy<Value = MoveSequence> {
    prop::collection::vec((0..12usize, 1..=3u8), 0..40).prop_map(|v| {
        MoveSequence::new(v.into_iter().map(|(g, e)| Turn::new(Generator::ALL[g], e)).collect())
    })
}

/// Every element of the group generated by `gens`, by breadth-first closure.
fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::from_images(prefix.clone()).unwrap());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

proptest! {
    #[test]
    fn sign_is_a_homomorphism((p, q) in perm_pair(96)) {
        prop_assert_eq!(p.then(&q).sign(), p.sign() * q.sign());
    }

    #[test]
    fn inverse_cancels_both_ways(p in (1..=96usize).prop_flat_map(perm)) {
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert!(p.inverse().then(&p).is_identity());
        prop_assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn composition_is_associative((p, q) in perm_pair(20), seed in any::<u64>()) {
        let mut v: Vec<usize> = (0..p.degree()).collect();
        use rand::seq::SliceRandom;
        v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = Permutation::from_images(v).unwrap();
        prop_assert_eq!(p.then(&q).then(&r), p.then(&q.then(&r)));
    }

    #[test]
    fn order_is_least_power_to_identity(p in (1..=12usize).prop_flat_map(perm)) {
        let mut acc = p.clone();
        let mut k = 1u64;
        while !acc.is_identity() {
            acc = acc.then(&p);
            k += 1;
        }
        prop_assert_eq!(p.order(), k);
        prop_assert!(p.pow(k).is_identity());
    }

    #[test]
    fn cycles_are_canonical(p in (1..=40usize).prop_flat_map(perm)) {
        let cycles = p.cycles();
        let mut covered = BTreeSet::new();
        for c in &cycles {
            prop_assert!(c.len() >= 2);
            prop_assert_eq!(c[0], *c.iter().min().unwrap());
            for (k, &x) in c.iter().enumerate() {
                prop_assert_eq!(p.image(x), c[(k + 1) % c.len()]);
                prop_assert!(covered.insert(x));
            }
        }
        prop_assert!(cycles.windows(2).all(|w| w[0][0] < w[1][0]));
        prop_assert_eq!(covered.into_iter().collect::<Vec<_>>(), p.moved_points().collect::<Vec<_>>());
        let parity = cycles.iter().map(|c| c.len() - 1).sum::<usize>() % 2;
        prop_assert_eq!(p.sign(), if parity == 0 { 1 } else { -1 });
    }

    #[test]
    fn bsgs_matches_closure_in_s5(gens in prop::collection::vec(perm(5), 1..4)) {
        let b = Bsgs::new(&gens).unwrap();
        let elements = closure(&gens);
        prop_assert_eq!(b.order(), elements.len().into());
        for p in all_perms(5) {
            prop_assert_eq!(b.contains(&p).unwrap(), elements.contains(&p));
        }
    }

    #[test]
    fn bsgs_matches_closure_in_s6(gens in prop::collection::vec(perm(6), 1..3)) {
        let b = Bsgs::new(&gens).unwrap();
        prop_assert_eq!(b.order(), closure(&gens).len().into());
        for s in b.strong_generators() {
            prop_assert!(b.contains(s).unwrap());
        }
    }

    #[test]
    fn words_round_trip_through_text(w in word()) {
        prop_assert_eq!(MoveSequence::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn word_then_inverse_restores_state(w in word(), seed in any::<u64>()) {
        let s = Configuration::random(&mut ChaCha8Rng::seed_from_u64(seed)).realize();
        prop_assert_eq!(apply(&apply(&s, &w), &w.inverse()), s);
    }

    #[test]
    fn codec_of_words_matches_facelet_permutation(w in word()) {
        prop_assert_eq!(Configuration::of_word(&w).to_facelet_permutation(), w.permutation());
    }

    #[test]
    fn configuration_text_round_trips(seed in any::<u64>()) {
        let c = Configuration::random(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(c.to_string().parse::<Configuration>().unwrap(), c);
    }

    #[test]
    fn state_text_round_trips(seed in any::<u64>()) {
        let s = Configuration::random(&mut ChaCha8Rng::seed_from_u64(seed)).realize();
        prop_assert_eq!(s.to_string().parse::<CubeState>().unwrap(), s.clone());
        let colored = s.to_colored();
        prop_assert_eq!(colored.to_string().parse::<CubeState>().unwrap(), colored);
    }

    #[test]
    fn validity_iff_trivial_signature(seed in any::<u64>(), valid in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = if valid { revenge::law::random_valid(&mut rng) } else { Configuration::random(&mut rng) };
        prop_assert_eq!(check_revenge(&c).valid, signature(&c) == InvariantSignature::TRIVIAL);
    }

    #[test]
    fn single_turns_keep_the_signature(seed in any::<u64>(), g in 0..12usize) {
        let c = Configuration::random(&mut ChaCha8Rng::seed_from_u64(seed));
        let m = Configuration::of_word(&MoveSequence::new(vec![Turn::new(Generator::ALL[g], 1)]));
        prop_assert_eq!(signature(&c.then(&m)), signature(&c));
    }

    #[test]
    fn validity_iff_membership(seed in any::<u64>(), valid in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = if valid {
            revenge::law::random_valid(&mut rng)
        } else {
            let k = rng.random_range(1..=3);
            groups::break_one_condition(&mut rng, k)
        };
        prop_assert_eq!(groups::is_member(&c), valid);
        prop_assert_eq!(check_revenge(&c).valid, valid);
    }
}

#[test]
fn products_of_strong_generators_are_members() {
    let b = groups::move_group();
    let s = b.strong_generators();
    for (i, g) in s.iter().enumerate().step_by(3) {
        for h in s.iter().skip(i % 5).step_by(7) {
            assert!(b.contains(&g.then(h)).unwrap());
        }
    }
}

#[test]
fn free_action_on_labeled_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut tried = 0;
    while tried < 100 {
        let len = rng.random_range(1..15);
        let w = random_word(&mut rng, len);
        if w.permutation().is_identity() {
            continue;
        }
        tried += 1;
        let s = Configuration::random(&mut rng).realize();
        assert_ne!(apply(&s, &w), s, "{w}");
    }
}

#[test]
fn group_action_on_colored_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let w = random_word(&mut rng, 20);
        let s = CubeState::solved(Mode::Colored);
        assert_eq!(apply(&apply(&s, &w), &w.inverse()), s);
        assert_eq!(apply(&CubeState::solved(Mode::Labeled), &w).to_colored(), apply(&s, &w));
    }
}
