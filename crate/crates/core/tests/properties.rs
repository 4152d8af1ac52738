//! Seeded randomized suites for the algebraic invariants: every run is
//! deterministic, every comparison exact.

mod common;

use kirbycalc::rational::{chain_collapse, rational_to_chain, slam_dunk_value};
use kirbycalc::{cover, polygon, Int, Rational, Seifert};
use num_integer::Integer;
use num_traits::Zero;
use rand::prelude::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_fibers(rng: &mut ChaCha8Rng, max_count: usize) -> Vec<(i64, i64)> {
    let count = rng.gen_range(0..=max_count);
    (0..count)
        .map(|_| {
            let p = loop {
                let p = rng.gen_range(-9..=9i64);
                if p != 0 {
                    break p;
                }
            };
            (p, rng.gen_range(-9..=9i64))
        })
        .collect()
}

#[test]
fn normal_form_survives_shuffles_and_euler_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1001);
    for _ in 0..400 {
        let mut fibers = random_fibers(&mut rng, 5);
        if fibers.is_empty() {
            fibers.push((2, 1));
        }
        let s = Seifert::of(&fibers);

        // permute, move k copies of the regular fiber class across one
        // exceptional fiber, and compensate with an integer fiber
        fibers.shuffle(&mut rng);
        let idx = rng.gen_range(0..fibers.len());
        let k = rng.gen_range(-3..=3i64);
        fibers[idx].1 += k * fibers[idx].0;
        fibers.push((1, -k));
        let shifted = Seifert::of(&fibers);

        assert!(s.is_equivalent(&shifted), "{s:?} vs {shifted:?}");
        assert_eq!(s.euler_number(), shifted.euler_number());
        assert_eq!(s.first_homology(), shifted.first_homology());
    }
}

#[test]
fn homology_rank_detects_euler_vanishing() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1002);
    for _ in 0..800 {
        let s = Seifert::of(&random_fibers(&mut rng, 5));
        let h = s.first_homology();
        assert!(h.free_rank() <= 1, "base sphere never gives rank 2: {s:?}");
        assert_eq!(
            h.free_rank() == 1,
            s.euler_number() == Rational::zero(),
            "rank/Euler mismatch on {s:?}"
        );
    }
}

#[test]
fn sphere_recognition_agrees_with_trivial_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1003);
    for _ in 0..800 {
        let mut fibers = random_fibers(&mut rng, 2);
        while fibers.len() != 2 {
            fibers = random_fibers(&mut rng, 2);
        }
        let s = Seifert::of(&fibers);
        let recognized = s.recognize_s3().expect("two fibers");
        assert_eq!(recognized, s.first_homology().is_trivial(), "{s:?}");
    }
}

#[test]
fn edge_sign_flips_leave_cokernel_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1004);
    for _ in 0..300 {
        let d = common::random_forest(&mut rng, 10);
        let m = d.presentation_matrix();
        let baseline = m.cokernel();
        let n = m.rows();
        let mut flipped = m.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                if !flipped.get(i, j).is_zero() && rng.gen_bool(0.5) {
                    let a = flipped.get(i, j).clone();
                    let b = flipped.get(j, i).clone();
                    flipped.set(i, j, -a);
                    flipped.set(j, i, -b);
                }
            }
        }
        assert_eq!(flipped.cokernel(), baseline);
    }
}

#[test]
fn chain_expansion_round_trips_on_random_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1005);
    for _ in 0..1000 {
        let num = rng.gen_range(-1_000_000..=1_000_000i64);
        let den = rng.gen_range(1..=10_000i64);
        let r = Rational::of(num, den);
        let chain = rational_to_chain(&r).expect("finite value expands");
        assert!(!chain.is_empty());
        let as_rationals: Vec<Rational> =
            chain.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let collapsed =
            chain_collapse(&as_rationals[0], &as_rationals[1..]).expect("chain collapses");
        assert_eq!(collapsed, r, "round trip of {num}/{den}");
        for entry in &chain[1..] {
            assert!(*entry <= Int::from(-2), "tail entry {entry} in chain of {num}/{den}");
        }
    }
}

#[test]
fn slam_dunk_agrees_with_cross_multiplied_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1006);
    for _ in 0..10_000 {
        let n = rng.gen_range(-20..=20i64);
        let p = loop {
            let p = rng.gen_range(-30..=30i64);
            if p != 0 {
                break p;
            }
        };
        let q = rng.gen_range(1..=30i64);
        let target = Rational::of(n, 1);
        let leaf = Rational::of(p, q);
        let dunked = slam_dunk_value(&target, &leaf).expect("nonzero leaf framing");
        assert_eq!(dunked, Rational::of(n * p - q, p));
    }
}

#[test]
fn lambda_lift_is_unit_independent_for_small_indices() {
    for n in 1..=5u32 {
        let baseline = cover::lambda_lift(n).expect("lift counts");
        let (p, q) = (8 * u64::from(n) - 1, 8 * u64::from(n) - 2);
        let mut choices = 0;
        for u2 in (1..p).filter(|u| u.gcd(&p) == 1) {
            for u3 in (1..q).filter(|u| u.gcd(&q) == 1) {
                let r = cover::lambda_lift_with_units(n, u2, u3).expect("lift counts");
                assert_eq!(r, baseline, "n = {n}, units ({u2}, {u3})");
                choices += 1;
            }
        }
        assert!(choices >= 2, "unit enumeration exercised at n = {n}");
    }
}

#[test]
fn rotation_polygon_counts_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1007);
    let mut seen = 0;
    while seen < 200 {
        let p = rng.gen_range(1..=40u64);
        let q = rng.gen_range(1..=40u64);
        if p.gcd(&q) != 1 {
            continue;
        }
        seen += 1;
        let (orbits, genus) = polygon::rotation_polygon_counts(p, q).expect("coprime sides");
        assert_eq!(orbits, p + q, "orbits at ({p}, {q})");
        assert_eq!(genus, (p - 1) * (q - 1) / 2, "genus at ({p}, {q})");
    }
}

#[test]
fn connected_sums_add_homology_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1008);
    for _ in 0..200 {
        let a = Seifert::of(&random_fibers(&mut rng, 4));
        let b = Seifert::of(&random_fibers(&mut rng, 4));
        let sum = kirbycalc::seifert::connected_sum_homology(&[a.clone(), b.clone()]);
        assert_eq!(
            sum.free_rank(),
            a.first_homology().free_rank() + b.first_homology().free_rank()
        );
    }
}

#[test]
fn expansion_realized_as_diagram_moves() {
    // expanding a rational leaf and dunking the chain back restores the
    // framing on a randomly generated stem
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1009);
    for _ in 0..200 {
        let d = common::random_forest(&mut rng, 6);
        let rational_leaf = d
            .vertices()
            .iter()
            .find(|v| {
                !v.framing.is_integer()
                    && !v.framing.is_infinite()
                    && d.degree(&v.id).unwrap() <= 1
            })
            .map(|v| v.id.clone());
        let Some(leaf) = rational_leaf else {
            continue;
        };
        let before = d.first_homology();
        let expanded = d.expand_leaf(&leaf).expect("eligible leaf");
        assert!(expanded.changed);
        assert!(expanded.diagram.vertex_count() > d.vertex_count());
        assert_eq!(expanded.diagram.first_homology(), before);
        let stem = expanded.diagram.vertex(&leaf).expect("stem kept");
        assert!(stem.framing.is_integer());
    }
}
