mod common;

use itertools::Itertools;
use khcube::complex::{
    cofiber_assoc, cofiber_hocolim, cofiber_inductive, cone, smith_invariants, total_complex, ChainMap,
    SignRule, SparseMatrix,
};
use khcube::diagram::{parse_pd, MoveSpec};
use khcube::jones::jones_polynomial;
use khcube::lab::{operad_a_compose, TorusClass};
use khcube::lemmas::random_cube;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &v)| v).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

/// d_k = gcd of all k×k minors; the k-th invariant factor is d_k / d_{k−1}.
fn determinantal_invariants(a: &[Vec<i64>]) -> Vec<BigInt> {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    let mut prev = 1i64;
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rows in (0..r).combinations(k) {
            for cols in (0..c).combinations(k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(BigInt::from(g / prev));
        prev = g;
    }
    out
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_invariants_match_determinantal_divisors(a in matrix()) {
        let got: Vec<BigInt> = smith_invariants(&SparseMatrix::from_dense(&a)).into_iter().map(|x| x.abs()).filter(|x| !x.is_zero()).collect();
        prop_assert_eq!(got, determinantal_invariants(&a));
    }

    #[test]
    fn inductive_and_hocolim_agree(seed in any::<u64>(), dim in 1usize..=4) {
        let cube = random_cube(&mut ChaCha8Rng::seed_from_u64(seed), dim);
        let a = cofiber_inductive(&cube);
        prop_assert!(a.same_up_to_order(&total_complex(&cube, &SignRule::PrecedingOnes).unwrap()));
        prop_assert_eq!(a.homology().unwrap(), cofiber_hocolim(&cube).homology().unwrap());
    }

    #[test]
    fn sign_rules_give_equal_homology(seed in any::<u64>(), dim in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cube = random_cube(&mut rng, dim);
        let gauge: Vec<bool> = (0..1usize << dim).map(|k| (seed >> (k % 64)) & 1 == 1).collect();
        let h = total_complex(&cube, &SignRule::PrecedingOnes).unwrap().homology().unwrap();
        prop_assert_eq!(&total_complex(&cube, &SignRule::FollowingOnes).unwrap().homology().unwrap(), &h);
        let gauged = total_complex(&cube, &SignRule::Gauged(gauge)).unwrap();
        prop_assert_eq!(&gauged.homology().unwrap(), &h);
    }

    #[test]
    fn nested_cofiber_matches_one_shot(seed in any::<u64>(), dim in 2usize..=4, split in any::<u8>()) {
        let cube = random_cube(&mut ChaCha8Rng::seed_from_u64(seed), dim);
        let mask = (split as usize % ((1 << dim) - 2)) + 1;
        let (outer, inner): (Vec<usize>, Vec<usize>) = (0..dim).partition(|&k| mask >> k & 1 == 1);
        let r = cofiber_assoc(&cube, &outer, &inner).unwrap();
        prop_assert!(r.same_basis && r.entries_equal_up_to_sign && r.homology_equal);
    }

    #[test]
    fn cone_of_identity_is_acyclic(seed in any::<u64>()) {
        let cube = random_cube(&mut ChaCha8Rng::seed_from_u64(seed), 2);
        let c = total_complex(&cube, &SignRule::PrecedingOnes).unwrap();
        prop_assert!(cone(&c, &c, &ChainMap::identity(&c)).homology().unwrap().is_zero());
    }

    #[test]
    fn operad_is_associative_in_arity_one(x in 0i64..50, y in 0i64..50, zs in proptest::collection::vec(0i64..50, 0..4)) {
        let after = operad_a_compose(operad_a_compose(x, &[y]), &zs);
        let before = operad_a_compose(x, &[operad_a_compose(y, &zs)]);
        prop_assert_eq!(after, before);
    }

    #[test]
    fn torus_cases_cover_exactly_the_mixed_parities(k in -40i64..40, l in -40i64..40) {
        let realizable = (k + l) % 2 != 0;
        prop_assert_eq!(TorusClass::new(k, l).case().is_ok(), realizable);
    }

    #[test]
    fn kinks_change_jones_by_a_unit_shift(arc_pick in any::<usize>(), positive in any::<bool>(), left in any::<bool>()) {
        let d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap();
        let arcs = d.arcs();
        let text = format!("{} arc={} side={}", if positive { "R1+" } else { "R1-" }, arcs[arc_pick % arcs.len()], if left { "left" } else { "right" });
        let after = d.apply_move(&MoveSpec::parse(&text).unwrap()).unwrap();
        prop_assert_eq!(jones_polynomial(&after).unwrap(), jones_polynomial(&d).unwrap());
        prop_assert_eq!(after.writhe() - d.writhe(), if positive { 1 } else { -1 });
    }
}

#[test]
fn pd_round_trip_on_corpus() {
    for (name, d) in common::corpus_all() {
        let back = parse_pd(&d.to_pd()).unwrap();
        assert!(back.is_isomorphic(&d), "{name}");
        assert!(d.mirror().mirror().is_isomorphic(&d), "{name}");
    }
}
