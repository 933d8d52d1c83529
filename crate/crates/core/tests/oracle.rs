mod common;

use std::collections::BTreeMap;

use common::{corpus, corpus_all, oracle_for, CORPUS};
use khcube::jones::{jones_polynomial, LaurentPoly};
use khcube::khovanov::khovanov_complex;

fn as_map(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms().filter(|&(_, c)| c != 0).collect()
}

#[test]
fn oracle_on_unknot_is_circle_value() {
    assert_eq!(oracle_for("unknot"), BTreeMap::from([(-1, 1), (1, 1)]));
}

#[test]
fn oracle_is_mirror_symmetric() {
    for (a, b) in [("hopf_positive", "hopf_negative"), ("trefoil_left", "trefoil_right")] {
        let flipped: BTreeMap<i64, i64> = oracle_for(a).into_iter().map(|(e, c)| (-e, c)).collect();
        assert_eq!(flipped, oracle_for(b), "{a} vs {b}");
    }
}

#[test]
fn state_sum_matches_oracle() {
    for name in CORPUS {
        let j = jones_polynomial(&corpus(name)).unwrap();
        assert_eq!(as_map(&j), oracle_for(name), "{name}");
    }
}

#[test]
fn homology_euler_characteristic_matches_oracle() {
    for (name, d) in corpus_all() {
        let h = khovanov_complex(&d).unwrap().homology().unwrap();
        assert_eq!(as_map(&h.euler_characteristic()), oracle_for(name), "{name}");
    }
}

#[test]
fn chain_level_euler_characteristic_matches_homology() {
    for (name, d) in corpus_all().into_iter().take(6) {
        let c = khovanov_complex(&d).unwrap();
        assert_eq!(c.euler_characteristic(), c.homology().unwrap().euler_characteristic(), "{name}");
    }
}
