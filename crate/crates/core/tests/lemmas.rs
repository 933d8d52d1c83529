mod common;

use common::{corpus, r2_instances, r3_instances};
use khcube::diagram::MoveSpec;
use khcube::lemmas::{lemma_cube, lemma_square, random_lemma_cube, random_square};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn r2_squares_from_diagrams_satisfy_the_lemma() {
    for name in ["hopf_positive", "trefoil_left", "figure_eight"] {
        let insts = r2_instances(&corpus(name));
        assert!(!insts.is_empty(), "{name}");
        for (mv, inst) in insts {
            let r = lemma_square(&inst.cube, &inst.s).unwrap();
            assert!(r.hypotheses_hold && r.conclusion_holds, "{name} {mv:?}: {r:?}");
        }
    }
}

#[test]
fn r3_cubes_from_diagrams_satisfy_the_lemma() {
    let d = corpus("trefoil_left");
    let d = d
        .r2_sites()
        .into_iter()
        .map(|(over, under, face)| d.apply_move(&MoveSpec::R2 { over, under, face: Some(face) }).unwrap())
        .find(|e| !e.r3_sites().is_empty())
        .expect("some finger move creates a triangle");
    let insts = r3_instances(&d);
    assert!(!insts.is_empty());
    let mut found = 0;
    for (mv, inst) in insts {
        if let Some(inst) = inst {
            let r = lemma_cube(&inst.cube, &inst.s, &inst.t).unwrap();
            assert!(r.hypotheses_hold && r.conclusion_holds, "{mv:?}: {r:?}");
            assert_eq!(r.matching_shift, Some(0));
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn random_instances_satisfy_both_lemmas() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..30 {
        let sq = random_square(&mut rng, k % 3 == 0);
        let r = lemma_square(&sq.cube, &sq.s).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_holds);
        let cu = random_lemma_cube(&mut rng, k % 3 == 0);
        let r = lemma_cube(&cu.cube, &cu.s, &cu.t).unwrap();
        assert!(r.hypotheses_hold && r.conclusion_holds);
    }
}
