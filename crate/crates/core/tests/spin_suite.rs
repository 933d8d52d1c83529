mod common;

use common::corpus_all;
use khcube::spin::{FaceLabel, SpinMove, SpinMoveKind, SpinProjection};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Labels of the old faces read through the correspondence, and the labels
/// of faces the move created.
fn diff(before: &SpinProjection, after: &SpinProjection) -> (Vec<usize>, Vec<FaceLabel>) {
    let old = before.face_labels().labels;
    let new = after.face_labels().labels;
    let corr = before.face_correspondence(after);
    let flipped = (0..old.len()).filter(|&k| old[k] != new[corr[k]]).collect();
    let created = (0..new.len()).filter(|k| !corr.contains(k)).map(|k| new[k]).collect();
    (flipped, created)
}

#[test]
fn even_periodic_count_exhaustively_on_small_diagrams() {
    for (name, d) in corpus_all().into_iter().filter(|(_, d)| d.crossing_count() <= 3) {
        let mut count = 0;
        for sp in SpinProjection::all_assignments(&d) {
            assert_eq!(sp.face_labels().periodic_count() % 2, 0, "{name}");
            count += 1;
        }
        let bits = d.arcs().len() + d.crossing_count();
        assert_eq!(count, 1usize << bits, "{name}");
    }
}

#[test]
fn even_periodic_count_on_random_assignments() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, d) in corpus_all() {
        for _ in 0..100 {
            let sp = SpinProjection::random(d.clone(), &mut rng);
            assert_eq!(sp.face_labels().periodic_count() % 2, 0, "{name}");
        }
    }
}

#[test]
fn r1l_flips_the_two_adjacent_faces() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, d) in corpus_all().into_iter().filter(|(_, d)| d.crossing_count() <= 6) {
        let sp = SpinProjection::random(d.clone(), &mut rng);
        for arc in d.arcs() {
            let after = sp.apply_r1l(arc).unwrap();
            let (flipped, created) = diff(&sp, &after);
            let mut expected: Vec<usize> = d
                .faces()
                .iter()
                .enumerate()
                .filter(|(_, f)| f.darts.iter().any(|dart| dart.arc == arc))
                .map(|(k, _)| k)
                .collect();
            expected.sort_unstable();
            assert_eq!(flipped, expected, "{name} arc {arc}");
            assert_eq!(created, vec![FaceLabel::A], "{name} arc {arc}");
            assert_eq!(after.component_spin(), sp.component_spin());
            let twice = after.apply_r1l(arc).unwrap();
            assert_eq!(diff(&sp, &twice).0, Vec::<usize>::new(), "{name} arc {arc}");
        }
    }
}

#[test]
fn r1a_keeps_faces_and_flips_component_spin() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, d) in corpus_all().into_iter().filter(|(_, d)| d.crossing_count() <= 6) {
        let sp = SpinProjection::random(d.clone(), &mut rng);
        for arc in d.arcs() {
            let after = sp.apply_r1a(arc).unwrap();
            let (flipped, created) = diff(&sp, &after);
            assert!(flipped.is_empty(), "{name} arc {arc}");
            assert_eq!(created, vec![FaceLabel::A]);
            let c = d.component_of(arc).unwrap();
            for (k, (&x, &y)) in sp.component_spin().iter().zip(after.component_spin()).enumerate() {
                assert_eq!(x != y, k == c, "{name} arc {arc} component {k}");
            }
            let twice = after.apply_r1a(arc).unwrap();
            assert_eq!(twice.component_spin(), sp.component_spin());
            assert!(diff(&sp, &twice).0.is_empty());
        }
    }
}

#[test]
fn make_admissible_always_succeeds() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, d) in corpus_all() {
        for _ in 0..100 {
            let sp = SpinProjection::random(d.clone(), &mut rng);
            let (moves, fixed) = sp.make_admissible();
            assert!(fixed.is_admissible(), "{name}");
            assert!(moves.len() <= d.arcs().len());
            assert_eq!(fixed.face_labels().periodic_count(), 0);
            let replay = moves.iter().try_fold(sp.clone(), |acc, &m| acc.apply(m)).unwrap();
            assert_eq!(replay, fixed);
        }
    }
}

#[test]
fn admissible_input_is_left_alone() {
    for (_, d) in corpus_all() {
        let sp = SpinProjection::zero(d.clone());
        if sp.is_admissible() {
            let (moves, fixed) = sp.make_admissible();
            assert!(moves.is_empty());
            assert_eq!(fixed, sp);
        }
    }
}

#[test]
fn one_periodic_pair_on_a_circle_needs_one_move() {
    let (_, d) = corpus_all().remove(0);
    let mut sp = SpinProjection::zero(d.clone());
    let arc = d.arcs()[0];
    sp.set_edge_bit(arc, true).unwrap();
    assert_eq!(sp.face_labels().periodic_count(), 2);
    let (moves, fixed) = sp.make_admissible();
    assert_eq!(moves, vec![SpinMove { kind: SpinMoveKind::R1L, arc }]);
    assert!(fixed.is_admissible());
}
