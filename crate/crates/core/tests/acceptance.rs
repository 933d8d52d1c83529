//! Acceptance suite: one PASS/FAIL line per criterion, with wall time
//! against its limit. Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::{corpus, corpus_all, oracle_for, r2_instances, r3_instances, CORPUS};
use khcube::burnside::{edge_matrix, face_coherence, face_paths, ladybug_match, LadybugConvention, Label};
use khcube::complex::{cofiber_assoc, cofiber_hocolim, cofiber_inductive, HomologyTable};
use khcube::cube::{EdgeKind, FaceShape, ResolutionCube};
use khcube::diagram::{parse_pd, LinkDiagram, MoveSpec};
use khcube::frobenius::{comultiply, multiply};
use khcube::jones::{jones_polynomial, LaurentPoly};
use khcube::khovanov::{khovanov_complex, khovanov_cube};
use khcube::lab;
use khcube::lemmas::{lemma_cube, lemma_square, random_cube, random_lemma_cube, random_square};
use khcube::spin::{FaceLabel, SpinProjection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn homology(d: &LinkDiagram) -> HomologyTable {
    khovanov_complex(d).unwrap().homology().unwrap()
}

fn as_map(p: &LaurentPoly) -> BTreeMap<i64, i64> {
    p.terms().filter(|&(_, c)| c != 0).collect()
}

fn c1_unknot() -> Outcome {
    let h = homology(&corpus("unknot"));
    let keys: Vec<(i64, i64)> = h.groups.keys().copied().collect();
    ensure(keys == [(0, -1), (0, 1)], || format!("groups at {keys:?}"))?;
    ensure(
        h.groups.values().all(|g| g.free_rank == 1 && g.torsion.is_empty()),
        || h.to_text(),
    )?;
    Ok("Z at (0,-1) and (0,1)".into())
}

fn c2_hopf() -> Outcome {
    let h = homology(&corpus("hopf_positive"));
    ensure(h.torsion_summands().is_empty(), || "unexpected torsion".into())?;
    ensure(h.total_free_rank() == 4, || format!("free rank {}", h.total_free_rank()))?;
    ensure(h.groups.keys().all(|&(i, _)| i == 0 || i == 2), || h.to_text())?;
    ensure(as_map(&h.euler_characteristic()) == oracle_for("hopf_positive"), || {
        "Euler characteristic differs from the bracket oracle".into()
    })?;
    Ok("rank 4 in degrees 0 and 2, χ matches bracket".into())
}

fn c3_trefoil() -> Outcome {
    let h = homology(&corpus("trefoil_right"));
    let torsion = h.torsion_summands();
    ensure(torsion.len() == 1 && torsion[0].1 == 2, || format!("torsion {torsion:?}"))?;
    ensure(as_map(&h.euler_characteristic()) == oracle_for("trefoil_right"), || {
        "free ranks disagree with the Jones oracle".into()
    })?;
    Ok(format!("single Z/2 at {:?}", torsion[0].0))
}

fn c4_jones() -> Outcome {
    for (name, d) in corpus_all() {
        let oracle = oracle_for(name);
        ensure(as_map(&homology(&d).euler_characteristic()) == oracle, || format!("{name}: χ(Kh)"))?;
        ensure(as_map(&jones_polynomial(&d).unwrap()) == oracle, || format!("{name}: state sum"))?;
    }
    Ok(format!("{} diagrams", CORPUS.len()))
}

fn all_moves(d: &LinkDiagram) -> Vec<MoveSpec> {
    let mut moves = d.r1_sites();
    moves.extend(
        d.r2_sites()
            .into_iter()
            .map(|(over, under, face)| MoveSpec::R2 { over, under, face: Some(face) }),
    );
    moves.extend(d.r3_sites().into_iter().map(|face| MoveSpec::R3 { face }));
    moves.extend(d.bigon_sites().into_iter().map(|crossings| MoveSpec::R2Inverse { crossings }));
    moves.extend(d.kink_sites().into_iter().map(|crossing| MoveSpec::R1Inverse { crossing }));
    moves
}

fn c5_reidemeister() -> Outcome {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for (name, d) in corpus_all() {
        let h = homology(&d);
        for mv in all_moves(&d) {
            let after = d.apply_move(&mv).map_err(|e| format!("{name} {mv:?}: {e}"))?;
            ensure(homology(&after) == h, || format!("{name} {mv:?} changes homology"))?;
            *counts.entry(mv.kind().to_string()).or_default() += 1;
        }
    }
    Ok(format!("{counts:?}"))
}

fn c6_cofiber() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..100 {
        let cube = random_cube(&mut rng, k % 4 + 1);
        ensure(
            cofiber_inductive(&cube).homology().unwrap() == cofiber_hocolim(&cube).homology().unwrap(),
            || format!("random cube {k}"),
        )?;
    }
    for (name, d) in corpus_all() {
        let cube = khovanov_cube(&ResolutionCube::new(&d).unwrap()).unwrap();
        ensure(
            cofiber_inductive(&cube).homology().unwrap() == cofiber_hocolim(&cube).homology().unwrap(),
            || name.to_string(),
        )?;
    }
    Ok(format!("100 random cubes, {} Khovanov cubes", CORPUS.len()))
}

fn c7_assoc() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..50 {
        let dim = rng.gen_range(2..=4);
        let cube = random_cube(&mut rng, dim);
        let mask = rng.gen_range(1..(1usize << dim) - 1);
        let (outer, inner): (Vec<usize>, Vec<usize>) = (0..dim).partition(|&c| mask >> c & 1 == 1);
        let r = cofiber_assoc(&cube, &outer, &inner).map_err(|e| e.to_string())?;
        ensure(r.homology_equal, || format!("split {k}: {outer:?} | {inner:?}"))?;
    }
    Ok("50 splits".into())
}

fn c8_lemmas() -> Outcome {
    let mut real_squares = Vec::new();
    let mut real_cubes = Vec::new();
    let mut r3_sites = 0;
    for name in ["hopf_positive", "trefoil_left", "trefoil_right", "figure_eight"] {
        let d = corpus(name);
        real_squares.extend(r2_instances(&d).into_iter().map(|(_, i)| i));
        for (over, under, face) in d.r2_sites() {
            let after = d.apply_move(&MoveSpec::R2 { over, under, face: Some(face) }).unwrap();
            for (_, inst) in r3_instances(&after) {
                r3_sites += 1;
                real_cubes.extend(inst);
            }
        }
    }
    ensure(!real_squares.is_empty() && !real_cubes.is_empty(), || "no real extractions".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut held = 0;
    for k in 0..100 {
        let (hyp, concl) = match k % 5 {
            0 => {
                let i = &real_squares[(k / 5) % real_squares.len()];
                let r = lemma_square(&i.cube, &i.s).unwrap();
                (r.hypotheses_hold, r.conclusion_holds)
            }
            1 => {
                let i = &real_cubes[(k / 5) % real_cubes.len()];
                let r = lemma_cube(&i.cube, &i.s, &i.t).unwrap();
                (r.hypotheses_hold, r.conclusion_holds)
            }
            2 | 4 => {
                let i = random_square(&mut rng, k % 5 == 4);
                let r = lemma_square(&i.cube, &i.s).unwrap();
                (r.hypotheses_hold, r.conclusion_holds)
            }
            _ => {
                let i = random_lemma_cube(&mut rng, k % 10 == 3);
                let r = lemma_cube(&i.cube, &i.s, &i.t).unwrap();
                (r.hypotheses_hold, r.conclusion_holds)
            }
        };
        ensure(hyp, || format!("trial {k}: harness built an instance violating the hypotheses"))?;
        ensure(concl, || format!("trial {k}: conclusion fails"))?;
        held += 1;
    }
    Ok(format!(
        "{held}/100 trials; {} real R2 squares, {} real R3 cubes from {r3_sites} triangle sites",
        real_squares.len(),
        real_cubes.len()
    ))
}

fn c9_burnside() -> Outcome {
    let labels = [Label::One, Label::X];
    let bit = |l: Label, k: usize| u64::from(l == Label::X) << k;
    let cube = ResolutionCube::new(&parse_pd("PD[X(1,3,2,4),X(3,1,4,2)]").unwrap()).unwrap();
    let edges = cube.edges();
    let merge = edges.iter().find(|e| e.kind.is_merge()).unwrap();
    let split = edges.iter().find(|e| !e.kind.is_merge()).unwrap();
    let mut constants = 0;
    if let EdgeKind::Merge { inputs: [a, b], output } = merge.kind {
        let m = edge_matrix(&cube, merge).cardinality();
        for (la, lb, lc) in itertools::iproduct!(labels, labels, labels) {
            let want = multiply(la, lb).get(&vec![lc]).copied().unwrap_or(0);
            ensure(m.get(bit(lc, output), bit(la, a) | bit(lb, b)) == want, || {
                format!("m({la}{lb}) at {lc}")
            })?;
            constants += 1;
        }
    }
    if let EdgeKind::Split { input, outputs: [p, q] } = split.kind {
        let m = edge_matrix(&cube, split).cardinality();
        for (l, lp, lq) in itertools::iproduct!(labels, labels, labels) {
            let want = comultiply(l).get(&vec![lp, lq]).copied().unwrap_or(0);
            ensure(m.get(bit(lp, p) | bit(lq, q), bit(l, input)) == want, || {
                format!("Δ({l}) at {lp}{lq}")
            })?;
            constants += 1;
        }
    }
    ensure(constants == 16, || format!("{constants} constants"))?;

    let (mut faces, mut ladybugs) = (0, 0);
    for (name, d) in corpus_all() {
        let cube = ResolutionCube::new(&d).unwrap();
        for f in cube.faces() {
            let (a, b) = face_paths(&cube, &f);
            ensure(a.cardinality() == b.cardinality(), || format!("{name}: face does not commute"))?;
            for conv in [LadybugConvention::Left, LadybugConvention::Right] {
                face_coherence(&cube, &f, conv).map_err(|e| format!("{name}: {e}"))?;
            }
            if f.shape == FaceShape::Ladybug {
                ensure(a.entries.values().all(|e| e.len() == 2), || format!("{name}: ladybug entry size"))?;
                let left = ladybug_match(&cube, &f, LadybugConvention::Left).unwrap();
                let right = ladybug_match(&cube, &f, LadybugConvention::Right).unwrap();
                ensure(left.differs_by_transposition(&right), || format!("{name}: matchings"))?;
                ladybugs += 1;
            }
            faces += 1;
        }
    }
    ensure(ladybugs > 0, || "no ladybug faces in the corpus".into())?;
    Ok(format!(
        "16 constants, {faces} faces coherent under both conventions, {ladybugs} ladybug faces; homology uses cardinalities only"
    ))
}

fn c10_spin() -> Outcome {
    let mut exhaustive = 0;
    for (name, d) in corpus_all().into_iter().filter(|(_, d)| d.crossing_count() <= 3) {
        for sp in SpinProjection::all_assignments(&d) {
            ensure(sp.face_labels().periodic_count() % 2 == 0, || format!("{name}: odd P count"))?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut random = 0;
    for (name, d) in corpus_all() {
        for k in 0..100 {
            let sp = SpinProjection::random(d.clone(), &mut rng);
            ensure(sp.face_labels().periodic_count().is_multiple_of(2), || format!("{name}: odd P count"))?;
            let (_, fixed) = sp.make_admissible();
            ensure(fixed.is_admissible(), || format!("{name}: fix-up {k} not admissible"))?;
            random += 1;
            if k > 0 {
                continue;
            }
            let old = sp.face_labels().labels;
            for arc in d.arcs() {
                let adjacent: Vec<usize> = (0..old.len())
                    .filter(|&f| d.faces()[f].darts.iter().any(|dart| dart.arc == arc))
                    .collect();
                for (after, flips_faces) in [(sp.apply_r1l(arc).unwrap(), true), (sp.apply_r1a(arc).unwrap(), false)] {
                    let new = after.face_labels().labels;
                    let corr = sp.face_correspondence(&after);
                    let flipped: Vec<usize> = (0..old.len()).filter(|&f| old[f] != new[corr[f]]).collect();
                    let created: Vec<FaceLabel> =
                        (0..new.len()).filter(|f| !corr.contains(f)).map(|f| new[f]).collect();
                    let expected = if flips_faces { adjacent.clone() } else { Vec::new() };
                    ensure(flipped == expected, || format!("{name} arc {arc}: flipped {flipped:?}"))?;
                    ensure(created == [FaceLabel::A], || format!("{name} arc {arc}: new face"))?;
                    let spin_flips = sp
                        .component_spin()
                        .iter()
                        .zip(after.component_spin())
                        .filter(|(a, b)| a != b)
                        .count();
                    ensure(spin_flips == usize::from(!flips_faces), || format!("{name} arc {arc}: spin"))?;
                }
            }
        }
    }
    Ok(format!("{exhaustive} exhaustive, {random} random assignments"))
}

fn c11_lab() -> Outcome {
    use lab::{GaussianMatrix, TorusCase, TORUS_CASES};
    let f = TorusCase::F.matrix();
    ensure(f.pow(2) == TorusCase::Swap.matrix(), || "F² ≠ swap".into())?;
    ensure(f.pow(4) == GaussianMatrix::identity(2), || "F⁴ ≠ I".into())?;
    ensure(TORUS_CASES.iter().all(|c| c.matrix().is_unitary()), || "not unitary".into())?;
    ensure(lab::group_table().iter().flatten().all(Option::is_some), || "not closed".into())?;
    for (k, l) in itertools::iproduct!(-8i64..=8, -8i64..=8) {
        let class = lab::TorusClass::new(k, l);
        if let Ok(m) = lab::ls_two_morphism(class) {
            ensure(lab::ls_gluing_vector(class) == Ok(m.column(0)), || format!("gluing ({k},{l})"))?;
        }
    }
    let words = lab::word_functoriality(6);
    ensure(words.failures.is_empty(), || format!("{} failing words", words.failures.len()))?;
    let dehn = lab::dehn_demo();
    ensure(dehn.composite == [("x".to_string(), 2)], || format!("m∘Δ(1) = {:?}", dehn.composite))?;
    Ok(format!("{} words, m∘Δ(1) = 2x", words.words_checked))
}

fn c12_operad() -> Outcome {
    let r = lab::operad_probe(5, 2);
    let verdict = if r.associative { "associative" } else { "NOT associative" };
    let witness = r
        .witness
        .as_ref()
        .map(|w| format!("; witness x={} ys={:?} zs={:?}: {} vs {}", w.x, w.ys, w.zs, w.grafted_after, w.grafted_before))
        .unwrap_or_default();
    ensure(r.associative || r.witness.is_some(), || "failure without witness".into())?;
    Ok(format!("{} cases, verdict {verdict}{witness}", r.cases_checked))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("unknot homology", 1, c1_unknot),
        ("positive Hopf link", 1, c2_hopf),
        ("right-handed trefoil torsion", 1, c3_trefoil),
        ("Jones cross-check on corpus", 10, c4_jones),
        ("Reidemeister invariance", 60, c5_reidemeister),
        ("inductive vs hocolim cofiber", 60, c6_cofiber),
        ("nested vs one-shot cofiber", 30, c7_assoc),
        ("splitting lemmas on squares and cubes", 60, c8_lemmas),
        ("Burnside layer", 60, c9_burnside),
        ("spin suite", 60, c10_spin),
        ("modular functor lab", 60, c11_lab),
        ("operad probe", 60, c12_operad),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("over the {limit} s limit")),
            o => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("{status} {:>2} {name} [{:.2} s / {limit} s]: {detail}", k + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
