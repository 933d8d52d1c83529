#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use khcube::diagram::{parse_pd, LinkDiagram};

pub const CORPUS: [&str; 8] = [
    "unknot",
    "hopf_positive",
    "hopf_negative",
    "trefoil_left",
    "trefoil_right",
    "figure_eight",
    "six_one",
    "torus_3_4",
];

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.pd"))
}

pub fn corpus_text(name: &str) -> String {
    std::fs::read_to_string(corpus_path(name)).unwrap()
}

pub fn corpus(name: &str) -> LinkDiagram {
    parse_pd(&corpus_text(name)).unwrap()
}

pub fn corpus_all() -> Vec<(&'static str, LinkDiagram)> {
    CORPUS.iter().map(|&n| (n, corpus(n))).collect()
}

fn find(parent: &mut BTreeMap<u64, u64>, a: u64) -> u64 {
    let p = *parent.entry(a).or_insert(a);
    if p == a {
        return a;
    }
    let r = find(parent, p);
    parent.insert(a, r);
    r
}

/// Crossing tuples and number of crossingless circles, read straight off
/// the PD text.
pub fn pd_tuples(text: &str) -> (Vec<[u64; 4]>, usize) {
    let unknots = text.matches('U').count();
    let mut tuples = Vec::new();
    for chunk in text.split("X(").skip(1) {
        let body = chunk.split(')').next().unwrap();
        let v: Vec<u64> = body.split(',').map(|s| s.trim().parse().unwrap()).collect();
        tuples.push([v[0], v[1], v[2], v[3]]);
    }
    (tuples, unknots)
}

/// Unnormalized Jones polynomial as a Kauffman state sum:
/// (−1)^{n₋} q^{n₊−2n₋} Σ_s (−q)^{|s|} (q + q⁻¹)^{loops(s)}.
/// Loops are counted by union-find over PD arc labels.
pub fn bracket_oracle(text: &str, n_plus: i64, n_minus: i64) -> BTreeMap<i64, i64> {
    let (tuples, unknots) = pd_tuples(text);
    let n = tuples.len();
    let mut total: BTreeMap<i64, i64> = BTreeMap::new();
    for state in 0u64..1 << n {
        let mut parent = BTreeMap::new();
        let mut arcs = Vec::new();
        for (k, t) in tuples.iter().enumerate() {
            let pairs = if state >> k & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
            for (a, b) in pairs {
                let (ra, rb) = (find(&mut parent, t[a]), find(&mut parent, t[b]));
                parent.insert(ra, rb);
            }
            arcs.extend_from_slice(t);
        }
        arcs.sort_unstable();
        arcs.dedup();
        let mut roots: Vec<u64> = arcs.iter().map(|&a| find(&mut parent, a)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.len() + unknots;
        let r = state.count_ones() as i64;
        // (q + q⁻¹)^loops by binomial expansion
        let mut binom = 1i64;
        for j in 0..=loops as i64 {
            let exp = loops as i64 - 2 * j + r + n_plus - 2 * n_minus;
            let sign = if (r + n_minus) % 2 == 0 { 1 } else { -1 };
            *total.entry(exp).or_insert(0) += sign * binom;
            binom = binom * (loops as i64 - j) / (j + 1);
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

pub fn oracle_for(name: &str) -> BTreeMap<i64, i64> {
    let d = corpus(name);
    bracket_oracle(&corpus_text(name), d.n_plus() as i64, d.n_minus() as i64)
}

use khcube::diagram::MoveSpec;
use khcube::lemmas::{r2_square, r3_cube, CubeInstance, SquareInstance};

/// Every R2 move on `d`, each with the square of its two new crossings.
pub fn r2_instances(d: &LinkDiagram) -> Vec<(MoveSpec, SquareInstance)> {
    let mut out = Vec::new();
    for (over, under, face) in d.r2_sites() {
        let mv = MoveSpec::R2 { over, under, face: Some(face) };
        let (after, trace) = d.apply_move_traced(&mv).unwrap();
        let new: Vec<usize> = (0..after.crossing_count())
            .filter(|&c| trace.crossing_origin[c].is_none())
            .collect();
        out.push((mv, r2_square(&after, (new[0], new[1])).unwrap()));
    }
    out
}

/// Every R3 site of `d`, with the 3-cube extracted from whichever side of
/// the move matches the pattern.
pub fn r3_instances(d: &LinkDiagram) -> Vec<(MoveSpec, Option<CubeInstance>)> {
    let triangle = |d: &LinkDiagram, face: usize| -> [usize; 3] {
        let mut cs: Vec<usize> = d.faces()[face].corners.iter().map(|s| s.crossing).collect();
        cs.sort_unstable();
        cs.dedup();
        [cs[0], cs[1], cs[2]]
    };
    let mut out = Vec::new();
    for face in d.r3_sites() {
        let mv = MoveSpec::R3 { face };
        let mut inst = r3_cube(d, triangle(d, face)).ok();
        if inst.is_none() {
            let (after, trace) = d.apply_move_traced(&mv).unwrap();
            inst = after
                .r3_sites()
                .into_iter()
                .map(|f| triangle(&after, f))
                .filter(|t| t.iter().all(|&c| trace.crossing_origin[c].is_some_and(|o| triangle(d, face).contains(&o))))
                .find_map(|t| r3_cube(&after, t).ok());
        }
        out.push((mv, inst));
    }
    out
}
