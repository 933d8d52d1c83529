use std::collections::{BTreeMap, VecDeque};

use super::{LinkDiagram, Sign};

/// Relabeling-invariant encoding of a diagram. Two diagrams are isomorphic
/// (crossings and arcs bijectively renamed, slots and signs preserved) iff
/// their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pieces: Vec<Vec<(Sign, [u32; 4])>>,
    crossingless: usize,
}

pub(super) fn canonical_form(d: &LinkDiagram) -> CanonicalForm {
    let n = d.crossing_count();
    let mut piece_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    // crossings per piece, using the piece of any face touching them
    let mut piece_of = vec![usize::MAX; n];
    for f in d.faces() {
        for c in &f.corners {
            piece_of[c.crossing] = f.piece;
        }
    }
    for (c, &p) in piece_of.iter().enumerate() {
        piece_members.entry(p).or_default().push(c);
    }
    let mut pieces: Vec<Vec<(Sign, [u32; 4])>> = piece_members
        .values()
        .map(|members| {
            members
                .iter()
                .map(|&start| encode_from(d, start))
                .min()
                .expect("pieces are nonempty")
        })
        .collect();
    pieces.sort();
    CanonicalForm {
        pieces,
        crossingless: d.unknot_arcs().len(),
    }
}

/// Breadth-first relabeling from `start`, visiting slots in order.
fn encode_from(d: &LinkDiagram, start: usize) -> Vec<(Sign, [u32; 4])> {
    let mut crossing_label: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arc_label: BTreeMap<u32, u32> = BTreeMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    crossing_label.insert(start, 0);
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        order.push(c);
        let x = &d.crossings()[c];
        for p in 0..4u8 {
            let slot = super::Slot::new(c, p);
            let a = x.slots[p as usize];
            let next = arc_label.len() as u32;
            arc_label.entry(a).or_insert(next);
            let other = d.other_end(slot).crossing;
            if !crossing_label.contains_key(&other) {
                crossing_label.insert(other, crossing_label.len());
                queue.push_back(other);
            }
        }
    }
    order
        .into_iter()
        .map(|c| {
            let x = &d.crossings()[c];
            let mut slots = [0u32; 4];
            for p in 0..4 {
                slots[p] = arc_label[&x.slots[p]];
            }
            (x.sign, slots)
        })
        .collect()
}
