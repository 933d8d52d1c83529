//! Oriented link diagrams in planar-diagram (PD) notation.
//!
//! Conventions used throughout the crate:
//!
//! * Each crossing lists four arc labels counterclockwise, starting at the
//!   incoming under-strand. Slot 0 is therefore always the head of its arc and
//!   slot 2 the tail of its arc.
//! * The over-strand runs between slots 1 and 3. A crossing is positive when it
//!   runs from slot 3 to slot 1 and negative when it runs from slot 1 to slot 3
//!   (right-hand rule). The stored [`Sign`] is the only orientation data a
//!   crossing carries, so sign and orientation cannot disagree.
//! * Crossingless components are carried explicitly as single-arc circles.
//! * Faces are traced on the 2-sphere, one sphere per connected piece of the
//!   diagram.

mod isomorphism;
mod moves;
mod pd;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use isomorphism::CanonicalForm;
pub use moves::{KinkSide, MoveKind, MoveSpec, MoveTrace};
pub use pd::{parse_pd, DiagramDocument};

pub type ArcId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arc {arc} appears {count} times (expected exactly 2)")]
    ArcMultiplicity { arc: ArcId, count: usize },
    #[error("unknot component arc {0} also appears in a crossing or twice")]
    UnknotArcReused(ArcId),
    #[error("diagram is not planar: piece with {vertices} crossings traces {faces} faces")]
    NonPlanar { vertices: usize, faces: usize },
    #[error("orientation inconsistent along arc {0}")]
    OrientationInconsistent(ArcId),
    #[error("crossing index {index} out of range (diagram has {count} crossings)")]
    InvalidCrossing { index: usize, count: usize },
    #[error("arc {0} does not exist")]
    InvalidArc(ArcId),
    #[error("move {kind} does not apply: {reason}")]
    PatternMismatch { kind: String, reason: String },
    #[error("invalid JSON document: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// A position on a crossing: crossing index plus slot 0..4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub crossing: usize,
    pub pos: u8,
}

impl Slot {
    pub fn new(crossing: usize, pos: u8) -> Self {
        Slot { crossing, pos: pos % 4 }
    }

    pub fn rotated(self, by: u8) -> Slot {
        Slot::new(self.crossing, (self.pos + by) % 4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub slots: [ArcId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(slots: [ArcId; 4], sign: Sign) -> Self {
        Crossing { slots, sign }
    }

    /// Whether the arc at `pos` flows into the crossing.
    pub fn is_incoming(&self, pos: u8) -> bool {
        match (pos % 4, self.sign) {
            (0, _) => true,
            (2, _) => false,
            (1, Sign::Positive) => false,
            (3, Sign::Positive) => true,
            (1, Sign::Negative) => true,
            (3, Sign::Negative) => false,
            _ => unreachable!(),
        }
    }

    pub fn is_over(pos: u8) -> bool {
        pos % 2 == 1
    }
}

/// Tail and head of an oriented arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcEnds {
    pub tail: Slot,
    pub head: Slot,
}

/// Side of an oriented arc, looking along its orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One side of one arc; faces are cyclic sequences of darts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub arc: ArcId,
    pub side: Side,
}

/// A face of the diagram on the sphere of its piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub piece: usize,
    /// Boundary darts in traversal order (face on the right of traversal).
    pub darts: Vec<Dart>,
    /// Corners as (crossing, slot) where the face occupies the sector between
    /// `slot` and `slot + 1`.
    pub corners: Vec<Slot>,
}

impl Face {
    pub fn key(&self) -> Dart {
        *self.darts.iter().min().expect("faces have at least one dart")
    }
}

/// An oriented link component: arcs in the order they are traversed,
/// starting at the smallest label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub arcs: Vec<ArcId>,
    pub crossingless: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    unknots: Vec<ArcId>,
    ends: BTreeMap<ArcId, ArcEnds>,
    components: Vec<Component>,
    faces: Vec<Face>,
    pieces: usize,
    n_plus: usize,
    n_minus: usize,
}

impl LinkDiagram {
    /// Validate crossings plus crossingless circles and build the diagram.
    pub fn new(crossings: Vec<Crossing>, unknots: Vec<ArcId>) -> Result<Self, DiagramError> {
        let mut occurrences: BTreeMap<ArcId, Vec<Slot>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (p, &a) in x.slots.iter().enumerate() {
                occurrences.entry(a).or_default().push(Slot::new(c, p as u8));
            }
        }
        for (&arc, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(DiagramError::ArcMultiplicity {
                    arc,
                    count: occ.len(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        for &u in &unknots {
            if occurrences.contains_key(&u) || !seen.insert(u) {
                return Err(DiagramError::UnknotArcReused(u));
            }
        }

        let mut ends = BTreeMap::new();
        for (&arc, occ) in &occurrences {
            let inc: Vec<bool> = occ
                .iter()
                .map(|s| crossings[s.crossing].is_incoming(s.pos))
                .collect();
            let (tail, head) = match (inc[0], inc[1]) {
                (false, true) => (occ[0], occ[1]),
                (true, false) => (occ[1], occ[0]),
                _ => return Err(DiagramError::OrientationInconsistent(arc)),
            };
            ends.insert(arc, ArcEnds { tail, head });
        }

        let n_plus = crossings.iter().filter(|x| x.sign == Sign::Positive).count();
        let n_minus = crossings.len() - n_plus;
        let mut diagram = LinkDiagram {
            crossings,
            unknots,
            ends,
            components: Vec::new(),
            faces: Vec::new(),
            pieces: 0,
            n_plus,
            n_minus,
        };
        diagram.components = diagram.trace_components();
        diagram.trace_faces()?;
        Ok(diagram)
    }

    pub fn unknot() -> Self {
        LinkDiagram::new(Vec::new(), vec![1]).expect("unknot is valid")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, id: usize) -> Result<&Crossing, DiagramError> {
        self.crossings.get(id).ok_or(DiagramError::InvalidCrossing {
            index: id,
            count: self.crossings.len(),
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn unknot_arcs(&self) -> &[ArcId] {
        &self.unknots
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces
    }

    /// All arc labels, crossingless circles included.
    pub fn arcs(&self) -> Vec<ArcId> {
        let mut all: Vec<ArcId> = self.ends.keys().copied().chain(self.unknots.iter().copied()).collect();
        all.sort_unstable();
        all
    }

    pub fn has_arc(&self, arc: ArcId) -> bool {
        self.ends.contains_key(&arc) || self.unknots.contains(&arc)
    }

    pub fn max_arc(&self) -> ArcId {
        self.arcs().last().copied().unwrap_or(0)
    }

    /// Ends of an arc that runs between crossings (`None` for crossingless circles).
    pub fn arc_ends(&self, arc: ArcId) -> Option<ArcEnds> {
        self.ends.get(&arc).copied()
    }

    pub fn arc_at(&self, slot: Slot) -> ArcId {
        self.crossings[slot.crossing].slots[slot.pos as usize]
    }

    /// The other occurrence of the arc sitting at `slot`.
    pub fn other_end(&self, slot: Slot) -> Slot {
        let arc = self.arc_at(slot);
        let e = self.ends[&arc];
        if e.tail == slot {
            e.head
        } else {
            e.tail
        }
    }

    /// Crossing sign by the right-hand rule.
    pub fn crossing_sign(&self, id: usize) -> Result<Sign, DiagramError> {
        Ok(self.crossing(id)?.sign)
    }

    /// Index of the link component containing `arc`.
    pub fn component_of(&self, arc: ArcId) -> Option<usize> {
        self.components.iter().position(|c| c.arcs.contains(&arc))
    }

    fn trace_components(&self) -> Vec<Component> {
        let mut visited = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in self.ends.keys() {
            if visited.contains(&start) {
                continue;
            }
            let mut arcs = Vec::new();
            let mut a = start;
            loop {
                visited.insert(a);
                arcs.push(a);
                let head = self.ends[&a].head;
                a = self.arc_at(head.rotated(2));
                if a == start {
                    break;
                }
            }
            comps.push(Component {
                arcs,
                crossingless: false,
            });
        }
        for &u in &self.unknots {
            comps.push(Component {
                arcs: vec![u],
                crossingless: true,
            });
        }
        comps.sort_by_key(|c| c.arcs[0]);
        comps
    }

    fn trace_faces(&mut self) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        // pieces of the 4-valent graph
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for e in self.ends.values() {
            let (a, b) = (find(&mut parent, e.tail.crossing), find(&mut parent, e.head.crossing));
            if a != b {
                parent[a] = b;
            }
        }
        let mut piece_of_root = BTreeMap::new();
        let mut piece = vec![0usize; n];
        for c in 0..n {
            let r = find(&mut parent, c);
            let next = piece_of_root.len();
            piece[c] = *piece_of_root.entry(r).or_insert(next);
        }
        let crossing_pieces = piece_of_root.len();

        let mut faces = Vec::new();
        let mut visited = BTreeSet::new();
        for c in 0..n {
            for p in 0..4u8 {
                let start = Slot::new(c, p);
                if visited.contains(&start) {
                    continue;
                }
                let mut darts = Vec::new();
                let mut corners = Vec::new();
                let mut d = start;
                loop {
                    visited.insert(d);
                    let arc = self.arc_at(d);
                    let side = if self.ends[&arc].tail == d {
                        Side::Right
                    } else {
                        Side::Left
                    };
                    darts.push(Dart { arc, side });
                    let arrive = self.other_end(d);
                    corners.push(arrive);
                    d = arrive.rotated(1);
                    if d == start {
                        break;
                    }
                }
                faces.push(Face {
                    piece: piece[c],
                    darts,
                    corners,
                });
            }
        }
        for k in 0..crossing_pieces {
            let v = piece.iter().filter(|&&p| p == k).count();
            let f = faces.iter().filter(|f| f.piece == k).count();
            // V - E + F = 2 with E = 2V
            if f != v + 2 {
                return Err(DiagramError::NonPlanar {
                    vertices: v,
                    faces: f,
                });
            }
        }
        for (i, &u) in self.unknots.iter().enumerate() {
            for side in [Side::Left, Side::Right] {
                faces.push(Face {
                    piece: crossing_pieces + i,
                    darts: vec![Dart { arc: u, side }],
                    corners: Vec::new(),
                });
            }
        }
        faces.sort_by_key(|f| (f.piece, f.key()));
        self.pieces = crossing_pieces + self.unknots.len();
        self.faces = faces;
        Ok(())
    }

    /// Index of the face containing the given dart.
    pub fn face_of(&self, dart: Dart) -> Option<usize> {
        self.faces.iter().position(|f| f.darts.contains(&dart))
    }

    /// PD text, `U` tokens for crossingless circles. Arcs are renumbered along
    /// components so that the orientation survives a round trip through
    /// [`parse_pd`].
    pub fn to_pd(&self) -> String {
        let relabel = self.orientation_numbering();
        let mut items: Vec<String> = self
            .crossings
            .iter()
            .map(|x| {
                let s: Vec<String> = x.slots.iter().map(|a| relabel[a].to_string()).collect();
                format!("X({})", s.join(","))
            })
            .collect();
        items.extend(self.unknots.iter().map(|_| "U".to_string()));
        format!("PD[{}]", items.join(","))
    }

    fn orientation_numbering(&self) -> BTreeMap<ArcId, ArcId> {
        let mut map = BTreeMap::new();
        let mut next = 1;
        for comp in &self.components {
            if comp.crossingless {
                continue;
            }
            for &a in &comp.arcs {
                map.insert(a, next);
                next += 1;
            }
        }
        map
    }

    pub fn to_document(&self) -> DiagramDocument {
        DiagramDocument {
            crossings: self.crossings.iter().map(|x| x.slots).collect(),
            unknot_components: self.unknots.clone(),
            orientation: self.crossings.iter().map(|x| x.sign.value()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let doc: DiagramDocument =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        doc.into_diagram()
    }

    /// Mirror image: every crossing changes sign.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                // rotate so the old over-strand becomes the under-strand
                let over_in = if x.sign == Sign::Positive { 3 } else { 1 };
                let slots = [
                    x.slots[over_in],
                    x.slots[(over_in + 1) % 4],
                    x.slots[(over_in + 2) % 4],
                    x.slots[(over_in + 3) % 4],
                ];
                // old under-strand now over, running from old slot 0 to old slot 2
                let new_pos_of_old0 = (4 - over_in) % 4;
                let sign = if new_pos_of_old0 == 3 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                Crossing::new(slots, sign)
            })
            .collect();
        LinkDiagram::new(crossings, self.unknots.clone()).expect("mirror of a valid diagram is valid")
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        isomorphism::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &LinkDiagram) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil_left() -> LinkDiagram {
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap()
    }

    #[test]
    fn trefoil_faces_satisfy_euler() {
        let d = trefoil_left();
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.components()[0].arcs, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn every_dart_lies_on_exactly_one_face() {
        let d = trefoil_left();
        let mut darts: Vec<Dart> = d.faces().iter().flat_map(|f| f.darts.clone()).collect();
        darts.sort();
        let before = darts.len();
        darts.dedup();
        assert_eq!(before, darts.len());
        assert_eq!(darts.len(), 2 * 6);
    }

    #[test]
    fn mirror_flips_signs() {
        let d = trefoil_left();
        let m = d.mirror();
        assert_eq!(m.n_plus(), 3);
        assert_eq!(m.n_minus(), 0);
        assert_eq!(m.mirror().canonical_form(), d.canonical_form());
    }

    #[test]
    fn non_planar_rejected() {
        // both crossings listed with a twisted slot order
        let err = LinkDiagram::new(
            vec![
                Crossing::new([1, 3, 2, 4], Sign::Positive),
                Crossing::new([3, 2, 4, 1], Sign::Negative),
            ],
            vec![],
        );
        assert!(err.is_err());
    }

    #[test]
    fn unknot_has_two_faces() {
        let u = LinkDiagram::unknot();
        assert_eq!(u.faces().len(), 2);
        assert_eq!(u.piece_count(), 1);
        assert_eq!(u.n_minus(), 0);
    }
}
