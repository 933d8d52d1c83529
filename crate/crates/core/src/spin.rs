//! Spin data on link projections: one Z/2 bit per arc and per crossing, a
//! spin bit per component, face labels by circuit parity, and the R1L/R1A
//! kink moves.
//!
//! A face is periodic (P) when the bits of its boundary arcs plus the bits of
//! the crossings at its corners sum to 1, antiperiodic (A) otherwise. Every
//! arc borders two faces and every crossing has four corners, so the number
//! of P faces on each piece is even.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ArcId, DiagramError, KinkSide, LinkDiagram, MoveSpec, Sign};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpinError {
    #[error("edge bits cover arcs {found:?}, diagram has {expected:?}")]
    EdgeDomain { expected: Vec<ArcId>, found: Vec<ArcId> },
    #[error("expected {expected} crossing bits, got {found}")]
    CrossingDomain { expected: usize, found: usize },
    #[error("expected {expected} component spins, got {found}")]
    ComponentDomain { expected: usize, found: usize },
    #[error("no arc {0}")]
    InvalidArc(ArcId),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaceLabel {
    A,
    P,
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaceLabel::A => "A",
            FaceLabel::P => "P",
        })
    }
}

/// Labels indexed like `LinkDiagram::faces`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLabelTable {
    pub labels: Vec<FaceLabel>,
}

impl FaceLabelTable {
    pub fn periodic_count(&self) -> usize {
        self.labels.iter().filter(|&&l| l == FaceLabel::P).count()
    }

    pub fn periodic_faces(&self) -> Vec<usize> {
        (0..self.labels.len()).filter(|&k| self.labels[k] == FaceLabel::P).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinProjection {
    #[serde(with = "diagram_json")]
    diagram: LinkDiagram,
    edge_bits: BTreeMap<ArcId, bool>,
    crossing_bits: Vec<bool>,
    component_spin: Vec<bool>,
}

mod diagram_json {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::diagram::{DiagramDocument, LinkDiagram};

    pub fn serialize<S: Serializer>(d: &LinkDiagram, s: S) -> Result<S::Ok, S::Error> {
        d.to_document().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LinkDiagram, D::Error> {
        let doc = DiagramDocument::deserialize(d)?;
        LinkDiagram::from_json(&serde_json::to_string(&doc).map_err(serde::de::Error::custom)?)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinMoveKind {
    R1L,
    R1A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinMove {
    pub kind: SpinMoveKind,
    pub arc: ArcId,
}

impl SpinProjection {
    pub fn new(
        diagram: LinkDiagram,
        edge_bits: BTreeMap<ArcId, bool>,
        crossing_bits: Vec<bool>,
        component_spin: Vec<bool>,
    ) -> Result<Self, SpinError> {
        let arcs = diagram.arcs();
        if !edge_bits.keys().copied().eq(arcs.iter().copied()) {
            return Err(SpinError::EdgeDomain {
                expected: arcs,
                found: edge_bits.keys().copied().collect(),
            });
        }
        if crossing_bits.len() != diagram.crossing_count() {
            return Err(SpinError::CrossingDomain {
                expected: diagram.crossing_count(),
                found: crossing_bits.len(),
            });
        }
        if component_spin.len() != diagram.components().len() {
            return Err(SpinError::ComponentDomain {
                expected: diagram.components().len(),
                found: component_spin.len(),
            });
        }
        Ok(SpinProjection {
            diagram,
            edge_bits,
            crossing_bits,
            component_spin,
        })
    }

    /// All bits zero.
    pub fn zero(diagram: LinkDiagram) -> Self {
        SpinProjection {
            edge_bits: diagram.arcs().into_iter().map(|a| (a, false)).collect(),
            crossing_bits: vec![false; diagram.crossing_count()],
            component_spin: vec![false; diagram.components().len()],
            diagram,
        }
    }

    pub fn random<R: Rng>(diagram: LinkDiagram, rng: &mut R) -> Self {
        SpinProjection {
            edge_bits: diagram.arcs().into_iter().map(|a| (a, rng.gen())).collect(),
            crossing_bits: (0..diagram.crossing_count()).map(|_| rng.gen()).collect(),
            component_spin: (0..diagram.components().len()).map(|_| rng.gen()).collect(),
            diagram,
        }
    }

    /// Every assignment of edge and crossing bits (component spins zero), in
    /// binary counting order.
    pub fn all_assignments(diagram: &LinkDiagram) -> impl Iterator<Item = SpinProjection> + '_ {
        let arcs = diagram.arcs();
        let n = arcs.len() + diagram.crossing_count();
        assert!(n < 32, "too many bits to enumerate");
        (0u64..1 << n).map(move |m| {
            let edge_bits = arcs.iter().enumerate().map(|(k, &a)| (a, m >> k & 1 == 1)).collect();
            let crossing_bits = (0..diagram.crossing_count())
                .map(|c| m >> (arcs.len() + c) & 1 == 1)
                .collect();
            SpinProjection {
                diagram: diagram.clone(),
                edge_bits,
                crossing_bits,
                component_spin: vec![false; diagram.components().len()],
            }
        })
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn edge_bit(&self, arc: ArcId) -> Option<bool> {
        self.edge_bits.get(&arc).copied()
    }

    pub fn edge_bits(&self) -> &BTreeMap<ArcId, bool> {
        &self.edge_bits
    }

    pub fn crossing_bits(&self) -> &[bool] {
        &self.crossing_bits
    }

    pub fn component_spin(&self) -> &[bool] {
        &self.component_spin
    }

    pub fn set_edge_bit(&mut self, arc: ArcId, bit: bool) -> Result<(), SpinError> {
        match self.edge_bits.get_mut(&arc) {
            Some(b) => {
                *b = bit;
                Ok(())
            }
            None => Err(SpinError::InvalidArc(arc)),
        }
    }

    pub fn face_labels(&self) -> FaceLabelTable {
        let labels = self
            .diagram
            .faces()
            .iter()
            .map(|f| {
                let edges = f.darts.iter().filter(|d| self.edge_bits[&d.arc]).count();
                let corners = f.corners.iter().filter(|s| self.crossing_bits[s.crossing]).count();
                if (edges + corners) % 2 == 1 {
                    FaceLabel::P
                } else {
                    FaceLabel::A
                }
            })
            .collect();
        FaceLabelTable { labels }
    }

    pub fn is_admissible(&self) -> bool {
        self.face_labels().periodic_count() == 0
    }

    /// Insert a kink on `arc` (positive, to its left). The loop and the new
    /// crossing get the given bits, the arc after the kink gets 0 and the
    /// part before keeps the old bit.
    fn kink(&self, arc: ArcId, loop_bit: bool, crossing_bit: bool) -> Result<SpinProjection, SpinError> {
        if !self.diagram.has_arc(arc) {
            return Err(SpinError::InvalidArc(arc));
        }
        let d = self.diagram.apply_move(&MoveSpec::R1 {
            sign: Sign::Positive,
            arc,
            side: KinkSide::Left,
        })?;
        let new = d.crossing_count() - 1;
        let mut edge_bits = BTreeMap::new();
        for a in d.arcs() {
            let bit = match self.edge_bits.get(&a) {
                Some(&b) => b,
                None => {
                    let ends = d.arc_ends(a).expect("listed arcs have ends");
                    ends.tail.crossing == new && ends.head.crossing == new && loop_bit
                }
            };
            edge_bits.insert(a, bit);
        }
        let mut crossing_bits = self.crossing_bits.clone();
        crossing_bits.push(crossing_bit);
        Ok(SpinProjection {
            diagram: d,
            edge_bits,
            crossing_bits,
            component_spin: self.component_spin.clone(),
        })
    }

    /// R1L: a kink whose face is antiperiodic and which flips the labels of
    /// the two faces the arc used to border.
    pub fn apply_r1l(&self, arc: ArcId) -> Result<SpinProjection, SpinError> {
        self.kink(arc, true, true)
    }

    /// R1A: a kink that leaves every old face label alone and reverses the
    /// spin of the arc's component.
    pub fn apply_r1a(&self, arc: ArcId) -> Result<SpinProjection, SpinError> {
        let mut out = self.kink(arc, false, false)?;
        let comp = self.diagram.component_of(arc).ok_or(SpinError::InvalidArc(arc))?;
        out.component_spin[comp] ^= true;
        Ok(out)
    }

    pub fn apply(&self, mv: SpinMove) -> Result<SpinProjection, SpinError> {
        match mv.kind {
            SpinMoveKind::R1L => self.apply_r1l(mv.arc),
            SpinMoveKind::R1A => self.apply_r1a(mv.arc),
        }
    }

    /// For each face of this projection, the index of the face of `after`
    /// containing its first boundary dart. Valid when `after` came from this
    /// projection by kink moves, which keep old arc labels at the start of
    /// each subdivided arc.
    pub fn face_correspondence(&self, after: &SpinProjection) -> Vec<usize> {
        self.diagram
            .faces()
            .iter()
            .map(|f| after.diagram.face_of(f.darts[0]).expect("kinks keep old darts"))
            .collect()
    }

    /// Solve d·c = ζ over GF(2), where ζ marks the periodic faces and d sends
    /// an arc to its two neighbouring faces, then apply R1L on every arc with
    /// c = 1.
    pub fn make_admissible(&self) -> (Vec<SpinMove>, SpinProjection) {
        let labels = self.face_labels();
        let faces = self.diagram.faces();
        let arcs = self.diagram.arcs();
        let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
        for (k, f) in faces.iter().enumerate() {
            for dart in &f.darts {
                let col = arcs.binary_search(&dart.arc).expect("face arcs are diagram arcs");
                incidence[k].push(col);
            }
        }
        let rhs: Vec<bool> = labels.labels.iter().map(|&l| l == FaceLabel::P).collect();
        let solution = solve_gf2(&incidence, arcs.len(), &rhs).expect("periodic faces come in pairs on each piece");
        let mut moves = Vec::new();
        let mut sp = self.clone();
        for (k, &arc) in arcs.iter().enumerate() {
            if solution[k] {
                sp = sp.apply_r1l(arc).expect("arc exists");
                moves.push(SpinMove {
                    kind: SpinMoveKind::R1L,
                    arc,
                });
            }
        }
        (moves, sp)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spin projections serialize")
    }
}

/// Solve A x = b over GF(2); row r of A lists the columns where it has a 1
/// (repeats cancel). Free variables are set to 0.
pub fn solve_gf2(rows: &[Vec<usize>], cols: usize, rhs: &[bool]) -> Option<Vec<bool>> {
    let words = cols / 64 + 1;
    let rhs_bit = cols;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut bits = vec![0u64; words];
            for &c in row {
                bits[c / 64] ^= 1 << (c % 64);
            }
            if b {
                bits[rhs_bit / 64] ^= 1 << (rhs_bit % 64);
            }
            bits
        })
        .collect();
    let get = |row: &[u64], c: usize| row[c / 64] >> (c % 64) & 1 == 1;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| get(&m[i], c)) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && get(row, c) {
                for (w, pw) in row.iter_mut().zip(&pivot) {
                    *w ^= pw;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| get(row, rhs_bit)) {
        return None;
    }
    let mut x = vec![false; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = get(&m[i], rhs_bit);
    }
    Some(x)
}
