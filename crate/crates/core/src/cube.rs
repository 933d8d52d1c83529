//! The cube of complete resolutions of a diagram, with saddle cobordisms on
//! edges, square-face shapes and genus bookkeeping for composite cobordisms.
//!
//! At a crossing the 0-resolution joins slots (0,1) and (2,3); the
//! 1-resolution joins (0,3) and (1,2). Circles are named by their smallest arc
//! label and listed in increasing name order, so circle `k` of a resolution is
//! bit `k` of a labeling mask.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::burnside::{true_outbound_count, Label};
use crate::diagram::{ArcId, LinkDiagram, Slot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CubeError {
    #[error("vertex has {found} coordinates but the diagram has {expected} crossings")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coordinate {0} is out of range")]
    InvalidCoordinate(usize),
    #[error("coordinate {0} is already 1")]
    CoordinateSet(usize),
    #[error("coordinates of a face must be distinct")]
    RepeatedCoordinate,
    #[error("vertices are not comparable")]
    Incomparable,
    #[error("diagram has {0} crossings; at most 63 are supported")]
    TooManyCrossings(usize),
}

/// A vertex of {0,1}^n, bit i = resolution of crossing i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeVertex {
    mask: u64,
    len: usize,
}

impl CubeVertex {
    pub fn new(mask: u64, len: usize) -> Result<Self, CubeError> {
        if len > 63 {
            return Err(CubeError::TooManyCrossings(len));
        }
        if mask >> len != 0 {
            return Err(CubeError::InvalidCoordinate(63 - mask.leading_zeros() as usize));
        }
        Ok(CubeVertex { mask, len })
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self, CubeError> {
        let mut mask = 0;
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(CubeError::InvalidCoordinate(i));
            }
            mask |= (b as u64) << i;
        }
        CubeVertex::new(mask, bits.len())
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bit(self, i: usize) -> bool {
        self.mask >> i & 1 == 1
    }

    pub fn weight(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn with(self, i: usize) -> CubeVertex {
        CubeVertex {
            mask: self.mask | 1 << i,
            len: self.len,
        }
    }

    pub fn le(self, other: CubeVertex) -> bool {
        self.len == other.len && self.mask & !other.mask == 0
    }

    pub fn bits(self) -> Vec<u8> {
        (0..self.len).map(|i| self.bit(i) as u8).collect()
    }
}

/// Where a circle passes through a resolved crossing: it enters the
/// smoothing at slot `enter` and leaves at slot `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Marker {
    pub crossing: usize,
    pub enter: u8,
    pub exit: u8,
}

/// A circle of a resolution. `markers[k]` sits between `arcs[k]` and
/// `arcs[k + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circle {
    pub name: ArcId,
    pub arcs: Vec<ArcId>,
    pub markers: Vec<Marker>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub vertex: CubeVertex,
    pub circles: Vec<Circle>,
    circle_of_arc: BTreeMap<ArcId, usize>,
}

impl Resolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of(&self, arc: ArcId) -> usize {
        self.circle_of_arc[&arc]
    }

    /// The two circles meeting the smoothing of `crossing` (equal when one
    /// circle passes through twice).
    pub fn circles_at(&self, d: &LinkDiagram, crossing: usize) -> (usize, usize) {
        let x = &d.crossings()[crossing];
        (self.circle_of(x.slots[0]), self.circle_of(x.slots[2]))
    }
}

/// Slot joined to `pos` by the smoothing of a crossing.
pub fn smoothing_partner(pos: u8, one: bool) -> u8 {
    match (pos, one) {
        (0, false) => 1,
        (1, false) => 0,
        (2, false) => 3,
        (3, false) => 2,
        (0, true) => 3,
        (3, true) => 0,
        (1, true) => 2,
        (2, true) => 1,
        _ => unreachable!("slot out of range"),
    }
}

pub fn resolve(d: &LinkDiagram, vertex: CubeVertex) -> Result<Resolution, CubeError> {
    if vertex.len() != d.crossing_count() {
        return Err(CubeError::LengthMismatch {
            expected: d.crossing_count(),
            found: vertex.len(),
        });
    }
    let mut circles = Vec::new();
    let mut visited = BTreeSet::new();
    for arc in d.arcs() {
        if visited.contains(&arc) {
            continue;
        }
        let Some(ends) = d.arc_ends(arc) else {
            visited.insert(arc);
            circles.push(Circle {
                name: arc,
                arcs: vec![arc],
                markers: Vec::new(),
            });
            continue;
        };
        let mut arcs = Vec::new();
        let mut markers = Vec::new();
        let mut current = arc;
        let mut arrive = ends.head;
        loop {
            visited.insert(current);
            arcs.push(current);
            let exit = smoothing_partner(arrive.pos, vertex.bit(arrive.crossing));
            markers.push(Marker {
                crossing: arrive.crossing,
                enter: arrive.pos,
                exit,
            });
            let leave = Slot::new(arrive.crossing, exit);
            current = d.arc_at(leave);
            if current == arc {
                break;
            }
            arrive = d.other_end(leave);
        }
        circles.push(Circle {
            name: arc,
            arcs,
            markers,
        });
    }
    let mut circle_of_arc = BTreeMap::new();
    for (k, c) in circles.iter().enumerate() {
        for &a in &c.arcs {
            circle_of_arc.insert(a, k);
        }
    }
    Ok(Resolution {
        vertex,
        circles,
        circle_of_arc,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeKind {
    Merge { inputs: [usize; 2], output: usize },
    Split { input: usize, outputs: [usize; 2] },
}

impl EdgeKind {
    pub fn is_merge(&self) -> bool {
        matches!(self, EdgeKind::Merge { .. })
    }
}

/// The saddle from `from` to `to = from + e_coordinate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCobordism {
    pub from: CubeVertex,
    pub to: CubeVertex,
    pub coordinate: usize,
    pub kind: EdgeKind,
    /// (source circle, target circle) for circles the saddle does not touch.
    pub correspondence: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceShape {
    Disjoint,
    AdjacentMergeMerge,
    AdjacentSplitSplit,
    Mixed,
    Ladybug,
}

/// Square face at `base` in coordinates `i < j`. Edges are ordered
/// [i from base, j from base, j from base+i, i from base+j].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFace {
    pub base: CubeVertex,
    pub i: usize,
    pub j: usize,
    pub edges: [EdgeCobordism; 4],
    pub shape: FaceShape,
}

impl SquareFace {
    pub fn top(&self) -> CubeVertex {
        self.base.with(self.i).with(self.j)
    }
}

/// Connected piece of a composite cobordism between two resolutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeComponent {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub saddles: usize,
    pub genus: u32,
}

impl CompositeComponent {
    pub fn euler_characteristic(&self) -> i64 {
        -(self.saddles as i64)
    }

    pub fn boundary(&self) -> usize {
        self.lower.len() + self.upper.len()
    }
}

/// Surface data of the composite of all saddles between `lower` and `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composite {
    pub lower: CubeVertex,
    pub upper: CubeVertex,
    pub components: Vec<CompositeComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSignature {
    pub genus: u32,
    pub boundary: usize,
    pub true_out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeSignature {
    pub genus: u32,
    pub true_out: usize,
    pub components: Vec<ComponentSignature>,
}

impl Composite {
    /// Genus and true outbound count of every component, given labelings of
    /// the lower (inbound) and upper (outbound) circles.
    pub fn signature(&self, lower_labels: u64, upper_labels: u64) -> CompositeSignature {
        let components: Vec<ComponentSignature> = self
            .components
            .iter()
            .map(|c| {
                let inbound: Vec<Label> = c.lower.iter().map(|&k| Label::from_bit(lower_labels, k)).collect();
                let outbound: Vec<Label> = c.upper.iter().map(|&k| Label::from_bit(upper_labels, k)).collect();
                ComponentSignature {
                    genus: c.genus,
                    boundary: c.boundary(),
                    true_out: true_outbound_count(&inbound, &outbound),
                }
            })
            .collect();
        CompositeSignature {
            genus: components.iter().map(|c| c.genus).sum(),
            true_out: components.iter().map(|c| c.true_out).sum(),
            components,
        }
    }

    /// Sum of component Euler characteristics; equals minus the saddle count.
    pub fn euler_characteristic(&self) -> i64 {
        self.components
            .iter()
            .map(|c| 2 - 2 * c.genus as i64 - c.boundary() as i64)
            .sum()
    }
}

/// Where the right pair of a ladybug face lies on its circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadybugGeometry {
    /// The common circle in the base resolution.
    pub circle: usize,
    /// First arc of each of the four segments cut out by the saddle
    /// endpoints, in traversal order.
    pub segments: [ArcId; 4],
    /// Indices into `segments` of the two opposite segments reached by
    /// turning right at the ends of either saddle.
    pub right_pair: [usize; 2],
}

impl LadybugGeometry {
    pub fn left_pair(&self) -> [usize; 2] {
        [(self.right_pair[0] + 1) % 4, (self.right_pair[1] + 1) % 4]
    }
}

/// All resolutions of a diagram, indexed by vertex mask.
#[derive(Clone, Debug)]
pub struct ResolutionCube {
    diagram: LinkDiagram,
    resolutions: Vec<Resolution>,
}

impl ResolutionCube {
    pub fn new(diagram: &LinkDiagram) -> Result<Self, CubeError> {
        let n = diagram.crossing_count();
        if n > 24 {
            return Err(CubeError::TooManyCrossings(n));
        }
        let resolutions = (0..1u64 << n)
            .map(|m| resolve(diagram, CubeVertex { mask: m, len: n }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ResolutionCube {
            diagram: diagram.clone(),
            resolutions,
        })
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn dimension(&self) -> usize {
        self.diagram.crossing_count()
    }

    pub fn vertex(&self, mask: u64) -> CubeVertex {
        CubeVertex {
            mask,
            len: self.dimension(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = CubeVertex> + '_ {
        (0..self.resolutions.len() as u64).map(|m| self.vertex(m))
    }

    pub fn resolution(&self, v: CubeVertex) -> &Resolution {
        &self.resolutions[v.mask as usize]
    }

    fn check(&self, v: CubeVertex) -> Result<(), CubeError> {
        if v.len() != self.dimension() {
            return Err(CubeError::LengthMismatch {
                expected: self.dimension(),
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn edge(&self, from: CubeVertex, i: usize) -> Result<EdgeCobordism, CubeError> {
        self.check(from)?;
        if i >= self.dimension() {
            return Err(CubeError::InvalidCoordinate(i));
        }
        if from.bit(i) {
            return Err(CubeError::CoordinateSet(i));
        }
        let to = from.with(i);
        let src = self.resolution(from);
        let dst = self.resolution(to);
        let (a, b) = src.circles_at(&self.diagram, i);
        let (c, e) = dst.circles_at(&self.diagram, i);
        let kind = if a != b {
            let mut inputs = [a, b];
            inputs.sort_unstable();
            EdgeKind::Merge { inputs, output: c }
        } else {
            let mut outputs = [c, e];
            outputs.sort_unstable();
            EdgeKind::Split { input: a, outputs }
        };
        let correspondence = src
            .circles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != a && k != b)
            .map(|(k, circle)| (k, dst.circle_of(circle.name)))
            .collect();
        Ok(EdgeCobordism {
            from,
            to,
            coordinate: i,
            kind,
            correspondence,
        })
    }

    /// All edges, ordered by source mask then coordinate.
    pub fn edges(&self) -> Vec<EdgeCobordism> {
        let n = self.dimension();
        let mut out = Vec::new();
        for v in self.vertices() {
            for i in 0..n {
                if !v.bit(i) {
                    out.push(self.edge(v, i).expect("valid edge"));
                }
            }
        }
        out
    }

    pub fn face(&self, base: CubeVertex, i: usize, j: usize) -> Result<SquareFace, CubeError> {
        if i == j {
            return Err(CubeError::RepeatedCoordinate);
        }
        let (i, j) = (i.min(j), i.max(j));
        let edges = [
            self.edge(base, i)?,
            self.edge(base, j)?,
            self.edge(base.with(i), j)?,
            self.edge(base.with(j), i)?,
        ];
        let res = self.resolution(base);
        let ci = res.circles_at(&self.diagram, i);
        let cj = res.circles_at(&self.diagram, j);
        let si: BTreeSet<usize> = [ci.0, ci.1].into();
        let sj: BTreeSet<usize> = [cj.0, cj.1].into();
        let shape = if si.is_disjoint(&sj) {
            FaceShape::Disjoint
        } else if si.len() == 1 && si == sj && self.interleaved(res, ci.0, i, j) {
            FaceShape::Ladybug
        } else {
            match (edges[0].kind.is_merge(), edges[1].kind.is_merge()) {
                (true, true) => FaceShape::AdjacentMergeMerge,
                (false, false) => FaceShape::AdjacentSplitSplit,
                _ => FaceShape::Mixed,
            }
        };
        Ok(SquareFace {
            base,
            i,
            j,
            edges,
            shape,
        })
    }

    fn interleaved(&self, res: &Resolution, circle: usize, i: usize, j: usize) -> bool {
        let seq: Vec<usize> = res.circles[circle]
            .markers
            .iter()
            .map(|m| m.crossing)
            .filter(|&c| c == i || c == j)
            .collect();
        seq.len() == 4 && seq[0] != seq[1] && seq[1] != seq[2] && seq[2] != seq[3]
    }

    /// Every square face, ordered by base mask then coordinates.
    pub fn faces(&self) -> Vec<SquareFace> {
        let n = self.dimension();
        let mut out = Vec::new();
        for v in self.vertices() {
            for i in 0..n {
                for j in i + 1..n {
                    if !v.bit(i) && !v.bit(j) {
                        out.push(self.face(v, i, j).expect("valid face"));
                    }
                }
            }
        }
        out
    }

    pub fn composite(&self, lower: CubeVertex, upper: CubeVertex) -> Result<Composite, CubeError> {
        self.check(lower)?;
        self.check(upper)?;
        if !lower.le(upper) {
            return Err(CubeError::Incomparable);
        }
        let lo = self.resolution(lower);
        let hi = self.resolution(upper);
        let nl = lo.circle_count();
        // union-find over lower circles 0..nl and upper circles nl..
        let mut parent: Vec<usize> = (0..nl + hi.circle_count()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (k, circle) in lo.circles.iter().enumerate() {
            for &a in &circle.arcs {
                let (x, y) = (find(&mut parent, k), find(&mut parent, nl + hi.circle_of(a)));
                if x != y {
                    parent[x] = y;
                }
            }
        }
        let mut by_root: BTreeMap<usize, CompositeComponent> = BTreeMap::new();
        for k in 0..parent.len() {
            let r = find(&mut parent, k);
            let comp = by_root.entry(r).or_insert_with(|| CompositeComponent {
                lower: Vec::new(),
                upper: Vec::new(),
                saddles: 0,
                genus: 0,
            });
            if k < nl {
                comp.lower.push(k);
            } else {
                comp.upper.push(k - nl);
            }
        }
        for c in 0..self.dimension() {
            if lower.bit(c) != upper.bit(c) {
                let k = lo.circle_of(self.diagram.crossings()[c].slots[0]);
                let r = find(&mut parent, k);
                by_root.get_mut(&r).expect("component exists").saddles += 1;
            }
        }
        let mut components: Vec<CompositeComponent> = by_root.into_values().collect();
        for comp in &mut components {
            // chi = 2 - 2g - b with chi = -saddles
            let twice = 2 + comp.saddles as i64 - comp.boundary() as i64;
            debug_assert!(twice >= 0 && twice % 2 == 0, "invalid genus bookkeeping");
            comp.genus = (twice / 2) as u32;
        }
        components.sort_by(|a, b| (&a.lower, &a.upper).cmp(&(&b.lower, &b.upper)));
        Ok(Composite {
            lower,
            upper,
            components,
        })
    }

    pub fn composite_signature(
        &self,
        lower: CubeVertex,
        upper: CubeVertex,
        lower_labels: u64,
        upper_labels: u64,
    ) -> Result<CompositeSignature, CubeError> {
        Ok(self.composite(lower, upper)?.signature(lower_labels, upper_labels))
    }

    /// Segment and right-pair data of a ladybug face (`None` for other shapes).
    pub fn ladybug_geometry(&self, face: &SquareFace) -> Option<LadybugGeometry> {
        if face.shape != FaceShape::Ladybug {
            return None;
        }
        let res = self.resolution(face.base);
        let (circle, _) = res.circles_at(&self.diagram, face.i);
        let c = &res.circles[circle];
        let positions: Vec<usize> = (0..c.markers.len())
            .filter(|&k| c.markers[k].crossing == face.i || c.markers[k].crossing == face.j)
            .collect();
        let len = c.arcs.len();
        let segments = [0, 1, 2, 3].map(|s| c.arcs[(positions[s] + 1) % len]);
        let mut pairs = Vec::new();
        for (s, &k) in positions.iter().enumerate() {
            let m = c.markers[k];
            // the base resolution smooths both crossings with 0, so turning
            // right off a saddle leads toward slot 0 or slot 2
            let right_slot = if m.enter == 0 || m.exit == 0 { 0 } else { 2 };
            let forward = m.exit == right_slot;
            pairs.push((m.crossing, if forward { s } else { (s + 3) % 4 }));
        }
        let from = |x: usize| -> [usize; 2] {
            let mut v: Vec<usize> = pairs.iter().filter(|p| p.0 == x).map(|p| p.1).collect();
            v.sort_unstable();
            [v[0], v[1]]
        };
        let right_pair = from(face.i);
        debug_assert_eq!(right_pair, from(face.j), "right pair depends on the saddle");
        debug_assert_eq!(right_pair[1] - right_pair[0], 2, "right pair segments are opposite");
        Some(LadybugGeometry {
            circle,
            segments,
            right_pair,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn cube(pd: &str) -> ResolutionCube {
        ResolutionCube::new(&parse_pd(pd).unwrap()).unwrap()
    }

    #[test]
    fn trefoil_extreme_resolutions() {
        // right-handed: the 0-resolution of a positive crossing is oriented
        let right = cube("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").diagram().mirror();
        let c = ResolutionCube::new(&right).unwrap();
        assert_eq!(c.resolution(c.vertex(0)).circle_count(), 2);
        assert_eq!(c.resolution(c.vertex(7)).circle_count(), 3);
        let left = cube("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]");
        assert_eq!(left.resolution(left.vertex(0)).circle_count(), 3);
        assert_eq!(left.resolution(left.vertex(7)).circle_count(), 2);
    }

    #[test]
    fn every_crossing_leaves_two_markers() {
        let c = cube("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]");
        for v in c.vertices() {
            let mut count = [0; 3];
            for circle in &c.resolution(v).circles {
                for m in &circle.markers {
                    count[m.crossing] += 1;
                }
            }
            assert_eq!(count, [2, 2, 2]);
        }
    }

    #[test]
    fn hopf_edges() {
        let c = cube("PD[X(1,3,2,4),X(3,1,4,2)]");
        let e = c.edge(c.vertex(0), 0).unwrap();
        assert!(e.kind.is_merge());
        let e = c.edge(c.vertex(1), 1).unwrap();
        assert!(!e.kind.is_merge());
        assert!(matches!(c.edge(c.vertex(1), 0), Err(CubeError::CoordinateSet(0))));
    }

    #[test]
    fn identity_composite_is_cylinders() {
        let c = cube("PD[X(1,3,2,4),X(3,1,4,2)]");
        let v = c.vertex(0);
        let comp = c.composite(v, v).unwrap();
        assert!(comp.components.iter().all(|k| k.genus == 0 && k.boundary() == 2));
        let sig = comp.signature(0b01, 0b01);
        assert!(sig.components.iter().all(|s| s.true_out == 1));
        let sig = comp.signature(0b01, 0b10);
        assert_eq!(sig.components.iter().filter(|s| s.true_out == 1).count(), 0);
    }

    #[test]
    fn hopf_full_composite_is_connected_genus_zero() {
        let c = cube("PD[X(1,3,2,4),X(3,1,4,2)]");
        let comp = c.composite(c.vertex(0), c.vertex(3)).unwrap();
        assert_eq!(comp.components.len(), 1);
        assert_eq!(comp.components[0].genus, 0);
        assert_eq!(comp.euler_characteristic(), -2);
    }

    #[test]
    fn incomparable_vertices_rejected() {
        let c = cube("PD[X(1,3,2,4),X(3,1,4,2)]");
        assert_eq!(c.composite(c.vertex(1), c.vertex(2)).unwrap_err(), CubeError::Incomparable);
    }

    #[test]
    fn unknot_cube_is_a_point() {
        let c = ResolutionCube::new(&LinkDiagram::unknot()).unwrap();
        assert_eq!(c.vertices().count(), 1);
        assert!(c.edges().is_empty());
        assert_eq!(c.resolution(c.vertex(0)).circle_count(), 1);
    }
}
