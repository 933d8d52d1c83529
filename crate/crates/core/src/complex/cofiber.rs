//! Cube-shaped diagrams of complexes and three chain-level models of their
//! higher cofiber: the signed total complex, iterated mapping cones, and the
//! homotopy colimit over partial functions J → {0, 1}.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{cone, BigradedComplex, ChainMap, ComplexError, Generator, SparseMatrix};

/// A complex at every vertex of {0,1}ⁿ (indexed by bit mask) and a chain map
/// along every edge. Missing edges are zero maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeDiagram {
    dim: usize,
    vertices: Vec<BigradedComplex>,
    edges: BTreeMap<(usize, usize), ChainMap>,
}

pub(crate) fn bits(mask: usize, n: usize) -> String {
    (0..n).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

impl CubeDiagram {
    /// Checks every vertex complex, every edge map and every square face.
    pub fn new(
        dim: usize,
        vertices: Vec<BigradedComplex>,
        edges: BTreeMap<(usize, usize), ChainMap>,
    ) -> Result<Self, ComplexError> {
        if vertices.len() != 1 << dim {
            return Err(ComplexError::VertexCount {
                dim,
                expected: 1 << dim,
                found: vertices.len(),
            });
        }
        for v in &vertices {
            v.check()?;
        }
        for (&(mask, direction), f) in &edges {
            if direction >= dim || mask >> direction & 1 == 1 || mask >= 1 << dim {
                return Err(ComplexError::InvalidEdge { mask, direction, dim });
            }
            f.check(&vertices[mask], &vertices[mask | 1 << direction])
                .map_err(|e| ComplexError::BadEdge {
                    mask,
                    direction,
                    reason: e.to_string(),
                })?;
        }
        let mut edges = edges;
        edges.retain(|_, f| !f.is_zero());
        let cube = CubeDiagram { dim, vertices, edges };
        cube.check_faces()?;
        Ok(cube)
    }

    /// Cube of complexes concentrated in degree 0, given by generators and
    /// integer matrices.
    pub fn from_modules(
        dim: usize,
        modules: Vec<Vec<Generator>>,
        edges: BTreeMap<(usize, usize), SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        let vertices = modules.into_iter().map(|g| BigradedComplex::module(0, g)).collect();
        let edges = edges.into_iter().map(|(k, m)| (k, ChainMap::degree_zero(m))).collect();
        CubeDiagram::new(dim, vertices, edges)
    }

    fn check_faces(&self) -> Result<(), ComplexError> {
        for base in 0..1usize << self.dim {
            for i in 0..self.dim {
                for j in i + 1..self.dim {
                    if base >> i & 1 == 1 || base >> j & 1 == 1 {
                        continue;
                    }
                    let via_i = self.edge_map(base | 1 << i, j).compose(&self.edge_map(base, i));
                    let via_j = self.edge_map(base | 1 << j, i).compose(&self.edge_map(base, j));
                    if !via_i.same_as(&via_j) {
                        return Err(ComplexError::NonCommutingFace { base, i, j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex(&self, mask: usize) -> &BigradedComplex {
        &self.vertices[mask]
    }

    pub fn vertices(&self) -> &[BigradedComplex] {
        &self.vertices
    }

    pub fn edge(&self, mask: usize, direction: usize) -> Option<&ChainMap> {
        self.edges.get(&(mask, direction))
    }

    /// The edge map, or zero when the edge carries none.
    pub fn edge_map(&self, mask: usize, direction: usize) -> ChainMap {
        self.edge(mask, direction).cloned().unwrap_or_default()
    }

    /// Composite of edge maps from `from` up to `to` (from ⊆ to), taken in
    /// increasing coordinate order.
    pub fn map(&self, from: usize, to: usize) -> ChainMap {
        assert_eq!(from & !to, 0, "{from:#b} is not below {to:#b}");
        let mut at = from;
        let mut out = ChainMap::identity(&self.vertices[from]);
        for i in 0..self.dim {
            if (to & !from) >> i & 1 == 1 {
                out = self.edge_map(at, i).compose(&out);
                at |= 1 << i;
            }
        }
        out
    }

    /// The (n−1)-cube with coordinate `fixed` frozen at `value`.
    pub fn restrict(&self, fixed: usize, value: bool) -> CubeDiagram {
        let low = (1usize << fixed) - 1;
        let lift = |m: usize| (m & low) | (value as usize) << fixed | (m & !low) << 1;
        let dim = self.dim - 1;
        let vertices = (0..1usize << dim).map(|m| self.vertices[lift(m)].clone()).collect();
        let mut edges = BTreeMap::new();
        for m in 0..1usize << dim {
            for d in 0..dim {
                if m >> d & 1 == 0 {
                    let full = d + (d >= fixed) as usize;
                    if let Some(f) = self.edge(lift(m), full) {
                        edges.insert((m, d), f.clone());
                    }
                }
            }
        }
        CubeDiagram { dim, vertices, edges }
    }

    pub fn total_rank(&self) -> usize {
        self.vertices.iter().map(BigradedComplex::total_rank).sum()
    }
}

/// Sign attached to the edge (v, i) in a total complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignRule {
    /// (−1)^{#{j < i : v_j = 1}}
    PrecedingOnes,
    /// (−1)^{#{j > i : v_j = 1}}
    FollowingOnes,
    /// PrecedingOnes twisted by a vertex gauge g: sign · g(v) · g(v + eᵢ),
    /// where `true` means −1.
    Gauged(Vec<bool>),
}

impl SignRule {
    pub fn sign(&self, mask: usize, i: usize) -> i64 {
        let parity = |m: usize| if m.count_ones().is_multiple_of(2) { 1 } else { -1 };
        match self {
            SignRule::PrecedingOnes => parity(mask & ((1 << i) - 1)),
            SignRule::FollowingOnes => parity(mask >> (i + 1)),
            SignRule::Gauged(g) => {
                let flip = |m: usize| if g[m] { -1 } else { 1 };
                parity(mask & ((1 << i) - 1)) * flip(mask) * flip(mask | 1 << i)
            }
        }
    }
}

/// Incremental construction of a complex from blocks.
#[derive(Default)]
struct Assembly {
    generators: BTreeMap<i64, Vec<Generator>>,
    entries: BTreeMap<i64, Vec<(usize, usize, i64)>>,
}

impl Assembly {
    /// Append a copy of `c`'s degree-`m` generators at `degree` with a label
    /// prefix; returns the offset of the block.
    fn place(&mut self, degree: i64, prefix: &str, c: &BigradedComplex, m: i64) -> usize {
        let gens = self.generators.entry(degree).or_default();
        let offset = gens.len();
        gens.extend(
            c.generators(m)
                .iter()
                .map(|g| Generator::new(format!("{prefix}:{}", g.label), g.q)),
        );
        offset
    }

    fn add(&mut self, degree: i64, src: usize, dst: usize, m: &SparseMatrix, sign: i64) {
        let out = self.entries.entry(degree).or_default();
        out.extend(m.triplets().map(|(r, c, v)| (dst + r, src + c, sign * v)));
    }

    fn add_identity(&mut self, degree: i64, src: usize, dst: usize, n: usize, sign: i64) {
        let out = self.entries.entry(degree).or_default();
        out.extend((0..n).map(|k| (dst + k, src + k, sign)));
    }

    fn finish(self) -> BigradedComplex {
        let mut c = BigradedComplex::new();
        let dims: BTreeMap<i64, usize> = self.generators.iter().map(|(&k, g)| (k, g.len())).collect();
        for (k, g) in self.generators {
            c.set_generators(k, g);
        }
        let dim = |k: i64| dims.get(&k).copied().unwrap_or(0);
        for (k, t) in self.entries {
            c.set_differential(k, SparseMatrix::from_triplets(dim(k + 1), dim(k), t));
        }
        c
    }
}

/// Start of the block of (vertex, internal degree) inside its total degree.
pub type Offsets = HashMap<(usize, i64), usize>;

fn total_with_offsets(cube: &CubeDiagram, rule: &SignRule) -> Result<(BigradedComplex, Offsets), ComplexError> {
    if let SignRule::Gauged(g) = rule {
        if g.len() != 1 << cube.dim {
            return Err(ComplexError::GaugeLength {
                expected: 1 << cube.dim,
                found: g.len(),
            });
        }
    }
    let n = cube.dim;
    let mut asm = Assembly::default();
    let mut offsets = Offsets::new();
    for v in 0..1usize << n {
        let c = &cube.vertices[v];
        let w = v.count_ones() as i64;
        for m in c.degrees() {
            offsets.insert((v, m), asm.place(m + w, &bits(v, n), c, m));
        }
    }
    for v in 0..1usize << n {
        let c = &cube.vertices[v];
        let w = v.count_ones() as i64;
        let internal = if w % 2 == 0 { 1 } else { -1 };
        for m in c.degrees() {
            let src = offsets[&(v, m)];
            if let Some(d) = c.differential_ref(m) {
                asm.add(m + w, src, offsets[&(v, m + 1)], d, internal);
            }
            for i in (0..n).filter(|i| v >> i & 1 == 0) {
                if let Some(f) = cube.edge(v, i).and_then(|f| f.get(m)) {
                    asm.add(m + w, src, offsets[&(v | 1 << i, m)], f, rule.sign(v, i));
                }
            }
        }
    }
    let out = asm.finish();
    debug_assert!(out.check().is_ok());
    Ok((out, offsets))
}

/// Total complex: vertex v in degree |v| + (its own degree), generators
/// labeled `bits:inner`, d = Σ sign·edge + (−1)^{|v|} d_v.
pub fn total_complex(cube: &CubeDiagram, rule: &SignRule) -> Result<BigradedComplex, ComplexError> {
    total_with_offsets(cube, rule).map(|(c, _)| c)
}

/// Iterated mapping cone, splitting off the first coordinate at each step.
/// Agrees with `total_complex(cube, &SignRule::PrecedingOnes)` generator by
/// generator and entry by entry.
pub fn cofiber_inductive(cube: &CubeDiagram) -> BigradedComplex {
    inductive(cube).0
}

fn prefixed(c: &BigradedComplex, prefix: &str) -> BigradedComplex {
    let mut out = c.clone();
    for k in c.degrees() {
        out.set_generators(
            k,
            c.generators(k)
                .iter()
                .map(|g| Generator::new(format!("{prefix}{}", g.label), g.q))
                .collect(),
        );
    }
    out
}

fn inductive(cube: &CubeDiagram) -> (BigradedComplex, Offsets) {
    if cube.dim == 0 {
        let c = prefixed(&cube.vertices[0], ":");
        let offsets = c.degrees().into_iter().map(|m| ((0, m), 0)).collect();
        return (c, offsets);
    }
    let (a, oa) = inductive(&cube.restrict(0, false));
    let (b, ob) = inductive(&cube.restrict(0, true));
    let mut f: BTreeMap<i64, Vec<(usize, usize, i64)>> = BTreeMap::new();
    for (&(v, m), &col) in &oa {
        if let Some(mat) = cube.edge(v << 1, 0).and_then(|e| e.get(m)) {
            let row = ob[&(v, m)];
            let t = m + v.count_ones() as i64;
            f.entry(t)
                .or_default()
                .extend(mat.triplets().map(|(r, c, x)| (row + r, col + c, x)));
        }
    }
    let f = ChainMap::new(
        f.into_iter()
            .map(|(t, e)| (t, SparseMatrix::from_triplets(b.dim(t), a.dim(t), e)))
            .collect(),
    );
    let c = cone(&prefixed(&a, "0"), &prefixed(&b, "1"), &f);
    let mut offsets = Offsets::new();
    for (&(v, m), &o) in &oa {
        offsets.insert((v << 1, m), o);
    }
    for (&(v, m), &o) in &ob {
        let t = m + v.count_ones() as i64 + 1;
        offsets.insert((v << 1 | 1, m), a.dim(t) + o);
    }
    (c, offsets)
}

/// Largest dimension handled by the simplicial replacement in
/// `cofiber_hocolim`; above it the product-cell model is used.
pub const SIMPLICIAL_LIMIT: usize = 4;

/// Homotopy colimit of the diagram Γ̃ on partial functions φ: J → {0,1}
/// (Γ̃(φ) = 0 if φ takes the value 0, otherwise the vertex χ_J).
pub fn cofiber_hocolim(cube: &CubeDiagram) -> BigradedComplex {
    if cube.dim <= SIMPLICIAL_LIMIT {
        cofiber_hocolim_simplicial(cube)
    } else {
        cofiber_hocolim_cellular(cube)
    }
}

/// A point of {∅,0,1}ⁿ: `dom` is where the function is defined, `val` where
/// it equals 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Partial {
    dom: usize,
    val: usize,
}

impl Partial {
    fn le(self, other: Partial) -> bool {
        self.dom & !other.dom == 0 && other.val & self.dom == self.val
    }

    fn is_live(self) -> bool {
        self.val == self.dom
    }

    fn render(self, n: usize) -> String {
        (0..n)
            .map(|i| match (self.dom >> i & 1, self.val >> i & 1) {
                (0, _) => '-',
                (_, 0) => '0',
                _ => '1',
            })
            .collect()
    }
}

/// Normalized Bousfield–Kan simplicial replacement: one copy of Γ̃(p₀) for
/// every strict chain p₀ < … < p_k, in cohomological degree n − k plus the
/// inner degree, with ∂ = Σ (−1)^j d_j and d_0 applying Γ̃(p₀ → p₁).
pub fn cofiber_hocolim_simplicial(cube: &CubeDiagram) -> BigradedComplex {
    let n = cube.dim;
    let points: Vec<Partial> = (0..1usize << n)
        .flat_map(|dom| {
            let subsets: Vec<usize> = (0..1usize << n).filter(|v| v & !dom == 0).collect();
            subsets.into_iter().map(move |val| Partial { dom, val })
        })
        .collect();
    let above: Vec<Vec<usize>> = points
        .iter()
        .map(|&p| {
            (0..points.len())
                .filter(|&q| points[q] != p && p.le(points[q]))
                .collect()
        })
        .collect();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..points.len())
        .filter(|&p| points[p].is_live())
        .map(|p| vec![p])
        .collect();
    while let Some(chain) = stack.pop() {
        for &q in &above[*chain.last().expect("chains are nonempty")] {
            let mut next = chain.clone();
            next.push(q);
            stack.push(next);
        }
        chains.push(chain);
    }
    chains.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let index: HashMap<&[usize], usize> = chains.iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();

    let mut asm = Assembly::default();
    let mut offsets: HashMap<(usize, i64), usize> = HashMap::new();
    for (id, chain) in chains.iter().enumerate() {
        let v = points[chain[0]].dom;
        let c = &cube.vertices[v];
        let shift = (n - (chain.len() - 1)) as i64;
        let name: Vec<String> = chain.iter().map(|&p| points[p].render(n)).collect();
        for m in c.degrees() {
            offsets.insert((id, m), asm.place(m + shift, &name.join("<"), c, m));
        }
    }
    let mut maps: HashMap<(usize, usize), ChainMap> = HashMap::new();
    for (id, chain) in chains.iter().enumerate() {
        let k = chain.len() - 1;
        let v = points[chain[0]].dom;
        let c = &cube.vertices[v];
        let shift = (n - k) as i64;
        let internal = if k % 2 == 0 { 1 } else { -1 };
        for m in c.degrees() {
            let src = offsets[&(id, m)];
            let t = m + shift;
            if let Some(d) = c.differential_ref(m) {
                asm.add(t, src, offsets[&(id, m + 1)], d, internal);
            }
            if k == 0 {
                continue;
            }
            let p1 = points[chain[1]];
            if p1.is_live() {
                let tail = index[&chain[1..]];
                let f = maps.entry((v, p1.dom)).or_insert_with(|| cube.map(v, p1.dom));
                if let Some(mat) = f.get(m) {
                    asm.add(t, src, offsets[&(tail, m)], mat, 1);
                }
            }
            for j in 1..=k {
                let mut face = chain.clone();
                face.remove(j);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let dst = offsets[&(index[face.as_slice()], m)];
                asm.add_identity(t, src, dst, c.dim(m), sign);
            }
        }
    }
    let out = asm.finish();
    debug_assert!(out.check().is_ok());
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cell {
    Base,
    One,
    ToZero,
    ToOne,
}

const CELLS: [Cell; 4] = [Cell::Base, Cell::One, Cell::ToZero, Cell::ToOne];

/// Cellular chains of the nerve of {∅ → 0, ∅ → 1}ⁿ taken as a product of
/// n copies of the one-dimensional nerve. Each coordinate contributes a cell
/// from {∅, 1, ∅→0, ∅→1}; the coefficient sits at the vertex whose
/// coordinates are 1 exactly where the cell is 1. Faces of the edge ∅→1 apply
/// the cube edge map; the endpoint 0 carries the zero module.
pub fn cofiber_hocolim_cellular(cube: &CubeDiagram) -> BigradedComplex {
    let n = cube.dim;
    let decode = |id: usize| -> Vec<Cell> { (0..n).map(|i| CELLS[id >> (2 * i) & 3]).collect() };
    let encode = |cells: &[Cell]| -> usize {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| CELLS.iter().position(|x| x == c).expect("known cell") << (2 * i))
            .sum()
    };
    let vertex = |cells: &[Cell]| -> usize {
        cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Cell::One)
            .map(|(i, _)| 1usize << i)
            .sum()
    };
    let edges = |cells: &[Cell]| cells.iter().filter(|&&c| matches!(c, Cell::ToZero | Cell::ToOne)).count();
    let render = |cells: &[Cell]| -> String {
        cells
            .iter()
            .map(|c| match c {
                Cell::Base => '-',
                Cell::One => '1',
                Cell::ToZero => 'z',
                Cell::ToOne => 'e',
            })
            .collect()
    };

    let count = 1usize << (2 * n);
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&id| (edges(&decode(id)), id));
    let mut asm = Assembly::default();
    let mut offsets: HashMap<(usize, i64), usize> = HashMap::new();
    for &id in &order {
        let cells = decode(id);
        let c = &cube.vertices[vertex(&cells)];
        let shift = (n - edges(&cells)) as i64;
        for m in c.degrees() {
            offsets.insert((id, m), asm.place(m + shift, &render(&cells), c, m));
        }
    }
    for &id in &order {
        let cells = decode(id);
        let v = vertex(&cells);
        let c = &cube.vertices[v];
        let k = edges(&cells);
        let t0 = (n - k) as i64;
        let internal = if k % 2 == 0 { 1 } else { -1 };
        for m in c.degrees() {
            let src = offsets[&(id, m)];
            let t = m + t0;
            if let Some(d) = c.differential_ref(m) {
                asm.add(t, src, offsets[&(id, m + 1)], d, internal);
            }
            let mut before = 0;
            for i in 0..n {
                let koszul = if before % 2 == 0 { 1 } else { -1 };
                match cells[i] {
                    Cell::ToZero | Cell::ToOne => {
                        let mut base = cells.clone();
                        base[i] = Cell::Base;
                        let dst = offsets[&(encode(&base), m)];
                        asm.add_identity(t, src, dst, c.dim(m), -koszul);
                        if cells[i] == Cell::ToOne {
                            if let Some(f) = cube.edge(v, i).and_then(|f| f.get(m)) {
                                let mut top = cells.clone();
                                top[i] = Cell::One;
                                asm.add(t, src, offsets[&(encode(&top), m)], f, koszul);
                            }
                        }
                        before += 1;
                    }
                    Cell::Base | Cell::One => {}
                }
            }
        }
    }
    let out = asm.finish();
    debug_assert!(out.check().is_ok());
    out
}

/// Bit mask with coordinate `coords[b]` set for every set bit `b` of `m`.
pub(crate) fn spread(coords: &[usize], m: usize) -> usize {
    coords
        .iter()
        .enumerate()
        .filter(|&(b, _)| m >> b & 1 == 1)
        .map(|(_, &c)| 1usize << c)
        .sum()
}

/// The cube over the `outer` coordinates whose vertex u is the total
/// complex (preceding-ones signs) of the sub-cube over the `inner`
/// coordinates with the outer ones fixed to u. Also returns, per outer
/// vertex, the offset of each (inner vertex, inner degree) block.
pub fn nest(
    cube: &CubeDiagram,
    outer: &[usize],
    inner: &[usize],
) -> Result<(CubeDiagram, Vec<Offsets>), ComplexError> {
    let n = cube.dim;
    let all: BTreeSet<usize> = outer.iter().chain(inner).copied().collect();
    if outer.len() + inner.len() != n || all.len() != n || all.iter().any(|&c| c >= n) {
        return Err(ComplexError::InvalidSplit(format!(
            "{outer:?} and {inner:?} do not partition 0..{n}"
        )));
    }
    let sub_cube = |u: usize| -> CubeDiagram {
        let base = spread(outer, u);
        let m = inner.len();
        let vertices = (0..1usize << m)
            .map(|w| cube.vertices[base | spread(inner, w)].clone())
            .collect();
        let mut edges = BTreeMap::new();
        for w in 0..1usize << m {
            for (b, &c) in inner.iter().enumerate() {
                if w >> b & 1 == 0 {
                    if let Some(f) = cube.edge(base | spread(inner, w), c) {
                        edges.insert((w, b), f.clone());
                    }
                }
            }
        }
        CubeDiagram { dim: m, vertices, edges }
    };
    let k = outer.len();
    let mut totals = Vec::new();
    for u in 0..1usize << k {
        totals.push(total_with_offsets(&sub_cube(u), &SignRule::PrecedingOnes)?);
    }
    let mut outer_edges = BTreeMap::new();
    for u in 0..1usize << k {
        for (a, &c) in outer.iter().enumerate() {
            if u >> a & 1 == 1 {
                continue;
            }
            let (src, so) = &totals[u];
            let (dst, dof) = &totals[u | 1 << a];
            let mut entries: BTreeMap<i64, Vec<(usize, usize, i64)>> = BTreeMap::new();
            for (&(w, m), &col) in so {
                let full = spread(outer, u) | spread(inner, w);
                if let Some(mat) = cube.edge(full, c).and_then(|f| f.get(m)) {
                    let row = dof[&(w, m)];
                    entries
                        .entry(m + w.count_ones() as i64)
                        .or_default()
                        .extend(mat.triplets().map(|(r, cc, x)| (row + r, col + cc, x)));
                }
            }
            let f = ChainMap::new(
                entries
                    .into_iter()
                    .map(|(t, e)| (t, SparseMatrix::from_triplets(dst.dim(t), src.dim(t), e)))
                    .collect(),
            );
            outer_edges.insert((u, a), f);
        }
    }
    let (vertices, offsets) = totals.into_iter().unzip();
    Ok((CubeDiagram::new(k, vertices, outer_edges)?, offsets))
}

/// Comparison of the nested cofiber C_k(C_m Γ) with the one-shot Cₙ Γ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssocReport {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
    pub same_basis: bool,
    pub entries_equal_up_to_sign: bool,
    pub sign_differences: usize,
    pub homology_equal: bool,
}

/// Take the cofiber over the `inner` coordinates at every vertex of the
/// `outer` cube, then the cofiber of the resulting cube, and compare with
/// the cofiber over all coordinates at once.
pub fn cofiber_assoc(cube: &CubeDiagram, outer: &[usize], inner: &[usize]) -> Result<AssocReport, ComplexError> {
    let n = cube.dim;
    let (outer_cube, _) = nest(cube, outer, inner)?;
    let nested = total_complex(&outer_cube, &SignRule::PrecedingOnes)?;
    let direct = total_complex(cube, &SignRule::PrecedingOnes)?;

    // "ubits:wbits:inner" → "fullbits:inner"
    let flatten = |label: &str| -> String {
        let mut parts = label.splitn(3, ':');
        let (ub, wb, rest) = (
            parts.next().unwrap_or(""),
            parts.next().unwrap_or(""),
            parts.next().unwrap_or(""),
        );
        let mut full = vec!['0'; n];
        for (a, ch) in ub.chars().enumerate() {
            full[outer[a]] = ch;
        }
        for (b, ch) in wb.chars().enumerate() {
            full[inner[b]] = ch;
        }
        format!("{}:{rest}", full.into_iter().collect::<String>())
    };
    let basis = |c: &BigradedComplex, relabel: &dyn Fn(&str) -> String| -> BTreeSet<(i64, String, i64)> {
        c.degrees()
            .into_iter()
            .flat_map(|k| c.generators(k).iter().map(move |g| (k, relabel(&g.label), g.q)))
            .collect()
    };
    let same_basis = basis(&nested, &flatten) == basis(&direct, &|s: &str| s.to_string());
    let nested_entries: BTreeMap<(String, String), i64> = nested
        .labeled_entries()
        .into_iter()
        .map(|((s, t), v)| ((flatten(&s), flatten(&t)), v))
        .collect();
    let direct_entries = direct.labeled_entries();
    let same_support = nested_entries.len() == direct_entries.len()
        && nested_entries
            .iter()
            .all(|(key, v)| direct_entries.get(key).is_some_and(|w| w.abs() == v.abs()));
    let sign_differences = nested_entries
        .iter()
        .filter(|(key, v)| direct_entries.get(*key).is_some_and(|w| w == &-**v))
        .count();
    Ok(AssocReport {
        outer: outer.to_vec(),
        inner: inner.to_vec(),
        same_basis,
        entries_equal_up_to_sign: same_basis && same_support,
        sign_differences,
        homology_equal: nested.homology()? == direct.homology()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(label: &str) -> Generator {
        Generator::new(label, 0)
    }

    fn doubling() -> CubeDiagram {
        CubeDiagram::from_modules(
            1,
            vec![vec![z("a")], vec![z("b")]],
            [((0, 0), SparseMatrix::from_dense(&[vec![2]]))].into(),
        )
        .unwrap()
    }

    #[test]
    fn one_dimensional_cofiber_is_the_cone() {
        let cube = doubling();
        for c in [
            cofiber_inductive(&cube),
            cofiber_hocolim_simplicial(&cube),
            cofiber_hocolim_cellular(&cube),
        ] {
            let h = c.homology().unwrap();
            assert_eq!(h.get(0, 0), None);
            assert_eq!(h.get(1, 0).unwrap().torsion, vec![2]);
            assert_eq!(h.groups.len(), 1);
        }
    }

    #[test]
    fn zero_cube_is_identity() {
        let mut inner = BigradedComplex::new();
        inner.set_generators(0, vec![z("a")]);
        inner.set_generators(1, vec![z("b")]);
        inner.set_differential(0, SparseMatrix::from_dense(&[vec![3]]));
        let cube = CubeDiagram::new(0, vec![inner.clone()], BTreeMap::new()).unwrap();
        let c = cofiber_inductive(&cube);
        assert_eq!(c.homology().unwrap(), inner.homology().unwrap());
        assert_eq!(c.generators(0)[0].label, ":a");
        assert_eq!(cofiber_hocolim(&cube).homology().unwrap(), inner.homology().unwrap());
    }

    #[test]
    fn single_corner_square() {
        let modules = vec![vec![], vec![], vec![], vec![z("g")]];
        let cube = CubeDiagram::from_modules(2, modules, BTreeMap::new()).unwrap();
        for c in [cofiber_inductive(&cube), cofiber_hocolim(&cube)] {
            let h = c.homology().unwrap();
            assert_eq!(h.groups.len(), 1);
            assert_eq!(h.get(2, 0).unwrap().free_rank, 1);
        }
    }

    #[test]
    fn non_commuting_square_rejected() {
        let one = || vec![z("g")];
        let edges = [
            ((0, 0), SparseMatrix::identity(1)),
            ((0, 1), SparseMatrix::identity(1)),
            ((1, 1), SparseMatrix::identity(1)),
            ((2, 0), SparseMatrix::identity(1).scale(2)),
        ];
        let err = CubeDiagram::from_modules(2, vec![one(), one(), one(), one()], edges.into()).unwrap_err();
        assert_eq!(err, ComplexError::NonCommutingFace { base: 0, i: 0, j: 1 });
    }

    #[test]
    fn inductive_equals_total_complex_with_preceding_signs() {
        let g = |s: &str| vec![z(s)];
        let id = SparseMatrix::identity(1);
        let edges = [
            ((0, 0), id.scale(2)),
            ((0, 1), id.clone()),
            ((1, 1), id.scale(3)),
            ((2, 0), id.scale(6)),
        ];
        let cube = CubeDiagram::from_modules(2, vec![g("a"), g("b"), g("c"), g("d")], edges.into()).unwrap();
        let a = cofiber_inductive(&cube);
        let b = total_complex(&cube, &SignRule::PrecedingOnes).unwrap();
        assert!(a.same_up_to_order(&b));
        let c = total_complex(&cube, &SignRule::FollowingOnes).unwrap();
        assert!(!a.same_up_to_order(&c));
        assert_eq!(a.homology().unwrap(), c.homology().unwrap());
        let report = cofiber_assoc(&cube, &[0], &[1]).unwrap();
        assert!(report.same_basis && report.entries_equal_up_to_sign && report.homology_equal);
        assert!(cofiber_assoc(&cube, &[0], &[0]).is_err());
    }
}
