use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::jones::LaurentPoly;
use super::snf::smith_invariants;
use super::{ComplexError, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub q: i64,
}

impl Generator {
    pub fn new(label: impl Into<String>, q: i64) -> Self {
        Generator { label: label.into(), q }
    }
}

/// Free bigraded complex over the integers. The differential raises the
/// homological degree: `d[i]` maps degree `i` to degree `i + 1` (rows index
/// generators of degree `i + 1`). Missing differentials are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedComplex {
    generators: BTreeMap<i64, Vec<Generator>>,
    differentials: BTreeMap<i64, SparseMatrix>,
}

impl BigradedComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// A complex concentrated in one degree.
    pub fn module(degree: i64, generators: Vec<Generator>) -> Self {
        let mut c = BigradedComplex::new();
        c.set_generators(degree, generators);
        c
    }

    pub fn set_generators(&mut self, degree: i64, generators: Vec<Generator>) {
        if generators.is_empty() {
            self.generators.remove(&degree);
        } else {
            self.generators.insert(degree, generators);
        }
    }

    pub fn set_differential(&mut self, degree: i64, d: SparseMatrix) {
        if d.is_zero() {
            self.differentials.remove(&degree);
        } else {
            self.differentials.insert(degree, d);
        }
    }

    pub fn generators(&self, degree: i64) -> &[Generator] {
        self.generators.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.generators(degree).len()
    }

    pub fn total_rank(&self) -> usize {
        self.generators.values().map(Vec::len).sum()
    }

    /// Degrees carrying at least one generator.
    pub fn degrees(&self) -> Vec<i64> {
        self.generators.keys().copied().collect()
    }

    pub fn differential(&self, degree: i64) -> SparseMatrix {
        self.differentials
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(degree + 1), self.dim(degree)))
    }

    pub fn differential_ref(&self, degree: i64) -> Option<&SparseMatrix> {
        self.differentials.get(&degree)
    }

    /// Shift homological degree by `di` and quantum degree by `dq`.
    pub fn shifted(&self, di: i64, dq: i64) -> BigradedComplex {
        BigradedComplex {
            generators: self
                .generators
                .iter()
                .map(|(&k, g)| {
                    (
                        k + di,
                        g.iter().map(|x| Generator::new(x.label.clone(), x.q + dq)).collect(),
                    )
                })
                .collect(),
            differentials: self.differentials.iter().map(|(&k, d)| (k + di, d.clone())).collect(),
        }
    }

    /// Dimensions match, d∘d = 0 and d preserves q.
    pub fn check(&self) -> Result<(), ComplexError> {
        for (&k, d) in &self.differentials {
            if d.rows() != self.dim(k + 1) || d.cols() != self.dim(k) {
                return Err(ComplexError::DimensionMismatch {
                    degree: k,
                    expected: (self.dim(k + 1), self.dim(k)),
                    found: (d.rows(), d.cols()),
                });
            }
            let src = self.generators(k);
            let dst = self.generators(k + 1);
            for (r, c, _) in d.triplets() {
                if src[c].q != dst[r].q {
                    return Err(ComplexError::NotHomogeneous { degree: k });
                }
            }
            if let Some(next) = self.differentials.get(&(k + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(ComplexError::NotSquareZero { degree: k });
                }
            }
        }
        Ok(())
    }

    fn q_blocks(&self, degree: i64) -> BTreeMap<i64, Vec<usize>> {
        let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, g) in self.generators(degree).iter().enumerate() {
            blocks.entry(g.q).or_default().push(k);
        }
        blocks
    }

    /// Homology by Smith normal form of each q-block of each differential.
    pub fn homology(&self) -> Result<HomologyTable, ComplexError> {
        self.check()?;
        let mut table = HomologyTable::default();
        let mut qs: BTreeSet<i64> = BTreeSet::new();
        for g in self.generators.values() {
            qs.extend(g.iter().map(|x| x.q));
        }
        let blocks: BTreeMap<i64, BTreeMap<i64, Vec<usize>>> =
            self.generators.keys().map(|&k| (k, self.q_blocks(k))).collect();
        let empty = Vec::new();
        let block = |k: i64, q: i64| -> &Vec<usize> { blocks.get(&k).and_then(|b| b.get(&q)).unwrap_or(&empty) };
        // invariant factors of d[k] restricted to q
        let mut factors: BTreeMap<(i64, i64), Vec<num_bigint::BigInt>> = BTreeMap::new();
        for (&k, d) in &self.differentials {
            for &q in &qs {
                let (rows, cols) = (block(k + 1, q), block(k, q));
                if rows.is_empty() || cols.is_empty() {
                    continue;
                }
                factors.insert((k, q), smith_invariants(&d.select(rows, cols)));
            }
        }
        for &k in self.generators.keys() {
            for &q in &qs {
                let dim = block(k, q).len();
                if dim == 0 {
                    continue;
                }
                let out = factors.get(&(k, q)).map_or(0, Vec::len);
                let inc = factors.get(&(k - 1, q));
                let free = dim - out - inc.map_or(0, Vec::len);
                let torsion: Vec<u64> = inc
                    .into_iter()
                    .flatten()
                    .filter(|d| !d.is_one())
                    .map(|d| d.to_u64().expect("torsion order fits in u64"))
                    .collect();
                if free > 0 || !torsion.is_empty() {
                    table.groups.insert((k, q), Group { free_rank: free, torsion });
                }
            }
        }
        Ok(table)
    }

    /// Σ (−1)^i q^j over generators.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&k, gens) in &self.generators {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            for g in gens {
                p.add_term(g.q, sign);
            }
        }
        p
    }

    /// Direct sum, generators of `self` first.
    pub fn direct_sum(&self, other: &BigradedComplex) -> BigradedComplex {
        let mut out = BigradedComplex::new();
        let mut degrees: BTreeSet<i64> = self.degrees().into_iter().collect();
        degrees.extend(other.degrees());
        for &k in &degrees {
            let mut g = self.generators(k).to_vec();
            g.extend_from_slice(other.generators(k));
            out.set_generators(k, g);
        }
        for &k in &degrees {
            out.set_differential(k, self.differential(k).direct_sum(&other.differential(k)));
        }
        out
    }

    /// Position of each generator label, for basis-level comparisons.
    pub fn index(&self) -> BTreeMap<&str, (i64, usize)> {
        let mut out = BTreeMap::new();
        for (&k, gens) in &self.generators {
            for (n, g) in gens.iter().enumerate() {
                out.insert(g.label.as_str(), (k, n));
            }
        }
        out
    }

    /// Differential entries keyed by (source label, target label).
    pub fn labeled_entries(&self) -> BTreeMap<(String, String), i64> {
        let mut out = BTreeMap::new();
        for (&k, d) in &self.differentials {
            let src = self.generators(k);
            let dst = self.generators(k + 1);
            for (r, c, v) in d.triplets() {
                out.insert((src[c].label.clone(), dst[r].label.clone()), v);
            }
        }
        out
    }

    /// Same labeled generators in the same bidegrees and identical
    /// differential entries, regardless of generator order.
    pub fn same_up_to_order(&self, other: &BigradedComplex) -> bool {
        let gens = |c: &BigradedComplex| -> BTreeSet<(i64, Generator)> {
            c.generators
                .iter()
                .flat_map(|(&k, g)| g.iter().map(move |x| (k, x.clone())))
                .collect()
        };
        gens(self) == gens(other) && self.labeled_entries() == other.labeled_entries()
    }
}

/// A finitely generated abelian group: Z^free ⊕ ⨁ Z/t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub groups: BTreeMap<(i64, i64), Group>,
}

#[derive(Serialize, Deserialize)]
struct GroupRecord {
    i: i64,
    q: i64,
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct TableRecord {
    groups: Vec<GroupRecord>,
}

impl Serialize for HomologyTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableRecord {
            groups: self
                .groups
                .iter()
                .map(|(&(i, q), g)| GroupRecord {
                    i,
                    q,
                    free_rank: g.free_rank,
                    torsion: g.torsion.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomologyTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = TableRecord::deserialize(d)?;
        Ok(HomologyTable {
            groups: rec
                .groups
                .into_iter()
                .map(|g| {
                    (
                        (g.i, g.q),
                        Group {
                            free_rank: g.free_rank,
                            torsion: g.torsion,
                        },
                    )
                })
                .collect(),
        })
    }
}

impl HomologyTable {
    pub fn get(&self, i: i64, q: i64) -> Option<&Group> {
        self.groups.get(&(i, q))
    }

    pub fn total_free_rank(&self) -> usize {
        self.groups.values().map(|g| g.free_rank).sum()
    }

    /// Every torsion summand with its bidegree.
    pub fn torsion_summands(&self) -> Vec<((i64, i64), u64)> {
        self.groups
            .iter()
            .flat_map(|(&k, g)| g.torsion.iter().map(move |&t| (k, t)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Shift every bidegree.
    pub fn shifted(&self, di: i64, dq: i64) -> HomologyTable {
        HomologyTable {
            groups: self
                .groups
                .iter()
                .map(|(&(i, q), g)| ((i + di, q + dq), g.clone()))
                .collect(),
        }
    }

    /// Poincaré polynomial of the free part as Σ rank·(−1)^i q^j.
    pub fn euler_characteristic(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, q), g) in &self.groups {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(q, sign * g.free_rank as i64);
        }
        p
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Plain-text table: one line per bidegree.
    pub fn to_text(&self) -> String {
        let mut out = String::from("   i     q  group\n");
        for (&(i, q), g) in &self.groups {
            let mut parts = Vec::new();
            if g.free_rank > 0 {
                parts.push(if g.free_rank == 1 {
                    "Z".to_string()
                } else {
                    format!("Z^{}", g.free_rank)
                });
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            out.push_str(&format!("{i:>4}  {q:>4}  {}\n", parts.join(" + ")));
        }
        out
    }
}

/// A family of maps between two complexes, one matrix per source degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMap {
    matrices: BTreeMap<i64, SparseMatrix>,
}

impl ChainMap {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(matrices: BTreeMap<i64, SparseMatrix>) -> Self {
        let mut m = ChainMap::zero();
        for (k, a) in matrices {
            m.set(k, a);
        }
        m
    }

    /// A map between complexes concentrated in degree 0.
    pub fn degree_zero(m: SparseMatrix) -> Self {
        ChainMap::new([(0, m)].into())
    }

    pub fn identity(c: &BigradedComplex) -> Self {
        ChainMap::new(c.degrees().into_iter().map(|k| (k, SparseMatrix::identity(c.dim(k)))).collect())
    }

    pub fn set(&mut self, degree: i64, m: SparseMatrix) {
        if m.is_zero() {
            self.matrices.remove(&degree);
        } else {
            self.matrices.insert(degree, m);
        }
    }

    pub fn get(&self, degree: i64) -> Option<&SparseMatrix> {
        self.matrices.get(&degree)
    }

    pub fn matrix(&self, degree: i64, src: &BigradedComplex, dst: &BigradedComplex) -> SparseMatrix {
        self.matrices
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(dst.dim(degree), src.dim(degree)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.matrices.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.matrices.is_empty()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> ChainMap {
        ChainMap::new(
            inner
                .matrices
                .iter()
                .filter_map(|(k, b)| self.matrices.get(k).map(|a| (*k, a.mul(b))))
                .collect(),
        )
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut out = self.clone();
        for (&k, b) in &other.matrices {
            let sum = match self.matrices.get(&k) {
                Some(a) => a.add(b),
                None => b.clone(),
            };
            out.set(k, sum);
        }
        out
    }

    pub fn scale(&self, k: i64) -> ChainMap {
        ChainMap::new(self.matrices.iter().map(|(&d, m)| (d, m.scale(k))).collect())
    }

    /// Shapes fit, maps preserve q, and f∘d = d∘f.
    pub fn check(&self, src: &BigradedComplex, dst: &BigradedComplex) -> Result<(), ComplexError> {
        for (&k, m) in &self.matrices {
            if m.rows() != dst.dim(k) || m.cols() != src.dim(k) {
                return Err(ComplexError::DimensionMismatch {
                    degree: k,
                    expected: (dst.dim(k), src.dim(k)),
                    found: (m.rows(), m.cols()),
                });
            }
            for (r, c, _) in m.triplets() {
                if src.generators(k)[c].q != dst.generators(k)[r].q {
                    return Err(ComplexError::NotHomogeneous { degree: k });
                }
            }
        }
        let mut degrees: BTreeSet<i64> = src.degrees().into_iter().collect();
        degrees.extend(dst.degrees());
        for &k in &degrees {
            let lhs = self.matrix(k + 1, src, dst).mul(&src.differential(k));
            let rhs = dst.differential(k).mul(&self.matrix(k, src, dst));
            if lhs != rhs {
                return Err(ComplexError::NotChainMap { degree: k });
            }
        }
        Ok(())
    }

    /// Block map between direct sums: block `((r, c), f)` sends summand `c`
    /// of the source to summand `r` of the target.
    pub fn from_blocks(src: &[&BigradedComplex], dst: &[&BigradedComplex], blocks: &[((usize, usize), &ChainMap)]) -> ChainMap {
        let mut degrees: BTreeSet<i64> = BTreeSet::new();
        for c in src.iter().chain(dst) {
            degrees.extend(c.degrees());
        }
        let offsets = |parts: &[&BigradedComplex], k: i64| -> Vec<usize> {
            let mut o = vec![0];
            for p in parts {
                o.push(o.last().unwrap() + p.dim(k));
            }
            o
        };
        let mut out = ChainMap::zero();
        for &k in &degrees {
            let (so, dof) = (offsets(src, k), offsets(dst, k));
            let mut t = Vec::new();
            for &((r, c), f) in blocks {
                if let Some(m) = f.get(k) {
                    t.extend(m.triplets().map(|(i, j, v)| (dof[r] + i, so[c] + j, v)));
                }
            }
            out.set(k, SparseMatrix::from_triplets(dof[dst.len()], so[src.len()], t));
        }
        out
    }

    /// Equal as linear maps (ignores explicitly stored zero matrices).
    pub fn same_as(&self, other: &ChainMap) -> bool {
        self.matrices == other.matrices
    }
}

/// Mapping cone of f: A → B with A in its own degrees and B shifted up by
/// one: d(a, b) = (d a, f a − d b).
pub fn cone(a: &BigradedComplex, b: &BigradedComplex, f: &ChainMap) -> BigradedComplex {
    let mut out = BigradedComplex::new();
    let mut degrees: BTreeSet<i64> = a.degrees().into_iter().collect();
    degrees.extend(b.degrees().into_iter().map(|k| k + 1));
    for &k in &degrees {
        let mut gens = a.generators(k).to_vec();
        gens.extend_from_slice(b.generators(k - 1));
        out.set_generators(k, gens);
    }
    for &k in &degrees {
        let (a0, b0) = (a.dim(k), b.dim(k - 1));
        let (a1, b1) = (a.dim(k + 1), b.dim(k));
        let mut t = Vec::new();
        if let Some(d) = a.differential_ref(k) {
            t.extend(d.triplets());
        }
        if let Some(m) = f.get(k) {
            t.extend(m.triplets().map(|(r, c, v)| (a1 + r, c, v)));
        }
        if let Some(d) = b.differential_ref(k - 1) {
            t.extend(d.triplets().map(|(r, c, v)| (a1 + r, a0 + c, -v)));
        }
        out.set_differential(k, SparseMatrix::from_triplets(a1 + b1, a0 + b0, t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(label: &str) -> Generator {
        Generator::new(label, 0)
    }

    #[test]
    fn cone_of_multiplication_by_two() {
        let a = BigradedComplex::module(0, vec![z("a")]);
        let b = BigradedComplex::module(0, vec![z("b")]);
        let f = ChainMap::degree_zero(SparseMatrix::from_dense(&[vec![2]]));
        let c = cone(&a, &b, &f);
        let h = c.homology().unwrap();
        assert_eq!(h.get(0, 0), None);
        assert_eq!(h.get(1, 0).unwrap().torsion, vec![2]);
    }

    #[test]
    fn homology_of_small_complexes() {
        let mut c = BigradedComplex::new();
        c.set_generators(0, vec![z("a")]);
        c.set_generators(1, vec![z("b")]);
        c.set_differential(0, SparseMatrix::from_dense(&[vec![6]]));
        let h = c.homology().unwrap();
        assert_eq!(h.groups.len(), 1);
        assert_eq!(h.get(1, 0).unwrap(), &Group { free_rank: 0, torsion: vec![6] });

        let mut c = BigradedComplex::new();
        c.set_generators(0, vec![z("a0"), z("a1")]);
        c.set_generators(1, vec![z("b0"), z("b1")]);
        c.set_differential(0, SparseMatrix::from_dense(&[vec![1, 0], vec![0, 0]]));
        let h = c.homology().unwrap();
        assert_eq!(h.get(0, 0).unwrap().free_rank, 1);
        assert_eq!(h.get(1, 0).unwrap().free_rank, 1);
    }

    #[test]
    fn non_square_zero_rejected() {
        let mut c = BigradedComplex::new();
        for k in 0..3 {
            c.set_generators(k, vec![z("g")]);
        }
        c.set_differential(0, SparseMatrix::identity(1));
        c.set_differential(1, SparseMatrix::identity(1));
        assert_eq!(c.homology().unwrap_err(), ComplexError::NotSquareZero { degree: 0 });
    }

    #[test]
    fn json_shape() {
        let c = BigradedComplex::module(0, vec![Generator::new("u", 1)]);
        let json = c.homology().unwrap().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["groups"][0]["i"], 0);
        assert_eq!(v["groups"][0]["q"], 1);
        assert_eq!(v["groups"][0]["free_rank"], 1);
        let back: HomologyTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c.homology().unwrap());
    }
}
