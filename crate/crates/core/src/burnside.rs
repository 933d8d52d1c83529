//! Matrices of finite sets over circle labelings: the set-valued Khovanov
//! functor on cube edges, composition along paths, ladybug matchings on
//! faces and the realization by cardinalities.
//!
//! A labeling of a resolution is a mask whose bit `k` is set when circle `k`
//! carries `x`. Matrix rows are target labelings and columns source labelings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{ComponentSignature, EdgeCobordism, FaceShape, ResolutionCube, SquareFace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BurnsideError {
    #[error("cannot compose: left factor has {left} source circles, right factor has {right} target circles")]
    IndexMismatch { left: usize, right: usize },
    #[error("face at {base:#b} in coordinates ({i},{j}) is not a ladybug face")]
    NotLadybug { base: u64, i: usize, j: usize },
    #[error("face at {base:#b} in coordinates ({i},{j}): paths disagree at entry ({row:#b},{column:#b})")]
    Incoherent {
        base: u64,
        i: usize,
        j: usize,
        row: u64,
        column: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "x")]
    X,
}

impl Label {
    pub fn from_bit(mask: u64, k: usize) -> Label {
        if mask >> k & 1 == 1 {
            Label::X
        } else {
            Label::One
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::One => "1",
            Label::X => "x",
        })
    }
}

/// Boundary circles that are truly outbound: outbound ones labeled 1 plus
/// inbound ones labeled x.
pub fn true_outbound_count(inbound: &[Label], outbound: &[Label]) -> usize {
    outbound.iter().filter(|&&l| l == Label::One).count() + inbound.iter().filter(|&&l| l == Label::X).count()
}

/// Named element of a matrix entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    Point,
    Choice(u8),
    /// One element per connected component of a cobordism.
    Tuple(Vec<Element>),
    /// Element of a composite: the middle labeling and the two factors.
    Path {
        via: u64,
        outer: Box<Element>,
        inner: Box<Element>,
    },
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Point => f.write_str("*"),
            Element::Choice(k) => write!(f, "{k}"),
            Element::Tuple(v) => {
                f.write_str("(")?;
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            Element::Path { via, outer, inner } => write!(f, "[{inner}|{via:b}|{outer}]"),
        }
    }
}

/// Value of a cobordism: one point for a genus-0 component with exactly one
/// true outbound circle, a two-element set for a torus component with none,
/// empty otherwise; multiplied over components.
pub fn lk_value(components: &[ComponentSignature]) -> Vec<Element> {
    let mut product = vec![Vec::new()];
    for c in components {
        let factor: Vec<Element> = match (c.genus, c.true_out) {
            (0, 1) => vec![Element::Point],
            (1, 0) => vec![Element::Choice(1), Element::Choice(2)],
            _ => return Vec::new(),
        };
        let mut next = Vec::with_capacity(product.len() * factor.len());
        for p in &product {
            for e in &factor {
                let mut q: Vec<Element> = p.clone();
                q.push(e.clone());
                next.push(q);
            }
        }
        product = next;
    }
    product.into_iter().map(Element::Tuple).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSetMatrix {
    pub target_circles: usize,
    pub source_circles: usize,
    /// Nonempty entries keyed by (target labeling, source labeling).
    pub entries: BTreeMap<(u64, u64), Vec<Element>>,
}

impl FiniteSetMatrix {
    pub fn identity(circles: usize) -> Self {
        let entries = (0..1u64 << circles).map(|l| ((l, l), vec![Element::Point])).collect();
        FiniteSetMatrix {
            target_circles: circles,
            source_circles: circles,
            entries,
        }
    }

    pub fn entry(&self, target: u64, source: u64) -> &[Element] {
        self.entries.get(&(target, source)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `self ∘ inner`: entry (t,s) is the disjoint union over middle labelings
    /// m of self(t,m) × inner(m,s).
    pub fn compose(&self, inner: &FiniteSetMatrix) -> Result<FiniteSetMatrix, BurnsideError> {
        if self.source_circles != inner.target_circles {
            return Err(BurnsideError::IndexMismatch {
                left: self.source_circles,
                right: inner.target_circles,
            });
        }
        let mut by_middle: BTreeMap<u64, Vec<(u64, &Vec<Element>)>> = BTreeMap::new();
        for (&(t, m), e) in &self.entries {
            by_middle.entry(m).or_default().push((t, e));
        }
        let mut entries: BTreeMap<(u64, u64), Vec<Element>> = BTreeMap::new();
        for (&(m, s), inner_elems) in &inner.entries {
            let Some(outs) = by_middle.get(&m) else { continue };
            for &(t, outer_elems) in outs {
                let slot = entries.entry((t, s)).or_default();
                for b in inner_elems {
                    for a in outer_elems {
                        slot.push(Element::Path {
                            via: m,
                            outer: Box::new(a.clone()),
                            inner: Box::new(b.clone()),
                        });
                    }
                }
            }
        }
        Ok(FiniteSetMatrix {
            target_circles: self.target_circles,
            source_circles: inner.source_circles,
            entries,
        })
    }

    pub fn cardinality(&self) -> IntMatrix {
        let entries = self
            .entries
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&k, v)| (k, v.len() as i64))
            .collect();
        IntMatrix {
            target_circles: self.target_circles,
            source_circles: self.source_circles,
            entries,
        }
    }
}

/// Sparse integer matrix over labelings; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub target_circles: usize,
    pub source_circles: usize,
    pub entries: BTreeMap<(u64, u64), i64>,
}

impl IntMatrix {
    pub fn get(&self, target: u64, source: u64) -> i64 {
        self.entries.get(&(target, source)).copied().unwrap_or(0)
    }

    pub fn mul(&self, inner: &IntMatrix) -> Result<IntMatrix, BurnsideError> {
        if self.source_circles != inner.target_circles {
            return Err(BurnsideError::IndexMismatch {
                left: self.source_circles,
                right: inner.target_circles,
            });
        }
        let mut by_middle: BTreeMap<u64, Vec<(u64, i64)>> = BTreeMap::new();
        for (&(t, m), &v) in &self.entries {
            by_middle.entry(m).or_default().push((t, v));
        }
        let mut entries: BTreeMap<(u64, u64), i64> = BTreeMap::new();
        for (&(m, s), &b) in &inner.entries {
            for &(t, a) in by_middle.get(&m).map(Vec::as_slice).unwrap_or(&[]) {
                *entries.entry((t, s)).or_default() += a * b;
            }
        }
        entries.retain(|_, v| *v != 0);
        Ok(IntMatrix {
            target_circles: self.target_circles,
            source_circles: inner.source_circles,
            entries,
        })
    }
}

/// Set-valued matrix of a cube edge.
pub fn edge_matrix(cube: &ResolutionCube, edge: &EdgeCobordism) -> FiniteSetMatrix {
    let composite = cube.composite(edge.from, edge.to).expect("edge endpoints are comparable");
    let src = cube.resolution(edge.from).circle_count();
    let dst = cube.resolution(edge.to).circle_count();
    let touched: Vec<usize> = (0..dst)
        .filter(|k| !edge.correspondence.iter().any(|&(_, t)| t == *k))
        .collect();
    let mut entries = BTreeMap::new();
    for s in 0..1u64 << src {
        // untouched circles are cylinders, nonempty only when labels agree
        let mut base = 0u64;
        for &(a, b) in &edge.correspondence {
            base |= (s >> a & 1) << b;
        }
        for choice in 0..1u64 << touched.len() {
            let mut t = base;
            for (bit, &k) in touched.iter().enumerate() {
                t |= (choice >> bit & 1) << k;
            }
            let value = lk_value(&composite.signature(s, t).components);
            if !value.is_empty() {
                entries.insert((t, s), value);
            }
        }
    }
    FiniteSetMatrix {
        target_circles: dst,
        source_circles: src,
        entries,
    }
}

/// The two path composites of a face: (through base+e_i, through base+e_j).
pub fn face_paths(cube: &ResolutionCube, face: &SquareFace) -> (FiniteSetMatrix, FiniteSetMatrix) {
    let m = |k: usize| edge_matrix(cube, &face.edges[k]);
    let via_i = m(2).compose(&m(0)).expect("face edges compose");
    let via_j = m(3).compose(&m(1)).expect("face edges compose");
    (via_i, via_j)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LadybugConvention {
    Left,
    #[default]
    Right,
}

impl FromStr for LadybugConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(LadybugConvention::Left),
            "right" => Ok(LadybugConvention::Right),
            other => Err(format!("unknown ladybug convention '{other}'")),
        }
    }
}

impl fmt::Display for LadybugConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LadybugConvention::Left => "left",
            LadybugConvention::Right => "right",
        })
    }
}

/// Bijection between the elements of one entry on the two paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryBijection {
    pub target: u64,
    pub source: u64,
    /// (element via base+e_i, element via base+e_j)
    pub pairs: Vec<(Element, Element)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadybugMatching {
    pub base: u64,
    pub i: usize,
    pub j: usize,
    pub convention: LadybugConvention,
    pub entries: Vec<EntryBijection>,
}

impl LadybugMatching {
    /// Whether `other` is this matching followed by swapping the two
    /// elements of every entry.
    pub fn differs_by_transposition(&self, other: &LadybugMatching) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| {
                let image = |e: &EntryBijection, x: &Element| e.pairs.iter().find(|p| p.0 == *x).map(|p| p.1.clone());
                a.pairs.len() == 2
                    && b.pairs.len() == 2
                    && (a.target, a.source) == (b.target, b.source)
                    && a.pairs.iter().all(|(x, y)| image(b, x).is_some_and(|z| z != *y))
            })
    }
}

fn via(e: &Element) -> u64 {
    match e {
        Element::Path { via, .. } => *via,
        _ => unreachable!("composite elements are paths"),
    }
}

pub fn ladybug_match(
    cube: &ResolutionCube,
    face: &SquareFace,
    convention: LadybugConvention,
) -> Result<LadybugMatching, BurnsideError> {
    let geometry = cube.ladybug_geometry(face).ok_or(BurnsideError::NotLadybug {
        base: face.base.mask(),
        i: face.i,
        j: face.j,
    })?;
    let pair = match convention {
        LadybugConvention::Right => geometry.right_pair,
        LadybugConvention::Left => geometry.left_pair(),
    };
    let (pi, pj) = face_paths(cube, face);
    let res_i = cube.resolution(face.base.with(face.i));
    let res_j = cube.resolution(face.base.with(face.j));
    let mut entries = Vec::new();
    for (&(t, s), elems_i) in &pi.entries {
        if elems_i.len() != 2 {
            continue;
        }
        let elems_j = pj.entry(t, s);
        let mut pairs = Vec::new();
        for &p in &pair {
            let arc = geometry.segments[p];
            let ci = res_i.circle_of(arc);
            let cj = res_j.circle_of(arc);
            let a = elems_i.iter().find(|e| via(e) >> ci & 1 == 1);
            let b = elems_j.iter().find(|e| via(e) >> cj & 1 == 1);
            match (a, b) {
                (Some(a), Some(b)) => pairs.push((a.clone(), b.clone())),
                _ => {
                    return Err(BurnsideError::Incoherent {
                        base: face.base.mask(),
                        i: face.i,
                        j: face.j,
                        row: t,
                        column: s,
                    })
                }
            }
        }
        entries.push(EntryBijection {
            target: t,
            source: s,
            pairs,
        });
    }
    Ok(LadybugMatching {
        base: face.base.mask(),
        i: face.i,
        j: face.j,
        convention,
        entries,
    })
}

/// Entry-wise bijection between the two path composites of a face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCoherence {
    pub base: u64,
    pub i: usize,
    pub j: usize,
    pub shape: FaceShape,
    pub entries: Vec<EntryBijection>,
}

pub fn face_coherence(
    cube: &ResolutionCube,
    face: &SquareFace,
    convention: LadybugConvention,
) -> Result<FaceCoherence, BurnsideError> {
    let incoherent = |t: u64, s: u64| BurnsideError::Incoherent {
        base: face.base.mask(),
        i: face.i,
        j: face.j,
        row: t,
        column: s,
    };
    let (pi, pj) = face_paths(cube, face);
    let ladybug = if face.shape == FaceShape::Ladybug {
        Some(ladybug_match(cube, face, convention)?)
    } else {
        None
    };
    let mut keys: Vec<(u64, u64)> = pi.entries.keys().chain(pj.entries.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mut entries = Vec::new();
    for (t, s) in keys {
        let (a, b) = (pi.entry(t, s), pj.entry(t, s));
        if a.len() != b.len() {
            return Err(incoherent(t, s));
        }
        let pairs = match a.len() {
            1 => vec![(a[0].clone(), b[0].clone())],
            2 => ladybug
                .as_ref()
                .and_then(|m| m.entries.iter().find(|e| e.target == t && e.source == s))
                .ok_or_else(|| incoherent(t, s))?
                .pairs
                .clone(),
            _ => return Err(incoherent(t, s)),
        };
        entries.push(EntryBijection {
            target: t,
            source: s,
            pairs,
        });
    }
    Ok(FaceCoherence {
        base: face.base.mask(),
        i: face.i,
        j: face.j,
        shape: face.shape,
        entries,
    })
}
