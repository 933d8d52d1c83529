//! The Khovanov complex of a diagram: labelings of resolutions as
//! generators, edge maps from the cardinalities of the set-valued edge
//! matrices, total complex shifted down by n₋.

use std::collections::BTreeMap;

use crate::burnside::{edge_matrix, Label};
use crate::complex::{total_complex, BigradedComplex, ComplexError, CubeDiagram, Generator, SignRule, SparseMatrix};
use crate::cube::{CubeError, ResolutionCube};
use crate::diagram::LinkDiagram;
use crate::frobenius::bigrading;

#[derive(Debug, thiserror::Error)]
pub enum KhovanovError {
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Label word of a labeling, circle 0 first.
pub fn labeling_name(mask: u64, circles: usize) -> String {
    (0..circles).map(|k| Label::from_bit(mask, k).to_string()).collect()
}

/// The cube of free modules with the realized edge maps. Vertex generators
/// carry the quantum grading of the full complex.
pub fn khovanov_cube(cube: &ResolutionCube) -> Result<CubeDiagram, ComplexError> {
    let d = cube.diagram();
    let n = cube.dimension();
    let modules = cube
        .vertices()
        .map(|v| {
            let c = cube.resolution(v).circle_count();
            (0..1u64 << c)
                .map(|l| {
                    let xs = l.count_ones() as usize;
                    let g = bigrading(v.weight() as usize, c - xs, xs, d.n_plus(), d.n_minus());
                    Generator::new(labeling_name(l, c), g.q)
                })
                .collect()
        })
        .collect();
    let mut edges = BTreeMap::new();
    for e in cube.edges() {
        let m = edge_matrix(cube, &e).cardinality();
        let rows = 1usize << m.target_circles;
        let cols = 1usize << m.source_circles;
        let t = m.entries.iter().map(|(&(r, c), &v)| (r as usize, c as usize, v));
        edges.insert(
            (e.from.mask() as usize, e.coordinate),
            SparseMatrix::from_triplets(rows, cols, t),
        );
    }
    CubeDiagram::from_modules(n, modules, edges)
}

/// Khovanov complex with the given sign rule.
pub fn khovanov_complex_with(d: &LinkDiagram, rule: &SignRule) -> Result<BigradedComplex, KhovanovError> {
    let cube = ResolutionCube::new(d)?;
    let kc = khovanov_cube(&cube)?;
    Ok(total_complex(&kc, rule)?.shifted(-(d.n_minus() as i64), 0))
}

pub fn khovanov_complex(d: &LinkDiagram) -> Result<BigradedComplex, KhovanovError> {
    khovanov_complex_with(d, &SignRule::PrecedingOnes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_homology() {
        let h = khovanov_complex(&LinkDiagram::unknot()).unwrap().homology().unwrap();
        assert_eq!(h.groups.len(), 2);
        assert_eq!(h.get(0, 1).unwrap().free_rank, 1);
        assert_eq!(h.get(0, -1).unwrap().free_rank, 1);
    }
}
