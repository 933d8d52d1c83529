//! The genus ≤ 1 spin modular functor in exact Gaussian-rational arithmetic,
//! the Dehn-twist computation in Λ[x], and a probe of the genus operad
//! x ∘ (y₁, …, y_k) = x + Σyᵢ − k + 1.

use std::fmt;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frobenius::{comultiply, multiply_at, Basis, Tensor};

pub type GaussianRational = Complex<Ratio<i64>>;

fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    Complex::new(Ratio::new(re.0, re.1), Ratio::new(im.0, im.1))
}

fn fmt_ratio(r: &Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_gr(z: &GaussianRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => fmt_ratio(&z.re),
        (true, false) => format!("{}i", fmt_ratio(&z.im)),
        (false, false) => {
            let sign = if z.im < Ratio::zero() { "-" } else { "+" };
            format!("{}{sign}{}i", fmt_ratio(&z.re), fmt_ratio(&z.im.abs()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl GaussianMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        GaussianMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![GaussianRational::zero(); n * n];
        for k in 0..n {
            e[k * n + k] = GaussianRational::one();
        }
        GaussianMatrix::new(n, n, e)
    }

    pub fn get(&self, r: usize, c: usize) -> GaussianRational {
        self.entries[r * self.cols + c]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &GaussianMatrix) -> GaussianMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut e = vec![GaussianRational::zero(); self.rows * other.cols];
        for r in 0..self.rows {
            for c in 0..other.cols {
                e[r * other.cols + c] = (0..self.cols).map(|k| self.get(r, k) * other.get(k, c)).sum();
            }
        }
        GaussianMatrix::new(self.rows, other.cols, e)
    }

    pub fn transpose(&self) -> GaussianMatrix {
        let mut e = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                e.push(self.get(r, c));
            }
        }
        GaussianMatrix::new(self.cols, self.rows, e)
    }

    pub fn conjugate(&self) -> GaussianMatrix {
        GaussianMatrix::new(self.rows, self.cols, self.entries.iter().map(|z| z.conj()).collect())
    }

    pub fn adjoint(&self) -> GaussianMatrix {
        self.transpose().conjugate()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_unitary(&self) -> bool {
        self.rows == self.cols && self.mul(&self.adjoint()) == GaussianMatrix::identity(self.rows)
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn pow(&self, k: u32) -> GaussianMatrix {
        (0..k).fold(GaussianMatrix::identity(self.rows), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for GaussianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_gr(&self.get(r, c))).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Value of the functor on a connected genus-g surface with `true_out`
/// truly outbound boundary circles: its dimension.
pub fn ls_value(genus: u32, true_out: usize) -> usize {
    match (genus, true_out) {
        (0, 1) => 1,
        (1, 0) => 2,
        _ => 0,
    }
}

/// Image kα + ℓβ of the reference curve under a torus mapping class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusClass {
    pub k: i64,
    pub l: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorusCase {
    Identity,
    Swap,
    F,
    FBar,
}

pub const TORUS_CASES: [TorusCase; 4] = [TorusCase::Identity, TorusCase::Swap, TorusCase::F, TorusCase::FBar];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabError {
    #[error("class ({k}, {l}) is not realized: need k odd with l even, or k even with l odd")]
    NotRealizable { k: i64, l: i64 },
}

impl TorusClass {
    pub fn new(k: i64, l: i64) -> Self {
        TorusClass { k, l }
    }

    pub fn case(self) -> Result<TorusCase, LabError> {
        match (self.k.rem_euclid(4), self.l.rem_euclid(4)) {
            (1, 0 | 2) => Ok(TorusCase::Identity),
            (3, 0 | 2) => Ok(TorusCase::Swap),
            (0 | 2, 1) => Ok(TorusCase::F),
            (0 | 2, 3) => Ok(TorusCase::FBar),
            _ => Err(LabError::NotRealizable { k: self.k, l: self.l }),
        }
    }
}

impl TorusCase {
    pub fn matrix(self) -> GaussianMatrix {
        let one = gr((1, 1), (0, 1));
        let zero = GaussianRational::zero();
        let p = gr((1, 2), (1, 2));
        let m = gr((1, 2), (-1, 2));
        let e = match self {
            TorusCase::Identity => vec![one, zero, zero, one],
            TorusCase::Swap => vec![zero, one, one, zero],
            TorusCase::F => vec![p, m, m, p],
            TorusCase::FBar => vec![m, p, p, m],
        };
        GaussianMatrix::new(2, 2, e)
    }

    pub fn gluing_vector(self) -> Vec<GaussianRational> {
        let one = gr((1, 1), (0, 1));
        let zero = GaussianRational::zero();
        match self {
            TorusCase::Identity => vec![one, zero],
            TorusCase::Swap => vec![zero, one],
            TorusCase::F => vec![gr((1, 2), (1, 2)), gr((1, 2), (-1, 2))],
            TorusCase::FBar => vec![gr((1, 2), (-1, 2)), gr((1, 2), (1, 2))],
        }
    }
}

/// The 2×2 matrix attached to a torus mapping class.
pub fn ls_two_morphism(class: TorusClass) -> Result<GaussianMatrix, LabError> {
    class.case().map(TorusCase::matrix)
}

/// Image of the generator under the gluing map for a torus mapping class.
pub fn ls_gluing_vector(class: TorusClass) -> Result<Vec<GaussianRational>, LabError> {
    class.case().map(TorusCase::gluing_vector)
}

/// `table[i][j]` is the index in `TORUS_CASES` of case i times case j, or
/// None if the product leaves the set.
pub fn group_table() -> Vec<Vec<Option<usize>>> {
    let mats: Vec<GaussianMatrix> = TORUS_CASES.iter().map(|c| c.matrix()).collect();
    mats.iter()
        .map(|a| mats.iter().map(|b| mats.iter().position(|m| *m == a.mul(b))).collect())
        .collect()
}

/// Letters of words in the mapping class group: S sends α to β, T² is the
/// square of the Dehn twist along α.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Letter {
    S,
    T2,
}

impl Letter {
    pub fn integer_matrix(self) -> [[i64; 2]; 2] {
        match self {
            Letter::S => [[0, -1], [1, 0]],
            Letter::T2 => [[1, 2], [0, 1]],
        }
    }

    /// Class of α under the letter: S ↦ (0, 1), T² ↦ (1, 0).
    pub fn class(self) -> TorusClass {
        let m = self.integer_matrix();
        TorusClass::new(m[0][0], m[1][0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordReport {
    pub words_checked: usize,
    /// Words whose class matrix differs from the product of letter matrices.
    pub failures: Vec<Vec<Letter>>,
}

/// For every word in S and T² up to `max_len` letters, compare the matrix of
/// the class of α under the product with the product of the letters'
/// matrices.
pub fn word_functoriality(max_len: usize) -> WordReport {
    let mut words_checked = 0;
    let mut failures = Vec::new();
    for len in 0..=max_len {
        for code in 0..1u32 << len {
            let word: Vec<Letter> = (0..len)
                .map(|k| if code >> k & 1 == 1 { Letter::T2 } else { Letter::S })
                .collect();
            let mut m = [[1i64, 0], [0, 1]];
            let mut product = GaussianMatrix::identity(2);
            for &letter in &word {
                let a = letter.integer_matrix();
                m = [
                    [m[0][0] * a[0][0] + m[0][1] * a[1][0], m[0][0] * a[0][1] + m[0][1] * a[1][1]],
                    [m[1][0] * a[0][0] + m[1][1] * a[1][0], m[1][0] * a[0][1] + m[1][1] * a[1][1]],
                ];
                product = product.mul(&ls_two_morphism(letter.class()).expect("letters are realizable"));
            }
            words_checked += 1;
            let ok = ls_two_morphism(TorusClass::new(m[0][0], m[1][0])).is_ok_and(|x| x == product);
            if !ok {
                failures.push(word);
            }
        }
    }
    WordReport { words_checked, failures }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehnReport {
    /// m∘Δ(1) as (word, coefficient) pairs.
    pub composite: Vec<(String, i64)>,
    /// The summands of Δ(1).
    pub paths: Vec<String>,
    /// Permutation of the summands induced by exchanging tensor factors.
    pub swap: Vec<usize>,
    pub swap_is_identity: bool,
    pub swap_squared_is_identity: bool,
}

fn word_name(w: &[Basis]) -> String {
    w.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("⊗")
}

/// m∘Δ(1) = 1⊗x + x⊗1 ↦ 2x: the two summands are exchanged by swapping
/// the tensor factors.
pub fn dehn_demo() -> DehnReport {
    let delta: Tensor = comultiply(Basis::One);
    let composite = multiply_at(&delta, 0).iter().map(|(w, &c)| (word_name(w), c)).collect();
    let words: Vec<Vec<Basis>> = delta.keys().cloned().collect();
    let swap: Vec<usize> = words
        .iter()
        .map(|w| {
            let rev: Vec<Basis> = w.iter().rev().copied().collect();
            words.iter().position(|x| *x == rev).expect("Δ(1) is symmetric")
        })
        .collect();
    let swap_is_identity = swap.iter().enumerate().all(|(k, &s)| k == s);
    let swap_squared_is_identity = swap.iter().enumerate().all(|(k, &s)| swap[s] == k);
    DehnReport {
        composite,
        paths: words.iter().map(|w| word_name(w)).collect(),
        swap,
        swap_is_identity,
        swap_squared_is_identity,
    }
}

/// x ∘ (y₁, …, y_k) = x + Σyᵢ − k + 1, left unclamped.
pub fn operad_a_compose(x: i64, ys: &[i64]) -> i64 {
    x + ys.iter().sum::<i64>() - ys.len() as i64 + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityWitness {
    pub x: i64,
    pub ys: Vec<i64>,
    /// Inputs grafted onto each yᵢ.
    pub zs: Vec<Vec<i64>>,
    /// (x ∘ ys) ∘ (all zs)
    pub grafted_after: i64,
    /// x ∘ (y₁ ∘ zs₁, …, y_k ∘ zs_k)
    pub grafted_before: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadReport {
    pub max_value: i64,
    pub max_arity: usize,
    pub cases_checked: usize,
    pub failures: usize,
    pub associative: bool,
    pub witness: Option<AssociativityWitness>,
    pub closed_in_naturals: bool,
    /// (x, ys, value) with a negative composite.
    pub negative_witness: Option<(i64, Vec<i64>, i64)>,
}

fn tuples(max_value: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=max_value).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Exhaustive comparison of the two ways of grafting two levels: all
/// values in 0..=max_value, between 1 and `max_arity` inputs per operation.
/// Arity 0 is left out since x ∘ () = x + 1 is not a unit.
pub fn operad_probe(max_value: i64, max_arity: usize) -> OperadReport {
    let mut cases_checked = 0;
    let mut failures = 0;
    let mut witness = None;
    let mut negative_witness = None;
    for x in 0..=max_value {
        for k in 1..=max_arity {
            for ys in tuples(max_value, k) {
                let value = operad_a_compose(x, &ys);
                if value < 0 && negative_witness.is_none() {
                    negative_witness = Some((x, ys.clone(), value));
                }
                for arities in tuples(max_arity as i64 - 1, k) {
                    let blocks: Vec<Vec<Vec<i64>>> = arities.iter().map(|&m| tuples(max_value, m as usize + 1)).collect();
                    let mut choice = vec![0usize; k];
                    loop {
                        let zs: Vec<Vec<i64>> = (0..k).map(|i| blocks[i][choice[i]].clone()).collect();
                        let flat: Vec<i64> = zs.iter().flatten().copied().collect();
                        let after = operad_a_compose(operad_a_compose(x, &ys), &flat);
                        let inner: Vec<i64> = ys.iter().zip(&zs).map(|(&y, z)| operad_a_compose(y, z)).collect();
                        let before = operad_a_compose(x, &inner);
                        cases_checked += 1;
                        if after != before {
                            failures += 1;
                            if witness.is_none() {
                                witness = Some(AssociativityWitness {
                                    x,
                                    ys: ys.clone(),
                                    zs,
                                    grafted_after: after,
                                    grafted_before: before,
                                });
                            }
                        }
                        // odometer over the block choices
                        let mut i = 0;
                        while i < k {
                            choice[i] += 1;
                            if choice[i] < blocks[i].len() {
                                break;
                            }
                            choice[i] = 0;
                            i += 1;
                        }
                        if i == k {
                            break;
                        }
                    }
                }
            }
        }
    }
    OperadReport {
        max_value,
        max_arity,
        cases_checked,
        failures,
        associative: failures == 0,
        witness,
        closed_in_naturals: negative_witness.is_none(),
        negative_witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(ls_value(0, 1), 1);
        assert_eq!(ls_value(1, 0), 2);
        assert_eq!(ls_value(2, 0), 0);
    }

    #[test]
    fn cases() {
        assert_eq!(ls_two_morphism(TorusClass::new(1, 0)).unwrap(), GaussianMatrix::identity(2));
        assert_eq!(ls_two_morphism(TorusClass::new(0, 1)).unwrap(), TorusCase::F.matrix());
        assert!(ls_two_morphism(TorusClass::new(1, 1)).is_err());
        assert!(ls_two_morphism(TorusClass::new(2, 2)).is_err());
        let f = TorusCase::F.matrix();
        assert_eq!(f.mul(&f), TorusCase::Swap.matrix());
        assert_eq!(f.pow(4), GaussianMatrix::identity(2));
        assert_eq!(f.to_string(), "[1/2+1/2i, 1/2-1/2i]\n[1/2-1/2i, 1/2+1/2i]\n");
    }

    #[test]
    fn compose_examples() {
        assert_eq!(operad_a_compose(0, &[0]), 0);
        assert_eq!(operad_a_compose(3, &[1, 2]), 5);
    }

    #[test]
    fn dehn() {
        let r = dehn_demo();
        assert_eq!(r.composite, vec![("x".to_string(), 2)]);
        assert_eq!(r.paths, vec!["1⊗x".to_string(), "x⊗1".to_string()]);
        assert!(!r.swap_is_identity && r.swap_squared_is_identity);
    }

    #[test]
    fn operad_fails_at_arity_two() {
        let r = operad_probe(2, 2);
        assert!(!r.associative);
        let w = r.witness.unwrap();
        assert_eq!(w.ys.len(), 2);
        assert_eq!(w.grafted_after - w.grafted_before, -1);
        assert_eq!(operad_probe(3, 1).failures, 0);
    }

    #[test]
    fn short_words() {
        let r = word_functoriality(3);
        assert_eq!(r.words_checked, 15);
        assert!(r.failures.is_empty());
    }
}
