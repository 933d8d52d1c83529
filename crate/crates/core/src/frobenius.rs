//! The Frobenius algebra Λ[x] = Z[x]/(x²) with basis {1, x}, and the
//! bigrading of Khovanov generators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use crate::burnside::Label as Basis;

/// Integer combination of tensor words in the basis.
pub type Tensor = BTreeMap<Vec<Basis>, i64>;

fn single(word: Vec<Basis>, c: i64) -> Tensor {
    let mut t = Tensor::new();
    if c != 0 {
        t.insert(word, c);
    }
    t
}

pub fn multiply(a: Basis, b: Basis) -> Tensor {
    match (a, b) {
        (Basis::One, Basis::One) => single(vec![Basis::One], 1),
        (Basis::One, Basis::X) | (Basis::X, Basis::One) => single(vec![Basis::X], 1),
        (Basis::X, Basis::X) => Tensor::new(),
    }
}

pub fn comultiply(a: Basis) -> Tensor {
    match a {
        Basis::One => {
            let mut t = single(vec![Basis::One, Basis::X], 1);
            t.insert(vec![Basis::X, Basis::One], 1);
            t
        }
        Basis::X => single(vec![Basis::X, Basis::X], 1),
    }
}

pub fn unit() -> Basis {
    Basis::One
}

/// Values of an augmentation Λ[x] → Z on the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Augmentation {
    pub one: i64,
    pub x: i64,
}

impl Augmentation {
    /// The unique augmentation (up to sign) making 0 → Z → Λ[x] → Z → 0 exact.
    pub const EXACT: Augmentation = Augmentation { one: 0, x: 1 };

    pub fn apply(&self, a: Basis) -> i64 {
        match a {
            Basis::One => self.one,
            Basis::X => self.x,
        }
    }

    /// The pairing (a, b) ↦ ε(ab) on the basis.
    pub fn pairing(&self) -> [[i64; 2]; 2] {
        let b = [Basis::One, Basis::X];
        let mut m = [[0; 2]; 2];
        for (r, &p) in b.iter().enumerate() {
            for (c, &q) in b.iter().enumerate() {
                m[r][c] = multiply(p, q).iter().map(|(w, k)| k * self.apply(w[0])).sum();
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub augmentation: Augmentation,
    pub unit_injective: bool,
    pub augmentation_surjective: bool,
    pub image_equals_kernel: bool,
    pub exact: bool,
}

/// Check 0 → Z →(η) Λ[x] →(ε) Z → 0 for the given augmentation.
pub fn exactness_check(eps: Augmentation) -> ExactnessReport {
    // η(1) = 1 = (1, 0) in the basis, which is injective
    let unit_injective = true;
    let augmentation_surjective = num_integer::Integer::gcd(&eps.one, &eps.x) == 1;
    // image(η) = span{(1,0)}; kernel(ε) = span{(x, -one)/g} for nonzero ε
    let image_equals_kernel = eps.one == 0 && eps.x.abs() == 1;
    ExactnessReport {
        augmentation: eps,
        unit_injective,
        augmentation_surjective,
        image_equals_kernel,
        exact: unit_injective && augmentation_surjective && image_equals_kernel,
    }
}

/// Apply a linear map on one tensor factor.
pub fn apply_at(t: &Tensor, pos: usize, f: impl Fn(Basis) -> Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (w, &c) in t {
        for (img, &k) in &f(w[pos]) {
            let mut word = w[..pos].to_vec();
            word.extend_from_slice(img);
            word.extend_from_slice(&w[pos + 1..]);
            *out.entry(word).or_default() += c * k;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Multiply tensor factors `pos` and `pos + 1`.
pub fn multiply_at(t: &Tensor, pos: usize) -> Tensor {
    let mut out = Tensor::new();
    for (w, &c) in t {
        for (img, &k) in &multiply(w[pos], w[pos + 1]) {
            let mut word = w[..pos].to_vec();
            word.extend_from_slice(img);
            word.extend_from_slice(&w[pos + 2..]);
            *out.entry(word).or_default() += c * k;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Homological and quantum degree of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bigrading {
    pub i: i64,
    pub q: i64,
}

/// Bigrading of a labeling with `ones` circles labeled 1 and `xs` labeled x
/// at a vertex of weight `weight`.
pub fn bigrading(weight: usize, ones: usize, xs: usize, n_plus: usize, n_minus: usize) -> Bigrading {
    let (w, np, nm) = (weight as i64, n_plus as i64, n_minus as i64);
    Bigrading {
        i: w - nm,
        q: ones as i64 - xs as i64 + w + np - 2 * nm,
    }
}
