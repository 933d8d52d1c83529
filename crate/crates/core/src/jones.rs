//! Laurent polynomials in q and the unnormalized Jones polynomial as the
//! graded Euler characteristic of the Khovanov complex.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::LinkDiagram;

/// Integer Laurent polynomial Σ c_k q^k with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coef: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef);
        p
    }

    /// q + q⁻¹, the value of a single circle.
    pub fn circle() -> Self {
        let mut p = Self::monomial(1, 1);
        p.add_term(-1, 1);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coef: i64) {
        let c = self.terms.entry(exp).or_default();
        *c += coef;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (e + k, c)))
    }

    /// Substitute q ↦ q⁻¹.
    pub fn invert(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "q^{e}")?,
                (_, 1) => write!(f, "{a}q")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Σ_ε (−1)^{|ε| − n₋} q^{|ε| + n₊ − 2n₋} (q + q⁻¹)^{#circles(ε)}, computed
/// from the cube of resolutions.
pub fn jones_polynomial(d: &LinkDiagram) -> Result<LaurentPoly, crate::cube::CubeError> {
    let cube = crate::cube::ResolutionCube::new(d)?;
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let mut out = LaurentPoly::zero();
    for v in cube.vertices() {
        let w = v.weight() as i64;
        let sign = if (w - nm).rem_euclid(2) == 0 { 1 } else { -1 };
        let circles = cube.resolution(v).circle_count() as u32;
        out = out.add(&LaurentPoly::circle().pow(circles).shift(w + np - 2 * nm).scale(sign));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let c = LaurentPoly::circle();
        assert_eq!(c.mul(&c), LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert!(c.add(&c.scale(-1)).is_zero());
        assert_eq!(c.to_string(), "q^-1 + q");
        assert_eq!(LaurentPoly::from_terms([(0, -2), (3, 1)]).to_string(), "-2 + q^3");
    }

    #[test]
    fn unknot() {
        assert_eq!(jones_polynomial(&LinkDiagram::unknot()).unwrap(), LaurentPoly::circle());
    }
}
