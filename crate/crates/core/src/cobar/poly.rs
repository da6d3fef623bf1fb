use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::chains::add_term;
use crate::exactalg::{Ring, Scalar};

/// A generator `{x}`: basis element `idx` of `N_deg`, with `deg >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Gen {
    pub deg: usize,
    pub idx: usize,
}

impl Gen {
    pub fn new(deg: usize, idx: usize) -> Self {
        Gen { deg, idx }
    }

    /// Degree after desuspension.
    pub fn cobar_degree(&self) -> usize {
        self.deg - 1
    }
}

pub type Word = Vec<Gen>;

/// Cobar degree `Σ (deg - 1)` of a word.
pub fn word_degree(w: &[Gen]) -> usize {
    w.iter().map(Gen::cobar_degree).sum()
}

/// A finite linear combination of words in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPolynomial {
    ring: Ring,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPolynomial {
    pub fn zero(ring: Ring) -> Self {
        NCPolynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::monomial(ring, Vec::new(), ring.one())
    }

    pub fn generator(ring: Ring, g: Gen) -> Self {
        Self::monomial(ring, vec![g], ring.one())
    }

    pub fn monomial(ring: Ring, word: Word, coeff: Scalar) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(word, &coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(ring: Ring, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Gen]) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        add_term(&mut self.terms, w, c);
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &NCPolynomial) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), &(c * v));
        }
    }

    pub fn add(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.axpy(&self.ring.one(), other);
        out
    }

    pub fn sub(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.axpy(&-self.ring.one(), other);
        out
    }

    pub fn scale(&self, c: &Scalar) -> NCPolynomial {
        let mut out = Self::zero(self.ring);
        out.axpy(c, self);
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = Self::zero(self.ring);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// Coefficient of the empty word.
    pub fn augmentation(&self) -> Scalar {
        self.coeff(&[])
    }

    /// Longest word length, 0 for the zero polynomial.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Terms of a fixed cobar degree.
    pub fn homogeneous_part(&self, degree: usize) -> NCPolynomial {
        NCPolynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_degree(w) == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn change_ring(&self, ring: Ring) -> crate::Result<NCPolynomial> {
        let mut out = Self::zero(ring);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &ring.reduce(c)?);
        }
        Ok(out)
    }

    /// Renders with generator names supplied by `name`.
    pub fn render(&self, name: impl Fn(Gen) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                format!(
                    "{{{}}}",
                    w.iter().map(|g| name(*g)).collect::<Vec<_>>().join("|")
                )
            };
            let neg = matches!(c, Scalar::Int(v) if v.sign() == num_bigint::Sign::Minus);
            let abs = if neg { -c } else { c.clone() };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if abs.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{abs}{body}"));
            }
        }
        out
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(|g| format!("x{}.{}", g.deg, g.idx)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_render() {
        let z = Ring::Integers;
        let a = NCPolynomial::generator(z, Gen::new(1, 0));
        let one = NCPolynomial::one(z);
        let p = one.add(&a);
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(&[Gen::new(1, 0)]), z.from_i64(2));
        assert_eq!(sq.to_string(), "1 + 2{x1.0} + {x1.0|x1.0}");
        assert!(p.sub(&p).is_zero());
        assert_eq!(sq.augmentation(), z.one());
    }
}
