use std::fmt;

use serde::Serialize;

use super::algebra::SimplicialBialgebra;
use super::coalgebra::{free_coalgebra, SimplicialCoalgebra};
use crate::exactalg::{Ring, SparseMatrix};
use crate::pi1::FiniteBialgebra;
use crate::sset::TwistingMorphism;
use crate::{Error, Result};

/// A degree -1 family `tau_n: C_n -> A_{n-1}`, `n >= 1`.
#[derive(Clone, Debug)]
pub struct SimplicialTwistingCochain {
    pub source: SimplicialCoalgebra,
    pub target: SimplicialBialgebra,
    maps: Vec<SparseMatrix>,
}

/// A failed equation. Equations 1-4 are the defining identities; 5 is the
/// coalgebra-map condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainViolation {
    pub level: usize,
    pub basis: String,
    pub equation: u8,
}

impl fmt::Display for CochainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "equation {} fails at level {} on {}",
            self.equation, self.level, self.basis
        )
    }
}

impl SimplicialTwistingCochain {
    /// `maps[n]` is `tau_n` for `n >= 1`; `maps[0]` is ignored.
    pub fn new(
        source: SimplicialCoalgebra,
        target: SimplicialBialgebra,
        maps: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let d = source.truncation();
        if target.truncation() < d || maps.len() != d + 1 {
            return Err(Error::Dimension(
                "twisting cochain must be given through the truncation".into(),
            ));
        }
        for n in 1..=d {
            if (maps[n].rows(), maps[n].cols()) != (target.rank(n - 1), source.rank(n)) {
                return Err(Error::Dimension(format!("tau_{n} has the wrong shape")));
            }
        }
        if !source.is_connected() {
            return Err(Error::Input(
                "twisting cochains need a connected source".into(),
            ));
        }
        Ok(SimplicialTwistingCochain {
            source,
            target,
            maps,
        })
    }

    pub fn map(&self, n: usize) -> &SparseMatrix {
        &self.maps[n]
    }

    pub fn truncation(&self) -> usize {
        self.source.truncation()
    }

    /// Failures of equations 1-4.
    pub fn violations(&self) -> Vec<CochainViolation> {
        let c = &self.source;
        let a = &self.target;
        let d = self.truncation();
        let mut out = Vec::new();
        let mut record = |n: usize,
                          eq: u8,
                          l: &SparseMatrix,
                          r: &SparseMatrix,
                          labels: &dyn Fn(usize) -> String| {
            for col in l.differing_columns(r) {
                out.push(CochainViolation {
                    level: n,
                    basis: labels(col),
                    equation: eq,
                });
            }
        };
        for n in 1..=d {
            let tau = self.map(n);
            let label_c = |i: usize| c.labels(n)[i].clone();
            if n >= 2 {
                for j in 2..=n {
                    let l = a.face(n - 1, j - 1).mul(tau).unwrap();
                    let r = self.map(n - 1).mul(c.face(n, j)).unwrap();
                    record(n, 1, &l, &r, &label_c);
                }
                let l = self.map(n - 1).mul(c.face(n, 1)).unwrap();
                let left = a.face(n - 1, 0).mul(tau).unwrap();
                let right = self.map(n - 1).mul(c.face(n, 0)).unwrap();
                let r = a
                    .level(n - 2)
                    .mult()
                    .mul(&left.kronecker(&right))
                    .unwrap()
                    .mul(c.coproduct(n))
                    .unwrap();
                record(n, 2, &l, &r, &label_c);
            }
            if n < d {
                for j in 1..=n {
                    let l = a.degeneracy(n - 1, j - 1).mul(tau).unwrap();
                    let r = self.map(n + 1).mul(c.degeneracy(n, j)).unwrap();
                    record(n, 3, &l, &r, &label_c);
                }
            }
        }
        for n in 0..d {
            let ra = a.rank(n);
            let rc = c.rank(n);
            let ring = c.ring();
            let ic = SparseMatrix::identity(rc, ring);
            let ia = SparseMatrix::identity(ra, ring);
            let ts0 = self.map(n + 1).mul(c.degeneracy(n, 0)).unwrap();
            let composite = ic
                .kronecker(a.level(n).mult())
                .mul(&ic.kronecker(&ts0).kronecker(&ia))
                .unwrap()
                .mul(&c.coproduct(n).kronecker(&ia))
                .unwrap();
            let id = SparseMatrix::identity(rc * ra, ring);
            let labels = |i: usize| {
                format!(
                    "{} (x) {}",
                    c.labels(n)[i / ra],
                    a.level(n).labels()[i % ra]
                )
            };
            record(n, 4, &composite, &id, &labels);
        }
        out
    }

    /// Failures of `Delta' tau = (tau (x) tau) Delta`.
    pub fn coalgebra_violations(&self) -> Vec<CochainViolation> {
        let c = &self.source;
        let a = &self.target;
        let mut out = Vec::new();
        for n in 1..=self.truncation() {
            let tau = self.map(n);
            let l = a.level(n - 1).coproduct().mul(tau).unwrap();
            let r = tau.kronecker(tau).mul(c.coproduct(n)).unwrap();
            for col in l.differing_columns(&r) {
                out.push(CochainViolation {
                    level: n,
                    basis: c.labels(n)[col].clone(),
                    equation: 5,
                });
            }
        }
        out
    }

    pub fn is_coalgebra_twisting(&self) -> bool {
        self.coalgebra_violations().is_empty()
    }
}

/// `R t: R[X] -> R[G]` for a twisting morphism `t`.
pub fn linearize_twisting_morphism(
    t: &TwistingMorphism,
    ring: Ring,
) -> Result<SimplicialTwistingCochain> {
    if let Some(v) = t.violations().first() {
        return Err(Error::InvalidTwisting(v.to_string()));
    }
    let x = t.space();
    let g = t.group();
    let c = free_coalgebra(x, ring);
    let a = SimplicialBialgebra::constant(&FiniteBialgebra::group_ring(g, ring), x.truncation());
    let mut maps = vec![SparseMatrix::zero(0, 0, ring)];
    for n in 1..=x.truncation() {
        let basis = x.simplices(n);
        let triples = basis
            .iter()
            .enumerate()
            .map(|(col, s)| (t.value(s), col, ring.one()));
        maps.push(SparseMatrix::from_triples(
            g.order(),
            basis.len(),
            ring,
            triples,
        )?);
    }
    SimplicialTwistingCochain::new(c, a, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{nerve_of_group, FiniteGroup};

    #[test]
    fn linearized_fundamental_morphisms() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
            let t = TwistingMorphism::nerve_fundamental(&g, 3).unwrap();
            let tau = linearize_twisting_morphism(&t, Ring::Integers).unwrap();
            assert!(tau.violations().is_empty());
            assert!(tau.is_coalgebra_twisting());
        }
    }

    #[test]
    fn zero_cochain_fails_equation_four() {
        let g = FiniteGroup::cyclic(2);
        let x = nerve_of_group(&g, 2).unwrap();
        let ring = Ring::Integers;
        let c = free_coalgebra(&x, ring);
        let a = SimplicialBialgebra::constant(&FiniteBialgebra::group_ring(&g, ring), 2);
        let maps = (0..=2)
            .map(|n| {
                if n == 0 {
                    SparseMatrix::zero(0, 0, ring)
                } else {
                    SparseMatrix::zero(2, c.rank(n), ring)
                }
            })
            .collect();
        let tau = SimplicialTwistingCochain::new(c, a, maps).unwrap();
        assert!(tau.violations().iter().any(|v| v.equation == 4));
    }
}
