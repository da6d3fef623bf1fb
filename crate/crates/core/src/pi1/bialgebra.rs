use serde::Serialize;

use crate::exactalg::{vec_add_term, Ring, Scalar, SparseMatrix, Vector};
use crate::sset::FiniteGroup;
use crate::{Error, Result};

/// A finite-rank bialgebra given by structure matrices on a basis.
///
/// `mult` is `rank x rank^2` with column `i * rank + j` holding `e_i e_j`;
/// `coproduct` is `rank^2 x rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteBialgebra {
    ring: Ring,
    labels: Vec<String>,
    mult: SparseMatrix,
    unit: Vector,
    coproduct: SparseMatrix,
    counit: SparseMatrix,
    antipode: Option<SparseMatrix>,
}

/// Structure constants in a serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct BialgebraSummary {
    pub rank: usize,
    pub labels: Vec<String>,
    pub cocommutative: bool,
    pub hopf: bool,
}

fn column(v: &Vector, rows: usize, ring: Ring) -> SparseMatrix {
    SparseMatrix::from_columns(rows, ring, std::slice::from_ref(v))
}

impl FiniteBialgebra {
    pub fn new(
        ring: Ring,
        labels: Vec<String>,
        mult: SparseMatrix,
        unit: Vector,
        coproduct: SparseMatrix,
        counit: SparseMatrix,
    ) -> Result<Self> {
        let r = labels.len();
        if (mult.rows(), mult.cols()) != (r, r * r)
            || (coproduct.rows(), coproduct.cols()) != (r * r, r)
            || (counit.rows(), counit.cols()) != (1, r)
        {
            return Err(Error::Dimension(
                "bialgebra structure matrices have the wrong shape".into(),
            ));
        }
        Ok(FiniteBialgebra {
            ring,
            labels,
            mult,
            unit,
            coproduct,
            counit,
            antipode: None,
        })
    }

    /// The group ring `R[G]` with group elements as basis.
    pub fn group_ring(group: &FiniteGroup, ring: Ring) -> Self {
        let n = group.order();
        let one = ring.one();
        let mult = SparseMatrix::from_triples(
            n,
            n * n,
            ring,
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (group.mul(a, b), a * n + b)))
                .map(|(r, c)| (r, c, one.clone())),
        )
        .unwrap();
        let coproduct =
            SparseMatrix::from_triples(n * n, n, ring, (0..n).map(|a| (a * n + a, a, ring.one())))
                .unwrap();
        let counit =
            SparseMatrix::from_triples(1, n, ring, (0..n).map(|a| (0, a, ring.one()))).unwrap();
        let antipode =
            SparseMatrix::from_triples(n, n, ring, (0..n).map(|a| (group.inv(a), a, ring.one())))
                .unwrap();
        let mut unit = Vector::new();
        unit.insert(group.identity(), ring.one());
        let labels = (0..n).map(|g| format!("g{g}")).collect();
        let mut b = FiniteBialgebra::new(ring, labels, mult, unit, coproduct, counit).unwrap();
        b.antipode = Some(antipode);
        b
    }

    pub fn with_antipode(mut self, s: SparseMatrix) -> Result<Self> {
        if (s.rows(), s.cols()) != (self.rank(), self.rank()) {
            return Err(Error::Dimension("antipode has the wrong shape".into()));
        }
        self.antipode = Some(s);
        Ok(self)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &SparseMatrix {
        &self.mult
    }

    pub fn coproduct(&self) -> &SparseMatrix {
        &self.coproduct
    }

    pub fn counit(&self) -> &SparseMatrix {
        &self.counit
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn antipode(&self) -> Option<&SparseMatrix> {
        self.antipode.as_ref()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let r = self.rank();
        let mut pair = Vector::new();
        for (i, x) in a {
            for (j, y) in b {
                vec_add_term(&mut pair, i * r + j, &(x * y));
            }
        }
        self.mult.apply(&pair)
    }

    pub fn counit_of(&self, a: &Vector) -> Scalar {
        self.counit
            .apply(a)
            .remove(&0)
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coproduct_of(&self, a: &Vector) -> Vector {
        self.coproduct.apply(a)
    }

    /// Matrix of `x -> x a`.
    pub fn right_multiplication(&self, a: &Vector) -> SparseMatrix {
        let r = self.rank();
        let cols: Vec<Vector> = (0..r)
            .map(|i| {
                let mut e = Vector::new();
                e.insert(i, self.ring.one());
                self.mul(&e, a)
            })
            .collect();
        SparseMatrix::from_columns(r, self.ring, &cols)
    }

    /// Matrix of `x -> a x`.
    pub fn left_multiplication(&self, a: &Vector) -> SparseMatrix {
        let r = self.rank();
        let cols: Vec<Vector> = (0..r)
            .map(|i| {
                let mut e = Vector::new();
                e.insert(i, self.ring.one());
                self.mul(a, &e)
            })
            .collect();
        SparseMatrix::from_columns(r, self.ring, &cols)
    }

    pub fn is_cocommutative(&self) -> bool {
        let r = self.rank();
        SparseMatrix::flip(r, r, self.ring)
            .mul(&self.coproduct)
            .unwrap()
            == self.coproduct
    }

    pub fn summary(&self) -> BialgebraSummary {
        BialgebraSummary {
            rank: self.rank(),
            labels: self.labels.clone(),
            cocommutative: self.is_cocommutative(),
            hopf: self.antipode.is_some(),
        }
    }

    /// Checks every bialgebra axiom, and the antipode identities when an
    /// antipode is present.
    pub fn violations(&self) -> Vec<String> {
        let r = self.rank();
        let ring = self.ring;
        let id = SparseMatrix::identity(r, ring);
        let u = column(&self.unit, r, ring);
        let m = &self.mult;
        let d = &self.coproduct;
        let e = &self.counit;
        let mut out = Vec::new();
        let mut check = |name: &str, a: SparseMatrix, b: SparseMatrix| {
            if a != b {
                out.push(name.to_string());
            }
        };
        check(
            "associativity",
            m.mul(&m.kronecker(&id)).unwrap(),
            m.mul(&id.kronecker(m)).unwrap(),
        );
        check("left unit", m.mul(&u.kronecker(&id)).unwrap(), id.clone());
        check("right unit", m.mul(&id.kronecker(&u)).unwrap(), id.clone());
        check(
            "coassociativity",
            d.kronecker(&id).mul(d).unwrap(),
            id.kronecker(d).mul(d).unwrap(),
        );
        check("left counit", e.kronecker(&id).mul(d).unwrap(), id.clone());
        check("right counit", id.kronecker(e).mul(d).unwrap(), id.clone());
        let middle = id.kronecker(&SparseMatrix::flip(r, r, ring)).kronecker(&id);
        check(
            "coproduct is multiplicative",
            d.mul(m).unwrap(),
            m.kronecker(m)
                .mul(&middle)
                .unwrap()
                .mul(&d.kronecker(d))
                .unwrap(),
        );
        check(
            "counit is multiplicative",
            e.mul(m).unwrap(),
            e.kronecker(e),
        );
        check("coproduct of unit", d.mul(&u).unwrap(), u.kronecker(&u));
        check(
            "counit of unit",
            e.mul(&u).unwrap(),
            SparseMatrix::identity(1, ring),
        );
        if let Some(s) = &self.antipode {
            let ue = u.mul(e).unwrap();
            check(
                "left antipode",
                m.mul(&s.kronecker(&id)).unwrap().mul(d).unwrap(),
                ue.clone(),
            );
            check(
                "right antipode",
                m.mul(&id.kronecker(s)).unwrap().mul(d).unwrap(),
                ue,
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_rings_are_hopf() {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let b = FiniteBialgebra::group_ring(&g, Ring::Integers);
            assert!(b.violations().is_empty());
            assert!(b.is_cocommutative());
        }
    }

    #[test]
    fn broken_counit_is_reported() {
        let g = FiniteGroup::cyclic(2);
        let b = FiniteBialgebra::group_ring(&g, Ring::Integers);
        let bad = FiniteBialgebra::new(
            b.ring(),
            b.labels().to_vec(),
            b.mult().clone(),
            b.unit().clone(),
            b.coproduct().clone(),
            SparseMatrix::from_dense(Ring::Integers, &[vec![1, 2]]),
        )
        .unwrap();
        assert!(!bad.violations().is_empty());
    }
}
