use serde::Serialize;

use super::coalgebra::{free_coalgebra, SimplicialCoalgebra};
use super::cochain::{linearize_twisting_morphism, SimplicialTwistingCochain};
use crate::exactalg::{Ring, SparseMatrix, Vector};
use crate::sset::{twisted_cartesian_product, TwistingMorphism};
use crate::{Error, Result};

/// `C (x)_tau A` with basis `x (x) a` at index `x * rank(A) + a`.
#[derive(Clone, Debug)]
pub struct TwistedTensor {
    pub coalgebra: SimplicialCoalgebra,
    a_ranks: Vec<usize>,
    c_ranks: Vec<usize>,
}

impl TwistedTensor {
    pub fn index(&self, n: usize, c: usize, a: usize) -> usize {
        c * self.a_ranks[n] + a
    }

    pub fn split(&self, n: usize, i: usize) -> (usize, usize) {
        (i / self.a_ranks[n], i % self.a_ranks[n])
    }

    pub fn c_rank(&self, n: usize) -> usize {
        self.c_ranks[n]
    }

    pub fn a_rank(&self, n: usize) -> usize {
        self.a_ranks[n]
    }
}

/// The twisted face `d_0^tau` out of level `n >= 1`.
fn twisted_d0(tau: &SimplicialTwistingCochain, n: usize) -> SparseMatrix {
    let c = &tau.source;
    let a = &tau.target;
    let ring = c.ring();
    let (rc, ra) = (c.rank(n), a.rank(n));
    let ic = SparseMatrix::identity(rc, ring);
    let ia = SparseMatrix::identity(ra, ring);
    let ic0 = SparseMatrix::identity(c.rank(n - 1), ring);
    // x (x) g -> x~ (x) x- (x) g -> x~ (x) g (x) x- -> d0 x~ (x) d0 g (x) tau x- -> d0 x~ (x) d0 g . tau x-
    let split = c.coproduct(n).kronecker(&ia);
    let swap = ic.kronecker(&SparseMatrix::flip(rc, ra, ring));
    let apply = c.face(n, 0).kronecker(a.face(n, 0)).kronecker(tau.map(n));
    let multiply = ic0.kronecker(a.level(n - 1).mult());
    multiply
        .mul(&apply)
        .unwrap()
        .mul(&swap)
        .unwrap()
        .mul(&split)
        .unwrap()
}

/// The simplicial twisted tensor product with its coalgebra structure
/// `(id (x) T (x) id)(Delta_C (x) Delta_A)`.
pub fn simplicial_twisted_tensor(tau: &SimplicialTwistingCochain) -> Result<TwistedTensor> {
    if let Some(v) = tau.violations().first() {
        return Err(Error::InvalidTwisting(v.to_string()));
    }
    if let Some(v) = tau.coalgebra_violations().first() {
        return Err(Error::InvalidTwisting(v.to_string()));
    }
    let c = &tau.source;
    let a = &tau.target;
    if !a.is_cocommutative() {
        return Err(Error::InvalidTwisting(
            "target bialgebra is not cocommutative".into(),
        ));
    }
    let ring = c.ring();
    let d = c.truncation();
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    for n in 0..=d {
        let (rc, ra) = (c.rank(n), a.rank(n));
        labels.push(
            (0..rc * ra)
                .map(|i| {
                    format!(
                        "{} (x) {}",
                        c.labels(n)[i / ra],
                        a.level(n).labels()[i % ra]
                    )
                })
                .collect(),
        );
        let mut fs = Vec::new();
        if n > 0 {
            fs.push(twisted_d0(tau, n));
            for i in 1..=n {
                fs.push(c.face(n, i).kronecker(a.face(n, i)));
            }
        }
        faces.push(fs);
        degeneracies.push(
            (0..if n < d { n + 1 } else { 0 })
                .map(|j| c.degeneracy(n, j).kronecker(a.degeneracy(n, j)))
                .collect(),
        );
        let ic = SparseMatrix::identity(rc, ring);
        let ia = SparseMatrix::identity(ra, ring);
        let middle = ic
            .kronecker(&SparseMatrix::flip(rc, ra, ring))
            .kronecker(&ia);
        coproduct.push(
            middle
                .mul(&c.coproduct(n).kronecker(a.level(n).coproduct()))
                .unwrap(),
        );
        counit.push(c.counit(n).kronecker(a.level(n).counit()));
    }
    let mut out = SimplicialCoalgebra::new(ring, labels, faces, degeneracies, coproduct, counit)?;
    if let (true, Some(_)) = (a.is_constant(), c.degenerate_flags(0)) {
        let flags = (0..=d)
            .map(|n| {
                let f = c.degenerate_flags(n).unwrap();
                (0..c.rank(n) * a.rank(n))
                    .map(|i| f[i / a.rank(n)])
                    .collect()
            })
            .collect();
        out = out.with_flags(flags);
    }
    Ok(TwistedTensor {
        coalgebra: out,
        a_ranks: (0..=d).map(|n| a.rank(n)).collect(),
        c_ranks: (0..=d).map(|n| c.rank(n)).collect(),
    })
}

/// Right action `x (x) g -> x (x) g a` on level `n`.
pub fn right_action(tau: &SimplicialTwistingCochain, n: usize, a: &Vector) -> SparseMatrix {
    let ic = SparseMatrix::identity(tau.source.rank(n), tau.source.ring());
    ic.kronecker(&tau.target.level(n).right_multiplication(a))
}

/// Result of comparing `R(X x_t G)` with `RX (x)_tau RG`.
#[derive(Clone, Debug, Serialize)]
pub struct CartesianComparison {
    /// Per level: position in the tensor basis of each product basis simplex.
    pub bijection: Vec<Vec<usize>>,
    pub mismatches: Vec<String>,
}

impl CartesianComparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Builds both sides and compares every structure matrix through the basis
/// bijection `(x, g) -> x (x) g`.
pub fn compare_with_twisted_cartesian(
    t: &TwistingMorphism,
    ring: Ring,
) -> Result<CartesianComparison> {
    let prod = twisted_cartesian_product(t)?;
    let left = free_coalgebra(&prod.set, ring);
    let tau = linearize_twisting_morphism(t, ring)?;
    let right = simplicial_twisted_tensor(&tau)?;
    let x = t.space();
    let order = t.group().order();
    let d = x.truncation();
    let mut bijection = Vec::new();
    let mut perms = Vec::new();
    for n in 0..=d {
        let b: Vec<usize> = prod
            .set
            .simplices(n)
            .iter()
            .map(|s| {
                let (y, g) = prod.pair(s);
                x.simplex_index(&y).unwrap() * order + g
            })
            .collect();
        let size = b.len();
        perms.push(SparseMatrix::from_triples(
            size,
            size,
            ring,
            b.iter().enumerate().map(|(c, &r)| (r, c, ring.one())),
        )?);
        bijection.push(b);
    }
    let r = &right.coalgebra;
    let mut mismatches = Vec::new();
    for n in 0..=d {
        if left.rank(n) != r.rank(n) {
            mismatches.push(format!("level {n}: ranks differ"));
            continue;
        }
        let p = &perms[n];
        if n > 0 {
            for i in 0..=n {
                if perms[n - 1].mul(left.face(n, i))? != r.face(n, i).mul(p)? {
                    mismatches.push(format!("level {n}: d{i} differs"));
                }
            }
        }
        if n < d {
            for j in 0..=n {
                if perms[n + 1].mul(left.degeneracy(n, j))? != r.degeneracy(n, j).mul(p)? {
                    mismatches.push(format!("level {n}: s{j} differs"));
                }
            }
        }
        if p.kronecker(p).mul(left.coproduct(n))? != r.coproduct(n).mul(p)? {
            mismatches.push(format!("level {n}: coproduct differs"));
        }
        if *left.counit(n) != r.counit(n).mul(p)? {
            mismatches.push(format!("level {n}: counit differs"));
        }
    }
    Ok(CartesianComparison {
        bijection,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::FiniteGroup;

    #[test]
    fn nerve_z2_twisted_face() {
        let g = FiniteGroup::cyclic(2);
        let t = TwistingMorphism::nerve_fundamental(&g, 2).unwrap();
        let tau = linearize_twisting_morphism(&t, Ring::Integers).unwrap();
        let tt = simplicial_twisted_tensor(&tau).unwrap();
        // d0(g (x) u) = * (x) u g with g the nondegenerate edge
        let d0 = tt.coalgebra.face(1, 0);
        for u in 0..2 {
            let col = tt.index(1, 0, u);
            assert_eq!(
                d0.column(col).keys().copied().collect::<Vec<_>>(),
                vec![tt.index(0, 0, (u + 1) % 2)]
            );
        }
        assert!(tt.coalgebra.violations().is_empty());
    }

    #[test]
    fn comparison_agrees() {
        let g = FiniteGroup::cyclic(2);
        let t = TwistingMorphism::nerve_fundamental(&g, 3).unwrap();
        assert!(compare_with_twisted_cartesian(&t, Ring::Integers)
            .unwrap()
            .agrees());
        let triv = TwistingMorphism::nerve_fundamental(&FiniteGroup::trivial(), 2).unwrap();
        assert!(compare_with_twisted_cartesian(&triv, Ring::Integers)
            .unwrap()
            .agrees());
    }
}
