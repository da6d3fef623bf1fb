use serde::Serialize;

use super::complex::ChainComplex;
use super::normalized::{
    alternating_faces, normalized_chain_coalgebra, split_degenerate, NormalizedChains,
};
use crate::exactalg::{vec_add_term, SparseMatrix, Vector};
use crate::scoalg::{simplicial_twisted_tensor, SimplicialTwistingCochain};
use crate::{Error, Result};

/// Outcome of comparing the two descriptions of `N_*(C ⊗_τ A)`.
#[derive(Clone, Debug, Serialize)]
pub struct BrownCertificate {
    pub degrees_checked: usize,
    pub mismatched_degrees: Vec<usize>,
}

impl BrownCertificate {
    pub fn agrees(&self) -> bool {
        self.mismatched_degrees.is_empty()
    }
}

/// The degree-one part `N(τ)(y) = τ(y) - ε(y)·1` on `N_1(C)`.
pub fn degree_one_cochain(
    tau: &SimplicialTwistingCochain,
    chains: &NormalizedChains,
) -> SparseMatrix {
    let c = &tau.source;
    let a = tau.target.level(0);
    let ring = c.ring();
    let s1 = chains.section(1);
    let unit = SparseMatrix::from_columns(a.rank(), ring, std::slice::from_ref(a.unit()));
    let t = tau.map(1).mul(s1).unwrap();
    let e = unit.mul(&c.counit(1).mul(s1).unwrap()).unwrap();
    t.sub(&e).unwrap()
}

/// Brown's boundary on `N_n(C) ⊗ A` in the form obtained from the simplicial
/// structure: `∂(x ⊗ g) = ∂x ⊗ g + Σ y ⊗ g·N(τ)(e)` over the `(1, n-1)`
/// Alexander-Whitney terms `e ⊗ y` of `x`.
pub fn brown_right_boundaries(
    tau: &SimplicialTwistingCochain,
    chains: &NormalizedChains,
) -> Vec<SparseMatrix> {
    let a = tau.target.level(0);
    let ring = a.ring();
    let ra = a.rank();
    let nt = degree_one_cochain(tau, chains);
    let twist_cols: Vec<Vector> = nt.columns();
    let dg = &chains.dg;
    let mut out = vec![SparseMatrix::zero(0, dg.rank(0) * ra, ring)];
    for n in 1..=dg.top() {
        let plain = dg
            .complex
            .boundary(n)
            .kronecker(&SparseMatrix::identity(ra, ring));
        let mut cols = Vec::new();
        for x in 0..dg.rank(n) {
            for g in 0..ra {
                let mut v = Vector::new();
                for (&(p, i, j), c) in dg.delta(n, x) {
                    if p != 1 {
                        continue;
                    }
                    let mut e = Vector::new();
                    e.insert(g, ring.one());
                    for (h, coeff) in a.mul(&e, &twist_cols[i]) {
                        vec_add_term(&mut v, j * ra + h, &(c * &coeff));
                    }
                }
                cols.push(v);
            }
        }
        let twist = SparseMatrix::from_columns(dg.rank(n - 1) * ra, ring, &cols);
        out.push(plain.add(&twist).unwrap());
    }
    out
}

/// `N_*(C ⊗_τ A)` for a constant bialgebra `A`, computed by normalizing the
/// simplicial twisted tensor product and certified against Brown's formula.
pub fn chains_of_twisted_product(
    tau: &SimplicialTwistingCochain,
) -> Result<(ChainComplex, BrownCertificate)> {
    if !tau.target.is_constant() {
        return Err(Error::Infeasible(
            "the normalization bridge needs a constant simplicial bialgebra".into(),
        ));
    }
    let c = &tau.source;
    let ring = c.ring();
    let ra = tau.target.rank(0);
    let tensor = simplicial_twisted_tensor(tau)?;
    let ia = SparseMatrix::identity(ra, ring);
    let mut proj = Vec::new();
    let mut sect = Vec::new();
    let mut labels = Vec::new();
    for n in 0..=c.truncation() {
        let (p, s, l) = split_degenerate(c, n)?;
        proj.push(p.kronecker(&ia));
        sect.push(s.kronecker(&ia));
        labels.push(
            l.iter()
                .flat_map(|x| {
                    tau.target
                        .level(0)
                        .labels()
                        .iter()
                        .map(move |g| format!("{x} (x) {g}"))
                })
                .collect(),
        );
    }
    let mut boundaries = vec![SparseMatrix::zero(0, proj[0].rows(), ring)];
    for n in 1..=c.truncation() {
        boundaries.push(
            proj[n - 1]
                .mul(&alternating_faces(&tensor.coalgebra, n))?
                .mul(&sect[n])?,
        );
    }
    let complex = ChainComplex::new(ring, labels, boundaries)?;
    let chains = normalized_chain_coalgebra(c)?;
    let brown = brown_right_boundaries(tau, &chains);
    let mismatched_degrees = (0..=c.truncation())
        .filter(|&n| brown[n] != *complex.boundary(n))
        .collect();
    Ok((
        complex,
        BrownCertificate {
            degrees_checked: c.truncation() + 1,
            mismatched_degrees,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{HomologyGroup, Ring};
    use crate::scoalg::linearize_twisting_morphism;
    use crate::sset::{FiniteGroup, TwistingMorphism};

    #[test]
    fn bridge_for_linearized_nerve() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
            let t = TwistingMorphism::nerve_fundamental(&g, 3).unwrap();
            let tau = linearize_twisting_morphism(&t, Ring::Integers).unwrap();
            let (k, cert) = chains_of_twisted_product(&tau).unwrap();
            assert!(cert.agrees(), "{:?}", cert);
            let h = k.all_homology(Ring::Integers).unwrap();
            assert_eq!(
                h,
                vec![
                    HomologyGroup::free(1),
                    HomologyGroup::free(0),
                    HomologyGroup::free(0)
                ]
            );
        }
    }
}
