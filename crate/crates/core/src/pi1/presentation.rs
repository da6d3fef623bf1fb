use serde::Serialize;

use crate::chains::{normalized_chain_coalgebra, DgCoalgebra, NormalizedChains};
use crate::cobar::{generator_boundary, Gen, NCPolynomial};
use crate::exactalg::{Ring, Scalar, SparseMatrix};
use crate::scoalg::SimplicialCoalgebra;
use crate::{Error, Result};

/// A connected simplicial coalgebra together with its normalized chains and
/// the low-degree structure that `∇_0` and `∇_1` are built from.
#[derive(Clone, Debug)]
pub struct CobarContext {
    pub coalgebra: SimplicialCoalgebra,
    pub chains: NormalizedChains,
    level_coproducts: Vec<Vec<Vec<(usize, usize, Scalar)>>>,
    faces2: Vec<SparseMatrix>,
}

impl CobarContext {
    pub fn new(c: &SimplicialCoalgebra) -> Result<Self> {
        if !c.is_connected() {
            return Err(Error::Input(
                "the fundamental algebra needs a connected coalgebra".into(),
            ));
        }
        if c.truncation() < 2 {
            return Err(Error::Truncation(
                "the fundamental algebra needs truncation at least 2".into(),
            ));
        }
        let chains = normalized_chain_coalgebra(c)?;
        let mut level_coproducts = vec![Vec::new()];
        for n in 1..=2 {
            // (P ⊗ P) Δ_n S on N_n
            let p = chains.projection(n);
            let m = p.kronecker(p).mul(c.coproduct(n))?.mul(chains.section(n))?;
            let r = p.rows();
            let mut per = vec![Vec::new(); r];
            for (row, col, v) in m.entries() {
                per[col].push((row / r, row % r, v.clone()));
            }
            level_coproducts.push(per);
        }
        let faces2 = (0..=2)
            .map(|i| {
                chains
                    .projection(1)
                    .mul(c.face(2, i))
                    .unwrap()
                    .mul(chains.section(2))
                    .unwrap()
            })
            .collect();
        Ok(CobarContext {
            coalgebra: c.clone(),
            chains,
            level_coproducts,
            faces2,
        })
    }

    pub fn dg(&self) -> &DgCoalgebra {
        &self.chains.dg
    }

    pub fn ring(&self) -> Ring {
        self.coalgebra.ring()
    }

    /// Number of degree-one generators, the rank of `N_1`.
    pub fn generator_count(&self) -> usize {
        self.dg().rank(1)
    }

    pub fn generator_labels(&self) -> &[String] {
        self.dg().complex.labels(1)
    }

    /// Simplicial coproduct of a basis element of `N_n`, `n ∈ {1, 2}`, as
    /// `(left, right, coefficient)` triples.
    pub fn level_coproduct(&self, n: usize, x: usize) -> &[(usize, usize, Scalar)] {
        &self.level_coproducts[n][x]
    }

    /// `d_i: N_2 -> N_1` computed through the section.
    pub fn face2(&self, i: usize) -> &SparseMatrix {
        &self.faces2[i]
    }

    /// Renders a cobar polynomial with simplex labels.
    pub fn render(&self, p: &NCPolynomial) -> String {
        p.render(|g| self.dg().complex.labels(g.deg)[g.idx].clone())
    }
}

/// `H_0(ΩN_*(C)) = (ΩN_*C)_0 / D((ΩN_*C)_1)`: generators are the basis of
/// `N_1`, one relation `D{y}` per basis element `y` of `N_2`.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraPresentation {
    pub ring: Ring,
    pub generators: Vec<String>,
    #[serde(skip)]
    pub relations: Vec<NCPolynomial>,
}

pub fn fundamental_presentation(ctx: &CobarContext) -> Result<AlgebraPresentation> {
    let dg = ctx.dg();
    let relations = (0..dg.rank(2))
        .map(|y| generator_boundary(dg, Gen::new(2, y)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraPresentation {
        ring: ctx.ring(),
        generators: ctx.generator_labels().to_vec(),
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoalg::free_coalgebra;
    use crate::sset::{minimal_circle, nerve_of_group, FiniteGroup};

    #[test]
    fn presentations() {
        let z = Ring::Integers;
        let ctx = CobarContext::new(&free_coalgebra(
            &nerve_of_group(&FiniteGroup::cyclic(2), 2).unwrap(),
            z,
        ))
        .unwrap();
        let p = fundamental_presentation(&ctx).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.relations.len(), 1);
        let a = ctx.generator_labels()[0].clone();
        assert_eq!(
            ctx.render(&p.relations[0]),
            format!("2{{{a}}} + {{{a}|{a}}}")
        );
        let ctx3 = CobarContext::new(&free_coalgebra(
            &nerve_of_group(&FiniteGroup::cyclic(3), 2).unwrap(),
            z,
        ))
        .unwrap();
        assert_eq!(fundamental_presentation(&ctx3).unwrap().relations.len(), 4);
        let circle = CobarContext::new(&free_coalgebra(&minimal_circle(2), z)).unwrap();
        assert!(fundamental_presentation(&circle)
            .unwrap()
            .relations
            .is_empty());
        assert!(CobarContext::new(&free_coalgebra(&minimal_circle(1), z)).is_err());
    }
}
