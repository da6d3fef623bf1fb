use serde::Serialize;

use super::presentation::{fundamental_presentation, AlgebraPresentation, CobarContext};
use super::rewriting::{complete_rewriting, RewritingSystem};
use crate::cobar::{Gen, NCPolynomial, Word};
use crate::exactalg::Ring;
use crate::scoalg::free_coalgebra;
use crate::sset::{SimplexRef, TruncatedSimplicialSet};
use crate::{Error, Result};

/// Outcome of comparing `H_0(ΩN_*(RX))` with the algebra of the edge-path
/// monoid `τ_1(X)`.
#[derive(Clone, Debug, Serialize)]
pub struct MonoidComparison {
    pub generators: usize,
    pub cobar_relations: usize,
    pub monoid_relations: usize,
    /// Each cobar relation vanishes in the monoid algebra.
    pub cobar_in_monoid: bool,
    /// Each translated monoid relation vanishes in `H_0`.
    pub monoid_in_cobar: bool,
    pub cobar_rank: Option<usize>,
    pub monoid_rank: Option<usize>,
    pub structure_constants_match: bool,
    pub free: bool,
}

impl MonoidComparison {
    pub fn agrees(&self) -> bool {
        self.cobar_in_monoid
            && self.monoid_in_cobar
            && self.cobar_rank == self.monoid_rank
            && self.structure_constants_match
    }
}

/// Relations `m(d_2 y) m(d_0 y) = m(d_1 y)` of the edge-path monoid, one per
/// 2-simplex, written through `m(σ) = {σ} + 1` with `m(degenerate) = 1`.
pub fn monoid_presentation(x: &TruncatedSimplicialSet, ring: Ring) -> Result<AlgebraPresentation> {
    if x.truncation() < 2 {
        return Err(Error::Truncation(
            "the edge-path monoid needs 2-simplices".into(),
        ));
    }
    let edges: Vec<&SimplexRef> = x
        .simplices(1)
        .iter()
        .filter(|s| !s.is_degenerate())
        .collect();
    let m = |e: &SimplexRef| -> NCPolynomial {
        let one = NCPolynomial::one(ring);
        match edges.iter().position(|f| *f == e) {
            Some(k) => one.add(&NCPolynomial::generator(ring, Gen::new(1, k))),
            None => one,
        }
    };
    let mut relations = Vec::new();
    for y in x.simplices(2) {
        let [d0, d1, d2] = [0, 1, 2].map(|i| x.face(y, i).unwrap());
        let r = m(&d2).mul(&m(&d0)).sub(&m(&d1));
        if !r.is_zero() && !relations.contains(&r) {
            relations.push(r);
        }
    }
    Ok(AlgebraPresentation {
        ring,
        generators: edges.iter().map(|e| x.label(e)).collect(),
        relations,
    })
}

fn multiplication_table(rw: &RewritingSystem, basis: &[Word]) -> Vec<NCPolynomial> {
    let ring = rw.ring();
    let mono = |w: &Word| NCPolynomial::monomial(ring, w.clone(), ring.one());
    basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| rw.reduce(&mono(a).mul(&mono(b)))))
        .collect()
}

/// Compares both presentations through the change of generators
/// `σ ↔ {σ} + 1`. Infinite normal-form bases are compared up to length
/// `max_len`.
pub fn monoid_oracle_compare(
    x: &TruncatedSimplicialSet,
    ring: Ring,
    max_steps: usize,
    max_len: usize,
) -> Result<MonoidComparison> {
    let ctx = CobarContext::new(&free_coalgebra(x, ring))?;
    let cobar = fundamental_presentation(&ctx)?;
    let monoid = monoid_presentation(x, ring)?;
    if cobar.generators != monoid.generators {
        return Err(Error::CheckFailed(
            "the two presentations use different generators".into(),
        ));
    }
    let rc = complete_rewriting(&cobar, max_steps)?;
    let rm = complete_rewriting(&monoid, max_steps)?;
    if !rc.is_complete() || !rm.is_complete() {
        return Err(Error::Budget(max_steps));
    }
    let cobar_in_monoid = cobar.relations.iter().all(|r| rm.reduce(r).is_zero());
    let monoid_in_cobar = monoid.relations.iter().all(|r| rc.reduce(r).is_zero());
    let (bc, fc) = rc.normal_forms(max_len);
    let (bm, fm) = rm.normal_forms(max_len);
    let structure_constants_match =
        bc == bm && multiplication_table(&rc, &bc) == multiplication_table(&rm, &bm);
    Ok(MonoidComparison {
        generators: cobar.generators.len(),
        cobar_relations: cobar.relations.len(),
        monoid_relations: monoid.relations.len(),
        cobar_in_monoid,
        monoid_in_cobar,
        cobar_rank: fc.then_some(bc.len()),
        monoid_rank: fm.then_some(bm.len()),
        structure_constants_match,
        free: rc.rules().is_empty() && rm.rules().is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi1::DEFAULT_REWRITE_STEPS;
    use crate::sset::{nerve_of_group, wedge_of_circles, FiniteGroup};

    #[test]
    fn nerves_and_wedge() {
        let z = Ring::Integers;
        for (g, rank) in [(FiniteGroup::cyclic(2), 2), (FiniteGroup::symmetric3(), 6)] {
            let r =
                monoid_oracle_compare(&nerve_of_group(&g, 2).unwrap(), z, DEFAULT_REWRITE_STEPS, 8)
                    .unwrap();
            assert!(r.agrees(), "{r:?}");
            assert_eq!(r.cobar_rank, Some(rank));
        }
        let w =
            monoid_oracle_compare(&wedge_of_circles(2, 2), z, DEFAULT_REWRITE_STEPS, 3).unwrap();
        assert!(w.agrees() && w.free);
        assert_eq!((w.cobar_relations, w.monoid_relations), (0, 0));
        assert_eq!(w.cobar_rank, None);
    }
}
