use std::collections::HashMap;

use serde::Serialize;

use super::bialgebra::FiniteBialgebra;
use super::grouplike::{enumerate_group_likes, GroupLikeSet};
use super::nabla::{nabla0, tensor_reduce};
use super::presentation::{fundamental_presentation, AlgebraPresentation, CobarContext};
use super::rewriting::RewritingSystem;
use crate::chains::{chains_of_twisted_product, front_face, BrownCertificate, ChainComplex};
use crate::cobar::{twisted_complex, Gen, NCPolynomial, Word, WordModule};
use crate::exactalg::{smith_normal_form, HomologyGroup, Ring, SparseMatrix, Vector};
use crate::scoalg::{
    simplicial_twisted_tensor, SimplicialBialgebra, SimplicialCoalgebra, SimplicialTwistingCochain,
    TwistedTensor,
};
use crate::{Error, Result};

/// Longest normal form considered when deciding that `π(C)` has finite rank.
pub const MAX_BASIS_LENGTH: usize = 64;

/// `π(C) = H_0(ΩN_*(C))` as a finite-rank bialgebra on normal-form words.
#[derive(Clone, Debug)]
pub struct FundamentalBialgebra {
    pub context: CobarContext,
    pub presentation: AlgebraPresentation,
    pub rewriting: RewritingSystem,
    pub basis: Vec<Word>,
    pub bialgebra: FiniteBialgebra,
    pub group_likes: GroupLikeSet,
    index: HashMap<Word, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalSummary {
    pub ring: Ring,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub rules: Vec<String>,
    pub basis: Vec<String>,
    pub rank: usize,
    pub hopf: bool,
    pub group_like_count: usize,
    pub group_of_group_likes: bool,
}

impl FundamentalBialgebra {
    pub fn ring(&self) -> Ring {
        self.context.ring()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a polynomial in the normal-form basis.
    pub fn coordinates(&self, p: &NCPolynomial) -> Vector {
        let mut v = Vector::new();
        for (w, c) in self.rewriting.reduce(p).terms() {
            v.insert(self.index[w], c.clone());
        }
        v
    }

    pub fn element(&self, v: &Vector) -> NCPolynomial {
        NCPolynomial::from_terms(
            self.ring(),
            v.iter().map(|(&i, c)| (self.basis[i].clone(), c.clone())),
        )
    }

    /// The class `[σ] = 1 + {σ}` of a basis element of `N_1`.
    pub fn edge_class(&self, sigma: usize) -> Vector {
        let ring = self.ring();
        self.coordinates(
            &NCPolynomial::one(ring).add(&NCPolynomial::generator(ring, Gen::new(1, sigma))),
        )
    }

    pub fn summary(&self) -> FundamentalSummary {
        let ctx = &self.context;
        FundamentalSummary {
            ring: self.ring(),
            generators: self.presentation.generators.clone(),
            relations: self
                .presentation
                .relations
                .iter()
                .map(|r| ctx.render(r))
                .collect(),
            rules: self
                .rewriting
                .rules()
                .iter()
                .map(|r| {
                    let lhs = NCPolynomial::monomial(self.ring(), r.lhs.clone(), self.ring().one());
                    format!("{} -> {}", ctx.render(&lhs), ctx.render(&r.rhs))
                })
                .collect(),
            basis: self.bialgebra.labels().to_vec(),
            rank: self.rank(),
            hopf: self.bialgebra.antipode().is_some(),
            group_like_count: self.group_likes.elements.len(),
            group_of_group_likes: self.group_likes.complete,
        }
    }
}

fn word_label(ctx: &CobarContext, w: &Word) -> String {
    let ring = ctx.ring();
    ctx.render(&NCPolynomial::monomial(ring, w.clone(), ring.one()))
}

fn antipode_from_group_likes(fb: &FundamentalBialgebra) -> Option<SparseMatrix> {
    let g = &fb.group_likes;
    let table = g.table.as_ref()?;
    let r = fb.rank();
    if g.elements.len() != r {
        return None;
    }
    let ring = fb.ring();
    let cols: Vec<Vector> = g.elements.iter().map(|e| fb.coordinates(e)).collect();
    let m = SparseMatrix::from_columns(r, ring, &cols);
    let f = smith_normal_form(&m);
    if f.rank() < r || f.diag.iter().any(|d| !d.is_unit()) {
        return None;
    }
    let dinv = SparseMatrix::from_triples(
        r,
        r,
        ring,
        f.diag
            .iter()
            .enumerate()
            .map(|(i, d)| (i, i, d.inverse().unwrap())),
    )
    .ok()?;
    let m_inv = f.v.mul(&dinv).ok()?.mul(&f.u).ok()?;
    let inverse = |a: usize| table[a].iter().position(|&k| k == g.identity).unwrap();
    let perm =
        SparseMatrix::from_triples(r, r, ring, (0..r).map(|a| (inverse(a), a, ring.one()))).ok()?;
    m.mul(&perm).ok()?.mul(&m_inv).ok()
}

/// Computes `π(C)` with its structure constants. Fails with
/// [`Error::Budget`] when completion runs out of steps and with
/// [`Error::Infeasible`] when the normal forms do not form a finite basis.
pub fn fundamental_bialgebra(
    c: &SimplicialCoalgebra,
    max_steps: usize,
) -> Result<FundamentalBialgebra> {
    let context = CobarContext::new(c)?;
    let presentation = fundamental_presentation(&context)?;
    let rewriting = super::rewriting::complete_rewriting(&presentation, max_steps)?;
    if !rewriting.is_complete() {
        return Err(Error::Budget(rewriting.summary().steps));
    }
    let (basis, finite) = if rewriting.has_finite_basis() {
        rewriting.normal_forms(MAX_BASIS_LENGTH)
    } else {
        (Vec::new(), false)
    };
    if !finite {
        return Err(Error::Infeasible(
            "the fundamental algebra has infinite rank".into(),
        ));
    }
    let ring = context.ring();
    let r = basis.len();
    let index: HashMap<Word, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let coords = |p: &NCPolynomial| -> Vector {
        rewriting
            .reduce(p)
            .terms()
            .iter()
            .map(|(w, c)| (index[w], c.clone()))
            .collect()
    };
    let mono = |w: &Word| NCPolynomial::monomial(ring, w.clone(), ring.one());
    let mut mult_cols = Vec::with_capacity(r * r);
    for a in &basis {
        for b in &basis {
            mult_cols.push(coords(&mono(a).mul(&mono(b))));
        }
    }
    let mult = SparseMatrix::from_columns(r, ring, &mult_cols);
    let mut co_cols = Vec::with_capacity(r);
    for w in &basis {
        let t = tensor_reduce(&rewriting, &nabla0(&context, &mono(w))?);
        co_cols.push(
            t.iter()
                .map(|((a, b), c)| (index[a] * r + index[b], c.clone()))
                .collect::<Vector>(),
        );
    }
    let coproduct = SparseMatrix::from_columns(r * r, ring, &co_cols);
    let counit = SparseMatrix::from_triples(1, r, ring, [(0, 0, ring.one())])?;
    let mut unit = Vector::new();
    unit.insert(0, ring.one());
    let labels = basis.iter().map(|w| word_label(&context, w)).collect();
    let bialgebra = FiniteBialgebra::new(ring, labels, mult, unit, coproduct, counit)?;
    let max_len = basis.iter().map(Vec::len).max().unwrap_or(0);
    let group_likes = enumerate_group_likes(&context, &rewriting, max_len)?;
    let mut fb = FundamentalBialgebra {
        context,
        presentation,
        rewriting,
        basis,
        bialgebra,
        group_likes,
        index,
    };
    if let Some(s) = antipode_from_group_likes(&fb) {
        fb.bialgebra = fb.bialgebra.with_antipode(s)?;
    }
    if let Some(v) = fb.bialgebra.violations().first() {
        return Err(Error::CheckFailed(format!(
            "fundamental bialgebra fails {v}"
        )));
    }
    Ok(fb)
}

/// `τ(x) = [front edge of x]` in the constant simplicial bialgebra `π(C)`.
pub fn fundamental_twisting_cochain(
    fb: &FundamentalBialgebra,
) -> Result<SimplicialTwistingCochain> {
    let c = &fb.context.coalgebra;
    let ring = fb.ring();
    let d = c.truncation();
    let r = fb.rank();
    let p1 = fb.context.chains.projection(1);
    let unit = SparseMatrix::from_triples(r, 1, ring, [(0, 0, ring.one())])?;
    let gens: Vec<Vector> = (0..fb.context.generator_count())
        .map(|s| fb.coordinates(&NCPolynomial::generator(ring, Gen::new(1, s))))
        .collect();
    let classes = SparseMatrix::from_columns(r, ring, &gens);
    let mut maps = vec![SparseMatrix::zero(0, 0, ring)];
    for n in 1..=d {
        let edge = classes.mul(p1)?.mul(&front_face(c, n, 1))?;
        let aug = unit.mul(c.counit(n))?;
        maps.push(edge.add(&aug)?);
    }
    let target = SimplicialBialgebra::constant(&fb.bialgebra, d);
    let tau = SimplicialTwistingCochain::new(c.clone(), target, maps)?;
    if let Some(v) = tau
        .violations()
        .into_iter()
        .chain(tau.coalgebra_violations())
        .next()
    {
        return Err(Error::CheckFailed(format!(
            "fundamental twisting cochain: {v}"
        )));
    }
    Ok(tau)
}

/// `C ⊗_τ π(C)` with its normalized chains.
#[derive(Clone, Debug)]
pub struct UniversalCover {
    pub tau: SimplicialTwistingCochain,
    pub tensor: TwistedTensor,
    pub chains: ChainComplex,
    pub certificate: BrownCertificate,
}

impl UniversalCover {
    /// Homology in degrees below the truncation, where it is determined by
    /// the truncated data.
    pub fn homology(&self) -> Result<Vec<HomologyGroup>> {
        let top = self.chains.top();
        let degrees: Vec<usize> = (0..top).collect();
        self.chains.homology(self.chains.ring(), &degrees)
    }
}

pub fn universal_cover(fb: &FundamentalBialgebra) -> Result<UniversalCover> {
    let tau = fundamental_twisting_cochain(fb)?;
    let tensor = simplicial_twisted_tensor(&tau)?;
    let (chains, certificate) = chains_of_twisted_product(&tau)?;
    Ok(UniversalCover {
        tau,
        tensor,
        chains,
        certificate,
    })
}

/// A left `π(C)`-module given by the action of each class `[σ]`, `σ` a basis
/// element of `N_1`.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    pub ring: Ring,
    pub labels: Vec<String>,
    pub actions: Vec<SparseMatrix>,
}

impl LocalSystem {
    pub fn trivial(ctx: &CobarContext) -> Self {
        let ring = ctx.ring();
        LocalSystem {
            ring,
            labels: vec!["1".into()],
            actions: vec![SparseMatrix::identity(1, ring); ctx.generator_count()],
        }
    }

    /// `π(C)` acting on itself from the left.
    pub fn regular(fb: &FundamentalBialgebra) -> Self {
        let actions = (0..fb.context.generator_count())
            .map(|s| fb.bialgebra.left_multiplication(&fb.edge_class(s)))
            .collect();
        LocalSystem {
            ring: fb.ring(),
            labels: fb.bialgebra.labels().to_vec(),
            actions,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    /// The same module seen through the generators `{σ} = [σ] - 1`.
    pub fn word_module(&self) -> Result<WordModule> {
        let id = SparseMatrix::identity(self.rank(), self.ring);
        let actions = self
            .actions
            .iter()
            .map(|a| a.sub(&id))
            .collect::<Result<Vec<_>>>()?;
        WordModule::new(self.ring, self.labels.clone(), actions)
    }
}

/// `H_*(C; M)` through the twisted complex `N_*(C) ⊗_τ M`, in the given
/// degrees (each below the truncation).
pub fn local_homology(
    ctx: &CobarContext,
    m: &LocalSystem,
    degrees: &[usize],
) -> Result<Vec<HomologyGroup>> {
    if m.actions.len() != ctx.generator_count() {
        return Err(Error::Input(format!(
            "module gives {} actions but there are {} edges",
            m.actions.len(),
            ctx.generator_count()
        )));
    }
    if m.ring != ctx.ring() {
        return Err(Error::Ring(
            "module and coalgebra use different rings".into(),
        ));
    }
    let top = ctx.dg().top();
    if let Some(&k) = degrees.iter().find(|&&k| k >= top) {
        return Err(Error::Truncation(format!(
            "degree {k} needs truncation above {k}"
        )));
    }
    let module = m.word_module()?;
    let bad = module.violations(ctx.dg())?;
    if !bad.is_empty() {
        let names: Vec<&str> = bad
            .iter()
            .map(|&y| ctx.dg().complex.labels(2)[y].as_str())
            .collect();
        return Err(Error::CheckFailed(format!(
            "action does not respect the relations of {}",
            names.join(", ")
        )));
    }
    twisted_complex(ctx.dg(), &module)?.homology(ctx.ring(), degrees)
}

/// A map `f: C -> C'` of simplicial coalgebras and what it induces.
#[derive(Clone, Debug)]
pub struct InducedMap {
    /// `π(f)` on normal-form bases.
    pub algebra: SparseMatrix,
    /// Target index of each source group-like element, when defined.
    pub group_likes: Option<Vec<usize>>,
    /// `f_n ⊗ π(f)` on the universal covers.
    pub cover: Vec<SparseMatrix>,
}

/// `π(f)` and the map of universal covers for levelwise matrices `f_n`.
pub fn induced_map(
    src: &FundamentalBialgebra,
    tgt: &FundamentalBialgebra,
    f: &[SparseMatrix],
) -> Result<InducedMap> {
    let ring = src.ring();
    let (cs, ct) = (&src.context, &tgt.context);
    let f1 = ct
        .chains
        .projection(1)
        .mul(&f[1])?
        .mul(cs.chains.section(1))?;
    let images: Vec<NCPolynomial> = (0..cs.generator_count())
        .map(|s| {
            f1.column(s)
                .iter()
                .fold(NCPolynomial::zero(ring), |acc, (&t, c)| {
                    acc.add(&NCPolynomial::monomial(
                        ring,
                        vec![Gen::new(1, t)],
                        c.clone(),
                    ))
                })
        })
        .collect();
    let cols: Vec<Vector> = src
        .basis
        .iter()
        .map(|w| {
            let p = w
                .iter()
                .fold(NCPolynomial::one(ring), |acc, g| acc.mul(&images[g.idx]));
            tgt.coordinates(&p)
        })
        .collect();
    let algebra = SparseMatrix::from_columns(tgt.rank(), ring, &cols);
    let group_likes = src
        .group_likes
        .elements
        .iter()
        .map(|e| {
            let v = algebra.apply(&src.coordinates(e));
            tgt.group_likes
                .elements
                .iter()
                .position(|h| tgt.coordinates(h) == v)
        })
        .collect();
    let cover = f.iter().map(|fn_| fn_.kronecker(&algebra)).collect();
    Ok(InducedMap {
        algebra,
        group_likes,
        cover,
    })
}

impl InducedMap {
    /// Failed compatibilities of `π(f)` with the bialgebra structure and of
    /// the cover map with the twisted structure maps.
    pub fn violations(&self, src: &UniversalCover, tgt: &UniversalCover) -> Vec<String> {
        let (a, b) = (src.tau.target.level(0), tgt.tau.target.level(0));
        let m = &self.algebra;
        let mut out = Vec::new();
        let mut check = |name: String, l: SparseMatrix, r: SparseMatrix| {
            if l != r {
                out.push(name);
            }
        };
        check(
            "multiplicative".into(),
            m.mul(a.mult()).unwrap(),
            b.mult().mul(&m.kronecker(m)).unwrap(),
        );
        check(
            "comultiplicative".into(),
            b.coproduct().mul(m).unwrap(),
            m.kronecker(m).mul(a.coproduct()).unwrap(),
        );
        check(
            "counit".into(),
            b.counit().mul(m).unwrap(),
            a.counit().clone(),
        );
        check(
            "unit".into(),
            m.mul(&SparseMatrix::from_columns(
                a.rank(),
                a.ring(),
                std::slice::from_ref(a.unit()),
            ))
            .unwrap(),
            SparseMatrix::from_columns(b.rank(), b.ring(), std::slice::from_ref(b.unit())),
        );
        let (cs, ct) = (&src.tensor.coalgebra, &tgt.tensor.coalgebra);
        for n in 1..self.cover.len() {
            for i in 0..=n {
                check(
                    format!("face {i} at level {n}"),
                    ct.face(n, i).mul(&self.cover[n]).unwrap(),
                    self.cover[n - 1].mul(cs.face(n, i)).unwrap(),
                );
            }
        }
        for n in 0..self.cover.len() - 1 {
            for j in 0..=n {
                check(
                    format!("degeneracy {j} at level {n}"),
                    ct.degeneracy(n, j).mul(&self.cover[n]).unwrap(),
                    self.cover[n + 1].mul(cs.degeneracy(n, j)).unwrap(),
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::HomologyGroup;
    use crate::pi1::DEFAULT_REWRITE_STEPS;
    use crate::scoalg::free_coalgebra;
    use crate::sset::{minimal_circle, nerve_of_group, FiniteGroup};

    fn fb(g: &FiniteGroup, ring: Ring, d: usize) -> FundamentalBialgebra {
        fundamental_bialgebra(
            &free_coalgebra(&nerve_of_group(g, d).unwrap(), ring),
            DEFAULT_REWRITE_STEPS,
        )
        .unwrap()
    }

    #[test]
    fn groups_give_hopf_algebras() {
        for g in [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::symmetric3(),
        ] {
            let b = fb(&g, Ring::Integers, 2);
            assert_eq!(b.rank(), g.order());
            assert!(b.bialgebra.antipode().is_some());
            assert!(b
                .group_likes
                .group()
                .unwrap()
                .find_isomorphism(&g)
                .is_some());
        }
    }

    #[test]
    fn circle_is_infinite() {
        let c = free_coalgebra(&minimal_circle(2), Ring::Integers);
        assert!(matches!(
            fundamental_bialgebra(&c, DEFAULT_REWRITE_STEPS),
            Err(Error::Infeasible(_))
        ));
        let w = free_coalgebra(&crate::sset::wedge_of_circles(2, 3), Ring::Integers);
        assert!(matches!(
            fundamental_bialgebra(&w, DEFAULT_REWRITE_STEPS),
            Err(Error::Infeasible(_))
        ));
        let s3 = free_coalgebra(
            &nerve_of_group(&FiniteGroup::symmetric3(), 2).unwrap(),
            Ring::Integers,
        );
        assert!(matches!(
            fundamental_bialgebra(&s3, 3),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn universal_cover_is_acyclic() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
            let cover = universal_cover(&fb(&g, Ring::Integers, 3)).unwrap();
            assert!(cover.certificate.agrees());
            assert_eq!(
                cover.homology().unwrap(),
                vec![
                    HomologyGroup::free(1),
                    HomologyGroup::free(0),
                    HomologyGroup::free(0)
                ]
            );
        }
    }

    #[test]
    fn regular_local_system_matches_cover() {
        let b = fb(&FiniteGroup::cyclic(2), Ring::Integers, 3);
        let h = local_homology(&b.context, &LocalSystem::regular(&b), &[0, 1, 2]).unwrap();
        assert_eq!(h, universal_cover(&b).unwrap().homology().unwrap());
        let t = local_homology(&b.context, &LocalSystem::trivial(&b.context), &[0, 1, 2]).unwrap();
        assert_eq!(
            t,
            vec![
                HomologyGroup::free(1),
                HomologyGroup::with_torsion(0, &[2]),
                HomologyGroup::free(0)
            ]
        );
    }

    #[test]
    fn quotient_z4_to_z2() {
        let (g4, g2) = (FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
        let (x4, l4) = crate::sset::nerve_with_layout(&g4, 3).unwrap();
        let (x2, l2) = crate::sset::nerve_with_layout(&g2, 3).unwrap();
        let f =
            crate::sset::SimplicialMap::of_nerves((&x4, &l4), (&x2, &l2), &[0, 1, 0, 1]).unwrap();
        let z = Ring::Integers;
        let fm = crate::scoalg::induced_map(&f, &x4, &x2, z);
        let (b4, b2) = (
            fundamental_bialgebra(&free_coalgebra(&x4, z), DEFAULT_REWRITE_STEPS).unwrap(),
            fundamental_bialgebra(&free_coalgebra(&x2, z), DEFAULT_REWRITE_STEPS).unwrap(),
        );
        let m = induced_map(&b4, &b2, &fm).unwrap();
        let (u4, u2) = (universal_cover(&b4).unwrap(), universal_cover(&b2).unwrap());
        assert!(
            m.violations(&u4, &u2).is_empty(),
            "{:?}",
            m.violations(&u4, &u2)
        );
        let gl = m.group_likes.unwrap();
        let hom: Vec<usize> = gl.clone();
        let (s, t) = (
            b4.group_likes.group().unwrap(),
            b2.group_likes.group().unwrap(),
        );
        assert!(s.is_homomorphism(&t, &hom));
        assert_eq!(hom.iter().filter(|&&k| k == t.identity()).count(), 2);
    }
}
