use std::collections::BTreeMap;

use serde::Serialize;

use super::presentation::CobarContext;
use super::rewriting::RewritingSystem;
use crate::chains::add_term;
use crate::cobar::{cobar_boundary, word_degree, Gen, NCPolynomial, Word};
use crate::exactalg::{Ring, Scalar};
use crate::{Error, Result};

/// Element of `ΩN ⊗ ΩN` as a combination of word pairs.
pub type PolyTensor = BTreeMap<(Word, Word), Scalar>;

/// Element of `ΩN ⊗ ΩN ⊗ ΩN`.
pub type PolyTensor3 = BTreeMap<(Word, Word, Word), Scalar>;

fn odd(n: usize) -> bool {
    n % 2 == 1
}

fn signed(c: &Scalar, negate: bool) -> Scalar {
    if negate {
        -c
    } else {
        c.clone()
    }
}

/// `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd`.
pub fn tensor_mul(x: &PolyTensor, y: &PolyTensor) -> PolyTensor {
    let mut out = PolyTensor::new();
    for ((a, b), u) in x {
        for ((c, d), v) in y {
            let mut l = a.clone();
            l.extend_from_slice(c);
            let mut r = b.clone();
            r.extend_from_slice(d);
            let s = odd(word_degree(b) * word_degree(c));
            add_term(&mut out, (l, r), &signed(&(u * v), s));
        }
    }
    out
}

pub fn tensor_unit(ring: Ring) -> PolyTensor {
    [((Vec::new(), Vec::new()), ring.one())]
        .into_iter()
        .collect()
}

/// `p ⊗ q`.
pub fn tensor_of(p: &NCPolynomial, q: &NCPolynomial) -> PolyTensor {
    let mut out = PolyTensor::new();
    for (a, u) in p.terms() {
        for (b, v) in q.terms() {
            add_term(&mut out, (a.clone(), b.clone()), &(u * v));
        }
    }
    out
}

pub fn tensor_swap(t: &PolyTensor) -> PolyTensor {
    let mut out = PolyTensor::new();
    for ((a, b), c) in t {
        let s = odd(word_degree(a) * word_degree(b));
        add_term(&mut out, (b.clone(), a.clone()), &signed(c, s));
    }
    out
}

/// Reduces both factors to normal form.
pub fn tensor_reduce(rw: &RewritingSystem, t: &PolyTensor) -> PolyTensor {
    let ring = rw.ring();
    let mut out = PolyTensor::new();
    for ((a, b), c) in t {
        let ra = rw.reduce(&NCPolynomial::monomial(ring, a.clone(), ring.one()));
        let rb = rw.reduce(&NCPolynomial::monomial(ring, b.clone(), ring.one()));
        for ((x, y), v) in tensor_of(&ra, &rb) {
            add_term(&mut out, (x, y), &(c * &v));
        }
    }
    out
}

/// `D ⊗ id + id ⊗ D` with the Koszul sign on the second term.
pub fn tensor_differential(ctx: &CobarContext, t: &PolyTensor) -> Result<PolyTensor> {
    let ring = ctx.ring();
    let mut out = PolyTensor::new();
    for ((a, b), c) in t {
        let da = cobar_boundary(
            ctx.dg(),
            &NCPolynomial::monomial(ring, a.clone(), c.clone()),
        )?;
        for (w, v) in da.terms() {
            add_term(&mut out, (w.clone(), b.clone()), v);
        }
        let db = cobar_boundary(
            ctx.dg(),
            &NCPolynomial::monomial(ring, b.clone(), signed(c, odd(word_degree(a)))),
        )?;
        for (w, v) in db.terms() {
            add_term(&mut out, (a.clone(), w.clone()), v);
        }
    }
    Ok(out)
}

/// `∇_0{x} = Σ {x~} ⊗ {x-} + 1 ⊗ {x} + {x} ⊗ 1` for `x ∈ N_1`.
fn nabla0_generator(ctx: &CobarContext, i: usize) -> PolyTensor {
    let ring = ctx.ring();
    let one = ring.one();
    let g = |j: usize| vec![Gen::new(1, j)];
    let mut out = PolyTensor::new();
    for (a, b, c) in ctx.level_coproduct(1, i) {
        add_term(&mut out, (g(*a), g(*b)), c);
    }
    add_term(&mut out, (Vec::new(), g(i)), &one);
    add_term(&mut out, (g(i), Vec::new()), &one);
    out
}

/// `∇_0` on degree-0 cobar elements, extended multiplicatively.
pub fn nabla0(ctx: &CobarContext, p: &NCPolynomial) -> Result<PolyTensor> {
    let ring = ctx.ring();
    let gens: Vec<PolyTensor> = (0..ctx.generator_count())
        .map(|i| nabla0_generator(ctx, i))
        .collect();
    let mut out = PolyTensor::new();
    for (w, c) in p.terms() {
        let mut acc = tensor_unit(ring);
        for g in w {
            if g.deg != 1 {
                return Err(Error::Input(
                    "the coproduct ∇_0 is defined on degree-0 words".into(),
                ));
            }
            acc = tensor_mul(&acc, &gens[g.idx]);
        }
        for (k, v) in acc {
            add_term(&mut out, k, &(c * &v));
        }
    }
    Ok(out)
}

/// `∇_1{y}` for `y ∈ N_2`:
/// `Σ {d_2 y~~|d_0 y~-} ⊗ {y-} + {d_2 y~} ⊗ {y-} + {d_0 y~} ⊗ {y-} + {y~} ⊗ {d_1 y-} + {y} ⊗ 1 + 1 ⊗ {y}`.
fn nabla1_generator(ctx: &CobarContext, y: usize) -> PolyTensor {
    let ring = ctx.ring();
    let one = ring.one();
    let mut out = PolyTensor::new();
    let face = |i: usize, x: usize| ctx.face2(i).column(x);
    let g1 = |j: usize| vec![Gen::new(1, j)];
    let g2 = |j: usize| vec![Gen::new(2, j)];
    for (yt, yb, c) in ctx.level_coproduct(2, y) {
        for (ytt, ytb, e) in ctx.level_coproduct(2, *yt) {
            for (u, a) in face(2, *ytt) {
                for (v, b) in face(0, *ytb) {
                    let coeff = &(&(c * e) * &a) * &b;
                    add_term(
                        &mut out,
                        (vec![Gen::new(1, u), Gen::new(1, v)], g2(*yb)),
                        &coeff,
                    );
                }
            }
        }
        for i in [2, 0] {
            for (u, a) in face(i, *yt) {
                add_term(&mut out, (g1(u), g2(*yb)), &(c * &a));
            }
        }
        for (u, a) in face(1, *yb) {
            add_term(&mut out, (g2(*yt), g1(u)), &(c * &a));
        }
    }
    add_term(&mut out, (g2(y), Vec::new()), &one);
    add_term(&mut out, (Vec::new(), g2(y)), &one);
    out
}

/// `∇_1` on degree-1 words, extended multiplicatively through `∇_0` on the
/// degree-one letters.
pub fn nabla1(ctx: &CobarContext, p: &NCPolynomial) -> Result<PolyTensor> {
    let ring = ctx.ring();
    let mut out = PolyTensor::new();
    for (w, c) in p.terms() {
        if word_degree(w) != 1 {
            return Err(Error::Input("∇_1 is defined on degree-1 words".into()));
        }
        let mut acc = tensor_unit(ring);
        for g in w {
            let t = match g.deg {
                1 => nabla0_generator(ctx, g.idx),
                2 => nabla1_generator(ctx, g.idx),
                _ => unreachable!("degree-1 words use generators of degree at most 2"),
            };
            acc = tensor_mul(&acc, &t);
        }
        for (k, v) in acc {
            add_term(&mut out, k, &(c * &v));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct NablaResidual {
    pub generator: String,
    pub terms: usize,
}

/// `(D ⊗ id + id ⊗ D)∇_1{y} - ∇_0 D{y}` for every basis element `y` of
/// `N_2`; only nonzero residuals are reported.
pub fn nabla1_chain_check(ctx: &CobarContext) -> Result<Vec<NablaResidual>> {
    let ring = ctx.ring();
    let mut out = Vec::new();
    for y in 0..ctx.dg().rank(2) {
        let gen = NCPolynomial::generator(ring, Gen::new(2, y));
        let lhs = tensor_differential(ctx, &nabla1(ctx, &gen)?)?;
        let rhs = nabla0(ctx, &cobar_boundary(ctx.dg(), &gen)?)?;
        let mut diff = lhs;
        for (k, v) in rhs {
            add_term(&mut diff, k, &-&v);
        }
        if !diff.is_empty() {
            out.push(NablaResidual {
                generator: ctx.dg().complex.labels(2)[y].clone(),
                terms: diff.len(),
            });
        }
    }
    Ok(out)
}

fn nabla0_left(ctx: &CobarContext, t: &PolyTensor) -> Result<PolyTensor3> {
    let ring = ctx.ring();
    let mut out = PolyTensor3::new();
    for ((a, b), c) in t {
        for ((x, y), v) in nabla0(ctx, &NCPolynomial::monomial(ring, a.clone(), c.clone()))? {
            add_term(&mut out, (x, y, b.clone()), &v);
        }
    }
    Ok(out)
}

fn nabla0_right(ctx: &CobarContext, t: &PolyTensor) -> Result<PolyTensor3> {
    let ring = ctx.ring();
    let mut out = PolyTensor3::new();
    for ((a, b), c) in t {
        for ((x, y), v) in nabla0(ctx, &NCPolynomial::monomial(ring, b.clone(), c.clone()))? {
            add_term(&mut out, (a.clone(), x, y), &v);
        }
    }
    Ok(out)
}

/// Degree-0 words of length at most `max_len` on which `∇_0` fails to be
/// coassociative, cocommutative or counital.
pub fn nabla0_violations(ctx: &CobarContext, max_len: usize) -> Result<Vec<Word>> {
    let ring = ctx.ring();
    let n = ctx.generator_count();
    let mut words: Vec<Word> = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut nw = w.clone();
                    nw.push(Gen::new(1, i));
                    nw
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    let mut out = Vec::new();
    for w in words {
        let p = NCPolynomial::monomial(ring, w.clone(), ring.one());
        let d = nabla0(ctx, &p)?;
        let coassoc = nabla0_left(ctx, &d)? == nabla0_right(ctx, &d)?;
        let cocomm = tensor_swap(&d) == d;
        let mut left = NCPolynomial::zero(ring);
        let mut right = NCPolynomial::zero(ring);
        for ((a, b), c) in &d {
            if a.is_empty() {
                left.add_term(b.clone(), c);
            }
            if b.is_empty() {
                right.add_term(a.clone(), c);
            }
        }
        if !(coassoc && cocomm && left == p && right == p) {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scoalg::free_coalgebra;
    use crate::sset::{nerve_of_group, FiniteGroup};

    fn ctx(g: &FiniteGroup, ring: Ring) -> CobarContext {
        CobarContext::new(&free_coalgebra(&nerve_of_group(g, 2).unwrap(), ring)).unwrap()
    }

    #[test]
    fn group_like_generator() {
        let c = ctx(&FiniteGroup::cyclic(2), Ring::Integers);
        let a = vec![Gen::new(1, 0)];
        let d = nabla0(&c, &NCPolynomial::generator(Ring::Integers, Gen::new(1, 0))).unwrap();
        let one = Ring::Integers.one();
        let expected: PolyTensor = [
            ((a.clone(), a.clone()), one.clone()),
            ((vec![], a.clone()), one.clone()),
            ((a, vec![]), one),
        ]
        .into_iter()
        .collect();
        assert_eq!(d, expected);
        assert_eq!(
            nabla0(&c, &NCPolynomial::one(Ring::Integers)).unwrap(),
            tensor_unit(Ring::Integers)
        );
    }

    #[test]
    fn residuals_vanish() {
        assert!(
            nabla1_chain_check(&ctx(&FiniteGroup::cyclic(2), Ring::Integers))
                .unwrap()
                .is_empty()
        );
        assert!(
            nabla1_chain_check(&ctx(&FiniteGroup::cyclic(3), Ring::PrimeField(2)))
                .unwrap()
                .is_empty()
        );
        assert!(
            nabla1_chain_check(&ctx(&FiniteGroup::symmetric3(), Ring::Integers))
                .unwrap()
                .is_empty()
        );
        assert!(
            nabla0_violations(&ctx(&FiniteGroup::cyclic(3), Ring::Integers), 3)
                .unwrap()
                .is_empty()
        );
    }
}
