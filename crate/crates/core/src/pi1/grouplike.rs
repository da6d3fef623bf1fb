use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::nabla::{nabla0, tensor_of, tensor_reduce};
use super::presentation::CobarContext;
use super::rewriting::RewritingSystem;
use crate::cobar::{NCPolynomial, Word};
use crate::exactalg::{Ring, Scalar};
use crate::sset::FiniteGroup;
use crate::{Error, Result};

/// Largest number of candidates the bounded search will visit.
pub const MAX_GROUP_LIKE_CANDIDATES: u128 = 5_000_000;

/// Group-like elements found by a bounded search.
#[derive(Clone, Debug)]
pub struct GroupLikeSet {
    pub elements: Vec<NCPolynomial>,
    /// Closed under products with all inverses present.
    pub complete: bool,
    /// `table[a][b]` is the index of `elements[a] * elements[b]` when complete.
    pub table: Option<Vec<Vec<usize>>>,
    pub identity: usize,
    pub candidates: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupLikeSummary {
    pub count: usize,
    pub complete: bool,
    pub elements: Vec<String>,
    pub table: Option<Vec<Vec<usize>>>,
}

impl GroupLikeSet {
    pub fn group(&self) -> Option<FiniteGroup> {
        let t = self.table.clone()?;
        FiniteGroup::from_table(t, self.identity).ok()
    }

    pub fn summary(&self, ctx: &CobarContext) -> GroupLikeSummary {
        GroupLikeSummary {
            count: self.elements.len(),
            complete: self.complete,
            elements: self.elements.iter().map(|e| ctx.render(e)).collect(),
            table: self.table.clone(),
        }
    }
}

/// Whether `∇_0(α) = α ⊗ α` and `ε(α) = 1` in `H_0`.
pub fn is_group_like(
    ctx: &CobarContext,
    rw: &RewritingSystem,
    alpha: &NCPolynomial,
) -> Result<bool> {
    if !rw.is_complete() {
        return Err(Error::Rewriting(
            "group-like test needs a complete rewriting system".into(),
        ));
    }
    let a = rw.reduce(alpha);
    if !a.augmentation().is_one() {
        return Ok(false);
    }
    let lhs = tensor_reduce(rw, &nabla0(ctx, &a)?);
    Ok(lhs == tensor_of(&a, &a))
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn candidate_values(ring: Ring, length_bound: usize) -> Vec<Scalar> {
    match ring {
        Ring::PrimeField(p) => (0..p).map(|v| ring.from_bigint(&BigInt::from(v))).collect(),
        _ => {
            let b = binomial(length_bound, length_bound / 2).max(1) as i64;
            (-b..=b).map(|v| ring.from_i64(v)).collect()
        }
    }
}

/// Solves `∇_0(α) = α ⊗ α`, `ε(α) = 1` over normal forms of length at most
/// `length_bound`. Coefficients range over the whole field for `F_p` and
/// over `[-B, B]` with `B = C(L, ⌊L/2⌋)` otherwise.
pub fn enumerate_group_likes(
    ctx: &CobarContext,
    rw: &RewritingSystem,
    length_bound: usize,
) -> Result<GroupLikeSet> {
    if !rw.is_complete() {
        return Err(Error::Rewriting(
            "group-like search needs a complete rewriting system".into(),
        ));
    }
    let ring = ctx.ring();
    let (basis, _) = rw.normal_forms(length_bound);
    let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let r = basis.len();
    // coproduct of each basis word, as (i, j, coefficient)
    let mut coproducts = Vec::new();
    for w in &basis {
        let t = tensor_reduce(
            rw,
            &nabla0(ctx, &NCPolynomial::monomial(ring, w.clone(), ring.one()))?,
        );
        let mut entries = Vec::new();
        for ((a, b), c) in t {
            match (index.get(&a), index.get(&b)) {
                (Some(&i), Some(&j)) => entries.push((i, j, c)),
                _ => {
                    return Err(Error::CheckFailed(
                        "coproduct leaves the normal forms of bounded length".into(),
                    ))
                }
            }
        }
        coproducts.push(entries);
    }
    let values = candidate_values(ring, length_bound);
    let free = r - 1;
    let candidates = (values.len() as u128)
        .checked_pow(free as u32)
        .unwrap_or(u128::MAX);
    if candidates > MAX_GROUP_LIKE_CANDIDATES {
        return Err(Error::Infeasible(format!(
            "{candidates} candidates exceed the search limit"
        )));
    }
    let mut found = Vec::new();
    let mut digits = vec![0usize; free];
    loop {
        let mut c = vec![ring.one()];
        c.extend(digits.iter().map(|&d| values[d].clone()));
        let mut lhs = vec![ring.zero(); r * r];
        for (w, entries) in coproducts.iter().enumerate() {
            if c[w].is_zero() {
                continue;
            }
            for (i, j, v) in entries {
                lhs[i * r + j] += &(&c[w] * v);
            }
        }
        let ok = (0..r).all(|i| (0..r).all(|j| lhs[i * r + j] == &c[i] * &c[j]));
        if ok {
            found.push(NCPolynomial::from_terms(ring, basis.iter().cloned().zip(c)));
        }
        let mut k = 0;
        while k < free {
            digits[k] += 1;
            if digits[k] < values.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == free {
            break;
        }
    }
    let identity = found
        .iter()
        .position(|e| *e == NCPolynomial::one(ring))
        .unwrap_or(0);
    let mut table = Vec::new();
    let mut closed = true;
    for a in &found {
        let mut row = Vec::new();
        for b in &found {
            match found.iter().position(|e| *e == rw.reduce(&a.mul(b))) {
                Some(k) => row.push(k),
                None => {
                    closed = false;
                    break;
                }
            }
        }
        if !closed {
            break;
        }
        table.push(row);
    }
    let complete = closed && (0..found.len()).all(|a| table[a].contains(&identity));
    Ok(GroupLikeSet {
        elements: found,
        complete,
        table: complete.then_some(table),
        identity,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::Gen;
    use crate::pi1::{complete_rewriting, fundamental_presentation, DEFAULT_REWRITE_STEPS};
    use crate::scoalg::free_coalgebra;
    use crate::sset::{minimal_circle, nerve_of_group, TruncatedSimplicialSet};

    fn setup(x: &TruncatedSimplicialSet, ring: Ring) -> (CobarContext, RewritingSystem) {
        let ctx = CobarContext::new(&free_coalgebra(x, ring)).unwrap();
        let rw = complete_rewriting(
            &fundamental_presentation(&ctx).unwrap(),
            DEFAULT_REWRITE_STEPS,
        )
        .unwrap();
        (ctx, rw)
    }

    #[test]
    fn z2_group_likes() {
        let z = Ring::Integers;
        let (ctx, rw) = setup(&nerve_of_group(&FiniteGroup::cyclic(2), 2).unwrap(), z);
        let a = NCPolynomial::generator(z, Gen::new(1, 0));
        let one = NCPolynomial::one(z);
        assert!(is_group_like(&ctx, &rw, &one).unwrap());
        assert!(is_group_like(&ctx, &rw, &one.add(&a)).unwrap());
        assert!(!is_group_like(&ctx, &rw, &a).unwrap());
        let g = enumerate_group_likes(&ctx, &rw, 1).unwrap();
        assert_eq!(g.elements.len(), 2);
        assert!(g.complete);
        assert!(g
            .group()
            .unwrap()
            .find_isomorphism(&FiniteGroup::cyclic(2))
            .is_some());
    }

    #[test]
    fn s3_over_f3() {
        let (ctx, rw) = setup(
            &nerve_of_group(&FiniteGroup::symmetric3(), 2).unwrap(),
            Ring::PrimeField(3),
        );
        let g = enumerate_group_likes(&ctx, &rw, 1).unwrap();
        assert_eq!(g.elements.len(), 6);
        assert!(g
            .group()
            .unwrap()
            .find_isomorphism(&FiniteGroup::symmetric3())
            .is_some());
    }

    #[test]
    fn circle_gives_a_monoid() {
        let z = Ring::Integers;
        let (ctx, rw) = setup(&minimal_circle(2), z);
        let g = enumerate_group_likes(&ctx, &rw, 3).unwrap();
        let x = NCPolynomial::one(z).add(&NCPolynomial::generator(z, Gen::new(1, 0)));
        let mut powers = vec![NCPolynomial::one(z)];
        for k in 1..=3 {
            powers.push(powers[k - 1].mul(&x));
        }
        let mut found = g.elements.clone();
        found.sort_by_key(|p| p.max_length());
        assert_eq!(found, powers);
        assert!(!g.complete);
        assert!(g.table.is_none());
    }
}
