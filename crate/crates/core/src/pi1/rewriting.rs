use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::presentation::AlgebraPresentation;
use crate::cobar::{Gen, NCPolynomial, Word};
use crate::exactalg::{Ring, Scalar};
use crate::{Error, Result};

/// Default number of polynomial reductions allowed during completion.
pub const DEFAULT_REWRITE_STEPS: usize = 20_000;

/// Length first, then lexicographic.
pub fn word_order(a: &[Gen], b: &[Gen]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn leading_term(p: &NCPolynomial) -> Option<(&Word, &Scalar)> {
    p.terms().iter().max_by(|x, y| word_order(x.0, y.0))
}

fn find_subword(w: &[Gen], pattern: &[Gen]) -> Option<usize> {
    if pattern.len() > w.len() {
        return None;
    }
    (0..=w.len() - pattern.len()).find(|&k| w[k..k + pattern.len()] == *pattern)
}

/// `lhs -> rhs` with every word of `rhs` below `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPolynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct RewritingSummary {
    pub rules: usize,
    pub complete: bool,
    pub steps: usize,
}

/// Rewriting rules for a quotient of the free algebra on degree-one
/// generators.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    ring: Ring,
    generators: usize,
    rules: Vec<Rule>,
    complete: bool,
    steps: usize,
}

impl RewritingSystem {
    /// The free algebra: no rules, trivially complete.
    pub fn free(ring: Ring, generators: usize) -> Self {
        RewritingSystem {
            ring,
            generators,
            rules: Vec::new(),
            complete: true,
            steps: 0,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn summary(&self) -> RewritingSummary {
        RewritingSummary {
            rules: self.rules.len(),
            complete: self.complete,
            steps: self.steps,
        }
    }

    fn find(&self, w: &[Gen]) -> Option<(usize, usize)> {
        self.rules
            .iter()
            .enumerate()
            .find_map(|(r, rule)| find_subword(w, &rule.lhs).map(|k| (r, k)))
    }

    pub fn is_reducible(&self, w: &[Gen]) -> bool {
        self.find(w).is_some()
    }

    /// Normal form of `p`; canonical when the system is complete.
    pub fn reduce(&self, p: &NCPolynomial) -> NCPolynomial {
        let mut work = p.clone();
        let mut out = NCPolynomial::zero(p.ring());
        while let Some((w, c)) = leading_term(&work).map(|(w, c)| (w.clone(), c.clone())) {
            work.add_term(w.clone(), &-&c);
            match self.find(&w) {
                Some((r, k)) => {
                    let rule = &self.rules[r];
                    let pre = NCPolynomial::monomial(p.ring(), w[..k].to_vec(), c);
                    let post = NCPolynomial::monomial(
                        p.ring(),
                        w[k + rule.lhs.len()..].to_vec(),
                        p.ring().one(),
                    );
                    work = work.add(&pre.mul(&rule.rhs).mul(&post));
                }
                None => out.add_term(w, &c),
            }
        }
        out
    }

    /// Irreducible words of length at most `max_len`, sorted by the term
    /// order, and whether the set of all irreducible words is known to be
    /// finite (some length has no irreducible words).
    pub fn normal_forms(&self, max_len: usize) -> (Vec<Word>, bool) {
        let mut all = vec![Vec::new()];
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..self.generators {
                    let mut nw = w.clone();
                    nw.push(Gen::new(1, i));
                    if !self.rules.iter().any(|r| nw.ends_with(&r.lhs)) {
                        next.push(nw);
                    }
                }
            }
            if next.is_empty() {
                return (all, true);
            }
            if next[0].len() > max_len {
                break;
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        (all, false)
    }

    /// Whether only finitely many words are irreducible: the graph on
    /// irreducible words of length `k` (one less than the longest left-hand
    /// side) with an edge `as -> sb` whenever `asb` is irreducible has no cycle.
    pub fn has_finite_basis(&self) -> bool {
        let k = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(1) - 1;
        let reducible = |w: &[Gen]| self.rules.iter().any(|r| find_subword(w, &r.lhs).is_some());
        let letters: Vec<Gen> = (0..self.generators).map(|i| Gen::new(1, i)).collect();
        if k == 0 {
            return letters.iter().all(|g| reducible(&[*g]));
        }
        let mut vertices: Vec<Word> = vec![Vec::new()];
        for _ in 0..k {
            vertices = vertices
                .iter()
                .flat_map(|w| letters.iter().map(move |g| [w.as_slice(), &[*g]].concat()))
                .filter(|w| !reducible(w))
                .collect();
        }
        let index: HashMap<&Word, usize> =
            vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let edges: Vec<Vec<usize>> = vertices
            .iter()
            .map(|u| {
                letters
                    .iter()
                    .filter_map(|g| {
                        let w = [u.as_slice(), &[*g]].concat();
                        if reducible(&w) {
                            return None;
                        }
                        index.get(&w[1..].to_vec()).copied()
                    })
                    .collect()
            })
            .collect();
        // 0 unvisited, 1 on the stack, 2 done
        let mut state = vec![0u8; vertices.len()];
        for start in 0..vertices.len() {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some((v, i)) = stack.pop() {
                if i < edges[v].len() {
                    stack.push((v, i + 1));
                    let t = edges[v][i];
                    match state[t] {
                        0 => {
                            state[t] = 1;
                            stack.push((t, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                }
            }
        }
        true
    }

    fn critical_pairs(&self, a: &Rule, b: &Rule) -> Vec<NCPolynomial> {
        let ring = self.ring;
        let one = ring.one();
        let mut out = Vec::new();
        let (la, lb) = (a.lhs.len(), b.lhs.len());
        for k in 1..la.min(lb) {
            if a.lhs[la - k..] == b.lhs[..k] {
                let right = NCPolynomial::monomial(ring, b.lhs[k..].to_vec(), one.clone());
                let left = NCPolynomial::monomial(ring, a.lhs[..la - k].to_vec(), one.clone());
                out.push(a.rhs.mul(&right).sub(&left.mul(&b.rhs)));
            }
        }
        if lb < la {
            if let Some(k) = find_subword(&a.lhs, &b.lhs) {
                let left = NCPolynomial::monomial(ring, a.lhs[..k].to_vec(), one.clone());
                let right = NCPolynomial::monomial(ring, a.lhs[k + lb..].to_vec(), one);
                out.push(a.rhs.sub(&left.mul(&b.rhs).mul(&right)));
            }
        }
        out
    }

    fn all_critical_pairs(&self) -> Vec<NCPolynomial> {
        let mut out = Vec::new();
        for a in &self.rules {
            for b in &self.rules {
                out.extend(self.critical_pairs(a, b));
            }
        }
        out
    }

    /// Whether every critical pair reduces to zero.
    pub fn is_confluent(&self) -> bool {
        self.all_critical_pairs()
            .iter()
            .all(|s| self.reduce(s).is_zero())
    }
}

/// Knuth-Bendix style completion under the length-lexicographic order.
/// Leading coefficients must be units of the ring. If `max_steps`
/// reductions do not suffice, the partial system is returned with
/// `is_complete() == false`.
pub fn complete_rewriting(p: &AlgebraPresentation, max_steps: usize) -> Result<RewritingSystem> {
    let ring = p.ring;
    let one = ring.one();
    let mut sys = RewritingSystem {
        ring,
        generators: p.generators.len(),
        rules: Vec::new(),
        complete: false,
        steps: 0,
    };
    let mut queue: VecDeque<NCPolynomial> = p.relations.iter().cloned().collect();
    loop {
        while let Some(poly) = queue.pop_front() {
            if sys.steps >= max_steps {
                return Ok(sys);
            }
            sys.steps += 1;
            let r = sys.reduce(&poly);
            let Some((lead, c)) = leading_term(&r).map(|(w, c)| (w.clone(), c.clone())) else {
                continue;
            };
            let inv = c.inverse().filter(|_| c.is_unit()).ok_or_else(|| {
                Error::Rewriting(format!(
                    "leading coefficient {c} is not a unit in {ring}; try field coefficients"
                ))
            })?;
            let r = r.scale(&inv);
            let mut rhs = r.scale(&-one.clone());
            rhs.add_term(lead.clone(), &one);
            let (keep, dropped): (Vec<Rule>, Vec<Rule>) = sys
                .rules
                .drain(..)
                .partition(|rule| find_subword(&rule.lhs, &lead).is_none());
            sys.rules = keep;
            for d in dropped {
                queue.push_back(NCPolynomial::monomial(ring, d.lhs, one.clone()).sub(&d.rhs));
            }
            let new = Rule { lhs: lead, rhs };
            for other in &sys.rules {
                queue.extend(sys.critical_pairs(&new, other));
                queue.extend(sys.critical_pairs(other, &new));
            }
            queue.extend(sys.critical_pairs(&new, &new));
            sys.rules.push(new);
            for i in 0..sys.rules.len() {
                let rhs = sys.reduce(&sys.rules[i].rhs.clone());
                sys.rules[i].rhs = rhs;
            }
        }
        let pending: Vec<NCPolynomial> = sys
            .all_critical_pairs()
            .into_iter()
            .filter(|s| !sys.reduce(s).is_zero())
            .collect();
        if pending.is_empty() {
            sys.rules.sort_by(|a, b| word_order(&a.lhs, &b.lhs));
            sys.complete = true;
            return Ok(sys);
        }
        queue.extend(pending);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi1::{fundamental_presentation, CobarContext};
    use crate::scoalg::free_coalgebra;
    use crate::sset::{minimal_circle, nerve_of_group, FiniteGroup};

    fn system(g: &FiniteGroup, ring: Ring) -> RewritingSystem {
        let ctx = CobarContext::new(&free_coalgebra(&nerve_of_group(g, 2).unwrap(), ring)).unwrap();
        complete_rewriting(
            &fundamental_presentation(&ctx).unwrap(),
            DEFAULT_REWRITE_STEPS,
        )
        .unwrap()
    }

    #[test]
    fn z2_single_rule() {
        let rw = system(&FiniteGroup::cyclic(2), Ring::Integers);
        assert!(rw.is_complete());
        assert_eq!(rw.rules().len(), 1);
        let a = Gen::new(1, 0);
        assert_eq!(rw.rules()[0].lhs, vec![a, a]);
        assert_eq!(
            rw.rules()[0].rhs,
            NCPolynomial::monomial(Ring::Integers, vec![a], Ring::Integers.from_i64(-2))
        );
        let (nf, finite) = rw.normal_forms(4);
        assert!(finite);
        assert_eq!(nf, vec![vec![], vec![a]]);
    }

    #[test]
    fn group_ranks() {
        for g in [
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::symmetric3(),
        ] {
            let rw = system(&g, Ring::Integers);
            assert!(rw.is_complete() && rw.is_confluent());
            let (nf, finite) = rw.normal_forms(4);
            assert!(finite && rw.has_finite_basis());
            assert_eq!(nf.len(), g.order());
        }
    }

    #[test]
    fn free_circle_and_budget() {
        let ctx = CobarContext::new(&free_coalgebra(&minimal_circle(2), Ring::Integers)).unwrap();
        let rw = complete_rewriting(&fundamental_presentation(&ctx).unwrap(), 10).unwrap();
        assert!(rw.is_complete() && rw.rules().is_empty());
        let (nf, finite) = rw.normal_forms(3);
        assert!(!finite && !rw.has_finite_basis());
        assert_eq!(nf.len(), 4);
        let partial = complete_rewriting(
            &fundamental_presentation(
                &CobarContext::new(&free_coalgebra(
                    &nerve_of_group(&FiniteGroup::symmetric3(), 2).unwrap(),
                    Ring::Integers,
                ))
                .unwrap(),
            )
            .unwrap(),
            3,
        )
        .unwrap();
        assert!(!partial.is_complete());
    }

    #[test]
    fn non_monic_is_rejected() {
        let z = Ring::Integers;
        let a = Gen::new(1, 0);
        let p = AlgebraPresentation {
            ring: z,
            generators: vec!["a".into()],
            relations: vec![NCPolynomial::monomial(z, vec![a, a], z.from_i64(2))],
        };
        assert!(matches!(
            complete_rewriting(&p, 100),
            Err(Error::Rewriting(_))
        ));
        let q = AlgebraPresentation {
            ring: Ring::Rationals,
            relations: vec![p.relations[0].change_ring(Ring::Rationals).unwrap()],
            ..p
        };
        assert!(complete_rewriting(&q, 100).unwrap().is_complete());
    }
}
