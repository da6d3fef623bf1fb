use std::collections::BTreeMap;

use super::cobar::{cobar_boundary, cobar_words, generator_boundary, sign};
use super::poly::{word_degree, Gen, NCPolynomial, Word};
use crate::chains::{add_term, ChainComplex, DgCoalgebra};
use crate::exactalg::{Ring, Scalar, SparseMatrix, Vector};
use crate::{Error, Result};

/// A left `ΩC`-module concentrated in degree 0. Each degree-one generator
/// `{e}` acts by `actions[e]`; generators of higher degree act by zero, and
/// `{a|b}·m = {a}·({b}·m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WordModule {
    ring: Ring,
    labels: Vec<String>,
    actions: Vec<SparseMatrix>,
}

impl WordModule {
    pub fn new(ring: Ring, labels: Vec<String>, actions: Vec<SparseMatrix>) -> Result<Self> {
        let r = labels.len();
        if actions
            .iter()
            .any(|m| m.rows() != r || m.cols() != r || m.ring() != ring)
        {
            return Err(Error::Dimension(format!(
                "module actions must be {r}x{r} matrices over {ring}"
            )));
        }
        Ok(WordModule {
            ring,
            labels,
            actions,
        })
    }

    /// `R` with `ΩC` acting through the augmentation.
    pub fn trivial(dg: &DgCoalgebra) -> Self {
        let ring = dg.ring();
        WordModule {
            ring,
            labels: vec!["1".into()],
            actions: vec![SparseMatrix::zero(1, 1, ring); dg.rank(1)],
        }
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

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.actions
    }

    pub fn act_word(&self, w: &[Gen], m: &Vector) -> Vector {
        if w.iter().any(|g| g.deg != 1) {
            return Vector::new();
        }
        let mut v = m.clone();
        for g in w.iter().rev() {
            v = self.actions[g.idx].apply(&v);
        }
        v
    }

    pub fn act(&self, p: &NCPolynomial, m: &Vector) -> Vector {
        let mut out = Vector::new();
        for (w, c) in p.terms() {
            crate::exactalg::vec_axpy(&mut out, c, &self.act_word(w, m));
        }
        out
    }

    /// Degree-two basis elements `y` of `C` for which `D{y}` does not act by
    /// zero, i.e. where the action fails to factor through `H_0(ΩC)`.
    pub fn violations(&self, dg: &DgCoalgebra) -> Result<Vec<usize>> {
        if self.actions.len() != dg.rank(1) {
            return Err(Error::Dimension(format!(
                "module gives {} actions for {} degree-one generators",
                self.actions.len(),
                dg.rank(1)
            )));
        }
        let mut out = Vec::new();
        if dg.top() < 2 {
            return Ok(out);
        }
        for y in 0..dg.rank(2) {
            let rel = generator_boundary(dg, Gen::new(2, y))?;
            let bad = (0..self.rank()).any(|m| {
                let mut e = Vector::new();
                e.insert(m, self.ring.one());
                !self.act(&rel, &e).is_empty()
            });
            if bad {
                out.push(y);
            }
        }
        Ok(out)
    }
}

/// Element of `B(R, ΩC, M)`: a combination of `[w1|...|wk] m` with nonempty
/// words `wi`, keyed by the letters and the basis index of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarElement {
    ring: Ring,
    terms: BTreeMap<(Vec<Word>, usize), Scalar>,
}

/// Degree `Σ (deg wi + 1)` of a bar monomial.
pub fn bar_degree(letters: &[Word]) -> usize {
    letters.iter().map(|w| word_degree(w) + 1).sum()
}

impl BarElement {
    pub fn zero(ring: Ring) -> Self {
        BarElement {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ring: Ring, letters: Vec<Word>, m: usize) -> Self {
        let mut e = Self::zero(ring);
        e.add_term(letters, m, &ring.one());
        e
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &BTreeMap<(Vec<Word>, usize), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, letters: Vec<Word>, m: usize, c: &Scalar) {
        debug_assert!(letters.iter().all(|w| !w.is_empty()));
        add_term(&mut self.terms, (letters, m), c);
    }

    pub fn axpy(&mut self, c: &Scalar, other: &BarElement) {
        for ((l, m), v) in &other.terms {
            self.add_term(l.clone(), *m, &(c * v));
        }
    }

    pub fn sub(&self, other: &BarElement) -> BarElement {
        let mut out = self.clone();
        out.axpy(&-self.ring.one(), other);
        out
    }
}

/// Bar monomials `[a_1|...|a_k]m` of total degree at most `max_deg` whose
/// letters are cobar words of length at most `max_word_len`.
pub fn bar_basis(
    dg: &DgCoalgebra,
    max_deg: usize,
    max_word_len: usize,
    rank: usize,
) -> Vec<BarElement> {
    let ring = dg.ring();
    let words: Vec<Word> = (0..max_deg)
        .flat_map(|d| cobar_words(dg, d, max_word_len))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Word>> = vec![Vec::new()];
    while let Some(l) = stack.pop() {
        for m in 0..rank {
            out.push(BarElement::monomial(ring, l.clone(), m));
        }
        for w in &words {
            let mut nl = l.clone();
            nl.push(w.clone());
            if bar_degree(&nl) <= max_deg {
                stack.push(nl);
            }
        }
    }
    out
}

/// The bar differential on `B(R, ΩC, M)`:
///
/// `d[a1|...|ak]m = Σ (-1)^{e(i-1)} [...|D ai|...]m + Σ (-1)^{e(i)} [...|ai·a(i+1)|...]m
///  + (-1)^{e(k)} [a1|...|a(k-1)] (ak·m)` with `e(i) = Σ_{l<=i} (|al| + 1)`.
///
/// The term `(1·a1)` vanishes because every letter lies in the augmentation
/// ideal, and `d_M = 0`.
pub fn bar_boundary(dg: &DgCoalgebra, module: &WordModule, e: &BarElement) -> Result<BarElement> {
    let ring = e.ring;
    let mut out = BarElement::zero(ring);
    for ((letters, m), c) in &e.terms {
        let k = letters.len();
        let mut eps = vec![0usize; k + 1];
        for i in 0..k {
            eps[i + 1] = eps[i] + word_degree(&letters[i]) + 1;
        }
        for i in 0..k {
            let d = cobar_boundary(
                dg,
                &NCPolynomial::monomial(ring, letters[i].clone(), ring.one()),
            )?;
            let s = &sign(ring, eps[i] % 2 == 1) * c;
            for (w, v) in d.terms() {
                let mut nl = letters.clone();
                nl[i] = w.clone();
                out.add_term(nl, *m, &(&s * v));
            }
        }
        for i in 0..k.saturating_sub(1) {
            let s = &sign(ring, eps[i + 1] % 2 == 1) * c;
            let mut nl = letters[..i].to_vec();
            let mut merged = letters[i].clone();
            merged.extend_from_slice(&letters[i + 1]);
            nl.push(merged);
            nl.extend_from_slice(&letters[i + 2..]);
            out.add_term(nl, *m, &s);
        }
        if k > 0 {
            let s = &sign(ring, eps[k] % 2 == 1) * c;
            let mut e = Vector::new();
            e.insert(*m, ring.one());
            for (n, v) in module.act_word(&letters[k - 1], &e) {
                out.add_term(letters[..k - 1].to_vec(), n, &(&s * &v));
            }
        }
    }
    Ok(out)
}

/// Element of `C ⊗ M`, keyed by `(degree, basis of C, basis of M)`.
pub type TwistedElement = BTreeMap<(usize, usize, usize), Scalar>;

/// Brown's differential on `C ⊗_τ M` for a module concentrated in degree 0:
/// `∂(x ⊗ m) = ∂x ⊗ m - Σ (-1)^|x'| x' ⊗ τ(x'')·m`.
///
/// Only degree-one `x''` contribute; `twist[e]` is the operator `m ↦ τ(e)·m`.
pub fn brown_boundary(
    dg: &DgCoalgebra,
    twist: &[SparseMatrix],
    e: &TwistedElement,
) -> TwistedElement {
    let ring = dg.ring();
    let mut out = TwistedElement::new();
    for (&(n, x, m), c) in e {
        if n == 0 {
            continue;
        }
        for (y, v) in dg.boundary_of(n, x) {
            add_term(&mut out, (n - 1, y, m), &(c * &v));
        }
        let s = &sign(ring, n % 2 == 1) * c;
        for (&(p, i, j), v) in dg.delta(n, x) {
            if n - p != 1 {
                continue;
            }
            for (r, a) in twist[j].column(m) {
                add_term(&mut out, (p, i, r), &(&(&s * v) * &a));
            }
        }
    }
    out
}

/// `C ⊗_τ M` as a chain complex; the twist must satisfy the Maurer-Cartan
/// condition, which for degree-0 modules says each `D{y}` acts by zero.
pub fn twisted_complex(dg: &DgCoalgebra, module: &WordModule) -> Result<ChainComplex> {
    let bad = module.violations(dg)?;
    if !bad.is_empty() {
        return Err(Error::InvalidTwisting(format!(
            "module action does not satisfy the relations of degree-two elements {bad:?}"
        )));
    }
    let ring = dg.ring();
    let r = module.rank();
    let twist = module.actions();
    let mut labels = Vec::new();
    let mut boundaries = Vec::new();
    for n in 0..=dg.top() {
        labels.push(
            dg.complex
                .labels(n)
                .iter()
                .flat_map(|x| module.labels().iter().map(move |m| format!("{x} (x) {m}")))
                .collect::<Vec<_>>(),
        );
        let rows = if n == 0 { 0 } else { dg.rank(n - 1) * r };
        let mut triples = Vec::new();
        for x in 0..dg.rank(n) {
            for m in 0..r {
                let mut e = TwistedElement::new();
                e.insert((n, x, m), ring.one());
                for ((_, y, k), v) in brown_boundary(dg, twist, &e) {
                    triples.push((y * r + k, x * r + m, v));
                }
            }
        }
        boundaries.push(SparseMatrix::from_triples(
            rows,
            dg.rank(n) * r,
            ring,
            triples,
        )?);
    }
    ChainComplex::new(ring, labels, boundaries)
}

/// `φ: B(R, ΩC, M) -> C ⊗_ι M`:
/// `[ ]m ↦ 1⊗m`, `[{c1|...|ck}]m ↦ c1 ⊗ {c2|...|ck}·m`, longer elements ↦ 0.
pub fn phi(module: &WordModule, e: &BarElement) -> TwistedElement {
    let ring = e.ring;
    let mut out = TwistedElement::new();
    for ((letters, m), c) in &e.terms {
        match letters.len() {
            0 => add_term(&mut out, (0, 0, *m), c),
            1 => {
                let w = &letters[0];
                let mut em = Vector::new();
                em.insert(*m, ring.one());
                for (n, v) in module.act_word(&w[1..], &em) {
                    add_term(&mut out, (w[0].deg, w[0].idx, n), &(c * &v));
                }
            }
            _ => {}
        }
    }
    out
}

/// `ρ(c) = [{c}] + Σ [{c'}|{c''}] + Σ [{c'}|{c''}|{c'''}] + ...` for a
/// basis element, iterating the reduced coproduct until it vanishes.
pub fn rho(dg: &DgCoalgebra, n: usize, x: usize) -> BTreeMap<Vec<Word>, Scalar> {
    let ring = dg.ring();
    let mut out = BTreeMap::new();
    if n == 0 {
        out.insert(Vec::new(), ring.one());
        return out;
    }
    let mut layer: BTreeMap<Vec<Gen>, Scalar> =
        [(vec![Gen::new(n, x)], ring.one())].into_iter().collect();
    while !layer.is_empty() {
        let mut next = BTreeMap::new();
        for (gens, c) in &layer {
            add_term(&mut out, gens.iter().map(|g| vec![*g]).collect(), c);
            let last = gens[gens.len() - 1];
            for ((p, i, j), v) in dg.reduced_delta(last.deg, last.idx) {
                let mut ng = gens[..gens.len() - 1].to_vec();
                ng.push(Gen::new(p, i));
                ng.push(Gen::new(last.deg - p, j));
                add_term(&mut next, ng, &(c * &v));
            }
        }
        layer = next;
    }
    out
}

/// `(ρ ⊗ id)(x ⊗ m)` in `B(R, ΩC, M)`.
pub fn rho_tensor(dg: &DgCoalgebra, e: &TwistedElement) -> BarElement {
    let mut out = BarElement::zero(dg.ring());
    for (&(n, x, m), c) in e {
        for (letters, v) in rho(dg, n, x) {
            out.add_term(letters, m, &(c * &v));
        }
    }
    out
}

/// The contracting homotopy on `ker φ`: splits the first generator off the
/// last letter, `[...|{c1|c2|...|ck}]m ↦ ±[...|{c1}|{c2|...|ck}]m`, and
/// kills last letters of length one. The sign makes the merge of the two
/// new letters return the input.
pub fn homotopy(module: &WordModule, e: &BarElement) -> Result<BarElement> {
    if !phi(module, e).is_empty() {
        return Err(Error::Input(
            "the homotopy is only defined on the kernel of phi".into(),
        ));
    }
    Ok(homotopy_unchecked(e))
}

fn homotopy_unchecked(e: &BarElement) -> BarElement {
    let ring = e.ring;
    let mut out = BarElement::zero(ring);
    for ((letters, m), c) in &e.terms {
        let Some(last) = letters.last() else { continue };
        if last.len() < 2 {
            continue;
        }
        let before = bar_degree(&letters[..letters.len() - 1]);
        let s = sign(ring, (before + last[0].deg) % 2 == 1);
        let mut nl = letters[..letters.len() - 1].to_vec();
        nl.push(vec![last[0]]);
        nl.push(last[1..].to_vec());
        out.add_term(nl, *m, &(&s * c));
    }
    out
}

/// Smallest `k <= max_power` with `(d h + h d - id)^k x = 0`.
pub fn nilpotency_witness(
    dg: &DgCoalgebra,
    module: &WordModule,
    x: &BarElement,
    max_power: usize,
) -> Result<Option<usize>> {
    if !phi(module, x).is_empty() {
        return Err(Error::Input(
            "the homotopy is only defined on the kernel of phi".into(),
        ));
    }
    let mut cur = x.clone();
    for k in 0..=max_power {
        if cur.is_zero() {
            return Ok(Some(k));
        }
        let dh = bar_boundary(dg, module, &homotopy_unchecked(&cur))?;
        let hd = homotopy_unchecked(&bar_boundary(dg, module, &cur)?);
        let mut next = dh;
        next.axpy(&cur.ring.one(), &hd);
        cur = next.sub(&cur);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::normalized_chain_coalgebra;
    use crate::exactalg::HomologyGroup;
    use crate::scoalg::free_coalgebra;
    use crate::sset::{nerve_of_group, FiniteGroup};

    fn nerve_chains(n: usize, d: usize, ring: Ring) -> DgCoalgebra {
        let x = nerve_of_group(&FiniteGroup::cyclic(n), d).unwrap();
        normalized_chain_coalgebra(&free_coalgebra(&x, ring))
            .unwrap()
            .dg
    }

    fn sign_module(ring: Ring) -> WordModule {
        // [σ] = 1 + {σ} acts by -1
        WordModule::new(
            ring,
            vec!["m".into()],
            vec![SparseMatrix::from_dense(ring, &[vec![-2]])],
        )
        .unwrap()
    }

    #[test]
    fn bar_square_zero_and_phi_chain_map() {
        for ring in [Ring::Integers, Ring::PrimeField(3)] {
            let dg = nerve_chains(2, 3, ring);
            for module in [WordModule::trivial(&dg), sign_module(ring)] {
                for e in bar_basis(&dg, 3, 2, module.rank()) {
                    let d = bar_boundary(&dg, &module, &e).unwrap();
                    assert!(bar_boundary(&dg, &module, &d).unwrap().is_zero());
                    let lhs = phi(&module, &d);
                    let rhs = brown_boundary(&dg, module.actions(), &phi(&module, &e));
                    assert_eq!(lhs, rhs, "{e:?}");
                }
            }
        }
    }

    #[test]
    fn rho_is_a_section() {
        let ring = Ring::Integers;
        let dg = nerve_chains(3, 3, ring);
        let module = WordModule::trivial(&dg);
        for n in 0..=3 {
            for x in 0..dg.rank(n) {
                let mut e = TwistedElement::new();
                e.insert((n, x, 0), ring.one());
                let r = rho_tensor(&dg, &e);
                assert_eq!(phi(&module, &r), e);
                let lhs = bar_boundary(&dg, &module, &r).unwrap();
                let rhs = rho_tensor(&dg, &brown_boundary(&dg, module.actions(), &e));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn homotopy_is_nilpotent_on_two_letters() {
        let ring = Ring::Integers;
        let dg = nerve_chains(3, 3, ring);
        let module = WordModule::trivial(&dg);
        let (a, b) = (Gen::new(1, 0), Gen::new(1, 1));
        let x = BarElement::monomial(ring, vec![vec![a], vec![b]], 0);
        let k = nilpotency_witness(&dg, &module, &x, 4).unwrap().unwrap();
        assert!(k <= 2);
        assert!(homotopy(&module, &BarElement::monomial(ring, vec![vec![a]], 0)).is_err());
    }

    #[test]
    fn sign_local_system() {
        let dg = nerve_chains(2, 3, Ring::Integers);
        let k = twisted_complex(&dg, &sign_module(Ring::Integers)).unwrap();
        let h = k.all_homology(Ring::Integers).unwrap();
        assert_eq!(
            h,
            vec![
                HomologyGroup::with_torsion(0, &[2]),
                HomologyGroup::free(0),
                HomologyGroup::with_torsion(0, &[2])
            ]
        );
        let bad = WordModule::new(
            Ring::Integers,
            vec!["m".into()],
            vec![SparseMatrix::from_dense(Ring::Integers, &[vec![1]])],
        )
        .unwrap();
        assert!(twisted_complex(&dg, &bad).is_err());
    }
}
