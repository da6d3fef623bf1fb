use std::collections::BTreeMap;

use super::complex::ChainComplex;
use crate::exactalg::{smith_normal_form, Ring, Scalar, SparseMatrix};
use crate::scoalg::SimplicialCoalgebra;
use crate::{Error, Result};

/// Element of `⊕_{p+q=n} K_p ⊗ K_q`, keyed by `(p, i, j)`.
pub type TensorVec = BTreeMap<(usize, usize, usize), Scalar>;

/// Element of `⊕ K_p ⊗ K_q ⊗ K_r`, keyed by `(p, q, i, j, k)`.
pub type Tensor3Vec = BTreeMap<(usize, usize, usize, usize, usize), Scalar>;

pub(crate) fn add_term<K: Ord + Clone>(v: &mut BTreeMap<K, Scalar>, k: K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, c.clone());
        }
    }
}

/// A connected dg coalgebra: a chain complex with a coproduct
/// `delta[n][x]` for each basis element `x` of degree `n`.
#[derive(Clone, Debug)]
pub struct DgCoalgebra {
    pub complex: ChainComplex,
    delta: Vec<Vec<TensorVec>>,
}

impl DgCoalgebra {
    pub fn new(complex: ChainComplex, delta: Vec<Vec<TensorVec>>) -> Result<Self> {
        if delta.len() != complex.top() + 1
            || (0..delta.len()).any(|n| delta[n].len() != complex.rank(n))
        {
            return Err(Error::Dimension(
                "coproduct must be given on every basis element".into(),
            ));
        }
        Ok(DgCoalgebra { complex, delta })
    }

    pub fn ring(&self) -> Ring {
        self.complex.ring()
    }

    pub fn top(&self) -> usize {
        self.complex.top()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.complex.rank(n)
    }

    pub fn is_connected(&self) -> bool {
        self.rank(0) == 1
    }

    pub fn delta(&self, n: usize, x: usize) -> &TensorVec {
        &self.delta[n][x]
    }

    /// Reduced coproduct: the terms with both factors of positive degree.
    pub fn reduced_delta(&self, n: usize, x: usize) -> TensorVec {
        self.delta[n][x]
            .iter()
            .filter(|((p, _, _), _)| *p > 0 && *p < n)
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }

    /// Boundary of a basis element as a sparse vector.
    pub fn boundary_of(&self, n: usize, x: usize) -> BTreeMap<usize, Scalar> {
        if n == 0 {
            return BTreeMap::new();
        }
        self.complex.boundary(n).column(x)
    }

    fn counit(&self, p: usize, i: usize) -> Scalar {
        if p == 0 && i == 0 {
            self.ring().one()
        } else {
            self.ring().zero()
        }
    }

    /// Violations of coassociativity, counitality and the Leibniz rule
    /// `delta d = (d ⊗ 1 + 1 ⊗ d) delta` with the sign `(-1)^|left|`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let ring = self.ring();
        if !self.is_connected() {
            out.push("degree 0 has rank different from 1".into());
        }
        for n in 0..=self.top() {
            for x in 0..self.rank(n) {
                let d = &self.delta[n][x];
                let mut left = Tensor3Vec::new();
                let mut right = Tensor3Vec::new();
                for (&(p, i, j), c) in d {
                    for (&(a, k, l), e) in &self.delta[p][i] {
                        add_term(&mut left, (a, p - a, k, l, j), &(c * e));
                    }
                    for (&(a, k, l), e) in &self.delta[n - p][j] {
                        add_term(&mut right, (p, a, i, k, l), &(c * e));
                    }
                }
                if left != right {
                    out.push(format!("coassociativity fails on degree {n} element {x}"));
                }
                let mut lc = BTreeMap::new();
                let mut rc = BTreeMap::new();
                for (&(p, i, j), c) in d {
                    add_term(&mut lc, j, &(c * &self.counit(p, i)));
                    add_term(&mut rc, i, &(c * &self.counit(n - p, j)));
                }
                let mut e = BTreeMap::new();
                e.insert(x, ring.one());
                if lc != e || rc != e {
                    out.push(format!("counit law fails on degree {n} element {x}"));
                }
                if n >= 1 {
                    let mut lhs = TensorVec::new();
                    for (y, c) in self.boundary_of(n, x) {
                        for (k, e) in &self.delta[n - 1][y] {
                            add_term(&mut lhs, *k, &(&c * e));
                        }
                    }
                    let mut rhs = TensorVec::new();
                    for (&(p, i, j), c) in d {
                        for (y, e) in self.boundary_of(p, i) {
                            add_term(&mut rhs, (p - 1, y, j), &(c * &e));
                        }
                        let sign = if p % 2 == 0 { ring.one() } else { -ring.one() };
                        for (y, e) in self.boundary_of(n - p, j) {
                            add_term(&mut rhs, (p, i, y), &(&(c * &e) * &sign));
                        }
                    }
                    if lhs != rhs {
                        out.push(format!(
                            "coproduct is not a chain map on degree {n} element {x}"
                        ));
                    }
                }
            }
        }
        out
    }
}

/// `N_*(C)` with the projection from and section into `C`.
#[derive(Clone, Debug)]
pub struct NormalizedChains {
    pub dg: DgCoalgebra,
    projections: Vec<SparseMatrix>,
    sections: Vec<SparseMatrix>,
}

impl NormalizedChains {
    /// `C_n -> N_n`.
    pub fn projection(&self, n: usize) -> &SparseMatrix {
        &self.projections[n]
    }

    /// `N_n -> C_n`, a right inverse of the projection.
    pub fn section(&self, n: usize) -> &SparseMatrix {
        &self.sections[n]
    }
}

/// Projection/section pair for `C_n -> C_n / (degenerate part)`.
pub(crate) fn split_degenerate(
    c: &SimplicialCoalgebra,
    n: usize,
) -> Result<(SparseMatrix, SparseMatrix, Vec<String>)> {
    let ring = c.ring();
    let r = c.rank(n);
    if let Some(flags) = c.degenerate_flags(n) {
        let keep: Vec<usize> = (0..r).filter(|&i| !flags[i]).collect();
        let p = SparseMatrix::from_triples(
            keep.len(),
            r,
            ring,
            keep.iter().enumerate().map(|(k, &i)| (k, i, ring.one())),
        )?;
        let labels = keep.iter().map(|&i| c.labels(n)[i].clone()).collect();
        return Ok((p.clone(), p.transpose(), labels));
    }
    if n == 0 {
        return Ok((
            SparseMatrix::identity(r, ring),
            SparseMatrix::identity(r, ring),
            c.labels(0).to_vec(),
        ));
    }
    let blocks: Vec<&SparseMatrix> = (0..n).map(|j| c.degeneracy(n - 1, j)).collect();
    let degenerate = SparseMatrix::hstack(r, ring, &blocks)?;
    let f = smith_normal_form(&degenerate);
    if f.diag.iter().any(|d| !d.is_unit()) {
        return Err(Error::CheckFailed(format!(
            "degenerate part of level {n} is not a direct summand"
        )));
    }
    let k = f.rank();
    let rest: Vec<usize> = (k..r).collect();
    let all: Vec<usize> = (0..r).collect();
    let p = f.u.submatrix(&rest, &all);
    let s = f.u_inv.submatrix(&all, &rest);
    let labels = (0..r - k).map(|i| format!("v{n}.{i}")).collect();
    Ok((p, s, labels))
}

/// Alternating face sum `Σ (-1)^i d_i` out of level `n`.
pub fn alternating_faces(c: &SimplicialCoalgebra, n: usize) -> SparseMatrix {
    let ring = c.ring();
    let mut acc = SparseMatrix::zero(c.rank(n - 1), c.rank(n), ring);
    for i in 0..=n {
        let sign = if i % 2 == 0 { ring.one() } else { -ring.one() };
        acc = acc.add(&c.face(n, i).scale(&sign)).unwrap();
    }
    acc
}

/// `d_{p+1} ... d_n` from level `n` to level `p`.
pub fn front_face(c: &SimplicialCoalgebra, n: usize, p: usize) -> SparseMatrix {
    let mut m = SparseMatrix::identity(c.rank(n), c.ring());
    for k in (p + 1..=n).rev() {
        m = c.face(k, k).mul(&m).unwrap();
    }
    m
}

/// `d_0^{n-q}` from level `n` to level `q`.
pub fn back_face(c: &SimplicialCoalgebra, n: usize, q: usize) -> SparseMatrix {
    let mut m = SparseMatrix::identity(c.rank(n), c.ring());
    for k in (q + 1..=n).rev() {
        m = c.face(k, 0).mul(&m).unwrap();
    }
    m
}

/// Normalized chains with the Alexander-Whitney coproduct
/// `δ(x) = Σ f_p(x~) ⊗ l_q(x-)` applied to `Δ(x)`.
pub fn normalized_chain_coalgebra(c: &SimplicialCoalgebra) -> Result<NormalizedChains> {
    let d = c.truncation();
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    let mut labels = Vec::new();
    for n in 0..=d {
        let (p, s, l) = split_degenerate(c, n)?;
        projections.push(p);
        sections.push(s);
        labels.push(l);
    }
    let ring = c.ring();
    let mut boundaries = vec![SparseMatrix::zero(0, labels[0].len(), ring)];
    for n in 1..=d {
        boundaries.push(
            projections[n - 1]
                .mul(&alternating_faces(c, n))?
                .mul(&sections[n])?,
        );
    }
    let complex = ChainComplex::new(ring, labels, boundaries)?;
    let mut delta = Vec::new();
    for n in 0..=d {
        let mut per = vec![TensorVec::new(); complex.rank(n)];
        let lifted = c.coproduct(n).mul(&sections[n])?;
        for p in 0..=n {
            let q = n - p;
            let f = projections[p].mul(&front_face(c, n, p))?;
            let l = projections[q].mul(&back_face(c, n, q))?;
            let m = f.kronecker(&l).mul(&lifted)?;
            let rq = complex.rank(q);
            for (row, col, v) in m.entries() {
                add_term(&mut per[col], (p, row / rq, row % rq), v);
            }
        }
        delta.push(per);
    }
    let dg = DgCoalgebra::new(complex, delta)?;
    Ok(NormalizedChains {
        dg,
        projections,
        sections,
    })
}
