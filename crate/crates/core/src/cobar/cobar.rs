use std::fmt::Debug;

use super::poly::{word_degree, Gen, NCPolynomial};
use crate::chains::DgCoalgebra;
use crate::exactalg::{vec_axpy, Ring, Scalar, Vector};
use crate::pi1::FiniteBialgebra;
use crate::{Error, Result};

pub(crate) fn sign(ring: Ring, odd: bool) -> Scalar {
    if odd {
        -ring.one()
    } else {
        ring.one()
    }
}

fn check_generator(dg: &DgCoalgebra, g: Gen) -> Result<()> {
    if !dg.is_connected() {
        return Err(Error::Input(
            "the cobar construction needs a connected coalgebra".into(),
        ));
    }
    if g.deg == 0 {
        return Err(Error::Input(
            "degree 0 elements are not cobar generators".into(),
        ));
    }
    if g.deg > dg.top() {
        return Err(Error::Truncation(format!(
            "generator of degree {} exceeds the known degrees 0..={}",
            g.deg,
            dg.top()
        )));
    }
    if g.idx >= dg.rank(g.deg) {
        return Err(Error::Input(format!(
            "no basis element {} in degree {}",
            g.idx, g.deg
        )));
    }
    Ok(())
}

/// `D{x} = {∂x} - Σ (-1)^|x'| {x'|x''}` over the reduced coproduct of `x`;
/// the degree-0 part of `∂x` is dropped.
pub fn generator_boundary(dg: &DgCoalgebra, g: Gen) -> Result<NCPolynomial> {
    check_generator(dg, g)?;
    let ring = dg.ring();
    let mut out = NCPolynomial::zero(ring);
    if g.deg >= 2 {
        for (y, c) in dg.boundary_of(g.deg, g.idx) {
            out.add_term(vec![Gen::new(g.deg - 1, y)], &c);
        }
    }
    for ((p, i, j), c) in dg.reduced_delta(g.deg, g.idx) {
        let s = sign(ring, p % 2 == 0);
        out.add_term(vec![Gen::new(p, i), Gen::new(g.deg - p, j)], &(&c * &s));
    }
    Ok(out)
}

/// The cobar differential, extended from generators as a derivation:
/// `D{x1|...|xk} = Σ (-1)^{deg{x1|...|x(i-1)}} {x1|...|Dxi|...|xk}`.
pub fn cobar_boundary(dg: &DgCoalgebra, w: &NCPolynomial) -> Result<NCPolynomial> {
    let ring = dg.ring();
    let mut out = NCPolynomial::zero(ring);
    for (word, c) in w.terms() {
        let mut before = 0;
        for (i, g) in word.iter().enumerate() {
            let dg_i = generator_boundary(dg, *g)?;
            let s = &sign(ring, before % 2 == 1) * c;
            for (mid, e) in dg_i.terms() {
                let mut nw = word[..i].to_vec();
                nw.extend_from_slice(mid);
                nw.extend_from_slice(&word[i + 1..]);
                out.add_term(nw, &(&s * e));
            }
            before += g.cobar_degree();
        }
    }
    Ok(out)
}

/// A graded algebra with differential of degree -1 and an augmentation,
/// the target of a twisting cochain.
pub trait DgAlgebra {
    type Elem: Clone + PartialEq + Debug;
    fn ring(&self) -> Ring;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `acc += c * x`.
    fn axpy(&self, acc: &mut Self::Elem, c: &Scalar, x: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn differential(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn augmentation(&self, a: &Self::Elem) -> Scalar;
}

/// `ΩC` for a connected dg coalgebra `C`.
#[derive(Clone, Debug)]
pub struct CobarAlgebra {
    pub dg: DgCoalgebra,
}

impl DgAlgebra for CobarAlgebra {
    type Elem = NCPolynomial;

    fn ring(&self) -> Ring {
        self.dg.ring()
    }

    fn zero(&self) -> NCPolynomial {
        NCPolynomial::zero(self.ring())
    }

    fn is_zero(&self, a: &NCPolynomial) -> bool {
        a.is_zero()
    }

    fn axpy(&self, acc: &mut NCPolynomial, c: &Scalar, x: &NCPolynomial) {
        acc.axpy(c, x);
    }

    fn mul(&self, a: &NCPolynomial, b: &NCPolynomial) -> NCPolynomial {
        a.mul(b)
    }

    fn differential(&self, a: &NCPolynomial) -> Result<NCPolynomial> {
        cobar_boundary(&self.dg, a)
    }

    fn augmentation(&self, a: &NCPolynomial) -> Scalar {
        a.augmentation()
    }
}

/// A finite bialgebra viewed as a dg algebra concentrated in degree 0.
impl DgAlgebra for FiniteBialgebra {
    type Elem = Vector;

    fn ring(&self) -> Ring {
        FiniteBialgebra::ring(self)
    }

    fn zero(&self) -> Vector {
        Vector::new()
    }

    fn is_zero(&self, a: &Vector) -> bool {
        a.is_empty()
    }

    fn axpy(&self, acc: &mut Vector, c: &Scalar, x: &Vector) {
        vec_axpy(acc, c, x);
    }

    fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        FiniteBialgebra::mul(self, a, b)
    }

    fn differential(&self, _: &Vector) -> Result<Vector> {
        Ok(Vector::new())
    }

    fn augmentation(&self, a: &Vector) -> Scalar {
        self.counit_of(a)
    }
}

/// A linear map `C -> A` of degree `degree`, stored on the basis of `C`.
#[derive(Clone, Debug)]
pub struct Cochain<A: DgAlgebra> {
    pub degree: i64,
    pub values: Vec<Vec<A::Elem>>,
}

impl<A: DgAlgebra> Cochain<A> {
    pub fn zero(dg: &DgCoalgebra, target: &A, degree: i64) -> Self {
        Cochain {
            degree,
            values: (0..=dg.top())
                .map(|n| vec![target.zero(); dg.rank(n)])
                .collect(),
        }
    }

    pub fn value(&self, n: usize, x: usize) -> &A::Elem {
        &self.values[n][x]
    }

    pub fn apply(&self, target: &A, n: usize, v: &Vector) -> A::Elem {
        let mut out = target.zero();
        for (x, c) in v {
            target.axpy(&mut out, c, &self.values[n][*x]);
        }
        out
    }
}

/// Convolution `(f ⋆ g)(y) = Σ (-1)^{|g||y'|} f(y') g(y'')`.
pub fn convolve<A: DgAlgebra>(
    dg: &DgCoalgebra,
    target: &A,
    f: &Cochain<A>,
    g: &Cochain<A>,
) -> Cochain<A> {
    let ring = target.ring();
    let mut out = Cochain::zero(dg, target, f.degree + g.degree);
    for n in 0..=dg.top() {
        for x in 0..dg.rank(n) {
            let mut acc = target.zero();
            for (&(p, i, j), c) in dg.delta(n, x) {
                let s = &sign(ring, (g.degree * p as i64).rem_euclid(2) == 1) * c;
                let prod = target.mul(f.value(p, i), g.value(n - p, j));
                target.axpy(&mut acc, &s, &prod);
            }
            out.values[n][x] = acc;
        }
    }
    out
}

/// A degree -1 map `τ: C -> A` satisfying `dτ - τ∂ + τ⋆τ = 0`.
#[derive(Clone, Debug)]
pub struct DgTwistingCochain<A: DgAlgebra> {
    pub source: DgCoalgebra,
    pub target: A,
    pub cochain: Cochain<A>,
}

impl<A: DgAlgebra> DgTwistingCochain<A> {
    pub fn new(source: DgCoalgebra, target: A, values: Vec<Vec<A::Elem>>) -> Result<Self> {
        if values.len() != source.top() + 1
            || (0..values.len()).any(|n| values[n].len() != source.rank(n))
        {
            return Err(Error::Dimension(
                "one value per basis element is required".into(),
            ));
        }
        Ok(DgTwistingCochain {
            source,
            target,
            cochain: Cochain { degree: -1, values },
        })
    }

    pub fn value(&self, n: usize, x: usize) -> &A::Elem {
        self.cochain.value(n, x)
    }

    /// `dτ(x) - τ(∂x) + (τ⋆τ)(x)` for a basis element `x` of degree `n`.
    pub fn mc_residual(&self, n: usize, x: usize) -> Result<A::Elem> {
        let ring = self.target.ring();
        let t = &self.target;
        let mut acc = t.differential(self.value(n, x))?;
        let bd = self.source.boundary_of(n, x);
        if n > 0 {
            let tb = self.cochain.apply(t, n - 1, &bd);
            t.axpy(&mut acc, &-ring.one(), &tb);
        }
        for (&(p, i, j), c) in self.source.delta(n, x) {
            let s = &sign(ring, p % 2 == 1) * c;
            t.axpy(&mut acc, &s, &t.mul(self.value(p, i), self.value(n - p, j)));
        }
        Ok(acc)
    }

    /// Basis elements where the Maurer-Cartan equation or the augmentation
    /// conditions fail, as `(degree, index, reason)`.
    pub fn violations(&self) -> Result<Vec<(usize, usize, String)>> {
        let mut out = Vec::new();
        for n in 0..=self.source.top() {
            for x in 0..self.source.rank(n) {
                if n == 0 && !self.target.is_zero(self.value(0, x)) {
                    out.push((n, x, "nonzero on degree 0".into()));
                }
                if !self.target.augmentation(self.value(n, x)).is_zero() {
                    out.push((n, x, "augmentation of the value is nonzero".into()));
                }
                if !self.target.is_zero(&self.mc_residual(n, x)?) {
                    out.push((n, x, "Maurer-Cartan residual is nonzero".into()));
                }
            }
        }
        Ok(out)
    }
}

/// `ι: C -> ΩC`, `x ↦ {x}` on positive degrees.
pub fn universal_twisting_cochain(dg: &DgCoalgebra) -> Result<DgTwistingCochain<CobarAlgebra>> {
    if !dg.is_connected() {
        return Err(Error::Input(
            "the universal twisting cochain needs a connected coalgebra".into(),
        ));
    }
    let ring = dg.ring();
    let values = (0..=dg.top())
        .map(|n| {
            (0..dg.rank(n))
                .map(|x| {
                    if n == 0 {
                        NCPolynomial::zero(ring)
                    } else {
                        NCPolynomial::generator(ring, Gen::new(n, x))
                    }
                })
                .collect()
        })
        .collect();
    DgTwistingCochain::new(dg.clone(), CobarAlgebra { dg: dg.clone() }, values)
}

/// All words of cobar degree `degree` whose generators have degree at most
/// `max_gen` and whose length is at most `max_len`.
pub fn cobar_words(dg: &DgCoalgebra, degree: usize, max_len: usize) -> Vec<Vec<Gen>> {
    let gens: Vec<Gen> = (1..=dg.top())
        .flat_map(|d| (0..dg.rank(d)).map(move |i| Gen::new(d, i)))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Gen>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        let deg = word_degree(&w);
        if deg == degree && !w.is_empty() {
            out.push(w.clone());
        }
        if w.len() == max_len {
            continue;
        }
        for g in &gens {
            if deg + g.cobar_degree() <= degree {
                let mut nw = w.clone();
                nw.push(*g);
                stack.push(nw);
            }
        }
    }
    out.sort();
    out
}
