use crate::exactalg::{Ring, SparseMatrix};
use crate::sset::{SimplicialMap, TruncatedSimplicialSet};
use crate::{Error, Result};

/// A simplicial cocommutative coalgebra through dimension `truncation`,
/// stored levelwise as matrices on a fixed basis.
///
/// `coproduct[n]` is `rank^2 x rank` with basis pair `(i, j)` at
/// `i * rank + j`; `counit[n]` is `1 x rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialCoalgebra {
    pub(crate) ring: Ring,
    pub(crate) truncation: usize,
    pub(crate) labels: Vec<Vec<String>>,
    pub(crate) faces: Vec<Vec<SparseMatrix>>,
    pub(crate) degeneracies: Vec<Vec<SparseMatrix>>,
    pub(crate) coproduct: Vec<SparseMatrix>,
    pub(crate) counit: Vec<SparseMatrix>,
    pub(crate) degenerate: Option<Vec<Vec<bool>>>,
}

impl SimplicialCoalgebra {
    /// Assembles a coalgebra from its structure matrices. `faces[n]` holds
    /// `d_0..d_n` out of level `n` (empty for `n = 0`); `degeneracies[n]`
    /// holds `s_0..s_n` out of level `n` for `n < truncation`.
    pub fn new(
        ring: Ring,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<SparseMatrix>>,
        degeneracies: Vec<Vec<SparseMatrix>>,
        coproduct: Vec<SparseMatrix>,
        counit: Vec<SparseMatrix>,
    ) -> Result<Self> {
        let levels = labels.len();
        if levels < 2 {
            return Err(Error::Truncation(
                "a simplicial coalgebra needs truncation at least 1".into(),
            ));
        }
        let truncation = levels - 1;
        let rank = |n: usize| labels[n].len();
        let shape_ok = faces.len() == levels
            && degeneracies.len() == levels
            && coproduct.len() == levels
            && counit.len() == levels
            && (0..levels).all(|n| {
                let r = rank(n);
                faces[n].len() == if n == 0 { 0 } else { n + 1 }
                    && faces[n]
                        .iter()
                        .all(|d| d.rows() == rank(n - 1) && d.cols() == r)
                    && degeneracies[n].len() == if n < truncation { n + 1 } else { 0 }
                    && degeneracies[n]
                        .iter()
                        .all(|s| s.rows() == rank(n + 1) && s.cols() == r)
                    && coproduct[n].rows() == r * r
                    && coproduct[n].cols() == r
                    && counit[n].rows() == 1
                    && counit[n].cols() == r
            });
        if !shape_ok {
            return Err(Error::Dimension(
                "simplicial coalgebra structure matrices have the wrong shape".into(),
            ));
        }
        Ok(SimplicialCoalgebra {
            ring,
            truncation,
            labels,
            faces,
            degeneracies,
            coproduct,
            counit,
            degenerate: None,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn rank(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    /// `d_i` out of level `n`.
    pub fn face(&self, n: usize, i: usize) -> &SparseMatrix {
        &self.faces[n][i]
    }

    /// `s_j` out of level `n`.
    pub fn degeneracy(&self, n: usize, j: usize) -> &SparseMatrix {
        &self.degeneracies[n][j]
    }

    pub fn coproduct(&self, n: usize) -> &SparseMatrix {
        &self.coproduct[n]
    }

    pub fn counit(&self, n: usize) -> &SparseMatrix {
        &self.counit[n]
    }

    /// For set-like bases: which basis elements are degenerate simplices.
    pub fn degenerate_flags(&self, n: usize) -> Option<&[bool]> {
        self.degenerate.as_ref().map(|d| d[n].as_slice())
    }

    pub(crate) fn with_flags(mut self, flags: Vec<Vec<bool>>) -> Self {
        self.degenerate = Some(flags);
        self
    }

    pub fn is_connected(&self) -> bool {
        if self.rank(0) != 1 {
            return false;
        }
        let one = SparseMatrix::identity(1, self.ring);
        self.coproduct[0] == one && self.counit[0] == one
    }

    /// Checks the simplicial identities, the coalgebra axioms on every level
    /// and that faces and degeneracies are coalgebra maps.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = self.truncation;
        let ring = self.ring;
        let eq = |a: &SparseMatrix, b: &SparseMatrix| a == b;
        for n in 0..=d {
            let r = self.rank(n);
            let id = SparseMatrix::identity(r, ring);
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let l = self.face(n - 1, i).mul(self.face(n, j)).unwrap();
                        let rr = self.face(n - 1, j - 1).mul(self.face(n, i)).unwrap();
                        if !eq(&l, &rr) {
                            out.push(format!("level {n}: d{i}d{j} != d{}d{i}", j - 1));
                        }
                    }
                }
            }
            if n < d {
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let l = self.face(n + 1, i).mul(self.degeneracy(n, j)).unwrap();
                        let rr = if i < j {
                            self.degeneracy(n - 1, j - 1).mul(self.face(n, i)).unwrap()
                        } else if i == j || i == j + 1 {
                            id.clone()
                        } else {
                            self.degeneracy(n - 1, j).mul(self.face(n, i - 1)).unwrap()
                        };
                        if !eq(&l, &rr) {
                            out.push(format!("level {n}: d{i}s{j} identity fails"));
                        }
                    }
                }
            }
            if n + 2 <= d {
                for j in 0..=n {
                    for i in 0..=j {
                        let l = self
                            .degeneracy(n + 1, i)
                            .mul(self.degeneracy(n, j))
                            .unwrap();
                        let rr = self
                            .degeneracy(n + 1, j + 1)
                            .mul(self.degeneracy(n, i))
                            .unwrap();
                        if !eq(&l, &rr) {
                            out.push(format!("level {n}: s{i}s{j} != s{}s{i}", j + 1));
                        }
                    }
                }
            }
            let delta = self.coproduct(n);
            let eps = self.counit(n);
            if delta.kronecker(&id).mul(delta).unwrap() != id.kronecker(delta).mul(delta).unwrap() {
                out.push(format!("level {n}: coproduct not coassociative"));
            }
            if SparseMatrix::flip(r, r, ring).mul(delta).unwrap() != *delta {
                out.push(format!("level {n}: coproduct not cocommutative"));
            }
            if eps.kronecker(&id).mul(delta).unwrap() != id
                || id.kronecker(eps).mul(delta).unwrap() != id
            {
                out.push(format!("level {n}: counit law fails"));
            }
            if n >= 1 {
                for i in 0..=n {
                    let f = self.face(n, i);
                    if f.kronecker(f).mul(delta).unwrap() != self.coproduct(n - 1).mul(f).unwrap()
                        || self.counit(n - 1).mul(f).unwrap() != *eps
                    {
                        out.push(format!("level {n}: d{i} is not a coalgebra map"));
                    }
                }
            }
            if n < d {
                for j in 0..=n {
                    let s = self.degeneracy(n, j);
                    if s.kronecker(s).mul(delta).unwrap() != self.coproduct(n + 1).mul(s).unwrap()
                        || self.counit(n + 1).mul(s).unwrap() != *eps
                    {
                        out.push(format!("level {n}: s{j} is not a coalgebra map"));
                    }
                }
            }
        }
        out
    }
}

/// The coalgebra `R[X]` with every simplex group-like.
pub fn free_coalgebra(x: &TruncatedSimplicialSet, ring: Ring) -> SimplicialCoalgebra {
    let d = x.truncation();
    let one = || ring.one();
    let mut labels = Vec::new();
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    let mut flags = Vec::new();
    for n in 0..=d {
        let basis = x.simplices(n);
        let r = basis.len();
        labels.push(basis.iter().map(|s| x.label(s)).collect());
        flags.push(basis.iter().map(|s| s.is_degenerate()).collect());
        let mut fs = Vec::new();
        if n > 0 {
            for i in 0..=n {
                let t = basis
                    .iter()
                    .enumerate()
                    .map(|(c, s)| (x.simplex_index(&x.face(s, i).unwrap()).unwrap(), c, one()));
                fs.push(SparseMatrix::from_triples(x.simplices(n - 1).len(), r, ring, t).unwrap());
            }
        }
        faces.push(fs);
        let mut ss = Vec::new();
        if n < d {
            for j in 0..=n {
                let t = basis.iter().enumerate().map(|(c, s)| {
                    (
                        x.simplex_index(&s.degeneracy(j).unwrap()).unwrap(),
                        c,
                        one(),
                    )
                });
                ss.push(SparseMatrix::from_triples(x.simplices(n + 1).len(), r, ring, t).unwrap());
            }
        }
        degeneracies.push(ss);
        coproduct.push(
            SparseMatrix::from_triples(r * r, r, ring, (0..r).map(|i| (i * r + i, i, one())))
                .unwrap(),
        );
        counit.push(SparseMatrix::from_triples(1, r, ring, (0..r).map(|i| (0, i, one()))).unwrap());
    }
    SimplicialCoalgebra::new(ring, labels, faces, degeneracies, coproduct, counit)
        .expect("free coalgebra shapes")
        .with_flags(flags)
}

/// Levelwise matrices of `R[f]: R[X] -> R[Y]`.
pub fn induced_map(
    f: &SimplicialMap,
    source: &TruncatedSimplicialSet,
    target: &TruncatedSimplicialSet,
    ring: Ring,
) -> Vec<SparseMatrix> {
    (0..=source.truncation())
        .map(|n| {
            let basis = source.simplices(n);
            let t = basis
                .iter()
                .enumerate()
                .map(|(c, s)| (target.simplex_index(&f.apply(s)).unwrap(), c, ring.one()));
            SparseMatrix::from_triples(target.simplices(n).len(), basis.len(), ring, t).unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{nerve_of_group, point, FiniteGroup};

    #[test]
    fn point_coalgebra() {
        let c = free_coalgebra(&point(2), Ring::Integers);
        assert_eq!(c.ranks(), vec![1, 1, 1]);
        assert!(c.is_connected());
        assert!(c.violations().is_empty());
        assert_eq!(*c.face(1, 0), SparseMatrix::identity(1, Ring::Integers));
    }

    #[test]
    fn nerve_coalgebra() {
        let x = nerve_of_group(&FiniteGroup::cyclic(2), 2).unwrap();
        let c = free_coalgebra(&x, Ring::Integers);
        assert_eq!(c.ranks(), vec![1, 2, 4]);
        assert!(c.violations().is_empty());
        let g = 0;
        assert_eq!(c.coproduct(1).get(g * 2 + g, g), Ring::Integers.one());
        let coaug = SparseMatrix::identity(1, Ring::Integers);
        assert_eq!(c.counit(0).mul(&coaug).unwrap(), coaug);
    }
}
