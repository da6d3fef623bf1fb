use num_bigint::BigInt;
use num_traits::Signed;

use super::matrix::SparseMatrix;
use super::scalar::{Ring, Scalar};

/// Result of a Smith normal form computation: `u * m * v` is diagonal with
/// the nonzero entries `diag` (in order, each dividing the next) and `u`,
/// `v` invertible over the ring. The inverses are tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: Vec<Scalar>,
    pub u: SparseMatrix,
    pub v: SparseMatrix,
    pub u_inv: SparseMatrix,
    pub v_inv: SparseMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entries as integers (only meaningful over Z).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter_map(|s| s.as_bigint().cloned())
            .collect()
    }
}

struct Work {
    a: Vec<Vec<Scalar>>,
    u: Vec<Vec<Scalar>>,
    u_inv: Vec<Vec<Scalar>>,
    v: Vec<Vec<Scalar>>,
    v_inv: Vec<Vec<Scalar>>,
}

fn identity(n: usize, ring: Ring) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect()
}

fn row_axpy(m: &mut [Vec<Scalar>], target: usize, q: &Scalar, source: usize) {
    // row[target] += q * row[source]
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *t += &(q * s);
        }
    }
}

fn col_axpy(m: &mut [Vec<Scalar>], target: usize, q: &Scalar, source: usize) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[source].is_zero() {
            let add = q * &row[source];
            row[target] += &add;
        }
    }
}

fn col_swap(m: &mut [Vec<Scalar>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

impl Work {
    // row_i += q * row_j, mirrored on the transforms
    fn row_op(&mut self, i: usize, q: &Scalar, j: usize) {
        row_axpy(&mut self.a, i, q, j);
        row_axpy(&mut self.u, i, q, j);
        col_axpy(&mut self.u_inv, j, &-q, i);
    }

    // col_i += q * col_j
    fn col_op(&mut self, i: usize, q: &Scalar, j: usize) {
        col_axpy(&mut self.a, i, q, j);
        col_axpy(&mut self.v, i, q, j);
        row_axpy(&mut self.v_inv, j, &-q, i);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            col_swap(&mut self.u_inv, i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i != j {
            col_swap(&mut self.a, i, j);
            col_swap(&mut self.v, i, j);
            self.v_inv.swap(i, j);
        }
    }

    fn row_scale(&mut self, i: usize, unit: &Scalar) {
        let inv = unit.inverse().expect("scaling by a unit");
        for x in self.a[i].iter_mut() {
            *x = &*x * unit;
        }
        for x in self.u[i].iter_mut() {
            *x = &*x * unit;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = &row[i] * &inv;
        }
    }

    /// Smallest-norm nonzero entry of the trailing submatrix, ties broken
    /// by lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let n = x.norm();
                if best.as_ref().map_or(true, |(bn, _, _)| n < *bn) {
                    best = Some((n, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form over Z (or diagonalization over a field) with the
/// deterministic smallest-magnitude pivot rule.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_dense(),
        u: identity(rows, ring),
        u_inv: identity(rows, ring),
        v: identity(cols, ring),
        v_inv: identity(cols, ring),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = w.a[i][t].div_rem(&w.a[t][t]);
                w.row_op(i, &-q, t);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = w.a[t][j].div_rem(&w.a[t][t]);
                w.col_op(j, &-q, t);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = w.pivot(t).expect("nonzero remainder present");
                w.row_swap(t, pi);
                w.col_swap(t, pj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| w.a[i][j].exact_div(&w.a[t][t]).is_none()));
            match bad {
                Some(i) => w.row_op(t, &ring.one(), i),
                None => break,
            }
        }
        let p = w.a[t][t].clone();
        let unit = match ring {
            Ring::Integers => {
                if p.as_bigint().unwrap().is_negative() {
                    Some(-ring.one())
                } else {
                    None
                }
            }
            _ => p.inverse(),
        };
        if let Some(unit) = unit.filter(|u| !u.is_one()) {
            w.row_scale(t, &unit);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    SmithForm {
        diag,
        u: SparseMatrix::from_dense_scalars(ring, rows, rows, &w.u),
        v: SparseMatrix::from_dense_scalars(ring, cols, cols, &w.v),
        u_inv: SparseMatrix::from_dense_scalars(ring, rows, rows, &w.u_inv),
        v_inv: SparseMatrix::from_dense_scalars(ring, cols, cols, &w.v_inv),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    smith_normal_form(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagonal_of(f: &SmithForm, rows: usize, cols: usize, ring: Ring) -> SparseMatrix {
        SparseMatrix::from_triples(
            rows,
            cols,
            ring,
            f.diag.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
        .unwrap()
    }

    fn check(m: &SparseMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        let prod = f.u.mul(m).unwrap().mul(&f.v).unwrap();
        assert_eq!(prod, diagonal_of(&f, m.rows(), m.cols(), m.ring()));
        assert_eq!(
            f.u.mul(&f.u_inv).unwrap(),
            SparseMatrix::identity(m.rows(), m.ring())
        );
        assert_eq!(
            f.v.mul(&f.v_inv).unwrap(),
            SparseMatrix::identity(m.cols(), m.ring())
        );
        for w in f.diag.windows(2) {
            assert!(w[1].exact_div(&w[0]).is_some());
        }
        f
    }

    #[test]
    fn diag_two_three() {
        let z = Ring::Integers;
        let f = check(&SparseMatrix::from_dense(z, &[vec![2, 0], vec![0, 3]]));
        assert_eq!(
            f.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn zero_and_identity() {
        let z = Ring::Integers;
        assert!(check(&SparseMatrix::zero(3, 2, z)).diag.is_empty());
        let f = check(&SparseMatrix::identity(3, z));
        assert_eq!(f.invariant_factors(), vec![BigInt::from(1); 3]);
    }

    #[test]
    fn rectangular_and_field() {
        let z = Ring::Integers;
        let m = SparseMatrix::from_dense(z, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let f = check(&m);
        assert_eq!(
            f.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let f3 = check(&m.change_ring(Ring::PrimeField(3)).unwrap());
        assert_eq!(f3.rank(), 1);
        let fq = check(&m.change_ring(Ring::Rationals).unwrap());
        assert_eq!(fq.rank(), 3);
    }
}
