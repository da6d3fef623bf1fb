use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::scalar::{Ring, Scalar};
use crate::{Error, Result};

/// Sparse vector: index -> nonzero coefficient.
pub type Vector = BTreeMap<usize, Scalar>;

/// Adds `coeff * e_index` to `v`, dropping the entry if it cancels.
pub fn vec_add_term(v: &mut Vector, index: usize, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    match v.get_mut(&index) {
        Some(c) => {
            *c += coeff;
            if c.is_zero() {
                v.remove(&index);
            }
        }
        None => {
            v.insert(index, coeff.clone());
        }
    }
}

pub fn vec_axpy(v: &mut Vector, a: &Scalar, x: &Vector) {
    for (i, c) in x {
        vec_add_term(v, *i, &(a * c));
    }
}

/// Immutable sparse matrix acting on column vectors: an `rows x cols`
/// matrix maps `R^cols -> R^rows`. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    ring: Ring,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, ring: Ring) -> Self {
        SparseMatrix {
            rows,
            cols,
            ring,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, ring: Ring) -> Self {
        let entries = (0..n).map(|i| ((i, i), ring.one())).collect();
        SparseMatrix {
            rows: n,
            cols: n,
            ring,
            entries,
        }
    }

    /// Builds a matrix from `(row, col, value)` triples, summing repeats.
    pub fn from_triples<I>(rows: usize, cols: usize, ring: Ring, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut entries: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::Dimension(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            if v.ring() != ring {
                return Err(Error::Ring(format!(
                    "entry in {} for a matrix over {}",
                    v.ring(),
                    ring
                )));
            }
            let slot = entries.entry((r, c)).or_insert_with(|| ring.zero());
            *slot += &v;
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix {
            rows,
            cols,
            ring,
            entries,
        })
    }

    pub fn from_dense(ring: Ring, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let triples = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, v)| (i, j, ring.from_i64(*v)))
        });
        Self::from_triples(nrows, ncols, ring, triples).expect("dense rows are in range")
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, ring: Ring, columns: &[Vector]) -> Self {
        let mut entries = BTreeMap::new();
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                assert!(*i < rows, "column entry out of range");
                if !v.is_zero() {
                    entries.insert((*i, j), v.clone());
                }
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            ring,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn column(&self, c: usize) -> Vector {
        self.entries
            .range((0, c)..)
            .filter(|((_, cc), _)| *cc == c)
            .map(|((r, _), v)| (*r, v.clone()))
            .collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        let mut cols = vec![Vector::new(); self.cols];
        for ((r, c), v) in &self.entries {
            cols[*c].insert(*r, v.clone());
        }
        cols
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for ((r, c), m) in &self.entries {
            if let Some(a) = v.get(c) {
                vec_add_term(&mut out, *r, &(m * a));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|((r, c), v)| ((*c, *r), v.clone()))
            .collect();
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            ring: self.ring,
            entries,
        }
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut rhs_rows: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
        for ((r, c), v) in &rhs.entries {
            rhs_rows.entry(*r).or_default().push((*c, v));
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            let Some(row) = rhs_rows.get(k) else { continue };
            for (j, b) in row {
                let slot = acc.entry((*i, *j)).or_insert_with(|| self.ring.zero());
                *slot += &(a * b);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            ring: self.ring,
            entries: acc,
        })
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(rhs, &self.ring.one())
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        self.combine(rhs, &-self.ring.one())
    }

    fn combine(&self, rhs: &SparseMatrix, factor: &Scalar) -> Result<SparseMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = self.entries.clone();
        for (k, v) in &rhs.entries {
            let slot = entries.entry(*k).or_insert_with(|| self.ring.zero());
            *slot += &(factor * v);
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix { entries, ..*self })
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut entries: BTreeMap<_, _> = self.entries.iter().map(|(k, v)| (*k, v * s)).collect();
        entries.retain(|_, v: &mut Scalar| !v.is_zero());
        SparseMatrix { entries, ..*self }
    }

    /// Kronecker product; basis pair `(i, j)` is indexed `i * rhs_dim + j`.
    pub fn kronecker(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut entries = BTreeMap::new();
        for ((a, b), x) in &self.entries {
            for ((c, d), y) in &rhs.entries {
                let v = x * y;
                if !v.is_zero() {
                    entries.insert((a * rhs.rows + c, b * rhs.cols + d), v);
                }
            }
        }
        SparseMatrix {
            rows: self.rows * rhs.rows,
            cols: self.cols * rhs.cols,
            ring: self.ring,
            entries,
        }
    }

    /// The flip `R^a (x) R^b -> R^b (x) R^a`.
    pub fn flip(a: usize, b: usize, ring: Ring) -> SparseMatrix {
        let entries = (0..a)
            .flat_map(|i| (0..b).map(move |j| ((j * a + i, i * b + j), ring.one())))
            .collect();
        SparseMatrix {
            rows: a * b,
            cols: a * b,
            ring,
            entries,
        }
    }

    /// Columns that differ between two equally shaped matrices.
    pub fn differing_columns(&self, other: &SparseMatrix) -> Vec<usize> {
        let mut cols: Vec<usize> = self
            .entries
            .iter()
            .filter(|(k, v)| other.entries.get(k) != Some(v))
            .chain(
                other
                    .entries
                    .iter()
                    .filter(|(k, v)| self.entries.get(k) != Some(v)),
            )
            .map(|((_, c), _)| *c)
            .collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }

    /// Places `blocks` side by side.
    pub fn hstack(rows: usize, ring: Ring, blocks: &[&SparseMatrix]) -> Result<SparseMatrix> {
        let mut entries = BTreeMap::new();
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::Dimension("hstack row mismatch".into()));
            }
            for ((r, c), v) in &b.entries {
                entries.insert((*r, c + offset), v.clone());
            }
            offset += b.cols;
        }
        Ok(SparseMatrix {
            rows,
            cols: offset,
            ring,
            entries,
        })
    }

    /// Rows and columns selected (and reordered) by the index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let row_pos: BTreeMap<usize, usize> =
            rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let entries = self
            .entries
            .iter()
            .filter_map(|((r, c), v)| Some(((*row_pos.get(r)?, *col_pos.get(c)?), v.clone())))
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            ring: self.ring,
            entries,
        }
    }

    /// Reduces an integer matrix into another ring (identity if already there).
    pub fn change_ring(&self, ring: Ring) -> Result<SparseMatrix> {
        if ring == self.ring {
            return Ok(self.clone());
        }
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            let w = ring.reduce(v)?;
            if !w.is_zero() {
                entries.insert(*k, w);
            }
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            ring,
            entries,
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.ring.zero(); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    pub(crate) fn from_dense_scalars(
        ring: Ring,
        rows: usize,
        cols: usize,
        d: &[Vec<Scalar>],
    ) -> Self {
        let mut entries = BTreeMap::new();
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.insert((i, j), v.clone());
                }
            }
        }
        SparseMatrix {
            rows,
            cols,
            ring,
            entries,
        }
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SparseMatrix {}x{} over {}",
            self.rows, self.cols, self.ring
        )?;
        if self.rows <= 12 && self.cols <= 12 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  {} nonzero entries", self.entries.len())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_and_kronecker() {
        let z = Ring::Integers;
        let a = SparseMatrix::from_dense(z, &[vec![1, 2], vec![0, 1]]);
        let b = SparseMatrix::from_dense(z, &[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.mul(&b).unwrap(), SparseMatrix::identity(2, z));
        let k = a.kronecker(&SparseMatrix::identity(2, z));
        assert_eq!(k.get(0, 2), z.from_i64(2));
        assert_eq!(k.get(1, 3), z.from_i64(2));
        assert_eq!(k.nnz(), 6);
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let z = Ring::Integers;
        let m = SparseMatrix::from_triples(2, 2, z, [(0, 0, z.one()), (0, 0, -z.one())]).unwrap();
        assert!(m.is_zero());
        let m2 = SparseMatrix::from_dense(z, &[vec![2, 0]])
            .change_ring(Ring::PrimeField(2))
            .unwrap();
        assert!(m2.is_zero());
        assert!(SparseMatrix::from_triples(1, 1, z, [(1, 0, z.one())]).is_err());
    }
}
