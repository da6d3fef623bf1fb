use crate::exactalg::{homology_at, HomologyGroup, Ring, SparseMatrix};
use crate::{Error, Result};

/// A chain complex in degrees `0..=top` with boundaries of degree -1.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    ring: Ring,
    labels: Vec<Vec<String>>,
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// `boundaries[n]` maps degree `n` to degree `n - 1`; `boundaries[0]` is
    /// the zero map out of degree 0.
    pub fn new(
        ring: Ring,
        labels: Vec<Vec<String>>,
        boundaries: Vec<SparseMatrix>,
    ) -> Result<Self> {
        if labels.is_empty() || labels.len() != boundaries.len() {
            return Err(Error::Dimension(
                "one boundary per degree is required".into(),
            ));
        }
        for (n, b) in boundaries.iter().enumerate() {
            let target = if n == 0 { 0 } else { labels[n - 1].len() };
            if b.cols() != labels[n].len() || b.rows() != target {
                return Err(Error::Dimension(format!(
                    "boundary out of degree {n} has the wrong shape"
                )));
            }
            if n >= 1 && !boundaries[n - 1].mul(b)?.is_zero() {
                return Err(Error::NotAComplex(format!(
                    "boundary squared is nonzero in degree {n}"
                )));
            }
        }
        Ok(ChainComplex {
            ring,
            labels,
            boundaries,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Highest degree present.
    pub fn top(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundaries[n]
    }

    pub fn boundaries(&self) -> &[SparseMatrix] {
        &self.boundaries
    }

    /// Homology in the requested degrees; only degrees below the top degree
    /// are trusted.
    pub fn homology(&self, ring: Ring, degrees: &[usize]) -> Result<Vec<HomologyGroup>> {
        degrees
            .iter()
            .map(|&k| {
                if k >= self.top() {
                    return Err(Error::Truncation(format!(
                        "degree {k} is not trusted; complex is known through degree {}",
                        self.top()
                    )));
                }
                homology_at(&self.boundaries[k + 1], &self.boundaries[k], ring)
            })
            .collect()
    }

    /// Homology in every trusted degree.
    pub fn all_homology(&self, ring: Ring) -> Result<Vec<HomologyGroup>> {
        let degrees: Vec<usize> = (0..self.top()).collect();
        self.homology(ring, &degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_guard() {
        let z = Ring::Integers;
        let k = ChainComplex::new(
            z,
            vec![vec!["v".into()], vec!["e".into()]],
            vec![SparseMatrix::zero(0, 1, z), SparseMatrix::zero(1, 1, z)],
        )
        .unwrap();
        assert_eq!(k.homology(z, &[0]).unwrap(), vec![HomologyGroup::free(1)]);
        assert!(k.homology(z, &[1]).is_err());
    }
}
