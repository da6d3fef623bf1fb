use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::matrix::SparseMatrix;
use super::scalar::Ring;
use super::snf::{rank, smith_normal_form};
use crate::{Error, Result};

/// A finitely generated module presented as `R^free_rank ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn with_torsion(rank: usize, torsion: &[i64]) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("R".to_string()),
            r => parts.push(format!("R^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology `ker(d_out) / im(d_in)` of the middle module, after changing
/// coefficients to `ring`.
pub fn homology_at(d_in: &SparseMatrix, d_out: &SparseMatrix, ring: Ring) -> Result<HomologyGroup> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::Dimension(format!(
            "incoming map lands in rank {} but outgoing map starts at rank {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let d_in = d_in.change_ring(ring)?;
    let d_out = d_out.change_ring(ring)?;
    if !d_out.mul(&d_in)?.is_zero() {
        return Err(Error::NotAComplex(
            "composite of boundary maps is nonzero".into(),
        ));
    }
    let middle = d_in.rows();
    let r_out = rank(&d_out);
    if d_in.is_zero() {
        return Ok(HomologyGroup::free(middle - r_out));
    }
    let f = smith_normal_form(&d_in);
    let r_in = f.rank();
    let torsion = if ring == Ring::Integers {
        f.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    } else {
        Vec::new()
    };
    Ok(HomologyGroup {
        free_rank: middle - r_out - r_in,
        torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_by_two() {
        let z = Ring::Integers;
        let d_in = SparseMatrix::from_dense(z, &[vec![2]]);
        let d_out = SparseMatrix::zero(0, 1, z);
        assert_eq!(
            homology_at(&d_in, &d_out, z).unwrap(),
            HomologyGroup::with_torsion(0, &[2])
        );
        assert_eq!(
            homology_at(&d_in, &d_out, Ring::PrimeField(2)).unwrap(),
            HomologyGroup::free(1)
        );
        assert_eq!(
            homology_at(&d_in, &d_out, Ring::Rationals).unwrap(),
            HomologyGroup::free(0)
        );
    }

    #[test]
    fn zero_maps() {
        let z = Ring::Integers;
        let h = homology_at(
            &SparseMatrix::zero(1, 1, z),
            &SparseMatrix::zero(1, 1, z),
            z,
        )
        .unwrap();
        assert_eq!(h, HomologyGroup::free(1));
    }

    #[test]
    fn rejects_non_complex() {
        let z = Ring::Integers;
        let one = SparseMatrix::identity(1, z);
        assert!(matches!(
            homology_at(&one, &one, z),
            Err(Error::NotAComplex(_))
        ));
    }
}
