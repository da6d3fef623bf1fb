use crate::exactalg::SparseMatrix;
use crate::pi1::FiniteBialgebra;
use crate::{Error, Result};

/// A simplicial bialgebra with a finite-rank bialgebra in each level.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialBialgebra {
    levels: Vec<FiniteBialgebra>,
    faces: Vec<Vec<SparseMatrix>>,
    degeneracies: Vec<Vec<SparseMatrix>>,
    constant: bool,
}

impl SimplicialBialgebra {
    /// `b` placed in every level `0..=truncation` with identity structure maps.
    pub fn constant(b: &FiniteBialgebra, truncation: usize) -> Self {
        let id = SparseMatrix::identity(b.rank(), b.ring());
        let levels = vec![b.clone(); truncation + 1];
        let faces = (0..=truncation)
            .map(|n| vec![id.clone(); if n == 0 { 0 } else { n + 1 }])
            .collect();
        let degeneracies = (0..=truncation)
            .map(|n| vec![id.clone(); if n < truncation { n + 1 } else { 0 }])
            .collect();
        SimplicialBialgebra {
            levels,
            faces,
            degeneracies,
            constant: true,
        }
    }

    /// A general simplicial bialgebra; structure maps follow the layout of
    /// `SimplicialCoalgebra::new`.
    pub fn new(
        levels: Vec<FiniteBialgebra>,
        faces: Vec<Vec<SparseMatrix>>,
        degeneracies: Vec<Vec<SparseMatrix>>,
    ) -> Result<Self> {
        let d = levels
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Input("no levels".into()))?;
        if faces.len() != d + 1 || degeneracies.len() != d + 1 {
            return Err(Error::Dimension(
                "structure maps must cover every level".into(),
            ));
        }
        let constant = levels.windows(2).all(|w| w[0] == w[1])
            && faces
                .iter()
                .flatten()
                .chain(degeneracies.iter().flatten())
                .all(|m| m.rows() == m.cols() && *m == SparseMatrix::identity(m.rows(), m.ring()));
        Ok(SimplicialBialgebra {
            levels,
            faces,
            degeneracies,
            constant,
        })
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.constant
    }

    pub fn level(&self, n: usize) -> &FiniteBialgebra {
        &self.levels[n]
    }

    pub fn rank(&self, n: usize) -> usize {
        self.levels[n].rank()
    }

    pub fn face(&self, n: usize, i: usize) -> &SparseMatrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &SparseMatrix {
        &self.degeneracies[n][j]
    }

    pub fn is_cocommutative(&self) -> bool {
        self.levels.iter().all(FiniteBialgebra::is_cocommutative)
    }

    /// Bialgebra axioms on every level.
    pub fn violations(&self) -> Vec<String> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(n, b)| {
                b.violations()
                    .into_iter()
                    .map(move |v| format!("level {n}: {v}"))
            })
            .collect()
    }
}
