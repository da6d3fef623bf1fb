use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A nondegenerate simplex: its dimension and its position in that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub fn new(dim: usize, index: usize) -> Self {
        CellId { dim, index }
    }
}

/// A possibly degenerate simplex `s_{j1} ... s_{jk} (base)` in canonical
/// form `j1 > j2 > ... > jk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub word: Vec<usize>,
    pub base: CellId,
}

impl SimplexRef {
    pub fn nondegenerate(base: CellId) -> Self {
        SimplexRef {
            word: Vec::new(),
            base,
        }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// Canonical form of `s_{w1} ... s_{wk} (base)`.
    pub fn canonicalize(word: &[usize], base: CellId) -> Result<SimplexRef> {
        // s_{wk} acts first, on simplices of dimension base.dim
        for (pos, &j) in word.iter().rev().enumerate() {
            if j > base.dim + pos {
                return Err(Error::Input(format!(
                    "degeneracy s_{j} applied to a simplex of dimension {}",
                    base.dim + pos
                )));
            }
        }
        let mut w = word.to_vec();
        // s_i s_j = s_{j+1} s_i for i <= j
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..w.len().saturating_sub(1) {
                if w[a] <= w[a + 1] {
                    let (i, j) = (w[a], w[a + 1]);
                    w[a] = j + 1;
                    w[a + 1] = i;
                    changed = true;
                }
            }
        }
        Ok(SimplexRef { word: w, base })
    }

    /// `s_j` applied to this simplex.
    pub fn degeneracy(&self, j: usize) -> Result<SimplexRef> {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(j);
        word.extend_from_slice(&self.word);
        SimplexRef::canonicalize(&word, self.base)
    }

    /// Pushes `d_i` through the degeneracy word. Returns the surviving
    /// degeneracies together with the face index still to be applied to the
    /// base, or `None` if a degeneracy absorbed the face.
    pub(crate) fn push_face(&self, i: usize) -> (Vec<usize>, Option<usize>) {
        let mut prefix = Vec::with_capacity(self.word.len());
        let mut i = i;
        for (pos, &j) in self.word.iter().enumerate() {
            if i < j {
                prefix.push(j - 1);
            } else if i == j || i == j + 1 {
                prefix.extend_from_slice(&self.word[pos + 1..]);
                return (prefix, None);
            } else {
                prefix.push(j);
                i -= 1;
            }
        }
        (prefix, Some(i))
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.word {
            write!(f, "s{j} ")?;
        }
        write!(f, "<{}:{}>", self.base.dim, self.base.index)
    }
}

/// All strictly decreasing words of length `k` with entries below `n`,
/// in lexicographic order.
pub(crate) fn decreasing_words(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(max: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for j in (k - 1)..max {
            cur.push(j);
            rec(j, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}
