use std::collections::{BTreeMap, HashMap};

use super::simplex::{decreasing_words, CellId, SimplexRef};
use crate::{Error, Result};

#[derive(Clone, Debug)]
struct Level {
    basis: Vec<SimplexRef>,
    index: HashMap<SimplexRef, usize>,
}

/// A simplicial set known through dimension `truncation`, stored by its
/// nondegenerate simplices and their faces in canonical form.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialSet {
    truncation: usize,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SimplexRef>>>,
    by_name: HashMap<String, CellId>,
    levels: Vec<Level>,
}

impl PartialEq for TruncatedSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation
            && self.names == other.names
            && self.faces == other.faces
    }
}

impl TruncatedSimplicialSet {
    /// Builds and validates a simplicial set. `faces[n][k]` lists the `n+1`
    /// faces of the `k`-th nondegenerate `n`-simplex (`faces[0]` is empty).
    pub fn new(
        truncation: usize,
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<SimplexRef>>>,
    ) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::Truncation(
                "a simplicial set needs truncation at least 1".into(),
            ));
        }
        if names.len() != truncation + 1 || faces.len() != truncation + 1 {
            return Err(Error::Input(format!(
                "expected simplex lists for dimensions 0..={truncation}"
            )));
        }
        let mut by_name = HashMap::new();
        for (dim, list) in names.iter().enumerate() {
            for (index, name) in list.iter().enumerate() {
                if by_name
                    .insert(name.clone(), CellId::new(dim, index))
                    .is_some()
                {
                    return Err(Error::Input(format!("duplicate simplex name `{name}`")));
                }
            }
        }
        if !faces[0].is_empty() {
            return Err(Error::Input("vertices have no faces".into()));
        }
        for n in 1..=truncation {
            if faces[n].len() != names[n].len() {
                return Err(Error::Input(format!("face data missing in dimension {n}")));
            }
            for (k, fs) in faces[n].iter().enumerate() {
                let who = &names[n][k];
                if fs.len() != n + 1 {
                    return Err(Error::Input(format!(
                        "simplex `{who}` needs {} faces",
                        n + 1
                    )));
                }
                for (i, f) in fs.iter().enumerate() {
                    if f.dim() != n - 1 || f.base.index >= names[f.base.dim].len() {
                        return Err(Error::Input(format!(
                            "face d{i} of `{who}` is not an {}-simplex",
                            n - 1
                        )));
                    }
                    let canon = SimplexRef::canonicalize(&f.word, f.base)
                        .map_err(|e| Error::Input(format!("face d{i} of `{who}`: {e}")))?;
                    if canon.word != f.word || f.word.windows(2).any(|w| w[0] <= w[1]) {
                        return Err(Error::Input(format!(
                            "face d{i} of `{who}` has a degeneracy word that is not strictly decreasing"
                        )));
                    }
                }
            }
        }
        let mut set = TruncatedSimplicialSet {
            truncation,
            names,
            faces,
            by_name,
            levels: Vec::new(),
        };
        set.levels = (0..=truncation).map(|n| set.build_level(n)).collect();
        for n in 2..=truncation {
            for k in 0..set.names[n].len() {
                let x = SimplexRef::nondegenerate(CellId::new(n, k));
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = set.face(&set.face(&x, j)?, i)?;
                        let rhs = set.face(&set.face(&x, i)?, j - 1)?;
                        if lhs != rhs {
                            return Err(Error::Input(format!(
                                "simplex `{}` violates d{i} d{j} = d{} d{i}",
                                set.names[n][k],
                                j - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(set)
    }

    /// Builds from names, with faces given as `(degeneracy word, base name)`.
    pub fn from_named(
        truncation: usize,
        names: Vec<Vec<String>>,
        faces: &BTreeMap<String, Vec<(Vec<usize>, String)>>,
    ) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (dim, list) in names.iter().enumerate() {
            for (index, name) in list.iter().enumerate() {
                lookup.insert(name.clone(), CellId::new(dim, index));
            }
        }
        for key in faces.keys() {
            match lookup.get(key) {
                Some(c) if c.dim > 0 => {}
                _ => {
                    return Err(Error::Input(format!(
                        "faces given for unknown simplex `{key}`"
                    )))
                }
            }
        }
        let mut all = vec![Vec::new()];
        for list in names.iter().skip(1) {
            let mut level = Vec::new();
            for name in list {
                let fs = faces
                    .get(name)
                    .ok_or_else(|| Error::Input(format!("no faces for simplex `{name}`")))?;
                let refs = fs
                    .iter()
                    .map(|(w, b)| {
                        let base = *lookup.get(b).ok_or_else(|| {
                            Error::Input(format!("face of `{name}` names unknown simplex `{b}`"))
                        })?;
                        Ok(SimplexRef {
                            word: w.clone(),
                            base,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                level.push(refs);
            }
            all.push(level);
        }
        while all.len() < names.len() {
            all.push(Vec::new());
        }
        TruncatedSimplicialSet::new(truncation, names, all)
    }

    fn build_level(&self, n: usize) -> Level {
        let mut basis: Vec<SimplexRef> = (0..self.names[n].len())
            .map(|k| SimplexRef::nondegenerate(CellId::new(n, k)))
            .collect();
        for m in (0..n).rev() {
            for k in 0..self.names[m].len() {
                for word in decreasing_words(n, n - m) {
                    basis.push(SimplexRef {
                        word,
                        base: CellId::new(m, k),
                    });
                }
            }
        }
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Level { basis, index }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Number of nondegenerate simplices in dimension `n`.
    pub fn count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.names[0].len() == 1
    }

    pub fn name(&self, cell: CellId) -> &str {
        &self.names[cell.dim][cell.index]
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.names[n]
    }

    pub fn cell(&self, name: &str) -> Option<CellId> {
        self.by_name.get(name).copied()
    }

    /// Stored faces of a nondegenerate simplex.
    pub fn stored_faces(&self, cell: CellId) -> &[SimplexRef] {
        &self.faces[cell.dim][cell.index]
    }

    /// `d_i x` for any simplex `x` of dimension at least 1.
    pub fn face(&self, x: &SimplexRef, i: usize) -> Result<SimplexRef> {
        let n = x.dim();
        if n == 0 || i > n {
            return Err(Error::Input(format!("face d{i} of a {n}-simplex")));
        }
        if n > self.truncation {
            return Err(Error::Truncation(format!(
                "dimension {n} exceeds truncation {}",
                self.truncation
            )));
        }
        let (prefix, rest) = x.push_face(i);
        match rest {
            None => SimplexRef::canonicalize(&prefix, x.base),
            Some(i) => {
                let f = &self.faces[x.base.dim][x.base.index][i];
                let mut word = prefix;
                word.extend_from_slice(&f.word);
                SimplexRef::canonicalize(&word, f.base)
            }
        }
    }

    /// `s_j x`; the result must stay within the truncation.
    pub fn degeneracy(&self, x: &SimplexRef, j: usize) -> Result<SimplexRef> {
        if x.dim() + 1 > self.truncation {
            return Err(Error::Truncation(format!(
                "degeneracy of a {}-simplex exceeds truncation {}",
                x.dim(),
                self.truncation
            )));
        }
        x.degeneracy(j)
    }

    /// All `n`-simplices: nondegenerate ones first, then degenerate ones by
    /// decreasing base dimension, base index and word.
    pub fn simplices(&self, n: usize) -> &[SimplexRef] {
        &self.levels[n].basis
    }

    pub fn simplex_index(&self, x: &SimplexRef) -> Option<usize> {
        self.levels.get(x.dim())?.index.get(x).copied()
    }

    pub fn label(&self, x: &SimplexRef) -> String {
        let mut s = String::new();
        for j in &x.word {
            s.push_str(&format!("s{j} "));
        }
        s.push_str(self.name(x.base));
        s
    }

    /// Checks every simplicial identity on every simplex up to the
    /// truncation, returning descriptions of the violations.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let d = self.truncation;
        for n in 0..=d {
            for x in self.simplices(n) {
                let lx = self.label(x);
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let l = self.face(&self.face(x, j).unwrap(), i).unwrap();
                            let r = self.face(&self.face(x, i).unwrap(), j - 1).unwrap();
                            if l != r {
                                out.push(format!("d{i}d{j} != d{}d{i} on {lx}", j - 1));
                            }
                        }
                    }
                }
                if n + 1 <= d {
                    for j in 0..=n {
                        let sx = x.degeneracy(j).unwrap();
                        for i in 0..=n + 1 {
                            let l = self.face(&sx, i).unwrap();
                            let r = if i < j {
                                self.face(x, i).unwrap().degeneracy(j - 1).unwrap()
                            } else if i == j || i == j + 1 {
                                x.clone()
                            } else {
                                self.face(x, i - 1).unwrap().degeneracy(j).unwrap()
                            };
                            if l != r {
                                out.push(format!("d{i}s{j} identity fails on {lx}"));
                            }
                        }
                    }
                }
                if n + 2 <= d {
                    for j in 0..=n {
                        for i in 0..=j {
                            let l = x.degeneracy(j).unwrap().degeneracy(i).unwrap();
                            let r = x.degeneracy(i).unwrap().degeneracy(j + 1).unwrap();
                            if l != r {
                                out.push(format!("s{i}s{j} != s{}s{i} on {lx}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
