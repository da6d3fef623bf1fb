use std::collections::HashMap;

use super::group::FiniteGroup;
use super::set::TruncatedSimplicialSet;
use super::simplex::{CellId, SimplexRef};
use crate::{Error, Result};

/// The single-vertex simplicial set.
pub fn point(truncation: usize) -> TruncatedSimplicialSet {
    let mut names = vec![vec!["*".to_string()]];
    names.resize(truncation + 1, Vec::new());
    let faces = vec![Vec::new(); truncation + 1];
    TruncatedSimplicialSet::new(truncation, names, faces).expect("point")
}

/// Wedge of `k` minimal circles: one vertex and `k` edges named `a`, `b`, ...
pub fn wedge_of_circles(k: usize, truncation: usize) -> TruncatedSimplicialSet {
    let star = SimplexRef::nondegenerate(CellId::new(0, 0));
    let mut names = vec![vec!["*".to_string()], Vec::new()];
    let mut faces = vec![Vec::new(), Vec::new()];
    for e in 0..k {
        let name = if k <= 26 {
            ((b'a' + e as u8) as char).to_string()
        } else {
            format!("a{e}")
        };
        names[1].push(name);
        faces[1].push(vec![star.clone(), star.clone()]);
    }
    names.resize(truncation + 1, Vec::new());
    faces.resize(truncation + 1, Vec::new());
    TruncatedSimplicialSet::new(truncation, names, faces).expect("wedge of circles")
}

/// One vertex and one edge.
pub fn minimal_circle(truncation: usize) -> TruncatedSimplicialSet {
    wedge_of_circles(1, truncation)
}

/// Bookkeeping between tuples of group elements and simplices of the nerve.
#[derive(Clone, Debug)]
pub struct NerveLayout {
    group: FiniteGroup,
    tuples: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, CellId>,
}

impl NerveLayout {
    fn new(group: &FiniteGroup, truncation: usize) -> Self {
        let others = group.nonidentity();
        let mut tuples = vec![vec![Vec::new()]];
        for n in 1..=truncation {
            let mut level = Vec::new();
            for t in &tuples[n - 1] {
                for &g in &others {
                    let mut u = t.clone();
                    u.push(g);
                    level.push(u);
                }
            }
            tuples.push(level);
        }
        let mut index = HashMap::new();
        for (n, level) in tuples.iter().enumerate() {
            for (k, t) in level.iter().enumerate() {
                index.insert(t.clone(), CellId::new(n, k));
            }
        }
        NerveLayout {
            group: group.clone(),
            tuples,
            index,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// The simplex `(g1,...,gn)`; identity entries become degeneracies.
    pub fn simplex(&self, tuple: &[usize]) -> SimplexRef {
        let e = self.group.identity();
        let core: Vec<usize> = tuple.iter().copied().filter(|&g| g != e).collect();
        let mut word: Vec<usize> = tuple
            .iter()
            .enumerate()
            .filter(|(_, &g)| g == e)
            .map(|(p, _)| p)
            .collect();
        word.reverse();
        SimplexRef {
            word,
            base: self.index[&core],
        }
    }

    /// The tuple of group elements of any simplex of the nerve.
    pub fn tuple(&self, x: &SimplexRef) -> Vec<usize> {
        let mut t = self.tuples[x.base.dim][x.base.index].clone();
        for &j in x.word.iter().rev() {
            t.insert(j, self.group.identity());
        }
        t
    }

    pub fn face_tuple(&self, t: &[usize], i: usize) -> Vec<usize> {
        let n = t.len();
        if i == 0 {
            t[1..].to_vec()
        } else if i == n {
            t[..n - 1].to_vec()
        } else {
            let mut u = t[..i - 1].to_vec();
            u.push(self.group.mul(t[i - 1], t[i]));
            u.extend_from_slice(&t[i + 1..]);
            u
        }
    }
}

fn tuple_name(t: &[usize]) -> String {
    let inner: Vec<String> = t.iter().map(|g| g.to_string()).collect();
    format!("({})", inner.join(","))
}

/// The nerve of a finite group and the layout relating simplices to tuples.
pub fn nerve_with_layout(
    group: &FiniteGroup,
    truncation: usize,
) -> Result<(TruncatedSimplicialSet, NerveLayout)> {
    if truncation < 1 {
        return Err(Error::Truncation(
            "nerve needs truncation at least 1".into(),
        ));
    }
    let layout = NerveLayout::new(group, truncation);
    let mut names = vec![vec!["*".to_string()]];
    let mut faces = vec![Vec::new()];
    for n in 1..=truncation {
        names.push(layout.tuples[n].iter().map(|t| tuple_name(t)).collect());
        faces.push(
            layout.tuples[n]
                .iter()
                .map(|t| {
                    (0..=n)
                        .map(|i| layout.simplex(&layout.face_tuple(t, i)))
                        .collect()
                })
                .collect(),
        );
    }
    let set = TruncatedSimplicialSet::new(truncation, names, faces)?;
    Ok((set, layout))
}

pub fn nerve_of_group(group: &FiniteGroup, truncation: usize) -> Result<TruncatedSimplicialSet> {
    nerve_with_layout(group, truncation).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nerve_counts() {
        let x = nerve_of_group(&FiniteGroup::cyclic(2), 2).unwrap();
        assert_eq!(x.counts(), vec![1, 1, 1]);
        let x = nerve_of_group(&FiniteGroup::cyclic(3), 2).unwrap();
        assert_eq!(x.counts(), vec![1, 2, 4]);
        let x = nerve_of_group(&FiniteGroup::trivial(), 3).unwrap();
        assert_eq!(x.counts(), vec![1, 0, 0, 0]);
        assert!(x.is_reduced());
    }

    #[test]
    fn nerve_identities_hold() {
        for g in [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::symmetric3(),
        ] {
            let x = nerve_of_group(&g, 3).unwrap();
            assert!(x.identity_violations().is_empty());
        }
        assert!(wedge_of_circles(2, 3).identity_violations().is_empty());
        assert!(point(3).identity_violations().is_empty());
    }

    #[test]
    fn degenerate_tuples_round_trip() {
        let (x, layout) = nerve_with_layout(&FiniteGroup::cyclic(3), 3).unwrap();
        for n in 0..=3 {
            for s in x.simplices(n) {
                assert_eq!(&layout.simplex(&layout.tuple(s)), s);
            }
        }
        assert_eq!(x.simplices(3).len(), 27);
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let x = nerve_of_group(&FiniteGroup::cyclic(2), 3).unwrap();
        let a = SimplexRef::nondegenerate(CellId::new(1, 0));
        let w = SimplexRef::nondegenerate(CellId::new(2, 0));
        let s0a = a.degeneracy(0).unwrap();
        assert_eq!(x.face(&s0a, 1).unwrap(), a);
        let s0w = w.degeneracy(0).unwrap();
        let d1w = x.face(&w, 1).unwrap();
        assert_eq!(x.face(&s0w, 2).unwrap(), d1w.degeneracy(0).unwrap());
        assert_eq!(x.face(&w, 0).unwrap(), a);
    }
}
