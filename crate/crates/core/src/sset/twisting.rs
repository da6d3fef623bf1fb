use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::build::nerve_with_layout;
use super::group::FiniteGroup;
use super::set::TruncatedSimplicialSet;
use super::simplex::{CellId, SimplexRef};
use crate::{Error, Result};

/// A degree -1 map from a simplicial set to a discrete group, stored on
/// nondegenerate simplices and extended to degenerate ones by
/// `t(s_0 x) = e` and `t(s_{i+1} x) = t(x)`.
#[derive(Clone, Debug)]
pub struct TwistingMorphism {
    space: TruncatedSimplicialSet,
    group: FiniteGroup,
    values: Vec<Vec<usize>>,
    overrides: BTreeMap<SimplexRef, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistingViolation {
    pub equation: u8,
    pub simplex: String,
    pub detail: String,
}

impl fmt::Display for TwistingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "equation {} fails at {}: {}",
            self.equation, self.simplex, self.detail
        )
    }
}

impl TwistingMorphism {
    /// `values[n][k]` is the group element assigned to the `k`-th
    /// nondegenerate `n`-simplex; `values[0]` must be empty.
    pub fn new(
        space: &TruncatedSimplicialSet,
        group: &FiniteGroup,
        values: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if values.len() != space.truncation() + 1 || !values[0].is_empty() {
            return Err(Error::Input(
                "twisting values must cover dimensions 1..=truncation".into(),
            ));
        }
        for (n, level) in values.iter().enumerate().skip(1) {
            if level.len() != space.count(n) || level.iter().any(|&g| g >= group.order()) {
                return Err(Error::Input(format!(
                    "twisting values malformed in dimension {n}"
                )));
            }
        }
        Ok(TwistingMorphism {
            space: space.clone(),
            group: group.clone(),
            values,
            overrides: BTreeMap::new(),
        })
    }

    /// `t(x) = [d_2 ... d_n x]` where the class of a nondegenerate edge is
    /// given by `edges` and degenerate edges go to the identity.
    pub fn from_edge_map(
        space: &TruncatedSimplicialSet,
        group: &FiniteGroup,
        edges: &[usize],
    ) -> Result<Self> {
        if edges.len() != space.count(1) {
            return Err(Error::Input(
                "edge map must cover every nondegenerate edge".into(),
            ));
        }
        let mut values = vec![Vec::new()];
        for n in 1..=space.truncation() {
            let mut level = Vec::new();
            for k in 0..space.count(n) {
                let e = front_edge(space, &SimplexRef::nondegenerate(CellId::new(n, k)))?;
                level.push(if e.is_degenerate() {
                    group.identity()
                } else {
                    edges[e.base.index]
                });
            }
            values.push(level);
        }
        TwistingMorphism::new(space, group, values)
    }

    /// The fundamental twisting morphism of the nerve of `group`.
    pub fn nerve_fundamental(group: &FiniteGroup, truncation: usize) -> Result<Self> {
        let (x, _) = nerve_with_layout(group, truncation)?;
        TwistingMorphism::from_edge_map(&x, group, &group.nonidentity())
    }

    /// Replaces the value on one simplex, degenerate or not.
    pub fn with_override(mut self, x: SimplexRef, g: usize) -> Self {
        if x.is_degenerate() {
            self.overrides.insert(x, g);
        } else {
            self.values[x.base.dim][x.base.index] = g;
        }
        self
    }

    pub fn space(&self) -> &TruncatedSimplicialSet {
        &self.space
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn value(&self, x: &SimplexRef) -> usize {
        if let Some(&g) = self.overrides.get(x) {
            return g;
        }
        match x.word.last() {
            None => self.values[x.base.dim][x.base.index],
            Some(0) => self.group.identity(),
            Some(_) => self.values[x.base.dim][x.base.index],
        }
    }

    /// Evaluates the four defining equations on every simplex within the
    /// truncation.
    pub fn violations(&self) -> Vec<TwistingViolation> {
        let x = &self.space;
        let g = &self.group;
        let d = x.truncation();
        let mut out = Vec::new();
        let mut report = |equation: u8, s: &SimplexRef, detail: String| {
            out.push(TwistingViolation {
                equation,
                simplex: x.label(s),
                detail,
            });
        };
        for n in 0..=d {
            for s in x.simplices(n) {
                if n >= 2 {
                    let t = self.value(s);
                    for i in 1..n {
                        let r = self.value(&x.face(s, i + 1).unwrap());
                        if t != r {
                            report(1, s, format!("d{i} t(x) = {t} but t(d{} x) = {r}", i + 1));
                        }
                    }
                    let r = g.mul(
                        self.value(&x.face(s, 1).unwrap()),
                        g.inv(self.value(&x.face(s, 0).unwrap())),
                    );
                    if t != r {
                        report(2, s, format!("d0 t(x) = {t} but t(d1 x) t(d0 x)^-1 = {r}"));
                    }
                }
                if n + 1 <= d {
                    if n >= 1 {
                        let t = self.value(s);
                        for i in 1..n {
                            let r = self.value(&s.degeneracy(i + 1).unwrap());
                            if t != r {
                                report(3, s, format!("s{i} t(x) = {t} but t(s{} x) = {r}", i + 1));
                            }
                        }
                    }
                    let r = self.value(&s.degeneracy(0).unwrap());
                    if r != g.identity() {
                        report(4, s, format!("t(s0 x) = {r} is not the identity"));
                    }
                }
            }
        }
        out
    }
}

/// `d_2 ... d_n x`, the edge spanned by the first two vertices.
pub fn front_edge(space: &TruncatedSimplicialSet, x: &SimplexRef) -> Result<SimplexRef> {
    let mut e = x.clone();
    while e.dim() > 1 {
        e = space.face(&e, e.dim())?;
    }
    Ok(e)
}

/// `X x_t G` together with the correspondence between its simplices and
/// pairs `(x, g)`.
#[derive(Clone, Debug)]
pub struct TwistedCartesianProduct {
    pub set: TruncatedSimplicialSet,
    order: usize,
}

impl TwistedCartesianProduct {
    /// The simplex `(x, g)`.
    pub fn simplex(&self, x: &SimplexRef, g: usize) -> SimplexRef {
        SimplexRef {
            word: x.word.clone(),
            base: CellId::new(x.base.dim, x.base.index * self.order + g),
        }
    }

    pub fn pair(&self, s: &SimplexRef) -> (SimplexRef, usize) {
        let base = CellId::new(s.base.dim, s.base.index / self.order);
        (
            SimplexRef {
                word: s.word.clone(),
                base,
            },
            s.base.index % self.order,
        )
    }
}

/// The twisted Cartesian product with `d_0(x, g) = (d_0 x, g t(x))`.
pub fn twisted_cartesian_product(t: &TwistingMorphism) -> Result<TwistedCartesianProduct> {
    let bad = t.violations();
    if let Some(v) = bad.first() {
        return Err(Error::InvalidTwisting(v.to_string()));
    }
    let x = &t.space;
    let g = &t.group;
    let order = g.order();
    let lift = |s: &SimplexRef, h: usize| SimplexRef {
        word: s.word.clone(),
        base: CellId::new(s.base.dim, s.base.index * order + h),
    };
    let mut names = Vec::new();
    let mut faces = Vec::new();
    for n in 0..=x.truncation() {
        let mut level_names = Vec::new();
        let mut level_faces = Vec::new();
        for k in 0..x.count(n) {
            let s = SimplexRef::nondegenerate(CellId::new(n, k));
            for h in 0..order {
                level_names.push(format!("{}|{}", x.name(s.base), h));
                if n > 0 {
                    let mut fs = vec![lift(&x.face(&s, 0)?, g.mul(h, t.value(&s)))];
                    for i in 1..=n {
                        fs.push(lift(&x.face(&s, i)?, h));
                    }
                    level_faces.push(fs);
                }
            }
        }
        names.push(level_names);
        faces.push(level_faces);
    }
    let set = TruncatedSimplicialSet::new(x.truncation(), names, faces)?;
    Ok(TwistedCartesianProduct { set, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::nerve_of_group;

    #[test]
    fn fundamental_morphisms_are_valid() {
        for g in [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::symmetric3(),
        ] {
            let t = TwistingMorphism::nerve_fundamental(&g, 3).unwrap();
            assert!(t.violations().is_empty());
        }
    }

    #[test]
    fn nonidentity_on_degenerate_edge_breaks_equation_four() {
        let g = FiniteGroup::cyclic(2);
        let t = TwistingMorphism::nerve_fundamental(&g, 2).unwrap();
        let s0 = SimplexRef::nondegenerate(CellId::new(0, 0))
            .degeneracy(0)
            .unwrap();
        let bad = t.with_override(s0, 1).violations();
        assert!(bad.iter().any(|v| v.equation == 4));
    }

    #[test]
    fn constant_identity_on_nerve() {
        let g = FiniteGroup::cyclic(2);
        let x = nerve_of_group(&g, 2).unwrap();
        let t = TwistingMorphism::new(&x, &g, vec![vec![], vec![0], vec![0]]).unwrap();
        assert!(t.violations().is_empty());
    }

    #[test]
    fn product_with_nerve() {
        let g = FiniteGroup::cyclic(2);
        let t = TwistingMorphism::nerve_fundamental(&g, 3).unwrap();
        let p = twisted_cartesian_product(&t).unwrap();
        assert_eq!(p.set.count(0), 2);
        assert!(p.set.identity_violations().is_empty());
    }
}
