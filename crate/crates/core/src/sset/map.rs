use super::build::NerveLayout;
use super::group::FiniteGroup;
use super::set::TruncatedSimplicialSet;
use super::simplex::{CellId, SimplexRef};
use crate::{Error, Result};

/// A simplicial map given on nondegenerate simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    images: Vec<Vec<SimplexRef>>,
}

impl SimplicialMap {
    /// Validates that the images commute with all faces.
    pub fn new(
        source: &TruncatedSimplicialSet,
        target: &TruncatedSimplicialSet,
        images: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        if target.truncation() < source.truncation() || images.len() != source.truncation() + 1 {
            return Err(Error::Input(
                "simplicial map needs images through the source truncation".into(),
            ));
        }
        for (n, level) in images.iter().enumerate() {
            if level.len() != source.count(n) || level.iter().any(|y| y.dim() != n) {
                return Err(Error::Input(format!("images malformed in dimension {n}")));
            }
        }
        let map = SimplicialMap { images };
        for n in 1..=source.truncation() {
            for k in 0..source.count(n) {
                let x = SimplexRef::nondegenerate(CellId::new(n, k));
                for i in 0..=n {
                    let lhs = map.apply(&source.face(&x, i)?);
                    let rhs = target.face(&map.apply(&x), i)?;
                    if lhs != rhs {
                        return Err(Error::CheckFailed(format!(
                            "map does not commute with d{i} on `{}`",
                            source.name(x.base)
                        )));
                    }
                }
            }
        }
        Ok(map)
    }

    /// Map of nerves induced by a group homomorphism.
    pub fn of_nerves(
        source: (&TruncatedSimplicialSet, &NerveLayout),
        target: (&TruncatedSimplicialSet, &NerveLayout),
        hom: &[usize],
    ) -> Result<Self> {
        let (sg, tg): (&FiniteGroup, &FiniteGroup) = (source.1.group(), target.1.group());
        if !sg.is_homomorphism(tg, hom) {
            return Err(Error::Input("not a group homomorphism".into()));
        }
        let images = (0..=source.0.truncation())
            .map(|n| {
                (0..source.0.count(n))
                    .map(|k| {
                        let t = source
                            .1
                            .tuple(&SimplexRef::nondegenerate(CellId::new(n, k)));
                        let u: Vec<usize> = t.iter().map(|&g| hom[g]).collect();
                        target.1.simplex(&u)
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(source.0, target.0, images)
    }

    pub fn apply(&self, x: &SimplexRef) -> SimplexRef {
        let y = &self.images[x.base.dim][x.base.index];
        let mut word = x.word.clone();
        word.extend_from_slice(&y.word);
        SimplexRef::canonicalize(&word, y.base).expect("degeneracies stay in range")
    }
}
