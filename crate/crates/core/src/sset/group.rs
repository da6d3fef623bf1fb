use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Input("group table is empty".into()));
        }
        if identity >= n {
            return Err(Error::Input(format!("identity {identity} out of range")));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Input(format!("table row {a} is malformed")));
            }
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::Input(format!(
                    "{identity} is not a two-sided identity for {a}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Input(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::Input(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(table, 0).expect("cyclic group")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// The symmetric group on three letters, elements ordered
    /// lexicographically as permutations of (0,1,2).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    // (a*b)(i) = a(b(i))
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table, 0).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Non-identity elements in index order.
    pub fn nonidentity(&self) -> Vec<usize> {
        (0..self.order()).filter(|&g| g != self.identity).collect()
    }

    /// Whether `f` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order()
            && (0..self.order())
                .all(|a| (0..self.order()).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }

    /// Searches for an isomorphism `self -> other` by backtracking.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        let n = self.order();
        if n != other.order() {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.identity] = other.identity;
        used[other.identity] = true;
        fn go(
            a: &FiniteGroup,
            b: &FiniteGroup,
            k: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == a.order() {
                return a.is_homomorphism(b, map);
            }
            if map[k] != usize::MAX {
                return go(a, b, k + 1, map, used);
            }
            for t in 0..b.order() {
                if used[t] {
                    continue;
                }
                map[k] = t;
                used[t] = true;
                let consistent = (0..k + 1).all(|x| {
                    (0..k + 1).all(|y| {
                        let xy = a.mul(x, y);
                        map[x] == usize::MAX
                            || map[y] == usize::MAX
                            || map[xy] == usize::MAX
                            || map[xy] == b.mul(map[x], map[y])
                    })
                });
                if consistent && go(a, b, k + 1, map, used) {
                    return true;
                }
                map[k] = usize::MAX;
                used[t] = false;
            }
            false
        }
        go(self, other, 0, &mut map, &mut used).then_some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_validate() {
        assert_eq!(FiniteGroup::cyclic(4).order(), 4);
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], 0).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let z4 = FiniteGroup::cyclic(4);
        let klein = FiniteGroup::from_table(
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0],
            ],
            0,
        )
        .unwrap();
        assert!(z4.find_isomorphism(&klein).is_none());
        let shifted = FiniteGroup::from_table(
            (0..4)
                .map(|a| (0..4).map(|b| (a + b + 1) % 4).collect())
                .collect(),
            3,
        )
        .unwrap();
        assert!(z4.find_isomorphism(&shifted).is_some());
        assert!(FiniteGroup::symmetric3()
            .find_isomorphism(&FiniteGroup::cyclic(6))
            .is_none());
    }
}
