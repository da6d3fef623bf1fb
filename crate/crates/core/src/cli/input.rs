use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactalg::{Ring, Scalar, SparseMatrix};
use crate::sset::{nerve_of_group, FiniteGroup, TruncatedSimplicialSet};
use crate::{Error, Result};

/// Fixtures compiled into the binary, looked up by file name.
pub const FIXTURES: &[(&str, &str)] = &[
    (
        "nerve_z2.json",
        include_str!("../../fixtures/nerve_z2.json"),
    ),
    ("circle.json", include_str!("../../fixtures/circle.json")),
    ("wedge2.json", include_str!("../../fixtures/wedge2.json")),
    (
        "bad_faces.json",
        include_str!("../../fixtures/bad_faces.json"),
    ),
    ("sign.json", include_str!("../../fixtures/sign.json")),
    ("trivial.json", include_str!("../../fixtures/trivial.json")),
    ("z2.json", include_str!("../../fixtures/z2.json")),
    ("z3.json", include_str!("../../fixtures/z3.json")),
    ("z4.json", include_str!("../../fixtures/z4.json")),
    ("s3.json", include_str!("../../fixtures/s3.json")),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Reads `path` from disk, falling back to a bundled fixture of that name.
pub fn read_document(path: &str) -> Result<String> {
    if Path::new(path).exists() {
        return std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")));
    }
    let name = Path::new(path)
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or(path);
    fixture(name)
        .map(str::to_string)
        .ok_or_else(|| Error::Input(format!("{path}: no such file or bundled fixture")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceRef {
    pub s: Vec<usize>,
    pub base: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDocument {
    pub truncation: usize,
    pub simplices: BTreeMap<String, Vec<String>>,
    pub faces: BTreeMap<String, Vec<FaceRef>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub rank: usize,
    pub action: BTreeMap<String, Vec<Vec<serde_json::Value>>>,
}

/// A parsed space: either given directly or as the nerve of a group.
#[derive(Clone, Debug)]
pub struct SpaceInput {
    pub set: TruncatedSimplicialSet,
    pub group: Option<FiniteGroup>,
}

fn schema_error(what: &str, e: serde_json::Error) -> Error {
    Error::Input(format!(
        "{what} does not match the schema at line {}, column {}: {e}",
        e.line(),
        e.column()
    ))
}

pub fn parse_set(doc: &str) -> Result<TruncatedSimplicialSet> {
    let d: SetDocument =
        serde_json::from_str(doc).map_err(|e| schema_error("simplicial set", e))?;
    set_from_document(&d)
}

pub fn set_from_document(d: &SetDocument) -> Result<TruncatedSimplicialSet> {
    let mut names = vec![Vec::new(); d.truncation + 1];
    for (key, ids) in &d.simplices {
        let n: usize = key.parse().map_err(|_| {
            Error::Input(format!("simplices.{key}: dimension keys must be integers"))
        })?;
        if n > d.truncation {
            return Err(Error::Input(format!(
                "simplices.{key}: dimension exceeds the truncation"
            )));
        }
        names[n] = ids.clone();
    }
    let faces = d
        .faces
        .iter()
        .map(|(id, refs)| {
            (
                id.clone(),
                refs.iter().map(|r| (r.s.clone(), r.base.clone())).collect(),
            )
        })
        .collect();
    let set = TruncatedSimplicialSet::from_named(d.truncation, names, &faces)?;
    if let Some(v) = set.identity_violations().first() {
        return Err(Error::Input(format!("simplicial identity fails: {v}")));
    }
    Ok(set)
}

pub fn document_from_set(x: &TruncatedSimplicialSet) -> SetDocument {
    let mut simplices = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for n in 0..=x.truncation() {
        simplices.insert(n.to_string(), x.names(n).to_vec());
        if n == 0 {
            continue;
        }
        for s in x.simplices(n).iter().filter(|s| !s.is_degenerate()) {
            let refs = (0..=n)
                .map(|i| {
                    let f = x.face(s, i).unwrap();
                    FaceRef {
                        s: f.word.clone(),
                        base: x.name(f.base).to_string(),
                    }
                })
                .collect();
            faces.insert(x.name(s.base).to_string(), refs);
        }
    }
    SetDocument {
        truncation: x.truncation(),
        simplices,
        faces,
    }
}

pub fn parse_group(doc: &str) -> Result<FiniteGroup> {
    let d: GroupDocument = serde_json::from_str(doc).map_err(|e| schema_error("group", e))?;
    if d.table.len() != d.order {
        return Err(Error::Input(format!(
            "table: {} rows for order {}",
            d.table.len(),
            d.order
        )));
    }
    FiniteGroup::from_table(d.table, d.identity)
}

/// A set document, or a group document turned into its nerve at `truncation`.
pub fn parse_space(doc: &str, truncation: usize) -> Result<SpaceInput> {
    let value: serde_json::Value =
        serde_json::from_str(doc).map_err(|e| schema_error("input", e))?;
    if value.get("order").is_some() {
        let group = parse_group(doc)?;
        let set = nerve_of_group(&group, truncation)?;
        Ok(SpaceInput {
            set,
            group: Some(group),
        })
    } else {
        Ok(SpaceInput {
            set: parse_set(doc)?,
            group: None,
        })
    }
}

fn parse_entry(v: &serde_json::Value, ring: Ring, at: &str) -> Result<Scalar> {
    let bad = || {
        Error::Input(format!(
            "{at}: entries must be integers or strings like \"-3/4\""
        ))
    };
    let q = match v {
        serde_json::Value::Number(n) => {
            BigRational::from_integer(BigInt::from(n.as_i64().ok_or_else(bad)?))
        }
        serde_json::Value::String(s) => s.trim().parse::<BigRational>().map_err(|_| bad())?,
        _ => return Err(bad()),
    };
    if q.is_integer() {
        return Ok(ring.from_bigint(q.numer()));
    }
    match ring {
        Ring::Integers => Err(Error::Ring(format!("{at}: fraction over Z"))),
        _ => {
            let n = ring.from_bigint(q.numer());
            let d = ring
                .from_bigint(q.denom())
                .inverse()
                .ok_or_else(|| Error::Ring(format!("{at}: denominator vanishes")))?;
            Ok(&n * &d)
        }
    }
}

/// Action matrices keyed by edge label, in the order of `edges`; edges not
/// mentioned act as the identity.
pub fn parse_module(doc: &str, edges: &[String], ring: Ring) -> Result<(usize, Vec<SparseMatrix>)> {
    let d: ModuleDocument = serde_json::from_str(doc).map_err(|e| schema_error("module", e))?;
    for key in d.action.keys() {
        if !edges.contains(key) {
            return Err(Error::Input(format!(
                "action.{key}: not a nondegenerate edge"
            )));
        }
    }
    let mut out = Vec::new();
    for e in edges {
        let Some(rows) = d.action.get(e) else {
            out.push(SparseMatrix::identity(d.rank, ring));
            continue;
        };
        if rows.len() != d.rank || rows.iter().any(|r| r.len() != d.rank) {
            return Err(Error::Input(format!(
                "action.{e}: expected a {0}x{0} matrix",
                d.rank
            )));
        }
        let mut triples = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                triples.push((
                    i,
                    j,
                    parse_entry(v, ring, &format!("action.{e}[{i}][{j}]"))?,
                ));
            }
        }
        out.push(SparseMatrix::from_triples(d.rank, d.rank, ring, triples)?);
    }
    Ok((d.rank, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{minimal_circle, wedge_of_circles};

    #[test]
    fn fixtures_round_trip() {
        assert_eq!(
            parse_set(fixture("nerve_z2.json").unwrap()).unwrap(),
            nerve_of_group(&FiniteGroup::cyclic(2), 3).unwrap()
        );
        assert_eq!(
            parse_set(fixture("circle.json").unwrap()).unwrap(),
            minimal_circle(3)
        );
        assert_eq!(
            parse_set(fixture("wedge2.json").unwrap()).unwrap(),
            wedge_of_circles(2, 3)
        );
        for (name, g) in [
            ("z2.json", FiniteGroup::cyclic(2)),
            ("s3.json", FiniteGroup::symmetric3()),
        ] {
            assert_eq!(parse_group(fixture(name).unwrap()).unwrap(), g);
        }
    }

    #[test]
    fn bad_faces_name_the_simplex() {
        let err = parse_set(fixture("bad_faces.json").unwrap())
            .unwrap_err()
            .to_string();
        assert!(err.contains("`t`"), "{err}");
    }

    #[test]
    fn module_entries() {
        let edges = vec!["(1)".to_string()];
        let (r, m) = parse_module(
            r#"{"rank": 1, "action": {"(1)": [["-1/2"]]}}"#,
            &edges,
            Ring::Rationals,
        )
        .unwrap();
        assert_eq!(r, 1);
        assert_eq!(
            m[0].get(0, 0),
            Ring::Rationals.from_i64(-1) * Ring::Rationals.from_i64(2).inverse().unwrap()
        );
        assert!(parse_module(
            r#"{"rank": 1, "action": {"(1)": [["1/2"]]}}"#,
            &edges,
            Ring::Integers
        )
        .is_err());
        assert!(parse_module(
            r#"{"rank": 1, "action": {"x": [[1]]}}"#,
            &edges,
            Ring::Integers
        )
        .is_err());
    }
}
