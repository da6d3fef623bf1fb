use serde::Serialize;

use super::input::{fixture, parse_group, parse_set};
use crate::chains::{chains_of_twisted_product, normalized_chain_coalgebra};
use crate::cobar::{
    bar_basis, bar_boundary, cobar_boundary, cobar_words, twisted_complex,
    universal_twisting_cochain, NCPolynomial, WordModule,
};
use crate::exactalg::{HomologyGroup, Ring};
use crate::pi1::{
    complete_rewriting, enumerate_group_likes, fundamental_bialgebra, fundamental_presentation,
    monoid_oracle_compare, nabla0_violations, nabla1_chain_check, universal_cover, CobarContext,
};
use crate::scoalg::{compare_with_twisted_cartesian, free_coalgebra, linearize_twisting_morphism};
use crate::sset::{nerve_of_group, FiniteGroup, TruncatedSimplicialSet, TwistingMorphism};
use crate::Result;

pub const SUITES: &[&str] = &["sset", "scoalg", "chains", "cobar", "pi1"];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub subject: String,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

struct Subject {
    name: String,
    set: TruncatedSimplicialSet,
    group: Option<FiniteGroup>,
}

fn subjects() -> Result<Vec<Subject>> {
    let mut out = Vec::new();
    for name in ["z2.json", "z3.json", "z4.json", "s3.json"] {
        let g = parse_group(fixture(name).unwrap())?;
        out.push(Subject {
            name: format!("nerve({name})"),
            set: nerve_of_group(&g, 3)?,
            group: Some(g),
        });
    }
    for name in ["nerve_z2.json", "circle.json", "wedge2.json"] {
        out.push(Subject {
            name: name.into(),
            set: parse_set(fixture(name).unwrap())?,
            group: None,
        });
    }
    Ok(out)
}

const RINGS: [Ring; 3] = [Ring::Integers, Ring::PrimeField(2), Ring::PrimeField(3)];

struct Recorder<'a> {
    suite: &'a str,
    out: Vec<Check>,
}

impl Recorder<'_> {
    fn check(&mut self, subject: &str, name: &str, outcome: Result<Option<String>>) {
        let (passed, detail) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(d)) => (false, Some(d)),
            Err(e) => (false, Some(e.to_string())),
        };
        self.out.push(Check {
            suite: self.suite.to_string(),
            subject: subject.to_string(),
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn first<T: std::fmt::Debug>(v: Vec<T>) -> Option<String> {
    v.first().map(|x| format!("{x:?}"))
}

fn sset_suite(r: &mut Recorder, subjects: &[Subject]) {
    for s in subjects {
        r.check(
            &s.name,
            "simplicial identities",
            Ok(first(s.set.identity_violations())),
        );
    }
    let bad = parse_set(fixture("bad_faces.json").unwrap());
    r.check(
        "bad_faces.json",
        "rejected at load",
        Ok(bad.is_ok().then(|| "accepted".to_string())),
    );
}

fn scoalg_suite(r: &mut Recorder, subjects: &[Subject]) {
    for s in subjects {
        for ring in RINGS {
            let c = free_coalgebra(&s.set, ring);
            r.check(
                &format!("{} over {ring}", s.name),
                "coalgebra axioms",
                Ok(first(c.violations())),
            );
        }
        if let Some(g) = &s.group {
            let run = || -> Result<Option<String>> {
                let t = TwistingMorphism::nerve_fundamental(g, 3)?;
                let tau = linearize_twisting_morphism(&t, Ring::Integers)?;
                if let Some(v) = tau.violations().first() {
                    return Ok(Some(v.to_string()));
                }
                let cmp = compare_with_twisted_cartesian(&t, Ring::Integers)?;
                Ok(first(cmp.mismatches))
            };
            r.check(&s.name, "twisted Cartesian product", run());
        }
    }
}

fn chains_suite(r: &mut Recorder, subjects: &[Subject]) {
    for s in subjects {
        for ring in RINGS {
            let res = normalized_chain_coalgebra(&free_coalgebra(&s.set, ring))
                .map(|n| first(n.dg.violations()));
            r.check(
                &format!("{} over {ring}", s.name),
                "boundary and Alexander-Whitney",
                res,
            );
        }
        if let Some(g) = s.group.as_ref().filter(|g| g.order() <= 3) {
            let run = || -> Result<Option<String>> {
                let t = TwistingMorphism::nerve_fundamental(g, 3)?;
                let (_, cert) =
                    chains_of_twisted_product(&linearize_twisting_morphism(&t, Ring::Integers)?)?;
                Ok((!cert.agrees()).then(|| format!("{cert:?}")))
            };
            r.check(&s.name, "Brown boundary", run());
        }
    }
}

fn cobar_suite(r: &mut Recorder, subjects: &[Subject]) {
    for s in subjects {
        for ring in RINGS {
            let run = || -> Result<Option<String>> {
                let dg = normalized_chain_coalgebra(&free_coalgebra(&s.set, ring))?.dg;
                let max_len = if dg.rank(1) > 3 { 2 } else { 3 };
                for w in cobar_words(&dg, 2, max_len) {
                    let p = NCPolynomial::monomial(ring, w, ring.one());
                    if !cobar_boundary(&dg, &cobar_boundary(&dg, &p)?)?.is_zero() {
                        return Ok(Some(format!("D^2 {p} != 0")));
                    }
                }
                if let Some(v) = universal_twisting_cochain(&dg)?.violations()?.first() {
                    return Ok(Some(format!("{v:?}")));
                }
                let module = WordModule::trivial(&dg);
                for e in bar_basis(&dg, 3, 1, 1) {
                    if !bar_boundary(&dg, &module, &bar_boundary(&dg, &module, &e)?)?.is_zero() {
                        return Ok(Some(format!("bar boundary squared on {e:?}")));
                    }
                }
                twisted_complex(&dg, &module)?;
                Ok(None)
            };
            r.check(
                &format!("{} over {ring}", s.name),
                "differentials square to zero",
                run(),
            );
        }
    }
}

fn pi1_suite(r: &mut Recorder, subjects: &[Subject], steps: usize) {
    for s in subjects {
        let ctx = CobarContext::new(&free_coalgebra(&s.set, Ring::Integers));
        let run = || -> Result<Option<String>> {
            let ctx = ctx
                .as_ref()
                .map_err(|e| crate::Error::Input(e.to_string()))?;
            if let Some(v) = nabla1_chain_check(ctx)?.first() {
                return Ok(Some(format!("residual on {}", v.generator)));
            }
            Ok(first(nabla0_violations(ctx, 3)?))
        };
        r.check(&s.name, "coproduct on H0", run());
        r.check(
            &s.name,
            "edge-path monoid",
            monoid_oracle_compare(&s.set, Ring::Integers, steps, 4)
                .map(|m| (!m.agrees()).then(|| format!("{m:?}"))),
        );
        match &s.group {
            Some(g) => {
                let run = || -> Result<Option<String>> {
                    let fb = fundamental_bialgebra(&free_coalgebra(&s.set, Ring::Integers), steps)?;
                    if fb.rank() != g.order() {
                        return Ok(Some(format!(
                            "rank {} for a group of order {}",
                            fb.rank(),
                            g.order()
                        )));
                    }
                    let iso = fb.group_likes.group().and_then(|h| h.find_isomorphism(g));
                    if iso.is_none() {
                        return Ok(Some("group-like elements do not recover the group".into()));
                    }
                    if g.order() <= 3 {
                        let cover = universal_cover(&fb)?;
                        if !cover.certificate.agrees() {
                            return Ok(Some("Brown certificate disagrees".into()));
                        }
                        let h = cover.homology()?;
                        let mut want = vec![HomologyGroup::free(0); h.len()];
                        want[0] = HomologyGroup::free(1);
                        if h != want {
                            return Ok(Some(format!("universal cover homology {h:?}")));
                        }
                    }
                    Ok(None)
                };
                r.check(&s.name, "fundamental bialgebra", run());
            }
            None if s.set.count(1) == 1 && s.set.count(2) == 0 => {
                let run = || -> Result<Option<String>> {
                    let ctx = CobarContext::new(&free_coalgebra(&s.set, Ring::Integers))?;
                    let rw = complete_rewriting(&fundamental_presentation(&ctx)?, steps)?;
                    let gl = enumerate_group_likes(&ctx, &rw, 3)?;
                    Ok((gl.elements.len() != 4 || gl.complete)
                        .then(|| "expected the monoid {(1+a)^k}".into()))
                };
                r.check(&s.name, "group-like monoid", run());
            }
            None => {}
        }
    }
}

/// Runs the named suite (`all` for every suite) on the bundled fixtures.
pub fn run_suite(name: &str, steps: usize) -> Result<Vec<Check>> {
    let subjects = subjects()?;
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else {
        vec![name]
    };
    let mut out = Vec::new();
    for suite in names {
        let mut r = Recorder {
            suite,
            out: Vec::new(),
        };
        match suite {
            "sset" => sset_suite(&mut r, &subjects),
            "scoalg" => scoalg_suite(&mut r, &subjects),
            "chains" => chains_suite(&mut r, &subjects),
            "cobar" => cobar_suite(&mut r, &subjects),
            "pi1" => pi1_suite(&mut r, &subjects, steps),
            other => return Err(crate::Error::Input(format!("unknown suite `{other}`"))),
        }
        out.extend(r.out);
    }
    Ok(out)
}
