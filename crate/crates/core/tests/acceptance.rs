use std::process::ExitCode;
use std::time::Instant;

use simplicial_cobar::chains::{
    alternating_faces, chains_of_twisted_product, normalized_chain_coalgebra, DgCoalgebra,
};
use simplicial_cobar::cobar::{
    bar_basis, bar_boundary, brown_boundary, cobar_boundary, cobar_words, nilpotency_witness, phi,
    rho_tensor, twisted_complex, NCPolynomial, TwistedElement, WordModule,
};
use simplicial_cobar::exactalg::{homology_at, HomologyGroup, Ring, SparseMatrix};
use simplicial_cobar::pi1::{
    complete_rewriting, enumerate_group_likes, fundamental_bialgebra, fundamental_presentation,
    fundamental_twisting_cochain, induced_map, local_homology, monoid_oracle_compare,
    nabla0_violations, nabla1_chain_check, universal_cover, CobarContext, FundamentalBialgebra,
    LocalSystem, DEFAULT_REWRITE_STEPS,
};
use simplicial_cobar::scoalg::{
    compare_with_twisted_cartesian, free_coalgebra, linearize_twisting_morphism,
    simplicial_twisted_tensor,
};
use simplicial_cobar::sset::{
    minimal_circle, nerve_of_group, nerve_with_layout, twisted_cartesian_product, wedge_of_circles,
    FiniteGroup, SimplicialMap, TruncatedSimplicialSet, TwistingMorphism,
};

type Outcome = Result<String, String>;

const Z: Ring = Ring::Integers;
const RINGS: [Ring; 3] = [Ring::Integers, Ring::PrimeField(2), Ring::PrimeField(3)];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z/2", FiniteGroup::cyclic(2)),
        ("Z/3", FiniteGroup::cyclic(3)),
        ("Z/4", FiniteGroup::cyclic(4)),
        ("S3", FiniteGroup::symmetric3()),
    ]
}

fn spaces() -> Vec<(String, TruncatedSimplicialSet)> {
    let mut out: Vec<_> = groups()
        .into_iter()
        .map(|(n, g)| (format!("B{n}"), nerve_of_group(&g, 3).unwrap()))
        .collect();
    out.push(("S^1".into(), minimal_circle(3)));
    out.push(("S^1 v S^1".into(), wedge_of_circles(2, 3)));
    out
}

fn dg_of(x: &TruncatedSimplicialSet, ring: Ring) -> DgCoalgebra {
    normalized_chain_coalgebra(&free_coalgebra(x, ring))
        .unwrap()
        .dg
}

fn fb_of(g: &FiniteGroup, d: usize) -> Result<FundamentalBialgebra, String> {
    fundamental_bialgebra(
        &free_coalgebra(&nerve_of_group(g, d).map_err(e)?, Z),
        DEFAULT_REWRITE_STEPS,
    )
    .map_err(e)
}

fn acyclic(len: usize) -> Vec<HomologyGroup> {
    let mut v = vec![HomologyGroup::free(0); len];
    v[0] = HomologyGroup::free(1);
    v
}

fn squares_vanish() -> Outcome {
    let mut checked = 0usize;
    for (name, x) in spaces() {
        for ring in RINGS {
            let dg = dg_of(&x, ring);
            let at = format!("{name} over {ring}");
            for n in 2..=dg.top() {
                let dd = dg
                    .complex
                    .boundary(n - 1)
                    .mul(dg.complex.boundary(n))
                    .map_err(e)?;
                ensure(dd.nnz() == 0, || {
                    format!("{at}: boundary squared in degree {n}")
                })?;
            }
            let max_len = if dg.rank(1) > 3 { 2 } else { 3 };
            for deg in 1..=3 {
                for w in cobar_words(&dg, deg, max_len) {
                    let p = NCPolynomial::monomial(ring, w, ring.one());
                    let dd =
                        cobar_boundary(&dg, &cobar_boundary(&dg, &p).map_err(e)?).map_err(e)?;
                    ensure(dd.is_zero(), || format!("{at}: D^2 {p} != 0"))?;
                    checked += 1;
                }
            }
            let mut modules = vec![WordModule::trivial(&dg)];
            if let Ok(fb) = fundamental_bialgebra(&free_coalgebra(&x, ring), DEFAULT_REWRITE_STEPS)
            {
                modules.push(LocalSystem::regular(&fb).word_module().map_err(e)?);
            }
            for m in &modules {
                for b in bar_basis(&dg, 3, 1, m.rank()) {
                    let dd =
                        bar_boundary(&dg, m, &bar_boundary(&dg, m, &b).map_err(e)?).map_err(e)?;
                    ensure(dd.is_zero(), || {
                        format!("{at}: bar boundary squared on {b:?}")
                    })?;
                    checked += 1;
                }
                let k = twisted_complex(&dg, m).map_err(e)?;
                for n in 2..=k.top() {
                    let dd = k.boundary(n - 1).mul(k.boundary(n)).map_err(e)?;
                    ensure(dd.nnz() == 0, || {
                        format!("{at}: twisted boundary squared in degree {n}")
                    })?;
                }
            }
        }
    }
    Ok(format!("{checked} cobar and bar basis elements"))
}

fn fundamental_twisting() -> Outcome {
    for (name, g) in &groups()[..2] {
        let fb = fb_of(g, 3)?;
        let tau = fundamental_twisting_cochain(&fb).map_err(e)?;
        ensure(tau.violations().is_empty(), || {
            format!("{name}: {:?}", tau.violations())
        })?;
        ensure(tau.coalgebra_violations().is_empty(), || {
            format!("{name}: {:?}", tau.coalgebra_violations())
        })?;
        let t = simplicial_twisted_tensor(&tau).map_err(e)?;
        let v = t.coalgebra.violations();
        ensure(v.is_empty(), || format!("{name}: {v:?}"))?;
    }
    Ok("B(Z/2), B(Z/3) at D=3".into())
}

fn group_rings() -> Outcome {
    for (name, g) in groups() {
        let fb = fb_of(&g, 3)?;
        ensure(fb.rank() == g.order(), || {
            format!("{name}: rank {}", fb.rank())
        })?;
        ensure(fb.group_likes.elements.len() == g.order(), || {
            format!("{name}: group-likes")
        })?;
        let h = fb
            .group_likes
            .group()
            .ok_or(format!("{name}: group-likes do not form a group"))?;
        ensure(h.find_isomorphism(&g).is_some(), || {
            format!("{name}: not isomorphic")
        })?;
    }
    Ok("Z/2, Z/3, Z/4, S3".into())
}

fn circle_monoid() -> Outcome {
    let ctx = CobarContext::new(&free_coalgebra(&minimal_circle(3), Z)).map_err(e)?;
    let p = fundamental_presentation(&ctx).map_err(e)?;
    ensure(p.generators.len() == 1, || {
        format!("generators {:?}", p.generators)
    })?;
    ensure(p.relations.iter().all(|r| r.is_zero()), || {
        "unexpected relations".into()
    })?;
    let rw = complete_rewriting(&p, DEFAULT_REWRITE_STEPS).map_err(e)?;
    let gl = enumerate_group_likes(&ctx, &rw, 3).map_err(e)?;
    ensure(!gl.complete, || "search claims completeness".into())?;
    let a = NCPolynomial::one(Z).add(&NCPolynomial::generator(
        Z,
        simplicial_cobar::cobar::Gen::new(1, 0),
    ));
    let mut power = NCPolynomial::one(Z);
    let mut want = Vec::new();
    for _ in 0..=3 {
        want.push(power.clone());
        power = power.mul(&a);
    }
    ensure(gl.elements.len() == want.len(), || {
        format!("{} group-likes", gl.elements.len())
    })?;
    for w in &want {
        ensure(gl.elements.contains(&rw.reduce(w)), || {
            format!("missing {w}")
        })?;
    }
    for x in &gl.elements {
        ensure(
            !rw.reduce(&a.mul(x)).sub(&NCPolynomial::one(Z)).is_zero(),
            || format!("{x} inverts 1+a"),
        )?;
    }
    Ok("(1+a)^k for k <= 3, no inverses".into())
}

fn monoid_oracle() -> Outcome {
    let mut subjects: Vec<(String, TruncatedSimplicialSet)> = groups()
        .into_iter()
        .map(|(n, g)| (format!("B{n}"), nerve_of_group(&g, 3).unwrap()))
        .collect();
    subjects.push(("S^1 v S^1".into(), wedge_of_circles(2, 3)));
    for (name, x) in subjects {
        let m = monoid_oracle_compare(&x, Z, DEFAULT_REWRITE_STEPS, 4).map_err(e)?;
        ensure(m.agrees(), || format!("{name}: {m:?}"))?;
    }
    Ok("4 nerves and the wedge".into())
}

fn cartesian() -> Outcome {
    for (name, g) in &groups()[..2] {
        let t = TwistingMorphism::nerve_fundamental(g, 3).map_err(e)?;
        let c = compare_with_twisted_cartesian(&t, Z).map_err(e)?;
        ensure(c.agrees(), || format!("{name}: {:?}", c.mismatches))?;
    }
    Ok("B(Z/2), B(Z/3)".into())
}

fn brown() -> Outcome {
    let mut degrees = 0;
    for (name, g) in &groups()[..2] {
        let fb = fb_of(g, 3)?;
        let (_, cert) =
            chains_of_twisted_product(&fundamental_twisting_cochain(&fb).map_err(e)?).map_err(e)?;
        ensure(cert.agrees(), || format!("{name}: {cert:?}"))?;
        let t = TwistingMorphism::nerve_fundamental(g, 3).map_err(e)?;
        let (_, cert) = chains_of_twisted_product(&linearize_twisting_morphism(&t, Z).map_err(e)?)
            .map_err(e)?;
        ensure(cert.agrees(), || format!("{name} (set-level): {cert:?}"))?;
        degrees += cert.degrees_checked;
    }
    Ok(format!("{degrees} degrees"))
}

fn covers() -> Outcome {
    for (name, g, d) in [
        ("Z/2", FiniteGroup::cyclic(2), 3),
        ("Z/3", FiniteGroup::cyclic(3), 3),
        ("Z/2", FiniteGroup::cyclic(2), 4),
    ] {
        let h = universal_cover(&fb_of(&g, d)?)
            .map_err(e)?
            .homology()
            .map_err(e)?;
        ensure(h == acyclic(d), || format!("{name} at D={d}: {h:?}"))?;
        let t = TwistingMorphism::nerve_fundamental(&g, d).map_err(e)?;
        let set = twisted_cartesian_product(&t).map_err(e)?.set;
        let oracle = dg_of(&set, Z).complex.all_homology(Z).map_err(e)?;
        ensure(oracle[..d] == h[..], || {
            format!("{name} at D={d}: set-level {oracle:?}")
        })?;
    }
    Ok("Z/2 (D=3,4), Z/3 (D=3)".into())
}

fn one_by_one(v: i64) -> SparseMatrix {
    SparseMatrix::from_dense(Z, &[vec![v]])
}

fn periodic_oracle(t: i64, top: usize) -> Result<Vec<HomologyGroup>, String> {
    let d = |n: usize| -> SparseMatrix {
        match n {
            0 => SparseMatrix::from_triples(0, 1, Z, Vec::new()).unwrap(),
            n if n % 2 == 1 => one_by_one(t - 1),
            _ => one_by_one(1 + t),
        }
    };
    (0..=top)
        .map(|n| homology_at(&d(n + 1), &d(n), Z).map_err(e))
        .collect()
}

fn sign_system() -> Outcome {
    let fb = fb_of(&FiniteGroup::cyclic(2), 3)?;
    let labels = fb.context.generator_labels().to_vec();
    for (t, name) in [(-1, "sign"), (1, "trivial")] {
        let m = LocalSystem {
            ring: Z,
            labels: labels.clone(),
            actions: vec![one_by_one(t)],
        };
        let h = local_homology(&fb.context, &m, &[0, 1, 2]).map_err(e)?;
        let want = periodic_oracle(t, 2)?;
        ensure(h == want, || format!("{name}: {h:?} vs {want:?}"))?;
    }
    let want = vec![
        HomologyGroup::with_torsion(0, &[2]),
        HomologyGroup::free(0),
        HomologyGroup::with_torsion(0, &[2]),
    ];
    ensure(periodic_oracle(-1, 2)? == want, || {
        "periodic resolution".into()
    })?;
    Ok("H = (Z/2, 0, Z/2)".into())
}

fn bar_comparison() -> Outcome {
    let d = 3;
    let fb = fb_of(&FiniteGroup::cyclic(3), d)?;
    let dg = fb.context.dg().clone();
    let module = LocalSystem::regular(&fb).word_module().map_err(e)?;
    let ring = dg.ring();
    let basis = bar_basis(&dg, d, 2, module.rank());
    for b in &basis {
        let db = bar_boundary(&dg, &module, b).map_err(e)?;
        ensure(
            phi(&module, &db) == brown_boundary(&dg, module.actions(), &phi(&module, b)),
            || format!("phi on {b:?}"),
        )?;
    }
    for n in 0..=d {
        for x in 0..dg.rank(n) {
            for m in 0..module.rank() {
                let mut t = TwistedElement::new();
                t.insert((n, x, m), ring.one());
                let r = rho_tensor(&dg, &t);
                ensure(phi(&module, &r) == t, || {
                    format!("phi rho on {:?}", (n, x, m))
                })?;
                let lhs = bar_boundary(&dg, &module, &r).map_err(e)?;
                let rhs = rho_tensor(&dg, &brown_boundary(&dg, module.actions(), &t));
                ensure(lhs == rhs, || format!("rho on {:?}", (n, x, m)))?;
            }
        }
    }
    let mut worst = 0;
    let mut samples = 0;
    for b in &basis {
        let k = b.sub(&rho_tensor(&dg, &phi(&module, b)));
        if k.is_zero() {
            continue;
        }
        let w = nilpotency_witness(&dg, &module, &k, d + 1)
            .map_err(e)?
            .ok_or(format!("not nilpotent on {b:?}"))?;
        worst = worst.max(w);
        samples += 1;
    }
    Ok(format!(
        "{} basis elements, {samples} kernel samples, nilpotent by power {worst}",
        basis.len()
    ))
}

fn nabla_checks() -> Outcome {
    let mut n = 0;
    for (name, x) in spaces() {
        for ring in RINGS {
            let ctx = CobarContext::new(&free_coalgebra(&x, ring)).map_err(e)?;
            let r = nabla1_chain_check(&ctx).map_err(e)?;
            ensure(r.is_empty(), || {
                format!("{name} over {ring}: residual on {}", r[0].generator)
            })?;
            let v = nabla0_violations(&ctx, 3).map_err(e)?;
            ensure(v.is_empty(), || format!("{name} over {ring}: {v:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} coalgebras"))
}

fn quotient_map() -> Outcome {
    let (g4, g2) = (FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
    let (x4, l4) = nerve_with_layout(&g4, 3).map_err(e)?;
    let (x2, l2) = nerve_with_layout(&g2, 3).map_err(e)?;
    let f = SimplicialMap::of_nerves((&x4, &l4), (&x2, &l2), &[0, 1, 0, 1]).map_err(e)?;
    let fm = simplicial_cobar::scoalg::induced_map(&f, &x4, &x2, Z);
    let b4 = fundamental_bialgebra(&free_coalgebra(&x4, Z), DEFAULT_REWRITE_STEPS).map_err(e)?;
    let b2 = fundamental_bialgebra(&free_coalgebra(&x2, Z), DEFAULT_REWRITE_STEPS).map_err(e)?;
    let m = induced_map(&b4, &b2, &fm).map_err(e)?;
    let (u4, u2) = (
        universal_cover(&b4).map_err(e)?,
        universal_cover(&b2).map_err(e)?,
    );
    let v = m.violations(&u4, &u2);
    ensure(v.is_empty(), || format!("{v:?}"))?;
    let hom = m.group_likes.clone().ok_or("group-likes not preserved")?;
    let (s, t) = (
        b4.group_likes.group().unwrap(),
        b2.group_likes.group().unwrap(),
    );
    ensure(s.is_homomorphism(&t, &hom), || "not a homomorphism".into())?;
    ensure((0..t.order()).all(|k| hom.contains(&k)), || {
        "not surjective".into()
    })?;
    ensure(
        hom.iter().filter(|&&k| k == t.identity()).count() == 2,
        || "kernel size".into(),
    )?;
    for n in 1..=3 {
        let l = alternating_faces(&u2.tensor.coalgebra, n)
            .mul(&m.cover[n])
            .map_err(e)?;
        let r = m.cover[n - 1]
            .mul(&alternating_faces(&u4.tensor.coalgebra, n))
            .map_err(e)?;
        ensure(l == r, || {
            format!("cover map is not a chain map in degree {n}")
        })?;
    }
    Ok("Z[Z/4] -> Z[Z/2], kernel of order 2".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("differentials square to zero", squares_vanish),
        ("fundamental twisting cochain", fundamental_twisting),
        ("pi of nerves is the group ring", group_rings),
        ("circle gives the monoid of (1+a)^k", circle_monoid),
        ("edge-path monoid oracle", monoid_oracle),
        ("twisted Cartesian product comparison", cartesian),
        ("Brown boundary certificate", brown),
        ("universal cover is acyclic", covers),
        ("sign local system", sign_system),
        ("bar comparison and contracting homotopy", bar_comparison),
        ("coproduct on H0", nabla_checks),
        ("induced map of a quotient", quotient_map),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let secs = start.elapsed().as_secs_f64();
        if i == 0 && secs > 60.0 {
            out = Err(format!("took {secs:.1}s"));
        }
        match out {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
