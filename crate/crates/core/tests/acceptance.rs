//! Acceptance suite. Each criterion runs against an independent oracle and
//! prints one PASS/FAIL line; the test fails if any criterion fails.
//!
//! Run with `cargo test -p ualg --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use ualg::gen::{
    random_algebra, random_congruence, random_env, random_hom, random_idempotent_algebra,
    random_signature, random_term, samples,
};
use ualg::iso::fixed_point_profile;
use ualg::{
    all_subuniverses, check_congruence, check_hom, compose_hom, enumerate_terms, find_iso,
    first_hom_decomposition, first_isomorphism, free_lift, hom_factor, image_algebra, interpret,
    is_closed, is_subalgebra_of_class, kernel_congruence, parse_term, product_algebra, search_homs,
    sg_closure, substitute, subuniv_algebra, term_image_closure, Environment, FiniteAlgebra, Hom,
    SearchOptions, Signature, SubalgebraWitness, Subuniverse, Term, VarContext,
};

use common::{arc, rng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn env<'a>(a: &'a FiniteAlgebra, v: &[usize]) -> Environment<'a> {
    Environment::new(a, v.to_vec()).expect("env in range")
}

/// A random verified surjection: the corestriction of a random hom.
fn random_epi<R: Rng>(r: &mut R, max_size: usize) -> Hom {
    image_algebra(&random_hom(r, max_size))
        .unwrap()
        .corestriction
}

// 1. search_homs equals the brute-force filter, as a sequence.
fn c1() -> Outcome {
    let mut r = rng(1);
    let mut total = 0;
    for _ in 0..50 {
        let sig = random_signature(&mut r, 2, 2);
        let (sa, sb) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let a = arc(random_algebra(&mut r, sig.clone(), sa));
        let b = arc(random_algebra(&mut r, sig, sb));
        let found: Vec<Vec<usize>> = search_homs(&a, &b, &SearchOptions::default())
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(Hom::into_map)
            .collect();
        let oracle = common::all_homs(&a, &b);
        ensure(found == oracle, || {
            format!("search {found:?} vs oracle {oracle:?}")
        })?;
        total += oracle.len();
    }
    Ok(format!("50 pairs, {total} homs"))
}

// 2. Kernels are congruences.
fn c2() -> Outcome {
    let mut r = rng(2);
    for _ in 0..300 {
        let h = random_hom(&mut r, 5);
        let k = kernel_congruence(&h).map_err(|e| e.to_string())?;
        check_congruence(h.domain(), &k.blocks()).map_err(|e| e.to_string())?;
        let labels: Vec<usize> = h.map().to_vec();
        ensure(common::is_congruence(h.domain(), &labels), || {
            format!("oracle rejects kernel of {:?}", h.map())
        })?;
    }
    Ok("300 homs".into())
}

// 3. h = mediating . projection, mediating injective, projection surjective,
// and the mediating map is the only factoring.
fn c3() -> Outcome {
    let mut r = rng(3);
    for _ in 0..200 {
        let h = random_hom(&mut r, 5);
        let d = first_hom_decomposition(&h).map_err(|e| e.to_string())?;
        let p = d.projection();
        for x in 0..h.domain().size() {
            ensure(d.mediating.apply(p.apply(x)) == h.apply(x), || {
                format!("factoring differs at {x} for {:?}", h.map())
            })?;
        }
        ensure(d.mediating.kind().injective, || {
            "mediating not injective".into()
        })?;
        ensure(p.kind().surjective, || "projection not surjective".into())?;
        let factorings: Vec<Hom> = search_homs(
            d.quotient_algebra(),
            h.codomain(),
            &SearchOptions::default(),
        )
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|psi| (0..h.domain().size()).all(|x| psi.apply(p.apply(x)) == h.apply(x)))
        .collect();
        ensure(
            factorings.len() == 1 && factorings[0].map() == d.mediating.map(),
            || format!("{} factorings of {:?}", factorings.len(), h.map()),
        )?;
    }
    Ok("200 homs, unique factoring".into())
}

// 4. A / ker h ≅ B for surjective h.
fn c4() -> Outcome {
    let mut r = rng(4);
    for _ in 0..100 {
        let h = random_epi(&mut r, 5);
        let iso = first_isomorphism(&h).map_err(|e| e.to_string())?;
        let (f, g) = (&iso.forward, &iso.backward);
        for x in 0..f.domain().size() {
            ensure(g.apply(f.apply(x)) == x, || format!("g.f moves {x}"))?;
        }
        for y in 0..g.domain().size() {
            ensure(f.apply(g.apply(y)) == y, || format!("f.g moves {y}"))?;
        }
        check_hom(f.domain(), f.codomain(), f.map().to_vec()).map_err(|e| e.to_string())?;
        check_hom(g.domain(), g.codomain(), g.map().to_vec()).map_err(|e| e.to_string())?;
        ensure(
            common::is_hom(f.domain(), f.codomain(), f.map())
                && common::is_hom(g.domain(), g.codomain(), g.map()),
            || "oracle rejects an iso direction".into(),
        )?;
    }
    Ok("100 surjections".into())
}

// 5. hom_factor recovers phi with g = phi . h; epi clause.
fn c5() -> Outcome {
    let mut r = rng(5);
    let mut done = 0;
    let mut epi = 0;
    while done < 100 {
        let h = random_epi(&mut r, 5);
        let b = h.codomain().clone();
        // q: B -> C, either a quotient projection or a searched hom
        let q = if r.gen_bool(0.5) {
            let theta = random_congruence(&mut r, &b);
            ualg::quotient(&b, &theta).unwrap().projection
        } else {
            let size = r.gen_range(1..=4);
            let c = arc(random_idempotent_algebra(
                &mut r,
                b.signature().clone(),
                size,
            ));
            let homs = search_homs(&b, &c, &SearchOptions::default()).unwrap();
            match homs.choose(&mut r) {
                Some(q) => q.clone(),
                None => continue,
            }
        };
        let g = compose_hom(&h, &q).map_err(|e| e.to_string())?;
        let want_epi = q.kind().surjective;
        let phi = hom_factor(&g, &h, want_epi).map_err(|e| e.to_string())?;
        for x in 0..g.domain().size() {
            ensure(phi.apply(h.apply(x)) == g.apply(x), || {
                format!("g != phi.h at {x}")
            })?;
        }
        ensure(
            common::is_hom(phi.domain(), phi.codomain(), phi.map()),
            || "oracle rejects phi".into(),
        )?;
        if want_epi {
            ensure(phi.kind().surjective, || "epi factor not surjective".into())?;
            epi += 1;
        }
        done += 1;
    }
    ensure(epi > 0, || "epi clause never exercised".into())?;
    Ok(format!("100 instances, {epi} with epic g"))
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

fn sample_small_algebras(seed: u64) -> Vec<Arc<FiniteAlgebra>> {
    let mut r = rng(seed);
    (0..50)
        .map(|_| {
            let sig = random_signature(&mut r, 2, 2);
            let size = r.gen_range(1..=4);
            arc(random_algebra(&mut r, sig, size))
        })
        .collect()
}

// 6. Sg(X) is the intersection of all subuniverses containing X.
fn c6() -> Outcome {
    let mut sets = 0;
    for a in sample_small_algebras(6) {
        let subs: Vec<Vec<usize>> = all_subuniverses(&a)
            .iter()
            .map(|s| s.members().to_vec())
            .collect();
        let oracle_subs = common::all_subuniverses(&a);
        ensure(subs == oracle_subs, || {
            format!("subuniverses {subs:?} vs {oracle_subs:?}")
        })?;
        for x in subsets(a.size()) {
            let sg = sg_closure(&a, &x).map_err(|e| e.to_string())?;
            let meet: Vec<usize> = (0..a.size())
                .filter(|e| {
                    oracle_subs
                        .iter()
                        .filter(|s| x.iter().all(|g| s.contains(g)))
                        .all(|s| s.contains(e))
                })
                .collect();
            ensure(sg.members() == meet.as_slice(), || {
                format!("Sg({x:?}) = {:?}, intersection {meet:?}", sg.members())
            })?;
            ensure(sg.members() == common::closure(&a, &x).as_slice(), || {
                format!("Sg({x:?}) differs from naive closure")
            })?;
            sets += 1;
        }
    }
    Ok(format!("50 algebras, {sets} generator sets"))
}

// 7. TermImage = Sg.
fn c7() -> Outcome {
    let mut sets = 0;
    for a in sample_small_algebras(6) {
        for x in subsets(a.size()) {
            let sg = sg_closure(&a, &x).map_err(|e| e.to_string())?;
            let ti = term_image_closure(&a, &x).map_err(|e| e.to_string())?;
            ensure(sg.members() == ti.members(), || {
                format!(
                    "X = {x:?}: Sg {:?}, TermImage {:?}",
                    sg.members(),
                    ti.members()
                )
            })?;
            sets += 1;
        }
    }
    Ok(format!("{sets} generator sets"))
}

// 8. Term batteries.
fn c8() -> Outcome {
    const N: usize = 200;
    let mut r = rng(8);
    let mut counts = Vec::new();

    // comm-hom-term
    let mut n = 0;
    while n < N {
        let h = random_hom(&mut r, 4);
        let a = h.domain();
        let Some(t) = random_term(&mut r, a.signature(), 3, 3) else {
            continue;
        };
        let v = random_env(&mut r, 3, a.size());
        let hv: Vec<usize> = v.iter().map(|&x| h.apply(x)).collect();
        let lhs = h.apply(interpret(&t, &env(a, &v)).map_err(|e| e.to_string())?);
        let rhs = interpret(&t, &env(h.codomain(), &hv)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || {
            format!("comm-hom-term fails for {}", t.display(a.signature()))
        })?;
        n += 1;
    }
    counts.push(format!("comm-hom-term {n}"));

    // compatible-term, over kernels of quotient projections
    let mut n = 0;
    while n < N {
        let sig = random_signature(&mut r, 2, 2);
        let size = r.gen_range(1..=5);
        let a = arc(random_algebra(&mut r, sig, size));
        let theta = random_congruence(&mut r, &a);
        let q = ualg::quotient(&a, &theta).unwrap();
        let k = kernel_congruence(&q.projection).unwrap();
        let labels = k.labels();
        let blocks = k.blocks();
        let idx = k.partition().block_indices();
        let Some(t) = random_term(&mut r, a.signature(), 3, 3) else {
            continue;
        };
        let u = random_env(&mut r, 3, size);
        let w: Vec<usize> = u
            .iter()
            .map(|&x| *blocks[idx[x]].choose(&mut r).unwrap())
            .collect();
        let (vu, vw) = (common::eval(&a, &u, &t), common::eval(&a, &w, &t));
        ensure(labels[vu] == labels[vw], || "compatible-term fails".into())?;
        ensure(interpret(&t, &env(&a, &u)).unwrap() == vu, || {
            "interpret disagrees".into()
        })?;
        n += 1;
    }
    counts.push(format!("compatible-term {n}"));

    // interp-prod: exhaustive over terms of depth <= 2 and all environments
    let mut n = 0;
    let mut pairs = 0;
    while n < N || pairs < 3 {
        let sig = Arc::new(Signature::new([("f", 2), ("g", 1)]).unwrap());
        let (s1, s2) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let a = arc(random_algebra(&mut r, sig.clone(), s1));
        let b = arc(random_algebra(&mut r, sig.clone(), s2));
        let p = product_algebra(&[a.clone(), b.clone()]).unwrap();
        let terms = enumerate_terms(&sig, 2, 2);
        for t in &terms {
            for v in common::tuples(p.algebra.size(), 2) {
                let got = interpret(t, &env(&p.algebra, &v)).unwrap();
                let va: Vec<usize> = v.iter().map(|&x| p.codec.component(x, 0)).collect();
                let vb: Vec<usize> = v.iter().map(|&x| p.codec.component(x, 1)).collect();
                let want = p
                    .codec
                    .encode(&[common::eval(&a, &va, t), common::eval(&b, &vb, t)]);
                ensure(got == want, || {
                    format!("interp-prod fails for {}", t.display(&sig))
                })?;
                n += 1;
            }
        }
        pairs += 1;
    }
    counts.push(format!("interp-prod {n}"));

    // free-lift-interp
    let mut n = 0;
    while n < N {
        let sig = random_signature(&mut r, 2, 2);
        let size = r.gen_range(1..=4);
        let a = random_algebra(&mut r, sig, size);
        let Some(t) = random_term(&mut r, a.signature(), 3, 3) else {
            continue;
        };
        let h = random_env(&mut r, 3, size);
        let lifted = free_lift(&a, &h, &t).map_err(|e| e.to_string())?;
        let interp = interpret(&t, &env(&a, &h)).map_err(|e| e.to_string())?;
        ensure(
            lifted == interp && interp == common::eval(&a, &h, &t),
            || "free-lift-interp fails".into(),
        )?;
        n += 1;
    }
    counts.push(format!("free-lift-interp {n}"));

    // term-agreement: identity substitution, then substitution vs interpretation
    let mut n = 0;
    let sig = Arc::new(Signature::new([("f", 2), ("c", 0)]).unwrap());
    let ids: Vec<Term> = (0..2).map(Term::Var).collect();
    for t in enumerate_terms(&sig, 2, 3) {
        ensure(substitute(&t, &ids) == t, || {
            format!("identity moves {}", t.display(&sig))
        })?;
        n += 1;
    }
    let mut m = 0;
    while m < N {
        let sig = random_signature(&mut r, 2, 2);
        let size = r.gen_range(1..=4);
        let a = random_algebra(&mut r, sig.clone(), size);
        let (Some(t), Some(s0), Some(s1)) = (
            random_term(&mut r, &sig, 2, 2),
            random_term(&mut r, &sig, 2, 2),
            random_term(&mut r, &sig, 2, 2),
        ) else {
            continue;
        };
        let v = random_env(&mut r, 2, size);
        let inner = vec![common::eval(&a, &v, &s0), common::eval(&a, &v, &s1)];
        let lhs = interpret(&substitute(&t, &[s0, s1]), &env(&a, &v)).unwrap();
        ensure(lhs == common::eval(&a, &inner, &t), || {
            "substitution law fails".into()
        })?;
        m += 1;
    }
    counts.push(format!("term-agreement {n}+{m}"));

    // sub-term-closed
    let mut n = 0;
    while n < N {
        let sig = random_signature(&mut r, 2, 2);
        let size = r.gen_range(1..=4);
        let a = arc(random_algebra(&mut r, sig.clone(), size));
        for s in common::all_subuniverses(&a)
            .into_iter()
            .filter(|s| !s.is_empty())
        {
            let Some(t) = random_term(&mut r, &sig, 2, 3) else {
                continue;
            };
            let v: Vec<usize> = (0..2).map(|_| *s.choose(&mut r).unwrap()).collect();
            let x = interpret(&t, &env(&a, &v)).unwrap();
            ensure(s.contains(&x), || {
                format!("{} leaves {s:?}", t.display(&sig))
            })?;
            n += 1;
        }
    }
    counts.push(format!("sub-term-closed {n}"));

    Ok(counts.join(", "))
}

// 9. Small counts with in-line oracles.
fn c9() -> Outcome {
    let z2 = arc(samples::z(2));
    let m2 = arc(samples::m2());
    let p = product_algebra(&[z2.clone(), z2.clone()]).unwrap();

    let endo = search_homs(&z2, &z2, &SearchOptions::default())
        .unwrap()
        .len();
    let endo_oracle = common::all_homs(&z2, &z2).len();
    ensure(endo == 2 && endo_oracle == 2, || {
        format!("End(Z2): {endo} / {endo_oracle}")
    })?;

    let into = search_homs(&z2, &p.algebra, &SearchOptions::default())
        .unwrap()
        .len();
    let into_oracle = common::all_homs(&z2, &p.algebra).len();
    ensure(into == 4 && into_oracle == 4, || {
        format!("Z2 -> Z2xZ2: {into} / {into_oracle}")
    })?;

    let sz = all_subuniverses(&z2).len();
    ensure(sz == 3 && common::all_subuniverses(&z2).len() == 3, || {
        format!("Sub(Z2) = {sz}")
    })?;
    let sm = all_subuniverses(&m2).len();
    ensure(sm == 4 && common::all_subuniverses(&m2).len() == 4, || {
        format!("Sub(M2) = {sm}")
    })?;

    let bijections = common::all_homs(&z2, &m2)
        .into_iter()
        .filter(|m| m.iter().collect::<BTreeSet<_>>().len() == 2)
        .count();
    ensure(find_iso(&z2, &m2).is_none() && bijections == 0, || {
        "Z2 ≅ M2 claimed".into()
    })?;

    let terms = enumerate_terms(z2.signature(), 1, 1).len();
    let oracle = common::term_count(1, &[2], 1);
    ensure(terms == 2 && oracle == 2, || {
        format!("terms: {terms} / {oracle}")
    })?;

    Ok("2, 4, 3, 4, none, 2".into())
}

fn random_nonempty_sub<R: Rng>(r: &mut R, a: &Arc<FiniteAlgebra>) -> Subuniverse {
    let subs: Vec<Subuniverse> = all_subuniverses(a)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    subs.choose(r)
        .expect("the full carrier is a subuniverse")
        .clone()
}

fn check_embedding(w: &SubalgebraWitness) -> Result<(), String> {
    let e = &w.embedding;
    ensure(
        e.is_verified() && e.kind().injective && common::is_hom(e.domain(), e.codomain(), e.map()),
        || format!("bad embedding {:?}", e.map()),
    )
}

// 10. Preorder laws, monotonicity, images are subuniverses.
fn c10() -> Outcome {
    let mut r = rng(10);
    for _ in 0..100 {
        let sig = random_signature(&mut r, 2, 2);
        let size = r.gen_range(1..=4);
        let a = arc(random_idempotent_algebra(&mut r, sig, size));

        let refl = SubalgebraWitness::refl(&a);
        check_embedding(&refl)?;
        ensure(
            refl.embedding.map() == (0..a.size()).collect::<Vec<_>>().as_slice(),
            || "refl is not the identity".into(),
        )?;

        let (b, b_in_a) = subuniv_algebra(&random_nonempty_sub(&mut r, &a)).unwrap();
        let (c, c_in_b) = subuniv_algebra(&random_nonempty_sub(&mut r, &b)).unwrap();
        let c_in_a = c_in_b.trans(&b_in_a).map_err(|e| e.to_string())?;
        check_embedding(&c_in_a)?;
        ensure(
            Arc::ptr_eq(c_in_a.sub(), &c) && Arc::ptr_eq(c_in_a.sup(), &a),
            || "trans has wrong endpoints".into(),
        )?;

        let perm = common::random_perm(&mut r, c.size());
        let c2 = arc(common::relabel(&c, &perm));
        let iso = find_iso(&c2, &c).ok_or("relabelled copy not found isomorphic")?;
        ensure(fixed_point_profile(&c2) == fixed_point_profile(&c), || {
            "profile differs".into()
        })?;
        let c2_in_a = SubalgebraWitness::from_iso(&iso, &c_in_a).map_err(|e| e.to_string())?;
        check_embedding(&c2_in_a)?;

        // mono: a witness against [A] stands against any list containing A
        let q = is_subalgebra_of_class(&c2, std::slice::from_ref(&a)).unwrap();
        let w = q.witness.ok_or("class query missed a known subalgebra")?;
        let other = arc(random_algebra(&mut r, a.signature().clone(), 2));
        ensure(
            w.verify(&c2, std::slice::from_ref(&a))
                && w.verify(&c2, &[other.clone(), a.clone(), other]),
            || "witness does not carry over to a superclass".into(),
        )?;
    }
    for _ in 0..200 {
        let h = random_hom(&mut r, 5);
        let img = image_algebra(&h).map_err(|e| e.to_string())?;
        is_closed(h.codomain(), img.subuniverse.members()).map_err(|e| e.to_string())?;
        let set: BTreeSet<usize> = img.subuniverse.members().iter().copied().collect();
        ensure(common::is_closed(h.codomain(), &set), || {
            "oracle rejects image".into()
        })?;
    }
    Ok("100 chains, 200 images".into())
}

// 11. Codec round trips and CLI determinism.
fn c11() -> Outcome {
    let mut r = rng(11);
    for i in 0..100 {
        let sig = random_signature(&mut r, 3, 3);
        let size = r.gen_range(1..=4);
        let mut a = random_algebra(&mut r, sig, size);
        if i % 2 == 0 {
            a = a.with_name(format!("A{i}"));
        }
        let text = ualg::codec::serialize_algebra(&a);
        let back = ualg::codec::parse_algebra(&text).map_err(|e| e.to_string())?;
        ensure(
            back == a && ualg::codec::serialize_algebra(&back) == text,
            || format!("algebra document changed:\n{text}"),
        )?;
    }
    let mut n = 0;
    while n < 100 {
        let sig = random_signature(&mut r, 3, 3);
        let Some(t) = random_term(&mut r, &sig, 3, 4) else {
            continue;
        };
        let text = t.display(&sig).to_string();
        let back = parse_term(&text, &sig, VarContext { nvars: 3 }).map_err(|e| e.to_string())?;
        ensure(back == t && back.display(&sig).to_string() == text, || {
            format!("term changed: {text}")
        })?;
        n += 1;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let z4 = dir.path().join("z4.json");
    let z2 = dir.path().join("z2.json");
    std::fs::write(&z4, ualg::codec::serialize_algebra(&samples::z(4))).unwrap();
    std::fs::write(&z2, ualg::codec::serialize_algebra(&samples::z(2))).unwrap();
    let (z4, z2) = (z4.to_str().unwrap(), z2.to_str().unwrap());
    let invocations: Vec<Vec<&str>> = vec![
        vec!["homs", "--from", z4, "--to", z2],
        vec!["homs", "--from", z4, "--to", z4, "--json"],
        vec!["iso", "--left", z4, "--right", z4],
        vec!["sg", "--algebra", z4, "--set", "2"],
        vec!["product", "--algebra", z2, "--algebra", z2],
        vec!["verify", "--algebra", z4, "--seed", "3", "--samples", "50"],
    ];
    for args in &invocations {
        let runs: Vec<(Option<i32>, Vec<u8>)> = (0..3)
            .map(|_| {
                let o = Command::new(env!("CARGO_BIN_EXE_ualg"))
                    .args(args)
                    .output()
                    .unwrap();
                (o.status.code(), o.stdout)
            })
            .collect();
        ensure(runs[0].0 == Some(0), || {
            format!("{args:?} exited {:?}", runs[0].0)
        })?;
        ensure(runs.iter().all(|x| x == &runs[0]), || {
            format!("{args:?} is not deterministic")
        })?;
    }
    Ok(format!(
        "100 algebras, 100 terms, {} commands x3",
        invocations.len()
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("hom search matches brute force", c1),
        ("kernels are congruences", c2),
        ("first homomorphism theorem", c3),
        ("first isomorphism theorem", c4),
        ("hom factoring", c5),
        ("Sg is the smallest subuniverse", c6),
        ("term image equals Sg", c7),
        ("term batteries", c8),
        ("derived counts", c9),
        ("preorder and class laws", c10),
        ("round trips and CLI determinism", c11),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(e) => {
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
