//! Law batteries run against a user-supplied algebra by `ualg verify`.
//!
//! Each law is checked on the algebra, its endomorphisms, its kernels and
//! random terms, and reports how many instances it examined.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codec::{parse_algebra, serialize_algebra};
use crate::congruence::{check_partition, kernel_congruence};
use crate::gen::{random_env, random_term};
use crate::hom::{check_hom, compose_hom, image_algebra, search_homs, Hom, SearchOptions};
use crate::signature::{advance, Element, FiniteAlgebra};
use crate::subalg::{
    all_subuniverses, intersect_subuniverses, is_closed, sg_closure, term_image_closure,
};
use crate::term::{free_lift, interpret, Environment};
use crate::theorems::first_hom_decomposition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub name: &'static str,
    pub instances: usize,
    pub failure: Option<String>,
    pub skipped: bool,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Largest carrier for which every map `A -> A` is enumerated.
const MAX_BRUTE_FORCE: usize = 5;
/// Largest carrier for which every subset is scanned.
const MAX_SUBSET_SCAN: usize = 10;

struct Battery {
    reports: Vec<LawReport>,
}

impl Battery {
    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Result<usize, String>) {
        let (instances, failure) = match f() {
            Ok(n) => (n, None),
            Err(e) => (0, Some(e)),
        };
        self.reports.push(LawReport {
            name,
            instances,
            failure,
            skipped: false,
        });
    }

    fn skip(&mut self, name: &'static str) {
        self.reports.push(LawReport {
            name,
            instances: 0,
            failure: None,
            skipped: true,
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn verify_algebra(alg: &Arc<FiniteAlgebra>, seed: u64, samples: usize) -> Vec<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Battery {
        reports: Vec::new(),
    };
    let n = alg.size();
    let sig = alg.signature().clone();
    let endos = search_homs(alg, alg, &SearchOptions::default()).expect("same signature");

    b.run("identity-is-hom", || {
        check_hom(alg, alg, (0..n).collect()).map_err(|e| e.to_string())?;
        Ok(1)
    });

    if n <= MAX_BRUTE_FORCE {
        b.run("hom-search-matches-brute-force", || {
            let mut map = vec![0; n];
            let mut brute = Vec::new();
            loop {
                if check_hom(alg, alg, map.clone()).is_ok() {
                    brute.push(map.clone());
                }
                if !advance(&mut map, n) {
                    break;
                }
            }
            let searched: Vec<Vec<Element>> = endos.iter().map(|h| h.map().to_vec()).collect();
            ensure(searched == brute, || {
                format!(
                    "search found {} maps, brute force {}",
                    searched.len(),
                    brute.len()
                )
            })?;
            Ok(n.pow(n as u32))
        });
    } else {
        b.skip("hom-search-matches-brute-force");
    }

    b.run("kernel-is-congruence", || {
        for h in &endos {
            let k = kernel_congruence(h).map_err(|e| e.to_string())?;
            check_partition(alg, k.partition().clone()).map_err(|e| e.to_string())?;
        }
        Ok(endos.len())
    });

    b.run("first-homomorphism-theorem", || {
        for h in &endos {
            let d = first_hom_decomposition(h).map_err(|e| e.to_string())?;
            let factorings = search_homs(d.quotient_algebra(), alg, &SearchOptions::default())
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|psi| {
                    compose_hom(d.projection(), psi)
                        .map(|c| c.map() == h.map())
                        .unwrap_or(false)
                })
                .count();
            ensure(factorings == 1, || {
                format!("{} factorings of {:?}", factorings, h.map())
            })?;
        }
        Ok(endos.len())
    });

    b.run("image-is-subuniverse", || {
        for h in &endos {
            let img = image_algebra(h).map_err(|e| e.to_string())?;
            is_closed(alg, img.subuniverse.members()).map_err(|e| e.to_string())?;
        }
        Ok(endos.len())
    });

    let nvars = sig.max_arity().max(1);
    let terms: Vec<_> = (0..samples)
        .filter_map(|_| random_term(&mut rng, &sig, nvars, 3))
        .collect();
    let envs: Vec<Vec<Element>> = (0..samples)
        .map(|_| random_env(&mut rng, nvars, n))
        .collect();
    let picks: Vec<usize> = (0..samples)
        .map(|_| rng.gen_range(0..endos.len().max(1)))
        .collect();

    b.run("free-lift-equals-interpretation", || {
        for (t, a) in terms.iter().zip(&envs) {
            let env = Environment::new(alg, a.clone()).map_err(|e| e.to_string())?;
            let lhs = interpret(t, &env).map_err(|e| e.to_string())?;
            let rhs = free_lift(alg, a, t).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || {
                format!("term {} at {:?}", t.display(&sig), a)
            })?;
        }
        Ok(terms.len())
    });

    b.run("terms-commute-with-homs", || {
        for ((t, a), &k) in terms.iter().zip(&envs).zip(&picks) {
            let h: &Hom = &endos[k];
            let env = Environment::new(alg, a.clone()).map_err(|e| e.to_string())?;
            let image: Vec<Element> = a.iter().map(|&x| h.apply(x)).collect();
            let env_h = Environment::new(alg, image).map_err(|e| e.to_string())?;
            let lhs = h.apply(interpret(t, &env).map_err(|e| e.to_string())?);
            let rhs = interpret(t, &env_h).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || {
                format!("term {} under {:?}", t.display(&sig), h.map())
            })?;
        }
        Ok(terms.len())
    });

    b.run("terms-respect-congruences", || {
        let mut count = 0;
        for ((t, a), &k) in terms.iter().zip(&envs).zip(&picks) {
            let theta = kernel_congruence(&endos[k]).map_err(|e| e.to_string())?;
            let labels = theta.labels();
            // a related assignment: move each entry to another element of its block
            let blocks = theta.blocks();
            let idx = theta.partition().block_indices();
            let b_env: Vec<Element> = a
                .iter()
                .map(|&x| {
                    let block = &blocks[idx[x]];
                    block[(x + count) % block.len()]
                })
                .collect();
            let va = interpret(t, &Environment::new(alg, a.clone()).expect("in range"))
                .map_err(|e| e.to_string())?;
            let vb = interpret(t, &Environment::new(alg, b_env).expect("in range"))
                .map_err(|e| e.to_string())?;
            ensure(labels[va] == labels[vb], || {
                format!("term {} separates related assignments", t.display(&sig))
            })?;
            count += 1;
        }
        Ok(count)
    });

    if n <= MAX_SUBSET_SCAN {
        let subs = all_subuniverses(alg);
        b.run("sg-is-smallest", || {
            for mask in 0..1usize << n {
                let x: Vec<Element> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let sg = sg_closure(alg, &x).map_err(|e| e.to_string())?;
                let containing: Vec<_> = subs
                    .iter()
                    .filter(|s| x.iter().all(|&e| s.contains(e)))
                    .cloned()
                    .collect();
                let meet = intersect_subuniverses(&containing).map_err(|e| e.to_string())?;
                ensure(meet.members() == sg.members(), || {
                    format!(
                        "Sg({x:?}) = {:?} but intersection is {:?}",
                        sg.members(),
                        meet.members()
                    )
                })?;
            }
            Ok(1 << n)
        });
        b.run("term-image-equals-sg", || {
            for mask in 0..1usize << n {
                let x: Vec<Element> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let sg = sg_closure(alg, &x).map_err(|e| e.to_string())?;
                let ti = term_image_closure(alg, &x).map_err(|e| e.to_string())?;
                ensure(sg.members() == ti.members(), || format!("generators {x:?}"))?;
            }
            Ok(1 << n)
        });
        b.run("subuniverses-are-term-closed", || {
            let mut count = 0;
            for s in subs.iter().filter(|s| !s.is_empty()) {
                for t in &terms {
                    let env: Vec<Element> = (0..nvars)
                        .map(|i| s.members()[(i * 7 + count) % s.len()])
                        .collect();
                    let v = interpret(t, &Environment::new(alg, env).expect("in range"))
                        .map_err(|e| e.to_string())?;
                    ensure(s.contains(v), || {
                        format!("term {} leaves {:?}", t.display(&sig), s.members())
                    })?;
                    count += 1;
                }
            }
            Ok(count)
        });
    } else {
        b.skip("sg-is-smallest");
        b.skip("term-image-equals-sg");
        b.skip("subuniverses-are-term-closed");
    }

    b.run("codec-round-trip", || {
        let text = serialize_algebra(alg);
        let back = parse_algebra(&text).map_err(|e| e.to_string())?;
        ensure(
            &back == alg.as_ref() && serialize_algebra(&back) == text,
            || "document changed on round trip".into(),
        )?;
        Ok(1)
    });

    b.reports
}
