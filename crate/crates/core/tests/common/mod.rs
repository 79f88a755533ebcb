//! Brute-force oracles shared by the integration tests. They read operation
//! tables directly and never call the search, closure or congruence code
//! under test.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ualg::{FiniteAlgebra, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every tuple in `0..n` of length `k`, last coordinate fastest.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for x in 0..n {
                let mut t = t.clone();
                t.push(x);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Table lookup with the index computed from scratch.
pub fn op(a: &FiniteAlgebra, s: usize, args: &[usize]) -> usize {
    let mut idx = 0;
    for &x in args {
        idx = idx * a.size() + x;
    }
    a.table(s)[idx]
}

pub fn is_hom(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[usize]) -> bool {
    let sig = a.signature();
    (0..sig.len()).all(|s| {
        tuples(a.size(), sig.arity(s)).iter().all(|args| {
            let image: Vec<usize> = args.iter().map(|&x| map[x]).collect();
            map[op(a, s, args)] == op(b, s, &image)
        })
    })
}

/// All homs `a -> b` in lexicographic order of their maps.
pub fn all_homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
    tuples(b.size(), a.size())
        .into_iter()
        .filter(|m| is_hom(a, b, m))
        .collect()
}

/// Whether the equivalence given by `labels` is compatible, checked on every
/// pair of related argument tuples.
pub fn is_congruence(a: &FiniteAlgebra, labels: &[usize]) -> bool {
    let sig = a.signature();
    (0..sig.len()).all(|s| {
        let all = tuples(a.size(), sig.arity(s));
        all.iter().all(|x| {
            all.iter()
                .filter(|y| {
                    x.iter()
                        .zip(y.iter())
                        .all(|(&p, &q)| labels[p] == labels[q])
                })
                .all(|y| labels[op(a, s, x)] == labels[op(a, s, y)])
        })
    })
}

pub fn is_closed(a: &FiniteAlgebra, set: &BTreeSet<usize>) -> bool {
    let members: Vec<usize> = set.iter().copied().collect();
    let sig = a.signature();
    (0..sig.len()).all(|s| {
        tuples(members.len(), sig.arity(s)).iter().all(|idx| {
            let args: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
            set.contains(&op(a, s, &args))
        })
    })
}

/// Every subuniverse, as sorted member lists, by scanning all subsets.
pub fn all_subuniverses(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size();
    let mut out: Vec<Vec<usize>> = (0..1usize << n)
        .map(|mask| {
            (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .collect::<BTreeSet<_>>()
        })
        .filter(|s| is_closed(a, s))
        .map(|s| s.into_iter().collect())
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// Least closed superset, by repeatedly applying every operation to every
/// tuple over the whole current set.
pub fn closure(a: &FiniteAlgebra, gens: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    let sig = a.signature();
    loop {
        let members: Vec<usize> = set.iter().copied().collect();
        let mut next = set.clone();
        for s in 0..sig.len() {
            for idx in tuples(members.len(), sig.arity(s)) {
                let args: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
                next.insert(op(a, s, &args));
            }
        }
        if next == set {
            return set.into_iter().collect();
        }
        set = next;
    }
}

pub fn eval(a: &FiniteAlgebra, env: &[usize], t: &Term) -> usize {
    match t {
        Term::Var(i) => env[*i],
        Term::Node(s, ch) => {
            let args: Vec<usize> = ch.iter().map(|c| eval(a, env, c)).collect();
            op(a, *s, &args)
        }
    }
}

/// Number of terms of height at most `depth` with `leaves` variables and
/// constants, for a signature whose non-nullary arities are `arities`.
pub fn term_count(leaves: usize, arities: &[usize], depth: usize) -> usize {
    let mut c = leaves;
    for _ in 0..depth {
        c = leaves + arities.iter().map(|&k| c.pow(k as u32)).sum::<usize>();
    }
    c
}

/// Relabels `a` along the permutation `perm` (old element `x` becomes
/// `perm[x]`).
pub fn relabel(a: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let mut inv = vec![0; perm.len()];
    for (x, &p) in perm.iter().enumerate() {
        inv[p] = x;
    }
    FiniteAlgebra::from_fn(None, a.signature().clone(), a.size(), |s, args| {
        let old: Vec<usize> = args.iter().map(|&y| inv[y]).collect();
        perm[op(a, s, &old)]
    })
    .unwrap()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn arc(a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
    Arc::new(a)
}
