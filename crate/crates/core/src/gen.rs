//! Sample algebras and seeded random generators for algebras, terms,
//! congruences and homomorphisms.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::congruence::{Congruence, Partition, UnionFind};
use crate::hom::{search_homs, Hom, SearchOptions};
use crate::signature::{product_algebra, Element, FiniteAlgebra, Signature};
use crate::term::Term;

/// Small named algebras used throughout tests and docs.
pub mod samples {
    use super::*;

    /// The signature with a single binary symbol `+`.
    pub fn binary_signature() -> Arc<Signature> {
        Arc::new(Signature::new([("+", 2)]).expect("valid signature"))
    }

    /// `Z_n` under addition mod `n`.
    pub fn z(n: usize) -> FiniteAlgebra {
        FiniteAlgebra::from_fn(Some(format!("Z{n}")), binary_signature(), n, |_, a| {
            (a[0] + a[1]) % n
        })
        .expect("valid algebra")
    }

    /// The two-element meet semilattice, written with the symbol `+` so it
    /// shares a signature with [`z`]. Table `[0,0,0,1]`.
    pub fn m2() -> FiniteAlgebra {
        FiniteAlgebra::from_fn(Some("M2".into()), binary_signature(), 2, |_, a| {
            a[0].min(a[1])
        })
        .expect("valid algebra")
    }

    /// `Z_n` with an additional constant `c` interpreted as 0.
    pub fn z_with_zero(n: usize) -> FiniteAlgebra {
        let sig = Arc::new(Signature::new([("+", 2), ("c", 0)]).expect("valid signature"));
        FiniteAlgebra::from_fn(Some(format!("Z{n}c")), sig, n, |s, a| match s {
            0 => (a[0] + a[1]) % n,
            _ => 0,
        })
        .expect("valid algebra")
    }

    /// The one-element algebra over `sig`.
    pub fn trivial(sig: Arc<Signature>) -> FiniteAlgebra {
        FiniteAlgebra::from_fn(Some("1".into()), sig, 1, |_, _| 0).expect("valid algebra")
    }
}

/// A random signature with between 1 and `max_symbols` symbols of arity at
/// most `max_arity`. Symbols are named `f0`, `f1`, ...
pub fn random_signature<R: Rng + ?Sized>(
    rng: &mut R,
    max_symbols: usize,
    max_arity: usize,
) -> Arc<Signature> {
    let n = rng.gen_range(1..=max_symbols.max(1));
    Arc::new(
        Signature::new((0..n).map(|i| (format!("f{i}"), rng.gen_range(0..=max_arity))))
            .expect("generated names are valid"),
    )
}

/// A random algebra of the given size with uniformly random tables.
pub fn random_algebra<R: Rng + ?Sized>(
    rng: &mut R,
    sig: Arc<Signature>,
    size: usize,
) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(None, sig, size, |_, _| rng.gen_range(0..size)).expect("valid algebra")
}

/// A random algebra whose operations are biased towards idempotence, so
/// that homomorphisms between such algebras are more common.
pub fn random_idempotent_algebra<R: Rng + ?Sized>(
    rng: &mut R,
    sig: Arc<Signature>,
    size: usize,
) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(None, sig, size, |_, args| {
        if !args.is_empty() && args.iter().all(|&a| a == args[0]) {
            args[0]
        } else {
            rng.gen_range(0..size)
        }
    })
    .expect("valid algebra")
}

/// A random term of height at most `depth` over `nvars` variables. Returns
/// `None` only when no height-0 term exists.
pub fn random_term<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    nvars: usize,
    depth: usize,
) -> Option<Term> {
    let constants: Vec<usize> = (0..sig.len()).filter(|&s| sig.arity(s) == 0).collect();
    let operations: Vec<usize> = (0..sig.len()).filter(|&s| sig.arity(s) > 0).collect();
    let leaf = |rng: &mut R| -> Option<Term> {
        let total = nvars + constants.len();
        if total == 0 {
            return None;
        }
        let k = rng.gen_range(0..total);
        Some(if k < nvars {
            Term::Var(k)
        } else {
            Term::Node(constants[k - nvars], Vec::new())
        })
    };
    if depth == 0 || operations.is_empty() || rng.gen_bool(0.3) {
        return leaf(rng);
    }
    let s = *operations.choose(rng).expect("non-empty");
    let children = (0..sig.arity(s))
        .map(|_| random_term(rng, sig, nvars, depth - 1))
        .collect::<Option<Vec<_>>>()?;
    Some(Term::Node(s, children))
}

/// A random assignment of `nvars` variables into a carrier of size `size`.
pub fn random_env<R: Rng + ?Sized>(rng: &mut R, nvars: usize, size: usize) -> Vec<Element> {
    (0..nvars).map(|_| rng.gen_range(0..size)).collect()
}

/// A random congruence: a few random pairs are identified and the result is
/// closed under the operations.
pub fn random_congruence<R: Rng + ?Sized>(rng: &mut R, alg: &Arc<FiniteAlgebra>) -> Congruence {
    let n = alg.size();
    let mut uf = UnionFind::new(n);
    let merges = rng.gen_range(0..=n);
    for _ in 0..merges {
        uf.union(rng.gen_range(0..n), rng.gen_range(0..n));
    }
    let sig = alg.signature().clone();
    loop {
        let mut changed = false;
        for s in 0..sig.len() {
            let k = sig.arity(s);
            let mut args = vec![0; k];
            loop {
                let reps: Vec<Element> = args.iter().map(|&a| uf.find(a)).collect();
                let (l, r) = (alg.op(s, &args), alg.op(s, &reps));
                changed |= uf.union(l, r);
                if !crate::signature::advance(&mut args, n) {
                    break;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::new_unchecked(alg.clone(), Partition::from_keys(&labels))
}

/// A random verified homomorphism between small random algebras. The
/// recipe varies: searched homs between random algebras, quotient
/// projections, projections out of products, and composites thereof.
pub fn random_hom<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> Hom {
    let max_size = max_size.max(1);
    loop {
        let sig = random_signature(rng, 2, 2);
        match rng.gen_range(0..4) {
            0 => {
                let (sa, sb) = (rng.gen_range(1..=max_size), rng.gen_range(1..=max_size));
                let a = Arc::new(random_idempotent_algebra(rng, sig.clone(), sa));
                let b = Arc::new(random_idempotent_algebra(rng, sig, sb));
                let homs = search_homs(&a, &b, &SearchOptions::default()).expect("same signature");
                if let Some(h) = homs.choose(rng) {
                    return h.clone();
                }
            }
            1 => {
                let sa = rng.gen_range(1..=max_size);
                let a = Arc::new(random_algebra(rng, sig, sa));
                let theta = random_congruence(rng, &a);
                let q = crate::congruence::quotient(&a, &theta).expect("own congruence");
                return q.projection;
            }
            2 => {
                let s1 = rng.gen_range(1..=max_size.min(3));
                let s2 = rng.gen_range(1..=(max_size / s1).max(1));
                let a = Arc::new(random_algebra(rng, sig.clone(), s1));
                let b = Arc::new(random_algebra(rng, sig, s2));
                let p = product_algebra(&[a, b]).expect("same signature");
                let i = rng.gen_range(0..2);
                return crate::hom::projection_hom(&p, i).expect("index in range");
            }
            _ => {
                // quotient projection followed by a searched hom out of the quotient
                let (sa, sb) = (rng.gen_range(1..=max_size), rng.gen_range(1..=max_size));
                let a = Arc::new(random_idempotent_algebra(rng, sig.clone(), sa));
                let theta = random_congruence(rng, &a);
                let q = crate::congruence::quotient(&a, &theta).expect("own congruence");
                let b = Arc::new(random_idempotent_algebra(rng, sig, sb));
                let homs =
                    search_homs(&q.algebra, &b, &SearchOptions::default()).expect("same signature");
                if let Some(h) = homs.choose(rng) {
                    return crate::hom::compose_hom(&q.projection, h).expect("composable");
                }
            }
        }
    }
}
