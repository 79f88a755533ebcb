//! Isomorphisms as pairs of mutually inverse homomorphisms.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hom::{check_hom, compose_hom, factorwise_product_hom, visit_homs, Hom, SearchOptions};
use crate::signature::{same_algebra, Element, FiniteAlgebra, Product};

#[derive(Clone, Debug, PartialEq)]
pub struct Iso {
    pub forward: Hom,
    pub backward: Hom,
}

/// Which round trip failed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoViolation {
    /// `backward(forward(x)) != x` for `x` in the domain.
    Domain {
        element: Element,
        round_trip: Element,
    },
    /// `forward(backward(y)) != y` for `y` in the codomain.
    Codomain {
        element: Element,
        round_trip: Element,
    },
}

impl fmt::Display for IsoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoViolation::Domain {
                element,
                round_trip,
            } => write!(f, "g(f({element})) = {round_trip}"),
            IsoViolation::Codomain {
                element,
                round_trip,
            } => write!(f, "f(g({element})) = {round_trip}"),
        }
    }
}

/// Checks that `f: A -> B` and `g: B -> A` are mutually inverse.
pub fn check_iso(f: &Hom, g: &Hom) -> Result<Iso> {
    f.require_verified()?;
    g.require_verified()?;
    if !same_algebra(f.domain(), g.codomain()) || !same_algebra(f.codomain(), g.domain()) {
        return Err(Error::Mismatch(
            "maps do not go back and forth between the same algebras".into(),
        ));
    }
    for x in 0..f.domain().size() {
        let r = g.apply(f.apply(x));
        if r != x {
            return Err(Error::NotIsomorphism(IsoViolation::Domain {
                element: x,
                round_trip: r,
            }));
        }
    }
    for y in 0..f.codomain().size() {
        let r = f.apply(g.apply(y));
        if r != y {
            return Err(Error::NotIsomorphism(IsoViolation::Codomain {
                element: y,
                round_trip: r,
            }));
        }
    }
    Ok(Iso {
        forward: f.clone(),
        backward: g.clone(),
    })
}

impl Iso {
    pub fn refl(a: &Arc<FiniteAlgebra>) -> Self {
        Iso {
            forward: Hom::identity(a),
            backward: Hom::identity(a),
        }
    }

    pub fn sym(&self) -> Self {
        Iso {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn domain(&self) -> &Arc<FiniteAlgebra> {
        self.forward.domain()
    }

    pub fn codomain(&self) -> &Arc<FiniteAlgebra> {
        self.forward.codomain()
    }
}

/// Inverse of a bijective map given as a table.
pub(crate) fn invert(map: &[Element]) -> Vec<Element> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Finds the lexicographically first bijective hom `a -> b` whose inverse
/// also passes [`check_hom`].
pub fn find_iso(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Option<Iso> {
    if a.size() != b.size() || a.signature() != b.signature() {
        return None;
    }
    let mut found = None;
    visit_homs(a, b, &SearchOptions::bijective(), |map| {
        let Ok(backward) = check_hom(b, a, invert(&map)) else {
            return ControlFlow::Continue(());
        };
        let forward = Hom::by_theorem(a.clone(), b.clone(), map);
        found = check_iso(&forward, &backward).ok();
        if found.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .ok()?;
    found
}

/// `A ≅ B` and `B ≅ C` give `A ≅ C`.
pub fn compose_iso(first: &Iso, second: &Iso) -> Result<Iso> {
    let forward = compose_hom(&first.forward, &second.forward)?;
    let backward = compose_hom(&second.backward, &first.backward)?;
    check_iso(&forward, &backward)
}

/// Componentwise isomorphism between two products.
pub fn product_iso(domain: &Product, codomain: &Product, isos: &[Iso]) -> Result<Iso> {
    if isos.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let forwards: Vec<Hom> = isos.iter().map(|i| i.forward.clone()).collect();
    let backwards: Vec<Hom> = isos.iter().map(|i| i.backward.clone()).collect();
    let forward = factorwise_product_hom(domain, codomain, &forwards)?;
    let backward = factorwise_product_hom(codomain, domain, &backwards)?;
    check_iso(&forward, &backward)
}

/// An isomorphism invariant: for each symbol, the sorted fixed-point counts
/// of every unary slice `x -> f(c_0, .., x, .., c_{k-1})` (all positions,
/// all choices of the other arguments), followed by the fixed-point count of
/// the diagonal `x -> f(x, .., x)`.
pub fn fixed_point_profile(a: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = a.size();
    let sig = a.signature();
    (0..sig.len())
        .map(|s| {
            let k = sig.arity(s);
            let mut counts = Vec::new();
            if k > 0 {
                for pos in 0..k {
                    let mut others = vec![0; k - 1];
                    loop {
                        let mut args = Vec::with_capacity(k);
                        let fixed = (0..n)
                            .filter(|&x| {
                                args.clear();
                                args.extend_from_slice(&others[..pos]);
                                args.push(x);
                                args.extend_from_slice(&others[pos..]);
                                a.op(s, &args) == x
                            })
                            .count();
                        counts.push(fixed);
                        if !crate::signature::advance(&mut others, n) {
                            break;
                        }
                    }
                }
            }
            counts.sort_unstable();
            let diagonal = (0..n).filter(|&x| a.op(s, &vec![x; k]) == x).count();
            counts.push(diagonal);
            counts
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::samples;
    use crate::signature::product_algebra;

    fn z2() -> Arc<FiniteAlgebra> {
        Arc::new(samples::z(2))
    }

    /// Z2 transported along the swap 0 <-> 1: x * y = x + y + 1.
    fn z2_swapped() -> Arc<FiniteAlgebra> {
        let sig = samples::binary_signature();
        Arc::new(FiniteAlgebra::from_tables(None, sig, 2, vec![vec![1, 0, 0, 1]]).unwrap())
    }

    #[test]
    fn check_iso_examples() {
        let z = z2();
        let id = Hom::identity(&z);
        assert!(check_iso(&id, &id).is_ok());
        let c0 = check_hom(&z, &z, vec![0, 0]).unwrap();
        assert_eq!(
            check_iso(&c0, &c0).unwrap_err(),
            Error::NotIsomorphism(IsoViolation::Domain {
                element: 1,
                round_trip: 0
            })
        );
    }

    #[test]
    fn find_iso_examples() {
        let z = z2();
        let s = z2_swapped();
        let iso = find_iso(&z, &s).unwrap();
        assert_eq!(iso.forward.map(), &[1, 0]);
        assert!(find_iso(&z, &Arc::new(samples::m2())).is_none());
        assert_eq!(find_iso(&z, &z).unwrap(), Iso::refl(&z));
        assert!(find_iso(&z, &Arc::new(samples::z(3))).is_none());
    }

    #[test]
    fn composition_and_symmetry() {
        let z = z2();
        let s = z2_swapped();
        let i = find_iso(&z, &s).unwrap();
        assert_eq!(compose_iso(&Iso::refl(&z), &i).unwrap(), i);
        assert_eq!(compose_iso(&i, &i.sym()).unwrap(), Iso::refl(&z));
        // swap on Z2 viewed as an automorphism-like pair through the copy
        let back = compose_iso(&i.sym(), &i).unwrap();
        assert_eq!(back.forward.map(), &[0, 1]);
        assert!(compose_iso(&i, &i).is_err());
    }

    #[test]
    fn products_of_isos() {
        let z = z2();
        let s = z2_swapped();
        let pa = product_algebra(&[z.clone(), z.clone()]).unwrap();
        let pb = product_algebra(&[s.clone(), z.clone()]).unwrap();
        let swap = find_iso(&z, &s).unwrap();
        let iso = product_iso(&pa, &pb, &[swap.clone(), Iso::refl(&z)]).unwrap();
        for x in 0..4 {
            let d = pa.codec.decode(x);
            assert_eq!(pb.codec.decode(iso.forward.apply(x)), vec![1 - d[0], d[1]]);
        }
        let refl = product_iso(&pa, &pa, &[Iso::refl(&z), Iso::refl(&z)]).unwrap();
        assert_eq!(refl, Iso::refl(&pa.algebra));
        for (i, factor_iso) in [swap, Iso::refl(&z)].iter().enumerate() {
            let lhs =
                compose_hom(&iso.forward, &crate::hom::projection_hom(&pb, i).unwrap()).unwrap();
            let rhs = compose_hom(
                &crate::hom::projection_hom(&pa, i).unwrap(),
                &factor_iso.forward,
            )
            .unwrap();
            assert_eq!(lhs.map(), rhs.map());
        }
    }

    #[test]
    fn profile_is_invariant() {
        let z = z2();
        let s = z2_swapped();
        assert_eq!(fixed_point_profile(&z), fixed_point_profile(&s));
        assert_ne!(fixed_point_profile(&z), fixed_point_profile(&samples::m2()));
    }
}
