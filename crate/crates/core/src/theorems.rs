//! The first homomorphism and isomorphism theorems and homomorphism
//! factoring, as constructions that return checked witnesses.

use std::sync::Arc;

use crate::congruence::{kernel_congruence, quotient, Quotient};
use crate::error::{Error, Result};
use crate::hom::Hom;
use crate::iso::{check_iso, invert, Iso};
use crate::signature::{same_algebra, Element, FiniteAlgebra};
use crate::subalg::SubalgebraWitness;

/// `h = mediating . projection`, with the projection onto `A / ker h`
/// surjective and the mediating map injective.
#[derive(Clone, Debug)]
pub struct HomDecomposition {
    pub quotient: Quotient,
    pub mediating: Hom,
    /// `A / ker h <= B` via the mediating map.
    pub embedding: SubalgebraWitness,
}

impl HomDecomposition {
    pub fn quotient_algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.quotient.algebra
    }

    pub fn projection(&self) -> &Hom {
        &self.quotient.projection
    }
}

pub fn first_hom_decomposition(h: &Hom) -> Result<HomDecomposition> {
    h.require_verified()?;
    let theta = kernel_congruence(h)?;
    let quotient = quotient(h.domain(), &theta)?;
    let reps = theta.partition().representatives();
    let map: Vec<Element> = reps.iter().map(|&r| h.apply(r)).collect();
    let mediating = Hom::by_theorem(quotient.algebra.clone(), h.codomain().clone(), map);

    let projection = &quotient.projection;
    assert!(
        (0..h.domain().size()).all(|x| mediating.apply(projection.apply(x)) == h.apply(x)),
        "h must factor through the quotient"
    );
    assert!(
        mediating.kind().injective,
        "mediating map must be injective"
    );
    assert!(
        projection.kind().surjective,
        "projection must be surjective"
    );

    let embedding = SubalgebraWitness::new(mediating.clone())?;
    Ok(HomDecomposition {
        quotient,
        mediating,
        embedding,
    })
}

/// For surjective `h: A -> B`, the isomorphism `A / ker h ≅ B`.
pub fn first_isomorphism(h: &Hom) -> Result<Iso> {
    h.require_verified()?;
    let missed = h.missed();
    if !missed.is_empty() {
        return Err(Error::NotSurjective { missed });
    }
    let d = first_hom_decomposition(h)?;
    let backward = Hom::by_theorem(
        h.codomain().clone(),
        d.quotient.algebra.clone(),
        invert(d.mediating.map()),
    );
    check_iso(&d.mediating, &backward)
}

/// Which preimage to use when inverting a surjection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PreimageChoice {
    #[default]
    Minimum,
    Maximum,
}

/// Given `g: A -> B` and surjective `h: A -> C` with `ker h ⊆ ker g`, the
/// unique hom `phi: C -> B` with `g = phi . h`. With `want_epi`, `g` must
/// also be surjective and then so is `phi`.
pub fn hom_factor(g: &Hom, h: &Hom, want_epi: bool) -> Result<Hom> {
    hom_factor_with(g, h, want_epi, PreimageChoice::Minimum)
}

pub fn hom_factor_with(g: &Hom, h: &Hom, want_epi: bool, choice: PreimageChoice) -> Result<Hom> {
    g.require_verified()?;
    h.require_verified()?;
    if !same_algebra(g.domain(), h.domain()) {
        return Err(Error::Mismatch("maps have different domains".into()));
    }
    let missed = h.missed();
    if !missed.is_empty() {
        return Err(Error::NotSurjective { missed });
    }
    if want_epi {
        let missed = g.missed();
        if !missed.is_empty() {
            return Err(Error::NotSurjective { missed });
        }
    }

    let mut min_pre: Vec<Option<Element>> = vec![None; h.codomain().size()];
    let mut max_pre: Vec<Element> = vec![0; h.codomain().size()];
    for x in 0..h.domain().size() {
        let c = h.apply(x);
        match min_pre[c] {
            None => min_pre[c] = Some(x),
            Some(m) if g.apply(m) != g.apply(x) => return Err(Error::KernelNotContained(m, x)),
            Some(_) => {}
        }
        max_pre[c] = x;
    }
    let preimage: Vec<Element> = match choice {
        PreimageChoice::Minimum => min_pre
            .into_iter()
            .map(|p| p.expect("surjective"))
            .collect(),
        PreimageChoice::Maximum => max_pre,
    };
    let map = preimage.iter().map(|&x| g.apply(x)).collect();
    let phi = Hom::by_theorem(h.codomain().clone(), g.codomain().clone(), map);
    debug_assert!((0..g.domain().size()).all(|x| phi.apply(h.apply(x)) == g.apply(x)));
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::samples;
    use crate::hom::{check_hom, compose_hom, projection_hom, tuple_hom_into_product};
    use crate::signature::product_algebra;

    #[test]
    fn decomposition_examples() {
        let z = Arc::new(samples::z(2));
        let d = first_hom_decomposition(&Hom::identity(&z)).unwrap();
        assert!(d.quotient_algebra().same_structure(&z));
        assert_eq!(d.mediating.map(), &[0, 1]);

        let c0 = check_hom(&z, &z, vec![0, 0]).unwrap();
        let d = first_hom_decomposition(&c0).unwrap();
        assert_eq!(d.quotient_algebra().size(), 1);
        assert_eq!(d.mediating.map(), &[0]);

        let p = product_algebra(&[z.clone(), z.clone()]).unwrap();
        let proj = projection_hom(&p, 0).unwrap();
        let d = first_hom_decomposition(&proj).unwrap();
        assert_eq!(d.mediating.map(), &[0, 1]);
        let back = compose_hom(d.projection(), &d.mediating).unwrap();
        assert_eq!(back.map(), proj.map());
    }

    #[test]
    fn isomorphism_examples() {
        let z = Arc::new(samples::z(2));
        let iso = first_isomorphism(&Hom::identity(&z)).unwrap();
        assert_eq!(iso.backward.map(), &[0, 1]);

        let p = product_algebra(&[z.clone(), z.clone()]).unwrap();
        let iso = first_isomorphism(&projection_hom(&p, 0).unwrap()).unwrap();
        assert_eq!(iso.forward.codomain().size(), 2);
        assert!(check_hom(
            iso.backward.domain(),
            iso.backward.codomain(),
            iso.backward.map().to_vec()
        )
        .is_ok());

        let diag = tuple_hom_into_product(&z, &p, &[Hom::identity(&z), Hom::identity(&z)]).unwrap();
        assert_eq!(
            first_isomorphism(&diag).unwrap_err(),
            Error::NotSurjective {
                missed: vec![p.codec.encode(&[0, 1]), p.codec.encode(&[1, 0])]
            }
        );
    }

    #[test]
    fn factoring_examples() {
        let z = Arc::new(samples::z(2));
        let id = Hom::identity(&z);
        assert_eq!(hom_factor(&id, &id, false).unwrap().map(), &[0, 1]);

        let z4 = Arc::new(samples::z(4));
        let mod2 = check_hom(&z4, &z, vec![0, 1, 0, 1]).unwrap();
        let one = Arc::new(samples::trivial(z.signature().clone()));
        let g = check_hom(&z4, &one, vec![0; 4]).unwrap();
        let phi = hom_factor(&g, &mod2, false).unwrap();
        assert_eq!(phi.map(), &[0, 0]);
        assert_eq!(compose_hom(&mod2, &phi).unwrap().map(), g.map());
        assert!(hom_factor(&g, &mod2, true).unwrap().kind().surjective);

        let p = product_algebra(&[z.clone(), z.clone()]).unwrap();
        let p1 = projection_hom(&p, 0).unwrap();
        let p2 = projection_hom(&p, 1).unwrap();
        assert_eq!(
            hom_factor(&p2, &p1, false).unwrap_err(),
            Error::KernelNotContained(p.codec.encode(&[0, 0]), p.codec.encode(&[0, 1]))
        );

        let c0 = check_hom(&z, &z, vec![0, 0]).unwrap();
        assert!(matches!(
            hom_factor(&id, &c0, false),
            Err(Error::NotSurjective { .. })
        ));
        assert!(matches!(
            hom_factor(&c0, &id, true),
            Err(Error::NotSurjective { .. })
        ));
    }
}
