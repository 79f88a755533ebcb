//! Computation with finite algebras over arbitrary finite signatures.
//!
//! Algebras are carriers `{0, .., n-1}` with one flat operation table per
//! symbol. On top of that the crate provides terms and their interpretation,
//! homomorphism checking and search, congruences and quotients, subuniverse
//! generation, and executable versions of the homomorphism and isomorphism
//! theorems. Every construction that is justified by a theorem returns a
//! result marked as verified; setting `UALG_DEBUG_RECHECK=1` (or running a
//! debug build) re-verifies those results exhaustively.

pub mod cli;
pub mod codec;
pub mod congruence;
pub mod error;
pub mod gen;
pub mod hom;
pub mod iso;
pub mod laws;
pub mod par;
pub mod signature;
pub mod subalg;
pub mod term;
pub mod theorems;

pub use congruence::{
    check_congruence, check_partition, kernel_congruence, quotient, Congruence,
    CongruenceViolation, Partition, Quotient,
};
pub use error::{Error, Result};
pub use hom::{
    check_hom, compose_hom, equalizer, factorwise_product_hom, image_algebra, kernel_pairs,
    projection_hom, search_homs, tuple_hom_into_product, Hom, HomImage, HomViolation, MorphismKind,
    SearchOptions,
};
pub use iso::{check_iso, compose_iso, find_iso, product_iso, Iso, IsoViolation};
pub use par::Exec;
pub use signature::{
    flat_index, product_algebra, validate_algebra, Element, FiniteAlgebra, Product, ProductCodec,
    RawAlgebra, Signature, Symbol, ValidationReport, Violation, ViolationReason,
};
pub use subalg::{
    all_subuniverses, intersect_subuniverses, is_closed, is_hom_image_of, is_hom_image_of_class,
    is_subalgebra_of, is_subalgebra_of_class, sg_closure, subuniv_algebra, term_image_closure,
    ClassQuery, ClassWitness, ClosureViolation, SubalgebraWitness, Subuniverse,
};
pub use term::{
    enumerate_terms, free_lift, interpret, parse_term, substitute, Environment, Term, VarContext,
};
pub use theorems::{
    first_hom_decomposition, first_isomorphism, hom_factor, hom_factor_with, HomDecomposition,
    PreimageChoice,
};

use std::sync::OnceLock;

/// Whether theorem-backed constructions should be re-verified exhaustively.
///
/// Always on in debug builds; in release builds controlled by
/// `UALG_DEBUG_RECHECK=1`.
pub fn recheck_enabled() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    cfg!(debug_assertions)
        || *FLAG.get_or_init(|| {
            std::env::var("UALG_DEBUG_RECHECK")
                .map(|v| v == "1")
                .unwrap_or(false)
        })
}
