//! Subuniverses, generated subuniverses, induced subalgebras and the
//! subalgebra and homomorphic-image relations.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hom::{search_homs, Hom, SearchOptions};
use crate::iso::{find_iso, Iso};
use crate::par::{self, Exec};
use crate::signature::{for_each_tuple_over, same_algebra, Element, FiniteAlgebra};
use crate::term::{enumerate_terms, interpret, Environment};

/// A tuple from the subset whose image leaves the subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureViolation {
    pub symbol: String,
    pub args: Vec<Element>,
    pub result: Element,
}

impl fmt::Display for ClosureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "symbol `{}` at {:?} gives {} outside the subset",
            self.symbol, self.args, self.result
        )
    }
}

/// A subset of an algebra's carrier closed under every operation.
#[derive(Clone, Debug)]
pub struct Subuniverse {
    algebra: Arc<FiniteAlgebra>,
    members: Vec<Element>,
}

impl PartialEq for Subuniverse {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && same_algebra(&self.algebra, &other.algebra)
    }
}

impl Subuniverse {
    /// Sorts and deduplicates `members`, then checks closure.
    pub fn new(algebra: Arc<FiniteAlgebra>, mut members: Vec<Element>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        is_closed(&algebra, &members)?;
        Ok(Subuniverse { algebra, members })
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    /// Ascending.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Checks that `subset` is closed under all operations of `alg`. Fails with
/// [`Error::NotClosed`] on the first escaping tuple.
pub fn is_closed(alg: &FiniteAlgebra, subset: &[Element]) -> Result<()> {
    alg.check_element(subset)?;
    let mut inside = vec![false; alg.size()];
    for &x in subset {
        inside[x] = true;
    }
    let mut members: Vec<Element> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    let sig = alg.signature();
    for s in 0..sig.len() {
        let mut violation = None;
        for_each_tuple_over(&members, sig.arity(s), |args| {
            let r = alg.op(s, args);
            if inside[r] {
                true
            } else {
                violation = Some(ClosureViolation {
                    symbol: sig.symbol(s).name.clone(),
                    args: args.to_vec(),
                    result: r,
                });
                false
            }
        });
        if let Some(v) = violation {
            return Err(Error::NotClosed(v));
        }
    }
    Ok(())
}

/// The subuniverse generated by `generators`, by worklist: each newly added
/// element is combined with everything reached so far.
pub fn sg_closure(alg: &Arc<FiniteAlgebra>, generators: &[Element]) -> Result<Subuniverse> {
    alg.check_element(generators)?;
    let n = alg.size();
    let sig = alg.signature();
    let mut inside = vec![false; n];
    let mut reached: Vec<Element> = Vec::new();
    let add = |x: Element, inside: &mut Vec<bool>, reached: &mut Vec<Element>| {
        if !inside[x] {
            inside[x] = true;
            reached.push(x);
        }
    };
    for &g in generators {
        add(g, &mut inside, &mut reached);
    }
    for s in (0..sig.len()).filter(|&s| sig.arity(s) == 0) {
        add(alg.op(s, &[]), &mut inside, &mut reached);
    }
    // tuples over reached[..done] have all been applied already
    let mut done = 0;
    while done < reached.len() {
        let frontier = reached.len();
        let snapshot = reached.clone();
        let mut found = Vec::new();
        for s in (0..sig.len()).filter(|&s| sig.arity(s) > 0) {
            for_each_tuple_over(&snapshot, sig.arity(s), |args| {
                // skip tuples made only of old elements
                if args.iter().any(|a| snapshot[done..].contains(a)) {
                    found.push(alg.op(s, args));
                }
                true
            });
        }
        for x in found {
            add(x, &mut inside, &mut reached);
        }
        done = frontier;
    }
    reached.sort_unstable();
    Ok(Subuniverse {
        algebra: alg.clone(),
        members: reached,
    })
}

/// Evidence that `B <= A`: an injective verified hom `B -> A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubalgebraWitness {
    pub embedding: Hom,
}

impl SubalgebraWitness {
    pub fn new(embedding: Hom) -> Result<Self> {
        embedding.require_verified()?;
        if !embedding.kind().injective {
            return Err(Error::Mismatch("embedding is not injective".into()));
        }
        Ok(SubalgebraWitness { embedding })
    }

    /// `A <= A`.
    pub fn refl(a: &Arc<FiniteAlgebra>) -> Self {
        SubalgebraWitness {
            embedding: Hom::identity(a),
        }
    }

    /// `C <= B` and `B <= A` give `C <= A`.
    pub fn trans(&self, outer: &SubalgebraWitness) -> Result<Self> {
        SubalgebraWitness::new(crate::hom::compose_hom(&self.embedding, &outer.embedding)?)
    }

    /// `C ≅ B` and `B <= A` give `C <= A`.
    pub fn from_iso(iso: &Iso, sub: &SubalgebraWitness) -> Result<Self> {
        SubalgebraWitness::new(crate::hom::compose_hom(&iso.forward, &sub.embedding)?)
    }

    pub fn sub(&self) -> &Arc<FiniteAlgebra> {
        self.embedding.domain()
    }

    pub fn sup(&self) -> &Arc<FiniteAlgebra> {
        self.embedding.codomain()
    }
}

/// The algebra induced on a non-empty subuniverse, re-indexed ascending,
/// with its inclusion.
pub fn subuniv_algebra(s: &Subuniverse) -> Result<(Arc<FiniteAlgebra>, SubalgebraWitness)> {
    if s.members.is_empty() {
        return Err(Error::EmptySubuniverse);
    }
    let members = &s.members;
    let alg = &s.algebra;
    let mut lifted = Vec::new();
    let sub = FiniteAlgebra::from_fn(None, alg.signature().clone(), members.len(), |f, args| {
        lifted.clear();
        lifted.extend(args.iter().map(|&i| members[i]));
        members
            .binary_search(&alg.op(f, &lifted))
            .expect("subuniverse is closed")
    })?;
    let sub = Arc::new(sub);
    let inclusion = Hom::by_theorem(sub.clone(), alg.clone(), members.clone());
    Ok((
        sub,
        SubalgebraWitness {
            embedding: inclusion,
        },
    ))
}

/// Every subuniverse of `alg`, ordered by size and then lexicographically.
/// Scans all `2^size` subsets.
pub fn all_subuniverses(alg: &Arc<FiniteAlgebra>) -> Vec<Subuniverse> {
    all_subuniverses_with(alg, Exec::default())
}

pub fn all_subuniverses_with(alg: &Arc<FiniteAlgebra>, exec: Exec) -> Vec<Subuniverse> {
    let n = alg.size();
    assert!(
        n < usize::BITS as usize,
        "carrier too large to scan subsets"
    );
    let masks: Vec<usize> = (0..1usize << n).collect();
    let closed = par::map_collect(exec, masks, |mask| {
        let subset: Vec<Element> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        is_closed(alg, &subset).ok().map(|_| subset)
    });
    let mut out: Vec<Vec<Element>> = closed.into_iter().flatten().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter()
        .map(|members| Subuniverse {
            algebra: alg.clone(),
            members,
        })
        .collect()
}

/// Intersection of a non-empty list of subuniverses of one algebra.
pub fn intersect_subuniverses(list: &[Subuniverse]) -> Result<Subuniverse> {
    let first = list.first().ok_or(Error::EmptyFamily)?;
    if list
        .iter()
        .any(|s| !same_algebra(&s.algebra, &first.algebra))
    {
        return Err(Error::Mismatch("subuniverses of different algebras".into()));
    }
    let members: Vec<Element> = first
        .members
        .iter()
        .copied()
        .filter(|x| list.iter().all(|s| s.contains(*x)))
        .collect();
    Subuniverse::new(first.algebra.clone(), members)
}

/// The set of values of terms evaluated at elements of `y`, computed by
/// evaluating every height-1 term over the current set until nothing new
/// appears.
pub fn term_image_closure(alg: &Arc<FiniteAlgebra>, y: &[Element]) -> Result<Subuniverse> {
    alg.check_element(y)?;
    let sig = alg.signature();
    let mut current: BTreeSet<Element> = y.iter().copied().collect();
    loop {
        let nvars = if current.is_empty() {
            0
        } else {
            sig.max_arity().max(1)
        };
        let terms = enumerate_terms(sig, nvars, 1);
        let pool: Vec<Element> = current.iter().copied().collect();
        let mut next = current.clone();
        for_each_tuple_over(&pool, nvars, |assignment| {
            let env = Environment::new(alg, assignment.to_vec()).expect("in range");
            for t in &terms {
                next.insert(interpret(t, &env).expect("well-formed"));
            }
            true
        });
        if next.len() == current.len() {
            break;
        }
        current = next;
    }
    Ok(Subuniverse {
        algebra: alg.clone(),
        members: current.into_iter().collect(),
    })
}

/// Decides `B <= A` by searching for an injective hom.
pub fn is_subalgebra_of(
    b: &Arc<FiniteAlgebra>,
    a: &Arc<FiniteAlgebra>,
) -> Result<Option<SubalgebraWitness>> {
    let found = search_homs(b, a, &SearchOptions::injective().with_limit(1))?;
    Ok(found
        .into_iter()
        .next()
        .map(|embedding| SubalgebraWitness { embedding }))
}

/// `B` is isomorphic to a subalgebra of some class member.
#[derive(Clone, Debug)]
pub struct ClassWitness {
    pub member_index: usize,
    pub member: Arc<FiniteAlgebra>,
    pub subuniverse: Subuniverse,
    pub subalgebra: Arc<FiniteAlgebra>,
    /// From `B` to the induced subalgebra.
    pub iso: Iso,
}

impl ClassWitness {
    /// Re-checks the witness for `b` against `class`. Any list containing
    /// the member accepts the same witness.
    pub fn verify(&self, b: &Arc<FiniteAlgebra>, class: &[Arc<FiniteAlgebra>]) -> bool {
        class.iter().any(|m| same_algebra(m, &self.member))
            && same_algebra(self.subuniverse.algebra(), &self.member)
            && is_closed(&self.member, self.subuniverse.members()).is_ok()
            && subuniv_algebra(&self.subuniverse)
                .map(|(s, _)| s.same_structure(&self.subalgebra))
                .unwrap_or(false)
            && same_algebra(self.iso.forward.domain(), b)
            && same_algebra(self.iso.forward.codomain(), &self.subalgebra)
            && crate::iso::check_iso(&self.iso.forward, &self.iso.backward).is_ok()
    }
}

/// Result of [`is_subalgebra_of_class`]. `exhaustive` is false when some
/// member was too large to enumerate every subuniverse, so a `None` witness
/// is not conclusive.
#[derive(Clone, Debug)]
pub struct ClassQuery {
    pub witness: Option<ClassWitness>,
    pub exhaustive: bool,
}

/// Members up to this size have every subuniverse enumerated.
pub const EXHAUSTIVE_SUBUNIVERSE_LIMIT: usize = 4;

fn candidate_subuniverses(member: &Arc<FiniteAlgebra>) -> (Vec<Subuniverse>, bool) {
    if member.size() <= EXHAUSTIVE_SUBUNIVERSE_LIMIT {
        return (all_subuniverses(member), true);
    }
    let n = member.size();
    let mut seen: BTreeSet<Vec<Element>> = BTreeSet::new();
    let mut gens: Vec<Vec<Element>> = vec![vec![]];
    gens.extend((0..n).map(|x| vec![x]));
    for x in 0..n {
        for y in x + 1..n {
            gens.push(vec![x, y]);
        }
    }
    let mut out = Vec::new();
    for g in gens {
        let s = sg_closure(member, &g).expect("in range");
        if seen.insert(s.members.clone()) {
            out.push(s);
        }
    }
    out.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    (out, false)
}

/// Searches the class, in member order and then subuniverse order, for a
/// subalgebra isomorphic to `b`.
pub fn is_subalgebra_of_class(
    b: &Arc<FiniteAlgebra>,
    class: &[Arc<FiniteAlgebra>],
) -> Result<ClassQuery> {
    if class.iter().any(|m| m.signature() != b.signature()) {
        return Err(Error::SignatureMismatch);
    }
    let mut exhaustive = true;
    for (member_index, member) in class.iter().enumerate() {
        let (candidates, complete) = candidate_subuniverses(member);
        exhaustive &= complete;
        let candidates: Vec<Subuniverse> = candidates
            .into_iter()
            .filter(|s| s.len() == b.size())
            .collect();
        let found = par::find_map_first(Exec::default(), candidates, |s| {
            let (sub, _) = subuniv_algebra(&s).ok()?;
            let iso = find_iso(b, &sub)?;
            Some((s, sub, iso))
        });
        if let Some((subuniverse, subalgebra, iso)) = found {
            return Ok(ClassQuery {
                witness: Some(ClassWitness {
                    member_index,
                    member: member.clone(),
                    subuniverse,
                    subalgebra,
                    iso,
                }),
                exhaustive,
            });
        }
    }
    Ok(ClassQuery {
        witness: None,
        exhaustive,
    })
}

/// A surjective hom `a -> b`, if one exists.
pub fn is_hom_image_of(b: &Arc<FiniteAlgebra>, a: &Arc<FiniteAlgebra>) -> Result<Option<Hom>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if b.size() > a.size() {
        return Ok(None);
    }
    Ok(
        search_homs(a, b, &SearchOptions::surjective().with_limit(1))?
            .into_iter()
            .next(),
    )
}

/// The first class member (with its epimorphism) that maps onto `b`.
pub fn is_hom_image_of_class(
    b: &Arc<FiniteAlgebra>,
    class: &[Arc<FiniteAlgebra>],
) -> Result<Option<(usize, Hom)>> {
    if class.iter().any(|m| m.signature() != b.signature()) {
        return Err(Error::SignatureMismatch);
    }
    let indexed: Vec<(usize, Arc<FiniteAlgebra>)> = class.iter().cloned().enumerate().collect();
    Ok(par::find_map_first(Exec::default(), indexed, |(i, a)| {
        is_hom_image_of(b, &a).ok().flatten().map(|h| (i, h))
    }))
}
