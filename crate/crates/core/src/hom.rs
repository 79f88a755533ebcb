//! Homomorphisms between finite algebras: verification, composition,
//! classification, equalizers, kernels, images, search, and the maps into
//! and out of finite products.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::congruence::Partition;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::signature::{advance, same_algebra, Element, FiniteAlgebra, Product};
use crate::subalg::{self, Subuniverse};

/// A total map between carriers. `verified` is set only when the map is
/// known to commute with every operation.
#[derive(Clone, Debug)]
pub struct Hom {
    domain: Arc<FiniteAlgebra>,
    codomain: Arc<FiniteAlgebra>,
    map: Vec<Element>,
    verified: bool,
}

impl PartialEq for Hom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && same_algebra(&self.domain, &other.domain)
            && same_algebra(&self.codomain, &other.codomain)
    }
}

impl Eq for Hom {}

/// Injectivity and surjectivity of a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismKind {
    pub injective: bool,
    pub surjective: bool,
}

impl MorphismKind {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// A failure of `h(f(a)) = f(h(a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomViolation {
    pub symbol: String,
    pub args: Vec<Element>,
    /// `h(f^A(args))`
    pub lhs: Element,
    /// `f^B(h(args))`
    pub rhs: Element,
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "symbol `{}` at {:?}: h(f(a)) = {} but f(h(a)) = {}",
            self.symbol, self.args, self.lhs, self.rhs
        )
    }
}

fn check_shape(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Element]) -> Result<()> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if map.len() != a.size() {
        return Err(Error::LengthMismatch {
            expected: a.size(),
            found: map.len(),
        });
    }
    b.check_element(map)
}

/// The first violation of compatibility in (symbol, flat index) order.
pub fn find_hom_violation(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    map: &[Element],
) -> Option<HomViolation> {
    let sig = a.signature();
    let mut image = Vec::new();
    for s in 0..sig.len() {
        let k = sig.arity(s);
        let mut args = vec![0; k];
        loop {
            image.clear();
            image.extend(args.iter().map(|&x| map[x]));
            let lhs = map[a.op(s, &args)];
            let rhs = b.op(s, &image);
            if lhs != rhs {
                return Some(HomViolation {
                    symbol: sig.symbol(s).name.clone(),
                    args,
                    lhs,
                    rhs,
                });
            }
            if !advance(&mut args, a.size()) {
                break;
            }
        }
    }
    None
}

/// Exhaustively checks that `map` is a homomorphism `a -> b`.
pub fn check_hom(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>, map: Vec<Element>) -> Result<Hom> {
    check_shape(a, b, &map)?;
    match find_hom_violation(a, b, &map) {
        Some(v) => Err(Error::NotHomomorphism(v)),
        None => Ok(Hom {
            domain: a.clone(),
            codomain: b.clone(),
            map,
            verified: true,
        }),
    }
}

impl Hom {
    /// A map with valid shape whose compatibility has not been checked.
    pub fn unverified(
        domain: Arc<FiniteAlgebra>,
        codomain: Arc<FiniteAlgebra>,
        map: Vec<Element>,
    ) -> Result<Self> {
        check_shape(&domain, &codomain, &map)?;
        Ok(Hom {
            domain,
            codomain,
            map,
            verified: false,
        })
    }

    /// A hom whose compatibility follows from a theorem. Re-checked when
    /// [`crate::recheck_enabled`] is on; a failure there is a bug.
    pub(crate) fn by_theorem(
        domain: Arc<FiniteAlgebra>,
        codomain: Arc<FiniteAlgebra>,
        map: Vec<Element>,
    ) -> Self {
        if crate::recheck_enabled() {
            if let Err(e) = check_hom(&domain, &codomain, map.clone()) {
                panic!("theorem-constructed map failed re-verification: {e}");
            }
        }
        Hom {
            domain,
            codomain,
            map,
            verified: true,
        }
    }

    pub fn identity(a: &Arc<FiniteAlgebra>) -> Self {
        Hom::by_theorem(a.clone(), a.clone(), (0..a.size()).collect())
    }

    pub fn domain(&self) -> &Arc<FiniteAlgebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteAlgebra> {
        &self.codomain
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    pub fn into_map(self) -> Vec<Element> {
        self.map
    }

    pub fn apply(&self, x: Element) -> Element {
        self.map[x]
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified)
        }
    }

    pub fn kind(&self) -> MorphismKind {
        classify(self)
    }

    /// Codomain elements not hit by the map, ascending.
    pub fn missed(&self) -> Vec<Element> {
        let mut hit = vec![false; self.codomain.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        (0..hit.len()).filter(|&y| !hit[y]).collect()
    }
}

/// Composite `h . g` of `g: A -> B` and `h: B -> C`.
pub fn compose_hom(g: &Hom, h: &Hom) -> Result<Hom> {
    g.require_verified()?;
    h.require_verified()?;
    if !same_algebra(&g.codomain, &h.domain) {
        return Err(Error::Mismatch(
            "codomain of the first map differs from the domain of the second".into(),
        ));
    }
    let map = g.map.iter().map(|&x| h.map[x]).collect();
    Ok(Hom::by_theorem(g.domain.clone(), h.codomain.clone(), map))
}

pub fn classify(h: &Hom) -> MorphismKind {
    let mut hits = vec![0usize; h.codomain.size()];
    for &y in &h.map {
        hits[y] += 1;
    }
    MorphismKind {
        injective: hits.iter().all(|&c| c <= 1),
        surjective: hits.iter().all(|&c| c >= 1),
    }
}

fn same_endpoints(g: &Hom, h: &Hom) -> Result<()> {
    if same_algebra(&g.domain, &h.domain) && same_algebra(&g.codomain, &h.codomain) {
        Ok(())
    } else {
        Err(Error::Mismatch("maps have different endpoints".into()))
    }
}

/// The set of domain elements where `g` and `h` agree, ascending.
pub fn equalizer(g: &Hom, h: &Hom) -> Result<Vec<Element>> {
    same_endpoints(g, h)?;
    Ok((0..g.map.len()).filter(|&x| g.map[x] == h.map[x]).collect())
}

/// The fibers of `h` as a normalized partition of its domain.
pub fn kernel_pairs(h: &Hom) -> Result<Partition> {
    h.require_verified()?;
    Ok(Partition::from_keys(&h.map))
}

/// The image of a homomorphism as a subuniverse and as an algebra in its own
/// right.
#[derive(Clone, Debug)]
pub struct HomImage {
    pub subuniverse: Subuniverse,
    pub algebra: Arc<FiniteAlgebra>,
    /// Injective hom from the image algebra into the codomain.
    pub inclusion: Hom,
    /// Surjective hom from the domain onto the image algebra.
    pub corestriction: Hom,
}

pub fn image_algebra(h: &Hom) -> Result<HomImage> {
    h.require_verified()?;
    let mut members = h.map.clone();
    members.sort_unstable();
    members.dedup();
    // homomorphic images are closed; Subuniverse::new re-checks closure
    let subuniverse = Subuniverse::new(h.codomain.clone(), members)?;
    let (algebra, witness) = subalg::subuniv_algebra(&subuniverse)?;
    let members = subuniverse.members();
    let map = h
        .map
        .iter()
        .map(|y| members.binary_search(y).expect("image member"))
        .collect();
    let corestriction = Hom::by_theorem(h.domain.clone(), algebra.clone(), map);
    Ok(HomImage {
        subuniverse,
        algebra,
        inclusion: witness.embedding,
        corestriction,
    })
}

/// Constraints for [`search_homs`].
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub limit: Option<usize>,
    pub require_injective: bool,
    pub require_surjective: bool,
    /// Prescribed values, indexed by domain element.
    pub fixed: Vec<(Element, Element)>,
    pub exec: Exec,
}

impl SearchOptions {
    pub fn injective() -> Self {
        SearchOptions {
            require_injective: true,
            ..Default::default()
        }
    }

    pub fn surjective() -> Self {
        SearchOptions {
            require_surjective: true,
            ..Default::default()
        }
    }

    pub fn bijective() -> Self {
        SearchOptions {
            require_injective: true,
            require_surjective: true,
            ..Default::default()
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

/// Backtracking state: a partial map plus an undo trail.
#[derive(Clone)]
struct SearchState {
    map: Vec<Option<Element>>,
    decided: Vec<Element>,
    hits: Vec<usize>,
    covered: usize,
}

struct Searcher<'a> {
    dom: &'a FiniteAlgebra,
    cod: &'a FiniteAlgebra,
    injective: bool,
    surjective: bool,
}

impl Searcher<'_> {
    fn new_state(&self) -> SearchState {
        SearchState {
            map: vec![None; self.dom.size()],
            decided: Vec::new(),
            hits: vec![0; self.cod.size()],
            covered: 0,
        }
    }

    /// Assigns `pos := val` and propagates: every operation tuple whose
    /// positions are all decided forces the value of its result position.
    /// On failure the state may be partially updated; callers undo to a mark.
    fn assign(&self, st: &mut SearchState, pos: Element, val: Element) -> bool {
        let sig = self.dom.signature();
        let mut queue = vec![(pos, val)];
        let mut args = Vec::new();
        let mut image = Vec::new();
        while let Some((p, v)) = queue.pop() {
            match st.map[p] {
                Some(w) if w == v => continue,
                Some(_) => return false,
                None => {}
            }
            if self.injective && st.hits[v] > 0 {
                return false;
            }
            st.map[p] = Some(v);
            if st.hits[v] == 0 {
                st.covered += 1;
            }
            st.hits[v] += 1;
            st.decided.push(p);
            let d = st.decided.len();
            let newest = d - 1;
            for s in 0..sig.len() {
                let k = sig.arity(s);
                if k == 0 {
                    continue;
                }
                let mut idx = vec![0usize; k];
                loop {
                    if idx.contains(&newest) {
                        args.clear();
                        args.extend(idx.iter().map(|&i| st.decided[i]));
                        image.clear();
                        image.extend(args.iter().map(|&x| st.map[x].expect("decided")));
                        queue.push((self.dom.op(s, &args), self.cod.op(s, &image)));
                    }
                    if !advance(&mut idx, d) {
                        break;
                    }
                }
            }
        }
        if self.surjective {
            let undecided = st.map.len() - st.decided.len();
            if undecided < self.cod.size() - st.covered {
                return false;
            }
        }
        true
    }

    fn undo(&self, st: &mut SearchState, mark: usize) {
        while st.decided.len() > mark {
            let p = st.decided.pop().expect("non-empty");
            let v = st.map[p].take().expect("decided");
            st.hits[v] -= 1;
            if st.hits[v] == 0 {
                st.covered -= 1;
            }
        }
    }

    /// Initial propagation: prescribed values and the constants.
    fn seed(&self, fixed: &[(Element, Element)]) -> Option<SearchState> {
        let mut st = self.new_state();
        let sig = self.dom.signature();
        for s in (0..sig.len()).filter(|&s| sig.arity(s) == 0) {
            if !self.assign(&mut st, self.dom.op(s, &[]), self.cod.op(s, &[])) {
                return None;
            }
        }
        for &(x, y) in fixed {
            if !self.assign(&mut st, x, y) {
                return None;
            }
        }
        Some(st)
    }

    /// Depth-first over the smallest undecided position with ascending
    /// values. Complete maps are produced in lexicographic order.
    fn dfs(
        &self,
        st: &mut SearchState,
        visit: &mut dyn FnMut(Vec<Element>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(pos) = st.map.iter().position(Option::is_none) else {
            return visit(st.map.iter().map(|v| v.expect("complete")).collect());
        };
        for v in 0..self.cod.size() {
            let mark = st.decided.len();
            if self.assign(st, pos, v) {
                self.dfs(st, visit)?;
            }
            self.undo(st, mark);
        }
        ControlFlow::Continue(())
    }
}

fn search_preconditions(a: &FiniteAlgebra, b: &FiniteAlgebra, opts: &SearchOptions) -> Result<()> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    for &(x, y) in &opts.fixed {
        a.check_element(&[x])?;
        b.check_element(&[y])?;
    }
    Ok(())
}

/// Calls `visit` on every hom map `a -> b` satisfying `opts` in
/// lexicographic order, until it breaks. Sequential; `opts.limit` and
/// `opts.exec` are ignored.
pub fn visit_homs(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    opts: &SearchOptions,
    mut visit: impl FnMut(Vec<Element>) -> ControlFlow<()>,
) -> Result<()> {
    search_preconditions(a, b, opts)?;
    let searcher = Searcher {
        dom: a,
        cod: b,
        injective: opts.require_injective,
        surjective: opts.require_surjective,
    };
    if let Some(mut st) = searcher.seed(&opts.fixed) {
        let _ = searcher.dfs(&mut st, &mut visit);
    }
    Ok(())
}

/// All homomorphisms `a -> b` satisfying `opts`, sorted lexicographically by
/// map and truncated to `opts.limit`.
pub fn search_homs(
    a: &Arc<FiniteAlgebra>,
    b: &Arc<FiniteAlgebra>,
    opts: &SearchOptions,
) -> Result<Vec<Hom>> {
    search_preconditions(a, b, opts)?;
    let searcher = Searcher {
        dom: a,
        cod: b,
        injective: opts.require_injective,
        surjective: opts.require_surjective,
    };
    let Some(root) = searcher.seed(&opts.fixed) else {
        return Ok(Vec::new());
    };
    let limit = opts.limit.unwrap_or(usize::MAX);
    if limit == 0 {
        return Ok(Vec::new());
    }

    let maps: Vec<Vec<Element>> = match root.map.iter().position(Option::is_none) {
        // with a limit, stop early rather than exploring every subtree
        Some(pos) if opts.limit.is_none() && opts.exec == Exec::Parallel => {
            let branches = par::map_collect(opts.exec, (0..b.size()).collect(), |v| {
                let mut st = root.clone();
                let mut found = Vec::new();
                if searcher.assign(&mut st, pos, v) {
                    let _ = searcher.dfs(&mut st, &mut |m| {
                        found.push(m);
                        ControlFlow::Continue(())
                    });
                }
                found
            });
            branches.into_iter().flatten().collect()
        }
        _ => {
            let mut st = root;
            let mut found = Vec::new();
            let _ = searcher.dfs(&mut st, &mut |m| {
                found.push(m);
                if found.len() >= limit {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            found
        }
    };
    debug_assert!(maps.windows(2).all(|w| w[0] < w[1]));
    Ok(maps
        .into_iter()
        .map(|m| Hom::by_theorem(a.clone(), b.clone(), m))
        .collect())
}

fn check_family(family: &[Arc<FiniteAlgebra>], homs: &[Hom]) -> Result<()> {
    if homs.len() != family.len() {
        return Err(Error::Mismatch(format!(
            "{} maps for a family of {}",
            homs.len(),
            family.len()
        )));
    }
    homs.iter().try_for_each(Hom::require_verified)
}

/// `a -> (h_0(a), .., h_{k-1}(a))` into the product of the codomains.
pub fn tuple_hom_into_product(
    a: &Arc<FiniteAlgebra>,
    product: &Product,
    homs: &[Hom],
) -> Result<Hom> {
    check_family(&product.factors, homs)?;
    for (h, b) in homs.iter().zip(&product.factors) {
        if !same_algebra(&h.domain, a) || !same_algebra(&h.codomain, b) {
            return Err(Error::Mismatch(
                "map endpoints do not match the shared domain and the factor".into(),
            ));
        }
    }
    let map = (0..a.size())
        .map(|x| {
            let t: Vec<Element> = homs.iter().map(|h| h.map[x]).collect();
            product.codec.encode(&t)
        })
        .collect();
    Ok(Hom::by_theorem(a.clone(), product.algebra.clone(), map))
}

/// The componentwise map `prod A_i -> prod B_i` given `h_i: A_i -> B_i`.
pub fn factorwise_product_hom(domain: &Product, codomain: &Product, homs: &[Hom]) -> Result<Hom> {
    check_family(&domain.factors, homs)?;
    check_family(&codomain.factors, homs)?;
    for ((h, a), b) in homs.iter().zip(&domain.factors).zip(&codomain.factors) {
        if !same_algebra(&h.domain, a) || !same_algebra(&h.codomain, b) {
            return Err(Error::Mismatch(
                "map endpoints do not match the factors".into(),
            ));
        }
    }
    let map = (0..domain.algebra.size())
        .map(|x| {
            let t: Vec<Element> = domain
                .codec
                .decode(x)
                .into_iter()
                .zip(homs)
                .map(|(xi, h)| h.map[xi])
                .collect();
            codomain.codec.encode(&t)
        })
        .collect();
    Ok(Hom::by_theorem(
        domain.algebra.clone(),
        codomain.algebra.clone(),
        map,
    ))
}

/// The projection `prod B -> B_i`.
pub fn projection_hom(product: &Product, i: usize) -> Result<Hom> {
    let factor = product.factors.get(i).ok_or(Error::IndexOutOfRange {
        index: i,
        len: product.factors.len(),
    })?;
    let map = (0..product.algebra.size())
        .map(|e| product.codec.component(e, i))
        .collect();
    Ok(Hom::by_theorem(
        product.algebra.clone(),
        factor.clone(),
        map,
    ))
}
