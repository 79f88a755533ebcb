//! Partitions in min-representative normal form, congruences, kernels and
//! quotient algebras.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hom::Hom;
use crate::signature::{advance, same_algebra, Element, FiniteAlgebra};

/// A partition of `{0..n-1}` stored as `labels[x] = min of x's block`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<Element>,
}

impl Partition {
    /// Normalizes arbitrary block keys: elements with equal keys share a
    /// block.
    pub fn from_keys<K: Eq + Hash>(keys: &[K]) -> Self {
        let mut first: HashMap<&K, Element> = HashMap::new();
        let labels = keys
            .iter()
            .enumerate()
            .map(|(x, k)| *first.entry(k).or_insert(x))
            .collect();
        Partition { labels }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Element>]) -> Result<Self> {
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotPartition(format!("block {b} is empty")));
            }
            for &x in block {
                match owner.get(x) {
                    None => {
                        return Err(Error::NotPartition(format!(
                            "element {x} out of range for size {n}"
                        )))
                    }
                    Some(Some(_)) => {
                        return Err(Error::NotPartition(format!("element {x} occurs twice")))
                    }
                    Some(None) => owner[x] = Some(b),
                }
            }
        }
        if let Some(x) = owner.iter().position(Option::is_none) {
            return Err(Error::NotPartition(format!("element {x} is in no block")));
        }
        Ok(Self::from_keys(&owner))
    }

    pub fn discrete(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    pub fn labels(&self) -> &[Element] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn related(&self, x: Element, y: Element) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Block minima, ascending.
    pub fn representatives(&self) -> Vec<Element> {
        (0..self.labels.len())
            .filter(|&x| self.labels[x] == x)
            .collect()
    }

    pub fn num_blocks(&self) -> usize {
        self.representatives().len()
    }

    /// Blocks ordered by minimum element, each ascending.
    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let reps = self.representatives();
        let mut blocks = vec![Vec::new(); reps.len()];
        let index = self.block_indices();
        for x in 0..self.labels.len() {
            blocks[index[x]].push(x);
        }
        blocks
    }

    /// For each element, the position of its block among
    /// [`Partition::representatives`].
    pub fn block_indices(&self) -> Vec<usize> {
        let mut rank = vec![usize::MAX; self.labels.len()];
        let mut next = 0;
        for (x, r) in rank.iter_mut().enumerate() {
            if self.labels[x] == x {
                *r = next;
                next += 1;
            }
        }
        self.labels.iter().map(|&l| rank[l]).collect()
    }

    pub(crate) fn is_normalized(&self) -> bool {
        self.labels
            .iter()
            .enumerate()
            .all(|(x, &l)| l <= x && self.labels[l] == l)
    }
}

/// A witness that a partition is not compatible: `args` and `other` are
/// related coordinatewise but `f(args)` and `f(other)` are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceViolation {
    pub symbol: String,
    pub args: Vec<Element>,
    pub other: Vec<Element>,
    pub results: (Element, Element),
}

impl fmt::Display for CongruenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "symbol `{}`: {:?} and {:?} are related but give unrelated {} and {}",
            self.symbol, self.args, self.other, self.results.0, self.results.1
        )
    }
}

/// A partition of an algebra's carrier compatible with every operation.
#[derive(Clone, Debug)]
pub struct Congruence {
    algebra: Arc<FiniteAlgebra>,
    partition: Partition,
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.partition == other.partition && same_algebra(&self.algebra, &other.algebra)
    }
}

impl Congruence {
    pub(crate) fn new_unchecked(algebra: Arc<FiniteAlgebra>, partition: Partition) -> Self {
        debug_assert!(partition.is_normalized());
        if crate::recheck_enabled() {
            if let Some(v) = compatibility_violation(&algebra, &partition) {
                panic!("constructed partition is not a congruence: {v}");
            }
        }
        Congruence { algebra, partition }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn labels(&self) -> &[Element] {
        self.partition.labels()
    }

    pub fn blocks(&self) -> Vec<Vec<Element>> {
        self.partition.blocks()
    }

    pub fn discrete(algebra: &Arc<FiniteAlgebra>) -> Self {
        Congruence::new_unchecked(algebra.clone(), Partition::discrete(algebra.size()))
    }

    pub fn total(algebra: &Arc<FiniteAlgebra>) -> Self {
        Congruence::new_unchecked(algebra.clone(), Partition::total(algebra.size()))
    }
}

/// Compares every tuple with its tuple of block representatives; this is
/// equivalent to the pairwise compatibility condition.
fn compatibility_violation(alg: &FiniteAlgebra, p: &Partition) -> Option<CongruenceViolation> {
    let sig = alg.signature();
    let labels = p.labels();
    for s in 0..sig.len() {
        let k = sig.arity(s);
        let mut args = vec![0; k];
        loop {
            let reps: Vec<Element> = args.iter().map(|&a| labels[a]).collect();
            let (l, r) = (alg.op(s, &args), alg.op(s, &reps));
            if labels[l] != labels[r] {
                return Some(CongruenceViolation {
                    symbol: sig.symbol(s).name.clone(),
                    args,
                    other: reps,
                    results: (l, r),
                });
            }
            if !advance(&mut args, alg.size()) {
                break;
            }
        }
    }
    None
}

/// Checks that a partition given as blocks is a congruence of `alg`.
pub fn check_congruence(alg: &Arc<FiniteAlgebra>, blocks: &[Vec<Element>]) -> Result<Congruence> {
    check_partition(alg, Partition::from_blocks(alg.size(), blocks)?)
}

pub fn check_partition(alg: &Arc<FiniteAlgebra>, partition: Partition) -> Result<Congruence> {
    if partition.len() != alg.size() {
        return Err(Error::NotPartition(format!(
            "partition of {} elements for a carrier of size {}",
            partition.len(),
            alg.size()
        )));
    }
    let partition = Partition::from_keys(partition.labels());
    match compatibility_violation(alg, &partition) {
        Some(v) => Err(Error::NotCongruence(v)),
        None => Ok(Congruence {
            algebra: alg.clone(),
            partition,
        }),
    }
}

/// The kernel of a verified homomorphism.
pub fn kernel_congruence(h: &Hom) -> Result<Congruence> {
    let partition = crate::hom::kernel_pairs(h)?;
    Ok(Congruence::new_unchecked(h.domain().clone(), partition))
}

/// A quotient algebra with its canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<FiniteAlgebra>,
    pub projection: Hom,
    pub congruence: Congruence,
}

/// `alg / theta`. Classes are ordered by minimum representative and each
/// operation is evaluated on the tuple of representatives.
pub fn quotient(alg: &Arc<FiniteAlgebra>, theta: &Congruence) -> Result<Quotient> {
    if !same_algebra(alg, &theta.algebra) {
        return Err(Error::Mismatch(
            "congruence belongs to a different algebra".into(),
        ));
    }
    let reps = theta.partition.representatives();
    let index = theta.partition.block_indices();
    let name = alg.name().map(|n| format!("{n}/θ"));
    let q = FiniteAlgebra::from_fn(name, alg.signature().clone(), reps.len(), |s, args| {
        let lifted: Vec<Element> = args.iter().map(|&c| reps[c]).collect();
        index[alg.op(s, &lifted)]
    })?;
    let q = Arc::new(q);
    let projection = Hom::by_theorem(alg.clone(), q.clone(), index);
    Ok(Quotient {
        algebra: q,
        projection,
        congruence: theta.clone(),
    })
}

/// Disjoint sets over `{0..n-1}`; `find` returns the smallest element of
/// the set.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns whether they were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller element as root
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
