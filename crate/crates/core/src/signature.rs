//! Signatures, finite algebras as operation tables, and finite products.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An element of a finite carrier `{0, .., size-1}`.
pub type Element = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols with their arities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    symbols: Vec<Symbol>,
}

/// Returns true for names of the form `x` followed by one or more digits.
pub(crate) fn is_variable_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

fn symbol_name_violations(name: &str) -> Option<ViolationReason> {
    if name.is_empty() {
        return Some(ViolationReason::EmptyName);
    }
    if is_variable_name(name) {
        return Some(ViolationReason::ReservedName);
    }
    name.chars()
        .find(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','))
        .map(ViolationReason::IllegalCharacter)
}

impl Signature {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols
            .into_iter()
            .map(|(name, arity)| Symbol {
                name: name.into(),
                arity,
            })
            .collect();
        let violations = Self::violations(&symbols);
        if violations.is_empty() {
            Ok(Signature { symbols })
        } else {
            Err(Error::Invalid(ValidationReport { violations }))
        }
    }

    fn violations(symbols: &[Symbol]) -> Vec<Violation> {
        let mut out = Vec::new();
        for (i, sym) in symbols.iter().enumerate() {
            if let Some(reason) = symbol_name_violations(&sym.name) {
                out.push(Violation::for_symbol(&sym.name, reason));
            }
            if symbols[..i].iter().any(|s| s.name == sym.name) {
                out.push(Violation::for_symbol(
                    &sym.name,
                    ViolationReason::DuplicateSymbol,
                ));
            }
        }
        out
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, index: usize) -> &Symbol {
        &self.symbols[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn arity(&self, index: usize) -> usize {
        self.symbols[index].arity
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    pub fn has_constants(&self) -> bool {
        self.symbols.iter().any(|s| s.arity == 0)
    }
}

/// Position of an argument tuple in a row-major table:
/// `sum args[i] * size^(k-1-i)`.
pub fn flat_index(size: usize, args: &[Element]) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

/// Advances `tuple` to its successor in row-major order over `{0..size-1}`
/// (last coordinate fastest). Returns false after the last tuple, leaving
/// `tuple` reset to all zeros.
pub(crate) fn advance(tuple: &mut [usize], size: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < size {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Calls `f` on every tuple of length `arity` drawn from `members`, in
/// lexicographic order of positions within `members`.
pub(crate) fn for_each_tuple_over(
    members: &[Element],
    arity: usize,
    mut f: impl FnMut(&[Element]) -> bool,
) -> bool {
    if members.is_empty() && arity > 0 {
        return true;
    }
    let mut idx = vec![0usize; arity];
    let mut tuple: Vec<Element> = vec![members.first().copied().unwrap_or(0); arity];
    loop {
        for (t, &i) in tuple.iter_mut().zip(&idx) {
            *t = members[i];
        }
        if !f(&tuple) {
            return false;
        }
        if !advance(&mut idx, members.len()) {
            return true;
        }
    }
}

/// A validated finite algebra: carrier `{0..size-1}` and one flat table per
/// symbol of the signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: Option<String>,
    signature: Arc<Signature>,
    size: usize,
    tables: Vec<Vec<Element>>,
}

impl FiniteAlgebra {
    /// Builds an algebra by evaluating `op(symbol_index, args)` on every
    /// argument tuple.
    pub fn from_fn(
        name: Option<String>,
        signature: Arc<Signature>,
        size: usize,
        mut op: impl FnMut(usize, &[Element]) -> Element,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(signature.len());
        for (s, sym) in signature.symbols().iter().enumerate() {
            let len = table_len(size, sym.arity).ok_or_else(|| {
                Error::Invalid(ValidationReport {
                    violations: vec![Violation::for_symbol(
                        &sym.name,
                        ViolationReason::TableTooLarge,
                    )],
                })
            })?;
            let mut table = Vec::with_capacity(len);
            let mut args = vec![0; sym.arity];
            if size > 0 || sym.arity == 0 {
                loop {
                    table.push(op(s, &args));
                    if !advance(&mut args, size) {
                        break;
                    }
                }
            }
            tables.push(table);
        }
        Self::from_tables(name, signature, size, tables)
    }

    /// Builds an algebra from tables listed in signature order.
    pub fn from_tables(
        name: Option<String>,
        signature: Arc<Signature>,
        size: usize,
        tables: Vec<Vec<Element>>,
    ) -> Result<Self> {
        let raw = RawAlgebra {
            name,
            size: size as i64,
            signature: signature
                .symbols()
                .iter()
                .map(|s| (s.name.clone(), s.arity))
                .collect(),
            operations: signature
                .symbols()
                .iter()
                .zip(tables)
                .map(|(s, t)| (s.name.clone(), t.into_iter().map(|e| e as i64).collect()))
                .collect(),
        };
        let mut alg = validate_algebra(raw)?;
        alg.signature = signature;
        Ok(alg)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, symbol: usize) -> &[Element] {
        &self.tables[symbol]
    }

    pub fn tables(&self) -> &[Vec<Element>] {
        &self.tables
    }

    /// Applies symbol number `symbol` to `args` without checks beyond debug
    /// assertions.
    #[inline]
    pub fn op(&self, symbol: usize, args: &[Element]) -> Element {
        debug_assert_eq!(args.len(), self.signature.arity(symbol));
        debug_assert!(args.iter().all(|&a| a < self.size));
        self.tables[symbol][flat_index(self.size, args)]
    }

    /// Applies the named operation to `args`.
    pub fn apply_op(&self, symbol: &str, args: &[Element]) -> Result<Element> {
        let s = self
            .signature
            .index_of(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        let arity = self.signature.arity(s);
        if args.len() != arity {
            return Err(Error::ArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        self.check_element(args)?;
        Ok(self.op(s, args))
    }

    pub(crate) fn check_element(&self, elements: &[Element]) -> Result<()> {
        match elements.iter().find(|&&e| e >= self.size) {
            Some(&element) => Err(Error::OutOfRange {
                element,
                size: self.size,
            }),
            None => Ok(()),
        }
    }

    /// Same signature, size and tables; names are ignored.
    pub fn same_structure(&self, other: &FiniteAlgebra) -> bool {
        self.size == other.size && self.signature == other.signature && self.tables == other.tables
    }

    pub fn to_raw(&self) -> RawAlgebra {
        RawAlgebra {
            name: self.name.clone(),
            size: self.size as i64,
            signature: self
                .signature
                .symbols()
                .iter()
                .map(|s| (s.name.clone(), s.arity))
                .collect(),
            operations: self
                .signature
                .symbols()
                .iter()
                .zip(&self.tables)
                .map(|(s, t)| (s.name.clone(), t.iter().map(|&e| e as i64).collect()))
                .collect(),
        }
    }
}

pub(crate) fn same_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

fn table_len(size: usize, arity: usize) -> Option<usize> {
    size.checked_pow(u32::try_from(arity).ok()?)
}

/// An unvalidated algebra description, as read from a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    pub name: Option<String>,
    pub size: i64,
    pub signature: Vec<(String, usize)>,
    pub operations: Vec<(String, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationReason {
    EmptyName,
    ReservedName,
    IllegalCharacter(char),
    DuplicateSymbol,
    DuplicateTable,
    ZeroSize,
    UnknownSymbol,
    MissingTable,
    TableTooLarge,
    TableLength { expected: usize, found: usize },
    OutOfRange { value: i64, size: i64 },
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationReason::EmptyName => write!(f, "empty symbol name"),
            ViolationReason::ReservedName => {
                write!(f, "symbol name clashes with the variable pattern x<digits>")
            }
            ViolationReason::IllegalCharacter(c) => {
                write!(f, "symbol name contains illegal character {c:?}")
            }
            ViolationReason::DuplicateSymbol => write!(f, "duplicate symbol"),
            ViolationReason::DuplicateTable => write!(f, "duplicate operation table"),
            ViolationReason::ZeroSize => write!(f, "carrier size must be at least 1"),
            ViolationReason::UnknownSymbol => write!(f, "table for a symbol not in the signature"),
            ViolationReason::MissingTable => write!(f, "missing operation table"),
            ViolationReason::TableTooLarge => write!(f, "operation table too large"),
            ViolationReason::TableLength { expected, found } => {
                write!(f, "table length {found}, expected {expected}")
            }
            ViolationReason::OutOfRange { value, size } => {
                write!(f, "entry {value} out of range for size {size}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub symbol: Option<String>,
    pub index: Option<usize>,
    pub reason: ViolationReason,
}

impl Violation {
    fn for_symbol(symbol: &str, reason: ViolationReason) -> Self {
        Violation {
            symbol: Some(symbol.to_string()),
            index: None,
            reason,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = &self.symbol {
            write!(f, "symbol `{s}`")?;
            if let Some(i) = self.index {
                write!(f, " at index {i}")?;
            }
            write!(f, ": ")?;
        }
        write!(f, "{}", self.reason)
    }
}

/// Every violation found while validating an algebra description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Validates a raw description, collecting every violation.
pub fn validate_algebra(raw: RawAlgebra) -> Result<FiniteAlgebra> {
    let mut violations = Vec::new();
    let symbols: Vec<Symbol> = raw
        .signature
        .iter()
        .map(|(n, a)| Symbol {
            name: n.clone(),
            arity: *a,
        })
        .collect();
    violations.extend(Signature::violations(&symbols));
    if raw.size < 1 {
        violations.push(Violation {
            symbol: None,
            index: None,
            reason: ViolationReason::ZeroSize,
        });
    }

    let mut tables: Vec<Option<Vec<Element>>> = vec![None; symbols.len()];
    for (name, entries) in &raw.operations {
        let Some(s) = symbols.iter().position(|sym| &sym.name == name) else {
            violations.push(Violation::for_symbol(name, ViolationReason::UnknownSymbol));
            continue;
        };
        if tables[s].is_some() {
            violations.push(Violation::for_symbol(name, ViolationReason::DuplicateTable));
            continue;
        }
        let arity = symbols[s].arity;
        if raw.size >= 1 {
            match table_len(raw.size as usize, arity) {
                None => {
                    violations.push(Violation::for_symbol(name, ViolationReason::TableTooLarge))
                }
                Some(expected) if expected != entries.len() => {
                    violations.push(Violation::for_symbol(
                        name,
                        ViolationReason::TableLength {
                            expected,
                            found: entries.len(),
                        },
                    ))
                }
                _ => {}
            }
        }
        for (i, &e) in entries.iter().enumerate() {
            if e < 0 || e >= raw.size {
                violations.push(Violation {
                    symbol: Some(name.clone()),
                    index: Some(i),
                    reason: ViolationReason::OutOfRange {
                        value: e,
                        size: raw.size,
                    },
                });
            }
        }
        tables[s] = Some(entries.iter().map(|&e| e.max(0) as Element).collect());
    }
    for (sym, table) in symbols.iter().zip(&tables) {
        if table.is_none() && !raw.operations.iter().any(|(n, _)| n == &sym.name) {
            violations.push(Violation::for_symbol(
                &sym.name,
                ViolationReason::MissingTable,
            ));
        }
    }
    if !violations.is_empty() {
        return Err(Error::Invalid(ValidationReport { violations }));
    }
    Ok(FiniteAlgebra {
        name: raw.name,
        signature: Arc::new(Signature { symbols }),
        size: raw.size as usize,
        tables: tables.into_iter().map(|t| t.unwrap_or_default()).collect(),
    })
}

/// Mixed-radix codec between tuples of factor elements and product
/// elements; factor 0 is the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCodec {
    radices: Vec<usize>,
}

impl ProductCodec {
    pub fn new(radices: Vec<usize>) -> Self {
        ProductCodec { radices }
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn size(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn encode(&self, tuple: &[Element]) -> Element {
        debug_assert_eq!(tuple.len(), self.radices.len());
        tuple
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&t, &r)| acc * r + t)
    }

    pub fn decode(&self, mut element: Element) -> Vec<Element> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = element % r;
            element /= r;
        }
        out
    }

    /// The `i`-th coordinate of `element`.
    pub fn component(&self, element: Element, i: usize) -> Element {
        let below: usize = self.radices[i + 1..].iter().product();
        (element / below) % self.radices[i]
    }
}

/// A finite product of algebras together with its codec.
#[derive(Clone, Debug)]
pub struct Product {
    pub algebra: Arc<FiniteAlgebra>,
    pub factors: Vec<Arc<FiniteAlgebra>>,
    pub codec: ProductCodec,
}

/// Builds the direct product of a non-empty family over one signature.
/// Operations act componentwise.
pub fn product_algebra(family: &[Arc<FiniteAlgebra>]) -> Result<Product> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    if family.iter().any(|a| a.signature != first.signature) {
        return Err(Error::SignatureMismatch);
    }
    let codec = ProductCodec::new(family.iter().map(|a| a.size).collect());
    let sig = first.signature.clone();
    let mut component_args: Vec<Element> = Vec::new();
    let algebra = FiniteAlgebra::from_fn(None, sig, codec.size(), |s, args| {
        let decoded: Vec<Vec<Element>> = args.iter().map(|&a| codec.decode(a)).collect();
        let out: Vec<Element> = family
            .iter()
            .enumerate()
            .map(|(i, factor)| {
                component_args.clear();
                component_args.extend(decoded.iter().map(|d| d[i]));
                factor.op(s, &component_args)
            })
            .collect();
        codec.encode(&out)
    })?;
    Ok(Product {
        algebra: Arc::new(algebra),
        factors: family.to_vec(),
        codec,
    })
}
