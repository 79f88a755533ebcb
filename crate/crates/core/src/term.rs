//! Terms over a signature and a finite set of indexed variables.
//!
//! A term is either a variable `x<i>` or a symbol applied to exactly
//! `arity` subterms. Symbols are stored by their index in the signature;
//! printing and parsing go through the signature.

use std::fmt;

use crate::error::{Error, Result};
use crate::signature::{is_variable_name, Element, FiniteAlgebra, Signature};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Node(usize, Vec<Term>),
}

/// The variables `x0 .. x(nvars-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarContext {
    pub nvars: usize,
}

/// An assignment of every variable to an element of a target algebra.
#[derive(Clone, Debug)]
pub struct Environment<'a> {
    target: &'a FiniteAlgebra,
    assignment: Vec<Element>,
}

impl<'a> Environment<'a> {
    pub fn new(target: &'a FiniteAlgebra, assignment: Vec<Element>) -> Result<Self> {
        target.check_element(&assignment)?;
        Ok(Environment { target, assignment })
    }

    pub fn target(&self) -> &FiniteAlgebra {
        self.target
    }

    pub fn assignment(&self) -> &[Element] {
        &self.assignment
    }

    pub fn context(&self) -> VarContext {
        VarContext {
            nvars: self.assignment.len(),
        }
    }
}

impl Term {
    /// Height of the term; variables and constants have height 0.
    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Node(_, ts) => ts.iter().map(|t| t.height() + 1).max().unwrap_or(0),
        }
    }

    /// One more than the largest variable index occurring in the term.
    pub fn min_nvars(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Node(_, ts) => ts.iter().map(Term::min_nvars).max().unwrap_or(0),
        }
    }

    /// Checks arities and symbol and variable ranges.
    pub fn check(&self, sig: &Signature, ctx: VarContext) -> Result<()> {
        match self {
            Term::Var(i) if *i >= ctx.nvars => Err(Error::VariableOutOfRange {
                index: *i,
                nvars: ctx.nvars,
            }),
            Term::Var(_) => Ok(()),
            Term::Node(s, ts) => {
                if *s >= sig.len() {
                    return Err(Error::UnknownSymbol(format!("#{s}")));
                }
                let sym = sig.symbol(*s);
                if ts.len() != sym.arity {
                    return Err(Error::ArityMismatch {
                        symbol: sym.name.clone(),
                        expected: sym.arity,
                        found: ts.len(),
                    });
                }
                ts.iter().try_for_each(|t| t.check(sig, ctx))
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { term: self, sig }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Node(s, ts) => {
                f.write_str(&self.sig.symbol(*s).name)?;
                if !ts.is_empty() {
                    f.write_str("(")?;
                    for (i, t) in ts.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{}", t.display(self.sig))?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Open,
    Close,
    Comma,
}

fn tokenize(text: &str) -> Vec<(usize, Token)> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let column = text[..pos].chars().count() + 1;
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | ',' => {
                chars.next();
                out.push((
                    column,
                    match c {
                        '(' => Token::Open,
                        ')' => Token::Close,
                        _ => Token::Comma,
                    },
                ));
            }
            _ => {
                let mut ident = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ',') {
                        break;
                    }
                    ident.push(c);
                    chars.next();
                }
                out.push((column, Token::Ident(ident)));
            }
        }
    }
    out
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end_column: usize,
    sig: &'a Signature,
    ctx: VarContext,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        let column = self
            .tokens
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.end_column);
        Error::Syntax {
            line: 1,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let Some(Token::Ident(name)) = self.peek().cloned() else {
            return Err(self.error("expected a variable or symbol"));
        };
        self.pos += 1;
        if is_variable_name(&name) {
            let index: usize = name[1..]
                .parse()
                .map_err(|_| self.error("variable index too large"))?;
            if index >= self.ctx.nvars {
                return Err(Error::VariableOutOfRange {
                    index,
                    nvars: self.ctx.nvars,
                });
            }
            return Ok(Term::Var(index));
        }
        let s = self
            .sig
            .index_of(&name)
            .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
        let arity = self.sig.arity(s);
        let mut children = Vec::new();
        if self.peek() == Some(&Token::Open) {
            self.pos += 1;
            children.push(self.term()?);
            while self.peek() == Some(&Token::Comma) {
                self.pos += 1;
                children.push(self.term()?);
            }
            self.expect(Token::Close, "`)` or `,`")?;
        }
        if children.len() != arity {
            return Err(Error::ArityMismatch {
                symbol: name,
                expected: arity,
                found: children.len(),
            });
        }
        Ok(Term::Node(s, children))
    }
}

/// Parses `term := VAR | SYM | SYM "(" term ("," term)* ")"`; whitespace is
/// ignored.
pub fn parse_term(text: &str, sig: &Signature, ctx: VarContext) -> Result<Term> {
    let mut p = Parser {
        tokens: tokenize(text),
        pos: 0,
        end_column: text.chars().count() + 1,
        sig,
        ctx,
    };
    let t = p.term()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

/// The term operation of `t` evaluated at `env`.
pub fn interpret(t: &Term, env: &Environment<'_>) -> Result<Element> {
    match t {
        Term::Var(x) => env
            .assignment
            .get(*x)
            .copied()
            .ok_or(Error::VariableOutOfRange {
                index: *x,
                nvars: env.assignment.len(),
            }),
        Term::Node(s, ts) => {
            let sig = env.target.signature();
            if *s >= sig.len() {
                return Err(Error::UnknownSymbol(format!("#{s}")));
            }
            if sig.arity(*s) != ts.len() {
                return Err(Error::ArityMismatch {
                    symbol: sig.symbol(*s).name.clone(),
                    expected: sig.arity(*s),
                    found: ts.len(),
                });
            }
            let args = ts
                .iter()
                .map(|c| interpret(c, env))
                .collect::<Result<Vec<_>>>()?;
            Ok(env.target.op(*s, &args))
        }
    }
}

/// The unique homomorphic extension of `h` from variables to terms,
/// evaluated at `t`.
///
/// Computed with an explicit post-order stack, separately from
/// [`interpret`]; the two agree on every well-formed input.
pub fn free_lift(alg: &FiniteAlgebra, h: &[Element], t: &Term) -> Result<Element> {
    t.check(alg.signature(), VarContext { nvars: h.len() })?;
    alg.check_element(h)?;

    enum Frame<'t> {
        Visit(&'t Term),
        Apply(usize, usize),
    }
    let mut stack = vec![Frame::Visit(t)];
    let mut values: Vec<Element> = Vec::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Visit(Term::Var(x)) => values.push(h[*x]),
            Frame::Visit(Term::Node(s, ts)) => {
                stack.push(Frame::Apply(*s, ts.len()));
                stack.extend(ts.iter().rev().map(Frame::Visit));
            }
            Frame::Apply(s, k) => {
                let at = values.len() - k;
                let v = alg.op(s, &values[at..]);
                values.truncate(at);
                values.push(v);
            }
        }
    }
    Ok(values.pop().expect("one value per term"))
}

/// Simultaneous substitution `x_i := sigma[i]`.
pub fn substitute(t: &Term, sigma: &[Term]) -> Term {
    match t {
        Term::Var(x) => sigma[*x].clone(),
        Term::Node(s, ts) => Term::Node(*s, ts.iter().map(|c| substitute(c, sigma)).collect()),
    }
}

/// All well-formed terms of height at most `depth`, ordered by height, then
/// variables before constants and symbols in signature order, then
/// lexicographically on the positions of the children.
pub fn enumerate_terms(sig: &Signature, nvars: usize, depth: usize) -> Vec<Term> {
    let mut terms: Vec<Term> = (0..nvars).map(Term::Var).collect();
    terms.extend(
        (0..sig.len())
            .filter(|&s| sig.arity(s) == 0)
            .map(|s| Term::Node(s, Vec::new())),
    );
    let mut heights = vec![0usize; terms.len()];
    for h in 1..=depth {
        // terms of height <= h-1 are exactly the prefix built so far
        let prev = terms.len();
        let mut next: Vec<Term> = Vec::new();
        for s in (0..sig.len()).filter(|&s| sig.arity(s) > 0) {
            let k = sig.arity(s);
            let mut idx = vec![0usize; k];
            if prev == 0 {
                continue;
            }
            loop {
                if idx.iter().any(|&i| heights[i] == h - 1) {
                    next.push(Term::Node(
                        s,
                        idx.iter().map(|&i| terms[i].clone()).collect(),
                    ));
                }
                if !crate::signature::advance(&mut idx, prev) {
                    break;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        heights.extend(std::iter::repeat_n(h, next.len()));
        terms.extend(next);
    }
    terms
}
