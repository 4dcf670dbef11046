//! The algebra of primitive recursive and μ-recursive function terms.
//!
//! Terms are built from six constructors: the constant zero of any arity, the
//! successor, projections, composition, primitive recursion, and unbounded
//! search. Every term has a statically derivable arity; [`arity_of`] derives
//! it or reports the offending subterm. Evaluation is fuel-bounded and lives
//! in [`eval`], with the standard library definitions in [`standard_env`].
//!
//! Conventions fixed here: the recursion variable is the *first* argument of
//! a primitive-recursive application, and the μ search variable is appended
//! *last*.

mod eval;
mod stdlib;

pub use eval::{eval, eval_trace, EvalBudget, EvalOutcome, EvalTrace, TraceEvent};
pub use stdlib::{isqrt_term, standard_env};

use std::collections::HashMap;
use std::fmt;

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

/// Abstract syntax of recursive function expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecTerm {
    /// The constant zero function of the given arity (0 permitted).
    Zero(usize),
    /// The unary successor.
    Succ,
    /// `Proj { index: i, arity: n }` returns the `i`-th of `n` arguments,
    /// 1-based.
    Proj { index: usize, arity: usize },
    /// `outer` applied to the results of the `inners`, which all share one
    /// arity.
    Compose {
        outer: Box<RecTerm>,
        inners: Vec<RecTerm>,
    },
    /// Primitive recursion on the first argument: `f(0, ys) = base(ys)` and
    /// `f(n+1, ys) = step(n, f(n, ys), ys)`.
    PrimRec {
        base: Box<RecTerm>,
        step: Box<RecTerm>,
    },
    /// Unbounded search: `Mu(f)(ys)` is the least `y` with `f(ys, y) = 0`.
    Mu(Box<RecTerm>),
    /// Reference to a previously defined term.
    Name(String),
}

impl RecTerm {
    pub fn proj(index: usize, arity: usize) -> Self {
        Self::Proj { index, arity }
    }

    pub fn compose(outer: RecTerm, inners: Vec<RecTerm>) -> Self {
        Self::Compose {
            outer: Box::new(outer),
            inners,
        }
    }

    pub fn prim_rec(base: RecTerm, step: RecTerm) -> Self {
        Self::PrimRec {
            base: Box::new(base),
            step: Box::new(step),
        }
    }

    pub fn mu(body: RecTerm) -> Self {
        Self::Mu(Box::new(body))
    }

    pub fn name(n: impl Into<String>) -> Self {
        Self::Name(n.into())
    }

    /// Child term at a path step, if present.
    pub fn child(&self, step: PathStep) -> Option<&RecTerm> {
        match (self, step) {
            (Self::Compose { outer, .. }, PathStep::Outer) => Some(outer),
            (Self::Compose { inners, .. }, PathStep::Inner(i)) => inners.get(i),
            (Self::PrimRec { base, .. }, PathStep::Base) => Some(base),
            (Self::PrimRec { step, .. }, PathStep::Step) => Some(step),
            (Self::Mu(body), PathStep::Body) => Some(body),
            _ => None,
        }
    }
}

/// One edge in a path from a term's root to a subterm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathStep {
    /// The outer function of a composition.
    Outer,
    /// The i-th inner function of a composition, 0-based.
    Inner(usize),
    /// The base case of a primitive recursion.
    Base,
    /// The step case of a primitive recursion.
    Step,
    /// The body of a μ search.
    Body,
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Outer => write!(f, "outer"),
            Self::Inner(i) => write!(f, "inner[{i}]"),
            Self::Base => write!(f, "base"),
            Self::Step => write!(f, "step"),
            Self::Body => write!(f, "body"),
        }
    }
}

/// Path from a term's root to the subterm an error refers to.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermPath(pub Vec<PathStep>);

impl TermPath {
    pub fn root() -> Self {
        Self::default()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    fn child(&self, step: PathStep) -> Self {
        let mut steps = self.0.clone();
        steps.push(step);
        Self(steps)
    }
}

impl fmt::Display for TermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Arity errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArityError {
    pub path: TermPath,
    pub kind: ArityErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArityErrorKind {
    /// Projection index 0 or above the declared arity.
    ProjIndexOutOfRange { index: usize, arity: usize },
    /// A composition needs at least one inner term.
    EmptyCompose,
    /// The outer arity does not match the number of inners.
    OuterArityMismatch { outer: usize, inners: usize },
    /// An inner term disagrees with the arity of the first inner.
    InnerArityDisagreement {
        expected: usize,
        found: usize,
        inner: usize,
    },
    /// The step arity must be the base arity plus two.
    StepArityMismatch { base: usize, step: usize },
    /// A μ body must take at least the search variable.
    MuBodyNullary,
    /// Reference to a name that is not defined (yet).
    UnknownName(String),
    /// An application supplied the wrong number of arguments.
    ArgCount { expected: usize, found: usize },
}

impl fmt::Display for ArityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: ", self.path)?;
        match &self.kind {
            ArityErrorKind::ProjIndexOutOfRange { index, arity } => {
                write!(f, "projection index {index} out of range 1..={arity}")
            }
            ArityErrorKind::EmptyCompose => {
                write!(f, "composition needs at least one inner term")
            }
            ArityErrorKind::OuterArityMismatch { outer, inners } => write!(
                f,
                "outer term has arity {outer} but {inners} inner terms were given"
            ),
            ArityErrorKind::InnerArityDisagreement {
                expected,
                found,
                inner,
            } => write!(
                f,
                "inner term {inner} has arity {found}, expected {expected}"
            ),
            ArityErrorKind::StepArityMismatch { base, step } => write!(
                f,
                "step has arity {step}, expected base arity {base} + 2 = {}",
                base + 2
            ),
            ArityErrorKind::MuBodyNullary => {
                write!(f, "search body must have arity at least 1")
            }
            ArityErrorKind::UnknownName(n) => write!(f, "unknown name {n:?}"),
            ArityErrorKind::ArgCount { expected, found } => {
                write!(f, "expected {expected} arguments, found {found}")
            }
        }
    }
}

impl std::error::Error for ArityError {}

// ---------------------------------------------------------------------------
// Environments
// ---------------------------------------------------------------------------

/// An ordered collection of named definitions. A definition may only refer
/// to names added before it, so references are acyclic by construction.
#[derive(Debug, Clone, Default)]
pub struct Env {
    defs: Vec<(String, RecTerm)>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnvError {
    DuplicateName(String),
    Arity(ArityError),
}

impl fmt::Display for EnvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateName(n) => write!(f, "name {n:?} is already defined"),
            Self::Arity(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EnvError {}

impl From<ArityError> for EnvError {
    fn from(e: ArityError) -> Self {
        Self::Arity(e)
    }
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a definition after arity-checking it against the environment so
    /// far. Returns the derived arity.
    pub fn define(&mut self, name: impl Into<String>, term: RecTerm) -> Result<usize, EnvError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(EnvError::DuplicateName(name));
        }
        let arity = arity_of(&term, self)?;
        self.index.insert(name.clone(), self.defs.len());
        self.defs.push((name, term));
        Ok(arity)
    }

    pub fn lookup(&self, name: &str) -> Option<&RecTerm> {
        self.index.get(name).map(|&i| &self.defs[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &RecTerm)> {
        self.defs.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Arity derivation
// ---------------------------------------------------------------------------

/// Derives the arity of a term, or reports the first violation with the path
/// to the offending subterm.
pub fn arity_of(term: &RecTerm, env: &Env) -> Result<usize, ArityError> {
    arity_at(term, env, &TermPath::root())
}

fn arity_at(term: &RecTerm, env: &Env, path: &TermPath) -> Result<usize, ArityError> {
    let err = |kind| ArityError {
        path: path.clone(),
        kind,
    };
    match term {
        RecTerm::Zero(n) => Ok(*n),
        RecTerm::Succ => Ok(1),
        RecTerm::Proj { index, arity } => {
            if *index == 0 || index > arity {
                Err(err(ArityErrorKind::ProjIndexOutOfRange {
                    index: *index,
                    arity: *arity,
                }))
            } else {
                Ok(*arity)
            }
        }
        RecTerm::Compose { outer, inners } => {
            if inners.is_empty() {
                return Err(err(ArityErrorKind::EmptyCompose));
            }
            let outer_arity = arity_at(outer, env, &path.child(PathStep::Outer))?;
            if outer_arity != inners.len() {
                return Err(err(ArityErrorKind::OuterArityMismatch {
                    outer: outer_arity,
                    inners: inners.len(),
                }));
            }
            let common = arity_at(&inners[0], env, &path.child(PathStep::Inner(0)))?;
            for (i, inner) in inners.iter().enumerate().skip(1) {
                let a = arity_at(inner, env, &path.child(PathStep::Inner(i)))?;
                if a != common {
                    return Err(err(ArityErrorKind::InnerArityDisagreement {
                        expected: common,
                        found: a,
                        inner: i,
                    }));
                }
            }
            Ok(common)
        }
        RecTerm::PrimRec { base, step } => {
            let base_arity = arity_at(base, env, &path.child(PathStep::Base))?;
            let step_arity = arity_at(step, env, &path.child(PathStep::Step))?;
            if step_arity != base_arity + 2 {
                return Err(err(ArityErrorKind::StepArityMismatch {
                    base: base_arity,
                    step: step_arity,
                }));
            }
            Ok(base_arity + 1)
        }
        RecTerm::Mu(body) => {
            let body_arity = arity_at(body, env, &path.child(PathStep::Body))?;
            if body_arity == 0 {
                return Err(err(ArityErrorKind::MuBodyNullary));
            }
            Ok(body_arity - 1)
        }
        RecTerm::Name(n) => match env.lookup(n) {
            // Definitions are validated when added, so this cannot fail.
            Some(target) => arity_of(target, env),
            None => Err(err(ArityErrorKind::UnknownName(n.clone()))),
        },
    }
}
