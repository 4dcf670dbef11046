//! Successor structures, axiom checking, and the iteration engine.
//!
//! A [`PointedStructure`] is a finite fragment of a would-be model of the
//! naturals: a carrier of opaque element ids, a distinguished zero, and a
//! partial successor table. Elements where the successor is intentionally
//! missing must be declared as *frontier* elements; they mark where the
//! fragment was cut off and are excused from the induction check.
//!
//! [`PointedStructure::check_axioms`] tests the three defining conditions:
//! zero is not a successor, the successor map is injective, and every
//! non-frontier element is reached from zero. Structures with extra disjoint
//! chains or cycles fail the third condition; that is how non-standard
//! fragments are detected.
//!
//! [`IterationSpec`] is the definitional engine: it materializes the unique
//! map determined by a seed and a step function, and [`build_iso`] uses it to
//! construct the successor-commuting correspondence between any two
//! axiom-satisfying models.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

/// Upper bound on carrier size for [`PointedStructure::induction_exhaustive`].
const EXHAUSTIVE_LIMIT: usize = 20;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    /// An operation referenced an element id that is not in the carrier.
    UnknownElement(String),
    /// Two successor entries share the same source element.
    DuplicateSuccessor(String),
    /// A declared frontier element also has a successor entry.
    FrontierHasSuccessor(String),
    /// A non-frontier element has no successor entry.
    MissingSuccessor(String),
    /// The text form did not declare a zero element.
    MissingZero,
    /// A line of the text form could not be understood.
    Parse { line: usize, message: String },
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownElement(id) => write!(f, "unknown element id {id:?}"),
            Self::DuplicateSuccessor(id) => {
                write!(f, "element {id:?} has more than one successor entry")
            }
            Self::FrontierHasSuccessor(id) => {
                write!(f, "frontier element {id:?} must not have a successor")
            }
            Self::MissingSuccessor(id) => write!(
                f,
                "element {id:?} has no successor and is not declared as frontier"
            ),
            Self::MissingZero => write!(f, "model text declares no `zero:` line"),
            Self::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for StructureError {}

// ---------------------------------------------------------------------------
// PointedStructure
// ---------------------------------------------------------------------------

/// A finite carrier with a distinguished zero and a partial successor map.
///
/// The successor is undefined exactly on the declared frontier elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedStructure {
    /// Element ids in declaration order; index is the internal handle.
    elements: Vec<String>,
    index: HashMap<String, usize>,
    zero: usize,
    /// `succ[i]` is the successor of element `i`, `None` on the frontier.
    succ: Vec<Option<usize>>,
    frontier: HashSet<usize>,
}

impl PointedStructure {
    /// Builds a structure from a zero id, successor edges, and the declared
    /// frontier. The carrier is the set of all mentioned ids, kept in first-
    /// mention order.
    pub fn new<S: AsRef<str>>(
        zero: &str,
        edges: &[(S, S)],
        frontier: &[S],
    ) -> Result<Self, StructureError> {
        let mut elements: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |id: &str, elements: &mut Vec<String>| -> usize {
            if let Some(&i) = index.get(id) {
                return i;
            }
            let i = elements.len();
            elements.push(id.to_string());
            index.insert(id.to_string(), i);
            i
        };

        let zero_ix = intern(zero, &mut elements);
        let mut edge_ixs = Vec::with_capacity(edges.len());
        for (src, dst) in edges {
            let s = intern(src.as_ref(), &mut elements);
            let d = intern(dst.as_ref(), &mut elements);
            edge_ixs.push((s, d));
        }
        let mut frontier_ixs = HashSet::new();
        for id in frontier {
            frontier_ixs.insert(intern(id.as_ref(), &mut elements));
        }

        let mut succ = vec![None; elements.len()];
        for (s, d) in edge_ixs {
            if succ[s].is_some() {
                return Err(StructureError::DuplicateSuccessor(elements[s].clone()));
            }
            if frontier_ixs.contains(&s) {
                return Err(StructureError::FrontierHasSuccessor(elements[s].clone()));
            }
            succ[s] = Some(d);
        }
        for (i, next) in succ.iter().enumerate() {
            if next.is_none() && !frontier_ixs.contains(&i) {
                return Err(StructureError::MissingSuccessor(elements[i].clone()));
            }
        }

        Ok(Self {
            elements,
            index,
            zero: zero_ix,
            succ,
            frontier: frontier_ixs,
        })
    }

    /// Parses the text form:
    ///
    /// ```text
    /// zero: <id>
    /// <id> -> <id>
    /// frontier: <id>,<id>,...
    /// ```
    ///
    /// Ids are non-empty alphanumeric tokens. Blank lines and `#` comments
    /// are skipped. The `frontier:` line may be omitted when every element
    /// has a successor.
    pub fn from_text(text: &str) -> Result<Self, StructureError> {
        fn valid_id(tok: &str) -> bool {
            !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric())
        }
        fn checked_id(tok: &str, line: usize) -> Result<&str, StructureError> {
            if valid_id(tok) {
                Ok(tok)
            } else {
                Err(StructureError::Parse {
                    line,
                    message: format!("invalid element id {tok:?}"),
                })
            }
        }

        let mut zero: Option<String> = None;
        let mut edges: Vec<(String, String)> = Vec::new();
        let mut frontier: Vec<String> = Vec::new();

        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("zero:") {
                if zero.is_some() {
                    return Err(StructureError::Parse {
                        line: line_no,
                        message: "duplicate `zero:` line".to_string(),
                    });
                }
                zero = Some(checked_id(rest.trim(), line_no)?.to_string());
            } else if let Some(rest) = line.strip_prefix("frontier:") {
                for tok in rest.split(',') {
                    let tok = tok.trim();
                    if tok.is_empty() {
                        continue;
                    }
                    frontier.push(checked_id(tok, line_no)?.to_string());
                }
            } else if let Some((src, dst)) = line.split_once("->") {
                edges.push((
                    checked_id(src.trim(), line_no)?.to_string(),
                    checked_id(dst.trim(), line_no)?.to_string(),
                ));
            } else {
                return Err(StructureError::Parse {
                    line: line_no,
                    message: format!("cannot parse {line:?}"),
                });
            }
        }

        let zero = zero.ok_or(StructureError::MissingZero)?;
        Self::new(&zero, &edges, &frontier)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn zero(&self) -> &str {
        &self.elements[self.zero]
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn is_frontier(&self, id: &str) -> Result<bool, StructureError> {
        let ix = self.ix(id)?;
        Ok(self.frontier.contains(&ix))
    }

    /// Successor of `id`, or `None` when `id` is on the frontier.
    pub fn succ_of(&self, id: &str) -> Result<Option<&str>, StructureError> {
        let ix = self.ix(id)?;
        Ok(self.succ[ix].map(|j| self.elements[j].as_str()))
    }

    fn ix(&self, id: &str) -> Result<usize, StructureError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| StructureError::UnknownElement(id.to_string()))
    }

    /// Forward orbit of `seed` under the successor map, in discovery order.
    ///
    /// The walk stops at the first repeated element, at a frontier element,
    /// or after `max_depth` successor steps, whichever comes first.
    pub fn chain_of(&self, seed: &str, max_depth: usize) -> Result<Chain, StructureError> {
        let seed_ix = self.ix(seed)?;
        let mut seen = HashSet::new();
        let mut members = Vec::new();
        let mut current = seed_ix;
        let mut complete = true;
        seen.insert(current);
        members.push(self.elements[current].clone());
        for _ in 0..max_depth {
            match self.succ[current] {
                None => break, // frontier
                Some(next) => {
                    if !seen.insert(next) {
                        break; // repeat
                    }
                    members.push(self.elements[next].clone());
                    current = next;
                }
            }
        }
        // Depth-truncated if the walk could still continue.
        if let Some(next) = self.succ[current] {
            if !seen.contains(&next) {
                complete = false;
            }
        }
        Ok(Chain { members, complete })
    }

    /// Checks the three axioms on this fragment.
    ///
    /// - `d1`: no element maps to zero.
    /// - `d2`: the successor map is injective where defined.
    /// - `d3`: every non-frontier element lies in the chain of zero.
    ///
    /// Frontier elements never count as `d3` counterexamples; they are where
    /// the fragment was deliberately cut off. Each failed verdict carries the
    /// first counterexample in declaration order.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut counterexamples = Counterexamples::default();

        let d1_cex = (0..self.len()).find(|&i| self.succ[i] == Some(self.zero));
        if let Some(i) = d1_cex {
            counterexamples.d1 = Some(self.elements[i].clone());
        }

        let mut d2_cex = None;
        'outer: for i in 0..self.len() {
            let Some(si) = self.succ[i] else { continue };
            for j in (i + 1)..self.len() {
                if self.succ[j] == Some(si) {
                    d2_cex = Some((i, j));
                    break 'outer;
                }
            }
        }
        if let Some((i, j)) = d2_cex {
            counterexamples.d2 = Some((self.elements[i].clone(), self.elements[j].clone()));
        }

        let chain = self
            .chain_of(self.zero(), self.len())
            .expect("zero is always in the carrier");
        let reached: HashSet<&str> = chain.members().iter().map(String::as_str).collect();
        let d3_cex = (0..self.len())
            .find(|&i| !self.frontier.contains(&i) && !reached.contains(self.elements[i].as_str()));
        if let Some(i) = d3_cex {
            counterexamples.d3 = Some(self.elements[i].clone());
        }

        AxiomReport {
            d1: d1_cex.is_none(),
            d2: d2_cex.is_none(),
            d3: d3_cex.is_none(),
            counterexamples,
            fragment_depth: self.len(),
        }
    }

    /// Decides the induction axiom by brute force: every subset that contains
    /// zero and is closed under the successor (up to the frontier) must
    /// contain all non-frontier elements.
    ///
    /// Returns `None` when the carrier has more than 20 elements. This is the
    /// strict second check of `d3`; the chain-based verdict in
    /// [`check_axioms`](Self::check_axioms) must agree with it.
    pub fn induction_exhaustive(&self) -> Option<bool> {
        let n = self.len();
        if n > EXHAUSTIVE_LIMIT {
            return None;
        }
        for mask in 0u32..(1u32 << n) {
            if mask & (1 << self.zero) == 0 {
                continue;
            }
            let contains = |i: usize| mask & (1 << i) != 0;
            let stable = (0..n).all(|i| !contains(i) || self.succ[i].is_none_or(contains));
            if !stable {
                continue;
            }
            let covers = (0..n).all(|i| self.frontier.contains(&i) || contains(i));
            if !covers {
                return Some(false);
            }
        }
        Some(true)
    }
}

/// A subset of a structure's carrier, stored in discovery order from a seed.
///
/// When `complete` is true the walk ended at a frontier element or a repeat,
/// and the members are closed under the successor map up to the frontier.
/// Otherwise the walk was truncated by the depth bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    members: Vec<String>,
    complete: bool,
}

impl Chain {
    pub fn members(&self) -> &[String] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.members.iter().any(|m| m == id)
    }

    /// False when the walk stopped only because it hit the depth bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }
}

// ---------------------------------------------------------------------------
// Axiom report
// ---------------------------------------------------------------------------

/// Verdicts for the three axioms on a fragment.
///
/// Serializes to JSON with keys `d1`, `d2`, `d3`, `counterexamples`, and
/// `fragment_depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub d1: bool,
    pub d2: bool,
    pub d3: bool,
    pub counterexamples: Counterexamples,
    /// Number of elements examined.
    pub fragment_depth: usize,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.d1 && self.d2 && self.d3
    }
}

/// Concrete witnesses for failed verdicts. A `d1` witness maps to zero, a
/// `d2` witness is a pair with the same successor, a `d3` witness is a
/// non-frontier element unreached from zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counterexamples {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3: Option<String>,
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "violated" };
        writeln!(f, "d1 (zero is not a successor): {}", mark(self.d1))?;
        if let Some(e) = &self.counterexamples.d1 {
            writeln!(f, "    counterexample: {e} -> zero")?;
        }
        writeln!(f, "d2 (successor is injective):  {}", mark(self.d2))?;
        if let Some((a, b)) = &self.counterexamples.d2 {
            writeln!(f, "    counterexample: {a} and {b} share a successor")?;
        }
        writeln!(f, "d3 (induction from zero):     {}", mark(self.d3))?;
        if let Some(e) = &self.counterexamples.d3 {
            writeln!(f, "    counterexample: {e} is not reached from zero")?;
        }
        write!(f, "elements examined: {}", self.fragment_depth)
    }
}

// ---------------------------------------------------------------------------
// Iteration (definition by recursion)
// ---------------------------------------------------------------------------

/// A step map: receives the index and the previous value, or `None` where
/// the map is undefined.
type StepFn<T> = Box<dyn Fn(u64, &T) -> Option<T> + Send + Sync>;

/// A codomain value together with a step map, determining the unique
/// trajectory `t(0) = seed`, `t(k+1) = step(k, t(k))`.
///
/// The plain form ignores the index argument; the indexed form receives it.
/// The step may be partial: returning `None` aborts the iteration with a
/// [`StepFailure`] carrying the position that could not be produced.
pub struct IterationSpec<T> {
    seed: T,
    step: StepFn<T>,
}

/// The step map was undefined while producing trajectory position `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepFailure {
    pub index: u64,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step undefined at trajectory position {}", self.index)
    }
}

impl std::error::Error for StepFailure {}

impl<T: Clone> IterationSpec<T> {
    /// An iteration whose step depends only on the previous value.
    pub fn new<F>(seed: T, step: F) -> Self
    where
        F: Fn(&T) -> Option<T> + Send + Sync + 'static,
    {
        Self {
            seed,
            step: Box::new(move |_, v| step(v)),
        }
    }

    /// An iteration whose step also receives the index: `t(k+1) = step(k, t(k))`.
    pub fn indexed<F>(seed: T, step: F) -> Self
    where
        F: Fn(u64, &T) -> Option<T> + Send + Sync + 'static,
    {
        Self {
            seed,
            step: Box::new(step),
        }
    }

    pub fn seed(&self) -> &T {
        &self.seed
    }

    /// The value at position `n`: the step applied `n` times to the seed.
    pub fn iterate(&self, n: u64) -> Result<T, StepFailure> {
        let mut value = self.seed.clone();
        for k in 0..n {
            value = (self.step)(k, &value).ok_or(StepFailure { index: k + 1 })?;
        }
        Ok(value)
    }

    /// The full trajectory `[t(0), ..., t(n)]`, of length `n + 1`.
    pub fn trajectory(&self, n: u64) -> Result<Vec<T>, StepFailure> {
        let mut values = Vec::with_capacity(usize::try_from(n.saturating_add(1)).unwrap_or(0));
        values.push(self.seed.clone());
        for k in 0..n {
            let next = (self.step)(k, values.last().expect("nonempty"))
                .ok_or(StepFailure { index: k + 1 })?;
            values.push(next);
        }
        Ok(values)
    }
}

// ---------------------------------------------------------------------------
// Built-in unbounded models
// ---------------------------------------------------------------------------

/// Unbounded numeral encodings with a computable successor rule.
///
/// - `Unary`: the empty string is zero, each successor appends `|`.
/// - `Binary`: canonical bit strings, no leading zeros except `"0"` itself.
/// - `Decimal`: canonical decimal strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinModel {
    Unary,
    Binary,
    Decimal,
}

impl BuiltinModel {
    pub fn parse_name(name: &str) -> Option<Self> {
        match name {
            "unary" => Some(Self::Unary),
            "binary" => Some(Self::Binary),
            "decimal" => Some(Self::Decimal),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Unary => "unary",
            Self::Binary => "binary",
            Self::Decimal => "decimal",
        }
    }

    pub fn zero(&self) -> String {
        match self {
            Self::Unary => String::new(),
            Self::Binary | Self::Decimal => "0".to_string(),
        }
    }

    /// The canonical encoding of the successor of `numeral`.
    pub fn successor(&self, numeral: &str) -> String {
        match self {
            Self::Unary => {
                let mut s = numeral.to_string();
                s.push('|');
                s
            }
            Self::Binary => increment_digits(numeral, '1', '0', '1'),
            Self::Decimal => increment_digits(numeral, '9', '0', '1'),
        }
    }

    /// Materializes the first `len` numerals as a checkable structure. The
    /// last element is the declared frontier.
    pub fn fragment(&self, len: usize) -> PointedStructure {
        assert!(len >= 1, "fragment needs at least the zero element");
        let mut ids = Vec::with_capacity(len);
        let mut current = self.zero();
        for _ in 0..len {
            ids.push(current.clone());
            current = self.successor(&current);
        }
        let edges: Vec<(String, String)> = ids
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        let frontier = vec![ids[len - 1].clone()];
        PointedStructure::new(&ids[0], &edges, &frontier)
            .expect("generated fragment is well-formed")
    }
}

/// Increments a big-endian digit string where `max_digit` carries over to
/// `min_digit` and an overflowing carry prepends `lead_digit`.
fn increment_digits(numeral: &str, max_digit: char, min_digit: char, lead_digit: char) -> String {
    let mut digits: Vec<char> = numeral.chars().collect();
    let mut i = digits.len();
    loop {
        if i == 0 {
            digits.insert(0, lead_digit);
            break;
        }
        i -= 1;
        if digits[i] == max_digit {
            digits[i] = min_digit;
        } else {
            digits[i] = char::from_u32(digits[i] as u32 + 1).expect("digit increment");
            break;
        }
    }
    digits.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Model isomorphism
// ---------------------------------------------------------------------------

/// Which operand of [`build_iso`] an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSide {
    A,
    B,
}

impl fmt::Display for ModelSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A => write!(f, "model A"),
            Self::B => write!(f, "model B"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoError {
    /// One of the models fails the axioms; the report is attached.
    AxiomFailure {
        side: ModelSide,
        report: AxiomReport,
    },
    /// A model ran out of elements before the requested depth.
    FragmentTooShort {
        side: ModelSide,
        produced: usize,
        requested: usize,
    },
}

impl fmt::Display for IsoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AxiomFailure { side, report } => {
                write!(f, "{side} fails the axioms:\n{report}")
            }
            Self::FragmentTooShort {
                side,
                produced,
                requested,
            } => write!(
                f,
                "{side} has only {produced} elements from zero, {requested} requested"
            ),
        }
    }
}

impl std::error::Error for IsoError {}

/// A prefix of the unique zero-preserving, successor-commuting map between
/// two models, matched position by position from the two zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelIso {
    pairs: Vec<(String, String)>,
}

impl ModelIso {
    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Constructs the depth-long prefix of the unique isomorphism between two
/// axiom-satisfying fragments by iterating both successor maps from the two
/// zeros in lockstep.
///
/// Refuses with the failing [`AxiomReport`] when either model violates an
/// axiom, and with [`IsoError::FragmentTooShort`] when either chain ends
/// before `depth` elements.
pub fn build_iso(
    a: &PointedStructure,
    b: &PointedStructure,
    depth: usize,
) -> Result<ModelIso, IsoError> {
    let report_a = a.check_axioms();
    if !report_a.all_hold() {
        return Err(IsoError::AxiomFailure {
            side: ModelSide::A,
            report: report_a,
        });
    }
    let report_b = b.check_axioms();
    if !report_b.all_hold() {
        return Err(IsoError::AxiomFailure {
            side: ModelSide::B,
            report: report_b,
        });
    }
    if depth == 0 {
        return Ok(ModelIso { pairs: Vec::new() });
    }

    let walk = |model: &PointedStructure, side: ModelSide| -> Result<Vec<String>, IsoError> {
        let m = model.clone();
        let spec = IterationSpec::new(m.zero().to_string(), move |id: &String| {
            m.succ_of(id)
                .expect("trajectory stays inside the carrier")
                .map(str::to_string)
        });
        spec.trajectory(depth as u64 - 1)
            .map_err(|failure| IsoError::FragmentTooShort {
                side,
                produced: failure.index as usize,
                requested: depth,
            })
    };

    let left = walk(a, ModelSide::A)?;
    let right = walk(b, ModelSide::B)?;
    Ok(ModelIso {
        pairs: left.into_iter().zip(right).collect(),
    })
}

/// Like [`build_iso`] but pairs two unbounded built-in models, which satisfy
/// the axioms by construction and never run short.
pub fn build_iso_builtin(a: BuiltinModel, b: BuiltinModel, depth: usize) -> ModelIso {
    let mut pairs = Vec::with_capacity(depth);
    let mut left = a.zero();
    let mut right = b.zero();
    for _ in 0..depth {
        let next_left = a.successor(&left);
        let next_right = b.successor(&right);
        pairs.push((left, right));
        left = next_left;
        right = next_right;
    }
    ModelIso { pairs }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn linear4() -> PointedStructure {
        PointedStructure::new("0", &[("0", "1"), ("1", "2"), ("2", "3")], &["3"]).unwrap()
    }

    fn cycle3() -> PointedStructure {
        PointedStructure::new("0", &[("0", "1"), ("1", "2"), ("2", "0")], &[]).unwrap()
    }

    /// Linear fragment plus a disjoint 2-cycle: a non-standard fragment.
    fn mixed() -> PointedStructure {
        PointedStructure::new(
            "0",
            &[("0", "1"), ("1", "2"), ("a", "b"), ("b", "a")],
            &["2"],
        )
        .unwrap()
    }

    #[test]
    fn chain_of_linear_fragment() {
        let chain = linear4().chain_of("0", 10).unwrap();
        assert_eq!(chain.members(), &["0", "1", "2", "3"]);
        assert!(chain.is_complete());
    }

    #[test]
    fn chain_of_cycle_stops_at_repeat() {
        let chain = cycle3().chain_of("0", 10).unwrap();
        assert_eq!(chain.members(), &["0", "1", "2"]);
        assert!(chain.is_complete());
    }

    #[test]
    fn chain_never_crosses_components() {
        let chain = mixed().chain_of("0", 10).unwrap();
        assert_eq!(chain.members(), &["0", "1", "2"]);
        assert!(!chain.contains("a"));
        assert!(!chain.contains("b"));
    }

    #[test]
    fn chain_truncated_by_depth() {
        let chain = linear4().chain_of("0", 1).unwrap();
        assert_eq!(chain.members(), &["0", "1"]);
        assert!(!chain.is_complete());
    }

    #[test]
    fn chain_of_unknown_seed_is_an_error() {
        assert_eq!(
            linear4().chain_of("zz", 3),
            Err(StructureError::UnknownElement("zz".to_string()))
        );
    }

    #[test]
    fn axioms_hold_on_linear_fragment() {
        let report = linear4().check_axioms();
        assert!(report.all_hold(), "{report}");
        assert_eq!(report.fragment_depth, 4);
    }

    #[test]
    fn cycle_violates_d1_only() {
        let report = cycle3().check_axioms();
        assert!(!report.d1);
        assert!(report.d2);
        assert!(report.d3);
        assert_eq!(report.counterexamples.d1.as_deref(), Some("2"));
    }

    #[test]
    fn disjoint_cycle_violates_d3() {
        let report = mixed().check_axioms();
        assert!(report.d1);
        assert!(report.d2);
        assert!(!report.d3);
        assert_eq!(report.counterexamples.d3.as_deref(), Some("a"));
    }

    #[test]
    fn merge_violates_d2() {
        // 0 -> 1 and 2 -> 1 share the successor 1.
        let s = PointedStructure::new("0", &[("0", "1"), ("2", "1"), ("1", "3")], &["3", "2"]);
        // 2 must not be frontier if it has a successor; rebuild properly.
        assert!(s.is_err());
        let s = PointedStructure::new("0", &[("0", "1"), ("2", "1"), ("1", "3")], &["3"]).unwrap();
        let report = s.check_axioms();
        assert!(!report.d2);
        assert_eq!(
            report.counterexamples.d2,
            Some(("0".to_string(), "2".to_string()))
        );
    }

    #[test]
    fn report_serializes_with_fixed_keys() {
        let value = serde_json::to_value(mixed().check_axioms()).unwrap();
        assert_eq!(value["d1"], serde_json::json!(true));
        assert_eq!(value["d3"], serde_json::json!(false));
        assert_eq!(value["counterexamples"]["d3"], serde_json::json!("a"));
        assert_eq!(value["fragment_depth"], serde_json::json!(5));
        assert!(value["counterexamples"].get("d1").is_none());
    }

    #[test]
    fn structure_text_round_trip() {
        let text = "zero: 0\n0 -> 1\n1 -> 2\n2 -> 3\na -> b\nb -> a\nfrontier: 3\n";
        let parsed = PointedStructure::from_text(text).unwrap();
        assert_eq!(parsed, mixed_with_long_tail());
        fn mixed_with_long_tail() -> PointedStructure {
            PointedStructure::new(
                "0",
                &[("0", "1"), ("1", "2"), ("2", "3"), ("a", "b"), ("b", "a")],
                &["3"],
            )
            .unwrap()
        }
    }

    #[test]
    fn structure_text_rejects_bad_ids_and_shapes() {
        assert!(matches!(
            PointedStructure::from_text("zero: a!\n"),
            Err(StructureError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            PointedStructure::from_text("0 -> 1\nfrontier: 1"),
            Err(StructureError::MissingZero)
        ));
        assert!(matches!(
            PointedStructure::from_text("zero: 0\n0 -> 1\n0 -> 2\nfrontier: 1,2"),
            Err(StructureError::DuplicateSuccessor(_))
        ));
        assert!(matches!(
            PointedStructure::from_text("zero: 0\n0 -> 1\n"),
            Err(StructureError::MissingSuccessor(_))
        ));
    }

    #[test]
    fn iterate_identity_embedding() {
        let spec = IterationSpec::new(0u64, |n: &u64| Some(n + 1));
        assert_eq!(spec.iterate(7), Ok(7));
    }

    #[test]
    fn iterate_doubling() {
        let spec = IterationSpec::new(1u64, |n: &u64| Some(n * 2));
        assert_eq!(spec.iterate(10), Ok(1024));
    }

    #[test]
    fn iterate_free_monoid() {
        let spec = IterationSpec::new(String::new(), |s: &String| {
            let mut t = s.clone();
            t.push('a');
            Some(t)
        });
        assert_eq!(spec.iterate(3).unwrap(), "aaa");
    }

    #[test]
    fn iterate_indexed_factorial() {
        let spec = IterationSpec::indexed(1u64, |k, v: &u64| Some(v * (k + 1)));
        assert_eq!(spec.iterate(5), Ok(120));
    }

    #[test]
    fn iterate_indexed_constant_step() {
        let spec = IterationSpec::indexed(99u64, |_, v: &u64| Some(*v));
        assert_eq!(spec.iterate(9), Ok(99));
    }

    #[test]
    fn iterate_indexed_sum_of_odds() {
        let spec = IterationSpec::indexed(0u64, |k, v: &u64| Some(v + 2 * k + 1));
        assert_eq!(spec.iterate(6), Ok(36));
    }

    #[test]
    fn iterate_reports_failing_index() {
        let spec = IterationSpec::new(0u64, |n: &u64| if *n < 3 { Some(n + 1) } else { None });
        assert_eq!(spec.iterate(10), Err(StepFailure { index: 4 }));
        let traj = spec.trajectory(3).unwrap();
        assert_eq!(traj, vec![0, 1, 2, 3]);
    }

    #[test]
    fn trajectory_has_length_n_plus_one() {
        let spec = IterationSpec::new(5u64, |n: &u64| Some(n + 3));
        assert_eq!(spec.trajectory(4).unwrap(), vec![5, 8, 11, 14, 17]);
    }

    /// The trajectory agrees with an independent top-down recomputation for
    /// randomized lookup-table steps.
    #[test]
    fn iterate_matches_recursive_recomputation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let table: Vec<u8> = (0..64).map(|_| rng.gen_range(0..64)).collect();
            let omega: u8 = rng.gen_range(0..64);
            let t = table.clone();
            let spec = IterationSpec::new(omega, move |v: &u8| Some(t[*v as usize]));

            fn psi(table: &[u8], omega: u8, n: u64) -> u8 {
                if n == 0 {
                    omega
                } else {
                    table[psi(table, omega, n - 1) as usize]
                }
            }

            for n in [0u64, 1, 17, 250, 1000] {
                assert_eq!(spec.iterate(n).unwrap(), psi(&table, omega, n));
            }
        }
    }

    #[test]
    fn builtin_successors_are_canonical() {
        let b = BuiltinModel::Binary;
        let mut n = b.zero();
        let expected = ["0", "1", "10", "11", "100", "101"];
        for want in expected {
            assert_eq!(n, want);
            n = b.successor(&n);
        }
        let d = BuiltinModel::Decimal;
        assert_eq!(d.successor("9"), "10");
        assert_eq!(d.successor("199"), "200");
        let u = BuiltinModel::Unary;
        assert_eq!(u.successor(""), "|");
    }

    #[test]
    fn builtin_fragment_passes_axioms() {
        for model in [
            BuiltinModel::Unary,
            BuiltinModel::Binary,
            BuiltinModel::Decimal,
        ] {
            let frag = model.fragment(12);
            assert!(frag.check_axioms().all_hold());
            assert_eq!(frag.len(), 12);
        }
    }

    #[test]
    fn iso_unary_binary_prefix() {
        let iso = build_iso_builtin(BuiltinModel::Unary, BuiltinModel::Binary, 4);
        let expected: Vec<(String, String)> = [("", "0"), ("|", "1"), ("||", "10"), ("|||", "11")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(iso.pairs(), &expected[..]);

        // The finite-fragment route must agree with the unbounded one.
        let a = BuiltinModel::Unary.fragment(5);
        let b = BuiltinModel::Binary.fragment(5);
        let iso2 = build_iso(&a, &b, 4).unwrap();
        assert_eq!(iso2.pairs(), &expected[..]);
    }

    #[test]
    fn iso_unary_decimal_prefix() {
        let iso = build_iso_builtin(BuiltinModel::Unary, BuiltinModel::Decimal, 3);
        assert_eq!(
            iso.pairs(),
            &[
                ("".to_string(), "0".to_string()),
                ("|".to_string(), "1".to_string()),
                ("||".to_string(), "2".to_string())
            ]
        );
    }

    #[test]
    fn iso_with_itself_is_identity() {
        let m = linear4();
        let iso = build_iso(&m, &m, 4).unwrap();
        for (a, b) in iso.pairs() {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn iso_refuses_non_standard_model() {
        let err = build_iso(&linear4(), &cycle3(), 3).unwrap_err();
        match err {
            IsoError::AxiomFailure { side, report } => {
                assert_eq!(side, ModelSide::B);
                assert!(!report.d1);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn iso_reports_short_fragment() {
        let err = build_iso(&linear4(), &BuiltinModel::Decimal.fragment(3), 4).unwrap_err();
        assert_eq!(
            err,
            IsoError::FragmentTooShort {
                side: ModelSide::B,
                produced: 3,
                requested: 4
            }
        );
    }

    /// Strategy: small random structures with explicit frontier.
    fn small_structure() -> impl Strategy<Value = PointedStructure> {
        (2usize..13).prop_flat_map(|n| {
            proptest::collection::vec(proptest::option::of(0..n), n).prop_map(move |succs| {
                let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
                let mut edges = Vec::new();
                let mut frontier = Vec::new();
                for (i, s) in succs.iter().enumerate() {
                    match s {
                        Some(j) => edges.push((ids[i].clone(), ids[*j].clone())),
                        None => frontier.push(ids[i].clone()),
                    }
                }
                PointedStructure::new(&ids[0], &edges, &frontier).unwrap()
            })
        })
    }

    /// Enumerates all successor-stable subsets (up to the frontier) that
    /// contain the seed. Oracle for the chain computation.
    fn stable_subsets_containing(s: &PointedStructure, seed: &str) -> Vec<Vec<String>> {
        let ids: Vec<String> = s.elements().map(str::to_string).collect();
        let n = ids.len();
        let seed_ix = ids.iter().position(|e| e == seed).unwrap();
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & (1 << seed_ix) == 0 {
                continue;
            }
            let contains = |i: usize| mask & (1 << i) != 0;
            let stable = (0..n).all(|i| {
                if !contains(i) {
                    return true;
                }
                match s.succ_of(&ids[i]).unwrap() {
                    None => true,
                    Some(next) => {
                        let j = ids.iter().position(|e| e == next).unwrap();
                        contains(j)
                    }
                }
            });
            if stable {
                out.push(
                    (0..n)
                        .filter(|&i| contains(i))
                        .map(|i| ids[i].clone())
                        .collect(),
                );
            }
        }
        out
    }

    proptest! {
        /// The forward closure is contained in every stable subset holding the
        /// seed and is itself stable: it equals the intersection of chains.
        #[test]
        fn chain_is_least_stable_subset(s in small_structure(), seed_ix in 0usize..12) {
            let ids: Vec<String> = s.elements().map(str::to_string).collect();
            let seed = &ids[seed_ix % ids.len()];
            let chain = s.chain_of(seed, s.len()).unwrap();
            prop_assert!(chain.is_complete());

            for subset in stable_subsets_containing(&s, seed) {
                for member in chain.members() {
                    prop_assert!(subset.contains(member));
                }
            }
            // Stability of the chain itself, up to the frontier.
            for member in chain.members() {
                if let Some(next) = s.succ_of(member).unwrap() {
                    prop_assert!(chain.contains(next));
                }
            }
        }

        /// The chain-based induction verdict agrees with brute-force subset
        /// enumeration.
        #[test]
        fn d3_matches_exhaustive_induction(s in small_structure()) {
            let report = s.check_axioms();
            let strict = s.induction_exhaustive().expect("small carrier");
            prop_assert_eq!(report.d3, strict);
        }

        /// Reported counterexamples reproduce the violation they witness.
        #[test]
        fn counterexamples_are_sound(s in small_structure()) {
            let report = s.check_axioms();
            if let Some(e) = &report.counterexamples.d1 {
                prop_assert!(!report.d1);
                prop_assert_eq!(s.succ_of(e).unwrap(), Some(s.zero()));
            }
            if let Some((a, b)) = &report.counterexamples.d2 {
                prop_assert!(!report.d2);
                prop_assert_ne!(a, b);
                let sa = s.succ_of(a).unwrap();
                prop_assert!(sa.is_some());
                prop_assert_eq!(sa, s.succ_of(b).unwrap());
            }
            if let Some(e) = &report.counterexamples.d3 {
                prop_assert!(!report.d3);
                prop_assert!(!s.is_frontier(e).unwrap());
                let chain = s.chain_of(s.zero(), s.len()).unwrap();
                prop_assert!(!chain.contains(e));
            }
        }
    }
}
