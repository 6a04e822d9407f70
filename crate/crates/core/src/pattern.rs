//! Arrow-diagram patterns and the pairing ⟨A, G⟩.
//!
//! ⟨A, G⟩ sums, over every embedding of the pattern's arrows into the
//! diagram's arrows, the product of the matched signs. An embedding sends
//! each pattern circle to its bound component, keeps arrow directions, and
//! keeps the order of endpoints on every circle (linear when both the
//! pattern circle and the component are based, cyclic otherwise).

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::gauss::{GaussDiagram, Sign};
use crate::scalar::Scalar;
use crate::text::{content_lines, fields, ParseError};

/// Index placeholders of the three pattern circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Placeholder {
    I,
    J,
    K,
}

impl Placeholder {
    pub const ALL: [Placeholder; 3] = [Placeholder::I, Placeholder::J, Placeholder::K];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        ['i', 'j', 'k'][self.index()]
    }

    fn from_letter(s: &str) -> Option<Placeholder> {
        match s {
            "i" => Some(Placeholder::I),
            "j" => Some(Placeholder::J),
            "k" => Some(Placeholder::K),
            _ => None,
        }
    }

    /// The relabeling (i, j, k) → (k, j, i).
    pub fn swap_outer(self) -> Placeholder {
        match self {
            Placeholder::I => Placeholder::K,
            Placeholder::J => Placeholder::J,
            Placeholder::K => Placeholder::I,
        }
    }
}

/// A permutation of {1, 2, 3}, written `σ = (1 2 3 / i j k)` with `images = [i, j, k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: [usize; 3],
}

impl Permutation {
    pub const IDENTITY: Permutation = Permutation { images: [1, 2, 3] };

    /// All six, in the order id, (123), (132), (23), (12), (13).
    pub const ALL: [Permutation; 6] = [
        Permutation { images: [1, 2, 3] },
        Permutation { images: [2, 3, 1] },
        Permutation { images: [3, 1, 2] },
        Permutation { images: [1, 3, 2] },
        Permutation { images: [2, 1, 3] },
        Permutation { images: [3, 2, 1] },
    ];

    pub fn new(images: [usize; 3]) -> Option<Permutation> {
        let mut sorted = images;
        sorted.sort_unstable();
        (sorted == [1, 2, 3]).then_some(Permutation { images })
    }

    pub fn images(&self) -> [usize; 3] {
        self.images
    }

    /// +1 for even, -1 for odd.
    pub fn parity(&self) -> i64 {
        let [a, b, c] = self.images;
        let inversions = (a > b) as u8 + (a > c) as u8 + (b > c) as u8;
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    /// Cycle notation: `id`, `(12)`, `(123)`, …
    pub fn name(&self) -> &'static str {
        match self.images {
            [1, 2, 3] => "id",
            [2, 3, 1] => "(123)",
            [3, 1, 2] => "(132)",
            [1, 3, 2] => "(23)",
            [2, 1, 3] => "(12)",
            [3, 2, 1] => "(13)",
            _ => unreachable!("validated permutation"),
        }
    }

    pub fn from_name(name: &str) -> Option<Permutation> {
        Permutation::ALL.into_iter().find(|p| p.name() == name)
    }

    /// The 0-based component a placeholder is bound to.
    pub fn component(&self, placeholder: Placeholder) -> usize {
        self.images[placeholder.index()] - 1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Assignment of pattern placeholders to 0-based diagram components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Binding([usize; 3]);

impl Binding {
    pub fn new(components: [usize; 3]) -> Result<Binding, PatternError> {
        let [a, b, c] = components;
        if a == b || a == c || b == c {
            return Err(PatternError::BindingNotInjective);
        }
        Ok(Binding(components))
    }

    pub fn component(&self, placeholder: Placeholder) -> usize {
        self.0[placeholder.index()]
    }
}

impl From<Permutation> for Binding {
    fn from(p: Permutation) -> Binding {
        Binding(p.images.map(|i| i - 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternEndpoint {
    /// Index into [`ArrowPattern::circles`].
    pub circle: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternArrow {
    /// `None` matches either sign.
    pub sign: Option<Sign>,
    pub tail: PatternEndpoint,
    pub head: PatternEndpoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternCircle {
    pub placeholder: Placeholder,
    pub based: bool,
    pub slots: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrowPattern {
    pub name: String,
    pub circles: Vec<PatternCircle>,
    pub arrows: Vec<PatternArrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("binding is not injective")]
    BindingNotInjective,
    #[error("binding sends circle {placeholder} to component {component}, but the diagram has {available}")]
    UnboundCircle {
        placeholder: char,
        component: usize,
        available: usize,
    },
    #[error("formulas need exactly 3 components, diagram has {0}")]
    ComponentCount(usize),
    #[error("ill-formed pattern {name}: {reason}")]
    IllFormed { name: String, reason: String },
    #[error("unknown pattern {0}")]
    UnknownPattern(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl ArrowPattern {
    pub fn check(&self) -> Result<(), PatternError> {
        let bad = |reason: String| PatternError::IllFormed {
            name: self.name.clone(),
            reason,
        };
        if self.circles.len() > 3 {
            return Err(bad("more than 3 circles".into()));
        }
        let mut seen = HashSet::new();
        for c in &self.circles {
            if !seen.insert(c.placeholder) {
                return Err(bad(format!(
                    "placeholder {} repeated",
                    c.placeholder.letter()
                )));
            }
        }
        let mut used: Vec<Vec<u8>> = self
            .circles
            .iter()
            .map(|c| vec![0; c.slots.len()])
            .collect();
        for a in &self.arrows {
            if a.tail == a.head {
                return Err(bad("arrow with tail and head in one slot".into()));
            }
            for ep in [a.tail, a.head] {
                match used.get_mut(ep.circle).and_then(|c| c.get_mut(ep.position)) {
                    Some(n) => *n += 1,
                    None => return Err(bad("arrow references a missing slot".into())),
                }
            }
        }
        for (c, slots) in used.iter().enumerate() {
            for (p, &n) in slots.iter().enumerate() {
                if n != 1 {
                    return Err(bad(format!(
                        "slot {} on circle {} used {n} times",
                        self.circles[c].slots[p],
                        self.circles[c].placeholder.letter()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Swaps the roles of placeholders i and k.
    pub fn reindex_outer(&self) -> ArrowPattern {
        let circles = self
            .circles
            .iter()
            .map(|c| PatternCircle {
                placeholder: c.placeholder.swap_outer(),
                ..c.clone()
            })
            .collect();
        ArrowPattern {
            name: self.name.clone(),
            circles,
            arrows: self.arrows.clone(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> ArrowPattern {
        self.name = name.into();
        self
    }
}

/// Pairing ⟨pattern, diagram⟩ under `binding`.
pub fn count_pattern(
    pattern: &ArrowPattern,
    binding: &Binding,
    diagram: &GaussDiagram,
) -> Result<i64, PatternError> {
    let n = diagram.component_count();
    let bound: Vec<usize> = pattern
        .circles
        .iter()
        .map(|c| binding.component(c.placeholder))
        .collect();
    for (c, &comp) in pattern.circles.iter().zip(&bound) {
        if comp >= n {
            return Err(PatternError::UnboundCircle {
                placeholder: c.placeholder.letter(),
                component: comp + 1,
                available: n,
            });
        }
    }

    // Candidate diagram arrows per pattern arrow.
    let mut candidates: Vec<(usize, Vec<usize>)> = pattern
        .arrows
        .iter()
        .enumerate()
        .map(|(pi, pa)| {
            let (tc, hc) = (bound[pa.tail.circle], bound[pa.head.circle]);
            let list = diagram
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| {
                    a.tail.component == tc
                        && a.head.component == hc
                        && pa.sign.is_none_or(|s| s == a.sign)
                })
                .map(|(i, _)| i)
                .collect();
            (pi, list)
        })
        .collect();
    candidates.sort_by_key(|(_, list)| list.len());
    if candidates.iter().any(|(_, list)| list.is_empty()) {
        return Ok(0);
    }

    let linear: Vec<bool> = pattern
        .circles
        .iter()
        .zip(&bound)
        .map(|(c, &comp)| c.based && diagram.is_based(comp))
        .collect();

    let mut search = Search {
        pattern,
        diagram,
        candidates: &candidates,
        linear: &linear,
        assigned: vec![None; pattern.arrows.len()],
        used: vec![false; diagram.arrows().len()],
    };
    Ok(search.run(0, 1))
}

struct Search<'a> {
    pattern: &'a ArrowPattern,
    diagram: &'a GaussDiagram,
    candidates: &'a [(usize, Vec<usize>)],
    linear: &'a [bool],
    assigned: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, weight: i64) -> i64 {
        if depth == self.candidates.len() {
            return weight;
        }
        let (pi, ref list) = self.candidates[depth];
        let pa = &self.pattern.arrows[pi];
        let mut total = 0;
        for &di in list {
            if self.used[di] {
                continue;
            }
            self.assigned[pi] = Some(di);
            self.used[di] = true;
            if self.order_ok(pa.tail.circle)
                && (pa.head.circle == pa.tail.circle || self.order_ok(pa.head.circle))
            {
                total += self.run(depth + 1, weight * self.diagram.arrows()[di].sign.value());
            }
            self.used[di] = false;
            self.assigned[pi] = None;
        }
        total
    }

    /// Whether the endpoints assigned so far on `circle` respect its order.
    fn order_ok(&self, circle: usize) -> bool {
        let mut placed: Vec<(usize, usize)> = Vec::new();
        for (pi, pa) in self.pattern.arrows.iter().enumerate() {
            let Some(di) = self.assigned[pi] else {
                continue;
            };
            let da = &self.diagram.arrows()[di];
            if pa.tail.circle == circle {
                placed.push((pa.tail.position, da.tail.position));
            }
            if pa.head.circle == circle {
                placed.push((pa.head.position, da.head.position));
            }
        }
        placed.sort_unstable();
        let m = placed.len();
        if self.linear[circle] {
            placed.windows(2).all(|w| w[0].1 < w[1].1)
        } else {
            (0..m)
                .filter(|&i| placed[i].1 > placed[(i + 1) % m].1)
                .count()
                <= 1
        }
    }
}

/// How the placeholders of a formula are bound to the three components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summation {
    /// Identity binding only.
    None,
    /// A single fixed binding.
    Fixed(Permutation),
    OverEven,
    OverOdd,
    /// Σ_σ sign(σ) ⟨…⟩.
    SignedOverS3,
    UnsignedOverS3,
}

impl Summation {
    /// Bindings with their parity factors.
    pub fn bindings(&self) -> Vec<(Permutation, i64)> {
        match self {
            Summation::None => vec![(Permutation::IDENTITY, 1)],
            Summation::Fixed(p) => vec![(*p, 1)],
            Summation::OverEven => Permutation::ALL
                .into_iter()
                .filter(|p| p.is_even())
                .map(|p| (p, 1))
                .collect(),
            Summation::OverOdd => Permutation::ALL
                .into_iter()
                .filter(|p| !p.is_even())
                .map(|p| (p, 1))
                .collect(),
            Summation::SignedOverS3 => Permutation::ALL
                .into_iter()
                .map(|p| (p, p.parity()))
                .collect(),
            Summation::UnsignedOverS3 => Permutation::ALL.into_iter().map(|p| (p, 1)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormulaTerm<T> {
    pub coefficient: T,
    pub pattern: ArrowPattern,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Formula<T> {
    pub terms: Vec<FormulaTerm<T>>,
    pub summation: Summation,
    pub prefactor: T,
}

impl<T: Scalar> Formula<T> {
    pub fn new(terms: Vec<(T, ArrowPattern)>, summation: Summation, prefactor: T) -> Self {
        let terms = terms
            .into_iter()
            .map(|(coefficient, pattern)| FormulaTerm {
                coefficient,
                pattern,
            })
            .collect();
        Formula {
            terms,
            summation,
            prefactor,
        }
    }

    pub fn with_summation(&self, summation: Summation) -> Self {
        Formula {
            summation,
            ..self.clone()
        }
    }
}

/// prefactor · Σ_σ (parity) · Σ_terms coefficient · ⟨pattern, G⟩_σ.
///
/// Terms are summed in a fixed order, so exact scalars give identical results
/// on every run.
pub fn evaluate_formula<T: Scalar>(
    formula: &Formula<T>,
    diagram: &GaussDiagram,
) -> Result<T, PatternError> {
    if diagram.component_count() != 3 {
        return Err(PatternError::ComponentCount(diagram.component_count()));
    }
    let mut total = T::zero();
    for (sigma, parity) in formula.summation.bindings() {
        let binding = Binding::from(sigma);
        let mut inner = T::zero();
        for term in &formula.terms {
            let count = count_pattern(&term.pattern, &binding, diagram)?;
            inner = inner + term.coefficient.clone() * T::from_count(count);
        }
        total = total + T::from_count(parity) * inner;
    }
    Ok(formula.prefactor.clone() * total)
}

/// Named patterns, immutable once loaded.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PatternLibrary {
    patterns: BTreeMap<String, ArrowPattern>,
}

impl PatternLibrary {
    pub fn get(&self, name: &str) -> Result<&ArrowPattern, PatternError> {
        self.patterns
            .get(name)
            .ok_or_else(|| PatternError::UnknownPattern(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.patterns.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// The library shipped with the crate.
    pub fn standard() -> PatternLibrary {
        load_pattern_library(STANDARD_PATTERNS).expect("shipped pattern library parses")
    }
}

pub const STANDARD_PATTERNS: &str = include_str!("../../../data/patterns.txt");

/// Parses a pattern file. Each base pattern `x` in the file is registered as
/// `x(i,j,k)` together with its reindexed variant `x(k,j,i)`.
pub fn load_pattern_library(source: &str) -> Result<PatternLibrary, PatternError> {
    // (line, pattern, arrow lines), arrows resolved once all circles are known
    type Pending = (usize, ArrowPattern, Vec<(usize, String)>);
    let mut raw: Vec<Pending> = Vec::new();

    for line in content_lines(source) {
        let f = fields(line.text);
        let syntax = |column: usize, msg: &str| {
            PatternError::Parse(ParseError::at(line.number, column, msg))
        };
        match f.first().map(|(_, w)| *w) {
            Some("pattern") => {
                let [_, (_, name)] = f.as_slice() else {
                    return Err(syntax(1, "expected `pattern <name>`"));
                };
                raw.push((
                    line.number,
                    ArrowPattern {
                        name: name.to_string(),
                        circles: Vec::new(),
                        arrows: Vec::new(),
                    },
                    Vec::new(),
                ));
            }
            Some("circle") => {
                let (_, pattern, _) = raw
                    .last_mut()
                    .ok_or_else(|| syntax(1, "circle before pattern"))?;
                let colon = line
                    .text
                    .find(':')
                    .ok_or_else(|| syntax(1, "expected `circle <p>[*]:`"))?;
                let head = fields(&line.text[..colon]);
                let [_, (col, label)] = head.as_slice() else {
                    return Err(syntax(1, "expected `circle <p>[*]:`"));
                };
                let (letter, based) = match label.strip_suffix('*') {
                    Some(l) => (l, true),
                    None => (*label, false),
                };
                let placeholder = Placeholder::from_letter(letter)
                    .ok_or_else(|| syntax(*col, "placeholder must be i, j or k"))?;
                let slots = fields(&line.text[colon + 1..])
                    .into_iter()
                    .map(|(_, s)| s.to_string())
                    .collect();
                pattern.circles.push(PatternCircle {
                    placeholder,
                    based,
                    slots,
                });
            }
            Some("arrow") => {
                let (_, _, arrows) = raw
                    .last_mut()
                    .ok_or_else(|| syntax(1, "arrow before pattern"))?;
                arrows.push((line.number, line.text.to_string()));
            }
            _ => return Err(syntax(1, "expected `pattern`, `circle` or `arrow`")),
        }
    }

    let mut library = PatternLibrary::default();
    for (_, mut pattern, arrow_lines) in raw {
        for (number, text) in arrow_lines {
            let f = fields(&text);
            let syntax =
                |column: usize, msg: &str| PatternError::Parse(ParseError::at(number, column, msg));
            let (tail, head, sign) = match f.as_slice() {
                [_, (_, t), (_, "->"), (_, h)] => (*t, *h, None),
                [_, (_, t), (_, "->"), (_, h), (c, s)] => {
                    let sign = match *s {
                        "+" => Sign::Pos,
                        "-" => Sign::Neg,
                        _ => return Err(syntax(*c, "sign must be + or -")),
                    };
                    (*t, *h, Some(sign))
                }
                _ => return Err(syntax(1, "expected `arrow <tail> -> <head> [sign]`")),
            };
            let locate = |slot: &str| {
                pattern.circles.iter().enumerate().find_map(|(ci, c)| {
                    c.slots
                        .iter()
                        .position(|s| s == slot)
                        .map(|p| PatternEndpoint {
                            circle: ci,
                            position: p,
                        })
                })
            };
            let tail = locate(tail).ok_or_else(|| syntax(1, &format!("unknown slot `{tail}`")))?;
            let head = locate(head).ok_or_else(|| syntax(1, &format!("unknown slot `{head}`")))?;
            pattern.arrows.push(PatternArrow { sign, tail, head });
        }
        pattern.check()?;
        let base = pattern.name.clone();
        let reindexed = pattern.reindex_outer().with_name(format!("{base}(k,j,i)"));
        library.patterns.insert(
            format!("{base}(i,j,k)"),
            pattern.with_name(format!("{base}(i,j,k)")),
        );
        library.patterns.insert(reindexed.name.clone(), reindexed);
    }
    Ok(library)
}
