//! Gauss diagrams of ordered links and tangles.
//!
//! A diagram is a list of components, each either a closed circle or a based
//! circle (cut open at a base point that sits before slot 0), together with
//! signed arrows. An arrow points from the over-passage (tail) to the
//! under-passage (head) of a crossing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// Sign of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Pos),
            '-' => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

/// 1-based component number as it appears in the text formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(usize);

impl ComponentId {
    /// Panics if `number` is zero.
    pub fn new(number: usize) -> Self {
        assert!(number >= 1, "component numbers start at 1");
        ComponentId(number)
    }

    pub fn from_index(index: usize) -> Self {
        ComponentId(index + 1)
    }

    pub fn number(self) -> usize {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which end of an arrow sits at a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn letter(self) -> char {
        match self {
            End::Tail => 'O',
            End::Head => 'U',
        }
    }
}

/// A slot on a component: `component` is a 0-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub component: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub sign: Sign,
    pub tail: Endpoint,
    pub head: Endpoint,
}

impl Arrow {
    pub fn endpoint(&self, end: End) -> Endpoint {
        match end {
            End::Tail => self.tail,
            End::Head => self.head,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub based: bool,
    pub len: usize,
}

/// The occupant of one slot: an arrow (index into [`GaussDiagram::arrows`]) and which end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub arrow: usize,
    pub end: End,
}

/// One token of a component word, `O<id><sign>` or `U<id><sign>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub id: String,
    pub end: End,
    pub sign: Sign,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.end.letter(), self.id, self.sign.symbol())
    }
}

/// The reading of one component in slot order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub based: bool,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    DanglingEndpoint {
        id: String,
        component: usize,
        position: usize,
    },
    DuplicateTail {
        id: String,
    },
    DuplicateHead {
        id: String,
    },
    MissingTail {
        id: String,
    },
    MissingHead {
        id: String,
    },
    SignMismatch {
        id: String,
    },
    SameSlot {
        id: String,
    },
    SlotCollision {
        component: usize,
        position: usize,
    },
    EmptySlot {
        component: usize,
        position: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingEndpoint {
                id,
                component,
                position,
            } => write!(
                f,
                "dangling endpoint: crossing {id} references slot {position} of component {}",
                component + 1
            ),
            Violation::DuplicateTail { id } => write!(f, "duplicate tail: crossing {id}"),
            Violation::DuplicateHead { id } => write!(f, "duplicate head: crossing {id}"),
            Violation::MissingTail { id } => write!(f, "unpaired crossing {id}: no over-passage"),
            Violation::MissingHead { id } => write!(f, "unpaired crossing {id}: no under-passage"),
            Violation::SignMismatch { id } => write!(f, "sign mismatch: crossing {id}"),
            Violation::SameSlot { id } => write!(f, "crossing {id} has tail and head in one slot"),
            Violation::SlotCollision {
                component,
                position,
            } => write!(
                f,
                "slot {position} of component {} is used twice",
                component + 1
            ),
            Violation::EmptySlot {
                component,
                position,
            } => write!(
                f,
                "slot {position} of component {} is not used",
                component + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "invalid diagram: {}", parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("unknown crossing {0}")]
    UnknownCrossing(String),
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("component {0} is closed and has no base point")]
    NotBased(usize),
    #[error("component {0} has no endpoints; base point move is a no-op")]
    NoEndpoints(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseDirection {
    /// The base point slides past the first endpoint: `(a, b, c)` becomes `(b, c, a)`.
    Forward,
    /// The base point slides back past the last endpoint: `(a, b, c)` becomes `(c, a, b)`.
    Backward,
}

/// Checks the structural invariants of a diagram given as raw parts.
pub fn validate(components: &[Component], arrows: &[Arrow]) -> Result<(), Violations> {
    let mut violations = Vec::new();
    let mut occupied: Vec<Vec<u8>> = components.iter().map(|c| vec![0; c.len]).collect();

    let mut by_id: BTreeMap<&str, Vec<&Arrow>> = BTreeMap::new();
    for arrow in arrows {
        by_id.entry(arrow.id.as_str()).or_default().push(arrow);
    }
    for (id, group) in &by_id {
        if group.len() > 1 {
            violations.push(Violation::DuplicateTail { id: id.to_string() });
            violations.push(Violation::DuplicateHead { id: id.to_string() });
            if group.iter().any(|a| a.sign != group[0].sign) {
                violations.push(Violation::SignMismatch { id: id.to_string() });
            }
        }
    }

    for arrow in arrows {
        if arrow.tail == arrow.head {
            violations.push(Violation::SameSlot {
                id: arrow.id.clone(),
            });
        }
        for ep in [arrow.tail, arrow.head] {
            match occupied
                .get_mut(ep.component)
                .and_then(|c| c.get_mut(ep.position))
            {
                Some(count) => *count += 1,
                None => violations.push(Violation::DanglingEndpoint {
                    id: arrow.id.clone(),
                    component: ep.component,
                    position: ep.position,
                }),
            }
        }
    }

    for (component, slots) in occupied.iter().enumerate() {
        for (position, &count) in slots.iter().enumerate() {
            if count == 0 {
                violations.push(Violation::EmptySlot {
                    component,
                    position,
                });
            } else if count > 1 {
                violations.push(Violation::SlotCollision {
                    component,
                    position,
                });
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(Violations(violations))
    }
}

/// An immutable, validated Gauss diagram.
#[derive(Debug, Clone)]
pub struct GaussDiagram {
    components: Vec<Component>,
    arrows: Vec<Arrow>,
    slots: Vec<Vec<Slot>>,
}

impl GaussDiagram {
    pub fn new(components: Vec<Component>, arrows: Vec<Arrow>) -> Result<Self, Violations> {
        validate(&components, &arrows)?;
        let mut slots: Vec<Vec<Slot>> = components
            .iter()
            .map(|c| {
                vec![
                    Slot {
                        arrow: usize::MAX,
                        end: End::Tail
                    };
                    c.len
                ]
            })
            .collect();
        for (index, arrow) in arrows.iter().enumerate() {
            slots[arrow.tail.component][arrow.tail.position] = Slot {
                arrow: index,
                end: End::Tail,
            };
            slots[arrow.head.component][arrow.head.position] = Slot {
                arrow: index,
                end: End::Head,
            };
        }
        Ok(GaussDiagram {
            components,
            arrows,
            slots,
        })
    }

    /// `n` components with no arrows.
    pub fn unlink(n: usize, based: bool) -> Self {
        let components = vec![Component { based, len: 0 }; n];
        GaussDiagram::new(components, Vec::new()).expect("unlink is valid")
    }

    /// Builds a diagram from per-component words. Arrows are numbered in
    /// order of first appearance.
    pub fn from_words(words: &[Word]) -> Result<Self, Violations> {
        let mut violations = Vec::new();
        let mut order: Vec<&str> = Vec::new();
        let mut tails: HashMap<&str, (Endpoint, Sign)> = HashMap::new();
        let mut heads: HashMap<&str, (Endpoint, Sign)> = HashMap::new();

        for (component, word) in words.iter().enumerate() {
            for (position, token) in word.tokens.iter().enumerate() {
                let ep = Endpoint {
                    component,
                    position,
                };
                let id = token.id.as_str();
                if !tails.contains_key(id) && !heads.contains_key(id) {
                    order.push(id);
                }
                let (table, dup) = match token.end {
                    End::Tail => (&mut tails, Violation::DuplicateTail { id: id.to_string() }),
                    End::Head => (&mut heads, Violation::DuplicateHead { id: id.to_string() }),
                };
                if table.contains_key(id) {
                    violations.push(dup);
                } else {
                    table.insert(id, (ep, token.sign));
                }
            }
        }

        let mut arrows = Vec::with_capacity(order.len());
        for id in order {
            match (tails.get(id), heads.get(id)) {
                (Some(&(tail, s1)), Some(&(head, s2))) => {
                    if s1 != s2 {
                        violations.push(Violation::SignMismatch { id: id.to_string() });
                    }
                    arrows.push(Arrow {
                        id: id.to_string(),
                        sign: s1,
                        tail,
                        head,
                    });
                }
                (Some(_), None) => violations.push(Violation::MissingHead { id: id.to_string() }),
                (None, Some(_)) => violations.push(Violation::MissingTail { id: id.to_string() }),
                (None, None) => unreachable!(),
            }
        }
        if !violations.is_empty() {
            return Err(Violations(violations));
        }
        let components = words
            .iter()
            .map(|w| Component {
                based: w.based,
                len: w.tokens.len(),
            })
            .collect();
        GaussDiagram::new(components, arrows)
    }

    /// Assembles a diagram from slot sequences over an arrow table of `(id, sign)`.
    pub(crate) fn from_slot_sequences(
        based: &[bool],
        sequences: &[Vec<Slot>],
        meta: &[(String, Sign)],
    ) -> Result<Self, Violations> {
        let words: Vec<Word> = based
            .iter()
            .zip(sequences)
            .map(|(&based, seq)| Word {
                based,
                tokens: seq
                    .iter()
                    .map(|s| Token {
                        id: meta[s.arrow].0.clone(),
                        end: s.end,
                        sign: meta[s.arrow].1,
                    })
                    .collect(),
            })
            .collect();
        GaussDiagram::from_words(&words)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn slots(&self, component: usize) -> &[Slot] {
        &self.slots[component]
    }

    pub fn slot(&self, ep: Endpoint) -> Slot {
        self.slots[ep.component][ep.position]
    }

    pub fn arrow_by_id(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn is_based(&self, component: usize) -> bool {
        self.components[component].based
    }

    pub fn words(&self) -> Vec<Word> {
        self.components
            .iter()
            .zip(&self.slots)
            .map(|(c, slots)| Word {
                based: c.based,
                tokens: slots
                    .iter()
                    .map(|s| {
                        let a = &self.arrows[s.arrow];
                        Token {
                            id: a.id.clone(),
                            end: s.end,
                            sign: a.sign,
                        }
                    })
                    .collect(),
            })
            .collect()
    }

    pub(crate) fn arrow_meta(&self) -> Vec<(String, Sign)> {
        self.arrows.iter().map(|a| (a.id.clone(), a.sign)).collect()
    }

    pub(crate) fn based_flags(&self) -> Vec<bool> {
        self.components.iter().map(|c| c.based).collect()
    }

    /// Smallest positive integer label not already used as a crossing id.
    pub fn fresh_id(&self) -> String {
        fresh_ids(self.arrows.iter().map(|a| a.id.as_str()), 1).remove(0)
    }

    /// Switches the crossing `id`: the arrow is reversed and its sign negated.
    pub fn crossing_change(&self, id: &str) -> Result<GaussDiagram, DiagramError> {
        let index = self
            .arrow_by_id(id)
            .ok_or_else(|| DiagramError::UnknownCrossing(id.to_string()))?;
        let mut arrows = self.arrows.clone();
        let a = &mut arrows[index];
        std::mem::swap(&mut a.tail, &mut a.head);
        a.sign = a.sign.flip();
        Ok(GaussDiagram::new(self.components.clone(), arrows)
            .expect("crossing change keeps validity"))
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> GaussDiagram {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                id: a.id.clone(),
                sign: a.sign.flip(),
                tail: a.head,
                head: a.tail,
            })
            .collect();
        GaussDiagram::new(self.components.clone(), arrows).expect("mirror keeps validity")
    }

    /// Slides the base point of a based component past one adjacent endpoint.
    pub fn move_base_point(
        &self,
        component: ComponentId,
        direction: BaseDirection,
    ) -> Result<GaussDiagram, DiagramError> {
        let c = component.index();
        let comp = self
            .components
            .get(c)
            .ok_or(DiagramError::NoSuchComponent(component.number()))?;
        if !comp.based {
            return Err(DiagramError::NotBased(component.number()));
        }
        let n = comp.len;
        if n == 0 {
            return Err(DiagramError::NoEndpoints(component.number()));
        }
        let shift = |p: usize| match direction {
            BaseDirection::Forward => (p + n - 1) % n,
            BaseDirection::Backward => (p + 1) % n,
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                let mut a = a.clone();
                for ep in [&mut a.tail, &mut a.head] {
                    if ep.component == c {
                        ep.position = shift(ep.position);
                    }
                }
                a
            })
            .collect();
        Ok(GaussDiagram::new(self.components.clone(), arrows).expect("rotation keeps validity"))
    }

    /// Marks every component as based, cutting closed ones before slot 0.
    pub fn all_based(&self) -> GaussDiagram {
        let components = self
            .components
            .iter()
            .map(|c| Component {
                based: true,
                len: c.len,
            })
            .collect();
        GaussDiagram {
            components,
            arrows: self.arrows.clone(),
            slots: self.slots.clone(),
        }
    }

    /// Same diagram with every component closed.
    pub fn all_closed(&self) -> GaussDiagram {
        let components = self
            .components
            .iter()
            .map(|c| Component {
                based: false,
                len: c.len,
            })
            .collect();
        GaussDiagram {
            components,
            arrows: self.arrows.clone(),
            slots: self.slots.clone(),
        }
    }

    /// Relabels crossings `1, 2, …` in reading order (component by component,
    /// slot by slot). Two diagrams equal up to crossing labels have equal
    /// canonical forms.
    pub fn canonical(&self) -> GaussDiagram {
        let mut rename: Vec<Option<String>> = vec![None; self.arrows.len()];
        let mut next = 1usize;
        for slots in &self.slots {
            for s in slots {
                if rename[s.arrow].is_none() {
                    rename[s.arrow] = Some(next.to_string());
                    next += 1;
                }
            }
        }
        let mut arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .zip(rename)
            .map(|(a, name)| Arrow {
                id: name.expect("every arrow has a slot"),
                ..a.clone()
            })
            .collect();
        arrows.sort_by_key(|a| (a.tail, a.head));
        GaussDiagram::new(self.components.clone(), arrows).expect("relabeling keeps validity")
    }

    pub fn same_up_to_labels(&self, other: &GaussDiagram) -> bool {
        self.canonical() == other.canonical()
    }

    /// Removes the arrow `id` and closes up the slots it occupied.
    pub fn remove_arrow(&self, id: &str) -> Result<GaussDiagram, DiagramError> {
        let index = self
            .arrow_by_id(id)
            .ok_or_else(|| DiagramError::UnknownCrossing(id.to_string()))?;
        let sequences: Vec<Vec<Slot>> = self
            .slots
            .iter()
            .map(|seq| {
                seq.iter()
                    .filter(|s| s.arrow != index)
                    .map(|s| Slot {
                        arrow: if s.arrow > index {
                            s.arrow - 1
                        } else {
                            s.arrow
                        },
                        end: s.end,
                    })
                    .collect()
            })
            .collect();
        let mut meta = self.arrow_meta();
        meta.remove(index);
        Ok(
            GaussDiagram::from_slot_sequences(&self.based_flags(), &sequences, &meta)
                .expect("removal keeps validity"),
        )
    }
}

/// Equality ignores the order in which arrows are stored.
impl PartialEq for GaussDiagram {
    fn eq(&self, other: &Self) -> bool {
        if self.components != other.components || self.arrows.len() != other.arrows.len() {
            return false;
        }
        let mut a: Vec<&Arrow> = self.arrows.iter().collect();
        let mut b: Vec<&Arrow> = other.arrows.iter().collect();
        a.sort_by(|x, y| x.id.cmp(&y.id));
        b.sort_by(|x, y| x.id.cmp(&y.id));
        a == b
    }
}

impl Eq for GaussDiagram {}

/// `count` numeric labels not present in `used`, smallest first.
pub(crate) fn fresh_ids<'a>(used: impl Iterator<Item = &'a str>, count: usize) -> Vec<String> {
    let used: std::collections::HashSet<&str> = used.collect();
    let mut out = Vec::with_capacity(count);
    let mut n = 1usize;
    while out.len() < count {
        let candidate = n.to_string();
        if !used.contains(candidate.as_str()) {
            out.push(candidate);
        }
        n += 1;
    }
    out
}
