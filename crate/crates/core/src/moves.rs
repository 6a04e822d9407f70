//! Reidemeister moves as local rewrites of Gauss diagrams.
//!
//! Each move variant is a pair of local pictures (`left`, `right`) over the
//! same named strands. A strand is a run of consecutive slots on one
//! component; an empty strand is a gap where slots get inserted. Labels
//! shared by both sides denote the same crossing. The table is data, loaded
//! from the move file format:
//!
//! ```text
//! move 2+-
//! left:
//! strand o:
//! strand u:
//! right:
//! strand o: Ox+ Oy-
//! strand u: Uy- Ux+
//! ```
//!
//! Strands never run across a base point.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gauss::{fresh_ids, End, GaussDiagram, Sign, Slot, Token};
use crate::text::{content_lines, fields, parse_tokens, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("move {tag}: {reason}")]
    IllFormed { tag: String, reason: String },
    #[error("unknown move variant {0}")]
    UnknownVariant(String),
    #[error("site no longer matches move {0}")]
    StaleSite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Left picture to right picture.
    Apply,
    /// Right picture to left picture.
    Inverse,
}

/// A move variant together with the direction it is used in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSpec {
    pub tag: String,
    pub direction: Direction,
}

impl MoveSpec {
    pub fn apply(tag: &str) -> MoveSpec {
        MoveSpec {
            tag: tag.to_string(),
            direction: Direction::Apply,
        }
    }

    pub fn inverse(tag: &str) -> MoveSpec {
        MoveSpec {
            tag: tag.to_string(),
            direction: Direction::Inverse,
        }
    }

    /// 1, 2 or 3, from the leading digit of the tag.
    pub fn kind(&self) -> u8 {
        self.tag
            .chars()
            .next()
            .and_then(|c| c.to_digit(10))
            .unwrap_or(0) as u8
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Apply => write!(f, "Ω{}", self.tag),
            Direction::Inverse => write!(f, "Ω{}⁻¹", self.tag),
        }
    }
}

/// Where one strand of a local picture sits: a run starting at slot `start`,
/// or for an empty strand the gap before slot `start`. `rank` orders empty
/// strands that share a gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    pub component: usize,
    pub start: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub placements: Vec<Placement>,
}

/// One variant: strands with their left and right contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRule {
    pub tag: String,
    pub strands: Vec<String>,
    pub left: Vec<Vec<Token>>,
    pub right: Vec<Vec<Token>>,
}

impl MoveRule {
    fn side(&self, direction: Direction) -> (&[Vec<Token>], &[Vec<Token>]) {
        match direction {
            Direction::Apply => (&self.left, &self.right),
            Direction::Inverse => (&self.right, &self.left),
        }
    }

    fn check(&self) -> Result<(), MoveError> {
        let bad = |reason: String| MoveError::IllFormed {
            tag: self.tag.clone(),
            reason,
        };
        if self.left.len() != self.strands.len() || self.right.len() != self.strands.len() {
            return Err(bad("both sides must list every strand".into()));
        }
        for side in [&self.left, &self.right] {
            let mut ends: HashMap<&str, (u8, u8, Option<Sign>)> = HashMap::new();
            for t in side.iter().flatten() {
                let e = ends.entry(t.id.as_str()).or_insert((0, 0, None));
                match t.end {
                    End::Tail => e.0 += 1,
                    End::Head => e.1 += 1,
                }
                if e.2.is_some_and(|s| s != t.sign) {
                    return Err(bad(format!("crossing {} has two signs", t.id)));
                }
                e.2 = Some(t.sign);
            }
            if let Some((id, _)) = ends.iter().find(|(_, e)| (e.0, e.1) != (1, 1)) {
                return Err(bad(format!("crossing {id} needs one O and one U per side")));
            }
            if side.iter().any(Vec::is_empty) && side.iter().any(|s| !s.is_empty()) {
                return Err(bad("a side is either all gaps or all runs".into()));
            }
        }
        for (l, r) in self.left.iter().zip(&self.right) {
            if !(l.len() == r.len() || l.is_empty() || r.is_empty()) {
                return Err(bad(
                    "a strand must keep its length or be created or removed".into(),
                ));
            }
        }
        let signs = |side: &[Vec<Token>]| -> HashMap<String, Sign> {
            side.iter()
                .flatten()
                .map(|t| (t.id.clone(), t.sign))
                .collect()
        };
        let (ls, rs) = (signs(&self.left), signs(&self.right));
        if ls.iter().any(|(id, s)| rs.get(id).is_some_and(|r| r != s)) {
            return Err(bad("a kept crossing changes sign".into()));
        }
        Ok(())
    }

    fn arrow_count(side: &[Vec<Token>]) -> usize {
        side.iter().map(Vec::len).sum::<usize>() / 2
    }
}

pub const STANDARD_MOVES: &str = include_str!("../../../data/moves.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTable {
    rules: Vec<MoveRule>,
}

pub fn parse_move_table(source: &str) -> Result<MoveTable, MoveError> {
    #[derive(PartialEq)]
    enum Block {
        None,
        Left,
        Right,
    }
    let mut rules: Vec<MoveRule> = Vec::new();
    let mut block = Block::None;
    let mut left: BTreeMap<String, Vec<Token>> = BTreeMap::new();
    let mut strand_order: Vec<String> = Vec::new();
    let mut right: BTreeMap<String, Vec<Token>> = BTreeMap::new();

    fn finish(
        rules: &mut [MoveRule],
        strand_order: &mut Vec<String>,
        left: &mut BTreeMap<String, Vec<Token>>,
        right: &mut BTreeMap<String, Vec<Token>>,
    ) -> Result<(), MoveError> {
        if let Some(rule) = rules.last_mut() {
            let names = std::mem::take(strand_order);
            if names.len() != right.len() || names.iter().any(|n| !right.contains_key(n)) {
                return Err(MoveError::IllFormed {
                    tag: rule.tag.clone(),
                    reason: "left and right name different strands".into(),
                });
            }
            rule.left = names
                .iter()
                .map(|n| left.remove(n).unwrap_or_default())
                .collect();
            rule.right = names
                .iter()
                .map(|n| right.remove(n).unwrap_or_default())
                .collect();
            rule.strands = names;
            right.clear();
            rule.check()?;
        }
        Ok(())
    }

    for line in content_lines(source) {
        let f = fields(line.text);
        let err =
            |column: usize, msg: &str| MoveError::Parse(ParseError::at(line.number, column, msg));
        match f.first().map(|(_, w)| *w) {
            Some("move") => {
                finish(&mut rules, &mut strand_order, &mut left, &mut right)?;
                let [_, (_, tag)] = f.as_slice() else {
                    return Err(err(1, "expected `move <tag>`"));
                };
                if rules.iter().any(|r| r.tag == *tag) {
                    return Err(err(6, "duplicate move tag"));
                }
                rules.push(MoveRule {
                    tag: tag.to_string(),
                    strands: vec![],
                    left: vec![],
                    right: vec![],
                });
                block = Block::None;
            }
            Some("left:") if !rules.is_empty() => block = Block::Left,
            Some("right:") if !rules.is_empty() => block = Block::Right,
            Some("strand") if block != Block::None => {
                let colon = line
                    .text
                    .find(':')
                    .ok_or_else(|| err(1, "expected `strand <name>:`"))?;
                let head = fields(&line.text[..colon]);
                let [_, (_, name)] = head.as_slice() else {
                    return Err(err(1, "expected `strand <name>:`"));
                };
                let tokens = parse_tokens(&line.text[colon + 1..], line.number, colon + 2)?;
                let target = if block == Block::Left {
                    &mut left
                } else {
                    &mut right
                };
                if target.insert(name.to_string(), tokens).is_some() {
                    return Err(err(1, "strand listed twice"));
                }
                if block == Block::Left {
                    strand_order.push(name.to_string());
                }
            }
            _ => return Err(err(1, "expected `move`, `left:`, `right:` or `strand`")),
        }
    }
    finish(&mut rules, &mut strand_order, &mut left, &mut right)?;
    Ok(MoveTable { rules })
}

impl MoveTable {
    pub fn standard() -> MoveTable {
        parse_move_table(STANDARD_MOVES).expect("shipped move table parses")
    }

    pub fn rules(&self) -> &[MoveRule] {
        &self.rules
    }

    pub fn rule(&self, tag: &str) -> Result<&MoveRule, MoveError> {
        self.rules
            .iter()
            .find(|r| r.tag == tag)
            .ok_or_else(|| MoveError::UnknownVariant(tag.to_string()))
    }

    /// Every variant in both directions.
    pub fn specs(&self) -> Vec<MoveSpec> {
        self.rules
            .iter()
            .flat_map(|r| [MoveSpec::apply(&r.tag), MoveSpec::inverse(&r.tag)])
            .collect()
    }

    pub fn enumerate_sites(
        &self,
        diagram: &GaussDiagram,
        spec: &MoveSpec,
    ) -> Result<Vec<MoveSite>, MoveError> {
        let rule = self.rule(&spec.tag)?;
        Ok(find_sites(diagram, rule.side(spec.direction).0))
    }

    pub fn apply_move(
        &self,
        diagram: &GaussDiagram,
        spec: &MoveSpec,
        site: &MoveSite,
    ) -> Result<GaussDiagram, MoveError> {
        let rule = self.rule(&spec.tag)?;
        let (source, target) = rule.side(spec.direction);
        rewrite(diagram, source, target, site).ok_or_else(|| MoveError::StaleSite(spec.to_string()))
    }

    /// A seeded walk of `steps` moves drawn uniformly from all applicable
    /// (move, site) pairs. When nothing in `allowed` applies, a kink is
    /// inserted on a random gap so the walk keeps going.
    pub fn random_walk(
        &self,
        seed: u64,
        steps: usize,
        allowed: &[MoveSpec],
        start: &GaussDiagram,
    ) -> Result<Vec<GaussDiagram>, MoveError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut walk = vec![start.clone()];
        for _ in 0..steps {
            let current = walk.last().expect("walk is never empty");
            let next = match self.random_step(&mut rng, current, allowed)? {
                Some((_, _, next)) => next,
                None => self.forced_insertion(&mut rng, current),
            };
            walk.push(next);
        }
        Ok(walk)
    }

    /// One uniformly drawn (move, site) pair and its result, if any applies.
    pub fn random_step<R: Rng>(
        &self,
        rng: &mut R,
        diagram: &GaussDiagram,
        allowed: &[MoveSpec],
    ) -> Result<Option<(MoveSpec, MoveSite, GaussDiagram)>, MoveError> {
        let mut options: Vec<(&MoveSpec, MoveSite)> = Vec::new();
        for spec in allowed {
            for site in self.enumerate_sites(diagram, spec)? {
                options.push((spec, site));
            }
        }
        let Some((spec, site)) = options.choose(rng) else {
            return Ok(None);
        };
        let next = self.apply_move(diagram, spec, site)?;
        Ok(Some(((*spec).clone(), site.clone(), next)))
    }

    fn forced_insertion<R: Rng>(&self, rng: &mut R, diagram: &GaussDiagram) -> GaussDiagram {
        let kink = vec![vec![
            Token {
                id: "k".into(),
                end: End::Tail,
                sign: Sign::Pos,
            },
            Token {
                id: "k".into(),
                end: End::Head,
                sign: Sign::Pos,
            },
        ]];
        plant(rng, diagram, &kink).expect("a kink fits in any gap")
    }
}

/// Inserts `picture` at a random placement; returns `None` if the diagram
/// has no components.
pub fn plant<R: Rng>(
    rng: &mut R,
    diagram: &GaussDiagram,
    picture: &[Vec<Token>],
) -> Option<GaussDiagram> {
    let empty = vec![Vec::new(); picture.len()];
    let sites = find_sites(diagram, &empty);
    let site = sites.choose(rng)?;
    rewrite(diagram, &empty, picture, site)
}

/// Planted copy of `picture` together with the placement of its strands.
pub fn plant_with_site<R: Rng>(
    rng: &mut R,
    diagram: &GaussDiagram,
    picture: &[Vec<Token>],
) -> Option<(GaussDiagram, MoveSite)> {
    let planted = plant(rng, diagram, picture)?;
    let sites = find_sites(&planted, picture);
    // The planted copy uses fresh labels; any site will do, but prefer one
    // made only of new arrows so the move acts on the planted picture.
    let old: BTreeSet<&str> = diagram.arrows().iter().map(|a| a.id.as_str()).collect();
    let site = sites.into_iter().find(|s| {
        site_arrows(&planted, picture, s)
            .iter()
            .all(|id| !old.contains(id.as_str()))
    })?;
    Some((planted, site))
}

fn site_arrows(diagram: &GaussDiagram, picture: &[Vec<Token>], site: &MoveSite) -> Vec<String> {
    let mut out = Vec::new();
    for (strand, p) in picture.iter().zip(&site.placements) {
        let n = diagram.components()[p.component].len;
        for t in 0..strand.len() {
            let slot = diagram.slots(p.component)[(p.start + t) % n.max(1)];
            out.push(diagram.arrows()[slot.arrow].id.clone());
        }
    }
    out
}

/// Gaps of a component: before each slot, plus after the last one when based.
fn gaps(diagram: &GaussDiagram, component: usize) -> std::ops::Range<usize> {
    let c = diagram.components()[component];
    if c.based {
        0..c.len + 1
    } else {
        0..c.len.max(1)
    }
}

/// All placements of `source` in `diagram`, in lexicographic order.
pub fn find_sites(diagram: &GaussDiagram, source: &[Vec<Token>]) -> Vec<MoveSite> {
    let mut sites = Vec::new();
    if source.iter().all(Vec::is_empty) {
        insertion_sites(diagram, source.len(), &[], &mut sites);
    } else {
        let mut state = RunMatch {
            diagram,
            source,
            placements: Vec::new(),
            labels: HashMap::new(),
            used: BTreeSet::new(),
        };
        state.search(&mut sites);
    }
    sites.sort();
    sites.dedup();
    sites
}

fn insertion_sites(
    diagram: &GaussDiagram,
    strands: usize,
    current: &[Placement],
    out: &mut Vec<MoveSite>,
) {
    if current.len() == strands {
        out.push(MoveSite {
            placements: current.to_vec(),
        });
        return;
    }
    for component in 0..diagram.component_count() {
        for start in gaps(diagram, component) {
            let sharing = current
                .iter()
                .filter(|p| p.component == component && p.start == start)
                .count();
            // every relative order among strands sharing this gap
            for rank in 0..=sharing {
                let mut shifted: Vec<Placement> = current.to_vec();
                for p in shifted.iter_mut() {
                    if p.component == component && p.start == start && p.rank >= rank {
                        p.rank += 1;
                    }
                }
                shifted.push(Placement {
                    component,
                    start,
                    rank,
                });
                insertion_sites(diagram, strands, &shifted, out);
            }
        }
    }
}

struct RunMatch<'a> {
    diagram: &'a GaussDiagram,
    source: &'a [Vec<Token>],
    placements: Vec<Placement>,
    labels: HashMap<&'a str, usize>,
    used: BTreeSet<(usize, usize)>,
}

impl<'a> RunMatch<'a> {
    fn search(&mut self, out: &mut Vec<MoveSite>) {
        let s = self.placements.len();
        if s == self.source.len() {
            out.push(MoveSite {
                placements: self.placements.clone(),
            });
            return;
        }
        let strand = &self.source[s];
        // A strand whose crossing is already matched has a forced start.
        let forced = strand.iter().enumerate().find_map(|(t, tok)| {
            self.labels.get(tok.id.as_str()).map(|&arrow| {
                let ep = self.diagram.arrows()[arrow].endpoint(tok.end);
                let n = self.diagram.components()[ep.component].len;
                (ep.component, (ep.position + n - t) % n)
            })
        });
        let candidates: Vec<(usize, usize)> = match forced {
            Some(c) => vec![c],
            None => (0..self.diagram.component_count())
                .flat_map(|c| (0..self.diagram.components()[c].len).map(move |p| (c, p)))
                .collect(),
        };
        for (component, start) in candidates {
            let Some(slots) = self.run(component, start, strand.len()) else {
                continue;
            };
            let mut added_labels = Vec::new();
            let mut ok = true;
            for (&(c, p), tok) in slots.iter().zip(strand) {
                let slot = self.diagram.slots(c)[p];
                let arrow = &self.diagram.arrows()[slot.arrow];
                if slot.end != tok.end || arrow.sign != tok.sign {
                    ok = false;
                    break;
                }
                match self.labels.get(tok.id.as_str()) {
                    Some(&a) if a != slot.arrow => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        if self.labels.values().any(|&a| a == slot.arrow) {
                            ok = false;
                            break;
                        }
                        self.labels.insert(tok.id.as_str(), slot.arrow);
                        added_labels.push(tok.id.as_str());
                    }
                }
            }
            if ok {
                self.used.extend(slots.iter().copied());
                self.placements.push(Placement {
                    component,
                    start,
                    rank: 0,
                });
                self.search(out);
                self.placements.pop();
                for sl in &slots {
                    self.used.remove(sl);
                }
            }
            for l in added_labels {
                self.labels.remove(l);
            }
        }
    }

    /// Slots of a run of `len` starting at `start`, if it stays clear of the
    /// base point and of runs already taken.
    fn run(&self, component: usize, start: usize, len: usize) -> Option<Vec<(usize, usize)>> {
        let c = self.diagram.components()[component];
        if len > c.len || (c.based && start + len > c.len) {
            return None;
        }
        let slots: Vec<(usize, usize)> =
            (0..len).map(|t| (component, (start + t) % c.len)).collect();
        if slots.iter().any(|s| self.used.contains(s)) {
            return None;
        }
        Some(slots)
    }
}

/// Whether `site` places `source` in `diagram`.
fn matches(diagram: &GaussDiagram, source: &[Vec<Token>], site: &MoveSite) -> bool {
    if site.placements.len() != source.len() {
        return false;
    }
    if source.iter().all(Vec::is_empty) {
        return site.placements.iter().all(|p| {
            p.component < diagram.component_count() && gaps(diagram, p.component).contains(&p.start)
        });
    }
    find_sites(diagram, source).contains(site)
}

enum Piece {
    Old(Slot),
    New(usize, End),
}

/// Replaces `source` at `site` by `target`.
fn rewrite(
    diagram: &GaussDiagram,
    source: &[Vec<Token>],
    target: &[Vec<Token>],
    site: &MoveSite,
) -> Option<GaussDiagram> {
    if !matches(diagram, source, site) {
        return None;
    }

    // Which diagram arrow each source label names.
    let mut label_arrow: HashMap<&str, usize> = HashMap::new();
    for (strand, p) in source.iter().zip(&site.placements) {
        let n = diagram.components()[p.component].len;
        for (t, tok) in strand.iter().enumerate() {
            let slot = diagram.slots(p.component)[(p.start + t) % n];
            label_arrow.insert(tok.id.as_str(), slot.arrow);
        }
    }
    let target_labels: BTreeSet<&str> = target.iter().flatten().map(|t| t.id.as_str()).collect();
    let removed: BTreeSet<usize> = label_arrow
        .iter()
        .filter(|(l, _)| !target_labels.contains(*l))
        .map(|(_, &a)| a)
        .collect();

    // Arrow table of the result: kept old arrows, then new ones.
    let old_meta = diagram.arrow_meta();
    let mut meta: Vec<(String, Sign)> = Vec::new();
    let mut old_index: Vec<Option<usize>> = vec![None; old_meta.len()];
    for (i, m) in old_meta.iter().enumerate() {
        if !removed.contains(&i) {
            old_index[i] = Some(meta.len());
            meta.push(m.clone());
        }
    }
    let new_labels: Vec<&str> = target_labels
        .iter()
        .copied()
        .filter(|l| !label_arrow.contains_key(l))
        .collect();
    let fresh = fresh_ids(old_meta.iter().map(|(id, _)| id.as_str()), new_labels.len());
    let mut new_index: HashMap<&str, usize> = HashMap::new();
    for (label, id) in new_labels.iter().zip(fresh) {
        let sign = target
            .iter()
            .flatten()
            .find(|t| t.id == *label)
            .expect("label from target")
            .sign;
        new_index.insert(label, meta.len());
        meta.push((id, sign));
    }
    let piece_for = |tok: &Token| -> Piece {
        match label_arrow.get(tok.id.as_str()) {
            Some(&a) => Piece::Old(Slot {
                arrow: a,
                end: tok.end,
            }),
            None => Piece::New(new_index[tok.id.as_str()], tok.end),
        }
    };

    let mut sequences = Vec::with_capacity(diagram.component_count());
    for component in 0..diagram.component_count() {
        let n = diagram.components()[component].len;
        let mut at: Vec<Option<Piece>> = diagram
            .slots(component)
            .iter()
            .map(|s| Some(Piece::Old(*s)))
            .collect();
        let mut inserts: BTreeMap<(usize, usize), Vec<Piece>> = BTreeMap::new();
        for ((src, tgt), p) in source.iter().zip(target).zip(&site.placements) {
            if p.component != component {
                continue;
            }
            if src.is_empty() {
                let gap = if diagram.is_based(component) {
                    p.start
                } else {
                    p.start % n.max(1)
                };
                inserts.insert((gap, p.rank), tgt.iter().map(piece_for).collect());
            } else if tgt.is_empty() {
                for t in 0..src.len() {
                    at[(p.start + t) % n] = None;
                }
            } else {
                for (t, tok) in tgt.iter().enumerate() {
                    at[(p.start + t) % n] = Some(piece_for(tok));
                }
            }
        }
        let mut seq: Vec<Slot> = Vec::new();
        let push = |piece: Piece, seq: &mut Vec<Slot>| match piece {
            Piece::Old(s) => {
                if let Some(i) = old_index[s.arrow] {
                    seq.push(Slot {
                        arrow: i,
                        end: s.end,
                    });
                }
            }
            Piece::New(i, end) => seq.push(Slot { arrow: i, end }),
        };
        let mut inserts = inserts.into_iter().peekable();
        for (pos, piece) in at.into_iter().enumerate() {
            while let Some(((gap, _), _)) = inserts.peek() {
                if *gap > pos {
                    break;
                }
                let (_, pieces) = inserts.next().expect("peeked");
                for piece in pieces {
                    push(piece, &mut seq);
                }
            }
            if let Some(piece) = piece {
                push(piece, &mut seq);
            }
        }
        for (_, pieces) in inserts {
            for piece in pieces {
                push(piece, &mut seq);
            }
        }
        sequences.push(seq);
    }
    GaussDiagram::from_slot_sequences(&diagram.based_flags(), &sequences, &meta).ok()
}

/// The side a rule starts from in `direction`.
pub fn picture_of(rule: &MoveRule, direction: Direction) -> Vec<Vec<Token>> {
    rule.side(direction).0.to_vec()
}

/// Total arrow change of a rule applied in `direction`.
pub fn arrow_delta(rule: &MoveRule, direction: Direction) -> isize {
    let (s, t) = rule.side(direction);
    MoveRule::arrow_count(t) as isize - MoveRule::arrow_count(s) as isize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_gauss_code;

    fn table() -> MoveTable {
        MoveTable::standard()
    }

    #[test]
    fn shipped_table_has_every_kind() {
        let t = table();
        for kind in 1..=3u8 {
            assert!(t.specs().iter().any(|s| s.kind() == kind));
        }
        assert_eq!(
            t.rules().iter().filter(|r| r.tag.starts_with('1')).count(),
            4
        );
        assert_eq!(
            t.rules().iter().filter(|r| r.tag.starts_with('2')).count(),
            4
        );
    }

    #[test]
    fn no_deletion_sites_on_the_unlink() {
        let g = GaussDiagram::unlink(3, true);
        let t = table();
        for spec in t.specs() {
            if spec.kind() == 2 && arrow_delta(t.rule(&spec.tag).unwrap(), spec.direction) < 0 {
                assert!(t.enumerate_sites(&g, &spec).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn one_kink_gap_on_an_empty_based_component() {
        let g = parse_gauss_code("link 1\ncomponent 1*:\n").unwrap();
        let sites = table()
            .enumerate_sites(&g, &MoveSpec::apply("1++"))
            .unwrap();
        assert_eq!(sites.len(), 1);
    }

    #[test]
    fn kink_insert_then_delete_is_identity() {
        let t = table();
        let g = parse_gauss_code("link 2\ncomponent 1*: O1+ U2-\ncomponent 2*: U1+ O2-\n").unwrap();
        for tag in ["1++", "1+-", "1-+", "1--"] {
            for site in t.enumerate_sites(&g, &MoveSpec::apply(tag)).unwrap() {
                let h = t.apply_move(&g, &MoveSpec::apply(tag), &site).unwrap();
                assert_eq!(h.arrows().len(), 3);
                let back: Vec<GaussDiagram> = t
                    .enumerate_sites(&h, &MoveSpec::inverse(tag))
                    .unwrap()
                    .iter()
                    .map(|s| t.apply_move(&h, &MoveSpec::inverse(tag), s).unwrap())
                    .collect();
                assert!(back.iter().any(|b| b.same_up_to_labels(&g)));
            }
        }
    }

    #[test]
    fn stale_site_is_rejected() {
        let t = table();
        let g = GaussDiagram::unlink(3, true);
        let site = MoveSite {
            placements: vec![
                Placement {
                    component: 0,
                    start: 0,
                    rank: 0,
                },
                Placement {
                    component: 1,
                    start: 0,
                    rank: 0,
                },
            ],
        };
        assert!(matches!(
            t.apply_move(&g, &MoveSpec::inverse("2++"), &site),
            Err(MoveError::StaleSite(_))
        ));
        assert!(matches!(
            t.enumerate_sites(&g, &MoveSpec::apply("9")),
            Err(MoveError::UnknownVariant(_))
        ));
    }

    #[test]
    fn runs_do_not_cross_base_points() {
        // the kink straddles the cut of a based component
        let based = parse_gauss_code("link 1\ncomponent 1*: U1+ O2+ U2+ O1+\n").unwrap();
        let closed = based.all_closed();
        let spec = MoveSpec::inverse("1++");
        let t = table();
        let on_based = t.enumerate_sites(&based, &spec).unwrap();
        let on_closed = t.enumerate_sites(&closed, &spec).unwrap();
        assert_eq!(on_based.len(), 1);
        assert_eq!(on_closed.len(), 2);
        for site in on_closed {
            let h = t.apply_move(&closed, &spec, &site).unwrap();
            assert_eq!(h.arrows().len(), 1);
        }
    }

    #[test]
    fn walk_is_reproducible_and_valid() {
        let t = table();
        let start = GaussDiagram::unlink(3, true);
        let specs = t.specs();
        assert_eq!(
            t.random_walk(1, 0, &specs, &start).unwrap(),
            vec![start.clone()]
        );
        let a = t.random_walk(7, 12, &specs, &start).unwrap();
        let b = t.random_walk(7, 12, &specs, &start).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 13);
        for g in &a {
            crate::gauss::validate(g.components(), g.arrows()).unwrap();
        }
    }

    #[test]
    fn forced_insertion_keeps_walk_alive() {
        let t = table();
        let start = GaussDiagram::unlink(3, true);
        let walk = t
            .random_walk(3, 2, &[MoveSpec::inverse("1++")], &start)
            .unwrap();
        assert_eq!(walk[1].arrows().len(), 1);
    }

    #[test]
    fn move_file_errors() {
        assert!(parse_move_table("move 1x\nleft:\nstrand s:\nright:\nstrand s: Ox+\n").is_err());
        assert!(
            parse_move_table("move 1x\nleft:\nstrand s:\nright:\nstrand t: Ox+ Ux+\n").is_err()
        );
        assert!(parse_move_table("strand s:\n").is_err());
        assert!(
            parse_move_table("move 3x\nleft:\nstrand s: Ox+ Ux+\nright:\nstrand s: Ox- Ux-\n")
                .is_err()
        );
    }
}
