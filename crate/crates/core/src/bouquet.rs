//! Based flat-vertex 3-bouquet graphs.
//!
//! A small disk around the vertex meets the three edges in six points. Read
//! from a base point on the disk boundary, they give the vertex word
//! `p₁ … p₆`, a Gauss word on three letters. Each edge runs from the first
//! occurrence of its letter to the second, and is described by the crossing
//! tokens met along it. Cutting at the vertex gives a (6, 0)-tangle, which
//! compiles to a 3-component diagram with every component based.
//!
//! ```text
//! bouquet
//! vertex: A B A C B C
//! edge A: O1+ U2-
//! edge B: U1+
//! edge C: O2-
//! ```

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::gauss::{GaussDiagram, Sign, Token, Violations, Word};
use crate::text::{content_lines, fields, parse_tokens, token_list, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BouquetError {
    #[error("vertex word {0:?} is not a Gauss word on three letters")]
    NotGaussWord(Vec<String>),
    #[error("edge {0} is not in the vertex word")]
    UnknownEdge(String),
    #[error("edge {0} is listed twice")]
    DuplicateEdge(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] Violations),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BouquetPresentation {
    pub vertex_word: Vec<String>,
    /// Tokens along each edge, from its first to its second occurrence.
    pub edges: BTreeMap<String, Vec<Token>>,
}

impl BouquetPresentation {
    /// Letters in order of first occurrence; errors unless the word is a Gauss word on three letters.
    pub fn letters(&self) -> Result<Vec<String>, BouquetError> {
        let mut order: Vec<String> = Vec::new();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for l in &self.vertex_word {
            let n = counts.entry(l.as_str()).or_default();
            *n += 1;
            if *n == 1 {
                order.push(l.clone());
            }
        }
        if self.vertex_word.len() != 6 || order.len() != 3 || counts.values().any(|&n| n != 2) {
            return Err(BouquetError::NotGaussWord(self.vertex_word.clone()));
        }
        for e in self.edges.keys() {
            if !counts.contains_key(e.as_str()) {
                return Err(BouquetError::UnknownEdge(e.clone()));
            }
        }
        Ok(order)
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> BouquetPresentation {
        let edges = self
            .edges
            .iter()
            .map(|(l, tokens)| {
                let switched = tokens
                    .iter()
                    .map(|t| Token {
                        id: t.id.clone(),
                        end: match t.end {
                            crate::End::Tail => crate::End::Head,
                            crate::End::Head => crate::End::Tail,
                        },
                        sign: t.sign.flip(),
                    })
                    .collect();
                (l.clone(), switched)
            })
            .collect();
        BouquetPresentation {
            vertex_word: self.vertex_word.clone(),
            edges,
        }
    }
}

/// The based 3-component diagram of the tangle cut open at the vertex.
pub fn compile_bouquet(b: &BouquetPresentation) -> Result<GaussDiagram, BouquetError> {
    let letters = b.letters()?;
    let words: Vec<Word> = letters
        .iter()
        .map(|l| Word {
            based: true,
            tokens: b.edges.get(l).cloned().unwrap_or_default(),
        })
        .collect();
    Ok(GaussDiagram::from_words(&words)?)
}

/// Moves the base point on the disk boundary `shift` places forward: the
/// vertex word rotates, and an edge whose endpoints trade places is
/// re-oriented. Re-orienting an edge reverses its tokens and switches the
/// sign of every crossing it shares with another edge (unless that edge is
/// re-oriented too).
pub fn cyclic_rebase(
    b: &BouquetPresentation,
    shift: usize,
) -> Result<BouquetPresentation, BouquetError> {
    b.letters()?;
    let shift = shift % 6;
    let rotated: Vec<String> = (0..6)
        .map(|i| b.vertex_word[(i + shift) % 6].clone())
        .collect();

    let first_of =
        |word: &[String], l: &str| word.iter().position(|x| x == l).expect("letter present");
    let old_pos = |l: &str| {
        let first = first_of(&b.vertex_word, l);
        let second = first
            + 1
            + b.vertex_word[first + 1..]
                .iter()
                .position(|x| x == l)
                .expect("twice");
        (first, second)
    };
    let reversed: Vec<String> = b
        .edges
        .keys()
        .filter(|l| {
            // the old first occurrence is no longer first after rotation
            let (first, second) = old_pos(l);
            (first + 6 - shift) % 6 > (second + 6 - shift) % 6
        })
        .cloned()
        .collect();

    let mut owners: HashMap<&str, Vec<&str>> = HashMap::new();
    for (l, tokens) in &b.edges {
        for t in tokens {
            owners.entry(t.id.as_str()).or_default().push(l.as_str());
        }
    }
    let flips = |id: &str| -> bool {
        let o = &owners[id];
        if o.len() == 2 && o[0] != o[1] {
            reversed.iter().any(|r| r == o[0]) != reversed.iter().any(|r| r == o[1])
        } else {
            false
        }
    };

    let edges = b
        .edges
        .iter()
        .map(|(l, tokens)| {
            let mut tokens: Vec<Token> = tokens
                .iter()
                .map(|t| Token {
                    sign: if flips(&t.id) { t.sign.flip() } else { t.sign },
                    ..t.clone()
                })
                .collect();
            if reversed.contains(l) {
                tokens.reverse();
            }
            (l.clone(), tokens)
        })
        .collect();
    Ok(BouquetPresentation {
        vertex_word: rotated,
        edges,
    })
}

pub fn parse_bouquet(text: &str) -> Result<BouquetPresentation, BouquetError> {
    let lines = content_lines(text);
    let mut iter = lines.iter();
    match iter.next() {
        Some(l) if l.text.trim() == "bouquet" => {}
        Some(l) => return Err(ParseError::at(l.number, 1, "expected `bouquet`").into()),
        None => return Err(ParseError::at(1, 1, "expected `bouquet`").into()),
    }
    let vertex_line = iter
        .next()
        .ok_or_else(|| ParseError::at(2, 1, "expected `vertex: …`"))?;
    let vertex_word: Vec<String> = match vertex_line.text.split_once(':') {
        Some((head, rest)) if head.trim() == "vertex" => fields(rest)
            .into_iter()
            .map(|(_, s)| s.to_string())
            .collect(),
        _ => return Err(ParseError::at(vertex_line.number, 1, "expected `vertex: …`").into()),
    };
    let mut edges = BTreeMap::new();
    for line in iter {
        let colon = line
            .text
            .find(':')
            .ok_or_else(|| ParseError::at(line.number, 1, "expected `edge <letter>:`"))?;
        let head = fields(&line.text[..colon]);
        let [(_, "edge"), (_, letter)] = head.as_slice() else {
            return Err(ParseError::at(line.number, 1, "expected `edge <letter>:`").into());
        };
        let tokens = parse_tokens(&line.text[colon + 1..], line.number, colon + 2)?;
        if edges.insert(letter.to_string(), tokens).is_some() {
            return Err(BouquetError::DuplicateEdge(letter.to_string()));
        }
    }
    let b = BouquetPresentation { vertex_word, edges };
    b.letters()?;
    Ok(b)
}

pub fn serialize_bouquet(b: &BouquetPresentation) -> Result<String, BouquetError> {
    let letters = b.letters()?;
    let mut out = format!("bouquet\nvertex: {}\n", b.vertex_word.join(" "));
    for l in letters {
        let tokens = b.edges.get(&l).map(|t| token_list(t)).unwrap_or_default();
        if tokens.is_empty() {
            out.push_str(&format!("edge {l}:\n"));
        } else {
            out.push_str(&format!("edge {l}: {tokens}\n"));
        }
    }
    Ok(out)
}

/// Signs of the tokens, for tests that need a quick fingerprint.
pub fn sign_profile(b: &BouquetPresentation) -> Vec<Sign> {
    b.edges.values().flatten().map(|t| t.sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Invariants;

    fn sample() -> BouquetPresentation {
        parse_bouquet(
            "bouquet\nvertex: A B A C B C\nedge A: O1+ U2- O3+ U3+\nedge B: U1+\nedge C: O2-\n",
        )
        .unwrap()
    }

    #[test]
    fn crossingless_bouquet_compiles_to_based_unlink() {
        let b = parse_bouquet("bouquet\nvertex: A B C A B C\nedge A:\nedge B:\nedge C:\n").unwrap();
        let g = compile_bouquet(&b).unwrap();
        assert_eq!(g, GaussDiagram::unlink(3, true));
        let r = Invariants::standard().report(&g, None).unwrap();
        assert_eq!((r.p1, r.p2), (0, 0));
    }

    #[test]
    fn not_a_gauss_word() {
        let err = parse_bouquet("bouquet\nvertex: A A A B B C\n").unwrap_err();
        assert!(matches!(err, BouquetError::NotGaussWord(_)));
        let err = parse_bouquet("bouquet\nvertex: A B C A B C\nedge D:\n").unwrap_err();
        assert_eq!(err, BouquetError::UnknownEdge("D".into()));
    }

    #[test]
    fn unpaired_crossing_is_rejected() {
        let b = parse_bouquet("bouquet\nvertex: A B C A B C\nedge A: O1+\n").unwrap();
        assert!(matches!(compile_bouquet(&b), Err(BouquetError::Invalid(_))));
    }

    #[test]
    fn components_follow_first_occurrence() {
        let b = parse_bouquet("bouquet\nvertex: C A C B A B\nedge A: U1+\nedge C: O1+\n").unwrap();
        let g = compile_bouquet(&b).unwrap();
        // C is component 1, A component 2
        assert_eq!(g.arrows()[0].tail.component, 0);
        assert_eq!(g.arrows()[0].head.component, 1);
        assert!(g.components().iter().all(|c| c.based));
    }

    #[test]
    fn rebase_by_zero_and_six_is_identity() {
        let b = sample();
        assert_eq!(cyclic_rebase(&b, 0).unwrap(), b);
        assert_eq!(cyclic_rebase(&b, 6).unwrap(), b);
    }

    #[test]
    fn rebase_reorients_edges_whose_ends_swap() {
        let b = sample();
        // shifting by one moves the first A to the end: A reverses
        let r = cyclic_rebase(&b, 1).unwrap();
        assert_eq!(r.vertex_word, ["B", "A", "C", "B", "C", "A"]);
        let a: Vec<String> = r.edges["A"].iter().map(|t| t.to_string()).collect();
        // crossings 1 and 2 are shared with other edges, 3 is a self crossing
        assert_eq!(a, ["U3+", "O3+", "U2+", "O1-"]);
        assert_eq!(r.edges["B"][0].to_string(), "U1-");
        // six single shifts come back to the start
        let mut c = b.clone();
        for _ in 0..6 {
            c = cyclic_rebase(&c, 1).unwrap();
        }
        assert_eq!(c, b);
    }

    #[test]
    fn serialization_round_trips() {
        let b = sample();
        let text = serialize_bouquet(&b).unwrap();
        assert_eq!(
            text,
            "bouquet\nvertex: A B A C B C\nedge A: O1+ U2- O3+ U3+\nedge B: U1+\nedge C: O2-\n"
        );
        assert_eq!(parse_bouquet(&text).unwrap(), b);
    }

    #[test]
    fn mirror_commutes_with_compile() {
        let b = sample();
        assert_eq!(
            compile_bouquet(&b.mirror()).unwrap(),
            compile_bouquet(&b).unwrap().mirror()
        );
    }
}
