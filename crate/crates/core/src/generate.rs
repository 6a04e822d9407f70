//! Diagram sources for tests and the verification harness: closed braids,
//! named links, and seeded random diagrams.

use rand::Rng;

use crate::gauss::{End, GaussDiagram, Sign, Token, Word};

/// Gauss diagram of the closure of a braid on `strands` strands.
///
/// Generator `+i` crosses the strand at position `i` over the one at `i + 1`
/// (a positive crossing); `-i` crosses it under (negative). Components are
/// ordered by their lowest bottom position and based there.
pub fn braid_closure(strands: usize, word: &[i32]) -> GaussDiagram {
    assert!(strands >= 1);
    for &g in word {
        assert!(
            g != 0 && (g.unsigned_abs() as usize) < strands,
            "generator {g} out of range"
        );
    }
    // Tokens met by a strand starting at bottom position p, and where it ends on top.
    let pass = |p: usize| -> (Vec<Token>, usize) {
        let mut pos = p;
        let mut tokens = Vec::new();
        for (t, &g) in word.iter().enumerate() {
            let left = g.unsigned_abs() as usize - 1;
            if pos != left && pos != left + 1 {
                continue;
            }
            let positive = g > 0;
            let on_left = pos == left;
            let over = on_left == positive;
            tokens.push(Token {
                id: (t + 1).to_string(),
                end: if over { End::Tail } else { End::Head },
                sign: if positive { Sign::Pos } else { Sign::Neg },
            });
            pos = if on_left { left + 1 } else { left };
        }
        (tokens, pos)
    };

    let mut seen = vec![false; strands];
    let mut words = Vec::new();
    for start in 0..strands {
        if seen[start] {
            continue;
        }
        let mut tokens = Vec::new();
        let mut p = start;
        loop {
            seen[p] = true;
            let (mut t, top) = pass(p);
            tokens.append(&mut t);
            p = top;
            if p == start {
                break;
            }
        }
        words.push(Word {
            based: true,
            tokens,
        });
    }
    GaussDiagram::from_words(&words).expect("braid closures are valid")
}

/// Reorders components: component `order[i]` (0-based) of `diagram` becomes component `i`.
pub fn reorder_components(diagram: &GaussDiagram, order: &[usize]) -> GaussDiagram {
    let words = diagram.words();
    let reordered: Vec<Word> = order.iter().map(|&i| words[i].clone()).collect();
    GaussDiagram::from_words(&reordered).expect("reordering keeps validity")
}

/// The Borromean rings as the closure of (σ₁σ₂⁻¹)³, six crossings.
pub fn borromean() -> GaussDiagram {
    braid_closure(3, &[1, -2, 1, -2, 1, -2])
}

/// A chain of three rings: components `ends.0` and `middle` link `first`
/// times, `middle` and `ends.1` link `second` times, the ends are unlinked.
/// All crossings are positive. `middle` and `ends` are 0-based component indices.
pub fn chain(middle: usize, ends: (usize, usize), first: u32, second: u32) -> GaussDiagram {
    let mut word = vec![1; 2 * first as usize];
    word.extend(std::iter::repeat_n(2, 2 * second as usize));
    // closure positions 0, 1, 2 carry ends.0, middle, ends.1
    let closure = braid_closure(3, &word);
    let mut order = [0usize; 3];
    order[ends.0] = 0;
    order[middle] = 1;
    order[ends.1] = 2;
    reorder_components(&closure, &order)
}

/// Random abstract diagram: `arrows` arrows with uniformly drawn endpoints,
/// components and signs. Components are all based.
pub fn random_diagram<R: Rng>(rng: &mut R, components: usize, arrows: usize) -> GaussDiagram {
    let mut words: Vec<Word> = (0..components)
        .map(|_| Word {
            based: true,
            tokens: Vec::new(),
        })
        .collect();
    for a in 0..arrows {
        let sign = if rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        };
        for end in [End::Tail, End::Head] {
            let c = rng.gen_range(0..components);
            let at = rng.gen_range(0..=words[c].tokens.len());
            words[c].tokens.insert(
                at,
                Token {
                    id: (a + 1).to_string(),
                    end,
                    sign,
                },
            );
        }
    }
    GaussDiagram::from_words(&words).expect("random diagram is valid")
}

/// Random closed 3-component link diagram: a random braid word on three
/// strands, completed to a pure braid so the closure has three components.
pub fn random_link<R: Rng>(rng: &mut R, length: usize) -> GaussDiagram {
    let mut word: Vec<i32> = (0..length)
        .map(|_| {
            let g = rng.gen_range(1..=2);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    let mut perm = [0usize, 1, 2];
    for &g in &word {
        let i = g.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    // bubble the permutation back to the identity
    while perm != [0, 1, 2] {
        let i = if perm[0] > perm[1] { 0 } else { 1 };
        perm.swap(i, i + 1);
        let g = i as i32 + 1;
        word.push(if rng.gen_bool(0.5) { g } else { -g });
    }
    braid_closure(3, &word)
}

/// Writes `diagram` with every arrow between distinct components counted
/// once per ordered pair: [n₁₂, n₁₃, n₂₁, n₂₃, n₃₁, n₃₂].
pub fn one_sided_counts(diagram: &GaussDiagram) -> [i64; 6] {
    let mut out = [0i64; 6];
    let pairs = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    for a in diagram.arrows() {
        if let Some(k) = pairs
            .iter()
            .position(|&p| p == (a.tail.component, a.head.component))
        {
            out[k] += a.sign.value();
        }
    }
    out
}

/// Whether every pairwise one-sided count agrees with its reverse, as for
/// any diagram of a closed link.
pub fn has_symmetric_linking(diagram: &GaussDiagram) -> bool {
    let n = one_sided_counts(diagram);
    n[0] == n[2] && n[1] == n[4] && n[3] == n[5]
}
