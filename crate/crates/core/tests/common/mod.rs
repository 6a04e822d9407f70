//! Independent brute-force pattern counting and diagram enumeration.
#![allow(dead_code)]

use milnor_core::{
    count_pattern, load_pattern_library, ArrowPattern, Binding, End, GaussDiagram, PatternLibrary,
    Sign, Token, Word,
};

pub const EXTRA: &str = "
pattern s
circle i*: a1 b2
circle j: a2 b1
arrow a1 -> a2 +
arrow b1 -> b2

pattern t
circle i: a1 c1 a2
circle k*: c2
arrow a1 -> a2 -
arrow c1 -> c2

pattern u
circle i*: a1 c2
circle j*: b1 a2
circle k: c1 b2
arrow a1 -> a2
arrow b1 -> b2
arrow c1 -> c2

pattern v
circle j: a1 b1 a2 c1 b2 c2
arrow a1 -> a2
arrow b1 -> b2 +
arrow c1 -> c2
";

pub fn patterns() -> Vec<ArrowPattern> {
    let mut out = Vec::new();
    for lib in [
        PatternLibrary::standard(),
        load_pattern_library(EXTRA).unwrap(),
    ] {
        for name in lib.names() {
            out.push(lib.get(name).unwrap().clone());
        }
    }
    out
}

/// Whether `positions`, listed in pattern order, respect the order of the
/// component: increasing if linear, a rotation of an increasing run if cyclic.
pub fn ordered(positions: &[usize], linear: bool) -> bool {
    let n = positions.len();
    let descents = (0..n.saturating_sub(1))
        .filter(|&i| positions[i] > positions[i + 1])
        .count();
    if linear {
        descents == 0
    } else {
        let wrap = usize::from(n > 1 && positions[n - 1] > positions[0]);
        descents + wrap <= 1
    }
}

pub fn brute_force(pattern: &ArrowPattern, binding: [usize; 3], d: &GaussDiagram) -> i64 {
    let k = pattern.arrows.len();
    let m = d.arrows().len();
    let mut total = 0;
    let mut choice = vec![0usize; k];
    // every k-tuple of diagram arrows; non-injective tuples are skipped
    let tuples = m.checked_pow(k as u32).unwrap();
    'tuple: for code in 0..tuples {
        let mut c = code;
        for slot in choice.iter_mut() {
            *slot = c % m.max(1);
            c /= m.max(1);
        }
        if k > 0 && m == 0 {
            break;
        }
        for x in 0..k {
            for y in x + 1..k {
                if choice[x] == choice[y] {
                    continue 'tuple;
                }
            }
        }
        let mut weight = 1;
        for (pa, &di) in pattern.arrows.iter().zip(&choice) {
            let a = &d.arrows()[di];
            let tc = binding[pattern.circles[pa.tail.circle].placeholder.index()];
            let hc = binding[pattern.circles[pa.head.circle].placeholder.index()];
            if a.tail.component != tc
                || a.head.component != hc
                || pa.sign.is_some_and(|s| s != a.sign)
            {
                continue 'tuple;
            }
            weight *= a.sign.value();
        }
        for (ci, circle) in pattern.circles.iter().enumerate() {
            let comp = binding[circle.placeholder.index()];
            let mut placed: Vec<(usize, usize)> = Vec::new();
            for (pa, &di) in pattern.arrows.iter().zip(&choice) {
                let a = &d.arrows()[di];
                if pa.tail.circle == ci {
                    placed.push((pa.tail.position, a.tail.position));
                }
                if pa.head.circle == ci {
                    placed.push((pa.head.position, a.head.position));
                }
            }
            placed.sort();
            let positions: Vec<usize> = placed.iter().map(|p| p.1).collect();
            if !ordered(&positions, circle.based && d.is_based(comp)) {
                continue 'tuple;
            }
        }
        total += weight;
    }
    total
}

pub const BINDINGS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Number of nonzero counts seen.
pub fn agree(d: &GaussDiagram, patterns: &[ArrowPattern]) -> usize {
    let mut nonzero = 0;
    for p in patterns {
        for b in BINDINGS {
            let fast = count_pattern(p, &Binding::new(b).unwrap(), d).unwrap();
            assert_eq!(
                fast,
                brute_force(p, b, d),
                "pattern {} binding {b:?} on\n{d:?}",
                p.name
            );
            nonzero += usize::from(fast != 0);
        }
    }
    nonzero
}

pub fn with_flags(d: &GaussDiagram, based: [bool; 3]) -> GaussDiagram {
    let words: Vec<Word> = d
        .words()
        .into_iter()
        .zip(based)
        .map(|(w, based)| Word { based, ..w })
        .collect();
    GaussDiagram::from_words(&words).unwrap()
}

/// Every diagram with `arrows` arrows up to insertion order, signs included.
pub fn all_diagrams(arrows: usize) -> Vec<GaussDiagram> {
    let mut partial = vec![vec![Vec::<Token>::new(); 3]];
    for a in 0..arrows {
        let mut next = Vec::new();
        for words in &partial {
            for sign in [Sign::Pos, Sign::Neg] {
                for tc in 0..3 {
                    for tp in 0..=words[tc].len() {
                        let mut w1 = words.clone();
                        w1[tc].insert(
                            tp,
                            Token {
                                id: (a + 1).to_string(),
                                end: End::Tail,
                                sign,
                            },
                        );
                        for hc in 0..3 {
                            for hp in 0..=w1[hc].len() {
                                let mut w2 = w1.clone();
                                w2[hc].insert(
                                    hp,
                                    Token {
                                        id: (a + 1).to_string(),
                                        end: End::Head,
                                        sign,
                                    },
                                );
                                next.push(w2);
                            }
                        }
                    }
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|ws| {
            let words: Vec<Word> = ws
                .into_iter()
                .map(|tokens| Word {
                    based: true,
                    tokens,
                })
                .collect();
            GaussDiagram::from_words(&words).unwrap()
        })
        .collect()
}
