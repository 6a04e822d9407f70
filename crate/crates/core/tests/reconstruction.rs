//! Search for the bouquet b: every 6-strand braid of bounded length, capped
//! into a (6, 0)-tangle, scored against the 14 published cells of the bouquet
//! tables with the mirror taken as b with every crossing switched.
//!
//! Slow; run with `cargo test --release -- --ignored` (MAXLEN sets the braid
//! length, default 6).

use std::collections::BTreeMap;

use milnor_core::tables::DataDir;
use milnor_core::{
    compile_bouquet, BouquetPresentation, End, GaussDiagram, Invariants, Permutation, QIndex, Sign,
    Token,
};

/// Braid on 6 strands starting at the disk boundary, capped on top by `caps`.
fn tangle(word: &[i32], caps: &[(usize, usize)]) -> BouquetPresentation {
    let n = 6;
    let mut at: Vec<usize> = (0..n).collect();
    // per strand: (time, over, generator)
    let mut events: Vec<Vec<(usize, bool, i32)>> = vec![vec![]; n];
    for (t, &g) in word.iter().enumerate() {
        let left = g.unsigned_abs() as usize - 1;
        let sl = at.iter().position(|&p| p == left).unwrap();
        let sr = at.iter().position(|&p| p == left + 1).unwrap();
        events[sl].push((t, g > 0, g));
        events[sr].push((t, g < 0, g));
        at[sl] = left + 1;
        at[sr] = left;
    }
    let strand_at_top = |p: usize| (0..n).find(|&s| at[s] == p).unwrap();
    let partner = |p: usize| {
        caps.iter()
            .find_map(|&(a, b)| (a == p).then_some(b).or((b == p).then_some(a)))
            .unwrap()
    };
    let mut letter = vec![' '; n];
    let mut up = vec![false; n];
    let mut plan = vec![];
    for p in 0..n {
        if letter[p] != ' ' {
            continue;
        }
        let l = (b'A' + plan.len() as u8) as char;
        let down = strand_at_top(partner(at[p]));
        letter[p] = l;
        letter[down] = l;
        up[p] = true;
        plan.push((l, p, down));
    }
    let token = |s: usize, e: &(usize, bool, i32)| {
        let other = (0..n)
            .find(|&o| o != s && events[o].iter().any(|x| x.0 == e.0))
            .unwrap();
        let mut sign = if e.2 > 0 { Sign::Pos } else { Sign::Neg };
        if up[s] != up[other] {
            sign = sign.flip();
        }
        Token {
            id: (e.0 + 1).to_string(),
            end: if e.1 { End::Tail } else { End::Head },
            sign,
        }
    };
    let mut edges = BTreeMap::new();
    for (l, su, sd) in plan {
        let mut tokens: Vec<Token> = events[su].iter().map(|e| token(su, e)).collect();
        tokens.extend(events[sd].iter().rev().map(|e| token(sd, e)));
        edges.insert(l.to_string(), tokens);
    }
    BouquetPresentation {
        vertex_word: letter.iter().map(|c| c.to_string()).collect(),
        edges,
    }
}

fn cells(inv: &Invariants, d: &GaussDiagram) -> Vec<String> {
    let mut v = vec![
        inv.milnor_mu123(d).unwrap().raw.to_string(),
        inv.p_hat(d).unwrap().to_string(),
        inv.p1(d).unwrap().to_string(),
        inv.p2(d).unwrap().to_string(),
    ];
    for n in 1..=3u8 {
        v.push(
            inv.q(QIndex::new(Permutation::IDENTITY, n).unwrap(), d)
                .unwrap()
                .to_string(),
        );
    }
    v
}

const B: [&str; 7] = ["-1/2", "-1/2", "-2", "-1", "-1", "-1", "0"];
const B_MIR: [&str; 7] = ["-1/2", "-1/2", "-1", "-2", "-1", "0", "-1"];

fn score(inv: &Invariants, d: &GaussDiagram) -> usize {
    let hit =
        |v: Vec<String>, t: [&str; 7]| v.iter().zip(t).filter(|(x, y)| x.as_str() == *y).count();
    hit(cells(inv, d), B) + hit(cells(inv, &d.mirror()), B_MIR)
}

#[test]
#[ignore]
fn best_braid_tangle_scores_ten_of_fourteen() {
    let inv = Invariants::standard();
    let caps: [&[(usize, usize)]; 5] = [
        &[(0, 1), (2, 3), (4, 5)],
        &[(0, 1), (2, 5), (3, 4)],
        &[(0, 3), (1, 2), (4, 5)],
        &[(0, 5), (1, 2), (3, 4)],
        &[(0, 5), (1, 4), (2, 3)],
    ];
    let gens: Vec<i32> = (1..=5).flat_map(|g| [g, -g]).collect();
    let max: usize = std::env::var("MAXLEN")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(6);
    let mut best = 0;
    for len in 0..=max {
        for code in 0..gens.len().pow(len as u32) {
            let mut c = code;
            let word: Vec<i32> = (0..len)
                .map(|_| {
                    let g = gens[c % gens.len()];
                    c /= gens.len();
                    g
                })
                .collect();
            for cap in caps {
                if let Ok(d) = compile_bouquet(&tangle(&word, cap)) {
                    best = best.max(score(&inv, &d));
                }
            }
        }
    }
    println!("best score {best} of 14 up to braid length {max}");
    assert_eq!(best, 10);
    assert_eq!(score(&inv, &DataDir::shipped().bouquet(false).unwrap()), 10);
}
