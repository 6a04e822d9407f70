//! The third-move variants in the shipped table, derived from three straight
//! lines in the plane. Each line carries a direction and a height; moving
//! the triangle through the common point swaps the two crossings on every
//! strand.

use std::collections::BTreeMap;

use milnor_core::moves::{parse_move_table, MoveRule, STANDARD_MOVES};

type Picture = Vec<Vec<String>>;

/// Strand contents (T, M, B) for lines at offset `r`, directions `dirs`
/// and heights `height[line]` (0 = top).
fn picture(r: f64, dirs: [f64; 3], height: [usize; 3]) -> (Picture, [char; 3]) {
    let normal = |i: usize| {
        let a = std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * i as f64 / 3.0;
        (a.cos(), a.sin())
    };
    let dir = |i: usize| {
        let (x, y) = normal(i);
        (-y * dirs[i], x * dirs[i])
    };
    let label = |h1: usize, h2: usize| match (h1.min(h2), h1.max(h2)) {
        (0, 1) => "x",
        (0, 2) => "y",
        _ => "z",
    };
    let mut strands: Picture = vec![Vec::new(); 3];
    let mut signs = [' '; 3];
    for i in 0..3 {
        let mut met: Vec<(f64, String)> = Vec::new();
        for j in (0..3).filter(|&j| j != i) {
            let (nx, ny) = normal(j);
            let (dx, dy) = dir(i);
            let t = 1.5 * r / (nx * dx + ny * dy);
            let (over, under) = if height[i] < height[j] {
                (i, j)
            } else {
                (j, i)
            };
            let (ox, oy) = dir(over);
            let (ux, uy) = dir(under);
            let sign = if ox * uy - oy * ux > 0.0 { '+' } else { '-' };
            let l = label(height[i], height[j]);
            signs[match l {
                "x" => 0,
                "y" => 1,
                _ => 2,
            }] = sign;
            let end = if over == i { 'O' } else { 'U' };
            met.push((t, format!("{end}{l}{sign}")));
        }
        met.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        strands[height[i]] = met.into_iter().map(|(_, s)| s).collect();
    }
    (strands, signs)
}

/// Every distinct variant, keyed by its crossing signs, left side first.
fn derive() -> BTreeMap<String, (Picture, Picture)> {
    let mut moves: Vec<(String, Picture, Picture)> = Vec::new();
    let heights = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for bits in 0..8u32 {
        let dirs = [0, 1, 2].map(|k| if bits >> k & 1 == 1 { -1.0 } else { 1.0 });
        for h in heights {
            let (left, signs) = picture(1.0, dirs, h);
            let (right, _) = picture(-1.0, dirs, h);
            let seen = moves
                .iter()
                .any(|(_, l, r)| (l, r) == (&left, &right) || (l, r) == (&right, &left));
            if !seen {
                moves.push((signs.iter().collect(), left, right));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (signs, l, r) in moves {
        let clash = out.insert(format!("3{signs}"), (l, r));
        assert!(clash.is_none(), "two variants with signs {signs}");
    }
    out
}

fn render(tag: &str, left: &Picture, right: &Picture) -> String {
    let mut s = format!("move {tag}\n");
    for (name, side) in [("left:", left), ("right:", right)] {
        s.push_str(name);
        s.push('\n');
        for (strand, tokens) in ["t", "m", "b"].iter().zip(side) {
            s.push_str(&format!("strand {strand}: {}\n", tokens.join(" ")));
        }
    }
    s
}

fn as_picture(side: &[Vec<milnor_core::Token>]) -> Picture {
    side.iter()
        .map(|s| s.iter().map(|t| t.to_string()).collect())
        .collect()
}

#[test]
fn shipped_third_moves_match_the_line_arrangements() {
    let table = parse_move_table(STANDARD_MOVES).unwrap();
    let shipped: BTreeMap<String, (Picture, Picture)> = table
        .rules()
        .iter()
        .filter(|r: &&MoveRule| r.tag.starts_with('3'))
        .map(|r| (r.tag.clone(), (as_picture(&r.left), as_picture(&r.right))))
        .collect();
    assert_eq!(shipped, derive());
}

#[test]
fn every_variant_swaps_the_crossings_on_each_strand() {
    for (tag, (l, r)) in derive() {
        for (a, b) in l.iter().zip(&r) {
            assert_eq!(a.len(), 2, "{tag}");
            assert_eq!((&a[0], &a[1]), (&b[1], &b[0]), "{tag}");
        }
    }
}

#[test]
#[ignore]
fn print_third_moves() {
    for (tag, (l, r)) in derive() {
        println!("{}", render(&tag, &l, &r));
    }
}
