//! `count_pattern` against a brute force over every injection of pattern
//! arrows into diagram arrows.

mod common;

use common::{agree, all_diagrams, ordered, patterns, with_flags};
use milnor_core::bouquet::compile_bouquet;
use milnor_core::generate::{borromean, random_diagram};
use milnor_core::parse_bouquet;
use milnor_core::tables::DataDir;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn brute_force_agrees_on_all_two_arrow_diagrams() {
    let patterns = patterns();
    for d in all_diagrams(2) {
        agree(&d, &patterns);
        agree(&with_flags(&d, [false, true, false]), &patterns);
    }
}

#[test]
fn brute_force_agrees_on_random_diagrams_up_to_six_arrows() {
    let patterns = patterns();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nonzero = 0;
    for _ in 0..400 {
        let arrows = rng.gen_range(0..=6);
        let d = random_diagram(&mut rng, 3, arrows);
        let flags = [rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.5)];
        nonzero += agree(&with_flags(&d, flags), &patterns);
    }
    assert!(nonzero > 500, "{nonzero}");
}

#[test]
fn brute_force_agrees_on_named_diagrams() {
    let patterns = patterns();
    let data = DataDir::shipped();
    agree(&borromean(), &patterns);
    agree(&borromean().all_closed(), &patterns);
    agree(&data.bouquet(false).unwrap(), &patterns);
    agree(&data.bouquet(true).unwrap(), &patterns);
    let b = parse_bouquet(
        "bouquet\nvertex: A B A C B C\nedge A: O1+ U2- O3+ U3+\nedge B: U1+\nedge C: O2-\n",
    )
    .unwrap();
    agree(&compile_bouquet(&b).unwrap(), &patterns);
}

#[test]
fn cyclic_order_check() {
    assert!(ordered(&[2, 0, 1], false));
    assert!(!ordered(&[2, 0, 1], true));
    assert!(!ordered(&[0, 2, 1, 3], false));
    assert!(ordered(&[], true));
}
