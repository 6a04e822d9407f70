use milnor_core::bouquet::{compile_bouquet, cyclic_rebase, serialize_bouquet};
use milnor_core::generate::{random_diagram, random_link, reorder_components};
use milnor_core::invariants::linking_number;
use milnor_core::{
    evaluate_formula, parse_bouquet, parse_gauss_code, serialize_gauss_code, BaseDirection,
    BouquetPresentation, ComponentId, End, FloatFormula, GaussDiagram, Invariants, PatternLibrary,
    Permutation, QIndex, Rational, RationalFormula, Sign, Summation, Token, Word,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn diagram(seed: u64, arrows: usize, flags: u8) -> GaussDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = random_diagram(&mut rng, 3, arrows);
    let words: Vec<Word> = d
        .words()
        .into_iter()
        .enumerate()
        .map(|(i, w)| Word {
            based: flags & (1 << i) != 0,
            ..w
        })
        .collect();
    GaussDiagram::from_words(&words).unwrap()
}

fn random_bouquet(seed: u64, crossings: usize) -> BouquetPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word: Vec<String> = ["A", "A", "B", "B", "C", "C"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    word.shuffle(&mut rng);
    let mut edges: Vec<Vec<Token>> = vec![Vec::new(); 3];
    for c in 0..crossings {
        let sign = if rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        };
        for end in [End::Tail, End::Head] {
            let e = rng.gen_range(0..3);
            let at = rng.gen_range(0..=edges[e].len());
            edges[e].insert(
                at,
                Token {
                    id: (c + 1).to_string(),
                    end,
                    sign,
                },
            );
        }
    }
    BouquetPresentation {
        vertex_word: word,
        edges: ["A", "B", "C"]
            .iter()
            .map(|s| s.to_string())
            .zip(edges)
            .collect(),
    }
}

fn cyclic_word(d: &GaussDiagram, c: usize) -> Vec<(String, End)> {
    d.slots(c)
        .iter()
        .map(|s| (d.arrows()[s.arrow].id.clone(), s.end))
        .collect()
}

fn is_rotation<T: PartialEq + Clone>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len()
        && (a.is_empty() || (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gauss_code_round_trips(seed: u64, arrows in 0usize..9, flags in 0u8..8) {
        let d = diagram(seed, arrows, flags);
        let text = serialize_gauss_code(&d);
        prop_assert_eq!(parse_gauss_code(&text).unwrap(), d);
    }

    #[test]
    fn mirror_is_an_involution_switching_every_crossing(seed: u64, arrows in 0usize..9, flags in 0u8..8) {
        let d = diagram(seed, arrows, flags);
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        let mut switched = d.clone();
        for a in d.arrows() {
            switched = switched.crossing_change(&a.id).unwrap();
        }
        prop_assert_eq!(d.mirror(), switched);
        let m = d.mirror();
        prop_assert_eq!(m.components(), d.components());
    }

    #[test]
    fn crossing_change_is_an_involution(seed: u64, arrows in 1usize..9, pick: usize) {
        let d = diagram(seed, arrows, 7);
        let id = d.arrows()[pick % d.arrows().len()].id.clone();
        let once = d.crossing_change(&id).unwrap();
        prop_assert_ne!(&once, &d);
        prop_assert_eq!(once.crossing_change(&id).unwrap(), d);
    }

    #[test]
    fn base_point_moves_are_inverse_rotations(seed: u64, arrows in 1usize..9, c in 0usize..3) {
        let d = diagram(seed, arrows, 7);
        prop_assume!(d.components()[c].len > 0);
        let id = ComponentId::from_index(c);
        let f = d.move_base_point(id, BaseDirection::Forward).unwrap();
        prop_assert_eq!(f.move_base_point(id, BaseDirection::Backward).unwrap(), d.clone());
        for k in 0..3 {
            prop_assert!(is_rotation(&cyclic_word(&d, k), &cyclic_word(&f, k)));
        }
        let mut ids: Vec<&str> = d.arrows().iter().map(|a| a.id.as_str()).collect();
        let mut moved: Vec<&str> = f.arrows().iter().map(|a| a.id.as_str()).collect();
        ids.sort();
        moved.sort();
        prop_assert_eq!(ids, moved);
    }

    #[test]
    fn formulas_are_linear_and_scalar_generic(seed: u64, arrows in 0usize..8, x in -5i64..5, y in -5i64..5) {
        let d = diagram(seed, arrows, 7);
        let lib = PatternLibrary::standard();
        let (a, b) = (lib.get("a(i,j,k)").unwrap().clone(), lib.get("b(k,j,i)").unwrap().clone());
        let r = |c: i64| Rational::from_integer(c);
        let single = |p| RationalFormula::new(vec![(r(1), p)], Summation::SignedOverS3, r(1));
        let both = RationalFormula::new(vec![(r(x), a.clone()), (r(y), b.clone())], Summation::SignedOverS3, r(1));
        let lhs = evaluate_formula(&both, &d).unwrap();
        let rhs = r(x) * evaluate_formula(&single(a.clone()), &d).unwrap() + r(y) * evaluate_formula(&single(b.clone()), &d).unwrap();
        prop_assert_eq!(lhs, rhs);
        let float = FloatFormula::new(vec![(x as f64, a), (y as f64, b)], Summation::SignedOverS3, 1.0);
        prop_assert_eq!(evaluate_formula(&float, &d).unwrap(), *lhs.numer() as f64);
    }

    #[test]
    fn relabeling_components_is_coherent(seed: u64, length in 2usize..9, which in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_link(&mut rng, length);
        let tau = Permutation::ALL[which];
        let order: Vec<usize> = tau.images().iter().map(|&i| i - 1).collect();
        let e = reorder_components(&d, &order);
        let inv = Invariants::standard();
        let sign = Rational::from_integer(tau.parity());
        prop_assert_eq!(inv.milnor_mu123(&e).unwrap().raw, sign * inv.milnor_mu123(&d).unwrap().raw);
        prop_assert_eq!(inv.p_hat(&e).unwrap(), inv.p_hat(&d).unwrap());
        for n in 1..=3u8 {
            let values = |g: &GaussDiagram| {
                let mut v: Vec<i64> = Permutation::ALL.iter().map(|&s| inv.q(QIndex { sigma: s, n }, g).unwrap()).collect();
                v.sort();
                v
            };
            prop_assert_eq!(values(&e), values(&d));
        }
    }

    #[test]
    fn bouquets_compile_to_three_based_components(seed: u64, crossings in 0usize..6) {
        let b = random_bouquet(seed, crossings);
        let g = compile_bouquet(&b).unwrap();
        prop_assert_eq!(g.component_count(), 3);
        prop_assert!(g.components().iter().all(|c| c.based));
        prop_assert_eq!(parse_bouquet(&serialize_bouquet(&b).unwrap()).unwrap().edges.len(), 3);
    }

    #[test]
    fn bouquet_rebases_compose(seed: u64, crossings in 0usize..6, s in 0usize..6, t in 0usize..6) {
        let b = random_bouquet(seed, crossings);
        let twice = cyclic_rebase(&cyclic_rebase(&b, s).unwrap(), t).unwrap();
        prop_assert_eq!(twice, cyclic_rebase(&b, s + t).unwrap());
        prop_assert_eq!(compile_bouquet(&cyclic_rebase(&b, 0).unwrap()).unwrap(), compile_bouquet(&b).unwrap());
        prop_assert!(compile_bouquet(&cyclic_rebase(&b, s).unwrap()).is_ok());
    }
}

#[test]
fn crossing_change_moves_a_linking_number_by_one() {
    // every closed two-arrow diagram between components 1 and 2
    for a in [End::Tail, End::Head] {
        for b in [End::Tail, End::Head] {
            for (s, t) in [
                (Sign::Pos, Sign::Pos),
                (Sign::Pos, Sign::Neg),
                (Sign::Neg, Sign::Neg),
            ] {
                let other = |e: End| if e == End::Tail { End::Head } else { End::Tail };
                let words = vec![
                    Word {
                        based: false,
                        tokens: vec![
                            Token {
                                id: "1".into(),
                                end: a,
                                sign: s,
                            },
                            Token {
                                id: "2".into(),
                                end: b,
                                sign: t,
                            },
                        ],
                    },
                    Word {
                        based: false,
                        tokens: vec![
                            Token {
                                id: "1".into(),
                                end: other(a),
                                sign: s,
                            },
                            Token {
                                id: "2".into(),
                                end: other(b),
                                sign: t,
                            },
                        ],
                    },
                    Word {
                        based: false,
                        tokens: vec![],
                    },
                ];
                let d = GaussDiagram::from_words(&words).unwrap();
                let lk = |g: &GaussDiagram| {
                    linking_number(g, ComponentId::new(1), ComponentId::new(2)).unwrap()
                };
                for id in ["1", "2"] {
                    let changed = d.crossing_change(id).unwrap();
                    assert_eq!((lk(&changed) - lk(&d)).abs(), 1);
                }
            }
        }
    }
}
