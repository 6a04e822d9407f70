//! Seeded property checks: move invariance, the μ identities, base-point
//! deltas, and integrality along walks with crossing changes.
//!
//! Every check draws from its own ChaCha8 stream derived from the seed, so a
//! summary is a pure function of (invariants, move table, seed, trials).

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gauss::{BaseDirection, ComponentId, End, GaussDiagram};
use crate::generate::{one_sided_counts, random_diagram, random_link};
use crate::invariants::{InvariantError, Invariants, Report};
use crate::moves::{picture_of, plant_with_site, MoveSpec, MoveTable};
use crate::pattern::{count_pattern, Binding, PatternLibrary};
use crate::text::serialize_gauss_code;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            trials: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub description: String,
    pub diagram: GaussDiagram,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The first failing case, minimized.
    pub counterexample: Option<Counterexample>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub seed: u64,
    pub results: Vec<PropertyResult>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.results.iter().all(PropertyResult::passed)
    }

    pub fn result(&self, name: &str) -> Option<&PropertyResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for r in &self.results {
            let status = if r.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "{:<22} {:>6} cases {:>5} failures  {status}",
                r.name, r.cases, r.failures
            )?;
        }
        for r in &self.results {
            if let Some(c) = &r.counterexample {
                writeln!(f, "\ncounterexample for {}: {}", r.name, c.description)?;
                write!(f, "{}", serialize_gauss_code(&c.diagram))?;
            }
        }
        Ok(())
    }
}

pub const MOVE_INVARIANCE: &str = "move-invariance";
pub const IDENTITIES: &str = "identities";
pub const BASE_POINT_DELTAS: &str = "base-point-deltas";
pub const INTEGRALITY: &str = "integrality";

/// Everything a move must preserve: the full report plus all six one-sided counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub report: Report,
    pub counts: [i64; 6],
}

pub fn fingerprint(
    invariants: &Invariants,
    diagram: &GaussDiagram,
) -> Result<Fingerprint, InvariantError> {
    Ok(Fingerprint {
        report: invariants.report(diagram, None)?,
        counts: one_sided_counts(diagram),
    })
}

fn stream(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs every property.
pub fn verify(invariants: &Invariants, table: &MoveTable, config: &VerifyConfig) -> Summary {
    Summary {
        seed: config.seed,
        results: vec![
            check_move_invariance(invariants, table, config),
            check_identities(invariants, config),
            check_base_point_deltas(invariants, config),
            check_integrality(invariants, table, config),
        ],
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(counterexample());
            }
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            counterexample: self.counterexample,
        }
    }
}

/// Greedily deletes arrows while `fails` still holds.
pub fn minimize(diagram: &GaussDiagram, fails: impl Fn(&GaussDiagram) -> bool) -> GaussDiagram {
    let mut current = diagram.clone();
    loop {
        let ids: Vec<String> = current.arrows().iter().map(|a| a.id.clone()).collect();
        let smaller = ids.iter().find_map(|id| {
            let candidate = current.remove_arrow(id).ok()?;
            fails(&candidate).then_some(candidate)
        });
        match smaller {
            Some(d) => current = d,
            None => return current.canonical(),
        }
    }
}

/// Whether some site of `spec` in `diagram` changes the fingerprint.
fn move_breaks(
    invariants: &Invariants,
    table: &MoveTable,
    spec: &MoveSpec,
    diagram: &GaussDiagram,
) -> bool {
    let Ok(before) = fingerprint(invariants, diagram) else {
        return false;
    };
    let Ok(sites) = table.enumerate_sites(diagram, spec) else {
        return false;
    };
    sites.iter().any(|site| {
        table
            .apply_move(diagram, spec, site)
            .ok()
            .and_then(|after| fingerprint(invariants, &after).ok())
            .is_some_and(|after| after != before)
    })
}

/// Case t plants the source side of variant t mod (number of variants) into
/// a random closed link and applies the move at the planted site.
pub fn check_move_invariance(
    invariants: &Invariants,
    table: &MoveTable,
    config: &VerifyConfig,
) -> PropertyResult {
    let mut rng = stream(config.seed, 1);
    let specs = table.specs();
    let mut tally = Tally::new(MOVE_INVARIANCE);
    for t in 0..config.trials {
        let spec = &specs[t % specs.len()];
        let length = rng.gen_range(2..=8);
        let base = random_link(&mut rng, length);
        let rule = table.rule(&spec.tag).expect("spec comes from the table");
        let source = picture_of(rule, spec.direction);
        let Some((planted, site)) = plant_with_site(&mut rng, &base, &source) else {
            continue;
        };
        let after = table
            .apply_move(&planted, spec, &site)
            .expect("planted site matches");
        let ok = match (
            fingerprint(invariants, &planted),
            fingerprint(invariants, &after),
        ) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        tally.record(ok, || Counterexample {
            description: format!("{spec} changes an invariant"),
            diagram: minimize(&planted, |d| move_breaks(invariants, table, spec, d)),
        });
    }
    tally.finish()
}

fn identities_hold(invariants: &Invariants, diagram: &GaussDiagram) -> bool {
    // milnor_mu123 itself errors when the signed sum and P_even − P_odd disagree
    let (Ok(mu), Ok(p1), Ok(p2)) = (
        invariants.milnor_mu123(diagram),
        invariants.p1(diagram),
        invariants.p2(diagram),
    ) else {
        return false;
    };
    mu.raw * Rational::from_integer(6) == Rational::from_integer(p1 + p2)
}

/// μ₁₂₃ = P_even − P_odd and 6μ₁₂₃ = P₁ + P₂ on arbitrary random diagrams.
pub fn check_identities(invariants: &Invariants, config: &VerifyConfig) -> PropertyResult {
    let mut rng = stream(config.seed, 2);
    let mut tally = Tally::new(IDENTITIES);
    for _ in 0..config.trials {
        let arrows = rng.gen_range(0..=9);
        let d = random_diagram(&mut rng, 3, arrows);
        let ok = identities_hold(invariants, &d);
        tally.record(ok, || Counterexample {
            description: "μ₁₂₃ ≠ P_even − P_odd or 6μ₁₂₃ ≠ P₁ + P₂".into(),
            diagram: minimize(&d, |x| !identities_hold(invariants, x)),
        });
    }
    tally.finish()
}

/// Ordered component triples (i, j, k), 0-based, in a fixed order.
pub const BINDINGS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn binding_index(b: [usize; 3]) -> usize {
    BINDINGS
        .iter()
        .position(|&x| x == b)
        .expect("distinct components")
}

/// Change of the four pattern counts when the base point of `component`
/// slides past one endpoint, predicted from the arrow met and the one-sided
/// counts. Indexed [pattern a, b, c, d][binding as in `BINDINGS`].
pub fn predicted_base_point_deltas(
    diagram: &GaussDiagram,
    component: usize,
    direction: BaseDirection,
) -> [[i64; 6]; 4] {
    let mut out = [[0i64; 6]; 4];
    let n = diagram.components()[component].len;
    if n == 0 {
        return out;
    }
    // Forward moves the first endpoint to the end; backward undoes that for the last one.
    let (slot, flip) = match direction {
        BaseDirection::Forward => (diagram.slots(component)[0], 1),
        BaseDirection::Backward => (diagram.slots(component)[n - 1], -1),
    };
    let arrow = &diagram.arrows()[slot.arrow];
    let other = match slot.end {
        End::Head => arrow.tail.component,
        End::Tail => arrow.head.component,
    };
    if other == component {
        return out;
    }
    let (c, p) = (component, other);
    let q = 3 - c - p;
    let counts = one_sided_counts(diagram);
    let count = |from: usize, to: usize| -> i64 {
        let pairs = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
        counts[pairs
            .iter()
            .position(|&x| x == (from, to))
            .expect("distinct components")]
    };
    let first = binding_index([p, c, q]);
    let second = binding_index([q, c, p]);
    let e = arrow.sign.value() * flip;
    let (a, b, cc, d) = (0, 1, 2, 3);
    match slot.end {
        End::Head => {
            out[b][first] -= e * count(c, q);
            out[cc][second] += e * count(c, q);
            out[a][first] -= e * count(q, c);
            out[a][second] += e * count(q, c);
        }
        End::Tail => {
            out[cc][first] -= e * count(q, c);
            out[b][second] += e * count(q, c);
            out[d][first] -= e * count(c, q);
            out[d][second] += e * count(c, q);
        }
    }
    out
}

/// The four two-arrow pattern counts under every binding.
pub fn pattern_counts(diagram: &GaussDiagram) -> [[i64; 6]; 4] {
    let library = PatternLibrary::standard();
    let based = diagram.all_based();
    let mut out = [[0i64; 6]; 4];
    for (row, name) in out
        .iter_mut()
        .zip(["a(i,j,k)", "b(i,j,k)", "c(i,j,k)", "d(i,j,k)"])
    {
        let pattern = library.get(name).expect("shipped pattern");
        for (slot, components) in row.iter_mut().zip(BINDINGS) {
            let binding = Binding::new(components).expect("injective");
            *slot = count_pattern(pattern, &binding, &based).expect("three components");
        }
    }
    out
}

/// One base-point slide on a closed link: every pattern count moves as
/// predicted, P_hat and all Q are unchanged, P₁/P₂ keep their residues.
fn base_point_case(
    invariants: &Invariants,
    diagram: &GaussDiagram,
    component: usize,
    direction: BaseDirection,
) -> Result<bool, InvariantError> {
    let moved = diagram
        .move_base_point(ComponentId::from_index(component), direction)
        .expect("component is based and nonempty");
    let before = pattern_counts(diagram);
    let after = pattern_counts(&moved);
    let predicted = predicted_base_point_deltas(diagram, component, direction);
    for k in 0..4 {
        for s in 0..6 {
            if after[k][s] - before[k][s] != predicted[k][s] {
                return Ok(false);
            }
        }
    }
    let (r0, r1) = (
        invariants.report(diagram, None)?,
        invariants.report(&moved, None)?,
    );
    Ok(r0.lk == r1.lk
        && r0.p_hat == r1.p_hat
        && r0.q == r1.q
        && r0.p_reduced == r1.p_reduced
        && one_sided_counts(diagram) == one_sided_counts(&moved))
}

pub fn check_base_point_deltas(invariants: &Invariants, config: &VerifyConfig) -> PropertyResult {
    let mut rng = stream(config.seed, 3);
    let mut tally = Tally::new(BASE_POINT_DELTAS);
    for _ in 0..config.trials {
        let length = rng.gen_range(2..=9);
        let d = random_link(&mut rng, length);
        let nonempty: Vec<usize> = (0..3).filter(|&c| d.components()[c].len > 0).collect();
        let Some(&component) = nonempty.choose(&mut rng) else {
            continue;
        };
        let direction = if rng.gen_bool(0.5) {
            BaseDirection::Forward
        } else {
            BaseDirection::Backward
        };
        let ok = base_point_case(invariants, &d, component, direction).unwrap_or(false);
        tally.record(ok, || Counterexample {
            description: format!(
                "sliding the base point of component {} {:?}",
                component + 1,
                direction
            ),
            diagram: minimize(&d, |x| {
                x.components()[component].len > 0
                    && !base_point_case(invariants, x, component, direction).unwrap_or(false)
            }),
        });
    }
    tally.finish()
}

fn p_hat_integral(invariants: &Invariants, d: &GaussDiagram) -> bool {
    invariants.p_hat(d).is_ok_and(|v| v.is_integer())
}

/// Walks from the empty diagram mixing Reidemeister moves and crossing
/// changes; P_hat stays integral, so each crossing change moves 6·P_hat by
/// a multiple of 6. One walk per ten trials, at least one.
pub fn check_integrality(
    invariants: &Invariants,
    table: &MoveTable,
    config: &VerifyConfig,
) -> PropertyResult {
    let mut rng = stream(config.seed, 4);
    let specs = table.specs();
    let mut tally = Tally::new(INTEGRALITY);
    let walks = (config.trials / 10).max(1);
    for _ in 0..walks {
        let mut d = GaussDiagram::unlink(3, true);
        for _ in 0..16 {
            let change = !d.arrows().is_empty() && rng.gen_bool(0.4);
            let next = if change {
                let id = d.arrows().choose(&mut rng).expect("nonempty").id.clone();
                d.crossing_change(&id).expect("arrow exists")
            } else {
                match table.random_step(&mut rng, &d, &specs) {
                    Ok(Some((_, _, next))) => next,
                    _ => d.clone(),
                }
            };
            let ok = p_hat_integral(invariants, &next)
                && match (invariants.p_hat(&d), invariants.p_hat(&next)) {
                    (Ok(x), Ok(y)) => ((y - x) * Rational::from_integer(6)).is_integer(),
                    _ => false,
                };
            tally.record(ok, || Counterexample {
                description: "P_hat is not an integer".into(),
                diagram: minimize(&next, |x| !p_hat_integral(invariants, x)),
            });
            d = next;
        }
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let inv = Invariants::standard();
        let table = MoveTable::standard();
        let config = VerifyConfig {
            seed: 7,
            trials: 64,
        };
        let a = verify(&inv, &table, &config);
        println!("{a}");
        assert!(a.passed(), "{a}");
        assert_eq!(a, verify(&inv, &table, &config));
    }
}
