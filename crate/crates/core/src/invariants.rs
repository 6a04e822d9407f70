//! The named invariants of ordered 3-component diagrams.
//!
//! With placeholders bound by σ = (1 2 3 / i j k):
//!
//! * P_even, P_odd = 1/6 Σ_σ ⟨2b + 2c + a + d⟩ over even (odd) σ;
//! * μ₁₂₃ = P_even − P_odd, μ̂ = P_even + P_odd;
//! * P₁ = Σ_σ sign(σ) ⟨b + c + a⟩, P₂ = Σ_σ sign(σ) ⟨b + c + d⟩;
//! * Q¹_σ = ⟨b(i,j,k) + c(k,j,i)⟩, Q²_σ = ⟨d(i,j,k) + d(k,j,i)⟩,
//!   Q³_σ = ⟨a(i,j,k) + a(k,j,i)⟩.
//!
//! Every formula is evaluated on based diagrams: a closed component is read
//! as based at the cut before its first slot.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{ComponentId, GaussDiagram};
use crate::pattern::{evaluate_formula, PatternError, PatternLibrary, Permutation, Summation};
use crate::{Rational, RationalFormula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("expected 3 components, diagram has {0}")]
    ComponentCount(usize),
    #[error("linking number needs two distinct components, got {0} twice")]
    SameComponent(ComponentId),
    #[error("component {0} does not exist")]
    NoSuchComponent(ComponentId),
    #[error("μ₁₂₃ evaluated two ways disagrees: signed sum {signed}, P_even − P_odd {difference}")]
    PathsDisagree {
        signed: Rational,
        difference: Rational,
    },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// A raw value with an optional reduction modulo `modulus` (0 = none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue {
    pub raw: Rational,
    pub modulus: u64,
    pub residue: Option<u64>,
}

impl InvariantValue {
    pub fn unreduced(raw: Rational) -> Self {
        InvariantValue {
            raw,
            modulus: 0,
            residue: None,
        }
    }
}

/// Reduces `value` modulo the gcd of `moduli` (gcd of nothing, or of zeros, is 0).
pub fn reduce_mod(value: i64, moduli: &[i64]) -> InvariantValue {
    let modulus = moduli.iter().fold(0u64, |g, m| g.gcd(&m.unsigned_abs()));
    let residue = (modulus > 0).then(|| value.rem_euclid(modulus as i64) as u64);
    InvariantValue {
        raw: Rational::from_integer(value),
        modulus,
        residue,
    }
}

/// One of the eighteen functions Qⁿ_σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QIndex {
    pub sigma: Permutation,
    pub n: u8,
}

impl QIndex {
    pub fn new(sigma: Permutation, n: u8) -> Option<QIndex> {
        (1..=3).contains(&n).then_some(QIndex { sigma, n })
    }

    pub fn all() -> impl Iterator<Item = QIndex> {
        Permutation::ALL
            .into_iter()
            .flat_map(|sigma| (1..=3).map(move |n| QIndex { sigma, n }))
    }
}

impl fmt::Display for QIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}^{}", self.n, self.sigma)
    }
}

/// Signed count of arrows with tail on `i` and head on `j`.
pub fn linking_number(
    diagram: &GaussDiagram,
    i: ComponentId,
    j: ComponentId,
) -> Result<i64, InvariantError> {
    if i == j {
        return Err(InvariantError::SameComponent(i));
    }
    for c in [i, j] {
        if c.index() >= diagram.component_count() {
            return Err(InvariantError::NoSuchComponent(c));
        }
    }
    Ok(diagram
        .arrows()
        .iter()
        .filter(|a| a.tail.component == i.index() && a.head.component == j.index())
        .map(|a| a.sign.value())
        .sum())
}

/// The three pairwise counts (lk₁₂, lk₁₃, lk₂₃), tail on the lower index.
pub fn linking_numbers(diagram: &GaussDiagram) -> Result<[i64; 3], InvariantError> {
    let c = ComponentId::new;
    Ok([
        linking_number(diagram, c(1), c(2))?,
        linking_number(diagram, c(1), c(3))?,
        linking_number(diagram, c(2), c(3))?,
    ])
}

/// Compiled formulas over one pattern library.
#[derive(Debug, Clone)]
pub struct Invariants {
    p_sum: RationalFormula,
    p1: RationalFormula,
    p2: RationalFormula,
    q: [RationalFormula; 3],
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

impl Invariants {
    pub fn new(library: &PatternLibrary) -> Result<Invariants, PatternError> {
        let get = |name: &str| library.get(name).cloned();
        let (a, b, c, d) = (
            get("a(i,j,k)")?,
            get("b(i,j,k)")?,
            get("c(i,j,k)")?,
            get("d(i,j,k)")?,
        );
        let signed = Summation::SignedOverS3;
        let q = |x: &str, y: &str| -> Result<RationalFormula, PatternError> {
            Ok(RationalFormula::new(
                vec![(int(1), get(x)?), (int(1), get(y)?)],
                Summation::None,
                int(1),
            ))
        };
        Ok(Invariants {
            p_sum: RationalFormula::new(
                vec![
                    (int(2), b.clone()),
                    (int(2), c.clone()),
                    (int(1), a.clone()),
                    (int(1), d.clone()),
                ],
                Summation::UnsignedOverS3,
                Rational::new(1, 6),
            ),
            p1: RationalFormula::new(
                vec![(int(1), b.clone()), (int(1), c.clone()), (int(1), a)],
                signed,
                int(1),
            ),
            p2: RationalFormula::new(vec![(int(1), b), (int(1), c), (int(1), d)], signed, int(1)),
            q: [
                q("b(i,j,k)", "c(k,j,i)")?,
                q("d(i,j,k)", "d(k,j,i)")?,
                q("a(i,j,k)", "a(k,j,i)")?,
            ],
        })
    }

    pub fn standard() -> Invariants {
        Invariants::new(&PatternLibrary::standard()).expect("shipped library has a, b, c, d")
    }

    fn prepare(diagram: &GaussDiagram) -> Result<GaussDiagram, InvariantError> {
        if diagram.component_count() != 3 {
            return Err(InvariantError::ComponentCount(diagram.component_count()));
        }
        Ok(diagram.all_based())
    }

    fn eval(
        &self,
        formula: &RationalFormula,
        diagram: &GaussDiagram,
    ) -> Result<Rational, InvariantError> {
        Ok(evaluate_formula(formula, &Self::prepare(diagram)?)?)
    }

    pub fn p_even(&self, diagram: &GaussDiagram) -> Result<Rational, InvariantError> {
        self.eval(&self.p_sum.with_summation(Summation::OverEven), diagram)
    }

    pub fn p_odd(&self, diagram: &GaussDiagram) -> Result<Rational, InvariantError> {
        self.eval(&self.p_sum.with_summation(Summation::OverOdd), diagram)
    }

    /// μ̂ = P_even + P_odd.
    pub fn p_hat(&self, diagram: &GaussDiagram) -> Result<Rational, InvariantError> {
        Ok(self.p_even(diagram)? + self.p_odd(diagram)?)
    }

    /// μ₁₂₃ as the signed sum over S₃, cross-checked against P_even − P_odd,
    /// reduced modulo gcd(lk₂₃, lk₁₃, lk₁₂) when integral.
    pub fn milnor_mu123(&self, diagram: &GaussDiagram) -> Result<InvariantValue, InvariantError> {
        let signed = self.eval(&self.p_sum.with_summation(Summation::SignedOverS3), diagram)?;
        let difference = self.p_even(diagram)? - self.p_odd(diagram)?;
        if signed != difference {
            return Err(InvariantError::PathsDisagree { signed, difference });
        }
        if !signed.is_integer() {
            return Ok(InvariantValue::unreduced(signed));
        }
        let [l12, l13, l23] = linking_numbers(diagram)?;
        Ok(reduce_mod(signed.to_integer(), &[l23, l13, l12]))
    }

    pub fn p1(&self, diagram: &GaussDiagram) -> Result<i64, InvariantError> {
        Ok(self.eval(&self.p1, diagram)?.to_integer())
    }

    pub fn p2(&self, diagram: &GaussDiagram) -> Result<i64, InvariantError> {
        Ok(self.eval(&self.p2, diagram)?.to_integer())
    }

    /// P₁ and P₂ reduced modulo gcd(2lk₂₃, 2lk₁₃, 2lk₁₂).
    pub fn p_reduced(
        &self,
        diagram: &GaussDiagram,
    ) -> Result<(InvariantValue, InvariantValue), InvariantError> {
        let [l12, l13, l23] = linking_numbers(diagram)?;
        let moduli = [2 * l23, 2 * l13, 2 * l12];
        Ok((
            reduce_mod(self.p1(diagram)?, &moduli),
            reduce_mod(self.p2(diagram)?, &moduli),
        ))
    }

    pub fn q(&self, index: QIndex, diagram: &GaussDiagram) -> Result<i64, InvariantError> {
        let formula =
            self.q[usize::from(index.n) - 1].with_summation(Summation::Fixed(index.sigma));
        Ok(self.eval(&formula, diagram)?.to_integer())
    }

    /// (1 − t)·μ₁₂₃ + t·μ̂.
    pub fn interpolated_mu(
        &self,
        t: Rational,
        diagram: &GaussDiagram,
    ) -> Result<Rational, InvariantError> {
        let mu = self.milnor_mu123(diagram)?.raw;
        let hat = self.p_hat(diagram)?;
        Ok((Rational::one() - t) * mu + t * hat)
    }

    /// Everything at once, for reports and invariance checks.
    pub fn report(
        &self,
        diagram: &GaussDiagram,
        t: Option<Rational>,
    ) -> Result<Report, InvariantError> {
        Self::prepare(diagram)?;
        let [l12, l13, l23] = linking_numbers(diagram)?;
        let mu = self.milnor_mu123(diagram)?;
        let p_even = self.p_even(diagram)?;
        let p_odd = self.p_odd(diagram)?;
        let (r1, r2) = self.p_reduced(diagram)?;
        let mut q = BTreeMap::new();
        for sigma in Permutation::ALL {
            let mut values = [0i64; 3];
            for n in 1..=3u8 {
                values[usize::from(n) - 1] = self.q(QIndex { sigma, n }, diagram)?;
            }
            q.insert(sigma.name().to_string(), values);
        }
        let mu_t = match t {
            Some(t) => Some(MuT {
                t: RationalString(t),
                value: RationalString(self.interpolated_mu(t, diagram)?),
            }),
            None => None,
        };
        Ok(Report {
            lk: BTreeMap::from([
                ("12".to_string(), l12),
                ("13".to_string(), l13),
                ("23".to_string(), l23),
            ]),
            mu123: MuValue {
                raw: RationalString(mu.raw),
                modulus: mu.modulus,
                residue: mu.residue,
            },
            p_even: RationalString(p_even),
            p_odd: RationalString(p_odd),
            p_hat: RationalString(p_even + p_odd),
            p1: r1.raw.to_integer(),
            p2: r2.raw.to_integer(),
            p_reduced: PReduced {
                modulus: r1.modulus,
                p1: r1.residue,
                p2: r2.residue,
            },
            q,
            mu_t,
        })
    }
}

/// An exact rational serialized as `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalString(pub Rational);

impl fmt::Display for RationalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for RationalString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text)
            .map(RationalString)
            .map_err(serde::de::Error::custom)
    }
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let bad = || format!("expected a rational p/q, got `{text}`");
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let q: i64 = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuValue {
    pub raw: RationalString,
    pub modulus: u64,
    pub residue: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PReduced {
    pub modulus: u64,
    pub p1: Option<u64>,
    pub p2: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuT {
    pub t: RationalString,
    pub value: RationalString,
}

/// The per-diagram report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub lk: BTreeMap<String, i64>,
    pub mu123: MuValue,
    pub p_even: RationalString,
    pub p_odd: RationalString,
    pub p_hat: RationalString,
    pub p1: i64,
    pub p2: i64,
    pub p_reduced: PReduced,
    pub q: BTreeMap<String, [i64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu_t: Option<MuT>,
}
