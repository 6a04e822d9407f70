//! Gauss diagram formulas for ordered 3-component links and based 3-bouquet
//! graphs: Milnor's triple linking number μ₁₂₃, the link homotopy invariant
//! μ̂ = P_even + P_odd, the bouquet invariants P₁ and P₂, and the eighteen
//! functions Qⁿ_σ, together with the Reidemeister and base-point moves used
//! to check their invariance.

pub mod bouquet;
pub mod gauss;
pub mod generate;
pub mod harness;
pub mod invariants;
pub mod moves;
pub mod pattern;
pub mod scalar;
pub mod tables;
pub mod text;

pub use bouquet::{
    compile_bouquet, parse_bouquet, serialize_bouquet, BouquetError, BouquetPresentation,
};
pub use gauss::{
    validate, Arrow, BaseDirection, Component, ComponentId, DiagramError, End, Endpoint,
    GaussDiagram, Sign, Token, Violation, Violations, Word,
};
pub use invariants::{reduce_mod, InvariantError, InvariantValue, Invariants, QIndex, Report};
pub use moves::{MoveError, MoveSite, MoveSpec, MoveTable};
pub use pattern::{
    count_pattern, evaluate_formula, load_pattern_library, ArrowPattern, Binding, Formula,
    FormulaTerm, PatternError, PatternLibrary, Permutation, Placeholder, Summation,
};
pub use scalar::Scalar;
pub use text::{parse_gauss_code, serialize_gauss_code, ParseError};

/// Exact rational values of every formula.
pub type Rational = num_rational::Ratio<i64>;

pub type RationalFormula = Formula<Rational>;

/// Floating-point evaluation, for quick estimates only.
pub type FloatFormula = Formula<f64>;
