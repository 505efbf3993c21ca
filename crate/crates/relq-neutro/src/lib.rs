//! Neutrosophic grades: the unit interval extended by an indeterminate
//! element `I` and its scaled copies `cI`.
//!
//! Two arithmetic modes exist and every entry point takes one explicitly.
//! [`NeutroMode::Absorbing`] treats every indeterminate as the single
//! unlabeled `I` (`max(x, I) = I`, `min(x, I) = I` for `x > 0`,
//! `min(0, I) = 0`). [`NeutroMode::Graded`] orders grades by coefficient
//! and keeps the kind of whichever operand wins; a coefficient tie across
//! kinds goes to the indeterminate.
//!
//! A zero coefficient is the bottom element whatever its kind, so
//! `Real(0)` and `Indet(0)` compare equal.

mod io;
mod relation;
mod solve;

use std::fmt;
use std::str::FromStr;

use relq_grade::Scalar;
use serde::{Deserialize, Serialize};

pub use io::{from_csv, from_json, to_csv, to_json};
pub use relation::{neutro_compose, neutro_compose_vec, NeutroRelation};
pub use solve::{n_pseudo_char_matrix, nre_candidate, nre_is_solution, nre_max_solution, nre_split, NSymbol, NreSplit};

pub type NeutroGrade64 = NeutroGrade<f64>;
pub type NeutroRelation64 = NeutroRelation<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NeutroError {
    #[error("cannot parse {token:?} at position {pos}: {reason}")]
    Parse { token: String, pos: usize, reason: String },
    #[error("coefficient {0} is outside [0, 1]")]
    Range(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("mode mismatch: file says {file}, caller asked for {flag}")]
    ModeMismatch { file: NeutroMode, flag: NeutroMode },
    #[error("no mode given in the file or by the caller")]
    MissingMode,
    #[error("the system has no solution")]
    Infeasible,
    #[error("format error: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeutroMode {
    Absorbing,
    Graded,
}

impl fmt::Display for NeutroMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NeutroMode::Absorbing => "absorbing",
            NeutroMode::Graded => "graded",
        })
    }
}

impl FromStr for NeutroMode {
    type Err = NeutroError;
    fn from_str(s: &str) -> Result<Self, NeutroError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "absorbing" => Ok(NeutroMode::Absorbing),
            "graded" => Ok(NeutroMode::Graded),
            other => Err(NeutroError::Format(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Real,
    Indet,
}

/// `Real(c)` is an ordinary grade, `Indet(c)` the indeterminate `cI`.
#[derive(Debug, Clone, Copy)]
pub struct NeutroGrade<S> {
    pub kind: Kind,
    pub coeff: S,
}

impl<S: Scalar> NeutroGrade<S> {
    pub fn new(kind: Kind, coeff: S) -> Result<Self, NeutroError> {
        if !(coeff >= S::zero() && coeff <= S::one()) {
            return Err(NeutroError::Range(coeff.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(NeutroGrade { kind, coeff })
    }

    /// Panics outside [0, 1]; meant for literals.
    pub fn real(c: S) -> Self {
        Self::new(Kind::Real, c).expect("grade in [0, 1]")
    }

    /// Panics outside [0, 1]; meant for literals.
    pub fn indet(c: S) -> Self {
        Self::new(Kind::Indet, c).expect("coefficient in [0, 1]")
    }

    /// The unlabeled indeterminate `I`.
    pub fn i() -> Self {
        NeutroGrade { kind: Kind::Indet, coeff: S::one() }
    }

    pub fn zero() -> Self {
        NeutroGrade { kind: Kind::Real, coeff: S::zero() }
    }

    pub fn one() -> Self {
        NeutroGrade { kind: Kind::Real, coeff: S::one() }
    }

    pub fn is_bottom(&self) -> bool {
        self.coeff == S::zero()
    }

    pub fn is_real(&self) -> bool {
        self.kind == Kind::Real
    }

    pub fn is_indet(&self) -> bool {
        self.kind == Kind::Indet && !self.is_bottom()
    }

    /// The coefficient of a real grade.
    pub fn as_real(&self) -> Option<S> {
        (self.kind == Kind::Real || self.is_bottom()).then_some(self.coeff)
    }

    /// Equality up to `tol` under `mode`; in absorbing mode all
    /// indeterminates are the same `I`.
    pub fn approx_eq(&self, other: &Self, mode: NeutroMode, tol: S) -> bool {
        if mode == NeutroMode::Absorbing && self.is_indet() && other.is_indet() {
            return true;
        }
        let (a, b) = align(*self, *other);
        a.kind == b.kind && (a.coeff - b.coeff).abs() <= tol
    }
}

impl<S: Scalar> PartialEq for NeutroGrade<S> {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff && (self.kind == other.kind || self.is_bottom())
    }
}

/// Gives a bottom operand the kind of the other one, so the pair can be
/// compared within a single kind.
pub(crate) fn align<S: Scalar>(a: NeutroGrade<S>, b: NeutroGrade<S>) -> (NeutroGrade<S>, NeutroGrade<S>) {
    match (a.is_bottom(), b.is_bottom()) {
        (true, false) => (NeutroGrade { kind: b.kind, ..a }, b),
        (false, true) => (a, NeutroGrade { kind: a.kind, ..b }),
        (true, true) => (NeutroGrade::zero(), NeutroGrade::zero()),
        _ => (a, b),
    }
}

/// Neutrosophic minimum.
pub fn neutro_min<S: Scalar>(mode: NeutroMode, a: NeutroGrade<S>, b: NeutroGrade<S>) -> NeutroGrade<S> {
    if a.is_bottom() || b.is_bottom() {
        return NeutroGrade::zero();
    }
    match mode {
        NeutroMode::Absorbing => match (a.kind, b.kind) {
            (Kind::Real, Kind::Real) => NeutroGrade::real(a.coeff.min(b.coeff)),
            _ => NeutroGrade::i(),
        },
        NeutroMode::Graded => pick(a, b, a.coeff < b.coeff),
    }
}

/// Neutrosophic maximum.
pub fn neutro_max<S: Scalar>(mode: NeutroMode, a: NeutroGrade<S>, b: NeutroGrade<S>) -> NeutroGrade<S> {
    if a.is_bottom() {
        return if b.is_bottom() { NeutroGrade::zero() } else { absorb(mode, b) };
    }
    if b.is_bottom() {
        return absorb(mode, a);
    }
    match mode {
        NeutroMode::Absorbing => match (a.kind, b.kind) {
            (Kind::Real, Kind::Real) => NeutroGrade::real(a.coeff.max(b.coeff)),
            _ => NeutroGrade::i(),
        },
        NeutroMode::Graded => pick(a, b, a.coeff > b.coeff),
    }
}

fn absorb<S: Scalar>(mode: NeutroMode, g: NeutroGrade<S>) -> NeutroGrade<S> {
    if mode == NeutroMode::Absorbing && g.is_indet() {
        NeutroGrade::i()
    } else {
        g
    }
}

/// Graded selection: `a` when it wins strictly, `b` when `b` does, and the
/// indeterminate side on a tie across kinds.
fn pick<S: Scalar>(a: NeutroGrade<S>, b: NeutroGrade<S>, a_wins: bool) -> NeutroGrade<S> {
    if a_wins {
        a
    } else if a.coeff != b.coeff || a.kind == b.kind {
        b
    } else {
        NeutroGrade { kind: Kind::Indet, coeff: a.coeff }
    }
}

impl<S: Scalar> fmt::Display for NeutroGrade<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Real => write!(f, "{}", self.coeff),
            Kind::Indet if self.coeff == S::one() => f.write_str("I"),
            Kind::Indet => write!(f, "{}I", self.coeff),
        }
    }
}

impl<S: Scalar> FromStr for NeutroGrade<S> {
    type Err = NeutroError;
    fn from_str(s: &str) -> Result<Self, NeutroError> {
        neutro_parse(s)
    }
}

/// Parses `FLOAT`, `I` or `FLOAT I` (no space), e.g. `0.75`, `I`, `0.3I`.
pub fn neutro_parse<S: Scalar>(token: &str) -> Result<NeutroGrade<S>, NeutroError> {
    let err = |pos: usize, reason: &str| NeutroError::Parse { token: token.to_string(), pos, reason: reason.into() };
    let lead = token.len() - token.trim_start().len();
    let body = token.trim();
    if body.is_empty() {
        return Err(err(0, "empty token"));
    }
    let (number, kind) = match body.strip_suffix('I') {
        Some(n) => (n, Kind::Indet),
        None => (body, Kind::Real),
    };
    if let Some(p) = number.find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'))) {
        return Err(err(lead + p, "unexpected character"));
    }
    let coeff = if number.is_empty() {
        if kind == Kind::Real {
            return Err(err(lead, "missing number"));
        }
        1.0
    } else {
        number.parse::<f64>().map_err(|_| err(lead, "malformed number"))?
    };
    if !(0.0..=1.0).contains(&coeff) {
        return Err(err(lead, "coefficient outside [0, 1]"));
    }
    Ok(NeutroGrade { kind, coeff: S::lit(coeff) })
}

/// Inverse of [`neutro_parse`]; `Indet(1)` prints as `I`.
pub fn neutro_format<S: Scalar>(g: &NeutroGrade<S>) -> String {
    g.to_string()
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, bound = "S: Scalar")]
enum CellRepr<S> {
    Real(S),
    Indet {
        #[serde(rename = "I")]
        i: S,
    },
}

impl<S: Scalar> Serialize for NeutroGrade<S> {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        match self.kind {
            Kind::Real => CellRepr::Real(self.coeff),
            Kind::Indet => CellRepr::Indet { i: self.coeff },
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for NeutroGrade<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (kind, c) = match CellRepr::<S>::deserialize(d)? {
            CellRepr::Real(c) => (Kind::Real, c),
            CellRepr::Indet { i } => (Kind::Indet, i),
        };
        NeutroGrade::new(kind, c).map_err(serde::de::Error::custom)
    }
}
