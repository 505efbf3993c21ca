use crate::{GradeError, Scalar, TNorm};

/// Implication operator `a -> b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Implication<S> {
    Godel,
    Lukasiewicz,
    KleeneDienes,
    /// Classical material implication, defined on {0, 1} only.
    CrispMaterial,
    Residuum(TNorm<S>),
}

impl<S: Scalar> Implication<S> {
    pub fn apply(&self, a: S, b: S) -> Result<S, GradeError> {
        let (zero, one) = (S::zero(), S::one());
        Ok(match self {
            Implication::Godel => {
                if a <= b {
                    one
                } else {
                    b
                }
            }
            Implication::Lukasiewicz => (one - a + b).min(one),
            Implication::KleeneDienes => (one - a).max(b),
            Implication::CrispMaterial => {
                let binary = |v: S| v == zero || v == one;
                if !binary(a) || !binary(b) {
                    return Err(GradeError::NonBinary(
                        a.to_f64().unwrap_or(f64::NAN),
                        b.to_f64().unwrap_or(f64::NAN),
                    ));
                }
                if a == one && b == zero {
                    zero
                } else {
                    one
                }
            }
            Implication::Residuum(t) => t.residuum(a, b),
        })
    }

    pub fn name(&self) -> String {
        match self {
            Implication::Godel => "godel".into(),
            Implication::Lukasiewicz => "lukasiewicz".into(),
            Implication::KleeneDienes => "kleene-dienes".into(),
            Implication::CrispMaterial => "crisp".into(),
            Implication::Residuum(t) => format!("residuum:{}", t.name()),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        let n = name.trim().to_ascii_lowercase();
        if let Some(rest) = n.strip_prefix("residuum:") {
            return TNorm::from_name(rest).map(Implication::Residuum);
        }
        Some(match n.as_str() {
            "godel" | "goedel" => Implication::Godel,
            "lukasiewicz" | "luk" => Implication::Lukasiewicz,
            "kleene-dienes" | "kd" | "kleene" => Implication::KleeneDienes,
            "crisp" | "material" | "crisp-material" => Implication::CrispMaterial,
            _ => return None,
        })
    }
}
