use std::fmt;

use crate::Scalar;

/// Additive generator of a continuous Archimedean t-norm.
///
/// `f` must be continuous, strictly decreasing on [0, 1] with `f(1) = 0`;
/// `inv` is its ordinary inverse on `[0, f(0)]`. `f(0)` may be infinite.
#[derive(Clone, Copy)]
pub struct Generator<S> {
    pub name: &'static str,
    pub f: fn(S) -> S,
    pub inv: fn(S) -> S,
}

impl<S: Scalar> Generator<S> {
    /// `-ln a`, which generates the product t-norm.
    pub fn neg_log() -> Self {
        Generator {
            name: "neg-log",
            f: |a| -a.ln(),
            inv: |y| (-y).exp(),
        }
    }

    /// `1 - a`, which generates the Lukasiewicz t-norm.
    pub fn one_minus() -> Self {
        Generator {
            name: "one-minus",
            f: |a| S::one() - a,
            inv: |y| S::one() - y,
        }
    }

    /// `(1 - a) / a`, the Hamacher product. Its residuum has no simple
    /// closed form in this representation, so it exercises the bisection path.
    pub fn hamacher() -> Self {
        Generator {
            name: "hamacher",
            f: |a| (S::one() - a) / a,
            inv: |y| S::one() / (S::one() + y),
        }
    }

    /// Pseudo-inverse: 1 below 0, `inv` on `[0, f(0)]`, 0 above `f(0)`.
    pub fn pseudo_inverse(&self, y: S) -> S {
        let top = (self.f)(S::zero());
        if y < S::zero() {
            S::one()
        } else if y > top {
            S::zero()
        } else {
            (self.inv)(y).clamp01()
        }
    }

    pub fn apply(&self, a: S, b: S) -> S {
        if a == S::one() {
            return b;
        }
        if b == S::one() {
            return a;
        }
        self.pseudo_inverse((self.f)(a) + (self.f)(b))
    }
}

impl<S> fmt::Debug for Generator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.name)
    }
}

impl<S> PartialEq for Generator<S> {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// Triangular norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TNorm<S> {
    Min,
    Product,
    Lukasiewicz,
    Drastic,
    Archimedean(Generator<S>),
}

const BISECT_STEPS: usize = 200;

impl<S: Scalar> TNorm<S> {
    pub fn name(&self) -> String {
        match self {
            TNorm::Min => "min".into(),
            TNorm::Product => "product".into(),
            TNorm::Lukasiewicz => "lukasiewicz".into(),
            TNorm::Drastic => "drastic".into(),
            TNorm::Archimedean(g) => format!("generator:{}", g.name),
        }
    }

    /// Looks up a built-in by name (`min`, `product`, `lukasiewicz`,
    /// `drastic`, `hamacher`, `generator:neg-log`, ...).
    pub fn from_name(name: &str) -> Option<Self> {
        let n = name.trim().to_ascii_lowercase();
        Some(match n.as_str() {
            "min" | "minimum" | "godel" => TNorm::Min,
            "product" | "prod" => TNorm::Product,
            "lukasiewicz" | "luk" => TNorm::Lukasiewicz,
            "drastic" => TNorm::Drastic,
            "hamacher" | "generator:hamacher" => TNorm::Archimedean(Generator::hamacher()),
            "generator:neg-log" => TNorm::Archimedean(Generator::neg_log()),
            "generator:one-minus" => TNorm::Archimedean(Generator::one_minus()),
            _ => return None,
        })
    }

    /// All built-in t-norms, used by property suites.
    pub fn builtins() -> Vec<Self> {
        vec![
            TNorm::Min,
            TNorm::Product,
            TNorm::Lukasiewicz,
            TNorm::Drastic,
            TNorm::Archimedean(Generator::neg_log()),
            TNorm::Archimedean(Generator::one_minus()),
            TNorm::Archimedean(Generator::hamacher()),
        ]
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(self, TNorm::Drastic)
    }

    /// Continuous and sub-idempotent (`t(a,a) < a` on the open interval).
    pub fn is_archimedean(&self) -> bool {
        matches!(self, TNorm::Product | TNorm::Lukasiewicz | TNorm::Archimedean(_))
    }

    pub fn apply(&self, a: S, b: S) -> S {
        let (zero, one) = (S::zero(), S::one());
        match self {
            TNorm::Min => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - one).max(zero),
            TNorm::Drastic => {
                if a == one {
                    b
                } else if b == one {
                    a
                } else {
                    zero
                }
            }
            TNorm::Archimedean(g) => g.apply(a, b),
        }
    }

    /// Dual t-conorm `1 - t(1-a, 1-b)`.
    pub fn conorm(&self, a: S, b: S) -> S {
        S::one() - self.apply(S::one() - a, S::one() - b)
    }

    /// Residuum `sup { x : t(a, x) <= b }`.
    pub fn residuum(&self, a: S, b: S) -> S {
        let one = S::one();
        match self {
            TNorm::Min => {
                if a <= b {
                    one
                } else {
                    b
                }
            }
            TNorm::Product => {
                if a <= b {
                    one
                } else {
                    b / a
                }
            }
            TNorm::Lukasiewicz => (one - a + b).min(one),
            // sup of [0,1) is 1 unless a = 1; not attained, and the
            // adjunction fails here because the norm is not left-continuous
            TNorm::Drastic => {
                if a < one {
                    one
                } else {
                    b
                }
            }
            TNorm::Archimedean(_) => {
                if self.apply(a, one) <= b {
                    return one;
                }
                let (mut lo, mut hi) = (S::zero(), one);
                for _ in 0..BISECT_STEPS {
                    let mid = (lo + hi) / S::lit(2.0);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.apply(a, mid) <= b {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    /// Largest `x` with `t(a, x) = b`; `None` when no such `x` exists.
    pub fn max_so(&self, a: S, b: S) -> Option<S> {
        match self {
            TNorm::Drastic => {
                let one = S::one();
                if b == S::zero() && a < one {
                    // t(a, x) = 0 for every x < 1, and t(a, 1) = a
                    Some(if a == S::zero() { one } else { x_below_one() })
                } else if a == one {
                    Some(b)
                } else if a == b {
                    Some(one)
                } else {
                    None
                }
            }
            _ => {
                if a < b {
                    None
                } else {
                    Some(self.residuum(a, b))
                }
            }
        }
    }

    /// Smallest `x` with `t(a, x) = b` (the min-SO); `None` when unsolvable.
    pub fn min_so(&self, a: S, b: S) -> Option<S> {
        let (zero, one) = (S::zero(), S::one());
        if a < b {
            return None;
        }
        if b == zero {
            return Some(zero);
        }
        match self {
            TNorm::Min => Some(b),
            TNorm::Product => Some((b / a).min(one)),
            TNorm::Lukasiewicz => Some((b + one - a).clamp01()),
            TNorm::Drastic => {
                if a == one {
                    Some(b)
                } else if a == b {
                    Some(one)
                } else {
                    None
                }
            }
            TNorm::Archimedean(_) => {
                let (mut lo, mut hi) = (zero, one);
                for _ in 0..BISECT_STEPS {
                    let mid = (lo + hi) / S::lit(2.0);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.apply(a, mid) >= b {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                Some(hi)
            }
        }
    }
}

// Stand-in for "the supremum of [0,1)": the largest representable value below 1.
fn x_below_one<S: Scalar>() -> S {
    S::one() - S::epsilon()
}

impl<S: Scalar> fmt::Display for TNorm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spot_values() {
        assert_eq!(TNorm::<f64>::Min.apply(0.3, 0.7), 0.3);
        assert!((TNorm::<f64>::Lukasiewicz.apply(0.9, 0.5) - 0.4).abs() < 1e-12);
        assert_eq!(TNorm::<f64>::Drastic.apply(0.9, 0.5), 0.0);
        assert_eq!(TNorm::<f64>::Drastic.apply(1.0, 0.5), 0.5);
    }

    #[test]
    fn neg_log_generator_is_product() {
        let g = TNorm::Archimedean(Generator::<f64>::neg_log());
        assert!((g.apply(0.8, 0.5) - 0.4).abs() < 1e-12);
        for i in 0..=20 {
            for j in 0..=20 {
                let (a, b) = (i as f64 / 20.0, j as f64 / 20.0);
                assert!((g.apply(a, b) - a * b).abs() < 1e-12, "{a} {b}");
            }
        }
    }

    #[test]
    fn pseudo_inverse_clamps() {
        let g = Generator::<f64>::one_minus();
        assert_eq!(g.pseudo_inverse(-0.5), 1.0);
        assert_eq!(g.pseudo_inverse(3.0), 0.0);
        assert!((g.pseudo_inverse(0.25) - 0.75).abs() < 1e-15);
        let h = Generator::<f64>::neg_log();
        assert_eq!(h.pseudo_inverse(f64::INFINITY), 0.0);
    }

    #[test]
    fn one_minus_generator_is_lukasiewicz() {
        let g = TNorm::Archimedean(Generator::<f64>::one_minus());
        for i in 0..=10 {
            for j in 0..=10 {
                let (a, b) = (i as f64 / 10.0, j as f64 / 10.0);
                let d = g.apply(a, b) - TNorm::Lukasiewicz.apply(a, b);
                assert!(d.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn residuum_closed_forms() {
        assert_eq!(TNorm::<f64>::Min.residuum(0.2, 0.8), 1.0);
        assert_eq!(TNorm::<f64>::Min.residuum(0.7, 0.3), 0.3);
        assert!((TNorm::<f64>::Product.residuum(0.8, 0.4) - 0.5).abs() < 1e-15);
        assert!((TNorm::<f64>::Lukasiewicz.residuum(0.9, 0.5) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn hamacher_bisection_residuum_is_tight() {
        let t = TNorm::Archimedean(Generator::<f64>::hamacher());
        let w = t.residuum(0.7, 0.4);
        assert!(t.apply(0.7, w) <= 0.4);
        assert!(t.apply(0.7, w + 1e-9) > 0.4 - 1e-9);
    }

    #[test]
    fn minimum_solution_operators() {
        assert_eq!(TNorm::<f64>::Min.min_so(0.7, 0.4), Some(0.4));
        assert_eq!(TNorm::<f64>::Product.min_so(0.8, 0.4), Some(0.5));
        assert_eq!(TNorm::<f64>::Product.min_so(0.3, 0.4), None);
        assert_eq!(TNorm::<f64>::Min.max_so(0.4, 0.4), Some(1.0));
    }

    #[test]
    fn names_round_trip() {
        for t in TNorm::<f64>::builtins() {
            if let TNorm::Archimedean(g) = t {
                if g.name == "hamacher" {
                    continue;
                }
            }
            assert_eq!(TNorm::<f64>::from_name(&t.name()), Some(t));
        }
        assert_eq!(TNorm::<f64>::from_name("nope"), None);
    }

    #[test]
    fn works_in_single_precision() {
        let t = TNorm::<f32>::Product;
        assert!((t.apply(0.5, 0.5) - 0.25).abs() < 1e-7);
        assert!((t.residuum(0.8, 0.4) - 0.5).abs() < 1e-6);
    }

    fn unit() -> impl Strategy<Value = f64> {
        prop_oneof![
            3 => 0.0..=1.0f64,
            1 => (0u8..=10).prop_map(|k| k as f64 / 10.0),
        ]
    }

    proptest! {
        #[test]
        fn tnorm_axioms(a in unit(), b in unit(), d in unit()) {
            for t in TNorm::<f64>::builtins() {
                let tol = 1e-9;
                prop_assert!((t.apply(a, 1.0) - a).abs() <= tol);
                prop_assert!(t.apply(a, 0.0).abs() <= tol);
                prop_assert!((t.apply(a, b) - t.apply(b, a)).abs() <= tol);
                let l = t.apply(a, t.apply(b, d));
                let r = t.apply(t.apply(a, b), d);
                prop_assert!((l - r).abs() <= 1e-7, "{} assoc {} {}", t, l, r);
                prop_assert!(t.apply(a, b) <= a.min(b) + tol);
                if b <= d {
                    prop_assert!(t.apply(a, b) <= t.apply(a, d) + tol);
                }
            }
        }

        #[test]
        fn conorm_is_dual(a in unit(), b in unit()) {
            for t in TNorm::<f64>::builtins() {
                let s = t.conorm(a, b);
                prop_assert!(s >= a.max(b) - 1e-9);
                prop_assert!((t.conorm(a, 0.0) - a).abs() <= 1e-9);
            }
        }

        #[test]
        fn min_so_solves(a in unit(), b in unit()) {
            for t in TNorm::<f64>::builtins().into_iter().filter(|t| t.is_continuous()) {
                if let Some(x) = t.min_so(a, b) {
                    prop_assert!((t.apply(a, x) - b).abs() <= 1e-9);
                    prop_assert!(x <= t.max_so(a, b).unwrap() + 1e-12);
                }
            }
        }
    }
}
