//! The seven activation families and the rules that place a node on a local hyperplane.
//!
//! | token  | h(z)                         | weights | bias          | value at `x*` |
//! |--------|------------------------------|---------|---------------|---------------|
//! | `sigu` | 1 / (1 + e^-z)               | 4a'     | -aᵀx*         | 0.5           |
//! | `sigb` | 2 / (1 + e^-z) - 1           | 2a'     | -aᵀx*         | 0             |
//! | `sin`  | sin z                        | a'      | -aᵀx*         | 0             |
//! | `satu` | clamp(z, 0, 1)               | a'      | 0.5 - aᵀx*    | 0.5           |
//! | `satb` | clamp(z, -1, 1)              | a'      | -aᵀx*         | 0             |
//! | `relu` | max(z, 0)                    | a'      | b'            | max(0, a'ᵀx* + b') |
//! | `soft` | ln(1 + e^z)                  | 2a'     | -aᵀx*         | ln 2          |
//!
//! Here `z = aᵀx + b` and `a'`, `b'` are the slopes and intercept of the local hyperplane. In every
//! row the gradient of `h` at `x*` equals `a'`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{config, Error};
use crate::local_geometry::Hyperplane;
use crate::math;

/// Activation function of a hidden node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Activation {
    /// Logistic sigmoid, values in (0, 1).
    SigmoidUnipolar,
    /// `2σ(z) - 1`, values in (-1, 1).
    SigmoidBipolar,
    /// `sin z`.
    Sine,
    /// Linear between 0 and 1, saturated outside.
    SatLinUnipolar,
    /// Linear between -1 and 1, saturated outside.
    SatLinBipolar,
    /// Rectified linear unit.
    Relu,
    /// `ln(1 + e^z)`.
    Softplus,
}

impl Activation {
    /// All families, in the column order used by reports.
    pub const ALL: [Activation; 7] = [
        Activation::SigmoidUnipolar,
        Activation::SigmoidBipolar,
        Activation::Sine,
        Activation::SatLinUnipolar,
        Activation::SatLinBipolar,
        Activation::Relu,
        Activation::Softplus,
    ];

    /// Short lowercase token used in files and on the command line.
    pub const fn token(self) -> &'static str {
        match self {
            Activation::SigmoidUnipolar => "sigu",
            Activation::SigmoidBipolar => "sigb",
            Activation::Sine => "sin",
            Activation::SatLinUnipolar => "satu",
            Activation::SatLinBipolar => "satb",
            Activation::Relu => "relu",
            Activation::Softplus => "soft",
        }
    }

    /// Applies the activation to a pre-activation value `z`.
    ///
    /// Softplus uses `max(z, 0) + ln(1 + e^-|z|)`, which never overflows.
    #[inline]
    pub fn apply(self, z: f64) -> f64 {
        match self {
            Activation::SigmoidUnipolar => 1.0 / (1.0 + math::exp(-z)),
            Activation::SigmoidBipolar => 2.0 / (1.0 + math::exp(-z)) - 1.0,
            Activation::Sine => math::sin(z),
            Activation::SatLinUnipolar => z.clamp(0.0, 1.0),
            Activation::SatLinBipolar => z.clamp(-1.0, 1.0),
            Activation::Relu => z.max(0.0),
            Activation::Softplus => z.max(0.0) + math::ln_1p(math::exp(-z.abs())),
        }
    }

    /// Like [`apply`](Self::apply), but softplus is evaluated literally as `ln(1 + e^z)`.
    ///
    /// This overflows to infinity once `z` exceeds about 709.78. It exists to reproduce that
    /// failure; the other families are unaffected.
    #[inline]
    pub fn apply_naive(self, z: f64) -> f64 {
        match self {
            Activation::Softplus => math::ln(1.0 + math::exp(z)),
            other => other.apply(z),
        }
    }

    /// Factor between hyperplane slopes and node weights (`a = scale · a'`).
    pub const fn weight_scale(self) -> f64 {
        match self {
            Activation::SigmoidUnipolar => 4.0,
            Activation::SigmoidBipolar | Activation::Softplus => 2.0,
            Activation::Sine
            | Activation::SatLinUnipolar
            | Activation::SatLinBipolar
            | Activation::Relu => 1.0,
        }
    }

    /// Pre-activation value the node takes at its anchor, or `None` for ReLU, which copies the
    /// hyperplane intercept instead of being anchored.
    pub const fn anchor_preactivation(self) -> Option<f64> {
        match self {
            Activation::SatLinUnipolar => Some(0.5),
            Activation::Relu => None,
            _ => Some(0.0),
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Activation::ALL
            .into_iter()
            .find(|a| a.token() == s)
            .ok_or_else(|| {
                config(alloc::format!(
                    "unknown activation `{s}` (expected one of sigu, sigb, sin, satu, satb, relu, soft)"
                ))
            })
    }
}

/// One hidden node: `h(aᵀx + b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenNode {
    /// Activation family.
    pub kind: Activation,
    /// Input weights `a`, one per input dimension.
    pub weights: Vec<f64>,
    /// Bias `b`.
    pub bias: f64,
}

impl HiddenNode {
    /// Input dimension.
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `aᵀx + b`.
    ///
    /// Panics if `x` has the wrong length or contains a non-finite value.
    #[inline]
    pub fn preactivation(&self, x: &[f64]) -> f64 {
        assert_eq!(
            x.len(),
            self.weights.len(),
            "input has {} components, node expects {}",
            x.len(),
            self.weights.len()
        );
        assert!(x.iter().all(|v| v.is_finite()), "non-finite input");
        math::dot(&self.weights, x) + self.bias
    }

    /// Node output at `x`.
    #[inline]
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.kind.apply(self.preactivation(x))
    }

    /// Node output at `x` with softplus evaluated literally (see [`Activation::apply_naive`]).
    #[inline]
    pub fn evaluate_naive(&self, x: &[f64]) -> f64 {
        self.kind.apply_naive(self.preactivation(x))
    }
}

/// Builds the node of family `kind` that touches `plane` at `x_star`.
///
/// Panics if the plane and `x_star` differ in dimension or contain non-finite values.
pub fn parameterize(kind: Activation, plane: &Hyperplane, x_star: &[f64]) -> HiddenNode {
    assert_eq!(
        plane.slopes.len(),
        x_star.len(),
        "hyperplane has {} slopes, anchor has {} components",
        plane.slopes.len(),
        x_star.len()
    );
    assert!(
        plane.slopes.iter().all(|v| v.is_finite()) && plane.intercept.is_finite(),
        "non-finite hyperplane coefficient"
    );
    assert!(x_star.iter().all(|v| v.is_finite()), "non-finite anchor");

    let scale = kind.weight_scale();
    let weights: Vec<f64> = plane.slopes.iter().map(|s| scale * s).collect();
    // The bias uses the scaled weights so that z(x*) hits the anchor value.
    let bias = match kind.anchor_preactivation() {
        Some(at_anchor) => at_anchor - math::dot(&weights, x_star),
        None => plane.intercept,
    };
    HiddenNode {
        kind,
        weights,
        bias,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::LN_2;

    fn node(kind: Activation, weights: Vec<f64>, bias: f64) -> HiddenNode {
        HiddenNode {
            kind,
            weights,
            bias,
        }
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(Activation::SigmoidUnipolar.apply(0.0), 0.5);
        assert_eq!(Activation::SigmoidBipolar.apply(0.0), 0.0);
        assert_eq!(Activation::Softplus.apply(0.0), LN_2);
        assert_eq!(Activation::Relu.apply(-1.0), 0.0);
    }

    #[test]
    fn satlin_unipolar_branches() {
        let a = Activation::SatLinUnipolar;
        assert_eq!(a.apply(2.0), 1.0);
        assert_eq!(a.apply(-1.0), 0.0);
        assert_eq!(a.apply(0.3), 0.3);
    }

    #[test]
    fn ranges() {
        for z in [-800.0, -30.0, -1.0, -0.2, 0.0, 0.7, 1.0, 5.0, 800.0] {
            let u = Activation::SigmoidUnipolar.apply(z);
            assert!((0.0..=1.0).contains(&u));
            assert!((-1.0..=1.0).contains(&Activation::SigmoidBipolar.apply(z)));
            assert!((-1.0..=1.0).contains(&Activation::Sine.apply(z)));
            assert!((0.0..=1.0).contains(&Activation::SatLinUnipolar.apply(z)));
            assert!((-1.0..=1.0).contains(&Activation::SatLinBipolar.apply(z)));
            assert!(Activation::Relu.apply(z) >= 0.0);
            let s = Activation::Softplus.apply(z);
            assert!(s >= 0.0 && s.is_finite());
        }
        // Open ranges where the values are representable.
        assert!(Activation::SigmoidUnipolar.apply(-30.0) > 0.0);
        assert!(Activation::Softplus.apply(-30.0) > 0.0);
    }

    #[test]
    fn softplus_stable_and_naive() {
        for z in [41.0, 100.0, 709.0, 710.0, 1e6, 1e300] {
            let s = Activation::Softplus.apply(z);
            assert!(s.is_finite());
            assert!((s - z).abs() < 1e-12, "z={z}");
        }
        assert!(Activation::Softplus.apply_naive(710.0).is_infinite());
        assert!((Activation::Softplus.apply_naive(3.0) - Activation::Softplus.apply(3.0)).abs() < 1e-15);
        // Naive mode only changes softplus.
        assert_eq!(Activation::Relu.apply_naive(1e6), 1e6);
    }

    #[test]
    fn tokens_round_trip() {
        for a in Activation::ALL {
            assert_eq!(a.token().parse::<Activation>().unwrap(), a);
        }
        assert!("tanh".parse::<Activation>().is_err());
    }

    #[test]
    fn sigmoid_unipolar_parameters() {
        let plane = Hyperplane::new(vec![1.0], 0.0);
        let n = parameterize(Activation::SigmoidUnipolar, &plane, &[0.5]);
        assert_eq!(n.weights, vec![4.0]);
        assert_eq!(n.bias, -2.0);
    }

    #[test]
    fn relu_copies_intercept() {
        let plane = Hyperplane::new(vec![2.0], 3.0);
        let n = parameterize(Activation::Relu, &plane, &[0.9]);
        assert_eq!(n.weights, vec![2.0]);
        assert_eq!(n.bias, 3.0);
    }

    #[test]
    fn flat_plane_gives_zero_sine_node() {
        let plane = Hyperplane::new(vec![0.0, 0.0], 7.0);
        let n = parameterize(Activation::Sine, &plane, &[0.2, 0.8]);
        assert_eq!(n.weights, vec![0.0, 0.0]);
        assert_eq!(n.bias, 0.0);
    }

    #[test]
    fn remaining_table_rows() {
        let plane = Hyperplane::new(vec![1.5, -0.5], 0.25);
        let x = [0.2, 0.6];
        let d = |w: &[f64]| w[0] * x[0] + w[1] * x[1];
        let cases = [
            (Activation::SigmoidBipolar, 2.0, 0.0),
            (Activation::SatLinUnipolar, 1.0, 0.5),
            (Activation::SatLinBipolar, 1.0, 0.0),
            (Activation::Softplus, 2.0, 0.0),
        ];
        for (kind, scale, offset) in cases {
            let n = parameterize(kind, &plane, &x);
            assert_eq!(n.weights, vec![1.5 * scale, -0.5 * scale]);
            assert!((n.bias - (offset - d(&n.weights))).abs() < 1e-15);
        }
    }

    #[test]
    fn evaluate_uses_all_inputs() {
        let n = node(Activation::Relu, vec![1.0, -2.0], 0.5);
        assert_eq!(n.evaluate(&[3.0, 1.0]), 1.5);
        assert_eq!(n.evaluate(&[0.0, 1.0]), 0.0);
    }

    #[test]
    #[should_panic(expected = "node expects 2")]
    fn evaluate_rejects_wrong_dimension() {
        node(Activation::Sine, vec![1.0, 1.0], 0.0).evaluate(&[1.0]);
    }

    #[test]
    #[should_panic(expected = "non-finite input")]
    fn evaluate_rejects_nan() {
        node(Activation::Sine, vec![1.0], 0.0).evaluate(&[f64::NAN]);
    }

    #[test]
    #[should_panic(expected = "non-finite hyperplane")]
    fn parameterize_rejects_infinite_plane() {
        parameterize(
            Activation::Sine,
            &Hyperplane::new(vec![f64::INFINITY], 0.0),
            &[0.0],
        );
    }
}
