use serde::{Deserialize, Serialize};

/// Default value of ε.
pub const DEFAULT_EPS: f64 = 1e-9;

/// The single tolerance knob shared by every degeneracy predicate.
///
/// Comparisons are absolute-plus-relative: two quantities whose natural
/// magnitude is `scale` are treated as equal when they differ by at most
/// `eps * (1 + scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps: DEFAULT_EPS }
    }
}

impl Tolerance {
    pub fn new(eps: f64) -> Self {
        assert!(eps > 0.0 && eps.is_finite(), "tolerance must be positive");
        Self { eps }
    }

    /// Absolute threshold for values of magnitude `scale`.
    pub fn at(self, scale: f64) -> f64 {
        self.eps * (1.0 + scale.abs())
    }

    /// Width of the "near-degenerate" band, 10³ε.
    pub fn band(self) -> Tolerance {
        Tolerance { eps: self.eps * 1e3 }
    }

    pub fn is_zero(self, value: f64, scale: f64) -> bool {
        value.abs() <= self.at(scale)
    }
}
