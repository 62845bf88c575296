//! Numerical tolerances used by the verification suites.

use serde::Serialize;

/// Environment variable selecting the default tolerance profile.
pub const PROFILE_ENV: &str = "AJL_TOLERANCE_PROFILE";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// `‖U U† - I‖` of a single generator unitary.
    pub unitarity: f64,
    /// Unitarity of a global gate (word length ≤ 64).
    pub global_unitarity: f64,
    /// `Φ_i Φ_{i±1} Φ_i = Φ_i` and `Φ_i^2 = d Φ_i`.
    pub tl_relation: f64,
    /// `Φ_i Φ_j = Φ_j Φ_i` for `|i - j| >= 2`.
    pub commutation: f64,
    /// `‖Φ_i - Φ_i†‖`.
    pub hermiticity: f64,
    /// Braid relation `U_i U_{i+1} U_i = U_{i+1} U_i U_{i+1}`.
    pub braid_relation: f64,
    /// Spectrum of `Φ_i` inside `{0, d}`.
    pub spectrum: f64,
    /// Path-model trace against the diagrammatic trace.
    pub trace: f64,
    /// Path-model Jones value against the exact polynomial.
    pub jones: f64,
    /// Hadamard-test statevector check.
    pub circuit: f64,
    /// Slack on Bernoulli probabilities before they count as invalid.
    pub probability_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: 1e-12,
            global_unitarity: 1e-10,
            tl_relation: 1e-10,
            commutation: 1e-12,
            hermiticity: 1e-14,
            braid_relation: 1e-10,
            spectrum: 1e-10,
            trace: 1e-10,
            jones: 1e-9,
            circuit: 1e-12,
            probability_slack: 1e-9,
        }
    }
}

impl Tolerances {
    /// `strict` (the default) or `relaxed` (every bound scaled by 100).
    pub fn profile(name: &str) -> Option<Tolerances> {
        match name {
            "strict" | "default" => Some(Tolerances::default()),
            "relaxed" => Some(Tolerances::default().scaled(100.0)),
            _ => None,
        }
    }

    /// Profile named by `AJL_TOLERANCE_PROFILE`, falling back to `strict`.
    pub fn from_env() -> Tolerances {
        std::env::var(PROFILE_ENV)
            .ok()
            .and_then(|name| Tolerances::profile(&name))
            .unwrap_or_default()
    }

    pub fn scaled(self, factor: f64) -> Tolerances {
        Tolerances {
            unitarity: self.unitarity * factor,
            global_unitarity: self.global_unitarity * factor,
            tl_relation: self.tl_relation * factor,
            commutation: self.commutation * factor,
            hermiticity: self.hermiticity * factor,
            braid_relation: self.braid_relation * factor,
            spectrum: self.spectrum * factor,
            trace: self.trace * factor,
            jones: self.jones * factor,
            circuit: self.circuit * factor,
            probability_slack: self.probability_slack * factor,
        }
    }

    /// Overrides a single field by name, e.g. `jones=1e-8`.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        let slot = match key {
            "unitarity" => &mut self.unitarity,
            "global_unitarity" => &mut self.global_unitarity,
            "tl_relation" => &mut self.tl_relation,
            "commutation" => &mut self.commutation,
            "hermiticity" => &mut self.hermiticity,
            "braid_relation" => &mut self.braid_relation,
            "spectrum" => &mut self.spectrum,
            "trace" => &mut self.trace,
            "jones" => &mut self.jones,
            "circuit" => &mut self.circuit,
            "probability_slack" => &mut self.probability_slack,
            _ => return false,
        };
        *slot = value;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles() {
        assert_eq!(Tolerances::profile("strict"), Some(Tolerances::default()));
        let r = Tolerances::profile("relaxed").unwrap();
        assert!((r.jones - 1e-7).abs() < 1e-20);
        assert!(Tolerances::profile("bogus").is_none());
    }

    #[test]
    fn overrides() {
        let mut t = Tolerances::default();
        assert!(t.set("jones", 1e-6));
        assert_eq!(t.jones, 1e-6);
        assert!(!t.set("nope", 1.0));
    }
}
