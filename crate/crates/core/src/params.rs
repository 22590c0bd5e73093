use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The six parameters `(n, m, p, β, t, r)` of
/// `Σ aᵢ^m / (t·s − r·aᵢ^p)^β` with `s = Σ aᵢ^p`.
///
/// JSON form: `{"n": 3, "m": 1, "p": 1, "beta": 1, "t": 1, "r": 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamTuple {
    pub n: usize,
    pub m: f64,
    pub p: f64,
    pub beta: f64,
    pub t: f64,
    pub r: f64,
}

impl ParamTuple {
    /// Build and validate.
    pub fn new(n: usize, m: f64, p: f64, beta: f64, t: f64, r: f64) -> Result<Self> {
        let params = ParamTuple { n, m, p, beta, t, r };
        params.validate()?;
        Ok(params)
    }

    /// The classical Nesbitt case `n = 3, m = p = β = t = r = 1`.
    pub fn nesbitt() -> Self {
        ParamTuple { n: 3, m: 1.0, p: 1.0, beta: 1.0, t: 1.0, r: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid(format!("n must be at least 2, got {}", self.n)));
        }
        for (name, v) in [("m", self.m), ("p", self.p), ("beta", self.beta), ("t", self.t), ("r", self.r)] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite, got {v}")));
            }
        }
        if self.t < 0.0 {
            return Err(Error::invalid(format!("t must be non-negative, got {}", self.t)));
        }
        // t = 0 with r ≥ 0 makes t·s > r·aᵢ^p unsatisfiable.
        if self.t == 0.0 && self.r >= 0.0 {
            return Err(Error::invalid("t = 0 requires r < 0 (otherwise the domain is empty)"));
        }
        Ok(())
    }

    pub fn with_n(self, n: usize) -> Self {
        ParamTuple { n, ..self }
    }

    /// `n·t − r`, positive whenever some point is feasible.
    pub fn nt_minus_r(&self) -> f64 {
        self.n as f64 * self.t - self.r
    }

    /// True iff `β = 0`, `p = 0` or `t = 0`: the sum form is then an identity.
    pub fn is_degenerate(&self) -> bool {
        self.beta == 0.0 || self.p == 0.0 || self.t == 0.0
    }

    /// Upper end `T` of the kernel interval for power sum `s`:
    /// `s` when `r ≤ t`, else `t·s/r`.
    pub fn kernel_upper(&self, s: f64) -> f64 {
        if self.r <= self.t {
            s
        } else {
            self.t * s / self.r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tuples() {
        assert!(ParamTuple::new(1, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ParamTuple::new(3, 1.0, 1.0, 1.0, -1.0, 1.0).is_err());
        assert!(ParamTuple::new(3, 1.0, 1.0, 1.0, 0.0, 0.5).is_err());
        assert!(ParamTuple::new(3, f64::NAN, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ParamTuple::new(3, 1.0, 1.0, 1.0, 0.0, -1.0).is_ok());
    }

    #[test]
    fn json_shape() {
        let p: ParamTuple =
            serde_json::from_str(r#"{"n":3,"m":2,"p":1,"beta":1,"t":1,"r":2}"#).unwrap();
        assert_eq!(p.m, 2.0);
        assert_eq!(p.r, 2.0);
        let back: ParamTuple = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn degenerate_flags() {
        let mut p = ParamTuple::nesbitt();
        assert!(!p.is_degenerate());
        p.beta = 0.0;
        assert!(p.is_degenerate());
    }
}
