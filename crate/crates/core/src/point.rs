use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{self, pow};

/// `Σ aᵢ^p` with compensated summation.
pub fn power_sum(a: &[f64], p: f64) -> f64 {
    num::sum(a.iter().map(|&x| pow(x, p)))
}

/// A positive point `a₁..a_n` together with its powers `aᵢ^p` and power sum
/// `s = Σ aᵢ^p` for one exponent `p`.
///
/// Immutable: changing the exponent builds a new value, so `s` cannot go
/// stale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct PointVec {
    a: Vec<f64>,
    p: f64,
    #[serde(skip)]
    powers: Vec<f64>,
    s: f64,
}

#[derive(Deserialize)]
struct RawPoint {
    a: Vec<f64>,
    p: f64,
}

impl TryFrom<RawPoint> for PointVec {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        PointVec::new(raw.a, raw.p)
    }
}

impl PointVec {
    pub fn new(a: Vec<f64>, p: f64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::invalid("point must have at least one coordinate"));
        }
        if let Some((i, &x)) = a.iter().enumerate().find(|(_, &x)| !(x > 0.0 && x.is_finite())) {
            return Err(Error::invalid(format!("coordinate a[{i}] = {x} is not a positive finite number")));
        }
        if !p.is_finite() {
            return Err(Error::invalid("exponent p must be finite"));
        }
        let powers: Vec<f64> = a.iter().map(|&x| pow(x, p)).collect();
        let s = num::sum(powers.iter().copied());
        Ok(PointVec { a, p, powers, s })
    }

    /// Same coordinates, different exponent.
    pub fn with_exponent(&self, p: f64) -> Result<Self> {
        PointVec::new(self.a.clone(), p)
    }

    pub fn uniform(n: usize, c: f64, p: f64) -> Result<Self> {
        PointVec::new(vec![c; n], p)
    }

    pub fn coords(&self) -> &[f64] {
        &self.a
    }

    pub fn exponent(&self) -> f64 {
        self.p
    }

    /// `aᵢ^p`.
    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// For each `i`, `Σ_{j≠i} a_j^p` computed from prefix/suffix sums (no
    /// subtraction).
    pub fn leave_one_out(&self) -> Vec<f64> {
        let n = self.powers.len();
        let mut suffix = vec![0.0; n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1] + self.powers[i];
        }
        let mut prefix = 0.0;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(prefix + suffix[i + 1]);
            prefix += self.powers[i];
        }
        out
    }
}

/// Parse a point from a JSON array (`[1, 2.5, 3]`) or one line of CSV
/// (`1,2.5,3`).
pub fn parse_coords(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str::<Vec<f64>>(text)
            .map_err(|e| Error::invalid(format!("bad JSON point: {e}")));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let record = records
        .next()
        .ok_or_else(|| Error::invalid("empty point"))?
        .map_err(|e| Error::invalid(format!("bad CSV point: {e}")))?;
    if records.next().is_some() {
        return Err(Error::invalid("CSV point must be a single line"));
    }
    record
        .iter()
        .map(|f| f.parse::<f64>().map_err(|e| Error::invalid(format!("bad coordinate {f:?}: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(&[1.0, 1.0, 1.0], 1.0), 3.0);
        assert_eq!(power_sum(&[3.0, 4.0, 5.0], 1.0), 12.0);
        assert_eq!(power_sum(&[2.0, 2.0], -1.0), 1.0);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(PointVec::new(vec![1.0, 0.0], 1.0).is_err());
        assert!(PointVec::new(vec![1.0, -2.0], 1.0).is_err());
        assert!(PointVec::new(vec![1.0, f64::INFINITY], 1.0).is_err());
    }

    #[test]
    fn leave_one_out_matches_direct() {
        let pt = PointVec::new(vec![1.0, 2.0, 3.0, 4.0], 2.0).unwrap();
        assert_eq!(pt.s(), 30.0);
        assert_eq!(pt.leave_one_out(), vec![29.0, 26.0, 21.0, 14.0]);
    }

    #[test]
    fn with_exponent_recomputes_s() {
        let pt = PointVec::new(vec![1.0, 2.0], 1.0).unwrap();
        assert_eq!(pt.s(), 3.0);
        assert_eq!(pt.with_exponent(2.0).unwrap().s(), 5.0);
    }

    #[test]
    fn parses_csv_and_json() {
        assert_eq!(parse_coords("1, 2.5,3").unwrap(), vec![1.0, 2.5, 3.0]);
        assert_eq!(parse_coords(" [1,2,3]\n").unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_coords("1,x").is_err());
        assert!(parse_coords("1,2\n3,4").is_err());
    }

    #[test]
    fn json_round_trip_recomputes_powers() {
        let a = PointVec::new(vec![1.0, 4.0], 0.5).unwrap();
        let back: PointVec = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PointVec>(r#"{"a":[1,-2],"p":1}"#).is_err());
    }
}
