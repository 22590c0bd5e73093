//! Parameter-only case analysis.
//!
//! Three families of sufficient conditions are encoded:
//!
//! * `T31`: LHS versus the power form; cases `i`–`iv` give `≥`, `v`–`viii`
//!   give `≤`. Decided by the sign of the kernel's second derivative on
//!   `(0, T)` (Jensen) or by the generalized Radon inequality (`iii.1`).
//! * `T32`: LHS `≥` the sum form.
//! * `T33`: LHS `≤` the sum form.
//!
//! Every predicate compares computed reals exactly, strict or non-strict as
//! the case requires. `T31/vii.2` requires `m(m−p) ≤ 0`, which is what
//! concavity of the kernel needs. `T33/ii.3` is never matched: it would
//! assert the opposite of `T32/ii.2` on the same parameters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ParamTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    T31,
    T32,
    T33,
}

pub const T31_TAGS: &[&str] = &[
    "i", "ii.1", "ii.2", "iii.1", "iii.2", "iii.3", "iii.4", "iv", "v", "vi.1", "vi.2", "vii.1",
    "vii.2", "vii.3", "viii",
];
pub const T32_TAGS: &[&str] = &[
    "i.1", "i.2", "i.3", "i.4", "ii.1", "ii.2", "ii.3", "iii.1", "iii.2", "iii.3", "iv.1", "iv.2",
    "iv.3",
];
pub const T33_TAGS: &[&str] =
    &["i.1", "i.2", "ii.1", "ii.2", "ii.3", "ii.4", "iii.1", "iii.2", "iii.3", "iii.4"];

impl Theorem {
    pub fn tags(self) -> &'static [&'static str] {
        match self {
            Theorem::T31 => T31_TAGS,
            Theorem::T32 => T32_TAGS,
            Theorem::T33 => T33_TAGS,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::T31 => "T31",
            Theorem::T32 => "T32",
            Theorem::T33 => "T33",
        };
        f.write_str(s)
    }
}

/// A theorem case such as `T31/iii.3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCaseLabel")]
pub struct CaseLabel {
    pub theorem: Theorem,
    pub tag: String,
}

#[derive(Deserialize)]
struct RawCaseLabel {
    theorem: Theorem,
    tag: String,
}

impl TryFrom<RawCaseLabel> for CaseLabel {
    type Error = Error;

    fn try_from(raw: RawCaseLabel) -> Result<Self> {
        CaseLabel::new(raw.theorem, &raw.tag)
    }
}

impl CaseLabel {
    pub fn new(theorem: Theorem, tag: &str) -> Result<Self> {
        if theorem.tags().contains(&tag) {
            Ok(CaseLabel { theorem, tag: tag.to_owned() })
        } else {
            Err(Error::invalid(format!("{tag:?} is not a case of {theorem}")))
        }
    }

    fn known(theorem: Theorem, tag: &'static str) -> Self {
        debug_assert!(theorem.tags().contains(&tag));
        CaseLabel { theorem, tag: tag.to_owned() }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.theorem, self.tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    Geq,
    Leq,
    Equal,
    Unknown,
}

impl Direction {
    /// `+1` for `≥`, `−1` for `≤`, `0` otherwise.
    pub fn sign(self) -> f64 {
        match self {
            Direction::Geq => 1.0,
            Direction::Leq => -1.0,
            _ => 0.0,
        }
    }

    pub fn is_certified(self) -> bool {
        !matches!(self, Direction::Unknown)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::Geq => "GEQ",
            Direction::Leq => "LEQ",
            Direction::Equal => "EQUAL",
            Direction::Unknown => "UNKNOWN",
        };
        f.write_str(s)
    }
}

/// Which theorem(s) a certificate speaks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertSource {
    T31,
    T32,
    T33,
    /// Merged sum-form certificate.
    #[serde(rename = "T32+T33")]
    SumForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Roots {
    pub x1: f64,
    pub x2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: CertSource,
    pub cases: Vec<CaseLabel>,
    pub direction: Direction,
    pub roots: Option<Roots>,
    /// Scale-free quantities the predicates compared, keyed by formula.
    pub ratios: BTreeMap<String, f64>,
}

impl Certificate {
    pub fn tags(&self) -> Vec<String> {
        self.cases.iter().map(|c| c.to_string()).collect()
    }

    pub fn has_case(&self, theorem: Theorem, tag: &str) -> bool {
        self.cases.iter().any(|c| c.theorem == theorem && c.tag == tag)
    }
}

/// `f(y) = y² + 2m/((β+1)rp)·y + m(m−p)/(β(β+1)r²p²)`, whose sign on
/// `y = x/(ts − rx)` fixes the sign of the kernel's second derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaKernel {
    pub linear: f64,
    pub constant: f64,
    /// `m(βp+p−m)/(β(β+1)²r²p²)`: the squared half-distance between roots.
    pub radicand: f64,
}

impl ParabolaKernel {
    pub fn new(params: &ParamTuple) -> Result<Self> {
        let ParamTuple { m, p, beta: b, r, .. } = *params;
        if b * (b + 1.0) * r * p == 0.0 {
            return Err(Error::precondition("the parabola needs β(β+1)·r·p ≠ 0"));
        }
        Ok(ParabolaKernel {
            linear: 2.0 * m / ((b + 1.0) * r * p),
            constant: m * (m - p) / (b * (b + 1.0) * r * r * p * p),
            radicand: m * (b * p + p - m) / (b * (b + 1.0) * (b + 1.0) * r * r * p * p),
        })
    }

    pub fn eval(&self, y: f64) -> f64 {
        (y + self.linear) * y + self.constant
    }

    /// The two real roots `X₁ < X₂`, if the radicand is positive.
    pub fn roots(&self) -> Option<Roots> {
        if !(self.radicand > 0.0) {
            return None;
        }
        let centre = -0.5 * self.linear;
        let half = self.radicand.sqrt();
        // larger-magnitude root first, the other from the product of roots
        let (x1, x2) = if centre >= 0.0 {
            let x2 = centre + half;
            (self.constant / x2, x2)
        } else {
            let x1 = centre - half;
            (x1, self.constant / x1)
        };
        Some(Roots { x1: x1.min(x2), x2: x1.max(x2) })
    }
}

/// `X₁ < X₂`, or `None` when the parabola has no two distinct real roots.
pub fn critical_roots(params: &ParamTuple) -> Result<Option<Roots>> {
    Ok(ParabolaKernel::new(params)?.roots())
}

/// True iff `β = 0`, `p = 0` or `t = 0`, where LHS equals the sum form.
pub fn degenerate_equality(params: &ParamTuple) -> bool {
    params.is_degenerate()
}

/// `(t − r)·X_i ≥ 1` for the root `which` (0 → X₁, 1 → X₂); false when the
/// roots do not exist.
fn scaled_root_at_least_one(params: &ParamTuple, which: usize) -> bool {
    let roots = ParabolaKernel::new(params).ok().and_then(|k| k.roots());
    match roots {
        Some(Roots { x1, x2 }) => (params.t - params.r) * if which == 0 { x1 } else { x2 } >= 1.0,
        None => false,
    }
}

/// Point-independent form of `(m−p)·t·s / ((m+p)·r) ≥ T`.
fn t_condition(params: &ParamTuple) -> bool {
    let ParamTuple { m, p, t, r, .. } = *params;
    if r <= t {
        (m - p) * t / ((m + p) * r) >= 1.0
    } else {
        t == 0.0 || (m - p) / (m + p) >= 1.0
    }
}

fn t31_cases(q: &ParamTuple) -> Vec<(Direction, &'static str)> {
    use Direction::{Geq, Leq};
    let ParamTuple { m, p, beta: b, t, r, .. } = *q;
    let outer = b < -1.0 || b > 0.0;
    let inner = b > -1.0 && b < 0.0;
    let mm = m * (m - p);
    let shifted = m - (b + 1.0) * p;
    let (pm, pp) = (p * m, p * p);
    let x1_ok = || scaled_root_at_least_one(q, 0);
    let x2_ok = || scaled_root_at_least_one(q, 1);
    let mut out = Vec::new();
    let mut push = |ok: bool, d: Direction, tag: &'static str| {
        if ok {
            out.push((d, tag));
        }
    };

    push(b * r == 0.0 && mm >= 0.0, Geq, "i");
    if b == -1.0 && r != 0.0 {
        push(mm * t >= 0.0 && m * (m + p) * r <= 0.0, Geq, "ii.1");
        push(mm * t > 0.0 && m * (m + p) * r > 0.0 && t_condition(q), Geq, "ii.2");
    }
    if outer && r != 0.0 {
        push(b * p * m > 0.0 && p * shifted >= 0.0, Geq, "iii.1");
        push(b * m * shifted >= 0.0, Geq, "iii.2");
        push(m * r * p * b >= 0.0 && mm >= 0.0, Geq, "iii.3");
        push(
            t > r && m * r * p * b < 0.0 && mm > 0.0 && b * m * shifted < 0.0 && x1_ok(),
            Geq,
            "iii.4",
        );
    }
    push(inner && t > r && r != 0.0 && mm >= 0.0 && m * shifted > 0.0 && x2_ok(), Geq, "iv");

    push(b * r == 0.0 && mm <= 0.0, Leq, "v");
    if b == -1.0 && r != 0.0 {
        push(mm * t <= 0.0 && m * (m + p) * r >= 0.0, Leq, "vi.1");
        push(mm * t < 0.0 && m * (m + p) * r < 0.0 && t_condition(q), Leq, "vi.2");
    }
    if inner {
        push(0.0 <= pm && pm <= (b + 1.0) * pp, Leq, "vii.1");
        push(m * r * p >= 0.0 && mm <= 0.0, Leq, "vii.2");
        push(r < 0.0 && (b + 1.0) * pp < pm && pm <= pp && x1_ok(), Leq, "vii.3");
    }
    push(
        outer && t > r && r != 0.0 && mm <= 0.0 && b * m * shifted < 0.0 && x2_ok(),
        Leq,
        "viii",
    );
    out
}

fn t32_cases(q: &ParamTuple) -> Vec<&'static str> {
    let ParamTuple { m, p, beta: b, t, r, .. } = *q;
    let (pm, pp) = (p * m, p * p);
    let x1_ok = || scaled_root_at_least_one(q, 0);
    let x2_ok = || scaled_root_at_least_one(q, 1);
    let mut out = Vec::new();
    let mut push = |ok: bool, tag: &'static str| {
        if ok {
            out.push(tag);
        }
    };
    if b > 0.0 {
        push(b >= 1.0 && r >= 0.0 && (b * pp <= pm || m == (b + 1.0) * p), "i.1");
        push(b >= 1.0 && r < 0.0 && (b + 1.0) * pp <= pm, "i.2");
        push(b < 1.0 && r >= 0.0 && pp <= pm && pm <= (b + 1.0) * pp, "i.3");
        push(r < 0.0 && b.max(1.0) * pp <= pm && pm < (b + 1.0) * pp && x1_ok(), "i.4");
    }
    if b > -1.0 && b < 0.0 {
        push(r == 0.0 && b * pp < pm && pm <= 0.0, "ii.1");
        push(t >= r && pm <= b * pp, "ii.2");
        push(t > r && r != 0.0 && b * pp < pm && pm <= 0.0 && x2_ok(), "ii.3");
    }
    if b == -1.0 {
        push(pm <= -pp || m == 0.0, "iii.1");
        push(r >= 0.0 && -pp < pm && pm < 0.0, "iii.2");
        push(r < 0.0 && -pp < pm && pm < 0.0 && (m - p) * t / ((m + p) * r) >= 1.0, "iii.3");
    }
    if b < -1.0 {
        push(pm <= b * pp || m == (b + 1.0) * p, "iv.1");
        push(r >= 0.0 && b * pp < pm && pm < (b + 1.0) * pp, "iv.2");
        push(r < 0.0 && b * pp < pm && pm < (b + 1.0) * pp && x1_ok(), "iv.3");
    }
    out
}

fn t33_cases(q: &ParamTuple) -> Vec<&'static str> {
    let ParamTuple { m, p, beta: b, t, r, .. } = *q;
    let (pm, pp) = (p * m, p * p);
    let x1_ok = || scaled_root_at_least_one(q, 0);
    let x2_ok = || scaled_root_at_least_one(q, 1);
    let mut out = Vec::new();
    let mut push = |ok: bool, tag: &'static str| {
        if ok {
            out.push(tag);
        }
    };
    if b > 0.0 {
        push(r <= 0.0 && pm <= b.min(1.0) * pp, "i.1");
        push(t > r && r > 0.0 && 0.0 <= pm && pm <= b.min(1.0) * pp && x2_ok(), "i.2");
    }
    if b > -1.0 && b < 0.0 {
        push(m == (b + 1.0) * p, "ii.1");
        push(r > 0.0 && pm >= pp, "ii.2");
        // ii.3 (r < 0, pm ≤ βp²) is deliberately absent: T32/ii.2 proves
        // the reverse inequality on exactly those parameters.
        push(r < 0.0 && (b + 1.0) * pp < pm && pm <= pp && x1_ok(), "ii.4");
    }
    if b <= -1.0 {
        push(b == -1.0 && r > 0.0 && 0.0 <= pm && pm <= pp, "iii.1");
        push(r == 0.0 && 0.0 <= pm && pm <= pp, "iii.2");
        push(b.fract() == 0.0 && r < 0.0 && pm >= 0.0, "iii.3");
        push(b < -1.0 && t > r && r > 0.0 && 0.0 <= pm && pm <= pp && x2_ok(), "iii.4");
    }
    out
}

/// The kernel `x^(m/p)/(ts−rx)^β` is affine (`g'' ≡ 0`), so the power form
/// holds with equality.
fn power_identity(q: &ParamTuple) -> bool {
    let ParamTuple { m, p, beta: b, r, .. } = *q;
    m * (m - p) == 0.0 && m * b * r == 0.0 && b * (b + 1.0) * r * r == 0.0
}

/// Power identity plus equality in the power-mean step between the two
/// right-hand forms.
fn sum_identity(q: &ParamTuple) -> bool {
    let gap = q.m / q.p - q.beta;
    power_identity(q) && (gap == 0.0 || gap == 1.0)
}

fn ratios(q: &ParamTuple, roots: Option<Roots>) -> BTreeMap<String, f64> {
    let ParamTuple { m, p, beta: b, t, r, .. } = *q;
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: f64| {
        if v.is_finite() {
            out.insert(k.to_owned(), v);
        }
    };
    if p != 0.0 {
        put("m/p", m / p);
    }
    if let Some(Roots { x1, x2 }) = roots {
        put("(t-r)X1", (t - r) * x1);
        put("(t-r)X2", (t - r) * x2);
    }
    if b == -1.0 && (m + p) * r != 0.0 {
        put("(m-p)t/((m+p)r)", (m - p) * t / ((m + p) * r));
        put("(m-p)/(m+p)", (m - p) / (m + p));
    }
    out
}

fn roots_of(q: &ParamTuple) -> Option<Roots> {
    ParabolaKernel::new(q).ok().and_then(|k| k.roots())
}

fn resolve(
    geq: &[CaseLabel],
    leq: &[CaseLabel],
    identity: impl FnOnce() -> bool,
) -> Result<Direction> {
    Ok(match (geq.is_empty(), leq.is_empty()) {
        (true, true) => Direction::Unknown,
        (false, true) => Direction::Geq,
        (true, false) => Direction::Leq,
        (false, false) => {
            if identity() {
                Direction::Equal
            } else {
                return Err(Error::Contradiction {
                    geq: geq.iter().map(|c| c.to_string()).collect(),
                    leq: leq.iter().map(|c| c.to_string()).collect(),
                });
            }
        }
    })
}

/// Cases of the power-form comparison.
pub fn classify_power_form(params: &ParamTuple) -> Result<Certificate> {
    params.validate()?;
    if params.p == 0.0 {
        return Err(Error::precondition("the power form needs p ≠ 0"));
    }
    let (mut geq, mut leq) = (Vec::new(), Vec::new());
    for (d, tag) in t31_cases(params) {
        let label = CaseLabel::known(Theorem::T31, tag);
        match d {
            Direction::Geq => geq.push(label),
            _ => leq.push(label),
        }
    }
    let direction = resolve(&geq, &leq, || power_identity(params))?;
    let roots = roots_of(params);
    geq.extend(leq);
    Ok(Certificate { theorem: CertSource::T31, cases: geq, direction, roots, ratios: ratios(params, roots) })
}

fn sum_certificate(params: &ParamTuple, source: CertSource, cases: Vec<CaseLabel>, dir: Direction) -> Certificate {
    let roots = roots_of(params);
    Certificate { theorem: source, cases, direction: dir, roots, ratios: ratios(params, roots) }
}

/// Cases where LHS `≥` the sum form.
pub fn classify_sum_form_lower(params: &ParamTuple) -> Result<Certificate> {
    params.validate()?;
    if params.is_degenerate() {
        return Ok(sum_certificate(params, CertSource::T32, Vec::new(), Direction::Equal));
    }
    let cases: Vec<_> = t32_cases(params).into_iter().map(|t| CaseLabel::known(Theorem::T32, t)).collect();
    let dir = if cases.is_empty() { Direction::Unknown } else { Direction::Geq };
    Ok(sum_certificate(params, CertSource::T32, cases, dir))
}

/// Cases where LHS `≤` the sum form.
pub fn classify_sum_form_upper(params: &ParamTuple) -> Result<Certificate> {
    params.validate()?;
    if params.is_degenerate() {
        return Ok(sum_certificate(params, CertSource::T33, Vec::new(), Direction::Equal));
    }
    let cases: Vec<_> = t33_cases(params).into_iter().map(|t| CaseLabel::known(Theorem::T33, t)).collect();
    let dir = if cases.is_empty() { Direction::Unknown } else { Direction::Leq };
    Ok(sum_certificate(params, CertSource::T33, cases, dir))
}

/// Lower and upper sum-form cases merged into one certificate.
pub fn classify_sum_form(params: &ParamTuple) -> Result<Certificate> {
    let lower = classify_sum_form_lower(params)?;
    let upper = classify_sum_form_upper(params)?;
    if params.is_degenerate() {
        return Ok(sum_certificate(params, CertSource::SumForm, Vec::new(), Direction::Equal));
    }
    let direction = resolve(&lower.cases, &upper.cases, || sum_identity(params))?;
    let mut cases = lower.cases;
    cases.extend(upper.cases);
    Ok(sum_certificate(params, CertSource::SumForm, cases, direction))
}

/// Both comparisons for one parameter tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    /// Absent when `p = 0` (the power form is undefined).
    pub power: Option<Certificate>,
    pub sum: Certificate,
}

impl Classification {
    /// No comparison is certified.
    pub fn is_unknown(&self) -> bool {
        self.power.as_ref().map_or(true, |c| c.direction == Direction::Unknown)
            && self.sum.direction == Direction::Unknown
    }
}

pub fn classify_all(params: &ParamTuple) -> Result<Classification> {
    params.validate()?;
    let power = if params.p == 0.0 { None } else { Some(classify_power_form(params)?) };
    Ok(Classification { power, sum: classify_sum_form(params)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn q(n: usize, m: f64, p: f64, beta: f64, t: f64, r: f64) -> ParamTuple {
        ParamTuple::new(n, m, p, beta, t, r).unwrap()
    }

    fn tags(c: &Certificate) -> Vec<String> {
        c.tags()
    }

    #[test]
    fn roots_of_worked_examples() {
        let r = critical_roots(&q(4, -0.5, 2.0, -0.5, 1.0, -3.0)).unwrap().unwrap();
        assert_relative_eq!(4.0 * r.x2, 2.0 * (6f64.sqrt() - 1.0) / 3.0, max_relative = 1e-14);

        let r = critical_roots(&q(4, 2.0 / 3.0, 1.0, -2.0 / 3.0, 1.0, -1.0)).unwrap().unwrap();
        assert_relative_eq!(2.0 * r.x1, 2.0 * (2.0 - 3f64.sqrt()), max_relative = 1e-13);

        for beta in [0.1, 0.5, 0.9] {
            let r = critical_roots(&q(3, beta, 1.0, beta, 2.0, 1.0)).unwrap().unwrap();
            assert_relative_eq!(r.x2, (1.0 - beta) / (1.0 + beta), max_relative = 1e-14);
            assert_relative_eq!(r.x1, -1.0, max_relative = 1e-14);
        }

        let r = critical_roots(&q(3, 1.5, 1.0, 1.5, 1.0, -1.0)).unwrap().unwrap();
        assert_relative_eq!(2.0 * r.x1, 0.4, max_relative = 1e-14);
        assert_relative_eq!(2.0 * r.x2, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn roots_preconditions() {
        assert!(critical_roots(&q(3, 1.0, 1.0, -1.0, 1.0, 1.0)).is_err());
        assert!(critical_roots(&q(3, 1.0, 1.0, 0.0, 1.0, 1.0)).is_err());
        assert!(critical_roots(&q(3, 1.0, 1.0, 1.0, 1.0, 0.0)).is_err());
        // β·m·[m − (β+1)p] ≥ 0: no real pair
        assert_eq!(critical_roots(&q(3, 3.0, 1.0, 1.0, 1.0, 1.0)).unwrap(), None);
    }

    #[test]
    fn power_form_examples() {
        let c = classify_power_form(&q(3, 2.0, 1.0, 1.0, 1.0, 2.0)).unwrap();
        assert!(c.has_case(Theorem::T31, "iii.3"));
        assert_eq!(c.direction, Direction::Geq);

        let c = classify_power_form(&q(3, 1.5, 1.0, 1.5, 1.0, -1.0)).unwrap();
        assert_eq!(c.direction, Direction::Unknown);
        assert!(c.cases.is_empty());
        assert_relative_eq!(c.ratios["(t-r)X1"], 0.4, max_relative = 1e-14);

        let c = classify_power_form(&q(5, 3.0, 1.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(tags(&c), vec!["T31/i"]);
        assert_eq!(c.direction, Direction::Geq);
    }

    #[test]
    fn sum_form_examples() {
        let c = classify_sum_form_lower(&ParamTuple::nesbitt()).unwrap();
        assert!(c.has_case(Theorem::T32, "i.1"));
        assert_eq!(c.direction, Direction::Geq);

        let c = classify_sum_form_lower(&q(4, 3.0, 1.0, 1.0, 1.0, 1.0)).unwrap();
        assert!(c.has_case(Theorem::T32, "i.1"));

        let c = classify_sum_form_lower(&q(3, 1.0, 1.0, 0.5, 1.0, 1.0)).unwrap();
        assert_eq!(tags(&c), vec!["T32/i.3"]);

        let c = classify_sum_form_upper(&q(3, 0.5, 1.0, -0.5, 1.0, 1.0)).unwrap();
        assert!(c.has_case(Theorem::T33, "ii.1"));
        assert_eq!(c.direction, Direction::Leq);

        let c = classify_sum_form_upper(&q(3, 0.5, 1.0, 2.0, 1.0, -1.0)).unwrap();
        assert_eq!(tags(&c), vec!["T33/i.1"]);

        let c = classify_sum_form_upper(&q(3, 0.5, 1.0, -1.0, 1.0, 1.0)).unwrap();
        assert_eq!(tags(&c), vec!["T33/iii.1"]);
    }

    #[test]
    fn degenerate_paths() {
        let mut p = ParamTuple::nesbitt();
        assert!(!degenerate_equality(&p));
        p.beta = 0.0;
        assert!(degenerate_equality(&p));
        assert_eq!(classify_sum_form(&p).unwrap().direction, Direction::Equal);
        let p = q(3, 1.0, 1.0, 1.0, 0.0, -1.0);
        assert!(degenerate_equality(&p));
        assert_eq!(classify_sum_form_lower(&p).unwrap().direction, Direction::Equal);
        assert_eq!(classify_sum_form_upper(&p).unwrap().direction, Direction::Equal);
    }

    #[test]
    fn overlapping_directions_are_identities() {
        // g ≡ const (m = 0, r = 0)
        let c = classify_power_form(&q(3, 0.0, 1.0, 2.0, 1.0, 0.0)).unwrap();
        assert_eq!(c.direction, Direction::Equal);
        // β = −1, m = 0: g affine in x
        let c = classify_power_form(&q(3, 0.0, 2.0, -1.0, 1.0, 0.5)).unwrap();
        assert_eq!(c.direction, Direction::Equal);
        let c = classify_sum_form(&q(3, 0.0, 2.0, -1.0, 1.0, 0.5)).unwrap();
        assert_eq!(c.direction, Direction::Equal);
        // T32/i.1 + T33/i.1 at m = p, β = 1, r = 0
        let c = classify_sum_form(&q(3, 1.5, 1.5, 1.0, 1.0, 0.0)).unwrap();
        assert_eq!(c.direction, Direction::Equal);
        assert_eq!(c.cases.len(), 2);
    }

    #[test]
    fn removed_case_never_contradicts() {
        // region of the dropped T33/ii.3: T32/ii.2 certifies ≥
        let c = classify_sum_form(&q(3, -1.0, 1.0, -0.5, 1.0, -1.0)).unwrap();
        assert_eq!(c.direction, Direction::Geq);
        assert_eq!(tags(&c), vec!["T32/ii.2"]);
    }

    #[test]
    fn corrected_vii2_sign() {
        // m(m−p) > 0 with r > 0: the kernel is convex near 0, no ≤ case
        let c = classify_power_form(&q(10, 2.0, 1.0, -0.5, 1.0, 1.0)).unwrap();
        assert!(!c.has_case(Theorem::T31, "vii.2"));
        let c = classify_power_form(&q(10, 0.5, 1.0, -0.5, 1.0, 1.0)).unwrap();
        assert!(c.has_case(Theorem::T31, "vii.2"));
        assert_eq!(c.direction, Direction::Leq);
    }

    #[test]
    fn case_label_validation_and_json() {
        assert!(CaseLabel::new(Theorem::T31, "iii.3").is_ok());
        assert!(CaseLabel::new(Theorem::T31, "i.1").is_err());
        assert!(serde_json::from_str::<CaseLabel>(r#"{"theorem":"T33","tag":"ix"}"#).is_err());

        let c = classify_power_form(&q(3, 2.0, 1.0, 1.0, 1.0, 2.0)).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["theorem"], "T31");
        assert_eq!(json["direction"], "GEQ");
        assert!(json["roots"].is_null() || json["roots"]["x1"].is_number());
        let back: Certificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn every_emitted_tag_is_in_the_closed_sets() {
        let vals = [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0];
        for &m in &vals {
            for &p in &[-2.0, -1.0, 0.5, 1.0, 2.0] {
                for &b in &vals {
                    for &r in &vals {
                        let params = q(3, m, p, b, 1.0, r);
                        let c = match classify_all(&params) {
                            Ok(c) => c,
                            Err(Error::Contradiction { geq, leq }) => {
                                panic!("{params:?}: {geq:?} vs {leq:?}")
                            }
                            Err(_) => continue,
                        };
                        for case in c.power.iter().chain([&c.sum]).flat_map(|c| &c.cases) {
                            assert!(case.theorem.tags().contains(&case.tag.as_str()));
                        }
                        if let Some(Roots { x1, x2 }) = c.sum.roots {
                            assert!(x1 < x2);
                        }
                    }
                }
            }
        }
    }
}
