//! Extrema of `F(x) = Σ f(xᵢ)` over `lo ≤ x₁ ≤ ⋯ ≤ x_n ≤ hi`, `Σ xᵢ = C`,
//! for `f` with at most one inflection.
//!
//! Candidates come from two configuration families, each a one-parameter
//! curve:
//!
//! * low-pinned, `k = 1..n`: `x₁ = ⋯ = x_{k−1} = lo`, `x_k` free,
//!   `x_{k+1} = ⋯ = x_n` equal;
//! * high-pinned, `k = 1..n`: `x₁ = ⋯ = x_{k−1}` equal, `x_k` free,
//!   `x_{k+1} = ⋯ = x_n = hi`.
//!
//! For a concave-then-convex `f` a minimizer lies in the low family and a
//! maximizer in the high one (mirrored for convex-then-concave). Both
//! families are always searched; a result outside the prescribed family is
//! marked `extension`.

use serde::{Deserialize, Serialize};

use super::{domain_end, kernel_shape, kernel_value, Mode, Shape, ShapeProfile};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::params::ParamTuple;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub k: usize,
    /// Coordinates pinned at `lo` (low family) or `hi` (high family).
    pub boundary_count: usize,
    pub endpoint: Endpoint,
}

/// `[lo, hi]`; an open end is replaced by `lo + ε` (or `hi − ε`) only when
/// the kernel is not finite there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Bounds {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Bounds { lo, hi, lo_open: false, hi_open: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremumOptions {
    /// ε-boundary as a fraction of `C`.
    pub eps_rel: f64,
    /// Coarse grid points per family before golden-section refinement.
    pub grid: usize,
    pub exec: Exec,
}

impl Default for ExtremumOptions {
    fn default() -> Self {
        ExtremumOptions { eps_rel: 1.0e-8, grid: 512, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremumResult {
    pub value: f64,
    /// Ascending coordinates with `Σ xᵢ = C`.
    pub argpoint: Vec<f64>,
    pub config: Config,
    pub mode: Mode,
    /// The argpoint touches an open end: `value` is a limit.
    pub infimum_not_attained: bool,
    /// The winner is not in the family prescribed for this shape and mode.
    pub extension: bool,
}

/// One family member as `(pinned count, pinned value, free, rest count, rest value)`.
type Layout = (usize, f64, f64, usize, f64);

#[derive(Clone, Copy)]
struct Family {
    endpoint: Endpoint,
    k: usize,
    n: usize,
    c: f64,
    lo: f64,
    hi: f64,
}

impl Family {
    fn boundary_count(&self) -> usize {
        match self.endpoint {
            Endpoint::Low => self.k - 1,
            Endpoint::High => self.n - self.k,
        }
    }

    /// Admissible range of the free coordinate, if any.
    fn range(&self) -> Option<(f64, f64)> {
        let Family { endpoint, k, n, c, lo, hi } = *self;
        let (kf, nf) = (k as f64, n as f64);
        let slack = 1e-12 * (hi - lo);
        let (a, b) = match endpoint {
            Endpoint::Low if k == n => {
                let y = c - (nf - 1.0) * lo;
                (y, y)
            }
            Endpoint::Low => {
                let rest = c - (kf - 1.0) * lo;
                ((rest - (nf - kf) * hi).max(lo), rest / (nf - kf + 1.0))
            }
            Endpoint::High if k == 1 => {
                let y = c - (nf - 1.0) * hi;
                (y, y)
            }
            Endpoint::High => {
                let rest = c - (nf - kf) * hi;
                (rest / kf, hi.min(rest - (kf - 1.0) * lo))
            }
        };
        (a >= lo - slack && b <= hi + slack && a <= b + slack).then(|| (a.clamp(lo, hi), b.clamp(lo, hi).max(a.clamp(lo, hi))))
    }

    fn layout(&self, y: f64) -> Layout {
        let Family { endpoint, k, n, c, lo, hi } = *self;
        match endpoint {
            Endpoint::Low => {
                let rest = n - k;
                let z = if rest == 0 { 0.0 } else { (c - (k - 1) as f64 * lo - y) / rest as f64 };
                (k - 1, lo, y, rest, z)
            }
            Endpoint::High => {
                let eq = k - 1;
                let w = if eq == 0 { 0.0 } else { (c - (n - k) as f64 * hi - y) / eq as f64 };
                (eq, w, y, n - k, hi)
            }
        }
    }

    fn point(&self, y: f64) -> Vec<f64> {
        let (na, a, y, nb, b) = self.layout(y);
        let mut v = vec![a; na];
        v.push(y);
        v.extend(std::iter::repeat(b).take(nb));
        v.sort_by(f64::total_cmp);
        v
    }
}

/// `F` along a family, sign-adjusted so that smaller is better.
fn objective<K: Fn(f64) -> f64>(f: &K, fam: &Family, mode: Mode, y: f64) -> f64 {
    let (na, a, y, nb, b) = fam.layout(y);
    let mut v = f(y);
    if na > 0 {
        v += na as f64 * f(a);
    }
    if nb > 0 {
        v += nb as f64 * f(b);
    }
    let v = match mode {
        Mode::Min => v,
        Mode::Max => -v,
    };
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimize `h` on `[a, b]`: coarse grid, golden section on the best
/// bracket, then bisection on the sign of a central-difference derivative.
fn minimize_1d(h: impl Fn(f64) -> f64, a: f64, b: f64, grid: usize, xtol: f64) -> (f64, f64) {
    if b - a <= xtol {
        let y = 0.5 * (a + b);
        return (y, h(y));
    }
    let step = (b - a) / grid as f64;
    let at = |i: usize| if i == grid { b } else { a + step * i as f64 };
    let (mut bi, mut bv) = (0, h(a));
    for i in 1..=grid {
        let v = h(at(i));
        if v < bv {
            bi = i;
            bv = v;
        }
    }
    let mut best = (at(bi), bv);
    let (mut lo, mut hi) = (at(bi.saturating_sub(1)), at((bi + 1).min(grid)));

    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let (mut f1, mut f2) = (h(x1), h(x2));
    while hi - lo > xtol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = h(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = h(x2);
        }
    }
    for x in [x1, x2, 0.5 * (lo + hi)] {
        let v = h(x);
        if v < best.1 {
            best = (x, v);
        }
    }

    // derivative-sign bisection around the golden-section estimate
    let (mut l, mut r) = ((best.0 - step).max(a), (best.0 + step).min(b));
    let fd = step.max(xtol) * 1e-3;
    let slope = |x: f64| h((x + fd).min(b)) - h((x - fd).max(a));
    if slope(l) < 0.0 && slope(r) > 0.0 {
        for _ in 0..200 {
            if r - l <= xtol {
                break;
            }
            let mid = 0.5 * (l + r);
            if slope(mid) < 0.0 {
                l = mid;
            } else {
                r = mid;
            }
        }
        let mid = 0.5 * (l + r);
        let v = h(mid);
        if v < best.1 {
            best = (mid, v);
        }
    }
    best
}

#[derive(Clone, Copy)]
struct Candidate {
    fam: Family,
    y: f64,
    score: f64,
}

fn better(a: &Candidate, b: &Candidate) -> bool {
    let tol = 1e-12 * a.score.abs().max(b.score.abs()).max(1.0);
    if (a.score - b.score).abs() <= tol {
        a.fam.boundary_count() > b.fam.boundary_count()
    } else {
        a.score < b.score
    }
}

fn pick(cands: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
    cands.into_iter().fold(None, |acc, c| match acc {
        Some(b) if !better(&c, &b) => Some(b),
        _ => Some(c),
    })
}

/// The family that must contain the optimum for a mixed shape.
fn prescribed(shape: Shape, mode: Mode) -> Option<Endpoint> {
    match (shape, mode) {
        (Shape::ConcaveThenConvex, Mode::Min) | (Shape::ConvexThenConcave, Mode::Max) => Some(Endpoint::Low),
        (Shape::ConcaveThenConvex, Mode::Max) | (Shape::ConvexThenConcave, Mode::Min) => Some(Endpoint::High),
        _ => None,
    }
}

/// Extremize `Σ f(xᵢ)` over the ordered simplex slice described above.
pub fn reduce_and_optimize<K>(
    kernel: K,
    n: usize,
    c: f64,
    bounds: Bounds,
    shape: &ShapeProfile,
    mode: Mode,
    opts: &ExtremumOptions,
) -> Result<ExtremumResult>
where
    K: Fn(f64) -> f64 + Sync,
{
    if n < 2 {
        return Err(Error::invalid("need at least two variables"));
    }
    let Bounds { lo, hi, lo_open, hi_open } = bounds;
    if !(lo < hi) || !(n as f64 * lo <= c && c <= n as f64 * hi) {
        return Err(Error::precondition(format!("need lo < hi and n·lo ≤ C ≤ n·hi, got [{lo}, {hi}], C = {c}")));
    }
    let eps = opts.eps_rel * c.abs();
    let lo_eff = if lo_open && !kernel(lo).is_finite() { lo + eps } else { lo };
    let hi_eff = if hi_open && !kernel(hi).is_finite() { hi - eps } else { hi };
    if !(n as f64 * lo_eff <= c && c <= n as f64 * hi_eff) {
        return Err(Error::InfeasibleConfiguration);
    }

    let families: Vec<Family> = [Endpoint::Low, Endpoint::High]
        .into_iter()
        .flat_map(|endpoint| (1..=n).map(move |k| Family { endpoint, k, n, c, lo: lo_eff, hi: hi_eff }))
        .collect();
    let xtol = 1e-12 * (hi_eff - lo_eff);
    let found = opts.exec.map_slice(&families, |fam| {
        let (a, b) = fam.range()?;
        let (y, score) = minimize_1d(|y| objective(&kernel, fam, mode, y), a, b, opts.grid.max(8), xtol);
        score.is_finite().then_some(Candidate { fam: *fam, y, score })
    });
    let found: Vec<Candidate> = found.into_iter().flatten().collect();

    let overall = pick(found.iter().copied()).ok_or(Error::InfeasibleConfiguration)?;
    let (winner, extension) = match prescribed(shape.shape, mode) {
        None => (overall, false),
        Some(end) => match pick(found.iter().copied().filter(|c| c.fam.endpoint == end)) {
            Some(p) if !better(&overall, &p) || overall.fam.endpoint == end => (p, false),
            Some(_) | None => (overall, true),
        },
    };

    let argpoint = winner.fam.point(winner.y);
    let touch = 1e-12 * (hi - lo);
    let infimum_not_attained = (lo_open && argpoint.iter().any(|&x| x <= lo + touch.max(if lo_eff > lo { eps } else { 0.0 })))
        || (hi_open && argpoint.iter().any(|&x| x >= hi - touch.max(if hi_eff < hi { eps } else { 0.0 })));
    let value = argpoint.iter().map(|&x| kernel(x)).sum();
    Ok(ExtremumResult {
        value,
        argpoint,
        config: Config { k: winner.fam.k, boundary_count: winner.fam.boundary_count(), endpoint: winner.fam.endpoint },
        mode,
        infimum_not_attained,
        extension,
    })
}

/// Extremize `Σ g(xᵢ)` for the kernel of `params` with `xᵢ = aᵢ^p` and
/// `Σ xᵢ = s`, over `(0, T)`.
pub fn extremize_params(params: &ParamTuple, s: f64, mode: Mode, opts: &ExtremumOptions) -> Result<ExtremumResult> {
    params.validate()?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::invalid(format!("s must be positive and finite, got {s}")));
    }
    let end = domain_end(params, s);
    let eps = opts.eps_rel * s;
    let shape = kernel_shape(params, s, eps.min(0.5 * end), end)?;
    let q = *params;
    let kernel = move |x: f64| {
        if x < 0.0 || q.t * s - q.r * x <= 0.0 {
            f64::NAN
        } else {
            kernel_value(&q, s, x)
        }
    };
    // positivity of aᵢ makes 0 an open end; x = T is open when the
    // denominator vanishes there
    let bounds = Bounds { lo: 0.0, hi: end, lo_open: true, hi_open: true };
    reduce_and_optimize(kernel, params.n, s, bounds, &shape, mode, opts)
}
