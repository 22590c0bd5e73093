//! Dense-grid extremum of `Σ f(xᵢ)` over the ordered simplex slice, with a
//! pattern-search polish. Used as an independent check on the reduction.

use serde::{Deserialize, Serialize};

use super::{sbeta_value, Mode};
use crate::error::{Error, Result};
use crate::exec::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridOptions {
    /// `C` is split into this many equal steps.
    pub divisions: usize,
    pub refine: bool,
    pub exec: Exec,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { divisions: 1000, refine: true, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub value: f64,
    pub argpoint: Vec<f64>,
}

fn score(v: f64, mode: Mode) -> f64 {
    let v = if mode == Mode::Min { v } else { -v };
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Best over non-decreasing `i₁ ≤ ⋯ ≤ i_n` with `Σ iⱼ = rem`, each `iⱼ ≥ from`.
fn search(table: &[f64], n: usize, rem: usize, from: usize, acc: f64, idx: &mut Vec<usize>, best: &mut (f64, Vec<usize>)) {
    if n == 1 {
        if rem >= from && rem < table.len() {
            let v = acc + table[rem];
            if v < best.0 {
                best.0 = v;
                best.1.clone_from(idx);
                best.1.push(rem);
            }
        }
        return;
    }
    // the remaining n coordinates are each ≥ i
    let mut i = from;
    while i * n <= rem {
        if table[i].is_finite() {
            idx.push(i);
            search(table, n - 1, rem - i, i, acc + table[i], idx, best);
            idx.pop();
        }
        i += 1;
    }
}

fn objective<K: Fn(f64) -> f64>(f: &K, x: &[f64], mode: Mode) -> f64 {
    score(x.iter().map(|&v| f(v)).sum(), mode)
}

/// Pairwise mass transfers with step halving down to `1e−13·C`.
fn polish<K: Fn(f64) -> f64>(f: &K, x: &mut [f64], c: f64, lo: f64, hi: f64, mode: Mode, step: f64) {
    let n = x.len();
    let mut cur = objective(f, x, mode);
    let mut d = step;
    while d > 1e-13 * c.abs().max(f64::MIN_POSITIVE) {
        let mut improved = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let take = d.min(x[i] - lo).min(hi - x[j]);
                if take <= 0.0 {
                    continue;
                }
                let (xi, xj) = (x[i], x[j]);
                x[i] = xi - take;
                x[j] = xj + take;
                if x[i] - lo < 1e-15 * c.abs() {
                    x[j] += x[i] - lo;
                    x[i] = lo;
                }
                let v = objective(f, x, mode);
                if v < cur {
                    cur = v;
                    improved = true;
                } else {
                    x[i] = xi;
                    x[j] = xj;
                }
            }
        }
        if !improved {
            d *= 0.5;
        }
    }
}

/// Extremum of `Σ f(xᵢ)` over `lo ≤ xᵢ ≤ hi`, `Σ xᵢ = C` on the grid
/// `xᵢ ∈ C·ℤ/divisions`, optionally polished.
pub fn grid_extremum<K>(kernel: K, n: usize, c: f64, lo: f64, hi: f64, mode: Mode, opts: &GridOptions) -> Result<GridResult>
where
    K: Fn(f64) -> f64 + Sync,
{
    if n < 2 || opts.divisions == 0 {
        return Err(Error::invalid("need n ≥ 2 and a positive division count"));
    }
    if !(lo < hi && c > 0.0 && n as f64 * lo <= c && c <= n as f64 * hi) {
        return Err(Error::precondition(format!("need lo < hi and n·lo ≤ C ≤ n·hi, got [{lo}, {hi}], C = {c}")));
    }
    let big = opts.divisions;
    let h = c / big as f64;
    let table: Vec<f64> = (0..=big)
        .map(|i| {
            let x = h * i as f64;
            if x < lo - 1e-12 * c || x > hi + 1e-12 * c {
                f64::NAN
            } else {
                score(kernel(x), mode)
            }
        })
        .map(|v| if v.is_finite() { v } else { f64::NAN })
        .collect();

    let firsts: Vec<usize> = (0..=big / n).filter(|&i| table[i].is_finite()).collect();
    let found = opts.exec.map_slice(&firsts, |&i| {
        let mut best = (f64::INFINITY, Vec::new());
        let mut idx = vec![i];
        search(&table, n - 1, big - i, i, table[i], &mut idx, &mut best);
        best
    });
    let (_, idx) = found
        .into_iter()
        .fold((f64::INFINITY, Vec::new()), |a, b| if b.0 < a.0 { b } else { a });
    if idx.is_empty() {
        return Err(Error::InfeasibleConfiguration);
    }
    let mut x: Vec<f64> = idx.iter().map(|&i| (h * i as f64).clamp(lo, hi)).collect();
    if opts.refine {
        polish(&kernel, &mut x, c, lo, hi, mode, h);
    }
    x.sort_by(f64::total_cmp);
    let value = x.iter().map(|&v| kernel(v)).sum();
    Ok(GridResult { value, argpoint: x })
}

/// Brute-force infimum of `S_β` on the closed simplex `Σ aᵢ = 1`.
pub fn sbeta_brute_force(n: usize, beta: f64, exec: Exec) -> Result<GridResult> {
    let divisions = if n <= 4 { 1000 } else { 500 };
    let opts = GridOptions { divisions, refine: true, exec };
    let kernel = move |x: f64| if x >= 1.0 { f64::INFINITY } else { (x / (1.0 - x)).powf(beta) };
    let r = grid_extremum(kernel, n, 1.0, 0.0, 1.0, Mode::Min, &opts)?;
    let value = sbeta_value(&r.argpoint, beta)?;
    Ok(GridResult { value, ..r })
}
