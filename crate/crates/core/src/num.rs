//! Small numeric helpers shared by the evaluators.

/// Integer exponents up to this magnitude use `powi` (exact for small bases).
const MAX_POWI: f64 = 64.0;

/// `x^e` for `x > 0`. Integer exponents go through repeated squaring so that
/// small integer cases stay exact; everything else uses `powf`.
#[inline]
pub fn pow(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        x
    } else if e.fract() == 0.0 && e.abs() <= MAX_POWI {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

pub fn is_integer(x: f64) -> bool {
    x.is_finite() && x.fract() == 0.0
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sum {
    sum: f64,
    comp: f64,
}

impl Sum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut acc = Sum::new();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}

/// `|a − b| ≤ tol · max(|a|, |b|)`, with `tol` as an absolute floor too.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0e-300) || (a - b).abs() <= 1.0e-300
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_powers_are_exact() {
        assert_eq!(pow(3.0, 2.0), 9.0);
        assert_eq!(pow(2.0, -1.0), 0.5);
        assert_eq!(pow(7.0, 0.0), 1.0);
        assert!((pow(2.0, 0.5) - std::f64::consts::SQRT_2).abs() < 1e-16);
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let xs = [1.0e16, 1.0, -1.0e16, 1.0];
        assert_eq!(sum(xs), 2.0);
    }
}
