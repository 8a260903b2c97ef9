//! One-dimensional bracketing searches.

use super::NumericsError;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of a golden-section minimisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimises a unimodal `f` on `[lo, hi]` until the bracket is narrower than `tol`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Minimum, NumericsError> {
    if !(lo < hi) || !(tol > 0.0) {
        return Err(NumericsError::Bracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut evaluations = 2;
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        evaluations += 1;
    }
    let (x, value) = if fc < fd { (c, fc) } else { (d, fd) };
    Ok(Minimum { x, value, evaluations })
}

/// Bisects a monotone predicate that is false at `lo` and true at `hi`.
///
/// Returns the final `(lo, hi)` bracket once `hi - lo <= tol`; `hi` is always a
/// point where the predicate holds.
pub fn bisect_predicate<F: FnMut(f64) -> bool>(mut pred: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64), NumericsError> {
    if !(lo < hi) || !(tol > 0.0) || pred(lo) || !pred(hi) {
        return Err(NumericsError::Bracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if pred(mid) {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok((a, b))
}

/// Root of a continuous `f` with a sign change on `[lo, hi]`.
pub fn bisect_root<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, NumericsError> {
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(NumericsError::Bracket { lo, hi });
    }
    let up = fhi > 0.0;
    let (a, b) = bisect_predicate(|x| (f(x) >= 0.0) == up, lo, hi, tol)?;
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parabola_minimum() {
        let m = golden_section(|x| (x - 1.3).powi(2) + 2.0, -4.0, 5.0, 1e-9).unwrap();
        assert!((m.x - 1.3).abs() < 1e-7);
        assert!((m.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bad_brackets() {
        assert!(golden_section(|x| x, 1.0, 0.0, 1e-3).is_err());
        assert!(bisect_predicate(|x| x > 0.5, 0.6, 1.0, 1e-3).is_err());
        assert!(bisect_root(|x| x * x + 1.0, -1.0, 1.0, 1e-6).is_err());
    }

    proptest! {
        #[test]
        fn root_of_cubic(r in -3.0f64..3.0) {
            let x = bisect_root(|x| (x - r).powi(3), -10.0, 10.0, 1e-12).unwrap();
            prop_assert!((x - r).abs() < 1e-11);
        }

        #[test]
        fn predicate_upper_end_holds(t in 0.01f64..0.99) {
            let (lo, hi) = bisect_predicate(|x| x >= t, 0.0, 1.0, 1e-9).unwrap();
            prop_assert!(hi >= t && lo < t && hi - lo <= 1e-9);
        }
    }
}
