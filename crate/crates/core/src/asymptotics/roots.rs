use crate::error::{Error, Result};

pub const MAX_ITER: usize = 200;
pub const REL_TOL: f64 = 1e-13;

/// Root of an increasing function on `[lo, hi]` with `f(lo) < 0 < f(hi)`.
///
/// Newton steps from the midpoint, falling back to bisection whenever a
/// step leaves the current bracket. Returns the root and iteration count.
pub fn solve_increasing(
    f: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
) -> Result<(f64, usize)> {
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if !(flo <= 0.0 && fhi >= 0.0) {
        return Err(Error::RootFinding(format!(
            "no sign change on [{lo}, {hi}]: f = {flo}, {fhi}"
        )));
    }
    if flo == 0.0 {
        return Ok((lo, 0));
    }
    if fhi == 0.0 {
        return Ok((hi, 0));
    }
    let mut x = 0.5 * (lo + hi);
    for it in 1..=MAX_ITER {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok((x, it));
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= REL_TOL * x.abs() || hi - lo <= REL_TOL * x.abs() {
            return Ok((x, it));
        }
    }
    Err(Error::RootFinding(format!(
        "no convergence after {MAX_ITER} iterations (bracket [{lo}, {hi}])"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root() {
        let (x, it) = solve_increasing(|x| (x * x - 2.0, 2.0 * x), 0.0, 2.0).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-13);
        assert!(it < 20);
    }

    #[test]
    fn bad_bracket() {
        assert!(solve_increasing(|x| (x + 1.0, 1.0), 0.0, 1.0).is_err());
    }

    #[test]
    fn flat_derivative_falls_back_to_bisection() {
        let (x, _) = solve_increasing(|x| ((x - 0.3).powi(3), 0.0), 0.0, 1.0).unwrap();
        assert!((x - 0.3).abs() < 1e-4);
    }
}
