//! Bracketed root refinement.

/// Bisection on a sign-changing bracket `[a, b]`. Returns `None` when the
/// endpoints do not bracket a root. Stops when the bracket is narrower than
/// `x_tol` or cannot be split further.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, x_tol: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= x_tol || mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_bracket() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }

    #[test]
    fn exact_endpoint_root() {
        assert_eq!(bisect(|x| x - 1.0, 1.0, 3.0, 1e-12), Some(1.0));
    }
}
