//! Golden-section maximisation of unimodal scalar functions.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximise `f` on `[a, b]` assuming unimodality. Returns `(argmax, max)`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, x_tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > x_tol {
        if fc >= fd {
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
        if c >= d {
            break;
        }
    }
    // the endpoints may beat the interior probes for monotone objectives
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [a, b] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Scan `n_scan` evenly spaced points on `[a, b]`, then polish the best one
/// with golden-section search on its neighbouring cells.
pub fn scan_then_golden<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n_scan: usize, x_tol: f64) -> (f64, f64) {
    let n_scan = n_scan.max(3);
    let step = (b - a) / (n_scan - 1) as f64;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..n_scan {
        let v = f(a + step * i as f64);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = a + step * best_i.saturating_sub(1) as f64;
    let hi = (a + step * (best_i + 1) as f64).min(b);
    let (x, v) = golden_max(&f, lo, hi, x_tol);
    if v >= best_v {
        (x, v)
    } else {
        (a + step * best_i as f64, best_v)
    }
}
