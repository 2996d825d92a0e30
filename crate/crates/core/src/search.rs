//! One-dimensional solvers used by the duality and bound computations.

/// `(√5 − 1) / 2`
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Result of a bracketing search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
///
/// Stops once the bracket is narrower than `tol` or stops shrinking in
/// floating point. Returns the best point evaluated, which for convex `f`
/// is within the final bracket.
pub fn golden_section_min<F>(mut f: F, a: f64, b: f64, tol: f64) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    let mut best = Minimum {
        x: lo,
        value: f(lo),
        iterations: 0,
    };
    let f_hi = f(hi);
    if f_hi < best.value {
        best.x = hi;
        best.value = f_hi;
    }

    let mut iterations = 0;
    while hi - lo > tol && iterations < 400 {
        iterations += 1;
        let width = hi - lo;
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        if !(hi - lo < width) {
            break;
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v < best.value {
            best.x = x;
            best.value = v;
        }
    }
    best.iterations = iterations;
    best
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_section_max<F>(mut f: F, a: f64, b: f64, tol: f64) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let m = golden_section_min(|x| -f(x), a, b, tol);
    Minimum {
        value: -m.value,
        ..m
    }
}

/// Smallest index `i` in `0..n` with `pred(i)` true, for a predicate that is
/// false then true; `n` if it is never true.
pub fn bisect_index<P>(n: usize, mut pred: P) -> usize
where
    P: FnMut(usize) -> bool,
{
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_quadratic_minimum() {
        let m = golden_section_min(|x| (x - 0.3).powi(2) + 1.0, 0.0, 1.0, 1e-10);
        assert!((m.x - 0.3).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn golden_handles_kinks_and_endpoints() {
        let m = golden_section_min(|x| (x - 0.7).abs(), 0.0, 1.0, 1e-12);
        assert!((m.x - 0.7).abs() < 1e-11);
        // Minimum at the boundary.
        let m = golden_section_min(|x| 2.0 * x, 0.0, 1.0, 1e-12);
        assert_eq!(m.x, 0.0);
        let m = golden_section_max(|x| x, 0.0, 1.0, 1e-12);
        assert_eq!((m.x, m.value), (1.0, 1.0));
    }

    #[test]
    fn golden_terminates_at_float_resolution() {
        let m = golden_section_min(|x| (x - 1e6).abs(), 0.0, 2e6, 0.0);
        assert!(m.iterations < 400);
        assert!((m.x - 1e6).abs() < 1e-6);
    }

    #[test]
    fn bisect_index_finds_first_true() {
        let v = [0.1, 0.4, 0.4, 0.9];
        assert_eq!(bisect_index(v.len(), |i| v[i] >= 0.4), 1);
        assert_eq!(bisect_index(v.len(), |i| v[i] > 0.4), 3);
        assert_eq!(bisect_index(v.len(), |i| v[i] > 1.0), 4);
        assert_eq!(bisect_index(0, |_| true), 0);
    }
}
