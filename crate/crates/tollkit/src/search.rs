//! One-dimensional search helpers.

/// Location and value of a search optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchResult {
    pub x: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximization of a unimodal function on [a, b].
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> SearchResult {
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
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
    }
    if fc >= fd {
        SearchResult { x: c, value: fc }
    } else {
        SearchResult { x: d, value: fd }
    }
}

/// Uniform-grid maximization on [lo, hi] with `points` nodes, refined by one
/// golden-section pass on the cells adjacent to the best node.
///
/// ```
/// use tollkit::search::grid_golden_max;
/// let r = grid_golden_max(|x| -(x - 0.3f64).powi(2), 0.0, 1.0, 11);
/// assert!((r.x - 0.3).abs() < 1e-9);
/// let r = grid_golden_max(|x| x, 0.0, 2.0, 5);
/// assert_eq!(r.x, 2.0);
/// ```
pub fn grid_golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> SearchResult {
    let points = points.max(2);
    if hi <= lo {
        return SearchResult { x: lo, value: f(lo) };
    }
    let step = (hi - lo) / (points - 1) as f64;
    let node = |i: usize| if i == points - 1 { hi } else { lo + step * i as f64 };
    let mut best_i = 0;
    let mut best = SearchResult { x: lo, value: f(lo) };
    for i in 1..points {
        let x = node(i);
        let v = f(x);
        if v > best.value {
            best_i = i;
            best = SearchResult { x, value: v };
        }
    }
    let left = node(best_i.saturating_sub(1));
    let right = node((best_i + 1).min(points - 1));
    let refined = golden_section_max(&f, left, right, 1e-13 * (1.0 + hi.abs()));
    if refined.value > best.value {
        refined
    } else {
        best
    }
}

/// Bisection root of `g` on [a, b]; `None` without a sign change.
pub fn bisect_root<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, tol: f64) -> Option<f64> {
    let (mut a, mut b) = (a, b);
    let (mut ga, gb) = (g(a), g(b));
    if ga == 0.0 {
        return Some(a);
    }
    if gb == 0.0 {
        return Some(b);
    }
    if ga.signum() == gb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 || (b - a) / 2.0 < tol {
            return Some(m);
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}
