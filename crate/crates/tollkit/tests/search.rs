use proptest::prelude::*;
use tollkit::search::{bisect_root, golden_section_max, grid_golden_max};

#[test]
fn golden_section_finds_interior_peak() {
    let r = golden_section_max(|x| -(x - 1.25f64).powi(2) + 3.0, 0.0, 4.0, 1e-12);
    assert!((r.x - 1.25).abs() < 1e-6);
    assert!((r.value - 3.0).abs() < 1e-12);
}

#[test]
fn grid_search_keeps_boundary_optimum_exact() {
    let r = grid_golden_max(|x| x * (10.0 - x), 0.0, 2.0, 4096);
    assert_eq!(r.x, 2.0);
    assert_eq!(r.value, 16.0);
    let r = grid_golden_max(|x| -x, 0.5, 2.0, 2);
    assert_eq!(r.x, 0.5);
}

#[test]
fn grid_search_skips_infeasible_points() {
    let f = |x: f64| if x < 1.0 { f64::NEG_INFINITY } else { -(x - 1.5f64).powi(2) };
    let r = grid_golden_max(f, 0.0, 3.0, 64);
    assert!((r.x - 1.5).abs() < 1e-6);
}

#[test]
fn bisection_needs_sign_change() {
    let root = bisect_root(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
    assert!((root - 2f64.sqrt()).abs() < 1e-12);
    assert!(bisect_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
}

proptest! {
    #[test]
    fn grid_search_matches_vertex_of_parabola(c in -1.0..3.0f64, k in 0.1..10.0f64) {
        let r = grid_golden_max(|x| -k * (x - c).powi(2), 0.0, 2.0, 257);
        let expected = c.clamp(0.0, 2.0);
        prop_assert!((r.x - expected).abs() < 1e-6);
    }
}
