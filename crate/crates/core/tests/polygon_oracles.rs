mod common;

use common::{random_convex, ray_exit_edge, regular};
use convex_locate::polar::{auto_m, sector_start_direction, M_CAP};
use convex_locate::{
    build_slabs, point_in_polygon_linear, point_in_polygon_logn, sector_index, validate_polygon, Containment,
    ConvexPolygon, Point2, PolarGrid, SectorId, Vector2,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_all_agree(poly: &ConvexPolygon, grid: &PolarGrid, p: Point2) {
    let slabs = build_slabs(poly, None);
    let expected = point_in_polygon_linear(poly, p);
    assert_eq!(point_in_polygon_logn(poly, p), expected, "logn at {p:?}");
    assert_eq!(grid.query(p), expected, "polar at {p:?}");
    assert_eq!(slabs.query(p), expected, "slab at {p:?}");
}

/// Vertices, edge midpoints, the reference point, and points pushed 1e-9 * diameter
/// across every edge and vertex.
fn adversarial_points(poly: &ConvexPolygon) -> Vec<(Point2, Option<Containment>)> {
    let n = poly.len();
    let step = 1e-9 * poly.diameter();
    let mut out = vec![(poly.reference_point(), Some(Containment::Inside))];
    for k in 0..n {
        let (a, b) = poly.edge_endpoints(k);
        let outward = (-poly.edges()[k].normal).normalized();
        let mid = a.midpoint(b);
        out.push((a, Some(Containment::Boundary)));
        out.push((mid, Some(Containment::Boundary)));
        out.push((mid + outward * step, Some(Containment::Outside)));
        out.push((mid - outward * step, Some(Containment::Inside)));
        let prev = (-poly.edges()[(k + n - 1) % n].normal).normalized();
        let corner = (outward + prev).normalized();
        out.push((a + corner * step, Some(Containment::Outside)));
        out.push((a - corner * step, None));
    }
    out
}

#[test]
fn square_examples_across_all_tests() {
    let sq = validate_polygon(&[
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(2.0, 2.0),
        Point2::new(0.0, 2.0),
    ])
    .unwrap();
    let grid = PolarGrid::new(&sq, None);
    for (p, want) in [
        ((1.0, 1.0), Containment::Inside),
        ((1.5, 1.0), Containment::Inside),
        ((2.5, 1.0), Containment::Outside),
        ((2.0, 1.7), Containment::Boundary),
        ((1.0, 3.0), Containment::Outside),
    ] {
        let p = Point2::new(p.0, p.1);
        assert_eq!(point_in_polygon_linear(&sq, p), want);
        assert_all_agree(&sq, &grid, p);
    }
}

#[test]
fn adversarial_points_agree_on_random_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(3..=128);
        let poly = random_convex(&mut rng, n);
        let grid = PolarGrid::new(&poly, None);
        let slabs = build_slabs(&poly, None);
        for (p, want) in adversarial_points(&poly) {
            let expected = point_in_polygon_linear(&poly, p);
            if let Some(w) = want {
                assert_eq!(expected, w, "linear at {p:?}");
            }
            assert_eq!(point_in_polygon_logn(&poly, p), expected, "logn at {p:?}");
            assert_eq!(grid.query(p), expected, "polar at {p:?}");
            assert_eq!(slabs.query(p), expected, "slab at {p:?}");
        }
    }
}

#[test]
fn rotations_of_one_polygon_keep_every_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let base = random_convex(&mut rng, 16);
    for _ in 0..100 {
        let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (s, c) = a.sin_cos();
        let pts: Vec<Point2> = base
            .vertices()
            .iter()
            .map(|v| Point2::new(c * v.x - s * v.y, s * v.x + c * v.y))
            .collect();
        let poly = validate_polygon(&pts).unwrap();
        let grid = PolarGrid::new(&poly, None);
        if grid.m() < M_CAP {
            assert!(grid.max_candidates() <= 2, "{}", grid.report());
        }
        for (p, _) in adversarial_points(&poly) {
            assert_all_agree(&poly, &grid, p);
        }
    }
}

#[test]
fn candidate_bound_when_m_is_not_capped() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut shapes: Vec<ConvexPolygon> = [3, 4, 5, 6, 8, 12, 16, 32, 64, 128]
        .iter()
        .map(|&n| regular(n, 0.0))
        .collect();
    shapes.extend((0..40).map(|_| {
        let n = rng.gen_range(3..=64);
        random_convex(&mut rng, n)
    }));
    for poly in &shapes {
        let grid = PolarGrid::new(poly, None);
        assert_eq!(grid.m(), auto_m(poly));
        if grid.m() < M_CAP {
            assert!(grid.max_candidates() <= 2, "N={} {}", poly.len(), grid.report());
        }
    }
}

#[test]
fn sector_ranges_cover_ray_cast_hits() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let shapes = vec![
        regular(4, std::f64::consts::FRAC_PI_4),
        regular(6, 0.0),
        regular(37, 0.3),
        random_convex(&mut rng, 9),
        random_convex(&mut rng, 100),
    ];
    for poly in &shapes {
        for m in [None, Some(1), Some(3), Some(64)] {
            let grid = PolarGrid::new(poly, m);
            let c = grid.reference_point();
            for s in 0..grid.sector_count() as u32 {
                let listed: Vec<usize> = grid.candidates(SectorId(s)).collect();
                let a = sector_start_direction(SectorId(s), grid.m());
                let b = sector_start_direction(SectorId((s + 1) % grid.sector_count() as u32), grid.m());
                for _ in 0..200 {
                    // directions strictly between the two boundary rays
                    let t: f64 = rng.gen_range(0.0..1.0);
                    let d = a.normalized() * (1.0 - t) + b.normalized() * t;
                    if sector_index(d, grid.m()).unwrap() != SectorId(s) {
                        continue;
                    }
                    let hit = ray_exit_edge(poly, c, d);
                    assert!(listed.contains(&hit), "sector {s}: edge {hit} not in {listed:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn all_tests_agree_with_linear(seed in any::<u64>(), n in 3usize..=128) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = random_convex(&mut rng, n);
        let grid = PolarGrid::new(&poly, None);
        let slabs = build_slabs(&poly, None);
        let (lo, hi) = poly.vertices().iter().fold(
            (Point2::new(f64::MAX, f64::MAX), Point2::new(f64::MIN, f64::MIN)),
            |(lo, hi), v| (Point2::new(lo.x.min(v.x), lo.y.min(v.y)), Point2::new(hi.x.max(v.x), hi.y.max(v.y))),
        );
        let pad = Vector2::new(hi.x - lo.x, hi.y - lo.y) * 0.5;
        for _ in 0..500 {
            let p = Point2::new(
                rng.gen_range(lo.x - pad.x..hi.x + pad.x),
                rng.gen_range(lo.y - pad.y..hi.y + pad.y),
            );
            let expected = point_in_polygon_linear(&poly, p);
            prop_assert_eq!(point_in_polygon_logn(&poly, p), expected);
            prop_assert_eq!(grid.query(p), expected);
            prop_assert_eq!(slabs.query(p), expected);
        }
    }

    #[test]
    fn any_m_or_slab_count_keeps_verdicts(seed in any::<u64>(), m in 1u32..200, slabs in 1u32..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = random_convex(&mut rng, 20);
        let grid = PolarGrid::new(&poly, Some(m));
        let table = build_slabs(&poly, Some(slabs));
        for (p, _) in adversarial_points(&poly) {
            let expected = point_in_polygon_linear(&poly, p);
            prop_assert_eq!(grid.query(p), expected);
            prop_assert_eq!(table.query(p), expected);
        }
    }
}
