mod common;

use common::{icosahedron, random_affine, ray_exit_face};
use convex_locate::cube::default_m;
use convex_locate::io::{read_off, write_off};
use convex_locate::{
    build3, cell_index, point_in_polyhedron_linear, CellId, Containment, ConvexPolyhedron, CubeFace, Point3,
    Tolerance, Vector3,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bbox(ph: &ConvexPolyhedron) -> (Point3, Point3) {
    ph.vertices().iter().fold(
        (Point3::new(f64::MAX, f64::MAX, f64::MAX), Point3::new(f64::MIN, f64::MIN, f64::MIN)),
        |(lo, hi), v| {
            (
                Point3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z)),
                Point3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z)),
            )
        },
    )
}

#[test]
fn icosahedron_is_valid() {
    let ico = icosahedron();
    assert_eq!(ico.face_count(), 20);
    assert_eq!(ico.vertices().len(), 12);
    assert_eq!(default_m(20), 8);
}

#[test]
fn every_cell_lists_its_ray_cast_hits() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ico = icosahedron();
    let skewed = random_affine(&ico, &mut rng);
    for (ph, m) in [(&ico, 8u32), (&ico, 1), (&skewed, 8), (&skewed, 3)] {
        let grid = build3(ph, Some(m)).unwrap();
        let c = grid.reference_point();
        let mut lengths = Vec::new();
        for face in CubeFace::ALL {
            for j in 0..m {
                for i in 0..m {
                    let cell = CellId { face, i, j };
                    let listed = grid.candidates(cell);
                    assert!(!listed.is_empty());
                    lengths.push(listed.len());
                    let (major, a, b) = face.axes();
                    let w = 2.0 / m as f64;
                    for _ in 0..300 {
                        // uniform point on the cell's square, lifted to a direction
                        let u = -1.0 + w * (i as f64 + rng.gen_range(0.0..1.0));
                        let v = -1.0 + w * (j as f64 + rng.gen_range(0.0..1.0));
                        let mut xyz = [0.0; 3];
                        xyz[major] = face.sign();
                        xyz[a] = u;
                        xyz[b] = v;
                        let d = Vector3::new(xyz[0], xyz[1], xyz[2]);
                        assert_eq!(cell_index(d, m).unwrap(), cell);
                        let hit = ray_exit_face(ph, c, d) as u32;
                        assert!(listed.contains(&hit), "{cell:?}: face {hit} not in {listed:?}");
                    }
                }
            }
        }
        lengths.sort_unstable();
        eprintln!("m={m} median list length {} max {}", lengths[lengths.len() / 2], grid.max_candidates());
    }
}

#[test]
fn cube_grid_matches_linear_on_random_affine_icosahedra() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for round in 0..3 {
        let ph = random_affine(&icosahedron(), &mut rng);
        let grid = build3(&ph, None).unwrap();
        let (lo, hi) = bbox(&ph);
        let pad = (hi - lo) * 0.5;
        for _ in 0..100_000 {
            let p = Point3::new(
                rng.gen_range(lo.x - pad.x..hi.x + pad.x),
                rng.gen_range(lo.y - pad.y..hi.y + pad.y),
                rng.gen_range(lo.z - pad.z..hi.z + pad.z),
            );
            assert_eq!(grid.query(p), point_in_polyhedron_linear(&ph, p), "round {round} {p:?}");
        }
        for (k, &v) in ph.vertices().iter().enumerate() {
            assert_eq!(grid.query(v), Containment::Boundary, "vertex {k}");
        }
        let step = 1e-9 * ph.diameter();
        for f in 0..ph.face_count() {
            let c = ph.face_centroid(f);
            let n = ph.planes()[f].normal;
            assert_eq!(grid.query(c), Containment::Boundary);
            assert_eq!(grid.query(c + n * step), Containment::Outside);
            assert_eq!(grid.query(c - n * step), Containment::Inside);
        }
    }
}

#[test]
fn off_round_trip_keeps_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ph = random_affine(&icosahedron(), &mut rng);
    let again = read_off(&write_off(&ph), Tolerance::default()).unwrap();
    assert_eq!(ph, again);
}
