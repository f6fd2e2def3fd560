use crate::geometry::{Point2, Vector2};

/// Cells `(i, j)` of an `m x m` grid over `[-1, 1]^2` whose closed box meets the
/// closed convex polygon. Degenerate polygons (points, segments) are allowed.
pub fn conservative_raster(poly: &[Point2], m: u32) -> Vec<(u32, u32)> {
    let mut cells = Vec::new();
    raster_padded(poly, m, 0.0, |i, j| cells.push((i, j)));
    cells
}

/// Same as [`conservative_raster`] with every cell box grown by `pad` on all sides.
pub(crate) fn raster_padded(poly: &[Point2], m: u32, pad: f64, mut emit: impl FnMut(u32, u32)) {
    if poly.is_empty() || m == 0 {
        return;
    }
    let (mut umin, mut umax, mut vmin, mut vmax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in poly {
        umin = umin.min(p.x);
        umax = umax.max(p.x);
        vmin = vmin.min(p.y);
        vmax = vmax.max(p.y);
    }
    let bbox = (Point2::new(umin, vmin), Point2::new(umax, vmax));
    let (i0, i1) = cell_span(umin, umax, m, pad);
    let (j0, j1) = cell_span(vmin, vmax, m, pad);

    let axes: Vec<Vector2> = (0..poly.len())
        .map(|k| (poly[(k + 1) % poly.len()] - poly[k]).perp())
        .filter(|a| !a.is_zero())
        .collect();

    let width = 2.0 / m as f64;
    for j in j0..=j1 {
        for i in i0..=i1 {
            let lo = Point2::new(-1.0 + i as f64 * width - pad, -1.0 + j as f64 * width - pad);
            let hi = Point2::new(-1.0 + (i + 1) as f64 * width + pad, -1.0 + (j + 1) as f64 * width + pad);
            if box_meets_polygon(lo, hi, poly, bbox, &axes) {
                emit(i, j);
            }
        }
    }
}

/// Index range of cells whose closed (padded) interval meets `[lo, hi]`.
fn cell_span(lo: f64, hi: f64, m: u32, pad: f64) -> (u32, u32) {
    let scale = 0.5 * m as f64;
    let s_lo = (lo + 1.0) * scale - pad * scale;
    let s_hi = (hi + 1.0) * scale + pad * scale;
    let first = (s_lo.ceil() - 1.0).max(0.0).min((m - 1) as f64) as u32;
    let last = s_hi.floor().max(0.0).min((m - 1) as f64) as u32;
    (first, last.max(first))
}

/// Separating-axis test for a closed box against a closed convex polygon.
fn box_meets_polygon(
    lo: Point2,
    hi: Point2,
    poly: &[Point2],
    (pmin, pmax): (Point2, Point2),
    axes: &[Vector2],
) -> bool {
    // clamped edge cells can lie outside the polygon's bounding box
    if pmax.x < lo.x || pmin.x > hi.x || pmax.y < lo.y || pmin.y > hi.y {
        return false;
    }
    let corners = [lo, Point2::new(hi.x, lo.y), hi, Point2::new(lo.x, hi.y)];
    axes.iter().all(|a| {
        let project = |p: &Point2| a.x * p.x + a.y * p.y;
        let (pmin, pmax) = min_max(poly.iter().map(project));
        let (bmin, bmax) = min_max(corners.iter().map(project));
        pmax >= bmin && bmax >= pmin
    })
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}
