//! Uniform horizontal slabs with per-slab left and right chain edges.
//!
//! The baseline whose table size depends on the shortest vertical edge extent:
//! thin or slightly tilted shapes need many slabs.

use crate::geometry::{Containment, Point2};
use crate::polygon::{half_plane_side, ConvexPolygon, EdgePlane};

/// Upper bound for the default slab count.
pub const SLAB_CAP: u32 = 65_536;

#[derive(Debug, Clone)]
pub struct SlabTable {
    polygon: ConvexPolygon,
    y_min: f64,
    y_max: f64,
    count: u32,
    height: f64,
    left: Csr,
    right: Csr,
    max_candidates: usize,
}

#[derive(Debug, Clone, Default)]
struct Csr {
    offsets: Vec<u32>,
    items: Vec<u32>,
}

impl Csr {
    fn from_lists(lists: &[Vec<u32>]) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut items = Vec::new();
        offsets.push(0);
        for l in lists {
            items.extend_from_slice(l);
            offsets.push(items.len() as u32);
        }
        Self { offsets, items }
    }

    fn get(&self, k: usize) -> &[u32] {
        &self.items[self.offsets[k] as usize..self.offsets[k + 1] as usize]
    }

    fn bytes(&self) -> usize {
        (self.offsets.len() + self.items.len()) * std::mem::size_of::<u32>()
    }
}

/// Lowest and highest vertex; ties go to the smaller x.
fn extreme_vertices(v: &[Point2]) -> (usize, usize) {
    let below = |a: Point2, b: Point2| a.y < b.y || (a.y == b.y && a.x < b.x);
    let above = |a: Point2, b: Point2| a.y > b.y || (a.y == b.y && a.x < b.x);
    let mut lo = 0;
    let mut hi = 0;
    for k in 1..v.len() {
        if below(v[k], v[lo]) {
            lo = k;
        }
        if above(v[k], v[hi]) {
            hi = k;
        }
    }
    (lo, hi)
}

/// Smallest `|dy|` over edges that are not horizontal within the band.
pub fn min_edge_dy(poly: &ConvexPolygon) -> Option<f64> {
    let band = poly.band();
    (0..poly.len())
        .map(|k| {
            let (a, b) = poly.edge_endpoints(k);
            (b.y - a.y).abs()
        })
        .filter(|&dy| dy >= band)
        .min_by(f64::total_cmp)
}

/// `ceil((y_max - y_min) / dy_min)`, clamped to `[1, SLAB_CAP]`.
pub fn default_slab_count(poly: &ConvexPolygon) -> u32 {
    let (lo, hi) = extreme_vertices(poly.vertices());
    let range = poly.vertices()[hi].y - poly.vertices()[lo].y;
    match min_edge_dy(poly) {
        Some(dy) => (range / dy).ceil().clamp(1.0, SLAB_CAP as f64) as u32,
        None => 1,
    }
}

/// Builds the table; `count` defaults to [`default_slab_count`].
pub fn build_slabs(poly: &ConvexPolygon, count: Option<u32>) -> SlabTable {
    SlabTable::new(poly, count)
}

impl SlabTable {
    pub fn new(poly: &ConvexPolygon, count: Option<u32>) -> Self {
        let n = poly.len();
        let v = poly.vertices();
        let (lo, hi) = extreme_vertices(v);
        let (y_min, y_max) = (v[lo].y, v[hi].y);
        let count = count.unwrap_or_else(|| default_slab_count(poly)).max(1);
        let height = (y_max - y_min) / count as f64;
        let slab = |y: f64| slab_index(y, y_min, height, count);

        // counterclockwise from the bottom vertex climbs the right side
        let mut left = vec![Vec::new(); count as usize];
        let mut right = vec![Vec::new(); count as usize];
        for k in 0..n {
            let from_bottom = (k + n - lo) % n;
            let top = (hi + n - lo) % n;
            let lists = if from_bottom < top { &mut right } else { &mut left };
            let (a, b) = poly.edge_endpoints(k);
            // Queries are binned with the same monotone formula, so the slabs
            // of the two endpoints bracket every height this edge spans.
            let s0 = slab(a.y.min(b.y));
            let s1 = slab(a.y.max(b.y));
            for list in &mut lists[s0..=s1] {
                list.push(k as u32);
            }
        }
        let max_candidates = (0..count as usize)
            .map(|s| left[s].len() + right[s].len())
            .max()
            .unwrap_or(0);

        Self {
            polygon: poly.clone(),
            y_min,
            y_max,
            count,
            height,
            left: Csr::from_lists(&left),
            right: Csr::from_lists(&right),
            max_candidates,
        }
    }

    pub fn slab_count(&self) -> u32 {
        self.count
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.y_min, self.y_max)
    }

    pub fn slab_height(&self) -> f64 {
        self.height
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.polygon
    }

    pub fn max_candidates(&self) -> usize {
        self.max_candidates
    }

    pub fn left(&self, slab: usize) -> &[u32] {
        self.left.get(slab)
    }

    pub fn right(&self, slab: usize) -> &[u32] {
        self.right.get(slab)
    }

    pub fn table_bytes(&self) -> usize {
        self.left.bytes() + self.right.bytes()
    }

    pub fn report(&self) -> String {
        format!(
            "slab M={} maxcand={} bytes={}",
            self.count,
            self.max_candidates,
            self.table_bytes()
        )
    }

    /// Slab holding height `y`, clamped to the end slabs.
    pub fn slab_of(&self, y: f64) -> usize {
        slab_index(y, self.y_min, self.height, self.count)
    }

    pub fn query(&self, p: Point2) -> Containment {
        query_slab(self, p)
    }
}

#[inline(always)]
fn slab_index(y: f64, y_min: f64, height: f64, count: u32) -> usize {
    ((y - y_min) / height).floor().clamp(0.0, (count - 1) as f64) as usize
}

/// Rejects by y-range, then tests the left and right candidates of one slab.
pub fn query_slab(table: &SlabTable, p: Point2) -> Containment {
    let band = table.polygon.band();
    if p.y < table.y_min - band || p.y > table.y_max + band {
        return Containment::Outside;
    }
    let s = table.slab_of(p.y);
    let edges = table.polygon.edges();
    let mut on_boundary = false;
    for &k in table.left.get(s).iter().chain(table.right.get(s)) {
        let e: &EdgePlane = &edges[k as usize];
        let value = half_plane_side(e, p);
        if value < -e.band {
            return Containment::Outside;
        }
        on_boundary |= value <= e.band;
    }
    if on_boundary {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}
