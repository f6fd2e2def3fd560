//! Point containment for convex polygons and polyhedra.
//!
//! Besides the O(N) half-plane sweep and the O(lg N) fan search, the crate
//! builds two direction tables around an interior reference point that answer
//! containment in constant time:
//!
//! * [`PolarGrid`]: `8m` tan-spaced sectors, each holding the cyclic range of
//!   polygon edges its rays can cross.
//! * [`CubeGrid`]: `6m^2` cubemap cells, each holding the polyhedron faces its
//!   pyramid can hit.
//!
//! [`SlabTable`] is the horizontal-slab baseline.
//!
//! All tests share one tolerance rule: a side value within `eps_rel * diameter`
//! of zero (scaled by edge length in 2D) counts as [`Containment::Boundary`].
//!
//! ```
//! use convex_locate::{validate_polygon, Containment, Point2, PolarGrid};
//!
//! let square = validate_polygon(&[
//!     Point2::new(0.0, 0.0),
//!     Point2::new(2.0, 0.0),
//!     Point2::new(2.0, 2.0),
//!     Point2::new(0.0, 2.0),
//! ])?;
//! let grid = PolarGrid::new(&square, None);
//! assert_eq!(grid.query(Point2::new(1.5, 1.0)), Containment::Inside);
//! assert_eq!(grid.query(Point2::new(2.0, 1.7)), Containment::Boundary);
//! # Ok::<(), convex_locate::GeometryError>(())
//! ```

pub mod angles;
pub mod cube;
pub mod error;
pub mod geometry;
pub mod io;
pub mod polar;
pub mod polygon;
pub mod polyhedron;
pub mod slab;

pub use cube::{build3, cell_index, query3, reference_point3, CellId, CubeFace, CubeGrid};
pub use error::{FormatError, GeometryError};
pub use geometry::{Containment, Point2, Point3, Tolerance, Vector2, Vector3};
pub use polar::{sector_index, PolarGrid, SectorId};
pub use polygon::{point_in_polygon_linear, point_in_polygon_logn, validate_polygon, ConvexPolygon};
pub use polyhedron::{point_in_polyhedron_linear, validate_polyhedron, ConvexPolyhedron};
pub use slab::{build_slabs, query_slab, SlabTable};
