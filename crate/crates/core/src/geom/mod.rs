//! Exact planar geometry kernel: points and directions, canonical convex
//! bodies, half-plane clipping, normal cones, and boundary arrangements.

mod arrangement;
mod body;
mod cone;
mod point;

use thiserror::Error;

pub use arrangement::{
    build_arrangement, default_window, ArrEdge, ArrFace, ArrVertex, Arrangement, Cell, CellKind, Owner,
};
pub use body::{hull, ConvexBody};
pub use cone::{misses_open_halfplane, normal_cone, Cone};
pub use point::{orient, Direction, HalfPlane, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("operation needs a bounded body")]
    Unbounded,
    #[error("normal cone of the empty set")]
    EmptyBody,
    #[error("polygon vertices are not in convex position")]
    NotConvex,
    #[error("polygon vertices are collinear or repeated")]
    Degenerate,
    #[error("arrangement needs at least one body")]
    NoBodies,
    #[error("arrangement window must be a polygon")]
    WindowNotPolygon,
    #[error("window does not contain every bounded body")]
    WindowTooSmall,
}
