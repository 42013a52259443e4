//! Exact verification engine for Ulrich line bundles and their extension
//! towers on 3-fold scrolls `X = P(E)` over Hirzebruch surfaces.
//!
//! All arithmetic is exact. Cohomology is reported as per-degree ranges with
//! an exact Euler characteristic; nothing is assumed about extension classes.

pub mod chow;
pub mod error;
pub mod formula;
pub mod interval;
pub mod registry;
pub mod report;
pub mod riemann_roch;
pub mod scroll;
pub mod surface;
pub mod tower;
pub mod ulrich;

pub use chow::{DivisorClass, ScrollParams, SurfaceClass};
pub use error::{EngineError, Result};
pub use interval::{CohInterval3, CohInterval4, DimRange};
pub use tower::{Constituent, TowerSpec};
