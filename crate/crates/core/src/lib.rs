//! Approximate weighted shortest paths in the plane among convex zero-cost
//! regions and convex obstacles.

pub mod engine;
pub mod error;
pub mod frechet;
pub mod gen;
pub mod geom;
pub mod oracle;
pub mod sampling;
pub mod scene;
pub mod theta;
pub mod trapmap;
