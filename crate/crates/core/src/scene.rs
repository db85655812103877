//! Input scenes: convex 0-regions and obstacles in a unit-weight plane.

use crate::error::{GeomError, SceneError};
use crate::geom::{shape_distance, Bbox, Point, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionKind {
    /// Weight 0.
    Zero,
    /// Weight ∞.
    Obstacle,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub kind: RegionKind,
    pub shape: Shape,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub epsilon: f64,
    pub regions: Vec<Region>,
}

impl Scene {
    pub fn new(epsilon: f64) -> Scene {
        Scene { epsilon, regions: Vec::new() }
    }

    pub fn with_zero(mut self, shape: impl Into<Shape>) -> Scene {
        self.regions.push(Region { kind: RegionKind::Zero, shape: shape.into() });
        self
    }

    pub fn with_obstacle(mut self, shape: impl Into<Shape>) -> Scene {
        self.regions.push(Region { kind: RegionKind::Obstacle, shape: shape.into() });
        self
    }

    pub fn has_obstacles(&self) -> bool {
        self.regions.iter().any(|r| r.kind == RegionKind::Obstacle)
    }

    pub fn shapes(&self) -> Vec<Shape> {
        self.regions.iter().map(|r| r.shape.clone()).collect()
    }

    pub fn bbox(&self) -> Bbox {
        self.regions.iter().fold(Bbox::EMPTY, |b, r| b.union(&r.shape.bbox()))
    }

    /// Incidence tolerance: `1e-9` times the bounding-box diagonal, with
    /// extra points (query endpoints) included in the box.
    pub fn eta_with(&self, extra: &[Point]) -> f64 {
        let mut b = self.bbox();
        for &p in extra {
            b.add(p);
        }
        let d = if b.is_empty() { 0.0 } else { b.diagonal() };
        1e-9 * d.max(1.0)
    }

    pub fn eta(&self) -> f64 {
        self.eta_with(&[])
    }

    /// Check ε, region shapes and pairwise interior-disjointness.
    pub fn validate(&self) -> Result<(), SceneError> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(SceneError::Epsilon(self.epsilon));
        }
        let eta = self.eta();
        let mut boxes = Vec::with_capacity(self.regions.len());
        for (index, r) in self.regions.iter().enumerate() {
            let b = r.shape.bbox();
            if !b.min.is_finite() || !b.max.is_finite() {
                return Err(SceneError::Region { index, source: GeomError::NonFinite });
            }
            if r.kind == RegionKind::Obstacle && r.shape.area() <= 0.0 {
                return Err(SceneError::Region { index, source: GeomError::Empty });
            }
            boxes.push(b);
        }
        for i in 0..self.regions.len() {
            for j in i + 1..self.regions.len() {
                if !boxes[i].inflate(eta).overlaps(&boxes[j]) {
                    continue;
                }
                match shape_distance(&self.regions[i].shape, &self.regions[j].shape, eta) {
                    Ok(_) => {}
                    Err(GeomError::Overlap { .. }) => return Err(SceneError::Overlap(i, j)),
                    Err(source) => return Err(SceneError::Region { index: i, source }),
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    fn sq(x: f64, y: f64) -> Polygon {
        Polygon::new(vec![
            Point::new(x, y),
            Point::new(x + 1.0, y),
            Point::new(x + 1.0, y + 1.0),
            Point::new(x, y + 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn overlap_names_pair() {
        let s = Scene::new(0.5).with_zero(sq(0.0, 0.0)).with_zero(sq(5.0, 0.0)).with_obstacle(sq(0.5, 0.5));
        assert_eq!(s.validate(), Err(SceneError::Overlap(0, 2)));
    }

    #[test]
    fn touching_is_valid() {
        let s = Scene::new(0.5).with_zero(sq(0.0, 0.0)).with_obstacle(sq(1.0, 0.0));
        assert_eq!(s.validate(), Ok(()));
    }

    #[test]
    fn epsilon_range() {
        assert_eq!(Scene::new(1.0).validate(), Err(SceneError::Epsilon(1.0)));
        assert!(Scene::new(0.3).validate().is_ok());
    }
}
