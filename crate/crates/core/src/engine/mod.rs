//! The query structure: sample points, trapezoidal maps, the weighted graph
//! and its Θ-graph, plus s–t queries over a private overlay.

mod graph;
mod query;
mod realize;

use std::collections::{BTreeMap, BTreeSet};

use log::debug;
use rayon::prelude::*;

use crate::error::EngineError;
use crate::geom::{common_tangents, shape_distance, Bbox, Point, Shape};
use crate::sampling::{
    choose_theta, original_sample_points, simplify, wall_landings, BoundaryFrame, DirectionSet, Landing, SampleKind,
    SamplePoint,
};
use crate::scene::{RegionKind, Scene};
use crate::theta::{ThetaGraph, ThetaVertex};
use crate::trapmap::{prepare, TrapMap};

pub use graph::{dijkstra, Edge, EdgeGeometry, Graph, GraphPath, GraphView, Overlay, Provenance};
pub use realize::{Medium, PathSegment, WeightedPath};

/// Sizes recorded during construction.
#[derive(Clone, Debug, PartialEq)]
pub struct BuildStats {
    pub vertices: usize,
    pub edges: usize,
    pub original: usize,
    pub propagated: usize,
    pub tangent: usize,
    pub maps: usize,
    pub by_provenance: BTreeMap<Provenance, usize>,
}

/// The built structure. Immutable; queries work on private overlays.
#[derive(Clone, Debug)]
pub struct StructureB {
    pub scene: Scene,
    pub eta: f64,
    pub ds: DirectionSet,
    pub maps: Vec<TrapMap>,
    pub vertices: Vec<SamplePoint>,
    pub graph: Graph,
    pub theta: ThetaGraph,
    /// Anchor of each 0-region.
    pub anchors: Vec<Option<usize>>,
    pub stats: BuildStats,
    shapes: Vec<Shape>,
    frames: Vec<BoundaryFrame>,
    /// Sample ids per region in boundary order.
    region_points: Vec<Vec<usize>>,
}

/// Sample points with per-region merging.
struct VertexSet {
    points: Vec<SamplePoint>,
    by_region: Vec<Vec<usize>>,
    tol: f64,
}

impl VertexSet {
    fn add(&mut self, region: usize, location: Point, kind: SampleKind) -> usize {
        if let Some(&id) = self.by_region[region].iter().find(|&&i| self.points[i].location.dist(location) <= self.tol) {
            return id;
        }
        let id = self.points.len();
        self.points.push(SamplePoint { id, location, kind, region: Some(region), extreme_for: Vec::new() });
        self.by_region[region].push(id);
        id
    }
}

fn pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl StructureB {
    /// Build with the default seed.
    pub fn new(scene: &Scene) -> Result<StructureB, EngineError> {
        Self::build(scene, 0)
    }

    /// Construct the structure. Without obstacles only original sample
    /// points are used; with obstacles, propagated and tangent points are
    /// added and the Θ-graph respects the simplified obstacles.
    pub fn build(scene: &Scene, seed: u64) -> Result<StructureB, EngineError> {
        scene.validate()?;
        let eta = scene.eta();
        let mixed = scene.has_obstacles();
        let ds = choose_theta(scene.epsilon, mixed);
        let shapes = scene.shapes();
        let kinds: Vec<RegionKind> = scene.regions.iter().map(|r| r.kind).collect();
        let n = shapes.len();

        let mut vs = VertexSet { points: Vec::new(), by_region: vec![Vec::new(); n], tol: eta };
        let mut frames = Vec::with_capacity(n);
        for (r, shape) in shapes.iter().enumerate() {
            let sp = original_sample_points(shape, &ds, eta);
            let locs: Vec<Point> = sp.iter().map(|p| p.location).collect();
            frames.push(BoundaryFrame::new(shape, &locs));
            for p in sp {
                let id = vs.points.len();
                vs.points.push(SamplePoint { id, region: Some(r), ..p });
                vs.by_region[r].push(id);
            }
        }
        let original = vs.points.len();
        let anchors: Vec<Option<usize>> = (0..n)
            .map(|r| if kinds[r] == RegionKind::Zero { vs.by_region[r].iter().copied().min() } else { None })
            .collect();

        let simpl: Vec<_> = (0..n)
            .map(|r| {
                let pts: Vec<(usize, Point)> = vs.by_region[r].iter().map(|&i| (i, vs.points[i].location)).collect();
                simplify(r, &frames[r], &pts, eta)
            })
            .collect();
        let input = prepare(&simpl, eta);
        let bounds = scene.bbox();
        let maps: Vec<TrapMap> = (0..ds.m)
            .into_par_iter()
            .map(|k| TrapMap::build(&input, &ds, k, bounds, seed, eta))
            .collect::<Result<_, _>>()
            .map_err(|e| EngineError::Internal(format!("trapezoidal map: {e}")))?;

        // Face adjacencies: anchor pairs, wall segments, obstacle pairs.
        let mut zero_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut walls: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        let mut obstacle_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for map in &maps {
            let up = ds.dir(map.k);
            for adj in map.face_adjacencies() {
                let key = pair(adj.lower, adj.upper);
                let (za, zb) = (kinds[key.0] == RegionKind::Zero, kinds[key.1] == RegionKind::Zero);
                if za && zb {
                    zero_pairs.insert(key);
                }
                if !za && !zb {
                    obstacle_pairs.insert(key);
                }
                if !mixed {
                    continue;
                }
                for w in &adj.walls {
                    let ends = wall_landings(w, up, &shapes, eta).map(|l| {
                        l.map(|l| match l {
                            Landing::Emitter(id) => id,
                            Landing::Hit { region, location } => vs.add(region, location, SampleKind::Propagated),
                        })
                    });
                    if let [Some(x), Some(y)] = ends {
                        if x != y {
                            walls.entry(key).or_default().push(pair(x, y));
                        }
                    }
                }
            }
        }
        let propagated = vs.points.len() - original;

        for &(a, b) in &obstacle_pairs {
            match common_tangents(&shapes[a], &shapes[b], eta) {
                Ok(ts) => {
                    for t in ts {
                        vs.add(a, t.point_on_a, SampleKind::Tangent);
                        vs.add(b, t.point_on_b, SampleKind::Tangent);
                    }
                }
                Err(e) => debug!("tangents of {a} and {b} skipped: {e}"),
            }
        }
        let tangent = vs.points.len() - original - propagated;

        let VertexSet { points: vertices, by_region, .. } = vs;
        let region_points: Vec<Vec<usize>> = by_region
            .into_iter()
            .enumerate()
            .map(|(r, mut ids)| {
                ids.sort_by(|&x, &y| {
                    frames[r].key(vertices[x].location).total_cmp(&frames[r].key(vertices[y].location)).then(x.cmp(&y))
                });
                ids
            })
            .collect();

        let obstacle_polys: Vec<Shape> = (0..n)
            .filter(|&r| kinds[r] == RegionKind::Obstacle)
            .map(|r| {
                let pts: Vec<(usize, Point)> = region_points[r].iter().map(|&i| (i, vertices[i].location)).collect();
                Shape::Polygon(simplify(r, &frames[r], &pts, eta).polygon)
            })
            .collect();
        let theta = ThetaGraph::build(
            vertices.iter().map(|v| ThetaVertex { location: v.location, region: v.region }).collect(),
            ds.theta,
            ds.m,
            obstacle_polys,
            eta,
        );

        let mut graph = Graph::new(vertices.len());
        let obstacles: Vec<usize> = (0..n).filter(|&r| kinds[r] == RegionKind::Obstacle).collect();
        let blocked = |p: Point, q: Point| {
            let sb = Bbox::from_points([p, q]);
            obstacles
                .iter()
                .any(|&o| shapes[o].bbox().overlaps(&sb) && shapes[o].segment_crosses_interior(p, q, eta))
        };
        for &(a, b) in &zero_pairs {
            let sep = shape_distance(&shapes[a], &shapes[b], eta).map_err(|e| EngineError::Internal(e.to_string()))?;
            if mixed && blocked(sep.p, sep.q) {
                // Fall back to the face walls.
                continue;
            }
            let (aa, ab) = (anchors[a].unwrap(), anchors[b].unwrap());
            graph.add_edge(Edge {
                a: aa,
                b: ab,
                weight: sep.dist,
                provenance: Provenance::Adjacency,
                geometry: EdgeGeometry::Via { region_a: Some(a), p: sep.p, q: sep.q, region_b: Some(b) },
            });
        }
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (&(a, b), list) in &walls {
            let both_zero = kinds[a] == RegionKind::Zero && kinds[b] == RegionKind::Zero;
            if both_zero {
                let sep = shape_distance(&shapes[a], &shapes[b], eta).map_err(|e| EngineError::Internal(e.to_string()))?;
                if !blocked(sep.p, sep.q) {
                    continue;
                }
            }
            for &(x, y) in list {
                if seen.insert((x, y)) {
                    graph.add_edge(Edge {
                        a: x,
                        b: y,
                        weight: vertices[x].location.dist(vertices[y].location),
                        provenance: Provenance::Wall,
                        geometry: EdgeGeometry::Straight,
                    });
                }
            }
        }
        for (a, b, w) in theta.edges() {
            graph.add_edge(Edge { a, b, weight: w, provenance: Provenance::Theta, geometry: EdgeGeometry::Straight });
        }
        for &r in &obstacles {
            add_boundary_edges(&mut graph, &|i| vertices[i].location, &region_points[r], r, &[]);
        }
        for (r, anchor) in anchors.iter().enumerate() {
            let Some(anchor) = *anchor else { continue };
            for &p in &region_points[r] {
                if p != anchor {
                    graph.add_edge(Edge {
                        a: p,
                        b: anchor,
                        weight: 0.0,
                        provenance: Provenance::Anchor,
                        geometry: EdgeGeometry::Inside(r),
                    });
                }
            }
        }
        for (x, y) in coincident_pairs(&vertices, eta) {
            graph.add_edge(Edge {
                a: x,
                b: y,
                weight: vertices[x].location.dist(vertices[y].location),
                provenance: Provenance::Contact,
                geometry: EdgeGeometry::Straight,
            });
        }

        let mut by_provenance = BTreeMap::new();
        for e in &graph.edges {
            *by_provenance.entry(e.provenance).or_insert(0) += 1;
        }
        let stats = BuildStats {
            vertices: vertices.len(),
            edges: graph.edges.len(),
            original,
            propagated,
            tangent,
            maps: maps.len(),
            by_provenance,
        };
        debug!("built: {} vertices, {} edges, m = {}", stats.vertices, stats.edges, ds.m);
        Ok(StructureB {
            scene: scene.clone(),
            eta,
            ds,
            maps,
            vertices,
            graph,
            theta,
            anchors,
            stats,
            shapes,
            frames,
            region_points,
        })
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn kind(&self, region: usize) -> RegionKind {
        self.scene.regions[region].kind
    }

    /// Sample point ids of a region in boundary order.
    pub fn region_points(&self, region: usize) -> &[usize] {
        &self.region_points[region]
    }

    pub fn frame(&self, region: usize) -> &BoundaryFrame {
        &self.frames[region]
    }
}

/// Edges between boundary-consecutive sample points of an obstacle. With a
/// non-empty `only`, just the pairs touching one of those ids.
pub(crate) fn add_boundary_edges<F>(graph: &mut F, loc: &dyn Fn(usize) -> Point, ids: &[usize], region: usize, only: &[usize])
where
    F: EdgeSink,
{
    let k = ids.len();
    if k < 2 {
        return;
    }
    let pairs = if k == 2 { 1 } else { k };
    for i in 0..pairs {
        let (x, y) = (ids[i], ids[(i + 1) % k]);
        if !only.is_empty() && !only.contains(&x) && !only.contains(&y) {
            continue;
        }
        graph.push(Edge {
            a: x,
            b: y,
            weight: loc(x).dist(loc(y)),
            provenance: Provenance::Boundary,
            geometry: EdgeGeometry::Arc { region, ccw_from: x },
        });
    }
}

pub(crate) trait EdgeSink {
    fn push(&mut self, e: Edge);
}

impl EdgeSink for Graph {
    fn push(&mut self, e: Edge) {
        self.add_edge(e);
    }
}

impl EdgeSink for Overlay<'_> {
    fn push(&mut self, e: Edge) {
        self.add_edge(e);
    }
}

/// Pairs of vertices from different regions within `tol` of each other.
fn coincident_pairs(vertices: &[SamplePoint], tol: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].location.x.total_cmp(&vertices[b].location.x));
    let mut out = Vec::new();
    for i in 0..order.len() {
        let a = &vertices[order[i]];
        for &j in &order[i + 1..] {
            let b = &vertices[j];
            if b.location.x - a.location.x > tol {
                break;
            }
            if a.region != b.region && a.location.dist(b.location) <= tol {
                out.push(pair(a.id, b.id));
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    fn sq(x: f64, y: f64, s: f64) -> Polygon {
        Polygon::new(vec![Point::new(x, y), Point::new(x + s, y), Point::new(x + s, y + s), Point::new(x, y + s)]).unwrap()
    }

    #[test]
    fn empty_scene() {
        let b = StructureB::new(&Scene::new(0.5)).unwrap();
        assert_eq!((b.stats.vertices, b.stats.edges), (0, 0));
        let p = b.query(Point::new(0.0, 0.0), Point::new(3.0, 4.0)).unwrap();
        assert!((p.weight - 5.0).abs() < 1e-12);
        assert_eq!(p.segments.len(), 1);
    }

    #[test]
    fn single_square_anchor_star() {
        let b = StructureB::new(&Scene::new(0.5).with_zero(sq(0.0, 0.0, 1.0))).unwrap();
        assert_eq!(b.stats.vertices, 4);
        assert_eq!(b.stats.edges, 3);
        assert_eq!(b.stats.by_provenance.get(&Provenance::Anchor), Some(&3));
    }

    #[test]
    fn same_region_is_free() {
        let b = StructureB::new(&Scene::new(0.5).with_zero(sq(0.0, 0.0, 2.0))).unwrap();
        let p = b.query(Point::new(0.5, 0.5), Point::new(1.5, 1.2)).unwrap();
        assert_eq!(p.weight, 0.0);
    }

    #[test]
    fn two_squares_one_adjacency() {
        let b = StructureB::new(&Scene::new(0.5).with_zero(sq(0.0, 0.0, 1.0)).with_zero(sq(3.0, 0.0, 1.0))).unwrap();
        assert_eq!(b.stats.by_provenance.get(&Provenance::Adjacency), Some(&1));
        let adj = b.graph.edges.iter().find(|e| e.provenance == Provenance::Adjacency).unwrap();
        assert!((adj.weight - 2.0).abs() < 1e-12);
        let p = b.query(Point::new(-1.0, 0.5), Point::new(5.0, 0.5)).unwrap();
        assert!((p.weight - 4.0).abs() < 1e-9, "{}", p.weight);
    }

    #[test]
    fn detour_around_obstacle() {
        let b = StructureB::new(&Scene::new(0.5).with_obstacle(sq(-1.0, -1.0, 2.0))).unwrap();
        let p = b.query(Point::new(-3.0, 0.0), Point::new(3.0, 0.0)).unwrap();
        let opt = 2.0 * 5f64.sqrt() + 2.0;
        assert!(p.weight >= opt - 1e-9 && p.weight <= 1.5 * opt + 1e-9, "{} vs {opt}", p.weight);
        assert!(b.query(Point::new(0.0, 0.0), Point::new(3.0, 0.0)).is_err());
    }
}
