//! s–t queries.

use std::collections::BTreeMap;

use super::realize::realize;
use super::{add_boundary_edges, dijkstra, Edge, EdgeGeometry, Overlay, Provenance, StructureB, WeightedPath};
use crate::error::{EngineError, TrapError};
use crate::geom::{point_shape_distance, point_tangents, Bbox, Point};
use crate::sampling::{first_hit, SampleKind, SamplePoint};
use crate::scene::RegionKind;

/// Private additions made while answering one query.
pub(super) struct QueryOverlay<'a> {
    pub b: &'a StructureB,
    pub graph: Overlay<'a>,
    pub extra: Vec<SamplePoint>,
    pub eta: f64,
}

impl<'a> QueryOverlay<'a> {
    pub fn vertex(&self, id: usize) -> &SamplePoint {
        let n = self.b.vertices.len();
        if id < n {
            &self.b.vertices[id]
        } else {
            &self.extra[id - n]
        }
    }

    fn new_vertex(&mut self, location: Point, kind: SampleKind, region: Option<usize>) -> usize {
        let id = self.graph.add_vertex();
        self.extra.push(SamplePoint { id, location, kind, region, extreme_for: Vec::new() });
        id
    }

    /// Sample point of `region` at `location`, merged with existing ones.
    fn region_point(&mut self, region: usize, location: Point, kind: SampleKind) -> (usize, bool) {
        let base = self.b.region_points(region).iter().copied();
        let extra = self.extra.iter().filter(|p| p.region == Some(region)).map(|p| p.id).collect::<Vec<_>>();
        for id in base.chain(extra) {
            if self.vertex(id).location.dist(location) <= self.eta {
                return (id, false);
            }
        }
        (self.new_vertex(location, kind, Some(region)), true)
    }

    fn edge(&mut self, a: usize, b: usize, weight: f64, provenance: Provenance, geometry: EdgeGeometry) {
        self.graph.add_edge(Edge { a, b, weight, provenance, geometry });
    }

    fn straight(&mut self, a: usize, b: usize, provenance: Provenance) {
        let w = self.vertex(a).location.dist(self.vertex(b).location);
        self.edge(a, b, w, provenance, EdgeGeometry::Straight);
    }

    fn blocked(&self, p: Point, q: Point) -> bool {
        let sb = Bbox::from_points([p, q]);
        self.b.scene.regions.iter().any(|r| {
            r.kind == RegionKind::Obstacle
                && r.shape.bbox().overlaps(&sb)
                && r.shape.segment_crosses_interior(p, q, self.eta)
        })
    }
}

impl StructureB {
    /// Approximate shortest path from `s` to `t`.
    pub fn query(&self, s: Point, t: Point) -> Result<WeightedPath, EngineError> {
        if !s.is_finite() || !t.is_finite() {
            return Err(EngineError::NonFinite);
        }
        let eta = self.scene.eta_with(&[s, t]).max(self.eta);
        for (i, r) in self.scene.regions.iter().enumerate() {
            if r.kind != RegionKind::Obstacle {
                continue;
            }
            for p in [s, t] {
                if r.shape.strictly_contains(p, eta) {
                    return Err(EngineError::InsideObstacle { x: p.x, y: p.y, region: i });
                }
            }
        }
        let mut q = QueryOverlay { b: self, graph: Overlay::new(&self.graph), extra: Vec::new(), eta };
        let sid = q.new_vertex(s, SampleKind::Query, None);
        let tid = q.new_vertex(t, SampleKind::Query, None);
        let mut boundary_new: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (id, p) in [(sid, s), (tid, t)] {
            self.attach(&mut q, id, p, &mut boundary_new);
        }

        // Θ insertion of the endpoints and every point added for them.
        let mut theta = self.theta.clone();
        let n = self.vertices.len();
        for i in 0..q.extra.len() {
            let v = q.extra[i].clone();
            let ins = theta.insert_point(v.location, v.region);
            debug_assert_eq!(ins.id, n + i);
            if let Some(m) = ins.merged {
                q.straight(ins.id, m, Provenance::Contact);
            }
            for (a, b, w) in ins.edges {
                q.edge(a, b, w, Provenance::Theta, EdgeGeometry::Straight);
            }
        }
        for (r, new_ids) in boundary_new {
            let mut ids: Vec<usize> = self.region_points(r).to_vec();
            ids.extend(new_ids.iter().copied());
            let frame = *self.frame(r);
            let locs: Vec<Point> = ids.iter().map(|&i| q.vertex(i).location).collect();
            let mut order: Vec<usize> = (0..ids.len()).collect();
            order.sort_by(|&x, &y| frame.key(locs[x]).total_cmp(&frame.key(locs[y])).then(ids[x].cmp(&ids[y])));
            let sorted: Vec<usize> = order.into_iter().map(|i| ids[i]).collect();
            let locs: Vec<Point> = (0..q.graph.n).map(|i| q.vertex(i).location).collect();
            add_boundary_edges(&mut q.graph, &|i| locs[i], &sorted, r, &new_ids);
        }

        let gp = dijkstra(&q.graph, sid, tid).ok_or(EngineError::NoPath)?;
        Ok(realize(&q, &gp))
    }

    /// Connect a query endpoint per direction map.
    fn attach(&self, q: &mut QueryOverlay<'_>, id: usize, p: Point, boundary_new: &mut BTreeMap<usize, Vec<usize>>) {
        let mixed = self.scene.has_obstacles();
        let eta = q.eta;
        for (r, region) in self.scene.regions.iter().enumerate() {
            if region.kind == RegionKind::Zero && region.shape.contains(p, eta) {
                let a = self.anchors[r].expect("0-region anchor");
                q.edge(id, a, 0.0, Provenance::Query, EdgeGeometry::Inside(r));
            }
        }
        let mut linked: Vec<usize> = Vec::new();
        let mut tangents_done: Vec<usize> = Vec::new();
        for map in &self.maps {
            let f = match map.locate(p) {
                Ok(f) => f,
                Err(TrapError::InsideRegion(_)) | Err(TrapError::Walk) => continue,
            };
            let face = &map.faces[f];
            let up = self.ds.dir(map.k);
            for (side, dir) in [(face.bottom_region, -up), (face.top_region, up)] {
                let Some(r) = side else { continue };
                if mixed {
                    if let Some((h, loc, _)) = first_hit(self.shapes(), p, dir, &[], eta) {
                        let (x, fresh) = q.region_point(h, loc, SampleKind::Propagated);
                        q.straight(id, x, Provenance::Query);
                        if fresh {
                            self.hook_region_point(q, h, x, boundary_new);
                        }
                        if self.kind(h) == RegionKind::Obstacle && !tangents_done.contains(&h) {
                            tangents_done.push(h);
                            if let Ok(ts) = point_tangents(p, &self.shapes()[h], eta) {
                                for tp in ts {
                                    let (y, fresh) = q.region_point(h, tp, SampleKind::Tangent);
                                    if fresh {
                                        self.hook_region_point(q, h, y, boundary_new);
                                    }
                                    if !q.blocked(p, tp) {
                                        q.straight(id, y, Provenance::Query);
                                    }
                                }
                            }
                        }
                    }
                }
                if self.kind(r) == RegionKind::Zero && !linked.contains(&r) {
                    linked.push(r);
                    let sep = point_shape_distance(p, &self.shapes()[r]);
                    if mixed && q.blocked(p, sep.q) {
                        continue;
                    }
                    let a = self.anchors[r].expect("0-region anchor");
                    q.edge(
                        id,
                        a,
                        sep.dist,
                        Provenance::Query,
                        EdgeGeometry::Via { region_a: None, p, q: sep.q, region_b: Some(r) },
                    );
                }
            }
        }
    }

    /// Anchor star or boundary bookkeeping for a sample point added by a query.
    fn hook_region_point(&self, q: &mut QueryOverlay<'_>, r: usize, x: usize, boundary_new: &mut BTreeMap<usize, Vec<usize>>) {
        match self.kind(r) {
            RegionKind::Zero => {
                let a = self.anchors[r].expect("0-region anchor");
                q.edge(x, a, 0.0, Provenance::Anchor, EdgeGeometry::Inside(r));
            }
            RegionKind::Obstacle => boundary_new.entry(r).or_default().push(x),
        }
    }
}
