//! Weighted undirected graphs, copy-on-write overlays and Dijkstra.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::geom::Point;

/// Which construction step produced an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Anchor,
    Adjacency,
    Wall,
    Theta,
    Boundary,
    Contact,
    Query,
}

impl Provenance {
    pub const ALL: [Provenance; 7] = [
        Provenance::Anchor,
        Provenance::Adjacency,
        Provenance::Wall,
        Provenance::Theta,
        Provenance::Boundary,
        Provenance::Contact,
        Provenance::Query,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::Anchor => "anchor",
            Provenance::Adjacency => "adjacency",
            Provenance::Wall => "wall",
            Provenance::Theta => "theta",
            Provenance::Boundary => "boundary",
            Provenance::Contact => "contact",
            Provenance::Query => "query",
        }
    }
}

/// How an edge is realized in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EdgeGeometry {
    /// Straight segment between the endpoints.
    Straight,
    /// Straight segment inside a 0-region.
    Inside(usize),
    /// `a` to `p` inside `region_a`, `p` to `q` straight, `q` to `b` inside
    /// `region_b`.
    Via { region_a: Option<usize>, p: Point, q: Point, region_b: Option<usize> },
    /// Along an obstacle boundary, counter-clockwise from `ccw_from`.
    Arc { region: usize, ccw_from: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
    pub provenance: Provenance,
    pub geometry: EdgeGeometry,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Read access shared by graphs and overlays. Edge references are global
/// indices.
pub trait GraphView {
    fn vertex_count(&self) -> usize;
    fn edge(&self, e: usize) -> &Edge;
    fn incident(&self, v: usize, f: &mut dyn FnMut(usize));
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn add_edge(&mut self, e: Edge) -> usize {
        debug_assert!(e.weight >= 0.0 && e.a < self.n && e.b < self.n);
        let id = self.edges.len();
        self.adj[e.a].push(id);
        if e.b != e.a {
            self.adj[e.b].push(id);
        }
        self.edges.push(e);
        id
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

impl GraphView for Graph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    fn incident(&self, v: usize, f: &mut dyn FnMut(usize)) {
        for &e in &self.adj[v] {
            f(e);
        }
    }
}

/// Extra vertices and edges layered over an immutable base graph.
#[derive(Clone, Debug)]
pub struct Overlay<'a> {
    pub base: &'a Graph,
    pub n: usize,
    pub edges: Vec<Edge>,
    adj: HashMap<usize, Vec<usize>>,
}

impl<'a> Overlay<'a> {
    pub fn new(base: &'a Graph) -> Overlay<'a> {
        Overlay { base, n: base.n, edges: Vec::new(), adj: HashMap::new() }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, e: Edge) -> usize {
        debug_assert!(e.weight >= 0.0 && e.a < self.n && e.b < self.n);
        let id = self.base.edges.len() + self.edges.len();
        self.adj.entry(e.a).or_default().push(id);
        if e.b != e.a {
            self.adj.entry(e.b).or_default().push(id);
        }
        self.edges.push(e);
        id
    }
}

impl GraphView for Overlay<'_> {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn edge(&self, e: usize) -> &Edge {
        let nb = self.base.edges.len();
        if e < nb {
            &self.base.edges[e]
        } else {
            &self.edges[e - nb]
        }
    }

    fn incident(&self, v: usize, f: &mut dyn FnMut(usize)) {
        if v < self.base.n {
            self.base.incident(v, f);
        }
        if let Some(list) = self.adj.get(&v) {
            for &e in list {
                f(e);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct State {
    dist: f64,
    v: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, o: &Self) -> Ordering {
        // Min-heap on (dist, v).
        o.dist.total_cmp(&self.dist).then_with(|| o.v.cmp(&self.v))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A shortest path as a vertex sequence and the edges between them.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphPath {
    pub weight: f64,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Exact shortest path; among equal-weight relaxations the first found
/// wins, and the queue pops ties by vertex id.
pub fn dijkstra<G: GraphView + ?Sized>(g: &G, source: usize, target: usize) -> Option<GraphPath> {
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(State { dist: 0.0, v: source });
    while let Some(State { dist: d, v }) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        if v == target {
            break;
        }
        g.incident(v, &mut |e| {
            let edge = g.edge(e);
            let u = edge.other(v);
            let nd = d + edge.weight;
            if nd < dist[u] {
                dist[u] = nd;
                via[u] = Some(e);
                heap.push(State { dist: nd, v: u });
            }
        });
    }
    if !dist[target].is_finite() {
        return None;
    }
    let mut vertices = vec![target];
    let mut edges = Vec::new();
    let mut v = target;
    while v != source {
        let e = via[v]?;
        edges.push(e);
        v = g.edge(e).other(v);
        vertices.push(v);
    }
    vertices.reverse();
    edges.reverse();
    Some(GraphPath { weight: dist[target], vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize, w: f64) -> Edge {
        Edge { a, b, weight: w, provenance: Provenance::Theta, geometry: EdgeGeometry::Straight }
    }

    #[test]
    fn single_edge() {
        let mut g = Graph::new(2);
        g.add_edge(e(0, 1, 2.5));
        let p = dijkstra(&g, 0, 1).unwrap();
        assert_eq!(p.weight, 2.5);
        assert_eq!(p.vertices, vec![0, 1]);
    }

    #[test]
    fn disconnected() {
        let g = Graph::new(3);
        assert!(dijkstra(&g, 0, 2).is_none());
    }

    #[test]
    fn overlay_leaves_base() {
        let mut g = Graph::new(2);
        g.add_edge(e(0, 1, 5.0));
        let mut o = Overlay::new(&g);
        let x = o.add_vertex();
        o.add_edge(e(0, x, 1.0));
        o.add_edge(e(x, 1, 1.0));
        assert_eq!(dijkstra(&o, 0, 1).unwrap().weight, 2.0);
        assert_eq!(dijkstra(&g, 0, 1).unwrap().weight, 5.0);
    }
}
