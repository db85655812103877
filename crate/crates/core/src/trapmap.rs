//! Trapezoidal maps over simplified regions, one per direction.
//!
//! Each map lives in a frame rotated so that `r(k)` points up; walls are the
//! vertical extensions of that frame. The map is built by randomized
//! incremental insertion with a history DAG for point location. Ties in x are
//! broken lexicographically by `(x, y)`.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::TrapError;
use crate::geom::{orient, point_segment_distance, Bbox, Point};
use crate::sampling::{DirectionSet, SimplifiedRegion};

/// Which side of a segment (left-to-right in the rotated frame) holds the
/// owning region's interior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
    /// Segment region with no interior.
    Both,
}

#[derive(Clone, Debug)]
pub struct TPoint {
    /// Rotated coordinates.
    pub p: Point,
    /// Original coordinates.
    pub orig: Point,
    /// `(region, sample id)` pairs welded at this location.
    pub owners: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct TSeg {
    pub left: usize,
    pub right: usize,
    pub owners: Vec<(usize, Side)>,
}

#[derive(Clone, Debug)]
struct Trap {
    top: Option<usize>,
    bottom: Option<usize>,
    leftp: Option<usize>,
    rightp: Option<usize>,
    ul: Option<usize>,
    ll: Option<usize>,
    ur: Option<usize>,
    lr: Option<usize>,
    node: usize,
    alive: bool,
}

#[derive(Clone, Debug)]
enum Node {
    X(usize, usize, usize),
    Y(usize, usize, usize),
    Leaf(usize),
}

/// A trapezoid of the final map.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub id: usize,
    pub top: Option<usize>,
    pub bottom: Option<usize>,
    pub leftp: Option<usize>,
    pub rightp: Option<usize>,
    /// Region bordering the face from above (none for the frame).
    pub top_region: Option<usize>,
    pub bottom_region: Option<usize>,
    /// Inside a simplified region.
    pub interior: bool,
}

/// A vertical wall of a face, in original coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Wall {
    /// Location of the emitting point.
    pub at: Point,
    pub emitters: Vec<(usize, usize)>,
    /// Where the wall meets the face's top and bottom.
    pub top: Point,
    pub bottom: Point,
    pub up_region: Option<usize>,
    pub down_region: Option<usize>,
}

/// Two regions bordering a common face, or touching.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceAdjacency {
    pub lower: usize,
    pub upper: usize,
    /// `None` for a contact between touching regions.
    pub face: Option<usize>,
    pub walls: Vec<Wall>,
}

#[derive(Clone, Debug)]
pub struct TrapMap {
    pub k: usize,
    /// `r(k)`; rotation maps it to `(0, 1)`.
    pub up: Point,
    pub points: Vec<TPoint>,
    pub segs: Vec<TSeg>,
    pub faces: Vec<Face>,
    /// Region pairs that touch (zero-width adjacency).
    pub contacts: Vec<(usize, usize)>,
    /// Frame in rotated coordinates.
    pub frame: Bbox,
    nodes: Vec<Node>,
    traps: Vec<Trap>,
    face_of_trap: Vec<usize>,
    tol: f64,
}

/// Owners of a segment: region id and interior side.
pub type SegmentOwners = Vec<(usize, Option<bool>)>;

/// Cleaned planar input shared by all directions.
#[derive(Clone, Debug)]
pub struct PlanarInput {
    pub points: Vec<(Point, Vec<(usize, usize)>)>,
    pub segs: Vec<(usize, usize, SegmentOwners)>,
    pub contacts: Vec<(usize, usize)>,
}

/// Weld vertices within `tol`, split segments at touching vertices and merge
/// duplicate segments. Segment owners carry `Some(true)` when the region's
/// interior is to the left of `a → b`, `None` for segment regions.
pub fn prepare(regions: &[SimplifiedRegion], tol: f64) -> PlanarInput {
    let mut raw: Vec<(Point, usize, usize)> = Vec::new();
    let mut start = Vec::with_capacity(regions.len());
    for r in regions {
        start.push(raw.len());
        for (&id, &p) in r.ids.iter().zip(r.polygon.vertices()) {
            raw.push((p, r.region, id));
        }
    }
    // Weld by sweep in x.
    let n = raw.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw[a].0.x.total_cmp(&raw[b].0.x));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for i in 0..n {
        let a = order[i];
        for &b in &order[i + 1..] {
            if raw[b].0.x - raw[a].0.x > tol {
                break;
            }
            if raw[a].0.dist(raw[b].0) <= tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut cluster_of: HashMap<usize, usize> = HashMap::new();
    let mut points: Vec<(Point, Vec<(usize, usize)>)> = Vec::new();
    let mut vid = vec![0; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        let c = *cluster_of.entry(r).or_insert_with(|| {
            points.push((raw[r].0, Vec::new()));
            points.len() - 1
        });
        vid[i] = c;
        points[c].1.push((raw[i].1, raw[i].2));
    }
    let mut contacts: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (_, owners) in &points {
        for a in owners {
            for b in owners {
                if a.0 < b.0 {
                    contacts.insert((a.0, b.0));
                }
            }
        }
    }
    // Raw segments.
    let mut segs: Vec<(usize, usize, usize, Option<bool>)> = Vec::new();
    for (ri, r) in regions.iter().enumerate() {
        let k = r.polygon.len();
        let s = start[ri];
        match k {
            0 | 1 => {}
            2 => {
                if vid[s] != vid[s + 1] {
                    segs.push((vid[s], vid[s + 1], r.region, None));
                }
            }
            _ => {
                for i in 0..k {
                    let (a, b) = (vid[s + i], vid[s + (i + 1) % k]);
                    if a != b {
                        segs.push((a, b, r.region, Some(true)));
                    }
                }
            }
        }
    }
    // Split at vertices lying on other segments.
    let mut split: Vec<(usize, usize, usize, Option<bool>)> = Vec::new();
    for &(a, b, reg, side) in &segs {
        let pa = points[a].0;
        let pb = points[b].0;
        let bb = Bbox::from_points([pa, pb]).inflate(tol);
        let d = pb - pa;
        let mut on: Vec<(f64, usize)> = Vec::new();
        for (c, (pc, owners)) in points.iter().enumerate() {
            if c == a || c == b || !bb.contains(*pc) {
                continue;
            }
            if point_segment_distance(*pc, pa, pb) <= tol {
                let t = (*pc - pa).dot(d) / d.norm2();
                if t > 0.0 && t < 1.0 {
                    on.push((t, c));
                    for o in owners {
                        if o.0 != reg {
                            contacts.insert((o.0.min(reg), o.0.max(reg)));
                        }
                    }
                }
            }
        }
        on.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut prev = a;
        for (_, c) in on {
            split.push((prev, c, reg, side));
            prev = c;
        }
        split.push((prev, b, reg, side));
    }
    // Merge duplicates.
    let mut by_key: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out: Vec<(usize, usize, SegmentOwners)> = Vec::new();
    for (a, b, reg, side) in split {
        let key = (a.min(b), a.max(b));
        // Interior-left relative to the canonical direction min → max.
        let side = side.map(|left| if a < b { left } else { !left });
        match by_key.get(&key) {
            Some(&i) => {
                for o in &out[i].2 {
                    if o.0 != reg {
                        contacts.insert((o.0.min(reg), o.0.max(reg)));
                    }
                }
                out[i].2.push((reg, side));
            }
            None => {
                by_key.insert(key, out.len());
                out.push((key.0, key.1, vec![(reg, side)]));
            }
        }
    }
    PlanarInput { points, segs: out, contacts: contacts.into_iter().collect() }
}

impl TrapMap {
    /// Build the map for direction `k`. `bounds` is the scene bounding box in
    /// original coordinates.
    pub fn build(
        input: &PlanarInput,
        ds: &DirectionSet,
        k: usize,
        bounds: Bbox,
        seed: u64,
        tol: f64,
    ) -> Result<TrapMap, TrapError> {
        let up = ds.dir(k);
        let points: Vec<TPoint> = input
            .points
            .iter()
            .map(|(p, owners)| TPoint { p: rotate_in(up, *p), orig: *p, owners: owners.clone() })
            .collect();
        let mut map = TrapMap {
            k,
            up,
            points,
            segs: Vec::with_capacity(input.segs.len()),
            faces: Vec::new(),
            contacts: input.contacts.clone(),
            frame: Bbox::EMPTY,
            nodes: Vec::new(),
            traps: Vec::new(),
            face_of_trap: Vec::new(),
            tol,
        };
        for (a, b, owners) in &input.segs {
            let (l, r, flip) = if map.lex_less(*a, *b) { (*a, *b, false) } else { (*b, *a, true) };
            let owners = owners
                .iter()
                .map(|&(reg, left)| {
                    let side = match left {
                        None => Side::Both,
                        // Left of the travel direction is "above" when travelling rightward.
                        Some(l) => {
                            if l != flip {
                                Side::Above
                            } else {
                                Side::Below
                            }
                        }
                    };
                    (reg, side)
                })
                .collect();
            map.segs.push(TSeg { left: l, right: r, owners });
        }
        map.frame = frame_box(&map.points, bounds, up);
        map.traps.push(Trap {
            top: None,
            bottom: None,
            leftp: None,
            rightp: None,
            ul: None,
            ll: None,
            ur: None,
            lr: None,
            node: 0,
            alive: true,
        });
        map.nodes.push(Node::Leaf(0));
        let mut order: Vec<usize> = (0..map.segs.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        order.shuffle(&mut rng);
        for s in order {
            map.insert(s)?;
        }
        map.finish();
        Ok(map)
    }

    #[inline]
    fn pt(&self, i: usize) -> Point {
        self.points[i].p
    }

    #[inline]
    fn lex_less(&self, a: usize, b: usize) -> bool {
        lex_less_pt(self.pt(a), self.pt(b), a, b)
    }

    /// Point strictly above the supporting line of segment `s`.
    #[inline]
    fn above(&self, s: usize, z: Point) -> bool {
        let sg = &self.segs[s];
        orient(self.pt(sg.left), self.pt(sg.right), z) > 0.0
    }

    fn locate_endpoint(&self, p: usize, q: usize) -> usize {
        let mut node = 0;
        loop {
            match self.nodes[node] {
                Node::Leaf(t) => return t,
                Node::X(x, l, r) => {
                    node = if p == x || !self.lex_less(p, x) { r } else { l };
                }
                Node::Y(s, a, b) => {
                    let sg = &self.segs[s];
                    let (sl, sr) = (self.pt(sg.left), self.pt(sg.right));
                    let mut o = if sg.left == p { 0.0 } else { orient(sl, sr, self.pt(p)) };
                    if o == 0.0 {
                        o = orient(sl, sr, self.pt(q));
                    }
                    node = if o > 0.0 { a } else { b };
                }
            }
        }
    }

    fn new_trap(&mut self, top: Option<usize>, bottom: Option<usize>, leftp: Option<usize>, rightp: Option<usize>) -> usize {
        let id = self.traps.len();
        let node = self.nodes.len();
        self.nodes.push(Node::Leaf(id));
        self.traps.push(Trap { top, bottom, leftp, rightp, ul: None, ll: None, ur: None, lr: None, node, alive: true });
        id
    }

    fn insert(&mut self, s: usize) -> Result<(), TrapError> {
        let (p, q) = (self.segs[s].left, self.segs[s].right);
        let d0 = self.locate_endpoint(p, q);
        let mut crossed = vec![d0];
        loop {
            let cur = *crossed.last().unwrap();
            let t = &self.traps[cur];
            match t.rightp {
                Some(r) if self.lex_less(r, q) => {
                    let next = if self.above(s, self.pt(r)) { t.lr } else { t.ur };
                    let next = next.ok_or(TrapError::Walk)?;
                    if !self.traps[next].alive || crossed.len() > self.traps.len() {
                        return Err(TrapError::Walk);
                    }
                    crossed.push(next);
                }
                _ => break,
            }
        }
        let first = crossed[0];
        let last = *crossed.last().unwrap();
        let mut fresh: Vec<usize> = Vec::new();
        let left_piece = if self.traps[first].leftp != Some(p) {
            let (tp, bt, lp) = (self.traps[first].top, self.traps[first].bottom, self.traps[first].leftp);
            let t = self.new_trap(tp, bt, lp, Some(p));
            fresh.push(t);
            Some(t)
        } else {
            None
        };
        let right_piece = if self.traps[last].rightp != Some(q) {
            let (tp, bt, rp) = (self.traps[last].top, self.traps[last].bottom, self.traps[last].rightp);
            let t = self.new_trap(tp, bt, Some(q), rp);
            fresh.push(t);
            Some(t)
        } else {
            None
        };
        let mut up_of = Vec::with_capacity(crossed.len());
        let mut lo_of = Vec::with_capacity(crossed.len());
        let mut cur_up = self.new_trap(self.traps[first].top, Some(s), Some(p), None);
        let mut cur_lo = self.new_trap(Some(s), self.traps[first].bottom, Some(p), None);
        fresh.push(cur_up);
        fresh.push(cur_lo);
        for i in 0..crossed.len() {
            up_of.push(cur_up);
            lo_of.push(cur_lo);
            if i + 1 < crossed.len() {
                let r = self.traps[crossed[i]].rightp.unwrap();
                let nxt = crossed[i + 1];
                if self.above(s, self.pt(r)) {
                    self.traps[cur_up].rightp = Some(r);
                    cur_up = self.new_trap(self.traps[nxt].top, Some(s), Some(r), None);
                    fresh.push(cur_up);
                } else {
                    self.traps[cur_lo].rightp = Some(r);
                    cur_lo = self.new_trap(Some(s), self.traps[nxt].bottom, Some(r), None);
                    fresh.push(cur_lo);
                }
            }
        }
        self.traps[cur_up].rightp = Some(q);
        self.traps[cur_lo].rightp = Some(q);

        // History DAG: each crossed leaf becomes an internal node.
        let nc = crossed.len();
        for (i, &d) in crossed.iter().enumerate() {
            let leaf = |m: &Self, t: usize| m.traps[t].node;
            let y = Node::Y(s, leaf(self, up_of[i]), leaf(self, lo_of[i]));
            let mut top_node = y;
            if i == nc - 1 {
                if let Some(rp) = right_piece {
                    let yn = self.nodes.len();
                    self.nodes.push(top_node);
                    top_node = Node::X(q, yn, self.traps[rp].node);
                }
            }
            if i == 0 {
                if let Some(lp) = left_piece {
                    let inner = self.nodes.len();
                    self.nodes.push(top_node);
                    top_node = Node::X(p, self.traps[lp].node, inner);
                }
            }
            let at = self.traps[d].node;
            self.nodes[at] = top_node;
        }

        // Neighbor links: recompute from (top, bottom, leftp, rightp) identity.
        let dead: HashSet<usize> = crossed.iter().copied().collect();
        let mut old: Vec<usize> = Vec::new();
        for &d in &crossed {
            let t = &self.traps[d];
            for nb in [t.ul, t.ll, t.ur, t.lr].into_iter().flatten() {
                if !dead.contains(&nb) && !old.contains(&nb) {
                    old.push(nb);
                }
            }
        }
        for &d in &crossed {
            self.traps[d].alive = false;
        }
        let mut cands = fresh.clone();
        cands.extend(old.iter().copied());
        for &t in &fresh {
            let (mut ul, mut ll, mut ur, mut lr) = (None, None, None, None);
            let me = self.traps[t].clone();
            for &c in &cands {
                if c == t {
                    continue;
                }
                let o = &self.traps[c];
                if me.leftp.is_some() && o.rightp == me.leftp {
                    if o.top == me.top {
                        ul = Some(c);
                    }
                    if o.bottom == me.bottom {
                        ll = Some(c);
                    }
                }
                if me.rightp.is_some() && o.leftp == me.rightp {
                    if o.top == me.top {
                        ur = Some(c);
                    }
                    if o.bottom == me.bottom {
                        lr = Some(c);
                    }
                }
            }
            let m = &mut self.traps[t];
            m.ul = ul;
            m.ll = ll;
            m.ur = ur;
            m.lr = lr;
        }
        for &c in &old {
            let o = self.traps[c].clone();
            let find = |m: &Self, want_left: bool, same_top: bool| -> Option<usize> {
                fresh.iter().copied().find(|&t| {
                    let f = &m.traps[t];
                    let joint = if want_left { f.rightp == o.leftp } else { f.leftp == o.rightp };
                    joint && if same_top { f.top == o.top } else { f.bottom == o.bottom }
                })
            };
            let fix = |m: &Self, cur: Option<usize>, want_left: bool, same_top: bool| -> Option<usize> {
                match cur {
                    Some(x) if dead.contains(&x) => find(m, want_left, same_top),
                    other => other,
                }
            };
            let ul = fix(self, o.ul, true, true);
            let ll = fix(self, o.ll, true, false);
            let ur = fix(self, o.ur, false, true);
            let lr = fix(self, o.lr, false, false);
            let m = &mut self.traps[c];
            m.ul = ul;
            m.ll = ll;
            m.ur = ur;
            m.lr = lr;
        }
        Ok(())
    }

    fn finish(&mut self) {
        self.face_of_trap = vec![usize::MAX; self.traps.len()];
        let mut faces = Vec::new();
        for (i, t) in self.traps.iter().enumerate() {
            if !t.alive {
                continue;
            }
            let id = faces.len();
            self.face_of_trap[i] = id;
            let mut interior = false;
            let mut top_region = None;
            let mut bottom_region = None;
            if let Some(s) = t.top {
                for &(r, side) in &self.segs[s].owners {
                    match side {
                        Side::Below => interior = true,
                        _ => {
                            top_region.get_or_insert(r);
                        }
                    }
                }
            }
            if let Some(s) = t.bottom {
                for &(r, side) in &self.segs[s].owners {
                    match side {
                        Side::Above => interior = true,
                        _ => {
                            bottom_region.get_or_insert(r);
                        }
                    }
                }
            }
            faces.push(Face {
                id,
                top: t.top,
                bottom: t.bottom,
                leftp: t.leftp,
                rightp: t.rightp,
                top_region,
                bottom_region,
                interior,
            });
        }
        self.faces = faces;
    }

    /// Rotate an original point into this map's frame.
    pub fn to_frame(&self, p: Point) -> Point {
        rotate_in(self.up, p)
    }

    pub fn from_frame(&self, p: Point) -> Point {
        rotate_out(self.up, p)
    }

    fn face_x_range(&self, f: &Face) -> (f64, f64) {
        let xl = f.leftp.map_or(self.frame.min.x, |i| self.pt(i).x);
        let xr = f.rightp.map_or(self.frame.max.x, |i| self.pt(i).x);
        (xl, xr)
    }

    /// y of segment `s` (or the frame) on the vertical through `z`.
    fn seg_y(&self, s: Option<usize>, z: Point, top: bool) -> f64 {
        match s {
            None => {
                if top {
                    self.frame.max.y
                } else {
                    self.frame.min.y
                }
            }
            Some(s) => {
                let a = self.pt(self.segs[s].left);
                let b = self.pt(self.segs[s].right);
                let dx = b.x - a.x;
                if dx == 0.0 {
                    z.y.clamp(a.y.min(b.y), a.y.max(b.y))
                } else {
                    let t = ((z.x - a.x) / dx).clamp(0.0, 1.0);
                    a.y + (b.y - a.y) * t
                }
            }
        }
    }

    /// Closed containment of a rotated point in a face, with tolerance.
    /// Faces bounded by the frame extend past it to infinity.
    pub fn face_contains_rotated(&self, f: usize, z: Point, tol: f64) -> bool {
        let f = &self.faces[f];
        let xl = f.leftp.map_or(f64::NEG_INFINITY, |i| self.pt(i).x);
        let xr = f.rightp.map_or(f64::INFINITY, |i| self.pt(i).x);
        if z.x < xl - tol || z.x > xr + tol {
            return false;
        }
        let top = f.top.map_or(f64::INFINITY, |_| self.seg_y(f.top, z, true));
        let bot = f.bottom.map_or(f64::NEG_INFINITY, |_| self.seg_y(f.bottom, z, false));
        z.y <= top + tol && z.y >= bot - tol
    }

    pub fn face_contains(&self, f: usize, p: Point, tol: f64) -> bool {
        self.face_contains_rotated(f, self.to_frame(p), tol)
    }

    /// Area of a face (rotation preserves area).
    pub fn face_area(&self, f: usize) -> f64 {
        let face = &self.faces[f];
        let (xl, xr) = self.face_x_range(face);
        let w = xr - xl;
        if w <= 0.0 {
            return 0.0;
        }
        let at = |x: f64| {
            let z = Point::new(x, 0.0);
            self.seg_y(face.top, z, true) - self.seg_y(face.bottom, z, false)
        };
        0.5 * w * (at(xl) + at(xr))
    }

    pub fn frame_area(&self) -> f64 {
        (self.frame.max.x - self.frame.min.x) * (self.frame.max.y - self.frame.min.y)
    }

    /// Face reached by descending the history DAG.
    fn descend(&self, z: Point) -> usize {
        let mut node = 0;
        loop {
            match self.nodes[node] {
                Node::Leaf(t) => return self.face_of_trap[t],
                Node::X(x, l, r) => {
                    let px = self.pt(x);
                    node = if (z.x, z.y) < (px.x, px.y) { l } else { r };
                }
                Node::Y(s, a, b) => {
                    node = if self.above(s, z) { a } else { b };
                }
            }
        }
    }

    /// Face containing `p` (original coordinates). Points on face boundaries
    /// resolve to the smallest free face id containing them.
    pub fn locate(&self, p: Point) -> Result<usize, TrapError> {
        let z = self.to_frame(p);
        let f = self.descend(z);
        let strict = self.face_contains_rotated(f, z, -self.tol);
        if strict && !self.faces[f].interior {
            return Ok(f);
        }
        let mut best: Option<usize> = None;
        let mut inside: Option<usize> = None;
        for face in &self.faces {
            if self.face_contains_rotated(face.id, z, self.tol) {
                if face.interior {
                    inside.get_or_insert(face.id);
                } else {
                    best = Some(best.map_or(face.id, |b: usize| b.min(face.id)));
                }
            }
        }
        match best {
            Some(b) => Ok(b),
            None => {
                let face = &self.faces[inside.unwrap_or(f)];
                if !face.interior {
                    return Ok(face.id);
                }
                let reg = face
                    .top
                    .and_then(|s| self.segs[s].owners.iter().find(|o| o.1 == Side::Below).map(|o| o.0))
                    .or_else(|| face.bottom.and_then(|s| self.segs[s].owners.iter().find(|o| o.1 == Side::Above).map(|o| o.0)))
                    .unwrap_or(usize::MAX);
                Err(TrapError::InsideRegion(reg))
            }
        }
    }

    fn wall(&self, f: &Face, pi: usize) -> Wall {
        let z = self.pt(pi);
        let top = Point::new(z.x, self.seg_y(f.top, z, true));
        let bot = Point::new(z.x, self.seg_y(f.bottom, z, false));
        Wall {
            at: self.points[pi].orig,
            emitters: self.points[pi].owners.clone(),
            top: self.from_frame(top),
            bottom: self.from_frame(bot),
            up_region: f.top.and(f.top_region),
            down_region: f.bottom.and(f.bottom_region),
        }
    }

    /// Walls of a face (left first).
    pub fn walls(&self, f: usize) -> Vec<Wall> {
        let face = &self.faces[f];
        [face.leftp, face.rightp].into_iter().flatten().map(|p| self.wall(face, p)).collect()
    }

    /// Free faces bordered above and below by distinct regions, followed by
    /// contacts between touching regions.
    pub fn face_adjacencies(&self) -> Vec<FaceAdjacency> {
        let mut out = Vec::new();
        for f in &self.faces {
            if f.interior {
                continue;
            }
            if let (Some(a), Some(b)) = (f.bottom_region, f.top_region) {
                if a != b {
                    out.push(FaceAdjacency { lower: a, upper: b, face: Some(f.id), walls: self.walls(f.id) });
                }
            }
        }
        for &(a, b) in &self.contacts {
            out.push(FaceAdjacency { lower: a, upper: b, face: None, walls: Vec::new() });
        }
        out
    }

    /// Region owning the top and bottom boundary of a face.
    pub fn face_regions(&self, f: usize) -> (Option<usize>, Option<usize>) {
        (self.faces[f].bottom_region, self.faces[f].top_region)
    }

    /// Segment endpoints in original coordinates.
    pub fn segment(&self, s: usize) -> (Point, Point) {
        (self.points[self.segs[s].left].orig, self.points[self.segs[s].right].orig)
    }
}

fn lex_less_pt(a: Point, b: Point, ia: usize, ib: usize) -> bool {
    (a.x, a.y, ia) < (b.x, b.y, ib)
}

/// Rotation taking `up` to `(0, 1)`.
#[inline]
pub fn rotate_in(up: Point, p: Point) -> Point {
    Point::new(up.y * p.x - up.x * p.y, up.x * p.x + up.y * p.y)
}

#[inline]
pub fn rotate_out(up: Point, p: Point) -> Point {
    Point::new(up.y * p.x + up.x * p.y, -up.x * p.x + up.y * p.y)
}

fn frame_box(points: &[TPoint], bounds: Bbox, up: Point) -> Bbox {
    let mut b = Bbox::from_points(points.iter().map(|p| p.p));
    if !bounds.is_empty() {
        let corners = [
            bounds.min,
            Point::new(bounds.max.x, bounds.min.y),
            bounds.max,
            Point::new(bounds.min.x, bounds.max.y),
        ];
        for c in corners {
            b.add(rotate_in(up, c));
        }
    }
    if b.is_empty() {
        return Bbox { min: Point::new(-1.0, -1.0), max: Point::new(1.0, 1.0) };
    }
    let c = b.center();
    let h = 1.5 * b.diagonal().max(1e-9);
    Bbox { min: c - Point::new(h, h), max: c + Point::new(h, h) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;
    use crate::sampling::choose_theta;

    fn square(region: usize, x: f64, y: f64, s: f64, first_id: usize) -> SimplifiedRegion {
        SimplifiedRegion {
            region,
            polygon: Polygon::from_ccw_unchecked(vec![
                Point::new(x, y),
                Point::new(x + s, y),
                Point::new(x + s, y + s),
                Point::new(x, y + s),
            ]),
            ids: (first_id..first_id + 4).collect(),
        }
    }

    fn build(regions: &[SimplifiedRegion], k: usize) -> TrapMap {
        let ds = choose_theta(0.5, false);
        let input = prepare(regions, 1e-9);
        let mut b = Bbox::EMPTY;
        for r in regions {
            b = b.union(&r.polygon.bbox());
        }
        TrapMap::build(&input, &ds, k, b, 7, 1e-9).unwrap()
    }

    #[test]
    fn empty_scene_single_face() {
        let m = build(&[], 0);
        assert_eq!(m.faces.len(), 1);
        assert_eq!(m.locate(Point::new(0.3, 0.1)).unwrap(), 0);
    }

    #[test]
    fn one_square_vertical() {
        let ds = choose_theta(0.5, false);
        let k = ds.m / 4;
        let m = build(&[square(0, 0.0, 0.0, 1.0, 0)], k);
        // Vertical edges leave zero-width slivers under lexicographic order.
        let free: Vec<_> = m.faces.iter().filter(|f| !f.interior && m.face_area(f.id) > 0.0).collect();
        assert_eq!(free.len(), 4);
        assert!(matches!(m.locate(Point::new(0.5, 0.5)), Err(TrapError::InsideRegion(0))));
    }

    #[test]
    fn stacked_squares_adjacent() {
        let ds = choose_theta(0.5, false);
        let k = ds.m / 4;
        let m = build(&[square(0, 0.0, 0.0, 1.0, 0), square(1, 0.2, 2.0, 1.0, 4)], k);
        let adj = m.face_adjacencies();
        assert!(!adj.is_empty());
        for a in &adj {
            assert_eq!((a.lower, a.upper), (0, 1));
        }
    }

    #[test]
    fn tiling_area() {
        let regs = [square(0, 0.0, 0.0, 1.0, 0), square(1, 0.5, 2.0, 1.0, 4), square(2, 3.0, 0.5, 0.7, 8)];
        for k in 0..8 {
            let m = build(&regs, k);
            let free: f64 = m.faces.iter().filter(|f| !f.interior).map(|f| m.face_area(f.id)).sum();
            let expect = m.frame_area() - 1.0 - 1.0 - 0.49;
            assert!((free - expect).abs() < 1e-9 * m.frame_area(), "k={k}: {free} vs {expect}");
        }
    }

    #[test]
    fn touching_squares_contact() {
        let regs = [square(0, 0.0, 0.0, 1.0, 0), square(1, 1.0, 0.0, 1.0, 4)];
        let m = build(&regs, 0);
        assert_eq!(m.contacts, vec![(0, 1)]);
        let total: f64 = m.faces.iter().filter(|f| !f.interior).map(|f| m.face_area(f.id)).sum();
        assert!((total - (m.frame_area() - 2.0)).abs() < 1e-9 * m.frame_area());
    }
}
