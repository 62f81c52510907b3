//! Combinatorial plane embeddings.
//!
//! A [`PlaneGraph`] is a connected multigraph together with a rotation
//! system: for every vertex the cyclic (counter-clockwise) order of its
//! incident edges. Faces are recovered by the usual traversal: from a dart
//! `u -> v`, the next dart on the same face is the successor of `v -> u` in
//! the rotation at `v`. The face of a dart is the face on its left.
//!
//! Planarity is checked with Euler's formula only; computing embeddings is
//! left to the caller.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// A directed copy of an edge. Dart `2e` leaves the first endpoint of edge
/// `e`, dart `2e + 1` leaves the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart(pub usize);

impl Dart {
    pub fn new(edge: EdgeId, from_second: bool) -> Dart {
        Dart(2 * edge + usize::from(from_second))
    }

    pub fn edge(self) -> EdgeId {
        self.0 / 2
    }

    pub fn rev(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn from_second(self) -> bool {
        self.0 & 1 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    num_vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
    rotation: Vec<Vec<Dart>>,
    rotation_pos: Vec<usize>,
    face_of: Vec<FaceId>,
    faces: Vec<Vec<Dart>>,
    outer: FaceId,
}

impl PlaneGraph {
    /// Builds an embedded graph. `rotation[v]` lists the ids of the edges at
    /// `v` in cyclic order; `outer_face` indexes faces in discovery order
    /// (darts scanned by increasing id).
    pub fn new(
        num_vertices: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Vec<Vec<EdgeId>>,
        outer_face: FaceId,
    ) -> Result<PlaneGraph> {
        let mut pg = Self::unchecked(num_vertices, edges, rotation)?;
        if outer_face >= pg.faces.len() {
            return Err(Error::BadOuterFace(outer_face));
        }
        pg.outer = outer_face;
        Ok(pg)
    }

    /// Like [`PlaneGraph::new`], with the outer face named by one of its darts.
    pub fn with_outer_dart(
        num_vertices: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Vec<Vec<EdgeId>>,
        outer_dart: Dart,
    ) -> Result<PlaneGraph> {
        let mut pg = Self::unchecked(num_vertices, edges, rotation)?;
        if outer_dart.0 >= pg.face_of.len() {
            return Err(Error::MalformedRotation(format!(
                "outer dart {} does not exist",
                outer_dart.0
            )));
        }
        pg.outer = pg.face_of[outer_dart.0];
        Ok(pg)
    }

    fn unchecked(
        num_vertices: usize,
        edges: Vec<(VertexId, VertexId)>,
        rotation: Vec<Vec<EdgeId>>,
    ) -> Result<PlaneGraph> {
        if num_vertices == 0 {
            return Err(Error::MalformedRotation("graph has no vertices".into()));
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= num_vertices {
                    return Err(Error::BadEndpoint { edge: e, vertex: w });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(e));
            }
        }
        if rotation.len() != num_vertices {
            return Err(Error::MalformedRotation(format!(
                "expected {} rotation lists, got {}",
                num_vertices,
                rotation.len()
            )));
        }

        let num_darts = 2 * edges.len();
        let mut seen = vec![false; num_darts];
        let mut rot_darts = Vec::with_capacity(num_vertices);
        let mut rotation_pos = vec![usize::MAX; num_darts];
        for (v, order) in rotation.iter().enumerate() {
            let mut darts = Vec::with_capacity(order.len());
            for (i, &e) in order.iter().enumerate() {
                let Some(&(a, b)) = edges.get(e) else {
                    return Err(Error::MalformedRotation(format!("vertex {v} lists unknown edge {e}")));
                };
                let dart = if a == v {
                    Dart::new(e, false)
                } else if b == v {
                    Dart::new(e, true)
                } else {
                    return Err(Error::MalformedRotation(format!(
                        "vertex {v} lists edge {e} which is not incident to it"
                    )));
                };
                if seen[dart.0] {
                    return Err(Error::MalformedRotation(format!("vertex {v} lists edge {e} twice")));
                }
                seen[dart.0] = true;
                rotation_pos[dart.0] = i;
                darts.push(dart);
            }
            rot_darts.push(darts);
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            let dart = Dart(d);
            let (a, b) = edges[dart.edge()];
            let v = if dart.from_second() { b } else { a };
            return Err(Error::MalformedRotation(format!(
                "edge {} missing from the rotation at vertex {v}",
                dart.edge()
            )));
        }

        if !is_connected(num_vertices, &edges) {
            return Err(Error::Disconnected);
        }

        let mut face_of = vec![usize::MAX; num_darts];
        let mut faces: Vec<Vec<Dart>> = Vec::new();
        for start in 0..num_darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut d = Dart(start);
            while face_of[d.0] == usize::MAX {
                face_of[d.0] = id;
                cycle.push(d);
                let back = d.rev();
                let (a, b) = edges[d.edge()];
                let head = if d.from_second() { a } else { b };
                let at = &rot_darts[head];
                d = at[(rotation_pos[back.0] + 1) % at.len()];
            }
            if d.0 != start {
                return Err(Error::Internal("face traversal is not a permutation".into()));
            }
            faces.push(cycle);
        }
        if edges.is_empty() {
            faces.push(Vec::new());
        }

        let euler = num_vertices as i64 - edges.len() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::EulerViolation {
                vertices: num_vertices,
                edges: edges.len(),
                faces: faces.len(),
            });
        }

        Ok(PlaneGraph {
            num_vertices,
            edges,
            rotation: rot_darts,
            rotation_pos,
            face_of,
            faces,
            outer: 0,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        let (a, b) = self.edges[d.edge()];
        if d.from_second() {
            b
        } else {
            a
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.rev())
    }

    /// Darts leaving `v`, counter-clockwise.
    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rotation[v]
    }

    /// Rotation as edge ids, the form accepted by [`PlaneGraph::new`].
    pub fn rotation_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.rotation[v].iter().map(|d| d.edge()).collect()
    }

    pub fn position_in_rotation(&self, d: Dart) -> usize {
        self.rotation_pos[d.0]
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &[Dart] {
        &self.faces[f]
    }

    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d.0]
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    /// A dart on the outer face, if the graph has edges.
    pub fn outer_dart(&self) -> Option<Dart> {
        self.faces[self.outer].first().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }
}

pub(crate) fn is_connected(num_vertices: usize, edges: &[(VertexId, VertexId)]) -> bool {
    let mut adj = vec![Vec::new(); num_vertices];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; num_vertices];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == num_vertices
}

/// The plane dual: one vertex per face, and for each primal edge `e` the dual
/// edge `e*` joining the faces on its two sides. Dual edge ids equal primal
/// edge ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMap {
    num_faces: usize,
    outer: FaceId,
    ends: Vec<(FaceId, FaceId)>,
    incident: Vec<Vec<EdgeId>>,
}

impl DualMap {
    pub fn new(pg: &PlaneGraph) -> DualMap {
        let ends: Vec<_> = (0..pg.num_edges())
            .map(|e| (pg.face_of(Dart::new(e, false)), pg.face_of(Dart::new(e, true))))
            .collect();
        let mut incident = vec![Vec::new(); pg.num_faces()];
        for (e, &(a, b)) in ends.iter().enumerate() {
            incident[a].push(e);
            if b != a {
                incident[b].push(e);
            }
        }
        DualMap {
            num_faces: pg.num_faces(),
            outer: pg.outer_face(),
            ends,
            incident,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_faces
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn outer(&self) -> FaceId {
        self.outer
    }

    /// The two faces joined by `e*`; equal when `e` is a bridge.
    pub fn ends(&self, e: EdgeId) -> (FaceId, FaceId) {
        self.ends[e]
    }

    /// Dual edges at face `f`, each listed once.
    pub fn incident(&self, f: FaceId) -> &[EdgeId] {
        &self.incident[f]
    }

    /// Degree of `f` in the dual; loops count twice.
    pub fn degree(&self, f: FaceId) -> usize {
        self.incident[f]
            .iter()
            .map(|&e| if self.ends[e].0 == self.ends[e].1 { 2 } else { 1 })
            .sum()
    }

    /// The dual as an embedded graph, rotation at each face following the
    /// face boundary. Fails when the primal has a bridge (the dual would
    /// have a loop).
    pub fn to_plane_graph(&self, pg: &PlaneGraph) -> Result<PlaneGraph> {
        let rotation: Vec<Vec<EdgeId>> = pg
            .faces()
            .iter()
            .map(|cycle| cycle.iter().map(|d| d.edge()).collect())
            .collect();
        let outer_dart = Dart::new(0, false);
        PlaneGraph::with_outer_dart(self.num_faces, self.ends.clone(), rotation, outer_dart)
    }
}

/// One side of a dual cut, stored as the side that avoids the outer face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shore(BTreeSet<FaceId>);

impl Shore {
    /// Canonicalizes `faces` (complementing when it holds the outer face).
    pub fn new(faces: impl IntoIterator<Item = FaceId>, dm: &DualMap) -> Result<Shore> {
        Self::with_universe(faces, dm.num_vertices(), dm.outer())
    }

    pub fn with_universe(faces: impl IntoIterator<Item = FaceId>, num_faces: usize, outer: FaceId) -> Result<Shore> {
        let set: BTreeSet<FaceId> = faces.into_iter().collect();
        if set.is_empty() || set.len() >= num_faces || set.iter().any(|&f| f >= num_faces) {
            return Err(Error::InvalidShore);
        }
        if set.contains(&outer) {
            Ok(Shore((0..num_faces).filter(|f| !set.contains(f)).collect()))
        } else {
            Ok(Shore(set))
        }
    }

    pub fn faces(&self) -> &BTreeSet<FaceId> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, f: FaceId) -> bool {
        self.0.contains(&f)
    }

    pub fn is_subset(&self, other: &Shore) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Shore) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Neither disjoint nor nested. Canonical shores both avoid the outer
    /// face, so this is the usual four-quadrant crossing.
    pub fn crosses(&self, other: &Shore) -> bool {
        !self.is_disjoint(other) && !self.is_subset(other) && !other.is_subset(self)
    }

    pub fn intersection(&self, other: &Shore) -> BTreeSet<FaceId> {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn union(&self, other: &Shore) -> BTreeSet<FaceId> {
        self.0.union(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &Shore) -> BTreeSet<FaceId> {
        self.0.difference(&other.0).copied().collect()
    }
}

/// `δ(s)`: dual edges with exactly one end in `s`, by increasing id.
pub fn cut_edges(dm: &DualMap, s: &Shore) -> Vec<EdgeId> {
    (0..dm.num_edges())
        .filter(|&e| {
            let (a, b) = dm.ends(e);
            s.contains(a) != s.contains(b)
        })
        .collect()
}

/// Checks that `cycle` is a simple circuit of `pg`.
pub fn check_circuit(pg: &PlaneGraph, cycle: &[EdgeId]) -> Result<()> {
    if cycle.is_empty() {
        return Err(Error::NotACircuit("empty edge set".into()));
    }
    let distinct: BTreeSet<EdgeId> = cycle.iter().copied().collect();
    if distinct.len() != cycle.len() {
        return Err(Error::NotACircuit("repeated edge".into()));
    }
    let mut degree = vec![0usize; pg.num_vertices()];
    for &e in cycle {
        if e >= pg.num_edges() {
            return Err(Error::NotACircuit(format!("unknown edge {e}")));
        }
        let (u, v) = pg.endpoints(e);
        degree[u] += 1;
        degree[v] += 1;
    }
    if degree.iter().any(|&d| d != 0 && d != 2) {
        return Err(Error::NotACircuit("vertex of degree other than two".into()));
    }
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); pg.num_vertices()];
    for &e in cycle {
        let (u, v) = pg.endpoints(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let start = pg.endpoints(cycle[0]).0;
    let mut seen = vec![false; pg.num_vertices()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    if reached != degree.iter().filter(|&&d| d == 2).count() {
        return Err(Error::NotACircuit("edge set is not connected".into()));
    }
    Ok(())
}

/// The faces enclosed by a simple circuit: the dual component, after
/// removing the circuit's dual edges, that does not contain the outer face.
pub fn shore_from_cycle(pg: &PlaneGraph, dm: &DualMap, cycle: &[EdgeId]) -> Result<Shore> {
    check_circuit(pg, cycle)?;
    let mut removed = vec![false; dm.num_edges()];
    for &e in cycle {
        removed[e] = true;
    }
    let mut outside = vec![false; dm.num_vertices()];
    outside[dm.outer()] = true;
    let mut queue = VecDeque::from([dm.outer()]);
    while let Some(f) = queue.pop_front() {
        for &e in dm.incident(f) {
            if removed[e] {
                continue;
            }
            let (a, b) = dm.ends(e);
            let g = if a == f { b } else { a };
            if !outside[g] {
                outside[g] = true;
                queue.push_back(g);
            }
        }
    }
    let inside: Vec<FaceId> = (0..dm.num_vertices()).filter(|&f| !outside[f]).collect();
    let shore = Shore::new(inside, dm).map_err(|_| Error::NotACircuit("circuit does not separate the faces".into()))?;
    let mut expected = cycle.to_vec();
    expected.sort_unstable();
    if cut_edges(dm, &shore) != expected {
        return Err(Error::NotACircuit(
            "dual cut of the enclosed faces differs from the circuit".into(),
        ));
    }
    Ok(shore)
}

/// A drawing direction `(dx, dy)`.
pub type Direction = (f64, f64);

/// Counter-clockwise rotation system from the initial direction of every
/// dart: `directions[e] = (direction at first endpoint, direction at second)`.
pub fn rotation_from_directions(
    num_vertices: usize,
    edges: &[(VertexId, VertexId)],
    directions: &[(Direction, Direction)],
) -> Vec<Vec<EdgeId>> {
    let mut at: Vec<Vec<(f64, EdgeId)>> = vec![Vec::new(); num_vertices];
    for (e, (&(u, v), &(du, dv))) in edges.iter().zip(directions).enumerate() {
        at[u].push((du.1.atan2(du.0), e));
        at[v].push((dv.1.atan2(dv.0), e));
    }
    at.into_iter()
        .map(|mut list| {
            list.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            list.into_iter().map(|(_, e)| e).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PlaneGraph {
        PlaneGraph::new(
            3,
            vec![(0, 1), (1, 2), (2, 0)],
            vec![vec![0, 2], vec![1, 0], vec![2, 1]],
            0,
        )
        .unwrap()
    }

    /// K4 with vertex 3 in the middle of triangle 0-1-2.
    pub(crate) fn k4() -> PlaneGraph {
        let pts = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.5)];
        let edges = vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
        let dirs: Vec<_> = edges
            .iter()
            .map(|&(u, v): &(usize, usize)| {
                let (a, b): ((f64, f64), (f64, f64)) = (pts[u], pts[v]);
                ((b.0 - a.0, b.1 - a.1), (a.0 - b.0, a.1 - b.1))
            })
            .collect();
        let rot = rotation_from_directions(4, &edges, &dirs);
        // dart 1 -> 0 runs along the bottom heading west: the outer face is on its left
        PlaneGraph::with_outer_dart(4, edges, rot, Dart::new(0, true)).unwrap()
    }

    #[test]
    fn triangle_has_two_faces() {
        let pg = triangle();
        assert_eq!(pg.num_faces(), 2);
        let dm = DualMap::new(&pg);
        assert_eq!(dm.num_vertices(), 2);
        for e in 0..3 {
            let (a, b) = dm.ends(e);
            assert_ne!(a, b);
        }
    }

    #[test]
    fn k4_has_four_faces() {
        let pg = k4();
        assert_eq!(pg.num_faces(), 4);
        assert!(pg.faces().iter().all(|f| f.len() == 3));
        let dm = DualMap::new(&pg);
        for f in 0..4 {
            assert_eq!(dm.degree(f), pg.face(f).len());
        }
    }

    #[test]
    fn every_dart_on_one_face() {
        let pg = k4();
        let mut count = vec![0; 2 * pg.num_edges()];
        for face in pg.faces() {
            for d in face {
                count[d.0] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 1));
    }

    fn k5_edges() -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        edges
    }

    #[test]
    fn k5_rotations_violate_euler() {
        // All 6^5 rotation systems of K5: none reaches F = 7.
        let edges = k5_edges();
        let incident: Vec<Vec<usize>> = (0..5)
            .map(|v| {
                (0..edges.len())
                    .filter(|&e| edges[e].0 == v || edges[e].1 == v)
                    .collect()
            })
            .collect();
        let perms = permutations_fixing_first(&incident[0]);
        let mut tried = 0;
        let mut choice = [0usize; 5];
        loop {
            let rotation: Vec<Vec<usize>> = (0..5)
                .map(|v| permutations_fixing_first(&incident[v])[choice[v]].clone())
                .collect();
            match PlaneGraph::new(5, edges.clone(), rotation, 0) {
                Err(Error::EulerViolation { faces, .. }) => assert!(faces < 7),
                other => panic!("unexpected {other:?}"),
            }
            tried += 1;
            let mut i = 0;
            loop {
                if i == 5 {
                    assert_eq!(tried, 7776);
                    return;
                }
                choice[i] += 1;
                if choice[i] < perms.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    fn permutations_fixing_first(items: &[usize]) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                prefix.push(x);
                rec(prefix, rest, out);
                prefix.pop();
                rest.insert(i, x);
            }
        }
        let mut out = Vec::new();
        rec(&mut vec![items[0]], &mut items[1..].to_vec(), &mut out);
        out
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            PlaneGraph::new(2, vec![(0, 0)], vec![vec![0], vec![]], 0).unwrap_err(),
            Error::LoopEdge(0)
        );
        assert_eq!(
            PlaneGraph::new(4, vec![(0, 1), (2, 3)], vec![vec![0], vec![0], vec![1], vec![1]], 0).unwrap_err(),
            Error::Disconnected
        );
        assert!(matches!(
            PlaneGraph::new(2, vec![(0, 1)], vec![vec![0, 0], vec![0]], 0),
            Err(Error::MalformedRotation(_))
        ));
        assert!(matches!(
            PlaneGraph::new(2, vec![(0, 1)], vec![vec![0], vec![]], 0),
            Err(Error::MalformedRotation(_))
        ));
        assert_eq!(
            PlaneGraph::new(2, vec![(0, 1)], vec![vec![0], vec![0]], 3).unwrap_err(),
            Error::BadOuterFace(3)
        );
    }

    #[test]
    fn parallel_edges_accepted() {
        let pg = PlaneGraph::new(2, vec![(0, 1), (0, 1), (0, 1)], vec![vec![0, 1, 2], vec![2, 1, 0]], 0).unwrap();
        assert_eq!(pg.num_faces(), 3);
    }

    #[test]
    fn dual_of_dual_is_primal() {
        let pg = k4();
        let dm = DualMap::new(&pg);
        let dual = dm.to_plane_graph(&pg).unwrap();
        assert_eq!(dual.num_vertices(), 4);
        assert_eq!(dual.num_faces(), 4);
        let ddm = DualMap::new(&dual);
        // Faces of the dual are the primal vertices: match by edge sets.
        let mut primal_stars: Vec<BTreeSet<usize>> = (0..pg.num_vertices())
            .map(|v| pg.rotation(v).iter().map(|d| d.edge()).collect())
            .collect();
        let mut dual_faces: Vec<BTreeSet<usize>> = dual
            .faces()
            .iter()
            .map(|f| f.iter().map(|d| d.edge()).collect())
            .collect();
        primal_stars.sort();
        dual_faces.sort();
        assert_eq!(primal_stars, dual_faces);
        for e in 0..pg.num_edges() {
            let (a, b) = ddm.ends(e);
            let (u, v) = pg.endpoints(e);
            let star = |x: usize| -> BTreeSet<usize> { pg.rotation(x).iter().map(|d| d.edge()).collect() };
            let face = |x: usize| -> BTreeSet<usize> { dual.face(x).iter().map(|d| d.edge()).collect() };
            let mut got = [face(a), face(b)];
            let mut want = [star(u), star(v)];
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn shores_from_face_boundaries() {
        let pg = k4();
        let dm = DualMap::new(&pg);
        for f in 0..pg.num_faces() {
            let cycle: Vec<usize> = pg.face(f).iter().map(|d| d.edge()).collect();
            let shore = shore_from_cycle(&pg, &dm, &cycle).unwrap();
            if f == pg.outer_face() {
                let inner: BTreeSet<usize> = (0..4).filter(|&g| g != f).collect();
                assert_eq!(shore.faces(), &inner);
            } else {
                assert_eq!(shore.faces(), &BTreeSet::from([f]));
            }
            assert_eq!(cut_edges(&dm, &shore).len(), 3);
        }
    }

    #[test]
    fn complement_shore_has_same_cut() {
        let pg = k4();
        let dm = DualMap::new(&pg);
        let inner: Vec<usize> = (0..4).filter(|&f| f != pg.outer_face()).take(1).collect();
        let s = Shore::new(inner.clone(), &dm).unwrap();
        let comp: Vec<usize> = (0..4).filter(|f| !inner.contains(f)).collect();
        let t = Shore::new(comp, &dm).unwrap();
        assert_eq!(s, t);
        assert_eq!(cut_edges(&dm, &s), cut_edges(&dm, &t));
    }

    #[test]
    fn shore_rejects_trivial_sets() {
        let pg = k4();
        let dm = DualMap::new(&pg);
        assert_eq!(Shore::new(Vec::new(), &dm), Err(Error::InvalidShore));
        assert_eq!(Shore::new(0..4, &dm), Err(Error::InvalidShore));
    }

    #[test]
    fn not_a_circuit() {
        let pg = k4();
        let dm = DualMap::new(&pg);
        assert!(matches!(
            shore_from_cycle(&pg, &dm, &[0, 1]),
            Err(Error::NotACircuit(_))
        ));
        assert!(matches!(shore_from_cycle(&pg, &dm, &[]), Err(Error::NotACircuit(_))));
        assert!(matches!(
            shore_from_cycle(&pg, &dm, &[0, 0, 1]),
            Err(Error::NotACircuit(_))
        ));
    }
}
