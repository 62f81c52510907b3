//! Multiflow instances: a supply graph and a demand graph embedded together.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::plane::{rotation_from_directions, Dart, DualMap, EdgeId, PlaneGraph, VertexId};

pub mod fuzz;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeRole {
    Supply(u64),
    Demand,
}

impl EdgeRole {
    pub fn is_supply(self) -> bool {
        matches!(self, EdgeRole::Supply(_))
    }

    pub fn is_demand(self) -> bool {
        matches!(self, EdgeRole::Demand)
    }
}

/// `G + H` as one embedded graph; every edge is either a capacitated supply
/// edge or a demand edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    plane: PlaneGraph,
    roles: Vec<EdgeRole>,
}

impl Instance {
    /// Builds an instance. Zero-capacity supply edges are deleted, which
    /// renumbers the remaining edges in their original order.
    pub fn new(
        num_vertices: usize,
        edges: Vec<(VertexId, VertexId, EdgeRole)>,
        rotation: Vec<Vec<EdgeId>>,
        outer_face: usize,
    ) -> Result<Instance> {
        let ends: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let roles: Vec<_> = edges.iter().map(|&(_, _, r)| r).collect();
        let plane = PlaneGraph::new(num_vertices, ends, rotation, outer_face)?;
        Self::from_plane(plane, roles)
    }

    pub fn from_plane(plane: PlaneGraph, roles: Vec<EdgeRole>) -> Result<Instance> {
        if roles.len() != plane.num_edges() {
            return Err(Error::BadParameter(format!(
                "{} roles for {} edges",
                roles.len(),
                plane.num_edges()
            )));
        }
        if roles.contains(&EdgeRole::Supply(0)) {
            return Self::without_zero_capacity(plane, roles);
        }
        Ok(Instance { plane, roles })
    }

    fn without_zero_capacity(plane: PlaneGraph, roles: Vec<EdgeRole>) -> Result<Instance> {
        let keep: Vec<bool> = roles.iter().map(|r| *r != EdgeRole::Supply(0)).collect();
        let mut new_id = vec![usize::MAX; roles.len()];
        let mut edges = Vec::new();
        let mut new_roles = Vec::new();
        for e in 0..roles.len() {
            if keep[e] {
                new_id[e] = edges.len();
                edges.push(plane.endpoints(e));
                new_roles.push(roles[e]);
            }
        }
        let rotation: Vec<Vec<EdgeId>> = (0..plane.num_vertices())
            .map(|v| {
                plane
                    .rotation(v)
                    .iter()
                    .filter(|d| keep[d.edge()])
                    .map(|d| new_id[d.edge()])
                    .collect()
            })
            .collect();

        // Deleting edges merges faces; the outer region is found by walking
        // across deleted edges until a face with a surviving dart appears.
        let dm = DualMap::new(&plane);
        let mut seen = vec![false; plane.num_faces()];
        let mut queue = VecDeque::from([plane.outer_face()]);
        seen[plane.outer_face()] = true;
        let mut outer_dart = None;
        while let Some(f) = queue.pop_front() {
            if let Some(d) = plane.face(f).iter().find(|d| keep[d.edge()]) {
                outer_dart = Some(Dart::new(new_id[d.edge()], d.from_second()));
                break;
            }
            for &e in dm.incident(f) {
                let (a, b) = dm.ends(e);
                for g in [a, b] {
                    if !seen[g] {
                        seen[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        let plane = match outer_dart {
            Some(d) => PlaneGraph::with_outer_dart(plane.num_vertices(), edges, rotation, d)?,
            None => PlaneGraph::new(plane.num_vertices(), edges, rotation, 0)?,
        };
        Ok(Instance {
            plane,
            roles: new_roles,
        })
    }

    pub fn plane(&self) -> &PlaneGraph {
        &self.plane
    }

    pub fn dual(&self) -> DualMap {
        DualMap::new(&self.plane)
    }

    pub fn num_vertices(&self) -> usize {
        self.plane.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.roles.len()
    }

    pub fn role(&self, e: EdgeId) -> EdgeRole {
        self.roles[e]
    }

    pub fn roles(&self) -> &[EdgeRole] {
        &self.roles
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.plane.endpoints(e)
    }

    /// Capacity of a supply edge; demand edges report `None`.
    pub fn capacity(&self, e: EdgeId) -> Option<u64> {
        match self.roles[e] {
            EdgeRole::Supply(c) => Some(c),
            EdgeRole::Demand => None,
        }
    }

    pub fn is_supply(&self, e: EdgeId) -> bool {
        self.roles[e].is_supply()
    }

    pub fn is_demand(&self, e: EdgeId) -> bool {
        self.roles[e].is_demand()
    }

    pub fn supply_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.roles.len()).filter(move |&e| self.roles[e].is_supply())
    }

    pub fn demand_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.roles.len()).filter(move |&e| self.roles[e].is_demand())
    }

    pub fn num_supply(&self) -> usize {
        self.supply_edges().count()
    }

    pub fn num_demands(&self) -> usize {
        self.demand_edges().count()
    }

    /// Same graph and embedding with new supply capacities
    /// (`capacities[e]` is read for supply edges only).
    pub fn with_capacities(&self, capacities: impl Fn(EdgeId, u64) -> u64) -> Result<Instance> {
        let roles = self
            .roles
            .iter()
            .enumerate()
            .map(|(e, r)| match *r {
                EdgeRole::Supply(c) => EdgeRole::Supply(capacities(e, c)),
                EdgeRole::Demand => EdgeRole::Demand,
            })
            .collect();
        Self::from_plane(self.plane.clone(), roles)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("planemf 1\n");
        let _ = writeln!(out, "vertices {}", self.num_vertices());
        for e in 0..self.num_edges() {
            let (u, v) = self.endpoints(e);
            match self.roles[e] {
                EdgeRole::Supply(c) => {
                    let _ = writeln!(out, "edge {u} {v} supply {c}");
                }
                EdgeRole::Demand => {
                    let _ = writeln!(out, "edge {u} {v} demand");
                }
            }
        }
        for v in 0..self.num_vertices() {
            let _ = write!(out, "rotation {v}");
            for e in self.plane.rotation_edges(v) {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "outer {}", self.plane.outer_face());
        out
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let syntax = |line: usize, message: String| Error::Syntax { line, message };
        let mut header = false;
        let mut num_vertices: Option<usize> = None;
        let mut edges: Vec<(VertexId, VertexId, EdgeRole)> = Vec::new();
        let mut rotation: Vec<Option<Vec<EdgeId>>> = Vec::new();
        let mut outer: Option<usize> = None;
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let number = |tok: &str| -> Result<usize> {
                tok.parse::<usize>()
                    .map_err(|_| syntax(line, format!("expected a nonnegative integer, found `{tok}`")))
            };
            if !header {
                if tokens != ["planemf", "1"] {
                    return Err(syntax(line, "expected header `planemf 1`".into()));
                }
                header = true;
                continue;
            }
            match tokens[0] {
                "vertices" => {
                    if tokens.len() != 2 {
                        return Err(syntax(line, "expected `vertices <n>`".into()));
                    }
                    if num_vertices.is_some() {
                        return Err(syntax(line, "duplicate `vertices` line".into()));
                    }
                    let n = number(tokens[1])?;
                    num_vertices = Some(n);
                    rotation = vec![None; n];
                }
                "edge" => {
                    let n = num_vertices.ok_or_else(|| syntax(line, "`edge` before `vertices`".into()))?;
                    if tokens.len() < 4 {
                        return Err(syntax(line, "expected `edge <u> <v> supply <c>|demand`".into()));
                    }
                    let u = number(tokens[1])?;
                    let v = number(tokens[2])?;
                    if u >= n || v >= n {
                        return Err(syntax(line, format!("vertex out of range (n = {n})")));
                    }
                    if u == v {
                        return Err(syntax(line, format!("loop edge at vertex {u}")));
                    }
                    let role = match (tokens[3], tokens.len()) {
                        ("supply", 5) => EdgeRole::Supply(
                            tokens[4]
                                .parse::<u64>()
                                .map_err(|_| syntax(line, format!("bad capacity `{}`", tokens[4])))?,
                        ),
                        ("demand", 4) => EdgeRole::Demand,
                        _ => {
                            return Err(syntax(
                                line,
                                "expected `edge <u> <v> supply <c>` or `edge <u> <v> demand`".into(),
                            ))
                        }
                    };
                    edges.push((u, v, role));
                }
                "rotation" => {
                    if num_vertices.is_none() {
                        return Err(syntax(line, "`rotation` before `vertices`".into()));
                    }
                    if tokens.len() < 2 {
                        return Err(syntax(line, "expected `rotation <v> <edge-id>...`".into()));
                    }
                    let v = number(tokens[1])?;
                    let slot = rotation
                        .get_mut(v)
                        .ok_or_else(|| syntax(line, format!("vertex {v} out of range")))?;
                    if slot.is_some() {
                        return Err(syntax(line, format!("duplicate rotation for vertex {v}")));
                    }
                    let ids = tokens[2..].iter().map(|t| number(t)).collect::<Result<Vec<_>>>()?;
                    *slot = Some(ids);
                }
                "outer" => {
                    if tokens.len() != 2 {
                        return Err(syntax(line, "expected `outer <face-index>`".into()));
                    }
                    if outer.is_some() {
                        return Err(syntax(line, "duplicate `outer` line".into()));
                    }
                    outer = Some(number(tokens[1])?);
                }
                other => return Err(syntax(line, format!("unknown directive `{other}`"))),
            }
        }
        if !header {
            return Err(syntax(last_line.max(1), "missing header `planemf 1`".into()));
        }
        let n = num_vertices.ok_or_else(|| syntax(last_line, "missing `vertices` line".into()))?;
        let outer = outer.ok_or_else(|| syntax(last_line, "missing `outer` line".into()))?;
        let rotation = rotation.into_iter().map(Option::unwrap_or_default).collect();
        Instance::new(n, edges, rotation, outer)
    }
}

/// The ladder family: `a_1..a_k` on a path with pendant rungs `a_i b_i`
/// (unit capacities), demands `b_i b_{i+1}` and `b_i a_{i+2}`.
///
/// Vertex `a_i` is `i - 1`, `b_i` is `k + i - 1`. Edge ids: rungs, then the
/// `a` path, then the `b` demands, then the `b_i a_{i+2}` demands. The
/// embedding draws `a` and `b` as two horizontal rows and routes the demand
/// `b_i a_{i+2}` around the left end of the ladder, nested by `i`.
pub fn gen_gk(k: usize) -> Result<Instance> {
    if k < 3 {
        return Err(Error::BadParameter(format!("G_k needs k >= 3, got {k}")));
    }
    let a = |i: usize| i - 1;
    let b = |i: usize| k + i - 1;
    const UP: (f64, f64) = (0.0, 1.0);
    const DOWN: (f64, f64) = (0.0, -1.0);
    const LEFT: (f64, f64) = (-1.0, 0.0);
    const RIGHT: (f64, f64) = (1.0, 0.0);

    let mut edges = Vec::new();
    let mut dirs = Vec::new();
    for i in 1..=k {
        edges.push((a(i), b(i), EdgeRole::Supply(1)));
        dirs.push((UP, DOWN));
    }
    for i in 1..k {
        edges.push((a(i), a(i + 1), EdgeRole::Supply(1)));
        dirs.push((RIGHT, LEFT));
    }
    for i in 1..k {
        edges.push((b(i), b(i + 1), EdgeRole::Demand));
        dirs.push((RIGHT, LEFT));
    }
    for i in 1..=k - 2 {
        edges.push((b(i), a(i + 2), EdgeRole::Demand));
        dirs.push((UP, DOWN));
    }
    let ends: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let rotation = rotation_from_directions(2 * k, &ends, &dirs);
    let roles = edges.iter().map(|&(_, _, r)| r).collect();
    // The face traced by a_k -> b_k is the unbounded region east of the last rung.
    let plane = PlaneGraph::with_outer_dart(2 * k, ends, rotation, Dart::new(k - 1, false))?;
    Instance::from_plane(plane, roles)
}

/// The 4-cycle `0-1-2-3` with unit capacities and the two diagonals as
/// demands (`G + H = K4`). Demand `0-2` is drawn inside, `1-3` outside.
pub fn gen_c4_2k2() -> Result<Instance> {
    let edges = [
        (0, 1, EdgeRole::Supply(1)),
        (1, 2, EdgeRole::Supply(1)),
        (2, 3, EdgeRole::Supply(1)),
        (3, 0, EdgeRole::Supply(1)),
        (0, 2, EdgeRole::Demand),
        (1, 3, EdgeRole::Demand),
    ];
    let dirs = vec![
        ((1.0, 0.0), (-1.0, 0.0)),
        ((0.0, 1.0), (0.0, -1.0)),
        ((-1.0, 0.0), (1.0, 0.0)),
        ((0.0, -1.0), (0.0, 1.0)),
        ((1.0, 1.0), (-1.0, -1.0)),
        // leaves 1 downwards, loops around the left side, enters 3 from above
        ((0.0, -1.0), (0.0, 1.0)),
    ];
    let ends: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let rotation = rotation_from_directions(4, &ends, &dirs);
    let roles = edges.iter().map(|&(_, _, r)| r).collect();
    let plane = PlaneGraph::with_outer_dart(4, ends, rotation, Dart::new(5, false))?;
    Instance::from_plane(plane, roles)
}

/// Replaces every demand edge `uv` by a new vertex `w`, the demand `uw`
/// (keeping the edge id) and a supply edge `wv` of capacity 1 (appended).
/// This bounds every commodity by one unit.
pub fn overline(inst: &Instance) -> Result<Instance> {
    let pg = inst.plane();
    let mut n = pg.num_vertices();
    let mut edges: Vec<(VertexId, VertexId)> = pg.edges().to_vec();
    let mut roles = inst.roles().to_vec();
    let mut rotation: Vec<Vec<EdgeId>> = (0..n).map(|v| pg.rotation_edges(v)).collect();
    let mut replacement = vec![None; edges.len()];
    for e in inst.demand_edges().collect::<Vec<_>>() {
        let (u, v) = edges[e];
        let w = n;
        n += 1;
        let tail = edges.len();
        edges[e] = (u, w);
        edges.push((w, v));
        roles.push(EdgeRole::Supply(1));
        for slot in rotation[v].iter_mut() {
            if *slot == e {
                *slot = tail;
            }
        }
        rotation.push(vec![e, tail]);
        replacement[e] = Some(tail);
    }
    let outer_dart = match pg.outer_dart() {
        Some(d) => match replacement[d.edge()] {
            Some(tail) if d.from_second() => Dart::new(tail, true),
            _ => d,
        },
        None => return Ok(inst.clone()),
    };
    let plane = PlaneGraph::with_outer_dart(n, edges, rotation, outer_dart)?;
    Instance::from_plane(plane, roles)
}

/// `overline(C4, 2K2)`: fractional optimum 2, integer optimum 1.
pub fn gen_c4_2k2_overline() -> Result<Instance> {
    overline(&gen_c4_2k2()?)
}
