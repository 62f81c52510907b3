//! Paths, multiflows, and the exact fractional maximum multiflow.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::lp::LinearProgram;
use crate::plane::{EdgeId, VertexId};
use crate::rational::{self, from_u64, Rational};

pub const DEFAULT_PATH_CAP: usize = 20_000;

/// A simple supply path joining the endpoints of its demand edge. Stored in
/// the direction whose vertex sequence is lexicographically smaller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    demand: EdgeId,
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Path {
    /// Validates and canonicalizes. `edges[i]` joins `vertices[i]` and
    /// `vertices[i + 1]`.
    pub fn new(inst: &Instance, demand: EdgeId, mut vertices: Vec<VertexId>, mut edges: Vec<EdgeId>) -> Result<Path> {
        let bad = |msg: String| Error::UnknownPath(msg);
        if demand >= inst.num_edges() || !inst.is_demand(demand) {
            return Err(bad(format!("edge {demand} is not a demand edge")));
        }
        if vertices.len() != edges.len() + 1 || edges.is_empty() {
            return Err(bad("path needs k >= 1 edges and k + 1 vertices".into()));
        }
        let (s, t) = inst.endpoints(demand);
        let (first, last) = (vertices[0], *vertices.last().unwrap());
        if !((first == s && last == t) || (first == t && last == s)) {
            return Err(bad(format!(
                "path runs {first}..{last}, demand {demand} joins {s} and {t}"
            )));
        }
        let mut seen = vec![false; inst.num_vertices()];
        for &v in &vertices {
            if v >= inst.num_vertices() || seen[v] {
                return Err(bad(format!("vertex {v} repeated or out of range")));
            }
            seen[v] = true;
        }
        for (i, &e) in edges.iter().enumerate() {
            if e >= inst.num_edges() || !inst.is_supply(e) {
                return Err(bad(format!("edge {e} is not a supply edge")));
            }
            let (a, b) = inst.endpoints(e);
            let (x, y) = (vertices[i], vertices[i + 1]);
            if !((a == x && b == y) || (a == y && b == x)) {
                return Err(bad(format!("edge {e} does not join {x} and {y}")));
            }
        }
        let mut reversed = vertices.clone();
        reversed.reverse();
        if reversed < vertices {
            vertices = reversed;
            edges.reverse();
        }
        Ok(Path {
            demand,
            vertices,
            edges,
        })
    }

    /// Resolves each hop to the lowest-id supply edge between the two vertices.
    pub fn from_vertices(inst: &Instance, demand: EdgeId, vertices: Vec<VertexId>) -> Result<Path> {
        let mut edges = Vec::new();
        for w in vertices.windows(2) {
            let e = inst
                .supply_edges()
                .find(|&e| {
                    let (a, b) = inst.endpoints(e);
                    (a == w[0] && b == w[1]) || (a == w[1] && b == w[0])
                })
                .ok_or_else(|| Error::UnknownPath(format!("no supply edge joins {} and {}", w[0], w[1])))?;
            edges.push(e);
        }
        Path::new(inst, demand, vertices, edges)
    }

    /// Orders an unordered simple supply path (as an edge set) between the
    /// endpoints of `demand`.
    pub fn from_edge_set(inst: &Instance, demand: EdgeId, edge_set: &[EdgeId]) -> Result<Path> {
        let (s, t) = inst.endpoints(demand);
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        let mut used = vec![false; edge_set.len()];
        let mut at = s;
        while at != t {
            let next = (0..edge_set.len()).find(|&i| {
                let (a, b) = inst.endpoints(edge_set[i]);
                !used[i] && (a == at || b == at)
            });
            let Some(i) = next else {
                return Err(Error::UnknownPath("edge set does not connect the demand".into()));
            };
            used[i] = true;
            let (a, b) = inst.endpoints(edge_set[i]);
            at = if a == at { b } else { a };
            vertices.push(at);
            edges.push(edge_set[i]);
        }
        if used.iter().any(|u| !u) {
            return Err(Error::UnknownPath("edge set is more than a path".into()));
        }
        Path::new(inst, demand, vertices, edges)
    }

    pub fn demand(&self) -> EdgeId {
        self.demand
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// `P ∪ {e_P}`: the circuit of `G + H` closed by the demand edge.
    pub fn circuit(&self) -> Vec<EdgeId> {
        let mut c = self.edges.clone();
        c.push(self.demand);
        c
    }
}

/// All simple supply paths of every demand edge, grouped by demand in
/// increasing edge id and sorted within each group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSet {
    paths: Vec<Path>,
}

impl PathSet {
    pub fn from_paths(mut paths: Vec<Path>) -> PathSet {
        paths.sort();
        paths.dedup();
        PathSet { paths }
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn for_demand(&self, demand: EdgeId) -> impl Iterator<Item = &Path> {
        self.paths.iter().filter(move |p| p.demand == demand)
    }
}

pub fn enumerate_paths(inst: &Instance, cap: usize) -> Result<PathSet> {
    let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); inst.num_vertices()];
    for e in inst.supply_edges() {
        let (u, v) = inst.endpoints(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut all = Vec::new();
    for demand in inst.demand_edges() {
        let (s, t) = inst.endpoints(demand);
        let mut on_path = vec![false; inst.num_vertices()];
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        on_path[s] = true;
        let mut found = Vec::new();
        dfs(
            &adj,
            t,
            &mut on_path,
            &mut vertices,
            &mut edges,
            &mut found,
            cap.saturating_sub(all.len()),
        )
        .map_err(|_| Error::PathExplosion { cap })?;
        for (vs, es) in found {
            all.push(Path::new(inst, demand, vs, es)?);
        }
        if all.len() > cap {
            return Err(Error::PathExplosion { cap });
        }
    }
    Ok(PathSet::from_paths(all))
}

type Found = Vec<(Vec<VertexId>, Vec<EdgeId>)>;

fn dfs(
    adj: &[Vec<(VertexId, EdgeId)>],
    target: VertexId,
    on_path: &mut [bool],
    vertices: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
    found: &mut Found,
    budget: usize,
) -> Result<()> {
    let at = *vertices.last().unwrap();
    if at == target {
        found.push((vertices.clone(), edges.clone()));
        if found.len() > budget {
            return Err(Error::PathExplosion { cap: budget });
        }
        return Ok(());
    }
    for &(w, e) in &adj[at] {
        if on_path[w] {
            continue;
        }
        on_path[w] = true;
        vertices.push(w);
        edges.push(e);
        let res = dfs(adj, target, on_path, vertices, edges, found, budget);
        edges.pop();
        vertices.pop();
        on_path[w] = false;
        res?;
    }
    Ok(())
}

/// A multiflow: nonnegative amounts on paths. Only positive entries are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flow {
    amounts: BTreeMap<Path, Rational>,
}

impl Flow {
    pub fn new() -> Flow {
        Flow::default()
    }

    /// Adds `amount` (which may be negative, as long as the result stays
    /// nonnegative) to the flow on `path`.
    pub fn add(&mut self, path: Path, amount: Rational) {
        let entry = self.amounts.entry(path).or_insert_with(Rational::zero);
        *entry += amount;
        debug_assert!(!entry.is_negative());
        self.amounts.retain(|_, v| !v.is_zero());
    }

    pub fn get(&self, path: &Path) -> Rational {
        self.amounts.get(path).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Path, &Rational)> {
        self.amounts.iter()
    }

    pub fn len(&self) -> usize {
        self.amounts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amounts.is_empty()
    }

    pub fn value(&self) -> Rational {
        rational::sum(self.amounts.values())
    }

    pub fn is_integer(&self) -> bool {
        self.amounts.values().all(rational::is_integer)
    }

    pub fn is_half_integer(&self) -> bool {
        self.amounts.values().all(rational::is_half_integer)
    }

    /// Load of every edge (zero on demand edges), indexed by edge id.
    pub fn loads(&self, inst: &Instance) -> Vec<Rational> {
        let mut loads = vec![Rational::zero(); inst.num_edges()];
        for (p, amount) in &self.amounts {
            for &e in p.edges() {
                loads[e] += amount;
            }
        }
        loads
    }

    pub fn scaled(&self, factor: &Rational) -> Flow {
        let mut out = Flow::new();
        for (p, a) in &self.amounts {
            out.add(p.clone(), a * factor);
        }
        out
    }
}

impl FromIterator<(Path, Rational)> for Flow {
    fn from_iter<I: IntoIterator<Item = (Path, Rational)>>(iter: I) -> Flow {
        let mut f = Flow::new();
        for (p, a) in iter {
            f.add(p, a);
        }
        f
    }
}

#[derive(Clone, Debug)]
pub struct MaxFlow {
    pub flow: Flow,
    pub value: Rational,
    /// Optimal LP dual price of every edge (zero on demand edges). By strong
    /// duality `sum c(e) * price(e) = value`.
    pub prices: Vec<Rational>,
}

/// Maximum fractional multiflow over the given paths.
pub fn max_multiflow(inst: &Instance, paths: &PathSet) -> Result<MaxFlow> {
    let supply: Vec<EdgeId> = inst.supply_edges().collect();
    let mut lp = LinearProgram::max_sum(paths.len());
    for &e in &supply {
        let users = paths
            .paths()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.edges().contains(&e))
            .map(|(j, _)| j);
        lp.add_indicator_row(users, from_u64(inst.capacity(e).unwrap_or(0)));
    }
    let sol = lp.solve_max()?;
    let flow: Flow = paths
        .paths()
        .iter()
        .zip(&sol.x)
        .filter(|(_, x)| !x.is_zero())
        .map(|(p, x)| (p.clone(), x.clone()))
        .collect();
    let mut prices = vec![Rational::zero(); inst.num_edges()];
    for (i, &e) in supply.iter().enumerate() {
        prices[e] = sol.y[i].clone();
    }
    Ok(MaxFlow {
        flow,
        value: sol.value,
        prices,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeLoad {
    pub edge: EdgeId,
    pub load: Rational,
    pub capacity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    /// One entry per supply edge, by id.
    pub loads: Vec<EdgeLoad>,
    pub feasible: bool,
    pub max_load: Rational,
    /// Supply edges attaining `max_load` (empty for the zero flow).
    pub max_loaded: Vec<EdgeId>,
    /// Supply edges with load above capacity.
    pub overloaded: Vec<EdgeId>,
}

impl FeasibilityReport {
    /// Feasibility for the capacities `c + extra`.
    pub fn feasible_with_extra(&self, extra: u64) -> bool {
        self.loads.iter().all(|l| l.load <= from_u64(l.capacity + extra))
    }
}

pub fn check_feasible(inst: &Instance, f: &Flow) -> Result<FeasibilityReport> {
    for (p, amount) in f.iter() {
        Path::new(inst, p.demand(), p.vertices().to_vec(), p.edges().to_vec())?;
        if amount.is_negative() {
            return Err(Error::UnknownPath("negative flow amount".into()));
        }
    }
    let all = f.loads(inst);
    let loads: Vec<EdgeLoad> = inst
        .supply_edges()
        .map(|e| EdgeLoad {
            edge: e,
            load: all[e].clone(),
            capacity: inst.capacity(e).unwrap_or(0),
        })
        .collect();
    let overloaded: Vec<EdgeId> = loads
        .iter()
        .filter(|l| l.load > from_u64(l.capacity))
        .map(|l| l.edge)
        .collect();
    let max_load = loads
        .iter()
        .map(|l| l.load.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let max_loaded = if max_load.is_zero() {
        Vec::new()
    } else {
        loads.iter().filter(|l| l.load == max_load).map(|l| l.edge).collect()
    };
    Ok(FeasibilityReport {
        feasible: overloaded.is_empty(),
        loads,
        max_load,
        max_loaded,
        overloaded,
    })
}
