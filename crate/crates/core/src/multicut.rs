//! Primal-dual multicut via the plane dual.
//!
//! `Q` is a multicut of the supply graph exactly when, in the dual, no demand
//! dual edge is a bridge of `(V*, Q* ∪ F*)`. The primal-dual grows moats on
//! the minimal dual sets crossed by exactly one demand dual edge and no
//! chosen edge, buys the edge that becomes tight, and finally drops redundant
//! edges in reverse order. The moats themselves pack a feasible flow.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flow::{Flow, Path};
use crate::instance::Instance;
use crate::plane::{DualMap, EdgeId, FaceId, Shore};
use crate::rational::{self, from_u64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticutRun {
    /// The multicut, by increasing edge id.
    pub q: Vec<EdgeId>,
    /// Indicator of `Q*` over all dual edges (ids as in the primal).
    pub x: Vec<bool>,
    /// Moat values; sets with the same cut share one entry.
    pub y: BTreeMap<Shore, Rational>,
    pub flow: Flow,
    /// Edges in the order the growth phase bought them.
    pub order: Vec<EdgeId>,
}

impl MulticutRun {
    pub fn cost(&self, inst: &Instance) -> u64 {
        self.q.iter().map(|&e| inst.capacity(e).unwrap_or(0)).sum()
    }

    pub fn dual_value(&self) -> Rational {
        rational::sum(self.y.values())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Bridges of a multigraph; parallel edges and loops are never bridges.
pub fn bridges(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(a, b)) in edges.iter().enumerate() {
        if a != b {
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
    }
    let mut is_bridge = vec![false; edges.len()];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge used to enter it, next adjacency index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
            if let Some(&(w, id)) = adj[v].get(*next) {
                *next += 1;
                if id == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, id, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        is_bridge[via] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

fn crosses(dm: &DualMap, e: EdgeId, side: &BTreeSet<FaceId>) -> bool {
    let (a, b) = dm.ends(e);
    side.contains(&a) != side.contains(&b)
}

/// `p(S)`: 1 when exactly one demand dual edge leaves `S`.
pub fn p_value(inst: &Instance, dm: &DualMap, s: &BTreeSet<FaceId>) -> u8 {
    let crossing = inst.demand_edges().filter(|&e| crosses(dm, e, s)).count();
    u8::from(crossing == 1)
}

fn dual_bridges(inst: &Instance, dm: &DualMap, qstar: &[bool]) -> Vec<bool> {
    let edges: Vec<(usize, usize)> = (0..dm.num_edges())
        .map(|e| {
            if inst.is_demand(e) || qstar[e] {
                dm.ends(e)
            } else {
                // Left out of the graph: a loop is never a bridge and joins nothing.
                (0, 0)
            }
        })
        .collect();
    bridges(dm.num_vertices(), &edges)
}

/// No demand dual edge is a bridge of `(V*, Q* ∪ F*)`.
pub fn is_2connector(inst: &Instance, dm: &DualMap, qstar: &[EdgeId]) -> bool {
    let mut chosen = vec![false; dm.num_edges()];
    for &e in qstar {
        chosen[e] = inst.is_supply(e);
    }
    let is_bridge = dual_bridges(inst, dm, &chosen);
    inst.demand_edges().all(|e| !is_bridge[e])
}

/// The inclusion-minimal dual sets `S` with `p(S) = 1` that no edge of `Q*`
/// leaves. They are pairwise disjoint and returned as raw sides (a side may
/// contain the outer face), sorted.
///
/// Contract the components of `Q*`; a violated set is then one side of a
/// bridge of the demand edges between the contracted nodes, and the minimal
/// ones are the leaves of the bridge tree.
pub fn minimal_violated_sets(inst: &Instance, dm: &DualMap, qstar: &[EdgeId]) -> Vec<BTreeSet<FaceId>> {
    let n = dm.num_vertices();
    let mut uf = UnionFind::new(n);
    for &e in qstar {
        if inst.is_supply(e) {
            let (a, b) = dm.ends(e);
            uf.union(a, b);
        }
    }
    let comp: Vec<usize> = (0..n).map(|f| uf.find(f)).collect();
    let demand: Vec<EdgeId> = inst.demand_edges().collect();
    let contracted: Vec<(usize, usize)> = demand
        .iter()
        .map(|&e| {
            let (a, b) = dm.ends(e);
            (comp[a], comp[b])
        })
        .collect();
    let is_bridge = bridges(n, &contracted);

    // Two-edge-connected blocks of the contracted graph: join across non-bridges.
    let mut blocks = UnionFind::new(n);
    for (i, &(a, b)) in contracted.iter().enumerate() {
        if !is_bridge[i] {
            blocks.union(a, b);
        }
    }
    let mut bridge_degree = vec![0usize; n];
    for (i, &(a, b)) in contracted.iter().enumerate() {
        if is_bridge[i] {
            bridge_degree[blocks.find(a)] += 1;
            bridge_degree[blocks.find(b)] += 1;
        }
    }
    let mut sides: BTreeMap<usize, BTreeSet<FaceId>> = BTreeMap::new();
    for (f, &c) in comp.iter().enumerate().take(n) {
        let block = blocks.find(c);
        if bridge_degree[block] == 1 {
            sides.entry(block).or_default().insert(f);
        }
    }
    let mut out: Vec<BTreeSet<FaceId>> = sides.into_values().collect();
    out.sort();
    out
}

/// A supply path inside `δ(S)*` joining the ends of the one demand edge that
/// leaves `S`.
pub fn path_in_cut(inst: &Instance, dm: &DualMap, side: &BTreeSet<FaceId>) -> Result<Path> {
    let mut demands = inst.demand_edges().filter(|&e| crosses(dm, e, side));
    let (Some(demand), None) = (demands.next(), demands.next()) else {
        return Err(Error::BadParameter(
            "set is not crossed by exactly one demand edge".into(),
        ));
    };
    let (s, t) = inst.endpoints(demand);
    let mut prev: Vec<Option<(usize, EdgeId)>> = vec![None; inst.num_vertices()];
    let mut seen = vec![false; inst.num_vertices()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    let usable: Vec<EdgeId> = inst.supply_edges().filter(|&e| crosses(dm, e, side)).collect();
    while let Some(u) = queue.pop_front() {
        for &e in &usable {
            let (a, b) = inst.endpoints(e);
            let w = match (a == u, b == u) {
                (true, _) => b,
                (_, true) => a,
                _ => continue,
            };
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    if !seen[t] {
        return Err(Error::Internal("no supply path inside the cut".into()));
    }
    let mut vertices = vec![t];
    let mut edges = Vec::new();
    while let Some((u, e)) = prev[*vertices.last().unwrap()] {
        vertices.push(u);
        edges.push(e);
    }
    Path::new(inst, demand, vertices, edges)
}

/// `f(P_S) = y(S)` for every moat.
pub fn flow_from_dual(inst: &Instance, dm: &DualMap, y: &BTreeMap<Shore, Rational>) -> Result<Flow> {
    let mut f = Flow::new();
    for (shore, value) in y {
        if value.is_positive() {
            f.add(path_in_cut(inst, dm, shore.faces())?, value.clone());
        }
    }
    Ok(f)
}

/// True when no demand edge has both ends in one component of `G − Q`.
pub fn verify_multicut(inst: &Instance, q: &[EdgeId]) -> bool {
    let removed: BTreeSet<EdgeId> = q.iter().copied().collect();
    let mut uf = UnionFind::new(inst.num_vertices());
    for e in inst.supply_edges().filter(|e| !removed.contains(e)) {
        let (a, b) = inst.endpoints(e);
        uf.union(a, b);
    }
    inst.demand_edges().all(|e| {
        let (a, b) = inst.endpoints(e);
        uf.find(a) != uf.find(b)
    })
}

pub fn wgmv_multicut(inst: &Instance) -> Result<MulticutRun> {
    let dm = inst.dual();
    let supply: Vec<EdgeId> = inst.supply_edges().collect();
    let mut load = vec![Rational::zero(); dm.num_edges()];
    let mut in_q = vec![false; dm.num_edges()];
    let mut order: Vec<EdgeId> = Vec::new();
    let mut y: BTreeMap<Shore, Rational> = BTreeMap::new();

    loop {
        let active = minimal_violated_sets(inst, &dm, &order);
        if active.is_empty() {
            break;
        }
        let rate = |e: EdgeId| active.iter().filter(|s| crosses(&dm, e, s)).count() as u64;
        let mut event: Option<(Rational, EdgeId)> = None;
        for &e in supply.iter().filter(|&&e| !in_q[e]) {
            let r = rate(e);
            if r == 0 {
                continue;
            }
            let slack = from_u64(inst.capacity(e).unwrap_or(0)) - &load[e];
            let t = slack / from_u64(r);
            if event.as_ref().is_none_or(|(best, _)| t < *best) {
                event = Some((t, e));
            }
        }
        let Some((t, bought)) = event else {
            return Err(Error::Internal("violated set with no edge to grow against".into()));
        };
        for side in &active {
            let shore = Shore::new(side.iter().copied(), &dm)?;
            *y.entry(shore).or_insert_with(Rational::zero) += &t;
        }
        for &e in &supply {
            let r = rate(e);
            if r > 0 {
                load[e] += &t * from_u64(r);
            }
        }
        in_q[bought] = true;
        order.push(bought);
    }
    y.retain(|_, v| v.is_positive());

    let mut kept = order.clone();
    for &e in order.iter().rev() {
        let without: Vec<EdgeId> = kept.iter().copied().filter(|&g| g != e).collect();
        if is_2connector(inst, &dm, &without) {
            kept = without;
        }
    }
    kept.sort_unstable();
    let mut x = vec![false; dm.num_edges()];
    kept.iter().for_each(|&e| x[e] = true);
    let flow = flow_from_dual(inst, &dm, &y)?;
    Ok(MulticutRun {
        q: kept,
        x,
        y,
        flow,
        order,
    })
}
