//! Rounding laminar flows.
//!
//! The chain systems built here have one row per ordered pair `(u, v)` of
//! faces joined by a supply dual edge; the row holds the members of the
//! laminar family containing `u` but not `v`. Such rows are chains of the
//! family, so the constraint matrix is a network matrix and every vertex of
//! the polytope is integral.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flow::{check_feasible, Flow, Path};
use crate::instance::Instance;
use crate::laminar::{laminarize, LaminarFlow};
use crate::lp::LinearProgram;
use crate::plane::{DualMap, EdgeId, FaceId};
use crate::rational::{self, from_u64, Rational};

/// One constraint `Σ_{L ∈ members} x_L ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRow {
    /// Supply edge and ordered dual pair `(u, v)` the row comes from, when
    /// built from an instance.
    pub origin: Option<(EdgeId, FaceId, FaceId)>,
    /// Members, innermost first.
    pub members: Vec<usize>,
    pub rhs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLp {
    num_vars: usize,
    /// Every variable precedes the variables of its supersets.
    order: Vec<usize>,
    rows: Vec<ChainRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSolution {
    pub x: Vec<u64>,
    /// 0/1 dual, one entry per row.
    pub y: Vec<u64>,
    pub value: u64,
}

impl ChainLp {
    /// `order` must list every variable once, subsets before supersets.
    pub fn new(num_vars: usize, order: Vec<usize>, rows: Vec<ChainRow>) -> Result<ChainLp> {
        let mut seen = vec![false; num_vars];
        for &v in &order {
            if v >= num_vars || std::mem::replace(&mut seen[v], true) {
                return Err(Error::BadParameter("order is not a permutation".into()));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::BadParameter("order is not a permutation".into()));
        }
        if rows.iter().any(|r| r.members.iter().any(|&m| m >= num_vars)) {
            return Err(Error::BadParameter("row member out of range".into()));
        }
        Ok(ChainLp { num_vars, order, rows })
    }

    /// Rows for both orientations of every supply dual edge, with the
    /// right-hand side chosen by `rhs(edge, d)` where `d` is the current
    /// weight of the row's members.
    pub fn from_laminar(
        inst: &Instance,
        dm: &DualMap,
        lf: &LaminarFlow,
        rhs: impl Fn(EdgeId, &Rational) -> u64,
    ) -> ChainLp {
        let mut rows = Vec::new();
        for e in inst.supply_edges() {
            let (a, b) = dm.ends(e);
            if a == b {
                continue;
            }
            for (u, v) in [(a, b), (b, a)] {
                let members = lf.chain(u, v);
                if members.is_empty() {
                    continue;
                }
                let d = rational::sum(members.iter().map(|&i| &lf.entries()[i].value));
                rows.push(ChainRow {
                    origin: Some((e, u, v)),
                    rhs: rhs(e, &d),
                    members,
                });
            }
        }
        let mut order: Vec<usize> = (0..lf.len()).collect();
        order.sort_by_key(|&i| (lf.entries()[i].shore.len(), i));
        ChainLp {
            num_vars: lf.len(),
            order,
            rows,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[ChainRow] {
        &self.rows
    }

    pub fn to_lp(&self) -> LinearProgram {
        let mut lp = LinearProgram::max_sum(self.num_vars);
        for row in &self.rows {
            lp.add_indicator_row(row.members.iter().copied(), from_u64(row.rhs));
        }
        lp
    }

    /// Checks that `sol` is primal feasible, dual feasible, and of equal
    /// primal and dual value.
    pub fn certifies(&self, sol: &ChainSolution) -> bool {
        if sol.x.len() != self.num_vars || sol.y.len() != self.rows.len() {
            return false;
        }
        let primal: u64 = sol.x.iter().sum();
        let dual: u64 = self.rows.iter().zip(&sol.y).map(|(r, y)| r.rhs * y).sum();
        let mut cover = vec![0u64; self.num_vars];
        for (row, &y) in self.rows.iter().zip(&sol.y) {
            let load: u64 = row.members.iter().map(|&m| sol.x[m]).sum();
            if load > row.rhs {
                return false;
            }
            for &m in &row.members {
                cover[m] += y;
            }
        }
        primal == sol.value && dual == sol.value && cover.iter().all(|&c| c >= 1)
    }
}

/// Greedy integral optimum of a chain system with all-ones objective.
///
/// Innermost first, each live variable takes the smallest residual
/// right-hand side among the rows containing it (ties go to the row with
/// more members, then to the lower index); that row is then deleted together
/// with its variables. Every deleted row is tight. The dual is read off the
/// deleted rows in reverse order: a row gets `y = 1` when it covers a
/// variable not yet covered and no positive variable that already is.
pub fn greedy_chain_lp(clp: &ChainLp) -> Result<ChainSolution> {
    let mut rows_of = vec![Vec::new(); clp.num_vars];
    for (r, row) in clp.rows.iter().enumerate() {
        for &m in &row.members {
            rows_of[m].push(r);
        }
    }
    let mut residual: Vec<u64> = clp.rows.iter().map(|r| r.rhs).collect();
    let mut row_alive = vec![true; clp.rows.len()];
    let mut var_alive = vec![true; clp.num_vars];
    let mut x = vec![0u64; clp.num_vars];
    let mut deleted = Vec::new();
    for &l in &clp.order {
        if !var_alive[l] {
            continue;
        }
        let live: Vec<usize> = rows_of[l].iter().copied().filter(|&r| row_alive[r]).collect();
        let key = |r: usize| (residual[r], std::cmp::Reverse(clp.rows[r].members.len()), r);
        let Some(r0) = live.iter().copied().min_by_key(|&r| key(r)) else {
            return Err(Error::Unbounded);
        };
        let amount = residual[r0];
        x[l] = amount;
        for &r in &live {
            residual[r] -= amount;
        }
        row_alive[r0] = false;
        deleted.push(r0);
        for &m in &clp.rows[r0].members {
            var_alive[m] = false;
        }
    }

    let mut y = vec![0u64; clp.rows.len()];
    let mut covered = vec![false; clp.num_vars];
    for &r in deleted.iter().rev() {
        let members = &clp.rows[r].members;
        let fresh = members.iter().any(|&m| !covered[m]);
        let clash = members.iter().any(|&m| covered[m] && x[m] > 0);
        if fresh && !clash {
            y[r] = 1;
            members.iter().for_each(|&m| covered[m] = true);
        }
    }
    let value = x.iter().sum();
    Ok(ChainSolution { x, y, value })
}

/// Solves the system with the greedy and with the exact simplex; the two
/// must agree and the simplex vertex must be integral.
pub fn solve_chain_lp(clp: &ChainLp) -> Result<ChainSolution> {
    let greedy = greedy_chain_lp(clp)?;
    if !clp.certifies(&greedy) {
        return Err(Error::Internal(
            "greedy chain solution fails its own certificate".into(),
        ));
    }
    let exact = clp.to_lp().solve_max()?;
    if exact.value != from_u64(greedy.value) {
        return Err(Error::Internal(format!(
            "greedy chain value {} differs from the simplex value {}",
            greedy.value, exact.value
        )));
    }
    if !exact.x.iter().all(rational::is_integer) {
        return Err(Error::Internal("simplex vertex of a chain system is fractional".into()));
    }
    Ok(greedy)
}

/// A random chain system: a random forest as the laminar family (each node a
/// set, ancestors are supersets) and rows that are upward paths.
pub fn random_chain_lp(seed: u64) -> ChainLp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=12);
    let parent: Vec<Option<usize>> = (0..n)
        .map(|i| (i > 0 && rng.gen_bool(0.8)).then(|| rng.gen_range(0..i)))
        .collect();
    let upward = |start: usize, len: usize| {
        let mut path = vec![start];
        while path.len() < len {
            match parent[*path.last().unwrap()] {
                Some(p) => path.push(p),
                None => break,
            }
        }
        path
    };
    let mut rows = Vec::new();
    let mut covered = vec![false; n];
    for _ in 0..rng.gen_range(1..=2 * n) {
        let members = upward(rng.gen_range(0..n), rng.gen_range(1..=n));
        members.iter().for_each(|&m| covered[m] = true);
        rows.push(ChainRow {
            origin: None,
            members,
            rhs: rng.gen_range(0..=5),
        });
    }
    for (v, &done) in covered.iter().enumerate() {
        if !done {
            rows.push(ChainRow {
                origin: None,
                members: upward(v, rng.gen_range(1..=n)),
                rhs: rng.gen_range(0..=5),
            });
        }
    }
    // Children have larger indices than their parents.
    let order = (0..n).rev().collect();
    ChainLp {
        num_vars: n,
        order,
        rows,
    }
}

fn flow_from_counts(lf: &LaminarFlow, x: &[u64], scale: &Rational) -> Flow {
    lf.entries()
        .iter()
        .zip(x)
        .filter(|(_, &c)| c > 0)
        .map(|(e, &c)| (e.path.clone(), from_u64(c) * scale))
        .collect()
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(what.into()))
    }
}

/// A feasible half-integer flow of value at least `|lf| / 2`: solve the chain
/// system with right-hand side `c(e)` on both orientations and halve.
pub fn half_integer_round(inst: &Instance, lf: &LaminarFlow) -> Result<Flow> {
    let dm = inst.dual();
    let clp = ChainLp::from_laminar(inst, &dm, lf, |e, _| inst.capacity(e).unwrap_or(0));
    let sol = solve_chain_lp(&clp)?;
    require(
        from_u64(sol.value) >= lf.value(),
        "chain optimum below the laminar value",
    )?;
    let out = flow_from_counts(lf, &sol.x, &rational::half());
    require(
        check_feasible(inst, &out)?.feasible,
        "half-integer rounding is infeasible",
    )?;
    Ok(out)
}

pub fn half_integer_round_flow(inst: &Instance, f: &Flow) -> Result<Flow> {
    half_integer_round(inst, &laminarize(inst, f)?)
}

/// An integer flow of value at least `|lf|` that overloads no edge by more
/// than one: right-hand sides are `⌈d(u, v)⌉`.
pub fn plus_one_round(inst: &Instance, lf: &LaminarFlow) -> Result<Flow> {
    let dm = inst.dual();
    let clp = ChainLp::from_laminar(inst, &dm, lf, |_, d| {
        rational::ceil(d).to_integer().to_u64().unwrap_or(u64::MAX)
    });
    let sol = solve_chain_lp(&clp)?;
    require(
        from_u64(sol.value) >= lf.value(),
        "chain optimum below the laminar value",
    )?;
    let out = flow_from_counts(lf, &sol.x, &Rational::from_integer(1.into()));
    require(
        check_feasible(inst, &out)?.feasible_with_extra(1),
        "plus-one rounding exceeds c + 1",
    )?;
    Ok(out)
}

pub fn plus_one_round_flow(inst: &Instance, f: &Flow) -> Result<Flow> {
    plus_one_round(inst, &laminarize(inst, f)?)
}

/// The half-valued part of a laminar half-integer flow, with its supply
/// edges split into unit slots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfSplitStructure {
    /// Paths carrying exactly one half.
    pub cuts: Vec<Path>,
    /// `slots[e][j]`: the cuts (at most two) using slot `j` of supply edge
    /// `e`. Empty for demand edges.
    pub slots: Vec<Vec<Vec<usize>>>,
    /// Intersection graph: pairs `(i, j)`, `i < j`, of cuts sharing a slot.
    pub conflicts: BTreeSet<(usize, usize)>,
}

impl HalfSplitStructure {
    pub fn value(&self) -> Rational {
        from_u64(self.cuts.len() as u64) * rational::half()
    }
}

/// Splits a laminar half-integer flow into its integer part and halves.
///
/// Along a supply edge `e` with `e* = uv`, the halves using `e` are exactly
/// `ℒ(u, v) ∪ ℒ(v, u)`. Listing `ℒ(u, v)` outermost to innermost and then
/// `ℒ(v, u)` innermost to outermost and pairing them off in that order puts
/// neighbours across `e` into the same unit slot, as a subdivision of `e`
/// into `c(e)` parallel unit edges would.
pub fn refine_halves(inst: &Instance, lf: &LaminarFlow) -> Result<(Flow, HalfSplitStructure)> {
    let dm = inst.dual();
    let mut integer = Flow::new();
    let mut half_index = vec![None; lf.len()];
    let mut cuts = Vec::new();
    for (i, entry) in lf.entries().iter().enumerate() {
        let whole = rational::floor(&entry.value);
        if !whole.is_zero() {
            integer.add(entry.path.clone(), whole.clone());
        }
        let rest = &entry.value - &whole;
        if rest == rational::half() {
            half_index[i] = Some(cuts.len());
            cuts.push(entry.path.clone());
        } else if !rest.is_zero() {
            return Err(Error::BadParameter("flow is not half-integer".into()));
        }
    }
    let integer_loads = integer.loads(inst);
    let mut slots = vec![Vec::new(); inst.num_edges()];
    let mut conflicts = BTreeSet::new();
    for e in inst.supply_edges() {
        let remaining = from_u64(inst.capacity(e).unwrap_or(0)) - &integer_loads[e];
        if remaining < Rational::zero() {
            return Err(Error::Internal(format!("capacity underflow on edge {e}")));
        }
        let (u, v) = dm.ends(e);
        if u == v {
            continue;
        }
        let halves = |a, b| -> Vec<usize> { lf.chain(a, b).into_iter().filter_map(|i| half_index[i]).collect() };
        let mut sequence: Vec<usize> = halves(u, v);
        sequence.reverse();
        sequence.extend(halves(v, u));
        let available = remaining.to_integer().to_usize().unwrap_or(usize::MAX);
        let needed = sequence.len().div_ceil(2);
        if needed > available {
            return Err(Error::Internal(format!(
                "edge {e} needs {needed} slots but has {available}"
            )));
        }
        for pair in sequence.chunks(2) {
            if let [a, b] = *pair {
                conflicts.insert((a.min(b), a.max(b)));
            }
            slots[e].push(pair.to_vec());
        }
    }
    Ok((integer, HalfSplitStructure { cuts, slots, conflicts }))
}

/// A maximum stable set of the simple graph on `n` vertices, required to have
/// at least `target` vertices. Ties are broken towards smaller vertex ids.
pub fn stable_set(n: usize, edges: &[(usize, usize)], target: usize) -> Result<Vec<usize>> {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return Err(Error::BadParameter(format!("bad graph edge ({a}, {b})")));
        }
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut best = Vec::new();
    let mut chosen = Vec::new();
    let candidates: Vec<usize> = (0..n).collect();
    mis(&adj, candidates, &mut chosen, &mut best);
    best.sort_unstable();
    if best.len() < target {
        return Err(Error::TargetUnreachable {
            found: best.len(),
            target,
        });
    }
    Ok(best)
}

fn mis(adj: &[Vec<bool>], candidates: Vec<usize>, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
    if chosen.len() + candidates.len() <= best.len() {
        return;
    }
    if candidates.is_empty() {
        *best = chosen.clone();
        return;
    }
    let degree = |v: usize| candidates.iter().filter(|&&w| adj[v][w]).count();
    let degrees: Vec<usize> = candidates.iter().map(|&v| degree(v)).collect();
    // A vertex of degree at most one belongs to some maximum stable set.
    if let Some(i) = (0..candidates.len()).find(|&i| degrees[i] <= 1) {
        let v = candidates[i];
        let rest = candidates.iter().copied().filter(|&w| w != v && !adj[v][w]).collect();
        chosen.push(v);
        mis(adj, rest, chosen, best);
        chosen.pop();
        return;
    }
    let i = (0..candidates.len())
        .max_by_key(|&i| (degrees[i], std::cmp::Reverse(i)))
        .unwrap();
    let v = candidates[i];
    let with: Vec<usize> = candidates.iter().copied().filter(|&w| w != v && !adj[v][w]).collect();
    chosen.push(v);
    mis(adj, with, chosen, best);
    chosen.pop();
    let without: Vec<usize> = candidates.iter().copied().filter(|&w| w != v).collect();
    mis(adj, without, chosen, best);
}

/// A feasible integer flow of value at least `|hf| / 2`.
pub fn integer_round(inst: &Instance, hf: &Flow) -> Result<Flow> {
    if !hf.is_half_integer() {
        return Err(Error::BadParameter("flow is not half-integer".into()));
    }
    require(check_feasible(inst, hf)?.feasible, "input flow is infeasible")?;
    if hf.is_integer() {
        return Ok(hf.clone());
    }
    let lf = laminarize(inst, hf)?;
    let out = match round_with_slots(inst, &lf) {
        Err(Error::TargetUnreachable { .. }) => round_subdivided(inst, &lf)?,
        other => other?,
    };
    require(check_feasible(inst, &out)?.feasible, "integer rounding is infeasible")?;
    require(
        out.value() * from_u64(2) >= hf.value(),
        "integer rounding lost more than half",
    )?;
    Ok(out)
}

fn round_with_slots(inst: &Instance, lf: &LaminarFlow) -> Result<Flow> {
    let (mut out, split) = refine_halves(inst, lf)?;
    let n = split.cuts.len();
    let conflicts: Vec<(usize, usize)> = split.conflicts.iter().copied().collect();
    for i in stable_set(n, &conflicts, n.div_ceil(4))? {
        out.add(split.cuts[i].clone(), from_u64(1));
    }
    Ok(out)
}

/// Fallback: replace every supply edge by `c(e)` parallel unit edges, route
/// the halves onto the copies slot by slot, laminarize again there and round
/// in the unit-capacity instance.
fn round_subdivided(inst: &Instance, lf: &LaminarFlow) -> Result<Flow> {
    let (unit, original_of) = unit_subdivision(inst)?;
    let (integer, split) = refine_halves(inst, lf)?;
    let copies_of = |e: EdgeId| -> Vec<EdgeId> { (0..unit.num_edges()).filter(|&c| original_of[c] == e).collect() };
    let integer_loads = integer.loads(inst);
    let mut routed = Flow::new();
    let mut slot_edge: Vec<Vec<EdgeId>> = vec![Vec::new(); split.cuts.len()];
    for e in inst.supply_edges() {
        // Copies below the integer load are taken by the integer part.
        let skip = integer_loads[e].to_integer().to_usize().unwrap_or(0);
        let copies = copies_of(e);
        for (j, slot) in split.slots[e].iter().enumerate() {
            for &cut in slot {
                slot_edge[cut].push(copies[skip + j]);
            }
        }
    }
    for (i, path) in split.cuts.iter().enumerate() {
        let mut edges = Vec::new();
        for &e in path.edges() {
            let copy = slot_edge[i]
                .iter()
                .copied()
                .find(|&c| original_of[c] == e)
                .ok_or_else(|| Error::Internal("half path lost its slot".into()))?;
            edges.push(copy);
        }
        let demand = path.demand();
        routed.add(
            Path::new(&unit, demand, path.vertices().to_vec(), edges)?,
            rational::half(),
        );
    }
    let relaminar = laminarize(&unit, &routed)?;
    let (_, unit_split) = refine_halves(&unit, &relaminar)?;
    let n = unit_split.cuts.len();
    let conflicts: Vec<(usize, usize)> = unit_split.conflicts.iter().copied().collect();
    let mut out = integer;
    for i in stable_set(n, &conflicts, n.div_ceil(4))? {
        let p = &unit_split.cuts[i];
        let edges: Vec<EdgeId> = p.edges().iter().map(|&c| original_of[c]).collect();
        out.add(Path::new(inst, p.demand(), p.vertices().to_vec(), edges)?, from_u64(1));
    }
    Ok(out)
}

/// The instance with each supply edge `e` of capacity `c(e) ≥ 1` replaced by
/// `c(e)` consecutive parallel unit edges. Original ids are kept for the first
/// copy; the map sends every edge of the new instance to its original.
pub fn unit_subdivision(inst: &Instance) -> Result<(Instance, Vec<EdgeId>)> {
    let pg = inst.plane();
    let mut edges: Vec<(usize, usize)> = pg.edges().to_vec();
    let mut roles = inst.roles().to_vec();
    let mut original_of: Vec<EdgeId> = (0..pg.num_edges()).collect();
    let mut extra: Vec<Vec<EdgeId>> = vec![Vec::new(); pg.num_edges()];
    for e in inst.supply_edges() {
        let c = inst.capacity(e).unwrap_or(0);
        roles[e] = crate::instance::EdgeRole::Supply(1);
        for _ in 1..c {
            extra[e].push(edges.len());
            edges.push(pg.endpoints(e));
            roles.push(crate::instance::EdgeRole::Supply(1));
            original_of.push(e);
        }
    }
    let mut rotation = Vec::with_capacity(pg.num_vertices());
    for v in 0..pg.num_vertices() {
        let mut order = Vec::new();
        for &d in pg.rotation(v) {
            let e = d.edge();
            order.push(e);
            // At the first endpoint the copies follow the edge, at the second
            // they precede it in reverse, so the bundle stays planar.
            if d.from_second() {
                let pos = order.len() - 1;
                for &c in &extra[e] {
                    order.insert(pos, c);
                }
            } else {
                order.extend(&extra[e]);
            }
        }
        rotation.push(order);
    }
    let outer = inst.plane().outer_dart();
    let plane = match outer {
        Some(d) => crate::plane::PlaneGraph::with_outer_dart(pg.num_vertices(), edges, rotation, d)?,
        None => crate::plane::PlaneGraph::new(pg.num_vertices(), edges, rotation, 0)?,
    };
    Ok((Instance::from_plane(plane, roles)?, original_of))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{enumerate_paths, max_multiflow, DEFAULT_PATH_CAP};
    use crate::instance::fuzz::{random_flow, random_instance};
    use crate::instance::{gen_c4_2k2_overline, gen_gk};
    use crate::rational::{half, int};

    fn optimum(inst: &Instance) -> Flow {
        let paths = enumerate_paths(inst, DEFAULT_PATH_CAP).unwrap();
        max_multiflow(inst, &paths).unwrap().flow
    }

    fn row(members: Vec<usize>, rhs: u64) -> ChainRow {
        ChainRow {
            origin: None,
            members,
            rhs,
        }
    }

    #[test]
    fn greedy_single_set_takes_minimum() {
        let clp = ChainLp::new(1, vec![0], vec![row(vec![0], 3), row(vec![0], 5)]).unwrap();
        let sol = greedy_chain_lp(&clp).unwrap();
        assert_eq!(sol.x, vec![3]);
        assert_eq!(sol.value, 3);
        assert!(clp.certifies(&sol));
    }

    #[test]
    fn greedy_nested_pair() {
        let clp = ChainLp::new(2, vec![0, 1], vec![row(vec![0, 1], 2), row(vec![1], 1)]).unwrap();
        let sol = solve_chain_lp(&clp).unwrap();
        assert_eq!(sol.value, 2);
    }

    #[test]
    fn greedy_matches_simplex_on_random_systems() {
        for seed in 0..5000 {
            let clp = random_chain_lp(seed);
            let sol = greedy_chain_lp(&clp).unwrap();
            assert!(clp.certifies(&sol), "seed {seed}: {clp:?} {sol:?}");
            let exact = clp.to_lp().solve_max().unwrap();
            assert_eq!(exact.value, from_u64(sol.value), "seed {seed}");
            assert!(exact.x.iter().all(rational::is_integer));
        }
    }

    #[test]
    fn uncovered_variable_is_unbounded() {
        let clp = ChainLp::new(2, vec![0, 1], vec![row(vec![0], 1)]).unwrap();
        assert_eq!(greedy_chain_lp(&clp).unwrap_err(), Error::Unbounded);
    }

    #[test]
    fn zero_flow_rounds_to_zero() {
        let inst = gen_gk(3).unwrap();
        let lf = LaminarFlow::default();
        assert!(half_integer_round(&inst, &lf).unwrap().is_empty());
        assert!(plus_one_round(&inst, &lf).unwrap().is_empty());
        assert!(integer_round(&inst, &Flow::new()).unwrap().is_empty());
    }

    #[test]
    fn ladder_rounding_bounds() {
        for k in 3..=8 {
            let inst = gen_gk(k).unwrap();
            let f = optimum(&inst);
            let lf = laminarize(&inst, &f).unwrap();
            let h = half_integer_round(&inst, &lf).unwrap();
            assert!(h.is_half_integer());
            assert!(h.value() * int(2) >= f.value());
            let p = plus_one_round(&inst, &lf).unwrap();
            assert!(p.is_integer());
            assert!(p.value() >= f.value());
            assert!(check_feasible(&inst, &p).unwrap().feasible_with_extra(1));
        }
    }

    #[test]
    fn fuzz_rounding_bounds() {
        for seed in 0..60 {
            let inst = random_instance(seed).unwrap();
            let f = if seed % 2 == 0 {
                optimum(&inst)
            } else {
                random_flow(&inst, seed).unwrap()
            };
            let h = half_integer_round_flow(&inst, &f).unwrap();
            assert!(h.is_half_integer() && h.value() * int(2) >= f.value(), "seed {seed}");
            let p = plus_one_round_flow(&inst, &f).unwrap();
            assert!(p.is_integer() && p.value() >= f.value(), "seed {seed}");
            let i = integer_round(&inst, &h).unwrap();
            assert!(i.is_integer() && i.value() * int(2) >= h.value(), "seed {seed}");
        }
    }

    #[test]
    fn integer_input_is_unchanged() {
        let inst = gen_gk(4).unwrap();
        let lf = laminarize(&inst, &optimum(&inst)).unwrap();
        let p = plus_one_round(&inst, &lf).unwrap();
        let flows = enumerate_paths(&inst, DEFAULT_PATH_CAP).unwrap();
        let one: Flow = [(flows.paths()[0].clone(), int(1))].into_iter().collect();
        assert_eq!(integer_round(&inst, &one).unwrap(), one);
        let lf_one = laminarize(&inst, &one).unwrap();
        let again = plus_one_round(&inst, &lf_one).unwrap();
        assert!(again.value() >= one.value());
        assert!(p.is_integer());
        let (integer, split) = refine_halves(&inst, &lf_one).unwrap();
        assert_eq!(integer, one);
        assert!(split.cuts.is_empty());
    }

    #[test]
    fn two_halves_share_one_slot() {
        // One supply edge of capacity 1 shared by two demands.
        let inst = Instance::new(
            3,
            vec![
                (0, 1, crate::instance::EdgeRole::Supply(1)),
                (0, 1, crate::instance::EdgeRole::Demand),
                (1, 2, crate::instance::EdgeRole::Supply(5)),
                (0, 2, crate::instance::EdgeRole::Demand),
            ],
            vec![vec![0, 1, 3], vec![2, 1, 0], vec![3, 2]],
            0,
        )
        .unwrap();
        let paths = enumerate_paths(&inst, DEFAULT_PATH_CAP).unwrap();
        let f: Flow = paths.paths().iter().map(|p| (p.clone(), half())).collect();
        let lf = laminarize(&inst, &f).unwrap();
        let (integer, split) = refine_halves(&inst, &lf).unwrap();
        assert!(integer.is_empty());
        assert_eq!(split.cuts.len(), 2);
        assert_eq!(split.slots[0], vec![vec![0, 1]]);
        assert_eq!(split.conflicts.len(), 1);
        assert_eq!(split.value(), int(1));
    }

    #[test]
    fn stable_set_examples() {
        assert_eq!(stable_set(5, &[], 2).unwrap(), vec![0, 1, 2, 3, 4]);
        let square = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert_eq!(stable_set(4, &square, 1).unwrap().len(), 2);
        let triangle = [(0, 1), (1, 2), (0, 2)];
        assert_eq!(
            stable_set(3, &triangle, 2).unwrap_err(),
            Error::TargetUnreachable { found: 1, target: 2 }
        );
    }

    fn icosahedron() -> Vec<(usize, usize)> {
        // top 0, upper ring 1..=5, lower ring 6..=10, bottom 11
        let mut e = Vec::new();
        for i in 0..5 {
            let (u, u2) = (1 + i, 1 + (i + 1) % 5);
            let (l, l2) = (6 + i, 6 + (i + 1) % 5);
            e.extend([(0, u), (u, u2), (u, l), (u, l2), (l, l2), (l, 11)]);
        }
        e
    }

    fn brute_force_mis(n: usize, edges: &[(usize, usize)]) -> usize {
        (0u32..1 << n)
            .filter(|m| edges.iter().all(|&(a, b)| m & (1 << a) == 0 || m & (1 << b) == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn icosahedron_stable_set() {
        let edges = icosahedron();
        assert_eq!(edges.len(), 30);
        let s = stable_set(12, &edges, 3).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(brute_force_mis(12, &edges), 3);
    }

    #[test]
    fn stable_set_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(1..=12);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(0.3))
                .collect();
            let s = stable_set(n, &edges, 0).unwrap();
            assert_eq!(s.len(), brute_force_mis(n, &edges));
            assert!(edges.iter().all(|(a, b)| !(s.contains(a) && s.contains(b))));
        }
    }

    #[test]
    fn c4_overline_integer_round_hits_one() {
        let inst = gen_c4_2k2_overline().unwrap();
        let paths = enumerate_paths(&inst, DEFAULT_PATH_CAP).unwrap();
        let f: Flow = paths.paths().iter().map(|p| (p.clone(), half())).collect();
        assert_eq!(f.value(), int(2));
        assert!(check_feasible(&inst, &f).unwrap().feasible);
        let i = integer_round(&inst, &f).unwrap();
        assert_eq!(i.value(), int(1));
    }

    #[test]
    fn subdivision_fallback_rounds_too() {
        for seed in 0..30 {
            let inst = random_instance(seed).unwrap();
            let (unit, original_of) = unit_subdivision(&inst).unwrap();
            let total: u64 = inst.supply_edges().map(|e| inst.capacity(e).unwrap()).sum();
            assert_eq!(unit.num_supply() as u64, total);
            assert_eq!(original_of.len(), unit.num_edges());
            let h = half_integer_round_flow(&inst, &optimum(&inst)).unwrap();
            if h.is_integer() {
                continue;
            }
            let lf = laminarize(&inst, &h).unwrap();
            let out = round_subdivided(&inst, &lf).unwrap();
            assert!(out.is_integer());
            assert!(check_feasible(&inst, &out).unwrap().feasible, "seed {seed}");
            assert!(out.value() * int(2) >= h.value(), "seed {seed}");
        }
    }
}
