//! Brute-force ground truth for small instances.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::flow::{Flow, PathSet};
use crate::instance::Instance;
use crate::lp::LinearProgram;
use crate::multicut::verify_multicut;
use crate::plane::EdgeId;
use crate::rational::{self, from_u64, Rational};

/// Largest supply edge count for subset enumeration.
pub const MAX_MULTICUT_EDGES: usize = 22;
/// Limits for the integer branch and bound.
pub const MAX_SEARCH_PATHS: usize = 80;
pub const MAX_SEARCH_CAPACITY: u64 = 160;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinMulticut {
    pub value: u64,
    pub q: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleFlow {
    pub value: Rational,
    pub flow: Flow,
}

/// Minimum capacity multicut. Branches on the edges of a path joining some
/// still connected demand: one of them must be cut, and the branch for the
/// `i`-th edge keeps the earlier ones.
pub fn exact_min_multicut(inst: &Instance) -> Result<MinMulticut> {
    let supply: Vec<EdgeId> = inst.supply_edges().collect();
    if supply.len() > MAX_MULTICUT_EDGES {
        return Err(Error::TooLarge(format!(
            "{} supply edges, enumeration limit {MAX_MULTICUT_EDGES}",
            supply.len()
        )));
    }
    let mut state = CutSearch {
        inst,
        cut: vec![false; inst.num_edges()],
        kept: vec![false; inst.num_edges()],
        best: supply.iter().map(|&e| inst.capacity(e).unwrap_or(0)).sum(),
        best_q: supply,
    };
    state.run(0);
    debug_assert!(verify_multicut(inst, &state.best_q));
    Ok(MinMulticut {
        value: state.best,
        q: state.best_q,
    })
}

struct CutSearch<'a> {
    inst: &'a Instance,
    cut: Vec<bool>,
    kept: Vec<bool>,
    best: u64,
    best_q: Vec<EdgeId>,
}

impl CutSearch<'_> {
    /// Supply edges of a shortest path joining some demand in `G − cut`.
    fn connected_demand_path(&self) -> Option<Vec<EdgeId>> {
        let inst = self.inst;
        for d in inst.demand_edges() {
            let (s, t) = inst.endpoints(d);
            let mut prev: Vec<Option<(usize, EdgeId)>> = vec![None; inst.num_vertices()];
            let mut seen = vec![false; inst.num_vertices()];
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for e in inst.supply_edges().filter(|&e| !self.cut[e]) {
                    let (a, b) = inst.endpoints(e);
                    let w = if a == u {
                        b
                    } else if b == u {
                        a
                    } else {
                        continue;
                    };
                    if !seen[w] {
                        seen[w] = true;
                        prev[w] = Some((u, e));
                        queue.push_back(w);
                    }
                }
            }
            if seen[t] {
                let mut edges = Vec::new();
                let mut at = t;
                while let Some((u, e)) = prev[at] {
                    edges.push(e);
                    at = u;
                }
                edges.reverse();
                return Some(edges);
            }
        }
        None
    }

    fn run(&mut self, cost: u64) {
        if cost >= self.best && !(cost == self.best && self.best_q.is_empty()) {
            return;
        }
        let Some(path) = self.connected_demand_path() else {
            self.best = cost;
            self.best_q = (0..self.cut.len()).filter(|&e| self.cut[e]).collect();
            return;
        };
        let free: Vec<EdgeId> = path.into_iter().filter(|&e| !self.kept[e]).collect();
        for (i, &e) in free.iter().enumerate() {
            self.cut[e] = true;
            self.run(cost + self.inst.capacity(e).unwrap_or(0));
            self.cut[e] = false;
            self.kept[e] = true;
            if i + 1 == free.len() {
                free.iter().for_each(|&g| self.kept[g] = false);
            }
        }
    }
}

struct Search<'a> {
    /// Paths as supply-edge index lists, in branching order.
    paths: Vec<Vec<usize>>,
    original: Vec<usize>,
    residual: Vec<u64>,
    chosen: Vec<u64>,
    best: u64,
    best_choice: Vec<u64>,
    all: &'a PathSet,
}

impl Search<'_> {
    fn lp_bound(&self, from: usize) -> u64 {
        let rest = &self.paths[from..];
        if rest.is_empty() {
            return 0;
        }
        let mut lp = LinearProgram::max_sum(rest.len());
        for (e, cap) in self.residual.iter().enumerate() {
            let users: Vec<usize> = (0..rest.len()).filter(|&j| rest[j].contains(&e)).collect();
            if !users.is_empty() {
                lp.add_indicator_row(users, from_u64(*cap));
            }
        }
        match lp.solve_max() {
            Ok(sol) => rational::floor(&sol.value).to_integer().to_u64().unwrap_or(u64::MAX),
            Err(_) => u64::MAX,
        }
    }

    fn run(&mut self, j: usize, current: u64) {
        if current > self.best || (current == self.best && j == self.paths.len() && self.best_choice.is_empty()) {
            self.best = current;
            self.best_choice = self.chosen.clone();
        }
        if j == self.paths.len() || current + self.lp_bound(j) <= self.best {
            return;
        }
        let most = self.paths[j].iter().map(|&e| self.residual[e]).min().unwrap_or(0);
        for m in (0..=most).rev() {
            for &e in &self.paths[j] {
                self.residual[e] -= m;
            }
            self.chosen[j] = m;
            self.run(j + 1, current + m);
            for &e in &self.paths[j] {
                self.residual[e] += m;
            }
            self.chosen[j] = 0;
        }
    }
}

/// Maximum integer multiflow over `paths`, by branch and bound on path
/// multiplicities with the fractional bound of the residual instance.
pub fn exact_max_integer_flow(inst: &Instance, paths: &PathSet) -> Result<OracleFlow> {
    if paths.len() > MAX_SEARCH_PATHS {
        return Err(Error::TooLarge(format!(
            "{} paths, search limit {MAX_SEARCH_PATHS}",
            paths.len()
        )));
    }
    let total: u64 = inst.supply_edges().map(|e| inst.capacity(e).unwrap_or(0)).sum();
    if total > MAX_SEARCH_CAPACITY {
        return Err(Error::TooLarge(format!(
            "total capacity {total}, search limit {MAX_SEARCH_CAPACITY}"
        )));
    }
    // Demands with the fewest paths first.
    let mut order: Vec<usize> = (0..paths.len()).collect();
    let count = |d: EdgeId| paths.for_demand(d).count();
    order.sort_by_key(|&j| {
        let d = paths.paths()[j].demand();
        (count(d), d, j)
    });
    let mut search = Search {
        paths: order.iter().map(|&j| paths.paths()[j].edges().to_vec()).collect(),
        original: order,
        residual: (0..inst.num_edges()).map(|e| inst.capacity(e).unwrap_or(0)).collect(),
        chosen: vec![0; paths.len()],
        best: 0,
        best_choice: Vec::new(),
        all: paths,
    };
    search.run(0, 0);
    let flow: Flow = search
        .best_choice
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| (search.all.paths()[search.original[i]].clone(), from_u64(m)))
        .collect();
    Ok(OracleFlow {
        value: from_u64(search.best),
        flow,
    })
}

/// Maximum half-integer multiflow: the integer optimum at doubled
/// capacities, halved.
pub fn exact_max_half_integer_flow(inst: &Instance, paths: &PathSet) -> Result<OracleFlow> {
    let doubled = inst.with_capacities(|_, c| 2 * c)?;
    let OracleFlow { value, flow } = exact_max_integer_flow(&doubled, paths)?;
    let half = rational::half();
    Ok(OracleFlow {
        value: value * &half,
        flow: if flow.is_empty() {
            Flow::new()
        } else {
            flow.scaled(&half)
        },
    })
}

/// Minimum multicut value as a rational, for comparisons with flow values.
pub fn min_multicut_value(inst: &Instance) -> Result<Rational> {
    Ok(from_u64(exact_min_multicut(inst)?.value))
}
