//! Laminar flows: every positive path closes, with its demand edge, a circuit
//! of `G + H`, and the dual shores of those circuits are pairwise disjoint or
//! nested.
//!
//! A flow is turned into a laminar flow of the same value by uncrossing its
//! shores. Two crossing shores `A`, `B` carrying `w_A`, `w_B` are replaced,
//! with multiplicity `min(w_A, w_B)`, by either `A ∩ B, A ∪ B` or
//! `A \ B, B \ A`. The pair is chosen so that both new cuts still contain
//! exactly one demand dual edge. Every dual edge is covered at most as often
//! as before.
//!
//! Termination is monitored with `Σ w_L · |L| · (n − |L|)` over the family,
//! where `n = |V*|`. Both replacements lower it strictly because `x(n − x)` is
//! strictly concave and complementation leaves it unchanged.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flow::{Flow, Path};
use crate::instance::Instance;
use crate::plane::{cut_edges, shore_from_cycle, DualMap, EdgeId, FaceId, Shore};
use crate::rational::{self, from_u64, Rational};

/// Shores with positive weights; duplicates are merged by the map.
pub type ShoreFamily = BTreeMap<Shore, Rational>;

/// One member of a laminar family together with the path it encodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaminarEntry {
    pub shore: Shore,
    pub value: Rational,
    pub demand: EdgeId,
    /// The supply edges of `δ(L)*`, ordered as a path.
    pub path: Path,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaminarFlow {
    entries: Vec<LaminarEntry>,
}

impl LaminarFlow {
    /// Builds a laminar flow from a weighted family whose cuts are all
    /// single circuits through one demand edge. Checks laminarity and the
    /// size bound `|ℒ| ≤ 2(|V*| − 1)`.
    pub fn from_family(inst: &Instance, dm: &DualMap, family: &ShoreFamily) -> Result<LaminarFlow> {
        let mut entries = Vec::with_capacity(family.len());
        for (shore, value) in family {
            if !value.is_positive() {
                return Err(Error::Internal("non-positive shore weight".into()));
            }
            let cut = cut_edges(dm, shore);
            let demands: Vec<EdgeId> = cut.iter().copied().filter(|&e| inst.is_demand(e)).collect();
            let [demand] = demands[..] else {
                return Err(Error::Internal(format!(
                    "cut of {:?} holds {} demand edges",
                    shore.faces(),
                    demands.len()
                )));
            };
            let supply: Vec<EdgeId> = cut.iter().copied().filter(|&e| inst.is_supply(e)).collect();
            let path = Path::from_edge_set(inst, demand, &supply)
                .map_err(|e| Error::Internal(format!("cut is not a single circuit: {e}")))?;
            entries.push(LaminarEntry {
                shore: shore.clone(),
                value: value.clone(),
                demand,
                path,
            });
        }
        let lf = LaminarFlow { entries };
        if !lf.is_laminar() {
            return Err(Error::Internal("family is not laminar".into()));
        }
        let bound = 2 * dm.num_vertices().saturating_sub(1);
        if lf.len() > bound {
            return Err(Error::Internal(format!(
                "laminar family has {} members, above the bound {bound}",
                lf.len()
            )));
        }
        Ok(lf)
    }

    pub fn entries(&self) -> &[LaminarEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self) -> Rational {
        rational::sum(self.entries.iter().map(|e| &e.value))
    }

    pub fn family(&self) -> ShoreFamily {
        self.entries
            .iter()
            .map(|e| (e.shore.clone(), e.value.clone()))
            .collect()
    }

    pub fn to_flow(&self) -> Flow {
        self.entries.iter().map(|e| (e.path.clone(), e.value.clone())).collect()
    }

    pub fn is_laminar(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, a)| self.entries[i + 1..].iter().all(|b| !a.shore.crosses(&b.shore)))
    }

    /// `ℒ(u, v)`: indices of the members holding `u` but not `v`, innermost
    /// first.
    pub fn chain(&self, u: FaceId, v: FaceId) -> Vec<usize> {
        let mut chain: Vec<usize> = (0..self.entries.len())
            .filter(|&i| self.entries[i].shore.contains(u) && !self.entries[i].shore.contains(v))
            .collect();
        chain.sort_by_key(|&i| (self.entries[i].shore.len(), i));
        chain
    }
}

/// Per dual edge, the total weight of the shores whose cut contains it.
pub fn dual_loads(dm: &DualMap, family: &ShoreFamily) -> Vec<Rational> {
    let mut loads = vec![Rational::zero(); dm.num_edges()];
    for (shore, w) in family {
        for e in cut_edges(dm, shore) {
            loads[e] += w;
        }
    }
    loads
}

/// Maps each positive path `P` to the shore enclosed by `P ∪ {e_P}`.
pub fn flow_to_shores(inst: &Instance, dm: &DualMap, f: &Flow) -> Result<ShoreFamily> {
    let mut family = ShoreFamily::new();
    for (path, amount) in f.iter() {
        let shore = shore_from_cycle(inst.plane(), dm, &path.circuit())?;
        *family.entry(shore).or_insert_with(Rational::zero) += amount;
    }
    Ok(family)
}

fn demand_crossings(inst: &Instance, dm: &DualMap, faces: &BTreeSet<FaceId>) -> usize {
    inst.demand_edges()
        .filter(|&e| {
            let (a, b) = dm.ends(e);
            faces.contains(&a) != faces.contains(&b)
        })
        .count()
}

fn potential(family: &ShoreFamily, n: usize) -> Rational {
    family
        .iter()
        .map(|(s, w)| w * from_u64((s.len() * (n - s.len())) as u64))
        .sum()
}

fn add_weight(family: &mut ShoreFamily, shore: Shore, w: &Rational) {
    *family.entry(shore).or_insert_with(Rational::zero) += w;
}

fn take_weight(family: &mut ShoreFamily, shore: &Shore, w: &Rational) {
    let left = family.get_mut(shore).expect("shore present");
    *left -= w;
    if left.is_zero() {
        family.remove(shore);
    }
}

fn first_crossing_pair(family: &ShoreFamily) -> Option<(Shore, Shore)> {
    let shores: Vec<&Shore> = family.keys().collect();
    for (i, a) in shores.iter().enumerate() {
        for b in &shores[i + 1..] {
            if a.crosses(b) {
                return Some(((*a).clone(), (*b).clone()));
            }
        }
    }
    None
}

/// Uncrosses until the family is laminar. Returns the number of steps taken.
fn uncross_pairs(inst: &Instance, dm: &DualMap, family: &mut ShoreFamily, budget: usize) -> Result<usize> {
    let n = dm.num_vertices();
    let mut psi = potential(family, n);
    let mut steps = 0;
    while let Some((a, b)) = first_crossing_pair(family) {
        steps += 1;
        if steps > budget {
            return Err(Error::Internal(format!(
                "uncrossing exceeded its budget of {budget} steps"
            )));
        }
        let meet_join = [a.intersection(&b), a.union(&b)];
        let differences = [a.difference(&b), b.difference(&a)];
        let admissible = |pair: &[BTreeSet<FaceId>; 2]| pair.iter().all(|s| demand_crossings(inst, dm, s) == 1);
        let chosen = if admissible(&meet_join) {
            meet_join
        } else if admissible(&differences) {
            differences
        } else {
            return Err(Error::Internal(format!(
                "no admissible uncrossing for {:?} and {:?}",
                a.faces(),
                b.faces()
            )));
        };
        let m = family[&a].clone().min(family[&b].clone());
        take_weight(family, &a, &m);
        take_weight(family, &b, &m);
        for faces in chosen {
            add_weight(family, Shore::new(faces, dm)?, &m);
        }
        let next = potential(family, n);
        if next >= psi {
            return Err(Error::Internal("uncrossing potential did not decrease".into()));
        }
        psi = next;
    }
    Ok(steps)
}

/// Faces reachable from `start` inside `allowed` along dual edges.
fn component(dm: &DualMap, start: FaceId, allowed: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; dm.num_vertices()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for &e in dm.incident(f) {
            let (a, b) = dm.ends(e);
            let g = if a == f { b } else { a };
            if allowed[g] && !seen[g] {
                seen[g] = true;
                queue.push_back(g);
            }
        }
    }
    seen
}

/// Shrinks the cut of `shore` to the bond through its demand edge, so that
/// its primal edge set is one circuit. The new cut is a subset of the old.
pub fn minimalize(inst: &Instance, dm: &DualMap, shore: &Shore) -> Result<Shore> {
    let demand = inst
        .demand_edges()
        .find(|&e| {
            let (a, b) = dm.ends(e);
            shore.contains(a) != shore.contains(b)
        })
        .ok_or(Error::InvalidShore)?;
    let (x, y) = dm.ends(demand);
    let (inner, other) = if shore.contains(x) { (x, y) } else { (y, x) };
    let n = dm.num_vertices();
    let in_shore: Vec<bool> = (0..n).map(|f| shore.contains(f)).collect();
    let k = component(dm, inner, &in_shore);
    let outside_k: Vec<bool> = k.iter().map(|&b| !b).collect();
    let r = component(dm, other, &outside_k);
    Shore::new((0..n).filter(|&f| !r[f]), dm)
}

fn minimalize_all(inst: &Instance, dm: &DualMap, family: &ShoreFamily) -> Result<ShoreFamily> {
    let mut out = ShoreFamily::new();
    for (shore, w) in family {
        add_weight(&mut out, minimalize(inst, dm, shore)?, w);
    }
    Ok(out)
}

/// Turns a weighted family of single-demand cuts into a laminar flow of the
/// same total weight without raising any dual-edge load.
pub fn uncross(inst: &Instance, dm: &DualMap, family: &ShoreFamily) -> Result<LaminarFlow> {
    for (shore, w) in family {
        if !w.is_positive() || demand_crossings(inst, dm, shore.faces()) != 1 {
            return Err(Error::BadParameter(format!(
                "shore {:?} needs positive weight and exactly one demand edge in its cut",
                shore.faces()
            )));
        }
    }
    let n = dm.num_vertices();
    let budget = 8 * n * n * family.len().max(1);
    let mut current = minimalize_all(inst, dm, family)?;
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > budget {
            return Err(Error::Internal("uncross and minimalize did not stabilize".into()));
        }
        uncross_pairs(inst, dm, &mut current, budget)?;
        let next = minimalize_all(inst, dm, &current)?;
        if next == current {
            break;
        }
        current = next;
    }
    LaminarFlow::from_family(inst, dm, &current)
}

/// The laminar flow equivalent to `f`: cuts of its paths, uncrossed.
pub fn laminarize(inst: &Instance, f: &Flow) -> Result<LaminarFlow> {
    let dm = inst.dual();
    let family = flow_to_shores(inst, &dm, f)?;
    uncross(inst, &dm, &family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{enumerate_paths, max_multiflow, DEFAULT_PATH_CAP};
    use crate::instance::fuzz::{random_flow, random_instance};
    use crate::instance::{gen_gk, EdgeRole};
    use crate::rational::{half, int, rat};
    use proptest::prelude::*;

    fn optimum(inst: &Instance) -> Flow {
        let paths = enumerate_paths(inst, DEFAULT_PATH_CAP).unwrap();
        max_multiflow(inst, &paths).unwrap().flow
    }

    #[test]
    fn zero_flow_gives_empty_family() {
        let inst = gen_gk(3).unwrap();
        let dm = inst.dual();
        assert!(flow_to_shores(&inst, &dm, &Flow::new()).unwrap().is_empty());
        assert!(laminarize(&inst, &Flow::new()).unwrap().is_empty());
    }

    #[test]
    fn g3_optimum_has_three_shores() {
        let inst = gen_gk(3).unwrap();
        let dm = inst.dual();
        let f = optimum(&inst);
        let family = flow_to_shores(&inst, &dm, &f).unwrap();
        assert_eq!(family.len(), 3);
        assert!(family.values().all(|w| *w == half()));
        let lf = uncross(&inst, &dm, &family).unwrap();
        assert_eq!(lf.value(), rat(3, 2));
        assert_eq!(lf.to_flow(), f);
    }

    #[test]
    fn single_path_single_shore() {
        let inst = Instance::new(
            2,
            vec![(0, 1, EdgeRole::Supply(2)), (0, 1, EdgeRole::Demand)],
            vec![vec![0, 1], vec![1, 0]],
            0,
        )
        .unwrap();
        let f = optimum(&inst);
        assert_eq!(f.value(), int(2));
        let lf = laminarize(&inst, &f).unwrap();
        assert_eq!(lf.len(), 1);
        assert_eq!(lf.entries()[0].value, int(2));
    }

    /// First fuzz instance with two paths whose shores cross.
    fn crossing_example() -> (Instance, Path, Path) {
        for seed in 0..500 {
            let inst = random_instance(seed).unwrap();
            let dm = inst.dual();
            let paths = enumerate_paths(&inst, DEFAULT_PATH_CAP).unwrap();
            let shores: Vec<Shore> = paths
                .paths()
                .iter()
                .map(|p| shore_from_cycle(inst.plane(), &dm, &p.circuit()).unwrap())
                .collect();
            for i in 0..shores.len() {
                for j in i + 1..shores.len() {
                    if shores[i].crosses(&shores[j]) {
                        let (p, q) = (paths.paths()[i].clone(), paths.paths()[j].clone());
                        return (inst, p, q);
                    }
                }
            }
        }
        panic!("no crossing pair among the fuzz seeds");
    }

    #[test]
    fn crossing_pair_is_uncrossed() {
        let (inst, p, q) = crossing_example();
        let dm = inst.dual();
        let f: Flow = [(p, half()), (q, half())].into_iter().collect();
        let family = flow_to_shores(&inst, &dm, &f).unwrap();
        let shores: Vec<&Shore> = family.keys().collect();
        assert!(shores[0].crosses(shores[1]));
        let before = dual_loads(&dm, &family);
        let lf = uncross(&inst, &dm, &family).unwrap();
        assert!(lf.is_laminar());
        assert_eq!(lf.value(), int(1));
        assert!(lf.entries().iter().all(|e| e.value == half()));
        let after = dual_loads(&dm, &lf.family());
        assert!(after.iter().zip(&before).all(|(a, b)| a <= b));
        assert!(crate::flow::check_feasible(&inst, &lf.to_flow()).unwrap().feasible);
    }

    #[test]
    fn uncross_is_idempotent() {
        for seed in 0..30 {
            let inst = random_instance(seed).unwrap();
            let dm = inst.dual();
            let lf = laminarize(&inst, &random_flow(&inst, seed).unwrap()).unwrap();
            let again = uncross(&inst, &dm, &lf.family()).unwrap();
            assert_eq!(again, lf, "seed {seed}");
        }
    }

    #[test]
    fn chains_are_nested() {
        let inst = gen_gk(6).unwrap();
        let dm = inst.dual();
        let lf = laminarize(&inst, &optimum(&inst)).unwrap();
        assert!(lf.chain(0, 0).is_empty());
        for e in 0..dm.num_edges() {
            let (u, v) = dm.ends(e);
            for (s, t) in [(u, v), (v, u)] {
                let chain = lf.chain(s, t);
                for w in chain.windows(2) {
                    let inner = &lf.entries()[w[0]].shore;
                    let outer = &lf.entries()[w[1]].shore;
                    assert!(inner.is_subset(outer) && inner != outer);
                }
            }
        }
    }

    #[test]
    fn empty_family_has_empty_chains() {
        let lf = LaminarFlow::default();
        assert!(lf.chain(0, 1).is_empty());
    }

    #[test]
    fn minimalize_drops_extra_circuits() {
        // In G_4 the union of two disjoint inner faces has a cut that is two
        // circuits; minimalizing keeps the one through the demand.
        let inst = gen_gk(4).unwrap();
        let dm = inst.dual();
        for f in 0..dm.num_vertices() {
            for g in f + 1..dm.num_vertices() {
                let Ok(s) = Shore::new([f, g], &dm) else { continue };
                if demand_crossings(&inst, &dm, s.faces()) != 1 {
                    continue;
                }
                let m = minimalize(&inst, &dm, &s).unwrap();
                let old: BTreeSet<EdgeId> = cut_edges(&dm, &s).into_iter().collect();
                let new = cut_edges(&dm, &m);
                assert!(new.iter().all(|e| old.contains(e)));
                let supply: Vec<EdgeId> = new.iter().copied().filter(|&e| inst.is_supply(e)).collect();
                let demand = new.iter().copied().find(|&e| inst.is_demand(e)).unwrap();
                assert!(Path::from_edge_set(&inst, demand, &supply).is_ok());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn uncross_preserves_value_and_loads(seed in 0u64..10_000) {
            let inst = random_instance(seed).unwrap();
            let dm = inst.dual();
            let f = if seed % 2 == 0 { optimum(&inst) } else { random_flow(&inst, seed).unwrap() };
            let family = flow_to_shores(&inst, &dm, &f).unwrap();
            let lf = uncross(&inst, &dm, &family).unwrap();
            prop_assert_eq!(lf.value(), f.value());
            let before = dual_loads(&dm, &family);
            let after = dual_loads(&dm, &lf.family());
            prop_assert!(after.iter().zip(&before).all(|(a, b)| a <= b));
            prop_assert!(lf.is_laminar());
            prop_assert!(lf.len() <= 2 * (dm.num_vertices() - 1));
        }
    }
}
