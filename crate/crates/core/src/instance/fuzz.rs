//! Random plane instances for property tests.
//!
//! A random spanning tree of a `width x height` grid, plus a few extra grid
//! edges, drawn with straight lines. Demand edges are then inserted
//! combinatorially: pick a face and two of its corners at distinct vertices
//! and split the face with the new edge, so planarity is never in question.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::error::Result;
use crate::flow::{enumerate_paths, Flow, DEFAULT_PATH_CAP};
use crate::instance::{EdgeRole, Instance};
use crate::plane::{rotation_from_directions, Dart, EdgeId, PlaneGraph};
use crate::rational::{from_u64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub width: usize,
    pub height: usize,
    pub extra_edges: usize,
    pub demands: usize,
    pub max_capacity: u64,
}

impl FuzzConfig {
    /// Grid at most 5 x 5, at most 6 demands.
    pub fn sample(rng: &mut impl Rng) -> FuzzConfig {
        FuzzConfig {
            width: rng.gen_range(2..=5),
            height: rng.gen_range(2..=5),
            extra_edges: rng.gen_range(0..=3),
            demands: rng.gen_range(1..=6),
            max_capacity: rng.gen_range(1..=3),
        }
    }
}

/// Deterministic instance for `seed`.
pub fn random_instance(seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let config = FuzzConfig::sample(&mut rng);
    generate(&config, &mut rng)
}

pub fn generate(config: &FuzzConfig, rng: &mut impl Rng) -> Result<Instance> {
    let (w, h) = (config.width.max(1), config.height.max(1));
    let n = w * h;
    let id = |x: usize, y: usize| y * w + x;
    let coords: Vec<(f64, f64)> = (0..n).map(|v| ((v % w) as f64, (v / w) as f64)).collect();

    let mut grid_edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                grid_edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                grid_edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    grid_edges.shuffle(rng);

    // Kruskal on a random order gives a random spanning tree.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut chosen = Vec::new();
    let mut spare = Vec::new();
    for &(u, v) in &grid_edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            chosen.push((u, v));
        } else {
            spare.push((u, v));
        }
    }
    chosen.extend(spare.into_iter().take(config.extra_edges));
    chosen.sort_unstable();

    let mut edges: Vec<(usize, usize)> = chosen.clone();
    let mut roles: Vec<EdgeRole> = chosen
        .iter()
        .map(|_| EdgeRole::Supply(rng.gen_range(1..=config.max_capacity.max(1))))
        .collect();
    let dirs: Vec<_> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (coords[u], coords[v]);
            ((b.0 - a.0, b.1 - a.1), (a.0 - b.0, a.1 - b.1))
        })
        .collect();
    let mut rotation = rotation_from_directions(n, &edges, &dirs);

    let outer_dart = if edges.is_empty() {
        None
    } else {
        let pg = PlaneGraph::new(n, edges.clone(), rotation.clone(), 0)?;
        let area = |face: &[Dart]| -> f64 {
            face.iter()
                .map(|&d| {
                    let (p, q) = (coords[pg.tail(d)], coords[pg.head(d)]);
                    p.0 * q.1 - q.0 * p.1
                })
                .sum()
        };
        let outer = (0..pg.num_faces())
            .min_by(|&a, &b| area(pg.face(a)).total_cmp(&area(pg.face(b))))
            .unwrap_or(0);
        pg.face(outer).first().copied()
    };

    for _ in 0..config.demands {
        if n < 2 {
            break;
        }
        let pg = match outer_dart {
            Some(d) => PlaneGraph::with_outer_dart(n, edges.clone(), rotation.clone(), d)?,
            None => break,
        };
        let face = pg.face(rng.gen_range(0..pg.num_faces())).to_vec();
        // corner j sits at head(face[j]), between face[j] and face[j + 1]
        let corners: Vec<(usize, usize)> = (0..face.len()).map(|j| (j, pg.head(face[j]))).collect();
        let (j1, v1) = corners[rng.gen_range(0..corners.len())];
        let others: Vec<_> = corners.iter().filter(|c| c.1 != v1).copied().collect();
        let Some(&(j2, v2)) = others.choose(rng) else {
            continue;
        };
        let e: EdgeId = edges.len();
        edges.push((v1, v2));
        roles.push(EdgeRole::Demand);
        for (j, v) in [(j1, v1), (j2, v2)] {
            let back = face[j].rev();
            let pos = pg.position_in_rotation(back);
            rotation[v].insert(pos + 1, e);
        }
    }

    let plane = match outer_dart {
        Some(d) => PlaneGraph::with_outer_dart(n, edges, rotation, d)?,
        None => PlaneGraph::new(n, edges, rotation, 0)?,
    };
    Instance::from_plane(plane, roles)
}

/// A feasible, usually fractional and far from optimal flow: random small
/// weights on a random subset of the paths, scaled down until every
/// capacity holds.
pub fn random_flow(inst: &Instance, seed: u64) -> Result<Flow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let paths = enumerate_paths(inst, DEFAULT_PATH_CAP)?;
    let mut raw = Flow::new();
    for p in paths.paths() {
        if rng.gen_bool(0.6) {
            raw.add(p.clone(), from_u64(rng.gen_range(1..=4)));
        }
    }
    let loads = raw.loads(inst);
    let scale = inst
        .supply_edges()
        .filter(|&e| !loads[e].is_zero())
        .map(|e| from_u64(inst.capacity(e).unwrap_or(0)) / &loads[e])
        .min();
    Ok(match scale {
        Some(s) => raw.scaled(&s.min(Rational::from_integer(1.into()))),
        None => raw,
    })
}
