//! Certified construction of graphs of every order `n` whose energy is at
//! least `n^{3/2}/2 − n^{11/10}`.
//!
//! Pipeline: take the smallest prime `p ≥ n` with `p ≡ 1 (mod 4)`, build the
//! Paley graph of order `p`, search for an `n`-subset inducing at least
//! `n(n−1)/4` edges, and measure the energy of the induced subgraph.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::bounds::{energy_lower, koolen_moulton_bound};
use crate::error::{Error, Result};
use crate::graph::{paley_graph, Graph, VertexSet};
use crate::number_theory::{find_prime_1mod4, window_check};
use crate::report::Document;
use crate::spectrum::singular_values;

/// Identifier of the pseudo-random generator recorded in every report:
/// ChaCha8 keyed by `seed_from_u64(seed)` (rand_core 0.6), one stream per
/// restart (`set_stream(restart_index)`), subset sampled by partial
/// Fisher–Yates with `index = i + next_u64() % (len − i)`.
pub const RNG_ALGORITHM: &str = "chacha8-stream-per-restart-v1";

/// Smallest order accepted by the construction.
pub const MIN_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub restarts: usize,
    /// Cap on improving swaps per restart.
    pub steps_per_restart: usize,
}

impl SearchBudget {
    /// 20 restarts, `n²` swaps each.
    pub fn default_for(n: usize) -> Self {
        Self {
            restarts: 20,
            steps_per_restart: n * n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetSearch {
    pub set: VertexSet,
    pub induced_edges: usize,
    pub restarts_used: usize,
}

/// Local-search state for one restart.
struct Climber<'g> {
    graph: &'g Graph,
    inside: Vec<bool>,
    /// Neighbours of each vertex inside the current set.
    inner_degree: Vec<usize>,
}

impl<'g> Climber<'g> {
    fn new(graph: &'g Graph, members: &[usize]) -> Self {
        let order = graph.order();
        let mut inside = vec![false; order];
        for &v in members {
            inside[v] = true;
        }
        let mut inner_degree = vec![0; order];
        for &v in members {
            for w in graph.neighbors(v) {
                inner_degree[w] += 1;
            }
        }
        Self {
            graph,
            inside,
            inner_degree,
        }
    }

    fn edges(&self) -> usize {
        (0..self.inside.len())
            .filter(|&v| self.inside[v])
            .map(|v| self.inner_degree[v])
            .sum::<usize>()
            / 2
    }

    /// Best strictly improving swap `(out, in)`; ties go to the lowest pair.
    fn best_swap(&self) -> Option<(usize, usize)> {
        let order = self.inside.len();
        let mut best: Option<(i64, usize, usize)> = None;
        for u in (0..order).filter(|&u| self.inside[u]) {
            let du = self.inner_degree[u] as i64;
            for v in (0..order).filter(|&v| !self.inside[v]) {
                let gain = self.inner_degree[v] as i64 - du - self.graph.has_edge(u, v) as i64;
                if gain > 0 && best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, u, v));
                }
            }
        }
        best.map(|(_, u, v)| (u, v))
    }

    fn apply(&mut self, out: usize, inn: usize) {
        self.inside[out] = false;
        for w in self.graph.neighbors(out) {
            self.inner_degree[w] -= 1;
        }
        self.inside[inn] = true;
        for w in self.graph.neighbors(inn) {
            self.inner_degree[w] += 1;
        }
    }

    fn members(&self) -> Vec<usize> {
        (0..self.inside.len()).filter(|&v| self.inside[v]).collect()
    }
}

fn random_subset(rng: &mut ChaCha8Rng, order: usize, size: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..order).collect();
    for i in 0..size {
        let j = i + (rng.next_u64() % (order - i) as u64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(size);
    pool
}

fn climb(graph: &Graph, size: usize, seed: u64, restart: usize, max_steps: usize) -> (usize, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let start = random_subset(&mut rng, graph.order(), size);
    let mut climber = Climber::new(graph, &start);
    for _ in 0..max_steps {
        match climber.best_swap() {
            Some((u, v)) => climber.apply(u, v),
            None => break,
        }
    }
    (climber.edges(), climber.members())
}

/// Search for an `n`-subset of `g` inducing as many edges as possible:
/// random start, steepest-ascent single swaps to a local optimum, repeated
/// for `budget.restarts` independent restarts. The best restart wins, ties
/// going to the lowest restart index.
pub fn select_dense_subset(g: &Graph, n: usize, seed: u64, budget: SearchBudget) -> Result<SubsetSearch> {
    if n > g.order() {
        return Err(Error::Precondition(format!(
            "subset size {n} exceeds graph order {}",
            g.order()
        )));
    }
    if budget.restarts == 0 {
        return Err(Error::Precondition("search budget must allow a restart".into()));
    }
    if n == g.order() {
        return Ok(SubsetSearch {
            set: VertexSet::all(n),
            induced_edges: g.edge_count(),
            restarts_used: 0,
        });
    }
    let (edges, _, members) = (0..budget.restarts)
        .into_par_iter()
        .map(|r| {
            let (edges, members) = climb(g, n, seed, r, budget.steps_per_restart);
            (edges, r, members)
        })
        .reduce_with(|a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");
    Ok(SubsetSearch {
        set: VertexSet::new(members, g.order())?,
        induced_edges: edges,
        restarts_used: budget.restarts,
    })
}

/// `n^{3/2}/2 − n^{11/10}`.
pub fn energy_target(n: usize) -> f64 {
    let n = n as f64;
    n.powf(1.5) / 2.0 - n.powf(1.1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionReport {
    pub n: usize,
    pub p: u64,
    pub window_ok: bool,
    pub x: VertexSet,
    pub induced_edges: usize,
    /// `n(n−1)/4`.
    pub edge_target: f64,
    pub energy_achieved: f64,
    /// Lower estimate from the induced edge count and the host's σ₁, σ₂;
    /// `None` when the subgraph has no edges or σ₂ = 0.
    pub energy_floor_via_lowb: Option<f64>,
    pub target: f64,
    pub certified: bool,
    pub seed: u64,
    pub restarts_used: usize,
    pub rng: &'static str,
    pub sigma1: f64,
    pub sigma2: f64,
    /// `(p−1)/2`.
    pub host_sigma1: f64,
    /// `(√p+1)/2`.
    pub host_sigma2: f64,
}

impl ConstructionReport {
    pub fn to_document(&self) -> Document {
        let mut d = Document::new("construction");
        d.push("n", self.n)
            .push("p", self.p)
            .push("window_ok", self.window_ok)
            .push("induced_edges", self.induced_edges)
            .push("edge_target", self.edge_target)
            .push("energy_achieved", self.energy_achieved)
            .push("energy_floor_via_lowb", self.energy_floor_via_lowb)
            .push("target", self.target)
            .push("margin", self.energy_achieved - self.target)
            .push("certified", self.certified)
            .push("sigma1", self.sigma1)
            .push("sigma2", self.sigma2)
            .push("host_sigma1", self.host_sigma1)
            .push("host_sigma2", self.host_sigma2)
            .push("seed", self.seed)
            .push("restarts_used", self.restarts_used)
            .push("rng", self.rng)
            .push("x", self.x.members());
        d
    }
}

pub fn construct_max_energy_graph(n: usize, seed: u64) -> Result<ConstructionReport> {
    construct_with_budget(n, seed, SearchBudget::default_for(n))
}

/// Returns the report together with the constructed graph.
pub fn construct_graph(n: usize, seed: u64, budget: SearchBudget) -> Result<(ConstructionReport, Graph)> {
    if n < MIN_ORDER {
        return Err(Error::Precondition(format!(
            "construction needs n ≥ {MIN_ORDER}, got {n}"
        )));
    }
    let witness = find_prime_1mod4(n as u64)?;
    let p = witness.p;
    let window_ok = window_check(n as u64, p);
    let host = paley_graph(p)?;
    let search = select_dense_subset(&host, n, seed, budget)?;
    let graph = host.induced_subgraph(&search.set)?;
    let spectrum = singular_values(&graph.adjacency_matrix()?)?;
    let energy_achieved = spectrum.energy();
    let (sigma1, sigma2) = (spectrum.sigma(1), spectrum.sigma(2));

    let pf = p as f64;
    let host_sigma1 = (pf - 1.0) / 2.0;
    let host_sigma2 = (pf.sqrt() + 1.0) / 2.0;
    let e = search.induced_edges as f64;
    // Replacing σ₂(G_n) by the larger host value only lowers the estimate
    // while 2e − σ₁² ≥ 0; otherwise keep the measured σ₂.
    let floor_sigma2 = if 2.0 * e >= host_sigma1 * host_sigma1 {
        host_sigma2
    } else {
        sigma2
    };
    let energy_floor_via_lowb = energy_lower(host_sigma1, floor_sigma2, e).ok();

    let target = energy_target(n);
    let report = ConstructionReport {
        n,
        p,
        window_ok,
        x: search.set,
        induced_edges: search.induced_edges,
        edge_target: (n * (n - 1)) as f64 / 4.0,
        energy_achieved,
        energy_floor_via_lowb,
        target,
        certified: energy_achieved >= target,
        seed,
        restarts_used: search.restarts_used,
        rng: RNG_ALGORITHM,
        sigma1,
        sigma2,
        host_sigma1,
        host_sigma2,
    };
    Ok((report, graph))
}

pub fn construct_with_budget(n: usize, seed: u64, budget: SearchBudget) -> Result<ConstructionReport> {
    construct_graph(n, seed, budget).map(|(r, _)| r)
}

/// One row of a certification sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub p: u64,
    pub window_ok: bool,
    pub energy: f64,
    pub target: f64,
    pub km_bound: f64,
    pub certified: bool,
}

pub const SWEEP_CSV_HEADER: &str = "n,p,window_ok,energy,target,km_bound,certified";

impl SweepRow {
    pub fn to_document(&self) -> Document {
        let mut d = Document::new("sweep_row");
        d.push("n", self.n)
            .push("p", self.p)
            .push("window_ok", self.window_ok)
            .push("energy", self.energy)
            .push("target", self.target)
            .push("km_bound", self.km_bound)
            .push("certified", self.certified);
        d
    }
}

/// Runs the construction for `n_min, n_min + step, …, ≤ n_max`; rows come back in order of `n`.
pub fn sweep(n_min: usize, n_max: usize, step: usize, seed: u64) -> Result<Vec<SweepRow>> {
    if step == 0 {
        return Err(Error::Precondition("sweep step must be positive".into()));
    }
    if n_min > n_max {
        return Err(Error::Precondition(format!(
            "empty sweep range {n_min}..={n_max}"
        )));
    }
    let ns: Vec<usize> = (n_min..=n_max).step_by(step).collect();
    ns.into_par_iter()
        .map(|n| {
            let r = construct_max_energy_graph(n, seed)?;
            Ok(SweepRow {
                n,
                p: r.p,
                window_ok: r.window_ok,
                energy: r.energy_achieved,
                target: r.target,
                km_bound: koolen_moulton_bound(n),
                certified: r.certified,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_subsets() {
        let k5 = Graph::complete(5);
        let s = select_dense_subset(&k5, 3, 0, SearchBudget::default_for(3)).unwrap();
        assert_eq!(s.set.len(), 3);
        assert_eq!(s.induced_edges, 3);
    }

    #[test]
    fn full_set_is_identity() {
        let g = paley_graph(13).unwrap();
        let s = select_dense_subset(&g, 13, 0, SearchBudget::default_for(13)).unwrap();
        assert_eq!(s.set, VertexSet::all(13));
        assert_eq!(s.induced_edges, 39);
    }

    #[test]
    fn search_preconditions() {
        let g = paley_graph(13).unwrap();
        assert!(matches!(
            select_dense_subset(&g, 14, 0, SearchBudget::default_for(14)),
            Err(Error::Precondition(_))
        ));
        let zero = SearchBudget {
            restarts: 0,
            steps_per_restart: 1,
        };
        assert!(matches!(
            select_dense_subset(&g, 5, 0, zero),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reported_edges_match_set() {
        let g = paley_graph(29).unwrap();
        let s = select_dense_subset(&g, 17, 3, SearchBudget::default_for(17)).unwrap();
        assert_eq!(g.induced_subgraph(&s.set).unwrap().edge_count(), s.induced_edges);
        assert!(4 * s.induced_edges >= 17 * 16);
    }

    #[test]
    fn climber_reaches_local_optimum() {
        let g = paley_graph(37).unwrap();
        let (edges, members) = climb(&g, 20, 11, 0, usize::MAX);
        let climber = Climber::new(&g, &members);
        assert_eq!(climber.edges(), edges);
        assert!(climber.best_swap().is_none());
    }

    #[test]
    fn random_subset_is_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut s = random_subset(&mut rng, 50, 20);
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), 20);
        assert!(s.iter().all(|&v| v < 50));
    }

    #[test]
    fn small_examples() {
        let r = construct_max_energy_graph(13, 0).unwrap();
        assert_eq!(r.p, 13);
        assert_eq!(r.x, VertexSet::all(13));
        assert!((r.energy_achieved - 27.63332).abs() < 1e-4);
        assert!((r.target - (13f64.powf(1.5) / 2.0 - 13f64.powf(1.1))).abs() < 1e-12);
        assert!((r.target - 6.63498).abs() < 1e-5);
        assert!(r.certified);

        let r = construct_max_energy_graph(4, 0).unwrap();
        assert_eq!(r.p, 5);
        assert_eq!(r.induced_edges, 3);
        // P4 has eigenvalues ±φ, ±1/φ, energy 2√5
        assert!((r.energy_achieved - 2.0 * 5f64.sqrt()).abs() < 1e-9);
        assert!(r.target < 0.0 && r.certified);
    }

    #[test]
    fn rejects_tiny_orders() {
        assert!(matches!(
            construct_max_energy_graph(3, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sweep_validates_arguments() {
        assert!(sweep(10, 5, 1, 0).is_err());
        assert!(sweep(10, 20, 0, 0).is_err());
        let rows = sweep(20, 26, 3, 0).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![20, 23, 26]);
    }
}
