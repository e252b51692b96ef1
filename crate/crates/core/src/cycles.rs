//! Cycle bases, congestion, and first-fit partitioning of cycles into groups.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::graph::{bfs_forest, bfs_forest_masked, MultiGraph, SpanningForest};

/// Closed walk in a graph: `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn sorted_edges(&self) -> Vec<usize> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Checks that the walk is consistent with `g` and closed.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let l = self.len();
        if l < 2 || self.vertices.len() != l {
            return Err(Error::invariant("cycle needs matching vertex and edge lists of length >= 2"));
        }
        for i in 0..l {
            let (a, b) = g.edge(self.edges[i]);
            let (x, y) = (self.vertices[i], self.vertices[(i + 1) % l]);
            if !((a == x && b == y) || (a == y && b == x)) {
                return Err(Error::invariant(format!(
                    "cycle edge {} does not join {x} and {y}",
                    self.edges[i]
                )));
            }
        }
        Ok(())
    }
}

/// How cycles may share edges within one group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionRule {
    /// Cycles in a group are pairwise edge-disjoint.
    EdgeDisjoint,
    /// Each edge lies in at most this many cycles of a group.
    LoadBounded(usize),
}

impl PartitionRule {
    fn budget(self) -> usize {
        match self {
            PartitionRule::EdgeDisjoint => 1,
            PartitionRule::LoadBounded(b) => b,
        }
    }
}

/// Which edge of a fresh cycle leaves the spanning forest (dynamic updates)
/// or is retired from further use (static decongestion).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RemovalRule {
    /// Edge carried by the fewest earlier cycles.
    LeastLoaded,
    /// Edge carried by the most earlier cycles.
    MostLoaded,
    /// Uniformly random edge.
    Random,
}

fn choose_edge(candidates: &[usize], load: &[usize], rule: RemovalRule, rng: &mut impl Rng) -> usize {
    let load_of = |e: usize| load.get(e).copied().unwrap_or(0);
    match rule {
        RemovalRule::LeastLoaded => *candidates
            .iter()
            .min_by_key(|&&e| (load_of(e), e))
            .expect("nonempty candidates"),
        RemovalRule::MostLoaded => *candidates
            .iter()
            .min_by_key(|&&e| (std::cmp::Reverse(load_of(e)), e))
            .expect("nonempty candidates"),
        RemovalRule::Random => candidates[rng.random_range(0..candidates.len())],
    }
}

/// Cycle basis with its spanning forest and partition into groups.
#[derive(Clone, Debug)]
pub struct CycleState {
    basis: Vec<Cycle>,
    forest: SpanningForest,
    groups: Vec<Vec<usize>>,
    group_of: Vec<usize>,
    group_loads: Vec<HashMap<usize, usize>>,
    edge_load: Vec<usize>,
    rule: PartitionRule,
    removal: RemovalRule,
}

impl CycleState {
    /// Empty basis with a BFS forest of `g`.
    pub fn new(g: &MultiGraph, rule: PartitionRule, removal: RemovalRule) -> Self {
        CycleState {
            basis: Vec::new(),
            forest: bfs_forest(g),
            groups: Vec::new(),
            group_of: Vec::new(),
            group_loads: Vec::new(),
            edge_load: Vec::new(),
            rule,
            removal,
        }
    }

    pub fn basis(&self) -> &[Cycle] {
        &self.basis
    }

    pub fn forest(&self) -> &SpanningForest {
        &self.forest
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Group index of each basis cycle.
    pub fn group_of(&self) -> &[usize] {
        &self.group_of
    }

    pub fn rule(&self) -> PartitionRule {
        self.rule
    }

    /// Number of groups.
    pub fn t(&self) -> usize {
        self.groups.len()
    }

    /// Largest number of basis cycles through one edge.
    pub fn congestion(&self) -> usize {
        self.edge_load.iter().copied().max().unwrap_or(0)
    }

    /// Number of basis cycles through each edge.
    pub fn edge_load(&self) -> &[usize] {
        &self.edge_load
    }

    /// Appends a cycle to the basis and places it in the first group that
    /// can take it, opening a new group otherwise. Returns the group index.
    pub fn push_cycle(&mut self, cycle: Cycle) -> usize {
        let budget = self.rule.budget();
        let group = (0..self.groups.len())
            .find(|&k| {
                let loads = &self.group_loads[k];
                cycle
                    .edges
                    .iter()
                    .all(|e| loads.get(e).copied().unwrap_or(0) < budget)
            })
            .unwrap_or_else(|| {
                self.groups.push(Vec::new());
                self.group_loads.push(HashMap::new());
                self.groups.len() - 1
            });
        for &e in &cycle.edges {
            *self.group_loads[group].entry(e).or_insert(0) += 1;
            if self.edge_load.len() <= e {
                self.edge_load.resize(e + 1, 0);
            }
            self.edge_load[e] += 1;
        }
        self.groups[group].push(self.basis.len());
        self.group_of.push(group);
        self.basis.push(cycle);
        group
    }

    /// Tracks a newly inserted edge `e` of `g`. An edge joining two forest
    /// components extends the forest; otherwise its fundamental cycle is
    /// added to the basis and one path edge (chosen by the removal rule)
    /// leaves the forest in exchange for `e`. Returns the new cycle's index.
    pub fn update_cycle_basis(
        &mut self,
        g: &MultiGraph,
        e: usize,
        rng: &mut impl Rng,
    ) -> Option<usize> {
        let (u, v) = g.edge(e);
        if self.forest.component(u) != self.forest.component(v) {
            self.forest.join(e, u, v);
            return None;
        }
        let (vertices, mut edges) = self
            .forest
            .tree_path_vertices(u, v)
            .expect("same component");
        let out = choose_edge(&edges, &self.edge_load, self.removal, rng);
        let (a, b) = g.edge(out);
        self.forest.swap(out, a, b, e, u, v);
        edges.push(e);
        self.push_cycle(Cycle { vertices, edges });
        Some(self.basis.len() - 1)
    }

    /// Replaces the forest with a fresh BFS forest of `g`. The basis and
    /// partition are kept.
    pub fn reset_forest(&mut self, g: &MultiGraph) {
        self.forest = bfs_forest(g);
    }

    /// Checks the partition rule inside every group.
    pub fn validate_partition(&self) -> Result<()> {
        let budget = self.rule.budget();
        for (k, members) in self.groups.iter().enumerate() {
            let mut load: HashMap<usize, usize> = HashMap::new();
            for &c in members {
                for &e in &self.basis[c].edges {
                    *load.entry(e).or_insert(0) += 1;
                }
            }
            if let Some((e, l)) = load.iter().find(|(_, &l)| l > budget) {
                return Err(Error::invariant(format!(
                    "group {k} carries edge {e} {l} times, budget {budget}"
                )));
            }
        }
        Ok(())
    }

    /// GF(2) rank of the cycle-edge incidence matrix.
    pub fn basis_rank(&self, num_edges: usize) -> usize {
        incidence_matrix(&self.basis, num_edges).rank()
    }

    /// One line per cycle: group id followed by sorted edge ids.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (c, cycle) in self.basis.iter().enumerate() {
            let _ = write!(out, "{}", self.group_of[c]);
            for e in cycle.sorted_edges() {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
        out
    }
}

/// Rows are cycles, columns are edges.
pub fn incidence_matrix(cycles: &[Cycle], num_edges: usize) -> BitMatrix {
    BitMatrix::from_rows(
        num_edges,
        cycles
            .iter()
            .map(|c| {
                let mut row = BitVec::zeros(num_edges);
                for &e in &c.edges {
                    row.flip(e);
                }
                row
            })
            .collect(),
    )
}

/// Builds a cycle basis by repeatedly taking the shortest fundamental cycle
/// (ties broken at random) of the still-active edges and retiring one of its
/// edges, chosen by `retire`. Retired edges never appear in later cycles,
/// so the result is independent and has size `|E| - |V| + components`.
/// Cycles are partitioned first-fit in the order they are found; later
/// forest updates on the returned state use `removal`.
pub fn static_decongestion(
    g: &MultiGraph,
    rule: PartitionRule,
    retire: RemovalRule,
    removal: RemovalRule,
    rng: &mut impl Rng,
) -> CycleState {
    let mut state = CycleState::new(g, rule, removal);
    let mut active = vec![true; g.num_edges()];
    loop {
        let forest = bfs_forest_masked(g, |e| active[e]);
        let mut best: Vec<Cycle> = Vec::new();
        let mut best_len = usize::MAX;
        for e in 0..g.num_edges() {
            if !active[e] || forest.is_tree_edge(e) {
                continue;
            }
            let (u, v) = g.edge(e);
            let (vertices, mut edges) = forest.tree_path_vertices(u, v).expect("same component");
            let len = edges.len() + 1;
            if len > best_len {
                continue;
            }
            if len < best_len {
                best_len = len;
                best.clear();
            }
            edges.push(e);
            best.push(Cycle { vertices, edges });
        }
        if best.is_empty() {
            break;
        }
        let pick = best.swap_remove(rng.random_range(0..best.len()));
        let retired = choose_edge(&pick.edges, &state.edge_load, retire, rng);
        active[retired] = false;
        state.push_cycle(pick);
    }
    state.forest = bfs_forest(g);
    state
}

/// Batch first-fit partition into edge-disjoint groups; returns the group of
/// each cycle.
pub fn greedy_partition(cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut groups: Vec<HashSet<usize>> = Vec::new();
    let mut out = Vec::with_capacity(cycles.len());
    for c in cycles {
        let slot = groups
            .iter()
            .position(|used| c.iter().all(|e| !used.contains(e)));
        let k = match slot {
            Some(k) => k,
            None => {
                groups.push(HashSet::new());
                groups.len() - 1
            }
        };
        groups[k].extend(c.iter().copied());
        out.push(k);
    }
    out
}

/// Adds one cycle to an edge-disjoint partition; returns the group count.
pub fn incremental_partition(state: &mut CycleState, cycle: Cycle) -> Result<usize> {
    if state.rule != PartitionRule::EdgeDisjoint {
        return Err(Error::param("state does not use edge-disjoint groups"));
    }
    state.push_cycle(cycle);
    Ok(state.t())
}

/// Adds one cycle to a load-bounded partition; returns the group count.
pub fn degree_constrained_partition(
    state: &mut CycleState,
    cycle: Cycle,
    dq_budget: usize,
) -> Result<usize> {
    if dq_budget == 0 {
        return Err(Error::param("load budget must be at least 1"));
    }
    let expected = if dq_budget == 1 {
        PartitionRule::EdgeDisjoint
    } else {
        PartitionRule::LoadBounded(dq_budget)
    };
    if state.rule.budget() != expected.budget() {
        return Err(Error::param(format!(
            "state budget {} differs from requested {dq_budget}",
            state.rule.budget()
        )));
    }
    state.push_cycle(cycle);
    Ok(state.t())
}
