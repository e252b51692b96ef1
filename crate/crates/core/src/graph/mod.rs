//! Multigraphs with stable edge ids, spanning forests and spectral tools.

mod cheeger;
mod spectral;

pub use cheeger::{cheeger_bruteforce, relative_cheeger_bruteforce, CHEEGER_MAX_VERTICES};
pub use spectral::{lambda2, laplacian, DENSE_LIMIT};

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Undirected multigraph. Parallel edges are allowed, self-loops are not.
/// Edge ids are assigned in insertion order and never change.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    edges: Vec<(usize, usize)>,
    // Per vertex: (neighbour, edge id), sorted.
    adj: Vec<Vec<(usize, usize)>>,
}

impl MultiGraph {
    pub fn new(num_vertices: usize) -> Self {
        MultiGraph {
            edges: Vec::new(),
            adj: vec![Vec::new(); num_vertices],
        }
    }

    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = MultiGraph::new(num_vertices);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize> {
        let n = self.num_vertices();
        if u >= n || v >= n {
            return Err(Error::param(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::param(format!("self-loop at vertex {u}")));
        }
        let id = self.edges.len();
        self.edges.push((u, v));
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let pos = list.partition_point(|&x| x < (b, id));
            list.insert(pos, (b, id));
        }
        Ok(id)
    }

    #[inline]
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Incident `(neighbour, edge id)` pairs sorted by neighbour then id.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Endpoint of edge `id` opposite to `v`.
    #[inline]
    pub fn other(&self, id: usize, v: usize) -> usize {
        let (a, b) = self.edges[id];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Component id per vertex (numbered in order of smallest vertex) and
    /// the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn num_components(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() <= 1 || self.num_components() == 1
    }

    /// `|E| - |V| + components`.
    pub fn circuit_rank(&self) -> usize {
        self.num_edges() + self.num_components() - self.num_vertices()
    }

    /// Hop distances from `source`; `usize::MAX` when unreachable.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest path from `u` to `v` as edge ids, first edge at `u`.
    pub fn shortest_path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let n = self.num_vertices();
        let mut via = vec![None; n];
        let mut seen = vec![false; n];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &(w, e) in &self.adj[x] {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some((x, e));
                    queue.push_back(w);
                }
            }
        }
        if !seen[v] {
            return None;
        }
        let mut path = Vec::new();
        let mut x = v;
        while let Some((p, e)) = via[x] {
            path.push(e);
            x = p;
        }
        path.reverse();
        Some(path)
    }

    /// Edge list dump, one `u v edge_id` line per edge.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "{u} {v} {id}");
        }
        out
    }
}

/// Spanning forest over a subset of a graph's edges. Tree adjacency is kept
/// explicitly so edges can be swapped in and out.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    tree_adj: Vec<Vec<(usize, usize)>>,
    tree_edge: Vec<bool>,
    component: Vec<usize>,
    roots: Vec<usize>,
}

impl SpanningForest {
    pub fn num_vertices(&self) -> usize {
        self.tree_adj.len()
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edge.get(e).copied().unwrap_or(false)
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.tree_edge.len()).filter(|&e| self.tree_edge[e]).collect()
    }

    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn num_components(&self) -> usize {
        self.roots.len()
    }

    fn mark(&mut self, e: usize, value: bool) {
        if self.tree_edge.len() <= e {
            self.tree_edge.resize(e + 1, false);
        }
        self.tree_edge[e] = value;
    }

    /// Adds edge `e = (u, v)` joining two different components.
    pub fn join(&mut self, e: usize, u: usize, v: usize) {
        let (cu, cv) = (self.component[u], self.component[v]);
        debug_assert_ne!(cu, cv);
        let (keep, drop) = (cu.min(cv), cu.max(cv));
        let component = &self.component;
        self.roots.retain(|&r| component[r] != drop);
        for c in self.component.iter_mut() {
            if *c == drop {
                *c = keep;
            }
        }
        self.link(e, u, v);
    }

    /// Root of the component containing `v`.
    pub fn root_of(&self, v: usize) -> usize {
        let c = self.component[v];
        self.roots
            .iter()
            .copied()
            .find(|&r| self.component[r] == c)
            .expect("every component has a root")
    }

    fn link(&mut self, e: usize, u: usize, v: usize) {
        self.tree_adj[u].push((v, e));
        self.tree_adj[v].push((u, e));
        self.mark(e, true);
    }

    /// Replaces tree edge `out = (a, b)` with `e = (u, v)`, where both lie on
    /// the same cycle so the component structure is unchanged.
    pub fn swap(&mut self, out: usize, a: usize, b: usize, e: usize, u: usize, v: usize) {
        self.tree_adj[a].retain(|&(_, x)| x != out);
        self.tree_adj[b].retain(|&(_, x)| x != out);
        self.mark(out, false);
        self.link(e, u, v);
    }

    /// Unique tree path from `u` to `v` as `(vertices, edges)`, where
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub fn tree_path_vertices(&self, u: usize, v: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        if self.component[u] != self.component[v] {
            return None;
        }
        if u == v {
            return Some((vec![u], Vec::new()));
        }
        let n = self.num_vertices();
        let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        'outer: while let Some(x) = queue.pop_front() {
            for &(w, e) in &self.tree_adj[x] {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some((x, e));
                    if w == v {
                        break 'outer;
                    }
                    queue.push_back(w);
                }
            }
        }
        let mut verts = vec![v];
        let mut edges = Vec::new();
        let mut x = v;
        while let Some((p, e)) = via[x] {
            edges.push(e);
            verts.push(p);
            x = p;
        }
        verts.reverse();
        edges.reverse();
        Some((verts, edges))
    }

    /// Depth of every vertex below its component root.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![usize::MAX; self.num_vertices()];
        for &r in &self.roots {
            depth[r] = 0;
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &(w, _) in &self.tree_adj[x] {
                    if depth[w] == usize::MAX {
                        depth[w] = depth[x] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        depth
    }

    /// Checks that the forest is acyclic, uses only edges of `g`, and spans
    /// exactly the components of `g`.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let count = g.num_components();
        let tree = self.tree_edges();
        if tree.len() + count != g.num_vertices() {
            return Err(Error::invariant(format!(
                "forest has {} edges, expected {}",
                tree.len(),
                g.num_vertices() - count
            )));
        }
        let mut f = MultiGraph::new(g.num_vertices());
        for &e in &tree {
            if e >= g.num_edges() {
                return Err(Error::invariant(format!("tree edge {e} not in graph")));
            }
            let (u, v) = g.edge(e);
            f.add_edge(u, v)?;
        }
        let (fcomp, fcount) = f.components();
        let spans = g.edges().iter().all(|&(u, v)| fcomp[u] == fcomp[v]);
        if fcount != count || !spans {
            return Err(Error::invariant("forest components differ from graph"));
        }
        let labels_agree = g
            .edges()
            .iter()
            .all(|&(u, v)| self.component[u] == self.component[v]);
        if !labels_agree || self.roots.len() != count {
            return Err(Error::invariant("forest component labels are stale"));
        }
        Ok(())
    }
}

/// BFS spanning forest rooted at the smallest vertex of each component.
pub fn bfs_forest(g: &MultiGraph) -> SpanningForest {
    bfs_forest_masked(g, |_| true)
}

/// BFS spanning forest over the edges accepted by `active`.
pub fn bfs_forest_masked(g: &MultiGraph, active: impl Fn(usize) -> bool) -> SpanningForest {
    let n = g.num_vertices();
    let mut forest = SpanningForest {
        tree_adj: vec![Vec::new(); n],
        tree_edge: vec![false; g.num_edges()],
        component: vec![usize::MAX; n],
        roots: Vec::new(),
    };
    let mut queue = VecDeque::new();
    for s in 0..n {
        if forest.component[s] != usize::MAX {
            continue;
        }
        let c = forest.roots.len();
        forest.roots.push(s);
        forest.component[s] = c;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in g.neighbors(u) {
                if active(e) && forest.component[w] == usize::MAX {
                    forest.component[w] = c;
                    forest.link(e, u, w);
                    queue.push_back(w);
                }
            }
        }
    }
    forest
}

/// Unique tree path between `u` and `v` as edge ids; `None` across
/// components.
pub fn tree_path(f: &SpanningForest, u: usize, v: usize) -> Option<Vec<usize>> {
    f.tree_path_vertices(u, v).map(|(_, e)| e)
}
