//! Thickening of a graph by a path, embedding of cycle groups into levels,
//! and cellulation of long cycles into short faces.

use serde::{Deserialize, Serialize};

use crate::cycles::{Cycle, CycleState};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::graph::MultiGraph;

/// Cartesian product of a base graph with the path on `levels` vertices.
///
/// Vertex `(v, r)` has id `r * |V| + v`. The copy of base edge `e` on level
/// `r` has id `r * |E| + e`; the vertical edge joining `(v, r)` and
/// `(v, r + 1)` has id `levels * |E| + r * |V| + v`.
#[derive(Clone, Debug)]
pub struct ThickenedGraph {
    base: MultiGraph,
    levels: usize,
    graph: MultiGraph,
}

impl ThickenedGraph {
    pub fn base(&self) -> &MultiGraph {
        &self.base
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn into_graph(self) -> MultiGraph {
        self.graph
    }

    pub fn vertex(&self, v: usize, r: usize) -> usize {
        r * self.base.num_vertices() + v
    }

    pub fn horizontal(&self, e: usize, r: usize) -> usize {
        r * self.base.num_edges() + e
    }

    pub fn vertical(&self, v: usize, r: usize) -> usize {
        debug_assert!(r + 1 < self.levels);
        self.levels * self.base.num_edges() + r * self.base.num_vertices() + v
    }

    /// The four edges of each product square, level by level.
    pub fn squares(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::with_capacity((self.levels - 1) * self.base.num_edges());
        for r in 0..self.levels.saturating_sub(1) {
            for (e, &(u, v)) in self.base.edges().iter().enumerate() {
                out.push([
                    self.horizontal(e, r),
                    self.vertical(v, r),
                    self.horizontal(e, r + 1),
                    self.vertical(u, r),
                ]);
            }
        }
        out
    }
}

pub fn thicken(g: &MultiGraph, levels: usize) -> Result<ThickenedGraph> {
    if levels == 0 {
        return Err(Error::param("thickening needs at least one level"));
    }
    let nv = g.num_vertices();
    let mut out = MultiGraph::new(nv * levels);
    for r in 0..levels {
        for &(u, v) in g.edges() {
            out.add_edge(r * nv + u, r * nv + v)?;
        }
    }
    for r in 0..levels - 1 {
        for v in 0..nv {
            out.add_edge(r * nv + v, (r + 1) * nv + v)?;
        }
    }
    Ok(ThickenedGraph {
        base: g.clone(),
        levels,
        graph: out,
    })
}

/// How the number of levels follows from the group count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LayerRule {
    /// `max(t, ceil(1 / beta))`.
    Baseline,
    /// `max(t, 1)`; the synthesizer already balanced `t` against expansion.
    Balanced,
}

pub fn choose_layers(t: usize, beta: f64, rule: LayerRule) -> Result<usize> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::param(format!("beta must be positive, got {beta}")));
    }
    Ok(match rule {
        LayerRule::Baseline => t.max((1.0 / beta - 1e-9).ceil() as usize).max(1),
        LayerRule::Balanced => t.max(1),
    })
}

/// Boundary segment of a cellulated face, in terms of positions on the
/// parent cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Segment {
    /// Cycle edge between positions `i` and `i + 1 (mod L)`.
    Original(usize),
    /// New chord between two positions.
    Chord(usize, usize),
}

/// Zigzag cellulation of an `L`-cycle into faces with at most `dc` edges.
///
/// The positions are visited in the order `0, 1, L-1, 2, L-2, ...`; every
/// three consecutive positions span a triangle, and runs of `dc - 2`
/// triangles merge into one face. Consecutive faces share one chord.
pub fn cellulate(len: usize, dc: usize) -> Result<Vec<Vec<Segment>>> {
    if len < 3 {
        return Err(Error::param(format!("cellulation needs a cycle of length >= 3, got {len}")));
    }
    if dc < 3 {
        return Err(Error::param(format!("face size must be at least 3, got {dc}")));
    }
    if len <= dc {
        return Ok(vec![(0..len).map(Segment::Original).collect()]);
    }
    let z: Vec<usize> = (0..len)
        .map(|j| if j % 2 == 1 { j.div_ceil(2) } else { (len - j / 2) % len })
        .collect();
    let side = |a: usize, b: usize| {
        // Positions adjacent on the cycle give an original edge.
        if (a + 1) % len == b {
            Segment::Original(a)
        } else if (b + 1) % len == a {
            Segment::Original(b)
        } else {
            Segment::Chord(a, b)
        }
    };
    let triangles = len - 2;
    let run = dc - 2;
    let mut faces = Vec::with_capacity(triangles.div_ceil(run));
    let mut a = 0;
    while a < triangles {
        let b = (a + run).min(triangles) - 1;
        let mut face = vec![side(z[a], z[a + 1])];
        face.extend((a..=b).map(|j| side(z[j], z[j + 2])));
        face.push(side(z[b + 1], z[b + 2]));
        faces.push(face);
        a = b + 1;
    }
    Ok(faces)
}

/// A check on the edges of the final graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub edges: Vec<usize>,
    /// `chord[i]` marks `edges[i]` as a cellulation chord.
    pub chord: Vec<bool>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn indicator(&self, num_edges: usize) -> BitVec {
        let mut v = BitVec::zeros(num_edges);
        for &e in &self.edges {
            v.flip(e);
        }
        v
    }
}

/// Cellulates `cycle` inside `g`, adding chord edges to `g`. Cycles of
/// length 2 (parallel edges) become a single face.
pub fn cellulate_cycle(g: &mut MultiGraph, cycle: &Cycle, dc: usize) -> Result<Vec<Face>> {
    let len = cycle.len();
    if len == 2 {
        return Ok(vec![Face {
            edges: cycle.edges.clone(),
            chord: vec![false; 2],
        }]);
    }
    let mut chords: Vec<((usize, usize), usize)> = Vec::new();
    let mut faces = Vec::new();
    for segments in cellulate(len, dc)? {
        let mut face = Face {
            edges: Vec::with_capacity(segments.len()),
            chord: Vec::with_capacity(segments.len()),
        };
        for s in segments {
            let (e, is_chord) = match s {
                Segment::Original(i) => (cycle.edges[i], false),
                Segment::Chord(a, b) => {
                    let key = (a.min(b), a.max(b));
                    let e = match chords.iter().find(|(k, _)| *k == key) {
                        Some(&(_, e)) => e,
                        None => {
                            let e = g.add_edge(cycle.vertices[a], cycle.vertices[b])?;
                            chords.push((key, e));
                            e
                        }
                    };
                    (e, true)
                }
            };
            face.edges.push(e);
            face.chord.push(is_chord);
        }
        faces.push(face);
    }
    Ok(faces)
}

/// Moves each cycle of group `r` onto level `r` of the thickened graph.
pub fn assign_levels(state: &CycleState, thick: &ThickenedGraph) -> Result<Vec<Cycle>> {
    if state.t() > thick.levels() {
        return Err(Error::invariant(format!(
            "{} cycle groups do not fit in {} levels",
            state.t(),
            thick.levels()
        )));
    }
    Ok(state
        .basis()
        .iter()
        .zip(state.group_of())
        .map(|(c, &r)| Cycle {
            vertices: c.vertices.iter().map(|&v| thick.vertex(v, r)).collect(),
            edges: c.edges.iter().map(|&e| thick.horizontal(e, r)).collect(),
        })
        .collect())
}

/// Thickened graph with chords, plus every face check.
#[derive(Clone, Debug)]
pub struct LiftedGraph {
    pub graph: MultiGraph,
    pub faces: Vec<Face>,
    pub levels: usize,
    pub chords: usize,
    /// Faces coming from product squares (the first entries of `faces`).
    pub square_faces: usize,
}

/// Thickens `g` to `levels` levels, lays the cycle groups of `state` onto
/// their levels and cellulates them with face size `dc`. Product squares
/// are kept whole unless `split_squares` is set and `dc == 3`.
pub fn lift(
    g: &MultiGraph,
    state: &CycleState,
    levels: usize,
    dc: usize,
    split_squares: bool,
) -> Result<LiftedGraph> {
    let thick = thicken(g, levels)?;
    let cycles = assign_levels(state, &thick)?;
    let squares = thick.squares();
    let mut graph = thick.graph().clone();
    let mut faces = Vec::new();
    for sq in &squares {
        if split_squares && dc == 3 {
            // Diagonal from (u, r) to (v, r + 1).
            let (a, _) = graph.edge(sq[0]);
            let (_, b) = graph.edge(sq[1]);
            let d = graph.add_edge(a, b)?;
            faces.push(Face {
                edges: vec![sq[0], sq[1], d],
                chord: vec![false, false, true],
            });
            faces.push(Face {
                edges: vec![d, sq[2], sq[3]],
                chord: vec![true, false, false],
            });
        } else {
            faces.push(Face {
                edges: sq.to_vec(),
                chord: vec![false; 4],
            });
        }
    }
    let square_faces = faces.len();
    for c in &cycles {
        faces.extend(cellulate_cycle(&mut graph, c, dc)?);
    }
    let chords = graph.num_edges() - thick.graph().num_edges();
    Ok(LiftedGraph {
        graph,
        faces,
        levels,
        chords,
        square_faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{static_decongestion, PartitionRule, RemovalRule};
    use crate::graph::relative_cheeger_bruteforce;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> (MultiGraph, Cycle) {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = MultiGraph::from_edges(n, &edges).unwrap();
        let c = Cycle {
            vertices: (0..n).collect(),
            edges: (0..n).collect(),
        };
        (g, c)
    }

    #[test]
    fn thicken_sizes() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (3, 4), (1, 3), (1, 3)]).unwrap();
        let one = thicken(&g, 1).unwrap();
        assert_eq!(one.graph().edges(), g.edges());
        let (nv, ne) = (g.num_vertices(), g.num_edges());
        let two = thicken(&g, 2).unwrap();
        assert_eq!(two.graph().num_vertices(), 2 * nv);
        assert_eq!(two.graph().num_edges(), 2 * ne + nv);
        assert!(thicken(&g, 0).is_err());
    }

    #[test]
    fn thicken_six_nine_two() {
        let mut g = MultiGraph::new(6);
        for (u, v) in [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)] {
            g.add_edge(u, v).unwrap();
        }
        let t = thicken(&g, 2).unwrap();
        assert_eq!(t.graph().num_vertices(), 12);
        assert_eq!(t.graph().num_edges(), 24);
        for sq in t.squares() {
            let mut deg = std::collections::HashMap::new();
            for e in sq {
                let (a, b) = t.graph().edge(e);
                *deg.entry(a).or_insert(0) += 1;
                *deg.entry(b).or_insert(0) += 1;
            }
            assert!(deg.values().all(|&d| d == 2));
        }
    }

    #[test]
    fn layer_choice() {
        assert_eq!(choose_layers(3, 0.5, LayerRule::Baseline).unwrap(), 3);
        assert_eq!(choose_layers(1, 0.34, LayerRule::Baseline).unwrap(), 3);
        assert_eq!(choose_layers(2, 0.34, LayerRule::Balanced).unwrap(), 2);
        assert_eq!(choose_layers(0, 0.34, LayerRule::Balanced).unwrap(), 1);
        assert!(choose_layers(1, 0.0, LayerRule::Baseline).is_err());
    }

    #[test]
    fn cellulation_counts() {
        assert_eq!(cellulate(8, 3).unwrap().len(), 6);
        assert_eq!(cellulate(8, 5).unwrap().len(), 2);
        assert_eq!(cellulate(3, 3).unwrap().len(), 1);
        assert!(cellulate(2, 3).is_err());
        assert!(cellulate(5, 2).is_err());
    }

    #[test]
    fn thickening_keeps_relative_cheeger_on_two_levels() {
        // Base: 4-cycle with ports {0, 2}; beta of the base is 2.
        let (g, _) = ring(4);
        let ports = [0, 2];
        let base = relative_cheeger_bruteforce(&g, &ports, 2).unwrap();
        for levels in 1..=4 {
            let t = thicken(&g, levels).unwrap();
            let lifted = relative_cheeger_bruteforce(t.graph(), &ports, 2).unwrap();
            assert!(lifted >= base - 1e-12, "levels {levels}: {lifted} < {base}");
        }
    }

    #[test]
    fn thickened_path_keeps_port_expansion() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let ports = [0, 3];
        assert_eq!(relative_cheeger_bruteforce(&g, &ports, 2).unwrap(), 1.0);
        let t = thicken(&g, 2).unwrap();
        assert!(relative_cheeger_bruteforce(t.graph(), &ports, 2).unwrap() >= 1.0);
    }

    #[test]
    fn levels_and_lift() {
        let mut g = MultiGraph::new(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)] {
            g.add_edge(u, v).unwrap();
        }
        let s = static_decongestion(&g, PartitionRule::EdgeDisjoint, RemovalRule::MostLoaded, RemovalRule::LeastLoaded, &mut ChaCha8Rng::seed_from_u64(2));
        let levels = s.t().max(2);
        let lifted = lift(&g, &s, levels, 3, false).unwrap();
        let thick = thicken(&g, levels).unwrap();
        let thick_rank = thick.graph().circuit_rank();
        // Faces generate the cycle space of the final graph.
        let m = crate::gf2::BitMatrix::from_rows(
            lifted.graph.num_edges(),
            lifted.faces.iter().map(|f| f.indicator(lifted.graph.num_edges())).collect(),
        );
        assert_eq!(m.rank(), thick_rank + lifted.chords);
        assert_eq!(lifted.graph.circuit_rank(), thick_rank + lifted.chords);
        let one = thicken(&g, s.t()).unwrap();
        let mapped = assign_levels(&s, &one).unwrap();
        for (c, &r) in mapped.iter().zip(s.group_of()) {
            c.validate(one.graph()).unwrap();
            assert!(c.edges.iter().all(|&e| e / g.num_edges() == r));
        }
    }

    #[test]
    fn too_many_groups_is_invariant_error() {
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let s = static_decongestion(&g, PartitionRule::EdgeDisjoint, RemovalRule::MostLoaded, RemovalRule::LeastLoaded, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(s.t(), 2);
        let t = thicken(&g, 1).unwrap();
        assert!(matches!(assign_levels(&s, &t), Err(Error::Invariant(_))));
    }

    #[test]
    fn split_squares_at_three() {
        let (g, _) = ring(3);
        let s = static_decongestion(&g, PartitionRule::EdgeDisjoint, RemovalRule::MostLoaded, RemovalRule::LeastLoaded, &mut ChaCha8Rng::seed_from_u64(0));
        let whole = lift(&g, &s, 2, 3, false).unwrap();
        let split = lift(&g, &s, 2, 3, true).unwrap();
        assert_eq!(whole.square_faces, 3);
        assert_eq!(split.square_faces, 6);
        assert!(split.faces.iter().all(|f| f.len() <= 3));
    }

    /// Sum of all faces over GF(2) equals the parent cycle.
    fn face_sum_matches(len: usize, dc: usize) -> bool {
        let (mut g, c) = ring(len);
        let faces = cellulate_cycle(&mut g, &c, dc).unwrap();
        let ne = g.num_edges();
        let mut sum = BitVec::zeros(ne);
        for f in &faces {
            if f.len() > dc || f.len() < 3 {
                return false;
            }
            sum.xor_assign(&f.indicator(ne));
        }
        let parent = BitVec::from_indices(ne, c.edges.iter().copied());
        let expected_faces = if len <= dc { 1 } else { (len - 2).div_ceil(dc - 2) };
        sum == parent && faces.len() == expected_faces && ne - len == faces.len() - 1
    }

    #[test]
    fn face_sums_exhaustive() {
        for len in 3..=20 {
            for dc in 3..=12 {
                assert!(face_sum_matches(len, dc), "L={len} dc={dc}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn thickening_never_lowers_port_expansion(
            n in 2usize..7,
            raw in proptest::collection::vec((0usize..7, 0usize..7), 1..14),
            port_bits in 1u32..127,
            levels in 1usize..4,
        ) {
            let mut g = MultiGraph::new(n);
            for (u, v) in raw {
                let (u, v) = (u % n, v % n);
                if u != v {
                    g.add_edge(u, v).unwrap();
                }
            }
            let ports: Vec<usize> = (0..n).filter(|&v| (port_bits >> v) & 1 == 1).collect();
            prop_assume!(!ports.is_empty());
            let t = ports.len();
            let base = relative_cheeger_bruteforce(&g, &ports, t).unwrap();
            let thick = thicken(&g, levels).unwrap();
            let lifted = relative_cheeger_bruteforce(thick.graph(), &ports, t).unwrap();
            prop_assert!(lifted >= base - 1e-12, "{} < {}", lifted, base);
        }

        #[test]
        fn cellulation_on_random_cycles(len in 3usize..60, dc in 3usize..16) {
            prop_assert!(face_sum_matches(len, dc));
        }
    }
}
