//! Deformed code assembly, cross-code adapters, verification and metrics.
//!
//! Original qubits keep their indices; the qubit on graph edge `e` is
//! `n + e`. Every vertex gets a check made of the logical's action on its
//! port qubit and one edge operator per incident edge. Every stabilizer
//! that anticommutes with the logical somewhere is dressed with the dual
//! operator on its matching edges, and every face gets a dual-type check.

use serde::{Deserialize, Serialize};

use crate::code::{find_anticommuting_pair, find_low_weight_logical, StabilizerCode};
use crate::cycles::Cycle;
use crate::error::{Error, Result};
use crate::gf2::{BitVec, EchelonBasis, Pauli, PauliVector};
use crate::graph::MultiGraph;
use crate::lift::{cellulate_cycle, Face};

/// Everything needed to write down the deformed checks.
#[derive(Clone, Debug)]
pub struct AssemblyInput {
    pub code: StabilizerCode,
    /// Measured operator on the original qubits.
    pub logical: PauliVector,
    pub graph: MultiGraph,
    /// Original qubit attached to each vertex, if any.
    pub port_qubit: Vec<Option<usize>>,
    /// Edges dressing each generator of `code`.
    pub dressing: Vec<Vec<usize>>,
    pub faces: Vec<Face>,
}

impl AssemblyInput {
    /// Port vertices ordered by the qubit they serve.
    pub fn port_vertices(&self) -> Vec<usize> {
        let mut ports: Vec<(usize, usize)> = self
            .port_qubit
            .iter()
            .enumerate()
            .filter_map(|(v, q)| q.map(|q| (q, v)))
            .collect();
        ports.sort_unstable();
        ports.into_iter().map(|(_, v)| v).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub ancilla_qubits: usize,
    pub ancilla_checks: usize,
    /// Largest number of checks acting on one qubit, original or ancilla.
    pub max_qubit_degree: usize,
    pub max_check_weight: usize,
}

#[derive(Clone, Debug)]
pub struct DeformedCode {
    n_original: usize,
    logical: PauliVector,
    vertex_checks: Vec<PauliVector>,
    modified: Vec<PauliVector>,
    face_checks: Vec<PauliVector>,
    ancilla_qubits: usize,
}

impl DeformedCode {
    pub fn n_original(&self) -> usize {
        self.n_original
    }

    pub fn n_total(&self) -> usize {
        self.n_original + self.ancilla_qubits
    }

    pub fn ancilla_qubits(&self) -> usize {
        self.ancilla_qubits
    }

    pub fn logical(&self) -> &PauliVector {
        &self.logical
    }

    pub fn vertex_checks(&self) -> &[PauliVector] {
        &self.vertex_checks
    }

    pub fn modified_checks(&self) -> &[PauliVector] {
        &self.modified
    }

    pub fn face_checks(&self) -> &[PauliVector] {
        &self.face_checks
    }

    /// Vertex checks, then modified stabilizers, then face checks.
    pub fn checks(&self) -> Vec<PauliVector> {
        let mut out = Vec::with_capacity(self.vertex_checks.len() + self.modified.len() + self.face_checks.len());
        out.extend(self.vertex_checks.iter().cloned());
        out.extend(self.modified.iter().cloned());
        out.extend(self.face_checks.iter().cloned());
        out
    }

    pub fn metrics(&self) -> Metrics {
        let n = self.n_total();
        let mut degree = vec![0usize; n];
        let mut max_weight = 0;
        for c in self.vertex_checks.iter().chain(&self.modified).chain(&self.face_checks) {
            let support = c.support_bits();
            max_weight = max_weight.max(support.count_ones());
            for q in support.iter_ones() {
                degree[q] += 1;
            }
        }
        Metrics {
            ancilla_qubits: self.ancilla_qubits,
            ancilla_checks: self.vertex_checks.len() + self.face_checks.len(),
            max_qubit_degree: degree.into_iter().max().unwrap_or(0),
            max_check_weight: max_weight,
        }
    }

    pub fn to_code(&self, name: impl Into<String>) -> Result<StabilizerCode> {
        StabilizerCode::new(name, self.n_total(), self.checks())
    }
}

fn single(n: usize, q: usize, p: Pauli) -> PauliVector {
    let mut v = PauliVector::identity(n);
    v.set(q, p);
    v
}

/// Builds the deformed checks and confirms they commute.
pub fn assemble(input: &AssemblyInput) -> Result<DeformedCode> {
    let code = &input.code;
    let n = code.n();
    let g = &input.graph;
    if input.logical.n() != n {
        return Err(Error::Dimension {
            expected: n,
            got: input.logical.n(),
        });
    }
    if input.port_qubit.len() != g.num_vertices() {
        return Err(Error::Dimension {
            expected: g.num_vertices(),
            got: input.port_qubit.len(),
        });
    }
    if input.dressing.len() != code.num_generators() {
        return Err(Error::Dimension {
            expected: code.num_generators(),
            got: input.dressing.len(),
        });
    }
    if !g.is_connected() {
        return Err(Error::invariant(
            "graph is disconnected, so the product of vertex checks would not equal the logical",
        ));
    }
    let mut served: Vec<usize> = input.port_qubit.iter().flatten().copied().collect();
    served.sort_unstable();
    if served != input.logical.support() {
        return Err(Error::invariant("port qubits differ from the support of the logical"));
    }

    // Z-type logicals get Z on edges so that CSS inputs stay CSS.
    let (edge_op, dual_op) = if input.logical.is_pure_z() {
        (Pauli::Z, Pauli::X)
    } else {
        (Pauli::X, Pauli::Z)
    };

    // Each dressing must flip exactly the anticommuting port sites.
    for (i, (s, edges)) in code.generators().iter().zip(&input.dressing).enumerate() {
        let mut parity = vec![false; g.num_vertices()];
        for &e in edges {
            let (u, v) = g.edge(e);
            parity[u] ^= true;
            parity[v] ^= true;
        }
        for (v, &odd) in parity.iter().enumerate() {
            let needed = match input.port_qubit[v] {
                Some(q) => single(n, q, s.get(q)).anticommutes(&single(n, q, input.logical.get(q))),
                None => false,
            };
            if odd != needed {
                return Err(Error::invariant(format!(
                    "dressing of generator {i} has the wrong parity at vertex {v}"
                )));
            }
        }
    }

    let total = n + g.num_edges();
    let vertex_checks: Vec<PauliVector> = (0..g.num_vertices())
        .map(|v| {
            let mut c = PauliVector::identity(total);
            if let Some(q) = input.port_qubit[v] {
                c.set(q, input.logical.get(q));
            }
            for &(_, e) in g.neighbors(v) {
                c.set(n + e, edge_op);
            }
            c
        })
        .collect();
    let modified: Vec<PauliVector> = code
        .generators()
        .iter()
        .zip(&input.dressing)
        .map(|(s, edges)| {
            let mut c = s.embed(total, 0);
            for &e in edges {
                c.set(n + e, dual_op);
            }
            c
        })
        .collect();
    let face_checks: Vec<PauliVector> = input
        .faces
        .iter()
        .map(|f| {
            let mut c = PauliVector::identity(total);
            for &e in &f.edges {
                c.set(n + e, dual_op);
            }
            c
        })
        .collect();
    let out = DeformedCode {
        n_original: n,
        logical: input.logical.clone(),
        vertex_checks,
        modified,
        face_checks,
        ancilla_qubits: g.num_edges(),
    };
    if let Some((i, j)) = find_anticommuting_pair(&out.checks()) {
        return Err(Error::invariant(format!("deformed checks {i} and {j} anticommute")));
    }
    Ok(out)
}

/// Edges joining the two sides of a joint measurement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdapterSpec {
    pub d: usize,
    /// `(port vertex in side A, port vertex in side B)`, ascending port order.
    pub pairs: Vec<(usize, usize)>,
    /// Edge ids in the combined graph, one per pair.
    pub edges: Vec<usize>,
    /// Face checks added to close the adapter cycles.
    pub faces: usize,
}

/// Pairs the first `d` ports of each side.
pub fn build_adapter(ports1: &[usize], ports2: &[usize], d: usize) -> Result<AdapterSpec> {
    if d > ports1.len().min(ports2.len()) {
        return Err(Error::param(format!(
            "adapter with {d} edges needs that many ports on both sides, have {} and {}",
            ports1.len(),
            ports2.len()
        )));
    }
    Ok(AdapterSpec {
        d,
        pairs: (0..d).map(|i| (ports1[i], ports2[i])).collect(),
        edges: Vec::new(),
        faces: 0,
    })
}

fn walk(g: &MultiGraph, start: usize, edges: &[usize]) -> Result<Cycle> {
    let mut vertices = Vec::with_capacity(edges.len());
    let mut cur = start;
    for &e in edges {
        vertices.push(cur);
        cur = g.other(e, cur);
    }
    if cur != start {
        return Err(Error::invariant("adapter cycle does not close"));
    }
    Ok(Cycle {
        vertices,
        edges: edges.to_vec(),
    })
}

/// Places two single-code inputs side by side, joins them with `d` adapter
/// edges and closes each pair of consecutive adapter edges into a cycle
/// through shortest paths on both sides, cellulated with face size `dc`.
pub fn join_sides(
    a: &AssemblyInput,
    b: &AssemblyInput,
    d: usize,
    dc: usize,
) -> Result<(AssemblyInput, AdapterSpec)> {
    let (va, ea, na) = (a.graph.num_vertices(), a.graph.num_edges(), a.code.n());
    let pa = a.port_vertices();
    let pb = b.port_vertices();
    let mut spec = build_adapter(&pa, &pb, d)?;

    let mut graph = MultiGraph::new(va + b.graph.num_vertices());
    for &(u, v) in a.graph.edges() {
        graph.add_edge(u, v)?;
    }
    for &(u, v) in b.graph.edges() {
        graph.add_edge(va + u, va + v)?;
    }
    for &(x, y) in &spec.pairs {
        spec.edges.push(graph.add_edge(x, va + y)?);
    }

    let mut faces: Vec<Face> = a.faces.clone();
    faces.extend(b.faces.iter().map(|f| Face {
        edges: f.edges.iter().map(|&e| e + ea).collect(),
        chord: f.chord.clone(),
    }));
    let before = faces.len();
    for i in 1..d {
        let path_b = b
            .graph
            .shortest_path(pb[i], pb[i - 1])
            .ok_or_else(|| Error::invariant("side B graph is disconnected"))?;
        let path_a = a
            .graph
            .shortest_path(pa[i - 1], pa[i])
            .ok_or_else(|| Error::invariant("side A graph is disconnected"))?;
        let mut edges = vec![spec.edges[i]];
        edges.extend(path_b.iter().map(|&e| e + ea));
        edges.push(spec.edges[i - 1]);
        edges.extend(path_a);
        let cycle = walk(&graph, pa[i], &edges)?;
        faces.extend(cellulate_cycle(&mut graph, &cycle, dc)?);
    }
    spec.faces = faces.len() - before;

    let code = StabilizerCode::direct_sum(&a.code, &b.code)?;
    let n = code.n();
    let mut logical = a.logical.embed(n, 0);
    logical.mul_assign(&b.logical.embed(n, na));
    let mut port_qubit = a.port_qubit.clone();
    port_qubit.extend(b.port_qubit.iter().map(|q| q.map(|q| q + na)));
    let mut dressing = a.dressing.clone();
    dressing.extend(b.dressing.iter().map(|es| es.iter().map(|&e| e + ea).collect()));
    Ok((
        AssemblyInput {
            code,
            logical,
            graph,
            port_qubit,
            dressing,
            faces,
        },
        spec,
    ))
}

/// Outcome of an exhaustive low-weight logical search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCheck {
    /// Weights `1..max_weight` were searched.
    pub max_weight: usize,
    /// Weight of the first nontrivial logical found, if any.
    pub found: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub commutation: bool,
    pub first_violation: Option<(usize, usize)>,
    pub promoted: bool,
    pub vertex_product: bool,
    pub k_original: usize,
    pub k_deformed: usize,
    pub k_drop: bool,
    pub distance: Option<DistanceCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.commutation
            && self.promoted
            && self.vertex_product
            && self.k_drop
            && self.distance.as_ref().is_none_or(|d| d.found.is_none())
    }

    /// Error describing the first failed check.
    pub fn failure(&self) -> Option<Error> {
        let msg = if !self.commutation {
            format!("checks {:?} anticommute", self.first_violation)
        } else if !self.promoted {
            "logical is not in the span of the deformed checks".into()
        } else if !self.vertex_product {
            "product of vertex checks differs from the logical".into()
        } else if !self.k_drop {
            format!(
                "expected {} logical qubits after deformation, found {}",
                self.k_original.saturating_sub(1),
                self.k_deformed
            )
        } else {
            let w = self.distance.as_ref().and_then(|d| d.found)?;
            format!("nontrivial logical of weight {w} found")
        };
        Some(Error::Verification(msg))
    }
}

/// Re-derives every property from the raw check list. `k_original` is the
/// logical qubit count before measuring; `distance_check` searches for
/// nontrivial logicals of weight below the given bound.
pub fn verify(
    code: &DeformedCode,
    k_original: usize,
    distance_check: Option<usize>,
) -> Result<VerifyReport> {
    let checks = code.checks();
    let n_total = code.n_total();
    let n = code.n_original();

    let first_violation = (0..checks.len()).find_map(|i| {
        (i + 1..checks.len())
            .find(|&j| {
                let (a, b) = (&checks[i], &checks[j]);
                (a.x_part().and_count(b.z_part()) + a.z_part().and_count(b.x_part())) % 2 == 1
            })
            .map(|j| (i, j))
    });

    let mut span = EchelonBasis::new(2 * n_total);
    for c in &checks {
        span.insert(c.to_symplectic());
    }
    let promoted = span.contains(&code.logical().embed(n_total, 0).to_symplectic());

    let mut product = PauliVector::identity(n_total);
    for v in code.vertex_checks() {
        product.mul_assign(v);
    }
    let on_original = product.restrict(0, n);
    let on_ancilla = product.restrict(n, n_total);
    let vertex_product = on_original == *code.logical() && on_ancilla.is_identity();

    let k_deformed = n_total - span.rank();
    let distance = match distance_check {
        Some(w) => {
            let found = find_low_weight_logical(n_total, &checks, w)?;
            Some(DistanceCheck {
                max_weight: w,
                found: found.map(|p| p.weight()),
            })
        }
        None => None,
    };
    Ok(VerifyReport {
        commutation: first_violation.is_none(),
        first_violation,
        promoted,
        vertex_product,
        k_original,
        k_deformed,
        k_drop: k_original >= 1 && k_deformed == k_original - 1,
        distance,
    })
}

/// Qubit-by-qubit check support, for callers that want the full degree list.
pub fn qubit_degrees(code: &DeformedCode) -> Vec<usize> {
    let mut degree = vec![0usize; code.n_total()];
    for c in code.checks() {
        let s: BitVec = c.support_bits();
        for q in s.iter_ones() {
            degree[q] += 1;
        }
    }
    degree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::build_base_graph;
    use crate::code::{gen_surface, logical_basis, LogicalOperator};

    /// Surface-code logical on its matching graph, with one face per
    /// fundamental cycle.
    fn surface_input(d: usize, z_logical: bool) -> AssemblyInput {
        let code = gen_surface(d).unwrap();
        let (x, z) = logical_basis(&code).remove(0);
        let l = LogicalOperator::new(if z_logical { z } else { x }, None);
        let (mut g, ports, plan) = build_base_graph(&code, &l).unwrap();
        // Make it connected with a path over the ports.
        for p in 1..ports.len() {
            if g.shortest_path(p - 1, p).is_none() {
                g.add_edge(p - 1, p).unwrap();
            }
        }
        let faces = cycle_faces(&g);
        AssemblyInput {
            logical: l.pauli().clone(),
            port_qubit: (0..g.num_vertices()).map(|v| Some(ports.qubit(v))).collect(),
            dressing: plan.edges_by_stabilizer(code.num_generators()),
            graph: g,
            faces,
            code,
        }
    }

    fn cycle_faces(g: &MultiGraph) -> Vec<Face> {
        let f = crate::graph::bfs_forest(g);
        (0..g.num_edges())
            .filter(|&e| !f.is_tree_edge(e))
            .map(|e| {
                let (u, v) = g.edge(e);
                let mut edges = crate::graph::tree_path(&f, u, v).unwrap();
                edges.push(e);
                Face {
                    chord: vec![false; edges.len()],
                    edges,
                }
            })
            .collect()
    }

    #[test]
    fn surface_deformation_verifies() {
        for z_logical in [false, true] {
            let input = surface_input(3, z_logical);
            let dc = assemble(&input).unwrap();
            let r = verify(&dc, 1, Some(3)).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.k_deformed, 0);
            assert!(dc.to_code("deformed").unwrap().is_css());
        }
    }

    #[test]
    fn two_port_single_edge() {
        // ZZ anticommutes with XX on both sites, so one edge is the
        // smallest connected graph.
        let code = StabilizerCode::new("zz", 2, vec!["ZZ".parse().unwrap()]).unwrap();
        let l: PauliVector = "XX".parse().unwrap();
        let g = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let input = AssemblyInput {
            code,
            logical: l,
            graph: g,
            port_qubit: vec![Some(0), Some(1)],
            dressing: vec![vec![0]],
            faces: Vec::new(),
        };
        let dc = assemble(&input).unwrap();
        assert_eq!(dc.vertex_checks()[0].to_string(), "XIX");
        assert_eq!(dc.modified_checks()[0].to_string(), "ZZZ");
        let m = dc.metrics();
        assert_eq!(m.ancilla_qubits, 1);
        assert_eq!(m.ancilla_checks, 2);
        let r = verify(&dc, 1, None).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn disconnected_graph_rejected() {
        let mut input = surface_input(3, false);
        input.graph.add_vertex();
        input.port_qubit.push(None);
        assert!(matches!(assemble(&input), Err(Error::Invariant(_))));
    }

    #[test]
    fn wrong_dressing_rejected() {
        let mut input = surface_input(3, false);
        let i = input.dressing.iter().position(|d| !d.is_empty()).unwrap();
        input.dressing[i].clear();
        assert!(matches!(assemble(&input), Err(Error::Invariant(_))));
    }

    #[test]
    fn adapter_validation() {
        assert!(build_adapter(&[0, 1], &[0, 1, 2], 3).is_err());
        let empty = build_adapter(&[0, 1], &[0, 1], 0).unwrap();
        assert!(empty.pairs.is_empty());
        let spec = build_adapter(&[0, 1, 2, 3, 4, 5], &[0, 1, 2, 3, 4], 5).unwrap();
        assert_eq!(spec.pairs.len(), 5);
    }

    #[test]
    fn joint_surface_patches_promote_product() {
        let a = surface_input(3, false);
        let b = surface_input(3, false);
        let (joint, spec) = join_sides(&a, &b, 3, 12).unwrap();
        assert_eq!(spec.edges.len(), 3);
        let dc = assemble(&joint).unwrap();
        let r = verify(&dc, 2, None).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.k_deformed, 1);
        // Neither side alone is promoted.
        let n = dc.n_total();
        let mut span = EchelonBasis::new(2 * n);
        for c in dc.checks() {
            span.insert(c.to_symplectic());
        }
        assert!(!span.contains(&a.logical.embed(n, 0).to_symplectic()));
    }

    #[test]
    fn face_degree_counts_vertex_checks() {
        let input = surface_input(3, false);
        let dc = assemble(&input).unwrap();
        let degrees = qubit_degrees(&dc);
        let n = dc.n_original();
        for (e, f) in (0..input.graph.num_edges()).map(|e| (e, input.faces.iter().filter(|f| f.edges.contains(&e)).count())) {
            if f >= 1 {
                assert!(degrees[n + e] >= 3);
            }
        }
        assert_eq!(dc.metrics().max_qubit_degree, degrees.into_iter().max().unwrap());
    }
}
