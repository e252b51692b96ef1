//! Port map and path-matching graph for a logical operator.

use std::collections::BTreeMap;

use crate::code::{LogicalOperator, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::PauliVector;
use crate::graph::MultiGraph;

/// Bijection between the support of the logical and the port vertices.
/// Port `i` is vertex `i` and corresponds to the `i`-th support qubit in
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortMap {
    qubits: Vec<usize>,
    port_of: BTreeMap<usize, usize>,
}

impl PortMap {
    pub fn new(support: &[usize]) -> Self {
        let mut qubits = support.to_vec();
        qubits.sort_unstable();
        qubits.dedup();
        let port_of = qubits.iter().enumerate().map(|(p, &q)| (q, p)).collect();
        PortMap { qubits, port_of }
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    /// Port vertex of a support qubit.
    pub fn port(&self, qubit: usize) -> Option<usize> {
        self.port_of.get(&qubit).copied()
    }

    /// Support qubit served by port `p`.
    pub fn qubit(&self, p: usize) -> usize {
        self.qubits[p]
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    /// Port vertices, `0..len`.
    pub fn ports(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

/// Matching edges contributed by one stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanRecord {
    pub stabilizer: usize,
    /// Qubits where the stabilizer and the logical anticommute.
    pub sites: Vec<usize>,
    /// Port pairs, in the order their edges were added.
    pub pairs: Vec<(usize, usize)>,
    pub edges: Vec<usize>,
}

/// Which graph edges dress which stabilizer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathMatchingPlan {
    pub records: Vec<PlanRecord>,
}

impl PathMatchingPlan {
    pub fn num_edges(&self) -> usize {
        self.records.iter().map(|r| r.edges.len()).sum()
    }

    /// Edges paired with each stabilizer, indexed by stabilizer.
    pub fn edges_by_stabilizer(&self, num_stabilizers: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); num_stabilizers];
        for r in &self.records {
            out[r.stabilizer].extend_from_slice(&r.edges);
        }
        out
    }
}

/// Qubits on which `s` and `l` anticommute site by site.
pub fn anticommuting_support(s: &PauliVector, l: &PauliVector) -> Result<Vec<usize>> {
    if s.n() != l.n() {
        return Err(Error::Dimension {
            expected: l.n(),
            got: s.n(),
        });
    }
    let mut sites = s.x_part().clone();
    sites.and_assign(l.z_part());
    let mut zx = s.z_part().clone();
    zx.and_assign(l.x_part());
    sites.xor_assign(&zx);
    let out: Vec<usize> = sites.iter_ones().collect();
    if out.len() % 2 == 1 {
        return Err(Error::invariant(format!(
            "stabilizer {s} anticommutes with the logical on an odd number ({}) of sites",
            out.len()
        )));
    }
    Ok(out)
}

/// Port graph with one matching edge per pair of anticommuting sites of each
/// stabilizer, pairing ports in ascending order.
pub fn build_base_graph(
    code: &StabilizerCode,
    l: &LogicalOperator,
) -> Result<(MultiGraph, PortMap, PathMatchingPlan)> {
    let ports = PortMap::new(l.support());
    let mut g = MultiGraph::new(ports.len());
    let mut plan = PathMatchingPlan::default();
    for (i, s) in code.generators().iter().enumerate() {
        let sites = anticommuting_support(s, l.pauli()).map_err(|e| match e {
            Error::Invariant(_) => Error::invariant(format!(
                "stabilizer {i} anticommutes with the logical on an odd number of sites"
            )),
            other => other,
        })?;
        if sites.is_empty() {
            continue;
        }
        let mut port_list: Vec<usize> = sites
            .iter()
            .map(|&q| ports.port(q).expect("anticommuting site lies in the support"))
            .collect();
        port_list.sort_unstable();
        let mut record = PlanRecord {
            stabilizer: i,
            sites,
            pairs: Vec::new(),
            edges: Vec::new(),
        };
        for pair in port_list.chunks(2) {
            let e = g.add_edge(pair[0], pair[1])?;
            record.pairs.push((pair[0], pair[1]));
            record.edges.push(e);
        }
        plan.records.push(record);
    }
    Ok((g, ports, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{bb_preset, gen_surface, logical_basis, LogicalOperator};

    fn p(s: &str) -> PauliVector {
        s.parse().unwrap()
    }

    #[test]
    fn anticommuting_sites() {
        assert!(anticommuting_support(&p("XXI"), &p("XXX")).unwrap().is_empty());
        assert_eq!(anticommuting_support(&p("ZZI"), &p("XXX")).unwrap(), vec![0, 1]);
        assert!(anticommuting_support(&p("IIZ"), &p("XXI")).unwrap().is_empty());
        assert!(anticommuting_support(&p("ZII"), &p("XXX")).is_err());
    }

    #[test]
    fn surface_three_base_graph() {
        let code = gen_surface(3).unwrap();
        let (x, _) = logical_basis(&code).remove(0);
        let l = LogicalOperator::new(x, None);
        let (g, ports, plan) = build_base_graph(&code, &l).unwrap();
        assert_eq!(ports.len(), 3);
        // Direct enumeration over the Z checks.
        let css = code.css().unwrap();
        let expected: usize = css
            .hz
            .row_vecs()
            .iter()
            .map(|r| r.iter_ones().filter(|&q| l.pauli().x_part().get(q)).count() / 2)
            .sum();
        assert_eq!(g.num_edges(), expected);
        assert_eq!(plan.num_edges(), g.num_edges());
        for r in &plan.records {
            assert!(code.generators()[r.stabilizer].is_pure_z());
        }
    }

    #[test]
    fn bb72_weight_six_logical_gives_nine_edges() {
        let code = bb_preset(72).unwrap();
        let (x, _) = logical_basis(&code).remove(0);
        assert_eq!(x.weight(), 6);
        let l = LogicalOperator::new(x, None);
        let (g, _, _) = build_base_graph(&code, &l).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 9);
    }

    #[test]
    fn bb144_weight_twelve_logical_gives_eighteen_edges() {
        let code = bb_preset(144).unwrap();
        let (x, _) = logical_basis(&code).remove(0);
        assert_eq!(x.weight(), 12);
        let l = LogicalOperator::new(x, None);
        let (g, _, _) = build_base_graph(&code, &l).unwrap();
        assert_eq!(g.num_edges(), 18);
    }

    #[test]
    fn no_anticommuting_stabilizers() {
        let code = StabilizerCode::new("xx", 2, vec![p("XX")]).unwrap();
        let l = LogicalOperator::new(p("XI"), None);
        let (g, _, plan) = build_base_graph(&code, &l).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.num_edges(), 0);
        assert!(plan.records.is_empty());
    }
}
