//! Stabilizer codes, logical operators and exhaustive low-weight searches.

mod families;
mod io;
mod logical;

pub use families::{bb_preset, gen_bb, gen_color, gen_hp, gen_surface, repetition, BbPreset, BB_PRESETS};
pub use io::{
    load_code, parse_code, parse_family_spec, read_code, serialize_code, write_code, FamilySpec,
};
pub use logical::{logical_basis, low_weight_x_classes, reduce_weight};

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, EchelonBasis, PauliVector};
use crate::par;

/// X and Z check matrices of a CSS code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssParts {
    pub hx: BitMatrix,
    pub hz: BitMatrix,
}

/// Stabilizer code given by a list of commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    generators: Vec<PauliVector>,
    css: Option<CssParts>,
    declared_distance: Option<usize>,
}

impl StabilizerCode {
    /// Validates pairwise commutation. Codes whose generators are all pure X
    /// or pure Z are recognised as CSS, keeping the given generator order.
    pub fn new(name: impl Into<String>, n: usize, generators: Vec<PauliVector>) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: g.n(),
                });
            }
        }
        if let Some((i, j)) = first_anticommuting_pair(&generators) {
            return Err(Error::Commutation(i, j));
        }
        let css = if generators.iter().all(|g| g.is_pure_x() || g.is_pure_z()) {
            let hx = generators
                .iter()
                .filter(|g| !g.is_identity() && g.is_pure_x())
                .map(|g| g.x_part().clone())
                .collect();
            let hz = generators
                .iter()
                .filter(|g| !g.is_identity() && g.is_pure_z())
                .map(|g| g.z_part().clone())
                .collect();
            Some(CssParts {
                hx: BitMatrix::from_rows(n, hx),
                hz: BitMatrix::from_rows(n, hz),
            })
        } else {
            None
        };
        Ok(StabilizerCode {
            name: name.into(),
            n,
            generators,
            css,
            declared_distance: None,
        })
    }

    /// CSS code from X and Z check matrices; generators are the X rows then
    /// the Z rows.
    pub fn from_css(name: impl Into<String>, hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::Dimension {
                expected: hx.cols(),
                got: hz.cols(),
            });
        }
        let n = hx.cols();
        let prod = hx.mul_transpose(&hz);
        for i in 0..prod.rows() {
            if let Some(j) = prod.row(i).first_one() {
                return Err(Error::Commutation(i, hx.rows() + j));
            }
        }
        let mut generators = Vec::with_capacity(hx.rows() + hz.rows());
        generators.extend(hx.row_vecs().iter().cloned().map(PauliVector::pure_x));
        generators.extend(hz.row_vecs().iter().cloned().map(PauliVector::pure_z));
        Ok(StabilizerCode {
            name: name.into(),
            n,
            generators,
            css: Some(CssParts { hx, hz }),
            declared_distance: None,
        })
    }

    /// Two codes side by side: `a` on qubits `0..a.n`, `b` after it. The
    /// declared distance is the smaller of the two when both are known.
    pub fn direct_sum(a: &StabilizerCode, b: &StabilizerCode) -> Result<Self> {
        let n = a.n + b.n;
        let generators = a
            .generators
            .iter()
            .map(|g| g.embed(n, 0))
            .chain(b.generators.iter().map(|g| g.embed(n, a.n)))
            .collect();
        let d = match (a.declared_distance, b.declared_distance) {
            (Some(x), Some(y)) => Some(x.min(y)),
            _ => None,
        };
        Ok(StabilizerCode::new(format!("{}+{}", a.name, b.name), n, generators)?.with_distance(d))
    }

    pub fn with_distance(mut self, d: Option<usize>) -> Self {
        self.declared_distance = d;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[PauliVector] {
        &self.generators
    }

    pub fn is_css(&self) -> bool {
        self.css.is_some()
    }

    pub fn css(&self) -> Option<&CssParts> {
        self.css.as_ref()
    }

    /// Distance carried as metadata; never used for correctness.
    pub fn declared_distance(&self) -> Option<usize> {
        self.declared_distance
    }

    /// Generators as rows `[x | z]` of length `2n`.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            2 * self.n,
            self.generators.iter().map(PauliVector::to_symplectic).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.symplectic_matrix().rank()
    }

    /// Number of logical qubits.
    pub fn k(&self) -> usize {
        self.n - self.rank()
    }

    /// Row-space basis of the stabilizer group in symplectic form.
    pub fn stabilizer_basis(&self) -> EchelonBasis {
        let mut basis = EchelonBasis::new(2 * self.n);
        for g in &self.generators {
            basis.insert(g.to_symplectic());
        }
        basis
    }

    pub fn commutes_with_all(&self, p: &PauliVector) -> bool {
        self.generators.iter().all(|g| !g.anticommutes(p))
    }

    pub fn is_stabilizer(&self, p: &PauliVector) -> bool {
        self.stabilizer_basis().contains(&p.to_symplectic())
    }

    /// Logical operator check: commutes with every generator and is not in
    /// the stabilizer group.
    pub fn is_nontrivial_logical(&self, p: &PauliVector) -> bool {
        p.n() == self.n && self.commutes_with_all(p) && !self.is_stabilizer(p)
    }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [[{}, {}", self.name, self.n, self.k())?;
        match self.declared_distance {
            Some(d) => write!(f, ", {d}]]"),
            None => write!(f, "]]"),
        }
    }
}

/// Which half of a logical pair an operator is.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LogicalKind {
    X,
    Z,
}

/// Representative of a nontrivial logical class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalOperator {
    pauli: PauliVector,
    support: Vec<usize>,
    basis_index: Option<(usize, LogicalKind)>,
}

impl LogicalOperator {
    pub fn new(pauli: PauliVector, basis_index: Option<(usize, LogicalKind)>) -> Self {
        let support = pauli.support();
        LogicalOperator {
            pauli,
            support,
            basis_index,
        }
    }

    /// Wraps `pauli` after checking that it is a nontrivial logical of `code`.
    pub fn checked(
        code: &StabilizerCode,
        pauli: PauliVector,
        basis_index: Option<(usize, LogicalKind)>,
    ) -> Result<Self> {
        if pauli.n() != code.n() {
            return Err(Error::Dimension {
                expected: code.n(),
                got: pauli.n(),
            });
        }
        if let Some(i) = code.generators().iter().position(|g| g.anticommutes(&pauli)) {
            return Err(Error::param(format!(
                "operator anticommutes with generator {i}"
            )));
        }
        if code.is_stabilizer(&pauli) {
            return Err(Error::param("operator lies in the stabilizer group"));
        }
        Ok(LogicalOperator::new(pauli, basis_index))
    }

    pub fn pauli(&self) -> &PauliVector {
        &self.pauli
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn basis_index(&self) -> Option<(usize, LogicalKind)> {
        self.basis_index
    }
}

fn first_anticommuting_pair(gens: &[PauliVector]) -> Option<(usize, usize)> {
    let hits = par::map_indexed(gens.len(), |i| {
        (i + 1..gens.len())
            .find(|&j| gens[i].anticommutes(&gens[j]))
            .map(|j| (i, j))
    });
    hits.into_iter().flatten().next()
}

/// Index of the first pair of anticommuting operators, scanning row-major.
pub fn find_anticommuting_pair(ops: &[PauliVector]) -> Option<(usize, usize)> {
    first_anticommuting_pair(ops)
}

/// Upper bound on the number of Pauli operators with weight below
/// `max_weight` on `n` qubits, saturating.
pub fn enumeration_size(n: usize, max_weight: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    let mut pow3: u128 = 1;
    for w in 0..max_weight {
        if w > 0 {
            binom = binom * (n as u128 + 1 - w as u128) / w as u128;
            pow3 *= 3;
        }
        total = total.saturating_add(binom.saturating_mul(pow3));
    }
    total
}

/// Enumeration budget for exhaustive logical searches.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

/// Searches every Pauli of weight `1..max_weight` (exclusive) for one that
/// commutes with all `checks` but lies outside their span. Returns the first
/// hit in order of increasing weight.
pub fn find_low_weight_logical(
    n: usize,
    checks: &[PauliVector],
    max_weight: usize,
) -> Result<Option<PauliVector>> {
    let size = enumeration_size(n, max_weight);
    if size > ENUMERATION_LIMIT {
        return Err(Error::Capacity(format!(
            "exhaustive search over {size} operators exceeds limit {ENUMERATION_LIMIT}"
        )));
    }
    let m = checks.len();
    // Syndrome of X, Z and Y on each qubit.
    let mut columns: Vec<[BitVec; 3]> = Vec::with_capacity(n);
    for q in 0..n {
        let mut sx = BitVec::zeros(m);
        let mut sz = BitVec::zeros(m);
        for (i, c) in checks.iter().enumerate() {
            if c.z_part().get(q) {
                sx.set(i, true);
            }
            if c.x_part().get(q) {
                sz.set(i, true);
            }
        }
        let mut sy = sx.clone();
        sy.xor_assign(&sz);
        columns.push([sx, sz, sy]);
    }
    let mut span = EchelonBasis::new(2 * n);
    for c in checks {
        span.insert(c.to_symplectic());
    }
    for w in 1..max_weight {
        let hits = par::map_indexed(n, |first| {
            let mut chosen = vec![(first, 0u8); w];
            search_from(&columns, &span, n, w, 0, first, &mut chosen, &BitVec::zeros(m))
        });
        if let Some(p) = hits.into_iter().flatten().next() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn search_from(
    columns: &[[BitVec; 3]],
    span: &EchelonBasis,
    n: usize,
    w: usize,
    depth: usize,
    q: usize,
    chosen: &mut Vec<(usize, u8)>,
    syndrome: &BitVec,
) -> Option<PauliVector> {
    if n - q < w - depth {
        return None;
    }
    for kind in 0..3u8 {
        let mut s = syndrome.clone();
        s.xor_assign(&columns[q][kind as usize]);
        chosen[depth] = (q, kind);
        if depth + 1 == w {
            if s.is_zero() {
                let mut p = PauliVector::identity(n);
                for &(qq, kk) in chosen.iter() {
                    p.set(qq, [crate::gf2::Pauli::X, crate::gf2::Pauli::Z, crate::gf2::Pauli::Y][kk as usize]);
                }
                if !span.contains(&p.to_symplectic()) {
                    return Some(p);
                }
            }
        } else {
            for next in q + 1..n {
                if let Some(p) = search_from(columns, span, n, w, depth + 1, next, chosen, &s) {
                    return Some(p);
                }
            }
        }
    }
    None
}
