//! Generators for the benchmark code families.

use super::StabilizerCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

fn check_odd_distance(d: usize) -> Result<()> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::param(format!(
            "distance must be odd and at least 3, got {d}"
        )));
    }
    Ok(())
}

/// Rotated surface code on a `d x d` grid of qubits.
pub fn gen_surface(d: usize) -> Result<StabilizerCode> {
    check_odd_distance(d)?;
    let n = d * d;
    let q = |i: usize, j: usize| i * d + j;
    let mut hx = Vec::new();
    let mut hz = Vec::new();
    // Plaquette (a, b) touches qubits (a-1..=a, b-1..=b) clipped to the grid.
    for a in 0..=d {
        for b in 0..=d {
            let mut support = Vec::new();
            for i in a.saturating_sub(1)..=a.min(d - 1) {
                for j in b.saturating_sub(1)..=b.min(d - 1) {
                    support.push(q(i, j));
                }
            }
            if a >= 1 && b >= 1 && a < d && b < d {
                debug_assert_eq!(support.len(), 4);
            } else if support.len() != 2 {
                continue;
            }
            let x_type = (a + b) % 2 == 0;
            let on_row_boundary = a == 0 || a == d;
            let on_col_boundary = b == 0 || b == d;
            let keep = if on_row_boundary {
                x_type
            } else if on_col_boundary {
                !x_type
            } else {
                true
            };
            if !keep {
                continue;
            }
            let row = BitVec::from_indices(n, support);
            if x_type {
                hx.push(row);
            } else {
                hz.push(row);
            }
        }
    }
    let code = StabilizerCode::from_css(
        format!("surface-{d}"),
        BitMatrix::from_rows(n, hx),
        BitMatrix::from_rows(n, hz),
    )?;
    Ok(code.with_distance(Some(d)))
}

/// Triangular 6.6.6 color code with `(3d^2 + 1) / 4` qubits.
pub fn gen_color(d: usize) -> Result<StabilizerCode> {
    check_odd_distance(d)?;
    // Points (r, c) of a triangular patch of the hexagonal lattice. Points
    // with (r + c) % 3 == 1 are plaquette centres; all others are qubits.
    let side = 3 * (d - 1) / 2;
    let mut qubit_index = std::collections::HashMap::new();
    let mut centres = Vec::new();
    for r in 0..=side {
        for c in 0..=r {
            if (r + c) % 3 == 1 {
                centres.push((r, c));
            } else {
                let next = qubit_index.len();
                qubit_index.insert((r, c), next);
            }
        }
    }
    let n = qubit_index.len();
    let mut rows = Vec::new();
    for &(r, c) in &centres {
        let (r, c) = (r as isize, c as isize);
        let neighbours = [
            (r, c - 1),
            (r, c + 1),
            (r - 1, c),
            (r + 1, c),
            (r + 1, c + 1),
            (r - 1, c - 1),
        ];
        let support: Vec<usize> = neighbours
            .iter()
            .filter(|(a, b)| *a >= 0 && *b >= 0)
            .filter_map(|&(a, b)| qubit_index.get(&(a as usize, b as usize)).copied())
            .collect();
        rows.push(BitVec::from_indices(n, support));
    }
    let h = BitMatrix::from_rows(n, rows);
    let code = StabilizerCode::from_css(format!("color-{d}"), h.clone(), h)?;
    if code.k() != 1 {
        return Err(Error::invariant(format!(
            "color code construction produced k = {}",
            code.k()
        )));
    }
    Ok(code.with_distance(Some(d)))
}

/// `l*m x l*m` matrix of the monomial `x^i y^j`, with `x` the cyclic shift
/// on the first factor and `y` on the second.
fn monomial(l: usize, m: usize, i: usize, j: usize) -> BitMatrix {
    let size = l * m;
    let mut out = BitMatrix::zeros(size, size);
    for p in 0..l {
        for q in 0..m {
            out.set(p * m + q, ((p + i) % l) * m + (q + j) % m, true);
        }
    }
    out
}

fn polynomial(l: usize, m: usize, terms: &[(usize, usize)]) -> BitMatrix {
    let size = l * m;
    let mut acc = BitMatrix::zeros(size, size);
    for &(i, j) in terms {
        acc.xor_assign(&monomial(l, m, i, j));
    }
    acc
}

/// Bivariate bicycle code with `A = sum x^i y^j` over `a_terms` and likewise
/// `B`; `HX = [A | B]`, `HZ = [B^T | A^T]`.
pub fn gen_bb(
    l: usize,
    m: usize,
    a_terms: &[(usize, usize)],
    b_terms: &[(usize, usize)],
) -> Result<StabilizerCode> {
    if l == 0 || m == 0 {
        return Err(Error::param("bivariate bicycle dimensions must be positive"));
    }
    for &(i, j) in a_terms.iter().chain(b_terms) {
        if i >= l || j >= m {
            return Err(Error::param(format!(
                "exponent ({i}, {j}) out of range for l = {l}, m = {m}"
            )));
        }
    }
    let a = polynomial(l, m, a_terms);
    let b = polynomial(l, m, b_terms);
    let hx = a.hstack(&b);
    let hz = b.transpose().hstack(&a.transpose());
    let code = StabilizerCode::from_css(format!("bb-{}", 2 * l * m), hx, hz)?;
    if code.k() == 0 {
        return Err(Error::param(
            "degenerate bivariate bicycle parameters: k = 0",
        ));
    }
    Ok(code)
}

/// Bundled bivariate bicycle parameter set.
#[derive(Clone, Copy, Debug)]
pub struct BbPreset {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub l: usize,
    pub m: usize,
    pub a: &'static [(usize, usize)],
    pub b: &'static [(usize, usize)],
}

pub const BB_PRESETS: &[BbPreset] = &[
    BbPreset { n: 72, k: 12, d: 6, l: 6, m: 6, a: &[(3, 0), (0, 1), (0, 2)], b: &[(0, 3), (1, 0), (2, 0)] },
    BbPreset { n: 90, k: 8, d: 10, l: 15, m: 3, a: &[(9, 0), (0, 1), (0, 2)], b: &[(0, 0), (2, 0), (7, 0)] },
    BbPreset { n: 108, k: 8, d: 10, l: 9, m: 6, a: &[(3, 0), (0, 1), (0, 2)], b: &[(0, 3), (1, 0), (2, 0)] },
    BbPreset { n: 144, k: 12, d: 12, l: 12, m: 6, a: &[(3, 0), (0, 1), (0, 2)], b: &[(0, 3), (1, 0), (2, 0)] },
    BbPreset { n: 288, k: 12, d: 18, l: 12, m: 12, a: &[(3, 0), (0, 2), (0, 7)], b: &[(0, 3), (1, 0), (2, 0)] },
];

/// Builds a bundled preset by qubit count and confirms its `k` by rank.
pub fn bb_preset(n: usize) -> Result<StabilizerCode> {
    let p = BB_PRESETS
        .iter()
        .find(|p| p.n == n)
        .ok_or_else(|| Error::param(format!("no bivariate bicycle preset with n = {n}")))?;
    let code = gen_bb(p.l, p.m, p.a, p.b)?;
    if code.k() != p.k {
        return Err(Error::invariant(format!(
            "preset n = {n} yields k = {}, expected {}",
            code.k(),
            p.k
        )));
    }
    Ok(code.with_distance(Some(p.d)))
}

/// Hypergraph product of two classical parity-check matrices.
pub fn gen_hp(h1: &BitMatrix, h2: &BitMatrix) -> Result<StabilizerCode> {
    if h1.rows() == 0 || h2.rows() == 0 || h1.is_zero() || h2.is_zero() {
        return Err(Error::param("hypergraph product needs nonzero matrices"));
    }
    let (m1, n1) = (h1.rows(), h1.cols());
    let (m2, n2) = (h2.rows(), h2.cols());
    let hx = h1
        .kron(&BitMatrix::identity(n2))
        .hstack(&BitMatrix::identity(m1).kron(&h2.transpose()));
    let hz = BitMatrix::identity(n1)
        .kron(h2)
        .hstack(&h1.transpose().kron(&BitMatrix::identity(m2)));
    StabilizerCode::from_css(format!("hp-{}", n1 * n2 + m1 * m2), hx, hz)
}

/// Parity checks of the length-`n` repetition code.
pub fn repetition(n: usize) -> Result<BitMatrix> {
    if n < 2 {
        return Err(Error::param("repetition code needs n >= 2"));
    }
    Ok(BitMatrix::from_rows(
        n,
        (0..n - 1).map(|i| BitVec::from_indices(n, [i, i + 1])).collect(),
    ))
}
