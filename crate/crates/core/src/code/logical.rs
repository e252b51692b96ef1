//! Logical operator bases and low-weight representatives.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CssParts, LogicalOperator, StabilizerCode};
use crate::error::{Error, Result};
use crate::gf2::{row_reduce, BitMatrix, BitVec, EchelonBasis, PauliVector};

const CLASS_SEARCH_SEED: u64 = 0x5eed_1060;

/// `k` pairs `(X_i, Z_i)` with `<X_i, Z_j> = delta_ij` and all other pairs
/// commuting. For CSS codes the X representatives are low-weight picks from
/// an information-set search, and the Z side is re-paired to match.
pub fn logical_basis(code: &StabilizerCode) -> Vec<(PauliVector, PauliVector)> {
    let k = code.k();
    if k == 0 {
        return Vec::new();
    }
    match code.css() {
        Some(css) => css_basis(code.n(), css, k),
        None => symplectic_basis(code, k),
    }
}

fn css_basis(n: usize, css: &CssParts, k: usize) -> Vec<(PauliVector, PauliVector)> {
    let iterations = (20_000 / n.max(1)).clamp(8, 200);
    let mut rng = ChaCha8Rng::seed_from_u64(CLASS_SEARCH_SEED);
    let xs = low_weight_x_classes(css, k, iterations, &mut rng);
    let zs = independent_classes(&css.hx.kernel(), &css.hz, k);
    let gram = BitMatrix::from_rows(
        k,
        xs.iter()
            .map(|x| BitVec::from_indices(k, (0..k).filter(|&j| x.dot(&zs[j]))))
            .collect(),
    );
    let inv = invert(&gram).expect("logical Gram matrix of a CSS code is invertible");
    let paired: Vec<BitVec> = (0..k)
        .map(|i| {
            let mut z = BitVec::zeros(n);
            for (j, zj) in zs.iter().enumerate() {
                if inv.get(j, i) {
                    z.xor_assign(zj);
                }
            }
            z
        })
        .collect();
    xs.into_iter()
        .zip(paired)
        .map(|(x, z)| (PauliVector::pure_x(x), PauliVector::pure_z(z)))
        .collect()
}

/// First `k` vectors of `candidates` that are independent modulo the row
/// space of `modulo`.
fn independent_classes(candidates: &[BitVec], modulo: &BitMatrix, k: usize) -> Vec<BitVec> {
    let mut span = EchelonBasis::new(modulo.cols());
    for r in modulo.row_vecs() {
        span.insert(r.clone());
    }
    let mut out = Vec::with_capacity(k);
    for c in candidates {
        if out.len() == k {
            break;
        }
        if span.insert(c.clone()) {
            out.push(c.clone());
        }
    }
    out
}

/// Low-weight X logical classes: kernel bases of `HZ` under random column
/// orders are pooled, sorted by weight, and greedily kept when independent
/// modulo the X stabilizers.
pub fn low_weight_x_classes(
    css: &CssParts,
    k: usize,
    iterations: usize,
    rng: &mut impl Rng,
) -> Vec<BitVec> {
    let n = css.hz.cols();
    let mut pool: HashSet<BitVec> = HashSet::new();
    let mut order: Vec<usize> = (0..n).collect();
    for it in 0..iterations.max(1) {
        if it > 0 {
            order.shuffle(rng);
        }
        let mut inv = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        let permuted = BitMatrix::from_rows(
            n,
            css.hz
                .row_vecs()
                .iter()
                .map(|r| BitVec::from_indices(n, r.iter_ones().map(|c| inv[c])))
                .collect(),
        );
        for v in permuted.kernel() {
            pool.insert(BitVec::from_indices(n, v.iter_ones().map(|c| order[c])));
        }
    }
    let mut sorted: Vec<BitVec> = pool.into_iter().collect();
    sorted.sort_by_cached_key(|v| (v.count_ones(), v.iter_ones().collect::<Vec<_>>()));
    independent_classes(&sorted, &css.hx, k)
}

fn invert(m: &BitMatrix) -> Option<BitMatrix> {
    let k = m.rows();
    let aug = m.hstack(&BitMatrix::identity(k));
    let (r, pivots) = row_reduce(&aug);
    if pivots.len() < k || pivots[k - 1] >= k {
        return None;
    }
    Some(BitMatrix::from_rows(
        k,
        (0..k).map(|i| r.row(i).slice(k, 2 * k)).collect(),
    ))
}

fn symplectic_form(a: &BitVec, b: &BitVec) -> bool {
    PauliVector::from_symplectic(a).anticommutes(&PauliVector::from_symplectic(b))
}

fn symplectic_basis(code: &StabilizerCode, k: usize) -> Vec<(PauliVector, PauliVector)> {
    let n = code.n();
    // v commutes with g iff v . [g_z | g_x] = 0.
    let swapped = BitMatrix::from_rows(
        2 * n,
        code.generators()
            .iter()
            .map(|g| g.hadamard_dual().to_symplectic())
            .collect(),
    );
    let normalizer = swapped.kernel();
    let mut reps = independent_classes(&normalizer, &code.symplectic_matrix(), 2 * k);
    let mut pairs = Vec::with_capacity(k);
    while !reps.is_empty() {
        let a = reps.remove(0);
        let Some(j) = reps.iter().position(|b| symplectic_form(&a, b)) else {
            break;
        };
        let b = reps.remove(j);
        for u in reps.iter_mut() {
            let ub = symplectic_form(u, &b);
            let ua = symplectic_form(u, &a);
            if ub {
                u.xor_assign(&a);
            }
            if ua {
                u.xor_assign(&b);
            }
        }
        pairs.push((
            PauliVector::from_symplectic(&a),
            PauliVector::from_symplectic(&b),
        ));
    }
    pairs
}

fn support_key(p: &PauliVector) -> (usize, Vec<usize>) {
    let s = p.support();
    (s.len(), s)
}

/// Lowers the weight of `l` by multiplying in stabilizer generators. Each
/// descent takes the best single-generator move, allows a bounded number of
/// random sideways moves on plateaus, and the best result over `restarts`
/// random starting dressings is kept. `l` is returned unchanged unless a
/// strictly lighter representative is found; equal-weight results tie-break
/// by lexicographic support.
pub fn reduce_weight(
    l: &LogicalOperator,
    code: &StabilizerCode,
    restarts: usize,
    rng: &mut impl Rng,
) -> Result<LogicalOperator> {
    if l.pauli().n() != code.n() {
        return Err(Error::Dimension {
            expected: code.n(),
            got: l.pauli().n(),
        });
    }
    let pool: Vec<PauliVector> = match code.css() {
        Some(css) if l.pauli().is_pure_x() => css
            .hx
            .row_vecs()
            .iter()
            .cloned()
            .map(PauliVector::pure_x)
            .collect(),
        Some(css) if l.pauli().is_pure_z() => css
            .hz
            .row_vecs()
            .iter()
            .cloned()
            .map(PauliVector::pure_z)
            .collect(),
        _ => code.generators().to_vec(),
    };
    let pool: Vec<PauliVector> = pool.into_iter().filter(|g| !g.is_identity()).collect();
    if pool.is_empty() {
        return Ok(l.clone());
    }
    let mut best = descend(l.pauli(), &pool, rng);
    for _ in 0..restarts {
        let mut start = l.pauli().clone();
        for _ in 0..rng.random_range(1..=3usize) {
            start.mul_assign(&pool[rng.random_range(0..pool.len())]);
        }
        let candidate = descend(&start, &pool, rng);
        if support_key(&candidate) < support_key(&best) {
            best = candidate;
        }
    }
    if best.weight() < l.weight() {
        Ok(LogicalOperator::new(best, l.basis_index()))
    } else {
        Ok(l.clone())
    }
}

fn descend(start: &PauliVector, pool: &[PauliVector], rng: &mut impl Rng) -> PauliVector {
    let mut cur = start.clone();
    let mut best = cur.clone();
    let mut sideways = 0;
    let budget = pool.len();
    loop {
        let w = cur.weight();
        let weights: Vec<usize> = pool
            .iter()
            .map(|g| {
                let mut p = cur.clone();
                p.mul_assign(g);
                p.weight()
            })
            .collect();
        let min = *weights.iter().min().expect("nonempty pool");
        if min < w {
            let i = weights.iter().position(|&x| x == min).unwrap();
            cur.mul_assign(&pool[i]);
            sideways = 0;
        } else if min == w && sideways < budget {
            let flat: Vec<usize> = (0..pool.len()).filter(|&i| weights[i] == w).collect();
            cur.mul_assign(&pool[flat[rng.random_range(0..flat.len())]]);
            sideways += 1;
        } else {
            break;
        }
        if support_key(&cur) < support_key(&best) {
            best = cur.clone();
        }
    }
    best
}
