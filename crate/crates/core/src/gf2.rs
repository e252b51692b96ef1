//! Dense linear algebra over GF(2) and the binary symplectic representation of
//! Pauli operators (phases dropped).

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length packed bit vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVec::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn and_count(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// Copies `other` into positions `offset..offset + other.len()`.
    pub fn splice(&mut self, offset: usize, other: &BitVec) {
        for i in other.iter_ones() {
            self.set(offset + i, true);
        }
    }

    /// Bits `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        BitVec::from_indices(
            end - start,
            self.iter_ones()
                .filter(|&i| i >= start && i < end)
                .map(|i| i - start),
        )
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense bit matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length must equal column count");
        }
        BitMatrix { cols, rows }
    }

    /// Builds a matrix from dense 0/1 rows.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: r.len(),
                });
            }
            out.push(BitVec::from_indices(
                cols,
                r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i),
            ));
        }
        Ok(BitMatrix { cols, rows: out })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn row_vecs(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Entrywise XOR with a matrix of the same shape.
    pub fn xor_assign(&mut self, other: &BitMatrix) {
        assert_eq!(self.rows(), other.rows());
        assert_eq!(self.cols, other.cols);
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `self * other^T`, both sharing the column count.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows(), other.rows());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows());
        let mut out = BitMatrix::zeros(self.rows(), other.cols);
        for (i, a) in self.rows.iter().enumerate() {
            for k in a.iter_ones() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows() * other.rows(), self.cols * other.cols);
        for i in 0..self.rows() {
            for j in self.rows[i].iter_ones() {
                for k in 0..other.rows() {
                    for l in other.rows[k].iter_ones() {
                        out.set(i * other.rows() + k, j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows(), other.rows());
        let cols = self.cols + other.cols;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = BitVec::zeros(cols);
                r.splice(0, a);
                r.splice(self.cols, b);
                r
            })
            .collect();
        BitMatrix { cols, rows }
    }

    pub fn rank(&self) -> usize {
        row_reduce(self).1.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let (rref, pivots) = row_reduce(self);
        let mut is_pivot = vec![None; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(r);
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut x = BitVec::zeros(self.cols);
            x.set(f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if rref.get(r, f) {
                    x.set(p, true);
                }
            }
            basis.push(x);
        }
        basis
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// GF(2) row rank.
pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

/// Reduced row-echelon form plus the pivot column of each nonzero row.
/// Zero rows are kept at the bottom so the shape is preserved.
pub fn row_reduce(m: &BitMatrix) -> (BitMatrix, Vec<usize>) {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    (
        BitMatrix {
            cols: m.cols,
            rows,
        },
        pivots,
    )
}

/// True iff `v` is a GF(2) combination of the rows of `m`.
pub fn in_row_space(v: &BitVec, m: &BitMatrix) -> Result<bool> {
    if v.len() != m.cols() {
        return Err(Error::Dimension {
            expected: m.cols(),
            got: v.len(),
        });
    }
    let mut basis = EchelonBasis::new(m.cols());
    for r in m.row_vecs() {
        basis.insert(r.clone());
    }
    Ok(basis.contains(v))
}

/// Incrementally maintained row-space basis. Every stored row owns a pivot
/// column that is zero in all other stored rows, so reduction is one pass.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<(usize, BitVec)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Single-qubit Pauli label.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// n-qubit Pauli operator modulo phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliVector {
    x: BitVec,
    z: BitVec,
}

impl PauliVector {
    pub fn identity(n: usize) -> Self {
        PauliVector {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        PauliVector { x, z }
    }

    pub fn pure_x(x: BitVec) -> Self {
        let n = x.len();
        PauliVector {
            x,
            z: BitVec::zeros(n),
        }
    }

    pub fn pure_z(z: BitVec) -> Self {
        let n = z.len();
        PauliVector {
            x: BitVec::zeros(n),
            z,
        }
    }

    /// Interprets `v` as `[x | z]` of length `2n`.
    pub fn from_symplectic(v: &BitVec) -> Self {
        assert!(v.len().is_multiple_of(2));
        let n = v.len() / 2;
        PauliVector {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        }
    }

    pub fn to_symplectic(&self) -> BitVec {
        let n = self.n();
        let mut v = BitVec::zeros(2 * n);
        v.splice(0, &self.x);
        v.splice(n, &self.z);
        v
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_part(&self) -> &BitVec {
        &self.x
    }

    pub fn z_part(&self) -> &BitVec {
        &self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn support_bits(&self) -> BitVec {
        let mut s = self.x.clone();
        s.or_assign(&self.z);
        s
    }

    pub fn weight(&self) -> usize {
        self.support_bits().count_ones()
    }

    /// Ascending qubit indices with non-identity action.
    pub fn support(&self) -> Vec<usize> {
        self.support_bits().iter_ones().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_pure_x(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_pure_z(&self) -> bool {
        self.x.is_zero()
    }

    /// `<p, q> = x_p . z_q + z_p . x_q (mod 2)`.
    pub fn symplectic_product(&self, other: &PauliVector) -> Result<u8> {
        if self.n() != other.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                got: other.n(),
            });
        }
        Ok(self.anticommutes(other) as u8)
    }

    #[inline]
    pub fn anticommutes(&self, other: &PauliVector) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    /// Product modulo phase.
    pub fn mul_assign(&mut self, other: &PauliVector) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Copy placed at `offset` inside an `n_total`-qubit register.
    pub fn embed(&self, n_total: usize, offset: usize) -> PauliVector {
        let mut x = BitVec::zeros(n_total);
        let mut z = BitVec::zeros(n_total);
        x.splice(offset, &self.x);
        z.splice(offset, &self.z);
        PauliVector { x, z }
    }

    /// Restriction to qubits `start..end`.
    pub fn restrict(&self, start: usize, end: usize) -> PauliVector {
        PauliVector {
            x: self.x.slice(start, end),
            z: self.z.slice(start, end),
        }
    }

    /// Swaps the roles of X and Z on every qubit.
    pub fn hadamard_dual(&self) -> PauliVector {
        PauliVector {
            x: self.z.clone(),
            z: self.x.clone(),
        }
    }
}

impl std::str::FromStr for PauliVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        let mut p = PauliVector::identity(chars.len());
        for (i, c) in chars.iter().enumerate() {
            let label = match c.to_ascii_uppercase() {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("unexpected Pauli label {other:?}"),
                    })
                }
            };
            p.set(i, label);
        }
        Ok(p)
    }
}

impl fmt::Display for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliVector({self})")
    }
}
