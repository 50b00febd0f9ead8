//! Exact linear algebra over the two-element field.
//!
//! Everything downstream (cohomology models, divisor combinatorics, the
//! characteristic-class engine) is built on [`BitVector`] and [`BitMatrix`].
//! All values are immutable after construction and all operations are pure.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("maps not composable at position {position}: cols {cols} != rows {rows}")]
    NotComposable {
        position: usize,
        cols: usize,
        rows: usize,
    },
    #[error("form is degenerate or not alternating")]
    DegenerateForm,
    #[error("invalid bit-vector literal: {0}")]
    ParseError(String),
}

const WORD_BITS: usize = 64;

/// A vector over GF(2). Coordinate index range is `[0, len)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    /// The standard basis vector `e_i`.
    pub fn basis(len: usize, i: usize) -> Self {
        assert!(i < len, "basis index {i} out of range for length {len}");
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Low `len` bits of `x`, bit `i` of `x` becoming coordinate `i`.
    pub fn from_u64(x: u64, len: usize) -> Self {
        assert!(len <= WORD_BITS || x >> 1 >> (len - 1) == 0);
        let mut v = Self::zeros(len);
        if !v.words.is_empty() {
            v.words[0] = if len >= WORD_BITS {
                x
            } else {
                x & ((1u64 << len) - 1)
            };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let w = i / WORD_BITS;
        let mask = 1u64 << (i % WORD_BITS);
        if b {
            self.words[w] |= mask;
        } else {
            self.words[w] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        BitVector {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
            len: self.len,
        }
    }

    pub fn xor_in_place(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the coordinatewise AND, i.e. the standard dot product.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn complement(&self) -> BitVector {
        let mut v = self.clone();
        for i in 0..self.len {
            v.set(i, !self.get(i));
        }
        v
    }

    /// Indices of the 1 coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Lexicographic order on the bit string with index 0 most significant.
    pub fn lex_cmp(&self, other: &BitVector) -> Ordering {
        assert_eq!(self.len, other.len, "length mismatch in lex_cmp");
        for i in 0..self.len {
            match (self.get(i), other.get(i)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }

    /// Binary string, index 0 first.
    pub fn to_binary_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn from_binary_str(s: &str) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Gf2Error::ParseError(format!("bad binary digit {c:?}"))),
            }
        }
        Ok(v)
    }

    /// Hex form, little-endian by bit index: the hex digit at position `j`
    /// (after the `0x` prefix) holds coordinates `4j..4j+4`, lowest bit first.
    /// The length is not inferable from the hex and is carried separately.
    pub fn to_hex(&self) -> String {
        let ndigits = self.len.div_ceil(4).max(1);
        let mut s = String::with_capacity(2 + ndigits);
        s.push_str("0x");
        for j in 0..ndigits {
            let mut nib = 0u8;
            for k in 0..4 {
                let i = 4 * j + k;
                if i < self.len && self.get(i) {
                    nib |= 1 << k;
                }
            }
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(hex: &str, len: usize) -> Result<Self, Gf2Error> {
        let digits = hex
            .strip_prefix("0x")
            .or_else(|| hex.strip_prefix("0X"))
            .unwrap_or(hex);
        let ndigits = len.div_ceil(4).max(1);
        if digits.chars().count() > ndigits {
            return Err(Gf2Error::ParseError(format!(
                "hex literal {hex:?} has more than {ndigits} digits for length {len}"
            )));
        }
        let mut v = Self::zeros(len);
        for (j, c) in digits.chars().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| Gf2Error::ParseError(format!("bad hex digit {c:?}")))?;
            for k in 0..4 {
                if nib >> k & 1 == 1 {
                    let i = 4 * j + k;
                    if i >= len {
                        return Err(Gf2Error::ParseError(format!(
                            "hex literal {hex} sets bit {i} beyond length {len}"
                        )));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_binary_string())
    }
}

impl Serialize for BitVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BitVector", 2)?;
        st.serialize_field("hex", &self.to_hex())?;
        st.serialize_field("len", &self.len)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            hex: String,
            len: usize,
        }
        let r = Repr::deserialize(d)?;
        BitVector::from_hex(&r.hex, r.len).map_err(serde::de::Error::custom)
    }
}

/// A GF(2) linear map, stored by rows. `apply` computes `M v`.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        BitMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn apply(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            out.set(r, row.dot(v));
        }
        Ok(out)
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.nrows() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                got: other.nrows(),
            });
        }
        let ot = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = BitVector::zeros(other.ncols());
                for (c, col) in ot.rows.iter().enumerate() {
                    out.set(c, r.dot(col));
                }
                out
            })
            .collect();
        Ok(BitMatrix::from_rows(rows, other.ncols()))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in 0..self.cols {
                if row.get(c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows.len() == self.cols && *self == self.transpose()
    }

    /// Rank over GF(2) by elimination with leftmost-nonzero pivots.
    pub fn rank(&self) -> usize {
        echelon_basis(&self.rows).len()
    }

    /// Basis of the null space, in deterministic order (one vector per free
    /// column, ascending).
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        // Reduced row echelon form with pivot-column bookkeeping.
        let mut rows = self.rows.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut r = 0;
        for c in 0..self.cols {
            if let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) {
                rows.swap(r, p);
                let pivot_row = rows[r].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != r && row.get(c) {
                        row.xor_in_place(&pivot_row);
                    }
                }
                pivots.push((r, c));
                r += 1;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for &(pr, pc) in &pivots {
                if rows[pr].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space (vectors of length `nrows`).
    pub fn image_basis(&self) -> Vec<BitVector> {
        echelon_basis(&self.transpose().rows)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {}", r.to_binary_string())?;
        }
        write!(f, "]")
    }
}

/// Reduced echelon basis of the span of `vecs`; deterministic, so any two
/// bases of the same subspace compare equal.
pub fn echelon_basis(vecs: &[BitVector]) -> Vec<BitVector> {
    let mut basis: Vec<(usize, BitVector)> = Vec::new(); // (pivot index, vector)
    for v in vecs {
        let mut v = v.clone();
        loop {
            let lead = match v.support().first() {
                Some(&i) => i,
                None => break,
            };
            if let Some((_, b)) = basis.iter().find(|(p, _)| *p == lead) {
                let b = b.clone();
                v.xor_in_place(&b);
            } else {
                // back-substitute into existing rows
                for (_, b) in basis.iter_mut() {
                    if b.get(lead) {
                        b.xor_in_place(&v);
                    }
                }
                basis.push((lead, v));
                break;
            }
        }
    }
    basis.sort_by_key(|&(p, _)| p);
    basis.into_iter().map(|(_, v)| v).collect()
}

pub fn span_dim(vecs: &[BitVector]) -> usize {
    echelon_basis(vecs).len()
}

pub fn span_contains(basis: &[BitVector], v: &BitVector) -> bool {
    let mut v = v.clone();
    for b in basis {
        if let Some(&lead) = b.support().first() {
            if v.get(lead) {
                v.xor_in_place(b);
            }
        }
    }
    v.is_zero()
}

/// Whether two families span the same subspace.
pub fn spans_equal(a: &[BitVector], b: &[BitVector]) -> bool {
    echelon_basis(a) == echelon_basis(b)
}

/// dim(span(a) ∩ span(b)) via dim A + dim B − dim(A+B).
pub fn intersection_dim(a: &[BitVector], b: &[BitVector]) -> usize {
    let da = span_dim(a);
    let db = span_dim(b);
    let mut all: Vec<BitVector> = a.to_vec();
    all.extend_from_slice(b);
    da + db - span_dim(&all)
}

/// A nondegenerate alternating form on an even-dimensional GF(2) space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    matrix: BitMatrix,
}

impl SymplecticForm {
    /// The standard form with dual pairs `(a_i, b_i) = (2i, 2i+1)`.
    pub fn standard(dim: usize) -> Self {
        assert!(dim % 2 == 0, "symplectic dimension must be even");
        let mut m = BitMatrix::zeros(dim, dim);
        for i in 0..dim / 2 {
            m.set(2 * i, 2 * i + 1, true);
            m.set(2 * i + 1, 2 * i, true);
        }
        SymplecticForm { matrix: m }
    }

    pub fn from_matrix(matrix: BitMatrix) -> Result<Self, Gf2Error> {
        let f = SymplecticForm { matrix };
        if !f.is_alternating() || !f.is_nondegenerate() {
            return Err(Gf2Error::DegenerateForm);
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn is_alternating(&self) -> bool {
        self.matrix.is_symmetric() && (0..self.dim()).all(|i| !self.matrix.get(i, i))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    pub fn pairing(&self, x: &BitVector, y: &BitVector) -> Result<bool, Gf2Error> {
        let my = self.matrix.apply(y)?;
        if x.len() != my.len() {
            return Err(Gf2Error::DimensionMismatch {
                expected: my.len(),
                got: x.len(),
            });
        }
        Ok(x.dot(&my))
    }

    /// A symplectic basis `(u_1, v_1, ..., u_n, v_n)` with all pairings zero
    /// except `(u_i, v_i) = 1`. Deterministic.
    pub fn symplectic_basis(&self) -> Result<Vec<(BitVector, BitVector)>, Gf2Error> {
        if !self.is_alternating() {
            return Err(Gf2Error::DegenerateForm);
        }
        let dim = self.dim();
        let mut space: Vec<BitVector> = (0..dim).map(|i| BitVector::basis(dim, i)).collect();
        let mut pairs = Vec::new();
        while !space.is_empty() {
            let u = space[0].clone();
            let vi = space
                .iter()
                .position(|w| self.pairing(&u, w).unwrap())
                .ok_or(Gf2Error::DegenerateForm)?;
            let v = space[vi].clone();
            let mut next = Vec::new();
            for w in space.iter().skip(1) {
                if std::ptr::eq(w, &space[vi]) {
                    continue;
                }
                let mut w = w.clone();
                if self.pairing(&w, &v)? {
                    w.xor_in_place(&u);
                }
                if self.pairing(&w, &u)? {
                    w.xor_in_place(&v);
                }
                next.push(w);
            }
            let next = echelon_basis(&next);
            pairs.push((u, v));
            space = next;
        }
        Ok(pairs)
    }
}

/// A GF(2)-valued quadratic refinement of a symplectic form.
///
/// The underlying refinement `q0` satisfies the polarization law
/// `q0(x+y) = q0(x) + q0(y) + (x,y)` with `q0(0) = 0`; the stored function is
/// `q = base_parity + q0`, so `q(0) = base_parity`.
#[derive(Clone, Debug)]
pub struct QuadraticRefinement {
    form: SymplecticForm,
    basis_values: BitVector,
    base_parity: bool,
}

impl QuadraticRefinement {
    pub fn new(
        form: SymplecticForm,
        basis_values: BitVector,
        base_parity: bool,
    ) -> Result<Self, Gf2Error> {
        if basis_values.len() != form.dim() {
            return Err(Gf2Error::DimensionMismatch {
                expected: form.dim(),
                got: basis_values.len(),
            });
        }
        Ok(QuadraticRefinement {
            form,
            basis_values,
            base_parity,
        })
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    pub fn base_parity(&self) -> bool {
        self.base_parity
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn eval(&self, x: &BitVector) -> Result<bool, Gf2Error> {
        if x.len() != self.dim() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let idx = x.support();
        let mut acc = self.base_parity;
        for &i in &idx {
            acc ^= self.basis_values.get(i);
        }
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                acc ^= self.form.matrix.get(i, j);
            }
        }
        Ok(acc)
    }

    /// `q(x+y) + q(x) + q(y)`; equals `pairing(x, y)` up to the constant
    /// `base_parity`, and exactly `pairing(x, y)` when `base_parity = 0`.
    pub fn polarize(&self, x: &BitVector, y: &BitVector) -> Result<bool, Gf2Error> {
        Ok(self.eval(&x.xor(y))? ^ self.eval(x)? ^ self.eval(y)?)
    }

    /// Arf invariant of the underlying refinement `q0 = q + q(0)`:
    /// the sum of `q0(u_i) q0(v_i)` over a symplectic basis, independent of
    /// the basis choice.
    pub fn arf(&self) -> Result<bool, Gf2Error> {
        if !self.form.is_nondegenerate() {
            return Err(Gf2Error::DegenerateForm);
        }
        let mut acc = false;
        for (u, v) in self.form.symplectic_basis()? {
            let qu = self.eval(&u)? ^ self.base_parity;
            let qv = self.eval(&v)? ^ self.base_parity;
            acc ^= qu && qv;
        }
        Ok(acc)
    }
}

/// Per-junction exactness report for a chain of composable maps.
#[derive(Clone, Debug, Serialize)]
pub struct ExactSequenceCheck {
    /// `junction_exact[i]` covers the junction between `maps[i]` and `maps[i+1]`.
    pub junction_exact: Vec<bool>,
}

impl ExactSequenceCheck {
    pub fn all_exact(&self) -> bool {
        self.junction_exact.iter().all(|&b| b)
    }
}

/// Checks `image(maps[i]) = kernel(maps[i+1])` at every interior junction.
/// Maps act as `v -> M v`, so composability requires
/// `cols(maps[i+1]) = rows(maps[i])`.
pub fn check_exact(maps: &[BitMatrix]) -> Result<ExactSequenceCheck, Gf2Error> {
    for i in 0..maps.len().saturating_sub(1) {
        if maps[i + 1].ncols() != maps[i].nrows() {
            return Err(Gf2Error::NotComposable {
                position: i,
                cols: maps[i + 1].ncols(),
                rows: maps[i].nrows(),
            });
        }
    }
    let mut junction_exact = Vec::new();
    for i in 0..maps.len().saturating_sub(1) {
        let image = maps[i].image_basis();
        let kernel = maps[i + 1].kernel_basis();
        junction_exact.push(spans_equal(&image, &kernel));
    }
    Ok(ExactSequenceCheck { junction_exact })
}
