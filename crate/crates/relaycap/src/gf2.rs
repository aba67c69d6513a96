//! Dense linear algebra over GF(2).
//!
//! The deterministic channel model reduces every question about a network to
//! rank computations on binary matrices: down-shift matrices `S^(q-n)` model
//! individual links, and stacked blocks of them form the transfer matrix of a
//! cut. Rows are bit-packed into `u64` words so that elimination works on
//! whole words at a time; rank over all cuts dominates the cost of capacity
//! computations.

use std::fmt;

const WORD_BITS: usize = 64;

/// A dense matrix over GF(2) with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    /// Row-major storage, `words_per_row` words per row.
    words: Vec<u64>,
    words_per_row: usize,
}

impl BitMatrix {
    /// Creates a zero matrix of the given shape.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD_BITS).max(1);
        Self {
            rows,
            cols,
            words: vec![0; rows * words_per_row],
            words_per_row,
        }
    }

    /// Creates the `n x n` identity.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from a row-major list of 0/1 entries.
    ///
    /// # Panics
    /// Panics if `entries.len() != rows * cols`.
    #[must_use]
    pub fn from_entries(rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if entries[r * cols + c] & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[must_use]
    pub const fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub const fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let w = self.words[r * self.words_per_row + c / WORD_BITS];
        (w >> (c % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let w = &mut self.words[r * self.words_per_row + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// XORs row `src` into row `dst`.
    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words_per_row, src * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.words[s + k];
            self.words[d + k] ^= v;
        }
    }

    /// Copies a block into this matrix with its top-left corner at `(r0, c0)`.
    ///
    /// # Panics
    /// Panics if the block does not fit.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &BitMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                if block.get(r, c) {
                    self.set(r0 + r, c0 + c, true);
                }
            }
        }
    }

    /// GF(2) rank via row elimination on a working copy.
    #[must_use]
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            let word = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(pivot) =
                (rank..work.rows).find(|&r| work.words[r * work.words_per_row + word] & mask != 0)
            else {
                continue;
            };
            if pivot != rank {
                for k in 0..work.words_per_row {
                    work.words.swap(
                        rank * work.words_per_row + k,
                        pivot * work.words_per_row + k,
                    );
                }
            }
            for r in 0..work.rows {
                if r != rank && work.words[r * work.words_per_row + word] & mask != 0 {
                    work.xor_rows(r, rank);
                }
            }
            rank += 1;
            if rank == work.rows {
                break;
            }
        }
        rank
    }

    /// GF(2) matrix product.
    ///
    /// # Panics
    /// Panics if `self.cols != rhs.rows`.
    #[must_use]
    pub fn multiply(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            // out[r] = XOR of rhs rows selected by the bits of self[r].
            for c in 0..self.cols {
                if self.get(r, c) {
                    let o = r * out.words_per_row;
                    let s = c * rhs.words_per_row;
                    for k in 0..out.words_per_row {
                        out.words[o + k] ^= rhs.words[s + k];
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a bit vector (`len == cols`), returning `M v`.
    ///
    /// # Panics
    /// Panics if `v.len() != self.cols`.
    #[must_use]
    pub fn apply(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (k, w) in self.row(r).iter().enumerate() {
                acc ^= w & v.words[k];
            }
            if acc.count_ones() & 1 == 1 {
                out.set(r);
            }
        }
        out
    }

    /// Block-diagonal assembly; the rank of the result is the sum of the
    /// block ranks.
    #[must_use]
    pub fn block_diag(blocks: &[BitMatrix]) -> BitMatrix {
        let rows = blocks.iter().map(BitMatrix::rows).sum();
        let cols = blocks.iter().map(BitMatrix::cols).sum();
        let mut out = BitMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Samples a uniformly random matrix (every entry an independent fair bit).
    #[must_use]
    pub fn random(rows: usize, cols: usize, rng: &mut impl rand::Rng) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for k in 0..m.words_per_row {
                m.words[r * m.words_per_row + k] = rng.gen::<u64>();
            }
            // Clear bits beyond `cols` so equality and hashing stay canonical.
            let tail = cols % WORD_BITS;
            if tail != 0 {
                m.words[(r + 1) * m.words_per_row - 1] &= (1u64 << tail) - 1;
            }
            if cols == 0 {
                m.words[r * m.words_per_row] = 0;
            }
        }
        m
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Returns the `q x q` matrix `S^(q-n)`: ones on the `(q-n)`-th subdiagonal.
///
/// Applied to a length-`q` signal vector it keeps the top `n` entries and
/// shifts them to the bottom `n` positions, truncating the rest. `n == q`
/// gives the identity, `n == 0` the zero matrix.
pub fn shift_matrix(q: usize, n: usize) -> Result<BitMatrix, crate::Error> {
    if n > q {
        return Err(crate::Error::Argument(format!(
            "shift gain {n} exceeds level count {q}"
        )));
    }
    let mut m = BitMatrix::zeros(q, q);
    let shift = q - n;
    for r in shift..q {
        m.set(r, r - shift, true);
    }
    Ok(m)
}

/// A bit vector; the carrier of per-node signals in the deterministic model.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD_BITS).max(1)],
            len,
        }
    }

    /// Builds a vector from 0/1 entries (index 0 = top signal level).
    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i);
            }
        }
        v
    }

    /// Packs the low `len` bits of `value` (bit 0 -> index 0).
    #[must_use]
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD_BITS);
        let mut v = Self::zeros(len);
        v.words[0] = if len == WORD_BITS {
            value
        } else {
            value & ((1u64 << len) - 1)
        };
        v
    }

    /// Inverse of [`BitVec::from_u64`]; requires `len <= 64`.
    #[must_use]
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD_BITS);
        self.words[0]
    }

    #[must_use]
    pub const fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index out of range");
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit index out of range");
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    /// In-place GF(2) addition.
    ///
    /// # Panics
    /// Panics if lengths differ.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Random vector with i.i.d. fair bits.
    #[must_use]
    pub fn random(len: usize, rng: &mut impl rand::Rng) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = rng.gen::<u64>();
        }
        let tail = len % WORD_BITS;
        if tail != 0 {
            let last = v.words.len() - 1;
            v.words[last] &= (1u64 << tail) - 1;
        }
        if len == 0 {
            v.words[0] = 0;
        }
        v
    }

    /// Concatenates vectors in order.
    #[must_use]
    pub fn concat(parts: &[&BitVec]) -> BitVec {
        let len = parts.iter().map(|p| p.len).sum();
        let mut out = BitVec::zeros(len);
        let mut at = 0;
        for p in parts {
            for i in 0..p.len {
                if p.get(i) {
                    out.set(at + i);
                }
            }
            at += p.len;
        }
        out
    }

    /// Extracts `[start, start+len)` as a new vector.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn shift_full_gain_is_identity() {
        let m = shift_matrix(5, 5).unwrap();
        assert_eq!(m, BitMatrix::identity(5));
    }

    #[test]
    fn shift_zero_gain_is_zero() {
        let m = shift_matrix(5, 0).unwrap();
        assert_eq!(m, BitMatrix::zeros(5, 5));
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn shift_applies_down_shift() {
        // q=5, n=3: shift down by 2, keeping the top 3 entries.
        let m = shift_matrix(5, 3).unwrap();
        let v = BitVec::from_bits(&[1, 0, 1, 1, 0]);
        let out = m.apply(&v);
        assert_eq!(out, BitVec::from_bits(&[0, 0, 1, 0, 1]));
    }

    #[test]
    fn shift_gain_above_levels_rejected() {
        assert!(shift_matrix(3, 4).is_err());
    }

    #[test]
    fn rank_identity() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_repeated_row() {
        let m = BitMatrix::from_entries(2, 2, &[1, 0, 1, 0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_mimo_counterexample_block() {
        // [[I_4, I_4], [I_4, I_4]] has rank 4.
        let i4 = BitMatrix::identity(4);
        let mut m = BitMatrix::zeros(8, 8);
        m.paste(0, 0, &i4);
        m.paste(0, 4, &i4);
        m.paste(4, 0, &i4);
        m.paste(4, 4, &i4);
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn multiply_by_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let m = BitMatrix::random(4, 6, &mut rng);
        assert_eq!(BitMatrix::identity(4).multiply(&m), m);
        assert_eq!(m.multiply(&BitMatrix::identity(6)), m);
    }

    #[test]
    fn multiply_composes_shifts() {
        let s1 = shift_matrix(3, 2).unwrap(); // S^1
        let s2 = shift_matrix(3, 1).unwrap(); // S^2
        assert_eq!(s1.multiply(&s1), s2);
    }

    #[test]
    fn multiply_hand_example() {
        // [[1,1],[0,1]] * [[1,0],[1,1]] = [[0,1],[1,1]] over GF(2).
        let a = BitMatrix::from_entries(2, 2, &[1, 1, 0, 1]);
        let b = BitMatrix::from_entries(2, 2, &[1, 0, 1, 1]);
        let expect = BitMatrix::from_entries(2, 2, &[0, 1, 1, 1]);
        assert_eq!(a.multiply(&b), expect);
    }

    #[test]
    fn block_diag_identities() {
        let out = BitMatrix::block_diag(&[BitMatrix::identity(2), BitMatrix::identity(3)]);
        assert_eq!(out, BitMatrix::identity(5));
    }

    #[test]
    fn block_diag_empty() {
        let out = BitMatrix::block_diag(&[]);
        assert_eq!(out.rows(), 0);
        assert_eq!(out.cols(), 0);
        assert_eq!(out.rank(), 0);
    }

    #[test]
    fn block_diag_rank_adds() {
        let a = BitMatrix::from_entries(2, 2, &[1, 0, 1, 0]); // rank 1
        let b = BitMatrix::from_entries(3, 2, &[1, 0, 0, 1, 1, 1]); // rank 2
        let joined = BitMatrix::block_diag(&[a.clone(), b.clone()]);
        assert_eq!(joined.rank(), a.rank() + b.rank());
        assert_eq!(joined.rank(), 3);
    }

    #[test]
    fn apply_word_boundary() {
        // 70 columns crosses the u64 boundary.
        let mut m = BitMatrix::zeros(2, 70);
        m.set(0, 69, true);
        m.set(1, 0, true);
        m.set(1, 69, true);
        let mut v = BitVec::zeros(70);
        v.set(69);
        let out = m.apply(&v);
        assert!(out.get(0));
        assert!(out.get(1));
    }

    proptest! {
        #[test]
        fn prop_shift_rank_is_gain(q in 0usize..12, n_raw in 0usize..12) {
            let n = n_raw.min(q);
            let m = shift_matrix(q, n).unwrap();
            prop_assert_eq!(m.rank(), n);
        }

        #[test]
        fn prop_block_diag_rank_adds(seed in any::<u64>(),
                                     r1 in 1usize..5, c1 in 1usize..5,
                                     r2 in 1usize..5, c2 in 1usize..5) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = BitMatrix::random(r1, c1, &mut rng);
            let b = BitMatrix::random(r2, c2, &mut rng);
            let d = BitMatrix::block_diag(&[a.clone(), b.clone()]);
            prop_assert_eq!(d.rank(), a.rank() + b.rank());
        }

        #[test]
        fn prop_multiply_associative(seed in any::<u64>(),
                                     n1 in 1usize..5, n2 in 1usize..5,
                                     n3 in 1usize..5, n4 in 1usize..5) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = BitMatrix::random(n1, n2, &mut rng);
            let b = BitMatrix::random(n2, n3, &mut rng);
            let c = BitMatrix::random(n3, n4, &mut rng);
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        }

        #[test]
        fn prop_rank_invariant_under_row_ops(seed in any::<u64>(),
                                             rows in 2usize..6, cols in 1usize..6,
                                             i in 0usize..6, j in 0usize..6) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = BitMatrix::random(rows, cols, &mut rng);
            let (i, j) = (i % rows, j % rows);
            // Row swap.
            let mut swapped = m.clone();
            for c in 0..cols {
                let (a, b) = (m.get(i, c), m.get(j, c));
                swapped.set(i, c, b);
                swapped.set(j, c, a);
            }
            prop_assert_eq!(swapped.rank(), m.rank());
            // Row addition (i != j).
            if i != j {
                let mut added = m.clone();
                added.xor_rows(i, j);
                prop_assert_eq!(added.rank(), m.rank());
            }
        }

        #[test]
        fn prop_rank_bounded(seed in any::<u64>(), rows in 0usize..7, cols in 0usize..7) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = BitMatrix::random(rows, cols, &mut rng);
            prop_assert!(m.rank() <= rows.min(cols));
        }

        #[test]
        fn prop_apply_is_linear(seed in any::<u64>(), rows in 1usize..8, cols in 1usize..8) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = BitMatrix::random(rows, cols, &mut rng);
            let u = BitVec::random(cols, &mut rng);
            let v = BitVec::random(cols, &mut rng);
            let mut uv = u.clone();
            uv.xor_assign(&v);
            let mut sum = m.apply(&u);
            sum.xor_assign(&m.apply(&v));
            prop_assert_eq!(m.apply(&uv), sum);
        }
    }
}
