//! Dense exact linear algebra over the two-element field.
//!
//! Rows are bit-packed into `u64` words; all arithmetic is mod 2 and exact.
//! Matrices are immutable values: every operation returns a fresh matrix, so
//! values can be shared freely across threads.

use crate::error::{Error, Result};
use rand::RngCore;
use std::fmt;
use std::ops::{Add, Mul};

const WORD_BITS: usize = 64;

/// A dense matrix over GF(2) with at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize, // words per row
    words: Vec<u64>,
}

impl BitMatrix {
    /// All-zero matrix.
    ///
    /// # Panics
    ///
    /// Panics if `rows` or `cols` is zero; zero-dimensional matrices are
    /// rejected at construction throughout this crate.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let stride = cols.div_ceil(WORD_BITS);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    /// Parses the text form used inside the transducer JSON format: one 0/1
    /// string per row, all rows of equal positive length.
    pub fn from_row_strings<S: AsRef<str>>(lines: &[S]) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::Parse("matrix needs at least one row".into()));
        }
        let cols = lines[0].as_ref().len();
        if cols == 0 {
            return Err(Error::Parse("matrix rows must be nonempty".into()));
        }
        let mut m = Self::zeros(lines.len(), cols);
        for (r, line) in lines.iter().enumerate() {
            let line = line.as_ref();
            if line.len() != cols {
                return Err(Error::Parse(format!(
                    "row {r} has {} entries, expected {cols}",
                    line.len()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    _ => {
                        return Err(Error::Parse(format!(
                            "row {r} contains {ch:?}; only '0' and '1' are allowed"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    /// Uniform random matrix: every entry is an independent fair bit.
    ///
    /// Draws `ceil(cols/64)` whole words from `rng` per row, in row order,
    /// with entry `c` of a row taken from bit `c % 64` (least significant
    /// first) of word `c / 64`. This consumption rule is part of the
    /// reproducibility contract: a fixed generator state always yields the
    /// same matrix.
    pub fn random<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        let tail_mask = tail_mask(cols);
        for r in 0..rows {
            for w in 0..m.stride {
                let mut word = rng.next_u64();
                if w == m.stride - 1 {
                    word &= tail_mask;
                }
                m.words[r * m.stride + w] = word;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        (self.words[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let w = &mut self.words[r * self.stride + c / WORD_BITS];
        if value {
            *w |= 1 << (c % WORD_BITS);
        } else {
            *w &= !(1 << (c % WORD_BITS));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (src_off, dst_off) = (src * self.stride, dst * self.stride);
        for w in 0..self.stride {
            let v = self.words[src_off + w];
            self.words[dst_off + w] ^= v;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(i * self.stride + w, j * self.stride + w);
        }
    }

    /// Exact product over GF(2).
    ///
    /// # Panics
    ///
    /// Panics if `self.cols() != rhs.rows()`.
    pub fn multiply(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "incompatible shapes for product: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_off = i * out.stride;
            for k in 0..self.cols {
                if self.get(i, k) {
                    let rhs_off = k * rhs.stride;
                    for w in 0..rhs.stride {
                        out.words[out_off + w] ^= rhs.words[rhs_off + w];
                    }
                }
            }
        }
        out
    }

    /// Vertical concatenation; `self` on top.
    ///
    /// # Panics
    ///
    /// Panics if the column counts differ.
    pub fn stack(&self, bottom: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, bottom.cols,
            "incompatible column counts for stacking: {} vs {}",
            self.cols, bottom.cols
        );
        let mut out = BitMatrix::zeros(self.rows + bottom.rows, self.cols);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.words[self.words.len()..].copy_from_slice(&bottom.words);
        out
    }

    pub fn transposed(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Column `c` as a `rows x 1` vector.
    pub fn column(&self, c: usize) -> BitMatrix {
        BitMatrix::from_fn(self.rows, 1, |r, _| self.get(r, c))
    }

    /// Rank over GF(2). The input is not modified.
    pub fn rank(&self) -> usize {
        self.clone().echelonize(false)
    }

    /// Reduced row echelon form: pivots are the only nonzero entries in their
    /// columns, pivot columns strictly increase, zero rows come last. The row
    /// space is preserved.
    pub fn rref(&self) -> BitMatrix {
        let mut m = self.clone();
        m.echelonize(true);
        m
    }

    /// In-place Gaussian elimination; returns the rank. With `reduced` the
    /// result is the RREF, otherwise only rows below each pivot are cleared.
    fn echelonize(&mut self, reduced: bool) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(r) = (pivot_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(r, pivot_row);
            let sweep_start = if reduced { 0 } else { pivot_row + 1 };
            for i in sweep_start..self.rows {
                if i != pivot_row && self.get(i, col) {
                    self.xor_row_into(pivot_row, i);
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivot_row
    }
}

fn tail_mask(cols: usize) -> u64 {
    let rem = cols % WORD_BITS;
    if rem == 0 {
        u64::MAX
    } else {
        (1u64 << rem) - 1
    }
}

impl Add for &BitMatrix {
    type Output = BitMatrix;

    /// Entrywise sum mod 2 (XOR).
    fn add(self, rhs: Self) -> BitMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "incompatible shapes for sum"
        );
        let mut out = self.clone();
        for (w, v) in out.words.iter_mut().zip(&rhs.words) {
            *w ^= v;
        }
        out
    }
}

impl Mul for &BitMatrix {
    type Output = BitMatrix;

    fn mul(self, rhs: Self) -> BitMatrix {
        self.multiply(rhs)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.to_row_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{line}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{}; {})", self.rows, self.cols, self.to_row_strings().join("|"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: plain triple loop over unpacked entries.
    fn naive_mul(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
        assert_eq!(a.cols(), b.rows());
        BitMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            let mut acc = false;
            for k in 0..a.cols() {
                acc ^= a.get(i, k) && b.get(k, j);
            }
            acc
        })
    }

    fn mat(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strings(rows).unwrap()
    }

    #[test]
    fn multiply_identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = BitMatrix::random(3, 5, &mut rng);
        assert_eq!(BitMatrix::identity(3).multiply(&m), m);
    }

    #[test]
    fn multiply_wraps_mod_two() {
        // [[1,1],[0,1]] * [[1],[1]] = [[0],[1]] since 1+1=0.
        let a = mat(&["11", "01"]);
        let b = mat(&["1", "1"]);
        assert_eq!(a.multiply(&b), mat(&["0", "1"]));
    }

    #[test]
    fn multiply_matches_naive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let a = BitMatrix::random(8, 8, &mut rng);
            let b = BitMatrix::random(8, 8, &mut rng);
            assert_eq!(a.multiply(&b), naive_mul(&a, &b));
        }
    }

    #[test]
    #[should_panic(expected = "incompatible shapes")]
    fn multiply_rejects_shape_mismatch() {
        let a = BitMatrix::zeros(2, 3);
        let b = BitMatrix::zeros(2, 2);
        let _ = a.multiply(&b);
    }

    #[test]
    fn stack_builds_identity() {
        let top = mat(&["10"]);
        let bottom = mat(&["01"]);
        assert_eq!(top.stack(&bottom), BitMatrix::identity(2));
    }

    #[test]
    fn stack_duplicate_keeps_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let m = BitMatrix::random(4, 6, &mut rng);
            assert_eq!(m.stack(&m).rank(), m.rank());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(mat(&["110", "110", "001"]).rank(), 2);
    }

    #[test]
    fn rref_examples() {
        for n in 1..5 {
            assert_eq!(BitMatrix::identity(n).rref(), BitMatrix::identity(n));
        }
        assert_eq!(mat(&["11", "10"]).rref(), BitMatrix::identity(2));
    }

    #[test]
    fn rref_is_idempotent_and_rank_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let m = BitMatrix::random(5, 7, &mut rng);
            let r = m.rref();
            assert_eq!(r.rref(), r);
            assert_eq!(r.rank(), m.rank());
            let nonzero_rows = (0..r.rows())
                .filter(|&i| (0..r.cols()).any(|j| r.get(i, j)))
                .count();
            assert_eq!(nonzero_rows, m.rank());
        }
    }

    #[test]
    fn row_space_containment_under_left_product() {
        // rank(stack(m, x*m)) == rank(m) for any conformable x.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = BitMatrix::random(4, 5, &mut rng);
            let x = BitMatrix::random(3, 4, &mut rng);
            assert_eq!(m.stack(&x.multiply(&m)).rank(), m.rank());
        }
    }

    #[test]
    fn multiply_is_associative_and_distributive() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let a = BitMatrix::random(3, 4, &mut rng);
            let b = BitMatrix::random(4, 5, &mut rng);
            let c = BitMatrix::random(5, 2, &mut rng);
            assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
            let b2 = BitMatrix::random(4, 5, &mut rng);
            assert_eq!(
                a.multiply(&(&b + &b2)),
                &a.multiply(&b) + &a.multiply(&b2)
            );
        }
    }

    #[test]
    fn random_is_deterministic_for_a_seed() {
        let a = BitMatrix::random(5, 9, &mut ChaCha8Rng::seed_from_u64(7));
        let b = BitMatrix::random(5, 9, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
    }

    #[test]
    fn random_single_bit_is_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let draws = 10_000;
        let ones: u32 = (0..draws)
            .map(|_| BitMatrix::random(1, 1, &mut rng).get(0, 0) as u32)
            .sum();
        // 5 sigma around p = 1/2: sigma = sqrt(0.25 / 10^4) = 0.005.
        let freq = f64::from(ones) / f64::from(draws);
        assert!((freq - 0.5).abs() < 5.0 * 0.005, "biased bit: {freq}");
    }

    #[test]
    fn random_two_by_two_is_uniform() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let draws = 10_000usize;
        let mut counts = [0usize; 16];
        for _ in 0..draws {
            let m = BitMatrix::random(2, 2, &mut rng);
            let code = (m.get(0, 0) as usize)
                | (m.get(0, 1) as usize) << 1
                | (m.get(1, 0) as usize) << 2
                | (m.get(1, 1) as usize) << 3;
            counts[code] += 1;
        }
        // 5 sigma around p = 1/16: sigma = sqrt(p(1-p)/10^4) ~= 0.00242.
        let p = 1.0 / 16.0;
        let tol = 5.0 * (p * (1.0 - p) / draws as f64).sqrt();
        for (code, &count) in counts.iter().enumerate() {
            assert!(count > 0, "matrix {code} never observed");
            let freq = count as f64 / draws as f64;
            assert!((freq - p).abs() < tol, "matrix {code}: freq {freq}");
        }
    }

    #[test]
    fn row_string_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let m = BitMatrix::random(3, 70, &mut rng); // spans a word boundary
        assert_eq!(BitMatrix::from_row_strings(&m.to_row_strings()).unwrap(), m);
    }

    #[test]
    fn row_string_rejects_bad_input() {
        assert!(BitMatrix::from_row_strings(&["01", "0"]).is_err());
        assert!(BitMatrix::from_row_strings(&["0x"]).is_err());
        assert!(BitMatrix::from_row_strings::<&str>(&[]).is_err());
    }

    #[test]
    #[should_panic(expected = "dimensions must be positive")]
    fn zero_dimensions_rejected() {
        let _ = BitMatrix::zeros(0, 3);
    }

    #[test]
    fn transpose_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = BitMatrix::random(4, 7, &mut rng);
        assert_eq!(m.transposed().transposed(), m);
    }
}
