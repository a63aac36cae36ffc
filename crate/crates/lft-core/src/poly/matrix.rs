use super::Poly2;
use crate::gf2::BitMatrix;
use std::fmt;
use std::ops::Mul;

/// A dense matrix over GF(2)[z] with at least one row and one column.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly2>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly2::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly2::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly2) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Embeds a bit matrix as a matrix of constant polynomials.
    pub fn from_bit_matrix(m: &BitMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |r, c| {
            if m.get(r, c) {
                Poly2::one()
            } else {
                Poly2::zero()
            }
        })
    }

    /// Rectangular diagonal matrix with the given entries on the diagonal.
    pub fn diagonal(rows: usize, cols: usize, diag: &[Poly2]) -> Self {
        assert!(diag.len() <= rows.min(cols));
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly2 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Poly2) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly2::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn multiply(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "incompatible shapes for product: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        PolyMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Poly2::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * rhs.at(k, j));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "incompatible shapes for sum"
        );
        PolyMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + rhs.at(r, c))
    }

    pub fn scale(&self, factor: &Poly2) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * factor)
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += q * row[src]
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, q: &Poly2) {
        debug_assert_ne!(dst, src);
        for c in 0..self.cols {
            let add = q * self.at(src, c);
            self.set(dst, c, &add + self.at(dst, c));
        }
    }

    /// col[dst] += q * col[src]
    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, q: &Poly2) {
        debug_assert_ne!(dst, src);
        for r in 0..self.rows {
            let add = q * self.at(r, src);
            self.set(r, dst, &add + self.at(r, dst));
        }
    }

    /// Exact determinant in GF(2)[z].
    ///
    /// Cofactor expansion for dimension <= 4, fraction-free elimination above;
    /// both are exact and cross-checked against each other in tests.
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    pub fn det(&self) -> Poly2 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    fn det_cofactor(&self) -> Poly2 {
        // Signs are irrelevant in characteristic 2.
        match self.rows {
            1 => self.at(0, 0).clone(),
            _ => {
                let mut acc = Poly2::zero();
                for r in 0..self.rows {
                    if self.at(r, 0).is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.at(r, 0) * &self.minor(r, 0).det_cofactor());
                }
                acc
            }
        }
    }

    fn det_bareiss(&self) -> Poly2 {
        let n = self.rows;
        let mut m = self.clone();
        let mut prev = Poly2::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                // Row swaps only change the sign, which is trivial here.
                let Some(swap) = (k + 1..n).find(|&i| !m.at(i, k).is_zero()) else {
                    return Poly2::zero();
                };
                m.swap_rows(k, swap);
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.at(k, k) * m.at(i, j)) + &(m.at(i, k) * m.at(k, j));
                    m.set(i, j, num.exact_div(&prev));
                }
            }
            for i in k + 1..n {
                m.set(i, k, Poly2::zero());
            }
            prev = m.at(k, k).clone();
        }
        m.at(n - 1, n - 1).clone()
    }

    /// Adjugate, satisfying `m * adjugate(m) = det(m) * I` exactly. The 1x1
    /// adjugate is `[[1]]` (a 0x0 determinant is 1).
    ///
    /// # Panics
    ///
    /// Panics if the matrix is not square.
    pub fn adjugate(&self) -> PolyMatrix {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        if self.rows == 1 {
            return PolyMatrix::identity(1);
        }
        // Transposed cofactor matrix; all signs are 1 in characteristic 2.
        PolyMatrix::from_fn(self.rows, self.cols, |r, c| self.minor(c, r).det())
    }

    fn minor(&self, drop_row: usize, drop_col: usize) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let rr = if r < drop_row { r } else { r + 1 };
            let cc = if c < drop_col { c } else { c + 1 };
            self.at(rr, cc).clone()
        })
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;

    fn mul(self, rhs: Self) -> PolyMatrix {
        self.multiply(rhs)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix({}x{})", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_coeff_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn random_poly_matrix(
    rows: usize,
    cols: usize,
    max_degree: usize,
    rng: &mut impl rand::RngCore,
) -> PolyMatrix {
    PolyMatrix::from_fn(rows, cols, |_, _| super::random_poly(max_degree, rng))
}
