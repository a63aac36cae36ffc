use super::{Poly2, PolyMatrix};
use crate::error::{Error, Result};
use std::fmt;

/// An element of the localization of GF(2)[z] at denominators with constant
/// term 1, stored reduced so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalFrac {
    num: Poly2,
    den: Poly2,
}

impl LocalFrac {
    /// Builds and reduces `num / den`; the denominator must have constant
    /// term 1 (lie in the multiplicative set of the localization).
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if !den.constant_term() {
            return Err(Error::DenominatorNotUnit);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly2, den: Poly2) -> Self {
        debug_assert!(den.constant_term());
        if num.is_zero() {
            return LocalFrac {
                num,
                den: Poly2::one(),
            };
        }
        let g = num.gcd(&den).expect("den is nonzero");
        // A divisor of an element of the multiplicative set stays in it.
        LocalFrac {
            num: num.exact_div(&g),
            den: den.exact_div(&g),
        }
    }

    pub fn from_poly(p: Poly2) -> Self {
        LocalFrac {
            num: p,
            den: Poly2::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &LocalFrac) -> LocalFrac {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::reduced(num, &self.den * &rhs.den)
    }

    pub fn mul(&self, rhs: &LocalFrac) -> LocalFrac {
        Self::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    /// Division inside the localization. Fails when the divisor is zero or
    /// the reduced quotient's denominator has constant term 0, i.e. the
    /// divisor is a multiple of z and not invertible here.
    pub fn try_div(&self, rhs: &LocalFrac) -> Result<LocalFrac> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        let g = num.gcd(&den).expect("den is nonzero");
        let den = den.exact_div(&g);
        if !den.constant_term() {
            return Err(Error::NotInvertibleInLocalization(rhs.to_string()));
        }
        Ok(LocalFrac {
            num: num.exact_div(&g),
            den,
        })
    }
}

impl fmt::Display for LocalFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.to_coeff_string())
        } else {
            write!(
                f,
                "{}/{}",
                self.num.to_coeff_string(),
                self.den.to_coeff_string()
            )
        }
    }
}

impl fmt::Debug for LocalFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalFrac({self})")
    }
}

/// A matrix over the localization; the shape of a left-inverse transfer
/// matrix and of transfer matrices themselves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FracMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LocalFrac>,
}

impl FracMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        FracMatrix {
            rows,
            cols,
            entries: vec![LocalFrac::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LocalFrac) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_poly_matrix(m: &PolyMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |r, c| LocalFrac::from_poly(m.at(r, c).clone()))
    }

    /// `m / den` entrywise; the denominator must lie in the multiplicative set.
    pub fn from_poly_matrix_over(m: &PolyMatrix, den: &Poly2) -> Result<Self> {
        let mut out = Self::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.set(r, c, LocalFrac::new(m.at(r, c).clone(), den.clone())?);
            }
        }
        Ok(out)
    }

    /// Rectangular diagonal matrix.
    pub fn diagonal(rows: usize, cols: usize, diag: &[LocalFrac]) -> Self {
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

    pub fn at(&self, r: usize, c: usize) -> &LocalFrac {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: LocalFrac) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.entries[r * self.cols + c] = value;
    }

    pub fn multiply(&self, rhs: &FracMatrix) -> FracMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "incompatible shapes for product: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        FracMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = LocalFrac::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(rhs.at(k, j)));
            }
            acc
        })
    }

    pub fn scale(&self, factor: &LocalFrac) -> FracMatrix {
        FracMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).mul(factor))
    }
}
