//! Exact arithmetic in GF(2)[z], its localization at denominators with
//! constant term 1, polynomial matrices, and Smith normal form.

mod frac;
mod matrix;
mod smith;

pub use frac::{FracMatrix, LocalFrac};
pub use matrix::PolyMatrix;
pub use smith::{
    localize_invariant_factors, smith_normal_form, InvariantFactorProfile, SmithDecomposition,
};

use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul};

const WORD_BITS: usize = 64;

/// A polynomial over GF(2), coefficient of `z^i` at bit `i`.
///
/// Stored canonically: the top stored word is nonzero and the zero polynomial
/// stores nothing, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    words: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { words: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 { words: vec![1] }
    }

    pub fn z() -> Self {
        Poly2 { words: vec![2] }
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / WORD_BITS + 1];
        *words.last_mut().unwrap() = 1 << (k % WORD_BITS);
        Poly2 { words }
    }

    pub fn from_bool_coefficients(coeffs: &[bool]) -> Self {
        let mut p = Poly2 {
            words: vec![0; coeffs.len().div_ceil(WORD_BITS)],
        };
        for (i, &bit) in coeffs.iter().enumerate() {
            if bit {
                p.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        p.normalize();
        p
    }

    /// Parses the coefficient bit string, lowest degree first ("011" = z + z^2).
    pub fn from_coeff_string(s: &str) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => coeffs.push(false),
                '1' => coeffs.push(true),
                _ => {
                    return Err(Error::Parse(format!(
                        "polynomial string contains {ch:?}; only '0' and '1' are allowed"
                    )))
                }
            }
        }
        Ok(Self::from_bool_coefficients(&coeffs))
    }

    /// Coefficient bit string, lowest degree first; the zero polynomial is "0".
    pub fn to_coeff_string(&self) -> String {
        match self.degree() {
            None => "0".to_string(),
            Some(d) => (0..=d).map(|i| if self.coeff(i) { '1' } else { '0' }).collect(),
        }
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// `None` for the zero polynomial (its degree is "minus infinity").
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn constant_term(&self) -> bool {
        self.coeff(0)
    }

    /// Largest k with `z^k` dividing the polynomial.
    pub fn z_valuation(&self) -> Result<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Ok(w * WORD_BITS + word.trailing_zeros() as usize);
            }
        }
        Err(Error::ZeroValuation)
    }

    /// Multiplication by `z^k`.
    pub fn shifted(&self, k: usize) -> Poly2 {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let word_shift = k / WORD_BITS;
        let bit_shift = k % WORD_BITS;
        let mut words = vec![0u64; self.words.len() + word_shift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + word_shift] |= w << bit_shift;
            if bit_shift != 0 {
                words[i + word_shift + 1] |= w >> (WORD_BITS - bit_shift);
            }
        }
        let mut p = Poly2 { words };
        p.normalize();
        p
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    ///
    /// # Panics
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly2) -> (Poly2, Poly2) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let k = r_deg - d_deg;
            rem = &rem + &divisor.shifted(k);
            quot = &quot + &Poly2::monomial(k);
        }
        (quot, rem)
    }

    pub fn divides(&self, other: &Poly2) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        other.div_rem(self).1.is_zero()
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly2) -> Poly2 {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "division was expected to be exact");
        q
    }

    /// Euclidean gcd; monic automatically since the only unit of GF(2) is 1.
    pub fn gcd(&self, other: &Poly2) -> Result<Poly2> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        Ok(a)
    }
}

impl Add for &Poly2 {
    type Output = Poly2;

    fn add(self, rhs: Self) -> Poly2 {
        let (longer, shorter) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut words = longer.words.clone();
        for (w, v) in words.iter_mut().zip(&shorter.words) {
            *w ^= v;
        }
        let mut p = Poly2 { words };
        p.normalize();
        p
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: Self) -> Poly2 {
        if self.is_zero() || rhs.is_zero() {
            return Poly2::zero();
        }
        // Carry-less long multiplication, one shifted XOR per set bit.
        let mut words = vec![0u64; self.words.len() + rhs.words.len()];
        for (wi, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                let shift = bit; // within-word shift; word offset handled below
                for (wj, &v) in rhs.words.iter().enumerate() {
                    words[wi + wj] ^= v << shift;
                    if shift != 0 {
                        words[wi + wj + 1] ^= v >> (WORD_BITS - shift);
                    }
                }
            }
        }
        let mut p = Poly2 { words };
        p.normalize();
        p
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_coeff_string())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({})", self.to_coeff_string())
    }
}

#[cfg(test)]
pub(crate) fn random_poly(max_degree: usize, rng: &mut impl rand::RngCore) -> Poly2 {
    let coeffs: Vec<bool> = (0..=max_degree).map(|_| rng.next_u64() & 1 == 1).collect();
    Poly2::from_bool_coefficients(&coeffs)
}
