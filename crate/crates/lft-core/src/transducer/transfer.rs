//! Transfer-function matrix, injectivity with delay, and left inverses.
//!
//! The transfer matrix H(z) = (C adj(I - Az) B z + det(I - Az) D) / det(I - Az)
//! lives over the localization of GF(2)[z] at denominators with constant
//! term 1. z is the only irreducible there up to units, so the invariant
//! factors of H are powers of z, and the transducer is injective with delay
//! tau exactly when l of them have z-valuation at most tau.

use super::Lft;
use crate::error::{Error, Result};
use crate::poly::{
    localize_invariant_factors, smith_normal_form, FracMatrix, InvariantFactorProfile, LocalFrac,
    Poly2, PolyMatrix,
};

impl Lft {
    /// The polynomial numerator of the transfer matrix together with the
    /// denominator: returns `(f H, f)` with `f = det(I - Az)`, so
    /// `f H = C adj(I - Az) B z + f D` exactly. `f` always has constant
    /// term 1 and hence is a unit of the localization.
    ///
    /// Computed through the power-series identity
    /// `adj(I - Az) = sum_t z^t sum_{j<=t} f_j A^(t-j)` (degree < n), which
    /// needs one determinant and n bit-matrix products instead of n^2
    /// polynomial cofactors; equality with the adjugate formula is pinned by
    /// tests.
    pub fn transfer_numerator(&self) -> (PolyMatrix, Poly2) {
        let n = self.size();
        let (l, m) = (self.input_dim(), self.output_dim());

        let resolvent = PolyMatrix::from_fn(n, n, |i, j| {
            let mut coeffs = [false, false];
            coeffs[0] = i == j;
            coeffs[1] = self.a().get(i, j);
            Poly2::from_bool_coefficients(&coeffs)
        });
        let f = resolvent.det();
        debug_assert!(f.constant_term(), "det(I - Az) has constant term det(I) = 1");

        // C A^k B for k = 0..n-1.
        let mut impulse = Vec::with_capacity(n);
        let mut c_ak = self.c().clone();
        for k in 0..n {
            if k > 0 {
                c_ak = c_ak.multiply(self.a());
            }
            impulse.push(c_ak.multiply(self.b()));
        }

        let fh = PolyMatrix::from_fn(m, l, |r, c| {
            let mut coeffs = vec![false; n + 2];
            if self.d().get(r, c) {
                for (j, coeff) in coeffs.iter_mut().enumerate() {
                    *coeff ^= f.coeff(j);
                }
            }
            for (t, coeff) in coeffs.iter_mut().skip(1).take(n).enumerate() {
                let mut bit = false;
                for j in 0..=t {
                    bit ^= f.coeff(j) && impulse[t - j].get(r, c);
                }
                *coeff ^= bit;
            }
            Poly2::from_bool_coefficients(&coeffs)
        });
        (fh, f)
    }

    /// The transfer matrix itself, as fractions over the localization.
    pub fn transfer_matrix(&self) -> FracMatrix {
        let (fh, f) = self.transfer_numerator();
        FracMatrix::from_poly_matrix_over(&fh, &f).expect("f is a unit of the localization")
    }

    /// Invariant-factor z-power profile of the transfer matrix, clipped at
    /// `z^cap`. Because `f` is a unit of the localization, the invariant
    /// factors of H there are those of `f H` reduced to powers of z, which
    /// is exactly what clipping by `gcd(. , z^cap)` computes.
    ///
    /// # Panics
    ///
    /// Panics if `cap` is zero.
    pub fn h_invariant_profile(&self, cap: usize) -> InvariantFactorProfile {
        let (fh, _) = self.transfer_numerator();
        localize_invariant_factors(smith_normal_form(&fh).factors(), cap)
    }

    /// Injectivity with delay `tau`: the first input symbol is determined by
    /// the state and the first `tau + 1` output symbols. Holds exactly when
    /// the number of invariant factors of H with z-valuation at most `tau`
    /// equals the input dimension.
    pub fn is_injective_with_delay(&self, tau: usize) -> bool {
        let profile = self.h_invariant_profile(tau + 1);
        profile.count_valuation_at_most(tau) == self.input_dim()
    }

    /// Smallest delay at which the transducer is injective, or `None` when
    /// it is not injective at any delay. `is_some()` is exactly
    /// omega-injectivity: an infinite output determines the infinite input.
    pub fn min_injectivity_delay(&self) -> Option<usize> {
        let (fh, _) = self.transfer_numerator();
        let decomposition = smith_normal_form(&fh);
        if decomposition.rank() < self.input_dim() {
            return None;
        }
        // Valuations are nondecreasing along the divisibility chain, so the
        // last factor carries the largest one: the smallest passing delay.
        let top = decomposition.factors().last().expect("input_dim >= 1");
        Some(top.z_valuation().expect("factors are nonzero"))
    }

    /// A left inverse of the transfer matrix at delay `tau`: returns H' with
    /// `H' H = z^tau I` exactly over the localization.
    ///
    /// From `u (f H) v = diag(d_1, ..., d_l)` with `d_i = z^(k_i) w_i`
    /// (`w_i` of constant term 1), the matrix `f v D+ u` works, where `D+`
    /// is the l x m diagonal with entries `z^(tau - k_i) / w_i`, so that
    /// `D+_{ii} d_i = z^tau`.
    pub fn left_inverse_transfer(&self, tau: usize) -> Result<FracMatrix> {
        let (l, m) = (self.input_dim(), self.output_dim());
        let (fh, f) = self.transfer_numerator();
        let decomposition = smith_normal_form(&fh);

        let valuations: Vec<usize> = decomposition
            .factors()
            .iter()
            .map(|d| d.z_valuation().expect("factors are nonzero"))
            .collect();
        if decomposition.rank() < l || valuations.iter().any(|&k| k > tau) {
            return Err(Error::NotInjectiveAtDelay { tau });
        }

        let pseudo_diag: Vec<LocalFrac> = decomposition
            .factors()
            .iter()
            .zip(&valuations)
            .map(|(d, &k)| {
                let unit_part = d.exact_div(&Poly2::monomial(k));
                LocalFrac::new(Poly2::monomial(tau - k), unit_part)
                    .expect("unit part has constant term 1")
            })
            .collect();

        let v = FracMatrix::from_poly_matrix(&decomposition.v);
        let u = FracMatrix::from_poly_matrix(&decomposition.u);
        let pseudo_inverse = FracMatrix::diagonal(l, m, &pseudo_diag);
        Ok(v
            .multiply(&pseudo_inverse)
            .multiply(&u)
            .scale(&LocalFrac::from_poly(f)))
    }
}
