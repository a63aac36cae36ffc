use super::{Poly2, PolyMatrix};

/// Smith normal form `u * original * v = diag(factors, 0, ..., 0)` with
/// unimodular multipliers and the invariant factors in divisibility order.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    factors: Vec<Poly2>,
}

impl SmithDecomposition {
    /// The nonzero invariant factors, each dividing the next.
    pub fn factors(&self) -> &[Poly2] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `diag(factors)` padded to the original shape, for identity checks.
    pub fn diagonal(&self, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::diagonal(rows, cols, &self.factors)
    }
}

/// Diagonalizes over the Euclidean domain GF(2)[z] by repeated elimination.
///
/// The pivot is always a minimal-degree nonzero entry of the active
/// submatrix. Division with remainder clears its row and column; whenever a
/// remainder survives it becomes the new, strictly smaller pivot, and when
/// the pivot fails to divide some remaining entry that entry's row is folded
/// in and the reduction repeats. Every elementary operation is mirrored on
/// `u` or `v`, so correctness is checked against the defining identity
/// rather than trusted by construction.
pub fn smith_normal_form(a: &PolyMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut u = PolyMatrix::identity(rows);
    let mut v = PolyMatrix::identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = min_degree_entry(&m, k) else {
            break; // active submatrix is zero
        };
        m.swap_rows(k, pi);
        u.swap_rows(k, pi);
        m.swap_cols(k, pj);
        v.swap_cols(k, pj);

        'reduce: loop {
            // Clear column k below the pivot.
            let mut remainder_left = false;
            for i in k + 1..rows {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let (q, r) = m.at(i, k).div_rem(m.at(k, k));
                m.row_axpy(i, k, &q);
                u.row_axpy(i, k, &q);
                if !r.is_zero() {
                    remainder_left = true;
                }
            }
            if remainder_left {
                repivot(&mut m, &mut u, &mut v, k);
                continue 'reduce;
            }
            // Clear row k right of the pivot.
            for j in k + 1..cols {
                if m.at(k, j).is_zero() {
                    continue;
                }
                let (q, r) = m.at(k, j).div_rem(m.at(k, k));
                m.col_axpy(j, k, &q);
                v.col_axpy(j, k, &q);
                if !r.is_zero() {
                    remainder_left = true;
                }
            }
            if remainder_left {
                repivot(&mut m, &mut u, &mut v, k);
                continue 'reduce;
            }
            // Divisibility sweep: fold in any row holding an entry the pivot
            // does not divide, then reduce again with a smaller pivot.
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !m.at(k, k).divides(m.at(i, j)) {
                        m.row_axpy(k, i, &Poly2::one());
                        u.row_axpy(k, i, &Poly2::one());
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        k += 1;
    }

    let factors: Vec<Poly2> = (0..k).map(|i| m.at(i, i).clone()).collect();
    debug_assert!(factors.iter().all(|f| !f.is_zero()));
    SmithDecomposition { u, v, factors }
}

/// Moves a minimal-degree nonzero entry of the active submatrix to (k, k).
fn repivot(m: &mut PolyMatrix, u: &mut PolyMatrix, v: &mut PolyMatrix, k: usize) {
    let (pi, pj) = min_degree_entry(m, k).expect("active submatrix went zero mid-reduction");
    m.swap_rows(k, pi);
    u.swap_rows(k, pi);
    m.swap_cols(k, pj);
    v.swap_cols(k, pj);
}

fn min_degree_entry(m: &PolyMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            if let Some(d) = m.at(i, j).degree() {
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Multiplicity profile of the z-power invariant factors of a transfer
/// matrix over the localization, clipped at `z^cap`.
///
/// Index `i` counts invariant factors of z-valuation exactly `i`; factors
/// whose valuation reaches the cap are reported as saturated instead, so a
/// caller testing delay `tau` with `cap = tau + 1` reads the answer off
/// `count_valuation_at_most(tau)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactorProfile {
    multiplicities: Vec<usize>,
    saturated: usize,
    cap: usize,
}

impl InvariantFactorProfile {
    /// Counts of valuations 0, 1, ... below the cap, trimmed so the last
    /// entry is nonzero.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of factors whose valuation was clipped at the cap.
    pub fn saturated(&self) -> usize {
        self.saturated
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Total number of invariant factors, saturated ones included.
    pub fn rank(&self) -> usize {
        self.multiplicities.iter().sum::<usize>() + self.saturated
    }

    /// Number of invariant factors with z-valuation at most `tau`.
    ///
    /// # Panics
    ///
    /// Panics if `tau >= cap`: valuations at or above the cap were clipped,
    /// so the count is only known below it.
    pub fn count_valuation_at_most(&self, tau: usize) -> usize {
        assert!(tau < self.cap, "profile was clipped at {}", self.cap);
        self.multiplicities.iter().take(tau + 1).sum()
    }
}

/// Replaces each invariant factor `d` by `gcd(d, z^cap)`, i.e. by
/// `z^min(val(d), cap)`, and tallies the resulting powers of z. Factors
/// clipped at the cap are counted as saturated.
///
/// # Panics
///
/// Panics if `cap` is zero or any factor is zero; invariant factors of a
/// Smith decomposition are nonzero by construction.
pub fn localize_invariant_factors(factors: &[Poly2], cap: usize) -> InvariantFactorProfile {
    assert!(cap >= 1, "cap must be at least 1");
    let mut multiplicities = vec![0usize; cap];
    let mut saturated = 0;
    for f in factors {
        let val = f.z_valuation().expect("invariant factors are nonzero");
        if val >= cap {
            saturated += 1;
        } else {
            multiplicities[val] += 1;
        }
    }
    while multiplicities.last() == Some(&0) {
        multiplicities.pop();
    }
    InvariantFactorProfile {
        multiplicities,
        saturated,
        cap,
    }
}
