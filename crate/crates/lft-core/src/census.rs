//! Exact big-integer counting of transducers with structural parameters
//! (l, m, n) over a q-element field: totals, trivial ones, canonical ones,
//! and equivalence-class sizes.
//!
//! The counting formulas are parametric in q even though the matrix algebra
//! elsewhere in this crate is GF(2)-only; cross-module flows fix q = 2.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;

/// Structural parameters plus the field size for the counting formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountParams {
    pub l: u64,
    pub m: u64,
    pub n: u64,
    pub q: u64,
}

impl CountParams {
    /// Parameters over GF(2).
    pub fn new(l: u64, m: u64, n: u64) -> Self {
        CountParams { l, m, n, q: 2 }
    }

    pub fn with_q(l: u64, m: u64, n: u64, q: u64) -> Result<Self> {
        if l < 1 || m < 1 || n < 1 {
            return Err(Error::InvalidParameter(
                "structural parameters must be at least 1".into(),
            ));
        }
        if q < 2 {
            return Err(Error::InvalidParameter("field size must be at least 2".into()));
        }
        Ok(CountParams { l, m, n, q })
    }
}

fn q_pow(q: u64, exp: u64) -> BigUint {
    BigUint::from(q).pow(u32::try_from(exp).expect("exponent fits in u32"))
}

/// Total number of transducers: q^(ml + n(l + m + n)).
pub fn total_lft_count(p: &CountParams) -> BigUint {
    q_pow(p.q, p.m * p.l + p.n * (p.l + p.m + p.n))
}

/// Number of trivial transducers (C = 0): q^(n^2 + l(m + n)).
pub fn trivial_lft_count(p: &CountParams) -> BigUint {
    q_pow(p.q, p.n * p.n + p.l * (p.m + p.n))
}

/// Size of the equivalence class of a canonical size-n transducer among
/// size-n transducers: prod_{i<n} (q^n - q^i).
pub fn canonical_class_size(n: u64, q: u64) -> BigUint {
    let qn = q_pow(q, n);
    (0..n).fold(BigUint::from(1u32), |acc, i| acc * (&qn - q_pow(q, i)))
}

/// The three closed forms bundled: total, trivial, canonical class size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormCounts {
    pub lt: BigUint,
    pub tt: BigUint,
    pub ec: BigUint,
}

pub fn closed_form_counts(p: &CountParams) -> ClosedFormCounts {
    ClosedFormCounts {
        lt: total_lft_count(p),
        tt: trivial_lft_count(p),
        ec: canonical_class_size(p.n, p.q),
    }
}

/// Number of size-n transducers equivalent to a fixed minimal transducer of
/// size n1 <= n: prod_{j<n1} (q^n - q^j) * q^((n+l)(n-n1)).
pub fn equivalents_of_minimal(l: u64, minimal_size: u64, size: u64, q: u64) -> Result<BigUint> {
    if size < minimal_size || minimal_size < 1 {
        return Err(Error::InvalidParameter(format!(
            "need size >= minimal_size >= 1, got size {size} and minimal size {minimal_size}"
        )));
    }
    let qn = q_pow(q, size);
    let product = (0..minimal_size).fold(BigUint::from(1u32), |acc, j| acc * (&qn - q_pow(q, j)));
    Ok(product * q_pow(q, (size + l) * (size - minimal_size)))
}

/// Canonical counts for sizes 1..=max_n, computed bottom-up so every smaller
/// value is reused instead of re-derived exponentially many times.
///
/// For size 1 every non-trivial transducer is canonical, giving the closed
/// base (q^m - 1) q^(l(m+1)+1). Above that the non-trivial transducers split
/// into classes of canonical transducers of some size i <= n, so
/// `EC(n) * CT(n) = LT - TT - sum_{i<n} CT(i) * NM(l, i, n)`.
///
/// # Panics
///
/// Panics if the recurrence's division by the class size is not exact,
/// which would indicate an implementation bug.
pub fn canonical_counts_up_to(l: u64, m: u64, max_n: u64, q: u64) -> Vec<BigUint> {
    let mut counts: Vec<BigUint> = Vec::with_capacity(max_n as usize);
    for n in 1..=max_n {
        let value = if n == 1 {
            (q_pow(q, m) - BigUint::from(1u32)) * q_pow(q, l * (m + 1) + 1)
        } else {
            let p = CountParams { l, m, n, q };
            let lt = total_lft_count(&p);
            let tt = trivial_lft_count(&p);
            let tnm: BigUint = (1..n)
                .map(|i| {
                    &counts[(i - 1) as usize]
                        * equivalents_of_minimal(l, i, n, q).expect("i < n")
                })
                .sum();
            let (quotient, remainder) =
                (lt - tt - tnm).div_rem(&canonical_class_size(n, q));
            assert!(
                remainder == BigUint::default(),
                "canonical-count recurrence: division by the class size left a remainder \
                 (implementation bug) at l={l} m={m} n={n} q={q}"
            );
            quotient
        };
        counts.push(value);
    }
    counts
}

/// Number of canonical transducers with the given parameters.
pub fn canonical_lft_count(p: &CountParams) -> BigUint {
    canonical_counts_up_to(p.l, p.m, p.n, p.q)
        .pop()
        .expect("n >= 1")
}

/// Number of equivalence classes containing a transducer of size at most
/// `max_n`: the sum of the canonical counts, plus one class per feedthrough
/// matrix (q^(lm) trivial classes) when `include_trivial` is set.
pub fn total_class_count(l: u64, m: u64, max_n: u64, q: u64, include_trivial: bool) -> BigUint {
    let mut total: BigUint = canonical_counts_up_to(l, m, max_n, q).into_iter().sum();
    if include_trivial {
        total += q_pow(q, l * m);
    }
    total
}
