//! Exact exhaustive census of equivalence classes at desk scale: the oracle
//! the sampling estimator is checked against.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::transducer::Lft;
use serde::Serialize;

/// Default enumeration budget: 2^26 transducers takes seconds to minutes.
pub const DEFAULT_CENSUS_GUARD_LOG2: u32 = 26;

/// Injective-class counts at one delay.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TauCensus {
    pub tau: usize,
    /// Classes with a canonical representative (of any size up to n).
    pub canonical: u64,
    /// Trivial classes, one per full-column-rank feedthrough matrix.
    pub trivial: u64,
    pub total: u64,
}

/// Exact class census for parameters (l, m, n).
///
/// Every non-trivial class of size-n transducers contains exactly one
/// canonical transducer of some size i <= n, so enumerating the canonical
/// transducers of all sizes up to n visits each such class once. Trivial
/// classes are grouped by their feedthrough matrix. Injectivity is a class
/// property, evaluated on the representative.
#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub l: usize,
    pub m: usize,
    pub n: usize,
    /// Transducers enumerated across all sizes 1..=n.
    pub enumerated: u64,
    /// Canonical transducers found at each size, index size-1.
    pub canonical_by_size: Vec<u64>,
    pub nontrivial_classes: u64,
    pub trivial_classes: u64,
    pub total_classes: u64,
    pub injective: Vec<TauCensus>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn enumeration_bits(l: usize, m: usize, n: usize) -> usize {
    m * l + n * (l + m + n)
}

/// Decodes a transducer from a bit counter; bits are consumed LSB first in
/// the order A, B, C, D, each row-major.
pub(crate) fn decode_lft(l: usize, m: usize, n: usize, mut code: u64) -> Lft {
    let mut take = |rows: usize, cols: usize| {
        BitMatrix::from_fn(rows, cols, |_, _| {
            let bit = code & 1 == 1;
            code >>= 1;
            bit
        })
    };
    let a = take(n, n);
    let b = take(n, l);
    let c = take(m, n);
    let d = take(m, l);
    Lft::new(a, b, c, d).expect("shapes are consistent by construction")
}

/// Enumerates every transducer of every size up to n, counts classes, and
/// counts exactly how many classes are injective at each requested delay.
///
/// Refuses instances whose enumeration exceeds `2^guard_log2`, reporting the
/// required size.
pub fn exhaustive_census(
    l: usize,
    m: usize,
    n: usize,
    taus: &[usize],
    guard_log2: u32,
) -> Result<CensusReport> {
    assert!(l >= 1 && m >= 1 && n >= 1, "dimensions must be positive");
    let bits = enumeration_bits(l, m, n);
    if bits > guard_log2 as usize || bits >= 63 {
        return Err(Error::GuardExceeded {
            required_log2: bits as u32,
            guard_log2,
        });
    }

    // Trivial classes: one per feedthrough matrix; such a class is injective
    // (at every delay) exactly when the matrix has full column rank.
    let trivial_classes = 1u64 << (l * m);
    let mut injective_trivial = 0u64;
    for code in 0..trivial_classes {
        let mut bits = code;
        let d = BitMatrix::from_fn(m, l, |_, _| {
            let bit = bits & 1 == 1;
            bits >>= 1;
            bit
        });
        if d.rank() == l {
            injective_trivial += 1;
        }
    }

    let mut canonical_by_size = Vec::with_capacity(n);
    let mut injective_canonical = vec![0u64; taus.len()];
    let mut enumerated = 0u64;
    for size in 1..=n {
        let mut canonical_here = 0u64;
        let total = 1u64 << enumeration_bits(l, m, size);
        enumerated += total;
        for code in 0..total {
            let t = decode_lft(l, m, size, code);
            if !t.is_canonical() {
                continue;
            }
            canonical_here += 1;
            if taus.is_empty() {
                continue;
            }
            // One Smith normal form per class; each delay reads off the
            // valuations.
            match t.min_injectivity_delay() {
                None => {}
                Some(min_delay) => {
                    for (slot, &tau) in injective_canonical.iter_mut().zip(taus) {
                        if min_delay <= tau {
                            *slot += 1;
                        }
                    }
                }
            }
        }
        canonical_by_size.push(canonical_here);
    }

    let nontrivial_classes: u64 = canonical_by_size.iter().sum();
    let injective = taus
        .iter()
        .zip(&injective_canonical)
        .map(|(&tau, &canonical)| TauCensus {
            tau,
            canonical,
            trivial: injective_trivial,
            total: canonical + injective_trivial,
        })
        .collect();

    Ok(CensusReport {
        l,
        m,
        n,
        enumerated,
        canonical_by_size,
        nontrivial_classes,
        trivial_classes,
        total_classes: nontrivial_classes + trivial_classes,
        injective,
    })
}
