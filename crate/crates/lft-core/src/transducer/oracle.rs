//! Definition-checked oracles: brute-force injectivity by word enumeration
//! and transducer equivalence by truncated free-response signatures. Both
//! are guarded; they exist to cross-validate the algebraic routes at small
//! sizes, not to be fast.

use super::Lft;
use crate::error::{Error, Result};
use std::collections::HashSet;

/// Enumeration budget for the brute-force injectivity oracle, as a power of
/// two of the number of input words.
const ORACLE_GUARD_LOG2: u32 = 24;

/// State/word budget for the fully-definitional all-states oracle.
const ALL_STATES_GUARD_LOG2: u32 = 22;

/// Combined state-dimension budget for the equivalence check.
const EQUIVALENCE_GUARD: usize = 20;

/// Row-mask representation for fast repeated stepping; valid only while
/// every dimension fits in a machine word.
pub(crate) struct PackedLft {
    a: Vec<u64>,
    b: Vec<u64>,
    c: Vec<u64>,
    d: Vec<u64>,
}

impl PackedLft {
    pub(crate) fn new(t: &Lft) -> Self {
        assert!(
            t.size() <= 64 && t.input_dim() <= 64 && t.output_dim() <= 64,
            "packed evaluation needs dimensions within one machine word"
        );
        let pack = |m: &crate::gf2::BitMatrix| -> Vec<u64> {
            (0..m.rows())
                .map(|r| (0..m.cols()).fold(0u64, |acc, c| acc | (u64::from(m.get(r, c)) << c)))
                .collect()
        };
        PackedLft {
            a: pack(t.a()),
            b: pack(t.b()),
            c: pack(t.c()),
            d: pack(t.d()),
        }
    }

    #[inline]
    fn next_state(&self, s: u64, x: u64) -> u64 {
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .fold(0u64, |acc, (i, (ra, rb))| {
                acc | (parity(ra & s) ^ parity(rb & x)) << i
            })
    }

    #[inline]
    fn output(&self, s: u64, x: u64) -> u64 {
        self.c
            .iter()
            .zip(&self.d)
            .enumerate()
            .fold(0u64, |acc, (i, (rc, rd))| {
                acc | (parity(rc & s) ^ parity(rd & x)) << i
            })
    }

    /// Free-response output at the current state (zero input).
    #[inline]
    fn free_output(&self, s: u64) -> u64 {
        self.c
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, rc)| acc | parity(rc & s) << i)
    }

    #[inline]
    fn free_step(&self, s: u64) -> u64 {
        self.a
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, ra)| acc | parity(ra & s) << i)
    }
}

#[inline]
fn parity(x: u64) -> u64 {
    u64::from(x.count_ones() & 1 == 1)
}

impl Lft {
    /// Brute-force check of injectivity with delay `tau`, straight from the
    /// definition. By linearity it suffices to start at the zero state: the
    /// transducer fails exactly when some input word of length `tau + 1`
    /// with a nonzero first symbol produces all-zero output.
    pub fn brute_force_injective(&self, tau: usize) -> Result<bool> {
        let l = self.input_dim();
        let word_bits = l
            .checked_mul(tau + 1)
            .filter(|&bits| bits <= ORACLE_GUARD_LOG2 as usize)
            .ok_or(Error::GuardExceeded {
                required_log2: (l * (tau + 1)).min(u32::MAX as usize) as u32,
                guard_log2: ORACLE_GUARD_LOG2,
            })?;
        let packed = PackedLft::new(self);
        let first_mask = (1u64 << l) - 1;
        let tail_words = 1u64 << (word_bits - l);
        for first in 1..=first_mask {
            for tail in 0..tail_words {
                let word = first | (tail << l);
                let mut state = 0u64;
                let mut all_zero = true;
                for step in 0..=tau {
                    let x = (word >> (step * l)) & first_mask;
                    if packed.output(state, x) != 0 {
                        all_zero = false;
                        break;
                    }
                    state = packed.next_state(state, x);
                }
                if all_zero {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The fully-definitional variant: enumerates every state and every pair
    /// of input words, with no appeal to linearity. Only feasible at tiny
    /// sizes; kept as a check on the linearity argument itself.
    pub fn brute_force_injective_all_states(&self, tau: usize) -> Result<bool> {
        let l = self.input_dim();
        let n = self.size();
        let word_bits = l * (tau + 1);
        let required = n + 2 * word_bits;
        if required > ALL_STATES_GUARD_LOG2 as usize || self.output_dim() * (tau + 1) > 64 {
            return Err(Error::GuardExceeded {
                required_log2: required as u32,
                guard_log2: ALL_STATES_GUARD_LOG2,
            });
        }
        let packed = PackedLft::new(self);
        let first_mask = (1u64 << l) - 1;
        let word_count = 1u64 << word_bits;
        for s0 in 0..(1u64 << n) {
            // Packed output word per input word.
            let outputs: Vec<u64> = (0..word_count)
                .map(|word| {
                    let mut state = s0;
                    let mut out = 0u64;
                    for step in 0..=tau {
                        let x = (word >> (step * l)) & first_mask;
                        out |= packed.output(state, x) << (step * self.output_dim());
                        state = packed.next_state(state, x);
                    }
                    out
                })
                .collect();
            for w1 in 0..word_count {
                for w2 in w1 + 1..word_count {
                    if outputs[w1 as usize] == outputs[w2 as usize]
                        && (w1 & first_mask) != (w2 & first_mask)
                    {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Behavioral equivalence of two transducers: every state of one has an
    /// equivalent state in the other and vice versa.
    ///
    /// Transducers with different input or output dimensions are never
    /// equivalent. Otherwise two states are equivalent exactly when their
    /// truncated free responses `C A^k s` agree for `k < n1 + n2` and the
    /// forced responses (D and the impulse blocks `C A^k B`) coincide to the
    /// same depth; both truncations are justified by the linear-recurrence
    /// dimension bound, validated exhaustively at small sizes.
    pub fn equivalent_to(&self, other: &Lft) -> Result<bool> {
        if self.input_dim() != other.input_dim() || self.output_dim() != other.output_dim() {
            return Ok(false);
        }
        let (n1, n2) = (self.size(), other.size());
        if n1 + n2 > EQUIVALENCE_GUARD {
            return Err(Error::GuardExceeded {
                required_log2: (n1 + n2) as u32,
                guard_log2: EQUIVALENCE_GUARD as u32,
            });
        }
        let depth = n1 + n2;

        // Forced responses must agree, otherwise no two states can be
        // equivalent (feed a word that differs only in its input part).
        if self.d() != other.d() {
            return Ok(false);
        }
        let mut lhs_block = self.c().clone();
        let mut rhs_block = other.c().clone();
        for _ in 0..depth {
            if lhs_block.multiply(self.b()) != rhs_block.multiply(other.b()) {
                return Ok(false);
            }
            lhs_block = lhs_block.multiply(self.a());
            rhs_block = rhs_block.multiply(other.a());
        }

        Ok(free_signatures(self, depth) == free_signatures(other, depth))
    }
}

/// The set of truncated free-response signatures over all states.
fn free_signatures(t: &Lft, depth: usize) -> HashSet<Vec<u64>> {
    let packed = PackedLft::new(t);
    (0..(1u64 << t.size()))
        .map(|s0| {
            let mut s = s0;
            (0..depth)
                .map(|_| {
                    let y = packed.free_output(s);
                    s = packed.free_step(s);
                    y
                })
                .collect::<Vec<u64>>()
        })
        .collect()
}
