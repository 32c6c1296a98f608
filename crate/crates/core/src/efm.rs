//! Iterated transform-and-twist reduction of a moduli problem `(r, -d, t)`.
//!
//! Each step applies the charge quarter-turn, sending `(r, -d)` to `(d, r)`,
//! then twists by a fiber-degree-1 line bundle to renormalize the fiber
//! degree to `-s` with `-s ≡ r (mod d)` and `0 <= s < d`. The half-dimension
//! `t` never changes, ranks strictly decrease, and the reduction terminates
//! at the Hilbert-scheme state `(1, 0, t)`. The per-step quotients are
//! exactly the ceiling continued-fraction digits of `r/d`.

use serde::Serialize;

use crate::cf;
use crate::error::{Error, Result};
use crate::fm::UniModMatrix;
use crate::lattice::ModuliNumerics;

/// A state of the reduction; the same data as a moduli problem.
pub type EfmState = ModuliNumerics;

/// One reduction step: the transform's charge matrix, whether the underlying
/// functor carries a shift, and the exponent of the renormalizing twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EfmStep {
    pub fm_matrix: UniModMatrix,
    pub shift_applied: bool,
    pub twist_exponent: i64,
}

/// The full reduction trace: `states.len() == steps.len() + 1`, consecutive
/// states related by one step, last state terminal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfmTrace {
    pub states: Vec<EfmState>,
    pub steps: Vec<EfmStep>,
}

impl EfmTrace {
    pub fn start(&self) -> &EfmState {
        &self.states[0]
    }

    pub fn terminal(&self) -> &EfmState {
        self.states.last().expect("a trace has at least one state")
    }

    /// The ceiling quotients `⌈rᵢ/dᵢ⌉` realized by the steps.
    pub fn quotients(&self) -> Vec<i64> {
        self.steps.iter().map(|s| -s.twist_exponent).collect()
    }

    /// Compose the per-step charge matrices and twists into the total
    /// unimodular matrix sending the start column `(r, -d)ᵗ` to `(1, 0)ᵗ`.
    pub fn total_matrix(&self) -> UniModMatrix {
        self.steps.iter().fold(UniModMatrix::identity(), |acc, s| {
            UniModMatrix::twist(s.twist_exponent) * s.fm_matrix * acc
        })
    }
}

/// One elementary step on the pair: `(r, -d) ↦ (d, -s)` with
/// `s = ⌈r/d⌉·d - r`, together with the twist exponent `k = -⌈r/d⌉`
/// satisfying `r + k·d = -s`.
pub fn efm_step(r: i64, d: i64) -> Result<((i64, i64), i64)> {
    if d <= 0 || d >= r {
        return Err(Error::OutOfRange {
            name: "d",
            detail: format!("need 0 < d < r, got r={r}, d={d}"),
        });
    }
    if num_integer::gcd(r, d) != 1 {
        return Err(Error::NotCoprime { a: r, b: d });
    }
    let q = (r + d - 1) / d;
    let s = q * d - r;
    debug_assert!((0..d.max(1)).contains(&s));
    debug_assert_eq!(num_integer::gcd(d, s), 1);
    Ok(((d, s), -q))
}

/// Run the reduction from `(r, -d, t)` down to `(1, 0, t)`, recording every
/// state and step.
pub fn efm_trace(r: i64, d: i64, t: i64) -> Result<EfmTrace> {
    let start = ModuliNumerics::new(r, d, t)?;
    let mut states = vec![start];
    let mut steps = Vec::new();
    let (mut r, mut d) = (r, d);
    while d > 0 {
        let ((nr, nd), k) = efm_step(r, d)?;
        steps.push(EfmStep {
            fm_matrix: UniModMatrix::psi(),
            shift_applied: true,
            twist_exponent: k,
        });
        states.push(ModuliNumerics::new(nr, nd, t)?);
        (r, d) = (nr, nd);
    }
    debug_assert!(states.last().unwrap().is_terminal());
    Ok(EfmTrace { states, steps })
}

/// The rank `l` of the penultimate trace state: the last step has the form
/// `(l, -1) ↦ (1, 0)` with `l >= 2`.
pub fn efm_l(r: i64, d: i64) -> Result<i64> {
    let trace = efm_trace(r, d, 0)?;
    let n = trace.states.len();
    debug_assert!(n >= 2, "0 < d < r guarantees at least one step");
    Ok(trace.states[n - 2].r())
}

/// The unique `0 < a < r` with `d·a ≡ 1 (mod r)`, the cofactor entering the
/// `t < r/a` isomorphism bound. This is the same number as the Bézout `b`
/// of the continued-fraction side; only the traditional letter differs.
pub fn bridgeland_a(r: i64, d: i64) -> Result<i64> {
    Ok(cf::bezout(r, d)?.b)
}

/// Side-by-side comparison of the two isomorphism bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundEquivalence {
    pub l: i64,
    pub ceil_r_over_a: i64,
    pub equal: bool,
}

/// Compute `l` from the trace and `⌈r/a⌉` from the Bézout cofactor; the two
/// agree for every valid input, and this operation exists so the identity
/// can be machine-checked exhaustively.
pub fn hilb_bound_equivalence(r: i64, d: i64) -> Result<BoundEquivalence> {
    let l = efm_l(r, d)?;
    let a = bridgeland_a(r, d)?;
    let ceil_r_over_a = (r + a - 1) / a;
    Ok(BoundEquivalence { l, ceil_r_over_a, equal: l == ceil_r_over_a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_examples() {
        assert_eq!(efm_step(5, 2).unwrap(), ((2, 1), -3));
        assert_eq!(efm_step(2, 1).unwrap(), ((1, 0), -2));
        assert_eq!(efm_step(7, 3).unwrap(), ((3, 2), -3));
    }

    #[test]
    fn step_rejects_bad_input() {
        assert_eq!(efm_step(6, 4).unwrap_err(), Error::NotCoprime { a: 6, b: 4 });
        assert!(matches!(efm_step(3, 0), Err(Error::OutOfRange { .. })));
        assert!(matches!(efm_step(3, 3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn step_twist_exponent_renormalizes() {
        // r + k*d = -s at every step.
        for r in 2..80 {
            for d in 1..r {
                if num_integer::gcd(r, d) != 1 {
                    continue;
                }
                let ((_, s), k) = efm_step(r, d).unwrap();
                assert_eq!(r + k * d, -s);
            }
        }
    }

    #[test]
    fn trace_examples() {
        let tr = efm_trace(5, 2, 9).unwrap();
        let pairs: Vec<_> = tr.states.iter().map(|s| (s.r(), s.d())).collect();
        assert_eq!(pairs, [(5, 2), (2, 1), (1, 0)]);
        assert_eq!(tr.steps.len(), 2);

        let tr = efm_trace(7, 3, 0).unwrap();
        let pairs: Vec<_> = tr.states.iter().map(|s| (s.r(), s.d())).collect();
        assert_eq!(pairs, [(7, 3), (3, 2), (2, 1), (1, 0)]);

        let tr = efm_trace(2, 1, 4).unwrap();
        assert_eq!(tr.steps.len(), 1);
    }

    #[test]
    fn trace_preserves_t_and_decreases_rank() {
        let tr = efm_trace(89, 55, 13).unwrap();
        assert!(tr.states.iter().all(|s| s.t() == 13));
        assert!(tr.states.windows(2).all(|w| w[0].r() > w[1].r()));
        assert!(tr.terminal().is_terminal());
    }

    #[test]
    fn trace_step_count_matches_cf_length() {
        for r in 2..=80 {
            for d in 1..r {
                if num_integer::gcd(r, d) != 1 {
                    continue;
                }
                let tr = efm_trace(r, d, 0).unwrap();
                let digits = cf::cf_expand(r, d).unwrap();
                assert_eq!(tr.steps.len(), digits.len());
                assert_eq!(tr.quotients(), digits.digits());
            }
        }
    }

    #[test]
    fn composed_matrix_sends_start_to_terminal() {
        for r in 2..=100 {
            for d in 1..r {
                if num_integer::gcd(r, d) != 1 {
                    continue;
                }
                let tr = efm_trace(r, d, 0).unwrap();
                assert_eq!(tr.total_matrix().apply((r, -d)), (1, 0));
            }
        }
    }

    #[test]
    fn l_examples() {
        assert_eq!(efm_l(5, 2).unwrap(), 2);
        assert_eq!(efm_l(3, 1).unwrap(), 3);
        assert_eq!(efm_l(7, 3).unwrap(), 2);
    }

    #[test]
    fn bridgeland_a_examples() {
        assert_eq!(bridgeland_a(5, 2).unwrap(), 3);
        assert_eq!(bridgeland_a(7, 3).unwrap(), 5);
        assert_eq!(bridgeland_a(9, 1).unwrap(), 1);
    }

    #[test]
    fn bound_equivalence_examples() {
        let b = hilb_bound_equivalence(5, 2).unwrap();
        assert_eq!((b.l, b.ceil_r_over_a, b.equal), (2, 2, true));
        let b = hilb_bound_equivalence(3, 1).unwrap();
        assert_eq!((b.l, b.ceil_r_over_a, b.equal), (3, 3, true));
    }
}
