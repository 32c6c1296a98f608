//! Verdict machine for the birational correspondence between the moduli
//! space of charge `(r, -d, t)` and its transform.
//!
//! The regimes, in terms of the half-dimension `t`:
//!
//! * `t < r`: the correspondence is an isomorphism;
//! * `r <= t < r + d`: a Mukai flop exchanging dual projective bundles,
//!   which degenerates to an isomorphism exactly when `t = r = 2`;
//! * `t >= r + d`: the indeterminacy locus grows beyond the flop
//!   description; for `r > 2` an isomorphism is excluded, for `r = 2` the
//!   question is open except for the flagged conjectural case.
//!
//! Independently of the regime, the correspondence always identifies the
//! Picard groups, and iterating it down the reduction chain identifies the
//! Picard group with that of the Hilbert scheme of `t` points.

use serde::{Deserialize, Serialize};

use crate::efm;
use crate::error::{Error, Result};
use crate::lattice::{normalize_fiber_degree, LatticeBasis, ModuliNumerics, MukaiVector};

/// The three classification outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Isomorphism,
    NontrivialMukaiFlop,
    BeyondBound,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Verdict::Isomorphism => "Isomorphism",
            Verdict::NontrivialMukaiFlop => "NontrivialMukaiFlop",
            Verdict::BeyondBound => "BeyondBound",
        };
        f.write_str(name)
    }
}

/// The verdict on the birational map, with the open cases flagged rather
/// than asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// True when an isomorphism is provably excluded (`r > 2` and `t >= r`).
    pub iso_excluded: bool,
    /// True exactly for `(r, d, t) = (2, 1, 4)`, the suggested
    /// counterexample to the rank-2 isomorphism conjecture.
    pub conjectural_counterexample: bool,
    pub reason: String,
}

/// Numerics of the indeterminacy locus in the flop regime: a projective
/// bundle of fiber dimension `r - 1` over the product of the surface with a
/// smaller moduli space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndeterminacyReport {
    pub codim: i64,
    pub fiber_projective_dim: i64,
    pub base_half_dim: i64,
    pub u_numerics: ModuliNumerics,
    pub locus_dim: i64,
}

/// Comparison with the Hilbert scheme through the reduction chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbReport {
    pub l: i64,
    pub bridgeland_a: i64,
    pub iso_to_hilb: bool,
    pub picard_iso: bool,
    pub efm_steps: i64,
}

/// One link of the Picard chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicardStep {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub note: String,
}

/// The reduction chain annotated with the Picard isomorphism at every step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicardChain {
    pub steps: Vec<PicardStep>,
    pub terminal_t: i64,
    /// For `r = 2` the indeterminacy divisor splits the Picard group as
    /// `ℤ·K₁ ⊕ p*Pic(M̄)`; recorded as explanatory text.
    pub r2_boundary_note: Option<String>,
}

fn validate_input(r: i64, d: i64, t: i64) -> Result<()> {
    if r < 2 {
        return Err(Error::OutOfRange {
            name: "r",
            detail: format!("rank must be at least 2, got {r}"),
        });
    }
    if d <= 0 || d >= r {
        return Err(Error::OutOfRange {
            name: "d",
            detail: format!("need 0 < d < r, got r={r}, d={d}"),
        });
    }
    if num_integer::gcd(r, d) != 1 {
        return Err(Error::NotCoprime { a: r, b: d });
    }
    if t < 0 {
        return Err(Error::OutOfRange {
            name: "t",
            detail: format!("half-dimension must be nonnegative, got {t}"),
        });
    }
    Ok(())
}

/// Classify the birational map for the moduli problem `(r, -d, t)`.
pub fn classify(r: i64, d: i64, t: i64) -> Result<Classification> {
    validate_input(r, d, t)?;
    let conjectural = r == 2 && d == 1 && t == 4;
    let iso_excluded = r > 2 && t >= r;
    let (verdict, reason) = if t < r {
        (
            Verdict::Isomorphism,
            format!("t={t} < r={r}: the transform of every stable sheaf is stable, in both directions"),
        )
    } else if t == r && r == 2 {
        (
            Verdict::Isomorphism,
            "t=r=2: the exchanged loci are codimension-1 dual projective bundles, and the flop degenerates to an isomorphism".to_string(),
        )
    } else if t < r + d {
        (
            Verdict::NontrivialMukaiFlop,
            format!(
                "r={r} <= t={t} < r+d={}: dual P^{}-bundles over the same base are exchanged",
                r + d,
                r - 1
            ),
        )
    } else {
        (
            Verdict::BeyondBound,
            format!(
                "t={t} >= r+d={}: the flop description fails because stable bundles with very unstable restriction to some fiber enter the indeterminacy locus",
                r + d
            ),
        )
    };
    Ok(Classification {
        verdict,
        iso_excluded,
        conjectural_counterexample: conjectural,
        reason,
    })
}

/// Indeterminacy-locus numerics; only defined in the flop regime
/// `r <= t < r + d`.
pub fn indeterminacy(r: i64, d: i64, t: i64) -> Result<IndeterminacyReport> {
    validate_input(r, d, t)?;
    if !(r <= t && t < r + d) {
        return Err(Error::OutsideFlopRegime { r, d, t });
    }
    let u_numerics = ModuliNumerics::new(r, d, t - r)?;
    let fiber_projective_dim = r - 1;
    let base_half_dim = 1 + (t - r);
    // Projective-bundle dimension: fiber plus base (surface × smaller moduli).
    let locus_dim = fiber_projective_dim + 2 * base_half_dim;
    Ok(IndeterminacyReport {
        codim: r - 1,
        fiber_projective_dim,
        base_half_dim,
        u_numerics,
        locus_dim,
    })
}

/// Compare with the Hilbert scheme: the chain reaches `Hilbᵗ` and gives an
/// isomorphism when `t < l`; the Picard groups agree for every `t`.
pub fn hilb_compare(r: i64, d: i64, t: i64) -> Result<HilbReport> {
    validate_input(r, d, t)?;
    let l = efm::efm_l(r, d)?;
    let a = efm::bridgeland_a(r, d)?;
    let steps = efm::efm_trace(r, d, t)?.steps.len() as i64;
    Ok(HilbReport {
        l,
        bridgeland_a: a,
        iso_to_hilb: t < l,
        picard_iso: true,
        efm_steps: steps,
    })
}

/// Annotate the reduction chain with the Picard isomorphism at each step.
pub fn picard_chain(r: i64, d: i64, t: i64) -> Result<PicardChain> {
    validate_input(r, d, t)?;
    let trace = efm::efm_trace(r, d, t)?;
    let steps = trace
        .states
        .windows(2)
        .map(|w| PicardStep {
            from: (w[0].r(), -w[0].d()),
            to: (w[1].r(), -w[1].d()),
            note: "Pic iso holds".to_string(),
        })
        .collect();
    let r2_boundary_note = (r == 2).then(|| {
        "r=2: the non-locally-free locus K_1 is a divisor and Pic = Z*K_1 (+) p*Pic(Mbar)"
            .to_string()
    });
    Ok(PicardChain { steps, terminal_t: t, r2_boundary_note })
}

/// Descriptive note on the compactifications the transformed stability data
/// provide when the map is not an isomorphism.
pub fn compactification_note(r: i64, d: i64, t: i64) -> Result<String> {
    validate_input(r, d, t)?;
    Ok(if t < r {
        "isomorphic moduli, no new compactification".to_string()
    } else if t == 2 && r == 2 {
        "boundary case t=r=2: the flop is trivial and the two compactifications coincide with the moduli spaces".to_string()
    } else {
        "the transformed stability data compactify the locus of stable bundles in two new ways: via sheaves with torsion on one side and via length-2 complexes on the other".to_string()
    })
}

/// Convenience adapter: classify a Mukai vector directly, deriving `(r, d)`
/// by fiber-degree normalization and `t` from the self-pairing.
pub fn classify_mukai(basis: &LatticeBasis, v: &MukaiVector) -> Result<Classification> {
    let fd = basis.fiber_degree(v)?;
    let norm = normalize_fiber_degree(v.rank, fd)?;
    let t = basis.half_dimension(v)?;
    classify(norm.r, norm.d, t)
}
