//! Numerical stability machinery for fibered surfaces: discriminants, the
//! Bogomolov check, fiberlike-polarization thresholds, the two A²-inequality
//! certificates, orthogonality parameters, purity twist parameters, the
//! P-datum summary, and the fiber destabilizer budgets.
//!
//! Everything here is a statement about integers and exact rationals; no
//! sheaves are restricted and no cohomology is computed. The inequality
//! checkers certify numeric consequences of (semi)stability, they do not
//! decide stability of an abstract sheaf.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fm::OrthCondition;
use crate::lattice::{LatticeBasis, MukaiVector, NsClass};

/// Chern data `(r, c₁, c₂)` of a sheaf; `c₂` here is the honest second Chern
/// class, not the Mukai euler component (see [`chern_to_mukai`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub r: i64,
    pub c1: NsClass,
    pub c2: i64,
}

impl ChernData {
    pub fn new(r: i64, c1: NsClass, c2: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::OutOfRange {
                name: "r",
                detail: format!("rank must be at least 1, got {r}"),
            });
        }
        Ok(ChernData { r, c1, c2 })
    }
}

/// Fiber rank and degree of a quotient (or subsheaf) restricted to a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DestabilizerProfile {
    pub r0: i64,
    pub d0: i64,
}

impl DestabilizerProfile {
    pub fn new(r0: i64, d0: i64) -> Result<Self> {
        if r0 <= 0 {
            return Err(Error::OutOfRange {
                name: "r0",
                detail: format!("fiber rank must be positive, got {r0}"),
            });
        }
        Ok(DestabilizerProfile { r0, d0 })
    }
}

/// The polarization family `H + N·f`: for every `N >= n0` the stability
/// notions collapse to stability on the generic fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationFamily {
    pub h: NsClass,
    pub n0: BigRational,
}

impl PolarizationFamily {
    pub fn for_chern(basis: &LatticeBasis, h: NsClass, c: &ChernData) -> Result<Self> {
        let hf = validate_polarization(basis, &h)?;
        let delta = discriminant(basis, c)?;
        let n0 = fiberlike_threshold(c.r, delta, hf)?;
        Ok(PolarizationFamily { h, n0 })
    }
}

/// Numerical summary of the stability datum: the orthogonality parameters,
/// the purity twist `(n, m)`, and the Chern data standing in for the
/// Hilbert-polynomial conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PDatumNumerics {
    pub orth: OrthCondition,
    pub purity_twist: (i64, i64),
    pub chern: ChernData,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Serialize an exact rational as its display string (`"27/2"`, `"4"`).
fn rational_as_string<S: serde::Serializer>(
    value: &BigRational,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_str(value)
}

fn validate_polarization(basis: &LatticeBasis, h: &NsClass) -> Result<i64> {
    let hf = basis.intersect(h, &basis.fiber_class())?;
    if hf <= 0 {
        return Err(Error::Invariant {
            name: "polarization_fiber_positive",
            detail: format!("H.f = {hf} must be positive"),
        });
    }
    let hh = basis.self_intersection(h)?;
    if hh <= 0 {
        return Err(Error::Invariant {
            name: "polarization_positive",
            detail: format!("H.H = {hh} must be positive"),
        });
    }
    Ok(hf)
}

/// The discriminant `Δ = (r-1)·c₁² - 2r·c₂`; equals `ch₂(E⊗E^∨)` and is
/// invariant under twisting by a line bundle.
pub fn discriminant(basis: &LatticeBasis, c: &ChernData) -> Result<i64> {
    Ok((c.r - 1) * basis.self_intersection(&c.c1)? - 2 * c.r * c.c2)
}

/// The Bogomolov inequality: a semistable sheaf has `Δ <= 0`.
pub fn bogomolov_ok(delta: i64) -> bool {
    delta <= 0
}

/// The threshold `N₀ = -r²·Δ·h/8` with `h = H.f`: for all `N >= N₀`,
/// stability, semistability, and generic-fiber stability with respect to
/// `H + N·f` coincide.
pub fn fiberlike_threshold(r: i64, delta: i64, h: i64) -> Result<BigRational> {
    if r < 1 {
        return Err(Error::OutOfRange {
            name: "r",
            detail: format!("rank must be at least 1, got {r}"),
        });
    }
    if h <= 0 {
        return Err(Error::OutOfRange {
            name: "h",
            detail: format!("H.f must be positive, got {h}"),
        });
    }
    if delta > 0 {
        // No semistable sheaf exists, so the threshold is meaningless.
        return Err(Error::BogomolovViolation { delta });
    }
    Ok(rat(-r * r * delta * h, 8))
}

/// Certificate for the subsheaf inequality `(r²/4)·Δ(E) <= A²` with
/// `A = r'·c₁(E) - r·c₁(E')`. `ok = false` certifies that the candidate
/// cannot arise from a same-slope semistable subsheaf.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsheafBound {
    pub a_class: NsClass,
    /// `r²·Δ/4` as an exact rational.
    #[serde(serialize_with = "rational_as_string")]
    pub lhs: BigRational,
    pub a_squared: i64,
    pub ok: bool,
}

pub fn subsheaf_a_bound(
    basis: &LatticeBasis,
    c_e: &ChernData,
    c_sub: &ChernData,
) -> Result<SubsheafBound> {
    if c_sub.r < 1 || c_sub.r >= c_e.r {
        return Err(Error::OutOfRange {
            name: "r'",
            detail: format!(
                "subsheaf rank must satisfy 1 <= r' < r, got r'={}, r={}",
                c_sub.r, c_e.r
            ),
        });
    }
    let a_class = &c_e.c1.scale(c_sub.r) - &c_sub.c1.scale(c_e.r);
    let a_squared = basis.self_intersection(&a_class)?;
    let delta = discriminant(basis, c_e)?;
    let r = c_e.r;
    // (r²/4)·Δ <= A²  ⇔  r²·Δ <= 4·A² (integer comparison).
    let ok = r * r * delta <= 4 * a_squared;
    Ok(SubsheafBound { a_class, lhs: rat(r * r * delta, 4), a_squared, ok })
}

/// Certificate for the Hodge-index consequence
/// `A² <= -(A.f)²·H²/(H.f)²` for `f² = 0`, `H.A = 0`, `H.f > 0`, `H² > 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HodgeBound {
    #[serde(serialize_with = "rational_as_string")]
    pub bound: BigRational,
    pub a_squared: i64,
    pub ok: bool,
}

pub fn hodge_bound(
    basis: &LatticeBasis,
    h: &NsClass,
    f: &NsClass,
    a: &NsClass,
) -> Result<HodgeBound> {
    let ff = basis.self_intersection(f)?;
    if ff != 0 {
        return Err(Error::Invariant {
            name: "fiber_isotropic",
            detail: format!("f.f = {ff} must vanish"),
        });
    }
    let ha = basis.intersect(h, a)?;
    if ha != 0 {
        return Err(Error::Invariant {
            name: "orthogonal_to_polarization",
            detail: format!("H.A = {ha} must vanish"),
        });
    }
    let hf = basis.intersect(h, f)?;
    if hf <= 0 {
        return Err(Error::Invariant {
            name: "polarization_fiber_positive",
            detail: format!("H.f = {hf} must be positive"),
        });
    }
    let hh = basis.self_intersection(h)?;
    if hh <= 0 {
        return Err(Error::Invariant {
            name: "polarization_positive",
            detail: format!("H.H = {hh} must be positive"),
        });
    }
    let af = basis.intersect(a, f)?;
    let a_squared = basis.self_intersection(a)?;
    // A² <= -(A.f)²·H²/(H.f)²  ⇔  A²·(H.f)² <= -(A.f)²·H².
    let ok = a_squared * hf * hf <= -(af * af) * hh;
    Ok(HodgeBound { bound: rat(-(af * af) * hh, hf * hf), a_squared, ok })
}

/// Orthogonality parameters for semistability of rank-`r`, degree-`d`
/// sheaves on a genus-`g` fiber: `(r², r·d - r²·(g-1))` in general, reduced
/// to `(r, d)` on elliptic fibers.
pub fn popa_params(r: i64, d: i64, g: i64) -> Result<OrthCondition> {
    if r < 1 {
        return Err(Error::OutOfRange {
            name: "r",
            detail: format!("rank must be at least 1, got {r}"),
        });
    }
    if g < 0 {
        return Err(Error::OutOfRange {
            name: "g",
            detail: format!("genus must be nonnegative, got {g}"),
        });
    }
    if g == 1 {
        OrthCondition::new(r, d)
    } else {
        OrthCondition::new(r * r, r * d - r * r * (g - 1))
    }
}

/// The twist `(n, m)` defining the purity test bundle `O(nH + mf)`:
/// the largest `n` with `n·(H.f) < 1 - g + d/r + Δ/(2r)`, then the smallest
/// `m` making the slope of `O(nH + mf)` exceed the slope of `E`.
pub fn purity_twist_params(
    basis: &LatticeBasis,
    c: &ChernData,
    h: &NsClass,
    g: i64,
) -> Result<(i64, i64)> {
    if g < 0 {
        return Err(Error::OutOfRange {
            name: "g",
            detail: format!("genus must be nonnegative, got {g}"),
        });
    }
    let hf = validate_polarization(basis, h)?;
    let hh = basis.self_intersection(h)?;
    let d = basis.intersect(&c.c1, &basis.fiber_class())?;
    let delta = discriminant(basis, c)?;

    // n·(H.f) < 1 - g + d/r + Δ/(2r): clear denominators by 2r > 0.
    let num = 2 * c.r * (1 - g) + 2 * d + delta;
    let den = 2 * c.r * hf;
    let n = if num.rem_euclid(den) == 0 { num.div_euclid(den) - 1 } else { num.div_euclid(den) };
    debug_assert!(n * den < num && (n + 1) * den >= num);

    // μ(O(nH+mf)) = n·H² + m·(H.f) > μ(E) = (H.c₁)/r: clear by r > 0.
    let hc1 = basis.intersect(h, &c.c1)?;
    let num_m = hc1 - n * c.r * hh;
    let den_m = c.r * hf;
    let m = num_m.div_euclid(den_m) + 1;
    debug_assert!(m * den_m > num_m && (m - 1) * den_m <= num_m);

    Ok((n, m))
}

/// Assemble the numerical stability datum for the Chern data `c`: the
/// orthogonality parameters (elliptic reduction when `g = 1`), the purity
/// twist, and the Chern data standing in for the Hilbert-polynomial part.
pub fn build_p_datum(
    basis: &LatticeBasis,
    c: &ChernData,
    h: &NsClass,
    g: i64,
) -> Result<PDatumNumerics> {
    let fd = basis.intersect(&c.c1, &basis.fiber_class())?;
    if num_integer::gcd(c.r, fd) != 1 {
        return Err(Error::NotCoprime { a: c.r, b: fd });
    }
    Ok(PDatumNumerics {
        orth: popa_params(c.r, fd, g)?,
        purity_twist: purity_twist_params(basis, c, h, g)?,
        chern: c.clone(),
    })
}

/// The slope defect `z = r·d₀ + r₀·d` contributed by a fiber quotient of
/// rank `r₀`, degree `d₀`; the profile is possible only when `z <= t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DestabilizerBudget {
    pub z: i64,
}

impl DestabilizerBudget {
    pub fn feasible_for(&self, t: i64) -> bool {
        self.z <= t
    }
}

pub fn destabilizer_budget(r: i64, d: i64, profile: DestabilizerProfile) -> DestabilizerBudget {
    DestabilizerBudget { z: r * profile.d0 + profile.r0 * d }
}

/// Budget over several unstable fibers: all the defects must fit in `t` and
/// there can be at most `t` such fibers.
pub fn multi_fiber_budget(r: i64, d: i64, profiles: &[DestabilizerProfile], t: i64) -> bool {
    let total: i64 = profiles.iter().map(|p| destabilizer_budget(r, d, *p).z).sum();
    total <= t && profiles.len() as i64 <= t
}

/// Codimension bound for the stratum of bundles with `m` independent maps
/// from a fixed destabilizing fiber bundle `G`: `z_G = r·deg(G) + d·rk(G)`
/// and the codimension is at least `m·(z_G + 1)`. Since `z_G >= r + d >= 3`,
/// the codimension is at least 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StratumBound {
    pub z_g: i64,
    pub codim_lb: i64,
    pub t: i64,
}

pub fn l_stratum_bound(
    r: i64,
    d: i64,
    t: i64,
    rk_g: i64,
    deg_g: i64,
    m: i64,
) -> Result<StratumBound> {
    if rk_g < 1 {
        return Err(Error::OutOfRange {
            name: "rk_g",
            detail: format!("rk(G) must be at least 1, got {rk_g}"),
        });
    }
    if deg_g < 1 {
        return Err(Error::OutOfRange {
            name: "deg_g",
            detail: format!("deg(G) must be at least 1, got {deg_g}"),
        });
    }
    if m < 1 {
        return Err(Error::OutOfRange {
            name: "m",
            detail: format!("m must be at least 1, got {m}"),
        });
    }
    let z_g = r * deg_g + d * rk_g;
    Ok(StratumBound { z_g, codim_lb: m * (z_g + 1), t })
}

/// Convert Chern data to the Mukai charge on a K3:
/// `(r, c₁, c₂) ↦ (r, c₁, r + c₁²/2 - c₂)`. This is a convention of this
/// toolkit; the third component is the degree-4 charge, not `c₂`.
pub fn chern_to_mukai(basis: &LatticeBasis, c: &ChernData) -> Result<MukaiVector> {
    let c1_sq = basis.self_intersection(&c.c1)?;
    Ok(MukaiVector::new(c.r, c.c1.clone(), c.r + c1_sq / 2 - c.c2))
}

/// Chern data of `E ⊗ L`: `c₁ ↦ c₁ + r·L`, `c₂ ↦ c₂ + (r-1)·c₁.L + C(r,2)·L²`.
/// The discriminant is invariant under this operation.
pub fn twist_chern(basis: &LatticeBasis, c: &ChernData, l: &NsClass) -> Result<ChernData> {
    let c1l = basis.intersect(&c.c1, l)?;
    let ll = basis.self_intersection(l)?;
    Ok(ChernData {
        r: c.r,
        c1: &c.c1 + &l.scale(c.r),
        c2: c.c2 + (c.r - 1) * c1l + (c.r * (c.r - 1) / 2) * ll,
    })
}
