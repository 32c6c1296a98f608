//! Intersection-form and Mukai-pairing arithmetic on an elliptic surface
//! with a section.
//!
//! A [`LatticeBasis`] fixes an even symmetric Gram matrix on a finite-rank
//! sublattice of the Néron–Severi group, together with the distinguished
//! fiber class `f`, the section class `σ`, and a polarization `H`. All
//! numerical operations evaluate exactly in integer arithmetic against that
//! Gram matrix. The default basis is `{σ, f}` with Gram `[[-2,1],[1,0]]`,
//! the intersection numbers forced on a section and a fiber of an elliptic
//! K3 surface.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A divisor class, stored as integer coordinates in the basis of some
/// [`LatticeBasis`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NsClass {
    coords: Vec<i64>,
}

impl NsClass {
    pub fn new(coords: Vec<i64>) -> Self {
        NsClass { coords }
    }

    /// The zero class in a lattice of the given rank.
    pub fn zero(rank: usize) -> Self {
        NsClass { coords: vec![0; rank] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> NsClass {
        NsClass { coords: self.coords.iter().map(|c| c * k).collect() }
    }
}

impl Add for &NsClass {
    type Output = NsClass;
    fn add(self, rhs: &NsClass) -> NsClass {
        assert_eq!(self.len(), rhs.len(), "class rank mismatch");
        NsClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &NsClass {
    type Output = NsClass;
    fn sub(self, rhs: &NsClass) -> NsClass {
        assert_eq!(self.len(), rhs.len(), "class rank mismatch");
        NsClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &NsClass {
    type Output = NsClass;
    fn neg(self) -> NsClass {
        self.scale(-1)
    }
}

impl fmt::Display for NsClass {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(fm, ",")?;
            }
            write!(fm, "{c}")?;
        }
        write!(fm, ")")
    }
}

/// Topological charge `(rank, c₁, euler)` of a sheaf or complex.
///
/// The third component is the degree-4 part of the Mukai charge, not `c₂`;
/// the conversion from Chern data lives in the stability module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MukaiVector {
    pub rank: i64,
    pub c1: NsClass,
    pub euler: i64,
}

impl MukaiVector {
    pub fn new(rank: i64, c1: NsClass, euler: i64) -> Self {
        MukaiVector { rank, c1, euler }
    }

    /// Charge action of the shift functor `[1]`: negate every component.
    pub fn shift(&self) -> MukaiVector {
        MukaiVector {
            rank: -self.rank,
            c1: -&self.c1,
            euler: -self.euler,
        }
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "({},{},{})", self.rank, self.c1, self.euler)
    }
}

/// The triple `(r, d, t)` that identifies a moduli problem once the fiber
/// degree is normalized to `-d`: rank `r`, `0 <= d < r` coprime to `r`, and
/// half-dimension `t`. The terminal state of the reduction is `(1, 0, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ModuliNumericsRepr")]
pub struct ModuliNumerics {
    r: i64,
    d: i64,
    t: i64,
}

#[derive(Deserialize)]
struct ModuliNumericsRepr {
    r: i64,
    d: i64,
    t: i64,
}

impl TryFrom<ModuliNumericsRepr> for ModuliNumerics {
    type Error = Error;
    fn try_from(raw: ModuliNumericsRepr) -> Result<Self> {
        ModuliNumerics::new(raw.r, raw.d, raw.t)
    }
}

impl ModuliNumerics {
    pub fn new(r: i64, d: i64, t: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::OutOfRange {
                name: "r",
                detail: format!("rank must be at least 1, got {r}"),
            });
        }
        if d < 0 || d >= r {
            return Err(Error::OutOfRange {
                name: "d",
                detail: format!("need 0 <= d < r, got d={d}, r={r}"),
            });
        }
        if d == 0 && r != 1 {
            return Err(Error::OutOfRange {
                name: "d",
                detail: format!("d = 0 is only the terminal rank-1 state, got r={r}"),
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
        Ok(ModuliNumerics { r, d, t })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// True for the terminal Hilbert-scheme state `(1, 0, t)`.
    pub fn is_terminal(&self) -> bool {
        self.r == 1
    }
}

impl fmt::Display for ModuliNumerics {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "(r={}, d={}, t={})", self.r, self.d, self.t)
    }
}

/// Result of normalizing a fiber degree by a line-bundle twist: the pair
/// `(r, d)` with the fiber degree fixed at `-d`, and the exponent `k` of the
/// fiber-degree-1 twist that achieves it (`fd + k*r = -d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalizedFiberDegree {
    pub r: i64,
    pub d: i64,
    pub twist_exponent: i64,
}

/// Normalize `(rank, fiber degree)` so the fiber degree becomes `-d` with
/// `0 < d < r` (or `d = 0` when `r = 1`), twisting by the `k`-th power of a
/// line bundle of fiber degree 1. Such a bundle exists because the fibration
/// has a section.
pub fn normalize_fiber_degree(r: i64, fd: i64) -> Result<NormalizedFiberDegree> {
    if r < 1 {
        return Err(Error::OutOfRange {
            name: "r",
            detail: format!("rank must be at least 1, got {r}"),
        });
    }
    if num_integer::gcd(r, fd) != 1 {
        return Err(Error::NotCoprime { a: r, b: fd });
    }
    if r == 1 {
        return Ok(NormalizedFiberDegree { r: 1, d: 0, twist_exponent: -fd });
    }
    let d = (-fd).rem_euclid(r);
    debug_assert!(d != 0, "coprimality rules out r | fd for r >= 2");
    let twist_exponent = (-d - fd) / r;
    Ok(NormalizedFiberDegree { r, d, twist_exponent })
}

/// A fixed basis of a finite-rank sublattice of the Néron–Severi group:
/// even symmetric Gram matrix, distinguished fiber and section classes, and
/// a designated polarization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    gram: Vec<Vec<i64>>,
    fiber_index: usize,
    section_index: usize,
    polarization: NsClass,
}

#[derive(Deserialize)]
struct LatticeBasisRepr {
    gram: Vec<Vec<i64>>,
    fiber: usize,
    section: usize,
    polarization: Vec<i64>,
}

impl LatticeBasis {
    /// Validates every structural invariant; errors carry the name of the
    /// violated invariant.
    pub fn new(
        gram: Vec<Vec<i64>>,
        fiber_index: usize,
        section_index: usize,
        polarization: NsClass,
    ) -> Result<Self> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|row| row.len() != n) {
            return Err(Error::Invariant {
                name: "gram_square",
                detail: "Gram matrix must be square and nonempty".into(),
            });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invariant {
                        name: "gram_symmetric",
                        detail: format!("entries ({i},{j}) and ({j},{i}) differ"),
                    });
                }
            }
        }
        for (i, row) in gram.iter().enumerate() {
            if row[i] % 2 != 0 {
                return Err(Error::Invariant {
                    name: "gram_even",
                    detail: format!("diagonal entry ({i},{i}) = {} is odd", row[i]),
                });
            }
        }
        if fiber_index >= n {
            return Err(Error::Invariant {
                name: "fiber_index",
                detail: format!("index {fiber_index} exceeds rank {n}"),
            });
        }
        if section_index >= n {
            return Err(Error::Invariant {
                name: "section_index",
                detail: format!("index {section_index} exceeds rank {n}"),
            });
        }
        if gram[fiber_index][fiber_index] != 0 {
            return Err(Error::Invariant {
                name: "fiber_isotropic",
                detail: format!("f.f = {} must vanish", gram[fiber_index][fiber_index]),
            });
        }
        let basis = LatticeBasis { gram, fiber_index, section_index, polarization };
        if basis.polarization.len() != n {
            return Err(Error::Invariant {
                name: "polarization_rank",
                detail: format!(
                    "polarization has {} coordinates, lattice rank is {n}",
                    basis.polarization.len()
                ),
            });
        }
        let h = &basis.polarization;
        let hf = basis.intersect(h, &basis.fiber_class())?;
        if hf <= 0 {
            return Err(Error::Invariant {
                name: "polarization_fiber_positive",
                detail: format!("H.f = {hf} must be positive"),
            });
        }
        let hh = basis.intersect(h, h)?;
        if hh <= 0 {
            return Err(Error::Invariant {
                name: "polarization_positive",
                detail: format!("H.H = {hh} must be positive"),
            });
        }
        Ok(basis)
    }

    /// The rank-2 basis `{σ, f}` of an elliptic K3 with a section, with
    /// `σ² = -2`, `σ.f = 1`, `f² = 0` and polarization `H = σ + 2f`.
    pub fn default_k3() -> LatticeBasis {
        LatticeBasis::new(
            vec![vec![-2, 1], vec![1, 0]],
            1,
            0,
            NsClass::new(vec![1, 2]),
        )
        .expect("the default basis satisfies every invariant")
    }

    /// Load a basis from a JSON document of the form
    /// `{"gram": [[...]], "fiber": i, "section": j, "polarization": [...]}`.
    pub fn from_json(text: &str) -> Result<LatticeBasis> {
        let raw: LatticeBasisRepr =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        LatticeBasis::new(raw.gram, raw.fiber, raw.section, NsClass::new(raw.polarization))
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn polarization(&self) -> &NsClass {
        &self.polarization
    }

    /// The distinguished fiber class `f` as a coordinate vector.
    pub fn fiber_class(&self) -> NsClass {
        let mut coords = vec![0; self.rank()];
        coords[self.fiber_index] = 1;
        NsClass::new(coords)
    }

    /// The section class `σ` as a coordinate vector.
    pub fn section_class(&self) -> NsClass {
        let mut coords = vec![0; self.rank()];
        coords[self.section_index] = 1;
        NsClass::new(coords)
    }

    fn check_dims(&self, a: &NsClass) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: a.len() });
        }
        Ok(())
    }

    /// Evaluate the intersection form `aᵗ · Gram · b`.
    pub fn intersect(&self, a: &NsClass, b: &NsClass) -> Result<i64> {
        self.check_dims(a)?;
        self.check_dims(b)?;
        let mut total = 0i64;
        for (i, &ai) in a.coords().iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coords().iter().enumerate() {
                total += ai * self.gram[i][j] * bj;
            }
        }
        Ok(total)
    }

    /// `a.a`; always even on an even lattice.
    pub fn self_intersection(&self, a: &NsClass) -> Result<i64> {
        self.intersect(a, a)
    }

    /// The fiber degree `c₁(v).f`.
    pub fn fiber_degree(&self, v: &MukaiVector) -> Result<i64> {
        self.intersect(&v.c1, &self.fiber_class())
    }

    /// The Mukai pairing `⟨v,w⟩ = c₁(v).c₁(w) - rank(v)·euler(w) - rank(w)·euler(v)`.
    pub fn mukai_pairing(&self, v: &MukaiVector, w: &MukaiVector) -> Result<i64> {
        Ok(self.intersect(&v.c1, &w.c1)? - v.rank * w.euler - w.rank * v.euler)
    }

    /// Half the expected moduli dimension: `t` with `2t - 2 = ⟨v,v⟩`.
    ///
    /// A self-pairing below `-2` signals an empty moduli problem and is
    /// reported as an error rather than a negative `t`.
    pub fn half_dimension(&self, v: &MukaiVector) -> Result<i64> {
        let p = self.mukai_pairing(v, v)?;
        if p.rem_euclid(2) != 0 {
            return Err(Error::OddPairing { pairing: p });
        }
        if p < -2 {
            return Err(Error::EmptyModuli { pairing: p });
        }
        Ok((p + 2) / 2)
    }

    /// Charge action of tensoring by a line bundle of class `l`:
    /// `(r, c₁, s) ↦ (r, c₁ + r·l, s + c₁.l + r·l²/2)`.
    ///
    /// The euler shift is integral because the lattice is even. The Mukai
    /// pairing is invariant under a simultaneous twist.
    pub fn twist(&self, v: &MukaiVector, l: &NsClass) -> Result<MukaiVector> {
        self.check_dims(&v.c1)?;
        self.check_dims(l)?;
        let ll = self.intersect(l, l)?;
        debug_assert_eq!(ll % 2, 0);
        Ok(MukaiVector {
            rank: v.rank,
            c1: &v.c1 + &l.scale(v.rank),
            euler: v.euler + self.intersect(&v.c1, l)? + v.rank * (ll / 2),
        })
    }
}
