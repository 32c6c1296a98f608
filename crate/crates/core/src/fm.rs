//! Charge-level action of the relative Fourier–Mukai equivalences.
//!
//! Everything here is bookkeeping on integer pairs: the quarter-turn action
//! on (rank, fiber degree), the induced map on orthogonality conditions,
//! the transform table for sheaves supported on fibers, and the WIT-index
//! predictions. No derived-category objects are modeled.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A 2×2 integer matrix (no determinant constraint).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat2 {
    entries: [[i64; 2]; 2],
}

impl Mat2 {
    pub const fn new(entries: [[i64; 2]; 2]) -> Self {
        Mat2 { entries }
    }

    pub const fn identity() -> Self {
        Mat2::new([[1, 0], [0, 1]])
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn det(&self) -> i64 {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    pub fn transpose(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.entries;
        Mat2::new([[a, c], [b, d]])
    }

    /// Matrix–vector product on a column vector.
    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        let [[a, b], [c, d]] = self.entries;
        (a * v.0 + b * v.1, c * v.0 + d * v.1)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.entries;
        let [[e, f], [g, h]] = rhs.entries;
        Mat2::new([
            [a * e + b * g, a * f + b * h],
            [c * e + d * g, c * f + d * h],
        ])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.entries;
        write!(fm, "[[{a},{b}],[{c},{d}]]")
    }
}

/// An element of SL₂(ℤ): a 2×2 integer matrix of determinant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Mat2", into = "Mat2")]
pub struct UniModMatrix(Mat2);

impl TryFrom<Mat2> for UniModMatrix {
    type Error = Error;
    fn try_from(m: Mat2) -> Result<Self> {
        if m.det() != 1 {
            return Err(Error::NotUnimodular { det: m.det() });
        }
        Ok(UniModMatrix(m))
    }
}

impl From<UniModMatrix> for Mat2 {
    fn from(m: UniModMatrix) -> Mat2 {
        m.0
    }
}

impl UniModMatrix {
    pub fn new(entries: [[i64; 2]; 2]) -> Result<Self> {
        Mat2::new(entries).try_into()
    }

    pub fn identity() -> Self {
        UniModMatrix(Mat2::identity())
    }

    /// The charge matrix of the Fourier–Mukai equivalence with the Poincaré
    /// kernel: `(a, b) ↦ (-b, a)` on (rank, fiber degree) columns.
    pub fn psi() -> Self {
        UniModMatrix(Mat2::new([[0, -1], [1, 0]]))
    }

    /// Charge matrix `[[1,0],[k,1]]` of tensoring by the `k`-th power of a
    /// line bundle of fiber degree 1.
    pub fn twist(k: i64) -> Self {
        UniModMatrix(Mat2::new([[1, 0], [k, 1]]))
    }

    pub fn mat(&self) -> Mat2 {
        self.0
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.0.entries()
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        self.0.apply(v)
    }
}

impl Mul for UniModMatrix {
    type Output = UniModMatrix;
    fn mul(self, rhs: UniModMatrix) -> UniModMatrix {
        // det is multiplicative, so the product stays in SL₂(ℤ).
        UniModMatrix(self.0 * rhs.0)
    }
}

impl fmt::Display for UniModMatrix {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(fm)
    }
}

/// The (rank, fiber degree) pair a relative transform acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChargePair {
    rank: i64,
    fibdeg: i64,
}

impl ChargePair {
    pub fn new(rank: i64, fibdeg: i64) -> Result<Self> {
        if rank == 0 && fibdeg == 0 {
            return Err(Error::Invariant {
                name: "charge_nonzero",
                detail: "transform inputs must have (rank, fiber degree) != (0, 0)".into(),
            });
        }
        Ok(ChargePair { rank, fibdeg })
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn fibdeg(&self) -> i64 {
        self.fibdeg
    }

    pub fn as_tuple(&self) -> (i64, i64) {
        (self.rank, self.fibdeg)
    }
}

impl fmt::Display for ChargePair {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "({},{})", self.rank, self.fibdeg)
    }
}

/// `(a, b) ↦ (-b, a)`: an object of rank `a` and fiber degree `b` is sent to
/// one of rank `-b` and fiber degree `a`.
pub fn psi_charge(p: ChargePair) -> ChargePair {
    ChargePair { rank: -p.fibdeg, fibdeg: p.rank }
}

/// Charge action of a relative kernel with associated matrix `m`.
pub fn general_fm_charge(m: &UniModMatrix, p: ChargePair) -> ChargePair {
    let (rank, fibdeg) = m.apply(p.as_tuple());
    // A unimodular matrix has trivial kernel, so the image stays nonzero.
    ChargePair { rank, fibdeg }
}

/// The orthogonality condition `(m, n)^⊥`: existence of a fiber-supported
/// sheaf of rank `m` and degree `n` with vanishing morphism spaces to the
/// object in every degree. `(m, n)` and `(-m, -n)` denote the same condition
/// because vanishing over all shifts is shift-invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrthCondition {
    m: i64,
    n: i64,
}

impl OrthCondition {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::Invariant {
                name: "orth_nonzero",
                detail: "orthogonality condition must have (m, n) != (0, 0)".into(),
            });
        }
        Ok(OrthCondition { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Equality up to the global sign that leaves the condition unchanged.
    pub fn same_condition(&self, other: &OrthCondition) -> bool {
        (self.m, self.n) == (other.m, other.n) || (self.m, self.n) == (-other.m, -other.n)
    }
}

impl fmt::Display for OrthCondition {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "({},{})^perp", self.m, self.n)
    }
}

/// An object is `(m,n)^⊥` iff its transform is `(-n,m)^⊥`.
pub fn orth_transform(c: OrthCondition) -> OrthCondition {
    OrthCondition { m: -c.n, n: c.m }
}

/// General-kernel form: a transform with matrix `p` sends the condition
/// `(m,n)^⊥` to `(p·(m,n)ᵗ)^⊥`.
pub fn orth_transform_general(p: &UniModMatrix, c: OrthCondition) -> OrthCondition {
    let (m, n) = p.apply((c.m, c.n));
    OrthCondition { m, n }
}

/// `T_{a,b}`: the class of a rank-`a`, degree-`b` sheaf supported on a single
/// fiber. The degenerate cases are `T_{0,b}` with `b > 0` (length-`b`
/// skyscrapers for `b = 1`) and `T_{a,0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FiberSheafClass {
    a: i64,
    b: i64,
}

impl FiberSheafClass {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 0 {
            return Err(Error::Invariant {
                name: "fiber_rank_nonnegative",
                detail: format!("fiber rank must be nonnegative, got {a}"),
            });
        }
        if a == 0 && b <= 0 {
            return Err(Error::Invariant {
                name: "fiber_torsion_positive",
                detail: format!("a rank-0 fiber sheaf needs positive degree, got {b}"),
            });
        }
        Ok(FiberSheafClass { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }
}

impl fmt::Display for FiberSheafClass {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "T_{{{},{}}}", self.a, self.b)
    }
}

/// Transform table for stable sheaves supported on a fiber. Returns the image
/// class together with the cohomological shift (0 or 1) of the image:
///
/// * `b > 0`: `T_{a,b} ↦ T_{b,-a}` as a sheaf;
/// * `b < 0`: `T_{a,b} ↦ T_{-b,a}` shifted to degree 1;
/// * `T_{1,0}` (a degree-0 line bundle on a fiber) `↦ T_{0,1}` shifted.
///
/// `b = 0` with `a >= 2` is not covered by the table and is rejected.
pub fn transform_fiber_sheaf(t: FiberSheafClass) -> Result<(FiberSheafClass, u8)> {
    if t.b > 0 {
        Ok((FiberSheafClass { a: t.b, b: -t.a }, 0))
    } else if t.b < 0 {
        Ok((FiberSheafClass { a: -t.b, b: t.a }, 1))
    } else if t.a == 1 {
        Ok((FiberSheafClass { a: 0, b: 1 }, 1))
    } else {
        Err(Error::OutsideFiberTable { a: t.a, b: t.b })
    }
}

/// Which of the two equivalences a WIT index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FmFunctor {
    Psi,
    Phi,
}

/// Sign of the slope of a semistable torsion-free sheaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeSign {
    Negative,
    Zero,
    Positive,
}

/// A sheaf is Π-WIT_i when its transform is concentrated in cohomological
/// degree `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WitIndex {
    value: u8,
    functor: FmFunctor,
}

impl WitIndex {
    pub fn new(value: u8, functor: FmFunctor) -> Result<Self> {
        if value > 1 {
            return Err(Error::Invariant {
                name: "wit_index",
                detail: format!("WIT index must be 0 or 1, got {value}"),
            });
        }
        Ok(WitIndex { value, functor })
    }

    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn functor(&self) -> FmFunctor {
        self.functor
    }

    /// A Ψ-WIT_i sheaf transforms to a Φ-WIT_{1-i} sheaf (and conversely),
    /// because the composite of the two equivalences is the shift `[1]`.
    pub fn complement(self) -> WitIndex {
        WitIndex {
            value: 1 - self.value,
            functor: match self.functor {
                FmFunctor::Psi => FmFunctor::Phi,
                FmFunctor::Phi => FmFunctor::Psi,
            },
        }
    }
}

/// WIT prediction for a semistable torsion-free sheaf under Ψ.
///
/// The only documented case is negative slope, which forces Ψ-WIT₁; every
/// other input returns `None` rather than guessing.
pub fn predict_wit(slope: SlopeSign, functor: FmFunctor) -> Option<WitIndex> {
    match (slope, functor) {
        (SlopeSign::Negative, FmFunctor::Psi) => Some(WitIndex { value: 1, functor }),
        _ => None,
    }
}
