//! The two-dimensional slice of `N^1(X^[n])` spanned by `H^[n]` and `B^[n]`.
//!
//! Classes are written in `(alpha, beta)` coordinates meaning
//! `alpha*H^[n] - (beta/2)*B^[n]`, so `H^[n] = (1, 0)` and `B^[n] = (0, -2)`.
//! A curve class is recorded by its two intersection numbers `(C.H, C.B)`,
//! and the pairing is `alpha*h - (beta/2)*b`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{int, Rational};
use crate::curves::CurveKind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("class lives on X^[{n1}] of a degree-{d1} surface but curve/cone on X^[{n2}] of degree {d2}")]
    Mismatch { n1: u32, d1: u32, n2: u32, d2: u32 },
    #[error("curve `{0}` has non-positive H-degree; it does not bound the slope")]
    NotASlopeBound(String),
    #[error("invalid parameters for `{what}`: {reason}")]
    InvalidParameters { what: &'static str, reason: String },
    #[error("unsupported curve `{0}` for this operation")]
    UnsupportedCurve(String),
}

pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> ConeError {
    ConeError::InvalidParameters {
        what,
        reason: reason.into(),
    }
}

/// A divisor class `alpha*H^[n] - (beta/2)*B^[n]` on `X^[n]`, `X` of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NsClass {
    pub alpha: Rational,
    pub beta: Rational,
    pub n: u32,
    pub d: u32,
}

impl NsClass {
    pub fn new(alpha: Rational, beta: Rational, n: u32, d: u32) -> Self {
        Self { alpha, beta, n, d }
    }

    pub fn h(n: u32, d: u32) -> Self {
        Self::new(Rational::one(), Rational::zero(), n, d)
    }

    pub fn b(n: u32, d: u32) -> Self {
        Self::new(Rational::zero(), int(-2), n, d)
    }

    /// `slope*H^[n] - (1/2)*B^[n]`.
    pub fn with_slope(slope: Rational, n: u32, d: u32) -> Self {
        Self::new(slope, Rational::one(), n, d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.alpha * c, &self.beta * c, self.n, self.d)
    }

    /// Same ray: positive multiples of each other.
    pub fn same_ray(&self, other: &Self) -> bool {
        self.n == other.n
            && self.d == other.d
            && &self.alpha * &other.beta == &self.beta * &other.alpha
            && self.alpha.signum() == other.alpha.signum()
            && self.beta.signum() == other.beta.signum()
    }

    fn check(&self, n: u32, d: u32) -> Result<(), ConeError> {
        if self.n == n && self.d == d {
            Ok(())
        } else {
            Err(ConeError::Mismatch {
                n1: self.n,
                d1: self.d,
                n2: n,
                d2: d,
            })
        }
    }
}

impl fmt::Display for NsClass {
    /// Writes `a*H^[n] - c*B^[n]` with `c = beta/2`, dropping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let c = &self.beta / int(2);
        let coeff = |x: &Rational| {
            if x.is_one() {
                String::new()
            } else {
                alloc::format!("{x}*")
            }
        };
        match (self.alpha.is_zero(), c.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}H^[{n}]", coeff(&self.alpha)),
            (true, false) if c.is_negative() => write!(f, "{}B^[{n}]", coeff(&-c)),
            (true, false) => write!(f, "-{}B^[{n}]", coeff(&c)),
            (false, false) if c.is_negative() => {
                write!(f, "{}H^[{n}] + {}B^[{n}]", coeff(&self.alpha), coeff(&-c))
            }
            (false, false) => write!(f, "{}H^[{n}] - {}B^[{n}]", coeff(&self.alpha), coeff(&c)),
        }
    }
}

/// A curve on `X^[n]` known through its intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub kind: CurveKind,
    /// `C . H^[n]`
    pub h: Rational,
    /// `C . B^[n]`
    pub b: Rational,
    pub n: u32,
    pub d: u32,
    pub provenance: &'static str,
}

impl CurveClass {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }
}

/// `D . C = alpha*h - (beta/2)*b`.
pub fn pair(class: &NsClass, curve: &CurveClass) -> Result<Rational, ConeError> {
    class.check(curve.n, curve.d)?;
    Ok(&class.alpha * &curve.h - &class.beta * &curve.b / int(2))
}

/// The least `alpha` with `(alpha, 1) . C >= 0`, namely `b / (2h)`.
pub fn slope_bound_from_curve(curve: &CurveClass) -> Result<Rational, ConeError> {
    if !curve.h.is_positive() {
        return Err(ConeError::NotASlopeBound(curve.name().into()));
    }
    Ok(&curve.b / (int(2) * &curve.h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeStatus {
    /// Both rays are known and the second is proven nef and extremal.
    Exact,
    /// A curve-forced lower bound, possibly with a proven nef (or ample) class above it.
    Bounded,
    /// Exact within the `H`, `B` slice; the full Picard rank may exceed two.
    SliceExact,
    /// Only generic bounds apply.
    Unknown,
}

impl ConeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConeStatus::Exact => "exact",
            ConeStatus::Bounded => "bounded",
            ConeStatus::SliceExact => "slice-exact",
            ConeStatus::Unknown => "unknown",
        }
    }
}

impl fmt::Display for ConeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A dual curve and the bound it forces on the slope of a nef class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub curve: CurveClass,
    pub bound: Rational,
    /// The curve has `C.H = 0` and only forces `alpha >= 0`.
    pub trivial: bool,
}

impl Witness {
    pub fn new(curve: CurveClass) -> Self {
        match slope_bound_from_curve(&curve) {
            Ok(bound) => Self {
                curve,
                bound,
                trivial: false,
            },
            Err(_) => Self {
                curve,
                bound: Rational::zero(),
                trivial: true,
            },
        }
    }
}

/// Best-known nef cone in the `H`, `B` slice of `N^1(X^[n])`.
///
/// The first ray is always `H^[n]`. Every nef `alpha*H - (1/2)*B` has
/// `alpha >= lower_slope`; when `nef_slope` is present the class at that
/// slope is proven nef (ample if `nef_slope_strict`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSlice {
    pub n: u32,
    pub d: u32,
    pub status: ConeStatus,
    pub lower_slope: Rational,
    pub nef_slope: Option<Rational>,
    pub nef_slope_strict: bool,
    pub witnesses: Vec<Witness>,
    pub provenance: Vec<&'static str>,
    pub notes: Vec<String>,
}

/// Answer of a membership query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Yes,
    No,
    Unknown,
}

impl Containment {
    pub fn as_str(self) -> &'static str {
        match self {
            Containment::Yes => "yes",
            Containment::No => "no",
            Containment::Unknown => "unknown",
        }
    }
}

impl ConeSlice {
    pub fn ray_low(&self) -> NsClass {
        NsClass::h(self.n, self.d)
    }

    /// The second extremal ray when it is known.
    pub fn ray_high(&self) -> Option<NsClass> {
        matches!(self.status, ConeStatus::Exact | ConeStatus::SliceExact)
            .then(|| NsClass::with_slope(self.lower_slope.clone(), self.n, self.d))
    }

    /// The witness whose bound equals `lower_slope` (first such, non-trivial
    /// preferred).
    pub fn extremal_witness(&self) -> Option<&Witness> {
        self.witnesses
            .iter()
            .filter(|w| w.bound == self.lower_slope)
            .min_by_key(|w| w.trivial)
    }

    pub fn contains(&self, class: &NsClass) -> Result<Containment, ConeError> {
        cone_contains(self, class)
    }
}

/// `Yes` if the class is a non-negative combination of proven-nef rays, `No`
/// if it pairs negatively with a recorded curve, `Unknown` otherwise.
pub fn cone_contains(cone: &ConeSlice, class: &NsClass) -> Result<Containment, ConeError> {
    class.check(cone.n, cone.d)?;
    for w in &cone.witnesses {
        if pair(class, &w.curve)?.is_negative() {
            return Ok(Containment::No);
        }
    }
    if class.beta.is_negative() || (class.beta.is_zero() && class.alpha.is_negative()) {
        // Only reachable for cones built without the trivial witness.
        return Ok(Containment::No);
    }
    if class.beta.is_zero() {
        return Ok(Containment::Yes);
    }
    match &cone.nef_slope {
        Some(s) if class.alpha >= &class.beta * s => Ok(Containment::Yes),
        _ => Ok(Containment::Unknown),
    }
}
