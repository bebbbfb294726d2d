//! Branch-point counts by brute force, independent of Riemann–Hurwitz.
//!
//! A plane curve of degree `d` with a point of multiplicity `m` is projected
//! from that point by the pencil of lines through it. Each line meets the
//! curve in `d - m` further points, cut out by a binary form `h(s, u; t)`;
//! the branch points are the zeros of its discriminant in the pencil
//! parameter `t`, counted with multiplicity over both charts of the pencil.
//!
//! The prediction from the genus formula only holds when the center is the
//! sole singularity and the projection is generic; a squarefree discriminant
//! and a matching count are the evidence for that, and a disagreement is
//! reported rather than absorbed.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::One;

use crate::algebra::{binary_form_discriminant, AlgebraError, MultiPoly, Rational, UniPoly};
use crate::curves::{ramification_degree, GenusProfile};
use crate::flex::{
    cone_is_squarefree, local_multiplicity, localize, GeometryError, ProjectivePoint, PLANE_VARS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected a plane curve over x, y, z")]
    NotPlaneCurve,
    #[error("the center has multiplicity {0} = d; no residual points to project")]
    ResidualDegreeZero(u32),
    #[error(
        "degenerate instance: the curve contains the line(s) through the center cut out by {0}"
    )]
    LineThroughCenter(String),
    #[error("the discriminant vanishes identically: the residual has a repeated component")]
    ZeroDiscriminant,
}

/// Reads a plane curve over `x, y, z`. An inhomogeneous input not involving
/// `z` is an affine equation and is homogenized with `z`.
pub fn plane_curve(f: &MultiPoly) -> Result<MultiPoly, OracleError> {
    let f = f
        .with_variables(&PLANE_VARS)
        .map_err(|_| OracleError::NotPlaneCurve)?;
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial.into());
    }
    if f.is_homogeneous().is_some() {
        return Ok(f);
    }
    if f.degree_in("z")? != Some(0) {
        return Err(GeometryError::NotHomogeneous.into());
    }
    let d = f.total_degree().expect("nonzero");
    Ok(MultiPoly::from_terms(
        &PLANE_VARS,
        f.terms()
            .map(|(e, c)| (alloc::vec![e[0], e[1], d - e[0] - e[1]], c.clone())),
    ))
}

/// A plane curve with a chosen center on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilProjection {
    pub curve: MultiPoly,
    pub center: ProjectivePoint,
    pub degree: u32,
    pub multiplicity: u32,
    /// The curve's affine equation with the center at the origin.
    pub local: MultiPoly,
    /// Whether the tangent cone at the center is squarefree.
    pub ordinary_center: bool,
}

impl PencilProjection {
    pub fn new(curve: &MultiPoly, center: &ProjectivePoint) -> Result<Self, OracleError> {
        let curve = plane_curve(curve)?;
        let degree = curve.is_homogeneous().expect("plane_curve returns a form");
        let local = localize(&curve, center)?;
        let (multiplicity, cone) = local_multiplicity(&local).map_err(|e| match e {
            GeometryError::NotOnHypersurface(_) => {
                GeometryError::NotOnHypersurface(center.to_string())
            }
            other => other,
        })?;
        Ok(Self {
            curve,
            center: center.clone(),
            degree,
            multiplicity,
            local,
            ordinary_center: cone_is_squarefree(&cone)?,
        })
    }

    pub fn residual_degree(&self) -> u32 {
        self.degree - self.multiplicity
    }
}

/// The residual binary form in both pencil charts: entry `j` is the
/// coefficient of `s^j u^(e-j)`, a polynomial in `t`. Chart A uses the line
/// direction `(1, t)`, chart B uses `(t, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualForm {
    pub residual_degree: u32,
    pub chart_a: Vec<UniPoly>,
    pub chart_b: Vec<UniPoly>,
}

fn chart_coefficients(p: &PencilProjection, swap: bool) -> Result<Vec<UniPoly>, OracleError> {
    let t = ["t"];
    let one = MultiPoly::constant(&t, Rational::one());
    let tv = MultiPoly::var(&t, "t")?;
    let dir = if swap { [tv, one] } else { [one, tv] };
    (p.multiplicity..=p.degree)
        .map(|k| {
            Ok(UniPoly::from_multi(
                &p.local.homogeneous_part(k).compose(&dir),
                "t",
            )?)
        })
        .collect()
}

pub fn residual_form(p: &PencilProjection) -> Result<ResidualForm, OracleError> {
    if p.residual_degree() == 0 {
        return Err(OracleError::ResidualDegreeZero(p.multiplicity));
    }
    Ok(ResidualForm {
        residual_degree: p.residual_degree(),
        chart_a: chart_coefficients(p, false)?,
        chart_b: chart_coefficients(p, true)?,
    })
}

/// Branch points counted with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCount {
    /// Zeros in chart A plus the zero at the point chart A misses.
    pub count: u64,
    /// The same total computed from chart B.
    pub count_swapped: u64,
    /// The discriminant has only simple zeros on the whole pencil.
    pub squarefree: bool,
    pub discriminant_a: UniPoly,
    pub discriminant_b: UniPoly,
}

fn content(coeffs: &[UniPoly]) -> UniPoly {
    coeffs.iter().fold(UniPoly::default(), |g, c| g.gcd(c))
}

fn discriminant(coeffs: &[UniPoly]) -> Result<UniPoly, OracleError> {
    if coeffs.len() < 3 {
        // A linear residual never collides.
        return Ok(UniPoly::from(Rational::one()));
    }
    let multi: Vec<MultiPoly> = coeffs.iter().map(|c| c.to_multi("t")).collect();
    let disc = UniPoly::from_multi(&binary_form_discriminant(&multi), "t")?;
    if disc.is_zero() {
        return Err(OracleError::ZeroDiscriminant);
    }
    Ok(disc)
}

pub fn branch_count(p: &PencilProjection) -> Result<BranchCount, OracleError> {
    let form = residual_form(p)?;
    for (chart, coeffs) in [
        ("t (direction (1, t))", &form.chart_a),
        ("t (direction (t, 1))", &form.chart_b),
    ] {
        let g = content(coeffs);
        if g.degree().unwrap_or(0) > 0 {
            return Err(OracleError::LineThroughCenter(format!(
                "{} in {chart}",
                g.to_multi("t")
            )));
        }
    }
    let (da, db) = (discriminant(&form.chart_a)?, discriminant(&form.chart_b)?);
    let deg = |u: &UniPoly| u.degree().expect("nonzero") as u64;
    let ord = |u: &UniPoly| u.order_at_zero().expect("nonzero") as u64;
    Ok(BranchCount {
        count: deg(&da) + ord(&db),
        count_swapped: deg(&db) + ord(&da),
        squarefree: da.is_squarefree() && ord(&db) <= 1,
        discriminant_a: da,
        discriminant_b: db,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Agrees,
    /// The count or squarefreeness disagrees with the prediction.
    Mismatch,
    /// No genus profile applies (non-ordinary center).
    NoPrediction,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Agrees => "agrees",
            Verdict::Mismatch => "mismatch: extra singularities or non-generic instance",
            Verdict::NoPrediction => "no prediction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub degree: u32,
    pub multiplicity: u32,
    pub ordinary_center: bool,
    pub profile: Option<GenusProfile>,
    pub count: u64,
    pub squarefree: bool,
    pub predicted: Option<u64>,
    pub verdict: Verdict,
}

/// Counts branch points and compares with `2g - 2 + 2(d - m)`, where the
/// genus comes from `profile` or, when absent, from the center's multiplicity
/// if the center is ordinary.
pub fn ramification_check(
    curve: &MultiPoly,
    center: &ProjectivePoint,
    profile: Option<GenusProfile>,
) -> Result<OracleReport, OracleError> {
    let p = PencilProjection::new(curve, center)?;
    let bc = branch_count(&p)?;
    let profile = profile.or_else(|| {
        p.ordinary_center
            .then(|| GenusProfile::from_multiplicity(p.multiplicity))
            .flatten()
    });
    let predicted = profile
        .and_then(|pr| pr.genus(p.degree))
        .map(|g| ramification_degree(g, p.residual_degree().into()));
    let verdict = match predicted {
        Some(v) if v == bc.count && bc.squarefree => Verdict::Agrees,
        Some(_) => Verdict::Mismatch,
        None => Verdict::NoPrediction,
    };
    Ok(OracleReport {
        degree: p.degree,
        multiplicity: p.multiplicity,
        ordinary_center: p.ordinary_center,
        profile,
        count: bc.count,
        squarefree: bc.squarefree,
        predicted,
        verdict,
    })
}

/// The discriminant of the residual form has degree `m(2e-2) + e(e-1)` as a
/// form on the pencil, where `e = d - m`.
pub fn expected_discriminant_degree(d: u32, m: u32) -> u64 {
    let (m, e) = (u64::from(m), u64::from(d - m));
    if e < 2 {
        return 0;
    }
    m * (2 * e - 2) + e * (e - 1)
}
