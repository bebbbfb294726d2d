//! Local geometry of surfaces in `P^3`: tangent planes, plane sections,
//! multiplicities and tangent cones, surface `r`-flex verdicts, the explicit
//! families `X_{d,r}` and `Y_d`, and the incidence dimension count.
//!
//! A point is a surface `r`-flex when the tangent-plane section has
//! multiplicity at least `r` there, and an ordinary one when the multiplicity
//! is exactly `r` with a squarefree tangent cone. At a smooth point any other
//! plane gives a section smooth at the point, so only the tangent plane is
//! tested.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::algebra::{
    binary_form_squarefree, binomial, int, parse_rational, AlgebraError, MultiPoly, Rational,
};

pub const SURFACE_VARS: [&str; 4] = ["x", "y", "z", "w"];
pub const PLANE_VARS: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("expected {expected} coordinates, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("cannot parse coordinate `{0}`")]
    BadCoordinate(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the point {0} does not lie on the hypersurface")]
    NotOnHypersurface(String),
    #[error(
        "the point {0} is singular; the tangent-plane test is only justified at smooth points"
    )]
    SingularPoint(String),
    #[error("the linear form is zero")]
    ZeroLinearForm,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// A projective point with rational coordinates, scaled so that the last
/// nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint(Vec<Rational>);

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, GeometryError> {
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroPoint)?;
        let inv = coords[last].recip();
        Ok(Self(coords.iter().map(|c| c * &inv).collect()))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&c| int(c)).collect())
    }

    /// Parses `"a,b,c,d"` (or brackets and colons, `"[a:b:c:d]"`) with
    /// `arity` rational coordinates.
    pub fn parse(text: &str, arity: usize) -> Result<Self, GeometryError> {
        let body = text.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = body
            .split([',', ':'])
            .map(|s| {
                parse_rational(s.trim())
                    .ok_or_else(|| GeometryError::BadCoordinate(s.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != arity {
            return Err(GeometryError::WrongArity {
                expected: arity,
                got: coords.len(),
            });
        }
        Self::new(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        self.0
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("nonzero point")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(x^r + y^r) w^(d-r) - z w^(d-1)`, an ordinary `r`-flex at `[0:0:0:1]`.
    Xdr,
    /// `x^d + y^d + z^d - z w^(d-1)`, smooth with a `d`-fold tangent section at `[0:0:0:1]`.
    Yd,
}

impl Family {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "Xdr" | "X_dr" => Some(Family::Xdr),
            "Yd" | "Y_d" => Some(Family::Yd),
            _ => None,
        }
    }
}

fn monomial(exps: [u32; 4], c: i64) -> MultiPoly {
    MultiPoly::from_terms(&SURFACE_VARS, [(exps.to_vec(), int(c))])
}

pub fn make_family(which: Family, d: u32, r: Option<u32>) -> Result<MultiPoly, GeometryError> {
    match which {
        Family::Xdr => {
            let r = r.ok_or_else(|| GeometryError::InvalidParameters("X_dr needs r".into()))?;
            if r < 3 || r > d {
                return Err(GeometryError::InvalidParameters(format!(
                    "X_dr needs d >= r >= 3, got d = {d}, r = {r}"
                )));
            }
            Ok(monomial([r, 0, 0, d - r], 1)
                + monomial([0, r, 0, d - r], 1)
                + monomial([0, 0, 1, d - 1], -1))
        }
        Family::Yd => {
            if d < 3 {
                return Err(GeometryError::InvalidParameters(format!(
                    "Y_d needs d >= 3, got {d}"
                )));
            }
            Ok(monomial([d, 0, 0, 0], 1)
                + monomial([0, d, 0, 0], 1)
                + monomial([0, 0, d, 0], 1)
                + monomial([0, 0, 1, d - 1], -1))
        }
    }
}

fn homogeneous_degree(f: &MultiPoly) -> Result<u32, GeometryError> {
    f.is_homogeneous().ok_or(GeometryError::NotHomogeneous)
}

fn check_arity(f: &MultiPoly, p: &ProjectivePoint) -> Result<(), GeometryError> {
    let expected = f.variables().len();
    if p.coords().len() != expected {
        return Err(GeometryError::WrongArity {
            expected,
            got: p.coords().len(),
        });
    }
    Ok(())
}

/// Gradient of a homogeneous `f` at a point of `V(f)`.
pub fn gradient_at(f: &MultiPoly, p: &ProjectivePoint) -> Result<Vec<Rational>, GeometryError> {
    homogeneous_degree(f)?;
    check_arity(f, p)?;
    if !f.eval(p.coords()).is_zero() {
        return Err(GeometryError::NotOnHypersurface(p.to_string()));
    }
    f.variables()
        .iter()
        .map(|v| Ok(f.partial(v)?.eval(p.coords())))
        .collect()
}

pub fn is_smooth_at(f: &MultiPoly, p: &ProjectivePoint) -> Result<bool, GeometryError> {
    Ok(gradient_at(f, p)?.iter().any(|c| !c.is_zero()))
}

/// The tangent hyperplane `sum dF/dx_i(p) x_i`, with primitive integer coefficients.
pub fn tangent_plane(f: &MultiPoly, p: &ProjectivePoint) -> Result<MultiPoly, GeometryError> {
    let grad = gradient_at(f, p)?;
    if grad.iter().all(Zero::is_zero) {
        return Err(GeometryError::SingularPoint(p.to_string()));
    }
    let vars = f.variables();
    let mut form = MultiPoly::zero(vars);
    for (v, c) in vars.iter().zip(&grad) {
        form = form + MultiPoly::var(vars, v)?.scale(c);
    }
    Ok(form.primitive_integer())
}

/// The restriction of a form to a hyperplane, in the remaining coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneSection {
    /// The restricted form over the variables other than `pivot`.
    pub form: MultiPoly,
    /// The variable eliminated by solving the linear form.
    pub pivot: String,
    /// What the pivot was replaced by.
    pub substitution: MultiPoly,
}

impl PlaneSection {
    /// Drops the pivot coordinate of a point on the hyperplane.
    pub fn project_point(
        &self,
        p: &ProjectivePoint,
        vars: &[String],
    ) -> Result<ProjectivePoint, GeometryError> {
        let i = vars
            .iter()
            .position(|v| *v == self.pivot)
            .expect("pivot variable");
        let mut c = p.coords().to_vec();
        c.remove(i);
        ProjectivePoint::new(c)
    }
}

/// Solves `lambda = 0` for its last variable with nonzero coefficient and
/// substitutes into `f`.
pub fn plane_section(f: &MultiPoly, lambda: &MultiPoly) -> Result<PlaneSection, GeometryError> {
    if lambda.is_zero() {
        return Err(GeometryError::ZeroLinearForm);
    }
    if lambda.is_homogeneous() != Some(1) {
        return Err(GeometryError::InvalidParameters(format!(
            "`{lambda}` is not a linear form"
        )));
    }
    let lambda = lambda.with_variables(f.variables())?;
    let vars = f.variables().to_vec();
    let coeff = |v: &str| -> Result<Rational, GeometryError> {
        Ok(lambda
            .partial(v)?
            .constant_value()
            .unwrap_or_else(Rational::zero))
    };
    let mut pivot = None;
    for v in vars.iter().rev() {
        let c = coeff(v)?;
        if !c.is_zero() {
            pivot = Some((v.clone(), c));
            break;
        }
    }
    let (pivot, c) = pivot.expect("nonzero linear form has a pivot");
    // pivot = -(lambda - c*pivot)/c
    let rest = &lambda - &MultiPoly::var(&vars, &pivot)?.scale(&c);
    let substitution = rest.scale(&-c.recip());
    let others: Vec<String> = vars.iter().filter(|v| **v != pivot).cloned().collect();
    let form = f
        .substitute(&pivot, &substitution)?
        .with_variables(&others)?;
    let substitution = substitution.with_variables(&others)?;
    Ok(PlaneSection {
        form,
        pivot,
        substitution,
    })
}

/// Moves `q` to the origin of its affine chart: the chart variable is set to
/// 1 and the others are translated. The result is over the remaining variables.
pub fn localize(f: &MultiPoly, q: &ProjectivePoint) -> Result<MultiPoly, GeometryError> {
    check_arity(f, q)?;
    let vars = f.variables();
    let k = q.chart();
    let images: Vec<MultiPoly> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i == k {
                Ok(MultiPoly::constant(vars, Rational::one()))
            } else {
                Ok(MultiPoly::var(vars, v)? + MultiPoly::constant(vars, q.coords()[i].clone()))
            }
        })
        .collect::<Result<_, AlgebraError>>()?;
    let local_vars: Vec<&String> = vars
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, v)| v)
        .collect();
    Ok(f.compose(&images).with_variables(&local_vars)?)
}

/// Multiplicity and tangent cone of the affine polynomial `f` at the origin.
pub fn local_multiplicity(f: &MultiPoly) -> Result<(u32, MultiPoly), GeometryError> {
    let m = f.min_total_degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if m == 0 {
        return Err(GeometryError::NotOnHypersurface("origin".into()));
    }
    Ok((m, f.homogeneous_part(m)))
}

/// Multiplicity of the homogeneous form `c` at `q`.
pub fn multiplicity_at(c: &MultiPoly, q: &ProjectivePoint) -> Result<u32, GeometryError> {
    homogeneous_degree(c)?;
    local_multiplicity(&localize(c, q).map_err(|e| not_on(e, q))?)
        .map(|(m, _)| m)
        .map_err(|e| not_on(e, q))
}

/// Lowest-degree part of the local equation of `c` at `q`, in the two local variables.
pub fn tangent_cone(c: &MultiPoly, q: &ProjectivePoint) -> Result<MultiPoly, GeometryError> {
    homogeneous_degree(c)?;
    local_multiplicity(&localize(c, q)?)
        .map(|(_, t)| t)
        .map_err(|e| not_on(e, q))
}

fn not_on(e: GeometryError, q: &ProjectivePoint) -> GeometryError {
    match e {
        GeometryError::NotOnHypersurface(_) => GeometryError::NotOnHypersurface(q.to_string()),
        other => other,
    }
}

/// Whether a binary form in its two variables is squarefree.
pub fn cone_is_squarefree(cone: &MultiPoly) -> Result<bool, GeometryError> {
    let vars = cone.variables();
    if vars.len() != 2 {
        return Err(GeometryError::InvalidParameters(format!(
            "tangent cone over {} variables",
            vars.len()
        )));
    }
    Ok(binary_form_squarefree(cone, &vars[0], &vars[1])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlexVerdict {
    NotAFlex,
    SurfaceFlex { r: u32, ordinary: bool },
}

impl fmt::Display for FlexVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlexVerdict::NotAFlex => f.write_str("not-a-flex"),
            FlexVerdict::SurfaceFlex { r, ordinary: true } => {
                write!(f, "ordinary surface {r}-flex")
            }
            FlexVerdict::SurfaceFlex { r, ordinary: false } => {
                write!(f, "surface {r}-flex (not ordinary)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlexReport {
    pub point: ProjectivePoint,
    pub smooth_at_point: bool,
    pub tangent_plane: MultiPoly,
    pub section: PlaneSection,
    pub multiplicity: u32,
    pub tangent_cone: MultiPoly,
    pub cone_squarefree: bool,
    pub verdict: FlexVerdict,
}

/// Tangent plane, section, multiplicity and tangent cone at a smooth point.
pub fn flex_check(f: &MultiPoly, p: &ProjectivePoint, r: u32) -> Result<FlexReport, GeometryError> {
    let d = homogeneous_degree(f)?;
    if f.variables().len() != 4 {
        return Err(GeometryError::InvalidParameters(
            "surfaces live over four variables".into(),
        ));
    }
    if r < 3 || r > d {
        return Err(GeometryError::InvalidParameters(format!(
            "need 3 <= r <= d, got r = {r}, d = {d}"
        )));
    }
    let plane = tangent_plane(f, p)?;
    let section = plane_section(f, &plane)?;
    let q = section.project_point(p, f.variables())?;
    let local = localize(&section.form, &q)?;
    let (multiplicity, cone) = local_multiplicity(&local).map_err(|e| not_on(e, &q))?;
    let cone_squarefree = cone_is_squarefree(&cone)?;
    let verdict = if multiplicity >= r {
        FlexVerdict::SurfaceFlex {
            r,
            ordinary: multiplicity == r && cone_squarefree,
        }
    } else {
        FlexVerdict::NotAFlex
    };
    Ok(FlexReport {
        point: p.clone(),
        smooth_at_point: true,
        tangent_plane: plane,
        section,
        multiplicity,
        tangent_cone: cone,
        cone_squarefree,
        verdict,
    })
}

/// [`flex_check`] at every sample point. A search aid, not a proof of absence.
pub fn flex_scan(
    f: &MultiPoly,
    sample: &[ProjectivePoint],
    r: u32,
) -> Vec<Result<FlexReport, GeometryError>> {
    sample.iter().map(|p| flex_check(f, p, r)).collect()
}

/// Points of `X_{d,r}` in the chart `w = 1` with `x, y` in `range`; there
/// `z = x^r + y^r`.
pub fn xdr_chart_sample(r: u32, range: core::ops::RangeInclusive<i64>) -> Vec<ProjectivePoint> {
    let mut out = Vec::new();
    for a in range.clone() {
        for b in range.clone() {
            let z = int(a).pow(r as i32) + int(b).pow(r as i32);
            out.push(ProjectivePoint::new(vec![int(a), int(b), z, int(1)]).expect("w = 1"));
        }
    }
    out
}

/// Rational points of `Y_d`: `[0:0:0:1]`, `[0:0:1:1]`, and for odd `d` the
/// points `[1:-1:0:k]` for `k` in `ks`.
pub fn yd_sample(d: u32, ks: &[i64]) -> Vec<ProjectivePoint> {
    let mut out = vec![
        ProjectivePoint::from_ints(&[0, 0, 0, 1]).expect("nonzero"),
        ProjectivePoint::from_ints(&[0, 0, 1, 1]).expect("nonzero"),
    ];
    if d % 2 == 1 {
        out.extend(
            ks.iter()
                .map(|&k| ProjectivePoint::from_ints(&[1, -1, 0, k]).expect("nonzero")),
        );
    }
    out
}

/// Outcome of the gradient-system branching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothnessCertificate {
    /// Every branch forces all coordinates to vanish.
    Smooth { branches: usize },
    /// A point where the form and its gradient vanish.
    SingularWitness(ProjectivePoint),
    /// Some branch has no monomial equation to split on.
    Inconclusive { reason: String },
}

/// Tries to prove that `V(f)` is smooth by branching on monomial equations of
/// the gradient system: a monomial vanishes only if one of its variables does.
/// This decides families such as `Y_d` whose gradient system is triangular;
/// it is not a general decision procedure.
pub fn smoothness_certificate(f: &MultiPoly) -> Result<SmoothnessCertificate, GeometryError> {
    homogeneous_degree(f)?;
    let vars = f.variables().to_vec();
    let grad: Vec<MultiPoly> = vars
        .iter()
        .map(|v| f.partial(v))
        .collect::<Result<_, _>>()?;
    let mut stack: Vec<Vec<bool>> = vec![vec![false; vars.len()]];
    let mut branches = 0;
    while let Some(zeroed) = stack.pop() {
        let mut eqs = Vec::with_capacity(grad.len());
        for g in &grad {
            let mut g = g.clone();
            for (v, _) in vars.iter().zip(&zeroed).filter(|(_, z)| **z) {
                g = g.specialize(v, &Rational::zero())?;
            }
            if !g.is_zero() {
                eqs.push(g);
            }
        }
        if zeroed.iter().all(|z| *z) || eqs.iter().any(|g| g.constant_value().is_some()) {
            branches += 1;
            continue;
        }
        match eqs.iter().find(|g| g.num_terms() == 1) {
            Some(m) => {
                let (exps, _) = m.terms().next().expect("one term");
                for (i, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        let mut next = zeroed.clone();
                        next[i] = true;
                        stack.push(next);
                    }
                }
            }
            None => {
                let point: Vec<Rational> = zeroed
                    .iter()
                    .map(|z| {
                        if *z {
                            Rational::zero()
                        } else {
                            Rational::one()
                        }
                    })
                    .collect();
                let point = ProjectivePoint::new(point)?;
                if f.eval(point.coords()).is_zero()
                    && grad.iter().all(|g| g.eval(point.coords()).is_zero())
                {
                    return Ok(SmoothnessCertificate::SingularWitness(point));
                }
                let free: Vec<&str> = vars
                    .iter()
                    .zip(&zeroed)
                    .filter(|(_, z)| !**z)
                    .map(|(v, _)| v.as_str())
                    .collect();
                return Ok(SmoothnessCertificate::Inconclusive {
                    reason: format!(
                        "no monomial equation once the free variables are {}",
                        free.join(", ")
                    ),
                });
            }
        }
    }
    Ok(SmoothnessCertificate::Smooth { branches })
}

/// Dimension count for the incidence of surfaces, planes and points where the
/// plane section has multiplicity at least `r` at the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IncidenceReport {
    pub d: u32,
    pub r: u32,
    /// `C(d+3, 3)`, the number of coefficients of a degree-`d` form.
    pub n_coeffs: u64,
    /// `N + 4 - C(r+1, 2)`.
    pub dim_sigma: i64,
    /// `N - 1 - C(r+1, 2)`.
    pub fiber_dim: i64,
    /// `d >= C(r+1, 2) - 1`.
    pub threshold_ok: bool,
    /// Lower bound `d - 3` on the codimension of the Noether–Lefschetz locus.
    pub nl_codim_floor: u32,
}

pub fn incidence(d: u32, r: u32) -> Result<IncidenceReport, GeometryError> {
    if r < 3 || r > d {
        return Err(GeometryError::InvalidParameters(format!(
            "need d >= r >= 3, got d = {d}, r = {r}"
        )));
    }
    let n_coeffs = binomial(u64::from(d) + 3, 3);
    let conditions = binomial(u64::from(r) + 1, 2) as i64;
    Ok(IncidenceReport {
        d,
        r,
        n_coeffs,
        dim_sigma: n_coeffs as i64 + 4 - conditions,
        fiber_dim: n_coeffs as i64 - 1 - conditions,
        threshold_ok: i64::from(d) >= conditions - 1,
        nl_codim_floor: d - 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn surf(s: &str) -> MultiPoly {
        parse_poly(s, &SURFACE_VARS).unwrap()
    }

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_ints(c).unwrap()
    }

    #[test]
    fn families() {
        assert_eq!(
            make_family(Family::Xdr, 5, Some(3)).unwrap(),
            surf("(x^3+y^3)*w^2 - z*w^4")
        );
        assert_eq!(
            make_family(Family::Yd, 3, None).unwrap(),
            surf("x^3+y^3+z^3-z*w^2")
        );
        assert_eq!(
            make_family(Family::Xdr, 7, Some(4))
                .unwrap()
                .is_homogeneous(),
            Some(7)
        );
        assert!(make_family(Family::Xdr, 5, Some(6)).is_err());
        assert!(make_family(Family::Xdr, 5, None).is_err());
        assert!(make_family(Family::Yd, 2, None).is_err());
    }

    #[test]
    fn points() {
        let p = ProjectivePoint::parse("2, -2, 0, 4", 4).unwrap();
        assert_eq!(
            p,
            ProjectivePoint::new(vec![int(1) / int(2), -int(1) / int(2), int(0), int(1)]).unwrap()
        );
        assert_eq!(
            ProjectivePoint::parse("[1:-1:0:0]", 4).unwrap().to_string(),
            "[-1:1:0:0]"
        );
        assert!(matches!(
            ProjectivePoint::parse("0,0,0,0", 4),
            Err(GeometryError::ZeroPoint)
        ));
        assert!(matches!(
            ProjectivePoint::parse("1,2", 4),
            Err(GeometryError::WrongArity { .. })
        ));
        assert!(matches!(
            ProjectivePoint::parse("1,a,0,0", 4),
            Err(GeometryError::BadCoordinate(_))
        ));
    }

    #[test]
    fn smoothness_and_tangent_planes() {
        let y5 = make_family(Family::Yd, 5, None).unwrap();
        let origin = pt(&[0, 0, 0, 1]);
        assert!(is_smooth_at(&y5, &origin).unwrap());
        assert_eq!(tangent_plane(&y5, &origin).unwrap(), surf("z"));
        let x53 = make_family(Family::Xdr, 5, Some(3)).unwrap();
        assert!(is_smooth_at(&x53, &origin).unwrap());
        assert_eq!(tangent_plane(&x53, &origin).unwrap(), surf("z"));
        let fermat = surf("x^5+y^5+z^5+w^5");
        assert_eq!(
            tangent_plane(&fermat, &pt(&[1, -1, 0, 0])).unwrap(),
            surf("x + y")
        );
        let node = parse_poly("x*y", &PLANE_VARS).unwrap();
        assert!(!is_smooth_at(&node, &pt(&[0, 0, 1])).unwrap());
        assert!(matches!(
            is_smooth_at(&y5, &pt(&[1, 0, 0, 0])),
            Err(GeometryError::NotOnHypersurface(_))
        ));
        assert!(matches!(
            tangent_plane(&node, &pt(&[0, 0, 1])),
            Err(GeometryError::SingularPoint(_))
        ));
    }

    #[test]
    fn sections() {
        let x53 = make_family(Family::Xdr, 5, Some(3)).unwrap();
        let s = plane_section(&x53, &surf("z")).unwrap();
        assert_eq!(
            s.form,
            parse_poly("(x^3+y^3)*w^2", &["x", "y", "w"]).unwrap()
        );
        let y5 = make_family(Family::Yd, 5, None).unwrap();
        assert_eq!(
            plane_section(&y5, &surf("z")).unwrap().form,
            parse_poly("x^5+y^5", &["x", "y", "w"]).unwrap()
        );
        let s = plane_section(&surf("x*w + y^2 + w^2"), &surf("w")).unwrap();
        assert_eq!(s.form, parse_poly("y^2", &["x", "y", "z"]).unwrap());
        assert!(matches!(
            plane_section(&y5, &surf("0")),
            Err(GeometryError::ZeroLinearForm)
        ));
        assert!(plane_section(&y5, &surf("z^2")).is_err());
    }

    #[test]
    fn multiplicities() {
        let xyw = ["x", "y", "w"];
        let c = parse_poly("(x^3+y^3)*w^2", &xyw).unwrap();
        assert_eq!(multiplicity_at(&c, &pt(&[0, 0, 1])).unwrap(), 3);
        assert_eq!(
            tangent_cone(&c, &pt(&[0, 0, 1])).unwrap(),
            parse_poly("x^3+y^3", &["x", "y"]).unwrap()
        );
        let node = parse_poly("y^2 - x^2 + x^5 + y^5", &["x", "y"]).unwrap();
        let (m, cone) = local_multiplicity(&node).unwrap();
        assert_eq!(
            (m, cone),
            (2, parse_poly("y^2 - x^2", &["x", "y"]).unwrap())
        );
        let c = parse_poly("x^5+y^5", &xyw).unwrap();
        assert_eq!(multiplicity_at(&c, &pt(&[0, 0, 1])).unwrap(), 5);
        assert!(cone_is_squarefree(&tangent_cone(&c, &pt(&[0, 0, 1])).unwrap()).unwrap());
        assert!(matches!(
            multiplicity_at(&c, &pt(&[1, 0, 1])),
            Err(GeometryError::NotOnHypersurface(_))
        ));
        let conic = parse_poly("x^2 - z^2 + y*z", &PLANE_VARS).unwrap();
        assert_eq!(multiplicity_at(&conic, &pt(&[1, 0, 1])).unwrap(), 1);
    }

    #[test]
    fn flex_verdicts() {
        let origin = pt(&[0, 0, 0, 1]);
        let rep = flex_check(&make_family(Family::Xdr, 5, Some(3)).unwrap(), &origin, 3).unwrap();
        assert_eq!(
            rep.verdict,
            FlexVerdict::SurfaceFlex {
                r: 3,
                ordinary: true
            }
        );
        let rep = flex_check(&make_family(Family::Yd, 7, None).unwrap(), &origin, 4).unwrap();
        assert_eq!(rep.multiplicity, 7);
        assert_eq!(
            rep.verdict,
            FlexVerdict::SurfaceFlex {
                r: 4,
                ordinary: false
            }
        );
        let node = surf("x^2*w - y^2*w + z^3");
        assert!(flex_check(&node, &pt(&[0, 0, 0, 1]), 3).is_err());
        assert!(flex_check(&make_family(Family::Yd, 5, None).unwrap(), &origin, 6).is_err());
    }

    #[test]
    fn fermat_points() {
        let fermat = surf("x^5+y^5+z^5+w^5");
        // The tangent section at [1:-1:0:0] is z^5 + w^5 in the plane x + y = 0.
        let rep = flex_check(&fermat, &pt(&[1, -1, 0, 0]), 3).unwrap();
        assert_eq!(rep.multiplicity, 5);
        let rep = flex_check(&fermat, &pt(&[1, -1, 2, -2]), 3).unwrap();
        assert_eq!((rep.multiplicity, rep.verdict), (2, FlexVerdict::NotAFlex));
    }

    #[test]
    fn scans() {
        let x53 = make_family(Family::Xdr, 5, Some(3)).unwrap();
        let reports = flex_scan(&x53, &xdr_chart_sample(3, -2..=2), 3);
        let flexes: Vec<_> = reports
            .iter()
            .map(|r| r.as_ref().unwrap())
            .filter(|r| r.verdict != FlexVerdict::NotAFlex)
            .map(|r| r.point.clone())
            .collect();
        assert_eq!(flexes, [pt(&[0, 0, 0, 1])]);
        assert!(flex_scan(&x53, &[], 3).is_empty());
        let y5 = make_family(Family::Yd, 5, None).unwrap();
        let reports = flex_scan(&y5, &yd_sample(5, &[1, 2]), 3);
        assert_eq!(reports[0].as_ref().unwrap().multiplicity, 5);
        assert!(reports.iter().all(|r| r.is_ok()));
    }

    #[test]
    fn certificates() {
        for d in 3..=9 {
            let y = make_family(Family::Yd, d, None).unwrap();
            assert!(matches!(
                smoothness_certificate(&y).unwrap(),
                SmoothnessCertificate::Smooth { .. }
            ));
            let x = make_family(Family::Xdr, d, Some(d)).unwrap();
            assert_eq!(
                smoothness_certificate(&x).unwrap(),
                SmoothnessCertificate::SingularWitness(pt(&[0, 0, 1, 0]))
            );
        }
        let fermat = surf("x^5+y^5+z^5+w^5");
        assert!(matches!(
            smoothness_certificate(&fermat).unwrap(),
            SmoothnessCertificate::Smooth { .. }
        ));
    }

    #[test]
    fn incidence_counts() {
        let r = incidence(5, 3).unwrap();
        assert_eq!(
            (r.n_coeffs, r.dim_sigma, r.fiber_dim, r.threshold_ok),
            (56, 54, 49, true)
        );
        assert!(!incidence(4, 3).unwrap().threshold_ok);
        let r = incidence(9, 4).unwrap();
        assert_eq!((r.n_coeffs, r.dim_sigma, r.threshold_ok), (220, 214, true));
        assert!(incidence(3, 4).is_err());
    }
}
