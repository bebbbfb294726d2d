//! The residuation pullback `N^1(X^[d-2]) -> N^1(X^[2])` and the pullbacks
//! of the hyperplane class of the dual projective space and of the first
//! Schubert class of the Grassmannian of lines.
//!
//! A length-two scheme spans a line whose residual intersection with `X` has
//! length `d-2`; the pullback of a divisor is determined by its pairings with
//! `Gamma_[2]` and `Psi_[2]`, whose residual images are `res_gamma` and
//! `res_psi`.

use alloc::format;
use core::fmt;

use num_traits::Zero;

use crate::algebra::{int, Rational};
use crate::curves::{make_curve, CurveKind};
use crate::ns::{invalid, pair, ConeError, CurveClass, NsClass};

/// A 2x2 rational matrix acting on `(alpha, beta)` column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix2(pub [[Rational; 2]; 2]);

impl Matrix2 {
    pub fn apply(&self, alpha: &Rational, beta: &Rational) -> (Rational, Rational) {
        let m = &self.0;
        (
            &m[0][0] * alpha + &m[0][1] * beta,
            &m[1][0] * alpha + &m[1][1] * beta,
        )
    }

    pub fn det(&self) -> Rational {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let m = &self.0;
        Some(Matrix2([
            [&m[1][1] / &det, -&m[0][1] / &det],
            [-&m[1][0] / &det, &m[0][0] / &det],
        ]))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// The pullback `psi^* i^*` for a degree-`d` surface, `d >= 5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduationMap {
    pub d: u32,
    pub matrix: Matrix2,
}

/// The closed-form matrix `[[d-1, -(d^2-3d)/2], [d, -(d^2-d-6)/2]]`.
pub fn closed_form_matrix(d: u32) -> Matrix2 {
    let d = i64::from(d);
    Matrix2([
        [int(d - 1), -int(d * d - 3 * d) / int(2)],
        [int(d), -int(d * d - d - 6) / int(2)],
    ])
}

/// Solves for the pullback of `(alpha, beta)` from the two curve pairings:
/// `beta' = D . res_gamma` (since `Gamma_[2] = (0, -2)` reads off `beta'`) and
/// `d*alpha' - beta' = D . res_psi` (since `Psi_[2] = (d, 2)`).
fn pullback_from_curves(
    d: u32,
    alpha: &Rational,
    beta: &Rational,
) -> Result<(Rational, Rational), ConeError> {
    let class = NsClass::new(alpha.clone(), beta.clone(), d - 2, d);
    let beta2 = pair(&class, &make_curve(CurveKind::ResGamma, d, d - 2)?)?;
    let via_psi = pair(&class, &make_curve(CurveKind::ResPsi, d, d - 2)?)?;
    let alpha2 = (via_psi + &beta2) / int(d.into());
    Ok((alpha2, beta2))
}

impl ResiduationMap {
    /// Builds the closed-form matrix and checks both columns against the
    /// values forced by the curve catalog.
    pub fn new(d: u32) -> Result<Self, ConeError> {
        if d < 5 {
            return Err(invalid("residuation", format!("needs d >= 5, got {d}")));
        }
        let matrix = closed_form_matrix(d);
        for (alpha, beta) in [(int(1), int(0)), (int(0), int(-2))] {
            if matrix.apply(&alpha, &beta) != pullback_from_curves(d, &alpha, &beta)? {
                return Err(invalid(
                    "residuation",
                    format!("closed form disagrees with curve pairings at d = {d}"),
                ));
            }
        }
        Ok(Self { d, matrix })
    }

    /// Image of `H^[d-2]`: `(d-1, d)`.
    pub fn image_of_h(&self) -> NsClass {
        self.pullback(&NsClass::h(self.d - 2, self.d))
            .expect("matching parameters")
    }

    /// Image of `B^[d-2]`: `(d^2-3d, d^2-d-6)`.
    pub fn image_of_b(&self) -> NsClass {
        self.pullback(&NsClass::b(self.d - 2, self.d))
            .expect("matching parameters")
    }

    pub fn pullback(&self, class: &NsClass) -> Result<NsClass, ConeError> {
        if class.n != self.d - 2 || class.d != self.d {
            return Err(ConeError::Mismatch {
                n1: class.n,
                d1: class.d,
                n2: self.d - 2,
                d2: self.d,
            });
        }
        let (a, b) = self.matrix.apply(&class.alpha, &class.beta);
        Ok(NsClass::new(a, b, 2, self.d))
    }

    /// Inverse linear map from `X^[2]` back to `X^[d-2]`. Only linear algebra:
    /// there is no geometric inverse.
    pub fn inverse_pullback(&self, class: &NsClass) -> Result<NsClass, ConeError> {
        if class.n != 2 || class.d != self.d {
            return Err(ConeError::Mismatch {
                n1: class.n,
                d1: class.d,
                n2: 2,
                d2: self.d,
            });
        }
        let inv = self
            .matrix
            .inverse()
            .expect("determinant -(d-2)(d-3)/2 is nonzero for d >= 5");
        let (a, b) = inv.apply(&class.alpha, &class.beta);
        Ok(NsClass::new(a, b, self.d - 2, self.d))
    }

    /// The residual image of `Gamma_[2]` or `Psi_[2]` on `X^[d-2]`.
    pub fn pushforward_curve(&self, curve: &CurveClass) -> Result<CurveClass, ConeError> {
        if curve.n != 2 || curve.d != self.d {
            return Err(ConeError::Mismatch {
                n1: curve.n,
                d1: curve.d,
                n2: 2,
                d2: self.d,
            });
        }
        let kind = match curve.kind {
            CurveKind::Gamma => CurveKind::ResGamma,
            CurveKind::Psi => CurveKind::ResPsi,
            _ => return Err(ConeError::UnsupportedCurve(curve.name().into())),
        };
        make_curve(kind, self.d, self.d - 2)
    }

    /// `pullback(D) . C == D . pushforward(C)`.
    pub fn adjoint_check(&self, curve: &CurveClass, class: &NsClass) -> Result<bool, ConeError> {
        let (lhs, rhs) = self.adjoint_sides(curve, class)?;
        Ok(lhs == rhs)
    }

    /// Both sides of the projection formula, for display.
    pub fn adjoint_sides(
        &self,
        curve: &CurveClass,
        class: &NsClass,
    ) -> Result<(Rational, Rational), ConeError> {
        let image = self.pushforward_curve(curve)?;
        Ok((pair(&self.pullback(class)?, curve)?, pair(class, &image)?))
    }
}

/// The two pullback classes that are nef away from the collinear locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PullbackKind {
    /// Hyperplane class of the dual projective space, via the plane spanned
    /// by a length-3 scheme on a quintic.
    P3StarL,
    /// First Schubert class, via the line spanned by a length-4 scheme on a sextic.
    GrassmannSigma1,
}

impl PullbackKind {
    pub fn name(self) -> &'static str {
        match self {
            PullbackKind::P3StarL => "P3star_L",
            PullbackKind::GrassmannSigma1 => "Grassmann_sigma1",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "P3star_L" => Some(PullbackKind::P3StarL),
            "Grassmann_sigma1" => Some(PullbackKind::GrassmannSigma1),
            _ => None,
        }
    }
}

/// A pullback class together with the two enumerative counts that fix it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackClass {
    pub kind: PullbackKind,
    pub class: NsClass,
    /// The two test curves and their counted intersection with the class.
    pub counts: [(CurveClass, Rational); 2],
    /// Where the class is known to be nef.
    pub nef_locus: &'static str,
}

/// Solves `alpha*h - (beta/2)*b = count` for the two counted curves.
fn solve_from_counts(
    first: (&CurveClass, &Rational),
    second: (&CurveClass, &Rational),
) -> (Rational, Rational) {
    let (c1, v1) = first;
    let (c2, v2) = second;
    // [h1, -b1/2; h2, -b2/2] (alpha, beta) = (v1, v2)
    let m = Matrix2([
        [c1.h.clone(), -&c1.b / int(2)],
        [c2.h.clone(), -&c2.b / int(2)],
    ]);
    m.inverse().expect("independent test curves").apply(v1, v2)
}

pub fn pullback_catalog(kind: PullbackKind) -> PullbackClass {
    let (d, n, curves) = match kind {
        // The planes through a spinning tangent vector at a point form a
        // line in the dual space; the plane sections through three points on
        // a moving section count the d points of that section.
        PullbackKind::P3StarL => (5, 3, [(CurveKind::Gamma, 1), (CurveKind::Phi, 5)]),
        // Schubert counts of the lines spanned by four points meeting a fixed line.
        PullbackKind::GrassmannSigma1 => (6, 4, [(CurveKind::Phi, 12), (CurveKind::Psi, 11)]),
    };
    let counts = curves.map(|(k, v)| (make_curve(k, d, n).expect("catalog curve"), int(v)));
    let (alpha, beta) =
        solve_from_counts((&counts[0].0, &counts[0].1), (&counts[1].0, &counts[1].1));
    PullbackClass {
        kind,
        class: NsClass::new(alpha, beta, n, d),
        counts,
        nef_locus: "nef on curves not contained in the collinear locus S_X",
    }
}
