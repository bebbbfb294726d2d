//! Test curves on `X^[n]` and their intersection numbers.
//!
//! Nothing here is a hard-coded table: every `C.B` comes from either a
//! Riemann–Hurwitz count for a projection of a plane curve, or a count of
//! collisions of a moving point with fixed points (each collision meets
//! `B^[n]` with multiplicity two). The closed forms live in the tests.

use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::algebra::{binomial, int, Rational};
use crate::ns::{invalid, ConeError, CurveClass};

/// Singularity profile of a degree-`d` plane curve with at most one singular point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusProfile {
    Smooth,
    Node,
    /// An ordinary point of multiplicity `r`.
    OrdinaryMultiplicity(u32),
}

impl GenusProfile {
    /// Geometric genus; `None` when the profile is impossible in degree `d`.
    pub fn genus(self, d: u32) -> Option<u64> {
        let arith = binomial(u64::from(d).checked_sub(1)?, 2);
        let delta = match self {
            GenusProfile::Smooth => 0,
            GenusProfile::Node => 1,
            GenusProfile::OrdinaryMultiplicity(r) => binomial(r.into(), 2),
        };
        arith.checked_sub(delta)
    }

    /// Profile of a point of multiplicity `m` with distinct tangents.
    pub fn from_multiplicity(m: u32) -> Option<Self> {
        match m {
            0 => None,
            1 => Some(GenusProfile::Smooth),
            2 => Some(GenusProfile::Node),
            r => Some(GenusProfile::OrdinaryMultiplicity(r)),
        }
    }
}

/// Degree of the ramification divisor of a degree-`map_degree` map from a
/// smooth curve of genus `g` to the projective line: `2g - 2 + 2*map_degree`.
pub fn ramification_degree(g: u64, map_degree: u64) -> u64 {
    assert!(map_degree >= 1, "map degree must be positive");
    2 * g + 2 * map_degree - 2
}

/// The named curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    /// Fix `n-1` general points and spin a tangent vector at one of them.
    Gamma,
    /// Fix `n-1` points and move the last along a general hyperplane section.
    Phi,
    /// Fix `n-2` points and a point of a hyperplane section; move the last along it.
    Psi,
    /// Residuals of lines spun through the node of a tangent-plane section, on `X^[d-2]`.
    ResGamma,
    /// Residuals of `Psi` on `X^[2]`, viewed on `X^[d-2]`.
    ResPsi,
    /// Residuals of lines spun through an ordinary `r`-fold point of a tangent-plane section.
    Omega(u32),
    /// Pairs among the three residual points of tangent lines at a point of a quintic, on `X^[2]`.
    Omega1,
    /// Fix `n-1` points on a line in `X` and move the last along the line.
    LineCurve,
    /// A base-point-free pencil of degree-`n` divisors on a smooth hyperplane section.
    Pencil,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Gamma => "gamma",
            CurveKind::Phi => "phi",
            CurveKind::Psi => "psi",
            CurveKind::ResGamma => "res_gamma",
            CurveKind::ResPsi => "res_psi",
            CurveKind::Omega(_) => "omega",
            CurveKind::Omega1 => "omega1",
            CurveKind::LineCurve => "line_curve",
            CurveKind::Pencil => "pencil",
        }
    }

    /// Parses a curve name; `omega` takes its `r` from the argument.
    pub fn parse(name: &str, r: Option<u32>) -> Result<Self, ConeError> {
        Ok(match name {
            "gamma" => CurveKind::Gamma,
            "phi" => CurveKind::Phi,
            "psi" => CurveKind::Psi,
            "res_gamma" => CurveKind::ResGamma,
            "res_psi" => CurveKind::ResPsi,
            "omega" => CurveKind::Omega(r.ok_or_else(|| invalid("omega", "needs r"))?),
            "omega1" => CurveKind::Omega1,
            "line_curve" => CurveKind::LineCurve,
            "pencil" => CurveKind::Pencil,
            other => return Err(ConeError::UnsupportedCurve(other.into())),
        })
    }
}

impl FromStr for CurveKind {
    type Err = ConeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, None)
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::Omega(r) => write!(f, "omega(r={r})"),
            other => f.write_str(other.name()),
        }
    }
}

/// A point moving along a plane curve of degree `path_degree` while
/// `fixed_on_path` of the fixed points lie on that curve.
fn moving_point(path_degree: u32, fixed_on_path: u32) -> (Rational, Rational) {
    (int(path_degree.into()), int(2 * i64::from(fixed_on_path)))
}

/// Intersection numbers from a projection: `C.H = h`, `C.B` = ramification of
/// a degree-`map_degree` map from the normalization of a plane curve with the
/// given profile.
fn projection(
    d: u32,
    profile: GenusProfile,
    map_degree: u32,
    h: u64,
) -> Result<(Rational, Rational), ConeError> {
    let g = profile.genus(d).ok_or_else(|| {
        invalid(
            "projection",
            format!("{profile:?} impossible in degree {d}"),
        )
    })?;
    let b = ramification_degree(g, map_degree.into());
    Ok((int(h as i64), int(b as i64)))
}

/// Builds the curve `kind` on `X^[n]` for a degree-`d` surface.
pub fn make_curve(kind: CurveKind, d: u32, n: u32) -> Result<CurveClass, ConeError> {
    let what = kind.name();
    if d < 3 {
        return Err(invalid(what, format!("surface degree {d} < 3")));
    }
    if n < 2 {
        return Err(invalid(what, format!("n = {n} < 2")));
    }
    let (h, b, provenance) = match kind {
        CurveKind::Gamma => (
            int(0),
            int(-2),
            "spinning tangent vector at a fixed point; contracted by Hilbert-Chow",
        ),
        CurveKind::Phi => {
            let (h, b) = moving_point(d, 0);
            (h, b, "one point moving along a general hyperplane section")
        }
        CurveKind::Psi => {
            let (h, b) = moving_point(d, 1);
            (
                h,
                b,
                "one point moving along a hyperplane section through a fixed point",
            )
        }
        CurveKind::ResGamma => {
            if d < 4 || n != d - 2 {
                return Err(invalid(
                    what,
                    format!("lives on X^[d-2] with d >= 4, got d = {d}, n = {n}"),
                ));
            }
            let (h, b) = projection(d, GenusProfile::Node, d - 2, d.into())?;
            (
                h,
                b,
                "lines spun through the node of a tangent-plane section; residual length d-2",
            )
        }
        CurveKind::ResPsi => {
            if d < 5 || n != d - 2 {
                return Err(invalid(
                    what,
                    format!("lives on X^[d-2] with d >= 5, got d = {d}, n = {n}"),
                ));
            }
            // Each branch point of the projection from the fixed point
            // contributes d-3 non-reduced residual schemes; the residuals of
            // the d points of a hyperplane meet it in d-2 points each.
            let (_, ram) = projection(d, GenusProfile::Smooth, d - 1, 0)?;
            let h = int(i64::from(d) * i64::from(d - 2));
            (
                h,
                ram * int(i64::from(d - 3)),
                "residuals of the psi curve on X^[2]",
            )
        }
        CurveKind::Omega(r) => {
            if r < 3 || r > d || n != d - r {
                return Err(invalid(
                    what,
                    format!("needs 3 <= r and n = d - r, got d = {d}, n = {n}, r = {r}"),
                ));
            }
            let (h, b) = projection(d, GenusProfile::OrdinaryMultiplicity(r), d - r, d.into())?;
            (h, b, "lines spun through an ordinary r-fold point of a tangent-plane section; residual length d-r")
        }
        CurveKind::Omega1 => {
            if d != 5 || n != 2 {
                return Err(invalid(
                    what,
                    format!("defined only for d = 5, n = 2, got d = {d}, n = {n}"),
                ));
            }
            // The pairs are indexed by the complementary residual point, so the
            // curve is the normalized nodal tangent section with its degree-3
            // projection; each of the d points of a hyperplane section lies in
            // d-3 pairs.
            let (_, b) = projection(d, GenusProfile::Node, d - 2, 0)?;
            (
                int(i64::from(d * (d - 3))),
                b,
                "pairs of residual points of tangent lines at a general point",
            )
        }
        CurveKind::LineCurve => {
            let (h, b) = moving_point(1, n - 1);
            (h, b, "one point moving along a line in X through n-1 fixed points; contracted by the Grassmannian map")
        }
        CurveKind::Pencil => {
            if n + 1 < d {
                return Err(invalid(
                    what,
                    format!("needs n >= d - 1, got d = {d}, n = {n}"),
                ));
            }
            let (h, b) = projection(d, GenusProfile::Smooth, n, d.into())?;
            (
                h,
                b,
                "base-point-free degree-n pencil on a smooth plane section",
            )
        }
    };
    Ok(CurveClass {
        kind,
        h,
        b,
        n,
        d,
        provenance,
    })
}

/// Every catalog curve that can be built on `X^[n]` for a degree-`d` surface
/// (with `r` for `omega`), in a fixed order.
pub fn catalog(d: u32, n: u32, r: Option<u32>) -> alloc::vec::Vec<CurveClass> {
    let mut kinds = alloc::vec![
        CurveKind::Gamma,
        CurveKind::Phi,
        CurveKind::Psi,
        CurveKind::ResGamma,
        CurveKind::ResPsi,
    ];
    if let Some(r) = r {
        kinds.push(CurveKind::Omega(r));
    }
    kinds.extend([CurveKind::Omega1, CurveKind::LineCurve, CurveKind::Pencil]);
    kinds
        .into_iter()
        .filter_map(|k| make_curve(k, d, n).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::ns::slope_bound_from_curve;

    fn hb(kind: CurveKind, d: u32, n: u32) -> (Rational, Rational) {
        let c = make_curve(kind, d, n).unwrap();
        (c.h, c.b)
    }

    #[test]
    fn genus_profiles() {
        assert_eq!(GenusProfile::Smooth.genus(5), Some(6));
        assert_eq!(GenusProfile::Node.genus(5), Some(5));
        assert_eq!(GenusProfile::OrdinaryMultiplicity(3).genus(5), Some(3));
        assert_eq!(GenusProfile::OrdinaryMultiplicity(5).genus(4), None);
    }

    #[test]
    fn ramification_examples() {
        assert_eq!(
            ramification_degree(GenusProfile::Node.genus(5).unwrap(), 3),
            14
        );
        assert_eq!(
            ramification_degree(GenusProfile::Smooth.genus(5).unwrap(), 4),
            18
        );
        assert_eq!(
            ramification_degree(GenusProfile::OrdinaryMultiplicity(3).genus(5).unwrap(), 2),
            8
        );
    }

    #[test]
    fn basic_curves() {
        assert_eq!(hb(CurveKind::Gamma, 7, 4), (int(0), int(-2)));
        assert_eq!(hb(CurveKind::Phi, 7, 4), (int(7), int(0)));
        assert_eq!(hb(CurveKind::Psi, 7, 4), (int(7), int(2)));
    }

    #[test]
    fn residual_curves() {
        assert_eq!(hb(CurveKind::ResGamma, 6, 4), (int(6), int(24)));
        assert_eq!(hb(CurveKind::ResPsi, 5, 3), (int(15), int(36)));
        assert_eq!(hb(CurveKind::Omega(3), 5, 2), (int(5), int(8)));
        let omega = make_curve(CurveKind::Omega(3), 5, 2).unwrap();
        assert_eq!(slope_bound_from_curve(&omega).unwrap(), rat(4, 5));
        assert_eq!(hb(CurveKind::Omega1, 5, 2), (int(10), int(14)));
    }

    #[test]
    fn line_curve_and_pencil() {
        assert_eq!(hb(CurveKind::LineCurve, 3, 4), (int(1), int(6)));
        // Pencil on a smooth quintic section at n = 4: genus 6, degree 4.
        assert_eq!(hb(CurveKind::Pencil, 5, 4), (int(5), int(18)));
    }

    #[test]
    fn parameter_violations() {
        assert!(make_curve(CurveKind::ResGamma, 5, 2).is_err());
        assert!(make_curve(CurveKind::ResGamma, 3, 1).is_err());
        assert!(make_curve(CurveKind::Omega(2), 5, 3).is_err());
        assert!(make_curve(CurveKind::Omega(3), 5, 3).is_err());
        assert!(make_curve(CurveKind::Omega1, 6, 2).is_err());
        assert!(make_curve(CurveKind::Pencil, 6, 4).is_err());
        assert!(make_curve(CurveKind::Gamma, 2, 2).is_err());
    }

    #[test]
    fn quartic_boundary_matches_known_slope() {
        let c = make_curve(CurveKind::ResGamma, 4, 2).unwrap();
        assert_eq!(slope_bound_from_curve(&c).unwrap(), rat(3, 4));
    }

    #[test]
    fn catalog_listing() {
        let names: alloc::vec::Vec<_> = catalog(5, 3, None).iter().map(|c| c.name()).collect();
        assert_eq!(
            names,
            ["gamma", "phi", "psi", "res_gamma", "res_psi", "line_curve"]
        );
        let names: alloc::vec::Vec<_> = catalog(5, 2, Some(3)).iter().map(|c| c.name()).collect();
        assert_eq!(
            names,
            ["gamma", "phi", "psi", "omega", "omega1", "line_curve"]
        );
    }
}
