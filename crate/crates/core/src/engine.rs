//! Case dispatcher: assembles the best-known nef cone slice of `X^[n]` from
//! the known results, recording every matched dual curve as a witness.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::str::FromStr;

use num_traits::{Signed, Zero};

use crate::algebra::{int, rat, Rational};
use crate::curves::{make_curve, CurveKind};
use crate::ns::{invalid, pair, ConeError, ConeSlice, ConeStatus, CurveClass, NsClass, Witness};
use crate::residuation::{pullback_catalog, PullbackKind, ResiduationMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// Picard group generated by the hyperplane class.
    NlGeneral,
    /// Contains a line.
    ContainsLine,
}

impl SurfaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceKind::NlGeneral => "nl-general",
            SurfaceKind::ContainsLine => "contains-line",
        }
    }
}

impl FromStr for SurfaceKind {
    type Err = ConeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nl-general" => Ok(SurfaceKind::NlGeneral),
            "contains-line" => Ok(SurfaceKind::ContainsLine),
            other => Err(invalid(
                "surface",
                format!("`{other}` (expected nl-general or contains-line)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlexStatus {
    /// The surface has an ordinary surface `r`-flex.
    Ordinary,
    /// The surface has no surface 3-flex at all.
    Absent,
    Unknown,
}

impl FlexStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FlexStatus::Ordinary => "ordinary",
            FlexStatus::Absent => "absent-all-3-flexes",
            FlexStatus::Unknown => "unknown",
        }
    }
}

impl FromStr for FlexStatus {
    type Err = ConeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ordinary" => Ok(FlexStatus::Ordinary),
            "absent" | "absent-all-3-flexes" => Ok(FlexStatus::Absent),
            "unknown" => Ok(FlexStatus::Unknown),
            other => Err(invalid(
                "flex",
                format!("status `{other}` (expected ordinary, absent or unknown)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FlexData {
    pub r: u32,
    pub status: FlexStatus,
}

impl FromStr for FlexData {
    type Err = ConeError;
    /// Parses `R:STATUS`, e.g. `3:absent`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, status) = s
            .split_once(':')
            .ok_or_else(|| invalid("flex", format!("`{s}` (expected R:STATUS)")))?;
        let r = r
            .trim()
            .parse()
            .map_err(|_| invalid("flex", format!("`{r}` is not a non-negative integer")))?;
        Ok(FlexData {
            r,
            status: status.trim().parse()?,
        })
    }
}

impl fmt::Display for FlexData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.r, self.status.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConeQuery {
    pub d: u32,
    pub n: u32,
    pub surface: SurfaceKind,
    pub flex: Option<FlexData>,
}

impl ConeQuery {
    pub fn new(d: u32, n: u32, surface: SurfaceKind) -> Self {
        Self {
            d,
            n,
            surface,
            flex: None,
        }
    }

    pub fn with_flex(mut self, r: u32, status: FlexStatus) -> Self {
        self.flex = Some(FlexData { r, status });
        self
    }

    pub fn validate(&self) -> Result<(), ConeError> {
        if self.n < 2 {
            return Err(invalid("query", format!("n = {} < 2", self.n)));
        }
        match self.surface {
            SurfaceKind::NlGeneral if self.d < 4 => {
                return Err(invalid(
                    "query",
                    format!("nl-general needs d >= 4, got {}", self.d),
                ))
            }
            SurfaceKind::ContainsLine if self.d < 3 => {
                return Err(invalid(
                    "query",
                    format!("contains-line needs d >= 3, got {}", self.d),
                ))
            }
            _ => {}
        }
        if let Some(flex) = self.flex {
            if self.surface == SurfaceKind::ContainsLine {
                return Err(invalid(
                    "query",
                    "flex data applies only to nl-general surfaces",
                ));
            }
            if flex.r < 3 || flex.r > self.d {
                return Err(invalid(
                    "query",
                    format!("flex order r = {} outside 3..={}", flex.r, self.d),
                ));
            }
            if flex.status == FlexStatus::Absent && flex.r != 3 {
                return Err(invalid(
                    "query",
                    "absence data is only meaningful for 3-flexes",
                ));
            }
        }
        Ok(())
    }
}

/// Human-readable meaning of a provenance key.
pub fn provenance_description(key: &str) -> &'static str {
    match key {
        "generic" => "generic bounds: Gamma forces alpha >= 0, Psi forces alpha >= 1/d",
        "large-n" => "for n >= d-1 the class (d/2 - 3/2 + n/d) H - B/2 is nef and extremal",
        "quartic" => "quartic surfaces: the nef cone of X^[2] is spanned by H and 3/4 H - B/2",
        "d-minus-2-bound" => {
            "residuals of lines spun through the node of a tangent section bound X^[d-2]"
        }
        "quintic-x3" => {
            "quintics, n = 3: pullback of the dual-space hyperplane class plus residuation"
        }
        "sextic-x4" => "sextics, n = 4: pullback of the first Schubert class plus residuation",
        "r-flex-bound" => "an ordinary surface r-flex bounds X^[d-r] by spinning lines through it",
        "quintic-x2-flex" => {
            "quintics with an ordinary 3-flex: residuation of H^[3]/5 is nef and extremal"
        }
        "quintic-x2-no-flex" => {
            "quintics without 3-flexes: the class 4/5 H - B/2 is ample, Omega_1 bounds below"
        }
        "quintic-x2-flex-unknown" => {
            "quintics, n = 2: the answer depends on whether a 3-flex exists"
        }
        "contains-line" => {
            "surfaces containing a line: (n-1) H - B/2 is nef and kills the line curve"
        }
        _ => "",
    }
}

struct Builder {
    q: ConeQuery,
    witnesses: Vec<Witness>,
    provenance: Vec<&'static str>,
    notes: Vec<String>,
}

impl Builder {
    fn add(&mut self, kind: CurveKind) -> Result<(), ConeError> {
        let curve = make_curve(kind, self.q.d, self.q.n)?;
        self.witnesses.push(Witness::new(curve));
        Ok(())
    }

    fn lower(&self) -> Rational {
        self.witnesses
            .iter()
            .map(|w| w.bound.clone())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn finish(self, status: ConeStatus, nef_slope: Option<Rational>, strict: bool) -> ConeSlice {
        let lower_slope = self.lower();
        ConeSlice {
            n: self.q.n,
            d: self.q.d,
            status,
            lower_slope,
            nef_slope,
            nef_slope_strict: strict,
            witnesses: self.witnesses,
            provenance: self.provenance,
            notes: self.notes,
        }
    }
}

/// Checks that `(slope, 1)` on `X^[d-2]` is nef: it is the catalog pullback
/// class plus a non-negative multiple of `H`, and its residuation image on
/// `X^[2]` is a non-negative multiple of `H^[2]`.
fn residuation_certificate(
    d: u32,
    slope: &Rational,
    kind: PullbackKind,
) -> Result<String, ConeError> {
    let pb = pullback_catalog(kind);
    let extra = slope - &pb.class.alpha;
    let image = ResiduationMap::new(d)?.pullback(&NsClass::with_slope(slope.clone(), d - 2, d))?;
    if extra.is_negative() || !image.beta.is_zero() || image.alpha.is_negative() {
        return Err(invalid(
            "certificate",
            format!("nef certificate fails at d = {d}"),
        ));
    }
    Ok(format!(
        "nef: ({slope}, 1) = {} + {extra}*H^[{n}], nef off the collinear locus; its residuation image is {}*H^[2], nef on it",
        kind.name(),
        image.alpha,
        n = d - 2,
    ))
}

/// Assembles the best-known cone slice for the query.
pub fn compute_cone(q: &ConeQuery) -> Result<ConeSlice, ConeError> {
    q.validate()?;
    let (d, n) = (q.d, q.n);
    let mut b = Builder {
        q: *q,
        witnesses: Vec::new(),
        provenance: Vec::new(),
        notes: Vec::new(),
    };
    b.add(CurveKind::Gamma)?;
    b.add(CurveKind::Phi)?;
    b.add(CurveKind::Psi)?;

    if q.surface == SurfaceKind::ContainsLine {
        b.add(CurveKind::LineCurve)?;
        b.provenance.push("contains-line");
        b.notes.push(
            "the Picard rank may exceed two; the answer is exact within the H, B slice only".into(),
        );
        let slope = int(i64::from(n) - 1);
        return Ok(b.finish(ConeStatus::SliceExact, Some(slope), false));
    }

    if let Some(flex) = q.flex {
        if n + flex.r != d {
            b.notes.push(format!(
                "flex data {flex} does not match n = d - r and is ignored"
            ));
        }
    }

    if n + 1 >= d {
        // n >= d-1
        b.add(CurveKind::Pencil)?;
        b.provenance.push("large-n");
        let slope = b.lower();
        return Ok(b.finish(ConeStatus::Exact, Some(slope), false));
    }

    if n + 2 == d {
        b.add(CurveKind::ResGamma)?;
        if d >= 5 {
            b.add(CurveKind::ResPsi)?;
        }
        let slope = b.lower();
        return Ok(match d {
            4 => {
                b.provenance.push("quartic");
                b.finish(ConeStatus::Exact, Some(slope), false)
            }
            5 | 6 => {
                let kind = if d == 5 {
                    PullbackKind::P3StarL
                } else {
                    PullbackKind::GrassmannSigma1
                };
                b.provenance
                    .push(if d == 5 { "quintic-x3" } else { "sextic-x4" });
                let cert = residuation_certificate(d, &slope, kind)?;
                b.notes.push(cert);
                b.finish(ConeStatus::Exact, Some(slope), false)
            }
            _ => {
                b.provenance.push("d-minus-2-bound");
                b.notes
                    .push("no nef class is known to reach the bound for d >= 7".into());
                b.finish(ConeStatus::Bounded, None, false)
            }
        });
    }

    if let Some(flex) = q
        .flex
        .filter(|f| f.status == FlexStatus::Ordinary && n + f.r == d)
    {
        b.add(CurveKind::Omega(flex.r))?;
        b.provenance.push("r-flex-bound");
        let slope = b.lower();
        if d == 5 {
            let image = ResiduationMap::new(5)?.inverse_pullback(&NsClass::with_slope(
                slope.clone(),
                2,
                5,
            ))?;
            if !image.beta.is_zero() || image.alpha.is_negative() {
                return Err(invalid(
                    "certificate",
                    "residuation preimage is not a multiple of H^[3]",
                ));
            }
            b.provenance.push("quintic-x2-flex");
            b.notes.push(format!(
                "nef: ({slope}, 1) is the residuation image of {}*H^[3]",
                image.alpha
            ));
            return Ok(b.finish(ConeStatus::Exact, Some(slope), false));
        }
        return Ok(b.finish(ConeStatus::Bounded, None, false));
    }

    if d == 5 && n == 2 {
        b.add(CurveKind::Omega1)?;
        let absent = q.flex.is_some_and(|f| f.status == FlexStatus::Absent);
        if absent {
            b.provenance.push("quintic-x2-no-flex");
            b.notes
                .push("the extremal slope lies in [7/10, 4/5) and is not determined".into());
            return Ok(b.finish(ConeStatus::Bounded, Some(rat(4, 5)), true));
        }
        b.provenance.push("quintic-x2-flex-unknown");
        b.notes.push(
            "the answer depends on 3-flex existence: 4/5 exactly with an ordinary 3-flex, in [7/10, 4/5) without one"
                .into(),
        );
        return Ok(b.finish(ConeStatus::Unknown, None, false));
    }

    b.provenance.push("generic");
    Ok(b.finish(ConeStatus::Unknown, None, false))
}

/// Every query the dispatcher accepts with `d <= max_d` and `n <= d + 2`:
/// both surface kinds, and for nl-general surfaces every flex order with
/// ordinary and unknown status plus absent 3-flexes.
pub fn dispatchable_queries(max_d: u32) -> Vec<ConeQuery> {
    let mut out = Vec::new();
    for d in 3..=max_d {
        for n in 2..=d + 2 {
            out.push(ConeQuery::new(d, n, SurfaceKind::ContainsLine));
            if d < 4 {
                continue;
            }
            let q = ConeQuery::new(d, n, SurfaceKind::NlGeneral);
            out.push(q);
            for r in 3..=d {
                out.push(q.with_flex(r, FlexStatus::Ordinary));
                out.push(q.with_flex(r, FlexStatus::Unknown));
            }
            out.push(q.with_flex(3, FlexStatus::Absent));
        }
    }
    out
}

fn pairing_line(class: &NsClass, curve: &CurveClass) -> Result<String, ConeError> {
    let lhs = &class.alpha * &curve.h;
    let rhs = &class.beta * &curve.b / int(2);
    let value = pair(class, curve)?;
    Ok(format!(
        "pair(({}, {}), {}) = {} - {} = {}",
        class.alpha, class.beta, curve.kind, lhs, rhs, value
    ))
}

/// A readable derivation of [`compute_cone`]: matched results, witnesses
/// and the pairings that show extremality.
pub fn explain(q: &ConeQuery) -> String {
    match explain_inner(q) {
        Ok(s) => s,
        Err(e) => format!("invalid query: {e}\n"),
    }
}

fn explain_inner(q: &ConeQuery) -> Result<String, ConeError> {
    let cone = compute_cone(q)?;
    let mut out = String::new();
    let flex = q
        .flex
        .map(|f| f.to_string())
        .unwrap_or_else(|| "none".into());
    let _ = writeln!(
        out,
        "query: d = {}, n = {}, surface = {}, flex = {flex}",
        q.d,
        q.n,
        q.surface.as_str()
    );
    let _ = writeln!(out, "status: {}", cone.status);
    for key in &cone.provenance {
        let _ = writeln!(out, "matched {key}: {}", provenance_description(key));
    }
    let _ = writeln!(out, "lower slope: {}", cone.lower_slope);
    match &cone.nef_slope {
        Some(s) if cone.nef_slope_strict => {
            let _ = writeln!(
                out,
                "ample at slope {s}; the extremal slope is strictly below"
            );
        }
        Some(s) => {
            let _ = writeln!(out, "nef at slope {s}");
        }
        None => {
            let _ = writeln!(out, "no nef class proven above the lower slope");
        }
    }
    let probe = NsClass::with_slope(cone.lower_slope.clone(), q.n, q.d);
    let _ = writeln!(out, "witnesses:");
    for w in &cone.witnesses {
        let c = &w.curve;
        let bound = if w.trivial {
            "alpha >= 0 (trivial)".to_string()
        } else {
            format!("alpha >= {}", w.bound)
        };
        let _ = writeln!(
            out,
            "  {} (h = {}, b = {}): {bound}; {}",
            c.kind, c.h, c.b, c.provenance
        );
        let _ = writeln!(out, "    {}", pairing_line(&probe, c)?);
    }
    for note in &cone.notes {
        let _ = writeln!(out, "note: {note}");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ns::{cone_contains, Containment};

    fn nl(d: u32, n: u32) -> ConeQuery {
        ConeQuery::new(d, n, SurfaceKind::NlGeneral)
    }

    #[test]
    fn large_n() {
        let c = compute_cone(&nl(5, 4)).unwrap();
        assert_eq!(c.status, ConeStatus::Exact);
        assert_eq!(c.lower_slope, rat(9, 5));
        assert_eq!(c.extremal_witness().unwrap().curve.kind, CurveKind::Pencil);
    }

    #[test]
    fn quintic_x3() {
        let c = compute_cone(&nl(5, 3)).unwrap();
        assert_eq!(
            (c.status, c.lower_slope.clone()),
            (ConeStatus::Exact, rat(7, 5))
        );
        assert!(c.lower_slope < rat(8, 5));
        assert_eq!(
            cone_contains(&c, &NsClass::with_slope(rat(3, 2), 3, 5)).unwrap(),
            Containment::Yes
        );
        assert_eq!(
            cone_contains(&c, &NsClass::with_slope(int(1), 3, 5)).unwrap(),
            Containment::No
        );
    }

    #[test]
    fn d_minus_two_cases() {
        assert_eq!(compute_cone(&nl(4, 2)).unwrap().lower_slope, rat(3, 4));
        assert_eq!(compute_cone(&nl(6, 4)).unwrap().lower_slope, int(2));
        let c = compute_cone(&nl(7, 5)).unwrap();
        assert_eq!(
            (c.status, c.lower_slope, c.nef_slope),
            (ConeStatus::Bounded, rat(18, 7), None)
        );
    }

    #[test]
    fn flex_cases() {
        let c = compute_cone(&nl(5, 2).with_flex(3, FlexStatus::Ordinary)).unwrap();
        assert_eq!((c.status, c.lower_slope), (ConeStatus::Exact, rat(4, 5)));
        let c = compute_cone(&nl(5, 2).with_flex(3, FlexStatus::Absent)).unwrap();
        assert_eq!(c.status, ConeStatus::Bounded);
        assert_eq!(
            (
                c.lower_slope.clone(),
                c.nef_slope.clone(),
                c.nef_slope_strict
            ),
            (rat(7, 10), Some(rat(4, 5)), true)
        );
        assert_eq!(
            cone_contains(&c, &NsClass::with_slope(rat(3, 4), 2, 5)).unwrap(),
            Containment::Unknown
        );
        let c = compute_cone(&nl(5, 2).with_flex(3, FlexStatus::Unknown)).unwrap();
        assert_eq!(
            (c.status, c.lower_slope, c.nef_slope),
            (ConeStatus::Unknown, rat(7, 10), None)
        );
        let c = compute_cone(&nl(8, 2).with_flex(6, FlexStatus::Ordinary)).unwrap();
        assert_eq!((c.status, c.lower_slope), (ConeStatus::Bounded, rat(7, 8)));
    }

    #[test]
    fn contains_line() {
        let c = compute_cone(&ConeQuery::new(3, 2, SurfaceKind::ContainsLine)).unwrap();
        assert_eq!(
            (c.status, c.lower_slope.clone()),
            (ConeStatus::SliceExact, int(1))
        );
        assert_eq!(
            c.extremal_witness().unwrap().curve.kind,
            CurveKind::LineCurve
        );
    }

    #[test]
    fn generic_fallback() {
        let c = compute_cone(&nl(9, 3)).unwrap();
        assert_eq!((c.status, c.lower_slope), (ConeStatus::Unknown, rat(1, 9)));
    }

    #[test]
    fn validation() {
        assert!(compute_cone(&nl(3, 2)).is_err());
        assert!(compute_cone(&nl(5, 1)).is_err());
        assert!(compute_cone(&ConeQuery::new(2, 2, SurfaceKind::ContainsLine)).is_err());
        assert!(compute_cone(&nl(5, 3).with_flex(2, FlexStatus::Ordinary)).is_err());
        assert!(compute_cone(&nl(8, 4).with_flex(4, FlexStatus::Absent)).is_err());
        assert!(compute_cone(
            &ConeQuery::new(5, 2, SurfaceKind::ContainsLine).with_flex(3, FlexStatus::Ordinary)
        )
        .is_err());
        let c = compute_cone(&nl(9, 3).with_flex(4, FlexStatus::Ordinary)).unwrap();
        assert_eq!(c.status, ConeStatus::Unknown);
        assert_eq!(c.notes.len(), 1);
    }

    #[test]
    fn parsing() {
        let f: FlexData = "3:absent".parse().unwrap();
        assert_eq!(
            f,
            FlexData {
                r: 3,
                status: FlexStatus::Absent
            }
        );
        assert!("3".parse::<FlexData>().is_err());
        assert!("x:ordinary".parse::<FlexData>().is_err());
        assert!("3:maybe".parse::<FlexData>().is_err());
        assert_eq!(
            "contains-line".parse::<SurfaceKind>().unwrap(),
            SurfaceKind::ContainsLine
        );
    }

    #[test]
    fn explanations() {
        let s = explain(&nl(6, 4));
        assert!(s.contains("pair((2, 1), res_gamma) = 12 - 12 = 0"), "{s}");
        let s = explain(&nl(5, 2).with_flex(3, FlexStatus::Ordinary));
        assert!(s.contains("pair((4/5, 1), omega(r=3)) = 4 - 4 = 0"), "{s}");
        let s = explain(&nl(4, 2));
        assert!(s.contains("quartic"), "{s}");
        assert!(explain(&nl(2, 2)).starts_with("invalid query"));
    }
}
