//! The acceptance suite behind `nefcone verify`. Each criterion runs a batch
//! of exact checks and reports how many ran and which failed.

use std::fmt;

use nefcone_core::algebra::{discriminant, int, is_squarefree, rat, resultant, UniPoly};
use nefcone_core::curves::{make_curve, ramification_degree};
use nefcone_core::engine::dispatchable_queries;
use nefcone_core::engine::FlexStatus;
use nefcone_core::flex::{
    cone_is_squarefree, flex_check, incidence, make_family, multiplicity_at,
    smoothness_certificate, tangent_cone, Family, FlexVerdict, ProjectivePoint,
    SmoothnessCertificate, PLANE_VARS,
};
use nefcone_core::ns::{cone_contains, pair, Containment};
use nefcone_core::oracle::{branch_count, plane_curve, PencilProjection};
use nefcone_core::residuation::{closed_form_matrix, ResiduationMap};
use nefcone_core::{
    compute_cone, parse_poly, ConeQuery, ConeStatus, CurveKind, GenusProfile, MultiPoly, NsClass,
    Rational, SurfaceKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Nodal quintic with its node at `[0:0:1]`.
pub const NODAL_QUINTIC: &str = "y^2 - x^2 + x^3 + x^4 + y^5 + x^5";
/// Quintic with an ordinary triple point at `[0:0:1]`.
pub const TRIPLE_POINT_QUINTIC: &str = "x^3 + y^3 + x^2*y^2 + x^5 + 2*y^5";
/// Smooth quintic through `[0:0:1]`.
pub const SMOOTH_QUINTIC: &str = "y + x^2 + x*y^2 + x^3 + y^4 + x^5 + y^5";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    /// The first few failures, empty on success.
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {}: {verdict} {} ({} checks)",
            self.id, self.name, self.checks
        )?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        self.checks += 1;
        if got != want {
            self.failures
                .push(format!("{}: got {got:?}, want {want:?}", what()));
        }
    }

    /// Records an error from a computation that should have succeeded.
    fn ok<T, E: fmt::Display>(
        &mut self,
        r: Result<T, E>,
        what: impl FnOnce() -> String,
    ) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self, id: u8, name: &'static str) -> CriterionResult {
        let mut detail: Vec<String> = self.failures.iter().take(3).cloned().collect();
        if self.failures.len() > 3 {
            detail.push(format!("and {} more", self.failures.len() - 3));
        }
        CriterionResult {
            id,
            name,
            passed: self.failures.is_empty(),
            checks: self.checks,
            detail: detail.join("; "),
        }
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        curve_table(),
        residuation_identities(),
        dispatch_table(),
        orthogonality(),
        flex_certification(),
        incidence_arithmetic(),
        oracle_equivalence(),
        property_suites(seed),
    ]
}

pub fn curve_table() -> CriterionResult {
    let mut c = Checker::default();
    for d in 5..=40u32 {
        let di = i64::from(d);
        let Some(curve) = c.ok(make_curve(CurveKind::ResGamma, d, d - 2), || {
            format!("res_gamma at d = {d}")
        }) else {
            continue;
        };
        c.eq(
            (curve.h.clone(), curve.b.clone()),
            (int(di), int(di * di - di - 6)),
            || format!("res_gamma at d = {d}"),
        );
        let rh = GenusProfile::Node
            .genus(d)
            .map(|g| ramification_degree(g, (d - 2).into()));
        c.eq(rh.map(|v| int(v as i64)), Some(curve.b), || {
            format!("Riemann-Hurwitz at d = {d}")
        });
    }
    c.finish(1, "curve table")
}

pub fn residuation_identities() -> CriterionResult {
    let mut c = Checker::default();
    for d in 5..=40u32 {
        let di = i64::from(d);
        let Some(m) = c.ok(ResiduationMap::new(d), || format!("residuation at d = {d}")) else {
            continue;
        };
        c.eq(m.matrix.clone(), closed_form_matrix(d), || {
            format!("matrix at d = {d}")
        });
        // Column images: H -> (d-1)H - (d/2)B, B -> (d^2-3d)H - ((d^2-d-6)/2)B.
        let h = m.image_of_h();
        c.eq((h.alpha, h.beta), (int(di - 1), int(di)), || {
            format!("image of H at d = {d}")
        });
        let b = m.image_of_b();
        c.eq(
            (b.alpha, b.beta),
            (int(di * di - 3 * di), int(di * di - di - 6)),
            || format!("image of B at d = {d}"),
        );
        let kernel = NsClass::with_slope(rat(di * di - di - 6, 2 * di), d - 2, d);
        if let Some(image) = c.ok(m.pullback(&kernel), || format!("kernel class at d = {d}")) {
            c.eq(image.beta, int(0), || format!("kernel identity at d = {d}"));
        }
        for kind in [CurveKind::Gamma, CurveKind::Psi] {
            let Some(curve) = c.ok(make_curve(kind, d, 2), || format!("{kind} at d = {d}")) else {
                continue;
            };
            for class in [NsClass::h(d - 2, d), NsClass::b(d - 2, d)] {
                let ok = m.adjoint_check(&curve, &class);
                c.check(ok == Ok(true), || {
                    format!("adjoint {kind} x {class} at d = {d}: {ok:?}")
                });
            }
        }
    }
    c.finish(2, "residuation identities")
}

struct Expected {
    query: ConeQuery,
    status: ConeStatus,
    lower: Rational,
    nef: Option<Rational>,
    strict: bool,
}

fn expected_table() -> Vec<Expected> {
    let nl = |d, n| ConeQuery::new(d, n, SurfaceKind::NlGeneral);
    let exact = |query: ConeQuery, s: Rational| Expected {
        query,
        status: ConeStatus::Exact,
        lower: s.clone(),
        nef: Some(s),
        strict: false,
    };
    vec![
        exact(nl(4, 2), rat(3, 4)),
        exact(nl(5, 3), rat(7, 5)),
        exact(nl(6, 4), int(2)),
        exact(nl(5, 2).with_flex(3, FlexStatus::Ordinary), rat(4, 5)),
        Expected {
            query: nl(5, 2).with_flex(3, FlexStatus::Absent),
            status: ConeStatus::Bounded,
            lower: rat(7, 10),
            nef: Some(rat(4, 5)),
            strict: true,
        },
        exact(nl(5, 4), rat(9, 5)),
        Expected {
            query: ConeQuery::new(3, 2, SurfaceKind::ContainsLine),
            status: ConeStatus::SliceExact,
            lower: int(1),
            nef: Some(int(1)),
            strict: false,
        },
        Expected {
            query: nl(7, 5),
            status: ConeStatus::Bounded,
            lower: rat(18, 7),
            nef: None,
            strict: false,
        },
    ]
}

pub fn dispatch_table() -> CriterionResult {
    let mut c = Checker::default();
    for e in expected_table() {
        let q = e.query;
        let Some(cone) = c.ok(compute_cone(&q), || format!("{q:?}")) else {
            continue;
        };
        c.eq(cone.status, e.status, || format!("status of {q:?}"));
        c.eq(cone.lower_slope, e.lower, || {
            format!("lower slope of {q:?}")
        });
        c.eq(cone.nef_slope, e.nef, || format!("nef slope of {q:?}"));
        c.eq(cone.nef_slope_strict, e.strict, || {
            format!("strictness of {q:?}")
        });
    }
    c.finish(3, "dispatch table")
}

pub fn orthogonality() -> CriterionResult {
    let mut c = Checker::default();
    let eps = rat(1, 1000);
    for q in dispatchable_queries(12) {
        let Some(cone) = c.ok(compute_cone(&q), || format!("{q:?}")) else {
            continue;
        };
        if cone.status == ConeStatus::Unknown {
            continue;
        }
        let Some(w) = cone.extremal_witness() else {
            c.check(false, || format!("no extremal witness for {q:?}"));
            continue;
        };
        let at = NsClass::with_slope(cone.lower_slope.clone(), q.n, q.d);
        let above = NsClass::with_slope(&cone.lower_slope + &eps, q.n, q.d);
        c.eq(pair(&at, &w.curve), Ok(int(0)), || {
            format!("{} at the extremal slope of {q:?}", w.curve.kind)
        });
        let v = pair(&above, &w.curve);
        c.check(matches!(&v, Ok(v) if *v > int(0)), || {
            format!("{} above the slope of {q:?}: {v:?}", w.curve.kind)
        });
    }
    c.finish(4, "orthogonality witnesses")
}

pub fn flex_certification() -> CriterionResult {
    let mut c = Checker::default();
    let p = ProjectivePoint::from_ints(&[0, 0, 0, 1]).expect("nonzero point");
    for d in 3..=9u32 {
        for r in 3..=d {
            let rep = make_family(Family::Xdr, d, Some(r)).and_then(|f| flex_check(&f, &p, r));
            if let Some(rep) = c.ok(rep, || format!("X_{{{d},{r}}}")) {
                c.eq(
                    rep.verdict,
                    FlexVerdict::SurfaceFlex { r, ordinary: true },
                    || format!("X_{{{d},{r}}}"),
                );
            }
        }
        let Some(y) = c.ok(make_family(Family::Yd, d, None), || format!("Y_{d}")) else {
            continue;
        };
        let cert = smoothness_certificate(&y);
        c.check(
            matches!(cert, Ok(SmoothnessCertificate::Smooth { .. })),
            || format!("Y_{d} smoothness certificate: {cert:?}"),
        );
        for r in 3..=d {
            if let Some(rep) = c.ok(flex_check(&y, &p, r), || format!("Y_{d}, r = {r}")) {
                c.check(
                    matches!(rep.verdict, FlexVerdict::SurfaceFlex { r: got, .. } if got == r),
                    || format!("Y_{d}, r = {r}: {}", rep.verdict),
                );
            }
        }
    }
    c.finish(5, "flex certification")
}

pub fn incidence_arithmetic() -> CriterionResult {
    let mut c = Checker::default();
    if let Some(rep) = c.ok(incidence(5, 3), || "incidence(5, 3)".into()) {
        c.eq(rep.n_coeffs, 56, || "N at (5, 3)".into());
        c.eq(rep.dim_sigma, 54, || "dim Sigma at (5, 3)".into());
        c.eq(rep.threshold_ok, true, || "threshold at (5, 3)".into());
        // Equality: C(4, 2) - 1 = 5 = d.
        c.eq(rep.d, 5, || "threshold equality at (5, 3)".into());
    }
    if let Some(rep) = c.ok(incidence(4, 3), || "incidence(4, 3)".into()) {
        c.eq(rep.threshold_ok, false, || "threshold at (4, 3)".into());
    }
    c.finish(6, "incidence arithmetic")
}

/// Branch count of the projection of an affine plane curve from `[0:0:1]`.
pub fn oracle_count(text: &str) -> Result<(u64, bool), String> {
    let f = parse_poly(text, &PLANE_VARS).map_err(|e| e.to_string())?;
    let curve = plane_curve(&f).map_err(|e| e.to_string())?;
    let center = ProjectivePoint::from_ints(&[0, 0, 1]).map_err(|e| e.to_string())?;
    let p = PencilProjection::new(&curve, &center).map_err(|e| e.to_string())?;
    let bc = branch_count(&p).map_err(|e| e.to_string())?;
    Ok((bc.count, bc.squarefree))
}

pub fn oracle_equivalence() -> CriterionResult {
    let mut c = Checker::default();
    for (name, text, want) in [
        ("nodal quintic", NODAL_QUINTIC, 14),
        ("triple-point quintic", TRIPLE_POINT_QUINTIC, 8),
        ("smooth quintic", SMOOTH_QUINTIC, 18),
    ] {
        if let Some(got) = c.ok(oracle_count(text), || name.to_string()) {
            c.eq(got, (want, true), || format!("{name} (count, squarefree)"));
        }
    }
    c.finish(7, "oracle equivalence")
}

const RING_VARS: [&str; 3] = ["x", "y", "t"];

fn random_poly(rng: &mut ChaCha8Rng, max_terms: usize, max_deg: u32) -> MultiPoly {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n).map(|_| {
        let a = rng.gen_range(0..=max_deg);
        let b = rng.gen_range(0..=max_deg - a);
        let t = rng.gen_range(0..=max_deg - a - b);
        (vec![a, b, t], int(rng.gen_range(-6..=6)))
    });
    MultiPoly::from_terms(&RING_VARS, terms.collect::<Vec<_>>())
}

/// Degree `deg` in `x` with leading coefficient 1, lower coefficients in `t`.
fn random_monic(rng: &mut ChaCha8Rng, max_deg: u32) -> MultiPoly {
    let deg = rng.gen_range(1..=max_deg);
    let mut terms = vec![(vec![deg, 0, 0], int(1))];
    for _ in 0..rng.gen_range(0..5) {
        terms.push((
            vec![rng.gen_range(0..deg), 0, rng.gen_range(0..3)],
            int(rng.gen_range(-4..=4)),
        ));
    }
    MultiPoly::from_terms(&RING_VARS, terms)
}

fn random_univariate(rng: &mut ChaCha8Rng, max_deg: usize) -> MultiPoly {
    loop {
        let len = rng.gen_range(3..=max_deg + 1);
        let u = UniPoly::new((0..len).map(|_| int(rng.gen_range(-5..=5))).collect());
        if u.degree().unwrap_or(0) >= 2 {
            return u.to_multi("x");
        }
    }
}

/// A nonzero ternary form of degree `deg` vanishing at `[0:0:1]`.
fn random_form_through_origin(rng: &mut ChaCha8Rng, deg: u32) -> MultiPoly {
    loop {
        let terms: Vec<_> = (0..rng.gen_range(1..6))
            .filter_map(|_| {
                let a = rng.gen_range(0..=deg);
                let b = rng.gen_range(0..=deg - a);
                (a + b > 0).then(|| (vec![a, b, deg - a - b], int(rng.gen_range(-4..=4))))
            })
            .collect();
        let f = MultiPoly::from_terms(&PLANE_VARS, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Images of `x, y, z` under an invertible linear change fixing `[0:0:1]`.
fn random_change_fixing_origin(rng: &mut ChaCha8Rng) -> Vec<MultiPoly> {
    let lin = |a: i64, b: i64, c: i64| {
        MultiPoly::from_terms(
            &PLANE_VARS,
            [
                (vec![1, 0, 0], int(a)),
                (vec![0, 1, 0], int(b)),
                (vec![0, 0, 1], int(c)),
            ],
        )
    };
    loop {
        let k: Vec<i64> = (0..6).map(|_| rng.gen_range(-3..=3)).collect();
        if k[0] * k[3] - k[1] * k[2] != 0 {
            return vec![lin(k[0], k[1], 0), lin(k[2], k[3], 0), lin(k[4], k[5], 1)];
        }
    }
}

fn algebra_properties(rng: &mut ChaCha8Rng, c: &mut Checker) {
    for i in 0..200 {
        let (f, g, h) = (
            random_poly(rng, 5, 8),
            random_poly(rng, 5, 8),
            random_poly(rng, 5, 8),
        );
        let ok = &(&f + &g) + &h == &f + &(&g + &h)
            && &(&f * &g) * &h == &f * &(&g * &h)
            && &f * &(&g + &h) == &(&f * &g) + &(&f * &h)
            && &f * &g == &g * &f;
        c.check(ok, || {
            format!("ring axioms, case {i}: f = {f}, g = {g}, h = {h}")
        });
    }
    for i in 0..200 {
        let f = random_univariate(rng, 8);
        let sf = is_squarefree(&f, "x").map(|r| r.squarefree);
        let disc = discriminant(&f, "x").map(|d| !d.is_zero());
        c.check(sf.is_ok() && sf == disc, || {
            format!("squarefree vs discriminant, case {i}: {f}")
        });
    }
    for i in 0..60 {
        let (f, g, h) = (
            random_monic(rng, 3),
            random_monic(rng, 2),
            random_monic(rng, 2),
        );
        let lhs = resultant(&f, &(&g * &h), "x");
        let rhs = resultant(&f, &g, "x").and_then(|a| resultant(&f, &h, "x").map(|b| &a * &b));
        c.check(lhs.is_ok() && lhs == rhs, || {
            format!("resultant multiplicativity, case {i}: {f}; {g}; {h}")
        });
    }
    for i in 0..60 {
        let (f, g) = (random_monic(rng, 3), random_monic(rng, 3));
        let t = int(rng.gen_range(-3..=3));
        let before = resultant(&f, &g, "x").and_then(|r| r.specialize("t", &t));
        let after = f.specialize("t", &t).and_then(|fs| {
            g.specialize("t", &t)
                .and_then(|gs| resultant(&fs, &gs, "x"))
        });
        c.check(before.is_ok() && before == after, || {
            format!("resultant specialization, case {i}: {f}; {g}")
        });
    }
}

fn multiplicity_properties(rng: &mut ChaCha8Rng, c: &mut Checker) {
    let q = ProjectivePoint::from_ints(&[0, 0, 1]).expect("nonzero point");
    for i in 0..50 {
        let (f, g) = (
            random_form_through_origin(rng, 3),
            random_form_through_origin(rng, 4),
        );
        let m = multiplicity_at(&(&f * &g), &q);
        let sum = multiplicity_at(&f, &q).and_then(|a| multiplicity_at(&g, &q).map(|b| a + b));
        c.check(m.is_ok() && m == sum, || {
            format!("multiplicity additivity, case {i}: {f}; {g}")
        });
    }
    for i in 0..50 {
        let f = random_form_through_origin(rng, 4);
        let g = f.compose(&random_change_fixing_origin(rng));
        let ordinary = |h: &MultiPoly| tangent_cone(h, &q).and_then(|t| cone_is_squarefree(&t));
        let same = multiplicity_at(&g, &q).is_ok()
            && multiplicity_at(&g, &q) == multiplicity_at(&f, &q)
            && ordinary(&g) == ordinary(&f);
        c.check(same, || {
            format!("coordinate invariance, case {i}: {f} -> {g}")
        });
    }
}

fn cone_properties(c: &mut Checker) {
    let rank = |x: Containment| match x {
        Containment::No => 0,
        Containment::Unknown => 1,
        Containment::Yes => 2,
    };
    for q in dispatchable_queries(12) {
        let Some(cone) = c.ok(compute_cone(&q), || format!("{q:?}")) else {
            continue;
        };
        // Witness consistency: the lower slope is the largest witness bound.
        let max = cone.witnesses.iter().map(|w| w.bound.clone()).max();
        c.eq(max.as_ref(), Some(&cone.lower_slope), || {
            format!("largest witness bound of {q:?}")
        });
        let grid: Vec<Rational> = (0..=60).map(|k| rat(k, 4)).collect();
        let answers: Result<Vec<_>, _> = grid
            .iter()
            .map(|s| cone_contains(&cone, &NsClass::with_slope(s.clone(), q.n, q.d)).map(rank))
            .collect();
        let monotone = answers.is_ok_and(|a| a.windows(2).all(|w| w[0] <= w[1]));
        c.check(monotone, || {
            format!("containment is not monotone in the slope for {q:?}")
        });
    }
}

pub fn property_suites(seed: u64) -> CriterionResult {
    let mut c = Checker::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    algebra_properties(&mut rng, &mut c);
    multiplicity_properties(&mut rng, &mut c);
    cone_properties(&mut c);
    c.finish(8, "property suites")
}
