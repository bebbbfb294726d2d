use nefcone_core::algebra::{int, rat};
use nefcone_core::curves::{make_curve, ramification_degree};
use nefcone_core::engine::{
    compute_cone, dispatchable_queries, ConeQuery, FlexStatus, SurfaceKind,
};
use nefcone_core::ns::{cone_contains, pair, slope_bound_from_curve, Containment};
use nefcone_core::residuation::{pullback_catalog, PullbackKind, ResiduationMap};
use nefcone_core::{ConeSlice, ConeStatus, CurveClass, CurveKind, GenusProfile, NsClass};
use proptest::prelude::*;

fn all_queries() -> Vec<ConeQuery> {
    dispatchable_queries(12)
}

fn cones() -> Vec<(ConeQuery, ConeSlice)> {
    all_queries()
        .into_iter()
        .map(|q| (q, compute_cone(&q).unwrap()))
        .collect()
}

#[test]
fn res_gamma_matches_closed_form() {
    for d in 4..=40u32 {
        let c = make_curve(CurveKind::ResGamma, d, d - 2).unwrap();
        let di = i64::from(d);
        assert_eq!((c.h.clone(), c.b.clone()), (int(di), int(di * di - di - 6)));
        let rh = ramification_degree(GenusProfile::Node.genus(d).unwrap(), (d - 2).into());
        assert_eq!(c.b, int(rh as i64));
    }
}

#[test]
fn omega_matches_closed_form() {
    for d in 5..=40u32 {
        let di = i64::from(d);
        for r in 3..=d - 2 {
            let ri = i64::from(r);
            let c = make_curve(CurveKind::Omega(r), d, d - r).unwrap();
            assert_eq!(c.b, int(di * di - di - ri * ri - ri));
        }
        // At r = 2 the same genus formula reduces to the node case.
        let node = ramification_degree(
            GenusProfile::OrdinaryMultiplicity(2).genus(d).unwrap(),
            (d - 2).into(),
        );
        assert_eq!(node as i64, di * di - di - 6);
    }
}

#[test]
fn residuation_identities() {
    for d in 5..=40u32 {
        let m = ResiduationMap::new(d).unwrap();
        let di = i64::from(d);
        let slope = rat(di * di - di - 6, 2 * di);
        let image = m.pullback(&NsClass::with_slope(slope, d - 2, d)).unwrap();
        assert_eq!(image.beta, int(0));
        assert_eq!(image.alpha, rat(di * di - 5 * di + 6, 2 * di));
        assert_eq!(m.image_of_h().beta, int(di));
        if d <= 20 {
            for kind in [CurveKind::Gamma, CurveKind::Psi] {
                let c = make_curve(kind, d, 2).unwrap();
                for class in [NsClass::h(d - 2, d), NsClass::b(d - 2, d)] {
                    assert!(m.adjoint_check(&c, &class).unwrap());
                }
            }
        }
    }
}

#[test]
fn pullback_catalog_counts() {
    let l = pullback_catalog(PullbackKind::P3StarL);
    assert_eq!(
        pair(&l.class, &make_curve(CurveKind::Gamma, 5, 3).unwrap()).unwrap(),
        int(1)
    );
    assert_eq!(
        pair(&l.class, &make_curve(CurveKind::Phi, 5, 3).unwrap()).unwrap(),
        int(5)
    );
    let s = pullback_catalog(PullbackKind::GrassmannSigma1);
    assert_eq!(
        pair(&s.class, &make_curve(CurveKind::Phi, 6, 4).unwrap()).unwrap(),
        int(12)
    );
    assert_eq!(
        pair(&s.class, &make_curve(CurveKind::Psi, 6, 4).unwrap()).unwrap(),
        int(11)
    );
}

#[test]
fn witnesses_are_orthogonal() {
    let eps = rat(1, 1000);
    for (q, cone) in cones() {
        let w = cone.extremal_witness().expect("every cone has a witness");
        let at = NsClass::with_slope(cone.lower_slope.clone(), q.n, q.d);
        let above = NsClass::with_slope(&cone.lower_slope + &eps, q.n, q.d);
        if cone.status != ConeStatus::Unknown {
            assert_eq!(pair(&at, &w.curve).unwrap(), int(0), "{q:?}");
            assert!(pair(&above, &w.curve).unwrap() > int(0), "{q:?}");
        }
        if let Some(ray) = cone.ray_high() {
            assert_eq!(pair(&ray, &w.curve).unwrap(), int(0), "{q:?}");
        }
    }
}

#[test]
fn status_invariants() {
    for (q, cone) in cones() {
        if let Some(nef) = &cone.nef_slope {
            assert!(cone.lower_slope <= *nef, "{q:?}");
        }
        let exact_data =
            cone.nef_slope.as_ref() == Some(&cone.lower_slope) && !cone.nef_slope_strict;
        assert_eq!(
            matches!(cone.status, ConeStatus::Exact | ConeStatus::SliceExact),
            exact_data,
            "{q:?}"
        );
        assert_eq!(
            cone.status == ConeStatus::SliceExact,
            q.surface == SurfaceKind::ContainsLine
        );
        assert!(cone.lower_slope >= int(0));
    }
}

#[test]
fn h_is_in_and_b_is_out() {
    for (q, cone) in cones() {
        assert_eq!(
            cone_contains(&cone, &NsClass::h(q.n, q.d)).unwrap(),
            Containment::Yes
        );
        assert_eq!(
            cone_contains(&cone, &NsClass::b(q.n, q.d)).unwrap(),
            Containment::No
        );
    }
}

#[test]
fn flex_data_never_weakens() {
    for d in 5..=12 {
        for r in 3..=d - 2 {
            let q = ConeQuery::new(d, d - r, SurfaceKind::NlGeneral);
            let unknown = compute_cone(&q.with_flex(r, FlexStatus::Unknown)).unwrap();
            let ordinary = compute_cone(&q.with_flex(r, FlexStatus::Ordinary)).unwrap();
            assert!(ordinary.lower_slope >= unknown.lower_slope);
            if unknown.status == ConeStatus::Exact {
                assert_eq!(ordinary.status, ConeStatus::Exact);
            }
        }
    }
}

#[test]
fn overlapping_cases_agree() {
    // The d-2 pattern at d = 4 is the quartic answer.
    let c = make_curve(CurveKind::ResGamma, 4, 2).unwrap();
    assert_eq!(slope_bound_from_curve(&c).unwrap(), rat(3, 4));
    assert_eq!(
        compute_cone(&ConeQuery::new(4, 2, SurfaceKind::NlGeneral))
            .unwrap()
            .lower_slope,
        rat(3, 4)
    );
    // For n >= d-1 nothing exceeds the large-n slope.
    for d in 4..=12 {
        for n in d - 1..=d + 3 {
            let cone = compute_cone(&ConeQuery::new(d, n, SurfaceKind::NlGeneral)).unwrap();
            let expected = rat(i64::from(d), 2) - rat(3, 2) + rat(i64::from(n), i64::from(d));
            assert_eq!(cone.lower_slope, expected);
            assert!(cone.witnesses.iter().all(|w| w.bound <= expected));
        }
    }
    let absent = compute_cone(
        &ConeQuery::new(5, 2, SurfaceKind::NlGeneral).with_flex(3, FlexStatus::Absent),
    )
    .unwrap();
    assert_ne!(absent.status, ConeStatus::Exact);
}

fn curve_strategy() -> impl Strategy<Value = (CurveClass, u32, u32)> {
    (4u32..=12, 0usize..6).prop_filter_map("valid curve", |(d, which)| {
        let (kind, n) = match which {
            0 => (CurveKind::Phi, 3),
            1 => (CurveKind::Psi, 2),
            2 => (CurveKind::ResGamma, d - 2),
            3 => (CurveKind::Omega(3), d.checked_sub(3)?),
            4 => (CurveKind::Pencil, d),
            _ => (CurveKind::LineCurve, 4),
        };
        make_curve(kind, d, n).ok().map(|c| (c, n, d))
    })
}

proptest! {
    #[test]
    fn slope_bound_is_scale_invariant((curve, _, _) in curve_strategy(), k in 1i64..50, j in 1i64..50) {
        let c = rat(k, j);
        let mut scaled = curve.clone();
        scaled.h = &scaled.h * &c;
        scaled.b = &scaled.b * &c;
        prop_assert_eq!(slope_bound_from_curve(&scaled).unwrap(), slope_bound_from_curve(&curve).unwrap());
    }

    #[test]
    fn pairing_is_bilinear((curve, n, d) in curve_strategy(), a in -20i64..20, b in -20i64..20, k in 1i64..9) {
        let x = NsClass::new(rat(a, k), int(b), n, d);
        let y = NsClass::new(int(b), rat(a, k), n, d);
        let sum = NsClass::new(&x.alpha + &y.alpha, &x.beta + &y.beta, n, d);
        prop_assert_eq!(pair(&sum, &curve).unwrap(), pair(&x, &curve).unwrap() + pair(&y, &curve).unwrap());
        prop_assert_eq!(pair(&x.scale(&int(k)), &curve).unwrap(), pair(&x, &curve).unwrap() * int(k));
    }

    #[test]
    fn cones_are_monotone(idx in 0usize..1000, num in 0i64..400, step in 1i64..100) {
        let queries = all_queries();
        let q = queries[idx % queries.len()];
        let cone = compute_cone(&q).unwrap();
        let lo = NsClass::with_slope(rat(num, 40), q.n, q.d);
        let hi = NsClass::with_slope(rat(num, 40) + rat(step, 40), q.n, q.d);
        let rank = |c: Containment| match c { Containment::No => 0, Containment::Unknown => 1, Containment::Yes => 2 };
        prop_assert!(rank(cone_contains(&cone, &hi).unwrap()) >= rank(cone_contains(&cone, &lo).unwrap()));
    }
}
