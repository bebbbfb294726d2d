//! JSON views of the core types. Rationals are rendered as `"p/q"` strings
//! and polynomials in the expression grammar, so every value re-parses.

use nefcone_core::flex::{FlexReport, IncidenceReport, SmoothnessCertificate};
use nefcone_core::ns::Witness;
use nefcone_core::oracle::OracleReport;
use nefcone_core::residuation::Matrix2;
use nefcone_core::{ConeSlice, CurveClass, GenusProfile, MultiPoly, NsClass, Rational};
use serde_json::{json, Map, Value};

/// What a subcommand produced, before choosing text or JSON.
#[derive(Debug, Clone)]
pub struct Output {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub provenance: Vec<String>,
    pub warnings: Vec<String>,
    pub text: String,
}

impl Output {
    pub fn new(command: &'static str, inputs: Value, result: Value, text: String) -> Self {
        Self {
            command,
            inputs,
            result,
            provenance: Vec::new(),
            warnings: Vec::new(),
            text,
        }
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "provenance": self.provenance,
            "warnings": self.warnings,
        })
    }

    /// Keys come out sorted because `serde_json::Map` is a `BTreeMap` here.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s =
                serde_json::to_string_pretty(&self.envelope()).expect("values are serializable");
            s.push('\n');
            return s;
        }
        let mut s = self.text.clone();
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn poly(p: &MultiPoly) -> Value {
    Value::String(p.to_string())
}

pub fn ns_class(c: &NsClass) -> Value {
    json!({ "alpha": rational(&c.alpha), "beta": rational(&c.beta), "n": c.n, "d": c.d })
}

pub fn curve(c: &CurveClass) -> Value {
    json!({
        "name": c.kind.to_string(),
        "h": rational(&c.h),
        "b": rational(&c.b),
        "n": c.n,
        "d": c.d,
        "provenance": c.provenance,
    })
}

fn witness(w: &Witness) -> Value {
    json!({
        "curve": curve(&w.curve),
        "bound": rational(&w.bound),
        "trivial": w.trivial,
    })
}

pub fn cone(c: &ConeSlice) -> Value {
    let mut rays = vec![ns_class(&c.ray_low())];
    if let Some(high) = c.ray_high() {
        rays.push(ns_class(&high));
    }
    json!({
        "n": c.n,
        "d": c.d,
        "status": c.status.as_str(),
        "rays": rays,
        "lower_slope": rational(&c.lower_slope),
        "nef_slope": c.nef_slope.as_ref().map(rational),
        "nef_slope_strict": c.nef_slope_strict,
        "witnesses": c.witnesses.iter().map(|w| w.curve.kind.to_string()).collect::<Vec<_>>(),
        "witness_details": c.witnesses.iter().map(witness).collect::<Vec<_>>(),
        "notes": c.notes,
    })
}

pub fn matrix(m: &Matrix2) -> Value {
    Value::Array(
        m.0.iter()
            .map(|row| Value::Array(row.iter().map(rational).collect()))
            .collect(),
    )
}

pub fn point(coords: &[Rational]) -> Value {
    Value::Array(coords.iter().map(rational).collect())
}

pub fn flex_report(r: &FlexReport) -> Value {
    json!({
        "point": point(r.point.coords()),
        "smooth_at_point": r.smooth_at_point,
        "tangent_plane": poly(&r.tangent_plane),
        "section": {
            "form": poly(&r.section.form),
            "pivot": r.section.pivot,
            "substitution": poly(&r.section.substitution),
        },
        "multiplicity": r.multiplicity,
        "tangent_cone": poly(&r.tangent_cone),
        "cone_squarefree": r.cone_squarefree,
        "verdict": r.verdict.to_string(),
    })
}

pub fn certificate(c: &SmoothnessCertificate) -> Value {
    match c {
        SmoothnessCertificate::Smooth { branches } => {
            json!({ "kind": "smooth", "branches": branches })
        }
        SmoothnessCertificate::SingularWitness(p) => {
            json!({ "kind": "singular", "witness": point(p.coords()) })
        }
        SmoothnessCertificate::Inconclusive { reason } => {
            json!({ "kind": "inconclusive", "reason": reason })
        }
    }
}

pub fn incidence(r: &IncidenceReport) -> Value {
    json!({
        "d": r.d,
        "r": r.r,
        "n_coeffs": r.n_coeffs,
        "dim_sigma": r.dim_sigma,
        "fiber_dim": r.fiber_dim,
        "threshold_ok": r.threshold_ok,
        "nl_codim_floor": r.nl_codim_floor,
    })
}

pub fn profile_name(p: GenusProfile) -> String {
    match p {
        GenusProfile::Smooth => "smooth".into(),
        GenusProfile::Node => "node".into(),
        GenusProfile::OrdinaryMultiplicity(r) => format!("mult:{r}"),
    }
}

pub fn oracle_report(r: &OracleReport) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), json!(r.degree));
    m.insert("multiplicity".into(), json!(r.multiplicity));
    m.insert("ordinary_center".into(), json!(r.ordinary_center));
    m.insert("profile".into(), json!(r.profile.map(profile_name)));
    m.insert("count".into(), json!(r.count));
    m.insert("squarefree".into(), json!(r.squarefree));
    if let Some(p) = r.predicted {
        m.insert("predicted".into(), json!(p));
    }
    m.insert("verdict".into(), json!(r.verdict.as_str()));
    Value::Object(m)
}
