//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nefcone_core::algebra::parse_rational;
use nefcone_core::curves::{catalog, ramification_degree};
use nefcone_core::engine::{provenance_description, FlexData};
use nefcone_core::flex::{
    flex_check, incidence, make_family, smoothness_certificate, Family, ProjectivePoint,
    PLANE_VARS, SURFACE_VARS,
};
use nefcone_core::ns::{pair, slope_bound_from_curve};
use nefcone_core::oracle::{plane_curve, ramification_check};
use nefcone_core::residuation::ResiduationMap;
use nefcone_core::{
    compute_cone, explain, parse_poly, ConeQuery, CurveKind, GenusProfile, MultiPoly, NsClass,
    Rational, SurfaceKind,
};
use serde_json::json;

use crate::render::{self, Output};
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "nefcone",
    version,
    about = "Nef cones of Hilbert schemes of points on surfaces in P^3"
)]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Best-known nef cone in the H, B slice.
    Cone(ConeArgs),
    /// Intersection number of a class with a catalog curve.
    Pair(PairArgs),
    /// Catalog curves available on X^[n].
    Curves(CurvesArgs),
    /// The residuation pullback matrix, optionally applied to a class.
    Residuate(ResiduateArgs),
    /// Flex analysis of a surface at a point.
    Flex(FlexArgs),
    /// A named polynomial family and its smoothness certificate.
    Family(FamilyArgs),
    /// Dimension count for the flex incidence.
    Incidence(IncidenceArgs),
    /// Independent numerical checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ConeArgs {
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    points: u32,
    #[arg(long, value_parser = parse_surface)]
    surface: SurfaceKind,
    /// Flex data as R:STATUS with STATUS one of ordinary, absent, unknown.
    #[arg(long, value_parser = parse_flex)]
    flex: Option<FlexData>,
    /// Print the derivation instead of the summary.
    #[arg(long)]
    explain: bool,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    points: u32,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    alpha: Rational,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    beta: Rational,
    #[arg(long)]
    curve: String,
    /// Flex order, for `omega`.
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Debug, Args)]
struct CurvesArgs {
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    points: u32,
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Debug, Args)]
struct ResiduateArgs {
    #[arg(long)]
    degree: u32,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, requires = "beta")]
    alpha: Option<Rational>,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, requires = "alpha")]
    beta: Option<Rational>,
}

#[derive(Debug, Args)]
struct FlexArgs {
    /// Quaternary form over x, y, z, w, inline or as @file.
    #[arg(long)]
    poly: String,
    #[arg(long)]
    point: String,
    #[arg(long)]
    r: u32,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long, value_parser = ["Xdr", "Yd"])]
    name: String,
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Debug, Args)]
struct IncidenceArgs {
    #[arg(long)]
    degree: u32,
    #[arg(long)]
    r: u32,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Branch points of the projection from a point, against Riemann-Hurwitz.
    Ramification(RamificationArgs),
}

#[derive(Debug, Args)]
struct RamificationArgs {
    /// Plane curve over x, y, z (affine input is homogenized with z), inline or as @file.
    #[arg(long)]
    plane_curve: String,
    #[arg(long)]
    point: String,
    /// Genus profile: smooth, node or mult:R. Defaults to the one read off an ordinary center.
    #[arg(long, value_parser = parse_profile)]
    profile: Option<GenusProfile>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Seed for the randomized property checks.
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

fn parse_surface(s: &str) -> Result<SurfaceKind, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_flex(s: &str) -> Result<FlexData, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational (expected p or p/q)"))
}

fn parse_profile(s: &str) -> Result<GenusProfile, String> {
    match s {
        "smooth" => Ok(GenusProfile::Smooth),
        "node" => Ok(GenusProfile::Node),
        _ => s
            .strip_prefix("mult:")
            .and_then(|r| r.parse().ok())
            .filter(|&r: &u32| r >= 2)
            .map(|r| GenusProfile::from_multiplicity(r).expect("r >= 2"))
            .ok_or_else(|| format!("`{s}` (expected smooth, node or mult:R)")),
    }
}

/// Inline text, or the contents of a file when prefixed with `@`.
fn read_poly_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            Ok(text.trim().to_string())
        }
        None => Ok(arg.to_string()),
    }
}

/// Parses argv, runs the subcommand and writes its output. Returns the exit
/// code: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    if let Command::Verify(args) = &cli.command {
        return run_verify(args.seed, cli.json, out);
    }
    match dispatch(&cli.command) {
        Ok(output) => {
            let _ = out.write_all(output.render(cli.json).as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn dispatch(command: &Command) -> Result<Output> {
    match command {
        Command::Cone(a) => cone(a),
        Command::Pair(a) => pair_cmd(a),
        Command::Curves(a) => curves(a),
        Command::Residuate(a) => residuate(a),
        Command::Flex(a) => flex(a),
        Command::Family(a) => family(a),
        Command::Incidence(a) => incidence_cmd(a),
        Command::Oracle(OracleCommand::Ramification(a)) => ramification(a),
        Command::Verify(_) => unreachable!("handled before dispatch"),
    }
}

fn cone(a: &ConeArgs) -> Result<Output> {
    let q = ConeQuery {
        d: a.degree,
        n: a.points,
        surface: a.surface,
        flex: a.flex,
    };
    let c = compute_cone(&q)?;
    let inputs = json!({
        "degree": q.d,
        "points": q.n,
        "surface": q.surface.as_str(),
        "flex": q.flex.map(|f| f.to_string()),
    });
    let text = if a.explain {
        explain(&q)
    } else {
        let mut t = String::new();
        let _ = writeln!(t, "status: {}", c.status);
        let _ = write!(t, "rays: {}", c.ray_low());
        match c.ray_high() {
            Some(r) => {
                let _ = writeln!(t, ", {r}");
            }
            None => t.push_str(", (unknown)\n"),
        }
        let _ = writeln!(t, "lower slope: {}", c.lower_slope);
        if let Some(s) = &c.nef_slope {
            let kind = if c.nef_slope_strict { "ample" } else { "nef" };
            let _ = writeln!(t, "{kind} at slope: {s}");
        }
        let names: Vec<String> = c
            .witnesses
            .iter()
            .map(|w| w.curve.kind.to_string())
            .collect();
        let _ = writeln!(t, "witnesses: {}", names.join(", "));
        for key in &c.provenance {
            let _ = writeln!(t, "provenance: {key} ({})", provenance_description(key));
        }
        for note in &c.notes {
            let _ = writeln!(t, "note: {note}");
        }
        t
    };
    let mut o = Output::new("cone", inputs, render::cone(&c), text);
    o.provenance = c.provenance.iter().map(|k| k.to_string()).collect();
    if let Some(f) = q.flex.filter(|f| f.r + q.n != q.d) {
        o.warnings
            .push(format!("flex data {f} needs n = d - r; it was ignored"));
    }
    Ok(o)
}

fn pair_cmd(a: &PairArgs) -> Result<Output> {
    let kind = CurveKind::parse(&a.curve, a.r)?;
    let curve = nefcone_core::curves::make_curve(kind, a.degree, a.points)?;
    let class = NsClass::new(a.alpha.clone(), a.beta.clone(), a.points, a.degree);
    let value = pair(&class, &curve)?;
    let inputs = json!({
        "degree": a.degree,
        "points": a.points,
        "alpha": render::rational(&a.alpha),
        "beta": render::rational(&a.beta),
        "curve": a.curve,
        "r": a.r,
    });
    let result = json!({
        "class": render::ns_class(&class),
        "curve": render::curve(&curve),
        "value": render::rational(&value),
    });
    let text = format!(
        "{class} . {} (h = {}, b = {}) = {value}\n",
        curve.kind, curve.h, curve.b
    );
    let mut o = Output::new("pair", inputs, result, text);
    o.provenance = vec![curve.provenance.to_string()];
    Ok(o)
}

fn curves(a: &CurvesArgs) -> Result<Output> {
    let list = catalog(a.degree, a.points, a.r);
    if list.is_empty() {
        bail!(
            "no catalog curve applies to d = {}, n = {}",
            a.degree,
            a.points
        );
    }
    let mut rows = Vec::new();
    let mut text = format!(
        "{:<12} {:>8} {:>10} {:>10}  provenance\n",
        "curve", "h", "b", "slope"
    );
    for c in &list {
        let slope = slope_bound_from_curve(c).ok();
        let shown = slope
            .as_ref()
            .map_or_else(|| "-".to_string(), |s| s.to_string());
        let _ = writeln!(
            text,
            "{:<12} {:>8} {:>10} {:>10}  {}",
            c.kind.to_string(),
            c.h.to_string(),
            c.b.to_string(),
            shown,
            c.provenance
        );
        let mut row = render::curve(c);
        row["slope_bound"] = json!(slope.as_ref().map(render::rational));
        rows.push(row);
    }
    let inputs = json!({ "degree": a.degree, "points": a.points, "r": a.r });
    Ok(Output::new(
        "curves",
        inputs,
        json!({ "curves": rows }),
        text,
    ))
}

fn residuate(a: &ResiduateArgs) -> Result<Output> {
    let m = ResiduationMap::new(a.degree)?;
    let mut text = format!("matrix: {}\n", m.matrix);
    let _ = writeln!(text, "det: {}", m.matrix.det());
    let _ = writeln!(text, "H^[{}] -> {}", a.degree - 2, m.image_of_h());
    let _ = writeln!(text, "B^[{}] -> {}", a.degree - 2, m.image_of_b());
    let mut result = json!({
        "matrix": render::matrix(&m.matrix),
        "det": render::rational(&m.matrix.det()),
        "image_of_h": render::ns_class(&m.image_of_h()),
        "image_of_b": render::ns_class(&m.image_of_b()),
    });
    if let (Some(alpha), Some(beta)) = (&a.alpha, &a.beta) {
        let class = NsClass::new(alpha.clone(), beta.clone(), a.degree - 2, a.degree);
        let image = m.pullback(&class)?;
        let _ = writeln!(text, "{class} -> {image}");
        result["image"] = render::ns_class(&image);
    }
    let inputs = json!({
        "degree": a.degree,
        "alpha": a.alpha.as_ref().map(render::rational),
        "beta": a.beta.as_ref().map(render::rational),
    });
    Ok(Output::new("residuate", inputs, result, text))
}

fn surface_poly(arg: &str) -> Result<MultiPoly> {
    let text = read_poly_text(arg)?;
    Ok(parse_poly(&text, &SURFACE_VARS)?)
}

fn flex(a: &FlexArgs) -> Result<Output> {
    let f = surface_poly(&a.poly)?;
    let p = ProjectivePoint::parse(&a.point, 4)?;
    let rep = flex_check(&f, &p, a.r)?;
    let mut text = format!("point: {}\n", rep.point);
    let _ = writeln!(text, "tangent plane: {}", rep.tangent_plane);
    let _ = writeln!(
        text,
        "section ({} = {}): {}",
        rep.section.pivot, rep.section.substitution, rep.section.form
    );
    let _ = writeln!(text, "multiplicity: {}", rep.multiplicity);
    let _ = writeln!(text, "tangent cone: {}", rep.tangent_cone);
    let _ = writeln!(text, "cone squarefree: {}", rep.cone_squarefree);
    let _ = writeln!(text, "verdict: {}", rep.verdict);
    let inputs = json!({ "poly": f.to_string(), "point": render::point(p.coords()), "r": a.r });
    Ok(Output::new("flex", inputs, render::flex_report(&rep), text))
}

fn family(a: &FamilyArgs) -> Result<Output> {
    let which = Family::parse(&a.name).expect("clap restricts the name");
    let f = make_family(which, a.degree, a.r)?;
    let cert = smoothness_certificate(&f)?;
    let text = format!(
        "{f}\nsmoothness: {}\n",
        render::certificate(&cert)["kind"].as_str().unwrap_or("?")
    );
    let inputs = json!({ "name": a.name, "degree": a.degree, "r": a.r });
    let result = json!({ "poly": render::poly(&f), "smoothness": render::certificate(&cert) });
    Ok(Output::new("family", inputs, result, text))
}

fn incidence_cmd(a: &IncidenceArgs) -> Result<Output> {
    let rep = incidence(a.degree, a.r)?;
    let mut text = format!("N = {}\n", rep.n_coeffs);
    let _ = writeln!(text, "dim Sigma = {}", rep.dim_sigma);
    let _ = writeln!(text, "fiber dim = {}", rep.fiber_dim);
    let _ = writeln!(
        text,
        "threshold d >= C(r+1, 2) - 1: {}",
        if rep.threshold_ok { "ok" } else { "fails" }
    );
    let _ = writeln!(text, "NL codimension floor: {}", rep.nl_codim_floor);
    let inputs = json!({ "degree": a.degree, "r": a.r });
    Ok(Output::new(
        "incidence",
        inputs,
        render::incidence(&rep),
        text,
    ))
}

fn ramification(a: &RamificationArgs) -> Result<Output> {
    let text = read_poly_text(&a.plane_curve)?;
    let curve = plane_curve(&parse_poly(&text, &PLANE_VARS)?)?;
    let p = ProjectivePoint::parse(&a.point, 3)?;
    let rep = ramification_check(&curve, &p, a.profile)?;
    let mut out = format!("curve: {curve}\n");
    let _ = writeln!(
        out,
        "degree {}, center multiplicity {}",
        rep.degree, rep.multiplicity
    );
    let _ = writeln!(out, "count: {}", rep.count);
    let _ = writeln!(out, "squarefree: {}", rep.squarefree);
    if let Some(pred) = rep.predicted {
        let _ = writeln!(out, "predicted: {pred}");
    }
    let _ = writeln!(out, "verdict: {}", rep.verdict.as_str());
    let inputs = json!({
        "plane_curve": curve.to_string(),
        "point": render::point(p.coords()),
        "profile": a.profile.map(render::profile_name),
    });
    let mut o = Output::new(
        "oracle ramification",
        inputs,
        render::oracle_report(&rep),
        out,
    );
    if let (Some(pr), Some(g)) = (rep.profile, rep.profile.and_then(|pr| pr.genus(rep.degree))) {
        o.provenance.push(format!(
            "genus {g} ({}) gives 2g - 2 + 2*{} = {}",
            render::profile_name(pr),
            rep.degree - rep.multiplicity,
            ramification_degree(g, (rep.degree - rep.multiplicity).into())
        ));
    }
    Ok(o)
}

fn run_verify(seed: u64, as_json: bool, out: &mut impl Write) -> u8 {
    let results = verify::run_all(seed);
    let all = results.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{r}");
    }
    let _ = writeln!(
        text,
        "{}",
        if all {
            "all criteria pass"
        } else {
            "some criteria FAIL"
        }
    );
    let rows: Vec<_> = results
        .iter()
        .map(|r| json!({ "id": r.id, "name": r.name, "passed": r.passed, "checks": r.checks, "detail": r.detail }))
        .collect();
    let o = Output::new(
        "verify",
        json!({ "seed": seed }),
        json!({ "criteria": rows, "passed": all }),
        text,
    );
    let _ = out.write_all(o.render(as_json).as_bytes());
    if all {
        0
    } else {
        1
    }
}
