//! Subcommand implementations: parse inputs, call the library, emit JSON /
//! CSV / SVG, map outcomes to exit codes.

use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};

use outer_billiards::curves::{classify_inflections, inflection_points_with, CurveConfig, ProjectiveCurve};
use outer_billiards::dynamics::{
    desargues_involution_check, invariance_drift, orbit as run_orbit, ConicPencil, Oval,
    DEFAULT_LAMBDAS,
};
use outer_billiards::integrability::{certify_with, CertifyOptions, Verdict};
use outer_billiards::operators::{check_h_cubic_scaling, check_vh_equals_w};
use outer_billiards::poly::parse::{parse_axes, parse_point, parse_poly};
use outer_billiards::random::{random_nonzero_poly, seeded_rng};
use outer_billiards::Error;

use crate::svg;

pub struct Context {
    pub json: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub seed: u64,
    pub tol: Option<f64>,
}

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::ZeroPolynomial
        | Error::DivisorZero
        | Error::DegenerateInput(_)
        | Error::InvalidOval(_) => 2,
        Error::SingularCurve => 3,
        Error::ConvergenceFailure { .. }
        | Error::WitnessNotFound
        | Error::BranchNotFound { .. }
        | Error::PointInsideOval(_, _)
        | Error::SolverDivergence(_) => 4,
        Error::DegenerateTangent(_) | Error::InsufficientPairs { .. } => 5,
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::SolverDivergence(format!("io error: {e}"))
}

/// Prints the report to stdout and mirrors it to --json when given.
fn emit(ctx: &Context, report: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(report).expect("json serialization");
    println!("{text}");
    if let Some(path) = &ctx.json {
        fs::write(path, format!("{text}\n")).map_err(io_err)?;
    }
    Ok(())
}

fn curve_config(ctx: &Context) -> CurveConfig {
    CurveConfig {
        seed: ctx.seed,
        ..CurveConfig::default()
    }
}

pub fn identities(
    ctx: &Context,
    poly: Option<String>,
    f: Option<String>,
    g: Option<String>,
    random: u32,
    max_degree: u32,
) -> Result<u8, Error> {
    let mut explicit = Vec::new();
    let mut all_passed = true;

    if let Some(text) = &poly {
        let p = parse_poly(text)?;
        let pass = check_vh_equals_w(&p);
        all_passed &= pass;
        explicit.push(json!({
            "check": "v_of_h_equals_w",
            "poly": p.to_string(),
            "pass": pass,
        }));
    }
    match (&f, &g) {
        (Some(ft), Some(gt)) => {
            let fp = parse_poly(ft)?;
            let gp = parse_poly(gt)?;
            let pass = check_h_cubic_scaling(&fp, &gp)?;
            all_passed &= pass;
            explicit.push(json!({
                "check": "h_scaling_mod_f",
                "f": fp.to_string(),
                "g": gp.to_string(),
                "pass": pass,
            }));
        }
        (None, None) => {}
        _ => {
            return Err(Error::DegenerateInput(
                "--f and --g must be given together".into(),
            ))
        }
    }
    if explicit.is_empty() && random == 0 {
        return Err(Error::DegenerateInput(
            "nothing to check: give --poly, --f/--g, or --random N".into(),
        ));
    }

    let mut rng = seeded_rng(ctx.seed);
    let mut vh_failures = Vec::new();
    let mut scaling_failures = Vec::new();
    for _ in 0..random {
        let big = random_nonzero_poly(&mut rng, max_degree);
        if !check_vh_equals_w(&big) {
            vh_failures.push(big.to_string());
        }
        let fp = random_nonzero_poly(&mut rng, max_degree.min(3));
        let gp = random_nonzero_poly(&mut rng, 2);
        if !check_h_cubic_scaling(&fp, &gp)? {
            scaling_failures.push(json!({ "f": fp.to_string(), "g": gp.to_string() }));
        }
    }
    all_passed &= vh_failures.is_empty() && scaling_failures.is_empty();

    emit(
        ctx,
        &json!({
            "command": "identities",
            "seed": ctx.seed,
            "max_degree": max_degree,
            "explicit": explicit,
            "random": {
                "cases": random,
                "vh_failures": vh_failures,
                "scaling_failures": scaling_failures,
            },
            "all_passed": all_passed,
        }),
    )?;
    Ok(if all_passed { 0 } else { 1 })
}

pub fn inflect(ctx: &Context, poly: &str) -> Result<u8, Error> {
    let f = parse_poly(poly)?;
    let curve = ProjectiveCurve::from_affine(&f)?;
    let records = inflection_points_with(&curve, &curve_config(ctx))?;
    let summary = classify_inflections(&records, curve.degree());

    if let Some(path) = &ctx.svg {
        let mut figure = svg::Figure::default();
        figure.segments = svg::contour_segments(&f, [-3.2, -3.2, 3.2, 3.2], 220);
        for r in &records {
            if r.real && !r.at_infinity {
                let x = (r.point[0] / r.point[2]).re;
                let y = (r.point[1] / r.point[2]).re;
                figure.markers.push([x, y]);
            }
        }
        svg::write_svg(path, &figure).map_err(io_err)?;
    }

    emit(
        ctx,
        &json!({
            "command": "inflect",
            "poly": f.to_string(),
            "degree": curve.degree(),
            "seed": ctx.seed,
            "nonsingular": true,
            "records": records,
            "summary": summary,
        }),
    )?;
    Ok(0)
}

pub fn certify(
    ctx: &Context,
    f: &str,
    g: &str,
    order: u32,
    seed_point: Option<String>,
) -> Result<u8, Error> {
    let fp = parse_poly(f)?;
    let gp = parse_poly(g)?;
    let convexity_seed = seed_point.as_deref().map(parse_point).transpose()?;
    let options = CertifyOptions {
        curve: curve_config(ctx),
        convexity_seed,
        ..CertifyOptions::default()
    };
    let report = certify_with(&fp, &gp, order, &options);
    let code = match report.verdict {
        Verdict::ConicConsistent => 0,
        Verdict::EvennessFails => 10,
        Verdict::HNotConstant => 11,
        Verdict::ContradictionWitness => 12,
        Verdict::InvalidInput => 3,
    };
    emit(
        ctx,
        &json!({
            "command": "certify",
            "seed": ctx.seed,
            "report": report,
        }),
    )?;
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
pub fn orbit(
    ctx: &Context,
    ellipse: Option<String>,
    poly: Option<String>,
    seed_point: Option<String>,
    from: &str,
    n: usize,
    invariant: Option<String>,
    csv: Option<PathBuf>,
) -> Result<u8, Error> {
    let oval = match (&ellipse, &poly) {
        (Some(axes), None) => {
            let (a, b) = parse_axes(axes)?;
            Oval::ellipse(a, b)?
        }
        (None, Some(text)) => {
            let f = parse_poly(text)?;
            let seed = seed_point
                .as_deref()
                .map(parse_point)
                .transpose()?
                .ok_or_else(|| {
                    Error::DegenerateInput("--poly ovals need --seed-point".into())
                })?;
            Oval::implicit(f, seed)?
        }
        _ => {
            return Err(Error::DegenerateInput(
                "give exactly one of --ellipse a,b or --poly".into(),
            ))
        }
    };
    let start = parse_point(from)?;
    if n == 0 {
        return Err(Error::DegenerateInput("--n must be at least 1".into()));
    }
    let record = run_orbit(&oval, start, n);
    let drift = invariant
        .as_deref()
        .map(parse_poly)
        .transpose()?
        .map(|f| (f.to_string(), invariance_drift(&f, &record)));

    if let Some(path) = &csv {
        let mut out = String::from("k,x,y,p_x,p_y,residual\n");
        for (k, p) in record.points.iter().enumerate() {
            if k < record.tangency_points.len() {
                let t = record.tangency_points[k];
                let r = record.solver_residuals[k];
                out.push_str(&format!("{k},{},{},{},{},{r}\n", p[0], p[1], t[0], t[1]));
            } else {
                out.push_str(&format!("{k},{},{},,,\n", p[0], p[1]));
            }
        }
        fs::write(path, out).map_err(io_err)?;
    }

    if let Some(path) = &ctx.svg {
        let mut figure = svg::Figure::default();
        let outline: Result<Vec<[f64; 2]>, Error> = (0..=256)
            .map(|k| oval.boundary_point(std::f64::consts::TAU * k as f64 / 256.0))
            .collect();
        figure.polylines.push(outline?);
        figure.markers = record.points.clone();
        svg::write_svg(path, &figure).map_err(io_err)?;
    }

    let code = if record.failure.is_some() { 4 } else { 0 };
    emit(
        ctx,
        &json!({
            "command": "orbit",
            "oval": match (&ellipse, &poly) {
                (Some(axes), _) => json!({ "ellipse": axes }),
                (_, Some(text)) => json!({
                    "poly": parse_poly(text)?.to_string(),
                    "seed_point": seed_point,
                }),
                _ => unreachable!(),
            },
            "from": start,
            "requested_steps": n,
            "computed_steps": record.points.len() - 1,
            "failure": record.failure,
            "max_residual": record.solver_residuals.iter().cloned().fold(0.0, f64::max),
            "drift": drift.as_ref().map(|(f, d)| json!({ "invariant": f, "value": d })),
            "csv": csv.as_ref().map(|p| p.display().to_string()),
        }),
    )?;
    Ok(code)
}

pub fn desargues(ctx: &Context, f1: &str, f2: &str, at: &str) -> Result<u8, Error> {
    let p1 = parse_poly(f1)?;
    let p2 = parse_poly(f2)?;
    let pencil = ConicPencil::new(p1, p2)?;
    let base = parse_point(at)?;
    let tolerance = ctx.tol.unwrap_or(1e-8);
    let report = desargues_involution_check(&pencil, base, &DEFAULT_LAMBDAS)?;
    let pass = report.residual < tolerance;
    emit(
        ctx,
        &json!({
            "command": "desargues",
            "f1": pencil.f1.to_string(),
            "f2": pencil.f2.to_string(),
            "at": base,
            "tolerance": tolerance,
            "pairs": report.pairs,
            "fitted_involution": report.fitted_involution,
            "residual": report.residual,
            "symmetry_defect": report.symmetry_defect,
            "pass": pass,
        }),
    )?;
    Ok(if pass { 0 } else { 1 })
}

pub fn render(ctx: &Context, poly: Option<String>, ellipse: Option<String>) -> Result<u8, Error> {
    let path = ctx.svg.clone().ok_or_else(|| {
        Error::DegenerateInput("render needs --svg <path> for its output".into())
    })?;
    let mut figure = svg::Figure::default();
    let subject = match (&poly, &ellipse) {
        (Some(text), None) => {
            let f = parse_poly(text)?;
            figure.segments = svg::contour_segments(&f, [-3.2, -3.2, 3.2, 3.2], 220);
            json!({ "poly": f.to_string() })
        }
        (None, Some(axes)) => {
            let (a, b) = parse_axes(axes)?;
            let outline: Vec<[f64; 2]> = (0..=256)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / 256.0;
                    [a * t.cos(), b * t.sin()]
                })
                .collect();
            figure.polylines.push(outline);
            json!({ "ellipse": axes })
        }
        _ => {
            return Err(Error::DegenerateInput(
                "give exactly one of --poly or --ellipse".into(),
            ))
        }
    };
    svg::write_svg(&path, &figure).map_err(io_err)?;
    emit(
        ctx,
        &json!({
            "command": "render",
            "subject": subject,
            "svg": path.display().to_string(),
        }),
    )?;
    Ok(0)
}

