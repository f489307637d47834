//! Subcommand implementations. Each builds a deterministic JSON report in
//! the shared envelope; `plot` additionally writes an SVG figure.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use qindex_core::curve::{index_diagram, quantum_index_doubled};
use qindex_core::lognum::{area_log, snap_double_k, two_arg_degree_random, PI};
use qindex_core::qpoly::to_pairs;
use qindex_core::rng::SplitMix64;
use qindex_core::sampling::random_momenta;
use qindex_core::tropical::{bg_invariant, enumerate_rational, r_invariant, MomentaConfig, TropicalDegree};
use qindex_core::{HalfLaurent, LatticePolygon};

use crate::input::{rational_string, read_json, CurveInput, MomentaInput, PolygonInput};
use crate::report::{half_string, halflaurent_json, Envelope};
use crate::{svg, verify, CliError};

pub struct Ctx {
    pub seed: u64,
    pub tol: f64,
    pub json_out: Option<PathBuf>,
}

fn polygon_json(poly: &LatticePolygon) -> Value {
    json!({
        "vertices": poly.vertices().iter().map(|v| [v.a, v.b]).collect::<Vec<_>>(),
        "sides": poly.sides().iter().map(|s| json!({
            "normal": [s.normal.a, s.normal.b],
            "length": s.int_length,
        })).collect::<Vec<_>>(),
        "double_area": poly.double_area(),
        "m": poly.boundary_lattice_count(),
        "g": poly.interior_lattice_count(),
    })
}

pub fn cmd_polygon(ctx: &Ctx, path: &Path) -> Result<(), CliError> {
    let mut env = Envelope::new("polygon", ctx.seed, ctx.tol);
    env.hash_input(path)?;
    let input: PolygonInput = read_json(path)?;
    let poly = input.build()?;
    env.result = polygon_json(&poly);
    env.emit(ctx.json_out.as_deref())
}

/// Read momenta, or draw a generic seeded configuration for the polygon.
fn momenta_from(
    ctx: &Ctx,
    env: &mut Envelope,
    polygon: Option<&Path>,
    momenta: Option<&Path>,
) -> Result<(LatticePolygon, MomentaConfig), CliError> {
    if let Some(mpath) = momenta {
        env.hash_input(mpath)?;
        let input: MomentaInput = read_json(mpath)?;
        return input.build();
    }
    let ppath = polygon.ok_or_else(|| CliError::input("need --momenta or --polygon"))?;
    env.hash_input(ppath)?;
    let input: PolygonInput = read_json(ppath)?;
    let poly = input.build()?;
    let degree = TropicalDegree::of_polygon(&poly);
    let mut rng = SplitMix64::new(ctx.seed);
    for _ in 0..32 {
        if let Ok(mu) = random_momenta(&degree, &mut rng) {
            if enumerate_rational(&poly, &mu).is_ok() {
                return Ok((poly, mu));
            }
        }
    }
    Err(CliError::numeric("no generic momenta found in 32 draws"))
}

fn poly_text(p: &HalfLaurent) -> String {
    format!("{}", p)
}

pub fn cmd_bg(
    ctx: &Ctx,
    polygon: Option<&Path>,
    momenta: Option<&Path>,
    with_curves: bool,
) -> Result<(), CliError> {
    let mut env = Envelope::new("bg", ctx.seed, ctx.tol);
    let (poly, mu) = momenta_from(ctx, &mut env, polygon, momenta)?;
    let curves = enumerate_rational(&poly, &mu)
        .map_err(|e| CliError::numeric(format!("enumeration: {}", e)))?;
    let bg = bg_invariant(&poly, &mu).map_err(|e| CliError::numeric(format!("{}", e)))?;
    let mut result = json!({
        "polygon": polygon_json(&poly),
        "mu": mu.mu.iter().map(rational_string).collect::<Vec<_>>(),
        "curve_count": curves.len(),
        "bg": halflaurent_json(&bg),
        "bg_text": poly_text(&bg),
        "bg_at_one": bg.eval_at_one().to_string(),
    });
    if with_curves {
        let list: Vec<Value> = curves
            .iter()
            .map(|c| {
                json!({
                    "tree_id": c.tree_id,
                    "multiplicities": c.multiplicities().unwrap_or_default(),
                    "positions": c.positions.iter()
                        .map(|(a, b)| [rational_string(a), rational_string(b)])
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        result["curves"] = Value::Array(list);
    }
    env.result = result;
    env.emit(ctx.json_out.as_deref())
}

pub fn cmd_identity(
    ctx: &Ctx,
    polygon: Option<&Path>,
    momenta: Option<&Path>,
) -> Result<bool, CliError> {
    let mut env = Envelope::new("identity", ctx.seed, ctx.tol);
    let (poly, mu) = momenta_from(ctx, &mut env, polygon, momenta)?;
    let bg = bg_invariant(&poly, &mu).map_err(|e| CliError::numeric(format!("{}", e)))?;
    let r = r_invariant(&poly, &mu).map_err(|e| CliError::numeric(format!("{}", e)))?;
    let m = poly.boundary_lattice_count();
    let factor = (HalfLaurent::monomial(1, 1.into()) + HalfLaurent::monomial(-1, (-1).into()))
        .pow((m - 2) as u32);
    let rhs = factor * bg.clone();
    let holds = r == rhs;
    env.result = json!({
        "polygon": polygon_json(&poly),
        "mu": mu.mu.iter().map(rational_string).collect::<Vec<_>>(),
        "r": halflaurent_json(&r),
        "r_text": poly_text(&r),
        "bg": halflaurent_json(&bg),
        "bg_text": poly_text(&bg),
        "rhs_text": poly_text(&rhs),
        "identity_holds": holds,
    });
    env.emit(ctx.json_out.as_deref())?;
    Ok(holds)
}

fn diagram_json(c: &qindex_core::curve::RealRationalCurve) -> Result<Value, CliError> {
    let d = index_diagram(c).map_err(|e| CliError::input(format!("{}", e)))?;
    Ok(json!({
        "vertices": d.vertices.iter().map(|v| [v.a, v.b]).collect::<Vec<_>>(),
        "edges": d.edges.iter().map(|v| [v.a, v.b]).collect::<Vec<_>>(),
        "area": half_string(d.double_area()),
        // Diagrams are emitted in canonical position: the base vertex is
        // translated into {0,1}², so equal curves give equal JSON.
        "normalization": {"base_vertex": [d.vertices[0].a, d.vertices[0].b]},
    }))
}

pub fn cmd_qindex(ctx: &Ctx, curve_path: &Path, method: &str) -> Result<(), CliError> {
    let mut env = Envelope::new("qindex", ctx.seed, ctx.tol);
    env.hash_input(curve_path)?;
    let input: CurveInput = read_json(curve_path)?;
    let curve = input.build()?;
    let mut result = serde_json::Map::new();
    result.insert("method".into(), json!(method));
    let mut k2_diagram: Option<i64> = None;
    let mut k2_numeric: Option<i64> = None;
    if method == "diagram" || method == "both" {
        let k2 = quantum_index_doubled(&curve).map_err(|e| CliError::input(format!("{}", e)))?;
        k2_diagram = Some(k2);
        result.insert("k_diagram".into(), json!(half_string(k2)));
        result.insert("diagram".into(), diagram_json(&curve)?);
    }
    if method == "numeric" || method == "both" {
        let (area, bound) =
            area_log(&curve, ctx.tol).map_err(|e| CliError::numeric(format!("{}", e)))?;
        let k2 = snap_double_k(area, ctx.tol.max(1e-4))
            .map_err(|e| CliError::numeric(format!("{}", e)))?;
        k2_numeric = Some(k2);
        result.insert("area_log".into(), json!(area));
        result.insert("area_error_bound".into(), json!(bound));
        result.insert("area_over_pi2".into(), json!(area / (PI * PI)));
        result.insert("k_numeric".into(), json!(half_string(k2)));
    }
    if method == "2arg" {
        let deg = two_arg_degree_random(&curve, ctx.seed)
            .map_err(|e| CliError::numeric(format!("{}", e)))?;
        result.insert("two_arg_degree".into(), json!(deg));
        result.insert("k".into(), json!(half_string(deg)));
    }
    if method == "both" {
        let agree = k2_diagram == k2_numeric;
        result.insert("agree".into(), json!(agree));
        if !agree {
            env.result = Value::Object(result);
            env.emit(ctx.json_out.as_deref())?;
            return Err(CliError::verification("diagram and numeric indices disagree"));
        }
    }
    env.result = Value::Object(result);
    env.emit(ctx.json_out.as_deref())
}

pub fn cmd_diagram(ctx: &Ctx, curve_path: &Path) -> Result<(), CliError> {
    let mut env = Envelope::new("diagram", ctx.seed, ctx.tol);
    env.hash_input(curve_path)?;
    let input: CurveInput = read_json(curve_path)?;
    let curve = input.build()?;
    env.result = diagram_json(&curve)?;
    env.emit(ctx.json_out.as_deref())
}

pub fn cmd_plot(
    ctx: &Ctx,
    curve_path: &Path,
    svg_out: &Path,
    what: &str,
) -> Result<(), CliError> {
    let mut env = Envelope::new("plot", ctx.seed, ctx.tol);
    env.hash_input(curve_path)?;
    let input: CurveInput = read_json(curve_path)?;
    let curve = input.build()?;
    let body = match what {
        "diagram" => {
            let d = index_diagram(&curve).map_err(|e| CliError::input(format!("{}", e)))?;
            svg::diagram_svg(&d)
        }
        _ => svg::curve_svg(&curve)?,
    };
    std::fs::write(svg_out, &body)
        .map_err(|e| CliError::input(format!("cannot write {}: {}", svg_out.display(), e)))?;
    env.result = json!({"svg": svg_out.display().to_string(), "bytes": body.len()});
    env.emit(ctx.json_out.as_deref())
}

pub fn cmd_verify(ctx: &Ctx) -> Result<bool, CliError> {
    let outcomes = verify::run_all(false);
    let all_ok = outcomes.iter().all(|o| o.result.is_ok());
    if let Some(p) = &ctx.json_out {
        let mut env = Envelope::new("verify", ctx.seed, ctx.tol);
        env.result = json!({
            "criteria": outcomes.iter().map(|o| json!({
                "name": o.name,
                "pass": o.result.is_ok(),
                "detail": match &o.result { Ok(s) => s.clone(), Err(s) => s.clone() },
                "seconds": o.elapsed.as_secs_f64(),
            })).collect::<Vec<_>>(),
            "all_pass": all_ok,
        });
        env.emit(Some(p))?;
    }
    Ok(all_ok)
}

/// Canonical text of a refined polynomial, exposed for tests.
pub fn poly_pairs(p: &HalfLaurent) -> Vec<(i64, String)> {
    to_pairs(p)
}
