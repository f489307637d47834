//! The verification suite: one check per acceptance criterion, each printing
//! a single pass/fail line when run through `run_all`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use qindex_core::curve::{
    boundary_divisor, index_diagram, quantum_index_doubled, ParamLocus, RealRationalCurve,
};
use qindex_core::lattice::{rectangle, triangle};
use qindex_core::lognum::{
    area_log, e_total, index_linking_check, refined_path_count, rot_log, solitary_points,
    two_arg_degree_random, PI,
};
use qindex_core::rng::SplitMix64;
use qindex_core::sampling::random_momenta;
use qindex_core::tropical::{
    bg_invariant, enumerate_rational, r_invariant, MomentaConfig, TropicalDegree,
};
use qindex_core::{HalfLaurent, LatticePolygon};

use crate::bench;

pub struct Outcome {
    pub name: &'static str,
    pub result: Result<String, String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        match &self.result {
            Ok(detail) => format!(
                "PASS  {} ({:.1}s): {}",
                self.name,
                self.elapsed.as_secs_f64(),
                detail
            ),
            Err(msg) => format!(
                "FAIL  {} ({:.1}s): {}",
                self.name,
                self.elapsed.as_secs_f64(),
                msg
            ),
        }
    }
}

fn run(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    Outcome {
        name,
        result,
        elapsed: start.elapsed(),
    }
}

/// Run every criterion, printing one line each as it completes.
pub fn run_all(quiet: bool) -> Vec<Outcome> {
    let checks: Vec<(&'static str, Box<dyn FnOnce() -> Result<String, String>>)> = vec![
        ("1 line quantization", Box::new(c1_line)),
        ("2 conic index table", Box::new(c2_conics)),
        ("3 circle spectrum", Box::new(c3_circles)),
        ("4 area oracle equivalence", Box::new(c4_random_suite)),
        ("5 rotation-number identity", Box::new(c5_rotation_identity)),
        ("6 argument-map degree", Box::new(c6_two_arg)),
        ("7 refined count invariance", Box::new(c7_bg)),
        ("8 refined identity", Box::new(c8_identity)),
        ("9 property suites", Box::new(c9_properties)),
    ];
    let mut out = Vec::new();
    for (name, f) in checks {
        let o = run(name, f);
        if !quiet {
            println!("{}", o.line());
        }
        out.push(o);
    }
    out
}

fn err(msg: impl Into<String>) -> String {
    msg.into()
}

fn k2_area(curve: &RealRationalCurve, tol: f64) -> Result<f64, String> {
    let (area, _bound) = area_log(curve, tol).map_err(|e| format!("quadrature: {}", e))?;
    Ok(2.0 * area / (PI * PI))
}

// Criterion 1: the line x = t, y = 1 − t has logarithmic area π²/2 within
// 1e-6 and diagram index exactly 1/2, in under a second.
fn c1_line() -> Result<String, String> {
    let start = Instant::now();
    let c = bench::line();
    let (area, _bound) = area_log(&c, 1e-6).map_err(|e| err(format!("quadrature: {}", e)))?;
    let dev = (area - PI * PI / 2.0).abs();
    if dev > 1e-6 {
        return Err(format!("area off π²/2 by {:.2e} > 1e-6", dev));
    }
    let k2 = quantum_index_doubled(&c).map_err(|e| err(format!("diagram: {}", e)))?;
    if k2 != 1 {
        return Err(format!("diagram index 2k = {} ≠ 1", k2));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(1) {
        return Err(format!("took {:.2}s > 1s", elapsed.as_secs_f64()));
    }
    Ok(format!("area dev {:.1e}, k = 1/2", dev))
}

// Criterion 2: hand-built conics realize the three table rows with the
// tabulated indices, and the numeric area agrees within 1e-4.
fn c2_conics() -> Result<String, String> {
    let start = Instant::now();
    let mut seen: Vec<([i64; 3], i64)> = Vec::new();
    for spec in bench::conics() {
        let c = spec.curve();
        let row = spec.classify_row();
        if row != spec.row {
            return Err(format!("conic {:?} classified {:?}, expected {:?}", spec.params, row, spec.row));
        }
        let k2 = quantum_index_doubled(&c).map_err(|e| err(format!("diagram: {}", e)))?;
        if k2 != spec.k2 {
            return Err(format!("conic {:?}: 2k = {} ≠ {}", spec.params, k2, spec.k2));
        }
        let numeric = k2_area(&c, 1e-6)?;
        if (numeric - k2 as f64).abs() > 2e-4 {
            return Err(format!("conic {:?}: numeric 2k = {} vs {}", spec.params, numeric, k2));
        }
        seen.push((row, k2));
    }
    // The realized index sets per row.
    let set = |row: [i64; 3]| -> Vec<i64> {
        let mut v: Vec<i64> = seen.iter().filter(|(r, _)| *r == row).map(|(_, k)| *k).collect();
        v.sort();
        v
    };
    if set([0, 0, 0]) != vec![4] || set([0, 0, 2]) != vec![0, 2] || set([0, 1, 1]) != vec![-2, 2] {
        return Err("realized index sets do not match the table".into());
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {:.2}s > 10s", elapsed.as_secs_f64()));
    }
    Ok("rows (0,0,0) → ±2, (0,0,2) → {1, 0}, (0,1,1) → ±1; numeric within 1e-4".into())
}

// Criterion 3: circles with four real axis crossings snap to k ∈ {0, ±1};
// the circle through the origin has k = 1/2. Tolerance 1e-4 on k.
fn c3_circles() -> Result<String, String> {
    for (c, k2, what) in bench::circles() {
        let numeric = k2_area(&c, 1e-6)?;
        if (numeric - k2 as f64).abs() > 2e-4 {
            return Err(format!("circle {}: numeric 2k = {} vs {}", what, numeric, k2));
        }
        if ![0i64, 2, -2].contains(&k2) {
            return Err(format!("circle {}: k = {} outside {{0, ±1}}", what, k2 / 2));
        }
    }
    let numeric = k2_area(&bench::origin_circle(), 1e-6)?;
    if (numeric - 1.0).abs() > 2e-4 {
        return Err(format!("origin circle: numeric 2k = {} vs 1", numeric));
    }
    Ok("k ∈ {0, +1, −1} realized; origin circle k = 1/2".into())
}

// Criterion 4: across 20 seeded random toric type-I curves over five small
// polygons, numeric and diagram indices agree within 1e-4, in under 2 min.
fn c4_random_suite() -> Result<String, String> {
    let start = Instant::now();
    let suite = bench::random_suite(0xabcd_1234, 4);
    let mut worst = 0.0f64;
    for (name, c) in &suite {
        let k2 = quantum_index_doubled(c).map_err(|e| err(format!("{}: diagram: {}", name, e)))?;
        let numeric = k2_area(c, 1e-6).map_err(|e| format!("{}: {}", name, e))?;
        let dev = (numeric - k2 as f64).abs() / 2.0;
        worst = worst.max(dev);
        if dev > 1e-4 {
            return Err(format!("{}: |area/π² − k| = {:.2e} > 1e-4", name, dev));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        return Err(format!("took {:.2}s > 120s", elapsed.as_secs_f64()));
    }
    Ok(format!("{} curves, worst deviation {:.1e}", suite.len(), worst))
}

// Criterion 5: k = −Rot_Log/2 + E exactly on every suite curve; the cubic
// benchmark exercises E ≠ 0.
fn c5_rotation_identity() -> Result<String, String> {
    let mut curves: Vec<(String, RealRationalCurve)> = bench::random_suite(0xabcd_1234, 4);
    curves.push(("nodal-cubic".into(), bench::nodal_cubic()));
    curves.push(("line".into(), bench::line()));
    for spec in bench::conics() {
        curves.push((format!("conic{:?}", spec.params), spec.curve()));
    }
    let mut nonzero_e = 0usize;
    for (name, c) in &curves {
        let k2 = quantum_index_doubled(c).map_err(|e| err(format!("{}: {}", name, e)))?;
        let rot = rot_log(c).map_err(|e| err(format!("{}: rot: {}", name, e)))?;
        let sol = solitary_points(c).map_err(|e| err(format!("{}: solitary: {}", name, e)))?;
        let e_tot = e_total(&sol);
        if k2 != -rot + 2 * e_tot {
            return Err(format!("{}: 2k = {} but −rot + 2E = {}", name, k2, -rot + 2 * e_tot));
        }
        if e_tot != 0 {
            nonzero_e += 1;
        }
    }
    let cubic = bench::nodal_cubic();
    let e_cubic = e_total(&solitary_points(&cubic).map_err(|e| err(format!("{}", e)))?);
    if e_cubic != 1 {
        return Err(format!("nodal cubic E = {} ≠ 1", e_cubic));
    }
    Ok(format!("{} curves, {} with E ≠ 0 (cubic: E = 1)", curves.len(), nonzero_e))
}

// Criterion 6: the argument-torus mapping degree equals 2k on the line, a
// conic, and a circle, for three generic targets each.
fn c6_two_arg() -> Result<String, String> {
    let line = bench::line();
    let conic = bench::conics()[0].curve();
    let circle = bench::circle(4, 4, 5);
    let cases: [(&str, &RealRationalCurve, i64, [u64; 3]); 3] = [
        ("line", &line, 1, [1, 2, 3]),
        ("conic", &conic, 4, [21, 22, 23]),
        ("circle", &circle, 2, [11, 12, 13]),
    ];
    for (name, c, k2, seeds) in cases {
        for seed in seeds {
            let deg = two_arg_degree_random(c, seed)
                .map_err(|e| err(format!("{} seed {}: {}", name, seed, e)))?;
            if deg != k2 {
                return Err(format!("{} seed {}: degree {} ≠ 2k = {}", name, seed, deg, k2));
            }
        }
    }
    Ok("degrees 1, 4, 2 = 2k at 3 targets each".into())
}

/// Draw boundary momenta for the polygon until the enumeration accepts them.
fn momenta_for(poly: &LatticePolygon, seed: u64) -> Result<MomentaConfig, String> {
    let degree = TropicalDegree::of_polygon(poly);
    let mut rng = SplitMix64::new(seed);
    for _ in 0..32 {
        let mu = match random_momenta(&degree, &mut rng) {
            Ok(mu) => mu,
            Err(_) => continue,
        };
        match enumerate_rational(poly, &mu) {
            Ok(_) => return Ok(mu),
            Err(_) => continue,
        }
    }
    Err("no generic momenta found in 32 draws".into())
}

// Criterion 7: refined counts are 1 for the smallest triangle, count the
// unique conic at q = 1, and are independent of the momenta configuration.
fn c7_bg() -> Result<String, String> {
    let start = Instant::now();
    let d1 = triangle(1);
    let mu = momenta_for(&d1, 101)?;
    let bg1 = bg_invariant(&d1, &mu).map_err(|e| err(format!("{}", e)))?;
    if bg1 != HalfLaurent::one() {
        return Err(format!("smallest triangle: BG = {} ≠ 1", bg1));
    }
    let mut stats = Vec::new();
    for (name, poly) in [("triangle-2", triangle(2)), ("triangle-3", triangle(3))] {
        let mut values = Vec::new();
        for seed in [7u64, 8, 9] {
            let mu = momenta_for(&poly, seed)?;
            let bg = bg_invariant(&poly, &mu).map_err(|e| err(format!("{}: {}", name, e)))?;
            values.push(bg);
        }
        if values[0] != values[1] || values[1] != values[2] {
            return Err(format!("{}: BG differs across momenta seeds", name));
        }
        if name == "triangle-2" && values[0].eval_at_one() != BigInt::from(1) {
            return Err(format!("triangle-2: BG(1) = {} ≠ 1", values[0].eval_at_one()));
        }
        stats.push(format!("{}: BG(1) = {}", name, values[0].eval_at_one()));
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(600) {
        return Err(format!("took {:.0}s > 600s", elapsed.as_secs_f64()));
    }
    Ok(format!("BG = 1 on Δ₁; {}; 3-seed invariance", stats.join("; ")))
}

/// (q^{1/2} − q^{−1/2})^{m−2}
fn half_diff_power(m: i64) -> HalfLaurent {
    let d = HalfLaurent::monomial(1, BigInt::from(1))
        + HalfLaurent::monomial(-1, BigInt::from(-1));
    d.pow((m - 2) as u32)
}

// Criterion 8: the refined real count equals (q^{1/2} − q^{−1/2})^{m−2}·BG
// as an exact polynomial identity on five polygons.
fn c8_identity() -> Result<String, String> {
    let polys: Vec<(&str, LatticePolygon, u64)> = vec![
        ("triangle-1", triangle(1), 41),
        ("triangle-2", triangle(2), 42),
        ("square-1x1", rectangle(1, 1), 43),
        ("square-2x2", rectangle(2, 2), 44),
        ("triangle-3", triangle(3), 45),
    ];
    for (name, poly, seed) in &polys {
        let mu = momenta_for(poly, *seed)?;
        let bg = bg_invariant(poly, &mu).map_err(|e| err(format!("{}: {}", name, e)))?;
        let r = r_invariant(poly, &mu).map_err(|e| err(format!("{}: {}", name, e)))?;
        let m = poly.boundary_lattice_count();
        let expected = half_diff_power(m) * bg;
        if r != expected {
            return Err(format!("{}: R = {} ≠ (q^½−q^{{−½}})^{{m−2}}·BG = {}", name, r, expected));
        }
    }
    Ok("exact equality on all five polygons".into())
}

/// Midpoint-style sample parameter inside each real arc of the curve, in the
/// same arc order as the diagram vertices (see index_diagram).
fn arc_samples(curve: &RealRationalCurve) -> Result<(Vec<f64>, usize), String> {
    let divisor = boundary_divisor(curve).map_err(|e| err(format!("{}", e)))?;
    let mut finite: Vec<f64> = Vec::new();
    let mut has_inf = false;
    for b in &divisor {
        match &b.param {
            ParamLocus::Real(r) => {
                for _ in 0..1 {
                    finite.push(r.approx());
                }
            }
            ParamLocus::Infinity => has_inf = true,
            ParamLocus::ConjugatePair { .. } => return Err("non-real boundary".into()),
        }
    }
    finite.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let nf = finite.len();
    let k = nf + usize::from(has_inf);
    let mut samples = Vec::with_capacity(k);
    for i in 0..nf - 1 {
        samples.push(0.5 * (finite[i] + finite[i + 1]));
    }
    // Arc leaving the largest finite parameter (toward or through ∞).
    samples.push(finite[nf - 1] + 1.0);
    if has_inf {
        // Arc coming back from ∞ down to the smallest finite parameter.
        samples.push(finite[0] - 1.0);
    }
    Ok((samples, k))
}

// Criterion 9: the property suites.
fn c9_properties() -> Result<String, String> {
    let mut curves: Vec<(String, RealRationalCurve)> = vec![
        ("line".into(), bench::line()),
        ("nodal-cubic".into(), bench::nodal_cubic()),
    ];
    for spec in bench::conics() {
        curves.push((format!("conic{:?}", spec.params), spec.curve()));
    }
    let random = bench::random_suite(0xabcd_1234, 4);

    // Diagram closure and vertex/quadrant parity, on every accepted curve.
    for (name, c) in curves.iter().chain(random.iter()) {
        let d = index_diagram(c).map_err(|e| err(format!("{}: {}", name, e)))?;
        let (mut sa, mut sb) = (0i64, 0i64);
        for e in &d.edges {
            sa += e.a;
            sb += e.b;
        }
        if (sa, sb) != (0, 0) {
            return Err(format!("{}: diagram does not close: Σ edges = ({}, {})", name, sa, sb));
        }
        let (samples, k) = arc_samples(c)?;
        if k != d.vertices.len() {
            return Err(format!("{}: {} arcs vs {} vertices", name, k, d.vertices.len()));
        }
        for (i, &t) in samples.iter().enumerate() {
            let v = if c.orientation == 1 {
                d.vertices[i]
            } else {
                d.vertices[k - 1 - i]
            };
            let xv = c.x.eval_f64(t);
            let yv = c.y.eval_f64(t);
            if (v.a.rem_euclid(2) == 1) != (xv < 0.0) || (v.b.rem_euclid(2) == 1) != (yv < 0.0) {
                return Err(format!("{}: arc {} quadrant/parity mismatch", name, i));
            }
        }
    }

    // Coordinate squaring scales the index by 4; reversal negates it.
    for (name, c) in curves.iter().chain(random.iter()) {
        let k2 = quantum_index_doubled(c).map_err(|e| err(format!("{}: {}", name, e)))?;
        let k2f = quantum_index_doubled(&c.fr2()).map_err(|e| err(format!("{}: fr2: {}", name, e)))?;
        if k2f != 4 * k2 {
            return Err(format!("{}: fr2 index {} ≠ 4·{}", name, k2f, k2));
        }
        let k2r = quantum_index_doubled(&c.reversed())
            .map_err(|e| err(format!("{}: reversed: {}", name, e)))?;
        if k2r != -k2 {
            return Err(format!("{}: reversed index {} ≠ −{}", name, k2r, k2));
        }
    }

    // Menelaus: per-vertex condition and global zero momentum sum on every
    // enumerated tropical curve.
    for (name, poly) in [("triangle-2", triangle(2)), ("square-2x2", rectangle(2, 2))] {
        let mu = momenta_for(&poly, 51)?;
        let sum: num_rational::BigRational = mu.mu.iter().sum();
        if !num_traits::Zero::is_zero(&sum) {
            return Err(format!("{}: momenta sum nonzero", name));
        }
        let curves = enumerate_rational(&poly, &mu).map_err(|e| err(format!("{}: {}", name, e)))?;
        for tc in &curves {
            for v in tc.internal_nodes() {
                if !tc.check_menelaus_vertex(v) {
                    return Err(format!("{}: tree {} vertex {} fails Menelaus", name, tc.tree_id, v));
                }
            }
        }
    }

    // Per-lattice-point balance of Gauss-map passages and solitary signs
    // against diagram linking numbers, same ray direction on both sides.
    let mut coab_curves: Vec<(String, RealRationalCurve)> = curves.clone();
    for (name, poly) in bench::suite_polygons() {
        let mut rng = SplitMix64::new(0x77aa_11ee ^ name.len() as u64);
        let c = qindex_core::sampling::random_type_i_curve(&poly, &mut rng)
            .map_err(|e| err(format!("{}", e)))?;
        coab_curves.push((format!("balance-{}", name), c));
    }
    for (name, c) in &coab_curves {
        let rows = index_linking_check(c, 97).map_err(|e| err(format!("{}: {}", name, e)))?;
        for (p, agg, lk) in &rows {
            if agg != lk {
                return Err(format!(
                    "{}: index/linking mismatch at ({}, {}): {} vs {}",
                    name, p.a, p.b, agg, lk
                ));
            }
        }
    }

    // Path independence of the index-weighted crossing count: two random
    // paths with shared endpoints agree, five pairs per curve.
    let path_curves = [
        ("line", bench::line()),
        ("conic", bench::conics()[0].curve()),
        ("nodal-cubic", bench::nodal_cubic()),
    ];
    let mut rng = SplitMix64::new(0x5eed_cafe);
    for (name, c) in &path_curves {
        let mut done = 0usize;
        let mut tries = 0usize;
        while done < 5 {
            tries += 1;
            if tries > 200 {
                return Err(format!("{}: could not draw admissible path endpoints", name));
            }
            let draw = |rng: &mut SplitMix64| {
                (
                    rng.range_i64(-1400, 1400) as f64 / 100.0,
                    rng.range_i64(-1400, 1400) as f64 / 100.0,
                )
            };
            let p = draw(&mut rng);
            let q = draw(&mut rng);
            let w = draw(&mut rng);
            let direct = match refined_path_count(c, &[p, q]) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let detour = match refined_path_count(c, &[p, w, q]) {
                Ok(v) => v,
                Err(_) => continue,
            };
            if direct != detour {
                return Err(format!(
                    "{}: path dependence: {:?} vs {:?} for endpoints {:?} → {:?}",
                    name, direct, detour, p, q
                ));
            }
            done += 1;
        }
    }

    // Refined counts are symmetric under q ↔ 1/q with nonnegative
    // coefficients.
    for (name, poly, seed) in [
        ("triangle-1", triangle(1), 61u64),
        ("triangle-2", triangle(2), 62),
        ("square-1x1", rectangle(1, 1), 63),
        ("square-2x2", rectangle(2, 2), 64),
    ] {
        let mu = momenta_for(&poly, seed)?;
        let bg = bg_invariant(&poly, &mu).map_err(|e| err(format!("{}: {}", name, e)))?;
        if !bg.is_symmetric() || !bg.has_nonnegative_coeffs() {
            return Err(format!("{}: BG = {} not symmetric/nonnegative", name, bg));
        }
    }

    Ok(format!(
        "closure/parity, squaring, reversal on {} curves; Menelaus; index/linking balance on {} curves; 5 path pairs × 3 curves; BG symmetry",
        curves.len() + random.len(),
        coab_curves.len()
    ))
}
