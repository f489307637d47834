//! Frozen benchmark curves: the line, conics realizing each row of the
//! quantum-index table, circles with four real axis crossings, a cubic with
//! a solitary real node, and a seeded pseudorandom suite over small Newton
//! polygons.

use qindex_core::curve::{RatFunc, RealRationalCurve};
use qindex_core::lattice::{rectangle, triangle};
use qindex_core::rng::SplitMix64;
use qindex_core::sampling::random_type_i_curve;
use qindex_core::LatticePolygon;

/// x = t, y = 1 − t: quantum index ±1/2.
pub fn line() -> RealRationalCurve {
    RealRationalCurve::new(
        RatFunc::from_i64(&[0, 1], &[1]).unwrap(),
        RatFunc::from_i64(&[1, -1], &[1]).unwrap(),
        1,
        Some(triangle(1)),
    )
    .unwrap()
}

/// A conic meeting each toric boundary axis in two real points:
/// x = cx(t−a1)(t−a2)/((t−p1)(t−p2)), y = cy(t−b1)(t−b2)/((t−p1)(t−p2)).
pub struct ConicSpec {
    /// [a1, a2, b1, b2, p1, p2]: x zeros, y zeros, common poles.
    pub params: [i64; 6],
    pub cx: i64,
    pub cy: i64,
    /// Non-decreasing per-axis negative-point counts, after normalizing by
    /// the axis reflections (the table row this conic realizes).
    pub row: [i64; 3],
    /// Doubled quantum index of the diagram.
    pub k2: i64,
}

/// One representative conic per (table row, achievable index) pair.
/// Rows: (0,0,0) → k = ±2; (0,0,2) → k = ±1 or 0; (0,1,1) → k = ±1
/// (this last row also admits k = 0 realizations; see the k2 = 0 entry).
pub fn conics() -> Vec<ConicSpec> {
    vec![
        ConicSpec {
            params: [-2, 2, 3, 6, -7, -5],
            cx: 1,
            cy: -1,
            row: [0, 0, 0],
            k2: 4,
        },
        ConicSpec {
            params: [-8, 6, 9, 1, -9, 3],
            cx: -1,
            cy: -1,
            row: [0, 0, 2],
            k2: 2,
        },
        ConicSpec {
            params: [9, -7, -6, 7, 3, 5],
            cx: -1,
            cy: 1,
            row: [0, 0, 2],
            k2: 0,
        },
        ConicSpec {
            params: [-4, -1, 4, -2, -6, -7],
            cx: -1,
            cy: -1,
            row: [0, 1, 1],
            k2: 2,
        },
        ConicSpec {
            params: [-1, 9, 6, 7, 4, -4],
            cx: 1,
            cy: -1,
            row: [0, 1, 1],
            k2: -2,
        },
    ]
}

impl ConicSpec {
    pub fn curve(&self) -> RealRationalCurve {
        let [a1, a2, b1, b2, p1, p2] = self.params;
        let expand = |r1: i64, r2: i64, c: i64| [c * r1 * r2, -c * (r1 + r2), c];
        let den = expand(p1, p2, 1);
        RealRationalCurve::new(
            RatFunc::from_i64(&expand(a1, a2, self.cx), &den).unwrap(),
            RatFunc::from_i64(&expand(b1, b2, self.cy), &den).unwrap(),
            1,
            Some(triangle(2)),
        )
        .unwrap()
    }

    /// Recompute the table row from the boundary-point positions: count the
    /// negative points on each axis (y-axis at x zeros, x-axis at y zeros,
    /// ∞-axis at the poles via the sign of x/y), then normalize by the two
    /// axis reflections and sort.
    pub fn classify_row(&self) -> [i64; 3] {
        let [a1, a2, b1, b2, p1, p2] = self.params;
        let c = self.curve();
        let neg = |v: f64| if v > 0.0 { 0i64 } else { 1 };
        let ratio = |t: i64| {
            (self.cx * (t - a1) * (t - a2)) as f64 / (self.cy * (t - b1) * (t - b2)) as f64
        };
        let lx = neg(c.x.eval_f64(b1 as f64)) + neg(c.x.eval_f64(b2 as f64));
        let ly = neg(c.y.eval_f64(a1 as f64)) + neg(c.y.eval_f64(a2 as f64));
        let li = neg(ratio(p1)) + neg(ratio(p2));
        let mut best = [9i64, 9, 9];
        for (fx, fy) in [(0i64, 0i64), (1, 0), (0, 1), (1, 1)] {
            let mut row = [
                if fx == 1 { 2 - lx } else { lx },
                if fy == 1 { 2 - ly } else { ly },
                if fx + fy == 1 { 2 - li } else { li },
            ];
            row.sort();
            if row < best {
                best = row;
            }
        }
        best
    }
}

/// Circle of center (x0, y0) and radius r under the rational angle chart:
/// x = ((x0−r)t² + (x0+r))/(1+t²), y = (y0 t² + 2rt + y0)/(1+t²).
pub fn circle(x0: i64, y0: i64, r: i64) -> RealRationalCurve {
    RealRationalCurve::new(
        RatFunc::from_i64(&[x0 + r, 0, x0 - r], &[1, 0, 1]).unwrap(),
        RatFunc::from_i64(&[y0, 2 * r, y0], &[1, 0, 1]).unwrap(),
        1,
        None,
    )
    .unwrap()
}

/// Circles crossing both coordinate axes in four real points, with their
/// doubled quantum indices, plus the circle through the origin (k = 1/2).
pub fn circles() -> Vec<(RealRationalCurve, i64, &'static str)> {
    vec![
        (circle(1, 1, 2), 0, "center (1,1) radius 2"),
        (circle(4, 4, 5), 2, "center (4,4) radius 5"),
        (circle(-4, 4, 5), -2, "center (-4,4) radius 5"),
    ]
}

pub fn origin_circle() -> RealRationalCurve {
    circle(3, 4, 5)
}

/// x = t² − 4, y = (t−1)(t−3)(2t+1): a rational cubic whose conjugate
/// parameter pair t = ±i maps to the solitary real point (−5, 10).
/// Frozen invariants: k = 1, Rot_Log = 0, E = 1, real index (1, 0).
pub fn nodal_cubic() -> RealRationalCurve {
    RealRationalCurve::new(
        RatFunc::from_i64(&[-4, 0, 1], &[1]).unwrap(),
        RatFunc::from_i64(&[3, 2, -7, 2], &[1]).unwrap(),
        1,
        None,
    )
    .unwrap()
}

pub fn suite_polygons() -> Vec<(&'static str, LatticePolygon)> {
    vec![
        ("triangle-1", triangle(1)),
        ("triangle-2", triangle(2)),
        ("square-1x1", rectangle(1, 1)),
        ("triangle-3", triangle(3)),
        ("square-2x2", rectangle(2, 2)),
    ]
}

/// Seed-fixed random toric type-I curves: `per_polygon` draws from each of
/// the five small polygons, one shared deterministic stream.
pub fn random_suite(seed: u64, per_polygon: usize) -> Vec<(String, RealRationalCurve)> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    for (name, poly) in suite_polygons() {
        for i in 0..per_polygon {
            let c = random_type_i_curve(&poly, &mut rng)
                .expect("seeded draw produces a valid curve");
            out.push((format!("{}#{}", name, i), c));
        }
    }
    out
}
