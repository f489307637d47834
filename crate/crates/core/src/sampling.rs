//! Seeded random generators: real rational curves of a given Newton polygon
//! with totally real transversal boundary, and generic momenta
//! configurations for tropical enumeration.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::curve::{CurveError, RatFunc, RealRationalCurve};
use crate::lattice::LatticePolygon;
use crate::ratpoly::RatPoly;
use crate::rng::SplitMix64;
use crate::tropical::{MomentaConfig, TropicalDegree, TropicalError};

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A curve of the given polygon whose boundary divisor is reduced, totally
/// real, and transversal: one simple boundary point per primitive boundary
/// stretch, at distinct random rational parameters.
///
/// A side with outward primitive normal n and integer length l contributes
/// l boundary points of order vector −n, hence a factor (t − tᵢ)^{−nₐ} to x
/// and (t − tᵢ)^{−n_b} to y; the zero-sum of weighted normals makes both
/// coordinates honest rational functions, finite and nonzero at t = ∞.
pub fn random_type_i_curve(
    polygon: &LatticePolygon,
    rng: &mut SplitMix64,
) -> Result<RealRationalCurve, CurveError> {
    let sides = polygon.sides();
    let m: i64 = sides.iter().map(|s| s.int_length).sum();
    // Distinct rational parameters.
    let mut params: Vec<BigRational> = Vec::new();
    while (params.len() as i64) < m {
        let num = rng.range_i64(-999, 999);
        let den = rng.range_i64(1, 9);
        let t = rational(num, den);
        if !params.contains(&t) {
            params.push(t);
        }
    }
    let mut x_num = RatPoly::from_i64(&[1]);
    let mut x_den = RatPoly::from_i64(&[1]);
    let mut y_num = RatPoly::from_i64(&[1]);
    let mut y_den = RatPoly::from_i64(&[1]);
    let mut idx = 0usize;
    for side in &sides {
        for _ in 0..side.int_length {
            let t = params[idx].clone();
            idx += 1;
            let lin = RatPoly::new(alloc::vec![-t, BigRational::one()]);
            let (ox, oy) = (-side.normal.a, -side.normal.b);
            for _ in 0..ox.max(0) {
                x_num = x_num.mul(&lin);
            }
            for _ in 0..(-ox).max(0) {
                x_den = x_den.mul(&lin);
            }
            for _ in 0..oy.max(0) {
                y_num = y_num.mul(&lin);
            }
            for _ in 0..(-oy).max(0) {
                y_den = y_den.mul(&lin);
            }
        }
    }
    let sign = |r: &mut SplitMix64| if r.bool() { 1i64 } else { -1 };
    let cx = rational(sign(rng) * rng.range_i64(1, 20), rng.range_i64(1, 20));
    let cy = rational(sign(rng) * rng.range_i64(1, 20), rng.range_i64(1, 20));
    RealRationalCurve::new(
        RatFunc::new(x_num.scale(&cx), x_den)?,
        RatFunc::new(y_num.scale(&cy), y_den)?,
        1,
        Some(polygon.clone()),
    )
}

/// A random boundary-momenta configuration for the degree: denominators
/// fixed at 1000, numerators uniform in [−10⁶, 10⁶], last entry balancing
/// the sum to zero. The caller retries on non-generic configurations.
pub fn random_momenta(
    degree: &TropicalDegree,
    rng: &mut SplitMix64,
) -> Result<MomentaConfig, TropicalError> {
    let m = degree.num_leaves();
    let mut mu: Vec<BigRational> = Vec::with_capacity(m);
    let mut sum = BigRational::zero();
    for _ in 0..m - 1 {
        let v = rational(rng.range_i64(-1_000_000, 1_000_000), 1000);
        sum += &v;
        mu.push(v);
    }
    mu.push(-sum);
    MomentaConfig::new(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{boundary_divisor, implied_polygon, quantum_index_doubled, same_up_to_translation};
    use crate::lattice::{rectangle, triangle};

    #[test]
    fn random_curves_match_their_polygon() {
        let mut rng = SplitMix64::new(0x5eed);
        for poly in [triangle(1), triangle(2), rectangle(1, 1)] {
            for _ in 0..5 {
                let c = random_type_i_curve(&poly, &mut rng).unwrap();
                let div = boundary_divisor(&c).unwrap();
                let total: i64 = div.iter().map(|b| b.mult).sum();
                assert_eq!(total, poly.boundary_lattice_count());
                let implied = implied_polygon(&div).unwrap();
                assert!(same_up_to_translation(&implied, &poly));
                // The index diagram closes up and the doubled index obeys
                // the parity and range constraints.
                let k2 = quantum_index_doubled(&c).unwrap();
                let a2 = poly.double_area();
                assert!(k2.abs() <= a2);
                assert_eq!((k2 - a2).rem_euclid(2), 0);
            }
        }
    }

    #[test]
    fn momenta_are_balanced() {
        let mut rng = SplitMix64::new(9);
        let degree = TropicalDegree::of_polygon(&triangle(2));
        let mu = random_momenta(&degree, &mut rng).unwrap();
        assert_eq!(mu.mu.len(), 6);
    }
}
