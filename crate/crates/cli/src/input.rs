//! JSON input schemas and their conversion into the core types.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use qindex_core::curve::{RatFunc, RealRationalCurve};
use qindex_core::ratpoly::RatPoly;
use qindex_core::tropical::MomentaConfig;
use qindex_core::{LatticePoint, LatticePolygon};

use crate::CliError;

/// `{"vertices": [[a, b], ...]}`
#[derive(Debug, Deserialize)]
pub struct PolygonInput {
    pub vertices: Vec<[i64; 2]>,
}

/// `{"polygon": {...}, "mu": ["p/q", ...]}`
#[derive(Debug, Deserialize)]
pub struct MomentaInput {
    pub polygon: PolygonInput,
    pub mu: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct RatFuncInput {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// `{"x": {"num": [...], "den": [...]}, "y": {...}, "orientation": 1,
///   "polygon": optional}` — coefficients are exact rational strings,
/// constant term first.
#[derive(Debug, Deserialize)]
pub struct CurveInput {
    pub x: RatFuncInput,
    pub y: RatFuncInput,
    #[serde(default = "default_orientation")]
    pub orientation: i8,
    #[serde(default)]
    pub polygon: Option<PolygonInput>,
}

fn default_orientation() -> i8 {
    1
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    BigRational::from_str(s.trim())
        .map_err(|e| CliError::input(format!("bad rational {:?}: {}", s, e)))
}

fn parse_poly(coeffs: &[String]) -> Result<RatPoly, CliError> {
    let cs: Result<Vec<BigRational>, CliError> =
        coeffs.iter().map(|s| parse_rational(s)).collect();
    Ok(RatPoly::new(cs?))
}

impl PolygonInput {
    pub fn build(&self) -> Result<LatticePolygon, CliError> {
        let vs: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|&[a, b]| LatticePoint::new(a, b))
            .collect();
        LatticePolygon::new(vs).map_err(|e| CliError::input(format!("bad polygon: {}", e)))
    }
}

impl MomentaInput {
    pub fn build(&self) -> Result<(LatticePolygon, MomentaConfig), CliError> {
        let poly = self.polygon.build()?;
        let mu: Result<Vec<BigRational>, CliError> =
            self.mu.iter().map(|s| parse_rational(s)).collect();
        let momenta = MomentaConfig::new(mu?)
            .map_err(|e| CliError::input(format!("bad momenta: {}", e)))?;
        Ok((poly, momenta))
    }
}

impl CurveInput {
    pub fn build(&self) -> Result<RealRationalCurve, CliError> {
        if self.orientation != 1 && self.orientation != -1 {
            return Err(CliError::input("orientation must be 1 or -1"));
        }
        let x = RatFunc::new(parse_poly(&self.x.num)?, parse_poly(&self.x.den)?)
            .map_err(|e| CliError::input(format!("bad x coordinate: {}", e)))?;
        let y = RatFunc::new(parse_poly(&self.y.num)?, parse_poly(&self.y.den)?)
            .map_err(|e| CliError::input(format!("bad y coordinate: {}", e)))?;
        let polygon = match &self.polygon {
            Some(p) => Some(p.build()?),
            None => None,
        };
        RealRationalCurve::new(x, y, self.orientation, polygon)
            .map_err(|e| CliError::input(format!("bad curve: {}", e)))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {}: {}", path.display(), e)))
}

/// A rational number for display: integers stay bare, halves as "p/2", etc.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
