//! Numerical oracles: logarithmic area, logarithmic Gauss rotation number,
//! solitary real singularities, and the doubled-argument mapping degree.

use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::curve::{
    boundary_divisor, index_diagram, real_arcs, CurveError, ParamLocus, RealRationalCurve,
};
use crate::fmath;
use crate::lattice::LatticePoint;
use crate::ratpoly::{isolate_real_roots, RatPoly, C64};
use crate::rng::SplitMix64;

pub const PI: f64 = core::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub enum LognumError {
    /// The matched-cutoff quadrature did not converge under refinement.
    QuadratureFailure,
    /// The logarithmic Gauss direction underflowed at sample resolution.
    DegenerateGauss,
    /// A quantity expected to snap to an (half-)integer missed the snap
    /// threshold; carries the residual.
    SnapFailure { residual: f64 },
    /// Zero search could not certify isolation (winding bookkeeping did not
    /// balance at the depth limit).
    ClusterUnresolved,
    /// No generic target found within the resample budget.
    TargetDegenerate,
    /// A query path endpoint lies on the curve's Log image.
    EndpointOnCurve,
    Curve(CurveError),
}

impl fmt::Display for LognumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LognumError::QuadratureFailure => write!(f, "quadrature failed to converge"),
            LognumError::DegenerateGauss => write!(f, "degenerate logarithmic Gauss direction"),
            LognumError::SnapFailure { residual } => {
                write!(f, "integer snap failed (residual {})", residual)
            }
            LognumError::ClusterUnresolved => write!(f, "zero cluster unresolved"),
            LognumError::TargetDegenerate => write!(f, "no generic target found"),
            LognumError::EndpointOnCurve => write!(f, "path endpoint on the curve"),
            LognumError::Curve(e) => write!(f, "{}", e),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LognumError {}

impl From<CurveError> for LognumError {
    fn from(e: CurveError) -> Self {
        LognumError::Curve(e)
    }
}

/// Dense f64 polynomial with its derivative, for fast repeated evaluation.
struct PolyF {
    c: Vec<f64>,
    d: Vec<f64>,
}

impl PolyF {
    fn from(p: &RatPoly) -> Self {
        let c: Vec<f64> = p
            .coeffs()
            .iter()
            .map(|q| q.to_f64().unwrap_or(f64::NAN))
            .collect();
        let d: Vec<f64> = c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| v * i as f64)
            .collect();
        Self { c, d }
    }

    fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for &v in self.c.iter().rev() {
            acc = acc * t + v;
        }
        acc
    }

    fn eval_d(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for &v in self.d.iter().rev() {
            acc = acc * t + v;
        }
        acc
    }

    fn eval_c(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &v in self.c.iter().rev() {
            acc = acc.mul(z).add(C64::new(v, 0.0));
        }
        acc
    }

    fn eval_dc(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &v in self.d.iter().rev() {
            acc = acc.mul(z).add(C64::new(v, 0.0));
        }
        acc
    }
}

/// log|f| in factored form, log|f(t)| = lnc + Σ m·log|t − r|, the sum over
/// roots and poles with signed multiplicities. Points are queried as
/// base + offset so that an offset from an anchored root stays exact even
/// when Horner evaluation would cancel catastrophically.
struct LogCoord {
    lnc: f64,
    /// (re, im, signed multiplicity); im > 0 stands for the conjugate pair,
    /// contributing m·log((t−re)² + im²).
    roots: Vec<(f64, f64, f64)>,
}

impl LogCoord {
    fn u(&self, base: f64, off: f64) -> f64 {
        let mut s = self.lnc;
        for &(re, im, m) in &self.roots {
            let d = (base - re) + off;
            if im == 0.0 {
                s += m * fmath::ln(fmath::abs(d));
            } else {
                s += m * fmath::ln(d * d + im * im);
            }
        }
        s
    }

    fn du(&self, base: f64, off: f64) -> f64 {
        let mut s = 0.0;
        for &(re, im, m) in &self.roots {
            let d = (base - re) + off;
            if im == 0.0 {
                s += m / d;
            } else {
                s += m * 2.0 * d / (d * d + im * im);
            }
        }
        s
    }

    /// Fix the additive constant so that u(probe) matches the reference.
    fn calibrate(&mut self, probe: f64, reference: f64) {
        self.lnc = 0.0;
        self.lnc = reference - self.u(probe, 0.0);
    }

    /// A probe value well separated from every root.
    fn probe_point(&self) -> f64 {
        let mut best = (0.0, -1.0);
        for k in 0..24 {
            let cand = 0.137 + 0.731 * k as f64 * if k % 2 == 0 { 1.0 } else { -1.0 };
            let mut dist = f64::INFINITY;
            for &(re, im, _) in &self.roots {
                dist = dist.min(fmath::hypot(cand - re, im));
            }
            if dist > best.1 {
                best = (cand, dist);
            }
        }
        best.0
    }
}

/// Numeric view of a curve: coefficient form for complex evaluation, and
/// factored log form in the t chart and the τ = 1/t chart.
struct CurveNum {
    xn: PolyF,
    xd: PolyF,
    yn: PolyF,
    yd: PolyF,
    tx: LogCoord,
    ty: LogCoord,
    ix: LogCoord,
    iy: LogCoord,
}

impl CurveNum {
    fn new(c: &RealRationalCurve) -> Result<Self, CurveError> {
        let divisor = boundary_divisor(c)?;
        let mut tx_roots: Vec<(f64, f64, f64)> = Vec::new();
        let mut ty_roots: Vec<(f64, f64, f64)> = Vec::new();
        let mut ix_roots: Vec<(f64, f64, f64)> = Vec::new();
        let mut iy_roots: Vec<(f64, f64, f64)> = Vec::new();
        for b in &divisor {
            let (ox, oy) = b.order_vec;
            match &b.param {
                ParamLocus::Real(r) => {
                    let t = r.approx();
                    if ox != 0 {
                        tx_roots.push((t, 0.0, ox as f64));
                        if t != 0.0 {
                            ix_roots.push((1.0 / t, 0.0, ox as f64));
                        }
                    }
                    if oy != 0 {
                        ty_roots.push((t, 0.0, oy as f64));
                        if t != 0.0 {
                            iy_roots.push((1.0 / t, 0.0, oy as f64));
                        }
                    }
                }
                ParamLocus::ConjugatePair { re, im } => {
                    let n = re * re + im * im;
                    if ox != 0 {
                        tx_roots.push((*re, *im, ox as f64));
                        ix_roots.push((re / n, im / n, ox as f64));
                    }
                    if oy != 0 {
                        ty_roots.push((*re, *im, oy as f64));
                        iy_roots.push((re / n, im / n, oy as f64));
                    }
                }
                ParamLocus::Infinity => {}
            }
        }
        // The τ chart sees the boundary at ∞ as a root/pole at τ = 0, of
        // order equal to the order at infinity.
        let oxi = c.x.order_at_infinity();
        let oyi = c.y.order_at_infinity();
        if oxi != 0 {
            ix_roots.push((0.0, 0.0, oxi as f64));
        }
        if oyi != 0 {
            iy_roots.push((0.0, 0.0, oyi as f64));
        }
        let mut cn = Self {
            xn: PolyF::from(c.x.num()),
            xd: PolyF::from(c.x.den()),
            yn: PolyF::from(c.y.num()),
            yd: PolyF::from(c.y.den()),
            tx: LogCoord {
                lnc: 0.0,
                roots: tx_roots,
            },
            ty: LogCoord {
                lnc: 0.0,
                roots: ty_roots,
            },
            ix: LogCoord {
                lnc: 0.0,
                roots: ix_roots,
            },
            iy: LogCoord {
                lnc: 0.0,
                roots: iy_roots,
            },
        };
        let p = cn.tx.probe_point();
        let r = fmath::ln(fmath::abs(c.x.eval_f64(p)));
        cn.tx.calibrate(p, r);
        let p = cn.ty.probe_point();
        let r = fmath::ln(fmath::abs(c.y.eval_f64(p)));
        cn.ty.calibrate(p, r);
        let p = cn.ix.probe_point();
        let r = fmath::ln(fmath::abs(c.x.eval_f64(1.0 / p)));
        cn.ix.calibrate(p, r);
        let p = cn.iy.probe_point();
        let r = fmath::ln(fmath::abs(c.y.eval_f64(1.0 / p)));
        cn.iy.calibrate(p, r);
        Ok(cn)
    }

    /// ½(u·v' − v·u') in the t chart, at t = base + off.
    fn green_t(&self, base: f64, off: f64) -> f64 {
        0.5 * (self.tx.u(base, off) * self.ty.du(base, off)
            - self.ty.u(base, off) * self.tx.du(base, off))
    }

    /// Same 1-form written in the τ chart.
    fn green_tau(&self, base: f64, off: f64) -> f64 {
        0.5 * (self.ix.u(base, off) * self.iy.du(base, off)
            - self.iy.u(base, off) * self.ix.du(base, off))
    }

    fn x_c(&self, z: C64) -> C64 {
        self.xn.eval_c(z).div(self.xd.eval_c(z))
    }

    fn y_c(&self, z: C64) -> C64 {
        self.yn.eval_c(z).div(self.yd.eval_c(z))
    }

    fn dx_c(&self, z: C64) -> C64 {
        let n = self.xn.eval_c(z);
        let d = self.xd.eval_c(z);
        self.xn.eval_dc(z).mul(d).sub(n.mul(self.xd.eval_dc(z))).div(d.mul(d))
    }

    fn dy_c(&self, z: C64) -> C64 {
        let n = self.yn.eval_c(z);
        let d = self.yd.eval_c(z);
        self.yn.eval_dc(z).mul(d).sub(n.mul(self.yd.eval_dc(z))).div(d.mul(d))
    }
}

fn adaptive_simpson(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Option<f64> {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn rec(
        f: &mut impl FnMut(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Option<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        if !flm.is_finite() || !frm.is_finite() {
            return None;
        }
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if depth == 0 {
            return None;
        }
        if fmath::abs(delta) <= 15.0 * tol {
            return Some(left + right + delta / 15.0);
        }
        let l = rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)?;
        let r = rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1)?;
        Some(l + r)
    }
    if a == b {
        return Some(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    if !fa.is_finite() || !fm.is_finite() || !fb.is_finite() {
        return None;
    }
    let whole = simpson(fa, fm, fb, b - a);
    rec(f, a, b, fa, fm, fb, whole, tol, 44)
}

/// ∫ F dt over the flank t ∈ (c, c ± far] with cutoff |t − c| = δ, taken in
/// the increasing-t orientation, via the substitution t = c ± e^s. F takes
/// (base, offset) so the anchored root distance stays exact.
fn flank(
    f: &impl Fn(f64, f64) -> f64,
    c: f64,
    dir: f64,
    far: f64,
    delta: f64,
    tol: f64,
) -> Option<f64> {
    debug_assert!(far > delta);
    adaptive_simpson(
        &mut |s: f64| {
            let e = fmath::exp(s);
            f(c, dir * e) * e
        },
        fmath::ln(delta),
        fmath::ln(far),
        tol,
    )
}

/// The real boundary parameters of a curve (finite ones, sorted), whether ∞
/// is a boundary point, and whether any conjugate pairs exist.
struct RealParams {
    finite: Vec<f64>,
    inf: bool,
}

fn real_params(curve: &RealRationalCurve) -> Result<RealParams, CurveError> {
    let divisor = boundary_divisor(curve)?;
    let mut finite = Vec::new();
    let mut inf = false;
    for b in &divisor {
        match &b.param {
            ParamLocus::Real(r) => finite.push(r.approx()),
            ParamLocus::Infinity => inf = true,
            ParamLocus::ConjugatePair { .. } => {}
        }
    }
    Ok(RealParams { finite, inf })
}

fn area_log_at_delta(
    cn: &CurveNum,
    params: &RealParams,
    delta: f64,
    tol: f64,
) -> Option<f64> {
    let ft = |base: f64, off: f64| cn.green_t(base, off);
    let ftau = |base: f64, off: f64| cn.green_tau(base, off);
    let mut total = 0.0;
    let ts = &params.finite;
    let n = ts.len();

    if n == 0 {
        // No finite boundary point: a single arc through the whole line.
        if params.inf {
            // All boundary concentrated at ∞: two singular flanks in τ.
            total += adaptive_simpson(&mut |t| ft(t, 0.0), -1.0, 1.0, tol)?;
            total -= flank(&ftau, 0.0, 1.0, 1.0, delta, tol)?;
            total -= flank(&ftau, 0.0, -1.0, 1.0, delta, tol)?;
        } else {
            total += adaptive_simpson(&mut |t| ft(t, 0.0), -1.0, 1.0, tol)?;
            // τ from 1 down to −1 as t runs 1 → ∞ → −1.
            total -= adaptive_simpson(&mut |tau| ftau(tau, 0.0), -1.0, 1.0, tol)?;
        }
        return Some(total);
    }

    // Finite arcs between consecutive boundary parameters.
    for i in 0..n.saturating_sub(1) {
        let (a, b) = (ts[i], ts[i + 1]);
        let mid = 0.5 * (a + b);
        total += flank(&ft, a, 1.0, mid - a, delta, tol)?;
        total += flank(&ft, b, -1.0, b - mid, delta, tol)?;
    }

    // The wrap arc: last param → ∞ → first param.
    let mr = if ts[n - 1] >= 0.0 { ts[n - 1] + 1.0 } else { 1.0 };
    let ml = if ts[0] <= 0.0 { ts[0] - 1.0 } else { -1.0 };
    total += flank(&ft, ts[n - 1], 1.0, mr - ts[n - 1], delta, tol)?;
    total += flank(&ft, ts[0], -1.0, ts[0] - ml, delta, tol)?;
    let tau_r = 1.0 / mr;
    let tau_l = 1.0 / ml;
    if params.inf {
        // ∞ is itself a boundary point: matched singular flanks in τ.
        total -= flank(&ftau, 0.0, 1.0, tau_r, delta, tol)?;
        total -= flank(&ftau, 0.0, -1.0, -tau_l, delta, tol)?;
    } else {
        // Regular pass through τ = 0, integrated against decreasing τ.
        total -= adaptive_simpson(&mut |tau| ftau(tau, 0.0), tau_l, tau_r, tol)?;
    }
    Some(total)
}

/// Logarithmic area of the real locus: the Green's-theorem line integral
/// ½∮(u dv − v du) with u = log|x|, v = log|y|, over the oriented real
/// arcs, with matched cutoffs around the boundary parameters.
pub fn area_log(curve: &RealRationalCurve, tol: f64) -> Result<(f64, f64), LognumError> {
    let cn = CurveNum::new(curve)?;
    let params = real_params(curve)?;
    let qtol = (tol * 0.05).max(1e-12);
    let a1 = area_log_at_delta(&cn, &params, 1e-8, qtol)
        .ok_or(LognumError::QuadratureFailure)?;
    let a2 = area_log_at_delta(&cn, &params, 1e-10, qtol)
        .ok_or(LognumError::QuadratureFailure)?;
    let err = fmath::abs(a2 - a1) + 20.0 * qtol;
    if !a2.is_finite() {
        return Err(LognumError::QuadratureFailure);
    }
    Ok((curve.orientation as f64 * a2, err))
}

/// Snap a logarithmic area to 2k with k half-integer: returns the doubled
/// index.
pub fn snap_double_k(area: f64, tol: f64) -> Result<i64, LognumError> {
    let twice = 2.0 * area / (PI * PI);
    let k2 = fmath::round(twice);
    let residual = fmath::abs(twice - k2);
    if residual > 2.0 * tol / (PI * PI) + 1e-9 {
        return Err(LognumError::SnapFailure { residual });
    }
    Ok(k2 as i64)
}

/// Degree of the logarithmic Gauss map: the projective direction of
/// (x'/x, y'/y) sweeps the circle of directions as t runs over the
/// parameter circle; the degree is the signed count of passages through a
/// generic slope λ. With u' = A/(Nx·Dx) and v' = B/(Ny·Dy) for exact
/// integer polynomials A, B, the passages are real roots of
/// R = B·Nx·Dx − λ·A·Ny·Dy, each signed by dθ/dt there, so the whole count
/// reduces to exact root isolation plus a sign evaluation.
pub fn rot_log(curve: &RealRationalCurve) -> Result<i64, LognumError> {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    let (nx, dx) = (curve.x.num(), curve.x.den());
    let (ny, dy) = (curve.y.num(), curve.y.den());
    let a = nx.derivative().mul(dx).sub(&nx.mul(&dx.derivative()));
    let b = ny.derivative().mul(dy).sub(&ny.mul(&dy.derivative()));
    let px = nx.mul(dx);
    let py = ny.mul(dy);
    if a.degree() < 0 || b.degree() < 0 {
        return Err(LognumError::DegenerateGauss);
    }
    let bpx = b.mul(&px);
    let apy = a.mul(&py);
    let pxpy = px.mul(&py);

    // f64 forms for the sign evaluation at isolated roots.
    let (af, bf) = (PolyF::from(&a), PolyF::from(&b));
    let (pxf, pyf) = (PolyF::from(&px), PolyF::from(&py));

    let mut rng = SplitMix64::new(0x5bd1_e995_9e37_79b9);
    'attempt: for _ in 0..24 {
        let lam = BigRational::new(
            BigInt::from(rng.range_i64(-997, 997)),
            BigInt::from(rng.range_i64(2, 31)),
        );
        let r = bpx.sub(&apy.scale(&lam));
        // A degree drop means the direction at t = ∞ crosses λ itself.
        if r.degree() < bpx.degree().max(apy.degree()) {
            continue;
        }
        // Common boundary parameters of x and y produce spurious roots;
        // strip them exactly.
        let g = r.gcd(&pxpy);
        let (rr, rem) = r.div_rem(&g);
        debug_assert!(rem.degree() < 0);
        if rr.degree() < 0 {
            continue;
        }
        let sf = rr.square_free_part();
        if sf.degree() < rr.degree() {
            // Tangential passage: not a generic slope.
            continue;
        }
        let width = BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000_000i64));
        let roots = isolate_real_roots(&sf, &width);
        let mut total = 0i64;
        for root in &roots {
            let t = root.approx();
            let (av, bv) = (af.eval(t), bf.eval(t));
            let (pxv, pyv) = (pxf.eval(t), pyf.eval(t));
            let (adv, bdv) = (af.eval_d(t), bf.eval_d(t));
            let (pxdv, pydv) = (pxf.eval_d(t), pyf.eval_d(t));
            // dθ/dt has the sign of v''u' − v'u'' cleared of (positive)
            // square denominators.
            let s = (bdv * pyv - bv * pydv) * av * pxv - (adv * pxv - av * pxdv) * bv * pyv;
            let scale = fmath::abs(bdv * pyv * av * pxv)
                + fmath::abs(bv * pydv * av * pxv)
                + fmath::abs(adv * pxv * bv * pyv)
                + fmath::abs(av * pxdv * bv * pyv)
                + f64::MIN_POSITIVE;
            if !s.is_finite() || fmath::abs(s) < 1e-9 * scale {
                continue 'attempt;
            }
            total += if s > 0.0 { 1 } else { -1 };
        }
        return Ok(curve.orientation as i64 * total);
    }
    Err(LognumError::DegenerateGauss)
}

/// A solitary real singularity: an isolated real point of the curve coming
/// from a conjugate pair of parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SolitaryPoint {
    /// Upper-half-plane parameter.
    pub param: C64,
    /// Local intersection sign of the complex-orientation half with the
    /// quadrant, quadrants (±,±) oriented counterclockwise and mixed ones
    /// clockwise.
    pub lambda: i8,
    /// Lattice point recording the tracked argument lift (arg x, arg y)/π.
    pub real_index: LatticePoint,
}

pub fn e_total(points: &[SolitaryPoint]) -> i64 {
    points.iter().map(|p| p.lambda as i64).sum()
}

/// Signed passages of the logarithmic Gauss map through the ray direction
/// `eps`, per real arc, each arc tagged with its lattice real index
/// (diagram vertex). A passage is a parameter t with (x'/x, y'/y)(t) a
/// positive multiple of eps; its sign is the turning direction of the Gauss
/// map there, adjusted by the curve's traversal orientation.
///
/// Errors with DegenerateGauss when `eps` is non-generic for this curve
/// (tangential passage, passage at t = ∞, or a passage at a boundary
/// parameter); the caller should resample the direction.
pub fn gauss_passages(
    curve: &RealRationalCurve,
    eps: (i64, i64),
) -> Result<Vec<(LatticePoint, i64)>, LognumError> {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    let diagram = index_diagram(curve).map_err(LognumError::Curve)?;
    let arcs = real_arcs(curve).map_err(LognumError::Curve)?;
    let k = arcs.samples.len();
    let vertex_of_arc = |i: usize| -> LatticePoint {
        if curve.orientation == 1 {
            diagram.vertices[i]
        } else {
            diagram.vertices[k - 1 - i]
        }
    };
    // Finite boundary parameters in increasing order; arc i spans
    // (p_i, p_{i+1}) cyclically, with every wrap-around parameter range
    // (t below p_0 or above the last finite p) belonging to the arc through
    // or adjacent to ∞ (see log_image_arcs).
    let finite: Vec<f64> = arcs
        .params
        .iter()
        .filter_map(|p| match p {
            ParamLocus::Real(r) => Some(r.approx()),
            _ => None,
        })
        .collect();
    let nf = finite.len();
    let arc_of = |t: f64| -> usize {
        if t < finite[0] {
            k - 1
        } else if t > finite[nf - 1] {
            nf - 1
        } else {
            let j = finite.iter().filter(|&&p| p < t).count();
            j - 1
        }
    };

    let (nx, dx) = (curve.x.num(), curve.x.den());
    let (ny, dy) = (curve.y.num(), curve.y.den());
    let a = nx.derivative().mul(dx).sub(&nx.mul(&dx.derivative()));
    let b = ny.derivative().mul(dy).sub(&ny.mul(&dy.derivative()));
    let px = nx.mul(dx);
    let py = ny.mul(dy);
    if a.degree() < 0 || b.degree() < 0 {
        return Err(LognumError::DegenerateGauss);
    }
    // u' = A/px, v' = B/py; (u',v') ∥ eps on the zero set of
    // r = e2·A·py − e1·B·px (cleared of the positive square denominators).
    let e1 = BigRational::from(BigInt::from(eps.0));
    let e2 = BigRational::from(BigInt::from(eps.1));
    let apy = a.mul(&py);
    let bpx = b.mul(&px);
    let r = apy.scale(&e2).sub(&bpx.scale(&e1));
    // A degree drop means the Gauss direction at t = ∞ lies on eps itself.
    if r.degree() < apy.degree().max(bpx.degree()) {
        return Err(LognumError::DegenerateGauss);
    }
    let pxpy = px.mul(&py);
    if r.degree() < 0 {
        return Ok((0..k).map(|i| (vertex_of_arc(i), 0)).collect());
    }
    // Shared boundary parameters of x and y produce structural spurious
    // roots (both px and py vanish); strip them exactly.
    let g = r.gcd(&pxpy);
    let (rr, _) = r.div_rem(&g);
    if rr.degree() < 0 {
        return Err(LognumError::DegenerateGauss);
    }
    let sf = rr.square_free_part();
    if sf.degree() < rr.degree() {
        // Tangential passage: non-generic direction.
        return Err(LognumError::DegenerateGauss);
    }

    let (af, bf) = (PolyF::from(&a), PolyF::from(&b));
    let (pxf, pyf) = (PolyF::from(&px), PolyF::from(&py));
    let width = BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000_000i64));
    let roots = isolate_real_roots(&sf, &width);
    let mut counts = alloc::vec![0i64; k];
    for root in &roots {
        let t = root.approx();
        let (av, bv) = (af.eval(t), bf.eval(t));
        let (pxv, pyv) = (pxf.eval(t), pyf.eval(t));
        // Only passages through the positive eps ray count: the dot product
        // e·(u', v') must be positive there.
        let dot = (eps.0 as f64 * av * pyv + eps.1 as f64 * bv * pxv) * (pxv * pyv);
        let dscale = fmath::abs(av * pyv * pxv * pyv)
            + fmath::abs(bv * pxv * pxv * pyv)
            + f64::MIN_POSITIVE;
        if !dot.is_finite() || fmath::abs(dot) < 1e-9 * dscale {
            return Err(LognumError::DegenerateGauss);
        }
        if dot < 0.0 {
            continue;
        }
        let (adv, bdv) = (af.eval_d(t), bf.eval_d(t));
        let (pxdv, pydv) = (pxf.eval_d(t), pyf.eval_d(t));
        // dθ/dt has the sign of v''u' − v'u'' cleared of (positive) square
        // denominators, exactly as in rot_log.
        let s = (bdv * pyv - bv * pydv) * av * pxv - (adv * pxv - av * pxdv) * bv * pyv;
        let scale = fmath::abs(bdv * pyv * av * pxv)
            + fmath::abs(bv * pydv * av * pxv)
            + fmath::abs(adv * pxv * bv * pyv)
            + fmath::abs(av * pxdv * bv * pyv)
            + f64::MIN_POSITIVE;
        if !s.is_finite() || fmath::abs(s) < 1e-9 * scale {
            return Err(LognumError::DegenerateGauss);
        }
        let sign = if s > 0.0 { 1i64 } else { -1 } * curve.orientation as i64;
        counts[arc_of(t)] += sign;
    }
    Ok((0..k)
        .map(|i| (vertex_of_arc(i), counts[i]))
        .collect())
}

/// For every lattice point (a, b) in a window around the diagram, compare
/// the arc/solitary aggregation
///   −Σ_{arcs with index (a,b)} passages + Σ_{solitary with index (a,b)} λ
/// against the ray-crossing linking number of (a, b) with the diagram, both
/// computed with the same generic direction. Returns (point, aggregate,
/// linking) triples; the two numbers agree for every point when the
/// complex-orientation bookkeeping is consistent.
pub fn index_linking_check(
    curve: &RealRationalCurve,
    seed: u64,
) -> Result<Vec<(LatticePoint, i64, i64)>, LognumError> {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    let diagram = index_diagram(curve).map_err(LognumError::Curve)?;
    let solitary = solitary_points(curve)?;
    // Window: diagram hull and all solitary indices, padded by one.
    let mut lo = (i64::MAX, i64::MAX);
    let mut hi = (i64::MIN, i64::MIN);
    for v in diagram
        .vertices
        .iter()
        .chain(solitary.iter().map(|s| &s.real_index))
    {
        lo = (lo.0.min(v.a), lo.1.min(v.b));
        hi = (hi.0.max(v.a), hi.1.max(v.b));
    }
    let mut rng = SplitMix64::new(seed);
    'eps: for _ in 0..64 {
        let q = rng.range_i64(2, 997);
        let p = rng.range_i64(1, q);
        if num_integer::Integer::gcd(&p, &q) != 1 {
            continue;
        }
        let eps = (q, p);
        let passages = match gauss_passages(curve, eps) {
            Ok(v) => v,
            Err(LognumError::DegenerateGauss) => continue 'eps,
            Err(e) => return Err(e),
        };
        let eps_rat = (
            BigRational::from(BigInt::from(eps.0)),
            BigRational::from(BigInt::from(eps.1)),
        );
        let mut out = Vec::new();
        for a in (lo.0 - 1)..=(hi.0 + 1) {
            for b in (lo.1 - 1)..=(hi.1 + 1) {
                let lk = match crate::curve::linking_dir(
                    &(
                        BigRational::from(BigInt::from(a)),
                        BigRational::from(BigInt::from(b)),
                    ),
                    &diagram,
                    &eps_rat,
                ) {
                    Some(v) => v,
                    None => continue 'eps,
                };
                let agg: i64 = passages
                    .iter()
                    .filter(|(v, _)| v.a == a && v.b == b)
                    .map(|(_, c)| -c)
                    .sum::<i64>()
                    + solitary
                        .iter()
                        .filter(|s| s.real_index.a == a && s.real_index.b == b)
                        .map(|s| s.lambda as i64)
                        .sum::<i64>();
                out.push((LatticePoint { a, b }, agg, lk));
            }
        }
        return Ok(out);
    }
    Err(LognumError::DegenerateGauss)
}

/// Winding number of the plane vector field `f` along the rectangle
/// boundary, by adaptive argument tracking. None when unreliable.
///
/// `features` marks points near which the field's argument can swing by a
/// multiple of pi inside a window far narrower than the edge (zeros and
/// poles of the coordinates). Each edge is pre-split at the feature's
/// projection, bracketed geometrically, so that no dyadic segment can
/// swallow a full turn unnoticed.
fn box_winding(
    f: &impl Fn(C64) -> C64,
    lo: C64,
    hi: C64,
    features: &[C64],
) -> Option<f64> {
    let corners = [
        lo,
        C64::new(hi.re, lo.im),
        hi,
        C64::new(lo.re, hi.im),
        lo,
    ];
    let mut total = 0.0;
    for w in corners.windows(2) {
        let stops = edge_breakpoints(w[0], w[1], features);
        let mut prev = w[0];
        for p in stops {
            total += arg_along(f, prev, p, 0)?;
            prev = p;
        }
        total += arg_along(f, prev, w[1], 0)?;
    }
    Some(total / (2.0 * PI))
}

/// Interior breakpoints of the axis-parallel segment [a, b] induced by the
/// feature points, in traversal order.
fn edge_breakpoints(a: C64, b: C64, features: &[C64]) -> Vec<C64> {
    let horizontal = a.im == b.im;
    let (from, to) = if horizontal { (a.re, b.re) } else { (a.im, b.im) };
    let (min, max) = if from < to { (from, to) } else { (to, from) };
    let mut cuts: Vec<f64> = Vec::new();
    for fpt in features {
        let (center, dist) = if horizontal {
            (fpt.re, fmath::abs(fpt.im - a.im))
        } else {
            (fpt.im, fmath::abs(fpt.re - a.re))
        };
        let w = dist.max(1e-12);
        for k in [-256.0, -16.0, -1.0, 0.0, 1.0, 16.0, 256.0] {
            let c = center + k * w;
            if c > min && c < max {
                cuts.push(c);
            }
        }
    }
    if from < to {
        cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    } else {
        cuts.sort_by(|p, q| q.partial_cmp(p).unwrap());
    }
    cuts.dedup();
    cuts.into_iter()
        .map(|c| {
            if horizontal {
                C64::new(c, a.im)
            } else {
                C64::new(a.re, c)
            }
        })
        .collect()
}

fn arg_along(f: &impl Fn(C64) -> C64, a: C64, b: C64, depth: u32) -> Option<f64> {
    let va = f(a);
    let vb = f(b);
    if !va.re.is_finite() || !va.im.is_finite() || va.abs() < 1e-280 {
        return None;
    }
    if !vb.re.is_finite() || !vb.im.is_finite() || vb.abs() < 1e-280 {
        return None;
    }
    let mut d = vb.arg() - va.arg();
    while d > PI {
        d -= 2.0 * PI;
    }
    while d < -PI {
        d += 2.0 * PI;
    }
    if fmath::abs(d) < 0.7 && depth >= 4 {
        return Some(d);
    }
    if depth > 52 {
        return None;
    }
    let m = C64::new(0.5 * (a.re + b.re), 0.5 * (a.im + b.im));
    Some(arg_along(f, a, m, depth + 1)? + arg_along(f, m, b, depth + 1)?)
}

/// All zeros of the vector field `f` (with Jacobian `jac`, row-major
/// [da of f1, db of f1, da of f2, db of f2]) inside the box, avoiding small
/// disks around `exclusions`. Returns (zero, sign of Jacobian). The winding
/// budget is verified: found signs + exclusion windings = total.
fn find_zeros(
    f: &impl Fn(C64) -> C64,
    jac: &impl Fn(C64) -> [f64; 4],
    lo: C64,
    hi: C64,
    exclusions: &[C64],
    features: &[C64],
) -> Result<Vec<(C64, i8)>, LognumError> {
    let total = box_winding(f, lo, hi, features).ok_or(LognumError::ClusterUnresolved)?;
    let total_i = fmath::round(total);
    if fmath::abs(total - total_i) > 0.2 {
        return Err(LognumError::ClusterUnresolved);
    }
    let mut excl_winding = 0i64;
    for &e in exclusions {
        if e.re <= lo.re || e.re >= hi.re || e.im <= lo.im || e.im >= hi.im {
            continue;
        }
        let r = 1e-4;
        let w = box_winding(
            f,
            C64::new(e.re - r, e.im - r),
            C64::new(e.re + r, e.im + r),
            features,
        )
        .ok_or(LognumError::ClusterUnresolved)?;
        let wi = fmath::round(w);
        if fmath::abs(w - wi) > 0.2 {
            return Err(LognumError::ClusterUnresolved);
        }
        excl_winding += wi as i64;
    }

    let mut zeros: Vec<(C64, i8)> = Vec::new();
    let mut queue: Vec<(C64, C64, f64)> = alloc::vec![(lo, hi, total)];
    let mut steps = 0usize;
    while let Some((blo, bhi, w)) = queue.pop() {
        steps += 1;
        if steps > 200_000 {
            return Err(LognumError::ClusterUnresolved);
        }
        let wi = fmath::round(w) as i64;
        if wi == 0 {
            continue;
        }
        if exclusions
            .iter()
            .any(|e| e.re > blo.re && e.re < bhi.re && e.im > blo.im && e.im < bhi.im)
        {
            // Keep splitting until the exclusion sits in a tiny box, then
            // drop that box (its winding was budgeted above).
            if bhi.re - blo.re < 4e-4 && bhi.im - blo.im < 4e-4 {
                continue;
            }
        } else if (bhi.re - blo.re) < 1e-3 && (bhi.im - blo.im) < 1e-3 {
            // Newton refinement from the box center.
            if let Some(z) = newton2(f, jac, C64::new(0.5 * (blo.re + bhi.re), 0.5 * (blo.im + bhi.im)))
            {
                if !zeros.iter().any(|(z0, _)| z0.sub(z).abs() < 1e-6) {
                    let j = jac(z);
                    let det = j[0] * j[3] - j[1] * j[2];
                    zeros.push((z, if det >= 0.0 { 1 } else { -1 }));
                }
                continue;
            }
            // Newton failed: keep subdividing a bit further.
            if bhi.re - blo.re < 1e-7 {
                return Err(LognumError::ClusterUnresolved);
            }
        }
        // Quarter the box; jiggle the split to dodge zero crossings on the
        // cut lines.
        let mre = 0.5 * (blo.re + bhi.re);
        let mim = 0.5 * (blo.im + bhi.im);
        let mut done = false;
        'attempt: for attempt in 0..6 {
            let dre = mre + (attempt as f64) * 1.3e-5 * (bhi.re - blo.re);
            let dim = mim + (attempt as f64) * 1.1e-5 * (bhi.im - blo.im);
            let quads = [
                (blo, C64::new(dre, dim)),
                (C64::new(dre, blo.im), C64::new(bhi.re, dim)),
                (C64::new(blo.re, dim), C64::new(dre, bhi.im)),
                (C64::new(dre, dim), bhi),
            ];
            let mut ws = [0.0f64; 4];
            for (i, &(qlo, qhi)) in quads.iter().enumerate() {
                match box_winding(f, qlo, qhi, features) {
                    Some(wq) if fmath::abs(wq - fmath::round(wq)) < 0.2 => ws[i] = wq,
                    _ => continue 'attempt,
                }
            }
            for (i, &(qlo, qhi)) in quads.iter().enumerate() {
                queue.push((qlo, qhi, ws[i]));
            }
            done = true;
            break;
        }
        if !done {
            return Err(LognumError::ClusterUnresolved);
        }
    }

    // The winding-guided subdivision above cannot see a pair of zeros with
    // opposite field-Jacobian signs (their windings cancel, and the box
    // holding them is pruned as empty). Sweep a feature-scaled grid of
    // Newton starts to pick those up; the budget check below still holds
    // because such pairs contribute zero net winding.
    let scale = features
        .iter()
        .flat_map(|p| [fmath::abs(p.re), fmath::abs(p.im)])
        .fold(1.0f64, f64::max);
    let mut starts: Vec<C64> = Vec::new();
    let floor = lo.im.max(1e-6 * scale);
    for i in 0..200 {
        let a = lo.re + (hi.re - lo.re) * (i as f64 + 0.5) / 200.0;
        let mut b = hi.im;
        while b > floor {
            starts.push(C64::new(a, b));
            b *= 0.846;
        }
    }
    // Zeros close to the real axis cluster around the real divisor
    // parameters (away from them the arguments are pinned to 0 or π);
    // a coarse grid steps right over their narrow Newton basins, so fan
    // radial starts around every feature.
    for p in features {
        for jr in 0..36 {
            let r = 4.0 * scale * fmath::exp(-0.55 * jr as f64);
            for jt in 1..12 {
                let th = PI * jt as f64 / 12.0;
                let z = C64::new(p.re + r * fmath::cos(th), p.im + r * fmath::sin(th));
                if z.im > 0.0 {
                    starts.push(z);
                }
            }
        }
    }
    for start in starts {
        {
            let Some(z) = newton2(f, jac, start) else {
                continue;
            };
            if z.re <= lo.re
                || z.re >= hi.re
                || z.im <= lo.im.max(1e-9)
                || z.im >= hi.im
                || zeros.iter().any(|(z0, _)| z0.sub(z).abs() < 1e-6)
                || exclusions.iter().any(|e| e.sub(z).abs() < 1e-3)
            {
                continue;
            }
            // Newton's absolute residual test can accept flat far-field
            // points where the field merely decays below the threshold.
            // Certify a genuine simple zero by its local winding.
            let r = 1e-5f64.max(1e-9 * z.abs());
            let ok = box_winding(
                f,
                C64::new(z.re - r, z.im - r),
                C64::new(z.re + r, z.im + r),
                features,
            )
            .map(|w| fmath::abs(fmath::abs(w) - 1.0) < 0.2)
            .unwrap_or(false);
            if !ok {
                continue;
            }
            let jm = jac(z);
            let det = jm[0] * jm[3] - jm[1] * jm[2];
            zeros.push((z, if det >= 0.0 { 1 } else { -1 }));
        }
    }

    let found: i64 = zeros.iter().map(|&(_, s)| s as i64).sum();
    if found + excl_winding != total_i as i64 {
        return Err(LognumError::ClusterUnresolved);
    }
    Ok(zeros)
}

/// `find_zeros` over boxes grown geometrically until two consecutive sizes
/// agree: the solutions of the argument equations are not controlled by the
/// coordinate root bounds, so the initial box may be too small.
fn find_zeros_growing(
    f: &impl Fn(C64) -> C64,
    jac: &impl Fn(C64) -> [f64; 4],
    lo: C64,
    hi: C64,
    exclusions: &[C64],
    features: &[C64],
) -> Result<Vec<(C64, i8)>, LognumError> {
    let mut zeros = find_zeros(f, jac, lo, hi, exclusions, features)?;
    let mut scale = 1.0f64;
    for _ in 0..4 {
        scale *= 3.0;
        let lo2 = C64::new(lo.re * scale, lo.im);
        let hi2 = C64::new(hi.re * scale, hi.im * scale);
        let bigger = find_zeros(f, jac, lo2, hi2, exclusions, features)?;
        let same = bigger.len() == zeros.len()
            && zeros
                .iter()
                .all(|(z, _)| bigger.iter().any(|(w, _)| w.sub(*z).abs() < 1e-5));
        zeros = bigger;
        if same {
            return Ok(zeros);
        }
    }
    Err(LognumError::ClusterUnresolved)
}

fn newton2(
    f: &impl Fn(C64) -> C64,
    jac: &impl Fn(C64) -> [f64; 4],
    start: C64,
) -> Option<C64> {
    let mut z = start;
    for _ in 0..80 {
        let v = f(z);
        if !v.re.is_finite() || !v.im.is_finite() {
            return None;
        }
        let j = jac(z);
        let det = j[0] * j[3] - j[1] * j[2];
        if fmath::abs(det) < 1e-280 {
            return None;
        }
        let da = (v.re * j[3] - v.im * j[1]) / det;
        let db = (v.im * j[0] - v.re * j[2]) / det;
        z = C64::new(z.re - da, z.im - db);
        if fmath::hypot(da, db) < 1e-13 {
            let v = f(z);
            if v.abs() < 1e-8 {
                return Some(z);
            }
            return None;
        }
    }
    None
}

/// Search box, exclusion list, and winding feature points shared by the
/// upper-half-plane searches.
fn search_region(curve: &RealRationalCurve) -> (C64, C64, Vec<C64>, Vec<C64>) {
    let polys = [
        curve.x.num(),
        curve.x.den(),
        curve.y.num(),
        curve.y.den(),
    ];
    let mut r: f64 = 1.0;
    for p in polys {
        if p.degree() > 0 {
            r = r.max(p.root_bound().to_f64().unwrap_or(1.0));
        }
    }
    let bound = 1.0 + 2.0 * r;
    let mut excl = Vec::new();
    let mut features = Vec::new();
    if let Ok(divisor) = boundary_divisor(curve) {
        for b in &divisor {
            match b.param {
                ParamLocus::ConjugatePair { re, im } => {
                    excl.push(C64::new(re, im));
                    features.push(C64::new(re, im));
                    features.push(C64::new(re, -im));
                }
                ParamLocus::Real(ref t) => features.push(C64::new(t.approx(), 0.0)),
                ParamLocus::Infinity => {}
            }
        }
    }
    (
        C64::new(-bound, 4.1e-7),
        C64::new(bound, bound),
        excl,
        features,
    )
}

/// All solitary real singularities: zeros of (Im x, Im y) in the open upper
/// half parameter plane, each with its intersection sign λ and the argument
/// lift of the point.
pub fn solitary_points(
    curve: &RealRationalCurve,
) -> Result<Vec<SolitaryPoint>, LognumError> {
    let cn = CurveNum::new(curve)?;
    // Encode the vector field (sin arg x, sin arg y) as a complex number;
    // its zeros are the parameters where both coordinates are real, and the
    // normalization keeps the components balanced near zeros and poles of
    // the coordinates (see `two_arg_degree`). At a zero the Jacobian sign
    // matches that of the raw field (Im x, Im y).
    let f = |z: C64| {
        let x = cn.x_c(z);
        let y = cn.y_c(z);
        C64::new(x.im / x.abs(), y.im / y.abs())
    };
    let jac = |z: C64| {
        let x = cn.x_c(z);
        let y = cn.y_c(z);
        let w1 = cn.dx_c(z).div(x);
        let w2 = cn.dy_c(z).div(y);
        let cx = x.re / x.abs();
        let cy = y.re / y.abs();
        [cx * w1.im, cx * w1.re, cy * w2.im, cy * w2.re]
    };
    let (lo, hi, excl, feats) = search_region(curve);
    let zeros = find_zeros_growing(&f, &jac, lo, hi, &excl, &feats)?;

    let mut out = Vec::new();
    for (z, jsign) in zeros {
        let x = cn.x_c(z).re;
        let y = cn.y_c(z).re;
        if !x.is_finite() || !y.is_finite() || x == 0.0 || y == 0.0 {
            return Err(LognumError::ClusterUnresolved);
        }
        let q = if x * y > 0.0 { 1i8 } else { -1 };
        // Intersection sign of the oriented half S (upper half plane for
        // orientation +1) with the oriented quadrant: the 4×4 orientation
        // determinant reduces to (quadrant sign)·(Jacobian sign), with the
        // global sign fixed against the rotation identity on curves with
        // nonzero solitary count.
        let lambda = q * jsign * curve.orientation;
        let real_index = track_real_index(curve, &cn, z)?;
        out.push(SolitaryPoint {
            param: z,
            lambda,
            real_index,
        });
    }
    Ok(out)
}

/// Continue the argument lift (arg x, arg y) from the midpoint of the base
/// real arc (whose lift is π·(base diagram vertex)) to the parameter `z`.
fn track_real_index(
    curve: &RealRationalCurve,
    cn: &CurveNum,
    z: C64,
) -> Result<LatticePoint, LognumError> {
    let diagram = index_diagram(curve)?;
    let arcs = real_arcs(curve)?;
    let base_pos = if curve.orientation == 1 {
        0
    } else {
        arcs.samples.len() - 1
    };
    let t0 = arcs.samples[base_pos].to_f64().unwrap();
    let v0 = diagram.vertices[0];
    let mut theta_x = PI * v0.a as f64;
    let mut theta_y = PI * v0.b as f64;
    // Walk a straight segment from t0 (nudged upward) to z, halving steps
    // whenever an argument jumps too far to trust.
    let start = C64::new(t0, 1e-9);
    let mut cur = start;
    let mut ax = cn.x_c(cur).arg();
    let mut ay = cn.y_c(cur).arg();
    // Align the initial principal args with the lift.
    theta_x += wrap_pi(ax - wrap_pi(theta_x));
    theta_y += wrap_pi(ay - wrap_pi(theta_y));
    let mut s = 0.0f64;
    let mut step = 1.0 / 64.0;
    let mut iters = 0;
    while s < 1.0 {
        iters += 1;
        if iters > 2_000_000 {
            return Err(LognumError::ClusterUnresolved);
        }
        let s2 = (s + step).min(1.0);
        let nxt = C64::new(
            start.re + (z.re - start.re) * s2,
            start.im + (z.im - start.im) * s2,
        );
        let bx = cn.x_c(nxt).arg();
        let by = cn.y_c(nxt).arg();
        let dx = wrap_pi(bx - ax);
        let dy = wrap_pi(by - ay);
        if (fmath::abs(dx) > 0.5 || fmath::abs(dy) > 0.5) && step > 1e-12 {
            step *= 0.5;
            continue;
        }
        theta_x += dx;
        theta_y += dy;
        ax = bx;
        ay = by;
        cur = nxt;
        s = s2;
        step = (step * 1.9).min(1.0 / 64.0);
    }
    let _ = cur;
    let ia = fmath::round(theta_x / PI);
    let ib = fmath::round(theta_y / PI);
    if fmath::abs(theta_x / PI - ia) > 0.2 || fmath::abs(theta_y / PI - ib) > 0.2 {
        return Err(LognumError::SnapFailure {
            residual: fmath::abs(theta_x / PI - ia).max(fmath::abs(theta_y / PI - ib)),
        });
    }
    Ok(LatticePoint::new(ia as i64, ib as i64))
}

fn wrap_pi(mut d: f64) -> f64 {
    while d > PI {
        d -= 2.0 * PI;
    }
    while d < -PI {
        d += 2.0 * PI;
    }
    d
}

/// Signed count of upper-half-plane solutions of
/// (2·arg x, 2·arg y) = ±2·(α, β): the degree onto the pillowcase, which
/// equals twice the quantum index.
pub fn two_arg_degree(
    curve: &RealRationalCurve,
    target: (f64, f64),
) -> Result<i64, LognumError> {
    let cn = CurveNum::new(curve)?;
    let (lo, hi, excl, feats) = search_region(curve);
    let mut total = 0i64;
    for &sgn in &[1.0f64, -1.0] {
        let (ca, cb) = (
            C64::new(fmath::cos(-sgn * target.0), fmath::sin(-sgn * target.0)),
            C64::new(fmath::cos(-sgn * target.1), fmath::sin(-sgn * target.1)),
        );
        // Zeros of (sin(arg x − α), sin(arg y − β)): parameters where
        // (arg x, arg y) ≡ ±(α, β) mod π. The sine normalization keeps the
        // two components on the same scale near zeros and poles of the
        // coordinates (the raw imaginary parts differ by orders of
        // magnitude there, which squeezes the winding transitions below
        // f64 resolution) and has no spurious flat far field.
        let f = |z: C64| {
            let x = ca.mul(cn.x_c(z));
            let y = cb.mul(cn.y_c(z));
            C64::new(x.im / x.abs(), y.im / y.abs())
        };
        // Rows of the Jacobian: with θ = arg x − α = Im log(e^{−iα}x),
        // ∂ sin θ = cos θ · (Im w₁, Re w₁) for the log-derivative w₁.
        let jac = |z: C64| {
            let x = ca.mul(cn.x_c(z));
            let y = cb.mul(cn.y_c(z));
            let w1 = cn.dx_c(z).div(cn.x_c(z));
            let w2 = cn.dy_c(z).div(cn.y_c(z));
            let cx = x.re / x.abs();
            let cy = y.re / y.abs();
            [cx * w1.im, cx * w1.re, cy * w2.im, cy * w2.re]
        };
        let zeros = find_zeros_growing(&f, &jac, lo, hi, &excl, &feats)?;
        for (z, _) in zeros {
            // The degree sign is the Jacobian of (arg x, arg y) itself,
            // Im(w₁·conj(w₂)) with wᵢ the logarithmic derivatives; the sign
            // of the auxiliary field above flips with the mod-π branch.
            let w1 = cn.dx_c(z).div(cn.x_c(z));
            let w2 = cn.dy_c(z).div(cn.y_c(z));
            let det = w1.im * w2.re - w1.re * w2.im;
            if det == 0.0 || !det.is_finite() {
                return Err(LognumError::TargetDegenerate);
            }
            total += if det > 0.0 { 1 } else { -1 };
        }
    }
    Ok(curve.orientation as i64 * total)
}

/// `two_arg_degree` at a pseudorandom generic target, resampled on failure.
pub fn two_arg_degree_random(
    curve: &RealRationalCurve,
    seed: u64,
) -> Result<i64, LognumError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..8 {
        // Keep targets away from 0 and π mod π: solutions for targets near
        // the rays through real points sink toward the real axis, outside
        // the search box.
        let a = (0.2 + 0.6 * rng.below(100_000) as f64 / 100_000.0) * PI;
        let b = (0.2 + 0.6 * rng.below(100_000) as f64 / 100_000.0) * PI;
        match two_arg_degree(curve, (a, b)) {
            Ok(v) => return Ok(v),
            Err(LognumError::ClusterUnresolved) | Err(LognumError::TargetDegenerate) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(LognumError::TargetDegenerate)
}

/// Sampled Log-image polylines of the real arcs, each tagged with the arc's
/// lattice real index (its diagram vertex).
pub fn log_image_arcs(
    curve: &RealRationalCurve,
) -> Result<Vec<(LatticePoint, Vec<(f64, f64)>)>, LognumError> {
    let cn = CurveNum::new(curve)?;
    let diagram = index_diagram(curve)?;
    let arcs = real_arcs(curve)?;
    let k = arcs.samples.len();
    // Arc index i (increasing t) ↔ diagram vertex position.
    let vertex_of_arc = |i: usize| -> LatticePoint {
        if curve.orientation == 1 {
            diagram.vertices[i]
        } else {
            diagram.vertices[k - 1 - i]
        }
    };
    // Finite boundary params in order; arc i spans (p_i, p_{i+1}).
    let mut breaks: Vec<Option<f64>> = Vec::new();
    for p in &arcs.params {
        match p {
            ParamLocus::Real(r) => breaks.push(Some(r.approx())),
            ParamLocus::Infinity => breaks.push(None),
            _ => unreachable!("real_arcs rejects conjugate pairs"),
        }
    }
    let n = breaks.len();
    let mut out = Vec::new();
    let delta = 1e-9f64;
    let samples_per_side = 240usize;
    for i in 0..k {
        let a = breaks[i % n];
        let b = breaks[(i + 1) % n];
        let mut pts: Vec<(f64, f64)> = Vec::new();
        let push_t = |t: f64, pts: &mut Vec<(f64, f64)>| {
            let u = cn.tx.u(t, 0.0);
            let v = cn.ty.u(t, 0.0);
            if u.is_finite() && v.is_finite() {
                pts.push((u, v));
            }
        };
        match (a, b) {
            (Some(ta), Some(tb)) if ta < tb => {
                let mid = 0.5 * (ta + tb);
                for j in 0..samples_per_side {
                    let s = fmath::ln(delta)
                        + (fmath::ln(mid - ta) - fmath::ln(delta)) * j as f64
                            / (samples_per_side - 1) as f64;
                    push_t(ta + fmath::exp(s), &mut pts);
                }
                for j in (0..samples_per_side).rev() {
                    let s = fmath::ln(delta)
                        + (fmath::ln(tb - mid) - fmath::ln(delta)) * j as f64
                            / (samples_per_side - 1) as f64;
                    push_t(tb - fmath::exp(s), &mut pts);
                }
            }
            _ => {
                // Arc reaching through or up to ∞.
                let push_tau = |tau: f64, pts: &mut Vec<(f64, f64)>| {
                    let u = cn.ix.u(tau, 0.0);
                    let v = cn.iy.u(tau, 0.0);
                    if u.is_finite() && v.is_finite() {
                        pts.push((u, v));
                    }
                };
                if let Some(ta) = a {
                    // Flank out of t_a toward +∞, then into the τ chart.
                    let mr = if ta >= 0.0 { ta + 1.0 } else { 1.0 };
                    for j in 0..samples_per_side {
                        let s = fmath::ln(delta)
                            + (fmath::ln(mr - ta) - fmath::ln(delta)) * j as f64
                                / (samples_per_side - 1) as f64;
                        push_t(ta + fmath::exp(s), &mut pts);
                    }
                    let tr = 1.0 / mr;
                    if b.is_none() {
                        // Arc ends at the boundary point ∞: τ → 0⁺.
                        for j in 0..samples_per_side {
                            let s = fmath::ln(tr)
                                + (fmath::ln(delta) - fmath::ln(tr)) * j as f64
                                    / (samples_per_side - 1) as f64;
                            push_tau(fmath::exp(s), &mut pts);
                        }
                    } else {
                        // ∞ is a regular point: sweep τ straight through 0
                        // and come back down onto t_b.
                        let tb = b.unwrap();
                        let ml = if tb <= 0.0 { tb - 1.0 } else { -1.0 };
                        let tl = 1.0 / ml;
                        for j in 1..(2 * samples_per_side) {
                            let tau = tr + (tl - tr) * j as f64 / (2 * samples_per_side) as f64;
                            if tau != 0.0 {
                                push_tau(tau, &mut pts);
                            }
                        }
                        for j in (0..samples_per_side).rev() {
                            let s = fmath::ln(delta)
                                + (fmath::ln(tb - ml) - fmath::ln(delta)) * j as f64
                                    / (samples_per_side - 1) as f64;
                            push_t(tb - fmath::exp(s), &mut pts);
                        }
                    }
                } else {
                    // Arc starting at the boundary point ∞: τ → 0⁻ first.
                    let tb = b.expect("arc cannot run from infinity to infinity");
                    let ml = if tb <= 0.0 { tb - 1.0 } else { -1.0 };
                    let tl = 1.0 / ml;
                    // τ decreases from 0⁻ down to 1/ml as t rises from −∞.
                    for j in 0..samples_per_side {
                        let s = fmath::ln(delta)
                            + (fmath::ln(-tl) - fmath::ln(delta)) * j as f64
                                / (samples_per_side - 1) as f64;
                        push_tau(-fmath::exp(s), &mut pts);
                    }
                    for j in (0..samples_per_side).rev() {
                        let s = fmath::ln(delta)
                            + (fmath::ln(tb - ml) - fmath::ln(delta)) * j as f64
                                / (samples_per_side - 1) as f64;
                        push_t(tb - fmath::exp(s), &mut pts);
                    }
                }
            }
        }
        out.push((vertex_of_arc(i), pts));
    }
    Ok(out)
}

/// #α(γ, Log RC°): the signed, index-weighted count of crossings of the
/// polyline γ with the Log image of the real locus.
pub fn refined_path_count(
    curve: &RealRationalCurve,
    gamma: &[(f64, f64)],
) -> Result<(i64, i64), LognumError> {
    let arcs = log_image_arcs(curve)?;
    // Endpoints must keep clear of the image.
    for &(ex, ey) in [gamma.first(), gamma.last()].iter().flatten() {
        for (_, pts) in &arcs {
            for w in pts.windows(2) {
                let d = dist_point_segment((*ex, *ey), w[0], w[1]);
                if d < 1e-7 {
                    return Err(LognumError::EndpointOnCurve);
                }
            }
        }
    }
    let mut total = (0i64, 0i64);
    for g in gamma.windows(2) {
        for (alpha, pts) in &arcs {
            for w in pts.windows(2) {
                if let Some(s) = crossing_sign(g[0], g[1], w[0], w[1]) {
                    total.0 += s * alpha.a;
                    total.1 += s * alpha.b;
                }
            }
        }
    }
    Ok(total)
}

fn dist_point_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    fmath::hypot(p.0 - (a.0 + t * dx), p.1 - (a.1 + t * dy))
}

/// Sign of a transversal crossing of segment (a,b) with segment (c,d);
/// None if they do not cross.
fn crossing_sign(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> Option<i64> {
    let cross = |o: (f64, f64), p: (f64, f64), q: (f64, f64)| -> f64 {
        (p.0 - o.0) * (q.1 - o.1) - (p.1 - o.1) * (q.0 - o.0)
    };
    let d1 = cross(a, b, c);
    let d2 = cross(a, b, d);
    let d3 = cross(c, d, a);
    let d4 = cross(c, d, b);
    if (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) {
        // Arc direction c→d crossing γ direction a→b.
        let s = (b.0 - a.0) * (d.1 - c.1) - (b.1 - a.1) * (d.0 - c.0);
        Some(if s > 0.0 { 1 } else { -1 })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::RatFunc;
    use crate::lattice::triangle;

    fn line() -> RealRationalCurve {
        RealRationalCurve::new(
            RatFunc::from_i64(&[0, 1], &[1]).unwrap(),
            RatFunc::from_i64(&[1, -1], &[1]).unwrap(),
            1,
            Some(triangle(1)),
        )
        .unwrap()
    }

    #[test]
    fn line_area_is_half_pi_squared() {
        let (a, err) = area_log(&line(), 1e-6).unwrap();
        assert!(
            fmath::abs(a - PI * PI / 2.0) < 1e-6,
            "area = {a}, err = {err}"
        );
        assert_eq!(snap_double_k(a, 1e-6).unwrap(), 1);
        let (ar, _) = area_log(&line().reversed(), 1e-6).unwrap();
        assert!(fmath::abs(ar + PI * PI / 2.0) < 1e-6);
    }

    #[test]
    fn line_rot_log() {
        assert_eq!(rot_log(&line()).unwrap(), -1);
        assert_eq!(rot_log(&line().reversed()).unwrap(), 1);
    }

    #[test]
    fn line_has_no_solitary_points() {
        let pts = solitary_points(&line()).unwrap();
        assert!(pts.is_empty());
    }

    #[test]
    fn line_two_arg_degree() {
        for seed in [1u64, 2, 3] {
            let d = two_arg_degree_random(&line(), seed).unwrap();
            assert_eq!(d, 1, "seed {seed}");
        }
        assert_eq!(two_arg_degree_random(&line().reversed(), 7).unwrap(), -1);
    }

    #[test]
    fn line_index_linking_balance() {
        let c = line();
        for seed in [1u64, 2, 3] {
            let rows = index_linking_check(&c, seed).unwrap();
            assert!(!rows.is_empty());
            for (p, agg, lk) in &rows {
                assert_eq!(agg, lk, "mismatch at ({}, {})", p.a, p.b);
            }
        }
    }

    #[test]
    fn line_path_independence() {
        let c = line();
        // Two different paths between the same generic endpoints.
        let p0 = (0.05, -3.1);
        let p1 = (2.9, 0.35);
        let g1 = alloc::vec![p0, p1];
        let g2 = alloc::vec![p0, (-4.0, 4.0), (5.0, 5.0), p1];
        let r1 = refined_path_count(&c, &g1).unwrap();
        let r2 = refined_path_count(&c, &g2).unwrap();
        assert_eq!(r1, r2);
        // A closed loop counts zero.
        let loopy = alloc::vec![p0, (4.0, 1.0), (1.0, 4.0), p0];
        assert_eq!(refined_path_count(&c, &loopy).unwrap(), (0, 0));
    }
}
