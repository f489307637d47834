//! Parameterized real rational curves in the torus: boundary divisors,
//! index diagrams, the combinatorial quantum index, linking numbers, signs.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{LatticePoint, LatticePolygon};
use crate::ratpoly::{complex_roots, isolate_real_roots, RatPoly, RealRoot, C64};
use crate::rng::{fnv1a, SplitMix64};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// Zero numerator/denominator or a constant map.
    DegenerateCurve,
    /// Real-root isolation could not separate boundary parameters.
    RootIsolationFailure,
    /// The diagram construction needs all boundary points real, but a
    /// conjugate pair exists.
    NonRealBoundary,
    /// Parity or closure fails while building the index diagram; carries
    /// the arc index of the failing step.
    NotToricTypeI { step: usize },
    /// Declared Newton polygon disagrees with the boundary divisor.
    PolygonMismatch,
    /// m and the logarithmic rotation number have different parities.
    ParityViolation,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::DegenerateCurve => write!(f, "degenerate curve"),
            CurveError::RootIsolationFailure => write!(f, "root isolation failure"),
            CurveError::NonRealBoundary => write!(f, "curve has non-real boundary points"),
            CurveError::NotToricTypeI { step } => {
                write!(f, "not of toric type I (fails at arc {})", step)
            }
            CurveError::PolygonMismatch => {
                write!(f, "declared polygon disagrees with the boundary divisor")
            }
            CurveError::ParityViolation => {
                write!(f, "boundary count and rotation number have different parities")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for CurveError {}

/// Rational function of one variable, stored with coprime numerator and
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self, CurveError> {
        if num.is_zero() || den.is_zero() {
            return Err(CurveError::DegenerateCurve);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        Ok(Self { num, den })
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Result<Self, CurveError> {
        Self::new(RatPoly::from_i64(num), RatPoly::from_i64(den))
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() <= 0 && self.den.degree() <= 0
    }

    /// Exact value, None at a pole.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(t) / d)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.num.eval_f64(t) / self.den.eval_f64(t)
    }

    pub fn eval_c64(&self, t: C64) -> C64 {
        self.num.eval_c64(t).div(self.den.eval_c64(t))
    }

    /// Order of vanishing at rational t (negative at a pole).
    pub fn order_at(&self, t: &BigRational) -> i64 {
        self.num.order_at(t) as i64 - self.den.order_at(t) as i64
    }

    /// Order of vanishing at t = ∞.
    pub fn order_at_infinity(&self) -> i64 {
        self.den.degree() - self.num.degree()
    }

    pub fn square(&self) -> RatFunc {
        RatFunc {
            num: self.num.mul(&self.num),
            den: self.den.mul(&self.den),
        }
    }

    /// Logarithmic derivative value f'(t)/f(t) = N'/N − D'/D at complex t.
    pub fn log_deriv_c64(&self, t: C64) -> C64 {
        let n = self.num.eval_c64(t);
        let dn = self.num.derivative().eval_c64(t);
        let d = self.den.eval_c64(t);
        let dd = self.den.derivative().eval_c64(t);
        dn.div(n).sub(dd.div(d))
    }

    pub fn log_deriv_f64(&self, t: f64) -> f64 {
        let n = self.num.eval_f64(t);
        let dn = self.num.derivative().eval_f64(t);
        let d = self.den.eval_f64(t);
        let dd = self.den.derivative().eval_f64(t);
        dn / n - dd / d
    }
}

/// A parameterized real rational curve t ↦ (x(t), y(t)) with a chosen
/// orientation of the real parameter circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRationalCurve {
    pub x: RatFunc,
    pub y: RatFunc,
    pub orientation: i8,
    pub declared_polygon: Option<LatticePolygon>,
}

impl RealRationalCurve {
    pub fn new(
        x: RatFunc,
        y: RatFunc,
        orientation: i8,
        declared_polygon: Option<LatticePolygon>,
    ) -> Result<Self, CurveError> {
        assert!(orientation == 1 || orientation == -1);
        if x.is_constant() && y.is_constant() {
            return Err(CurveError::DegenerateCurve);
        }
        Ok(Self {
            x,
            y,
            orientation,
            declared_polygon,
        })
    }

    pub fn reversed(&self) -> RealRationalCurve {
        let mut c = self.clone();
        c.orientation = -c.orientation;
        c
    }

    /// Coordinate-squaring image: (x, y) ↦ (x², y²).
    pub fn fr2(&self) -> RealRationalCurve {
        RealRationalCurve {
            x: self.x.square(),
            y: self.y.square(),
            orientation: self.orientation,
            declared_polygon: None,
        }
    }
}

/// Where on the parameter circle a boundary point sits.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamLocus {
    Real(RealRoot),
    Infinity,
    /// Upper-half-plane representative of a complex-conjugate pair
    /// (approximate location; the orders are exact).
    ConjugatePair { re: f64, im: f64 },
}

/// A point of the boundary divisor: a parameter where (x, y) meets the
/// toric boundary, with its exact coordinate orders.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub param: ParamLocus,
    /// (ord_t x, ord_t y) ≠ (0, 0).
    pub order_vec: (i64, i64),
    /// Local intersection multiplicity: gcd of |order components|.
    pub mult: i64,
    /// Primitive outward normal of the dual side: −order_vec / mult.
    pub normal: LatticePoint,
}

fn boundary_point(param: ParamLocus, ox: i64, oy: i64) -> BoundaryPoint {
    debug_assert!(ox != 0 || oy != 0);
    let v = LatticePoint::new(-ox, -oy);
    let mult = v.content();
    BoundaryPoint {
        param,
        order_vec: (ox, oy),
        mult,
        normal: v.primitive(),
    }
}

/// Pairwise-coprime square-free basis refinement of a factor collection,
/// with the original factor indices each basis element divides.
fn coprime_basis(factors: &[RatPoly]) -> Vec<(RatPoly, Vec<usize>)> {
    let mut basis: Vec<(RatPoly, Vec<usize>)> = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        let mut rem = f.monic();
        // Split `rem` against the existing basis.
        let mut bi = 0;
        while bi < basis.len() && rem.degree() > 0 {
            let g = basis[bi].0.gcd(&rem);
            if g.degree() > 0 {
                if g.degree() < basis[bi].0.degree() {
                    // Split the basis element into g and the cofactor.
                    let (h, owners) = basis[bi].clone();
                    let cof = h.div_rem(&g).0.monic();
                    basis[bi] = (g.clone(), owners.clone());
                    basis.insert(bi + 1, (cof, owners));
                }
                basis[bi].1.push(i);
                rem = rem.div_rem(&g).0.monic();
            }
            bi += 1;
        }
        if rem.degree() > 0 {
            basis.push((rem, alloc::vec![i]));
        }
    }
    basis
}

/// Narrow `(lo, hi)` around the sign-change root of square-free `f` until
/// the interval width is at most `limit` and excludes `avoid`.
fn narrow(
    f: &RatPoly,
    lo: &mut BigRational,
    hi: &mut BigRational,
    limit: &BigRational,
    avoid: Option<&BigRational>,
) {
    let two = BigRational::from(BigInt::from(2));
    let mut slo = f.eval(lo).is_negative();
    loop {
        let width = &*hi - &*lo;
        let small = width <= *limit;
        let clear = avoid.map_or(true, |a| a < lo || a > hi);
        if small && clear {
            return;
        }
        let mid = (&*lo + &*hi) / &two;
        let smid = f.eval(&mid).is_negative();
        if smid == slo {
            *lo = mid;
            slo = smid;
        } else {
            *hi = mid;
        }
    }
}

/// The boundary divisor of a curve: every zero/pole of x and y over the
/// real-or-complex parameter circle, with exact orders. Real points come
/// first, in increasing parameter order, then ∞ (if a boundary point), then
/// conjugate pairs; the real ordering is certified by disjoint isolating
/// intervals.
pub fn boundary_divisor(curve: &RealRationalCurve) -> Result<Vec<BoundaryPoint>, CurveError> {
    let polys = [
        curve.x.num(),
        curve.x.den(),
        curve.y.num(),
        curve.y.den(),
    ];
    // Square-free factors of all four polynomials, with multiplicities.
    let mut factors: Vec<RatPoly> = Vec::new();
    // (poly index, factor index in `factors`, multiplicity)
    let mut occurs: Vec<(usize, usize, u32)> = Vec::new();
    for (pi, p) in polys.iter().enumerate() {
        for (g, k) in p.square_free_decomposition() {
            occurs.push((pi, factors.len(), k));
            factors.push(g);
        }
    }
    let basis = coprime_basis(&factors);

    struct RealEntry {
        lo: BigRational,
        hi: BigRational,
        exact: Option<BigRational>,
        ox: i64,
        oy: i64,
        poly: RatPoly,
    }
    let mut reals: Vec<RealEntry> = Vec::new();
    let mut pairs: Vec<BoundaryPoint> = Vec::new();

    let width = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)));
    for (h, owners) in &basis {
        // Coordinate orders carried by every root of this basis element.
        let mut ord = [0i64; 4];
        for &(pi, fi, k) in &occurs {
            if owners.contains(&fi) {
                ord[pi] += k as i64;
            }
        }
        let ox = ord[0] - ord[1];
        let oy = ord[2] - ord[3];
        debug_assert!(ox != 0 || oy != 0, "basis element with trivial orders");

        let real_roots = isolate_real_roots(h, &width);
        let n_real = real_roots.len();
        for r in &real_roots {
            match r {
                RealRoot::Rational(v) => reals.push(RealEntry {
                    lo: v.clone(),
                    hi: v.clone(),
                    exact: Some(v.clone()),
                    ox,
                    oy,
                    poly: h.clone(),
                }),
                RealRoot::Isolated { lo, hi } => reals.push(RealEntry {
                    lo: lo.clone(),
                    hi: hi.clone(),
                    exact: None,
                    ox,
                    oy,
                    poly: h.clone(),
                }),
            }
        }
        let n_pairs = (h.degree() as usize - n_real) / 2;
        if n_pairs > 0 {
            let mut ims: Vec<C64> = complex_roots(h)
                .into_iter()
                .filter(|z| z.im > 1e-9)
                .collect();
            ims.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
            if ims.len() != n_pairs {
                return Err(CurveError::RootIsolationFailure);
            }
            for z in ims {
                pairs.push(boundary_point(
                    ParamLocus::ConjugatePair { re: z.re, im: z.im },
                    ox,
                    oy,
                ));
            }
        }
    }

    // Refine inexact intervals until all real entries are pairwise disjoint.
    for i in 0..reals.len() {
        for j in 0..reals.len() {
            if i == j {
                continue;
            }
            let (a, b) = if i < j {
                let (l, r) = reals.split_at_mut(j);
                (&mut l[i], &mut r[0])
            } else {
                let (l, r) = reals.split_at_mut(i);
                (&mut r[0], &mut l[j])
            };
            // Shrink both until they cannot touch.
            for _ in 0..200 {
                if a.hi < b.lo || b.hi < a.lo {
                    break;
                }
                let wa = &a.hi - &a.lo;
                let wb = &b.hi - &b.lo;
                if wa.is_zero() && wb.is_zero() {
                    // Two exact equal roots of coprime polynomials cannot
                    // happen; treat defensively.
                    return Err(CurveError::RootIsolationFailure);
                }
                if wa >= wb {
                    let half = &wa / BigRational::from(BigInt::from(2));
                    narrow(&a.poly.clone(), &mut a.lo, &mut a.hi, &half, None);
                } else {
                    let half = &wb / BigRational::from(BigInt::from(2));
                    narrow(&b.poly.clone(), &mut b.lo, &mut b.hi, &half, None);
                }
            }
            if !(a.hi < b.lo || b.hi < a.lo) {
                return Err(CurveError::RootIsolationFailure);
            }
        }
    }
    reals.sort_by(|a, b| a.lo.cmp(&b.lo));

    let mut out: Vec<BoundaryPoint> = reals
        .into_iter()
        .map(|e| {
            let param = match e.exact {
                Some(v) => ParamLocus::Real(RealRoot::Rational(v)),
                None => ParamLocus::Real(RealRoot::Isolated { lo: e.lo, hi: e.hi }),
            };
            boundary_point(param, e.ox, e.oy)
        })
        .collect();

    let oxi = curve.x.order_at_infinity();
    let oyi = curve.y.order_at_infinity();
    if oxi != 0 || oyi != 0 {
        out.push(boundary_point(ParamLocus::Infinity, oxi, oyi));
    }
    out.extend(pairs);

    if let Some(decl) = &curve.declared_polygon {
        let implied = implied_polygon(&out).ok_or(CurveError::PolygonMismatch)?;
        if !same_up_to_translation(&implied, decl) {
            return Err(CurveError::PolygonMismatch);
        }
    }
    Ok(out)
}

/// The Newton polygon implied by a boundary divisor: side lengths are the
/// multiplicity totals per outward normal (conjugate pairs count twice).
pub fn implied_polygon(divisor: &[BoundaryPoint]) -> Option<LatticePolygon> {
    let mut per_normal: Vec<(LatticePoint, i64)> = Vec::new();
    for bp in divisor {
        let count = match bp.param {
            ParamLocus::ConjugatePair { .. } => 2 * bp.mult,
            _ => bp.mult,
        };
        match per_normal.iter_mut().find(|(n, _)| *n == bp.normal) {
            Some((_, c)) => *c += count,
            None => per_normal.push((bp.normal, count)),
        }
    }
    // Chain the edge vectors (tangent = normal rotated +90°) in angular
    // order; closure is automatic when the divisor is principal.
    per_normal.sort_by(|a, b| compare_directions(tangent(a.0), tangent(b.0)));
    let mut vs = Vec::with_capacity(per_normal.len());
    let mut p = LatticePoint::new(0, 0);
    for (n, c) in &per_normal {
        vs.push(p);
        let t = tangent(*n);
        p = LatticePoint::new(p.a + c * t.a, p.b + c * t.b);
    }
    if p != LatticePoint::new(0, 0) {
        return None;
    }
    LatticePolygon::new(vs).ok()
}

fn tangent(normal: LatticePoint) -> LatticePoint {
    LatticePoint::new(-normal.b, normal.a)
}

/// Exact angular order of directions (angle from the positive x-axis in
/// [0, 2π)): compare half-planes, then the cross product within one.
fn compare_directions(a: LatticePoint, b: LatticePoint) -> core::cmp::Ordering {
    fn half(d: LatticePoint) -> u8 {
        if d.b > 0 || (d.b == 0 && d.a > 0) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| 0i64.cmp(&a.cross(b)))
}

pub fn same_up_to_translation(a: &LatticePolygon, b: &LatticePolygon) -> bool {
    let va = a.vertices();
    let vb = b.vertices();
    if va.len() != vb.len() {
        return false;
    }
    let d = vb[0].sub(va[0]);
    va.iter().zip(vb).all(|(p, q)| p.add(d) == *q)
}

/// Closed oriented lattice broken line recording the quadrant parities of
/// the real arcs and the side crossings between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexDiagram {
    pub vertices: Vec<LatticePoint>,
    pub edges: Vec<LatticePoint>,
}

impl IndexDiagram {
    /// 2·(signed area), exact.
    pub fn double_area(&self) -> i64 {
        let n = self.vertices.len();
        let mut s = 0;
        for i in 0..n {
            s += self.vertices[i].cross(self.vertices[(i + 1) % n]);
        }
        s
    }
}

fn sign_rat(v: &BigRational) -> i64 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

/// Quadrant parities and crossings of the real arcs of a curve, in
/// increasing-parameter order. Internal helper shared by the diagram and
/// the numeric integrators.
pub(crate) struct ArcData {
    /// Exact rational sample parameter inside each arc; the arc through ∞
    /// carries two (before and after ∞) when ∞ is not a boundary point.
    pub samples: Vec<BigRational>,
    /// Quadrant sign pair of each arc: (sign x, sign y) ∈ {±1}².
    pub quadrants: Vec<(i64, i64)>,
    /// order_vec of the boundary point crossed after arc i (in increasing
    /// parameter direction, cyclically).
    pub crossings: Vec<(i64, i64)>,
    /// Real boundary parameters in increasing order (∞ last if boundary).
    pub params: Vec<ParamLocus>,
}

pub(crate) fn real_arcs(curve: &RealRationalCurve) -> Result<ArcData, CurveError> {
    let divisor = boundary_divisor(curve)?;
    if divisor
        .iter()
        .any(|b| matches!(b.param, ParamLocus::ConjugatePair { .. }))
    {
        return Err(CurveError::NonRealBoundary);
    }
    let finite: Vec<&BoundaryPoint> = divisor
        .iter()
        .filter(|b| matches!(b.param, ParamLocus::Real(_)))
        .collect();
    let inf = divisor
        .iter()
        .find(|b| matches!(b.param, ParamLocus::Infinity));
    if finite.is_empty() {
        // Only possible with every boundary point at ∞ (or none): the real
        // locus has a single arc; the diagram degenerates. Not needed for
        // any supported construction.
        return Err(CurveError::NotToricTypeI { step: 0 });
    }

    let one = BigRational::one();
    let two = BigRational::from(BigInt::from(2));
    let lohi = |b: &BoundaryPoint| -> (BigRational, BigRational) {
        match &b.param {
            ParamLocus::Real(r) => (r.lower(), r.upper()),
            _ => unreachable!(),
        }
    };

    let n = finite.len();
    let t_hi = lohi(finite[n - 1]).1 + &one;
    let t_lo = lohi(finite[0]).0 - &one;
    // Arc i runs from finite[i] to the next boundary point; the crossing
    // recorded after arc i is the point ending it (cyclically, ∞ last).
    let mut samples: Vec<BigRational> = Vec::new();
    let mut crossings: Vec<(i64, i64)> = Vec::new();
    for i in 0..n - 1 {
        let (_, hi) = lohi(finite[i]);
        let (lo, _) = lohi(finite[i + 1]);
        debug_assert!(hi < lo);
        samples.push((&hi + &lo) / &two);
        crossings.push(finite[i + 1].order_vec);
    }
    match inf {
        Some(b) => {
            // ∞ is a boundary point splitting the wrap into two arcs.
            samples.push(t_hi.clone());
            crossings.push(b.order_vec);
            samples.push(t_lo.clone());
            crossings.push(finite[0].order_vec);
        }
        None => {
            samples.push(t_hi.clone());
            crossings.push(finite[0].order_vec);
        }
    }

    // Quadrant signs by exact evaluation.
    let mut quadrants = Vec::with_capacity(samples.len());
    for s in &samples {
        let sx = sign_rat(&curve.x.eval(s).expect("sample is not a pole"));
        let sy = sign_rat(&curve.y.eval(s).expect("sample is not a pole"));
        debug_assert!(sx != 0 && sy != 0);
        quadrants.push((sx, sy));
    }
    // Without a boundary point at ∞ the wrap arc keeps its quadrant across
    // ∞; double-check with the far-left sample.
    if inf.is_none() {
        let sx = sign_rat(&curve.x.eval(&t_lo).expect("sample is not a pole"));
        let sy = sign_rat(&curve.y.eval(&t_lo).expect("sample is not a pole"));
        let last = *quadrants.last().unwrap();
        if (sx, sy) != last {
            return Err(CurveError::NotToricTypeI {
                step: quadrants.len() - 1,
            });
        }
    }

    let mut params: Vec<ParamLocus> = finite.iter().map(|b| b.param.clone()).collect();
    if inf.is_some() {
        params.push(ParamLocus::Infinity);
    }
    Ok(ArcData {
        samples,
        quadrants,
        crossings,
        params,
    })
}

/// Build the index diagram of a toric type I curve: one vertex per real
/// arc with the arc's quadrant parity, consecutive vertices differing by
/// m_e·n(E) = −order_vec across the boundary point between the arcs.
pub fn index_diagram(curve: &RealRationalCurve) -> Result<IndexDiagram, CurveError> {
    let arcs = real_arcs(curve)?;
    let k = arcs.samples.len();
    // Traverse in the curve's orientation. For decreasing t, arc i is
    // preceded (in traversal order) by crossing i.
    let order: Vec<usize> = if curve.orientation == 1 {
        (0..k).collect()
    } else {
        (0..k).rev().collect()
    };
    let crossing_after = |pos: usize| -> (i64, i64) {
        let arc = order[pos];
        if curve.orientation == 1 {
            arcs.crossings[arc]
        } else {
            // Crossing between arc i and arc i−1 is crossings[i−1].
            arcs.crossings[(arc + k - 1) % k]
        }
    };

    let parity = |q: (i64, i64)| -> (i64, i64) {
        (if q.0 > 0 { 0 } else { 1 }, if q.1 > 0 { 0 } else { 1 })
    };

    let first_q = parity(arcs.quadrants[order[0]]);
    let mut v = LatticePoint::new(first_q.0, first_q.1);
    let mut vertices = Vec::with_capacity(k);
    let mut edges = Vec::with_capacity(k);
    for pos in 0..k {
        let q = parity(arcs.quadrants[order[pos]]);
        if (v.a.rem_euclid(2), v.b.rem_euclid(2)) != q {
            return Err(CurveError::NotToricTypeI { step: pos });
        }
        vertices.push(v);
        let (ox, oy) = crossing_after(pos);
        let e = LatticePoint::new(-ox, -oy);
        edges.push(e);
        v = v.add(e);
    }
    if v != vertices[0] {
        return Err(CurveError::NotToricTypeI { step: k });
    }
    Ok(IndexDiagram { vertices, edges })
}

/// The quantum index as 2·k (exact): the doubled signed area of the index
/// diagram.
pub fn quantum_index_doubled(curve: &RealRationalCurve) -> Result<i64, CurveError> {
    Ok(index_diagram(curve)?.double_area())
}

/// Signed count of crossings of the ray from `p` in direction ε with the
/// diagram's directed edges. ε is drawn reproducibly from the diagram hash
/// and resampled until the ray misses all vertices.
pub fn linking(p: (BigRational, BigRational), diagram: &IndexDiagram) -> i64 {
    let mut seed_bytes: Vec<u8> = Vec::new();
    for v in &diagram.vertices {
        seed_bytes.extend_from_slice(&v.a.to_le_bytes());
        seed_bytes.extend_from_slice(&v.b.to_le_bytes());
    }
    let mut rng = SplitMix64::new(fnv1a(seed_bytes));
    'eps: for _ in 0..64 {
        let q = rng.range_i64(1, 997);
        let pnum = rng.range_i64(1, q);
        let eps = (
            BigRational::one(),
            BigRational::new(BigInt::from(pnum), BigInt::from(q)),
        );
        match linking_dir(&p, diagram, &eps) {
            Some(v) => return v,
            None => continue 'eps,
        }
    }
    panic!("could not find an admissible ray direction");
}

/// Signed crossing count of the ray from `p` in the explicit direction
/// `eps` with the diagram's directed edges. None if the ray hits a vertex
/// or runs along an edge (caller should resample the direction).
pub fn linking_dir(
    p: &(BigRational, BigRational),
    diagram: &IndexDiagram,
    eps: &(BigRational, BigRational),
) -> Option<i64> {
    let n = diagram.vertices.len();
    let mut total = 0i64;
    for i in 0..n {
        let a = diagram.vertices[i];
        let b = diagram.vertices[(i + 1) % n];
        let d = (
            BigRational::from(BigInt::from(b.a - a.a)),
            BigRational::from(BigInt::from(b.b - a.b)),
        );
        // Solve p + s·eps = a + u·d.
        let det = &eps.0 * &d.1 - &eps.1 * &d.0;
        let ra = (
            BigRational::from(BigInt::from(a.a)) - &p.0,
            BigRational::from(BigInt::from(a.b)) - &p.1,
        );
        if det.is_zero() {
            // Parallel: reject only if collinear and overlapping forward.
            let c = &ra.0 * &d.1 - &ra.1 * &d.0;
            if c.is_zero() {
                return None;
            }
            continue;
        }
        let s = (&ra.0 * &d.1 - &ra.1 * &d.0) / &det;
        let u = (&ra.0 * &eps.1 - &ra.1 * &eps.0) / &det;
        if s.is_zero() {
            // Intersection at p itself is ignored by convention.
            continue;
        }
        if s.is_negative() {
            continue;
        }
        if u.is_zero() || u == BigRational::one() {
            return None; // vertex hit: resample
        }
        if u.is_negative() || u > BigRational::one() {
            continue;
        }
        let cross = &eps.0 * &d.1 - &eps.1 * &d.0;
        total += if cross.is_negative() { -1 } else { 1 };
    }
    Some(total)
}

/// Σ of linking numbers over the lattice points of one parity class inside
/// the diagram's bounding box.
pub fn quadrant_linking(parity: (i64, i64), diagram: &IndexDiagram) -> i64 {
    if diagram.vertices.is_empty() {
        return 0;
    }
    let lo_a = diagram.vertices.iter().map(|v| v.a).min().unwrap();
    let hi_a = diagram.vertices.iter().map(|v| v.a).max().unwrap();
    let lo_b = diagram.vertices.iter().map(|v| v.b).min().unwrap();
    let hi_b = diagram.vertices.iter().map(|v| v.b).max().unwrap();
    let mut total = 0;
    for a in lo_a..=hi_a {
        for b in lo_b..=hi_b {
            if a.rem_euclid(2) == parity.0.rem_euclid(2)
                && b.rem_euclid(2) == parity.1.rem_euclid(2)
            {
                total += linking(
                    (
                        BigRational::from(BigInt::from(a)),
                        BigRational::from(BigInt::from(b)),
                    ),
                    diagram,
                );
            }
        }
    }
    total
}

/// σ = (−1)^{(m − Rot_Log)/2}; m and Rot_Log must agree in parity.
pub fn welschinger_sign(m: i64, rot_log: i64) -> Result<i8, CurveError> {
    if (m - rot_log).rem_euclid(2) != 0 {
        return Err(CurveError::ParityViolation);
    }
    Ok(if ((m - rot_log) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::triangle;
    use crate::linalg::rat;
    use alloc::vec;

    fn line() -> RealRationalCurve {
        // x = t, y = 1 − t.
        RealRationalCurve::new(
            RatFunc::from_i64(&[0, 1], &[1]).unwrap(),
            RatFunc::from_i64(&[1, -1], &[1]).unwrap(),
            1,
            Some(triangle(1)),
        )
        .unwrap()
    }

    #[test]
    fn line_boundary_divisor() {
        let d = boundary_divisor(&line()).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0].param, ParamLocus::Real(RealRoot::Rational(rat(0, 1))));
        assert_eq!(d[0].order_vec, (1, 0));
        assert_eq!(d[1].param, ParamLocus::Real(RealRoot::Rational(rat(1, 1))));
        assert_eq!(d[1].order_vec, (0, 1));
        assert_eq!(d[2].param, ParamLocus::Infinity);
        assert_eq!(d[2].order_vec, (-1, -1));
        for b in &d {
            assert_eq!(b.mult, 1);
        }
    }

    #[test]
    fn line_diagram_and_index() {
        let c = line();
        let diag = index_diagram(&c).unwrap();
        assert_eq!(
            diag.vertices,
            vec![
                LatticePoint::new(0, 0),
                LatticePoint::new(0, -1),
                LatticePoint::new(1, 0)
            ]
        );
        assert_eq!(
            diag.edges,
            vec![
                LatticePoint::new(0, -1),
                LatticePoint::new(1, 1),
                LatticePoint::new(-1, 0)
            ]
        );
        assert_eq!(quantum_index_doubled(&c).unwrap(), 1);
        assert_eq!(quantum_index_doubled(&c.reversed()).unwrap(), -1);
    }

    #[test]
    fn fr2_scales_index_by_four() {
        let c = line();
        assert_eq!(quantum_index_doubled(&c.fr2()).unwrap(), 4);
        let d = index_diagram(&c.fr2()).unwrap();
        // Vertex-wise doubling of the base diagram, up to normalization.
        let base = index_diagram(&c).unwrap();
        let scaled: Vec<LatticePoint> = base
            .vertices
            .iter()
            .map(|v| LatticePoint::new(2 * v.a, 2 * v.b))
            .collect();
        let shift = d.vertices[0].sub(scaled[0]);
        assert!(shift.a % 2 == 0 && shift.b % 2 == 0);
        for (u, w) in d.vertices.iter().zip(&scaled) {
            assert_eq!(u.sub(*w), shift);
        }
    }

    #[test]
    fn polygon_mismatch_detected() {
        let c = RealRationalCurve::new(
            RatFunc::from_i64(&[0, 1], &[1]).unwrap(),
            RatFunc::from_i64(&[1, -1], &[1]).unwrap(),
            1,
            Some(triangle(2)),
        )
        .unwrap();
        assert_eq!(
            boundary_divisor(&c).unwrap_err(),
            CurveError::PolygonMismatch
        );
    }

    #[test]
    fn implied_polygon_of_line() {
        let d = boundary_divisor(&line()).unwrap();
        let p = implied_polygon(&d).unwrap();
        assert!(same_up_to_translation(&p, &triangle(1)));
    }

    #[test]
    fn multiplicity_two_boundary_point() {
        // x = t², y = 1 − t: param 0 has order_vec (2,0).
        let c = RealRationalCurve::new(
            RatFunc::from_i64(&[0, 0, 1], &[1]).unwrap(),
            RatFunc::from_i64(&[1, -1], &[1]).unwrap(),
            1,
            None,
        )
        .unwrap();
        let d = boundary_divisor(&c).unwrap();
        let at0 = d
            .iter()
            .find(|b| b.param == ParamLocus::Real(RealRoot::Rational(rat(0, 1))))
            .unwrap();
        assert_eq!(at0.order_vec, (2, 0));
        assert_eq!(at0.mult, 2);
        assert_eq!(at0.normal, LatticePoint::new(-1, 0));
    }

    #[test]
    fn conjugate_pairs_detected() {
        // x = 1/(1+t²) has a conjugate pole pair at ±i.
        let c = RealRationalCurve::new(
            RatFunc::from_i64(&[1], &[1, 0, 1]).unwrap(),
            RatFunc::from_i64(&[0, 1], &[1]).unwrap(),
            1,
            None,
        )
        .unwrap();
        let d = boundary_divisor(&c).unwrap();
        let pair = d
            .iter()
            .find(|b| matches!(b.param, ParamLocus::ConjugatePair { .. }))
            .unwrap();
        assert_eq!(pair.order_vec, (-1, 0));
        assert!(index_diagram(&c).is_err());
    }

    #[test]
    fn linking_unit_square() {
        let diag = IndexDiagram {
            vertices: vec![
                LatticePoint::new(0, 0),
                LatticePoint::new(1, 0),
                LatticePoint::new(1, 1),
                LatticePoint::new(0, 1),
            ],
            edges: vec![
                LatticePoint::new(1, 0),
                LatticePoint::new(0, 1),
                LatticePoint::new(-1, 0),
                LatticePoint::new(0, -1),
            ],
        };
        assert_eq!(linking((rat(1, 2), rat(1, 2)), &diag), 1);
        assert_eq!(linking((rat(5, 1), rat(5, 1)), &diag), 0);
        assert_eq!(linking((rat(-3, 1), rat(1, 2)), &diag), 0);
    }

    #[test]
    fn welschinger_parity() {
        // (m − Rot)/2 = 1 → −1; = 2 → +1.
        assert_eq!(welschinger_sign(3, 1).unwrap(), -1);
        assert_eq!(welschinger_sign(3, -1).unwrap(), 1);
        assert_eq!(welschinger_sign(6, -4).unwrap(), -1);
        assert!(welschinger_sign(3, 0).is_err());
    }
}
