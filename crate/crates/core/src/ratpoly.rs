//! Univariate polynomials with exact rational coefficients: arithmetic,
//! square-free decomposition, Sturm-sequence real-root isolation with exact
//! recognition of rational roots, and floating-point complex evaluation.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::fmath;

/// Complex double, just enough for evaluation and Durand-Kerner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }
    pub fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    pub fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
    pub fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    pub fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    pub fn scale(self, s: f64) -> C64 {
        C64::new(self.re * s, self.im * s)
    }
    pub fn conj(self) -> C64 {
        C64::new(self.re, -self.im)
    }
    pub fn abs(self) -> f64 {
        fmath::hypot(self.re, self.im)
    }
    pub fn arg(self) -> f64 {
        fmath::atan2(self.im, self.re)
    }
}

/// Polynomial a_0 + a_1 t + ... + a_n t^n, coefficients exact rationals,
/// leading coefficient nonzero (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(alloc::vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    /// t − r.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(alloc::vec![-r.clone(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports −1 for convenience.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn eval_c64(&self, t: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(C64::new(c.to_f64().unwrap_or(f64::NAN), 0.0));
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = alloc::vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::new(out)
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut out = alloc::vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len();
        if rem.len() < dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quo = alloc::vec![BigRational::zero(); rem.len() - dd + 1];
        let lead = d.coeffs.last().unwrap().clone();
        for i in (0..quo.len()).rev() {
            let f = &rem[i + dd - 1] / &lead;
            if f.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &rem[i + j] - &f * dc;
                rem[i + j] = v;
            }
            quo[i] = f;
        }
        (RatPoly::new(quo), RatPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = BigRational::one() / a.leading();
            a.scale(&inv)
        }
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let inv = BigRational::one() / self.leading();
        self.scale(&inv)
    }

    /// f / gcd(f, f'): the radical, sharing f's roots with multiplicity one.
    pub fn square_free_part(&self) -> RatPoly {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's algorithm: returns [(g₁, 1), (g₂, 2), ...] with f ~ Π gᵢ^i and
    /// each gᵢ square-free and pairwise coprime; constant factors dropped.
    pub fn square_free_decomposition(&self) -> Vec<(RatPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() <= 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        loop {
            if b.degree() <= 0 {
                break;
            }
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            c = d.div_rem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Cauchy bound: every complex root has |z| < bound.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading();
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = (c / &lead).abs();
            if r > m {
                m = r;
            }
        }
        m + BigRational::one()
    }

    /// Substitute t = 1/τ and clear denominators: coefficient reversal. The
    /// roots of the result are reciprocals of the nonzero roots of `self`.
    pub fn reversed(&self) -> RatPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        RatPoly::new(c)
    }

    /// Order of vanishing at `t`: the multiplicity of `t` as a root (0 if not
    /// a root).
    pub fn order_at(&self, t: &BigRational) -> u32 {
        assert!(!self.is_zero());
        let mut f = self.clone();
        let lin = RatPoly::linear_root(t);
        let mut ord = 0;
        loop {
            let (q, r) = f.div_rem(&lin);
            if r.is_zero() {
                ord += 1;
                f = q;
            } else {
                return ord;
            }
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                write!(f, "{}", mag)?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "t")?;
            } else if i > 1 {
                write!(f, "t^{}", i)?;
            }
        }
        Ok(())
    }
}

/// A real root of a polynomial: either recognized exactly as a rational, or
/// bracketed by an isolating interval of width ≤ 10⁻¹².
#[derive(Debug, Clone, PartialEq)]
pub enum RealRoot {
    Rational(BigRational),
    Isolated { lo: BigRational, hi: BigRational },
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            RealRoot::Isolated { lo, hi } => {
                let m = (lo + hi) / BigRational::from(BigInt::from(2));
                m.to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    /// A rational point strictly below the root.
    pub fn lower(&self) -> BigRational {
        match self {
            RealRoot::Rational(r) => r.clone(),
            RealRoot::Isolated { lo, .. } => lo.clone(),
        }
    }

    /// A rational point at or above the root.
    pub fn upper(&self) -> BigRational {
        match self {
            RealRoot::Rational(r) => r.clone(),
            RealRoot::Isolated { hi, .. } => hi.clone(),
        }
    }
}

fn sign_of(r: &BigRational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Sturm chain of a square-free polynomial.
fn sturm_chain(f: &RatPoly) -> Vec<RatPoly> {
    let mut chain = alloc::vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn sign_variations(chain: &[RatPoly], t: &BigRational) -> usize {
    let mut prev = 0i8;
    let mut v = 0;
    for p in chain {
        let s = sign_of(&p.eval(t));
        if s != 0 {
            if prev != 0 && s != prev {
                v += 1;
            }
            prev = s;
        }
    }
    v
}

/// Number of real roots of the (square-free) chain owner in (lo, hi].
fn roots_in(chain: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// All real roots of a square-free polynomial, in increasing order. Roots
/// that are rational numbers are recognized exactly; the rest are bracketed
/// to width ≤ `width`.
pub fn isolate_real_roots(f: &RatPoly, width: &BigRational) -> Vec<RealRoot> {
    let mut out = Vec::new();
    if f.degree() <= 0 {
        return out;
    }
    let chain = sturm_chain(f);
    let bound = f.root_bound();
    let mut stack = alloc::vec![(-bound.clone(), bound.clone())];
    let mut intervals: Vec<(BigRational, BigRational)> = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = roots_in(&chain, &lo, &hi);
        if n == 0 {
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
        if n == 1 {
            // Pull an exact rational root out when the midpoint-refined
            // interval pins one; otherwise keep narrowing.
            if f.eval(&mid).is_zero() {
                intervals.push((mid.clone(), mid));
                continue;
            }
            if &hi - &lo <= *width {
                intervals.push((lo, hi));
                continue;
            }
        } else if f.eval(&mid).is_zero() {
            // Split around the hit so each part is strictly smaller.
            intervals.push((mid.clone(), mid.clone()));
            let off = (&hi - &lo) / BigRational::from(BigInt::from(1u64 << 20));
            stack.push((lo, &mid - &off));
            stack.push((&mid + &off, hi));
            continue;
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    intervals.sort_by(|a, b| a.0.cmp(&b.0));
    for (lo, hi) in intervals {
        if lo == hi {
            out.push(RealRoot::Rational(lo));
        } else {
            // One more exactness attempt: the unique simplest rational in
            // the interval (by Stern-Brocot search) is the only candidate.
            if let Some(r) = simplest_in(&lo, &hi) {
                if f.eval(&r).is_zero() {
                    out.push(RealRoot::Rational(r));
                    continue;
                }
            }
            out.push(RealRoot::Isolated { lo, hi });
        }
    }
    out
}

/// The rational with smallest denominator (then numerator) in the open
/// interval (lo, hi); None if the search depth is exceeded.
fn simplest_in(lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    // Continued-fraction style: simplest in (lo,hi) with lo<hi.
    fn go(lo: &BigRational, hi: &BigRational, depth: u32) -> Option<BigRational> {
        if depth == 0 {
            return None;
        }
        let fl = lo.floor();
        if &fl + BigRational::one() < *hi {
            // An integer strictly inside (or the left endpoint's ceil).
            let c = lo.ceil();
            let cand = if &c > lo { c } else { c + BigRational::one() };
            if cand < *hi {
                return Some(cand);
            }
        }
        // Both in [n, n+1): recurse on reciprocal of fractional parts.
        let n = fl;
        let lo2 = lo - &n;
        let hi2 = hi - &n;
        if lo2.is_zero() {
            return Some(n);
        }
        let r = go(
            &(BigRational::one() / hi2),
            &(BigRational::one() / lo2),
            depth - 1,
        )?;
        Some(n + BigRational::one() / r)
    }
    if lo >= hi {
        return None;
    }
    go(lo, hi, 128)
}

/// All complex roots (with multiplicity) of `f` as f64 approximations, by
/// Durand-Kerner on each square-free factor.
pub fn complex_roots(f: &RatPoly) -> Vec<C64> {
    let mut out = Vec::new();
    for (g, mult) in f.square_free_decomposition() {
        let roots = durand_kerner(&g);
        for r in roots {
            for _ in 0..mult {
                out.push(r);
            }
        }
    }
    out
}

fn durand_kerner(f: &RatPoly) -> Vec<C64> {
    let n = f.degree();
    if n <= 0 {
        return Vec::new();
    }
    let n = n as usize;
    let lead = f.leading().to_f64().unwrap_or(1.0);
    let bound = f.root_bound().to_f64().unwrap_or(2.0);
    // Non-real, non-symmetric starting points on a circle inside the bound.
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let ang = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            C64::new(
                0.7 * bound * fmath::cos(ang),
                0.7 * bound * fmath::sin(ang) + 0.1,
            )
        })
        .collect();
    for _ in 0..400 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let mut denom = C64::new(lead, 0.0);
            for j in 0..n {
                if j != i {
                    denom = denom.mul(z[i].sub(z[j]));
                }
            }
            let step = f.eval_c64(z[i]).div(denom);
            z[i] = z[i].sub(step);
            moved = moved.max(step.abs());
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_and_division() {
        // (t-1)(t+2) = t² + t - 2
        let p = RatPoly::from_i64(&[-1, 1]).mul(&RatPoly::from_i64(&[2, 1]));
        assert_eq!(p, RatPoly::from_i64(&[-2, 1, 1]));
        let (q, rem) = p.div_rem(&RatPoly::from_i64(&[-1, 1]));
        assert_eq!(q, RatPoly::from_i64(&[2, 1]));
        assert!(rem.is_zero());
        assert_eq!(p.derivative(), RatPoly::from_i64(&[1, 2]));
        assert_eq!(p.eval(&r(2, 1)), r(4, 1));
    }

    #[test]
    fn gcd_and_square_free() {
        // f = (t-1)²(t+3)
        let a = RatPoly::from_i64(&[-1, 1]);
        let b = RatPoly::from_i64(&[3, 1]);
        let f = a.mul(&a).mul(&b);
        assert_eq!(f.gcd(&f.derivative()), a.monic());
        assert_eq!(f.square_free_part(), a.mul(&b).monic());
        let dec = f.square_free_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (b.monic(), 1));
        assert_eq!(dec[1], (a.monic(), 2));
    }

    #[test]
    fn isolates_rational_and_irrational_roots() {
        // (t² - 2)(t - 1/3): roots ±√2 and 1/3.
        let f = RatPoly::from_i64(&[-2, 0, 1]).mul(&RatPoly::new(alloc::vec![
            r(-1, 3),
            r(1, 1)
        ]));
        let w = r(1, 1_000_000_000_000);
        let roots = isolate_real_roots(&f, &w);
        assert_eq!(roots.len(), 3);
        assert!((roots[0].approx() + core::f64::consts::SQRT_2).abs() < 1e-9);
        assert_eq!(roots[1], RealRoot::Rational(r(1, 3)));
        assert!((roots[2].approx() - core::f64::consts::SQRT_2).abs() < 1e-9);
        match &roots[0] {
            RealRoot::Isolated { lo, hi } => assert!(&(hi - lo) <= &w),
            _ => panic!("sqrt2 is not rational"),
        }
    }

    #[test]
    fn no_real_roots() {
        let f = RatPoly::from_i64(&[1, 0, 1]); // t² + 1
        assert!(isolate_real_roots(&f, &r(1, 1_000_000)).is_empty());
        let roots = complex_roots(&f);
        assert_eq!(roots.len(), 2);
        for z in roots {
            assert!(z.re.abs() < 1e-9);
            assert!((z.im.abs() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn order_at_roots() {
        let f = RatPoly::from_i64(&[0, 0, 1]); // t²
        assert_eq!(f.order_at(&r(0, 1)), 2);
        assert_eq!(f.order_at(&r(1, 1)), 0);
    }

    #[test]
    fn close_roots_separate() {
        // roots at 1/1000 and 2/1000.
        let f = RatPoly::new(alloc::vec![r(1, 1000), r(1, 1)])
            .neg()
            .mul(&RatPoly::new(alloc::vec![r(-2, 1000), r(1, 1)]));
        let roots = isolate_real_roots(&f.monic(), &r(1, 1_000_000_000_000));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], RealRoot::Rational(r(-1, 1000)));
        assert_eq!(roots[1], RealRoot::Rational(r(2, 1000)));
    }

    #[test]
    fn durand_kerner_cubic() {
        // (t-1)(t²+4): roots 1, ±2i.
        let f = RatPoly::from_i64(&[-1, 1]).mul(&RatPoly::from_i64(&[4, 0, 1]));
        let mut roots = complex_roots(&f);
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((roots[0].im + 2.0).abs() < 1e-8);
        assert!((roots[1].re - 1.0).abs() < 1e-8 && roots[1].im.abs() < 1e-8);
        assert!((roots[2].im - 2.0).abs() < 1e-8);
    }

    proptest::proptest! {
        #[test]
        fn div_rem_reconstructs(
            a in proptest::collection::vec(-9i64..=9, 1..7),
            b in proptest::collection::vec(-9i64..=9, 1..5),
        ) {
            let pa = RatPoly::from_i64(&a);
            let pb = RatPoly::from_i64(&b);
            if !pb.is_zero() {
                let (q, rem) = pa.div_rem(&pb);
                proptest::prop_assert_eq!(pb.mul(&q).add(&rem), pa);
                proptest::prop_assert!(rem.degree() < pb.degree() || rem.is_zero());
            }
        }

        #[test]
        fn planted_rational_roots_found(roots in proptest::collection::vec((-20i64..=20, 1i64..=9), 1..4)) {
            let mut f = RatPoly::from_i64(&[1]);
            let mut expect: Vec<BigRational> = Vec::new();
            for &(n, d) in &roots {
                let rt = r(n, d);
                f = f.mul(&RatPoly::linear_root(&rt));
                if !expect.contains(&rt) {
                    expect.push(rt);
                }
            }
            expect.sort();
            let found = isolate_real_roots(&f.square_free_part(), &r(1, 1_000_000_000_000));
            let got: Vec<BigRational> = found.iter().map(|rr| match rr {
                RealRoot::Rational(x) => x.clone(),
                RealRoot::Isolated{..} => panic!("planted rational root not recognized"),
            }).collect();
            proptest::prop_assert_eq!(got, expect);
        }
    }
}
