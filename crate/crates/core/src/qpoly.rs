//! Laurent polynomials in q with half-integer exponents, exact coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial in q^{1/2}. Exponents are stored doubled so that
/// half-integers stay exact; coefficients are arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HalfLaurent {
    // doubled exponent -> nonzero coefficient
    terms: BTreeMap<i64, BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpolyError {
    /// q-bracket of a non-positive integer.
    InvalidMultiplicity,
    /// Evaluation at q = -1 requested on a polynomial with a genuine
    /// half-integer exponent.
    HalfIntegerExponent,
}

impl fmt::Display for QpolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QpolyError::InvalidMultiplicity => write!(f, "q-bracket needs a positive integer"),
            QpolyError::HalfIntegerExponent => {
                write!(f, "half-integer exponent has no value at q = -1")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for QpolyError {}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// c·q^{double_exp/2}.
    pub fn monomial(double_exp: i64, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(double_exp, coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// (doubled exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, double_exp: i64) -> BigInt {
        self.terms.get(&double_exp).cloned().unwrap_or_default()
    }

    fn insert(&mut self, double_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(double_exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of coefficients: the value at q = 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Alternating sum of coefficients: the value at q = -1. Only defined
    /// when every exponent is an integer.
    pub fn eval_at_minus_one(&self) -> Result<BigInt, QpolyError> {
        let mut acc = BigInt::zero();
        for (&e, c) in &self.terms {
            if e % 2 != 0 {
                return Err(QpolyError::HalfIntegerExponent);
            }
            if (e / 2).rem_euclid(2) == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        Ok(acc)
    }

    /// Invariance under q ↦ 1/q.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&e, c)| self.coeff(-e) == *c)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// q^{1/2} − q^{−1/2}.
    pub fn half_diff() -> Self {
        let mut p = Self::monomial(1, BigInt::one());
        p.insert(-1, -BigInt::one());
        p
    }

    fn fmt_exp(double_exp: i64, out: &mut String) {
        use core::fmt::Write;
        if double_exp % 2 == 0 {
            let _ = write!(out, "{}", double_exp / 2);
        } else {
            let _ = write!(out, "{}/2", double_exp);
        }
    }
}

/// [m]_q = (q^{m/2} − q^{−m/2}) / (q^{1/2} − q^{−1/2})
///       = q^{(m−1)/2} + q^{(m−3)/2} + ... + q^{−(m−1)/2}.
pub fn qbracket(m: i64) -> Result<HalfLaurent, QpolyError> {
    if m <= 0 {
        return Err(QpolyError::InvalidMultiplicity);
    }
    let mut p = HalfLaurent::zero();
    let mut e = -(m - 1);
    while e <= m - 1 {
        p.insert(e, BigInt::one());
        e += 2;
    }
    Ok(p)
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert(e, c.clone());
        }
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.insert(e, -c.clone());
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent::zero() - self
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -&self
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, rhs: HalfLaurent) -> HalfLaurent {
                (&self).$m(&rhs)
            }
        }
        impl $trait<&HalfLaurent> for HalfLaurent {
            type Output = HalfLaurent;
            fn $m(self, rhs: &HalfLaurent) -> HalfLaurent {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        // Highest exponent first reads like a polynomial.
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            use core::fmt::Write;
            if e == 0 {
                let _ = write!(out, "{}", mag);
            } else {
                if !mag.is_one() {
                    let _ = write!(out, "{}*", mag);
                }
                out.push_str("q^");
                HalfLaurent::fmt_exp(e, &mut out);
            }
        }
        f.write_str(&out)
    }
}

/// (doubled exponent, coefficient-decimal-string) pairs, the stable wire form
/// used in JSON reports.
pub fn to_pairs(p: &HalfLaurent) -> Vec<(i64, String)> {
    use alloc::string::ToString;
    p.terms().map(|(e, c)| (e, c.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn qbracket_small() {
        assert_eq!(qbracket(1).unwrap(), HalfLaurent::one());
        let b3 = qbracket(3).unwrap();
        assert_eq!(b3.coeff(2), big(1));
        assert_eq!(b3.coeff(0), big(1));
        assert_eq!(b3.coeff(-2), big(1));
        assert_eq!(b3.terms().count(), 3);
        let b2 = qbracket(2).unwrap();
        assert_eq!(b2.coeff(1), big(1));
        assert_eq!(b2.coeff(-1), big(1));
        assert_eq!(b2.terms().count(), 2);
        assert!(qbracket(0).is_err());
        assert!(qbracket(-2).is_err());
    }

    #[test]
    fn qbracket_telescopes() {
        // [m]·(q^{1/2} − q^{−1/2}) = q^{m/2} − q^{−m/2}, exactly.
        let d = HalfLaurent::half_diff();
        for m in 1..=12 {
            let lhs = qbracket(m).unwrap() * &d;
            let rhs = HalfLaurent::monomial(m, big(1)) + HalfLaurent::monomial(-m, big(-1));
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    #[test]
    fn ring_ops() {
        let d = HalfLaurent::half_diff();
        let sq = d.pow(2);
        assert_eq!(sq.coeff(2), big(1));
        assert_eq!(sq.coeff(0), big(-2));
        assert_eq!(sq.coeff(-2), big(1));
        assert_eq!(d.pow(0), HalfLaurent::one());
        assert_eq!(HalfLaurent::zero().pow(0), HalfLaurent::one());
    }

    #[test]
    fn evaluations() {
        // q + 10 + q^{-1}
        let p = HalfLaurent::monomial(2, big(1))
            + HalfLaurent::monomial(0, big(10))
            + HalfLaurent::monomial(-2, big(1));
        assert_eq!(p.eval_at_one(), big(12));
        assert_eq!(p.eval_at_minus_one().unwrap(), big(8));
        assert_eq!(HalfLaurent::half_diff().pow(2).eval_at_one(), big(0));
        assert_eq!(qbracket(5).unwrap().eval_at_one(), big(5));
        // q + 1 + q^{-1} at q = -1 is -1 + 1 - 1.
        assert_eq!(qbracket(3).unwrap().eval_at_minus_one().unwrap(), big(-1));
        assert!(qbracket(2).unwrap().eval_at_minus_one().is_err());
    }

    #[test]
    fn symmetry() {
        assert!(qbracket(4).unwrap().is_symmetric());
        assert!(HalfLaurent::zero().is_symmetric());
        let skew = HalfLaurent::monomial(2, big(1)) + HalfLaurent::monomial(-2, big(-1));
        assert!(!skew.is_symmetric());
    }

    #[test]
    fn display() {
        use alloc::string::ToString;
        assert_eq!(qbracket(3).unwrap().to_string(), "q^1 + 1 + q^-1");
        assert_eq!(qbracket(2).unwrap().to_string(), "q^1/2 + q^-1/2");
        assert_eq!(HalfLaurent::half_diff().to_string(), "q^1/2 - q^-1/2");
        assert_eq!(HalfLaurent::zero().to_string(), "0");
        assert_eq!(
            HalfLaurent::half_diff().pow(2).to_string(),
            "q^1 - 2 + q^-1"
        );
    }

    proptest::proptest! {
        #[test]
        fn mul_is_multiplicative_at_one(
            a in proptest::collection::vec((-8i64..=8, -20i64..=20), 0..6),
            b in proptest::collection::vec((-8i64..=8, -20i64..=20), 0..6),
        ) {
            let pa = a.iter().fold(HalfLaurent::zero(), |acc, &(e, c)| acc + HalfLaurent::monomial(e, big(c)));
            let pb = b.iter().fold(HalfLaurent::zero(), |acc, &(e, c)| acc + HalfLaurent::monomial(e, big(c)));
            let prod = &pa * &pb;
            proptest::prop_assert_eq!(prod.eval_at_one(), pa.eval_at_one() * pb.eval_at_one());
        }

        #[test]
        fn mul_distributes(
            a in proptest::collection::vec((-6i64..=6, -9i64..=9), 0..5),
            b in proptest::collection::vec((-6i64..=6, -9i64..=9), 0..5),
            c in proptest::collection::vec((-6i64..=6, -9i64..=9), 0..5),
        ) {
            let mk = |v: &[(i64, i64)]| v.iter().fold(HalfLaurent::zero(), |acc, &(e, c)| acc + HalfLaurent::monomial(e, big(c)));
            let (pa, pb, pc) = (mk(&a), mk(&b), mk(&c));
            proptest::prop_assert_eq!(&pa * &(&pb + &pc), &pa * &pb + &pa * &pc);
        }
    }
}
