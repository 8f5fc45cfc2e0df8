//! Exact arithmetic in `ℚ(√2)`.
//!
//! An [`ExactScalar`] is `a + b√2` with arbitrary-precision rational parts.
//! Both parts are kept in lowest terms, so structural equality is numeric
//! equality (`√2` is irrational, hence `a + b√2 = 0` iff `a = b = 0`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    rat: BigRational,
    root: BigRational,
}

impl ExactScalar {
    pub fn new(rat: BigRational, root: BigRational) -> Self {
        // BigRational reduces on construction and after every operation.
        Self { rat, root }
    }

    /// `p/q + (r/s)·√2`. Panics if a denominator is zero.
    pub fn from_fractions(p: i64, q: i64, r: i64, s: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigRational::new(BigInt::from(r), BigInt::from(s)),
        )
    }

    pub fn from_ints(rat: i64, root: i64) -> Self {
        Self::from_fractions(rat, 1, root, 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn root_part(&self) -> &BigRational {
        &self.root
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root.is_zero()
    }

    /// `a − b√2`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.rat.clone(), -self.root.clone())
    }

    /// Field norm `a² − 2b²`; nonzero for every nonzero element.
    pub fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.rat * &self.rat - two * &self.root * &self.root
    }

    /// Multiplicative inverse `(a − b√2)/(a² − 2b²)`, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.rat / &n, -(&self.root / &n)))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.rat * k, &self.root * k)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.root.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.rat + &rhs.rat, &self.root + &rhs.root)
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        &self + &rhs
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.rat += &rhs.rat;
        self.root += &rhs.root;
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.rat - &rhs.rat, &self.root - &rhs.root)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        &self - &rhs
    }
}

impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = BigRational::from_integer(BigInt::from(2));
        ExactScalar::new(
            &self.rat * &rhs.rat + two * &self.root * &rhs.root,
            &self.rat * &rhs.root + &self.root * &rhs.rat,
        )
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.rat.clone(), -self.root.clone())
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `a + b√2` with rationals as `p/q`, e.g. `8 + 4√2`, `-1/2 - 1/3√2`, `0`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match (self.rat.is_zero(), self.root.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => fmt_rational(&self.rat),
            (true, false) => format!("{}√2", fmt_rational(&self.root)),
            (false, false) => {
                let sign = if self.root.is_negative() { '-' } else { '+' };
                format!(
                    "{} {} {}√2",
                    fmt_rational(&self.rat),
                    sign,
                    fmt_rational(&self.root.abs())
                )
            }
        };
        f.pad(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn es(p: i64, q: i64, r: i64, s: i64) -> ExactScalar {
        ExactScalar::from_fractions(p, q, r, s)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(
            ExactScalar::from_ints(1, 1) + ExactScalar::from_ints(1, -1),
            ExactScalar::from_ints(2, 0)
        );
        let x = es(3, 7, -5, 11);
        assert_eq!(ExactScalar::zero() + x.clone(), x);
        assert_eq!(
            es(1, 2, 1, 3) + es(1, 2, 2, 3),
            ExactScalar::from_ints(1, 1)
        );
    }

    #[test]
    fn multiplication_examples() {
        let one_plus = ExactScalar::from_ints(1, 1);
        assert_eq!(&one_plus * &one_plus, ExactScalar::from_ints(3, 2));
        assert_eq!(
            &one_plus * &ExactScalar::from_ints(1, -1),
            ExactScalar::from_ints(-1, 0)
        );
        assert_eq!(
            ExactScalar::sqrt2() * ExactScalar::sqrt2(),
            ExactScalar::from_int(2)
        );
    }

    #[test]
    fn float_conversion() {
        assert!((ExactScalar::from_ints(2, 1).to_f64() - 3.414213562).abs() < 1e-9);
        assert!((ExactScalar::from_ints(0, 2).to_f64() - 2.828427125).abs() < 1e-9);
        assert_eq!(ExactScalar::zero().to_f64(), 0.0);
    }

    #[test]
    fn reduced_form_makes_equality_structural() {
        assert_eq!(es(2, 4, 6, 8), es(1, 2, 3, 4));
        assert_eq!(es(-1, -2, 0, 5), es(1, 2, 0, 1));
    }

    #[test]
    fn display() {
        assert_eq!(ExactScalar::from_ints(8, 4).to_string(), "8 + 4√2");
        assert_eq!(ExactScalar::from_ints(-4, -4).to_string(), "-4 - 4√2");
        assert_eq!(es(-1, 2, -1, 3).to_string(), "-1/2 - 1/3√2");
        assert_eq!(es(0, 1, 5, 2).to_string(), "5/2√2");
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(format!("{:>6}", ExactScalar::from_int(3)), "     3");
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(ExactScalar::zero().inverse().is_none());
    }

    fn small() -> impl Strategy<Value = ExactScalar> {
        (-60i64..60, 1i64..12, -60i64..60, 1i64..12)
            .prop_map(|(p, q, r, s)| ExactScalar::from_fractions(p, q, r, s))
    }

    fn bounded() -> impl Strategy<Value = ExactScalar> {
        (-1000i64..=1000, 1i64..50, -1000i64..=1000, 1i64..50)
            .prop_map(|(p, q, r, s)| ExactScalar::from_fractions(p, q, r, s))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn field_axioms(x in small(), y in small(), z in small()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn inverse_is_two_sided(x in small()) {
            prop_assume!(!x.is_zero());
            let inv = x.inverse().unwrap();
            prop_assert_eq!(&x * &inv, ExactScalar::one());
            prop_assert_eq!(&inv * &x, ExactScalar::one());
        }

        #[test]
        fn to_f64_is_a_ring_homomorphism(x in bounded(), y in bounded()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            prop_assert!(((&x + &y).to_f64() - (fx + fy)).abs() <= 1e-12 * (1.0 + (fx + fy).abs()));
            prop_assert!(((&x * &y).to_f64() - fx * fy).abs() <= 1e-12 * (1.0 + (fx * fy).abs()));
        }
    }
}
