//! Exact rational scalars with a first-order symbolic perturbation.
//!
//! An [`EpsScalar`] is `value + eps·ε` for an infinitesimal `ε > 0`. Ordering
//! is lexicographic, so the perturbation only ever decides ties of the value
//! part. This is what makes half-open tiles exact: a boundary shared by two
//! closed sets gets split by comparing eps coefficients instead of by an
//! arbitrary tolerance.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Floor of a rational as an i64. Panics if out of range.
pub fn rat_floor_i64(r: &Rat) -> i64 {
    let f = r.floor();
    let (n, d) = (f.numer().clone(), f.denom().clone());
    debug_assert!(d.is_one());
    i64::try_from(n).expect("rational floor exceeds i64 range")
}

pub fn rat_ceil_i64(r: &Rat) -> i64 {
    let c = r.ceil();
    let (n, d) = (c.numer().clone(), c.denom().clone());
    debug_assert!(d.is_one());
    i64::try_from(n).expect("rational ceil exceeds i64 range")
}

/// `value + eps·ε` with exact rational parts and lexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsScalar {
    pub value: Rat,
    pub eps: Rat,
}

impl EpsScalar {
    pub fn new(value: Rat, eps: Rat) -> Self {
        EpsScalar { value, eps }
    }

    pub fn from_rat(value: Rat) -> Self {
        EpsScalar {
            value,
            eps: Rat::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.eps.is_zero()
    }

    /// Lexicographic sign: sign of `value`, with `eps` breaking the tie.
    pub fn lex_sign(&self) -> Ordering {
        match self.value.cmp(&Rat::zero()) {
            Ordering::Equal => self.eps.cmp(&Rat::zero()),
            ord => ord,
        }
    }

    /// True when the value parts tie, i.e. the comparison was decided by ε.
    pub fn decided_by_eps(&self) -> bool {
        self.value.is_zero() && !self.eps.is_zero()
    }

    pub fn scale(&self, by: &Rat) -> Self {
        EpsScalar {
            value: &self.value * by,
            eps: &self.eps * by,
        }
    }

    /// Exact division by a plain rational (nonzero).
    pub fn div_rat(&self, by: &Rat) -> Self {
        assert!(!by.is_zero(), "division of EpsScalar by zero");
        EpsScalar {
            value: &self.value / by,
            eps: &self.eps / by,
        }
    }

    /// First-order product. Products of two nonzero eps parts are rejected:
    /// the algebra tracks ε only to first order.
    pub fn mul(&self, rhs: &EpsScalar) -> Self {
        assert!(
            self.eps.is_zero() || rhs.eps.is_zero(),
            "second-order ε term in EpsScalar product"
        );
        EpsScalar {
            value: &self.value * &rhs.value,
            eps: &self.value * &rhs.eps + &self.eps * &rhs.value,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Debug for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            write!(f, "{}", self.value)
        } else if self.eps.is_positive() {
            write!(f, "{}+{}ε", self.value, self.eps)
        } else {
            write!(f, "{}{}ε", self.value, self.eps)
        }
    }
}

impl fmt::Display for EpsScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &EpsScalar {
    type Output = EpsScalar;
    fn add(self, rhs: &EpsScalar) -> EpsScalar {
        EpsScalar {
            value: &self.value + &rhs.value,
            eps: &self.eps + &rhs.eps,
        }
    }
}

impl Sub for &EpsScalar {
    type Output = EpsScalar;
    fn sub(self, rhs: &EpsScalar) -> EpsScalar {
        EpsScalar {
            value: &self.value - &rhs.value,
            eps: &self.eps - &rhs.eps,
        }
    }
}

impl Neg for &EpsScalar {
    type Output = EpsScalar;
    fn neg(self) -> EpsScalar {
        EpsScalar {
            value: -&self.value,
            eps: -&self.eps,
        }
    }
}

impl AddAssign<&EpsScalar> for EpsScalar {
    fn add_assign(&mut self, rhs: &EpsScalar) {
        self.value += &rhs.value;
        self.eps += &rhs.eps;
    }
}

impl SubAssign<&EpsScalar> for EpsScalar {
    fn sub_assign(&mut self, rhs: &EpsScalar) {
        self.value -= &rhs.value;
        self.eps -= &rhs.eps;
    }
}

/// Does a real number `t` with `lo ≤ t ≤ hi` exist, where the bounds are
/// perturbed scalars? Real points carry no ε, so at a value tie the lower
/// bound must have nonpositive and the upper bound nonnegative eps part.
pub fn real_interval_nonempty(lo: &EpsScalar, hi: &EpsScalar) -> bool {
    match lo.value.cmp(&hi.value) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => !lo.eps.is_positive() && !hi.eps.is_negative(),
    }
}

/// Formats a rational as a decimal string with the given number of digits,
/// rounding half away from zero. Used only at serialization boundaries.
pub fn rat_to_decimal(r: &Rat, digits: u32) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let pow = BigInt::from(10u32).pow(digits);
    let scaled = abs.numer() * &pow;
    let (q, rem) = num::Integer::div_rem(&scaled, abs.denom());
    let q = if &rem * BigInt::from(2) >= *abs.denom() {
        q + BigInt::one()
    } else {
        q
    };
    let s = q.to_string();
    let s = if s.len() <= digits as usize {
        format!("0.{:0>width$}", s, width = digits as usize)
    } else {
        let split = s.len() - digits as usize;
        format!("{}.{}", &s[..split], &s[split..])
    };
    let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    let s = if s.is_empty() { "0".to_string() } else { s };
    if neg && s != "0" {
        format!("-{}", s)
    } else {
        s
    }
}

/// `p/q` in lowest terms, the wire format for exact rationals.
pub fn rat_to_frac_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_frac_string(s: &str) -> Option<Rat> {
    let mut parts = s.splitn(2, '/');
    let numer: BigInt = parts.next()?.trim().parse().ok()?;
    match parts.next() {
        None => Some(Rat::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().ok()?;
            if denom.is_zero() {
                None
            } else {
                Some(Rat::new(numer, denom))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_breaks_ties_by_eps() {
        let a = EpsScalar::new(rat_int(1), rat_int(0));
        let b = EpsScalar::new(rat_int(1), rat(1, 2));
        let c = EpsScalar::new(rat(3, 2), rat_int(-100));
        assert!(a < b);
        assert!(b < c);
        assert_eq!(a.lex_sign(), Ordering::Greater);
        assert_eq!(EpsScalar::new(rat_int(0), rat_int(-3)).lex_sign(), Ordering::Less);
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let a = EpsScalar::new(rat(1, 3), rat_int(2));
        let b = EpsScalar::new(rat(2, 3), rat_int(-1));
        assert_eq!(&a + &b, EpsScalar::new(rat_int(1), rat_int(1)));
        assert_eq!(&a - &b, EpsScalar::new(rat(-1, 3), rat_int(3)));
        assert_eq!(a.scale(&rat_int(3)), EpsScalar::new(rat_int(1), rat_int(6)));
    }

    #[test]
    fn first_order_product() {
        let a = EpsScalar::new(rat_int(2), rat_int(3));
        let b = EpsScalar::from_rat(rat(1, 2));
        assert_eq!(a.mul(&b), EpsScalar::new(rat_int(1), rat(3, 2)));
    }

    #[test]
    #[should_panic(expected = "second-order")]
    fn second_order_product_is_rejected() {
        let a = EpsScalar::new(rat_int(0), rat_int(1));
        let _ = a.mul(&a);
    }

    #[test]
    fn real_interval_rules() {
        let z = EpsScalar::zero;
        let up = EpsScalar::new(rat_int(0), rat_int(1));
        let dn = EpsScalar::new(rat_int(0), rat_int(-1));
        assert!(real_interval_nonempty(&z(), &z()));
        assert!(real_interval_nonempty(&dn, &up));
        assert!(!real_interval_nonempty(&up, &up));
        assert!(!real_interval_nonempty(&up, &dn));
        assert!(real_interval_nonempty(&dn, &dn) == false);
        assert!(real_interval_nonempty(
            &EpsScalar::from_int(1),
            &EpsScalar::from_int(2)
        ));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(rat_to_decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(rat_to_decimal(&rat(-1, 2), 12), "-0.5");
        assert_eq!(rat_to_decimal(&rat_int(7), 12), "7");
        assert_eq!(rat_to_frac_string(&rat(-3, 6)), "-1/2");
        assert_eq!(rat_from_frac_string("5/8"), Some(rat(5, 8)));
    }
}
