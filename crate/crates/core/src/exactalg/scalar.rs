use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    /// Parses the selector strings `z`, `q` and `fp:<prime>`.
    pub fn parse(selector: &str) -> Result<Ring> {
        match selector.trim() {
            "z" | "Z" => Ok(Ring::Integers),
            "q" | "Q" => Ok(Ring::Rationals),
            s => {
                let p = s
                    .strip_prefix("fp:")
                    .or_else(|| s.strip_prefix("Fp:"))
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Input(format!("unknown ring selector `{selector}`")))?;
                Ring::prime_field(p)
            }
        }
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if p < 2 || p > u32::MAX as u64 || !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Input(format!("{p} is not a supported prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn selector(&self) -> String {
        match self {
            Ring::Integers => "z".into(),
            Ring::Rationals => "q".into(),
            Ring::PrimeField(p) => format!("fp:{p}"),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Ring::Integers => Scalar::Int(v.clone()),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            Ring::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u64().unwrap(),
                    p,
                }
            }
        }
    }

    /// Image of an integer scalar under the canonical map `Z -> self`.
    pub fn reduce(&self, s: &Scalar) -> Result<Scalar> {
        match s {
            Scalar::Int(v) => Ok(self.from_bigint(v)),
            other if other.ring() == *self => Ok(other.clone()),
            other => Err(Error::Ring(format!(
                "cannot change coefficients from {:?} to {:?}",
                other.ring(),
                self
            ))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact ring element tagged with its ring.
///
/// Rationals are always reduced with positive denominator (guaranteed by
/// `BigRational`), residues always lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Mod { p, .. } => Ring::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Int(v) => v.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    /// Euclidean size used for pivot selection: |v| over the integers and
    /// 1 for any nonzero field element.
    pub fn norm(&self) -> BigInt {
        match self {
            Scalar::Int(v) => v.abs(),
            _ if self.is_zero() => BigInt::zero(),
            _ => BigInt::one(),
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            _ => None,
        }
    }

    /// Multiplicative inverse, if it exists in the ring.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Int(v) if v.abs().is_one() => Some(self.clone()),
            Scalar::Int(_) => None,
            Scalar::Rat(v) => Some(Scalar::Rat(v.recip())),
            Scalar::Mod { value, p } => {
                let inv = BigInt::from(*value).modpow(&BigInt::from(p - 2), &BigInt::from(*p));
                Some(Scalar::Mod {
                    value: inv.to_u64().unwrap(),
                    p: *p,
                })
            }
        }
    }

    /// Quotient and remainder with `self = q * d + r`; the remainder is
    /// zero over a field and has `norm(r) < norm(d)` over the integers.
    pub fn div_rem(&self, d: &Scalar) -> (Scalar, Scalar) {
        match (self, d) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = a.div_mod_floor(b);
                // prefer the remainder of least absolute value
                if (&r * 2i32).abs() > b.abs() {
                    (Scalar::Int(q + 1), Scalar::Int(r - b))
                } else {
                    (Scalar::Int(q), Scalar::Int(r))
                }
            }
            _ => {
                let inv = d.inverse().expect("division by zero");
                (self * &inv, self.ring().zero())
            }
        }
    }

    /// Exact division, `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.ring(), other.ring(), "mixed-ring arithmetic");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.cmp(b),
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.cmp(b),
            _ => self.ring().cmp(&other.ring()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_residues_stay_in_range() {
        let f5 = Ring::PrimeField(5);
        let a = f5.from_i64(-7);
        assert_eq!(a, Scalar::Mod { value: 3, p: 5 });
        assert_eq!(&a * &a, f5.from_i64(4));
        assert_eq!(&a * &a.inverse().unwrap(), f5.one());
        assert_eq!(-&f5.zero(), f5.zero());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Ring::Rationals;
        let half = q.one().div_rem(&q.from_i64(2)).0;
        let s = &half + &half;
        assert!(s.is_one());
        if let Scalar::Rat(r) = q.from_i64(-6).div_rem(&q.from_i64(4)).0 {
            assert_eq!(*r.numer(), BigInt::from(-3));
            assert_eq!(*r.denom(), BigInt::from(2));
        } else {
            panic!("expected a rational");
        }
    }

    #[test]
    fn integer_division_has_small_remainder() {
        let z = Ring::Integers;
        for (a, b) in [(7, 2), (-7, 2), (7, -3), (5, 5), (0, 4), (9, 4)] {
            let (q, r) = z.from_i64(a).div_rem(&z.from_i64(b));
            assert_eq!(&(&q * &z.from_i64(b)) + &r, z.from_i64(a));
            assert!(r.norm() * 2 <= z.from_i64(b).norm());
        }
    }

    #[test]
    fn ring_selectors() {
        assert_eq!(Ring::parse("z").unwrap(), Ring::Integers);
        assert_eq!(Ring::parse("q").unwrap(), Ring::Rationals);
        assert_eq!(Ring::parse("fp:3").unwrap(), Ring::PrimeField(3));
        assert!(Ring::parse("fp:4").is_err());
        assert!(Ring::parse("r").is_err());
    }
}
