use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The coefficient field of a ring: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// An exact field element.
///
/// Residues are always stored in `[0, p)`. Mixing the two variants is a bug
/// in the caller; every operation goes through a [`Field`] which knows which
/// variant to expect.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Residue(u64),
}

impl Field {
    /// Builds the field of the given characteristic (0 means the rationals).
    pub fn from_characteristic(characteristic: u64) -> Result<Field> {
        match characteristic {
            0 => Ok(Field::Rational),
            p if is_prime(p) => Ok(Field::Prime(p)),
            other => Err(Error::InvalidRing(format!("characteristic {other} is neither 0 nor a prime"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::zero()),
            Field::Prime(_) => Coefficient::Residue(0),
        }
    }

    pub fn one(&self) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::one()),
            Field::Prime(_) => Coefficient::Residue(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Coefficient::Residue((v as i128).rem_euclid(*p as i128) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coefficient::Residue(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// Quotient of two integers as a field element; `None` when the
    /// denominator vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Coefficient> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return None;
        }
        Some(self.div(&self.from_bigint(num), &d))
    }

    pub fn is_zero(&self, a: &Coefficient) -> bool {
        match a {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coefficient) -> bool {
        match a {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Residue(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Rational, Coefficient::Rational(x), Coefficient::Rational(y)) => Coefficient::Rational(x + y),
            (Field::Prime(p), Coefficient::Residue(x), Coefficient::Residue(y)) => {
                Coefficient::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Coefficient) -> Coefficient {
        match (self, a) {
            (Field::Rational, Coefficient::Rational(x)) => Coefficient::Rational(-x),
            (Field::Prime(p), Coefficient::Residue(x)) => Coefficient::Residue(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Rational, Coefficient::Rational(x), Coefficient::Rational(y)) => Coefficient::Rational(x * y),
            (Field::Prime(p), Coefficient::Residue(x), Coefficient::Residue(y)) => {
                Coefficient::Residue(mul_mod(*x, *y, *p))
            }
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coefficient) -> Coefficient {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Field::Rational, Coefficient::Rational(x)) => Coefficient::Rational(x.recip()),
            (Field::Prime(p), Coefficient::Residue(x)) => Coefficient::Residue(pow_mod(*x, p - 2, *p)),
            _ => panic!("coefficient does not belong to {self:?}"),
        }
    }

    pub fn div(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Coefficient, mut e: u64) -> Coefficient {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Coefficient {
    /// True when the printed form carries a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_negative(),
            Coefficient::Residue(_) => false,
        }
    }

    pub(crate) fn abs(&self) -> Coefficient {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(r.abs()),
            Coefficient::Residue(v) => Coefficient::Residue(*v),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coefficient::Residue(v) => write!(f, "{v}"),
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
