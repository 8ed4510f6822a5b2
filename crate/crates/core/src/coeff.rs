//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`; `p` must be a prime below 2^32 so products fit in 64 bits.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Field of the given characteristic (0 means the rationals).
    pub fn with_characteristic(p: u64) -> Result<Field> {
        if p == 0 {
            Ok(Field::Rational)
        } else {
            Field::prime(p)
        }
    }

    pub fn zero(self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Fp(n.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn from_u64(self, n: u64) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::Fp(n % p, p),
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Coeff> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// Parse an integer or `a/b` literal, with optional leading minus.
    pub fn parse_coeff(self, text: &str) -> Result<Coeff> {
        let q: BigRational = text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("not a rational number: `{text}`")))?;
        self.from_rational(&q)
    }

    /// Reduce a big rational into this field.
    pub fn from_rational(self, q: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rational => Ok(Coeff::Q(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |n: &BigInt| {
                    let r = ((n % &pb) + &pb) % &pb;
                    r.to_u64().expect("residue fits in u64")
                };
                let num = Coeff::Fp(reduce(q.numer()), p);
                let den = Coeff::Fp(reduce(q.denom()), p);
                num.div(&den)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of [`Field`]. Rationals are kept in lowest terms with a positive
/// denominator; residues are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp(u64, u64),
}

impl Coeff {
    pub fn field(&self) -> Field {
        match self {
            Coeff::Q(_) => Field::Rational,
            Coeff::Fp(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp(v, _) => *v == 1,
        }
    }

    /// True for rationals with a negative sign. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Coeff::Q(q) if q.is_negative())
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Fp(a, p), Coeff::Fp(b, q)) if p == q => Coeff::Fp((a + b) % p, *p),
            _ => panic!("coefficient field mismatch: {self:?} + {other:?}"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Fp(a, p), Coeff::Fp(b, q)) if p == q => {
                Coeff::Fp(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => panic!("coefficient field mismatch: {self:?} * {other:?}"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp(a, p) => Coeff::Fp((p - a) % p, *p),
        }
    }

    pub fn inv(&self) -> Result<Coeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Coeff::Q(a) => Coeff::Q(a.recip()),
            Coeff::Fp(a, p) => Coeff::Fp(pow_mod(*a, p - 2, *p), *p),
        })
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff> {
        Ok(self.mul(&other.inv()?))
    }
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Fp(v, _) => write!(f, "{v}"),
        }
    }
}
