//! Exact scalars in ℚ and in quadratic fields ℚ(√d), plus their reductions
//! into the finite fields GF(p) and GF(p²).
//!
//! A [`Scalar`] is `a + b·√d` with big-rational `a`, `b`. A value whose
//! irrational part vanishes is a plain rational and combines freely with any
//! quadratic field; two irrational values must agree on `d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(i64, i64),
    #[error("bad prime {0}")]
    BadPrime(u64),
    #[error("bad field tag {0}: must be square-free and not 0 or 1")]
    BadFieldTag(i64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Ground field of an algebra: ℚ or ℚ(√d) with square-free `d ∉ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Q,
    Sqrt(i64),
}

impl Field {
    pub fn sqrt(d: i64) -> Result<Field, ScalarError> {
        if d == 0 || d == 1 || !square_free(d) {
            return Err(ScalarError::BadFieldTag(d));
        }
        Ok(Field::Sqrt(d))
    }

    /// Whether a scalar can live in this field.
    pub fn admits(&self, x: &Scalar) -> bool {
        match (self, x.d) {
            (_, None) => true,
            (Field::Sqrt(d), Some(e)) => *d == e,
            (Field::Q, Some(_)) => false,
        }
    }
}

fn square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `a + b·√d`; `d` is `None` exactly when `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: Option<i64>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { a: BigRational::zero(), b: BigRational::zero(), d: None }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(a: BigRational) -> Scalar {
        Scalar { a, b: BigRational::zero(), d: None }
    }

    /// `a + b√d`, normalized.
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Scalar, ScalarError> {
        Field::sqrt(d)?;
        Ok(Scalar::raw(a, b, Some(d)))
    }

    /// `√d` itself.
    pub fn sqrt(d: i64) -> Result<Scalar, ScalarError> {
        Scalar::new(BigRational::zero(), BigRational::one(), d)
    }

    fn raw(a: BigRational, b: BigRational, d: Option<i64>) -> Scalar {
        if b.is_zero() {
            Scalar { a, b, d: None }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.a
    }

    pub fn im(&self) -> &BigRational {
        &self.b
    }

    pub fn tag(&self) -> Option<i64> {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as an integer, when it is one.
    pub fn to_i64(&self) -> Option<i64> {
        if self.b.is_zero() && self.a.is_integer() {
            self.a.to_integer().to_i64()
        } else {
            None
        }
    }

    fn joint(&self, o: &Scalar) -> Result<Option<i64>, ScalarError> {
        match (self.d, o.d) {
            (Some(x), Some(y)) if x != y => Err(ScalarError::FieldMismatch(x, y)),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x)),
            (None, None) => Ok(None),
        }
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.joint(o)?;
        Ok(Scalar::raw(&self.a + &o.a, &self.b + &o.b, d))
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.joint(o)?;
        Ok(Scalar::raw(&self.a - &o.a, &self.b - &o.b, d))
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.joint(o)?;
        let dd = BigRational::from_integer(BigInt::from(d.unwrap_or(0)));
        let a = &self.a * &o.a + &self.b * &o.b * dd;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Scalar::raw(a, b, d))
    }

    pub fn try_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // (a + b√d)⁻¹ = (a − b√d) / (a² − d b²); the norm is nonzero since d is not a square.
        let dd = BigRational::from_integer(BigInt::from(self.d.unwrap_or(0)));
        let norm = &self.a * &self.a - &self.b * &self.b * dd;
        Ok(Scalar::raw(&self.a / &norm, -&self.b / &norm, self.d))
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        self.joint(o)?;
        self.try_mul(&o.try_inv()?)
    }

    /// `a + b√d ↦ a − b√d`.
    pub fn conjugate(&self) -> Scalar {
        Scalar::raw(self.a.clone(), -&self.b, self.d)
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero")
    }

    /// Image in GF(p), or in GF(p²) when `d` has no square root mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Gf, ScalarError> {
        if p < 3 || !is_prime(p) {
            return Err(ScalarError::BadPrime(p));
        }
        let a = rat_mod(&self.a, p)?;
        let b = rat_mod(&self.b, p)?;
        let Some(d) = self.d else {
            return Ok(Gf::new(p, a));
        };
        let dm = (d % p as i64 + p as i64) as u64 % p;
        match sqrt_mod(dm, p) {
            Some(s) => Ok(Gf::new(p, (a + b * s % p) % p)),
            None if b == 0 => Ok(Gf::new(p, a)),
            None => Ok(Gf { p, nr: dm, a, b }),
        }
    }
}

fn rat_mod(x: &BigRational, p: u64) -> Result<u64, ScalarError> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(ScalarError::BadPrime(p));
    }
    let num = x.numer().mod_floor(&pb).to_u64().expect("residue fits");
    let den = den.to_u64().expect("residue fits");
    Ok(num * pow_mod(den, p - 2, p) % p)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Smallest square root of `d` modulo `p`, if any.
fn sqrt_mod(d: u64, p: u64) -> Option<u64> {
    (0..p).find(|s| s * s % p == d % p)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a.numer(), self.a.denom())?;
        if let Some(d) = self.d {
            write!(f, "+{}/{}*sqrt({})", self.b.numer(), self.b.denom(), d)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts `n`, `n/d` and `n/d+m/k*sqrt(D)` (also with `-` before `m/k`).
    fn from_str(s: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_suffix(')') {
            let (head, dstr) = body.rsplit_once("*sqrt(").ok_or_else(err)?;
            let d: i64 = dstr.parse().map_err(|_| err())?;
            // split head into a and ±b at the last sign not at position 0 and not after '/'
            let bytes = head.as_bytes();
            let mut cut = None;
            for i in (1..bytes.len()).rev() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'+' {
                    cut = Some(i);
                    break;
                }
            }
            let cut = cut.ok_or_else(err)?;
            let a = parse_rat(&head[..cut]).ok_or_else(err)?;
            let bs = &head[cut..];
            let bs = bs.strip_prefix('+').unwrap_or(bs);
            let b = parse_rat(bs).ok_or_else(err)?;
            Scalar::new(a, b, d)
        } else {
            parse_rat(&t).map(Scalar::rational).ok_or_else(err)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.try_add(o).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.try_sub(o).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.try_mul(o).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::raw(-&self.a, -&self.b, self.d)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

/// Element `a + b·w` of GF(p) (`nr = 0`, `b = 0`) or of GF(p²) with `w² = nr`,
/// `nr` a non-residue mod `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf {
    pub p: u64,
    pub nr: u64,
    pub a: u64,
    pub b: u64,
}

impl Gf {
    pub fn new(p: u64, a: u64) -> Gf {
        Gf { p, nr: 0, a: a % p, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn nr_with(&self, o: &Gf) -> u64 {
        assert_eq!(self.p, o.p, "mixed characteristics");
        match (self.nr, o.nr) {
            (0, n) | (n, 0) => n,
            (x, y) => {
                assert_eq!(x, y, "mixed quadratic extensions");
                x
            }
        }
    }

    fn mk(&self, nr: u64, a: u64, b: u64) -> Gf {
        let p = self.p;
        let b = b % p;
        Gf { p, nr: if b == 0 { 0 } else { nr }, a: a % p, b }
    }

    pub fn add(&self, o: &Gf) -> Gf {
        let nr = self.nr_with(o);
        self.mk(nr, self.a + o.a, self.b + o.b)
    }

    pub fn neg(&self) -> Gf {
        let p = self.p;
        self.mk(self.nr, (p - self.a) % p, (p - self.b) % p)
    }

    pub fn sub(&self, o: &Gf) -> Gf {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Gf) -> Gf {
        let nr = self.nr_with(o);
        let p = self.p;
        let a = (self.a * o.a + self.b * o.b % p * nr) % p;
        let b = (self.a * o.b + self.b * o.a) % p;
        self.mk(nr, a, b)
    }

    pub fn inv(&self) -> Gf {
        assert!(!self.is_zero(), "inverse of zero in GF");
        let p = self.p;
        let norm = (self.a * self.a % p + p - self.b * self.b % p * self.nr % p) % p;
        let ni = pow_mod(norm, p - 2, p);
        self.mk(self.nr, self.a * ni % p, (p - self.b) % p * ni % p)
    }

    /// Whether this element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nr == 0 || self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}
