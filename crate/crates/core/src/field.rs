//! Exact scalars: the rationals and prime fields `GF(p)` with `p < 2^31`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field, identified by its characteristic (0 means ℚ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub characteristic: u32,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u32) -> Result<Self> {
        if characteristic == 0 || (characteristic < (1 << 31) && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidField(characteristic))
        }
    }

    pub fn prime(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidField(0));
        }
        Self::new(p)
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Elements know which field they belong to only through the
/// `FieldSpec` they were created from; arithmetic between different prime
/// fields panics, which is the usage error for mixed-field input.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Whether elements of this type can live in `spec`.
    fn supports(spec: FieldSpec) -> bool;
    fn from_i64(spec: FieldSpec, n: i64) -> Self;
    fn from_ratio(spec: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self>;
    fn spec(&self) -> FieldSpec;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;

    /// Canonical string form: `p/q` (or `p`) over ℚ, least residue over GF(p).
    fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    /// Numerator and denominator for elements of ℚ; `None` over GF(p).
    fn rational_parts(&self) -> Option<(BigInt, BigInt)> {
        None
    }

    fn zero(spec: FieldSpec) -> Self {
        Self::from_i64(spec, 0)
    }

    fn one(spec: FieldSpec) -> Self {
        Self::from_i64(spec, 1)
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.sub(&a.mul(b));
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// A rational number with an `i64` fast path. Values that fit in `i64/i64` are
/// always stored small, so the representation is canonical and `Eq`/`Hash`
/// can be derived.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut num: i128, mut den: i128) -> Rat {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        // BigRational::new reduces; make sure the small form is used when possible.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rat::Small(n, d);
            }
        }
        Rat::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(b) => b.denom().clone(),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Field for Rat {
    fn supports(spec: FieldSpec) -> bool {
        spec.characteristic == 0
    }

    fn from_i64(spec: FieldSpec, n: i64) -> Self {
        assert!(spec.characteristic == 0, "rational scalar requested for {spec}");
        Rat::from_i128(n as i128, 1)
    }

    fn from_ratio(spec: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self> {
        if spec.characteristic != 0 {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rat::from_big(BigRational::new(num.clone(), den.clone())))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn rational_parts(&self) -> Option<(BigInt, BigInt)> {
        Some((self.numer(), self.denom()))
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rat::from_i128(*a as i128 + *c as i128, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(s) => Rat::from_i128(s, z),
                        None => Rat::from_big(self.to_big() + other.to_big()),
                    },
                    _ => Rat::from_big(self.to_big() + other.to_big()),
                }
            }
            _ => Rat::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Rat::Small(a, b) => Rat::from_i128(-(*a as i128), *b as i128),
            Rat::Big(x) => Rat::from_big(-(**x).clone()),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rat::Small(a, b) => Rat::from_i128(*b as i128, *a as i128),
            Rat::Big(x) => Rat::from_big(x.recip()),
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// An element of `GF(p)`, stored as its least non-negative residue together
/// with the modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Fp {
        Fp { value: value.rem_euclid(modulus as i64) as u32, modulus }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn check(&self, other: &Fp) {
        assert_eq!(self.modulus, other.modulus, "mixed prime fields");
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { value: acc as u32, modulus: self.modulus }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    fn supports(spec: FieldSpec) -> bool {
        spec.characteristic != 0
    }

    fn from_i64(spec: FieldSpec, n: i64) -> Self {
        assert!(spec.characteristic != 0, "prime-field scalar requested for Q");
        Fp::new(n, spec.characteristic)
    }

    fn from_ratio(spec: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self> {
        if spec.characteristic == 0 {
            return Err(Error::FieldMismatch);
        }
        let p = BigInt::from(spec.characteristic);
        let reduce = |x: &BigInt| -> i64 {
            let r = x.mod_floor(&p);
            r.to_i64().expect("residue fits")
        };
        let d = Fp::new(reduce(den), spec.characteristic);
        if d.is_zero() {
            return Err(Error::Parse(format!(
                "denominator {den} vanishes in {spec}"
            )));
        }
        Ok(Fp::new(reduce(num), spec.characteristic).div(&d))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.modulus }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, other: &Self) -> Self {
        self.check(other);
        let s = self.value as u64 + other.value as u64;
        let p = self.modulus as u64;
        Fp { value: (if s >= p { s - p } else { s }) as u32, modulus: self.modulus }
    }

    fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.modulus as u64;
        let s = self.value as u64 + p - other.value as u64;
        Fp { value: (if s >= p { s - p } else { s }) as u32, modulus: self.modulus }
    }

    fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let s = self.value as u64 * other.value as u64 % self.modulus as u64;
        Fp { value: s as u32, modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }

    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.modulus as u64 - 2)
    }
}

/// Parse `"p/q"`, `"p"` or an integer literal into a field element.
pub fn parse_scalar<F: Field>(spec: FieldSpec, text: &str) -> Result<F> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad coefficient {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad coefficient {text:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
    F::from_ratio(spec, &num, &den)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_canonical() {
        let q = FieldSpec::RATIONALS;
        let half = Rat::new(1, 2);
        let third = Rat::new(-2, -6);
        assert_eq!(half.add(&third), Rat::new(5, 6));
        assert_eq!(half.mul(&Rat::from_i64(q, 2)), Rat::one(q));
        assert_eq!(Rat::new(4, -8), Rat::new(-1, 2));
        assert_eq!(Rat::new(3, 7).inv(), Rat::new(7, 3));
        assert_eq!(Rat::new(3, 7).to_string(), "3/7");
        assert_eq!(Rat::new(6, 3).to_string(), "2");
    }

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let big = Rat::new(i64::MAX, 1);
        let sum = big.add(&big);
        assert!(matches!(sum, Rat::Big(_)));
        let back = sum.sub(&big);
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(_, _)));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let two = Fp::from_i64(f, 2);
        assert_eq!(two.inv(), Fp::from_i64(f, 3));
        assert_eq!(two.neg(), Fp::from_i64(f, 3));
        assert_eq!(Fp::from_i64(f, -1).value(), 4);
        let r: Fp = parse_scalar(f, "1/2").unwrap();
        assert_eq!(r, Fp::from_i64(f, 3));
    }

    #[test]
    fn field_spec_rejects_composites() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(32003).is_ok());
        assert!(FieldSpec::new(2).is_ok());
    }

    #[test]
    fn parse_rational_coefficients() {
        let q = FieldSpec::RATIONALS;
        let r: Rat = parse_scalar(q, "-3/6").unwrap();
        assert_eq!(r, Rat::new(-1, 2));
        assert!(parse_scalar::<Rat>(q, "1/0").is_err());
        assert!(parse_scalar::<Rat>(q, "x").is_err());
        let f = FieldSpec::prime(3).unwrap();
        assert!(parse_scalar::<Fp>(f, "1/3").is_err());
    }
}
