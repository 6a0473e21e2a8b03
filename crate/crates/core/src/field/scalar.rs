use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

/// A prime modulus. Construction checks primality, so a `PrimeModulus` in hand
/// always names a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        let small = u32::try_from(p).map_err(|_| FieldError::ModulusTooLarge(p))?;
        if !is_prime(small) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeModulus(small))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn is_prime(n: u32) -> bool {
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

/// The ground field: the rationals or GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(PrimeModulus),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        PrimeModulus::new(p).map(FieldSpec::Prime)
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p.get(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::Prime(p) => write!(f, "GF({})", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `rationals` (also `Q`, `QQ`) and `GF(p)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "rationals" | "Q" | "QQ" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = inner.trim().parse().map_err(|_| FieldError::UnknownField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: PrimeModulus },
}

fn residue(v: i128, p: PrimeModulus) -> Scalar {
    let m = p.get() as i128;
    Scalar::Residue { value: v.rem_euclid(m) as u32, modulus: p }
}

fn bigint_mod(v: &BigInt, p: PrimeModulus) -> u32 {
    let m = BigInt::from(p.get());
    v.mod_floor(&m).to_u32().expect("residue fits in u32")
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Scalar::from_i64(0, field)
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_i64(1, field)
    }

    pub fn from_i64(n: i64, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => residue(n as i128, p),
        }
    }

    /// Builds `num/den` in the given field.
    pub fn from_fraction(num: BigInt, den: BigInt, field: FieldSpec) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        match field {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            FieldSpec::Prime(p) => {
                let n = Scalar::Residue { value: bigint_mod(&num, p), modulus: p };
                let d = bigint_mod(&den, p);
                if d == 0 {
                    return Err(FieldError::NotInvertible { value: den.to_string(), modulus: p.get() });
                }
                n.checked_div(&Scalar::Residue { value: d, modulus: p })
            }
        }
    }

    /// Parses `[+-]digits[/digits]`. Prime-field scalars reduce mod p.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self, FieldError> {
        let malformed = || FieldError::Malformed(text.to_string());
        let t = text.trim();
        let (num_txt, den_txt) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (t, None),
        };
        let num = parse_signed(num_txt).ok_or_else(malformed)?;
        let den = match den_txt {
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(malformed());
                }
                d.parse::<BigInt>().map_err(|_| malformed())?
            }
            None => BigInt::one(),
        };
        Scalar::from_fraction(num, den, field)
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                residue(*a as i128 + *b as i128, *modulus)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                residue(*a as i128 * *b as i128, *modulus)
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                let m = modulus.get() as u64;
                Scalar::Residue { value: pow_mod(*value as u64, m - 2, m) as u32, modulus: *modulus }
            }
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => residue(-(*value as i128), *modulus),
        }
    }

    /// Integer value when the scalar is a rational integer (used by reports).
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(BigInt::from(*value)),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

fn parse_signed(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -v } else { v })
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on a field mismatch; callers that cannot guarantee a
// common field use the `checked_*` methods.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        Scalar::parse(s, FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(q("-1"), Scalar::from_i64(-1, FieldSpec::Rationals));
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("+6/4").to_string(), "3/2");
        assert_eq!(q("-6/4").to_string(), "-3/2");
        let gf5 = FieldSpec::prime(5).unwrap();
        assert_eq!(Scalar::parse("7", gf5).unwrap().to_string(), "2");
        assert_eq!(Scalar::parse("-1", gf5).unwrap().to_string(), "4");
        assert_eq!(Scalar::parse("1/2", gf5).unwrap().to_string(), "3");
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(matches!(Scalar::parse("1/0", FieldSpec::Rationals), Err(FieldError::ZeroDenominator)));
        assert!(matches!(Scalar::parse("abc", FieldSpec::Rationals), Err(FieldError::Malformed(_))));
        assert!(matches!(Scalar::parse("", FieldSpec::Rationals), Err(FieldError::Malformed(_))));
        assert!(matches!(Scalar::parse("1/-2", FieldSpec::Rationals), Err(FieldError::Malformed(_))));
        assert!(matches!(Scalar::parse("1.5", FieldSpec::Rationals), Err(FieldError::Malformed(_))));
        let gf3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(Scalar::parse("1/6", gf3), Err(FieldError::NotInvertible { .. })));
    }

    #[test]
    fn arithmetic_examples() {
        let m1 = q("-1");
        assert_eq!(&m1 * &m1, q("1"));
        assert_eq!(q("3/2").inv().unwrap(), q("2/3"));
        let gf2 = FieldSpec::prime(2).unwrap();
        let one = Scalar::one(gf2);
        let two = Scalar::from_i64(2, gf2);
        assert!(matches!(one.checked_div(&two), Err(FieldError::DivisionByZero)));
        assert!(matches!(one.checked_add(&q("1")), Err(FieldError::FieldMismatch(_, _))));
        assert_eq!(-Scalar::one(gf2), Scalar::one(gf2));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("rationals".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap().to_string(), "GF(7)");
        assert!(matches!("GF(9)".parse::<FieldSpec>(), Err(FieldError::NotPrime(9))));
        assert!("GF(1)".parse::<FieldSpec>().is_err());
        assert!("reals".parse::<FieldSpec>().is_err());
    }
}
