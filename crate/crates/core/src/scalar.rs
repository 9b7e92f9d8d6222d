//! Exact arithmetic in the residue field: arbitrary-precision rationals or a
//! prime field `F_p` with `2 < p < 2^62`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime used when a prime field is requested without a modulus.
pub const DEFAULT_PRIME: u64 = 32003;

const MAX_PRIME: u64 = 1 << 62;

/// Serialized as `"QQ"` or `{"Fp": p}`; deserialization validates `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub enum Field {
    Rational,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
enum FieldRepr {
    #[serde(rename = "QQ")]
    Rational,
    #[serde(rename = "Fp")]
    Prime(u64),
}

impl TryFrom<FieldRepr> for Field {
    type Error = Error;

    fn try_from(r: FieldRepr) -> Result<Field> {
        match r {
            FieldRepr::Rational => Ok(Field::Rational),
            FieldRepr::Prime(p) => Field::prime(p),
        }
    }
}

impl From<Field> for FieldRepr {
    fn from(f: Field) -> FieldRepr {
        match f {
            Field::Rational => FieldRepr::Rational,
            Field::Prime(p) => FieldRepr::Prime(p),
        }
    }
}

impl Field {
    /// Validated prime field. Rejects composites, `p <= 2` and `p >= 2^62`.
    pub fn prime(p: u64) -> Result<Field> {
        if p <= 2 || p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                Scalar::Prime {
                    value: r.to_u64().expect("reduced residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_bigint(num).try_div(&self.from_bigint(den))
    }

    /// Draws a coefficient for randomized constructions. Prime fields sample
    /// uniformly and ignore `bound`; rationals draw an integer in
    /// `[-bound, bound]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Prime {
                value: rng.gen_range(0..p),
                modulus: p,
            },
            Field::Rational => {
                let b = bound.max(1) as i64;
                self.from_i64(rng.gen_range(-b..=b))
            }
        }
    }

    /// Parses a decimal scalar: `"a"`, `"-a"` or `"a/b"`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::Json(format!("malformed scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_ratio(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Element of a [`Field`], always in canonical form: reduced fractions with a
/// positive denominator, or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field operation on two scalars.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Symmetric integer representative for prime fields, used for printing.
    fn signed_repr(&self) -> (bool, String) {
        match self {
            Scalar::Rational(q) => (q.is_negative(), q.abs().to_string()),
            Scalar::Prime { value, modulus } => {
                if *value > modulus / 2 {
                    (true, (modulus - value).to_string())
                } else {
                    (false, value.to_string())
                }
            }
        }
    }

    /// `(is_negative, magnitude)` for term printing.
    pub(crate) fn sign_and_magnitude(&self) -> (bool, String) {
        self.signed_repr()
    }

    /// Canonical decimal string: `"a/b"` for rationals, the residue in
    /// `[0, p)` for prime fields.
    pub fn to_canonical_string(&self) -> String {
        match self {
            Scalar::Rational(q) => q.to_string(),
            Scalar::Prime { value, .. } => value.to_string(),
        }
    }

    /// Rough size used for pivot selection.
    pub(crate) fn height(&self) -> u64 {
        match self {
            Scalar::Rational(q) => q.numer().bits() + q.denom().bits(),
            Scalar::Prime { .. } => 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, mag) = self.signed_repr();
        if neg {
            write!(f, "-{mag}")
        } else {
            write!(f, "{mag}")
        }
    }
}

// Operator impls panic on mixed fields; callers that cannot rule that out use
// the `try_*` methods.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.try_div(rhs).expect("scalar division failed")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_wire_format() {
        assert_eq!(serde_json::to_string(&Field::Rational).unwrap(), "\"QQ\"");
        assert_eq!(serde_json::to_string(&Field::Prime(7)).unwrap(), r#"{"Fp":7}"#);
        let f: Field = serde_json::from_str(r#"{"Fp":32003}"#).unwrap();
        assert_eq!(f, Field::Prime(32003));
        assert!(serde_json::from_str::<Field>(r#"{"Fp":32004}"#).is_err());
        assert!(serde_json::from_str::<Field>(r#""Rational""#).is_err());
    }

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rational.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap(), q(5, 6));
        assert_eq!(q(5, 6).to_canonical_string(), "5/6");
    }

    #[test]
    fn prime_division() {
        let f7 = Field::prime(7).unwrap();
        let r = arith(&f7.one(), &f7.from_i64(3), ArithOp::Div).unwrap();
        assert_eq!(r, f7.from_i64(5));
    }

    #[test]
    fn division_by_zero() {
        let err = arith(&q(1, 1), &q(0, 1), ArithOp::Div).unwrap_err();
        assert!(matches!(err, Error::DivisionByZero));
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(f7.one().try_div(&f7.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(q(1, 2).try_add(&f7.one()), Err(Error::FieldMismatch)));
    }

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(1 << 62).is_err());
        // 2^61 - 1 is a Mersenne prime
        assert!(Field::prime((1 << 61) - 1).is_ok());
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn zero_is_canonical() {
        assert_eq!(q(0, 5), Field::Rational.zero());
        assert_eq!(q(0, 5).to_canonical_string(), "0");
        assert_eq!(q(2, -4), q(-1, 2));
    }

    #[test]
    fn sampling_is_reproducible() {
        let f = Field::prime(101).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| f.sample(&mut rng, 0)).collect::<Vec<_>>()
        };
        let a = draw(1);
        assert_eq!(a, draw(1));
        assert!(a
            .iter()
            .all(|s| matches!(s, Scalar::Prime { value, .. } if *value < 101)));
        assert!(a.windows(2).any(|w| w[0] != w[1]));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            match Field::Rational.sample(&mut rng, 10) {
                Scalar::Rational(r) => {
                    assert!(r.is_integer());
                    assert!(r.abs() <= BigRational::from_integer(10.into()));
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn parse_scalar_strings() {
        assert_eq!(Field::Rational.parse_scalar("-3/6").unwrap(), q(-1, 2));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("1/3").unwrap(), f7.from_i64(5));
        assert!(f7.parse_scalar("1/7").is_err());
        assert!(Field::Rational.parse_scalar("x").is_err());
    }

    fn any_rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    fn any_fp() -> impl Strategy<Value = Scalar> {
        (0i64..32003).prop_map(|v| Field::Prime(32003).from_i64(v))
    }

    fn canonical(s: &Scalar) -> bool {
        match s {
            Scalar::Rational(r) => {
                use num_integer::Integer;
                r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
            }
            Scalar::Prime { value, modulus } => value < modulus,
        }
    }

    fn field_axioms(a: Scalar, b: Scalar, c: Scalar) {
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&(&a - &b) + &b, a);
        if !b.is_zero() {
            assert_eq!(&(&a / &b) * &b, a);
            assert!((&b * &b.inverse().unwrap()).is_one());
        }
        for r in [&a + &b, &a - &b, &a * &b] {
            assert!(canonical(&r));
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in any_rational(), b in any_rational(), c in any_rational()) {
            field_axioms(a, b, c);
        }

        #[test]
        fn prime_field_axioms(a in any_fp(), b in any_fp(), c in any_fp()) {
            field_axioms(a, b, c);
        }
    }
}
