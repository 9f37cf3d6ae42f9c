//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian
//! rationals `re + im*i`, plus the factorial/Pochhammer helpers used all over
//! the determinant formulas.

use crate::error::Error;
use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

/// Exact rational number with arbitrary-precision numerator and denominator,
/// always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Build a `Rational` from an integer pair. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Element of the field `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(Rational::from(BigInt::from(n)), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::from_rational(rat(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real part, provided the value is real.
    pub fn as_rational(&self) -> Result<Rational, Error> {
        if self.is_real() {
            Ok(self.re.clone())
        } else {
            Err(Error::InvalidParams(format!("expected a real value, got {self}")))
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, the square of the complex modulus.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `|re| + |im|`: a rational upper bound on the complex modulus.
    pub fn modulus_bound(&self) -> Rational {
        self.re.abs() + self.im.abs()
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow_i64(&self, exp: i64) -> Result<Self, Error> {
        if exp < 0 {
            return self.inv()?.pow_i64(-exp);
        }
        let mut acc = GaussianRational::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_binop!(Add, add);

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_binop!(Mul, mul);

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::from_rational(r)
    }
}

/// Text form: `p/q`, `p/q+r/s*i`, `p/q-r/s*i` or `r/s*i`, with integer parts
/// printed without the `/q`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    Rational::from_str(s).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts the `Display` forms plus bare `i` / `-i` / `+i`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if !s.contains('i') {
            return Ok(GaussianRational::from_rational(parse_rational(&s)?));
        }
        // Split off a trailing imaginary term "<sign><rat>*i" or "<sign>i".
        let body = &s[..s.len() - 1];
        let body = body.strip_suffix('*').unwrap_or(body);
        // Find the split between real and imaginary parts: the last '+'/'-'
        // not in position 0. Rational bodies contain no interior signs.
        let split = body
            .get(1..)
            .and_then(|tail| tail.rfind(['+', '-']))
            .map(|idx| idx + 1);
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im = match im_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => {
                let other = other.strip_prefix('+').unwrap_or(other);
                parse_rational(other)?
            }
        };
        let re = parse_rational(re_str)?;
        Ok(GaussianRational::new(re, im))
    }
}

static FACTORIALS: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();

/// `n!` as a rational, memoized for the life of the process.
pub fn factorial(n: u64) -> Rational {
    let cache = FACTORIALS.get_or_init(|| Mutex::new(vec![BigInt::one()]));
    let mut table = cache.lock().expect("factorial cache poisoned");
    while (table.len() as u64) <= n {
        let next = table.last().expect("nonempty") * BigInt::from(table.len());
        table.push(next);
    }
    Rational::from(table[n as usize].clone())
}

/// Binomial coefficient `C(n, k)` for integer `n >= 0`.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `n!` as a Gaussian rational scalar.
pub fn factorial_g(n: u64) -> GaussianRational {
    GaussianRational::from_rational(factorial(n))
}

/// `1/n!` as a Gaussian rational scalar.
pub fn inv_factorial(n: u64) -> GaussianRational {
    GaussianRational::from_rational(factorial(n).recip())
}

type PochKey = (GaussianRational, u64);
static POCHHAMMERS: OnceLock<DashMap<PochKey, GaussianRational>> = OnceLock::new();

/// Rising factorial `(base)_n = base (base+1) ... (base+n-1)`, memoized per
/// `(base, n)`; the fill is idempotent so concurrent first writers are fine.
pub fn pochhammer(base: &GaussianRational, n: u64) -> GaussianRational {
    if n == 0 {
        return GaussianRational::one();
    }
    let cache = POCHHAMMERS.get_or_init(DashMap::new);
    let key = (base.clone(), n);
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let mut acc = GaussianRational::one();
    let mut term = base.clone();
    for _ in 0..n {
        acc = &acc * &term;
        term = &term + &GaussianRational::one();
    }
    cache.insert(key, acc.clone());
    acc
}

/// Rising factorial extended to negative lengths via
/// `(base)_{-n} = 1 / (base - n)_n`; the negative case requires that no
/// factor of the inverted product vanishes.
pub fn pochhammer_i64(base: &GaussianRational, n: i64) -> Result<GaussianRational, Error> {
    if n >= 0 {
        return Ok(pochhammer(base, n as u64));
    }
    let m = (-n) as u64;
    let shifted = base - &GaussianRational::from_int(m as i64);
    let prod = pochhammer(&shifted, m);
    if prod.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    prod.inv()
}

/// `i^m` for any integer `m` (also negative).
pub fn i_power(m: i64) -> GaussianRational {
    match m.rem_euclid(4) {
        0 => GaussianRational::one(),
        1 => GaussianRational::i(),
        2 => -GaussianRational::one(),
        _ => -GaussianRational::i(),
    }
}

/// `(-1)^m` for any integer `m`.
pub fn sign_pow(m: i64) -> GaussianRational {
    if m.rem_euclid(2) == 0 {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    }
}

/// Exact `u64` value of a rational that is known to be a nonnegative integer.
pub fn rational_to_u64(r: &Rational) -> Result<u64, Error> {
    if !r.is_integer() || r.is_negative() {
        return Err(Error::InvalidParams(format!("expected a nonnegative integer, got {r}")));
    }
    r.to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidParams(format!("integer out of range: {r}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn field_arithmetic() {
        let a = g((1, 2), (3, 1));
        let b = g((-2, 3), (1, 5));
        let prod = &a * &b;
        // (1/2 + 3i)(-2/3 + i/5) = (1/2 * -2/3 - 3/5) + (1/10 - 2)i
        assert_eq!(prod, g((-14, 15), (-19, 10)));
        let back = prod.div(&b).unwrap();
        assert_eq!(back, a);
        assert_eq!(&a - &a, GaussianRational::zero());
        assert_eq!(a.clone().inv().unwrap() * a.clone(), GaussianRational::one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(GaussianRational::zero().inv(), Err(Error::ZeroDenominator));
    }

    #[test]
    fn powers() {
        let i = GaussianRational::i();
        assert_eq!(i.pow_i64(2).unwrap(), GaussianRational::from_int(-1));
        assert_eq!(i.pow_i64(-1).unwrap(), -GaussianRational::i());
        assert_eq!(i_power(7), -GaussianRational::i());
        assert_eq!(i_power(-1), -GaussianRational::i());
        assert_eq!(i_power(0), GaussianRational::one());
        assert_eq!(sign_pow(-3), GaussianRational::from_int(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(GaussianRational::i().to_string(), "1*i");
        assert_eq!(g((1, 2), (-2, 5)).to_string(), "1/2-2/5*i");
        assert_eq!(g((7, 1), (1, 1)).to_string(), "7+1*i");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "5", "-5", "2/3", "-2/3", "1*i", "-1*i", "1/2-2/5*i", "7+1*i", "-1/3+4*i"] {
            let v: GaussianRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s, "round trip failed for {s}");
        }
        let bare: GaussianRational = "i".parse().unwrap();
        assert_eq!(bare, GaussianRational::i());
        let neg: GaussianRational = "-i".parse().unwrap();
        assert_eq!(neg, -GaussianRational::i());
        let spaced: GaussianRational = " 3 + 2*i ".parse().unwrap();
        assert_eq!(spaced, g((3, 1), (2, 1)));
        assert!("".parse::<GaussianRational>().is_err());
        assert!("x+i".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), rat(1, 1));
        assert_eq!(factorial(5), rat(120, 1));
        assert_eq!(factorial(10), rat(3_628_800, 1));
        assert_eq!(binomial(6, 2), rat(15, 1));
        assert_eq!(binomial(4, 7), rat(0, 1));
    }

    #[test]
    fn pochhammer_values() {
        let three = GaussianRational::from_int(3);
        assert_eq!(pochhammer(&three, 2), GaussianRational::from_int(12));
        let neg2 = GaussianRational::from_int(-2);
        assert_eq!(pochhammer(&neg2, 4), GaussianRational::zero());
        assert_eq!(pochhammer(&neg2, 2), GaussianRational::from_int(2));
        let half = GaussianRational::from_ratio(1, 2);
        assert_eq!(pochhammer(&half, 3), GaussianRational::from_ratio(15, 8));
    }

    #[test]
    fn pochhammer_negative_length() {
        // (a)_{-1} = 1/(a-1)
        let a = GaussianRational::from_ratio(8, 3);
        let v = pochhammer_i64(&a, -1).unwrap();
        assert_eq!(v, GaussianRational::from_ratio(3, 5));
        // (a)_{-2} = 1/((a-2)(a-1))
        let v2 = pochhammer_i64(&a, -2).unwrap();
        assert_eq!(v2, GaussianRational::from_ratio(9, 10));
        // Vanishing factor in the inverted product is an error.
        let one = GaussianRational::one();
        assert!(pochhammer_i64(&one, -1).is_err());
        // Consistency with the defining identity (a)_{m+n} = (a)_m (a+m)_n
        // at m = 2, n = -1.
        let lhs = pochhammer_i64(&a, 1).unwrap();
        let m2 = pochhammer(&a, 2);
        let shifted = &a + &GaussianRational::from_int(2);
        let rhs = m2 * pochhammer_i64(&shifted, -1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn modulus_bound_dominates() {
        let v = g((-3, 2), (4, 3));
        // modulus^2 <= bound^2
        let b = v.modulus_bound();
        assert!(v.norm_sqr() <= &b * &b);
    }
}
