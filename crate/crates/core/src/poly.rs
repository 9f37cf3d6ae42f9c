//! Dense univariate polynomials over the Gaussian rationals.
//!
//! Coefficients are stored in ascending order of the exponent and the top
//! coefficient is always nonzero; the zero polynomial is the empty vector and
//! reports degree `None`.

use crate::error::Error;
use crate::scalar::{factorial, GaussianRational};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussianRational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Polynomial::monomial(GaussianRational::one(), 1)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// Coefficients in ascending order; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(GaussianRational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `None` is the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// `p(slope * x + intercept)` by Horner's rule in the polynomial ring.
    pub fn compose_affine(&self, slope: &GaussianRational, intercept: &GaussianRational) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_affine(slope, intercept);
            acc = &acc + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// `p(x) * (slope * x + intercept)`.
    fn mul_affine(&self, slope: &GaussianRational, intercept: &GaussianRational) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![GaussianRational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += &(c * slope);
            out[k] += &(c * intercept);
        }
        Polynomial::from_coeffs(out)
    }

    /// `p(x + t)`.
    pub fn shift(&self, t: &GaussianRational) -> Polynomial {
        self.compose_affine(&GaussianRational::one(), t)
    }

    /// `p(q(x))` by Horner's rule in the polynomial ring.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Polynomial::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &GaussianRational::from_int(k as i64))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn nth_derivative(&self, n: usize) -> Polynomial {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// Forward difference `p(x+1) - p(x)`.
    pub fn delta(&self) -> Polynomial {
        &self.shift(&GaussianRational::one()) - self
    }

    /// Exact quotient `self / divisor`; a nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, Error> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        let dd = divisor.degree().expect("nonzero divisor");
        let lead_inv = divisor.leading_coefficient().expect("nonzero divisor").inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![GaussianRational::zero(); self.coeffs.len()];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().expect("nonempty") * &lead_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let sub = dc * &q;
                rem[k + j] = &rem[k + j] - &sub;
            }
            while rem.last().is_some_and(GaussianRational::is_zero) {
                rem.pop();
            }
            quot[k] = q;
        }
        let remainder = Polynomial::from_coeffs(rem);
        if !remainder.is_zero() {
            return Err(Error::NonzeroRemainder(remainder.to_string()));
        }
        Ok(Polynomial::from_coeffs(quot))
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Polynomial::from_coeffs(out)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Polynomial::from_coeffs(out)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.coeffs.iter().enumerate() {
                out[j + k] += &(a * b);
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_poly_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}
forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Rising factorial in the variable: `(x + shift)_n`.
pub fn pochhammer_poly(shift: &GaussianRational, n: u64) -> Polynomial {
    let mut acc = Polynomial::one();
    for k in 0..n {
        let c = shift + &GaussianRational::from_int(k as i64);
        acc = acc.mul_affine(&GaussianRational::one(), &c);
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-j+1)`.
pub fn falling_factorial_poly(j: u64) -> Polynomial {
    let mut acc = Polynomial::one();
    for k in 0..j {
        acc = acc.mul_affine(&GaussianRational::one(), &GaussianRational::from_int(-(k as i64)));
    }
    acc
}

/// Binomial coefficient polynomial `C(x, j) = x(x-1)...(x-j+1)/j!`.
pub fn binom_poly(j: u64) -> Polynomial {
    let inv = GaussianRational::from_rational(factorial(j)).inv().expect("factorial nonzero");
    falling_factorial_poly(j).scale(&inv)
}

fn write_real_coeff(
    f: &mut fmt::Formatter<'_>,
    c: &crate::scalar::Rational,
    first: bool,
    with_var: bool,
) -> fmt::Result {
    use num_traits::{One, Signed};
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, "-")?;
    } else {
        write!(f, "+")?;
    }
    if !with_var || !mag.is_one() {
        write!(f, "{mag}")?;
    }
    Ok(())
}

/// Canonical text form: descending powers, explicit rational coefficients,
/// `x^k` powers, e.g. `4x^2-2`. Non-real coefficients print parenthesized.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if c.is_real() {
                write_real_coeff(f, &c.re, first, k > 0)?;
            } else {
                if !first {
                    write!(f, "+")?;
                }
                write!(f, "({c})")?;
            }
            if k == 1 {
                write!(f, "x")?;
            } else if k > 1 {
                write!(f, "x^{k}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn int(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn degree_and_trim() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::one().degree(), Some(0));
        let q = Polynomial::from_coeffs(vec![int(1), int(0), int(0)]);
        assert_eq!(q.degree(), Some(0));
        assert_eq!(p(&[3, 0, 5]).degree(), Some(2));
    }

    #[test]
    fn ring_ops() {
        let a = p(&[1, 2]); // 2x + 1
        let b = p(&[-1, 1]); // x - 1
        assert_eq!(&a + &b, p(&[0, 3]));
        assert_eq!(&a - &a, Polynomial::zero());
        assert_eq!(&a * &b, p(&[-1, -1, 2])); // 2x^2 - x - 1
        assert_eq!(-&b, p(&[1, -1]));
    }

    #[test]
    fn eval_horner() {
        let q = p(&[0, 1, 1]); // x^2 + x
        assert_eq!(q.eval(&int(2)), int(6));
        // (i)^2 + i = -1 + i
        assert_eq!(q.eval(&GaussianRational::i()), GaussianRational::new(rat(-1, 1), rat(1, 1)));
    }

    #[test]
    fn compose_affine_matches_pointwise() {
        let q = p(&[5, -3, 0, 2]);
        let slope = GaussianRational::new(rat(2, 3), rat(1, 2));
        let intercept = GaussianRational::new(rat(-1, 7), rat(0, 1));
        let composed = q.compose_affine(&slope, &intercept);
        for x in [-2i64, 0, 1, 5] {
            let xv = int(x);
            let inner = &(&slope * &xv) + &intercept;
            assert_eq!(composed.eval(&xv), q.eval(&inner));
        }
        // p(x) = x^2 + x composed with -x: x^2 - x
        let q = p(&[0, 1, 1]);
        let r = q.compose_affine(&int(-1), &GaussianRational::zero());
        assert_eq!(r, p(&[0, -1, 1]));
    }

    #[test]
    fn compose_general() {
        // (x^2 + 1) o (x^2 - x) = x^4 - 2x^3 + x^2 + 1
        let outer = p(&[1, 0, 1]);
        let inner = p(&[0, -1, 1]);
        assert_eq!(outer.compose(&inner), p(&[1, 0, 1, -2, 1]));
        // Composition agrees with pointwise evaluation.
        let outer = p(&[3, -2, 0, 5]);
        let inner = p(&[1, 4, -2]);
        let c = outer.compose(&inner);
        for x in [-3i64, 0, 2, 7] {
            let xv = int(x);
            assert_eq!(c.eval(&xv), outer.eval(&inner.eval(&xv)));
        }
        assert_eq!(outer.compose(&Polynomial::zero()), p(&[3]));
    }

    #[test]
    fn derivative_and_delta() {
        let q = p(&[0, 0, 0, 1]); // x^3
        assert_eq!(q.derivative(), p(&[0, 0, 3]));
        assert_eq!(q.nth_derivative(3), p(&[6]));
        assert_eq!(q.nth_derivative(4), Polynomial::zero());
        // delta(x^2) = 2x + 1
        assert_eq!(p(&[0, 0, 1]).delta(), p(&[1, 2]));
        // degree drops by exactly one on delta
        let q = p(&[4, -1, 3, 9]);
        assert_eq!(q.delta().degree(), Some(2));
    }

    #[test]
    fn exact_division() {
        let num = p(&[-1, 0, 1]); // x^2 - 1
        let den = p(&[-1, 1]); // x - 1
        assert_eq!(num.exact_div(&den).unwrap(), p(&[1, 1]));
        let bad = p(&[1, 0, 1]); // x^2 + 1
        match bad.exact_div(&den) {
            Err(Error::NonzeroRemainder(r)) => assert_eq!(r, "2"),
            other => panic!("expected NonzeroRemainder, got {other:?}"),
        }
        assert_eq!(num.exact_div(&Polynomial::zero()), Err(Error::DivisionByZeroPoly));
        assert_eq!(Polynomial::zero().exact_div(&den).unwrap(), Polynomial::zero());
        // Non-monic divisor with rational leading coefficient.
        let den2 = Polynomial::from_coeffs(vec![int(1), GaussianRational::from_ratio(1, 2)]);
        let prod = &num * &den2;
        assert_eq!(prod.exact_div(&den2).unwrap(), num);
    }

    #[test]
    fn factorial_like_polys() {
        // (x)_3 = x(x+1)(x+2) = x^3 + 3x^2 + 2x
        assert_eq!(pochhammer_poly(&GaussianRational::zero(), 3), p(&[0, 2, 3, 1]));
        // (x + 1/2)_1
        let h = pochhammer_poly(&GaussianRational::from_ratio(1, 2), 1);
        assert_eq!(h.coeff(0), GaussianRational::from_ratio(1, 2));
        // falling factorial x(x-1) and C(x,2) = (x^2-x)/2
        assert_eq!(falling_factorial_poly(2), p(&[0, -1, 1]));
        let b2 = binom_poly(2);
        assert_eq!(b2.coeff(2), GaussianRational::from_ratio(1, 2));
        assert_eq!(b2.coeff(1), GaussianRational::from_ratio(-1, 2));
        assert_eq!(binom_poly(0), Polynomial::one());
        // C(m, j) at integer m agrees with the scalar binomial
        for m in 0..7i64 {
            for j in 0..7u64 {
                assert_eq!(
                    binom_poly(j).eval(&int(m)),
                    GaussianRational::from_rational(crate::scalar::binomial(m as u64, j))
                );
            }
        }
    }

    #[test]
    fn display_canonical() {
        assert_eq!(p(&[-2, 0, 4]).to_string(), "4x^2-2");
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(
            Polynomial::from_coeffs(vec![GaussianRational::from_ratio(1, 2), int(0), int(-1)]).to_string(),
            "-x^2+1/2"
        );
        let complex = Polynomial::from_coeffs(vec![GaussianRational::i(), int(1)]);
        assert_eq!(complex.to_string(), "x+(1*i)");
    }

    #[test]
    fn pow_and_shift() {
        let lin = p(&[1, 1]); // x + 1
        assert_eq!(lin.pow(2), p(&[1, 2, 1]));
        assert_eq!(lin.pow(0), Polynomial::one());
        let q = p(&[0, 0, 1]);
        assert_eq!(q.shift(&int(1)), p(&[1, 2, 1]));
    }
}
