//! The seven classical orthogonal polynomial families, built exactly.
//!
//! Discrete families: Charlier c_n^a, Meixner m_n^{a,c}, Hahn h_n^{α,β,N},
//! and dual Hahn R_n^{α,β,N} (a polynomial in the variable λ = x(x+α+β+1)).
//! Continuous families: Hermite H_n, Laguerre L_n^α, Jacobi P_n^{α,β}.
//!
//! Every constructor expands a terminating sum over Gaussian rationals, so
//! non-integer (and even complex) parameters are supported wherever the sum
//! makes sense. Normalizations, by leading coefficient:
//!
//!   c_n^a      1/n!                m_n^{a,c}  1/n!
//!   h_n^{α,β,N}  (n+α+β+1)_n/n!    R_n^{α,β,N}  1/n!   (in λ)
//!   H_n        2^n                 L_n^α      (-1)^n/n!
//!   P_n^{α,β}  (n+α+β+1)_n/(2^n n!)

use crate::error::Error;
use crate::poly::{binom_poly, Polynomial};
use crate::report::{mismatch, record, Mismatch, VerificationReport};
use crate::scalar::{factorial_g, inv_factorial, pochhammer, sign_pow, GaussianRational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Charlier,
    Meixner,
    Hahn,
    DualHahn,
    Hermite,
    Laguerre,
    Jacobi,
}

impl FamilyId {
    pub const ALL: [FamilyId; 7] = [
        FamilyId::Charlier,
        FamilyId::Meixner,
        FamilyId::Hahn,
        FamilyId::DualHahn,
        FamilyId::Hermite,
        FamilyId::Laguerre,
        FamilyId::Jacobi,
    ];
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FamilyId::Charlier => "charlier",
            FamilyId::Meixner => "meixner",
            FamilyId::Hahn => "hahn",
            FamilyId::DualHahn => "dual-hahn",
            FamilyId::Hermite => "hermite",
            FamilyId::Laguerre => "laguerre",
            FamilyId::Jacobi => "jacobi",
        };
        write!(f, "{name}")
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "charlier" => Ok(FamilyId::Charlier),
            "meixner" => Ok(FamilyId::Meixner),
            "hahn" => Ok(FamilyId::Hahn),
            "dual-hahn" | "dualhahn" | "dual_hahn" => Ok(FamilyId::DualHahn),
            "hermite" => Ok(FamilyId::Hermite),
            "laguerre" => Ok(FamilyId::Laguerre),
            "jacobi" => Ok(FamilyId::Jacobi),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// Named family parameters. Required names: Charlier `a`; Meixner `a`, `c`;
/// Hahn and dual Hahn `alpha`, `beta`, `N`; Laguerre `alpha`; Jacobi `alpha`,
/// `beta`; Hermite none.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSet {
    values: BTreeMap<String, GaussianRational>,
}

impl ParamSet {
    pub fn new() -> Self {
        ParamSet::default()
    }

    pub fn with(mut self, name: &str, value: GaussianRational) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Result<&GaussianRational, Error> {
        self.values
            .get(name)
            .ok_or_else(|| Error::InvalidParams(format!("missing parameter `{name}`")))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, value) in &self.values {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{name}={value}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for ParamSet {
    type Err = Error;

    /// Parses `"a=2, c=5/3"`; an empty string gives the empty set.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut set = ParamSet::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (name, value) = piece
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `name=value`, got `{piece}`")))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(Error::Parse(format!("empty parameter name in `{piece}`")));
            }
            set.values.insert(name.to_string(), value.trim().parse()?);
        }
        Ok(set)
    }
}

fn is_negative_integer(v: &GaussianRational) -> bool {
    v.is_real() && v.re.is_integer() && v.re.is_negative()
}

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// Charlier polynomial c_n^a = sum_j (-a)^{n-j}/(n-j)! * binom(x, j) for a != 0.
pub fn charlier(n: u64, a: &GaussianRational) -> Result<Polynomial, Error> {
    if a.is_zero() {
        return Err(Error::InvalidParams("Charlier parameter a must be nonzero".into()));
    }
    let neg_a = -a;
    let mut acc = Polynomial::zero();
    for j in 0..=n {
        let coeff = &pochpow(&neg_a, n - j) * &inv_factorial(n - j);
        acc = &acc + &binom_poly(j).scale(&coeff);
    }
    Ok(acc)
}

/// `base^e` for a nonnegative exponent (plain repeated squaring wrapper).
fn pochpow(base: &GaussianRational, e: u64) -> GaussianRational {
    base.pow_i64(e as i64).expect("nonnegative exponent")
}

/// Hermite polynomial H_n = n! sum_j (-1)^j (2x)^{n-2j}/(j! (n-2j)!).
pub fn hermite(n: u64) -> Polynomial {
    let nf = crate::scalar::factorial(n);
    let mut coeffs = vec![GaussianRational::zero(); n as usize + 1];
    for j in 0..=n / 2 {
        let d = n - 2 * j;
        let mut c = nf.clone() * Rational::from(BigInt::one() << (d as usize))
            / (crate::scalar::factorial(j) * crate::scalar::factorial(d));
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[d as usize] = GaussianRational::from_rational(c);
    }
    Polynomial::from_coeffs(coeffs)
}

/// Meixner polynomial
/// m_n^{a,c} = (a/(1-a))^n sum_j a^{-j} binom(x, j) binom(-x-c, n-j)
/// for a outside {0, 1}.
pub fn meixner(n: u64, a: &GaussianRational, c: &GaussianRational) -> Result<Polynomial, Error> {
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidParams("Meixner parameter a must avoid 0 and 1".into()));
    }
    let one = GaussianRational::one();
    let front = a.div(&(&one - a))?.pow_i64(n as i64)?;
    let a_inv = a.inv()?;
    let mut acc = Polynomial::zero();
    for j in 0..=n {
        let scalar = pochpow(&a_inv, j);
        let reflected = binom_poly(n - j).compose_affine(&-&one, &-c);
        acc = &acc + &(&binom_poly(j) * &reflected).scale(&scalar);
    }
    Ok(acc.scale(&front))
}

/// Hahn polynomial, the terminating hypergeometric sum redistributed so no
/// parameter-dependent product is divided by:
/// h_n^{α,β,N} = (1/n!) sum_j (-n)_j (n+α+β+1)_j (-N+j)_{n-j} (α+1+j)_{n-j} (-1)^j binom(x, j).
/// Requires α+β not in {-1, -2, ...} so the degree is exactly n for every n.
pub fn hahn(
    n: u64,
    alpha: &GaussianRational,
    beta: &GaussianRational,
    big_n: &GaussianRational,
) -> Result<Polynomial, Error> {
    if is_negative_integer(&(alpha + beta)) {
        return Err(Error::InvalidParams(
            "Hahn requires alpha+beta not to be a negative integer".into(),
        ));
    }
    let ab1n = &(alpha + beta) + &int(n as i64 + 1);
    let neg_big_n = -big_n;
    let mut acc = Polynomial::zero();
    for j in 0..=n {
        let mut s = pochhammer(&int(-(n as i64)), j);
        s = &s * &pochhammer(&ab1n, j);
        s = &s * &pochhammer(&(&neg_big_n + &int(j as i64)), n - j);
        s = &s * &pochhammer(&(alpha + &int(j as i64 + 1)), n - j);
        s = &s * &sign_pow(j as i64);
        acc = &acc + &binom_poly(j).scale(&s);
    }
    Ok(acc.scale(&inv_factorial(n)))
}

/// Dual Hahn polynomial in the variable x standing for λ = x(x+α+β+1):
/// R_n^{α,β,N} = (1/n!) sum_j (-n)_j (-N+j)_{n-j} (α+1+j)_{n-j} (-1)^j/j!
///                 * prod_{i<j} (x - i(α+β+1+i)).
/// Requires α not in {-1, -2, ...}.
pub fn dual_hahn(
    n: u64,
    alpha: &GaussianRational,
    beta: &GaussianRational,
    big_n: &GaussianRational,
) -> Result<Polynomial, Error> {
    if is_negative_integer(alpha) {
        return Err(Error::InvalidParams(
            "dual Hahn requires alpha not to be a negative integer".into(),
        ));
    }
    let ab1 = &(alpha + beta) + &GaussianRational::one();
    let neg_big_n = -big_n;
    let mut acc = Polynomial::zero();
    let mut lam_prod = Polynomial::one();
    for j in 0..=n {
        let mut s = pochhammer(&int(-(n as i64)), j);
        s = &s * &pochhammer(&(&neg_big_n + &int(j as i64)), n - j);
        s = &s * &pochhammer(&(alpha + &int(j as i64 + 1)), n - j);
        s = &s * &sign_pow(j as i64);
        s = &s * &inv_factorial(j);
        acc = &acc + &lam_prod.scale(&s);
        let node = &int(j as i64) * &(&ab1 + &int(j as i64));
        lam_prod = &lam_prod * &(&Polynomial::x() - &Polynomial::constant(node));
    }
    Ok(acc.scale(&inv_factorial(n)))
}

/// Laguerre polynomial L_n^α = sum_j (-1)^j (α+j+1)_{n-j}/((n-j)! j!) x^j.
pub fn laguerre(n: u64, alpha: &GaussianRational) -> Polynomial {
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for j in 0..=n {
        let mut s = pochhammer(&(alpha + &int(j as i64 + 1)), n - j);
        s = &s * &inv_factorial(n - j);
        s = &s * &inv_factorial(j);
        s = &s * &sign_pow(j as i64);
        coeffs.push(s);
    }
    Polynomial::from_coeffs(coeffs)
}

/// Jacobi polynomial
/// P_n^{α,β} = sum_s (n+α+β+1)_s (α+s+1)_{n-s}/(s! (n-s)!) ((x-1)/2)^s.
pub fn jacobi(n: u64, alpha: &GaussianRational, beta: &GaussianRational) -> Polynomial {
    let ab1n = &(alpha + beta) + &int(n as i64 + 1);
    let half = GaussianRational::from_ratio(1, 2);
    let xm1_half = Polynomial::from_coeffs(vec![-&half, half]);
    let mut acc = Polynomial::zero();
    let mut base = Polynomial::one();
    for s in 0..=n {
        let mut coeff = pochhammer(&ab1n, s);
        coeff = &coeff * &pochhammer(&(alpha + &int(s as i64 + 1)), n - s);
        coeff = &coeff * &inv_factorial(s);
        coeff = &coeff * &inv_factorial(n - s);
        acc = &acc + &base.scale(&coeff);
        base = &base * &xm1_half;
    }
    acc
}

/// The quadratic substitution λ^{α,β}(x) = x(x+α+β+1).
pub fn lambda_map(alpha: &GaussianRational, beta: &GaussianRational) -> Polynomial {
    let lin = &(alpha + beta) + &GaussianRational::one();
    Polynomial::from_coeffs(vec![GaussianRational::zero(), lin, GaussianRational::one()])
}

/// Builds the degree-n member of the family after validating its parameters.
pub fn family_poly(id: FamilyId, n: u64, params: &ParamSet) -> Result<Polynomial, Error> {
    match id {
        FamilyId::Charlier => charlier(n, params.get("a")?),
        FamilyId::Meixner => meixner(n, params.get("a")?, params.get("c")?),
        FamilyId::Hahn => hahn(n, params.get("alpha")?, params.get("beta")?, params.get("N")?),
        FamilyId::DualHahn => {
            dual_hahn(n, params.get("alpha")?, params.get("beta")?, params.get("N")?)
        }
        FamilyId::Hermite => Ok(hermite(n)),
        FamilyId::Laguerre => Ok(laguerre(n, params.get("alpha")?)),
        FamilyId::Jacobi => Ok(jacobi(n, params.get("alpha")?, params.get("beta")?)),
    }
}

/// Checks every structural identity the family satisfies, as exact polynomial
/// identities or exact scalar dualities over `0 <= n, m <= n_max`.
pub fn family_identity_check(
    id: FamilyId,
    params: &ParamSet,
    n_max: u64,
) -> Result<VerificationReport, Error> {
    let inputs = if params.is_empty() {
        format!("n_max={n_max}")
    } else {
        format!("{params}; n_max={n_max}")
    };
    let mut report = VerificationReport::new(format!("structural-identities:{id}"), inputs);
    match id {
        FamilyId::Charlier => charlier_identities(params, n_max, &mut report)?,
        FamilyId::Hermite => hermite_identities(n_max, &mut report),
        FamilyId::Meixner => meixner_identities(params, n_max, &mut report)?,
        FamilyId::Hahn => {
            let out = hahn_dual_duality(params, n_max)?;
            record(&mut report, "index duality with the dual family", &both(n_max), out);
        }
        FamilyId::DualHahn => {
            let out = hahn_dual_duality(params, n_max)?;
            record(&mut report, "index duality with the Hahn family", &both(n_max), out);
            let out = dual_hahn_hypergeometric(params, n_max)?;
            record(
                &mut report,
                "terminating sum under the lambda substitution",
                &single(n_max),
                out,
            );
        }
        FamilyId::Laguerre | FamilyId::Jacobi => {
            params.get("alpha")?;
            if id == FamilyId::Jacobi {
                params.get("beta")?;
            }
            report.note(
                "no structural identities are stated for this family; \
                 its normalization is pinned by the limit transitions",
            );
        }
    }
    Ok(report)
}

fn single(n_max: u64) -> String {
    format!("0 <= n <= {n_max}")
}

fn both(n_max: u64) -> String {
    format!("0 <= n, m <= {n_max}")
}

fn charlier_identities(
    params: &ParamSet,
    n_max: u64,
    report: &mut VerificationReport,
) -> Result<(), Error> {
    let a = params.get("a")?.clone();
    let polys: Vec<Polynomial> =
        (0..=n_max + 1).map(|n| charlier(n, &a)).collect::<Result<_, _>>()?;
    let x = Polynomial::x();
    let neg_a = -&a;

    // x c_n = (n+1) c_{n+1} + (n+a) c_n + a c_{n-1}
    let out = (0..=n_max).try_for_each(|n| {
        let k = n as usize;
        let lhs = &x * &polys[k];
        let mut rhs = polys[k + 1].scale(&int(n as i64 + 1));
        rhs = &rhs + &polys[k].scale(&(&a + &int(n as i64)));
        if n > 0 {
            rhs = &rhs + &polys[k - 1].scale(&a);
        }
        if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}")) }
    });
    record(report, "three-term recurrence", &single(n_max), out);

    // -x c_n(x-1) + (x+a) c_n(x) - a c_n(x+1) = n c_n(x)
    let out = (0..=n_max).try_for_each(|n| {
        let k = n as usize;
        let down = polys[k].shift(&int(-1));
        let up = polys[k].shift(&int(1));
        let x_plus_a = &x + &Polynomial::constant(a.clone());
        let lhs = &(&(&x_plus_a * &polys[k]) - &(&x * &down)) - &up.scale(&a);
        let rhs = polys[k].scale(&int(n as i64));
        if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}")) }
    });
    record(report, "second-order difference equation", &single(n_max), out);

    // delta c_n = c_{n-1}
    let out = (0..=n_max).try_for_each(|n| {
        let k = n as usize;
        let lhs = polys[k].delta();
        let rhs = if n == 0 { Polynomial::zero() } else { polys[k - 1].clone() };
        if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}")) }
    });
    record(report, "forward-difference ladder", &single(n_max), out);

    // (-a)^m n! c_n(m) = (-a)^n m! c_m(n)
    let out = (0..=n_max).try_for_each(|n| {
        (0..=n_max).try_for_each(|m| {
            let lhs = &(&pochpow(&neg_a, m) * &factorial_g(n))
                * &polys[n as usize].eval(&int(m as i64));
            let rhs = &(&pochpow(&neg_a, n) * &factorial_g(m))
                * &polys[m as usize].eval(&int(n as i64));
            if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}, m={m}")) }
        })
    });
    record(report, "self-duality", &both(n_max), out);
    Ok(())
}

fn hermite_identities(n_max: u64, report: &mut VerificationReport) {
    // H_n' = 2n H_{n-1}
    let out = (0..=n_max).try_for_each(|n| {
        let lhs = hermite(n).derivative();
        let rhs = if n == 0 {
            Polynomial::zero()
        } else {
            hermite(n - 1).scale(&int(2 * n as i64))
        };
        if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}")) }
    });
    record(report, "derivative ladder", &single(n_max), out);
}

fn meixner_identities(
    params: &ParamSet,
    n_max: u64,
    report: &mut VerificationReport,
) -> Result<(), Error> {
    let a = params.get("a")?.clone();
    let c = params.get("c")?.clone();
    let a_inv = a.inv()?;
    let one = GaussianRational::one();
    let polys: Vec<Polynomial> =
        (0..=n_max).map(|n| meixner(n, &a, &c)).collect::<Result<_, _>>()?;
    let reflected: Vec<Polynomial> =
        (0..=n_max).map(|n| meixner(n, &a_inv, &c)).collect::<Result<_, _>>()?;

    // m_n^{a,c}(x) = (-1)^n m_n^{1/a,c}(-x-c)
    let out = (0..=n_max).try_for_each(|n| {
        let k = n as usize;
        let rhs = reflected[k].compose_affine(&-&one, &-&c).scale(&sign_pow(n as i64));
        if polys[k] == rhs {
            Ok(())
        } else {
            mismatch(&polys[k], rhs, format!("n={n}"))
        }
    });
    record(report, "parameter reflection", &single(n_max), out);

    // Index duality, cross-multiplied so only nonnegative powers appear:
    // a^m (a-1)^n n! (c)_m m_n(m) = a^n (a-1)^m m! (c)_n m_m(n).
    let a_minus_1 = &a - &one;
    let out = (0..=n_max).try_for_each(|n| {
        (0..=n_max).try_for_each(|m| {
            let lhs = &(&(&pochpow(&a, m) * &pochpow(&a_minus_1, n)) * &factorial_g(n))
                * &(&pochhammer(&c, m) * &polys[n as usize].eval(&int(m as i64)));
            let rhs = &(&(&pochpow(&a, n) * &pochpow(&a_minus_1, m)) * &factorial_g(m))
                * &(&pochhammer(&c, n) * &polys[m as usize].eval(&int(n as i64)));
            if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}, m={m}")) }
        })
    });
    record(report, "index duality (cross-multiplied form)", &both(n_max), out);
    Ok(())
}

/// (-N)_m (α+1)_m / m! * h_n(m)  =  (-N)_n (α+1)_n / n! * R_m(λ(n)).
fn hahn_dual_duality(params: &ParamSet, n_max: u64) -> Result<Result<(), Mismatch>, Error> {
    let alpha = params.get("alpha")?.clone();
    let beta = params.get("beta")?.clone();
    let big_n = params.get("N")?.clone();
    let hahns: Vec<Polynomial> = (0..=n_max)
        .map(|n| hahn(n, &alpha, &beta, &big_n))
        .collect::<Result<_, _>>()?;
    let duals: Vec<Polynomial> = (0..=n_max)
        .map(|n| dual_hahn(n, &alpha, &beta, &big_n))
        .collect::<Result<_, _>>()?;
    let neg_big_n = -&big_n;
    let alpha1 = &alpha + &GaussianRational::one();
    let lam = lambda_map(&alpha, &beta);
    let prefactor = |k: u64| -> GaussianRational {
        &(&pochhammer(&neg_big_n, k) * &pochhammer(&alpha1, k)) * &inv_factorial(k)
    };
    Ok((0..=n_max).try_for_each(|n| {
        (0..=n_max).try_for_each(|m| {
            let lhs = &prefactor(m) * &hahns[n as usize].eval(&int(m as i64));
            let rhs = &prefactor(n) * &duals[m as usize].eval(&lam.eval(&int(n as i64)));
            if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}, m={m}")) }
        })
    }))
}

/// R_n composed with λ(x) equals the terminating sum in x directly:
/// (1/n!) sum_j (-n)_j (-N+j)_{n-j} (α+1+j)_{n-j} / j! * prod_{i<j} (i-x)(x+α+β+1+i).
fn dual_hahn_hypergeometric(params: &ParamSet, n_max: u64) -> Result<Result<(), Mismatch>, Error> {
    let alpha = params.get("alpha")?.clone();
    let beta = params.get("beta")?.clone();
    let big_n = params.get("N")?.clone();
    let lam = lambda_map(&alpha, &beta);
    let ab1 = &(&alpha + &beta) + &GaussianRational::one();
    let neg_big_n = -&big_n;
    Ok((0..=n_max).try_for_each(|n| {
        let lhs = dual_hahn(n, &alpha, &beta, &big_n)
            .expect("params already validated")
            .compose(&lam);
        let mut rhs = Polynomial::zero();
        let mut prod = Polynomial::one();
        for j in 0..=n {
            let mut s = pochhammer(&int(-(n as i64)), j);
            s = &s * &pochhammer(&(&neg_big_n + &int(j as i64)), n - j);
            s = &s * &pochhammer(&(&alpha + &int(j as i64 + 1)), n - j);
            s = &s * &inv_factorial(j);
            rhs = &rhs + &prod.scale(&s);
            let up = Polynomial::from_coeffs(vec![&ab1 + &int(j as i64), GaussianRational::one()]);
            let down = Polynomial::from_coeffs(vec![int(j as i64), -GaussianRational::one()]);
            prod = &prod * &(&down * &up);
        }
        rhs = rhs.scale(&inv_factorial(n));
        if lhs == rhs { Ok(()) } else { mismatch(lhs, rhs, format!("n={n}")) }
    }))
}
