//! Casoratian and Wronskian determinant builders.
//!
//! Each builder assembles a square matrix whose rows are shifted,
//! differentiated, or parameter-reflected family polynomials, takes its
//! exact determinant, and applies the prescribed normalizer. For a single
//! set F = {f_1 < ... < f_k} the archetype is the Casoratian
//! |c_{f_i}(x+j-1)|, a polynomial of degree w_F = sum(F) - C(k,2); the
//! quasi builders mix two or three row blocks with different parameter
//! shifts and divide out a known polynomial factor.
//!
//! The Hahn and Jacobi builders also carry a closed-form leading
//! coefficient (d_F and u_F below). When it vanishes the normalized form is
//! defined to be 1 and the result is flagged `degenerate`; a nonzero
//! remainder in the prescribed division is a hard error, since the source
//! construction promises polynomiality.

use crate::error::Error;
use crate::families::{charlier, hahn, hermite, jacobi, laguerre, meixner};
use crate::matrix::{det_exact, det_scalar, PolyMatrix};
use crate::poly::{pochhammer_poly, Polynomial};
use crate::scalar::{inv_factorial, pochhammer, sign_pow, GaussianRational, Rational};
use crate::sets::FiniteSet;
use num_bigint::BigInt;
use num_traits::One;

/// Determinant builder output for the families whose normalizer can vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuilderResult {
    /// The determinant after the prescribed exact polynomial division.
    pub raw: Polynomial,
    /// `raw` divided by the closed-form leading coefficient (1 if that
    /// coefficient is zero).
    pub normalized: Polynomial,
    /// True when the closed-form leading coefficient vanished.
    pub degenerate: bool,
}

impl BuilderResult {
    fn from_raw(raw: Polynomial, lead: GaussianRational) -> Result<Self, Error> {
        if lead.is_zero() {
            return Ok(BuilderResult { raw, normalized: Polynomial::one(), degenerate: true });
        }
        let normalized = raw.scale(&lead.inv()?);
        Ok(BuilderResult { raw, normalized, degenerate: false })
    }
}

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn pow_u(base: &GaussianRational, e: u64) -> GaussianRational {
    base.pow_i64(e as i64).expect("nonnegative exponent")
}

/// Casoratian of Charlier polynomials, |c_{f_i}^a(x+j-1)|.
///
/// The index-shifted form |c_{f_i-j+1}^a(x)| (with c_m = 0 for m < 0) is
/// computed alongside and must agree exactly; a disagreement is a bug in
/// the calculator, not a property of the inputs.
pub fn casorati_charlier(set: &FiniteSet, a: &GaussianRational) -> Result<Polynomial, Error> {
    if a.is_zero() {
        return Err(Error::InvalidParams("Charlier parameter a must be nonzero".into()));
    }
    let k = set.len();
    if k == 0 {
        return Ok(Polynomial::one());
    }
    let mut rows = Vec::with_capacity(k);
    let mut alt_rows = Vec::with_capacity(k);
    for &f in set.elems() {
        let base = charlier(f, a)?;
        let mut row = Vec::with_capacity(k);
        let mut alt_row = Vec::with_capacity(k);
        for j in 0..k as u64 {
            row.push(base.shift(&int(j as i64)));
            alt_row.push(if f >= j {
                charlier(f - j, a)?
            } else {
                Polynomial::zero()
            });
        }
        rows.push(row);
        alt_rows.push(alt_row);
    }
    let direct = det_exact(&PolyMatrix::from_rows(rows)?)?;
    let shifted = det_exact(&PolyMatrix::from_rows(alt_rows)?)?;
    if direct != shifted {
        return Err(Error::InternalInconsistency(format!(
            "Casoratian forms disagree for F={set}, a={a}: {direct} vs {shifted}"
        )));
    }
    Ok(direct)
}

/// Wronskian of Hermite polynomials, |H_{f_i}^{(j-1)}(x)| normalized by
/// 2^C(k,2) * prod_{f in F} f!.
pub fn wronskian_hermite(set: &FiniteSet) -> Polynomial {
    let k = set.len();
    if k == 0 {
        return Polynomial::one();
    }
    let rows: Vec<Vec<Polynomial>> = set
        .elems()
        .iter()
        .map(|&f| derivative_row(hermite(f), k, false))
        .collect();
    let det = det_exact(&PolyMatrix::from_rows(rows).expect("rectangular by construction"))
        .expect("square by construction");
    let two_pow = Rational::from(BigInt::one() << (k * (k - 1) / 2));
    let scale = GaussianRational::from_rational((two_pow * set.factorial_product()).recip());
    det.scale(&scale)
}

/// Row of successive derivatives `p, p', p'', ...` of length k, optionally
/// with the alternating column sign (-1)^{j-1}.
fn derivative_row(p: Polynomial, k: usize, signed: bool) -> Vec<Polynomial> {
    let mut row = Vec::with_capacity(k);
    let mut cur = p;
    for j in 0..k {
        let entry = if signed && j % 2 == 1 { cur.scale(&int(-1)) } else { cur.clone() };
        row.push(entry);
        cur = cur.derivative();
    }
    row
}

/// Quasi Casoratian of Meixner polynomials: rows m_f^{a,c}(x+j-1) for
/// f in F1, rows m_f^{1/a,c}(x+j-1)/a^{j-1} for f in F2, the determinant
/// divided by a^(C(k2,2) - k2(k-1)) * (1-a)^(k1 k2).
pub fn quasi_casorati_meixner(
    f1: &FiniteSet,
    f2: &FiniteSet,
    a: &GaussianRational,
    c: &GaussianRational,
) -> Result<Polynomial, Error> {
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidParams("Meixner parameter a must avoid 0 and 1".into()));
    }
    let (k1, k2) = (f1.len(), f2.len());
    let k = k1 + k2;
    if k == 0 {
        return Ok(Polynomial::one());
    }
    let a_inv = a.inv()?;
    let mut rows = Vec::with_capacity(k);
    for &f in f1.elems() {
        let base = meixner(f, a, c)?;
        rows.push((0..k).map(|j| base.shift(&int(j as i64))).collect());
    }
    for &f in f2.elems() {
        let base = meixner(f, &a_inv, c)?;
        rows.push(
            (0..k)
                .map(|j| base.shift(&int(j as i64)).scale(&pow_u(&a_inv, j as u64)))
                .collect(),
        );
    }
    let det = det_exact(&PolyMatrix::from_rows(rows)?)?;
    let a_exp = (k2 * k2.saturating_sub(1) / 2) as i64 - (k2 * (k - 1)) as i64;
    let one_minus_a = &GaussianRational::one() - a;
    let norm = &a.pow_i64(a_exp)? * &pow_u(&one_minus_a, (k1 * k2) as u64);
    Ok(det.scale(&norm.inv()?))
}

/// Quasi Wronskian of Laguerre polynomials: sign (-1)^(sum F1) times the
/// determinant with rows (L_f^alpha)^{(j-1)}(x) for f in F1 and rows
/// L_f^{alpha+j-1}(-x) for f in F2.
pub fn quasi_wronskian_laguerre(
    f1: &FiniteSet,
    f2: &FiniteSet,
    alpha: &GaussianRational,
) -> Polynomial {
    let (k1, k2) = (f1.len(), f2.len());
    let k = k1 + k2;
    if k == 0 {
        return Polynomial::one();
    }
    let mut rows = Vec::with_capacity(k);
    for &f in f1.elems() {
        rows.push(derivative_row(laguerre(f, alpha), k, false));
    }
    for &f in f2.elems() {
        rows.push(
            (0..k)
                .map(|j| {
                    laguerre(f, &(alpha + &int(j as i64)))
                        .compose_affine(&int(-1), &GaussianRational::zero())
                })
                .collect(),
        );
    }
    let det = det_exact(&PolyMatrix::from_rows(rows).expect("rectangular by construction"))
        .expect("square by construction");
    det.scale(&sign_pow(f1.sum() as i64))
}

/// Closed-form leading coefficient d_F of the quasi Casorati-Hahn
/// determinant.
fn hahn_leading_coefficient(
    f1: &FiniteSet,
    f2: &FiniteSet,
    f3: &FiniteSet,
    alpha: &GaussianRational,
    beta: &GaussianRational,
    big_n: &GaussianRational,
) -> GaussianRational {
    let (k1, k2, k3) = (f1.len() as i64, f2.len() as i64, f3.len() as i64);
    let one = GaussianRational::one();
    let eta1 = &(alpha + beta) + &one;
    let eta2 = &(alpha - beta) + &one;
    let eta3 = -&(&(&(alpha + beta) + &(big_n + big_n)) + &one);
    let mut d = sign_pow(k1 * k2 + k1 * k3 + k2 * k3);
    for (fs, eta) in [(f1, &eta1), (f2, &eta2), (f3, &eta3)] {
        d = &d * &GaussianRational::from_rational(fs.vandermonde());
        for &f in fs.elems() {
            d = &d * &pochhammer(&(eta + &int(f as i64)), f);
            d = &d * &inv_factorial(f);
        }
    }
    for &u in f1.elems() {
        for &v in f2.elems() {
            d = &d * &(beta + &int(u as i64 - v as i64));
        }
    }
    let abn1 = &(&(alpha + beta) + big_n) + &one;
    for &u in f1.elems() {
        for &w in f3.elems() {
            d = &d * &(&abn1 + &int(u as i64 - w as i64));
        }
    }
    let na1 = &(big_n + alpha) + &one;
    for &v in f2.elems() {
        for &w in f3.elems() {
            d = &d * &(&na1 + &int(v as i64 - w as i64));
        }
    }
    d
}

/// Quasi Casoratian of Hahn polynomials over a triple (F1, F2, F3).
///
/// Row blocks (written with the multi-Pochhammer prefactors as products):
///   f in F1:  (alpha+x+1)_{j-1} (-N+x)_{j-1}      h_f^{alpha,beta,N}(x+j-1)
///   f in F2:  (alpha+x+1)_{j-1} (-beta-N+x)_{j-1} h_f^{alpha,-beta,beta+N}(x+j-1)
///   f in F3:  (-N+x)_{j-1} (-beta-N+x)_{j-1}      h_f^{-beta-N-1,-alpha-N-1,N}(x+j-1)
/// The determinant is divided exactly by
///   prod_{s=1..3} prod_{i=0}^{kt_s-2} (xi_s + x + i)^(kt_s-1-i)
/// with kt = (k1+k2, k1+k3, k2+k3) and xi = (alpha+1, -N, -beta-N).
pub fn quasi_casorati_hahn(
    f1: &FiniteSet,
    f2: &FiniteSet,
    f3: &FiniteSet,
    alpha: &GaussianRational,
    beta: &GaussianRational,
    big_n: &GaussianRational,
) -> Result<BuilderResult, Error> {
    let (k1, k2, k3) = (f1.len(), f2.len(), f3.len());
    let k = k1 + k2 + k3;
    if k == 0 {
        return BuilderResult::from_raw(Polynomial::one(), GaussianRational::one());
    }
    let one = GaussianRational::one();
    let xi1 = alpha + &one;
    let xi2 = -big_n;
    let xi3 = -&(beta + big_n);
    let neg_beta = -beta;
    let beta_plus_n = beta + big_n;
    let alpha3 = -&(&(beta + big_n) + &one);
    let beta3 = -&(&(alpha + big_n) + &one);

    let mut rows = Vec::with_capacity(k);
    for &f in f1.elems() {
        let base = hahn(f, alpha, beta, big_n)?;
        rows.push(prefactored_row(&base, &xi1, &xi2, k));
    }
    for &f in f2.elems() {
        let base = hahn(f, alpha, &neg_beta, &beta_plus_n)?;
        rows.push(prefactored_row(&base, &xi1, &xi3, k));
    }
    for &f in f3.elems() {
        let base = hahn(f, &alpha3, &beta3, big_n)?;
        rows.push(prefactored_row(&base, &xi2, &xi3, k));
    }
    let det = det_exact(&PolyMatrix::from_rows(rows)?)?;

    let mut divisor = Polynomial::one();
    for (kt, xi) in [(k1 + k2, &xi1), (k1 + k3, &xi2), (k2 + k3, &xi3)] {
        for i in 0..kt.saturating_sub(1) {
            let factor = Polynomial::from_coeffs(vec![xi + &int(i as i64), one.clone()]);
            divisor = &divisor * &factor.pow(kt - 1 - i);
        }
    }
    let raw = det.exact_div(&divisor)?;
    BuilderResult::from_raw(raw, hahn_leading_coefficient(f1, f2, f3, alpha, beta, big_n))
}

/// Row `(x+u)_{j-1} (x+v)_{j-1} base(x+j-1)` for j = 1..k.
fn prefactored_row(
    base: &Polynomial,
    u: &GaussianRational,
    v: &GaussianRational,
    k: usize,
) -> Vec<Polynomial> {
    (0..k as u64)
        .map(|j| {
            let pref = &pochhammer_poly(u, j) * &pochhammer_poly(v, j);
            &pref * &base.shift(&int(j as i64))
        })
        .collect()
}

/// Closed-form leading coefficient u_F of the quasi Wronskian of Jacobi
/// polynomials.
fn jacobi_leading_coefficient(
    f1: &FiniteSet,
    f2: &FiniteSet,
    alpha: &GaussianRational,
    beta: &GaussianRational,
) -> GaussianRational {
    let (k1, k2) = (f1.len() as u64, f2.len() as u64);
    let mut u = GaussianRational::from_rational(f1.vandermonde() * f2.vandermonde());
    for &f in f1.elems() {
        u = &u * &pochhammer(&(&(alpha + beta) + &int(f as i64 + 1)), f);
    }
    for &f in f2.elems() {
        u = &u * &pochhammer(&(&(alpha - beta) + &int(f as i64 + 1)), f);
    }
    for &a in f1.elems() {
        for &b in f2.elems() {
            u = &u * &(beta + &int(a as i64 - b as i64));
        }
    }
    let sign = sign_pow((k1 * k1.saturating_sub(1) / 2 + k2 * k2.saturating_sub(1) / 2) as i64);
    let two_pow = Rational::from(BigInt::one() << (f1.sum() + f2.sum()) as usize);
    let den = GaussianRational::from_rational(
        two_pow * f1.factorial_product() * f2.factorial_product(),
    );
    &(&u * &sign) * &den.inv().expect("positive denominator")
    // sign/2^s/f! never vanish, so the quotient is exact
}

/// Quasi Wronskian of Jacobi polynomials over a pair (F1, F2): rows
/// (-1)^{j-1} (P_f^{alpha,beta})^{(j-1)}(x) for f in F1, rows
/// (beta-f)_{j-1} (1+x)^{k-j} P_f^{alpha+j-1,-beta-j+1}(x) for f in F2,
/// the determinant divided exactly by (1+x)^(k2(k2-1)).
pub fn quasi_wronskian_jacobi(
    f1: &FiniteSet,
    f2: &FiniteSet,
    alpha: &GaussianRational,
    beta: &GaussianRational,
) -> Result<BuilderResult, Error> {
    let (k1, k2) = (f1.len(), f2.len());
    let k = k1 + k2;
    if k == 0 {
        return BuilderResult::from_raw(Polynomial::one(), GaussianRational::one());
    }
    let one_plus_x = Polynomial::from_coeffs(vec![GaussianRational::one(), GaussianRational::one()]);
    let mut rows = Vec::with_capacity(k);
    for &f in f1.elems() {
        rows.push(derivative_row(jacobi(f, alpha, beta), k, true));
    }
    for &f in f2.elems() {
        let row = (0..k as u64)
            .map(|j| {
                let scalar = pochhammer(&(beta - &int(f as i64)), j);
                let reflected = jacobi(
                    f,
                    &(alpha + &int(j as i64)),
                    &-&(beta + &int(j as i64)),
                );
                (&reflected * &one_plus_x.pow(k - 1 - j as usize)).scale(&scalar)
            })
            .collect();
        rows.push(row);
    }
    let det = det_exact(&PolyMatrix::from_rows(rows)?)?;
    let raw = det.exact_div(&one_plus_x.pow(k2 * k2.saturating_sub(1)))?;
    BuilderResult::from_raw(raw, jacobi_leading_coefficient(f1, f2, alpha, beta))
}

/// Scalar determinant Phi_n = |c_{n+j-1}^a(f_i)| over the elements of F.
pub fn phi_charlier(
    set: &FiniteSet,
    a: &GaussianRational,
    n: u64,
) -> Result<GaussianRational, Error> {
    if a.is_zero() {
        return Err(Error::InvalidParams("Charlier parameter a must be nonzero".into()));
    }
    let k = set.len();
    let cols: Vec<Polynomial> =
        (0..k as u64).map(|j| charlier(n + j, a)).collect::<Result<_, _>>()?;
    let entries: Vec<Vec<GaussianRational>> = set
        .elems()
        .iter()
        .map(|&f| cols.iter().map(|p| p.eval(&int(f as i64))).collect())
        .collect();
    det_scalar(entries)
}
