//! Discrete measures and their inner products.
//!
//! Two measure families are housed here. The dual-Hahn measure
//!
//!   mu_{alpha,beta,N} = sum_{x=0}^N w(x) delta_{lambda(x)},
//!   w(x) = (2x+alpha+beta+1)(alpha+1)_x(-N)_x N!
//!          / ((-1)^x (x+alpha+beta+1)_{N+1} (beta+1)_x x!),
//!
//! is a finite combination of Dirac deltas, so its inner products are exact
//! rationals. The Charlier measure sum_{x>=0} a^x/x! delta_x is infinite;
//! its inner products are computed as partial sums with a certified tail
//! bound: once the term ratio drops below 1/2 the tail is dominated by a
//! geometric series. Krall variants multiply the weight by an annihilator
//! evaluated at the support points.
//!
//! e^a is never treated symbolically. Every identity involving it is
//! checked as a comparison against the truncated exponential series, with
//! all truncation errors added to a single budget.

use crate::christoffel::{christoffel_q, phi_general, ChristoffelNode, SequenceProvider};
use crate::error::Error;
use crate::families::{charlier, lambda_map, FamilyId, ParamSet};
use crate::poly::Polynomial;
use crate::report::{mismatch, record, VerificationReport};
use crate::scalar::{factorial_g, pochhammer, rat, sign_pow, GaussianRational, Rational};
use crate::sets::FiniteSet;
use num_traits::{One, Signed, Zero};

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn rint(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn rpow(base: &Rational, exp: u64) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

fn rsign(exp: i64) -> Rational {
    if exp.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// True when `v` is an integer in {lowest, ..., -1}.
fn forbidden_negative_integer(v: &GaussianRational, lowest: i64) -> bool {
    if !v.is_real() {
        return false;
    }
    let r = v.as_rational().expect("real");
    r.is_integer() && r >= rat(lowest, 1) && r <= rat(-1, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    CharlierBase,
    KrallCharlier,
    DualHahnBase,
    KrallDualHahn,
}

/// An inner product value: exact where the measure is finite, a partial sum
/// with a certified tail bound otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum InnerProduct {
    Exact(GaussianRational),
    Truncated { value: Rational, bound: Rational },
}

impl InnerProduct {
    pub fn expect_exact(&self) -> &GaussianRational {
        match self {
            InnerProduct::Exact(v) => v,
            InnerProduct::Truncated { .. } => panic!("expected an exact inner product"),
        }
    }

    pub fn expect_truncated(&self) -> (&Rational, &Rational) {
        match self {
            InnerProduct::Truncated { value, bound } => (value, bound),
            InnerProduct::Exact(_) => panic!("expected a truncated inner product"),
        }
    }
}

/// A validated discrete measure.
#[derive(Clone, Debug)]
pub struct MeasureSpec {
    kind: MeasureKind,
    params: ParamSet,
    components: Vec<FiniteSet>,
    truncation: Option<u64>,
}

impl MeasureSpec {
    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    fn charlier_params(a: &GaussianRational) -> Result<ParamSet, Error> {
        if !a.is_real() || a.is_zero() {
            return Err(Error::InvalidParams(
                "Charlier measures need a real nonzero parameter a".into(),
            ));
        }
        Ok(ParamSet::new().with("a", a.clone()))
    }

    pub fn charlier_base(a: &GaussianRational, truncation: u64) -> Result<Self, Error> {
        Ok(MeasureSpec {
            kind: MeasureKind::CharlierBase,
            params: Self::charlier_params(a)?,
            components: Vec::new(),
            truncation: Some(truncation),
        })
    }

    pub fn krall_charlier(
        a: &GaussianRational,
        set: &FiniteSet,
        truncation: u64,
    ) -> Result<Self, Error> {
        Ok(MeasureSpec {
            kind: MeasureKind::KrallCharlier,
            params: Self::charlier_params(a)?,
            components: vec![set.clone()],
            truncation: Some(truncation),
        })
    }

    fn dual_hahn_params(
        alpha: &GaussianRational,
        beta: &GaussianRational,
        big_n: u64,
    ) -> Result<ParamSet, Error> {
        if big_n == 0 {
            return Err(Error::InvalidParams("N must be a positive integer".into()));
        }
        let n = big_n as i64;
        if forbidden_negative_integer(alpha, -n) || forbidden_negative_integer(beta, -n) {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must avoid -1..-{big_n}"
            )));
        }
        if forbidden_negative_integer(&(alpha + beta), -2 * n - 1) {
            return Err(Error::InvalidParams(format!(
                "alpha + beta must avoid -1..-{}",
                2 * big_n + 1
            )));
        }
        Ok(ParamSet::new()
            .with("alpha", alpha.clone())
            .with("beta", beta.clone())
            .with("N", int(n)))
    }

    pub fn dual_hahn_base(
        alpha: &GaussianRational,
        beta: &GaussianRational,
        big_n: u64,
    ) -> Result<Self, Error> {
        Ok(MeasureSpec {
            kind: MeasureKind::DualHahnBase,
            params: Self::dual_hahn_params(alpha, beta, big_n)?,
            components: Vec::new(),
            truncation: None,
        })
    }

    pub fn krall_dual_hahn(
        alpha: &GaussianRational,
        beta: &GaussianRational,
        big_n: u64,
        f1: &FiniteSet,
        f2: &FiniteSet,
        f3: &FiniteSet,
    ) -> Result<Self, Error> {
        for set in [f1, f2, f3] {
            if !set.is_positive() {
                return Err(Error::InvalidParams(
                    "Krall dual-Hahn components must be sets of positive integers".into(),
                ));
            }
        }
        Ok(MeasureSpec {
            kind: MeasureKind::KrallDualHahn,
            params: Self::dual_hahn_params(alpha, beta, big_n)?,
            components: vec![f1.clone(), f2.clone(), f3.clone()],
            truncation: None,
        })
    }
}

/// w(x) of the dual-Hahn measure at support index x.
fn dual_hahn_weight(
    alpha: &GaussianRational,
    beta: &GaussianRational,
    big_n: u64,
    x: u64,
) -> Result<GaussianRational, Error> {
    let s = alpha + beta;
    let one = GaussianRational::one();
    let num = &(&(&(&int(2 * x as i64) + &s) + &one)
        * &pochhammer(&(alpha + &one), x))
        * &(&pochhammer(&int(-(big_n as i64)), x) * &factorial_g(big_n));
    let den = &(&sign_pow(x as i64) * &pochhammer(&(&(&int(x as i64) + &s) + &one), big_n + 1))
        * &(&pochhammer(&(beta + &one), x) * &factorial_g(x));
    Ok(&num * &den.inv()?)
}

/// The Krall dual-Hahn annihilator roots in the lambda variable:
/// lambda(f) for F1, lambda(f-beta) for F2, lambda(N-f) for F3.
pub fn krall_dual_hahn_points(
    alpha: &GaussianRational,
    beta: &GaussianRational,
    big_n: u64,
    f1: &FiniteSet,
    f2: &FiniteSet,
    f3: &FiniteSet,
) -> Vec<GaussianRational> {
    let lam = lambda_map(alpha, beta);
    let mut points = Vec::new();
    for &f in f1.elems() {
        points.push(lam.eval(&int(f as i64)));
    }
    for &f in f2.elems() {
        points.push(lam.eval(&(&int(f as i64) - beta)));
    }
    for &f in f3.elems() {
        points.push(lam.eval(&int(big_n as i64 - f as i64)));
    }
    points
}

fn real_coeffs(p: &Polynomial) -> Result<Vec<Rational>, Error> {
    p.coeffs().iter().map(|c| c.as_rational()).collect()
}

fn eval_rational(coeffs: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Partial sum of sum_x P(x) a^x/x! over x = 0..X plus a certified tail
/// bound: with U(t) the coefficient-absolute-value majorant of P, the
/// term bound B_x = |a|^x U(x)/x! satisfies B_{x+1}/B_x <= rho(x) with
/// rho(x) = |a| ((x+1)/x)^d / (x+1) decreasing, so rho(X+1) <= 1/2 gives
/// tail <= 2 B_{X+1}.
fn charlier_truncated_sum(
    coeffs: &[Rational],
    a: &Rational,
    x_max: u64,
) -> Result<InnerProduct, Error> {
    if coeffs.is_empty() {
        return Ok(InnerProduct::Truncated {
            value: Rational::zero(),
            bound: Rational::zero(),
        });
    }
    let mut value = Rational::zero();
    let mut weight = Rational::one();
    for x in 0..=x_max {
        value += eval_rational(coeffs, &rint(x)) * &weight;
        weight = weight * a / rint(x + 1);
    }
    // weight is now a^{X+1}/(X+1)!
    let d = (coeffs.len() - 1) as u64;
    let ratio_bound = a.abs() * rpow(&(rint(x_max + 2) / rint(x_max + 1)), d) / rint(x_max + 2);
    if ratio_bound > rat(1, 2) {
        return Err(Error::TailBoundUnavailable(format!(
            "term ratio bound {ratio_bound} exceeds 1/2 at truncation {x_max}"
        )));
    }
    let majorant: Rational = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c.abs() * rpow(&rint(x_max + 1), j as u64))
        .sum();
    let bound = rat(2, 1) * weight.abs() * majorant;
    Ok(InnerProduct::Truncated { value, bound })
}

/// The inner product of p and q against the measure: exact for the finite
/// dual-Hahn kinds, truncated-with-bound for the Charlier kinds.
pub fn discrete_inner(
    spec: &MeasureSpec,
    p: &Polynomial,
    q: &Polynomial,
) -> Result<InnerProduct, Error> {
    match spec.kind {
        MeasureKind::CharlierBase | MeasureKind::KrallCharlier => {
            let a = spec.params.get("a")?.as_rational()?;
            let mut integrand = p * q;
            if let Some(set) = spec.components.first() {
                integrand = &integrand * &set.annihilator();
            }
            let coeffs = real_coeffs(&integrand)?;
            charlier_truncated_sum(&coeffs, &a, spec.truncation.expect("validated"))
        }
        MeasureKind::DualHahnBase | MeasureKind::KrallDualHahn => {
            let alpha = spec.params.get("alpha")?;
            let beta = spec.params.get("beta")?;
            let big_n = crate::scalar::rational_to_u64(&spec.params.get("N")?.as_rational()?)?;
            let lam = lambda_map(alpha, beta);
            let krall_points = match spec.kind {
                MeasureKind::KrallDualHahn => krall_dual_hahn_points(
                    alpha,
                    beta,
                    big_n,
                    &spec.components[0],
                    &spec.components[1],
                    &spec.components[2],
                ),
                _ => Vec::new(),
            };
            let mut total = GaussianRational::zero();
            for x in 0..=big_n {
                let lx = lam.eval(&int(x as i64));
                let mut w = dual_hahn_weight(alpha, beta, big_n, x)?;
                for point in &krall_points {
                    w = &w * &(&lx - point);
                }
                total = &total + &(&w * &(&p.eval(&lx) * &q.eval(&lx)));
            }
            Ok(InnerProduct::Exact(total))
        }
    }
}

/// Partial exponential series sum_{i<=X} a^i/i! and a certified bound on
/// |e^a - that sum|.
pub fn exp_truncated(a: &Rational, x_max: u64) -> Result<(Rational, Rational), Error> {
    let mut value = Rational::one();
    let mut term = Rational::one();
    for i in 1..=x_max {
        term = term * a / rint(i);
        value += &term;
    }
    let next = term * a / rint(x_max + 1);
    if a.abs() / rint(x_max + 2) > rat(1, 2) {
        return Err(Error::TailBoundUnavailable(format!(
            "exponential tail needs |a| <= (X+2)/2 at truncation {x_max}"
        )));
    }
    Ok((value, rat(2, 1) * next.abs()))
}

/// sum_i (-g_i-1)^power c^{-a}_{g_i}(arg) / (prod_{j!=i}(g_i-g_j) c^{-a}_{g_i}(0))
/// over G = {g_1..g_m}; the denominators are the derivative values of the
/// node polynomial prod_i (x - g_i) at its own roots.
fn dual_charlier_sum(
    g: &FiniteSet,
    a: &Rational,
    arg: i64,
    power: u64,
) -> Result<Rational, Error> {
    let neg_a = GaussianRational::from_rational(-a.clone());
    let mut total = Rational::zero();
    for &gi in g.elems() {
        let base = charlier(gi, &neg_a)?;
        let numer = rpow(&(rint(gi) * -Rational::one() - Rational::one()), power)
            * base.eval(&int(arg)).as_rational()?;
        let mut den = base.eval(&GaussianRational::zero()).as_rational()?;
        for &gj in g.elems() {
            if gj != gi {
                den *= rint(gi) - rint(gj);
            }
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        total += numer / den;
    }
    Ok(total)
}

/// Truncated <(x - max F - 1)^power, c^a_index(x - max F - 1)> against the
/// Krall-Charlier measure of F; a negative index means the zero polynomial.
fn truncated_moment(
    set: &FiniteSet,
    a: &Rational,
    power: u64,
    index: i64,
    x_max: u64,
) -> Result<(Rational, Rational), Error> {
    if index < 0 {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let a_g = GaussianRational::from_rational(a.clone());
    let spec = MeasureSpec::krall_charlier(&a_g, set, x_max)?;
    let fmax = set.max_elem().expect("nonempty");
    let shift = int(-(fmax as i64) - 1);
    let monomial = Polynomial::monomial(GaussianRational::one(), power as usize).shift(&shift);
    let c = charlier(index as u64, &a_g)?.shift(&shift);
    match discrete_inner(&spec, &monomial, &c)? {
        InnerProduct::Truncated { value, bound } => Ok((value, bound)),
        InnerProduct::Exact(_) => unreachable!("Charlier kinds are truncated"),
    }
}

/// The bilinear number d(n, a, F): the truncated moment of (pcl) minus the
/// exact finite dual sum, with every truncation error folded into one
/// budget. Returns (d, budget) such that the true d differs from the
/// returned one by at most budget.
pub fn claim_d_value(
    set: &FiniteSet,
    a: &Rational,
    n: u64,
    x_max: u64,
) -> Result<(Rational, Rational), Error> {
    let g = set.involute();
    let m = g.len() as u64;
    let g_max = g.max_elem().expect("involuted set of a positive set is nonempty");
    let k = set.len() as u64;
    let (exp_val, exp_bound) = exp_truncated(a, x_max)?;
    let (moment, moment_bound) = truncated_moment(set, a, n, n as i64 - m as i64, x_max)?;
    let s = dual_charlier_sum(&g, a, -(n as i64) + m as i64 - 1, n)?;
    let a_gm_s = rpow(a, g_max) * s;
    let d = rsign(m as i64)
        * (moment - rsign(n as i64 - 1) * &exp_val * &a_gm_s);
    let budget = moment_bound + (a_gm_s.abs() + rpow(&a.abs(), n + k)) * exp_bound;
    Ok((d, budget))
}

/// Checks d = (-1)^m a^{n+k} e^a for n <= n_max, and the moment identity
/// behind it (each side truncated, compared within the certified budget):
/// <(x-maxF-1)^j, c^a_{n-l}(x-maxF-1)> equals the exact dual sum times
/// (-1)^{n+l+m-1} e^a a^{g_m}, for l <= m and j <= n-1.
pub fn claim_d_check(
    set: &FiniteSet,
    a: &Rational,
    n_max: u64,
    x_max: u64,
) -> Result<VerificationReport, Error> {
    if set.is_empty() || !set.is_positive() {
        return Err(Error::InvalidParams(
            "the claim needs a nonempty set with min F >= 1".into(),
        ));
    }
    if !a.is_positive() {
        return Err(Error::InvalidParams(
            "the claim's tail bounds need a > 0".into(),
        ));
    }
    let mut report = VerificationReport::new(
        "charlier-bilinear-claim",
        format!("F={set}; a={a}; n_max={n_max}; X={x_max}"),
    );
    let g = set.involute();
    let m = g.len() as u64;
    let g_max = g.max_elem().expect("nonempty");
    let k = set.len() as u64;
    let (exp_val, exp_bound) = exp_truncated(a, x_max)?;

    let mut out = Ok(());
    for n in 0..=n_max {
        let (d, budget) = claim_d_value(set, a, n, x_max)?;
        let target = rsign(m as i64) * rpow(a, n + k) * &exp_val;
        if (d - target).abs() > budget {
            out = mismatch(
                format!("d at n={n}"),
                format!("(-1)^{m} a^{}", n + k),
                format!("n={n}"),
            );
            break;
        }
    }
    record(&mut report, "closed form of d", &format!("0 <= n <= {n_max}"), out);

    let mut out = Ok(());
    'outer: for n in 0..=n_max {
        for l in 0..=m {
            for j in 0..n {
                let (lhs, lhs_bound) = truncated_moment(set, a, j, n as i64 - l as i64, x_max)?;
                let s = dual_charlier_sum(&g, a, -(n as i64) + l as i64 - 1, j)?;
                let a_gm_s = rpow(a, g_max) * s;
                let rhs = rsign(n as i64 + l as i64 + m as i64 - 1) * &exp_val * &a_gm_s;
                let budget = lhs_bound + a_gm_s.abs() * &exp_bound;
                if (lhs - rhs).abs() > budget {
                    out = mismatch(
                        "truncated moment".to_string(),
                        "exact dual sum".to_string(),
                        format!("n={n}, l={l}, j={j}"),
                    );
                    break 'outer;
                }
            }
        }
    }
    record(
        &mut report,
        "moment identity",
        &format!("n <= {n_max}, l <= {m}, j <= n-1"),
        out,
    );
    Ok(report)
}

/// Verifies the Christoffel-transform lemma against the Krall dual-Hahn
/// measure: orthogonality <q_n, q_j> = 0 for j < n, and the norm relation
/// <q_n, q_n> = (-1)^k (lc p_{n+k}/lc p_n) Phi_n Phi_{n+1} <p_n, p_n>,
/// all as exact rational identities over the finite support.
pub fn sze_check(
    alpha: &GaussianRational,
    beta: &GaussianRational,
    big_n: u64,
    f1: &FiniteSet,
    f2: &FiniteSet,
    f3: &FiniteSet,
    n_max: u64,
) -> Result<VerificationReport, Error> {
    let base = MeasureSpec::dual_hahn_base(alpha, beta, big_n)?;
    let krall = MeasureSpec::krall_dual_hahn(alpha, beta, big_n, f1, f2, f3)?;
    let mut report = VerificationReport::new(
        "christoffel-transform-orthogonality:dual-hahn",
        format!("alpha={alpha}; beta={beta}; N={big_n}; F=({f1},{f2},{f3}); n_max={n_max}"),
    );

    let points = krall_dual_hahn_points(alpha, beta, big_n, f1, f2, f3);
    for (i, u) in points.iter().enumerate() {
        for v in points.iter().skip(i + 1) {
            if u == v {
                report.skip(format!(
                    "coincident annihilator roots at lambda={u}: distinct evaluation rows unavailable"
                ));
                return Ok(report);
            }
        }
    }
    let nodes: Vec<ChristoffelNode> =
        points.into_iter().map(ChristoffelNode::direct).collect();
    let k = nodes.len() as u64;
    let seq = SequenceProvider::new(
        FamilyId::DualHahn,
        ParamSet::new()
            .with("alpha", alpha.clone())
            .with("beta", beta.clone())
            .with("N", int(big_n as i64)),
    );

    let mut steps: Vec<Option<Polynomial>> = Vec::new();
    for n in 0..=n_max {
        if n + k > big_n {
            report.note(format!("n={n}: skipped (n+k exceeds N, norms vanish)"));
            steps.push(None);
            continue;
        }
        let step = christoffel_q(&seq, &nodes, n)?;
        if step.degenerate {
            report.note(format!("n={n}: skipped (degenerate step, Phi_n = 0)"));
            steps.push(None);
            continue;
        }

        let mut out = Ok(());
        for (j, prev) in steps.iter().enumerate() {
            let Some(qj) = prev else { continue };
            let ip = discrete_inner(&krall, &step.q, qj)?;
            let v = ip.expect_exact();
            if !v.is_zero() {
                out = mismatch(v, GaussianRational::zero(), format!("n={n}, j={j}"));
                break;
            }
        }
        record(&mut report, "orthogonality", &format!("j < n = {n}"), out);

        let lc_n = seq.poly(n)?.leading_coefficient().cloned().expect("degree n");
        let lc_nk = seq
            .poly(n + k)?
            .leading_coefficient()
            .cloned()
            .expect("degree n+k");
        let phi_next = phi_general(&seq, &nodes, n + 1)?;
        let p_n = seq.poly(n)?;
        let base_norm = discrete_inner(&base, &p_n, &p_n)?.expect_exact().clone();
        let lhs = discrete_inner(&krall, &step.q, &step.q)?.expect_exact().clone();
        let rhs = &(&(&sign_pow(k as i64) * &lc_nk.div(&lc_n)?) * &(&step.phi * &phi_next))
            * &base_norm;
        let out = if lhs == rhs {
            Ok(())
        } else {
            mismatch(&lhs, &rhs, format!("n={n}"))
        };
        record(&mut report, "norm relation", &format!("n={n}"), out);

        steps.push(Some(step.q));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::casorati_charlier;
    use crate::families::dual_hahn;

    fn g(num: i64, den: i64) -> GaussianRational {
        GaussianRational::from_ratio(num, den)
    }

    fn fs(elems: &[u64]) -> FiniteSet {
        FiniteSet::new(elems.to_vec()).unwrap()
    }

    #[test]
    fn dual_hahn_base_orthogonality() {
        for (alpha, beta, big_n) in [
            (g(1, 1), g(2, 1), 3u64),
            (g(1, 3), g(1, 5), 3),
            (g(1, 1), g(2, 1), 5),
            (g(1, 1), g(2, 1), 6),
        ] {
            let spec = MeasureSpec::dual_hahn_base(&alpha, &beta, big_n).unwrap();
            let polys: Vec<Polynomial> = (0..=big_n + 1)
                .map(|n| dual_hahn(n, &alpha, &beta, &int(big_n as i64)).unwrap())
                .collect();
            for n in 0..=big_n as usize {
                for m in 0..n {
                    let ip = discrete_inner(&spec, &polys[n], &polys[m]).unwrap();
                    assert!(ip.expect_exact().is_zero(), "n={n}, m={m}, N={big_n}");
                }
                let norm = discrete_inner(&spec, &polys[n], &polys[n]).unwrap();
                assert!(!norm.expect_exact().is_zero(), "n={n}, N={big_n}");
            }
            // beyond the support size the norm collapses to zero
            let over = &polys[big_n as usize + 1];
            let ip = discrete_inner(&spec, over, over).unwrap();
            assert!(ip.expect_exact().is_zero(), "N={big_n}");
        }
    }

    #[test]
    fn charlier_truncated_norms_match_exponential_series() {
        for a in [rat(1, 2), rat(1, 1)] {
            let a_g = GaussianRational::from_rational(a.clone());
            let spec = MeasureSpec::charlier_base(&a_g, 200).unwrap();
            let (exp_val, exp_bound) = exp_truncated(&a, 200).unwrap();
            for n in 0..=5u64 {
                let c = charlier(n, &a_g).unwrap();
                let (value, bound) = match discrete_inner(&spec, &c, &c).unwrap() {
                    InnerProduct::Truncated { value, bound } => (value, bound),
                    _ => unreachable!(),
                };
                // <c_n, c_n> = a^n/n! e^a
                let scale = rpow(&a, n) / crate::scalar::factorial(n);
                let diff = (value - &scale * &exp_val).abs();
                assert!(diff <= &bound + scale * &exp_bound, "n={n}, a={a}");
                assert!(bound < rat(1, i64::MAX) * rat(1, i64::MAX), "bound not tiny");
            }
        }
    }

    #[test]
    fn krall_charlier_constant_moment_oracle() {
        // mu_a^F with F={1}: <1,1> = sum (x-1) a^x/x! = (a-1)e^a
        let a = rat(1, 2);
        let spec = MeasureSpec::krall_charlier(&g(1, 2), &fs(&[1]), 200).unwrap();
        let one = Polynomial::one();
        let (value, bound) = match discrete_inner(&spec, &one, &one).unwrap() {
            InnerProduct::Truncated { value, bound } => (value, bound),
            _ => unreachable!(),
        };
        let (exp_val, exp_bound) = exp_truncated(&a, 200).unwrap();
        let target = (&a - Rational::one()) * exp_val;
        assert!((value - target).abs() <= bound + (a - Rational::one()).abs() * exp_bound);
    }

    #[test]
    fn tail_bounds_refuse_small_truncations() {
        let spec = MeasureSpec::charlier_base(&g(1, 1), 0).unwrap();
        let x = Polynomial::x();
        assert!(matches!(
            discrete_inner(&spec, &x, &x),
            Err(Error::TailBoundUnavailable(_))
        ));
        assert!(matches!(
            exp_truncated(&rat(3, 1), 2),
            Err(Error::TailBoundUnavailable(_))
        ));
        assert!(exp_truncated(&rat(3, 1), 5).is_ok());
    }

    #[test]
    fn measure_validation_rejects_bad_params() {
        assert!(MeasureSpec::dual_hahn_base(&g(-2, 1), &g(1, 1), 3).is_err());
        assert!(MeasureSpec::dual_hahn_base(&g(1, 1), &g(-3, 1), 3).is_err());
        // alpha + beta = -3 lies in the forbidden band for N = 3
        assert!(MeasureSpec::dual_hahn_base(&g(1, 2), &g(-7, 2), 3).is_err());
        assert!(MeasureSpec::dual_hahn_base(&g(1, 1), &g(2, 1), 0).is_err());
        assert!(MeasureSpec::charlier_base(&GaussianRational::i(), 10).is_err());
        assert!(MeasureSpec::charlier_base(&GaussianRational::zero(), 10).is_err());
        assert!(MeasureSpec::krall_dual_hahn(&g(1, 1), &g(2, 1), 6, &fs(&[0, 1]), &fs(&[]), &fs(&[]))
            .is_err());
        // valid corner: non-integer alpha just outside the band
        assert!(MeasureSpec::dual_hahn_base(&g(-5, 2), &g(1, 1), 3).is_ok());
    }

    #[test]
    fn claim_d_hand_case() {
        // F={1,2}: G={2}, m=1, k=2; at n=0 the claim forces d = -a^2 e^a
        let a = rat(1, 2);
        let (d, budget) = claim_d_value(&fs(&[1, 2]), &a, 0, 200).unwrap();
        let (exp_val, exp_bound) = exp_truncated(&a, 200).unwrap();
        let target = -rat(1, 4) * &exp_val;
        assert!((&d - &target).abs() <= &budget + rat(1, 4) * exp_bound);
        // certified relative precision is far below 1e-25 at X=200
        let rel = budget / target.abs();
        assert!(rel < rpow(&rat(1, 10), 25), "relative budget {rel}");
    }

    #[test]
    fn claim_d_check_sweeps() {
        let report = claim_d_check(&fs(&[1, 2]), &rat(1, 2), 4, 200).unwrap();
        assert!(report.is_pass(), "{report}");
        // F={2} has G={1,2}, m=2: exercises the n-l<0 branch of the
        // moment identity (zero polynomial on the left)
        let report = claim_d_check(&fs(&[2]), &rat(1, 2), 2, 150).unwrap();
        assert!(report.is_pass(), "{report}");
        assert!(claim_d_check(&fs(&[0, 2]), &rat(1, 2), 1, 50).is_err());
        assert!(claim_d_check(&fs(&[1]), &rat(-1, 2), 1, 50).is_err());
    }

    #[test]
    fn sze_exact_cases() {
        let (alpha, beta) = (g(1, 1), g(2, 1));
        let trios: [(FiniteSet, FiniteSet, FiniteSet); 5] = [
            (fs(&[]), fs(&[]), fs(&[])),
            (fs(&[1]), fs(&[]), fs(&[])),
            (fs(&[]), fs(&[1]), fs(&[])),
            (fs(&[]), fs(&[]), fs(&[1])),
            (fs(&[1]), fs(&[2]), fs(&[])),
        ];
        for (f1, f2, f3) in &trios {
            let report = sze_check(&alpha, &beta, 6, f1, f2, f3, 2).unwrap();
            assert!(report.is_pass(), "F=({f1},{f2},{f3})\n{report}");
        }
    }

    #[test]
    fn sze_coincident_nodes_are_skipped() {
        // lambda(1) appears both from F1={1} and from F3={5} via lambda(6-5)
        let report = sze_check(&g(1, 1), &g(2, 1), 6, &fs(&[1]), &fs(&[]), &fs(&[5]), 2).unwrap();
        assert_eq!(report.status, crate::report::Status::SkippedDegenerate);
    }

    #[test]
    fn ratio_law_consistency_with_claim_ingredients() {
        // the dual sum machinery must reproduce the plain Casoratian ratio
        // of the same sets: C^a_F(0) = (-1)^{w_F} C^{-a}_{I(F)}(0)
        let set = fs(&[1, 2]);
        let a = g(1, 2);
        let caso = casorati_charlier(&set, &a).unwrap();
        let dual = casorati_charlier(&set.involute(), &-&a).unwrap();
        let lhs = caso.eval(&GaussianRational::zero());
        let rhs = &sign_pow(set.weight() as i64) * &dual.eval(&GaussianRational::zero());
        assert_eq!(lhs, rhs);
    }
}
