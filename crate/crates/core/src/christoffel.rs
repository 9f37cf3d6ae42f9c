//! Christoffel transforms and their dual determinantal representations.
//!
//! Given a polynomial sequence (p_n) and nodes x_1, ..., x_k, the transform
//! produces
//!
//!   q_n(x) = det [ p_{n+j-1}(x) ; p_{n+j-1}(x_i) ]_{j=1..k+1} / prod_i (x - x_i)
//!
//! with the polynomial row on top and one constant row per node. The degree
//! of q_n is n exactly when the k x k minor Phi_n = |p_{n+j-1}(x_i)| of the
//! constant rows is nonzero, and then the leading coefficient obeys
//! lambda^Q_n = (-1)^k lambda^P_{n+k} Phi_n.
//!
//! For Charlier and Meixner the same q_n (up to a scalar gamma_n) is given
//! by a second, smaller determinant built from the involuted index sets;
//! the proportionality and ratio checks below verify that duality exactly.

use crate::builders::casorati_charlier;
use crate::error::Error;
use crate::families::{charlier, family_poly, meixner, FamilyId, ParamSet};
use crate::matrix::{det_exact, det_scalar, PolyMatrix};
use crate::poly::Polynomial;
use crate::report::{mismatch, record, VerificationReport};
use crate::scalar::{inv_factorial, sign_pow, GaussianRational};
use crate::sets::FiniteSet;

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// A polynomial sequence (p_n) given by a family and its parameters.
#[derive(Clone, Debug)]
pub struct SequenceProvider {
    id: FamilyId,
    params: ParamSet,
}

impl SequenceProvider {
    pub fn new(id: FamilyId, params: ParamSet) -> Self {
        SequenceProvider { id, params }
    }

    pub fn poly(&self, n: u64) -> Result<Polynomial, Error> {
        family_poly(self.id, n, &self.params)
    }

    /// The row value p_m at a node, honoring the node's evaluation rule.
    pub fn value_at(&self, m: u64, node: &ChristoffelNode) -> Result<GaussianRational, Error> {
        match &node.eval {
            NodeEval::Direct => Ok(self.poly(m)?.eval(&node.at)),
            NodeEval::MeixnerReflected { point } => {
                let a = self.params.get("a")?;
                let c = self.params.get("c")?;
                let reflected = meixner(m, &a.inv()?, c)?;
                Ok(&reflected.eval(point) * &sign_pow(m as i64))
            }
        }
    }
}

/// How a node row of the transform determinant is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeEval {
    /// p_m(at), evaluated directly.
    Direct,
    /// p_m(at) realized through the reflection
    /// m_m^{a,c}(-c-f) = (-1)^m m_m^{1/a,c}(f), evaluating the
    /// reflected-parameter polynomial at `point` = f instead.
    MeixnerReflected { point: GaussianRational },
}

/// One root of the annihilator together with its evaluation rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChristoffelNode {
    pub at: GaussianRational,
    pub eval: NodeEval,
}

impl ChristoffelNode {
    pub fn direct(at: GaussianRational) -> Self {
        ChristoffelNode { at, eval: NodeEval::Direct }
    }
}

/// Nodes at the elements of F, evaluated directly.
pub fn direct_nodes(set: &FiniteSet) -> Vec<ChristoffelNode> {
    set.elems().iter().map(|&f| ChristoffelNode::direct(int(f as i64))).collect()
}

/// Meixner node spec: f for f in F1, and -c-f for f in F2 with the row
/// values realized through the parameter reflection.
pub fn meixner_nodes(
    f1: &FiniteSet,
    f2: &FiniteSet,
    c: &GaussianRational,
) -> Vec<ChristoffelNode> {
    let mut nodes = direct_nodes(f1);
    for &f in f2.elems() {
        let point = int(f as i64);
        nodes.push(ChristoffelNode {
            at: -&(c + &point),
            eval: NodeEval::MeixnerReflected { point },
        });
    }
    nodes
}

/// One Christoffel step: the transformed polynomial plus the minor that
/// decides whether the step is degenerate.
#[derive(Clone, Debug)]
pub struct ChristoffelStep {
    pub q: Polynomial,
    /// Phi_n, the k x k minor of the constant rows.
    pub phi: GaussianRational,
    /// True when Phi_n = 0, so deg q < n.
    pub degenerate: bool,
}

/// The k x k minor |p_{n+j-1}(x_i)| of the node rows.
pub fn phi_general(
    seq: &SequenceProvider,
    nodes: &[ChristoffelNode],
    n: u64,
) -> Result<GaussianRational, Error> {
    let k = nodes.len();
    let mut rows = Vec::with_capacity(k);
    for node in nodes {
        let mut row = Vec::with_capacity(k);
        for j in 0..k as u64 {
            row.push(seq.value_at(n + j, node)?);
        }
        rows.push(row);
    }
    det_scalar(rows)
}

/// The Christoffel transform q_n for the given sequence and nodes.
pub fn christoffel_q(
    seq: &SequenceProvider,
    nodes: &[ChristoffelNode],
    n: u64,
) -> Result<ChristoffelStep, Error> {
    let k = nodes.len();
    let polys: Vec<Polynomial> =
        (0..=k as u64).map(|j| seq.poly(n + j)).collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(k + 1);
    rows.push(polys.clone());
    for node in nodes {
        let mut row = Vec::with_capacity(k + 1);
        for j in 0..=k as u64 {
            row.push(Polynomial::constant(seq.value_at(n + j, node)?));
        }
        rows.push(row);
    }
    let numerator = det_exact(&PolyMatrix::from_rows(rows)?)?;
    let mut annihilator = Polynomial::one();
    for node in nodes {
        annihilator = &annihilator * &Polynomial::from_coeffs(vec![
            -&node.at,
            GaussianRational::one(),
        ]);
    }
    let q = numerator.exact_div(&annihilator)?;
    if (&q * &annihilator) != numerator {
        return Err(Error::InternalInconsistency(
            "Christoffel division round-trip failed".into(),
        ));
    }
    let phi = phi_general(seq, nodes, n)?;
    let degenerate = phi.is_zero();
    if !degenerate {
        // leading-coefficient law: lambda^Q_n = (-1)^k lambda^P_{n+k} Phi_n
        let last_lc = polys[k].leading_coefficient().cloned().unwrap_or_default();
        let expected = &(&sign_pow(k as i64) * &last_lc) * &phi;
        if q.degree() != Some(n as usize)
            || q.leading_coefficient() != Some(&expected)
        {
            return Err(Error::InternalInconsistency(format!(
                "leading-coefficient law fails at n={n}: q={q}, Phi_n={phi}"
            )));
        }
    }
    Ok(ChristoffelStep { q, phi, degenerate })
}

/// Dual determinant for Charlier: an (m+1) x (m+1) determinant over the
/// involuted set G = I(F), m = |G|, with first row
/// (-1)^{j-1} c^a_{n-j+1}(x - max F - 1) and constant rows
/// c^{-a}_{g_i}(-n+j-2).
pub fn qtilde_charlier(
    set: &FiniteSet,
    a: &GaussianRational,
    n: u64,
) -> Result<Polynomial, Error> {
    if a.is_zero() {
        return Err(Error::InvalidParams("Charlier parameter a must be nonzero".into()));
    }
    let fmax = set.max_elem().ok_or_else(|| {
        Error::EmptyComponent("the dual Charlier determinant needs max F".into())
    })?;
    let g = set.involute();
    let m = g.len();
    let neg_a = -a;
    let shift = int(-(fmax as i64) - 1);
    let mut rows = Vec::with_capacity(m + 1);
    let mut first = Vec::with_capacity(m + 1);
    for j in 0..=m as u64 {
        first.push(if n >= j {
            charlier(n - j, a)?.shift(&shift).scale(&sign_pow(j as i64))
        } else {
            Polynomial::zero()
        });
    }
    rows.push(first);
    for &gi in g.elems() {
        let base = charlier(gi, &neg_a)?;
        let row = (0..=m as u64)
            .map(|j| Polynomial::constant(base.eval(&int(-(n as i64) + j as i64 - 1))))
            .collect();
        rows.push(row);
    }
    det_exact(&PolyMatrix::from_rows(rows)?)
}

/// Dual determinant for Meixner over (G1, G2) = (I(F1), I(F2)) with the
/// shifted parameter ct = c + max F1 + max F2 + 2: first row
/// m^{a,ct}_{n-j+1}(x - max F1 - 1)/(a-1)^{j-1}, constant rows
/// m^{a,2-ct}_g(-n+j-2) for g in G1 and m^{1/a,2-ct}_g(-n+j-2)/a^{j-1}
/// for g in G2. The (a-1)^{j-1} column scaling in the first row is
/// forced by proportionality with the Christoffel transform; without it
/// the two sides disagree below the leading coefficient for every n >= 1.
pub fn qtilde_meixner(
    f1: &FiniteSet,
    f2: &FiniteSet,
    a: &GaussianRational,
    c: &GaussianRational,
    n: u64,
) -> Result<Polynomial, Error> {
    if a.is_zero() || a.is_one() {
        return Err(Error::InvalidParams("Meixner parameter a must avoid 0 and 1".into()));
    }
    let max1 = f1.max_elem().ok_or_else(|| {
        Error::EmptyComponent("the dual Meixner determinant needs max F1".into())
    })?;
    let max2 = f2.max_elem().ok_or_else(|| {
        Error::EmptyComponent("the dual Meixner determinant needs max F2".into())
    })?;
    let c_tilde = c + &int(max1 as i64 + max2 as i64 + 2);
    let c_dual = &int(2) - &c_tilde;
    let g1 = f1.involute();
    let g2 = f2.involute();
    let m = g1.len() + g2.len();
    let a_inv = a.inv()?;
    let shift = int(-(max1 as i64) - 1);

    let a_minus_one_inv = (a - &GaussianRational::one()).inv()?;
    let mut rows = Vec::with_capacity(m + 1);
    let mut first = Vec::with_capacity(m + 1);
    for j in 0..=m as u64 {
        first.push(if n >= j {
            let col_scale = a_minus_one_inv.pow_i64(j as i64).expect("nonzero base");
            meixner(n - j, a, &c_tilde)?.shift(&shift).scale(&col_scale)
        } else {
            Polynomial::zero()
        });
    }
    rows.push(first);
    for &gi in g1.elems() {
        let base = meixner(gi, a, &c_dual)?;
        let row = (0..=m as u64)
            .map(|j| Polynomial::constant(base.eval(&int(-(n as i64) + j as i64 - 1))))
            .collect();
        rows.push(row);
    }
    for &gi in g2.elems() {
        let base = meixner(gi, &a_inv, &c_dual)?;
        let row = (0..=m as u64)
            .map(|j| {
                let v = base.eval(&int(-(n as i64) + j as i64 - 1));
                Polynomial::constant(&v * &a_inv.pow_i64(j as i64).expect("nonzero a"))
            })
            .collect();
        rows.push(row);
    }
    det_exact(&PolyMatrix::from_rows(rows)?)
}

/// The proportionality constant between the Christoffel transform and the
/// dual Charlier determinant:
/// gamma_n = (-1)^k (-a)^{kn - w_F} prod_F f! / prod_{i=1..k} (n+i)!
///           * C^a_F(n) / C^{-a}_{I(F)}(-n).
pub fn gamma_charlier(
    set: &FiniteSet,
    a: &GaussianRational,
    n: u64,
) -> Result<GaussianRational, Error> {
    let k = set.len() as u64;
    let caso = casorati_charlier(set, a)?;
    let dual = casorati_charlier(&set.involute(), &-a)?;
    let den = dual.eval(&int(-(n as i64)));
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let w = set.weight() as i64;
    let mut gamma = sign_pow(k as i64);
    gamma = &gamma * &(-a).pow_i64(k as i64 * n as i64 - w)?;
    gamma = &gamma * &GaussianRational::from_rational(set.factorial_product());
    for i in 1..=k {
        gamma = &gamma * &inv_factorial(n + i);
    }
    gamma = &gamma * &caso.eval(&int(n as i64));
    gamma = &gamma * &den.inv()?;
    Ok(gamma)
}

/// Verifies q_n = gamma_n * qtilde_n as exact polynomial identities for
/// Charlier, with gamma_n from its closed formula.
pub fn proportionality_check_charlier(
    set: &FiniteSet,
    a: &GaussianRational,
    n_max: u64,
) -> Result<VerificationReport, Error> {
    let mut report = VerificationReport::new(
        "christoffel-proportionality:charlier",
        format!("F={set}; a={a}; n_max={n_max}"),
    );
    if set.is_empty() {
        report.skip("empty node set: the transform is the identity and the dual determinant needs max F");
        return Ok(report);
    }
    let seq = SequenceProvider::new(FamilyId::Charlier, ParamSet::new().with("a", a.clone()));
    let nodes = direct_nodes(set);
    let mut checked = 0u64;
    for n in 0..=n_max {
        let step = christoffel_q(&seq, &nodes, n)?;
        if step.degenerate {
            report.note(format!("n={n}: skipped (Phi_n = 0)"));
            continue;
        }
        let gamma = match gamma_charlier(set, a, n) {
            Ok(g) => g,
            Err(Error::ZeroDenominator) => {
                report.note(format!("n={n}: skipped (dual Casoratian vanishes at -n)"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let expected = qtilde_charlier(set, a, n)?.scale(&gamma);
        if step.q != expected {
            report.fail(&step.q, &expected, format!("proportionality fails at n={n}"));
        } else {
            checked += 1;
        }
    }
    report.note(format!("proportionality (0 <= n <= {n_max}): {checked} cases agree"));
    Ok(report)
}

/// Verifies q_n is proportional to qtilde_n for Meixner, with gamma_n taken
/// as the ratio of leading coefficients (no closed form exists).
pub fn proportionality_check_meixner(
    f1: &FiniteSet,
    f2: &FiniteSet,
    a: &GaussianRational,
    c: &GaussianRational,
    n_max: u64,
) -> Result<VerificationReport, Error> {
    let mut report = VerificationReport::new(
        "christoffel-proportionality:meixner",
        format!("F=({f1},{f2}); a={a}; c={c}; n_max={n_max}"),
    );
    if f1.is_empty() || f2.is_empty() {
        report.skip("empty component: the dual determinant needs max of both components");
        return Ok(report);
    }
    let seq = SequenceProvider::new(
        FamilyId::Meixner,
        ParamSet::new().with("a", a.clone()).with("c", c.clone()),
    );
    let nodes = meixner_nodes(f1, f2, c);
    let mut checked = 0u64;
    for n in 0..=n_max {
        let step = christoffel_q(&seq, &nodes, n)?;
        if step.degenerate {
            report.note(format!("n={n}: skipped (Phi_n = 0)"));
            continue;
        }
        let qt = qtilde_meixner(f1, f2, a, c, n)?;
        let (Some(q_lc), Some(qt_lc)) = (step.q.leading_coefficient(), qt.leading_coefficient())
        else {
            report.fail(&step.q, &qt, format!("a side vanished identically at n={n}"));
            continue;
        };
        if qt.degree() != step.q.degree() {
            report.fail(&step.q, &qt, format!("degree mismatch at n={n}"));
            continue;
        }
        let gamma = q_lc.div(qt_lc)?;
        if step.q != qt.scale(&gamma) {
            report.fail(&step.q, qt.scale(&gamma), format!("proportionality fails at n={n}"));
        } else {
            checked += 1;
        }
    }
    report.note(format!("proportionality (0 <= n <= {n_max}): {checked} cases agree"));
    Ok(report)
}

/// Cross-multiplied form of the ratio law
/// C^a_F(n+1)/C^a_F(n) = C^{-a}_{I(F)}(-n-1)/C^{-a}_{I(F)}(-n),
/// plus its n=0 base case C^a_F(0) = (-1)^{w_F} C^{-a}_{I(F)}(0).
pub fn ratio_identity_check(
    set: &FiniteSet,
    a: &GaussianRational,
    n_max: u64,
) -> Result<VerificationReport, Error> {
    if !set.is_positive() {
        return Err(Error::InvalidParams(
            "the ratio law needs min F >= 1 so that I is an involution".into(),
        ));
    }
    let mut report = VerificationReport::new(
        "casoratian-ratio-law",
        format!("F={set}; a={a}; n_max={n_max}"),
    );
    let caso = casorati_charlier(set, a)?;
    let dual = casorati_charlier(&set.involute(), &-a)?;

    let lhs = caso.eval(&GaussianRational::zero());
    let rhs = &sign_pow(set.weight() as i64) * &dual.eval(&GaussianRational::zero());
    let out = if lhs == rhs { Ok(()) } else { mismatch(&lhs, &rhs, "n=0".into()) };
    record(&mut report, "origin-value relation", "n=0", out);

    let out = (0..=n_max).try_for_each(|n| {
        let ni = n as i64;
        let lhs = &caso.eval(&int(ni + 1)) * &dual.eval(&int(-ni));
        let rhs = &caso.eval(&int(ni)) * &dual.eval(&int(-ni - 1));
        if lhs == rhs { Ok(()) } else { mismatch(&lhs, &rhs, format!("n={n}")) }
    });
    record(&mut report, "cross-multiplied ratio law", &format!("0 <= n <= {n_max}"), out);
    Ok(report)
}
