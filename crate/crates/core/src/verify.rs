//! Invariance checks for the determinant calculus: the determinant built
//! over a set tuple F is compared, coefficient by coefficient, with the
//! determinant built over the involuted tuple I(F) under an explicit sign,
//! parameter shift, and change of variable.
//!
//!   Charlier:  C^a_{F,x}       = (-1)^{w_F} C^{-a}_{I(F),-x}
//!   Hermite:   H_{F,x}         = i^{w_F} H_{I(F),-ix}
//!   Meixner:   M^{a,c}_{F,x}   = (-1)^{w_F} M^{a,c'}_{I(F),-x},     c' = -c-m1-m2
//!   Laguerre:  L^{alpha}_{F,x} = (-1)^{w_F} L^{alpha'}_{I(F),-x},   alpha' = -alpha-m1-m2-2
//!   Hahn:      normalized, epsilon = (-1)^{deg LHS}, x -> -x, with
//!              (alpha', beta', N') = (-alpha-m1-m2-2, -beta-m1+m2, -N+m1+m3)
//!   Jacobi:    normalized, same x, (alpha', beta') = (-alpha-m1-m2-2, -beta-m1+m2)
//!
//! where m_i is the largest element of the i-th component. Charlier and
//! Hermite need no parameter shift, so empty sets are legitimate inputs
//! there (both sides are 1). The other four consume the largest element of
//! every component and refuse empty ones with `EmptyComponent`; sweeps
//! count such tuples as skipped. Normalized comparisons whose closed-form
//! leading coefficient vanishes on either side are skipped as degenerate,
//! since the sign convention is tied to a degree that no longer exists.
//!
//! Every passing comparison is re-evaluated at three pseudo-random rational
//! points (seeded from the inputs, so runs are reproducible) as a guard
//! against a bug in the coefficient comparison itself.

use crate::builders::{
    casorati_charlier, quasi_casorati_hahn, quasi_casorati_meixner, quasi_wronskian_jacobi,
    quasi_wronskian_laguerre, wronskian_hermite,
};
use crate::error::Error;
use crate::families::ParamSet;
use crate::poly::Polynomial;
use crate::report::{Status, VerificationReport};
use crate::scalar::{i_power, sign_pow, GaussianRational};
use crate::sets::{FiniteSet, SetTuple};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

/// The six invariance statements, one per family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    CharlierInv,
    HermiteInv,
    MeixnerInv,
    LaguerreInv,
    HahnInv,
    JacobiInv,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::CharlierInv,
        TheoremId::HermiteInv,
        TheoremId::MeixnerInv,
        TheoremId::LaguerreInv,
        TheoremId::HahnInv,
        TheoremId::JacobiInv,
    ];

    /// Number of components in an admissible set tuple.
    pub fn arity(self) -> usize {
        match self {
            TheoremId::CharlierInv | TheoremId::HermiteInv => 1,
            TheoremId::MeixnerInv | TheoremId::LaguerreInv | TheoremId::JacobiInv => 2,
            TheoremId::HahnInv => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TheoremId::CharlierInv => "charlier",
            TheoremId::HermiteInv => "hermite",
            TheoremId::MeixnerInv => "meixner",
            TheoremId::LaguerreInv => "laguerre",
            TheoremId::HahnInv => "hahn",
            TheoremId::JacobiInv => "jacobi",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem '{s}'")))
    }
}

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// p(-x).
fn reflect(p: &Polynomial) -> Polynomial {
    p.compose_affine(&int(-1), &int(0))
}

fn require_max(set: &FiniteSet, label: &str) -> Result<i64, Error> {
    set.max_elem().map(|m| m as i64).ok_or_else(|| {
        Error::EmptyComponent(format!(
            "component {label} is empty; its largest element sets the transformed parameter"
        ))
    })
}

/// Coefficientwise comparison plus the random-point re-check on success.
fn compare(report: &mut VerificationReport, lhs: &Polynomial, rhs: &Polynomial) -> Result<(), Error> {
    report.lhs = lhs.to_string();
    report.rhs = rhs.to_string();
    if lhs != rhs {
        report.fail(lhs, rhs, "coefficient mismatch between the two routes");
        return Ok(());
    }
    let degree = lhs.degree().map_or("-".to_string(), |d| d.to_string());
    report.note(format!("coefficientwise equal, degree {degree}"));
    spot_check(report, lhs, rhs)
}

/// Re-evaluates both sides at three reproducible pseudo-random rational
/// points; any disagreement after a successful coefficient comparison is a
/// calculator bug, not a property of the inputs.
fn spot_check(
    report: &mut VerificationReport,
    lhs: &Polynomial,
    rhs: &Polynomial,
) -> Result<(), Error> {
    let mut hasher = DefaultHasher::new();
    report.theorem.hash(&mut hasher);
    report.inputs.hash(&mut hasher);
    let mut rng = rand::rngs::StdRng::seed_from_u64(hasher.finish());
    for _ in 0..3 {
        let x = GaussianRational::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        if lhs.eval(&x) != rhs.eval(&x) {
            return Err(Error::InternalInconsistency(format!(
                "sides disagree at x={x} after a successful coefficient comparison"
            )));
        }
    }
    report.note("re-evaluation at 3 random rational points: exact agreement");
    Ok(())
}

/// Checks one invariance statement for the given tuple and parameters.
///
/// Empty components are an `EmptyComponent` error wherever a largest element
/// is consumed by the parameter shift; degenerate normalizations and other
/// in-domain obstructions come back as a skipped report, never an error.
pub fn verify_invariance(
    t: TheoremId,
    sets: &SetTuple,
    params: &ParamSet,
) -> Result<VerificationReport, Error> {
    if sets.arity() != t.arity() {
        return Err(Error::InvalidParams(format!(
            "{t} invariance takes {} component(s), got {}",
            t.arity(),
            sets.arity()
        )));
    }
    let inputs = if params.is_empty() {
        format!("F={sets}")
    } else {
        format!("F={sets}; {params}")
    };
    let mut report = VerificationReport::new(format!("invariance:{t}"), inputs);
    let comps = sets.components();
    let w = sets.weight() as i64;
    match t {
        TheoremId::CharlierInv => {
            let a = params.get("a")?.clone();
            let f = &comps[0];
            let lhs = casorati_charlier(f, &a)?;
            if f.contains(0) {
                let reduced = f.downarrow();
                let via_reduction = casorati_charlier(&reduced, &a)?;
                if via_reduction == lhs {
                    report.note(format!("reduction route through {reduced} agrees"));
                } else {
                    report.fail(
                        &lhs,
                        &via_reduction,
                        format!("reduction route through {reduced} disagrees"),
                    );
                }
            }
            let mirrored = casorati_charlier(&f.involute(), &-&a)?;
            let rhs = reflect(&mirrored).scale(&sign_pow(w));
            compare(&mut report, &lhs, &rhs)?;
        }
        TheoremId::HermiteInv => {
            let f = &comps[0];
            let lhs = wronskian_hermite(f);
            let mirrored = wronskian_hermite(&f.involute());
            let rhs = mirrored.compose_affine(&-&GaussianRational::i(), &int(0)).scale(&i_power(w));
            compare(&mut report, &lhs, &rhs)?;
        }
        TheoremId::MeixnerInv => {
            let a = params.get("a")?.clone();
            let c = params.get("c")?.clone();
            let (f1, f2) = (&comps[0], &comps[1]);
            let (m1, m2) = (require_max(f1, "F1")?, require_max(f2, "F2")?);
            let lhs = quasi_casorati_meixner(f1, f2, &a, &c)?;
            let c_shift = -&(&c + &int(m1 + m2));
            let mirrored = quasi_casorati_meixner(&f1.involute(), &f2.involute(), &a, &c_shift)?;
            let rhs = reflect(&mirrored).scale(&sign_pow(w));
            compare(&mut report, &lhs, &rhs)?;
        }
        TheoremId::LaguerreInv => {
            let alpha = params.get("alpha")?.clone();
            let (f1, f2) = (&comps[0], &comps[1]);
            let (m1, m2) = (require_max(f1, "F1")?, require_max(f2, "F2")?);
            let lhs = quasi_wronskian_laguerre(f1, f2, &alpha);
            let alpha_shift = -&(&alpha + &int(m1 + m2 + 2));
            let mirrored = quasi_wronskian_laguerre(&f1.involute(), &f2.involute(), &alpha_shift);
            let rhs = reflect(&mirrored).scale(&sign_pow(w));
            compare(&mut report, &lhs, &rhs)?;
        }
        TheoremId::HahnInv => {
            let alpha = params.get("alpha")?.clone();
            let beta = params.get("beta")?.clone();
            let big_n = params.get("N")?.clone();
            let (f1, f2, f3) = (&comps[0], &comps[1], &comps[2]);
            let m1 = require_max(f1, "F1")?;
            let m2 = require_max(f2, "F2")?;
            let m3 = require_max(f3, "F3")?;
            let lhs = quasi_casorati_hahn(f1, f2, f3, &alpha, &beta, &big_n)?;
            let alpha_shift = -&(&alpha + &int(m1 + m2 + 2));
            let beta_shift = &-&(&beta + &int(m1)) + &int(m2);
            let n_shift = &-&big_n + &int(m1 + m3);
            let mirrored = quasi_casorati_hahn(
                &f1.involute(),
                &f2.involute(),
                &f3.involute(),
                &alpha_shift,
                &beta_shift,
                &n_shift,
            )?;
            if lhs.degenerate || mirrored.degenerate {
                let side = if lhs.degenerate { "left" } else { "right" };
                report.skip(format!(
                    "{side} normalizer vanishes; the sign is tied to a degree that no longer exists"
                ));
            } else {
                // epsilon = (-1)^r with r the degree of the left side
                let r = lhs.normalized.degree().unwrap_or(0) as i64;
                let rhs = reflect(&mirrored.normalized).scale(&sign_pow(r));
                compare(&mut report, &lhs.normalized, &rhs)?;
            }
        }
        TheoremId::JacobiInv => {
            let alpha = params.get("alpha")?.clone();
            let beta = params.get("beta")?.clone();
            let (f1, f2) = (&comps[0], &comps[1]);
            let (m1, m2) = (require_max(f1, "F1")?, require_max(f2, "F2")?);
            let lhs = quasi_wronskian_jacobi(f1, f2, &alpha, &beta)?;
            let alpha_shift = -&(&alpha + &int(m1 + m2 + 2));
            let beta_shift = &-&(&beta + &int(m1)) + &int(m2);
            let mirrored =
                quasi_wronskian_jacobi(&f1.involute(), &f2.involute(), &alpha_shift, &beta_shift)?;
            if lhs.degenerate || mirrored.degenerate {
                let side = if lhs.degenerate { "left" } else { "right" };
                report.skip(format!("{side} normalizer vanishes; nothing to compare"));
            } else {
                // no sign and no reflection here: the identity is in the same variable
                compare(&mut report, &lhs.normalized, &mirrored.normalized)?;
            }
        }
    }
    Ok(report)
}

/// Aggregate outcome of a sweep, with the failing inputs kept in canonical
/// order for diagnosis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub theorem: String,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn is_clean(&self) -> bool {
        self.fail == 0
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} pass, {} fail, {} skipped",
            self.theorem, self.pass, self.fail, self.skipped
        )
    }
}

/// All subsets of `{lo..=hi}` with at most `size_bound` elements, in
/// bitmask order (the canonical enumeration order for sweeps).
pub fn subsets_in_range(lo: u64, hi: u64, size_bound: usize) -> Vec<FiniteSet> {
    if lo > hi {
        return vec![FiniteSet::empty()];
    }
    let universe: Vec<u64> = (lo..=hi).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << universe.len() {
        if (mask.count_ones() as usize) > size_bound {
            continue;
        }
        let elems: Vec<u64> = universe
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        out.push(FiniteSet::new(elems).expect("strictly increasing by construction"));
    }
    out
}

/// Runs one invariance statement over every tuple with components drawn
/// from the subsets of `{lo..=hi}` of size at most `size_bound`, crossed
/// with every grid point. Tuples with empty components where the statement
/// needs a largest element are counted as skipped. Cases run in parallel;
/// the counts and the failure list follow the canonical enumeration order.
pub fn sweep_range(
    t: TheoremId,
    lo: u64,
    hi: u64,
    size_bound: usize,
    grid: &[ParamSet],
) -> Result<SweepSummary, Error> {
    let default_grid = [ParamSet::new()];
    let grid: &[ParamSet] = if grid.is_empty() { &default_grid } else { grid };
    let pool = subsets_in_range(lo, hi, size_bound);
    let arity = t.arity();
    let n = pool.len();
    let mut cases = Vec::new();
    for tuple_index in 0..n.pow(arity as u32) {
        let mut idx = tuple_index;
        let mut comps = vec![FiniteSet::empty(); arity];
        for slot in (0..arity).rev() {
            comps[slot] = pool[idx % n].clone();
            idx /= n;
        }
        let tuple = SetTuple::new(comps);
        for params in grid {
            cases.push((tuple.clone(), params));
        }
    }
    let outcomes: Vec<Result<Option<Status>, Error>> = cases
        .par_iter()
        .map(|(tuple, params)| match verify_invariance(t, tuple, params) {
            Ok(report) => Ok(Some(report.status)),
            Err(Error::EmptyComponent(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    let mut summary = SweepSummary {
        theorem: format!("invariance:{t}"),
        pass: 0,
        fail: 0,
        skipped: 0,
        failures: Vec::new(),
    };
    for (outcome, (tuple, params)) in outcomes.into_iter().zip(&cases) {
        match outcome? {
            Some(Status::Pass) => summary.pass += 1,
            Some(Status::Fail) => {
                summary.fail += 1;
                summary.failures.push(format!("F={tuple}; {params}"));
            }
            Some(Status::SkippedDegenerate) | None => summary.skipped += 1,
        }
    }
    Ok(summary)
}

/// Sweep over subsets of `{0..=element_bound}`.
pub fn sweep(
    t: TheoremId,
    element_bound: u64,
    size_bound: usize,
    grid: &[ParamSet],
) -> Result<SweepSummary, Error> {
    sweep_range(t, 0, element_bound, size_bound, grid)
}
