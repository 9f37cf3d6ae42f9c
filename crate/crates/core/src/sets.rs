//! Finite sets of nonnegative integers and the combinatorics attached to
//! them: the weight `w_F = sum(F) - C(k,2)`, the involution
//! `I(F) = {0..max F} \ {max F - f : f in F}`, the reduction of a set to an
//! equivalent positive set, Vandermonde products and node annihilators.

use crate::error::Error;
use crate::poly::Polynomial;
use crate::scalar::{factorial, GaussianRational, Rational};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;
use std::str::FromStr;

/// Strictly increasing finite set of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FiniteSet {
    elems: Vec<u64>,
}

impl FiniteSet {
    /// Requires strictly increasing elements; rejects unsorted or duplicated
    /// input instead of repairing it.
    pub fn new(elems: Vec<u64>) -> Result<Self, Error> {
        for w in elems.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidSet(format!(
                    "elements must be strictly increasing, got {w:?}"
                )));
            }
        }
        Ok(FiniteSet { elems })
    }

    pub fn empty() -> Self {
        FiniteSet::default()
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn max_elem(&self) -> Option<u64> {
        self.elems.last().copied()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.elems.binary_search(&v).is_ok()
    }

    pub fn sum(&self) -> u64 {
        self.elems.iter().sum()
    }

    /// `w_F = sum(F) - C(k, 2)`; nonnegative for any strictly increasing set.
    pub fn weight(&self) -> u64 {
        let k = self.elems.len() as u64;
        self.sum() - k * k.saturating_sub(1) / 2
    }

    /// `I(F) = {0, ..., max F} \ {max F - f : f in F}`, with `I({}) = {}`.
    /// An involution on sets of positive integers.
    pub fn involute(&self) -> FiniteSet {
        let Some(max) = self.max_elem() else {
            return FiniteSet::empty();
        };
        let mut removed = vec![false; (max + 1) as usize];
        for &f in &self.elems {
            removed[(max - f) as usize] = true;
        }
        let elems = (0..=max).filter(|&v| !removed[v as usize]).collect();
        FiniteSet { elems }
    }

    /// `0 not in F`.
    pub fn is_positive(&self) -> bool {
        !self.contains(0)
    }

    /// `F == {1, 2, ..., k}`.
    pub fn is_initial_segment(&self) -> bool {
        self.elems.iter().enumerate().all(|(i, &f)| f == i as u64 + 1)
    }

    /// The split index `s_F` of a set of positive integers: 1 for the empty
    /// set, `k+1` for `{1..k}`, otherwise the least `s >= 1` with `s < f_s`.
    pub fn s_index(&self) -> Result<u64, Error> {
        if !self.is_positive() {
            return Err(Error::InvalidSet(format!("s index needs a positive set, got {self}")));
        }
        if self.is_initial_segment() {
            return Ok(self.elems.len() as u64 + 1);
        }
        for (i, &f) in self.elems.iter().enumerate() {
            let s = i as u64 + 1;
            if s < f {
                return Ok(s);
            }
        }
        unreachable!("a positive set that is not {{1..k}} has an index with s < f_s")
    }

    /// Reduction to a positive set: drops 0 (for such sets the result keeps
    /// the involute and the weight), maps `{1..k}` to the empty set, and
    /// otherwise shifts the tail `{f_s - s, ..., f_k - s}` at the split
    /// index `s = s_F`.
    pub fn downarrow(&self) -> FiniteSet {
        if !self.is_positive() {
            let tail = FiniteSet { elems: self.elems[1..].to_vec() };
            return tail.downarrow();
        }
        if self.is_initial_segment() {
            return FiniteSet::empty();
        }
        let s = self.s_index().expect("positive set");
        let elems = self.elems[(s - 1) as usize..].iter().map(|&f| f - s).collect();
        FiniteSet { elems }
    }

    /// Vandermonde product `prod_{i<j} (f_j - f_i)`; 1 for fewer than two
    /// elements.
    pub fn vandermonde(&self) -> Rational {
        let mut acc = BigInt::one();
        for (i, &fi) in self.elems.iter().enumerate() {
            for &fj in &self.elems[i + 1..] {
                acc *= BigInt::from(fj - fi);
            }
        }
        Rational::from(acc)
    }

    /// `prod_{f in F} f!`.
    pub fn factorial_product(&self) -> Rational {
        self.elems.iter().map(|&f| factorial(f)).product()
    }

    /// `prod_{f in F} (x - f)`.
    pub fn annihilator(&self) -> Polynomial {
        let mut acc = Polynomial::one();
        for &f in &self.elems {
            let root = Polynomial::from_coeffs(vec![
                GaussianRational::from_int(-(f as i64)),
                GaussianRational::one(),
            ]);
            acc = &acc * &root;
        }
        acc
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn split_set_literal(s: &str) -> Result<Vec<u64>, Error> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("set literal must be braced, got {s:?}")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad set element {tok:?}: {e}")))
        })
        .collect()
}

/// Strict parse of a set literal like `{}` or `{1,2,5}`: whitespace is
/// ignored but order and multiplicity must already be canonical.
impl FromStr for FiniteSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FiniteSet::new(split_set_literal(s)?)
    }
}

/// Lenient parse for interactive use: sorts and deduplicates, reporting what
/// it changed.
pub fn parse_set_lenient(s: &str) -> Result<(FiniteSet, Vec<String>), Error> {
    let mut elems = split_set_literal(s)?;
    let mut notes = Vec::new();
    if elems.windows(2).any(|w| w[0] > w[1]) {
        elems.sort_unstable();
        notes.push(format!("sorted unordered set literal {s:?}"));
    }
    let before = elems.len();
    elems.dedup();
    if elems.len() != before {
        notes.push(format!("removed {} duplicate element(s) from {s:?}", before - elems.len()));
    }
    Ok((FiniteSet::new(elems)?, notes))
}

/// Tuple of set components, e.g. `(F1, F2)` for the two-parameter families.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct SetTuple {
    components: Vec<FiniteSet>,
}

impl SetTuple {
    pub fn new(components: Vec<FiniteSet>) -> Self {
        SetTuple { components }
    }

    pub fn components(&self) -> &[FiniteSet] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    /// `w_F` summed over the components.
    pub fn weight(&self) -> u64 {
        self.components.iter().map(FiniteSet::weight).sum()
    }

    /// Componentwise involution.
    pub fn involute(&self) -> SetTuple {
        SetTuple { components: self.components.iter().map(FiniteSet::involute).collect() }
    }
}

impl fmt::Display for SetTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elems: &[u64]) -> FiniteSet {
        FiniteSet::new(elems.to_vec()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(FiniteSet::new(vec![2, 1]).is_err());
        assert!(FiniteSet::new(vec![1, 1]).is_err());
        assert!(FiniteSet::new(vec![0, 3, 7]).is_ok());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(set(&[]).weight(), 0);
        assert_eq!(set(&[4]).weight(), 4);
        assert_eq!(set(&[1, 2]).weight(), 2);
        assert_eq!(set(&[2, 3, 5]).weight(), 7);
        assert_eq!(set(&[0, 1, 2]).weight(), 0);
    }

    #[test]
    fn involution_examples() {
        // I({1,2,...,k}) = {k}, I({1,k}) = {1,...,k-2,k}
        assert_eq!(set(&[1, 2, 3, 4]).involute(), set(&[4]));
        assert_eq!(set(&[1, 5]).involute(), set(&[1, 2, 3, 5]));
        assert_eq!(set(&[]).involute(), set(&[]));
        assert_eq!(set(&[0]).involute(), set(&[]));
        assert_eq!(set(&[0, 2]).involute(), set(&[1]));
    }

    #[test]
    fn involution_is_an_involution_on_positive_sets() {
        // Exhaustive over all subsets of {1..8}.
        for mask in 0u32..256 {
            let elems: Vec<u64> = (0..8).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            let f = FiniteSet::new(elems).unwrap();
            let g = f.involute();
            assert_eq!(g.involute(), f, "I(I({f})) != {f}");
            assert_eq!(g.weight(), f.weight(), "weight not invariant for {f}");
            if !f.is_empty() {
                assert_eq!(f.max_elem(), g.max_elem());
                let k = f.len() as u64;
                assert_eq!(g.len() as u64, f.max_elem().unwrap() - k + 1);
            }
        }
    }

    #[test]
    fn split_index_and_downarrow() {
        assert_eq!(set(&[]).s_index().unwrap(), 1);
        assert_eq!(set(&[1, 2, 3]).s_index().unwrap(), 4);
        assert_eq!(set(&[1, 3]).s_index().unwrap(), 2);
        assert_eq!(set(&[2, 3]).s_index().unwrap(), 1);
        assert!(set(&[0, 1]).s_index().is_err());

        assert_eq!(set(&[1, 2, 3]).downarrow(), set(&[]));
        assert_eq!(set(&[1, 3]).downarrow(), set(&[1]));
        assert_eq!(set(&[2, 3]).downarrow(), set(&[1, 2]));
        assert_eq!(set(&[0, 2]).downarrow(), set(&[1]));
        assert_eq!(set(&[0]).downarrow(), set(&[]));
    }

    #[test]
    fn downarrow_preserves_involute_and_weight() {
        // For 0 in F: I(F) = I(F_down) and w_F = w_{F_down}, exhaustively
        // over subsets of {0..7} containing 0.
        for mask in 0u32..128 {
            let mut elems = vec![0u64];
            elems.extend((0..7).filter(|b| mask >> b & 1 == 1).map(|b| b + 1));
            let f = FiniteSet::new(elems).unwrap();
            let down = f.downarrow();
            assert!(down.is_positive());
            assert_eq!(f.involute(), down.involute(), "involute mismatch for {f}");
            assert_eq!(f.weight(), down.weight(), "weight mismatch for {f}");
        }
    }

    #[test]
    fn vandermonde_and_factorials() {
        assert_eq!(set(&[]).vandermonde(), Rational::from(BigInt::from(1)));
        assert_eq!(set(&[3]).vandermonde(), Rational::from(BigInt::from(1)));
        assert_eq!(set(&[1, 3, 4]).vandermonde(), Rational::from(BigInt::from(6)));
        assert_eq!(set(&[1, 3]).factorial_product(), Rational::from(BigInt::from(6)));
    }

    #[test]
    fn vandermonde_factorial_ratio_is_involution_invariant() {
        for mask in 1u32..256 {
            let elems: Vec<u64> = (0..8).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
            let f = FiniteSet::new(elems).unwrap();
            let g = f.involute();
            assert_eq!(
                f.vandermonde() / f.factorial_product(),
                g.vandermonde() / g.factorial_product(),
                "V/prod f! not invariant for {f}"
            );
        }
    }

    #[test]
    fn annihilator_roots() {
        let f = set(&[1, 4]);
        let ann = f.annihilator();
        assert_eq!(ann.degree(), Some(2));
        assert!(ann.eval(&GaussianRational::from_int(1)).is_zero());
        assert!(ann.eval(&GaussianRational::from_int(4)).is_zero());
        assert!(!ann.eval(&GaussianRational::from_int(2)).is_zero());
        assert_eq!(set(&[]).annihilator(), Polynomial::one());
    }

    #[test]
    fn parsing() {
        assert_eq!("{}".parse::<FiniteSet>().unwrap(), set(&[]));
        assert_eq!("{1,2,5}".parse::<FiniteSet>().unwrap(), set(&[1, 2, 5]));
        assert_eq!(" { 1 , 2 } ".parse::<FiniteSet>().unwrap(), set(&[1, 2]));
        assert!("{2,1}".parse::<FiniteSet>().is_err());
        assert!("{1,1}".parse::<FiniteSet>().is_err());
        assert!("1,2".parse::<FiniteSet>().is_err());
        assert!("{1,x}".parse::<FiniteSet>().is_err());

        let (sorted, notes) = parse_set_lenient("{3,1,3}").unwrap();
        assert_eq!(sorted, set(&[1, 3]));
        assert_eq!(notes.len(), 2);
        let (clean, notes) = parse_set_lenient("{1,3}").unwrap();
        assert_eq!(clean, set(&[1, 3]));
        assert!(notes.is_empty());
    }

    #[test]
    fn tuples() {
        let t = SetTuple::new(vec![set(&[1, 2]), set(&[4])]);
        assert_eq!(t.weight(), 2 + 4);
        assert_eq!(t.involute(), SetTuple::new(vec![set(&[2]), set(&[1, 2, 3, 4])]));
        assert_eq!(t.to_string(), "({1,2},{4})");
        assert_eq!(t.arity(), 2);
    }

    #[test]
    fn display_forms() {
        assert_eq!(set(&[]).to_string(), "{}");
        assert_eq!(set(&[0, 2, 9]).to_string(), "{0,2,9}");
    }
}
