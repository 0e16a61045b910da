//! Sparse multivariate polynomials over the positive gap variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("gap values must all be strictly positive")]
    NonPositiveGap,
    #[error("gap vector has length {got}, expected {expected}")]
    WrongArity { expected: usize, got: usize },
}

/// Integer-coefficient polynomial in the gap variables g1..g_{gap_count}.
/// Exponent vectors are dense; no zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPolynomial {
    gap_count: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl GapPolynomial {
    pub fn zero(gap_count: usize) -> Self {
        Self {
            gap_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gap_count: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; gap_count], c);
        }
        Self { gap_count, terms }
    }

    /// The single variable g_{k+1} (0-based k).
    pub fn gap(gap_count: usize, k: usize) -> Self {
        assert!(k < gap_count, "gap index out of range");
        let mut exp = vec![0u32; gap_count];
        exp[k] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigInt::one());
        Self { gap_count, terms }
    }

    /// g_{lo+1} + ... + g_{hi}: the difference of two prefix sums.
    pub fn gap_range_sum(gap_count: usize, lo: usize, hi: usize) -> Self {
        let mut acc = Self::zero(gap_count);
        for k in lo..hi {
            acc = acc.add(&Self::gap(gap_count, k));
        }
        acc
    }

    pub fn gap_count(&self) -> usize {
        self.gap_count
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u32>, BigInt>, exp: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.gap_count, other.gap_count, "gap arity mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        Self {
            gap_count: self.gap_count,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            gap_count: self.gap_count,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.gap_count, other.gap_count, "gap arity mismatch");
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, exp, ca * cb);
            }
        }
        Self {
            gap_count: self.gap_count,
            terms,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.gap_count);
        }
        Self {
            gap_count: self.gap_count,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// True when every coefficient is strictly positive (and there is one).
    pub fn all_coefficients_positive(&self) -> bool {
        !self.terms.is_empty() && self.terms.values().all(Signed::is_positive)
    }

    pub fn all_coefficients_negative(&self) -> bool {
        !self.terms.is_empty() && self.terms.values().all(Signed::is_negative)
    }

    /// Sum of all coefficients = value at g = (1, ..., 1).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact evaluation at strictly positive rational gaps.
    pub fn evaluate(&self, gaps: &[Rational]) -> Result<Rational, GapError> {
        if gaps.len() != self.gap_count {
            return Err(GapError::WrongArity {
                expected: self.gap_count,
                got: gaps.len(),
            });
        }
        if gaps.iter().any(|g| !g.is_positive()) {
            return Err(GapError::NonPositiveGap);
        }
        Ok(self.evaluate_unchecked(gaps))
    }

    fn evaluate_unchecked(&self, gaps: &[Rational]) -> Rational {
        // Power cache per variable up to its maximum exponent.
        let mut max_exp = vec![0u32; self.gap_count];
        for e in self.terms.keys() {
            for (m, &x) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(x);
            }
        }
        let powers: Vec<Vec<Rational>> = gaps
            .iter()
            .zip(&max_exp)
            .map(|(g, &m)| {
                let mut ps = Vec::with_capacity(m as usize + 1);
                ps.push(Rational::one());
                for _ in 0..m {
                    ps.push(ps.last().unwrap() * g);
                }
                ps
            })
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= &powers[k][x as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Integer evaluation at strictly positive integer gaps; used by the
    /// sign sampler where full rational arithmetic is unnecessary.
    pub fn evaluate_int(&self, gaps: &[i64]) -> BigInt {
        assert_eq!(gaps.len(), self.gap_count);
        let mut max_exp = vec![0u32; self.gap_count];
        for e in self.terms.keys() {
            for (m, &x) in max_exp.iter_mut().zip(e) {
                *m = (*m).max(x);
            }
        }
        let powers: Vec<Vec<BigInt>> = gaps
            .iter()
            .zip(&max_exp)
            .map(|(&g, &m)| {
                let g = BigInt::from(g);
                let mut ps = Vec::with_capacity(m as usize + 1);
                ps.push(BigInt::one());
                for _ in 0..m {
                    ps.push(ps.last().unwrap() * &g);
                }
                ps
            })
            .collect();
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= &powers[k][x as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact division by a divisor with an invertible-free leading term is
    /// not generally possible over the integers, so this attempts division
    /// and returns the quotient only when the remainder is exactly zero.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.gap_count, divisor.gap_count, "gap arity mismatch");
        if divisor.is_zero() {
            return None;
        }
        // Leading term under the map's ordering (graded comparison is not
        // required for single-divisor division to terminate).
        let (lead_exp, lead_coeff) = divisor
            .terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        // Loop until the remainder is zero (exact division).
        while let Some((re, rc)) = rem
            .terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            if re.iter().zip(&lead_exp).any(|(a, b)| a < b) {
                return None; // leading term not divisible
            }
            let (q, r) = num_integer::div_rem(rc, lead_coeff.clone());
            if !r.is_zero() {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
            let mut mono = BTreeMap::new();
            mono.insert(qe.clone(), q.clone());
            let mono = Self {
                gap_count: self.gap_count,
                terms: mono,
            };
            rem = rem.sub(&mono.mul(divisor));
            Self::insert_term(&mut quot, qe, q);
        }
        Some(Self {
            gap_count: self.gap_count,
            terms: quot,
        })
    }
}

/// Graded lexicographic comparison of exponent vectors.
pub(crate) fn grlex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl fmt::Display for GapPolynomial {
    /// Terms in descending graded-lex order, e.g. "2*g1^2*g2 - g3 + 1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        items.sort_by(|a, b| grlex(b.0, a.0));
        let mut first = true;
        for (exp, c) in items {
            let mag = c.magnitude().to_string();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (k, &x) in exp.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("g{}", k + 1)),
                    _ => factors.push(format!("g{}^{}", k + 1, x)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
