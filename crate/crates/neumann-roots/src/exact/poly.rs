//! Univariate polynomials over the rationals, ascending coefficient order.

use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Coefficients ascending by degree; the zero polynomial stores no
/// coefficients and the leading coefficient is otherwise nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// x - r
    pub fn linear_root(r: &Rational) -> Self {
        Self::from_coeffs(vec![-r.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coefficient().unwrap() / &lead;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let mut coeffs = rem.coeffs;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                let val = &coeffs[shift + k] - &factor * c;
                coeffs[shift + k] = val;
            }
            rem = Self::from_coeffs(coeffs);
        }
        (Self::from_coeffs(quot), rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        match a.leading_coefficient() {
            Some(lc) => {
                let inv = Rational::one() / lc;
                a.scale(&inv)
            }
            None => a,
        }
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = crate::exact::format_rational(c);
            let (sign, mag) = match body.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", body),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != "1" {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn p(cs: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn trims_leading_zeros() {
        let q = UnivariatePolynomial::from_coeffs(vec![rat(1), rat(0), rat(0)]);
        assert_eq!(q.degree(), Some(0));
    }

    #[test]
    fn division_identity() {
        let a = p(&[2, -3, 0, 1]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_of_shared_root() {
        // (x-1)(x-2) and (x-1)(x+5) share x-1.
        let a = p(&[2, -3, 1]);
        let b = p(&[-5, 4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn eval_horner() {
        let a = p(&[3, -1, 1]); // x^2 - x + 3
        assert_eq!(a.eval(&ratio(1, 2)), ratio(11, 4));
    }

    #[test]
    fn display_readable() {
        assert_eq!(p(&[2, -3, 1]).to_string(), "x^2 - 3*x + 2");
        assert_eq!(UnivariatePolynomial::zero().to_string(), "0");
    }
}
