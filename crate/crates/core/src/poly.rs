//! Dense integer polynomials in the single variable `z`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coefficients stored lowest degree first with no trailing zeros; the zero
/// polynomial is the empty vector. All arithmetic is checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial(Vec<i64>);

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · z^degree`
    pub fn monomial(c: i64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let len = self.0.len().max(other.0.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                a.checked_add(b)
                    .ok_or(Error::Overflow("polynomial addition"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                let term = a
                    .checked_mul(b)
                    .ok_or(Error::Overflow("polynomial product"))?;
                coeffs[i + j] = coeffs[i + j]
                    .checked_add(term)
                    .ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Multiplies by `z^t`.
    pub fn shift(&self, t: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0; t];
        coeffs.extend_from_slice(&self.0);
        IntPolynomial(coeffs)
    }

    pub fn eval(&self, z: i64) -> Result<i64> {
        self.0.iter().rev().try_fold(0i64, |acc, &c| {
            acc.checked_mul(z)
                .and_then(|v| v.checked_add(c))
                .ok_or(Error::Overflow("polynomial evaluation"))
        })
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let abs = c.unsigned_abs();
            if deg == 0 || abs != 1 {
                write!(f, "{abs}")?;
            }
            match deg {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{deg}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPolynomial(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = IntPolynomial::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1i64, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_str, degree) = match body.find('z') {
                None => (body, 0usize),
                Some(pos) => {
                    let tail = &body[pos + 1..];
                    let degree = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .and_then(|d| d.parse::<usize>().ok())
                            .ok_or_else(bad)?
                    };
                    (&body[..pos], degree)
                }
            };
            let coeff = if coeff_str.is_empty() {
                1
            } else {
                coeff_str
                    .trim_end_matches('*')
                    .parse::<i64>()
                    .map_err(|_| bad())?
            };
            acc = acc.checked_add(&IntPolynomial::monomial(sign * coeff, degree))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::from_coeffs(vec![-1, 0, 3]).to_string(),
            "3z^2-1"
        );
        assert_eq!(IntPolynomial::from_coeffs(vec![-1, 1]).to_string(), "z-1");
        assert_eq!(IntPolynomial::from_coeffs(vec![0, -1]).to_string(), "-z");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::constant(6).to_string(), "6");
    }

    #[test]
    fn parse() {
        let p: IntPolynomial = "3z^2-1".parse().unwrap();
        assert_eq!(p.coeffs(), &[-1, 0, 3]);
        let q: IntPolynomial = "-z + 2".parse().unwrap();
        assert_eq!(q.coeffs(), &[2, -1]);
        assert!("3y".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("z^".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = IntPolynomial::constant(i64::MAX);
        assert_eq!(
            big.checked_add(&big),
            Err(Error::Overflow("polynomial addition"))
        );
        assert!(big.checked_mul(&IntPolynomial::constant(2)).is_err());
        assert!(IntPolynomial::monomial(1, 1).eval(i64::MAX).is_ok());
        assert!(IntPolynomial::monomial(2, 1).eval(i64::MAX).is_err());
    }

    #[test]
    fn shift_and_eval() {
        let p = IntPolynomial::from_coeffs(vec![1, 1]).shift(2);
        assert_eq!(p.coeffs(), &[0, 0, 1, 1]);
        assert_eq!(p.eval(2).unwrap(), 12);
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(coeffs in proptest::collection::vec(-50i64..50, 0..5)) {
            let p = IntPolynomial::from_coeffs(coeffs);
            prop_assert_eq!(p.to_string().parse::<IntPolynomial>().unwrap(), p);
        }

        #[test]
        fn eval_is_ring_homomorphism(
            a in proptest::collection::vec(-20i64..20, 0..4),
            b in proptest::collection::vec(-20i64..20, 0..4),
            z in -5i64..5,
        ) {
            let (a, b) = (IntPolynomial::from_coeffs(a), IntPolynomial::from_coeffs(b));
            prop_assert_eq!(a.checked_mul(&b).unwrap().eval(z).unwrap(), a.eval(z).unwrap() * b.eval(z).unwrap());
            prop_assert_eq!(a.checked_add(&b).unwrap().eval(z).unwrap(), a.eval(z).unwrap() + b.eval(z).unwrap());
        }
    }
}
