//! Monomials as exponent vectors over a fixed number of ambient variables.
//!
//! The derived ordering is lexicographic on exponent vectors, which is the lex
//! monomial order with `x1 > x2 > ... > xn`. Canonical sequences in this crate
//! list monomials from largest to smallest under it.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exponents: Vec<u64>,
}

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exponents: alloc::vec![0; n] }
    }

    /// The variable `x_{index+1}` in `n` variables.
    pub fn variable(index: usize, n: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mut m = Monomial::one(n);
        m.exponents[index] = 1;
        Ok(m)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn into_exponents(self) -> Vec<u64> {
        self.exponents
    }

    /// Number of ambient variables.
    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// `deg_i`; zero for indices past the end.
    pub fn exponent(&self, index: usize) -> u64 {
        self.exponents.get(index).copied().unwrap_or(0)
    }

    /// Total degree. Panics on overflow rather than wrapping.
    pub fn degree(&self) -> u64 {
        self.exponents.iter().try_fold(0u64, |acc, &e| acc.checked_add(e)).expect("monomial degree overflows u64")
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    fn check_len(&self, other: &Monomial) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Monomial) -> Result<Monomial> {
        self.check_len(other)?;
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exponents })
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        let exponents =
            self.exponents.iter().map(|a| a.checked_mul(k).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exponents })
    }

    /// `(x_j / x_i) * self`: decrement entry `i`, increment entry `j`.
    pub fn exchange(&self, i: usize, j: usize) -> Result<Monomial> {
        let n = self.n();
        for index in [i, j] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        if self.exponents[i] == 0 {
            return Err(Error::ZeroExponent { index: i });
        }
        let mut exponents = self.exponents.clone();
        exponents[i] -= 1;
        exponents[j] = exponents[j].checked_add(1).ok_or(Error::Overflow)?;
        Ok(Monomial { exponents })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.n() == other.n() && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    /// `self / divisor` when the quotient is a monomial.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let exponents = self.exponents.iter().zip(&divisor.exponents).map(|(a, b)| a - b).collect();
        Some(Monomial { exponents })
    }

    /// Writes the monomial in variable notation, e.g. `x1*x3^2`, or `1`.
    pub fn display_vars(&self) -> VarsDisplay<'_> {
        VarsDisplay(self)
    }
}

/// The text form used in files: space-separated exponents, e.g. `1 1 1 0`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, e) in self.exponents.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub struct VarsDisplay<'a>(&'a Monomial);

impl fmt::Display for VarsDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn degree_examples() {
        assert_eq!(m(&[1, 1, 1, 0]).degree(), 3);
        assert_eq!(m(&[0, 0, 0, 0]).degree(), 0);
        assert_eq!(m(&[0, 0, 2, 1]).degree(), 3);
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(m(&[1, 1, 1, 0]).multiply(&m(&[1, 0, 2, 0])).unwrap(), m(&[2, 1, 3, 0]));
        let a = m(&[3, 0, 1, 4]);
        assert_eq!(a.multiply(&Monomial::one(4)).unwrap(), a);
        assert_eq!(m(&[0, 2, 1, 0]).multiply(&m(&[0, 0, 2, 1])).unwrap(), m(&[0, 2, 3, 1]));
        assert_eq!(m(&[1, 0]).multiply(&m(&[1, 0, 0])), Err(Error::LengthMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn multiply_overflow_is_an_error() {
        assert_eq!(m(&[u64::MAX]).multiply(&m(&[1])), Err(Error::Overflow));
    }

    #[test]
    fn exchange_examples() {
        // (x2/x1) x1 x3^2 = x2 x3^2
        assert_eq!(m(&[1, 0, 2, 0]).exchange(0, 1).unwrap(), m(&[0, 1, 2, 0]));
        let a = m(&[2, 1, 0]);
        assert_eq!(a.exchange(1, 1).unwrap(), a);
        // (x1/x4) x3^2 x4 = x1 x3^2
        assert_eq!(m(&[0, 0, 2, 1]).exchange(3, 0).unwrap(), m(&[1, 0, 2, 0]));
        assert_eq!(m(&[0, 1]).exchange(0, 1), Err(Error::ZeroExponent { index: 0 }));
        assert!(matches!(m(&[1, 1]).exchange(0, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn ordering_is_lex_with_x1_largest() {
        assert!(m(&[1, 1, 1, 0]) > m(&[1, 0, 2, 0]));
        assert!(m(&[1, 0, 2, 0]) > m(&[0, 2, 1, 0]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(alloc::format!("{}", m(&[1, 0, 2])), "1 0 2");
        assert_eq!(alloc::format!("{}", m(&[1, 0, 2]).display_vars()), "x1*x3^2");
        assert_eq!(alloc::format!("{}", m(&[0, 0]).display_vars()), "1");
    }

    fn small_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u64..6, n).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn exchange_preserves_degree_and_inverts(
            a in small_monomial(5), i in 0usize..5, j in 0usize..5
        ) {
            prop_assume!(a.exponent(i) >= 1);
            let b = a.exchange(i, j).unwrap();
            prop_assert_eq!(b.degree(), a.degree());
            prop_assert_eq!(b.exchange(j, i).unwrap(), a);
        }

        #[test]
        fn multiply_commutes_and_associates(
            a in small_monomial(4), b in small_monomial(4), c in small_monomial(4)
        ) {
            prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
            prop_assert_eq!(
                a.multiply(&b).unwrap().multiply(&c).unwrap(),
                a.multiply(&b.multiply(&c).unwrap()).unwrap()
            );
            let ab = a.multiply(&b).unwrap();
            prop_assert_eq!(ab.checked_div(&b), Some(a));
        }
    }
}
