use std::fmt;

use num_traits::One;

use super::poly::{SparsePolynomial, VarTable};
use crate::error::{Error, Result};

/// Unreduced quotient of two polynomials.
///
/// No gcd is ever taken. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunctionPair {
    num: SparsePolynomial,
    den: SparsePolynomial,
}

impl RationalFunctionPair {
    pub fn new(num: SparsePolynomial, den: SparsePolynomial) -> Result<Self> {
        num.vars().check_compatible(den.vars())?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunctionPair { num, den })
    }

    pub fn from_poly(p: SparsePolynomial) -> Self {
        let den = SparsePolynomial::one(p.vars());
        RationalFunctionPair { num: p, den }
    }

    pub fn zero(vars: &VarTable) -> Self {
        Self::from_poly(SparsePolynomial::zero(vars))
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::from_poly(SparsePolynomial::one(vars))
    }

    pub fn numerator(&self) -> &SparsePolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &SparsePolynomial {
        &self.den
    }

    pub fn vars(&self) -> &VarTable {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        Self::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn neg(&self) -> Self {
        RationalFunctionPair {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    /// Divide numerator and denominator by `factor` as often as both allow.
    pub fn cancel_factor(&self, factor: &SparsePolynomial) -> Result<Self> {
        let mut out = self.clone();
        loop {
            let (Some(n), Some(d)) = (out.num.div_exact(factor)?, out.den.div_exact(factor)?) else {
                return Ok(out);
            };
            out = RationalFunctionPair { num: n, den: d };
        }
    }

    /// Scale so the denominator's leading coefficient is one.
    pub fn monic_denominator(&self) -> Self {
        let (_, lead) = self.den.leading_term().expect("denominator is nonzero");
        if lead.is_one() {
            return self.clone();
        }
        let inv = lead.recip();
        RationalFunctionPair {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }

    pub fn render(&self) -> String {
        if self.den == SparsePolynomial::one(self.den.vars()) {
            return self.num.render();
        }
        format!("({})/({})", self.num.render(), self.den.render())
    }
}

/// True iff `a.num * b.den - b.num * a.den` is the zero polynomial.
pub fn rf_equal(a: &RationalFunctionPair, b: &RationalFunctionPair) -> Result<bool> {
    let lhs = a.num.checked_mul(&b.den)?;
    let rhs = b.num.checked_mul(&a.den)?;
    Ok(lhs.checked_sub(&rhs)?.is_zero())
}

impl fmt::Debug for RationalFunctionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionPair({})", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t12() -> (VarTable, SparsePolynomial, SparsePolynomial) {
        let vars = VarTable::new(["t1", "t2"]);
        let t1 = SparsePolynomial::var(&vars, 0);
        let t2 = SparsePolynomial::var(&vars, 1);
        (vars, t1, t2)
    }

    #[test]
    fn same_fraction_is_equal() {
        let (_, t1, t2) = t12();
        let a = RationalFunctionPair::new(t1.pow(2), &t1 - &t2).unwrap();
        assert!(rf_equal(&a, &a.clone()).unwrap());
    }

    #[test]
    fn unreduced_forms_are_equal() {
        let vars = VarTable::new(["t"]);
        let t = SparsePolynomial::var(&vars, 0);
        let one = SparsePolynomial::one(&vars);
        let a = RationalFunctionPair::new(one.clone(), &one + &t).unwrap();
        let b = RationalFunctionPair::new(&one - &t, &one - &t.pow(2)).unwrap();
        assert!(rf_equal(&a, &b).unwrap());
    }

    #[test]
    fn different_numerators_differ() {
        let (_, t1, t2) = t12();
        let d = &t1 - &t2;
        let a = RationalFunctionPair::new(t1.clone(), d.clone()).unwrap();
        let b = RationalFunctionPair::new(t2.clone(), d).unwrap();
        assert!(!rf_equal(&a, &b).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        let (vars, t1, _) = t12();
        let err = RationalFunctionPair::new(t1, SparsePolynomial::zero(&vars)).unwrap_err();
        assert_eq!(err, Error::ZeroDenominator);
    }

    #[test]
    fn cancel_common_factor() {
        let (_, t1, t2) = t12();
        let d = &t1 - &t2;
        let a = RationalFunctionPair::new(&t1.pow(2) - &t2.pow(2), &d * &t1).unwrap();
        let c = a.cancel_factor(&d).unwrap();
        assert_eq!(c.render(), "(t1 + t2)/(t1)");
        assert!(rf_equal(&a, &c).unwrap());
    }
}
