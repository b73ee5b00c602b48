//! Binomial and Gaussian (q-binomial) coefficients, and elementary symmetric
//! functions evaluated at the geometric point x_i = q^{i-1}.
//!
//! At the geometric point the deleted function e_{p-1}^{(i)} splits into the
//! variables below x_i (q^0..q^{i-2}) and above it (q^i..q^{N-1}). Taking u
//! of the upper variables gives
//!
//! ```text
//! e_{p-1}^{(i)}(1,q,..,q^{N-1})
//!     = q^{(p-1)(p-2)/2} * sum_u q^{u(u-(p-i-1))} [N-i, u] [i-1, p-1-u]
//! ```
//!
//! with the exponent read as `u*(u - (p - i - 1))`. This is confirmed against
//! direct substitution for every N <= 8 in the tests. Every term with
//! nonzero brackets has u >= p - i, so the exponent is at least u.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polycore::{render_terms, ExactRational};
use crate::symfn::VariableSet;

/// Polynomial in q with integer coefficients; index is the power of q.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial(Vec<BigInt>);

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        QPolynomial(vec![BigInt::one()])
    }

    /// q^k.
    pub fn q_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        QPolynomial(c)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPolynomial::from_coeffs(vec![c.into()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Multiply by q^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        QPolynomial(c)
    }

    /// Divide by q^k, if every coefficient below q^k vanishes.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.0.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPolynomial(self.0.iter().skip(k).cloned().collect()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// `self / divisor` when the quotient has integer coefficients and the
    /// remainder is zero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let lead = divisor.0.last()?;
        let mut rem = self.0.clone();
        if rem.len() < divisor.0.len() {
            return rem.iter().all(Zero::is_zero).then(Self::zero);
        }
        let dl = divisor.0.len();
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &qk * d;
            }
            quot[k] = qk;
        }
        rem.iter()
            .all(Zero::is_zero)
            .then(|| Self::from_coeffs(quot))
    }

    /// Interpret a map `power -> rational coefficient` as a q-polynomial.
    pub fn from_rational_map(
        map: impl IntoIterator<Item = (u32, ExactRational)>,
    ) -> Result<Self> {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (k, c) in map {
            if !c.is_integer() {
                return Err(Error::NonIntegerCoefficient(c.to_string()));
            }
            let k = k as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c.to_integer();
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Ascending powers: `1 + q + 2*q^2 + q^3 + q^4`.
    pub fn render(&self) -> String {
        render_terms(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    let mono = match k {
                        0 => String::new(),
                        1 => "q".to_string(),
                        _ => format!("q^{k}"),
                    };
                    (ExactRational::from_integer(c.clone()), mono)
                }),
        )
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({})", self.render())
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.0.len().max(rhs.0.len());
        QPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.0.len().max(rhs.0.len());
        QPolynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(c)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> QPolynomial {
        iter.fold(QPolynomial::zero(), |a, b| &a + &b)
    }
}

/// C(n, k) from a row of Pascal's triangle; zero for k < 0, k > n or n < 0.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k) as usize;
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for m in 1..=n as usize {
        for j in (1..=k.min(m)).rev() {
            let prev = row[j - 1].clone();
            row[j] += prev;
        }
    }
    row.swap_remove(k)
}

/// [n] = 1 + q + ... + q^{n-1}; [0] = 0.
pub fn q_integer(n: i64) -> Result<QPolynomial> {
    if n < 0 {
        return Err(Error::invalid(format!("q-integer of negative n = {n}")));
    }
    Ok(QPolynomial::from_coeffs(vec![BigInt::one(); n as usize]))
}

/// [n]! = [n][n-1]...[1].
pub fn q_factorial(n: i64) -> Result<QPolynomial> {
    if n < 0 {
        return Err(Error::invalid(format!("q-factorial of negative n = {n}")));
    }
    let mut acc = QPolynomial::one();
    for m in 1..=n {
        acc = &acc * &q_integer(m)?;
    }
    Ok(acc)
}

/// Row `n` of the Gaussian triangle: [n, 0]..[n, n].
pub fn q_binomial_row(n: usize) -> Vec<QPolynomial> {
    let mut row = vec![QPolynomial::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            // [m,k] = [m-1,k-1] + q^k [m-1,k]
            let left = if k > 0 { row[k - 1].clone() } else { QPolynomial::zero() };
            let right = row.get(k).map_or_else(QPolynomial::zero, |p| p.shift(k));
            next.push(&left + &right);
        }
        row = next;
    }
    row
}

/// Gaussian binomial [n, k] by the q-Pascal recurrence; zero outside 0 <= k <= n.
pub fn q_binomial(n: i64, k: i64) -> QPolynomial {
    if n < 0 || k < 0 || k > n {
        return QPolynomial::zero();
    }
    q_binomial_row(n as usize).swap_remove(k as usize)
}

/// [n]!/([k]![n-k]!) by exact polynomial division. Only used to cross-check
/// the recurrence.
pub fn q_binomial_by_ratio(n: i64, k: i64) -> Result<QPolynomial> {
    if n < 0 || k < 0 || k > n {
        return Ok(QPolynomial::zero());
    }
    let den = &q_factorial(k)? * &q_factorial(n - k)?;
    q_factorial(n)?
        .div_exact(&den)
        .ok_or_else(|| Error::Internal(format!("[{n}]! not divisible by [{k}]![{}]!", n - k)))
}

/// Exponents sending x_i to q^{i-1}.
pub fn geometric_weights(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

fn geometric_value(p: &crate::polycore::SparsePolynomial, n: usize) -> Result<QPolynomial> {
    QPolynomial::from_rational_map(p.collapse_weighted(&geometric_weights(n))?)
}

/// e_p(1, q, .., q^{N-1}) = q^{p(p-1)/2} [N, p].
pub fn elem_geometric(n: usize, p: usize) -> Result<QPolynomial> {
    if p > n {
        return Err(Error::invalid(format!("need 0 <= p <= N, got p={p}, N={n}")));
    }
    Ok(q_binomial(n as i64, p as i64).shift(p * p.saturating_sub(1) / 2))
}

/// e_p(1, q, .., q^{N-1}) by substituting into the symbolic e_p.
pub fn elem_geometric_direct(n: usize, p: usize) -> Result<QPolynomial> {
    if p > n {
        return Err(Error::invalid(format!("need 0 <= p <= N, got p={p}, N={n}")));
    }
    let vars = VariableSet::new(n)?;
    geometric_value(&vars.elem_sym(p), n)
}

fn check_deleted_args(n: usize, p: usize, i: usize) -> Result<()> {
    if !(1..=n).contains(&i) {
        return Err(Error::invalid(format!("need 1 <= i <= N, got i={i}, N={n}")));
    }
    if !(1..=n).contains(&p) {
        return Err(Error::invalid(format!("need 1 <= p <= N, got p={p}, N={n}")));
    }
    Ok(())
}

/// e_{p-1}^{(i)}(1, q, .., q^{N-1}) by direct substitution. This is the
/// ground truth the closed form is checked against.
pub fn deleted_elem_geometric(n: usize, p: usize, i: usize) -> Result<QPolynomial> {
    check_deleted_args(n, p, i)?;
    let vars = VariableSet::new(n)?;
    geometric_value(&vars.elem_sym_deleted(p - 1, i)?, n)
}

/// The inner u-sum of the closed form, without the q^{(p-1)(p-2)/2} prefactor:
/// sum_u q^{u(u-(p-i-1))} [N-i, u] [i-1, p-1-u].
pub fn deleted_geometric_inner_sum(n: usize, p: usize, i: usize) -> Result<QPolynomial> {
    check_deleted_args(n, p, i)?;
    let (n, p, i) = (n as i64, p as i64, i as i64);
    let mut total = QPolynomial::zero();
    for u in 0..p {
        let upper = q_binomial(n - i, u);
        let lower = q_binomial(i - 1, p - 1 - u);
        if upper.is_zero() || lower.is_zero() {
            continue;
        }
        let exponent = u * (u - (p - i - 1));
        let exponent = usize::try_from(exponent).map_err(|_| {
            Error::Internal(format!("negative exponent {exponent} at u={u}, p={p}, i={i}"))
        })?;
        total = &total + &(&upper * &lower).shift(exponent);
    }
    Ok(total)
}

/// e_{p-1}^{(i)}(1, q, .., q^{N-1}) by the closed form.
pub fn deleted_elem_geometric_closed(n: usize, p: usize, i: usize) -> Result<QPolynomial> {
    let inner = deleted_geometric_inner_sum(n, p, i)?;
    Ok(inner.shift((p - 1) * p.saturating_sub(2) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.into());
        assert_eq!(binomial(7, 0), 1.into());
        assert_eq!(binomial(3, 5), 0.into());
        assert_eq!(binomial(3, -1), 0.into());
        assert_eq!(binomial(10, 7), 120.into());
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(3).unwrap().render(), "1 + q + q^2");
        assert_eq!(q_integer(1).unwrap(), QPolynomial::one());
        assert_eq!(q_integer(4).unwrap().eval_at_one(), 4.into());
        assert!(q_integer(0).unwrap().is_zero());
        assert!(q_integer(-1).is_err());
    }

    #[test]
    fn gaussian_4_2() {
        let g = q_binomial(4, 2);
        assert_eq!(g.render(), "1 + q + 2*q^2 + q^3 + q^4");
        assert_eq!(g, q_binomial_by_ratio(4, 2).unwrap());
        assert_eq!(g.eval_at_one(), 6.into());
        assert_eq!(q_binomial(5, 0), QPolynomial::one());
        assert!(q_binomial(2, 3).is_zero());
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(elem_geometric(3, 2).unwrap(), qp(&[0, 1, 1, 1]));
        assert_eq!(elem_geometric_direct(3, 2).unwrap(), qp(&[0, 1, 1, 1]));
        assert_eq!(elem_geometric(4, 0).unwrap(), QPolynomial::one());
        assert_eq!(elem_geometric(3, 2).unwrap().eval_at_one(), 3.into());
        assert!(elem_geometric(3, 4).is_err());
    }

    #[test]
    fn deleted_geometric_examples() {
        assert_eq!(deleted_elem_geometric(3, 2, 2).unwrap(), qp(&[1, 0, 1]));
        assert_eq!(deleted_elem_geometric_closed(3, 2, 2).unwrap(), qp(&[1, 0, 1]));
        assert_eq!(deleted_elem_geometric(2, 1, 1).unwrap(), QPolynomial::one());
        assert_eq!(
            deleted_elem_geometric(5, 3, 2).unwrap().eval_at_one(),
            binomial(4, 2)
        );
        assert!(deleted_elem_geometric(3, 0, 1).is_err());
        assert!(deleted_elem_geometric(3, 1, 4).is_err());
    }

    #[test]
    fn exact_division() {
        let a = qp(&[1, 0, -1]);
        assert_eq!(a.div_exact(&qp(&[1, 1])), Some(qp(&[1, -1])));
        assert_eq!(a.div_exact(&qp(&[2, 1])), None);
        assert_eq!(qp(&[0, 0, 3]).unshift(2), Some(qp(&[3])));
        assert_eq!(qp(&[1, 0, 3]).unshift(1), None);
    }

    #[test]
    fn rendering() {
        assert_eq!(QPolynomial::zero().render(), "0");
        assert_eq!(qp(&[1, -1]).render(), "1 - q");
        assert_eq!(qp(&[0, -2, 0, 1]).render(), "-2*q + q^3");
    }
}
