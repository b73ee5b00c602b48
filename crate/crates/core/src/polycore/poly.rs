use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Pow, Zero};

use super::monomial::Monomial;
use super::ExactRational;
use crate::error::{Error, Result};

/// Ordered variable names shared by every polynomial of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarTable(Arc<[String]>);

impl VarTable {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        VarTable(names.into_iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn compatible(&self, other: &VarTable) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub(crate) fn check_compatible(&self, other: &VarTable) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::IncompatibleVariables {
                left: self.0.join(","),
                right: other.0.join(","),
            })
        }
    }
}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in graded lexicographic order and zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    vars: VarTable,
    terms: BTreeMap<Monomial, ExactRational>,
}

impl SparsePolynomial {
    pub fn zero(vars: &VarTable) -> Self {
        SparsePolynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, ExactRational::one())
    }

    pub fn constant(vars: &VarTable, c: ExactRational) -> Self {
        Self::monomial(vars, Monomial::one(), c)
    }

    pub fn from_int(vars: &VarTable, c: i64) -> Self {
        Self::constant(vars, ExactRational::from_integer(c.into()))
    }

    pub fn monomial(vars: &VarTable, m: Monomial, c: ExactRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable at position `index`.
    pub fn var(vars: &VarTable, index: usize) -> Self {
        assert!(index < vars.len(), "variable index {index} out of range");
        Self::monomial(vars, Monomial::var(index, 1), ExactRational::one())
    }

    pub fn var_named(vars: &VarTable, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    /// Build from possibly repeated, possibly zero terms.
    pub fn from_terms(
        vars: &VarTable,
        terms: impl IntoIterator<Item = (Monomial, ExactRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Re-canonicalize. The representation is canonical already, so this is
    /// a copy that drops nothing; it exists so callers can assert idempotence.
    pub fn normalized(&self) -> Self {
        Self::from_terms(&self.vars, self.terms.clone())
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn constant_term(&self) -> ExactRational {
        self.coefficient(&Monomial::one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &ExactRational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.vars.check_compatible(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.vars.check_compatible(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.vars.check_compatible(&other.vars)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only monomials accepted by `keep`.
    pub(crate) fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&ExactRational::from_integer(c.into()))
    }

    /// Multiply by a single monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the variable at `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lowered(var) {
                out.add_term(lowered, c * ExactRational::from_integer(e.into()));
            }
        }
        out
    }

    /// Evaluate with every occurring variable assigned by name.
    pub fn evaluate(&self, assignment: &HashMap<String, ExactRational>) -> Result<ExactRational> {
        self.evaluate_with(|idx| assignment.get(self.vars.name(idx)).cloned())
    }

    /// Evaluate with values looked up by variable index.
    pub fn evaluate_with(
        &self,
        mut value: impl FnMut(usize) -> Option<ExactRational>,
    ) -> Result<ExactRational> {
        let mut cache: Vec<Option<ExactRational>> = vec![None; self.vars.len()];
        let mut total = ExactRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if cache[idx].is_none() {
                    let v = value(idx)
                        .ok_or_else(|| Error::MissingVariable(self.vars.name(idx).to_string()))?;
                    cache[idx] = Some(v);
                }
                let v = cache[idx].as_ref().expect("cached above");
                term *= Pow::pow(v, e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitute `var = value`, leaving a polynomial in the other variables.
    pub fn substitute(&self, var: usize, value: &ExactRational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            out.add_term(rest, c * Pow::pow(value, e));
        }
        out
    }

    /// Collapse to a univariate polynomial by sending each variable `v` to
    /// `z^weights[v]`; returns coefficients keyed by the power of `z`.
    pub fn collapse_weighted(&self, weights: &[u32]) -> Result<BTreeMap<u32, ExactRational>> {
        let mut out: BTreeMap<u32, ExactRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut power = 0u32;
            for (idx, &e) in m.exponents().iter().enumerate() {
                let w = weights
                    .get(idx)
                    .ok_or_else(|| Error::MissingVariable(self.vars.name(idx).to_string()))?;
                power += w * e;
            }
            *out.entry(power).or_insert_with(ExactRational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Coefficient of `vars^exps` viewing the polynomial as one in `vars`
    /// with coefficients in the remaining variables.
    pub fn coefficient_in(&self, vars: &[usize], exps: &[u32]) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut out = Self::zero(&self.vars);
        'terms: for (m, c) in &self.terms {
            let mut rest = m.clone();
            for (&v, &want) in vars.iter().zip(exps) {
                let (e, r) = rest.split_off(v);
                if e != want {
                    continue 'terms;
                }
                rest = r;
            }
            out.add_term(rest, c.clone());
        }
        out
    }

    /// Keep only terms accepted by `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Move into `target`, matching variables by name.
    pub fn embed(&self, target: &VarTable) -> Result<Self> {
        if self.vars.compatible(target) {
            return Ok(SparsePolynomial {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        // Variables absent from `target` are fine as long as no term uses them.
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index_of(n)).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut dense = Vec::with_capacity(m.exponents().len());
            for (idx, &e) in m.exponents().iter().enumerate() {
                dense.push(match map[idx] {
                    Some(t) => t,
                    None if e == 0 => 0,
                    None => return Err(Error::UnknownVariable(self.vars.name(idx).to_string())),
                });
            }
            out.add_term(m.remap(&dense), c.clone());
        }
        Ok(out)
    }

    /// Multivariate division by a single divisor under graded lex order.
    ///
    /// Returns `(quotient, remainder)` with `self = quotient * divisor +
    /// remainder` and no remainder term divisible by the divisor's leading
    /// monomial. A single polynomial is a Gröbner basis of the ideal it
    /// generates, so the remainder is zero exactly when the division is exact.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.vars.check_compatible(&divisor.vars)?;
        let (lead_m, lead_c) = divisor
            .leading_term()
            .ok_or_else(|| Error::invalid("division by the zero polynomial"))?;
        let lead_inv = lead_c.recip();
        let mut rem = self.terms.clone();
        let mut quotient = Self::zero(&self.vars);
        let mut remainder = Self::zero(&self.vars);
        while let Some((m, c)) = rem.pop_last() {
            match lead_m.quotient_of(&m) {
                Some(qm) => {
                    let qc = &c * &lead_inv;
                    // The leading product cancels `m` exactly; subtract the rest.
                    for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                        let key = dm.mul(&qm);
                        let delta = -(&qc * dc);
                        use std::collections::btree_map::Entry;
                        match rem.entry(key) {
                            Entry::Vacant(v) => {
                                v.insert(delta);
                            }
                            Entry::Occupied(mut o) => {
                                *o.get_mut() += delta;
                                if o.get().is_zero() {
                                    o.remove();
                                }
                            }
                        }
                    }
                    quotient.add_term(qm, qc);
                }
                None => remainder.add_term(m, c),
            }
        }
        Ok((quotient, remainder))
    }

    /// `self / divisor` when the division is exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Canonical text: ascending total degree, `x1^2` before `x1*x2` within
    /// a degree, `*` for products and `^` for powers.
    pub fn render(&self) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.cmp_display(b.0));
        render_terms(
            terms
                .into_iter()
                .map(|(m, c)| (c.clone(), render_monomial(&self.vars, m))),
        )
    }
}

fn render_monomial(vars: &VarTable, m: &Monomial) -> String {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                vars.name(i).to_string()
            } else {
                format!("{}^{}", vars.name(i), e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Join `(coefficient, monomial text)` pairs as `a + b - c`. An empty
/// monomial text means the constant term.
pub(crate) fn render_terms(terms: impl IntoIterator<Item = (ExactRational, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let negative = c < ExactRational::zero();
        let mag = if negative { -c } else { c };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePolynomial({})", self.render())
    }
}

// Operator forms panic on mismatched variable tables; use the `checked_*`
// methods when the tables are not known to agree.
impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self + &rhs
    }
}

impl Sub for SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self - &rhs
    }
}

impl Mul for SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self * &rhs
    }
}

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        -&self
    }
}
