use std::fmt;

use super::monomial::Monomial;
use super::poly::SparsePolynomial;
use super::ExactRational;
use crate::error::{Error, Result};

/// Polynomial in designated formal parameters, truncated at a total degree.
///
/// The parameters are variables of the body's own table; everything else in
/// the table acts as a coefficient. No stored term exceeds `cutoff` in the
/// parameter degree.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    body: SparsePolynomial,
    params: Vec<usize>,
    cutoff: usize,
}

impl TruncatedSeries {
    /// Truncate `body` in the named parameters.
    pub fn new(body: SparsePolynomial, params: &[&str], cutoff: usize) -> Result<Self> {
        let idx = params
            .iter()
            .map(|p| {
                body.vars()
                    .index_of(p)
                    .ok_or_else(|| Error::UnknownVariable(p.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_indices(body, idx, cutoff))
    }

    pub(crate) fn from_indices(body: SparsePolynomial, params: Vec<usize>, cutoff: usize) -> Self {
        let body = body.filter_terms(|m| m.degree_in(&params) as usize <= cutoff);
        TruncatedSeries {
            body,
            params,
            cutoff,
        }
    }

    pub fn body(&self) -> &SparsePolynomial {
        &self.body
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn param_indices(&self) -> &[usize] {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.params != other.params || !self.body.vars().compatible(other.body.vars()) {
            return Err(Error::IncompatibleVariables {
                left: format!("{:?} params {:?}", self.body.vars(), self.params),
                right: format!("{:?} params {:?}", other.body.vars(), other.params),
            });
        }
        Ok(())
    }

    /// Sum, truncated at the smaller cutoff.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let cutoff = self.cutoff.min(other.cutoff);
        Ok(Self::from_indices(
            self.body.checked_add(&other.body)?,
            self.params.clone(),
            cutoff,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let cutoff = self.cutoff.min(other.cutoff);
        Ok(Self::from_indices(
            self.body.checked_sub(&other.body)?,
            self.params.clone(),
            cutoff,
        ))
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        TruncatedSeries {
            body: self.body.scale(c),
            params: self.params.clone(),
            cutoff: self.cutoff,
        }
    }

    /// Multiply by any polynomial (parameters included), then truncate.
    pub fn mul_poly(&self, p: &SparsePolynomial) -> Result<Self> {
        self.body.vars().check_compatible(p.vars())?;
        let params = &self.params;
        let cutoff = self.cutoff;
        let body = self
            .body
            .mul_filtered(p, |m| m.degree_in(params) as usize <= cutoff);
        Ok(TruncatedSeries {
            body,
            params: self.params.clone(),
            cutoff,
        })
    }

    /// Partial derivative in any variable. Differentiating in a parameter
    /// loses one order of accuracy, so the cutoff drops by one.
    pub fn derivative(&self, var: usize) -> Self {
        let cutoff = if self.params.contains(&var) {
            self.cutoff.saturating_sub(1)
        } else {
            self.cutoff
        };
        Self::from_indices(self.body.derivative(var), self.params.clone(), cutoff)
    }

    /// Coefficient of a parameter monomial, as a polynomial in the rest.
    pub fn coefficient(&self, exps: &[u32]) -> SparsePolynomial {
        self.body.coefficient_in(&self.params, exps)
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Self {
        Self::from_indices(self.body.clone(), self.params.clone(), cutoff)
    }

    pub fn render(&self) -> String {
        format!("{} + O(deg {})", self.body.render(), self.cutoff + 1)
    }
}

/// Product of two series with everything above `cutoff` discarded.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries, cutoff: usize) -> Result<TruncatedSeries> {
    a.same_shape(b)?;
    let params = &a.params;
    let body = a
        .body
        .mul_filtered(&b.body, |m: &Monomial| m.degree_in(params) as usize <= cutoff);
    Ok(TruncatedSeries {
        body,
        params: a.params.clone(),
        cutoff,
    })
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({})", self.render())
    }
}
