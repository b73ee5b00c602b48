//! Partial fraction decomposition
//!
//! ```text
//! 1 / prod_j (1 + x t_j) = 1 + sum_j f_j * x / (1 + x t_j)
//! ```
//!
//! with each f_j a rational function of the t's alone. Clearing
//! denominators gives `1 = P(x) + sum_j f_j * x * prod_{k != j} (1 + x t_k)`
//! where `P(x) = prod_k (1 + x t_k)`; matching powers x^1..x^n yields an
//! n-by-n linear system over the field of rational functions in the t's,
//! solved here by Cramer's rule with fraction-free determinants.

use crate::error::{Error, Result};
use crate::polycore::{rf_equal, RationalFunctionPair, SparsePolynomial, VarTable};

#[derive(Clone, Debug)]
pub struct PartialFractionDecomp {
    order: usize,
    vars: VarTable,
    coefficients: Vec<RationalFunctionPair>,
}

impl PartialFractionDecomp {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Ring `x, t1, .., t_order`.
    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// f_1..f_order.
    pub fn coefficients(&self) -> &[RationalFunctionPair] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: usize) -> &RationalFunctionPair {
        &self.coefficients[j - 1]
    }

    /// Both sides of the defining relation as rational functions in x and
    /// the t's: `1/prod_j(1 + x t_j)` and `1 + sum_j f_j x/(1 + x t_j)`.
    pub fn defining_relation(&self) -> Result<(RationalFunctionPair, RationalFunctionPair)> {
        let x = SparsePolynomial::var(&self.vars, 0);
        let one = SparsePolynomial::one(&self.vars);
        let lin = |j: usize| &one + &(&x * &SparsePolynomial::var(&self.vars, j));
        let mut prod = one.clone();
        for j in 1..=self.order {
            prod = &prod * &lin(j);
        }
        let lhs = RationalFunctionPair::new(one.clone(), prod)?;
        let mut rhs = RationalFunctionPair::one(&self.vars);
        for (j, f) in self.coefficients.iter().enumerate() {
            let term = RationalFunctionPair::new(x.clone(), lin(j + 1))?;
            rhs = rhs.add(&f.mul(&term)?)?;
        }
        Ok((lhs, rhs))
    }

    /// The defining relation holds identically (cross-multiplied).
    pub fn verify(&self) -> Result<bool> {
        let (lhs, rhs) = self.defining_relation()?;
        rf_equal(&lhs, &rhs)
    }

    pub fn render(&self) -> String {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, f)| format!("f{} = {}", j + 1, f.render()))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Determinant of a square polynomial matrix by Bareiss elimination; every
/// division is exact.
pub fn determinant(mut m: Vec<Vec<SparsePolynomial>>, vars: &VarTable) -> Result<SparsePolynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(SparsePolynomial::one(vars));
    }
    let mut negate = false;
    let mut prev = SparsePolynomial::one(vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(SparsePolynomial::zero(vars));
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)?
                    .ok_or_else(|| Error::Internal("inexact Bareiss step".into()))?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Solve for f_1..f_order. Orders 2 and 3 are supported.
pub fn partial_fractions(order: usize) -> Result<PartialFractionDecomp> {
    if !(2..=3).contains(&order) {
        return Err(Error::invalid(format!("partial fraction order must be 2 or 3, got {order}")));
    }
    let names: Vec<String> = std::iter::once("x".to_string())
        .chain((1..=order).map(|j| format!("t{j}")))
        .collect();
    let vars = VarTable::new(&names);
    let one = SparsePolynomial::one(&vars);
    let x = SparsePolynomial::var(&vars, 0);
    let t: Vec<SparsePolynomial> = (1..=order).map(|j| SparsePolynomial::var(&vars, j)).collect();
    let lin: Vec<SparsePolynomial> = t.iter().map(|tj| &one + &(&x * tj)).collect();

    let full = lin.iter().fold(one.clone(), |acc, l| &acc * l);
    let columns: Vec<SparsePolynomial> = (0..order)
        .map(|j| {
            lin.iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .fold(x.clone(), |acc, (_, l)| &acc * l)
        })
        .collect();
    let target = &one - &full;

    // Row m-1 matches the coefficient of x^m.
    let coeff_x = |p: &SparsePolynomial, m: u32| p.coefficient_in(&[0], &[m]);
    let matrix: Vec<Vec<SparsePolynomial>> = (1..=order as u32)
        .map(|m| columns.iter().map(|c| coeff_x(c, m)).collect())
        .collect();
    let rhs: Vec<SparsePolynomial> = (1..=order as u32).map(|m| coeff_x(&target, m)).collect();

    let det = determinant(matrix.clone(), &vars)?;
    if det.is_zero() {
        return Err(Error::Internal("singular partial fraction system".into()));
    }

    let mut differences = Vec::new();
    for a in 0..order {
        for b in a + 1..order {
            differences.push(&t[a] - &t[b]);
        }
    }

    let mut coefficients = Vec::with_capacity(order);
    for j in 0..order {
        let mut replaced = matrix.clone();
        for (row, value) in replaced.iter_mut().zip(&rhs) {
            row[j] = value.clone();
        }
        let mut f = RationalFunctionPair::new(determinant(replaced, &vars)?, det.clone())?;
        for factor in differences.iter().chain(&t) {
            f = f.cancel_factor(factor)?;
        }
        coefficients.push(f.monic_denominator());
    }

    let decomp = PartialFractionDecomp {
        order,
        vars,
        coefficients,
    };
    if !decomp.verify()? {
        return Err(Error::Internal(format!(
            "order-{order} partial fractions fail the defining relation"
        )));
    }
    Ok(decomp)
}
