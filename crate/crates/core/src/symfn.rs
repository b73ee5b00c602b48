//! Power sums, elementary symmetric functions e_r, the deleted functions
//! e_r^{(i)} (built from the variables with x_i left out), and the generating
//! function E(x,t) = prod_i (1 + x_i t) = sum_r e_r t^r.

use crate::error::{Error, Result};
use crate::polycore::{Monomial, SparsePolynomial, TruncatedSeries, VarTable};

/// The variables x1..xN, optionally followed by extra named variables that
/// live in the same ring (formal parameters such as `t`).
#[derive(Clone, Debug)]
pub struct VariableSet {
    n: usize,
    table: VarTable,
}

impl VariableSet {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_extra(n, &[])
    }

    pub fn with_extra(n: usize, extra: &[&str]) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("need at least one variable (N >= 1)"));
        }
        let names: Vec<String> = (1..=n)
            .map(|i| format!("x{i}"))
            .chain(extra.iter().map(|s| s.to_string()))
            .collect();
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(Error::invalid(format!("duplicate variable name `{name}`")));
            }
        }
        Ok(VariableSet {
            n,
            table: VarTable::new(names),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    /// x_i, 1-based.
    pub fn x(&self, i: usize) -> SparsePolynomial {
        assert!((1..=self.n).contains(&i), "x{i} out of range");
        SparsePolynomial::var(&self.table, i - 1)
    }

    /// Table index of x_i, 1-based.
    pub fn x_index(&self, i: usize) -> usize {
        i - 1
    }

    pub fn one(&self) -> SparsePolynomial {
        SparsePolynomial::one(&self.table)
    }

    fn check_deleted(&self, i: usize) -> Result<()> {
        if !(1..=self.n).contains(&i) {
            return Err(Error::invalid(format!(
                "deleted index i={i} outside 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// e_0..e_N over all variables.
    pub fn elementary_all(&self) -> Vec<SparsePolynomial> {
        let idx: Vec<usize> = (0..self.n).collect();
        elementary_over(&self.table, &idx, self.n)
    }

    pub fn elem_sym(&self, r: usize) -> SparsePolynomial {
        if r > self.n {
            return SparsePolynomial::zero(&self.table);
        }
        let idx: Vec<usize> = (0..self.n).collect();
        elementary_over(&self.table, &idx, r).swap_remove(r)
    }

    pub fn elem_sym_deleted(&self, r: usize, i: usize) -> Result<SparsePolynomial> {
        self.check_deleted(i)?;
        if r >= self.n {
            return Ok(SparsePolynomial::zero(&self.table));
        }
        let idx: Vec<usize> = (0..self.n).filter(|&k| k != i - 1).collect();
        Ok(elementary_over(&self.table, &idx, r).swap_remove(r))
    }

    pub fn power_sum(&self, r: usize) -> Result<SparsePolynomial> {
        if r < 1 {
            return Err(Error::invalid("power sums start at r = 1"));
        }
        Ok(SparsePolynomial::from_terms(
            &self.table,
            (0..self.n).map(|k| (Monomial::var(k, r as u32), crate::polycore::rational(1))),
        ))
    }
}

/// e_0..e_{max_r} of the variables at `indices`, by the prefix recurrence
/// e_r(x_1..x_k) = e_r(x_1..x_{k-1}) + x_k * e_{r-1}(x_1..x_{k-1}).
pub fn elementary_over(table: &VarTable, indices: &[usize], max_r: usize) -> Vec<SparsePolynomial> {
    let mut e = vec![SparsePolynomial::zero(table); max_r + 1];
    e[0] = SparsePolynomial::one(table);
    for (seen, &k) in indices.iter().enumerate() {
        let xk = Monomial::var(k, 1);
        let top = (seen + 1).min(max_r);
        for r in (1..=top).rev() {
            let shifted = e[r - 1].shift(&xk);
            e[r] = &e[r] + &shifted;
        }
    }
    e
}

/// e_r(x1..xN). Returns the zero polynomial for r > N.
pub fn elem_sym(n: usize, r: usize) -> Result<SparsePolynomial> {
    Ok(VariableSet::new(n)?.elem_sym(r))
}

/// e_r^{(i)}: the elementary symmetric function of x1..xN with x_i removed.
pub fn elem_sym_deleted(n: usize, r: usize, i: usize) -> Result<SparsePolynomial> {
    VariableSet::new(n)?.elem_sym_deleted(r, i)
}

/// p_r = sum_i x_i^r.
pub fn power_sum(n: usize, r: usize) -> Result<SparsePolynomial> {
    VariableSet::new(n)?.power_sum(r)
}

/// E(x,t) = sum_{r <= min(N, cutoff)} e_r t^r over the ring x1..xN, t.
pub fn gen_function(n: usize, cutoff: usize) -> Result<TruncatedSeries> {
    let vars = VariableSet::with_extra(n, &["t"])?;
    gen_function_in(&vars, "t", cutoff)
}

/// E(x, param) in an existing variable set that contains `param`.
pub fn gen_function_in(vars: &VariableSet, param: &str, cutoff: usize) -> Result<TruncatedSeries> {
    let t = vars
        .table()
        .index_of(param)
        .ok_or_else(|| Error::UnknownVariable(param.to_string()))?;
    let e = vars.elementary_all();
    let body = SparsePolynomial::from_terms(
        vars.table(),
        e.iter().enumerate().take(cutoff + 1).flat_map(|(r, er)| {
            let tr = Monomial::var(t, r as u32);
            er.terms()
                .map(move |(m, c)| (m.mul(&tr), c.clone()))
                .collect::<Vec<_>>()
        }),
    );
    Ok(TruncatedSeries::from_indices(body, vec![t], cutoff))
}

/// prod_i (1 + x_i t), truncated at `cutoff`. Kept as the independent route
/// for checking [`gen_function`].
pub fn gen_function_product(n: usize, cutoff: usize) -> Result<TruncatedSeries> {
    let vars = VariableSet::with_extra(n, &["t"])?;
    let t = vars.table().index_of("t").expect("t was added");
    let one = vars.one();
    let mut acc = TruncatedSeries::from_indices(one.clone(), vec![t], cutoff);
    for i in 1..=n {
        let factor = &one + &(&vars.x(i) * &SparsePolynomial::var(vars.table(), t));
        acc = acc.mul_poly(&factor)?;
    }
    Ok(acc)
}

/// e_0..e_N of x1..xN.
#[derive(Clone, Debug)]
pub struct ElemSymTable {
    n: usize,
    entries: Vec<SparsePolynomial>,
}

impl ElemSymTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// e_r, zero past N.
    pub fn get(&self, r: usize) -> SparsePolynomial {
        self.entries
            .get(r)
            .cloned()
            .unwrap_or_else(|| SparsePolynomial::zero(self.entries[0].vars()))
    }

    pub fn entries(&self) -> &[SparsePolynomial] {
        &self.entries
    }
}

/// e_0^{(i)}..e_{N-1}^{(i)} for one deleted index i.
#[derive(Clone, Debug)]
pub struct DeletedElemSymTable {
    n: usize,
    deleted: usize,
    entries: Vec<SparsePolynomial>,
}

impl DeletedElemSymTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn deleted(&self) -> usize {
        self.deleted
    }

    /// e_r^{(i)}, zero past N-1.
    pub fn get(&self, r: usize) -> SparsePolynomial {
        self.entries
            .get(r)
            .cloned()
            .unwrap_or_else(|| SparsePolynomial::zero(self.entries[0].vars()))
    }

    pub fn entries(&self) -> &[SparsePolynomial] {
        &self.entries
    }
}

/// Full table plus one deleted table per index, all in the ring x1..xN.
#[derive(Clone, Debug)]
pub struct SymTables {
    pub vars: VariableSet,
    pub full: ElemSymTable,
    pub deleted: Vec<DeletedElemSymTable>,
}

impl SymTables {
    /// Deleted table for x_i, 1-based.
    pub fn deleted(&self, i: usize) -> &DeletedElemSymTable {
        &self.deleted[i - 1]
    }
}

pub fn build_tables(n: usize) -> Result<SymTables> {
    build_tables_in(VariableSet::new(n)?)
}

/// Same as [`build_tables`] over a variable set that may carry extra names.
pub fn build_tables_in(vars: VariableSet) -> Result<SymTables> {
    let n = vars.n();
    let all: Vec<usize> = (0..n).collect();
    let full = ElemSymTable {
        n,
        entries: elementary_over(vars.table(), &all, n),
    };
    let deleted = (1..=n)
        .map(|i| {
            let idx: Vec<usize> = all.iter().copied().filter(|&k| k != i - 1).collect();
            DeletedElemSymTable {
                n,
                deleted: i,
                entries: elementary_over(vars.table(), &idx, n - 1),
            }
        })
        .collect();
    Ok(SymTables {
        vars,
        full,
        deleted,
    })
}

/// Reference construction by enumerating r-subsets. Exponential; used to
/// check the recurrence.
pub fn elem_sym_by_subsets(n: usize, r: usize) -> Result<SparsePolynomial> {
    let vars = VariableSet::new(n)?;
    let mut out = SparsePolynomial::zero(vars.table());
    if r > n {
        return Ok(out);
    }
    let mut subset: Vec<usize> = (0..r).collect();
    loop {
        let mut exps = vec![0u32; n];
        for &k in &subset {
            exps[k] = 1;
        }
        out = &out + &SparsePolynomial::monomial(vars.table(), Monomial::new(exps), crate::polycore::rational(1));
        // next combination in lexicographic order
        let mut k = r;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if subset[k] < n - r + k {
                subset[k] += 1;
                for j in k + 1..r {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::rational;

    #[test]
    fn e2_of_three() {
        assert_eq!(elem_sym(3, 2).unwrap().render(), "x1*x2 + x1*x3 + x2*x3");
        assert_eq!(elem_sym(5, 0).unwrap().render(), "1");
        assert!(elem_sym(3, 4).unwrap().is_zero());
        assert!(elem_sym(0, 1).is_err());
    }

    #[test]
    fn deleted_examples() {
        assert_eq!(elem_sym_deleted(3, 1, 2).unwrap().render(), "x1 + x3");
        assert_eq!(elem_sym_deleted(3, 0, 1).unwrap().render(), "1");
        assert!(elem_sym_deleted(3, 1, 4).is_err());
        assert!(elem_sym_deleted(3, 1, 0).is_err());
    }

    #[test]
    fn deleted_recombination_n4() {
        let vars = VariableSet::new(4).unwrap();
        let lhs = vars.elem_sym(2);
        let rhs = &vars.elem_sym_deleted(2, 3).unwrap()
            + &(&vars.x(3) * &vars.elem_sym_deleted(1, 3).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum(3, 2).unwrap().render(), "x1^2 + x2^2 + x3^2");
        assert_eq!(power_sum(2, 1).unwrap(), elem_sym(2, 1).unwrap());
        let e1 = elem_sym(2, 1).unwrap();
        let e2 = elem_sym(2, 2).unwrap();
        assert_eq!(power_sum(2, 2).unwrap(), &e1.pow(2) - &e2.scale_int(2));
        assert!(power_sum(2, 0).is_err());
    }

    #[test]
    fn generating_function() {
        let g = gen_function(2, 2).unwrap();
        assert_eq!(g.body().render(), "1 + x1*t + x2*t + x1*x2*t^2");
        assert_eq!(gen_function(3, 0).unwrap().body().render(), "1");
        let g5 = gen_function(3, 5).unwrap();
        let t = g5.param_indices()[0];
        assert_eq!(g5.body().terms().map(|(m, _)| m.exponent(t)).max(), Some(3));
    }

    #[test]
    fn tables_small() {
        let t = build_tables(1).unwrap();
        assert_eq!(t.full.entries().len(), 2);
        assert_eq!(t.full.get(1).render(), "x1");
        assert_eq!(t.deleted(1).entries().len(), 1);
        assert_eq!(t.deleted(1).get(0).render(), "1");

        let t4 = build_tables(4).unwrap();
        assert_eq!(t4.deleted(1).get(2).len(), 3);
        assert!(t4.full.get(7).is_zero());
    }

    #[test]
    fn subset_oracle_small() {
        assert_eq!(elem_sym_by_subsets(3, 2).unwrap(), elem_sym(3, 2).unwrap());
        assert_eq!(elem_sym_by_subsets(3, 0).unwrap().constant_term(), rational(1));
    }
}
