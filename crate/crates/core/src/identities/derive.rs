//! Mechanical derivation of `sum_i prod_k e^{(i)}_{d_k - 1}` in terms of the
//! full e_r.
//!
//! With E(t) = prod_i (1 + x_i t) and E^{(i)}(t) the same product without
//! x_i, d/dx_i E(t) = t E^{(i)}(t). Using the partial fractions of
//! `1/prod_k (1 + x_i t_k)` and `sum_i x_i/(1 + x_i t) = E'(t)/E(t)`:
//!
//! ```text
//! sum_i prod_k E^{(i)}(t_k) = N prod_k E(t_k) + sum_j f_j E'(t_j) prod_{k != j} E(t_k)
//! ```
//!
//! The right side is built with the e_r as formal symbols e0..eN, the f_j
//! denominators are cleared, and the quotient by the common denominator is
//! taken exactly. The coefficient of `prod_k t_k^{d_k - 1}` in the quotient
//! is the requested identity, homogeneous of degree `order` in e0..eN.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::partial_fractions::partial_fractions;
use crate::error::{Error, Result};
use crate::polycore::{render_terms, rational, ExactRational, Monomial, SparsePolynomial, VarTable};
use crate::symfn::{build_tables, SymTables};

/// Sorted (descending) multiset of e-indices, e.g. `[2, 0]` for e2*e0.
pub type EIndexKey = Vec<usize>;

/// Right-hand side of a derived identity as a coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedIdentity {
    n: usize,
    degrees: Vec<usize>,
    coefficients: BTreeMap<EIndexKey, ExactRational>,
}

impl DerivedIdentity {
    pub fn new(n: usize, degrees: Vec<usize>, coefficients: BTreeMap<EIndexKey, ExactRational>) -> Self {
        DerivedIdentity {
            n,
            degrees,
            coefficients,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn coefficients(&self) -> &BTreeMap<EIndexKey, ExactRational> {
        &self.coefficients
    }

    /// Terms in canonical order: keys in descending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&EIndexKey, &ExactRational)> {
        self.coefficients.iter().rev()
    }

    /// Substitute the actual e_r(x) and expand.
    pub fn expand(&self, tables: &SymTables) -> SparsePolynomial {
        let vars = tables.vars.table();
        let mut out = SparsePolynomial::zero(vars);
        for (key, c) in &self.coefficients {
            let prod = key
                .iter()
                .fold(SparsePolynomial::one(vars), |acc, &a| &acc * &tables.full.get(a));
            out = &out + &prod.scale(c);
        }
        out
    }

    /// The coefficient list as a polynomial in the formal symbols e0..eN.
    pub fn as_e_polynomial(&self) -> SparsePolynomial {
        coefficient_polynomial(self.n, &self.coefficients)
    }

    /// Left side, e.g. `sum_i e1^(i)*e1^(i)`.
    pub fn render_lhs(&self) -> String {
        let factors: Vec<String> = self.degrees.iter().map(|d| format!("e{}^(i)", d - 1)).collect();
        format!("sum_i {}", factors.join("*"))
    }

    /// Right side, e.g. `-2*e2*e0 + 2*e1*e1`.
    pub fn render_rhs(&self) -> String {
        render_terms(self.terms().map(|(k, c)| (c.clone(), render_key(k))))
    }

    pub fn render(&self) -> String {
        format!("{} = {}", self.render_lhs(), self.render_rhs())
    }
}

pub fn render_key(key: &[usize]) -> String {
    key.iter().map(|a| format!("e{a}")).collect::<Vec<_>>().join("*")
}

fn e_table(n: usize) -> VarTable {
    VarTable::new((0..=n).map(|r| format!("e{r}")))
}

/// Coefficient list rendered as a polynomial in e0..eN.
pub fn coefficient_polynomial(n: usize, coefficients: &BTreeMap<EIndexKey, ExactRational>) -> SparsePolynomial {
    let vars = e_table(n);
    SparsePolynomial::from_terms(
        &vars,
        coefficients.iter().map(|(key, c)| {
            let mut exps = vec![0u32; n + 1];
            for &a in key {
                exps[a] += 1;
            }
            (Monomial::new(exps), c.clone())
        }),
    )
}

fn check_degrees(n: usize, degrees: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("need N >= 1"));
    }
    if let Some(&d) = degrees.iter().find(|&&d| d < 1 || d > n) {
        return Err(Error::invalid(format!("degree {d} outside 1..={n}")));
    }
    Ok(())
}

/// Direct expansion of `sum_i prod_k e^{(i)}_{d_k - 1}` from the symbolic
/// tables. Ground truth for every derived identity.
pub fn brute_force_oracle(n: usize, degrees: &[usize]) -> Result<SparsePolynomial> {
    check_degrees(n, degrees)?;
    if degrees.is_empty() {
        return Err(Error::invalid("need at least one degree"));
    }
    Ok(brute_force_with(&build_tables(n)?, degrees))
}

pub(crate) fn brute_force_with(tables: &SymTables, degrees: &[usize]) -> SparsePolynomial {
    let vars = tables.vars.table();
    let mut out = SparsePolynomial::zero(vars);
    for del in &tables.deleted {
        let prod = degrees
            .iter()
            .fold(SparsePolynomial::one(vars), |acc, &d| &acc * &del.get(d - 1));
        out = &out + &prod;
    }
    out
}

/// `sum_i prod_k E^{(i)}(t_k)` for a fixed N and order, expressed in the
/// formal symbols e0..eN and the parameters t1..t_order.
struct GeneratingQuotient {
    order: usize,
    body: SparsePolynomial,
}

type QuotientCache = Mutex<HashMap<(usize, usize), Arc<GeneratingQuotient>>>;

fn quotient_cache() -> &'static QuotientCache {
    static CACHE: OnceLock<QuotientCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn generating_quotient(n: usize, order: usize) -> Result<Arc<GeneratingQuotient>> {
    if let Some(hit) = quotient_cache().lock().expect("cache poisoned").get(&(n, order)) {
        return Ok(hit.clone());
    }
    // Built outside the lock.
    let built = Arc::new(build_generating_quotient(n, order)?);
    let mut cache = quotient_cache().lock().expect("cache poisoned");
    Ok(cache.entry((n, order)).or_insert(built).clone())
}

fn build_generating_quotient(n: usize, order: usize) -> Result<GeneratingQuotient> {
    let pf = partial_fractions(order)?;
    let names: Vec<String> = (1..=order)
        .map(|j| format!("t{j}"))
        .chain((0..=n).map(|r| format!("e{r}")))
        .collect();
    let vars = VarTable::new(&names);
    let t_idx: Vec<usize> = (0..order).collect();
    let e_idx = |r: usize| order + r;

    // E(t_k) = sum_r e_r t_k^r
    let gen: Vec<SparsePolynomial> = t_idx
        .iter()
        .map(|&k| {
            SparsePolynomial::from_terms(
                &vars,
                (0..=n).map(|r| {
                    (
                        Monomial::var(k, r as u32).mul(&Monomial::var(e_idx(r), 1)),
                        rational(1),
                    )
                }),
            )
        })
        .collect();
    let product_except = |skip: Option<usize>| {
        gen.iter()
            .enumerate()
            .filter(|&(k, _)| Some(k) != skip)
            .fold(SparsePolynomial::one(&vars), |acc, (_, g)| &acc * g)
    };

    let numerators: Vec<SparsePolynomial> = pf
        .coefficients()
        .iter()
        .map(|f| f.numerator().embed(&vars))
        .collect::<Result<_>>()?;
    let denominators: Vec<SparsePolynomial> = pf
        .coefficients()
        .iter()
        .map(|f| f.denominator().embed(&vars))
        .collect::<Result<_>>()?;

    // Common denominator: the Vandermonde product when every f_j denominator
    // divides it, otherwise the plain product.
    let mut vandermonde = SparsePolynomial::one(&vars);
    for a in 0..order {
        for b in a + 1..order {
            let diff = &SparsePolynomial::var(&vars, a) - &SparsePolynomial::var(&vars, b);
            vandermonde = &vandermonde * &diff;
        }
    }
    let mut cofactors = Vec::with_capacity(order);
    let mut common = vandermonde.clone();
    for d in &denominators {
        match common.div_exact(d)? {
            Some(c) => cofactors.push(c),
            None => {
                cofactors.clear();
                break;
            }
        }
    }
    if cofactors.len() != order {
        common = denominators
            .iter()
            .fold(SparsePolynomial::one(&vars), |acc, d| &acc * d);
        cofactors = denominators
            .iter()
            .map(|d| {
                common
                    .div_exact(d)?
                    .ok_or_else(|| Error::Internal("denominator does not divide product".into()))
            })
            .collect::<Result<_>>()?;
    }

    let mut cleared = product_except(None)
        .scale_int(n as i64)
        .checked_mul(&common)?;
    for j in 0..order {
        let deriv = gen[j].derivative(t_idx[j]);
        let term = &(&numerators[j] * &cofactors[j]) * &(&deriv * &product_except(Some(j)));
        cleared = &cleared + &term;
    }
    let body = cleared.div_exact(&common)?.ok_or_else(|| {
        Error::Internal(format!("generating relation for N={n}, order {order} is not divisible"))
    })?;
    Ok(GeneratingQuotient { order, body })
}

/// Express `sum_i prod_k e^{(i)}_{d_k - 1}` (2 or 3 degrees, each in 1..=N)
/// as a combination of products of e_r.
pub fn derive_identity(n: usize, degrees: &[usize]) -> Result<DerivedIdentity> {
    if !(2..=3).contains(&degrees.len()) {
        return Err(Error::invalid(format!(
            "derivation needs 2 or 3 degrees, got {}",
            degrees.len()
        )));
    }
    check_degrees(n, degrees)?;
    let gq = generating_quotient(n, degrees.len())?;
    let order = gq.order;
    let t_idx: Vec<usize> = (0..order).collect();
    let exps: Vec<u32> = degrees.iter().map(|&d| (d - 1) as u32).collect();
    let coeff = gq.body.coefficient_in(&t_idx, &exps);

    let mut coefficients = BTreeMap::new();
    for (m, c) in coeff.terms() {
        let mut key = Vec::with_capacity(order);
        for (var, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let r = var.checked_sub(order).ok_or_else(|| {
                Error::Internal("t-parameter left in extracted coefficient".into())
            })?;
            key.extend(std::iter::repeat_n(r, e as usize));
        }
        if key.len() != order {
            return Err(Error::Internal(format!(
                "derived term of degree {} in e, expected {order}",
                key.len()
            )));
        }
        key.sort_unstable_by(|a, b| b.cmp(a));
        coefficients.insert(key, c.clone());
    }
    Ok(DerivedIdentity::new(n, degrees.to_vec(), coefficients))
}

/// Coefficient list of the closed-form pair identity:
/// `{e_{p-1} e_{q-1}: N-p+1}` together with
/// `{e_{p+q-2-r} e_r: -(p+q-2-2r)}` for r = 0..=q-2, merged on equal keys.
/// Keys mentioning some e_a with a > N vanish and are dropped, as are zero
/// coefficients.
pub fn pair_closed_form(n: usize, p: usize, q: usize) -> BTreeMap<EIndexKey, ExactRational> {
    let mut out: BTreeMap<EIndexKey, ExactRational> = BTreeMap::new();
    let mut push = |a: usize, b: usize, c: i64| {
        let key = if a >= b { vec![a, b] } else { vec![b, a] };
        *out.entry(key).or_insert_with(ExactRational::zero) += rational(c);
    };
    push(p - 1, q - 1, n as i64 - p as i64 + 1);
    for r in 0..=q.saturating_sub(2) {
        if q < 2 {
            break;
        }
        push(p + q - 2 - r, r, -((p + q - 2 - 2 * r) as i64));
    }
    out.retain(|k, c| !c.is_zero() && k.iter().all(|&a| a <= n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_oracle(2, &[2, 2]).unwrap().render(), "x1^2 + x2^2");
        assert_eq!(brute_force_oracle(1, &[1]).unwrap().render(), "1");
        assert_eq!(
            brute_force_oracle(3, &[2, 2]).unwrap().render(),
            "2*x1^2 + 2*x1*x2 + 2*x1*x3 + 2*x2^2 + 2*x2*x3 + 2*x3^2"
        );
        assert!(brute_force_oracle(3, &[4]).is_err());
    }

    #[test]
    fn pair_22_for_three_variables() {
        let d = derive_identity(3, &[2, 2]).unwrap();
        let expect: BTreeMap<_, _> = [(vec![1, 1], rational(2)), (vec![2, 0], rational(-2))].into();
        assert_eq!(d.coefficients(), &expect);
        assert_eq!(d.render(), "sum_i e1^(i)*e1^(i) = -2*e2*e0 + 2*e1*e1");
        assert_eq!(pair_closed_form(3, 2, 2), expect);
    }

    #[test]
    fn pair_11_is_n() {
        for n in 1..=5 {
            let d = derive_identity(n, &[1, 1]).unwrap();
            let expect: BTreeMap<_, _> = [(vec![0, 0], rational(n as i64))].into();
            assert_eq!(d.coefficients(), &expect);
        }
    }

    #[test]
    fn degree_validation() {
        assert!(derive_identity(3, &[2]).is_err());
        assert!(derive_identity(3, &[2, 2, 2, 2]).is_err());
        assert!(derive_identity(3, &[4, 1]).is_err());
        assert!(derive_identity(3, &[0, 1]).is_err());
    }

    #[test]
    fn triple_reexpands_to_oracle() {
        let tables = build_tables(4).unwrap();
        let d = derive_identity(4, &[2, 2, 2]).unwrap();
        assert_eq!(d.expand(&tables), brute_force_oracle(4, &[2, 2, 2]).unwrap());
    }
}
