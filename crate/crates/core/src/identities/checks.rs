//! Executable forms of the identities. Each `check_*` validates its domain,
//! builds both sides exactly and returns a timed report.

use num_bigint::BigInt;

use super::derive::{brute_force_with, coefficient_polynomial, derive_identity, pair_closed_form};
use super::partial_fractions::partial_fractions;
use super::report::{timed, IdentityInstance, IdentityReport, Params, ParamName, Side};
use crate::error::{Error, Result};
use crate::polycore::{series_mul, SparsePolynomial, TruncatedSeries};
use crate::qcomb::{
    binomial, deleted_elem_geometric, deleted_elem_geometric_closed, q_binomial, QPolynomial,
};
use crate::symfn::{build_tables, gen_function_in, VariableSet};

fn ensure(cond: bool, id: &str, reason: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(id, reason()))
    }
}

fn instance(id: &str, params: Params, lhs: Side, rhs: Side) -> IdentityInstance {
    IdentityInstance {
        identity: id.to_string(),
        params,
        lhs,
        rhs,
        note: None,
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub(crate) fn validate_n(id: &str, n: i64) -> Result<()> {
    ensure(n >= 1, id, || format!("need N >= 1, got N={n}"))
}

// ---------------------------------------------------------------------------
// single-parameter-family identities

pub fn validate_eq11(n: i64, cutoff: i64) -> Result<()> {
    validate_n("eq11", n)?;
    ensure(cutoff > n, "eq11", || format!("need cutoff >= N+1, got cutoff={cutoff}"))
}

/// `sum_i dE/dx_i = N t E - t^2 dE/dt` as a truncated series in t.
pub fn check_series_relation_eq11(n: i64, cutoff: i64) -> Result<IdentityReport> {
    validate_eq11(n, cutoff)?;
    timed(|| {
        let vars = VariableSet::with_extra(n as usize, &["t"])?;
        let t = vars.table().index_of("t").expect("t present");
        let tp = SparsePolynomial::var(vars.table(), t);
        let e = gen_function_in(&vars, "t", cutoff as usize)?;

        let mut lhs = TruncatedSeries::from_indices(SparsePolynomial::zero(vars.table()), vec![t], e.cutoff());
        for i in 1..=vars.n() {
            lhs = lhs.add(&e.derivative(vars.x_index(i)))?;
        }
        let nte = e.mul_poly(&tp)?.scale(&crate::polycore::rational(n));
        let t2de = e.derivative(t).mul_poly(&tp.pow(2))?;
        let rhs = nte.sub(&t2de)?;
        let keep = lhs.cutoff().min(rhs.cutoff());
        Ok(instance(
            "eq11",
            Params::n(n).with(ParamName::Cutoff, cutoff),
            Side::Poly(lhs.with_cutoff(keep).body().clone()),
            Side::Poly(rhs.with_cutoff(keep).body().clone()),
        ))
    })
}

pub fn validate_eq12(n: i64, p: i64) -> Result<()> {
    validate_n("eq12", n)?;
    ensure((1..=n + 1).contains(&p), "eq12", || format!("need 1 <= p <= N+1, got p={p}"))
}

/// `sum_i e_{p-1}^{(i)} = (N-p+1) e_{p-1}`.
pub fn check_eq12(n: i64, p: i64) -> Result<IdentityReport> {
    validate_eq12(n, p)?;
    timed(|| {
        let tables = build_tables(n as usize)?;
        let r = (p - 1) as usize;
        let lhs = tables
            .deleted
            .iter()
            .fold(SparsePolynomial::zero(tables.vars.table()), |acc, d| &acc + &d.get(r));
        let rhs = tables.full.get(r).scale_int(n - p + 1);
        Ok(instance("eq12", Params::n(n).with(ParamName::P, p), Side::Poly(lhs), Side::Poly(rhs)))
    })
}

pub fn validate_eq14(n: i64, p: i64) -> Result<()> {
    validate_n("eq14", n)?;
    ensure((1..=n).contains(&p), "eq14", || format!("need 1 <= p <= N, got p={p}"))
}

/// `N C(N-1, p-1) = (N-p+1) C(N, p-1)`.
pub fn check_eq14(n: i64, p: i64) -> Result<IdentityReport> {
    validate_eq14(n, p)?;
    timed(|| {
        let lhs = big(n) * binomial(n - 1, p - 1);
        let rhs = big(n - p + 1) * binomial(n, p - 1);
        Ok(instance("eq14", Params::n(n).with(ParamName::P, p), Side::Int(lhs), Side::Int(rhs)))
    })
}

pub fn validate_eq16(n: i64, p: i64, i: i64) -> Result<()> {
    validate_n("eq16", n)?;
    ensure((1..=n).contains(&p), "eq16", || format!("need 1 <= p <= N, got p={p}"))?;
    ensure((1..=n).contains(&i), "eq16", || format!("need 1 <= i <= N, got i={i}"))
}

/// Closed form of `e_{p-1}^{(i)}(1, q, .., q^{N-1})` against direct substitution.
pub fn check_eq16(n: i64, p: i64, i: i64) -> Result<IdentityReport> {
    validate_eq16(n, p, i)?;
    timed(|| {
        let (nu, pu, iu) = (n as usize, p as usize, i as usize);
        Ok(instance(
            "eq16",
            Params::n(n).with(ParamName::P, p).with(ParamName::I, i),
            Side::Q(deleted_elem_geometric_closed(nu, pu, iu)?),
            Side::Q(deleted_elem_geometric(nu, pu, iu)?),
        ))
    })
}

pub fn validate_eq17(n: i64, p: i64) -> Result<()> {
    validate_n("eq17", n)?;
    ensure((1..=n).contains(&p), "eq17", || format!("need 1 <= p <= N, got p={p}"))
}

/// `sum_i sum_u q^{u(u-(p-i-1))} [N-i,u][i-1,p-1-u] = (N-p+1)[N,p-1]`, with
/// each inner sum taken from the substituted e_{p-1}^{(i)}.
pub fn check_eq17(n: i64, p: i64) -> Result<IdentityReport> {
    validate_eq17(n, p)?;
    timed(|| {
        let shift = ((p - 1) * (p - 2) / 2) as usize;
        let mut lhs = QPolynomial::zero();
        for i in 1..=n as usize {
            let value = deleted_elem_geometric(n as usize, p as usize, i)?;
            let inner = value.unshift(shift).ok_or_else(|| {
                Error::Internal(format!("e_{}^({i}) at the geometric point lacks q^{shift}", p - 1))
            })?;
            lhs = &lhs + &inner;
        }
        let rhs = q_binomial(n, p - 1).scale(&big(n - p + 1));
        Ok(instance("eq17", Params::n(n).with(ParamName::P, p), Side::Q(lhs), Side::Q(rhs)))
    })
}

pub fn validate_eq19(n: i64, p: i64) -> Result<()> {
    validate_n("eq19", n)?;
    ensure((0..n).contains(&p), "eq19", || format!("need 0 <= p <= N-1, got p={p}"))
}

/// Left side of the reindexed q-identity:
/// `sum_{i=p+1}^{N} sum_{u=0}^{p} q^{u(i-p)} [N+u-i, u][i-u-1, p-u]`.
pub fn eq19_lhs(n: i64, p: i64) -> QPolynomial {
    let mut total = QPolynomial::zero();
    for i in p + 1..=n {
        for u in 0..=p {
            let term = &q_binomial(n + u - i, u) * &q_binomial(i - u - 1, p - u);
            total = &total + &term.shift((u * (i - p)) as usize);
        }
    }
    total
}

/// Reindexed q-identity: `eq19_lhs(N, p) = (N-p)[N, p]`.
pub fn check_eq19(n: i64, p: i64) -> Result<IdentityReport> {
    validate_eq19(n, p)?;
    timed(|| {
        let rhs = q_binomial(n, p).scale(&big(n - p));
        Ok(instance(
            "eq19",
            Params::n(n).with(ParamName::P, p),
            Side::Q(eq19_lhs(n, p)),
            Side::Q(rhs),
        ))
    })
}

pub fn validate_eq24(n: i64, cutoff: i64) -> Result<()> {
    validate_n("eq24", n)?;
    ensure(cutoff > n, "eq24", || format!("need cutoff >= N+1, got cutoff={cutoff}"))
}

/// Two-parameter relation, multiplied through by (t1 - t2):
///
/// ```text
/// (t1-t2) sum_i dE(t1)/dx_i dE(t2)/dx_i
///     = (t1-t2) N t1 t2 E(t1) E(t2) - t1 t2 [t1^2 E'(t1) E(t2) - t2^2 E(t1) E'(t2)]
/// ```
///
/// `cutoff` bounds the degree in each of t1, t2; the series is held to
/// total degree `2*cutoff + 1`, which retains every such term.
pub fn check_two_var_relation_eq24(n: i64, cutoff: i64) -> Result<IdentityReport> {
    validate_eq24(n, cutoff)?;
    timed(|| {
        let total = 2 * cutoff as usize + 1;
        let vars = VariableSet::with_extra(n as usize, &["t1", "t2"])?;
        let t1 = vars.table().index_of("t1").expect("t1 present");
        let t2 = vars.table().index_of("t2").expect("t2 present");
        let params = vec![t1, t2];
        let lift = |s: TruncatedSeries| TruncatedSeries::from_indices(s.body().clone(), params.clone(), total);
        let e1 = lift(gen_function_in(&vars, "t1", total)?);
        let e2 = lift(gen_function_in(&vars, "t2", total)?);
        let p1 = SparsePolynomial::var(vars.table(), t1);
        let p2 = SparsePolynomial::var(vars.table(), t2);
        let diff = &p1 - &p2;
        let t1t2 = &p1 * &p2;

        let mut lhs = TruncatedSeries::from_indices(SparsePolynomial::zero(vars.table()), params.clone(), total);
        for i in 1..=vars.n() {
            let xi = vars.x_index(i);
            lhs = lhs.add(&series_mul(&e1.derivative(xi), &e2.derivative(xi), total)?)?;
        }
        let lhs = lhs.mul_poly(&diff)?;

        let e1e2 = series_mul(&e1, &e2, total)?;
        let first = e1e2.mul_poly(&(&diff * &t1t2).scale_int(n))?;
        let a = series_mul(&e1.derivative(t1), &e2, total)?.mul_poly(&p1.pow(2))?;
        let b = series_mul(&e1, &e2.derivative(t2), total)?.mul_poly(&p2.pow(2))?;
        let rhs = first.sub(&a.sub(&b)?.mul_poly(&t1t2)?)?;

        let keep = lhs.cutoff().min(rhs.cutoff());
        Ok(instance(
            "eq24",
            Params::n(n).with(ParamName::Cutoff, cutoff),
            Side::Poly(lhs.with_cutoff(keep).body().clone()),
            Side::Poly(rhs.with_cutoff(keep).body().clone()),
        ))
    })
}

// ---------------------------------------------------------------------------
// pair identities

pub fn validate_pair(id: &str, n: i64, p: i64, q: i64) -> Result<()> {
    validate_n(id, n)?;
    ensure(p >= q && q >= 2, id, || format!("need p >= q >= 2, got p={p}, q={q}"))?;
    ensure(p - 1 <= n, id, || format!("need p-1 <= N, got p={p}, N={n}"))
}

/// `sum_i e_{p-1}^{(i)} e_{q-1}^{(i)}
///   = (N-p+1) e_{p-1} e_{q-1} - sum_{r=0}^{q-2} (p+q-2-2r) e_{p+q-2-r} e_r`.
pub fn check_eq25(n: i64, p: i64, q: i64) -> Result<IdentityReport> {
    validate_pair("eq25", n, p, q)?;
    timed(|| {
        let tables = build_tables(n as usize)?;
        let (pu, qu) = (p as usize, q as usize);
        let lhs = brute_force_with(&tables, &[pu, qu]);
        let e = |r: i64| tables.full.get(r as usize);
        let mut rhs = (&e(p - 1) * &e(q - 1)).scale_int(n - p + 1);
        for r in 0..=q - 2 {
            let term = (&e(p + q - 2 - r) * &e(r)).scale_int(p + q - 2 - 2 * r);
            rhs = &rhs - &term;
        }
        Ok(instance(
            "eq25",
            Params::n(n).with(ParamName::P, p).with(ParamName::Q, q),
            Side::Poly(lhs),
            Side::Poly(rhs),
        ))
    })
}

/// All-ones specialization:
/// `N C(N-1,p-1) C(N-1,q-1) = (N-p+1) C(N,p-1) C(N,q-1) - sum_r (p+q-2-2r) C(N,p+q-2-r) C(N,r)`.
pub fn check_eq26(n: i64, p: i64, q: i64) -> Result<IdentityReport> {
    validate_pair("eq26", n, p, q)?;
    timed(|| {
        let lhs = big(n) * binomial(n - 1, p - 1) * binomial(n - 1, q - 1);
        let mut rhs = big(n - p + 1) * binomial(n, p - 1) * binomial(n, q - 1);
        for r in 0..=q - 2 {
            rhs -= big(p + q - 2 - 2 * r) * binomial(n, p + q - 2 - r) * binomial(n, r);
        }
        Ok(instance(
            "eq26",
            Params::n(n).with(ParamName::P, p).with(ParamName::Q, q),
            Side::Int(lhs),
            Side::Int(rhs),
        ))
    })
}

/// Rearranged form:
/// `C(N-1,p-1) [C(N,q-1) - C(N-1,q-1)]
///   = sum_{r=0}^{q-2} C(N-1,p+q-3-r) C(N,r) - sum_{r=1}^{q-2} C(N,p+q-2-r) C(N-1,r-1)`.
/// The second sum is empty for q = 2.
pub fn check_eq27(n: i64, p: i64, q: i64) -> Result<IdentityReport> {
    validate_pair("eq27", n, p, q)?;
    timed(|| {
        let lhs = binomial(n - 1, p - 1) * (binomial(n, q - 1) - binomial(n - 1, q - 1));
        let mut rhs = BigInt::from(0);
        for r in 0..=q - 2 {
            rhs += binomial(n - 1, p + q - 3 - r) * binomial(n, r);
        }
        for r in 1..=q - 2 {
            rhs -= binomial(n, p + q - 2 - r) * binomial(n - 1, r - 1);
        }
        Ok(instance(
            "eq27",
            Params::n(n).with(ParamName::P, p).with(ParamName::Q, q),
            Side::Int(lhs),
            Side::Int(rhs),
        ))
    })
}

pub fn validate_eq28(id: &str, n: i64, q: i64) -> Result<()> {
    validate_n(id, n)?;
    ensure(q >= 1, id, || format!("need q >= 1, got q={q}"))
}

/// The Pascal-type step as printed: `C(N,q-1) - C(N-1,q-1) = C(N,q-2)`.
/// This does not hold in general. A failing report carries the value of the
/// corrected right side `C(N-1,q-2)` in its note.
pub fn check_eq28(n: i64, q: i64) -> Result<IdentityReport> {
    validate_eq28("eq28", n, q)?;
    timed(|| {
        let lhs = binomial(n, q - 1) - binomial(n - 1, q - 1);
        let rhs = binomial(n, q - 2);
        let corrected = binomial(n - 1, q - 2);
        let note = (lhs != rhs).then(|| {
            let verdict = if lhs == corrected { "holds" } else { "also fails" };
            format!(
                "printed right side C(N,q-2) = {rhs}; corrected reading C(N-1,q-2) = {corrected} {verdict}"
            )
        });
        let mut inst = instance(
            "eq28",
            Params::n(n).with(ParamName::Q, q),
            Side::Int(lhs),
            Side::Int(rhs),
        );
        inst.note = note;
        Ok(inst)
    })
}

/// Pascal's rule in the corrected reading: `C(N,q-1) - C(N-1,q-1) = C(N-1,q-2)`.
pub fn check_eq28_corrected(n: i64, q: i64) -> Result<IdentityReport> {
    validate_eq28("eq28c", n, q)?;
    timed(|| {
        let lhs = binomial(n, q - 1) - binomial(n - 1, q - 1);
        let rhs = binomial(n - 1, q - 2);
        Ok(instance(
            "eq28c",
            Params::n(n).with(ParamName::Q, q),
            Side::Int(lhs),
            Side::Int(rhs),
        ))
    })
}

pub fn validate_eq29(n: i64, p: i64, q: i64) -> Result<()> {
    ensure(n >= 0, "eq29", || format!("need N >= 0, got N={n}"))?;
    ensure(p >= q && q >= 0, "eq29", || format!("need p >= q >= 0, got p={p}, q={q}"))
}

/// `C(N,p-1) C(N,q) = sum_{s=0}^{q} [C(N+1,p+q-s) C(N,s) - C(N,p+q-s) C(N+1,s)]`.
pub fn check_eq29(n: i64, p: i64, q: i64) -> Result<IdentityReport> {
    validate_eq29(n, p, q)?;
    timed(|| {
        let lhs = binomial(n, p - 1) * binomial(n, q);
        let mut rhs = BigInt::from(0);
        for s in 0..=q {
            rhs += binomial(n + 1, p + q - s) * binomial(n, s);
            rhs -= binomial(n, p + q - s) * binomial(n + 1, s);
        }
        Ok(instance(
            "eq29",
            Params::n(n).with(ParamName::P, p).with(ParamName::Q, q),
            Side::Int(lhs),
            Side::Int(rhs),
        ))
    })
}

// ---------------------------------------------------------------------------
// derivation engine

pub fn validate_degrees(id: &str, n: i64, degrees: &[i64]) -> Result<()> {
    validate_n(id, n)?;
    for &d in degrees {
        ensure((1..=n).contains(&d), id, || format!("degree {d} outside 1..=N (N={n})"))?;
    }
    Ok(())
}

/// Derived pair identity against the closed-form pair coefficients, both as
/// polynomials in the formal symbols e0..eN.
pub fn check_derived_pair(n: i64, p: i64, q: i64) -> Result<IdentityReport> {
    validate_degrees("derive2", n, &[p, q])?;
    ensure(p >= q && q >= 2, "derive2", || format!("need p >= q >= 2, got p={p}, q={q}"))?;
    timed(|| {
        let (nu, pu, qu) = (n as usize, p as usize, q as usize);
        let derived = derive_identity(nu, &[pu, qu])?;
        Ok(instance(
            "derive2",
            Params::n(n).with(ParamName::P, p).with(ParamName::Q, q),
            Side::Poly(derived.as_e_polynomial()),
            Side::Poly(coefficient_polynomial(nu, &pair_closed_form(nu, pu, qu))),
        ))
    })
}

/// Brute-force `sum_i e_{p-1}^{(i)} e_{q-1}^{(i)} e_{r-1}^{(i)}` against the
/// re-expanded derived triple identity.
pub fn check_triple(n: i64, p: i64, q: i64, r: i64) -> Result<IdentityReport> {
    validate_degrees("triple", n, &[p, q, r])?;
    timed(|| {
        let degrees = [p as usize, q as usize, r as usize];
        let tables = build_tables(n as usize)?;
        let derived = derive_identity(n as usize, &degrees)?;
        let mut inst = instance(
            "triple",
            Params::n(n).with(ParamName::P, p).with(ParamName::Q, q).with(ParamName::R, r),
            Side::Poly(brute_force_with(&tables, &degrees)),
            Side::Poly(derived.expand(&tables)),
        );
        inst.note = Some(derived.render());
        Ok(inst)
    })
}

/// Partial fractions of the given order, substituted back and cross-multiplied.
pub fn check_partial_fractions(order: usize) -> Result<IdentityReport> {
    let id = match order {
        2 => "pf2",
        3 => "pf3",
        _ => return Err(Error::invalid(format!("partial fraction order must be 2 or 3, got {order}"))),
    };
    timed(|| {
        let pf = partial_fractions(order)?;
        let (lhs, rhs) = pf.defining_relation()?;
        let a = lhs.numerator() * rhs.denominator();
        let b = rhs.numerator() * lhs.denominator();
        let mut inst = instance(id, Params::new(), Side::Poly(a), Side::Poly(b));
        inst.note = Some(pf.render().replace('\n', "; "));
        Ok(inst)
    })
}
