//! Named catalog of identity checks.
//!
//! Every identity implements [`Identity`] and is registered under its id in
//! an [`IdentityRegistry`]; callers pick one by name at run time and expand a
//! parameter grid over it.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::checks::*;
use super::report::{IdentityReport, ParamName, Params};
use crate::error::{Error, Result};

use ParamName::{Cutoff, I, N, P, Q, R};

/// One identity that can be checked at a parameter point.
pub trait Identity: Send + Sync {
    fn id(&self) -> &'static str;

    /// One-line statement of the identity.
    fn summary(&self) -> &'static str;

    /// Parameters the identity takes, in grid expansion order.
    fn params(&self) -> &'static [ParamName];

    /// Range swept for `param` when the caller gives none. Parameters listed
    /// earlier in [`Identity::params`] are already set in `partial`.
    fn default_range(&self, param: ParamName, partial: &Params) -> RangeInclusive<i64>;

    fn validate(&self, params: &Params) -> Result<()>;

    fn check(&self, params: &Params) -> Result<IdentityReport>;
}

fn get(params: &Params, name: ParamName, id: &str) -> Result<i64> {
    params.require(name, id)
}

fn n_of(partial: &Params) -> i64 {
    partial.n.unwrap_or(1)
}

macro_rules! identity {
    (
        $ty:ident, $id:literal, $summary:literal, [$($param:ident),*],
        defaults: |$dp:ident, $dpartial:ident| $defaults:expr,
        validate: |$vp:ident| $validate:expr,
        check: |$cp:ident| $check:expr $(,)?
    ) => {
        pub struct $ty;

        impl Identity for $ty {
            fn id(&self) -> &'static str {
                $id
            }

            fn summary(&self) -> &'static str {
                $summary
            }

            fn params(&self) -> &'static [ParamName] {
                &[$($param),*]
            }

            #[allow(unused_variables)]
            fn default_range(&self, $dp: ParamName, $dpartial: &Params) -> RangeInclusive<i64> {
                $defaults
            }

            #[allow(unused_variables)]
            fn validate(&self, $vp: &Params) -> Result<()> {
                $validate
            }

            #[allow(unused_variables)]
            fn check(&self, $cp: &Params) -> Result<IdentityReport> {
                $check
            }
        }
    };
}

identity!(Eq11, "eq11", "sum_i dE/dx_i = N t E - t^2 dE/dt (truncated series in t)", [N, Cutoff],
    defaults: |p, s| match p { Cutoff => n_of(s) + 2..=n_of(s) + 2, _ => 1..=1 },
    validate: |s| validate_eq11(get(s, N, "eq11")?, get(s, Cutoff, "eq11")?),
    check: |s| check_series_relation_eq11(get(s, N, "eq11")?, get(s, Cutoff, "eq11")?),
);

identity!(Eq12, "eq12", "sum_i e_{p-1}^(i) = (N-p+1) e_{p-1}", [N, P],
    defaults: |p, s| 1..=n_of(s) + 1,
    validate: |s| validate_eq12(get(s, N, "eq12")?, get(s, P, "eq12")?),
    check: |s| check_eq12(get(s, N, "eq12")?, get(s, P, "eq12")?),
);

identity!(Eq14, "eq14", "N C(N-1,p-1) = (N-p+1) C(N,p-1)", [N, P],
    defaults: |p, s| 1..=n_of(s),
    validate: |s| validate_eq14(get(s, N, "eq14")?, get(s, P, "eq14")?),
    check: |s| check_eq14(get(s, N, "eq14")?, get(s, P, "eq14")?),
);

identity!(Eq16, "eq16", "closed form of e_{p-1}^(i)(1,q,..,q^{N-1}) equals direct substitution", [N, P, I],
    defaults: |p, s| 1..=n_of(s),
    validate: |s| validate_eq16(get(s, N, "eq16")?, get(s, P, "eq16")?, get(s, I, "eq16")?),
    check: |s| check_eq16(get(s, N, "eq16")?, get(s, P, "eq16")?, get(s, I, "eq16")?),
);

identity!(Eq17, "eq17", "sum_i sum_u q^{u(u-(p-i-1))} [N-i,u][i-1,p-1-u] = (N-p+1)[N,p-1]", [N, P],
    defaults: |p, s| 1..=n_of(s),
    validate: |s| validate_eq17(get(s, N, "eq17")?, get(s, P, "eq17")?),
    check: |s| check_eq17(get(s, N, "eq17")?, get(s, P, "eq17")?),
);

identity!(Eq19, "eq19", "sum_{i>p} sum_u q^{u(i-p)} [N+u-i,u][i-u-1,p-u] = (N-p)[N,p]", [N, P],
    defaults: |p, s| 0..=n_of(s) - 1,
    validate: |s| validate_eq19(get(s, N, "eq19")?, get(s, P, "eq19")?),
    check: |s| check_eq19(get(s, N, "eq19")?, get(s, P, "eq19")?),
);

identity!(Eq24, "eq24", "two-parameter relation for sum_i dE(t1)/dx_i dE(t2)/dx_i, times (t1-t2)", [N, Cutoff],
    defaults: |p, s| match p { Cutoff => n_of(s) + 2..=n_of(s) + 2, _ => 1..=1 },
    validate: |s| validate_eq24(get(s, N, "eq24")?, get(s, Cutoff, "eq24")?),
    check: |s| check_two_var_relation_eq24(get(s, N, "eq24")?, get(s, Cutoff, "eq24")?),
);

fn pair_defaults(param: ParamName, partial: &Params) -> RangeInclusive<i64> {
    match param {
        P => 2..=n_of(partial) + 1,
        _ => 2..=partial.p.unwrap_or(2),
    }
}

identity!(Eq25, "eq25", "sum_i e_{p-1}^(i) e_{q-1}^(i) = (N-p+1) e_{p-1} e_{q-1} - sum_r (p+q-2-2r) e_{p+q-2-r} e_r", [N, P, Q],
    defaults: |p, s| pair_defaults(p, s),
    validate: |s| validate_pair("eq25", get(s, N, "eq25")?, get(s, P, "eq25")?, get(s, Q, "eq25")?),
    check: |s| check_eq25(get(s, N, "eq25")?, get(s, P, "eq25")?, get(s, Q, "eq25")?),
);

identity!(Eq26, "eq26", "all-ones specialization of eq25 in binomial coefficients", [N, P, Q],
    defaults: |p, s| pair_defaults(p, s),
    validate: |s| validate_pair("eq26", get(s, N, "eq26")?, get(s, P, "eq26")?, get(s, Q, "eq26")?),
    check: |s| check_eq26(get(s, N, "eq26")?, get(s, P, "eq26")?, get(s, Q, "eq26")?),
);

identity!(Eq27, "eq27", "rearranged binomial form of eq26", [N, P, Q],
    defaults: |p, s| pair_defaults(p, s),
    validate: |s| validate_pair("eq27", get(s, N, "eq27")?, get(s, P, "eq27")?, get(s, Q, "eq27")?),
    check: |s| check_eq27(get(s, N, "eq27")?, get(s, P, "eq27")?, get(s, Q, "eq27")?),
);

identity!(Eq28, "eq28", "C(N,q-1) - C(N-1,q-1) = C(N,q-2) as printed (known not to hold)", [N, Q],
    defaults: |p, s| 1..=n_of(s) + 1,
    validate: |s| validate_eq28("eq28", get(s, N, "eq28")?, get(s, Q, "eq28")?),
    check: |s| check_eq28(get(s, N, "eq28")?, get(s, Q, "eq28")?),
);

identity!(Eq28c, "eq28c", "C(N,q-1) - C(N-1,q-1) = C(N-1,q-2) (Pascal's rule)", [N, Q],
    defaults: |p, s| 1..=n_of(s) + 1,
    validate: |s| validate_eq28("eq28c", get(s, N, "eq28c")?, get(s, Q, "eq28c")?),
    check: |s| check_eq28_corrected(get(s, N, "eq28c")?, get(s, Q, "eq28c")?),
);

identity!(Eq29, "eq29", "C(N,p-1) C(N,q) = sum_s [C(N+1,p+q-s) C(N,s) - C(N,p+q-s) C(N+1,s)]", [N, P, Q],
    defaults: |p, s| match p {
        P => 0..=2 * n_of(s),
        _ => 0..=s.p.unwrap_or(0).min(2 * n_of(s) - s.p.unwrap_or(0)),
    },
    validate: |s| validate_eq29(get(s, N, "eq29")?, get(s, P, "eq29")?, get(s, Q, "eq29")?),
    check: |s| check_eq29(get(s, N, "eq29")?, get(s, P, "eq29")?, get(s, Q, "eq29")?),
);

identity!(Derive2, "derive2", "derived pair coefficients equal the eq25 closed form", [N, P, Q],
    defaults: |p, s| match p {
        P => 2..=n_of(s),
        _ => 2..=s.p.unwrap_or(2),
    },
    validate: |s| {
        let (n, p, q) = (get(s, N, "derive2")?, get(s, P, "derive2")?, get(s, Q, "derive2")?);
        validate_degrees("derive2", n, &[p, q])?;
        if p >= q && q >= 2 { Ok(()) } else { Err(Error::domain("derive2", format!("need p >= q >= 2, got p={p}, q={q}"))) }
    },
    check: |s| check_derived_pair(get(s, N, "derive2")?, get(s, P, "derive2")?, get(s, Q, "derive2")?),
);

identity!(Triple, "triple", "sum_i e_{p-1}^(i) e_{q-1}^(i) e_{r-1}^(i) via derived coefficients vs brute force", [N, P, Q, R],
    defaults: |p, s| match p {
        P => 1..=n_of(s),
        Q => 1..=s.p.unwrap_or(1),
        _ => 1..=s.q.unwrap_or(1),
    },
    validate: |s| validate_degrees("triple", get(s, N, "triple")?, &[get(s, P, "triple")?, get(s, Q, "triple")?, get(s, R, "triple")?]),
    check: |s| check_triple(get(s, N, "triple")?, get(s, P, "triple")?, get(s, Q, "triple")?, get(s, R, "triple")?),
);

identity!(Pf2, "pf2", "1/((1+x t1)(1+x t2)) = 1 + sum_j f_j x/(1+x t_j)", [],
    defaults: |p, s| 0..=0,
    validate: |s| Ok(()),
    check: |s| check_partial_fractions(2),
);

identity!(Pf3, "pf3", "1/((1+x t1)(1+x t2)(1+x t3)) = 1 + sum_j f_j x/(1+x t_j)", [],
    defaults: |p, s| 0..=0,
    validate: |s| Ok(()),
    check: |s| check_partial_fractions(3),
);

/// Largest N accepted by grid runs.
pub const MAX_N: i64 = 12;

pub struct IdentityRegistry {
    entries: BTreeMap<&'static str, Box<dyn Identity>>,
}

impl IdentityRegistry {
    pub fn empty() -> Self {
        IdentityRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Every identity shipped with the crate.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Eq11));
        reg.register(Box::new(Eq12));
        reg.register(Box::new(Eq14));
        reg.register(Box::new(Eq16));
        reg.register(Box::new(Eq17));
        reg.register(Box::new(Eq19));
        reg.register(Box::new(Eq24));
        reg.register(Box::new(Eq25));
        reg.register(Box::new(Eq26));
        reg.register(Box::new(Eq27));
        reg.register(Box::new(Eq28));
        reg.register(Box::new(Eq28c));
        reg.register(Box::new(Eq29));
        reg.register(Box::new(Derive2));
        reg.register(Box::new(Triple));
        reg.register(Box::new(Pf2));
        reg.register(Box::new(Pf3));
        reg
    }

    /// Add an identity, replacing any previous one with the same id.
    pub fn register(&mut self, identity: Box<dyn Identity>) {
        self.entries.insert(identity.id(), identity);
    }

    pub fn get(&self, id: &str) -> Option<&dyn Identity> {
        self.entries.get(id).map(|b| b.as_ref())
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Identity> {
        self.entries.values().map(|b| b.as_ref())
    }
}

impl Default for IdentityRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Caller-supplied ranges; absent parameters take the identity's defaults.
pub type ParamRanges = BTreeMap<ParamName, RangeInclusive<i64>>;

/// Parameter points to run, plus how many points of the requested grid fell
/// outside the identity's domain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridPlan {
    pub points: Vec<Params>,
    pub skipped: usize,
}

/// Expand the grid for `identity`.
///
/// Points outside the domain are skipped and counted when they come from a
/// swept range. A single explicit point outside the domain, a parameter the
/// identity does not take, a missing N, N above [`MAX_N`], or an empty grid
/// are errors.
pub fn expand_grid(identity: &dyn Identity, ranges: &ParamRanges) -> Result<GridPlan> {
    let id = identity.id();
    let wanted = identity.params();
    if let Some(extra) = ranges.keys().find(|k| !wanted.contains(k)) {
        return Err(Error::invalid(format!("{id} does not take parameter `{extra}`")));
    }
    if wanted.contains(&N) {
        let n = ranges
            .get(&N)
            .ok_or_else(|| Error::invalid(format!("{id} needs a value for n")))?;
        if *n.end() > MAX_N || *n.start() < 0 {
            return Err(Error::invalid(format!("n must lie in 0..={MAX_N}")));
        }
    }
    for (name, range) in ranges {
        if range.is_empty() {
            return Err(Error::invalid(format!("empty range for {name}")));
        }
    }

    let mut partials = vec![Params::new()];
    for &name in wanted {
        let mut next = Vec::new();
        for partial in &partials {
            let range = ranges
                .get(&name)
                .cloned()
                .unwrap_or_else(|| identity.default_range(name, partial));
            for v in range {
                next.push(partial.clone().with(name, v));
            }
        }
        partials = next;
    }

    let explicit_point = wanted
        .iter()
        .all(|k| ranges.get(k).is_some_and(|r| r.start() == r.end()));
    let mut plan = GridPlan::default();
    for point in partials {
        match identity.validate(&point) {
            Ok(()) => plan.points.push(point),
            Err(e) if explicit_point => return Err(e),
            Err(_) => plan.skipped += 1,
        }
    }
    if plan.points.is_empty() {
        return Err(Error::invalid(format!(
            "no parameter point in the requested grid lies in the domain of {id}"
        )));
    }
    Ok(plan)
}

/// Check every point, using up to `workers` threads. Reports are sorted by
/// identity id and then parameters, independent of the worker count.
pub fn run_grid(identity: &dyn Identity, points: &[Params], workers: usize) -> Result<Vec<IdentityReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let mut reports = pool.install(|| {
        points
            .par_iter()
            .map(|p| identity.check(p))
            .collect::<Result<Vec<_>>>()
    })?;
    reports.sort_by(|a, b| (a.identity(), a.params()).cmp(&(b.identity(), b.params())));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranges(items: &[(ParamName, RangeInclusive<i64>)]) -> ParamRanges {
        items.iter().cloned().collect()
    }

    #[test]
    fn builtin_ids() {
        let reg = IdentityRegistry::builtin();
        let ids: Vec<_> = reg.ids().collect();
        for want in ["eq11", "eq12", "eq14", "eq17", "eq19", "eq24", "eq25", "eq26", "eq27", "eq28", "eq29", "triple"] {
            assert!(ids.contains(&want), "{want} missing");
        }
        assert!(reg.get("nosuch").is_none());
    }

    #[test]
    fn eq25_default_grid() {
        let reg = IdentityRegistry::builtin();
        let plan = expand_grid(reg.get("eq25").unwrap(), &ranges(&[(N, 3..=3)])).unwrap();
        // p in 2..=4, q in 2..=p
        assert_eq!(plan.points.len(), 1 + 2 + 3);
        assert_eq!(plan.skipped, 0);
    }

    #[test]
    fn swept_ranges_skip_out_of_domain() {
        let reg = IdentityRegistry::builtin();
        let plan = expand_grid(
            reg.get("eq25").unwrap(),
            &ranges(&[(N, 4..=4), (P, 2..=3), (Q, 2..=3)]),
        )
        .unwrap();
        assert_eq!(plan.points.len(), 3);
        assert_eq!(plan.skipped, 1);
    }

    #[test]
    fn explicit_bad_point_is_an_error() {
        let reg = IdentityRegistry::builtin();
        let err = expand_grid(
            reg.get("eq25").unwrap(),
            &ranges(&[(N, 4..=4), (P, 2..=2), (Q, 3..=3)]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn unknown_parameter_and_bounds() {
        let reg = IdentityRegistry::builtin();
        let eq12 = reg.get("eq12").unwrap();
        assert!(expand_grid(eq12, &ranges(&[(N, 3..=3), (Q, 1..=1)])).is_err());
        assert!(expand_grid(eq12, &ranges(&[(N, 3..=13)])).is_err());
        assert!(expand_grid(eq12, &ranges(&[])).is_err());
    }

    #[test]
    fn run_is_sorted_and_worker_independent() {
        let reg = IdentityRegistry::builtin();
        let eq12 = reg.get("eq12").unwrap();
        let plan = expand_grid(eq12, &ranges(&[(N, 1..=4)])).unwrap();
        let one = run_grid(eq12, &plan.points, 1).unwrap();
        let four = run_grid(eq12, &plan.points, 4).unwrap();
        let key = |r: &[IdentityReport]| r.iter().map(|x| (x.params().clone(), x.verdict)).collect::<Vec<_>>();
        assert_eq!(key(&one), key(&four));
        assert!(one.windows(2).all(|w| w[0].params() < w[1].params()));
    }

    #[test]
    fn parameterless_identity() {
        let reg = IdentityRegistry::builtin();
        let plan = expand_grid(reg.get("pf2").unwrap(), &ranges(&[])).unwrap();
        assert_eq!(plan.points, vec![Params::new()]);
    }
}
