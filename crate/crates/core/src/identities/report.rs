use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::SparsePolynomial;
use crate::qcomb::QPolynomial;

/// Integer parameters an identity instance may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamName {
    N,
    P,
    Q,
    R,
    I,
    Cutoff,
}

impl ParamName {
    pub const ALL: [ParamName; 6] = [
        ParamName::N,
        ParamName::P,
        ParamName::Q,
        ParamName::R,
        ParamName::I,
        ParamName::Cutoff,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::N => "n",
            ParamName::P => "p",
            ParamName::Q => "q",
            ParamName::R => "r",
            ParamName::I => "i",
            ParamName::Cutoff => "cutoff",
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One parameter assignment. Field order is the sort order of reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<i64>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: ParamName) -> Option<i64> {
        match name {
            ParamName::N => self.n,
            ParamName::P => self.p,
            ParamName::Q => self.q,
            ParamName::R => self.r,
            ParamName::I => self.i,
            ParamName::Cutoff => self.cutoff,
        }
    }

    pub fn set(&mut self, name: ParamName, value: i64) {
        let slot = match name {
            ParamName::N => &mut self.n,
            ParamName::P => &mut self.p,
            ParamName::Q => &mut self.q,
            ParamName::R => &mut self.r,
            ParamName::I => &mut self.i,
            ParamName::Cutoff => &mut self.cutoff,
        };
        *slot = Some(value);
    }

    pub fn with(mut self, name: ParamName, value: i64) -> Self {
        self.set(name, value);
        self
    }

    pub fn n(n: i64) -> Self {
        Self::new().with(ParamName::N, n)
    }

    /// Value of a parameter the identity requires.
    pub fn require(&self, name: ParamName, identity: &str) -> Result<i64> {
        self.get(name)
            .ok_or_else(|| Error::domain(identity, format!("missing parameter {name}")))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = ParamName::ALL
            .iter()
            .filter_map(|&p| self.get(p).map(|v| format!("{p}={v}")))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// One side of an identity, in whichever ring the identity lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Poly(SparsePolynomial),
    Q(QPolynomial),
    Int(BigInt),
}

impl Side {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Side::Int(v.into())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Side::Poly(p) => p.is_zero(),
            Side::Q(p) => p.is_zero(),
            Side::Int(v) => v.is_zero(),
        }
    }

    /// `self - other`; both sides must live in the same ring.
    pub fn difference(&self, other: &Side) -> Result<Side> {
        Ok(match (self, other) {
            (Side::Poly(a), Side::Poly(b)) => Side::Poly(a.checked_sub(b)?),
            (Side::Q(a), Side::Q(b)) => Side::Q(a - b),
            (Side::Int(a), Side::Int(b)) => Side::Int(a - b),
            _ => return Err(Error::Internal("identity sides live in different rings".into())),
        })
    }

    pub fn render(&self) -> String {
        match self {
            Side::Poly(p) => p.render(),
            Side::Q(p) => p.render(),
            Side::Int(v) => v.to_string(),
        }
    }
}

/// An identity evaluated at one parameter point.
#[derive(Clone, Debug)]
pub struct IdentityInstance {
    pub identity: String,
    pub params: Params,
    pub lhs: Side,
    pub rhs: Side,
    /// Extra information attached to the instance, e.g. an alternative reading.
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of one check. The verdict is `Pass` iff `lhs - rhs` is zero.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub instance: IdentityInstance,
    pub verdict: Verdict,
    /// Canonical rendering of `lhs - rhs` when the check fails.
    pub diff: Option<String>,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn from_instance(instance: IdentityInstance, elapsed: Duration) -> Result<Self> {
        let diff = instance.lhs.difference(&instance.rhs)?;
        let (verdict, diff) = if diff.is_zero() {
            (Verdict::Pass, None)
        } else {
            (Verdict::Fail, Some(diff.render()))
        };
        Ok(IdentityReport {
            instance,
            verdict,
            diff,
            elapsed,
        })
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn identity(&self) -> &str {
        &self.instance.identity
    }

    pub fn params(&self) -> &Params {
        &self.instance.params
    }

    pub fn note(&self) -> Option<&str> {
        self.instance.note.as_deref()
    }
}

/// Run `build` and wrap its instance in a timed report.
pub fn timed(build: impl FnOnce() -> Result<IdentityInstance>) -> Result<IdentityReport> {
    let start = Instant::now();
    let instance = build()?;
    IdentityReport::from_instance(instance, start.elapsed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_display_and_order() {
        let a = Params::n(3).with(ParamName::P, 2);
        let b = Params::n(3).with(ParamName::P, 10);
        let c = Params::n(4).with(ParamName::P, 1);
        assert_eq!(a.to_string(), "n=3 p=2");
        assert!(a < b && b < c);
    }

    #[test]
    fn verdict_follows_difference() {
        let inst = |l: i64, r: i64| IdentityInstance {
            identity: "t".into(),
            params: Params::new(),
            lhs: Side::int(l),
            rhs: Side::int(r),
            note: None,
        };
        let ok = IdentityReport::from_instance(inst(4, 4), Duration::ZERO).unwrap();
        assert!(ok.passed() && ok.diff.is_none());
        let bad = IdentityReport::from_instance(inst(4, 5), Duration::ZERO).unwrap();
        assert_eq!(bad.verdict, Verdict::Fail);
        assert_eq!(bad.diff.as_deref(), Some("-1"));
    }

    #[test]
    fn mixed_rings_are_an_error() {
        assert!(Side::int(1).difference(&Side::Q(QPolynomial::one())).is_err());
    }
}
