use std::cmp::Ordering;
use std::fmt;

/// Exponent vector indexed by variable position in a [`VarTable`](super::VarTable).
///
/// Trailing zero exponents are always trimmed, so two monomials describing
/// the same product compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    /// The single variable `var` raised to `power`.
    pub fn var(var: usize, power: u32) -> Self {
        let mut exps = vec![0; var + 1];
        exps[var] = power;
        Monomial::new(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Total degree restricted to the given variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.exponent(v)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short) {
            *e += s;
        }
        Monomial(exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.0.clone();
        for (e, s) in exps.iter_mut().zip(&self.0) {
            *e -= s;
        }
        Some(Monomial::new(exps))
    }

    /// Lower the exponent of `var` by one, returning the old exponent.
    pub(crate) fn lowered(&self, var: usize) -> Option<(u32, Monomial)> {
        let e = self.exponent(var);
        if e == 0 {
            return None;
        }
        let mut exps = self.0.clone();
        exps[var] -= 1;
        Some((e, Monomial::new(exps)))
    }

    /// Drop `var`, returning its exponent and the remaining monomial.
    pub(crate) fn split_off(&self, var: usize) -> (u32, Monomial) {
        let e = self.exponent(var);
        if e == 0 {
            return (0, self.clone());
        }
        let mut exps = self.0.clone();
        exps[var] = 0;
        (e, Monomial::new(exps))
    }

    /// Rewrite variable positions through `map` (old index -> new index).
    pub(crate) fn remap(&self, map: &[usize]) -> Monomial {
        let width = map.iter().copied().max().map_or(0, |m| m + 1);
        let mut exps = vec![0; width];
        for (old, &e) in self.0.iter().enumerate() {
            if e > 0 {
                exps[map[old]] += e;
            }
        }
        Monomial::new(exps)
    }

    /// Lexicographic comparison with variable 0 most significant.
    fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for v in 0..n {
            match self.exponent(v).cmp(&other.exponent(v)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Ordering used for canonical printing: ascending total degree, and
    /// within one degree the lexicographically larger monomial first
    /// (`x1^2` before `x1*x2` before `x2^2`).
    pub fn cmp_display(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.cmp_lex(self))
    }
}

/// Graded lexicographic monomial order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cmp_lex(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::new(vec![1]));
        assert!(Monomial::new(vec![0, 0]).is_one());
    }

    #[test]
    fn grlex_order() {
        let x1 = Monomial::var(0, 1);
        let x2 = Monomial::var(1, 1);
        let x1x2 = x1.mul(&x2);
        let x1sq = Monomial::var(0, 2);
        assert!(Monomial::one() < x2);
        assert!(x2 < x1);
        assert!(x1 < x1x2);
        assert!(x1x2 < x1sq);
        assert_eq!(x1sq.cmp_display(&x1x2), Ordering::Less);
    }

    #[test]
    fn division() {
        let a = Monomial::new(vec![2, 1]);
        let b = Monomial::new(vec![1]);
        assert_eq!(b.quotient_of(&a), Some(Monomial::new(vec![1, 1])));
        assert_eq!(a.quotient_of(&b), None);
    }
}
