use crate::rules::{Dir, ExpFactor};
use qvertex_scalar::{qq_factorial, FieldElem};
use std::fmt;
use std::sync::Arc;

/// One factor of an operator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Exp(ExpFactor),
    /// Translation `e^(j λ1)`.
    Lattice(i64),
    /// `z^(∂_(j λ1))`.
    ZPow(i64),
}

/// An ordered product of atoms, all in the same variable.
pub type Word = Arc<Vec<Atom>>;

/// `(D^(deriv) W)(z v^scale)` with `D^(d) = (d/dz)^d / d!`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub word: Word,
    pub scale: i64,
    pub deriv: u32,
}

impl Factor {
    pub fn new(word: Word) -> Self {
        Factor {
            word,
            scale: 0,
            deriv: 0,
        }
    }

    pub fn scaled(&self, u: i64) -> Self {
        Factor {
            word: self.word.clone(),
            scale: self.scale + u,
            deriv: self.deriv,
        }
    }

    /// Total lattice translation of the word.
    pub fn charge(&self) -> i64 {
        self.word
            .iter()
            .map(|a| if let Atom::Lattice(j) = a { *j } else { 0 })
            .sum()
    }
}

/// `coeff * z^(zpow/2) * prod_i factor_i(z)`, factors multiplied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: FieldElem,
    pub zpow: i64,
    pub factors: Vec<Factor>,
}

/// A finite sum of terms in a single variable `z`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorExpr {
    terms: Vec<Term>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr { terms: Vec::new() }
    }

    /// The identity operator `1`.
    pub fn unit() -> Self {
        OperatorExpr {
            terms: vec![Term {
                coeff: FieldElem::one(),
                zpow: 0,
                factors: Vec::new(),
            }],
        }
    }

    pub fn from_word(atoms: Vec<Atom>) -> Self {
        Self::from_factor(Factor::new(Arc::new(atoms)))
    }

    pub fn from_factor(f: Factor) -> Self {
        OperatorExpr {
            terms: vec![Term {
                coeff: FieldElem::one(),
                zpow: 0,
                factors: vec![f],
            }],
        }
    }

    pub fn from_terms(terms: Vec<Term>) -> Self {
        let mut e = OperatorExpr { terms };
        e.collect();
        e
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Structurally zero (no terms).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merge terms with identical factor lists and powers, dropping zeros.
    fn collect(&mut self) {
        let mut out: Vec<Term> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            if t.coeff.is_zero() {
                continue;
            }
            if let Some(o) = out
                .iter_mut()
                .find(|o| o.zpow == t.zpow && o.factors == t.factors)
            {
                o.coeff += &t.coeff;
            } else {
                out.push(t);
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        self.terms = out;
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&FieldElem::from_int(-1)))
    }

    pub fn scale(&self, s: &FieldElem) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * s,
                    zpow: t.zpow,
                    factors: t.factors.clone(),
                })
                .collect(),
        )
    }

    /// Multiply by `z^(e/2)`.
    pub fn mul_zpow(&self, e: i64) -> Self {
        OperatorExpr {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    zpow: t.zpow + e,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    /// Operator product `self * o` (same variable).
    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Term {
                    coeff: &a.coeff * &b.coeff,
                    zpow: a.zpow + b.zpow,
                    factors,
                });
            }
        }
        Self::from_terms(terms)
    }

    /// Substitute `z -> z v^u`.
    pub fn scale_subst(&self, u: i64) -> Self {
        OperatorExpr {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    assert!((u * t.zpow) % 2 == 0, "z -> z v^{u} on z^({}/2)", t.zpow);
                    Term {
                        coeff: &t.coeff * &FieldElem::v_pow(u * t.zpow / 2),
                        zpow: t.zpow,
                        factors: t.factors.iter().map(|f| f.scaled(u)).collect(),
                    }
                })
                .collect(),
        }
    }

    /// `(e(z qq) - e(z)) / (z (qq - 1))`.
    pub fn qderive(&self) -> Self {
        self.qderive_n(1)
    }

    /// `n`-th qq-derivative via
    /// `D^n = (qq - 1)^(-n) z^(-n) prod_(i<n) (qq^(-i) T - 1)`, `T e(z) = e(z qq)`.
    pub fn qderive_n(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        // coefficients of prod_(i<n) (qq^-i T - 1) in T
        let mut poly = vec![FieldElem::one()];
        for i in 0..n as i64 {
            let mut next = vec![FieldElem::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += &(c * &FieldElem::qq_pow(-i));
                next[k] -= c;
            }
            poly = next;
        }
        let pref = (FieldElem::qq() - FieldElem::one()).pow(-(n as i64));
        let mut out = OperatorExpr::zero();
        for (k, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.scale_subst(4 * k as i64).scale(&(c * &pref)));
            }
        }
        out.mul_zpow(-2 * n as i64)
    }

    /// `[n]!^(-1) D^n`, the `z0^n` coefficient of `e(z + z0)`.
    pub fn qtaylor_coeff(&self, n: u32) -> Self {
        let f = qq_factorial(n as i64).expect("nonnegative");
        self.qderive_n(n).scale(&f.inv().expect("nonzero"))
    }

    /// `(d/dz)^n / n!` by the Leibniz rule over prefactor and factors.
    pub fn classical_derive_n(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            let slots = t.factors.len() + 1;
            for comp in compositions(n, slots) {
                // D^(n0) z^k = binom(k, n0) z^(k - n0) with k = zpow/2
                let mut c = t.coeff.clone();
                c *= &half_binomial(t.zpow, comp[0]);
                if c.is_zero() {
                    continue;
                }
                let mut factors = Vec::with_capacity(t.factors.len());
                for (f, &ni) in t.factors.iter().zip(&comp[1..]) {
                    let d = f.deriv + ni;
                    c *= &FieldElem::from_int(binom_u(d, f.deriv));
                    c *= &FieldElem::v_pow(f.scale * ni as i64);
                    factors.push(Factor {
                        word: f.word.clone(),
                        scale: f.scale,
                        deriv: d,
                    });
                }
                terms.push(Term {
                    coeff: c,
                    zpow: t.zpow - 2 * comp[0] as i64,
                    factors,
                });
            }
        }
        Self::from_terms(terms)
    }

    /// Total lattice charge of each term, if all terms agree.
    pub fn charge(&self) -> Option<i64> {
        let mut it = self
            .terms
            .iter()
            .map(|t| t.factors.iter().map(|f| f.charge()).sum::<i64>());
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }
}

/// All `(n_0, ..., n_(k-1))` with sum `n`.
pub(crate) fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn binom_u(n: u32, k: u32) -> i64 {
    let mut b: i64 = 1;
    for i in 0..k as i64 {
        b = b * (n as i64 - i) / (i + 1);
    }
    b
}

/// `binom(k2/2, n)` for a half-integer `k2/2`.
pub(crate) fn half_binomial(k2: i64, n: u32) -> FieldElem {
    let mut num = FieldElem::one();
    for i in 0..n as i64 {
        num *= &FieldElem::ratio(k2 - 2 * i, 2 * (i + 1));
    }
    num
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Exp(e) => {
                let arrow = if e.dir() == Dir::Create { "-" } else { "+" };
                let inv = if e.sign < 0 { "^-1" } else { "" };
                write!(f, "E{arrow}[{:?}]{inv}", e.rule)
            }
            Atom::Lattice(j) => write!(f, "e^({j}λ)"),
            Atom::ZPow(j) => write!(f, "z^∂({j}λ)"),
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*z^({}/2)", t.coeff, t.zpow)?;
            for fac in &t.factors {
                write!(f, "*[")?;
                for (k, a) in fac.word.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, "](v^{})", fac.scale)?;
                if fac.deriv > 0 {
                    write!(f, "'{}", fac.deriv)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(2, 3).len(), 6);
    }

    #[test]
    fn half_binomials() {
        assert_eq!(half_binomial(1, 2), FieldElem::ratio(-1, 8));
        assert_eq!(half_binomial(6, 2), FieldElem::from_int(3));
    }

    #[test]
    fn scale_subst_composes() {
        let e = OperatorExpr::from_word(vec![Atom::Lattice(2)]).mul_zpow(2);
        assert_eq!(e.scale_subst(4).scale_subst(8), e.scale_subst(12));
    }

    #[test]
    fn qderive_of_power() {
        let e = OperatorExpr::unit().mul_zpow(6);
        let d = e.qderive_n(2);
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].zpow, 2);
        assert_eq!(
            d.terms()[0].coeff,
            qvertex_scalar::qq_int(3) * qvertex_scalar::qq_int(2)
        );
    }

    #[test]
    fn classical_derivative_of_power() {
        let e = OperatorExpr::unit().mul_zpow(6);
        let d = e.classical_derive_n(2);
        assert_eq!(d.terms()[0].coeff, FieldElem::from_int(3));
        assert_eq!(d.terms()[0].zpow, 2);
    }
}
