use qvertex_scalar::{FieldElem, Module, Ring};
use std::collections::BTreeMap;
use std::fmt;

/// A Laurent series `sum c_k z^(k/2)` known exactly on the doubled window
/// `[lo, hi]`. Entries outside the window are never stored.
///
/// In products the window's lower end is read as the valuation: the series
/// is taken to vanish below `lo`.
#[derive(Clone, PartialEq)]
pub struct CoeffSeries<C> {
    terms: BTreeMap<i64, C>,
    lo: i64,
    hi: i64,
}

impl<C: Module> CoeffSeries<C> {
    /// The zero series on the doubled window `[lo, hi]`.
    pub fn new(lo: i64, hi: i64) -> Self {
        CoeffSeries {
            terms: BTreeMap::new(),
            lo,
            hi,
        }
    }

    /// `c z^(e/2)` on the window `[lo, hi]`.
    pub fn monomial(e: i64, c: C, lo: i64, hi: i64) -> Self {
        let mut s = Self::new(lo, hi);
        s.add_at(e, &c);
        s
    }

    pub fn from_terms(lo: i64, hi: i64, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut s = Self::new(lo, hi);
        for (e, c) in terms {
            s.add_at(e, &c);
        }
        s
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn in_window(&self, e: i64) -> bool {
        self.lo <= e && e <= self.hi
    }

    /// Coefficient of `z^(e/2)`; panics outside the window.
    pub fn coeff(&self, e: i64) -> C {
        assert!(self.in_window(e), "exponent {e} outside window [{}, {}]", self.lo, self.hi);
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, e: i64) -> Option<&C> {
        self.terms.get(&e)
    }

    /// Add `c z^(e/2)`; silently dropped outside the window.
    pub fn add_at(&mut self, e: i64, c: &C) {
        if !self.in_window(e) || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
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

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Restrict to `[lo, hi]` intersected with the current window.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.max(self.lo);
        let hi = hi.min(self.hi);
        if lo > hi {
            return Self::new(lo, hi);
        }
        Self::from_terms(lo, hi, self.terms.range(lo..=hi).map(|(e, c)| (*e, c.clone())))
    }

    /// Sum on the intersection of the windows.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.restrict(o.lo, o.hi);
        for (e, c) in o.iter() {
            out.add_at(e, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&FieldElem::from_int(-1)))
    }

    pub fn scale(&self, s: &FieldElem) -> Self {
        Self::from_terms(self.lo, self.hi, self.iter().map(|(e, c)| (e, c.scale(s))))
    }

    /// Multiply by `z^(e/2)`; the window moves with it.
    pub fn shift(&self, e: i64) -> Self {
        Self::from_terms(self.lo + e, self.hi + e, self.iter().map(|(k, c)| (k + e, c.clone())))
    }

    /// Substitute `z -> z v^u`. Each exponent `k/2` picks up `v^(u k/2)`,
    /// which must be an integral power of `v`.
    pub fn scale_var(&self, u: i64) -> Self {
        Self::from_terms(
            self.lo,
            self.hi,
            self.iter().map(|(k, c)| {
                assert!((u * k) % 2 == 0, "z -> z v^{u} is not defined on z^({k}/2)");
                (k, c.scale(&FieldElem::v_pow(u * k / 2)))
            }),
        )
    }

    pub fn map<D: Module>(&self, f: impl Fn(&C) -> D) -> CoeffSeries<D> {
        CoeffSeries::from_terms(self.lo, self.hi, self.iter().map(|(e, c)| (e, f(c))))
    }

    /// First doubled exponent in the common window where `self` and `o` differ.
    pub fn first_difference(&self, o: &Self) -> Option<i64> {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        if lo > hi {
            return None;
        }
        let keys: std::collections::BTreeSet<i64> = self
            .terms
            .range(lo..=hi)
            .chain(o.terms.range(lo..=hi))
            .map(|(e, _)| *e)
            .collect();
        keys.into_iter().find(|e| self.terms.get(e) != o.terms.get(e))
    }

    /// Equality on the common window.
    pub fn agrees_with(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }
}

impl<R: Ring> CoeffSeries<R> {
    /// Cauchy product. Exact on `[la + lb, min(ha + lb, hb + la)]`.
    pub fn mul(&self, o: &Self) -> Self {
        let lo = self.lo + o.lo;
        let hi = (self.hi + o.lo).min(o.hi + self.lo);
        let mut out = Self::new(lo, hi);
        for (ea, a) in self.iter() {
            for (eb, b) in o.iter() {
                if ea + eb <= hi {
                    out.add_at(ea + eb, &a.mul_ref(b));
                }
            }
        }
        out
    }
}

impl<C: Module + fmt::Display> fmt::Display for CoeffSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e % 2 == 0 {
                write!(f, "({c})*z^{}", e / 2)?;
            } else {
                write!(f, "({c})*z^({e}/2)")?;
            }
        }
        write!(f, "  [window {}/2..{}/2]", self.lo, self.hi)
    }
}

impl<C: Module> fmt::Debug for CoeffSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoeffSeries")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("terms", &self.terms)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn product_window() {
        let a = CoeffSeries::from_terms(0, 4, [(0, fe(1)), (2, fe(1))]);
        let b = CoeffSeries::from_terms(-2, 6, [(-2, fe(1)), (4, fe(3))]);
        let p = a.mul(&b);
        assert_eq!((p.lo(), p.hi()), (-2, 2));
        assert_eq!(p.coeff(-2), fe(1));
        assert_eq!(p.coeff(0), fe(1));
        assert!(p.coeff(2).is_zero());
    }

    #[test]
    fn drops_terms_outside_window() {
        let mut s = CoeffSeries::<FieldElem>::new(0, 2);
        s.add_at(4, &fe(1));
        assert!(s.is_zero());
    }

    #[test]
    fn scale_var_multiplies_by_powers() {
        let s = CoeffSeries::from_terms(0, 4, [(4, fe(1))]);
        assert_eq!(s.scale_var(4).coeff(4), FieldElem::qq_pow(2));
    }
}
