use qvertex_scalar::{FieldElem, Module, Ring};
use std::collections::BTreeMap;
use std::sync::Arc;

const BITS: u32 = 8;
const MAX_VARS: usize = 8;

/// Truncated polynomial `sum c_a w^a` with `a_i <= caps[i]`.
///
/// `Module::zero` carries no caps; the caps of the other operand are adopted
/// in every binary operation.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet {
    caps: Arc<Vec<u32>>,
    terms: BTreeMap<u64, FieldElem>,
}

fn exp_of(key: u64, i: usize) -> u32 {
    ((key >> (BITS * i as u32)) & ((1 << BITS) - 1)) as u32
}

impl Jet {
    pub fn constant(caps: &Arc<Vec<u32>>, c: FieldElem) -> Self {
        assert!(caps.len() <= MAX_VARS, "too many jet variables");
        assert!(caps.iter().all(|&c| c < (1 << BITS)), "jet order too large");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Jet {
            caps: caps.clone(),
            terms,
        }
    }

    /// `(1 + w_i)^alpha` by the binomial series.
    pub fn one_plus_var_pow(caps: &Arc<Vec<u32>>, i: usize, alpha: &FieldElem) -> Self {
        let mut out = Jet::constant(caps, FieldElem::one());
        let mut b = FieldElem::one();
        for k in 1..=caps[i] {
            b = &(&b * &(alpha - &FieldElem::from_int(k as i64 - 1)))
                * &FieldElem::ratio(1, k as i64);
            if b.is_zero() {
                break;
            }
            out.terms.insert((k as u64) << (BITS * i as u32), b.clone());
        }
        out
    }

    pub fn caps(&self) -> &Arc<Vec<u32>> {
        &self.caps
    }

    /// Coefficient of `w^a`.
    pub fn coeff(&self, a: &[u32]) -> FieldElem {
        let mut key = 0u64;
        for (i, &e) in a.iter().enumerate() {
            key |= (e as u64) << (BITS * i as u32);
        }
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(FieldElem::zero)
    }

    /// Coefficient of the top monomial `prod w_i^caps[i]`.
    pub fn top(&self) -> FieldElem {
        let caps = self.caps.clone();
        self.coeff(&caps)
    }

    pub fn constant_term(&self) -> FieldElem {
        self.terms.get(&0).cloned().unwrap_or_else(FieldElem::zero)
    }

    fn pick_caps(&self, o: &Jet) -> Arc<Vec<u32>> {
        if self.caps.is_empty() {
            o.caps.clone()
        } else {
            self.caps.clone()
        }
    }

    fn fits(&self, caps: &[u32], key: u64) -> bool {
        (0..caps.len()).all(|i| exp_of(key, i) <= caps[i])
            && (caps.len() == MAX_VARS || key >> (BITS * caps.len() as u32) == 0)
    }

    /// Series `sum_k binom(alpha, k) n^k` for a nilpotent `n`.
    fn binomial_series(n: &Jet, alpha: &FieldElem, caps: &Arc<Vec<u32>>) -> Jet {
        let depth: u32 = caps.iter().sum();
        let mut out = Jet::constant(caps, FieldElem::one());
        let mut pw = Jet::constant(caps, FieldElem::one());
        let mut b = FieldElem::one();
        for k in 1..=depth {
            pw = pw.mul_ref(n);
            if pw.is_zero() {
                break;
            }
            b = &(&b * &(alpha - &FieldElem::from_int(k as i64 - 1)))
                * &FieldElem::ratio(1, k as i64);
            out.add_assign_ref(&pw.scale(&b));
        }
        out
    }

    /// Split as `c0 (1 + n)` with `n` nilpotent.
    fn split_unit(&self) -> Option<(FieldElem, Jet)> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return None;
        }
        let inv = c0.inv().ok()?;
        let mut n = self.scale(&inv);
        n.terms.remove(&0);
        Some((c0, n))
    }
}

impl Module for Jet {
    fn zero() -> Self {
        Jet {
            caps: Arc::new(Vec::new()),
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        if self.caps.is_empty() {
            self.caps = o.caps.clone();
        }
        for (k, c) in &o.terms {
            match self.terms.get_mut(k) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        self.terms.remove(k);
                    }
                }
                None => {
                    self.terms.insert(*k, c.clone());
                }
            }
        }
    }
    fn scale(&self, s: &FieldElem) -> Self {
        if s.is_zero() {
            return Jet {
                caps: self.caps.clone(),
                terms: BTreeMap::new(),
            };
        }
        Jet {
            caps: self.caps.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }
}

impl Ring for Jet {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(0, FieldElem::one());
        Jet {
            caps: Arc::new(Vec::new()),
            terms,
        }
    }
    fn from_field(f: &FieldElem) -> Self {
        let mut j = Jet::zero();
        if !f.is_zero() {
            j.terms.insert(0, f.clone());
        }
        j
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let caps = self.pick_caps(o);
        let mut terms: BTreeMap<u64, FieldElem> = BTreeMap::new();
        for (ka, a) in &self.terms {
            for (kb, b) in &o.terms {
                let key = ka + kb;
                if caps.is_empty() {
                    if key != 0 {
                        continue;
                    }
                } else if !(0..caps.len()).all(|i| exp_of(*ka, i) + exp_of(*kb, i) <= caps[i]) {
                    continue;
                }
                let p = a * b;
                match terms.get_mut(&key) {
                    Some(x) => *x += &p,
                    None => {
                        terms.insert(key, p);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let out = Jet { caps, terms };
        debug_assert!(out.terms.keys().all(|k| out.fits(&out.caps, *k)));
        out
    }
    fn inverse(&self) -> Option<Self> {
        let (c0, n) = self.split_unit()?;
        let caps = self.caps.clone();
        Some(Jet::binomial_series(&n, &FieldElem::from_int(-1), &caps).scale(&c0.inv().ok()?))
    }
    fn pow_half(&self, e2: i64) -> Option<Self> {
        let (c0, n) = self.split_unit()?;
        let head = c0.pow_half(e2)?;
        let caps = self.caps.clone();
        Some(Jet::binomial_series(&n, &FieldElem::ratio(e2, 2), &caps).scale(&head))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps(c: &[u32]) -> Arc<Vec<u32>> {
        Arc::new(c.to_vec())
    }

    #[test]
    fn binomial_power_inverts() {
        let c = caps(&[4]);
        let a = Jet::one_plus_var_pow(&c, 0, &FieldElem::ratio(1, 2));
        let b = Jet::one_plus_var_pow(&c, 0, &FieldElem::ratio(-1, 2));
        assert_eq!(a.mul_ref(&b), Jet::constant(&c, FieldElem::one()));
        assert_eq!(a.inverse().unwrap(), b);
    }

    #[test]
    fn truncation_per_variable() {
        let c = caps(&[1, 2]);
        let x = Jet::one_plus_var_pow(&c, 0, &FieldElem::from_int(3));
        let y = Jet::one_plus_var_pow(&c, 1, &FieldElem::from_int(3));
        let p = x.mul_ref(&y);
        assert_eq!(p.coeff(&[1, 2]), FieldElem::from_int(9));
        assert_eq!(p.top(), FieldElem::from_int(9));
    }

    #[test]
    fn half_power_squares_back() {
        let c = caps(&[3]);
        let x = Jet::one_plus_var_pow(&c, 0, &FieldElem::from_int(1)).scale(&FieldElem::v_pow(4));
        let h = x.pow_half(1).unwrap();
        assert_eq!(h.mul_ref(&h), x);
    }
}
