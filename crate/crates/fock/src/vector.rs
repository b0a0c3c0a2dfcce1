use crate::{cocycle, heisenberg_scalar, FockError};
use qvertex_scalar::{FieldElem, Module, Ring};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// `a(-parts[0]) a(-parts[1]) ... ⊗ e^(j λ1)`, parts in descending order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FockKey {
    parts: Vec<u32>,
    j: i64,
}

impl FockKey {
    pub fn new(mut parts: Vec<u32>, j: i64) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "creation modes are positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        FockKey { parts, j }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn label(&self) -> i64 {
        self.j
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn with_label(&self, j: i64) -> Self {
        FockKey {
            parts: self.parts.clone(),
            j,
        }
    }

    /// Multiply by the creation monomial `parts` (descending).
    pub fn times(&self, parts: &[u32]) -> Self {
        let mut p = Vec::with_capacity(self.parts.len() + parts.len());
        let (mut i, mut k) = (0, 0);
        while i < self.parts.len() || k < parts.len() {
            if k == parts.len() || (i < self.parts.len() && self.parts[i] >= parts[k]) {
                p.push(self.parts[i]);
                i += 1;
            } else {
                p.push(parts[k]);
                k += 1;
            }
        }
        FockKey { parts: p, j: self.j }
    }

    /// Multiplicity of `a(-r)`.
    pub fn multiplicity(&self, r: u32) -> usize {
        self.parts.iter().filter(|&&p| p == r).count()
    }
}

impl Ord for FockKey {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then(self.j.cmp(&o.j))
            .then_with(|| self.parts.cmp(&o.parts))
    }
}

impl PartialOrd for FockKey {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for FockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.parts.len() {
            let r = self.parts[i];
            let n = self.multiplicity(r);
            if n == 1 {
                write!(f, "a(-{r})")?;
            } else {
                write!(f, "a(-{r})^{n}")?;
            }
            i += n;
        }
        if self.parts.is_empty() {
            write!(f, "1")?;
        }
        write!(f, "|{}>", self.j)
    }
}

/// A finite combination of Fock monomials with coefficients in `S`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockVec<S> {
    terms: BTreeMap<FockKey, S>,
}

/// Fock vectors over the scalar field.
pub type FockVector = FockVec<FieldElem>;

impl<S: Module> FockVec<S> {
    pub fn zero() -> Self {
        FockVec {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(key: FockKey) -> Self
    where
        S: Ring,
    {
        Self::term(key, S::one())
    }

    pub fn term(key: FockKey, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(key, &c);
        v
    }

    pub fn add_term(&mut self, key: FockKey, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockKey, &S)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (FockKey, S)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, key: &FockKey) -> Option<&S> {
        self.terms.get(key)
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

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }

    pub fn map<T: Module>(&self, f: impl Fn(&S) -> T) -> FockVec<T> {
        let mut out = FockVec::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Split by `(Heisenberg degree, label)`.
    pub fn grade(&self) -> BTreeMap<(u32, i64), FockVec<S>> {
        let mut out: BTreeMap<(u32, i64), FockVec<S>> = BTreeMap::new();
        for (k, c) in self.iter() {
            out.entry((k.degree(), k.label()))
                .or_insert_with(Self::zero)
                .add_term(k.clone(), c);
        }
        out
    }

    /// Shift every label by `beta`, with the cocycle sign.
    pub fn lattice_translate(&self, beta: i64) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            let c = if cocycle(beta, k.label()) < 0 {
                c.scale(&FieldElem::from_int(-1))
            } else {
                c.clone()
            };
            out.add_term(k.with_label(k.label() + beta), &c);
        }
        out
    }

    /// `K = 1 ⊗ q^α`: multiply each term by `q^(α, β) = v^(2j)`.
    pub fn charge_act(&self) -> Self {
        self.map_keyed(|k, c| c.scale(&FieldElem::v_pow(2 * k.label())))
    }

    pub fn map_keyed(&self, f: impl Fn(&FockKey, &S) -> S) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), &f(k, c));
        }
        out
    }
}

impl<S: Ring> FockVec<S> {
    pub fn scale_ring(&self, s: &S) -> Self {
        let mut out = Self::zero();
        if s.is_zero() {
            return out;
        }
        for (k, c) in self.iter() {
            out.add_term(k.clone(), &c.mul_ref(s));
        }
        out
    }

    /// Heisenberg action: `a(-r)` multiplies, `a(r)` differentiates with
    /// `[a(r), a(-r)] = [2r][r]/r`.
    pub fn heis_act(&self, r: i64) -> Result<Self, FockError> {
        if r == 0 {
            return Err(FockError::ZeroMode);
        }
        let mut out = Self::zero();
        if r < 0 {
            let p = [(-r) as u32];
            for (k, c) in self.iter() {
                out.add_term(k.times(&p), c);
            }
            return Ok(out);
        }
        let r = r as u32;
        let h = heisenberg_scalar(r);
        for (k, c) in self.iter() {
            let n = k.multiplicity(r);
            if n == 0 {
                continue;
            }
            let mut parts = k.parts().to_vec();
            let pos = parts.iter().position(|&p| p == r).expect("present");
            parts.remove(pos);
            let s = h.scale(&FieldElem::from_int(n as i64));
            out.add_term(FockKey::new(parts, k.label()), &c.scale(&s));
        }
        Ok(out)
    }
}

impl<S: Module> Module for FockVec<S> {
    fn zero() -> Self {
        FockVec::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        for (k, c) in o.iter() {
            self.add_term(k.clone(), c);
        }
    }
    fn scale(&self, s: &FieldElem) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), &c.scale(s));
        }
        out
    }
}

impl<S: Module + fmt::Display> fmt::Display for FockVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{k}")?;
        }
        Ok(())
    }
}

impl<S: Module> fmt::Debug for FockVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vacuum;

    fn a(parts: &[u32], j: i64) -> FockVector {
        FockVector::basis(FockKey::new(parts.to_vec(), j))
    }

    #[test]
    fn annihilator_on_single_mode() {
        let v = a(&[1], 0).heis_act(1).unwrap();
        assert_eq!(v, vacuum(0).scale(&(FieldElem::q() + FieldElem::q().pow(-1))));
        assert!(vacuum(0).heis_act(2).unwrap().is_zero());
        assert!(vacuum(0).heis_act(0).is_err());
    }

    #[test]
    fn annihilator_is_a_derivation() {
        let v = a(&[1, 1], 2).heis_act(1).unwrap();
        let h = FieldElem::q() + FieldElem::q().pow(-1);
        assert_eq!(v, a(&[1], 2).scale(&(&h * &FieldElem::from_int(2))));
    }

    #[test]
    fn translations_and_charge() {
        assert_eq!(vacuum(0).lattice_translate(2), vacuum(2));
        assert_eq!(vacuum(1).lattice_translate(1), vacuum(2));
        assert_eq!(vacuum(2).lattice_translate(-1), vacuum(1));
        assert_eq!(vacuum(2).charge_act(), vacuum(2).scale(&FieldElem::q_pow(2)));
        assert_eq!(vacuum(1).charge_act(), vacuum(1).scale(&FieldElem::q()));
        assert_eq!(vacuum(0).charge_act(), vacuum(0));
    }

    #[test]
    fn grading() {
        let v = vacuum(0).add(&a(&[2], 0));
        let g = v.grade();
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![(0, 0), (2, 0)]);
        assert!(FockVector::zero().grade().is_empty());
        assert_eq!(a(&[1], 2).grade().keys().next(), Some(&(1, 2)));
    }

    #[test]
    fn canonical_rendering() {
        let v = a(&[1, 2, 1], 2).add(&vacuum(0));
        assert_eq!(v.to_string(), "(1)*1|0> + (1)*a(-2)a(-1)^2|2>");
    }
}
