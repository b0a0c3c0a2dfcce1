use crate::engine::apply_truncated;
use crate::expr::{Atom, OperatorExpr};
use crate::rules::{contraction, Dir};
use crate::VertexError;
use qvertex_fock::{annihilate, create, FockVector};
use qvertex_scalar::{FieldElem, Module, Ring};
use std::collections::BTreeMap;
use std::fmt;

/// Doubled exponent vector, one entry per variable.
pub type Shift = Vec<i64>;

/// A finite Laurent polynomial in several variables `z_i^(1/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftPoly {
    nvars: usize,
    terms: BTreeMap<Shift, FieldElem>,
}

impl ShiftPoly {
    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], FieldElem::one())
    }

    pub fn monomial(nvars: usize, s: Shift, c: FieldElem) -> Self {
        assert_eq!(s.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s, c);
        }
        ShiftPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, ts: impl IntoIterator<Item = (Shift, FieldElem)>) -> Self {
        let mut p = ShiftPoly {
            nvars,
            terms: BTreeMap::new(),
        };
        for (s, c) in ts {
            p.add_term(s, &c);
        }
        p
    }

    fn add_term(&mut self, s: Shift, c: &FieldElem) {
        assert_eq!(s.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let x = self.terms.entry(s.clone()).or_insert_with(FieldElem::zero);
        *x += c;
        if x.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shift, &FieldElem)> {
        self.terms.iter()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = ShiftPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
        };
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let s: Shift = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(s, &(x * y));
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &o.terms {
            out.add_term(s.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        ShiftPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(s, x)| (s.clone(), x * c)),
        )
    }

    /// Range of shifts in variable `i`.
    pub fn span(&self, i: usize) -> (i64, i64) {
        let lo = self.terms.keys().map(|s| s[i]).min().unwrap_or(0);
        let hi = self.terms.keys().map(|s| s[i]).max().unwrap_or(0);
        (lo, hi)
    }
}

/// `(1 - c z_num / z_den)^e` expanded in nonnegative powers of
/// `z_num / z_den` through the `max_n`-th power.
pub fn ratio_power(
    nvars: usize,
    num: usize,
    den: usize,
    c: &FieldElem,
    e: &FieldElem,
    max_n: u32,
) -> ShiftPoly {
    let mut out = ShiftPoly::one(nvars);
    let mut b = FieldElem::one();
    let mc = -c;
    let mut pw = FieldElem::one();
    for n in 1..=max_n {
        b = &(&b * &(e - &FieldElem::from_int(n as i64 - 1))) * &FieldElem::ratio(1, n as i64);
        if b.is_zero() {
            break;
        }
        pw = &pw * &mc;
        let mut s = vec![0; nvars];
        s[num] += 2 * n as i64;
        s[den] -= 2 * n as i64;
        out.add_term(s, &(&b * &pw));
    }
    out
}

/// Joint coefficients of a product in several variables, exact on the
/// per-variable doubled windows.
#[derive(Clone, PartialEq)]
pub struct Table {
    windows: Vec<(i64, i64)>,
    entries: BTreeMap<Shift, FockVector>,
}

impl Table {
    pub fn new(windows: Vec<(i64, i64)>) -> Self {
        Table {
            windows,
            entries: BTreeMap::new(),
        }
    }

    pub fn windows(&self) -> &[(i64, i64)] {
        &self.windows
    }

    pub fn nvars(&self) -> usize {
        self.windows.len()
    }

    pub fn in_window(&self, k: &[i64]) -> bool {
        k.iter()
            .zip(&self.windows)
            .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    pub fn add_at(&mut self, k: Shift, v: &FockVector) {
        if !self.in_window(&k) || v.is_zero() {
            return;
        }
        let x = self
            .entries
            .entry(k.clone())
            .or_insert_with(FockVector::zero);
        x.add_assign_ref(v);
        if x.is_zero() {
            self.entries.remove(&k);
        }
    }

    /// Coefficient at `k`; panics outside the windows.
    pub fn coeff(&self, k: &[i64]) -> FockVector {
        assert!(self.in_window(k), "{k:?} outside {:?}", self.windows);
        self.entries
            .get(k)
            .cloned()
            .unwrap_or_else(FockVector::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Shift, &FockVector)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn common(&self, o: &Self) -> Vec<(i64, i64)> {
        self.windows
            .iter()
            .zip(&o.windows)
            .map(|(a, b)| (a.0.max(b.0), a.1.min(b.1)))
            .collect()
    }

    pub fn restrict(&self, windows: Vec<(i64, i64)>) -> Self {
        let mut out = Table::new(windows);
        for (k, v) in &self.entries {
            out.add_at(k.clone(), v);
        }
        out
    }

    /// Sum on the common window.
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.restrict(self.common(o));
        for (k, v) in &o.entries {
            out.add_at(k.clone(), v);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&FieldElem::from_int(-1)))
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let mut out = Table::new(self.windows.clone());
        for (k, v) in &self.entries {
            out.add_at(k.clone(), &v.scale(c));
        }
        out
    }

    /// First index (in key order) on the common window where the tables differ.
    pub fn first_difference(&self, o: &Self) -> Option<(Shift, FockVector, FockVector)> {
        let w = self.common(o);
        let a = self.restrict(w.clone());
        let b = o.restrict(w);
        let keys: std::collections::BTreeSet<&Shift> =
            a.entries.keys().chain(b.entries.keys()).collect();
        for k in keys {
            let x = a.entries.get(k).cloned().unwrap_or_else(FockVector::zero);
            let y = b.entries.get(k).cloned().unwrap_or_else(FockVector::zero);
            if x != y {
                return Some((k.clone(), x, y));
            }
        }
        None
    }

    /// `p * self` on `windows`. The table is read as vanishing below its
    /// windows, so the caller must choose lower bounds below the support.
    pub fn mul_poly(&self, p: &ShiftPoly, windows: Vec<(i64, i64)>) -> Self {
        for i in 0..self.nvars() {
            let (slo, _) = p.span(i);
            assert!(
                self.windows[i].1 >= windows[i].1 - slo,
                "variable {i}: table window too small for product"
            );
        }
        let mut out = Table::new(windows);
        for (k, v) in &self.entries {
            for (s, c) in p.terms() {
                let t: Shift = k.iter().zip(s).map(|(a, b)| a + b).collect();
                if out.in_window(&t) {
                    out.add_at(t, &v.scale(c));
                }
            }
        }
        out
    }

    /// Classical `d^n / dz_i^n` applied coefficient-wise.
    pub fn derive(&self, i: usize, n: u32) -> Self {
        let mut w = self.windows.clone();
        w[i].1 -= 2 * n as i64;
        let mut out = Table::new(w);
        for (k, v) in &self.entries {
            let mut c = FieldElem::one();
            for j in 0..n as i64 {
                c *= &FieldElem::ratio(k[i] - 2 * j, 2);
            }
            let mut t = k.clone();
            t[i] -= 2 * n as i64;
            out.add_at(t, &v.scale(&c));
        }
        out
    }

    /// Reorder variables: output variable `j` is input variable `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let w = perm.iter().map(|&p| self.windows[p]).collect();
        let mut out = Table::new(w);
        for (k, v) in &self.entries {
            out.add_at(perm.iter().map(|&p| k[p]).collect(), v);
        }
        out
    }

    /// `sum_(sum k = n) coeff(k)`; meaningful only when every term with total
    /// `n` lies in the windows.
    pub fn diagonal(&self, n: i64) -> FockVector {
        let mut out = FockVector::zero();
        for (k, v) in &self.entries {
            if k.iter().sum::<i64>() == n {
                out.add_assign_ref(v);
            }
        }
        out
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Table {:?}", self.windows)?;
        for (k, v) in &self.entries {
            writeln!(f, "  {k:?}: {v}")?;
        }
        Ok(())
    }
}

/// Nested application `e_1(z_(t_1)) ... e_n(z_(t_n)) v`, rightmost first;
/// each variable tag appears once.
pub fn product_apply(
    es: &[(OperatorExpr, usize)],
    v: &FockVector,
    windows: &[(i64, i64)],
) -> Result<Table, VertexError> {
    product_sum_apply(&[(FieldElem::one(), es.to_vec())], v, windows)
}

/// `sum_i c_i * (nested product_i) v` on common windows. Terms whose factors
/// are plain rescaled words share one evaluation per combination of words.
pub fn product_sum_apply(
    sum: &[(FieldElem, Vec<(OperatorExpr, usize)>)],
    v: &FockVector,
    windows: &[(i64, i64)],
) -> Result<Table, VertexError> {
    product_sum_band(sum, v, windows, None)
}

/// As [`product_sum_apply`], keeping only entries whose exponents sum to at
/// most `max_total`; the diagonals up to `max_total` are unaffected.
pub fn product_sum_band(
    sum: &[(FieldElem, Vec<(OperatorExpr, usize)>)],
    v: &FockVector,
    windows: &[(i64, i64)],
    max_total: Option<i64>,
) -> Result<Table, VertexError> {
    let n = windows.len();
    let mut out = Table::new(windows.to_vec());
    // words per variable slot -> z-shift -> (coefficient, scale per variable)
    type Picks = BTreeMap<Shift, Vec<(FieldElem, Vec<i64>)>>;
    let mut groups: Vec<(Vec<(Vec<Atom>, usize)>, Picks)> = Vec::new();
    for (c, es) in sum {
        let Some(parts) = es.iter().map(|(e, _)| split_simple(e)).collect::<Option<Vec<_>>>()
        else {
            let t = product_apply_direct(es, v, windows, max_total)?;
            out = out.add(&t.scale(c));
            continue;
        };
        if parts.iter().any(|p| p.is_empty()) {
            continue;
        }
        let mut combo = vec![0usize; es.len()];
        loop {
            let key: Vec<(Vec<Atom>, usize)> = es
                .iter()
                .enumerate()
                .map(|(i, (_, t))| (parts[i][combo[i]].word.clone(), *t))
                .collect();
            let mut coeff = c.clone();
            let mut sh = vec![0; n];
            let mut scales = vec![0; n];
            for (i, (_, t)) in es.iter().enumerate() {
                let p = &parts[i][combo[i]];
                coeff *= &p.coeff;
                sh[*t] += p.zpow;
                scales[*t] = p.scale;
            }
            let slot = match groups.iter().position(|(k, _)| *k == key) {
                Some(i) => i,
                None => {
                    groups.push((key, BTreeMap::new()));
                    groups.len() - 1
                }
            };
            groups[slot].1.entry(sh).or_default().push((coeff, scales));
            if !advance(&mut combo, |i| parts[i].len()) {
                break;
            }
        }
    }
    for (key, picks) in &groups {
        let mut base_w = windows.to_vec();
        for (_, t) in key {
            let zmax = picks.keys().map(|s| s[*t]).max().unwrap();
            let zmin = picks.keys().map(|s| s[*t]).min().unwrap();
            base_w[*t] = (windows[*t].0 - zmax, windows[*t].1 - zmin);
        }
        let base_es: Vec<(OperatorExpr, usize)> = key
            .iter()
            .map(|(w, t)| {
                let e = if w.is_empty() {
                    OperatorExpr::unit()
                } else {
                    OperatorExpr::from_word(w.clone())
                };
                (e, *t)
            })
            .collect();
        let base_total = max_total.map(|m| m - picks.keys().map(|s| s.iter().sum::<i64>()).min().unwrap());
        let base = product_apply_direct(&base_es, v, &base_w, base_total)?;
        for (k, w) in base.iter() {
            for (sh, list) in picks {
                let k2: Shift = k.iter().zip(sh).map(|(a, b)| a + b).collect();
                if !out.in_window(&k2) || max_total.is_some_and(|m| k2.iter().sum::<i64>() > m) {
                    continue;
                }
                let mut total = FieldElem::zero();
                for (c, scales) in list {
                    let mut x = c.clone();
                    for (t, &u) in scales.iter().enumerate() {
                        if u != 0 {
                            x *= &FieldElem::v_pow(u)
                                .pow_half(k[t])
                                .ok_or(VertexError::OddScale(k[t], u))?;
                        }
                    }
                    total += &x;
                }
                if !total.is_zero() {
                    out.add_at(k2, &w.scale(&total));
                }
            }
        }
    }
    Ok(out)
}

/// `coeff * z^(zpow/2) * W(z v^scale)` with one underived factor.
struct Simple {
    word: Vec<Atom>,
    coeff: FieldElem,
    zpow: i64,
    scale: i64,
}

fn split_simple(e: &OperatorExpr) -> Option<Vec<Simple>> {
    e.terms()
        .iter()
        .map(|t| match t.factors.as_slice() {
            [] => Some(Simple {
                word: Vec::new(),
                coeff: t.coeff.clone(),
                zpow: t.zpow,
                scale: 0,
            }),
            [f] if f.deriv == 0 => Some(Simple {
                word: f.word.to_vec(),
                coeff: t.coeff.clone(),
                zpow: t.zpow,
                scale: f.scale,
            }),
            _ => None,
        })
        .collect()
}

fn advance(idx: &mut [usize], len: impl Fn(usize) -> usize) -> bool {
    for i in 0..idx.len() {
        idx[i] += 1;
        if idx[i] < len(i) {
            return true;
        }
        idx[i] = 0;
    }
    false
}

fn product_apply_direct(
    es: &[(OperatorExpr, usize)],
    v: &FockVector,
    windows: &[(i64, i64)],
    max_total: Option<i64>,
) -> Result<Table, VertexError> {
    let n = windows.len();
    let mut seen = vec![false; n];
    for (_, t) in es {
        assert!(!seen[*t], "variable {t} used twice");
        seen[*t] = true;
    }
    let mut state: BTreeMap<Shift, FockVector> = BTreeMap::from([(vec![0; n], v.clone())]);
    for (i, (e, t)) in es.iter().enumerate().rev() {
        let (lo, hi) = windows[*t];
        let pending: i64 = es[..i].iter().map(|(_, u)| windows[*u].0).sum();
        let mut next: BTreeMap<Shift, FockVector> = BTreeMap::new();
        for (k, w) in &state {
            let top = match max_total {
                Some(m) => hi.min(m - pending - k.iter().sum::<i64>() + k[*t]),
                None => hi,
            };
            if top < lo {
                continue;
            }
            let s = apply_truncated(e, w, lo - k[*t], top - k[*t])?;
            for (ex, c) in s.iter() {
                let mut k2 = k.clone();
                k2[*t] += ex;
                next.entry(k2)
                    .or_insert_with(FockVector::zero)
                    .add_assign_ref(c);
            }
        }
        next.retain(|_, w| !w.is_zero());
        state = next;
    }
    let mut out = Table::new(windows.to_vec());
    for (k, w) in state {
        out.add_at(k, &w);
    }
    Ok(out)
}

/// Lowest doubled exponent of `e(z)` applied to vectors of Heisenberg degree
/// at most `max_degree` carrying the given labels.
pub fn lower_bound(e: &OperatorExpr, labels: &[i64], max_degree: u32) -> i64 {
    let mut best = i64::MAX;
    for t in e.terms() {
        let atoms: Vec<Atom> = t
            .factors
            .iter()
            .flat_map(|f| f.word.iter().copied())
            .collect();
        let has_ann = atoms
            .iter()
            .any(|a| matches!(a, Atom::Exp(x) if x.dir() == Dir::Annihilate));
        let mut cross = 0;
        for (p, a) in atoms.iter().enumerate() {
            if let Atom::ZPow(b) = a {
                for a2 in &atoms[p + 1..] {
                    if let Atom::Lattice(g) = a2 {
                        cross += b * g;
                    }
                }
            }
        }
        let beta: i64 = atoms
            .iter()
            .map(|a| if let Atom::ZPow(b) = a { *b } else { 0 })
            .sum();
        let dsum: i64 = t.factors.iter().map(|f| f.deriv as i64).sum();
        for &g in labels {
            let low = t.zpow + cross + beta * g
                - 2 * dsum
                - if has_ann { 2 * max_degree as i64 } else { 0 };
            best = best.min(low);
        }
    }
    best
}

/// `:e_1(z_(t_1)) ... e_n(z_(t_n)): v` on the windows. Each term's factors
/// must be unscaled and underived.
pub fn normal_ordered_table(
    es: &[(OperatorExpr, usize)],
    v: &FockVector,
    windows: &[(i64, i64)],
) -> Result<Table, VertexError> {
    let n = windows.len();
    let mut out = Table::new(windows.to_vec());
    let mut combos: Vec<(FieldElem, Shift, Vec<Vec<Atom>>)> =
        vec![(FieldElem::one(), vec![0; n], Vec::new())];
    for (e, t) in es {
        let mut next = Vec::new();
        for (c, z, ws) in &combos {
            for term in e.terms() {
                assert!(term.factors.iter().all(|f| f.scale == 0 && f.deriv == 0));
                let mut z2 = z.clone();
                z2[*t] += term.zpow;
                let mut ws2 = ws.clone();
                ws2.push(
                    term.factors
                        .iter()
                        .flat_map(|f| f.word.iter().copied())
                        .collect(),
                );
                next.push((c * &term.coeff, z2, ws2));
            }
        }
        combos = next;
    }
    let top = v.max_degree();
    let mut by_label: BTreeMap<i64, FockVector> = BTreeMap::new();
    for (k, c) in v.iter() {
        by_label
            .entry(k.label())
            .or_insert_with(FockVector::zero)
            .add_term(k.clone(), c);
    }
    for (coeff, z0, words) in combos {
        for (label, group) in &by_label {
            let mut state: BTreeMap<Shift, FockVector> =
                BTreeMap::from([(z0.clone(), group.scale(&coeff))]);
            for (idx, (_, t)) in es.iter().enumerate() {
                let ann: Vec<FieldElem> = (1..=top)
                    .map(|r| {
                        words[idx]
                            .iter()
                            .filter_map(|a| match a {
                                Atom::Exp(x) if x.dir() == Dir::Annihilate => Some(x.coeff(r)),
                                _ => None,
                            })
                            .sum()
                    })
                    .collect();
                let beta: i64 = words[idx]
                    .iter()
                    .map(|a| if let Atom::ZPow(b) = a { *b } else { 0 })
                    .sum();
                let mut next: BTreeMap<Shift, FockVector> = BTreeMap::new();
                for (k, w) in &state {
                    let parts = if ann.iter().all(|c| c.is_zero()) {
                        BTreeMap::from([(0u32, w.clone())])
                    } else {
                        annihilate(w, &ann)
                    };
                    for (m, w2) in parts {
                        let mut k2 = k.clone();
                        k2[*t] += beta * label - 2 * m as i64;
                        if k2[*t] > windows[*t].1 {
                            continue;
                        }
                        next.entry(k2)
                            .or_insert_with(FockVector::zero)
                            .add_assign_ref(&w2);
                    }
                }
                state = next;
            }
            let lattice: Vec<i64> = words
                .iter()
                .flatten()
                .filter_map(|a| {
                    if let Atom::Lattice(g) = a {
                        Some(*g)
                    } else {
                        None
                    }
                })
                .collect();
            for w in state.values_mut() {
                for g in lattice.iter().rev() {
                    *w = w.lattice_translate(*g);
                }
            }
            for (idx, (_, t)) in es.iter().enumerate() {
                let cres: Vec<_> = words[idx]
                    .iter()
                    .filter_map(|a| match a {
                        Atom::Exp(x) if x.dir() == Dir::Create => Some(*x),
                        _ => None,
                    })
                    .collect();
                if cres.is_empty() {
                    continue;
                }
                let need = state
                    .keys()
                    .map(|k| (windows[*t].1 - k[*t]).div_euclid(2))
                    .max()
                    .unwrap_or(0)
                    .max(0) as u32;
                let cc: Vec<FieldElem> = (1..=need)
                    .map(|r| cres.iter().map(|x| x.coeff(r)).sum())
                    .collect();
                let mut next: BTreeMap<Shift, FockVector> = BTreeMap::new();
                for (k, w) in &state {
                    let nmax = (windows[*t].1 - k[*t]).div_euclid(2);
                    for m in 0..=nmax {
                        let c = if m == 0 {
                            w.clone()
                        } else {
                            create(w, &cc, m as u32)
                        };
                        let mut k2 = k.clone();
                        k2[*t] += 2 * m;
                        next.entry(k2)
                            .or_insert_with(FockVector::zero)
                            .add_assign_ref(&c);
                    }
                }
                state = next;
            }
            for (k, w) in state {
                out.add_at(k, &w);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_inverse() {
        let one = FieldElem::one();
        let a = ratio_power(2, 1, 0, &one, &FieldElem::from_int(-1), 6);
        let b = ratio_power(2, 1, 0, &one, &one, 6);
        let p = a.mul(&b);
        let low: Vec<_> = p.terms().filter(|(s, _)| s[1] <= 12).collect();
        assert_eq!(low.len(), 1);
    }

    #[test]
    fn derivative_of_monomial() {
        let mut t = Table::new(vec![(-10, 10)]);
        t.add_at(vec![6], &qvertex_fock::vacuum(0));
        let d = t.derive(0, 2);
        assert_eq!(
            d.coeff(&[2]),
            qvertex_fock::vacuum(0).scale(&FieldElem::from_int(6))
        );
    }
}

fn term_atoms(t: &crate::expr::Term) -> Vec<Atom> {
    t.factors
        .iter()
        .flat_map(|f| f.word.iter().copied())
        .collect()
}

/// Per-variable lower bounds of the nested product `product_apply(es, v)`,
/// read off from its factorization into a polynomial reordering factor and
/// a normal-ordered part. `None` when some reordering factor is a genuine
/// series, in which case no uniform bound exists.
pub fn product_lower_bounds(
    es: &[(OperatorExpr, usize)],
    v: &FockVector,
    nvars: usize,
) -> Option<Vec<i64>> {
    let labels: Vec<i64> = {
        let mut l: Vec<i64> = v.iter().map(|(k, _)| k.label()).collect();
        l.sort();
        l.dedup();
        l
    };
    if labels.is_empty() {
        return Some(vec![0; nvars]);
    }
    let deg = v.max_degree();
    let mut out = vec![i64::MAX; nvars];
    for (p, (e, t)) in es.iter().enumerate() {
        let mut extra = i64::MAX;
        for ti in e.terms() {
            let ai = term_atoms(ti);
            let beta: i64 = ai
                .iter()
                .map(|a| if let Atom::ZPow(b) = a { *b } else { 0 })
                .sum();
            let mut low = 0;
            for (e2, _) in &es[p + 1..] {
                let mut worst = i64::MAX;
                for tj in e2.terms() {
                    let aj = term_atoms(tj);
                    let gamma: i64 = aj
                        .iter()
                        .map(|a| if let Atom::Lattice(g) = a { *g } else { 0 })
                        .sum();
                    let mut exps: BTreeMap<i64, FieldElem> = BTreeMap::new();
                    for a in &ai {
                        let Atom::Exp(x) = a else { continue };
                        if x.dir() != Dir::Annihilate {
                            continue;
                        }
                        for b in &aj {
                            let Atom::Exp(y) = b else { continue };
                            if y.dir() != Dir::Create {
                                continue;
                            }
                            for (k, ex) in contraction(*x, *y).ok()? {
                                *exps.entry(k).or_insert_with(FieldElem::zero) += &ex;
                            }
                        }
                    }
                    let mut total = 0i64;
                    for ex in exps.values() {
                        let n = ex.as_integer()?;
                        let n: i64 = n.try_into().ok()?;
                        if n < 0 {
                            return None;
                        }
                        total += n;
                    }
                    worst = worst.min(beta * gamma - 2 * total);
                }
                if worst != i64::MAX {
                    low += worst;
                }
            }
            extra = extra.min(low);
        }
        let base = lower_bound(e, &labels, deg);
        if extra != i64::MAX && base != i64::MAX {
            out[*t] = out[*t].min(base + extra);
        }
    }
    for x in out.iter_mut() {
        if *x == i64::MAX {
            *x = 0;
        }
    }
    Some(out)
}
