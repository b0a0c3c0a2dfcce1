use crate::{heisenberg_scalar, FockKey, FockVec};
use qvertex_scalar::{FieldElem, Ring};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

/// All partitions of `n`, each in descending order.
pub fn partitions(n: u32) -> Arc<Vec<Vec<u32>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<Vec<Vec<u32>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().expect("partition cache");
    while guard.len() <= n as usize {
        let m = guard.len() as u32;
        let mut out = Vec::new();
        fill(m, m, &mut Vec::new(), &mut out);
        guard.push(Arc::new(out));
    }
    guard[n as usize].clone()
}

fn fill(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=max.min(n)).rev() {
        cur.push(p);
        fill(n - p, p, cur, out);
        cur.pop();
    }
}

/// Coefficient of `z^n` in `exp(sum_r c[r-1] a(-r) z^r)` as a list of
/// creation monomials with their scalars.
pub fn creation_monomials<S: Ring>(c: &[S], n: u32) -> Vec<(Vec<u32>, S)> {
    let mut out = Vec::new();
    'outer: for p in partitions(n).iter() {
        let mut s = S::one();
        let mut i = 0;
        while i < p.len() {
            let r = p[i];
            let m = p[i..].iter().take_while(|&&x| x == r).count();
            let Some(cr) = c.get(r as usize - 1) else {
                continue 'outer;
            };
            if cr.is_zero() {
                continue 'outer;
            }
            let mut pw = cr.clone();
            for _ in 1..m {
                pw = pw.mul_ref(cr);
            }
            s = s.mul_ref(&pw).scale(&inv_factorial(m as i64));
            i += m;
        }
        out.push((p.clone(), s));
    }
    out
}

fn inv_factorial(n: i64) -> FieldElem {
    (1..=n).map(|i| FieldElem::ratio(1, i)).product()
}

fn binomial(n: usize, k: usize) -> FieldElem {
    (0..k)
        .map(|i| FieldElem::ratio((n - i) as i64, i as i64 + 1))
        .product()
}

/// Coefficient of `z^n` in `exp(sum_r c[r-1] a(-r) z^r) v`.
pub fn create<S: Ring>(v: &FockVec<S>, c: &[S], n: u32) -> FockVec<S> {
    let mut out = FockVec::zero();
    for (parts, s) in creation_monomials(c, n) {
        for (k, x) in v.iter() {
            out.add_term(k.times(&parts), &x.mul_ref(&s));
        }
    }
    out
}

/// `exp(sum_r c[r-1] a(r) z^(-r)) v = sum_m z^(-m) out[m]`.
///
/// On a monomial the exponential shifts each `a(-r)` by `c_r h_r z^(-r)`.
pub fn annihilate<S: Ring>(v: &FockVec<S>, c: &[S]) -> BTreeMap<u32, FockVec<S>> {
    let mut out: BTreeMap<u32, FockVec<S>> = BTreeMap::new();
    for (k, x) in v.iter() {
        // distinct modes with multiplicities
        let mut modes: Vec<(u32, usize, Option<S>)> = Vec::new();
        let parts = k.parts();
        let mut i = 0;
        while i < parts.len() {
            let r = parts[i];
            let n = parts[i..].iter().take_while(|&&p| p == r).count();
            let shift = c
                .get(r as usize - 1)
                .filter(|cr| !cr.is_zero())
                .map(|cr| cr.mul_ref(&S::from_field(&heisenberg_scalar(r))));
            modes.push((r, n, shift));
            i += n;
        }
        let mut acc: Vec<(u32, Vec<u32>, S)> = vec![(0, Vec::new(), x.clone())];
        for (r, n, shift) in &modes {
            let mut next = Vec::new();
            for (deg, kept, s) in &acc {
                let top = if shift.is_some() { *n } else { 0 };
                let mut pw = S::one();
                for m in 0..=top {
                    if m > 0 {
                        pw = pw.mul_ref(shift.as_ref().expect("shift"));
                    }
                    let mut kept2 = kept.clone();
                    kept2.extend(std::iter::repeat(*r).take(n - m));
                    let coef = s
                        .mul_ref(&pw)
                        .scale(&binomial(*n, m));
                    next.push((deg + r * m as u32, kept2, coef));
                }
            }
            acc = next;
        }
        for (deg, kept, s) in acc {
            out.entry(deg)
                .or_insert_with(FockVec::zero)
                .add_term(FockKey::new(kept, k.label()), &s);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{vacuum, FockVector};
    use qvertex_scalar::Module;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn creation_exponential_low_terms() {
        let c = vec![FieldElem::from_int(2), FieldElem::from_int(3)];
        let v = create(&vacuum(0), &c, 2);
        // (2 a(-1))^2/2 + 3 a(-2)
        let want = FockVector::term(FockKey::new(vec![1, 1], 0), FieldElem::from_int(2))
            .add(&FockVector::term(FockKey::new(vec![2], 0), FieldElem::from_int(3)));
        assert_eq!(v, want);
    }

    #[test]
    fn annihilation_matches_repeated_action() {
        let c = vec![FieldElem::from_int(1)];
        let v = FockVector::basis(FockKey::new(vec![1, 1], 0));
        let out = annihilate(&v, &c);
        // exp(a(1) z^-1): z^-1 term is a(1)v, z^-2 term is a(1)^2 v / 2
        assert_eq!(out[&1], v.heis_act(1).unwrap());
        let twice = v.heis_act(1).unwrap().heis_act(1).unwrap();
        assert_eq!(out[&2], twice.scale(&FieldElem::ratio(1, 2)));
        assert_eq!(out[&0], v);
    }
}
