use crate::monomial::{accumulate, Flavor, LinComb, QVAMonomial, Tail};
use crate::products::{eval_monomial, Evaluator};
use crate::relations::Report;
use crate::QvaError;
use qvertex_fock::{vacuum, FockVector};
use qvertex_scalar::{qq_int, FieldElem};
use qvertex_series::CoeffSeries;
use std::sync::OnceLock;

fn pop_first(work: &mut LinComb) -> Option<(QVAMonomial, FieldElem)> {
    let k = work.keys().next()?.clone();
    let c = work.remove(&k)?;
    Some((k, c))
}

/// Rewrite into the spanning set of the monomial's flavor.
pub fn rewrite(m: &QVAMonomial) -> Result<LinComb, QvaError> {
    match m.flavor {
        Flavor::Commutative => straighten_commutative(m),
        Flavor::Noncommutative => reduce_noncommutative(m),
    }
}

/// Sort the indices of an `x̂` monomial and remove gaps `<= 1` with
/// `sum_p x̂_(-p-1) x̂_(-N+p-1) = 0`.
pub fn straighten_commutative(m: &QVAMonomial) -> Result<LinComb, QvaError> {
    if m.flavor != Flavor::Commutative {
        return Err(QvaError::WrongFlavor(Flavor::Commutative.to_string()));
    }
    let mut work = LinComb::new();
    let mut out = LinComb::new();
    accumulate(&mut work, m.clone(), &FieldElem::one());
    while let Some((mono, c)) = pop_first(&mut work) {
        if mono.indices.iter().any(|&l| l >= 0) {
            continue;
        }
        let mut idx = mono.indices.clone();
        idx.sort_unstable();
        if mono.tail == Tail::YHat && idx.last() == Some(&-1) {
            continue;
        }
        let Some(k) = (0..idx.len().saturating_sub(1)).find(|&k| idx[k + 1] - idx[k] <= 1) else {
            accumulate(&mut out, mono.with_indices(idx), &c);
            continue;
        };
        let total = -idx[k] - idx[k + 1] - 2;
        let (top, weight) = if total % 2 == 0 {
            (total / 2, -2)
        } else {
            ((total - 1) / 2, -1)
        };
        let w = &c * &FieldElem::from_int(weight);
        for p in 0..top {
            let mut next = idx.clone();
            next[k] = -(total - p) - 1;
            next[k + 1] = -p - 1;
            accumulate(&mut work, mono.with_indices(next), &w);
        }
    }
    Ok(out)
}

/// Express the pair `x_a x_b` (sitting on any right factor) through pairs
/// with left index `<= -3`; `a` is `-1` or `-2`.
fn pair_rule(a: i64, b: i64) -> Vec<((i64, i64), FieldElem)> {
    let n = -a - b - 2;
    if n <= 1 {
        return Vec::new();
    }
    let qn = qq_int(n);
    let c = &qq_int(n - 1) / &qn;
    let one = FieldElem::one();
    let denom = (&one - &c).inv().expect("[n-1] != [n]");
    let pair = |l: i64| (-l - 1, -n + l - 1);
    let mut out = Vec::new();
    for l in 2..=n {
        let s5 = -&one;
        let s6 = if l < n {
            -(&qq_int(n - l) / &qn)
        } else {
            FieldElem::zero()
        };
        let coeff = if a == -1 {
            &(&s6 - &(&c * &s5)) * &denom
        } else {
            &(&s5 - &s6) * &denom
        };
        if !coeff.is_zero() {
            out.push((pair(l), coeff));
        }
    }
    out
}

/// Reduce an `x` monomial to the gap conditions `l_r <= -3` (`r >= 2`),
/// working on the leftmost offending index first.
pub fn reduce_noncommutative(m: &QVAMonomial) -> Result<LinComb, QvaError> {
    if m.flavor != Flavor::Noncommutative {
        return Err(QvaError::WrongFlavor(Flavor::Noncommutative.to_string()));
    }
    let cstar = proportionality_constant()?;
    let mut work = LinComb::new();
    let mut out = LinComb::new();
    accumulate(&mut work, m.clone(), &FieldElem::one());
    while let Some((mono, c)) = pop_first(&mut work) {
        if mono.indices.iter().any(|&l| l >= 0) {
            continue;
        }
        let len = mono.len();
        if mono.tail == Tail::Y && len > 0 && mono.l(1) == -1 {
            continue;
        }
        let Some(j) = (2..=len).rev().find(|&j| mono.l(j) >= -2) else {
            accumulate(&mut out, mono, &c);
            continue;
        };
        let (a, b) = (mono.l(j), mono.l(j - 1));
        let pos = len - j;
        let rules = if j == 2 && mono.tail == Tail::Unit && (a, b) == (-2, -2) {
            vec![((-3, -1), cstar.clone())]
        } else {
            pair_rule(a, b)
        };
        for ((na, nb), k) in rules {
            let mut next = mono.indices.clone();
            next[pos] = na;
            next[pos + 1] = nb;
            accumulate(&mut work, mono.with_indices(next), &(&c * &k));
        }
    }
    Ok(out)
}

fn ratio_of(
    a: &CoeffSeries<FockVector>,
    b: &CoeffSeries<FockVector>,
) -> Result<Option<FieldElem>, ()> {
    let mut ratio: Option<FieldElem> = None;
    for (e, w) in b.iter() {
        for (k, y) in w.iter() {
            let x = a.coeff(e).coeff(k).cloned().unwrap_or_else(FieldElem::zero);
            let r = &x / y;
            match &ratio {
                None => ratio = Some(r),
                Some(r0) if *r0 != r => return Err(()),
                _ => {}
            }
        }
    }
    let r = ratio.clone().unwrap_or_else(FieldElem::zero);
    if !a.sub(&b.scale(&r)).is_zero() {
        return Err(());
    }
    Ok(ratio)
}

/// The scalar `c` with `x(z)_(-2) x(z)_(-2) 1 = c x(z)_(-3) x(z)_(-1) 1`,
/// solved from evaluated coefficients on the vacuum.
pub fn proportionality_constant() -> Result<FieldElem, QvaError> {
    static C: OnceLock<Result<FieldElem, QvaError>> = OnceLock::new();
    C.get_or_init(|| {
        let lhs = QVAMonomial::x(&[-2, -2], Tail::Unit);
        let rhs = QVAMonomial::x(&[-3, -1], Tail::Unit);
        let fail = || QvaError::NotProportional(lhs.to_string(), rhs.to_string());
        let mut found: Option<FieldElem> = None;
        for v in [vacuum(0), vacuum(2)] {
            let a = eval_monomial(&lhs, &v, -8, 12)?;
            let b = eval_monomial(&rhs, &v, -8, 12)?;
            match ratio_of(&a, &b) {
                Ok(Some(r)) => {
                    if found.as_ref().is_some_and(|f| *f != r) {
                        return Err(fail());
                    }
                    found = Some(r);
                }
                Ok(None) => {}
                Err(()) => return Err(fail()),
            }
        }
        found.ok_or_else(fail)
    })
    .clone()
}

/// Compare a monomial with a linear combination on every probe; `None` when
/// they agree, otherwise a description of the first difference.
pub fn evaluation_agrees(
    m: &QVAMonomial,
    comb: &LinComb,
    ev: &mut Evaluator,
) -> Result<Option<String>, QvaError> {
    let lhs: Vec<CoeffSeries<FockVector>> = ev.eval(m)?.to_vec();
    let (lo, hi) = ev.window();
    let mut rhs: Vec<CoeffSeries<FockVector>> = vec![CoeffSeries::new(lo, hi); lhs.len()];
    for (t, c) in comb {
        let s = ev.eval(t)?;
        for (acc, x) in rhs.iter_mut().zip(s) {
            *acc = acc.add(&x.scale(c));
        }
    }
    for (p, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        if let Some(e) = a.first_difference(b) {
            return Ok(Some(format!(
                "{m}: probe {p}, z^({e}/2): {} vs {}",
                a.coeff(e),
                b.coeff(e)
            )));
        }
    }
    Ok(None)
}

/// Index lists `[l_m, ..., l_1]` with `m <= max_len`, every `l_p <= -1` and
/// `sum |l_p| <= max_weight`.
pub fn index_lists(max_len: usize, max_weight: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(Vec::new(), 0i64)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (idx, w) in &frontier {
            for l in 1..=max_weight - w {
                let mut v: Vec<i64> = idx.clone();
                v.push(-l);
                out.push(v.clone());
                next.push((v, w + l));
            }
        }
        frontier = next;
    }
    out
}

/// Rewrite every monomial from `index_lists` in both flavors with both tails
/// and compare evaluations; outputs must also lie in the spanning set.
pub fn straightening_soundness(
    max_len: usize,
    max_weight: i64,
    probes: Vec<FockVector>,
    window: (i64, i64),
) -> Result<Report, QvaError> {
    let mut report = Report::new("straightening", window, probes.len());
    let mut ev = Evaluator::new(probes, window.0, window.1);
    let shapes = [
        (Flavor::Noncommutative, Tail::Unit),
        (Flavor::Noncommutative, Tail::Y),
        (Flavor::Commutative, Tail::Unit),
        (Flavor::Commutative, Tail::YHat),
    ];
    for idx in index_lists(max_len, max_weight) {
        for (flavor, tail) in shapes {
            let m = QVAMonomial::new(flavor, idx.clone(), tail)?;
            let comb = rewrite(&m)?;
            if let Some(t) = comb.keys().find(|t| !t.is_basic()) {
                report.fail(format!("{m}: output term {t} is not basic"));
                return Ok(report);
            }
            if let Some(d) = evaluation_agrees(&m, &comb, &mut ev)? {
                report.fail(d);
                return Ok(report);
            }
            report.checks += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_rule_small_cases() {
        assert!(pair_rule(-1, -1).is_empty());
        assert!(pair_rule(-1, -2).is_empty());
        assert!(pair_rule(-2, -1).is_empty());
        // n = 2, a = -1: x_{-1}x_{-3} = qq^{-1} x_{-3}x_{-1}
        assert_eq!(pair_rule(-1, -3), vec![((-3, -1), FieldElem::qq_pow(-1))]);
    }

    #[test]
    fn index_list_count() {
        // compositions of at most 10 into at most 4 parts
        assert_eq!(index_lists(4, 10).len(), 1 + 10 + 45 + 120 + 210);
        assert_eq!(index_lists(2, 3), vec![
            vec![], vec![-1], vec![-2], vec![-3], vec![-1, -1], vec![-1, -2], vec![-2, -1],
        ]);
    }
}
