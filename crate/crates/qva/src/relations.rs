use crate::assoc::verify_associativity;
use crate::monomial::{accumulate, Flavor, LinComb, QVAMonomial, Tail};
use crate::products::{build_expr, rth_product, ymap, Evaluator};
use crate::QvaError;
use qvertex_fock::{vacuum, FockKey, FockVector};
use qvertex_scalar::{qq_binom, qq_int, sym_q_int, FieldElem, Module};
use qvertex_series::CoeffSeries;
use qvertex_vertexops::{
    apply_truncated, make_operator, mode_apply, normal_ordered_table, product_apply, product_sum_band,
    product_lower_bounds, ratio_power, OperatorExpr, ShiftPoly, Table,
};
use std::fmt;

/// Outcome of one catalog check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub id: String,
    pub passed: bool,
    pub window: (i64, i64),
    pub probes: usize,
    pub checks: usize,
    pub counterexample: Option<String>,
}

impl Report {
    pub fn new(id: &str, window: (i64, i64), probes: usize) -> Self {
        Report {
            id: id.to_string(),
            passed: true,
            window,
            probes,
            checks: 0,
            counterexample: None,
        }
    }

    pub fn fail(&mut self, msg: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(msg);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "id={} status={} window=[{},{}] probes={} checks={}",
            self.id,
            if self.passed { "pass" } else { "FAIL" },
            self.window.0,
            self.window.1,
            self.probes,
            self.checks
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " first_difference=\"{c}\"")?;
        }
        Ok(())
    }
}

type Runner = fn(&[FockVector], (i64, i64), &mut Report) -> Result<(), QvaError>;

/// A checkable identity between operators.
pub trait Relation: Send + Sync {
    fn id(&self) -> &'static str;
    fn statement(&self) -> &'static str;
    fn default_window(&self) -> (i64, i64);
    fn check(&self, probes: &[FockVector], window: (i64, i64)) -> Result<Report, QvaError>;
}

struct Rel {
    id: &'static str,
    statement: &'static str,
    window: (i64, i64),
    run: Runner,
}

impl Relation for Rel {
    fn id(&self) -> &'static str {
        self.id
    }
    fn statement(&self) -> &'static str {
        self.statement
    }
    fn default_window(&self) -> (i64, i64) {
        self.window
    }
    fn check(&self, probes: &[FockVector], window: (i64, i64)) -> Result<Report, QvaError> {
        let mut r = Report::new(self.id, window, probes.len());
        (self.run)(probes, window, &mut r)?;
        Ok(r)
    }
}

fn op(name: &str) -> OperatorExpr {
    make_operator(name).expect("catalog operator")
}

fn key(parts: &[u32], j: i64) -> FockVector {
    FockVector::basis(FockKey::new(parts.to_vec(), j))
}

/// `1 ⊗ e^0`, `a(-1) ⊗ e^0`, `a(-2)a(-1) ⊗ e^λ1`.
pub fn default_probes() -> Vec<FockVector> {
    vec![vacuum(0), key(&[1], 0), key(&[2, 1], 1)]
}

fn poly(ts: &[((i64, i64), i64)]) -> ShiftPoly {
    ShiftPoly::from_terms(
        2,
        ts.iter()
            .map(|((a, b), c)| (vec![*a, *b], FieldElem::from_int(*c))),
    )
}

fn compare(r: &mut Report, what: &str, p: usize, lhs: &Table, rhs: &Table) -> bool {
    r.checks += lhs.len().max(rhs.len());
    if let Some((k, a, b)) = lhs.first_difference(rhs) {
        r.fail(format!("{what}, probe {p}, exponents {k:?}: {a} vs {b}"));
        return false;
    }
    true
}

fn nontrivial(r: &mut Report, what: &str, p: usize, t: &Table) -> bool {
    if t.is_zero() {
        r.fail(format!("{what}, probe {p}: both sides vanish on the window"));
        return false;
    }
    true
}

/// `A(z1) B(z2) = F(z1, z2) :A(z1) B(z2):`, optionally also `= B(z2) A(z1)`.
fn normal_ordering_check(
    a: &str,
    b: &str,
    f: ShiftPoly,
    swapped: bool,
    probes: &[FockVector],
    (lo, hi): (i64, i64),
    r: &mut Report,
) -> Result<(), QvaError> {
    let (a, b) = (op(a), op(b));
    let w = vec![(lo, hi), (lo, hi)];
    let ext: Vec<(i64, i64)> = (0..2)
        .map(|i| {
            let (s, t) = f.span(i);
            (lo - t.max(0), hi - s.min(0))
        })
        .collect();
    for (p, v) in probes.iter().enumerate() {
        let lhs = product_apply(&[(a.clone(), 0), (b.clone(), 1)], v, &w)?;
        if !nontrivial(r, "product", p, &lhs) {
            return Ok(());
        }
        if swapped {
            let sw = product_apply(&[(b.clone(), 1), (a.clone(), 0)], v, &w)?;
            if !compare(r, "exchange", p, &lhs, &sw) {
                return Ok(());
            }
        }
        let n = normal_ordered_table(&[(a.clone(), 0), (b.clone(), 1)], v, &ext)?;
        if !compare(r, "normal ordering", p, &lhs, &n.mul_poly(&f, w.clone())) {
            return Ok(());
        }
    }
    Ok(())
}

/// `A(z1) B(z2) = F(z1, z2) B(z2) A(z1)` with `F` a polynomial in the shifts.
fn exchange_check(
    a: &OperatorExpr,
    b: &OperatorExpr,
    f: &ShiftPoly,
    probes: &[FockVector],
    (lo, hi): (i64, i64),
    r: &mut Report,
) -> Result<(), QvaError> {
    let w = vec![(lo, hi), (lo, hi)];
    let ext: Vec<(i64, i64)> = (0..2)
        .map(|i| {
            let (s, t) = f.span(i);
            (lo - t.max(0), hi - s.min(0))
        })
        .collect();
    for (p, v) in probes.iter().enumerate() {
        let lhs = product_apply(&[(a.clone(), 0), (b.clone(), 1)], v, &w)?;
        if !nontrivial(r, "product", p, &lhs) {
            return Ok(());
        }
        let x = product_apply(&[(b.clone(), 1), (a.clone(), 0)], v, &ext)?;
        if !compare(r, "exchange", p, &lhs, &x.mul_poly(f, w.clone())) {
            return Ok(());
        }
    }
    Ok(())
}

fn run_r1(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let q2 = FieldElem::q_pow(-2);
    let f = ShiftPoly::from_terms(
        2,
        [
            (vec![4, 0], FieldElem::one()),
            (vec![2, 2], -(&FieldElem::one() + &q2)),
            (vec![0, 4], q2),
        ],
    );
    normal_ordering_check("x", "x", f, false, pr, w, r)
}

fn run_r2(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    normal_ordering_check("x", "Y", poly(&[((2, 0), 1), ((0, 2), -1)]), true, pr, w, r)
}

fn run_r3(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let f = poly(&[((0, 0), 1), ((-2, 2), -1)]);
    exchange_check(&op("x"), &op("E_minus_koyama"), &f, pr, w, r)
}

fn run_r4(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let f = poly(&[((0, 0), 1), ((-2, 2), -1)]);
    exchange_check(&op("E_plus_plus"), &op("Y"), &f, pr, w, r)
}

fn run_c1(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let f = poly(&[((4, 0), 1), ((2, 2), -2), ((0, 4), 1)]);
    normal_ordering_check("x_hat", "x_hat", f, true, pr, w, r)
}

fn run_c3(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let f = poly(&[((2, 0), 1), ((0, 2), -1)]);
    normal_ordering_check("x_hat", "Y_hat", f, true, pr, w, r)
}

fn run_c4(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let f = poly(&[((2, 0), -1), ((0, 2), 1)]);
    exchange_check(&op("x_hat"), &op("E_hat_minus_lambda"), &f, pr, w, r)
}

fn run_c5(pr: &[FockVector], (lo, hi): (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let (x, e) = (op("x_hat"), op("E_hat_minus_lambda"));
    let w = vec![(lo, hi), (lo, hi)];
    let ext = vec![(lo - 2, hi + 4), (lo - 2, hi + 4)];
    let lin = poly(&[((2, 0), 1), ((0, 2), -1)]);
    for (p, v) in pr.iter().enumerate() {
        let a = product_apply(&[(x.clone(), 0), (e.clone(), 1)], v, &ext)?;
        let b = product_apply(&[(e.clone(), 1), (x.clone(), 0)], v, &ext)?;
        let d = |t: &Table, n: u32, k: u32| t.derive(0, n).derive(1, k);
        for n in 0..=2u32 {
            for k in 0..=2u32 {
                let lhs = d(&a, n, k).restrict(w.clone());
                let mut rhs = d(&b, n, k).mul_poly(&lin, w.clone()).scale(&FieldElem::from_int(-1));
                if k > 0 {
                    rhs = rhs.add(&d(&b, n, k - 1).restrict(w.clone()).scale(&FieldElem::from_int(k as i64)));
                }
                if n > 0 {
                    rhs = rhs.sub(&d(&b, n - 1, k).restrict(w.clone()).scale(&FieldElem::from_int(n as i64)));
                }
                let what = format!("n={n} k={k}");
                if !nontrivial(r, &what, p, &lhs) || !compare(r, &what, p, &lhs, &rhs) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn run_y1(pr: &[FockVector], (lo, hi): (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let (y, e) = (op("Y_hat"), op("E_hat_minus_lambda"));
    let w = vec![(lo, hi), (lo, hi)];
    let n = (hi.max(0) / 2) as u32;
    let half = FieldElem::ratio(1, 2);
    let f = ratio_power(2, 1, 0, &FieldElem::one(), &half, n)
        .mul(&ShiftPoly::monomial(2, vec![1, 0], FieldElem::one()));
    let ext = vec![(lo - 1, hi - 1 + 2 * n as i64), (lo - 2 * n as i64, hi)];
    for (p, v) in pr.iter().enumerate() {
        let lhs = product_apply(&[(y.clone(), 0), (e.clone(), 1)], v, &w)?;
        if !nontrivial(r, "product", p, &lhs) {
            return Ok(());
        }
        let x = product_apply(&[(e.clone(), 1), (y.clone(), 0)], v, &ext)?;
        if !compare(r, "exchange", p, &lhs, &x.mul_poly(&f, w.clone())) {
            return Ok(());
        }
    }
    Ok(())
}

/// `sum_i c_i A_i(z) B_i(z)` vanishes: every diagonal `sum_(k1+k2=N)` of
/// the two-variable products cancels for `N` in the window.
fn diagonal_check(
    what: &str,
    terms: &[(FieldElem, OperatorExpr, OperatorExpr)],
    pr: &[FockVector],
    (lo, hi): (i64, i64),
    r: &mut Report,
) -> Result<(), QvaError> {
    for (p, v) in pr.iter().enumerate() {
        let mut low = [i64::MAX; 2];
        for (_, a, b) in terms {
            let Some(lb) = product_lower_bounds(&[(a.clone(), 0), (b.clone(), 1)], v, 2) else {
                r.fail(format!("{what}: no uniform lower bound"));
                return Ok(());
            };
            low[0] = low[0].min(lb[0]);
            low[1] = low[1].min(lb[1]);
        }
        let w = vec![(low[0], hi - low[1]), (low[1], hi - low[0])];
        let sum: Vec<_> = terms
            .iter()
            .map(|(c, a, b)| (c.clone(), vec![(a.clone(), 0), (b.clone(), 1)]))
            .collect();
        let total = product_sum_band(&sum, v, &w, Some(hi))?;
        if !nontrivial(r, what, p, &total) {
            return Ok(());
        }
        for n in lo..=hi {
            let d = total.diagonal(n);
            r.checks += 1;
            if !d.is_zero() {
                r.fail(format!("{what}, probe {p}, diagonal z^({n}/2): {d}"));
                return Ok(());
            }
        }
    }
    Ok(())
}

fn one() -> FieldElem {
    FieldElem::one()
}

fn run_c2(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let x = op("x_hat");
    diagonal_check("x_hat(z)^2", &[(one(), x.clone(), x)], pr, w, r)
}

fn run_q1(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let x = op("x");
    diagonal_check("x(z)x(z)", &[(one(), x.clone(), x)], pr, w, r)
}

fn run_q2(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let x = op("x");
    diagonal_check("x(z)x^[1](z)", &[(one(), x.clone(), x.qderive())], pr, w, r)
}

fn run_q3(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let x = op("x");
    diagonal_check(
        "x^[1](z)x(z qq)",
        &[(one(), x.qderive(), x.scale_subst(4))],
        pr,
        w,
        r,
    )
}

/// `sum_(l<=top) [top, l] x^[l](z) x^[n-l](z qq^l)`.
fn q_derived_terms(n: u32, top: u32) -> Vec<(FieldElem, OperatorExpr, OperatorExpr)> {
    let x = op("x");
    (0..=top)
        .map(|l| {
            (
                qq_binom(top as i64, l),
                x.qderive_n(l),
                x.qderive_n(n - l).scale_subst(4 * l as i64),
            )
        })
        .collect()
}

fn run_q4(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    for n in 1..=5 {
        diagonal_check(&format!("n={n}"), &q_derived_terms(n, n), pr, w, r)?;
        if !r.passed {
            break;
        }
    }
    Ok(())
}

fn run_q5(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    for n in 1..=5 {
        diagonal_check(&format!("n={n}"), &q_derived_terms(n, n - 1), pr, w, r)?;
        if !r.passed {
            break;
        }
    }
    Ok(())
}

fn pair(a: i64, b: i64) -> QVAMonomial {
    QVAMonomial::x(&[a, b], Tail::Unit)
}

fn comb_vanishes(
    what: &str,
    lhs: &LinComb,
    rhs: &LinComb,
    ev: &mut Evaluator,
    r: &mut Report,
) -> Result<(), QvaError> {
    let (lo, hi) = ev.window();
    let n = ev.probes().len();
    let mut sides = [vec![CoeffSeries::new(lo, hi); n], vec![CoeffSeries::new(lo, hi); n]];
    for (side, comb) in sides.iter_mut().zip([lhs, rhs]) {
        for (m, c) in comb {
            for (acc, s) in side.iter_mut().zip(ev.eval(m)?) {
                *acc = acc.add(&s.scale(c));
            }
        }
    }
    let mut live = false;
    for m in lhs.keys() {
        live |= ev.eval(m)?.iter().any(|s| !s.is_zero());
    }
    if !live {
        r.fail(format!("{what}: every left term vanishes"));
        return Ok(());
    }
    for p in 0..n {
        let (a, b) = (&sides[0][p], &sides[1][p]);
        r.checks += a.len().max(b.len());
        if let Some(e) = a.first_difference(b) {
            r.fail(format!("{what}, probe {p}, z^({e}/2): {} vs {}", a.coeff(e), b.coeff(e)));
            return Ok(());
        }
    }
    Ok(())
}

fn run_q6(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let mut ev = Evaluator::new(pr.to_vec(), w.0, w.1);
    for n in 2..=5i64 {
        let mut lhs = LinComb::new();
        accumulate(&mut lhs, pair(-1, -n - 1), &one());
        accumulate(&mut lhs, pair(-2, -n), &one());
        let mut rhs = LinComb::new();
        for l in 2..=n {
            accumulate(&mut rhs, pair(-l - 1, -n + l - 1), &-one());
        }
        comb_vanishes(&format!("n={n}"), &lhs, &rhs, &mut ev, r)?;
    }
    Ok(())
}

fn run_q7(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let mut ev = Evaluator::new(pr.to_vec(), w.0, w.1);
    for n in 2..=5i64 {
        let qn = qq_int(n);
        let mut lhs = LinComb::new();
        accumulate(&mut lhs, pair(-1, -n - 1), &one());
        accumulate(&mut lhs, pair(-2, -n), &(&qq_int(n - 1) / &qn));
        let mut rhs = LinComb::new();
        for l in 2..n {
            accumulate(&mut rhs, pair(-l - 1, -n + l - 1), &-(&qq_int(n - l) / &qn));
        }
        comb_vanishes(&format!("n={n}"), &lhs, &rhs, &mut ev, r)?;
    }
    Ok(())
}

fn mode_range((lo, hi): (i64, i64)) -> std::ops::RangeInclusive<i64> {
    lo / 2..=hi / 2
}

fn heis(v: &FockVector, k: i64) -> FockVector {
    v.heis_act(k).expect("nonzero mode")
}

fn run_h1(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    for (p, v) in pr.iter().enumerate() {
        for k in mode_range(w).filter(|&k| k != 0) {
            for l in mode_range(w).filter(|&l| l != 0) {
                let mut lhs = heis(&heis(v, l), k);
                lhs.sub_assign_ref(&heis(&heis(v, k), l));
                let rhs = if k + l == 0 {
                    let s = &(&sym_q_int(2 * k) * &sym_q_int(k)) * &FieldElem::ratio(1, k);
                    v.scale(&s)
                } else {
                    FockVector::zero()
                };
                r.checks += 1;
                if lhs != rhs {
                    r.fail(format!("[a({k}),a({l})], probe {p}: {lhs} vs {rhs}"));
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn x_mode(v: &FockVector, k: i64) -> Result<FockVector, QvaError> {
    Ok(mode_apply(&op("x"), k, v)?)
}

fn mode_compare(r: &mut Report, what: String, lhs: FockVector, rhs: FockVector) -> bool {
    r.checks += 1;
    if lhs != rhs {
        r.fail(format!("{what}: {lhs} vs {rhs}"));
        return false;
    }
    true
}

fn run_d6(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    for (p, v) in pr.iter().enumerate() {
        let kinv = v.map_keyed(|key, c| c.scale(&FieldElem::v_pow(-2 * key.label())));
        for k in mode_range(w) {
            let lhs = x_mode(&kinv, k)?.charge_act();
            let rhs = x_mode(v, k)?.scale(&FieldElem::q_pow(2));
            if !mode_compare(r, format!("K x({k}) K^-1, probe {p}"), lhs, rhs) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn run_d7(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    for (p, v) in pr.iter().enumerate() {
        for k in mode_range(w).filter(|&k| k != 0) {
            let s = &(&sym_q_int(2 * k) * &FieldElem::ratio(1, k)) * &FieldElem::v_pow(-k.abs());
            for l in mode_range(w) {
                let mut lhs = heis(&x_mode(v, l)?, k);
                lhs.sub_assign_ref(&x_mode(&heis(v, k), l)?);
                let rhs = x_mode(v, k + l)?.scale(&s);
                if !mode_compare(r, format!("[a({k}),x({l})], probe {p}"), lhs, rhs) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn run_d8(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let q2 = FieldElem::q_pow(2);
    for (p, v) in pr.iter().enumerate() {
        for k in mode_range(w) {
            for l in mode_range(w) {
                let xx = |a: i64, b: i64| -> Result<FockVector, QvaError> {
                    x_mode(&x_mode(v, b)?, a)
                };
                let mut lhs = xx(k + 1, l)?;
                lhs.sub_assign_ref(&xx(l, k + 1)?.scale(&q2));
                let mut rhs = xx(k, l + 1)?.scale(&q2);
                rhs.sub_assign_ref(&xx(l + 1, k)?);
                if !mode_compare(r, format!("k={k} l={l}, probe {p}"), lhs, rhs) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn series_compare(
    r: &mut Report,
    what: &str,
    a: &OperatorExpr,
    b: &OperatorExpr,
    pr: &[FockVector],
    (lo, hi): (i64, i64),
) -> Result<bool, QvaError> {
    for (p, v) in pr.iter().enumerate() {
        let x = apply_truncated(a, v, lo, hi)?;
        let y = apply_truncated(b, v, lo, hi)?;
        r.checks += x.len().max(y.len());
        if let Some(e) = x.first_difference(&y) {
            r.fail(format!("{what}, probe {p}, z^({e}/2): {} vs {}", x.coeff(e), y.coeff(e)));
            return Ok(false);
        }
    }
    Ok(true)
}

fn samples() -> Vec<(&'static str, OperatorExpr)> {
    let x = op("x");
    vec![
        ("x", x.clone()),
        ("x^[1]", x.qderive()),
        ("Y", op("Y")),
        ("x_{-3}x_{-1}1", build_expr(&QVAMonomial::x(&[-3, -1], Tail::Unit))),
    ]
}

fn run_v2(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let y = ymap(&OperatorExpr::unit(), 4);
    r.checks += y.len();
    if y[0] != OperatorExpr::unit() || y[1..].iter().any(|e| !e.is_zero()) {
        r.fail("Y(1, z0) has a nonconstant coefficient".to_string());
        return Ok(());
    }
    for (name, a) in samples() {
        for k in -4..=1i64 {
            let lhs = rth_product(&OperatorExpr::unit(), &a, k);
            let rhs = if k == -1 { a.clone() } else { OperatorExpr::zero() };
            if !series_compare(r, &format!("1_({k}) {name}"), &lhs, &rhs, pr, w)? {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn run_v3(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    for (name, a) in samples() {
        let lhs = rth_product(&a, &OperatorExpr::unit(), -1);
        if !series_compare(r, &format!("{name}_(-1) 1"), &lhs, &a, pr, w)? {
            return Ok(());
        }
        let lhs0 = ymap(&a, 0).remove(0);
        if !series_compare(r, &format!("Y({name}, 0)"), &lhs0, &a, pr, w)? {
            return Ok(());
        }
    }
    Ok(())
}

fn run_nl(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let x = op("x");
    let d = x.qderive();
    for (name, b) in [("x", x.clone()), ("Y", op("Y"))] {
        for k in 0..=4u32 {
            let lhs = d
                .qtaylor_coeff(k)
                .mul(&b.scale_subst(4).scale_subst(4 * k as i64));
            let rhs = x
                .qtaylor_coeff(k + 1)
                .mul(&b.scale_subst(4 * (k + 1) as i64))
                .scale(&qq_int(k as i64 + 1));
            if !series_compare(r, &format!("b={name}, z0^{k}"), &lhs, &rhs, pr, w)? {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn run_v4(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    *r = associativity_suite((3, 3), pr, w)?;
    Ok(())
}

/// Associativity for `x,x,x`, `x,x,Y` and `x̂,x̂,x̂` on the first two probes.
pub fn associativity_suite(
    orders: (u32, u32),
    pr: &[FockVector],
    w: (i64, i64),
) -> Result<Report, QvaError> {
    let (x, xh) = (op("x"), op("x_hat"));
    let cases = [
        ("x,x,x", x.clone(), x.clone(), x.clone(), Flavor::Noncommutative),
        ("x,x,Y", x.clone(), x.clone(), op("Y"), Flavor::Noncommutative),
        ("xhat,xhat,xhat", xh.clone(), xh.clone(), xh.clone(), Flavor::Commutative),
    ];
    let probes = &pr[..pr.len().min(2)];
    let mut r = Report::new("V4", w, probes.len());
    for (name, a, b, c, fl) in cases {
        let sub = verify_associativity(&a, &b, &c, fl, orders, probes, w)?;
        r.checks += sub.checks;
        if !sub.passed {
            r.fail(format!("{name}: {}", sub.counterexample.unwrap_or_default()));
            break;
        }
    }
    Ok(r)
}

fn zeroth(m: i64, eps: i64) -> QVAMonomial {
    let mut idx: Vec<i64> = (1..=m).rev().map(|k| -2 * k + 1).collect();
    if eps >= 0 {
        idx.insert(0, -2 * m + 1 - eps);
    }
    QVAMonomial::x_hat(&idx, Tail::Unit)
}

fn run_l0(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let mut ev = Evaluator::new(pr.to_vec(), w.0, w.1);
    for m in 1..=3 {
        for eps in 0..=1 {
            let mono = zeroth(m, eps);
            for (p, s) in ev.eval(&mono)?.iter().enumerate() {
                r.checks += 1;
                if !s.is_zero() {
                    r.fail(format!("{mono}, probe {p}: nonzero"));
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn run_l1(pr: &[FockVector], w: (i64, i64), r: &mut Report) -> Result<(), QvaError> {
    let mut ev = Evaluator::new(pr.to_vec(), w.0, w.1);
    for m in 1..=3 {
        let mono = zeroth(m, -1);
        r.checks += 1;
        if ev.eval(&mono)?.iter().all(|s| s.is_zero()) {
            r.fail(format!("{mono} vanishes on every probe"));
            return Ok(());
        }
    }
    Ok(())
}

static CATALOG: &[Rel] = &[
    Rel { id: "R1", statement: "x(z1)x(z2) = (z1-z2)(z1-q^-2 z2) :x(z1)x(z2):", window: (-10, 10), run: run_r1 },
    Rel { id: "R2", statement: "x(z1)Y(z2) = Y(z2)x(z1) = (z1-z2) :x(z1)Y(z2):", window: (-10, 10), run: run_r2 },
    Rel { id: "R3", statement: "x(z1)E-(z2) = (1-z2/z1) E-(z2)x(z1)", window: (-10, 10), run: run_r3 },
    Rel { id: "R4", statement: "E+(z1)Y(z2) = (1-z2/z1) Y(z2)E+(z1)", window: (-10, 10), run: run_r4 },
    Rel { id: "C1", statement: "xh(z1)xh(z2) = xh(z2)xh(z1) = (z1-z2)^2 :xh(z1)xh(z2):", window: (-10, 10), run: run_c1 },
    Rel { id: "C2", statement: "xh(z)^2 = 0", window: (-16, 16), run: run_c2 },
    Rel { id: "C3", statement: "xh(z1)Yh(z2) = Yh(z2)xh(z1) = (z1-z2) :xh(z1)Yh(z2):", window: (-10, 10), run: run_c3 },
    Rel { id: "C4", statement: "xh(z1)Eh-,λ(z2) = -(z1-z2) Eh-,λ(z2)xh(z1)", window: (-10, 10), run: run_c4 },
    Rel { id: "C5", statement: "xh^(n)(z1)Eh^(k)(z2) = k Eh^(k-1) xh^(n) - n Eh^(k) xh^(n-1) - (z1-z2) Eh^(k) xh^(n), n,k <= 2", window: (-10, 10), run: run_c5 },
    Rel { id: "Q1", statement: "x(z)x(z) = 0", window: (-16, 16), run: run_q1 },
    Rel { id: "Q2", statement: "x(z)x^[1](z) = 0", window: (-16, 16), run: run_q2 },
    Rel { id: "Q3", statement: "x^[1](z)x(z qq) = 0", window: (-16, 16), run: run_q3 },
    Rel { id: "Q4", statement: "sum_l [n,l] x^[l](z)x^[n-l](z qq^l) = 0, n <= 5", window: (-16, 16), run: run_q4 },
    Rel { id: "Q5", statement: "sum_(l<n) [n-1,l] x^[l](z)x^[n-l](z qq^l) = 0, n <= 5", window: (-16, 16), run: run_q5 },
    Rel { id: "Q6", statement: "x_(-1)x_(-n-1) + x_(-2)x_(-n) = -sum_(l=2..n) x_(-l-1)x_(-n+l-1), n <= 5", window: (-16, 16), run: run_q6 },
    Rel { id: "Q7", statement: "x_(-1)x_(-n-1) + [n-1]/[n] x_(-2)x_(-n) = -sum_(l=2..n-1) [n-l]/[n] x_(-l-1)x_(-n+l-1), n <= 5", window: (-16, 16), run: run_q7 },
    Rel { id: "H1", statement: "[a(k),a(l)] = δ(k+l) [2k][k]/k", window: (-8, 8), run: run_h1 },
    Rel { id: "D6", statement: "K x(k) K^-1 = q^2 x(k)", window: (-6, 6), run: run_d6 },
    Rel { id: "D7", statement: "[a(k),x(l)] = [2k]/k q^(-|k|/2) x(k+l)", window: (-6, 6), run: run_d7 },
    Rel { id: "D8", statement: "x(k+1)x(l) - q^2 x(l)x(k+1) = q^2 x(k)x(l+1) - x(l+1)x(k)", window: (-6, 6), run: run_d8 },
    Rel { id: "V2", statement: "Y(1, z0) = 1 and 1_r a = δ(r,-1) a", window: (-12, 12), run: run_v2 },
    Rel { id: "V3", statement: "Y(a, z0)1 at z0 = 0 is a", window: (-12, 12), run: run_v3 },
    Rel { id: "NL", statement: "Y(a^[1], z0) b(z qq) = d/dz0 Y(a, z0) b", window: (-12, 12), run: run_nl },
    Rel { id: "V4", statement: "Y(a, z0+z2)Y(b, z2)c = Y(Y(a, z0)b, z2)c, orders 3,3", window: (-8, 8), run: run_v4 },
    Rel { id: "Y1", statement: "Yh(z)Eh-,λ(z1) = (1-z1/z)^(1/2) z^(1/2) Eh-,λ(z1)Yh(z)", window: (-10, 10), run: run_y1 },
    Rel { id: "L0", statement: "xh_(-2m+1-e) xh_(-2m+1) ... xh_(-1) 1 = 0, m <= 3", window: (-16, 16), run: run_l0 },
    Rel { id: "L1", statement: "xh_(-2m+1) ... xh_(-1) 1 != 0, m <= 3", window: (-16, 16), run: run_l1 },
];

pub fn relations() -> impl Iterator<Item = &'static dyn Relation> {
    CATALOG.iter().map(|r| r as &dyn Relation)
}

pub fn relation_ids() -> Vec<&'static str> {
    CATALOG.iter().map(|r| r.id).collect()
}

/// Run one catalog check; `window` defaults to the relation's own.
pub fn verify_relation(
    id: &str,
    probes: &[FockVector],
    window: Option<(i64, i64)>,
) -> Result<Report, QvaError> {
    let rel = relations()
        .find(|r| r.id() == id)
        .ok_or_else(|| QvaError::UnknownRelation(id.to_string()))?;
    rel.check(probes, window.unwrap_or(rel.default_window()))
}
