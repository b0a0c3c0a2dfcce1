use crate::monomial::Flavor;
use crate::relations::Report;
use crate::QvaError;
use qvertex_fock::FockVector;
use qvertex_scalar::{qq_factorial, FieldElem};
use qvertex_series::{NCPoly, NCWord};
use qvertex_vertexops::{apply_truncated, OperatorExpr};

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn fact_inv(n: u32) -> FieldElem {
    qq_factorial(n as i64).expect("nonnegative").inv().expect("nonzero")
}

/// `z2^t (z0 + z2)^u` in normal order.
fn shifted_binomial(u: u32, t: u32) -> NCPoly {
    let sum = NCPoly::from_words([
        NCWord::new(FieldElem::one(), 0, 1, 0),
        NCWord::new(FieldElem::one(), 0, 0, 1),
    ]);
    let mut p = NCPoly::from_words([NCWord::new(FieldElem::one(), 0, 0, t as i64)]);
    for _ in 0..u {
        p = p.mul(&sum);
    }
    p
}

/// Which side of `Y(a, z0 + z2) Y(b, z2) c = Y(Y(a, z0) b, z2) c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocSide {
    /// `Y(Y(a, z0) b, z2) c`.
    Iterate,
    /// `Y(a, z0 + z2) Y(b, z2) c`.
    Product,
}

/// The operator coefficient of `z0^r z2^s` on one side.
pub fn side_coefficient(
    side: AssocSide,
    flavor: Flavor,
    a: &OperatorExpr,
    b: &OperatorExpr,
    c: &OperatorExpr,
    r: u32,
    s: u32,
) -> OperatorExpr {
    match (flavor, side) {
        (Flavor::Noncommutative, AssocSide::Iterate) => {
            let inner = a.qtaylor_coeff(r).mul(&b.scale_subst(4 * r as i64));
            // z0^r c(z qq^s) = c(z qq^(s+r)) z0^r
            inner
                .qtaylor_coeff(s)
                .mul(&c.scale_subst(4 * (r + s) as i64))
        }
        (Flavor::Noncommutative, AssocSide::Product) => {
            let mut out = OperatorExpr::zero();
            for l in 0..=s {
                let (u, t) = (r + l, s - l);
                let k = shifted_binomial(u, t).coeff(0, r as i64, s as i64);
                if k.is_zero() {
                    continue;
                }
                let term = a
                    .qtaylor_coeff(u)
                    .mul(&b.qtaylor_coeff(t).scale_subst(4 * u as i64))
                    .mul(&c.scale_subst(4 * (u + t) as i64));
                out = out.add(&term.scale(&k));
            }
            out
        }
        (Flavor::Commutative, AssocSide::Iterate) => a
            .classical_derive_n(r)
            .mul(b)
            .classical_derive_n(s)
            .mul(c),
        (Flavor::Commutative, AssocSide::Product) => {
            let mut out = OperatorExpr::zero();
            for l in 0..=s {
                let term = a
                    .classical_derive_n(r + l)
                    .mul(&b.classical_derive_n(s - l))
                    .mul(c);
                out = out.add(&term.scale(&FieldElem::from_int(binom(r + l, l))));
            }
            out
        }
    }
}

/// Compare both sides of associativity coefficient-wise for
/// `z0^r z2^s`, `r <= orders.0`, `s <= orders.1`.
pub fn verify_associativity(
    a: &OperatorExpr,
    b: &OperatorExpr,
    c: &OperatorExpr,
    flavor: Flavor,
    orders: (u32, u32),
    probes: &[FockVector],
    window: (i64, i64),
) -> Result<Report, QvaError> {
    let mut report = Report::new("V4", window, probes.len());
    for r in 0..=orders.0 {
        for s in 0..=orders.1 {
            let lhs = side_coefficient(AssocSide::Iterate, flavor, a, b, c, r, s);
            let rhs = side_coefficient(AssocSide::Product, flavor, a, b, c, r, s);
            for (p, v) in probes.iter().enumerate() {
                let x = apply_truncated(&lhs, v, window.0, window.1)?;
                let y = apply_truncated(&rhs, v, window.0, window.1)?;
                report.checks += x.len().max(y.len());
                if let Some(e) = x.first_difference(&y) {
                    report.fail(format!(
                        "z0^{r} z2^{s}, probe {p}, z^({e}/2): {} vs {}",
                        x.coeff(e),
                        y.coeff(e)
                    ));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// The scalar content of associativity: for `r, s <= max`, the coefficients
/// obtained by normal ordering `z2^t (z0 + z2)^u` and substituting
/// `r = u - l`, `s = t + l` agree with the q-Leibniz expansion. Returns the
/// number of coefficients compared.
pub fn last_identity_check(max: u32) -> Result<usize, String> {
    let mut n = 0;
    for r in 0..=max {
        for s in 0..=max {
            for l in 0..=s {
                let (u, t) = (r + l, s - l);
                let from_product = &shifted_binomial(u, t).coeff(0, r as i64, s as i64)
                    * &(&fact_inv(u) * &fact_inv(t));
                let from_iterate = &(&FieldElem::qq_pow((r * (s - l)) as i64) * &fact_inv(r))
                    * &(&fact_inv(l) * &fact_inv(s - l));
                let leibniz = &(&qvertex_scalar::qq_binom(s as i64, l)
                    * &FieldElem::qq_pow((r * (s - l)) as i64))
                    * &(&fact_inv(r) * &fact_inv(s));
                if from_product != from_iterate || from_iterate != leibniz {
                    return Err(format!(
                        "r={r} s={s} l={l}: {from_product} / {from_iterate} / {leibniz}"
                    ));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}
