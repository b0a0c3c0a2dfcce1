use crate::nc::{nc_binomial, NCPoly, NCWord, Var};
use crate::CoeffSeries;
use qvertex_scalar::{qq_binom, qq_factorial, qq_int_half, FieldElem, Module, Ring};

/// `(s(z qq) - s(z)) / (z (qq - 1))`: the coefficient at `z^(k/2)` becomes
/// `[k/2]_qq` times itself at `z^(k/2 - 1)`.
pub fn qderive<C: Module>(s: &CoeffSeries<C>) -> CoeffSeries<C> {
    CoeffSeries::from_terms(
        s.lo() - 2,
        s.hi() - 2,
        s.iter().map(|(k, c)| (k - 2, c.scale(&qq_int_half(k)))),
    )
}

pub fn qderive_n<C: Module>(s: &CoeffSeries<C>, n: u32) -> CoeffSeries<C> {
    (0..n).fold(s.clone(), |acc, _| qderive(&acc))
}

/// Coefficients of `z0^l`, `l = 0..=order`, in `s(z + z0)`:
/// `qderive_n(s, l) / [l]!`.
pub fn qtaylor<C: Module>(s: &CoeffSeries<C>, order: u32) -> Vec<CoeffSeries<C>> {
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut d = s.clone();
    for l in 0..=order {
        let f = qq_factorial(l as i64).expect("nonnegative").inv().expect("nonzero");
        out.push(d.scale(&f));
        d = qderive(&d);
    }
    out
}

/// `qtaylor(z^m)` against the binomial expansion of `(z + z0)^m`.
pub fn check_binomial_taylor(m: i64, order: u32) -> Result<(), String> {
    let lo = 2 * (m - order as i64);
    let s = CoeffSeries::monomial(2 * m, FieldElem::one(), lo, 2 * m);
    let taylor = qtaylor(&s, order);
    let words = nc_binomial(m, order);
    for (l, t) in taylor.iter().enumerate() {
        let want = words
            .iter()
            .find(|w| w.b == l as i64)
            .map(|w| w.scalar.clone())
            .unwrap_or_else(FieldElem::zero);
        let e = 2 * (m - l as i64);
        let got = t.coeff(e);
        if got != want {
            return Err(format!("m={m} l={l}: taylor {got} vs binomial {want}"));
        }
        if t.len() > usize::from(!got.is_zero()) {
            return Err(format!("m={m} l={l}: stray terms in {t}"));
        }
    }
    Ok(())
}

/// `nc_binomial(m)` against brute-force products of `(z + z0)`: repeated
/// multiplication for `m >= 0`, and `(z + z0)^m (z + z0)^(-m) = 1` up to
/// `z0^order` for `m < 0`.
pub fn check_nc_binomial(m: i64, order: u32) -> Result<(), String> {
    let base = NCPoly::from_words([NCWord::var(Var::Z), NCWord::var(Var::Z0)]);
    let got = NCPoly::from_words(nc_binomial(m, order));
    if m >= 0 {
        let want = (0..m).fold(NCPoly::one(), |acc, _| acc.mul(&base));
        if got != want {
            return Err(format!("(z+z0)^{m}: expansion differs from repeated product"));
        }
    } else {
        let pos = (0..-m).fold(NCPoly::one(), |acc, _| acc.mul(&base));
        let prod = got.mul(&pos).truncate_z0(order as i64);
        if prod != NCPoly::one() {
            return Err(format!("(z+z0)^{m} (z+z0)^{}: not 1 up to z0^{order}", -m));
        }
    }
    Ok(())
}

/// `(ab)^[m] = sum_l [m choose l] a^[l](z) b^[m-l](z qq^l)` on the common window.
pub fn check_leibniz<R: Ring + std::fmt::Display>(
    a: &CoeffSeries<R>,
    b: &CoeffSeries<R>,
    m: u32,
) -> Result<(), String> {
    let lhs = qderive_n(&a.mul(b), m);
    let mut rhs: Option<CoeffSeries<R>> = None;
    for l in 0..=m {
        let term = qderive_n(a, l)
            .mul(&qderive_n(b, m - l).scale_var(4 * l as i64))
            .scale(&qq_binom(m as i64, l));
        rhs = Some(match rhs {
            None => term,
            Some(r) => r.add(&term),
        });
    }
    let rhs = rhs.expect("m >= 0");
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some(e) => Err(format!(
            "m={m}: coefficient of z^({e}/2) differs: {} vs {}",
            lhs.coeff(e),
            rhs.coeff(e)
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qvertex_scalar::qq_int;

    fn mono(m: i64) -> CoeffSeries<FieldElem> {
        CoeffSeries::monomial(2 * m, FieldElem::one(), 2 * m - 8, 2 * m)
    }

    #[test]
    fn derivative_of_monomial() {
        let d = qderive(&mono(3));
        assert_eq!(d.coeff(4), qq_int(3));
        assert!(qderive(&mono(0)).is_zero());
        assert_eq!(qderive(&mono(-1)).coeff(-4), -FieldElem::qq_pow(-1));
    }

    #[test]
    fn second_derivative() {
        let d = qderive_n(&mono(2), 2);
        assert_eq!(d.coeff(0), FieldElem::one() + FieldElem::qq());
        assert_eq!(qderive_n(&mono(2), 0), mono(2));
    }

    #[test]
    fn taylor_of_square() {
        let t = qtaylor(&mono(2), 2);
        assert_eq!(t[1].coeff(2), FieldElem::one() + FieldElem::qq());
        assert!(t[2].coeff(0).is_one());
    }

    #[test]
    fn binomial_checks() {
        for m in -3..=3 {
            check_binomial_taylor(m, 3).unwrap();
            check_nc_binomial(m, 3).unwrap();
        }
    }
}
