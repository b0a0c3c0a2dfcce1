use crate::monomial::{Flavor, QVAMonomial, Tail};
use crate::QvaError;
use qvertex_fock::FockVector;
use qvertex_series::CoeffSeries;
use qvertex_vertexops::{apply_truncated, make_operator, OperatorExpr};
use std::collections::HashMap;

/// `a(z)_r b(z) = [n]!^(-1) a^[n](z) b(z qq^n)` with `n = -r-1`; zero for `r >= 0`.
pub fn rth_product(a: &OperatorExpr, b: &OperatorExpr, r: i64) -> OperatorExpr {
    if r >= 0 {
        return OperatorExpr::zero();
    }
    let n = (-r - 1) as u32;
    a.qtaylor_coeff(n).mul(&b.scale_subst(4 * n as i64))
}

/// `a(z)_r b(z) = (n!)^(-1) a^(n)(z) b(z)` with `n = -r-1`; zero for `r >= 0`.
pub fn rth_product_classical(a: &OperatorExpr, b: &OperatorExpr, r: i64) -> OperatorExpr {
    if r >= 0 {
        return OperatorExpr::zero();
    }
    a.classical_derive_n((-r - 1) as u32).mul(b)
}

/// Coefficients of `z0^0 .. z0^order` in `Y(a, z0)`.
pub fn ymap(a: &OperatorExpr, order: u32) -> Vec<OperatorExpr> {
    (0..=order).map(|r| a.qtaylor_coeff(r)).collect()
}

pub fn ymap_classical(a: &OperatorExpr, order: u32) -> Vec<OperatorExpr> {
    (0..=order).map(|r| a.classical_derive_n(r)).collect()
}

fn generator(flavor: Flavor) -> OperatorExpr {
    let name = match flavor {
        Flavor::Commutative => "x_hat",
        Flavor::Noncommutative => "x",
    };
    make_operator(name).expect("catalog operator")
}

fn tail_expr(tail: Tail) -> OperatorExpr {
    match tail {
        Tail::Unit => OperatorExpr::unit(),
        Tail::Y => make_operator("Y").expect("catalog operator"),
        Tail::YHat => make_operator("Y_hat").expect("catalog operator"),
    }
}

/// The operator of a monomial, nested from `l_1` outward.
pub fn build_expr(m: &QVAMonomial) -> OperatorExpr {
    let x = generator(m.flavor);
    let mut e = tail_expr(m.tail);
    for &l in m.indices.iter().rev() {
        e = match m.flavor {
            Flavor::Commutative => rth_product_classical(&x, &e, l),
            Flavor::Noncommutative => rth_product(&x, &e, l),
        };
        if e.is_zero() {
            break;
        }
    }
    e
}

pub fn eval_monomial(
    m: &QVAMonomial,
    v: &FockVector,
    lo: i64,
    hi: i64,
) -> Result<CoeffSeries<FockVector>, QvaError> {
    Ok(apply_truncated(&build_expr(m), v, lo, hi)?)
}

/// Memoized monomial evaluation on a fixed probe set and window.
pub struct Evaluator {
    probes: Vec<FockVector>,
    lo: i64,
    hi: i64,
    cache: HashMap<QVAMonomial, Vec<CoeffSeries<FockVector>>>,
}

impl Evaluator {
    pub fn new(probes: Vec<FockVector>, lo: i64, hi: i64) -> Self {
        Evaluator {
            probes,
            lo,
            hi,
            cache: HashMap::new(),
        }
    }

    pub fn probes(&self) -> &[FockVector] {
        &self.probes
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// One series per probe.
    pub fn eval(&mut self, m: &QVAMonomial) -> Result<&[CoeffSeries<FockVector>], QvaError> {
        if !self.cache.contains_key(m) {
            let mut out = Vec::with_capacity(self.probes.len());
            for v in &self.probes {
                out.push(eval_monomial(m, v, self.lo, self.hi)?);
            }
            self.cache.insert(m.clone(), out);
        }
        Ok(&self.cache[m])
    }
}
