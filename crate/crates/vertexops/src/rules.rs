use crate::VertexError;
use qvertex_fock::heisenberg_scalar;
use qvertex_scalar::{sym_q_int, FieldElem};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Create,
    Annihilate,
}

/// Coefficient tables `r -> c(r)` of the exponential currents; each rule
/// fixes its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRule {
    /// `q^(-r/2)/[r]`
    XCreate,
    /// `-q^(-r/2)/[r]`
    XAnnihilate,
    /// `q^(r/2)/[2r]`
    KoyamaCreate,
    /// `-q^(r/2)/[2r]`
    KoyamaAnnihilate,
    /// `(q - q^-1) (-q^(r/2)/(1 + q^(2r)))`
    KHat,
    /// `q^(-r/2)/(2[r])`
    HatCreate,
    /// `-q^(r/2)/[2r]`
    HatAnnihilate,
}

impl CoeffRule {
    pub fn dir(self) -> Dir {
        match self {
            CoeffRule::XCreate | CoeffRule::KoyamaCreate | CoeffRule::HatCreate => Dir::Create,
            _ => Dir::Annihilate,
        }
    }

    fn compute(self, r: u32) -> FieldElem {
        let r = r as i64;
        let v = FieldElem::v_pow;
        match self {
            CoeffRule::XCreate => &v(-r) / &sym_q_int(r),
            CoeffRule::XAnnihilate => -(&v(-r) / &sym_q_int(r)),
            CoeffRule::KoyamaCreate => &v(r) / &sym_q_int(2 * r),
            CoeffRule::KoyamaAnnihilate | CoeffRule::HatAnnihilate => -(&v(r) / &sym_q_int(2 * r)),
            CoeffRule::KHat => {
                let qm = FieldElem::q() - FieldElem::q_pow(-1);
                let den = FieldElem::one() + FieldElem::q_pow(2 * r);
                -(&(&qm * &v(r)) / &den)
            }
            CoeffRule::HatCreate => &v(-r) / &(&sym_q_int(r) * &FieldElem::from_int(2)),
        }
    }

    /// `c(r)` for `r >= 1`, memoized.
    pub fn value(self, r: u32) -> FieldElem {
        static CACHE: OnceLock<Mutex<HashMap<(CoeffRule, u32), FieldElem>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(x) = cache.lock().expect("rule cache").get(&(self, r)) {
            return x.clone();
        }
        let x = self.compute(r);
        cache
            .lock()
            .expect("rule cache")
            .insert((self, r), x.clone());
        x
    }
}

/// `exp(sign * sum_r c(r) a(∓r) (z u)^(±r))`; `sign = -1` is the inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpFactor {
    pub rule: CoeffRule,
    pub sign: i8,
}

impl ExpFactor {
    pub fn new(rule: CoeffRule) -> Self {
        ExpFactor { rule, sign: 1 }
    }

    pub fn inverse(self) -> Self {
        ExpFactor {
            rule: self.rule,
            sign: -self.sign,
        }
    }

    pub fn dir(self) -> Dir {
        self.rule.dir()
    }

    pub fn coeff(self, r: u32) -> FieldElem {
        let c = self.rule.value(r);
        if self.sign < 0 {
            -c
        } else {
            c
        }
    }
}

/// Reordering factor for `A(z1) C(z2) = f(z2/z1) C(z2) A(z1)` written as
/// `f(t) = prod_i (1 - v^k_i t)^e_i`; returned as `(k_i, e_i)`.
///
/// The exponent of the contraction is `sum_r a(r) c(r) h_r t^r`, so
/// `r a(r) c(r) h_r = -sum_i e_i v^(k_i r)`. The roots are read from `r = 1`
/// and confirmed for `r <= 12`.
pub fn contraction(ann: ExpFactor, cre: ExpFactor) -> Result<Vec<(i64, FieldElem)>, VertexError> {
    static CACHE: OnceLock<Mutex<HashMap<(ExpFactor, ExpFactor), Vec<(i64, FieldElem)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(x) = cache.lock().expect("contraction cache").get(&(ann, cre)) {
        return Ok(x.clone());
    }
    assert!(ann.dir() == Dir::Annihilate && cre.dir() == Dir::Create);
    let kappa = |r: u32| -> FieldElem {
        &(&(&ann.coeff(r) * &cre.coeff(r)) * &heisenberg_scalar(r)) * &FieldElem::from_int(r as i64)
    };
    let k1 = kappa(1);
    let roots: Vec<(i64, FieldElem)> = k1
        .laurent_terms()
        .ok_or_else(|| VertexError::NotQuasiCommutative(format!("{ann:?}/{cre:?}")))?
        .into_iter()
        .map(|(k, c)| (k, -c))
        .collect();
    for r in 2..=12u32 {
        let mut want = FieldElem::zero();
        for (k, e) in &roots {
            want -= &(e * &FieldElem::v_pow(k * r as i64));
        }
        if want != kappa(r) {
            return Err(VertexError::NotQuasiCommutative(format!("{ann:?}/{cre:?}")));
        }
    }
    cache
        .lock()
        .expect("contraction cache")
        .insert((ann, cre), roots.clone());
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(a: CoeffRule, c: CoeffRule) -> Vec<(i64, FieldElem)> {
        let mut r = contraction(ExpFactor::new(a), ExpFactor::new(c)).unwrap();
        r.sort_by_key(|x| x.0);
        r
    }

    #[test]
    fn x_with_x() {
        let r = roots(CoeffRule::XAnnihilate, CoeffRule::XCreate);
        assert_eq!(r, vec![(-4, FieldElem::one()), (0, FieldElem::one())]);
    }

    #[test]
    fn x_with_koyama() {
        let r = roots(CoeffRule::XAnnihilate, CoeffRule::KoyamaCreate);
        assert_eq!(r, vec![(0, FieldElem::one())]);
        let r = roots(CoeffRule::KoyamaAnnihilate, CoeffRule::XCreate);
        assert_eq!(r, vec![(0, FieldElem::one())]);
    }

    #[test]
    fn hat_half_power() {
        let r = roots(CoeffRule::HatAnnihilate, CoeffRule::HatCreate);
        assert_eq!(r, vec![(0, FieldElem::ratio(1, 2))]);
    }

    #[test]
    fn k_hat_completes_square() {
        let a = contraction(
            ExpFactor::new(CoeffRule::XAnnihilate),
            ExpFactor::new(CoeffRule::XCreate),
        )
        .unwrap();
        let b = contraction(
            ExpFactor::new(CoeffRule::KHat),
            ExpFactor::new(CoeffRule::XCreate),
        )
        .unwrap();
        let mut total: HashMap<i64, FieldElem> = HashMap::new();
        for (k, e) in a.into_iter().chain(b) {
            *total.entry(k).or_insert_with(FieldElem::zero) += e;
        }
        total.retain(|_, e| !e.is_zero());
        assert_eq!(total.len(), 1);
        assert_eq!(total[&0], FieldElem::from_int(2));
    }
}
