use qvertex_scalar::{qq_binom, FieldElem};
use std::collections::BTreeMap;
use std::fmt;

/// One of the three noncommuting variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Z,
    Z0,
    Z2,
}

/// `scalar * z^a z0^b z2^c`, always in the normal order `z`, `z0`, `z2`.
///
/// The commutation rules are `z0 z = qq z z0`, `z2 z = qq z z2` and
/// `z2 z0 = qq z0 z2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCWord {
    pub scalar: FieldElem,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl NCWord {
    pub fn new(scalar: FieldElem, a: i64, b: i64, c: i64) -> Self {
        NCWord { scalar, a, b, c }
    }

    pub fn one() -> Self {
        NCWord::new(FieldElem::one(), 0, 0, 0)
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::Z => NCWord::new(FieldElem::one(), 1, 0, 0),
            Var::Z0 => NCWord::new(FieldElem::one(), 0, 1, 0),
            Var::Z2 => NCWord::new(FieldElem::one(), 0, 0, 1),
        }
    }

    pub fn exponents(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// Product `self * o`, reordered.
    pub fn mul(&self, o: &NCWord) -> NCWord {
        // z^a2 moves left past z2^c1 and z0^b1, then z0^b2 past z2^c1
        let swaps = o.a * (self.b + self.c) + o.b * self.c;
        NCWord::new(
            &(&self.scalar * &o.scalar) * &FieldElem::qq_pow(swaps),
            self.a + o.a,
            self.b + o.b,
            self.c + o.c,
        )
    }
}

impl fmt::Display for NCWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.scalar)?;
        for (name, e) in [("z", self.a), ("z0", self.b), ("z2", self.c)] {
            if e != 0 {
                write!(f, "*{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Normal-order a product of variables written left to right.
pub fn nc_normal_order(word: &[Var]) -> NCWord {
    word.iter()
        .fold(NCWord::one(), |acc, v| acc.mul(&NCWord::var(*v)))
}

/// `(z + z0)^m = sum_l [m choose l] z^(m-l) z0^l`.
///
/// For `m >= 0` the sum is complete; for `m < 0` it is cut after `z0^order`.
pub fn nc_binomial(m: i64, order: u32) -> Vec<NCWord> {
    let top = if m >= 0 { m as u32 } else { order };
    (0..=top)
        .map(|l| NCWord::new(qq_binom(m, l), m - l as i64, l as i64, 0))
        .filter(|w| !w.scalar.is_zero())
        .collect()
}

/// A finite linear combination of normal-ordered words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<(i64, i64, i64), FieldElem>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::from_words([NCWord::one()])
    }

    pub fn from_words(ws: impl IntoIterator<Item = NCWord>) -> Self {
        let mut p = NCPoly::zero();
        for w in ws {
            p.add_word(&w);
        }
        p
    }

    pub fn add_word(&mut self, w: &NCWord) {
        if w.scalar.is_zero() {
            return;
        }
        let key = w.exponents();
        let e = self.terms.entry(key).or_insert_with(FieldElem::zero);
        *e += &w.scalar;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for w in o.words() {
            out.add_word(&w);
        }
        out
    }

    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for x in self.words() {
            for y in o.words() {
                out.add_word(&x.mul(&y));
            }
        }
        out
    }

    pub fn words(&self) -> impl Iterator<Item = NCWord> + '_ {
        self.terms
            .iter()
            .map(|(&(a, b, c), s)| NCWord::new(s.clone(), a, b, c))
    }

    pub fn coeff(&self, a: i64, b: i64, c: i64) -> FieldElem {
        self.terms.get(&(a, b, c)).cloned().unwrap_or_else(FieldElem::zero)
    }

    /// Drop words whose `z0` power exceeds `order`.
    pub fn truncate_z0(&self, order: i64) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|((_, b, _), _)| *b <= order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
