use crate::QvaError;
use qvertex_scalar::FieldElem;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// `x̂(z)`, products built from ordinary derivatives.
    Commutative,
    /// `x(z)`, products built from qq-derivatives.
    Noncommutative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tail {
    Unit,
    Y,
    YHat,
}

impl Tail {
    /// `i` in `W(Λ_i)`.
    pub fn level_index(self) -> i64 {
        match self {
            Tail::Unit => 0,
            Tail::Y | Tail::YHat => 1,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Commutative => "xhat",
            Flavor::Noncommutative => "x",
        })
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Unit => "unit",
            Tail::Y => "Y",
            Tail::YHat => "Yhat",
        })
    }
}

/// `x(z)_(l_m) ... x(z)_(l_1) T`; `indices` is written left to right, so the
/// last entry is `l_1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVAMonomial {
    pub flavor: Flavor,
    pub indices: Vec<i64>,
    pub tail: Tail,
}

pub type LinComb = BTreeMap<QVAMonomial, FieldElem>;

impl QVAMonomial {
    pub fn new(flavor: Flavor, indices: Vec<i64>, tail: Tail) -> Result<Self, QvaError> {
        let ok = matches!(
            (flavor, tail),
            (_, Tail::Unit) | (Flavor::Noncommutative, Tail::Y) | (Flavor::Commutative, Tail::YHat)
        );
        if !ok {
            return Err(QvaError::TailMismatch {
                flavor: flavor.to_string(),
                tail: tail.to_string(),
            });
        }
        Ok(QVAMonomial {
            flavor,
            indices,
            tail,
        })
    }

    pub fn x(indices: &[i64], tail: Tail) -> Self {
        Self::new(Flavor::Noncommutative, indices.to_vec(), tail).expect("x tail")
    }

    pub fn x_hat(indices: &[i64], tail: Tail) -> Self {
        Self::new(Flavor::Commutative, indices.to_vec(), tail).expect("x_hat tail")
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `l_p` for `1 <= p <= len`.
    pub fn l(&self, p: usize) -> i64 {
        self.indices[self.indices.len() - p]
    }

    pub fn level_index(&self) -> i64 {
        self.tail.level_index()
    }

    /// `-sum l_p`.
    pub fn weight(&self) -> i64 {
        -self.indices.iter().sum::<i64>()
    }

    pub fn with_indices(&self, indices: Vec<i64>) -> Self {
        QVAMonomial {
            flavor: self.flavor,
            indices,
            tail: self.tail,
        }
    }

    /// Difference-two conditions `l_1 <= -1-i`, `l_(r+1) <= l_r - 2`.
    pub fn is_difference_two(&self) -> bool {
        let m = self.len();
        if m == 0 {
            return true;
        }
        if self.l(1) > -1 - self.level_index() {
            return false;
        }
        (1..m).all(|r| self.l(r + 1) <= self.l(r) - 2)
    }

    /// Conditions `l_1 <= -1-i`, `l_r <= -3` for `r >= 2`.
    pub fn is_gap_basic(&self) -> bool {
        let m = self.len();
        if m == 0 {
            return true;
        }
        if self.l(1) > -1 - self.level_index() {
            return false;
        }
        (2..=m).all(|r| self.l(r) <= -3)
    }

    /// Membership in the spanning set appropriate to the flavor.
    pub fn is_basic(&self) -> bool {
        match self.flavor {
            Flavor::Commutative => self.is_difference_two(),
            Flavor::Noncommutative => self.is_gap_basic(),
        }
    }
}

impl fmt::Display for QVAMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|l| l.to_string()).collect();
        write!(f, "{}:[{}]:{}", self.flavor, idx.join(","), self.tail)
    }
}

impl FromStr for QVAMonomial {
    type Err = QvaError;

    /// `flavor:[l_m,...,l_1]:tail`, e.g. `x:[-3,-1]:unit` or `xhat:[-2]:Yhat`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| QvaError::Parse(s.to_string(), m.to_string());
        let s2: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parts = s2.splitn(3, ':');
        let flavor = match parts.next() {
            Some("x") => Flavor::Noncommutative,
            Some("xhat") | Some("x_hat") => Flavor::Commutative,
            _ => return Err(err("flavor must be x or xhat")),
        };
        let list = parts.next().ok_or_else(|| err("missing index list"))?;
        let inner = list
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| err("index list must be bracketed"))?;
        let indices = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.parse::<i64>().map_err(|_| err("bad integer")))
                .collect::<Result<Vec<_>, _>>()?
        };
        let tail = match parts.next().unwrap_or("unit") {
            "unit" | "1" => Tail::Unit,
            "Y" | "y" => Tail::Y,
            "Yhat" | "yhat" | "Y_hat" => Tail::YHat,
            _ => return Err(err("tail must be unit, Y or Yhat")),
        };
        QVAMonomial::new(flavor, indices, tail)
    }
}

/// Add `c * m` into `comb`, dropping cancelled entries.
pub(crate) fn accumulate(comb: &mut LinComb, m: QVAMonomial, c: &FieldElem) {
    if c.is_zero() {
        return;
    }
    let e = comb.entry(m.clone()).or_insert_with(FieldElem::zero);
    *e += c;
    if e.is_zero() {
        comb.remove(&m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let m: QVAMonomial = "x:[-1,-2]:unit".parse().unwrap();
        assert_eq!(m.indices, vec![-1, -2]);
        assert_eq!(m.l(1), -2);
        assert_eq!(m.to_string(), "x:[-1,-2]:unit");
        let e: QVAMonomial = "xhat:[]:Yhat".parse().unwrap();
        assert!(e.is_empty());
        assert!("x:[-1]:Yhat".parse::<QVAMonomial>().is_err());
        assert!("x:-1:unit".parse::<QVAMonomial>().is_err());
    }

    #[test]
    fn membership() {
        assert!(QVAMonomial::x(&[-3, -1], Tail::Unit).is_basic());
        assert!(!QVAMonomial::x(&[-2, -1], Tail::Unit).is_basic());
        assert!(!QVAMonomial::x(&[-3, -1], Tail::Y).is_basic());
        assert!(QVAMonomial::x_hat(&[-4, -2], Tail::YHat).is_basic());
        assert!(!QVAMonomial::x_hat(&[-3, -2], Tail::Unit).is_basic());
    }
}
