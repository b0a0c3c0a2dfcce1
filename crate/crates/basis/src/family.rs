use crate::BasisError;
use qvertex_fock::{vacuum, FockKey, FockVector};
use qvertex_qva::{eval_monomial, Flavor, QVAMonomial, QvaError, Tail};
use qvertex_series::CoeffSeries;
use qvertex_vertexops::{make_operator, mode_apply};
use std::fmt;

/// How the members of a family are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Vectors `x̂(l_m)...x̂(l_1) v_Λi` in the principal subspace.
    Principal,
    /// Operators `x̂(z)_(l_m)...x̂(z)_(l_1) T`.
    Classical,
    /// Operators `x(z)_(l_m)...x(z)_(l_1) T`.
    Quantum,
}

/// A member of a basis family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Modes { indices: Vec<i64>, level: i64 },
    Operator(QVAMonomial),
}

impl Element {
    /// Indices `[l_m, ..., l_1]`.
    pub fn indices(&self) -> &[i64] {
        match self {
            Element::Modes { indices, .. } => indices,
            Element::Operator(m) => &m.indices,
        }
    }

    pub fn level(&self) -> i64 {
        match self {
            Element::Modes { level, .. } => *level,
            Element::Operator(m) => m.level_index(),
        }
    }

    pub fn monomial(&self) -> Option<&QVAMonomial> {
        match self {
            Element::Operator(m) => Some(m),
            Element::Modes { .. } => None,
        }
    }

    /// Coefficients on one probe; a mode vector sits at exponent 0 and
    /// ignores the probe and window.
    pub fn evaluate(
        &self,
        probe: &FockVector,
        window: (i64, i64),
    ) -> Result<CoeffSeries<FockVector>, QvaError> {
        match self {
            Element::Operator(m) => eval_monomial(m, probe, window.0, window.1),
            Element::Modes { indices, level } => {
                let xh = make_operator("x_hat")?;
                let mut w = vacuum(*level);
                for &l in indices.iter().rev() {
                    w = mode_apply(&xh, l, &w)?;
                    if w.is_zero() {
                        break;
                    }
                }
                Ok(CoeffSeries::monomial(0, w, 0, 0))
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Operator(m) => write!(f, "{m}"),
            Element::Modes { indices, level } => {
                for l in indices {
                    write!(f, "xhat({l})")?;
                }
                write!(f, "v_L{level}")
            }
        }
    }
}

/// A spanning set of monomials or modes, graded by degree.
pub trait BasisFamily: Send + Sync {
    fn id(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn kind(&self) -> FamilyKind;
    /// `i` in `W(Λ_i)`.
    fn level(&self) -> i64;

    /// Membership of `[l_m, ..., l_1]`.
    fn admits(&self, indices: &[i64]) -> bool {
        let m = indices.len();
        if m == 0 {
            return true;
        }
        let l = |p: usize| indices[m - p];
        if l(1) > -1 - self.level() {
            return false;
        }
        match self.kind() {
            FamilyKind::Quantum => (2..=m).all(|r| l(r) <= -3),
            _ => (1..m).all(|r| l(r + 1) <= l(r) - 2),
        }
    }

    /// `deg_qq` for quantum families, `-sum l_p` otherwise.
    fn degree(&self, indices: &[i64]) -> i64 {
        match self.kind() {
            FamilyKind::Quantum => -d_values(indices).iter().sum::<i64>(),
            _ => -indices.iter().sum::<i64>(),
        }
    }

    fn element(&self, indices: Vec<i64>) -> Element {
        let level = self.level();
        let tail = |t: Tail| if level == 0 { Tail::Unit } else { t };
        match self.kind() {
            FamilyKind::Principal => Element::Modes { indices, level },
            FamilyKind::Classical => Element::Operator(
                QVAMonomial::new(Flavor::Commutative, indices, tail(Tail::YHat))
                    .expect("valid tail"),
            ),
            FamilyKind::Quantum => Element::Operator(
                QVAMonomial::new(Flavor::Noncommutative, indices, tail(Tail::Y))
                    .expect("valid tail"),
            ),
        }
    }

    /// Probes used for rank certificates; the first is the one the
    /// independence arguments evaluate on.
    fn probes(&self, extended: bool) -> Vec<FockVector> {
        let mut out = vec![vacuum(0)];
        if extended {
            for parts in [vec![1], vec![2], vec![1, 1]] {
                out.push(FockVector::basis(FockKey::new(parts, 0)));
            }
        }
        out
    }
}

/// `D_1, ..., D_m` of `[l_m, ..., l_1]`.
pub(crate) fn d_values(indices: &[i64]) -> Vec<i64> {
    let mut acc = 0;
    indices
        .iter()
        .rev()
        .enumerate()
        .map(|(k, l)| {
            acc += l;
            acc + k as i64
        })
        .collect()
}

struct Family {
    id: &'static str,
    description: &'static str,
    kind: FamilyKind,
    level: i64,
}

impl BasisFamily for Family {
    fn id(&self) -> &'static str {
        self.id
    }
    fn description(&self) -> &'static str {
        self.description
    }
    fn kind(&self) -> FamilyKind {
        self.kind
    }
    fn level(&self) -> i64 {
        self.level
    }
}

static FAMILIES: [Family; 6] = [
    Family {
        id: "hat-L0",
        description: "xhat(l_m)...xhat(l_1) v_L0, l_1 <= -1, l_(r+1) <= l_r - 2",
        kind: FamilyKind::Principal,
        level: 0,
    },
    Family {
        id: "hat-L1",
        description: "xhat(l_m)...xhat(l_1) v_L1, l_1 <= -2, l_(r+1) <= l_r - 2",
        kind: FamilyKind::Principal,
        level: 1,
    },
    Family {
        id: "hat-W0",
        description: "xhat(z)_(l_m)...xhat(z)_(l_1) 1, l_1 <= -1, l_(r+1) <= l_r - 2",
        kind: FamilyKind::Classical,
        level: 0,
    },
    Family {
        id: "hat-W1",
        description: "xhat(z)_(l_m)...xhat(z)_(l_1) Yhat(z), l_1 <= -2, l_(r+1) <= l_r - 2",
        kind: FamilyKind::Classical,
        level: 1,
    },
    Family {
        id: "W0qq",
        description: "x(z)_(l_m)...x(z)_(l_1) 1, l_1 <= -1, l_r <= -3 for r >= 2",
        kind: FamilyKind::Quantum,
        level: 0,
    },
    Family {
        id: "W1qq",
        description: "x(z)_(l_m)...x(z)_(l_1) Y(z), l_1 <= -2, l_r <= -3 for r >= 2",
        kind: FamilyKind::Quantum,
        level: 1,
    },
];

pub fn registry() -> impl Iterator<Item = &'static dyn BasisFamily> {
    FAMILIES.iter().map(|f| f as &dyn BasisFamily)
}

pub fn family_ids() -> Vec<&'static str> {
    registry().map(|f| f.id()).collect()
}

pub fn family(id: &str) -> Result<&'static dyn BasisFamily, BasisError> {
    registry()
        .find(|f| f.id().eq_ignore_ascii_case(id))
        .ok_or_else(|| BasisError::UnknownFamily(id.to_string()))
}

/// All members of degree `<= max_deg`, grouped by degree.
pub fn enum_family(f: &dyn BasisFamily, max_deg: u32) -> Vec<Vec<Element>> {
    let max = max_deg as i64;
    let mut out: Vec<Vec<Element>> = vec![Vec::new(); max_deg as usize + 1];
    let mut stack = vec![Vec::<i64>::new()];
    while let Some(idx) = stack.pop() {
        out[f.degree(&idx) as usize].push(f.element(idx.clone()));
        for l in (-max - 2..=-1).rev() {
            let mut next = Vec::with_capacity(idx.len() + 1);
            next.push(l);
            next.extend_from_slice(&idx);
            if !f.admits(&next) {
                continue;
            }
            if f.degree(&next) > max {
                break;
            }
            stack.push(next);
        }
    }
    for group in &mut out {
        group.sort();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_values_of_four_index_example() {
        assert_eq!(d_values(&[-4, -3, -5, -2]), vec![-2, -6, -8, -11]);
        assert!(d_values(&[]).is_empty());
    }

    #[test]
    fn counts_low_degree() {
        let counts: Vec<usize> = enum_family(family("hat-L0").unwrap(), 4)
            .iter()
            .map(Vec::len)
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 1, 2]);
        assert!(enum_family(family("hat-L1").unwrap(), 1)[1].is_empty());
    }

    #[test]
    fn lookup() {
        assert_eq!(family_ids().len(), 6);
        assert!(family("w0QQ").is_ok());
        assert!(family("nope").is_err());
    }
}
