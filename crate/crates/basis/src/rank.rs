use crate::family::{enum_family, BasisFamily, Element};
use crate::BasisError;
use qvertex_fock::{FockKey, FockVector};
use qvertex_scalar::{FieldElem, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

type Col = (usize, i64, FockKey);
type Row = BTreeMap<usize, Poly>;

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    a.mul(&b.div_exact(&g))
}

/// A row of field elements scaled into `Z[v]`.
fn clear_denominators(row: &[(usize, FieldElem)]) -> Row {
    let den = row
        .iter()
        .fold(Poly::one(), |acc, (_, x)| lcm(&acc, &x.denominator()));
    row.iter()
        .map(|(c, x)| (*c, x.numerator().mul(&den.div_exact(&x.denominator()))))
        .collect()
}

fn make_primitive(row: &mut Row) {
    let mut g: Option<Poly> = None;
    let mut content = BigInt::zero();
    for p in row.values() {
        content = content.gcd(&p.content());
        if g.as_ref().is_some_and(Poly::is_constant) {
            continue;
        }
        g = Some(match g {
            None => p.primitive(),
            Some(g) => g.gcd(p),
        });
    }
    let Some(g) = g else { return };
    for p in row.values_mut() {
        if !g.is_constant() {
            *p = p.div_exact(&g);
        }
        if !content.is_one() {
            *p = p.div_int_exact(&content);
        }
    }
}

/// Rank over `Q(v)` of the rows, by fraction-free elimination in `Z[v]` with
/// primitive parts taken after every step.
pub fn poly_rank(rows: Vec<Row>) -> usize {
    pivot_flags(rows).iter().filter(|&&b| b).count()
}

/// Whether each row is independent of the rows before it.
fn pivot_flags(rows: Vec<Row>) -> Vec<bool> {
    let mut flags = Vec::with_capacity(rows.len());
    let mut pivots: Vec<(usize, Row)> = Vec::new();
    for mut row in rows {
        for (col, prow) in &pivots {
            let Some(a) = row.get(col).cloned() else {
                continue;
            };
            let p = &prow[col];
            let mut next = Row::new();
            for (c, x) in &row {
                let y = x.mul(p);
                if !y.is_zero() {
                    next.insert(*c, y);
                }
            }
            for (c, x) in prow {
                let y = next.get(c).cloned().unwrap_or_else(Poly::zero).sub(&x.mul(&a));
                if y.is_zero() {
                    next.remove(c);
                } else {
                    next.insert(*c, y);
                }
            }
            debug_assert!(!next.contains_key(col));
            row = next;
            make_primitive(&mut row);
        }
        let Some(col) = row
            .iter()
            .min_by_key(|(c, p)| (p.degree().unwrap_or(0), p.coeffs().len(), **c))
            .map(|(c, _)| *c)
        else {
            flags.push(false);
            continue;
        };
        flags.push(true);
        pivots.push((col, row));
    }
    flags
}

/// Exact rank of the coefficient matrix with rows indexed by elements and
/// columns by `(probe, exponent, Fock basis vector)`.
pub fn independence_rank(
    elements: &[Element],
    probes: &[FockVector],
    window: (i64, i64),
) -> Result<usize, BasisError> {
    Ok(poly_rank(matrix(elements, probes, window)?))
}

fn matrix(
    elements: &[Element],
    probes: &[FockVector],
    window: (i64, i64),
) -> Result<Vec<Row>, BasisError> {
    let mut cols: BTreeMap<Col, usize> = BTreeMap::new();
    let mut rows = Vec::with_capacity(elements.len());
    for e in elements {
        let mut row: Vec<(usize, FieldElem)> = Vec::new();
        for (p, v) in probes.iter().enumerate() {
            for (k, w) in e.evaluate(v, window)?.iter() {
                for (key, c) in w.iter() {
                    let n = cols.len();
                    let idx = *cols.entry((p, k, key.clone())).or_insert(n);
                    row.push((idx, c.clone()));
                }
            }
        }
        rows.push(clear_denominators(&row));
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub family: &'static str,
    pub max_deg: u32,
    pub window: (i64, i64),
    pub probes: usize,
    pub cardinality: usize,
    pub rank: usize,
    /// `(degree, members, rank)` per degree.
    pub per_degree: Vec<(u32, usize, usize)>,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.rank == self.cardinality
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank family={} max_deg={} window=[{},{}] probes={} cardinality={} rank={} status={}",
            self.family,
            self.max_deg,
            self.window.0,
            self.window.1,
            self.probes,
            self.cardinality,
            self.rank,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Rank of all members of degree `<= max_deg`. The vacuum alone is tried
/// first; on a deficiency the probes are widened before reporting.
pub fn family_rank(
    f: &dyn BasisFamily,
    max_deg: u32,
    window: (i64, i64),
) -> Result<RankReport, BasisError> {
    let groups = enum_family(f, max_deg);
    let all: Vec<Element> = groups.iter().flatten().cloned().collect();
    let mut report = None;
    for extended in [false, true] {
        let probes = f.probes(extended);
        let flags = pivot_flags(matrix(&all, &probes, window)?);
        let rank = flags.iter().filter(|&&b| b).count();
        let mut per_degree = Vec::new();
        let mut start = 0;
        for (d, g) in groups.iter().enumerate() {
            let r = flags[start..start + g.len()].iter().filter(|&&b| b).count();
            per_degree.push((d as u32, g.len(), r));
            start += g.len();
        }
        let r = RankReport {
            family: f.id(),
            max_deg,
            window,
            probes: probes.len(),
            cardinality: all.len(),
            rank,
            per_degree,
        };
        let done = r.passed();
        report = Some(r);
        if done {
            break;
        }
    }
    Ok(report.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, &[i64])]) -> Row {
        entries
            .iter()
            .map(|(c, p)| (*c, Poly::from_i64s(p)))
            .collect()
    }

    #[test]
    fn small_ranks() {
        // [[1, v], [v, v^2]] has rank 1 over Q(v)
        let a = row(&[(0, &[1]), (1, &[0, 1])]);
        let b = row(&[(0, &[0, 1]), (1, &[0, 0, 1])]);
        assert_eq!(poly_rank(vec![a.clone(), b]), 1);
        let c = row(&[(0, &[0, 1]), (1, &[1])]);
        assert_eq!(poly_rank(vec![a.clone(), c]), 2);
        assert_eq!(poly_rank(vec![a.clone(), a]), 1);
        assert_eq!(poly_rank(vec![Row::new()]), 0);
    }
}
