use crate::family::{d_values, enum_family, family, BasisFamily, Element, FamilyKind};
use crate::BasisError;
use qvertex_qva::{Flavor, QVAMonomial};
use std::collections::BTreeSet;
use std::fmt;

/// `D_k = sum_(p<=k) l_p + k - 1`.
pub fn d_k(m: &QVAMonomial, k: usize) -> Result<i64, BasisError> {
    if k == 0 || k > m.len() {
        return Err(BasisError::IndexOutOfRange { k, len: m.len() });
    }
    Ok(d_values(&m.indices)[k - 1])
}

/// `-sum_k D_k`.
pub fn deg_qq(m: &QVAMonomial) -> i64 {
    -d_values(&m.indices).iter().sum::<i64>()
}

/// A column of boxes labelled `x(z qq^r)` for `bottom <= r < bottom + labelled`,
/// topped by empty boxes up to `height`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Column {
    pub bottom: i64,
    pub labelled: i64,
    pub height: i64,
}

impl Column {
    pub fn empty_boxes(&self) -> i64 {
        self.height - self.labelled
    }

    pub fn top(&self) -> i64 {
        self.bottom + self.height
    }
}

/// The column diagram of `x(z)_(l_m)...x(z)_(l_1) T`, leftmost column for
/// `l_m`, completed with empty boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub columns: Vec<Column>,
    pub origin: QVAMonomial,
}

impl Diagram {
    pub fn of(m: &QVAMonomial) -> Self {
        let d = d_values(&m.indices);
        let top = d.last().map_or(0, |dm| -dm);
        let columns = d
            .iter()
            .zip(m.indices.iter().rev())
            .rev()
            .map(|(&dk, &l)| Column {
                bottom: top + dk,
                labelled: -l,
                height: -dk,
            })
            .collect();
        Diagram {
            columns,
            origin: m.clone(),
        }
    }

    /// `D_1, ..., D_m` read off the column heights.
    pub fn d_values(&self) -> Vec<i64> {
        self.columns.iter().rev().map(|c| -c.height).collect()
    }

    /// Columns share a top row and heights weakly decrease to the right.
    pub fn is_young(&self) -> bool {
        self.columns.windows(2).all(|w| w[0].height >= w[1].height)
            && self.columns.windows(2).all(|w| w[0].top() == w[1].top())
    }

    pub fn added_boxes(&self) -> i64 {
        self.columns.iter().map(Column::empty_boxes).sum()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.columns.iter().map(Column::top).max().unwrap_or(0);
        for r in (0..top).rev() {
            let mut line = String::new();
            for c in &self.columns {
                let cell = if r < c.bottom || r >= c.top() {
                    "     ".to_string()
                } else if r < c.bottom + c.labelled {
                    format!("[{r:>3}]")
                } else {
                    "[   ]".to_string()
                };
                line.push_str(&cell);
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        write!(f, "{}", self.origin)
    }
}

/// The principal subspace vector `x̂(D_m)...x̂(D_1) v_Λi` whose Young diagram
/// is the completed diagram of `m`.
pub fn complete_diagram(m: &QVAMonomial) -> Result<Element, BasisError> {
    if m.flavor != Flavor::Noncommutative {
        return Err(BasisError::NotQuantum(m.to_string()));
    }
    let mut indices = d_values(&m.indices);
    indices.reverse();
    Ok(Element::Modes {
        indices,
        level: m.level_index(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub level: i64,
    pub max_deg: u32,
    pub source_counts: Vec<usize>,
    pub target_counts: Vec<usize>,
    pub failure: Option<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for BijectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bijection i={} max_deg={} status={} elements={}",
            self.level,
            self.max_deg,
            if self.passed() { "pass" } else { "FAIL" },
            self.source_counts.iter().sum::<usize>()
        )?;
        if let Some(e) = &self.failure {
            write!(f, " reason=\"{e}\"")?;
        }
        Ok(())
    }
}

/// Completion on `W_(i,qq)` up to `max_deg` is injective, preserves degree,
/// and hits every element of `Ŵ(Λ_i)` of the same degree.
pub fn bijection_check(i: i64, max_deg: u32) -> Result<BijectionReport, BasisError> {
    let src: &dyn BasisFamily = family(if i == 0 { "W0qq" } else { "W1qq" })?;
    let dst: &dyn BasisFamily = family(if i == 0 { "hat-L0" } else { "hat-L1" })?;
    debug_assert_eq!(src.kind(), FamilyKind::Quantum);
    let source = enum_family(src, max_deg);
    let target = enum_family(dst, max_deg);
    let mut report = BijectionReport {
        level: i,
        max_deg,
        source_counts: source.iter().map(Vec::len).collect(),
        target_counts: target.iter().map(Vec::len).collect(),
        failure: None,
    };
    for (deg, (s, t)) in source.iter().zip(&target).enumerate() {
        let expected: BTreeSet<&Element> = t.iter().collect();
        let mut seen = BTreeSet::new();
        for e in s {
            let m = e.monomial().expect("operator family");
            let img = complete_diagram(m)?;
            let why = if dst.degree(img.indices()) != deg as i64 {
                Some("degree changes")
            } else if !dst.admits(img.indices()) {
                Some("image violates the difference conditions")
            } else if !Diagram::of(m).is_young() {
                Some("completed diagram is not a Young diagram")
            } else if !seen.insert(img.clone()) {
                Some("two elements share an image")
            } else {
                None
            };
            if let Some(w) = why {
                report.failure = Some(format!("{m} -> {img}: {w}"));
                return Ok(report);
            }
        }
        if seen.iter().collect::<BTreeSet<_>>() != expected {
            report.failure = Some(format!("degree {deg}: image is not all of {}", dst.id()));
            return Ok(report);
        }
    }
    Ok(report)
}
