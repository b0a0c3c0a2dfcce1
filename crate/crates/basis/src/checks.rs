use crate::family::{d_values, enum_family, family, Element};
use crate::BasisError;
use qvertex_fock::vacuum;
use qvertex_qva::{eval_monomial, QVAMonomial, Tail};
use std::fmt;

/// `x̂(z)_(-2m+1-ε) x̂(z)_(-2m+1) ... x̂(z)_(-3) x̂(z)_(-1) 1`.
pub fn zeroth_lemma_monomial(m: i64, eps: i64) -> QVAMonomial {
    let mut idx = vec![-2 * m + 1 - eps];
    idx.extend(first_lemma_monomial(m).indices);
    QVAMonomial::x_hat(&idx, Tail::Unit)
}

/// `x̂(z)_(-2m+1) ... x̂(z)_(-3) x̂(z)_(-1) 1`.
pub fn first_lemma_monomial(m: i64) -> QVAMonomial {
    let idx: Vec<i64> = (1..=m).rev().map(|k| -2 * k + 1).collect();
    QVAMonomial::x_hat(&idx, Tail::Unit)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub max_m: i64,
    pub checked: usize,
    pub failure: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lemmas max_m={} checked={} status={}",
            self.max_m,
            self.checked,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        if let Some(e) = &self.failure {
            write!(f, " reason=\"{e}\"")?;
        }
        Ok(())
    }
}

fn lemma_window(m: &QVAMonomial) -> (i64, i64) {
    (-2 * (m.weight() + 2), 8)
}

/// For `1 <= m <= max_m`: the zeroth-lemma monomials vanish on the vacuum and
/// the first-lemma monomial does not.
pub fn zeroth_lemma_check(max_m: i64) -> Result<LemmaReport, BasisError> {
    let mut report = LemmaReport {
        max_m,
        checked: 0,
        failure: None,
    };
    for m in 1..=max_m {
        for eps in [0, 1] {
            let mono = zeroth_lemma_monomial(m, eps);
            let (lo, hi) = lemma_window(&mono);
            if !eval_monomial(&mono, &vacuum(0), lo, hi)?.is_zero() {
                report.failure = Some(format!("{mono} is nonzero on [{lo},{hi}]"));
                return Ok(report);
            }
            report.checked += 1;
        }
        let mono = first_lemma_monomial(m);
        let (lo, hi) = lemma_window(&mono);
        if eval_monomial(&mono, &vacuum(0), lo, hi)?.is_zero() {
            report.failure = Some(format!("{mono} vanishes on [{lo},{hi}]"));
            return Ok(report);
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Measured and predicted lowest exponents, both doubled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowestPower {
    pub monomial: QVAMonomial,
    pub window: (i64, i64),
    pub measured: Option<i64>,
    pub predicted: i64,
}

impl LowestPower {
    pub fn passed(&self) -> bool {
        self.measured == Some(self.predicted)
    }
}

impl fmt::Display for LowestPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: i64| {
            if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("{e}/2")
            }
        };
        write!(
            f,
            "{} lowest={} predicted={} status={}",
            self.monomial,
            self.measured.map_or("none".to_string(), show),
            show(self.predicted),
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

fn probe_window(m: &QVAMonomial, predicted: i64) -> (i64, i64) {
    let dm = d_values(&m.indices).last().copied().unwrap_or(0);
    let len = m.len() as i64;
    let lo = 2 * (dm - len - 2);
    (lo.min(predicted - 4), predicted.max(2 * len * len) + 4)
}

/// Lowest power of `z` in `m` applied to the vacuum, doubled.
pub fn lowest_power(m: &QVAMonomial, window: (i64, i64)) -> Result<Option<i64>, BasisError> {
    Ok(eval_monomial(m, &vacuum(0), window.0, window.1)?.valuation())
}

/// Compare the lowest power with `D_m + 1 + m(m-1)`.
pub fn lowest_power_check(m: &QVAMonomial) -> Result<LowestPower, BasisError> {
    let len = m.len() as i64;
    let dm = *d_values(&m.indices)
        .last()
        .ok_or_else(|| BasisError::IndexOutOfRange { k: 0, len: 0 })?;
    let predicted = 2 * (dm + 1 + len * (len - 1));
    let window = probe_window(m, predicted);
    Ok(LowestPower {
        monomial: m.clone(),
        window,
        measured: lowest_power(m, window)?,
        predicted,
    })
}

/// `lowest = a D_m + b m^2 + c`, fitted exactly on the measured data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFit {
    /// `(D_m, m, doubled lowest exponent)` per element.
    pub data: Vec<(i64, i64, i64)>,
    /// Numerators of `(a, b, c)` over `denominator`, when one fit explains
    /// every point.
    pub coefficients: Option<[i64; 3]>,
    pub denominator: i64,
}

impl fmt::Display for AffineFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coefficients {
            None => write!(f, "no affine fit over {} points", self.data.len()),
            Some(c) => {
                let frac = |n: i64| {
                    let g = gcd(n, self.denominator);
                    let (n, d) = (n / g, self.denominator / g);
                    if d == 1 {
                        n.to_string()
                    } else {
                        format!("{n}/{d}")
                    }
                };
                write!(
                    f,
                    "lowest = ({})*D_m + ({})*m^2 + ({}) over {} points",
                    frac(c[0]),
                    frac(c[1]),
                    frac(c[2]),
                    self.data.len()
                )
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn fit(data: &[(i64, i64, i64)]) -> (Option<[i64; 3]>, i64) {
    let row = |&(d, m, _): &(i64, i64, i64)| [d, m * m, 1];
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            for k in j + 1..data.len() {
                let a = [row(&data[i]), row(&data[j]), row(&data[k])];
                let det = det3(a);
                if det == 0 {
                    continue;
                }
                let y = [data[i].2, data[j].2, data[k].2];
                let mut coeffs = [0i64; 3];
                for (c, out) in coeffs.iter_mut().enumerate() {
                    let mut b = a;
                    for r in 0..3 {
                        b[r][c] = y[r];
                    }
                    *out = det3(b);
                }
                let (coeffs, det) = if det < 0 {
                    (coeffs.map(|x| -x), -det)
                } else {
                    (coeffs, det)
                };
                let ok = data.iter().all(|p| {
                    let r = row(p);
                    r[0] * coeffs[0] + r[1] * coeffs[1] + r[2] * coeffs[2] == det * p.2
                });
                // doubled exponents: halve the fitted coefficients
                return (ok.then_some(coeffs), 2 * det);
            }
        }
    }
    (None, 1)
}

/// Measured lowest powers on `W_(1,qq)` members with `1 <= m <= max_len` and
/// degree `<= max_deg`, with the best affine description.
pub fn lowest_power_fit(max_len: usize, max_deg: u32) -> Result<AffineFit, BasisError> {
    let f = family("W1qq")?;
    let mut data = Vec::new();
    for e in enum_family(f, max_deg).iter().flatten() {
        let Element::Operator(m) = e else { continue };
        if m.is_empty() || m.len() > max_len {
            continue;
        }
        let dm = *d_values(&m.indices).last().expect("nonempty");
        let len = m.len() as i64;
        let guess = 2 * (dm + 1 + len * len);
        let window = probe_window(m, guess);
        if let Some(e) = lowest_power(m, window)? {
            data.push((dm, len, e));
        }
    }
    let (coefficients, denominator) = fit(&data);
    Ok(AffineFit {
        data,
        coefficients,
        denominator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma_monomials() {
        assert_eq!(first_lemma_monomial(3).indices, vec![-5, -3, -1]);
        assert_eq!(zeroth_lemma_monomial(2, 1).indices, vec![-4, -3, -1]);
        assert_eq!(zeroth_lemma_monomial(1, 0).indices, vec![-1, -1]);
    }

    #[test]
    fn exact_fit() {
        let data: Vec<_> = [(-1, 1), (-3, 1), (-4, 2), (-7, 3), (-9, 2)]
            .iter()
            .map(|&(d, m)| (d, m, 2 * d + 2 * m * m + 2))
            .collect();
        let (c, den) = fit(&data);
        let c = c.unwrap();
        assert_eq!([c[0] * 2 / den, c[1] * 2 / den, c[2] * 2 / den], [2, 2, 2]);
    }
}
