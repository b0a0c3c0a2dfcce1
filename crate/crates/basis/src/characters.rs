use crate::family::{enum_family, BasisFamily};

/// Number of members of each degree `0..=max_deg`.
pub fn character(f: &dyn BasisFamily, max_deg: u32) -> Vec<u64> {
    enum_family(f, max_deg)
        .iter()
        .map(|g| g.len() as u64)
        .collect()
}

fn mul_truncated(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 / (1 - q^k)` truncated to `n` terms.
fn geometric(k: usize, n: usize) -> Vec<u64> {
    (0..n).map(|e| u64::from(e % k == 0)).collect()
}

/// `sum_r q^(r^2 + i r) / ((1-q)...(1-q^r))`.
pub fn rr_sum_side(i: u32, max_deg: u32) -> Vec<u64> {
    let n = max_deg as usize + 1;
    let mut out = vec![0u64; n];
    let mut denom = vec![0u64; n];
    denom[0] = 1;
    for r in 0usize.. {
        let shift = r * r + i as usize * r;
        if shift >= n {
            break;
        }
        if r > 0 {
            denom = mul_truncated(&denom, &geometric(r, n));
        }
        for e in shift..n {
            out[e] += denom[e - shift];
        }
    }
    out
}

/// `prod_(r>=0) 1 / ((1 - q^(5r+1+i)) (1 - q^(5r+4-i)))`.
pub fn rr_product_side(i: u32, max_deg: u32) -> Vec<u64> {
    let n = max_deg as usize + 1;
    let mut out = vec![0u64; n];
    out[0] = 1;
    for k in 1..n {
        if k % 5 == 1 + i as usize || k % 5 == 4 - i as usize {
            out = mul_truncated(&out, &geometric(k, n));
        }
    }
    out
}

pub fn series_eq(lists: &[&[u64]]) -> bool {
    lists.windows(2).all(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_product() {
        let mut p = vec![1u64, 0, 0, 0, 0, 0];
        for k in 1..6 {
            p = mul_truncated(&p, &geometric(k, 6));
        }
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7]);
    }

    #[test]
    fn sides_agree_low() {
        assert_eq!(rr_sum_side(0, 8), vec![1, 1, 1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(rr_product_side(1, 8), vec![1, 0, 1, 1, 1, 1, 2, 2, 3]);
    }
}
