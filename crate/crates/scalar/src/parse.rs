use crate::{FieldElem, Poly, ScalarError};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Parse `poly` or `(poly)/(poly)` where `poly` is a sum of terms
/// `c`, `v`, `v^k`, `c*v`, `c*v^k` with optional signs.
pub(crate) fn parse_field(s: &str) -> Result<FieldElem, ScalarError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ScalarError::Parse(s.to_string()));
    }
    if let Some(rest) = t.strip_prefix('(') {
        let close = rest
            .find(')')
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let num = parse_poly(&rest[..close]).ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let after = &rest[close + 1..];
        if after.is_empty() {
            return Ok(FieldElem::from_poly(num));
        }
        let den_s = after
            .strip_prefix("/(")
            .and_then(|d| d.strip_suffix(')'))
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let den = parse_poly(den_s).ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        return FieldElem::new(num, den);
    }
    parse_poly(&t)
        .map(FieldElem::from_poly)
        .ok_or_else(|| ScalarError::Parse(s.to_string()))
}

fn parse_poly(s: &str) -> Option<Poly> {
    if s.is_empty() {
        return None;
    }
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut neg = false;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        neg = bytes[0] == b'-';
        start = 1;
    }
    let mut i = start;
    while i < bytes.len() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && i > start && bytes[i - 1] != b'^' {
            terms.push((neg, &s[start..i]));
            neg = b == b'-';
            start = i + 1;
        }
        i += 1;
    }
    terms.push((neg, &s[start..]));
    let mut acc = Poly::zero();
    for (neg, body) in terms {
        let (c, k) = parse_term(body)?;
        let c = if neg { -c } else { c };
        acc = acc.add(&Poly::monomial(c, k));
    }
    Some(acc)
}

fn parse_term(t: &str) -> Option<(BigInt, usize)> {
    if t.is_empty() {
        return None;
    }
    let (coef, var) = match t.find('v') {
        None => return Some((t.parse().ok()?, 0)),
        Some(p) => (&t[..p], &t[p..]),
    };
    let c: BigInt = match coef {
        "" => BigInt::one(),
        _ => coef.strip_suffix('*')?.parse().ok()?,
    };
    let k = match var {
        "v" => 1,
        _ => var.strip_prefix("v^")?.parse().ok()?,
    };
    if c.is_zero() {
        return Some((c, 0));
    }
    Some((c, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_examples() {
        for s in ["0", "1", "-v", "v^3 - 2*v^2 + 1", "(v^4 + 1)/(v^2)", "(-1)/(v - 1)"] {
            let e: FieldElem = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("v^".parse::<FieldElem>().is_err());
        assert!("(1)/(0)".parse::<FieldElem>().is_err());
        assert!("x".parse::<FieldElem>().is_err());
    }
}
