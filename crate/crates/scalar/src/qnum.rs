use crate::{FieldElem, ScalarError};

/// `[m]_qq = (qq^m - 1)/(qq - 1)` with `qq = v^4`; valid for every integer `m`.
pub fn qq_int(m: i64) -> FieldElem {
    qq_int_half(2 * m)
}

/// `[m]_qq` for a half-integer `m = m2/2`, using `qq^(1/2) = v^2`.
pub fn qq_int_half(m2: i64) -> FieldElem {
    if m2 == 0 {
        return FieldElem::zero();
    }
    // (v^(2*m2) - 1) / (v^4 - 1)
    let num = FieldElem::v_pow(2 * m2) - FieldElem::one();
    let den = FieldElem::v_pow(4) - FieldElem::one();
    num / den
}

/// `[l]_qq! = [l][l-1]...[1]`, `[0]! = 1`.
pub fn qq_factorial(l: i64) -> Result<FieldElem, ScalarError> {
    if l < 0 {
        return Err(ScalarError::NegativeFactorial(l));
    }
    Ok((1..=l).map(qq_int).product())
}

/// `[m][m-1]...[m-l+1] / [l]!` for any integer `m` and `l >= 0`.
pub fn qq_binom(m: i64, l: u32) -> FieldElem {
    let l = l as i64;
    let mut num = FieldElem::one();
    for k in 0..l {
        num = num * qq_int(m - k);
        if num.is_zero() {
            return num;
        }
    }
    num / qq_factorial(l).expect("nonnegative")
}

/// Symmetric q-integer `(q^m - q^-m)/(q - q^-1)` with `q = v^2`.
pub fn sym_q_int(m: i64) -> FieldElem {
    if m == 0 {
        return FieldElem::zero();
    }
    let num = FieldElem::q_pow(m) - FieldElem::q_pow(-m);
    let den = FieldElem::q_pow(1) - FieldElem::q_pow(-1);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> FieldElem {
        FieldElem::qq()
    }

    #[test]
    fn q_integers() {
        assert_eq!(qq_int(3), FieldElem::one() + qq() + qq() * qq());
        assert!(qq_int(0).is_zero());
        assert_eq!(qq_int(-1), -qq().pow(-1));
    }

    #[test]
    fn factorials() {
        assert!(qq_factorial(0).unwrap().is_one());
        assert_eq!(qq_factorial(2).unwrap(), FieldElem::one() + qq());
        assert!(qq_factorial(-1).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(qq_binom(2, 1), FieldElem::one() + qq());
        assert_eq!(qq_binom(-1, 2), qq().pow(-3));
        assert!(qq_binom(3, 3).is_one());
        assert!(qq_binom(5, 0).is_one());
    }

    #[test]
    fn symmetric_integers() {
        assert_eq!(sym_q_int(2), FieldElem::q() + FieldElem::q().pow(-1));
        assert!(sym_q_int(0).is_zero());
        assert!(sym_q_int(1).is_one());
    }
}
