use crate::poly::Poly;
use crate::{Module, Ring, ScalarError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Element of `Q(v)` stored as `v^shift * num / den`.
///
/// `num` and `den` are not divisible by `v`, the denominator has a positive
/// leading coefficient and the pair has no common factor, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: Poly,
    den: Poly,
    shift: i64,
}

impl FieldElem {
    pub(crate) fn parts(&self) -> (&Poly, &Poly, i64) {
        (&self.num, &self.den, self.shift)
    }

    pub fn zero() -> Self {
        FieldElem {
            num: Poly::zero(),
            den: Poly::one(),
            shift: 0,
        }
    }

    pub fn one() -> Self {
        FieldElem::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        FieldElem {
            num: Poly::constant(n),
            den: Poly::one(),
            shift: 0,
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        FieldElem::new(
            Poly::constant(BigInt::from(n)),
            Poly::constant(BigInt::from(d)),
        )
        .expect("nonzero denominator")
    }

    /// `v^k` for any integer `k`.
    pub fn v_pow(k: i64) -> Self {
        FieldElem {
            num: Poly::one(),
            den: Poly::one(),
            shift: k,
        }
    }

    /// `q^k = v^(2k)`.
    pub fn q_pow(k: i64) -> Self {
        FieldElem::v_pow(2 * k)
    }

    /// `qq^k = v^(4k)`.
    pub fn qq_pow(k: i64) -> Self {
        FieldElem::v_pow(4 * k)
    }

    pub fn v() -> Self {
        FieldElem::v_pow(1)
    }

    pub fn q() -> Self {
        FieldElem::v_pow(2)
    }

    pub fn qq() -> Self {
        FieldElem::v_pow(4)
    }

    /// Build `num / den` in normal form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(FieldElem::normalize(num, den, 0))
    }

    pub fn from_poly(p: Poly) -> Self {
        FieldElem::normalize(p, Poly::one(), 0)
    }

    /// Numerator of the reduced fraction in `Z[v]`.
    pub fn numerator(&self) -> Poly {
        if self.shift > 0 {
            self.num.shl(self.shift as usize)
        } else {
            self.num.clone()
        }
    }

    /// Denominator of the reduced fraction in `Z[v]`.
    pub fn denominator(&self) -> Poly {
        if self.shift < 0 {
            self.den.shl((-self.shift) as usize)
        } else {
            self.den.clone()
        }
    }

    /// `v^shift * num / den` in normal form.
    fn normalize(num: Poly, den: Poly, shift: i64) -> Self {
        if num.is_zero() {
            return FieldElem::zero();
        }
        let (kn, kd) = (num.ord().unwrap(), den.ord().unwrap());
        let shift = shift + kn as i64 - kd as i64;
        let (num, den) = (num.shr(kn), den.shr(kd));
        let (mut num, mut den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let mut c = num.content().gcd(&den.content());
        if den.lead().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_int_exact(&c);
            den = den.div_int_exact(&c);
        }
        FieldElem { num, den, shift }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the element is an integer-coefficient Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((c, k))` when the element equals `c * v^k` with `c` rational.
    pub fn as_monomial(&self) -> Option<(FieldElem, i64)> {
        if !self.num.is_constant() || !self.den.is_constant() {
            return None;
        }
        let c = FieldElem {
            num: self.num.clone(),
            den: self.den.clone(),
            shift: 0,
        };
        Some((c, self.shift))
    }

    /// `Some(n)` when the element is an integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.shift == 0 && self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Laurent expansion `(exponent, rational coefficient)` when the
    /// denominator is a rational multiple of a power of `v`.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, FieldElem)>> {
        if !self.den.is_constant() {
            return None;
        }
        let d = self.den.coeff(0);
        let mut out = Vec::new();
        for (i, c) in self.num.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.push((
                    i as i64 + self.shift,
                    FieldElem::normalize(Poly::constant(c.clone()), Poly::constant(d.clone()), 0),
                ));
            }
        }
        Some(out)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut out = FieldElem {
            num: self.den.clone(),
            den: self.num.clone(),
            shift: -self.shift,
        };
        if out.den.lead().unwrap().is_negative() {
            out.num = out.num.neg();
            out.den = out.den.neg();
        }
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = FieldElem::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Substitute `v = x` for an integer `x`; `None` if the denominator vanishes.
    pub fn eval_int(&self, x: i64) -> Option<(BigInt, BigInt)> {
        let x = BigInt::from(x);
        let d = self.denominator().eval_int(&x);
        if d.is_zero() {
            return None;
        }
        Some((self.numerator().eval_int(&x), d))
    }

    fn mul_impl(&self, o: &FieldElem) -> FieldElem {
        if self.is_zero() || o.is_zero() {
            return FieldElem::zero();
        }
        let shift = self.shift + o.shift;
        if self.den.is_one() && o.den.is_one() {
            return FieldElem {
                num: self.num.mul(&o.num),
                den: Poly::one(),
                shift,
            };
        }
        // cross-cancel before multiplying
        let cancel = |n: &Poly, d: &Poly| {
            if n.is_constant() || d.is_constant() {
                return (n.clone(), d.clone());
            }
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g), d.div_exact(&g))
            }
        };
        let (a, d) = cancel(&self.num, &o.den);
        let (c, b) = cancel(&o.num, &self.den);
        let num = a.mul(&c);
        let den = b.mul(&d);
        let mut cc = num.content().gcd(&den.content());
        if den.lead().unwrap().is_negative() {
            cc = -cc;
        }
        if cc.is_one() {
            FieldElem { num, den, shift }
        } else {
            FieldElem {
                num: num.div_int_exact(&cc),
                den: den.div_int_exact(&cc),
                shift,
            }
        }
    }

    fn add_impl(&self, o: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let x = self.num.shl((self.shift - m) as usize);
        let y = o.num.shl((o.shift - m) as usize);
        if self.den == o.den {
            if self.den.is_one() {
                return FieldElem::normalize(x.add(&y), Poly::one(), m);
            }
            return FieldElem::normalize(x.add(&y), self.den.clone(), m);
        }
        let g = if self.den.is_constant() || o.den.is_constant() {
            Poly::one()
        } else {
            self.den.gcd(&o.den)
        };
        if g.is_one() {
            let num = x.mul(&o.den).add(&y.mul(&self.den));
            return FieldElem::normalize(num, self.den.mul(&o.den), m);
        }
        let bd = self.den.div_exact(&g);
        let dd = o.den.div_exact(&g);
        let num = x.mul(&dd).add(&y.mul(&bd));
        FieldElem::normalize(num, bd.mul(&o.den), m)
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        FieldElem::zero()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.numerator(), self.denominator());
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({d})")
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for FieldElem {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_field(s)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &'a FieldElem) -> FieldElem {
                let f: fn(&FieldElem, &FieldElem) -> FieldElem = $body;
                f(self, o)
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &'a FieldElem) -> FieldElem {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b));
binop!(Sub, sub, |a, b| a.add_impl(&-b));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.mul_impl(&b.inv().expect("division by zero")));

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
            shift: self.shift,
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, o: &FieldElem) {
        *self = self.add_impl(o);
    }
}

impl AddAssign<FieldElem> for FieldElem {
    fn add_assign(&mut self, o: FieldElem) {
        *self = self.add_impl(&o);
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, o: &FieldElem) {
        *self = self.add_impl(&-o);
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, o: &FieldElem) {
        *self = self.mul_impl(o);
    }
}

impl std::iter::Sum for FieldElem {
    fn sum<I: Iterator<Item = FieldElem>>(iter: I) -> Self {
        iter.fold(FieldElem::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for FieldElem {
    fn product<I: Iterator<Item = FieldElem>>(iter: I) -> Self {
        iter.fold(FieldElem::one(), |a, b| a * b)
    }
}

impl Module for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn scale(&self, s: &FieldElem) -> Self {
        self * s
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

impl Ring for FieldElem {
    fn one() -> Self {
        FieldElem::one()
    }
    fn from_field(f: &FieldElem) -> Self {
        f.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn pow_half(&self, e2: i64) -> Option<Self> {
        if e2 % 2 == 0 {
            return Some(self.pow(e2 / 2));
        }
        // odd: only monomials c*v^k with even k and c a perfect square
        let (c, k) = self.as_monomial()?;
        if k % 2 != 0 || !c.is_one() {
            return None;
        }
        Some(FieldElem::v_pow(k / 2 * e2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_normal_form() {
        let a = FieldElem::new(Poly::from_i64s(&[-2, 0, 2]), Poly::from_i64s(&[-2, -2])).unwrap();
        // (2v^2-2)/(-2v-2) = 1 - v
        assert_eq!(a, FieldElem::from_poly(Poly::from_i64s(&[1, -1])));
    }

    #[test]
    fn denominator_leading_coefficient_positive() {
        let a = FieldElem::new(Poly::from_i64s(&[1]), Poly::from_i64s(&[1, -1])).unwrap();
        assert!(a.denominator().lead().unwrap().is_positive());
        assert_eq!(a.to_string(), "(-1)/(v - 1)");
    }

    #[test]
    fn powers_of_v() {
        let a = FieldElem::v_pow(-3) * FieldElem::v_pow(5);
        assert_eq!(a, FieldElem::v_pow(2));
        assert!(FieldElem::v_pow(-3).is_laurent());
    }

    #[test]
    fn half_power_of_monomial() {
        let u = FieldElem::qq_pow(1);
        assert_eq!(u.pow_half(1), Some(FieldElem::q_pow(1)));
        assert_eq!(FieldElem::v().pow_half(1), None);
    }
}
