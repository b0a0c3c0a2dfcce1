use crate::{FieldElem, Module, Poly, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An element of `Q(v)` as `v^shift * num / (den_int * prod atom^e)`.
///
/// Atoms are cyclotomic polynomials in `v`, or any other primitive
/// denominator that does not split into them. Products and sums never take a
/// polynomial gcd; cancellation happens once, in [`Factored::to_field`].
/// Meant for long accumulations whose denominators are products of
/// q-integers.
#[derive(Clone, Debug)]
pub struct Factored {
    num: Poly,
    shift: i64,
    den_int: BigInt,
    den: Vec<(u32, u32)>,
}

const PROBE: i64 = 1_000_003;

#[derive(Default)]
struct Atoms {
    polys: Vec<Poly>,
    ids: HashMap<Poly, u32>,
    powers: HashMap<(u32, u32), Arc<Poly>>,
    values: HashMap<u32, Arc<BigInt>>,
    split: HashMap<Poly, Arc<(BigInt, Vec<(u32, u32)>)>>,
    cyclo: Vec<Poly>,
}

fn atoms() -> &'static Mutex<Atoms> {
    static A: OnceLock<Mutex<Atoms>> = OnceLock::new();
    A.get_or_init(|| Mutex::new(Atoms::default()))
}

impl Atoms {
    fn id(&mut self, p: &Poly) -> u32 {
        if let Some(&i) = self.ids.get(p) {
            return i;
        }
        let i = self.polys.len() as u32;
        self.polys.push(p.clone());
        self.ids.insert(p.clone(), i);
        i
    }

    /// The atom evaluated at `v = PROBE`, a cheap filter before dividing.
    fn value(&mut self, id: u32) -> Arc<BigInt> {
        if let Some(x) = self.values.get(&id) {
            return x.clone();
        }
        let x = Arc::new(self.polys[id as usize].eval_int(&BigInt::from(PROBE)));
        self.values.insert(id, x.clone());
        x
    }

    fn power(&mut self, id: u32, e: u32) -> Arc<Poly> {
        if let Some(p) = self.powers.get(&(id, e)) {
            return p.clone();
        }
        let base = self.polys[id as usize].clone();
        let p = Arc::new((1..e).fold(base.clone(), |acc, _| acc.mul(&base)));
        self.powers.insert((id, e), p.clone());
        p
    }

    /// `Φ_n(v)` for `n >= 1`.
    fn cyclotomic(&mut self, n: usize) -> Poly {
        while self.cyclo.len() < n {
            let k = self.cyclo.len() + 1;
            let mut p = Poly::monomial(BigInt::one(), k).sub(&Poly::one());
            for d in 1..k {
                if k % d == 0 {
                    p = p.div_exact(&self.cyclo[d - 1]);
                }
            }
            self.cyclo.push(p);
        }
        self.cyclo[n - 1].clone()
    }

    /// Split a nonzero denominator (not divisible by `v`) into an integer and
    /// atoms.
    fn split(&mut self, d: &Poly) -> Arc<(BigInt, Vec<(u32, u32)>)> {
        if let Some(s) = self.split.get(d) {
            return s.clone();
        }
        let mut c = d.content();
        if d.lead().expect("nonzero").is_negative() {
            c = -c;
        }
        let mut rest = d.div_int_exact(&c);
        let mut found: Vec<(u32, u32)> = Vec::new();
        let mut n = 1;
        while rest.degree().unwrap_or(0) > 0 && n <= 8 * rest.degree().unwrap() + 8 {
            let phi = self.cyclotomic(n);
            n += 1;
            if phi.degree() > rest.degree() {
                continue;
            }
            let mut e = 0;
            while let Some((q, r)) = rest.divrem_int(&phi) {
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                found.push((self.id(&phi), e));
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            if rest.lead().expect("nonzero").is_negative() {
                rest = rest.neg();
                c = -c;
            }
            found.push((self.id(&rest), 1));
        } else {
            c *= rest.coeff(0);
        }
        found.sort_unstable();
        let s = Arc::new((c, found));
        self.split.insert(d.clone(), s.clone());
        s
    }
}

fn merge_max(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                out.push((x.0, x.1.max(y.1)));
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                out.push(*x);
                i += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (_, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn merge_add(a: &[(u32, u32)], b: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = merge_max(a, b);
    for x in out.iter_mut() {
        let ea = a.iter().find(|y| y.0 == x.0).map_or(0, |y| y.1);
        let eb = b.iter().find(|y| y.0 == x.0).map_or(0, |y| y.1);
        x.1 = ea + eb;
    }
    out
}

impl Factored {
    pub fn zero() -> Self {
        Factored {
            num: Poly::zero(),
            shift: 0,
            den_int: BigInt::one(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Factored {
            num: Poly::one(),
            ..Factored::zero()
        }
    }

    pub fn v_pow(k: i64) -> Self {
        Factored {
            shift: k,
            ..Factored::one()
        }
    }

    pub fn from_field(f: &FieldElem) -> Self {
        if f.is_zero() {
            return Factored::zero();
        }
        let (num, den, shift) = f.parts();
        if den.is_one() {
            return Factored {
                num: num.clone(),
                shift,
                den_int: BigInt::one(),
                den: Vec::new(),
            };
        }
        let s = atoms().lock().expect("atom registry").split(den);
        Factored {
            num: num.clone(),
            shift,
            den_int: s.0.clone(),
            den: s.1.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Reduce to normal form.
    pub fn to_field(&self) -> FieldElem {
        if self.num.is_zero() {
            return FieldElem::zero();
        }
        let mut num = self.num.clone();
        let mut den = Poly::constant(self.den_int.clone());
        let point = BigInt::from(PROBE);
        let mut at = num.eval_int(&point);
        let mut reg = atoms().lock().expect("atom registry");
        for &(id, e) in &self.den {
            let a = reg.polys[id as usize].clone();
            let a_at = reg.value(id);
            let mut left = e;
            while left > 0 && (&at % &*a_at).is_zero() {
                match num.divrem_int(&a) {
                    Some((q, r)) if r.is_zero() => {
                        num = q;
                        at /= &*a_at;
                        left -= 1;
                    }
                    _ => break,
                }
            }
            if left > 0 {
                den = den.mul(&reg.power(id, left));
            }
        }
        drop(reg);
        let f = FieldElem::new(num, den).expect("nonzero denominator");
        &f * &FieldElem::v_pow(self.shift)
    }

    fn reduce_content(&mut self) {
        if self.den_int.is_one() {
            return;
        }
        let g = self.num.content().gcd(&self.den_int);
        if !g.is_one() {
            self.num = self.num.div_int_exact(&g);
            self.den_int /= &g;
        }
    }

    pub fn mul(&self, o: &Factored) -> Factored {
        if self.is_zero() || o.is_zero() {
            return Factored::zero();
        }
        let mut out = Factored {
            num: self.num.mul(&o.num),
            shift: self.shift + o.shift,
            den_int: &self.den_int * &o.den_int,
            den: if o.den.is_empty() {
                self.den.clone()
            } else if self.den.is_empty() {
                o.den.clone()
            } else {
                merge_add(&self.den, &o.den)
            },
        };
        out.reduce_content();
        out
    }

    /// `num` rewritten over the denominator `(den_int, den)`, which must be a
    /// multiple of the current one.
    fn lift(&self, den_int: &BigInt, den: &[(u32, u32)], shift: i64, reg: &mut Atoms) -> Poly {
        let mut p = self.num.scale_int(&(den_int / &self.den_int));
        for &(id, e) in den {
            let have = self.den.iter().find(|x| x.0 == id).map_or(0, |x| x.1);
            if e > have {
                p = p.mul(&reg.power(id, e - have));
            }
        }
        p.shl((self.shift - shift) as usize)
    }

    pub fn add(&self, o: &Factored) -> Factored {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let shift = self.shift.min(o.shift);
        if self.den == o.den && self.den_int == o.den_int {
            let num = self
                .num
                .shl((self.shift - shift) as usize)
                .add(&o.num.shl((o.shift - shift) as usize));
            let mut out = Factored {
                num,
                shift,
                den_int: self.den_int.clone(),
                den: self.den.clone(),
            };
            out.reduce_content();
            return out;
        }
        let den = merge_max(&self.den, &o.den);
        let den_int = self.den_int.lcm(&o.den_int);
        let mut reg = atoms().lock().expect("atom registry");
        let a = self.lift(&den_int, &den, shift, &mut reg);
        let b = o.lift(&den_int, &den, shift, &mut reg);
        drop(reg);
        let mut out = Factored {
            num: a.add(&b),
            shift,
            den_int,
            den,
        };
        out.reduce_content();
        out
    }

    pub fn neg(&self) -> Factored {
        Factored {
            num: self.num.neg(),
            ..self.clone()
        }
    }
}

impl PartialEq for Factored {
    fn eq(&self, o: &Self) -> bool {
        self.add(&o.neg()).is_zero()
    }
}

impl Module for Factored {
    fn zero() -> Self {
        Factored::zero()
    }
    fn is_zero(&self) -> bool {
        Factored::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add(other);
    }
    fn scale(&self, s: &FieldElem) -> Self {
        self.mul(&Factored::from_field(s))
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.add(&other.neg());
    }
}

impl Ring for Factored {
    fn one() -> Self {
        Factored::one()
    }
    fn from_field(f: &FieldElem) -> Self {
        Factored::from_field(f)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Option<Self> {
        if let Some((c, k)) = self.num.as_monomial() {
            if self.den.is_empty() && c.abs().is_one() {
                return Some(Factored {
                    num: Poly::constant(&self.den_int * c),
                    shift: -self.shift - k as i64,
                    den_int: BigInt::one(),
                    den: Vec::new(),
                });
            }
        }
        Some(Factored::from_field(&self.to_field().inv().ok()?))
    }
    fn pow_half(&self, e2: i64) -> Option<Self> {
        if e2 % 2 == 0 {
            return self.pow(e2 / 2);
        }
        let (c, k) = self.num.as_monomial()?;
        let k = k as i64 + self.shift;
        if !c.is_one() || !self.den_int.is_one() || !self.den.is_empty() || k % 2 != 0 {
            return None;
        }
        Some(Factored::v_pow(k / 2 * e2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qq_int, sym_q_int};

    #[test]
    fn round_trip() {
        for f in [
            &qq_int(5) / &sym_q_int(6),
            FieldElem::ratio(-3, 14),
            &FieldElem::v_pow(-3) / &(FieldElem::one() + FieldElem::q_pow(4)),
            "(v^2+v+3)/(2*v^3-1)".parse().unwrap(),
        ] {
            assert_eq!(Factored::from_field(&f).to_field(), f);
        }
    }

    #[test]
    fn arithmetic_matches_field() {
        let xs: Vec<FieldElem> = (1..6)
            .map(|r| &FieldElem::v_pow(-r) / &sym_q_int(r))
            .chain((1..4).map(|r| &FieldElem::v_pow(r) / &sym_q_int(2 * r)))
            .collect();
        let mut acc = FieldElem::zero();
        let mut facc = Factored::zero();
        for (i, a) in xs.iter().enumerate() {
            for b in &xs[i..] {
                acc = &acc + &(a * b);
                facc = facc.add(&Factored::from_field(a).mul(&Factored::from_field(b)));
            }
        }
        assert_eq!(facc.to_field(), acc);
        assert!(facc.add(&facc.neg()).is_zero());
    }

    #[test]
    fn cyclotomic_split() {
        let d = qq_int(6).numerator();
        let s = atoms().lock().unwrap().split(&d);
        // v^24 - 1 over v^4 - 1 leaves the Φ_n with n | 24, n ∤ 4
        assert_eq!(s.1.len(), 5);
        assert!(s.0.is_one());
    }

    #[test]
    fn half_powers() {
        assert_eq!(Factored::v_pow(4).pow_half(3).unwrap().to_field(), FieldElem::v_pow(6));
        assert_eq!(Factored::v_pow(2).pow_half(1).unwrap().to_field(), FieldElem::v());
        assert!(Factored::v_pow(1).pow_half(1).is_none());
    }
}
