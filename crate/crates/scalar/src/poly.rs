use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Dense univariate polynomial in `v` with integer coefficients, lowest
/// degree first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(n: BigInt) -> Self {
        let mut p = Poly { c: vec![n] };
        p.trim();
        p
    }

    /// `n * v^k`.
    pub fn monomial(n: BigInt, k: usize) -> Self {
        if n.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = n;
        Poly { c }
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.c.last(), Some(x) if x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.c.last()
    }

    /// Order of vanishing at `v = 0`.
    pub fn ord(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// `Some((coeff, k))` when the polynomial is `coeff * v^k`.
    pub fn as_monomial(&self) -> Option<(&BigInt, usize)> {
        let k = self.ord()?;
        if k + 1 == self.c.len() {
            Some((&self.c[k], k))
        } else {
            None
        }
    }

    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Divide by `v^k`; the caller guarantees `k <= ord`.
    pub fn shr(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        Poly {
            c: self.c[k.min(self.c.len())..].to_vec(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (long, short) = if self.c.len() >= o.c.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut c = long.c.clone();
        for (a, b) in c.iter_mut().zip(short.c.iter()) {
            *a += b;
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = self.c.clone();
        c.resize(n, BigInt::zero());
        for (a, b) in c.iter_mut().zip(o.c.iter()) {
            *a -= b;
        }
        Poly::from_coeffs(c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some((a, k)) = o.as_monomial() {
            return self.scale_int(a).shl(k);
        }
        if let Some((a, k)) = self.as_monomial() {
            return o.scale_int(a).shl(k);
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale_int(&self, n: &BigInt) -> Poly {
        if n.is_zero() {
            return Poly::zero();
        }
        if n.is_one() {
            return self.clone();
        }
        Poly {
            c: self.c.iter().map(|x| x * n).collect(),
        }
    }

    pub fn div_int_exact(&self, n: &BigInt) -> Poly {
        if n.is_one() {
            return self.clone();
        }
        Poly {
            c: self.c.iter().map(|x| x / n).collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    break;
                }
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.lead().map(|x| x.is_negative()).unwrap_or(false) {
            g = -g;
        }
        self.div_int_exact(&g)
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn prem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("pseudo-division by zero");
        let mut r = self.c.clone();
        let lc = d.c[dd].clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top].clone();
            if t.is_zero() {
                r.pop();
                continue;
            }
            for x in r.iter_mut() {
                *x *= &lc;
            }
            let shift = top - dd;
            for (j, b) in d.c.iter().enumerate() {
                if !b.is_zero() {
                    r[shift + j] -= &t * b;
                }
            }
            r.pop();
            while matches!(r.last(), Some(x) if x.is_zero()) {
                r.pop();
            }
        }
        Poly::from_coeffs(r)
    }

    /// Exact quotient `self / d`; panics if `d` does not divide `self` in `Z[v]`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let g = self.stride().gcd(&d.stride());
        if g > 1 {
            return self.compress(g).div_exact(&d.compress(g)).expand(g);
        }
        let (q, r) = self.divrem_int(d).expect("inexact polynomial division");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Division with remainder when every step stays integral; `None` when a
    /// leading coefficient does not divide.
    pub fn divrem_int(&self, d: &Poly) -> Option<(Poly, Poly)> {
        let dd = d.degree().expect("division by zero polynomial");
        if let Some((a, k)) = d.as_monomial() {
            if self.ord().map(|o| o >= k).unwrap_or(true) {
                let q = self.shr(k);
                if q.c.iter().all(|x| x.is_multiple_of(a)) {
                    return Some((q.div_int_exact(a), Poly::zero()));
                }
            }
        }
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        let lc = &d.c[dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let t = r[top].clone();
            if !t.is_zero() {
                let (qt, rem) = t.div_rem(lc);
                if !rem.is_zero() {
                    return None;
                }
                let shift = top - dd;
                for (j, b) in d.c.iter().enumerate() {
                    if !b.is_zero() {
                        r[shift + j] -= &qt * b;
                    }
                }
                q[shift] = qt;
            }
            r.pop();
        }
        Some((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    /// Primitive gcd in `Z[v]` up to integer content, normalized to a
    /// positive leading coefficient.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let k = self.ord().unwrap().min(o.ord().unwrap());
        let a = self.shr(self.ord().unwrap());
        let b = o.shr(o.ord().unwrap());
        let vpart = Poly::monomial(BigInt::one(), k);
        if a.is_constant() || b.is_constant() {
            return vpart;
        }
        let g = a.stride().gcd(&b.stride());
        if g > 1 {
            return a.compress(g).gcd(&b.compress(g)).expand(g).shl(k);
        }
        let (mut a, mut b) = if a.c.len() >= b.c.len() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        if let Some(q) = a.divrem_int(&b) {
            if q.1.is_zero() {
                return b.shl(k);
            }
        }
        if let Some(g) = heuristic_gcd(&a, &b) {
            return g.shl(k);
        }
        loop {
            let r = a.prem(&b);
            if r.is_zero() {
                return b.primitive().shl(k);
            }
            if r.is_constant() {
                return vpart;
            }
            a = b;
            b = r.primitive();
        }
    }

    /// Largest `g` with `self` a polynomial in `v^g`; zero for constants.
    fn stride(&self) -> usize {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .fold(0, |g, (i, _)| g.gcd(&i))
    }

    /// `P(v)` from `P(v^g)`.
    fn compress(&self, g: usize) -> Poly {
        Poly {
            c: self.c.iter().step_by(g).cloned().collect(),
        }
    }

    /// `P(v^g)` from `P(v)`.
    fn expand(&self, g: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); (self.c.len() - 1) * g + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * g] = x.clone();
        }
        Poly { c }
    }

    fn max_norm(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Symmetric `xi`-adic digits of `h`.
    fn from_adic(mut h: BigInt, xi: &BigInt) -> Poly {
        let half = xi >> 1;
        let mut c = Vec::new();
        while !h.is_zero() {
            let mut d = h.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            h = (h - &d) / xi;
            c.push(d);
        }
        Poly::from_coeffs(c)
    }

    /// Evaluate at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Compare by degree then coefficients from the top; used for canonical
    /// ordering of rendered output only.
    pub fn canonical_cmp(&self, o: &Poly) -> Ordering {
        self.c
            .len()
            .cmp(&o.c.len())
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{}*v", mag)?,
                (_, true) => write!(f, "v^{}", k)?,
                (_, false) => write!(f, "{}*v^{}", mag, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Gcd by evaluation at large integers, for primitive `a`, `b`; `None` when
/// no evaluation point produced a verified divisor.
fn heuristic_gcd(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut xi = a.max_norm().min(b.max_norm()) * 2u32 + 29u32;
    for _ in 0..6 {
        let h = a.eval_int(&xi).gcd(&b.eval_int(&xi));
        if !h.is_zero() {
            let g = Poly::from_adic(h, &xi).primitive();
            if !g.is_zero() {
                let divides = |p: &Poly| matches!(p.divrem_int(&g), Some((_, r)) if r.is_zero());
                if divides(a) && divides(b) {
                    return Some(g);
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (v^2-1)(v+2) and (v^2-1)(v-3)
        let a = p(&[-1, 0, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 0, 1]).mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_strips_powers_of_v() {
        let a = p(&[0, 0, 3, 3]);
        let b = p(&[0, 2, 2]);
        assert_eq!(a.gcd(&b), p(&[0, 1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), p(&[1, 1]));
    }

    #[test]
    fn render() {
        assert_eq!(p(&[1, 0, -2, 1]).to_string(), "v^3 - 2*v^2 + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-v");
    }
}
