use crate::expr::{Atom, Factor, OperatorExpr, Term};
use crate::jet::Jet;
use crate::rules::{contraction, Dir};
use crate::VertexError;
use qvertex_fock::{annihilate, create, FockVec, FockVector};
use qvertex_scalar::{Factored, FieldElem, Ring};
use qvertex_series::CoeffSeries;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Coefficients of `e(z) v` on the doubled window `[lo, hi]`.
pub fn apply_truncated(
    e: &OperatorExpr,
    v: &FockVector,
    lo: i64,
    hi: i64,
) -> Result<CoeffSeries<FockVector>, VertexError> {
    let mut out = CoeffSeries::new(lo, hi);
    // terms equal up to a common rescaling of z share one evaluation
    type Member = (FieldElem, i64, i64);
    let mut groups: Vec<(Vec<Factor>, Vec<Member>)> = Vec::new();
    for t in e.terms() {
        let base = t.factors.first().map_or(0, |f| f.scale);
        let rel: Vec<Factor> = t.factors.iter().map(|f| f.scaled(-base)).collect();
        let m = (t.coeff.clone(), t.zpow, base);
        match groups.iter_mut().find(|(r, _)| *r == rel) {
            Some((_, ms)) => ms.push(m),
            None => groups.push((rel, vec![m])),
        }
    }
    for (factors, members) in groups {
        if let [(coeff, zpow, base)] = members.as_slice() {
            let t = Term {
                coeff: coeff.clone(),
                zpow: *zpow,
                factors: factors.iter().map(|f| f.scaled(*base)).collect(),
            };
            eval_term(&t, v, lo, hi, false, &mut out)?;
            continue;
        }
        let zmin = members.iter().map(|m| m.1).min().expect("nonempty");
        let zmax = members.iter().map(|m| m.1).max().expect("nonempty");
        let rep = Term {
            coeff: FieldElem::one(),
            zpow: 0,
            factors,
        };
        let mut acc = CoeffSeries::new(lo - zmax, hi - zmin);
        eval_term(&rep, v, lo - zmax, hi - zmin, false, &mut acc)?;
        for (k, w) in acc.iter() {
            for (coeff, zpow, base) in &members {
                if k + zpow < lo || k + zpow > hi {
                    continue;
                }
                if (base * k) % 2 != 0 {
                    return Err(VertexError::OddScale(k, *base));
                }
                let f = Factored::from_field(coeff).mul(&Factored::v_pow(base * k / 2));
                out.add_at(k + zpow, &w.scale_ring(&f));
            }
        }
    }
    Ok(reduce(&out))
}

type Acc = CoeffSeries<FockVec<Factored>>;

fn reduce(acc: &Acc) -> CoeffSeries<FockVector> {
    acc.map(|w| {
        let mut out = FockVector::zero();
        for (k, c) in w.iter() {
            out.add_term(k.clone(), &c.to_field());
        }
        out
    })
}

/// `:e_1(z u_1) ... e_n(z u_n): v` with `u_i = v^(scale_i)`: creation parts
/// left, annihilation parts right, no reordering factors.
pub fn normal_ordered_apply(
    parts: &[(OperatorExpr, i64)],
    v: &FockVector,
    lo: i64,
    hi: i64,
) -> Result<CoeffSeries<FockVector>, VertexError> {
    let mut prod = OperatorExpr::unit();
    for (e, u) in parts {
        prod = prod.mul(&e.scale_subst(*u));
    }
    let mut out = CoeffSeries::new(lo, hi);
    for t in prod.terms() {
        eval_term(t, v, lo, hi, true, &mut out)?;
    }
    Ok(reduce(&out))
}

/// The mode `e(r) v`, the coefficient of `z^(-r-1)`.
pub fn mode_apply(e: &OperatorExpr, r: i64, v: &FockVector) -> Result<FockVector, VertexError> {
    let k = -2 * r - 2;
    Ok(apply_truncated(e, v, k, k)?.coeff(k))
}

fn eval_term(
    t: &Term,
    v: &FockVector,
    lo: i64,
    hi: i64,
    normal: bool,
    out: &mut Acc,
) -> Result<(), VertexError> {
    let dvars: Vec<usize> = (0..t.factors.len())
        .filter(|&i| t.factors[i].deriv > 0)
        .collect();
    if dvars.is_empty() {
        let ys: Vec<Factored> = t
            .factors
            .iter()
            .map(|f| Factored::v_pow(f.scale))
            .collect();
        eval_with(t, v, lo, hi, normal, &ys, |c: &Factored| c.clone(), out)
    } else {
        let caps = Arc::new(
            dvars
                .iter()
                .map(|&i| t.factors[i].deriv)
                .collect::<Vec<_>>(),
        );
        let ys: Vec<Jet> = t
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let base = Jet::constant(&caps, FieldElem::v_pow(f.scale));
                match dvars.iter().position(|&d| d == i) {
                    Some(p) => base.mul_ref(&Jet::one_plus_var_pow(&caps, p, &FieldElem::one())),
                    None => base,
                }
            })
            .collect();
        eval_with(t, v, lo, hi, normal, &ys, |c: &Jet| Factored::from_field(&c.top()), out)
    }
}

fn half_power<S: Ring>(y: &S, e2: i64, scale: i64) -> Result<S, VertexError> {
    y.pow_half(e2).ok_or(VertexError::OddScale(e2, scale))
}

/// Evaluate `prod_i W_i(z y_i)` with `y_i = u_i (1 + w_i)`; the derivative
/// `D^d` of factor `i` is the `w_i^d` coefficient divided by `(z u_i)^d`.
#[allow(clippy::too_many_arguments)]
fn eval_with<S: Ring>(
    t: &Term,
    v: &FockVector,
    lo: i64,
    hi: i64,
    normal: bool,
    ys: &[S],
    extract: impl Fn(&S) -> Factored,
    out: &mut Acc,
) -> Result<(), VertexError> {
    let slots: Vec<(usize, Atom)> = t
        .factors
        .iter()
        .enumerate()
        .flat_map(|(i, f)| f.word.iter().map(move |a| (i, *a)))
        .collect();
    let dsum: i64 = t.factors.iter().map(|f| f.deriv as i64).sum();
    let dscale: i64 = t.factors.iter().map(|f| f.deriv as i64 * f.scale).sum();
    let head = Factored::from_field(&(&t.coeff * &FieldElem::v_pow(-dscale)));
    let scale_of = |i: usize| t.factors[i].scale;

    let mut pre = S::one();
    let mut zshift = t.zpow - 2 * dsum;
    if !normal {
        let mut roots: BTreeMap<(usize, usize), BTreeMap<i64, FieldElem>> = BTreeMap::new();
        for p in 0..slots.len() {
            for p2 in p + 1..slots.len() {
                let ((i, a), (j, b)) = (slots[p], slots[p2]);
                match (a, b) {
                    (Atom::Exp(ann), Atom::Exp(cre))
                        if ann.dir() == Dir::Annihilate && cre.dir() == Dir::Create =>
                    {
                        let entry = roots.entry((i, j)).or_default();
                        for (k, e) in contraction(ann, cre)? {
                            *entry.entry(k).or_insert_with(FieldElem::zero) += &e;
                        }
                    }
                    (Atom::ZPow(beta), Atom::Lattice(gamma)) => {
                        pre = pre.mul_ref(&half_power(&ys[i], beta * gamma, scale_of(i))?);
                        zshift += beta * gamma;
                    }
                    _ => {}
                }
            }
        }
        for ((i, j), ks) in roots {
            let ratio = ys[j].mul_ref(&ys[i].inverse().expect("unit scale"));
            for (k, e) in ks {
                let n = (0..=64)
                    .find(|n| e == FieldElem::from_int(*n))
                    .ok_or_else(|| {
                        VertexError::NotQuasiCommutative(format!(
                            "factor (1 - v^{k} t)^({e}) between factors {i} and {j}"
                        ))
                    })?;
                if n == 0 {
                    continue;
                }
                let mut f = S::one();
                f.sub_assign_ref(&ratio.scale(&FieldElem::v_pow(k)));
                pre = pre.mul_ref(&f.pow(n).expect("nonnegative power"));
            }
        }
    }
    if pre.is_zero() {
        return Ok(());
    }

    let anns: Vec<(usize, crate::rules::ExpFactor)> = slots
        .iter()
        .filter_map(|(i, a)| match a {
            Atom::Exp(e) if e.dir() == Dir::Annihilate => Some((*i, *e)),
            _ => None,
        })
        .collect();
    let cres: Vec<(usize, crate::rules::ExpFactor)> = slots
        .iter()
        .filter_map(|(i, a)| match a {
            Atom::Exp(e) if e.dir() == Dir::Create => Some((*i, *e)),
            _ => None,
        })
        .collect();
    let lattice: Vec<i64> = slots
        .iter()
        .filter_map(|(_, a)| match a {
            Atom::Lattice(g) => Some(*g),
            _ => None,
        })
        .collect();
    let zpows: Vec<(usize, i64)> = slots
        .iter()
        .filter_map(|(i, a)| match a {
            Atom::ZPow(b) => Some((*i, *b)),
            _ => None,
        })
        .collect();

    let inv_ys: Vec<S> = ys
        .iter()
        .map(|y| y.inverse().expect("unit scale"))
        .collect();
    let top = v.max_degree();
    let mut ann_coeffs: Vec<S> = Vec::new();
    if !anns.is_empty() {
        let mut pows: Vec<S> = inv_ys.clone();
        for r in 1..=top {
            let mut c = S::zero();
            for (i, e) in &anns {
                c.add_assign_ref(&pows[*i].scale(&e.coeff(r)));
            }
            ann_coeffs.push(c);
            for (i, p) in pows.iter_mut().enumerate() {
                *p = p.mul_ref(&inv_ys[i]);
            }
        }
    }
    let mut cre_coeffs: Vec<S> = Vec::new();
    let mut cre_pows: Vec<S> = ys.to_vec();
    let mut grow = |upto: u32, cre_coeffs: &mut Vec<S>| {
        while (cre_coeffs.len() as u32) < upto {
            let r = cre_coeffs.len() as u32 + 1;
            let mut c = S::zero();
            for (j, e) in &cres {
                c.add_assign_ref(&cre_pows[*j].scale(&e.coeff(r)));
            }
            cre_coeffs.push(c);
            for (j, p) in cre_pows.iter_mut().enumerate() {
                *p = p.mul_ref(&ys[j]);
            }
        }
    };

    let mut by_label: BTreeMap<i64, FockVec<S>> = BTreeMap::new();
    for (k, c) in v.iter() {
        by_label
            .entry(k.label())
            .or_insert_with(FockVec::zero)
            .add_term(k.clone(), &S::from_field(c));
    }
    for (label, group) in by_label {
        let mut lab_pre = pre.clone();
        let mut lab_shift = zshift;
        for (i, beta) in &zpows {
            lab_pre = lab_pre.mul_ref(&half_power(&ys[*i], beta * label, scale_of(*i))?);
            lab_shift += beta * label;
        }
        let parts = if ann_coeffs.is_empty() {
            BTreeMap::from([(0u32, group)])
        } else {
            annihilate(&group, &ann_coeffs)
        };
        for (m, mut w) in parts {
            let base = lab_shift - 2 * m as i64;
            if base > hi {
                continue;
            }
            for g in lattice.iter().rev() {
                w = w.lattice_translate(*g);
            }
            let w = w.scale_ring(&lab_pre);
            if w.is_zero() {
                continue;
            }
            let nmin = (lo - base).div_euclid(2) + i64::from((lo - base).rem_euclid(2) != 0);
            let nmin = nmin.max(0);
            let nmax = if cres.is_empty() {
                0
            } else {
                (hi - base).div_euclid(2)
            };
            if nmin > nmax {
                continue;
            }
            grow(nmax as u32, &mut cre_coeffs);
            for n in nmin..=nmax {
                let c = if n == 0 {
                    w.clone()
                } else {
                    create(&w, &cre_coeffs, n as u32)
                };
                let mut vec = FockVec::zero();
                for (key, s) in c.iter() {
                    let x = extract(s);
                    if !x.is_zero() {
                        vec.add_term(key.clone(), &x.mul(&head));
                    }
                }
                out.add_at(base + 2 * n, &vec);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_operator;
    use qvertex_fock::{vacuum, FockKey};

    #[test]
    fn x_on_vacuum_low_terms() {
        let x = make_operator("x").unwrap();
        let s = apply_truncated(&x, &vacuum(0), -2, 2).unwrap();
        assert_eq!(s.coeff(0), vacuum(2));
        let want = FockVector::term(FockKey::new(vec![1], 2), FieldElem::v_pow(-1));
        assert_eq!(s.coeff(2), want);
        assert!(s.coeff(-2).is_zero());
    }

    #[test]
    fn y_on_vacuum() {
        let y = make_operator("Y").unwrap();
        let s = apply_truncated(&y, &vacuum(0), 0, 0).unwrap();
        assert_eq!(s.coeff(0), vacuum(1));
    }

    #[test]
    fn x_on_alpha_starts_at_z_squared() {
        let x = make_operator("x").unwrap();
        let s = apply_truncated(&x, &vacuum(2), -6, 4).unwrap();
        assert_eq!(s.valuation(), Some(4));
        assert_eq!(s.coeff(4), vacuum(4));
    }
}
