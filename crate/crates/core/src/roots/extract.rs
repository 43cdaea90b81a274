//! Structured root extraction: an element with a single radical monomial is
//! `u · ∏ X_s^{k_s} · ∏ Y_f^{E_f}` with a unit `u` of the base field free of
//! the `X_s` and of the radical bases; its `p`-th root, when one of that
//! shape exists, divides every exponent by `p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::fieldtower::poly::{coef_int, coef_mul, coef_reduce, may_divide, Coef, Mono};
use crate::fieldtower::{Ctx, Poly, RatFunc, TowerElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub unit: RatFunc,
    /// Exponent of each deep variable `X_s`.
    pub xk: Vec<i64>,
    /// Exponent of each radical `Y_f`, counting `A_f = Y_f^{n_f}`.
    pub ye: Vec<i64>,
}

/// Largest `k` with `g^k | p`, and the cofactor.
fn strip(p: &Poly, g: &Poly) -> (i64, Poly) {
    let mut k = 0;
    let mut q = p.clone();
    while may_divide(g, &q) {
        match q.div_exact(g) {
            Some(r) => {
                q = r;
                k += 1;
            }
            None => break,
        }
    }
    (k, q)
}

/// Split a single-term element; `None` for zero or several terms.
pub fn decompose(a: &TowerElement) -> Option<Decomposition> {
    if a.num_terms() != 1 {
        return None;
    }
    let ctx = a.ctx();
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let (m, num) = a.numerators().iter().next()?;
    let mut num = num.clone();
    let mut den = a.denominator().clone();
    let mut xk = vec![0i64; n];
    for (s, k) in xk.iter_mut().enumerate() {
        let (a0, b0) = (num.min_degree_in(s), den.min_degree_in(s));
        let mut e = vec![0u32; n];
        e[s] = a0;
        num = num.div_exact(&Poly::monomial(n, ch, e.clone(), Coef::one())).unwrap();
        e[s] = b0;
        den = den.div_exact(&Poly::monomial(n, ch, e, Coef::one())).unwrap();
        *k = a0 as i64 - b0 as i64;
    }
    let orders = ctx.orders();
    let mut ye: Vec<i64> = m.iter().map(|&e| e as i64).collect();
    for f in 0..ctx.nradicals() {
        let g = ctx.base(f).monic();
        if g.is_constant() || g.num_terms() == 1 {
            continue;
        }
        let (j1, r1) = strip(&num, &g);
        let (j2, r2) = strip(&den, &g);
        num = r1;
        den = r2;
        ye[f] += orders[f] as i64 * (j1 - j2);
    }
    Some(Decomposition { unit: RatFunc::new(num, den).ok()?, xk, ye })
}

/// `u · ∏ X^k · ∏ Y^E` as a reduced element; exponents may be negative.
pub fn assemble(ctx: &Ctx, unit: &RatFunc, xk: &[i64], ye: &[i64]) -> TowerElement {
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let mut num = unit.num().clone();
    let mut den = unit.den().clone();
    let pos: Mono = xk.iter().map(|&k| k.max(0) as u32).collect();
    let neg: Mono = xk.iter().map(|&k| (-k).max(0) as u32).collect();
    num = num.mul(&Poly::monomial(n, ch, pos, Coef::one()));
    den = den.mul(&Poly::monomial(n, ch, neg, Coef::one()));
    let orders = ctx.orders();
    let mut m = vec![0u32; ctx.nradicals()];
    for (f, &e) in ye.iter().enumerate() {
        let o = orders[f] as i64;
        let (q, r) = (e.div_euclid(o), e.rem_euclid(o));
        m[f] = r as u32;
        if q > 0 {
            num = num.mul(&ctx.base(f).pow(q as u64));
        } else if q < 0 {
            den = den.mul(&ctx.base(f).pow((-q) as u64));
        }
    }
    TowerElement::from_parts(ctx, [(m, num)], den)
}

/// An `e`-th root of a prime-field constant, if one exists.
pub fn coef_root(c: &Coef, e: u64, ch: u32) -> Option<Coef> {
    if c.is_zero() {
        return Some(c.clone());
    }
    if ch > 0 {
        return (1..ch as i64).map(coef_int).find(|x| {
            let mut acc = Coef::one();
            for _ in 0..e {
                acc = coef_mul(&acc, x, ch);
            }
            acc == *c
        });
    }
    let int_root = |v: &BigInt| -> Option<BigInt> {
        let neg = v.is_negative();
        if neg && e % 2 == 0 {
            return None;
        }
        let r = v.abs().nth_root(e as u32);
        let r = if neg { -r } else { r };
        (num_traits::pow(r.clone(), e as usize) == *v).then_some(r)
    };
    Some(BigRational::new(int_root(c.numer())?, int_root(c.denom())?))
}

/// Exact `e`-th root of a polynomial by leading-term iteration in deglex.
pub fn poly_root(p: &Poly, e: u64) -> Option<Poly> {
    let (n, ch) = (p.nvars(), p.characteristic());
    if e == 1 || p.is_zero() {
        return Some(p.clone());
    }
    if ch > 0 && e % ch as u64 == 0 {
        return None;
    }
    let (lm, lc) = p.leading()?.clone();
    if lm.iter().any(|&x| x as u64 % e != 0) {
        return None;
    }
    let m0: Mono = lm.iter().map(|&x| x / e as u32).collect();
    let c0 = coef_root(&lc, e, ch)?;
    let mut q = Poly::monomial(n, ch, m0.clone(), c0.clone());
    // Derivative of Q^e at the leading term: e · lt(Q)^{e−1}.
    let dm: Mono = m0.iter().map(|&x| x * (e as u32 - 1)).collect();
    let mut dc = coef_reduce(coef_int(e as i64), ch);
    for _ in 1..e {
        dc = coef_mul(&dc, &c0, ch);
    }
    let dc_inv = crate::fieldtower::poly::coef_inv(&dc, ch)?;
    for _ in 0..100_000 {
        let r = p.sub(&q.pow(e));
        let Some((rm, rc)) = r.leading().cloned() else { return Some(q) };
        if rm.iter().zip(&dm).any(|(a, b)| a < b) {
            return None;
        }
        let tm: Mono = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
        if crate::fieldtower::poly::cmp_mono(&tm, &m0) != std::cmp::Ordering::Less {
            return None;
        }
        q = q.add(&Poly::monomial(n, ch, tm, coef_mul(&rc, &dc_inv, ch)));
    }
    None
}

pub fn ratfunc_root(f: &RatFunc, e: u64) -> Option<RatFunc> {
    RatFunc::new(poly_root(f.num(), e)?, poly_root(f.den(), e)?).ok()
}

/// The `p`-th root of a single-term element with every exponent divisible
/// by `p`, checked by exponentiation.
pub fn structured_root(a: &TowerElement, p: u64) -> Option<TowerElement> {
    let d = decompose(a)?;
    let pi = p as i64;
    if d.xk.iter().chain(&d.ye).any(|k| k % pi != 0) {
        return None;
    }
    let u = ratfunc_root(&d.unit, p)?;
    let xk: Vec<i64> = d.xk.iter().map(|k| k / pi).collect();
    let ye: Vec<i64> = d.ye.iter().map(|k| k / pi).collect();
    let b = assemble(a.ctx(), &u, &xk, &ye);
    (b.pow(p) == *a).then_some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_roots() {
        let x = |i| Poly::var(2, 0, i);
        let w = x(0).mul(&x(1)).sub(&x(0).scale(&coef_int(2))).add(&Poly::int(2, 0, 3));
        assert_eq!(poly_root(&w.pow(3), 3), Some(w.clone()));
        assert_eq!(poly_root(&w.pow(3).add(&x(1)), 3), None);
        assert_eq!(poly_root(&w.pow(5).neg(), 5), Some(w.neg()));
        assert_eq!(poly_root(&Poly::int(2, 0, 2), 3), None);
        assert_eq!(coef_root(&BigRational::new(8.into(), 27.into()), 3, 0), Some(BigRational::new(2.into(), 3.into())));
        // In F_7 every element is a 5th power.
        assert!(coef_root(&coef_int(3), 5, 7).is_some());
        assert!(coef_root(&coef_int(3), 3, 7).is_none());
    }
}
