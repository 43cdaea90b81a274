//! Random element families for the root and p-high suites.

use rand::Rng;

use crate::fieldtower::checks::random_element;
use crate::fieldtower::{Ctx, Poly, RatFunc, TowerElement};

use super::extract::assemble;
use super::high::classify_p_high;

fn small_nonzero<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// `a·X_s + b` or a nonzero integer.
fn small_poly<R: Rng>(ctx: &Ctx, rng: &mut R) -> Poly {
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let mut c = Poly::int(n, ch, small_nonzero(rng));
    if c.is_zero() {
        c = Poly::one(n, ch);
    }
    if n == 0 || rng.gen_bool(0.4) {
        return c;
    }
    let s = rng.gen_range(0..n);
    Poly::var(n, ch, s).scale(&crate::fieldtower::poly::coef_int(small_nonzero(rng))).add(&c)
}

/// `f · ∏ X_s^{k_s} · ∏ Y_f^{m_f}` with `f` a ratio of products of small
/// polynomials and exponents in `−2..=2` (radicals `0..n_f`).
pub fn random_structured<R: Rng>(ctx: &Ctx, rng: &mut R) -> TowerElement {
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let mut num = Poly::one(n, ch);
    let mut den = Poly::one(n, ch);
    for _ in 0..rng.gen_range(1..=2) {
        num = num.mul(&small_poly(ctx, rng));
    }
    if rng.gen_bool(0.5) {
        den = den.mul(&small_poly(ctx, rng));
    }
    let unit = RatFunc::new(num, den).expect("nonzero denominator");
    let xk: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let ye: Vec<i64> = ctx.orders().iter().map(|&o| rng.gen_range(0..o as i64)).collect();
    assemble(ctx, &unit, &xk, &ye)
}

/// `ε · ∏ (x_s^{n_s})^{m_s}` over the vertices of prime `p`, with `ε = ±1`
/// (`1` for `p = 2`), `n_s` up to the current depth and `m_s ∈ −3..=3`.
pub fn random_high_monomial<R: Rng>(ctx: &Ctx, p: u64, rng: &mut R) -> TowerElement {
    let xk: Vec<i64> = ctx
        .vars()
        .iter()
        .map(|v| {
            if v.prime != p {
                return 0;
            }
            let n = rng.gen_range(0..=v.depth);
            let m = rng.gen_range(-3..=3);
            m * (v.prime as i64).pow(v.depth - n)
        })
        .collect();
    let eps = if p != 2 && rng.gen_bool(0.5) { -1 } else { 1 };
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let unit = RatFunc::from_poly(Poly::int(n, ch, eps));
    assemble(ctx, &unit, &xk, &vec![0; ctx.nradicals()])
}

/// A random element that is not a constant times a generator monomial.
pub fn random_unstructured<R: Rng>(ctx: &Ctx, p: u64, rng: &mut R) -> TowerElement {
    loop {
        let a = random_element(ctx, rng);
        if !a.is_zero() && classify_p_high(&a, p).is_none() {
            return a;
        }
    }
}
