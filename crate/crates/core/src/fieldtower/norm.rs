//! Embeddings between profiles, relative norms, and the dense linear-solve
//! inverse used as a cross-check.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::element::{RadMono, TowerElement};
use super::poly::{Coef, Poly};
use super::ratfunc::RatFunc;
use super::tower::{Ctx, TowerProfile};

/// Default cap on the relative degree handled by `field_norm`.
pub const NORM_DEGREE_CAP: u64 = 128;

/// Per-variable and per-radical exponent ratios between `sub` and `ctx`.
fn ratios(sub: &Ctx, ctx: &Ctx) -> Option<(Vec<u32>, Vec<u32>)> {
    if !sub.same_shape(ctx) || !sub.profile().le(&ctx.profile()) {
        return None;
    }
    let rx = sub
        .vars()
        .iter()
        .zip(ctx.vars())
        .map(|(a, b)| (b.inflation() / a.inflation()) as u32)
        .collect();
    let ry = sub
        .radicals()
        .iter()
        .zip(ctx.radicals())
        .map(|(a, b)| (b.order() / a.order()) as u32)
        .collect();
    Some((rx, ry))
}

/// The inclusion `K_sub → K_target`: `X ↦ X′^{p^Δ}`, `Y ↦ Y′^{p^Δ}`.
pub fn embed(a: &TowerElement, target: &Ctx) -> Result<TowerElement> {
    let (rx, ry) = ratios(a.ctx(), target).ok_or(Error::ProfileNotLarger)?;
    Ok(a.map_into(
        target,
        |m: &RadMono| m.iter().zip(&ry).map(|(e, r)| e * r).collect(),
        |p: &Poly| p.inflate(&rx),
    ))
}

/// Context with the pointwise maximum profile of two same-shape contexts.
pub fn join_ctx(a: &Ctx, b: &Ctx) -> Result<Ctx> {
    if !a.same_shape(b) {
        return Err(Error::Incompatible("different tower shapes".into()));
    }
    if a.profile() == b.profile() {
        return Ok(a.clone());
    }
    let p = a.profile().max(&b.profile());
    Ok(Arc::new(a.with_profile(&p)?.with_cap(a.cap().max(b.cap()))))
}

/// Lift both operands to the joined profile.
pub fn lift_pair(a: &TowerElement, b: &TowerElement) -> Result<(TowerElement, TowerElement)> {
    let c = join_ctx(a.ctx(), b.ctx())?;
    Ok((embed(a, &c)?, embed(b, &c)?))
}

/// Inverse of `embed`: `None` if `a` is not in the image of `sub`.
pub fn pull_back(a: &TowerElement, sub: &Ctx) -> Result<Option<TowerElement>> {
    let (rx, ry) = ratios(sub, a.ctx()).ok_or(Error::ProfileNotSmaller)?;
    let mut terms = Vec::new();
    for (m, p) in a.numerators() {
        if m.iter().zip(&ry).any(|(e, r)| e % r != 0) {
            return Ok(None);
        }
        let Some(q) = p.deflate(&rx) else { return Ok(None) };
        terms.push((m.iter().zip(&ry).map(|(e, r)| e / r).collect::<RadMono>(), q));
    }
    let Some(den) = a.denominator().deflate(&rx) else { return Ok(None) };
    Ok(Some(TowerElement::from_parts(sub, terms, den)))
}

/// Relative basis of `K_ctx` over `K_sub`: pairs (variable exponents,
/// radical exponents) below the ratios.
fn relative_basis(rx: &[u32], ry: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = vec![(vec![], vec![])];
    for &r in rx {
        out = out
            .into_iter()
            .flat_map(|(x, y)| {
                (0..r).map(move |i| {
                    let mut x2 = x.clone();
                    x2.push(i);
                    (x2, y.clone())
                })
            })
            .collect();
    }
    for &r in ry {
        out = out
            .into_iter()
            .flat_map(|(x, y)| {
                (0..r).map(move |j| {
                    let mut y2 = y.clone();
                    y2.push(j);
                    (x.clone(), y2)
                })
            })
            .collect();
    }
    out
}

/// Matrix of multiplication by a polynomial-coefficient element over `sub`.
fn mult_matrix(p: &TowerElement, sub: &Ctx, rx: &[u32], ry: &[u32]) -> Vec<Vec<TowerElement>> {
    let ctx = p.ctx();
    let basis = relative_basis(rx, ry);
    let index: BTreeMap<(Vec<u32>, Vec<u32>), usize> =
        basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let d = basis.len();
    let (nv, ch) = (ctx.nvars(), ctx.characteristic());
    let one = Poly::one(nv, ch);
    let mut cols = Vec::with_capacity(d);
    for (bx, by) in &basis {
        let b = TowerElement::from_parts(ctx, [(by.clone(), Poly::monomial(nv, ch, bx.clone(), Coef::from_integer(1.into())))], one.clone());
        let prod = p.mul(&b);
        // Denominators are 1 here: `p` and `b` have polynomial coefficients.
        let mut col: Vec<Vec<(RadMono, Poly)>> = vec![Vec::new(); d];
        for (m, poly) in prod.numerators() {
            let jm: Vec<u32> = m.iter().zip(ry).map(|(e, r)| e % r).collect();
            let sm: RadMono = m.iter().zip(ry).map(|(e, r)| e / r).collect();
            for (mu, c) in poly.terms() {
                let im: Vec<u32> = mu.iter().zip(rx).map(|(e, r)| e % r).collect();
                let smu: Vec<u32> = mu.iter().zip(rx).map(|(e, r)| e / r).collect();
                let row = index[&(im, jm.clone())];
                let c = c * prod.denominator().leading_coef().recip();
                col[row].push((sm.clone(), Poly::monomial(nv, ch, smu, c)));
            }
        }
        cols.push(
            col.into_iter()
                .map(|t| TowerElement::from_parts(sub, t, Poly::one(nv, ch)))
                .collect::<Vec<_>>(),
        );
    }
    // Transpose to rows.
    (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Determinant by Gaussian elimination over a tower field.
fn det(mut m: Vec<Vec<TowerElement>>, ctx: &Ctx) -> Result<TowerElement> {
    let n = m.len();
    let mut acc = TowerElement::one(ctx);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Ok(TowerElement::zero(ctx));
        };
        if p != c {
            m.swap(p, c);
            acc = acc.neg();
        }
        let piv = m[c][c].clone();
        acc = acc.mul(&piv);
        let piv_inv = piv.inv()?;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].mul(&piv_inv);
            for k in c..n {
                let t = m[r][k].sub(&f.mul(&m[c][k]));
                m[r][k] = t;
            }
        }
    }
    Ok(acc)
}

/// `N_{K/K_sub}(a)` as an element of `K_sub`.
pub fn field_norm(a: &TowerElement, sub: &Ctx) -> Result<TowerElement> {
    let (rx, ry) = ratios(sub, a.ctx()).ok_or(Error::ProfileNotSmaller)?;
    let degree: u64 = rx.iter().chain(&ry).map(|&r| r as u64).product();
    if degree > NORM_DEGREE_CAP {
        return Err(Error::TooLarge { dim: degree as u128, cap: NORM_DEGREE_CAP as u128 });
    }
    if a.is_zero() {
        return Ok(TowerElement::zero(sub));
    }
    let ctx = a.ctx();
    let one = Poly::one(ctx.nvars(), ctx.characteristic());
    let p = TowerElement::from_parts(ctx, a.numerators().iter().map(|(m, q)| (m.clone(), q.clone())), one);
    let d = TowerElement::from_poly(ctx, a.denominator().clone());
    let np = det(mult_matrix(&p, sub, &rx, &ry), sub)?;
    if a.denominator().is_one() {
        return Ok(np);
    }
    let nd = det(mult_matrix(&d, sub, &rx, &ry), sub)?;
    np.div(&nd)
}

/// Inverse by solving `a·v = 1` with the multiplication matrix over `F(X)` in
/// the radical monomial basis. Dense; for cross-checks at small dimension.
pub fn inv_dense(a: &TowerElement) -> Result<TowerElement> {
    let ctx = a.ctx();
    let orders = ctx.orders();
    let dim = ctx.dimension();
    if dim > 64 {
        return Err(Error::TooLarge { dim, cap: 64 });
    }
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut basis: Vec<RadMono> = vec![vec![]];
    for &n in &orders {
        basis = basis
            .into_iter()
            .flat_map(|m| {
                (0..n as u32).map(move |j| {
                    let mut m2 = m.clone();
                    m2.push(j);
                    m2
                })
            })
            .collect();
    }
    let d = basis.len();
    let index: BTreeMap<RadMono, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let (nv, ch) = (ctx.nvars(), ctx.characteristic());
    let zero = RatFunc::zero(nv, ch);
    let mut m = vec![vec![zero.clone(); d + 1]; d];
    for (j, b) in basis.iter().enumerate() {
        let col = a.mul_radical_mono(b);
        for (mono, r) in col.coefficients() {
            m[index[&mono]][j] = r;
        }
    }
    m[index[&vec![0; orders.len()]]][d] = RatFunc::one(nv, ch);
    for c in 0..d {
        let p = (c..d)
            .find(|&r| !m[r][c].is_zero())
            .ok_or_else(|| Error::SingularMultiplication(format!("{a:?}: singular multiplication matrix")))?;
        m.swap(p, c);
        let inv = m[c][c].inv()?;
        for k in c..=d {
            m[c][k] = m[c][k].mul(&inv);
        }
        for r in 0..d {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for k in c..=d {
                let t = m[r][k].sub(&f.mul(&m[c][k]));
                m[r][k] = t;
            }
        }
    }
    let mut acc = TowerElement::zero(ctx);
    for (i, b) in basis.iter().enumerate() {
        if !m[i][d].is_zero() {
            acc = acc.add(&TowerElement::monomial(ctx, b.clone(), &m[i][d]));
        }
    }
    Ok(acc)
}

/// Profile of `ctx` with some depths replaced.
pub fn profile_with(ctx: &Ctx, var_depths: Option<Vec<u32>>, radical_depths: Option<Vec<u32>>) -> TowerProfile {
    let p = ctx.profile();
    TowerProfile {
        var_depths: var_depths.unwrap_or(p.var_depths.clone()),
        radical_depths: radical_depths.unwrap_or(p.radical_depths.clone()),
        ..p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::element::{generator_radical, generator_var};
    use crate::fieldtower::tower::{Depths, TowerCtx, DEFAULT_DIM_CAP};
    use crate::graphs::{ColoredGraph, Graph};

    fn k2(v: u32, e: u32) -> Ctx {
        let cg = ColoredGraph::monochromatic(Graph::complete(2));
        Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: v, edge: e }, DEFAULT_DIM_CAP).unwrap())
    }

    #[test]
    fn companion_norm() {
        let deep = Arc::new(TowerCtx::rational(0, &["z"], 3).unwrap());
        let deep = Arc::new(deep.with_profile(&profile_with(&deep, Some(vec![1]), None)).unwrap());
        let base = Arc::new(deep.with_profile(&profile_with(&deep, Some(vec![0]), None)).unwrap());
        let z1 = generator_var(&deep, 0, 1).unwrap();
        let n = field_norm(&z1, &base).unwrap();
        assert_eq!(n, generator_var(&base, 0, 0).unwrap());
        let c = TowerElement::int(&base, 7).add(&generator_var(&base, 0, 0).unwrap());
        let lifted = embed(&c, &deep).unwrap();
        assert_eq!(field_norm(&lifted, &base).unwrap(), c.pow(3));
    }

    #[test]
    fn embed_is_a_homomorphism() {
        let small = k2(1, 1);
        let big = k2(2, 2);
        let a = generator_var(&small, 0, 0).unwrap().add(&generator_radical(&small, 0, 1).unwrap());
        let b = generator_radical(&small, 0, 0).unwrap().sub(&TowerElement::int(&small, 2));
        assert_eq!(embed(&a.add(&b), &big).unwrap(), embed(&a, &big).unwrap().add(&embed(&b, &big).unwrap()));
        assert_eq!(embed(&a.mul(&b), &big).unwrap(), embed(&a, &big).unwrap().mul(&embed(&b, &big).unwrap()));
        assert!(embed(&TowerElement::one(&small), &big).unwrap().is_one());
        assert_eq!(embed(&generator_var(&small, 1, 0).unwrap(), &big).unwrap(), generator_var(&big, 1, 0).unwrap());
        assert_eq!(pull_back(&embed(&a, &big).unwrap(), &small).unwrap().unwrap(), a);
        assert!(matches!(embed(&a, &k2(0, 0)), Err(Error::ProfileNotLarger)));
    }

    #[test]
    fn norm_of_edge_root() {
        let k = k2(1, 1);
        let sub = Arc::new(k.with_profile(&profile_with(&k, None, Some(vec![0]))).unwrap());
        let y = generator_radical(&k, 0, 1).unwrap();
        // Y^5 = A: the norm of Y is A (degree 5 is odd).
        assert_eq!(field_norm(&y, &sub).unwrap(), generator_radical(&sub, 0, 0).unwrap());
        let a = TowerElement::one(&k).add(&y);
        let b = generator_var(&k, 0, 1).unwrap().sub(&y.pow(2));
        let lhs = field_norm(&a.mul(&b), &sub).unwrap();
        let rhs = field_norm(&a, &sub).unwrap().mul(&field_norm(&b, &sub).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dense_inverse_agrees() {
        let k = k2(1, 1);
        let y = generator_radical(&k, 0, 1).unwrap();
        let x = generator_var(&k, 0, 1).unwrap();
        let a = x.add(&y.pow(2)).add(&y.pow(3).mul(&x));
        assert_eq!(inv_dense(&a).unwrap(), a.inv().unwrap());
    }
}
