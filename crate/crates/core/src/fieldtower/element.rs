//! Elements of a tower context in canonical form
//! `(Σ_m P_m(X)·Y^m) / D(X)` with reduced radical exponents.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::poly::{coef_inv, coef_mul, gcd, may_divide, proven_coprime, Coef, Poly};
use super::ratfunc::RatFunc;
use super::tower::{Ctx, TowerCtx};

/// Exponent vector over the radicals, each entry below the radical's order.
pub type RadMono = Vec<u32>;

#[derive(Clone)]
pub struct TowerElement {
    ctx: Ctx,
    /// Nonzero numerator polynomials keyed by radical monomial.
    num: BTreeMap<RadMono, Poly>,
    /// Monic; coprime to the numerators jointly.
    den: Poly,
    /// Monic nonconstant factors whose product is `den`.
    den_factors: Vec<Poly>,
}

impl PartialEq for TowerElement {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx) && self.num == o.num && self.den == o.den
    }
}
impl Eq for TowerElement {}

impl std::hash::Hash for TowerElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl TowerElement {
    pub fn zero(ctx: &Ctx) -> Self {
        TowerElement { ctx: ctx.clone(), num: BTreeMap::new(), den: Poly::one(ctx.nvars(), ctx.characteristic()), den_factors: vec![] }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_poly(ctx, Poly::one(ctx.nvars(), ctx.characteristic()))
    }

    pub fn int(ctx: &Ctx, v: i64) -> Self {
        Self::from_poly(ctx, Poly::int(ctx.nvars(), ctx.characteristic(), v))
    }

    pub fn constant(ctx: &Ctx, c: Coef) -> Self {
        Self::from_poly(ctx, Poly::constant(ctx.nvars(), ctx.characteristic(), c))
    }

    /// A polynomial in the deep variables `X`.
    pub fn from_poly(ctx: &Ctx, p: Poly) -> Self {
        let mut num = BTreeMap::new();
        if !p.is_zero() {
            num.insert(vec![0; ctx.nradicals()], p);
        }
        TowerElement { ctx: ctx.clone(), num, den: Poly::one(ctx.nvars(), ctx.characteristic()), den_factors: vec![] }
    }

    pub fn from_ratfunc(ctx: &Ctx, r: &RatFunc) -> Self {
        Self::from_parts(ctx, [(vec![0; ctx.nradicals()], r.num().clone())], r.den().clone())
    }

    /// `c · Y^m` with `m` reduced.
    pub fn monomial(ctx: &Ctx, m: RadMono, c: &RatFunc) -> Self {
        let one = Self::from_parts(ctx, [(vec![0; ctx.nradicals()], c.num().clone())], c.den().clone());
        one.mul_radical_mono(&m)
    }

    /// Build from raw numerator terms (exponents may exceed the orders) and a
    /// denominator.
    pub fn from_parts(ctx: &Ctx, terms: impl IntoIterator<Item = (RadMono, Poly)>, den: Poly) -> Self {
        Self::from_parts_factored(ctx, terms, vec![den])
    }

    fn from_parts_factored(ctx: &Ctx, terms: impl IntoIterator<Item = (RadMono, Poly)>, den: Vec<Poly>) -> Self {
        assert!(den.iter().all(|d| !d.is_zero()), "zero denominator");
        let mut acc: HashMap<RadMono, Poly> = HashMap::new();
        for (m, p) in terms {
            let (m, f) = reduce_mono(ctx, m);
            let p = match f {
                Some(f) => p.mul(&f),
                None => p,
            };
            accumulate(&mut acc, m, p);
        }
        Self::normalize(ctx, acc, den.iter().flat_map(split_factor).collect())
    }

    /// Cancel the denominator factors against the numerators. Each factor
    /// is divided out whole when it divides every numerator; otherwise a
    /// modular certificate or, failing that, a gcd settles what remains.
    fn normalize(ctx: &Ctx, acc: HashMap<RadMono, Poly>, factors: Vec<Poly>) -> Self {
        let mut num: BTreeMap<RadMono, Poly> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        if num.is_empty() {
            return Self::zero(ctx);
        }
        let (n, ch) = (ctx.nvars(), ctx.characteristic());
        let mut scale = Coef::one();
        let mut kept: Vec<Poly> = vec![];
        let mut queue = factors;
        while let Some(f) = queue.pop() {
            let lc = f.leading_coef();
            scale = coef_mul(&scale, &coef_inv(&lc, ch).unwrap(), ch);
            if f.is_constant() {
                continue;
            }
            let f = f.monic();
            if f.num_terms() == 1 {
                let k = &f.terms()[0].0;
                let m: Vec<u32> =
                    (0..n).map(|v| num.values().map(|p| p.min_degree_in(v)).min().unwrap().min(k[v])).collect();
                if m.iter().any(|&e| e > 0) {
                    let xm = Poly::monomial(n, ch, m.clone(), Coef::one());
                    for p in num.values_mut() {
                        *p = p.div_exact(&xm).unwrap();
                    }
                    let rest: Vec<u32> = k.iter().zip(&m).map(|(a, b)| a - b).collect();
                    kept.push(Poly::monomial(n, ch, rest, Coef::one()));
                } else {
                    kept.push(f);
                }
                continue;
            }
            if num.values().all(|p| may_divide(&f, p)) {
                let divided: Option<Vec<Poly>> = num.values().map(|p| p.div_exact(&f)).collect();
                if let Some(d) = divided {
                    for (p, q) in num.values_mut().zip(d) {
                        *p = q;
                    }
                    continue;
                }
            }
            let mut by_size: Vec<&Poly> = num.values().collect();
            by_size.sort_by_key(|p| p.num_terms());
            let mut tries = 0;
            let certified = by_size.iter().any(|p| {
                if tries >= 3 || may_divide(&f, p) {
                    return false;
                }
                tries += 1;
                proven_coprime(&f, p)
            });
            if certified {
                kept.push(f);
                continue;
            }
            let mut g = f.clone();
            for p in by_size {
                g = gcd(&g, p);
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() {
                kept.push(f);
            } else {
                for p in num.values_mut() {
                    *p = p.div_exact(&g).unwrap();
                }
                queue.extend(split_factor(&f.div_exact(&g).unwrap()));
            }
        }
        kept.retain(|f| !f.is_constant());
        if !scale.is_one() {
            for p in num.values_mut() {
                *p = p.scale(&scale);
            }
        }
        let den = kept.iter().fold(Poly::one(n, ch), |acc, f| acc.mul(f));
        TowerElement { ctx: ctx.clone(), num, den, den_factors: kept }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }
    pub fn numerators(&self) -> &BTreeMap<RadMono, Poly> {
        &self.num
    }
    pub fn denominator(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.len() == 1 && self.base_part().is_some_and(|p| p.is_one())
    }
    fn base_part(&self) -> Option<&Poly> {
        self.num.get(&vec![0; self.ctx.nradicals()])
    }
    /// Number of radical monomials in the support.
    pub fn num_terms(&self) -> usize {
        self.num.len()
    }
    /// Coefficients as reduced rational functions.
    pub fn coefficients(&self) -> BTreeMap<RadMono, RatFunc> {
        self.num
            .iter()
            .map(|(m, p)| (m.clone(), RatFunc::new(p.clone(), self.den.clone()).unwrap()))
            .collect()
    }
    /// `Some(f)` when the element lies in the base field `F(X)`.
    pub fn as_base(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero(self.ctx.nvars(), self.ctx.characteristic()));
        }
        if self.num.len() == 1 {
            if let Some(p) = self.base_part() {
                return Some(RatFunc::new(p.clone(), self.den.clone()).unwrap());
            }
        }
        None
    }
    /// `Some(c)` when the element is a prime-field constant.
    pub fn as_constant(&self) -> Option<Coef> {
        let r = self.as_base()?;
        if !r.den().is_one() {
            return None;
        }
        r.num().constant_value()
    }

    fn check_ctx(&self, o: &TowerElement) {
        assert!(
            Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx,
            "elements of different tower contexts; embed first"
        );
    }

    pub fn add(&self, o: &TowerElement) -> TowerElement {
        self.check_ctx(o);
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut acc: HashMap<RadMono, Poly> = HashMap::new();
        let factors = if self.den == o.den {
            for (m, p) in self.num.iter().chain(&o.num) {
                accumulate(&mut acc, m.clone(), p.clone());
            }
            self.den_factors.clone()
        } else {
            // Common denominator over the factor multisets.
            let mut a_extra = self.den_factors.clone();
            let mut b_extra = vec![];
            let mut common = vec![];
            for f in &o.den_factors {
                match a_extra.iter().position(|g| g == f) {
                    Some(i) => common.push(a_extra.swap_remove(i)),
                    None => b_extra.push(f.clone()),
                }
            }
            let one = Poly::one(self.ctx.nvars(), self.ctx.characteristic());
            let a = a_extra.iter().fold(one.clone(), |acc, f| acc.mul(f));
            let b = b_extra.iter().fold(one, |acc, f| acc.mul(f));
            for (m, p) in &self.num {
                accumulate(&mut acc, m.clone(), p.mul(&b));
            }
            for (m, p) in &o.num {
                accumulate(&mut acc, m.clone(), p.mul(&a));
            }
            common.into_iter().chain(a_extra).chain(b_extra).collect()
        };
        Self::normalize(&self.ctx, acc, factors)
    }

    pub fn neg(&self) -> TowerElement {
        TowerElement {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|(m, p)| (m.clone(), p.neg())).collect(),
            den: self.den.clone(),
            den_factors: self.den_factors.clone(),
        }
    }

    pub fn sub(&self, o: &TowerElement) -> TowerElement {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &TowerElement) -> TowerElement {
        self.check_ctx(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let (acc, _) = self.mul_parts(o);
        Self::normalize(&self.ctx, acc, self.den_factors.iter().chain(&o.den_factors).cloned().collect())
    }

    /// `self · o == 1`, decided without reducing the product.
    pub fn is_inverse_of(&self, o: &TowerElement) -> bool {
        self.check_ctx(o);
        if self.is_zero() || o.is_zero() {
            return false;
        }
        let (acc, den) = self.mul_parts(o);
        let zero = vec![0; self.ctx.nradicals()];
        acc.iter().all(|(m, p)| if *m == zero { *p == den } else { p.is_zero() })
            && acc.get(&zero).is_some_and(|p| !p.is_zero())
    }

    /// `Some(λ)` with `self = λ·o` and `λ` in the base field.
    pub fn ratio_in_base(&self, o: &TowerElement) -> Option<TowerElement> {
        self.check_ctx(o);
        if self.is_zero() || o.is_zero() || self.num.len() != o.num.len() {
            return None;
        }
        let (k0, a0) = self.num.iter().next()?;
        let b0 = o.num.get(k0)?;
        for (k, a) in &self.num {
            let b = o.num.get(k)?;
            if a.mul(b0) != b.mul(a0) {
                return None;
            }
        }
        let r = RatFunc::new(a0.mul(&o.den), self.den.mul(b0)).ok()?;
        Some(Self::from_ratfunc(&self.ctx, &r))
    }

    fn mul_parts(&self, o: &TowerElement) -> (HashMap<RadMono, Poly>, Poly) {
        let mut acc: HashMap<RadMono, Poly> = HashMap::new();
        for (ma, pa) in &self.num {
            for (mb, pb) in &o.num {
                let m: RadMono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let (m, f) = reduce_mono(&self.ctx, m);
                let mut p = pa.mul(pb);
                if let Some(f) = f {
                    p = p.mul(&f);
                }
                accumulate(&mut acc, m, p);
            }
        }
        (acc, self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &Coef) -> TowerElement {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        TowerElement {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|(m, p)| (m.clone(), p.scale(c))).collect(),
            den: self.den.clone(),
            den_factors: self.den_factors.clone(),
        }
    }

    /// Multiply by `Y^m`.
    pub fn mul_radical_mono(&self, m: &[u32]) -> TowerElement {
        let terms: Vec<(RadMono, Poly)> = self
            .num
            .iter()
            .map(|(a, p)| (a.iter().zip(m).map(|(x, y)| x + y).collect(), p.clone()))
            .collect();
        Self::from_parts_factored(&self.ctx, terms, self.den_factors.clone())
    }

    pub fn pow(&self, mut e: u64) -> TowerElement {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Index of the last radical occurring with a nonzero exponent.
    pub fn top_radical(&self) -> Option<usize> {
        (0..self.ctx.nradicals()).rev().find(|&k| self.num.keys().any(|m| m[k] > 0))
    }

    /// Coefficients as a polynomial in radical `k`: entry `j` multiplies
    /// `Y_k^j` and does not involve `Y_k`.
    pub fn coeffs_in_radical(&self, k: usize) -> Vec<TowerElement> {
        let n = self.ctx.radicals()[k].order() as usize;
        let mut parts: Vec<BTreeMap<RadMono, Poly>> = vec![BTreeMap::new(); n];
        for (m, p) in &self.num {
            let mut m2 = m.clone();
            m2[k] = 0;
            parts[m[k] as usize].insert(m2, p.clone());
        }
        parts
            .into_iter()
            .map(|num| {
                let acc: HashMap<RadMono, Poly> = num.into_iter().collect();
                Self::normalize(&self.ctx, acc, self.den_factors.clone())
            })
            .collect()
    }

    fn radical_power(ctx: &Ctx, k: usize, j: u32) -> TowerElement {
        let mut m = vec![0; ctx.nradicals()];
        m[k] = j;
        Self::from_parts(ctx, [(m, Poly::one(ctx.nvars(), ctx.characteristic()))], Poly::one(ctx.nvars(), ctx.characteristic()))
    }

    /// `Σ_j c_j Y_k^j` for coefficients free of `Y_k`.
    fn join_in_radical(ctx: &Ctx, k: usize, coeffs: &[TowerElement]) -> TowerElement {
        let mut acc = Self::zero(ctx);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&Self::radical_power(ctx, k, j as u32)));
            }
        }
        acc
    }

    /// Multiplicative inverse, layer by layer through the radicals.
    pub fn inv(&self) -> Result<TowerElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(k) = self.top_radical() else {
            let p = self.base_part().unwrap().clone();
            return Ok(Self::from_parts(&self.ctx, [(vec![0; self.ctx.nradicals()], self.den.clone())], p));
        };
        let ctx = &self.ctx;
        let n = ctx.radicals()[k].order();
        let a_k = Self::from_poly(ctx, ctx.base(k).clone());
        let coeffs = self.coeffs_in_radical(k);
        let support: Vec<usize> = (0..coeffs.len()).filter(|&j| !coeffs[j].is_zero()).collect();
        match support.as_slice() {
            // c·Y^j  ↦  c⁻¹ · Y^{n−j} / A.
            &[j] => {
                let ci = coeffs[j].inv()?;
                let ai = a_k.inv()?;
                Ok(ci.mul(&ai).mul(&Self::radical_power(ctx, k, (n as usize - j) as u32)))
            }
            // Y^i (u + w·W) with W = Y^{j−i}; the geometric series gives
            // (1 + cW)⁻¹ = Σ (−cW)^l / (1 − (−c)^n A^{j−i}).
            &[i, j] => {
                let u_inv = coeffs[i].inv()?;
                let c = coeffs[j].ratio_in_base(&coeffs[i]).unwrap_or_else(|| coeffs[j].mul(&u_inv));
                let w = (j - i) as u32;
                let neg_c = c.neg();
                let mut series = Self::zero(ctx);
                let mut term = Self::one(ctx);
                for l in 0..n {
                    if l > 0 {
                        term = term.mul(&neg_c);
                    }
                    series = series.add(&term.mul(&Self::radical_power(ctx, k, (l * w as u64 % n) as u32)).mul(
                        &a_k.pow(l * w as u64 / n),
                    ));
                }
                let denom = Self::one(ctx).sub(&neg_c.pow(n).mul(&a_k.pow(w as u64)));
                if denom.is_zero() {
                    return Err(Error::SingularMultiplication(format!("{self:?} is a zero divisor")));
                }
                let y_inv_i = if i == 0 {
                    Self::one(ctx)
                } else {
                    Self::radical_power(ctx, k, (n as usize - i) as u32).mul(&a_k.inv()?)
                };
                Ok(y_inv_i.mul(&u_inv).mul(&series).mul(&denom.inv()?))
            }
            _ => self.inv_euclid(k, coeffs),
        }
    }

    /// Extended Euclid in `K′[Y]/(Y^n − A)` over the subtower `K′`.
    fn inv_euclid(&self, k: usize, coeffs: Vec<TowerElement>) -> Result<TowerElement> {
        let ctx = &self.ctx;
        let n = ctx.radicals()[k].order() as usize;
        let zero = Self::zero(ctx);
        let mut f = vec![zero.clone(); n + 1];
        f[0] = Self::from_poly(ctx, ctx.base(k).clone()).neg();
        f[n] = Self::one(ctx);
        let mut r0 = f;
        let mut r1 = trim(coeffs);
        let mut t0: Vec<TowerElement> = vec![];
        let mut t1: Vec<TowerElement> = vec![Self::one(ctx)];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1)?;
            let qt = poly_mul(&q, &t1);
            let t2 = poly_sub(&t0, &qt);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        if r0.len() != 1 {
            return Err(Error::SingularMultiplication(format!(
                "{self:?} shares a factor of degree {} with the radical's minimal polynomial",
                r0.len() - 1
            )));
        }
        let g_inv = r0[0].inv()?;
        let t: Vec<TowerElement> = t0.iter().map(|c| c.mul(&g_inv)).collect();
        Ok(Self::join_in_radical(ctx, k, &t))
    }

    pub fn div(&self, o: &TowerElement) -> Result<TowerElement> {
        Ok(self.mul(&o.inv()?))
    }

    /// Apply a map to every polynomial, keeping radical monomials fixed, in a
    /// possibly different context of the same radical count.
    pub fn map_into(&self, target: &Ctx, radical_map: impl Fn(&RadMono) -> RadMono, poly_map: impl Fn(&Poly) -> Poly) -> TowerElement {
        let terms: Vec<(RadMono, Poly)> = self.num.iter().map(|(m, p)| (radical_map(m), poly_map(p))).collect();
        Self::from_parts_factored(target, terms, self.den_factors.iter().map(poly_map).collect())
    }

    pub fn fmt_pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = self.ctx.var_names();
        let parts: Vec<String> = self
            .num
            .iter()
            .rev()
            .map(|(m, p)| {
                let mut s = format!("({})", p.fmt_with(&names));
                for (k, &e) in m.iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*Y[{}]^{e}", self.ctx.radicals()[k].name));
                    }
                }
                s
            })
            .collect();
        let body = parts.join(" + ");
        if self.den.is_one() {
            body
        } else {
            format!("[{body}] / ({})", self.den.fmt_with(&names))
        }
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_pretty())
    }
}

/// Cheap partial factorization: the monomial part, then contents with
/// respect to single variables, recursively. The last entry is the leading
/// coefficient; the others are monic.
fn split_factor(f: &Poly) -> Vec<Poly> {
    let mut out = split_monic(f);
    out.push(Poly::constant(f.nvars(), f.characteristic(), f.leading_coef()));
    out
}

fn split_monic(f: &Poly) -> Vec<Poly> {
    let (n, ch) = (f.nvars(), f.characteristic());
    if f.is_constant() {
        return vec![];
    }
    if f.num_terms() == 1 {
        return vec![f.monic()];
    }
    let m: Vec<u32> = (0..n).map(|v| f.min_degree_in(v)).collect();
    if m.iter().any(|&e| e > 0) {
        let xm = Poly::monomial(n, ch, m, Coef::one());
        let mut out = vec![xm.clone()];
        out.extend(split_monic(&f.div_exact(&xm).unwrap()));
        return out;
    }
    let vars = f.vars_used();
    if vars.len() < 2 || f.num_terms() > 400 {
        return vec![f.monic()];
    }
    for &v in &vars {
        let c = f.content_in(v);
        if !c.is_constant() {
            let mut out = split_monic(&c);
            out.extend(split_monic(&f.div_exact(&c).unwrap()));
            return out;
        }
    }
    vec![f.monic()]
}

fn accumulate(acc: &mut HashMap<RadMono, Poly>, m: RadMono, p: Poly) {
    match acc.get_mut(&m) {
        Some(q) => *q = q.add(&p),
        None => {
            acc.insert(m, p);
        }
    }
}

/// Reduce exponents below the orders; returns the accumulated factor
/// `∏ A_i^{⌊m_i/n_i⌋}` if any.
fn reduce_mono(ctx: &TowerCtx, mut m: RadMono) -> (RadMono, Option<Poly>) {
    let mut f: Option<Poly> = None;
    for (i, e) in m.iter_mut().enumerate() {
        let n = ctx.radicals()[i].order() as u32;
        if *e >= n {
            let q = *e / n;
            *e %= n;
            let a = ctx.base(i).pow(q as u64);
            f = Some(match f {
                Some(g) => g.mul(&a),
                None => a,
            });
        }
    }
    (m, f)
}

fn trim(mut v: Vec<TowerElement>) -> Vec<TowerElement> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[TowerElement], b: &[TowerElement]) -> Vec<TowerElement> {
    let n = a.len().max(b.len());
    let ctx = a.first().or(b.first()).map(|c| c.ctx.clone());
    let Some(ctx) = ctx else { return vec![] };
    let z = TowerElement::zero(&ctx);
    trim((0..n).map(|i| a.get(i).unwrap_or(&z).sub(b.get(i).unwrap_or(&z))).collect())
}

fn poly_mul(a: &[TowerElement], b: &[TowerElement]) -> Vec<TowerElement> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let ctx = a[0].ctx.clone();
    let mut out = vec![TowerElement::zero(&ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    trim(out)
}

fn poly_divmod(a: &[TowerElement], b: &[TowerElement]) -> Result<(Vec<TowerElement>, Vec<TowerElement>)> {
    let ctx = b[0].ctx.clone();
    let lead_inv = b.last().unwrap().inv()?;
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return Ok((vec![], trim(r)));
    }
    let mut q = vec![TowerElement::zero(&ctx); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let d = r.len() - 1 - db;
        let c = r.last().unwrap().mul(&lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[i + d] = r[i + d].sub(&c.mul(bi));
        }
        q[d] = c;
        r = trim(r);
    }
    Ok((trim(q), r))
}

/// `x_s^i = X_s^{p^{d_s − i}}`.
pub fn generator_var(ctx: &Ctx, s: usize, i: u32) -> Result<TowerElement> {
    let v = &ctx.vars()[s];
    if i > v.depth {
        return Err(Error::DepthExceeded { requested: i, available: v.depth });
    }
    let mut m = vec![0; ctx.nvars()];
    m[s] = v.prime.pow(v.depth - i) as u32;
    Ok(TowerElement::from_poly(ctx, Poly::monomial(ctx.nvars(), ctx.characteristic(), m, Coef::one())))
}

/// `y_k^i = Y_k^{p^{d_k − i}}`, reduced (so `y_k^0 = A_k`).
pub fn generator_radical(ctx: &Ctx, k: usize, i: u32) -> Result<TowerElement> {
    let r = &ctx.radicals()[k];
    if i > r.depth {
        return Err(Error::DepthExceeded { requested: i, available: r.depth });
    }
    let mut m = vec![0; ctx.nradicals()];
    m[k] = r.prime.pow(r.depth - i) as u32;
    let one = Poly::one(ctx.nvars(), ctx.characteristic());
    Ok(TowerElement::from_parts(ctx, [(m, one.clone())], one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::tower::{Depths, DEFAULT_DIM_CAP};
    use crate::graphs::{ColoredGraph, Graph};

    fn k2(edge: u32) -> Ctx {
        let cg = ColoredGraph::monochromatic(Graph::complete(2));
        Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge }, DEFAULT_DIM_CAP).unwrap())
    }

    #[test]
    fn defining_relations() {
        let ctx = k2(1);
        let xs = generator_var(&ctx, 0, 0).unwrap();
        let xt = generator_var(&ctx, 1, 0).unwrap();
        let xe = generator_radical(&ctx, 0, 0).unwrap();
        assert!(xe.sub(&xs.add(&xt).add(&TowerElement::one(&ctx))).is_zero());
        let xe1 = generator_radical(&ctx, 0, 1).unwrap();
        assert_eq!(xe1.pow(5), xe);
        assert_eq!(generator_var(&ctx, 0, 1).unwrap().pow(3), xs);
        assert!(generator_var(&ctx, 0, 2).is_err());
    }

    #[test]
    fn inverses() {
        let ctx = k2(1);
        let y = generator_radical(&ctx, 0, 1).unwrap();
        let one = TowerElement::one(&ctx);
        let x = generator_var(&ctx, 0, 1).unwrap();
        let cases = vec![
            y.clone(),
            one.add(&y),
            one.add(&y.pow(3)).add(&x.mul(&y.pow(2))),
            x.add(&y.pow(2)).add(&y.pow(1)).sub(&y.pow(4)),
            generator_radical(&ctx, 0, 0).unwrap(),
        ];
        for a in cases {
            let b = a.inv().unwrap();
            assert!(a.mul(&b).is_one(), "{a:?}");
        }
        assert!(TowerElement::zero(&ctx).inv().is_err());
    }

    #[test]
    fn two_radicals() {
        let cg = ColoredGraph::monochromatic(Graph::path(3));
        let ctx = Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP).unwrap());
        let y0 = generator_radical(&ctx, 0, 1).unwrap();
        let y1 = generator_radical(&ctx, 1, 1).unwrap();
        let one = TowerElement::one(&ctx);
        let a = one.add(&y0).mul(&one.sub(&y1.pow(2)));
        assert!(a.mul(&a.inv().unwrap()).is_one());
        let b = y1.pow(3).add(&TowerElement::int(&ctx, 2)).mul(&y0.pow(2));
        assert!(b.mul(&b.inv().unwrap()).is_one());
    }
}
