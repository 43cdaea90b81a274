//! Sparse multivariate polynomials over `ℚ` or `F_r` with exact
//! coefficients, deglex order, exact division and gcd.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients. In characteristic `r > 0` they are kept as integers in
/// `0..r`.
pub type Coef = BigRational;

/// Exponent vector, one entry per variable.
pub type Mono = Vec<u32>;

pub fn coef_int(v: i64) -> Coef {
    BigRational::from_integer(BigInt::from(v))
}

pub fn coef_reduce(c: Coef, ch: u32) -> Coef {
    if ch == 0 {
        return c;
    }
    let r = BigInt::from(ch);
    let num = c.numer().mod_floor(&r);
    let den = c.denom().mod_floor(&r);
    let inv = mod_inverse(&den, &r).expect("denominator invertible mod r");
    BigRational::from_integer((num * inv).mod_floor(&r))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn coef_add(a: &Coef, b: &Coef, ch: u32) -> Coef {
    let s = a + b;
    if ch == 0 {
        s
    } else {
        coef_reduce(s, ch)
    }
}

pub fn coef_mul(a: &Coef, b: &Coef, ch: u32) -> Coef {
    let s = a * b;
    if ch == 0 {
        s
    } else {
        coef_reduce(s, ch)
    }
}

pub fn coef_neg(a: &Coef, ch: u32) -> Coef {
    if ch == 0 {
        -a
    } else {
        coef_reduce(-a, ch)
    }
}

pub fn coef_inv(a: &Coef, ch: u32) -> Option<Coef> {
    if a.is_zero() {
        return None;
    }
    if ch == 0 {
        Some(a.recip())
    } else {
        let r = BigInt::from(ch);
        mod_inverse(a.numer(), &r).map(BigRational::from_integer)
    }
}

/// Deglex comparison; variable 0 is the most significant.
pub fn cmp_mono(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Monomial ordered by deglex.
#[derive(Clone, PartialEq, Eq)]
struct DegLex(Mono);

impl Ord for DegLex {
    fn cmp(&self, o: &Self) -> Ordering {
        cmp_mono(&self.0, &o.0)
    }
}
impl PartialOrd for DegLex {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    ch: u32,
    /// Nonzero terms, strictly decreasing in deglex.
    terms: Vec<(Mono, Coef)>,
}

impl Poly {
    pub fn zero(nvars: usize, ch: u32) -> Self {
        Poly { nvars, ch, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, ch: u32, c: Coef) -> Self {
        let c = coef_reduce(c, ch);
        if c.is_zero() {
            return Self::zero(nvars, ch);
        }
        Poly { nvars, ch, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn one(nvars: usize, ch: u32) -> Self {
        Self::constant(nvars, ch, Coef::one())
    }

    pub fn int(nvars: usize, ch: u32, v: i64) -> Self {
        Self::constant(nvars, ch, coef_int(v))
    }

    pub fn var(nvars: usize, ch: u32, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(nvars, ch, m, Coef::one())
    }

    pub fn monomial(nvars: usize, ch: u32, m: Mono, c: Coef) -> Self {
        assert_eq!(m.len(), nvars);
        let c = coef_reduce(c, ch);
        if c.is_zero() {
            return Self::zero(nvars, ch);
        }
        Poly { nvars, ch, terms: vec![(m, c)] }
    }

    /// Build from arbitrary terms; combines duplicates and drops zeros.
    pub fn from_terms(nvars: usize, ch: u32, terms: impl IntoIterator<Item = (Mono, Coef)>) -> Self {
        let mut acc: HashMap<Mono, Coef> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            let e = acc.entry(m).or_insert_with(Coef::zero);
            *e = &*e + c;
        }
        Self::from_map(nvars, ch, acc)
    }

    fn from_map(nvars: usize, ch: u32, acc: HashMap<Mono, Coef>) -> Self {
        let mut terms: Vec<(Mono, Coef)> = acc
            .into_iter()
            .map(|(m, c)| (m, coef_reduce(c, ch)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        terms.sort_by(|a, b| cmp_mono(&b.0, &a.0));
        Poly { nvars, ch, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn characteristic(&self) -> u32 {
        self.ch
    }
    pub fn terms(&self) -> &[(Mono, Coef)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0) && self.terms[0].1.is_one()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }
    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Coef> {
        if self.is_zero() {
            return Some(Coef::zero());
        }
        self.is_constant().then(|| self.terms[0].1.clone())
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn leading(&self) -> Option<&(Mono, Coef)> {
        self.terms.first()
    }
    pub fn leading_coef(&self) -> Coef {
        self.terms.first().map_or_else(Coef::zero, |t| t.1.clone())
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.iter().sum::<u32>()).max().unwrap_or(0)
    }
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[v]).max().unwrap_or(0)
    }
    /// Lowest exponent of variable `v` over all terms (0 for the zero poly).
    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[v]).min().unwrap_or(0)
    }
    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[v] > 0)
    }
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }

    fn same_ring(&self, o: &Poly) {
        debug_assert_eq!(self.nvars, o.nvars);
        debug_assert_eq!(self.ch, o.ch);
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.same_ring(o);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            match cmp_mono(&self.terms[i].0, &o.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = coef_add(&self.terms[i].1, &o.terms[j].1, self.ch);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Poly { nvars: self.nvars, ch: self.ch, terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            ch: self.ch,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), coef_neg(c, self.ch))).collect(),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Coef) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.ch);
        }
        Poly {
            nvars: self.nvars,
            ch: self.ch,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), coef_mul(c, d, self.ch))).collect(),
        }
    }

    /// Multiply by the monomial `c·x^m`.
    pub fn mul_term(&self, m: &[u32], c: &Coef) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.ch);
        }
        Poly {
            nvars: self.nvars,
            ch: self.ch,
            terms: self
                .terms
                .iter()
                .map(|(a, d)| (a.iter().zip(m).map(|(x, y)| x + y).collect(), coef_mul(c, d, self.ch)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        self.same_ring(o);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.nvars, self.ch);
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.ch == 0 {
            let (a, da) = self.integerized();
            let (b, db) = o.integerized();
            let mut acc: HashMap<Mono, BigInt> = HashMap::with_capacity(a.len() * b.len());
            for (ma, ca) in &a {
                for (mb, cb) in &b {
                    let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                    *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
            let den = da * db;
            let mut terms: Vec<(Mono, Coef)> = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, BigRational::new(c, den.clone())))
                .collect();
            terms.sort_by(|a, b| cmp_mono(&b.0, &a.0));
            return Poly { nvars: self.nvars, ch: 0, terms };
        }
        let mut acc: HashMap<Mono, Coef> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let e = acc.entry(m).or_insert_with(Coef::zero);
                *e = &*e + ca * cb;
            }
        }
        Self::from_map(self.nvars, self.ch, acc)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars, self.ch);
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

    /// Divide out the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&coef_inv(c, self.ch).unwrap()),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.same_ring(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        if d.is_constant() {
            return Some(self.scale(&coef_inv(&d.terms[0].1, self.ch).unwrap()));
        }
        if self.ch == 0 {
            return self.div_exact_int(d);
        }
        let (ld, lc) = d.terms[0].clone();
        let lc_inv = coef_inv(&lc, self.ch).unwrap();
        let mut q: Vec<(Mono, Coef)> = Vec::new();
        let mut r: BTreeMap<DegLex, Coef> = self.terms.iter().map(|(m, c)| (DegLex(m.clone()), c.clone())).collect();
        while let Some((DegLex(lm), c)) = r.pop_last() {
            if lm.iter().zip(&ld).any(|(a, b)| a < b) {
                return None;
            }
            let m: Mono = lm.iter().zip(&ld).map(|(a, b)| a - b).collect();
            let t = coef_mul(&c, &lc_inv, self.ch);
            for (dm, dc) in &d.terms[1..] {
                let key = DegLex(dm.iter().zip(&m).map(|(x, y)| x + y).collect());
                let sub = coef_neg(&coef_mul(dc, &t, self.ch), self.ch);
                match r.entry(key) {
                    Entry::Occupied(mut e) => {
                        let v = coef_add(e.get(), &sub, self.ch);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(sub);
                    }
                }
            }
            q.push((m, t));
        }
        Some(Poly { nvars: self.nvars, ch: self.ch, terms: q })
    }

    /// Integer terms `T` and a positive integer `δ` with `self = T/δ`.
    fn integerized(&self) -> (Vec<(Mono, BigInt)>, BigInt) {
        let den = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom()))).collect();
        (terms, den)
    }

    /// Division over `ℤ` after clearing denominators; by Gauss's lemma the
    /// quotient by a primitive divisor is integral.
    fn div_exact_int(&self, d: &Poly) -> Option<Poly> {
        let (s, ds) = self.integerized();
        let (dt, dd) = d.integerized();
        let cont = dt.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let dt: Vec<(Mono, BigInt)> = dt.into_iter().map(|(m, c)| (m, c / &cont)).collect();
        let (ld, lc) = dt[0].clone();
        let mut q: Vec<(Mono, BigInt)> = Vec::new();
        let mut r: BTreeMap<DegLex, BigInt> = s.into_iter().map(|(m, c)| (DegLex(m), c)).collect();
        while let Some((DegLex(lm), c)) = r.pop_last() {
            if lm.iter().zip(&ld).any(|(a, b)| a < b) {
                return None;
            }
            let (t, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let m: Mono = lm.iter().zip(&ld).map(|(a, b)| a - b).collect();
            for (dm, dc) in &dt[1..] {
                let key = DegLex(dm.iter().zip(&m).map(|(x, y)| x + y).collect());
                let sub = dc * &t;
                match r.entry(key) {
                    Entry::Occupied(mut e) => {
                        *e.get_mut() -= sub;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(-sub);
                    }
                }
            }
            q.push((m, t));
        }
        // self/d = (S/ds) / (D'·cont/dd)
        let f = BigRational::new(dd, ds * cont);
        let terms = q.into_iter().map(|(m, t)| (m, BigRational::from_integer(t) * &f)).collect();
        Some(Poly { nvars: self.nvars, ch: 0, terms })
    }

    /// Coefficients with respect to variable `v`: entry `k` multiplies `x_v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut parts: Vec<Vec<(Mono, Coef)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2[v] = 0;
            parts[m[v] as usize].push((m2, c.clone()));
        }
        parts
            .into_iter()
            .map(|t| {
                let mut p = Poly { nvars: self.nvars, ch: self.ch, terms: t };
                p.terms.sort_by(|a, b| cmp_mono(&b.0, &a.0));
                p
            })
            .collect()
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    pub fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero(self.nvars, self.ch);
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Pseudo-remainder of `self` by `b` as polynomials in `x_v`.
    fn prem(&self, b: &Poly, v: usize) -> Poly {
        let db = b.degree_in(v);
        let lb = b.coeffs_in(v).pop().unwrap();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.coeffs_in(v).pop().unwrap();
            let mut shift = vec![0; self.nvars];
            shift[v] = dr - db;
            let t = lr.mul(&b.mul_term(&shift, &Coef::one()));
            r = lb.mul(&r).sub(&t);
        }
        r
    }

    /// Substitute `x_i ↦ x_i^{k_i}`.
    pub fn inflate(&self, k: &[u32]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().zip(k).map(|(e, f)| e * f).collect::<Mono>(), c.clone()))
            .collect();
        // Scaling exponents preserves deglex only when all k are equal.
        let mut p = Poly { nvars: self.nvars, ch: self.ch, terms };
        p.terms.sort_by(|a, b| cmp_mono(&b.0, &a.0));
        p
    }

    /// Substitute `x_i ↦ x_i^{1/k_i}`; `None` if some exponent is not
    /// divisible.
    pub fn deflate(&self, k: &[u32]) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m2 = Vec::with_capacity(m.len());
            for (e, f) in m.iter().zip(k) {
                if e % f != 0 {
                    return None;
                }
                m2.push(e / f);
            }
            terms.push((m2, c.clone()));
        }
        let mut p = Poly { nvars: self.nvars, ch: self.ch, terms };
        p.terms.sort_by(|a, b| cmp_mono(&b.0, &a.0));
        Some(p)
    }

    /// Rename variables: variable `i` becomes variable `map[i]` in a ring
    /// with `nvars` variables.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = vec![0; nvars];
                for (i, &e) in m.iter().enumerate() {
                    m2[map[i]] += e;
                }
                (m2, c.clone())
            })
            .collect::<Vec<_>>();
        Poly::from_terms(nvars, self.ch, terms)
    }

    /// Substitute polynomials for variables.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut acc = Poly::zero(nv, self.ch);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nv, self.ch, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial derivative in `x_v`.
    pub fn derivative(&self, v: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[v] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[v] -= 1;
                (m2, c * coef_int(m[v] as i64))
            })
            .collect::<Vec<_>>();
        Poly::from_terms(self.nvars, self.ch, terms)
    }

    /// Value at an integer point modulo a prime `q`; `None` if a coefficient
    /// denominator vanishes mod `q`.
    pub fn eval_mod(&self, point: &[u64], q: u64) -> Option<u64> {
        let qb = BigInt::from(q);
        let mut acc: u128 = 0;
        for (m, c) in &self.terms {
            let num = c.numer().mod_floor(&qb).to_u64().unwrap();
            let den = c.denom().mod_floor(&qb);
            let dinv = mod_inverse(&den, &qb)?.to_u64().unwrap();
            let mut t = (num as u128 * dinv as u128) % q as u128;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t * pow_mod(point[i], e as u64, q) as u128 % q as u128;
                }
            }
            acc = (acc + t) % q as u128;
        }
        Some(acc as u64)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Coef]) -> Coef {
        let mut acc = Coef::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        coef_reduce(acc, self.ch)
    }

    /// Lowest common multiple of coefficient denominators and gcd of
    /// numerators, as a rational scaling that makes the polynomial primitive
    /// over `ℤ`. Characteristic `r > 0` returns 1.
    /// `self` divided by its rational content: integer coefficients with
    /// gcd 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Poly {
        if self.ch != 0 || self.is_zero() {
            return self.clone();
        }
        let mut c = self.integer_content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn integer_content(&self) -> Coef {
        if self.ch != 0 || self.is_zero() {
            return Coef::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        BigRational::new(num, den)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let is_const = m.iter().all(|&e| e == 0);
            if !a.is_one() || is_const {
                s.push_str(&a.to_string());
            }
            let mut first = a.is_one();
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                s.push_str(&names[v]);
                if e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut base = b as u128 % m128;
    let mut acc: u128 = 1 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

fn max_norm(p: &Poly) -> BigInt {
    p.terms.iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// Symmetric residue of `c` modulo `m`.
fn smod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Substitute the integer `xi` for `x_v`.
fn eval_var_int(p: &Poly, v: usize, xi: &BigInt) -> Poly {
    let mut acc: HashMap<Mono, Coef> = HashMap::new();
    for (m, c) in &p.terms {
        let mut m2 = m.clone();
        m2[v] = 0;
        let val = c * BigRational::from_integer(num_traits::pow(xi.clone(), m[v] as usize));
        let e = acc.entry(m2).or_insert_with(Coef::zero);
        *e += val;
    }
    Poly::from_map(p.nvars, p.ch, acc)
}

/// Undo `eval_var_int` by expanding every coefficient in base `xi` with
/// symmetric digits.
fn xi_adic(g: &Poly, v: usize, xi: &BigInt, max_deg: u32) -> Option<Poly> {
    let mut out: Vec<(Mono, Coef)> = vec![];
    let mut rest: Vec<(Mono, BigInt)> = g.terms.iter().map(|(m, c)| (m.clone(), c.numer().clone())).collect();
    let mut i = 0u32;
    while !rest.is_empty() {
        if i > max_deg {
            return None;
        }
        let mut next = vec![];
        for (m, c) in rest {
            let d = smod(&c, xi);
            if !d.is_zero() {
                let mut m2 = m.clone();
                m2[v] = i;
                out.push((m2, BigRational::from_integer(d.clone())));
            }
            let q = (c - d) / xi;
            if !q.is_zero() {
                next.push((m, q));
            }
        }
        rest = next;
        i += 1;
    }
    Some(Poly::from_terms(g.nvars, g.ch, out))
}

/// Heuristic gcd over `ℤ` by evaluation at a large integer and `ξ`-adic
/// reconstruction, recursive in the variables. Inputs have integer
/// coefficients; `None` when the heuristic gives up.
fn heu_gcd(a: &Poly, b: &Poly, depth: usize) -> Option<Poly> {
    let (n, ch) = (a.nvars, a.ch);
    let int_gcd = |x: &Poly, y: &Poly| {
        let c = x.integer_content().numer().gcd(y.integer_content().numer());
        Poly::constant(n, ch, BigRational::from_integer(c))
    };
    if a.is_constant() || b.is_constant() {
        return Some(int_gcd(a, b));
    }
    let vb = b.vars_used();
    let Some(v) = a.vars_used().into_iter().find(|v| vb.contains(v)) else {
        return Some(int_gcd(a, b));
    };
    let max_deg = a.degree_in(v).min(b.degree_in(v));
    let mut xi: BigInt = max_norm(a).min(max_norm(b)) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * (a.degree_in(v).max(b.degree_in(v)) as u64 + 1) > 40_000 || depth > 12 {
            return None;
        }
        let ea = eval_var_int(a, v, &xi);
        let eb = eval_var_int(b, v, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            if let Some(g) = heu_gcd(&ea, &eb, depth + 1) {
                if let Some(cand) = xi_adic(&g, v, &xi, max_deg) {
                    if !cand.is_zero() {
                        let cand = cand.primitive_integer();
                        if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                            return Some(cand.mul(&int_gcd(a, b)));
                        }
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Image of `p` in `F_q[x_v]` after evaluating the other variables at
/// `point`; `None` if a coefficient denominator vanishes mod `q`.
fn univariate_image(p: &Poly, v: usize, point: &[u64], q: u64) -> Option<Vec<u64>> {
    let qb = BigInt::from(q);
    let mut out = vec![0u64; p.degree_in(v) as usize + 1];
    for (m, c) in &p.terms {
        let num = c.numer().mod_floor(&qb).to_u64().unwrap();
        let den = c.denom().mod_floor(&qb);
        let dinv = mod_inverse(&den, &qb)?.to_u64().unwrap();
        let mut t = num as u128 * dinv as u128 % q as u128;
        for (i, &e) in m.iter().enumerate() {
            if i != v && e > 0 {
                t = t * pow_mod(point[i], e as u64, q) as u128 % q as u128;
            }
        }
        let slot = &mut out[m[v] as usize];
        *slot = ((*slot as u128 + t) % q as u128) as u64;
    }
    Some(out)
}

fn trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Degree of the gcd of two dense polynomials over `F_q`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    loop {
        if b.len() == 1 && b[0] == 0 {
            return a.len() - 1;
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = pow_mod(*b.last().unwrap(), q - 2, q) as u128;
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let f = *a.last().unwrap() as u128 * inv % q as u128;
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                let sub = f * c as u128 % q as u128;
                a[i + shift] = ((a[i + shift] as u128 + q as u128 - sub) % q as u128) as u64;
            }
            a.pop();
            if a.is_empty() {
                a.push(0);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Proves that `gcd(a, b)` has degree 0 in `x_v` by specializing the other
/// variables modulo a prime. `false` means "not proved".
fn coprime_in(a: &Poly, b: &Poly, v: usize) -> bool {
    let q: u64 = if a.ch > 0 { a.ch as u64 } else { 2_305_843_009_213_693_951 };
    if q < 3 {
        return false;
    }
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15 ^ v as u64;
    for _ in 0..4 {
        let point: Vec<u64> = (0..a.nvars)
            .map(|_| {
                seed = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                (seed >> 11) % q
            })
            .collect();
        let (Some(ia), Some(ib)) = (univariate_image(a, v, &point, q), univariate_image(b, v, &point, q)) else {
            continue;
        };
        // The degree drops only if a leading coefficient vanishes.
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        if gcd_degree_mod(ia, ib, q) == 0 {
            return true;
        }
    }
    false
}

/// Remainder of `a` modulo `b` in `F_q[x]`, dense, `b` with nonzero lead.
fn rem_mod(mut a: Vec<u64>, b: &[u64], q: u64) -> Vec<u64> {
    let inv = pow_mod(*b.last().unwrap(), q - 2, q) as u128;
    trim(&mut a);
    while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
        let f = *a.last().unwrap() as u128 * inv % q as u128;
        let shift = a.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            let sub = f * c as u128 % q as u128;
            a[i + shift] = ((a[i + shift] as u128 + q as u128 - sub) % q as u128) as u64;
        }
        a.pop();
        if a.is_empty() {
            a.push(0);
        }
        trim(&mut a);
    }
    a
}

/// `false` only if `f` certainly does not divide `n`; checked on a
/// univariate image modulo a large prime. Characteristic `> 0` always
/// answers `true`.
pub fn may_divide(f: &Poly, n: &Poly) -> bool {
    if n.is_zero() || f.is_constant() || f.ch > 0 {
        return true;
    }
    let Some(v) = f.vars_used().into_iter().max_by_key(|&v| f.degree_in(v)) else { return true };
    if n.degree_in(v) < f.degree_in(v) {
        return false;
    }
    let q: u64 = 2_305_843_009_213_693_951;
    let mut seed: u64 = 0x2545_f491_4f6c_dd1d ^ v as u64;
    let point: Vec<u64> = (0..f.nvars)
        .map(|_| {
            seed = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            (seed >> 11) % q
        })
        .collect();
    let (Some(mut fi), Some(ni)) = (univariate_image(f, v, &point, q), univariate_image(n, v, &point, q)) else {
        return true;
    };
    trim(&mut fi);
    if fi.len() as u32 != f.degree_in(v) + 1 {
        return true;
    }
    let r = rem_mod(ni, &fi, q);
    r.len() == 1 && r[0] == 0
}

/// `gcd(a, b) = 1`, proven by modular images; `false` means "not proved".
pub fn proven_coprime(a: &Poly, b: &Poly) -> bool {
    if a.is_constant() || b.is_constant() {
        return true;
    }
    let vb = b.vars_used();
    a.vars_used().into_iter().filter(|v| vb.contains(v)).all(|v| coprime_in(a, b, v))
}

/// Monic gcd (leading coefficient 1 in deglex). `gcd(0,0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars, a.ch);
    }
    if a == b {
        return a.monic();
    }
    // Monomial factor common to both.
    if a.terms.len() == 1 || b.terms.len() == 1 {
        let (mono, other) = if a.terms.len() == 1 { (a, b) } else { (b, a) };
        let m: Mono = (0..a.nvars).map(|v| mono.terms[0].0[v].min(other.min_degree_in(v))).collect();
        return Poly::monomial(a.nvars, a.ch, m, Coef::one());
    }
    let va = a.vars_used();
    let vb = b.vars_used();
    let shared: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    if shared.is_empty() {
        // A common factor would have to use a variable of both.
        return Poly::one(a.nvars, a.ch);
    }
    if shared.iter().all(|&v| coprime_in(a, b, v)) {
        return Poly::one(a.nvars, a.ch);
    }
    if a.ch == 0 {
        if let Some(g) = heu_gcd(&a.primitive_integer(), &b.primitive_integer(), 0) {
            return g.monic();
        }
    }
    if a.terms.len() <= b.terms.len() {
        if b.div_exact(a).is_some() {
            return a.monic();
        }
    } else if a.div_exact(b).is_some() {
        return b.monic();
    }
    let v = *shared.iter().min_by_key(|&&v| a.degree_in(v).min(b.degree_in(v))).unwrap();
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).unwrap();
    let mut q = b.div_exact(&cb).unwrap();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.degree_in(v) == 0 {
            break Poly::one(a.nvars, a.ch);
        }
        let r = p.prem(&q, v);
        if r.is_zero() {
            break q;
        }
        let rc = r.content_in(v);
        p = q;
        q = r.div_exact(&rc).unwrap().monic();
    };
    let g = g.div_exact(&g.content_in(v)).unwrap();
    c.mul(&g).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, 0, i)
    }
    fn c(v: i64) -> Poly {
        Poly::int(3, 0, v)
    }

    #[test]
    fn arithmetic_and_division() {
        let p = x(0).add(&c(1)).mul(&x(1).sub(&c(2)));
        let q = p.div_exact(&x(0).add(&c(1))).unwrap();
        assert_eq!(q, x(1).sub(&c(2)));
        assert!(p.div_exact(&x(2)).is_none());
        assert_eq!(x(0).add(&x(1)).sub(&x(1)), x(0));
    }

    #[test]
    fn gcds() {
        let f = x(0).add(&x(1)).add(&c(1));
        let g = x(0).sub(&x(2));
        let h = x(1).mul(&x(1)).add(&c(3));
        let a = f.mul(&g).mul(&h);
        let b = f.mul(&h).mul(&x(2).add(&c(5)));
        assert_eq!(gcd(&a, &b), f.mul(&h).monic());
        assert!(gcd(&f, &g).is_one());
        let m = x(0).mul(&x(0)).mul(&x(1));
        assert_eq!(gcd(&m, &x(0).mul(&x(0).add(&c(1)))), x(0));
    }

    #[test]
    fn finite_characteristic() {
        let y = Poly::var(1, 3, 0);
        let one = Poly::one(1, 3);
        // (y+1)^3 = y^3 + 1 in characteristic 3.
        assert_eq!(y.add(&one).pow(3), y.pow(3).add(&one));
        let a = y.pow(3).sub(&one);
        let b = y.pow(2).sub(&one);
        assert_eq!(gcd(&a, &b), y.sub(&one));
    }

    #[test]
    fn inflate_deflate() {
        let p = x(0).mul(&x(1)).add(&c(2));
        let k = [3, 2, 1];
        assert_eq!(p.inflate(&k).deflate(&k).unwrap(), p);
        assert!(x(0).deflate(&k).is_none());
    }
}
