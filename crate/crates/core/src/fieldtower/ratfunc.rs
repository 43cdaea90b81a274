//! Rational functions in canonical form: coprime numerator and denominator,
//! denominator with leading coefficient 1.

use std::fmt;

use crate::error::{Error, Result};

use super::poly::{coef_inv, gcd, Coef, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc { den: Poly::one(num.nvars(), num.characteristic()), num };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.leading_coef();
        if !num_traits::One::is_one(&lc) {
            let inv = coef_inv(&lc, d.characteristic()).unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: Poly) -> Self {
        let d = Poly::one(p.nvars(), p.characteristic());
        RatFunc { num: p, den: d }
    }

    pub fn zero(nvars: usize, ch: u32) -> Self {
        Self::from_poly(Poly::zero(nvars, ch))
    }
    pub fn one(nvars: usize, ch: u32) -> Self {
        Self::from_poly(Poly::one(nvars, ch))
    }
    pub fn constant(nvars: usize, ch: u32, c: Coef) -> Self {
        Self::from_poly(Poly::constant(nvars, ch, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }
    pub fn characteristic(&self) -> u32 {
        self.num.characteristic()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::normalize(self.num.add(&o.num), self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        Self::normalize(num, a.mul(&o.den))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars(), self.characteristic());
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n = self.num.div_exact(&g1).unwrap().mul(&o.num.div_exact(&g2).unwrap());
        let d = self.den.div_exact(&g2).unwrap().mul(&o.den.div_exact(&g1).unwrap());
        let lc = d.leading_coef();
        let inv = coef_inv(&lc, d.characteristic()).unwrap();
        RatFunc { num: n.scale(&inv), den: d.scale(&inv) }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &Coef) -> RatFunc {
        if num_traits::Zero::is_zero(c) {
            return Self::zero(self.nvars(), self.characteristic());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Apply a variable substitution to numerator and denominator.
    pub fn map_polys(&self, f: impl Fn(&Poly) -> Poly) -> RatFunc {
        Self::normalize(f(&self.num), f(&self.den))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.fmt_with(names);
        }
        format!("({})/({})", self.num.fmt_with(names), self.den.fmt_with(names))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RatFunc {
        RatFunc::from_poly(Poly::var(2, 0, 0))
    }
    fn c(v: i64) -> RatFunc {
        RatFunc::from_poly(Poly::int(2, 0, v))
    }

    #[test]
    fn field_identities() {
        let a = x().add(&c(1)).div(&x()).unwrap();
        let b = x().div(&x().add(&c(1))).unwrap();
        assert!(a.mul(&b).is_one());
        let s = c(1).div(&x().sub(&c(1))).unwrap().add(&c(1).div(&x().add(&c(1))).unwrap());
        let expect = x().scale(&num_rational::BigRational::from_integer(2.into())).div(&x().mul(&x()).sub(&c(1))).unwrap();
        assert_eq!(s, expect);
        assert!(c(0).inv().is_err());
        assert!(RatFunc::new(Poly::one(2, 0), Poly::zero(2, 0)).is_err());
    }

    #[test]
    fn canonical_form() {
        let p = Poly::var(2, 0, 0).mul(&Poly::var(2, 0, 1));
        let q = Poly::var(2, 0, 1).scale(&num_rational::BigRational::from_integer(3.into()));
        let r = RatFunc::new(p, q).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num().terms()[0].1, num_rational::BigRational::new(1.into(), 3.into()));
    }
}
