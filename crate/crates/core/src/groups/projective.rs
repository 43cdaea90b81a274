//! `PSL(2,q)`, `PGL(2,q)` and `PΓL(2,q)` as permutation groups of the
//! projective line `GF(q) ∪ {∞}`. Point `q` is `∞`.

use crate::error::{Error, Result};

use super::gf::GFq;
use super::group::{closure, PermGroup, DEFAULT_CLOSURE_CAP};
use super::perm::Perm;

/// Largest field order with a hard-coded modulus.
pub const MAX_Q: u64 = 16;

#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    pub field: GFq,
}

impl ProjectiveLine {
    pub fn new(q: u64) -> Result<Self> {
        if super::gf::prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        if q > MAX_Q {
            return Err(Error::BudgetExceeded(format!("q = {q} exceeds {MAX_Q}")));
        }
        Ok(ProjectiveLine { field: GFq::new(q)? })
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }
    pub fn infinity(&self) -> usize {
        self.q()
    }
    pub fn num_points(&self) -> usize {
        self.q() + 1
    }

    /// `x -> (a x + b) / (c x + d)`; `None` when the determinant vanishes.
    pub fn mobius(&self, a: usize, b: usize, c: usize, d: usize) -> Option<Perm> {
        let f = &self.field;
        if f.sub(f.mul(a, d), f.mul(b, c)) == 0 {
            return None;
        }
        let inf = self.infinity();
        let img: Vec<u32> = (0..self.num_points())
            .map(|x| {
                let (num, den) = if x == inf {
                    (a, c)
                } else {
                    (f.add(f.mul(a, x), b), f.add(f.mul(c, x), d))
                };
                if den == 0 {
                    inf as u32
                } else {
                    f.mul(num, f.inv(den).unwrap()) as u32
                }
            })
            .collect();
        Some(Perm::from_images(img).expect("Möbius maps are bijective"))
    }

    /// `x -> x^(p^k)`, fixing `∞`.
    pub fn frobenius_power(&self, k: u32) -> Perm {
        let f = &self.field;
        let img: Vec<u32> = (0..self.num_points())
            .map(|x| {
                if x == self.infinity() {
                    x as u32
                } else {
                    let mut y = x;
                    for _ in 0..k {
                        y = f.frobenius(y);
                    }
                    y as u32
                }
            })
            .collect();
        Perm::from_images(img).unwrap()
    }

    pub fn psl_generators(&self) -> Vec<Perm> {
        let f = &self.field;
        let w = f.primitive_element();
        let minus_one = f.neg(1);
        vec![
            self.mobius(1, 1, 0, 1).unwrap(),
            self.mobius(f.mul(w, w), 0, 0, 1).unwrap(),
            self.mobius(0, minus_one, 1, 0).unwrap(),
        ]
    }

    pub fn pgl_generators(&self) -> Vec<Perm> {
        let w = self.field.primitive_element();
        let minus_one = self.field.neg(1);
        vec![
            self.mobius(1, 1, 0, 1).unwrap(),
            self.mobius(w, 0, 0, 1).unwrap(),
            self.mobius(0, minus_one, 1, 0).unwrap(),
        ]
    }

    pub fn psl(&self) -> PermGroup {
        closure(self.num_points(), &self.psl_generators(), DEFAULT_CLOSURE_CAP).unwrap()
    }
    pub fn pgl(&self) -> PermGroup {
        closure(self.num_points(), &self.pgl_generators(), DEFAULT_CLOSURE_CAP).unwrap()
    }
    pub fn pgammal(&self) -> PermGroup {
        let mut g = self.pgl_generators();
        g.push(self.frobenius_power(1));
        closure(self.num_points(), &g, DEFAULT_CLOSURE_CAP).unwrap()
    }
    /// `Aut(GF(q))`, realized on the projective line.
    pub fn field_automorphisms(&self) -> PermGroup {
        closure(self.num_points(), &[self.frobenius_power(1)], DEFAULT_CLOSURE_CAP).unwrap()
    }
}

pub fn psl2(q: u64) -> Result<PermGroup> {
    Ok(ProjectiveLine::new(q)?.psl())
}
pub fn pgl2(q: u64) -> Result<PermGroup> {
    Ok(ProjectiveLine::new(q)?.pgl())
}
pub fn pgammal2(q: u64) -> Result<PermGroup> {
    Ok(ProjectiveLine::new(q)?.pgammal())
}

/// `q(q^2-1)/gcd(2, q-1)`
pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / num_integer::gcd(2, q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formulas() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let line = ProjectiveLine::new(q).unwrap();
            assert_eq!(line.psl().order() as u64, psl2_order(q), "PSL(2,{q})");
            assert_eq!(line.pgl().order() as u64, q * (q * q - 1), "PGL(2,{q})");
            let k = line.field.degree() as u64;
            assert_eq!(line.pgammal().order() as u64, k * q * (q * q - 1));
        }
        assert_eq!(psl2(4).unwrap().order(), 60);
        assert_eq!(pgl2(5).unwrap().order(), 120);
        assert_eq!(pgammal2(4).unwrap().order(), 120);
        assert!(matches!(psl2(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn psl_is_normal_in_pgammal() {
        let line = ProjectiveLine::new(9).unwrap();
        assert!(line.psl().is_normal_in(&line.pgammal()));
        assert!(line.pgl().is_normal_in(&line.pgammal()));
    }
}
