//! Small finite fields `GF(p^k)` with `q <= 16`, realized by lookup tables.

use crate::error::{Error, Result};

/// Fixed irreducible moduli (coefficients low degree first, monic) for the
/// prime-power orders we support.
fn modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    Some(match (p, k) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],    // x^2 + x + 1
        (2, 3) => vec![1, 1, 0, 1], // x^3 + x + 1
        (2, 4) => vec![1, 1, 0, 0, 1], // x^4 + x + 1
        (3, 2) => vec![2, 2, 1],    // x^2 + 2x + 2
        _ => return None,
    })
}

/// Factor `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

/// `GF(q)`; elements are `0..q`, encoded as base-`p` digit vectors of the
/// residue polynomial. Element 0 is zero and element 1 is one.
#[derive(Clone, Debug)]
pub struct GFq {
    p: u32,
    k: u32,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl GFq {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let m = modulus(p, k).ok_or_else(|| {
            Error::BudgetExceeded(format!("GF({q}) is outside the supported table (q <= 16)"))
        })?;
        let q = q as usize;
        let digits = |x: usize| -> Vec<u32> {
            let mut d = Vec::with_capacity(k as usize);
            let mut x = x;
            for _ in 0..k {
                d.push((x % p as usize) as u32);
                x /= p as usize;
            }
            d
        };
        let undigits = |d: &[u32]| -> usize {
            d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s) as u8;
                // schoolbook product then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (t, mc) in m.iter().enumerate().take(k as usize) {
                            let idx = deg - k as usize + t;
                            prod[idx] = (prod[idx] + (p - c) * mc) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = undigits(&prod[..k as usize]) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field") as u8;
        }
        Ok(GFq { p, k, q, add, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.q
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.k
    }
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }
    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }
    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }
    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p as u64)
    }
    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        (1..self.q)
            .find(|&g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    ord += 1;
                }
                ord == self.q - 1
            })
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert!(matches!(GFq::new(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = GFq::new(q).unwrap();
            let q = q as usize;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    for c in 0..q {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            // Frobenius is additive and has order k
            let fr = |x| f.frobenius(x);
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
                }
                let mut x = a;
                for _ in 0..f.degree() {
                    x = fr(x);
                }
                assert_eq!(x, a);
            }
            assert_eq!(f.pow(f.primitive_element(), q as u64 - 1), 1);
        }
    }
}
