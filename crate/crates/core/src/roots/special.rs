//! Specialization to `F_q`. The prime `q` is `1 mod p` and `≢ 1 mod ℓ` for
//! every other generator prime `ℓ`, so `ℓ`-th roots in `F_q` are unique and
//! the map extends to every deeper truncation. Generators of prime `p` take
//! values in the prime-to-`p` part `H_p` of `F_q^×`, on which `p`-th roots
//! are unique as well. A `p`-th root in the infinite tower would therefore
//! specialize to a `p`-th root in `F_q`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldtower::checks::rng;
use crate::fieldtower::poly::pow_mod;
use crate::fieldtower::primes::is_prime;
use crate::fieldtower::TowerElement;

use super::Certificate;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SpecialOutcome {
    Refuted { certificate: Certificate },
    Consistent { defined_trials: usize },
}

/// Attempts at a defined point per trial.
const RETRIES: usize = 20;

fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Smallest admissible prime `q ≥ start`.
fn admissible_prime(p: u64, others: &[u64], start: u64) -> Result<u64> {
    let mut q = start - start % p + 1;
    for _ in 0..2_000_000 {
        if q >= start && is_prime(q) && !others.contains(&q) && q != p && others.iter().all(|&l| (q - 1) % l != 0) {
            return Ok(q);
        }
        q += p;
    }
    Err(Error::BadPrime)
}

/// Split `q − 1 = p^v · m` with `p ∤ m`.
fn split(q: u64, p: u64) -> (u64, u64) {
    let (mut pv, mut m) = (1, q - 1);
    while m % p == 0 {
        m /= p;
        pv *= p;
    }
    (pv, m)
}

pub fn specialization_refute(a: &TowerElement, p: u64, trials: usize, seed: u64) -> Result<SpecialOutcome> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ctx = a.ctx();
    if ctx.characteristic() != 0 {
        return Err(Error::UnsupportedCharacteristic(ctx.characteristic()));
    }
    let mut others: Vec<u64> =
        ctx.vars().iter().map(|v| v.prime).chain(ctx.radicals().iter().map(|r| r.prime)).filter(|&l| l != p).collect();
    others.sort_unstable();
    others.dedup();
    let mut defined = 0;
    for t in 0..trials {
        let mut r = rng(seed ^ (t as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let q = admissible_prime(p, &others, r.gen_range(1u64 << 20..1u64 << 28))?;
        let (pv, m) = split(q, p);
        let h_p = |r: &mut rand_chacha::ChaCha8Rng| pow_mod(r.gen_range(1..q), pv, q);
        'retry: for _ in 0..RETRIES {
            let point: Vec<u64> = ctx
                .vars()
                .iter()
                .map(|v| if v.prime == p { h_p(&mut r) } else { r.gen_range(1..q) })
                .collect();
            let mut ys = Vec::with_capacity(ctx.nradicals());
            for (f, rad) in ctx.radicals().iter().enumerate() {
                let Some(av) = ctx.base(f).eval_mod(&point, q) else { continue 'retry };
                if av == 0 {
                    continue 'retry;
                }
                let y = if rad.prime == p {
                    if pow_mod(av, m, q) != 1 {
                        continue 'retry;
                    }
                    pow_mod(av, mod_inv(rad.order() % m, m).unwrap_or(1), q)
                } else {
                    pow_mod(av, mod_inv(rad.order(), q - 1).expect("order prime to q-1"), q)
                };
                ys.push(y);
            }
            let Some(dv) = a.denominator().eval_mod(&point, q) else { continue };
            let Some(dinv) = mod_inv(dv, q) else { continue };
            let mut acc: u128 = 0;
            for (mono, num) in a.numerators() {
                let Some(nv) = num.eval_mod(&point, q) else { continue 'retry };
                let mut t = nv as u128;
                for (f, &e) in mono.iter().enumerate() {
                    if e > 0 {
                        t = t * pow_mod(ys[f], e as u64, q) as u128 % q as u128;
                    }
                }
                acc = (acc + t) % q as u128;
            }
            let image = (acc * dinv as u128 % q as u128) as u64;
            if image == 0 {
                continue;
            }
            defined += 1;
            if pow_mod(image, (q - 1) / p, q) != 1 {
                return Ok(SpecialOutcome::Refuted {
                    certificate: Certificate::Specialization { q, point, radical_values: ys, image },
                });
            }
            break;
        }
    }
    Ok(SpecialOutcome::Consistent { defined_trials: defined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::tower::{Depths, TowerCtx, DEFAULT_DIM_CAP};
    use crate::fieldtower::{generator_var, Ctx};
    use crate::graphs::{ColoredGraph, Graph};
    use std::sync::Arc;

    fn k2() -> Ctx {
        let cg = ColoredGraph::monochromatic(Graph::complete(2));
        Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP).unwrap())
    }

    #[test]
    fn powers_are_consistent() {
        let ctx = k2();
        let a = generator_var(&ctx, 0, 1).unwrap().pow(3);
        assert!(matches!(specialization_refute(&a, 3, 20, 1).unwrap(), SpecialOutcome::Consistent { .. }));
    }

    #[test]
    fn refutations() {
        let ctx = k2();
        let a = generator_var(&ctx, 0, 0).unwrap().add(&TowerElement::one(&ctx));
        assert!(matches!(specialization_refute(&a, 3, 20, 1).unwrap(), SpecialOutcome::Refuted { .. }));
        let two = TowerElement::int(&ctx, 2);
        assert!(matches!(specialization_refute(&two, 3, 20, 1).unwrap(), SpecialOutcome::Refuted { .. }));
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inv(3, 10), Some(7));
        assert_eq!(mod_inv(4, 10), None);
    }
}
