//! Small-prime utilities.

use super::poly::pow_mod;

/// Deterministic Miller–Rabin for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `n + 1` smallest odd primes that differ from `r` and do not divide
/// `r − 1` (for `r = 0` every odd prime qualifies).
pub fn choose_primes(r: u32, n: usize) -> Vec<u64> {
    let r = r as u64;
    let mut out = Vec::with_capacity(n + 1);
    let mut p = 3u64;
    while out.len() < n + 1 {
        if is_prime(p) && p != r && (r < 2 || (r - 1) % p != 0) {
            out.push(p);
        }
        p += 2;
    }
    out
}

/// Smallest prime `q ≡ 1 (mod m)` with `q > lower`.
pub fn prime_one_mod(m: u64, lower: u64) -> Option<u64> {
    let mut k = lower / m + 1;
    loop {
        let q = k.checked_mul(m)?.checked_add(1)?;
        if q > lower && is_prime(q) {
            return Some(q);
        }
        k += 1;
    }
}

/// Prime factors of `n`, ascending, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A generator of `F_q^×` for prime `q`.
pub fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let fs = prime_factors(q - 1);
    (2..q).find(|&g| fs.iter().all(|&f| pow_mod(g, (q - 1) / f, q) != 1)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_rule() {
        assert_eq!(choose_primes(0, 7), vec![3, 5, 7, 11, 13, 17, 19, 23]);
        assert_eq!(choose_primes(3, 7), vec![5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(choose_primes(7, 7), vec![5, 11, 13, 17, 19, 23, 29, 31]);
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert_eq!(prime_one_mod(15, 0), Some(31));
        assert_eq!(primitive_root(7), 3);
    }
}
