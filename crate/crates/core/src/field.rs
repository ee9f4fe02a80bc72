//! Arithmetic in prime fields `Z/pZ` with `2^30 < p < 2^32`, and deterministic prime selection.
//!
//! Elements are plain `u64` values in `[0, p)`. Keeping `p < 2^32` means a product of two
//! reduced elements always fits in a `u64`.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Lower bound (exclusive) for every prime used by the modular pipelines.
pub const MIN_PRIME: u64 = 1 << 30;
/// Upper bound (exclusive) so that products of residues fit in 64 bits.
pub const MAX_PRIME: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics if `p` is not a prime in `(2^30, 2^32)`.
    pub fn new(p: u64) -> Self {
        assert!(p > MIN_PRIME && p < MAX_PRIME, "modulus {p} out of range");
        assert!(is_prime(p), "modulus {p} is not prime");
        PrimeField { p }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    /// `a - f*b`, the elimination kernel.
    #[inline]
    pub fn sub_mul(&self, a: u64, f: u64, b: u64) -> u64 {
        self.sub(a, self.mul(f, b))
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn from_bigint(&self, v: &num_bigint::BigInt) -> u64 {
        use num_traits::ToPrimitive;
        let m = num_bigint::BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        r.to_u64().expect("residue fits")
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// A uniformly random residue.
    pub fn random<R: RngCore>(&self, rng: &mut R) -> u64 {
        // Rejection sampling on 32-bit draws.
        loop {
            let v = rng.next_u32() as u64;
            if v < self.p {
                return v;
            }
        }
    }
}

fn mul_mod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u128(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u128(r, b, m);
        }
        b = mul_mod_u128(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes in `(2^30, 2^31)` drawn deterministically from `seed`.
pub fn select_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_9a11_u64);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = MIN_PRIME + 1 + (rng.next_u32() as u64 % (MIN_PRIME - 1));
        let candidate = candidate | 1;
        if is_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miller_rabin_small_and_known() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(is_prime(4_294_967_291));
    }

    #[test]
    fn selected_primes_are_in_range_and_distinct() {
        let ps = select_primes(7, 5);
        assert_eq!(ps.len(), 5);
        for (i, &p) in ps.iter().enumerate() {
            assert!(p > MIN_PRIME && p < (1 << 31) && is_prime(p));
            assert!(!ps[..i].contains(&p));
        }
        assert_eq!(ps, select_primes(7, 5));
        assert_ne!(ps, select_primes(8, 5));
    }

    #[test]
    fn inverse_and_lift() {
        let f = PrimeField::new(2_147_483_647);
        for a in [1u64, 2, 3, 12345, 2_147_483_646] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.lift(f.from_i64(-5)), -5);
        assert_eq!(f.lift(f.from_i64(17)), 17);
    }
}
