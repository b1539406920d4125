//! Small integer helpers shared by the census and the divisor-sum code.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::ExactRational;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended Euclid on signed integers: returns `(g, x, y)` with `a x + b y = g ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n` by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `∏_{p | n} (1 - 1/p²)` as an exact rational.
pub fn euler_factor(n: u64) -> ExactRational {
    prime_factors(n).into_iter().fold(ExactRational::one(), |acc, p| {
        let p2 = BigInt::from(p) * BigInt::from(p);
        acc * ExactRational::new(&p2 - 1u32, p2)
    })
}

/// `∏_{p | n} (1 - 1/p²)` in floating point.
pub fn euler_factor_f64(n: u64) -> f64 {
    prime_factors(n)
        .into_iter()
        .map(|p| 1.0 - 1.0 / (p as f64 * p as f64))
        .product()
}

/// Smallest-prime-factor table built by the linear sieve.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let m = i * p as usize;
                if p > spf[i] || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Self { spf, primes }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Smallest prime factor of `m` (`m ≥ 2`).
    #[inline]
    pub fn spf(&self, m: usize) -> u32 {
        self.spf[m]
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, m: usize) -> bool {
        m >= 2 && self.spf[m] as usize == m
    }

    /// `(p, e)` pairs of the factorization of `m`, ascending in `p`.
    pub fn factorize(&self, mut m: usize) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    /// All divisors of `m`, ascending.
    pub fn divisors(&self, m: usize) -> Vec<u64> {
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(m) {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Exact value of `Σ_d numerators[d] / d` over `d ≥ 1` (index 0 is ignored).
///
/// All terms are brought to the least common denominator first, so the cost
/// is one big-integer multiply per term and a single reduction at the end.
pub fn sum_over_denominators(numerators: &[u128]) -> ExactRational {
    let mut common = BigUint::one();
    for (d, num) in numerators.iter().enumerate().skip(1) {
        if *num != 0 {
            let d = d as u64;
            let r = (&common % d).to_u64().unwrap_or(0);
            let g = gcd(r, d);
            common *= d / g;
        }
    }
    let mut total = BigUint::zero();
    for (d, num) in numerators.iter().enumerate().skip(1) {
        if *num != 0 {
            total += (&common / BigUint::from(d as u64)) * BigUint::from(*num);
        }
    }
    ExactRational::new(BigInt::from(total), BigInt::from(common))
}

/// Nearest `f64`, also for operands far outside the `f64` range.
pub fn to_f64(x: &ExactRational) -> f64 {
    // Shift large operands down first so the quotient stays representable.
    let (n, d) = (x.numer(), x.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}
