//! Divisor-sum functions and the sums `S(n)`, `S^ow(n)`, `S^oh(n)`, `S^eo(n)`.
//!
//! ```text
//! F(x, k, q)    = Σ_{m ≤ x, m ≡ k (q)}      Σ_{b | m} b
//! F^ow(x, k, q) = Σ_{m ≤ x, m ≡ k (q)}      Σ_{b | m, b odd} b
//! F^oh(x, k, q) = Σ_{m ≤ x, m ≡ k+q (2q)}   Σ_{b | m, m/b odd} b
//!
//! S(n) = n⁻² Σ_{a ≥ 1} F(n − a, n, a) / a
//! ```
//!
//! `S^ow` restricts to odd widths `a`, `b`; `S^oh` to odd heights `h`, `y`;
//! `S^eo` is the mixed remainder.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{euler_factor_f64, gcd, sum_over_denominators, to_f64, SpfSieve};
use crate::{Error, ExactRational, Result};

/// Default sieve size: enough for the `x = 10⁶` ratio checks and for `S(n)`
/// up to `n ≈ 2·10⁶`.
pub const DEFAULT_SIEVE_LIMIT: usize = 2_000_000;

/// `σ(m)` for all `m ≤ limit`, from a linear sieve.
#[derive(Debug, Clone)]
pub struct DivisorSumTable {
    spf: Vec<u32>,
    sigma: Vec<u64>,
}

impl DivisorSumTable {
    pub fn new(limit: usize) -> Self {
        let limit = limit.max(1);
        let mut spf = vec![0u32; limit + 1];
        let mut sigma = vec![0u64; limit + 1];
        // Largest power of spf(m) dividing m.
        let mut ppow = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        sigma[1] = 1;
        ppow[1] = 1;
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                ppow[i] = i as u32;
                sigma[i] = i as u64 + 1;
                primes.push(i as u32);
            }
            for &p in &primes {
                let j = i * p as usize;
                if p > spf[i] || j > limit {
                    break;
                }
                spf[j] = p;
                if p == spf[i] {
                    let pk = ppow[i] as usize * p as usize;
                    ppow[j] = pk as u32;
                    let sigma_pk = sigma[ppow[i] as usize] * p as u64 + 1;
                    sigma[j] = sigma[j / pk] * sigma_pk;
                } else {
                    ppow[j] = p;
                    sigma[j] = sigma[i] * (p as u64 + 1);
                }
            }
        }
        Self { spf, sigma }
    }

    pub fn limit(&self) -> usize {
        self.sigma.len() - 1
    }

    /// `σ(m)`; `m` must lie in `1..=limit`.
    pub fn sigma(&self, m: usize) -> u64 {
        self.sigma[m]
    }

    /// Sum of the odd divisors of `m`.
    pub fn sigma_odd(&self, m: usize) -> u64 {
        self.sigma[m >> m.trailing_zeros()]
    }

    /// Sum of the divisors `b` of `m` with `m / b` odd.
    pub fn sigma_odd_cofactor(&self, m: usize) -> u64 {
        let e = m.trailing_zeros();
        self.sigma[m >> e] << e
    }

    /// Divisors of `m` in increasing order.
    pub fn divisors(&self, m: usize) -> Vec<u64> {
        let mut divs = vec![1u64];
        let mut rest = m;
        while rest > 1 {
            let p = self.spf[rest] as u64;
            let mut e = 0;
            while rest as u64 % p == 0 {
                rest /= p as usize;
                e += 1;
            }
            let base = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..base {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    fn check_range(&self, x: u64) -> Result<()> {
        if x as usize > self.limit() {
            return Err(Error::ResourceLimit(format!(
                "x = {x} exceeds the divisor-sum table limit {}",
                self.limit()
            )));
        }
        Ok(())
    }

    fn residue_sum(&self, x: u64, k: u64, q: u64, f: impl Fn(usize) -> u64) -> Result<u64> {
        if q == 0 {
            return Err(Error::InvalidArgument("modulus q must be at least 1".into()));
        }
        self.check_range(x)?;
        let r = k % q;
        let mut m = if r == 0 { q } else { r };
        let mut total = 0u64;
        while m <= x {
            total += f(m as usize);
            m += q;
        }
        Ok(total)
    }

    /// `F(x, k, q)`.
    pub fn f(&self, x: u64, k: u64, q: u64) -> Result<u64> {
        self.residue_sum(x, k, q, |m| self.sigma(m))
    }

    /// `F^ow(x, k, q)`: odd divisors only.
    pub fn f_ow(&self, x: u64, k: u64, q: u64) -> Result<u64> {
        self.residue_sum(x, k, q, |m| self.sigma_odd(m))
    }

    /// `F^oh(x, k, q)`: `m ≡ k + q (mod 2q)`, divisors with odd cofactor.
    pub fn f_oh(&self, x: u64, k: u64, q: u64) -> Result<u64> {
        if q == 0 {
            return Err(Error::InvalidArgument("modulus q must be at least 1".into()));
        }
        self.residue_sum(x, k + q, 2 * q, |m| self.sigma_odd_cofactor(m))
    }
}

fn main_term(x: f64, q: u64, constant: f64) -> f64 {
    x * x / q as f64 * constant * euler_factor_f64(q)
}

/// Main term `(x²/q)(π²/12)∏_{p|q}(1 − p⁻²)` of `F(x, k, q)`, for `gcd(k, q) = 1`.
pub fn f_predicted(x: f64, k: u64, q: u64) -> Result<f64> {
    if q == 0 || gcd(k, q) != 1 {
        return Err(Error::InvalidArgument(format!("need gcd(k, q) = 1, got k = {k}, q = {q}")));
    }
    Ok(main_term(x, q, PI * PI / 12.0))
}

/// Main term `(x²/q)(π²/24)∏_{p|q}(1 − p⁻²)` of `F^ow(x, k, q)`, for odd `k`, `q`.
pub fn f_ow_predicted(x: f64, k: u64, q: u64) -> Result<f64> {
    if q % 2 == 0 || k % 2 == 0 {
        return Err(Error::InvalidArgument(format!("need odd k and odd q, got k = {k}, q = {q}")));
    }
    Ok(main_term(x, q, PI * PI / 24.0))
}

/// Main term of `F^oh(x, k, q)` for odd `k`: constant `π²/24` for even `q`,
/// `π²/32` for odd `q`.
pub fn f_oh_predicted(x: f64, k: u64, q: u64) -> Result<f64> {
    if q == 0 || k % 2 == 0 {
        return Err(Error::InvalidArgument(format!("need odd k and q >= 1, got k = {k}, q = {q}")));
    }
    let c = if q % 2 == 0 { PI * PI / 24.0 } else { PI * PI / 32.0 };
    Ok(main_term(x, q, c))
}

fn ratio(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// Limits of `S`, `S^ow`, `S^oh`, `S^eo` over primes.
pub fn sum_limits() -> [ExactRational; 4] {
    [ratio(5, 4), ratio(1, 2), ratio(1, 2), ratio(1, 4)]
}

/// Exact values of the four sums at one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SumReport {
    pub n: u64,
    pub s: ExactRational,
    pub s_ow: ExactRational,
    pub s_oh: ExactRational,
    pub s_eo: ExactRational,
}

impl SumReport {
    pub fn values(&self) -> [&ExactRational; 4] {
        [&self.s, &self.s_ow, &self.s_oh, &self.s_eo]
    }

    pub fn floats(&self) -> [f64; 4] {
        self.values().map(to_f64)
    }

    /// `|S − 5/4|`, `|S^ow − 1/2|`, `|S^oh − 1/2|`, `|S^eo − 1/4|`.
    pub fn errors(&self) -> [f64; 4] {
        let limits = sum_limits();
        let v = self.values();
        core::array::from_fn(|i| to_f64(&(v[i] - &limits[i]).abs()))
    }
}

/// `S(n)`, `S^ow(n)`, `S^oh(n)`, `S^eo(n)` for odd `n ≥ 3`.
///
/// `S^eo` is computed twice, as `S − S^ow − S^oh` and by summing over the
/// mixed-parity solutions of `a h + b y = n` directly; a disagreement is
/// reported as [`Error::Inconsistent`].
pub fn s_sums(table: &DivisorSumTable, n: u64) -> Result<SumReport> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("S-sums need odd n >= 3, got {n}")));
    }
    table.check_range(n)?;
    let len = n as usize;
    let mut all = vec![0u128; len];
    let mut ow = vec![0u128; len];
    let mut oh = vec![0u128; len];
    for a in 1..n {
        let i = a as usize;
        all[i] = table.f(n - a, n, a)? as u128;
        if a % 2 == 1 {
            ow[i] = table.f_ow(n - a, n, a)? as u128;
        }
        oh[i] = table.f_oh(n - a, n, a)? as u128;
    }
    let norm = ExactRational::from_integer(BigInt::from(n) * BigInt::from(n));
    let s = sum_over_denominators(&all) / &norm;
    let s_ow = sum_over_denominators(&ow) / &norm;
    let s_oh = sum_over_denominators(&oh) / &norm;
    let s_eo = &s - &s_ow - &s_oh;
    let direct = s_eo_direct(table, n)?;
    if direct != s_eo {
        return Err(Error::Inconsistent(format!(
            "S^eo({n}): difference {s_eo} but direct sum {direct}"
        )));
    }
    Ok(SumReport { n, s, s_ow, s_oh, s_eo })
}

/// `n⁻² Σ b/a` over solutions of `a h + b y = n` whose widths and heights
/// are both of mixed parity.
pub fn s_eo_direct(table: &DivisorSumTable, n: u64) -> Result<ExactRational> {
    table.check_range(n)?;
    let mut nums = vec![0u128; n as usize];
    for a in 1..n {
        let mut h = 1;
        while a * h < n {
            let m = n - a * h;
            for b in table.divisors(m as usize) {
                let y = m / b;
                let odd_heights = h % 2 == 1 && y % 2 == 1;
                let odd_widths = a % 2 == 1 && b % 2 == 1;
                if !odd_heights && !odd_widths {
                    nums[a as usize] += b as u128;
                }
            }
            h += 1;
        }
    }
    let norm = ExactRational::from_integer(BigInt::from(n) * BigInt::from(n));
    Ok(sum_over_denominators(&nums) / norm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityFilter {
    All,
    Odd,
    Even,
}

/// `Σ_{a ≤ A} a⁻² ∏_{p|a} (1 − p⁻²)` over the selected `a`, summed from the
/// small terms up. Limits: `15/π²`, `12/π²` (odd), `3/π²` (even).
pub fn euler_partial(limit: u64, filter: ParityFilter) -> f64 {
    let sieve = SpfSieve::new(limit.max(1) as usize);
    // g(a) = ∏_{p|a} (1 − p⁻²), multiplicative in the radical.
    let mut g = vec![1.0f64; limit as usize + 1];
    for a in 2..=limit as usize {
        let p = sieve.spf(a) as usize;
        let rest = a / p;
        g[a] = if rest % p == 0 {
            g[rest]
        } else {
            g[rest] * (1.0 - 1.0 / (p as f64 * p as f64))
        };
    }
    let mut total = 0.0;
    for a in (1..=limit).rev() {
        let keep = match filter {
            ParityFilter::All => true,
            ParityFilter::Odd => a % 2 == 1,
            ParityFilter::Even => a % 2 == 0,
        };
        if keep {
            let af = a as f64;
            total += g[a as usize] / (af * af);
        }
    }
    total
}
