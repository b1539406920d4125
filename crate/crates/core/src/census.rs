//! Exact census of two-cylinder cusps and the constants `c̃(A_n)`, `c̃(B_n)`.
//!
//! For a primitive `n`-square surface `S` with `SL(2,Z)`-orbit `D`,
//!
//! ```text
//! c̃(S) = n / #D · Σ_{two-cylinder cusps C} cw(C) / w1(C)²
//! ```
//!
//! is the coefficient of `πL² / (2ζ(2))` in the count of regular cylinders
//! on the unit-area rescaling of `S`. It is computed here in two ways: from
//! the parameter sums over `a h + b y = n` ([`tilde_c_parametric`]) and from
//! the enumerated orbit ([`tilde_c_oracle`]).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{euler_factor, gcd, is_prime, sum_over_denominators, SpfSieve};
use crate::cylinders::{canonical_cusp_rep, cusp_width_formula, horizontal_decomposition, TwoCylCoords};
use crate::orbit::{orbit_bfs, primitive_orbits, BfsBudget, Orbit, OrbitLabel};
use crate::origami::Origami;
use crate::{Error, ExactRational, Result};

/// Twist-free cusp parameters: widths `a < b`, heights `h`, `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspParams {
    pub a: u64,
    pub b: u64,
    pub h: u64,
    pub y: u64,
}

impl CuspParams {
    pub fn n(&self) -> u64 {
        self.a * self.h + self.b * self.y
    }

    /// Number of distinct twist pairs, hence of surfaces, with these parameters.
    pub fn surface_count(&self) -> u64 {
        self.a * self.b
    }

    pub fn with_twists(&self, t1: u64, t2: u64) -> TwoCylCoords {
        TwoCylCoords { a: self.a, b: self.b, h: self.h, y: self.y, t1, t2 }
    }
}

impl From<&TwoCylCoords> for CuspParams {
    fn from(c: &TwoCylCoords) -> Self {
        Self { a: c.a, b: c.b, h: c.h, y: c.y }
    }
}

impl fmt::Display for CuspParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, h={}, y={})", self.a, self.b, self.h, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityClass {
    /// `h` and `y` odd: orbit `A`.
    HOdd,
    /// `a` and `b` odd: orbit `B`.
    WOdd,
    /// `a ≢ b` and `h ≢ y` mod 2: split evenly between `A` and `B`.
    Mixed,
}

/// All `(a, b, h, y)` with `a h + b y = n`, `a < b`, `gcd(h, y) = 1`.
pub fn enumerate_params(n: u64) -> Vec<CuspParams> {
    enumerate_tuples(n, true, true)
}

/// Solutions of `a h + b y = n` in positive integers, optionally restricted
/// to `gcd(h, y) = 1` and to `a < b`.
///
/// Loops `a` and then `h` upward, and takes the divisors `y` of `n - a h`
/// in increasing order.
pub fn enumerate_tuples(n: u64, coprime_heights: bool, a_lt_b: bool) -> Vec<CuspParams> {
    if n < 2 {
        return Vec::new();
    }
    let sieve = SpfSieve::new(n as usize);
    let mut out = Vec::new();
    for a in 1..n {
        if a_lt_b && a * (1 + 1) > n {
            // a h + b y ≥ a + (a+1) > n
            break;
        }
        for h in 1.. {
            if a * h >= n {
                break;
            }
            let m = n - a * h;
            for y in sieve.divisors(m as usize) {
                if coprime_heights && gcd(h, y) != 1 {
                    continue;
                }
                let b = m / y;
                if a_lt_b && b <= a {
                    continue;
                }
                out.push(CuspParams { a, b, h, y });
            }
        }
    }
    out
}

/// Parity class of a tuple for odd `n`.
pub fn classify(p: &CuspParams, n: u64) -> Result<ParityClass> {
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "parity classes are defined for odd n only, got {n}"
        )));
    }
    let odd = |x: u64| x % 2 == 1;
    Ok(if odd(p.h) && odd(p.y) {
        ParityClass::HOdd
    } else if odd(p.a) && odd(p.b) {
        ParityClass::WOdd
    } else {
        ParityClass::Mixed
    })
}

fn class_of(label: OrbitLabel) -> Result<ParityClass> {
    match label {
        OrbitLabel::A => Ok(ParityClass::HOdd),
        OrbitLabel::B => Ok(ParityClass::WOdd),
        other => Err(Error::InvalidArgument(format!(
            "parametric sums exist for orbits A and B only, got {other}"
        ))),
    }
}

fn require_prime_above_3(n: u64) -> Result<()> {
    if n <= 3 || !is_prime(n) {
        return Err(Error::InvalidArgument(format!(
            "exact parametric census needs a prime n > 3, got {n}"
        )));
    }
    Ok(())
}

/// `Σ_{class} b/a + ½ Σ_{Mixed} b/a` over [`enumerate_params`].
pub fn parametric_inner_sum(n: u64, label: OrbitLabel) -> Result<ExactRational> {
    require_prime_above_3(n)?;
    let class = class_of(label)?;
    // Accumulate 2·b (own class) or b (mixed) over the denominator 2a.
    let mut nums = vec![0u128; 2 * n as usize + 1];
    for p in enumerate_params(n) {
        let weight = match classify(&p, n)? {
            c if c == class => 2,
            ParityClass::Mixed => 1,
            _ => 0,
        };
        nums[2 * p.a as usize] += weight * p.b as u128;
    }
    Ok(sum_over_denominators(&nums))
}

/// `Σ_{class} ab + ½ Σ_{Mixed} ab`: two-cylinder surfaces in the orbit.
pub fn parametric_two_cyl_count(n: u64, label: OrbitLabel) -> Result<ExactRational> {
    require_prime_above_3(n)?;
    let class = class_of(label)?;
    let mut twice = 0u128;
    for p in enumerate_params(n) {
        let ab = (p.a * p.b) as u128;
        match classify(&p, n)? {
            c if c == class => twice += 2 * ab,
            ParityClass::Mixed => twice += ab,
            _ => {}
        }
    }
    Ok(ExactRational::new(BigInt::from(twice), BigInt::from(2)))
}

/// `n / size · (Σ_{class} b/a + ½ Σ_{Mixed} b/a)`.
pub fn tilde_c_parametric(n: u64, label: OrbitLabel, orbit_size: &ExactRational) -> Result<ExactRational> {
    if orbit_size.is_zero() {
        return Err(Error::InvalidArgument("orbit size is zero".into()));
    }
    let inner = parametric_inner_sum(n, label)?;
    Ok(ExactRational::from_integer(BigInt::from(n)) / orbit_size * inner)
}

/// Number of primitive `n`-square surfaces in H(2), `n ≥ 3`:
/// `(3/8)(n-2)n²∏_{p|n}(1 - p⁻²)`.
pub fn closed_form_total(n: u64) -> ExactRational {
    let n2 = BigInt::from(n) * BigInt::from(n);
    ExactRational::new(BigInt::from(3) * BigInt::from(n.saturating_sub(2)) * n2, BigInt::from(8))
        * euler_factor(n)
}

/// Leading term `(3/8)n³∏_{p|n}(1 - p⁻²)` of [`closed_form_total`].
pub fn leading_term(n: u64) -> ExactRational {
    ExactRational::new(BigInt::from(3) * BigInt::from(n).pow(3), BigInt::from(8)) * euler_factor(n)
}

/// Orbit sizes `|A_n| = (3/16)(n-1)n²∏(1-p⁻²)` and
/// `|B_n| = (3/16)(n-3)n²∏(1-p⁻²)` for odd `n ≥ 5`.
///
/// They sum to [`closed_form_total`].
pub fn closed_form_orbit_size(n: u64, label: OrbitLabel) -> Result<ExactRational> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("closed forms need odd n >= 5, got {n}")));
    }
    let shift = match label {
        OrbitLabel::A => 1,
        OrbitLabel::B => 3,
        other => {
            return Err(Error::InvalidArgument(format!("no closed form for orbit {other}")))
        }
    };
    let n2 = BigInt::from(n) * BigInt::from(n);
    Ok(ExactRational::new(BigInt::from(3) * BigInt::from(n - shift) * n2, BigInt::from(16))
        * euler_factor(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuspKind {
    /// Canonical representative (twists reduced mod `gcd(w_i, h_i)`).
    TwoCylinder(TwoCylCoords),
    OneCylinder { width: u64, height: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CuspRecord {
    pub kind: CuspKind,
    /// Number of surfaces in the cusp.
    pub width: u64,
}

/// Cusp data of one enumerated orbit.
#[derive(Debug, Clone)]
pub struct OrbitCensus {
    pub n: u64,
    pub label: OrbitLabel,
    pub size: u64,
    pub two_cylinder: Vec<CuspRecord>,
    pub one_cylinder: Vec<CuspRecord>,
    /// Two-cylinder surfaces of the orbit per parameter tuple.
    pub surfaces_per_params: BTreeMap<CuspParams, u64>,
}

impl OrbitCensus {
    pub fn from_orbit(orbit: &Orbit, label: OrbitLabel) -> Result<Self> {
        let mut two_cylinder = Vec::new();
        let mut one_cylinder = Vec::new();
        let mut surfaces_per_params = BTreeMap::new();
        for cusp in &orbit.cusps {
            let width = cusp.len() as u64;
            let d = horizontal_decomposition(&orbit.surfaces[cusp[0]])?;
            match d.cylinders.as_slice() {
                [c] => one_cylinder.push(CuspRecord {
                    kind: CuspKind::OneCylinder { width: c.width, height: c.height },
                    width,
                }),
                [_, _] => {
                    let coords = d.two_cyl_coords().ok_or_else(|| {
                        Error::Inconsistent("two cylinders of equal width".into())
                    })?;
                    *surfaces_per_params.entry(CuspParams::from(&coords)).or_insert(0) += width;
                    two_cylinder.push(CuspRecord {
                        kind: CuspKind::TwoCylinder(canonical_cusp_rep(&coords)),
                        width,
                    });
                }
                other => {
                    return Err(Error::Inconsistent(format!(
                        "{} horizontal cylinders in H(2)",
                        other.len()
                    )))
                }
            }
        }
        Ok(Self {
            n: orbit.n() as u64,
            label,
            size: orbit.len() as u64,
            two_cylinder,
            one_cylinder,
            surfaces_per_params,
        })
    }

    pub fn two_cyl_surfaces(&self) -> u64 {
        self.two_cylinder.iter().map(|c| c.width).sum()
    }

    pub fn total_cusp_width(&self) -> u64 {
        self.two_cylinder.iter().chain(&self.one_cylinder).map(|c| c.width).sum()
    }

    /// `n/#D · Σ_{two-cyl} cw / w1²`.
    pub fn tilde_c(&self) -> ExactRational {
        let mut nums = vec![0u128; (self.n * self.n) as usize + 1];
        for c in &self.two_cylinder {
            if let CuspKind::TwoCylinder(t) = c.kind {
                nums[(t.a * t.a) as usize] += c.width as u128;
            }
        }
        self.normalize(sum_over_denominators(&nums))
    }

    /// `n/#D · (Σ_{two-cyl} cw / w2² + Σ_{one-cyl} cw / w²)`.
    pub fn tilde_c_irregular(&self) -> ExactRational {
        let mut nums = vec![0u128; (self.n * self.n) as usize + 1];
        for c in self.two_cylinder.iter().chain(&self.one_cylinder) {
            let w = match c.kind {
                CuspKind::TwoCylinder(t) => t.b,
                CuspKind::OneCylinder { width, .. } => width,
            };
            nums[(w * w) as usize] += c.width as u128;
        }
        self.normalize(sum_over_denominators(&nums))
    }

    fn normalize(&self, sum: ExactRational) -> ExactRational {
        ExactRational::new(BigInt::from(self.n), BigInt::from(self.size)) * sum
    }
}

/// `c̃` of the orbit of `seed`, from the enumerated cusps.
pub fn tilde_c_oracle(seed: &Origami) -> Result<ExactRational> {
    let orbit = orbit_bfs(seed)?;
    Ok(OrbitCensus::from_orbit(&orbit, crate::orbit::label_orbit(&orbit))?.tilde_c())
}

/// Irregular-cylinder analogue of [`tilde_c_oracle`].
pub fn tilde_c_irregular(seed: &Origami) -> Result<ExactRational> {
    let orbit = orbit_bfs(seed)?;
    Ok(OrbitCensus::from_orbit(&orbit, crate::orbit::label_orbit(&orbit))?.tilde_c_irregular())
}

/// Censuses of all primitive orbits for `n`.
pub fn census(n: u64, budget: BfsBudget) -> Result<Vec<OrbitCensus>> {
    primitive_orbits(n, budget)?
        .iter()
        .map(|(label, orbit)| OrbitCensus::from_orbit(orbit, *label))
        .collect()
}

/// Per-orbit outcome of [`census_consistency`].
#[derive(Debug, Clone)]
pub struct OrbitCheck {
    pub label: OrbitLabel,
    pub size: u64,
    pub total_cusp_width: u64,
    pub two_cyl_surfaces: u64,
    pub two_cyl_parametric: ExactRational,
    pub tilde_c_oracle: ExactRational,
    pub tilde_c_parametric: ExactRational,
}

#[derive(Debug, Clone)]
pub struct ConsistencyReport {
    pub n: u64,
    pub orbits: Vec<OrbitCheck>,
    /// Empty when every check passed.
    pub mismatches: Vec<String>,
}

impl ConsistencyReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Cross-checks the enumerated orbits of a prime `n` against the parameter
/// sums: cusp widths per tuple, two-cylinder counts per orbit, the even split
/// of mixed tuples, total cusp width, and `c̃` both ways.
pub fn census_consistency(n: u64, budget: BfsBudget) -> Result<ConsistencyReport> {
    require_prime_above_3(n)?;
    let mut mismatches = Vec::new();
    let params = enumerate_params(n);

    for p in &params {
        let (g1, g2) = (gcd(p.a, p.h), gcd(p.b, p.y));
        let mut total = 0;
        for t1 in 0..g1 {
            for t2 in 0..g2 {
                total += cusp_width_formula(&p.with_twists(t1, t2));
            }
        }
        if total != p.surface_count() {
            mismatches.push(format!("tuple {p}: cusp widths sum to {total}, expected {}", p.surface_count()));
        }
    }

    let censuses = census(n, budget)?;
    let mut orbits = Vec::new();
    for c in &censuses {
        if c.total_cusp_width() != c.size {
            mismatches.push(format!(
                "orbit {}: cusp widths sum to {}, orbit has {} surfaces",
                c.label,
                c.total_cusp_width(),
                c.size
            ));
        }
        let two_cyl_parametric = parametric_two_cyl_count(n, c.label)?;
        if ExactRational::from_integer(BigInt::from(c.two_cyl_surfaces())) != two_cyl_parametric {
            mismatches.push(format!(
                "orbit {}: {} two-cylinder surfaces, parameter sum gives {}",
                c.label,
                c.two_cyl_surfaces(),
                two_cyl_parametric
            ));
        }
        let own = class_of(c.label)?;
        for p in &params {
            let count = c.surfaces_per_params.get(p).copied().unwrap_or(0);
            let expected = match classify(p, n)? {
                cls if cls == own => p.surface_count(),
                ParityClass::Mixed => p.surface_count() / 2,
                _ => 0,
            };
            if count != expected || (classify(p, n)? == ParityClass::Mixed && p.surface_count() % 2 != 0) {
                mismatches.push(format!(
                    "orbit {}: tuple {p} has {count} surfaces, expected {expected}",
                    c.label
                ));
            }
        }
        let size = ExactRational::from_integer(BigInt::from(c.size));
        let oracle = c.tilde_c();
        let parametric = tilde_c_parametric(n, c.label, &size)?;
        if oracle != parametric {
            mismatches.push(format!(
                "orbit {}: c̃ oracle {oracle} differs from parametric {parametric}",
                c.label
            ));
        }
        orbits.push(OrbitCheck {
            label: c.label,
            size: c.size,
            total_cusp_width: c.total_cusp_width(),
            two_cyl_surfaces: c.two_cyl_surfaces(),
            two_cyl_parametric,
            tilde_c_oracle: oracle,
            tilde_c_parametric: parametric,
        });
    }
    if orbits.len() != 2 {
        mismatches.push(format!("expected two orbits, found {}", orbits.len()));
    }
    Ok(ConsistencyReport { n, orbits, mismatches })
}

/// `10/3`, the limit of `c̃` over primes.
pub fn limit_tilde_c() -> ExactRational {
    ExactRational::new(BigInt::from(10), BigInt::from(3))
}

/// Relative distance `|x − 10/3| / (10/3)`, exact.
pub fn rel_err_vs_limit(x: &ExactRational) -> ExactRational {
    let l = limit_tilde_c();
    let d = x - &l;
    let d = if d < ExactRational::zero() { -d } else { d };
    d / l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn p(a: u64, b: u64, h: u64, y: u64) -> CuspParams {
        CuspParams { a, b, h, y }
    }

    #[test]
    fn params_small_n() {
        let mut five = enumerate_params(5);
        five.sort();
        assert_eq!(
            five,
            vec![p(1, 2, 1, 2), p(1, 2, 3, 1), p(1, 3, 2, 1), p(1, 4, 1, 1), p(2, 3, 1, 1)]
        );
        assert_eq!(enumerate_params(3), vec![p(1, 2, 1, 1)]);
        let mut four = enumerate_params(4);
        four.sort();
        assert_eq!(four, vec![p(1, 2, 2, 1), p(1, 3, 1, 1)]);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&p(1, 4, 1, 1), 5).unwrap(), ParityClass::HOdd);
        assert_eq!(classify(&p(1, 3, 2, 1), 5).unwrap(), ParityClass::WOdd);
        assert_eq!(classify(&p(1, 2, 1, 2), 5).unwrap(), ParityClass::Mixed);
        assert!(classify(&p(1, 3, 1, 1), 4).is_err());
    }

    #[test]
    fn inner_sums_for_five() {
        assert_eq!(parametric_inner_sum(5, OrbitLabel::A).unwrap(), r(17, 2));
        assert_eq!(parametric_inner_sum(5, OrbitLabel::B).unwrap(), r(4, 1));
        assert_eq!(parametric_two_cyl_count(5, OrbitLabel::A).unwrap(), r(13, 1));
        assert_eq!(parametric_two_cyl_count(5, OrbitLabel::B).unwrap(), r(4, 1));
    }

    #[test]
    fn parametric_rejects_nonprime() {
        assert!(tilde_c_parametric(9, OrbitLabel::A, &r(1, 1)).is_err());
        assert!(tilde_c_parametric(3, OrbitLabel::A, &r(1, 1)).is_err());
        assert!(tilde_c_parametric(5, OrbitLabel::E, &r(1, 1)).is_err());
    }

    #[test]
    fn l3_constants() {
        let l3 = Origami::from_images(vec![1, 0, 2], vec![2, 1, 0]).unwrap();
        assert_eq!(tilde_c_oracle(&l3).unwrap(), r(2, 1));
        assert_eq!(tilde_c_irregular(&l3).unwrap(), r(11, 18));
    }

    #[test]
    fn consistency_for_five() {
        let report = census_consistency(5, BfsBudget::default()).unwrap();
        assert!(report.is_ok(), "{:?}", report.mismatches);
        let two: Vec<u64> = report.orbits.iter().map(|o| o.two_cyl_surfaces).collect();
        assert_eq!(two, vec![13, 4]);
    }

    #[test]
    fn closed_forms_for_five() {
        assert_eq!(closed_form_orbit_size(5, OrbitLabel::A).unwrap(), r(18, 1));
        assert_eq!(closed_form_orbit_size(5, OrbitLabel::B).unwrap(), r(9, 1));
        assert_eq!(closed_form_total(5), r(27, 1));
        assert_eq!(leading_term(5), r(45, 1));
        assert_eq!(closed_form_total(3), r(3, 1));
    }
}
