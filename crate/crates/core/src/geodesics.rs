//! Brute-force counts of cylinders of closed geodesics up to a length bound.
//!
//! Every rational direction `(p, q)` of an origami splits it into cylinders.
//! Mapping `(p, q)` to `(1, 0)` by some `M ∈ SL(2, Z)` turns these into the
//! horizontal cylinders of `M·S`, whose widths are measured in multiples of
//! `|(p, q)|`. Counting those with `w·|(p, q)| ≤ L` over all directions gives
//! `N(L)`, which grows like `c·πL²`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::arith::{ext_gcd, gcd};
use crate::census::tilde_c_oracle;
use crate::cylinders::{horizontal_decomposition, CylinderDecomposition};
use crate::origami::Origami;
use crate::sl2z::Matrix2;
use crate::{Error, ExactRational, Result};

/// Primitive direction, normalized to `q > 0` or `(p, q) = (1, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    p: i64,
    q: i64,
}

impl Direction {
    pub const HORIZONTAL: Self = Self { p: 1, q: 0 };
    pub const VERTICAL: Self = Self { p: 0, q: 1 };

    /// Normalizes `±(p, q)`; rejects `(0, 0)` and non-primitive vectors.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
            return Err(Error::InvalidArgument(format!("({p}, {q}) is not a primitive vector")));
        }
        Ok(if q < 0 || (q == 0 && p < 0) { Self { p: -p, q: -q } } else { Self { p, q } })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn norm_sq(&self) -> u64 {
        (self.p * self.p + self.q * self.q) as u64
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Nonnegative rational length `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthBound {
    num: u64,
    den: u64,
}

impl LengthBound {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("length denominator is zero".into()));
        }
        let g = gcd(num, den).max(1);
        Ok(Self { num: num / g, den: den / g })
    }

    pub fn integer(l: u64) -> Self {
        Self { num: l, den: 1 }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn as_rational(&self) -> ExactRational {
        ExactRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    /// Largest integer `≤` the bound.
    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    /// Whether a vector of squared norm `norm_sq` scaled by `w` fits:
    /// `w²·norm_sq ≤ L²`, decided exactly.
    pub fn admits(&self, w: u64, norm_sq: u64) -> bool {
        let lhs = (w as u128) * (w as u128) * (norm_sq as u128) * (self.den as u128) * (self.den as u128);
        lhs <= (self.num as u128) * (self.num as u128)
    }
}

impl FromStr for LengthBound {
    type Err = Error;

    /// Parses decimal notation such as `300`, `1.2` or `0.75`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid length {s:?}"));
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 9 {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let i: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let f: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = i.checked_mul(den).and_then(|x| x.checked_add(f)).ok_or_else(bad)?;
        Self::new(num, den)
    }
}

impl fmt::Display for LengthBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// All unoriented primitive directions of norm at most `r`, ordered by `q`
/// then `p`.
pub fn enumerate_directions(r: LengthBound) -> Vec<Direction> {
    directions(r).collect()
}

/// Lazy form of [`enumerate_directions`].
pub fn directions(r: LengthBound) -> impl Iterator<Item = Direction> {
    let max = r.floor() as i64;
    let horizontal = r.admits(1, 1).then_some(Direction::HORIZONTAL);
    horizontal.into_iter().chain((1..=max).flat_map(move |q| {
        (-max..=max).filter_map(move |p| {
            let d = Direction { p, q };
            (gcd(p.unsigned_abs(), q as u64) == 1 && r.admits(1, d.norm_sq())).then_some(d)
        })
    }))
}

pub fn count_directions(r: LengthBound) -> u64 {
    directions(r).count() as u64
}

/// `M ∈ SL(2, Z)` with `M·(p, q) = (1, 0)`: `[[r, s], [−q, p]]`, `rp + sq = 1`.
pub fn direction_matrix(d: Direction) -> Matrix2 {
    let (_, r, s) = ext_gcd(d.p, d.q);
    Matrix2 { a: r, b: s, c: -d.q, d: d.p }
}

/// Cylinders of `o` in direction `d`; widths are in units of `|d|`.
pub fn direction_decomposition(o: &Origami, d: Direction) -> Result<CylinderDecomposition> {
    if d == Direction::HORIZONTAL {
        return horizontal_decomposition(o);
    }
    horizontal_decomposition(&o.apply_matrix(&direction_matrix(d))?)
}

/// Regular and irregular cylinder counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub regular: u64,
    pub irregular: u64,
}

impl Tally {
    pub fn total(&self) -> u64 {
        self.regular + self.irregular
    }

    pub fn merge(&mut self, other: &Tally) {
        self.regular += other.regular;
        self.irregular += other.irregular;
    }
}

/// Adds the cylinders of direction `d` to one tally per bound.
pub fn tally_direction(o: &Origami, d: Direction, bounds: &[LengthBound], tallies: &mut [Tally]) -> Result<()> {
    let decomposition = direction_decomposition(o, d)?;
    let norm_sq = d.norm_sq();
    for (bound, tally) in bounds.iter().zip(tallies.iter_mut()) {
        for c in &decomposition.cylinders {
            if bound.admits(c.width, norm_sq) {
                if c.is_regular() {
                    tally.regular += 1;
                } else {
                    tally.irregular += 1;
                }
            }
        }
    }
    Ok(())
}

/// Cap on the number of directions visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectionBudget {
    pub max_directions: u64,
}

impl Default for DirectionBudget {
    fn default() -> Self {
        Self { max_directions: 4_000_000 }
    }
}

impl DirectionBudget {
    /// Rejects bounds whose direction count would exceed the cap. The count
    /// is about `3L²/π`; `L²` is used as a cheap upper estimate.
    pub fn check(&self, l: LengthBound) -> Result<()> {
        let est = (l.floor() + 1).saturating_mul(l.floor() + 1);
        if est > self.max_directions {
            return Err(Error::ResourceLimit(format!(
                "length {l} needs about {est} directions, budget is {}",
                self.max_directions
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub length: LengthBound,
    pub n_reg: u64,
    pub n_irr: u64,
}

impl CountReport {
    pub fn total(&self) -> u64 {
        self.n_reg + self.n_irr
    }

    /// `N_reg / (πL²)`.
    pub fn coeff_reg(&self) -> f64 {
        let l = self.length.as_f64();
        self.n_reg as f64 / (core::f64::consts::PI * l * l)
    }

    pub fn coeff_irr(&self) -> f64 {
        let l = self.length.as_f64();
        self.n_irr as f64 / (core::f64::consts::PI * l * l)
    }
}

/// Counts at each bound in `lengths`, visiting directions once up to the
/// largest bound. Cylinders of length exactly `L` are included.
pub fn count_cylinders_profile(
    o: &Origami,
    lengths: &[LengthBound],
    budget: DirectionBudget,
) -> Result<Vec<CountReport>> {
    if !o.is_h2() {
        return Err(Error::NotInH2(String::from("cylinder counts are implemented for H(2)")));
    }
    let Some(max) = lengths.iter().copied().max_by(|a, b| {
        ((a.num as u128) * (b.den as u128)).cmp(&((b.num as u128) * (a.den as u128)))
    }) else {
        return Ok(Vec::new());
    };
    budget.check(max)?;
    let mut tallies = alloc::vec![Tally::default(); lengths.len()];
    for d in directions(max) {
        tally_direction(o, d, lengths, &mut tallies)?;
    }
    Ok(lengths
        .iter()
        .zip(tallies)
        .map(|(&length, t)| CountReport { length, n_reg: t.regular, n_irr: t.irregular })
        .collect())
}

pub fn count_cylinders(o: &Origami, l: LengthBound) -> Result<CountReport> {
    count_cylinders_with_budget(o, l, DirectionBudget::default())
}

pub fn count_cylinders_with_budget(o: &Origami, l: LengthBound, budget: DirectionBudget) -> Result<CountReport> {
    Ok(count_cylinders_profile(o, &[l], budget)?.remove(0))
}

/// `r` such that `N_reg(L)/(πL²) → r/ζ(2)`: `r = c̃/(2n)`.
pub fn predicted_coefficient(o: &Origami) -> Result<ExactRational> {
    let c = tilde_c_oracle(o)?;
    Ok(c / ExactRational::from_integer(BigInt::from(2 * o.n() as u64)))
}

/// `ζ(2) = π²/6`.
pub fn zeta2() -> f64 {
    core::f64::consts::PI * core::f64::consts::PI / 6.0
}
