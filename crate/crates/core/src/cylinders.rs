//! Horizontal cylinder decompositions and two-cylinder coordinates.
//!
//! Twists are measured as follows. Each cylinder gets a reference square on
//! its bottom row and one on its top row, both starting a saddle connection;
//! the twist is the horizontal offset of the top reference from the square
//! straight above the bottom reference, modulo the width. When there are
//! several cylinders the references start the saddle connections shared with
//! another cylinder, which makes two-cylinder twists intrinsic. With a
//! single cylinder the top reference starts the same saddle connection as
//! the bottom reference. Under `T` every twist grows by the cylinder height.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd, lcm};
use crate::origami::Origami;
use crate::perm::Permutation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cylinder {
    pub width: u64,
    pub height: u64,
    /// In `0..width`.
    pub twist: u64,
    pub top_sc_count: usize,
    pub bottom_sc_count: usize,
}

impl Cylinder {
    /// Both boundary circles are a single saddle connection.
    pub fn is_regular(&self) -> bool {
        self.top_sc_count == 1 && self.bottom_sc_count == 1
    }
}

/// Cylinders ordered by increasing width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CylinderDecomposition {
    pub cylinders: Vec<Cylinder>,
}

impl CylinderDecomposition {
    pub fn len(&self) -> usize {
        self.cylinders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    pub fn area(&self) -> u64 {
        self.cylinders.iter().map(|c| c.width * c.height).sum()
    }

    pub fn regular_cylinders(&self) -> Vec<Cylinder> {
        regular_cylinders(self)
    }

    pub fn two_cyl_coords(&self) -> Option<TwoCylCoords> {
        match self.cylinders.as_slice() {
            [c1, c2] if c1.width < c2.width => Some(TwoCylCoords {
                a: c1.width,
                b: c2.width,
                h: c1.height,
                y: c2.height,
                t1: c1.twist,
                t2: c2.twist,
            }),
            _ => None,
        }
    }
}

/// Decomposition of an `H(2)` origami into horizontal cylinders.
pub fn horizontal_decomposition(o: &Origami) -> Result<CylinderDecomposition> {
    let stratum = o.stratum();
    if !stratum.is_h2() {
        return Err(Error::NotInH2(format!("cone orders {:?}", stratum.cone_orders)));
    }
    decompose(o)
}

/// Horizontal decomposition of any origami with at least one cone point.
pub fn decompose(o: &Origami) -> Result<CylinderDecomposition> {
    let h = o.sigma_h();
    let v = o.sigma_v();
    let v_inv = v.inverse();
    let sing = o.singular_corners();
    if !sing.iter().any(|&s| s) {
        return Err(Error::InvalidOrigami(
            "no cone point, horizontal cylinders are not bounded by saddle connections".into(),
        ));
    }
    let rows = h.cycles();
    let mut row_of = vec![0usize; o.n()];
    for (r, row) in rows.iter().enumerate() {
        for &s in row {
            row_of[s as usize] = r;
        }
    }
    let top_open: Vec<bool> = rows
        .iter()
        .map(|row| row.iter().any(|&s| sing[v.apply(s) as usize]))
        .collect();

    // Stack rows from each bottom-bounded row upward.
    let mut stacks: Vec<Vec<usize>> = Vec::new();
    let mut cyl_of_row = vec![usize::MAX; rows.len()];
    for (r, row) in rows.iter().enumerate() {
        if !row.iter().any(|&s| sing[s as usize]) {
            continue;
        }
        let id = stacks.len();
        let mut stack = vec![r];
        cyl_of_row[r] = id;
        let mut cur = r;
        while !top_open[cur] {
            cur = row_of[v.apply(rows[cur][0]) as usize];
            if cyl_of_row[cur] != usize::MAX {
                return Err(Error::Inconsistent("cylinder rows overlap".into()));
            }
            cyl_of_row[cur] = id;
            stack.push(cur);
        }
        stacks.push(stack);
    }
    let cyl_of = |s: u32| cyl_of_row[row_of[s as usize]];
    let multi = stacks.len() > 1;

    let mut cylinders = Vec::with_capacity(stacks.len());
    for (id, stack) in stacks.iter().enumerate() {
        let bottom = &rows[stack[0]];
        let top = &rows[*stack.last().unwrap()];
        let width = bottom.len() as u64;
        let height = stack.len() as u64;

        let bottom_sing: Vec<u32> = bottom.iter().copied().filter(|&s| sing[s as usize]).collect();
        let top_sing: Vec<u32> = top
            .iter()
            .copied()
            .filter(|&s| sing[v.apply(s) as usize])
            .collect();

        let (s_b, s_t) = if multi {
            let s_b = bottom_sing
                .iter()
                .copied()
                .filter(|&s| cyl_of(v_inv.apply(s)) != id)
                .min()
                .unwrap_or(bottom_sing[0]);
            let s_t = top_sing
                .iter()
                .copied()
                .filter(|&s| cyl_of(v.apply(s)) != id)
                .min()
                .unwrap_or(top_sing[0]);
            (s_b, s_t)
        } else {
            let s_b = *bottom_sing.iter().min().unwrap();
            (s_b, v_inv.apply(s_b))
        };

        // Square straight above s_b on the top row, then walk right to s_t.
        let mut above = s_b;
        for _ in 1..height {
            above = v.apply(above);
        }
        let twist = offset_along(h, above, s_t).ok_or_else(|| {
            Error::Inconsistent("top reference square is not on the top row".into())
        })?;

        cylinders.push(Cylinder {
            width,
            height,
            twist,
            top_sc_count: top_sing.len(),
            bottom_sc_count: bottom_sing.len(),
        });
    }
    cylinders.sort_by_key(|c| (c.width, c.height, c.twist, c.bottom_sc_count));
    Ok(CylinderDecomposition { cylinders })
}

/// Least `j ≥ 0` with `h^j(from) = to`, if `to` is on the cycle of `from`.
fn offset_along(h: &Permutation, from: u32, to: u32) -> Option<u64> {
    let mut x = from;
    let mut j = 0;
    loop {
        if x == to {
            return Some(j);
        }
        x = h.apply(x);
        j += 1;
        if x == from {
            return None;
        }
    }
}

/// Cylinders whose two boundary circles are single saddle connections.
pub fn regular_cylinders(d: &CylinderDecomposition) -> Vec<Cylinder> {
    d.cylinders.iter().copied().filter(Cylinder::is_regular).collect()
}

/// Coordinates `(a, b, h, y, t1, t2)` = `(w1, w2, h1, h2, t1, t2)` of a
/// two-cylinder surface; cylinder 1 is the narrow, regular one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoCylCoords {
    pub a: u64,
    pub b: u64,
    pub h: u64,
    pub y: u64,
    pub t1: u64,
    pub t2: u64,
}

impl TwoCylCoords {
    pub fn new(a: u64, b: u64, h: u64, y: u64, t1: u64, t2: u64) -> Result<Self> {
        let c = Self { a, b, h, y, t1, t2 };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { a, b, h, y, t1, t2 } = *self;
        let fail = |msg: alloc::string::String| Err(Error::InvalidCoords(msg));
        if a == 0 || b == 0 || h == 0 || y == 0 {
            return fail(format!("a, b, h, y must be positive, got ({a}, {b}, {h}, {y})"));
        }
        if a >= b {
            return fail(format!("a < b violated: a = {a}, b = {b}"));
        }
        if gcd(h, y) != 1 {
            return fail(format!("gcd(h, y) = 1 violated: gcd({h}, {y}) = {}", gcd(h, y)));
        }
        if t1 >= a {
            return fail(format!("0 <= t1 < a violated: t1 = {t1}, a = {a}"));
        }
        if t2 >= b {
            return fail(format!("0 <= t2 < b violated: t2 = {t2}, b = {b}"));
        }
        Ok(())
    }

    /// Number of squares `a·h + b·y`.
    pub fn n(&self) -> u64 {
        self.a * self.h + self.b * self.y
    }

    /// Every valid coordinate tuple with `n` squares, twists included.
    pub fn all_with_area(n: u64) -> Vec<Self> {
        let mut out = Vec::new();
        for a in 1..n {
            for h in 1..n {
                if a * h >= n {
                    break;
                }
                let m = n - a * h;
                for y in 1..=m {
                    if m % y != 0 || gcd(h, y) != 1 {
                        continue;
                    }
                    let b = m / y;
                    if b <= a {
                        continue;
                    }
                    for t1 in 0..a {
                        for t2 in 0..b {
                            out.push(Self { a, b, h, y, t1, t2 });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Glues the two cylinders described by `c` into an origami.
///
/// Cylinder 2 holds labels `0..b·y` row by row from the bottom, cylinder 1
/// the remaining `a·h` labels. The bottom of cylinder 1 sits on positions
/// `0..a` of the top of cylinder 2.
pub fn build_two_cylinder(c: &TwoCylCoords) -> Result<Origami> {
    c.validate()?;
    let TwoCylCoords { a, b, h, y, t1, t2 } = *c;
    let n = c.n() as usize;
    let (a_, b_) = (a as usize, b as usize);
    let base = b_ * y as usize;
    let cyl2 = |row: usize, j: usize| (row * b_ + j) as u32;
    let cyl1 = |row: usize, i: usize| (base + row * a_ + i) as u32;
    // Bottom position of cylinder 2 where the segment coming from cylinder 1 starts.
    let beta = ((b - t2) % b) as usize;

    let mut sh = vec![0u32; n];
    let mut sv = vec![0u32; n];
    for row in 0..y as usize {
        for j in 0..b_ {
            sh[cyl2(row, j) as usize] = cyl2(row, (j + 1) % b_);
            sv[cyl2(row, j) as usize] = if row + 1 < y as usize {
                cyl2(row + 1, j)
            } else if j < a_ {
                cyl1(0, j)
            } else {
                cyl2(0, (beta + j) % b_)
            };
        }
    }
    for row in 0..h as usize {
        for i in 0..a_ {
            sh[cyl1(row, i) as usize] = cyl1(row, (i + 1) % a_);
            sv[cyl1(row, i) as usize] = if row + 1 < h as usize {
                cyl1(row + 1, i)
            } else {
                let shift = (i + a_ - t1 as usize) % a_;
                cyl2(0, (beta + shift) % b_)
            };
        }
    }
    Origami::from_images(sh, sv)
}

/// `lcm(a / gcd(a, h), b / gcd(b, y))`: the number of surfaces in the cusp.
pub fn cusp_width_formula(c: &TwoCylCoords) -> u64 {
    lcm(c.a / gcd(c.a, c.h), c.b / gcd(c.b, c.y))
}

/// Twists reduced modulo `gcd(w_i, h_i)`: the unique representative of the
/// cusp with `0 ≤ t_i < gcd(w_i, h_i)`.
pub fn canonical_cusp_rep(c: &TwoCylCoords) -> TwoCylCoords {
    TwoCylCoords {
        t1: c.t1 % gcd(c.a, c.h),
        t2: c.t2 % gcd(c.b, c.y),
        ..*c
    }
}
