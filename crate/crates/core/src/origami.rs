//! Square-tiled surfaces encoded by two permutations of the squares.
//!
//! Square `i` has right neighbor `sigma_h(i)` and upper neighbor
//! `sigma_v(i)`. The `SL(2,Z)` action used throughout is the geometric
//! (left) action: `T = [[1,1],[0,1]]` maps `(sigma_h, sigma_v)` to
//! `(sigma_h, sigma_v ∘ sigma_h⁻¹)` and `S = [[0,-1],[1,0]]` maps it to
//! `(sigma_v⁻¹, sigma_h)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::arith::{ext_gcd, lcm};
use crate::perm::Permutation;
use crate::sl2z::{Generator, Matrix2, Move};
use crate::{Error, Result};

/// Cone-point data: the lengths of the nontrivial cycles of the commutator.
///
/// A cycle of length `k` is a cone point of angle `2πk`. `{3}` is `H(2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumSignature {
    pub cone_orders: Vec<usize>,
}

impl StratumSignature {
    pub fn is_h2(&self) -> bool {
        self.cone_orders == [3]
    }

    pub fn genus(&self) -> usize {
        self.cone_orders.iter().map(|k| k - 1).sum::<usize>() / 2 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Origami {
    sigma_h: Permutation,
    sigma_v: Permutation,
}

const UNSET: u32 = u32::MAX;

impl Origami {
    /// Validates degrees and transitivity.
    pub fn new(sigma_h: Permutation, sigma_v: Permutation) -> Result<Self> {
        if sigma_h.len() != sigma_v.len() {
            return Err(Error::InvalidOrigami(format!(
                "sigma_h has degree {} but sigma_v has degree {}",
                sigma_h.len(),
                sigma_v.len()
            )));
        }
        if sigma_h.is_empty() {
            return Err(Error::InvalidOrigami("no squares".into()));
        }
        let o = Self { sigma_h, sigma_v };
        if !o.is_connected() {
            return Err(Error::InvalidOrigami(
                "sigma_h and sigma_v do not act transitively".into(),
            ));
        }
        Ok(o)
    }

    pub fn from_images(sigma_h: Vec<u32>, sigma_v: Vec<u32>) -> Result<Self> {
        Self::new(Permutation::new(sigma_h)?, Permutation::new(sigma_v)?)
    }

    pub(crate) fn from_parts_unchecked(sigma_h: Permutation, sigma_v: Permutation) -> Self {
        Self { sigma_h, sigma_v }
    }

    /// The one-square torus.
    pub fn torus() -> Self {
        Self::from_parts_unchecked(Permutation::identity(1), Permutation::identity(1))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.sigma_h.len()
    }

    pub fn sigma_h(&self) -> &Permutation {
        &self.sigma_h
    }

    pub fn sigma_v(&self) -> &Permutation {
        &self.sigma_v
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        let (hi, vi) = (self.sigma_h.inverse(), self.sigma_v.inverse());
        while let Some(x) = stack.pop() {
            for y in [
                self.sigma_h.apply(x),
                self.sigma_v.apply(x),
                hi.apply(x),
                vi.apply(x),
            ] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }

    /// `sigma_h ∘ sigma_v ∘ sigma_h⁻¹ ∘ sigma_v⁻¹`.
    pub fn commutator(&self) -> Permutation {
        self.sigma_h
            .compose(&self.sigma_v)
            .compose(&self.sigma_h.inverse())
            .compose(&self.sigma_v.inverse())
    }

    pub fn stratum(&self) -> StratumSignature {
        let cone_orders = self
            .commutator()
            .cycle_type()
            .into_iter()
            .filter(|&k| k > 1)
            .collect();
        StratumSignature { cone_orders }
    }

    pub fn is_h2(&self) -> bool {
        self.stratum().is_h2()
    }

    /// `true` for every square whose lower-left corner is a cone point.
    pub fn singular_corners(&self) -> Vec<bool> {
        let c = self.commutator();
        (0..self.n() as u32).map(|i| c.apply(i) != i).collect()
    }

    /// Whether the absolute period lattice is all of `Z²`.
    ///
    /// Squares get positions along a spanning tree of the adjacency graph;
    /// every gluing then closes a loop whose holonomy is a period, and these
    /// loops generate the absolute homology.
    pub fn is_primitive(&self) -> bool {
        period_lattice_index(self) == 1
    }

    /// Simultaneous relabeling `i ↦ relabel(i)` of both permutations.
    pub fn relabel(&self, relabel: &Permutation) -> Self {
        Self::from_parts_unchecked(
            self.sigma_h.conjugate(relabel),
            self.sigma_v.conjugate(relabel),
        )
    }

    /// Lexicographically least breadth-first relabeling over all base squares.
    ///
    /// From a base square, squares are numbered in discovery order, visiting
    /// the right neighbor before the upper one. Two origamis are equivalent
    /// (simultaneously conjugate) iff their canonical forms are equal.
    pub fn canonical_form(&self) -> Self {
        let n = self.n();
        let h = self.sigma_h.images();
        let v = self.sigma_v.images();
        let mut label = vec![UNSET; n];
        let mut order: Vec<u32> = Vec::with_capacity(n);
        let mut cand_h = vec![0u32; n];
        let mut cand_v = vec![0u32; n];
        let mut best: Option<(Vec<u32>, Vec<u32>)> = None;

        for base in 0..n as u32 {
            label.fill(UNSET);
            order.clear();
            label[base as usize] = 0;
            order.push(base);
            let mut state = if best.is_some() { Ordering::Equal } else { Ordering::Less };
            let mut i = 0;
            let mut worse = false;
            while i < order.len() {
                let x = order[i] as usize;
                for (img, out) in [(h[x], &mut cand_h), (v[x], &mut cand_v)] {
                    if label[img as usize] == UNSET {
                        label[img as usize] = order.len() as u32;
                        order.push(img);
                    }
                    out[i] = label[img as usize];
                }
                if state == Ordering::Equal {
                    let (bh, _) = best.as_ref().unwrap();
                    state = cand_h[i].cmp(&bh[i]);
                    if state == Ordering::Greater {
                        worse = true;
                        break;
                    }
                }
                i += 1;
            }
            if worse {
                continue;
            }
            if state == Ordering::Equal {
                let (_, bv) = best.as_ref().unwrap();
                state = cand_v.as_slice().cmp(bv.as_slice());
            }
            if state == Ordering::Less {
                best = Some((cand_h.clone(), cand_v.clone()));
            }
        }
        let (bh, bv) = best.expect("at least one square");
        Self::from_parts_unchecked(
            Permutation::from_images_unchecked(bh),
            Permutation::from_images_unchecked(bv),
        )
    }

    /// Whether `self` is a relabeling of `canonical`, which must already be
    /// in canonical form. Cheaper than recomputing a canonical form.
    pub fn matches_canonical(&self, canonical: &Self) -> bool {
        let n = self.n();
        if n != canonical.n() {
            return false;
        }
        let h = self.sigma_h.images();
        let v = self.sigma_v.images();
        let ch = canonical.sigma_h.images();
        let cv = canonical.sigma_v.images();
        let mut label = vec![UNSET; n];
        let mut order: Vec<u32> = Vec::with_capacity(n);
        'bases: for base in 0..n as u32 {
            label.fill(UNSET);
            order.clear();
            label[base as usize] = 0;
            order.push(base);
            let mut i = 0;
            while i < order.len() {
                let x = order[i] as usize;
                for (img, target) in [(h[x], ch[i]), (v[x], cv[i])] {
                    if label[img as usize] == UNSET {
                        label[img as usize] = order.len() as u32;
                        order.push(img);
                    }
                    if label[img as usize] != target {
                        continue 'bases;
                    }
                }
                i += 1;
            }
            return true;
        }
        false
    }

    pub fn is_equivalent(&self, other: &Self) -> bool {
        self.n() == other.n() && other.matches_canonical(&self.canonical_form())
    }

    /// Action of `T^k`.
    pub fn shear(&self, k: i64) -> Self {
        let hk = self.sigma_h.pow(-k);
        Self::from_parts_unchecked(self.sigma_h.clone(), self.sigma_v.compose(&hk))
    }

    /// Action of `S`, the counterclockwise quarter turn.
    pub fn rotate(&self) -> Self {
        Self::from_parts_unchecked(self.sigma_v.inverse(), self.sigma_h.clone())
    }

    pub fn apply_move(&self, mv: Move) -> Self {
        match mv {
            Move::Shear(k) => self.shear(k),
            Move::Turn => self.rotate(),
        }
    }

    /// Action of the matrix product `g1·g2⋯gk` of the word `[g1, .., gk]`:
    /// the last letter acts first.
    pub fn apply_word(&self, word: &[Generator]) -> Self {
        word.iter().rev().fold(self.clone(), |o, g| match g {
            Generator::T => o.shear(1),
            Generator::TInv => o.shear(-1),
            Generator::S => o.rotate(),
        })
    }

    pub fn apply_matrix(&self, m: &Matrix2) -> Result<Self> {
        let moves = m.factor()?;
        Ok(moves.iter().rev().fold(self.clone(), |o, mv| o.apply_move(*mv)))
    }

    /// Size of the orbit under the horizontal shear `T`, up to relabeling.
    ///
    /// `T^L` fixes the labeled origami for `L` the lcm of the horizontal
    /// cycle lengths, so the answer is the least divisor `k` of `L` with
    /// `T^k(o) ≅ o`.
    pub fn u_orbit_length(&self) -> u64 {
        let period = self
            .sigma_h
            .cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64));
        let canonical = self.canonical_form();
        let mut k = 1;
        while k < period {
            if period % k == 0 && self.shear(k as i64).matches_canonical(&canonical) {
                return k;
            }
            k += 1;
        }
        period
    }
}

/// Index of the absolute period lattice in `Z²` (0 when it is degenerate).
pub fn period_lattice_index(o: &Origami) -> u64 {
    let n = o.n();
    let h = o.sigma_h().images();
    let v = o.sigma_v().images();
    let (hi, vi) = (o.sigma_h().inverse(), o.sigma_v().inverse());
    let mut pos: Vec<Option<(i64, i64)>> = vec![None; n];
    pos[0] = Some((0, 0));
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let (px, py) = pos[x as usize].unwrap();
        for (y, dx, dy) in [
            (h[x as usize], 1, 0),
            (v[x as usize], 0, 1),
            (hi.apply(x), -1, 0),
            (vi.apply(x), 0, -1),
        ] {
            if pos[y as usize].is_none() {
                pos[y as usize] = Some((px + dx, py + dy));
                queue.push(y);
            }
        }
    }
    let mut lattice = Lattice2::default();
    for s in 0..n {
        let (px, py) = pos[s].unwrap();
        let (rx, ry) = pos[h[s] as usize].unwrap();
        lattice.add((px + 1 - rx, py - ry));
        let (ux, uy) = pos[v[s] as usize].unwrap();
        lattice.add((px - ux, py + 1 - uy));
    }
    lattice.index()
}

/// Integer row reduction of a sublattice of `Z²` to `[[a, b], [0, d]]`.
#[derive(Debug, Default, Clone, Copy)]
struct Lattice2 {
    a: i64,
    b: i64,
    d: i64,
}

impl Lattice2 {
    fn add(&mut self, (x, y): (i64, i64)) {
        if x == 0 {
            self.d = crate::arith::gcd(self.d.unsigned_abs(), y.unsigned_abs()) as i64;
            return;
        }
        let (g, s, t) = ext_gcd(self.a, x);
        let rest = (self.a / g) * y - (x / g) * self.b;
        self.b = s * self.b + t * y;
        self.a = g;
        self.d = crate::arith::gcd(self.d.unsigned_abs(), rest.unsigned_abs()) as i64;
        if self.d != 0 {
            self.b = self.b.rem_euclid(self.d);
        }
    }

    fn index(&self) -> u64 {
        (self.a.unsigned_abs()) * (self.d.unsigned_abs())
    }
}
