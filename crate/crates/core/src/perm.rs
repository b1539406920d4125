//! Permutations of `{0, .., n-1}` stored as image arrays.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A bijection of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {x} of {i} is out of range 0..{n}"
                )));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("{x} is hit twice")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation of `{0, .., n-1}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let xi = x as usize;
                if xi >= n || touched[xi] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle element {x} out of range or repeated"
                    )));
                }
                touched[xi] = true;
                images[xi] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self { images: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Self {
        let n = self.len();
        let mut images = vec![0; n];
        let mut done = vec![false; n];
        for start in 0..n {
            if done[start] {
                continue;
            }
            let cycle = self.cycle_of(start as u32);
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (j, &x) in cycle.iter().enumerate() {
                images[x as usize] = cycle[(j + shift) % cycle.len()];
                done[x as usize] = true;
            }
        }
        Self { images }
    }

    /// The cycle through `start`, beginning with `start`.
    pub fn cycle_of(&self, start: u32) -> Vec<u32> {
        let mut cycle = vec![start];
        let mut x = self.apply(start);
        while x != start {
            cycle.push(x);
            x = self.apply(x);
        }
        cycle
    }

    /// All cycles, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() as u32 {
            if seen[i as usize] {
                continue;
            }
            let c = self.cycle_of(i);
            for &x in &c {
                seen[x as usize] = true;
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths in ascending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    /// Conjugate by a relabeling: returns `relabel ∘ self ∘ relabel⁻¹`.
    pub fn conjugate(&self, relabel: &Self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[relabel.apply(i as u32) as usize] = relabel.apply(x);
        }
        Self { images }
    }
}
