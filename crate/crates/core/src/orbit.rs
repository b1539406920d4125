//! `SL(2,Z)`-orbits of square-tiled surfaces and their cusps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::census::{classify, ParityClass};
use crate::cylinders::{build_two_cylinder, horizontal_decomposition, TwoCylCoords};
use crate::origami::Origami;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitLabel {
    /// Odd `n > 3`, the orbit holding the surfaces with both heights odd.
    A,
    /// Odd `n > 3`, the orbit holding the surfaces with both widths odd.
    B,
    /// Even `n`.
    E,
    /// `n = 3`.
    SingleOrbit,
    NonPrimitive,
    Other,
}

impl OrbitLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitLabel::A => "A",
            OrbitLabel::B => "B",
            OrbitLabel::E => "E",
            OrbitLabel::SingleOrbit => "single",
            OrbitLabel::NonPrimitive => "nonprimitive",
            OrbitLabel::Other => "other",
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Limits for [`orbit_bfs`].
#[derive(Debug, Clone, Copy)]
pub struct BfsBudget {
    pub max_orbit_size: usize,
}

impl Default for BfsBudget {
    /// Enough for every `n ≤ 150`.
    fn default() -> Self {
        Self { max_orbit_size: 2_000_000 }
    }
}

/// An `SL(2,Z)`-orbit in canonical forms, partitioned into `T`-orbits.
#[derive(Debug, Clone)]
pub struct Orbit {
    /// Canonical forms in discovery order; `surfaces[0]` is the seed's.
    pub surfaces: Vec<Origami>,
    /// `t_image[i]` is the index of `T · surfaces[i]`.
    pub t_image: Vec<usize>,
    /// Cusps as lists of surface indices following `T`; ordered by their
    /// smallest index.
    pub cusps: Vec<Vec<usize>>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.surfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.surfaces.is_empty()
    }

    pub fn n(&self) -> usize {
        self.surfaces[0].n()
    }

    pub fn cusp_widths(&self) -> Vec<usize> {
        self.cusps.iter().map(Vec::len).collect()
    }

    pub fn contains(&self, o: &Origami) -> bool {
        let c = o.canonical_form();
        self.surfaces.contains(&c)
    }
}

/// Enumerates the `SL(2,Z)`-orbit of `seed` by breadth-first search over the
/// generators `T` and `S`.
pub fn orbit_bfs(seed: &Origami) -> Result<Orbit> {
    orbit_bfs_with_budget(seed, BfsBudget::default())
}

pub fn orbit_bfs_with_budget(seed: &Origami, budget: BfsBudget) -> Result<Orbit> {
    if !seed.is_h2() {
        return Err(Error::NotInH2(format!("cone orders {:?}", seed.stratum().cone_orders)));
    }
    if !seed.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let start = seed.canonical_form();
    let mut index: HashMap<Origami, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut surfaces = vec![start];
    let mut t_image = Vec::new();
    let mut head = 0;
    while head < surfaces.len() {
        let cur = surfaces[head].clone();
        head += 1;
        for (k, next) in [cur.shear(1), cur.rotate()].into_iter().enumerate() {
            let next = next.canonical_form();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if surfaces.len() >= budget.max_orbit_size {
                        return Err(Error::ResourceLimit(format!(
                            "orbit exceeds {} surfaces",
                            budget.max_orbit_size
                        )));
                    }
                    let id = surfaces.len();
                    index.insert(next.clone(), id);
                    surfaces.push(next);
                    id
                }
            };
            if k == 0 {
                t_image.push(id);
            }
        }
    }

    let mut seen = vec![false; surfaces.len()];
    let mut cusps = Vec::new();
    for i in 0..surfaces.len() {
        if seen[i] {
            continue;
        }
        let mut cusp = vec![i];
        seen[i] = true;
        let mut j = t_image[i];
        while j != i {
            if seen[j] {
                return Err(Error::Inconsistent("T does not act as a bijection".into()));
            }
            seen[j] = true;
            cusp.push(j);
            j = t_image[j];
        }
        cusps.push(cusp);
    }
    Ok(Orbit { surfaces, t_image, cusps })
}

/// Two-cylinder seed `(1, n-1, 1, 1)`: both heights odd.
pub fn seed_heights_odd(n: u64) -> Result<Origami> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} is below 3")));
    }
    build_two_cylinder(&TwoCylCoords::new(1, n - 1, 1, 1, 0, 0)?)
}

/// Two-cylinder seed `(1, 3, n-3, 1)`: both widths odd (odd `n ≥ 5`).
pub fn seed_widths_odd(n: u64) -> Result<Origami> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "a widths-odd seed needs odd n >= 5, got {n}"
        )));
    }
    build_two_cylinder(&TwoCylCoords::new(1, 3, n - 3, 1, 0, 0)?)
}

/// Labels an orbit from its two-cylinder surfaces.
pub fn label_orbit(orbit: &Orbit) -> OrbitLabel {
    let n = orbit.n() as u64;
    let seed = &orbit.surfaces[0];
    if !seed.is_h2() {
        return OrbitLabel::Other;
    }
    if !seed.is_primitive() {
        return OrbitLabel::NonPrimitive;
    }
    if n == 3 {
        return OrbitLabel::SingleOrbit;
    }
    if n % 2 == 0 {
        return OrbitLabel::E;
    }
    for s in &orbit.surfaces {
        let Ok(d) = horizontal_decomposition(s) else { continue };
        let Some(c) = d.two_cyl_coords() else { continue };
        match classify(&crate::census::CuspParams::from(&c), n) {
            Ok(ParityClass::HOdd) => return OrbitLabel::A,
            Ok(ParityClass::WOdd) => return OrbitLabel::B,
            _ => {}
        }
    }
    OrbitLabel::Other
}

/// The primitive `H(2)` orbits for `n`: one seed for `n = 3` or even `n`,
/// a heights-odd and a widths-odd seed for odd `n ≥ 5`.
pub fn primitive_orbits(n: u64, budget: BfsBudget) -> Result<Vec<(OrbitLabel, Orbit)>> {
    let mut seeds = vec![seed_heights_odd(n)?];
    if n >= 5 && n % 2 == 1 {
        seeds.push(seed_widths_odd(n)?);
    }
    let mut out: Vec<(OrbitLabel, Orbit)> = Vec::new();
    for seed in seeds {
        if out.iter().any(|(_, o)| o.contains(&seed)) {
            continue;
        }
        let orbit = orbit_bfs_with_budget(&seed, budget)?;
        out.push((label_orbit(&orbit), orbit));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l3_orbit() {
        let l3 = Origami::from_images(vec![1, 0, 2], vec![2, 1, 0]).unwrap();
        let orbit = orbit_bfs(&l3).unwrap();
        assert_eq!(orbit.len(), 3);
        let mut widths = orbit.cusp_widths();
        widths.sort_unstable();
        assert_eq!(widths, vec![1, 2]);
        assert_eq!(label_orbit(&orbit), OrbitLabel::SingleOrbit);
    }

    #[test]
    fn budget_is_a_distinct_error() {
        let seed = seed_heights_odd(7).unwrap();
        let err = orbit_bfs_with_budget(&seed, BfsBudget { max_orbit_size: 10 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn rejects_torus_seed() {
        assert!(matches!(orbit_bfs(&Origami::torus()), Err(Error::NotInH2(_))));
    }

    #[test]
    fn five_squares_split_into_two_orbits() {
        let orbits = primitive_orbits(5, BfsBudget::default()).unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0].0, OrbitLabel::A);
        assert_eq!(orbits[1].0, OrbitLabel::B);
        for (_, o) in &orbits {
            assert_eq!(o.cusp_widths().iter().sum::<usize>(), o.len());
        }
    }

    #[test]
    fn four_squares_single_orbit() {
        let orbits = primitive_orbits(4, BfsBudget::default()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].0, OrbitLabel::E);
    }
}
