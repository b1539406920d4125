//! Elements of `SL(2,Z)` and their factorization into the generators
//! `T = [[1,1],[0,1]]` and `S = [[0,-1],[1,0]]`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::{Error, Result};

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Matrix2 {
    pub const IDENTITY: Self = Self::new(1, 0, 0, 1);
    pub const T: Self = Self::new(1, 1, 0, 1);
    pub const T_INV: Self = Self::new(1, -1, 0, 1);
    pub const S: Self = Self::new(0, -1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn t_pow(k: i64) -> Self {
        Self::new(1, k, 0, 1)
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    /// Factors a determinant-one matrix into shears and quarter turns whose
    /// ordered product is exactly `self`.
    pub fn factor(&self) -> Result<Vec<Move>> {
        if self.det() != 1 {
            return Err(Error::NotUnimodular([self.a, self.b, self.c, self.d]));
        }
        // Reduce by left multiplication until upper triangular:
        // g_k ⋯ g_1 · M = R, hence M = g_1⁻¹ ⋯ g_k⁻¹ · R.
        let mut m = *self;
        let mut inverses = Vec::new();
        while m.c != 0 {
            let q = m.a.div_euclid(m.c);
            if q != 0 {
                m = Self::t_pow(-q) * m;
                inverses.push(Move::Shear(q));
            }
            m = Self::S * m;
            // S⁻¹ = S³
            inverses.extend([Move::Turn, Move::Turn, Move::Turn]);
        }
        // Now m = ±[[1, x], [0, 1]].
        if m.a == 1 {
            if m.b != 0 {
                inverses.push(Move::Shear(m.b));
            }
        } else {
            // -[[1, -b], [0, 1]] = S² T^{-b}
            inverses.extend([Move::Turn, Move::Turn]);
            if m.b != 0 {
                inverses.push(Move::Shear(-m.b));
            }
        }
        Ok(simplify(inverses))
    }

    /// Same factorization expanded into single generators.
    pub fn to_word(&self) -> Result<Vec<Generator>> {
        let mut word = Vec::new();
        for mv in self.factor()? {
            match mv {
                Move::Turn => word.push(Generator::S),
                Move::Shear(k) if k > 0 => word.extend((0..k).map(|_| Generator::T)),
                Move::Shear(k) => word.extend((0..-k).map(|_| Generator::TInv)),
            }
        }
        Ok(word)
    }
}

impl Mul for Matrix2 {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// One letter of a generator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    T,
    TInv,
    S,
}

impl Generator {
    pub fn matrix(self) -> Matrix2 {
        match self {
            Generator::T => Matrix2::T,
            Generator::TInv => Matrix2::T_INV,
            Generator::S => Matrix2::S,
        }
    }
}

/// A word read as a matrix product: `[g1, g2, .., gk] ↦ g1·g2⋯gk`.
pub fn eval_word(word: &[Generator]) -> Matrix2 {
    word.iter()
        .fold(Matrix2::IDENTITY, |acc, g| acc * g.matrix())
}

/// Compressed factor: a power of `T`, or one `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Shear(i64),
    Turn,
}

impl Move {
    pub fn matrix(self) -> Matrix2 {
        match self {
            Move::Shear(k) => Matrix2::t_pow(k),
            Move::Turn => Matrix2::S,
        }
    }
}

/// Merges adjacent shears and cancels runs of four turns.
fn simplify(moves: Vec<Move>) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::with_capacity(moves.len());
    for mv in moves {
        match (out.last_mut(), mv) {
            (Some(Move::Shear(k)), Move::Shear(j)) => {
                *k += j;
                if *k == 0 {
                    out.pop();
                }
            }
            (_, Move::Shear(0)) => {}
            _ => out.push(mv),
        }
        let len = out.len();
        if len >= 4 && out[len - 4..].iter().all(|m| *m == Move::Turn) {
            out.truncate(len - 4);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(moves: &[Move]) -> Matrix2 {
        moves.iter().fold(Matrix2::IDENTITY, |acc, m| acc * m.matrix())
    }

    #[test]
    fn factorization_reproduces_matrix() {
        let samples = [
            Matrix2::IDENTITY,
            Matrix2::T,
            Matrix2::S,
            Matrix2::new(-1, 0, 0, -1),
            Matrix2::new(2, 3, 1, 2),
            Matrix2::new(0, 1, -1, 0),
            Matrix2::new(5, -7, -2, 3),
            Matrix2::new(-3, 2, 7, -5),
        ];
        for m in samples {
            let f = m.factor().unwrap();
            assert_eq!(product(&f), m, "{m}");
            assert_eq!(eval_word(&m.to_word().unwrap()), m);
        }
    }

    #[test]
    fn identity_factors_to_nothing() {
        assert!(Matrix2::IDENTITY.factor().unwrap().is_empty());
        assert_eq!(Matrix2::t_pow(7).factor().unwrap(), [Move::Shear(7)]);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(
            Matrix2::new(2, 0, 0, 1).factor(),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn s_has_order_four() {
        let s2 = Matrix2::S * Matrix2::S;
        assert_eq!(s2, Matrix2::new(-1, 0, 0, -1));
        assert_eq!(s2 * s2, Matrix2::IDENTITY);
    }
}
