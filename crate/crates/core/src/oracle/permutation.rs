//! Permutations of `{1, …, d}` in one-line notation.
//!
//! # Composition
//!
//! Products are read left to right: `σ·π` applies `σ` first and `π`
//! second, so `τ = σ₀σ₁⋯σ_m` sends `x` to `σ_m(⋯σ₁(σ₀(x)))`. This is the
//! only reading under which the refined factorisation of a fixed special
//! `σ₀` has all of `ak−a+ℓ, …, ak` in one cycle of `τ` automatically; see
//! [`Composition`] for the other order, kept only to demonstrate that.

use std::fmt;

use crate::error::{Error, Result};

/// Order in which the factors of a product act.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Composition {
    /// `σ₀` acts first. The convention used everywhere in this crate.
    LeftToRight,
    /// `σ_m` acts first, as in ordinary function composition.
    RightToLeft,
}

impl Composition {
    pub const REPO: Composition = Composition::LeftToRight;
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u8>,
}

impl Permutation {
    /// From one-line notation `[π(1), …, π(d)]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d > 16 {
            return Err(Error::InvalidInput(format!("degree {d} exceeds 16")));
        }
        let mut seen = vec![false; d];
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d as u8).collect() }
    }

    /// The transposition `(r s)`, 1-based.
    pub fn transposition(d: usize, r: usize, s: usize) -> Self {
        let mut p = Self::identity(d);
        p.images.swap(r - 1, s - 1);
        p
    }

    /// Product of disjoint cycles given 1-based.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=d).collect();
        let mut used = vec![false; d + 1];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x == 0 || x > d || used[x] {
                    return Err(Error::InvalidInput(format!("bad cycle {c:?}")));
                }
                used[x] = true;
                images[x - 1] = c[(i + 1) % c.len()];
            }
        }
        Self::from_one_line(&images)
    }

    /// `(1 … a)(a+1 … 2a)⋯(ak−a+1 … ak)`.
    pub fn special_sigma0(a: usize, k: usize) -> Self {
        let cycles: Vec<Vec<usize>> = (0..k).map(|q| (q * a + 1..=q * a + a).collect()).collect();
        Self::from_cycles(a * k, &cycles).expect("blocks are disjoint")
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `π(x)`, 1-based.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn images(&self) -> &[u8] {
        &self.images
    }

    /// `self·other`: `self` acts first.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    /// `σ₀σ₁⋯σ_m` under the given reading.
    pub fn product(factors: &[Permutation], order: Composition) -> Permutation {
        let d = factors.first().map_or(0, |p| p.degree());
        let mut acc = Self::identity(d);
        match order {
            Composition::LeftToRight => factors.iter().for_each(|f| acc = acc.then(f)),
            Composition::RightToLeft => factors.iter().for_each(|f| acc = f.then(&acc)),
        }
        acc
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `ρ⁻¹·self·ρ` in the left-to-right reading, i.e. relabel each `x` as `ρ(x)`.
    pub fn conjugate(&self, rho: &Permutation) -> Permutation {
        rho.inverse().then(self).then(rho)
    }

    /// Cycles as 1-based lists, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.images.len();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Every permutation of degree `d`, in lexicographic order.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..d as u8).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Every permutation of degree `d` with the given cycle type.
    pub fn of_cycle_type(d: usize, lambda: &[usize]) -> Vec<Permutation> {
        let mut want = lambda.to_vec();
        want.sort_unstable_by(|a, b| b.cmp(a));
        Self::all(d).into_iter().filter(|p| p.cycle_type() == want).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_reads_left_to_right() {
        let a = Permutation::transposition(3, 1, 2);
        let b = Permutation::transposition(3, 2, 3);
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(1), 3);
        assert_eq!(Permutation::product(&[a.clone(), b.clone()], Composition::LeftToRight).apply(1), 3);
        assert_eq!(Permutation::product(&[a, b], Composition::RightToLeft).apply(1), 2);
    }

    #[test]
    fn special_sigma0_shape() {
        let s = Permutation::special_sigma0(2, 3);
        assert_eq!(s.one_line(), vec![2, 1, 4, 3, 6, 5]);
        assert_eq!(s.cycle_type(), vec![2, 2, 2]);
        assert_eq!(Permutation::special_sigma0(3, 1).to_string(), "(1 2 3)");
    }

    #[test]
    fn class_sizes() {
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::of_cycle_type(4, &[2, 2]).len(), 3);
        assert_eq!(Permutation::of_cycle_type(5, &[3, 1, 1]).len(), 20);
    }

    #[test]
    fn inverse_and_conjugation() {
        let p = Permutation::from_one_line(&[3, 1, 4, 2]).unwrap();
        assert_eq!(p.then(&p.inverse()), Permutation::identity(4));
        let rho = Permutation::from_one_line(&[2, 3, 4, 1]).unwrap();
        assert_eq!(p.conjugate(&rho).cycle_type(), p.cycle_type());
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
    }
}
