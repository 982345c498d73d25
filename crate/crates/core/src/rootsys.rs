//! Root systems of type B, C and BC in the ε-basis of ℝⁿ.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Q;

/// An integer vector in the ε-basis. Index `i` holds the coefficient of
/// `ε_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Root::new(vec![0; rank])
    }

    /// `ε_i` with 1-based `i`.
    pub fn eps(rank: usize, i: usize) -> Self {
        let mut r = Self::zero(rank);
        r.coeffs[i - 1] = 1;
        r
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Root) -> Root {
        assert_eq!(self.rank(), other.rank());
        Root::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> Root {
        Root::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Root {
        self.scale(-1)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}e{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}e{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Which of the six root sets to test membership against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootSet {
    B,
    C,
    BC,
    PositiveB,
    PositiveC,
    PositiveBC,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemBC {
    rank: usize,
    pub phi_b: BTreeSet<Root>,
    pub phi_c: BTreeSet<Root>,
    pub phi_bc: BTreeSet<Root>,
    /// Simple roots `ε_i - ε_{i+1}` (i < n) followed by `ε_n`.
    pub delta: Vec<Root>,
    pub phi_plus_b: BTreeSet<Root>,
    pub phi_plus_c: BTreeSet<Root>,
    pub phi_plus_bc: BTreeSet<Root>,
}

impl RootSystemBC {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(n));
        }
        let e = |i| Root::eps(n, i);

        let mut long_pos = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                long_pos.insert(e(i).add(&e(j)));
                long_pos.insert(e(i).add(&e(j).neg()));
            }
        }
        let short_pos: BTreeSet<Root> = (1..=n).map(e).collect();
        let double_pos: BTreeSet<Root> = (1..=n).map(|i| e(i).scale(2)).collect();

        let union = |sets: &[&BTreeSet<Root>]| -> BTreeSet<Root> {
            sets.iter().flat_map(|s| s.iter().cloned()).collect()
        };
        let with_negatives = |s: &BTreeSet<Root>| -> BTreeSet<Root> {
            s.iter().flat_map(|r| [r.clone(), r.neg()]).collect()
        };

        let phi_plus_b = union(&[&long_pos, &short_pos]);
        let phi_plus_c = union(&[&long_pos, &double_pos]);
        let phi_plus_bc = union(&[&long_pos, &short_pos, &double_pos]);

        let mut delta: Vec<Root> = (1..n).map(|i| e(i).add(&e(i + 1).neg())).collect();
        delta.push(e(n));

        Ok(RootSystemBC {
            rank: n,
            phi_b: with_negatives(&phi_plus_b),
            phi_c: with_negatives(&phi_plus_c),
            phi_bc: with_negatives(&phi_plus_bc),
            delta,
            phi_plus_b,
            phi_plus_c,
            phi_plus_bc,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn set(&self, which: RootSet) -> &BTreeSet<Root> {
        match which {
            RootSet::B => &self.phi_b,
            RootSet::C => &self.phi_c,
            RootSet::BC => &self.phi_bc,
            RootSet::PositiveB => &self.phi_plus_b,
            RootSet::PositiveC => &self.phi_plus_c,
            RootSet::PositiveBC => &self.phi_plus_bc,
        }
    }

    pub fn contains(&self, r: &Root, which: RootSet) -> Result<bool> {
        if r.rank() != self.rank {
            return Err(Error::RankMismatch(r.rank(), self.rank));
        }
        Ok(self.set(which).contains(r))
    }

    /// Gram matrix of the simple roots under the Euclidean form.
    pub fn simple_gram(&self) -> Vec<Vec<Q>> {
        self.delta
            .iter()
            .map(|a| self.delta.iter().map(|b| inner(a, b).unwrap()).collect())
            .collect()
    }
}

/// Euclidean inner product of ε-coordinate vectors.
pub fn inner(a: &Root, b: &Root) -> Result<Q> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch(a.rank(), b.rank()));
    }
    Ok(Q::int(
        a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x * y).sum(),
    ))
}

/// `Σ d_k α_k` with `α_i = ε_i - ε_{i+1}` for `i < n` and `α_n = ε_n`.
pub fn root_from_simple_coords(d: &[i64]) -> Root {
    let n = d.len();
    let mut c = vec![0; n];
    for (k, &dk) in d.iter().enumerate() {
        c[k] += dk;
        if k + 1 < n {
            c[k + 1] -= dk;
        }
    }
    Root::new(c)
}

/// Inverse of [`root_from_simple_coords`]: the coefficient of `α_k` is the
/// partial sum `c_1 + ... + c_k`.
pub fn simple_coords(r: &Root) -> Vec<i64> {
    r.coeffs
        .iter()
        .scan(0, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_one_positive_roots() {
        let rs = RootSystemBC::new(1).unwrap();
        let expected: BTreeSet<Root> = [Root::new(vec![1]), Root::new(vec![2])].into();
        assert_eq!(rs.phi_plus_bc, expected);
    }

    #[test]
    fn rank_two_positive_roots() {
        let rs = RootSystemBC::new(2).unwrap();
        let expected: BTreeSet<Root> = [
            vec![1, 1],
            vec![1, -1],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![0, 2],
        ]
        .into_iter()
        .map(Root::new)
        .collect();
        assert_eq!(rs.phi_plus_bc, expected);
    }

    #[test]
    fn rank_three_orientation() {
        let rs = RootSystemBC::new(3).unwrap();
        let pos = RootSet::PositiveBC;
        assert!(rs.contains(&Root::new(vec![1, 1, 0]), pos).unwrap());
        assert!(!rs.contains(&Root::new(vec![-1, 1, 0]), pos).unwrap());
    }

    #[test]
    fn zero_rank_rejected() {
        assert!(matches!(RootSystemBC::new(0), Err(Error::InvalidRank(0))));
    }

    #[test]
    fn membership_of_doubled_root() {
        let rs = RootSystemBC::new(3).unwrap();
        let two_e1 = Root::eps(3, 1).add(&Root::eps(3, 1));
        assert!(!rs.contains(&two_e1, RootSet::B).unwrap());
        assert!(rs.contains(&two_e1, RootSet::C).unwrap());
        assert!(rs.contains(&two_e1, RootSet::BC).unwrap());
        assert!(rs.contains(&Root::zero(2), RootSet::BC).is_err());
    }

    #[test]
    fn inner_products() {
        let e = |i| Root::eps(3, i);
        assert_eq!(inner(&e(1), &e(1)).unwrap(), Q::int(1));
        let a = e(1).add(&e(2).neg());
        let b = e(2).add(&e(3).neg());
        assert_eq!(inner(&a, &b).unwrap(), Q::int(-1));
        assert!(inner(&e(1), &Root::eps(2, 1)).is_err());
    }

    #[test]
    fn simple_gram_is_tridiagonal() {
        for n in 1..=6 {
            let g = RootSystemBC::new(n).unwrap().simple_gram();
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j {
                        if i == n - 1 { 1 } else { 2 }
                    } else if i.abs_diff(j) == 1 {
                        -1
                    } else {
                        0
                    };
                    assert_eq!(g[i][j], Q::int(expected), "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn simple_coordinate_examples() {
        let n = 4;
        let mut en = vec![0; n];
        en[n - 1] = 1;
        assert_eq!(root_from_simple_coords(&en), Root::eps(n, n));
        assert_eq!(root_from_simple_coords(&[1; 4]), Root::eps(n, 1));
        assert!(root_from_simple_coords(&[0; 4]).is_zero());
    }

    #[test]
    fn sizes_and_union() {
        for n in 1..=8 {
            let rs = RootSystemBC::new(n).unwrap();
            let union: BTreeSet<Root> = rs.phi_b.union(&rs.phi_c).cloned().collect();
            assert_eq!(rs.phi_bc, union);
            assert_eq!(rs.phi_plus_bc.len(), n * n + n);
            assert_eq!(rs.phi_plus_b.len(), n * n);
            assert_eq!(rs.phi_plus_c.len(), n * n);
            for which in [RootSet::PositiveB, RootSet::PositiveC, RootSet::PositiveBC] {
                for r in rs.set(which) {
                    assert!(!rs.set(which).contains(&r.neg()));
                    assert!(simple_coords(r).iter().all(|&c| c >= 0), "{r}");
                    assert_eq!(root_from_simple_coords(&simple_coords(r)), *r);
                }
            }
            for r in &rs.phi_plus_bc {
                assert!(rs.phi_bc.contains(r));
            }
        }
    }

    proptest! {
        #[test]
        fn simple_coords_are_additive(
            a in proptest::collection::vec(0i64..5, 5),
            b in proptest::collection::vec(0i64..5, 5),
        ) {
            let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(
                root_from_simple_coords(&sum),
                root_from_simple_coords(&a).add(&root_from_simple_coords(&b))
            );
        }

        #[test]
        fn inner_is_symmetric(n in 1usize..6, i in 0usize..64, j in 0usize..64) {
            let rs = RootSystemBC::new(n).unwrap();
            let roots: Vec<&Root> = rs.phi_bc.iter().collect();
            let a = roots[i % roots.len()];
            let b = roots[j % roots.len()];
            prop_assert_eq!(inner(a, b).unwrap(), inner(b, a).unwrap());
        }
    }
}
