//! The bound quiver `1 → 2 → … → n ⟲α` with `α² = 0`, its indecomposable
//! representations, the Cartan matrix and the symmetric form built from it.
//!
//! Vertices are 1-based in every public label ([`IndecType`], dimension
//! vectors printed for humans) and 0-based in array indices.

mod hall;
mod iso;
mod rep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use hall::{
    euler_characteristic, hall_bracket_oracle, submodule_variety_count, BracketEvidence,
    EulerCharacteristic, HallBracket, HallConfig, HallOracle, PointCount,
};
pub use iso::{Fingerprinter, IsoType};
pub use rep::{Morphism, Rep};

use crate::error::{Error, Result};
use crate::field::Q;
use crate::matrix::Matrix;
use crate::rootsys::{root_from_simple_coords, Root};

/// Dimension vector; entry `i` is the dimension at vertex `i + 1`.
pub type DimVector = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    n: usize,
}

impl BoundQuiver {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(n));
        }
        Ok(BoundQuiver { n })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    /// Arrows as 1-based `(source, target)`: the linear arrows `i → i+1`
    /// followed by the loop `α` at `n`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut a: Vec<(usize, usize)> = (1..self.n).map(|i| (i, i + 1)).collect();
        a.push((self.n, self.n));
        a
    }

    /// Index of the loop in [`BoundQuiver::arrows`].
    pub fn loop_arrow(&self) -> usize {
        self.n - 1
    }
}

/// Label of an indecomposable module. Indices are 1-based.
///
/// `U(i, j)` for `1 ≤ i, j ≤ n`, `V(i)` for `1 ≤ i ≤ n`, and `W(i, j)` for
/// `1 ≤ i ≤ j ≤ n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndecType {
    U(usize, usize),
    V(usize),
    W(usize, usize),
}

impl IndecType {
    pub fn validate(self, n: usize) -> Result<Self> {
        let ok = match self {
            IndecType::U(i, j) => (1..=n).contains(&i) && (1..=n).contains(&j),
            IndecType::V(i) => (1..=n).contains(&i),
            IndecType::W(i, j) => 1 <= i && i <= j && j < n,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::IndexOutOfRange(format!("{self} for n = {n}")))
        }
    }

    /// The simple module at vertex `i`.
    pub fn simple(n: usize, i: usize) -> Self {
        if i == n {
            IndecType::V(n)
        } else {
            IndecType::W(i, i)
        }
    }

    /// The two-dimensional module supported at vertex `n`.
    pub fn s_prime(n: usize) -> Self {
        IndecType::U(n, n)
    }

    /// Indecomposable projective cover of the simple at vertex `i`.
    pub fn projective(n: usize, i: usize) -> Result<Self> {
        if !(1..=n).contains(&i) {
            return Err(Error::IndexOutOfRange(format!("vertex {i} for n = {n}")));
        }
        Ok(IndecType::U(n, i))
    }

    pub fn dim_vector(self, n: usize) -> DimVector {
        let mut d = vec![0; n];
        match self {
            IndecType::U(i, j) => {
                let (lo, hi) = (i.min(j), i.max(j));
                for v in lo..hi {
                    d[v - 1] = 1;
                }
                for v in hi..=n {
                    d[v - 1] = 2;
                }
            }
            IndecType::V(i) => {
                for v in i..=n {
                    d[v - 1] = 1;
                }
            }
            IndecType::W(i, j) => {
                for v in i..=j {
                    d[v - 1] = 1;
                }
            }
        }
        d
    }

    /// Positive root attached to the module through its dimension vector.
    pub fn gabriel_root(self, n: usize) -> Root {
        let e = |i| Root::eps(n, i);
        match self {
            IndecType::W(i, j) if j < n => e(i).add(&e(j + 1).neg()),
            IndecType::W(i, _) => e(i),
            IndecType::V(i) => e(i),
            IndecType::U(i, j) if i == j => e(i).scale(2),
            IndecType::U(i, j) => e(i).add(&e(j)),
        }
    }

    pub fn total_dim(self, n: usize) -> usize {
        self.dim_vector(n).iter().sum()
    }
}

impl fmt::Display for IndecType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecType::U(i, j) => write!(f, "U({i},{j})"),
            IndecType::V(i) => write!(f, "V({i})"),
            IndecType::W(i, j) => write!(f, "W({i},{j})"),
        }
    }
}

impl FromStr for IndecType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse module label {s:?}"));
        let s = s.trim();
        let (tag, rest) = s.split_at(1.min(s.len()));
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (tag, nums.as_slice()) {
            ("U", [i, j]) => Ok(IndecType::U(*i, *j)),
            ("V", [i]) => Ok(IndecType::V(*i)),
            ("W", [i, j]) => Ok(IndecType::W(*i, *j)),
            _ => Err(bad()),
        }
    }
}

/// All indecomposables for rank `n` in canonical order (U, then V, then W,
/// each lexicographic in its indices).
pub fn all_indecomposables(n: usize) -> Vec<IndecType> {
    let mut out = Vec::with_capacity((3 * n * n + n) / 2);
    for i in 1..=n {
        for j in 1..=n {
            out.push(IndecType::U(i, j));
        }
    }
    out.extend((1..=n).map(IndecType::V));
    for i in 1..n {
        for j in i..n {
            out.push(IndecType::W(i, j));
        }
    }
    out
}

/// Sum of the dimension vectors of a multiset.
pub fn multiset_dim_vector(n: usize, types: &[IndecType]) -> DimVector {
    types.iter().fold(vec![0; n], |mut acc, t| {
        for (a, d) in acc.iter_mut().zip(t.dim_vector(n)) {
            *a += d;
        }
        acc
    })
}

/// Positive root from a dimension vector via the simple-root identification.
pub fn root_of_dim_vector(d: &[usize]) -> Root {
    let d: Vec<i64> = d.iter().map(|&x| x as i64).collect();
    root_from_simple_coords(&d)
}

/// Columns are the dimension vectors of the indecomposable projectives
/// `P_j = U(n, j)`.
pub fn cartan_matrix(n: usize) -> Matrix<Q> {
    let mut c = Matrix::zeros(n, n);
    for j in 1..=n {
        let d = IndecType::U(n, j).dim_vector(n);
        for i in 0..n {
            c[(i, j - 1)] = Q::int(d[i] as i64);
        }
    }
    c
}

/// The matrix `C^{-1} + C^{-T}` of the symmetric form.
pub fn symmetric_form_matrix(n: usize) -> Matrix<Q> {
    let inv = cartan_matrix(n)
        .inverse()
        .expect("the Cartan matrix has determinant 2");
    inv.add(&inv.transpose())
}

/// Symmetric bilinear form `(M, N)_A` on dimension vectors.
pub fn bilinear_form_a(m: &[usize], nvec: &[usize]) -> Result<Q> {
    if m.len() != nvec.len() {
        return Err(Error::RankMismatch(m.len(), nvec.len()));
    }
    if m.is_empty() {
        return Err(Error::InvalidRank(0));
    }
    let g = symmetric_form_matrix(m.len());
    Ok(form_with(&g, m, nvec))
}

pub(crate) fn form_with(g: &Matrix<Q>, m: &[usize], nvec: &[usize]) -> Q {
    let mut acc = Q::int(0);
    for (i, &a) in m.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in nvec.iter().enumerate() {
            if b == 0 {
                continue;
            }
            acc = acc + g[(i, j)].clone() * Q::int((a * b) as i64);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::rootsys::{inner, RootSystemBC};
    use std::collections::BTreeMap;

    #[test]
    fn counts() {
        for n in 1..=6 {
            assert_eq!(all_indecomposables(n).len(), (3 * n * n + n) / 2);
        }
        assert_eq!(
            all_indecomposables(1),
            vec![IndecType::U(1, 1), IndecType::V(1)]
        );
    }

    #[test]
    fn quiver_shape() {
        let q = BoundQuiver::new(4).unwrap();
        assert_eq!(q.arrows().len(), 4);
        assert_eq!(q.arrows()[q.loop_arrow()], (4, 4));
        assert!(BoundQuiver::new(0).is_err());
    }

    #[test]
    fn label_validation_and_parsing() {
        assert!(IndecType::W(1, 3).validate(3).is_err());
        assert!(IndecType::W(2, 1).validate(3).is_err());
        assert!(IndecType::U(0, 1).validate(3).is_err());
        assert!(IndecType::V(3).validate(3).is_ok());
        for t in all_indecomposables(4) {
            assert_eq!(t.to_string().parse::<IndecType>().unwrap(), t);
        }
        assert!("X(1)".parse::<IndecType>().is_err());
    }

    #[test]
    fn dim_vector_examples() {
        assert_eq!(IndecType::V(1).dim_vector(3), vec![1, 1, 1]);
        assert_eq!(IndecType::U(2, 1).dim_vector(3), vec![1, 2, 2]);
        assert_eq!(IndecType::W(1, 1).dim_vector(3), vec![1, 0, 0]);
        assert_eq!(IndecType::U(3, 3).dim_vector(3), vec![0, 0, 2]);
    }

    #[test]
    fn gabriel_root_examples() {
        let r = |v: Vec<i64>| Root::new(v);
        assert_eq!(IndecType::U(1, 2).gabriel_root(3), r(vec![1, 1, 0]));
        assert_eq!(IndecType::U(2, 1).gabriel_root(3), r(vec![1, 1, 0]));
        assert_eq!(IndecType::V(2).gabriel_root(3), r(vec![0, 1, 0]));
        assert_eq!(IndecType::W(1, 2).gabriel_root(3), r(vec![1, 0, -1]));
    }

    #[test]
    fn gabriel_root_agrees_with_dimension_vector() {
        for n in 1..=6 {
            for t in all_indecomposables(n) {
                assert_eq!(t.gabriel_root(n), root_of_dim_vector(&t.dim_vector(n)), "{t}");
            }
        }
    }

    #[test]
    fn gabriel_fibers() {
        for n in 1..=6 {
            let rs = RootSystemBC::new(n).unwrap();
            let mut fibers: BTreeMap<Root, usize> = BTreeMap::new();
            for t in all_indecomposables(n) {
                *fibers.entry(t.gabriel_root(n)).or_default() += 1;
            }
            assert_eq!(fibers.keys().cloned().collect::<std::collections::BTreeSet<_>>(), rs.phi_plus_bc);
            for (root, size) in fibers {
                let c = root.coeffs();
                let plus_pair = c.iter().filter(|&&x| x == 1).count() == 2;
                assert_eq!(size, if plus_pair { 2 } else { 1 }, "{root}");
            }
        }
    }

    #[test]
    fn cartan_matrix_examples() {
        let c3 = cartan_matrix(3);
        assert_eq!(
            c3,
            Matrix::from_i64_rows(&[&[1, 0, 0], &[1, 1, 0], &[2, 2, 2]])
        );
        assert_eq!(cartan_matrix(1), Matrix::from_i64_rows(&[&[2]]));
        for n in 1..=6 {
            assert_eq!(cartan_matrix(n).determinant(), Q::int(2));
        }
    }

    #[test]
    fn symmetric_form_examples() {
        let s = |i| IndecType::simple(3, i).dim_vector(3);
        assert_eq!(bilinear_form_a(&s(1), &s(2)).unwrap(), Q::int(-1));
        assert_eq!(bilinear_form_a(&s(3), &s(3)).unwrap(), Q::int(1));
        for n in 1..=5 {
            let g = symmetric_form_matrix(n);
            for i in 0..n {
                for j in 0..n {
                    let expected = match (i.abs_diff(j), i == n - 1) {
                        (0, true) => 1,
                        (0, false) => 2,
                        (1, _) => -1,
                        _ => 0,
                    };
                    assert_eq!(g[(i, j)], Q::int(expected));
                }
            }
        }
    }

    #[test]
    fn symmetric_form_matches_root_form() {
        for n in 1..=5 {
            let all = all_indecomposables(n);
            for a in &all {
                for b in &all {
                    let lhs = bilinear_form_a(&a.dim_vector(n), &b.dim_vector(n)).unwrap();
                    let rhs = inner(&a.gabriel_root(n), &b.gabriel_root(n)).unwrap();
                    assert_eq!(lhs, rhs, "({a},{b})");
                }
            }
        }
        assert!(bilinear_form_a(&[1, 0], &[1]).is_err());
        assert!(Q::one().is_one());
    }
}
