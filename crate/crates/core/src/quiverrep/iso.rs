//! Isomorphism types through Hom-fingerprints.
//!
//! Over a representation-finite algebra a module is determined up to
//! isomorphism by the numbers `dim Hom(L, M)` for `L` running through the
//! indecomposables. The matrix `H[L][X] = dim Hom(L, X)` is invertible here,
//! so multiplicities come from one exact solve; a bounded multiset search is
//! kept for the case that it is not.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::matrix::Matrix;

use super::{all_indecomposables, IndecType, Rep};

/// A multiset of indecomposables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct IsoType(BTreeMap<IndecType, usize>);

impl IsoType {
    pub fn new() -> Self {
        IsoType(BTreeMap::new())
    }

    pub fn single(t: IndecType) -> Self {
        Self::from_types(&[t])
    }

    pub fn from_types(types: &[IndecType]) -> Self {
        let mut m = BTreeMap::new();
        for &t in types {
            *m.entry(t).or_insert(0) += 1;
        }
        IsoType(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, t: IndecType) -> usize {
        self.0.get(&t).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (IndecType, usize)> + '_ {
        self.0.iter().map(|(&t, &m)| (t, m))
    }

    /// Summands listed with repetition.
    pub fn to_vec(&self) -> Vec<IndecType> {
        self.iter()
            .flat_map(|(t, m)| std::iter::repeat_n(t, m))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.0.values().sum()
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(t, m)| if m == 1 { t.to_string() } else { format!("{t}^{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Cached indecomposables over `F` plus the inverse Hom matrix.
pub struct Fingerprinter<F: Field> {
    n: usize,
    types: Vec<IndecType>,
    reps: Vec<Rep<F>>,
    hom_inverse: Option<Matrix<Q>>,
}

impl<F: Field> Fingerprinter<F> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        let types = all_indecomposables(n);
        let reps: Vec<Rep<F>> = types
            .iter()
            .map(|&t| Rep::indecomposable(n, t))
            .collect::<Result<_>>()?;
        let k = types.len();
        let mut h = Matrix::<Q>::zeros(k, k);
        for (a, ra) in reps.iter().enumerate() {
            for (b, rb) in reps.iter().enumerate() {
                h[(a, b)] = Q::int(ra.hom_dim(rb)? as i64);
            }
        }
        Ok(Fingerprinter {
            n,
            types,
            reps,
            hom_inverse: h.inverse(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn types(&self) -> &[IndecType] {
        &self.types
    }

    pub fn rep(&self, t: IndecType) -> &Rep<F> {
        let idx = self.types.iter().position(|&x| x == t).expect("label in range");
        &self.reps[idx]
    }

    /// Whether the Hom matrix over the indecomposables is invertible.
    pub fn hom_matrix_invertible(&self) -> bool {
        self.hom_inverse.is_some()
    }

    /// `(dim Hom(L, m))_L` in canonical order.
    pub fn fingerprint(&self, m: &Rep<F>) -> Result<Vec<usize>> {
        self.reps.iter().map(|l| l.hom_dim(m)).collect()
    }

    pub fn fingerprint_of(&self, types: &IsoType) -> Vec<usize> {
        let mut fp = vec![0; self.types.len()];
        for (t, mult) in types.iter() {
            let col = self.reps.iter().map(|l| l.hom_dim(self.rep(t)).unwrap());
            for (f, h) in fp.iter_mut().zip(col) {
                *f += mult * h;
            }
        }
        fp
    }

    pub fn iso_type(&self, m: &Rep<F>) -> Result<IsoType> {
        if m.rank() != self.n {
            return Err(Error::RankMismatch(m.rank(), self.n));
        }
        if m.is_zero() {
            return Ok(IsoType::new());
        }
        let fp = self.fingerprint(m)?;
        let found = match &self.hom_inverse {
            Some(inv) => self.solve_multiplicities(inv, &fp),
            None => self.search(m.dims(), &fp),
        };
        match found {
            Some(t) if super::multiset_dim_vector(self.n, &t.to_vec()) == *m.dims() => Ok(t),
            _ => Err(Error::Unrecognized(format!("dimension vector {:?}", m.dims()))),
        }
    }

    fn solve_multiplicities(&self, inv: &Matrix<Q>, fp: &[usize]) -> Option<IsoType> {
        let rhs: Vec<Q> = fp.iter().map(|&x| Q::int(x as i64)).collect();
        let mult = inv.mul_vec(&rhs);
        let mut out = BTreeMap::new();
        for (t, m) in self.types.iter().zip(mult) {
            let m = m.to_integer()?;
            if m < 0 {
                return None;
            }
            if m > 0 {
                out.insert(*t, m as usize);
            }
        }
        Some(IsoType(out))
    }

    /// Depth-first search over multisets with the given dimension vector.
    fn search(&self, dims: &[usize], fp: &[usize]) -> Option<IsoType> {
        let dvs: Vec<Vec<usize>> = self.types.iter().map(|t| t.dim_vector(self.n)).collect();
        let cols: Vec<Vec<usize>> = self.reps.iter().map(|x| self.fingerprint(x).unwrap()).collect();
        let mut chosen = Vec::new();
        let mut remaining = dims.to_vec();
        let mut acc = vec![0; fp.len()];
        self.search_from(0, &dvs, &cols, &mut remaining, &mut acc, fp, &mut chosen)
            .then(|| IsoType::from_types(&chosen))
    }

    #[allow(clippy::too_many_arguments)]
    fn search_from(
        &self,
        start: usize,
        dvs: &[Vec<usize>],
        cols: &[Vec<usize>],
        remaining: &mut Vec<usize>,
        acc: &mut Vec<usize>,
        fp: &[usize],
        chosen: &mut Vec<IndecType>,
    ) -> bool {
        if remaining.iter().all(|&x| x == 0) {
            return acc == fp;
        }
        if acc.iter().zip(fp).any(|(a, f)| a > f) {
            return false;
        }
        for k in start..self.types.len() {
            if dvs[k].iter().zip(remaining.iter()).any(|(d, r)| d > r) {
                continue;
            }
            for (r, d) in remaining.iter_mut().zip(&dvs[k]) {
                *r -= d;
            }
            for (a, c) in acc.iter_mut().zip(&cols[k]) {
                *a += c;
            }
            chosen.push(self.types[k]);
            if self.search_from(k, dvs, cols, remaining, acc, fp, chosen) {
                return true;
            }
            chosen.pop();
            for (a, c) in acc.iter_mut().zip(&cols[k]) {
                *a -= c;
            }
            for (r, d) in remaining.iter_mut().zip(&dvs[k]) {
                *r += d;
            }
        }
        false
    }

    /// Forces the multiset search, for cross-checking the linear solve.
    pub fn iso_type_by_search(&self, m: &Rep<F>) -> Result<IsoType> {
        let fp = self.fingerprint(m)?;
        self.search(m.dims(), &fp)
            .ok_or_else(|| Error::Unrecognized(format!("dimension vector {:?}", m.dims())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Q, F2};
    use crate::matrix::Subspace;

    #[test]
    fn hom_matrix_invertible_small_ranks() {
        for n in 1..=5 {
            assert!(Fingerprinter::<Q>::new(n).unwrap().hom_matrix_invertible(), "n={n}");
        }
    }

    #[test]
    fn indecomposables_are_pairwise_distinct() {
        for n in 1..=5 {
            let fpr = Fingerprinter::<Q>::new(n).unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for &t in fpr.types() {
                assert!(seen.insert(fpr.fingerprint(fpr.rep(t)).unwrap()), "{t}");
            }
            assert_eq!(seen.len(), (3 * n * n + n) / 2);
        }
    }

    #[test]
    fn recognizes_identity_and_sums() {
        let n = 3;
        let fpr = Fingerprinter::<Q>::new(n).unwrap();
        let v1 = Rep::indecomposable(n, IndecType::V(1)).unwrap();
        assert_eq!(fpr.iso_type(&v1).unwrap(), IsoType::single(IndecType::V(1)));
        let s1: Rep<Q> = Rep::indecomposable(n, IndecType::W(1, 1)).unwrap();
        let sum = s1.direct_sum(&s1);
        let expected = IsoType::from_types(&[IndecType::W(1, 1), IndecType::W(1, 1)]);
        assert_eq!(fpr.iso_type(&sum).unwrap(), expected);
        assert_eq!(fpr.iso_type_by_search(&sum).unwrap(), expected);
    }

    #[test]
    fn kernel_of_cover_of_top_simple() {
        for n in 1..=4 {
            let fpr = Fingerprinter::<Q>::new(n).unwrap();
            let p: Rep<Q> = Rep::indecomposable(n, IndecType::U(n, n)).unwrap();
            let s: Rep<Q> = Rep::indecomposable(n, IndecType::V(n)).unwrap();
            let f = p.hom_basis(&s).unwrap().remove(0);
            assert!(f.is_surjective());
            let (k, _) = p.subrep_from_bases(f.kernel_bases()).unwrap();
            let mut d = vec![0; n];
            d[n - 1] = 1;
            assert_eq!(k.dims(), &d);
            assert_eq!(fpr.iso_type(&k).unwrap(), IsoType::single(IndecType::V(n)));
        }
    }

    #[test]
    fn search_agrees_with_solve_on_mixed_sums() {
        let n = 3;
        let fpr = Fingerprinter::<F2>::new(n).unwrap();
        let types = [IndecType::U(2, 1), IndecType::V(3), IndecType::W(1, 2)];
        let m = Rep::direct_sum_of(n, &types).unwrap();
        let expected = IsoType::from_types(&types);
        assert_eq!(fpr.iso_type(&m).unwrap(), expected);
        assert_eq!(fpr.iso_type_by_search(&m).unwrap(), expected);
    }

    #[test]
    fn decomposable_subrep_of_projective() {
        // rad U(2,1) at n = 2 is spanned by the images of the arrow and the loop
        let n = 2;
        let fpr = Fingerprinter::<Q>::new(n).unwrap();
        let p: Rep<Q> = Rep::indecomposable(n, IndecType::U(2, 1)).unwrap();
        let rad = p.radical();
        let (r, _) = p.subrep(&rad).unwrap();
        assert_eq!(fpr.iso_type(&r).unwrap(), IsoType::single(IndecType::U(2, 2)));
        let _ = Subspace::<Q>::zero(1);
    }
}
