//! Minimal projective resolutions, Ext in every degree and the modified
//! Euler form `⟨M, N⟩_t = Σ_p dim Ext^p(M, N) (-t)^p`.

mod resolution;
mod series;
mod tables;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use resolution::{
    default_max_depth, min_proj_resolution, projective, projective_cover, resolve,
    ProjResolution, ProjectiveCover, ResolutionStatus,
};
pub use series::EulerSeries;
pub use tables::{
    generate_table, printed_cases, Finding, FindingKind, PrintedCase, Table, TableEntry,
    TableKind, TableRow,
};

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::matrix::Matrix;
use crate::quiverrep::{all_indecomposables, Fingerprinter, IndecType, Rep};

/// Resolutions of every indecomposable for one rank, computed once up front.
pub struct ResolutionStore {
    n: usize,
    max_depth: usize,
    reps: BTreeMap<IndecType, Rep<Q>>,
    resolutions: BTreeMap<IndecType, Result<ProjResolution>>,
}

impl ResolutionStore {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_depth(n, default_max_depth(n))
    }

    pub fn with_depth(n: usize, max_depth: usize) -> Result<Self> {
        let fpr = Fingerprinter::<Q>::new(n)?;
        let types = all_indecomposables(n);
        let reps: BTreeMap<IndecType, Rep<Q>> = types
            .iter()
            .map(|&t| Ok((t, Rep::indecomposable(n, t)?)))
            .collect::<Result<_>>()?;
        let resolutions = types
            .par_iter()
            .map(|&t| (t, resolve(&reps[&t], max_depth, &fpr)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(ResolutionStore {
            n,
            max_depth,
            reps,
            resolutions,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn types(&self) -> impl Iterator<Item = IndecType> + '_ {
        self.reps.keys().copied()
    }

    pub fn rep(&self, t: IndecType) -> Result<&Rep<Q>> {
        self.reps
            .get(&t)
            .ok_or_else(|| Error::UnknownLabel(t.to_string()))
    }

    pub fn resolution(&self, t: IndecType) -> Result<&ProjResolution> {
        match self.resolutions.get(&t) {
            Some(Ok(r)) => Ok(r),
            Some(Err(e)) => Err(e.clone()),
            None => Err(Error::UnknownLabel(t.to_string())),
        }
    }

    pub fn ext_dim(&self, m: IndecType, n: IndecType, p: usize) -> Result<usize> {
        self.resolution(m)?.ext_dim(self.rep(n)?, p)
    }

    /// `dim Ext^p(M, N)` for `p = 0..count`.
    pub fn ext_dims(&self, m: IndecType, n: IndecType, count: usize) -> Result<Vec<usize>> {
        (0..count).map(|p| self.ext_dim(m, n, p)).collect()
    }

    pub fn euler_series(&self, m: IndecType, n: IndecType) -> Result<EulerSeries> {
        let res = self.resolution(m)?;
        match res.status {
            ResolutionStatus::Finite { length } => {
                let head = self.ext_dims(m, n, length + 1)?;
                Ok(EulerSeries::from_ext_dims(&head, None))
            }
            ResolutionStatus::Periodic { onset, length } => {
                let all = self.ext_dims(m, n, onset + length + 1)?;
                let (head, tail) = all.split_at(onset + 1);
                Ok(EulerSeries::from_ext_dims(head, Some(tail)))
            }
            ResolutionStatus::Undetermined { depth } => Err(Error::Undetermined {
                module: m.to_string(),
                depth,
            }),
        }
    }

    pub fn euler_at_one(&self, m: IndecType, n: IndecType) -> Result<Q> {
        self.euler_series(m, n)?
            .value_at_one_for(&m.to_string(), &n.to_string())
    }

    /// `(⟨S_i, S_j⟩_1)_{i,j}`.
    pub fn simple_matrix(&self) -> Result<Matrix<Q>> {
        let n = self.n;
        let mut s = Matrix::zeros(n, n);
        for i in 1..=n {
            for j in 1..=n {
                s[(i - 1, j - 1)] =
                    self.euler_at_one(IndecType::simple(n, i), IndecType::simple(n, j))?;
            }
        }
        Ok(s)
    }

    /// Compares `⟨M, N⟩_1` with its expansion through dimension vectors.
    pub fn additivity_check(&self, m: IndecType, n: IndecType) -> Result<AdditivityReport> {
        let s = self.simple_matrix()?;
        self.additivity_with(&s, m, n)
    }

    fn additivity_with(&self, s: &Matrix<Q>, m: IndecType, n: IndecType) -> Result<AdditivityReport> {
        let lhs = self.euler_at_one(m, n)?;
        let dm = m.dim_vector(self.n);
        let dn = n.dim_vector(self.n);
        let mut rhs = Q::zero();
        for (a, &x) in dm.iter().enumerate() {
            for (b, &y) in dn.iter().enumerate() {
                rhs = rhs + s[(a, b)].clone() * Q::int((x * y) as i64);
            }
        }
        Ok(AdditivityReport {
            m,
            n,
            holds: lhs == rhs,
            lhs,
            rhs,
        })
    }

    /// Additivity for every ordered pair of indecomposables.
    pub fn additivity_all(&self) -> Result<Vec<AdditivityReport>> {
        let s = self.simple_matrix()?;
        let types: Vec<IndecType> = self.types().collect();
        types
            .iter()
            .flat_map(|&a| types.iter().map(move |&b| (a, b)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(a, b)| self.additivity_with(&s, a, b))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityReport {
    pub m: IndecType,
    pub n: IndecType,
    pub lhs: Q,
    pub rhs: Q,
    pub holds: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::{bilinear_form_a, cartan_matrix};
    use IndecType::*;

    #[test]
    fn v_series() {
        let n = 4;
        let st = ResolutionStore::new(n).unwrap();
        for l in 1..=n {
            for i in 1..=n {
                let s = st.euler_series(V(l), V(i)).unwrap();
                if i <= l {
                    assert_eq!(s, EulerSeries::rational(&[1], &[1, 1]), "V({l}) V({i})");
                    assert_eq!(st.euler_at_one(V(l), V(i)).unwrap(), Q::new(1, 2));
                } else {
                    assert_eq!(s, EulerSeries::rational(&[0, -1], &[1, 1]), "V({l}) V({i})");
                    assert_eq!(st.euler_at_one(V(l), V(i)).unwrap(), Q::new(-1, 2));
                }
            }
        }
    }

    #[test]
    fn w_series() {
        let n = 4;
        let st = ResolutionStore::new(n).unwrap();
        // i ≤ l ≤ j < k + 1
        assert_eq!(st.euler_series(W(2, 3), W(1, 2)).unwrap(), EulerSeries::polynomial(&[1]));
        assert_eq!(st.euler_series(W(1, 1), W(1, 1)).unwrap(), EulerSeries::polynomial(&[1]));
    }

    #[test]
    fn spec_ext_orientation() {
        let st = ResolutionStore::new(3).unwrap();
        assert_eq!(st.ext_dims(V(1), U(2, 3), 3).unwrap(), vec![0, 1, 0]);
        assert_eq!(st.ext_dims(U(2, 3), V(1), 3).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn simple_matrix_is_inverse_transpose_cartan() {
        for n in 1..=5 {
            let st = ResolutionStore::new(n).unwrap();
            let s = st.simple_matrix().unwrap();
            assert_eq!(s.mul(&cartan_matrix(n).transpose()), Matrix::identity(n), "n={n}");
            for i in 0..n {
                let diag = if i + 1 == n { Q::half() } else { Q::one() };
                assert_eq!(s[(i, i)], diag);
                if i + 1 < n {
                    assert_eq!(s[(i, i + 1)], Q::int(-1));
                }
            }
        }
    }

    #[test]
    fn additivity_and_symmetrization() {
        for n in 1..=4 {
            let st = ResolutionStore::new(n).unwrap();
            for r in st.additivity_all().unwrap() {
                assert!(r.holds, "{} {}: {} vs {}", r.m, r.n, r.lhs, r.rhs);
                let back = st.euler_at_one(r.n, r.m).unwrap();
                let sym = bilinear_form_a(&r.m.dim_vector(n), &r.n.dim_vector(n)).unwrap();
                assert_eq!(r.lhs.clone() + back, sym);
            }
        }
    }

    #[test]
    fn projective_dimension_one_restriction() {
        for n in 2..=4 {
            let st = ResolutionStore::new(n).unwrap();
            let mut mods: Vec<IndecType> = (1..n).map(|i| IndecType::simple(n, i)).collect();
            mods.push(U(n, n));
            for &a in &mods {
                for &b in &mods {
                    let s = st.euler_series(a, b).unwrap();
                    assert!(s.is_polynomial() && s.numerator.len() <= 2, "{a} {b}: {s}");
                }
            }
        }
    }
}
