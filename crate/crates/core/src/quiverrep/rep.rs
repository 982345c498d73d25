use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};

use super::{DimVector, IndecType};

/// A finite-dimensional representation of the bound quiver.
///
/// `maps[a]` for `a < n - 1` is the arrow from vertex `a` to `a + 1`
/// (0-based); `maps[n - 1]` is the loop at the last vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep<F: Field> {
    dims: DimVector,
    maps: Vec<Matrix<F>>,
}

/// A morphism of representations given vertex by vertex; `maps[v]` has shape
/// `target.dims[v] x source.dims[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism<F: Field> {
    pub maps: Vec<Matrix<F>>,
}

impl<F: Field> Rep<F> {
    /// Checks matrix shapes and the relation `α² = 0`.
    pub fn new(dims: DimVector, maps: Vec<Matrix<F>>) -> Result<Self> {
        let n = dims.len();
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        if maps.len() != n {
            return Err(Error::Invalid(format!("expected {n} arrow maps, got {}", maps.len())));
        }
        let r = Rep { dims, maps };
        for a in 0..n {
            let (s, t) = r.arrow_ends(a);
            if r.maps[a].shape() != (r.dims[t], r.dims[s]) {
                return Err(Error::Invalid(format!(
                    "arrow {a} has shape {:?}, expected {:?}",
                    r.maps[a].shape(),
                    (r.dims[t], r.dims[s])
                )));
            }
        }
        let lp = &r.maps[n - 1];
        if !lp.mul(lp).is_zero() {
            return Err(Error::Invalid("loop does not square to zero".into()));
        }
        Ok(r)
    }

    pub fn zero(n: usize) -> Self {
        Rep {
            dims: vec![0; n],
            maps: (0..n).map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    /// The module drawn for each label: `U(i,j)` is `K` on `min..max-1` and
    /// `K²` on `max..n`, entering `K²` through `e_1` when `j < i` and `e_2`
    /// when `i < j`, with loop `[[0,0],[1,0]]`; `V(i)` is `K` on `i..n` with
    /// zero loop; `W(i,j)` is `K` on `i..j`.
    pub fn indecomposable(n: usize, t: IndecType) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        t.validate(n)?;
        let dims = t.dim_vector(n);
        let one = || Matrix::from_rows(1, 1, vec![vec![F::one()]]);
        let mut maps = Vec::with_capacity(n);
        for a in 0..n - 1 {
            let (ds, dt) = (dims[a], dims[a + 1]);
            let m = match (ds, dt) {
                (1, 1) => one(),
                (2, 2) => Matrix::identity(2),
                (1, 2) => {
                    let upper = matches!(t, IndecType::U(i, j) if j < i);
                    let col = if upper {
                        vec![vec![F::one()], vec![F::zero()]]
                    } else {
                        vec![vec![F::zero()], vec![F::one()]]
                    };
                    Matrix::from_rows(2, 1, col)
                }
                _ => Matrix::zeros(dt, ds),
            };
            maps.push(m);
        }
        let last = dims[n - 1];
        maps.push(if last == 2 {
            Matrix::from_rows(2, 2, vec![vec![F::zero(), F::zero()], vec![F::one(), F::zero()]])
        } else {
            Matrix::zeros(last, last)
        });
        Rep::new(dims, maps)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        Rep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        }
    }

    pub fn direct_sum_of(n: usize, types: &[IndecType]) -> Result<Self> {
        let mut acc = Rep::zero(n);
        for &t in types {
            acc = acc.direct_sum(&Rep::indecomposable(n, t)?);
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn dim_vector(&self) -> DimVector {
        self.dims.clone()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn loop_map(&self) -> &Matrix<F> {
        &self.maps[self.rank() - 1]
    }

    /// 0-based `(source, target)` of arrow `a`.
    pub fn arrow_ends(&self, a: usize) -> (usize, usize) {
        let n = self.rank();
        if a + 1 < n {
            (a, a + 1)
        } else {
            (n - 1, n - 1)
        }
    }

    /// Composite of the linear arrows from vertex `from` to vertex `to`
    /// (0-based, `from <= to`); the identity when they agree.
    pub fn path_map(&self, from: usize, to: usize) -> Matrix<F> {
        assert!(from <= to);
        let mut m = Matrix::identity(self.dims[from]);
        for a in from..to {
            m = self.maps[a].mul(&m);
        }
        m
    }

    /// Per-vertex span of the images of all arrows ending there.
    pub fn radical(&self) -> Vec<Subspace<F>> {
        let n = self.rank();
        (0..n)
            .map(|v| {
                let mut s = Subspace::zero(self.dims[v]);
                let mut add_image = |m: &Matrix<F>| {
                    for j in 0..m.cols() {
                        s.insert(m.column(j));
                    }
                };
                if v > 0 {
                    add_image(&self.maps[v - 1]);
                }
                if v == n - 1 {
                    add_image(&self.maps[n - 1]);
                }
                s
            })
            .collect()
    }

    /// Basis of `Hom(self, target)`.
    pub fn hom_basis(&self, target: &Self) -> Result<Vec<Morphism<F>>> {
        let system = self.intertwiner_system(target)?;
        let kernel = system.kernel();
        let offsets = self.hom_offsets(target);
        Ok((0..kernel.cols())
            .map(|c| {
                let col = kernel.column(c);
                Morphism {
                    maps: (0..self.rank())
                        .map(|v| {
                            let (r, k) = (target.dims[v], self.dims[v]);
                            let mut m = Matrix::zeros(r, k);
                            for i in 0..r {
                                for j in 0..k {
                                    m[(i, j)] = col[offsets[v] + i * k + j].clone();
                                }
                            }
                            m
                        })
                        .collect(),
                }
            })
            .collect())
    }

    /// `dim Hom(self, target)`.
    pub fn hom_dim(&self, target: &Self) -> Result<usize> {
        Ok(self.intertwiner_system(target)?.nullity())
    }

    fn hom_offsets(&self, target: &Self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.rank() + 1);
        let mut acc = 0;
        for v in 0..self.rank() {
            offsets.push(acc);
            acc += target.dims[v] * self.dims[v];
        }
        offsets.push(acc);
        offsets
    }

    /// Linear system in the entries of `(f_v)` encoding
    /// `f_t · M_a = N_a · f_s` for every arrow `a: s → t`.
    fn intertwiner_system(&self, target: &Self) -> Result<Matrix<F>> {
        if self.rank() != target.rank() {
            return Err(Error::RankMismatch(self.rank(), target.rank()));
        }
        let offsets = self.hom_offsets(target);
        let unknowns = offsets[self.rank()];
        let mut rows: Vec<Vec<F>> = Vec::new();
        for a in 0..self.rank() {
            let (s, t) = self.arrow_ends(a);
            let (ma, na) = (&self.maps[a], &target.maps[a]);
            // entry (r, c) of f_t M_a - N_a f_s, with r < N_t and c < M_s
            for r in 0..target.dims[t] {
                for c in 0..self.dims[s] {
                    let mut row = vec![F::zero(); unknowns];
                    for k in 0..self.dims[t] {
                        let idx = offsets[t] + r * self.dims[t] + k;
                        row[idx] = row[idx].clone() + ma[(k, c)].clone();
                    }
                    for k in 0..target.dims[s] {
                        let idx = offsets[s] + k * self.dims[s] + c;
                        row[idx] = row[idx].clone() - na[(r, k)].clone();
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let count = rows.len();
        Ok(Matrix::from_rows(count, unknowns, rows))
    }

    /// The subrepresentation spanned by the given per-vertex subspaces,
    /// together with its inclusion. The subspaces must be arrow-invariant.
    pub fn subrep(&self, spaces: &[Subspace<F>]) -> Result<(Rep<F>, Morphism<F>)> {
        let bases: Vec<Matrix<F>> = spaces.iter().map(Subspace::basis_matrix).collect();
        self.subrep_from_bases(bases)
    }

    /// Like [`Rep::subrep`] with explicit column bases (independent columns).
    pub fn subrep_from_bases(&self, bases: Vec<Matrix<F>>) -> Result<(Rep<F>, Morphism<F>)> {
        let n = self.rank();
        let mut maps = Vec::with_capacity(n);
        for a in 0..n {
            let (s, t) = self.arrow_ends(a);
            let image = self.maps[a].mul(&bases[s]);
            let m = bases[t].solve(&image).ok_or_else(|| {
                Error::Invalid(format!("subspace not invariant under arrow {a}"))
            })?;
            maps.push(m);
        }
        let dims = bases.iter().map(Matrix::cols).collect();
        Ok((Rep { dims, maps }, Morphism { maps: bases }))
    }

    /// Quotient by invariant per-vertex subspaces, with the projection.
    /// Quotient coordinates are the non-pivot coordinates after reduction.
    pub fn quotient(&self, spaces: &[Subspace<F>]) -> (Rep<F>, Morphism<F>) {
        let n = self.rank();
        let free: Vec<Vec<usize>> = spaces
            .iter()
            .enumerate()
            .map(|(v, s)| (0..self.dims[v]).filter(|c| !s.pivots().contains(c)).collect())
            .collect();
        let project = |v: usize, x: &[F]| -> Vec<F> {
            let r = spaces[v].reduce(x);
            free[v].iter().map(|&c| r[c].clone()).collect()
        };
        let maps = (0..n)
            .map(|a| {
                let (s, t) = self.arrow_ends(a);
                let cols: Vec<Vec<F>> = free[s]
                    .iter()
                    .map(|&c| project(t, &self.maps[a].column(c)))
                    .collect();
                Matrix::from_columns(free[t].len(), &cols)
            })
            .collect();
        let projection = Morphism {
            maps: (0..n)
                .map(|v| {
                    let cols: Vec<Vec<F>> = (0..self.dims[v])
                        .map(|c| {
                            let mut e = vec![F::zero(); self.dims[v]];
                            e[c] = F::one();
                            project(v, &e)
                        })
                        .collect();
                    Matrix::from_columns(free[v].len(), &cols)
                })
                .collect(),
        };
        let dims = free.iter().map(Vec::len).collect();
        (Rep { dims, maps }, projection)
    }

    /// Whether the per-vertex subspaces are closed under every arrow.
    pub fn is_invariant(&self, spaces: &[Subspace<F>]) -> bool {
        (0..self.rank()).all(|a| {
            let (s, t) = self.arrow_ends(a);
            spaces[s]
                .basis()
                .iter()
                .all(|v| spaces[t].contains(&self.maps[a].mul_vec(v)))
        })
    }
}

impl<F: Field> Morphism<F> {
    pub fn identity(rep: &Rep<F>) -> Self {
        Morphism {
            maps: rep.dims().iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism<F>) -> Morphism<F> {
        Morphism {
            maps: self
                .maps
                .iter()
                .zip(&first.maps)
                .map(|(g, f)| g.mul(f))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_morphism(&self, source: &Rep<F>, target: &Rep<F>) -> bool {
        (0..source.rank()).all(|a| {
            let (s, t) = source.arrow_ends(a);
            self.maps[t].mul(&source.maps()[a]) == target.maps()[a].mul(&self.maps[s])
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    /// Per-vertex kernels as column bases.
    pub fn kernel_bases(&self) -> Vec<Matrix<F>> {
        self.maps.iter().map(Matrix::kernel).collect()
    }

    /// Flattened entries, used to compare morphisms as vectors.
    pub fn flatten(&self) -> Vec<F> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }
}
