//! Projective covers, syzygies and minimal projective resolutions.
//!
//! The indecomposable projective `P_v = U(n, v)` is generated by one top
//! vector at vertex `v`. Its basis at vertex `w ≥ v` is the image of that
//! vector along the path `v → w`, and at vertex `n` additionally the loop
//! applied to it. A morphism `P_v → M` is therefore the choice of one vector
//! in `M_v`, which is what makes covers and Hom complexes cheap to build.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::matrix::{Matrix, Subspace};
use crate::quiverrep::{Fingerprinter, IndecType, IsoType, Morphism, Rep};

/// `P_i = U(n, i)` for a 1-based vertex `i`.
pub fn projective(n: usize, i: usize) -> Result<IndecType> {
    IndecType::projective(n, i)
}

/// A projective cover together with the vertex (0-based) of each summand.
#[derive(Debug, Clone)]
pub struct ProjectiveCover<F: Field> {
    pub projective: Rep<F>,
    pub epi: Morphism<F>,
    pub generators: Vec<usize>,
}

impl<F: Field> ProjectiveCover<F> {
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.projective.rank()];
        for &v in &self.generators {
            m[v] += 1;
        }
        m
    }
}

/// Direct sum of `P_v` for the listed 0-based vertices.
fn projective_sum<F: Field>(n: usize, generators: &[usize]) -> Result<Rep<F>> {
    let types: Vec<IndecType> = generators
        .iter()
        .map(|&v| IndecType::projective(n, v + 1))
        .collect::<Result<_>>()?;
    Rep::direct_sum_of(n, &types)
}

/// Columns of the map `P_v → M` sending the top of `P_v` to `m ∈ M_v`,
/// restricted to vertex `w`.
fn columns_from_generator<F: Field>(rep: &Rep<F>, v: usize, m: &[F], w: usize) -> Vec<Vec<F>> {
    let n = rep.rank();
    if w < v {
        return Vec::new();
    }
    let along = rep.path_map(v, w).mul_vec(m);
    if w == n - 1 {
        let looped = rep.loop_map().mul_vec(&along);
        vec![along, looped]
    } else {
        vec![along]
    }
}

/// Minimal projective cover: one generator per basis vector of a complement
/// of the radical, vertex by vertex.
pub fn projective_cover<F: Field>(m: &Rep<F>) -> Result<ProjectiveCover<F>> {
    let n = m.rank();
    let radical = m.radical();
    let mut generators = Vec::new();
    let mut elements: Vec<Vec<F>> = Vec::new();
    for (v, rad) in radical.into_iter().enumerate() {
        let mut span = rad;
        for c in 0..m.dims()[v] {
            let mut e = vec![F::zero(); m.dims()[v]];
            e[c] = F::one();
            if span.insert(e.clone()) {
                generators.push(v);
                elements.push(e);
            }
        }
    }
    let projective = projective_sum(n, &generators)?;
    let maps = (0..n)
        .map(|w| {
            let cols: Vec<Vec<F>> = generators
                .iter()
                .zip(&elements)
                .flat_map(|(&v, e)| columns_from_generator(m, v, e, w))
                .collect();
            Matrix::from_columns(m.dims()[w], &cols)
        })
        .collect();
    let epi = Morphism { maps };
    debug_assert!(epi.is_morphism(&projective, m));
    debug_assert!(epi.is_surjective());
    Ok(ProjectiveCover {
        projective,
        epi,
        generators,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ResolutionStatus {
    /// `Ω^{onset} ≅ Ω^{onset + length}`.
    Periodic { onset: usize, length: usize },
    /// `P_k = 0` for `k > length`.
    Finite { length: usize },
    Undetermined { depth: usize },
}

/// A minimal projective resolution `… → P_1 → P_0 → M → 0`.
#[derive(Debug, Clone)]
pub struct ProjResolution {
    pub source: IsoType,
    source_rank: usize,
    /// Multiplicity of each `P_i` in each homological degree.
    pub terms: Vec<Vec<usize>>,
    /// Vertex of each summand of `P_k`, in block order.
    pub generators: Vec<Vec<usize>>,
    pub projectives: Vec<Rep<Q>>,
    /// `P_0 → M`.
    pub augmentation: Morphism<Q>,
    /// `differentials[k - 1] = d_k : P_k → P_{k-1}`.
    pub differentials: Vec<Morphism<Q>>,
    /// `Ω^k M`, starting with `M` itself.
    pub syzygy_types: Vec<IsoType>,
    /// Inclusions `Ω^{k+1} M → P_k`.
    pub(crate) inclusions: Vec<Morphism<Q>>,
    pub status: ResolutionStatus,
}

impl ProjResolution {
    pub fn rank(&self) -> usize {
        self.source_rank
    }

    pub fn period(&self) -> Option<(usize, usize)> {
        match self.status {
            ResolutionStatus::Periodic { onset, length } => Some((onset, length)),
            _ => None,
        }
    }

    /// Highest degree whose projective term has been computed.
    pub fn computed_degree(&self) -> usize {
        self.projectives.len().saturating_sub(1)
    }

    /// `d_k ∘ d_{k+1} = 0` throughout, and `ε ∘ d_1 = 0`.
    pub fn is_complex(&self) -> bool {
        let mut prev = &self.augmentation;
        for d in &self.differentials {
            if !prev.after(d).is_zero() {
                return false;
            }
            prev = d;
        }
        true
    }

    /// Every syzygy lies in the radical of the projective covering it.
    pub fn is_minimal(&self) -> bool {
        self.inclusions.iter().zip(&self.projectives).all(|(inc, p)| {
            let rad: Vec<Subspace<Q>> = p.radical();
            inc.maps
                .iter()
                .zip(&rad)
                .all(|(m, r)| (0..m.cols()).all(|c| r.contains(&m.column(c))))
        })
    }

    /// The degree at which Ext is read off, following periodicity.
    pub fn reduce_degree(&self, p: usize) -> Result<usize> {
        match self.status {
            ResolutionStatus::Periodic { onset, length } if p > onset + length => {
                Ok(onset + 1 + (p - onset - 1) % length)
            }
            ResolutionStatus::Undetermined { depth } if p + 1 > self.computed_degree() => {
                Err(Error::Undetermined {
                    module: self.source.to_string(),
                    depth,
                })
            }
            _ => Ok(p),
        }
    }

    /// `dim Ext^p(M, N)` as cohomology of `Hom(P_•, N)`.
    pub fn ext_dim(&self, target: &Rep<Q>, p: usize) -> Result<usize> {
        let p = self.reduce_degree(p)?;
        if let ResolutionStatus::Finite { length } = self.status {
            if p > length {
                return Ok(0);
            }
        }
        let h = self.hom_dim(target, p);
        let r_out = self.coboundary_rank(target, p + 1);
        let r_in = if p == 0 { 0 } else { self.coboundary_rank(target, p) };
        Ok(h - r_out - r_in)
    }

    fn hom_dim(&self, target: &Rep<Q>, k: usize) -> usize {
        self.generators
            .get(k)
            .map_or(0, |g| g.iter().map(|&v| target.dims()[v]).sum())
    }

    /// Rank of `Hom(P_{k-1}, N) → Hom(P_k, N)`.
    fn coboundary_rank(&self, target: &Rep<Q>, k: usize) -> usize {
        if k == 0 || k >= self.projectives.len() {
            return 0;
        }
        self.coboundary(target, k).rank()
    }

    /// Matrix of `f ↦ f ∘ d_k` in the coordinates `Hom(P_v, N) = N_v`.
    pub(crate) fn coboundary(&self, target: &Rep<Q>, k: usize) -> Matrix<Q> {
        let n = target.rank();
        let dims = target.dims();
        let src = &self.generators[k];
        let dst = &self.generators[k - 1];
        let row_off = offsets(src.iter().map(|&v| dims[v]));
        let col_off = offsets(dst.iter().map(|&v| dims[v]));
        let mut out = Matrix::<Q>::zeros(row_off[src.len()], col_off[dst.len()]);
        let d = &self.differentials[k - 1];
        // position of each source generator inside (P_k)_{v'}
        let summand_dim = |v: usize, w: usize| -> usize {
            match w {
                _ if w < v => 0,
                _ if w == n - 1 => 2,
                _ => 1,
            }
        };
        for (gi, &vp) in src.iter().enumerate() {
            let pos: usize = src[..gi].iter().map(|&v| summand_dim(v, vp)).sum();
            let column = d.maps[vp].column(pos);
            let mut at = 0;
            for (gj, &v) in dst.iter().enumerate() {
                let width = summand_dim(v, vp);
                let coeffs = &column[at..at + width];
                at += width;
                if width == 0 || coeffs.iter().all(Q::is_zero) {
                    continue;
                }
                let path = target.path_map(v, vp);
                let block = if width == 1 {
                    path.scale(&coeffs[0])
                } else {
                    let looped = target.loop_map().mul(&path);
                    path.scale(&coeffs[0]).add(&looped.scale(&coeffs[1]))
                };
                out.set_block(row_off[gi], col_off[gj], &block);
            }
        }
        out
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut acc = vec![0];
    for s in sizes {
        acc.push(acc.last().unwrap() + s);
    }
    acc
}

/// The smallest onset and period consistent with a confirmed repetition.
fn minimal_period(types: &[IsoType], onset: usize, length: usize) -> (usize, usize) {
    let period = (1..=length)
        .filter(|d| length.is_multiple_of(*d))
        .find(|&d| (0..length).all(|r| types[onset + r] == types[onset + r + d]))
        .unwrap_or(length);
    let start = (0..=onset)
        .find(|&p| types[p] == types[p + period])
        .unwrap_or(onset);
    (start, period)
}

/// Resolves a module given as a representation, with syzygies identified
/// through `fpr`.
pub fn resolve(m: &Rep<Q>, max_depth: usize, fpr: &Fingerprinter<Q>) -> Result<ProjResolution> {
    if max_depth == 0 {
        return Err(Error::Invalid("max_depth must be at least 1".into()));
    }
    let n = m.rank();
    let source = fpr.iso_type(m)?;
    let mut syzygy_types = vec![source.clone()];
    let mut projectives = Vec::new();
    let mut generators = Vec::new();
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut inclusions: Vec<Morphism<Q>> = Vec::new();
    let mut augmentation = None;
    let mut omega = m.clone();
    let mut status = None;
    // After a repetition is confirmed one more cover is needed so that Ext
    // is available through degree onset + length.
    let mut extra_cover = false;
    loop {
        let k = projectives.len();
        if omega.is_zero() {
            status.get_or_insert(ResolutionStatus::Finite {
                length: k.saturating_sub(1),
            });
            break;
        }
        let cover = projective_cover(&omega)?;
        match inclusions.last() {
            Some(inc) => differentials.push(inc.after(&cover.epi)),
            None => augmentation = Some(cover.epi.clone()),
        }
        terms.push(cover.multiplicities());
        generators.push(cover.generators.clone());
        let (kernel, inclusion) = cover.projective.subrep_from_bases(cover.epi.kernel_bases())?;
        projectives.push(cover.projective);
        inclusions.push(inclusion);
        if extra_cover {
            break;
        }
        let t = fpr.iso_type(&kernel)?;
        syzygy_types.push(t);
        omega = kernel;
        let last = syzygy_types.len() - 1;
        if syzygy_types[last].is_zero() {
            continue;
        }
        let confirmed = (1..=last / 2).find(|&len| {
            let p0 = last - 2 * len;
            syzygy_types[p0] == syzygy_types[p0 + len] && syzygy_types[p0] == syzygy_types[last]
        });
        if let Some(len) = confirmed {
            let (onset, length) = minimal_period(&syzygy_types, last - 2 * len, len);
            status = Some(ResolutionStatus::Periodic { onset, length });
            extra_cover = true;
            continue;
        }
        if last >= max_depth {
            status = Some(ResolutionStatus::Undetermined { depth: max_depth });
            break;
        }
    }
    Ok(ProjResolution {
        source,
        source_rank: n,
        terms,
        generators,
        projectives,
        augmentation: augmentation.unwrap_or_else(|| Morphism {
            maps: m.dims().iter().map(|&d| Matrix::zeros(d, 0)).collect(),
        }),
        differentials,
        syzygy_types,
        inclusions,
        status: status.expect("loop exits with a status"),
    })
}

/// Minimal projective resolution of an indecomposable.
pub fn min_proj_resolution(n: usize, m: IndecType, max_depth: usize) -> Result<ProjResolution> {
    let fpr = Fingerprinter::<Q>::new(n)?;
    resolve(&Rep::indecomposable(n, m)?, max_depth, &fpr)
}

pub fn default_max_depth(n: usize) -> usize {
    2 * n + 4
}
