//! Point counts of submodule varieties and the Hall-bracket oracle.
//!
//! `V(X, Y; Z)` is the set of subrepresentations `Z₁ ⊆ Z` with `Z₁ ≅ Y` and
//! `Z/Z₁ ≅ X`. Its points over `F_p` are enumerated directly: per-vertex
//! subspaces of the prescribed dimension in reduced echelon form, pruned by
//! arrow invariance as soon as both ends of an arrow are fixed. The Euler
//! characteristic is the counting polynomial evaluated at `q = 1`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::matrix::Subspace;

use super::{multiset_dim_vector, Fingerprinter, IndecType, IsoType, Rep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallConfig {
    /// The first two primes are fitted; a third, if present, confirms a
    /// non-constant fit.
    pub primes: Vec<u64>,
    /// Maximum number of partial subspace tuples visited per count.
    pub budget: u64,
}

impl Default for HallConfig {
    fn default() -> Self {
        HallConfig {
            primes: vec![2, 3, 5],
            budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub prime: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerCharacteristic {
    pub value: i64,
    /// Counting polynomial `slope·q + constant`.
    pub slope: i64,
    pub constant: i64,
    pub counts: Vec<PointCount>,
}

/// All `k`-dimensional subspaces of `F_p^d`, one per reduced echelon form.
fn subspaces<const P: u64>(d: usize, k: usize) -> Vec<Subspace<Gf<P>>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots::<P>(d, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots<const P: u64>(
    d: usize,
    k: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Subspace<Gf<P>>>,
) {
    if pivots.len() == k {
        // free positions: (row r, column c) with c > pivot_r and c not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                (p + 1..d)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = (P as usize).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows: Vec<Vec<Gf<P>>> = pivots
                .iter()
                .map(|&p| {
                    let mut r = vec![Gf::<P>::zero(); d];
                    r[p] = Gf::one();
                    r
                })
                .collect();
            for &(r, c) in &free {
                rows[r][c] = Gf::new((code % P as usize) as u64);
                code /= P as usize;
            }
            out.push(Subspace::spanned_by(d, rows));
        }
        return;
    }
    for p in start..d {
        pivots.push(p);
        choose_pivots::<P>(d, k, p + 1, pivots, out);
        pivots.pop();
    }
}

/// Per-prime machinery: fingerprints over `F_p` and the enumeration.
struct PrimeCounter<const P: u64> {
    fpr: Fingerprinter<Gf<P>>,
}

impl<const P: u64> PrimeCounter<P> {
    fn new(n: usize) -> Result<Self> {
        Ok(PrimeCounter {
            fpr: Fingerprinter::new(n)?,
        })
    }

    fn count(&self, x: &IsoType, y: &IsoType, z: &IsoType, budget: u64) -> Result<u64> {
        let n = self.fpr.rank();
        let sub_dims = multiset_dim_vector(n, &y.to_vec());
        let zrep: Rep<Gf<P>> = Rep::direct_sum_of(n, &z.to_vec())?;
        let choices: Vec<Vec<Subspace<Gf<P>>>> = (0..n)
            .map(|v| subspaces::<P>(zrep.dims()[v], sub_dims[v]))
            .collect();
        let mut chosen: Vec<Subspace<Gf<P>>> = Vec::with_capacity(n);
        let mut visited = 0u64;
        let mut hits = 0u64;
        self.walk(&zrep, &choices, &mut chosen, &mut visited, budget, &mut |spaces| {
            let (sub, _) = zrep.subrep(spaces)?;
            if self.fpr.iso_type(&sub)? != *y {
                return Ok(());
            }
            let (quo, _) = zrep.quotient(spaces);
            if self.fpr.iso_type(&quo)? == *x {
                hits += 1;
            }
            Ok(())
        })?;
        Ok(hits)
    }

    fn walk(
        &self,
        zrep: &Rep<Gf<P>>,
        choices: &[Vec<Subspace<Gf<P>>>],
        chosen: &mut Vec<Subspace<Gf<P>>>,
        visited: &mut u64,
        budget: u64,
        leaf: &mut dyn FnMut(&[Subspace<Gf<P>>]) -> Result<()>,
    ) -> Result<()> {
        let n = zrep.rank();
        let v = chosen.len();
        if v == n {
            return leaf(chosen);
        }
        for s in &choices[v] {
            *visited += 1;
            if *visited > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            if v > 0 && !maps_into(zrep, v - 1, &chosen[v - 1], s) {
                continue;
            }
            if v == n - 1 && !maps_into(zrep, n - 1, s, s) {
                continue;
            }
            chosen.push(s.clone());
            self.walk(zrep, choices, chosen, visited, budget, leaf)?;
            chosen.pop();
        }
        Ok(())
    }
}

fn maps_into<F: Field>(rep: &Rep<F>, arrow: usize, from: &Subspace<F>, to: &Subspace<F>) -> bool {
    from.basis()
        .iter()
        .all(|b| to.contains(&rep.maps()[arrow].mul_vec(b)))
}

/// Point counters for the primes of a [`HallConfig`].
pub struct HallOracle {
    n: usize,
    config: HallConfig,
    f2: Option<PrimeCounter<2>>,
    f3: Option<PrimeCounter<3>>,
    f5: Option<PrimeCounter<5>>,
    f7: Option<PrimeCounter<7>>,
}

impl HallOracle {
    pub fn new(n: usize, config: HallConfig) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(0));
        }
        let mut seen = Vec::new();
        for &p in &config.primes {
            if ![2, 3, 5, 7].contains(&p) {
                return Err(Error::UnsupportedPrime(p));
            }
            if seen.contains(&p) {
                return Err(Error::Invalid(format!("prime {p} listed twice")));
            }
            seen.push(p);
        }
        if seen.len() < 2 {
            return Err(Error::TooFewPrimes(seen));
        }
        let has = |p| config.primes.contains(&p);
        Ok(HallOracle {
            n,
            f2: has(2).then(|| PrimeCounter::new(n)).transpose()?,
            f3: has(3).then(|| PrimeCounter::new(n)).transpose()?,
            f5: has(5).then(|| PrimeCounter::new(n)).transpose()?,
            f7: has(7).then(|| PrimeCounter::new(n)).transpose()?,
            config,
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn config(&self) -> &HallConfig {
        &self.config
    }

    /// `|V(X, Y; Z)(F_p)|`; zero without enumeration when dimension vectors
    /// do not add up.
    pub fn count(&self, x: &IsoType, y: &IsoType, z: &IsoType, p: u64) -> Result<u64> {
        let n = self.n;
        for t in x.to_vec().iter().chain(y.to_vec().iter()).chain(z.to_vec().iter()) {
            t.validate(n)?;
        }
        let dx = multiset_dim_vector(n, &x.to_vec());
        let dy = multiset_dim_vector(n, &y.to_vec());
        let dz = multiset_dim_vector(n, &z.to_vec());
        if dx.iter().zip(&dy).map(|(a, b)| a + b).ne(dz.iter().copied()) {
            return Ok(0);
        }
        let budget = self.config.budget;
        let missing = || Error::Invalid(format!("prime {p} not configured"));
        match p {
            2 => self.f2.as_ref().ok_or_else(missing)?.count(x, y, z, budget),
            3 => self.f3.as_ref().ok_or_else(missing)?.count(x, y, z, budget),
            5 => self.f5.as_ref().ok_or_else(missing)?.count(x, y, z, budget),
            7 => self.f7.as_ref().ok_or_else(missing)?.count(x, y, z, budget),
            _ => Err(Error::UnsupportedPrime(p)),
        }
    }

    pub fn euler_characteristic(
        &self,
        x: &IsoType,
        y: &IsoType,
        z: &IsoType,
    ) -> Result<EulerCharacteristic> {
        let primes = &self.config.primes;
        let (p1, p2) = (primes[0], primes[1]);
        let c1 = self.count(x, y, z, p1)?;
        let c2 = self.count(x, y, z, p2)?;
        let mut counts = vec![
            PointCount { prime: p1, count: c1 },
            PointCount { prime: p2, count: c2 },
        ];
        if c1 == c2 {
            return Ok(EulerCharacteristic {
                value: c1 as i64,
                slope: 0,
                constant: c1 as i64,
                counts,
            });
        }
        let raw = |cs: &[PointCount]| cs.iter().map(|c| (c.prime, c.count)).collect();
        let (dc, dp) = (c2 as i64 - c1 as i64, p2 as i64 - p1 as i64);
        if dc % dp != 0 {
            return Err(Error::NonPolynomialCount { counts: raw(&counts) });
        }
        let slope = dc / dp;
        let constant = c1 as i64 - slope * p1 as i64;
        let Some(&p3) = primes.get(2) else {
            return Err(Error::TooFewPrimes(primes.clone()));
        };
        let c3 = self.count(x, y, z, p3)?;
        counts.push(PointCount { prime: p3, count: c3 });
        if slope * p3 as i64 + constant != c3 as i64 {
            return Err(Error::HighDegreeCount { counts: raw(&counts) });
        }
        Ok(EulerCharacteristic {
            value: slope + constant,
            slope,
            constant,
            counts,
        })
    }

    /// `[X, Y] = Σ_Z (χ(V(X,Y;Z)) - χ(V(Y,X;Z))) Z` over indecomposable `Z`.
    pub fn bracket(&self, x: IndecType, y: IndecType) -> Result<HallBracket> {
        let n = self.n;
        x.validate(n)?;
        y.validate(n)?;
        let target: Vec<usize> = x
            .dim_vector(n)
            .iter()
            .zip(y.dim_vector(n))
            .map(|(a, b)| a + b)
            .collect();
        let (xs, ys) = (IsoType::single(x), IsoType::single(y));
        let mut terms = BTreeMap::new();
        let mut evidence = Vec::new();
        for z in super::all_indecomposables(n) {
            if z.dim_vector(n) != target {
                continue;
            }
            let zs = IsoType::single(z);
            let forward = self.euler_characteristic(&xs, &ys, &zs)?;
            let backward = self.euler_characteristic(&ys, &xs, &zs)?;
            let coeff = forward.value - backward.value;
            if coeff != 0 {
                terms.insert(z, coeff);
            }
            evidence.push(BracketEvidence { z, forward, backward });
        }
        Ok(HallBracket { x, y, terms, evidence })
    }

    /// Oracle brackets for every ordered pair, in canonical pair order.
    pub fn all_brackets(&self) -> Vec<(IndecType, IndecType, Result<HallBracket>)> {
        let all = super::all_indecomposables(self.n);
        let pairs: Vec<(IndecType, IndecType)> = all
            .iter()
            .flat_map(|&a| all.iter().map(move |&b| (a, b)))
            .collect();
        pairs
            .into_par_iter()
            .map(|(a, b)| (a, b, self.bracket(a, b)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketEvidence {
    pub z: IndecType,
    pub forward: EulerCharacteristic,
    pub backward: EulerCharacteristic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallBracket {
    pub x: IndecType,
    pub y: IndecType,
    pub terms: BTreeMap<IndecType, i64>,
    pub evidence: Vec<BracketEvidence>,
}

/// One-shot count of `V(X, Y; Z)` over `F_p`.
pub fn submodule_variety_count(
    n: usize,
    x: &[IndecType],
    y: &[IndecType],
    z: &[IndecType],
    p: u64,
    budget: u64,
) -> Result<u64> {
    let other = if p == 2 { 3 } else { 2 };
    let oracle = HallOracle::new(
        n,
        HallConfig {
            primes: vec![p, other],
            budget,
        },
    )?;
    oracle.count(
        &IsoType::from_types(x),
        &IsoType::from_types(y),
        &IsoType::from_types(z),
        p,
    )
}

/// One-shot Euler characteristic of `V(X, Y; Z)`.
pub fn euler_characteristic(
    n: usize,
    x: &[IndecType],
    y: &[IndecType],
    z: &[IndecType],
    config: &HallConfig,
) -> Result<EulerCharacteristic> {
    HallOracle::new(n, config.clone())?.euler_characteristic(
        &IsoType::from_types(x),
        &IsoType::from_types(y),
        &IsoType::from_types(z),
    )
}

/// One-shot oracle bracket of two indecomposables.
pub fn hall_bracket_oracle(
    n: usize,
    x: IndecType,
    y: IndecType,
    config: &HallConfig,
) -> Result<HallBracket> {
    HallOracle::new(n, config.clone())?.bracket(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use IndecType::*;

    fn gaussian_binomial(d: u32, k: u32, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(d - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for d in 0..=4 {
            for k in 0..=d {
                assert_eq!(subspaces::<2>(d, k).len() as u64, gaussian_binomial(d as u32, k as u32, 2));
                assert_eq!(subspaces::<3>(d, k).len() as u64, gaussian_binomial(d as u32, k as u32, 3));
            }
        }
    }

    #[test]
    fn unique_submodule_examples() {
        let n = 2;
        assert_eq!(submodule_variety_count(n, &[W(1, 1)], &[U(2, 2)], &[U(1, 2)], 2, 1000).unwrap(), 1);
        assert_eq!(submodule_variety_count(n, &[U(2, 2)], &[W(1, 1)], &[U(1, 2)], 2, 1000).unwrap(), 0);
        assert_eq!(submodule_variety_count(n, &[W(1, 1)], &[W(1, 1)], &[U(1, 2)], 2, 1000).unwrap(), 0);
    }

    #[test]
    fn euler_characteristic_examples() {
        let cfg = HallConfig::default();
        let chi = euler_characteristic(2, &[W(1, 1)], &[U(2, 2)], &[U(2, 1)], &cfg).unwrap();
        assert_eq!(chi.value, 1);
        let chi = euler_characteristic(3, &[V(1)], &[V(3)], &[U(3, 1)], &cfg).unwrap();
        assert_eq!(chi.value, 1);
        let chi = euler_characteristic(3, &[V(3)], &[V(1)], &[U(3, 1)], &cfg).unwrap();
        assert_eq!(chi.value, 0);
    }

    #[test]
    fn non_constant_count_is_fitted() {
        // S_1 ⊕ S_1 has q + 1 one-dimensional subspaces, each with quotient S_1
        let cfg = HallConfig::default();
        let chi = euler_characteristic(2, &[W(1, 1)], &[W(1, 1)], &[W(1, 1), W(1, 1)], &cfg).unwrap();
        assert_eq!((chi.slope, chi.constant, chi.value), (1, 1, 2));
        assert_eq!(chi.counts.len(), 3);
    }

    #[test]
    fn budget_is_reported() {
        let err = submodule_variety_count(3, &[V(1)], &[V(1)], &[V(1), V(1)], 3, 2).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 2 });
    }

    #[test]
    fn oracle_examples() {
        let cfg = HallConfig::default();
        let b = hall_bracket_oracle(3, W(1, 1), W(2, 2), &cfg).unwrap();
        assert_eq!(b.terms, BTreeMap::from([(W(1, 2), 1)]));
        let b = hall_bracket_oracle(3, V(1), V(3), &cfg).unwrap();
        assert_eq!(b.terms, BTreeMap::from([(U(3, 1), 1), (U(1, 3), -1)]));
        for t in crate::quiverrep::all_indecomposables(2) {
            assert!(hall_bracket_oracle(2, t, t, &cfg).unwrap().terms.is_empty());
        }
    }

    #[test]
    fn config_validation() {
        let bad = HallConfig { primes: vec![2, 11], budget: 10 };
        assert_eq!(HallOracle::new(2, bad).err(), Some(Error::UnsupportedPrime(11)));
        let one = HallConfig { primes: vec![2], budget: 10 };
        assert!(matches!(HallOracle::new(2, one), Err(Error::TooFewPrimes(_))));
    }
}
