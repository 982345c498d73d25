//! Finite-dimensional Lie algebras over `Q` given by structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::matrix::Subspace;

/// Sparse combination of basis indices; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LieElement(BTreeMap<usize, Q>);

impl LieElement {
    pub fn zero() -> Self {
        LieElement(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Q::one())
    }

    pub fn term(i: usize, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Q)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn from_coords(coords: &[Q]) -> Self {
        Self::from_terms(coords.iter().cloned().enumerate())
    }

    pub fn to_coords(&self, dim: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        for (&i, c) in &self.0 {
            v[i] = c.clone();
        }
        v
    }

    pub fn add_term(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_insert_with(Q::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Q)> + '_ {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (i, c) in o.terms() {
            r.add_term(i, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Q::int(-1)))
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LieElement(self.0.iter().map(|(&i, c)| (i, c * s)).collect())
    }

    /// Whether `self = c · other` for some scalar `c`, returning `c`.
    pub fn multiple_of(&self, other: &Self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        let (i, c) = other.terms().next()?;
        let ratio = self.coeff(i) * c.inv();
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

/// Basis labels usable by [`LieAlgebra`].
pub trait Label: Clone + Eq + Ord + Hash + fmt::Display + fmt::Debug + Send + Sync {}
impl<T: Clone + Eq + Ord + Hash + fmt::Display + fmt::Debug + Send + Sync> Label for T {}

/// Labelled basis plus the full table `c(i, j) = [e_i, e_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra<L: Label> {
    labels: Vec<L>,
    index: BTreeMap<L, usize>,
    sc: Vec<Vec<LieElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub holds: bool,
    pub triples_checked: usize,
    /// Smallest failing `(i, j, k)` with `i < j < k`, as labels, and the
    /// nonzero Jacobi sum.
    pub counterexample: Option<(String, String, String, String)>,
}

impl<L: Label> LieAlgebra<L> {
    /// Builds the table from `[e_i, e_j]` for `i < j`, extended by
    /// antisymmetry.
    pub fn from_upper<F>(labels: Vec<L>, mut upper: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> LieElement,
    {
        let d = labels.len();
        let mut sc = vec![vec![LieElement::zero(); d]; d];
        for i in 0..d {
            for j in i + 1..d {
                let b = upper(i, j);
                if let Some(k) = b.support().find(|&k| k >= d) {
                    return Err(Error::IndexOutOfRange(format!("basis index {k} in [{i}, {j}]")));
                }
                sc[j][i] = b.scale(&Q::int(-1));
                sc[i][j] = b;
            }
        }
        Self::from_table(labels, sc)
    }

    /// Takes a full table as given; antisymmetry is not enforced, see
    /// [`LieAlgebra::is_antisymmetric`].
    pub fn from_table(labels: Vec<L>, sc: Vec<Vec<LieElement>>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis label {l}")));
            }
        }
        if sc.len() != labels.len() || sc.iter().any(|r| r.len() != labels.len()) {
            return Err(Error::Invalid("structure table has the wrong shape".into()));
        }
        Ok(LieAlgebra { labels, index, sc })
    }

    pub fn abelian(labels: Vec<L>) -> Result<Self> {
        Self::from_upper(labels, |_, _| LieElement::zero())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &L) -> Result<usize> {
        self.index
            .get(l)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(l.to_string()))
    }

    pub fn element(&self, l: &L) -> Result<LieElement> {
        Ok(LieElement::basis(self.index_of(l)?))
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &LieElement {
        &self.sc[i][j]
    }

    fn check(&self, e: &LieElement) -> Result<()> {
        match e.support().find(|&i| i >= self.dim()) {
            Some(i) => Err(Error::UnknownLabel(format!("basis index {i}"))),
            None => Ok(()),
        }
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.bracket_unchecked(a, b))
    }

    pub(crate) fn bracket_unchecked(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let c = x * y;
                for (k, z) in self.sc[i][j].terms() {
                    out.add_term(k, &c * z);
                }
            }
        }
        out
    }

    pub fn bracket_labels(&self, a: &L, b: &L) -> Result<LieElement> {
        Ok(self.sc[self.index_of(a)?][self.index_of(b)?].clone())
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            self.sc[i][i].is_zero()
                && (i + 1..d).all(|j| self.sc[i][j].add(&self.sc[j][i]).is_zero())
        })
    }

    fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> LieElement {
        let e = LieElement::basis;
        let t1 = self.bracket_unchecked(&e(i), &self.sc[j][k]);
        let t2 = self.bracket_unchecked(&e(j), &self.sc[k][i]);
        let t3 = self.bracket_unchecked(&e(k), &self.sc[i][j]);
        t1.add(&t2).add(&t3)
    }

    /// Exhaustive check over basis triples `i < j < k`, together with
    /// antisymmetry of the table.
    pub fn jacobi_check(&self) -> JacobiReport {
        let d = self.dim();
        let triples = if d >= 3 { d * (d - 1) * (d - 2) / 6 } else { 0 };
        if !self.is_antisymmetric() {
            return JacobiReport {
                holds: false,
                triples_checked: 0,
                counterexample: Some(("antisymmetry".into(), String::new(), String::new(), String::new())),
            };
        }
        let first = (0..d)
            .into_par_iter()
            .filter_map(|i| {
                (i + 1..d)
                    .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
                    .find_map(|(j, k)| {
                        let s = self.jacobi_sum(i, j, k);
                        (!s.is_zero()).then_some((i, j, k, s))
                    })
            })
            .min_by_key(|(i, j, k, _)| (*i, *j, *k));
        JacobiReport {
            holds: first.is_none(),
            triples_checked: triples,
            counterexample: first.map(|(i, j, k, s)| {
                (
                    self.labels[i].to_string(),
                    self.labels[j].to_string(),
                    self.labels[k].to_string(),
                    self.format(&s),
                )
            }),
        }
    }

    pub fn to_coords(&self, e: &LieElement) -> Vec<Q> {
        e.to_coords(self.dim())
    }

    /// Span of `gens` closed under brackets, as a row-reduced subspace of
    /// the coordinate space.
    pub fn subalgebra_closure(&self, gens: &[LieElement]) -> Result<Subspace<Q>> {
        self.closure(gens, false)
    }

    /// Smallest ideal containing `gens`.
    pub fn ideal_closure(&self, gens: &[LieElement]) -> Result<Subspace<Q>> {
        self.closure(gens, true)
    }

    fn closure(&self, gens: &[LieElement], ideal: bool) -> Result<Subspace<Q>> {
        let d = self.dim();
        let mut span = Subspace::zero(d);
        let mut found: Vec<LieElement> = Vec::new();
        let mut queue: Vec<LieElement> = Vec::new();
        for g in gens {
            self.check(g)?;
            if span.insert(self.to_coords(g)) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            let partners: Vec<LieElement> = if ideal {
                (0..d).map(LieElement::basis).collect()
            } else {
                found.iter().chain(std::iter::once(&v)).cloned().collect()
            };
            for w in partners {
                let b = self.bracket_unchecked(&v, &w);
                if !b.is_zero() && span.insert(self.to_coords(&b)) {
                    queue.push(b);
                }
            }
            found.push(v);
        }
        Ok(span)
    }

    /// Whether `span` is closed under brackets with every basis element.
    pub fn ideal_witness(&self, span: &Subspace<Q>) -> Option<(String, String)> {
        for v in span.basis() {
            let e = LieElement::from_coords(v);
            for k in 0..self.dim() {
                let b = self.bracket_unchecked(&e, &LieElement::basis(k));
                if !span.contains(&self.to_coords(&b)) {
                    return Some((self.format(&e), self.labels[k].to_string()));
                }
            }
        }
        None
    }

    /// `L / I` on the basis vectors at the non-pivot coordinates of `I`.
    pub fn quotient(&self, ideal: &Subspace<Q>) -> Result<Quotient<L>> {
        if ideal.ambient_dim() != self.dim() {
            return Err(Error::Invalid("ideal lives in a different space".into()));
        }
        if let Some((basis, element)) = self.ideal_witness(ideal) {
            return Err(Error::NotAnIdeal { basis, element });
        }
        let kept: Vec<usize> = (0..self.dim()).filter(|c| !ideal.pivots().contains(c)).collect();
        let position: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let project = |e: &LieElement| -> LieElement {
            let r = ideal.reduce(&self.to_coords(e));
            LieElement::from_terms(kept.iter().map(|&c| (position[&c], r[c].clone())))
        };
        let labels: Vec<L> = kept.iter().map(|&c| self.labels[c].clone()).collect();
        let algebra = LieAlgebra::from_upper(labels, |a, b| project(&self.sc[kept[a]][kept[b]]))?;
        Ok(Quotient {
            algebra,
            ideal: ideal.clone(),
            kept,
        })
    }

    /// Groups the basis by simultaneous `ad`-eigenvalues of `h`; every basis
    /// vector must be an eigenvector.
    pub fn weight_decomposition(&self, h: &[LieElement]) -> Result<WeightDecomposition> {
        let mut spaces: BTreeMap<Vec<Q>, Vec<usize>> = BTreeMap::new();
        for k in 0..self.dim() {
            let x = LieElement::basis(k);
            let mut weight = Vec::with_capacity(h.len());
            for hm in h {
                let b = self.bracket(hm, &x)?;
                let c = b
                    .multiple_of(&x)
                    .ok_or_else(|| Error::NonDiagonal(self.labels[k].to_string()))?;
                weight.push(c);
            }
            spaces.entry(weight).or_default().push(k);
        }
        Ok(WeightDecomposition { spaces })
    }

    pub fn format(&self, e: &LieElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in e.terms() {
            let neg = c.numer() < 0;
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mag != Q::one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&self.labels[i].to_string());
        }
        s
    }

    /// `{basis, brackets: [{i, j, terms: [{k, num, den}]}]}` for `i < j`
    /// with nonzero bracket.
    pub fn to_json(&self) -> Value {
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let b = &self.sc[i][j];
                if b.is_zero() {
                    continue;
                }
                let terms: Vec<Value> = b
                    .terms()
                    .map(|(k, c)| json!({"k": k, "num": c.numer() as i64, "den": c.denom() as i64}))
                    .collect();
                brackets.push(json!({"i": i, "j": j, "terms": terms}));
            }
        }
        json!({
            "basis": self.labels.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "brackets": brackets,
        })
    }

    /// Whether every structure constant has denominator one and absolute
    /// value in `allowed`.
    pub fn constants_within(&self, allowed: &[i64]) -> bool {
        self.sc.iter().flatten().all(|e| {
            e.terms().all(|(_, c)| {
                c.to_integer()
                    .is_some_and(|v| allowed.contains(&(v as i64)))
            })
        })
    }
}

/// A quotient algebra together with the data to project into it.
#[derive(Debug, Clone)]
pub struct Quotient<L: Label> {
    pub algebra: LieAlgebra<L>,
    pub ideal: Subspace<Q>,
    /// Coordinates of the parent kept as the quotient basis.
    pub kept: Vec<usize>,
}

impl<L: Label> Quotient<L> {
    pub fn project(&self, e: &LieElement) -> LieElement {
        let coords = e.to_coords(self.ideal.ambient_dim());
        let r = self.ideal.reduce(&coords);
        LieElement::from_terms(self.kept.iter().enumerate().map(|(p, &c)| (p, r[c].clone())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub spaces: BTreeMap<Vec<Q>, Vec<usize>>,
}

impl WeightDecomposition {
    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Vec::len).sum()
    }

    pub fn weight_of(&self, k: usize) -> Option<&Vec<Q>> {
        self.spaces.iter().find(|(_, v)| v.contains(&k)).map(|(w, _)| w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// `sl_2` with basis `e, f, h`.
    fn sl2() -> LieAlgebra<&'static str> {
        LieAlgebra::from_upper(vec!["e", "f", "h"], |i, j| match (i, j) {
            (0, 1) => LieElement::basis(2),
            (0, 2) => LieElement::term(0, Q::int(-2)),
            (1, 2) => LieElement::term(1, Q::int(2)),
            _ => unreachable!(),
        })
        .unwrap()
    }

    /// Upper triangular 3×3 matrices: `E11, E22, E33, E12, E13, E23`.
    fn upper3() -> LieAlgebra<String> {
        let pos = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)];
        let labels: Vec<String> = pos.iter().map(|(a, b)| format!("E{}{}", a + 1, b + 1)).collect();
        let idx = |p: (usize, usize)| pos.iter().position(|&q| q == p);
        LieAlgebra::from_upper(labels, |i, j| {
            let (a, b) = pos[i];
            let (c, d) = pos[j];
            let mut e = LieElement::zero();
            if b == c {
                if let Some(k) = idx((a, d)) {
                    e.add_term(k, Q::one());
                }
            }
            if d == a {
                if let Some(k) = idx((c, b)) {
                    e.add_term(k, Q::int(-1));
                }
            }
            e
        })
        .unwrap()
    }

    #[test]
    fn bracket_basics() {
        let l = sl2();
        let e = LieElement::basis(0);
        assert!(l.bracket(&e, &e).unwrap().is_zero());
        assert_eq!(l.bracket_labels(&"h", &"e").unwrap(), LieElement::term(0, Q::int(2)));
        assert!(l.bracket(&LieElement::basis(7), &e).is_err());
        assert!(l.element(&"x").is_err());
    }

    #[test]
    fn jacobi_and_negative_control() {
        assert!(sl2().jacobi_check().holds);
        assert!(upper3().jacobi_check().holds);
        assert!(LieAlgebra::abelian(vec![1, 2, 3, 4]).unwrap().jacobi_check().holds);
        let l = upper3();
        let mut sc: Vec<Vec<LieElement>> = (0..6)
            .map(|i| (0..6).map(|j| l.structure_constant(i, j).clone()).collect())
            .collect();
        // flip [E11, E12] = E12 on both sides
        sc[0][3] = sc[0][3].scale(&Q::int(-1));
        sc[3][0] = sc[3][0].scale(&Q::int(-1));
        let bad = LieAlgebra::from_table(l.labels().to_vec(), sc).unwrap();
        let r = bad.jacobi_check();
        assert!(!r.holds);
        assert_eq!(r.counterexample.unwrap().0, "E11");
    }

    #[test]
    fn closures() {
        let l = upper3();
        let e12 = l.element(&"E12".to_string()).unwrap();
        let e23 = l.element(&"E23".to_string()).unwrap();
        assert_eq!(l.subalgebra_closure(&[e12.clone(), e23.clone()]).unwrap().dim(), 3);
        assert_eq!(l.subalgebra_closure(&[LieElement::basis(0)]).unwrap().dim(), 1);
        assert_eq!(l.ideal_closure(&[e12]).unwrap().dim(), 2);
        assert_eq!(l.ideal_closure(&[]).unwrap().dim(), 0);
    }

    #[test]
    fn quotients() {
        let l = upper3();
        let n = l.ideal_closure(&[LieElement::basis(3), LieElement::basis(5)]).unwrap();
        let q = l.quotient(&n).unwrap();
        assert_eq!(q.algebra.dim(), 3);
        assert!(q.algebra.jacobi_check().holds);
        let zero = l.quotient(&Subspace::zero(6)).unwrap();
        assert_eq!(zero.algebra, l);
        let all = l.quotient(&Subspace::spanned_by(6, (0..6).map(|i| LieElement::basis(i).to_coords(6)))).unwrap();
        assert_eq!(all.algebra.dim(), 0);
        let not_ideal = Subspace::spanned_by(6, [LieElement::basis(3).to_coords(6)]);
        assert!(matches!(l.quotient(&not_ideal), Err(Error::NotAnIdeal { .. })));
    }

    #[test]
    fn weights() {
        let l = upper3();
        let h: Vec<LieElement> = (0..3).map(LieElement::basis).collect();
        let w = l.weight_decomposition(&h).unwrap();
        assert_eq!(w.total_dim(), 6);
        assert_eq!(w.spaces[&vec![Q::zero(); 3]].len(), 3);
        assert_eq!(w.weight_of(3).unwrap(), &vec![Q::one(), Q::int(-1), Q::zero()]);
        let bad = l.weight_decomposition(&[LieElement::basis(3)]);
        assert!(matches!(bad, Err(Error::NonDiagonal(_))));
    }

    #[test]
    fn json_lists_upper_pairs() {
        let v = sl2().to_json();
        assert_eq!(v["basis"], json!(["e", "f", "h"]));
        assert_eq!(v["brackets"].as_array().unwrap().len(), 3);
        assert_eq!(v["brackets"][1], json!({"i": 0, "j": 2, "terms": [{"k": 0, "num": -2, "den": 1}]}));
    }

    fn element(dim: usize) -> impl Strategy<Value = LieElement> {
        proptest::collection::vec(-3i64..=3, dim)
            .prop_map(|v| LieElement::from_terms(v.into_iter().map(Q::int).enumerate()))
    }

    proptest! {
        #[test]
        fn closure_is_idempotent(a in element(6), b in element(6)) {
            let l = upper3();
            let s = l.subalgebra_closure(&[a.clone(), b.clone()]).unwrap();
            let gens: Vec<LieElement> = s.basis().iter().map(|v| LieElement::from_coords(v)).collect();
            prop_assert_eq!(l.subalgebra_closure(&gens).unwrap(), s.clone());
            let i = l.ideal_closure(&[a, b]).unwrap();
            let gens: Vec<LieElement> = i.basis().iter().map(|v| LieElement::from_coords(v)).collect();
            prop_assert_eq!(l.ideal_closure(&gens).unwrap(), i);
        }

        #[test]
        fn quotient_brackets_lift(a in element(6), b in element(6), g in element(6)) {
            let l = upper3();
            let i = l.ideal_closure(&[g]).unwrap();
            let q = l.quotient(&i).unwrap();
            let lifted = q.project(&l.bracket(&a, &b).unwrap());
            let down = q.algebra.bracket(&q.project(&a), &q.project(&b)).unwrap();
            prop_assert_eq!(lifted, down);
        }
    }
}
