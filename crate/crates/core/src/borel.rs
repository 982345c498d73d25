//! Matrix models of the Borel subalgebras of `so(2n+1)` and `sp(2n)`, and
//! the comparison of abstract quotients against them through bracket words.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::liecore::{Label, LieAlgebra, LieElement};
use crate::matrix::{Matrix, Subspace};
use crate::report::CheckRecord;
use crate::rootsys::Root;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BorelType {
    B,
    C,
}

impl fmt::Display for BorelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", match self { BorelType::B => "B", BorelType::C => "C" })
    }
}

/// Generators shared by both presentations; `Xp`/`Hp` are the primed ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    X(usize),
    Xp(usize),
    H(usize),
    Hp(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::X(i) => write!(f, "x_{i}"),
            Gen::Xp(i) => write!(f, "x'_{i}"),
            Gen::H(i) => write!(f, "h_{i}"),
            Gen::Hp(i) => write!(f, "h'_{i}"),
        }
    }
}

/// An iterated bracket of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Gen(Gen),
    Br(Box<Word>, Box<Word>),
}

impl Word {
    pub fn gen(g: Gen) -> Self {
        Word::Gen(g)
    }

    pub fn br(a: Word, b: Word) -> Self {
        Word::Br(Box::new(a), Box::new(b))
    }

    /// `ad(a)^k b`.
    pub fn ad_power(a: &Word, k: usize, b: Word) -> Self {
        (0..k).fold(b, |acc, _| Word::br(a.clone(), acc))
    }

    pub fn eval<T>(&self, gen: &impl Fn(Gen) -> T, bracket: &impl Fn(&T, &T) -> T) -> T {
        match self {
            Word::Gen(g) => gen(*g),
            Word::Br(a, b) => bracket(&a.eval(gen, bracket), &b.eval(gen, bracket)),
        }
    }

    /// `x_{i,j}`: `x_i` for `i = j`, else `[x_{i,j-1}, x_j]`; primed when
    /// `primed`.
    pub fn chain(i: usize, j: usize, primed: bool) -> Self {
        let g = |k| Word::gen(if primed { Gen::Xp(k) } else { Gen::X(k) });
        (i + 1..=j).fold(g(i), |acc, k| Word::br(acc, g(k)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Gen(g) => write!(f, "{g}"),
            Word::Br(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// A named element of a basis made of bracket words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedWord {
    pub name: String,
    pub word: Word,
}

fn named(name: String, word: Word) -> NamedWord {
    NamedWord { name, word }
}

/// Root-space basis words of the Borel subalgebra of the given type,
/// followed by the Cartan generators.
pub fn basis_words(ty: BorelType, n: usize) -> Vec<NamedWord> {
    let mut out = Vec::new();
    match ty {
        BorelType::B => {
            for i in 1..=n {
                for j in i..=n {
                    out.push(named(format!("x_{{{i},{j}}}"), Word::chain(i, j, false)));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(named(
                        format!("[x_{{{i},{n}}},x_{{{j},{n}}}]"),
                        Word::br(Word::chain(i, n, false), Word::chain(j, n, false)),
                    ));
                }
            }
            out.extend((1..=n).map(|i| named(format!("h_{i}"), Word::gen(Gen::H(i)))));
        }
        BorelType::C => {
            for i in 1..n {
                for j in i..n {
                    out.push(named(format!("x'_{{{i},{j}}}"), Word::chain(i, j, true)));
                }
            }
            for i in 1..=n {
                out.push(named(format!("x'_{{{i},{n}}}"), Word::chain(i, n, true)));
            }
            for i in 1..n {
                out.push(named(
                    format!("[x'_{{{i},{}}},x'_{{{i},{n}}}]", n - 1),
                    Word::br(Word::chain(i, n - 1, true), Word::chain(i, n, true)),
                ));
            }
            for j in 1..n {
                for i in 1..j {
                    out.push(named(
                        format!("[x'_{{{j},{}}},x'_{{{i},{n}}}]", n - 1),
                        Word::br(Word::chain(j, n - 1, true), Word::chain(i, n, true)),
                    ));
                }
            }
            out.extend((1..=n).map(|i| named(format!("h'_{i}"), Word::gen(Gen::Hp(i)))));
        }
    }
    out
}

/// Positive root carried by a root-space basis word (by its position in
/// [`basis_words`]); `None` for Cartan generators.
pub fn word_roots(ty: BorelType, n: usize) -> Vec<Option<Root>> {
    let e = |i| Root::eps(n, i);
    let mut out = Vec::new();
    match ty {
        BorelType::B => {
            for i in 1..=n {
                for j in i..=n {
                    out.push(Some(if j < n { e(i).add(&e(j + 1).neg()) } else { e(i) }));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(Some(e(i).add(&e(j))));
                }
            }
        }
        BorelType::C => {
            for i in 1..n {
                for j in i..n {
                    out.push(Some(e(i).add(&e(j + 1).neg())));
                }
            }
            for i in 1..=n {
                out.push(Some(if i == n { e(n).scale(2) } else { e(i).add(&e(n)) }));
            }
            for i in 1..n {
                out.push(Some(e(i).scale(2)));
            }
            for j in 1..n {
                for i in 1..j {
                    out.push(Some(e(i).add(&e(j))));
                }
            }
        }
    }
    out.extend((0..n).map(|_| None));
    out
}

/// `(ε_i(h_j))_{i,j}` for the Cartan generators of the given type.
pub fn epsilon_matrix(ty: BorelType, n: usize) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Q::one();
        if i > 0 {
            m[(i, i - 1)] = Q::int(-1);
        }
    }
    if ty == BorelType::B {
        m[(n - 1, n - 1)] = Q::int(2);
    }
    m
}

fn unit(size: usize, p: usize, q: usize) -> Matrix<Q> {
    let mut m = Matrix::zeros(size, size);
    m[(p, q)] = Q::one();
    m
}

fn diagonal(entries: &[Q]) -> Matrix<Q> {
    let mut m = Matrix::zeros(entries.len(), entries.len());
    for (i, e) in entries.iter().enumerate() {
        m[(i, i)] = e.clone();
    }
    m
}

fn flatten(m: &Matrix<Q>) -> Vec<Q> {
    m.entries().to_vec()
}

/// Chevalley-type generators inside `so(2n+1)` or `sp(2n)` preserving a
/// form with antidiagonal blocks, so that the Borel is upper triangular.
#[derive(Debug, Clone)]
pub struct MatrixLieModel {
    pub ty: BorelType,
    pub n: usize,
    pub size: usize,
    pub form: Matrix<Q>,
    pub x: Vec<Matrix<Q>>,
    pub h: Vec<Matrix<Q>>,
    pub basis: Vec<(NamedWord, Matrix<Q>)>,
    pub closure_dim: usize,
}

impl MatrixLieModel {
    pub fn generator(&self, g: Gen) -> Result<Matrix<Q>> {
        let pick = |v: &[Matrix<Q>], i: usize| {
            v.get(i.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| Error::IndexOutOfRange(format!("{g} for n = {}", self.n)))
        };
        match (self.ty, g) {
            (BorelType::B, Gen::X(i)) | (BorelType::C, Gen::Xp(i)) => pick(&self.x, i),
            (BorelType::B, Gen::H(i)) | (BorelType::C, Gen::Hp(i)) => pick(&self.h, i),
            _ => Err(Error::Invalid(format!("{g} is not a generator of type {}", self.ty))),
        }
    }

    pub fn eval(&self, w: &Word) -> Result<Matrix<Q>> {
        match w {
            Word::Gen(g) => self.generator(*g),
            Word::Br(a, b) => Ok(self.eval(a)?.commutator(&self.eval(b)?)),
        }
    }

    /// `X^T J + J X = 0` and `X` upper triangular.
    pub fn in_borel(&self, x: &Matrix<Q>) -> bool {
        let preserves = x.transpose().mul(&self.form).add(&self.form.mul(x)).is_zero();
        let upper = (0..self.size).all(|r| (0..r).all(|c| x[(r, c)].is_zero()));
        preserves && upper
    }

    /// Serre-type relation instances on the matrix generators.
    pub fn relation_checks(&self) -> Vec<CheckRecord> {
        let prefix = self.ty.to_string();
        relation_instances(self.ty, self.n)
            .into_iter()
            .map(|r| {
                let lhs = self.eval(&r.lhs).expect("generator in range");
                let rhs = match &r.rhs {
                    Some((c, g)) => self.generator(*g).expect("generator in range").scale(c),
                    None => Matrix::zeros(self.size, self.size),
                };
                CheckRecord::compare(
                    format!("{prefix}{}", r.family),
                    r.lhs.to_string(),
                    r.expected_string(),
                    if lhs == rhs { r.expected_string() } else { format!("{lhs:?}") },
                    lhs == rhs,
                )
            })
            .collect()
    }

    /// Each basis word is a simultaneous eigenvector of the Cartan
    /// generators with the weight listed for it.
    pub fn root_space_checks(&self) -> Vec<CheckRecord> {
        let roots = word_roots(self.ty, self.n);
        let eps = epsilon_matrix(self.ty, self.n);
        self.basis
            .iter()
            .zip(roots)
            .map(|((w, m), root)| {
                let weight: Option<Vec<Q>> = self
                    .h
                    .iter()
                    .map(|h| {
                        let b = LieElement::from_coords(&flatten(&h.commutator(m)));
                        b.multiple_of(&LieElement::from_coords(&flatten(m)))
                    })
                    .collect();
                let expected = match &root {
                    Some(r) => weight_of_root(&eps, r),
                    None => vec![Q::zero(); self.n],
                };
                let ok = !m.is_zero() && weight.as_ref() == Some(&expected);
                CheckRecord::compare(
                    format!("{}-root-space", self.ty),
                    w.name.clone(),
                    root.map_or("0".into(), |r| r.to_string()),
                    weight.map_or("not an eigenvector".into(), |w| format!("{w:?}")),
                    ok,
                )
            })
            .collect()
    }
}

/// `(μ(h_1), …, μ(h_n))` for `μ = Σ c_i ε_i`.
pub fn weight_of_root(eps: &Matrix<Q>, r: &Root) -> Vec<Q> {
    let c: Vec<Q> = r.coeffs().iter().map(|&x| Q::int(x)).collect();
    eps.transpose().mul_vec(&c)
}

/// One instance of (B1)–(B3) or (C1)–(C3): `lhs = c · g` or `lhs = 0`.
#[derive(Debug, Clone)]
pub struct RelationInstance {
    pub family: &'static str,
    pub lhs: Word,
    pub rhs: Option<(Q, Gen)>,
}

impl RelationInstance {
    pub fn expected_string(&self) -> String {
        match &self.rhs {
            Some((c, g)) => format!("{c}*{g}"),
            None => "0".into(),
        }
    }
}

/// `[h_i, x_j] = a·x_j` coefficient.
pub fn cartan_coefficient(ty: BorelType, n: usize, i: usize, j: usize) -> i64 {
    let adjacent = i.abs_diff(j) == 1;
    match ty {
        BorelType::B => match () {
            _ if i == j => 2,
            _ if adjacent && i != n => -1,
            _ if j + 1 == n && i == n => -2,
            _ => 0,
        },
        BorelType::C => match () {
            _ if i == j => 2,
            _ if adjacent && j != n => -1,
            _ if j == n && i + 1 == n => -2,
            _ => 0,
        },
    }
}

/// Number of `ad(x_i)` applications in the Serre relation for `i ≠ j`.
pub fn serre_exponent(ty: BorelType, n: usize, i: usize, j: usize) -> usize {
    let adjacent = i.abs_diff(j) == 1;
    match ty {
        BorelType::B if adjacent && i != n => 2,
        BorelType::B if j + 1 == n && i == n => 3,
        BorelType::C if adjacent && j != n => 2,
        BorelType::C if j == n && i + 1 == n => 3,
        _ => 1,
    }
}

pub fn relation_instances(ty: BorelType, n: usize) -> Vec<RelationInstance> {
    let (x, h, tag) = match ty {
        BorelType::B => (Gen::X as fn(usize) -> Gen, Gen::H as fn(usize) -> Gen, ["1", "2", "3"]),
        BorelType::C => (Gen::Xp as fn(usize) -> Gen, Gen::Hp as fn(usize) -> Gen, ["1", "2", "3"]),
    };
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            out.push(RelationInstance {
                family: tag[0],
                lhs: Word::br(Word::gen(h(i)), Word::gen(h(j))),
                rhs: None,
            });
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let a = cartan_coefficient(ty, n, i, j);
            out.push(RelationInstance {
                family: tag[1],
                lhs: Word::br(Word::gen(h(i)), Word::gen(x(j))),
                rhs: (a != 0).then(|| (Q::int(a), x(j))),
            });
        }
    }
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            let k = serre_exponent(ty, n, i, j);
            out.push(RelationInstance {
                family: tag[2],
                lhs: Word::ad_power(&Word::gen(x(i)), k, Word::gen(x(j))),
                rhs: None,
            });
        }
    }
    out
}

pub fn build_borel(ty: BorelType, n: usize) -> Result<MatrixLieModel> {
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    let (size, form, x, h) = match ty {
        BorelType::B => {
            let size = 2 * n + 1;
            let mut form = Matrix::zeros(size, size);
            for a in 0..size {
                form[(a, size - 1 - a)] = Q::one();
            }
            let x: Vec<Matrix<Q>> = (1..=n)
                .map(|i| {
                    if i < n {
                        unit(size, i - 1, i).sub(&unit(size, 2 * n - i, 2 * n - i + 1))
                    } else {
                        unit(size, n - 1, n).sub(&unit(size, n, n + 1))
                    }
                })
                .collect();
            let h = (1..=n)
                .map(|j| {
                    let mut t = vec![Q::zero(); n];
                    if j < n {
                        t[j - 1] = Q::one();
                        t[j] = Q::int(-1);
                    } else {
                        t[n - 1] = Q::int(2);
                    }
                    let mut d = t.clone();
                    d.push(Q::zero());
                    d.extend(t.iter().rev().map(|c| -c.clone()));
                    diagonal(&d)
                })
                .collect();
            (size, form, x, h)
        }
        BorelType::C => {
            let size = 2 * n;
            let mut form = Matrix::zeros(size, size);
            for a in 0..n {
                form[(a, size - 1 - a)] = Q::one();
                form[(size - 1 - a, a)] = Q::int(-1);
            }
            let x = (1..=n)
                .map(|i| {
                    if i < n {
                        unit(size, i - 1, i).sub(&unit(size, 2 * n - i - 1, 2 * n - i))
                    } else {
                        unit(size, n - 1, n)
                    }
                })
                .collect();
            let h = (1..=n)
                .map(|j| {
                    let mut t = vec![Q::zero(); n];
                    t[j - 1] = Q::one();
                    if j < n {
                        t[j] = Q::int(-1);
                    }
                    let mut d = t.clone();
                    d.extend(t.iter().rev().map(|c| -c.clone()));
                    diagonal(&d)
                })
                .collect();
            (size, form, x, h)
        }
    };
    let mut model = MatrixLieModel {
        ty,
        n,
        size,
        form,
        x,
        h,
        basis: Vec::new(),
        closure_dim: 0,
    };
    let failures: Vec<String> = model
        .relation_checks()
        .into_iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{}: {}", r.check_id, r.instance))
        .collect();
    if !failures.is_empty() {
        return Err(Error::RelationFailure(failures.join("; ")));
    }
    model.basis = basis_words(ty, n)
        .into_iter()
        .map(|w| {
            let m = model.eval(&w.word)?;
            Ok((w, m))
        })
        .collect::<Result<_>>()?;
    let gens: Vec<Matrix<Q>> = model.x.iter().chain(&model.h).cloned().collect();
    model.closure_dim = matrix_closure(size, &gens).dim();
    Ok(model)
}

/// Lie closure of a set of square matrices, in flattened coordinates.
pub fn matrix_closure(size: usize, gens: &[Matrix<Q>]) -> Subspace<Q> {
    let mut span = Subspace::zero(size * size);
    let mut found: Vec<Matrix<Q>> = Vec::new();
    let mut queue: Vec<Matrix<Q>> = Vec::new();
    for g in gens {
        if span.insert(flatten(g)) {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for w in found.iter().chain(std::iter::once(&v)) {
            let b = v.commutator(w);
            if span.insert(flatten(&b)) {
                queue.push(b);
            }
        }
        found.push(v);
    }
    span
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub isomorphic: bool,
    pub quotient_rank: usize,
    pub model_rank: usize,
    /// The first pair of basis words whose bracket expands differently.
    pub witness: Option<String>,
}

/// Compares an abstract algebra `q` with a matrix model through the word
/// basis of the model's type: the words must form bases on both sides and
/// every bracket of two basis words must expand with the same coefficients.
/// `gen` gives the image in `q` of each generator.
pub fn quotient_iso_check<L: Label>(
    q: &LieAlgebra<L>,
    gen: impl Fn(Gen) -> LieElement,
    model: &MatrixLieModel,
) -> IsoReport {
    let words = &model.basis;
    let d = words.len();
    let q_vals: Vec<Vec<Q>> = words
        .iter()
        .map(|(w, _)| q.to_coords(&w.word.eval(&gen, &|a, b| q.bracket_unchecked(a, b))))
        .collect();
    let m_vals: Vec<Vec<Q>> = words.iter().map(|(_, m)| flatten(m)).collect();
    let q_basis = Matrix::from_columns(q.dim(), &q_vals);
    let m_basis = Matrix::from_columns(model.size * model.size, &m_vals);
    let quotient_rank = q_basis.rank();
    let model_rank = m_basis.rank();
    let mut report = IsoReport {
        isomorphic: false,
        quotient_rank,
        model_rank,
        witness: None,
    };
    if quotient_rank != d || model_rank != d || q.dim() != d {
        report.witness = Some(format!(
            "word basis rank {quotient_rank} in the quotient (dim {}) and {model_rank} in the model, expected {d}",
            q.dim()
        ));
        return report;
    }
    for a in 0..d {
        for b in a + 1..d {
            let qb = q.bracket_unchecked(
                &LieElement::from_coords(&q_vals[a]),
                &LieElement::from_coords(&q_vals[b]),
            );
            let mb = words[a].1.commutator(&words[b].1);
            let col = |v: Vec<Q>| Matrix::from_columns(v.len(), &[v]);
            let qc = q_basis.solve(&col(q.to_coords(&qb)));
            let mc = m_basis.solve(&col(flatten(&mb)));
            if qc.is_none() || qc != mc {
                report.witness = Some(format!("[{}, {}]", words[a].0.name, words[b].0.name));
                return report;
            }
        }
    }
    report.isomorphic = true;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{RootSet, RootSystemBC};

    #[test]
    fn models_preserve_form_and_close_up() {
        for n in 1..=5 {
            for ty in [BorelType::B, BorelType::C] {
                let m = build_borel(ty, n).unwrap();
                assert_eq!(m.closure_dim, n * n + n, "{ty} n={n}");
                for g in m.x.iter().chain(&m.h) {
                    assert!(m.in_borel(g));
                }
                for (_, b) in &m.basis {
                    assert!(m.in_borel(b));
                }
                assert_eq!(m.basis.len(), n * n + n);
                assert!(m.relation_checks().iter().all(CheckRecord::passed));
                let failed: Vec<_> = m.root_space_checks().into_iter().filter(|r| !r.passed()).collect();
                assert!(failed.is_empty(), "{failed:?}");
            }
        }
        assert_eq!(build_borel(BorelType::B, 2).unwrap().closure_dim, 6);
        assert_eq!(build_borel(BorelType::C, 2).unwrap().closure_dim, 6);
    }

    #[test]
    fn word_roots_are_the_positive_roots() {
        for n in 1..=5 {
            let sys = RootSystemBC::new(n).unwrap();
            for (ty, set) in [(BorelType::B, RootSet::PositiveB), (BorelType::C, RootSet::PositiveC)] {
                let mut roots: Vec<Root> = word_roots(ty, n).into_iter().flatten().collect();
                roots.sort();
                let mut expected: Vec<Root> = sys.set(set).iter().cloned().collect();
                expected.sort();
                assert_eq!(roots, expected, "{ty} n={n}");
            }
        }
    }

    #[test]
    fn epsilon_matrices() {
        let b = epsilon_matrix(BorelType::B, 3);
        assert_eq!(b, Matrix::from_i64_rows(&[&[1, 0, 0], &[-1, 1, 0], &[0, -1, 2]]));
        let c = epsilon_matrix(BorelType::C, 3);
        assert_eq!(c, Matrix::from_i64_rows(&[&[1, 0, 0], &[-1, 1, 0], &[0, -1, 1]]));
    }

    #[test]
    fn a_model_matches_itself_and_not_the_other_type() {
        for n in 2..=3 {
            let b = build_borel(BorelType::B, n).unwrap();
            let c = build_borel(BorelType::C, n).unwrap();
            // abstract copy of the B model on its word basis
            let labels: Vec<String> = b.basis.iter().map(|(w, _)| w.name.clone()).collect();
            let basis = Matrix::from_columns(b.size * b.size, &b.basis.iter().map(|(_, m)| flatten(m)).collect::<Vec<_>>());
            let coords = |m: &Matrix<Q>| {
                let s = basis.solve(&Matrix::from_columns(b.size * b.size, &[flatten(m)])).unwrap();
                LieElement::from_coords(&s.column(0))
            };
            let abs = LieAlgebra::from_upper(labels, |i, j| coords(&b.basis[i].1.commutator(&b.basis[j].1))).unwrap();
            assert!(abs.jacobi_check().holds);
            let gen_b = |g: Gen| coords(&b.generator(g).unwrap());
            assert!(quotient_iso_check(&abs, gen_b, &b).isomorphic);
            // the C word list read through x'_i = x_i, h'_i = h_i does not fit
            let gen_c = |g: Gen| match g {
                Gen::Xp(i) => coords(&b.generator(Gen::X(i)).unwrap()),
                Gen::Hp(i) => coords(&b.generator(Gen::H(i)).unwrap()),
                _ => LieElement::zero(),
            };
            let r = quotient_iso_check(&abs, gen_c, &c);
            assert!(!r.isomorphic);
            assert!(r.witness.is_some());
        }
    }
}
