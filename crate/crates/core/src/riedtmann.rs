//! The Lie algebra `L(A)` spanned by the indecomposables, its extension
//! `L̃(A)` by `h_1, …, h_n`, and the map `φ` from the generators of the
//! presented algebra, with the checks that tie them together.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::borel::{self, build_borel, epsilon_matrix, quotient_iso_check, BorelType, Gen, Word};
use crate::error::{Error, Result};
use crate::field::{Field, Q};
use crate::liecore::{LieAlgebra, LieElement, Quotient};
use crate::matrix::{Matrix, Subspace};
use crate::quiverrep::{
    all_indecomposables, symmetric_form_matrix, HallConfig, HallOracle, IndecType,
};
use crate::report::{CheckRecord, Status};
use crate::rootsys::{Root, RootSet, RootSystemBC};

use IndecType::{U, V, W};

/// Basis label of `L̃(A)`: an indecomposable or `h_i = h_{S_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LtLabel {
    Mod(IndecType),
    H(usize),
}

impl fmt::Display for LtLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LtLabel::Mod(t) => write!(f, "{t}"),
            LtLabel::H(i) => write!(f, "h_{i}"),
        }
    }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Bracket rules for pairs of shape (W, W), (W, V), (W, U) and (V, V);
/// `None` for any other order or shape.
fn stated_bracket(a: IndecType, b: IndecType) -> Option<Vec<(IndecType, i64)>> {
    let out = match (a, b) {
        (W(i, j), W(l, m)) => vec![(W(i, m), delta(j + 1, l)), (W(l, j), -delta(m + 1, i))],
        (W(i, j), V(l)) => vec![(V(i), delta(j + 1, l))],
        (W(i, j), U(l, m)) => vec![(U(l, i), delta(j + 1, m)), (U(i, m), delta(j + 1, l))],
        (V(i), V(j)) => vec![(U(j, i), 1), (U(i, j), -1)],
        _ => return None,
    };
    Some(out)
}

/// `[a, b]` in `L(A)` as a sorted list of nonzero `(label, coefficient)`.
pub fn table_bracket(a: IndecType, b: IndecType) -> Vec<(IndecType, i64)> {
    let raw = match stated_bracket(a, b) {
        Some(t) => t,
        None => stated_bracket(b, a)
            .map(|t| t.into_iter().map(|(l, c)| (l, -c)).collect())
            .unwrap_or_default(),
    };
    let mut acc: BTreeMap<IndecType, i64> = BTreeMap::new();
    for (l, c) in raw {
        *acc.entry(l).or_default() += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

fn module_element(labels: &BTreeMap<IndecType, usize>, terms: &[(IndecType, i64)]) -> LieElement {
    LieElement::from_terms(terms.iter().map(|(l, c)| (labels[l], Q::int(*c))))
}

/// `L(A)` on the basis of indecomposables, in canonical order.
pub fn build_l(n: usize) -> Result<LieAlgebra<IndecType>> {
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    let types = all_indecomposables(n);
    let index: BTreeMap<IndecType, usize> = types.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    LieAlgebra::from_upper(types.clone(), |i, j| {
        module_element(&index, &table_bracket(types[i], types[j]))
    })
}

/// `L̃(A)` together with the symmetric form used for the `h`-action.
#[derive(Debug, Clone)]
pub struct LTilde {
    pub n: usize,
    pub algebra: LieAlgebra<LtLabel>,
    pub form: Matrix<Q>,
}

pub fn build_ltilde(n: usize) -> Result<LTilde> {
    if n == 0 {
        return Err(Error::InvalidRank(0));
    }
    let types = all_indecomposables(n);
    let g = symmetric_form_matrix(n);
    let mut labels: Vec<LtLabel> = types.iter().map(|&t| LtLabel::Mod(t)).collect();
    labels.extend((1..=n).map(LtLabel::H));
    let index: BTreeMap<IndecType, usize> = types.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let m = types.len();
    let algebra = LieAlgebra::from_upper(labels.clone(), |a, b| match (labels[a], labels[b]) {
        (LtLabel::Mod(x), LtLabel::Mod(y)) => module_element(&index, &table_bracket(x, y)),
        // the basis puts modules before h's, so a < b leaves [N, h_i] = -(S_i, N) N
        (LtLabel::Mod(x), LtLabel::H(i)) => {
            let d = x.dim_vector(n);
            let form: Q = (0..n).fold(Q::zero(), |acc, k| acc + g[(i - 1, k)].clone() * Q::int(d[k] as i64));
            LieElement::term(a, -form)
        }
        _ => LieElement::zero(),
    })?;
    debug_assert_eq!(algebra.dim(), m + n);
    Ok(LTilde { n, algebra, form: g })
}

impl LTilde {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn module(&self, t: IndecType) -> Result<LieElement> {
        self.algebra.element(&LtLabel::Mod(t))
    }

    pub fn h(&self, i: usize) -> Result<LieElement> {
        self.algebra.element(&LtLabel::H(i))
    }

    fn m(&self, t: IndecType) -> LieElement {
        self.module(t).expect("label in range")
    }

    fn combo(&self, terms: &[(IndecType, i64)]) -> LieElement {
        terms
            .iter()
            .fold(LieElement::zero(), |acc, &(t, c)| acc.add(&self.m(t).scale(&Q::int(c))))
    }

    /// Coordinates of the indecomposable labels.
    pub fn module_span(&self) -> Subspace<Q> {
        let k = self.dim() - self.n;
        Subspace::spanned_by(self.dim(), (0..k).map(|i| LieElement::basis(i).to_coords(self.dim())))
    }

    /// Image of a generator of the presented algebra.
    pub fn phi_generator(&self, g: Gen) -> Result<LieElement> {
        let n = self.n;
        let check = |i: usize| {
            if (1..=n).contains(&i) {
                Ok(i)
            } else {
                Err(Error::IndexOutOfRange(format!("{g} for n = {n}")))
            }
        };
        Ok(match g {
            Gen::X(i) => self.m(IndecType::simple(n, check(i)?)),
            Gen::Xp(i) if check(i)? == n => self.m(IndecType::s_prime(n)),
            Gen::Xp(i) => self.m(IndecType::simple(n, i)),
            Gen::H(i) if check(i)? == n => self.h(n)?.scale(&Q::int(2)),
            Gen::H(i) | Gen::Hp(i) => self.h(check(i)?)?,
        })
    }

    pub fn phi_word(&self, w: &Word) -> Result<LieElement> {
        match w {
            Word::Gen(g) => self.phi_generator(*g),
            Word::Br(a, b) => self.algebra.bracket(&self.phi_word(a)?, &self.phi_word(b)?),
        }
    }

    /// `φ(h_1), …, φ(h_n)`.
    pub fn cartan(&self) -> Vec<LieElement> {
        (1..=self.n).map(|i| self.phi_generator(Gen::H(i)).expect("in range")).collect()
    }

    /// Bracket table of `L(A)` as a LaTeX tabular, row `X`, column `Y`
    /// holding `[X, Y]`.
    pub fn to_latex(&self) -> String {
        let types = all_indecomposables(self.n);
        let mut s = format!("\\begin{{tabular}}{{c|{}}}\n", "c".repeat(types.len()));
        s.push_str("$[X,Y]$");
        for t in &types {
            s.push_str(&format!(" & ${t}$"));
        }
        s.push_str(" \\\\\n\\hline\n");
        for &x in &types {
            s.push_str(&format!("${x}$"));
            for &y in &types {
                let b = self.algebra.bracket(&self.m(x), &self.m(y)).expect("in range");
                s.push_str(&format!(" & ${}$", self.algebra.format(&b)));
            }
            s.push_str(" \\\\\n");
        }
        s.push_str("\\end{tabular}\n");
        s
    }
}

/// One basis element of the presented algebra with its image under `φ`
/// and the image read off the bracket table.
#[derive(Debug, Clone)]
pub struct PhiImage {
    pub name: String,
    pub word: Word,
    pub image: LieElement,
    pub expected: LieElement,
}

/// `φ` on the word basis of the presented algebra.
#[derive(Debug, Clone)]
pub struct PhiMap {
    pub n: usize,
    pub images: Vec<PhiImage>,
}

impl PhiMap {
    /// Columns are the images in the basis of `L̃(A)`.
    pub fn change_of_basis(&self, lt: &LTilde) -> Matrix<Q> {
        let cols: Vec<Vec<Q>> = self.images.iter().map(|p| lt.algebra.to_coords(&p.image)).collect();
        Matrix::from_columns(lt.dim(), &cols)
    }

    pub fn determinant(&self, lt: &LTilde) -> Q {
        self.change_of_basis(lt).determinant()
    }

    /// Coordinates of the basis of `L̃(A)` in the images, column by column.
    pub fn inverse(&self, lt: &LTilde) -> Option<Matrix<Q>> {
        self.change_of_basis(lt).inverse()
    }

    /// Expresses a basis label of `L̃(A)` through the images.
    pub fn recover(&self, lt: &LTilde, l: &LtLabel) -> Result<Vec<(String, Q)>> {
        let inv = self
            .inverse(lt)
            .ok_or_else(|| Error::Invalid("images are not a basis".into()))?;
        let k = lt.algebra.index_of(l)?;
        Ok(self
            .images
            .iter()
            .enumerate()
            .filter(|&(r, _)| !inv[(r, k)].is_zero())
            .map(|(r, p)| (p.name.clone(), inv[(r, k)].clone()))
            .collect())
    }
}

/// Word basis of the presented algebra: `x_{i,j}`, `[x_{i,n}, x_{j,n}]`,
/// `x'_{n}`, `x'_{i,n}`, `[x_{j,n-1}, x'_{i,n}]` and the `h_i`.
pub fn phi_images(lt: &LTilde) -> Result<PhiMap> {
    let n = lt.n;
    let mut images = Vec::new();
    let mut push = |name: String, word: Word, expected: LieElement| -> Result<()> {
        let image = lt.phi_word(&word)?;
        images.push(PhiImage { name, word, image, expected });
        Ok(())
    };
    for i in 1..=n {
        for j in i..=n {
            let t = if j < n { W(i, j) } else { V(i) };
            push(format!("x_{{{i},{j}}}"), Word::chain(i, j, false), lt.m(t))?;
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            push(
                format!("[x_{{{i},{n}}},x_{{{j},{n}}}]"),
                Word::br(Word::chain(i, n, false), Word::chain(j, n, false)),
                lt.combo(&[(U(j, i), 1), (U(i, j), -1)]),
            )?;
        }
    }
    for i in 1..=n {
        let expected = if i == n {
            lt.m(U(n, n))
        } else {
            lt.combo(&[(U(i, n), 1), (U(n, i), 1)])
        };
        push(format!("x'_{{{i},{n}}}"), Word::chain(i, n, true), expected)?;
    }
    for j in 1..n {
        for i in 1..=j {
            push(
                format!("[x_{{{j},{}}},x'_{{{i},{n}}}]", n - 1),
                Word::br(Word::chain(j, n - 1, false), Word::chain(i, n, true)),
                lt.combo(&[(U(i, j), 1), (U(j, i), 1)]),
            )?;
        }
    }
    for i in 1..=n {
        let c = if i == n { 2 } else { 1 };
        push(format!("h_{i}"), Word::gen(Gen::H(i)), lt.h(i)?.scale(&Q::int(c)))?;
    }
    Ok(PhiMap { n, images })
}

fn is_power_of_two(q: &Q) -> bool {
    let (a, b) = (q.numer().unsigned_abs(), q.denom().unsigned_abs());
    a.is_power_of_two() && b.is_power_of_two()
}

/// Images of `φ` against the bracket table, and invertibility over `ℤ[1/2]`.
pub fn phi_checks(lt: &LTilde) -> Result<Vec<CheckRecord>> {
    let phi = phi_images(lt)?;
    let alg = &lt.algebra;
    let mut out: Vec<CheckRecord> = phi
        .images
        .iter()
        .map(|p| {
            CheckRecord::compare(
                "phi-image",
                p.name.clone(),
                alg.format(&p.expected),
                alg.format(&p.image),
                p.image == p.expected,
            )
        })
        .collect();
    let det = phi.determinant(lt);
    out.push(CheckRecord::compare(
        "phi-determinant",
        format!("n={}", lt.n),
        "± a power of 2",
        det.to_string(),
        !det.is_zero() && is_power_of_two(&det),
    ));
    let dyadic = phi
        .inverse(lt)
        .is_some_and(|inv| inv.entries().iter().all(Q::has_dyadic_denominator));
    out.push(CheckRecord::compare(
        "phi-inverse-dyadic",
        format!("n={}", lt.n),
        "denominators are powers of 2",
        if dyadic { "denominators are powers of 2" } else { "non-dyadic or singular" },
        dyadic,
    ));
    Ok(out)
}

/// Relation id, left side, and right side as a multiple of a generator.
type Task = (String, Word, Option<(Q, Gen)>);

/// Every instance of (B1)–(B3), (C1)–(C3) and (BC3) on the images of `φ`.
pub fn verify_presentation(lt: &LTilde) -> Result<Vec<CheckRecord>> {
    let n = lt.n;
    let alg = &lt.algebra;
    let mut tasks: Vec<Task> = Vec::new();
    for ty in [BorelType::B, BorelType::C] {
        for r in borel::relation_instances(ty, n) {
            tasks.push((format!("{ty}{}", r.family), r.lhs, r.rhs));
        }
    }
    let (xn, xpn) = (Word::gen(Gen::X(n)), Word::gen(Gen::Xp(n)));
    tasks.push(("BC3".into(), Word::br(xn.clone(), xpn.clone()), None));
    if n >= 2 {
        let inner = Word::br(Word::gen(Gen::X(n - 1)), xn);
        tasks.push(("BC3".into(), Word::br(inner, xpn), None));
    }
    tasks
        .into_par_iter()
        .map(|(id, lhs, rhs)| {
            let value = lt.phi_word(&lhs)?;
            let target = match &rhs {
                Some((c, g)) => lt.phi_generator(*g)?.scale(c),
                None => LieElement::zero(),
            };
            let expected = match &rhs {
                Some((c, g)) => format!("{c}*{g}"),
                None => "0".into(),
            };
            Ok(CheckRecord::compare(id, lhs.to_string(), expected, alg.format(&value), value == target))
        })
        .collect()
}

/// Closure dimensions: all generator images give `L̃(A)`, the
/// indecomposable ones give `L(A)`.
pub fn generation_checks(lt: &LTilde) -> Result<Vec<CheckRecord>> {
    let n = lt.n;
    let mut gens: Vec<LieElement> = (1..=n).map(|i| lt.phi_generator(Gen::X(i))).collect::<Result<_>>()?;
    gens.push(lt.phi_generator(Gen::Xp(n))?);
    let l_closure = lt.algebra.subalgebra_closure(&gens)?;
    gens.extend(lt.cartan());
    let full = lt.algebra.subalgebra_closure(&gens)?;
    Ok(vec![
        CheckRecord::equal("generation-full", format!("n={n}"), &((3 * n * n + 3 * n) / 2), &full.dim()),
        CheckRecord::equal("generation-modules", format!("n={n}"), &((3 * n * n + n) / 2), &l_closure.dim()),
        CheckRecord::compare(
            "generation-modules-span",
            format!("n={n}"),
            "span of the indecomposables",
            if l_closure == lt.module_span() { "span of the indecomposables" } else { "a different subspace" },
            l_closure == lt.module_span(),
        ),
    ])
}

/// Converts `(μ(h_1), …, μ(h_n))` into `ε`-coordinates.
pub fn weight_to_root(weight: &[Q]) -> Option<Root> {
    let n = weight.len();
    let e = epsilon_matrix(BorelType::B, n).transpose();
    let rhs = Matrix::from_columns(n, &[weight.to_vec()]);
    let c = e.solve(&rhs)?.column(0);
    let ints: Option<Vec<i64>> = c.iter().map(|x| x.to_integer().map(|v| v as i64)).collect();
    ints.map(Root::new)
}

/// Weight decomposition of `L̃(A)` under `φ(h_1), …, φ(h_n)`.
pub fn cartan_decomposition_check(lt: &LTilde) -> Result<Vec<CheckRecord>> {
    let n = lt.n;
    let alg = &lt.algebra;
    let wd = alg.weight_decomposition(&lt.cartan())?;
    let mut spaces: BTreeMap<Root, Vec<usize>> = BTreeMap::new();
    let mut out = Vec::new();
    for (w, ks) in &wd.spaces {
        match weight_to_root(w) {
            Some(r) => {
                spaces.insert(r, ks.clone());
            }
            None => out.push(CheckRecord::compare("cartan-weight", format!("{w:?}"), "integral ε-coordinates", "non-integral", false)),
        }
    }
    let sys = RootSystemBC::new(n)?;
    let positive = sys.set(RootSet::PositiveBC);
    let mut expected_set: BTreeSet<Root> = positive.clone();
    expected_set.insert(Root::zero(n));
    let got: BTreeSet<Root> = spaces.keys().cloned().collect();
    out.push(CheckRecord::compare(
        "cartan-weight-set",
        format!("n={n}"),
        format!("{} weights", expected_set.len()),
        format!("{} weights", got.len()),
        got == expected_set,
    ));
    for r in &expected_set {
        let dim = spaces.get(r).map_or(0, Vec::len);
        let c = r.coeffs();
        let nonzero: Vec<i64> = c.iter().copied().filter(|&x| x != 0).collect();
        let expected = if r.is_zero() {
            n
        } else if nonzero == [1, 1] {
            2
        } else {
            1
        };
        let labels: Vec<String> = spaces
            .get(r)
            .map(|ks| ks.iter().map(|&k| alg.label(k).to_string()).collect())
            .unwrap_or_default();
        out.push(CheckRecord::compare(
            "cartan-multiplicity",
            format!("g({r}) = <{}>", labels.join(", ")),
            expected.to_string(),
            dim.to_string(),
            dim == expected,
        ));
    }
    for t in all_indecomposables(n) {
        let k = alg.index_of(&LtLabel::Mod(t))?;
        let got = wd.weight_of(k).and_then(|w| weight_to_root(w));
        let root = t.gabriel_root(n);
        out.push(CheckRecord::compare(
            "cartan-module-weight",
            t.to_string(),
            root.to_string(),
            got.as_ref().map_or("none".into(), ToString::to_string),
            got.as_ref() == Some(&root),
        ));
    }
    Ok(out)
}

/// `span{U(i,j) + U(j,i) : i ≤ j}`.
pub fn ideal_b(lt: &LTilde) -> Subspace<Q> {
    let n = lt.n;
    let vs = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j)));
    Subspace::spanned_by(
        lt.dim(),
        vs.map(|(i, j)| lt.algebra.to_coords(&lt.combo(&[(U(i, j), 1), (U(j, i), 1)])))
            .collect::<Vec<_>>(),
    )
}

/// `span{V(i)} + span{U(j,i) - U(i,j) : i < j}`.
pub fn ideal_c(lt: &LTilde) -> Subspace<Q> {
    let n = lt.n;
    let mut vs: Vec<Vec<Q>> = (1..=n).map(|i| lt.algebra.to_coords(&lt.m(V(i)))).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            vs.push(lt.algebra.to_coords(&lt.combo(&[(U(j, i), 1), (U(i, j), -1)])));
        }
    }
    Subspace::spanned_by(lt.dim(), vs)
}

fn quotient_gen(lt: &LTilde, q: &Quotient<LtLabel>, g: Gen) -> LieElement {
    lt.phi_generator(g).map(|e| q.project(&e)).unwrap_or_else(|_| LieElement::zero())
}

/// The two ideals: closure, generation by `S'_n` resp. `S_n`, dimensions,
/// and the isomorphism of the quotients with the matrix Borels, plus the
/// crossed pairing as a negative control.
pub fn ideal_quotient_check(lt: &LTilde) -> Result<Vec<CheckRecord>> {
    let n = lt.n;
    let alg = &lt.algebra;
    let mut out = Vec::new();
    let cases = [
        (BorelType::B, ideal_b(lt), lt.m(U(n, n))),
        (BorelType::C, ideal_c(lt), lt.m(V(n))),
    ];
    let mut quotients = Vec::new();
    for (ty, span, generator) in cases {
        let id = |s: &str| format!("quotient-{ty}-{s}");
        let witness = alg.ideal_witness(&span);
        out.push(CheckRecord::compare(
            id("ideal"),
            format!("n={n}"),
            "closed under brackets",
            witness.as_ref().map_or("closed under brackets".into(), |(a, b)| format!("[{a}, {b}] leaves the span")),
            witness.is_none(),
        ));
        let generated = alg.ideal_closure(std::slice::from_ref(&generator))?;
        out.push(CheckRecord::compare(
            id("generated"),
            format!("ideal({})", alg.format(&generator)),
            "the printed span",
            if generated == span { "the printed span".to_string() } else { format!("dimension {}", generated.dim()) },
            generated == span,
        ));
        out.push(CheckRecord::equal(id("ideal-dim"), format!("n={n}"), &(n * (n + 1) / 2), &span.dim()));
        let q = alg.quotient(&span)?;
        out.push(CheckRecord::equal(id("dim"), format!("n={n}"), &(n * n + n), &q.algebra.dim()));
        quotients.push((ty, q));
    }
    let models = [build_borel(BorelType::B, n)?, build_borel(BorelType::C, n)?];
    for (ty, q) in &quotients {
        for model in &models {
            let report = quotient_iso_check(&q.algebra, |g| quotient_gen(lt, q, g), model);
            let matching = *ty == model.ty;
            let label = if matching { "isomorphic" } else { "not isomorphic" };
            out.push(CheckRecord::compare(
                format!("quotient-{ty}-vs-{}-model", model.ty),
                format!("n={n}"),
                label,
                match (&report.isomorphic, &report.witness) {
                    (true, _) => "isomorphic".to_string(),
                    (false, w) => format!("not isomorphic: {}", w.clone().unwrap_or_default()),
                },
                report.isomorphic == matching,
            ));
        }
    }
    Ok(out)
}

/// Structure constants of `L(A)` are integers in `{-1, 0, 1}`.
pub fn integrality_check(lt: &LTilde) -> Result<Vec<CheckRecord>> {
    let l = build_l(lt.n)?;
    let ok = l.constants_within(&[-1, 0, 1]);
    let mut out = vec![CheckRecord::compare(
        "integrality-constants",
        format!("n={}", lt.n),
        "all in {-1,0,1}",
        if ok { "all in {-1,0,1}" } else { "outside {-1,0,1}" },
        ok,
    )];
    out.extend(
        phi_checks(lt)?
            .into_iter()
            .filter(|r| r.check_id != "phi-image"),
    );
    Ok(out)
}

pub fn jacobi_records(lt: &LTilde) -> Vec<CheckRecord> {
    let rep = lt.algebra.jacobi_check();
    let computed = match &rep.counterexample {
        None => format!("0 on {} triples", rep.triples_checked),
        Some((a, b, c, s)) => format!("({a}, {b}, {c}) gives {s}"),
    };
    vec![
        CheckRecord::compare(
            "jacobi",
            format!("n={}", lt.n),
            format!("0 on {} triples", rep.triples_checked),
            computed,
            rep.holds,
        ),
        CheckRecord::compare(
            "antisymmetry",
            format!("n={}", lt.n),
            "antisymmetric",
            if lt.algebra.is_antisymmetric() { "antisymmetric" } else { "not antisymmetric" },
            lt.algebra.is_antisymmetric(),
        ),
    ]
}

/// Point-count evidence for one oracle bracket.
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub record: CheckRecord,
    pub evidence: Vec<String>,
}

/// Compares the Euler-characteristic brackets with the table for every
/// ordered pair.
pub fn verify_bracket_oracle(n: usize, config: HallConfig) -> Result<Vec<OracleComparison>> {
    let oracle = HallOracle::new(n, config)?;
    Ok(oracle
        .all_brackets()
        .into_iter()
        .map(|(x, y, res)| {
            let instance = format!("[{x}, {y}]");
            let table = table_bracket(x, y);
            let expected = format_terms(&table);
            match res {
                Ok(b) => {
                    let got: Vec<(IndecType, i64)> = b.terms.iter().map(|(&t, &c)| (t, c)).collect();
                    let evidence = b
                        .evidence
                        .iter()
                        .map(|e| {
                            let counts = |c: &crate::quiverrep::EulerCharacteristic| {
                                c.counts.iter().map(|p| format!("F{}:{}", p.prime, p.count)).collect::<Vec<_>>().join(" ")
                            };
                            format!(
                                "{}: chi(X,Y)={} [{}], chi(Y,X)={} [{}]",
                                e.z,
                                e.forward.value,
                                counts(&e.forward),
                                e.backward.value,
                                counts(&e.backward)
                            )
                        })
                        .collect();
                    OracleComparison {
                        record: CheckRecord::compare("oracle", instance, expected, format_terms(&got), got == table),
                        evidence,
                    }
                }
                Err(Error::BudgetExceeded { budget }) => OracleComparison {
                    record: CheckRecord::new("oracle", instance, expected, format!("budget {budget} exceeded"), Status::BudgetExceeded),
                    evidence: Vec::new(),
                },
                Err(e) => OracleComparison {
                    record: CheckRecord::compare("oracle", instance, expected, e.to_string(), false),
                    evidence: Vec::new(),
                },
            }
        })
        .collect())
}

fn format_terms(terms: &[(IndecType, i64)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (t, c)) in terms.iter().enumerate() {
        let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
        let mag = c.unsigned_abs();
        if mag == 1 {
            s.push_str(&format!("{sign}{t}"));
        } else {
            s.push_str(&format!("{sign}{mag}*{t}"));
        }
    }
    s
}
