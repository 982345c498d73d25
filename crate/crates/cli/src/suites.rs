//! Verification suites assembled from the library checks.

use std::collections::BTreeMap;

use anyhow::Result;
use clap::ValueEnum;
use gentle_bc::homology::{generate_table, ResolutionStatus, ResolutionStore, TableKind};
use gentle_bc::matrix::Matrix;
use gentle_bc::quiverrep::{
    all_indecomposables, bilinear_form_a, cartan_matrix, root_of_dim_vector, HallConfig,
};
use gentle_bc::report::CheckRecord;
use gentle_bc::riedtmann::{
    build_ltilde, cartan_decomposition_check, generation_checks, ideal_quotient_check,
    integrality_check, jacobi_records, phi_checks, verify_bracket_oracle, verify_presentation,
};
use gentle_bc::rootsys::{inner, Root, RootSet, RootSystemBC};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Jacobi,
    Gabriel,
    Presentation,
    Oracle,
    Cartan,
    Euler,
    Quotients,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Gabriel,
                Suite::Jacobi,
                Suite::Presentation,
                Suite::Cartan,
                Suite::Quotients,
                Suite::Euler,
                Suite::Oracle,
            ],
            s => vec![s],
        }
    }
}

pub struct SuiteConfig {
    pub n: usize,
    pub max_depth: Option<usize>,
    pub oracle: HallConfig,
    pub force_oracle: bool,
}

/// Largest rank at which the oracle runs without `--force-oracle`.
pub const ORACLE_AUTO_MAX_N: usize = 3;

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for s in suite.expand() {
        out.extend(run_one(s, cfg)?);
    }
    Ok(out)
}

fn run_one(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let n = cfg.n;
    Ok(match suite {
        Suite::All => unreachable!("expanded by run"),
        Suite::Gabriel => gabriel(n)?,
        Suite::Jacobi => jacobi_records(&build_ltilde(n)?),
        Suite::Presentation => {
            let lt = build_ltilde(n)?;
            let mut r = verify_presentation(&lt)?;
            r.extend(generation_checks(&lt)?);
            r.extend(phi_checks(&lt)?);
            r.extend(integrality_check(&lt)?);
            r
        }
        Suite::Cartan => cartan_decomposition_check(&build_ltilde(n)?)?,
        Suite::Quotients if n < 2 => vec![CheckRecord::skipped(
            "quotients",
            format!("n={n}"),
            "the quotient statements need n >= 2",
        )],
        Suite::Quotients => ideal_quotient_check(&build_ltilde(n)?)?,
        Suite::Euler => euler(cfg)?,
        Suite::Oracle if n > ORACLE_AUTO_MAX_N && !cfg.force_oracle => vec![CheckRecord::skipped(
            "oracle",
            format!("n={n}"),
            format!("skipped for n > {ORACLE_AUTO_MAX_N}; pass --force-oracle to run"),
        )],
        Suite::Oracle => {
            let res = verify_bracket_oracle(n, cfg.oracle.clone())?;
            for r in &res {
                for e in &r.evidence {
                    eprintln!("{}: {e}", r.record.instance);
                }
            }
            res.into_iter().map(|r| r.record).collect()
        }
    })
}

fn gabriel(n: usize) -> Result<Vec<CheckRecord>> {
    let types = all_indecomposables(n);
    let sys = RootSystemBC::new(n)?;
    let positive = sys.set(RootSet::PositiveBC);
    let mut out = vec![
        CheckRecord::equal("gabriel-count", format!("n={n}"), &((3 * n * n + n) / 2), &types.len()),
        CheckRecord::equal("gabriel-positive-roots", format!("n={n}"), &(n * n + n), &positive.len()),
    ];
    let mut fibers: BTreeMap<Root, Vec<String>> = BTreeMap::new();
    for t in &types {
        let r = root_of_dim_vector(&t.dim_vector(n));
        out.push(CheckRecord::compare(
            "gabriel-root",
            t.to_string(),
            t.gabriel_root(n).to_string(),
            r.to_string(),
            r == t.gabriel_root(n) && positive.contains(&r),
        ));
        fibers.entry(r).or_default().push(t.to_string());
    }
    for r in positive {
        let c = r.coeffs();
        let sum_of_two = c.iter().filter(|&&x| x == 1).count() == 2 && c.iter().all(|&x| x <= 1);
        let want = if sum_of_two { 2 } else { 1 };
        let got = fibers.get(r).map_or(0, Vec::len);
        out.push(CheckRecord::compare(
            "gabriel-fiber",
            r.to_string(),
            want.to_string(),
            format!("{got} {:?}", fibers.get(r).cloned().unwrap_or_default()),
            got == want,
        ));
    }
    let mut agree = 0;
    for a in &types {
        for b in &types {
            let form = bilinear_form_a(&a.dim_vector(n), &b.dim_vector(n))?;
            let roots = inner(&a.gabriel_root(n), &b.gabriel_root(n))?;
            if form == roots {
                agree += 1;
            } else {
                out.push(CheckRecord::compare("gabriel-form", format!("({a}, {b})"), roots.to_string(), form.to_string(), false));
            }
        }
    }
    let pairs = types.len() * types.len();
    out.push(CheckRecord::equal("gabriel-form", format!("n={n}, all pairs"), &pairs, &agree));
    Ok(out)
}

fn euler(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let n = cfg.n;
    let store = match cfg.max_depth {
        Some(d) => ResolutionStore::with_depth(n, d)?,
        None => ResolutionStore::new(n)?,
    };
    let mut out = Vec::new();
    let undetermined = undetermined_modules(&store);
    if !undetermined.is_empty() {
        out.push(CheckRecord::compare(
            "euler-resolutions",
            format!("n={n}, depth {}", store.max_depth()),
            "all resolutions finite or periodic",
            format!("undetermined: {}", undetermined.join(", ")),
            false,
        ));
        return Ok(out);
    }
    let types = all_indecomposables(n);
    let mut poles = Vec::new();
    let mut asym = Vec::new();
    for &a in &types {
        for &b in &types {
            match (store.euler_at_one(a, b), store.euler_at_one(b, a)) {
                (Ok(x), Ok(y)) => {
                    let form = bilinear_form_a(&a.dim_vector(n), &b.dim_vector(n))?;
                    if x.clone() + y.clone() != form {
                        asym.push(format!("<{a},{b}>+<{b},{a}> = {}, form {form}", x + y));
                    }
                }
                (Err(e), _) | (_, Err(e)) => poles.push(e.to_string()),
            }
        }
    }
    let summary = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join("; ") };
    out.push(CheckRecord::compare("euler-rational", format!("n={n}"), "no pole at t=1", summary(&poles), poles.is_empty()));
    if !poles.is_empty() {
        return Ok(out);
    }
    out.push(CheckRecord::compare("euler-symmetrization", format!("n={n}"), "none", summary(&asym), asym.is_empty()));
    let broken: Vec<String> = store
        .additivity_all()?
        .into_iter()
        .filter(|r| !r.holds)
        .map(|r| format!("<{},{}>: {} vs {}", r.m, r.n, r.lhs, r.rhs))
        .collect();
    out.push(CheckRecord::compare("euler-additivity", format!("n={n}"), "none", summary(&broken), broken.is_empty()));
    let s = store.simple_matrix()?;
    let product_is_identity = s.mul(&cartan_matrix(n).transpose()) == Matrix::identity(n);
    out.push(CheckRecord::compare(
        "euler-simples",
        format!("n={n}"),
        "S * C^T = I",
        if product_is_identity { "S * C^T = I" } else { "S * C^T != I" },
        product_is_identity,
    ));
    for kind in [TableKind::Series, TableKind::AtOne] {
        let t = generate_table(kind, &store)?;
        let id = format!("euler-table-{}", kind.number());
        for f in &t.findings {
            out.push(CheckRecord::compare(
                id.clone(),
                format!("<{}, {}>", f.row, f.col),
                f.printed.join(" | "),
                format!("{:?}: {} (ext dims {:?})", f.kind, f.computed, f.ext_dims),
                false,
            ));
        }
        out.push(CheckRecord::equal(id, format!("n={n}, agreeing cells"), &t.entries.len(), &t.agreements()));
    }
    Ok(out)
}

/// Labels whose resolution was cut off at the depth bound.
pub fn undetermined_modules(store: &ResolutionStore) -> Vec<String> {
    store
        .types()
        .filter(|&t| {
            matches!(
                store.resolution(t).map(|r| r.status),
                Ok(ResolutionStatus::Undetermined { .. }) | Err(_)
            )
        })
        .map(|t| t.to_string())
        .collect()
}
