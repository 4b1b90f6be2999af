//! Families of groups, sweeps over them, and the flat CSV row form.

use rayon::prelude::*;

use crate::abelian::AbelianGroup;
use crate::cache::{cache_key, Cache};
use crate::error::{Error, Result};
use crate::report::{
    build_report, CheckCounts, InvariantReport, Measured, ReportBody, ReportOptions,
};

/// Largest order accepted by the `all-abelian` generator.
pub const MAX_SWEEP_ORDER: u64 = 1024;

/// Every way of writing `n` as an ordered product of factors `≥ 2`.
pub fn ordered_factorizations(n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for d in 2..=n {
        if n.is_multiple_of(d) {
            for mut rest in ordered_factorizations(n / d) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
    }
    out
}

/// All spellings `Z_{m1}x...xZ_{mk}` of groups of order `2..=max_order`,
/// including isomorphic ones and reorderings, by order then moduli.
pub fn all_abelian(max_order: u64) -> Result<Vec<AbelianGroup>> {
    if max_order > MAX_SWEEP_ORDER {
        return Err(Error::Usage(format!(
            "--max-order {max_order} exceeds the sweep limit {MAX_SWEEP_ORDER}"
        )));
    }
    let mut out = Vec::new();
    for n in 2..=max_order {
        let mut fs = ordered_factorizations(n);
        fs.sort();
        for f in fs {
            out.push(AbelianGroup::new(f)?);
        }
    }
    Ok(out)
}

/// `all-abelian` (with `max_order`) or a comma-separated list of specs.
pub fn parse_family(family: &str, max_order: Option<u64>) -> Result<Vec<AbelianGroup>> {
    if family == "all-abelian" {
        let max = max_order.ok_or_else(|| Error::Usage("all-abelian needs --max-order".into()))?;
        return all_abelian(max);
    }
    family
        .split(',')
        .filter(|s| !s.is_empty())
        .map(AbelianGroup::parse)
        .collect()
}

/// Reports for every group, in input order, on a pool of `jobs` threads.
/// Cached reports are reused; new ones without disagreements are stored.
pub fn run_sweep(
    groups: &[AbelianGroup],
    options: &ReportOptions,
    cache: Option<&Cache>,
    jobs: usize,
) -> Result<Vec<InvariantReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Usage(e.to_string()))?;
    pool.install(|| {
        groups
            .par_iter()
            .map(|g| report_with_cache(g, options, cache))
            .collect()
    })
}

/// A single report, going through the cache when one is given. Runs with an
/// injected fault never touch the cache.
pub fn report_with_cache(
    group: &AbelianGroup,
    options: &ReportOptions,
    cache: Option<&Cache>,
) -> Result<InvariantReport> {
    let cache = cache.filter(|_| options.fault.is_none() && !options.timings);
    let key = cache_key(group, options);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        return Ok(hit.respelled(group));
    }
    let report = build_report(group, options);
    if let Some(c) = cache {
        if report.agree_all {
            c.put(&key, &report)?;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub rows: usize,
    pub rows_with_disagreement: usize,
    pub checks: CheckCounts,
}

pub fn summarize(reports: &[InvariantReport]) -> SweepSummary {
    let mut s = SweepSummary::default();
    for r in reports {
        s.rows += 1;
        s.rows_with_disagreement += usize::from(!r.agree_all);
        s.checks.add(r.checks);
    }
    s
}

pub const CSV_COLUMNS: [&str; 18] = [
    "spec",
    "n",
    "r",
    "blocks",
    "edges_f",
    "edges_o",
    "chi_f",
    "chi_o",
    "eccO1_f",
    "eccO1_o",
    "eccO23_f",
    "eccO23_o",
    "radD",
    "diamD",
    "beta_f",
    "beta_o",
    "poly_agree",
    "agree_all",
];

/// One report flattened to the fixed CSV columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow(pub Vec<String>);

fn measured(m: &Measured<u64>) -> String {
    match m {
        Measured::Value(v) => v.to_string(),
        Measured::Unchecked(_) => "unchecked".into(),
    }
}

/// `formula`, or `formula/oracle` when they differ.
fn paired(formula: u64, oracle: &Measured<u64>) -> String {
    match oracle {
        Measured::Value(o) if *o != formula => format!("{formula}/{o}"),
        _ => formula.to_string(),
    }
}

impl SweepRow {
    pub fn from_report(r: &InvariantReport) -> Self {
        let mut cols = vec![r.spec.clone(), r.n.to_string(), r.r.to_string()];
        match &r.body {
            ReportBody::Abelian(a) => {
                cols.push(String::new());
                cols.push(a.edges.to_string());
                cols.push(match a.complete {
                    Measured::Value(true) => a.edges.to_string(),
                    Measured::Value(false) => "incomplete".into(),
                    Measured::Unchecked(_) => "unchecked".into(),
                });
                cols.extend(std::iter::repeat_n(String::new(), 11));
            }
            ReportBody::Full(f) => {
                let d = &f.detour;
                let o23 = match (&d.ecc.omega2.oracle, &d.ecc.omega3.oracle) {
                    (a, b) if a == b => measured(a),
                    (a, b) => format!("{}/{}", measured(a), measured(b)),
                };
                cols.extend([
                    f.blocks.to_string(),
                    f.edges.formula.to_string(),
                    measured(&f.edges.oracle),
                    f.chromatic.number.formula.to_string(),
                    measured(&f.chromatic.number.oracle),
                    d.ecc.omega1.formula.to_string(),
                    measured(&d.ecc.omega1.oracle),
                    d.ecc.omega2.formula.to_string(),
                    o23,
                    paired(d.radius.formula, &d.radius.oracle),
                    paired(d.diameter.formula, &d.diameter.oracle),
                    f.resolving.beta.formula.to_string(),
                    measured(&f.resolving.beta.oracle),
                    match &f.resolving.poly.oracle {
                        Measured::Unchecked(_) => "unchecked".into(),
                        _ => f.resolving.poly.agree.to_string(),
                    },
                ]);
            }
        }
        cols.push(r.agree_all.to_string());
        SweepRow(cols)
    }

    pub fn to_csv_line(&self) -> String {
        self.0.join(",")
    }
}

pub fn to_csv(reports: &[InvariantReport]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in reports {
        out.push_str(&SweepRow::from_report(r).to_csv_line());
        out.push('\n');
    }
    out
}
