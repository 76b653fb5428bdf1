//! The verification suite: every reference fact the library is built
//! around, re-checked from scratch against the golden data.
//!
//! Each check is independent and failure-isolated — an unreadable or
//! corrupted golden file fails the checks that consume it by name instead
//! of aborting the run.  Expensive intermediates (transfer engines, long
//! census series) are computed once and shared; timings are recorded per
//! check, attributed to whichever check triggered the computation.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use once_cell::sync::OnceCell;

use crate::enumerate::admissible_tally;
use crate::error::CoreError;
use crate::fixtures::{block13_system, cascade_system};
use crate::golden;
use crate::graph::count_ham_cycles_oracle;
use crate::krylov::stripped_matrix_minpoly;
use crate::poly::Poly;
use crate::recurrences::{
    algorithm1, census_annihilator_k3, census_classes, census_reduction_k4, class_labels,
    failing_signature_check, minimal_charpoly_on_census, parity_recurrences, system_windows,
};
use crate::sides::enumerate_side_intersections;
use crate::signatures::enumerate_signatures;
use crate::transfer::Engine;

/// Result of one named check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    /// What was checked and what came out, human-readable.
    pub detail: String,
    /// A passing result that deviates from the reference in a recorded,
    /// acceptable way.
    pub annotation: Option<String>,
    pub seconds: f64,
}

/// Which slice of the suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyScope {
    /// All checks (k = 3 and 4 throughout, catalogs up to k = 5).
    Full,
    /// Catalog counting only — the k = 5 story, marked partial.
    CatalogOnly,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub threads: usize,
    pub seed: u64,
    pub scope: VerifyScope,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { threads: 1, seed: 7, scope: VerifyScope::Full }
    }
}

#[derive(Debug)]
pub struct VerifySummary {
    pub checks: Vec<CheckOutcome>,
    /// True when only a subset of the suite ran.
    pub partial: bool,
}

impl VerifySummary {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Shared lazy state: engines and long series are built once, on first
/// use, and errors are confined to the requesting check.
struct Context {
    threads: usize,
    seed: u64,
    engine3: OnceCell<Engine>,
    engine4: OnceCell<Engine>,
    classes3: OnceCell<Vec<(crate::scc::SccClass, Poly)>>,
    classes4: OnceCell<Vec<(crate::scc::SccClass, Poly)>>,
    h3: OnceCell<Result<Vec<BigInt>, String>>,
    h4: OnceCell<Result<Vec<BigInt>, String>>,
}

impl Context {
    fn new(threads: usize, seed: u64) -> Self {
        Context {
            threads,
            seed,
            engine3: OnceCell::new(),
            engine4: OnceCell::new(),
            classes3: OnceCell::new(),
            classes4: OnceCell::new(),
            h3: OnceCell::new(),
            h4: OnceCell::new(),
        }
    }

    fn engine(&self, k: usize) -> &Engine {
        let cell = match k {
            3 => &self.engine3,
            4 => &self.engine4,
            _ => unreachable!("suite engines are k = 3 and 4"),
        };
        cell.get_or_init(|| Engine::with_threads(k, self.threads))
    }

    fn classes(&self, k: usize) -> &[(crate::scc::SccClass, Poly)] {
        let cell = match k {
            3 => &self.classes3,
            4 => &self.classes4,
            _ => unreachable!(),
        };
        cell.get_or_init(|| census_classes(self.engine(k)))
    }

    /// Census series (1-based values at index n−1): golden prefix below
    /// n₀ = 3k, transfer run beyond — k = 3 to n = 150, k = 4 to n = 400.
    fn h(&self, k: usize) -> Result<&[BigInt], CoreError> {
        let (cell, n_max) = match k {
            3 => (&self.h3, 150),
            4 => (&self.h4, 400),
            _ => unreachable!(),
        };
        cell.get_or_init(|| {
            golden::full_h_series(k, n_max, self.threads).map_err(|e| e.to_string())
        })
        .as_ref()
        .map(|v| v.as_slice())
        .map_err(|e| CoreError::Mining(e.clone()))
    }
}

type CheckBody = (bool, String, Option<String>);

fn run_one(
    name: &'static str,
    body: impl FnOnce() -> Result<CheckBody, CoreError>,
) -> CheckOutcome {
    let t = Instant::now();
    let (pass, detail, annotation) = match body() {
        Ok(out) => out,
        Err(e) => (false, format!("error: {e}"), None),
    };
    CheckOutcome { name, pass, detail, annotation, seconds: t.elapsed().as_secs_f64() }
}

/// Runs the suite and reports per-check outcomes.
pub fn run_checks(cfg: &VerifyConfig) -> VerifySummary {
    let ctx = Context::new(cfg.threads.max(1), cfg.seed);
    let mut checks = Vec::new();

    checks.push(run_one("catalog-counts", || catalog_counts()));
    if cfg.scope == VerifyScope::CatalogOnly {
        return VerifySummary { checks, partial: true };
    }
    checks.push(run_one("oracle-agreement", || oracle_agreement()));
    checks.push(run_one("pipeline-counts", || pipeline_counts(&ctx)));
    checks.push(run_one("transfer-step-soundness", || step_soundness(&ctx)));
    checks.push(run_one("scc-structure", || scc_structure(&ctx)));
    checks.push(run_one("class-polynomials", || class_polynomials(&ctx)));
    checks.push(run_one("fixture-systems", || fixture_systems()));
    checks.push(run_one("census-recurrence", || census_recurrence(&ctx)));
    checks.push(run_one("minimality", || minimality(&ctx)));
    checks.push(run_one("parity-split", || parity_split(&ctx)));
    checks.push(run_one("reachability-of-failures", || reachability_of_failures(&ctx)));
    VerifySummary { checks, partial: false }
}

fn catalog_counts() -> Result<CheckBody, CoreError> {
    const EXPECTED: [(usize, usize, usize, f64); 3] =
        [(3, 33, 1705, 10.0), (4, 85, 25675, 10.0), (5, 217, 455835, 600.0)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, want_sides, want_sigs, budget) in EXPECTED {
        let t = Instant::now();
        let sides = enumerate_side_intersections(k).len();
        let sigs = enumerate_signatures(k).signatures.len();
        let secs = t.elapsed().as_secs_f64();
        if sides != want_sides || sigs != want_sigs || secs > budget {
            pass = false;
        }
        parts.push(format!("k={k} sides={sides} signatures={sigs} ({secs:.1}s)"));
    }
    Ok((pass, parts.join(", "), None))
}

fn oracle_agreement() -> Result<CheckBody, CoreError> {
    let t = Instant::now();
    let mut pass = true;
    let mut mismatches = Vec::new();
    for (k, lo) in [(3usize, 7usize), (4, 9)] {
        let golden = golden::h_series(k)?;
        for n in lo..=14 {
            let got = BigInt::from(count_ham_cycles_oracle(n, k)?);
            let want = &golden[n - 1].1;
            if got != *want {
                pass = false;
                mismatches.push(format!("k={k} n={n}: {got} vs {want}"));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if secs > 300.0 {
        pass = false;
    }
    let detail = if mismatches.is_empty() {
        format!("backtracking counts match references for k=3 n=7..14, k=4 n=9..14 ({secs:.1}s)")
    } else {
        mismatches.join(", ")
    };
    Ok((pass, detail, None))
}

fn pipeline_counts(ctx: &Context) -> Result<CheckBody, CoreError> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, lo, hi, budget) in [(3usize, 9usize, 38usize, f64::INFINITY), (4, 12, 162, 600.0)] {
        let t = Instant::now();
        let computed = ctx.h(k)?;
        let golden = golden::h_series(k)?;
        let mut bad = 0;
        for n in lo..=hi {
            if computed[n - 1] != golden[n - 1].1 {
                bad += 1;
            }
        }
        let secs = t.elapsed().as_secs_f64();
        if bad > 0 || secs > budget {
            pass = false;
        }
        parts.push(format!("k={k} n={lo}..{hi}: {bad} mismatches ({secs:.1}s)"));
    }
    Ok((pass, parts.join(", "), None))
}

fn step_soundness(ctx: &Context) -> Result<CheckBody, CoreError> {
    let mut pass = true;
    let mut parts = Vec::new();
    for k in [3usize, 4] {
        let engine = ctx.engine(k);
        let stepped = engine.step(&engine.initial()?);
        let tally = admissible_tally(&engine.catalog, 3 * k + 1)?;
        let agree = stepped.values.len() == tally.len()
            && stepped
                .values
                .iter()
                .zip(&tally)
                .all(|(got, &want)| *got == BigInt::from(want));
        if !agree {
            pass = false;
        }
        parts.push(format!(
            "k={k}: transfer step vs direct tally of the {}-ring frame {}",
            3 * k + 1,
            if agree { "agree" } else { "DISAGREE" }
        ));
    }
    Ok((pass, parts.join(", "), None))
}

fn scc_structure(ctx: &Context) -> Result<CheckBody, CoreError> {
    let classes3 = ctx.classes(3);
    let mut sizes3: Vec<usize> =
        classes3.iter().map(|(c, _)| c.size).filter(|&s| s > 1).collect();
    sizes3.sort_unstable();
    let ok3 = classes3.len() == 7 && sizes3 == [2, 3, 4, 12, 13, 24];

    let classes4 = ctx.classes(4);
    let max4 = classes4.iter().map(|(c, _)| c.size).max().unwrap_or(0);
    let ok4 = classes4.len() == 11 && max4 == 122;

    Ok((
        ok3 && ok4,
        format!(
            "σ₃: {} classes, nontrivial sizes {:?}; σ₄: {} classes, max size {}",
            classes3.len(),
            sizes3,
            classes4.len(),
            max4
        ),
        None,
    ))
}

fn class_polynomials(ctx: &Context) -> Result<CheckBody, CoreError> {
    let mut pass = true;
    let mut parts = Vec::new();
    for k in [3usize, 4] {
        let classes = ctx.classes(k);
        let labels = class_labels(classes);
        let computed: BTreeMap<String, Poly> = labels
            .into_iter()
            .zip(classes.iter().map(|(_, p)| p.clone()))
            .collect();
        let reference: BTreeMap<String, Poly> = golden::class_products(k)?.into_iter().collect();
        let shape_ok = computed == reference;
        let integral = computed.values().all(|p| {
            p.integer_coeffs().is_some() && (p.degree() == 0 || p.leading().is_one())
        });
        if !shape_ok || !integral {
            pass = false;
        }
        parts.push(format!(
            "k={k}: {} class polynomials {} reference products{}",
            computed.len(),
            if shape_ok { "equal" } else { "DIFFER from" },
            if integral { "" } else { " (non-integral!)" },
        ));
    }
    Ok((pass, parts.join("; "), None))
}

fn fixture_systems() -> Result<CheckBody, CoreError> {
    let block = Poly::from_i64s(&[-1, -1, 0, -1, 0, 0, 1]);
    let (stripped, _) = stripped_matrix_minpoly(&block13_system());
    let block_ok = stripped == block;

    let lhs = Poly::from_i64s(&[-1, 1])
        .mul(&Poly::from_i64s(&[1, 1, 1, 1, 1]))
        .mul(&block);
    let identity_ok = lhs == Poly::from_i64s(&[1, 1, 0, 1, 0, -1, -2, 0, -1, 0, 0, 1]);

    let (m, initial, targets) = cascade_system();
    let windows = system_windows(&m, &initial, 0, 64);
    let composed = algorithm1(&m.out_lists(), &windows, &targets)?;
    let cascade_ok = composed == block.mul(&block);

    Ok((
        block_ok && identity_ok && cascade_ok,
        format!(
            "13-node stripped minimal polynomial {}; degree-11 factorization identity {}; \
             cascade composition gives the square: {}",
            if block_ok { "matches" } else { "MISMATCH" },
            if identity_ok { "holds" } else { "FAILS" },
            cascade_ok
        ),
        None,
    ))
}

fn census_recurrence(ctx: &Context) -> Result<CheckBody, CoreError> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, start, budget) in [(3usize, 39usize, f64::INFINITY), (4, 163, 1800.0)] {
        let t = Instant::now();
        let h = ctx.h(k)?;
        let p = golden::census_poly(k)?;
        let d = p.degree();
        // Every window ending at start..=len: the degree equals start − 1,
        // so this is all full windows of the series.
        assert_eq!(d, start - 1);
        let holds = crate::berlekamp::annihilates(&p, h, 0);
        let secs = t.elapsed().as_secs_f64();
        if !holds || secs > budget {
            pass = false;
        }
        parts.push(format!(
            "k={k}: degree-{d} recurrence {} for n={start}..{} ({secs:.1}s)",
            if holds { "holds" } else { "FAILS" },
            h.len()
        ));
    }
    Ok((pass, parts.join("; "), None))
}

fn minimality(ctx: &Context) -> Result<CheckBody, CoreError> {
    let h3 = ctx.h(3)?;
    let mined = census_annihilator_k3(h3)?;
    let p_ref = golden::census_poly(3)?;
    let k3_ok = mined.poly == p_ref && mined.poly.degree() == 38 && mined.start == 39;

    let minimal = minimal_charpoly_on_census(4, ctx.threads, ctx.seed)?;
    let expected = golden::census_poly(4)?
        .mul(&golden::factor_poly('q', 1)?)
        .mul(&golden::factor_poly('q', 6)?)
        .mul(&golden::factor_poly('q', 6)?);
    let k4_minimal_ok = minimal.degree() == 171 && minimal == expected;

    let h4 = ctx.h(4)?;
    let reduction = census_reduction_k4(h4)?;
    let reduction_ok = reduction.period_start <= 171
        && reduction.period_block_zero
        && reduction.census_from == 163;

    Ok((
        k3_ok && k4_minimal_ok && reduction_ok,
        format!(
            "mined k=3 annihilator: degree {} from n={} (reference match: {}); \
             minimal polynomial on the k=4 state: degree {} (product match: {}); \
             k=4 reduction: degree-167 product from n={}, residual period from n={} \
             (block zero: {}), census recurrence from n={}",
            mined.poly.degree(),
            mined.start,
            k3_ok,
            minimal.degree(),
            k4_minimal_ok,
            reduction.combined_from,
            reduction.period_start,
            reduction.period_block_zero,
            reduction.census_from
        ),
        None,
    ))
}

fn parity_split(ctx: &Context) -> Result<CheckBody, CoreError> {
    let outcome = parity_recurrences(ctx.threads)?;
    let pass = outcome.reference_match
        && outcome.even_recurrence
        && outcome.odd_recurrence
        && outcome.decomposition;
    Ok((
        pass,
        format!(
            "reference lists match: {}; even recurrence n=13..100: {}; \
             odd recurrence n=15..100: {}; three-way decomposition n=1..100: {}",
            outcome.reference_match,
            outcome.even_recurrence,
            outcome.odd_recurrence,
            outcome.decomposition
        ),
        None,
    ))
}

fn reachability_of_failures(ctx: &Context) -> Result<CheckBody, CoreError> {
    let report = failing_signature_check(ctx.engine(4))?;
    let pass = !report.reaches_target;
    let annotation = if report.failing.len() != 25 {
        Some(format!(
            "failing set has {} signatures where the reference describes 25; \
             the reachability property itself is intact",
            report.failing.len()
        ))
    } else {
        None
    };
    Ok((
        pass,
        format!(
            "{} signatures fail the degree-167 product at n={}; \
             paths from them to a Hamiltonian signature: {}",
            report.failing.len(),
            report.check_index,
            if report.reaches_target { "EXIST" } else { "none" }
        ),
        annotation,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_only_scope_is_partial() {
        let summary = run_checks(&VerifyConfig {
            scope: VerifyScope::CatalogOnly,
            ..VerifyConfig::default()
        });
        assert!(summary.partial);
        assert_eq!(summary.checks.len(), 1);
        assert_eq!(summary.checks[0].name, "catalog-counts");
        assert!(summary.checks[0].pass, "{}", summary.checks[0].detail);
    }

    #[test]
    fn fixture_check_passes() {
        let outcome = run_one("fixture-systems", fixture_systems);
        assert!(outcome.pass, "{}", outcome.detail);
    }

    #[test]
    fn check_names_are_stable() {
        // The CLI and the negative-control tests address checks by name.
        let names = [
            "catalog-counts",
            "oracle-agreement",
            "pipeline-counts",
            "transfer-step-soundness",
            "scc-structure",
            "class-polynomials",
            "fixture-systems",
            "census-recurrence",
            "minimality",
            "parity-split",
            "reachability-of-failures",
        ];
        assert_eq!(names.len(), 11);
    }
}
