//! Checked-in reference data: count tables, recurrence coefficients, and
//! per-class polynomial factor tables.
//!
//! Everything ships inside the binary via `include_str!`; setting
//! `CENSUS_DATA_DIR` redirects every lookup to files on disk instead,
//! which is how the verification suite is pointed at deliberately
//! corrupted copies in tests.
//!
//! Formats are deliberately dumb: count series are two-column CSV with an
//! `n,h` header; polynomials are a single line of ascending-degree integer
//! coefficients; factor tables have one class per line, `label` followed
//! by the factor file stems whose product gives the class polynomial.

use std::env;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::CoreError;
use crate::poly::Poly;
use crate::transfer::hamiltonian_counts;

/// Environment variable overriding the built-in data directory.
pub const DATA_DIR_ENV: &str = "CENSUS_DATA_DIR";

macro_rules! builtin_files {
    ($($name:literal),* $(,)?) => {
        fn builtin(name: &str) -> Option<&'static str> {
            match name {
                $($name => Some(include_str!(concat!("../data/", $name))),)*
                _ => None,
            }
        }
    };
}

builtin_files!(
    "h3.csv",
    "h4.csv",
    "h3_even.csv",
    "h3_odd.csv",
    "h3_alpha.csv",
    "h3_beta.csv",
    "h3_gamma.block",
    "p_k3.coeffs",
    "q_k4.coeffs",
    "p1.coeffs",
    "p2.coeffs",
    "p3.coeffs",
    "p4.coeffs",
    "p5.coeffs",
    "p6.coeffs",
    "p7.coeffs",
    "p8.coeffs",
    "q1.coeffs",
    "q2.coeffs",
    "q3.coeffs",
    "q4.coeffs",
    "q5.coeffs",
    "q6.coeffs",
    "q7.coeffs",
    "q8.coeffs",
    "q9.coeffs",
    "q10.coeffs",
    "q11.coeffs",
    "q12.coeffs",
    "q13.coeffs",
    "table3.txt",
    "table4.txt",
);

fn data_text(name: &str) -> Result<String, CoreError> {
    if let Ok(dir) = env::var(DATA_DIR_ENV) {
        return std::fs::read_to_string(Path::new(&dir).join(name)).map_err(|e| {
            CoreError::GoldenData {
                name: name.to_string(),
                problem: format!("cannot read from {dir}: {e}"),
            }
        });
    }
    builtin(name).map(str::to_string).ok_or_else(|| CoreError::GoldenData {
        name: name.to_string(),
        problem: "no such built-in data file".to_string(),
    })
}

fn bad(name: &str, problem: String) -> CoreError {
    CoreError::GoldenData { name: name.to_string(), problem }
}

/// Parses a two-column `n,value` CSV (header line required).
fn parse_series(name: &str, text: &str) -> Result<Vec<(usize, BigInt)>, CoreError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == "n,h" => {}
        other => return Err(bad(name, format!("expected 'n,h' header, got {other:?}"))),
    }
    let mut out = Vec::new();
    for line in lines {
        let mut parts = line.trim().split(',');
        let (n, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(v), None) => (n, v),
            _ => return Err(bad(name, format!("malformed row {line:?}"))),
        };
        let n: usize = n.parse().map_err(|e| bad(name, format!("bad index in {line:?}: {e}")))?;
        let v: BigInt = v.parse().map_err(|e| bad(name, format!("bad value in {line:?}: {e}")))?;
        if let Some(&(prev, _)) = out.last() {
            if n != prev + 1 {
                return Err(bad(name, format!("index jump from {prev} to {n}")));
            }
        }
        out.push((n, v));
    }
    if out.is_empty() {
        return Err(bad(name, "no data rows".to_string()));
    }
    Ok(out)
}

fn series_file(name: &str) -> Result<Vec<(usize, BigInt)>, CoreError> {
    parse_series(name, &data_text(name)?)
}

fn poly_file(name: &str) -> Result<Poly, CoreError> {
    let text = data_text(name)?;
    Poly::parse_int_line(text.trim()).map_err(|e| bad(name, e.to_string()))
}

/// Reference Hamiltonian-cycle counts for G(n,k), `k ∈ {3,4}`, starting
/// at n = 1.
pub fn h_series(k: usize) -> Result<Vec<(usize, BigInt)>, CoreError> {
    match k {
        3 => series_file("h3.csv"),
        4 => series_file("h4.csv"),
        _ => Err(CoreError::UnsupportedK(k, "reference counts cover k = 3 and 4")),
    }
}

/// Reference even/odd split of the k = 3 counts (cycles using an even or
/// odd number of spokes).
pub fn parity_series() -> Result<(Vec<(usize, BigInt)>, Vec<(usize, BigInt)>), CoreError> {
    Ok((series_file("h3_even.csv")?, series_file("h3_odd.csv")?))
}

/// Initial values of the three summands in the k = 3 decomposition: the
/// two recurrence-driven parts and the period-12 block of the third.
pub fn decomposition_parts()
-> Result<(Vec<(usize, BigInt)>, Vec<(usize, BigInt)>, Vec<BigInt>), CoreError> {
    let alpha = series_file("h3_alpha.csv")?;
    let beta = series_file("h3_beta.csv")?;
    let name = "h3_gamma.block";
    let text = data_text(name)?;
    let gamma: Vec<BigInt> = text
        .trim()
        .split(',')
        .map(|t| t.trim().parse().map_err(|e| bad(name, format!("bad entry {t:?}: {e}"))))
        .collect::<Result<_, _>>()?;
    if gamma.len() != 12 {
        return Err(bad(name, format!("expected 12 entries, got {}", gamma.len())));
    }
    Ok((alpha, beta, gamma))
}

/// The full census recurrence polynomial: degree 38 for k = 3, degree 162
/// for k = 4.
pub fn census_poly(k: usize) -> Result<Poly, CoreError> {
    match k {
        3 => poly_file("p_k3.coeffs"),
        4 => poly_file("q_k4.coeffs"),
        _ => Err(CoreError::UnsupportedK(k, "recurrence data covers k = 3 and 4")),
    }
}

/// One irreducible-ish factor from the reference factor set: prefix 'p'
/// (k = 3, 1..=8) or 'q' (k = 4, 1..=13).
pub fn factor_poly(prefix: char, i: usize) -> Result<Poly, CoreError> {
    poly_file(&format!("{prefix}{i}.coeffs"))
}

/// A row of the per-class polynomial table.
#[derive(Debug, Clone)]
pub struct ClassRow {
    /// Size label as written in the table ("1", "1A", "1B", "2", …).
    pub label: String,
    /// Factor file stems; empty means the class polynomial is 1.
    pub factors: Vec<String>,
}

/// Component-class polynomial table for σ_k as factor names.
pub fn class_table(k: usize) -> Result<Vec<ClassRow>, CoreError> {
    let name = match k {
        3 => "table3.txt",
        4 => "table4.txt",
        _ => return Err(CoreError::UnsupportedK(k, "class tables cover k = 3 and 4")),
    };
    let text = data_text(name)?;
    let mut rows = Vec::new();
    for line in text.lines() {
        let mut parts = line.split_whitespace().map(str::to_string);
        let label = match parts.next() {
            Some(l) => l,
            None => continue,
        };
        rows.push(ClassRow { label, factors: parts.collect() });
    }
    if rows.is_empty() {
        return Err(bad(name, "empty table".to_string()));
    }
    Ok(rows)
}

/// Class table with factor products multiplied out.
pub fn class_products(k: usize) -> Result<Vec<(String, Poly)>, CoreError> {
    class_table(k)?
        .into_iter()
        .map(|row| {
            let mut p = Poly::one();
            for f in &row.factors {
                p = p.mul(&poly_file(&format!("{f}.coeffs"))?);
            }
            Ok((row.label, p))
        })
        .collect()
}

/// Hamiltonian-cycle counts for 1 ≤ n ≤ n_max as one vector (`[i]` holds
/// the count for n = i+1): reference values below the transfer threshold
/// n₀ = 3k, pipeline values from there on.
pub fn full_h_series(k: usize, n_max: usize, threads: usize) -> Result<Vec<BigInt>, CoreError> {
    let golden = h_series(k)?;
    let n0 = 3 * k;
    let mut out: Vec<BigInt> = Vec::with_capacity(n_max);
    for &(n, ref v) in golden.iter().take_while(|&&(n, _)| n < n0) {
        if n as usize != out.len() + 1 {
            return Err(bad("h-series", format!("reference data gap before n = {n}")));
        }
        out.push(v.clone());
    }
    if out.len() + 1 < n0 {
        return Err(bad(
            "h-series",
            format!("reference prefix ends at n = {}, need n₀ − 1 = {}", out.len(), n0 - 1),
        ));
    }
    if n_max < n0 {
        out.truncate(n_max);
        return Ok(out);
    }
    let series = hamiltonian_counts(k, n_max, threads)?;
    for n in n0..=n_max {
        out.push(series.value(n).expect("computed range covers n0..=n_max").clone());
    }
    Ok(out)
}
