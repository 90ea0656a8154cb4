//! Search over (r, ℓ, k) for the largest certified R_NFC(δ, q).
//!
//! Candidates are ranked in f64 from exact counts and a θ prefix table; only the
//! winner is re-evaluated with enclosures.

use rayon::prelude::*;
use serde::Serialize;

use super::conditions::{check_conditions_with, condition_table, kmax_condition2, nq_count, ParamWitness};
use super::rates::{gv_bound, nfc_bound, Delta};
use super::schedule::{sixth_root_floor, theorem2_schedule};
use crate::error::{Error, Result};
use crate::highreal::HighReal;
use crate::numtheory::{PrimeTable, SIEVE_CAPACITY};

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub witness: ParamWitness,
    pub nfc: HighReal,
    pub gv: HighReal,
    /// R_NFC > R_GV with certified enclosures.
    pub beats_gv: bool,
    pub candidates: usize,
}

/// ℓ range searched at `q`: [3, max(2⌊q^{1/6}⌋, 3)].
pub fn ell_range(q: u64) -> (u64, u64) {
    (3, (2 * sixth_root_floor(q)).max(3))
}

/// i-th element (1-based) of the base-2 van der Corput sequence.
fn van_der_corput(mut i: u64) -> f64 {
    let mut x = 0.0;
    let mut f = 0.5;
    while i > 0 {
        if i & 1 == 1 {
            x += f;
        }
        i >>= 1;
        f *= 0.5;
    }
    x
}

/// r = ⌈2(q/2)^t⌉ for the first `budget` van der Corput t, plus r = q and the
/// Theorem-2 schedule's r. Growing `budget` only adds points.
pub fn r_grid(q: u64, budget: usize) -> Vec<u64> {
    let mut rs: Vec<u64> = (1..=budget as u64)
        .map(|i| {
            let t = van_der_corput(i);
            let v = (2.0 * (q as f64 / 2.0).powf(t)).ceil();
            (v as u64).clamp(2, q)
        })
        .collect();
    rs.push(q);
    if let Ok(s) = theorem2_schedule(q) {
        if (2..=q).contains(&s.r) {
            rs.push(s.r);
        }
    }
    rs.sort_unstable();
    rs.dedup();
    rs
}

#[derive(Clone, Copy)]
struct Candidate {
    score: f64,
    r: u64,
    ell: u64,
    k: u64,
}

fn better(a: Candidate, b: Candidate) -> Candidate {
    match a.score.partial_cmp(&b.score) {
        Some(std::cmp::Ordering::Greater) => a,
        Some(std::cmp::Ordering::Less) => b,
        _ if (a.r, a.ell) <= (b.r, b.ell) => a,
        _ => b,
    }
}

/// [`search_params`] with the sieve capped at `sieve_limit`.
pub fn search_params_limited(q: u64, delta: &Delta, budget: usize, sieve_limit: u64) -> Result<SearchResult> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q} < 2")));
    }
    let (_, hi) = ell_range(q);
    let table = condition_table(q, hi, sieve_limit)?;
    search_params_with(&table, q, delta, budget)
}

/// Maximizes R_NFC(δ, q) over the r grid, ℓ ∈ [3, 2⌊q^{1/6}⌋] and, for each (r, ℓ),
/// the largest k allowed by conditions 2 and 3.
pub fn search_params(q: u64, delta: &Delta, budget: usize) -> Result<SearchResult> {
    search_params_limited(q, delta, budget, SIEVE_CAPACITY)
}

/// [`search_params`] on a table that covers ⌊√q⌋ and p_ℓ for the whole ℓ range.
pub fn search_params_with(
    table: &PrimeTable,
    q: u64,
    delta: &Delta,
    budget: usize,
) -> Result<SearchResult> {
    let (lo, hi) = ell_range(q);
    let primes = table.primes();
    if primes.len() < hi as usize {
        return Err(Error::capacity(format!("table lacks p_{hi}")));
    }
    // ln D(ℓ) = ln 4 + θ(p_ℓ), in f64 for ranking
    let mut ln_d = Vec::with_capacity(hi as usize + 1);
    ln_d.push(4f64.ln());
    for &p in &primes[..hi as usize] {
        let last = *ln_d.last().expect("nonempty");
        ln_d.push(last + (p as f64).ln());
    }
    let ln_q = (q as f64).ln();
    let one_minus = 1.0 - delta.to_f64();
    let rs = r_grid(q, budget);

    let per_r: Vec<(Option<Candidate>, usize)> = rs
        .par_iter()
        .map(|&r| {
            let mut best: Option<Candidate> = None;
            let mut seen = 0;
            let head = one_minus * (r as f64).ln() / ln_q;
            for ell in lo..=hi {
                let Some(k2) = kmax_condition2(ell) else { continue };
                let p_ell = primes[ell as usize - 1] as u64;
                let nq = nq_count(table, r, q, p_ell).unwrap_or(0);
                let k = k2.min(nq / 2);
                if k == 0 {
                    continue;
                }
                seen += 1;
                let c = Candidate {
                    score: head - ln_d[ell as usize] / (2.0 * k as f64 * ln_q),
                    r,
                    ell,
                    k,
                };
                best = Some(best.map_or(c, |b| better(b, c)));
            }
            (best, seen)
        })
        .collect();
    let candidates = per_r.iter().map(|x| x.1).sum();
    let best = per_r
        .into_iter()
        .filter_map(|x| x.0)
        .reduce(better)
        .ok_or_else(|| {
            Error::NoWitness(format!(
                "GV not beaten at this q: no (r, ℓ, k) satisfies conditions 1–3 at q = {q}"
            ))
        })?;

    let witness = check_conditions_with(table, q, best.r, best.ell, best.k)?;
    let nfc = nfc_bound(q, delta, &witness)?;
    let gv = gv_bound(q, delta)?;
    let beats_gv = nfc.cmp_certified(&gv) == crate::Certified::Greater;
    Ok(SearchResult {
        witness,
        nfc,
        gv,
        beats_gv,
        candidates,
    })
}
