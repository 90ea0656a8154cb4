//! Punctured Lenstra codes: residues of the algebraic integers in τ + U_G at the
//! prime ideals of norm in [r, q].

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::ops::Pow;
use rug::Integer;
use serde::Serialize;

use super::embedding::{enumerate_omega, find_tau, make_embedding, BoxSpec, LatticeEmbedding};
use crate::error::{Error, Result};
use crate::quadfield::{prime_ideals_in_norm_range, PrimeIdealRecord, QuadraticField, SplitType};

/// Pairwise verification is refused above this many codewords.
pub const VERIFY_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct LenstraCode {
    pub field: QuadraticField,
    pub q: u64,
    pub r: u64,
    pub g: u32,
    pub tau: (f64, f64),
    pub ideals: Vec<PrimeIdealRecord>,
    /// Ω_G as coordinates (u, v) of u + vω.
    pub omega_members: Vec<(i64, i64)>,
    pub codewords: Vec<Vec<u32>>,
}

impl LenstraCode {
    pub fn n(&self) -> usize {
        self.ideals.len()
    }

    pub fn disc(&self) -> i64 {
        self.field.disc_i64().unwrap_or(0)
    }

    /// ⌈r^G/√|Δ|⌉.
    pub fn m_bound(&self) -> Result<u64> {
        LatticeEmbedding::target_count(self.r, self.g, self.disc())
    }

    /// n + 1 − G, clamped at 0.
    pub fn d_bound(&self) -> usize {
        (self.n() + 1).saturating_sub(self.g as usize)
    }
}

/// ψ at one coordinate: the residue of u + vω modulo P, injected into Z_q.
pub fn residue_symbol(a: (i64, i64), p: &PrimeIdealRecord, q: u64) -> Result<u32> {
    if p.norm > q {
        return Err(Error::argument(format!(
            "N(P) = {} > q = {q}; no injection O_K/P → Z_q",
            p.norm
        )));
    }
    let m = p.p as i128;
    let (u, v) = (a.0 as i128, a.1 as i128);
    let value = match p.split_type {
        SplitType::Inert => u.rem_euclid(m) * m + v.rem_euclid(m),
        SplitType::Split | SplitType::Ramified => {
            let c = p
                .residue_root
                .ok_or_else(|| Error::argument(format!("prime above {} lacks a residue root", p.p)))?
                as i128;
            (u + v * c).rem_euclid(m)
        }
    };
    Ok(value as u32)
}

fn codeword(a: (i64, i64), ideals: &[PrimeIdealRecord], q: u64) -> Result<Vec<u32>> {
    ideals.iter().map(|p| residue_symbol(a, p, q)).collect()
}

fn precondition(condition: &'static str, detail: String) -> Error {
    Error::Precondition { condition, detail }
}

/// Checks the construction hypotheses one by one and returns the ideal list.
fn check_inputs(k: &QuadraticField, r: u64, q: u64, g: u32) -> Result<Vec<PrimeIdealRecord>> {
    if r < 2 {
        return Err(precondition("r ≥ 2", format!("r = {r}")));
    }
    if r > q {
        return Err(precondition("r ≤ q", format!("r = {r} > q = {q}")));
    }
    if q > u32::MAX as u64 {
        return Err(Error::capacity("q must fit in 32 bits"));
    }
    if g == 0 {
        return Err(precondition("G ≥ 1", "G = 0".into()));
    }
    let ideals = prime_ideals_in_norm_range(k, r, q)?;
    let n = ideals.len();
    if n == 0 {
        return Err(precondition("n ≥ 1", format!("no prime ideal of norm in [{r}, {q}]")));
    }
    if g as usize > n {
        return Err(precondition("G ≤ n", format!("G = {g} > n = {n}")));
    }
    let abs_d = Integer::from(k.disc().clone().abs());
    if Integer::from(r).pow(2 * g) < abs_d {
        return Err(precondition(
            "r^G ≥ √|Δ|",
            format!("{r}^{g} < √{abs_d}"),
        ));
    }
    Ok(ideals)
}

/// C(P₁, …, P_n; G) for the prime ideals with norm in [r, q].
pub fn build_code(k: &QuadraticField, r: u64, q: u64, g: u32, seed: u64) -> Result<LenstraCode> {
    let ideals = check_inputs(k, r, q, g)?;
    let e = make_embedding(k)?;
    let spec = find_tau(&e, r, g, seed)?;
    assemble(k, &e, &spec, q, ideals)
}

/// The code obtained with a given shift τ, as recorded in an export header.
pub fn build_code_with_tau(
    k: &QuadraticField,
    r: u64,
    q: u64,
    g: u32,
    tau: (f64, f64),
) -> Result<LenstraCode> {
    let ideals = check_inputs(k, r, q, g)?;
    let e = make_embedding(k)?;
    let rho = e.rho(r, g);
    let count = e.count_certified(tau, &rho)?;
    let spec = BoxSpec {
        r,
        g,
        rho,
        tau,
        target: LatticeEmbedding::target_count(r, g, e.disc())?,
        count,
    };
    assemble(k, &e, &spec, q, ideals)
}

fn assemble(
    k: &QuadraticField,
    e: &LatticeEmbedding,
    spec: &BoxSpec,
    q: u64,
    ideals: Vec<PrimeIdealRecord>,
) -> Result<LenstraCode> {
    let omega = enumerate_omega(e, spec)?;
    let codewords = omega
        .par_iter()
        .map(|&a| codeword(a, &ideals, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(LenstraCode {
        field: k.clone(),
        q,
        r: spec.r,
        g: spec.g,
        tau: spec.tau,
        ideals,
        omega_members: omega,
        codewords,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub n: usize,
    /// Distinct codewords.
    pub m: usize,
    /// Minimum distance over pairs of listed codewords (n when fewer than two).
    pub d: usize,
    pub m_bound: u64,
    pub d_bound: usize,
    /// Codewords are exactly ψ(Ω_G) and ψ is injective.
    pub injective: bool,
    pub matches_psi: bool,
    /// First pair (by index) closer than n + 1 − G.
    pub first_violation: Option<(usize, usize)>,
    pub ok: bool,
}

fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Minimum pairwise distance and the first pair (by index) below `bound`.
fn min_distance(words: &[Vec<u32>], bound: usize) -> (usize, Option<(usize, usize)>) {
    let n = words.first().map_or(0, Vec::len);
    let per_row: Vec<(usize, Option<usize>)> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut best = n;
            let mut first = None;
            for j in (i + 1)..words.len() {
                let d = hamming(&words[i], &words[j]);
                best = best.min(d);
                if d < bound && first.is_none() {
                    first = Some(j);
                }
            }
            (best, first)
        })
        .collect();
    let d = per_row.iter().map(|x| x.0).min().unwrap_or(n);
    let first = per_row
        .iter()
        .enumerate()
        .find_map(|(i, x)| x.1.map(|j| (i, j)));
    (d, first)
}

/// Exact (n, M, d) and the check against the guaranteed parameters.
pub fn verify_code(c: &LenstraCode) -> Result<CodeReport> {
    if c.codewords.len() > VERIFY_CAP {
        return Err(Error::capacity(format!(
            "{} codewords exceed the pairwise cap {VERIFY_CAP}; use sampled verification",
            c.codewords.len()
        )));
    }
    let n = c.n();
    let m_bound = c.m_bound()?;
    let d_bound = c.d_bound();
    let distinct: HashSet<&Vec<u32>> = c.codewords.iter().collect();
    let m = distinct.len();
    let (d, first_violation) = if c.codewords.len() < 2 {
        (n, None)
    } else {
        min_distance(&c.codewords, d_bound)
    };
    let matches_psi = c.codewords.len() == c.omega_members.len()
        && c
            .omega_members
            .par_iter()
            .zip(c.codewords.par_iter())
            .all(|(&a, w)| codeword(a, &c.ideals, c.q).is_ok_and(|x| x == *w));
    let injective = m == c.omega_members.len();
    let ok = m as u64 >= m_bound && d >= d_bound && injective && matches_psi;
    Ok(CodeReport {
        n,
        m,
        d,
        m_bound,
        d_bound,
        injective,
        matches_psi,
        first_violation,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormGapReport {
    pub pairs_checked: u64,
    pub violations: u64,
    pub first_violation: Option<(usize, usize)>,
}

impl NormGapReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// r^{ℓ(a,b)} ≤ ∏_{agreeing i} N(P_i) ≤ |N(a − b)| < r^G for one pair, exactly.
fn pair_chain_holds(c: &LenstraCode, i: usize, j: usize, r_pow_g: &Integer) -> bool {
    let (a, b) = (c.omega_members[i], c.omega_members[j]);
    let (du, dv) = (a.0 as i128 - b.0 as i128, a.1 as i128 - b.1 as i128);
    let norm = match c.field.norm_i128(du, dv) {
        Some(v) => Integer::from(v.unsigned_abs()),
        None => c.field.norm(&Integer::from(du), &Integer::from(dv)).abs(),
    };
    let mut agree = 0u32;
    let mut prod = Integer::from(1);
    for (k, p) in c.ideals.iter().enumerate() {
        if c.codewords[i][k] == c.codewords[j][k] {
            agree += 1;
            prod *= p.norm;
        }
    }
    let lhs = Integer::from(c.r).pow(agree);
    lhs <= prod && prod <= norm && norm < *r_pow_g
}

/// The exact norm chain for every pair of distinct members of Ω_G.
pub fn norm_gap_check(c: &LenstraCode) -> Result<NormGapReport> {
    let m = c.omega_members.len();
    if m > VERIFY_CAP {
        return Err(Error::capacity(format!(
            "{m} members exceed the pairwise cap {VERIFY_CAP}; use norm_gap_check_sampled"
        )));
    }
    let r_pow_g = Integer::from(c.r).pow(c.g);
    let rows: Vec<(u64, Option<usize>)> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut bad = 0u64;
            let mut first = None;
            for j in (i + 1)..m {
                if !pair_chain_holds(c, i, j, &r_pow_g) {
                    bad += 1;
                    first.get_or_insert(j);
                }
            }
            (bad, first)
        })
        .collect();
    Ok(NormGapReport {
        pairs_checked: (m as u64 * m.saturating_sub(1) as u64) / 2,
        violations: rows.iter().map(|x| x.0).sum(),
        first_violation: rows.iter().enumerate().find_map(|(i, x)| x.1.map(|j| (i, j))),
    })
}

/// The norm chain on `samples` random pairs drawn with `seed`.
pub fn norm_gap_check_sampled(c: &LenstraCode, samples: usize, seed: u64) -> NormGapReport {
    let m = c.omega_members.len();
    let r_pow_g = Integer::from(c.r).pow(c.g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NormGapReport {
        pairs_checked: 0,
        violations: 0,
        first_violation: None,
    };
    if m < 2 {
        return report;
    }
    for _ in 0..samples {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m - 1);
        let j = if j >= i { j + 1 } else { j };
        report.pairs_checked += 1;
        if !pair_chain_holds(c, i.min(j), i.max(j), &r_pow_g) {
            report.violations += 1;
            report.first_violation.get_or_insert((i.min(j), i.max(j)));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::{make_field_i64, splitting_type};

    #[test]
    fn residue_examples() {
        let k = make_field_i64(-4).unwrap();
        let three = &splitting_type(&k, 3).unwrap()[0];
        assert_eq!(residue_symbol((4, 5), three, 13).unwrap(), 5);
        assert_eq!(residue_symbol((0, 0), three, 13).unwrap(), 0);
        let thirteen = splitting_type(&k, 13).unwrap();
        assert_eq!(thirteen[0].residue_root, Some(5));
        assert_eq!(residue_symbol((2, 3), &thirteen[0], 13).unwrap(), 4);
        assert!(residue_symbol((1, 1), three, 8).is_err());
    }

    #[test]
    fn small_code_g1() {
        let k = make_field_i64(-4).unwrap();
        let c = build_code(&k, 9, 13, 1, 0).unwrap();
        assert_eq!(c.n(), 3);
        let rep = verify_code(&c).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert!(rep.m >= 5 && rep.d >= 3);
        assert!(norm_gap_check(&c).unwrap().holds());
    }

    #[test]
    fn small_code_g3() {
        let k = make_field_i64(-4).unwrap();
        let c = build_code(&k, 9, 13, 3, 0).unwrap();
        let rep = verify_code(&c).unwrap();
        assert!(rep.ok, "{rep:?}");
        assert!(rep.m >= 365);
        assert!(norm_gap_check_sampled(&c, 100, 7).holds());
    }

    #[test]
    fn preconditions_are_named() {
        let k = make_field_i64(-4).unwrap();
        let cond = |e: Error| match e {
            Error::Precondition { condition, .. } => condition,
            other => panic!("{other}"),
        };
        assert_eq!(cond(build_code(&k, 9, 13, 4, 0).unwrap_err()), "G ≤ n");
        assert_eq!(cond(build_code(&k, 14, 13, 1, 0).unwrap_err()), "r ≤ q");
        assert_eq!(cond(build_code(&k, 14, 16, 1, 0).unwrap_err()), "n ≥ 1");
        let k = make_field_i64(-19399380).unwrap();
        assert_eq!(cond(build_code(&k, 2, 50, 1, 0).unwrap_err()), "r^G ≥ √|Δ|");
    }

    #[test]
    fn mutation_is_detected() {
        let k = make_field_i64(-4).unwrap();
        let mut c = build_code(&k, 9, 13, 1, 0).unwrap();
        c.codewords[0][1] = (c.codewords[0][1] + 1) % 13;
        let rep = verify_code(&c).unwrap();
        assert!(!rep.ok);
        assert!(!rep.matches_psi);
    }

    #[test]
    fn single_codeword_distance_convention() {
        let k = make_field_i64(-4).unwrap();
        let mut c = build_code(&k, 9, 13, 1, 0).unwrap();
        c.codewords.truncate(1);
        c.omega_members.truncate(1);
        let rep = verify_code(&c).unwrap();
        assert_eq!(rep.d, c.n());
    }
}
