//! Genus theory, the inert set S_c, and the Golod–Shafarevich test for an infinite
//! S_c-Hilbert 2-class field tower.

use rug::Integer;
use serde::Serialize;

use super::field::{PrimeIdealRecord, QuadraticField, SplitType};
use crate::error::{Error, Result};
use crate::highreal::HighReal;
use crate::numtheory::{sieve_primes, PrimeTable};

/// Lower bound ω(Δ) − 2 on d₂(Cl_K), clamped at 0.
pub fn genus_two_rank_lower(k: &QuadraticField) -> u32 {
    (k.prime_divisors().len() as u32).saturating_sub(2)
}

/// Inert principal primes pO_K with r ≤ p² ≤ q, p > p_ℓ, p ≡ 3 (mod 4) and (Δ/p) = −1.
pub fn candidate_sc(k: &QuadraticField, r: u64, q: u64, ell: u64) -> Result<Vec<PrimeIdealRecord>> {
    if r < 2 || r > q {
        return Err(Error::argument(format!("need 2 ≤ r ≤ q, got r = {r}, q = {q}")));
    }
    let table = sieve_primes(q.isqrt().max(2))?;
    let p_ell = crate::numtheory::nth_prime(ell.max(1))?;
    Ok(candidate_sc_in(k, &table, r, q, p_ell))
}

/// [`candidate_sc`] over a table that covers ⌊√q⌋, with p_ℓ given.
pub fn candidate_sc_in(
    k: &QuadraticField,
    table: &PrimeTable,
    r: u64,
    q: u64,
    p_ell: u64,
) -> Vec<PrimeIdealRecord> {
    let lo = r.isqrt() + u64::from(r.isqrt() * r.isqrt() < r);
    table
        .range(lo.max(p_ell + 1), q.isqrt())
        .iter()
        .map(|&p| p as u64)
        .filter(|&p| p % 4 == 3)
        .filter(|&p| {
            // (Δ/p) for p ∤ Δ from Δ mod p
            let m = Integer::from(k.disc().mod_u(p as u32));
            crate::numtheory::kronecker(&m, &Integer::from(p)) == -1
        })
        .map(|p| PrimeIdealRecord {
            p,
            split_type: SplitType::Inert,
            norm: p * p,
            conjugate_index: 0,
            residue_root: None,
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerCertificate {
    pub disc: String,
    pub sc_size: u64,
    pub infinite_places: u32,
    pub d2_lower: u32,
    /// 2 + 2√(|S_c| + |S_∞| + 1), enclosed.
    pub threshold: HighReal,
    pub passes: bool,
}

/// Golod–Shafarevich: the S_c-tower is infinite when d₂ ≥ 2 + 2√(|S_c| + |S_∞| + 1).
///
/// Decided exactly as d₂ ≥ 2 and (d₂ − 2)² ≥ 4(|S_c| + |S_∞| + 1); the threshold
/// enclosure is reported alongside.
pub fn golod_shafarevich_check(k: &QuadraticField, d2: u32, sc_size: u64) -> TowerCertificate {
    let s_inf = k.infinite_places();
    let inner = sc_size + s_inf as u64 + 1;
    let threshold = &HighReal::from_i64(2) + &(HighReal::from_i64(2) * HighReal::from_u64(inner).sqrt());
    let excess = d2 as u128;
    let passes = excess >= 2 && (excess - 2) * (excess - 2) >= 4 * inner as u128;
    TowerCertificate {
        disc: k.disc().to_string(),
        sc_size,
        infinite_places: s_inf,
        d2_lower: d2,
        threshold,
        passes,
    }
}

/// Theorem-4 field choice between Δ = −D and Δ = D (D = 4·p₁⋯p_ℓ): whichever has
/// at least `k` inert primes in the S_c window, preferring −D. Returns the field and
/// the first `k` such primes.
pub fn theorem4_field(
    table: &PrimeTable,
    ell: u64,
    r: u64,
    q: u64,
    k: u64,
) -> Result<(QuadraticField, Vec<PrimeIdealRecord>)> {
    let p_ell = table
        .nth(ell as usize)
        .ok_or_else(|| Error::capacity(format!("p_{ell} beyond sieve limit")))?;
    for negative in [true, false] {
        let field = QuadraticField::primorial(ell, negative)?;
        let mut sc = candidate_sc_in(&field, table, r, q, p_ell);
        if sc.len() as u64 >= k {
            sc.truncate(k as usize);
            return Ok((field, sc));
        }
    }
    Err(Error::Condition {
        number: 3,
        detail: format!("neither ±D has {k} inert primes with r ≤ p² ≤ q, p > p_ℓ"),
    })
}
