//! The three parameter conditions of the number-field-code bound, with condition 3
//! counted exactly by sieving.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::highreal::HighReal;
use crate::numtheory::{log_primorial_d, sieve_primes, PrimeTable, SIEVE_CAPACITY};

/// (r, ℓ, k) that satisfies conditions 1–3 at `q`, with ln D and the exact count N_q.
#[derive(Clone, Debug, Serialize)]
pub struct ParamWitness {
    q: u64,
    r: u64,
    ell: u64,
    k: u64,
    p_ell: u64,
    d_log: HighReal,
    nq_count: u64,
}

impl ParamWitness {
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn r(&self) -> u64 {
        self.r
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn p_ell(&self) -> u64 {
        self.p_ell
    }
    /// ln D for D = 4·p₁⋯p_ℓ.
    pub fn d_log(&self) -> &HighReal {
        &self.d_log
    }
    /// #{p prime : r ≤ p² ≤ q, p > p_ℓ, p ≡ 3 (mod 4)}.
    pub fn nq_count(&self) -> u64 {
        self.nq_count
    }
}

/// ⌈√n⌉.
pub(crate) fn ceil_sqrt(n: u64) -> u64 {
    let s = n.isqrt();
    s + u64::from(s * s < n)
}

/// Sieve bound needed for (q, ℓ ≤ ell_max): ⌊√q⌋ and p_{ell_max}.
pub fn required_sieve_limit(q: u64, ell_max: u64) -> u64 {
    q.isqrt()
        .max(crate::numtheory::nth_prime_upper_bound(ell_max.max(1)))
        .max(2)
}

/// Sieves far enough to check conditions at `q` for every ℓ ≤ `ell_max`. The table
/// is refused, not approximated, when the bound passes `limit`.
pub fn condition_table(q: u64, ell_max: u64, limit: u64) -> Result<PrimeTable> {
    let need = required_sieve_limit(q, ell_max);
    let cap = limit.min(SIEVE_CAPACITY);
    if need > cap {
        return Err(Error::capacity(format!(
            "uncertifiable at q = {q}: needs primes up to {need}, sieve limit is {cap}"
        )));
    }
    sieve_primes(need)
}

/// 4(k + 2) ≤ (ℓ−2)² − 4(ℓ−2).
pub(crate) fn condition2_holds(ell: u64, k: u64) -> bool {
    let m = ell as i128 - 2;
    4 * (k as i128 + 2) <= m * m - 4 * m
}

/// Largest k allowed by condition 2, if any.
pub fn kmax_condition2(ell: u64) -> Option<u64> {
    let m = ell as i128 - 2;
    let v = (m * m - 4 * m).div_euclid(4) - 2;
    (v >= 1).then_some(v as u64)
}

/// N_q = #{p : r ≤ p² ≤ q, p > p_ℓ, p ≡ 3 (mod 4)}.
pub fn nq_count(table: &PrimeTable, r: u64, q: u64, p_ell: u64) -> Result<u64> {
    let lo = ceil_sqrt(r).max(p_ell + 1);
    table.count_3mod4_between(lo, q.isqrt())
}

/// Checks conditions 1–3 after sieving to what (q, ℓ) needs.
pub fn check_conditions(q: u64, r: u64, ell: u64, k: u64) -> Result<ParamWitness> {
    if ell == 0 || k == 0 {
        return Err(Error::argument("ℓ and k must be ≥ 1"));
    }
    if r < 2 || r > q {
        return check_conditions_with(&sieve_primes(2)?, q, r, ell, k);
    }
    let table = condition_table(q, ell, SIEVE_CAPACITY)?;
    check_conditions_with(&table, q, r, ell, k)
}

/// [`check_conditions`] against a table that covers ⌊√q⌋ and p_ℓ.
pub fn check_conditions_with(
    table: &PrimeTable,
    q: u64,
    r: u64,
    ell: u64,
    k: u64,
) -> Result<ParamWitness> {
    if ell == 0 || k == 0 {
        return Err(Error::argument("ℓ and k must be ≥ 1"));
    }
    if r < 2 || r > q {
        return Err(Error::Condition {
            number: 1,
            detail: format!("need 2 ≤ r ≤ q, got r = {r}, q = {q}"),
        });
    }
    if !condition2_holds(ell, k) {
        let m = ell as f64 - 2.0;
        return Err(Error::Condition {
            number: 2,
            detail: format!(
                "k + 2 = {} exceeds ¼(ℓ−2)² − (ℓ−2) = {} at ℓ = {ell}",
                k + 2,
                m * m / 4.0 - m
            ),
        });
    }
    if table.limit() < q.isqrt() {
        return Err(Error::capacity(format!(
            "uncertifiable at q = {q}: table stops at {}",
            table.limit()
        )));
    }
    let p_ell = table
        .nth(ell as usize)
        .ok_or_else(|| Error::capacity(format!("p_{ell} beyond sieve limit {}", table.limit())))?;
    let nq = nq_count(table, r, q, p_ell)?;
    if nq < 2 * k {
        return Err(Error::Condition {
            number: 3,
            detail: format!("N_q = {nq} < 2k = {}", 2 * k),
        });
    }
    Ok(ParamWitness {
        q,
        r,
        ell,
        k,
        p_ell,
        d_log: log_primorial_d(table, ell)?,
        nq_count: nq,
    })
}
