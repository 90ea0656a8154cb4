//! Finite-q parameter schedules: ε_q, r = ⌈(1−ε_q)²q⌉, ℓ = ⌊q^{1/6}⌋ and
//! k = ⌊¼(ℓ−2)² − (ℓ−2)⌋ − 2.

use std::sync::OnceLock;

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::highreal::HighReal;

/// Which schedule produced a set of parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Schedule {
    /// ε_q = ln q · ln ln q / (C₀ q^{1/6}) with the caller's C₀ > 1.
    Theorem1 { c0: f64 },
    /// ε_q = (ln q)^{−1/3}.
    Theorem2,
    Custom,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScheduleValues {
    pub epsilon: HighReal,
    pub r: u64,
    pub ell: u64,
    /// Can be zero or negative for small ℓ.
    pub k: i64,
    /// ε_q certified inside (0, 1).
    pub valid: bool,
}

/// Q = ⌈e²⁹⌉.
pub fn threshold_q() -> u64 {
    static Q: OnceLock<u64> = OnceLock::new();
    *Q.get_or_init(|| {
        HighReal::from_i64(29)
            .exp()
            .ceil()
            .and_then(|c| c.to_u64())
            .expect("e^29 enclosure pins its ceiling")
    })
}

/// ⌊q^{1/6}⌋, exact.
pub fn sixth_root_floor(q: u64) -> u64 {
    Integer::from(q).root(6).to_u64().unwrap_or(0)
}

/// ⌊¼(ℓ−2)² − (ℓ−2)⌋ − 2.
pub fn k_of_ell(ell: u64) -> i64 {
    let m = ell as i128 - 2;
    ((m * m - 4 * m).div_euclid(4) - 2) as i64
}

fn from_epsilon(q: u64, epsilon: HighReal) -> Result<ScheduleValues> {
    let one_minus = &HighReal::one() - &epsilon;
    let rq = &one_minus.square() * &HighReal::from_u64(q);
    let r = rq
        .ceil()
        .ok_or_else(|| Error::Indeterminate(format!("⌈(1−ε)²q⌉ at q = {q}: enclosure {rq}")))?
        .to_u64()
        .ok_or_else(|| Error::capacity("r does not fit in 64 bits"))?;
    let valid = epsilon.is_positive() && epsilon.cmp_certified(&HighReal::one()) == crate::Certified::Less;
    let ell = sixth_root_floor(q);
    Ok(ScheduleValues {
        epsilon,
        r,
        ell,
        k: k_of_ell(ell),
        valid,
    })
}

/// ε_q = (ln q)^{−1/3}. The asymptotic guarantee needs q > e²⁹; smaller q is evaluated anyway.
pub fn theorem2_schedule(q: u64) -> Result<ScheduleValues> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q} < 2")));
    }
    let eps = HighReal::from_u64(q).ln().cbrt().recip();
    from_epsilon(q, eps)
}

/// ε_q = ln q · ln ln q / (C₀ q^{1/6}), for q ≥ 27 and C₀ > 1.
pub fn theorem1_schedule(q: u64, c0: &HighReal) -> Result<ScheduleValues> {
    if q < 27 {
        return Err(Error::domain(format!("theorem-1 schedule needs q ≥ 27, got {q}")));
    }
    if c0.cmp_certified(&HighReal::one()) != crate::Certified::Greater {
        return Err(Error::argument(format!("C₀ must exceed 1, got {c0}")));
    }
    let ln_q = HighReal::from_u64(q).ln();
    let sixth = HighReal::from_u64(q).powf(&HighReal::ratio(1, 6));
    let eps = &(&ln_q * &ln_q.ln()) / &(c0 * &sixth);
    from_epsilon(q, eps)
}
