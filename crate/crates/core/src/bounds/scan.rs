//! The closing polynomial inequality over a range of ℓ, and the closed-form
//! upper bounds on A(r, q).

use serde::Serialize;

use super::certificate::final_inequality_margin;
use crate::error::{Error, Result};
use crate::highreal::HighReal;
use crate::numtheory::sieve_primes;

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub ell_min: u64,
    pub ell_max: u64,
    pub holds: bool,
    pub first_failure: Option<u64>,
    /// Smallest rhs − lhs over the range and where it occurs.
    pub min_margin: f64,
    pub argmin: u64,
    /// ℓ values whose f64 margin was too close to zero and went through enclosures.
    pub certified_slow_path: usize,
}

fn margin_f64(ell: u64) -> f64 {
    let l = ell as f64;
    let m = l - 2.0;
    let lhs = 3.7 * l + l * l.ln() + l * l.ln().ln();
    let rhs = -1.39 + 0.58 * (0.25 * m * m - m - 3.0);
    rhs - lhs
}

/// Whether 3.7ℓ + ℓ ln ℓ + ℓ ln ln ℓ ≤ −1.39 + 0.58[¼(ℓ−2)² − (ℓ−2) − 3] for every
/// integer ℓ in `[ell_min, ell_max]`.
pub fn final_inequality_scan(ell_min: u64, ell_max: u64) -> Result<ScanReport> {
    if ell_min < 3 {
        return Err(Error::argument(format!("ℓ_min = {ell_min} < 3")));
    }
    if ell_max < ell_min {
        return Err(Error::argument(format!("empty range [{ell_min}, {ell_max}]")));
    }
    let mut report = ScanReport {
        ell_min,
        ell_max,
        holds: true,
        first_failure: None,
        min_margin: f64::INFINITY,
        argmin: ell_min,
        certified_slow_path: 0,
    };
    for ell in ell_min..=ell_max {
        let m = margin_f64(ell);
        let scale = 1e-9 * (ell as f64).powi(2);
        let ok = if m.abs() > scale {
            m >= 0.0
        } else {
            report.certified_slow_path += 1;
            let h = final_inequality_margin(ell).expect("ℓ ≥ 3");
            *h.lower() >= 0
        };
        if m < report.min_margin {
            report.min_margin = m;
            report.argmin = ell;
        }
        if !ok && report.holds {
            report.holds = false;
            report.first_failure = Some(ell);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ARqBounds {
    /// π(q)/(1 − ln(2/√π)).
    pub minkowski: HighReal,
    /// q/ln r.
    pub plotkin_derived: HighReal,
    /// 1/(1 − ln(2/√π)) ≈ 1.1373, the constant in the bound for A(q, q).
    pub aqq: HighReal,
}

/// 1/(1 − ln(2/√π)).
pub fn aqq_constant() -> HighReal {
    let two_over_root_pi = HighReal::from_i64(2) / HighReal::pi().sqrt();
    (&HighReal::one() - &two_over_root_pi.ln()).recip()
}

pub fn a_rq_upper_bounds(r: u64, q: u64) -> Result<ARqBounds> {
    if r < 2 || r > q {
        return Err(Error::argument(format!("need 2 ≤ r ≤ q, got r = {r}, q = {q}")));
    }
    let aqq = aqq_constant();
    let pi_q = sieve_primes(q)?.pi(q)?;
    Ok(ARqBounds {
        minkowski: &HighReal::from_u64(pi_q) * &aqq,
        plotkin_derived: HighReal::from_u64(q) / HighReal::from_u64(r).ln(),
        aqq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_from_125() {
        let rep = final_inequality_scan(125, 20_000).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.argmin, 125);
        assert!(rep.min_margin > 0.0);
    }

    #[test]
    fn scan_fails_at_10() {
        let rep = final_inequality_scan(10, 10).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.first_failure, Some(10));
        assert!(final_inequality_scan(2, 10).is_err());
    }

    #[test]
    fn f64_agrees_with_enclosure() {
        for ell in [3u64, 10, 100, 124, 125, 126, 1000, 99_999] {
            let h = final_inequality_margin(ell).unwrap();
            assert!((h.to_f64() - margin_f64(ell)).abs() < 1e-9 * (ell as f64).powi(2));
        }
    }

    #[test]
    fn aqq_value() {
        assert!((aqq_constant().to_f64() - 1.1373).abs() < 1e-4);
        let b = a_rq_upper_bounds(2, 1000).unwrap();
        assert!((b.plotkin_derived.to_f64() - 1000.0 / 2f64.ln()).abs() < 1e-9);
        assert!((b.minkowski.to_f64() - 168.0 * b.aqq.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn q_over_log_r_wins_for_large_q() {
        let q = 10_000_000u64;
        let r = (q as f64).powf(0.99).floor() as u64;
        let b = a_rq_upper_bounds(r, q).unwrap();
        assert!(b.plotkin_derived.upper() < b.minkowski.lower());
    }
}
