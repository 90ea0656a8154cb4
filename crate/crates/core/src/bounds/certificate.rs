//! Inequality certificates for a concrete q: every step of the Theorem-2 argument
//! evaluated with enclosures, integer steps exactly.

use rug::{Integer, Rational};
use serde::Serialize;

use super::conditions::{check_conditions_with, condition_table, nq_count, ParamWitness};
use super::rates::{gv_bound, nfc_bound, Delta};
use super::schedule::{theorem1_schedule, theorem2_schedule, threshold_q, Schedule};
use crate::error::{Error, Result};
use crate::highreal::HighReal;
use crate::numtheory::{log_integral, log_primorial_d, theta_from_table, PrimeTable, SIEVE_CAPACITY};
use crate::quadfield::{genus_two_rank_lower, golod_shafarevich_check, theorem4_field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Indeterminate,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Indeterminate => "indeterminate",
        })
    }
}

/// One inequality `lhs relation rhs`. `margin` is the signed slack, positive when
/// the inequality holds; its enclosure and width are kept beside the midpoint.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub relation: &'static str,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    pub margin_enclosure: Option<String>,
    pub width: Option<f64>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// `lhs < rhs` (strict) or `lhs ≤ rhs`.
    pub fn below(name: &str, lhs: &HighReal, rhs: &HighReal, strict: bool) -> Check {
        let margin = rhs - lhs;
        let status = if strict {
            if margin.is_positive() {
                CheckStatus::Pass
            } else if *margin.upper() <= 0 {
                CheckStatus::Fail
            } else {
                CheckStatus::Indeterminate
            }
        } else if *margin.lower() >= 0 {
            CheckStatus::Pass
        } else if margin.is_negative() {
            CheckStatus::Fail
        } else {
            CheckStatus::Indeterminate
        };
        Check {
            name: name.into(),
            relation: if strict { "<" } else { "≤" },
            lhs: Some(lhs.to_f64()),
            rhs: Some(rhs.to_f64()),
            margin: Some(margin.to_f64()),
            margin_enclosure: Some(margin.to_interval_string(25)),
            width: Some(margin.width()),
            status,
            detail: None,
        }
    }

    /// `lhs > rhs` (strict) or `lhs ≥ rhs`.
    pub fn above(name: &str, lhs: &HighReal, rhs: &HighReal, strict: bool) -> Check {
        let mut c = Check::below(name, rhs, lhs, strict);
        c.relation = if strict { ">" } else { "≥" };
        std::mem::swap(&mut c.lhs, &mut c.rhs);
        c
    }

    /// Exact rational comparison `lhs ≤ rhs` or `lhs ≥ rhs`.
    pub fn exact(name: &str, lhs: &Rational, relation: &'static str, rhs: &Rational) -> Check {
        let margin = match relation {
            "≤" | "<" => Rational::from(rhs - lhs),
            _ => Rational::from(lhs - rhs),
        };
        let holds = if relation.contains('<') || relation.contains('>') {
            margin > 0
        } else {
            margin >= 0
        };
        Check {
            name: name.into(),
            relation,
            lhs: Some(lhs.to_f64()),
            rhs: Some(rhs.to_f64()),
            margin: Some(margin.to_f64()),
            margin_enclosure: Some(margin.to_string()),
            width: Some(0.0),
            status: if holds { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: None,
        }
    }

    /// A step whose quantities are undefined at these parameters.
    pub fn undefined(name: &str, relation: &'static str, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            relation,
            lhs: None,
            rhs: None,
            margin: None,
            margin_enclosure: None,
            width: None,
            status: CheckStatus::Fail,
            detail: Some(detail.into()),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }
}

fn int(v: impl Into<Integer>) -> Rational {
    Rational::from(v.into())
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessSummary {
    pub r: u64,
    pub ell: u64,
    pub k: i64,
    pub p_ell: u64,
    pub nq: u64,
    /// Sign chosen for Δ = ±D, when some choice carries k inert primes.
    pub disc_sign: Option<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub q: u64,
    pub schedule: Schedule,
    pub epsilon: Option<HighReal>,
    pub witness: WitnessSummary,
    pub checks: Vec<Check>,
    pub overall: CheckStatus,
    pub warnings: Vec<String>,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn overall(checks: &[Check]) -> CheckStatus {
    if checks.iter().all(|c| c.status == CheckStatus::Pass) {
        CheckStatus::Pass
    } else if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else {
        CheckStatus::Indeterminate
    }
}

/// Certificate for the Theorem-2 schedule at `q`, sieving up to the full capacity.
pub fn certify_theorem2(q: u64) -> Result<Certificate> {
    certify(q, &Schedule::Theorem2, SIEVE_CAPACITY)
}

/// Certificate under any schedule. `Custom` carries no ε, so the first link of the
/// chain starts at √r.
pub fn certify(q: u64, schedule: &Schedule, sieve_limit: u64) -> Result<Certificate> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q} < 2")));
    }
    let (epsilon, r, ell, k) = match schedule {
        Schedule::Theorem2 => {
            let s = theorem2_schedule(q)?;
            (Some(s.epsilon), s.r, s.ell, s.k)
        }
        Schedule::Theorem1 { c0 } => {
            let s = theorem1_schedule(q, &HighReal::from_f64(*c0))?;
            (Some(s.epsilon), s.r, s.ell, s.k)
        }
        Schedule::Custom => {
            return Err(Error::argument("custom schedule needs explicit (r, ℓ, k); use certify_custom"))
        }
    };
    certify_values(q, schedule.clone(), epsilon, r, ell, k, sieve_limit)
}

/// Certificate for explicit (r, ℓ, k).
pub fn certify_custom(q: u64, r: u64, ell: u64, k: u64, sieve_limit: u64) -> Result<Certificate> {
    if q < 2 || ell == 0 {
        return Err(Error::argument(format!("need q ≥ 2 and ℓ ≥ 1, got q = {q}, ℓ = {ell}")));
    }
    certify_values(q, Schedule::Custom, None, r, ell, k as i64, sieve_limit)
}

fn certify_values(
    q: u64,
    schedule: Schedule,
    epsilon: Option<HighReal>,
    r: u64,
    ell: u64,
    k: i64,
    sieve_limit: u64,
) -> Result<Certificate> {
    let mut warnings = Vec::new();
    let big_q = threshold_q();
    if q < big_q {
        warnings.push(format!(
            "q = {q} is below Q = ⌈e^29⌉ = {big_q}; the schedule carries no guarantee here"
        ));
    }
    if let Some(eps) = &epsilon {
        if !(eps.is_positive() && eps.upper_f64() < 1.0) {
            warnings.push(format!("ε_q = {eps} is not inside (0, 1)"));
        }
    }
    let table = condition_table(q, ell, sieve_limit)?;
    let p_ell = table.nth(ell as usize).expect("table covers p_ℓ");

    let mut checks = Vec::new();
    let qh = HighReal::from_u64(q);
    let rh = HighReal::from_u64(r);
    let sqrt_q = qh.sqrt();
    let ellh = HighReal::from_u64(ell);
    let ln_ell = ellh.ln();

    // conditions 1 and 2, exactly
    checks.push(Check::exact("condition_1_r_at_least_2", &int(r), "≥", &int(2)));
    checks.push(Check::exact("condition_1_r_at_most_q", &int(r), "≤", &int(q)));
    checks.push(Check::exact("k_positive", &int(k), "≥", &int(1)));
    let m = Integer::from(ell) - 2u32;
    let quarter = Rational::from((Integer::from(&m * &m), 4)) - int(m.clone());
    checks.push(Check::exact("condition_2", &int(k + 2), "≤", &quarter));

    // √r ≥ (1−ε)√q > 0.6745√q > 24 x^{1/3} ln x^{1/3} ≥ 24 ℓ ln ℓ > p_ℓ, x = √q
    let c6745 = HighReal::ratio(6745, 10000);
    match &epsilon {
        Some(eps) => {
            let one_minus = &HighReal::one() - eps;
            checks.push(Check::above("a1_sqrt_r", &rh.sqrt(), &(&one_minus * &sqrt_q), false));
            checks.push(Check::above("a2_one_minus_eps", &one_minus, &c6745, true));
        }
        None => {
            checks.push(Check::above("a2_one_minus_eps", &(&rh / &qh).sqrt(), &c6745, true));
        }
    }
    let x13 = qh.powf(&HighReal::ratio(1, 6));
    let x13_term = &HighReal::from_i64(24) * &(&x13 * &x13.ln());
    checks.push(Check::above("a3_chain", &(&c6745 * &sqrt_q), &x13_term, true));
    let ell_term = &HighReal::from_i64(24) * &(&ellh * &ln_ell);
    let exact_power = (ell as u128).pow(6) == q as u128;
    checks.push(if exact_power {
        // x^{1/3} = ℓ exactly; the two sides coincide
        Check::exact("a4_floor", &int(ell), "≥", &int(ell))
            .with_detail("q is a perfect sixth power, x^{1/3} = ℓ")
    } else {
        Check::above("a4_floor", &x13_term, &ell_term, false)
    });
    checks.push(Check::above("a5_p_ell", &ell_term, &HighReal::from_u64(p_ell), true));

    // condition 3, counted exactly
    let nq = nq_count(&table, r.clamp(2, q), q, p_ell)?;
    checks.push(if k >= 1 {
        Check::exact("b_condition_3", &int(nq), "≥", &int(2 * k))
    } else {
        Check::undefined("b_condition_3", "≥", format!("k = {k} is not positive"))
    });

    let d_log = log_primorial_d(&table, ell)?;
    checks.push(if k >= 1 {
        let lhs = &d_log / &HighReal::from_i64(2 * k);
        Check::below("c_log_d_over_2k", &lhs, &HighReal::ratio(2901, 10000), false)
    } else {
        Check::undefined("c_log_d_over_2k", "≤", format!("k = {k} is not positive"))
    });

    let p = HighReal::from_u64(p_ell);
    let ln_p = p.ln();
    let theta = theta_from_table(&table, p_ell);
    let theta_rhs = &(&HighReal::one() + &(HighReal::from_i64(3) / &ln_p)) * &p;
    checks.push(Check::below("d_theta", &theta, &theta_rhs, true));
    checks.push(Check::below("e_p_over_log_p", &(&p / &ln_p), &ellh, true));
    checks.push(final_inequality_check(ell));

    // δ = 1/2 endpoints
    let half = Delta::half();
    let gv = gv_bound(q, &half)?;
    let ln_q = qh.ln();
    let gv_rhs = &HighReal::ratio(1, 2) - &(HighReal::ratio(6839, 10000) / &ln_q);
    checks.push(Check::below("gv_half", &gv, &gv_rhs, true));
    let half_log = &HighReal::ratio(1, 2) * &(&qh / &rh).ln();
    checks.push(Check::below("nfc_half", &half_log, &HighReal::ratio(3938, 10000), true));

    let witness: Option<ParamWitness> = (k >= 1)
        .then(|| check_conditions_with(&table, q, r, ell, k as u64).ok())
        .flatten();
    checks.push(match &witness {
        Some(w) => Check::above("g_nfc_beats_gv", &nfc_bound(q, &half, w)?, &gv, true),
        None => Check::undefined("g_nfc_beats_gv", ">", "no witness satisfies conditions 1–3"),
    });

    let mut disc_sign = None;
    checks.push(tower_check(&table, ell, r, q, k, &mut disc_sign));
    envelope_checks(&table, q, r, &mut checks, &mut warnings)?;

    let overall = overall(&checks);
    Ok(Certificate {
        q,
        schedule,
        epsilon,
        witness: WitnessSummary {
            r,
            ell,
            k,
            p_ell,
            nq,
            disc_sign,
        },
        checks,
        overall,
        warnings,
    })
}

fn tower_check(
    table: &PrimeTable,
    ell: u64,
    r: u64,
    q: u64,
    k: i64,
    disc_sign: &mut Option<i8>,
) -> Check {
    const NAME: &str = "tower_golod_shafarevich";
    if k < 1 || r < 2 || r > q {
        return Check::undefined(NAME, "≥", "needs k ≥ 1 and 2 ≤ r ≤ q");
    }
    match theorem4_field(table, ell, r, q, k as u64) {
        Ok((field, sc)) => {
            *disc_sign = Some(if field.is_imaginary() { -1 } else { 1 });
            let d2 = genus_two_rank_lower(&field);
            let cert = golod_shafarevich_check(&field, d2, sc.len() as u64);
            let lhs = Integer::from(d2.saturating_sub(2)).square();
            let rhs = Integer::from(4 * (cert.sc_size + cert.infinite_places as u64 + 1));
            let mut c = Check::exact(NAME, &int(lhs), "≥", &int(rhs));
            if d2 < 2 {
                c.status = CheckStatus::Fail;
            }
            c.with_detail(format!(
                "Δ = {}D, d₂ ≥ {d2}, |S_c| = {}, threshold {}",
                if field.is_imaginary() { "−" } else { "+" },
                cert.sc_size,
                cert.threshold.to_interval_string(12)
            ))
        }
        Err(e) => Check::undefined(NAME, "≥", e.to_string()),
    }
}

/// |π(x;4,3) − Li(x)/2| < 0.53x/(ln x)² at x = ⌊√q⌋ and x = ⌈√r⌉, a cross-check on
/// the sieve counts; only asserted for x ≥ 1000.
fn envelope_checks(
    table: &PrimeTable,
    q: u64,
    r: u64,
    checks: &mut Vec<Check>,
    warnings: &mut Vec<String>,
) -> Result<()> {
    let ends = [("envelope_sqrt_q", q.isqrt()), ("envelope_sqrt_r", super::conditions::ceil_sqrt(r))];
    for (name, x) in ends {
        if x < 1000 {
            warnings.push(format!("{name} skipped: x = {x} < 1000"));
            continue;
        }
        if x > table.limit() {
            continue;
        }
        checks.push(envelope_check(name, table, x)?);
    }
    Ok(())
}

pub(crate) fn envelope_check(name: &str, table: &PrimeTable, x: u64) -> Result<Check> {
    let xh = HighReal::from_u64(x);
    let pi = HighReal::from_u64(table.pi_3mod4(x)?);
    let li_half = &log_integral(&xh)? * &HighReal::ratio(1, 2);
    let lhs = (&pi - &li_half).abs();
    let rhs = &(&HighReal::ratio(53, 100) * &xh) / &xh.ln().square();
    Ok(Check::below(name, &lhs, &rhs, true))
}

fn final_sides(ell: u64) -> (HighReal, HighReal) {
    let l = HighReal::from_u64(ell);
    let ln_l = l.ln();
    let lhs = &(&(&HighReal::ratio(37, 10) * &l) + &(&l * &ln_l)) + &(&l * &ln_l.ln());
    let m = HighReal::from_i64(ell as i64 - 2);
    let bracket = &(&(&m.square() * &HighReal::ratio(1, 4)) - &m) - &HighReal::from_i64(3);
    let rhs = &HighReal::ratio(-139, 100) + &(&HighReal::ratio(58, 100) * &bracket);
    (lhs, rhs)
}

/// rhs − lhs of 3.7ℓ + ℓ ln ℓ + ℓ ln ln ℓ ≤ −1.39 + 0.58[¼(ℓ−2)² − (ℓ−2) − 3].
pub fn final_inequality_margin(ell: u64) -> Option<HighReal> {
    if ell < 2 {
        return None;
    }
    let (lhs, rhs) = final_sides(ell);
    Some(&rhs - &lhs)
}

fn final_inequality_check(ell: u64) -> Check {
    const NAME: &str = "f_final_inequality";
    if ell < 2 {
        return Check::undefined(NAME, "≤", format!("ln ln ℓ undefined at ℓ = {ell}"));
    }
    let (lhs, rhs) = final_sides(ell);
    Check::below(NAME, &lhs, &rhs, false)
}
