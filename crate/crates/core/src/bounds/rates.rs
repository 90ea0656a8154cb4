//! Rate-function bounds: Gilbert–Varshamov, its asymptotic form, Plotkin, the
//! number-field-code bound, and the finite-q growth proxy.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::Rational;

use super::conditions::ParamWitness;
use crate::error::{Error, Result};
use crate::highreal::HighReal;

/// Relative distance δ ∈ (0, 1), held exactly as a rational.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Delta(Rational);

impl Delta {
    pub fn new(value: Rational) -> Result<Self> {
        if value <= 0 || value >= 1 {
            return Err(Error::domain(format!("δ = {value} outside (0, 1)")));
        }
        Ok(Delta(value))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::argument("δ denominator is zero"));
        }
        Self::new(Rational::from((num, den)))
    }

    pub fn half() -> Self {
        Delta(Rational::from((1, 2)))
    }

    /// 1 − 1/q, where GV and Plotkin reach zero.
    pub fn singleton_point(q: u64) -> Result<Self> {
        Self::new(Rational::from((q - 1, q)))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn to_high(&self) -> HighReal {
        HighReal::from_rational(&self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl FromStr for Delta {
    type Err = Error;

    /// Accepts `a/b` or a plain decimal such as `0.35`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::argument(format!("cannot parse δ from `{s}`"));
        let value = if s.contains('/') {
            Rational::from_str(s).map_err(|_| bad())?
        } else {
            let (int, frac) = s.split_once('.').unwrap_or((s, ""));
            if int.is_empty() && frac.is_empty() {
                return Err(bad());
            }
            let digits = format!("{int}{frac}");
            let num = rug::Integer::from_str(if digits.is_empty() { "0" } else { &digits })
                .map_err(|_| bad())?;
            let den = rug::Integer::from(10).pow(frac.len() as u32);
            Rational::from((num, den))
        };
        Delta::new(value)
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // terminating decimals print as decimals
        let den = self.0.denom().clone();
        let mut d = den.clone();
        let twos = d.remove_factor_mut(&rug::Integer::from(2));
        let fives = d.remove_factor_mut(&rug::Integer::from(5));
        if d == 1 {
            let digits = twos.max(fives) as usize;
            let scaled = Rational::from(&self.0 * rug::Integer::from(10).pow(digits as u32));
            let n = scaled.numer().to_string();
            let n = format!("{n:0>width$}", width = digits + 1);
            let (a, b) = n.split_at(n.len() - digits);
            if digits == 0 {
                write!(f, "{a}")
            } else {
                write!(f, "{a}.{b}")
            }
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q} < 2")));
    }
    Ok(())
}

fn past_singleton(q: u64, delta: &Delta) -> bool {
    *delta.value() >= Rational::from((q - 1, q))
}

/// h(δ) = −δ ln δ − (1−δ) ln(1−δ), in nats.
fn entropy_nats(delta: &Delta) -> HighReal {
    let d = delta.to_high();
    let e = HighReal::from_rational(&Rational::from(1 - delta.value().clone()));
    -(&(&d * &d.ln()) + &(&e * &e.ln()))
}

/// R_GV(δ, q) = 1 − δ log_q(q−1) − δ log_q(1/δ) − (1−δ) log_q(1/(1−δ)); zero for δ ≥ 1 − 1/q.
pub fn gv_bound(q: u64, delta: &Delta) -> Result<HighReal> {
    check_q(q)?;
    if past_singleton(q, delta) {
        return Ok(HighReal::zero());
    }
    let ln_q = HighReal::from_u64(q).ln();
    let ln_q1 = HighReal::from_u64(q - 1).ln();
    let num = &(&delta.to_high() * &ln_q1) + &entropy_nats(delta);
    Ok(&HighReal::one() - &(num / ln_q))
}

/// 1 − δ − h(δ)/ln q.
pub fn gv_asymptotic(q: u64, delta: &Delta) -> Result<HighReal> {
    check_q(q)?;
    let ln_q = HighReal::from_u64(q).ln();
    let base = HighReal::from_rational(&Rational::from(1 - delta.value().clone()));
    Ok(&base - &(entropy_nats(delta) / ln_q))
}

/// 1 − δ − δ/(q−1), evaluated in exact rationals; zero for δ ≥ 1 − 1/q.
pub fn plotkin_bound(q: u64, delta: &Delta) -> Result<HighReal> {
    check_q(q)?;
    if past_singleton(q, delta) {
        return Ok(HighReal::zero());
    }
    let d = delta.value();
    let v = Rational::from(1) - d.clone() - Rational::from(d / Rational::from(q - 1));
    Ok(HighReal::from_rational(&v))
}

/// R_NFC(δ, q) = (1−δ) ln r/ln q − ln D/(2k ln q) for a witness that passed
/// [`check_conditions`](super::check_conditions).
pub fn nfc_bound(q: u64, delta: &Delta, w: &ParamWitness) -> Result<HighReal> {
    if w.q() != q {
        return Err(Error::argument(format!(
            "witness was certified for q = {}, not {q}",
            w.q()
        )));
    }
    let ln_q = HighReal::from_u64(q).ln();
    let one_minus = HighReal::from_rational(&Rational::from(1 - delta.value().clone()));
    let first = &one_minus * &(HighReal::from_u64(w.r()).ln() / &ln_q);
    let second = w.d_log() / &(&HighReal::from_u64(2 * w.k()) * &ln_q);
    Ok(&first - &second)
}

/// ln(1/(1 − δ − R))/ln q, the finite-q stand-in for η(δ).
pub fn growth_proxy(q: u64, delta: &Delta, rate_lower: &HighReal) -> Result<HighReal> {
    check_q(q)?;
    let gap = &HighReal::from_rational(&Rational::from(1 - delta.value().clone())) - rate_lower;
    if !gap.is_positive() {
        return Err(Error::domain(format!(
            "1 − δ − R = {gap} is not certified positive"
        )));
    }
    Ok(gap.recip().ln() / HighReal::from_u64(q).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_parsing() {
        assert_eq!("0.5".parse::<Delta>().unwrap(), Delta::half());
        assert_eq!("1/2".parse::<Delta>().unwrap(), Delta::half());
        assert_eq!(".25".parse::<Delta>().unwrap(), Delta::ratio(1, 4).unwrap());
        assert!(matches!("1".parse::<Delta>(), Err(Error::Domain(_))));
        assert!(matches!("0".parse::<Delta>(), Err(Error::Domain(_))));
        assert!("abc".parse::<Delta>().is_err());
        assert_eq!(Delta::ratio(1, 10).unwrap().to_string(), "0.1");
        assert_eq!(Delta::ratio(1, 3).unwrap().to_string(), "1/3");
        assert_eq!(Delta::ratio(3, 40).unwrap().to_string(), "0.075");
    }

    #[test]
    fn gv_binary_half_is_zero() {
        assert!(gv_bound(2, &Delta::half()).unwrap().is_exact());
        assert_eq!(gv_bound(2, &Delta::half()).unwrap().to_f64(), 0.0);
    }

    #[test]
    fn gv_binary_quarter() {
        // 1 − h₂(1/4) = 0.18872187554086717
        let v = gv_bound(2, &Delta::ratio(1, 4).unwrap()).unwrap();
        assert!((v.to_f64() - 0.18872187554086717).abs() < 1e-15);
    }

    #[test]
    fn gv_asymptotic_half() {
        let q = 1u64 << 20;
        let v = gv_asymptotic(q, &Delta::half()).unwrap();
        let expect = 0.5 - 2f64.ln() / (q as f64).ln();
        assert!((v.to_f64() - expect).abs() < 1e-15);
    }

    #[test]
    fn plotkin_values() {
        let v = plotkin_bound(2, &Delta::ratio(1, 4).unwrap()).unwrap();
        assert!(v.is_exact() && v.to_f64() == 0.5);
        for q in [2u64, 3, 17, 1000] {
            let d = Delta::singleton_point(q).unwrap();
            assert!(plotkin_bound(q, &d).unwrap().is_exact());
            assert_eq!(plotkin_bound(q, &d).unwrap().to_f64(), 0.0);
            assert_eq!(gv_bound(q, &d).unwrap().to_f64(), 0.0);
        }
    }

    #[test]
    fn gv_below_plotkin() {
        for q in [2u64, 5, 64, 1 << 30] {
            for k in 1..20 {
                let d = Delta::ratio(k, 20).unwrap();
                let gv = gv_bound(q, &d).unwrap();
                let pl = plotkin_bound(q, &d).unwrap();
                assert!(gv.upper() <= pl.upper(), "q = {q}, δ = {k}/20");
            }
        }
    }

    #[test]
    fn growth_proxy_sixth() {
        let q = 1u64 << 36;
        let d = Delta::half();
        // R = 1 − δ − q^{−1/6}
        let r = &HighReal::ratio(1, 2) - &HighReal::from_u64(q).powf(&HighReal::ratio(-1, 6));
        let eta = growth_proxy(q, &d, &r).unwrap();
        assert!((eta.to_f64() - 1.0 / 6.0).abs() < 1e-30);
        assert!(growth_proxy(q, &d, &HighReal::ratio(1, 2)).is_err());
    }
}
