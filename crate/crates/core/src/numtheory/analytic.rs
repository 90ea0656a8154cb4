//! Chebyshev θ, the primorial D = 4·p₁⋯p_ℓ, and the logarithmic integral Li(x) = ∫₂ˣ dt/ln t.

use std::sync::OnceLock;

use rug::float::Round;
use rug::{Float, Integer};

use super::sieve::{nth_prime, sieve_primes, PrimeTable};
use crate::error::{Error, Result};
use crate::highreal::{HighReal, PRECISION};

/// Largest ℓ for which the exact primorial is formed.
pub const PRIMORIAL_MAX_ELL: u64 = 100_000;

/// θ(x) = Σ_{p ≤ x} ln p, enclosed.
pub fn chebyshev_theta(x: u64) -> Result<HighReal> {
    if x < 2 {
        return Err(Error::domain(format!("θ(x) needs x ≥ 2, got {x}")));
    }
    let table = sieve_primes(x)?;
    Ok(theta_from_table(&table, x))
}

/// θ(x) using a prebuilt table covering `x`.
pub fn theta_from_table(table: &PrimeTable, x: u64) -> HighReal {
    let primes = table.range(2, x);
    // ln of the exact product of blocks keeps the number of roundings small
    let mut acc = HighReal::zero();
    for block in primes.chunks(256) {
        let prod = product_tree(block);
        acc = &acc + &HighReal::from_integer(&prod).ln();
    }
    acc
}

fn product_tree(values: &[u32]) -> Integer {
    match values.len() {
        0 => Integer::from(1),
        1 => Integer::from(values[0]),
        n => {
            let (l, r) = values.split_at(n / 2);
            product_tree(l) * product_tree(r)
        }
    }
}

/// D = 4·p₁⋯p_ℓ exactly, together with an enclosure of ln D.
pub fn primorial_d(ell: u64) -> Result<(Integer, HighReal)> {
    if ell == 0 {
        return Err(Error::argument("ℓ must be ≥ 1"));
    }
    if ell > PRIMORIAL_MAX_ELL {
        return Err(Error::capacity(format!(
            "exact primorial limited to ℓ ≤ {PRIMORIAL_MAX_ELL}"
        )));
    }
    let p_ell = nth_prime(ell)?;
    let table = sieve_primes(p_ell)?;
    let d = product_tree(table.range(2, p_ell)) * 4u32;
    let ln_d = HighReal::from_integer(&d).ln();
    Ok((d, ln_d))
}

/// ln D = ln 4 + θ(p_ℓ), without forming D.
pub fn log_primorial_d(table: &PrimeTable, ell: u64) -> Result<HighReal> {
    let p_ell = table
        .nth(ell as usize)
        .ok_or_else(|| Error::capacity(format!("p_{ell} beyond sieve limit {}", table.limit())))?;
    let ln4 = HighReal::ln2() * HighReal::from_i64(2);
    Ok(&ln4 + &theta_from_table(table, p_ell))
}

// ---------------------------------------------------------------------------
// Li(x) by adaptive Gauss–Legendre quadrature in u = ln t:
//   Li(x) = ∫_{ln 2}^{ln x} eᵘ/u du.

const GL_N: usize = 16;
const NODE_BITS: u32 = 192;
const MAX_DEPTH: u32 = 48;

struct Rule {
    nodes: Vec<HighReal>,
    weights: Vec<HighReal>,
}

/// Legendre polynomial P_n and its derivative at x.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let k = k as u32;
        let a = Float::with_val(prec, x * &p1) * (2 * k - 1);
        let b = Float::with_val(prec, &p0 * (k - 1));
        let p2 = (a - b) / k;
        p0 = std::mem::replace(&mut p1, p2);
    }
    // P'_n = n (x P_n − P_{n−1}) / (x² − 1)
    let num = (Float::with_val(prec, x * &p1) - &p0) * n as u32;
    let den = Float::with_val(prec, x * x) - 1u32;
    (p1, num / den)
}

fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut nodes = Vec::with_capacity(GL_N);
        let mut weights = Vec::with_capacity(GL_N);
        for i in 1..=GL_N {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (GL_N as f64 + 0.5)).cos();
            let mut x = Float::with_val(NODE_BITS, guess);
            for _ in 0..12 {
                let (p, dp) = legendre(GL_N, &x);
                x -= p / dp;
            }
            let (_, dp) = legendre(GL_N, &x);
            let one_minus = Float::with_val(NODE_BITS, 1u32) - Float::with_val(NODE_BITS, &x * &x);
            let w = Float::with_val(NODE_BITS, 2u32) / (one_minus * Float::with_val(NODE_BITS, &dp * &dp));
            nodes.push(HighReal::from_float(&x));
            weights.push(HighReal::from_float(&w));
        }
        Rule { nodes, weights }
    })
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Upper bound on the quadrature error of the rule on `[a, b]`, a > 0, plus
/// slack for nodes and weights rounded to the working precision.
fn panel_error_bound(a: &Float, b: &Float) -> f64 {
    let n = GL_N as u32;
    let h = Float::with_val(PRECISION, b - a).to_f64_round(Round::Up);
    let a_lo = a.to_f64_round(Round::Down);
    let eb = b.to_f64_round(Round::Up).exp();
    // max |g^{(2n)}| on [a,b] ≤ e^b Σ_j C(2n,j) j!/a^{j+1}
    let mut deriv = 0.0;
    let mut binom = 1.0;
    for j in 0..=(2 * n) {
        deriv += binom * factorial(j) / a_lo.powi(j as i32 + 1);
        binom = binom * f64::from(2 * n - j) / f64::from(j + 1);
    }
    let coeff = factorial(n).powi(4) / (f64::from(2 * n + 1) * factorial(2 * n).powi(3));
    let truncation = h.powi(2 * n as i32 + 1) * coeff * eb * deriv;
    let slack = 2f64.powi(-118) * h * eb / a_lo;
    (truncation + slack) * (1.0 + 1e-12)
}

/// Rule applied on `[a, b]`, enclosing the rounding of every operation.
fn panel_sum(a: &Float, b: &Float) -> HighReal {
    let r = rule();
    let lo = HighReal::from_float(a);
    let hi = HighReal::from_float(b);
    let half = (&hi - &lo) * HighReal::ratio(1, 2);
    let mid = (&hi + &lo) * HighReal::ratio(1, 2);
    let mut acc = HighReal::zero();
    for (x, w) in r.nodes.iter().zip(&r.weights) {
        let u = &mid + &(&half * x);
        acc = &acc + &(w * &(u.exp() / &u));
    }
    &acc * &half
}

/// ∫_a^b eᵘ/u du for exact endpoints 0 < a ≤ b.
fn integrate_exact(a: &Float, b: &Float) -> Result<HighReal> {
    if a >= b {
        return Ok(HighReal::zero());
    }
    let mut total = HighReal::zero();
    let mut stack = Vec::new();
    // unit-width starting panels keep the recursion shallow
    let mut left = a.clone();
    while left < *b {
        let right = Float::with_val(PRECISION, &left + 1u32);
        let right = if right > *b { b.clone() } else { right };
        stack.push((left.clone(), right.clone(), 0u32));
        left = right;
    }
    stack.reverse();
    while let Some((l, r, depth)) = stack.pop() {
        let h = Float::with_val(PRECISION, &r - &l).to_f64_round(Round::Down);
        // h·min g lower-bounds the panel's value, so the tolerance is relative
        let g_min = (l.to_f64_round(Round::Down).exp() / r.to_f64_round(Round::Up))
            .max(std::f64::consts::E);
        let tol = 2f64.powi(-112) * h * g_min;
        let err = panel_error_bound(&l, &r);
        if err <= tol || depth >= MAX_DEPTH {
            if err > tol && err > 1e-30 {
                return Err(Error::Indeterminate(format!(
                    "Li quadrature did not converge on [{l}, {r}]"
                )));
            }
            let s = panel_sum(&l, &r);
            let e = HighReal::from_f64(err);
            total = &total + &(&s + &(-&e).hull(&e));
        } else {
            let m = Float::with_val(PRECISION, &l + &r) / 2u32;
            stack.push((m.clone(), r, depth + 1));
            stack.push((l, m, depth + 1));
        }
    }
    Ok(total)
}

/// eᵘ/u is convex on (0, ∞): its maximum on an interval is at an endpoint.
fn integrand_max(lo: &Float, hi: &Float) -> HighReal {
    let g = |v: &Float| {
        let u = HighReal::from_float(v);
        u.exp() / &u
    };
    let (a, b) = (g(lo), g(hi));
    let top = if a.upper() >= b.upper() { a } else { b };
    HighReal::from_float(top.upper())
}

/// Contribution in `[0, width·max g]` of a sliver between an exact break point and an
/// enclosed endpoint.
fn sliver(lo: &Float, hi: &Float) -> HighReal {
    if lo >= hi {
        return HighReal::zero();
    }
    let w = HighReal::from_float(&Float::with_val(PRECISION, hi - lo))
        .hull(&HighReal::from_float(&Float::with_val_round(PRECISION, hi - lo, Round::Up).0));
    let bound = &w * &integrand_max(lo, hi);
    HighReal::zero().hull(&HighReal::from_float(bound.upper()))
}

fn check_domain(x: &HighReal) -> Result<()> {
    if !x.is_finite() || x.lower_f64() < 2.0 {
        return Err(Error::domain(format!("Li(x) needs x ≥ 2, got {x}")));
    }
    Ok(())
}

/// Li(x) = ∫₂ˣ dt/ln t with a rigorous enclosure.
pub fn log_integral(x: &HighReal) -> Result<HighReal> {
    Ok(log_integral_many(std::slice::from_ref(x))?.remove(0))
}

/// Li at several points, sharing the quadrature between consecutive arguments.
/// Results are returned in input order.
pub fn log_integral_many(xs: &[HighReal]) -> Result<Vec<HighReal>> {
    for x in xs {
        check_domain(x)?;
    }
    let ln2 = HighReal::ln2();
    let start = ln2.upper().clone();
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| {
        xs[i]
            .lower()
            .partial_cmp(xs[j].lower())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut out = vec![HighReal::zero(); xs.len()];
    let mut cursor = start.clone();
    let mut acc = HighReal::zero();
    let lower_sliver = sliver(ln2.lower(), &start);
    for i in order {
        let x = &xs[i];
        if x.is_exact() && *x.lower() == 2 {
            out[i] = HighReal::zero();
            continue;
        }
        let lnx = x.ln();
        let end = lnx.lower().clone();
        if end > cursor {
            acc = &acc + &integrate_exact(&cursor, &end)?;
            cursor = end;
        }
        let value = if *lnx.lower() <= start {
            // ln x and ln 2 enclosures overlap; Li(x) ≥ 0 and lies within the hull span
            let lo = if ln2.lower() < lnx.lower() { ln2.lower() } else { lnx.lower() };
            sliver(lo, lnx.upper())
        } else {
            let upper_sliver = sliver(&cursor, lnx.upper());
            &(&acc + &lower_sliver) + &upper_sliver
        };
        out[i] = value;
    }
    Ok(out)
}
