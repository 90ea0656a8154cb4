use std::fmt;

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{kronecker, nth_prime, sieve_primes};

/// Discriminants are factored by trial division up to this absolute value.
pub const FACTOR_LIMIT: u64 = 1 << 50;

/// K = Q(√Δ) for a fundamental discriminant Δ, with integral basis {1, ω} where
/// ω has minimal polynomial X² − δ₀X + (δ₀ − Δ)/4 and δ₀ = Δ mod 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticField {
    disc: Integer,
    delta0: u8,
    // (δ₀ − Δ)/4, the constant term of ω's minimal polynomial
    norm_omega: Integer,
    prime_divisors: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// One prime ideal of O_K above the rational prime `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIdealRecord {
    pub p: u64,
    pub split_type: SplitType,
    /// p² when inert, otherwise p.
    pub norm: u64,
    /// 0 or 1 for the two conjugates above a split prime; 0 otherwise.
    pub conjugate_index: u8,
    /// Root c of ω's minimal polynomial mod p; the ideal is (p, ω − c). Absent when inert.
    pub residue_root: Option<u64>,
}

fn is_squarefree_with(n: &Integer, primes: &[u64]) -> bool {
    primes.iter().all(|&p| !n.is_divisible(&Integer::from(p * p)))
}

/// Distinct prime divisors of |n| by trial division; `n` must be within [`FACTOR_LIMIT`].
fn factor_distinct(n: &Integer) -> Result<Vec<u64>> {
    let mut m = n
        .clone()
        .abs()
        .to_u64()
        .filter(|&v| v <= FACTOR_LIMIT)
        .ok_or_else(|| Error::capacity(format!("|Δ| = {} above 2^50 factoring limit", n.clone().abs())))?;
    let mut out = Vec::new();
    if m < 2 {
        return Ok(out);
    }
    let table = sieve_primes((m.isqrt() + 1).max(2))?;
    for &p in table.primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
    }
    if m > 1 {
        out.push(m);
    }
    Ok(out)
}

/// Builds K = Q(√Δ), rejecting Δ that are not fundamental discriminants.
pub fn make_field(disc: &Integer) -> Result<QuadraticField> {
    if *disc == 0 || *disc == 1 {
        return Err(Error::argument(format!("Δ = {disc} is not a field discriminant")));
    }
    let r4 = disc.mod_u(4);
    if r4 == 2 || r4 == 3 {
        return Err(Error::argument(format!(
            "Δ = {disc} ≡ {r4} (mod 4); a discriminant must be ≡ 0 or 1 (mod 4)"
        )));
    }
    let primes = factor_distinct(disc)?;
    if r4 == 1 {
        if !is_squarefree_with(disc, &primes) {
            return Err(Error::argument(format!(
                "Δ = {disc} ≡ 1 (mod 4) but is not squarefree"
            )));
        }
    } else {
        let d = Integer::from(disc / 4u32);
        let d4 = d.mod_u(4);
        if d4 != 2 && d4 != 3 {
            return Err(Error::argument(format!(
                "Δ/4 = {d} ≡ {d4} (mod 4); need Δ/4 ≡ 2 or 3 (mod 4)"
            )));
        }
        if !is_squarefree_with(&d, &primes) {
            return Err(Error::argument(format!("Δ/4 = {d} is not squarefree")));
        }
    }
    Ok(QuadraticField::from_parts(disc.clone(), primes))
}

/// [`make_field`] on a machine integer.
pub fn make_field_i64(disc: i64) -> Result<QuadraticField> {
    make_field(&Integer::from(disc))
}

impl QuadraticField {
    fn from_parts(disc: Integer, prime_divisors: Vec<u64>) -> Self {
        let delta0 = disc.mod_u(4) as u8;
        let norm_omega = Integer::from(Integer::from(delta0) - &disc) / 4u32;
        QuadraticField {
            disc,
            delta0,
            norm_omega,
            prime_divisors,
        }
    }

    /// Q(√(±D)) with D = 4·p₁⋯p_ℓ. Always fundamental: ±D/4 = ±2·p₂⋯p_ℓ ≡ 2 (mod 4).
    pub fn primorial(ell: u64, negative: bool) -> Result<Self> {
        let (d, _) = crate::numtheory::primorial_d(ell)?;
        let p_ell = nth_prime(ell)?;
        let primes: Vec<u64> = sieve_primes(p_ell)?
            .primes()
            .iter()
            .map(|&p| p as u64)
            .collect();
        let disc = if negative { -d } else { d };
        Ok(Self::from_parts(disc, primes))
    }

    pub fn disc(&self) -> &Integer {
        &self.disc
    }

    /// Δ as i64 when it fits.
    pub fn disc_i64(&self) -> Option<i64> {
        self.disc.to_i64()
    }

    pub fn delta0(&self) -> u8 {
        self.delta0
    }

    /// Constant term (δ₀ − Δ)/4 of ω's minimal polynomial.
    pub fn norm_omega(&self) -> &Integer {
        &self.norm_omega
    }

    pub fn is_imaginary(&self) -> bool {
        self.disc < 0
    }

    /// Number of real embeddings.
    pub fn s(&self) -> u32 {
        if self.is_imaginary() {
            0
        } else {
            2
        }
    }

    /// Number of complex-conjugate pairs of embeddings.
    pub fn t(&self) -> u32 {
        if self.is_imaginary() {
            1
        } else {
            0
        }
    }

    /// |S_∞| = s + t.
    pub fn infinite_places(&self) -> u32 {
        self.s() + self.t()
    }

    /// Distinct primes dividing Δ, ascending.
    pub fn prime_divisors(&self) -> &[u64] {
        &self.prime_divisors
    }

    /// Describes ω: `√d` when Δ = 4d, `(1+√Δ)/2` when Δ ≡ 1 (mod 4).
    pub fn omega_spec(&self) -> String {
        if self.delta0 == 0 {
            format!("sqrt({})", Integer::from(&self.disc / 4u32))
        } else {
            format!("(1+sqrt({}))/2", self.disc)
        }
    }

    /// N(u + vω) = u² + δ₀uv + ((δ₀ − Δ)/4)v², exactly.
    pub fn norm(&self, u: &Integer, v: &Integer) -> Integer {
        let mut n = Integer::from(u * u);
        if self.delta0 == 1 {
            n += Integer::from(u * v);
        }
        n + Integer::from(v * v) * &self.norm_omega
    }

    /// N(u + vω) in i128; `None` on overflow.
    pub fn norm_i128(&self, u: i128, v: i128) -> Option<i128> {
        let c = self.norm_omega.to_i128()?;
        let uu = u.checked_mul(u)?;
        let uv = if self.delta0 == 1 { u.checked_mul(v)? } else { 0 };
        let vv = v.checked_mul(v)?.checked_mul(c)?;
        uu.checked_add(uv)?.checked_add(vv)
    }

    /// Kronecker symbol (Δ/p).
    pub fn kronecker(&self, p: u64) -> i32 {
        kronecker(&self.disc, &Integer::from(p))
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√{})", self.disc)
    }
}

fn min_poly_roots(k: &QuadraticField, p: u64) -> Vec<u64> {
    let b = k.delta0 as u64 % p;
    let c = k.norm_omega.mod_u(p as u32) as u64;
    (0..p)
        .filter(|&x| {
            let v = (x as u128 * x as u128 + (p - b) as u128 * x as u128 + c as u128) % p as u128;
            v == 0
        })
        .collect()
}

/// Prime ideals above the rational prime `p`: one record if inert or ramified,
/// two conjugates (smallest root first) if split.
pub fn splitting_type(k: &QuadraticField, p: u64) -> Result<Vec<PrimeIdealRecord>> {
    if p < 2 || p > u32::MAX as u64 {
        return Err(Error::argument(format!("p = {p} outside [2, 2^32)")));
    }
    let chi = k.kronecker(p);
    Ok(match chi {
        -1 => vec![PrimeIdealRecord {
            p,
            split_type: SplitType::Inert,
            norm: p * p,
            conjugate_index: 0,
            residue_root: None,
        }],
        0 => {
            let roots = min_poly_roots(k, p);
            vec![PrimeIdealRecord {
                p,
                split_type: SplitType::Ramified,
                norm: p,
                conjugate_index: 0,
                residue_root: roots.first().copied(),
            }]
        }
        _ => {
            let roots = min_poly_roots(k, p);
            debug_assert_eq!(roots.len(), 2, "split prime {p} needs two roots");
            roots
                .iter()
                .enumerate()
                .map(|(i, &c)| PrimeIdealRecord {
                    p,
                    split_type: SplitType::Split,
                    norm: p,
                    conjugate_index: i as u8,
                    residue_root: Some(c),
                })
                .collect()
        }
    })
}

/// All prime ideals with r ≤ N(P) ≤ q, ordered by (p, conjugate_index).
pub fn prime_ideals_in_norm_range(
    k: &QuadraticField,
    r: u64,
    q: u64,
) -> Result<Vec<PrimeIdealRecord>> {
    if r < 2 || r > q {
        return Err(Error::argument(format!("need 2 ≤ r ≤ q, got r = {r}, q = {q}")));
    }
    let table = sieve_primes(q)?;
    let mut out = Vec::new();
    for &p in table.primes() {
        let p = p as u64;
        for rec in splitting_type(k, p)? {
            if r <= rec.norm && rec.norm <= q {
                out.push(rec);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let k = make_field_i64(-4).unwrap();
        assert_eq!((k.s(), k.t()), (0, 1));
        let k = make_field_i64(12).unwrap();
        assert_eq!((k.s(), k.t()), (2, 0));
        assert_eq!(k.omega_spec(), "sqrt(3)");
    }

    #[test]
    fn worked_example_field() {
        let k = make_field_i64(-19399380).unwrap();
        assert_eq!(k.prime_divisors(), &[2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn rejects_non_fundamental() {
        for d in [0i64, 1, 2, -1, 8 * 9, -12 * 4, 25, 16, 6, -9] {
            assert!(matches!(make_field_i64(d), Err(Error::Argument(_))), "Δ = {d}");
        }
        for d in [-3i64, -4, -8, 5, 8, 12, -23, 13, -19399380] {
            assert!(make_field_i64(d).is_ok(), "Δ = {d}");
        }
    }

    #[test]
    fn norm_form() {
        let k = make_field_i64(-3).unwrap();
        // ω = (1+√−3)/2, N(ω) = 1
        assert_eq!(k.norm(&Integer::from(0), &Integer::from(1)), 1);
        assert_eq!(k.norm_i128(2, 1), Some(7));
        let k = make_field_i64(-4).unwrap();
        assert_eq!(k.norm_i128(3, 4), Some(25));
    }

    #[test]
    fn splitting_examples() {
        let k = make_field_i64(-4).unwrap();
        let r = splitting_type(&k, 3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].split_type, r[0].norm), (SplitType::Inert, 9));
        let r = splitting_type(&k, 2).unwrap();
        assert_eq!((r[0].split_type, r[0].norm), (SplitType::Ramified, 2));
        let r = splitting_type(&k, 13).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.split_type == SplitType::Split && x.norm == 13));
        assert_eq!(r[0].residue_root, Some(5));
        assert_eq!(r[1].residue_root, Some(8));
    }

    #[test]
    fn norm_range_examples() {
        let k = make_field_i64(-4).unwrap();
        let v = prime_ideals_in_norm_range(&k, 9, 13).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[0].p, 3);
        assert!(prime_ideals_in_norm_range(&k, 14, 16).unwrap().is_empty());
        assert!(prime_ideals_in_norm_range(&k, 5, 4).is_err());
    }

    #[test]
    fn fundamental_identity() {
        for d in -1000i64..=1000 {
            let Ok(k) = make_field_i64(d) else { continue };
            for p in [2u64, 3, 5, 7, 11, 101, 997] {
                let recs = splitting_type(&k, p).unwrap();
                let sum: u32 = recs
                    .iter()
                    .map(|r| match r.split_type {
                        SplitType::Split => 1,
                        SplitType::Inert | SplitType::Ramified => 2,
                    })
                    .sum();
                assert_eq!(sum, 2, "Δ = {d}, p = {p}");
                assert_eq!(recs[0].split_type == SplitType::Ramified, d % p as i64 == 0);
            }
        }
    }

    #[test]
    fn primorial_field() {
        let k = QuadraticField::primorial(3, true).unwrap();
        assert_eq!(*k.disc(), -120);
        assert_eq!(k, make_field_i64(-120).unwrap());
    }
}
