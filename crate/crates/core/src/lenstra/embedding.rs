//! Minkowski embedding of O_K into R², the open box τ + U_G, and certified lattice
//! point counting inside it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::Integer;

use crate::error::{Error, Result};
use crate::highreal::{Certified, HighReal};
use crate::quadfield::QuadraticField;

/// Λ: u + vω ↦ R², given by its images of 1 and ω.
#[derive(Clone, Debug)]
pub struct LatticeEmbedding {
    field: QuadraticField,
    disc: i64,
    /// Columns Λ(1), Λ(ω).
    basis: [[HighReal; 2]; 2],
    basis_f64: [[f64; 2]; 2],
    covolume: HighReal,
}

/// Box parameters: ρ, the shift τ, and the certified point count at τ.
#[derive(Clone, Debug)]
pub struct BoxSpec {
    pub r: u64,
    pub g: u32,
    pub rho: HighReal,
    pub tau: (f64, f64),
    /// ⌈r^G/√|Δ|⌉.
    pub target: u64,
    pub count: u64,
}

const GRIDS: [usize; 3] = [64, 128, 256];
const RANDOM_SAMPLES: usize = 4096;
const CANDIDATES_PER_ROUND: usize = 8;
const SHIFT: f64 = 1.0 / (1u64 << 40) as f64;
const MAX_SHIFTS: u32 = 8;

/// Λ(K). The field must have |Δ| < 2^63.
pub fn make_embedding(k: &QuadraticField) -> Result<LatticeEmbedding> {
    let disc = k
        .disc_i64()
        .ok_or_else(|| Error::capacity("lattice embedding needs |Δ| < 2^63"))?;
    let half_delta0 = HighReal::ratio(k.delta0() as i64, 2);
    let root = HighReal::from_i64(disc.abs()).sqrt();
    let (basis, covolume) = if disc < 0 {
        let s = &root * &HighReal::ratio(1, 2);
        (
            [[HighReal::one(), HighReal::zero()], [half_delta0, s.clone()]],
            s,
        )
    } else {
        let alpha = &half_delta0 + &(&root * &HighReal::ratio(1, 2));
        let beta = &half_delta0 - &(&root * &HighReal::ratio(1, 2));
        (
            [[HighReal::one(), HighReal::one()], [alpha, beta]],
            root.clone(),
        )
    };
    let basis_f64 = [
        [basis[0][0].to_f64(), basis[0][1].to_f64()],
        [basis[1][0].to_f64(), basis[1][1].to_f64()],
    ];
    Ok(LatticeEmbedding {
        field: k.clone(),
        disc,
        basis,
        basis_f64,
        covolume,
    })
}

/// Integers n with L < n < H, as (first, last); `None` when empty.
/// Fails with [`Error::Boundary`] when an endpoint enclosure contains an integer
/// it does not pin down exactly.
fn strict_integers_between(lo: &HighReal, hi: &HighReal) -> Result<Option<(i64, i64)>> {
    if hi.upper() <= lo.lower() {
        return Ok(None);
    }
    let fl = lo.floor().ok_or(Error::Boundary)?;
    let ch = hi.ceil().ok_or(Error::Boundary)?;
    // an inexact endpoint that encloses its own floor/ceil could be that integer
    if !lo.is_exact() && lo.contains(&HighReal::from(&fl)) {
        return Err(Error::Boundary);
    }
    if !hi.is_exact() && hi.contains(&HighReal::from(&ch)) {
        return Err(Error::Boundary);
    }
    let first = fl + 1u32;
    let last = ch - 1u32;
    if first > last {
        return Ok(None);
    }
    let f = first.to_i64().ok_or_else(|| Error::capacity("lattice coordinate overflow"))?;
    let l = last.to_i64().ok_or_else(|| Error::capacity("lattice coordinate overflow"))?;
    Ok(Some((f, l)))
}

impl LatticeEmbedding {
    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Columns Λ(1) and Λ(ω).
    pub fn basis_matrix(&self) -> &[[HighReal; 2]; 2] {
        &self.basis
    }

    pub fn basis_f64(&self) -> [[f64; 2]; 2] {
        self.basis_f64
    }

    /// vol(R²/Λ_K) = 2^{−t}√|Δ|.
    pub fn covolume(&self) -> &HighReal {
        &self.covolume
    }

    /// |det| of the basis matrix, computed from the entries.
    pub fn determinant(&self) -> HighReal {
        let b = &self.basis;
        (&(&b[0][0] * &b[1][1]) - &(&b[0][1] * &b[1][0])).abs()
    }

    pub fn point(&self, u: i64, v: i64) -> (HighReal, HighReal) {
        let (u, v) = (HighReal::from_i64(u), HighReal::from_i64(v));
        let b = &self.basis;
        (
            &(&u * &b[0][0]) + &(&v * &b[1][0]),
            &(&u * &b[0][1]) + &(&v * &b[1][1]),
        )
    }

    pub fn point_f64(&self, u: i64, v: i64) -> (f64, f64) {
        let b = &self.basis_f64;
        (
            u as f64 * b[0][0] + v as f64 * b[1][0],
            u as f64 * b[0][1] + v as f64 * b[1][1],
        )
    }

    /// ρ with ρ² = 2^{−t} r^G, the side of the box U_G.
    pub fn rho(&self, r: u64, g: u32) -> HighReal {
        let rg = HighReal::from_integer(&Integer::from(r).pow(g));
        let sq = if self.disc < 0 {
            &rg * &HighReal::ratio(1, 2)
        } else {
            rg
        };
        sq.sqrt()
    }

    /// ⌈r^G/√|Δ|⌉, the smallest M with M²|Δ| ≥ r^{2G}.
    pub fn target_count(r: u64, g: u32, disc: i64) -> Result<u64> {
        let r2g = Integer::from(r).pow(2 * g);
        let abs_d = Integer::from(disc.unsigned_abs());
        // isqrt(r^{2G}/|Δ|) then step up
        let mut m = Integer::from(&r2g / &abs_d).sqrt();
        while Integer::from(&m * &m) * &abs_d < r2g {
            m += 1u32;
        }
        while m > 0 && Integer::from(Integer::from(&m - 1u32).square()) * &abs_d >= r2g {
            m -= 1u32;
        }
        m.to_u64().ok_or_else(|| Error::capacity("target count above 2^64"))
    }

    fn is_real(&self) -> bool {
        self.disc > 0
    }

    /// Range of rows v that can meet the box, widened by one on each side.
    fn row_range_f64(&self, tau: (f64, f64), rho: f64) -> (i64, i64) {
        let b = &self.basis_f64;
        let (lo, hi) = if self.is_real() {
            let w = b[1][0] - b[1][1];
            ((tau.0 - tau.1 - rho) / w, (tau.0 - tau.1 + rho) / w)
        } else {
            (tau.1 / b[1][1], (tau.1 + rho) / b[1][1])
        };
        (lo.floor() as i64 - 1, hi.ceil() as i64 + 1)
    }

    /// Approximate point count at τ; the flag is set if some endpoint falls within
    /// `1e-9·max(1, |x|)` of an integer.
    pub fn count_f64(&self, tau: (f64, f64), rho: f64) -> (u64, bool) {
        let b = &self.basis_f64;
        let guard = |x: f64| 1e-9 * x.abs().max(1.0);
        let (v0, v1) = self.row_range_f64(tau, rho);
        let mut total = 0u64;
        let mut ambiguous = false;
        for v in v0..=v1 {
            let vf = v as f64;
            let (mut lo, mut hi);
            if self.is_real() {
                lo = (tau.0 - vf * b[1][0]).max(tau.1 - vf * b[1][1]);
                hi = (tau.0 + rho - vf * b[1][0]).min(tau.1 + rho - vf * b[1][1]);
            } else {
                let y = vf * b[1][1];
                if (y - tau.1).abs() < guard(y) || (y - tau.1 - rho).abs() < guard(y) {
                    ambiguous = true;
                }
                if !(y > tau.1 && y < tau.1 + rho) {
                    continue;
                }
                lo = tau.0 - vf * b[1][0];
                hi = tau.0 + rho - vf * b[1][0];
            }
            if hi <= lo {
                continue;
            }
            for e in [lo, hi] {
                if (e - e.round()).abs() < guard(e) {
                    ambiguous = true;
                }
            }
            lo = lo.floor() + 1.0;
            hi = hi.ceil() - 1.0;
            if hi >= lo {
                total += (hi - lo) as u64 + 1;
            }
        }
        (total, ambiguous)
    }

    /// Open u-interval of row v inside τ + U, or `None` when the row misses the box.
    fn row_bounds(&self, v: i64, tau: &(HighReal, HighReal), rho: &HighReal) -> Result<Option<(HighReal, HighReal)>> {
        let b = &self.basis;
        let vh = HighReal::from_i64(v);
        if self.is_real() {
            let a = &vh * &b[1][0];
            let c = &vh * &b[1][1];
            let lo1 = &tau.0 - &a;
            let lo2 = &tau.1 - &c;
            let hi1 = &(&tau.0 + rho) - &a;
            let hi2 = &(&tau.1 + rho) - &c;
            let lo = max_enclosure(&lo1, &lo2);
            let hi = min_enclosure(&hi1, &hi2);
            Ok(Some((lo, hi)))
        } else {
            let y = &vh * &b[1][1];
            let top = &tau.1 + rho;
            match (y.cmp_certified(&tau.1), y.cmp_certified(&top)) {
                (Certified::Greater, Certified::Less) => {}
                (Certified::Less, _) | (_, Certified::Greater) => return Ok(None),
                _ => {
                    // exact equality is a certified miss of the open box
                    if y.is_exact() && (y == tau.1 || y == top) {
                        return Ok(None);
                    }
                    return Err(Error::Boundary);
                }
            }
            let shift = &vh * &b[1][0];
            Ok(Some((&tau.0 - &shift, &(&tau.0 + rho) - &shift)))
        }
    }

    /// Certified list of (u, v) with Λ(u + vω) strictly inside τ + U.
    pub fn points_in_box(&self, tau: (f64, f64), rho: &HighReal) -> Result<Vec<(i64, i64)>> {
        let t = (HighReal::from_f64(tau.0), HighReal::from_f64(tau.1));
        let (v0, v1) = self.row_range_f64(tau, rho.upper_f64());
        let mut out = Vec::new();
        for v in v0..=v1 {
            if let Some((lo, hi)) = self.row_bounds(v, &t, rho)? {
                if let Some((a, b)) = strict_integers_between(&lo, &hi)? {
                    out.extend((a..=b).map(|u| (u, v)));
                }
            }
        }
        Ok(out)
    }

    /// Certified count of lattice points strictly inside τ + U.
    pub fn count_certified(&self, tau: (f64, f64), rho: &HighReal) -> Result<u64> {
        Ok(self.points_in_box(tau, rho)?.len() as u64)
    }
}

fn max_enclosure(a: &HighReal, b: &HighReal) -> HighReal {
    match a.cmp_certified(b) {
        Certified::Greater => a.clone(),
        Certified::Less => b.clone(),
        Certified::Indeterminate => {
            let lo = if a.lower() >= b.lower() { a } else { b };
            let hi = if a.upper() >= b.upper() { a } else { b };
            HighReal::from_float(lo.lower()).hull(&HighReal::from_float(hi.upper()))
        }
    }
}

fn min_enclosure(a: &HighReal, b: &HighReal) -> HighReal {
    -max_enclosure(&-a, &-b)
}

/// Searches τ in the fundamental parallelogram so that τ + U_G holds at least
/// ⌈r^G/√|Δ|⌉ lattice points. Grid candidates are ranked by f64 count and the
/// lexicographically smallest maximizers are certified first; `seed` drives the
/// random fallback.
pub fn find_tau(e: &LatticeEmbedding, r: u64, g: u32, seed: u64) -> Result<BoxSpec> {
    if r < 2 || g == 0 {
        return Err(Error::argument(format!("need r ≥ 2 and G ≥ 1, got r = {r}, G = {g}")));
    }
    let target = LatticeEmbedding::target_count(r, g, e.disc)?;
    let rho = e.rho(r, g);
    let rho_f = rho.to_f64();
    let b = e.basis_f64;
    let to_tau = |a: f64, c: f64| (a * b[0][0] + c * b[1][0], a * b[0][1] + c * b[1][1]);

    let try_certify = |tau: (f64, f64)| -> Result<Option<BoxSpec>> {
        let mut t = tau;
        for _ in 0..MAX_SHIFTS {
            match e.count_certified(t, &rho) {
                Ok(count) if count >= target => {
                    return Ok(Some(BoxSpec {
                        r,
                        g,
                        rho: rho.clone(),
                        tau: t,
                        target,
                        count,
                    }))
                }
                Ok(_) => return Ok(None),
                Err(Error::Boundary) => {
                    t = (t.0 + SHIFT, t.1 + SHIFT);
                }
                Err(other) => return Err(other),
            }
        }
        Ok(None)
    };

    for &grid in &GRIDS {
        let mut scored: Vec<(u64, usize, usize)> = Vec::with_capacity(grid * grid);
        for i in 0..grid {
            for j in 0..grid {
                let tau = to_tau(i as f64 / grid as f64, j as f64 / grid as f64);
                let (count, _) = e.count_f64(tau, rho_f);
                scored.push((count, i, j));
            }
        }
        // highest count first, then smallest (i, j)
        scored.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
        for &(count, i, j) in scored.iter().take(CANDIDATES_PER_ROUND) {
            if count < target {
                break;
            }
            let tau = to_tau(i as f64 / grid as f64, j as f64 / grid as f64);
            if let Some(spec) = try_certify(tau)? {
                return Ok(spec);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<(u64, (f64, f64))> = (0..RANDOM_SAMPLES)
        .map(|_| {
            let tau = to_tau(rng.gen::<f64>(), rng.gen::<f64>());
            (e.count_f64(tau, rho_f).0, tau)
        })
        .collect();
    samples.sort_by(|x, y| y.0.cmp(&x.0));
    for &(count, tau) in samples.iter().take(4 * CANDIDATES_PER_ROUND) {
        if count < target {
            break;
        }
        if let Some(spec) = try_certify(tau)? {
            return Ok(spec);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no certified τ with ≥ {target} points for Δ = {}, r = {r}, G = {g}; retry with a finer grid or another seed",
        e.disc
    )))
}

/// Ω_G: integer coordinates of the lattice points inside τ + U_G.
pub fn enumerate_omega(e: &LatticeEmbedding, b: &BoxSpec) -> Result<Vec<(i64, i64)>> {
    e.points_in_box(b.tau, &b.rho)
}
