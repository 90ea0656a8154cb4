//! Segmented sieve of Eratosthenes and prime counting in residue classes mod 4.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest supported sieve bound.
pub const SIEVE_CAPACITY: u64 = 1 << 32;

/// Odd numbers per segment (each segment covers twice this many integers).
const SEGMENT_ODDS: u64 = 1 << 17;

/// All primes up to `limit`, with a running count of primes ≡ 3 (mod 4).
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
    // count_3mod4[i] = #{ j ≤ i : primes[j] ≡ 3 (mod 4) }
    count_3mod4: Vec<u32>,
}

/// Plain Eratosthenes on `[0, n]`, used for the base primes of the segmented sieve.
fn small_primes(n: u64) -> Vec<u32> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Odd primes in `[lo, hi)`, `lo` odd, using base primes up to `√hi`.
fn sieve_segment(lo: u64, hi: u64, base: &[u32]) -> Vec<u32> {
    let len = ((hi - lo) / 2) as usize;
    let mut composite = vec![false; len];
    for &p in base.iter().skip(1) {
        let p = p as u64;
        let sq = p * p;
        if sq >= hi {
            break;
        }
        // first odd multiple of p that is ≥ max(p², lo)
        let mut start = if sq >= lo { sq } else { lo.div_ceil(p) * p };
        if start % 2 == 0 {
            start += p;
        }
        let mut idx = ((start - lo) / 2) as usize;
        while idx < len {
            composite[idx] = true;
            idx += p as usize;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| (lo + 2 * i as u64) as u32)
        .filter(|&v| v > 1)
        .collect()
}

/// Primes ≤ `limit`. Segments are sieved in parallel and concatenated in order.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::argument(format!("sieve limit {limit} < 2")));
    }
    if limit > SIEVE_CAPACITY {
        return Err(Error::capacity(format!(
            "sieve limit {limit} exceeds 2^32"
        )));
    }
    let base = small_primes(limit.isqrt() + 1);
    let end = limit + 1; // exclusive
    let span = 2 * SEGMENT_ODDS;
    let segments: Vec<(u64, u64)> = (0..end.div_ceil(span))
        .map(|s| {
            let lo = (s * span + 1).max(3);
            let hi = ((s + 1) * span + 1).min(end + (end % 2 == 0) as u64);
            (lo, hi.max(lo))
        })
        .collect();
    let chunks: Vec<Vec<u32>> = segments
        .par_iter()
        .map(|&(lo, hi)| sieve_segment(lo, hi, &base))
        .collect();

    let mut primes = Vec::with_capacity(chunks.iter().map(Vec::len).sum::<usize>() + 1);
    primes.push(2);
    for chunk in chunks {
        primes.extend(chunk.into_iter().filter(|&p| (p as u64) <= limit));
    }
    let mut running = 0u32;
    let count_3mod4 = primes
        .iter()
        .map(|&p| {
            if p % 4 == 3 {
                running += 1;
            }
            running
        })
        .collect();
    Ok(PrimeTable {
        limit,
        primes,
        count_3mod4,
    })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The `i`-th prime, 1-based. `None` when past the table.
    pub fn nth(&self, i: usize) -> Option<u64> {
        i.checked_sub(1)
            .and_then(|j| self.primes.get(j))
            .map(|&p| p as u64)
    }

    fn check_range(&self, x: u64) -> Result<()> {
        if x > self.limit {
            Err(Error::capacity(format!(
                "query {x} beyond sieve limit {}",
                self.limit
            )))
        } else {
            Ok(())
        }
    }

    /// π(x).
    pub fn pi(&self, x: u64) -> Result<u64> {
        self.check_range(x)?;
        Ok(self.primes.partition_point(|&p| (p as u64) <= x) as u64)
    }

    /// π(x; 4, 3): primes ≤ x congruent to 3 mod 4.
    pub fn pi_3mod4(&self, x: u64) -> Result<u64> {
        let n = self.pi(x)? as usize;
        Ok(if n == 0 { 0 } else { self.count_3mod4[n - 1] as u64 })
    }

    /// Primes ≡ 3 (mod 4) in the closed range `[lo, hi]`.
    pub fn count_3mod4_between(&self, lo: u64, hi: u64) -> Result<u64> {
        if lo > hi {
            return Ok(0);
        }
        let below = if lo == 0 { 0 } else { self.pi_3mod4(lo - 1)? };
        Ok(self.pi_3mod4(hi)? - below)
    }

    /// Count of primes `p ≤ x` with `p ≡ residue (mod modulus)`; modulus ∈ {1, 4}.
    pub fn count_ap(&self, x: u64, modulus: u64, residue: u64) -> Result<u64> {
        match (modulus, residue) {
            (1, 0) => self.pi(x),
            (4, 3) => self.pi_3mod4(x),
            (4, 1) => {
                let all = self.pi(x)?;
                let two = (x >= 2) as u64;
                Ok(all - two - self.pi_3mod4(x)?)
            }
            (4, 2) => Ok((x >= 2) as u64),
            (4, 0) => Ok(0),
            (1 | 4, _) => Err(Error::argument(format!(
                "residue {residue} not below modulus {modulus}"
            ))),
            _ => Err(Error::argument(format!(
                "modulus {modulus} unsupported (only 1 and 4)"
            ))),
        }
    }

    /// Primes in `[lo, hi]` as a slice.
    pub fn range(&self, lo: u64, hi: u64) -> &[u32] {
        let a = self.primes.partition_point(|&p| (p as u64) < lo);
        let b = self.primes.partition_point(|&p| (p as u64) <= hi);
        &self.primes[a..b.max(a)]
    }
}

/// Upper bound for the `i`-th prime (Rosser: `p_i < i(ln i + ln ln i)` for `i ≥ 6`).
pub(crate) fn nth_prime_upper_bound(i: u64) -> u64 {
    if i < 6 {
        return 13;
    }
    let x = i as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 16
}

/// The `i`-th prime, 1-based.
pub fn nth_prime(i: u64) -> Result<u64> {
    if i == 0 {
        return Err(Error::argument("prime index starts at 1"));
    }
    let bound = nth_prime_upper_bound(i);
    if bound > SIEVE_CAPACITY {
        return Err(Error::capacity(format!("p_{i} beyond sieve capacity")));
    }
    let table = sieve_primes(bound)?;
    table
        .nth(i as usize)
        .ok_or_else(|| Error::capacity(format!("p_{i} above computed bound {bound}")))
}

/// Primes `p ≤ x` with `p ≡ residue (mod modulus)`, modulus ∈ {1, 4}.
pub fn prime_count_ap(x: u64, modulus: u64, residue: u64) -> Result<u64> {
    if x < 2 {
        return Err(Error::argument(format!("x = {x} < 2")));
    }
    sieve_primes(x)?.count_ap(x, modulus, residue)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn small_limits() {
        assert_eq!(sieve_primes(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes(), &[2]);
        assert_eq!(sieve_primes(3).unwrap().primes(), &[2, 3]);
    }

    #[test]
    fn limit_out_of_range() {
        assert!(matches!(sieve_primes(1), Err(Error::Argument(_))));
        assert!(matches!(
            sieve_primes(SIEVE_CAPACITY + 1),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn agrees_with_trial_division_across_segment_edges() {
        let limit = 3 * 2 * SEGMENT_ODDS + 77;
        let table = sieve_primes(limit).unwrap();
        let expected: Vec<u32> = (0..=limit)
            .filter(|&n| is_prime_trial(n))
            .map(|n| n as u32)
            .collect();
        assert_eq!(table.primes(), expected.as_slice());
    }

    #[test]
    fn pi_of_a_million() {
        // independent count by trial division: 78498
        let table = sieve_primes(1_000_000).unwrap();
        assert_eq!(table.len(), 78498);
    }

    #[test]
    fn nth_prime_values() {
        assert_eq!(nth_prime(1).unwrap(), 2);
        assert_eq!(nth_prime(125).unwrap(), 691);
        assert_eq!(nth_prime(1000).unwrap(), 7919);
        assert!(nth_prime(0).is_err());
    }

    #[test]
    fn counts_mod_four() {
        assert_eq!(prime_count_ap(20, 4, 3).unwrap(), 4);
        assert_eq!(prime_count_ap(2, 4, 3).unwrap(), 0);
        assert_eq!(prime_count_ap(20, 1, 0).unwrap(), 8);
        assert!(matches!(prime_count_ap(20, 6, 1), Err(Error::Argument(_))));
        assert!(matches!(prime_count_ap(20, 4, 5), Err(Error::Argument(_))));
    }

    #[test]
    fn class_split_sums_to_pi() {
        let table = sieve_primes(100_000).unwrap();
        for x in (2..=100_000).step_by(97) {
            let all = table.count_ap(x, 1, 0).unwrap();
            let one = table.count_ap(x, 4, 1).unwrap();
            let three = table.count_ap(x, 4, 3).unwrap();
            assert_eq!(all, one + three + 1, "x = {x}");
        }
    }

    #[test]
    fn range_slices() {
        let table = sieve_primes(100).unwrap();
        assert_eq!(table.range(10, 30), &[11, 13, 17, 19, 23, 29]);
        assert!(table.range(24, 28).is_empty());
        assert_eq!(table.count_3mod4_between(3, 20).unwrap(), 4);
    }
}
