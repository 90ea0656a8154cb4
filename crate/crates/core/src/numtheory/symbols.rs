//! Kronecker symbol (Δ/n), the full extension of the Jacobi symbol to all integers n.

use rug::Integer;

/// Jacobi symbol (a/n) for odd n > 0 on machine words.
fn jacobi_u64(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        // reciprocity
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

fn jacobi_big(a: &Integer, n: &Integer) -> i32 {
    let mut a = Integer::from(a.modulo_ref(n));
    let mut n = n.clone();
    let mut sign = 1;
    while a != 0 {
        if let (Some(x), Some(y)) = (a.to_u64(), n.to_u64()) {
            return sign * jacobi_u64(x, y);
        }
        let tz = a.find_one(0).unwrap_or(0);
        a >>= tz;
        let n8 = n.mod_u(8);
        if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
            sign = -sign;
        }
        if a.mod_u(4) == 3 && n.mod_u(4) == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a = Integer::from(a.modulo_ref(&n));
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol (a/n) ∈ {−1, 0, 1}.
pub fn kronecker(a: &Integer, n: &Integer) -> i32 {
    if *n == 0 {
        return if a.clone().abs() == 1 { 1 } else { 0 };
    }
    let a_even = a.is_even();
    if a_even && n.is_even() {
        return 0;
    }
    let mut n = n.clone();
    let v = n.find_one(0).unwrap_or(0);
    n >>= v;
    // (a/2) = 0 for even a, else (−1)^{(a²−1)/8}
    const TAB: [i32; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    let mut k = if v % 2 == 0 {
        1
    } else {
        TAB[a.mod_u(8) as usize]
    };
    if n < 0 {
        n = -n;
        if *a < 0 {
            k = -k;
        }
    }
    k * jacobi_big(a, &n)
}

/// [`kronecker`] on machine integers.
pub fn kronecker_i64(a: i64, n: i64) -> i32 {
    kronecker(&Integer::from(a), &Integer::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
        let mut acc = 1u64;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    }

    #[test]
    fn spec_examples() {
        assert_eq!(kronecker_i64(-4, 3), -1);
        assert_eq!(kronecker_i64(12, 3), 0);
        assert_eq!(kronecker_i64(5, 11), 1);
    }

    #[test]
    fn zero_and_two() {
        assert_eq!(kronecker_i64(1, 0), 1);
        assert_eq!(kronecker_i64(-1, 0), 1);
        assert_eq!(kronecker_i64(3, 0), 0);
        assert_eq!(kronecker_i64(4, 2), 0);
        assert_eq!(kronecker_i64(5, 2), -1);
        assert_eq!(kronecker_i64(-7, 2), 1);
        assert_eq!(kronecker_i64(-3, -1), -1);
        assert_eq!(kronecker_i64(3, -1), 1);
    }

    #[test]
    fn euler_criterion_small() {
        let primes: Vec<u64> = (3..1000u64)
            .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
            .collect();
        for &p in &primes {
            for d in -999i64..1000 {
                if d.rem_euclid(p as i64) == 0 {
                    continue;
                }
                let e = pow_mod(d.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                let expected = if e == 1 { 1 } else { -1 };
                assert_eq!(kronecker_i64(d, p as i64), expected, "({d}/{p})");
            }
        }
    }

    #[test]
    fn matches_gmp() {
        for a in -60i64..60 {
            for n in -60i64..60 {
                let x = Integer::from(a);
                let y = Integer::from(n);
                assert_eq!(kronecker(&x, &y), x.kronecker(&y), "({a}/{n})");
            }
        }
        let big = Integer::from(Integer::u_pow_u(10, 30)) + 7;
        let m = Integer::from(Integer::u_pow_u(3, 41)) - 2;
        assert_eq!(kronecker(&big, &m), big.kronecker(&m));
    }
}
