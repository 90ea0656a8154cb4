//! Class groups of imaginary quadratic fields through reduced binary quadratic forms.

use std::collections::BTreeSet;

use serde::Serialize;

use super::field::QuadraticField;
use crate::error::{Error, Result};

/// Largest |Δ| accepted by the form enumeration.
pub const FORM_ENUMERATION_LIMIT: i64 = 100_000_000;

/// Positive definite form ax² + bxy + cy².
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroupSummary {
    /// Class number: the count of reduced primitive forms.
    pub h: u64,
    /// 2-rank, from the ambiguous forms (2-torsion) of the group.
    pub two_rank: u32,
    pub form_count: u64,
    pub ambiguous_count: u64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// (g, x, y) with x·a + y·b = g = gcd(a, b).
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

impl Form {
    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    /// Ambiguous forms are the reduced forms of order dividing 2.
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.b == self.a || self.a == self.c
    }

    pub fn reduce(mut self) -> Form {
        let d = self.disc();
        loop {
            if !(-self.a < self.b && self.b <= self.a) {
                // b ← b + 2ka with k chosen to land in (−a, a]
                let k = (self.a - self.b).div_euclid(2 * self.a);
                self.b += 2 * k * self.a;
                self.c = (self.b * self.b - d) / (4 * self.a);
            }
            if self.a > self.c {
                self = Form {
                    a: self.c,
                    b: -self.b,
                    c: self.a,
                };
                continue;
            }
            if self.a == self.c && self.b < 0 {
                self.b = -self.b;
            }
            return self;
        }
    }

    /// Gaussian composition followed by reduction.
    pub fn compose(&self, other: &Form) -> Form {
        let d = self.disc();
        let (f1, f2) = if self.a > other.a {
            (other, self)
        } else {
            (self, other)
        };
        let s = (f1.b + f2.b) / 2;
        let n = f2.b - s;
        let (dd, y1) = if f2.a % f1.a == 0 {
            (f1.a, 0)
        } else {
            let (g, u, _) = ext_gcd(f2.a, f1.a);
            (g, u)
        };
        let (d1, x2, y2) = if s % dd == 0 {
            (dd, 0, -1)
        } else {
            let (g, u, v) = ext_gcd(s, dd);
            (g, u, -v)
        };
        let v1 = f1.a / d1;
        let v2 = f2.a / d1;
        let r = ((y1 as i128 * y2 as i128 * n as i128 - x2 as i128 * f2.c as i128)
            .rem_euclid(v1 as i128)) as i64;
        let b3 = f2.b + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 as i128 * b3 as i128 - d as i128) / (4 * a3 as i128);
        debug_assert_eq!((b3 as i128 * b3 as i128 - d as i128) % (4 * a3 as i128), 0);
        Form {
            a: a3,
            b: b3,
            c: c3 as i64,
        }
        .reduce()
    }
}

/// All reduced primitive positive definite forms of discriminant `d < 0`.
pub fn reduced_forms(d: i64) -> Vec<Form> {
    let mut out = Vec::new();
    let a_max = ((-d) as f64 / 3.0).sqrt() as i64 + 1;
    for a in 1..=a_max {
        let mut b = -a;
        // b ≡ d (mod 2)
        if (b - d).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let f = Form { a, b, c };
                if c >= a && f.is_reduced() && gcd(gcd(a, b), c) == 1 {
                    out.push(f);
                }
            }
            b += 2;
        }
    }
    out
}

/// h and the 2-rank of Cl_K for imaginary K with |Δ| ≤ 10⁸.
pub fn class_group_imaginary(k: &QuadraticField) -> Result<ClassGroupSummary> {
    if !k.is_imaginary() {
        return Err(Error::argument(
            "exact class groups are computed only for imaginary fields",
        ));
    }
    let d = k
        .disc_i64()
        .filter(|d| -d <= FORM_ENUMERATION_LIMIT)
        .ok_or_else(|| Error::capacity(format!("|Δ| = {} above 10^8", k.disc().clone().abs())))?;
    let forms = reduced_forms(d);
    let ambiguous: BTreeSet<Form> = forms.iter().copied().filter(Form::is_ambiguous).collect();
    let count = ambiguous.len() as u64;
    if !count.is_power_of_two() {
        return Err(Error::Indeterminate(format!(
            "{count} ambiguous forms is not a power of two"
        )));
    }
    // the ambiguous classes must form the 2-torsion subgroup
    for f in &ambiguous {
        if f.compose(f).a != 1 {
            return Err(Error::Indeterminate(format!("{f:?} is not 2-torsion")));
        }
        for g in &ambiguous {
            if !ambiguous.contains(&f.compose(g)) {
                return Err(Error::Indeterminate(format!(
                    "{f:?}·{g:?} leaves the ambiguous set"
                )));
            }
        }
    }
    Ok(ClassGroupSummary {
        h: forms.len() as u64,
        two_rank: count.trailing_zeros(),
        form_count: forms.len() as u64,
        ambiguous_count: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::make_field_i64;

    #[test]
    fn small_class_numbers() {
        // h(−3)=1, h(−4)=1, h(−23)=3, h(−47)=5, h(−56)=4, h(−84)=4
        for (d, h, rank) in [(-3, 1, 0), (-4, 1, 0), (-23, 3, 0), (-47, 5, 0), (-56, 4, 1), (-84, 4, 2)] {
            let s = class_group_imaginary(&make_field_i64(d).unwrap()).unwrap();
            assert_eq!((s.h, s.two_rank), (h, rank), "Δ = {d}");
        }
    }

    #[test]
    fn forms_of_minus_23() {
        let f = reduced_forms(-23);
        assert_eq!(
            f,
            vec![
                Form { a: 1, b: 1, c: 6 },
                Form { a: 2, b: -1, c: 3 },
                Form { a: 2, b: 1, c: 3 }
            ]
        );
    }

    #[test]
    fn composition_is_a_group_law() {
        let forms = reduced_forms(-23);
        let id = forms[0];
        for f in &forms {
            assert_eq!(f.compose(&id), *f);
        }
        let g = forms[2];
        // order 3
        assert_eq!(g.compose(&g).compose(&g), id);
        assert_ne!(g.compose(&g), id);
    }

    #[test]
    fn worked_example_two_rank() {
        let k = make_field_i64(-19399380).unwrap();
        let s = class_group_imaginary(&k).unwrap();
        assert_eq!(s.two_rank, 7);
        assert_eq!(s.h % 128, 0);
    }

    #[test]
    fn real_field_rejected() {
        assert!(class_group_imaginary(&make_field_i64(12).unwrap()).is_err());
    }
}
