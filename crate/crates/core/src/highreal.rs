//! Rigorous real enclosures at 128-bit (≈38 decimal digit) precision.
//!
//! A [`HighReal`] is a closed interval `[lo, hi]` of MPFR floats. Every
//! operation rounds the lower endpoint toward −∞ and the upper endpoint toward
//! +∞, so the true value of any expression built from exact inputs is always
//! contained in the result. Comparisons return [`Certified`]; an enclosure that
//! straddles the other operand yields [`Certified::Indeterminate`] rather than a
//! guess.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round, Special};
use rug::{Float, Integer, Rational};

/// Working precision in bits.
pub const PRECISION: u32 = 128;

/// Outcome of comparing two enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certified {
    Less,
    Greater,
    Indeterminate,
}

#[derive(Clone, PartialEq)]
pub struct HighReal {
    lo: Float,
    hi: Float,
}

fn down<T>(val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(PRECISION, val, Round::Down).0
}

fn up<T>(val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(PRECISION, val, Round::Up).0
}

impl HighReal {
    fn from_bounds(lo: Float, hi: Float) -> Self {
        if lo.is_nan() || hi.is_nan() {
            return Self::entire();
        }
        debug_assert!(lo <= hi, "inverted enclosure");
        HighReal { lo, hi }
    }

    /// The whole real line; the result of undefined operations.
    pub fn entire() -> Self {
        HighReal {
            lo: Float::with_val(PRECISION, Special::NegInfinity),
            hi: Float::with_val(PRECISION, Special::Infinity),
        }
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_bounds(down(v), up(v))
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_bounds(down(v), up(v))
    }

    /// Exact for every finite `f64` (53 bits fit in the working precision).
    pub fn from_f64(v: f64) -> Self {
        Self::from_bounds(down(v), up(v))
    }

    pub fn from_integer(v: &Integer) -> Self {
        Self::from_bounds(down(v), up(v))
    }

    pub fn from_rational(v: &Rational) -> Self {
        Self::from_bounds(down(v), up(v))
    }

    /// Outward-rounded enclosure of an MPFR float of any precision.
    pub fn from_float(v: &Float) -> Self {
        Self::from_bounds(down(v), up(v))
    }

    /// Enclosure of `num / den` for integers.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::from((num, den)))
    }

    /// Smallest enclosure containing both arguments.
    pub fn hull(&self, other: &HighReal) -> HighReal {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Self::from_bounds(lo, hi)
    }

    pub fn pi() -> Self {
        Self::from_bounds(down(Constant::Pi), up(Constant::Pi))
    }

    pub fn ln2() -> Self {
        Self::from_bounds(down(Constant::Log2), up(Constant::Log2))
    }

    /// Euler–Mascheroni constant γ.
    pub fn euler_gamma() -> Self {
        Self::from_bounds(down(Constant::Euler), up(Constant::Euler))
    }

    pub fn lower(&self) -> &Float {
        &self.lo
    }

    pub fn upper(&self) -> &Float {
        &self.hi
    }

    pub fn lower_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    pub fn upper_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }

    /// Midpoint rounded to the nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return f64::NAN;
        }
        let sum = Float::with_val(PRECISION + 1, &self.lo + &self.hi);
        (sum / 2u32).to_f64()
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        up(&self.hi - &self.lo).to_f64_round(Round::Up)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains(&self, other: &HighReal) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Certified order of `self` relative to `other`.
    pub fn cmp_certified(&self, other: &HighReal) -> Certified {
        if self.hi < other.lo {
            Certified::Less
        } else if self.lo > other.hi {
            Certified::Greater
        } else {
            Certified::Indeterminate
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    /// `⌊x⌋` when the enclosure pins it down.
    pub fn floor(&self) -> Option<Integer> {
        let a = self.lo.clone().floor().to_integer()?;
        let b = self.hi.clone().floor().to_integer()?;
        (a == b).then_some(a)
    }

    /// `⌈x⌉` when the enclosure pins it down.
    pub fn ceil(&self) -> Option<Integer> {
        let a = self.lo.clone().ceil().to_integer()?;
        let b = self.hi.clone().ceil().to_integer()?;
        (a == b).then_some(a)
    }

    pub fn abs(&self) -> HighReal {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            let neg_lo = Float::with_val(PRECISION, -&self.lo);
            let hi = if neg_lo > self.hi { neg_lo } else { self.hi.clone() };
            Self::from_bounds(Float::new(PRECISION), hi)
        }
    }

    /// Natural logarithm. Enclosures reaching zero or below give an unbounded result.
    pub fn ln(&self) -> HighReal {
        if self.hi <= 0 {
            return Self::entire();
        }
        let lo = if self.lo <= 0 {
            Float::with_val(PRECISION, Special::NegInfinity)
        } else {
            down(self.lo.ln_ref())
        };
        Self::from_bounds(lo, up(self.hi.ln_ref()))
    }

    pub fn exp(&self) -> HighReal {
        Self::from_bounds(down(self.lo.exp_ref()), up(self.hi.exp_ref()))
    }

    pub fn sqrt(&self) -> HighReal {
        if self.lo < 0 {
            return Self::entire();
        }
        Self::from_bounds(down(self.lo.sqrt_ref()), up(self.hi.sqrt_ref()))
    }

    pub fn cbrt(&self) -> HighReal {
        Self::from_bounds(down(self.lo.cbrt_ref()), up(self.hi.cbrt_ref()))
    }

    pub fn square(&self) -> HighReal {
        self.abs() * self.abs()
    }

    pub fn recip(&self) -> HighReal {
        Self::one() / self
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, n: u32) -> HighReal {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `x^y` for `x > 0` as `exp(y ln x)`.
    pub fn powf(&self, y: &HighReal) -> HighReal {
        (y * &self.ln()).exp()
    }

    /// Decimal rendering `[lo, hi]` with `digits` significant digits.
    pub fn to_interval_string(&self, digits: usize) -> String {
        format!(
            "[{}, {}]",
            self.lo.to_string_radix_round(10, Some(digits), Round::Down),
            self.hi.to_string_radix_round(10, Some(digits), Round::Up)
        )
    }
}

impl fmt::Debug for HighReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HighReal{}", self.to_interval_string(40))
    }
}

impl fmt::Display for HighReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_interval_string(f.precision().unwrap_or(20)))
    }
}

/// Serialized as `{"approx": f64, "lo": "...", "hi": "..."}` with 40 outward-rounded digits.
impl serde::Serialize for HighReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("HighReal", 3)?;
        st.serialize_field("approx", &self.to_f64())?;
        st.serialize_field("lo", &self.lo.to_string_radix_round(10, Some(40), Round::Down))?;
        st.serialize_field("hi", &self.hi.to_string_radix_round(10, Some(40), Round::Up))?;
        st.end()
    }
}

impl From<i64> for HighReal {
    fn from(v: i64) -> Self {
        HighReal::from_i64(v)
    }
}

impl From<u64> for HighReal {
    fn from(v: u64) -> Self {
        HighReal::from_u64(v)
    }
}

impl From<&Integer> for HighReal {
    fn from(v: &Integer) -> Self {
        HighReal::from_integer(v)
    }
}

impl Neg for &HighReal {
    type Output = HighReal;
    fn neg(self) -> HighReal {
        HighReal::from_bounds(
            Float::with_val(PRECISION, -&self.hi),
            Float::with_val(PRECISION, -&self.lo),
        )
    }
}

impl Neg for HighReal {
    type Output = HighReal;
    fn neg(self) -> HighReal {
        -&self
    }
}

impl Add<&HighReal> for &HighReal {
    type Output = HighReal;
    fn add(self, rhs: &HighReal) -> HighReal {
        HighReal::from_bounds(down(&self.lo + &rhs.lo), up(&self.hi + &rhs.hi))
    }
}

impl Sub<&HighReal> for &HighReal {
    type Output = HighReal;
    fn sub(self, rhs: &HighReal) -> HighReal {
        HighReal::from_bounds(down(&self.lo - &rhs.hi), up(&self.hi - &rhs.lo))
    }
}

impl Mul<&HighReal> for &HighReal {
    type Output = HighReal;
    fn mul(self, rhs: &HighReal) -> HighReal {
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            // 0 · ∞ only arises for unbounded operands.
            if (a.is_zero() && b.is_infinite()) || (a.is_infinite() && b.is_zero()) {
                return HighReal::entire();
            }
            let d = down(a * b);
            let u = up(a * b);
            if lo.as_ref().map_or(true, |l| d < *l) {
                lo = Some(d);
            }
            if hi.as_ref().map_or(true, |h| u > *h) {
                hi = Some(u);
            }
        }
        HighReal::from_bounds(lo.unwrap(), hi.unwrap())
    }
}

impl Div<&HighReal> for &HighReal {
    type Output = HighReal;
    fn div(self, rhs: &HighReal) -> HighReal {
        if rhs.lo <= 0 && rhs.hi >= 0 {
            return HighReal::entire();
        }
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = down(a / b);
            let u = up(a / b);
            if lo.as_ref().map_or(true, |l| d < *l) {
                lo = Some(d);
            }
            if hi.as_ref().map_or(true, |h| u > *h) {
                hi = Some(u);
            }
        }
        HighReal::from_bounds(lo.unwrap(), hi.unwrap())
    }
}

macro_rules! forward_owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<HighReal> for HighReal {
            type Output = HighReal;
            fn $method(self, rhs: HighReal) -> HighReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&HighReal> for HighReal {
            type Output = HighReal;
            fn $method(self, rhs: &HighReal) -> HighReal {
                (&self).$method(rhs)
            }
        }
        impl $tr<HighReal> for &HighReal {
            type Output = HighReal;
            fn $method(self, rhs: HighReal) -> HighReal {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_ops!(Add add, Sub sub, Mul mul, Div div);
