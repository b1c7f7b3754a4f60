//! Certified fixed-point interval arithmetic and the complex embedding.
//!
//! An [`Interval`] is `[lo, hi] · 2^-scale` with `BigInt` endpoints; every
//! operation rounds outward, so the true value never leaves the enclosure.
//! Cosines and sines of rational turns come from Taylor series with explicit
//! truncation and rounding budgets, and π from Machin's formula.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::CycloField;
use super::num::{CycloNum, Rational};
use crate::error::{Error, Result};

/// Extra bits carried through every evaluation beyond the requested precision.
const GUARD_BITS: u32 = 24;

/// Precision used by the first round of [`compare_real`].
pub const START_PRECISION: u32 = 64;

/// Closed interval `[lo, hi] · 2^-scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    scale: u32,
}

fn fixed_to_f64(v: &BigInt, scale: u32) -> f64 {
    const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;
    if scale > 64 {
        let shifted: BigInt = v >> (scale - 64) as usize;
        shifted.to_f64().unwrap_or(f64::NAN) / TWO_POW_64
    } else {
        let mut x = v.to_f64().unwrap_or(f64::NAN);
        for _ in 0..scale {
            x /= 2.0;
        }
        x
    }
}

impl Interval {
    pub fn point(value: BigInt, scale: u32) -> Self {
        Interval { lo: value.clone(), hi: value, scale }
    }

    pub fn zero(scale: u32) -> Self {
        Self::point(BigInt::zero(), scale)
    }

    fn new(lo: BigInt, hi: BigInt, scale: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, scale }
    }

    /// Scaled endpoints; the interval is `[lo, hi] / 2^scale`.
    pub fn raw(&self) -> (&BigInt, &BigInt, u32) {
        (&self.lo, &self.hi, self.scale)
    }

    pub fn lo_f64(&self) -> f64 {
        fixed_to_f64(&self.lo, self.scale)
    }

    pub fn hi_f64(&self) -> f64 {
        fixed_to_f64(&self.hi, self.scale)
    }

    pub fn mid_f64(&self) -> f64 {
        fixed_to_f64(&((&self.lo + &self.hi) >> 1usize), self.scale)
    }

    /// Width as a float (rounded, informational).
    pub fn width_f64(&self) -> f64 {
        fixed_to_f64(&(&self.hi - &self.lo), self.scale)
    }

    /// The exact midpoint as a degenerate interval one bit finer.
    pub fn midpoint(&self) -> Interval {
        Interval::point(&self.lo + &self.hi, self.scale + 1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Whether `other` lies inside `self` (scales may differ).
    pub fn contains(&self, other: &Interval) -> bool {
        let s = self.scale.max(other.scale);
        let up = |v: &BigInt, from: u32| v << (s - from) as usize;
        up(&self.lo, self.scale) <= up(&other.lo, other.scale)
            && up(&other.hi, other.scale) <= up(&self.hi, self.scale)
    }

    /// `Less` if `self` lies entirely below `other`, `Greater` if entirely
    /// above, `None` when they overlap.
    pub fn separation(&self, other: &Interval) -> Option<Ordering> {
        let s = self.scale.max(other.scale);
        let up = |v: &BigInt, from: u32| v << (s - from) as usize;
        if up(&self.hi, self.scale) < up(&other.lo, other.scale) {
            Some(Ordering::Less)
        } else if up(&other.hi, other.scale) < up(&self.lo, self.scale) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Certified `lo(self) > threshold`, with the float taken as its exact dyadic value.
    pub fn lower_exceeds(&self, threshold: f64) -> bool {
        let t = match Rational::from_float(threshold) {
            Some(t) => t,
            None => return false,
        };
        // lo / 2^scale > p / q  <=>  lo * q > p * 2^scale
        &self.lo * t.denom() > (t.numer() << self.scale as usize)
    }

    fn same_scale(&self, other: &Interval) {
        assert_eq!(self.scale, other.scale, "interval scale mismatch");
    }

    pub fn add(&self, other: &Interval) -> Interval {
        self.same_scale(other);
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi, self.scale)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.same_scale(other);
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo, self.scale)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo, self.scale)
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        if k.is_negative() {
            Interval::new(&self.hi * k, &self.lo * k, self.scale)
        } else {
            Interval::new(&self.lo * k, &self.hi * k, self.scale)
        }
    }

    /// Division by a positive integer, rounding outward.
    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(k.is_positive(), "div_int needs a positive divisor");
        Interval::new(self.lo.div_floor(k), self.hi.div_ceil(k), self.scale)
    }

    pub fn mul_rational(&self, r: &Rational) -> Interval {
        self.mul_int(r.numer()).div_int(r.denom())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        self.same_scale(other);
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        let unit = BigInt::one() << self.scale as usize;
        Interval::new(min.div_floor(&unit), max.div_ceil(&unit), self.scale)
    }

    fn widen(center: BigInt, radius: u64, scale: u32) -> Interval {
        Interval::new(&center - radius, &center + radius, scale)
    }
}

/// A complex interval box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }

    pub fn contains(&self, other: &ComplexBox) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }
}

/// Enclosure of `atan(1/q)` at the given scale (`q ≥ 2`).
fn atan_inv(q: u64, scale: u32) -> Interval {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut power = (BigInt::one() << scale as usize).div_floor(&q);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = power.div_floor(&BigInt::from(2 * k + 1));
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = power.div_floor(&q2);
        k += 1;
    }
    // per-term rounding ≤ k + 2 ulps, tail ≤ k + 2 ulps
    let radius = (k + 2) * (k + 2);
    Interval::widen(sum, radius, scale)
}

/// Enclosure of π by Machin's formula.
pub fn pi_interval(scale: u32) -> Interval {
    let a = atan_inv(5, scale).mul_int(&BigInt::from(16));
    let b = atan_inv(239, scale).mul_int(&BigInt::from(4));
    a.sub(&b)
}

/// Enclosures of `(sin x, cos x)` for the exact dyadic `x = xs · 2^-scale`, `0 ≤ x < 1`.
fn sin_cos_point(xs: &BigInt, scale: u32) -> (Interval, Interval) {
    let unit = BigInt::one() << scale as usize;
    debug_assert!(!xs.is_negative() && xs < &unit);
    if xs.is_zero() {
        return (Interval::zero(scale), Interval::point(unit, scale));
    }
    let x2 = xs * xs;
    let denom_base = &unit * &unit;
    let series = |first: BigInt, offset: u64| {
        let mut term = first;
        let mut sum = BigInt::zero();
        let mut k: u64 = 0;
        while !term.is_zero() {
            if k.is_multiple_of(2) {
                sum += &term;
            } else {
                sum -= &term;
            }
            let d = (2 * k + 1 + offset) * (2 * k + 2 + offset);
            term = (&term * &x2).div_floor(&(&denom_base * d));
            k += 1;
        }
        // term k carries ≤ k ulps of rounding, tail ≤ k + 1 ulps
        Interval::widen(sum, (k + 1) * (k + 1) + 1, scale)
    };
    (series(xs.clone(), 1), series(unit.clone(), 0))
}

/// Enclosures of `(cos 2πj/n, sin 2πj/n)` at the given scale.
pub fn cos_sin_turn(j: u64, n: u64, scale: u32) -> (Interval, Interval) {
    assert!(n > 0);
    let j = j % n;
    // angle = (π/4)·u with u = 8j/n; fold into [0, π/4] by octant symmetry
    let octant = (8 * j) / n;
    let frac = Rational::new(BigInt::from(8 * j - octant * n), BigInt::from(n));
    let g = if octant.is_multiple_of(2) { frac } else { Rational::one() - frac } / Rational::from_integer(4.into());

    let (sin_a, cos_a) = if g.is_zero() {
        (Interval::zero(scale), Interval::point(BigInt::one() << scale as usize, scale))
    } else {
        let alpha = pi_interval(scale).mul_rational(&g);
        let lo = if alpha.lo.is_negative() { BigInt::zero() } else { alpha.lo.clone() };
        let (sin_lo, cos_lo) = sin_cos_point(&lo, scale);
        let (sin_hi, cos_hi) = sin_cos_point(&alpha.hi, scale);
        // sin increasing and cos decreasing on [0, π/2]
        (Interval::new(sin_lo.lo, sin_hi.hi, scale), Interval::new(cos_hi.lo, cos_lo.hi, scale))
    };
    let (c, s) = (cos_a, sin_a);
    match octant {
        0 => (c, s),
        1 => (s, c),
        2 => (s.neg(), c),
        3 => (c.neg(), s),
        4 => (c.neg(), s.neg()),
        5 => (s.neg(), c.neg()),
        6 => (s, c.neg()),
        _ => (c, s.neg()),
    }
}

/// Cached enclosures of `ζ_N^j`, `0 ≤ j < φ(N)`, for evaluating many elements of one field.
pub struct FieldEmbedding {
    field: Arc<CycloField>,
    precision_bits: u32,
    scale: u32,
    basis: Vec<(Interval, Interval)>,
}

impl FieldEmbedding {
    /// `precision_bits` below 16 is raised to 16.
    pub fn new(field: &Arc<CycloField>, precision_bits: u32) -> Self {
        let precision_bits = precision_bits.max(16);
        let scale = precision_bits + GUARD_BITS;
        let n = field.order() as u64;
        let basis = (0..field.degree() as u64).map(|j| cos_sin_turn(j, n, scale)).collect();
        FieldEmbedding { field: field.clone(), precision_bits, scale, basis }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    fn combine(&self, a: &CycloNum, part: impl Fn(&(Interval, Interval)) -> &Interval) -> Interval {
        let (num, den) = a.numerators();
        let mut acc = Interval::zero(self.scale);
        for (c, b) in num.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&part(b).mul_int(c));
            }
        }
        acc.div_int(&den)
    }

    pub fn eval(&self, a: &CycloNum) -> Result<ComplexBox> {
        if a.order() != self.field.order() {
            return Err(Error::FieldMismatch { left: a.order(), right: self.field.order() });
        }
        Ok(ComplexBox { re: self.combine(a, |b| &b.0), im: self.combine(a, |b| &b.1) })
    }

    pub fn eval_re(&self, a: &CycloNum) -> Result<Interval> {
        if a.order() != self.field.order() {
            return Err(Error::FieldMismatch { left: a.order(), right: self.field.order() });
        }
        Ok(self.combine(a, |b| &b.0))
    }
}

/// Certified box around the complex embedding of `a` (`ζ ↦ e^{2πi/N}`).
pub fn eval_interval(a: &CycloNum, precision_bits: u32) -> ComplexBox {
    FieldEmbedding::new(a.field(), precision_bits).eval(a).expect("same field")
}

/// Exact ordering of two real elements of the same field.
///
/// Canonical forms decide equality; otherwise both values are enclosed at
/// 64 bits and the precision doubles until the enclosures separate.
pub fn compare_real(a: &CycloNum, b: &CycloNum) -> Result<Ordering> {
    if a.order() != b.order() {
        return Err(Error::FieldMismatch { left: a.order(), right: b.order() });
    }
    if !a.is_real() || !b.is_real() {
        return Err(Error::NotReal);
    }
    if a == b {
        return Ok(Ordering::Equal);
    }
    let mut bits = START_PRECISION;
    loop {
        let emb = FieldEmbedding::new(a.field(), bits);
        let ia = emb.eval_re(a)?;
        let ib = emb.eval_re(b)?;
        if let Some(ord) = ia.separation(&ib) {
            return Ok(ord);
        }
        bits *= 2;
    }
}
