//! Coefficient kernels for the power basis of `Q(ζ_N)`.
//!
//! An element is stored as an integer numerator vector over a common positive
//! denominator, with `gcd(numerators, denominator) = 1`. That is a bijection
//! with "vector of reduced rationals", so the derived equality and hash are
//! exact. Values that fit in `i64` after normalization are always stored in
//! the `Small` variant and computed with checked `i128` arithmetic; anything
//! that overflows is redone with `BigInt`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::CycloField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Coeffs {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

impl Coeffs {
    pub(crate) fn zero(degree: usize) -> Self {
        Coeffs::Small { num: vec![0; degree], den: 1 }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            Coeffs::Small { num, .. } => num.len(),
            Coeffs::Big { num, .. } => num.len(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        match self {
            Coeffs::Small { num, .. } => num.iter().all(|&c| c == 0),
            Coeffs::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub(crate) fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Coeffs::Small { num, den } => {
                (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den))
            }
            Coeffs::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub(crate) fn from_small(num: Vec<i128>, den: i128) -> Self {
        debug_assert!(den != 0);
        let mut g = den;
        for &c in &num {
            if g == 1 || g == -1 {
                break;
            }
            g = gcd_i128(g, c);
        }
        let mut g = g.abs();
        if den < 0 {
            g = -g;
        }
        let den = den / g;
        let small_num: Option<Vec<i64>> = num.iter().map(|&c| i64::try_from(c / g).ok()).collect();
        match (small_num, i64::try_from(den)) {
            (Some(num), Ok(den)) => Coeffs::Small { num, den },
            _ => Coeffs::Big {
                num: num.iter().map(|&c| BigInt::from(c / g)).collect(),
                den: BigInt::from(den),
            },
        }
    }

    pub(crate) fn from_big(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -core::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in &mut num {
                *c /= &g;
            }
        }
        let small_num: Option<Vec<i64>> = num.iter().map(ToPrimitive::to_i64).collect();
        match (small_num, den.to_i64()) {
            (Some(num), Some(den)) => Coeffs::Small { num, den },
            _ => Coeffs::Big { num, den },
        }
    }

    pub(crate) fn add_sub(&self, other: &Self, subtract: bool) -> Self {
        if let (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) = (self, other) {
            if let Some(c) = add_sub_small(a, *da, b, *db, subtract) {
                return c;
            }
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let g = da.gcd(&db);
        let la = &db / &g;
        let lb = &da / &g;
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| if subtract { x * &la - y * &lb } else { x * &la + y * &lb })
            .collect();
        Coeffs::from_big(num, da * la)
    }

    pub(crate) fn neg(&self) -> Self {
        match self {
            Coeffs::Small { num, den } => {
                let n: Option<Vec<i64>> = num.iter().map(|c| c.checked_neg()).collect();
                match n {
                    Some(num) => Coeffs::Small { num, den: *den },
                    None => Coeffs::from_small(num.iter().map(|&c| -(c as i128)).collect(), *den as i128),
                }
            }
            Coeffs::Big { num, den } => Coeffs::Big { num: num.iter().map(|c| -c).collect(), den: den.clone() },
        }
    }

    pub(crate) fn mul(&self, other: &Self, field: &CycloField) -> Self {
        if let (Coeffs::Small { num: a, den: da }, Coeffs::Small { num: b, den: db }) = (self, other) {
            if let Some(c) = mul_small(a, *da, b, *db, field) {
                return c;
            }
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let d = a.len();
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = conv[..d].to_vec();
        for (p, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(field.power_row(p as u64)) {
                if *r != 0 {
                    *o += c * r;
                }
            }
        }
        Coeffs::from_big(out, da * db)
    }

    /// `Σ c_i ζ_target^{exponent(i)}`, reduced in `target`.
    pub(crate) fn map_powers(&self, target: &CycloField, exponent: impl Fn(usize) -> u64) -> Self {
        let d = target.degree();
        if let Coeffs::Small { num, den } = self {
            if let Some(out) = map_powers_small(num, target, &exponent) {
                return Coeffs::from_small(out, *den as i128);
            }
        }
        let (num, den) = self.to_big();
        let mut out = vec![BigInt::zero(); d];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(target.power_row(exponent(i))) {
                if *r != 0 {
                    *o += c * r;
                }
            }
        }
        Coeffs::from_big(out, den)
    }
}

fn add_sub_small(a: &[i64], da: i64, b: &[i64], db: i64, subtract: bool) -> Option<Coeffs> {
    let (da, db) = (da as i128, db as i128);
    let g = gcd_i128(da, db);
    let la = db / g;
    let lb = da / g;
    let mut num = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        let x = (x as i128).checked_mul(la)?;
        let y = (y as i128).checked_mul(lb)?;
        num.push(if subtract { x.checked_sub(y)? } else { x.checked_add(y)? });
    }
    Some(Coeffs::from_small(num, da.checked_mul(la)?))
}

fn mul_small(a: &[i64], da: i64, b: &[i64], db: i64, field: &CycloField) -> Option<Coeffs> {
    let d = a.len();
    let mut conv = vec![0i128; 2 * d - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as i128;
        for (slot, &y) in conv[i..i + d].iter_mut().zip(b) {
            if y != 0 {
                *slot = slot.checked_add(x.checked_mul(y as i128)?)?;
            }
        }
    }
    let (low, high) = conv.split_at_mut(d);
    for (k, &c) in high.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (o, &r) in low.iter_mut().zip(field.power_row((d + k) as u64)) {
            if r != 0 {
                *o = o.checked_add(c.checked_mul(r as i128)?)?;
            }
        }
    }
    conv.truncate(d);
    Some(Coeffs::from_small(conv, (da as i128) * (db as i128)))
}

fn map_powers_small(num: &[i64], target: &CycloField, exponent: &impl Fn(usize) -> u64) -> Option<Vec<i128>> {
    let mut out = vec![0i128; target.degree()];
    for (i, &c) in num.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = c as i128;
        for (o, &r) in out.iter_mut().zip(target.power_row(exponent(i))) {
            if r != 0 {
                *o = o.checked_add(c.checked_mul(r as i128)?)?;
            }
        }
    }
    Some(out)
}
