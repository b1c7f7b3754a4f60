use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeffs::Coeffs;
use super::field::CycloField;
use super::poly;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The four ring operations accepted by [`CycloNum::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// An element of `Q(ζ_N)` in canonical power-basis form.
///
/// Two elements of the same field are equal exactly when their coefficient
/// vectors are identical; `Hash` agrees with that. Elements of different
/// fields never compare equal, embed first.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    coeffs: Coeffs,
}

impl CycloNum {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNum { field: field.clone(), coeffs: Coeffs::zero(field.degree()) }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<CycloField>, value: i64) -> Self {
        let mut num = alloc::vec![0i128; field.degree()];
        num[0] = value as i128;
        CycloNum { field: field.clone(), coeffs: Coeffs::from_small(num, 1) }
    }

    pub fn from_rational(field: &Arc<CycloField>, value: &Rational) -> Self {
        let mut num = alloc::vec![BigInt::zero(); field.degree()];
        num[0] = value.numer().clone();
        CycloNum { field: field.clone(), coeffs: Coeffs::from_big(num, value.denom().clone()) }
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> Self {
        let n = field.order() as i64;
        let e = k.rem_euclid(n) as u64;
        let row = field.power_row(e);
        CycloNum {
            field: field.clone(),
            coeffs: Coeffs::from_small(row.iter().map(|&c| c as i128).collect(), 1),
        }
    }

    pub fn zeta(field: &Arc<CycloField>) -> Self {
        Self::zeta_pow(field, 1)
    }

    /// Builds an element from exactly `φ(N)` power-basis coefficients.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() != field.degree() {
            return Err(Error::InvalidParameter(alloc::format!(
                "expected {} coefficients for Q(zeta_{}), got {}",
                field.degree(),
                field.order(),
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycloNum { field: field.clone(), coeffs: Coeffs::from_big(num, den) })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    /// The reduced rational coefficients of `1, ζ, …, ζ^{φ(N)-1}`.
    pub fn coeffs(&self) -> Vec<Rational> {
        let (num, den) = self.coeffs.to_big();
        num.into_iter().map(|n| Rational::new(n, den.clone())).collect()
    }

    /// Common-denominator form: numerators and the positive denominator.
    pub fn numerators(&self) -> (Vec<BigInt>, BigInt) {
        self.coeffs.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Fixed by complex conjugation, i.e. real under the complex embedding.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// The rational value of an element lying in `Q`, if it does.
    pub fn as_rational(&self) -> Option<Rational> {
        let c = self.coeffs();
        if c[1..].iter().all(Zero::is_zero) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.order() != other.field.order() {
            return Err(Error::FieldMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    fn with(&self, coeffs: Coeffs) -> Self {
        debug_assert_eq!(coeffs.len(), self.field.degree());
        CycloNum { field: self.field.clone(), coeffs }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.with(self.coeffs.add_sub(&other.coeffs, false)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.with(self.coeffs.add_sub(&other.coeffs, true)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.with(self.coeffs.mul(&other.coeffs, &self.field)))
    }

    /// Exact ring operation; `Neg` ignores `other` apart from the field check.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Neg => {
                self.check_field(other)?;
                Ok(-self)
            }
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<Rational> = self
            .field
            .phi_coeffs()
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let inv = poly::inverse_mod(&self.coeffs(), &modulus).ok_or(Error::DivisionByZero)?;
        let mut full = alloc::vec![Rational::zero(); self.field.degree()];
        for (slot, c) in full.iter_mut().zip(inv) {
            *slot = c;
        }
        CycloNum::from_coeffs(&self.field, &full)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Complex conjugation: the automorphism `ζ ↦ ζ^{N-1}`.
    pub fn conj(&self) -> Self {
        let n = self.field.order() as u64;
        self.with(self.coeffs.map_powers(&self.field, |i| (n - i as u64 % n) % n))
    }

    /// Image under `Q(ζ_N) → Q(ζ_M)`, `ζ_N ↦ ζ_M^{M/N}`.
    pub fn embed(&self, target: &Arc<CycloField>) -> Result<Self> {
        let (from, into) = (self.field.order(), target.order());
        if into % from != 0 {
            return Err(Error::NotASubfield { from, into });
        }
        if from == into {
            return Ok(self.clone());
        }
        let step = (into / from) as u64;
        Ok(CycloNum { field: target.clone(), coeffs: self.coeffs.map_powers(target, |i| i as u64 * step) })
    }

    /// `|self|²` as a real field element.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

/// Operator forms panic on a field mismatch; use the `try_*` methods when the
/// fields are not known to agree.
impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.try_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.try_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.try_mul(rhs).expect("field mismatch in *")
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        self.with(self.coeffs.neg())
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q(zeta_{})", self, self.order())
    }
}

/// Polynomial in `z = ζ_N`, e.g. `2 - z - 1/2*z^3`.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
