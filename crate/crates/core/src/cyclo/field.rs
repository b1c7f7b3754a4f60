use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Divisors of `n` in ascending order.
pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n as u64 {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact quotient of `num` by the monic polynomial `den` (coefficients low to high).
///
/// Panics if the division leaves a remainder.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let qlen = rem.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// The `n`-th cyclotomic polynomial, coefficients from the constant term up.
///
/// Computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d` of `n`.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    let divs = divisors(n);
    let mut table: Vec<(u32, Vec<BigInt>)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut poly = vec![BigInt::zero(); d as usize + 1];
        poly[0] = BigInt::from(-1);
        poly[d as usize] = BigInt::one();
        for (e, phi_e) in &table {
            if d % e == 0 {
                poly = exact_div_monic(&poly, phi_e);
            }
        }
        table.push((d, poly));
    }
    table.pop().map(|(_, p)| p).unwrap()
}

/// The field `Q(ζ_N)` together with the data needed to reduce modulo `Φ_N`.
///
/// `powers[j]` holds `ζ^j` in the power basis `1, ζ, …, ζ^{φ(N)-1}` for
/// `0 <= j < N`; every reduction in the crate is a linear combination of these
/// rows since `ζ^N = 1`.
pub struct CycloField {
    order: u32,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let phi: Vec<i64> = cyclotomic_polynomial(order)
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
            .collect();
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut row = vec![0i64; degree];
        row[0] = 1;
        for _ in 0..order {
            powers.push(row.clone());
            // multiply by x and fold the overflowing top coefficient back via Φ_N
            let top = row[degree - 1];
            for i in (1..degree).rev() {
                row[i] = row[i - 1];
            }
            row[0] = 0;
            if top != 0 {
                for (r, p) in row.iter_mut().zip(&phi) {
                    *r = r
                        .checked_sub(top.checked_mul(*p).expect("power table overflow"))
                        .expect("power table overflow");
                }
            }
        }
        debug_assert_eq!(row[0], 1);
        Ok(Arc::new(CycloField { order, phi, powers }))
    }

    /// The smallest field containing both `Q(ζ_a)` and `Q(ζ_b)`: `Q(ζ_lcm(a, b))`.
    pub fn join(a: &Arc<Self>, b: &Arc<Self>) -> Arc<Self> {
        let l = a.order.lcm(&b.order);
        if l == a.order {
            a.clone()
        } else if l == b.order {
            b.clone()
        } else {
            CycloField::new(l).expect("lcm of positive orders is positive")
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(N)`, the number of power-basis coefficients.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of `Φ_N`, constant term first.
    pub fn phi_coeffs(&self) -> &[i64] {
        &self.phi
    }

    /// `ζ^j` reduced, for any `j`.
    pub(crate) fn power_row(&self, j: u64) -> &[i64] {
        &self.powers[(j % self.order as u64) as usize]
    }
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.order)
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CycloField {}
