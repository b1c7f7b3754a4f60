//! Dense univariate polynomials over the rationals, only as much as inversion needs.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn is_zero(p: &RatPoly) -> bool {
    p.iter().all(Zero::is_zero)
}

fn div_rem(num: &RatPoly, den: &RatPoly) -> (RatPoly, RatPoly) {
    let mut rem = num.clone();
    trim(&mut rem);
    let dn = den.len() - 1;
    let lead = &den[dn];
    if rem.len() <= dn {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dn] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            let t = &c * dj;
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

fn sub_mul(a: &RatPoly, q: &RatPoly, b: &RatPoly) -> RatPoly {
    let len = a.len().max(if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 });
    let mut out = vec![BigRational::zero(); len];
    for (o, x) in out.iter_mut().zip(a) {
        *o = x.clone();
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(&mut out);
    out
}

/// Scales `r` to leading coefficient 1, and `s` by the same factor.
fn make_monic(r: &mut RatPoly, s: &mut RatPoly) {
    let lead = r.last().expect("nonzero polynomial").clone();
    if lead.is_one() {
        return;
    }
    for c in r.iter_mut().chain(s.iter_mut()) {
        *c = &*c / &lead;
    }
}

/// Inverse of `a` modulo the irreducible `modulus`, or `None` when `a ≡ 0`.
pub(crate) fn inverse_mod(a: &RatPoly, modulus: &RatPoly) -> Option<RatPoly> {
    let mut r0 = modulus.clone();
    trim(&mut r0);
    let mut r1 = a.clone();
    trim(&mut r1);
    if is_zero(&r1) {
        return None;
    }
    let mut s0: RatPoly = Vec::new();
    let mut s1: RatPoly = vec![BigRational::from_integer(1.into())];
    while !is_zero(&r1) {
        make_monic(&mut r1, &mut s1);
        let (q, r) = div_rem(&r0, &r1);
        let s = sub_mul(&s0, &q, &s1);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
    }
    // gcd is r0; the modulus is irreducible, so it is a nonzero constant unless a ≡ 0
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].clone();
    let (_, mut inv) = div_rem(&s0, modulus);
    for c in &mut inv {
        *c = &*c / &g;
    }
    Some(inv)
}
