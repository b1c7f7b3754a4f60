use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use richdist_core::cyclo::euler_phi;
use richdist_core::{cyclotomic_polynomial, CycloField, CycloNum, Error, Rational};

const MAX_ORDER: u32 = 60;

fn field(n: u32) -> Arc<CycloField> {
    static FIELDS: OnceLock<Vec<Arc<CycloField>>> = OnceLock::new();
    FIELDS.get_or_init(|| (1..=MAX_ORDER * 3).map(|n| CycloField::new(n).unwrap()).collect())[n as usize - 1].clone()
}

/// Sparse sums `Σ c/d · ζ^k` with small coefficients.
fn element(n: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((0..n as i64, -4i64..=4, 1i64..=3), 0..5).prop_map(move |terms| {
        let f = field(n);
        let mut acc = CycloNum::zero(&f);
        for (k, c, d) in terms {
            let q = CycloNum::from_rational(&f, &Rational::new(c.into(), d.into()));
            acc = &acc + &(&q * &CycloNum::zeta_pow(&f, k));
        }
        acc
    })
}

fn triple() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
    (1..=MAX_ORDER).prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3500))]

    #[test]
    fn ring_and_conjugation_laws((a, b, c) in triple()) {
        let f = a.field().clone();
        let zero = CycloNum::zero(&f);
        let one = CycloNum::one(&f);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));

        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert!(a.norm_sq().is_real());
        prop_assert_eq!(a.norm_sq(), &a * &a.conj());
        prop_assert_eq!(a.is_real(), a.conj() == a);

        for (x, y) in [(&a, &b), (&b, &c)] {
            prop_assert_eq!(x.is_zero(), x.coeffs().iter().all(|q| q.is_zero()));
            prop_assert_eq!(x.coeffs().len(), f.degree());
            prop_assert_eq!(x == y, (x - y).is_zero());
        }
    }

    #[test]
    fn inverse_laws((a, b, _c) in triple()) {
        let one = CycloNum::one(a.field());
        if a.is_zero() {
            prop_assert_eq!(a.inv().unwrap_err(), Error::DivisionByZero);
        } else {
            let ai = a.inv().unwrap();
            prop_assert_eq!(&a * &ai, one);
            prop_assert_eq!(a.conj().inv().unwrap(), ai.conj());
            prop_assert_eq!(&b.try_div(&a).unwrap() * &a, b.clone());
        }
    }

    #[test]
    fn embedding_is_an_injective_homomorphism((a, b, _c) in triple(), t in 1u32..=3) {
        let target = field(a.order() * t);
        let (ea, eb) = (a.embed(&target).unwrap(), b.embed(&target).unwrap());
        prop_assert_eq!((&a + &b).embed(&target).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).embed(&target).unwrap(), &ea * &eb);
        prop_assert_eq!(a.conj().embed(&target).unwrap(), ea.conj());
        prop_assert_eq!(a == b, ea == eb);
        prop_assert_eq!(CycloNum::zeta(a.field()).embed(&target).unwrap(), CycloNum::zeta_pow(&target, t as i64));
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn cyclotomic_products_give_x_n_minus_one() {
    for n in 1..=200u32 {
        let mut product = vec![BigInt::one()];
        for d in (1..=n).filter(|d| n % d == 0) {
            let phi = cyclotomic_polynomial(d);
            assert_eq!(phi.len() as u32 - 1, euler_phi(d), "degree of phi_{d}");
            assert!(phi.last().unwrap().is_one(), "phi_{d} is monic");
            product = poly_mul(&product, &phi);
        }
        let mut expected = vec![BigInt::zero(); n as usize + 1];
        expected[0] = BigInt::from(-1);
        expected[n as usize] = BigInt::one();
        assert_eq!(product, expected, "n = {n}");
    }
}

#[test]
fn small_cyclotomic_polynomials() {
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
    assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
    assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    // first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
    assert!(cyclotomic_polynomial(105).iter().any(|c| c == &BigInt::from(-2)));
}

#[test]
fn worked_examples() {
    let f4 = field(4);
    let i = CycloNum::zeta(&f4);
    assert_eq!(&i * &i, CycloNum::from_integer(&f4, -1));
    let f3 = field(3);
    let z = CycloNum::zeta(&f3);
    let one = CycloNum::one(&f3);
    assert_eq!(&(&one + &z) * &(&one + &CycloNum::zeta_pow(&f3, 2)), one);
    assert_eq!((&one + &z).inv().unwrap(), -&z);
    let f7 = field(7);
    assert_eq!(CycloNum::zeta(&f7).inv().unwrap(), CycloNum::zeta_pow(&f7, 6));
    assert_eq!(
        CycloNum::from_integer(&f7, 2).inv().unwrap(),
        CycloNum::from_rational(&f7, &Rational::new(1.into(), 2.into()))
    );
}
