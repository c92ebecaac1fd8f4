use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use gmf::analysis::{sign_density, st_measure};
use gmf::arith::sieve_primes;
use gmf::eigen::{load_eigenform, Eigenform, FormSpec, LoadOptions, CATALOGUE};
use gmf::exponents::{exponents_from_eigenform, exponents_from_series, ExponentSeries, PrimeExponents};
use gmf::series::{expand_product, PowerSeries};

const FORM_BOUND: usize = 10_000;

fn forms() -> &'static [Eigenform] {
    static FORMS: OnceLock<Vec<Eigenform>> = OnceLock::new();
    FORMS.get_or_init(|| {
        CATALOGUE
            .iter()
            .map(|e| load_eigenform(&FormSpec::Catalogue(e.level), FORM_BOUND, &LoadOptions::default()).unwrap())
            .collect()
    })
}

fn form(level: u64) -> &'static Eigenform {
    forms().iter().find(|g| g.level() == level).unwrap()
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn unit_series(order: usize) -> impl Strategy<Value = PowerSeries<BigRational>> {
    let head = (1i64..=5, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| {
        let v = BigRational::new(n.into(), d.into());
        if neg {
            -v
        } else {
            v
        }
    });
    (head, prop::collection::vec(rational(), order)).prop_map(|(a0, rest)| {
        let mut coeffs = vec![a0];
        coeffs.extend(rest);
        PowerSeries::new(coeffs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn series_times_inverse_is_one(a in unit_series(200)) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), PowerSeries::one(200));
    }

    #[test]
    fn log_deriv_turns_products_into_sums(a in unit_series(60), b in unit_series(60)) {
        let lhs = a.mul(&b).unwrap().log_deriv().unwrap();
        let rhs = a.log_deriv().unwrap().add(&b.log_deriv().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coefficients_are_multiplicative(li in 0usize..8, m in 1usize..100, n in 1usize..100) {
        let g = &forms()[li];
        prop_assume!(num_integer::gcd(m, n) == 1);
        prop_assert_eq!(g.b(m * n).unwrap(), g.b(m).unwrap() * g.b(n).unwrap());
    }

    #[test]
    fn st_measure_is_monotone(a in -1.0f64..1.0, w in 0.0f64..1.0) {
        let b = (a + w).min(1.0);
        let inner = st_measure(a, b).unwrap();
        let outer = st_measure(-1.0, b).unwrap();
        prop_assert!(inner <= outer + 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_expansion_then_recovery_is_identity(c in prop::collection::vec(rational(), 200)) {
        let exps = ExponentSeries::new(1, c);
        let f = expand_product(&exps, 200).unwrap();
        prop_assert_eq!(exponents_from_series(&f, 1).unwrap(), exps);
    }
}

#[test]
fn catalogue_products_recover_their_exponents() {
    for level in [11, 14, 36] {
        let c = exponents_from_eigenform(form(level), 300).unwrap();
        let f = expand_product(&c, 300).unwrap();
        assert_eq!(exponents_from_series(&f, level).unwrap(), c, "level {level}");
        // q·f'/f is the eigenform itself
        let g = f.log_deriv().unwrap();
        for m in 1..=300 {
            assert_eq!(
                g.coeffs()[m],
                BigRational::from_integer(BigInt::from(form(level).b(m).unwrap()))
            );
        }
    }
}

#[test]
fn hecke_relation_at_good_primes() {
    for g in forms() {
        for &p in sieve_primes(100).unwrap().primes() {
            let p = p as usize;
            if g.level() % p as u64 == 0 {
                assert_eq!(g.b(p * p).unwrap(), g.b(p).unwrap().pow(2), "level {} p {p}", g.level());
                continue;
            }
            assert_eq!(
                g.b(p * p).unwrap(),
                g.b(p).unwrap().pow(2) - p as i64,
                "level {} p {p}",
                g.level()
            );
        }
    }
}

#[test]
fn cm_form_vanishes_exactly_at_inert_primes() {
    // level 36 has CM by Q(√−3): b(p) = 0 iff p ≡ 2 mod 3, for p ∤ 6
    let g = form(36);
    for &p in sieve_primes(FORM_BOUND as u64)
        .unwrap()
        .primes()
        .iter()
        .filter(|&&p| p > 3)
    {
        let bp = g.b(p as usize).unwrap();
        assert_eq!(bp == 0, p % 3 == 2, "b({p}) = {bp}");
    }
}

#[test]
fn sign_classes_partition_the_good_primes() {
    for g in forms() {
        let c = PrimeExponents::from_eigenform(g, FORM_BOUND as u64).unwrap();
        for x in [2u64, 10, 100, 1000, 10_000] {
            let r = sign_density(&c, x).unwrap();
            let pi = sieve_primes(x).unwrap().len() as u64;
            let bad = r.excluded.len() as u64;
            assert_eq!(r.pi, pi);
            assert_eq!(r.counts.positive + r.counts.negative + r.counts.zero, pi - bad);
        }
    }
}
