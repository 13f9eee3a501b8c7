//! Property-based suites: Bell-transformation identities, power-series
//! operator algebra, Lagrange inversion, and the p-adic local layer.

use framing_core::arith::factorial;
use framing_core::bell::{bell_transform, partial_bell, partial_bell_enumerated, BellParams};
use framing_core::cyclo::CycloElem;
use framing_core::local::{make_local_context, PValuation};
use framing_core::{QSeries, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).unwrap()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=20, proptest::bool::ANY)
        .prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn rational_vec(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), len)
}

/// B_{n,k}(!x): the partial Bell polynomial at the rescaled arguments j! x_j.
fn bell_bang(n: usize, k: usize, x: &[Rational]) -> Rational {
    let bang: Vec<Rational> = x
        .iter()
        .enumerate()
        .map(|(j0, v)| v * &Rational::from_int(factorial(j0 + 1)))
        .collect();
    partial_bell(n, k, &bang).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bell_series_route_matches_enumeration(
        n in 1usize..=8,
        k_off in 0usize..8,
        x in rational_vec(8),
    ) {
        let k = 1 + k_off % n;
        prop_assert_eq!(
            partial_bell(n, k, &x).unwrap(),
            partial_bell_enumerated(n, k, &x).unwrap()
        );
    }

    // homogeneous of degree k, weight n
    #[test]
    fn bell_homogeneity(
        n in 1usize..=7,
        k_off in 0usize..7,
        lambda in nonzero_rational(),
        x in rational_vec(7),
    ) {
        let k = 1 + k_off % n;
        let base = partial_bell(n, k, &x).unwrap();

        let scaled: Vec<Rational> = x.iter().map(|v| v * &lambda).collect();
        prop_assert_eq!(
            partial_bell(n, k, &scaled).unwrap(),
            &base * &lambda.pow(k as i32).unwrap()
        );

        let weighted: Vec<Rational> = x
            .iter()
            .enumerate()
            .map(|(j0, v)| v * &lambda.pow(j0 as i32 + 1).unwrap())
            .collect();
        prop_assert_eq!(
            partial_bell(n, k, &weighted).unwrap(),
            &base * &lambda.pow(n as i32).unwrap()
        );
    }

    #[test]
    fn bell_composition_law(
        a in small_rational(),
        b in small_rational(),
        c in nonzero_rational(),
        d in small_rational(),
        e in small_rational(),
        f in small_rational(),
        x in rational_vec(10),
    ) {
        let inner = BellParams::new(a.clone(), b.clone(), c.clone(), d.clone());
        let outer = BellParams::new(e.clone(), Rational::zero(), -d, f.clone());
        let fused = BellParams::new(&a + &e, b, c, f);
        let two_step = bell_transform(&outer, &bell_transform(&inner, &x));
        prop_assert_eq!(two_step, bell_transform(&fused, &x));
    }

    // the b = c = 0 branch of the composition law
    #[test]
    fn bell_composition_law_diagonal(
        a in small_rational(),
        d in small_rational(),
        e in small_rational(),
        f in small_rational(),
        x in rational_vec(10),
    ) {
        let zero = Rational::zero();
        let inner = BellParams::new(a.clone(), zero.clone(), zero.clone(), d.clone());
        let outer = BellParams::new(e.clone(), zero.clone(), -d, f.clone());
        let fused = BellParams::new(&a + &e, zero.clone(), zero, f);
        let two_step = bell_transform(&outer, &bell_transform(&inner, &x));
        prop_assert_eq!(two_step, bell_transform(&fused, &x));
    }

    // sum_k prod_{j<k}(lambda - dj + d) B_{n,k}(!y)
    //   = sum_k prod_{j<k}(an + bk + cj + d + lambda) B_{n,k}(!x)
    #[test]
    fn bell_convolution_formula(
        a in small_rational(),
        b in small_rational(),
        c in nonzero_rational(),
        d in small_rational(),
        lambda in small_rational(),
        n in 1usize..=8,
        x in rational_vec(8),
    ) {
        let y = bell_transform(&BellParams::new(a.clone(), b.clone(), c.clone(), d.clone()), &x);
        let mut lhs = Rational::zero();
        let mut rhs = Rational::zero();
        for k in 1..=n {
            let mut lp = Rational::one();
            let mut rp = Rational::one();
            for j in 1..k {
                let j_r = Rational::from_int(j as i64);
                lp = &lp * &(&lambda - &(&d * &(&j_r - &Rational::one())));
                let n_r = Rational::from_int(n as i64);
                let k_r = Rational::from_int(k as i64);
                rp = &rp * &(&(&(&(&a * &n_r) + &(&b * &k_r)) + &(&c * &j_r)) + &(&d + &lambda));
            }
            lhs += &lp * &bell_bang(n, k, &y);
            rhs += &rp * &bell_bang(n, k, &x);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_log_roundtrip(x in rational_vec(10)) {
        let mut f = QSeries::zero(10);
        for (i, v) in x.iter().enumerate().take(9) {
            *f.coeff_mut(i + 1) = v.clone();
        }
        let y = f.exp().unwrap();
        prop_assert_eq!(y.log().unwrap(), f.clone());

        let mut u = QSeries::one(10);
        for (i, v) in x.iter().enumerate().take(9) {
            *u.coeff_mut(i + 1) = v.clone();
        }
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
    }

    #[test]
    fn euler_and_integration_are_inverse(x in rational_vec(10)) {
        let mut f = QSeries::zero(10);
        for (i, v) in x.iter().enumerate().take(9) {
            *f.coeff_mut(i + 1) = v.clone();
        }
        prop_assert_eq!(f.euler_delta().log_integrate().unwrap(), f.clone());
        prop_assert_eq!(f.log_integrate().unwrap().euler_delta(), f);
    }

    #[test]
    fn euler_delta_is_a_derivation(x in rational_vec(8), y in rational_vec(8)) {
        let f = QSeries::new(x);
        let g = QSeries::new(y);
        let lhs = f.mul(&g).euler_delta();
        let rhs = f.euler_delta().mul(&g).add(&f.mul(&g.euler_delta()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartier_undoes_substitution(x in rational_vec(12), k in 1usize..=4) {
        let f = QSeries::new(x);
        prop_assert_eq!(f.scaled_substitute(k, 0).cartier(k), f);
    }
}

// reversion blows coefficient sizes up quickly; keep these instances small
fn tiny_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn tiny_rational_vec(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(tiny_rational(), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reversion_inverts_composition(x in tiny_rational_vec(9)) {
        let mut f = QSeries::zero(10);
        *f.coeff_mut(1) = Rational::one();
        for (i, v) in x.iter().enumerate().skip(1) {
            *f.coeff_mut(i + 1) = v.clone();
        }
        let g = f.reversion().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), QSeries::z(10));
        prop_assert_eq!(g.compose(&f).unwrap(), QSeries::z(10));
    }

    #[test]
    fn lif_matches_reversion(h in tiny_rational_vec(12), x in tiny_rational_vec(11)) {
        let mut f = QSeries::zero(12);
        *f.coeff_mut(1) = Rational::one();
        for (i, v) in x.iter().enumerate().skip(1) {
            *f.coeff_mut(i + 1) = v.clone();
        }
        let mut hh = QSeries::zero(12);
        for (i, v) in h.iter().enumerate().take(11) {
            *hh.coeff_mut(i + 1) = v.clone();
        }
        let composed = hh.compose(&f.reversion().unwrap()).unwrap();
        for n in 1..=12usize {
            prop_assert_eq!(
                &QSeries::lif_coeff(&hh, &f, n).unwrap(),
                composed.coeff(n).unwrap()
            );
        }
    }

}

fn random_cyclo(rng: &mut ChaCha8Rng, conductor: u64, phi: usize) -> CycloElem {
    let coeffs: Vec<Rational> = (0..phi)
        .map(|_| Rational::from_int(rng.gen_range(-50i64..=50)))
        .collect();
    CycloElem::new(conductor, coeffs).unwrap()
}

#[test]
fn local_frobenius_matches_global() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, p) in [(3u64, 2u64), (3, 5), (4, 5), (5, 7)] {
        let ctx = make_local_context(n, p, 8).unwrap();
        let phi = framing_core::arith::euler_phi(n) as usize;
        for _ in 0..100 {
            let a = random_cyclo(&mut rng, n, phi);
            let via_global = ctx.embed(&a.frobenius(p).unwrap()).unwrap();
            let via_local = ctx.frobenius(&ctx.embed(&a).unwrap());
            assert_eq!(
                via_global.residues(),
                via_local.residues(),
                "N = {n}, p = {p}, a = {a}"
            );
        }
    }
}

#[test]
fn local_valuation_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, p) in [(3u64, 2u64), (3, 5), (4, 5), (5, 7)] {
        let ctx = make_local_context(n, p, 8).unwrap();
        let phi = framing_core::arith::euler_phi(n) as usize;
        for _ in 0..100 {
            let scale = Rational::from_int(p.pow(rng.gen_range(0..3)) as i64);
            let a = random_cyclo(&mut rng, n, phi).scale(&scale);
            let b = random_cyclo(&mut rng, n, phi);
            let (va, vb) = (ctx.val_of(&a), ctx.val_of(&b));
            if let (PValuation::Finite(x), PValuation::Finite(y)) = (va, vb) {
                if x + y < ctx.precision() {
                    let ab = a.try_mul(&b).unwrap();
                    assert_eq!(
                        ctx.val_of(&ab),
                        PValuation::Finite(x + y),
                        "N = {n}, p = {p}"
                    );
                }
            }
        }
    }
}
