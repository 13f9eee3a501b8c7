//! The framing operators Phi^{+/-}: the Bell-transformation pipeline, the
//! exponential per-coefficient formula, fractional framing, and the
//! functional-equation residuals used as diagnostics.


use crate::arith::gcd;
use crate::bell::{bell_transform, BellParams};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::CoeffField;
use crate::series::Series;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// Full parameter set (sign, nu, sigma, rho, weight s) of a possibly
/// fractional framing.
#[derive(Clone, PartialEq, Debug)]
pub struct FramingParams {
    pub sign: Sign,
    pub nu: Rational,
    pub sigma: u64,
    pub rho: u64,
    pub weight: u32,
}

impl FramingParams {
    pub fn new(sign: Sign, nu: Rational, sigma: u64, rho: u64, weight: u32) -> Result<Self> {
        if sigma == 0 || rho == 0 || gcd(rho, sigma) != 1 {
            return Err(Error::InvalidParam(format!(
                "need coprime positive sigma, rho; got sigma = {sigma}, rho = {rho}"
            )));
        }
        if ![0, 2, 3].contains(&weight) {
            return Err(Error::InvalidParam(format!(
                "weight must be 0, 2 or 3, got {weight}"
            )));
        }
        // nu must lie in (rho/sigma) Z
        let scaled = &nu * &Rational::new(sigma as i64, rho as i64)?;
        if !scaled.is_integer() {
            return Err(Error::InvalidParam(format!(
                "nu = {nu} is not a multiple of rho/sigma = {rho}/{sigma}"
            )));
        }
        Ok(FramingParams {
            sign,
            nu,
            sigma,
            rho,
            weight,
        })
    }

    pub fn plain(sign: Sign, nu: Rational) -> Self {
        FramingParams {
            sign,
            nu,
            sigma: 1,
            rho: 1,
            weight: 0,
        }
    }
}

/// (-1)^{nu * n}; errors when nu * n is not an integer.
fn sign_twist(nu: &Rational, n: usize) -> Result<i64> {
    let nu_n = nu * &Rational::from_int(n as i64);
    let k = nu_n.to_bigint().ok_or_else(|| {
        Error::InvalidParam(format!("sign - undefined at n = {n}: nu*n = {nu_n} not integral"))
    })?;
    use num_integer::Integer;
    Ok(if k.is_even() { 1 } else { -1 })
}

/// Phi^{+/-}(nu, V) through degree `t`, by the Bell pipeline
/// delta o G o Y_{nu,0,0,0} o coefficients o integrate. Sign minus
/// multiplies coefficient n by (-1)^{nu n} and therefore needs nu n
/// integral for every n <= t.
pub fn frame<C: CoeffField>(
    sign: Sign,
    nu: &Rational,
    v: &Series<C>,
    t: usize,
) -> Result<Series<C>> {
    if v.truncation() < t {
        return Err(Error::IndexOutOfRange {
            index: t,
            truncation: v.truncation(),
        });
    }
    if nu.is_zero() {
        return Ok(v.truncate(t));
    }
    let int_v = v.truncate(t).log_integrate()?;
    let x: Vec<C> = (1..=t).map(|n| int_v.coeffs()[n].clone()).collect();
    let params = BellParams::new(
        C::from_rational(nu),
        C::zero(),
        C::zero(),
        C::zero(),
    );
    let y = bell_transform(&params, &x);
    let mut out = Series::zero(t);
    for n in 1..=t {
        let mut a = C::from_int(n as i64) * y[n - 1].clone();
        if sign == Sign::Minus {
            let s = sign_twist(nu, n)?;
            if s < 0 {
                a = -a;
            }
        }
        *out.coeff_mut(n) = a;
    }
    Ok(out)
}

/// a_n^{+/-} by the exponential formula (1/nu)[exp(nu n int V)]_n, with the
/// (-1)^{nu n} twist for sign minus. Requires nu != 0.
pub fn frame_coeff<C: CoeffField>(
    sign: Sign,
    nu: &Rational,
    v: &Series<C>,
    n: usize,
) -> Result<C> {
    if nu.is_zero() {
        return Err(Error::InvalidParam(
            "frame_coeff needs nu != 0; use frame for nu = 0".to_string(),
        ));
    }
    if v.truncation() < n {
        return Err(Error::IndexOutOfRange {
            index: n,
            truncation: v.truncation(),
        });
    }
    if n == 0 {
        return Ok(C::zero());
    }
    let int_v = v.truncate(n).log_integrate()?;
    let nu_n = nu * &Rational::from_int(n as i64);
    let e = int_v.scale(&C::from_rational(&nu_n)).exp()?;
    let mut a = e.coeffs()[n].clone() * C::from_rational(&nu.inv()?);
    if sign == Sign::Minus && sign_twist(nu, n)? < 0 {
        a = -a;
    }
    Ok(a)
}

/// The fractional framing (1/sigma) eps^{(s)}_rho (C_sigma (Phi(nu, V))):
/// coefficient n is (rho^s / sigma) a^{+/-}_{sigma n / rho} when rho | n,
/// zero otherwise.
pub fn fractional_frame<C: CoeffField>(
    params: &FramingParams,
    v: &Series<C>,
    t: usize,
) -> Result<Series<C>> {
    // revalidate in case the struct was built literally
    let params = FramingParams::new(
        params.sign,
        params.nu.clone(),
        params.sigma,
        params.rho,
        params.weight,
    )?;
    let scale = Rational::from_int(params.rho as i64)
        .pow(params.weight as i32)?
        * Rational::new(1, params.sigma as i64)?;
    let scale = C::from_rational(&scale);
    let mut out = Series::zero(t);
    for n in 1..=t {
        if n % params.rho as usize != 0 {
            continue;
        }
        let idx = params.sigma as usize * n / params.rho as usize;
        let a = if params.nu.is_zero() {
            v.coeff(idx)?.clone()
        } else {
            frame_coeff(params.sign, &params.nu, v, idx)?
        };
        *out.coeff_mut(n) = scale.clone() * a;
    }
    Ok(out)
}

/// int Phi(nu, V)(subst) - int V, where subst is z exp(-nu int V) for sign
/// plus and z(-exp(-int V))^nu = (-1)^nu z exp(-nu int V) for sign minus;
/// the zero series certifies the functional equation.
pub fn functional_equation_residual<C: CoeffField>(
    sign: Sign,
    nu: &Rational,
    v: &Series<C>,
    t: usize,
) -> Result<Series<C>> {
    let int_v = v.truncate(t).log_integrate()?;
    let framed = frame(sign, nu, v, t)?;
    let int_framed = framed.log_integrate()?;
    let mut subst = Series::z(t).mul(&int_v.scale(&C::from_rational(&-nu.clone())).exp()?);
    if sign == Sign::Minus && sign_twist(nu, 1)? < 0 {
        subst = subst.neg();
    }
    Ok(int_framed.compose(&subst)?.sub(&int_v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use num_traits::{One, Zero};

    type QS = Series<Rational>;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn geom(t: usize) -> QS {
        Series::from_fn(t, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
    }

    #[test]
    fn nu_zero_is_identity() {
        let v = QS::new(vec![q("0"), q("2"), q("-1"), q("1/3"), q("5")]);
        assert_eq!(frame(Sign::Plus, &q("0"), &v, 4).unwrap(), v);
        assert_eq!(frame(Sign::Minus, &q("0"), &v, 4).unwrap(), v);
    }

    #[test]
    fn central_binomials_for_nu_one() {
        let v = geom(8);
        let f = frame(Sign::Plus, &q("1"), &v, 8).unwrap();
        for n in 1..=8u64 {
            let expected = Rational::new(binomial(2 * n, n), 2).unwrap();
            assert_eq!(f.coeffs()[n as usize], expected, "n = {n}");
        }
        assert_eq!(f.coeffs()[1], q("1"));
        assert_eq!(f.coeffs()[2], q("3"));
        assert_eq!(f.coeffs()[3], q("10"));
        assert_eq!(f.coeffs()[4], q("35"));
    }

    #[test]
    fn negative_framing_of_geometric() {
        // Phi^+(-1, z/(1-z)) = z/(1+z)
        let v = geom(7);
        let f = frame(Sign::Plus, &q("-1"), &v, 7).unwrap();
        let expected = Series::from_fn(7, |n| {
            if n == 0 {
                Rational::zero()
            } else if n % 2 == 1 {
                Rational::one()
            } else {
                -Rational::one()
            }
        });
        assert_eq!(f, expected);
    }

    #[test]
    fn coefficient_formula_examples() {
        let v = geom(8);
        assert_eq!(frame_coeff(Sign::Plus, &q("1"), &v, 3).unwrap(), q("10"));
        // nu = 2: a_n = (1/3) binom(3n, n)
        assert_eq!(frame_coeff(Sign::Plus, &q("2"), &v, 2).unwrap(), q("5"));
        assert_eq!(frame_coeff(Sign::Minus, &q("1"), &v, 3).unwrap(), q("-10"));
        assert!(frame_coeff(Sign::Plus, &q("0"), &v, 3).is_err());
    }

    #[test]
    fn pipeline_matches_formula() {
        let v = QS::new(vec![
            q("0"),
            q("1"),
            q("-2"),
            q("1/2"),
            q("3"),
            q("0"),
            q("7/5"),
            q("-1"),
            q("2"),
        ]);
        for nu in ["1", "2", "-1", "3"] {
            let nu = q(nu);
            let f = frame(Sign::Plus, &nu, &v, 8).unwrap();
            for n in 1..=8 {
                assert_eq!(
                    f.coeffs()[n],
                    frame_coeff(Sign::Plus, &nu, &v, n).unwrap(),
                    "nu = {nu}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn sign_relation() {
        let v = geom(6);
        let plus = frame(Sign::Plus, &q("3"), &v, 6).unwrap();
        let minus = frame(Sign::Minus, &q("3"), &v, 6).unwrap();
        for n in 1..=6 {
            let want = if (3 * n) % 2 == 0 {
                plus.coeffs()[n].clone()
            } else {
                -plus.coeffs()[n].clone()
            };
            assert_eq!(minus.coeffs()[n], want);
        }
        // fractional nu: sign minus at non-integral nu*n refuses
        assert!(frame(Sign::Minus, &q("1/2"), &v, 6).is_err());
        assert!(frame_coeff(Sign::Minus, &q("1/2"), &v, 3).is_err());
        assert_eq!(
            frame_coeff(Sign::Minus, &q("1/2"), &v, 4).unwrap(),
            frame_coeff(Sign::Plus, &q("1/2"), &v, 4).unwrap()
        );
    }

    #[test]
    fn group_action() {
        let v = QS::new(vec![q("0"), q("1"), q("1"), q("0"), q("2"), q("-1"), q("0"), q("1"), q("0")]);
        for (nu, mu) in [("1", "1"), ("1", "2"), ("2", "-1")] {
            let (nu, mu) = (q(nu), q(mu));
            let inner = frame(Sign::Plus, &mu, &v, 8).unwrap();
            let lhs = frame(Sign::Plus, &nu, &inner, 8).unwrap();
            let rhs = frame(Sign::Plus, &(&nu + &mu), &v, 8).unwrap();
            assert_eq!(lhs, rhs, "nu = {nu}, mu = {mu}");
        }
        // (1/2, 1/2) via the coefficient formula
        let half = q("1/2");
        let inner = frame(Sign::Plus, &half, &v, 8).unwrap();
        for n in 1..=8 {
            assert_eq!(
                frame_coeff(Sign::Plus, &half, &inner, n).unwrap(),
                frame_coeff(Sign::Plus, &q("1"), &v, n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn lif_consistency() {
        let v = geom(12);
        let nu = q("2");
        let int_v = v.log_integrate().unwrap();
        let f_sub = QS::z(12).mul(&int_v.scale(&-nu.clone()).exp().unwrap());
        let framed = frame(Sign::Plus, &nu, &v, 12).unwrap();
        let int_framed = framed.log_integrate().unwrap();
        for n in 1..=12 {
            assert_eq!(
                int_framed.coeffs()[n],
                QS::lif_coeff(&int_v, &f_sub, n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn fractional_frame_examples() {
        let v = geom(24);
        // sigma = rho = 1, s = 0 reduces to frame
        let p = FramingParams::new(Sign::Plus, q("2"), 1, 1, 0).unwrap();
        assert_eq!(
            fractional_frame(&p, &v, 8).unwrap(),
            frame(Sign::Plus, &q("2"), &v, 8).unwrap()
        );

        // nu = 1/2, sigma = 2: coefficients (1/3) binom(3n, 2n)
        let p = FramingParams::new(Sign::Plus, q("1/2"), 2, 1, 0).unwrap();
        let f = fractional_frame(&p, &v, 6).unwrap();
        for n in 1..=6u64 {
            let expected = Rational::new(binomial(3 * n, 2 * n), 3).unwrap()
                * Rational::new(1, 2).unwrap()
                * Rational::from_int(2);
            assert_eq!(f.coeffs()[n as usize], expected, "n = {n}");
        }
        assert_eq!(f.coeffs()[1], q("1"));
        assert_eq!(f.coeffs()[2], q("5"));
        assert_eq!(f.coeffs()[3], q("28"));

        // nu = 1/3, sigma = 3: coefficients (1/4) binom(4n, 3n)
        let p = FramingParams::new(Sign::Plus, q("1/3"), 3, 1, 0).unwrap();
        let f = fractional_frame(&p, &v, 5).unwrap();
        assert_eq!(f.coeffs()[1], q("1"));
        assert_eq!(f.coeffs()[2], q("7"));
        assert_eq!(f.coeffs()[3], q("55"));

        // parameter validation
        assert!(FramingParams::new(Sign::Plus, q("1/2"), 2, 1, 1).is_err());
        assert!(FramingParams::new(Sign::Plus, q("1/2"), 4, 2, 0).is_err());
        assert!(FramingParams::new(Sign::Plus, q("1/3"), 2, 1, 0).is_err());
    }

    #[test]
    fn functional_equation_holds() {
        let v = geom(16);
        assert!(functional_equation_residual(Sign::Plus, &q("0"), &v, 16)
            .unwrap()
            .is_zero());
        assert!(functional_equation_residual(Sign::Plus, &q("1"), &v, 16)
            .unwrap()
            .is_zero());

        let mut sparse = QS::zero(12);
        *sparse.coeff_mut(1) = q("1");
        *sparse.coeff_mut(3) = q("1");
        assert!(
            functional_equation_residual(Sign::Plus, &q("2"), &sparse, 12)
                .unwrap()
                .is_zero()
        );
        assert!(
            functional_equation_residual(Sign::Minus, &q("2"), &sparse, 12)
                .unwrap()
                .is_zero()
        );
        assert!(functional_equation_residual(Sign::Minus, &q("1"), &v, 12)
            .unwrap()
            .is_zero());
    }
}
