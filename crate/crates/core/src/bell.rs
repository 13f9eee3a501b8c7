//! Evaluated partial Bell polynomials and the four-parameter Bell
//! transformations, including the enumeration-based evaluation that serves
//! as an independent oracle for the series route.


use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::CoeffField;
use crate::series::Series;

/// Parameters (a, b, c, d) of a Bell transformation.
#[derive(Clone, PartialEq, Debug)]
pub struct BellParams<C: CoeffField> {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
}

impl<C: CoeffField> BellParams<C> {
    pub fn new(a: C, b: C, c: C, d: C) -> Self {
        BellParams { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        BellParams {
            a: C::from_int(a),
            b: C::from_int(b),
            c: C::from_int(c),
            d: C::from_int(d),
        }
    }
}

fn fact_rat(n: usize) -> Rational {
    Rational::from_int(factorial(n))
}

/// B_{n,k}(x_1, ..., x_{n-k+1}) via the generating identity
/// B_{n,k}(x) = (n!/k!) [ (sum_j x_j z^j / j!)^k ]_n.
pub fn partial_bell<C: CoeffField>(n: usize, k: usize, x: &[C]) -> Result<C> {
    check_bell_args(n, k, x)?;
    // inner series sum_j x_j z^j / j!, truncated at n
    let inner = Series::from_fn(n, |j| {
        if j == 0 || j > x.len() {
            C::zero()
        } else {
            x[j - 1].clone() * C::from_rational(&fact_rat(j).inv().expect("factorial nonzero"))
        }
    });
    let coeff = inner.pow(k as u64).coeff(n)?.clone();
    Ok(coeff * C::from_rational(&(fact_rat(n) * fact_rat(k).inv()?)))
}

/// B_{n,k} by direct enumeration of the multi-index set
/// pi(n, k) = { alpha : sum alpha_i = k, sum i*alpha_i = n }; the
/// independent oracle for `partial_bell`.
pub fn partial_bell_enumerated<C: CoeffField>(n: usize, k: usize, x: &[C]) -> Result<C> {
    check_bell_args(n, k, x)?;
    let mut total = C::zero();
    // alpha_i for i = 1..n-k+1, built left to right with weight pruning
    let mut alpha = vec![0usize; n - k + 1];
    enumerate(n, k, 1, &mut alpha, &mut |alpha| {
        let mut count = fact_rat(n);
        let mut term = C::one();
        for (i0, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let j = i0 + 1;
            let denom = fact_rat(a) * fact_rat(j).pow(a as i32).expect("factorial nonzero");
            count = count * denom.inv().expect("nonzero");
            for _ in 0..a {
                term = term * x[i0].clone();
            }
        }
        total = total.clone() + term * C::from_rational(&count);
    });
    Ok(total)
}

fn check_bell_args<C: CoeffField>(n: usize, k: usize, x: &[C]) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::InvalidParam(format!(
            "partial Bell needs 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if x.len() < n - k + 1 {
        return Err(Error::InvalidParam(format!(
            "partial Bell needs x_1..x_{}, got {} entries",
            n - k + 1,
            x.len()
        )));
    }
    Ok(())
}

fn enumerate(
    weight_left: usize,
    count_left: usize,
    i: usize,
    alpha: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if count_left == 0 {
        if weight_left == 0 {
            emit(alpha);
        }
        return;
    }
    if i > alpha.len() || weight_left < count_left * i {
        // remaining parts are all >= i, so the weight can't be reached
        return;
    }
    let max_a = (weight_left / i).min(count_left);
    for a in 0..=max_a {
        alpha[i - 1] = a;
        enumerate(weight_left - a * i, count_left - a, i + 1, alpha, emit);
    }
    alpha[i - 1] = 0;
}

/// The Bell transformation with parameters (a, b, c, d):
/// y_n = (1/n!) sum_k [ prod_{j=1}^{k-1} (a n + b k + c j + d) ] B_{n,k}(!x)
/// where !x is the sequence (n! x_n). Input `x` supplies x_1..x_T; the
/// output is y_1..y_T.
pub fn bell_transform<C: CoeffField>(params: &BellParams<C>, x: &[C]) -> Vec<C> {
    let t = x.len();
    // With the !x convention, B_{n,k}(!x) = (n!/k!) [ (sum x_j z^j)^k ]_n,
    // so y_n = sum_k prod(...) [ (sum x_j z^j)^k ]_n / k!.
    let base = Series::from_fn(t, |j| {
        if j == 0 {
            C::zero()
        } else {
            x[j - 1].clone()
        }
    });
    let mut y = vec![C::zero(); t];
    let mut power = Series::one(t);
    for k in 1..=t {
        power = power.mul(&base);
        let k_fact_inv = C::from_rational(&fact_rat(k).inv().expect("factorial nonzero"));
        for n in k..=t {
            let mut prod = C::one();
            for j in 1..k {
                prod = prod
                    * (params.a.clone() * C::from_int(n as i64)
                        + params.b.clone() * C::from_int(k as i64)
                        + params.c.clone() * C::from_int(j as i64)
                        + params.d.clone());
            }
            if prod.is_zero() {
                continue;
            }
            y[n - 1] = y[n - 1].clone()
                + prod * power.coeffs()[n].clone() * k_fact_inv.clone();
        }
    }
    y
}
