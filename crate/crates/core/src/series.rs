//! Truncated formal power series over an exact coefficient field, with the
//! operator algebra (Euler delta, logarithmic integration, Cartier,
//! scaled substitution, exp/log, composition, reversion) and Lagrange
//! inversion.


use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::CoeffField;

/// A power series known through degree `truncation()`; coefficient i of
/// `coeffs` is the z^i coefficient. Binary operations truncate to the
/// shorter operand.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<C: CoeffField> {
    coeffs: Vec<C>,
}

impl<C: CoeffField> Series<C> {
    /// From explicit coefficients c_0..c_T.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the z^0 term");
        Series { coeffs }
    }

    pub fn from_fn(truncation: usize, f: impl FnMut(usize) -> C) -> Self {
        Series {
            coeffs: (0..=truncation).map(f).collect(),
        }
    }

    pub fn zero(truncation: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        Series::constant(C::one(), truncation)
    }

    pub fn constant(c: C, truncation: usize) -> Self {
        let mut s = Series::zero(truncation);
        s.coeffs[0] = c;
        s
    }

    /// The series z (requires truncation >= 1).
    pub fn z(truncation: usize) -> Self {
        let mut s = Series::zero(truncation);
        s.coeffs[1] = C::one();
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Mutable access to coefficient n (must be within the truncation).
    pub fn coeff_mut(&mut self, n: usize) -> &mut C {
        &mut self.coeffs[n]
    }

    /// [F]_n; errors past the truncation.
    pub fn coeff(&self, n: usize) -> Result<&C> {
        self.coeffs.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            truncation: self.truncation(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Re-truncate (down only copies; up pads with zeros).
    pub fn truncate(&self, truncation: usize) -> Series<C> {
        Series::from_fn(truncation, |i| {
            self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
        })
    }

    pub fn add(&self, other: &Series<C>) -> Series<C> {
        let t = self.truncation().min(other.truncation());
        Series::from_fn(t, |i| self.coeffs[i].clone() + other.coeffs[i].clone())
    }

    pub fn sub(&self, other: &Series<C>) -> Series<C> {
        let t = self.truncation().min(other.truncation());
        Series::from_fn(t, |i| self.coeffs[i].clone() - other.coeffs[i].clone())
    }

    pub fn neg(&self) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Series<C>) -> Series<C> {
        let t = self.truncation().min(other.truncation());
        let mut out = vec![C::zero(); t + 1];
        for (i, a) in self.coeffs.iter().take(t + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(t + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &C) -> Series<C> {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Series<C> {
        let mut acc = Series::one(self.truncation());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse of a unit series ([F]_0 invertible).
    pub fn invert_unit(&self) -> Result<Series<C>> {
        let c0_inv = self.coeffs[0].inv()?;
        let t = self.truncation();
        let mut out = vec![C::zero(); t + 1];
        out[0] = c0_inv.clone();
        for n in 1..=t {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out[n] = -(c0_inv.clone() * acc);
        }
        Ok(Series { coeffs: out })
    }

    /// Euler operator delta = z d/dz: [delta F]_n = n [F]_n.
    pub fn euler_delta(&self) -> Series<C> {
        Series::from_fn(self.truncation(), |n| {
            self.coeffs[n].clone() * C::from_int(n as i64)
        })
    }

    /// Logarithmic integration: z^n -> z^n / n. Requires [F]_0 = 0.
    pub fn log_integrate(&self) -> Result<Series<C>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        Ok(Series::from_fn(self.truncation(), |n| {
            if n == 0 {
                C::zero()
            } else {
                self.coeffs[n].clone()
                    * C::from_rational(&Rational::new(1, n as i64).expect("n >= 1"))
            }
        }))
    }

    /// exp(F) for [F]_0 = 0, by the first-order recurrence
    /// n y_n = sum_{k=1}^{n} k f_k y_{n-k}.
    pub fn exp(&self) -> Result<Series<C>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let t = self.truncation();
        let mut y = vec![C::zero(); t + 1];
        y[0] = C::one();
        for n in 1..=t {
            let mut acc = C::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + C::from_int(k as i64) * self.coeffs[k].clone() * y[n - k].clone();
            }
            y[n] = acc * C::from_rational(&Rational::new(1, n as i64).expect("n >= 1"));
        }
        Ok(Series { coeffs: y })
    }

    /// log(F) for [F]_0 = 1, the inverse recurrence to `exp`.
    pub fn log(&self) -> Result<Series<C>> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidParam(
                "log requires constant term 1".to_string(),
            ));
        }
        let t = self.truncation();
        let mut l = vec![C::zero(); t + 1];
        for n in 1..=t {
            let mut acc = C::zero();
            for k in 1..n {
                acc = acc + C::from_int(k as i64) * l[k].clone() * self.coeffs[n - k].clone();
            }
            l[n] = self.coeffs[n].clone()
                - acc * C::from_rational(&Rational::new(1, n as i64).expect("n >= 1"));
        }
        Ok(Series { coeffs: l })
    }

    /// H(G(z)) by Horner evaluation; requires [G]_0 = 0.
    pub fn compose(&self, g: &Series<C>) -> Result<Series<C>> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let t = self.truncation().min(g.truncation());
        let g = g.truncate(t);
        let mut acc = Series::constant(self.coeffs[t].clone(), t);
        for i in (0..t).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[i].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse G with F(G(z)) = z, solved triangularly.
    /// Requires [F]_0 = 0 and [F]_1 invertible.
    pub fn reversion(&self) -> Result<Series<C>> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let t = self.truncation();
        if t < 1 || self.coeffs[1].is_zero() {
            return Err(Error::NonInvertibleLinearCoeff);
        }
        let f1_inv = self.coeffs[1].inv()?;
        let mut g = Series::zero(t);
        g.coeffs[1] = f1_inv.clone();
        for n in 2..=t {
            // [F(G)]_n is linear in the unknown g_n with slope f_1.
            let partial = self.compose(&g)?;
            g.coeffs[n] = -(f1_inv.clone() * partial.coeffs[n].clone());
        }
        Ok(g)
    }

    /// Lagrange inversion: [H(G)]_n = (1/n)[delta H * (F/z)^{-n}]_n where
    /// G is the compositional inverse of F. Requires n >= 1, [H]_0 = 0,
    /// [F]_0 = 0, [F]_1 invertible.
    pub fn lif_coeff(h: &Series<C>, f: &Series<C>, n: usize) -> Result<C> {
        if n < 1 {
            return Err(Error::InvalidParam("lif_coeff needs n >= 1".to_string()));
        }
        if !h.coeffs[0].is_zero() || !f.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if f.truncation() < 1 || f.coeffs[1].is_zero() {
            return Err(Error::NonInvertibleLinearCoeff);
        }
        let t = h.truncation().min(f.truncation());
        if t < n {
            return Err(Error::IndexOutOfRange {
                index: n,
                truncation: t,
            });
        }
        // F/z is a unit series; (F/z)^{-n} avoids Laurent arithmetic.
        let f_over_z = Series::from_fn(t, |i| f.coeffs.get(i + 1).cloned().unwrap_or_else(C::zero));
        let u = f_over_z.invert_unit()?.pow(n as u64);
        let prod = h.euler_delta().mul(&u);
        Ok(prod.coeffs[n].clone()
            * C::from_rational(&Rational::new(1, n as i64).expect("n >= 1")))
    }

    /// Cartier operator: [C_k F]_n = [F]_{kn}; output truncation floor(T/k).
    pub fn cartier(&self, k: usize) -> Series<C> {
        assert!(k >= 1);
        Series::from_fn(self.truncation() / k, |n| self.coeffs[k * n].clone())
    }

    /// Scaled substitution eps^{(s)}_rho: coefficient rho*n of the output is
    /// rho^s times coefficient n of the input; output truncation rho*T.
    pub fn scaled_substitute(&self, rho: usize, s: u32) -> Series<C> {
        assert!(rho >= 1);
        let scale = C::from_rational(&Rational::from_int(rho as i64).pow(s as i32).expect("rho >= 1"));
        let mut out = Series::zero(self.truncation() * rho);
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[rho * n] = scale.clone() * c.clone();
        }
        out
    }
}
