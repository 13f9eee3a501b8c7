//! Elements of the cyclotomic fields Q(zeta_N), represented by rational
//! coordinate vectors with respect to the power basis 1, zeta, ...,
//! zeta^(phi(N)-1) modulo the N-th cyclotomic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One as NumOne, Zero as NumZero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{euler_phi, gcd};
use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic_poly, IntPoly};
use crate::rational::Rational;

/// An element of Q(zeta_N). Conductor 1 embeds the rationals.
#[derive(Clone)]
pub struct CycloElem {
    conductor: u64,
    coeffs: Vec<Rational>,
}

// Elements at different conductors compare equal iff both are rational
// with the same value.
impl PartialEq for CycloElem {
    fn eq(&self, other: &CycloElem) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            match (self.as_rational(), other.as_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            }
        }
    }
}

impl Eq for CycloElem {}

impl CycloElem {
    pub fn new(conductor: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let phi = euler_phi(conductor) as usize;
        if conductor < 1 || coeffs.len() != phi {
            return Err(Error::InvalidParam(format!(
                "conductor {conductor} needs {phi} coordinates, got {}",
                coeffs.len()
            )));
        }
        Ok(CycloElem { conductor, coeffs })
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloElem {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn zero(conductor: u64) -> Self {
        CycloElem {
            conductor,
            coeffs: vec![Rational::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn one(conductor: u64) -> Self {
        let mut e = Self::zero(conductor);
        e.coeffs[0] = Rational::one();
        e
    }

    /// The class of x, i.e. a primitive N-th root of unity.
    pub fn zeta(conductor: u64) -> Self {
        assert!(conductor >= 1);
        if conductor == 1 {
            return Self::one(1);
        }
        let mut e = Self::zero(conductor);
        if e.coeffs.len() > 1 {
            e.coeffs[1] = Rational::one();
        } else {
            // N = 2: zeta = -1
            e.coeffs[0] = -Rational::one();
        }
        e
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Re-express a rational (conductor 1) element at a larger conductor.
    pub fn promote(&self, conductor: u64) -> Result<Self> {
        if self.conductor == conductor {
            return Ok(self.clone());
        }
        if self.conductor != 1 {
            return Err(Error::ConductorMismatch(self.conductor, conductor));
        }
        let mut e = CycloElem::zero(conductor);
        e.coeffs[0] = self.coeffs[0].clone();
        Ok(e)
    }

    fn coerce(a: &CycloElem, b: &CycloElem) -> Result<(CycloElem, CycloElem)> {
        if a.conductor == b.conductor {
            Ok((a.clone(), b.clone()))
        } else if a.conductor == 1 {
            Ok((a.promote(b.conductor)?, b.clone()))
        } else if b.conductor == 1 {
            Ok((a.clone(), b.promote(a.conductor)?))
        } else {
            Err(Error::ConductorMismatch(a.conductor, b.conductor))
        }
    }

    pub fn try_add(&self, other: &CycloElem) -> Result<CycloElem> {
        let (a, b) = Self::coerce(self, other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(CycloElem {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &CycloElem) -> Result<CycloElem> {
        let (a, b) = Self::coerce(self, other)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        Ok(CycloElem {
            conductor: a.conductor,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &CycloElem) -> Result<CycloElem> {
        let (a, b) = Self::coerce(self, other)?;
        if a.conductor == 1 {
            return Ok(CycloElem::from_rational(&a.coeffs[0] * &b.coeffs[0]));
        }
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = x * y;
                prod[i + j] += t;
            }
        }
        let phi = cyclotomic_poly(a.conductor);
        Ok(CycloElem {
            conductor: a.conductor,
            coeffs: reduce_mod_phi(prod, &phi),
        })
    }

    /// Multiplicative inverse via extended Euclid against the cyclotomic
    /// polynomial.
    pub fn try_inv(&self) -> Result<CycloElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(CycloElem::from_rational(self.coeffs[0].inv()?));
        }
        let phi = cyclotomic_poly(self.conductor);
        let inv = rat_poly_inverse(&self.coeffs, &phi)?;
        Ok(CycloElem {
            conductor: self.conductor,
            coeffs: inv,
        })
    }

    pub fn scale(&self, r: &Rational) -> CycloElem {
        CycloElem {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Image under the field automorphism zeta -> zeta^p. Requires
    /// gcd(p, N) = 1; this is the global Frobenius at any prime above p.
    pub fn frobenius(&self, p: u64) -> Result<CycloElem> {
        let n = self.conductor;
        if n == 1 {
            return Ok(self.clone());
        }
        if gcd(p % n, n) != 1 {
            return Err(Error::Ramified { p, n });
        }
        let mut img = vec![Rational::zero(); (self.coeffs.len() - 1) * (p as usize % n as usize) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * p) % n;
            let e = e as usize;
            if e >= img.len() {
                img.resize(e + 1, Rational::zero());
            }
            img[e] += c.clone();
        }
        let phi = cyclotomic_poly(n);
        Ok(CycloElem {
            conductor: n,
            coeffs: reduce_mod_phi(img, &phi),
        })
    }

    /// True when every coordinate denominator is coprime to p.
    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| c.is_p_integral(p))
    }
}

/// Reduce a rational coefficient vector modulo the (monic, integer)
/// cyclotomic polynomial, returning exactly phi(N) coordinates.
fn reduce_mod_phi(mut coeffs: Vec<Rational>, phi: &IntPoly) -> Vec<Rational> {
    let d = phi.degree().unwrap();
    for i in (d..coeffs.len()).rev() {
        let c = std::mem::replace(&mut coeffs[i], Rational::zero());
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            let pj = Rational::from_int(phi.coeff(j));
            coeffs[i - d + j] -= &c * &pj;
        }
    }
    coeffs.truncate(d);
    coeffs.resize(d, Rational::zero());
    coeffs
}

/// Inverse of a rational polynomial modulo phi via extended Euclid in Q[x].
fn rat_poly_inverse(a: &[Rational], phi: &IntPoly) -> Result<Vec<Rational>> {
    type RPoly = Vec<Rational>;

    fn deg(p: &RPoly) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }
    fn trim(mut p: RPoly) -> RPoly {
        while p.last().map_or(false, Rational::is_zero) {
            p.pop();
        }
        p
    }
    fn sub_scaled(a: &RPoly, b: &RPoly, s: &Rational, shift: usize) -> RPoly {
        let mut out = a.clone();
        if out.len() < b.len() + shift {
            out.resize(b.len() + shift, Rational::zero());
        }
        for (i, c) in b.iter().enumerate() {
            out[i + shift] -= c * s;
        }
        trim(out)
    }
    fn divmod(a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
        let db = deg(b).expect("division by zero polynomial");
        let lc = b[db].clone();
        let mut rem = trim(a.clone());
        let mut quot: RPoly = Vec::new();
        while let Some(dr) = deg(&rem) {
            if dr < db {
                break;
            }
            let s = (&rem[dr] * &Rational::one()) / lc.clone();
            if quot.len() < dr - db + 1 {
                quot.resize(dr - db + 1, Rational::zero());
            }
            quot[dr - db] = s.clone();
            rem = sub_scaled(&rem, b, &s, dr - db);
        }
        (quot, rem)
    }
    fn mul(a: &RPoly, b: &RPoly) -> RPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }
    fn sub(a: &RPoly, b: &RPoly) -> RPoly {
        let n = a.len().max(b.len());
        let get = |p: &RPoly, i: usize| p.get(i).cloned().unwrap_or_else(Rational::zero);
        trim((0..n).map(|i| get(a, i) - get(b, i)).collect())
    }

    let phi_rat: RPoly = phi.coeffs().iter().map(|c| Rational::from_int(c.clone())).collect();
    let mut r0 = phi_rat;
    let mut r1 = trim(a.to_vec());
    let mut t0: RPoly = Vec::new();
    let mut t1: RPoly = vec![Rational::one()];
    while deg(&r1).is_some() && deg(&r1) != Some(0) {
        let (q, r) = divmod(&r0, &r1);
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    match deg(&r1) {
        Some(0) => {
            // r1 is a nonzero constant: t1 / r1 inverts a mod phi
            let c = r1[0].inv()?;
            let mut out: Vec<Rational> = t1.iter().map(|x| x * &c).collect();
            out.resize(phi.degree().unwrap(), Rational::zero());
            Ok(out)
        }
        // a shares a factor with phi: impossible for nonzero field elements
        _ => Err(Error::DivisionByZero),
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(N={}; {:?})", self.conductor, self.coeffs)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.conductor)?,
                _ => write!(f, "({c})*z{}^{i}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Panicking std ops for internal use where conductors are known compatible.
impl Add for CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: CycloElem) -> CycloElem {
        self.try_add(&rhs).expect("conductor mismatch")
    }
}

impl Sub for CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: CycloElem) -> CycloElem {
        self.try_sub(&rhs).expect("conductor mismatch")
    }
}

impl Mul for CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: CycloElem) -> CycloElem {
        self.try_mul(&rhs).expect("conductor mismatch")
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            conductor: self.conductor,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl NumZero for CycloElem {
    fn zero() -> Self {
        CycloElem::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
}

impl NumOne for CycloElem {
    fn one() -> Self {
        CycloElem::from_rational(Rational::one())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            conductor: self.conductor,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = CycloRepr::deserialize(deserializer)?;
        CycloElem::new(repr.conductor, repr.coeffs).map_err(de::Error::custom)
    }
}
