//! Dense integer polynomials (ascending degree) and the cyclotomic
//! polynomials, plus the modular polynomial arithmetic used by the local
//! completions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::euler_phi;

/// Integer polynomial, coefficients in ascending degree. The zero
/// polynomial is an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::new(vec![BigInt::one()])
    }

    /// x^n
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        IntPoly::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic divisor; panics if the division leaves a
    /// remainder (internal use only, on inputs known to divide).
    fn div_exact_monic(&self, divisor: &IntPoly) -> IntPoly {
        assert!(divisor.is_monic());
        let (q, r) = self.divmod_monic(divisor);
        assert!(r.is_zero(), "division not exact");
        q
    }

    /// Quotient and remainder by a monic divisor, over the integers.
    pub fn divmod_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic());
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let idx = i - d + j;
                rem[idx] = &rem[idx] - &c * b;
            }
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Reduce every coefficient into [0, m).
    pub fn reduce_mod(&self, m: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.mod_floor(m)).collect())
    }

    /// Evaluate at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// The N-th cyclotomic polynomial, computed by exact division of x^N - 1
/// by the product of the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut memo: Vec<Option<IntPoly>> = vec![None; (n + 1) as usize];
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut Vec<Option<IntPoly>>) -> IntPoly {
    if let Some(p) = &memo[n as usize] {
        return p.clone();
    }
    let mut num = IntPoly::monomial(n as usize).sub(&IntPoly::one());
    for d in crate::arith::divisors(n) {
        if d < n {
            let phi_d = cyclotomic_memo(d, memo);
            num = num.div_exact_monic(&phi_d);
        }
    }
    debug_assert_eq!(num.degree(), Some(euler_phi(n) as usize));
    debug_assert!(num.is_monic());
    memo[n as usize] = Some(num.clone());
    num
}

// --- modular polynomial arithmetic (coefficients in Z/m) ---

pub fn mod_mul(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    a.mul(b).reduce_mod(m)
}

/// Quotient and remainder modulo m by a divisor whose leading coefficient
/// is a unit mod m (callers pass monic divisors).
pub fn mod_divmod(a: &IntPoly, divisor: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    assert!(divisor.is_monic());
    let d = divisor.degree().unwrap();
    let mut rem: Vec<BigInt> = a.reduce_mod(m).coeffs().to_vec();
    if rem.len() <= d {
        return (IntPoly::zero(), IntPoly::new(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = rem[i].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        quot[i - d] = c.clone();
        for (j, b) in divisor.coeffs().iter().enumerate() {
            let idx = i - d + j;
            rem[idx] = (&rem[idx] - &c * b).mod_floor(m);
        }
    }
    (IntPoly::new(quot), IntPoly::new(rem))
}

pub fn mod_rem(a: &IntPoly, divisor: &IntPoly, m: &BigInt) -> IntPoly {
    mod_divmod(a, divisor, m).1
}

/// Modular inverse of an integer; `None` when gcd(a, m) != 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Extended Euclid over F_p: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn fp_ext_gcd(a: &IntPoly, b: &IntPoly, p: &BigInt) -> (IntPoly, IntPoly, IntPoly) {
    let mut r0 = a.reduce_mod(p);
    let mut r1 = b.reduce_mod(p);
    let mut s0 = IntPoly::one();
    let mut s1 = IntPoly::zero();
    let mut t0 = IntPoly::zero();
    let mut t1 = IntPoly::one();
    while !r1.is_zero() {
        let (q, r) = fp_divmod(&r0, &r1, p);
        let s2 = s0.sub(&q.mul(&s1)).reduce_mod(p);
        let t2 = t0.sub(&q.mul(&t1)).reduce_mod(p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // normalize to a monic gcd
    if let Some(d) = r0.degree() {
        let lc = r0.coeff(d);
        if !lc.is_one() {
            let inv = mod_inverse(&lc, p).expect("p prime, nonzero leading coefficient");
            let scale = IntPoly::new(vec![inv]);
            r0 = mod_mul(&r0, &scale, p);
            s0 = mod_mul(&s0, &scale, p);
            t0 = mod_mul(&t0, &scale, p);
        }
    }
    (r0, s0, t0)
}

/// Division with remainder over F_p (divisor need not be monic).
pub fn fp_divmod(a: &IntPoly, divisor: &IntPoly, p: &BigInt) -> (IntPoly, IntPoly) {
    let divisor = divisor.reduce_mod(p);
    let d = divisor.degree().expect("division by zero polynomial");
    let lc_inv = mod_inverse(&divisor.coeff(d), p).expect("p prime");
    let mut rem: Vec<BigInt> = a.reduce_mod(p).coeffs().to_vec();
    if rem.len() <= d {
        return (IntPoly::zero(), IntPoly::new(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = (&rem[i] * &lc_inv).mod_floor(p);
        if c.is_zero() {
            continue;
        }
        quot[i - d] = c.clone();
        for (j, b) in divisor.coeffs().iter().enumerate() {
            let idx = i - d + j;
            rem[idx] = (&rem[idx] - &c * b).mod_floor(p);
        }
    }
    (IntPoly::new(quot), IntPoly::new(rem))
}
