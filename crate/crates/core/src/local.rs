//! Unramified local completions of Q(zeta_N) at p not dividing N: Hensel
//! lifting of a degree-f factor of the cyclotomic polynomial, arithmetic in
//! the quotient ring mod (p^M, ghat), and exact p-adic valuations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{euler_phi, is_prime, mult_order, ord_p_int, pow_big};
use crate::cyclo::CycloElem;
use crate::error::{Error, Result};
use crate::intpoly::{cyclotomic_poly, fp_divmod, fp_ext_gcd, mod_divmod, mod_inverse, IntPoly};

/// A p-adic valuation observed at working precision M.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum PValuation {
    /// Exact order v < M.
    Finite(u64),
    /// Zero at precision M: the true order is at least M.
    AtLeast(u64),
    /// The element was not p-integral; no valuation certificate.
    NotIntegral,
}

impl PValuation {
    /// Whether the valuation certifies "order >= bound".
    pub fn meets(&self, bound: i64) -> bool {
        if bound <= 0 {
            return !matches!(self, PValuation::NotIntegral);
        }
        match self {
            PValuation::Finite(v) => *v as i64 >= bound,
            PValuation::AtLeast(m) => *m as i64 >= bound,
            PValuation::NotIntegral => false,
        }
    }

    /// Whether the order is known exactly equal to `bound` (sharpness).
    pub fn is_exactly(&self, bound: i64) -> bool {
        matches!(self, PValuation::Finite(v) if *v as i64 == bound)
    }
}

impl std::fmt::Display for PValuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PValuation::Finite(v) => write!(f, "{v}"),
            PValuation::AtLeast(m) => write!(f, ">={m}"),
            PValuation::NotIntegral => write!(f, "not-integral"),
        }
    }
}

/// The completion O_p / p^M for one prime above p in Q(zeta_N): work
/// modulo (p^M, ghat) where ghat is a monic degree-f factor of Phi_N.
#[derive(Clone, Debug)]
pub struct LocalContext {
    p: u64,
    n: u64,
    m: u64,
    f: u64,
    ghat: IntPoly,
    pm: BigInt,
}

/// An element of the quotient ring, as f residues mod p^M with respect to
/// the basis 1, x, ..., x^{f-1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalElem {
    residues: Vec<BigInt>,
}

impl LocalElem {
    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }
}

impl LocalContext {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn conductor(&self) -> u64 {
        self.n
    }
    pub fn precision(&self) -> u64 {
        self.m
    }
    pub fn residue_degree(&self) -> u64 {
        self.f
    }
    pub fn ghat(&self) -> &IntPoly {
        &self.ghat
    }
}

/// Build the local context for (N, p, M): residue degree f = order of p
/// mod N, a deterministic (lexicographically smallest) irreducible
/// degree-f factor of Phi_N mod p, Hensel-lifted to precision p^M.
pub fn make_local_context(n: u64, p: u64, m: u64) -> Result<LocalContext> {
    if !is_prime(p) {
        return Err(Error::InvalidParam(format!("{p} is not prime")));
    }
    if m < 1 {
        return Err(Error::InvalidParam("precision must be >= 1".to_string()));
    }
    if n > 1 && n % p == 0 {
        return Err(Error::Ramified { p, n });
    }
    let pm = pow_big(p, m);
    if n == 1 {
        // trivial context over Q; ghat = x - 1 by convention
        return Ok(LocalContext {
            p,
            n,
            m,
            f: 1,
            ghat: IntPoly::from_i64(&[-1, 1]).reduce_mod(&pm),
            pm,
        });
    }
    let f = mult_order(p, n);
    let phi_n = cyclotomic_poly(n);
    let g_mod_p = if f == euler_phi(n) {
        phi_n.reduce_mod(&BigInt::from(p))
    } else {
        find_factor(&phi_n, p, f)
    };
    let ghat = hensel_lift(&phi_n, &g_mod_p, p, m)?;
    Ok(LocalContext {
        p,
        n,
        m,
        f,
        ghat,
        pm,
    })
}

/// Lexicographically smallest (by ascending coefficient vector read as a
/// base-p number) monic degree-f divisor of phi mod p. Every monic
/// degree-f divisor is irreducible because all irreducible factors of a
/// squarefree Phi_N mod p share the degree f.
fn find_factor(phi: &IntPoly, p: u64, f: u64) -> IntPoly {
    let pb = BigInt::from(p);
    let f = f as usize;
    let total = (p as u128).pow(f as u32);
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(f + 1);
        let mut rest = idx;
        for _ in 0..f {
            coeffs.push(BigInt::from((rest % p as u128) as u64));
            rest /= p as u128;
        }
        coeffs.push(BigInt::one());
        let cand = IntPoly::new(coeffs);
        let (_, r) = fp_divmod(phi, &cand, &pb);
        if r.is_zero() {
            return cand;
        }
    }
    unreachable!("Phi_N mod p must have a degree-f factor");
}

/// Quadratic Hensel lifting: from phi = g*h mod p (g the target factor)
/// to a monic factor of phi mod p^M, doubling the precision each round and
/// updating the Bezout cofactors alongside.
fn hensel_lift(phi: &IntPoly, g: &IntPoly, p: u64, m: u64) -> Result<IntPoly> {
    let pb = BigInt::from(p);
    let target = pow_big(p, m);
    // cofactor mod p
    let (h, r) = fp_divmod(phi, g, &pb);
    debug_assert!(r.is_zero());
    // Bezout: s*g + t*h = 1 mod p (g, h coprime: Phi_N squarefree mod p)
    let (one, s, t) = fp_ext_gcd(g, &h, &pb);
    if one.degree() != Some(0) {
        return Err(Error::InvalidParam(
            "factor and cofactor not coprime mod p".to_string(),
        ));
    }
    let mut modulus = pb.clone();
    let (mut g, mut h, mut s, mut t) = (g.clone(), h, s, t);
    while modulus < target {
        let m2 = (&modulus * &modulus).min(target.clone());
        // lift the factorization: e = phi - g h; g += (t e mod g); h gets
        // the complementary correction
        let e = phi.sub(&g.mul(&h)).reduce_mod(&m2);
        let (q, r) = mod_divmod(&t.mul(&e).reduce_mod(&m2), &g, &m2);
        let g_new = g.add(&r).reduce_mod(&m2);
        let h_new = h.add(&s.mul(&e).reduce_mod(&m2)).add(&q.mul(&h)).reduce_mod(&m2);
        // lift the Bezout identity: b = s g + t h - 1
        let b = s
            .mul(&g_new)
            .add(&t.mul(&h_new))
            .sub(&IntPoly::one())
            .reduce_mod(&m2);
        let (c, d) = mod_divmod(&t.mul(&b).reduce_mod(&m2), &g_new, &m2);
        let t_new = t.sub(&d).reduce_mod(&m2);
        let s_new = s
            .sub(&s.mul(&b).reduce_mod(&m2))
            .sub(&c.mul(&h_new).reduce_mod(&m2))
            .reduce_mod(&m2);
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        modulus = m2;
    }
    let g = g.reduce_mod(&target);
    debug_assert!(g.is_monic());
    debug_assert!(mod_divmod(phi, &g, &target).1.is_zero());
    Ok(g)
}

impl LocalContext {
    fn zero_elem(&self) -> LocalElem {
        LocalElem {
            residues: vec![BigInt::zero(); self.f as usize],
        }
    }

    fn reduce_poly(&self, poly: &IntPoly) -> LocalElem {
        let r = mod_divmod(poly, &self.ghat, &self.pm).1;
        let mut residues = vec![BigInt::zero(); self.f as usize];
        for (i, c) in r.coeffs().iter().enumerate() {
            residues[i] = c.mod_floor(&self.pm);
        }
        LocalElem { residues }
    }

    /// Reduce a p-integral global element into the quotient ring,
    /// inverting coefficient denominators mod p^M.
    pub fn embed(&self, a: &CycloElem) -> Result<LocalElem> {
        let a = if a.conductor() == self.n {
            a.clone()
        } else {
            a.promote(self.n)
                .map_err(|_| Error::ConductorMismatch(a.conductor(), self.n))?
        };
        let mut coeffs = Vec::with_capacity(a.coeffs().len());
        for c in a.coeffs() {
            let den_inv = mod_inverse(c.denom(), &self.pm)
                .ok_or(Error::NotPIntegral { p: self.p })?;
            coeffs.push((c.numer() * den_inv).mod_floor(&self.pm));
        }
        Ok(self.reduce_poly(&IntPoly::new(coeffs)))
    }

    pub fn add(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        LocalElem {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .map(|(x, y)| (x + y).mod_floor(&self.pm))
                .collect(),
        }
    }

    pub fn sub(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        LocalElem {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .map(|(x, y)| (x - y).mod_floor(&self.pm))
                .collect(),
        }
    }

    pub fn mul(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        if self.f == 1 {
            return LocalElem {
                residues: vec![(&a.residues[0] * &b.residues[0]).mod_floor(&self.pm)],
            };
        }
        let pa = IntPoly::new(a.residues.clone());
        let pb = IntPoly::new(b.residues.clone());
        self.reduce_poly(&pa.mul(&pb))
    }

    /// The quotient-ring endomorphism x -> x^p; this is the local
    /// Frobenius, compatible with the global zeta -> zeta^p.
    pub fn frobenius(&self, a: &LocalElem) -> LocalElem {
        let mut coeffs = vec![BigInt::zero(); (self.f as usize - 1) * self.p as usize + 1];
        for (i, c) in a.residues.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            coeffs[i * self.p as usize] += c;
        }
        self.reduce_poly(&IntPoly::new(coeffs))
    }

    /// Min coefficient order in the quotient basis; exact in an unramified
    /// extension where p is a uniformizer.
    pub fn valuation(&self, e: &LocalElem) -> PValuation {
        let mut best: Option<u64> = None;
        for r in &e.residues {
            if let Some(v) = ord_p_int(r, self.p) {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        match best {
            Some(v) => PValuation::Finite(v.min(self.m)),
            None => PValuation::AtLeast(self.m),
        }
    }

    /// valuation(embed(a)); non-p-integral input reports NotIntegral.
    pub fn val_of(&self, a: &CycloElem) -> PValuation {
        match self.embed(a) {
            Ok(e) => self.valuation(&e),
            Err(_) => PValuation::NotIntegral,
        }
    }

    pub fn is_zero_elem(&self, e: &LocalElem) -> bool {
        e.residues.iter().all(Zero::is_zero)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn zero(&self) -> LocalElem {
        self.zero_elem()
    }
}
