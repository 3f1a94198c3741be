//! Exact arithmetic in the cyclotomic field Q(zeta_n).
//!
//! Elements are residues in Q[x]/(Phi_n(x)) with x mapped to a fixed
//! primitive n-th root of unity `q`. Reduction mod the cyclotomic
//! polynomial keeps the representation canonical, so equality of scalars
//! (in particular band parameters) is plain coefficient equality.

use crate::rat::Rat;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("n must be at least 3, got {0}")]
    UnsupportedModulus(usize),
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("0 * infinity is undefined")]
    ZeroTimesInfinity,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}

/// Euler's totient, by trial division.
fn totient(n: usize) -> usize {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact division of polynomials with rational coefficients (low degree first).
/// Panics when the division is not exact; cyclotomic factors always are.
fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(dn >= dd);
    let mut rem: Vec<Rat> = num.to_vec();
    let mut quot = vec![Rat::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let coef = rem[k + dd].div_ref(&den[dd]);
        for j in 0..=dd {
            rem[k + j] = rem[k + j].sub_ref(&coef.mul_ref(&den[j]));
        }
        quot[k] = coef;
    }
    assert!(rem.iter().all(Rat::is_zero), "inexact polynomial division");
    quot
}

/// Coefficients of the n-th cyclotomic polynomial, low degree first, monic.
///
/// Computed as (x^n - 1) divided by the product of Phi_d over proper
/// divisors d of n. Requires n >= 3: the degenerate small cases are not
/// part of the supported envelope.
pub fn cyclotomic_poly(n: usize) -> Result<Vec<Rat>, FieldError> {
    if n < 3 {
        return Err(FieldError::UnsupportedModulus(n));
    }
    Ok(cyclotomic_rec(n))
}

fn cyclotomic_rec(n: usize) -> Vec<Rat> {
    // x^n - 1
    let mut num = vec![Rat::zero(); n + 1];
    num[0] = Rat::from_int(-1);
    num[n] = Rat::one();
    let mut result = num;
    for d in 1..n {
        if n % d == 0 {
            result = poly_div_exact(&result, &cyclotomic_rec(d));
        }
    }
    result
}

/// An element of Q(zeta_n), stored as `deg phi(n)` rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    pub coeffs: Vec<Rat>,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        FieldElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        FieldElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            coeffs: self.coeffs.iter().map(Rat::neg_ref).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> FieldElem {
        FieldElem {
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(r)).collect(),
        }
    }

    /// Rational part if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}

impl fmt::Display for FieldElem {
    /// Canonical text form: rational-coefficient polynomial in `q`,
    /// ascending powers, e.g. `1/2 + 3*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if wrote {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = if neg { c.neg_ref() } else { c.clone() };
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", k)?;
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A point of the projective line over Q(zeta_n): a field scalar or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtScalar {
    Fin(FieldElem),
    Infinity,
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Fin(x) => write!(f, "{}", x),
            ExtScalar::Infinity => write!(f, "inf"),
        }
    }
}

/// Scaling on the extended line: finite points scale in the field, and a
/// nonzero scalar absorbs into infinity. `0 * infinity` is rejected.
pub fn ext_scale(a: &FieldElem, eta: &ExtScalar, ctx: &FieldCtx) -> Result<ExtScalar, FieldError> {
    match eta {
        ExtScalar::Fin(x) => Ok(ExtScalar::Fin(ctx.mul(a, x))),
        ExtScalar::Infinity => {
            if a.is_zero() {
                Err(FieldError::ZeroTimesInfinity)
            } else {
                Ok(ExtScalar::Infinity)
            }
        }
    }
}

/// Precomputed data for one field Q(zeta_n).
#[derive(Debug)]
pub struct FieldCtx {
    pub n: usize,
    pub deg: usize,
    /// Monic cyclotomic polynomial Phi_n, low degree first, length deg+1.
    pub phi: Vec<Rat>,
    /// Reduction of x^(deg+k) mod Phi_n for k in 0..deg-1.
    xpow_red: Vec<Vec<Rat>>,
    /// q^0 .. q^(n-1), reduced.
    q_pows: Vec<FieldElem>,
}

impl FieldCtx {
    pub fn new(n: usize) -> Result<FieldCtx, FieldError> {
        let phi = cyclotomic_poly(n)?;
        let deg = totient(n);
        debug_assert_eq!(phi.len(), deg + 1);

        // x^(deg+k) = x * x^(deg+k-1) reduced, seeded by
        // x^deg = -(phi_0 + phi_1 x + ... + phi_{deg-1} x^{deg-1}).
        let mut xpow_red: Vec<Vec<Rat>> = Vec::with_capacity(deg.max(1));
        let base: Vec<Rat> = phi[..deg].iter().map(Rat::neg_ref).collect();
        xpow_red.push(base);
        for k in 1..deg.saturating_sub(1) {
            let prev = &xpow_red[k - 1];
            let mut next = vec![Rat::zero(); deg];
            let lead = prev[deg - 1].clone();
            for j in 1..deg {
                next[j] = prev[j - 1].clone();
            }
            if !lead.is_zero() {
                for j in 0..deg {
                    next[j] = next[j].add_ref(&lead.mul_ref(&xpow_red[0][j]));
                }
            }
            xpow_red.push(next);
        }

        let mut ctx = FieldCtx {
            n,
            deg,
            phi,
            xpow_red,
            q_pows: Vec::new(),
        };
        let mut q_pows = Vec::with_capacity(n);
        q_pows.push(ctx.one());
        for _ in 1..n {
            let prev = q_pows.last().unwrap();
            q_pows.push(ctx.mul(prev, &ctx.gen_elem()));
        }
        ctx.q_pows = q_pows;
        Ok(ctx)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coeffs: vec![Rat::zero(); self.deg],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(&self, r: Rat) -> FieldElem {
        let mut coeffs = vec![Rat::zero(); self.deg];
        coeffs[0] = r;
        FieldElem { coeffs }
    }

    pub fn from_int(&self, k: i64) -> FieldElem {
        self.from_rat(Rat::from_int(k))
    }

    /// The class of x, i.e. q itself.
    fn gen_elem(&self) -> FieldElem {
        let mut coeffs = vec![Rat::zero(); self.deg];
        coeffs[1] = Rat::one();
        FieldElem { coeffs }
    }

    /// Reduce a raw coefficient vector of length < 2*deg.
    fn reduce(&self, raw: &[Rat]) -> FieldElem {
        let mut coeffs: Vec<Rat> = raw[..self.deg.min(raw.len())].to_vec();
        coeffs.resize(self.deg, Rat::zero());
        for (k, red) in self.xpow_red.iter().enumerate() {
            let idx = self.deg + k;
            if idx >= raw.len() || raw[idx].is_zero() {
                continue;
            }
            for j in 0..self.deg {
                coeffs[j] = coeffs[j].add_ref(&raw[idx].mul_ref(&red[j]));
            }
        }
        FieldElem { coeffs }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut raw = vec![Rat::zero(); 2 * self.deg - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                raw[i + j] = raw[i + j].add_ref(&ai.mul_ref(bj));
            }
        }
        self.reduce(&raw)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against Phi_n, which is irreducible over Q.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // Invariant: r0 = s0 * a (mod phi), r1 = s1 * a (mod phi).
        let mut r0: Vec<Rat> = self.phi.clone();
        let mut r1: Vec<Rat> = a.coeffs.clone();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while r1.len() > 1 || !r1.is_empty() && !r1[0].is_one() {
            if r1.is_empty() {
                unreachable!("gcd(a, phi) must be a nonzero constant");
            }
            if r1.len() == 1 {
                // Normalize the constant gcd to 1.
                let c = r1[0].recip();
                r1[0] = Rat::one();
                for s in s1.iter_mut() {
                    *s = s.mul_ref(&c);
                }
                break;
            }
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let mut inv = s1;
        inv.resize(2 * self.deg, Rat::zero());
        Ok(self.reduce(&inv[..2 * self.deg - 1]))
    }

    /// q^e for any integer e, reduced mod n.
    pub fn pow_q(&self, e: i64) -> FieldElem {
        let e = e.rem_euclid(self.n as i64) as usize;
        self.q_pows[e].clone()
    }

    /// The q-integer (i)_q = 1 + q + ... + q^(i-1); requires i >= 0.
    pub fn q_int(&self, i: i64) -> Result<FieldElem, FieldError> {
        if i < 0 {
            return Err(FieldError::OutOfRange(format!("q_int({})", i)));
        }
        let mut acc = self.zero();
        for j in 0..i {
            acc = acc.add(&self.pow_q(j));
        }
        Ok(acc)
    }

    /// alpha_i(l) = (i)_q (1 - q^(i-l)) for 1 <= i < l <= n.
    pub fn alpha(&self, i: i64, l: i64) -> Result<FieldElem, FieldError> {
        if !(1 <= i && i < l && l <= self.n as i64) {
            return Err(FieldError::OutOfRange(format!("alpha({}, {})", i, l)));
        }
        let qi = self.q_int(i)?;
        let factor = self.one().sub(&self.pow_q(i - l));
        Ok(self.mul(&qi, &factor))
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&ai.mul_ref(bj));
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] = ai.clone();
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] = out[i].sub_ref(bi);
    }
    trim(&mut out);
    out
}

/// Division with remainder in Q[x]; both outputs trimmed.
fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!den.is_empty());
    let mut rem: Vec<Rat> = num.to_vec();
    trim(&mut rem);
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![Rat::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let coef = rem.last().unwrap().div_ref(&lead);
        for j in 0..=dd {
            rem[k + j] = rem[k + j].sub_ref(&coef.mul_ref(&den[j]));
        }
        quot[k] = coef;
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

/// Text form used in JSON and on the CLI. `FieldElem::to_string` is the
/// printer; parsing lives with the CLI scalar grammar.
pub fn ext_to_string(x: &ExtScalar) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&k| Rat::from_int(k)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(3).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(5).unwrap(), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12).unwrap(), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(2), Err(FieldError::UnsupportedModulus(2)));
        assert_eq!(cyclotomic_poly(1), Err(FieldError::UnsupportedModulus(1)));
    }

    #[test]
    fn pow_q_cycles() {
        let ctx = FieldCtx::new(3).unwrap();
        assert_eq!(ctx.pow_q(3), ctx.one());
        assert_eq!(ctx.pow_q(-1), ctx.pow_q(2));
        // zeta_4^2 = -1 after reduction mod Phi_4.
        let ctx4 = FieldCtx::new(4).unwrap();
        let q = ctx4.pow_q(1);
        assert_eq!(ctx4.mul(&q, &q), ctx4.from_int(-1));
    }

    #[test]
    fn q_int_examples() {
        let ctx = FieldCtx::new(3).unwrap();
        assert_eq!(ctx.q_int(0).unwrap(), ctx.zero());
        assert_eq!(ctx.q_int(3).unwrap(), ctx.zero());
        // (2)_q = 1 + q, cross-checked against (q^2 - 1)/(q - 1).
        let direct = ctx.q_int(2).unwrap();
        assert_eq!(direct, ctx.one().add(&ctx.pow_q(1)));
        let num = ctx.pow_q(2).sub(&ctx.one());
        let den = ctx.pow_q(1).sub(&ctx.one());
        let quotient = ctx.mul(&num, &ctx.inv(&den).unwrap());
        assert_eq!(direct, quotient);
        assert!(ctx.q_int(-1).is_err());
    }

    #[test]
    fn alpha_examples() {
        let ctx = FieldCtx::new(3).unwrap();
        // alpha(1,2) = (1)_q (1 - q^{-1}) = 1 - q^2.
        assert_eq!(
            ctx.alpha(1, 2).unwrap(),
            ctx.one().sub(&ctx.pow_q(2))
        );
        // alpha(2,3) = (1+q)(1 - q^{-1}).
        let expect = ctx.mul(
            &ctx.one().add(&ctx.pow_q(1)),
            &ctx.one().sub(&ctx.pow_q(-1)),
        );
        assert_eq!(ctx.alpha(2, 3).unwrap(), expect);
        assert!(ctx.alpha(2, 2).is_err());
        assert!(ctx.alpha(0, 2).is_err());
        assert!(ctx.alpha(1, 4).is_err());
    }

    #[test]
    fn alpha_never_vanishes_in_range() {
        for n in 3..=7 {
            let ctx = FieldCtx::new(n).unwrap();
            for l in 1..=n as i64 {
                for i in 1..l {
                    assert!(
                        !ctx.alpha(i, l).unwrap().is_zero(),
                        "alpha({}, {}) vanished at n={}",
                        i,
                        l,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn ext_scale_rules() {
        let ctx = FieldCtx::new(3).unwrap();
        let q = ctx.pow_q(1);
        assert_eq!(
            ext_scale(&q, &ExtScalar::Fin(ctx.one()), &ctx).unwrap(),
            ExtScalar::Fin(q.clone())
        );
        assert_eq!(
            ext_scale(&ctx.pow_q(2), &ExtScalar::Infinity, &ctx).unwrap(),
            ExtScalar::Infinity
        );
        assert_eq!(
            ext_scale(&ctx.zero(), &ExtScalar::Infinity, &ctx),
            Err(FieldError::ZeroTimesInfinity)
        );
    }

    #[test]
    fn display_forms() {
        let ctx = FieldCtx::new(5).unwrap();
        let mut e = ctx.zero();
        e.coeffs[0] = Rat::new(1, 2);
        e.coeffs[2] = Rat::from_int(3);
        assert_eq!(e.to_string(), "1/2 + 3*q^2");
        assert_eq!(ctx.zero().to_string(), "0");
        assert_eq!(ctx.pow_q(1).neg().to_string(), "-q");
        assert_eq!(ExtScalar::Infinity.to_string(), "inf");
    }

    fn arb_elem(n: usize) -> impl Strategy<Value = FieldElem> {
        let deg = totient(n);
        proptest::collection::vec((-20i64..20, 1i64..6), deg).prop_map(move |cs| FieldElem {
            coeffs: cs.into_iter().map(|(a, b)| Rat::new(a, b)).collect(),
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms_n3(a in arb_elem(3), b in arb_elem(3), c in arb_elem(3)) {
            let ctx = FieldCtx::new(3).unwrap();
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(ctx.mul(&a, &b), ctx.mul(&b, &a));
            prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
            prop_assert_eq!(ctx.mul(&a, &b.add(&c)), ctx.mul(&a, &b).add(&ctx.mul(&a, &c)));
            if !a.is_zero() {
                prop_assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
            }
        }

        #[test]
        fn field_axioms_n5(a in arb_elem(5), b in arb_elem(5)) {
            let ctx = FieldCtx::new(5).unwrap();
            prop_assert_eq!(ctx.mul(&a, &b), ctx.mul(&b, &a));
            if !a.is_zero() {
                prop_assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
            }
        }
    }

    #[test]
    fn q_int_product_identity() {
        for n in [3usize, 4, 5, 12] {
            let ctx = FieldCtx::new(n).unwrap();
            let qm1 = ctx.pow_q(1).sub(&ctx.one());
            for i in 0..=(3 * n as i64) {
                let lhs = ctx.mul(&ctx.q_int(i).unwrap(), &qm1);
                let rhs = ctx.pow_q(i).sub(&ctx.one());
                assert_eq!(lhs, rhs, "failed at n={}, i={}", n, i);
            }
        }
    }

    #[test]
    fn pow_q_inverses() {
        for n in [3usize, 4, 5] {
            let ctx = FieldCtx::new(n).unwrap();
            for e in -(3 * n as i64)..=(3 * n as i64) {
                assert_eq!(ctx.mul(&ctx.pow_q(e), &ctx.pow_q(-e)), ctx.one());
            }
        }
    }
}

// serde support for JSON output: scalars travel as their canonical text
// form and are parsed back by the CLI scalar grammar.
impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for ExtScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
