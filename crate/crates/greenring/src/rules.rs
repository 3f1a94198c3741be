//! The symbolic rule engine: closed-form tensor decompositions on labels.
//!
//! Every arm of `decompose_pair` transcribes one decomposition statement
//! literally, index ranges and all, with the convention that a direct-sum
//! range with inverted bounds is empty. Band parameters are computed in
//! exact projective-line arithmetic.

use crate::algebra::HopfContext;
use crate::decompose::{Decomposition, ModuleLabel};
use crate::exactfield::{ext_scale, ExtScalar};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum RulesError {
    #[error("label pair matches no dispatch arm: {0}")]
    UnreachableCase(String),
    #[error("vanishing q-integer factor in a band parameter map: {0}")]
    ZeroFactor(String),
}

/// What the engine did for one pair: the statement applied, whether the
/// operands were swapped, which V(1,r) twists were stripped, and the
/// parameter values that selected the case.
#[derive(Debug, Clone, Serialize, Default)]
pub struct RuleTrace {
    pub theorem: String,
    pub swapped: bool,
    pub v1_strips: Vec<i64>,
    pub params: Vec<(String, String)>,
}

impl RuleTrace {
    fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }
}

/// c(t) = floor((t+1)/2), so that c(t) + c(t-1) = t.
pub fn c_fn(t: i64) -> i64 {
    (t + 1).div_euclid(2)
}

/// m+1 for odd m, m for even m.
fn odd_bump(m: i64) -> i64 {
    if m.rem_euclid(2) == 1 {
        m + 1
    } else {
        m
    }
}

/// m+1 for even m, m for odd m.
fn even_bump(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        m + 1
    } else {
        m
    }
}

/// Dual label: contravariant involution on the classification.
pub fn dualize_label(ctx: &HopfContext, label: &ModuleLabel) -> ModuleLabel {
    let n = ctx.n;
    let f = &ctx.field;
    match label {
        ModuleLabel::Simple { l, r } => ModuleLabel::simple(n, *l, 1 - *l as i64 - r),
        ModuleLabel::Proj { l, r } => ModuleLabel::proj(n, *l, 1 - *l as i64 - r),
        ModuleLabel::Str { m, l, r } => ModuleLabel::string(n, -m, *l, 1 - *l as i64 - r),
        ModuleLabel::Band { s, l, r, eta } => {
            let factor = f.pow_q(*l as i64).neg();
            let new_eta = ext_scale(&factor, eta, f).expect("-q^l is nonzero");
            ModuleLabel::band(n, *s, n - l, 1 - r, new_eta)
        }
    }
}

/// The quantity eta * q^(1-l) * (l)_q attached to a band label.
pub fn band_invariant(ctx: &HopfContext, label: &ModuleLabel) -> ExtScalar {
    let f = &ctx.field;
    match label {
        ModuleLabel::Band { l, eta, .. } => {
            let li = *l as i64;
            let factor = f.mul(&f.pow_q(1 - li), &f.q_int(li).unwrap());
            ext_scale(&factor, eta, f).expect("q^(1-l)(l)_q is nonzero for 1 <= l < n")
        }
        other => panic!("band_invariant on non-band label {}", other),
    }
}

/// The normalized band parameter eta * q^(l-1) / (l)_q. Two band modules
/// land in the same tensor regime exactly when these values agree; this is
/// the common parameter in the equal-regime statements.
fn band_kappa(ctx: &HopfContext, s_eta: &ExtScalar, l: i64) -> ExtScalar {
    let f = &ctx.field;
    let factor = f.mul(
        &f.pow_q(l - 1),
        &f.inv(&f.q_int(l).unwrap()).expect("(l)_q is nonzero for 1 <= l < n"),
    );
    ext_scale(&factor, s_eta, f).expect("q^(l-1)/(l)_q is nonzero")
}

/// Accumulates summands with range validation.
struct Out<'a> {
    ctx: &'a HopfContext,
    dec: Decomposition,
}

impl<'a> Out<'a> {
    fn new(ctx: &'a HopfContext) -> Out<'a> {
        Out { ctx, dec: Decomposition::new() }
    }

    fn guard(&self, l: i64, kind: &str) -> Result<usize, RulesError> {
        let n = self.ctx.n as i64;
        if l < 1 || l > n {
            return Err(RulesError::UnreachableCase(format!(
                "computed {} index {} outside 1..={}",
                kind, l, n
            )));
        }
        Ok(l as usize)
    }

    fn simple(&mut self, l: i64, r: i64, mult: i64) -> Result<(), RulesError> {
        if mult == 0 {
            return Ok(());
        }
        let l = self.guard(l, "simple")?;
        self.dec.add(ModuleLabel::simple(self.ctx.n, l, r), mult as u64);
        Ok(())
    }

    fn proj(&mut self, l: i64, r: i64, mult: i64) -> Result<(), RulesError> {
        if mult == 0 {
            return Ok(());
        }
        let l = self.guard(l, "projective")?;
        self.dec.add(ModuleLabel::proj(self.ctx.n, l, r), mult as u64);
        Ok(())
    }

    fn string(&mut self, m: i64, l: i64, r: i64, mult: i64) -> Result<(), RulesError> {
        if mult == 0 {
            return Ok(());
        }
        let l = self.guard(l, "string")?;
        if l == self.ctx.n {
            return Err(RulesError::UnreachableCase(
                "string summand with l = n".to_string(),
            ));
        }
        self.dec.add(ModuleLabel::string(self.ctx.n, m, l, r), mult as u64);
        Ok(())
    }

    fn band(&mut self, s: usize, l: i64, r: i64, eta: ExtScalar, mult: i64) -> Result<(), RulesError> {
        if mult == 0 {
            return Ok(());
        }
        let l = self.guard(l, "band")?;
        if l == self.ctx.n {
            return Err(RulesError::UnreachableCase(
                "band summand with l = n".to_string(),
            ));
        }
        self.dec.add(ModuleLabel::band(self.ctx.n, s, l, r, eta), mult as u64);
        Ok(())
    }
}

/// eta * sign * q^e * (num)_q / (den)_q, with the vanishing-factor guard:
/// a zero q-integer numerator inside a parameter map is never supposed to
/// happen in a valid index range and is reported, not absorbed.
fn eta_map(
    ctx: &HopfContext,
    eta: &ExtScalar,
    negate: bool,
    e: i64,
    num: i64,
    den: i64,
) -> Result<ExtScalar, RulesError> {
    let f = &ctx.field;
    let num_q = f.q_int(num.rem_euclid(ctx.n as i64 * 2)).unwrap();
    if num_q.is_zero() {
        return Err(RulesError::ZeroFactor(format!(
            "({})_q = 0 in band parameter map",
            num
        )));
    }
    let den_q = f.q_int(den).unwrap();
    if den_q.is_zero() {
        return Err(RulesError::ZeroFactor(format!(
            "({})_q = 0 in band parameter denominator",
            den
        )));
    }
    let mut factor = f.mul(&f.pow_q(e), &f.mul(&num_q, &f.inv(&den_q).unwrap()));
    if negate {
        factor = factor.neg();
    }
    ext_scale(&factor, eta, f).map_err(|_| {
        RulesError::ZeroFactor("zero multiplier applied to an infinite parameter".to_string())
    })
}

fn kind_rank(label: &ModuleLabel) -> u8 {
    match label {
        ModuleLabel::Simple { .. } => 0,
        ModuleLabel::Proj { .. } => 1,
        ModuleLabel::Str { .. } => 2,
        ModuleLabel::Band { .. } => 3,
    }
}

fn shift_label(ctx: &HopfContext, label: &ModuleLabel, dr: i64) -> ModuleLabel {
    let n = ctx.n;
    match label {
        ModuleLabel::Simple { l, r } => ModuleLabel::simple(n, *l, r + dr),
        ModuleLabel::Proj { l, r } => ModuleLabel::proj(n, *l, r + dr),
        ModuleLabel::Str { m, l, r } => ModuleLabel::string(n, *m, *l, r + dr),
        ModuleLabel::Band { s, l, r, eta } => ModuleLabel::band(n, *s, *l, r + dr, eta.clone()),
    }
}

/// Decomposition of the tensor product of two labeled indecomposables.
pub fn decompose_pair(
    ctx: &HopfContext,
    first: &ModuleLabel,
    second: &ModuleLabel,
) -> Result<(Decomposition, RuleTrace), RulesError> {
    let mut trace = RuleTrace::default();

    // Strip V(1,r) tensor factors: they only twist the r-index.
    let mut rest: Vec<&ModuleLabel> = Vec::new();
    let mut shift = 0i64;
    for label in [first, second] {
        if let ModuleLabel::Simple { l: 1, r } = label {
            shift += *r;
            trace.v1_strips.push(*r);
        } else {
            rest.push(label);
        }
    }
    match rest.len() {
        0 => {
            trace.theorem = "Prop 3.1(1)".to_string();
            let mut out = Out::new(ctx);
            out.simple(1, shift, 1)?;
            return Ok((out.dec, trace));
        }
        1 => {
            trace.theorem = match rest[0] {
                ModuleLabel::Simple { .. } => "Prop 3.1(1)",
                ModuleLabel::Proj { .. } => "Cor 3.4",
                ModuleLabel::Str { .. } => "Prop 3.6",
                ModuleLabel::Band { .. } => "Lemma 3.8",
            }
            .to_string();
            let mut dec = Decomposition::new();
            dec.add(shift_label(ctx, rest[0], shift), 1);
            return Ok((dec, trace));
        }
        _ => {}
    }

    // Order the pair by kind; the tensor product is commutative.
    let (x, y) = if kind_rank(rest[0]) <= kind_rank(rest[1]) {
        (rest[0], rest[1])
    } else {
        trace.swapped = true;
        (rest[1], rest[0])
    };

    let mut out = Out::new(ctx);
    match (x, y) {
        (ModuleLabel::Simple { l, r }, ModuleLabel::Simple { l: lp, r: rp }) => {
            arm_simple_simple(ctx, &mut out, &mut trace, *l, *r, *lp, *rp)?
        }
        (ModuleLabel::Simple { l, r }, ModuleLabel::Proj { l: lp, r: rp }) => {
            arm_simple_proj(ctx, &mut out, &mut trace, *l, *r, *lp, *rp)?
        }
        (ModuleLabel::Simple { l, r }, ModuleLabel::Str { m, l: lp, r: rp }) => {
            arm_simple_string(ctx, &mut out, &mut trace, *l, *r, *m, *lp, *rp)?
        }
        (ModuleLabel::Simple { l, r }, ModuleLabel::Band { s, l: lp, r: rp, eta }) => {
            arm_simple_band(ctx, &mut out, &mut trace, *l, *r, *s, *lp, *rp, eta)?
        }
        (ModuleLabel::Proj { l, r }, ModuleLabel::Proj { l: lp, r: rp }) => {
            arm_proj_proj(ctx, &mut out, &mut trace, *l, *r, *lp, *rp)?
        }
        (ModuleLabel::Proj { l, r }, ModuleLabel::Str { m, l: lp, r: rp }) => {
            arm_proj_string(ctx, &mut out, &mut trace, *l, *r, *m, *lp, *rp)?
        }
        (ModuleLabel::Proj { l, r }, ModuleLabel::Band { s, l: lp, r: rp, eta: _ }) => {
            arm_proj_band(ctx, &mut out, &mut trace, *l, *r, *s, *lp, *rp)?
        }
        (ModuleLabel::Str { m, l, r }, ModuleLabel::Str { m: ms, l: lp, r: rp }) => {
            arm_string_string(ctx, &mut out, &mut trace, *m, *l, *r, *ms, *lp, *rp)?
        }
        (ModuleLabel::Str { m, l, r }, ModuleLabel::Band { s, l: lp, r: rp, eta }) => {
            arm_string_band(ctx, &mut out, &mut trace, *m, *l, *r, *s, *lp, *rp, eta)?
        }
        (ModuleLabel::Band { s: m, l, r, eta: alpha }, ModuleLabel::Band { s, l: lp, r: rp, eta }) => {
            arm_band_band(ctx, &mut out, &mut trace, *m, *l, *r, alpha, *s, *lp, *rp, eta)?
        }
        other => {
            return Err(RulesError::UnreachableCase(format!(
                "unordered pair fell through dispatch: {} , {}",
                other.0, other.1
            )))
        }
    }
    Ok((out.dec, trace))
}

#[allow(clippy::too_many_arguments)]
fn arm_simple_simple(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    l0: usize,
    r0: i64,
    l1: usize,
    r1: i64,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    // Hypothesis ordering l <= l'.
    let ((l, r), (lp, rp)) = if l0 <= l1 {
        ((l0 as i64, r0), (l1 as i64, r1))
    } else {
        trace.swapped = !trace.swapped;
        ((l1 as i64, r1), (l0 as i64, r0))
    };
    trace.param("l", l);
    trace.param("l'", lp);
    if l + lp <= n + 1 {
        trace.theorem = "Prop 3.1(1)".to_string();
        for i in 0..l {
            out.simple(l + lp - 1 - 2 * i, r + rp + i, 1)?;
        }
    } else {
        let t = l + lp - (n + 1);
        trace.theorem = "Prop 3.1(2)".to_string();
        trace.param("t", t);
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 1)?;
        }
        for i in (t + 1)..=(l - 1) {
            out.simple(l + lp - 1 - 2 * i, r + rp + i, 1)?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_simple_proj(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    l: usize,
    r: i64,
    lp: usize,
    rp: i64,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let (l, lp) = (l as i64, lp as i64);
    let l1 = l.min(lp);
    trace.param("l", l);
    trace.param("l'", lp);
    if l + lp <= n {
        trace.theorem = "Thm 3.3".to_string();
        for i in 0..l1 {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 1)?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2)?;
        }
    } else {
        let t = l + lp - (n + 1);
        trace.theorem = "Thm 3.5".to_string();
        trace.param("t", t);
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 2)?;
        }
        for i in (t + 1)..=(l1 - 1) {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 1)?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2)?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_simple_string(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    l: usize,
    r: i64,
    m_signed: i64,
    lp: usize,
    rp: i64,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let (l, lp) = (l as i64, lp as i64);
    let am = m_signed.abs();
    let l1 = l.min(lp);
    trace.param("l", l);
    trace.param("l'", lp);
    trace.param("m", m_signed);
    if l + lp <= n {
        trace.theorem = "Prop 3.6".to_string();
        for i in 0..l1 {
            out.string(m_signed, l + lp - 1 - 2 * i, r + rp + i, 1)?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am))?;
        }
    } else {
        let t = l + lp - (n + 1);
        trace.theorem = "Prop 3.7".to_string();
        trace.param("t", t);
        for i in (t + 1)..=(l1 - 1) {
            out.string(m_signed, l + lp - 1 - 2 * i, r + rp + i, 1)?;
        }
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, even_bump(am))?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am))?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_simple_band(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    l: usize,
    r: i64,
    s: usize,
    lp: usize,
    rp: i64,
    eta: &ExtScalar,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let (l, lp) = (l as i64, lp as i64);
    let l1 = l.min(lp);
    let si = s as i64;
    trace.param("l", l);
    trace.param("l'", lp);
    trace.param("s", si);
    if l + lp <= n {
        trace.theorem = "Thm 3.16".to_string();
        for i in 0..l1 {
            let new_eta = eta_map(ctx, eta, false, 2 * i - l + 1, l + lp - 1 - 2 * i, lp)?;
            out.band(s, l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, si)?;
        }
    } else {
        let t = l + lp - (n + 1);
        trace.theorem = "Thm 3.17".to_string();
        trace.param("t", t);
        for i in (t + 1)..=(l1 - 1) {
            let new_eta = eta_map(ctx, eta, false, 2 * i - l + 1, l + lp - 1 - 2 * i, lp)?;
            out.band(s, l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, si)?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, si)?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_proj_proj(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    l0: usize,
    r0: i64,
    l1: usize,
    r1: i64,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let ((l, r), (lp, rp)) = if l0 <= l1 {
        ((l0 as i64, r0), (l1 as i64, r1))
    } else {
        trace.swapped = !trace.swapped;
        ((l1 as i64, r1), (l0 as i64, r0))
    };
    trace.param("l", l);
    trace.param("l'", lp);
    if l + lp <= n {
        trace.theorem = "Prop 4.5".to_string();
        for i in 0..l {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 2)?;
        }
        for i in lp..=(lp + l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2)?;
        }
        for i in c_fn(l + lp - 1)..=(lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 4)?;
        }
        for i in 1..=c_fn(n - l - lp) {
            out.proj(l + lp - 1 + 2 * i, r + rp - i, 4)?;
        }
    } else {
        let t = l + lp - (n + 1);
        trace.theorem = "Cor 4.6".to_string();
        trace.param("t", t);
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 4)?;
        }
        for i in (t + 1)..=(l - 1) {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 2)?;
        }
        for i in lp..=(n - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2)?;
        }
        for i in c_fn(l + lp - 1)..=(lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 4)?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_proj_string(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    l: usize,
    r: i64,
    m_signed: i64,
    lp: usize,
    rp: i64,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let (l, lp) = (l as i64, lp as i64);
    let am = m_signed.abs();
    let t = l + lp - (n + 1);
    trace.param("l", l);
    trace.param("l'", lp);
    trace.param("m", m_signed);
    if l <= lp && l + lp <= n {
        trace.theorem = "Prop 4.1".to_string();
        for i in 0..l {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, even_bump(am))?;
        }
        for i in lp..=(l + lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am))?;
        }
        for i in c_fn(l + lp - 1)..=(lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2 * even_bump(am))?;
        }
        for i in 1..=c_fn(n - l - lp) {
            out.proj(l + lp - 1 + 2 * i, r + rp - i, 2 * odd_bump(am))?;
        }
    } else if l <= lp {
        trace.theorem = "Cor 4.2".to_string();
        trace.param("t", t);
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 2 * even_bump(am))?;
        }
        for i in (t + 1)..=(l - 1) {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, even_bump(am))?;
        }
        for i in lp..=(n - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am))?;
        }
        for i in c_fn(l + lp - 1)..=(lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2 * even_bump(am))?;
        }
    } else if l + lp <= n {
        trace.theorem = "Cor 4.3".to_string();
        for i in 0..lp {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, even_bump(am))?;
        }
        for i in l..=(l + lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am))?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2 * odd_bump(am))?;
        }
        for i in 1..=c_fn(n - l - lp) {
            out.proj(l + lp - 1 + 2 * i, r + rp - i, 2 * odd_bump(am))?;
        }
    } else {
        trace.theorem = "Cor 4.4".to_string();
        trace.param("t", t);
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 2 * even_bump(am))?;
        }
        for i in (t + 1)..=(lp - 1) {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, even_bump(am))?;
        }
        for i in l..=(n - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am))?;
        }
        for i in c_fn(l + lp - 1)..=(l - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2 * odd_bump(am))?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_proj_band(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    l: usize,
    r: i64,
    s: usize,
    lp: usize,
    rp: i64,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let (l, lp) = (l as i64, lp as i64);
    let si = s as i64;
    let l1 = l.min(lp);
    let l2 = l.max(lp);
    trace.param("l", l);
    trace.param("l'", lp);
    trace.param("s", si);
    if l + lp <= n {
        trace.theorem = "Prop 4.7".to_string();
        for i in 0..l1 {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, si)?;
        }
        for i in l2..=(l + lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, si)?;
        }
        for i in c_fn(l + lp - 1)..=(l2 - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2 * si)?;
        }
        for i in 1..=c_fn(n - l - lp) {
            out.proj(l + lp - 1 + 2 * i, r + rp - i, 2 * si)?;
        }
    } else {
        let t = l + lp - (n + 1);
        trace.theorem = "Cor 4.8".to_string();
        trace.param("t", t);
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, 2 * si)?;
        }
        for i in (t + 1)..=(l1 - 1) {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, si)?;
        }
        for i in l2..=(n - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, si)?;
        }
        for i in c_fn(l + lp - 1)..=(l2 - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, 2 * si)?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_string_string(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    m0: i64,
    l0: usize,
    r0: i64,
    m1: i64,
    l1: usize,
    r1: i64,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    // Hypothesis ordering l <= l', carrying the syzygy exponents along.
    let ((ms, l, r), (ss, lp, rp)) = if l0 <= l1 {
        ((m0, l0 as i64, r0), (m1, l1 as i64, r1))
    } else {
        trace.swapped = !trace.swapped;
        ((m1, l1 as i64, r1), (m0, l0 as i64, r0))
    };
    let (am, asx) = (ms.abs(), ss.abs());
    let (mlo, mhi) = (am.min(asx), am.max(asx));
    let sum_parity_even = (am + asx) % 2 == 0;
    let low_regime = l + lp <= n;
    let t = l + lp - (n + 1);
    trace.param("l", l);
    trace.param("l'", lp);
    trace.param("m", ms);
    trace.param("s", ss);

    let case = if sum_parity_even { "(1)" } else { "(2)" };
    trace.theorem = match (ms > 0, low_regime) {
        (true, true) => format!("Prop 5.2{}", case),
        (true, false) => format!("Prop 5.4{}", case),
        (false, true) => format!("Cor 5.3{}", case),
        (false, false) => format!("Cor 5.5{}", case),
    };
    if !low_regime {
        trace.param("t", t);
    }

    // Shared projective part of the statements in this regime.
    if low_regime {
        for i in c_fn(l + lp - 1)..=(lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am) * even_bump(asx))?;
        }
        for i in 1..=c_fn(n - l - lp) {
            out.proj(l + lp - 1 + 2 * i, r + rp - i, odd_bump(am) * odd_bump(asx))?;
        }
    } else {
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, even_bump(am) * even_bump(asx))?;
        }
        for i in c_fn(l + lp - 1)..=(lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, odd_bump(am) * even_bump(asx))?;
        }
    }

    // String summands and the sign-dependent projective family.
    let same_sign = (ms > 0) == (ss > 0);
    let k = if same_sign {
        if ms > 0 { am + asx } else { -(am + asx) }
    } else if ms > 0 {
        am - asx
    } else {
        asx - am
    };
    let string_lo: (i64, i64) = if low_regime { (0, l - 1) } else { (t + 1, l - 1) };
    for i in string_lo.0..=string_lo.1 {
        out.string(k, l + lp - 1 - 2 * i, r + rp + i, 1)?;
    }
    let mult = if same_sign { am * asx } else { mlo * (mhi + 1) };
    // For equal signs the extra projectives sit low when am+asx is even and
    // high when odd; for opposite signs the two positions swap.
    let low_position = same_sign == sum_parity_even;
    if low_position {
        for i in string_lo.0..=string_lo.1 {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, mult)?;
        }
    } else {
        let hi = if low_regime { l + lp - 1 } else { n - 1 };
        for i in lp..=hi {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, mult)?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_string_band(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    m_signed: i64,
    l0: usize,
    r0: i64,
    s: usize,
    l1: usize,
    r1: i64,
    eta: &ExtScalar,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let (l, r) = (l0 as i64, r0);
    let (lp, rp) = (l1 as i64, r1);
    let am = m_signed.abs();
    let si = s as i64;
    let m_odd = am % 2 == 1;
    let low_regime = l + lp <= n;
    let t = l + lp - (n + 1);
    trace.param("l", l);
    trace.param("l'", lp);
    trace.param("m", m_signed);
    trace.param("s", si);
    trace.theorem = match (m_signed > 0, l <= lp, low_regime) {
        (true, true, true) => "Prop 5.6",
        (false, true, true) => "Cor 5.7",
        (true, true, false) => "Prop 5.8",
        (false, false, true) => "Cor 5.9",
        (true, false, true) => "Prop 5.10",
        (false, true, false) => "Cor 5.11",
        (true, false, false) => "Prop 5.12",
        (false, false, false) => "Cor 5.13",
    }
    .to_string();
    if !low_regime {
        trace.param("t", t);
    }

    // Band families: the odd-m statements produce bands with the negative
    // parameter map, the even-m statements with the positive one.
    let band_neg = |out: &mut Out, lo: i64, hi: i64| -> Result<(), RulesError> {
        for i in lo..=hi {
            let new_eta = eta_map(ctx, eta, true, lp, 2 * i - l - lp + 1, lp)?;
            out.band(s, n + l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        Ok(())
    };
    let band_pos = |out: &mut Out, lo: i64, hi: i64| -> Result<(), RulesError> {
        for i in lo..=hi {
            let new_eta = eta_map(ctx, eta, false, 2 * i - l + 1, l + lp - 1 - 2 * i, lp)?;
            out.band(s, l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        Ok(())
    };

    match (m_signed > 0, l <= lp, low_regime, m_odd) {
        // Prop 5.6
        (true, true, true, true) => {
            band_neg(out, lp, l + lp - 1)?;
            for i in 0..l {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, (am + 1) * si)?;
            }
        }
        (true, true, true, false) => {
            band_pos(out, 0, l - 1)?;
            for i in lp..=(l + lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, am * si)?;
            }
        }
        // Cor 5.7
        (false, true, true, true) => {
            band_neg(out, lp, l + lp - 1)?;
            for i in lp..=(l + lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, (am + 1) * si)?;
            }
        }
        (false, true, true, false) => {
            band_pos(out, 0, l - 1)?;
            for i in 0..l {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, am * si)?;
            }
        }
        // Prop 5.8
        (true, true, false, true) => {
            band_neg(out, lp, n - 1)?;
            for i in (t + 1)..=(l - 1) {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
        }
        (true, true, false, false) => {
            band_pos(out, t + 1, l - 1)?;
            for i in lp..=(n - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
        }
        // Cor 5.9
        (false, false, true, true) => {
            band_neg(out, l, l + lp - 1)?;
            for i in l..=(l + lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, (am + 1) * si)?;
            }
        }
        (false, false, true, false) => {
            band_pos(out, 0, lp - 1)?;
            for i in 0..lp {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, am * si)?;
            }
        }
        // Prop 5.10
        (true, false, true, true) => {
            band_neg(out, l, l + lp - 1)?;
            for i in 0..lp {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, (am + 1) * si)?;
            }
        }
        (true, false, true, false) => {
            band_pos(out, 0, lp - 1)?;
            for i in l..=(l + lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in 1..=c_fn(n - l - lp) {
                out.proj(l + lp - 1 + 2 * i, r + rp - i, am * si)?;
            }
        }
        // Cor 5.11
        (false, true, false, true) => {
            band_neg(out, lp, n - 1)?;
            for i in lp..=(n - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
        }
        (false, true, false, false) => {
            band_pos(out, t + 1, l - 1)?;
            for i in (t + 1)..=(l - 1) {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in c_fn(l + lp - 1)..=(lp - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
        }
        // Prop 5.12
        (true, false, false, true) => {
            band_neg(out, l, n - 1)?;
            for i in (t + 1)..=(lp - 1) {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
        }
        (true, false, false, false) => {
            band_pos(out, t + 1, lp - 1)?;
            for i in l..=(n - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
        }
        // Cor 5.13
        (false, false, false, true) => {
            band_neg(out, l, n - 1)?;
            for i in l..=(n - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
        }
        (false, false, false, false) => {
            band_pos(out, t + 1, lp - 1)?;
            for i in (t + 1)..=(lp - 1) {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, am * si)?;
            }
            for i in c_fn(t)..=t {
                out.proj(l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
            for i in c_fn(l + lp - 1)..=(l - 1) {
                out.proj(n + l + lp - 1 - 2 * i, r + rp + i, (am + 1) * si)?;
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn arm_band_band(
    ctx: &HopfContext,
    out: &mut Out,
    trace: &mut RuleTrace,
    s0: usize,
    l0: usize,
    r0: i64,
    eta0: &ExtScalar,
    s1: usize,
    l1: usize,
    r1: i64,
    eta1: &ExtScalar,
) -> Result<(), RulesError> {
    let n = ctx.n as i64;
    let kappa0 = band_kappa(ctx, eta0, l0 as i64);
    let kappa1 = band_kappa(ctx, eta1, l1 as i64);
    if kappa0 != kappa1 {
        // Distinct regime; hypothesis ordering l <= l'.
        let ((m, l, r), (s, lp, rp)) = if l0 <= l1 {
            ((s0 as i64, l0 as i64, r0), (s1 as i64, l1 as i64, r1))
        } else {
            trace.swapped = !trace.swapped;
            ((s1 as i64, l1 as i64, r1), (s0 as i64, l0 as i64, r0))
        };
        trace.theorem = "Cor 5.17".to_string();
        trace.param("l", l);
        trace.param("l'", lp);
        trace.param("m", m);
        trace.param("s", s);
        for i in 1..=c_fn(n - lp + l) {
            out.proj(lp - l - 1 + 2 * i, r + rp + l - i, m * s)?;
        }
        for i in c_fn(l + lp - 1)..=(lp - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, m * s)?;
        }
        return Ok(());
    }

    // Equal regime; hypothesis ordering m >= s on the band lengths.
    let ((m, l, r, _), (s, lp, rp, eta)) = if s0 >= s1 {
        ((s0 as i64, l0 as i64, r0, eta0), (s1 as i64, l1 as i64, r1, eta1))
    } else {
        trace.swapped = !trace.swapped;
        ((s1 as i64, l1 as i64, r1, eta1), (s0 as i64, l0 as i64, r0, eta0))
    };
    let su = s as usize;
    let lo = l.min(lp);
    let hi = l.max(lp);
    trace.param("l", l);
    trace.param("l'", lp);
    trace.param("m", m);
    trace.param("s", s);
    if l + lp <= n {
        trace.theorem = "Cor 5.23".to_string();
        for i in 0..lo {
            let new_eta = eta_map(ctx, eta, false, 2 * i - l + 1, l + lp - 1 - 2 * i, lp)?;
            out.band(su, l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        for i in hi..=(l + lp - 1) {
            let new_eta = eta_map(ctx, eta, true, lp, 2 * i - l - lp + 1, lp)?;
            out.band(su, n + l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        for i in 0..lo {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, (m - 1) * s)?;
        }
        for i in 1..=c_fn(n - l - lp) {
            out.proj(l + lp - 1 + 2 * i, r + rp - i, m * s)?;
        }
        for i in c_fn(l + lp - 1)..=(hi - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, m * s)?;
        }
    } else {
        let t = l + lp - (n + 1);
        trace.theorem = "Cor 5.25".to_string();
        trace.param("t", t);
        for i in (t + 1)..=(lo - 1) {
            let new_eta = eta_map(ctx, eta, false, 2 * i - l + 1, l + lp - 1 - 2 * i, lp)?;
            out.band(su, l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        for i in hi..=(n - 1) {
            let new_eta = eta_map(ctx, eta, true, lp, 2 * i - l - lp + 1, lp)?;
            out.band(su, n + l + lp - 1 - 2 * i, r + rp + i, new_eta, 1)?;
        }
        for i in (t + 1)..=(lo - 1) {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, (m - 1) * s)?;
        }
        for i in c_fn(t)..=t {
            out.proj(l + lp - 1 - 2 * i, r + rp + i, m * s)?;
        }
        for i in c_fn(l + lp - 1)..=(hi - 1) {
            out.proj(n + l + lp - 1 - 2 * i, r + rp + i, m * s)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::ExtScalar;
    use std::sync::Arc;

    fn hopf(n: usize) -> Arc<HopfContext> {
        HopfContext::new(n).unwrap()
    }

    fn fin(ctx: &HopfContext, k: i64) -> ExtScalar {
        ExtScalar::Fin(ctx.field.from_int(k))
    }

    #[test]
    fn c_fn_values() {
        assert_eq!(c_fn(0), 0);
        assert_eq!(c_fn(1), 1);
        assert_eq!(c_fn(5), 3);
        for t in -12..=12 {
            assert_eq!(c_fn(t) + c_fn(t - 1), t);
        }
    }

    #[test]
    fn v1_twist_arm() {
        let h = hopf(3);
        let v1 = ModuleLabel::simple(3, 1, 1);
        let p = ModuleLabel::proj(3, 2, 0);
        let (dec, trace) = decompose_pair(&h, &v1, &p).unwrap();
        assert_eq!(trace.theorem, "Cor 3.4");
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::proj(3, 2, 1), 1);
        assert_eq!(dec, expect);
        // Band keeps its parameter untouched.
        let b = ModuleLabel::band(3, 2, 2, 0, fin(&h, 1));
        let (dec, trace) = decompose_pair(&h, &v1, &b).unwrap();
        assert_eq!(trace.theorem, "Lemma 3.8");
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::band(3, 2, 2, 1, fin(&h, 1)), 1);
        assert_eq!(dec, expect);
    }

    #[test]
    fn simple_simple_fusion() {
        let h = hopf(3);
        // V(2,0) x V(2,0) = V(3,0) + V(1,1) (l+l' = 4 = n+1).
        let v = ModuleLabel::simple(3, 2, 0);
        let (dec, trace) = decompose_pair(&h, &v, &v).unwrap();
        assert_eq!(trace.theorem, "Prop 3.1(1)");
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::simple(3, 3, 0), 1);
        expect.add(ModuleLabel::simple(3, 1, 1), 1);
        assert_eq!(dec, expect);
        // V(2,0) x V(3,0) = P(2,1): the projective branch.
        let w = ModuleLabel::simple(3, 3, 0);
        let (dec, trace) = decompose_pair(&h, &v, &w).unwrap();
        assert_eq!(trace.theorem, "Prop 3.1(2)");
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::proj(3, 2, 1), 1);
        assert_eq!(dec, expect);
    }

    #[test]
    fn simple_proj_spot() {
        let h = hopf(3);
        // V(2,0) x P(2,0) = 2 V(3,0) + P(1,1) by the t = 0 case.
        let (dec, trace) = decompose_pair(
            &h,
            &ModuleLabel::simple(3, 2, 0),
            &ModuleLabel::proj(3, 2, 0),
        )
        .unwrap();
        assert_eq!(trace.theorem, "Thm 3.5");
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::simple(3, 3, 0), 2);
        expect.add(ModuleLabel::proj(3, 1, 1), 1);
        assert_eq!(dec, expect);
        assert_eq!(dec.total_dim(3), 12);
    }

    #[test]
    fn simple_band_spot() {
        let h = hopf(3);
        // V(2,0) x M_1(1,0,1) = M_1(2,0, q^{-1}(2)_q) + V(3,1).
        let (dec, trace) = decompose_pair(
            &h,
            &ModuleLabel::simple(3, 2, 0),
            &ModuleLabel::band(3, 1, 1, 0, fin(&h, 1)),
        )
        .unwrap();
        assert_eq!(trace.theorem, "Thm 3.16");
        let f = &h.field;
        let expected_eta = ExtScalar::Fin(f.mul(&f.pow_q(-1), &f.q_int(2).unwrap()));
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::band(3, 1, 2, 0, expected_eta), 1);
        expect.add(ModuleLabel::simple(3, 3, 1), 1);
        assert_eq!(dec, expect);
    }

    #[test]
    fn band_band_distinct_spot() {
        let h = hopf(3);
        // M_1(1,0,0) x M_1(1,0,1) = P(1,0) + V(3,2) via the distinct regime.
        let (dec, trace) = decompose_pair(
            &h,
            &ModuleLabel::band(3, 1, 1, 0, fin(&h, 0)),
            &ModuleLabel::band(3, 1, 1, 0, fin(&h, 1)),
        )
        .unwrap();
        assert_eq!(trace.theorem, "Cor 5.17");
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::proj(3, 1, 0), 1);
        expect.add(ModuleLabel::simple(3, 3, 2), 1);
        assert_eq!(dec, expect);
    }

    #[test]
    fn band_band_equal_spot() {
        let h = hopf(3);
        // M_1(1,r,eta) x M_1(1,r',eta): Lemma 5.21 shape at m = s = 1.
        let (dec, trace) = decompose_pair(
            &h,
            &ModuleLabel::band(3, 1, 1, 0, fin(&h, 1)),
            &ModuleLabel::band(3, 1, 1, 0, fin(&h, 1)),
        )
        .unwrap();
        assert_eq!(trace.theorem, "Cor 5.23");
        let f = &h.field;
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::band(3, 1, 1, 0, fin(&h, 1)), 1);
        expect.add(
            ModuleLabel::band(3, 1, 2, 1, ExtScalar::Fin(f.pow_q(1).neg())),
            1,
        );
        expect.add(ModuleLabel::proj(3, 3, 2), 1);
        assert_eq!(dec, expect);
        assert_eq!(dec.total_dim(3), 9);
    }

    #[test]
    fn dualize_involution() {
        let h = hopf(3);
        let labels = vec![
            ModuleLabel::simple(3, 1, 0),
            ModuleLabel::simple(3, 2, 1),
            ModuleLabel::proj(3, 2, 2),
            ModuleLabel::string(3, -2, 1, 1),
            ModuleLabel::band(3, 2, 1, 0, ExtScalar::Infinity),
            ModuleLabel::band(3, 1, 2, 1, fin(&h, 1)),
        ];
        for label in labels {
            let dd = dualize_label(&h, &dualize_label(&h, &label));
            assert_eq!(dd, label, "dual of dual differs for {}", label);
        }
        // Spot values.
        assert_eq!(
            dualize_label(&h, &ModuleLabel::simple(3, 1, 0)),
            ModuleLabel::simple(3, 1, 0)
        );
        assert_eq!(
            dualize_label(&h, &ModuleLabel::proj(3, 2, 0)),
            ModuleLabel::proj(3, 2, 2)
        );
        assert_eq!(
            dualize_label(&h, &ModuleLabel::band(3, 1, 1, 0, ExtScalar::Infinity)),
            ModuleLabel::band(3, 1, 2, 1, ExtScalar::Infinity)
        );
    }

    #[test]
    fn band_invariant_values() {
        let h = hopf(3);
        let f = &h.field;
        // l = 1: the invariant is the parameter itself.
        let b = ModuleLabel::band(3, 1, 1, 0, fin(&h, 1));
        assert_eq!(band_invariant(&h, &b), fin(&h, 1));
        let b = ModuleLabel::band(3, 2, 1, 2, ExtScalar::Infinity);
        assert_eq!(band_invariant(&h, &b), ExtScalar::Infinity);
        // l = 2 at n=3: q^{-1}(2)_q = q^2 (1 + q).
        let b = ModuleLabel::band(3, 1, 2, 0, fin(&h, 1));
        let expect = ExtScalar::Fin(f.mul(&f.pow_q(2), &f.q_int(2).unwrap()));
        assert_eq!(band_invariant(&h, &b), expect);
    }

    /// Dimension conservation across a broad grid of label pairs.
    #[test]
    fn dimension_conservation_grid() {
        for n in [3usize, 4] {
            let h = hopf(n);
            let etas = vec![
                ExtScalar::Fin(h.field.zero()),
                ExtScalar::Fin(h.field.one()),
                ExtScalar::Infinity,
            ];
            let family = crate::decompose::label_family(&h, 2, 2, &etas);
            for a in &family {
                for b in &family {
                    let (dec, trace) = decompose_pair(&h, a, b)
                        .unwrap_or_else(|e| panic!("{} x {} failed: {}", a, b, e));
                    assert_eq!(
                        dec.total_dim(n),
                        a.dim(n) * b.dim(n),
                        "dimension mismatch for {} x {} via {}",
                        a,
                        b,
                        trace.theorem
                    );
                }
            }
        }
    }

    /// The engine is symmetric in its two arguments.
    #[test]
    fn symmetry_grid() {
        let h = hopf(3);
        let etas = vec![ExtScalar::Fin(h.field.one()), ExtScalar::Infinity];
        let family = crate::decompose::label_family(&h, 1, 1, &etas);
        for a in &family {
            for b in &family {
                let (d1, _) = decompose_pair(&h, a, b).unwrap();
                let (d2, _) = decompose_pair(&h, b, a).unwrap();
                assert_eq!(d1, d2, "asymmetry for {} x {}", a, b);
            }
        }
    }
}
