//! Splitting modules into indecomposables and naming the pieces.
//!
//! The oracle side of the crate: given any concrete module, produce its
//! Krull-Schmidt decomposition as a multiset of classification labels, by
//! exact linear algebra only.

use crate::algebra::HopfContext;
use crate::exactfield::ExtScalar;
use crate::linalg::MatrixF;
use crate::repmod::{self, Representation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Symbolic name of an indecomposable module.
///
/// Canonical forms: P(n,r) is stored as Simple(n,r), a zero syzygy power is
/// stored as Simple, and r always lies in 0..n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModuleLabel {
    Simple { l: usize, r: i64 },
    Proj { l: usize, r: i64 },
    Str { m: i64, l: usize, r: i64 },
    Band { s: usize, l: usize, r: i64, eta: ExtScalar },
}

impl ModuleLabel {
    pub fn simple(n: usize, l: usize, r: i64) -> ModuleLabel {
        assert!((1..=n).contains(&l), "simple label: l out of range");
        ModuleLabel::Simple { l, r: r.rem_euclid(n as i64) }
    }

    pub fn proj(n: usize, l: usize, r: i64) -> ModuleLabel {
        assert!((1..=n).contains(&l), "projective label: l out of range");
        if l == n {
            ModuleLabel::simple(n, l, r)
        } else {
            ModuleLabel::Proj { l, r: r.rem_euclid(n as i64) }
        }
    }

    pub fn string(n: usize, m: i64, l: usize, r: i64) -> ModuleLabel {
        if m == 0 {
            // A zero syzygy power is the simple itself, where l = n is legal.
            return ModuleLabel::simple(n, l, r);
        }
        assert!((1..n).contains(&l), "string label: l out of range");
        ModuleLabel::Str { m, l, r: r.rem_euclid(n as i64) }
    }

    pub fn band(n: usize, s: usize, l: usize, r: i64, eta: ExtScalar) -> ModuleLabel {
        assert!(s >= 1, "band label: s must be positive");
        assert!((1..n).contains(&l), "band label: l out of range");
        ModuleLabel::Band { s, l, r: r.rem_euclid(n as i64), eta }
    }

    pub fn dim(&self, n: usize) -> usize {
        match self {
            ModuleLabel::Simple { l, .. } => *l,
            ModuleLabel::Proj { .. } => 2 * n,
            ModuleLabel::Str { m, l, .. } => {
                let steps = m.unsigned_abs() as usize;
                if steps % 2 == 0 {
                    steps * n + l
                } else {
                    steps * n + (n - l)
                }
            }
            ModuleLabel::Band { s, .. } => s * n,
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::Simple { l, r } => write!(f, "V({},{})", l, r),
            ModuleLabel::Proj { l, r } => write!(f, "P({},{})", l, r),
            ModuleLabel::Str { m, l, r } => write!(f, "Om({})V({},{})", m, l, r),
            ModuleLabel::Band { s, l, r, eta } => write!(f, "M({},{},{};{})", s, l, r, eta),
        }
    }
}

impl Serialize for ModuleLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A multiset of labels with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Decomposition {
    counts: BTreeMap<ModuleLabel, u64>,
}

impl Decomposition {
    pub fn new() -> Decomposition {
        Decomposition::default()
    }

    pub fn add(&mut self, label: ModuleLabel, mult: u64) {
        if mult > 0 {
            *self.counts.entry(label).or_insert(0) += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModuleLabel, u64)> {
        self.counts.iter().map(|(l, &m)| (l, m))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn mult(&self, label: &ModuleLabel) -> u64 {
        self.counts.get(label).copied().unwrap_or(0)
    }

    pub fn total_dim(&self, n: usize) -> usize {
        self.counts
            .iter()
            .map(|(l, &m)| l.dim(n) * m as usize)
            .sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = &ModuleLabel> {
        self.counts.keys()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (label, mult) in &self.counts {
            if !first {
                write!(f, " + ")?;
            }
            if *mult == 1 {
                write!(f, "{}", label)?;
            } else {
                write!(f, "{}*{}", mult, label)?;
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone)]
pub enum DecomposeError {
    #[error(
        "no candidate matches an indecomposable piece: {dim_left} dimensions \
         unaccounted for after peeling {found}"
    )]
    NoMatch { dim_left: usize, found: Box<Decomposition> },
}

/// Builds the concrete module named by a label.
pub fn construct(ctx: &HopfContext, label: &ModuleLabel) -> Representation {
    match label {
        ModuleLabel::Simple { l, r } => repmod::simple(ctx, *l, *r),
        ModuleLabel::Proj { l, r } => repmod::projective(ctx, *l, *r),
        ModuleLabel::Str { m, l, r } => repmod::string(ctx, *m, *l, *r),
        ModuleLabel::Band { s, l, r, eta } => repmod::band(ctx, *s, *l, *r, eta),
    }
}

/// Indecomposability certificate data: the endomorphism algebra dimension
/// and the dimension of its radical, computed from the trace form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndCertificate {
    pub end_dim: usize,
    pub rad_dim: usize,
}

impl EndCertificate {
    /// One-dimensional semisimple quotient certifies (absolute)
    /// indecomposability.
    pub fn is_local(&self) -> bool {
        self.end_dim - self.rad_dim == 1
    }
}

/// Decides indecomposability via locality of End(M): the trace-form radical
/// of the endomorphism algebra has codimension 1 exactly for indecomposables
/// (and that codimension also certifies absolute indecomposability).
pub fn is_indecomposable(ctx: &HopfContext, rep: &Representation) -> (bool, EndCertificate) {
    assert!(rep.dim >= 1, "indecomposability of the zero module");
    let ends = repmod::hom_space(ctx, rep, rep);
    let cert = end_certificate(ctx, &ends);
    (cert.is_local(), cert)
}

fn end_certificate(ctx: &HopfContext, ends: &[MatrixF]) -> EndCertificate {
    let f = &ctx.field;
    let k = ends.len();
    let mut gram = MatrixF::zero(f, k, k);
    for i in 0..k {
        for j in i..k {
            let t = ends[i].mul(f, &ends[j]).trace();
            if !t.is_zero() {
                *gram.at_mut(i, j) = t.clone();
                if i != j {
                    *gram.at_mut(j, i) = t;
                }
            }
        }
    }
    let rad_dim = gram.kernel_basis(f).cols;
    EndCertificate { end_dim: k, rad_dim }
}

/// Splits a module into indecomposable direct summands via Fitting
/// decompositions of seeded random endomorphisms, halting each piece on the
/// locality certificate. Deterministic for a fixed seed.
pub fn split(ctx: &HopfContext, rep: &Representation, seed: u64) -> Vec<Representation> {
    let _f = &ctx.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut stack = vec![rep.clone()];
    while let Some(m) = stack.pop() {
        if m.dim == 0 {
            continue;
        }
        if m.dim == 1 {
            out.push(m);
            continue;
        }
        let ends = repmod::hom_space(ctx, &m, &m);
        if ends.len() == 1 {
            out.push(m);
            continue;
        }
        match find_fitting_split(ctx, &m, &ends, &mut rng) {
            Some((p1, p2)) => {
                stack.push(p1);
                stack.push(p2);
            }
            None => {
                let cert = end_certificate(ctx, &ends);
                assert!(
                    cert.is_local(),
                    "endomorphism algebra is non-local but no splitting \
                     endomorphism was found"
                );
                out.push(m);
            }
        }
    }
    // Deterministic output order.
    out.sort_by_key(|r| std::cmp::Reverse(r.dim));
    out
}

/// Searches for an endomorphism that is neither nilpotent nor invertible
/// and applies the Fitting decomposition to it.
fn find_fitting_split(
    ctx: &HopfContext,
    m: &Representation,
    ends: &[MatrixF],
    rng: &mut ChaCha8Rng,
) -> Option<(Representation, Representation)> {
    let f = &ctx.field;
    let try_endo = |t: &MatrixF| -> Option<(Representation, Representation)> {
        let p = t.matrix_power(f, m.dim);
        let ker = p.kernel_basis(f);
        if ker.cols == 0 || ker.cols == m.dim {
            return None;
        }
        let img = p.image_basis(f);
        Some((
            repmod::restrict(ctx, m, &ker),
            repmod::restrict(ctx, m, &img),
        ))
    };

    // Single basis elements, then pairwise products and differences: these
    // catch the common shapes (orthogonal projections, nilpotent pairs)
    // without randomness.
    for t in ends {
        if let Some(split) = try_endo(t) {
            return Some(split);
        }
    }
    let cap = ends.len().min(6);
    for i in 0..cap {
        for j in 0..cap {
            if i != j {
                if let Some(split) = try_endo(&ends[i].mul(f, &ends[j])) {
                    return Some(split);
                }
                if i < j {
                    if let Some(split) = try_endo(&ends[i].sub(&ends[j])) {
                        return Some(split);
                    }
                }
            }
        }
    }
    // Seeded random small-integer combinations, with q-power twists mixed in
    // once plain integers are exhausted.
    for attempt in 0..2048 {
        let mut t = MatrixF::zero(f, m.dim, m.dim);
        for e in ends {
            let c = rng.gen_range(-3i64..=3);
            if c == 0 {
                continue;
            }
            let mut coeff = f.from_int(c);
            if attempt >= 32 {
                coeff = f.mul(&coeff, &f.pow_q(rng.gen_range(0..ctx.n as i64)));
            }
            t = t.add(&e.scale(f, &coeff));
        }
        if let Some(split) = try_endo(&t) {
            return Some(split);
        }
    }
    None
}

/// Identifies an indecomposable module among candidate labels by exhibiting
/// an invertible intertwiner from a constructed candidate. A basis search
/// suffices: when the candidate is isomorphic, the non-invertible homs form
/// a proper subspace, so some basis element is invertible.
pub fn identify(
    ctx: &HopfContext,
    rep: &Representation,
    candidates: &[ModuleLabel],
) -> Result<ModuleLabel, DecomposeError> {
    let f = &ctx.field;
    for cand in candidates {
        if cand.dim(ctx.n) != rep.dim {
            continue;
        }
        let built = construct(ctx, cand);
        for t in repmod::hom_space(ctx, &built, rep) {
            if t.rank(f) == rep.dim {
                return Ok(cand.clone());
            }
        }
    }
    Err(DecomposeError::NoMatch {
        dim_left: rep.dim,
        found: Box::new(Decomposition::new()),
    })
}

/// Shared cache of constructed representations, keyed by label. Sweeps
/// construct the same candidates for thousands of pairs; string modules in
/// particular are built through iterated syzygies and are worth reusing.
pub struct LabelBuilder<'a> {
    ctx: &'a HopfContext,
    cache: std::sync::Mutex<std::collections::HashMap<ModuleLabel, std::sync::Arc<Representation>>>,
}

impl<'a> LabelBuilder<'a> {
    pub fn new(ctx: &'a HopfContext) -> LabelBuilder<'a> {
        LabelBuilder { ctx, cache: std::sync::Mutex::new(std::collections::HashMap::new()) }
    }

    pub fn get(&self, label: &ModuleLabel) -> std::sync::Arc<Representation> {
        if let Some(rep) = self.cache.lock().unwrap().get(label) {
            return rep.clone();
        }
        let rep = std::sync::Arc::new(construct(self.ctx, label));
        self.cache
            .lock()
            .unwrap()
            .entry(label.clone())
            .or_insert(rep)
            .clone()
    }
}

/// Full oracle decomposition: peels candidate summands off the module until
/// nothing is left, with candidate tiers tried in order (earlier tiers are
/// ordering hints; correctness does not depend on them). Each peel is
/// witnessed by an explicit idempotent, so a wrong hint can never introduce
/// a wrong summand. The seed permutes the scan order within each tier.
pub fn decompose_oracle_with(
    ctx: &HopfContext,
    rep: &Representation,
    tiers: &[&[ModuleLabel]],
    seed: u64,
    builder: &LabelBuilder,
) -> Result<Decomposition, DecomposeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut remaining = rep.clone();
    let mut out = Decomposition::new();
    let mut tried: std::collections::BTreeSet<ModuleLabel> = std::collections::BTreeSet::new();
    for tier in tiers {
        if remaining.dim == 0 {
            break;
        }
        let mut order: Vec<&ModuleLabel> = tier.iter().collect();
        order.shuffle(&mut rng);
        for label in order {
            if remaining.dim == 0 {
                break;
            }
            if label.dim(ctx.n) > remaining.dim || !tried.insert(label.clone()) {
                continue;
            }
            let cand = builder.get(label);
            while let Some(rest) = repmod::peel_summand(ctx, &remaining, &cand) {
                out.add(label.clone(), 1);
                remaining = rest;
                if remaining.dim < cand.dim {
                    break;
                }
            }
        }
    }
    if remaining.dim > 0 {
        return Err(DecomposeError::NoMatch {
            dim_left: remaining.dim,
            found: Box::new(out),
        });
    }
    Ok(out)
}

/// As `decompose_oracle_with`, with a private construction cache.
pub fn decompose_oracle_tiered(
    ctx: &HopfContext,
    rep: &Representation,
    tiers: &[&[ModuleLabel]],
    seed: u64,
) -> Result<Decomposition, DecomposeError> {
    decompose_oracle_with(ctx, rep, tiers, seed, &LabelBuilder::new(ctx))
}

/// Oracle decomposition against a single candidate pool.
pub fn decompose_oracle(
    ctx: &HopfContext,
    rep: &Representation,
    pool: &[ModuleLabel],
    seed: u64,
) -> Result<Decomposition, DecomposeError> {
    decompose_oracle_tiered(ctx, rep, &[pool], seed)
}

/// The full family of labels F(n, max_m, max_s, etas): all simples, all
/// non-simple projectives, strings with |m| <= max_m, and bands with
/// s <= max_s over the given parameter list.
pub fn label_family(
    ctx: &HopfContext,
    max_m: usize,
    max_s: usize,
    etas: &[ExtScalar],
) -> Vec<ModuleLabel> {
    let n = ctx.n;
    let mut out = Vec::new();
    for l in 1..=n {
        for r in 0..n as i64 {
            out.push(ModuleLabel::simple(n, l, r));
        }
    }
    for l in 1..n {
        for r in 0..n as i64 {
            out.push(ModuleLabel::proj(n, l, r));
        }
    }
    for m in 1..=max_m as i64 {
        for sign in [1i64, -1] {
            for l in 1..n {
                for r in 0..n as i64 {
                    out.push(ModuleLabel::string(n, sign * m, l, r));
                }
            }
        }
    }
    for s in 1..=max_s {
        for l in 1..n {
            for r in 0..n as i64 {
                for eta in etas {
                    out.push(ModuleLabel::band(n, s, l, r, eta.clone()));
                }
            }
        }
    }
    out
}

/// Candidate band parameters reachable from the given inputs under the
/// scalar maps of the decomposition rules: zero, infinity, and all values
/// sign * q^e * (i)_q / (j)_q * eta.
pub fn eta_closure(ctx: &HopfContext, inputs: &[ExtScalar]) -> Vec<ExtScalar> {
    let f = &ctx.field;
    let n = ctx.n as i64;
    let mut out: Vec<ExtScalar> = vec![ExtScalar::Fin(f.zero()), ExtScalar::Infinity];
    let mut push = |v: ExtScalar| {
        if !out.contains(&v) {
            out.push(v);
        }
    };
    for eta in inputs {
        push(eta.clone());
        for num in 1..n {
            let num_q = f.q_int(num).unwrap();
            for den in 1..n {
                let den_q = f.q_int(den).unwrap();
                let ratio = f.mul(&num_q, &f.inv(&den_q).unwrap());
                for e in 0..n {
                    let factor = f.mul(&ratio, &f.pow_q(e));
                    for sign in [1i64, -1] {
                        let signed = if sign == 1 { factor.clone() } else { factor.neg() };
                        if signed.is_zero() {
                            continue;
                        }
                        if let Ok(v) = crate::exactfield::ext_scale(&signed, eta, f) {
                            push(v);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{direct_sum, simple, tensor};

    fn hopf(n: usize) -> std::sync::Arc<HopfContext> {
        HopfContext::new(n).unwrap()
    }

    #[test]
    fn label_normalization() {
        let n = 3;
        assert_eq!(
            ModuleLabel::proj(n, 3, 1),
            ModuleLabel::Simple { l: 3, r: 1 }
        );
        assert_eq!(
            ModuleLabel::string(n, 0, 2, 5),
            ModuleLabel::Simple { l: 2, r: 2 }
        );
        assert_eq!(ModuleLabel::simple(n, 1, -1), ModuleLabel::Simple { l: 1, r: 2 });
    }

    #[test]
    fn label_dims() {
        let n = 3;
        assert_eq!(ModuleLabel::simple(n, 2, 0).dim(n), 2);
        assert_eq!(ModuleLabel::proj(n, 1, 0).dim(n), 6);
        assert_eq!(ModuleLabel::string(n, 1, 1, 0).dim(n), 5);
        assert_eq!(ModuleLabel::string(n, -2, 2, 1).dim(n), 8);
        let eta = ExtScalar::Infinity;
        assert_eq!(ModuleLabel::band(n, 2, 1, 0, eta).dim(n), 6);
    }

    #[test]
    fn split_examples() {
        let h = hopf(3);
        // An already-indecomposable module splits as itself.
        let v = simple(&h, 2, 0);
        let parts = split(&h, &v, 1);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].dim, 2);
        // A sum of two distinct simples splits into two pieces.
        let sum = direct_sum(&h, &[simple(&h, 1, 0), simple(&h, 1, 1)]);
        let parts = split(&h, &sum, 1);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.dim == 1));
        // A sum of two copies of the same simple.
        let sum = direct_sum(&h, &[simple(&h, 2, 1), simple(&h, 2, 1)]);
        let parts = split(&h, &sum, 7);
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn certificate_examples() {
        let h = hopf(3);
        let (ind, cert) = is_indecomposable(&h, &simple(&h, 2, 1));
        assert!(ind);
        assert_eq!(cert.end_dim, 1);
        let x = simple(&h, 2, 0);
        let (ind, _) = is_indecomposable(&h, &direct_sum(&h, &[x.clone(), x]));
        assert!(!ind);
        let b = crate::repmod::band(&h, 2, 1, 0, &ExtScalar::Fin(h.field.one()));
        let (ind, cert) = is_indecomposable(&h, &b);
        assert!(ind, "band(2,1,0,1) must be indecomposable: {:?}", cert);
    }

    #[test]
    fn identify_examples() {
        let h = hopf(3);
        let n = 3;
        let rep = simple(&h, 2, 1);
        let cands = vec![ModuleLabel::simple(n, 2, 1), ModuleLabel::simple(n, 2, 0)];
        assert_eq!(identify(&h, &rep, &cands).unwrap(), cands[0]);
        // Non-isomorphic candidate only: no match.
        let cands = vec![ModuleLabel::simple(n, 2, 0)];
        assert!(identify(&h, &rep, &cands).is_err());
    }

    #[test]
    fn oracle_on_projective() {
        let h = hopf(3);
        let p = crate::repmod::projective(&h, 1, 0);
        let pool = label_family(&h, 0, 0, &[]);
        let dec = decompose_oracle(&h, &p, &pool, 3).unwrap();
        let mut expect = Decomposition::new();
        expect.add(ModuleLabel::proj(3, 1, 0), 1);
        assert_eq!(dec, expect);
    }

    #[test]
    fn oracle_simple_tensor() {
        let h = hopf(3);
        // V(2,0) (x) V(3,0) = P(2,1) at n=3.
        let t = tensor(&h, &simple(&h, 2, 0), &simple(&h, 3, 0));
        let pool = label_family(&h, 0, 0, &[]);
        for seed in [1u64, 2, 3] {
            let dec = decompose_oracle(&h, &t, &pool, seed).unwrap();
            let mut expect = Decomposition::new();
            expect.add(ModuleLabel::proj(3, 2, 1), 1);
            assert_eq!(dec, expect, "seed {}", seed);
        }
    }
}
