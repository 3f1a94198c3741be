//! Concrete H_n(1,q)-modules: constructors for every indecomposable family,
//! tensor products, duals, Hom spaces, socle/radical/top, and (co)syzygies.
//!
//! Every constructor keeps the actions of b and c diagonal with q-power
//! entries, and every derived module (tensor, dual, submodule, quotient,
//! direct summand) preserves that shape. Hom computations exploit it by
//! solving only inside matching (b,c)-weight blocks.

use crate::algebra::{AlgebraElem, Gen, HopfContext};
use crate::exactfield::{ExtScalar, FieldElem};
use crate::linalg::MatrixF;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

/// A finite-dimensional module: the four generator actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dim: usize,
    pub a: MatrixF,
    pub b: MatrixF,
    pub c: MatrixF,
    pub d: MatrixF,
}

impl Representation {
    pub fn gen_mat(&self, g: Gen) -> &MatrixF {
        match g {
            Gen::A => &self.a,
            Gen::B => &self.b,
            Gen::C => &self.c,
            Gen::D => &self.d,
        }
    }

    pub fn zero_module(ctx: &HopfContext) -> Representation {
        let z = MatrixF::zero(&ctx.field, 0, 0);
        Representation {
            dim: 0,
            a: z.clone(),
            b: z.clone(),
            c: z.clone(),
            d: z,
        }
    }
}

fn md(x: i64, n: usize) -> i64 {
    x.rem_euclid(n as i64)
}

/// The simple module V(l,r), 1 <= l <= n, on basis v_1..v_l.
pub fn simple(ctx: &HopfContext, l: usize, r: i64) -> Representation {
    let n = ctx.n;
    assert!((1..=n).contains(&l), "simple: l out of range");
    let f = &ctx.field;
    let mut a = MatrixF::zero(f, l, l);
    let mut b = MatrixF::zero(f, l, l);
    let mut c = MatrixF::zero(f, l, l);
    let mut d = MatrixF::zero(f, l, l);
    for i in 1..=l as i64 {
        let s = (i - 1) as usize;
        if i < l as i64 {
            *a.at_mut(s + 1, s) = f.one();
        }
        *b.at_mut(s, s) = f.pow_q(r + i - 1);
        *c.at_mut(s, s) = f.pow_q(i - r - l as i64);
        if i > 1 {
            *d.at_mut(s - 1, s) = f.alpha(i - 1, l as i64).unwrap();
        }
    }
    Representation { dim: l, a, b, c, d }
}

/// The projective cover P(l,r) of V(l,r). For l = n this is V(n,r) itself;
/// for l < n it is the 2n-dimensional projective-injective with socle and
/// top both V(l,r).
pub fn projective(ctx: &HopfContext, l: usize, r: i64) -> Representation {
    let n = ctx.n;
    assert!((1..=n).contains(&l), "projective: l out of range");
    if l == n {
        return simple(ctx, n, r);
    }
    let f = &ctx.field;
    let dim = 2 * n;
    let li = l as i64;
    let ni = n as i64;
    let mut a = MatrixF::zero(f, dim, dim);
    let mut b = MatrixF::zero(f, dim, dim);
    let mut c = MatrixF::zero(f, dim, dim);
    let mut d = MatrixF::zero(f, dim, dim);
    for i in 1..=dim as i64 {
        let s = (i - 1) as usize;
        if (i < ni) || (ni + 1 <= i && i < 2 * ni) {
            *a.at_mut(s + 1, s) = f.one();
        }
        if i <= ni {
            *b.at_mut(s, s) = f.pow_q(r + i - 1);
            *c.at_mut(s, s) = f.pow_q(i - li - r);
        } else {
            *b.at_mut(s, s) = f.pow_q(r + li + i - 1);
            *c.at_mut(s, s) = f.pow_q(i - r);
        }
        // d-action, piecewise by the position of i.
        if i == 1 || i == li + 1 {
            let t = (2 * ni - li + i - 2) as usize;
            *d.at_mut(t, s) = f.pow_q(i - 1);
        } else if i <= li {
            let t = (2 * ni - li + i - 2) as usize;
            *d.at_mut(t, s) = f.pow_q(i - 1);
            *d.at_mut(s - 1, s) = f.alpha(i - 1, li).unwrap();
        } else if i <= ni {
            *d.at_mut(s - 1, s) = f.alpha(i - li - 1, ni - li).unwrap();
        } else if i == ni + 1 || i == 2 * ni - li + 1 {
            // zero column
        } else if i <= 2 * ni - li {
            *d.at_mut(s - 1, s) = f.alpha(i - ni - 1, ni - li).unwrap();
        } else {
            *d.at_mut(s - 1, s) = f.alpha(i - 2 * ni + li - 1, li).unwrap();
        }
    }
    Representation { dim, a, b, c, d }
}

/// The band module M_s(l,r,eta) on basis v_{i,j}, 1 <= i <= n, 1 <= j <= s,
/// with v_{i,j} at slot (j-1)*n + (i-1).
pub fn band(ctx: &HopfContext, s: usize, l: usize, r: i64, eta: &ExtScalar) -> Representation {
    let n = ctx.n;
    assert!(s >= 1, "band: s must be positive");
    assert!((1..n).contains(&l), "band: l out of range");
    let f = &ctx.field;
    let dim = s * n;
    let li = l as i64;
    let ni = n as i64;
    let slot = |i: i64, j: i64| ((j - 1) * ni + (i - 1)) as usize;
    let mut a = MatrixF::zero(f, dim, dim);
    let mut b = MatrixF::zero(f, dim, dim);
    let mut c = MatrixF::zero(f, dim, dim);
    let mut d = MatrixF::zero(f, dim, dim);
    for j in 1..=s as i64 {
        for i in 1..=ni {
            let col = slot(i, j);
            *b.at_mut(col, col) = f.pow_q(r + li + i - 1);
            *c.at_mut(col, col) = f.pow_q(i - r);
            match eta {
                ExtScalar::Infinity => {
                    // a has a second gap at i = n-l, shifting down one column.
                    if i == ni - li {
                        if j > 1 {
                            *a.at_mut(slot(i + 1, j - 1), col) = f.one();
                        }
                    } else if i < ni {
                        *a.at_mut(slot(i + 1, j), col) = f.one();
                    }
                    if i == 1 {
                        *d.at_mut(slot(ni, j), col) = f.one();
                    }
                }
                ExtScalar::Fin(eta_val) => {
                    if i < ni {
                        *a.at_mut(slot(i + 1, j), col) = f.one();
                    }
                    if i == 1 {
                        if j > 1 {
                            *d.at_mut(slot(ni, j - 1), col) = f.one();
                        }
                        let coeff = f.mul(eta_val, &f.pow_q(li));
                        if !coeff.is_zero() {
                            *d.at_mut(slot(ni, j), col) = coeff;
                        }
                    }
                }
            }
            if 1 < i && i <= ni - li {
                *d.at_mut(slot(i - 1, j), col) = f.alpha(i - 1, ni - li).unwrap();
            } else if ni - li + 1 < i {
                *d.at_mut(slot(i - 1, j), col) = f.alpha(i - ni + li - 1, li).unwrap();
            }
        }
    }
    Representation { dim, a, b, c, d }
}

/// Action of an arbitrary algebra element on a module.
pub fn act(ctx: &HopfContext, rep: &Representation, e: &AlgebraElem) -> MatrixF {
    let f = &ctx.field;
    let d = rep.dim;
    let mut pow_cache: [Vec<MatrixF>; 4] = [vec![], vec![], vec![], vec![]];
    let mut out = MatrixF::zero(f, d, d);
    for (&(i, j, l, k), coeff) in &e.terms {
        let mut m: Option<MatrixF> = None;
        for (g, e) in [(Gen::A, i), (Gen::B, j), (Gen::C, l), (Gen::D, k)] {
            if e == 0 {
                continue;
            }
            let cache = &mut pow_cache[g as usize];
            if cache.is_empty() {
                cache.push(rep.gen_mat(g).clone());
            }
            while cache.len() < e as usize {
                let next = cache.last().unwrap().mul(f, rep.gen_mat(g));
                cache.push(next);
            }
            let p = &cache[e as usize - 1];
            m = Some(match m {
                None => p.clone(),
                Some(acc) => acc.mul(f, p),
            });
        }
        let m = m.unwrap_or_else(|| MatrixF::identity(f, d));
        out = out.add(&m.scale(f, coeff));
    }
    out
}

/// Tensor product module, built from the coproduct on generators. The basis
/// ordering is (m_i tensor n_j) with j fastest.
pub fn tensor(ctx: &HopfContext, m: &Representation, n: &Representation) -> Representation {
    let f = &ctx.field;
    let build = |g: Gen| -> MatrixF {
        let mut out = MatrixF::zero(f, m.dim * n.dim, m.dim * n.dim);
        for (x, y) in ctx.coproduct(g) {
            out = out.add(&act(ctx, m, x).kron(f, &act(ctx, n, y)));
        }
        out
    };
    Representation {
        dim: m.dim * n.dim,
        a: build(Gen::A),
        b: build(Gen::B),
        c: build(Gen::C),
        d: build(Gen::D),
    }
}

/// Dual module: g acts on the dual basis as the transpose of S(g).
pub fn dual(ctx: &HopfContext, m: &Representation) -> Representation {
    let build = |g: Gen| act(ctx, m, ctx.antipode(g)).transpose();
    Representation {
        dim: m.dim,
        a: build(Gen::A),
        b: build(Gen::B),
        c: build(Gen::C),
        d: build(Gen::D),
    }
}

pub fn direct_sum(ctx: &HopfContext, parts: &[Representation]) -> Representation {
    let f = &ctx.field;
    let dim: usize = parts.iter().map(|p| p.dim).sum();
    let build = |g: Gen| {
        let mut out = MatrixF::zero(f, dim, dim);
        let mut off = 0;
        for p in parts {
            let mg = p.gen_mat(g);
            for r in 0..p.dim {
                for c in 0..p.dim {
                    if !mg.at(r, c).is_zero() {
                        *out.at_mut(off + r, off + c) = mg.at(r, c).clone();
                    }
                }
            }
            off += p.dim;
        }
        out
    };
    Representation {
        dim,
        a: build(Gen::A),
        b: build(Gen::B),
        c: build(Gen::C),
        d: build(Gen::D),
    }
}

/// Checks the ten defining relations exactly.
pub fn check_relations(ctx: &HopfContext, rep: &Representation) -> Result<(), String> {
    let f = &ctx.field;
    let n = ctx.n;
    let q = f.pow_q(1);
    let (a, b, c, d) = (&rep.a, &rep.b, &rep.c, &rep.d);
    let pairs: [(&str, MatrixF, MatrixF); 4] = [
        ("ba = qab", b.mul(f, a), a.mul(f, b)),
        ("db = qbd", d.mul(f, b), b.mul(f, d)),
        ("ca = qac", c.mul(f, a), a.mul(f, c)),
        ("dc = qcd", d.mul(f, c), c.mul(f, d)),
    ];
    for (name, lhs, rhs) in pairs {
        if lhs != rhs.scale(f, &q) {
            return Err(format!("relation {} failed", name));
        }
    }
    if b.mul(f, c) != c.mul(f, b) {
        return Err("relation bc = cb failed".into());
    }
    if !a.matrix_power(f, n).is_zero() {
        return Err("relation a^n = 0 failed".into());
    }
    if !d.matrix_power(f, n).is_zero() {
        return Err("relation d^n = 0 failed".into());
    }
    let id = MatrixF::identity(f, rep.dim);
    if b.matrix_power(f, n) != id {
        return Err("relation b^n = 1 failed".into());
    }
    if c.matrix_power(f, n) != id {
        return Err("relation c^n = 1 failed".into());
    }
    let lhs = d.mul(f, a).sub(&a.mul(f, d).scale(f, &q));
    let rhs = id.sub(&b.mul(f, c));
    if lhs != rhs {
        return Err("relation da - qad = 1 - bc failed".into());
    }
    Ok(())
}

/// Per-coordinate (b,c)-weight exponents, when both actions are diagonal
/// with q-power entries. All constructors and derived modules in this crate
/// stay in that shape.
pub fn biweights(ctx: &HopfContext, rep: &Representation) -> Option<Vec<(usize, usize)>> {
    let f = &ctx.field;
    let exps = |m: &MatrixF| -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(rep.dim);
        for r in 0..rep.dim {
            for c in 0..rep.dim {
                if r != c && !m.at(r, c).is_zero() {
                    return None;
                }
            }
            let v = m.at(r, r);
            let e = (0..ctx.n).find(|&e| *v == f.pow_q(e as i64))?;
            out.push(e);
        }
        Some(out)
    };
    let be = exps(&rep.b)?;
    let ce = exps(&rep.c)?;
    Some(be.into_iter().zip(ce).collect())
}

/// Basis of the q^r-eigenspace of b for each r, as columns.
pub fn weight_decomposition(ctx: &HopfContext, rep: &Representation) -> Vec<(usize, MatrixF)> {
    let f = &ctx.field;
    let mut out = Vec::new();
    for r in 0..ctx.n {
        let mut shifted = rep.b.clone();
        let qe = f.pow_q(r as i64);
        for i in 0..rep.dim {
            let cell = shifted.at_mut(i, i);
            *cell = cell.sub(&qe);
        }
        let basis = shifted.kernel_basis(f);
        if basis.cols > 0 {
            out.push((r, basis));
        }
    }
    out
}

/// Basis of the Hom space of module maps M -> N, as dim(N) x dim(M)
/// matrices T with T g_M = g_N T for all four generators.
pub fn hom_space(ctx: &HopfContext, m: &Representation, n: &Representation) -> Vec<MatrixF> {
    if m.dim == 0 || n.dim == 0 {
        return Vec::new();
    }
    match (biweights(ctx, m), biweights(ctx, n)) {
        (Some(bm), Some(bn)) => hom_space_blocked(ctx, m, n, &bm, &bn),
        _ => hom_space_dense(ctx, m, n),
    }
}

fn hom_space_blocked(
    ctx: &HopfContext,
    m: &Representation,
    n: &Representation,
    bw_m: &[(usize, usize)],
    bw_n: &[(usize, usize)],
) -> Vec<MatrixF> {
    let f = &ctx.field;
    // Unknowns: entries T[p][j] with matching biweights.
    let mut unk_idx = vec![usize::MAX; n.dim * m.dim];
    let mut unknowns = Vec::new();
    for p in 0..n.dim {
        for j in 0..m.dim {
            if bw_n[p] == bw_m[j] {
                unk_idx[p * m.dim + j] = unknowns.len();
                unknowns.push((p, j));
            }
        }
    }
    if unknowns.is_empty() {
        return Vec::new();
    }

    // Constraints T g_M - g_N T = 0 for g in {a, d}; the b and c constraints
    // are equivalent to the biweight blocking itself.
    let mut rows: BTreeMap<(usize, usize, usize), Vec<(usize, FieldElem)>> = BTreeMap::new();
    for (gi, g) in [Gen::A, Gen::D].into_iter().enumerate() {
        let gm = m.gen_mat(g);
        let gn = n.gen_mat(g);
        for &(p, k) in &unknowns {
            let u = unk_idx[p * m.dim + k];
            for j in 0..m.dim {
                let v = gm.at(k, j);
                if !v.is_zero() {
                    rows.entry((gi, p, j)).or_default().push((u, v.clone()));
                }
            }
        }
        for &(k, j) in &unknowns {
            let u = unk_idx[k * m.dim + j];
            for p in 0..n.dim {
                let v = gn.at(p, k);
                if !v.is_zero() {
                    rows.entry((gi, p, j)).or_default().push((u, v.neg()));
                }
            }
        }
    }

    let mut sys = MatrixF::zero(f, rows.len(), unknowns.len());
    for (r, (_, entries)) in rows.into_iter().enumerate() {
        for (u, v) in entries {
            let cell = sys.at_mut(r, u);
            *cell = cell.add(&v);
        }
    }
    let ker = sys.kernel_basis(f);
    (0..ker.cols)
        .map(|c| {
            let mut t = MatrixF::zero(f, n.dim, m.dim);
            for (u, &(p, j)) in unknowns.iter().enumerate() {
                let v = ker.at(u, c);
                if !v.is_zero() {
                    *t.at_mut(p, j) = v.clone();
                }
            }
            t
        })
        .collect()
}

/// Fallback without weight blocking: the full commutant system over all
/// four generators.
fn hom_space_dense(ctx: &HopfContext, m: &Representation, n: &Representation) -> Vec<MatrixF> {
    let f = &ctx.field;
    let unknowns = n.dim * m.dim;
    let mut sys = MatrixF::zero(f, 4 * unknowns, unknowns);
    for (gi, g) in [Gen::A, Gen::B, Gen::C, Gen::D].into_iter().enumerate() {
        let gm = m.gen_mat(g);
        let gn = n.gen_mat(g);
        for p in 0..n.dim {
            for j in 0..m.dim {
                let row = gi * unknowns + p * m.dim + j;
                for k in 0..m.dim {
                    let v = gm.at(k, j);
                    if !v.is_zero() {
                        let cell = sys.at_mut(row, p * m.dim + k);
                        *cell = cell.add(v);
                    }
                }
                for k in 0..n.dim {
                    let v = gn.at(p, k);
                    if !v.is_zero() {
                        let cell = sys.at_mut(row, k * m.dim + j);
                        *cell = cell.sub(v);
                    }
                }
            }
        }
    }
    let ker = sys.kernel_basis(f);
    (0..ker.cols)
        .map(|c| {
            let mut t = MatrixF::zero(f, n.dim, m.dim);
            for p in 0..n.dim {
                for j in 0..m.dim {
                    let v = ker.at(p * m.dim + j, c);
                    if !v.is_zero() {
                        *t.at_mut(p, j) = v.clone();
                    }
                }
            }
            t
        })
        .collect()
}

/// Restriction of the action to an invariant subspace spanned by the given
/// basis columns.
pub fn restrict(ctx: &HopfContext, rep: &Representation, basis: &MatrixF) -> Representation {
    let f = &ctx.field;
    let k = basis.cols;
    let build = |g: Gen| {
        if k == 0 {
            return MatrixF::zero(f, 0, 0);
        }
        let img = rep.gen_mat(g).mul(f, basis);
        basis
            .solve_many(f, &img)
            .expect("restriction target is not invariant")
    };
    Representation {
        dim: k,
        a: build(Gen::A),
        b: build(Gen::B),
        c: build(Gen::C),
        d: build(Gen::D),
    }
}

/// Quotient of the module by the submodule spanned by `sub`. The quotient
/// basis is the set of standard coordinates complementary to the pivot rows
/// of the submodule.
pub fn quotient(ctx: &HopfContext, rep: &Representation, sub: &MatrixF) -> Representation {
    let f = &ctx.field;
    let k = sub.cols;
    let d = rep.dim;
    if k == 0 {
        return rep.clone();
    }
    let (_, pivots, rank) = sub.transpose().rref(f);
    assert_eq!(rank, k, "submodule basis is not independent");
    let comp: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
    let mut full = sub.clone();
    for &j in &comp {
        let mut e = MatrixF::zero(f, d, 1);
        *e.at_mut(j, 0) = f.one();
        full = full.hstack(&e);
    }
    let build = |g: Gen| {
        if comp.is_empty() {
            return MatrixF::zero(f, 0, 0);
        }
        let gm = rep.gen_mat(g);
        let rhs = gm.select_columns(&comp);
        let sol = full.solve_many(f, &rhs).expect("quotient solve failed");
        // Rows k.. of the solution are the quotient coordinates.
        MatrixF::from_fn(f, comp.len(), comp.len(), |r, c| sol.at(k + r, c).clone())
    };
    Representation {
        dim: comp.len(),
        a: build(Gen::A),
        b: build(Gen::B),
        c: build(Gen::C),
        d: build(Gen::D),
    }
}

/// Basis of rad M = J * M as columns.
pub fn radical_submodule(ctx: &HopfContext, rep: &Representation) -> MatrixF {
    let f = &ctx.field;
    let rad = ctx.radical_basis();
    let mut stacked: Option<MatrixF> = None;
    for j in rad {
        let m = act(ctx, rep, j);
        stacked = Some(match stacked {
            None => m,
            Some(s) => s.hstack(&m),
        });
    }
    match stacked {
        None => MatrixF::zero(f, rep.dim, 0),
        Some(s) => s.image_basis(f),
    }
}

/// Basis of soc M = { m : J m = 0 } as columns.
pub fn socle_submodule(ctx: &HopfContext, rep: &Representation) -> MatrixF {
    let f = &ctx.field;
    let rad = ctx.radical_basis();
    let mut stacked: Option<MatrixF> = None;
    for j in rad {
        let m = act(ctx, rep, j);
        stacked = Some(match stacked {
            None => m,
            Some(s) => s.vstack(&m),
        });
    }
    match stacked {
        None => MatrixF::identity(f, rep.dim),
        Some(s) => s.kernel_basis(f),
    }
}

/// Simple labels (l, r) with multiplicities in top M = M / rad M, computed
/// as dim Hom(M, V(l,r)).
pub fn top_labels(ctx: &HopfContext, rep: &Representation) -> Vec<((usize, i64), usize)> {
    labels_by_hom(ctx, rep, true)
}

/// Simple labels (l, r) with multiplicities in soc M, as dim Hom(V(l,r), M).
pub fn socle_labels(ctx: &HopfContext, rep: &Representation) -> Vec<((usize, i64), usize)> {
    labels_by_hom(ctx, rep, false)
}

fn labels_by_hom(ctx: &HopfContext, rep: &Representation, top: bool) -> Vec<((usize, i64), usize)> {
    let mut out = Vec::new();
    for l in 1..=ctx.n {
        for r in 0..ctx.n as i64 {
            let v = simple(ctx, l, r);
            let d = if top {
                hom_space(ctx, rep, &v).len()
            } else {
                hom_space(ctx, &v, rep).len()
            };
            if d > 0 {
                out.push(((l, r), d));
            }
        }
    }
    out
}

/// Tries to split one copy of the indecomposable `cand` off `m`. Exact:
/// succeeds if and only if `cand` is a direct summand, witnessed by an
/// idempotent built from a section/retraction pair. On success returns the
/// complement.
pub fn peel_summand(
    ctx: &HopfContext,
    m: &Representation,
    cand: &Representation,
) -> Option<Representation> {
    if cand.dim > m.dim || cand.dim == 0 || m.dim == 0 {
        return None;
    }
    let f = &ctx.field;
    let into = hom_space(ctx, cand, m);
    if into.is_empty() {
        return None;
    }
    let from = hom_space(ctx, m, cand);
    for g in &from {
        for fmap in &into {
            let u = g.mul(f, fmap);
            // End(cand) is local with residue field k, so u is invertible
            // exactly when its trace (= scalar part times dim) is nonzero.
            if u.trace().is_zero() {
                continue;
            }
            let u_inv = u
                .solve_many(f, &MatrixF::identity(f, cand.dim))
                .expect("nonzero-scalar endomorphism is invertible");
            let e = fmap.mul(f, &u_inv).mul(f, g);
            let ker = e.kernel_basis(f);
            debug_assert_eq!(ker.cols, m.dim - cand.dim);
            debug_assert_eq!(e.mul(f, &e), e);
            return Some(restrict(ctx, m, &ker));
        }
    }
    None
}

/// Removes all projective direct summands, returning the complement and the
/// peeled labels (l, r); V(n,r) counts as the projective P(n,r).
pub fn strip_projectives(
    ctx: &HopfContext,
    rep: &Representation,
) -> (Representation, Vec<(usize, i64)>) {
    let mut current = rep.clone();
    let mut peeled = Vec::new();
    for l in 1..=ctx.n {
        for r in 0..ctx.n as i64 {
            let p = projective(ctx, l, r);
            while let Some(rest) = peel_summand(ctx, &current, &p) {
                current = rest;
                peeled.push((l, r));
            }
        }
    }
    (current, peeled)
}

/// A projective cover surjection: the cover module (a direct sum of
/// indecomposable projectives matching top M) and the matrix of a
/// surjection cover -> M.
pub fn projective_cover(ctx: &HopfContext, rep: &Representation) -> (Representation, MatrixF) {
    let f = &ctx.field;
    let top = top_labels(ctx, rep);
    let mut parts = Vec::new();
    let mut part_homs: Vec<Vec<MatrixF>> = Vec::new();
    let mut copy_serial = Vec::new();
    for &((l, r), mult) in &top {
        let p = projective(ctx, l, r);
        let homs = hom_space(ctx, &p, rep);
        assert!(
            homs.len() >= mult,
            "hom space from cover factor smaller than top multiplicity"
        );
        for s in 0..mult {
            parts.push(p.clone());
            part_homs.push(homs.clone());
            copy_serial.push(s);
        }
    }
    let cover = direct_sum(ctx, &parts);

    let assemble = |choice: &[MatrixF]| -> MatrixF {
        let mut phi: Option<MatrixF> = None;
        for fmap in choice {
            phi = Some(match phi {
                None => fmap.clone(),
                Some(p) => p.hstack(fmap),
            });
        }
        phi.unwrap()
    };

    // Copies of the same factor must use independent hom directions; cycle
    // each copy through the basis, then fall back to seeded combinations.
    let max_h = part_homs.iter().map(Vec::len).max().unwrap_or(1);
    for offset in 0..max_h {
        let choice: Vec<MatrixF> = part_homs
            .iter()
            .zip(&copy_serial)
            .map(|(homs, &serial)| homs[(serial + offset) % homs.len()].clone())
            .collect();
        let phi = assemble(&choice);
        if phi.rank(f) == rep.dim {
            return (cover, phi);
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0DE_5EED);
    for _ in 0..256 {
        let choice: Vec<MatrixF> = part_homs
            .iter()
            .map(|homs| {
                let mut acc = MatrixF::zero(f, rep.dim, homs[0].cols);
                for h in homs {
                    let c = rng.gen_range(-3i64..=3);
                    if c != 0 {
                        acc = acc.add(&h.scale(f, &f.from_int(c)));
                    }
                }
                acc
            })
            .collect();
        let phi = assemble(&choice);
        if phi.rank(f) == rep.dim {
            return (cover, phi);
        }
    }
    panic!("projective cover surjection search failed; this is a bug");
}

/// Syzygy: the kernel of a projective cover of M, after stripping projective
/// summands; zero module when M itself is projective.
pub fn syzygy(ctx: &HopfContext, rep: &Representation) -> Representation {
    let f = &ctx.field;
    let (core, _) = strip_projectives(ctx, rep);
    if core.dim == 0 {
        return Representation::zero_module(ctx);
    }
    let (cover, phi) = projective_cover(ctx, &core);
    let ker = phi.kernel_basis(f);
    assert_eq!(ker.cols, cover.dim - core.dim);
    restrict(ctx, &cover, &ker)
}

/// Cosyzygy, computed through the duality: dual of the syzygy of the dual.
pub fn cosyzygy(ctx: &HopfContext, rep: &Representation) -> Representation {
    dual(ctx, &syzygy(ctx, &dual(ctx, rep)))
}

/// The string module: syzygy power m > 0 of V(l,r), cosyzygy power for
/// m < 0, and V(l,r) itself at m = 0.
pub fn string(ctx: &HopfContext, m: i64, l: usize, r: i64) -> Representation {
    assert!((1..ctx.n).contains(&l), "string: l out of range");
    let mut rep = simple(ctx, l, md(r, ctx.n));
    for _ in 0..m.unsigned_abs() {
        rep = if m > 0 {
            syzygy(ctx, &rep)
        } else {
            cosyzygy(ctx, &rep)
        };
    }
    rep
}
