//! The Hopf algebra H_n(1,q) on generators a, b, c, d.
//!
//! Elements are kept in the PBW basis a^i b^j c^l d^k with all exponents in
//! [0, n-1]. Multiplication rewrites to normal order using the defining
//! relations; the only inhomogeneous step is d*a = q*a*d + 1 - b*c, handled
//! through a memoized expansion of d*a^i.

use crate::exactfield::{FieldCtx, FieldElem, FieldError};
use crate::linalg::MatrixF;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

/// One of the four algebra generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

pub const GENS: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

/// Exponents (i, j, l, k) of a basis monomial a^i b^j c^l d^k.
pub type MonoIdx = (u8, u8, u8, u8);

/// A linear combination of PBW basis monomials; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElem {
    pub terms: BTreeMap<MonoIdx, FieldElem>,
}

impl AlgebraElem {
    pub fn zero() -> AlgebraElem {
        AlgebraElem::default()
    }

    pub fn monomial(mono: MonoIdx, coeff: FieldElem) -> AlgebraElem {
        let mut e = AlgebraElem::zero();
        e.add_term(mono, coeff);
        e
    }

    pub fn one(ctx: &HopfContext) -> AlgebraElem {
        AlgebraElem::monomial((0, 0, 0, 0), ctx.field.one())
    }

    pub fn generator(ctx: &HopfContext, g: Gen) -> AlgebraElem {
        let mono = match g {
            Gen::A => (1, 0, 0, 0),
            Gen::B => (0, 1, 0, 0),
            Gen::C => (0, 0, 1, 0),
            Gen::D => (0, 0, 0, 1),
        };
        AlgebraElem::monomial(mono, ctx.field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: MonoIdx, coeff: FieldElem) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &AlgebraElem) -> AlgebraElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElem) -> AlgebraElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.neg());
        }
        out
    }

    pub fn scale(&self, ctx: &HopfContext, s: &FieldElem) -> AlgebraElem {
        let mut out = AlgebraElem::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, ctx.field.mul(c, s));
        }
        out
    }

    pub fn coeff(&self, mono: MonoIdx) -> Option<&FieldElem> {
        self.terms.get(&mono)
    }
}

/// Context for one H_n(1,q): the coefficient field, the memoized rewriting
/// tables, the coalgebra data on generators, and the lazily computed radical.
pub struct HopfContext {
    pub n: usize,
    pub field: Arc<FieldCtx>,
    /// Normal form of d * a^i for i in 0..n.
    da_pow: Vec<AlgebraElem>,
    /// Normal form of d^k * a^i for k, i in 0..n (row-major by k).
    dk_apow: Vec<AlgebraElem>,
    /// Coproduct of each generator as a sum of tensor pairs.
    coproduct: [Vec<(AlgebraElem, AlgebraElem)>; 4],
    /// Antipode image of each generator.
    antipode: [AlgebraElem; 4],
    radical: OnceLock<Vec<AlgebraElem>>,
}

impl HopfContext {
    pub fn new(n: usize) -> Result<Arc<HopfContext>, FieldError> {
        let field = Arc::new(FieldCtx::new(n)?);
        let mut ctx = HopfContext {
            n,
            field: field.clone(),
            da_pow: Vec::new(),
            dk_apow: Vec::new(),
            coproduct: Default::default(),
            antipode: Default::default(),
            radical: OnceLock::new(),
        };

        // d * a^i = q a (d a^{i-1}) + a^{i-1} - q^{2(i-1)} a^{i-1} b c.
        let mut da_pow = Vec::with_capacity(n);
        da_pow.push(AlgebraElem::monomial((0, 0, 0, 1), field.one()));
        for i in 1..n {
            let prev = &da_pow[i - 1];
            let mut e = AlgebraElem::zero();
            for (m, c) in &prev.terms {
                if (m.0 as usize) + 1 < n {
                    e.add_term(
                        (m.0 + 1, m.1, m.2, m.3),
                        field.mul(c, &field.pow_q(1)),
                    );
                }
            }
            e.add_term(((i - 1) as u8, 0, 0, 0), field.one());
            e.add_term(
                ((i - 1) as u8, 1, 1, 0),
                field.pow_q(2 * (i as i64 - 1)).neg(),
            );
            da_pow.push(e);
        }
        ctx.da_pow = da_pow;

        // d^k * a^i by repeated application of d.
        let mut dk_apow = Vec::with_capacity(n * n);
        for k in 0..n {
            for i in 0..n {
                if k == 0 {
                    dk_apow.push(AlgebraElem::monomial((i as u8, 0, 0, 0), field.one()));
                } else {
                    let prev: &AlgebraElem = &dk_apow[(k - 1) * n + i];
                    dk_apow.push(ctx.gen_left_mult(Gen::D, prev));
                }
            }
        }
        ctx.dk_apow = dk_apow;

        let one = AlgebraElem::monomial((0, 0, 0, 0), field.one());
        let ga = AlgebraElem::monomial((1, 0, 0, 0), field.one());
        let gb = AlgebraElem::monomial((0, 1, 0, 0), field.one());
        let gc = AlgebraElem::monomial((0, 0, 1, 0), field.one());
        let gd = AlgebraElem::monomial((0, 0, 0, 1), field.one());
        ctx.coproduct = [
            vec![(ga.clone(), gb.clone()), (one.clone(), ga.clone())],
            vec![(gb.clone(), gb.clone())],
            vec![(gc.clone(), gc.clone())],
            vec![(gd.clone(), gc.clone()), (one.clone(), gd.clone())],
        ];
        // S(a) = -a b^{n-1}, S(b) = b^{n-1}, S(c) = c^{n-1}, S(d) = -d c^{n-1},
        // normal-ordered through the rewriting engine.
        let nm1 = (n - 1) as u8;
        let b_inv = AlgebraElem::monomial((0, nm1, 0, 0), field.one());
        let c_inv = AlgebraElem::monomial((0, 0, nm1, 0), field.one());
        ctx.antipode = [
            ctx.multiply(&ga, &b_inv).scale(&ctx, &field.one().neg()),
            b_inv.clone(),
            c_inv.clone(),
            ctx.multiply(&gd, &c_inv).scale(&ctx, &field.one().neg()),
        ];
        Ok(Arc::new(ctx))
    }

    pub fn dim(&self) -> usize {
        self.n * self.n * self.n * self.n
    }

    pub fn basis_index(&self, m: MonoIdx) -> usize {
        let n = self.n;
        ((m.0 as usize * n + m.1 as usize) * n + m.2 as usize) * n + m.3 as usize
    }

    pub fn basis_mono(&self, idx: usize) -> MonoIdx {
        let n = self.n;
        let k = idx % n;
        let l = (idx / n) % n;
        let j = (idx / (n * n)) % n;
        let i = idx / (n * n * n);
        (i as u8, j as u8, l as u8, k as u8)
    }

    pub fn coproduct(&self, g: Gen) -> &[(AlgebraElem, AlgebraElem)] {
        &self.coproduct[g as usize]
    }

    pub fn antipode(&self, g: Gen) -> &AlgebraElem {
        &self.antipode[g as usize]
    }

    /// Left multiplication of a normal-ordered element by one generator.
    fn gen_left_mult(&self, g: Gen, x: &AlgebraElem) -> AlgebraElem {
        let n = self.n;
        let f = &self.field;
        let mut out = AlgebraElem::zero();
        for (&(i, j, l, k), c) in &x.terms {
            match g {
                Gen::A => {
                    if (i as usize) + 1 < n {
                        out.add_term((i + 1, j, l, k), c.clone());
                    }
                }
                Gen::B => {
                    let j2 = ((j as usize + 1) % n) as u8;
                    out.add_term((i, j2, l, k), f.mul(c, &f.pow_q(i as i64)));
                }
                Gen::C => {
                    let l2 = ((l as usize + 1) % n) as u8;
                    out.add_term((i, j, l2, k), f.mul(c, &f.pow_q(i as i64)));
                }
                Gen::D => {
                    for (&(it, jt, lt, kt), gamma) in &self.da_pow[i as usize].terms {
                        if (kt as usize) + (k as usize) >= n {
                            continue;
                        }
                        let phase = f.pow_q(kt as i64 * (j as i64 + l as i64));
                        let coeff = f.mul(c, &f.mul(gamma, &phase));
                        out.add_term(
                            (
                                it,
                                ((jt as usize + j as usize) % n) as u8,
                                ((lt as usize + l as usize) % n) as u8,
                                kt + k,
                            ),
                            coeff,
                        );
                    }
                }
            }
        }
        out
    }

    /// Normal-ordered product in H_n(1,q).
    pub fn multiply(&self, x: &AlgebraElem, y: &AlgebraElem) -> AlgebraElem {
        let mut out = AlgebraElem::zero();
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                let c = self.field.mul(cx, cy);
                self.mono_product_terms(*mx, *my, |pm, pc| {
                    out.add_term(pm, self.field.mul(&c, &pc));
                });
            }
        }
        out
    }

    /// Matrix of y -> x*y in the PBW basis.
    pub fn left_mult_matrix(&self, x: &AlgebraElem) -> MatrixF {
        let d = self.dim();
        let mut m = MatrixF::zero(&self.field, d, d);
        for w in 0..d {
            let prod = self.multiply(x, &AlgebraElem::monomial(self.basis_mono(w), self.field.one()));
            for (pm, pc) in &prod.terms {
                *m.at_mut(self.basis_index(*pm), w) = pc.clone();
            }
        }
        m
    }

    /// Terms of e_u * e_v streamed to a visitor, using the precomputed
    /// d^k a^i tables. Used by the radical computation, where materializing
    /// n^8 products would dominate.
    fn mono_product_terms(&self, u: MonoIdx, v: MonoIdx, mut f: impl FnMut(MonoIdx, FieldElem)) {
        let n = self.n;
        let (i1, j1, l1, k1) = u;
        let (i2, j2, l2, k2) = v;
        let mid = &self.dk_apow[k1 as usize * n + i2 as usize];
        for (&(it, jt, lt, kt), gamma) in &mid.terms {
            if (i1 as usize) + (it as usize) >= n || (kt as usize) + (k2 as usize) >= n {
                continue;
            }
            // a^{i1} b^{j1} c^{l1} (a^{it} b^{jt} c^{lt} d^{kt}) b^{j2} c^{l2} d^{k2}
            let phase = self
                .field
                .pow_q((j1 as i64 + l1 as i64) * it as i64 + kt as i64 * (j2 as i64 + l2 as i64));
            let mono = (
                i1 + it,
                ((j1 as usize + jt as usize + j2 as usize) % n) as u8,
                ((l1 as usize + lt as usize + l2 as usize) % n) as u8,
                kt + k2,
            );
            f(mono, self.field.mul(gamma, &phase));
        }
    }

    /// Exact check that the radical cubes to zero: a triangular basis of
    /// span(J*J) is accumulated from all pairwise products, and every basis
    /// element times every radical generator must vanish.
    pub fn radical_cube_is_zero(&self) -> bool {
        let rad = self.radical_basis();
        // Triangular span basis keyed by leading monomial.
        let mut span: BTreeMap<MonoIdx, AlgebraElem> = BTreeMap::new();
        let reduce = |span: &BTreeMap<MonoIdx, AlgebraElem>, mut p: AlgebraElem| -> AlgebraElem {
            loop {
                let Some((&lead, coeff)) = p.terms.iter().next() else {
                    return p;
                };
                let Some(b) = span.get(&lead) else {
                    return p;
                };
                let c = coeff.clone();
                for (m, bc) in &b.terms {
                    p.add_term(*m, self.field.mul(&c, bc).neg());
                }
            }
        };
        for x in rad {
            for y in rad {
                let p = reduce(&span, self.multiply(x, y));
                if let Some((&lead, coeff)) = p.terms.iter().next() {
                    let inv = self.field.inv(coeff).expect("leading coefficient nonzero");
                    span.insert(lead, p.scale(self, &inv));
                }
            }
        }
        for w in span.values() {
            for z in rad {
                if !self.multiply(w, z).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Basis of the Jacobson radical, computed once per context as the
    /// kernel of the trace bilinear form (x, y) -> tr(left_mult(xy)).
    /// Characteristic zero and faithfulness of the left regular
    /// representation make that kernel exactly rad(H).
    pub fn radical_basis(&self) -> &[AlgebraElem] {
        self.radical.get_or_init(|| {
            let d = self.dim();
            let f = &self.field;

            // Trace of left multiplication by each basis monomial.
            let mut t = vec![f.zero(); d];
            for m in 0..d {
                let mono = self.basis_mono(m);
                let mut acc = f.zero();
                for w in 0..d {
                    let wm = self.basis_mono(w);
                    self.mono_product_terms(mono, wm, |pm, pc| {
                        if pm == wm {
                            acc = acc.add(&pc);
                        }
                    });
                }
                t[m] = acc;
            }

            // Gram matrix of the trace form; symmetric since tr(L_x L_y) is.
            let mut gram = MatrixF::zero(f, d, d);
            for u in 0..d {
                let um = self.basis_mono(u);
                for v in u..d {
                    let vm = self.basis_mono(v);
                    let mut acc = f.zero();
                    self.mono_product_terms(um, vm, |pm, pc| {
                        let tv = &t[self.basis_index(pm)];
                        if !tv.is_zero() {
                            acc = acc.add(&f.mul(&pc, tv));
                        }
                    });
                    if !acc.is_zero() {
                        *gram.at_mut(u, v) = acc.clone();
                        if u != v {
                            *gram.at_mut(v, u) = acc;
                        }
                    }
                }
            }

            let ker = gram.kernel_basis(f);
            let mut basis = Vec::with_capacity(ker.cols);
            for c in 0..ker.cols {
                let mut e = AlgebraElem::zero();
                for r in 0..d {
                    let coeff = ker.at(r, c);
                    if !coeff.is_zero() {
                        e.add_term(self.basis_mono(r), coeff.clone());
                    }
                }
                basis.push(e);
            }
            basis
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Arc<HopfContext> {
        HopfContext::new(n).unwrap()
    }

    #[test]
    fn commutation_relations() {
        for n in [3usize, 4, 5] {
            let h = ctx(n);
            let f = &h.field;
            let a = AlgebraElem::generator(&h, Gen::A);
            let b = AlgebraElem::generator(&h, Gen::B);
            let c = AlgebraElem::generator(&h, Gen::C);
            let d = AlgebraElem::generator(&h, Gen::D);
            let q = f.pow_q(1);

            // ba = q ab
            assert_eq!(
                h.multiply(&b, &a),
                h.multiply(&a, &b).scale(&h, &q),
                "ba = qab at n={}",
                n
            );
            // db = q bd, ca = q ac, dc = q cd
            assert_eq!(h.multiply(&d, &b), h.multiply(&b, &d).scale(&h, &q));
            assert_eq!(h.multiply(&c, &a), h.multiply(&a, &c).scale(&h, &q));
            assert_eq!(h.multiply(&d, &c), h.multiply(&c, &d).scale(&h, &q));
            // bc = cb
            assert_eq!(h.multiply(&b, &c), h.multiply(&c, &b));
            // da - q ad = 1 - bc
            let lhs = h.multiply(&d, &a).sub(&h.multiply(&a, &d).scale(&h, &q));
            let rhs = AlgebraElem::one(&h).sub(&h.multiply(&b, &c));
            assert_eq!(lhs, rhs, "da - qad = 1 - bc at n={}", n);
        }
    }

    #[test]
    fn nilpotency_and_torsion() {
        for n in [3usize, 4] {
            let h = ctx(n);
            let a = AlgebraElem::generator(&h, Gen::A);
            let d = AlgebraElem::generator(&h, Gen::D);
            let b = AlgebraElem::generator(&h, Gen::B);
            let mut apow = AlgebraElem::one(&h);
            for _ in 0..n - 1 {
                apow = h.multiply(&a, &apow);
            }
            // a^{n-1} * a = 0, same for d
            assert!(h.multiply(&a, &apow).is_zero());
            let mut dpow = AlgebraElem::one(&h);
            for _ in 0..n - 1 {
                dpow = h.multiply(&d, &dpow);
            }
            assert!(h.multiply(&d, &dpow).is_zero());
            // b^n = 1
            let mut bpow = AlgebraElem::one(&h);
            for _ in 0..n {
                bpow = h.multiply(&b, &bpow);
            }
            assert_eq!(bpow, AlgebraElem::one(&h));
        }
    }

    #[test]
    fn antipode_on_group_likes() {
        let h = ctx(3);
        let b = AlgebraElem::generator(&h, Gen::B);
        let c = AlgebraElem::generator(&h, Gen::C);
        assert_eq!(h.multiply(h.antipode(Gen::B), &b), AlgebraElem::one(&h));
        assert_eq!(h.multiply(h.antipode(Gen::C), &c), AlgebraElem::one(&h));
    }

    #[test]
    fn associativity_sample() {
        let h = ctx(3);
        // Deterministic sample of basis monomials.
        let monos = [
            (0u8, 0u8, 0u8, 1u8),
            (1, 2, 0, 1),
            (2, 1, 1, 2),
            (1, 0, 2, 1),
            (2, 2, 2, 2),
            (0, 1, 1, 2),
        ];
        for x in monos {
            for y in monos {
                for z in monos {
                    let ex = AlgebraElem::monomial(x, h.field.one());
                    let ey = AlgebraElem::monomial(y, h.field.one());
                    let ez = AlgebraElem::monomial(z, h.field.one());
                    assert_eq!(
                        h.multiply(&h.multiply(&ex, &ey), &ez),
                        h.multiply(&ex, &h.multiply(&ey, &ez)),
                        "associativity at {:?} {:?} {:?}",
                        x,
                        y,
                        z
                    );
                }
            }
        }
    }

    #[test]
    fn left_mult_matrix_examples() {
        let h = ctx(3);
        let one = AlgebraElem::one(&h);
        assert_eq!(h.left_mult_matrix(&one), MatrixF::identity(&h.field, 81));
        // Left multiplication by a is strictly raising in a-degree.
        let a = AlgebraElem::generator(&h, Gen::A);
        assert!(h.left_mult_matrix(&a).trace().is_zero());
        // b permutes-with-scalars and has order 3.
        let b = AlgebraElem::generator(&h, Gen::B);
        let lb = h.left_mult_matrix(&b);
        for w in 0..81 {
            let col = lb.column(w);
            let nonzero = (0..81).filter(|&r| !col.at(r, 0).is_zero()).count();
            assert_eq!(nonzero, 1);
        }
        assert_eq!(lb.matrix_power(&h.field, 3), MatrixF::identity(&h.field, 81));
    }

    #[test]
    fn radical_dimension_n3() {
        let h = ctx(3);
        let rad = h.radical_basis();
        // dim J = n^4 - n * sum l^2 = 81 - 3*14 = 39.
        assert_eq!(rad.len(), 39);
        // 1 is not in the span: rref of [rad | 1] has rank |rad| + 1.
        let d = h.dim();
        let mut m = MatrixF::zero(&h.field, d, rad.len() + 1);
        for (c, e) in rad.iter().enumerate() {
            for (mono, coeff) in &e.terms {
                *m.at_mut(h.basis_index(*mono), c) = coeff.clone();
            }
        }
        *m.at_mut(h.basis_index((0, 0, 0, 0)), rad.len()) = h.field.one();
        assert_eq!(m.rank(&h.field), rad.len() + 1);
    }

    #[test]
    fn radical_elements_nilpotent() {
        let h = ctx(3);
        let rad = h.radical_basis();
        // Spot-check: the first radical element acts nilpotently.
        let j = &rad[0];
        let lm = h.left_mult_matrix(j);
        assert_eq!(lm.generalized_kernel(&h.field).cols, 81);
    }
}
