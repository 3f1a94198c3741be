//! Acceptance suite. Each test covers one numbered criterion, checks it
//! exactly (tolerance zero throughout), and prints a pass line; run with
//! `cargo test --release -p greenring-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use greenring::algebra::{AlgebraElem, Gen, HopfContext};
use greenring::decompose::{
    construct, decompose_oracle_with, eta_closure, identify, is_indecomposable, label_family,
    Decomposition, LabelBuilder, ModuleLabel,
};
use greenring::exactfield::ExtScalar;
use greenring::repmod::{
    band, check_relations, dual, projective, simple, socle_labels, string, syzygy, tensor,
    top_labels,
};
use greenring::rules::{decompose_pair, dualize_label};
use greenring_cli::sweep::{run_sweep, PairRecord, SweepConfig, SweepOutcome};
use std::sync::{Arc, OnceLock};

fn hopf(n: usize) -> Arc<HopfContext> {
    HopfContext::new(n).unwrap()
}

fn fin(ctx: &HopfContext, k: i64) -> ExtScalar {
    ExtScalar::Fin(ctx.field.from_int(k))
}

fn default_etas(ctx: &HopfContext) -> Vec<ExtScalar> {
    vec![fin(ctx, 0), fin(ctx, 1), ExtScalar::Infinity]
}

fn pass(criterion: &str) {
    println!("criterion {}: PASS", criterion);
}

/// Criterion 1: algebra sanity at n = 3, 4, 5. Dimension n^4, the ten
/// defining relations under `multiply`, J^3 = 0, and
/// dim(H/J) = n * sum l^2.
#[test]
fn criterion_1_algebra_sanity() {
    for n in [3usize, 4, 5] {
        let h = hopf(n);
        assert_eq!(h.dim(), n.pow(4), "dim H = n^4 at n={}", n);

        let f = &h.field;
        let q = f.pow_q(1);
        let one = AlgebraElem::one(&h);
        let a = AlgebraElem::generator(&h, Gen::A);
        let b = AlgebraElem::generator(&h, Gen::B);
        let c = AlgebraElem::generator(&h, Gen::C);
        let d = AlgebraElem::generator(&h, Gen::D);
        let pow = |x: &AlgebraElem, k: usize| {
            let mut acc = one.clone();
            for _ in 0..k {
                acc = h.multiply(x, &acc);
            }
            acc
        };
        assert_eq!(h.multiply(&b, &a), h.multiply(&a, &b).scale(&h, &q));
        assert_eq!(h.multiply(&d, &b), h.multiply(&b, &d).scale(&h, &q));
        assert_eq!(h.multiply(&c, &a), h.multiply(&a, &c).scale(&h, &q));
        assert_eq!(h.multiply(&d, &c), h.multiply(&c, &d).scale(&h, &q));
        assert_eq!(h.multiply(&b, &c), h.multiply(&c, &b));
        assert!(pow(&a, n).is_zero());
        assert!(pow(&d, n).is_zero());
        assert_eq!(pow(&b, n), one);
        assert_eq!(pow(&c, n), one);
        let lhs = h.multiply(&d, &a).sub(&h.multiply(&a, &d).scale(&h, &q));
        let rhs = one.sub(&h.multiply(&b, &c));
        assert_eq!(lhs, rhs, "da - qad = 1 - bc at n={}", n);

        let rad_dim = h.radical_basis().len();
        let semisimple_dim: usize = (1..=n).map(|l| n * l * l).sum();
        assert_eq!(h.dim() - rad_dim, semisimple_dim, "dim H/J at n={}", n);
        assert!(h.radical_cube_is_zero(), "J^3 = 0 at n={}", n);
    }
    pass("1 (algebra sanity at n=3,4,5)");
}

/// Criterion 2: constructor conformance at n = 3, 4: the ten-relation
/// invariant on every constructed module, the socle/top structure of
/// projectives, the parity socle formulas for strings up to m = 2, and the
/// band syzygy twist for s <= 2, eta in {0, 1, inf}.
#[test]
fn criterion_2_constructor_conformance() {
    for n in [3usize, 4] {
        let h = hopf(n);
        let ni = n as i64;
        for l in 1..=n {
            for r in 0..ni {
                check_relations(&h, &simple(&h, l, r)).unwrap();
                check_relations(&h, &projective(&h, l, r)).unwrap();
            }
        }
        for l in 1..n {
            for r in 0..ni {
                for m in [-2i64, -1, 1, 2] {
                    check_relations(&h, &string(&h, m, l, r)).unwrap();
                }
                for s in 1..=2 {
                    for eta in default_etas(&h) {
                        check_relations(&h, &band(&h, s, l, r, &eta)).unwrap();
                    }
                }
            }
        }

        // soc P(l,r) = top P(l,r) = V(l,r); middle layer 2 V(n-l, r+l).
        for l in 1..n {
            for r in 0..ni {
                let p = projective(&h, l, r);
                assert_eq!(top_labels(&h, &p), vec![((l, r), 1)]);
                assert_eq!(socle_labels(&h, &p), vec![((l, r), 1)]);
                let soc = greenring::repmod::socle_submodule(&h, &p);
                let mid = greenring::repmod::quotient(&h, &p, &soc);
                let expect = ((n - l), (r + l as i64).rem_euclid(ni));
                assert_eq!(socle_labels(&h, &mid), vec![(expect, 2)]);
            }
        }

        // Parity formulas for string socles and tops, m <= 2.
        for l in 1..n {
            for r in 0..ni {
                let other = ((n - l), (r + l as i64).rem_euclid(ni));
                for m in 1..=2i64 {
                    let pos = string(&h, m, l, r);
                    let neg = string(&h, -m, l, r);
                    let (soc_pos, soc_neg) = if m % 2 == 1 {
                        // soc Om^m = m V(l,r); soc Om^{-m} = (m+1) V(n-l, r+l).
                        (
                            vec![((l, r), m as usize)],
                            vec![(other, (m + 1) as usize)],
                        )
                    } else {
                        (
                            vec![(other, m as usize)],
                            vec![((l, r), (m + 1) as usize)],
                        )
                    };
                    assert_eq!(socle_labels(&h, &pos), soc_pos, "soc Om^{}V({},{})", m, l, r);
                    assert_eq!(socle_labels(&h, &neg), soc_neg, "soc Om^-{}V({},{})", m, l, r);
                    // Tops mirror the socles: top Om^m = soc Om^{-m}.
                    assert_eq!(top_labels(&h, &pos), soc_neg);
                    assert_eq!(top_labels(&h, &neg), soc_pos);
                }
            }
        }

        // Om M_s(l,r,eta) = M_s(n-l, r+l, -eta q^l) for s <= 2.
        for s in 1..=2usize {
            for l in 1..n {
                for r in 0..ni {
                    for eta in default_etas(&h) {
                        let m = band(&h, s, l, r, &eta);
                        let om = syzygy(&h, &m);
                        let expected = dualize_label(
                            &h,
                            &ModuleLabel::band(n, s, l, r, eta.clone()),
                        );
                        // The dual label happens to share the twist shape; use
                        // the direct formula instead to be explicit.
                        let _ = expected;
                        let twisted = match &eta {
                            ExtScalar::Infinity => ExtScalar::Infinity,
                            ExtScalar::Fin(x) => ExtScalar::Fin(
                                h.field.mul(x, &h.field.pow_q(l as i64)).neg(),
                            ),
                        };
                        let target = ModuleLabel::band(n, s, n - l, r + l as i64, twisted);
                        assert_eq!(
                            identify(&h, &om, std::slice::from_ref(&target)).unwrap(),
                            target,
                            "syzygy of M_{}({},{};{}) at n={}",
                            s,
                            l,
                            r,
                            eta,
                            n
                        );
                    }
                }
            }
        }
    }
    pass("2 (constructor conformance at n=3,4)");
}

/// Criterion 3: the duality suite at n = 3.
#[test]
fn criterion_3_duality_suite() {
    let h = hopf(3);
    let n = 3;
    let family = label_family(&h, 2, 2, &default_etas(&h));
    assert_eq!(family.len(), 75);
    // dual() realizes the label involution on every family member, and
    // dualize_label is an involution.
    for label in &family {
        let built = construct(&h, label);
        let d = dual(&h, &built);
        let target = dualize_label(&h, label);
        assert_eq!(
            identify(&h, &d, std::slice::from_ref(&target)).unwrap(),
            target,
            "dual of {}",
            label
        );
        assert_eq!(dualize_label(&h, &target), *label, "involution on {}", label);
    }

    // (M (x) N)^* = N^* (x) M^* as decomposed multisets, 20 seeded pairs.
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260810);
    let builder = LabelBuilder::new(&h);
    let closure = eta_closure(&h, &default_etas(&h));
    let pool = label_family(&h, 4, 2, &closure);
    for _ in 0..20 {
        let a = family.choose(&mut rng).unwrap();
        let b = family.choose(&mut rng).unwrap();
        let lhs = dual(&h, &tensor(&h, &builder.get(a), &builder.get(b)));
        let rhs = tensor(
            &h,
            &dual(&h, &builder.get(b)),
            &dual(&h, &builder.get(a)),
        );
        let (pred, _) =
            decompose_pair(&h, &dualize_label(&h, b), &dualize_label(&h, a)).unwrap();
        let tier1: Vec<ModuleLabel> = pred.labels().cloned().collect();
        let dl = decompose_oracle_with(&h, &lhs, &[&tier1, &pool], 7, &builder).unwrap();
        let dr = decompose_oracle_with(&h, &rhs, &[&tier1, &pool], 7, &builder).unwrap();
        assert_eq!(dl, dr, "(M x N)^* vs N^* x M^* for {} , {}", a, b);
        assert_eq!(dl.total_dim(n), a.dim(n) * b.dim(n));
    }
    pass("3 (duality suite at n=3)");
}

struct MainSweep {
    outcome: SweepOutcome,
}

fn main_sweep() -> &'static MainSweep {
    static SWEEP: OnceLock<MainSweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let h = hopf(3);
        let cfg = SweepConfig {
            max_m: 2,
            max_s: 2,
            etas: default_etas(&h),
            seeds: vec![1, 2, 3],
            jobs: 1,
        };
        MainSweep { outcome: run_sweep(&h, &cfg) }
    })
}

/// Criterion 4: the main theorem sweep at n = 3 over the default family of
/// 75 labels, every unordered pair, rules vs oracle under three seeds.
#[test]
fn criterion_4_main_theorem_sweep() {
    let sweep = main_sweep();
    assert_eq!(sweep.outcome.family.len(), 75, "default family size");
    assert_eq!(sweep.outcome.records.len(), 75 * 76 / 2, "unordered pair count");
    let bad: Vec<&PairRecord> = sweep
        .outcome
        .records
        .iter()
        .filter(|r| r.status != "agree")
        .collect();
    assert!(
        bad.is_empty(),
        "{} pairs failed; first: {} (x) {} ({:?})",
        bad.len(),
        bad[0].pair[0],
        bad[0].pair[1],
        bad[0].error
    );
    // Every summand label that appears carries the absolute-indecomposability
    // certificate (End/rad one-dimensional), discharging the base-field gap.
    let h = hopf(3);
    let mut seen = std::collections::BTreeSet::new();
    for r in &sweep.outcome.records {
        for s in &r.summands {
            seen.insert(s.label.clone());
        }
    }
    for text in seen {
        let expr = greenring_cli::parser::parse_expr(&text, &h).unwrap();
        let greenring_cli::parser::LabelExpr::Label(label) = expr else {
            panic!("summand {} is not a bare label", text)
        };
        let (ind, cert) = is_indecomposable(&h, &construct(&h, &label));
        assert!(ind, "summand {} not absolutely indecomposable: {:?}", text, cert);
    }
    pass("4 (main theorem sweep at n=3, 75 labels, 3 seeds)");
}

/// Criterion 5: the n = 4 smoke sweep with m, s <= 1 and eta in {1, inf},
/// exercising the even-n parity branches.
#[test]
fn criterion_5_n4_smoke_sweep() {
    let h = hopf(4);
    let cfg = SweepConfig {
        max_m: 1,
        max_s: 1,
        etas: vec![fin(&h, 1), ExtScalar::Infinity],
        seeds: vec![1],
        jobs: 1,
    };
    let outcome = run_sweep(&h, &cfg);
    assert!(
        outcome.all_agree(),
        "n=4 sweep: {} disagreements, {} errors; first failure {:?}",
        outcome.disagreements,
        outcome.errors,
        outcome.first_failure()
    );
    pass("5 (n=4 smoke sweep)");
}

/// Criterion 6: spot instances checked through both paths.
#[test]
fn criterion_6_spot_instances() {
    let h = hopf(3);
    let n = 3;
    let builder = LabelBuilder::new(&h);
    let closure = eta_closure(&h, &default_etas(&h));
    let pool = label_family(&h, 4, 2, &closure);
    let check = |a: ModuleLabel, b: ModuleLabel, expect: Vec<(ModuleLabel, u64)>| {
        let (pred, _) = decompose_pair(&h, &a, &b).unwrap();
        let mut want = Decomposition::new();
        for (label, mult) in expect {
            want.add(label, mult);
        }
        assert_eq!(pred, want, "rules path for {} (x) {}", a, b);
        let t = tensor(&h, &builder.get(&a), &builder.get(&b));
        let tier1: Vec<ModuleLabel> = pred.labels().cloned().collect();
        let actual = decompose_oracle_with(&h, &t, &[&tier1, &pool], 11, &builder).unwrap();
        assert_eq!(actual, want, "oracle path for {} (x) {}", a, b);
    };

    check(
        ModuleLabel::simple(n, 2, 0),
        ModuleLabel::simple(n, 3, 0),
        vec![(ModuleLabel::proj(n, 2, 1), 1)],
    );
    check(
        ModuleLabel::simple(n, 2, 0),
        ModuleLabel::proj(n, 2, 0),
        vec![(ModuleLabel::simple(n, 3, 0), 2), (ModuleLabel::proj(n, 1, 1), 1)],
    );
    check(
        ModuleLabel::band(n, 1, 1, 0, fin(&h, 0)),
        ModuleLabel::band(n, 1, 1, 0, fin(&h, 1)),
        vec![(ModuleLabel::proj(n, 1, 0), 1), (ModuleLabel::simple(n, 3, 2), 1)],
    );

    // V(1,r) (x) X = X with the r-index shifted, for every X in the family.
    let family = label_family(&h, 2, 2, &default_etas(&h));
    for r in 0..n as i64 {
        let unit = ModuleLabel::simple(n, 1, r);
        for x in &family {
            let (pred, _) = decompose_pair(&h, &unit, x).unwrap();
            let shifted = match x {
                ModuleLabel::Simple { l, r: rx } => ModuleLabel::simple(n, *l, rx + r),
                ModuleLabel::Proj { l, r: rx } => ModuleLabel::proj(n, *l, rx + r),
                ModuleLabel::Str { m, l, r: rx } => ModuleLabel::string(n, *m, *l, rx + r),
                ModuleLabel::Band { s, l, r: rx, eta } => {
                    ModuleLabel::band(n, *s, *l, rx + r, eta.clone())
                }
            };
            let mut want = Decomposition::new();
            want.add(shifted.clone(), 1);
            assert_eq!(pred, want, "rules path for V(1,{}) (x) {}", r, x);
            let t = tensor(&h, &builder.get(&unit), &builder.get(x));
            let actual =
                decompose_oracle_with(&h, &t, &[std::slice::from_ref(&shifted), &pool], 13, &builder)
                    .unwrap();
            assert_eq!(actual, want, "oracle path for V(1,{}) (x) {}", r, x);
        }
    }
    pass("6 (spot instances, both paths)");
}

/// Criterion 7: projectivity closure. For every sweep pair with a projective
/// factor, every summand is projective (P(l,r) or V(n,r)).
#[test]
fn criterion_7_projectivity_closure() {
    let n = 3usize;
    let sweep = main_sweep();
    let is_projective_text = |text: &str| {
        text.starts_with("P(") || text.starts_with(&format!("V({},", n))
    };
    let mut pairs_checked = 0usize;
    for record in &sweep.outcome.records {
        if record.status != "agree" {
            continue;
        }
        if record.pair.iter().any(|p| is_projective_text(p)) {
            pairs_checked += 1;
            for s in &record.summands {
                assert!(
                    is_projective_text(&s.label),
                    "non-projective summand {} in {} (x) {}",
                    s.label,
                    record.pair[0],
                    record.pair[1]
                );
            }
        }
    }
    assert!(pairs_checked > 500, "closure check covered {} pairs", pairs_checked);
    pass("7 (projectivity closure over the sweep)");
}

/// Criterion 8: determinism. Two sweeps with different seeds produce
/// identical reports once timing fields are dropped.
#[test]
fn criterion_8_determinism() {
    let h = hopf(3);
    let run = |seed: u64| {
        let cfg = SweepConfig {
            max_m: 2,
            max_s: 2,
            etas: default_etas(&h),
            seeds: vec![seed],
            jobs: 1,
        };
        run_sweep(&h, &cfg)
    };
    let first = run(41);
    let second = run(42);
    let strip = |records: &[PairRecord]| -> Vec<String> {
        records
            .iter()
            .map(|r| {
                let mut v = serde_json::to_value(r).unwrap();
                v.as_object_mut().unwrap().remove("ms");
                v.to_string()
            })
            .collect()
    };
    assert_eq!(strip(&first.records), strip(&second.records));
    pass("8 (seed-independent sweep reports)");
}
