//! Command implementations. Each returns a process exit code:
//! 0 success, 2 parse/usage error, 3 mismatch or unidentified summand,
//! 4 internal invariant breach.

use crate::cache;
use crate::parser::{parse_expr, LabelExpr};
use crate::sweep::{run_sweep, summands_out, write_report, SweepConfig};
use greenring::algebra::HopfContext;
use greenring::decompose::{
    decompose_oracle_with, eta_closure, label_family, Decomposition, LabelBuilder, ModuleLabel,
};
use greenring::exactfield::ExtScalar;
use greenring::repmod::{dual as dual_rep, tensor, Representation};
use greenring::rules::{decompose_pair, dualize_label, RuleTrace, RulesError};
use serde_json::json;
use std::path::Path;
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Rules,
    Oracle,
    Both,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Rules => "rules",
            Mode::Oracle => "oracle",
            Mode::Both => "both",
        }
    }
}

pub fn build_context(n: usize) -> Result<Arc<HopfContext>, String> {
    if n < 3 {
        return Err(format!("n must be at least 3, got {}", n));
    }
    if n > 12 {
        eprintln!(
            "warning: n = {} is outside the supported envelope (3..=12); continuing anyway",
            n
        );
    }
    HopfContext::new(n).map_err(|e| e.to_string())
}

/// Rule-engine evaluation of a whole expression, distributing over tensor
/// factors and mapping duals through the label involution.
pub fn eval_rules(
    ctx: &HopfContext,
    expr: &LabelExpr,
) -> Result<(Decomposition, Vec<RuleTrace>), RulesError> {
    match expr {
        LabelExpr::Label(l) => {
            let mut dec = Decomposition::new();
            dec.add(l.clone(), 1);
            Ok((dec, Vec::new()))
        }
        LabelExpr::Dual(e) => {
            let (inner, traces) = eval_rules(ctx, e)?;
            let mut dec = Decomposition::new();
            for (label, mult) in inner.iter() {
                dec.add(dualize_label(ctx, label), mult);
            }
            Ok((dec, traces))
        }
        LabelExpr::Tensor(a, b) => {
            let (da, mut traces) = eval_rules(ctx, a)?;
            let (db, tb) = eval_rules(ctx, b)?;
            traces.extend(tb);
            let mut dec = Decomposition::new();
            for (la, ma) in da.iter() {
                for (lb, mb) in db.iter() {
                    let (d, trace) = decompose_pair(ctx, la, lb)?;
                    for (label, mult) in d.iter() {
                        dec.add(label.clone(), mult * ma * mb);
                    }
                    traces.push(trace);
                }
            }
            Ok((dec, traces))
        }
    }
}

/// Concrete evaluation: build the representation named by the expression.
pub fn eval_rep(
    ctx: &HopfContext,
    expr: &LabelExpr,
    cache_dir: Option<&Path>,
) -> Result<Representation, String> {
    match expr {
        LabelExpr::Label(l) => cache::load_or_build(ctx, cache_dir, l),
        LabelExpr::Dual(e) => Ok(dual_rep(ctx, &eval_rep(ctx, e, cache_dir)?)),
        LabelExpr::Tensor(a, b) => Ok(tensor(
            ctx,
            &eval_rep(ctx, a, cache_dir)?,
            &eval_rep(ctx, b, cache_dir)?,
        )),
    }
}

/// Generic oracle candidate pool for an expression: the full label family
/// up to the string/band bounds implied by the leaves, with band parameters
/// closed under the rule maps.
pub fn oracle_pool(ctx: &HopfContext, expr: &LabelExpr) -> Vec<ModuleLabel> {
    let leaves = expr.leaf_labels();
    let mut max_m_sum = 0usize;
    let mut max_s = 0usize;
    let mut etas: Vec<ExtScalar> = Vec::new();
    for leaf in leaves {
        match leaf {
            ModuleLabel::Str { m, .. } => max_m_sum += m.unsigned_abs() as usize,
            ModuleLabel::Band { s, eta, .. } => {
                max_s = max_s.max(*s);
                if !etas.contains(eta) {
                    etas.push(eta.clone());
                }
            }
            _ => {}
        }
    }
    let closure = eta_closure(ctx, &etas);
    label_family(ctx, max_m_sum, max_s, &closure)
}

fn sort_key(label: &ModuleLabel) -> (u8, usize, i64, i64, String) {
    match label {
        ModuleLabel::Simple { l, r } => (0, *l, *r, 0, String::new()),
        ModuleLabel::Proj { l, r } => (1, *l, *r, 0, String::new()),
        ModuleLabel::Str { m, l, r } => (2, *l, *r, *m, String::new()),
        ModuleLabel::Band { s, l, r, eta } => (3, *l, *r, *s as i64, eta.to_string()),
    }
}

fn print_table(dec: &Decomposition, n: usize) {
    let mut rows: Vec<(&ModuleLabel, u64)> = dec.iter().collect();
    rows.sort_by_key(|(label, _)| sort_key(label));
    println!("{:<24} {:>6} {:>6}", "summand", "mult", "dim");
    for (label, mult) in rows {
        println!("{:<24} {:>6} {:>6}", label.to_string(), mult, label.dim(n));
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_decompose(
    n: usize,
    expr_text: &str,
    mode: Mode,
    seed: u64,
    json_out: bool,
    cache_flag: Option<&Path>,
) -> i32 {
    let ctx = match build_context(n) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    let expr = match parse_expr(expr_text, &ctx) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    let cache_dir = cache::resolve_dir(cache_flag);

    let rules_result = match mode {
        Mode::Oracle => None,
        _ => match eval_rules(&ctx, &expr) {
            Ok(r) => Some(r),
            Err(e) => {
                eprintln!("error: rule engine: {}", e);
                return EXIT_INTERNAL;
            }
        },
    };

    let oracle_result = if mode == Mode::Rules {
        None
    } else {
        let rep = match eval_rep(&ctx, &expr, cache_dir.as_deref()) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {}", e);
                return EXIT_INTERNAL;
            }
        };
        // Rule predictions (when available) order the candidate scan; the
        // generic pool keeps the oracle complete on its own.
        let hint: Vec<ModuleLabel> = match mode {
            Mode::Both => rules_result
                .as_ref()
                .map(|(d, _)| d.labels().cloned().collect())
                .unwrap_or_default(),
            _ => eval_rules(&ctx, &expr)
                .map(|(d, _)| d.labels().cloned().collect())
                .unwrap_or_default(),
        };
        let pool = oracle_pool(&ctx, &expr);
        let builder = LabelBuilder::new(&ctx);
        let rep_for_check = &rep;
        match decompose_oracle_with(&ctx, rep_for_check, &[&hint, &pool], seed, &builder) {
            Ok(d) => Some(d),
            Err(e) => {
                eprintln!("error: {}", e);
                return EXIT_MISMATCH;
            }
        }
    };

    let agree = match (&rules_result, &oracle_result) {
        (Some((r, _)), Some(o)) => Some(r == o),
        _ => None,
    };
    let shown = rules_result
        .as_ref()
        .map(|(d, _)| d.clone())
        .or_else(|| oracle_result.clone())
        .expect("at least one mode ran");

    if json_out {
        let mut obj = json!({
            "n": n,
            "expr": expr.print(),
            "mode": mode.as_str(),
            "summands": summands_out(&shown, n),
        });
        if let Some((_, traces)) = &rules_result {
            obj["trace"] = serde_json::to_value(traces).unwrap();
        }
        if let (Some(o), Some(false)) = (&oracle_result, agree) {
            obj["oracle_summands"] = serde_json::to_value(summands_out(o, n)).unwrap();
        }
        if let Some(a) = agree {
            obj["agree"] = json!(a);
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        println!("{} =", expr.print());
        print_table(&shown, n);
        if let Some((_, traces)) = &rules_result {
            for t in traces {
                println!("applied {}", t.theorem);
            }
        }
        if let Some(a) = agree {
            println!("agree: {}", a);
        }
    }
    match agree {
        Some(false) => {
            if let (Some((r, _)), Some(o)) = (&rules_result, &oracle_result) {
                eprintln!("rules:  {}", r);
                eprintln!("oracle: {}", o);
            }
            EXIT_MISMATCH
        }
        _ => EXIT_OK,
    }
}

pub fn parse_etas(text: &str, ctx: &HopfContext) -> Result<Vec<ExtScalar>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v = crate::scalar::parse_scalar(part, &ctx.field).map_err(|e| format!("eta '{}': {}", part, e))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify_sweep(
    n: usize,
    max_m: usize,
    max_s: usize,
    etas_text: &str,
    seed: u64,
    jobs: usize,
    report: Option<&Path>,
) -> i32 {
    let ctx = match build_context(n) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    let etas = match parse_etas(etas_text, &ctx) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    let cfg = SweepConfig { max_m, max_s, etas, seeds: vec![seed], jobs: jobs.max(1) };
    let start = std::time::Instant::now();
    let outcome = run_sweep(&ctx, &cfg);
    let pairs = outcome.records.len();
    let agreed = pairs - outcome.disagreements - outcome.errors;
    println!(
        "family of {} labels, {} unordered pairs: {} agree, {} disagree, {} errors ({:.1}s)",
        outcome.family.len(),
        pairs,
        agreed,
        outcome.disagreements,
        outcome.errors,
        start.elapsed().as_secs_f64()
    );
    if let Some(path) = report {
        if let Err(e) = write_report(&outcome.records, path) {
            eprintln!("error: cannot write report: {}", e);
            return EXIT_INTERNAL;
        }
        println!("report written to {}", path.display());
    }
    if outcome.errors > 0 {
        for r in outcome.records.iter().filter(|r| r.status == "error").take(5) {
            eprintln!(
                "error on {} (x) {}: {}",
                r.pair[0],
                r.pair[1],
                r.error.as_deref().unwrap_or("unknown")
            );
        }
    }
    if !outcome.all_agree() {
        if let Some(repro) = outcome.first_failure() {
            eprintln!(
                "reproduce with: greenring decompose --n {} --mode both --expr \"{}\"",
                n, repro
            );
        }
        return EXIT_MISMATCH;
    }
    EXIT_OK
}

pub fn cmd_dual(n: usize, expr_text: &str) -> i32 {
    let ctx = match build_context(n) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    let expr = match parse_expr(expr_text, &ctx) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    fn dualize(ctx: &HopfContext, e: &LabelExpr) -> LabelExpr {
        match e {
            LabelExpr::Label(l) => LabelExpr::Label(dualize_label(ctx, l)),
            LabelExpr::Dual(inner) => (**inner).clone(),
            // (M (x) N)^* = N^* (x) M^*
            LabelExpr::Tensor(a, b) => {
                LabelExpr::Tensor(Box::new(dualize(ctx, b)), Box::new(dualize(ctx, a)))
            }
        }
    }
    println!("{}", dualize(&ctx, &expr).print());
    EXIT_OK
}

pub fn cmd_dim(n: usize, expr_text: &str) -> i32 {
    let ctx = match build_context(n) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    let expr = match parse_expr(expr_text, &ctx) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_PARSE;
        }
    };
    fn dim_of(e: &LabelExpr, n: usize) -> usize {
        match e {
            LabelExpr::Label(l) => l.dim(n),
            LabelExpr::Dual(inner) => dim_of(inner, n),
            LabelExpr::Tensor(a, b) => dim_of(a, n) * dim_of(b, n),
        }
    }
    println!("{}", dim_of(&expr, n));
    EXIT_OK
}

