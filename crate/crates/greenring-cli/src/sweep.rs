//! The verification sweep: run the rule engine against the brute-force
//! oracle on every unordered pair from a label family.

use greenring::algebra::HopfContext;
use greenring::decompose::{
    decompose_oracle_with, eta_closure, label_family, Decomposition, LabelBuilder, ModuleLabel,
};
use greenring::exactfield::ExtScalar;
use greenring::repmod::tensor;
use greenring::rules::decompose_pair;
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_m: usize,
    pub max_s: usize,
    pub etas: Vec<ExtScalar>,
    pub seeds: Vec<u64>,
    pub jobs: usize,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct SummandOut {
    pub label: String,
    pub mult: u64,
    pub dim: usize,
}

pub fn summands_out(dec: &Decomposition, n: usize) -> Vec<SummandOut> {
    dec.iter()
        .map(|(label, mult)| SummandOut { label: label.to_string(), mult, dim: label.dim(n) })
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct PairRecord {
    pub pair: [String; 2],
    pub status: String,
    pub theorem: String,
    pub dim: usize,
    pub summands: Vec<SummandOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<SummandOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub ms: u128,
}

pub struct SweepOutcome {
    pub family: Vec<ModuleLabel>,
    pub records: Vec<PairRecord>,
    pub disagreements: usize,
    pub errors: usize,
}

impl SweepOutcome {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0 && self.errors == 0
    }

    /// First failing pair in "expr" form, for reproduction from the CLI.
    pub fn first_failure(&self) -> Option<String> {
        self.records
            .iter()
            .find(|r| r.status != "agree")
            .map(|r| format!("{} (x) {}", r.pair[0], r.pair[1]))
    }
}

fn run_pair(
    ctx: &HopfContext,
    a: &ModuleLabel,
    b: &ModuleLabel,
    cfg: &SweepConfig,
    tier2: &[ModuleLabel],
    builder: &LabelBuilder,
) -> PairRecord {
    let n = ctx.n;
    let start = Instant::now();
    let mut record = PairRecord {
        pair: [a.to_string(), b.to_string()],
        status: "agree".into(),
        theorem: String::new(),
        dim: a.dim(n) * b.dim(n),
        summands: Vec::new(),
        oracle: None,
        error: None,
        ms: 0,
    };
    let (pred, trace) = match decompose_pair(ctx, a, b) {
        Ok(x) => x,
        Err(e) => {
            record.status = "error".into();
            record.error = Some(format!("rule engine: {}", e));
            record.ms = start.elapsed().as_millis();
            return record;
        }
    };
    record.theorem = trace.theorem.clone();
    record.summands = summands_out(&pred, n);
    if pred.total_dim(n) != record.dim {
        record.status = "error".into();
        record.error = Some(format!(
            "dimension conservation violated: rules give {} on a {}-dimensional product",
            pred.total_dim(n),
            record.dim
        ));
        record.ms = start.elapsed().as_millis();
        return record;
    }

    let product = tensor(ctx, &builder.get(a), &builder.get(b));
    let tier1: Vec<ModuleLabel> = pred.labels().cloned().collect();
    for &seed in &cfg.seeds {
        match decompose_oracle_with(ctx, &product, &[&tier1, tier2], seed, builder) {
            Ok(actual) => {
                if actual != pred {
                    record.status = "disagree".into();
                    record.oracle = Some(summands_out(&actual, n));
                    break;
                }
            }
            Err(e) => {
                record.status = "error".into();
                record.error = Some(format!("oracle (seed {}): {}", seed, e));
                break;
            }
        }
    }
    record.ms = start.elapsed().as_millis();
    record
}

/// Runs the full sweep over all unordered pairs from the family
/// F(n, max_m, max_s, etas), each pair checked under every configured seed.
pub fn run_sweep(ctx: &HopfContext, cfg: &SweepConfig) -> SweepOutcome {
    let mut family = label_family(ctx, cfg.max_m, cfg.max_s, &cfg.etas);
    family.sort();
    // Candidate pool for oracle fallbacks: strings can add their syzygy
    // indices under tensor, and band parameters range over the closure of
    // the input parameters under the rule maps.
    let closure = eta_closure(ctx, &cfg.etas);
    let tier2 = label_family(ctx, 2 * cfg.max_m, cfg.max_s, &closure);
    let builder = LabelBuilder::new(ctx);

    let pairs: Vec<(usize, usize)> = (0..family.len())
        .flat_map(|i| (i..family.len()).map(move |j| (i, j)))
        .collect();

    let run = |&(i, j): &(usize, usize)| run_pair(ctx, &family[i], &family[j], cfg, &tier2, &builder);
    let records: Vec<PairRecord> = if cfg.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| {
            use rayon::prelude::*;
            pairs.par_iter().map(run).collect()
        })
    } else {
        pairs.iter().map(run).collect()
    };

    let disagreements = records.iter().filter(|r| r.status == "disagree").count();
    let errors = records.iter().filter(|r| r.status == "error").count();
    SweepOutcome { family, records, disagreements, errors }
}

/// Serializes records as JSON lines, one record per pair.
pub fn write_report(records: &[PairRecord], path: &std::path::Path) -> std::io::Result<()> {
    use std::io::Write;
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for record in records {
        serde_json::to_writer(&mut file, record)?;
        writeln!(&mut file)?;
    }
    Ok(())
}
