use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

use super::generate::{generator, generator_names};
use super::instance::{verify_theorem, Provenance, Verdict};

pub const DEFAULT_DIM_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StressConfig {
    pub trials: usize,
    pub dim_cap: usize,
    pub field: Field,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub trial: usize,
    pub seed: u64,
    pub provenance: Provenance,
    pub induction_trace: Vec<bool>,
    pub stage_dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StressSummary {
    pub trials: usize,
    pub field: Field,
    pub dim_cap: usize,
    pub seed: u64,
    pub consistent: usize,
    pub premise_violated: usize,
    pub counterexamples: usize,
    pub monotonicity_violations: usize,
    pub by_generator: BTreeMap<String, usize>,
    pub max_stabilization_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<CounterexampleRecord>,
}

/// SplitMix64 step on `master + (index + 1)·γ`; distinct trials get
/// well-separated seeds.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    let mut z = master.wrapping_add((index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Outcome {
    generator: &'static str,
    verdict: Verdict,
    monotone: bool,
    stabilization_index: usize,
    record: Option<CounterexampleRecord>,
}

fn run_trial(cfg: &StressConfig, trial: usize) -> Result<Outcome> {
    let seed = trial_seed(cfg.seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = generator_names();
    let name = names[rng.gen_range(0..names.len())];
    let inst = generator(name)
        .expect("registered generator")
        .generate(cfg.field, cfg.dim_cap, &mut rng)
        .map_err(|e| Error::Internal(format!("trial {trial} (seed {seed}): {e}")))?
        .with_seed(seed);
    let report = verify_theorem(&inst)?;
    let record = (report.verdict == Verdict::Counterexample).then(|| CounterexampleRecord {
        trial,
        seed,
        provenance: inst.provenance().clone(),
        induction_trace: report.induction_trace.clone(),
        stage_dims: report.stage_dims.clone(),
    });
    Ok(Outcome {
        generator: name,
        verdict: report.verdict,
        monotone: report.trace_is_monotone(),
        stabilization_index: report.stabilization_index,
        record,
    })
}

/// Runs `trials` seeded random instances in parallel. The summary depends
/// only on the configuration, not on scheduling.
pub fn stress(cfg: &StressConfig) -> Result<StressSummary> {
    if cfg.dim_cap == 0 {
        return Err(Error::Precondition("dim cap must be at least 1".into()));
    }
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = StressSummary {
        trials: cfg.trials,
        field: cfg.field,
        dim_cap: cfg.dim_cap,
        seed: cfg.seed,
        consistent: 0,
        premise_violated: 0,
        counterexamples: 0,
        monotonicity_violations: 0,
        by_generator: BTreeMap::new(),
        max_stabilization_index: 0,
        first_counterexample: None,
    };
    for o in outcomes {
        match o.verdict {
            Verdict::Consistent => summary.consistent += 1,
            Verdict::PremiseViolated => summary.premise_violated += 1,
            Verdict::Counterexample => summary.counterexamples += 1,
        }
        if !o.monotone {
            summary.monotonicity_violations += 1;
        }
        *summary.by_generator.entry(o.generator.to_string()).or_default() += 1;
        summary.max_stabilization_index = summary.max_stabilization_index.max(o.stabilization_index);
        if let Some(r) = o.record {
            let lower = summary.first_counterexample.as_ref().is_none_or(|c| r.seed < c.seed);
            if lower {
                summary.first_counterexample = Some(r);
            }
        }
    }
    Ok(summary)
}
