use serde::{Deserialize, Serialize};

use crate::coalgebra::{is_subcoalgebra, Coalgebra, CoalgebraMorphism};
use crate::coradical::coradical;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::wedge::build_filtration;

/// How an instance came about.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Provenance {
    pub fn named(generator: impl Into<String>) -> Self {
        Provenance {
            generator: generator.into(),
            ..Default::default()
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// A coalgebra `E`, a subcoalgebra `D ⊆ E` and a coalgebra map `f : E → C`.
#[derive(Debug, Clone)]
pub struct HrInstance {
    d: Subspace,
    f: CoalgebraMorphism,
    provenance: Provenance,
}

impl HrInstance {
    pub fn new(e: &Coalgebra, d: Subspace, f: CoalgebraMorphism, provenance: Provenance) -> Result<HrInstance> {
        if f.source() != e {
            return Err(Error::Precondition("f must start at E".into()));
        }
        if !is_subcoalgebra(e, &d)? {
            return Err(Error::NotASubcoalgebra);
        }
        Ok(HrInstance { d, f, provenance })
    }

    pub fn e(&self) -> &Coalgebra {
        self.f.source()
    }

    pub fn c(&self) -> &Coalgebra {
        self.f.target()
    }

    pub fn d(&self) -> &Subspace {
        &self.d
    }

    pub fn f(&self) -> &CoalgebraMorphism {
        &self.f
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.provenance.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "consistent")]
    Consistent,
    #[serde(rename = "premise_violated")]
    PremiseViolated,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrReport {
    /// `f ∘ δ₂` injective.
    pub premise_holds: bool,
    /// `f ∘ δ̃` injective.
    pub conclusion_holds: bool,
    /// Entry `n`: `f ∘ δ_n` injective, for `n = 0..=max(2, stabilization_index)`.
    pub induction_trace: Vec<bool>,
    pub stabilization_index: usize,
    pub stage_dims: Vec<usize>,
    pub kernel_dim: usize,
    pub verdict: Verdict,
}

impl HrReport {
    /// Once `f ∘ δ_n` fails to be injective it stays so for larger `n`.
    pub fn trace_is_monotone(&self) -> bool {
        self.induction_trace.windows(2).all(|w| w[0] || !w[1])
    }
}

/// Builds the filtration of `D` in `E` and tests `ker f ∩ D^{∧n} = 0` along it.
pub fn verify_theorem(inst: &HrInstance) -> Result<HrReport> {
    let filtration = build_filtration(inst.e(), inst.d())?;
    let kernel = inst.f().kernel();
    let s = filtration.stabilization_index();
    let induction_trace = (0..=s.max(2))
        .map(|n| kernel.intersect(filtration.stage(n)).map(|k| k.is_zero()))
        .collect::<Result<Vec<bool>>>()?;
    let premise_holds = induction_trace[2];
    let conclusion_holds = kernel.intersect(filtration.colimit())?.is_zero();
    let verdict = match (premise_holds, conclusion_holds) {
        (true, false) => Verdict::Counterexample,
        (true, true) => Verdict::Consistent,
        (false, _) => Verdict::PremiseViolated,
    };
    Ok(HrReport {
        premise_holds,
        conclusion_holds,
        induction_trace,
        stabilization_index: s,
        stage_dims: filtration.stages().iter().map(Subspace::dim).collect(),
        kernel_dim: kernel.dim(),
        verdict,
    })
}

/// The theorem with `D` the coradical of `E`; the conclusion then says `f`
/// is injective.
pub fn verify_corollary(e: &Coalgebra, f: &CoalgebraMorphism) -> Result<HrReport> {
    let d = coradical(e)?.coradical;
    let inst = HrInstance::new(e, d, f.clone(), Provenance::named("corollary"))?;
    let report = verify_theorem(&inst)?;
    if report.conclusion_holds != f.is_injective() {
        return Err(Error::Internal("coradical filtration does not exhaust E".into()));
    }
    Ok(report)
}
