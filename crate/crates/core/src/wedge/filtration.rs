use crate::coalgebra::{is_subcoalgebra, restrict_coalgebra, Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{
    factor_through_kernel, factor_through_mono, induced_quotient_map, kronecker, quotient, Matrix, Subspace,
};
use crate::report::VerificationReport;

use super::power::WedgePowerStrategy;
use super::{alpha, apply_tensor, wedge, wedge_map, SizeCap};

/// The chain `0 = D^{∧0} ⊆ D ⊆ D^{∧2} ⊆ …` of a subcoalgebra `D ⊆ E`, up to
/// the first index where it stabilizes, with the connecting maps `ξᵢʲ`.
///
/// Stages past `stabilization_index` equal the colimit; the accessors clamp
/// indices accordingly.
#[derive(Debug, Clone)]
pub struct WedgeFiltration {
    ambient: Coalgebra,
    base: Subspace,
    stages: Vec<Subspace>,
    stage_coalgebras: Vec<Coalgebra>,
    inclusions: Vec<CoalgebraMorphism>,
    xi: Vec<Vec<CoalgebraMorphism>>,
    stabilization_index: usize,
}

/// `τ_n` and the intermediate `β_n`, with the maps they factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tau {
    pub n: usize,
    /// `D^{n+1} → D^n/D ⊗ D^n/D`.
    pub tau: Matrix,
    /// `D^{n+1} → D^{n+1}/D ⊗ D^n/D`.
    pub beta: Matrix,
    /// `α_D^{D^{n+1}}`.
    pub alpha: Matrix,
    /// `ξ_n^{n+1}/D : D^n/D → D^{n+1}/D`.
    pub xi_bar: Matrix,
}

/// Filtration computed by the recursive wedge `D^{∧(n+1)} = D ∧ D^{∧n}`.
pub fn build_filtration(c: &Coalgebra, d: &Subspace) -> Result<WedgeFiltration> {
    if !is_subcoalgebra(c, d)? {
        return Err(Error::NotASubcoalgebra);
    }
    let mut stages = vec![c.zero_space()];
    loop {
        let next = wedge(c, d, stages.last().expect("nonempty"))?;
        if next == *stages.last().expect("nonempty") {
            break;
        }
        stages.push(next);
        if stages.len() > c.dim() + 2 {
            return Err(Error::Internal("wedge filtration failed to stabilize".into()));
        }
    }
    WedgeFiltration::assemble(c, d, stages)
}

/// Filtration whose stages come from the given strategy.
pub fn build_filtration_with(
    c: &Coalgebra,
    d: &Subspace,
    strategy: &dyn WedgePowerStrategy,
    cap: SizeCap,
) -> Result<WedgeFiltration> {
    if !is_subcoalgebra(c, d)? {
        return Err(Error::NotASubcoalgebra);
    }
    let mut stages = vec![strategy.wedge_power(c, d, 0, cap)?];
    loop {
        let next = strategy.wedge_power(c, d, stages.len(), cap)?;
        if next == *stages.last().expect("nonempty") {
            break;
        }
        stages.push(next);
        if stages.len() > c.dim() + 2 {
            return Err(Error::Internal("wedge filtration failed to stabilize".into()));
        }
    }
    WedgeFiltration::assemble(c, d, stages)
}

impl WedgeFiltration {
    fn assemble(c: &Coalgebra, d: &Subspace, stages: Vec<Subspace>) -> Result<WedgeFiltration> {
        let s = stages.len() - 1;
        if s > c.dim() + 1 {
            return Err(Error::Internal(format!("stabilization index {s} exceeds dim(E) + 1")));
        }
        let mut stage_coalgebras = Vec::with_capacity(stages.len());
        let mut inclusions = Vec::with_capacity(stages.len());
        for stage in &stages {
            let (sub, incl) = restrict_coalgebra(c, stage).map_err(|e| match e {
                Error::NotASubcoalgebra => Error::Internal("a wedge power is not a subcoalgebra".into()),
                other => other,
            })?;
            stage_coalgebras.push(sub);
            inclusions.push(incl);
        }
        // ξ_i^j = id_D ∧ ξ_{i-1}^{j-1}, from D^i = D ∧ D^{i-1}; ξ_0^j = 0.
        let id_e = CoalgebraMorphism::identity(c);
        let id_d = Matrix::identity(c.field(), d.dim());
        let mut raw: Vec<Vec<Matrix>> = Vec::with_capacity(stages.len());
        for i in 0..=s {
            let mut row = Vec::with_capacity(s + 1 - i);
            for j in i..=s {
                let m = if i == 0 {
                    Matrix::zeros(c.field(), stages[j].dim(), 0)
                } else {
                    let prev = &raw[i - 1][j - i];
                    induced_on_wedges(&id_e, &id_d, prev, (d, &stages[i - 1], &stages[i]), (d, &stages[j - 1], &stages[j]))?
                };
                row.push(m);
            }
            raw.push(row);
        }
        let mut xi = Vec::with_capacity(raw.len());
        for (i, row) in raw.into_iter().enumerate() {
            let mut morphisms = Vec::with_capacity(row.len());
            for (k, m) in row.into_iter().enumerate() {
                let j = i + k;
                let f = CoalgebraMorphism::new(stage_coalgebras[i].clone(), stage_coalgebras[j].clone(), m)
                    .map_err(|e| Error::Internal(format!("ξ_{i}^{j} is not a coalgebra map: {e}")))?;
                morphisms.push(f);
            }
            xi.push(morphisms);
        }
        Ok(WedgeFiltration {
            ambient: c.clone(),
            base: d.clone(),
            stages,
            stage_coalgebras,
            inclusions,
            xi,
            stabilization_index: s,
        })
    }

    pub fn ambient(&self) -> &Coalgebra {
        &self.ambient
    }

    pub fn base(&self) -> &Subspace {
        &self.base
    }

    /// Stages `0..=stabilization_index`.
    pub fn stages(&self) -> &[Subspace] {
        &self.stages
    }

    /// Smallest `n` with `D^{∧n} = D^{∧(n+1)}`.
    pub fn stabilization_index(&self) -> usize {
        self.stabilization_index
    }

    fn clamp(&self, n: usize) -> usize {
        n.min(self.stabilization_index)
    }

    /// `D^{∧n}` for any `n`.
    pub fn stage(&self, n: usize) -> &Subspace {
        &self.stages[self.clamp(n)]
    }

    pub fn stage_coalgebra(&self, n: usize) -> &Coalgebra {
        &self.stage_coalgebras[self.clamp(n)]
    }

    /// `δ_n : D^{∧n} → E`.
    pub fn delta_n(&self, n: usize) -> &CoalgebraMorphism {
        &self.inclusions[self.clamp(n)]
    }

    /// `ξᵢʲ : D^{∧i} → D^{∧j}` for `i ≤ j`.
    pub fn xi(&self, i: usize, j: usize) -> &CoalgebraMorphism {
        assert!(i <= j, "ξ_i^j needs i <= j");
        let (i, j) = (self.clamp(i), self.clamp(j));
        &self.xi[i][j - i]
    }

    /// `D̃_E`.
    pub fn colimit(&self) -> &Subspace {
        &self.stages[self.stabilization_index]
    }

    /// `δ̃ : D̃_E → E`.
    pub fn tilde_delta(&self) -> &CoalgebraMorphism {
        &self.inclusions[self.stabilization_index]
    }

    pub fn exhausts(&self) -> bool {
        self.colimit().is_full()
    }

    /// `δ_j ∘ ξᵢʲ = δᵢ` for all `i ≤ j ≤ stabilization_index + 1`.
    pub fn check_compatibility(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let top = self.stabilization_index + 1;
        let mut bad = Vec::new();
        for i in 0..=top {
            for j in i..=top {
                let lhs = self.delta_n(j).matrix().mul(self.xi(i, j).matrix());
                if lhs != *self.delta_n(i).matrix() {
                    bad.push((i, j));
                }
            }
        }
        if bad.is_empty() {
            report.pass("δ_j ξ_i^j = δ_i");
        } else {
            report.fail("δ_j ξ_i^j = δ_i", format!("fails for (i, j) in {bad:?}"));
        }
        let increasing = self.stages.windows(2).all(|w| w[0].le(&w[1]).unwrap_or(false));
        report.record("stages increasing", increasing, None);
        report
    }

    /// `D^{∧m} ∧_E D^{∧n} = D^{∧(m+n)}`.
    pub fn check_additivity(&self, m: usize, n: usize) -> Result<VerificationReport> {
        let w = wedge(&self.ambient, self.stage(m), self.stage(n))?;
        let mut report = VerificationReport::new();
        let name = format!("D^{m} ∧ D^{n} = D^{}", m + n);
        if w == *self.stage(m + n) {
            report.pass(name);
        } else {
            report.fail(name, format!("wedge has dim {}, stage has dim {}", w.dim(), self.stage(m + n).dim()));
        }
        Ok(report)
    }

    /// `τ_n` with `(ξ/D ⊗ ξ/D) ∘ τ_n = α_D^{D^{n+1}}`, through
    /// `(D^{n+1}/D ⊗ ξ/D) ∘ β_n = α_D^{D^{n+1}}` and `(ξ/D ⊗ D^n/D) ∘ τ_n = β_n`.
    pub fn compute_tau(&self, n: usize) -> Result<Tau> {
        if n == 0 {
            return Err(Error::Precondition("τ_n needs n >= 1".into()));
        }
        let field = self.ambient.field();
        let top = self.stage_coalgebra(n + 1);
        let d_top = Subspace::span(self.xi(1, n + 1).matrix());
        let d_low = Subspace::span(self.xi(1, n).matrix());
        let q_top = quotient(&d_top);
        let q_low = quotient(&d_low);
        let alpha_top = alpha(top, &d_top)?;
        let xi_bar = induced_quotient_map(self.xi(n, n + 1).matrix(), &q_low, &q_top)
            .map_err(|e| sentinel("ξ/D", e))?;
        let beta_cmp = kronecker(&Matrix::identity(field, q_top.dim()), &xi_bar);
        let beta = factor_through_mono(&alpha_top, &beta_cmp).map_err(|e| sentinel("β_n", e))?;
        let tau_cmp = kronecker(&xi_bar, &Matrix::identity(field, q_low.dim()));
        let tau = factor_through_mono(&beta, &tau_cmp).map_err(|e| sentinel("τ_n", e))?;
        if !kronecker(&xi_bar, &xi_bar).is_injective() || apply_tensor(&xi_bar, &xi_bar, &tau) != alpha_top {
            return Err(Error::Factorization("τ_n fails (ξ/D ⊗ ξ/D) ∘ τ_n = α".into()));
        }
        Ok(Tau { n, tau, beta, alpha: alpha_top, xi_bar })
    }
}

fn sentinel(what: &str, e: Error) -> Error {
    match e {
        Error::Factorization(msg) | Error::Precondition(msg) => {
            Error::Factorization(format!("{what}: {msg}"))
        }
        other => other,
    }
}

/// `x ∧_e y` between already-computed wedges `w1 = x1 ∧ y1`, `w2 = x2 ∧ y2`.
fn induced_on_wedges(
    e: &CoalgebraMorphism,
    x: &Matrix,
    y: &Matrix,
    from: (&Subspace, &Subspace, &Subspace),
    to: (&Subspace, &Subspace, &Subspace),
) -> Result<Matrix> {
    let (x1, y1, w1) = from;
    let (x2, y2, w2) = to;
    if e.matrix().mul(x1.basis()) != x2.basis().mul(x) || e.matrix().mul(y1.basis()) != y2.basis().mul(y) {
        return Err(Error::Factorization("a premise square does not commute".into()));
    }
    let h2 = wedge_map(e.target(), x2, y2)?;
    let (k, u) = factor_through_kernel(&e.matrix().mul(w1.basis()), &h2)?;
    if k != *w2 {
        return Err(Error::Internal("precomputed wedge differs from the kernel".into()));
    }
    Ok(u)
}
