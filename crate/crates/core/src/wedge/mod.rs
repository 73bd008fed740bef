//! Wedge products `X ∧_E Y = ker((p_X ⊗ p_Y) ∘ Δ_E)`, iterated
//! comultiplication, wedge powers and the wedge filtration of a subcoalgebra.

mod filtration;
mod power;

pub use filtration::{build_filtration, build_filtration_with, Tau, WedgeFiltration};
pub use power::{strategy, strategy_names, DirectWedgePower, RecursiveWedgePower, WedgePowerStrategy};

use crate::coalgebra::{Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{apply_tensor, factor_through_kernel, induced_quotient_map, kronecker, quotient, Matrix, Subspace};
use crate::report::VerificationReport;

/// Default bound on the number of coordinates of an explicit tensor power.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

/// Environment variable overriding [`DEFAULT_SIZE_CAP`].
pub const SIZE_CAP_ENV: &str = "WEDGEKIT_SIZE_CAP";

/// Bound on explicit tensor-power sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCap(pub usize);

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap(DEFAULT_SIZE_CAP)
    }
}

impl SizeCap {
    /// `WEDGEKIT_SIZE_CAP` if set and numeric, else the default.
    pub fn from_env() -> SizeCap {
        std::env::var(SIZE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(SizeCap)
            .unwrap_or_default()
    }

    fn check(self, base: usize, exp: usize) -> Result<usize> {
        match base.checked_pow(exp as u32) {
            Some(n) if n <= self.0 => Ok(n),
            Some(n) => Err(Error::SizeCapExceeded { needed: n, cap: self.0 }),
            None => Err(Error::SizeCapExceeded { needed: usize::MAX, cap: self.0 }),
        }
    }
}

/// `f^{⊗n}`, with `f^{⊗0}` the identity of the one-dimensional unit object.
pub fn tensor_power(f: &Matrix, n: usize, cap: SizeCap) -> Result<Matrix> {
    cap.check(f.rows().max(f.cols()), n)?;
    let mut acc = Matrix::identity(f.field(), 1);
    for _ in 0..n {
        acc = kronecker(&acc, f);
    }
    Ok(acc)
}

/// `Δ^n : C → C^{⊗(n+1)}`, computed as `(Δ^{n-1} ⊗ id) ∘ Δ`.
pub fn iterated_delta(c: &Coalgebra, n: usize, cap: SizeCap) -> Result<Matrix> {
    cap.check(c.dim(), n + 1)?;
    let id = c.identity_map();
    let mut acc = id.clone();
    for _ in 0..n {
        acc = apply_tensor(&acc, &id, c.delta());
    }
    Ok(acc)
}

/// `Δ^n` computed as `(id ⊗ Δ^{n-1}) ∘ Δ`; agrees with [`iterated_delta`]
/// by coassociativity.
pub fn iterated_delta_right(c: &Coalgebra, n: usize, cap: SizeCap) -> Result<Matrix> {
    cap.check(c.dim(), n + 1)?;
    let id = c.identity_map();
    let mut acc = id.clone();
    for _ in 0..n {
        acc = apply_tensor(&id, &acc, c.delta());
    }
    Ok(acc)
}

fn check_ambient(c: &Coalgebra, x: &Subspace) -> Result<()> {
    if x.ambient_dim() != c.dim() {
        return Err(Error::AmbientMismatch(x.ambient_dim(), c.dim()));
    }
    if x.field() != c.field() {
        return Err(Error::FieldMismatch(c.field(), x.field()));
    }
    Ok(())
}

/// `(p_X ⊗ p_Y) ∘ Δ_E`, the map whose kernel is `X ∧_E Y`.
pub fn wedge_map(c: &Coalgebra, x: &Subspace, y: &Subspace) -> Result<Matrix> {
    check_ambient(c, x)?;
    check_ambient(c, y)?;
    let px = quotient(x);
    let py = quotient(y);
    Ok(apply_tensor(px.projection(), py.projection(), c.delta()))
}

/// `α_X^E = (p_X ⊗ p_X) ∘ Δ_E : E → E/X ⊗ E/X`.
pub fn alpha(c: &Coalgebra, x: &Subspace) -> Result<Matrix> {
    wedge_map(c, x, x)
}

/// `X ∧_E Y`.
pub fn wedge(c: &Coalgebra, x: &Subspace, y: &Subspace) -> Result<Subspace> {
    Ok(crate::linalg::kernel(&wedge_map(c, x, y)?))
}

/// The induced map `x ∧_e y` together with its source and target wedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedWedge {
    pub source: Subspace,
    pub target: Subspace,
    pub map: Matrix,
}

/// `x ∧_e y : X₁ ∧_{E₁} Y₁ → X₂ ∧_{E₂} Y₂`, the unique map with
/// `i_{X₂∧Y₂} ∘ (x ∧_e y) = e ∘ i_{X₁∧Y₁}`. `x` and `y` are given in the
/// canonical coordinates of the subspaces.
pub fn wedge_induced(
    x: &Matrix,
    y: &Matrix,
    e: &CoalgebraMorphism,
    from: (&Subspace, &Subspace),
    to: (&Subspace, &Subspace),
) -> Result<InducedWedge> {
    let (x1, y1) = from;
    let (x2, y2) = to;
    check_square(e, x1, x2, x, "x")?;
    check_square(e, y1, y2, y, "y")?;
    let source = wedge(e.source(), x1, y1)?;
    let h2 = wedge_map(e.target(), x2, y2)?;
    let (target, map) = factor_through_kernel(&e.matrix().mul(source.basis()), &h2)?;
    if target.basis().mul(&map) != e.matrix().mul(source.basis()) {
        return Err(Error::Internal("induced wedge map fails its defining identity".into()));
    }
    Ok(InducedWedge { source, target, map })
}

fn check_square(e: &CoalgebraMorphism, s1: &Subspace, s2: &Subspace, m: &Matrix, name: &str) -> Result<()> {
    check_ambient(e.source(), s1)?;
    check_ambient(e.target(), s2)?;
    if m.cols() != s1.dim() || m.rows() != s2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{name} is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            s2.dim(),
            s1.dim()
        )));
    }
    if e.matrix().mul(s1.basis()) != s2.basis().mul(m) {
        return Err(Error::Factorization(format!("the square for {name} does not commute")));
    }
    Ok(())
}

/// Checks `(f/D ⊗ f/D) ∘ α_D^E = α_D^C ∘ f` for `δ : D → E` and `f : E → C`
/// with `δ` and `f∘δ` injective.
pub fn check_alpha_square(delta: &CoalgebraMorphism, f: &CoalgebraMorphism) -> Result<VerificationReport> {
    if delta.target() != f.source() {
        return Err(Error::Precondition("δ and f are not composable".into()));
    }
    if !delta.is_injective() {
        return Err(Error::Precondition("δ is not injective".into()));
    }
    let fd = f.matrix().mul(delta.matrix());
    if !fd.is_injective() {
        return Err(Error::Precondition("f∘δ is not injective".into()));
    }
    let e = f.source();
    let c = f.target();
    let d_in_e = Subspace::span(delta.matrix());
    let d_in_c = Subspace::span(&fd);
    let f_bar = induced_quotient_map(f.matrix(), &quotient(&d_in_e), &quotient(&d_in_c))?;
    let lhs = apply_tensor(&f_bar, &f_bar, &alpha(e, &d_in_e)?);
    let rhs = alpha(c, &d_in_c)?.mul(f.matrix());
    let mut report = VerificationReport::new();
    if lhs == rhs {
        report.pass("alpha square");
    } else {
        report.fail("alpha square", "(f/D ⊗ f/D)∘α_D^E ≠ α_D^C∘f");
    }
    Ok(report)
}
