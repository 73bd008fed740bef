use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{apply_tensor, quotient, Matrix, Subspace};
use crate::report::VerificationReport;

use super::dual::DualAlgebra;

/// A finite-dimensional coalgebra. `delta` is the `dim² × dim` matrix of Δ in
/// the tensor indexing `(i, j) ↦ i * dim + j`; `epsilon` is `1 × dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra {
    field: Field,
    dim: usize,
    delta: Matrix,
    epsilon: Matrix,
    labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Coassociativity,
    LeftCounit,
    RightCounit,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Coassociativity => "coassociativity",
            Law::LeftCounit => "left counit",
            Law::RightCounit => "right counit",
        })
    }
}

/// First basis element at which a coalgebra law fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: Law,
    pub index: usize,
}

impl Coalgebra {
    /// Builds a coalgebra, rejecting data that violates coassociativity or
    /// the counit laws.
    pub fn new(field: Field, delta: Matrix, epsilon: Matrix, labels: Vec<String>) -> Result<Coalgebra> {
        let c = Coalgebra::from_parts_unchecked(field, delta, epsilon, labels)?;
        if let Some(v) = c.first_violation() {
            return Err(Error::InvalidCoalgebra(format!(
                "{} fails at basis element {} ({})",
                v.law, v.index, c.labels[v.index]
            )));
        }
        Ok(c)
    }

    /// Shape-checked only; the axioms may fail.
    pub fn from_parts_unchecked(
        field: Field,
        delta: Matrix,
        epsilon: Matrix,
        labels: Vec<String>,
    ) -> Result<Coalgebra> {
        let dim = delta.cols();
        if delta.rows() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "comultiplication must be {}x{dim}, got {}x{}",
                dim * dim,
                delta.rows(),
                delta.cols()
            )));
        }
        if epsilon.rows() != 1 || epsilon.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "counit must be 1x{dim}, got {}x{}",
                epsilon.rows(),
                epsilon.cols()
            )));
        }
        if labels.len() != dim {
            return Err(Error::DimensionMismatch(format!("{} labels for dimension {dim}", labels.len())));
        }
        for m in [&delta, &epsilon] {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
        }
        Ok(Coalgebra { field, dim, delta, epsilon, labels })
    }

    /// Builds from sparse structure constants `Δ(c_k) = Σ coeff · c_i ⊗ c_j`.
    pub fn from_terms(
        field: Field,
        labels: Vec<String>,
        terms: &[Vec<(usize, usize, Scalar)>],
        epsilon: Vec<Scalar>,
    ) -> Result<Coalgebra> {
        let dim = labels.len();
        let mut delta = Matrix::zeros(field, dim * dim, dim);
        for (k, ts) in terms.iter().enumerate() {
            for (i, j, s) in ts {
                let row = i * dim + j;
                let v = delta.get(row, k) + s;
                delta.set(row, k, v);
            }
        }
        let epsilon = Matrix::new(field, 1, dim, epsilon)?;
        Coalgebra::new(field, delta, epsilon, labels)
    }

    /// The zero coalgebra.
    pub fn zero(field: Field) -> Coalgebra {
        Coalgebra {
            field,
            dim: 0,
            delta: Matrix::zeros(field, 0, 0),
            epsilon: Matrix::zeros(field, 1, 0),
            labels: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &Matrix {
        &self.epsilon
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Coalgebra> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch(format!("{} labels for dimension {}", labels.len(), self.dim)));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    pub fn identity_map(&self) -> Matrix {
        Matrix::identity(self.field, self.dim)
    }

    /// Nonzero terms `(i, j, coeff)` of `Δ(c_k)`, in ascending `(i, j)`.
    pub fn delta_terms(&self, k: usize) -> Vec<(usize, usize, Scalar)> {
        (0..self.dim * self.dim)
            .filter_map(|row| {
                let v = self.delta.get(row, k);
                (!v.is_zero()).then(|| (row / self.dim, row % self.dim, v.clone()))
            })
            .collect()
    }

    pub fn first_violation(&self) -> Option<AxiomViolation> {
        let id = self.identity_map();
        let left = apply_tensor(&self.delta, &id, &self.delta);
        let right = apply_tensor(&id, &self.delta, &self.delta);
        let counit_left = apply_tensor(&self.epsilon, &id, &self.delta);
        let counit_right = apply_tensor(&id, &self.epsilon, &self.delta);
        let first_bad = |a: &Matrix, b: &Matrix| (0..self.dim).find(|&k| a.column(k) != b.column(k));
        if let Some(index) = first_bad(&left, &right) {
            return Some(AxiomViolation { law: Law::Coassociativity, index });
        }
        if let Some(index) = first_bad(&counit_left, &id) {
            return Some(AxiomViolation { law: Law::LeftCounit, index });
        }
        if let Some(index) = first_bad(&counit_right, &id) {
            return Some(AxiomViolation { law: Law::RightCounit, index });
        }
        None
    }

    /// Exact check of coassociativity and both counit identities.
    pub fn check_axioms(&self) -> VerificationReport {
        let id = self.identity_map();
        let mut report = VerificationReport::new();
        let mut law = |name: Law, a: Matrix, b: &Matrix| {
            match (0..self.dim).find(|&k| a.column(k) != b.column(k)) {
                None => report.pass(name.to_string()),
                Some(k) => report.fail(
                    name.to_string(),
                    format!("first violation at basis index {k} ({})", self.labels[k]),
                ),
            }
        };
        law(
            Law::Coassociativity,
            apply_tensor(&self.delta, &id, &self.delta),
            &apply_tensor(&id, &self.delta, &self.delta),
        );
        law(Law::LeftCounit, apply_tensor(&self.epsilon, &id, &self.delta), &id);
        law(Law::RightCounit, apply_tensor(&id, &self.epsilon, &self.delta), &id);
        report
    }

    pub fn dual_algebra(&self) -> DualAlgebra {
        DualAlgebra::of(self)
    }

    fn check_subspace(&self, x: &Subspace) -> Result<()> {
        if x.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch(x.ambient_dim(), self.dim));
        }
        if x.field() != self.field {
            return Err(Error::FieldMismatch(self.field, x.field()));
        }
        Ok(())
    }
}

/// A linear map intertwining comultiplications and counits. Construction
/// verifies both identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: Coalgebra,
    target: Coalgebra,
    matrix: Matrix,
}

impl CoalgebraMorphism {
    pub fn new(source: Coalgebra, target: Coalgebra, matrix: Matrix) -> Result<CoalgebraMorphism> {
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim,
                source.dim
            )));
        }
        if matrix.field() != source.field || target.field != source.field {
            return Err(Error::FieldMismatch(source.field, target.field));
        }
        let lhs = apply_tensor(&matrix, &matrix, &source.delta);
        let rhs = target.delta.mul(&matrix);
        if lhs != rhs {
            let k = (0..source.dim).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
            return Err(Error::InvalidMorphism(format!(
                "(f⊗f)∘Δ ≠ Δ∘f at source basis element {k}"
            )));
        }
        if target.epsilon.mul(&matrix) != source.epsilon {
            return Err(Error::InvalidMorphism("ε∘f ≠ ε".into()));
        }
        Ok(CoalgebraMorphism { source, target, matrix })
    }

    pub fn identity(c: &Coalgebra) -> CoalgebraMorphism {
        CoalgebraMorphism {
            source: c.clone(),
            target: c.clone(),
            matrix: c.identity_map(),
        }
    }

    pub fn source(&self) -> &Coalgebra {
        &self.source
    }

    pub fn target(&self) -> &Coalgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CoalgebraMorphism) -> Result<CoalgebraMorphism> {
        if next.source != self.target {
            return Err(Error::Precondition("morphisms are not composable".into()));
        }
        CoalgebraMorphism::new(self.source.clone(), next.target.clone(), next.matrix.mul(&self.matrix))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn kernel(&self) -> Subspace {
        crate::linalg::kernel(&self.matrix)
    }
}

/// `Δ(X) ⊆ X ⊗ X`, tested as `(p⊗id)ΔX = 0 = (id⊗p)ΔX` and cross-checked
/// against `X^⊥` being a two-sided ideal of the dual algebra.
pub fn is_subcoalgebra(c: &Coalgebra, x: &Subspace) -> Result<bool> {
    c.check_subspace(x)?;
    let q = quotient(x);
    let image = c.delta.mul(x.basis());
    let id = c.identity_map();
    let direct = apply_tensor(q.projection(), &id, &image).is_zero()
        && apply_tensor(&id, q.projection(), &image).is_zero();
    let dual = c.dual_algebra().is_ideal(&x.perp());
    if direct != dual {
        return Err(Error::Internal(format!(
            "subcoalgebra test disagrees with dual ideal test (direct {direct}, dual {dual})"
        )));
    }
    Ok(direct)
}

/// `Δ(I) ⊆ I⊗E + E⊗I` and `ε(I) = 0`, cross-checked against `I^⊥` being a
/// unital subalgebra of the dual.
pub fn is_coideal(c: &Coalgebra, i: &Subspace) -> Result<bool> {
    c.check_subspace(i)?;
    let q = quotient(i);
    let image = c.delta.mul(i.basis());
    let direct = apply_tensor(q.projection(), q.projection(), &image).is_zero()
        && c.epsilon.mul(i.basis()).is_zero();
    let dual = c.dual_algebra().is_subalgebra(&i.perp());
    if direct != dual {
        return Err(Error::Internal(format!(
            "coideal test disagrees with dual subalgebra test (direct {direct}, dual {dual})"
        )));
    }
    Ok(direct)
}

/// `E / I` with the induced structure and the projection as a coalgebra morphism.
pub fn quotient_coalgebra(c: &Coalgebra, i: &Subspace) -> Result<(Coalgebra, CoalgebraMorphism)> {
    if !is_coideal(c, i)? {
        return Err(Error::NotACoideal);
    }
    let q = quotient(i);
    let p = q.projection();
    let s = q.section();
    let delta = apply_tensor(p, p, &c.delta.mul(s));
    let epsilon = c.epsilon.mul(s);
    let labels = q.complement().iter().map(|&k| format!("[{}]", c.labels[k])).collect();
    let qc = Coalgebra::new(c.field, delta, epsilon, labels)
        .map_err(|e| Error::Internal(format!("quotient structure: {e}")))?;
    let proj = CoalgebraMorphism::new(c.clone(), qc.clone(), p.clone())?;
    Ok((qc, proj))
}

/// The subcoalgebra `X` with its own structure and the inclusion morphism.
pub fn restrict_coalgebra(c: &Coalgebra, x: &Subspace) -> Result<(Coalgebra, CoalgebraMorphism)> {
    if !is_subcoalgebra(c, x)? {
        return Err(Error::NotASubcoalgebra);
    }
    let b = x.basis();
    let n = c.dim;
    // X⊗X has canonical pivots (p_a, p_b); read Δ's coordinates off them.
    let rows: Vec<usize> = x
        .pivots()
        .iter()
        .flat_map(|&a| x.pivots().iter().map(move |&b| a * n + b))
        .collect();
    let image = c.delta.mul(b);
    let delta = image.select_rows(&rows);
    if apply_tensor(b, b, &delta) != image {
        return Err(Error::Internal("Δ(X) does not factor through X⊗X".into()));
    }
    let epsilon = c.epsilon.mul(b);
    let sub = Coalgebra::new(c.field, delta, epsilon, restricted_labels(c, x))
        .map_err(|e| Error::Internal(format!("restricted structure: {e}")))?;
    let inclusion = CoalgebraMorphism::new(sub.clone(), c.clone(), b.clone())?;
    Ok((sub, inclusion))
}

fn restricted_labels(c: &Coalgebra, x: &Subspace) -> Vec<String> {
    let b = x.basis();
    let unit_label = |k: usize| {
        let col = b.column(k);
        let mut nz = col.iter().enumerate().filter(|(_, v)| !v.is_zero());
        match (nz.next(), nz.next()) {
            (Some((i, v)), None) if v.is_one() => Some(c.labels[i].clone()),
            _ => None,
        }
    };
    let labels: Vec<Option<String>> = (0..x.dim()).map(unit_label).collect();
    if labels.iter().all(Option::is_some) {
        labels.into_iter().flatten().collect()
    } else {
        (0..x.dim()).map(|k| format!("v{k}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{divided_power, grouplike, matrix_coalgebra};

    const Q: Field = Field::Rationals;

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::coordinate(Q, n, idx)
    }

    #[test]
    fn axioms_of_builtins() {
        assert!(divided_power(Q, 2).check_axioms().passed());
        assert!(grouplike(Q, 3).check_axioms().passed());
        assert!(matrix_coalgebra(Q, 2).check_axioms().passed());
    }

    #[test]
    fn perturbed_delta_fails_with_index() {
        let c = divided_power(Q, 2);
        let mut delta = c.delta().clone();
        // Δ(c2) gets an extra c1⊗c2; the c1⊗c1⊗c2 coefficient then differs
        let row = 3 + 2;
        let v = delta.get(row, 2) + &Q.one();
        delta.set(row, 2, v);
        let bad = Coalgebra::from_parts_unchecked(Q, delta.clone(), c.epsilon().clone(), c.labels().to_vec()).unwrap();
        assert_ne!(expand_twice(&bad, 2, true), expand_twice(&bad, 2, false));
        for k in 0..2 {
            assert_eq!(expand_twice(&bad, k, true), expand_twice(&bad, k, false));
        }
        assert_eq!(
            bad.first_violation(),
            Some(AxiomViolation { law: Law::Coassociativity, index: 2 })
        );
        let report = bad.check_axioms();
        assert!(!report.passed());
        assert_eq!(report.checks[0].name, "coassociativity");
        assert!(report.checks[0].detail.as_deref().unwrap().contains("index 2"));
        assert!(matches!(
            Coalgebra::new(Q, delta, c.epsilon().clone(), c.labels().to_vec()),
            Err(Error::InvalidCoalgebra(msg)) if msg.contains("coassociativity")
        ));
    }

    /// Coefficients of `(Δ⊗id)Δ(c_k)` (left) or `(id⊗Δ)Δ(c_k)`, expanded from the term lists.
    fn expand_twice(c: &Coalgebra, k: usize, left: bool) -> std::collections::BTreeMap<(usize, usize, usize), Scalar> {
        let mut out = std::collections::BTreeMap::new();
        for (i, j, a) in c.delta_terms(k) {
            let inner = if left { i } else { j };
            for (x, y, b) in c.delta_terms(inner) {
                let key = if left { (x, y, j) } else { (i, x, y) };
                let e = out.entry(key).or_insert_with(|| Q.zero());
                *e = &*e + &(&a * &b);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    #[test]
    fn subcoalgebra_examples() {
        let c = divided_power(Q, 2);
        assert!(is_subcoalgebra(&c, &c.full_space()).unwrap());
        assert!(is_subcoalgebra(&c, &c.zero_space()).unwrap());
        assert!(is_subcoalgebra(&c, &span(3, &[0])).unwrap());
        assert!(!is_subcoalgebra(&c, &span(3, &[0, 2])).unwrap());
        assert_eq!(is_subcoalgebra(&c, &span(2, &[0])), Err(Error::AmbientMismatch(2, 3)));
    }

    #[test]
    fn coideal_examples() {
        let c = divided_power(Q, 2);
        assert!(is_coideal(&c, &c.zero_space()).unwrap());
        assert!(is_coideal(&c, &span(3, &[1])).unwrap());
        assert!(!is_coideal(&c, &span(3, &[0])).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let c = divided_power(Q, 2);
        let (q, p) = quotient_coalgebra(&c, &c.zero_space()).unwrap();
        assert_eq!(q.delta(), c.delta());
        assert_eq!(*p.matrix(), c.identity_map());

        let (q, _) = quotient_coalgebra(&c, &span(3, &[1])).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.labels(), &["[c0]", "[c2]"]);
        // Δ([c2]) = [c0]⊗[c2] + [c2]⊗[c0]
        assert_eq!(q.delta_terms(1), vec![(0, 1, Q.one()), (1, 0, Q.one())]);
        assert_eq!(q.delta_terms(0), vec![(0, 0, Q.one())]);

        assert_eq!(quotient_coalgebra(&c, &span(3, &[0])), Err(Error::NotACoideal));
    }

    #[test]
    fn restriction_examples() {
        let c = divided_power(Q, 2);
        let (full, inc) = restrict_coalgebra(&c, &c.full_space()).unwrap();
        assert_eq!(full, c);
        assert_eq!(*inc.matrix(), c.identity_map());

        let (g, _) = restrict_coalgebra(&divided_power(Q, 4), &span(5, &[0])).unwrap();
        assert_eq!(g.delta(), grouplike(Q, 1).delta());
        assert_eq!(g.epsilon(), grouplike(Q, 1).epsilon());

        let (d1, _) = restrict_coalgebra(&c, &span(3, &[0, 1])).unwrap();
        assert_eq!(d1, divided_power(Q, 1));

        assert_eq!(restrict_coalgebra(&c, &span(3, &[0, 2])), Err(Error::NotASubcoalgebra));
    }

    #[test]
    fn morphism_checks() {
        let c = divided_power(Q, 2);
        let mut bad = c.identity_map();
        bad.set(2, 2, Q.from_i64(2));
        assert!(matches!(
            CoalgebraMorphism::new(c.clone(), c.clone(), bad),
            Err(Error::InvalidMorphism(_))
        ));
        // c_m ↦ 2^m c_m is an automorphism
        let mut scale = c.identity_map();
        scale.set(1, 1, Q.from_i64(2));
        scale.set(2, 2, Q.from_i64(4));
        let f = CoalgebraMorphism::new(c.clone(), c.clone(), scale).unwrap();
        assert!(f.is_injective());
        assert!(f.then(&f).is_ok());
    }

    #[test]
    fn zero_coalgebra() {
        let z = Coalgebra::zero(Q);
        assert!(z.check_axioms().passed());
        let c = grouplike(Q, 2);
        let (r, inc) = restrict_coalgebra(&c, &c.zero_space()).unwrap();
        assert_eq!(r.dim(), 0);
        assert_eq!(inc.matrix().rows(), 2);
    }
}
