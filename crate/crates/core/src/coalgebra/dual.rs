use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::report::VerificationReport;

use super::structure::Coalgebra;

/// The dual algebra `C*`: multiplication is `Δᵀ`, the unit is `εᵀ`.
/// Coordinates are taken in the basis dual to the coalgebra's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualAlgebra {
    field: Field,
    dim: usize,
    mult: Matrix,
    unit: Matrix,
}

impl DualAlgebra {
    pub fn of(c: &Coalgebra) -> DualAlgebra {
        DualAlgebra {
            field: c.field(),
            dim: c.dim(),
            mult: c.delta().transpose(),
            unit: c.epsilon().transpose(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `dim × dim²` multiplication matrix.
    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &Matrix {
        &self.unit
    }

    pub fn unit_vector(&self) -> Vec<Scalar> {
        self.unit.column(0)
    }

    pub fn basis_element(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[k] = self.field.one();
        v
    }

    /// `⟨ab, c_m⟩ = Σ Δ[(i,j), m] a_i b_j`.
    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (m, slot) in out.iter_mut().enumerate() {
                    let s = self.mult.get(m, i * n + j);
                    if !s.is_zero() {
                        *slot = &*slot + &(s * &ab);
                    }
                }
            }
        }
        out
    }

    /// Left multiplication `L_a`, whose k-th column is `a · e_k`.
    pub fn left_multiplication(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|k| self.product(a, &self.basis_element(k)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn check_axioms(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        let e: Vec<Vec<Scalar>> = (0..self.dim).map(|k| self.basis_element(k)).collect();
        let mut assoc = None;
        'outer: for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.product(&e[i], &e[j]);
                for k in 0..self.dim {
                    if self.product(&ij, &e[k]) != self.product(&e[i], &self.product(&e[j], &e[k])) {
                        assoc = Some((i, j, k));
                        break 'outer;
                    }
                }
            }
        }
        match assoc {
            None => report.pass("associativity"),
            Some(t) => report.fail("associativity", format!("fails on basis triple {t:?}")),
        }
        let one = self.unit_vector();
        let bad_unit = (0..self.dim)
            .find(|&k| self.product(&one, &e[k]) != e[k] || self.product(&e[k], &one) != e[k]);
        match bad_unit {
            None => report.pass("unit"),
            Some(k) => report.fail("unit", format!("fails on basis element {k}")),
        }
        report
    }

    /// Span of all products `x_i y_j` of basis vectors.
    pub fn product_span(&self, x: &Subspace, y: &Subspace) -> Subspace {
        let xs = x.basis().columns();
        let ys = y.basis().columns();
        let products: Vec<Vec<Scalar>> = xs
            .iter()
            .flat_map(|a| ys.iter().map(move |b| self.product(a, b)))
            .collect();
        Subspace::from_vectors(self.field, self.dim, &products)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains(&self.unit_vector()) && self.product_span(s, s).le(s).unwrap_or(false)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let all = Subspace::full(self.field, self.dim);
        self.product_span(&all, s).le(s).unwrap_or(false) && self.product_span(s, &all).le(s).unwrap_or(false)
    }

    /// Smallest unital subalgebra containing `seed`.
    pub fn subalgebra_closure(&self, seed: &Subspace) -> Subspace {
        let unit = Subspace::from_vectors(self.field, self.dim, &[self.unit_vector()]);
        let mut s = seed.sum(&unit).expect("seed lives in the dual space");
        for _ in 0..=self.dim {
            let next = s.sum(&self.product_span(&s, &s)).expect("same ambient");
            if next == s {
                break;
            }
            s = next;
        }
        s
    }

    /// Smallest two-sided ideal containing `seed`.
    pub fn ideal_closure(&self, seed: &Subspace) -> Subspace {
        let all = Subspace::full(self.field, self.dim);
        let mut s = seed.clone();
        for _ in 0..=self.dim {
            let next = s
                .sum(&self.product_span(&all, &s))
                .and_then(|t| t.sum(&self.product_span(&s, &all)))
                .expect("same ambient");
            if next == s {
                break;
            }
            s = next;
        }
        s
    }
}
