//! Built-in coalgebra families, registered by name.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::sampling::random_nonzero_scalar;

use super::structure::Coalgebra;

/// A parametrized family of coalgebras with known closed forms.
pub trait CoalgebraFamily: Send + Sync {
    fn name(&self) -> &'static str;

    fn min_size(&self) -> usize;

    /// Dimension of the member of the given size.
    fn dim(&self, size: usize) -> usize;

    fn build(&self, field: Field, size: usize) -> Result<Coalgebra>;

    /// Closed-form coradical of the member of the given size.
    fn coradical(&self, field: Field, size: usize) -> Subspace;

    /// A random coalgebra automorphism of the member of the given size.
    fn automorphism(&self, field: Field, size: usize, rng: &mut dyn RngCore) -> Matrix;

    fn check_size(&self, size: usize) -> Result<()> {
        if size < self.min_size() {
            return Err(Error::Precondition(format!(
                "{} needs size >= {}, got {size}",
                self.name(),
                self.min_size()
            )));
        }
        Ok(())
    }
}

/// Basis `c_0..c_n`, `Δ(c_m) = Σ_{i+j=m} c_i ⊗ c_j`, `ε(c_m) = [m = 0]`.
pub struct DividedPower;

/// Basis `g_1..g_n` of group-likes.
pub struct Grouplike;

/// Matrix units `e_ij`, `Δ(e_ij) = Σ_k e_ik ⊗ e_kj`, `ε(e_ij) = [i = j]`.
pub struct MatrixCoalgebra;

impl CoalgebraFamily for DividedPower {
    fn name(&self) -> &'static str {
        "divided-power"
    }

    fn min_size(&self) -> usize {
        0
    }

    fn dim(&self, size: usize) -> usize {
        size + 1
    }

    fn build(&self, field: Field, n: usize) -> Result<Coalgebra> {
        let labels = (0..=n).map(|m| format!("c{m}")).collect();
        let terms: Vec<Vec<(usize, usize, Scalar)>> = (0..=n)
            .map(|m| (0..=m).map(|i| (i, m - i, field.one())).collect())
            .collect();
        let epsilon = (0..=n).map(|m| field.from_i64((m == 0) as i64)).collect();
        Coalgebra::from_terms(field, labels, &terms, epsilon)
    }

    fn coradical(&self, field: Field, n: usize) -> Subspace {
        Subspace::coordinate(field, n + 1, &[0])
    }

    /// `c_m ↦ λ^m c_m`.
    fn automorphism(&self, field: Field, n: usize, rng: &mut dyn RngCore) -> Matrix {
        let lambda = random_nonzero_scalar(field, rng);
        let mut m = Matrix::identity(field, n + 1);
        for k in 0..=n {
            m.set(k, k, lambda.pow(k as u64));
        }
        m
    }
}

impl CoalgebraFamily for Grouplike {
    fn name(&self) -> &'static str {
        "grouplike"
    }

    fn min_size(&self) -> usize {
        1
    }

    fn dim(&self, size: usize) -> usize {
        size
    }

    fn build(&self, field: Field, n: usize) -> Result<Coalgebra> {
        self.check_size(n)?;
        let labels = (1..=n).map(|i| format!("g{i}")).collect();
        let terms: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| vec![(i, i, field.one())]).collect();
        Coalgebra::from_terms(field, labels, &terms, vec![field.one(); n])
    }

    fn coradical(&self, field: Field, n: usize) -> Subspace {
        Subspace::full(field, n)
    }

    /// A permutation of the group-likes.
    fn automorphism(&self, field: Field, n: usize, rng: &mut dyn RngCore) -> Matrix {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut m = Matrix::zeros(field, n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.set(p, i, field.one());
        }
        m
    }
}

impl MatrixCoalgebra {
    fn label(n: usize, i: usize, j: usize) -> String {
        if n <= 10 {
            format!("e{i}{j}")
        } else {
            format!("e{i}_{j}")
        }
    }
}

impl CoalgebraFamily for MatrixCoalgebra {
    fn name(&self) -> &'static str {
        "matrix"
    }

    fn min_size(&self) -> usize {
        1
    }

    fn dim(&self, size: usize) -> usize {
        size * size
    }

    fn build(&self, field: Field, n: usize) -> Result<Coalgebra> {
        self.check_size(n)?;
        let idx = |i: usize, j: usize| i * n + j;
        let mut labels = Vec::with_capacity(n * n);
        let mut terms = Vec::with_capacity(n * n);
        let mut epsilon = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                labels.push(Self::label(n, i, j));
                terms.push((0..n).map(|k| (idx(i, k), idx(k, j), field.one())).collect());
                epsilon.push(field.from_i64((i == j) as i64));
            }
        }
        Coalgebra::from_terms(field, labels, &terms, epsilon)
    }

    fn coradical(&self, field: Field, n: usize) -> Subspace {
        Subspace::full(field, n * n)
    }

    /// `e_ij ↦ (d_i / d_j) e_{σi σj}` for a random permutation σ and diagonal d.
    fn automorphism(&self, field: Field, n: usize, rng: &mut dyn RngCore) -> Matrix {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let d: Vec<Scalar> = (0..n).map(|_| random_nonzero_scalar(field, rng)).collect();
        let mut m = Matrix::zeros(field, n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let coeff = &d[i] * &d[j].inv().expect("nonzero");
                m.set(perm[i] * n + perm[j], i * n + j, coeff);
            }
        }
        m
    }
}

type Registry = BTreeMap<&'static str, Box<dyn CoalgebraFamily>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut map: Registry = BTreeMap::new();
        for fam in [
            Box::new(DividedPower) as Box<dyn CoalgebraFamily>,
            Box::new(Grouplike),
            Box::new(MatrixCoalgebra),
        ] {
            map.insert(fam.name(), fam);
        }
        map
    })
}

/// Looks up a registered family; `matrix-coalgebra` is accepted for `matrix`.
pub fn family(name: &str) -> Option<&'static dyn CoalgebraFamily> {
    let name = match name {
        "matrix-coalgebra" => "matrix",
        "divided_power" => "divided-power",
        other => other,
    };
    registry().get(name).map(|b| b.as_ref())
}

pub fn family_names() -> Vec<&'static str> {
    registry().keys().copied().collect()
}

pub fn divided_power(field: Field, n: usize) -> Coalgebra {
    DividedPower.build(field, n).expect("divided power coalgebra")
}

pub fn grouplike(field: Field, n: usize) -> Coalgebra {
    Grouplike.build(field, n).expect("group-like coalgebra (n >= 1)")
}

pub fn matrix_coalgebra(field: Field, n: usize) -> Coalgebra {
    MatrixCoalgebra.build(field, n).expect("matrix coalgebra (n >= 1)")
}

/// `A ⊕ B` with block comultiplication and concatenated counit. Labels are
/// kept when they do not collide and prefixed with `a.` / `b.` otherwise.
pub fn direct_sum(a: &Coalgebra, b: &Coalgebra) -> Result<Coalgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let collide = a.labels().iter().any(|l| b.labels().contains(l));
    let labels: Vec<String> = if collide {
        a.labels()
            .iter()
            .map(|l| format!("a.{l}"))
            .chain(b.labels().iter().map(|l| format!("b.{l}")))
            .collect()
    } else {
        a.labels().iter().chain(b.labels()).cloned().collect()
    };
    let mut terms: Vec<Vec<(usize, usize, Scalar)>> = (0..na).map(|k| a.delta_terms(k)).collect();
    terms.extend((0..nb).map(|k| {
        b.delta_terms(k)
            .into_iter()
            .map(|(i, j, s)| (i + na, j + na, s))
            .collect()
    }));
    let epsilon = a.epsilon().row(0).iter().chain(b.epsilon().row(0)).cloned().collect();
    Coalgebra::from_terms(field, labels, &terms, epsilon)
}
