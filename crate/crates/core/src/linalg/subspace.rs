use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::matrix::Matrix;

/// A subspace of `field^ambient_dim`, stored by a basis in reduced column
/// echelon form. Equal subspaces have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, ambient_dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Column span of `m`, canonicalized.
    pub fn span(m: &Matrix) -> Subspace {
        let r = m.transpose().rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        Subspace {
            ambient_dim: m.rows(),
            basis: r.matrix.select_rows(&rows).transpose(),
            pivots: r.pivots,
        }
    }

    pub fn from_vectors(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        Subspace::span(&Matrix::from_columns(field, ambient_dim, vectors))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: Field, ambient_dim: usize, indices: &[usize]) -> Subspace {
        let mut m = Matrix::zeros(field, ambient_dim, indices.len());
        for (k, &i) in indices.iter().enumerate() {
            m.set(i, k, field.one());
        }
        Subspace::span(&m)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The inclusion map `i_X`: columns are the canonical basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Ambient coordinates at which the canonical basis has its leading ones.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = self.basis.mul_vec(&coords);
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// True when every column of `m` lies in the subspace.
    pub fn contains_columns(&self, m: &Matrix) -> bool {
        assert_eq!(m.rows(), self.ambient_dim, "column length");
        let coords = m.select_rows(&self.pivots);
        self.basis.mul(&coords) == *m
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    /// Intersection via the kernel of `[i_X | -i_Y]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let field = self.field();
        let minus_y = other.basis.scale(&field.from_i64(-1));
        let k = self.basis.hstack(&minus_y).kernel_basis();
        let xs: Vec<usize> = (0..self.dim()).collect();
        Ok(Subspace::span(&self.basis.mul(&k.select_rows(&xs))))
    }

    pub fn le(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.contains_columns(&self.basis))
    }

    /// Annihilator under the standard pairing, as a subspace of the dual
    /// coordinate space.
    pub fn perp(&self) -> Subspace {
        Subspace::span(&self.basis.transpose().kernel_basis())
    }

    /// Image `m(X)`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Subspace::span(&m.mul(&self.basis))
    }

    /// Preimage `m⁻¹(X)` of this subspace under `m`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        let q = super::quotient(self);
        kernel(&q.projection().mul(m))
    }
}

/// `{v : m v = 0}` as a canonical subspace.
pub fn kernel(m: &Matrix) -> Subspace {
    Subspace::span(&m.kernel_basis())
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn vecq(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(Q, 3)).is_zero());
        assert!(kernel(&Matrix::zeros(Q, 3, 3)).is_full());
        let k = kernel(&Matrix::from_i64_rows(Q, &[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        let v = k.basis().column(0);
        assert_eq!(v, vecq(&[1, -1]));
        assert!(Matrix::from_i64_rows(Q, &[&[1, 1]]).mul_vec(&v).iter().all(Scalar::is_zero));
    }

    #[test]
    fn lattice_examples() {
        let x = Subspace::coordinate(Q, 3, &[0, 1]);
        let y = Subspace::coordinate(Q, 3, &[1, 2]);
        assert_eq!(x.intersect(&y).unwrap(), Subspace::coordinate(Q, 3, &[1]));
        assert_eq!(x.sum(&Subspace::zero(Q, 3)).unwrap(), x);
        assert_eq!(x.intersect(&Subspace::full(Q, 3)).unwrap(), x);
        assert!(x.sum(&y).unwrap().is_full());
        assert_eq!(
            x.sum(&Subspace::zero(Q, 2)),
            Err(Error::AmbientMismatch(3, 2))
        );
    }

    #[test]
    fn perp_example() {
        let x = Subspace::coordinate(Q, 3, &[0, 2]);
        assert_eq!(x.perp(), Subspace::coordinate(Q, 3, &[1]));
        assert!(Subspace::zero(Q, 3).perp().is_full());
        assert!(Subspace::full(Q, 3).perp().is_zero());
    }

    #[test]
    fn canonical_form_is_reduced() {
        let s = Subspace::from_vectors(Q, 3, &[vecq(&[2, 4, 6]), vecq(&[1, 1, 1])]);
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.basis().column(0), vecq(&[1, 0, -1]));
        assert_eq!(s.basis().column(1), vecq(&[0, 1, 2]));
    }

    fn subspace(n: usize, max_k: usize) -> impl Strategy<Value = Subspace> {
        (0..=max_k)
            .prop_flat_map(move |k| prop::collection::vec(prop::collection::vec(-2i64..=2, n), k))
            .prop_map(move |vs| {
                let vs: Vec<Vec<Scalar>> = vs.iter().map(|v| vecq(v)).collect();
                Subspace::from_vectors(Q, n, &vs)
            })
    }

    proptest! {
        #[test]
        fn modular_law(x in subspace(5, 4), y in subspace(5, 4)) {
            let s = x.sum(&y).unwrap();
            let i = x.intersect(&y).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), x.dim() + y.dim());
            prop_assert!(i.le(&x).unwrap() && i.le(&y).unwrap());
            prop_assert!(x.le(&s).unwrap() && y.le(&s).unwrap());
            prop_assert_eq!(x.le(&y).unwrap(), i == x);
        }

        #[test]
        fn intersection_is_perp_of_sum_of_perps(x in subspace(4, 3), y in subspace(4, 3)) {
            let via_perp = x.perp().sum(&y.perp()).unwrap().perp();
            prop_assert_eq!(x.intersect(&y).unwrap(), via_perp);
        }

        #[test]
        fn double_perp(x in subspace(6, 6)) {
            prop_assert_eq!(x.perp().perp(), x.clone());
            prop_assert_eq!(x.perp().dim() + x.dim(), 6);
        }

        #[test]
        fn canonical_equality_is_span_equality(x in subspace(4, 3), y in subspace(4, 3)) {
            let mutual = x.le(&y).unwrap() && y.le(&x).unwrap();
            prop_assert_eq!(mutual, x == y);
            // re-spanning a shuffled, rescaled basis gives the same representation
            let mut cols = x.basis().columns();
            cols.reverse();
            let scaled: Vec<Vec<Scalar>> = cols
                .iter()
                .map(|c| c.iter().map(|v| v * &Q.from_i64(3)).collect())
                .collect();
            prop_assert_eq!(Subspace::from_vectors(Q, 4, &scaled), x);
        }
    }
}
