use crate::error::{Error, Result};

use super::matrix::Matrix;
use super::subspace::Subspace;

/// `E / X` with its projection and a section of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    subspace: Subspace,
    projection: Matrix,
    section: Matrix,
    complement: Vec<usize>,
}

/// Quotient of the ambient space by `x`. Quotient coordinates are the
/// non-pivot coordinates of `x`'s canonical basis, in ascending order.
pub fn quotient(x: &Subspace) -> QuotientSpace {
    let field = x.field();
    let n = x.ambient_dim();
    let complement: Vec<usize> = (0..n).filter(|i| !x.pivots().contains(i)).collect();
    // v ↦ (v - B v[pivots]) restricted to the complement; B[pivots, :] = I.
    let reduce = Matrix::identity(field, n).sub(&x.basis().mul(&Matrix::identity(field, n).select_rows(x.pivots())));
    let projection = reduce.select_rows(&complement);
    let section = Matrix::identity(field, n).select_cols(&complement);
    QuotientSpace {
        subspace: x.clone(),
        projection,
        section,
        complement,
    }
}

impl QuotientSpace {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn ambient_dim(&self) -> usize {
        self.subspace.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// `p_X : E → E/X`.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// A right inverse of the projection.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// Ambient coordinates whose classes form the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }
}

/// The map `y/x : Y1/X1 → Y2/X2` with `(y/x) p_{X1} = p_{X2} y`.
pub fn induced_quotient_map(y: &Matrix, from: &QuotientSpace, to: &QuotientSpace) -> Result<Matrix> {
    if y.cols() != from.ambient_dim() || y.rows() != to.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, quotients live in dimensions {} and {}",
            y.rows(),
            y.cols(),
            from.ambient_dim(),
            to.ambient_dim()
        )));
    }
    let image = y.mul(from.subspace().basis());
    if !to.subspace().contains_columns(&image) {
        return Err(Error::Factorization(
            "the map does not send the first subspace into the second".into(),
        ));
    }
    let q = to.projection().mul(y).mul(from.section());
    if q.mul(from.projection()) != to.projection().mul(y) {
        return Err(Error::Internal("induced quotient map fails its defining identity".into()));
    }
    Ok(q)
}

/// The unique `u` with `i_K u = g`, for `g` landing inside `k`.
pub fn factor_through(g: &Matrix, k: &Subspace) -> Result<Matrix> {
    if g.rows() != k.ambient_dim() {
        return Err(Error::AmbientMismatch(g.rows(), k.ambient_dim()));
    }
    let u = g.select_rows(k.pivots());
    if k.basis().mul(&u) != *g {
        return Err(Error::Factorization("map does not land in the subspace".into()));
    }
    Ok(u)
}

/// Factors `g` through the kernel of `h`, returning the kernel and `u` with
/// `i_{ker h} u = g`.
pub fn factor_through_kernel(g: &Matrix, h: &Matrix) -> Result<(Subspace, Matrix)> {
    if h.cols() != g.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose {}x{} after {}x{}",
            h.rows(),
            h.cols(),
            g.rows(),
            g.cols()
        )));
    }
    if !h.mul(g).is_zero() {
        return Err(Error::Factorization("h ∘ g is not zero".into()));
    }
    let k = super::kernel(h);
    let u = factor_through(g, &k)?;
    Ok((k, u))
}

/// The unique `u` with `m u = g` for an injective `m`.
pub fn factor_through_mono(g: &Matrix, m: &Matrix) -> Result<Matrix> {
    if !m.is_injective() {
        return Err(Error::Precondition("comparison map is not injective".into()));
    }
    let u = m
        .solve(g)
        .ok_or_else(|| Error::Factorization("map does not factor through the monomorphism".into()))?;
    if m.mul(&u) != *g {
        return Err(Error::Internal("factorization fails its defining identity".into()));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn quotient_examples() {
        let q = quotient(&Subspace::zero(Q, 3));
        assert_eq!(*q.projection(), Matrix::identity(Q, 3));

        let q = quotient(&Subspace::full(Q, 3));
        assert_eq!(q.dim(), 0);
        assert_eq!(q.projection().rows(), 0);

        let x = Subspace::coordinate(Q, 3, &[0]);
        let q = quotient(&x);
        assert_eq!(*q.projection(), Matrix::from_i64_rows(Q, &[&[0, 1, 0], &[0, 0, 1]]));
        assert!(q.projection().mul(x.basis()).is_zero());
        assert_eq!(q.projection().rank(), 2);
    }

    #[test]
    fn induced_map_examples() {
        let id = Matrix::identity(Q, 3);
        let x1 = quotient(&Subspace::coordinate(Q, 3, &[0]));
        let x2 = quotient(&Subspace::coordinate(Q, 3, &[0, 1]));
        assert_eq!(induced_quotient_map(&id, &x1, &x1).unwrap(), Matrix::identity(Q, 2));
        assert!(induced_quotient_map(&Matrix::zeros(Q, 3, 3), &x1, &x2).unwrap().is_zero());

        let q = induced_quotient_map(&id, &x1, &x2).unwrap();
        // [c1] ↦ 0, [c2] ↦ [c2]
        assert_eq!(q, Matrix::from_i64_rows(Q, &[&[0, 1]]));
        assert_eq!(q.mul(x1.projection()), *x2.projection());

        assert!(matches!(
            induced_quotient_map(&id, &x2, &x1),
            Err(Error::Factorization(_))
        ));
    }

    #[test]
    fn factor_examples() {
        let h = Matrix::from_i64_rows(Q, &[&[1, 1]]);
        let k = crate::linalg::kernel(&h);
        let (_, u) = factor_through_kernel(k.basis(), &h).unwrap();
        assert_eq!(u, Matrix::identity(Q, 1));

        let (_, u) = factor_through_kernel(&Matrix::zeros(Q, 2, 1), &h).unwrap();
        assert!(u.is_zero());

        let g = Matrix::from_i64_rows(Q, &[&[1], &[-1]]);
        let (k, u) = factor_through_kernel(&g, &h).unwrap();
        assert_eq!(k.basis().mul(&u), g);

        let bad = Matrix::from_i64_rows(Q, &[&[1], &[1]]);
        assert!(matches!(factor_through_kernel(&bad, &h), Err(Error::Factorization(_))));
    }

    fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=n).prop_map(move |vs| {
            let m = Matrix::from_columns(
                Q,
                n,
                &vs.iter().map(|v| v.iter().map(|&x| Q.from_i64(x)).collect()).collect::<Vec<_>>(),
            );
            Subspace::span(&m)
        })
    }

    proptest! {
        #[test]
        fn quotient_identities(x in subspace(5)) {
            let q = quotient(&x);
            prop_assert!(q.projection().mul(x.basis()).is_zero());
            prop_assert_eq!(q.projection().mul(q.section()), Matrix::identity(Q, q.dim()));
            prop_assert_eq!(q.projection().rank(), 5 - x.dim());
            prop_assert_eq!(crate::linalg::kernel(q.projection()), x);
        }

        #[test]
        fn factor_then_compose(x in subspace(4), coeffs in prop::collection::vec(-3i64..=3, 8)) {
            let c = Matrix::new(Q, x.dim(), 2, coeffs[..x.dim() * 2].iter().map(|&v| Q.from_i64(v)).collect()).unwrap();
            let g = x.basis().mul(&c);
            let u = factor_through(&g, &x).unwrap();
            prop_assert_eq!(x.basis().mul(&u), g);
            prop_assert_eq!(u, c);
        }
    }
}
