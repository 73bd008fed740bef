//! Coradical of a coalgebra over `Q`, via the Jacobson radical of its dual.

use crate::coalgebra::{is_subcoalgebra, Coalgebra, DualAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::wedge::build_filtration;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalResult {
    /// Jacobson radical of the dual algebra.
    pub radical: Subspace,
    /// `radical^⊥`, a subcoalgebra.
    pub coradical: Subspace,
    /// Smallest `k` with `radical^k = 0`.
    pub nilpotency_witness: usize,
}

/// `trace(L_a)` for each basis element `a = e_m`.
fn traces(d: &DualAlgebra) -> Vec<Scalar> {
    (0..d.dim())
        .map(|m| {
            let l = d.left_multiplication(&d.basis_element(m));
            (0..d.dim()).fold(d.field().zero(), |acc, k| &acc + l.get(k, k))
        })
        .collect()
}

/// Radical as the kernel of the trace form `(a, b) ↦ trace(L_{ab})`.
/// Valid in characteristic zero only.
pub fn jacobson_radical(d: &DualAlgebra) -> Result<Subspace> {
    if d.field() != Field::Rationals {
        return Err(Error::UnsupportedField(d.field()));
    }
    let t = traces(d);
    let n = d.dim();
    let mut gram = Matrix::zeros(d.field(), n, n);
    for i in 0..n {
        for j in 0..n {
            let ab = d.product(&d.basis_element(i), &d.basis_element(j));
            let v = ab.iter().zip(&t).fold(d.field().zero(), |acc, (x, y)| &acc + &(x * y));
            gram.set(i, j, v);
        }
    }
    let radical = kernel(&gram);
    if !d.is_ideal(&radical) {
        return Err(Error::Internal("trace-form kernel is not an ideal".into()));
    }
    nilpotency_index(d, &radical)?;
    Ok(radical)
}

/// Smallest `k` with `r^k = 0`, by repeated products.
pub fn nilpotency_index(d: &DualAlgebra, r: &Subspace) -> Result<usize> {
    let mut power = r.clone();
    let mut k = 1;
    while !power.is_zero() {
        if k > d.dim() {
            return Err(Error::Internal("radical is not nilpotent".into()));
        }
        power = d.product_span(&power, r);
        k += 1;
    }
    Ok(k)
}

/// `coradical(E) = J(E*)^⊥`, asserted to be a subcoalgebra whose wedge
/// filtration exhausts `E`.
pub fn coradical(c: &Coalgebra) -> Result<RadicalResult> {
    let dual = c.dual_algebra();
    let radical = jacobson_radical(&dual)?;
    let nilpotency_witness = nilpotency_index(&dual, &radical)?;
    let coradical = radical.perp();
    if !is_subcoalgebra(c, &coradical)? {
        return Err(Error::Internal("coradical is not a subcoalgebra".into()));
    }
    if !build_filtration(c, &coradical)?.exhausts() {
        return Err(Error::Internal("coradical filtration does not exhaust the coalgebra".into()));
    }
    Ok(RadicalResult { radical, coradical, nilpotency_witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{direct_sum, divided_power, grouplike, matrix_coalgebra};

    const Q: Field = Field::Rationals;

    #[test]
    fn semisimple_duals() {
        assert!(jacobson_radical(&matrix_coalgebra(Q, 2).dual_algebra()).unwrap().is_zero());
        assert!(jacobson_radical(&grouplike(Q, 3).dual_algebra()).unwrap().is_zero());
    }

    #[test]
    fn truncated_polynomials() {
        let d = divided_power(Q, 2).dual_algebra();
        assert_eq!(traces(&d), vec![Q.from_i64(3), Q.zero(), Q.zero()]);
        let r = jacobson_radical(&d).unwrap();
        assert_eq!(r, Subspace::coordinate(Q, 3, &[1, 2]));
        assert_eq!(nilpotency_index(&d, &r).unwrap(), 3);
    }

    #[test]
    fn coradicals_of_builtins() {
        for n in 0..5 {
            let r = coradical(&divided_power(Q, n)).unwrap();
            assert_eq!(r.coradical, Subspace::coordinate(Q, n + 1, &[0]));
            assert_eq!(r.nilpotency_witness, n + 1);
        }
        for n in 1..4 {
            assert!(coradical(&matrix_coalgebra(Q, n)).unwrap().coradical.is_full());
            assert!(coradical(&grouplike(Q, n)).unwrap().coradical.is_full());
        }
        let s = direct_sum(&grouplike(Q, 2), &divided_power(Q, 2)).unwrap();
        let r = coradical(&s).unwrap();
        assert_eq!(r.coradical, Subspace::coordinate(Q, 5, &[0, 1, 2]));
        assert_eq!(r.nilpotency_witness, 3);
    }

    #[test]
    fn prime_fields_are_rejected() {
        let c = divided_power(Field::Prime(7), 2);
        assert_eq!(coradical(&c), Err(Error::UnsupportedField(Field::Prime(7))));
    }
}
