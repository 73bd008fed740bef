#![allow(dead_code)]

use wedgekit::coalgebra::{direct_sum, Coalgebra};
use wedgekit::linalg::Subspace;
use wedgekit::verify::builtin_pieces;
use wedgekit::{Field, Scalar};

/// `(ab)_m = Σ_{i,j} Δ[(i,j), m] a_i b_j`, read straight off the structure constants.
pub fn dual_product(c: &Coalgebra, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let n = c.dim();
    let f = c.field();
    (0..n)
        .map(|m| {
            let mut acc = f.zero();
            for (i, ai) in a.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                for (j, bj) in b.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                    let d = c.delta().get(i * n + j, m);
                    acc = &acc + &(&(d * ai) * bj);
                }
            }
            acc
        })
        .collect()
}

/// Span of all products `a·b` with `a ∈ x`, `b ∈ y` (no unit adjoined).
pub fn product_span(c: &Coalgebra, x: &Subspace, y: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for a in x.basis().columns() {
        for b in y.basis().columns() {
            vs.push(dual_product(c, &a, &b));
        }
    }
    Subspace::from_vectors(c.field(), c.dim(), &vs)
}

/// Family members of dimension at most `cap` and all pairwise sums within `cap`.
pub fn small_coalgebras(field: Field, cap: usize) -> Vec<(String, Coalgebra)> {
    let pieces = builtin_pieces(cap);
    let mut out: Vec<(String, Coalgebra)> = pieces
        .iter()
        .map(|p| (p.describe(), p.build(field).unwrap()))
        .collect();
    for (a, pa) in pieces.iter().enumerate() {
        for pb in &pieces[a..] {
            if pa.dim() + pb.dim() <= cap {
                let c = direct_sum(&pa.build(field).unwrap(), &pb.build(field).unwrap()).unwrap();
                out.push((format!("{} + {}", pa.describe(), pb.describe()), c));
            }
        }
    }
    out
}
