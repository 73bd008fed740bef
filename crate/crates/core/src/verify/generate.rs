//! Random coideals, subcoalgebras and theorem instances.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::{
    direct_sum, family, family_names, grouplike, quotient_coalgebra, Coalgebra, CoalgebraFamily, CoalgebraMorphism,
};
use crate::coradical::coradical;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::sampling::random_vector;

use super::instance::{HrInstance, Provenance};

fn sparse_dual_seed(c: &Coalgebra, rng: &mut dyn RngCore) -> Subspace {
    let n = c.dim();
    if n == 0 {
        return c.zero_space();
    }
    let k = rng.gen_range(1..=2.min(n));
    let density = rng.gen_range(1.0 / n as f64..=0.6f64.max(1.0 / n as f64));
    let vs: Vec<Vec<Scalar>> = (0..k).map(|_| random_vector(c.field(), n, density, rng)).collect();
    Subspace::from_vectors(c.field(), n, &vs)
}

/// Perp of the unital subalgebra of `C*` generated by a sparse random seed.
pub fn random_coideal_with(c: &Coalgebra, rng: &mut dyn RngCore) -> Subspace {
    let seed = sparse_dual_seed(c, rng);
    c.dual_algebra().subalgebra_closure(&seed).perp()
}

/// Perp of the two-sided ideal of `C*` generated by a sparse random seed.
pub fn random_subcoalgebra_with(c: &Coalgebra, rng: &mut dyn RngCore) -> Subspace {
    let seed = sparse_dual_seed(c, rng);
    c.dual_algebra().ideal_closure(&seed).perp()
}

pub fn random_coideal(c: &Coalgebra, seed: u64) -> Subspace {
    random_coideal_with(c, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_subcoalgebra(c: &Coalgebra, seed: u64) -> Subspace {
    random_subcoalgebra_with(c, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A family member usable as a direct summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuiltinPiece {
    pub family: &'static str,
    pub size: usize,
}

impl BuiltinPiece {
    fn fam(&self) -> &'static dyn CoalgebraFamily {
        family(self.family).expect("registered family")
    }

    pub fn dim(&self) -> usize {
        self.fam().dim(self.size)
    }

    pub fn build(&self, field: Field) -> Result<Coalgebra> {
        self.fam().build(field, self.size)
    }

    pub fn describe(&self) -> String {
        format!("{}({})", self.family, self.size)
    }
}

/// All family members of dimension at most `dim_cap`.
pub fn builtin_pieces(dim_cap: usize) -> Vec<BuiltinPiece> {
    let mut out = Vec::new();
    for name in family_names() {
        let fam = family(name).expect("registered family");
        let mut size = fam.min_size();
        while fam.dim(size) <= dim_cap {
            out.push(BuiltinPiece { family: name, size });
            size += 1;
        }
    }
    out
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    a.hstack(&Matrix::zeros(f, a.rows(), b.cols()))
        .vstack(&Matrix::zeros(f, b.rows(), a.cols()).hstack(b))
}

struct Builtin {
    coalgebra: Coalgebra,
    coradical: Subspace,
    automorphism: Matrix,
    description: String,
}

/// One family member, or the direct sum of two, of dimension at most `dim_cap`.
fn random_builtin(field: Field, dim_cap: usize, rng: &mut dyn RngCore) -> Result<Builtin> {
    let pieces = builtin_pieces(dim_cap.max(1));
    let first = pieces[rng.gen_range(0..pieces.len())];
    let room = dim_cap.saturating_sub(first.dim());
    let partners: Vec<BuiltinPiece> = pieces.iter().copied().filter(|p| p.dim() <= room).collect();
    let second = if !partners.is_empty() && rng.gen_bool(0.4) {
        Some(partners[rng.gen_range(0..partners.len())])
    } else {
        None
    };
    let mut coalgebra = first.build(field)?;
    let mut corad = first.fam().coradical(field, first.size).basis().clone();
    let mut automorphism = first.fam().automorphism(field, first.size, rng);
    let mut description = first.describe();
    if let Some(p) = second {
        coalgebra = direct_sum(&coalgebra, &p.build(field)?)?;
        corad = block_diag(&corad, p.fam().coradical(field, p.size).basis());
        automorphism = block_diag(&automorphism, &p.fam().automorphism(field, p.size, rng));
        description = format!("{description} + {}", p.describe());
    }
    Ok(Builtin {
        coradical: Subspace::span(&corad),
        coalgebra,
        automorphism,
        description,
    })
}

fn inclusion_into_extension(e: &Coalgebra) -> Result<CoalgebraMorphism> {
    let target = direct_sum(e, &grouplike(e.field(), 1))?;
    let m = e.identity_map().vstack(&Matrix::zeros(e.field(), 1, e.dim()));
    CoalgebraMorphism::new(e.clone(), target, m)
}

fn projection(e: &Coalgebra, i: &Subspace) -> Result<CoalgebraMorphism> {
    Ok(quotient_coalgebra(e, i)?.1)
}

/// Produces theorem instances from a random source.
pub trait InstanceGenerator: Send + Sync {
    fn name(&self) -> &'static str;

    fn generate(&self, field: Field, dim_cap: usize, rng: &mut dyn RngCore) -> Result<HrInstance>;
}

/// Family members and their sums, with `D` the known coradical or a random
/// subcoalgebra and `f` an automorphism followed by a projection or an
/// inclusion.
pub struct StructuredGenerator;

/// A random quotient of a family member, with random `D` and a random
/// coideal projection.
pub struct QuotientGenerator;

impl InstanceGenerator for StructuredGenerator {
    fn name(&self) -> &'static str {
        "structured"
    }

    fn generate(&self, field: Field, dim_cap: usize, rng: &mut dyn RngCore) -> Result<HrInstance> {
        let b = random_builtin(field, dim_cap, rng)?;
        let e = b.coalgebra;
        let mut prov = Provenance::named(self.name()).note(format!("E = {}", b.description));
        let d = if rng.gen_bool(0.5) {
            prov = prov.note("D = coradical");
            b.coradical
        } else {
            prov = prov.note("D = random subcoalgebra");
            random_subcoalgebra_with(&e, rng)
        };
        let g = CoalgebraMorphism::new(e.clone(), e.clone(), b.automorphism)?;
        let f = match rng.gen_range(0..5) {
            0 => {
                prov = prov.note("f = automorphism");
                g
            }
            1 => {
                prov = prov.note("f = inclusion after automorphism");
                g.then(&inclusion_into_extension(&e)?)?
            }
            _ => {
                let i = random_coideal_with(&e, rng);
                prov = prov.note(format!("f = projection by a {}-dim coideal after automorphism", i.dim()));
                g.then(&projection(&e, &i)?)?
            }
        };
        HrInstance::new(&e, d, f, prov)
    }
}

impl InstanceGenerator for QuotientGenerator {
    fn name(&self) -> &'static str {
        "quotient"
    }

    fn generate(&self, field: Field, dim_cap: usize, rng: &mut dyn RngCore) -> Result<HrInstance> {
        let b = random_builtin(field, dim_cap, rng)?;
        let i0 = random_coideal_with(&b.coalgebra, rng);
        let (mut e, _) = quotient_coalgebra(&b.coalgebra, &i0)?;
        let mut prov = Provenance::named(self.name());
        if e.dim() == 0 {
            e = b.coalgebra;
            prov = prov.note(format!("E = {}", b.description));
        } else {
            prov = prov.note(format!("E = {} modulo a {}-dim coideal", b.description, i0.dim()));
        }
        let d = if field == Field::Rationals && rng.gen_bool(0.3) {
            prov = prov.note("D = coradical");
            coradical(&e)?.coradical
        } else {
            prov = prov.note("D = random subcoalgebra");
            random_subcoalgebra_with(&e, rng)
        };
        let i = random_coideal_with(&e, rng);
        prov = prov.note(format!("f = projection by a {}-dim coideal", i.dim()));
        let f = projection(&e, &i)?;
        HrInstance::new(&e, d, f, prov)
    }
}

type Registry = BTreeMap<&'static str, Box<dyn InstanceGenerator>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut map: Registry = BTreeMap::new();
        for g in [
            Box::new(StructuredGenerator) as Box<dyn InstanceGenerator>,
            Box::new(QuotientGenerator),
        ] {
            map.insert(g.name(), g);
        }
        map
    })
}

pub fn generator(name: &str) -> Option<&'static dyn InstanceGenerator> {
    registry().get(name).map(|b| b.as_ref())
}

pub fn generator_names() -> Vec<&'static str> {
    registry().keys().copied().collect()
}
