use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::{direct_sum, grouplike, quotient_coalgebra, Coalgebra, CoalgebraMorphism};
use crate::coradical::coradical;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{factor_through, Matrix, Subspace};
use crate::report::VerificationReport;
use crate::sampling::random_subspace;
use crate::wedge::{build_filtration, check_alpha_square, wedge, wedge_induced};

use super::generate::{builtin_pieces, random_coideal, random_coideal_with, random_subcoalgebra_with};
use super::stress::trial_seed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub coalgebra: Coalgebra,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, coalgebra: Coalgebra) -> Self {
        CorpusEntry {
            name: name.into(),
            coalgebra,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaConfig {
    pub seed: u64,
    /// Seeded random configurations spread round-robin over the corpus.
    pub random_configs: usize,
    /// Additivity is checked for `m + n` up to this bound.
    pub additivity_bound: usize,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            seed: 0,
            random_configs: 100,
            additivity_bound: 6,
        }
    }
}

/// Family members of dimension at most 9 plus a few direct sums.
pub fn builtin_corpus(field: Field) -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = builtin_pieces(9)
        .into_iter()
        .filter(|p| !(p.family == "grouplike" && p.size > 5) && !(p.family == "divided-power" && p.size > 5))
        .map(|p| CorpusEntry::new(p.describe(), p.build(field).expect("built-in sizes are valid")))
        .collect();
    let sums = [
        (("grouplike", 2), ("divided-power", 2)),
        (("divided-power", 1), ("divided-power", 2)),
        (("grouplike", 1), ("matrix", 2)),
        (("divided-power", 2), ("matrix", 2)),
    ];
    for ((fa, sa), (fb, sb)) in sums {
        let a = out.iter().find(|e| e.name == format!("{fa}({sa})")).expect("summand in corpus");
        let b = out.iter().find(|e| e.name == format!("{fb}({sb})")).expect("summand in corpus");
        let c = direct_sum(&a.coalgebra, &b.coalgebra).expect("same field");
        out.push(CorpusEntry::new(format!("{} + {}", a.name, b.name), c));
    }
    out
}

fn record_result(report: &mut VerificationReport, name: &str, r: Result<VerificationReport>) {
    match r {
        Ok(sub) => report.absorb(&format!("{name}: "), None, sub),
        Err(e) => report.fail(name.to_string(), e.to_string()),
    }
}

/// Filtration lemmas for a single subcoalgebra `D ⊆ E`.
fn filtration_checks(e: &Coalgebra, d: &Subspace, bound: usize, rng: &mut dyn RngCore) -> Result<VerificationReport> {
    let filtration = build_filtration(e, d)?;
    let mut report = filtration.check_compatibility();
    for m in 0..=bound {
        for n in 0..=bound - m {
            report.absorb("", None, filtration.check_additivity(m, n)?);
        }
    }
    for n in 1..=filtration.stabilization_index() {
        match filtration.compute_tau(n) {
            Ok(_) => report.pass(format!("τ_{n} exists")),
            Err(err) => report.fail(format!("τ_{n} exists"), err.to_string()),
        }
    }
    // a projection keeping D injective, else an inclusion
    let i = random_coideal_with(e, rng);
    let f = if i.intersect(d)?.is_zero() {
        quotient_coalgebra(e, &i)?.1
    } else {
        let target = direct_sum(e, &grouplike(e.field(), 1))?;
        let m = e.identity_map().vstack(&Matrix::zeros(e.field(), 1, e.dim()));
        CoalgebraMorphism::new(e.clone(), target, m)?
    };
    report.absorb("", None, check_alpha_square(filtration.delta_n(1), &f)?);
    Ok(report)
}

/// A random pair of subspaces of the target lying over the images of `x`, `y`.
fn push_forward(p: &CoalgebraMorphism, x: &Subspace, rng: &mut dyn RngCore) -> Result<(Subspace, Matrix)> {
    let c = p.target();
    let img = x.image_under(p.matrix());
    let bigger = img.sum(&random_subspace(c.field(), c.dim(), 1, rng))?;
    let m = factor_through(&p.matrix().mul(x.basis()), &bigger)?;
    Ok((bigger, m))
}

/// `(x' ∧_{e'} y') ∘ (x ∧_e y) = (x'x) ∧_{e'e} (y'y)` along `E → E/I → E/(I+J)`.
fn composition_law(e: &Coalgebra, rng: &mut dyn RngCore) -> Result<VerificationReport> {
    let (e2, p) = quotient_coalgebra(e, &random_coideal_with(e, rng))?;
    let (_, q) = quotient_coalgebra(&e2, &random_coideal_with(&e2, rng))?;
    let x1 = random_subspace(e.field(), e.dim(), 2, rng);
    let y1 = random_subspace(e.field(), e.dim(), 2, rng);
    let (x2, x) = push_forward(&p, &x1, rng)?;
    let (y2, y) = push_forward(&p, &y1, rng)?;
    let (x3, xx) = push_forward(&q, &x2, rng)?;
    let (y3, yy) = push_forward(&q, &y2, rng)?;
    let first = wedge_induced(&x, &y, &p, (&x1, &y1), (&x2, &y2))?;
    let second = wedge_induced(&xx, &yy, &q, (&x2, &y2), (&x3, &y3))?;
    let pq = p.then(&q)?;
    let whole = wedge_induced(&xx.mul(&x), &yy.mul(&y), &pq, (&x1, &y1), (&x3, &y3))?;
    let mut report = VerificationReport::new();
    let composable = first.target == second.source;
    report.record("induced wedges compose", composable && second.map.mul(&first.map) == whole.map, None);
    let id = CoalgebraMorphism::identity(e);
    let w = wedge(e, &x1, &y1)?;
    let ident = wedge_induced(
        &Matrix::identity(e.field(), x1.dim()),
        &Matrix::identity(e.field(), y1.dim()),
        &id,
        (&x1, &y1),
        (&x1, &y1),
    )?;
    report.record("identity induces identity", ident.map == Matrix::identity(e.field(), w.dim()), None);
    Ok(report)
}

/// Axioms for every corpus entry, then the filtration lemmas, the α square
/// and the composition law. Entries failing their axioms get no further checks.
pub fn lemma_suite(corpus: &[CorpusEntry], cfg: &LemmaConfig) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut valid = Vec::new();
    for entry in corpus {
        let axioms = entry.coalgebra.check_axioms();
        let ok = axioms.passed();
        report.absorb(&format!("{}: ", entry.name), None, axioms);
        if ok {
            valid.push(entry);
        }
    }
    for entry in &valid {
        let e = &entry.coalgebra;
        if e.field() != Field::Rationals {
            continue;
        }
        let name = format!("{} [coradical]", entry.name);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let r = coradical(e).and_then(|r| filtration_checks(e, &r.coradical, cfg.additivity_bound, &mut rng));
        record_result(&mut report, &name, r);
    }
    if valid.is_empty() {
        return report;
    }
    for k in 0..cfg.random_configs {
        let entry = valid[k % valid.len()];
        let seed = trial_seed(cfg.seed, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = &entry.coalgebra;
        let d = random_subcoalgebra_with(e, &mut rng);
        let name = format!("{} #{k} [D dim {}]", entry.name, d.dim());
        let mut sub = VerificationReport::new();
        record_result(&mut sub, "filtration", filtration_checks(e, &d, cfg.additivity_bound, &mut rng));
        record_result(&mut sub, "composition", composition_law(e, &mut rng));
        report.absorb(&format!("{name}: "), Some(seed), sub);
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub drawn: usize,
    pub nonzero: usize,
    /// Seeds of nonzero coideals missing `D ∧ D`.
    pub exceptions: Vec<u64>,
}

/// Draws random coideals until `count` nonzero ones are found (or `50·count`
/// draws) and checks that each meets `D ∧ D` for `D` the coradical.
pub fn contrapositive_scan(c: &Coalgebra, count: usize, seed: u64) -> Result<ScanResult> {
    let d = coradical(c)?.coradical;
    let d2 = wedge(c, &d, &d)?;
    let mut res = ScanResult {
        drawn: 0,
        nonzero: 0,
        exceptions: Vec::new(),
    };
    let mut picker = ChaCha8Rng::seed_from_u64(seed);
    while res.nonzero < count && res.drawn < 50 * count.max(1) {
        let s: u64 = picker.gen();
        res.drawn += 1;
        let i = random_coideal(c, s);
        if i.is_zero() {
            continue;
        }
        res.nonzero += 1;
        if i.intersect(&d2)?.is_zero() {
            res.exceptions.push(s);
        }
    }
    if res.nonzero < count {
        return Err(Error::Precondition(format!(
            "only {} nonzero coideals in {} draws",
            res.nonzero, res.drawn
        )));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::divided_power;

    const Q: Field = Field::Rationals;

    #[test]
    fn empty_corpus_passes() {
        let r = lemma_suite(&[], &LemmaConfig::default());
        assert!(r.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn corrupted_entry_fails_axioms_only() {
        let c = divided_power(Q, 2);
        let mut delta = c.delta().clone();
        delta.set(3 + 2, 2, Q.one());
        let bad = Coalgebra::from_parts_unchecked(Q, delta, c.epsilon().clone(), c.labels().to_vec()).unwrap();
        let r = lemma_suite(
            &[CorpusEntry::new("bad", bad)],
            &LemmaConfig {
                random_configs: 5,
                ..Default::default()
            },
        );
        assert!(!r.passed());
        assert!(r.failures().all(|c| c.name == "bad: coassociativity"));
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn small_corpus_passes() {
        let corpus = vec![
            CorpusEntry::new("dp3", divided_power(Q, 3)),
            CorpusEntry::new("g3", grouplike(Q, 3)),
        ];
        let r = lemma_suite(
            &corpus,
            &LemmaConfig {
                random_configs: 10,
                ..Default::default()
            },
        );
        assert!(r.passed(), "{r}");
        assert!(r.len() > 50);
    }

    #[test]
    fn builtin_corpus_is_valid() {
        let corpus = builtin_corpus(Field::Prime(5));
        assert!(corpus.len() >= 15);
        assert!(corpus.iter().all(|e| e.coalgebra.check_axioms().passed()));
    }

    #[test]
    fn contrapositive_on_divided_power() {
        let r = contrapositive_scan(&divided_power(Q, 3), 20, 3).unwrap();
        assert_eq!(r.nonzero, 20);
        assert!(r.exceptions.is_empty());
    }
}
