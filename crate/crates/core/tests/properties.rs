mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{dual_product, product_span, small_coalgebras};
use wedgekit::coalgebra::{is_coideal, is_subcoalgebra, quotient_coalgebra, Coalgebra};
use wedgekit::linalg::Subspace;
use wedgekit::sampling::random_subspace;
use wedgekit::verify::{generator, generator_names, random_coideal, random_subcoalgebra, verify_theorem, Verdict};
use wedgekit::wedge::{alpha, build_filtration, wedge};
use wedgekit::Field;

const FIELDS: [Field; 2] = [Field::Rationals, Field::Prime(7)];

fn pick(field_ix: usize, c_ix: usize) -> Coalgebra {
    let cs = small_coalgebras(FIELDS[field_ix], 6);
    cs[c_ix % cs.len()].1.clone()
}

fn is_ideal_oracle(c: &Coalgebra, s: &Subspace) -> bool {
    let all = c.full_space();
    product_span(c, &all, s).le(s).unwrap() && product_span(c, s, &all).le(s).unwrap()
}

fn is_unital_subalgebra_oracle(c: &Coalgebra, s: &Subspace) -> bool {
    s.contains(c.epsilon().row(0)) && product_span(c, s, s).le(s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_perp_of_dual_product(fi in 0usize..2, ci in 0usize..1000, seed in any::<u64>()) {
        let c = pick(fi, ci);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_subspace(c.field(), c.dim(), 3, &mut rng);
        let y = random_subspace(c.field(), c.dim(), 3, &mut rng);
        let w = wedge(&c, &x, &y).unwrap();
        prop_assert_eq!(w.perp(), product_span(&c, &x.perp(), &y.perp()));
    }

    #[test]
    fn duality_dictionary(fi in 0usize..2, ci in 0usize..1000, seed in any::<u64>()) {
        let c = pick(fi, ci);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // random spans are rarely closed, so also try the generated ones
        for x in [random_subspace(c.field(), c.dim(), 2, &mut rng), random_subcoalgebra(&c, seed), random_coideal(&c, seed)] {
            prop_assert_eq!(is_subcoalgebra(&c, &x).unwrap(), is_ideal_oracle(&c, &x.perp()));
            prop_assert_eq!(is_coideal(&c, &x).unwrap(), is_unital_subalgebra_oracle(&c, &x.perp()));
        }
    }

    #[test]
    fn quotient_dual_is_perp_subalgebra(fi in 0usize..2, ci in 0usize..1000, seed in any::<u64>()) {
        let c = pick(fi, ci);
        let i = random_coideal(&c, seed);
        let (q, p) = quotient_coalgebra(&c, &i).unwrap();
        let pt = p.matrix().transpose();
        prop_assert_eq!(q.dim(), i.perp().dim());
        prop_assert_eq!(Subspace::span(&pt), i.perp());
        let cols = pt.columns();
        for a in 0..q.dim() {
            for b in 0..q.dim() {
                let mut ea = vec![q.field().zero(); q.dim()];
                let mut eb = ea.clone();
                ea[a] = q.field().one();
                eb[b] = q.field().one();
                let upstairs = dual_product(&c, &cols[a], &cols[b]);
                prop_assert_eq!(upstairs, pt.mul_vec(&dual_product(&q, &ea, &eb)));
            }
        }
    }

    #[test]
    fn alpha_kernel_is_self_wedge(fi in 0usize..2, ci in 0usize..1000, seed in any::<u64>()) {
        let c = pick(fi, ci);
        let x = random_subcoalgebra(&c, seed);
        let k = wedgekit::linalg::kernel(&alpha(&c, &x).unwrap());
        prop_assert_eq!(k, wedge(&c, &x, &x).unwrap());
    }

    #[test]
    fn wedge_contains_sum_of_subcoalgebras(fi in 0usize..2, ci in 0usize..1000, seed in any::<u64>()) {
        let c = pick(fi, ci);
        let x = random_subcoalgebra(&c, seed);
        let y = random_subcoalgebra(&c, seed.wrapping_add(1));
        prop_assert!(x.sum(&y).unwrap().le(&wedge(&c, &x, &y).unwrap()).unwrap());
    }

    #[test]
    fn stages_are_increasing_subcoalgebras(fi in 0usize..2, ci in 0usize..1000, seed in any::<u64>()) {
        let c = pick(fi, ci);
        let d = random_subcoalgebra(&c, seed);
        let f = build_filtration(&c, &d).unwrap();
        prop_assert!(f.stages()[0].is_zero());
        if f.stages().len() > 1 {
            prop_assert_eq!(&f.stages()[1], &d);
        }
        for w in f.stages().windows(2) {
            prop_assert!(w[0].le(&w[1]).unwrap() && w[0] != w[1]);
        }
        for s in f.stages() {
            prop_assert!(is_subcoalgebra(&c, s).unwrap());
        }
        prop_assert!(f.check_compatibility().passed());
    }

    #[test]
    fn theorem_report_invariants(fi in 0usize..2, gi in 0usize..2, seed in any::<u64>()) {
        let name = generator_names()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = generator(name).unwrap().generate(FIELDS[fi], 6, &mut rng).unwrap();
        let r = verify_theorem(&inst).unwrap();
        prop_assert_ne!(r.verdict, Verdict::Counterexample);
        prop_assert!(r.trace_is_monotone());
        prop_assert_eq!(r.premise_holds, r.induction_trace[2]);
        prop_assert_eq!(r.conclusion_holds, r.induction_trace[r.stabilization_index]);
        // the kernel of f meets each stage in a growing subspace
        let f = build_filtration(inst.e(), inst.d()).unwrap();
        let k = inst.f().kernel();
        let meets: Vec<Subspace> = f.stages().iter().map(|s| k.intersect(s).unwrap()).collect();
        for w in meets.windows(2) {
            prop_assert!(w[0].le(&w[1]).unwrap());
        }
    }
}
