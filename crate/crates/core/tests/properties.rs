use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use revkit::codec::{deserialize_machine, serialize_machine};
use revkit::corpus;
use revkit::fnlab::{
    fmin, group_inverse, is_coinverse, is_inverse, is_mutual, random_fn, random_injective_fn, FiniteFn, Universe,
};
use revkit::inversion::fmin_invert;
use revkit::machine::{extract_fn, run, Limits, RunOutcome};
use revkit::transform::reverse;

fn table(seed: u64, max_len: usize, density: f64) -> FiniteFn {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_fn(&mut rng, &Universe::binary(max_len).words(), density)
}

/// `fmin(f)` restricted to the image points with a set bit in `mask`: an
/// injective co-inverse of `f`.
fn partial_choice(f: &FiniteFn, mask: u64) -> FiniteFn {
    let mut g = FiniteFn::new();
    for (i, (y, x)) in fmin(f).sorted_pairs().into_iter().enumerate() {
        if mask >> (i % 64) & 1 == 1 {
            g.insert(y, x);
        }
    }
    g
}

fn identity_on_image(f: &FiniteFn) -> FiniteFn {
    FiniteFn::identity_on(&f.image())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fmin_is_a_least_injective_choice(seed in any::<u64>(), density in 0.0f64..1.0) {
        let f = table(seed, 4, density);
        let c = fmin(&f);
        prop_assert_eq!(FiniteFn::compose(&f, &c), identity_on_image(&f));
        prop_assert!(c.is_injective());
        prop_assert_eq!(FiniteFn::compose_all(&[&c, &f, &c]), c.clone());
        prop_assert!(is_mutual(&c, &f));
        for (y, x) in c.iter() {
            prop_assert!(f.preimage(y).iter().all(|z| (z.len(), z.as_str()) >= (x.len(), x)));
        }
    }

    #[test]
    fn mutual_inverse_is_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let f = table(a, 2, 0.7);
        let g = table(b, 2, 0.7);
        prop_assert_eq!(is_mutual(&g, &f), is_mutual(&f, &g));
        prop_assert_eq!(is_mutual(&g, &f), is_inverse(&g, &f) && is_coinverse(&g, &f));
    }

    #[test]
    fn coinverses_compose_in_reverse_order(a in any::<u64>(), b in any::<u64>(), m1 in any::<u64>(), m2 in any::<u64>()) {
        let (f1, f2) = (table(a, 3, 0.6), table(b, 3, 0.6));
        let (g1, g2) = (partial_choice(&f1, m1), partial_choice(&f2, m2));
        prop_assert!(is_coinverse(&g1, &f1) && is_coinverse(&g2, &f2));
        let f = FiniteFn::compose(&f2, &f1);
        let g = FiniteFn::compose(&g1, &g2);
        prop_assert!(g.is_injective());
        prop_assert!(is_coinverse(&g, &f));
    }

    #[test]
    fn injective_tables_invert_relationally(seed in any::<u64>(), density in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_injective_fn(&mut rng, &Universe::binary(3).words(), density);
        let g = f.relational_inverse().expect("injective");
        prop_assert!(is_mutual(&g, &f));
        prop_assert_eq!(fmin(&f), g);
    }

    #[test]
    fn group_inverse_is_an_involution(seed in any::<u64>(), density in 0.0f64..1.0) {
        let f = table(seed, 3, density);
        let big = group_inverse(&f, &fmin(&f)).expect("mutual inverse");
        prop_assert!(big.is_injective());
        prop_assert_eq!(FiniteFn::compose(&big, &big), FiniteFn::identity_on(&big.domain()));
    }

    #[test]
    fn reverse_undoes_injective_machines(i in 0usize..8, x in "[01]{0,10}") {
        let m = &corpus::injective_corpus()[i];
        if let RunOutcome::Accept(y) = run(m, &x, None, Limits::default()) {
            prop_assert_eq!(run(&reverse(m), &y, None, Limits::default()), RunOutcome::Accept(x));
        }
    }

    #[test]
    fn fmin_invert_matches_table(y in "[01]{0,3}") {
        let m = corpus::drop_last();
        let f = extract_fn(&m, 5, None);
        let want = fmin(&f).get(&y).map(str::to_string);
        prop_assert_eq!(fmin_invert(&m, &y).ok(), want);
    }
}

#[test]
fn serialization_round_trips() {
    let mut machines = corpus::all();
    machines.extend(corpus::verifiers());
    machines.push(corpus::tag("even"));
    let reversed: Vec<_> = corpus::injective_corpus().iter().map(reverse).collect();
    for m in machines.iter().chain(&reversed) {
        assert_eq!(deserialize_machine(&serialize_machine(m)).as_ref(), Ok(m), "{}", m.name);
    }
}
