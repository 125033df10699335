use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::FiniteFn;

/// Every partial function from a subset of `dom` into `cod`; there are
/// `(|cod| + 1)^|dom|` of them.
pub fn all_partial_fns(dom: &[String], cod: &[String]) -> Vec<FiniteFn> {
    let base = cod.len() + 1;
    let total = base.pow(dom.len() as u32);
    (0..total)
        .map(|mut i| {
            let mut f = FiniteFn::new();
            for x in dom {
                let pick = i % base;
                i /= base;
                if pick > 0 {
                    f.insert(x, &cod[pick - 1]);
                }
            }
            f
        })
        .collect()
}

/// All partial injections of `points` into itself.
pub fn partial_injections(points: &BTreeSet<String>) -> Vec<FiniteFn> {
    let p: Vec<String> = points.iter().cloned().collect();
    all_partial_fns(&p, &p)
        .into_iter()
        .filter(FiniteFn::is_injective)
        .collect()
}

/// All total functions of `points` into itself.
pub fn total_fns(points: &BTreeSet<String>) -> Vec<FiniteFn> {
    let p: Vec<String> = points.iter().cloned().collect();
    all_partial_fns(&p, &p)
        .into_iter()
        .filter(|f| f.len() == p.len())
        .collect()
}

/// A random partial function on `points`: each point is in the domain with
/// probability `density`, values drawn uniformly.
pub fn random_fn<R: Rng>(rng: &mut R, points: &[String], density: f64) -> FiniteFn {
    let mut f = FiniteFn::new();
    for x in points {
        if rng.gen_bool(density) {
            let y = points.choose(rng).expect("nonempty points");
            f.insert(x, y);
        }
    }
    f
}

/// A random partial injection on `points`.
pub fn random_injective_fn<R: Rng>(rng: &mut R, points: &[String], density: f64) -> FiniteFn {
    let mut targets = points.to_vec();
    targets.shuffle(rng);
    let mut f = FiniteFn::new();
    for (x, y) in points.iter().zip(targets.iter()) {
        if rng.gen_bool(density) {
            f.insert(x, y);
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts() {
        let p: Vec<String> = vec!["0".into(), "1".into()];
        assert_eq!(all_partial_fns(&p, &p).len(), 9);
        let set: BTreeSet<String> = p.iter().cloned().collect();
        assert_eq!(partial_injections(&set).len(), 7);
        assert_eq!(total_fns(&set).len(), 4);
    }

    #[test]
    fn random_injections_are_injective() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p: Vec<String> = crate::bits::words_up_to(3).collect();
        for _ in 0..50 {
            assert!(random_injective_fn(&mut rng, &p, 0.6).is_injective());
            let f = random_fn(&mut rng, &p, 0.5);
            assert!(f.domain().iter().all(|x| p.contains(x)));
        }
    }
}
