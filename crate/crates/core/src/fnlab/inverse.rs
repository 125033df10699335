use std::collections::{BTreeMap, BTreeSet};

use super::FiniteFn;
use crate::bits::llex_cmp;

/// `f ∘ f' ∘ f = f`.
pub fn is_inverse(fp: &FiniteFn, f: &FiniteFn) -> bool {
    FiniteFn::compose_all(&[f, fp, f]) == *f
}

/// `f' ∘ f ∘ f' = f'`.
pub fn is_coinverse(fp: &FiniteFn, f: &FiniteFn) -> bool {
    FiniteFn::compose_all(&[fp, f, fp]) == *fp
}

pub fn is_mutual(fp: &FiniteFn, f: &FiniteFn) -> bool {
    is_inverse(fp, f) && is_coinverse(fp, f)
}

/// Whether `g'` is a mutual inverse of some restriction of `f`.
///
/// If `g'` is a mutual inverse of `f|S` then it is also one of
/// `f|Im(g')`, so that single restriction decides the question.
pub fn is_subinverse(gp: &FiniteFn, f: &FiniteFn) -> bool {
    is_mutual(gp, &f.restrict(&gp.image()))
}

/// The classes of `mod_f`, one per image point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPartition {
    pub classes: Vec<(String, BTreeSet<String>)>,
}

pub fn mod_partition(f: &FiniteFn) -> ModPartition {
    let mut by_value: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (x, y) in f.iter() {
        by_value.entry(y.to_string()).or_default().insert(x.to_string());
    }
    let mut classes: Vec<(String, BTreeSet<String>)> = by_value.into_iter().collect();
    classes.sort_by(|a, b| llex_cmp(&a.0, &b.0));
    ModPartition { classes }
}

/// Every inverse of `f` with domain `Im(f)`: one preimage chosen per image
/// point. The number produced is the product of the class sizes.
pub fn choice_functions(f: &FiniteFn) -> impl Iterator<Item = FiniteFn> {
    let classes: Vec<(String, Vec<String>)> = mod_partition(f)
        .classes
        .into_iter()
        .map(|(y, c)| (y, c.into_iter().collect()))
        .collect();
    let total: usize = classes.iter().map(|(_, c)| c.len()).product();
    (0..total).map(move |mut i| {
        let mut c = FiniteFn::new();
        for (y, class) in &classes {
            c.insert(y, &class[i % class.len()]);
            i /= class.len();
        }
        c
    })
}

/// Representative choice functions of `f`, as `c ∘ f` over all choice
/// functions `c`.
pub fn repr_choice_functions(f: &FiniteFn) -> impl Iterator<Item = FiniteFn> + '_ {
    choice_functions(f).map(move |c| rho(&c, f))
}

/// `ρ_c = c ∘ f`.
pub fn rho(c: &FiniteFn, f: &FiniteFn) -> FiniteFn {
    FiniteFn::compose(c, f)
}

/// `v_r = r ∘ f⁻¹`, well defined since `r` is constant on `mod_f` classes.
pub fn v_of(r: &FiniteFn, f: &FiniteFn) -> FiniteFn {
    let mut out = FiniteFn::new();
    for (y, class) in mod_partition(f).classes {
        if let Some(z) = class.iter().find_map(|x| r.get(x)) {
            out.insert(&y, z);
        }
    }
    out
}

/// The choice function picking the llex-least preimage.
pub fn fmin(f: &FiniteFn) -> FiniteFn {
    let mut out = FiniteFn::new();
    for (y, class) in mod_partition(f).classes {
        if let Some(x) = class.iter().min_by(|a, b| llex_cmp(a, b)) {
            out.insert(&y, x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(pairs: &[(&str, &str)]) -> FiniteFn {
        FiniteFn::from_pairs(pairs)
    }

    #[test]
    fn basic_inverse_predicates() {
        assert!(is_mutual(&f(&[("1", "0")]), &f(&[("0", "1")])));
        assert!(!is_inverse(&f(&[("1", "1")]), &f(&[("0", "1")])));
        let a = f(&[("0", "1")]);
        let ap = f(&[("0", "0"), ("1", "0")]);
        assert!(is_mutual(&ap, &a));
        assert!(!ap.domain().is_subset(&a.image()));
    }

    #[test]
    fn empty_function_cases() {
        let theta = FiniteFn::new();
        let g = f(&[("0", "1")]);
        assert!(is_subinverse(&theta, &g));
        assert!(!is_inverse(&theta, &g));
        assert!(is_inverse(&theta, &theta));
    }

    #[test]
    fn subinverse_of_collapsing_map() {
        let g = f(&[("0", "0"), ("1", "0")]);
        assert!(is_subinverse(&f(&[("0", "1")]), &g));
        assert!(!is_subinverse(&f(&[("1", "1")]), &g));
    }

    #[test]
    fn choice_counts_and_fmin() {
        let g = f(&[("00", "1"), ("01", "1"), ("10", "0")]);
        let all: Vec<FiniteFn> = choice_functions(&g).collect();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|c| is_inverse(c, &g) && c.domain() == g.image()));
        assert_eq!(fmin(&g), f(&[("1", "00"), ("0", "10")]));
        let inj = f(&[("0", "11"), ("1", "")]);
        let only: Vec<FiniteFn> = choice_functions(&inj).collect();
        assert_eq!(only, vec![inj.relational_inverse().unwrap()]);
        assert_eq!(fmin(&inj), inj.relational_inverse().unwrap());
    }

    #[test]
    fn rho_and_v_are_mutually_inverse() {
        let g = f(&[("00", "1"), ("01", "1"), ("10", "0"), ("11", "0"), ("", "0")]);
        for c in choice_functions(&g) {
            let r = rho(&c, &g);
            assert_eq!(FiniteFn::compose(&r, &r), r);
            assert_eq!(v_of(&r, &g), c);
        }
        assert_eq!(repr_choice_functions(&g).count(), 6);
    }
}
