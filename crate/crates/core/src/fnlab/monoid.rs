use std::collections::{BTreeSet, HashMap};

use super::{FiniteFn, FnError};

pub fn is_idempotent(f: &FiniteFn) -> bool {
    FiniteFn::compose(f, f) == *f
}

/// A finite set of partial functions closed under composition, with its
/// multiplication table. `table[i][j]` is the index of `elements[i] ∘
/// elements[j]`.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    pub elements: Vec<FiniteFn>,
    pub generators: Vec<FiniteFn>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, f: &FiniteFn) -> Option<usize> {
        self.elements.iter().position(|e| e == f)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }
}

/// Closure of `gens` under composition, with `id_points` adjoined.
pub fn monoid_closure(gens: &[FiniteFn], id_points: &BTreeSet<String>, cap: usize) -> Result<FiniteMonoid, FnError> {
    let identity = FiniteFn::identity_on(id_points);
    let mut elements = vec![identity];
    let mut index: HashMap<FiniteFn, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut gen_ids = Vec::new();
    for g in gens {
        let id = match index.get(g) {
            Some(&i) => i,
            None => {
                elements.push(g.clone());
                index.insert(g.clone(), elements.len() - 1);
                elements.len() - 1
            }
        };
        gen_ids.push(id);
    }
    if elements.len() > cap {
        return Err(FnError::CapExceeded { cap });
    }
    // right multiplication by generators reaches every product
    let mut frontier = 0;
    while frontier < elements.len() {
        for &g in &gen_ids {
            let p = FiniteFn::compose(&elements[frontier], &elements[g]);
            if !index.contains_key(&p) {
                if elements.len() == cap {
                    return Err(FnError::CapExceeded { cap });
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        frontier += 1;
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&FiniteFn::compose(a, b)])
                .collect()
        })
        .collect();
    Ok(FiniteMonoid {
        elements,
        generators: gens.to_vec(),
        identity: 0,
        table,
    })
}

pub fn idempotents(m: &FiniteMonoid) -> BTreeSet<usize> {
    (0..m.len()).filter(|&i| m.mul(i, i) == i).collect()
}

/// Green's equivalences relative to `m`, each as a list of classes of
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenRelations {
    pub l: Vec<Vec<usize>>,
    pub r: Vec<Vec<usize>>,
    pub h: Vec<Vec<usize>>,
    pub d: Vec<Vec<usize>>,
}

impl GreenRelations {
    pub fn class_of(classes: &[Vec<usize>], i: usize) -> Option<&Vec<usize>> {
        classes.iter().find(|c| c.contains(&i))
    }
}

fn classes_by<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut groups: std::collections::BTreeMap<K, Vec<usize>> = Default::default();
    for i in 0..n {
        groups.entry(key(i)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub fn green_relations(m: &FiniteMonoid) -> GreenRelations {
    let n = m.len();
    let left: Vec<BTreeSet<usize>> = (0..n).map(|a| (0..n).map(|s| m.mul(s, a)).collect()).collect();
    let right: Vec<BTreeSet<usize>> = (0..n).map(|a| (0..n).map(|s| m.mul(a, s)).collect()).collect();
    let l = classes_by(n, |i| left[i].clone());
    let r = classes_by(n, |i| right[i].clone());
    let h = classes_by(n, |i| (left[i].clone(), right[i].clone()));
    // D is the join of L and R
    let mut parent: Vec<usize> = (0..n).collect();
    for class in l.iter().chain(r.iter()) {
        for w in class.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let d = classes_by(n, |i| roots[i]);
    GreenRelations { l, r, h, d }
}

/// Elements `a` with some `b` in `m` such that `a b a = a`.
pub fn regular_elements(m: &FiniteMonoid) -> BTreeSet<usize> {
    (0..m.len())
        .filter(|&a| (0..m.len()).any(|b| m.mul(m.mul(a, b), a) == a))
        .collect()
}

/// The H-class of the idempotent `e`; empty if `e` is not idempotent.
pub fn maximal_subgroup(m: &FiniteMonoid, e: usize) -> BTreeSet<usize> {
    if m.mul(e, e) != e {
        return BTreeSet::new();
    }
    let g = green_relations(m);
    GreenRelations::class_of(&g.h, e)
        .map(|c| c.iter().copied().collect())
        .unwrap_or_default()
}

/// `{α ∈ m : f ∘ α = f}`.
pub fn rfix(f: &FiniteFn, m: &FiniteMonoid) -> BTreeSet<usize> {
    (0..m.len())
        .filter(|&i| FiniteFn::compose(f, &m.elements[i]) == *f)
        .collect()
}

/// `{α ∈ m : α ∘ f = f}`.
pub fn lfix(f: &FiniteFn, m: &FiniteMonoid) -> BTreeSet<usize> {
    (0..m.len())
        .filter(|&i| FiniteFn::compose(&m.elements[i], f) == *f)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{partial_injections, total_fns};
    use super::*;

    fn two_points() -> BTreeSet<String> {
        ["0", "1"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn idempotent_examples() {
        assert!(is_idempotent(&FiniteFn::identity_on(&two_points())));
        assert!(is_idempotent(&FiniteFn::from_pairs(&[("0", "1"), ("1", "1")])));
        assert!(!is_idempotent(&FiniteFn::from_pairs(&[("0", "1")])));
    }

    #[test]
    fn small_closures() {
        let pts = two_points();
        assert_eq!(monoid_closure(&[], &pts, 10).unwrap().len(), 1);
        let tau = FiniteFn::from_pairs(&[("0", "1"), ("1", "0")]);
        assert_eq!(monoid_closure(&[tau], &pts, 10).unwrap().len(), 2);
        let sym = monoid_closure(&partial_injections(&pts), &pts, 100).unwrap();
        assert_eq!(sym.len(), 7);
        assert!(matches!(
            monoid_closure(&partial_injections(&pts), &pts, 5),
            Err(FnError::CapExceeded { cap: 5 })
        ));
    }

    #[test]
    fn symmetric_inverse_monoid_structure() {
        let pts = two_points();
        let m = monoid_closure(&partial_injections(&pts), &pts, 100).unwrap();
        let g = green_relations(&m);
        assert_eq!(g.d.len(), 3);
        assert_eq!(regular_elements(&m).len(), m.len());
        let grp = maximal_subgroup(&m, m.identity);
        assert_eq!(grp.len(), 2);
        // injectivity is trivially constant on L-classes here
        for class in &g.l {
            let ranks: BTreeSet<usize> = class.iter().map(|&i| m.elements[i].len()).collect();
            assert_eq!(ranks.len(), 1);
        }
    }

    #[test]
    fn fixators_in_total_functions() {
        let pts = two_points();
        let m = monoid_closure(&total_fns(&pts), &pts, 100).unwrap();
        assert_eq!(m.len(), 4);
        let id = FiniteFn::identity_on(&pts);
        assert_eq!(rfix(&id, &m), BTreeSet::from([m.identity]));
        let constant = FiniteFn::from_pairs(&[("0", "1"), ("1", "1")]);
        assert_eq!(rfix(&constant, &m).len(), 4);
        assert_eq!(lfix(&id, &m), BTreeSet::from([m.identity]));
    }
}
