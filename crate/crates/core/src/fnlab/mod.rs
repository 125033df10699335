//! Finite partial functions on bitstrings and the algebra around them:
//! inverses, choice functions, finite monoids and Green's relations.

mod func;
mod group;
mod inverse;
mod monoid;
mod sample;

use std::collections::BTreeSet;

use thiserror::Error;

pub use func::FiniteFn;
pub use group::{group_inverse, pad_zero, pi, pi_prime, simulates};
pub use inverse::{
    choice_functions, fmin, is_coinverse, is_inverse, is_mutual, is_subinverse, mod_partition,
    repr_choice_functions, rho, v_of, ModPartition,
};
pub use monoid::{
    green_relations, idempotents, is_idempotent, lfix, maximal_subgroup, monoid_closure,
    regular_elements, rfix, FiniteMonoid, GreenRelations,
};
pub use sample::{all_partial_fns, partial_injections, random_fn, random_injective_fn, total_fns};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FnError {
    #[error("function is not injective")]
    NotInjective,
    #[error("not a mutual inverse")]
    NotMutual,
    #[error("domain of the inverse differs from the image")]
    DomainMismatch,
    #[error("closure exceeds {cap} elements")]
    CapExceeded { cap: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// All words of length at most `max_len` over `alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    pub alphabet: Vec<char>,
    pub max_len: usize,
}

impl Universe {
    pub fn binary(max_len: usize) -> Universe {
        Universe {
            alphabet: vec!['0', '1'],
            max_len,
        }
    }

    /// Smallest binary universe holding every argument and value of `fs`.
    pub fn covering(fs: &[&FiniteFn]) -> Universe {
        let max_len = fs
            .iter()
            .flat_map(|f| f.iter().flat_map(|(x, y)| [x.len(), y.len()]))
            .max()
            .unwrap_or(0);
        Universe::binary(max_len)
    }

    pub fn size(&self) -> usize {
        (0..=self.max_len).map(|i| self.alphabet.len().pow(i as u32)).sum()
    }

    /// Words in llex order.
    pub fn words(&self) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..self.max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    self.alphabet.iter().map(move |&a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    pub fn points(&self) -> BTreeSet<String> {
        self.words().into_iter().collect()
    }

    pub fn identity(&self) -> FiniteFn {
        FiniteFn::identity_on(&self.points())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_size_and_order() {
        let u = Universe::binary(2);
        assert_eq!(u.size(), 7);
        assert_eq!(u.words(), ["", "0", "1", "00", "01", "10", "11"]);
        let t = Universe {
            alphabet: vec!['a', 'b', 'c'],
            max_len: 2,
        };
        assert_eq!(t.size(), 13);
        assert_eq!(t.words().len(), 13);
    }
}
