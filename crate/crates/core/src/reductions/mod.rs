//! Languages, reductions between them on finite windows, the padded
//! universal language and the named oracle registry.

mod registry;
mod universal;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bits;
use crate::codec::pair_encode;
use crate::fnlab::{FiniteFn, Universe};
use crate::machine::{run, Limits, Machine, Oracle, PolyBound, RunOutcome};

pub use registry::{asymmetry_witness, fmin_with_oracle, im_query, oracle_registry, AsymmetryWitness, OracleRegistry};
pub use universal::{hartmanis_map, universal_member, UniversalLanguage, VerifierEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("no oracle named `{0}`")]
    UnknownOracle(String),
    #[error("oracle registry line {line}: {msg}")]
    RegistrySyntax { line: usize, msg: String },
}

type Predicate = Arc<dyn Fn(&str) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Presentation {
    Direct(Predicate),
    /// `x` is a member iff the verifier accepts `pair_encode(x, c)` for some
    /// certificate `c` with `|c| ≤ cert_bound(|x|)`.
    Verifier { machine: Machine, cert_bound: PolyBound },
}

#[derive(Clone)]
pub struct OracleLanguage {
    pub name: String,
    pub presentation: Presentation,
}

impl fmt::Debug for OracleLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.presentation {
            Presentation::Direct(_) => "direct".to_string(),
            Presentation::Verifier { machine, cert_bound } => format!("verifier {} cert {}", machine.name, cert_bound),
        };
        write!(f, "OracleLanguage({}: {kind})", self.name)
    }
}

impl OracleLanguage {
    pub fn direct(name: &str, p: impl Fn(&str) -> bool + Send + Sync + 'static) -> OracleLanguage {
        OracleLanguage {
            name: name.to_string(),
            presentation: Presentation::Direct(Arc::new(p)),
        }
    }

    pub fn verifier(name: &str, machine: Machine, cert_bound: PolyBound) -> OracleLanguage {
        OracleLanguage {
            name: name.to_string(),
            presentation: Presentation::Verifier { machine, cert_bound },
        }
    }

    pub fn contains(&self, x: &str) -> bool {
        match &self.presentation {
            Presentation::Direct(p) => p(x),
            Presentation::Verifier { machine, cert_bound } => verify_some(machine, cert_bound, x),
        }
    }
}

impl Oracle for OracleLanguage {
    fn contains(&self, word: &str) -> bool {
        OracleLanguage::contains(self, word)
    }
}

/// Certificate enumeration in llex order.
pub(crate) fn verify_some(verifier: &Machine, cert_bound: &PolyBound, x: &str) -> bool {
    let max = cert_bound.eval(x.chars().count() as u64).min(24) as usize;
    let exec = crate::machine::Executor::new(verifier);
    bits::words_up_to(max).any(|c| exec.run(&pair_encode(x, &c), None, Limits::default()).0.is_accept())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    ManyOne,
    OneOne,
    InvFp,
}

#[derive(Clone, Debug)]
pub enum ReductionMap {
    Table(FiniteFn),
    Machine(Machine),
}

impl ReductionMap {
    fn apply(&self, x: &str) -> Option<String> {
        match self {
            ReductionMap::Table(f) => f.get(x).map(str::to_string),
            ReductionMap::Machine(m) => match run(m, x, None, Limits::default()) {
                RunOutcome::Accept(y) => Some(y),
                _ => None,
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionWitness {
    pub map: ReductionMap,
    pub window: Universe,
    pub kind: ReductionKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// `x ∈ L1` disagrees with `f(x) ∈ L2` (an undefined `f(x)` counts as
    /// outside).
    Membership {
        x: String,
        image: Option<String>,
        in_source: bool,
    },
    NotInjective { first: String, second: String, image: String },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Membership { x, image, in_source } => {
                let side = if *in_source { "in L1" } else { "not in L1" };
                match image {
                    Some(y) => write!(f, "`{x}` is {side} but maps to `{}`", abbreviate(y)),
                    None => write!(f, "`{x}` is {side} but has no image"),
                }
            }
            Counterexample::NotInjective { first, second, image } => {
                write!(f, "`{first}` and `{second}` both map to `{}`", abbreviate(image))
            }
        }
    }
}

fn abbreviate(s: &str) -> String {
    if s.len() <= 40 {
        s.to_string()
    } else {
        format!("{}...({} bits)", &s[..32], s.len())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ReductionReport {
    pub fn passes(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `x ∈ L1 ⇔ f(x) ∈ L2` on every word of the window, plus
/// injectivity there for one-one and invfP reductions.
pub fn check_reduction(w: &ReductionWitness, l1: &dyn Oracle, l2: &dyn Oracle) -> ReductionReport {
    let mut report = ReductionReport::default();
    let mut seen: std::collections::HashMap<String, String> = Default::default();
    for x in w.window.words() {
        report.checked += 1;
        let image = w.map.apply(&x);
        let in_source = l1.contains(&x);
        let in_target = image.as_deref().is_some_and(|y| l2.contains(y));
        if in_source != in_target {
            report.counterexamples.push(Counterexample::Membership {
                x: x.clone(),
                image: image.clone(),
                in_source,
            });
        }
        if w.kind != ReductionKind::ManyOne {
            if let Some(y) = image {
                if let Some(first) = seen.insert(y.clone(), x.clone()) {
                    report.counterexamples.push(Counterexample::NotInjective {
                        first,
                        second: x,
                        image: y,
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn even() -> OracleLanguage {
        OracleLanguage::direct("even", |w| w.chars().filter(|&c| c == '1').count() % 2 == 0)
    }

    #[test]
    fn identity_reduces_language_to_itself() {
        let w = ReductionWitness {
            map: ReductionMap::Machine(corpus::identity()),
            window: Universe::binary(4),
            kind: ReductionKind::InvFp,
        };
        let r = check_reduction(&w, &even(), &even());
        assert!(r.passes());
        assert_eq!(r.checked, 31);
    }

    #[test]
    fn constant_non_member_fails() {
        let mut f = FiniteFn::new();
        for x in Universe::binary(3).words() {
            f.insert(&x, "1");
        }
        let w = ReductionWitness {
            map: ReductionMap::Table(f),
            window: Universe::binary(3),
            kind: ReductionKind::ManyOne,
        };
        let r = check_reduction(&w, &even(), &even());
        assert!(!r.passes());
        assert!(r.counterexamples.contains(&Counterexample::Membership {
            x: String::new(),
            image: Some("1".into()),
            in_source: true
        }));
        let w = ReductionWitness {
            kind: ReductionKind::OneOne,
            ..w
        };
        let r = check_reduction(&w, &even(), &even());
        assert!(r.counterexamples.iter().any(|c| matches!(c, Counterexample::NotInjective { .. })));
    }

    #[test]
    fn verifier_presentation_matches_predicate() {
        let has_one = OracleLanguage::verifier("has_one", corpus::verifier_has_one(), PolyBound::new(1, 0).unwrap());
        let ev = OracleLanguage::verifier("even_weight", corpus::verifier_even(), PolyBound::new(1, 0).unwrap());
        for x in bits::words_up_to(5) {
            assert_eq!(has_one.contains(&x), x.contains('1'), "{x}");
            assert_eq!(ev.contains(&x), even().contains(&x), "{x}");
        }
    }
}
