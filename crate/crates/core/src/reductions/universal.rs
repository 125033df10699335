use super::verify_some;
use crate::codec::{code, pair_decode, serialize_machine};
use crate::corpus;
use crate::machine::{Machine, Oracle, PolyBound};

/// `code(v) 11 x 11 0^(|v|·p_v(|x|))`.
pub fn hartmanis_map(v: &str, p_v: &PolyBound, x: &str) -> String {
    let pad = (v.len() as u64).saturating_mul(p_v.eval(x.len() as u64));
    let mut s = code(v);
    s.push_str("11");
    s.push_str(x);
    s.push_str("11");
    s.extend(std::iter::repeat_n('0', pad as usize));
    s
}

/// A verifier-presented language of the universal registry. `bits` is
/// the serialized verifier and the pad polynomial is its time bound.
#[derive(Clone, Debug)]
pub struct VerifierEntry {
    pub bits: String,
    pub machine: Machine,
    pub cert_bound: PolyBound,
}

impl VerifierEntry {
    /// `None` when the verifier lacks a time bound.
    pub fn new(machine: Machine, cert_bound: PolyBound) -> Option<VerifierEntry> {
        machine.time_bound?;
        Some(VerifierEntry {
            bits: serialize_machine(&machine),
            machine,
            cert_bound,
        })
    }

    pub fn pad_bound(&self) -> PolyBound {
        self.machine.time_bound.expect("checked at construction")
    }

    pub fn contains(&self, x: &str) -> bool {
        verify_some(&self.machine, &self.cert_bound, x)
    }

    pub fn encode(&self, x: &str) -> String {
        hartmanis_map(&self.bits, &self.pad_bound(), x)
    }
}

/// Membership in the padded universal language over a finite registry.
/// Malformed words are simply not members.
pub fn universal_member(s: &str, registry: &[VerifierEntry]) -> bool {
    let Ok((w, rest)) = pair_decode(s) else {
        return false;
    };
    let body = rest.trim_end_matches('0');
    let Some(x) = body.strip_suffix("11") else {
        return false;
    };
    let pad = rest.len() - body.len();
    let Some(entry) = registry.iter().find(|e| e.bits == w) else {
        return false;
    };
    let want = (w.len() as u64).saturating_mul(entry.pad_bound().eval(x.len() as u64));
    pad as u64 == want && entry.contains(x)
}

#[derive(Clone, Debug)]
pub struct UniversalLanguage {
    pub registry: Vec<VerifierEntry>,
}

impl UniversalLanguage {
    /// The corpus verifiers, each with certificates of at most two bits.
    pub fn standard() -> UniversalLanguage {
        let cert = PolyBound::new(1, 0).expect("nonzero");
        UniversalLanguage {
            registry: corpus::verifiers()
                .into_iter()
                .filter_map(|m| VerifierEntry::new(m, cert))
                .collect(),
        }
    }

    pub fn entry(&self, name: &str) -> Option<&VerifierEntry> {
        self.registry.iter().find(|e| e.machine.name == name)
    }
}

impl Oracle for UniversalLanguage {
    fn contains(&self, word: &str) -> bool {
        universal_member(word, &self.registry)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;
    use crate::fnlab::{FiniteFn, Universe};
    use crate::reductions::{check_reduction, ReductionKind, ReductionMap, ReductionWitness};

    #[test]
    fn map_examples() {
        let p = PolyBound::new(2, 1).unwrap();
        let expect = format!("{}11{}11{}", "010001", "01", "0".repeat(18));
        assert_eq!(hartmanis_map("101", &p, "01"), expect);
        assert_eq!(hartmanis_map("101", &p, ""), format!("0100011111{}", "0".repeat(6)));
        let a = hartmanis_map("101", &p, "0");
        let b = hartmanis_map("101", &p, "00");
        assert_ne!(a, b);
        assert!(a.len() < b.len());
    }

    #[test]
    fn membership() {
        let u = UniversalLanguage::standard();
        let has_one = u.entry("has_one").unwrap();
        assert!(universal_member(&has_one.encode("001"), &u.registry));
        assert!(!universal_member(&has_one.encode("000"), &u.registry));
        let mut short = has_one.encode("001");
        short.pop();
        assert!(!universal_member(&short, &u.registry));
        let mut long = has_one.encode("001");
        long.push('0');
        assert!(!universal_member(&long, &u.registry));
        assert!(!universal_member("11", &u.registry));
        assert!(!universal_member("", &u.registry));
    }

    #[test]
    fn each_verifier_reduces_to_universal() {
        let u = UniversalLanguage::standard();
        for e in &u.registry {
            let mut f = FiniteFn::new();
            for x in bits::words_up_to(4) {
                f.insert(&x, &e.encode(&x));
            }
            let w = ReductionWitness {
                map: ReductionMap::Table(f),
                window: Universe::binary(4),
                kind: ReductionKind::InvFp,
            };
            let l1 = |x: &str| e.contains(x);
            assert!(check_reduction(&w, &l1, &u).passes(), "{}", e.machine.name);
        }
    }
}
