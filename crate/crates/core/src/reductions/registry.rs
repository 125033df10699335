use std::collections::BTreeMap;
use std::sync::Arc;

use super::{OracleLanguage, ReductionError, ReductionKind, ReductionMap, ReductionWitness, UniversalLanguage};
use crate::bits;
use crate::codec::{code, pair_decode, FIXED_ORACLE};
use crate::corpus;
use crate::fnlab::Universe;
use crate::inversion::{window, InversionError};
use crate::machine::{extract_fn, Executor, Limits, Machine, Oracle, PolyBound, RunOutcome};
use crate::transform::disjoint_union_name;

fn weight(w: &str) -> usize {
    w.chars().filter(|&c| c == '1').count()
}

/// `code(z) 11 code(u) 11 0^len`: is there `v` with `|uv| = len` and
/// `f(uv) = z`?
pub fn im_query(z: &str, u: &str, len: usize) -> String {
    let mut s = code(z);
    s.push_str("11");
    s.push_str(&code(u));
    s.push_str("11");
    s.extend(std::iter::repeat_n('0', len));
    s
}

fn im_member(exec: &Executor, s: &str) -> bool {
    let Ok((z, rest)) = pair_decode(s) else {
        return false;
    };
    let Ok((u, pad)) = pair_decode(&rest) else {
        return false;
    };
    if pad.contains('1') || u.len() > pad.len() {
        return false;
    }
    bits::words_of_len(pad.len() - u.len()).any(|v| {
        matches!(exec.run(&format!("{u}{v}"), None, Limits::default()).0, RunOutcome::Accept(y) if y == z)
    })
}

/// Items and target of `code(a₁) 11 … 11 code(a_k) 11 code(t)`, numbers in
/// binary; `None` when malformed.
fn subset_sum_instance(s: &str) -> Option<(Vec<u128>, u128)> {
    let b = s.as_bytes();
    if !b.len().is_multiple_of(2) {
        return None;
    }
    let mut fields = vec![0u128];
    let mut lens = vec![0usize];
    for pair in b.chunks(2) {
        match pair {
            [b'0', d @ (b'0' | b'1')] => {
                let last = fields.last_mut().expect("nonempty");
                *last = last.checked_mul(2)?.checked_add((d - b'0') as u128)?;
                *lens.last_mut().expect("nonempty") += 1;
            }
            [b'1', b'1'] => {
                fields.push(0);
                lens.push(0);
            }
            _ => return None,
        }
    }
    if fields.len() < 2 || lens.contains(&0) {
        return None;
    }
    let target = fields.pop().expect("at least two");
    Some((fields, target))
}

fn subset_sum(s: &str) -> bool {
    let Some((items, target)) = subset_sum_instance(s) else {
        return false;
    };
    if items.len() > 20 {
        return false;
    }
    (0u32..1 << items.len()).any(|mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .try_fold(0u128, |acc, (_, &a)| acc.checked_add(a))
            == Some(target)
    })
}

/// Named languages. Besides the fixed entries, `im-<machine>` names the
/// image language of a corpus machine and `du(a+b)` the disjoint union
/// `0A ∪ 1B`.
#[derive(Clone, Debug)]
pub struct OracleRegistry {
    fixed: BTreeMap<String, OracleLanguage>,
}

pub fn oracle_registry() -> OracleRegistry {
    let mut fixed = BTreeMap::new();
    let universal = Arc::new(UniversalLanguage::standard());
    let mut add = |l: OracleLanguage| {
        fixed.insert(l.name.clone(), l);
    };
    let u = universal.clone();
    add(OracleLanguage::direct(FIXED_ORACLE, move |w| u.contains(w)));
    add(OracleLanguage::direct("even", |w| weight(w).is_multiple_of(2)));
    add(OracleLanguage::direct("odd", |w| weight(w) % 2 == 1));
    add(OracleLanguage::direct("subset-sum", subset_sum));
    for e in &universal.registry {
        add(OracleLanguage::verifier(&e.machine.name, e.machine.clone(), e.cert_bound));
    }
    OracleRegistry { fixed }
}

impl OracleRegistry {
    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.fixed.keys().cloned().collect();
        v.extend(corpus::all().iter().map(|m| format!("im-{}", m.name)));
        v
    }

    pub fn lookup(&self, name: &str) -> Result<OracleLanguage, ReductionError> {
        if let Some(l) = self.fixed.get(name) {
            return Ok(l.clone());
        }
        let unknown = || ReductionError::UnknownOracle(name.to_string());
        if let Some(m) = name.strip_prefix("im-") {
            let machine = corpus::by_name(m).filter(|m| !m.has_oracle_calls()).ok_or_else(unknown)?;
            return Ok(image_language(name, machine));
        }
        if let Some(inner) = name.strip_prefix("du(").and_then(|s| s.strip_suffix(')')) {
            // split at the `+` that leaves both sides balanced
            let mut depth = 0i32;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    '+' if depth == 0 => {
                        let (a, b) = (self.lookup(&inner[..i])?, self.lookup(&inner[i + 1..])?);
                        let label = disjoint_union_name(&a.name, &b.name);
                        return Ok(OracleLanguage::direct(&label, move |w| match w.split_at_checked(1) {
                            Some(("0", rest)) => a.contains(rest),
                            Some(("1", rest)) => b.contains(rest),
                            _ => false,
                        }));
                    }
                    _ => {}
                }
            }
        }
        Err(unknown())
    }

    pub fn insert(&mut self, lang: OracleLanguage) {
        self.fixed.insert(lang.name.clone(), lang);
    }

    /// Adds the stanzas of a registry file:
    ///
    /// ```text
    /// oracle <name>
    /// alias <registered name>
    /// ```
    /// or
    /// ```text
    /// oracle <name>
    /// verifier <machine reference>
    /// cert <a> <k>
    /// ```
    /// Machine references are resolved by `load`.
    pub fn load(
        &mut self,
        text: &str,
        load: &dyn Fn(&str) -> Option<Machine>,
    ) -> Result<(), ReductionError> {
        let err = |line: usize, msg: String| ReductionError::RegistrySyntax { line, msg };
        let mut name: Option<(usize, String)> = None;
        let mut verifier: Option<Machine> = None;
        let mut pending: Vec<OracleLanguage> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let (key, val) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            let val = val.trim();
            match key {
                "oracle" => {
                    if let Some((at, n)) = &name {
                        return Err(err(*at, format!("stanza `{n}` is incomplete")));
                    }
                    name = Some((line, val.to_string()));
                }
                "alias" => {
                    let (_, n) = name.take().ok_or_else(|| err(line, "`alias` outside a stanza".into()))?;
                    let mut l = self.lookup(val)?;
                    l.name = n;
                    pending.push(l);
                }
                "verifier" => {
                    verifier = Some(load(val).ok_or_else(|| err(line, format!("cannot load machine `{val}`")))?);
                }
                "cert" => {
                    let (_, n) = name.take().ok_or_else(|| err(line, "`cert` outside a stanza".into()))?;
                    let m = verifier.take().ok_or_else(|| err(line, "`cert` before `verifier`".into()))?;
                    let nums: Vec<u64> = val.split_whitespace().filter_map(|t| t.parse().ok()).collect();
                    let bound = match nums[..] {
                        [a, k] => PolyBound::new(a, k as u32),
                        _ => None,
                    }
                    .ok_or_else(|| err(line, format!("bad bound `{val}`")))?;
                    pending.push(OracleLanguage::verifier(&n, m, bound));
                }
                other => return Err(err(line, format!("unknown key `{other}`"))),
            }
        }
        if let Some((at, n)) = name {
            return Err(err(at, format!("stanza `{n}` is incomplete")));
        }
        for l in pending {
            self.insert(l);
        }
        Ok(())
    }
}

fn image_language(name: &str, machine: Machine) -> OracleLanguage {
    let m = Arc::new(machine);
    OracleLanguage::direct(name, move |s| im_member(&Executor::new(&m), s))
}

/// The least preimage of `y` under `m`, found by prefix search with an
/// oracle for `m`'s image language.
pub fn fmin_with_oracle(m: &Machine, y: &str, oracle: &dyn Oracle) -> Result<String, InversionError> {
    let max = window(m, y)?;
    for len in 0..=max {
        if !oracle.contains(&im_query(y, "", len)) {
            continue;
        }
        let mut u = String::new();
        while u.len() < len {
            u.push('0');
            if !oracle.contains(&im_query(y, &u, len)) {
                u.pop();
                u.push('1');
            }
        }
        return Ok(u);
    }
    Err(InversionError::NotInImage(y.to_string()))
}

/// An invfP reduction whose relational inverse does not reduce back:
/// `x ↦ x0` takes even weight to even weight, but `11` has even weight and
/// no preimage.
pub struct AsymmetryWitness {
    pub forward: ReductionWitness,
    pub backward: ReductionWitness,
    pub language: OracleLanguage,
    /// The target language restricted to the image of the forward map.
    pub restricted: OracleLanguage,
}

pub fn asymmetry_witness(max_len: usize) -> AsymmetryWitness {
    let f = corpus::append0();
    let table = extract_fn(&f, max_len, None);
    let inverse = table.relational_inverse().expect("append0 is injective");
    AsymmetryWitness {
        forward: ReductionWitness {
            map: ReductionMap::Machine(f),
            window: Universe::binary(max_len),
            kind: ReductionKind::InvFp,
        },
        backward: ReductionWitness {
            map: ReductionMap::Table(inverse),
            window: Universe::binary(max_len + 1),
            kind: ReductionKind::InvFp,
        },
        language: OracleLanguage::direct("even", |w| weight(w).is_multiple_of(2)),
        restricted: OracleLanguage::direct("even-ending-0", |w| weight(w).is_multiple_of(2) && w.ends_with('0')),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inversion::fmin_invert;
    use crate::reductions::check_reduction;

    #[test]
    fn lookups() {
        let r = oracle_registry();
        assert!(r.lookup("universal").is_ok());
        assert_eq!(r.lookup("nope").unwrap_err(), ReductionError::UnknownOracle("nope".into()));
        assert!(r.lookup("im-nope").is_err());
        assert!(r.lookup("du(even+nope)").is_err());
        let du = r.lookup("du(even+odd)").unwrap();
        assert_eq!(du.name, "du(even+odd)");
        assert!(du.contains("011") && du.contains("110") && !du.contains("01") && !du.contains(""));
    }

    #[test]
    fn image_language_matches_table() {
        let r = oracle_registry();
        let im = r.lookup("im-dropLast").unwrap();
        let f = extract_fn(&corpus::drop_last(), 4, None);
        for z in bits::words_up_to(3) {
            for len in 0..=4 {
                for u in bits::words_up_to(len) {
                    let expect = f.iter().any(|(x, y)| y == z && x.len() == len && x.starts_with(&u));
                    assert_eq!(im.contains(&im_query(&z, &u, len)), expect, "{z} {u} {len}");
                }
            }
        }
        assert!(!im.contains("10"));
    }

    #[test]
    fn subset_sum_examples() {
        let inst = |items: &[&str], t: &str| {
            let mut parts: Vec<String> = items.iter().map(|a| code(a)).collect();
            parts.push(code(t));
            parts.join("11")
        };
        assert!(subset_sum(&inst(&["11", "101"], "1000")));
        assert!(!subset_sum(&inst(&["11", "101"], "111")));
        assert!(subset_sum(&inst(&["1"], "0")));
        assert!(!subset_sum("0"));
        assert!(!subset_sum("0011"));
    }

    #[test]
    fn oracle_fmin_agrees() {
        let r = oracle_registry();
        for name in ["drop_last", "identity", "constant", "inc", "strip0"] {
            let m = corpus::by_name(name).unwrap();
            let im = r.lookup(&format!("im-{name}")).unwrap();
            for y in bits::words_up_to(3) {
                assert_eq!(fmin_with_oracle(&m, &y, &im), fmin_invert(&m, &y), "{name} {y}");
            }
        }
    }

    #[test]
    fn asymmetry() {
        let w = asymmetry_witness(5);
        assert!(check_reduction(&w.forward, &w.language, &w.language).passes());
        let back = check_reduction(&w.backward, &w.language, &w.language);
        assert!(!back.passes());
        assert!(back.counterexamples.iter().any(|c| matches!(
            c,
            super::super::Counterexample::Membership { x, image: None, in_source: true } if x == "11"
        )));
        assert!(check_reduction(&w.backward, &w.restricted, &w.language).passes());
    }

    #[test]
    fn registry_file() {
        let mut r = oracle_registry();
        let text = "oracle parity\nalias odd\n\noracle ones\nverifier has_one\ncert 1 0\n";
        r.load(text, &|s: &str| corpus::by_name(s)).unwrap();
        assert!(r.lookup("parity").unwrap().contains("1"));
        assert!(r.lookup("ones").unwrap().contains("01"));
        assert!(!r.lookup("ones").unwrap().contains("00"));
        assert!(matches!(
            r.load("oracle x\n", &|s: &str| corpus::by_name(s)),
            Err(ReductionError::RegistrySyntax { line: 1, .. })
        ));
    }
}
