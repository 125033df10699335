use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::FnError;
use crate::bits::llex_cmp;

/// A finite partial function on bitstrings. The empty map is the empty
/// function.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFn {
    map: BTreeMap<String, String>,
}

impl FiniteFn {
    pub fn new() -> FiniteFn {
        FiniteFn::default()
    }

    pub fn from_pairs<A: AsRef<str>, B: AsRef<str>>(pairs: &[(A, B)]) -> FiniteFn {
        let mut f = FiniteFn::new();
        for (x, y) in pairs {
            f.insert(x.as_ref(), y.as_ref());
        }
        f
    }

    /// Identity restricted to `points`.
    pub fn identity_on<'a>(points: impl IntoIterator<Item = &'a String>) -> FiniteFn {
        FiniteFn {
            map: points.into_iter().map(|p| (p.clone(), p.clone())).collect(),
        }
    }

    /// Sets `x -> y`, replacing any previous value at `x`.
    pub fn insert(&mut self, x: &str, y: &str) {
        self.map.insert(x.to_string(), y.to_string());
    }

    pub fn remove(&mut self, x: &str) -> Option<String> {
        self.map.remove(x)
    }

    pub fn get(&self, x: &str) -> Option<&str> {
        self.map.get(x).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(x, y)| (x.as_str(), y.as_str()))
    }

    pub fn domain(&self) -> BTreeSet<String> {
        self.map.keys().cloned().collect()
    }

    pub fn image(&self) -> BTreeSet<String> {
        self.map.values().cloned().collect()
    }

    pub fn preimage(&self, y: &str) -> BTreeSet<String> {
        self.map
            .iter()
            .filter(|(_, v)| v.as_str() == y)
            .map(|(x, _)| x.clone())
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    /// Every pair of `self` is a pair of `other`.
    pub fn is_subfunction_of(&self, other: &FiniteFn) -> bool {
        self.iter().all(|(x, y)| other.get(x) == Some(y))
    }

    /// `outer ∘ inner`: defined where `inner` and then `outer` are defined.
    pub fn compose(outer: &FiniteFn, inner: &FiniteFn) -> FiniteFn {
        FiniteFn {
            map: inner
                .map
                .iter()
                .filter_map(|(x, y)| outer.map.get(y).map(|z| (x.clone(), z.clone())))
                .collect(),
        }
    }

    /// Right-to-left composition of a chain: `compose_all(&[a, b, c])` is
    /// `a ∘ b ∘ c`.
    pub fn compose_all(fs: &[&FiniteFn]) -> FiniteFn {
        let mut it = fs.iter().rev();
        let mut acc = match it.next() {
            Some(f) => (*f).clone(),
            None => return FiniteFn::new(),
        };
        for f in it {
            acc = FiniteFn::compose(f, &acc);
        }
        acc
    }

    pub fn restrict(&self, set: &BTreeSet<String>) -> FiniteFn {
        FiniteFn {
            map: self
                .map
                .iter()
                .filter(|(x, _)| set.contains(*x))
                .map(|(x, y)| (x.clone(), y.clone()))
                .collect(),
        }
    }

    pub fn relational_inverse(&self) -> Result<FiniteFn, FnError> {
        let mut map = BTreeMap::new();
        for (x, y) in &self.map {
            if map.insert(y.clone(), x.clone()).is_some() {
                return Err(FnError::NotInjective);
            }
        }
        Ok(FiniteFn { map })
    }

    /// Union of two functions; `None` if they disagree somewhere.
    pub fn union(&self, other: &FiniteFn) -> Option<FiniteFn> {
        let mut map = self.map.clone();
        for (x, y) in &other.map {
            if let Some(prev) = map.insert(x.clone(), y.clone()) {
                if prev != *y {
                    return None;
                }
            }
        }
        Some(FiniteFn { map })
    }

    /// Pairs in llex order of the argument.
    pub fn sorted_pairs(&self) -> Vec<(&str, &str)> {
        let mut v: Vec<(&str, &str)> = self.iter().collect();
        v.sort_by(|a, b| llex_cmp(a.0, b.0));
        v
    }

    /// Parses one `x -> y` pair per line; `#` starts a comment and `ε` or
    /// nothing stands for the empty word.
    pub fn parse(text: &str) -> Result<FiniteFn, FnError> {
        let mut f = FiniteFn::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| FnError::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let (x, y) = line.split_once("->").ok_or_else(|| bad("expected `x -> y`"))?;
            let word = |s: &str| -> Result<String, FnError> {
                let s = s.trim();
                let s = if s == "ε" { "" } else { s };
                if crate::bits::is_bitstring(s) {
                    Ok(s.to_string())
                } else {
                    Err(bad(&format!("`{s}` is not a bitstring")))
                }
            };
            let (x, y) = (word(x)?, word(y)?);
            if f.get(&x).is_some_and(|prev| prev != y) {
                return Err(bad(&format!("`{x}` mapped twice")));
            }
            f.insert(&x, &y);
        }
        Ok(f)
    }
}

fn show(w: &str) -> &str {
    if w.is_empty() {
        "ε"
    } else {
        w
    }
}

impl fmt::Display for FiniteFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, y) in self.sorted_pairs() {
            writeln!(f, "{} -> {}", show(x), show(y))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_partial() {
        let f = FiniteFn::from_pairs(&[("0", "1"), ("1", "00")]);
        let g = FiniteFn::from_pairs(&[("1", "0")]);
        assert_eq!(FiniteFn::compose(&g, &f), FiniteFn::from_pairs(&[("0", "0")]));
        assert_eq!(
            FiniteFn::compose_all(&[&g, &f, &g]),
            FiniteFn::from_pairs(&[("1", "0")])
        );
    }

    #[test]
    fn restrict_to_empty_is_empty() {
        let f = FiniteFn::from_pairs(&[("0", "1")]);
        assert!(f.restrict(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn relational_inverse_needs_injective() {
        let f = FiniteFn::from_pairs(&[("0", "1"), ("1", "1")]);
        assert_eq!(f.relational_inverse(), Err(FnError::NotInjective));
        let g = FiniteFn::from_pairs(&[("0", "1"), ("1", "")]);
        let inv = g.relational_inverse().unwrap();
        assert_eq!(inv.get(""), Some("1"));
    }

    #[test]
    fn text_round_trip() {
        let f = FiniteFn::from_pairs(&[("", "0"), ("10", ""), ("1", "11")]);
        let text = f.to_string();
        assert_eq!(text, "ε -> 0\n1 -> 11\n10 -> ε\n");
        assert_eq!(FiniteFn::parse(&text).unwrap(), f);
        assert!(matches!(
            FiniteFn::parse("0 -> 1\n0 -> 0\n"),
            Err(FnError::Parse { line: 2, .. })
        ));
        assert!(FiniteFn::parse("x -> 1").is_err());
    }
}
