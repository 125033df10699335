use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{Machine, Transition};

/// Two transitions sharing a key, by index into `Machine::transitions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub first: usize,
    pub second: usize,
    pub state: String,
    pub detail: String,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "transitions {} and {} collide at `{}` ({})",
            self.first, self.second, self.state, self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub conflicts: Vec<Conflict>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.conflicts.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("machine is not deterministic ({0} conflicts); check determinism first")]
    DeterminismFirst(usize),
}

// A key is a state plus an optional symbol vector; `None` collides with
// every key at the same state.
type Key<'a> = (&'a str, Option<&'a [char]>);

fn forward_keys(t: &Transition) -> Vec<Key<'_>> {
    match t {
        Transition::Rw { source, read, .. } => vec![(source, Some(read))],
        Transition::Shift { source, .. } => vec![(source, None)],
        Transition::Oracle(c) => vec![(&c.query, None)],
        Transition::ReverseOracle(c) => vec![(&c.yes, None), (&c.no, None)],
    }
}

fn reverse_keys(t: &Transition) -> Vec<Key<'_>> {
    match t {
        Transition::Rw { target, write, .. } => vec![(target, Some(write))],
        Transition::Shift { target, .. } => vec![(target, None)],
        Transition::Oracle(c) => vec![(&c.yes, None), (&c.no, None)],
        Transition::ReverseOracle(c) => vec![(&c.query, None)],
    }
}

fn kind(t: &Transition) -> &'static str {
    match t {
        Transition::Rw { .. } => "rw",
        Transition::Shift { .. } => "shift",
        Transition::Oracle(_) => "oracle",
        Transition::ReverseOracle(_) => "reverse oracle",
    }
}

fn scan(m: &Machine, keys: fn(&Transition) -> Vec<Key<'_>>) -> ValidationReport {
    let mut by_state: HashMap<&str, Vec<(usize, Option<&[char]>)>> = HashMap::new();
    for (i, t) in m.transitions.iter().enumerate() {
        for (s, v) in keys(t) {
            by_state.entry(s).or_default().push((i, v));
        }
    }
    let mut conflicts = Vec::new();
    for (state, entries) in by_state {
        let mut exact: HashMap<&[char], usize> = HashMap::new();
        let mut wildcard: Vec<usize> = Vec::new();
        for &(i, v) in &entries {
            match v {
                Some(v) => {
                    if let Some(&j) = exact.get(v) {
                        conflicts.push(Conflict {
                            first: j,
                            second: i,
                            state: state.to_string(),
                            detail: format!("same vector [{}]", v.iter().collect::<String>()),
                        });
                    } else {
                        exact.insert(v, i);
                    }
                }
                None => wildcard.push(i),
            }
        }
        for (a, &i) in wildcard.iter().enumerate() {
            for &j in &wildcard[a + 1..] {
                if i != j {
                    conflicts.push(Conflict {
                        first: i,
                        second: j,
                        state: state.to_string(),
                        detail: format!("{} and {}", kind(&m.transitions[i]), kind(&m.transitions[j])),
                    });
                }
            }
            if let Some(&j) = exact.values().min() {
                conflicts.push(Conflict {
                    first: i.min(j),
                    second: i.max(j),
                    state: state.to_string(),
                    detail: format!("{} mixed with rw", kind(&m.transitions[i])),
                });
            }
        }
    }
    conflicts.sort_by_key(|c| (c.first, c.second));
    ValidationReport { conflicts }
}

/// Lists every pair of transitions sharing a forward key.
pub fn validate_deterministic(m: &Machine) -> ValidationReport {
    scan(m, forward_keys)
}

/// Lists every pair of transitions sharing a reverse key; empty exactly when
/// the reversed table is deterministic.
pub fn validate_injective(m: &Machine) -> Result<ValidationReport, ValidateError> {
    let det = validate_deterministic(m);
    if !det.is_ok() {
        return Err(ValidateError::DeterminismFirst(det.conflicts.len()));
    }
    Ok(scan(m, reverse_keys))
}
