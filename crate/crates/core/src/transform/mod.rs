//! Machine-to-machine passes: reversal, chaining, Bennett embeddings and
//! simulation of reverse oracle calls.

mod bennett;
mod canonical;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::machine::{
    validate_deterministic, validate_injective, Machine, Move, OracleCall, PolyBound, TapeKind, TapeRole, TapeSpec,
    Transition, BLANK,
};

pub use bennett::{bennett_clean, bennett_garbage, history_symbol, INVERSE_CHECK_LEN};
pub use canonical::{canonical_form, equivalent_up_to_renaming, permute_tapes};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("machine `{0}` is not deterministic")]
    NotDeterministic(String),
    #[error("the two machines are not mutually inverse on inputs up to length {window}: {detail}")]
    NotInverses { window: usize, detail: String },
}

/// Suffix appended to state names by `reverse`.
pub const REVERSE_MARK: char = '~';

/// A reversed machine with a flag set when its table is not deterministic,
/// i.e. when the input was not reverse-deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reversal {
    pub machine: Machine,
    pub nondeterministic: bool,
}

pub(crate) fn reverse_transition(t: &Transition, rename: &impl Fn(&str) -> String) -> Transition {
    match t.map_states(rename) {
        Transition::Rw {
            source,
            read,
            target,
            write,
        } => Transition::Rw {
            source: target,
            read: write,
            target: source,
            write: read,
        },
        Transition::Shift {
            source,
            target,
            moves,
        } => Transition::Shift {
            source: target,
            target: source,
            moves: moves.iter().map(|m| m.inverse()).collect(),
        },
        Transition::Oracle(c) => Transition::ReverseOracle(c),
        Transition::ReverseOracle(c) => Transition::Oracle(c),
    }
}

fn swap_role(r: TapeRole) -> TapeRole {
    match r {
        TapeRole::Input => TapeRole::Output,
        TapeRole::Output => TapeRole::Input,
        other => other,
    }
}

/// Runs `m` backwards: every transition reversed, start and accept swapped,
/// input and output roles swapped. The time bound becomes `p_T ∘ p_B`.
pub fn reverse_flagged(m: &Machine) -> Reversal {
    let rename = |s: &str| format!("{s}{REVERSE_MARK}");
    let machine = Machine {
        name: format!("{}{REVERSE_MARK}", m.name),
        states: m.states.iter().map(|s| rename(s)).collect(),
        start: rename(&m.accept),
        accept: rename(&m.start),
        tapes: m
            .tapes
            .iter()
            .map(|t| TapeSpec::new(swap_role(t.role), t.kind))
            .collect(),
        transitions: m
            .transitions
            .iter()
            .map(|t| reverse_transition(t, &rename))
            .collect(),
        time_bound: match (m.time_bound, m.balance_bound) {
            (Some(t), Some(b)) => Some(PolyBound::compose(&t, &b)),
            _ => None,
        },
        balance_bound: m.balance_bound,
        oracle_name: m.oracle_name.clone(),
    };
    let nondeterministic = !validate_injective(m).is_ok_and(|r| r.is_ok());
    Reversal {
        machine,
        nondeterministic,
    }
}

pub fn reverse(m: &Machine) -> Machine {
    reverse_flagged(m).machine
}

/// Replaces each reverse oracle call by a forward call from the recorded
/// answer state; a disagreeing answer leads to a dead state.
pub fn simulate_reverse_oracle(m: &Machine) -> Machine {
    if !m
        .transitions
        .iter()
        .any(|t| matches!(t, Transition::ReverseOracle(_)))
    {
        return m.clone();
    }
    let stay = vec![Move::Stay; m.tapes.len()];
    let mut out = m.clone();
    out.transitions.clear();
    for (i, t) in m.transitions.iter().enumerate() {
        let Transition::ReverseOracle(c) = t else {
            out.transitions.push(t.clone());
            continue;
        };
        let (yes_ok, yes_bad) = (format!("@{i}.y"), format!("@{i}.y!"));
        let (no_ok, no_bad) = (format!("@{i}.n"), format!("@{i}.n!"));
        out.transitions.push(Transition::Oracle(OracleCall {
            query: c.yes.clone(),
            yes: yes_ok.clone(),
            no: yes_bad,
            tape: c.tape,
            prefix: c.prefix.clone(),
        }));
        out.transitions.push(Transition::Oracle(OracleCall {
            query: c.no.clone(),
            yes: no_bad,
            no: no_ok.clone(),
            tape: c.tape,
            prefix: c.prefix.clone(),
        }));
        out.transitions.push(Transition::shift(&yes_ok, &c.query, &stay));
        out.transitions.push(Transition::shift(&no_ok, &c.query, &stay));
    }
    out.time_bound = m.time_bound.and_then(|b| PolyBound::new(b.a.saturating_mul(2), b.k));
    out.collect_states();
    out
}

/// Extends a per-tape vector of a sub-machine to `n` tapes through `map`,
/// filling the other positions with `fill`.
pub(crate) fn embed<T: Copy>(v: &[T], map: &[usize], n: usize, fill: T) -> Vec<T> {
    let mut out = vec![fill; n];
    for (i, &x) in v.iter().enumerate() {
        out[map[i]] = x;
    }
    out
}

pub(crate) fn embed_transition(t: &Transition, map: &[usize], n: usize, rename: &impl Fn(&str) -> String) -> Transition {
    match t.map_states(rename) {
        Transition::Rw {
            source,
            read,
            target,
            write,
        } => Transition::Rw {
            source,
            read: embed(&read, map, n, BLANK),
            target,
            write: embed(&write, map, n, BLANK),
        },
        Transition::Shift {
            source,
            target,
            moves,
        } => Transition::Shift {
            source,
            target,
            moves: embed(&moves, map, n, Move::Stay),
        },
        Transition::Oracle(mut c) => {
            c.tape = map[c.tape];
            Transition::Oracle(c)
        }
        Transition::ReverseOracle(mut c) => {
            c.tape = map[c.tape];
            Transition::ReverseOracle(c)
        }
    }
}

fn with_prefix(t: &Transition, prefix: &str) -> Transition {
    let mut t = t.clone();
    if let Transition::Oracle(c) | Transition::ReverseOracle(c) = &mut t {
        c.prefix = format!("{prefix}{}", c.prefix);
    }
    t
}

/// Name of the disjoint union `{0w : w ∈ a} ∪ {1w : w ∈ b}`.
pub fn disjoint_union_name(a: &str, b: &str) -> String {
    format!("du({a}+{b})")
}

/// Runs `m1`, then `m2` on its output. The output tape of `m1` becomes the
/// input tape of `m2`, and the accept state of `m1` becomes the start state
/// of `m2`. `m1` is expected to leave its other tapes blank on accepting.
/// Two different oracles are merged into their disjoint union, each call
/// tagged with prefix `0` or `1`.
pub fn chain(m1: &Machine, m2: &Machine) -> Machine {
    let k1 = m1.tapes.len();
    let out1 = m1.output_tape();
    let in2 = m2.input_tape();
    let mut tapes: Vec<TapeSpec> = m1.tapes.clone();
    tapes[out1].role = TapeRole::Work;
    if m2.tapes[in2].kind == TapeKind::Rubber {
        tapes[out1].kind = TapeKind::Rubber;
    }
    let mut map2 = Vec::new();
    for (j, spec) in m2.tapes.iter().enumerate() {
        if j == in2 {
            map2.push(out1);
        } else {
            map2.push(tapes.len());
            tapes.push(*spec);
        }
    }
    let n = tapes.len();
    let map1: Vec<usize> = (0..k1).collect();
    let joint = format!("2.{}", m2.start);
    let acc1 = m1.accept.clone();
    let r1 = |s: &str| if s == acc1 { joint.clone() } else { format!("1.{s}") };
    let r2 = |s: &str| format!("2.{s}");

    let (oracle_name, p1, p2) = match (&m1.oracle_name, &m2.oracle_name) {
        (Some(a), Some(b)) if a != b && m1.has_oracle_calls() && m2.has_oracle_calls() => {
            (Some(disjoint_union_name(a, b)), "0", "1")
        }
        (Some(a), _) if m1.has_oracle_calls() => (Some(a.clone()), "", ""),
        (_, Some(b)) if m2.has_oracle_calls() => (Some(b.clone()), "", ""),
        (a, b) => (a.clone().or(b.clone()), "", ""),
    };
    let mut transitions = Vec::new();
    for t in &m1.transitions {
        transitions.push(with_prefix(&embed_transition(t, &map1, n, &r1), p1));
    }
    for t in &m2.transitions {
        transitions.push(with_prefix(&embed_transition(t, &map2, n, &r2), p2));
    }

    // |m1(x)| is at most B1(n), or T1(n) without a balance bound
    let mid = m1.balance_bound.or(m1.time_bound);
    let time_bound = match (m1.time_bound, m2.time_bound, mid) {
        (Some(t1), Some(t2), Some(b)) => PolyBound::dominating_sum(&[t1, PolyBound::compose(&t2, &b)]),
        _ => None,
    };
    let balance_bound = match (m1.balance_bound, m2.balance_bound) {
        (Some(b1), Some(b2)) => {
            PolyBound::dominating_sum(&[PolyBound::compose(&b2, &b1), PolyBound::compose(&b1, &b2)])
        }
        _ => None,
    };
    let mut m = Machine {
        name: format!("{}+{}", m1.name, m2.name),
        states: Vec::new(),
        start: r1(&m1.start),
        accept: r2(&m2.accept),
        tapes,
        transitions,
        time_bound,
        balance_bound,
        oracle_name,
    };
    m.collect_states();
    m
}

pub(crate) fn require_deterministic(m: &Machine) -> Result<(), TransformError> {
    if validate_deterministic(m).is_ok() {
        Ok(())
    } else {
        Err(TransformError::NotDeterministic(m.name.clone()))
    }
}

/// Every combination of symbols for the listed tapes.
pub(crate) fn combos(tapes: &[(usize, Vec<char>)]) -> Vec<BTreeMap<usize, char>> {
    let mut out = vec![BTreeMap::new()];
    for (i, syms) in tapes {
        out = out
            .into_iter()
            .flat_map(|m| {
                syms.iter().map(move |&c| {
                    let mut m = m.clone();
                    m.insert(*i, c);
                    m
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::machine::{extract_fn, run, run_traced, Limits, RunOutcome};

    #[test]
    fn transformed_machines_reparse() {
        let (inc, dec) = (corpus::inc(), corpus::dec());
        let made = [
            reverse(&inc),
            chain(&inc, &dec),
            bennett_garbage(&corpus::drop_last()).unwrap(),
            bennett_clean(&inc, &dec).unwrap(),
            simulate_reverse_oracle(&reverse(&corpus::tag("even"))),
        ];
        for m in made {
            let back = crate::machine::parse_machine(&m.to_string()).unwrap_or_else(|e| panic!("{}: {e}", m.name));
            assert_eq!(back, m);
        }
    }

    fn acc(y: &str) -> RunOutcome {
        RunOutcome::Accept(y.to_string())
    }

    #[test]
    fn reverse_identity_is_identity() {
        let id = corpus::identity();
        let r = reverse_flagged(&id);
        assert!(!r.nondeterministic);
        assert!(equivalent_up_to_renaming(&r.machine, &id));
    }

    #[test]
    fn reverse_g_expands() {
        let r = reverse(&corpus::g_machine());
        assert_eq!(run(&r, "000", None, Limits::default()), acc("00000000"));
        let (_, stats) = run_traced(&r, "00000", None, Limits::default());
        assert!(stats.steps >= 32);
    }

    #[test]
    fn double_reverse_is_original() {
        for m in corpus::all() {
            assert!(equivalent_up_to_renaming(&reverse(&reverse(&m)), &m), "{}", m.name);
        }
    }

    #[test]
    fn drop_last_reverse_is_flagged() {
        assert!(reverse_flagged(&corpus::drop_last()).nondeterministic);
    }

    #[test]
    fn reverse_inverts_corpus() {
        for m in corpus::injective_corpus() {
            let f = extract_fn(&m, 5, None);
            let r = reverse(&m);
            for (x, y) in f.iter() {
                assert_eq!(run(&r, y, None, Limits::default()), acc(x), "{} on {y}", m.name);
            }
        }
    }

    #[test]
    fn chain_examples() {
        let g = corpus::g_machine();
        let gg = chain(&g, &g);
        assert!(validate_injective(&gg).unwrap().is_ok());
        assert_eq!(run(&gg, &"0".repeat(16), None, Limits::default()), acc("00"));
        let ig = chain(&corpus::identity(), &g);
        for k in 0..=9 {
            let x = "0".repeat(k);
            assert_eq!(
                run(&ig, &x, None, Limits::default()),
                run(&g, &x, None, Limits::default()),
                "{x}"
            );
        }
        let ia = chain(&corpus::inc(), &corpus::append1());
        assert_eq!(run(&ia, "011", None, Limits::default()), acc("1001"));
    }

    #[test]
    fn chain_reverses_in_opposite_order() {
        let (a, b) = (corpus::inc(), corpus::append0());
        let lhs = reverse(&chain(&a, &b));
        let rhs = chain(&reverse(&b), &reverse(&a));
        assert!(equivalent_up_to_renaming(&lhs, &rhs));
    }

    #[test]
    fn chained_oracles_use_disjoint_union() {
        let t = corpus::tag("even");
        let mut u = corpus::tag("odd");
        u.name = "tag2".into();
        let c = chain(&t, &u);
        assert_eq!(c.oracle_name.as_deref(), Some("du(even+odd)"));
        let weight = |w: &str| w.chars().filter(|&c| c == '1').count();
        let du = move |w: &str| match w.split_at(1) {
            ("0", r) => weight(r) % 2 == 0,
            (_, r) => weight(r) % 2 == 1,
        };
        // "1" is odd: tag gives "10", which is odd again: "101"
        assert_eq!(run(&c, "1", Some(&du), Limits::default()), acc("101"));
    }

    #[test]
    fn reverse_oracle_simulation() {
        let even = |w: &str| w.chars().filter(|&c| c == '1').count() % 2 == 0;
        let t = corpus::tag("even");
        let r = reverse(&t);
        let s = simulate_reverse_oracle(&r);
        assert!(!s
            .transitions
            .iter()
            .any(|t| matches!(t, Transition::ReverseOracle(_))));
        assert_eq!(extract_fn(&r, 5, Some(&even)), extract_fn(&s, 5, Some(&even)));
        assert_eq!(run(&s, "1011", Some(&even), Limits::default()), acc("101"));
        // claims "yes" for a word outside the oracle
        assert_eq!(run(&s, "1001", Some(&even), Limits::default()), RunOutcome::Reject);
        let id = corpus::identity();
        assert_eq!(simulate_reverse_oracle(&id), id);
    }
}
