use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::machine::{Machine, Move, Transition};

/// Reorders tapes: new tape `i` is old tape `perm[i]`.
pub fn permute_tapes(m: &Machine, perm: &[usize]) -> Machine {
    let mut inv = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let pick = |v: &[char]| perm.iter().map(|&o| v[o]).collect::<Vec<_>>();
    let pick_moves = |v: &[Move]| perm.iter().map(|&o| v[o]).collect::<Vec<_>>();
    let mut out = m.clone();
    out.tapes = perm.iter().map(|&o| m.tapes[o]).collect();
    out.transitions = m
        .transitions
        .iter()
        .map(|t| match t {
            Transition::Rw {
                source,
                read,
                target,
                write,
            } => Transition::Rw {
                source: source.clone(),
                read: pick(read),
                target: target.clone(),
                write: pick(write),
            },
            Transition::Shift {
                source,
                target,
                moves,
            } => Transition::Shift {
                source: source.clone(),
                target: target.clone(),
                moves: pick_moves(moves),
            },
            Transition::Oracle(c) => {
                let mut c = c.clone();
                c.tape = inv[c.tape];
                Transition::Oracle(c)
            }
            Transition::ReverseOracle(c) => {
                let mut c = c.clone();
                c.tape = inv[c.tape];
                Transition::ReverseOracle(c)
            }
        })
        .collect();
    out
}

/// A name-free description of a transition seen from one endpoint.
fn shape(t: &Transition) -> String {
    let blank = t.map_states(&|_| String::new());
    format!("{blank:?}")
}

/// Tapes stably sorted by role, states renamed `q0, q1, ...` in breadth-first
/// order from the start state (then from the accept state backwards),
/// transitions sorted. Machine name and bounds are dropped.
pub fn canonical_form(m: &Machine) -> Machine {
    let mut perm: Vec<usize> = (0..m.tapes.len()).collect();
    perm.sort_by_key(|&i| m.tapes[i].role);
    let m = permute_tapes(m, &perm);

    let mut out_edges: Edges = HashMap::new();
    let mut in_edges: Edges = HashMap::new();
    for t in &m.transitions {
        let sh = shape(t);
        let targets: Vec<&str> = t.targets().into_iter().map(|s| s.as_str()).collect();
        let sources: Vec<&str> = t.sources().into_iter().map(|s| s.as_str()).collect();
        for s in &sources {
            out_edges.entry(s).or_default().push((sh.clone(), targets.clone()));
        }
        for s in &targets {
            in_edges.entry(s).or_default().push((sh.clone(), sources.clone()));
        }
    }
    for v in out_edges.values_mut().chain(in_edges.values_mut()) {
        v.sort();
    }

    let mut names: BTreeMap<&str, String> = BTreeMap::new();
    visit(vec![m.start.as_str()], &out_edges, &mut names);
    visit(vec![m.accept.as_str()], &in_edges, &mut names);
    let mut rest: Vec<&str> = m.states.iter().map(|s| s.as_str()).collect();
    rest.sort();
    visit(rest, &out_edges, &mut names);

    let rename = |s: &str| names.get(s).cloned().unwrap_or_else(|| s.to_string());
    let mut transitions: Vec<Transition> = m.transitions.iter().map(|t| t.map_states(&rename)).collect();
    transitions.sort_by_key(|t| format!("{t:?}"));
    transitions.dedup();
    let mut states: Vec<String> = m.states.iter().map(|s| rename(s)).collect();
    states.sort_by_key(|s| s[1..].parse::<usize>().unwrap_or(usize::MAX));
    Machine {
        name: "canonical".into(),
        states,
        start: rename(&m.start),
        accept: rename(&m.accept),
        tapes: m.tapes.clone(),
        transitions,
        time_bound: None,
        balance_bound: None,
        oracle_name: m.oracle_name.clone(),
    }
}

type Edges<'a> = HashMap<&'a str, Vec<(String, Vec<&'a str>)>>;

fn visit<'a>(roots: Vec<&'a str>, edges: &Edges<'a>, names: &mut BTreeMap<&'a str, String>) {
    let mut queue: VecDeque<&str> = VecDeque::new();
    let name = |s: &'a str, names: &mut BTreeMap<&'a str, String>, queue: &mut VecDeque<&'a str>| {
        if !names.contains_key(s) {
            let q = format!("q{}", names.len());
            names.insert(s, q);
            queue.push_back(s);
        }
    };
    for r in roots {
        name(r, names, &mut queue);
    }
    while let Some(s) = queue.pop_front() {
        for (_, nbrs) in edges.get(s).into_iter().flatten() {
            for &n in nbrs {
                name(n, names, &mut queue);
            }
        }
    }
}

/// Equal after `canonical_form`; names and bounds are ignored.
pub fn equivalent_up_to_renaming(a: &Machine, b: &Machine) -> bool {
    canonical_form(a) == canonical_form(b)
}
