//! Multi-tape deterministic Turing machines with quadruple-style
//! transitions: a state either reads and writes all heads at once (`Rw`) or
//! moves all heads at once (`Shift`), never both.

mod bound;
mod exec;
mod parse;
mod tape;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use bound::PolyBound;
pub use exec::{
    extract_fn, extract_fn_with, run, run_traced, step, Config, Executor, Limits, Oracle, RunOutcome,
    RunStats, Runner, Step, StepError,
};
pub use parse::{parse_machine, ParseError};
pub use tape::Tape;
pub use validate::{validate_deterministic, validate_injective, Conflict, ValidationReport, ValidateError};

pub type State = String;

pub const BLANK: char = '_';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TapeRole {
    Input,
    Output,
    Work,
    History,
    Query,
}

impl TapeRole {
    pub fn as_str(self) -> &'static str {
        match self {
            TapeRole::Input => "input",
            TapeRole::Output => "output",
            TapeRole::Work => "work",
            TapeRole::History => "history",
            TapeRole::Query => "query",
        }
    }

    pub fn parse(s: &str) -> Option<TapeRole> {
        Some(match s {
            "input" => TapeRole::Input,
            "output" => TapeRole::Output,
            "work" => TapeRole::Work,
            "history" => TapeRole::History,
            "query" => TapeRole::Query,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TapeKind {
    Normal,
    Rubber,
}

impl TapeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TapeKind::Normal => "normal",
            TapeKind::Rubber => "rubber",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TapeSpec {
    pub role: TapeRole,
    pub kind: TapeKind,
}

impl TapeSpec {
    pub fn new(role: TapeRole, kind: TapeKind) -> TapeSpec {
        TapeSpec { role, kind }
    }
}

/// Head action of a SHIFT transition. `Delete` names the symbol it removes
/// so that the reverse insertion is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Right,
    Stay,
    Insert(char),
    Delete(char),
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::Left => Move::Right,
            Move::Right => Move::Left,
            Move::Stay => Move::Stay,
            Move::Insert(c) => Move::Delete(c),
            Move::Delete(c) => Move::Insert(c),
        }
    }

    pub fn needs_rubber(self) -> bool {
        matches!(self, Move::Insert(_) | Move::Delete(_))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Left => write!(f, "L"),
            Move::Right => write!(f, "R"),
            Move::Stay => write!(f, "S"),
            Move::Insert(c) => write!(f, "I({c})"),
            Move::Delete(c) => write!(f, "D({c})"),
        }
    }
}

/// One oracle call site: in `query` the machine asks whether
/// `prefix ++ content(tape)` belongs to the oracle and moves to `yes` or
/// `no`. Tapes are untouched.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OracleCall {
    pub query: State,
    pub yes: State,
    pub no: State,
    pub tape: usize,
    pub prefix: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Transition {
    Rw {
        source: State,
        read: Vec<char>,
        target: State,
        write: Vec<char>,
    },
    Shift {
        source: State,
        target: State,
        moves: Vec<Move>,
    },
    /// Forward call, `query -> yes | no`.
    Oracle(OracleCall),
    /// Reverse call, `yes -> query` when the word is in the oracle and
    /// `no -> query` when it is not; the inconsistent case halts.
    ReverseOracle(OracleCall),
}

impl Transition {
    pub fn rw(source: &str, read: &[char], target: &str, write: &[char]) -> Transition {
        Transition::Rw {
            source: source.to_string(),
            read: read.to_vec(),
            target: target.to_string(),
            write: write.to_vec(),
        }
    }

    pub fn shift(source: &str, target: &str, moves: &[Move]) -> Transition {
        Transition::Shift {
            source: source.to_string(),
            target: target.to_string(),
            moves: moves.to_vec(),
        }
    }

    /// States this transition can fire from.
    pub fn sources(&self) -> Vec<&State> {
        match self {
            Transition::Rw { source, .. } | Transition::Shift { source, .. } => vec![source],
            Transition::Oracle(c) => vec![&c.query],
            Transition::ReverseOracle(c) => vec![&c.yes, &c.no],
        }
    }

    /// States this transition can land in.
    pub fn targets(&self) -> Vec<&State> {
        match self {
            Transition::Rw { target, .. } | Transition::Shift { target, .. } => vec![target],
            Transition::Oracle(c) => vec![&c.yes, &c.no],
            Transition::ReverseOracle(c) => vec![&c.query],
        }
    }

    pub fn states(&self) -> Vec<&State> {
        let mut v = self.sources();
        v.extend(self.targets());
        v
    }

    pub fn map_states(&self, f: &impl Fn(&str) -> String) -> Transition {
        let call = |c: &OracleCall| OracleCall {
            query: f(&c.query),
            yes: f(&c.yes),
            no: f(&c.no),
            tape: c.tape,
            prefix: c.prefix.clone(),
        };
        match self {
            Transition::Rw {
                source,
                read,
                target,
                write,
            } => Transition::Rw {
                source: f(source),
                read: read.clone(),
                target: f(target),
                write: write.clone(),
            },
            Transition::Shift {
                source,
                target,
                moves,
            } => Transition::Shift {
                source: f(source),
                target: f(target),
                moves: moves.clone(),
            },
            Transition::Oracle(c) => Transition::Oracle(call(c)),
            Transition::ReverseOracle(c) => Transition::ReverseOracle(call(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Machine {
    pub name: String,
    pub states: Vec<State>,
    pub start: State,
    pub accept: State,
    pub tapes: Vec<TapeSpec>,
    pub transitions: Vec<Transition>,
    pub time_bound: Option<PolyBound>,
    pub balance_bound: Option<PolyBound>,
    pub oracle_name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("state `{0}` is used but not declared")]
    UndeclaredState(String),
    #[error("state `{0}` is declared twice")]
    DuplicateState(String),
    #[error("expected exactly one {0} tape, found {1}")]
    TapeRoleCount(&'static str, usize),
    #[error("transition {index} has {found} entries for {tapes} tapes")]
    VectorLength {
        index: usize,
        found: usize,
        tapes: usize,
    },
    #[error("transition {0} leaves the accept state")]
    LeavesAccept(usize),
    #[error("transition {0} inserts or deletes on a normal tape")]
    IllegalRubberOp(usize),
    #[error("transition {0} is an oracle call but the machine names no oracle")]
    NoOracleName(usize),
    #[error("transition {0} queries tape {1}, which does not exist")]
    BadQueryTape(usize, usize),
    #[error("state `{0}` mixes transition kinds")]
    MixedKinds(String),
}

impl Machine {
    pub fn input_tape(&self) -> usize {
        self.tape_with_role(TapeRole::Input).unwrap_or(0)
    }

    pub fn output_tape(&self) -> usize {
        self.tape_with_role(TapeRole::Output).unwrap_or(0)
    }

    pub fn tape_with_role(&self, role: TapeRole) -> Option<usize> {
        self.tapes.iter().position(|t| t.role == role)
    }

    pub fn has_oracle_calls(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| matches!(t, Transition::Oracle(_) | Transition::ReverseOracle(_)))
    }

    /// Symbols that can appear on each tape: blank, the input bits, and
    /// every symbol mentioned for that tape by some transition.
    pub fn tape_alphabets(&self) -> Vec<BTreeSet<char>> {
        let mut out: Vec<BTreeSet<char>> = self
            .tapes
            .iter()
            .map(|spec| {
                let mut s = BTreeSet::from([BLANK]);
                if spec.role == TapeRole::Input {
                    s.extend(['0', '1']);
                }
                s
            })
            .collect();
        for t in &self.transitions {
            match t {
                Transition::Rw { read, write, .. } => {
                    for (i, (r, w)) in read.iter().zip(write).enumerate() {
                        if let Some(s) = out.get_mut(i) {
                            s.insert(*r);
                            s.insert(*w);
                        }
                    }
                }
                Transition::Shift { moves, .. } => {
                    for (i, mv) in moves.iter().enumerate() {
                        if let (Move::Insert(c) | Move::Delete(c), Some(s)) = (mv, out.get_mut(i)) {
                            s.insert(*c);
                        }
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// Structural well-formedness, independent of determinism.
    pub fn check_structure(&self) -> Result<(), MachineError> {
        let mut seen = BTreeSet::new();
        for s in &self.states {
            if !seen.insert(s.as_str()) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        for s in [&self.start, &self.accept] {
            if !seen.contains(s.as_str()) {
                return Err(MachineError::UndeclaredState(s.clone()));
            }
        }
        for (role, name) in [(TapeRole::Input, "input"), (TapeRole::Output, "output")] {
            let n = self.tapes.iter().filter(|t| t.role == role).count();
            if n != 1 {
                return Err(MachineError::TapeRoleCount(name, n));
            }
        }
        let k = self.tapes.len();
        for (i, t) in self.transitions.iter().enumerate() {
            for s in t.states() {
                if !seen.contains(s.as_str()) {
                    return Err(MachineError::UndeclaredState(s.clone()));
                }
            }
            if t.sources().into_iter().any(|s| *s == self.accept) {
                return Err(MachineError::LeavesAccept(i));
            }
            match t {
                Transition::Rw { read, write, .. } => {
                    for v in [read, write] {
                        if v.len() != k {
                            return Err(MachineError::VectorLength {
                                index: i,
                                found: v.len(),
                                tapes: k,
                            });
                        }
                    }
                }
                Transition::Shift { moves, .. } => {
                    if moves.len() != k {
                        return Err(MachineError::VectorLength {
                            index: i,
                            found: moves.len(),
                            tapes: k,
                        });
                    }
                    let bad = moves
                        .iter()
                        .zip(&self.tapes)
                        .any(|(m, spec)| m.needs_rubber() && spec.kind != TapeKind::Rubber);
                    if bad {
                        return Err(MachineError::IllegalRubberOp(i));
                    }
                }
                Transition::Oracle(c) | Transition::ReverseOracle(c) => {
                    if self.oracle_name.is_none() {
                        return Err(MachineError::NoOracleName(i));
                    }
                    if c.tape >= k {
                        return Err(MachineError::BadQueryTape(i, c.tape));
                    }
                }
            }
        }
        // a state fires either RW transitions or a single other kind
        let mut kinds: std::collections::BTreeMap<&str, bool> = Default::default();
        for t in &self.transitions {
            let is_rw = matches!(t, Transition::Rw { .. });
            for s in t.sources() {
                match kinds.get(s.as_str()) {
                    Some(&prev) if prev != is_rw => {
                        return Err(MachineError::MixedKinds(s.clone()));
                    }
                    _ => {
                        kinds.insert(s.as_str(), is_rw);
                    }
                }
            }
        }
        Ok(())
    }

    /// Rebuilds `states` from start, accept and transitions in first-seen
    /// order, dropping unused declarations.
    pub fn collect_states(&mut self) {
        let mut seen = BTreeSet::new();
        let mut states = Vec::new();
        let mut add = |s: &State| {
            if seen.insert(s.clone()) {
                states.push(s.clone());
            }
        };
        add(&self.start);
        for t in &self.transitions {
            for s in t.states() {
                add(s);
            }
        }
        add(&self.accept);
        self.states = states;
    }
}

/// Small helper for assembling machines in code.
pub struct MachineBuilder {
    machine: Machine,
}

impl MachineBuilder {
    pub fn new(name: &str, tapes: &[TapeSpec]) -> MachineBuilder {
        MachineBuilder {
            machine: Machine {
                name: name.to_string(),
                states: Vec::new(),
                start: String::new(),
                accept: String::new(),
                tapes: tapes.to_vec(),
                transitions: Vec::new(),
                time_bound: None,
                balance_bound: None,
                oracle_name: None,
            },
        }
    }

    /// `read` and `write` give one symbol per tape, e.g. `"0_"`.
    pub fn rw(&mut self, source: &str, read: &str, target: &str, write: &str) -> &mut Self {
        let read: Vec<char> = read.chars().collect();
        let write: Vec<char> = write.chars().collect();
        self.machine
            .transitions
            .push(Transition::rw(source, &read, target, &write));
        self
    }

    pub fn shift(&mut self, source: &str, target: &str, moves: &[Move]) -> &mut Self {
        self.machine
            .transitions
            .push(Transition::shift(source, target, moves));
        self
    }

    pub fn transition(&mut self, t: Transition) -> &mut Self {
        self.machine.transitions.push(t);
        self
    }

    pub fn oracle(&mut self, name: &str, call: OracleCall) -> &mut Self {
        self.machine.oracle_name = Some(name.to_string());
        self.machine.transitions.push(Transition::Oracle(call));
        self
    }

    pub fn time(&mut self, a: u64, k: u32) -> &mut Self {
        self.machine.time_bound = PolyBound::new(a, k);
        self
    }

    pub fn balance(&mut self, a: u64, k: u32) -> &mut Self {
        self.machine.balance_bound = PolyBound::new(a, k);
        self
    }

    pub fn build(&mut self, start: &str, accept: &str) -> Machine {
        let mut m = self.machine.clone();
        m.start = start.to_string();
        m.accept = accept.to_string();
        m.collect_states();
        m
    }
}

impl fmt::Display for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::print_machine(self))
    }
}
