use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::{Machine, Move, OracleCall, State, Tape, TapeKind, Transition};
use crate::bits;
use crate::fnlab::FiniteFn;

/// Membership test used by oracle steps.
pub trait Oracle {
    fn contains(&self, word: &str) -> bool;
}

impl<F: Fn(&str) -> bool> Oracle for F {
    fn contains(&self, word: &str) -> bool {
        self(word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: State,
    pub tapes: Vec<Tape>,
    pub steps: u64,
}

impl Config {
    /// Start configuration: `input` on the input tape, head on its first
    /// symbol, every other tape blank.
    pub fn initial(m: &Machine, input: &str) -> Config {
        let mut tapes = vec![Tape::new(); m.tapes.len()];
        if let Some(t) = tapes.get_mut(m.input_tape()) {
            *t = Tape::with_word(input);
        }
        Config {
            state: m.start.clone(),
            tapes,
            steps: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("oracle step fired with no oracle bound")]
    OracleMissing,
    #[error("insert or delete on a normal tape")]
    IllegalRubberOp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(Config),
    Halt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RunOutcome {
    Accept(String),
    Reject,
    TimeExceeded,
    BalanceViolated,
    OracleMissing,
}

impl RunOutcome {
    pub fn output(&self) -> Option<&str> {
        match self {
            RunOutcome::Accept(y) => Some(y),
            _ => None,
        }
    }

    pub fn is_accept(&self) -> bool {
        matches!(self, RunOutcome::Accept(_))
    }
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunOutcome::Accept(y) => write!(f, "accept {y}"),
            RunOutcome::Reject => write!(f, "reject"),
            RunOutcome::TimeExceeded => write!(f, "time-exceeded"),
            RunOutcome::BalanceViolated => write!(f, "balance-violated"),
            RunOutcome::OracleMissing => write!(f, "oracle-missing"),
        }
    }
}

/// Overrides for `run`. By default the machine's own bounds are enforced
/// and there is no extra step cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub step_cap: Option<u64>,
    pub enforce_time: bool,
    pub enforce_balance: bool,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            step_cap: None,
            enforce_time: true,
            enforce_balance: true,
        }
    }
}

impl Limits {
    /// Ignore built-in bounds; stop after `cap` steps.
    pub fn unbounded(cap: u64) -> Limits {
        Limits {
            step_cap: Some(cap),
            enforce_time: false,
            enforce_balance: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub steps: u64,
}

enum Dispatch<'m> {
    Halt,
    /// Sorted by read vector.
    Rw(Vec<RwEntry<'m>>),
    /// Target, moves, and the deletes whose symbol must be under the head.
    Shift(u32, &'m [Move], Vec<(usize, char)>),
    /// A shift that inserts or deletes on a normal tape.
    IllegalShift,
    Oracle(&'m OracleCall, u32, u32),
    ReverseYes(&'m OracleCall, u32),
    ReverseNo(&'m OracleCall, u32),
}

struct RwEntry<'m> {
    /// `read` packed by `pack`, when the machine has few enough tapes.
    key: u128,
    read: &'m [char],
    target: u32,
    write: &'m [char],
}

/// Tapes whose read vector fits one packed key of 21 bits per symbol.
const PACKED_TAPES: usize = 6;

fn pack(syms: impl Iterator<Item = char>) -> u128 {
    let mut k = 0u128;
    for c in syms {
        k = k << 21 | c as u128;
    }
    k
}

/// A machine prepared for stepping: states interned, transitions indexed by
/// source state. Where a machine is nondeterministic the first transition in
/// table order wins.
pub struct Executor<'m> {
    machine: &'m Machine,
    names: Vec<&'m str>,
    index: HashMap<&'m str, u32>,
    dispatch: Vec<Dispatch<'m>>,
    start: u32,
    accept: u32,
}

impl<'m> Executor<'m> {
    pub fn new(machine: &'m Machine) -> Executor<'m> {
        let mut names: Vec<&'m str> = Vec::new();
        let mut index: HashMap<&'m str, u32> = HashMap::new();
        let mut intern = |s: &'m str| -> u32 {
            *index.entry(s).or_insert_with(|| {
                names.push(s);
                (names.len() - 1) as u32
            })
        };
        let start = intern(&machine.start);
        let accept = intern(&machine.accept);
        for s in &machine.states {
            intern(s);
        }
        for t in &machine.transitions {
            for s in t.states() {
                intern(s);
            }
        }
        let mut dispatch: Vec<Dispatch<'m>> = (0..names.len()).map(|_| Dispatch::Halt).collect();
        for t in &machine.transitions {
            match t {
                Transition::Rw {
                    source,
                    read,
                    target,
                    write,
                } => {
                    let d = &mut dispatch[index[source.as_str()] as usize];
                    if matches!(d, Dispatch::Halt) {
                        *d = Dispatch::Rw(Vec::new());
                    }
                    if let Dispatch::Rw(v) = d {
                        if !v.iter().any(|e| e.read == read.as_slice()) {
                            v.push(RwEntry {
                                key: pack(read.iter().copied()),
                                read,
                                target: index[target.as_str()],
                                write,
                            });
                        }
                    }
                }
                Transition::Shift {
                    source,
                    target,
                    moves,
                } => {
                    let d = &mut dispatch[index[source.as_str()] as usize];
                    if matches!(d, Dispatch::Halt) {
                        let legal = moves
                            .iter()
                            .zip(&machine.tapes)
                            .all(|(mv, t)| !mv.needs_rubber() || t.kind == TapeKind::Rubber);
                        let deletes = moves
                            .iter()
                            .enumerate()
                            .filter_map(|(i, mv)| match mv {
                                Move::Delete(c) => Some((i, *c)),
                                _ => None,
                            })
                            .collect();
                        *d = if legal {
                            Dispatch::Shift(index[target.as_str()], moves, deletes)
                        } else {
                            Dispatch::IllegalShift
                        };
                    }
                }
                Transition::Oracle(c) => {
                    let d = &mut dispatch[index[c.query.as_str()] as usize];
                    if matches!(d, Dispatch::Halt) {
                        *d = Dispatch::Oracle(c, index[c.yes.as_str()], index[c.no.as_str()]);
                    }
                }
                Transition::ReverseOracle(c) => {
                    let q = index[c.query.as_str()];
                    let d = &mut dispatch[index[c.yes.as_str()] as usize];
                    if matches!(d, Dispatch::Halt) {
                        *d = Dispatch::ReverseYes(c, q);
                    }
                    let d = &mut dispatch[index[c.no.as_str()] as usize];
                    if matches!(d, Dispatch::Halt) {
                        *d = Dispatch::ReverseNo(c, q);
                    }
                }
            }
        }
        for d in &mut dispatch {
            if let Dispatch::Rw(v) = d {
                v.sort_by(|a, b| a.read.cmp(b.read));
            }
        }
        Executor {
            machine,
            names,
            index,
            dispatch,
            start,
            accept,
        }
    }

    pub fn machine(&self) -> &'m Machine {
        self.machine
    }

    fn fire(&self, state: &mut u32, tapes: &mut [Tape], oracle: Option<&dyn Oracle>) -> Result<bool, StepError> {
        if *state == self.accept {
            return Ok(false);
        }
        let ask = |call: &OracleCall, tapes: &[Tape]| -> Result<bool, StepError> {
            let o = oracle.ok_or(StepError::OracleMissing)?;
            let mut word = call.prefix.clone();
            word.push_str(&tapes[call.tape].content());
            Ok(o.contains(&word))
        };
        let next = match &self.dispatch[*state as usize] {
            Dispatch::Halt => return Ok(false),
            Dispatch::Rw(entries) => {
                let found = if tapes.len() <= PACKED_TAPES {
                    let mut key = 0u128;
                    let mut i = 0;
                    while i < tapes.len() {
                        key = key << 21 | tapes[i].read() as u128;
                        i += 1;
                    }
                    let mut hit = None;
                    let mut j = 0;
                    while j < entries.len() {
                        if entries[j].key == key {
                            hit = Some(&entries[j]);
                            break;
                        }
                        j += 1;
                    }
                    hit
                } else {
                    let read: Vec<char> = tapes.iter().map(Tape::read).collect();
                    entries.iter().find(|e| e.read == read.as_slice())
                };
                let Some(e) = found else {
                    return Ok(false);
                };
                let mut i = 0;
                while i < e.write.len() {
                    tapes[i].write(e.write[i]);
                    i += 1;
                }
                e.target
            }
            Dispatch::IllegalShift => return Err(StepError::IllegalRubberOp),
            Dispatch::Shift(target, moves, deletes) => {
                let mut k = 0;
                while k < deletes.len() {
                    let (i, sym) = deletes[k];
                    if tapes[i].read() != sym {
                        return Ok(false);
                    }
                    k += 1;
                }
                let mut i = 0;
                while i < moves.len() {
                    match moves[i] {
                        Move::Left => tapes[i].move_left(),
                        Move::Right => tapes[i].move_right(),
                        Move::Stay => {}
                        Move::Insert(s) => tapes[i].insert(s),
                        Move::Delete(_) => tapes[i].delete(),
                    }
                    i += 1;
                }
                *target
            }
            Dispatch::Oracle(call, yes, no) => {
                if ask(call, tapes)? {
                    *yes
                } else {
                    *no
                }
            }
            Dispatch::ReverseYes(call, q) => {
                if !ask(call, tapes)? {
                    return Ok(false);
                }
                *q
            }
            Dispatch::ReverseNo(call, q) => {
                if ask(call, tapes)? {
                    return Ok(false);
                }
                *q
            }
        };
        *state = next;
        Ok(true)
    }

    /// Applies one transition in place. Returns `false` on halt.
    pub fn step(&self, c: &mut Config, oracle: Option<&dyn Oracle>) -> Result<bool, StepError> {
        let Some(&(mut state)) = self.index.get(c.state.as_str()) else {
            return Ok(false);
        };
        if !self.fire(&mut state, &mut c.tapes, oracle)? {
            return Ok(false);
        }
        c.state = self.names[state as usize].to_string();
        c.steps += 1;
        Ok(true)
    }

    pub fn run(&self, input: &str, oracle: Option<&dyn Oracle>, limits: Limits) -> (RunOutcome, RunStats) {
        let mut r = Runner::new(self, input, limits);
        loop {
            if let Some(out) = r.advance(u64::MAX, oracle) {
                return (out, RunStats { steps: r.steps });
            }
        }
    }
}

/// A run that can be advanced in slices, for dovetailing.
pub struct Runner<'e, 'm> {
    exec: &'e Executor<'m>,
    state: u32,
    tapes: Vec<Tape>,
    steps: u64,
    input_len: u64,
    ceiling: Option<u64>,
    limits: Limits,
    done: Option<RunOutcome>,
}

impl<'e, 'm> Runner<'e, 'm> {
    pub fn new(exec: &'e Executor<'m>, input: &str, limits: Limits) -> Runner<'e, 'm> {
        let m = exec.machine;
        let input_len = input.chars().count() as u64;
        let by_bound = m
            .time_bound
            .filter(|_| limits.enforce_time)
            .map(|b| b.eval(input_len));
        let ceiling = match (by_bound, limits.step_cap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let init = Config::initial(m, input);
        Runner {
            exec,
            state: exec.start,
            tapes: init.tapes,
            steps: 0,
            input_len,
            ceiling,
            limits,
            done: None,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn config(&self) -> Config {
        Config {
            state: self.exec.names[self.state as usize].to_string(),
            tapes: self.tapes.clone(),
            steps: self.steps,
        }
    }

    /// Runs at most `budget` steps. Returns the outcome once the run ends.
    pub fn advance(&mut self, budget: u64, oracle: Option<&dyn Oracle>) -> Option<RunOutcome> {
        if let Some(d) = &self.done {
            return Some(d.clone());
        }
        let mut used = 0u64;
        let ceiling = self.ceiling.unwrap_or(u64::MAX);
        let out = loop {
            if self.state == self.exec.accept {
                break self.accept_outcome();
            }
            if self.steps >= ceiling {
                break RunOutcome::TimeExceeded;
            }
            if used >= budget {
                return None;
            }
            match self.exec.fire(&mut self.state, &mut self.tapes, oracle) {
                Ok(true) => {
                    used += 1;
                    self.steps += 1;
                }
                Ok(false) => break RunOutcome::Reject,
                Err(StepError::OracleMissing) => break RunOutcome::OracleMissing,
                // unreachable for machines passing check_structure
                Err(StepError::IllegalRubberOp) => break RunOutcome::Reject,
            }
        };
        self.done = Some(out.clone());
        Some(out)
    }

    fn accept_outcome(&self) -> RunOutcome {
        let m = self.exec.machine;
        let out = self.tapes[m.output_tape()].content();
        if self.limits.enforce_balance {
            if let Some(p) = m.balance_bound {
                let n_out = out.chars().count() as u64;
                if n_out > p.eval(self.input_len) || self.input_len > p.eval(n_out) {
                    return RunOutcome::BalanceViolated;
                }
            }
        }
        RunOutcome::Accept(out)
    }
}

/// One step of `m` from `c`.
pub fn step(m: &Machine, c: &Config, oracle: Option<&dyn Oracle>) -> Result<Step, StepError> {
    let exec = Executor::new(m);
    let mut next = c.clone();
    if exec.step(&mut next, oracle)? {
        Ok(Step::Next(next))
    } else {
        Ok(Step::Halt)
    }
}

pub fn run(m: &Machine, input: &str, oracle: Option<&dyn Oracle>, limits: Limits) -> RunOutcome {
    Executor::new(m).run(input, oracle, limits).0
}

/// Like `run`, also reporting the number of steps taken.
pub fn run_traced(m: &Machine, input: &str, oracle: Option<&dyn Oracle>, limits: Limits) -> (RunOutcome, RunStats) {
    Executor::new(m).run(input, oracle, limits)
}

/// Table of `m` on every input of length at most `max_len`. Inputs that do
/// not accept are simply absent.
pub fn extract_fn(m: &Machine, max_len: usize, oracle: Option<&dyn Oracle>) -> FiniteFn {
    extract_fn_with(m, max_len, oracle, Limits::default())
}

pub fn extract_fn_with(m: &Machine, max_len: usize, oracle: Option<&dyn Oracle>, limits: Limits) -> FiniteFn {
    let exec = Executor::new(m);
    let mut f = FiniteFn::new();
    for x in bits::words_up_to(max_len) {
        if let (RunOutcome::Accept(y), _) = exec.run(&x, oracle, limits) {
            f.insert(&x, &y);
        }
    }
    f
}
