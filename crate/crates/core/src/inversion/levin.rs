use std::collections::BTreeMap;

use super::{window, InversionError};
use crate::bits;
use crate::codec::Program;
use crate::machine::{Executor, Limits, Machine, RunOutcome, Runner};

/// Key of the built-in exhaustive inverter in `per_program_steps`.
pub const FALLBACK_ID: &str = "fallback";
/// Key of the steps spent checking candidate answers.
pub const VERIFY_ID: &str = "verify";

/// Shares stop doubling past this slot.
const MAX_SHARE_EXP: usize = 24;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub steps_total: u64,
    pub programs_tried: usize,
    pub winner: Option<String>,
    pub per_program_steps: BTreeMap<String, u64>,
}

enum Progress {
    Running,
    Emitted(String),
    Finished,
}

/// Runs `w` on every word of the window in order, emitting the first whose
/// output is the target.
struct Exhaustive<'e, 'm> {
    exec: &'e Executor<'m>,
    words: Box<dyn Iterator<Item = String>>,
    current: Option<(String, Runner<'e, 'm>)>,
    target: String,
}

impl<'e, 'm> Exhaustive<'e, 'm> {
    fn advance(&mut self, budget: u64, used: &mut u64) -> Progress {
        loop {
            if self.current.is_none() {
                match self.words.next() {
                    Some(x) => {
                        let r = Runner::new(self.exec, &x, Limits::default());
                        self.current = Some((x, r));
                    }
                    None => return Progress::Finished,
                }
            }
            let (x, r) = self.current.as_mut().expect("current run");
            let before = r.steps();
            let out = r.advance(budget - *used, None);
            *used += r.steps() - before;
            match out {
                None => return Progress::Running,
                Some(RunOutcome::Accept(y)) if y == self.target => {
                    let x = x.clone();
                    self.current = None;
                    return Progress::Emitted(x);
                }
                Some(_) => self.current = None,
            }
            if *used >= budget {
                return Progress::Running;
            }
        }
    }
}

enum Slot<'e, 'm> {
    Fallback(Exhaustive<'e, 'm>),
    Candidate(Runner<'e, 'm>),
    Dead,
}

impl<'e, 'm> Slot<'e, 'm> {
    fn advance(&mut self, budget: u64) -> (u64, Progress) {
        let mut used = 0;
        let p = match self {
            Slot::Fallback(ex) => ex.advance(budget, &mut used),
            Slot::Candidate(r) => {
                let before = r.steps();
                let out = r.advance(budget, None);
                used = r.steps() - before;
                match out {
                    None => Progress::Running,
                    Some(RunOutcome::Accept(x)) => Progress::Emitted(x),
                    Some(_) => Progress::Finished,
                }
            }
            Slot::Dead => Progress::Finished,
        };
        (used, p)
    }
}

/// Inverts `w` at `y` by dovetailing the exhaustive inverter (slot 0) with
/// the registry programs (slot `i` for registry entry `i - 1`). Each round
/// slot `i` gets `2^i` steps. Every emitted answer is checked by running `w`.
pub fn levin_invert(registry: &[Program], w: &Program, y: &str) -> Result<(String, SearchStats), InversionError> {
    let wm = w.machine()?;
    let max = window(&wm, y)?;
    let machines: Vec<Machine> = registry.iter().map(|p| p.machine()).collect::<Result<_, _>>()?;
    let w_exec = Executor::new(&wm);
    let execs: Vec<Executor> = machines.iter().map(Executor::new).collect();

    let mut ids = vec![FALLBACK_ID.to_string()];
    ids.extend(machines.iter().enumerate().map(|(i, m)| format!("{}:{}", i + 1, m.name)));
    let mut slots = vec![Slot::Fallback(Exhaustive {
        exec: &w_exec,
        words: Box::new(bits::words_up_to(max)),
        current: None,
        target: y.to_string(),
    })];
    slots.extend(execs.iter().map(|e| Slot::Candidate(Runner::new(e, y, Limits::default()))));

    let mut stats = SearchStats {
        programs_tried: slots.len(),
        ..SearchStats::default()
    };
    for id in ids.iter().chain([&VERIFY_ID.to_string()]) {
        stats.per_program_steps.insert(id.clone(), 0);
    }
    let charge = |stats: &mut SearchStats, id: &str, n: u64| {
        *stats.per_program_steps.get_mut(id).expect("known id") += n;
        stats.steps_total += n;
    };
    loop {
        for (i, slot) in slots.iter_mut().enumerate() {
            let share = 1u64 << i.min(MAX_SHARE_EXP);
            let (used, progress) = slot.advance(share);
            charge(&mut stats, &ids[i], used);
            match progress {
                Progress::Running => {}
                Progress::Emitted(x) => {
                    let (out, rs) = w_exec.run(&x, None, Limits::default());
                    charge(&mut stats, VERIFY_ID, rs.steps);
                    if out == RunOutcome::Accept(y.to_string()) {
                        stats.winner = Some(ids[i].clone());
                        return Ok((x, stats));
                    }
                    if !matches!(slot, Slot::Fallback(_)) {
                        *slot = Slot::Dead;
                    }
                }
                Progress::Finished => {
                    if matches!(slot, Slot::Fallback(_)) {
                        return Err(InversionError::NotInImage(y.to_string()));
                    }
                    *slot = Slot::Dead;
                }
            }
        }
    }
}
