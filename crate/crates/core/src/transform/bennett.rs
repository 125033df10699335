//! History-tape embeddings. A simulated step of `m` writes a record symbol
//! naming the fired transition on a history tape and moves that head right.
//! Every state of `m` that can be entered is reached through a `pre` state
//! whose incoming writes differ in the record symbol, so the embedding is
//! reverse-deterministic whatever `m` is. Uncomputing is the syntactic
//! reverse of the same transitions.

use std::collections::BTreeSet;

use super::{combos, require_deterministic, reverse_transition, TransformError, REVERSE_MARK};
use crate::bits;
use crate::machine::{
    run, Limits, Machine, Move, OracleCall, PolyBound, RunOutcome, TapeKind, TapeRole, TapeSpec, Transition,
    BLANK,
};

/// Inputs up to this length are used to check that two machines invert
/// each other before `bennett_clean` combines them.
pub const INVERSE_CHECK_LEN: usize = 6;

/// Marks the history cell where the output copy starts.
const COPY_MARK: char = '$';

/// History record `i`, drawn from a block of letters no corpus machine uses.
pub fn history_symbol(i: usize) -> char {
    char::from_u32(0x4E00 + i as u32).expect("history symbol in range")
}

struct Layout {
    n: usize,
    /// Big-tape index of each tape of the simulated machine.
    map: Vec<usize>,
    history: usize,
    /// Other tapes and the symbols their heads may show during the phase.
    bystanders: Vec<(usize, Vec<char>)>,
}

impl Layout {
    /// A full symbol vector: `m`'s part through `map`, the given extras,
    /// blanks elsewhere.
    fn vector(&self, part: &[char], extra: &[(usize, char)]) -> Vec<char> {
        let mut v = vec![BLANK; self.n];
        for (i, &c) in part.iter().enumerate() {
            v[self.map[i]] = c;
        }
        for &(i, c) in extra {
            v[i] = c;
        }
        v
    }
}

/// Forward simulation of `m` with a history, states named under `p`. Entry
/// state `{p}>` reads the initial configuration; `{p}.{accept}` is reached
/// when `m` accepts.
fn history_phase(m: &Machine, p: &str, lay: &Layout) -> Vec<Transition> {
    let state = |s: &str| format!("{p}.{s}");
    let pre = |s: &str| format!("{p}^{s}");
    let alphabets = m.tape_alphabets();
    let by_combo = combos(&lay.bystanders);
    let k = m.tapes.len();
    let mut out = Vec::new();
    let mut entered: BTreeSet<String> = BTreeSet::new();
    let with = |c: &std::collections::BTreeMap<usize, char>, h: char| -> Vec<(usize, char)> {
        let mut v: Vec<(usize, char)> = c.iter().map(|(&i, &s)| (i, s)).collect();
        v.push((lay.history, h));
        v
    };
    // from a fresh state, record `sym` whatever the heads show and move on
    let record = |out: &mut Vec<Transition>, from: &str, to: &str, sym: char| {
        let own: Vec<(usize, Vec<char>)> = (0..k).map(|i| (i, alphabets[i].iter().copied().collect())).collect();
        for mine in combos(&own) {
            let part: Vec<char> = (0..k).map(|i| mine[&i]).collect();
            for c in &by_combo {
                out.push(Transition::rw(
                    from,
                    &lay.vector(&part, &with(c, BLANK)),
                    &pre(to),
                    &lay.vector(&part, &with(c, sym)),
                ));
            }
        }
    };
    for (i, t) in m.transitions.iter().enumerate() {
        let main = history_symbol(2 * i);
        let alt = history_symbol(2 * i + 1);
        match t {
            Transition::Rw {
                source,
                read,
                target,
                write,
            } => {
                for c in &by_combo {
                    out.push(Transition::rw(
                        &state(source),
                        &lay.vector(read, &with(c, BLANK)),
                        &pre(target),
                        &lay.vector(write, &with(c, main)),
                    ));
                }
                entered.insert(target.clone());
            }
            Transition::Shift {
                source,
                target,
                moves,
            } => {
                let hop = format!("{p}!{i}");
                let mut mv = vec![Move::Stay; lay.n];
                for (j, &x) in moves.iter().enumerate() {
                    mv[lay.map[j]] = x;
                }
                out.push(Transition::shift(&state(source), &hop, &mv));
                record(&mut out, &hop, target, main);
                entered.insert(target.clone());
            }
            Transition::Oracle(c) => {
                let (hy, hn) = (format!("{p}!{i}y"), format!("{p}!{i}n"));
                out.push(Transition::Oracle(OracleCall {
                    query: state(&c.query),
                    yes: hy.clone(),
                    no: hn.clone(),
                    tape: lay.map[c.tape],
                    prefix: c.prefix.clone(),
                }));
                record(&mut out, &hy, &c.yes, main);
                record(&mut out, &hn, &c.no, alt);
                entered.insert(c.yes.clone());
                entered.insert(c.no.clone());
            }
            Transition::ReverseOracle(c) => {
                let hop = format!("{p}!{i}");
                out.push(Transition::ReverseOracle(OracleCall {
                    query: hop.clone(),
                    yes: state(&c.yes),
                    no: state(&c.no),
                    tape: lay.map[c.tape],
                    prefix: c.prefix.clone(),
                }));
                record(&mut out, &hop, &c.query, main);
                entered.insert(c.query.clone());
            }
        }
    }
    // the entry reads the start configuration: only the input head shows a
    // symbol
    let start_sym = history_symbol(2 * m.transitions.len());
    let input = m.input_tape();
    for first in ['0', '1', BLANK] {
        let mut part = vec![BLANK; k];
        part[input] = first;
        for c in &by_combo {
            out.push(Transition::rw(
                &format!("{p}>"),
                &lay.vector(&part, &with(c, BLANK)),
                &pre(&m.start),
                &lay.vector(&part, &with(c, start_sym)),
            ));
        }
    }
    entered.insert(m.start.clone());
    let mut hop = vec![Move::Stay; lay.n];
    hop[lay.history] = Move::Right;
    for s in entered {
        out.push(Transition::shift(&pre(&s), &state(&s), &hop));
    }
    out
}

fn uncompute(forward: &[Transition]) -> Vec<Transition> {
    let rename = |s: &str| format!("{s}{REVERSE_MARK}");
    forward.iter().rev().map(|t| reverse_transition(t, &rename)).collect()
}

/// Copies the word under the head of `src` onto blank tape `dst` and returns
/// both heads to its first cell, keeping `history` (head on a blank past the
/// records) in step so the start can be found again. Runs `from -> to`.
#[allow(clippy::too_many_arguments)]
fn lockstep_copy(
    out: &mut Vec<Transition>,
    n: usize,
    from: &str,
    to: &str,
    p: &str,
    src: usize,
    dst: usize,
    history: usize,
    erase_src: bool,
    free: &[(usize, Vec<char>)],
) {
    let (go, scan, back, check, done) = (
        format!("{p}:go"),
        format!("{p}:scan"),
        format!("{p}:back"),
        format!("{p}:check"),
        to.to_string(),
    );
    let vec_of = |c: &std::collections::BTreeMap<usize, char>, s: char, d: char, h: char| {
        let mut v = vec![BLANK; n];
        for (&i, &x) in c {
            v[i] = x;
        }
        v[src] = s;
        v[dst] = d;
        v[history] = h;
        v
    };
    // in erase mode `dst` already holds the word and `src` is compared
    // against it and blanked
    let kept = |b: char| if erase_src { BLANK } else { b };
    let before_dst = |b: char| if erase_src { b } else { BLANK };
    for c in combos(free) {
        for b in ['0', '1'] {
            out.push(Transition::rw(
                from,
                &vec_of(&c, b, before_dst(b), BLANK),
                &go,
                &vec_of(&c, kept(b), b, COPY_MARK),
            ));
            out.push(Transition::rw(
                &scan,
                &vec_of(&c, b, before_dst(b), BLANK),
                &go,
                &vec_of(&c, kept(b), b, BLANK),
            ));
            out.push(Transition::rw(
                &check,
                &vec_of(&c, kept(b), b, BLANK),
                &back,
                &vec_of(&c, kept(b), b, BLANK),
            ));
            out.push(Transition::rw(
                &check,
                &vec_of(&c, kept(b), b, COPY_MARK),
                &done_hop(p),
                &vec_of(&c, kept(b), b, BLANK),
            ));
        }
        out.push(Transition::rw(
            from,
            &vec_of(&c, BLANK, BLANK, BLANK),
            &done_hop(p),
            &vec_of(&c, BLANK, BLANK, BLANK),
        ));
        out.push(Transition::rw(
            &scan,
            &vec_of(&c, BLANK, BLANK, BLANK),
            &back,
            &vec_of(&c, BLANK, BLANK, BLANK),
        ));
    }
    let mut fwd = vec![Move::Stay; n];
    fwd[src] = Move::Right;
    fwd[dst] = Move::Right;
    fwd[history] = Move::Right;
    let mut bwd = vec![Move::Stay; n];
    if !erase_src {
        bwd[src] = Move::Left;
    }
    bwd[dst] = Move::Left;
    bwd[history] = Move::Left;
    out.push(Transition::shift(&go, &scan, &fwd));
    out.push(Transition::shift(&back, &check, &bwd));
    out.push(Transition::shift(&done_hop(p), &done, &vec![Move::Stay; n]));
}

fn done_hop(p: &str) -> String {
    format!("{p}:done")
}

fn symbols(m: &Machine, tapes: impl Iterator<Item = usize>) -> Vec<(usize, Vec<char>)> {
    let alph = m.tape_alphabets();
    tapes.map(|i| (i, alph[i].iter().copied().collect())).collect()
}

const BITS_OR_BLANK: [char; 3] = [BLANK, '0', '1'];

fn role_without_io(r: TapeRole) -> TapeRole {
    match r {
        TapeRole::Input | TapeRole::Output => TapeRole::Work,
        other => other,
    }
}

/// An injective machine computing `x ↦ pair_encode(x, f(x))` for the
/// function `f` of the deterministic machine `m`. `m` must halt with its
/// output head on the first output symbol.
pub fn bennett_garbage(m: &Machine) -> Result<Machine, TransformError> {
    require_deterministic(m)?;
    let k = m.tapes.len();
    let (h, copy, out_t) = (k, k + 1, k + 2);
    let n = k + 3;
    let mut tapes: Vec<TapeSpec> = m.tapes.clone();
    let input = m.input_tape();
    for (i, t) in tapes.iter_mut().enumerate() {
        if i != input {
            t.role = role_without_io(t.role);
        }
    }
    tapes.push(TapeSpec::new(TapeRole::History, TapeKind::Normal));
    tapes.push(TapeSpec::new(TapeRole::Work, TapeKind::Normal));
    tapes.push(TapeSpec::new(TapeRole::Output, TapeKind::Normal));
    let map: Vec<usize> = (0..k).collect();

    let forward = Layout {
        n,
        map: map.clone(),
        history: h,
        bystanders: vec![],
    };
    let mut ts = history_phase(m, "a", &forward);
    let back = Layout {
        n,
        map,
        history: h,
        bystanders: vec![(copy, BITS_OR_BLANK.to_vec())],
    };
    ts.extend(uncompute(&history_phase(m, "a", &back)));
    let acc = format!("a.{}", m.accept);
    let free = symbols(m, (0..k).filter(|&i| i != m.output_tape()));
    lockstep_copy(
        &mut ts,
        n,
        &acc,
        &format!("{acc}{REVERSE_MARK}"),
        "c",
        m.output_tape(),
        copy,
        h,
        false,
        &free,
    );
    pair_out(&mut ts, n, &format!("a>{REVERSE_MARK}"), input, copy, out_t, "acc");

    let time_bound = m.time_bound.and_then(|t| {
        PolyBound::dominating_sum(&[PolyBound::new(t.a.saturating_mul(14), t.k)?, PolyBound::new(26, 1)?])
    });
    let balance_bound = m
        .balance_bound
        .or(m.time_bound)
        .and_then(|b| PolyBound::new(b.a.saturating_add(2), b.k.max(1)));
    let mut out = Machine {
        name: format!("bennett({})", m.name),
        states: Vec::new(),
        start: "a>".into(),
        accept: "acc".into(),
        tapes,
        transitions: ts,
        time_bound,
        balance_bound,
        oracle_name: m.oracle_name.clone(),
    };
    out.collect_states();
    Ok(out)
}

/// From `from`, with `x` under the head of `input` and `f(x)` under the head
/// of `copy`, writes `code(x) 11 f(x)` on `out_t`, blanking the other two,
/// and ends in `accept` with the output head on its first cell.
fn pair_out(ts: &mut Vec<Transition>, n: usize, from: &str, input: usize, copy: usize, out_t: usize, accept: &str) {
    let v = |i: char, c: char, o: char| {
        let mut v = vec![BLANK; n];
        v[input] = i;
        v[copy] = c;
        v[out_t] = o;
        v
    };
    let mv = |pairs: &[(usize, Move)]| {
        let mut m = vec![Move::Stay; n];
        for &(i, x) in pairs {
            m[i] = x;
        }
        m
    };
    let o_right = mv(&[(out_t, Move::Right)]);
    let o_left = mv(&[(out_t, Move::Left)]);
    // code(x): the first cell is a marked 0 (`z`); with empty x the first
    // separator bit is a marked 1 (`y`)
    for c in BITS_OR_BLANK {
        for b in ['0', '1'] {
            let (one, two) = (format!("x{b}1"), format!("x{b}2"));
            ts.push(Transition::rw(from, &v(b, c, BLANK), &one, &v(BLANK, c, 'z')));
            ts.push(Transition::rw("xr", &v(b, c, BLANK), &one, &v(BLANK, c, '0')));
            ts.push(Transition::rw(&two, &v(BLANK, c, BLANK), "xs", &v(BLANK, c, b)));
        }
        ts.push(Transition::rw(from, &v(BLANK, c, BLANK), "s1", &v(BLANK, c, 'y')));
        ts.push(Transition::rw("xr", &v(BLANK, c, BLANK), "s1", &v(BLANK, c, '1')));
        ts.push(Transition::rw("s2", &v(BLANK, c, BLANK), "f1", &v(BLANK, c, '1')));
    }
    for b in ['0', '1'] {
        ts.push(Transition::shift(&format!("x{b}1"), &format!("x{b}2"), &o_right));
    }
    ts.push(Transition::shift("xs", "xr", &mv(&[(input, Move::Right), (out_t, Move::Right)])));
    ts.push(Transition::shift("s1", "s2", &o_right));
    ts.push(Transition::shift("f1", "f2", &o_right));
    // f(x): first cell marked `p`/`q` so the loop entry differs
    let first = |b: char| if b == '0' { 'p' } else { 'q' };
    for b in ['0', '1'] {
        ts.push(Transition::rw("f2", &v(BLANK, b, BLANK), "fy", &v(BLANK, BLANK, first(b))));
        ts.push(Transition::rw("fr", &v(BLANK, b, BLANK), "fy", &v(BLANK, BLANK, b)));
        ts.push(Transition::rw("rr", &v(BLANK, BLANK, b), "rb", &v(BLANK, BLANK, b)));
        ts.push(Transition::rw("rr", &v(BLANK, BLANK, first(b)), "q1", &v(BLANK, BLANK, b)));
        ts.push(Transition::rw("ca", &v(BLANK, BLANK, b), "cc", &v(BLANK, BLANK, b)));
    }
    ts.push(Transition::rw("f2", &v(BLANK, BLANK, BLANK), "q1", &v(BLANK, BLANK, BLANK)));
    ts.push(Transition::shift("fy", "fr", &mv(&[(copy, Move::Right), (out_t, Move::Right)])));
    ts.push(Transition::rw("fr", &v(BLANK, BLANK, BLANK), "rb", &v(BLANK, BLANK, BLANK)));
    ts.push(Transition::shift("rb", "rr", &o_left));
    // back over the separator and the pairs of code(x)
    ts.push(Transition::shift("q1", "q2", &o_left));
    ts.push(Transition::rw("q2", &v(BLANK, BLANK, '1'), "q3", &v(BLANK, BLANK, '1')));
    ts.push(Transition::shift("q3", "q4", &o_left));
    ts.push(Transition::rw("q4", &v(BLANK, BLANK, '1'), "cb", &v(BLANK, BLANK, '1')));
    ts.push(Transition::rw("q4", &v(BLANK, BLANK, 'y'), accept, &v(BLANK, BLANK, '1')));
    ts.push(Transition::shift("cb", "ca", &o_left));
    ts.push(Transition::shift("cc", "cd", &o_left));
    ts.push(Transition::rw("cd", &v(BLANK, BLANK, '0'), "cb", &v(BLANK, BLANK, '0')));
    ts.push(Transition::rw("cd", &v(BLANK, BLANK, 'z'), accept, &v(BLANK, BLANK, '0')));
}

/// Checks on every input up to `INVERSE_CHECK_LEN` that `f` is injective
/// where defined and that `finv` maps each `f(x)` back to `x`.
fn check_inverses(f: &Machine, finv: &Machine) -> Result<(), TransformError> {
    let fail = |detail: String| TransformError::NotInverses {
        window: INVERSE_CHECK_LEN,
        detail,
    };
    let mut seen = std::collections::HashMap::new();
    for x in bits::words_up_to(INVERSE_CHECK_LEN) {
        let RunOutcome::Accept(y) = run(f, &x, None, Limits::default()) else {
            continue;
        };
        if let Some(other) = seen.insert(y.clone(), x.clone()) {
            return Err(fail(format!("`{other}` and `{x}` both map to `{y}`")));
        }
        match run(finv, &y, None, Limits::default()) {
            RunOutcome::Accept(back) if back == x => {}
            got => return Err(fail(format!("`{x}` maps to `{y}`, which maps to {got}"))),
        }
    }
    Ok(())
}

/// An injective machine computing exactly `f`, given a machine for `f` and
/// one for its inverse on `Im(f)`. Both must halt with the output head on
/// the first output symbol.
pub fn bennett_clean(m_f: &Machine, m_finv: &Machine) -> Result<Machine, TransformError> {
    require_deterministic(m_f)?;
    require_deterministic(m_finv)?;
    check_inverses(m_f, m_finv)?;
    let (kf, kg) = (m_f.tapes.len(), m_finv.tapes.len());
    let h1 = kf;
    let g0 = kf + 1;
    let h2 = g0 + kg;
    let n = h2 + 1;
    let f_in = m_f.input_tape();
    let g_in = g0 + m_finv.input_tape();
    let g_out = g0 + m_finv.output_tape();

    let mut tapes = Vec::with_capacity(n);
    for (i, t) in m_f.tapes.iter().enumerate() {
        let role = if i == f_in { TapeRole::Input } else { role_without_io(t.role) };
        tapes.push(TapeSpec::new(role, t.kind));
    }
    tapes.push(TapeSpec::new(TapeRole::History, TapeKind::Normal));
    for (i, t) in m_finv.tapes.iter().enumerate() {
        let role = if g0 + i == g_in { TapeRole::Output } else { role_without_io(t.role) };
        tapes.push(TapeSpec::new(role, t.kind));
    }
    tapes.push(TapeSpec::new(TapeRole::History, TapeKind::Normal));
    let map_f: Vec<usize> = (0..kf).collect();
    let map_g: Vec<usize> = (g0..g0 + kg).collect();

    let mut ts = Vec::new();
    // compute f with history, copy f(x) onto the inverse's input tape
    let lay = |map: &Vec<usize>, h: usize, by: Vec<(usize, Vec<char>)>| Layout {
        n,
        map: map.clone(),
        history: h,
        bystanders: by,
    };
    ts.extend(history_phase(m_f, "a", &lay(&map_f, h1, vec![])));
    let acc_f = format!("a.{}", m_f.accept);
    let free_f = symbols(m_f, (0..kf).filter(|&i| i != m_f.output_tape()));
    lockstep_copy(
        &mut ts,
        n,
        &acc_f,
        &format!("{acc_f}{REVERSE_MARK}"),
        "c",
        m_f.output_tape(),
        g_in,
        h1,
        false,
        &free_f,
    );
    ts.extend(uncompute(&history_phase(
        m_f,
        "a",
        &lay(&map_f, h1, vec![(g_in, BITS_OR_BLANK.to_vec())]),
    )));
    // run the inverse with its own history, entered where uncomputing ends
    let joint = format!("a>{REVERSE_MARK}");
    let inv_fwd: Vec<Transition> = history_phase(m_finv, "b", &lay(&map_g, h2, vec![(f_in, BITS_OR_BLANK.to_vec())]))
        .iter()
        .map(|t| t.map_states(&|s: &str| if s == "b>" { joint.clone() } else { s.to_string() }))
        .collect();
    ts.extend(inv_fwd);
    // blank x against the recomputed copy
    let acc_g = format!("b.{}", m_finv.accept);
    let free_g: Vec<(usize, Vec<char>)> = symbols(m_finv, (0..kg).filter(|&i| g0 + i != g_out))
        .into_iter()
        .map(|(i, s)| (g0 + i, s))
        .collect();
    lockstep_copy(
        &mut ts,
        n,
        &acc_g,
        &format!("{acc_g}{REVERSE_MARK}"),
        "e",
        f_in,
        g_out,
        h2,
        true,
        &free_g,
    );
    ts.extend(uncompute(&history_phase(m_finv, "b", &lay(&map_g, h2, vec![(f_in, vec![BLANK])]))));

    let time_bound = (|| {
        let (tf, tg) = (m_f.time_bound?, m_finv.time_bound?);
        let bf = m_f.balance_bound.unwrap_or(tf);
        let tg_at = PolyBound::compose(&tg, &bf);
        let scale = |p: PolyBound, c: u64| PolyBound::new(p.a.saturating_mul(c), p.k);
        PolyBound::dominating_sum(&[scale(tf, 6)?, scale(tg_at, 6)?, scale(bf, 4)?, PolyBound::new(20, 1)?])
    })();
    let mut out = Machine {
        name: format!("bennett({},{})", m_f.name, m_finv.name),
        states: Vec::new(),
        start: "a>".into(),
        accept: format!("b>{REVERSE_MARK}"),
        tapes,
        transitions: ts,
        time_bound,
        balance_bound: m_f.balance_bound,
        oracle_name: None,
    };
    out.collect_states();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::machine::{extract_fn, extract_fn_with, validate_injective};

    fn pair(x: &str, y: &str) -> String {
        let mut s: String = x.chars().flat_map(|b| ['0', b]).collect();
        s.push_str("11");
        s.push_str(y);
        s
    }

    #[test]
    fn garbage_examples() {
        let b = bennett_garbage(&corpus::drop_last()).unwrap();
        assert!(validate_injective(&b).unwrap().is_ok());
        assert_eq!(run(&b, "01", None, Limits::default()), RunOutcome::Accept(pair("01", "0")));
        let i = bennett_garbage(&corpus::identity()).unwrap();
        assert_eq!(run(&i, "1", None, Limits::default()), RunOutcome::Accept(pair("1", "1")));
        assert_eq!(run(&i, "", None, Limits::default()), RunOutcome::Accept(pair("", "")));
    }

    #[test]
    fn garbage_matches_direct_runs() {
        for m in corpus::all() {
            let b = bennett_garbage(&m).unwrap();
            assert!(validate_injective(&b).unwrap().is_ok(), "{}", m.name);
            let f = extract_fn_with(&m, 4, None, Limits::unbounded(1 << 16));
            let fb = extract_fn(&b, 4, None);
            assert_eq!(fb.len(), f.len(), "{}", m.name);
            for (x, y) in f.iter() {
                assert_eq!(fb.get(x), Some(pair(x, y).as_str()), "{} on {x}", m.name);
            }
        }
    }

    #[test]
    fn clean_inc_dec() {
        let c = bennett_clean(&corpus::inc(), &corpus::dec()).unwrap();
        assert!(validate_injective(&c).unwrap().is_ok());
        assert_eq!(run(&c, "011", None, Limits::default()), RunOutcome::Accept("100".into()));
        assert_eq!(extract_fn(&c, 6, None), extract_fn(&corpus::inc(), 6, None));
    }

    #[test]
    fn clean_identity_is_identity() {
        let id = corpus::identity();
        let c = bennett_clean(&id, &id).unwrap();
        assert!(validate_injective(&c).unwrap().is_ok());
        for x in bits::words_up_to(6) {
            assert_eq!(run(&c, &x, None, Limits::default()), RunOutcome::Accept(x.clone()));
        }
    }

    #[test]
    fn garbage_second_component_on_random_inputs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let machines: Vec<(Machine, Machine)> = corpus::all()
            .into_iter()
            .filter(|m| !m.has_oracle_calls())
            .map(|m| {
                let b = bennett_garbage(&m).unwrap();
                (m, b)
            })
            .collect();
        for _ in 0..200 {
            let (m, b) = &machines[rng.gen_range(0..machines.len())];
            let len = rng.gen_range(0..=10);
            let x: String = (0..len).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect();
            let direct = run(m, &x, None, Limits::unbounded(1 << 16));
            let got = run(b, &x, None, Limits::unbounded(1 << 22));
            match direct {
                RunOutcome::Accept(y) => assert_eq!(got, RunOutcome::Accept(pair(&x, &y)), "{} on {x}", m.name),
                _ => assert!(!got.is_accept(), "{} on {x}", m.name),
            }
        }
    }

    #[test]
    fn clean_rejects_non_inverses() {
        assert!(matches!(
            bennett_clean(&corpus::inc(), &corpus::inc()),
            Err(TransformError::NotInverses { .. })
        ));
        assert!(matches!(
            bennett_clean(&corpus::drop_last(), &corpus::append0()),
            Err(TransformError::NotInverses { .. })
        ));
    }
}
