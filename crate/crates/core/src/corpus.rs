//! The built-in machine corpus. Every injective machine here passes
//! `validate_injective`; markers on the first output cell make loop entries
//! distinguishable from loop bodies.

use crate::machine::{Machine, MachineBuilder, Move, OracleCall, TapeKind, TapeRole, TapeSpec};

use Move::{Left as L, Right as R, Stay as S};

fn io() -> [TapeSpec; 2] {
    [
        TapeSpec::new(TapeRole::Input, TapeKind::Normal),
        TapeSpec::new(TapeRole::Output, TapeKind::Normal),
    ]
}

fn marked(bit: char) -> char {
    if bit == '0' {
        'a'
    } else {
        'b'
    }
}

fn flip(bit: char) -> char {
    if bit == '0' {
        '1'
    } else {
        '0'
    }
}

/// Moves `input` onto the output, erasing it. `out(b)` gives the symbol
/// written for input bit `b`; the first cell gets its marked form. Ends in
/// `end` (reached by an RW writing `_` on both tapes) or, on empty input,
/// in `empty` (writing `empty_sym` on the output).
fn transfer(b: &mut MachineBuilder, p: &str, out: impl Fn(char) -> char, end: (&str, char), empty: (&str, char)) {
    let (s, mv, a) = (format!("{p}S"), format!("{p}B"), format!("{p}A"));
    for bit in ['0', '1'] {
        let o = out(bit);
        b.rw(&s, &format!("{bit}_"), &mv, &format!("_{}", marked(o)));
        b.rw(&a, &format!("{bit}_"), &mv, &format!("_{o}"));
    }
    b.rw(&s, "__", empty.0, &format!("_{}", empty.1));
    b.shift(&mv, &a, &[R, R]);
    b.rw(&a, "__", end.0, &format!("_{}", end.1));
}

/// Walks the output head back to the marked first cell, unmarking it.
fn return_left(b: &mut MachineBuilder, l1: &str, l2: &str, accept: &str) {
    b.shift(l2, l1, &[S, L]);
    for bit in ['0', '1'] {
        b.rw(l1, &format!("_{bit}"), l2, &format!("_{bit}"));
        b.rw(l1, &format!("_{}", marked(bit)), accept, &format!("_{bit}"));
    }
}

/// Copies rightwards, then erases the input walking back. Its reverse is
/// the same machine with the two tapes swapped.
pub fn identity() -> Machine {
    let mut b = MachineBuilder::new("identity", &io());
    for bit in ['0', '1'] {
        let m = marked(bit);
        b.rw("S", &format!("{bit}_"), "A", &format!("{m}{m}"));
        b.rw("B", &format!("{bit}_"), "A", &format!("{bit}{bit}"));
        b.rw("D", &format!("{bit}{bit}"), "C", &format!("_{bit}"));
        b.rw("D", &format!("{m}{m}"), "F", &format!("_{bit}"));
    }
    b.rw("S", "__", "F", "__");
    b.shift("A", "B", &[R, R]);
    b.rw("B", "__", "C", "__");
    b.shift("C", "D", &[L, L]);
    b.time(8, 1).balance(1, 1).build("S", "F")
}

pub fn complement() -> Machine {
    let mut b = MachineBuilder::new("complement", &io());
    transfer(&mut b, "", flip, ("L2", '_'), ("F", '_'));
    return_left(&mut b, "L1", "L2", "F");
    b.time(8, 1).balance(1, 1).build("S", "F")
}

fn append(bit: char) -> Machine {
    let mut b = MachineBuilder::new(&format!("append{bit}"), &io());
    transfer(&mut b, "", |c| c, ("X", bit), ("X", marked(bit)));
    b.shift("X", "Y", &[S, R]);
    b.rw("Y", "__", "L2", "__");
    return_left(&mut b, "L1", "L2", "F");
    b.time(8, 1).balance(1, 1).build("S", "F")
}

/// `x ↦ x0`.
pub fn append0() -> Machine {
    append('0')
}

/// `x ↦ x1`.
pub fn append1() -> Machine {
    append('1')
}

/// `x0 ↦ x`, undefined on words not ending in `0`.
pub fn strip0() -> Machine {
    let bit = '0';
    let mut b = MachineBuilder::new("strip0", &io());
    for c in ['0', '1'] {
        b.rw("S", &format!("{c}_"), "B", &format!("_{}", marked(c)));
        b.rw("A", &format!("{c}_"), "B", &format!("_{c}"));
    }
    b.shift("B", "A", &[R, R]);
    b.rw("A", "__", "E", "__");
    b.shift("E", "T", &[S, L]);
    b.rw("T", &format!("_{bit}"), "L2", "__");
    b.rw("T", &format!("_{}", marked(bit)), "F", "__");
    return_left(&mut b, "L1", "L2", "F");
    b.time(8, 1).balance(1, 1).build("S", "F")
}

/// Binary increment (`carry` = '1') or decrement (`carry` = '0') modulo
/// `2^|x|`, last symbol least significant.
fn step_counter(name: &str, carry: char) -> Machine {
    let (p, q) = (carry, flip(carry));
    let mut b = MachineBuilder::new(name, &io());
    // scan right, marking the first input cell
    for c in ['0', '1'] {
        b.rw("S", &format!("{c}_"), "P1", &format!("{}_", marked(c)));
        b.rw("P", &format!("{c}_"), "P1", &format!("{c}_"));
    }
    b.rw("S", "__", "F", "__");
    b.shift("P1", "P", &[R, S]);
    b.rw("P", "__", "C1", "__");
    // right to left: propagate the carry, then copy
    b.shift("C1", "C", &[L, L]);
    b.rw("C", &format!("{p}_"), "C1", &format!("_{q}"));
    b.rw("C", &format!("{q}_"), "N1", "_c");
    b.rw("C", &format!("{}_", marked(p)), "H", "_o");
    b.rw("C", &format!("{}_", marked(q)), "H", "_k");
    b.shift("N1", "N", &[L, L]);
    for c in ['0', '1'] {
        b.rw("N", &format!("{c}_"), "N1", &format!("_{c}"));
    }
    b.rw("N", "a_", "H", "_x");
    b.rw("N", "b_", "H", "_y");
    // left to right: unmark the stop cell, keep a left-end marker
    let end = |c: char| if c == '0' { 'm' } else { 'n' };
    b.rw("H", "_x", "Z1", "_m");
    b.rw("H", "_y", "Z1", "_n");
    b.rw("H", "_k", "K1", &format!("_{}", end(p)));
    b.rw("H", "_o", "K1", &format!("_{}", end(q)));
    b.shift("Z1", "Z", &[S, R]);
    for c in ['0', '1'] {
        b.rw("Z", &format!("_{c}"), "Z1", &format!("_{c}"));
    }
    b.rw("Z", "_c", "K1", &format!("_{p}"));
    b.shift("K1", "K", &[S, R]);
    b.rw("K", &format!("_{q}"), "K1", &format!("_{q}"));
    b.rw("K", "__", "W1", "__");
    // back to the left end
    b.shift("W1", "W", &[S, L]);
    for c in ['0', '1'] {
        b.rw("W", &format!("_{c}"), "W1", &format!("_{c}"));
    }
    b.rw("W", "_m", "F", "_0");
    b.rw("W", "_n", "F", "_1");
    b.time(10, 1).balance(1, 1).build("S", "F")
}

pub fn inc() -> Machine {
    step_counter("inc", '1')
}

pub fn dec() -> Machine {
    step_counter("dec", '0')
}

/// `0^(2^m) ↦ 0^m` for `m ≥ 1`, on a rubber input tape. Each pass deletes
/// every second `0`; the first cell carries the marker `A` throughout. The
/// output grows to the left so its head stays on the leftmost symbol.
pub fn g_machine() -> Machine {
    let tapes = [
        TapeSpec::new(TapeRole::Input, TapeKind::Rubber),
        TapeSpec::new(TapeRole::Output, TapeKind::Normal),
    ];
    let mut b = MachineBuilder::new("g", &tapes);
    b.rw("S", "0_", "E1", "A_");
    b.shift("E1", "O", &[R, S]);
    for o in ['_', '0'] {
        b.rw("O", &format!("0{o}"), "O1", &format!("0{o}"));
        b.rw("O", &format!("_{o}"), "OD", &format!("_{o}"));
        b.rw("E", &format!("0{o}"), "E1", &format!("0{o}"));
        b.rw("E", &format!("_{o}"), "EV", &format!("_{o}"));
    }
    b.shift("O1", "E", &[Move::Delete('0'), S]);
    // even count: one more output symbol, then back to the marker
    b.shift("EV", "EW", &[S, L]);
    b.rw("EW", "__", "B2", "_0");
    b.shift("B2", "B1", &[L, S]);
    b.rw("B1", "00", "B2", "00");
    b.rw("B1", "A0", "E1", "A0");
    // odd count: accept only if the marker is the last letter and at least
    // one pass has completed
    b.shift("OD", "OC", &[L, S]);
    b.rw("OC", "A0", "F", "_0");
    b.time(8, 1).balance(1, 4).build("S", "F")
}

/// `x·b ↦ x`; not injective.
pub fn drop_last() -> Machine {
    let mut b = MachineBuilder::new("drop_last", &io());
    for c in ['0', '1'] {
        b.rw("S", &format!("{c}_"), "B", &format!("_{c}"));
        b.rw("A", &format!("{c}_"), "B", &format!("_{c}"));
    }
    b.shift("B", "A", &[R, R]);
    b.rw("A", "__", "E", "__");
    b.shift("E", "T", &[S, L]);
    b.rw("T", "_0", "U", "__");
    b.rw("T", "_1", "U", "__");
    b.shift("U", "V", &[S, L]);
    for c in ['0', '1'] {
        b.rw("V", &format!("_{c}"), "V1", &format!("_{c}"));
    }
    b.shift("V1", "V", &[S, L]);
    b.rw("V", "__", "W", "__");
    b.shift("W", "F", &[S, R]);
    b.time(8, 1).balance(1, 1).build("S", "F")
}

/// `x ↦ 1`; the balance bound limits its domain to `|x| ≤ 2`.
pub fn constant() -> Machine {
    let mut b = MachineBuilder::new("constant", &io());
    for c in ['0', '1', '_'] {
        b.rw("S", &format!("{c}_"), "F", "_1");
    }
    b.time(2, 1).balance(1, 1).build("S", "F")
}

/// The nowhere-defined machine.
pub fn empty() -> Machine {
    let mut b = MachineBuilder::new("empty", &io());
    b.time(1, 1).balance(1, 1).build("S", "F")
}

/// `x ↦ x·[x ∈ N]` for the oracle `N` named `oracle`: asks about the input
/// first, then copies it and appends the answer bit.
pub fn tag(oracle: &str) -> Machine {
    let mut b = MachineBuilder::new("tag", &io());
    b.oracle(
        oracle,
        OracleCall {
            query: "S".into(),
            yes: "YS".into(),
            no: "NS".into(),
            tape: 0,
            prefix: String::new(),
        },
    );
    transfer(&mut b, "Y", |c| c, ("X", '1'), ("X", 'b'));
    transfer(&mut b, "N", |c| c, ("X", '0'), ("X", 'a'));
    b.shift("X", "Y", &[S, R]);
    b.rw("Y", "__", "L2", "__");
    return_left(&mut b, "L1", "L2", "F");
    b.time(8, 1).balance(1, 1).build("S", "F")
}

/// Verifier for `{x : x contains 1}` on `code(x) 11 cert`.
pub fn verifier_has_one() -> Machine {
    let mut b = MachineBuilder::new("has_one", &io());
    b.rw("Q", "0_", "Q1", "0_");
    b.shift("Q1", "Qb", &[R, S]);
    b.rw("Qb", "0_", "Q2", "0_");
    b.rw("Qb", "1_", "F", "1_");
    b.shift("Q2", "Q", &[R, S]);
    b.time(2, 1).build("Q", "F")
}

/// Verifier for `{x : x has even weight}` on `code(x) 11 cert`.
pub fn verifier_even() -> Machine {
    let mut b = MachineBuilder::new("even_weight", &io());
    b.rw("E", "0_", "E1", "0_");
    b.rw("E", "1_", "F", "1_");
    b.shift("E1", "Eb", &[R, S]);
    b.rw("Eb", "0_", "E2", "0_");
    b.rw("Eb", "1_", "O2", "1_");
    b.shift("E2", "E", &[R, S]);
    b.rw("O", "0_", "O1", "0_");
    b.shift("O1", "Ob", &[R, S]);
    b.rw("Ob", "0_", "O2", "0_");
    b.rw("Ob", "1_", "E2", "1_");
    b.shift("O2", "O", &[R, S]);
    b.time(2, 1).build("E", "F")
}

/// Verifier for `{x : x starts with cc}` whose certificate is the bit `c`.
pub fn verifier_double_start() -> Machine {
    let mut b = MachineBuilder::new("double_start", &io());
    b.rw("A", "0_", "A1", "0_");
    b.shift("A1", "Ab", &[R, S]);
    for c in ['0', '1'] {
        // first bit c, then a pair 0c
        b.rw("Ab", &format!("{c}_"), &format!("B{c}"), &format!("{c}_"));
        b.shift(&format!("B{c}"), &format!("P{c}"), &[R, S]);
        b.rw(&format!("P{c}"), "0_", &format!("P{c}1"), "0_");
        b.shift(&format!("P{c}1"), &format!("Pb{c}"), &[R, S]);
        b.rw(&format!("Pb{c}"), &format!("{c}_"), &format!("K{c}1"), &format!("{c}_"));
        // skip remaining pairs up to the separator
        b.shift(&format!("K{c}1"), &format!("K{c}"), &[R, S]);
        b.rw(&format!("K{c}"), "0_", &format!("J{c}1"), "0_");
        b.shift(&format!("J{c}1"), &format!("J{c}"), &[R, S]);
        for d in ['0', '1'] {
            b.rw(&format!("J{c}"), &format!("{d}_"), &format!("K{c}1"), &format!("{d}_"));
        }
        b.rw(&format!("K{c}"), "1_", &format!("T{c}1"), "1_");
        b.shift(&format!("T{c}1"), &format!("T{c}"), &[R, S]);
        b.rw(&format!("T{c}"), "1_", &format!("C{c}1"), "1_");
        b.shift(&format!("C{c}1"), &format!("C{c}"), &[R, S]);
        b.rw(&format!("C{c}"), &format!("{c}_"), "F", &format!("{c}_"));
    }
    b.time(2, 1).build("A", "F")
}

/// The injective corpus machines that need no oracle.
pub fn injective_corpus() -> Vec<Machine> {
    vec![
        identity(),
        complement(),
        append0(),
        append1(),
        strip0(),
        inc(),
        dec(),
        g_machine(),
        empty(),
    ]
}

pub fn non_injective_corpus() -> Vec<Machine> {
    vec![drop_last(), constant()]
}

/// Every oracle-free corpus machine.
pub fn all() -> Vec<Machine> {
    let mut v = injective_corpus();
    v.extend(non_injective_corpus());
    v
}

pub fn verifiers() -> Vec<Machine> {
    vec![verifier_has_one(), verifier_even(), verifier_double_start()]
}

/// Looks up a corpus machine by name, ignoring case and underscores, so
/// `dropLast` finds `drop_last`. `tag` uses the even-weight oracle.
pub fn by_name(name: &str) -> Option<Machine> {
    let norm = |s: &str| s.replace('_', "").to_lowercase();
    let key = norm(name);
    if key == "tag" {
        return Some(tag("even"));
    }
    all()
        .into_iter()
        .chain(verifiers())
        .find(|m| norm(&m.name) == key)
}

pub fn names() -> Vec<String> {
    let mut v: Vec<String> = all().into_iter().map(|m| m.name).collect();
    v.push("tag".into());
    v.extend(verifiers().into_iter().map(|m| m.name));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{run, run_traced, validate_deterministic, validate_injective, Limits, RunOutcome};

    fn out(m: &Machine, x: &str) -> RunOutcome {
        run(m, x, None, Limits::default())
    }

    fn acc(y: &str) -> RunOutcome {
        RunOutcome::Accept(y.to_string())
    }

    #[test]
    fn structure_and_injectivity() {
        for m in injective_corpus().iter().chain([tag("even")].iter()) {
            m.check_structure().unwrap();
            let r = validate_injective(m).unwrap();
            assert!(r.is_ok(), "{}: {:?}", m.name, r.conflicts);
        }
        for m in non_injective_corpus().iter().chain(verifiers().iter()) {
            m.check_structure().unwrap();
            assert!(validate_deterministic(m).is_ok(), "{}", m.name);
        }
        assert!(!validate_injective(&drop_last()).unwrap().is_ok());
        assert!(!validate_injective(&constant()).unwrap().is_ok());
    }

    #[test]
    fn simple_transforms() {
        assert_eq!(out(&identity(), "0110"), acc("0110"));
        assert_eq!(out(&identity(), ""), acc(""));
        assert_eq!(out(&complement(), "0110"), acc("1001"));
        assert_eq!(out(&append0(), "1"), acc("10"));
        assert_eq!(out(&append1(), ""), acc("1"));
        assert_eq!(out(&strip0(), "110"), acc("11"));
        assert_eq!(out(&strip0(), "0"), acc(""));
        assert_eq!(out(&strip0(), "01"), RunOutcome::Reject);
        assert_eq!(out(&strip0(), ""), RunOutcome::Reject);
        assert_eq!(out(&drop_last(), "10"), acc("1"));
        assert_eq!(out(&drop_last(), "1"), acc(""));
        assert_eq!(out(&constant(), "01"), acc("1"));
        assert_eq!(out(&constant(), "011"), RunOutcome::BalanceViolated);
        assert_eq!(out(&empty(), "0"), RunOutcome::Reject);
    }

    #[test]
    fn counters_wrap() {
        assert_eq!(out(&inc(), "011"), acc("100"));
        assert_eq!(out(&inc(), "1"), acc("0"));
        assert_eq!(out(&inc(), "111"), acc("000"));
        assert_eq!(out(&inc(), "10"), acc("11"));
        assert_eq!(out(&inc(), ""), acc(""));
        assert_eq!(out(&dec(), "100"), acc("011"));
        assert_eq!(out(&dec(), "000"), acc("111"));
    }

    #[test]
    fn g_examples() {
        let g = g_machine();
        assert_eq!(out(&g, "00"), acc("0"));
        assert_eq!(out(&g, "0000"), acc("00"));
        assert_eq!(out(&g, "00000000"), acc("000"));
        assert_eq!(out(&g, "000"), RunOutcome::Reject);
        assert_eq!(out(&g, "0"), RunOutcome::Reject);
        assert_eq!(out(&g, ""), RunOutcome::Reject);
        assert_eq!(out(&g, "0010"), RunOutcome::Reject);
        let (_, stats) = run_traced(&g, &"0".repeat(1024), None, Limits::default());
        assert!(stats.steps <= 8 * 1025);
    }

    #[test]
    fn tag_appends_membership() {
        let m = tag("even");
        let even = |w: &str| w.chars().filter(|&c| c == '1').count() % 2 == 0;
        for x in crate::bits::words_up_to(4) {
            let want = format!("{x}{}", if even(&x) { '1' } else { '0' });
            assert_eq!(run(&m, &x, Some(&even), Limits::default()), acc(&want));
        }
        assert_eq!(run(&m, "0", None, Limits::default()), RunOutcome::OracleMissing);
    }

    #[test]
    fn verifiers_decide_their_languages() {
        let pair = |x: &str, c: &str| {
            let mut s: String = x.chars().flat_map(|b| ['0', b]).collect();
            s.push_str("11");
            s.push_str(c);
            s
        };
        let has = verifier_has_one();
        assert!(out(&has, &pair("001", "")).is_accept());
        assert!(!out(&has, &pair("000", "")).is_accept());
        let ev = verifier_even();
        assert!(out(&ev, &pair("0110", "")).is_accept());
        assert!(!out(&ev, &pair("0100", "")).is_accept());
        let ds = verifier_double_start();
        assert!(out(&ds, &pair("110", "1")).is_accept());
        assert!(!out(&ds, &pair("110", "0")).is_accept());
        assert!(!out(&ds, &pair("10", "1")).is_accept());
        assert!(out(&ds, &pair("00", "0")).is_accept());
    }
}
