use std::fmt::Write as _;

use thiserror::Error;

use super::{
    Machine, MachineError, Move, OracleCall, PolyBound, TapeKind, TapeRole, TapeSpec, Transition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("malformed machine: {0}")]
    Structure(#[from] MachineError),
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax {
        line,
        msg: msg.into(),
    })
}

fn is_symbol(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ',' | '[' | ']' | '#' | '(' | ')')
}

fn parse_vector(line: usize, s: &str) -> Result<Vec<String>, ParseError> {
    let s = s.trim();
    let inner = match s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        Some(i) => i,
        None => return err(line, format!("expected a bracketed vector, got `{s}`")),
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(|x| x.trim().to_string()).collect())
}

fn parse_symbols(line: usize, s: &str) -> Result<Vec<char>, ParseError> {
    parse_vector(line, s)?
        .into_iter()
        .map(|x| {
            let mut cs = x.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if is_symbol(c) => Ok(c),
                _ => err(line, format!("`{x}` is not a single tape symbol")),
            }
        })
        .collect()
}

fn parse_move(line: usize, s: &str) -> Result<Move, ParseError> {
    let arg = |body: &str| -> Result<char, ParseError> {
        let inner = body
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or("");
        let mut cs = inner.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) if is_symbol(c) => Ok(c),
            _ => err(line, format!("bad symbol argument in `{s}`")),
        }
    };
    match s {
        "L" => Ok(Move::Left),
        "R" => Ok(Move::Right),
        "S" => Ok(Move::Stay),
        "D" => err(line, "delete needs the symbol it removes, e.g. D(0)"),
        _ if s.starts_with('I') => Ok(Move::Insert(arg(&s[1..])?)),
        _ if s.starts_with('D') => Ok(Move::Delete(arg(&s[1..])?)),
        _ => err(line, format!("unknown move `{s}`")),
    }
}

fn parse_ident(line: usize, s: &str) -> Result<String, ParseError> {
    let s = s.trim();
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || "[],#".contains(c)) {
        return err(line, format!("bad identifier `{s}`"));
    }
    Ok(s.to_string())
}

/// Machine names may hold brackets and commas, as transforms produce.
fn parse_name(line: usize, s: &str) -> Result<String, ParseError> {
    let s = s.trim();
    if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '#') {
        return err(line, format!("bad machine name `{s}`"));
    }
    Ok(s.to_string())
}

fn parse_bound(line: usize, s: &str) -> Result<PolyBound, ParseError> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != 2 {
        return err(line, "expected `<a> <k>`");
    }
    let a: u64 = parts[0]
        .parse()
        .or_else(|_| err(line, format!("bad coefficient `{}`", parts[0])))?;
    let k: u32 = parts[1]
        .parse()
        .or_else(|_| err(line, format!("bad exponent `{}`", parts[1])))?;
    match PolyBound::new(a, k) {
        Some(b) => Ok(b),
        None => err(line, "coefficient must be at least 1"),
    }
}

struct OracleLine {
    call: OracleCall,
    name: String,
    tape_given: bool,
}

fn parse_oracle(line: usize, s: &str) -> Result<OracleLine, ParseError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    if toks.len() < 4 {
        return err(line, "expected `<query> <yes> <no> <oracle-name>`");
    }
    let mut call = OracleCall {
        query: parse_ident(line, toks[0])?,
        yes: parse_ident(line, toks[1])?,
        no: parse_ident(line, toks[2])?,
        tape: 0,
        prefix: String::new(),
    };
    let name = parse_ident(line, toks[3])?;
    let mut tape_given = false;
    for opt in &toks[4..] {
        if let Some(v) = opt.strip_prefix("tape=") {
            call.tape = v
                .parse()
                .or_else(|_| err(line, format!("bad tape index `{v}`")))?;
            tape_given = true;
        } else if let Some(v) = opt.strip_prefix("prefix=") {
            if !v.chars().all(|c| c == '0' || c == '1') {
                return err(line, "oracle prefix must be a bitstring");
            }
            call.prefix = v.to_string();
        } else {
            return err(line, format!("unknown oracle option `{opt}`"));
        }
    }
    Ok(OracleLine {
        call,
        name,
        tape_given,
    })
}

/// Parses the line-based machine format. `#` starts a comment.
pub fn parse_machine(text: &str) -> Result<Machine, ParseError> {
    let mut name: Option<String> = None;
    let mut tapes: Option<Vec<TapeSpec>> = None;
    let mut states: Option<Vec<String>> = None;
    let mut start = None;
    let mut accept = None;
    let mut time_bound = None;
    let mut balance_bound = None;
    let mut oracle_name: Option<String> = None;
    let mut transitions = Vec::new();
    // oracle lines that rely on the default query tape
    let mut untaped = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("machine ") {
            name = Some(parse_name(line, rest)?);
            continue;
        }
        let (key, rest) = match content.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => return err(line, format!("unknown directive `{content}`")),
        };
        if name.is_none() {
            return err(line, "expected `machine <name>` first");
        }
        match key {
            "tapes" => {
                let mut v = Vec::new();
                for item in rest.split(',') {
                    let (role, kind) = match item.trim().split_once(':') {
                        Some(p) => p,
                        None => return err(line, format!("expected role:kind, got `{item}`")),
                    };
                    let role = match TapeRole::parse(role.trim()) {
                        Some(r) => r,
                        None => return err(line, format!("unknown tape role `{role}`")),
                    };
                    let kind = match kind.trim() {
                        "normal" => TapeKind::Normal,
                        "rubber" => TapeKind::Rubber,
                        other => return err(line, format!("unknown tape kind `{other}`")),
                    };
                    v.push(TapeSpec { role, kind });
                }
                tapes = Some(v);
            }
            "states" => {
                let list = states.get_or_insert_with(Vec::new);
                for s in rest.split_whitespace() {
                    list.push(parse_ident(line, s)?);
                }
            }
            "start" => start = Some(parse_ident(line, rest)?),
            "accept" => accept = Some(parse_ident(line, rest)?),
            "time" => time_bound = Some(parse_bound(line, rest)?),
            "balance" => balance_bound = Some(parse_bound(line, rest)?),
            "oracle-name" => {
                let n = parse_ident(line, rest)?;
                if oracle_name.as_ref().is_some_and(|o| *o != n) {
                    return err(line, "conflicting oracle names");
                }
                oracle_name = Some(n);
            }
            "oracle" | "revoracle" => {
                let o = parse_oracle(line, rest)?;
                if oracle_name.as_ref().is_some_and(|n| *n != o.name) {
                    return err(line, "conflicting oracle names");
                }
                oracle_name = Some(o.name);
                if !o.tape_given {
                    untaped.push((line, transitions.len()));
                }
                transitions.push(if key == "oracle" {
                    Transition::Oracle(o.call)
                } else {
                    Transition::ReverseOracle(o.call)
                });
            }
            "rw" => {
                let (lhs, rhs) = match rest.split_once("->") {
                    Some(p) => p,
                    None => return err(line, "expected `->`"),
                };
                let (src, read) = split_head(line, lhs)?;
                let (dst, write) = split_head(line, rhs)?;
                transitions.push(Transition::Rw {
                    source: src,
                    read: parse_symbols(line, &read)?,
                    target: dst,
                    write: parse_symbols(line, &write)?,
                });
            }
            "shift" => {
                let (lhs, rhs) = match rest.split_once("->") {
                    Some(p) => p,
                    None => return err(line, "expected `->`"),
                };
                let src = parse_ident(line, lhs)?;
                let (dst, moves) = split_head(line, rhs)?;
                let moves = parse_vector(line, &moves)?
                    .iter()
                    .map(|m| parse_move(line, m))
                    .collect::<Result<Vec<_>, _>>()?;
                transitions.push(Transition::Shift {
                    source: src,
                    target: dst,
                    moves,
                });
            }
            other => return err(line, format!("unknown directive `{other}`")),
        }
    }

    let last = text.lines().count().max(1);
    let name = match name {
        Some(n) => n,
        None => return err(last, "missing `machine <name>`"),
    };
    let tapes = match tapes {
        Some(t) => t,
        None => return err(last, "missing `tapes:`"),
    };
    let (start, accept) = match (start, accept) {
        (Some(s), Some(a)) => (s, a),
        _ => return err(last, "missing `start:` or `accept:`"),
    };
    if !untaped.is_empty() {
        let q = tapes.iter().position(|t| t.role == TapeRole::Query);
        for (line, idx) in untaped {
            let Some(q) = q else {
                return err(line, "oracle call without `tape=` needs a query tape");
            };
            if let Transition::Oracle(c) | Transition::ReverseOracle(c) = &mut transitions[idx] {
                c.tape = q;
            }
        }
    }
    let mut m = Machine {
        name,
        states: Vec::new(),
        start,
        accept,
        tapes,
        transitions,
        time_bound,
        balance_bound,
        oracle_name,
    };
    match states {
        Some(s) => m.states = s,
        None => m.collect_states(),
    }
    m.check_structure()?;
    Ok(m)
}

fn split_head(line: usize, s: &str) -> Result<(String, String), ParseError> {
    let s = s.trim();
    match s.find('[') {
        Some(i) => Ok((parse_ident(line, &s[..i])?, s[i..].to_string())),
        None => err(line, format!("expected `<state> [...]`, got `{s}`")),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub(super) fn print_machine(m: &Machine) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "machine {}", m.name);
    let tapes: Vec<String> = m
        .tapes
        .iter()
        .map(|t| format!("{}:{}", t.role.as_str(), t.kind.as_str()))
        .collect();
    let _ = writeln!(out, "tapes: {}", tapes.join(", "));
    let _ = writeln!(out, "states: {}", m.states.join(" "));
    let _ = writeln!(out, "start: {}", m.start);
    let _ = writeln!(out, "accept: {}", m.accept);
    if let Some(b) = m.time_bound {
        let _ = writeln!(out, "time: {} {}", b.a, b.k);
    }
    if let Some(b) = m.balance_bound {
        let _ = writeln!(out, "balance: {} {}", b.a, b.k);
    }
    let oracle = m.oracle_name.as_deref().unwrap_or("");
    if !oracle.is_empty() && !m.has_oracle_calls() {
        let _ = writeln!(out, "oracle-name: {oracle}");
    }
    for t in &m.transitions {
        match t {
            Transition::Rw {
                source,
                read,
                target,
                write,
            } => {
                let _ = writeln!(out, "rw: {source} [{}] -> {target} [{}]", join(read), join(write));
            }
            Transition::Shift {
                source,
                target,
                moves,
            } => {
                let _ = writeln!(out, "shift: {source} -> {target} [{}]", join(moves));
            }
            Transition::Oracle(c) | Transition::ReverseOracle(c) => {
                let key = if matches!(t, Transition::Oracle(_)) {
                    "oracle"
                } else {
                    "revoracle"
                };
                let _ = write!(out, "{key}: {} {} {} {oracle} tape={}", c.query, c.yes, c.no, c.tape);
                if !c.prefix.is_empty() {
                    let _ = write!(out, " prefix={}", c.prefix);
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const COPY: &str = "\
# copy one symbol
machine tiny
tapes: input:normal, output:normal
states: s t acc
start: s
accept: acc
time: 3 1
rw: s [0,_] -> t [0,0]   # copy a zero
shift: t -> acc [S,S]
";

    #[test]
    fn parses_and_prints_round_trip() {
        let m = parse_machine(COPY).unwrap();
        assert_eq!(m.name, "tiny");
        assert_eq!(m.transitions.len(), 2);
        assert_eq!(m.time_bound, PolyBound::new(3, 1));
        let again = parse_machine(&m.to_string()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn unknown_directive_reports_line() {
        let text = COPY.replace("time: 3 1", "speed: 3 1");
        match parse_machine(&text) {
            Err(ParseError::Syntax { line, msg }) => {
                assert_eq!(line, 7);
                assert!(msg.contains("speed"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bare_delete_rejected() {
        let text = "machine x\ntapes: input:rubber, output:normal\nstart: s\naccept: a\nshift: s -> a [D,S]\n";
        assert!(matches!(
            parse_machine(text),
            Err(ParseError::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn rubber_op_on_normal_tape_rejected() {
        let text = "machine x\ntapes: input:normal, output:normal\nstart: s\naccept: a\nshift: s -> a [I(0),S]\n";
        assert!(matches!(
            parse_machine(text),
            Err(ParseError::Structure(MachineError::IllegalRubberOp(0)))
        ));
    }

    #[test]
    fn oracle_defaults_to_query_tape() {
        let text = "machine o\ntapes: input:normal, output:normal, query:normal\nstart: q\naccept: a\noracle: q y n even-weight\nshift: y -> a [S,S,S]\n";
        let m = parse_machine(text).unwrap();
        match &m.transitions[0] {
            Transition::Oracle(c) => assert_eq!(c.tape, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_machine(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn undeclared_state_rejected() {
        let text = COPY.replace("states: s t acc", "states: s acc");
        assert!(matches!(
            parse_machine(&text),
            Err(ParseError::Structure(MachineError::UndeclaredState(_)))
        ));
    }
}
