use std::fmt;

use super::{deserialize_machine, pair_encode, serialize_machine, CodecError};
use crate::machine::{parse_machine, validate_deterministic, validate_injective, Machine};

/// The oracle an `invfP_NP` program is expected to name.
pub const FIXED_ORACLE: &str = "universal";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    Fp,
    InvFp,
    InvFpNp,
    CofpPair,
    RegcofpPair,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::Fp => "fP",
            ClassTag::InvFp => "invfP",
            ClassTag::InvFpNp => "invfP_NP",
            ClassTag::CofpPair => "cofP_pair",
            ClassTag::RegcofpPair => "regcofp_pair",
        }
    }

    pub fn parse(s: &str) -> Option<ClassTag> {
        [
            ClassTag::Fp,
            ClassTag::InvFp,
            ClassTag::InvFpNp,
            ClassTag::CofpPair,
            ClassTag::RegcofpPair,
        ]
        .into_iter()
        .find(|t| t.as_str() == s)
    }

    /// Component classes of a pair tag.
    pub fn parts(self) -> Option<[ClassTag; 2]> {
        match self {
            ClassTag::CofpPair => Some([ClassTag::InvFpNp, ClassTag::Fp]),
            ClassTag::RegcofpPair => Some([ClassTag::CofpPair, ClassTag::CofpPair]),
            _ => None,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated program. Simple programs carry a serialized machine; pair
/// programs carry two components and `bits = pair_encode(bits₀, bits₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub class: ClassTag,
    pub bits: String,
    pub parts: Vec<Program>,
}

fn check_class(m: &Machine, class: ClassTag) -> Result<(), CodecError> {
    let bad = |why: String| Err(CodecError::InvalidProgram(format!("`{}` is not {class}: {why}", m.name)));
    if let Err(e) = m.check_structure() {
        return bad(e.to_string());
    }
    if !validate_deterministic(m).is_ok() {
        return bad("not deterministic".into());
    }
    if m.time_bound.is_none() || m.balance_bound.is_none() {
        return bad("missing a built-in bound".into());
    }
    if m.has_oracle_calls() && class != ClassTag::InvFpNp {
        return bad("uses an oracle".into());
    }
    if matches!(class, ClassTag::InvFp | ClassTag::InvFpNp) {
        match validate_injective(m) {
            Ok(r) if r.is_ok() => {}
            _ => return bad("not injective".into()),
        }
    }
    Ok(())
}

impl Program {
    pub fn from_machine(m: &Machine, class: ClassTag) -> Result<Program, CodecError> {
        if class.parts().is_some() {
            return Err(CodecError::InvalidProgram(format!("{class} needs two components")));
        }
        check_class(m, class)?;
        Ok(Program {
            class,
            bits: serialize_machine(m),
            parts: Vec::new(),
        })
    }

    pub fn pair(class: ClassTag, first: Program, second: Program) -> Result<Program, CodecError> {
        let Some(want) = class.parts() else {
            return Err(CodecError::InvalidProgram(format!("{class} is not a pair class")));
        };
        for (p, w) in [&first, &second].into_iter().zip(want) {
            if p.class != w {
                return Err(CodecError::InvalidProgram(format!(
                    "{class} component is {}, expected {w}",
                    p.class
                )));
            }
        }
        Ok(Program {
            class,
            bits: pair_encode(&first.bits, &second.bits),
            parts: vec![first, second],
        })
    }

    /// Decodes and validates a simple program.
    pub fn from_bits(bits: &str, class: ClassTag) -> Result<Program, CodecError> {
        let m = deserialize_machine(bits)?;
        check_class(&m, class)?;
        Ok(Program {
            class,
            bits: bits.to_string(),
            parts: Vec::new(),
        })
    }

    pub fn machine(&self) -> Result<Machine, CodecError> {
        if self.class.parts().is_some() {
            return Err(CodecError::InvalidProgram(format!("{} has no single machine", self.class)));
        }
        deserialize_machine(&self.bits)
    }

    /// Reads the file format: a `program <tag>` line followed by machine
    /// text, or for pair tags by the two component programs.
    pub fn parse(text: &str) -> Result<Program, CodecError> {
        let lines: Vec<&str> = text.lines().collect();
        let (p, rest) = parse_at(&lines, 0)?;
        if let Some(extra) = lines[rest..].iter().find(|l| is_content(l)) {
            return Err(CodecError::MalformedProgram(format!("trailing text `{extra}`")));
        }
        Ok(p)
    }
}

fn is_content(line: &str) -> bool {
    let t = line.trim();
    !t.is_empty() && !t.starts_with('#')
}

fn header(line: &str) -> Option<&str> {
    line.trim().strip_prefix("program ").map(str::trim)
}

fn parse_at(lines: &[&str], mut i: usize) -> Result<(Program, usize), CodecError> {
    while i < lines.len() && !is_content(lines[i]) {
        i += 1;
    }
    let Some(tag) = lines.get(i).and_then(|l| header(l)) else {
        return Err(CodecError::MalformedProgram("expected `program <class>`".into()));
    };
    let class = ClassTag::parse(tag).ok_or_else(|| CodecError::MalformedProgram(format!("unknown class `{tag}`")))?;
    i += 1;
    if class.parts().is_some() {
        let (a, j) = parse_at(lines, i)?;
        let (b, k) = parse_at(lines, j)?;
        return Ok((Program::pair(class, a, b)?, k));
    }
    let end = (i..lines.len()).find(|&j| header(lines[j]).is_some()).unwrap_or(lines.len());
    let m = parse_machine(&lines[i..end].join("\n")).map_err(|e| CodecError::MalformedProgram(e.to_string()))?;
    Ok((Program::from_machine(&m, class)?, end))
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "program {}", self.class)?;
        if self.parts.is_empty() {
            match self.machine() {
                Ok(m) => write!(f, "{m}"),
                Err(_) => Err(fmt::Error),
            }
        } else {
            for p in &self.parts {
                write!(f, "{p}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn class_checks() {
        assert!(Program::from_machine(&corpus::g_machine(), ClassTag::InvFp).is_ok());
        assert!(Program::from_machine(&corpus::drop_last(), ClassTag::Fp).is_ok());
        assert!(matches!(
            Program::from_machine(&corpus::drop_last(), ClassTag::InvFp),
            Err(CodecError::InvalidProgram(_))
        ));
        assert!(matches!(
            Program::from_machine(&corpus::tag("even"), ClassTag::InvFp),
            Err(CodecError::InvalidProgram(_))
        ));
        assert!(Program::from_machine(&corpus::tag(FIXED_ORACLE), ClassTag::InvFpNp).is_ok());
    }

    #[test]
    fn file_format_round_trips() {
        let v = Program::from_machine(&corpus::append0(), ClassTag::InvFpNp).unwrap();
        let w = Program::from_machine(&corpus::drop_last(), ClassTag::Fp).unwrap();
        let cofp = Program::pair(ClassTag::CofpPair, v.clone(), w).unwrap();
        let reg = Program::pair(ClassTag::RegcofpPair, cofp.clone(), cofp.clone()).unwrap();
        for p in [v, cofp, reg] {
            assert_eq!(Program::parse(&p.to_string()).unwrap(), p);
        }
        assert!(matches!(Program::parse("program nope\n"), Err(CodecError::MalformedProgram(_))));
    }

    #[test]
    fn pair_components_are_checked() {
        let v = Program::from_machine(&corpus::append0(), ClassTag::InvFpNp).unwrap();
        assert!(Program::pair(ClassTag::CofpPair, v.clone(), v).is_err());
    }
}
