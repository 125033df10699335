//! Bit encodings of words, pairs and machines, and the bounded evaluators
//! built on them.

mod eval;
mod program;

use thiserror::Error;

use crate::machine::{parse_machine, Machine, PolyBound};

pub use eval::{cofp_eval, inj_ev, regcofp_eval};
pub use program::{ClassTag, Program, FIXED_ORACLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("not a pair encoding: {0}")]
    NotAPair(String),
    #[error("malformed program: {0}")]
    MalformedProgram(String),
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("built-in bound {bound} is not below {limit}")]
    BoundTooLarge { bound: PolyBound, limit: PolyBound },
    #[error("input is outside the program's domain")]
    NotInDomain,
    #[error("no output")]
    NoOutput,
}

/// `0 ↦ 00`, `1 ↦ 01`.
pub fn code(x: &str) -> String {
    let mut out = String::with_capacity(2 * x.len());
    for c in x.chars() {
        out.push('0');
        out.push(c);
    }
    out
}

/// `code(w) 11 x`.
pub fn pair_encode(w: &str, x: &str) -> String {
    let mut s = code(w);
    s.push_str("11");
    s.push_str(x);
    s
}

/// Splits `code(w) 11 x` into `(w, x)`.
pub fn pair_decode(s: &str) -> Result<(String, String), CodecError> {
    let b = s.as_bytes();
    let mut w = String::new();
    let mut i = 0;
    while i + 1 < b.len() {
        match (b[i], b[i + 1]) {
            (b'0', c @ (b'0' | b'1')) => w.push(c as char),
            (b'1', b'1') => {
                let x = &s[i + 2..];
                if !crate::bits::is_bitstring(x) {
                    return Err(CodecError::NotAPair(format!("`{s}` has non-bit symbols")));
                }
                return Ok((w, x.to_string()));
            }
            _ => return Err(CodecError::NotAPair(format!("`{s}` has `10` or a non-bit at position {i}"))),
        }
        i += 2;
    }
    Err(CodecError::NotAPair(format!("`{s}` has no separator")))
}

/// The machine's text form, as UTF-8 bytes, eight bits per byte, most
/// significant bit first.
pub fn serialize_machine(m: &Machine) -> String {
    let text = m.to_string();
    let mut out = String::with_capacity(text.len() * 8);
    for byte in text.bytes() {
        for k in (0..8).rev() {
            out.push(if byte >> k & 1 == 1 { '1' } else { '0' });
        }
    }
    out
}

pub fn deserialize_machine(bits: &str) -> Result<Machine, CodecError> {
    if !bits.len().is_multiple_of(8) || !crate::bits::is_bitstring(bits) {
        return Err(CodecError::MalformedProgram(format!(
            "{} bits is not a whole number of bytes",
            bits.len()
        )));
    }
    let bytes: Vec<u8> = bits
        .as_bytes()
        .chunks(8)
        .map(|c| c.iter().fold(0u8, |acc, &b| acc << 1 | (b - b'0')))
        .collect();
    let text = String::from_utf8(bytes).map_err(|e| CodecError::MalformedProgram(e.to_string()))?;
    parse_machine(&text).map_err(|e| CodecError::MalformedProgram(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;

    #[test]
    fn code_examples() {
        assert_eq!(code("0"), "00");
        assert_eq!(code(""), "");
        assert_eq!(code("101"), "010001");
        assert_eq!(pair_encode("1", "0"), "01110");
    }

    #[test]
    fn pair_decode_examples() {
        assert_eq!(pair_decode("00011110"), Ok(("01".into(), "10".into())));
        assert!(matches!(pair_decode("0000"), Err(CodecError::NotAPair(_))));
        assert!(matches!(pair_decode("1011"), Err(CodecError::NotAPair(_))));
        assert!(matches!(pair_decode("0"), Err(CodecError::NotAPair(_))));
        assert_eq!(pair_decode("11"), Ok((String::new(), String::new())));
    }

    #[test]
    fn machines_round_trip() {
        for m in corpus::all().into_iter().chain(corpus::verifiers()) {
            let bits = serialize_machine(&m);
            assert!(crate::bits::is_bitstring(&bits));
            assert_eq!(deserialize_machine(&bits).unwrap(), m, "{}", m.name);
        }
        assert!(matches!(deserialize_machine("11"), Err(CodecError::MalformedProgram(_))));
        assert!(matches!(deserialize_machine("00000000"), Err(CodecError::MalformedProgram(_))));
    }

    #[test]
    fn serialization_is_injective_on_corpus() {
        let all: Vec<String> = corpus::all().iter().map(serialize_machine).collect();
        let distinct: std::collections::BTreeSet<&String> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }

    proptest! {
        #[test]
        fn pairs_round_trip(w in "[01]{0,12}", x in "[01]{0,12}") {
            prop_assert_eq!(pair_decode(&pair_encode(&w, &x)), Ok((w, x)));
        }

        #[test]
        fn code_is_prefix_free(a in "[01]{0,8}", b in "[01]{0,8}") {
            let (ca, cb) = (pair_encode(&a, ""), pair_encode(&b, ""));
            prop_assert_eq!(cb.starts_with(&ca), a == b);
        }
    }
}
