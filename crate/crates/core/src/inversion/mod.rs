//! Inverting machine-computed functions: least preimages by enumeration,
//! reversal of injective programs, and dovetailed search over inverters.

mod levin;

use thiserror::Error;

use crate::bits;
use crate::codec::{ClassTag, CodecError, Program};
use crate::fnlab::FiniteFn;
use crate::machine::{Executor, Limits, Machine, RunOutcome};
use crate::transform::{reverse, simulate_reverse_oracle};

pub use levin::{levin_invert, SearchStats, FALLBACK_ID, VERIFY_ID};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InversionError {
    #[error("`{0}` has no preimage within the balance window")]
    NotInImage(String),
    #[error("machine `{0}` has no balance bound to limit the search")]
    NoBalanceBound(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Longest preimage length the balance bound of `m` allows for `y`.
pub(crate) fn window(m: &Machine, y: &str) -> Result<usize, InversionError> {
    let b = m
        .balance_bound
        .ok_or_else(|| InversionError::NoBalanceBound(m.name.clone()))?;
    Ok(b.eval(y.chars().count() as u64).min(usize::MAX as u64) as usize)
}

/// The length-lexicographically least `x` with `m(x) = y`, searched over
/// `|x| ≤ B(|y|)` for the balance bound `B`.
pub fn fmin_invert(m: &Machine, y: &str) -> Result<String, InversionError> {
    let max = window(m, y)?;
    let exec = Executor::new(m);
    for x in bits::words_up_to(max) {
        if let (RunOutcome::Accept(out), _) = exec.run(&x, None, Limits::default()) {
            if out == y {
                return Ok(x);
            }
        }
    }
    Err(InversionError::NotInImage(y.to_string()))
}

/// `fmin_invert` on every output of length at most `max_out_len`.
pub fn fmin_table(m: &Machine, max_out_len: usize) -> Result<FiniteFn, InversionError> {
    let mut t = FiniteFn::new();
    for y in bits::words_up_to(max_out_len) {
        match fmin_invert(m, &y) {
            Ok(x) => t.insert(&y, &x),
            Err(InversionError::NotInImage(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(t)
}

/// The program of the reversed machine. Reverse oracle calls are replaced
/// by forward calls with an answer check.
pub fn prog_inv_injective(w: &Program) -> Result<Program, InversionError> {
    if !matches!(w.class, ClassTag::InvFp | ClassTag::InvFpNp) {
        return Err(CodecError::InvalidProgram(format!("{} is not an injective program class", w.class)).into());
    }
    let m = w.machine()?;
    let r = simulate_reverse_oracle(&reverse(&m));
    Ok(Program::from_machine(&r, w.class)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fnlab::{is_mutual, FiniteFn};
    use crate::machine::{extract_fn, run};
    use crate::transform::equivalent_up_to_renaming;

    #[test]
    fn fmin_examples() {
        assert_eq!(fmin_invert(&corpus::drop_last(), "1"), Ok("10".into()));
        assert_eq!(fmin_invert(&corpus::g_machine(), "00"), Ok("0000".into()));
        assert_eq!(fmin_invert(&corpus::identity(), "011"), Ok("011".into()));
        assert_eq!(fmin_invert(&corpus::constant(), "0"), Err(InversionError::NotInImage("0".into())));
        let mut unbounded = corpus::identity();
        unbounded.balance_bound = None;
        assert!(matches!(fmin_invert(&unbounded, "0"), Err(InversionError::NoBalanceBound(_))));
    }

    #[test]
    fn fmin_tables() {
        assert_eq!(
            fmin_table(&corpus::drop_last(), 1).unwrap(),
            FiniteFn::from_pairs(&[("", "0"), ("0", "00"), ("1", "10")])
        );
        assert_eq!(
            fmin_table(&corpus::identity(), 1).unwrap(),
            FiniteFn::from_pairs(&[("", ""), ("0", "0"), ("1", "1")])
        );
        assert_eq!(fmin_table(&corpus::constant(), 1).unwrap(), FiniteFn::from_pairs(&[("1", "")]));
    }

    #[test]
    fn fmin_is_a_mutual_inverse() {
        for m in corpus::all().iter().filter(|m| m.name != "g") {
            let f = extract_fn(m, 4, None);
            let t = fmin_table(m, 3).unwrap();
            let img: std::collections::BTreeSet<String> = f.image().into_iter().filter(|y| y.len() <= 3).collect();
            assert_eq!(t.domain(), img, "{}", m.name);
            assert!(t.is_injective(), "{}", m.name);
            for (y, x) in t.iter() {
                assert_eq!(run(m, x, None, Limits::default()), RunOutcome::Accept(y.into()));
            }
            let fw = FiniteFn::compose(&f, &t);
            assert_eq!(fw, FiniteFn::identity_on(&t.domain()), "{}", m.name);
            assert!(is_mutual(&t, &f.restrict(&t.image())), "{}", m.name);
        }
    }

    #[test]
    fn program_inversion() {
        let id = Program::from_machine(&corpus::identity(), ClassTag::InvFp).unwrap();
        let inv = prog_inv_injective(&id).unwrap();
        assert_eq!(extract_fn(&inv.machine().unwrap(), 4, None), extract_fn(&corpus::identity(), 4, None));

        let g = Program::from_machine(&corpus::g_machine(), ClassTag::InvFp).unwrap();
        let gi = prog_inv_injective(&g).unwrap().machine().unwrap();
        assert_eq!(run(&gi, "00", None, Limits::default()), RunOutcome::Accept("0000".into()));

        for m in corpus::injective_corpus() {
            let w = Program::from_machine(&m, ClassTag::InvFp).unwrap();
            let back = prog_inv_injective(&prog_inv_injective(&w).unwrap()).unwrap();
            assert!(equivalent_up_to_renaming(&back.machine().unwrap(), &m), "{}", m.name);
        }
        let dl = Program::from_machine(&corpus::drop_last(), ClassTag::Fp).unwrap();
        assert!(prog_inv_injective(&dl).is_err());
    }
}
