use super::{pair_decode, pair_encode, ClassTag, CodecError, Program};
use crate::machine::{run, Limits, Machine, Oracle, PolyBound, RunOutcome};

fn check_below(m: &Machine, q: &PolyBound) -> Result<(), CodecError> {
    for b in [m.time_bound, m.balance_bound].into_iter().flatten() {
        if !b.is_below(q) {
            return Err(CodecError::BoundTooLarge { bound: b, limit: *q });
        }
    }
    Ok(())
}

fn require(p: &Program, allowed: &[ClassTag]) -> Result<(), CodecError> {
    if allowed.contains(&p.class) {
        Ok(())
    } else {
        Err(CodecError::InvalidProgram(format!("expected one of {allowed:?}, got {}", p.class)))
    }
}

struct Bounded {
    machine: Machine,
}

impl Bounded {
    fn new(p: &Program, q: &PolyBound) -> Result<Bounded, CodecError> {
        let machine = p.machine()?;
        check_below(&machine, q)?;
        Ok(Bounded { machine })
    }

    fn apply(&self, x: &str, oracle: Option<&dyn Oracle>) -> Option<String> {
        match run(&self.machine, x, oracle, Limits::default()) {
            RunOutcome::Accept(y) => Some(y),
            _ => None,
        }
    }
}

/// `code(w) 11 x ↦ code(w) 11 φ_w(x)` for invfP programs `w` whose bounds
/// lie strictly below `q`. With an oracle, `w` may be an invfP_NP program.
pub fn inj_ev(q: &PolyBound, s: &str, oracle: Option<&dyn Oracle>) -> Result<String, CodecError> {
    let (w, x) = pair_decode(s)?;
    let class = if oracle.is_some() { ClassTag::InvFpNp } else { ClassTag::InvFp };
    let prog = Program::from_bits(&w, class)?;
    let m = Bounded::new(&prog, q)?;
    let y = m.apply(&x, oracle).ok_or(CodecError::NotInDomain)?;
    Ok(pair_encode(&w, &y))
}

/// The cofP evaluator for `(v', w)`: `x = ψ_v'(y)` is returned when
/// `φ_w ψ_v' φ_w(x) = φ_w(x)` and `ψ_v' φ_w ψ_v'(y) = ψ_v'(y)`.
pub fn cofp_eval(
    q: &PolyBound,
    v: &Program,
    w: &Program,
    y: &str,
    oracle: Option<&dyn Oracle>,
) -> Result<String, CodecError> {
    require(v, &[ClassTag::InvFp, ClassTag::InvFpNp])?;
    require(w, &[ClassTag::Fp, ClassTag::InvFp])?;
    let (psi, phi) = (Bounded::new(v, q)?, Bounded::new(w, q)?);
    let out = (|| {
        let x = psi.apply(y, oracle)?;
        let z = phi.apply(&x, None)?;
        let back = psi.apply(&z, oracle)?;
        let again = phi.apply(&back, None)?;
        (again == z && back == x).then_some(x)
    })();
    out.ok_or(CodecError::NoOutput)
}

fn cofp_of(q: &PolyBound, p: &Program, x: &str, oracle: Option<&dyn Oracle>) -> Result<Option<String>, CodecError> {
    require(p, &[ClassTag::CofpPair])?;
    match cofp_eval(q, &p.parts[0], &p.parts[1], x, oracle) {
        Ok(y) => Ok(Some(y)),
        Err(CodecError::NoOutput) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `ψ_u(x)` when `ψ_u ψ_v' ψ_u(x) = ψ_u(x)`, for cofP pair programs `u`
/// and `v'`.
pub fn regcofp_eval(
    q: &PolyBound,
    u: &Program,
    v: &Program,
    x: &str,
    oracle: Option<&dyn Oracle>,
) -> Result<String, CodecError> {
    let Some(a) = cofp_of(q, u, x, oracle)? else {
        return Err(CodecError::NoOutput);
    };
    let Some(b) = cofp_of(q, v, &a, oracle)? else {
        return Err(CodecError::NoOutput);
    };
    match cofp_of(q, u, &b, oracle)? {
        Some(c) if c == a => Ok(a),
        _ => Err(CodecError::NoOutput),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn q2() -> PolyBound {
        PolyBound::new(5, 2).unwrap()
    }

    fn prog(m: Machine, class: ClassTag) -> Program {
        Program::from_machine(&m, class).unwrap()
    }

    fn cofp(v: Machine, w: Machine) -> Program {
        Program::pair(ClassTag::CofpPair, prog(v, ClassTag::InvFpNp), prog(w, ClassTag::Fp)).unwrap()
    }

    #[test]
    fn inj_ev_examples() {
        let id = prog(corpus::identity(), ClassTag::InvFp);
        let s = pair_encode(&id.bits, "10");
        assert_eq!(inj_ev(&q2(), &s, None), Ok(s.clone()));

        let g = prog(corpus::g_machine(), ClassTag::InvFp);
        let q5 = PolyBound::new(1, 5).unwrap();
        assert_eq!(inj_ev(&q5, &pair_encode(&g.bits, "0000"), None), Ok(pair_encode(&g.bits, "00")));
        assert_eq!(inj_ev(&q5, &pair_encode(&g.bits, "000"), None), Err(CodecError::NotInDomain));

        let mut slow = corpus::identity();
        slow.time_bound = PolyBound::new(9, 3);
        let slow = prog(slow, ClassTag::InvFp);
        assert!(matches!(
            inj_ev(&q2(), &pair_encode(&slow.bits, "1"), None),
            Err(CodecError::BoundTooLarge { .. })
        ));
        let dl = prog(corpus::drop_last(), ClassTag::Fp);
        assert!(matches!(
            inj_ev(&q2(), &pair_encode(&dl.bits, "1"), None),
            Err(CodecError::InvalidProgram(_))
        ));
        assert!(matches!(inj_ev(&q2(), "0000", None), Err(CodecError::NotAPair(_))));
    }

    #[test]
    fn inj_ev_with_oracle() {
        let t = prog(corpus::tag(crate::codec::FIXED_ORACLE), ClassTag::InvFpNp);
        let even = |w: &str| w.chars().filter(|&c| c == '1').count() % 2 == 0;
        let s = pair_encode(&t.bits, "11");
        assert_eq!(inj_ev(&q2(), &s, Some(&even)), Ok(pair_encode(&t.bits, "111")));
    }

    /// Defined exactly on words ending in `0`, mapping them to themselves.
    fn ends_in_zero() -> Machine {
        let mut m = corpus::append0();
        let strip = corpus::strip0();
        m = crate::transform::chain(&strip, &m);
        m.name = "ends_in_zero".into();
        m
    }

    #[test]
    fn cofp_examples() {
        let id = cofp(corpus::identity(), corpus::identity());
        assert_eq!(cofp_eval(&q2(), &id.parts[0], &id.parts[1], "01", None), Ok("01".into()));

        let p = cofp(corpus::append0(), corpus::drop_last());
        assert_eq!(cofp_eval(&q2(), &p.parts[0], &p.parts[1], "1", None), Ok("10".into()));

        let p = cofp(corpus::append1(), ends_in_zero());
        assert_eq!(cofp_eval(&q2(), &p.parts[0], &p.parts[1], "1", None), Err(CodecError::NoOutput));
    }

    #[test]
    fn regcofp_examples() {
        let id = cofp(corpus::identity(), corpus::identity());
        assert_eq!(regcofp_eval(&q2(), &id, &id, "0", None), Ok("0".into()));

        let u = cofp(corpus::append0(), corpus::drop_last());
        let v = cofp(corpus::strip0(), corpus::append0());
        for x in ["", "0", "1", "0110"] {
            assert_eq!(regcofp_eval(&q2(), &u, &v, x, None), Ok(format!("{x}0")));
        }

        let dead = cofp(corpus::empty(), corpus::identity());
        for x in ["", "0", "11"] {
            assert_eq!(regcofp_eval(&q2(), &u, &dead, x, None), Err(CodecError::NoOutput));
        }
    }
}
