use super::inverse::is_mutual;
use super::{FiniteFn, FnError, Universe};

/// `f₀(0x) = 1 f(x)`.
pub fn pad_zero(f: &FiniteFn) -> FiniteFn {
    let mut out = FiniteFn::new();
    for (x, y) in f.iter() {
        out.insert(&format!("0{x}"), &format!("1{y}"));
    }
    out
}

/// Builds `F' = f₁' ∪ f₁'⁻¹` from an injective mutual inverse `f'` of `f`
/// with `Dom(f') = Im(f)`, where `f₁'(1y) = 0 f'(y)`. The result is an
/// involution and an inverse of `pad_zero(f)`.
pub fn group_inverse(f: &FiniteFn, fp: &FiniteFn) -> Result<FiniteFn, FnError> {
    if !fp.is_injective() {
        return Err(FnError::NotMutual);
    }
    if fp.domain() != f.image() {
        return Err(FnError::DomainMismatch);
    }
    if !is_mutual(fp, f) {
        return Err(FnError::NotMutual);
    }
    let mut out = FiniteFn::new();
    for (y, x) in fp.iter() {
        let (a, b) = (format!("1{y}"), format!("0{x}"));
        out.insert(&a, &b);
        out.insert(&b, &a);
    }
    Ok(out)
}

/// `π_a(z) = a z` for `z` in the universe.
pub fn pi(a: &str, u: &Universe) -> FiniteFn {
    let mut out = FiniteFn::new();
    for z in u.words() {
        out.insert(&z, &format!("{a}{z}"));
    }
    out
}

/// `π_a'(a z) = z` for `z` in the universe.
pub fn pi_prime(a: &str, u: &Universe) -> FiniteFn {
    let mut out = FiniteFn::new();
    for z in u.words() {
        out.insert(&format!("{a}{z}"), &z);
    }
    out
}

/// `f1 = β ∘ f2 ∘ α`.
pub fn simulates(f1: &FiniteFn, f2: &FiniteFn, beta: &FiniteFn, alpha: &FiniteFn) -> bool {
    FiniteFn::compose_all(&[beta, f2, alpha]) == *f1
}

#[cfg(test)]
mod tests {
    use super::super::inverse::is_inverse;
    use super::*;

    #[test]
    fn collapsing_map_example() {
        let f = FiniteFn::from_pairs(&[("0", "0"), ("1", "0")]);
        let fp = FiniteFn::from_pairs(&[("0", "0")]);
        let f0 = pad_zero(&f);
        assert_eq!(f0, FiniteFn::from_pairs(&[("00", "10"), ("01", "10")]));
        let big = group_inverse(&f, &fp).unwrap();
        assert_eq!(big, FiniteFn::from_pairs(&[("10", "00"), ("00", "10")]));
        assert_eq!(FiniteFn::compose(&big, &big), FiniteFn::identity_on(&big.domain()));
        assert!(is_inverse(&big, &f0));
    }

    #[test]
    fn rejects_bad_inverses() {
        let f = FiniteFn::from_pairs(&[("0", "0"), ("1", "0")]);
        assert_eq!(
            group_inverse(&f, &FiniteFn::from_pairs(&[("0", "1"), ("1", "1")])),
            Err(FnError::NotMutual)
        );
        let g = FiniteFn::from_pairs(&[("0", "1")]);
        let gp = FiniteFn::from_pairs(&[("1", "1")]);
        assert_eq!(group_inverse(&g, &gp), Err(FnError::NotMutual));
        let h = FiniteFn::from_pairs(&[("0", "1")]);
        let hp = FiniteFn::from_pairs(&[("1", "0"), ("00", "11")]);
        assert_eq!(group_inverse(&h, &hp), Err(FnError::DomainMismatch));
    }

    #[test]
    fn empty_function() {
        let theta = FiniteFn::new();
        assert!(pad_zero(&theta).is_empty());
        assert!(group_inverse(&theta, &theta).unwrap().is_empty());
    }

    #[test]
    fn projections_recover_f() {
        let f = FiniteFn::from_pairs(&[("0", "0"), ("1", "0"), ("10", "")]);
        let u = Universe::covering(&[&f]);
        let f0 = pad_zero(&f);
        assert!(simulates(&f, &f0, &pi_prime("1", &u), &pi("0", &u)));
        assert!(simulates(&f0, &f, &pi("1", &u), &pi_prime("0", &u)));
        let id = u.identity();
        assert!(simulates(&f, &f, &id, &id));
    }
}
