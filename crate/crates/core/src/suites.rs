//! Seeded verification suites over the corpus and the function lab, one per
//! acceptance criterion. Each suite records how many checks it made, the
//! violations it found and its wall time against a fixed limit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::codec::{code, cofp_eval, inj_ev, pair_decode, pair_encode, ClassTag, CodecError, Program};
use crate::corpus;
use crate::fnlab::{
    all_partial_fns, choice_functions, fmin, green_relations, group_inverse, idempotents, is_coinverse, is_inverse,
    is_mutual, is_subinverse, lfix, maximal_subgroup, monoid_closure, pad_zero, partial_injections, pi, pi_prime,
    random_fn, random_injective_fn, repr_choice_functions, rfix, simulates, FiniteFn, Universe,
};
use crate::inversion::{fmin_invert, levin_invert, prog_inv_injective, VERIFY_ID};
use crate::machine::{Executor, extract_fn, extract_fn_with, run, run_traced, validate_injective, Limits, PolyBound, RunOutcome};
use crate::reductions::{
    asymmetry_witness, check_reduction, OracleLanguage, ReductionKind, ReductionMap, ReductionWitness,
    UniversalLanguage,
};
use crate::transform::{bennett_clean, bennett_garbage, chain, reverse};

pub const DEFAULT_SEED: u64 = 20240611;

/// Steps of `g` on `0^(2^m)` stay below `G_STEP_CONSTANT · 2^m`. Measured
/// once (the worst ratio over m = 1..12 is 6.75, at m = 2) and frozen.
pub const G_STEP_CONSTANT: u64 = 7;

/// Failure descriptions kept per suite; the count is always exact.
const FAILURE_SAMPLE: usize = 20;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    /// Checks and violations per named statement, for suites that check
    /// several statements.
    pub statements: BTreeMap<&'static str, (u64, u64)>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl SuiteReport {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.within_limit()
    }

    /// Names of the statements with at least one violation.
    pub fn violated_statements(&self) -> Vec<&'static str> {
        self.statements.iter().filter(|(_, v)| v.1 > 0).map(|(k, _)| *k).collect()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} checks, {} violations, {:.2}s (limit {}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.violations,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        for (name, (checked, bad)) in &self.statements {
            write!(f, "\n  {}: {name} ({checked} checks, {bad} violations)", if *bad == 0 { "holds" } else { "FAILS" })?;
        }
        for x in &self.failures {
            write!(f, "\n  violation: {x}")?;
        }
        if self.violations as usize > self.failures.len() {
            write!(f, "\n  ... {} more", self.violations as usize - self.failures.len())?;
        }
        Ok(())
    }
}

struct Tally {
    checked: u64,
    violations: u64,
    failures: Vec<String>,
    notes: Vec<String>,
    statements: BTreeMap<&'static str, (u64, u64)>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            checked: 0,
            violations: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            statements: BTreeMap::new(),
        }
    }

    fn check_named(&mut self, statement: &'static str, ok: bool, what: impl FnOnce() -> String) {
        let e = self.statements.entry(statement).or_default();
        e.0 += 1;
        if !ok {
            e.1 += 1;
        }
        self.check(ok, || format!("{statement}: {}", what()));
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.failures.len() < FAILURE_SAMPLE {
                self.failures.push(what());
            }
        }
    }
}

type SuiteFn = fn(u64, &mut Tally);

const SUITES: [(&str, u64, SuiteFn); 12] = [
    ("g-machine", 5, g_machine),
    ("reversal", 10, reversal),
    ("bennett", 30, bennett),
    ("fmin", 60, fmin_suite),
    ("coinverse", 30, coinverse),
    ("lemmas", 120, lemmas),
    ("fixators", 60, fixators),
    ("group-inverse", 30, group_inverse_suite),
    ("monoid", 10, monoid),
    ("codec", 30, codec),
    ("reductions", 30, reductions),
    ("levin", 30, levin),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.0).collect()
}

/// Runs the named suite; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let &(name, limit, body) = SUITES.iter().find(|s| s.0 == name)?;
    let mut t = Tally::new();
    let start = Instant::now();
    body(seed, &mut t);
    Some(SuiteReport {
        name,
        checked: t.checked,
        violations: t.violations,
        failures: t.failures,
        notes: t.notes,
        statements: t.statements,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit),
    })
}

fn zeros(n: usize) -> String {
    "0".repeat(n)
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn accepts(out: &RunOutcome, y: &str) -> bool {
    matches!(out, RunOutcome::Accept(z) if z == y)
}

fn g_machine(_: u64, t: &mut Tally) {
    let g = corpus::g_machine();
    let gr = reverse(&g);
    let mut worst = 0.0f64;
    for m in 1..=12usize {
        let n = 1usize << m;
        let (out, stats) = run_traced(&g, &zeros(n), None, Limits::default());
        t.check(accepts(&out, &zeros(m)), || format!("g(0^{n}) = {out:?}"));
        worst = worst.max(stats.steps as f64 / n as f64);
        t.check(stats.steps <= G_STEP_CONSTANT * n as u64, || {
            format!("g(0^{n}) took {} steps > {G_STEP_CONSTANT}·{n}", stats.steps)
        });
        let (out, stats) = run_traced(&gr, &zeros(m), None, Limits::default());
        t.check(accepts(&out, &zeros(n)), || format!("reverse(g)(0^{m}) = {out:?}"));
        t.check(stats.steps >= n as u64, || {
            format!("reverse(g)(0^{m}) took {} steps < {n}", stats.steps)
        });
    }
    t.notes.push(format!("worst steps/2^m ratio {worst:.2}, frozen constant {G_STEP_CONSTANT}"));
    let exec = Executor::new(&g);
    for k in 0..=4096usize {
        if k.is_power_of_two() {
            continue;
        }
        let (out, _) = exec.run(&zeros(k), None, Limits::default());
        t.check(out == RunOutcome::Reject, || format!("g(0^{k}) = {out:?}, expected Reject"));
    }
}

fn reversal(_: u64, t: &mut Tally) {
    let machines = corpus::injective_corpus();
    t.notes.push(format!("{} injective machines", machines.len()));
    for m in machines {
        let r = reverse(&m);
        for x in bits::words_up_to(8) {
            if let RunOutcome::Accept(y) = run(&m, &x, None, Limits::default()) {
                let back = run(&r, &y, None, Limits::default());
                t.check(accepts(&back, &x), || format!("{}: reverse on {y} gave {back:?}, expected {x}", m.name));
            }
        }
    }
}

fn bennett(_: u64, t: &mut Tally) {
    for m in corpus::all() {
        let b = match bennett_garbage(&m) {
            Ok(b) => b,
            Err(e) => {
                t.check(false, || format!("{}: {e}", m.name));
                continue;
            }
        };
        let inj = validate_injective(&b).is_ok_and(|r| r.is_ok());
        t.check(inj, || format!("{}: garbage embedding is not injective", m.name));
        // the balance bound of m would trim its domain; the embedding has its own
        let f = extract_fn_with(&m, 6, None, Limits::unbounded(1 << 16));
        for x in bits::words_up_to(6) {
            let want = f.get(&x).map(|y| pair_encode(&x, y));
            let got = match run(&b, &x, None, Limits::default()) {
                RunOutcome::Accept(y) => Some(y),
                _ => None,
            };
            t.check(got == want, || format!("{} on {x}: {got:?} vs {want:?}", m.name));
        }
    }
    match bennett_clean(&corpus::inc(), &corpus::dec()) {
        Ok(c) => {
            let inj = validate_injective(&c).is_ok_and(|r| r.is_ok());
            t.check(inj, || "clean(inc, dec) is not injective".into());
            let got = extract_fn(&c, 8, None);
            let want = extract_fn(&corpus::inc(), 8, None);
            t.check(got == want, || "clean(inc, dec) differs from inc on inputs up to 8".into());
        }
        Err(e) => t.check(false, || format!("clean(inc, dec): {e}")),
    }
}

fn check_fmin(t: &mut Tally, f: &FiniteFn) {
    let m = fmin(f);
    let ok = FiniteFn::compose(f, &m) == FiniteFn::identity_on(&f.image())
        && m.is_injective()
        && FiniteFn::compose_all(&[&m, f, &m]) == m;
    t.check(ok, || format!("fmin properties fail for {:?}", f.sorted_pairs()));
}

fn fmin_suite(seed: u64, t: &mut Tally) {
    let mut r = rng(seed, 4);
    let points = Universe::binary(5).words();
    for _ in 0..1000 {
        let density = r.gen_range(0.05..1.0);
        let f = random_fn(&mut r, &points, density);
        check_fmin(t, &f);
    }
    let three = Universe::binary(1).words();
    for f in all_partial_fns(&three, &three) {
        check_fmin(t, &f);
    }
}

/// An injective co-inverse of `f`: a random preimage for a random subset
/// of the image.
fn random_coinverse<R: Rng>(r: &mut R, f: &FiniteFn) -> FiniteFn {
    let mut out = FiniteFn::new();
    for y in f.image() {
        if r.gen_bool(0.7) {
            let pre: Vec<String> = f.preimage(&y).into_iter().collect();
            out.insert(&y, &pre[r.gen_range(0..pre.len())]);
        }
    }
    out
}

fn coinverse(seed: u64, t: &mut Tally) {
    let mut r = rng(seed, 5);
    let points = Universe::binary(3).words();
    for _ in 0..1000 {
        let f1 = random_fn(&mut r, &points, 0.8);
        let f2 = random_fn(&mut r, &points, 0.8);
        let (c1, c2) = (random_coinverse(&mut r, &f1), random_coinverse(&mut r, &f2));
        let pre = is_coinverse(&c1, &f1) && is_coinverse(&c2, &f2) && c1.is_injective() && c2.is_injective();
        t.check(pre, || "sampled co-inverse is not an injective co-inverse".into());
        let prod = FiniteFn::compose(&c1, &c2);
        let target = FiniteFn::compose(&f2, &f1);
        t.check(prod.is_injective() && is_coinverse(&prod, &target), || {
            format!("f1'f2' = {:?} is not an injective co-inverse of f2f1", prod.sorted_pairs())
        });
    }
    // mutual inverses do not compose the same way
    let f = FiniteFn::from_pairs(&[("0", "0"), ("1", "0")]);
    let fp = FiniteFn::from_pairs(&[("0", "1")]);
    t.check(is_mutual(&fp, &f) && fp.is_injective(), || "f' is not an injective mutual inverse of f".into());
    let prod = FiniteFn::compose(&fp, &fp);
    t.check(prod.is_empty(), || format!("f1'f2' = {:?}, expected the empty map", prod.sorted_pairs()));
    let ff = FiniteFn::compose(&f, &f);
    t.check(ff == f, || "f2f1 differs from f".into());
    t.check(!is_inverse(&prod, &ff), || "the empty map is an inverse of f2f1".into());
}

fn subfunctions(f: &FiniteFn) -> Vec<FiniteFn> {
    let pairs: Vec<(&str, &str)> = f.iter().collect();
    (0..1usize << pairs.len())
        .map(|mask| {
            let mut g = FiniteFn::new();
            for (i, (x, y)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.insert(x, y);
                }
            }
            g
        })
        .collect()
}

/// Sub-inverse straight from the definition: a mutual inverse of some
/// subfunction of `f`, given as `subs` with their domains.
fn subinverse_by_search(gp: &FiniteFn, subs: &[(FiniteFn, BTreeSet<String>)]) -> bool {
    let needed = gp.image();
    subs.iter().any(|(g, dom)| needed.is_subset(dom) && is_mutual(gp, g))
}

fn subfunctions_with_domains(f: &FiniteFn) -> Vec<(FiniteFn, BTreeSet<String>)> {
    subfunctions(f)
        .into_iter()
        .map(|g| {
            let d = g.domain();
            (g, d)
        })
        .collect()
}

pub const INVERSE_COVERS_IMAGE: &str = "an inverse is defined on the whole image";
pub const COINVERSE_IMAGE: &str = "a co-inverse maps into the domain";
pub const INJECTIVE_COINVERSE_DOMAIN: &str = "an injective co-inverse is defined only on the image";
pub const NONINJECTIVE_DOMAIN_EXAMPLE: &str = "a non-injective mutual inverse may reach outside the image";
pub const MUTUAL_DOMAIN: &str = "an injective mutual inverse has domain equal to the image";
pub const COINVERSE_IS_RESTRICTED_INVERSE: &str = "an injective co-inverse inverts f restricted to its image";
pub const COINVERSE_MUTUAL_OF_RESTRICTION: &str = "an injective co-inverse is a mutual inverse of an injective restriction";
pub const FULL_COINVERSE_IS_MUTUAL: &str = "a co-inverse with domain equal to the image is an injective mutual inverse";
pub const FULL_INJECTIVE_COINVERSE_IS_MUTUAL: &str =
    "an injective co-inverse with domain equal to the image is a mutual inverse";
pub const RESTRICTED_INVERSE_EXTENDS: &str = "f h|Z f = f implies f h f = f";
pub const SUBINVERSE_IFF_COINVERSE: &str = "injective sub-inverses are the injective co-inverses";
pub const SUBINVERSE_DEFINITION: &str = "is_subinverse agrees with the definition";
pub const SUBFUNCTION_OF_MUTUAL: &str = "a subfunction of a mutual inverse is a sub-inverse";
pub const SUBFUNCTION_OF_INJECTIVE_MUTUAL: &str = "a subfunction of an injective mutual inverse is a sub-inverse";
pub const SUBINVERSE_EXTENDS: &str = "an injective sub-inverse extends by fmin to an injective mutual inverse";

/// Statements of the lemma battery that fail as stated, for arbitrary
/// partial functions, with the smallest counterexample found.
pub const LEMMA_STATEMENTS_FALSE_AS_STATED: [&str; 2] = [SUBFUNCTION_OF_MUTUAL, FULL_COINVERSE_IS_MUTUAL];

fn lemmas(_: u64, t: &mut Tally) {
    let f = FiniteFn::from_pairs(&[("0", "1")]);
    let fp = FiniteFn::from_pairs(&[("0", "0"), ("1", "0")]);
    t.check_named(NONINJECTIVE_DOMAIN_EXAMPLE, is_mutual(&fp, &f) && !fp.domain().is_subset(&f.image()), || {
        "{(a,b)} and {(a,a),(b,a)}".into()
    });

    let mut total_fns = 0;
    for n in 1..=4usize {
        let points: Vec<String> = Universe::binary(2).words().into_iter().skip(1).take(n).collect();
        let fns = all_partial_fns(&points, &points);
        total_fns += fns.len();
        lemma_battery(t, &fns);
    }
    t.notes.push(format!("{total_fns} functions on 1 to 4 points, all pairs"));
}

fn lemma_battery(t: &mut Tally, fns: &[FiniteFn]) {
    let n = fns.len();
    let index: BTreeMap<&FiniteFn, usize> = fns.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut inv = vec![false; n * n];
    let mut co = vec![false; n * n];
    for (i, f) in fns.iter().enumerate() {
        for (j, fp) in fns.iter().enumerate() {
            inv[i * n + j] = is_inverse(fp, f);
            co[i * n + j] = is_coinverse(fp, f);
        }
    }
    // supersets[g] lists every h with g ⊆ h; the restrictions h|Z are
    // exactly the subfunctions of h
    let mut supersets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (h, hf) in fns.iter().enumerate() {
        for g in subfunctions(hf) {
            supersets[index[&g]].push(h);
        }
    }
    for (i, f) in fns.iter().enumerate() {
        let (dom, img) = (f.domain(), f.image());
        let subs = subfunctions_with_domains(f);
        for (j, fp) in fns.iter().enumerate() {
            let (is_inv, is_co, inj) = (inv[i * n + j], co[i * n + j], fp.is_injective());
            let (fdom, fimg) = (fp.domain(), fp.image());
            let tag = || format!("f = {:?}, f' = {:?}", f.sorted_pairs(), fp.sorted_pairs());
            if is_inv {
                t.check_named(INVERSE_COVERS_IMAGE, img.is_subset(&fdom), tag);
                for &h in &supersets[j] {
                    t.check_named(RESTRICTED_INVERSE_EXTENDS, inv[i * n + h], || {
                        format!("{} extends to {:?}", tag(), fns[h].sorted_pairs())
                    });
                }
            }
            if is_co {
                t.check_named(COINVERSE_IMAGE, fimg.is_subset(&dom), tag);
            }
            if is_co && inj {
                t.check_named(INJECTIVE_COINVERSE_DOMAIN, fdom.is_subset(&img), tag);
                let g = f.restrict(&fimg);
                t.check_named(COINVERSE_IS_RESTRICTED_INVERSE, fp.relational_inverse().ok() == Some(g.clone()), tag);
                let ok = is_mutual(fp, &g) && g.is_injective() && g.is_subfunction_of(f);
                t.check_named(COINVERSE_MUTUAL_OF_RESTRICTION, ok, tag);
            }
            if is_inv && is_co && inj {
                t.check_named(MUTUAL_DOMAIN, fdom == img, tag);
            }
            if is_co && fdom == img {
                t.check_named(FULL_COINVERSE_IS_MUTUAL, inj && is_inv, tag);
                if inj {
                    t.check_named(FULL_INJECTIVE_COINVERSE_IS_MUTUAL, is_inv, tag);
                }
            }
            let by_def = subinverse_by_search(fp, &subs);
            t.check_named(SUBINVERSE_DEFINITION, by_def == is_subinverse(fp, f), tag);
            if inj {
                t.check_named(SUBINVERSE_IFF_COINVERSE, by_def == is_co, tag);
                if by_def {
                    subinverse_patch(t, f, fp);
                }
            }
            if is_inv && is_co {
                for gp in subfunctions(fp) {
                    let ok = subinverse_by_search(&gp, &subs);
                    let what = || format!("{:?} ⊆ f' with {}", gp.sorted_pairs(), tag());
                    if inj {
                        t.check_named(SUBFUNCTION_OF_INJECTIVE_MUTUAL, ok, what);
                    }
                    t.check_named(SUBFUNCTION_OF_MUTUAL, ok, what);
                }
            }
        }
    }
}

/// Extends the injective sub-inverse `gp` of `f` by `fmin(f)` off its
/// domain; the result must be an injective mutual inverse containing `gp`.
fn subinverse_patch(t: &mut Tally, f: &FiniteFn, gp: &FiniteFn) {
    let mut patched = gp.clone();
    for (y, x) in fmin(f).iter() {
        if gp.get(y).is_none() {
            patched.insert(y, x);
        }
    }
    let ok = patched.is_injective() && is_mutual(&patched, f) && gp.is_subfunction_of(&patched);
    t.check_named(SUBINVERSE_EXTENDS, ok, || {
        format!("patch of {:?} for {:?} is {:?}", gp.sorted_pairs(), f.sorted_pairs(), patched.sorted_pairs())
    });
}

fn fixators(_: u64, t: &mut Tally) {
    let points: Vec<String> = ["0", "1", "00"].iter().map(|s| s.to_string()).collect();
    let set: BTreeSet<String> = points.iter().cloned().collect();
    let fns = all_partial_fns(&points, &points);
    let monoid = match monoid_closure(&fns, &set, fns.len() + 1) {
        Ok(m) => m,
        Err(e) => return t.check(false, || format!("monoid of all partial functions: {e}")),
    };
    t.check(monoid.len() == fns.len(), || format!("monoid has {} elements", monoid.len()));
    let el = &monoid.elements;
    for f in &fns {
        let tag = || format!("f = {:?}", f.sorted_pairs());
        let (dom, img) = (f.domain(), f.image());
        let choices: Vec<FiniteFn> = choice_functions(f).collect();
        let rf = rfix(f, &monoid);
        let lf = lfix(f, &monoid);
        let mutuals: Vec<&FiniteFn> = fns.iter().filter(|fp| is_mutual(fp, f)).collect();

        for (i, a) in el.iter().enumerate() {
            if !rf.contains(&i) {
                continue;
            }
            if a.is_injective() {
                let back = a.relational_inverse().expect("injective");
                t.check(FiniteFn::compose(f, &back) == *f, || format!("inverse of injective fixator: {}", tag()));
            }
            let keeps = dom.iter().all(|x| a.get(x).is_some_and(|y| dom.contains(y)));
            let outside = a.iter().all(|(x, y)| dom.contains(x) || !dom.contains(y));
            t.check(keeps && outside, || format!("fixator {:?} moves Dom(f): {}", a.sorted_pairs(), tag()));
            t.check(FiniteFn::compose(f, &a.restrict(&dom)) == *f, || format!("restricted fixator: {}", tag()));
        }
        for r in repr_choice_functions(f) {
            t.check(FiniteFn::compose(f, &r) == *f, || format!("representative choice not a fixator: {}", tag()));
        }

        for c in &choices {
            let cf = FiniteFn::compose(c, f);
            t.check(monoid.index_of(&cf).is_some_and(|k| rf.contains(&k)), || format!("(2) f'f ∉ RFix: {}", tag()));
            let cinv = c.relational_inverse().expect("choice functions are injective");
            t.check(FiniteFn::compose(c, &cinv) == FiniteFn::identity_on(&c.image()), || format!("(2) f'f'^-1: {}", tag()));
            t.check(FiniteFn::compose(&cinv, c) == FiniteFn::identity_on(&img), || format!("(2) f'^-1f': {}", tag()));
        }
        for c1 in &choices {
            let c1inv = c1.relational_inverse().expect("injective");
            for c2 in &choices {
                let b = FiniteFn::compose(c2, &c1inv);
                let bij = b.is_injective() && b.domain() == c1.image() && b.image() == c2.image();
                t.check(bij, || format!("(2) f2'f1'^-1 not a bijection of choice sets: {}", tag()));
                t.check(FiniteFn::compose_all(&[c2, f, c1]) == *c2, || format!("(3) f2' f f1' ≠ f2': {}", tag()));
                let moved = rf.iter().any(|&k| FiniteFn::compose(&el[k], c1) == *c2);
                t.check(moved, || format!("(4) action not transitive: {}", tag()));
            }
        }
        for &k in &rf {
            for c in &choices {
                let ac = FiniteFn::compose(&el[k], c);
                t.check(is_inverse(&ac, f) && ac.domain() == img, || format!("(4) αf' not an inverse: {}", tag()));
            }
        }
        let restricted: BTreeSet<FiniteFn> = rf.iter().map(|&k| el[k].restrict(&dom)).collect();
        let restricted: Vec<FiniteFn> = restricted.into_iter().collect();
        for (i, a1) in restricted.iter().enumerate() {
            for a2 in &restricted[i + 1..] {
                let apart = choices
                    .iter()
                    .any(|c| FiniteFn::compose(a1, c) != FiniteFn::compose(a2, c));
                t.check(apart, || format!("(4) action not faithful: {}", tag()));
            }
        }

        for (k, a) in el.iter().enumerate() {
            if FiniteFn::compose(f, a).domain() == dom {
                let all_mutual = mutuals.iter().all(|fp| is_mutual(&FiniteFn::compose(a, fp), f));
                t.check(rf.contains(&k) == all_mutual, || {
                    format!("right fixator characterization at {:?}: {}", a.sorted_pairs(), tag())
                });
            }
            if FiniteFn::compose(a, f).image() == img {
                let all_mutual = mutuals.iter().all(|fp| is_mutual(&FiniteFn::compose(fp, a), f));
                t.check(lf.contains(&k) == all_mutual, || {
                    format!("left fixator characterization at {:?}: {}", a.sorted_pairs(), tag())
                });
            }
        }
    }
}

/// A uniformly chosen preimage for every image point.
fn random_choice<R: Rng>(r: &mut R, f: &FiniteFn) -> FiniteFn {
    let mut out = FiniteFn::new();
    for y in f.image() {
        let pre: Vec<String> = f.preimage(&y).into_iter().collect();
        out.insert(&y, &pre[r.gen_range(0..pre.len())]);
    }
    out
}

fn group_inverse_suite(seed: u64, t: &mut Tally) {
    let mut r = rng(seed, 8);
    let points = Universe::binary(3).words();
    for _ in 0..500 {
        let density = r.gen_range(0.1..1.0);
        let f = random_fn(&mut r, &points, density);
        let fp = random_choice(&mut r, &f);
        let tag = || format!("f = {:?}, f' = {:?}", f.sorted_pairs(), fp.sorted_pairs());
        let big = match group_inverse(&f, &fp) {
            Ok(g) => g,
            Err(e) => {
                t.check(false, || format!("{e}: {}", tag()));
                continue;
            }
        };
        let f0 = pad_zero(&f);
        let z: BTreeSet<String> = f
            .image()
            .iter()
            .map(|y| format!("1{y}"))
            .chain(fp.image().iter().map(|x| format!("0{x}")))
            .collect();
        t.check(FiniteFn::compose(&big, &big) == FiniteFn::identity_on(&z), || format!("F'F' ≠ id_Z: {}", tag()));
        t.check(FiniteFn::compose_all(&[&f0, &big, &f0]) == f0, || format!("f0 F' f0 ≠ f0: {}", tag()));

        let u = Universe::covering(&[&f, &fp]);
        let mut f1p = FiniteFn::new();
        for (y, x) in fp.iter() {
            f1p.insert(&format!("1{y}"), &format!("0{x}"));
        }
        let half: BTreeSet<String> = f1p.domain();
        t.check(big.restrict(&half) == f1p, || format!("F' ∩ 1A*×0A* ≠ f1': {}", tag()));
        let sims = [
            simulates(&f0, &f, &pi("1", &u), &pi_prime("0", &u)),
            simulates(&f, &f0, &pi_prime("1", &u), &pi("0", &u)),
            simulates(&f1p, &fp, &pi("0", &u), &pi_prime("1", &u)),
            simulates(&fp, &f1p, &pi_prime("0", &u), &pi("1", &u)),
        ];
        for (i, ok) in sims.into_iter().enumerate() {
            t.check(ok, || format!("simulation identity {} fails: {}", i + 1, tag()));
        }
    }
}

fn rank_key(f: &FiniteFn) -> usize {
    f.len()
}

fn monoid(seed: u64, t: &mut Tally) {
    let two: BTreeSet<String> = ["0", "1"].iter().map(|s| s.to_string()).collect();
    let inj = partial_injections(&two);
    let m = match monoid_closure(&inj, &two, 64) {
        Ok(m) => m,
        Err(e) => return t.check(false, || format!("closure: {e}")),
    };
    t.check(m.len() == 7, || format!("symmetric inverse monoid on 2 points has {} elements", m.len()));
    let g = green_relations(&m);
    t.check(g.d.len() == 3, || format!("{} D-classes, expected 3", g.d.len()));
    // D-classes of a symmetric inverse monoid are the rank classes
    let mut by_rank: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in m.elements.iter().enumerate() {
        by_rank.entry(rank_key(e)).or_default().push(i);
    }
    let mut ranks: Vec<Vec<usize>> = by_rank.into_values().collect();
    ranks.sort();
    t.check(g.d == ranks, || format!("D-classes {:?} differ from rank classes {ranks:?}", g.d));

    for e in idempotents(&m) {
        let sub = maximal_subgroup(&m, e);
        // brute force: units of the local monoid e M e
        let brute: BTreeSet<usize> = (0..m.len())
            .filter(|&a| m.mul(e, a) == a && m.mul(a, e) == a)
            .filter(|&a| (0..m.len()).any(|b| m.mul(a, b) == e && m.mul(b, a) == e))
            .collect();
        let rank = m.elements[e].len();
        t.check(sub == brute, || format!("maximal subgroup at rank {rank}: {sub:?} vs {brute:?}"));
        let want = if rank == 2 { 2 } else { 1 };
        t.check(sub.len() == want, || format!("maximal subgroup at rank {rank} has order {}", sub.len()));
    }
    t.notes.push("order 2 at the rank-2 idempotent, trivial at rank 0 and 1".into());

    let three: BTreeSet<String> = ["0", "1", "00"].iter().map(|s| s.to_string()).collect();
    let pts: Vec<String> = three.iter().cloned().collect();
    let mut r = rng(seed, 9);
    let mut sets: Vec<Vec<FiniteFn>> = vec![partial_injections(&three)];
    for _ in 0..200 {
        let k = r.gen_range(1..=3);
        sets.push((0..k).map(|_| random_injective_fn(&mut r, &pts, 0.8)).collect());
    }
    for gens in &sets {
        let Ok(m) = monoid_closure(gens, &three, 256) else {
            t.check(false, || "closure exceeded 256 elements".into());
            continue;
        };
        for e in idempotents(&m) {
            let f = &m.elements[e];
            t.check(*f == FiniteFn::identity_on(&f.domain()), || format!("idempotent {:?}", f.sorted_pairs()));
        }
    }
}

fn random_bits<R: Rng>(r: &mut R, max: usize) -> String {
    let n = r.gen_range(0..=max);
    (0..n).map(|_| if r.gen_bool(0.5) { '1' } else { '0' }).collect()
}

/// Defined exactly on words ending in `0`, fixing them.
fn ends_in_zero() -> crate::machine::Machine {
    let mut m = chain(&corpus::strip0(), &corpus::append0());
    m.name = "ends_in_zero".into();
    m
}

fn codec(seed: u64, t: &mut Tally) {
    let mut r = rng(seed, 10);
    for _ in 0..10_000 {
        let (w, x) = (random_bits(&mut r, 40), random_bits(&mut r, 40));
        let s = pair_encode(&w, &x);
        t.check(pair_decode(&s) == Ok((w.clone(), x.clone())), || format!("pair ({w}, {x})"));
        let tail = random_bits(&mut r, 8);
        let glued = format!("{}11{tail}", code(&w));
        t.check(pair_decode(&glued) == Ok((w.clone(), tail.clone())), || format!("prefix {w} before {tail}"));
    }

    let q = PolyBound::new(5, 2).expect("nonzero");
    let registry = [
        corpus::identity(),
        corpus::complement(),
        corpus::inc(),
        corpus::dec(),
        corpus::append0(),
    ];
    let mut seen: BTreeMap<String, String> = BTreeMap::new();
    for m in &registry {
        let p = match Program::from_machine(m, ClassTag::InvFp) {
            Ok(p) => p,
            Err(e) => return t.check(false, || format!("{}: {e}", m.name)),
        };
        for x in bits::words_up_to(4) {
            let s = pair_encode(&p.bits, &x);
            let want = match run(m, &x, None, Limits::default()) {
                RunOutcome::Accept(y) => Ok(pair_encode(&p.bits, &y)),
                _ => Err(CodecError::NotInDomain),
            };
            let got = inj_ev(&q, &s, None);
            t.check(got == want, || format!("inj_ev on {} {x}: {got:?}", m.name));
            if let Ok(out) = got {
                let prev = seen.insert(out, format!("{} {x}", m.name));
                t.check(prev.is_none(), || format!("inj_ev collides: {} {x} and {prev:?}", m.name));
            }
        }
    }

    let pairs = [
        (corpus::identity(), corpus::identity()),
        (corpus::append0(), corpus::drop_last()),
        (corpus::strip0(), corpus::append0()),
        (corpus::append1(), ends_in_zero()),
        (corpus::dec(), corpus::inc()),
    ];
    for (v, w) in &pairs {
        let (pv, pw) = match (Program::from_machine(v, ClassTag::InvFp), Program::from_machine(w, ClassTag::Fp)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return t.check(false, || format!("programs for ({}, {})", v.name, w.name)),
        };
        let mut h = FiniteFn::new();
        for y in bits::words_up_to(4) {
            match cofp_eval(&q, &pv, &pw, &y, None) {
                Ok(x) => h.insert(&y, &x),
                Err(CodecError::NoOutput) => {}
                Err(e) => t.check(false, || format!("cofp ({}, {}) on {y}: {e}", v.name, w.name)),
            }
        }
        let phi = extract_fn(w, 6, None);
        let psi = extract_fn(v, 4, None);
        t.check(is_subinverse(&h, &phi), || format!("({}, {}) output not a sub-inverse of φ_w", v.name, w.name));
        t.check(h.is_subfunction_of(&psi), || format!("({}, {}) output not inside ψ_v'", v.name, w.name));
    }
}

fn reductions(_: u64, t: &mut Tally) {
    let u = UniversalLanguage::standard();
    t.check(u.registry.len() >= 3, || format!("{} registry languages", u.registry.len()));
    for e in &u.registry {
        let mut f = FiniteFn::new();
        for x in bits::words_up_to(6) {
            f.insert(&x, &e.encode(&x));
        }
        let w = ReductionWitness {
            map: ReductionMap::Table(f),
            window: Universe::binary(6),
            kind: ReductionKind::InvFp,
        };
        let source = |x: &str| e.contains(x);
        let report = check_reduction(&w, &source, &u);
        t.checked += report.checked as u64 - 1;
        t.check(report.passes(), || {
            format!("{}: {}", e.machine.name, report.counterexamples.first().map(|c| c.to_string()).unwrap_or_default())
        });
    }
    let a = asymmetry_witness(6);
    let as_oracle = |l: &OracleLanguage| {
        let l = l.clone();
        move |x: &str| l.contains(x)
    };
    let (lang, restricted) = (as_oracle(&a.language), as_oracle(&a.restricted));
    t.check(check_reduction(&a.forward, &lang, &lang).passes(), || "asymmetry: forward reduction fails".into());
    let back = check_reduction(&a.backward, &lang, &lang);
    t.check(!back.passes(), || "asymmetry: reverse direction unexpectedly passes".into());
    if let Some(c) = back.counterexamples.first() {
        t.notes.push(format!("reverse direction fails: {c}"));
    }
    t.check(check_reduction(&a.backward, &restricted, &lang).passes(), || {
        "asymmetry: restriction to the image fails".into()
    });
}

fn levin(_: u64, t: &mut Tally) {
    let g = corpus::g_machine();
    let (pg, inv) = match Program::from_machine(&g, ClassTag::InvFp).map(|p| (prog_inv_injective(&p), p)) {
        Ok((Ok(inv), p)) => (p, inv),
        _ => return t.check(false, || "could not build the reversed g program".into()),
    };
    let inv_m = inv.machine().expect("built from a machine");
    let mut worst = 0.0f64;
    for m in 1..=10usize {
        let y = zeros(m);
        let (_, solo) = run_traced(&inv_m, &y, None, Limits::default());
        match levin_invert(std::slice::from_ref(&inv), &pg, &y) {
            Ok((x, stats)) => {
                t.check(x == zeros(1 << m), || format!("levin on 0^{m} gave length {}", x.len()));
                let verify = stats.per_program_steps[VERIFY_ID];
                worst = worst.max((stats.steps_total - verify) as f64 / solo.steps as f64);
                t.check(stats.steps_total <= 10 * solo.steps + verify, || {
                    format!("0^{m}: {} steps against solo {} + verify {verify}", stats.steps_total, solo.steps)
                });
            }
            Err(e) => t.check(false, || format!("levin on 0^{m}: {e}")),
        }
    }
    t.notes.push(format!("worst search/solo ratio {worst:.2} (bound 10)"));

    let dl = corpus::drop_last();
    let pdl = Program::from_machine(&dl, ClassTag::Fp).expect("corpus machine");
    for y in bits::words_up_to(5) {
        let got = levin_invert(&[], &pdl, &y).map(|r| r.0);
        let want = fmin_invert(&dl, &y);
        t.check(got == want, || format!("drop_last at {y}: {got:?} vs {want:?}"));
    }
}
