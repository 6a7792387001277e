//! Named verification suites over randomized or exhaustive inputs, used by
//! the command-line `verify` command and by the acceptance tests. Random
//! inputs come from seeded generators so every run is reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::cover::{validate_cover, CharacterSpec, CoverDatum, FiberComponent, IntersectionMatrix};
use crate::error::Result;
use crate::galois::{b_sum_factorization_holds, s_sum, verify_power_sum_identities};
use crate::intersection::{euler_delta, exponent_vector, t_invariant, twisted_delta};
use crate::modular::{build_cover, exponent_elements, t_closed_form, ModularParams};
use crate::quadratic::{norm_exponent, t_sum};
use crate::resolvent::{
    lagrange_valuation_oracle, resolvent_coefficient, resolvent_divisor, support_divisor, SheafSpec,
};

/// Outcome of one verification suite: how many cases ran and the
/// counterexamples, if any.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        // Keep reports readable if something goes badly wrong.
        if self.failures.len() < 32 {
            self.failures.push(msg);
        }
    }
}

const SMALL_PRIMES: [u64; 12] = [2, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// A random valid cover with at most `max_components` components and
/// ramification indices dividing a random odd group order <= `max_e`.
pub fn sample_cover<R: Rng>(rng: &mut R, max_components: usize, max_e: u64) -> CoverDatum {
    let n = 2 * rng.random_range(1..=max_e / 2) + 1; // odd in [3, max_e]
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let k = rng.random_range(1..=max_components);
    let mut components = Vec::new();
    for i in 0..k {
        let e = divisors[rng.random_range(0..divisors.len())];
        let m = if e == 1 {
            0
        } else {
            // random unit mod e
            loop {
                let m = rng.random_range(1..e);
                if arith::gcd(m, e) == 1 {
                    break m;
                }
            }
        };
        components.push(FiberComponent {
            id: format!("c{i}"),
            e,
            m,
            self_intersection: rng.random_range(-40..=10),
            chi_struct: rng.random_range(-3..=3),
            d_custom: Some(rng.random_range(-(2 * e as i64)..=2 * e as i64)),
        });
    }
    let mut intersections = IntersectionMatrix::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let v = rng.random_range(0..=12);
            if v > 0 {
                intersections
                    .insert(format!("c{i}"), format!("c{j}"), v)
                    .expect("fresh keys");
            }
        }
    }
    let residue_prime = loop {
        let p = SMALL_PRIMES[rng.random_range(0..SMALL_PRIMES.len())];
        if n % p != 0 {
            break p;
        }
    };
    validate_cover(CoverDatum {
        group_order: n,
        residue_prime,
        components,
        intersections,
    })
    .expect("generator produces valid covers")
}

/// A random character of the cover, alternating between generator-power and
/// raw-exponent form.
pub fn sample_character<R: Rng>(rng: &mut R, c: &CoverDatum) -> CharacterSpec {
    if rng.random_bool(0.5) {
        CharacterSpec::Exponent(rng.random_range(0..c.group_order))
    } else {
        let map = c
            .components
            .iter()
            .map(|comp| (comp.id.clone(), rng.random_range(0..comp.e)))
            .collect();
        CharacterSpec::Raw(map)
    }
}

const L_POOL: [u64; 13] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 401];
const L_POOL_ONE_MOD_FOUR: [u64; 9] = [5, 13, 17, 29, 37, 41, 53, 61, 401];

/// Random modular parameters with p below `p_limit`. With
/// `one_mod_four` the quadratic subfield is forced to be real.
pub fn sample_modular_params<R: Rng>(
    rng: &mut R,
    p_limit: u64,
    one_mod_four: bool,
) -> ModularParams {
    let pool: &[u64] = if one_mod_four {
        &L_POOL_ONE_MOD_FOUR
    } else {
        &L_POOL
    };
    loop {
        let l = pool[rng.random_range(0..pool.len())];
        let step = 24 * l;
        let k_max = (p_limit - 1) / step;
        if k_max == 0 {
            continue;
        }
        // scan forward from a random start so the draw is uniform-ish but
        // always terminates
        let start = rng.random_range(1..=k_max);
        for off in 0..k_max {
            let k = 1 + (start - 1 + off) % k_max;
            let p = step * k + 1;
            if arith::is_prime(p) {
                return ModularParams::new(p, l).expect("constructed to satisfy the invariants");
            }
        }
    }
}

/// Exhaustive equality of the two resolvent-coefficient routes for all odd
/// e <= max_e, d in [-2e, 2e], nphi in [0, e).
pub fn resolvent_oracle_suite(max_e: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("resolvent-coefficient vs Lagrange-valuation oracle");
    let mut e = 1u64;
    while e <= max_e {
        for d in -(2 * e as i64)..=(2 * e as i64) {
            for nphi in 0..e {
                out.cases += 1;
                let lhs = resolvent_coefficient(e, d, nphi);
                let rhs = lagrange_valuation_oracle(e, d, nphi);
                if lhs != rhs {
                    out.fail(format!("e={e} d={d} nphi={nphi}: {lhs:?} != {rhs:?}"));
                }
            }
        }
        e += 2;
    }
    out
}

fn describe_character(phi: &CharacterSpec) -> String {
    match phi {
        CharacterSpec::Exponent(a) => format!("chi^{a}"),
        CharacterSpec::Raw(map) => format!("raw{map:?}"),
    }
}

/// The conjugate-pair identities on random covers and characters:
/// r(O, phi) + r(O, phibar) = f(phi), the half-canonical resolvents of a
/// conjugate pair cancel, r(omega^1/2, phi) = r(O, phi^2) - r(O, phi), plus
/// the canonical/half-canonical support decompositions and integrality of
/// n times every coefficient.
pub fn conjugate_pair_suite(cases: u64, seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("conjugate-pair resolvent identities");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let c = sample_cover(&mut rng, 6, 81);
        let phi = sample_character(&mut rng, &c);
        out.cases += 1;
        let step = || -> Result<Option<String>> {
            let bar = phi.conjugate(&c)?;
            let sq = phi.square(&c)?;
            let r_o = resolvent_divisor(&c, &SheafSpec::Structure, &phi)?;
            let r_o_bar = resolvent_divisor(&c, &SheafSpec::Structure, &bar)?;
            let r_o_sq = resolvent_divisor(&c, &SheafSpec::Structure, &sq)?;
            let r_h = resolvent_divisor(&c, &SheafSpec::CanonicalHalf, &phi)?;
            let r_h_bar = resolvent_divisor(&c, &SheafSpec::CanonicalHalf, &bar)?;
            let r_w = resolvent_divisor(&c, &SheafSpec::Canonical, &phi)?;
            let f = support_divisor(&c, &phi, false)?;
            let f_half = support_divisor(&c, &phi, true)?;
            if r_o.add(&r_o_bar) != f {
                return Ok(Some("r(O,phi) + r(O,phibar) != f(phi)".into()));
            }
            if !r_h.add(&r_h_bar).is_zero() {
                return Ok(Some("r(w5,phi) + r(w5,phibar) != 0".into()));
            }
            if r_h != r_o_sq.sub(&r_o) {
                return Ok(Some("r(w5,phi) != r(O,phi^2) - r(O,phi)".into()));
            }
            if r_w != r_o.sub(&f) {
                return Ok(Some("r(w,phi) != r(O,phi) - f(phi)".into()));
            }
            if r_h != r_o.sub(&f_half) {
                return Ok(Some("r(w5,phi) != r(O,phi) - f'(phi)".into()));
            }
            let n = BigRational::from(BigInt::from(c.group_order));
            for (id, v) in r_o.iter().chain(r_h.iter()).chain(r_w.iter()) {
                if !(v * &n).is_integer() {
                    return Ok(Some(format!("n * coefficient at {id} not integral")));
                }
            }
            // denominator bounds: n^2 kills the quadratic part, n the linear
            for s in [
                SheafSpec::Structure,
                SheafSpec::Canonical,
                SheafSpec::CanonicalHalf,
            ] {
                let t = t_invariant(&c, &s, &phi)?;
                if !(&t.quadratic_part * &n * &n).is_integer()
                    || !(&t.linear_part * &n).is_integer()
                    || t.value != &t.quadratic_part + &t.linear_part
                {
                    return Ok(Some(format!("T denominator bound violated for {s:?}")));
                }
            }
            Ok(None)
        };
        match step() {
            Ok(None) => {}
            Ok(Some(msg)) => out.fail(format!(
                "case {case}: {msg} on {} with {}",
                summarize_cover(&c),
                describe_character(&phi)
            )),
            Err(e) => out.fail(format!("case {case}: error {e}")),
        }
    }
    out
}

fn summarize_cover(c: &CoverDatum) -> String {
    let comps: Vec<String> = c
        .components
        .iter()
        .map(|k| {
            format!(
                "{}(e={},m={},y2={},chi={})",
                k.id, k.e, k.m, k.self_intersection, k.chi_struct
            )
        })
        .collect();
    format!(
        "cover[n={}, p={}, {}]",
        c.group_order,
        c.residue_prime,
        comps.join(" ")
    )
}

/// The three s_i/theta identities for every prime in [lo, hi).
pub fn power_sum_identity_suite(lo: u64, hi: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("s_i / Stickelberger identities");
    for l in lo.max(5)..hi {
        if !arith::is_prime(l) {
            continue;
        }
        out.cases += 1;
        match verify_power_sum_identities(l) {
            Ok(report) => {
                if !report.all_identities_hold() {
                    out.fail(format!("l={l}: {report:?}"));
                }
            }
            Err(e) => out.fail(format!("l={l}: error {e}")),
        }
    }
    out
}

/// The b-sum factorization for every (l, s, t, u) with l^s <= max_level.
pub fn b_sum_factorization_suite(max_level: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("b-sum Stickelberger factorization");
    for l in (3..=max_level).filter(|&l| arith::is_prime(l)) {
        let mut s = 1u32;
        while l.pow(s) <= max_level {
            for t in 1..=s {
                let lt = l.pow(t);
                for u in (1..lt).filter(|u| u % l != 0) {
                    out.cases += 1;
                    match b_sum_factorization_holds(l, s, t, u) {
                        Ok(true) => {}
                        Ok(false) => out.fail(format!("(l,s,t,u)=({l},{s},{t},{u})")),
                        Err(e) => out.fail(format!("(l,s,t,u)=({l},{s},{t},{u}): error {e}")),
                    }
                }
            }
            s += 1;
        }
    }
    out
}

/// A single b-sum factorization case.
pub fn b_sum_factorization_case(l: u64, s: u32, t: u32, u: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("b-sum Stickelberger factorization");
    out.cases = 1;
    match b_sum_factorization_holds(l, s, t, u) {
        Ok(true) => {}
        Ok(false) => out.fail(format!("(l,s,t,u)=({l},{s},{t},{u})")),
        Err(e) => out.fail(format!("(l,s,t,u)=({l},{s},{t},{u}): error {e}")),
    }
    out
}

/// The closed form of the structure-sheaf T-invariant against the full
/// intersection-form route, for random modular parameters and every
/// non-trivial character.
pub fn closed_form_suite(pairs: u64, seed: u64, p_limit: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("closed-form T vs intersection forms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let mp = sample_modular_params(&mut rng, p_limit, false);
        let cover = match build_cover(&mp) {
            Ok(c) => c,
            Err(e) => {
                out.fail(format!("{mp:?}: build error {e}"));
                continue;
            }
        };
        for a in 1..mp.l {
            out.cases += 1;
            let direct = t_invariant(&cover, &SheafSpec::Structure, &CharacterSpec::Exponent(a))
                .map(|t| t.value);
            let closed = t_closed_form(&mp, a);
            if direct.as_ref().ok() != closed.as_ref().ok() || direct.is_err() || closed.is_err() {
                out.fail(format!(
                    "p={} l={} a={a}: {direct:?} vs {closed:?}",
                    mp.p, mp.l
                ));
            }
        }
    }
    out
}

/// Integrality of the Euler-characteristic deltas across random modular
/// parameters (they are theorems there, so any error is a failure).
pub fn integrality_suite(pairs: u64, seed: u64, p_limit: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("integrality of Euler-characteristic deltas");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let mp = sample_modular_params(&mut rng, p_limit, false);
        let cover = match build_cover(&mp) {
            Ok(c) => c,
            Err(e) => {
                out.fail(format!("{mp:?}: build error {e}"));
                continue;
            }
        };
        for a in 1..mp.l {
            out.cases += 1;
            let phi = CharacterSpec::Exponent(a);
            for s in [SheafSpec::Canonical, SheafSpec::CanonicalHalf] {
                if let Err(e) = euler_delta(&cover, &s, &phi) {
                    out.fail(format!("p={} l={} a={a} {s:?}: euler {e}", mp.p, mp.l));
                }
                if let Err(e) = twisted_delta(&cover, &s, &phi) {
                    out.fail(format!("p={} l={} a={a} {s:?}: twisted {e}", mp.p, mp.l));
                }
            }
        }
    }
    out
}

/// The quadratic-subfield shadow of the prime-order selfduality statement:
/// the canonical-sheaf exponent vector has norm exponent exactly 0.
pub fn canonical_shadow_suite(pairs: u64, seed: u64, p_limit: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("canonical exponent vector lies in the norm kernel");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let mp = sample_modular_params(&mut rng, p_limit, true);
        out.cases += 1;
        let result = build_cover(&mp)
            .and_then(|c| exponent_vector(&c, &SheafSpec::Canonical))
            .and_then(|v| v.to_ring_element(mp.l))
            .and_then(|x| norm_exponent(&x));
        match result {
            Ok(v) if v.is_zero() => {}
            Ok(v) => out.fail(format!("p={} l={}: norm exponent {v}", mp.p, mp.l)),
            Err(e) => out.fail(format!("p={} l={}: error {e}", mp.p, mp.l)),
        }
    }
    out
}

/// The raw V-vector equals its closed form coefficientwise for random
/// modular parameters.
pub fn raw_v_suite(pairs: u64, seed: u64, p_limit: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("raw V-vector vs closed form");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let mp = sample_modular_params(&mut rng, p_limit, false);
        out.cases += 1;
        match exponent_elements(&mp) {
            Ok(rep) => {
                if !rep.raw_matches_closed {
                    out.fail(format!(
                        "p={} l={}: raw {:?} vs closed {:?}",
                        mp.p, mp.l, rep.v_raw, rep.v_closed
                    ));
                }
                // raw vector supported exactly on the characters whose local
                // exponent exceeds e/2, which here is {a : a > l/2}
                let mut support = 0u64;
                for (&u, _) in rep.v_raw.iter() {
                    support += 1;
                    let a = arith::inv_mod(u, mp.l).expect("unit");
                    if 2 * a < mp.l {
                        out.fail(format!("p={} l={}: support at a={a} below l/2", mp.p, mp.l));
                    }
                }
                if support != (mp.l - 1) / 2 {
                    out.fail(format!(
                        "p={} l={}: support size {support}, expected {}",
                        mp.p,
                        mp.l,
                        (mp.l - 1) / 2
                    ));
                }
            }
            Err(e) => out.fail(format!("p={} l={}: error {e}", mp.p, mp.l)),
        }
    }
    out
}

/// norm_exponent(s_i) = t_i for the listed primes, i = 1, 2 (and s_0 in the
/// norm kernel).
pub fn norm_t_sum_suite(ls: &[u64]) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("norm exponents of s_i equal t_i");
    for &l in ls {
        for i in [1u32, 2] {
            out.cases += 1;
            match (s_sum(l, i).and_then(|s| norm_exponent(&s)), t_sum(l, i)) {
                (Ok(lhs), Ok(rhs)) => {
                    if lhs != rhs {
                        out.fail(format!("l={l} i={i}: {lhs} != {rhs}"));
                    }
                }
                (a, b) => out.fail(format!("l={l} i={i}: {a:?} vs {b:?}")),
            }
        }
        out.cases += 1;
        match s_sum(l, 0).and_then(|s| norm_exponent(&s)) {
            Ok(v) if v.is_zero() => {}
            other => out.fail(format!("l={l}: norm exponent of s_0 is {other:?}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_produce_valid_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = sample_cover(&mut rng, 6, 81);
            let once = validate_cover(c.clone()).unwrap();
            assert_eq!(once, validate_cover(once.clone()).unwrap());
            assert!(c.group_order % 2 == 1 && c.group_order <= 81);
            assert!(c.components.len() <= 6);
            let mp = sample_modular_params(&mut rng, 1_000_000, true);
            assert_eq!(mp.l % 4, 1);
            assert!(mp.p < 1_000_000);
        }
    }

    #[test]
    fn suites_pass_at_small_scale() {
        assert!(resolvent_oracle_suite(15).passed());
        let cor = conjugate_pair_suite(60, 42);
        assert!(cor.passed(), "{:?}", cor.failures);
        assert!(power_sum_identity_suite(5, 40).passed());
        assert!(b_sum_factorization_suite(27).passed());
        let cf = closed_form_suite(4, 1, 200_000);
        assert!(cf.passed(), "{:?}", cf.failures);
        let ig = integrality_suite(3, 2, 200_000);
        assert!(ig.passed(), "{:?}", ig.failures);
        let cs = canonical_shadow_suite(3, 3, 200_000);
        assert!(cs.passed(), "{:?}", cs.failures);
        let rv = raw_v_suite(3, 4, 200_000);
        assert!(rv.passed(), "{:?}", rv.failures);
        assert!(norm_t_sum_suite(&[5, 13]).passed());
    }

    #[test]
    fn seeded_suites_are_reproducible() {
        let a = conjugate_pair_suite(10, 99);
        let b = conjugate_pair_suite(10, 99);
        assert_eq!(a.cases, b.cases);
        assert_eq!(a.failures, b.failures);
    }
}
