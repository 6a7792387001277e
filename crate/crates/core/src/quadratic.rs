//! Class groups of real quadratic fields k = Q(sqrt(l)), l a prime congruent
//! to 1 mod 4, computed through reduced indefinite binary quadratic forms of
//! discriminant l.
//!
//! Narrow classes are the rho-cycles of reduced forms; the wide (ordinary)
//! class group is the quotient by the sign class, which is trivial exactly
//! when the fundamental unit has norm -1 (odd continued-fraction period).
//! Composition is Dirichlet composition followed by reduction to the cycle.
//! On top of the form machinery sit the split-prime class of a degree-one
//! prime, the signed quadratic-residue sums t_i and the norm-exponent map
//! from group-ring elements, which together decide whether norm images of
//! ideal-class powers are trivial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::galois::GaloisRingElement;

/// A binary quadratic form a x^2 + b x y + c y^2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// Reduced for an indefinite form: 0 < b < sqrt(D) and
    /// sqrt(D) - b < 2|a| < sqrt(D) + b, checked in exact integer arithmetic.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d <= BigInt::zero() || !self.b.is_positive() {
            return false;
        }
        if &self.b * &self.b >= d {
            return false;
        }
        let two_abs_a = BigInt::from(2) * self.a.abs();
        // sqrt(D) - b < 2|a|  <=>  D < (2|a| + b)^2
        let upper = &two_abs_a + &self.b;
        if d >= &upper * &upper {
            return false;
        }
        // 2|a| < sqrt(D) + b  <=>  2|a| <= b  or  (2|a| - b)^2 < D
        if two_abs_a > self.b {
            let lower = &two_abs_a - &self.b;
            if &lower * &lower >= d {
                return false;
            }
        }
        true
    }

    /// One step of the reduction operator: (a, b, c) -> (c, b', c') with
    /// b' = -b mod 2|c| chosen in the window (sqrt(D) - 2|c|, sqrt(D)] when
    /// |c| <= sqrt(D) and (-|c|, |c|] otherwise. On reduced forms this walks
    /// the cycle.
    pub fn rho(&self) -> QuadForm {
        let d = self.discriminant();
        let isq = d.sqrt();
        let abs_c = self.c.abs();
        let two_c = BigInt::from(2) * &abs_c;
        let b_next = if abs_c > isq {
            let r = (-&self.b).mod_floor(&two_c);
            if r > abs_c {
                r - &two_c
            } else {
                r
            }
        } else {
            &isq - (&isq + &self.b).mod_floor(&two_c)
        };
        let c_next = (&b_next * &b_next - &d) / (BigInt::from(4) * &self.c);
        QuadForm {
            a: self.c.clone(),
            b: b_next,
            c: c_next,
        }
    }

    /// Iterates rho until the form is reduced.
    pub fn reduce(&self) -> QuadForm {
        let mut f = self.clone();
        for _ in 0..20_000 {
            if f.is_reduced() {
                return f;
            }
            f = f.rho();
        }
        unreachable!("indefinite reduction did not terminate for {f:?}")
    }

    /// The full rho-cycle through this (reduced) form.
    pub fn cycle(&self) -> Vec<QuadForm> {
        let start = self.reduce();
        let mut out = vec![start.clone()];
        let mut f = start.rho();
        while f != start {
            out.push(f.clone());
            f = f.rho();
            assert!(out.len() < 1_000_000, "cycle walk did not close");
        }
        out
    }

    /// The inverse class representative (a, -b, c).
    pub fn conjugate(&self) -> QuadForm {
        QuadForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }
}

/// gcd = x*a + y*b + z*c with gcd >= 0.
fn ext_gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    let e1 = a.extended_gcd(b);
    let e2 = e1.gcd.extended_gcd(c);
    let (mut g, mut x, mut y, mut z) = (e2.gcd, &e2.x * &e1.x, &e2.x * &e1.y, e2.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
        z = -z;
    }
    (g, x, y, z)
}

/// Dirichlet composition of two forms of the same discriminant, reduced.
///
/// With s = (b1 + b2)/2, n = (b1 - b2)/2 and
/// g = gcd(a1, a2, s) = t1 a1 + t2 a2 + t3 s, the composite is
/// A = a1 a2 / g^2, B = b2 + 2 (a2/g) (t2 n - t3 c2) mod 2A,
/// C = (B^2 - D)/(4A).
pub fn compose(f1: &QuadForm, f2: &QuadForm) -> Result<QuadForm> {
    let d = f1.discriminant();
    if d != f2.discriminant() {
        return Err(Error::DiscriminantMismatch(
            d.to_string(),
            f2.discriminant().to_string(),
        ));
    }
    let s = (&f1.b + &f2.b) / BigInt::from(2);
    let n = (&f1.b - &f2.b) / BigInt::from(2);
    let (g, _t1, t2, t3) = ext_gcd3(&f1.a, &f2.a, &s);
    let a_big = &f1.a * &f2.a / (&g * &g);
    let inner = &t2 * &n - &t3 * &f2.c;
    let b_raw = &f2.b + BigInt::from(2) * (&f2.a / &g) * inner;
    let two_a = BigInt::from(2) * &a_big;
    let b_big = if two_a.is_zero() {
        b_raw
    } else {
        b_raw.mod_floor(&two_a.abs())
    };
    let c_big = (&b_big * &b_big - &d) / (BigInt::from(4) * &a_big);
    let out = QuadForm {
        a: a_big,
        b: b_big,
        c: c_big,
    };
    debug_assert_eq!(out.discriminant(), d);
    Ok(out.reduce())
}

/// A class of forms of discriminant l, stored as its full cycle of reduced
/// forms. Two classes are equal iff their cycles coincide, so the canonical
/// representative is the least form of the cycle.
#[derive(Debug, Clone)]
pub struct FormClass {
    l: u64,
    representative: QuadForm,
    cycle: Vec<QuadForm>,
}

impl PartialEq for FormClass {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l && self.representative == other.representative
    }
}
impl Eq for FormClass {}

impl FormClass {
    /// Class of an arbitrary form of discriminant l.
    pub fn from_form(l: u64, form: QuadForm) -> Result<Self> {
        require_one_mod_four_prime(l)?;
        if form.discriminant() != BigInt::from(l) {
            return Err(Error::DiscriminantMismatch(
                l.to_string(),
                form.discriminant().to_string(),
            ));
        }
        let cycle = form.cycle();
        let representative = cycle.iter().min().expect("cycle is nonempty").clone();
        Ok(Self {
            l,
            representative,
            cycle,
        })
    }

    /// The principal class: the cycle of (1, b0, (b0^2 - l)/4) with b0 the
    /// largest odd integer below sqrt(l).
    pub fn principal(l: u64) -> Result<Self> {
        require_one_mod_four_prime(l)?;
        let isq = arith::isqrt(l);
        let b0 = if isq % 2 == 1 { isq } else { isq - 1 };
        let c = (BigInt::from(b0) * BigInt::from(b0) - BigInt::from(l)) / BigInt::from(4);
        Self::from_form(l, QuadForm::new(1, b0, c))
    }

    pub fn discriminant(&self) -> u64 {
        self.l
    }

    pub fn representative(&self) -> &QuadForm {
        &self.representative
    }

    pub fn cycle(&self) -> &[QuadForm] {
        &self.cycle
    }

    /// Principality in the wide (ordinary) class group: the cycle contains a
    /// form with leading coefficient +-1. (Narrow principality would ask for
    /// +1 exactly; the two agree when the fundamental unit has norm -1.)
    pub fn is_principal(&self) -> bool {
        self.cycle.iter().any(|f| f.a.abs().is_one())
    }

    pub fn is_narrow_principal(&self) -> bool {
        self.cycle.iter().any(|f| f.a.is_one())
    }

    pub fn compose(&self, other: &FormClass) -> Result<FormClass> {
        if self.l != other.l {
            return Err(Error::DiscriminantMismatch(
                self.l.to_string(),
                other.l.to_string(),
            ));
        }
        let f = compose(&self.representative, &other.representative)?;
        FormClass::from_form(self.l, f)
    }

    pub fn conjugate(&self) -> FormClass {
        FormClass::from_form(self.l, self.representative.conjugate())
            .expect("conjugate keeps the discriminant")
    }

    /// Order in the wide class group, by repeated composition.
    pub fn class_order(&self) -> u64 {
        let mut acc = self.clone();
        let mut k = 1u64;
        while !acc.is_principal() {
            acc = acc.compose(self).expect("same discriminant");
            k += 1;
            assert!(k < 1_000_000, "class order runaway");
        }
        k
    }
}

/// Narrow and wide class numbers of Q(sqrt(l)) with the fundamental unit
/// norm that relates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroupSummary {
    pub l: u64,
    /// Number of cycles of reduced forms.
    pub narrow_class_number: u64,
    /// narrow when the fundamental unit has norm -1, narrow/2 otherwise.
    pub wide_class_number: u64,
    /// Norm of the fundamental unit, read off the parity of the
    /// continued-fraction period of sqrt(l).
    pub fundamental_unit_norm: i8,
    /// The period itself.
    pub cf_period: u64,
}

fn require_one_mod_four_prime(l: u64) -> Result<()> {
    if l % 4 != 1 || !arith::is_prime(l) {
        return Err(Error::NotOneModFourPrime(l));
    }
    Ok(())
}

/// Every reduced form of discriminant l: odd 0 < b < sqrt(l), each factor
/// split |a| |c| = (l - b^2)/4 with |a| in the reduction window, both signs.
pub fn reduced_forms(l: u64) -> Result<Vec<QuadForm>> {
    require_one_mod_four_prime(l)?;
    let mut out = Vec::new();
    let mut b = 1u64;
    while b * b < l {
        let n = (l - b * b) / 4;
        for a in 1..=n {
            if n % a != 0 {
                continue;
            }
            // window: sqrt(l) - b < 2a < sqrt(l) + b
            let two_a = 2 * a;
            let lower_ok = two_a <= b || (two_a - b) * (two_a - b) < l;
            let upper_ok = l < (two_a + b) * (two_a + b);
            if lower_ok && upper_ok {
                let c = (n / a) as i64;
                out.push(QuadForm::new(a as i64, b as i64, -c));
                out.push(QuadForm::new(-(a as i64), b as i64, c));
            }
        }
        b += 2;
    }
    debug_assert!(out.iter().all(|f| f.is_reduced()));
    out.sort();
    Ok(out)
}

/// Period of the continued fraction of sqrt(l).
fn cf_period_sqrt(l: u64) -> u64 {
    let a0 = arith::isqrt(l);
    debug_assert!(a0 * a0 != l);
    let (p1, q1) = (a0, l - a0 * a0);
    let (mut p, mut q) = (p1, q1);
    let mut period = 0u64;
    loop {
        let a = (a0 + p) / q;
        let p_next = a * q - p;
        let q_next = (l - p_next * p_next) / q;
        period += 1;
        p = p_next;
        q = q_next;
        if (p, q) == (p1, q1) {
            return period;
        }
    }
}

/// Enumerates the reduced forms of discriminant l, partitions them into
/// cycles and derives the class numbers and the fundamental unit norm.
pub fn class_group(l: u64) -> Result<ClassGroupSummary> {
    let forms = reduced_forms(l)?;
    let mut seen: BTreeSet<QuadForm> = BTreeSet::new();
    let mut cycles = 0u64;
    for f in &forms {
        if seen.contains(f) {
            continue;
        }
        cycles += 1;
        for g in f.cycle() {
            seen.insert(g);
        }
    }
    assert_eq!(
        seen.len(),
        forms.len(),
        "cycles must partition the reduced forms"
    );
    let cf_period = cf_period_sqrt(l);
    let fundamental_unit_norm: i8 = if cf_period % 2 == 1 { -1 } else { 1 };
    let wide = if fundamental_unit_norm == -1 {
        cycles
    } else {
        assert!(
            cycles % 2 == 0,
            "norm +1 forces an even narrow class number"
        );
        cycles / 2
    };
    Ok(ClassGroupSummary {
        l,
        narrow_class_number: cycles,
        wide_class_number: wide,
        fundamental_unit_norm,
        cf_period,
    })
}

/// The class of the degree-one prime above a split prime p: the form
/// (p, b, c) with b^2 = l mod 4p.
pub fn split_prime_class(l: u64, p: u64) -> Result<FormClass> {
    require_one_mod_four_prime(l)?;
    if !arith::is_prime(p) || p == l {
        return Err(Error::NotSplit { l, p });
    }
    let b = if p == 2 {
        // 2 splits exactly when l = 1 mod 8, and any odd b works mod 8.
        if l % 8 != 1 {
            return Err(Error::NotSplit { l, p });
        }
        1u64
    } else {
        if arith::legendre(l % p, p) != 1 {
            return Err(Error::NotSplit { l, p });
        }
        let r = arith::sqrt_mod(l % p, p).ok_or(Error::NotSplit { l, p })?;
        if r % 2 == 1 {
            r
        } else {
            r + p
        }
    };
    let b = BigInt::from(b);
    let c = (&b * &b - BigInt::from(l)) / (BigInt::from(4) * BigInt::from(p));
    FormClass::from_form(l, QuadForm::new(BigInt::from(p), b, c))
}

/// t_i = sum over quadratic residues a < l/2 of a^i minus the same sum over
/// non-residues.
pub fn t_sum(l: u64, i: u32) -> Result<BigInt> {
    require_one_mod_four_prime(l)?;
    let mut acc = BigInt::zero();
    for a in 1..l {
        if 2 * a > l {
            break;
        }
        let term = BigInt::from(a).pow(i);
        match arith::legendre(a, l) {
            1 => acc += term,
            -1 => acc -= term,
            _ => unreachable!("a < l/2 is coprime to the prime l"),
        }
    }
    Ok(acc)
}

/// The exponent of `[beta]` in the norm image of `[P]^x`: the
/// quadratic-residue signed coefficient sum of x. Requires integral coefficients and a prime
/// modulus congruent to 1 mod 4 (for other moduli the quadratic subfield is
/// imaginary and the norm test is inconclusive).
pub fn norm_exponent(x: &GaloisRingElement) -> Result<BigInt> {
    let l = x.modulus();
    require_one_mod_four_prime(l)?;
    let mut acc = BigInt::zero();
    for (&u, c) in x.iter() {
        if !c.is_integer() {
            return Err(Error::NonIntegralCoefficient);
        }
        match arith::legendre(u, l) {
            1 => acc += c.to_integer(),
            -1 => acc -= c.to_integer(),
            _ => unreachable!("indices are units"),
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{s_sum, stickelberger};

    #[test]
    fn reduced_forms_of_401() {
        let forms = reduced_forms(401).unwrap();
        assert_eq!(forms.len(), 38);
        assert!(forms.iter().all(|f| f.discriminant() == BigInt::from(401)));
        assert!(forms.iter().all(|f| f.is_reduced()));
    }

    #[test]
    fn principal_cycle_of_401() {
        let principal = FormClass::principal(401).unwrap();
        assert_eq!(principal.cycle().len(), 6);
        assert!(principal.is_principal());
        assert!(principal.is_narrow_principal());
        assert_eq!(principal.class_order(), 1);
    }

    #[test]
    fn class_numbers() {
        let g5 = class_group(5).unwrap();
        assert_eq!(g5.wide_class_number, 1);
        assert_eq!(g5.narrow_class_number, 1);
        assert_eq!(g5.fundamental_unit_norm, -1);

        let g401 = class_group(401).unwrap();
        assert_eq!(g401.wide_class_number, 5);
        assert_eq!(g401.narrow_class_number, 5);
        assert_eq!(g401.fundamental_unit_norm, -1);

        // frozen against an independent evaluation of the analytic class
        // number formula (finite log-sine character sum)
        for (l, h) in [(229u64, 3u64), (257, 3), (577, 7), (1009, 7)] {
            assert_eq!(class_group(l).unwrap().wide_class_number, h, "l = {l}");
        }

        assert!(class_group(7).is_err());
        assert!(class_group(15).is_err());
        assert!(class_group(21).is_err()); // 1 mod 4 but composite
    }

    #[test]
    fn split_prime_class_small_field() {
        // Class number 1: every split prime is principal.
        for p in [11u64, 19, 29, 31, 41] {
            let beta = split_prime_class(5, p).unwrap();
            assert!(beta.is_principal(), "p = {p}");
            assert_eq!(beta.class_order(), 1);
        }
        assert!(matches!(
            split_prime_class(5, 7),
            Err(Error::NotSplit { l: 5, p: 7 })
        ));
        assert!(matches!(
            split_prime_class(5, 5),
            Err(Error::NotSplit { .. })
        ));
    }

    #[test]
    fn flagship_split_prime_is_not_principal() {
        let beta = split_prime_class(401, 182857).unwrap();
        assert!(!beta.is_principal());
        assert_eq!(beta.class_order(), 5);
        let square = beta.compose(&beta).unwrap();
        assert!(!square.is_principal());
        assert_eq!(square.class_order(), 5);
    }

    #[test]
    fn principal_split_prime_of_401() {
        // 83 = N(22 + sqrt(401)) ... actually 22^2 - 401 = 83, so the prime
        // above 83 is generated by 22 + sqrt(401) and must be principal.
        let beta = split_prime_class(401, 83).unwrap();
        assert!(beta.is_principal());
        assert_eq!(beta.class_order(), 1);
    }

    #[test]
    fn beta_times_conjugate_is_principal() {
        for (l, p) in [(401u64, 182857u64), (401, 83), (229, 5), (229, 3), (13, 17)] {
            let beta = split_prime_class(l, p).unwrap();
            let product = beta.compose(&beta.conjugate()).unwrap();
            assert!(product.is_principal(), "l={l} p={p}");
        }
    }

    fn distinct_classes(l: u64) -> Vec<FormClass> {
        let mut classes: Vec<FormClass> = Vec::new();
        for f in reduced_forms(l).unwrap() {
            let c = FormClass::from_form(l, f).unwrap();
            if !classes.contains(&c) {
                classes.push(c);
            }
        }
        classes
    }

    fn check_group_axioms(l: u64, expected_narrow: u64) {
        let classes = distinct_classes(l);
        assert_eq!(classes.len() as u64, expected_narrow, "l = {l}");

        let principal = FormClass::principal(l).unwrap();
        for c in &classes {
            // identity
            assert_eq!(&principal.compose(c).unwrap(), c);
            // inverse
            assert!(c.compose(&c.conjugate()).unwrap().is_principal());
            // order divides the narrow class number
            assert_eq!(expected_narrow % c.class_order(), 0);
            // composition well-defined on cycles: composing with a different
            // member of the same cycle gives the same class
            for g in c.cycle().iter().take(3) {
                let alt = FormClass::from_form(l, g.clone()).unwrap();
                assert_eq!(
                    alt.compose(&classes[0]).unwrap(),
                    c.compose(&classes[0]).unwrap()
                );
            }
            // killed by the narrow class number
            let mut acc = FormClass::principal(l).unwrap();
            for _ in 0..expected_narrow {
                acc = acc.compose(c).unwrap();
            }
            assert!(acc.is_principal());
        }
        // commutativity and associativity
        for x in &classes {
            for y in &classes {
                assert_eq!(x.compose(y).unwrap(), y.compose(x).unwrap());
                for z in classes.iter().take(2) {
                    assert_eq!(
                        x.compose(y).unwrap().compose(z).unwrap(),
                        x.compose(&y.compose(z).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn group_axioms_disc_401() {
        check_group_axioms(401, 5);
        // the group is cyclic of prime order: all non-principal classes
        // have order 5
        for c in distinct_classes(401) {
            assert!(c.class_order() == 1 || c.class_order() == 5);
        }
    }

    #[test]
    fn group_axioms_other_discriminants() {
        check_group_axioms(229, 3);
        check_group_axioms(257, 3);
        check_group_axioms(577, 7);
        check_group_axioms(13, 1);
    }

    #[test]
    fn t_sums() {
        assert_eq!(t_sum(5, 1).unwrap(), BigInt::from(-1));
        assert_eq!(t_sum(13, 1).unwrap(), BigInt::from(-5));
        assert_eq!(t_sum(13, 2).unwrap(), BigInt::from(-39));

        // Frozen from an independent explicit-square-table enumeration.
        // The classical table for l = 401 lists the congruence classes of
        // -t_1, -t_2 and -(t_2 - l t_1); the definition of A and B forces
        // the values below. Either sign gives the same triviality verdicts.
        let t1 = t_sum(401, 1).unwrap();
        let t2 = t_sum(401, 2).unwrap();
        assert_eq!(t1, BigInt::from(-774));
        assert_eq!(t2, BigInt::from(-103458));
        assert_eq!(t1.mod_floor(&BigInt::from(5)), BigInt::from(1));
        assert_eq!(t2.mod_floor(&BigInt::from(5)), BigInt::from(2));
        let combo = &t2 - BigInt::from(401) * &t1;
        assert_eq!(combo.mod_floor(&BigInt::from(5)), BigInt::from(1));
        // the published residues, up to the one global sign
        assert_eq!((-&t1).mod_floor(&BigInt::from(5)), BigInt::from(4));
        assert_eq!((-&t2).mod_floor(&BigInt::from(5)), BigInt::from(3));
        assert_eq!((-combo).mod_floor(&BigInt::from(5)), BigInt::from(4));
    }

    #[test]
    fn norm_exponent_matches_t_sums() {
        for l in [5u64, 13, 17, 29] {
            for i in [1u32, 2] {
                assert_eq!(
                    norm_exponent(&s_sum(l, i).unwrap()).unwrap(),
                    t_sum(l, i).unwrap(),
                    "l={l} i={i}"
                );
            }
            assert_eq!(
                norm_exponent(&s_sum(l, 0).unwrap()).unwrap(),
                BigInt::zero()
            );
            let l_theta = stickelberger(l).unwrap().scale_int(l as i64);
            assert_eq!(norm_exponent(&l_theta).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn norm_exponent_additivity() {
        let x = s_sum(13, 1).unwrap();
        let y = s_sum(13, 2).unwrap();
        let sum = x.add(&y).unwrap();
        assert_eq!(
            norm_exponent(&sum).unwrap(),
            norm_exponent(&x).unwrap() + norm_exponent(&y).unwrap()
        );
    }

    #[test]
    fn norm_exponent_requires_integrality_and_modulus() {
        let theta = stickelberger(13).unwrap();
        assert!(matches!(
            norm_exponent(&theta),
            Err(Error::NonIntegralCoefficient)
        ));
        let x = GaloisRingElement::one(7);
        assert!(matches!(
            norm_exponent(&x),
            Err(Error::NotOneModFourPrime(7))
        ));
    }

    #[test]
    fn narrow_wide_relation() {
        for l in [5u64, 13, 17, 29, 37, 229, 401] {
            let g = class_group(l).unwrap();
            let q = g.narrow_class_number / g.wide_class_number;
            assert!(q == 1 || q == 2);
            if g.fundamental_unit_norm == -1 {
                assert_eq!(q, 1);
            } else {
                assert_eq!(q, 2);
            }
        }
    }
}
