//! The quadratic and linear intersection forms on resolvent divisors, the
//! T-invariant built from them, the integral Euler-characteristic
//! differences they compute, and the exponent vectors collecting those
//! differences across all characters of a cyclic group.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cover::{canonical_degree, local_exponent, CharacterSpec, CoverDatum};
use crate::error::{Error, Result};
use crate::galois::GaloisRingElement;
use crate::resolvent::{resolvent_divisor, support_divisor, ResolventDivisor, SheafSpec};

/// The invariant T(F, phi) = r^2 + c1(omega).r together with its two parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TInvariant {
    /// quadratic_part + linear_part.
    pub value: BigRational,
    /// r(F, phi)^2 under the intersection form.
    pub quadratic_part: BigRational,
    /// c1(omega) . r(F, phi).
    pub linear_part: BigRational,
}

/// Integral exponents indexed by character powers a in [1, n): coefficient
/// at a is T(structure, chi^a) - T(F, chi^a), the exponent the residue prime
/// acquires on sigma_a^{-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    /// What each coefficient exponentiates.
    pub base: String,
    pub coeffs: BTreeMap<u64, BigInt>,
}

impl ExponentVector {
    /// Reinterprets the vector in the rational group ring of (Z/m)^* as
    /// sum_a c_a sigma_{a^{-1}}. Requires every index to be a unit mod m,
    /// which holds whenever the group order is prime.
    pub fn to_ring_element(&self, modulus: u64) -> Result<GaloisRingElement> {
        let mut pairs = Vec::new();
        for (&a, c) in &self.coeffs {
            let inv = crate::arith::inv_mod(a % modulus, modulus).ok_or(Error::NonUnitIndex {
                index: a % modulus,
                modulus,
            })?;
            pairs.push((inv, BigRational::from(c.clone())));
        }
        GaloisRingElement::from_coeffs(modulus, pairs)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> Vec<u64> {
        self.coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&a, _)| a)
            .collect()
    }
}

/// The symmetric bilinear intersection pairing
/// `(r1, r2) = sum_{y,z} r1[y] r2[z] (y.z)`.
pub fn pair(c: &CoverDatum, r1: &ResolventDivisor, r2: &ResolventDivisor) -> Result<BigRational> {
    for id in r1.ids().chain(r2.ids()) {
        c.component(id)?;
    }
    let mut acc = BigRational::zero();
    for (y, vy) in r1.iter() {
        if vy.is_zero() {
            continue;
        }
        for (z, vz) in r2.iter() {
            if vz.is_zero() {
                continue;
            }
            let yz = c.intersection(y, z)?;
            if yz != 0 {
                acc += vy * vz * BigRational::from(BigInt::from(yz));
            }
        }
    }
    Ok(acc)
}

/// The linear form `c1(omega) . r = sum_y r[y] (-(y^2) - 2 chi(y, O_y))`.
pub fn canonical_pair(c: &CoverDatum, r: &ResolventDivisor) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (y, vy) in r.iter() {
        let deg = canonical_degree(c, y)?;
        if !vy.is_zero() && deg != 0 {
            acc += vy * BigRational::from(BigInt::from(deg));
        }
    }
    Ok(acc)
}

/// T(F, phi) = r^2 + c1(omega).r on the resolvent divisor of the sheaf.
pub fn t_invariant(c: &CoverDatum, s: &SheafSpec, phi: &CharacterSpec) -> Result<TInvariant> {
    let r = resolvent_divisor(c, s, phi)?;
    let quadratic_part = pair(c, &r, &r)?;
    let linear_part = canonical_pair(c, &r)?;
    Ok(TInvariant {
        value: &quadratic_part + &linear_part,
        quadratic_part,
        linear_part,
    })
}

fn require_delta_scope(s: &SheafSpec) -> Result<()> {
    match s {
        SheafSpec::Structure | SheafSpec::Canonical | SheafSpec::CanonicalHalf => Ok(()),
        SheafSpec::Custom => Err(Error::SheafOutOfScope),
    }
}

fn integral_or_error(v: BigRational) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonIntegralDelta(v.to_string()))
    }
}

/// Twice the Euler characteristic of the torsion sheaf comparing F with the
/// structure sheaf: T(F, phi) - T(structure, phi). Integral for genuine
/// cover data; a non-integral value is reported as a data-consistency
/// error, never rounded.
pub fn euler_delta(c: &CoverDatum, s: &SheafSpec, phi: &CharacterSpec) -> Result<BigInt> {
    require_delta_scope(s)?;
    let t_f = t_invariant(c, s, phi)?;
    let t_o = t_invariant(c, &SheafSpec::Structure, phi)?;
    integral_or_error(t_f.value - t_o.value)
}

/// The twisted difference r(F, phi)^2 - r(structure, phi)^2, with the same
/// integrality contract as `euler_delta`.
pub fn twisted_delta(c: &CoverDatum, s: &SheafSpec, phi: &CharacterSpec) -> Result<BigInt> {
    require_delta_scope(s)?;
    let r_f = resolvent_divisor(c, s, phi)?;
    let r_o = resolvent_divisor(c, &SheafSpec::Structure, phi)?;
    let diff = pair(c, &r_f, &r_f)? - pair(c, &r_o, &r_o)?;
    integral_or_error(diff)
}

/// a(phi) = f(phi)^2 + sum over the support of (y^2 + 2 chi(y, O_y)).
pub fn a_invariant(c: &CoverDatum, phi: &CharacterSpec) -> Result<BigInt> {
    let f = support_divisor(c, phi, false)?;
    let mut acc = pair(c, &f, &f)?;
    for comp in &c.components {
        if local_exponent(c, phi, &comp.id)? > 0 {
            acc += BigRational::from(BigInt::from(comp.self_intersection + 2 * comp.chi_struct));
        }
    }
    integral_or_error(acc)
}

/// The exponent vector of the sheaf over all non-trivial characters chi^a,
/// a in [1, n): coefficient T(structure, chi^a) - T(F, chi^a). Requires a
/// cyclic group (exponent-mode characters).
pub fn exponent_vector(c: &CoverDatum, s: &SheafSpec) -> Result<ExponentVector> {
    let n = c.group_order;
    let mut coeffs = BTreeMap::new();
    for a in 1..n {
        let phi = CharacterSpec::Exponent(a);
        let t_o = t_invariant(c, &SheafSpec::Structure, &phi)?;
        let t_f = t_invariant(c, s, &phi)?;
        coeffs.insert(a, integral_or_error(t_o.value - t_f.value)?);
    }
    Ok(ExponentVector {
        base: format!(
            "exponent of the prime above {} carried by sigma_a^-1: T(structure, chi^a) - T({}, chi^a)",
            c.residue_prime,
            s.label()
        ),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{validate_cover, FiberComponent, IntersectionMatrix};
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn modular_cover(p: u64, l: u64) -> CoverDatum {
        let y2 = (1 - p as i64) / 12;
        validate_cover(CoverDatum {
            group_order: l,
            residue_prime: p,
            components: vec![
                FiberComponent {
                    id: "y0".into(),
                    e: l,
                    m: 1,
                    self_intersection: y2,
                    chi_struct: 1,
                    d_custom: None,
                },
                FiberComponent {
                    id: "yinf".into(),
                    e: 1,
                    m: 0,
                    self_intersection: y2,
                    chi_struct: 1,
                    d_custom: None,
                },
            ],
            intersections: IntersectionMatrix::from_triples(vec![(
                "y0",
                "yinf",
                (p as i64 - 1) / 12,
            )])
            .unwrap(),
        })
        .unwrap()
    }

    fn divisor(c: &CoverDatum, entries: &[(&str, BigRational)]) -> ResolventDivisor {
        let mut base: BTreeMap<String, BigRational> = c
            .component_ids()
            .into_iter()
            .map(|id| (id, BigRational::zero()))
            .collect();
        for (id, v) in entries {
            base.insert(id.to_string(), v.clone());
        }
        ResolventDivisor::new(base)
    }

    #[test]
    fn pairing_examples() {
        let c = modular_cover(241, 5);
        let fifth = divisor(&c, &[("y0", rat(1, 5))]);
        assert_eq!(pair(&c, &fifth, &fifth).unwrap(), rat(-4, 5));

        let zero = divisor(&c, &[]);
        assert_eq!(pair(&c, &zero, &fifth).unwrap(), rat(0, 1));

        let y0 = divisor(&c, &[("y0", BigRational::one())]);
        let yinf = divisor(&c, &[("yinf", BigRational::one())]);
        assert_eq!(pair(&c, &y0, &yinf).unwrap(), rat(20, 1));
    }

    #[test]
    fn pairing_unknown_id_rejected() {
        let c = modular_cover(241, 5);
        let mut coeffs = BTreeMap::new();
        coeffs.insert("nope".to_string(), BigRational::one());
        let bad = ResolventDivisor::new(coeffs);
        assert!(matches!(
            pair(&c, &bad, &bad),
            Err(Error::UnknownComponent(_))
        ));
    }

    #[test]
    fn canonical_pair_examples() {
        let c = modular_cover(241, 5);
        let fifth = divisor(&c, &[("y0", rat(1, 5))]);
        assert_eq!(canonical_pair(&c, &fifth).unwrap(), rat(18, 5));
        assert_eq!(canonical_pair(&c, &divisor(&c, &[])).unwrap(), rat(0, 1));

        let big = modular_cover(182857, 401);
        let y0 = divisor(&big, &[("y0", BigRational::one())]);
        assert_eq!(canonical_pair(&big, &y0).unwrap(), rat(15236, 1));
    }

    #[test]
    fn t_invariant_examples() {
        let c = modular_cover(241, 5);
        let t = t_invariant(&c, &SheafSpec::Structure, &CharacterSpec::Exponent(1)).unwrap();
        assert_eq!(t.value, rat(14, 5));
        assert_eq!(t.quadratic_part, rat(-4, 5));
        assert_eq!(t.linear_part, rat(18, 5));

        let t0 = t_invariant(&c, &SheafSpec::Structure, &CharacterSpec::trivial()).unwrap();
        assert!(t0.value.is_zero());

        let th = t_invariant(&c, &SheafSpec::CanonicalHalf, &CharacterSpec::Exponent(3)).unwrap();
        assert_eq!(th.value, rat(-52, 5));
    }

    #[test]
    fn euler_delta_examples() {
        let c = modular_cover(241, 5);
        assert_eq!(
            euler_delta(&c, &SheafSpec::Canonical, &CharacterSpec::Exponent(1)).unwrap(),
            BigInt::from(-30)
        );
        assert_eq!(
            euler_delta(&c, &SheafSpec::CanonicalHalf, &CharacterSpec::Exponent(3)).unwrap(),
            BigInt::from(-14)
        );
        for a in [1u64, 2] {
            assert_eq!(
                euler_delta(&c, &SheafSpec::CanonicalHalf, &CharacterSpec::Exponent(a)).unwrap(),
                BigInt::from(0),
                "a = {a} has local exponent below e/2 everywhere"
            );
        }
        assert!(matches!(
            euler_delta(&c, &SheafSpec::Custom, &CharacterSpec::Exponent(1)),
            Err(Error::SheafOutOfScope)
        ));
    }

    #[test]
    fn non_integral_delta_is_an_error() {
        // Break the modular divisibility: y0.yinf not divisible by l.
        let c = validate_cover(CoverDatum {
            group_order: 5,
            residue_prime: 7,
            components: vec![
                FiberComponent {
                    id: "y0".into(),
                    e: 5,
                    m: 1,
                    self_intersection: -3,
                    chi_struct: 1,
                    d_custom: None,
                },
                FiberComponent {
                    id: "yinf".into(),
                    e: 1,
                    m: 0,
                    self_intersection: -3,
                    chi_struct: 1,
                    d_custom: None,
                },
            ],
            intersections: IntersectionMatrix::from_triples(vec![("y0", "yinf", 3)]).unwrap(),
        })
        .unwrap();
        assert!(matches!(
            euler_delta(&c, &SheafSpec::Canonical, &CharacterSpec::Exponent(1)),
            Err(Error::NonIntegralDelta(_))
        ));
    }

    #[test]
    fn twisted_delta_examples() {
        let c = modular_cover(241, 5);
        assert_eq!(
            twisted_delta(&c, &SheafSpec::CanonicalHalf, &CharacterSpec::Exponent(3)).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(
            twisted_delta(&c, &SheafSpec::Canonical, &CharacterSpec::trivial()).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            twisted_delta(&c, &SheafSpec::Canonical, &CharacterSpec::Exponent(1)).unwrap(),
            BigInt::from(-12)
        );
    }

    #[test]
    fn a_invariant_examples() {
        let c = modular_cover(241, 5);
        assert_eq!(
            a_invariant(&c, &CharacterSpec::Exponent(1)).unwrap(),
            BigInt::from(-38)
        );
        assert_eq!(
            a_invariant(&c, &CharacterSpec::trivial()).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn euler_delta_matches_a_invariant_identity() {
        // delta(canonical) = a(phi) - 2 f(phi).r(structure, phi).
        let c = modular_cover(241, 5);
        for a in 0..5u64 {
            let phi = CharacterSpec::Exponent(a);
            let delta = euler_delta(&c, &SheafSpec::Canonical, &phi).unwrap();
            let f = support_divisor(&c, &phi, false).unwrap();
            let r_o = resolvent_divisor(&c, &SheafSpec::Structure, &phi).unwrap();
            let cross = pair(&c, &f, &r_o).unwrap();
            let expect = BigRational::from(a_invariant(&c, &phi).unwrap()) - rat(2, 1) * cross;
            assert_eq!(BigRational::from(delta), expect);
        }
    }

    #[test]
    fn exponent_vector_examples() {
        let c = modular_cover(241, 5);
        let half = exponent_vector(&c, &SheafSpec::CanonicalHalf).unwrap();
        let expect: BTreeMap<u64, BigInt> = [(1u64, 0i64), (2, 0), (3, 14), (4, 6)]
            .into_iter()
            .map(|(a, v)| (a, BigInt::from(v)))
            .collect();
        assert_eq!(half.coeffs, expect);
        assert_eq!(half.support(), vec![3, 4]);

        let canonical = exponent_vector(&c, &SheafSpec::Canonical).unwrap();
        for a in 1..5u64 {
            assert_eq!(canonical.coeffs[&a], BigInt::from(38 - 8 * a as i64));
        }

        let trivial = exponent_vector(&c, &SheafSpec::Structure).unwrap();
        assert!(trivial.coeffs.values().all(|v| v.is_zero()));
    }

    #[test]
    fn exponent_vector_to_ring_element() {
        let c = modular_cover(241, 5);
        let half = exponent_vector(&c, &SheafSpec::CanonicalHalf).unwrap();
        let x = half.to_ring_element(5).unwrap();
        // 14 sigma_{3^{-1}} + 6 sigma_{4^{-1}} = 14 sigma_2 + 6 sigma_4.
        assert_eq!(x.coeff(2), rat(14, 1));
        assert_eq!(x.coeff(4), rat(6, 1));
        assert!(x.coeff(1).is_zero() && x.coeff(3).is_zero());
    }

    #[test]
    fn bilinearity_and_symmetry() {
        let c = modular_cover(241, 5);
        let u = divisor(&c, &[("y0", rat(2, 5)), ("yinf", rat(-1, 3))]);
        let v = divisor(&c, &[("y0", rat(1, 2)), ("yinf", rat(7, 5))]);
        let w = divisor(&c, &[("y0", rat(-3, 7))]);
        assert_eq!(pair(&c, &u, &v).unwrap(), pair(&c, &v, &u).unwrap());
        let lhs = pair(&c, &u.add(&w), &v).unwrap();
        let rhs = pair(&c, &u, &v).unwrap() + pair(&c, &w, &v).unwrap();
        assert_eq!(lhs, rhs);
        let lin = canonical_pair(&c, &u.add(&w)).unwrap();
        assert_eq!(
            lin,
            canonical_pair(&c, &u).unwrap() + canonical_pair(&c, &w).unwrap()
        );
    }

    #[test]
    fn denominator_bound_for_modular_family() {
        // l * T is integral across the modular family.
        for (p, l) in [(241u64, 5u64), (1009, 7), (182857, 401)] {
            let c = modular_cover(p, l);
            for a in 1..l.min(12) {
                let t =
                    t_invariant(&c, &SheafSpec::Structure, &CharacterSpec::Exponent(a)).unwrap();
                let scaled = t.value * rat(l as i64, 1);
                assert!(scaled.is_integer(), "p={p} l={l} a={a}");
            }
        }
    }
}
