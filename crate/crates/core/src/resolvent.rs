//! Resolvent divisors: the rational-coefficient divisors on the base whose
//! coefficients are the valuations of character eigensheaves of the pushed
//! down sheaf.
//!
//! The coefficient at a component with ramification index e, sheaf
//! coefficient d and local exponent nphi is
//!
//! ```text
//!     v = frac((nphi + d) / e) - d / e
//! ```
//!
//! with the floor convention for the fractional part of negative rationals.
//! An independent computation of the same number follows the Lagrange
//! resolvent of a uniformizer basis element: write -d = q e + r with
//! 0 <= r < e; the valuation is (nphi + e q)/e if r <= nphi and
//! (nphi + e (q + 1))/e otherwise. The two routes are kept strictly
//! separate so that each checks the other.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cover::{local_exponent, CharacterSpec, CoverDatum, FiberComponent};
use crate::error::{Error, Result};

/// Selects the equivariant sheaf whose resolvents are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheafSpec {
    /// The structure sheaf: d_y = 0.
    Structure,
    /// The relative canonical sheaf: d_y = e_y - 1.
    Canonical,
    /// Its square root: d_y = (e_y - 1)/2, well defined as e_y is odd.
    CanonicalHalf,
    /// Arbitrary invariant divisor supported on the branch locus; the
    /// coefficient comes from each component's `d_custom`.
    Custom,
}

impl SheafSpec {
    /// The divisor coefficient d_y on a component. Unramified components
    /// never carry support, so their coefficient is 0 for every sheaf.
    pub fn coefficient(&self, comp: &FiberComponent) -> Result<i64> {
        if comp.e == 1 {
            return Ok(0);
        }
        match self {
            SheafSpec::Structure => Ok(0),
            SheafSpec::Canonical => Ok(comp.e as i64 - 1),
            SheafSpec::CanonicalHalf => Ok((comp.e as i64 - 1) / 2),
            SheafSpec::Custom => comp.d_custom.ok_or(Error::MissingCustomCoefficient {
                id: comp.id.clone(),
            }),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SheafSpec::Structure => "structure",
            SheafSpec::Canonical => "canonical",
            SheafSpec::CanonicalHalf => "canonical-half",
            SheafSpec::Custom => "custom",
        }
    }
}

/// A rational-coefficient divisor supported on the fiber components of one
/// cover. Every coefficient has denominator dividing the ramification index
/// of its component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolventDivisor {
    coeffs: BTreeMap<String, BigRational>,
}

impl ResolventDivisor {
    pub fn new(coeffs: BTreeMap<String, BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn zero(c: &CoverDatum) -> Self {
        Self {
            coeffs: c
                .components
                .iter()
                .map(|comp| (comp.id.clone(), BigRational::zero()))
                .collect(),
        }
    }

    pub fn coeff(&self, id: &str) -> BigRational {
        self.coeffs
            .get(id)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &ResolventDivisor) -> ResolventDivisor {
        let mut out = self.coeffs.clone();
        for (id, v) in &other.coeffs {
            let entry = out.entry(id.clone()).or_insert_with(BigRational::zero);
            *entry += v;
        }
        ResolventDivisor { coeffs: out }
    }

    pub fn sub(&self, other: &ResolventDivisor) -> ResolventDivisor {
        let mut out = self.coeffs.clone();
        for (id, v) in &other.coeffs {
            let entry = out.entry(id.clone()).or_insert_with(BigRational::zero);
            *entry -= v;
        }
        ResolventDivisor { coeffs: out }
    }
}

/// Valuation of the character eigensheaf at one component:
/// frac((nphi + d)/e) - d/e, an exact rational with denominator dividing e.
pub fn resolvent_coefficient(e: u64, d: i64, nphi: u64) -> Result<BigRational> {
    if e == 0 || nphi >= e {
        return Err(Error::ExponentOutOfRange { nphi, e });
    }
    let e_i = e as i128;
    let num = nphi as i128 + d as i128;
    let rem = num.rem_euclid(e_i);
    Ok(BigRational::new(
        BigInt::from(rem - d as i128),
        BigInt::from(e_i),
    ))
}

/// Independent computation of the same valuation following the Lagrange
/// resolvent of omega_y^q omega_x^r alpha: write -d = q e + r with
/// 0 <= r < e; the answer is (nphi + e q)/e when r <= nphi and
/// (nphi + e (q + 1))/e otherwise.
pub fn lagrange_valuation_oracle(e: u64, d: i64, nphi: u64) -> Result<BigRational> {
    if e == 0 || nphi >= e {
        return Err(Error::ExponentOutOfRange { nphi, e });
    }
    let e_i = e as i128;
    let neg_d = -(d as i128);
    let q = neg_d.div_euclid(e_i);
    let r = neg_d.rem_euclid(e_i);
    let num = if r <= nphi as i128 {
        nphi as i128 + e_i * q
    } else {
        nphi as i128 + e_i * (q + 1)
    };
    Ok(BigRational::new(BigInt::from(num), BigInt::from(e_i)))
}

/// The resolvent divisor r(F, phi): coefficient at y is the valuation of the
/// phi-eigensheaf there; components with e_y = 1 carry 0.
pub fn resolvent_divisor(
    c: &CoverDatum,
    s: &SheafSpec,
    phi: &CharacterSpec,
) -> Result<ResolventDivisor> {
    let mut coeffs = BTreeMap::new();
    for comp in &c.components {
        let v = if comp.e == 1 {
            BigRational::zero()
        } else {
            let d = s.coefficient(comp)?;
            let nphi = local_exponent(c, phi, &comp.id)?;
            resolvent_coefficient(comp.e, d, nphi)?
        };
        coeffs.insert(comp.id.clone(), v);
    }
    Ok(ResolventDivisor { coeffs })
}

/// Indicator divisor of the support set: with `strict_half` false this is
/// S(phi) = {y : n(phi, y) > 0}, with `strict_half` true it is
/// S'(phi) = {y : n(phi, y) > e_y / 2}.
pub fn support_divisor(
    c: &CoverDatum,
    phi: &CharacterSpec,
    strict_half: bool,
) -> Result<ResolventDivisor> {
    let mut coeffs = BTreeMap::new();
    for comp in &c.components {
        let nphi = local_exponent(c, phi, &comp.id)?;
        let on = if strict_half {
            2 * nphi > comp.e
        } else {
            nphi > 0
        };
        coeffs.insert(
            comp.id.clone(),
            if on {
                BigRational::one()
            } else {
                BigRational::zero()
            },
        );
    }
    Ok(ResolventDivisor { coeffs })
}
