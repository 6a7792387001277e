//! Data model for a tame cyclic cover of an arithmetic surface: the special
//! fiber over one residue prime, with exactly the ramification and
//! intersection data the downstream invariants consume.
//!
//! A cover is described by its fiber components (ramification index `e`,
//! inertia exponent `m` of the generator character, self-intersection and
//! arithmetic Euler characteristic), the symmetric intersection matrix
//! between components, the order of the covering group and the residue
//! prime. Characters of the group enter only through their local inertia
//! exponents `n(phi, y)`.

use std::collections::BTreeMap;

use crate::arith;
use crate::error::{Error, Result};

/// One irreducible component of the special fiber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberComponent {
    /// Label, unique within a cover.
    pub id: String,
    /// Ramification index e_y: the order of the inertia group over this
    /// component. Divides the group order; 1 means unramified.
    pub e: u64,
    /// Inertia exponent of the generator character: its restriction to the
    /// inertia group equals the m-th power of the cotangent character.
    /// Must be a unit mod e when e > 1, and 0 when e = 1.
    pub m: u64,
    /// Self-intersection number y^2.
    pub self_intersection: i64,
    /// Arithmetic Euler characteristic chi(y, O_y) of the component.
    pub chi_struct: i64,
    /// Optional coefficient d_y for custom sheaves.
    pub d_custom: Option<i64>,
}

/// Symmetric intersection pairing on fiber components. Off-diagonal entries
/// are intersection numbers y.z >= 0; the diagonal carries y^2.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntersectionMatrix {
    entries: BTreeMap<(String, String), i64>,
}

impl IntersectionMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from (id, id, value) triples. Conflicting duplicate entries are
    /// rejected as an asymmetry.
    pub fn from_triples<I, S>(triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, i64)>,
        S: Into<String>,
    {
        let mut m = Self::new();
        for (a, b, v) in triples {
            m.insert(a.into(), b.into(), v)?;
        }
        Ok(m)
    }

    fn key(a: String, b: String) -> (String, String) {
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn insert(&mut self, a: String, b: String, v: i64) -> Result<()> {
        let k = Self::key(a, b);
        if let Some(&old) = self.entries.get(&k) {
            if old != v {
                return Err(Error::AsymmetricIntersection(k.0, k.1));
            }
        }
        self.entries.insert(k, v);
        Ok(())
    }

    /// Stored entry, if any. Pairs never recorded are understood as 0.
    pub fn get(&self, a: &str, b: &str) -> Option<i64> {
        let k = Self::key(a.to_string(), b.to_string());
        self.entries.get(&k).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(String, String), &i64)> {
        self.entries.iter()
    }
}

/// A tame cyclic cover datum: the special fiber over one residue prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDatum {
    /// Order n of the covering group; odd and coprime to the residue prime.
    pub group_order: u64,
    /// The rational prime this fiber lives over.
    pub residue_prime: u64,
    pub components: Vec<FiberComponent>,
    pub intersections: IntersectionMatrix,
}

/// Character of the covering group, given either as a power of a fixed
/// generator or as raw local exponents per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterSpec {
    /// chi^a for the fixed generator chi; local exponent at y is
    /// (a * m_y) mod e_y.
    Exponent(u64),
    /// Explicit n(phi, y) per component id, each in [0, e_y). Components
    /// absent from the map are taken to be unramified for the character.
    Raw(BTreeMap<String, u64>),
}

impl CharacterSpec {
    pub fn trivial() -> Self {
        CharacterSpec::Exponent(0)
    }

    /// The complex-conjugate character: local exponents (e_y - n) mod e_y.
    pub fn conjugate(&self, c: &CoverDatum) -> Result<CharacterSpec> {
        match self {
            CharacterSpec::Exponent(a) => {
                let n = c.group_order;
                Ok(CharacterSpec::Exponent((n - a % n) % n))
            }
            CharacterSpec::Raw(_) => {
                let mut out = BTreeMap::new();
                for comp in &c.components {
                    let v = local_exponent(c, self, &comp.id)?;
                    out.insert(comp.id.clone(), (comp.e - v) % comp.e);
                }
                Ok(CharacterSpec::Raw(out))
            }
        }
    }

    /// The squared character: local exponents 2 n(phi, y) mod e_y.
    pub fn square(&self, c: &CoverDatum) -> Result<CharacterSpec> {
        match self {
            CharacterSpec::Exponent(a) => {
                let n = c.group_order as u128;
                Ok(CharacterSpec::Exponent(((2 * *a as u128) % n) as u64))
            }
            CharacterSpec::Raw(_) => {
                let mut out = BTreeMap::new();
                for comp in &c.components {
                    let v = local_exponent(c, self, &comp.id)?;
                    out.insert(comp.id.clone(), (2 * v) % comp.e);
                }
                Ok(CharacterSpec::Raw(out))
            }
        }
    }
}

impl CoverDatum {
    pub fn component(&self, id: &str) -> Result<&FiberComponent> {
        self.components
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::UnknownComponent(id.to_string()))
    }

    /// Intersection number y.z; the diagonal is the self-intersection.
    pub fn intersection(&self, a: &str, b: &str) -> Result<i64> {
        let ca = self.component(a)?;
        self.component(b)?;
        if a == b {
            return Ok(ca.self_intersection);
        }
        Ok(self.intersections.get(a, b).unwrap_or(0))
    }

    pub fn component_ids(&self) -> Vec<String> {
        self.components.iter().map(|c| c.id.clone()).collect()
    }
}

/// Checks every invariant of a cover datum and returns it in canonical form
/// (components sorted by id, diagonal entries filled in). Reports the first
/// violated invariant. Idempotent.
pub fn validate_cover(c: CoverDatum) -> Result<CoverDatum> {
    let CoverDatum {
        group_order,
        residue_prime,
        mut components,
        intersections,
    } = c;

    if group_order == 0 || group_order % 2 == 0 {
        return Err(Error::EvenGroupOrder(group_order));
    }
    if !arith::is_prime(residue_prime) {
        return Err(Error::ResidueNotPrime(residue_prime));
    }
    if arith::gcd(group_order, residue_prime) != 1 {
        return Err(Error::WildCover {
            n: group_order,
            p: residue_prime,
        });
    }

    components.sort_by(|a, b| a.id.cmp(&b.id));
    for w in components.windows(2) {
        if w[0].id == w[1].id {
            return Err(Error::DuplicateComponent(w[0].id.clone()));
        }
    }
    for comp in &components {
        if comp.e == 0 || group_order % comp.e != 0 {
            return Err(Error::RamificationIndex {
                id: comp.id.clone(),
                e: comp.e,
                n: group_order,
            });
        }
        if comp.m >= comp.e {
            return Err(Error::InertiaOutOfRange {
                id: comp.id.clone(),
                m: comp.m,
                e: comp.e,
            });
        }
        if comp.e == 1 {
            if comp.m != 0 {
                return Err(Error::UnramifiedInertia {
                    id: comp.id.clone(),
                    m: comp.m,
                });
            }
        } else if arith::gcd(comp.m, comp.e) != 1 {
            return Err(Error::InertiaNotUnit {
                id: comp.id.clone(),
                m: comp.m,
                e: comp.e,
            });
        }
    }

    let mut canonical = IntersectionMatrix::new();
    for ((a, b), &v) in intersections.iter() {
        let ca = components
            .iter()
            .find(|c| &c.id == a)
            .ok_or_else(|| Error::UnknownComponent(a.clone()))?;
        components
            .iter()
            .find(|c| &c.id == b)
            .ok_or_else(|| Error::UnknownComponent(b.clone()))?;
        if a == b {
            if v != ca.self_intersection {
                return Err(Error::DiagonalMismatch {
                    id: a.clone(),
                    entry: v,
                    expected: ca.self_intersection,
                });
            }
        } else if v < 0 {
            return Err(Error::NegativeIntersection {
                a: a.clone(),
                b: b.clone(),
                value: v,
            });
        }
        canonical.insert(a.clone(), b.clone(), v)?;
    }
    for comp in &components {
        canonical.insert(comp.id.clone(), comp.id.clone(), comp.self_intersection)?;
    }

    Ok(CoverDatum {
        group_order,
        residue_prime,
        components,
        intersections: canonical,
    })
}

/// The local inertia exponent n(phi, y) in [0, e_y).
pub fn local_exponent(c: &CoverDatum, phi: &CharacterSpec, id: &str) -> Result<u64> {
    let comp = c.component(id)?;
    match phi {
        CharacterSpec::Exponent(a) => Ok(((*a as u128 * comp.m as u128) % comp.e as u128) as u64),
        CharacterSpec::Raw(map) => {
            let v = map.get(id).copied().unwrap_or(0);
            if v >= comp.e {
                return Err(Error::CharacterOutOfRange {
                    id: id.to_string(),
                    value: v,
                    e: comp.e,
                });
            }
            Ok(v)
        }
    }
}

/// Degree of the canonical class against the component:
/// c1(omega) . y = -y^2 - 2 chi(y, O_y).
pub fn canonical_degree(c: &CoverDatum, id: &str) -> Result<i64> {
    let comp = c.component(id)?;
    Ok(-comp.self_intersection - 2 * comp.chi_struct)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The modular fiber at p = 241, l = 5: a totally ramified component and
    /// an unramified one, both of self-intersection (1 - p)/12 = -20,
    /// meeting in (p - 1)/12 = 20 points.
    pub(crate) fn modular_cover_241() -> CoverDatum {
        let c = CoverDatum {
            group_order: 5,
            residue_prime: 241,
            components: vec![
                FiberComponent {
                    id: "y0".into(),
                    e: 5,
                    m: 1,
                    self_intersection: -20,
                    chi_struct: 1,
                    d_custom: None,
                },
                FiberComponent {
                    id: "yinf".into(),
                    e: 1,
                    m: 0,
                    self_intersection: -20,
                    chi_struct: 1,
                    d_custom: None,
                },
            ],
            intersections: IntersectionMatrix::from_triples(vec![("y0", "yinf", 20)]).unwrap(),
        };
        validate_cover(c).unwrap()
    }

    #[test]
    fn modular_cover_is_valid() {
        let c = modular_cover_241();
        assert_eq!(c.intersection("y0", "yinf").unwrap(), 20);
        assert_eq!(c.intersection("y0", "y0").unwrap(), -20);
    }

    #[test]
    fn even_group_order_rejected() {
        let mut c = modular_cover_241();
        c.group_order = 4;
        let err = validate_cover(c).unwrap_err();
        assert!(err.to_string().contains("even group order"));
    }

    #[test]
    fn non_unit_inertia_rejected() {
        let c = CoverDatum {
            group_order: 9,
            residue_prime: 7,
            components: vec![FiberComponent {
                id: "y".into(),
                e: 9,
                m: 3,
                self_intersection: -1,
                chi_struct: 1,
                d_custom: None,
            }],
            intersections: IntersectionMatrix::new(),
        };
        let err = validate_cover(c).unwrap_err();
        assert!(err.to_string().contains("inertia exponent not a unit"));
    }

    #[test]
    fn wild_cover_rejected() {
        let mut c = modular_cover_241();
        c.residue_prime = 5;
        assert!(matches!(
            validate_cover(c),
            Err(Error::WildCover { n: 5, p: 5 })
        ));
    }

    #[test]
    fn unknown_intersection_id_rejected() {
        let mut c = modular_cover_241();
        c.intersections
            .insert("y0".into(), "nope".into(), 1)
            .unwrap();
        assert!(matches!(
            validate_cover(c),
            Err(Error::UnknownComponent(id)) if id == "nope"
        ));
    }

    #[test]
    fn asymmetric_entries_rejected() {
        let mut m = IntersectionMatrix::new();
        m.insert("a".into(), "b".into(), 1).unwrap();
        assert!(matches!(
            m.insert("b".into(), "a".into(), 2),
            Err(Error::AsymmetricIntersection(..))
        ));
    }

    #[test]
    fn local_exponents() {
        let c = modular_cover_241();
        assert_eq!(
            local_exponent(&c, &CharacterSpec::Exponent(3), "y0").unwrap(),
            3
        );
        assert_eq!(
            local_exponent(&c, &CharacterSpec::Exponent(0), "y0").unwrap(),
            0
        );
        assert_eq!(
            local_exponent(&c, &CharacterSpec::Exponent(3), "yinf").unwrap(),
            0
        );
        // e = 5, m = 2, a = 4: 8 mod 5 = 3.
        let c2 = validate_cover(CoverDatum {
            group_order: 5,
            residue_prime: 11,
            components: vec![FiberComponent {
                id: "y".into(),
                e: 5,
                m: 2,
                self_intersection: 0,
                chi_struct: 0,
                d_custom: None,
            }],
            intersections: IntersectionMatrix::new(),
        })
        .unwrap();
        assert_eq!(
            local_exponent(&c2, &CharacterSpec::Exponent(4), "y").unwrap(),
            3
        );
    }

    #[test]
    fn raw_mode_bounds_checked() {
        let c = modular_cover_241();
        let phi = CharacterSpec::Raw([("y0".to_string(), 7u64)].into_iter().collect());
        assert!(matches!(
            local_exponent(&c, &phi, "y0"),
            Err(Error::CharacterOutOfRange { .. })
        ));
        let phi = CharacterSpec::Raw([("y0".to_string(), 2u64)].into_iter().collect());
        assert_eq!(local_exponent(&c, &phi, "y0").unwrap(), 2);
        assert_eq!(local_exponent(&c, &phi, "yinf").unwrap(), 0);
    }

    #[test]
    fn canonical_degrees() {
        let c = modular_cover_241();
        assert_eq!(canonical_degree(&c, "y0").unwrap(), 18);

        let mut z = modular_cover_241();
        z.components[0].self_intersection = 0;
        z.components[0].chi_struct = 0;
        assert_eq!(canonical_degree(&z, "y0").unwrap(), 0);

        // p = 182857: y0^2 = (1 - p)/12 = -15238, chi = 1.
        let mut big = modular_cover_241();
        big.components[0].self_intersection = -15238;
        assert_eq!(canonical_degree(&big, "y0").unwrap(), 15236);
    }

    #[test]
    fn unknown_component_lookup_is_an_error() {
        let c = modular_cover_241();
        assert!(matches!(
            local_exponent(&c, &CharacterSpec::Exponent(1), "nope"),
            Err(Error::UnknownComponent(_))
        ));
        assert!(matches!(
            canonical_degree(&c, "nope"),
            Err(Error::UnknownComponent(_))
        ));
    }

    #[test]
    fn canonical_degree_is_linear() {
        // coefficients (-1, -2) in (y^2, chi), on arbitrary triples
        for (y2, chi) in [(-20i64, 1i64), (7, -3), (0, 0), (123, 45)] {
            let mut c = modular_cover_241();
            c.components[0].self_intersection = y2;
            c.components[0].chi_struct = chi;
            assert_eq!(canonical_degree(&c, "y0").unwrap(), -y2 - 2 * chi);
        }
    }

    #[test]
    fn validate_is_idempotent() {
        let c = modular_cover_241();
        let once = validate_cover(c.clone()).unwrap();
        let twice = validate_cover(once.clone()).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn conjugate_exponent_sum_property() {
        let c = modular_cover_241();
        for a in 0..5u64 {
            let phi = CharacterSpec::Exponent(a);
            let bar = phi.conjugate(&c).unwrap();
            for id in ["y0", "yinf"] {
                let n = local_exponent(&c, &phi, id).unwrap();
                let nb = local_exponent(&c, &bar, id).unwrap();
                let e = c.component(id).unwrap().e;
                let m = c.component(id).unwrap().m;
                if (a * m) % e == 0 {
                    assert_eq!(n + nb, 0);
                } else {
                    assert_eq!(n + nb, e);
                }
            }
        }
    }
}
