//! Python bindings: covers, characters, resolvent divisors, intersection
//! invariants, group-ring elements and the modular pipeline, exposed with
//! plain Python types. Exact rationals cross the boundary as
//! (numerator, denominator) tuples of ints; group-ring elements as
//! {index: (numerator, denominator)} dicts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use equichar_core::cover::{
    canonical_degree, local_exponent, validate_cover, CharacterSpec, CoverDatum, FiberComponent,
    IntersectionMatrix,
};
use equichar_core::error::Error;
use equichar_core::galois::GaloisRingElement;
use equichar_core::intersection::{
    a_invariant, euler_delta, exponent_vector, pair, t_invariant, twisted_delta,
};
use equichar_core::modular::{
    build_cover, exponent_elements, norm_report, search_prime, t_closed_form, ModularParams,
    Verdict,
};
use equichar_core::quadratic::{self, class_group, split_prime_class, t_sum};
use equichar_core::resolvent::{
    lagrange_valuation_oracle, resolvent_coefficient, resolvent_divisor, support_divisor,
    ResolventDivisor, SheafSpec,
};

fn value_error(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Rat = (BigInt, BigInt);

fn rat(r: &BigRational) -> Rat {
    (r.numer().clone(), r.denom().clone())
}

fn ring_coeffs(x: &GaloisRingElement) -> BTreeMap<u64, Rat> {
    x.triples()
        .into_iter()
        .map(|(u, n, d)| (u, (n, d)))
        .collect()
}

fn parse_sheaf(name: &str) -> PyResult<SheafSpec> {
    match name {
        "structure" => Ok(SheafSpec::Structure),
        "canonical" => Ok(SheafSpec::Canonical),
        "canonical-half" | "canonical_half" => Ok(SheafSpec::CanonicalHalf),
        "custom" => Ok(SheafSpec::Custom),
        other => Err(PyValueError::new_err(format!(
            "unknown sheaf '{other}': use structure, canonical, canonical-half or custom"
        ))),
    }
}

/// A character given either as a generator power (int) or as raw local
/// exponents per component id (dict).
#[derive(FromPyObject)]
enum CharArg {
    Exponent(u64),
    Raw(BTreeMap<String, u64>),
}

impl From<CharArg> for CharacterSpec {
    fn from(c: CharArg) -> Self {
        match c {
            CharArg::Exponent(a) => CharacterSpec::Exponent(a),
            CharArg::Raw(map) => CharacterSpec::Raw(map),
        }
    }
}

/// Divisor coefficients: ints or (numerator, denominator) tuples.
#[derive(FromPyObject)]
enum RatArg {
    Int(BigInt),
    Pair(BigInt, BigInt),
}

impl RatArg {
    fn into_rational(self) -> PyResult<BigRational> {
        match self {
            RatArg::Int(n) => Ok(BigRational::from(n)),
            RatArg::Pair(n, d) => {
                if d == BigInt::from(0) {
                    return Err(PyValueError::new_err("zero denominator"));
                }
                Ok(BigRational::new(n, d))
            }
        }
    }
}

fn divisor_from_dict(
    c: &CoverDatum,
    entries: BTreeMap<String, RatArg>,
) -> PyResult<ResolventDivisor> {
    let mut coeffs: BTreeMap<String, BigRational> = c
        .components
        .iter()
        .map(|k| (k.id.clone(), BigRational::from(BigInt::from(0))))
        .collect();
    for (id, v) in entries {
        coeffs.insert(id, v.into_rational()?);
    }
    Ok(ResolventDivisor::new(coeffs))
}

#[derive(FromPyObject)]
#[pyo3(from_item_all)]
struct ComponentArg {
    id: String,
    e: u64,
    m: u64,
    self_intersection: i64,
    chi_struct: i64,
    #[pyo3(default)]
    d_custom: Option<i64>,
}

/// A validated tame cyclic cover datum.
#[pyclass(frozen)]
struct Cover {
    inner: CoverDatum,
}

#[pymethods]
impl Cover {
    /// Cover(group_order, residue_prime, components, intersections)
    ///
    /// components: list of dicts with keys id, e, m, self_intersection,
    /// chi_struct and optional d_custom; intersections: list of
    /// (id, id, value) triples.
    #[new]
    #[pyo3(signature = (group_order, residue_prime, components, intersections=Vec::new()))]
    fn new(
        group_order: u64,
        residue_prime: u64,
        components: Vec<ComponentArg>,
        intersections: Vec<(String, String, i64)>,
    ) -> PyResult<Self> {
        let components = components
            .into_iter()
            .map(|c| FiberComponent {
                id: c.id,
                e: c.e,
                m: c.m,
                self_intersection: c.self_intersection,
                chi_struct: c.chi_struct,
                d_custom: c.d_custom,
            })
            .collect();
        let matrix = IntersectionMatrix::from_triples(intersections).map_err(value_error)?;
        let inner = validate_cover(CoverDatum {
            group_order,
            residue_prime,
            components,
            intersections: matrix,
        })
        .map_err(value_error)?;
        Ok(Cover { inner })
    }

    /// The modular-curve quotient cover for primes p = 1 mod 24, l | p - 1.
    #[staticmethod]
    fn modular(p: u64, l: u64) -> PyResult<Self> {
        let mp = ModularParams::new(p, l).map_err(value_error)?;
        Ok(Cover {
            inner: build_cover(&mp).map_err(value_error)?,
        })
    }

    #[getter]
    fn group_order(&self) -> u64 {
        self.inner.group_order
    }

    #[getter]
    fn residue_prime(&self) -> u64 {
        self.inner.residue_prime
    }

    fn component_ids(&self) -> Vec<String> {
        self.inner.component_ids()
    }

    fn intersection(&self, a: &str, b: &str) -> PyResult<i64> {
        self.inner.intersection(a, b).map_err(value_error)
    }

    /// The local inertia exponent n(phi, y).
    fn local_exponent(&self, character: CharArg, id: &str) -> PyResult<u64> {
        local_exponent(&self.inner, &character.into(), id).map_err(value_error)
    }

    /// c1(omega) . y = -y^2 - 2 chi(y, O_y).
    fn canonical_degree(&self, id: &str) -> PyResult<i64> {
        canonical_degree(&self.inner, id).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "Cover(group_order={}, residue_prime={}, components={:?})",
            self.inner.group_order,
            self.inner.residue_prime,
            self.inner.component_ids()
        )
    }
}

/// An exact element of the rational group ring of (Z/m)^*.
#[pyclass(frozen)]
struct RingElement {
    inner: GaloisRingElement,
}

#[pymethods]
impl RingElement {
    /// RingElement(modulus, coeffs) with coeffs a dict {index: int or
    /// (numerator, denominator)}.
    #[new]
    #[pyo3(signature = (modulus, coeffs=None))]
    fn new(modulus: u64, coeffs: Option<BTreeMap<u64, RatArg>>) -> PyResult<Self> {
        let mut pairs = Vec::new();
        for (u, v) in coeffs.unwrap_or_default() {
            pairs.push((u, v.into_rational()?));
        }
        Ok(RingElement {
            inner: GaloisRingElement::from_coeffs(modulus, pairs).map_err(value_error)?,
        })
    }

    /// The basis element sigma_u.
    #[staticmethod]
    fn sigma(modulus: u64, u: u64) -> PyResult<Self> {
        Ok(RingElement {
            inner: GaloisRingElement::sigma(modulus, u).map_err(value_error)?,
        })
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.modulus()
    }

    /// {index: (numerator, denominator)} for the nonzero coefficients.
    fn coeffs(&self) -> BTreeMap<u64, Rat> {
        ring_coeffs(&self.inner)
    }

    fn coeff(&self, u: u64) -> Rat {
        rat(&self.inner.coeff(u))
    }

    fn augmentation(&self) -> Rat {
        rat(&self.inner.augmentation())
    }

    fn is_integral(&self) -> bool {
        self.inner.is_integral()
    }

    fn scale(&self, factor: RatArg) -> PyResult<Self> {
        Ok(RingElement {
            inner: self.inner.scale(&factor.into_rational()?),
        })
    }

    /// Left multiplication by sigma_u.
    fn apply_sigma(&self, u: u64) -> PyResult<Self> {
        Ok(RingElement {
            inner: self.inner.apply_sigma(u).map_err(value_error)?,
        })
    }

    fn __add__(&self, other: &RingElement) -> PyResult<Self> {
        Ok(RingElement {
            inner: self.inner.add(&other.inner).map_err(value_error)?,
        })
    }

    fn __sub__(&self, other: &RingElement) -> PyResult<Self> {
        Ok(RingElement {
            inner: self.inner.sub(&other.inner).map_err(value_error)?,
        })
    }

    fn __mul__(&self, other: &RingElement) -> PyResult<Self> {
        Ok(RingElement {
            inner: self.inner.mul(&other.inner).map_err(value_error)?,
        })
    }

    fn __neg__(&self) -> Self {
        RingElement {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &RingElement) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let terms: Vec<String> = self
            .inner
            .triples()
            .into_iter()
            .map(|(u, n, d)| {
                if d == BigInt::from(1) {
                    format!("{n}*s{u}")
                } else {
                    format!("({n}/{d})*s{u}")
                }
            })
            .collect();
        if terms.is_empty() {
            format!("RingElement(mod {}, 0)", self.inner.modulus())
        } else {
            format!(
                "RingElement(mod {}, {})",
                self.inner.modulus(),
                terms.join(" + ")
            )
        }
    }
}

/// A class of indefinite binary quadratic forms of prime discriminant
/// l = 1 mod 4, i.e. an ideal class of Q(sqrt(l)).
#[pyclass(frozen)]
struct FormClass {
    inner: quadratic::FormClass,
}

#[pymethods]
impl FormClass {
    /// The class of the form (a, b, c) of discriminant l.
    #[new]
    fn new(l: u64, a: BigInt, b: BigInt, c: BigInt) -> PyResult<Self> {
        Ok(FormClass {
            inner: quadratic::FormClass::from_form(l, quadratic::QuadForm::new(a, b, c))
                .map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn principal(l: u64) -> PyResult<Self> {
        Ok(FormClass {
            inner: quadratic::FormClass::principal(l).map_err(value_error)?,
        })
    }

    #[getter]
    fn discriminant(&self) -> u64 {
        self.inner.discriminant()
    }

    /// The canonical reduced representative (a, b, c).
    fn form(&self) -> (BigInt, BigInt, BigInt) {
        let f = self.inner.representative();
        (f.a.clone(), f.b.clone(), f.c.clone())
    }

    fn cycle(&self) -> Vec<(BigInt, BigInt, BigInt)> {
        self.inner
            .cycle()
            .iter()
            .map(|f| (f.a.clone(), f.b.clone(), f.c.clone()))
            .collect()
    }

    /// Principality in the wide (ordinary) class group.
    fn is_principal(&self) -> bool {
        self.inner.is_principal()
    }

    fn is_narrow_principal(&self) -> bool {
        self.inner.is_narrow_principal()
    }

    /// Order in the wide class group.
    fn order(&self) -> u64 {
        self.inner.class_order()
    }

    fn compose(&self, other: &FormClass) -> PyResult<Self> {
        Ok(FormClass {
            inner: self.inner.compose(&other.inner).map_err(value_error)?,
        })
    }

    fn conjugate(&self) -> Self {
        FormClass {
            inner: self.inner.conjugate(),
        }
    }

    fn __eq__(&self, other: &FormClass) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let f = self.inner.representative();
        format!(
            "FormClass(disc={}, form=({}, {}, {}))",
            self.inner.discriminant(),
            f.a,
            f.b,
            f.c
        )
    }
}

#[pyfunction(name = "resolvent_coefficient")]
fn py_resolvent_coefficient(e: u64, d: i64, nphi: u64) -> PyResult<Rat> {
    Ok(rat(&resolvent_coefficient(e, d, nphi).map_err(value_error)?))
}

#[pyfunction(name = "lagrange_valuation_oracle")]
fn py_lagrange_valuation_oracle(e: u64, d: i64, nphi: u64) -> PyResult<Rat> {
    Ok(rat(
        &lagrange_valuation_oracle(e, d, nphi).map_err(value_error)?
    ))
}

#[pyfunction(name = "resolvent_divisor")]
fn py_resolvent_divisor(
    cover: &Cover,
    sheaf: &str,
    character: CharArg,
) -> PyResult<BTreeMap<String, Rat>> {
    let s = parse_sheaf(sheaf)?;
    let d = resolvent_divisor(&cover.inner, &s, &character.into()).map_err(value_error)?;
    Ok(d.iter().map(|(id, v)| (id.clone(), rat(v))).collect())
}

/// Component ids in the support set S(phi) (or S'(phi) with strict_half).
#[pyfunction(name = "support_ids")]
#[pyo3(signature = (cover, character, strict_half=false))]
fn py_support_ids(cover: &Cover, character: CharArg, strict_half: bool) -> PyResult<Vec<String>> {
    let d = support_divisor(&cover.inner, &character.into(), strict_half).map_err(value_error)?;
    Ok(d.iter()
        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
        .map(|(id, _)| id.clone())
        .collect())
}

#[pyfunction(name = "pair")]
fn py_pair(
    cover: &Cover,
    r1: BTreeMap<String, RatArg>,
    r2: BTreeMap<String, RatArg>,
) -> PyResult<Rat> {
    let d1 = divisor_from_dict(&cover.inner, r1)?;
    let d2 = divisor_from_dict(&cover.inner, r2)?;
    Ok(rat(&pair(&cover.inner, &d1, &d2).map_err(value_error)?))
}

#[pyfunction(name = "t_invariant")]
fn py_t_invariant<'py>(
    py: Python<'py>,
    cover: &Cover,
    sheaf: &str,
    character: CharArg,
) -> PyResult<Bound<'py, PyDict>> {
    let s = parse_sheaf(sheaf)?;
    let t = t_invariant(&cover.inner, &s, &character.into()).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("value", rat(&t.value))?;
    out.set_item("quadratic", rat(&t.quadratic_part))?;
    out.set_item("linear", rat(&t.linear_part))?;
    Ok(out)
}

#[pyfunction(name = "euler_delta")]
fn py_euler_delta(cover: &Cover, sheaf: &str, character: CharArg) -> PyResult<BigInt> {
    let s = parse_sheaf(sheaf)?;
    euler_delta(&cover.inner, &s, &character.into()).map_err(value_error)
}

#[pyfunction(name = "twisted_delta")]
fn py_twisted_delta(cover: &Cover, sheaf: &str, character: CharArg) -> PyResult<BigInt> {
    let s = parse_sheaf(sheaf)?;
    twisted_delta(&cover.inner, &s, &character.into()).map_err(value_error)
}

#[pyfunction(name = "a_invariant")]
fn py_a_invariant(cover: &Cover, character: CharArg) -> PyResult<BigInt> {
    a_invariant(&cover.inner, &character.into()).map_err(value_error)
}

/// {a: T(structure, chi^a) - T(sheaf, chi^a)} over non-trivial characters.
#[pyfunction(name = "exponent_vector")]
fn py_exponent_vector(cover: &Cover, sheaf: &str) -> PyResult<BTreeMap<u64, BigInt>> {
    let s = parse_sheaf(sheaf)?;
    let v = exponent_vector(&cover.inner, &s).map_err(value_error)?;
    Ok(v.coeffs)
}

#[pyfunction(name = "stickelberger")]
fn py_stickelberger(l: u64) -> PyResult<RingElement> {
    Ok(RingElement {
        inner: equichar_core::galois::stickelberger(l).map_err(value_error)?,
    })
}

#[pyfunction(name = "stickelberger_level")]
fn py_stickelberger_level(l: u64, t: u32) -> PyResult<RingElement> {
    Ok(RingElement {
        inner: equichar_core::galois::stickelberger_level(l, t).map_err(value_error)?,
    })
}

#[pyfunction(name = "s_sum")]
fn py_s_sum(l: u64, i: u32) -> PyResult<RingElement> {
    Ok(RingElement {
        inner: equichar_core::galois::s_sum(l, i).map_err(value_error)?,
    })
}

#[pyfunction(name = "b_sum")]
fn py_b_sum(l: u64, s: u32, t: u32, u: u64) -> PyResult<RingElement> {
    Ok(RingElement {
        inner: equichar_core::galois::b_sum(l, s, t, u).map_err(value_error)?,
    })
}

#[pyfunction(name = "trace_lift")]
fn py_trace_lift(x: &RingElement, l: u64, s: u32) -> PyResult<RingElement> {
    Ok(RingElement {
        inner: equichar_core::galois::trace_lift(&x.inner, l, s).map_err(value_error)?,
    })
}

#[pyfunction(name = "b_sum_factorization_holds")]
fn py_b_sum_factorization_holds(l: u64, s: u32, t: u32, u: u64) -> PyResult<bool> {
    equichar_core::galois::b_sum_factorization_holds(l, s, t, u).map_err(value_error)
}

#[pyfunction(name = "power_sum_identities")]
fn py_power_sum_identities<'py>(py: Python<'py>, l: u64) -> PyResult<Bound<'py, PyDict>> {
    let report = equichar_core::galois::verify_power_sum_identities(l).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("l", report.l)?;
    out.set_item("s0_identity", report.s0_identity)?;
    out.set_item("s1_identity", report.s1_identity)?;
    out.set_item("square_sum_identity", report.square_sum_identity)?;
    out.set_item("proof_display_agrees", report.proof_display_agrees)?;
    Ok(out)
}

#[pyfunction(name = "class_group")]
fn py_class_group<'py>(py: Python<'py>, l: u64) -> PyResult<Bound<'py, PyDict>> {
    let g = class_group(l).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("l", g.l)?;
    out.set_item("narrow_class_number", g.narrow_class_number)?;
    out.set_item("wide_class_number", g.wide_class_number)?;
    out.set_item("fundamental_unit_norm", g.fundamental_unit_norm)?;
    out.set_item("cf_period", g.cf_period)?;
    Ok(out)
}

#[pyfunction(name = "split_prime_class")]
fn py_split_prime_class(l: u64, p: u64) -> PyResult<FormClass> {
    Ok(FormClass {
        inner: split_prime_class(l, p).map_err(value_error)?,
    })
}

#[pyfunction(name = "t_sum")]
fn py_t_sum(l: u64, i: u32) -> PyResult<BigInt> {
    t_sum(l, i).map_err(value_error)
}

#[pyfunction(name = "norm_exponent")]
fn py_norm_exponent(x: &RingElement) -> PyResult<BigInt> {
    quadratic::norm_exponent(&x.inner).map_err(value_error)
}

#[pyfunction(name = "t_closed_form")]
fn py_t_closed_form(p: u64, l: u64, a: u64) -> PyResult<Rat> {
    let mp = ModularParams::new(p, l).map_err(value_error)?;
    Ok(rat(&t_closed_form(&mp, a).map_err(value_error)?))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Trivial => "trivial",
        Verdict::NonTrivial => "non-trivial",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn ring_py<'py>(py: Python<'py>, x: &GaloisRingElement) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("modulus", x.modulus())?;
    out.set_item("coeffs", ring_coeffs(x))?;
    Ok(out)
}

/// The full modular report: exponent elements, norm data and verdicts.
#[pyfunction(name = "norm_report")]
fn py_norm_report<'py>(py: Python<'py>, p: u64, l: u64) -> PyResult<Bound<'py, PyDict>> {
    let mp = ModularParams::new(p, l).map_err(value_error)?;
    let report = norm_report(&mp).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("p", p)?;
    out.set_item("l", l)?;

    let ex = PyDict::new(py);
    ex.set_item("v_simplified", ring_py(py, &report.exponents.v_simplified)?)?;
    ex.set_item(
        "half_simplified",
        ring_py(py, &report.exponents.half_simplified)?,
    )?;
    ex.set_item(
        "structure_simplified",
        ring_py(py, &report.exponents.structure_simplified)?,
    )?;
    ex.set_item("v_raw", ring_py(py, &report.exponents.v_raw)?)?;
    ex.set_item("v_closed", ring_py(py, &report.exponents.v_closed)?)?;
    ex.set_item("raw_matches_closed", report.exponents.raw_matches_closed)?;
    out.set_item("exponents", ex)?;

    match &report.norm {
        Some(n) => {
            let norm = PyDict::new(py);
            let cg = PyDict::new(py);
            cg.set_item("l", n.class_group.l)?;
            cg.set_item("narrow_class_number", n.class_group.narrow_class_number)?;
            cg.set_item("wide_class_number", n.class_group.wide_class_number)?;
            cg.set_item("fundamental_unit_norm", n.class_group.fundamental_unit_norm)?;
            norm.set_item("class_group", cg)?;
            norm.set_item(
                "beta_form",
                (n.beta.a.clone(), n.beta.b.clone(), n.beta.c.clone()),
            )?;
            norm.set_item("beta_principal", n.beta_principal)?;
            norm.set_item("beta_order", n.beta_order)?;
            norm.set_item("t1", n.t1.clone())?;
            norm.set_item("t2", n.t2.clone())?;
            norm.set_item("exponent_v", n.exponent_v.clone())?;
            norm.set_item("exponent_half", n.exponent_half.clone())?;
            norm.set_item("exponent_structure", n.exponent_structure.clone())?;
            norm.set_item("routes_agree", n.routes_agree)?;
            out.set_item("norm", norm)?;
        }
        None => out.set_item("norm", py.None())?,
    }

    let verdicts = PyDict::new(py);
    verdicts.set_item("v", verdict_str(report.verdict_v))?;
    verdicts.set_item("half_canonical", verdict_str(report.verdict_half))?;
    verdicts.set_item("structure", verdict_str(report.verdict_structure))?;
    out.set_item("verdicts", verdicts)?;
    Ok(out)
}

/// Search for the smallest prime p = 1 mod 24l with non-trivial norm
/// images; returns {"found": p or None, "candidates_tested": k}.
#[pyfunction(name = "search_prime")]
#[pyo3(signature = (l, limit=1_000_000, strict=false))]
fn py_search_prime<'py>(
    py: Python<'py>,
    l: u64,
    limit: u64,
    strict: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let outcome = search_prime(l, limit, strict).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("l", outcome.l)?;
    out.set_item("limit", outcome.limit)?;
    out.set_item("strict", outcome.strict)?;
    out.set_item("found", outcome.found)?;
    out.set_item("candidates_tested", outcome.candidates_tested)?;
    Ok(out)
}

/// Raw theorem exponents without the norm step (works for l = 3 mod 4 too).
#[pyfunction(name = "theorem_exponents")]
fn py_theorem_exponents<'py>(py: Python<'py>, p: u64, l: u64) -> PyResult<Bound<'py, PyDict>> {
    let mp = ModularParams::new(p, l).map_err(value_error)?;
    let rep = exponent_elements(&mp).map_err(value_error)?;
    let out = PyDict::new(py);
    out.set_item("v_simplified", ring_py(py, &rep.v_simplified)?)?;
    out.set_item("half_simplified", ring_py(py, &rep.half_simplified)?)?;
    out.set_item(
        "structure_simplified",
        ring_py(py, &rep.structure_simplified)?,
    )?;
    out.set_item("v_raw", ring_py(py, &rep.v_raw)?)?;
    out.set_item("v_closed", ring_py(py, &rep.v_closed)?)?;
    out.set_item("raw_matches_closed", rep.raw_matches_closed)?;
    Ok(out)
}

#[pymodule]
fn equichar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Cover>()?;
    m.add_class::<RingElement>()?;
    m.add_class::<FormClass>()?;
    m.add_function(wrap_pyfunction!(py_resolvent_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(py_lagrange_valuation_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(py_resolvent_divisor, m)?)?;
    m.add_function(wrap_pyfunction!(py_support_ids, m)?)?;
    m.add_function(wrap_pyfunction!(py_pair, m)?)?;
    m.add_function(wrap_pyfunction!(py_t_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(py_euler_delta, m)?)?;
    m.add_function(wrap_pyfunction!(py_twisted_delta, m)?)?;
    m.add_function(wrap_pyfunction!(py_a_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(py_exponent_vector, m)?)?;
    m.add_function(wrap_pyfunction!(py_stickelberger, m)?)?;
    m.add_function(wrap_pyfunction!(py_stickelberger_level, m)?)?;
    m.add_function(wrap_pyfunction!(py_s_sum, m)?)?;
    m.add_function(wrap_pyfunction!(py_b_sum, m)?)?;
    m.add_function(wrap_pyfunction!(py_trace_lift, m)?)?;
    m.add_function(wrap_pyfunction!(py_b_sum_factorization_holds, m)?)?;
    m.add_function(wrap_pyfunction!(py_power_sum_identities, m)?)?;
    m.add_function(wrap_pyfunction!(py_class_group, m)?)?;
    m.add_function(wrap_pyfunction!(py_split_prime_class, m)?)?;
    m.add_function(wrap_pyfunction!(py_t_sum, m)?)?;
    m.add_function(wrap_pyfunction!(py_norm_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(py_t_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(py_norm_report, m)?)?;
    m.add_function(wrap_pyfunction!(py_search_prime, m)?)?;
    m.add_function(wrap_pyfunction!(py_theorem_exponents, m)?)?;
    Ok(())
}
