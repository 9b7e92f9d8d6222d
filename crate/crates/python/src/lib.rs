//! Python bindings for the `supportwit` engine.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use sw::cert::{self, Certificate as CoreCertificate};
use sw::construct::{self as construction, SearchConfig};
use sw::gb::Ideal as CoreIdeal;
use sw::poly::{PolyRing, Polynomial};
use sw::ringfile::RingFile;
use sw::scalar::Field;
use sw::support::{self, Presentation as CorePresentation};

create_exception!(supportwit, SearchExhausted, PyException);
create_exception!(supportwit, VerificationFailed, PyException);

fn err(e: sw::Error) -> PyErr {
    match e {
        sw::Error::SearchExhausted { .. } => SearchExhausted::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn field_of(field: &Bound<'_, PyAny>) -> PyResult<Field> {
    if let Ok(p) = field.extract::<u64>() {
        return Field::prime(p).map_err(err);
    }
    match field.extract::<String>()?.as_str() {
        "QQ" => Ok(Field::Rational),
        other => Err(PyValueError::new_err(format!(
            "unknown field `{other}`; use \"QQ\" or a prime"
        ))),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or_default().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// Polynomial ring `k[x_1, ..., x_e]` with grevlex order.
#[pyclass(module = "supportwit", frozen, from_py_object)]
#[derive(Clone)]
pub struct Ring {
    inner: PolyRing,
}

#[pymethods]
impl Ring {
    #[new]
    #[pyo3(signature = (variables, field = None))]
    fn new(variables: Vec<String>, field: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let field = match field {
            Some(f) => field_of(f)?,
            None => Field::Rational,
        };
        Ok(Ring {
            inner: PolyRing::new(field, variables).map_err(err)?,
        })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.vars().to_vec()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn parse(&self, text: &str) -> PyResult<Poly> {
        Ok(Poly {
            ring: self.inner.clone(),
            inner: self.inner.parse(text).map_err(err)?,
        })
    }

    fn ideal(&self, generators: Vec<String>) -> PyResult<Ideal> {
        let gens = parse_all(&self.inner, &generators)?;
        Ok(Ideal {
            ring: self.inner.clone(),
            inner: CoreIdeal::new(gens).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Ring({}, [{}])", self.inner.field(), self.inner.vars().join(", "))
    }
}

fn parse_all(ring: &PolyRing, gens: &[String]) -> PyResult<Vec<Polynomial>> {
    gens.iter().map(|g| ring.parse(g).map_err(err)).collect()
}

#[pyclass(module = "supportwit", name = "Polynomial", frozen, from_py_object)]
#[derive(Clone)]
pub struct Poly {
    ring: PolyRing,
    inner: Polynomial,
}

#[pymethods]
impl Poly {
    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    /// Order: the least degree of a term. Raises on the zero polynomial.
    fn ord(&self) -> PyResult<u32> {
        self.inner.ord().map_err(err)
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    fn __str__(&self) -> String {
        self.ring.format(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.ring.format(&self.inner))
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(module = "supportwit", frozen, from_py_object)]
#[derive(Clone)]
pub struct Ideal {
    ring: PolyRing,
    inner: CoreIdeal,
}

impl Ideal {
    fn poly(&self, f: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        if let Ok(p) = f.extract::<Poly>() {
            return Ok(p.inner);
        }
        self.ring.parse(&f.extract::<String>()?).map_err(err)
    }

    fn wrap(&self, f: Polynomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            inner: f,
        }
    }
}

#[pymethods]
impl Ideal {
    fn generators(&self) -> Vec<Poly> {
        self.inner.generators().iter().map(|g| self.wrap(g.clone())).collect()
    }

    /// Reduced Groebner basis.
    fn groebner(&self) -> Vec<Poly> {
        self.inner.groebner().iter().map(|g| self.wrap(g.clone())).collect()
    }

    fn contains(&self, f: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.inner.contains(&self.poly(f)?).map_err(err)
    }

    fn normal_form(&self, f: &Bound<'_, PyAny>) -> PyResult<Poly> {
        Ok(self.wrap(self.inner.normal_form(&self.poly(f)?).map_err(err)?))
    }

    fn krull_dim(&self) -> usize {
        self.inner.krull_dim()
    }

    fn is_m_primary(&self) -> bool {
        self.inner.is_m_primary()
    }

    /// `dim_k Q/J`, or `None` when the quotient is infinite.
    fn quotient_dimension(&self) -> Option<usize> {
        self.inner.quotient_dimension()
    }

    /// The product `mJ`.
    fn times_maximal(&self) -> Ideal {
        Ideal {
            ring: self.ring.clone(),
            inner: self.inner.product_with_maximal(),
        }
    }

    fn __repr__(&self) -> String {
        let gens: Vec<String> = self.inner.generators().iter().map(|g| self.ring.format(g)).collect();
        format!("Ideal({})", gens.join(", "))
    }
}

/// A presentation `R = Q/I` with `I ⊆ m^2`, generators sorted by order.
#[pyclass(module = "supportwit", frozen, from_py_object)]
#[derive(Clone)]
pub struct Presentation {
    inner: CorePresentation,
    span_dim: Option<u32>,
}

#[pymethods]
impl Presentation {
    #[new]
    #[pyo3(signature = (ring, generators, assume_minimal = false, span_dim = None))]
    fn new(ring: &Ring, generators: Vec<String>, assume_minimal: bool, span_dim: Option<u32>) -> PyResult<Self> {
        let gens = parse_all(&ring.inner, &generators)?;
        Ok(Presentation {
            inner: CorePresentation::new(ring.inner.clone(), gens, assume_minimal).map_err(err)?,
            span_dim,
        })
    }

    /// Builds a presentation from the text of a JSON ring file.
    #[staticmethod]
    #[pyo3(signature = (text, assume_minimal = false))]
    fn from_ring_file(text: &str, assume_minimal: bool) -> PyResult<Self> {
        let (rf, p) = RingFile::load(text, assume_minimal).map_err(err)?;
        Ok(Presentation {
            inner: p,
            span_dim: rf.span_dim,
        })
    }

    fn to_ring_file(&self) -> String {
        let mut rf = RingFile::of(&self.inner);
        rf.span_dim = self.span_dim;
        rf.to_json()
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring {
            inner: self.inner.ring().clone(),
        }
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        let r = self.inner.ring();
        self.inner.generators().iter().map(|g| r.format(g)).collect()
    }

    #[getter]
    fn ideal(&self) -> Ideal {
        Ideal {
            ring: self.inner.ring().clone(),
            inner: self.inner.ideal().clone(),
        }
    }

    #[getter]
    fn e(&self) -> usize {
        self.inner.e()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn d(&self) -> u32 {
        self.inner.d()
    }

    #[getter]
    fn c(&self) -> usize {
        self.inner.c()
    }

    #[getter]
    fn span_dim(&self) -> Option<u32> {
        self.span_dim
    }

    /// Kernel of `I/mI -> J/mJ` as RREF rows of string coefficients.
    fn kernel(&self, j: &Ideal) -> PyResult<Vec<Vec<String>>> {
        let k = support::kernel_map(&self.inner, &j.inner).map_err(err)?;
        Ok(k.subspace.basis().iter().map(|v| cert::vector_to_record(v)).collect())
    }

    fn __repr__(&self) -> String {
        format!("Presentation({})", self.generators().join(", "))
    }
}

#[pyclass(module = "supportwit", frozen, from_py_object)]
#[derive(Clone)]
pub struct Certificate {
    inner: CoreCertificate,
}

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Certificate {
            inner: CoreCertificate::from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn status(&self) -> String {
        self.inner.status.to_string()
    }

    #[getter]
    fn is_witness(&self) -> bool {
        self.inner.status.is_witness()
    }

    #[getter]
    fn intersection_dim(&self) -> usize {
        self.inner.intersection.dim
    }

    #[getter]
    fn steps(&self) -> usize {
        self.inner.steps.len()
    }

    /// Running intersection dimensions after each step.
    #[getter]
    fn running_dims(&self) -> Vec<usize> {
        self.inner.steps.iter().map(|s| s.running_dim).collect()
    }

    /// Quotient ideals `J_i` as lists of generator strings.
    fn quotients(&self) -> PyResult<Vec<Vec<String>>> {
        let (ring, _) = self.inner.recorded_generators().map_err(err)?;
        self.inner
            .steps
            .iter()
            .map(|s| {
                s.ideal
                    .iter()
                    .map(|g| Ok(ring.format(&cert::poly_from_record(&ring, g).map_err(err)?)))
                    .collect()
            })
            .collect()
    }

    /// Re-checks every claim; returns the names of failed checks.
    fn verify(&self, presentation: &Presentation) -> Vec<String> {
        cert::verify(&self.inner, &presentation.inner)
            .failures()
            .map(|f| match f.step {
                Some(s) => format!("step {s}: {}", f.name),
                None => f.name.clone(),
            })
            .collect()
    }

    /// Like [`verify`] but raises `VerificationFailed` on any failure.
    fn check(&self, presentation: &Presentation) -> PyResult<()> {
        let failures = self.verify(presentation);
        if failures.is_empty() {
            Ok(())
        } else {
            Err(VerificationFailed::new_err(failures.join("; ")))
        }
    }

    fn __repr__(&self) -> String {
        format!("Certificate({}, {} steps)", self.inner.status, self.inner.steps.len())
    }
}

#[pyfunction]
fn analyze<'py>(py: Python<'py>, presentation: &Presentation) -> PyResult<Bound<'py, PyAny>> {
    let report = support::analyze(&presentation.inner);
    let value = serde_json::to_value(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

#[pyfunction]
#[pyo3(signature = (presentation, seed = 0, span_dim = None, max_attempts = 200, coeff_bound = 10))]
fn construct(
    presentation: &Presentation,
    seed: u64,
    span_dim: Option<u32>,
    max_attempts: u32,
    coeff_bound: u32,
) -> PyResult<Certificate> {
    let cfg = SearchConfig {
        seed,
        max_attempts,
        coeff_bound,
        span_dim: span_dim.or(presentation.span_dim),
    };
    Ok(Certificate {
        inner: construction::construct(&presentation.inner, &cfg).map_err(err)?,
    })
}

#[pyfunction]
fn monomial_witnesses(presentation: &Presentation) -> PyResult<Certificate> {
    Ok(Certificate {
        inner: construction::monomial_witnesses(&presentation.inner).map_err(err)?,
    })
}

/// Certificate for hand-chosen quotient ideals.
#[pyfunction]
#[pyo3(signature = (presentation, quotients, span_dim = None))]
fn manual_certificate(
    presentation: &Presentation,
    quotients: Vec<Ideal>,
    span_dim: Option<u32>,
) -> PyResult<Certificate> {
    let js: Vec<CoreIdeal> = quotients.into_iter().map(|j| j.inner).collect();
    Ok(Certificate {
        inner: cert::manual_certificate(&presentation.inner, &js, span_dim.or(presentation.span_dim)).map_err(err)?,
    })
}

/// Bundled example by name: `shortgor3`, `thomas`, `monomial4`, `truncated:d,s`.
#[pyfunction]
fn example(name: &str) -> PyResult<(Presentation, Option<Certificate>)> {
    let ex = sw::bundle::example(name).map_err(err)?;
    let p = ex.presentation().map_err(err)?;
    Ok((
        Presentation {
            inner: p,
            span_dim: ex.ring.span_dim,
        },
        ex.certificate.map(|inner| Certificate { inner }),
    ))
}

#[pymodule]
pub fn supportwit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Poly>()?;
    m.add_class::<Ideal>()?;
    m.add_class::<Presentation>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(manual_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add("SearchExhausted", m.py().get_type::<SearchExhausted>())?;
    m.add("VerificationFailed", m.py().get_type::<VerificationFailed>())?;
    Ok(())
}
