//! Python bindings: fibration documents, surgeries, invariants and the SW
//! bookkeeping predicates.

use blfkit_core::algtop::{smith_normal_form, HomologyVector, IntMatrix};
use blfkit_core::fibration::{global_monodromy, round_parities, validate, BrokenFibration};
use blfkit_core::format::{parse, serialize};
use blfkit_core::invariants::{
    broken_sum_invariants, compute_invariants, euler_characteristic, homeo_report, homology_from_presentation,
    pi1_presentation, tietze_simplify,
};
use blfkit_core::surface::{
    classify_round_parity, compose_monodromy, CurveWord, MappingClassRep, SignedTwist, TwistSign,
};
use blfkit_core::surgery::{
    blow_down, blow_up_base_point, broken_fiber_sum as core_sum, connected_sum_model, example42_family as core_ex42,
    push_to_higher_side, step_fibration as core_step, trade_negative_node, BrokenFiberSumSpec,
};
use blfkit_core::sw::{self, ChamberData, Sign};
use blfkit_core::Error;
use pyo3::exceptions::{PyNotImplementedError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn word(text: &str) -> PyResult<CurveWord> {
    CurveWord::parse(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn rows(m: &IntMatrix) -> PyResult<Vec<Vec<i64>>> {
    m.to_i64_rows().ok_or_else(|| PyValueError::new_err("matrix entry does not fit in i64"))
}

fn mapping_rows(m: &MappingClassRep) -> PyResult<Vec<Vec<i64>>> {
    rows(m.matrix().ok_or_else(|| PyValueError::new_err("genus-0 mapping class has no matrix"))?)
}

fn sign(s: &str) -> PyResult<Sign> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(PyValueError::new_err(format!("expected '+' or '-', got {s:?}"))),
    }
}

/// A broken Lefschetz fibration given by its chain of levels and rounds.
#[pyclass(name = "BrokenFibration", module = "blfkit", frozen)]
struct PyFibration(BrokenFibration);

#[pymethods]
impl PyFibration {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse(text).map(Self).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::parse(&text)
    }

    fn to_text(&self) -> String {
        serialize(&self.0)
    }

    fn __str__(&self) -> String {
        self.to_text()
    }

    fn __repr__(&self) -> String {
        let genera: Vec<String> = self.0.levels().iter().map(|l| l.genus().to_string()).collect();
        format!("BrokenFibration(genera=[{}], rounds={})", genera.join(", "), self.0.rounds().len())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    #[getter]
    fn genera(&self) -> Vec<usize> {
        self.0.levels().iter().map(|l| l.genus()).collect()
    }

    #[getter]
    fn round_count(&self) -> usize {
        self.0.rounds().len()
    }

    #[getter]
    fn cycle_count(&self) -> usize {
        self.0.cycle_count()
    }

    #[getter]
    fn sections(&self) -> Vec<i64> {
        self.0.sections().to_vec()
    }

    #[getter]
    fn label(&self) -> Option<String> {
        self.0.declared().label.clone()
    }

    /// `(violations, warnings)` as text.
    fn validate(&self) -> (Vec<String>, Vec<String>) {
        let r = validate(&self.0);
        (r.violations.iter().map(|v| v.to_string()).collect(), r.warnings)
    }

    fn is_valid(&self) -> bool {
        validate(&self.0).is_ok()
    }

    fn euler_characteristic(&self) -> PyResult<i64> {
        euler_characteristic(&self.0).map_err(py_err)
    }

    fn signature(&self) -> Option<i64> {
        self.0.signature()
    }

    /// Invariant record as ordered `(key, value)` pairs.
    fn invariants(&self) -> PyResult<Vec<(String, String)>> {
        let r = compute_invariants(&self.0).map_err(py_err)?;
        Ok(r.to_key_value()
            .lines()
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect())
    }

    fn report(&self) -> PyResult<String> {
        Ok(homeo_report(&compute_invariants(&self.0).map_err(py_err)?))
    }

    fn parities(&self) -> PyResult<Vec<String>> {
        Ok(round_parities(&self.0).map_err(py_err)?.iter().map(|s| s.to_string()).collect())
    }

    /// Homological monodromy of each level; `None` on genus-0 levels.
    fn monodromy(&self) -> PyResult<Vec<Option<Vec<Vec<i64>>>>> {
        self.0
            .levels()
            .iter()
            .map(|l| {
                let m = global_monodromy(l).map_err(py_err)?;
                m.matrix().map(rows).transpose()
            })
            .collect()
    }

    /// First homology of the total space, from the simplified presentation.
    #[pyo3(signature = (relators = Vec::new(), assume_section = false))]
    fn h1(&self, relators: Vec<String>, assume_section: bool) -> PyResult<String> {
        let extra = relators.iter().map(|r| word(r)).collect::<PyResult<Vec<_>>>()?;
        let p = pi1_presentation(&self.0, &extra, assume_section).map_err(py_err)?;
        Ok(homology_from_presentation(&tietze_simplify(&p)).to_string())
    }

    fn push_to_higher_side(&self) -> PyResult<Self> {
        push_to_higher_side(&self.0).map(Self).map_err(py_err)
    }

    fn trade(&self, index: usize) -> PyResult<Self> {
        trade_negative_node(&self.0, index).map(Self).map_err(py_err)
    }

    fn blow_down(&self, section: usize) -> PyResult<Self> {
        blow_down(&self.0, section).map(Self).map_err(py_err)
    }

    fn blow_up(&self) -> PyResult<Self> {
        blow_up_base_point(&self.0).map(Self).map_err(py_err)
    }
}

#[pyfunction]
#[pyo3(signature = (left, g1, right, g2, gammas))]
fn broken_fiber_sum(
    left: &PyFibration,
    g1: usize,
    right: &PyFibration,
    g2: usize,
    gammas: Vec<String>,
) -> PyResult<PyFibration> {
    let gammas = gammas.iter().map(|g| word(g)).collect::<PyResult<Vec<_>>>()?;
    let spec = BrokenFiberSumSpec::new(left.0.clone(), g1, right.0.clone(), g2, gammas);
    core_sum(&spec).map(PyFibration).map_err(py_err)
}

#[pyfunction]
fn connected_sum(a: &PyFibration, b: &PyFibration) -> PyResult<PyFibration> {
    connected_sum_model(&a.0, &b.0).map(PyFibration).map_err(py_err)
}

#[pyfunction]
fn step_fibration(genus: usize, k: i64) -> PyFibration {
    PyFibration(core_step(genus, k))
}

#[pyfunction]
fn example42_family(k: i64) -> PyFibration {
    PyFibration(core_ex42(k))
}

/// `(e, sigma, chi_h)` of a broken sum; `chi_h` as a float.
#[pyfunction]
#[pyo3(signature = (left, right, allow_genus_zero = false))]
fn broken_sum_totals(
    left: (i64, i64, i64),
    right: (i64, i64, i64),
    allow_genus_zero: bool,
) -> PyResult<(i64, i64, f64)> {
    let (e, s, chi) = broken_sum_invariants(left, right, allow_genus_zero).map_err(py_err)?;
    Ok((e, s, *chi.numer() as f64 / *chi.denom() as f64))
}

#[pyfunction]
fn dehn_twist(coords: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
    twist_product(vec![(coords, 1)])
}

/// Product of signed twists, left to right.
#[pyfunction]
fn twist_product(twists: Vec<(Vec<i64>, i64)>) -> PyResult<Vec<Vec<i64>>> {
    let genus = twists.first().map_or(0, |(c, _)| c.len() / 2);
    let ts = twists
        .iter()
        .map(|(c, s)| Ok(SignedTwist::new(HomologyVector::from_i64(c), TwistSign::from_i64(*s).map_err(py_err)?)))
        .collect::<PyResult<Vec<_>>>()?;
    mapping_rows(&compose_monodromy(&ts, genus).map_err(py_err)?)
}

#[pyfunction]
fn round_parity(matrix: Vec<Vec<i64>>, gamma: Vec<i64>) -> PyResult<String> {
    let genus = gamma.len() / 2;
    let m = IntMatrix::from_rows(&matrix).map_err(py_err)?;
    let mu = MappingClassRep::from_matrix(m, genus).map_err(py_err)?;
    Ok(classify_round_parity(&mu, &HomologyVector::from_i64(&gamma)).map_err(py_err)?.to_string())
}

#[pyfunction]
fn invariant_factors(matrix: Vec<Vec<i64>>) -> PyResult<Vec<i64>> {
    let m = IntMatrix::from_rows(&matrix).map_err(py_err)?;
    smith_normal_form(&m)
        .invariant_factors()
        .iter()
        .map(|x| i64::try_from(x).map_err(|_| PyValueError::new_err("factor does not fit in i64")))
        .collect()
}

#[pyfunction]
fn abelianize(text: &str, genus: usize) -> PyResult<Vec<i64>> {
    let v = word(text)?.abelianize(genus).map_err(py_err)?;
    v.to_i64().ok_or_else(|| PyValueError::new_err("coordinate does not fit in i64"))
}

#[pyfunction]
fn wall_crossing(value: i64, d: i64, h: &str, h_prime: &str) -> PyResult<i64> {
    sw::wall_crossing(value, d, ChamberData::new(sign(h)?, sign(h_prime)?)).map_err(py_err)
}

#[pyfunction]
fn adjunction_check(genus: i64, square: i64, pairing: i64) -> PyResult<bool> {
    sw::adjunction_check(genus, square, pairing).map_err(py_err)
}

#[pyfunction]
fn simple_type_check(square: i64, e: i64, sigma: i64) -> bool {
    sw::simple_type_check(square, e, sigma)
}

#[pyfunction]
fn sw_symmetry(value: i64, e: i64, sigma: i64) -> PyResult<i64> {
    sw::sw_symmetry(value, e, sigma).map_err(py_err)
}

#[pyfunction]
fn section_constraint(b_plus: i64, sw_nontrivial: bool, k: i64) -> String {
    sw::section_constraint(b_plus, sw_nontrivial, k).to_string()
}

/// `(steps, sw_vanishes)`.
#[pyfunction]
fn vanishing_pipeline(torus_square: i64, b_plus: i64) -> PyResult<(Vec<String>, bool)> {
    let t = sw::vanishing_pipeline(torus_square, b_plus).map_err(py_err)?;
    Ok((t.steps, t.sw_vanishes))
}

#[pymodule]
fn blfkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFibration>()?;
    m.add_function(wrap_pyfunction!(broken_fiber_sum, m)?)?;
    m.add_function(wrap_pyfunction!(connected_sum, m)?)?;
    m.add_function(wrap_pyfunction!(step_fibration, m)?)?;
    m.add_function(wrap_pyfunction!(example42_family, m)?)?;
    m.add_function(wrap_pyfunction!(broken_sum_totals, m)?)?;
    m.add_function(wrap_pyfunction!(dehn_twist, m)?)?;
    m.add_function(wrap_pyfunction!(twist_product, m)?)?;
    m.add_function(wrap_pyfunction!(round_parity, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_factors, m)?)?;
    m.add_function(wrap_pyfunction!(abelianize, m)?)?;
    m.add_function(wrap_pyfunction!(wall_crossing, m)?)?;
    m.add_function(wrap_pyfunction!(adjunction_check, m)?)?;
    m.add_function(wrap_pyfunction!(simple_type_check, m)?)?;
    m.add_function(wrap_pyfunction!(sw_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(section_constraint, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_pipeline, m)?)?;
    Ok(())
}
