use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fuzzy_horn::algebra::Algebra;
use fuzzy_horn::herbrand::{h_structure_of_model, least_h_model};
use fuzzy_horn::morphisms::{canonical_free_map, check_homomorphism, is_reduced, Reduced, StructureMap};
use fuzzy_horn::repro::{run_example, Example};
use fuzzy_horn::saturation::{build_term_structure, saturate, Derivation, SaturationConfig, SaturationResult};
use fuzzy_horn::semantics::{eval_formula, is_model, FuzzyStructure, ModelCheck, TruthOutcome, VarEvaluation};
use fuzzy_horn::syntax::{classify_horn, parse_formula, Theory as CoreTheory};

create_exception!(fuzzy_horn_py, FuzzyHornError, PyValueError);

fn err(e: impl std::fmt::Display) -> PyErr {
    FuzzyHornError::new_err(e.to_string())
}

fn config(depth: usize, frozen: usize) -> SaturationConfig {
    SaturationConfig::default().with_depth(depth).with_frozen(frozen)
}

fn assignment(m: &FuzzyStructure, assign: Option<BTreeMap<String, String>>) -> PyResult<VarEvaluation> {
    let mut v = VarEvaluation::new();
    for (var, name) in assign.unwrap_or_default() {
        let d = m
            .element(&name)
            .ok_or_else(|| err(format!("`{name}` is not a domain element")))?;
        v.insert(var, d);
    }
    Ok(v)
}

/// A theory file: signature declarations followed by one formula per line.
#[pyclass]
struct Theory {
    inner: CoreTheory,
}

#[pymethods]
impl Theory {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        CoreTheory::parse(text).map(|inner| Theory { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(err)?;
        Self::new(&text)
    }

    fn formulas(&self) -> Vec<String> {
        self.inner.formulas().iter().map(ToString::to_string).collect()
    }

    /// `(line, formula, primary tag)` for each axiom.
    fn classify(&self) -> Vec<(usize, String, String)> {
        self.inner
            .axioms
            .iter()
            .map(|a| {
                (
                    a.line,
                    a.formula.to_string(),
                    classify_horn(&a.formula).primary_tag().name().to_string(),
                )
            })
            .collect()
    }

    fn is_horn(&self) -> bool {
        self.inner.axioms.iter().all(|a| classify_horn(&a.formula).is_clause())
    }

    #[pyo3(signature = (depth = 2, frozen = 1))]
    fn saturate(&self, depth: usize, frozen: usize) -> PyResult<Saturation> {
        saturate(&self.inner.formulas(), &self.inner.signature, &config(depth, frozen))
            .map(|inner| Saturation { inner })
            .map_err(err)
    }

    /// Atoms of the least H-model and whether the fixpoint is exact.
    #[pyo3(signature = (depth = 2))]
    fn least_h_model(&self, depth: usize) -> PyResult<(Vec<String>, bool)> {
        let (h, complete) =
            least_h_model(&self.inner.formulas(), &self.inner.signature, &config(depth, 0)).map_err(err)?;
        Ok((h.atoms.iter().map(ToString::to_string).collect(), complete))
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }
}

#[pyclass]
struct Saturation {
    inner: SaturationResult,
}

#[pymethods]
impl Saturation {
    #[getter]
    fn consistent(&self) -> bool {
        self.inner.is_consistent()
    }

    #[getter]
    fn complete(&self) -> bool {
        self.inner.complete
    }

    /// `(representative, members)` for each congruence class.
    fn classes(&self) -> Vec<(String, Vec<String>)> {
        self.inner
            .classes()
            .into_iter()
            .map(|c| {
                (
                    c.representative.to_string(),
                    c.members.iter().map(ToString::to_string).collect(),
                )
            })
            .collect()
    }

    fn atoms(&self) -> Vec<String> {
        self.inner.atoms().iter().map(ToString::to_string).collect()
    }

    /// `True`, `False`, or `None` when the depth bound leaves it open.
    fn derives(&self, atom: &str) -> PyResult<Option<bool>> {
        let phi = parse_formula(atom, &self.inner.signature).map_err(err)?;
        Ok(match self.inner.derives_atom(&phi).map_err(err)? {
            Derivation::Yes => Some(true),
            Derivation::No => Some(false),
            Derivation::Unknown => None,
        })
    }

    fn term_structure(&self) -> PyResult<Structure> {
        build_term_structure(&self.inner)
            .map(|inner| Structure { inner })
            .map_err(err)
    }

    /// The map text of the canonical homomorphism into `target`.
    #[pyo3(signature = (target, assign = None))]
    fn free_map(&self, target: &Structure, assign: Option<BTreeMap<String, String>>) -> PyResult<String> {
        let v = assignment(&target.inner, assign)?;
        let map = canonical_free_map(&self.inner, &target.inner, &v).map_err(err)?;
        let src = build_term_structure(&self.inner).map_err(err)?;
        Ok(map.to_text(&src, &target.inner))
    }
}

#[pyclass]
struct Structure {
    inner: FuzzyStructure,
}

#[pymethods]
impl Structure {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        FuzzyStructure::parse(text, None)
            .map(|inner| Structure { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let p = std::path::Path::new(path);
        let text = std::fs::read_to_string(p).map_err(err)?;
        FuzzyStructure::parse(&text, p.parent())
            .map(|inner| Structure { inner })
            .map_err(err)
    }

    #[getter]
    fn algebra(&self) -> String {
        self.inner.algebra.name()
    }

    #[getter]
    fn domain(&self) -> Vec<String> {
        self.inner.domain.clone()
    }

    /// Truth value as text: a value, `undefined`, or `unknown at depth k`.
    #[pyo3(signature = (formula, assign = None, decimal = false))]
    fn eval(&self, formula: &str, assign: Option<BTreeMap<String, String>>, decimal: bool) -> PyResult<String> {
        let phi = parse_formula(formula, &self.inner.signature).map_err(err)?;
        let v = assignment(&self.inner, assign)?;
        Ok(match eval_formula(&self.inner, &v, &phi).map_err(err)? {
            TruthOutcome::Value(x) => self.inner.algebra.format_value(&x, decimal),
            other => other.to_string(),
        })
    }

    /// `(True, None)` or `(False, failing formula)`; an unsettled check
    /// raises.
    fn is_model(&self, theory: &Theory) -> PyResult<(bool, Option<String>)> {
        let phis = theory.inner.formulas();
        match is_model(&self.inner, &phis).map_err(err)? {
            ModelCheck::Yes => Ok((true, None)),
            ModelCheck::No { formula, .. } => Ok((false, Some(phis[formula].to_string()))),
            ModelCheck::Unknown { formula, depth, .. } => {
                Err(err(format!("{} is unknown at depth {depth}", phis[formula])))
            }
        }
    }

    fn is_reduced(&self) -> PyResult<bool> {
        Ok(is_reduced(&self.inner).map_err(err)? == Reduced::Yes)
    }

    /// Atoms taking the top value, over ground terms up to `depth`.
    #[pyo3(signature = (depth = 2))]
    fn h_structure(&self, depth: usize) -> PyResult<Vec<String>> {
        let h = h_structure_of_model(&self.inner, depth, true).map_err(err)?;
        Ok(h.atoms.iter().map(ToString::to_string).collect())
    }

    fn to_text(&self) -> PyResult<String> {
        self.inner.to_text().map_err(err)
    }
}

/// Checks the map given in map-file text; returns the report as a dict of
/// strings.
#[pyfunction]
fn hom_check(src: &Structure, dst: &Structure, map: &str) -> PyResult<BTreeMap<String, String>> {
    let m = StructureMap::parse(map, &src.inner, &dst.inner).map_err(err)?;
    let report = check_homomorphism(&src.inner, &dst.inner, &m).map_err(err)?;
    Ok(report
        .to_machine()
        .lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect())
}

#[pyfunction]
fn conj(algebra: &str, a: &str, b: &str) -> PyResult<String> {
    binary(algebra, a, b, Algebra::conj)
}

#[pyfunction]
fn residuum(algebra: &str, a: &str, b: &str) -> PyResult<String> {
    binary(algebra, a, b, Algebra::residuum)
}

type Op = fn(
    &Algebra,
    &fuzzy_horn::algebra::TruthValue,
    &fuzzy_horn::algebra::TruthValue,
) -> Result<fuzzy_horn::algebra::TruthValue, fuzzy_horn::algebra::AlgebraError>;

fn binary(algebra: &str, a: &str, b: &str, op: Op) -> PyResult<String> {
    let alg: Algebra = algebra.parse().map_err(err)?;
    let x = alg.parse_value(a).map_err(err)?;
    let y = alg.parse_value(b).map_err(err)?;
    Ok(alg.format_value(&op(&alg, &x, &y).map_err(err)?, false))
}

/// Runs a worked example; returns whether every check matched and the
/// report text.
#[pyfunction]
fn repro(id: &str) -> PyResult<(bool, String)> {
    let example: Example = id.parse().map_err(err)?;
    let report = run_example(example).map_err(err)?;
    Ok((report.all_match(), report.to_string()))
}

#[pyfunction]
fn examples() -> Vec<&'static str> {
    Example::ALL.iter().map(|e| e.id()).collect()
}

#[pymodule]
fn fuzzy_horn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FuzzyHornError", m.py().get_type::<FuzzyHornError>())?;
    m.add_class::<Theory>()?;
    m.add_class::<Saturation>()?;
    m.add_class::<Structure>()?;
    m.add_function(wrap_pyfunction!(hom_check, m)?)?;
    m.add_function(wrap_pyfunction!(conj, m)?)?;
    m.add_function(wrap_pyfunction!(residuum, m)?)?;
    m.add_function(wrap_pyfunction!(repro, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    Ok(())
}
