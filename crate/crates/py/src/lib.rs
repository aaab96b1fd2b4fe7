//! Python bindings for the `weylgate` library.
//!
//! Group elements cross the boundary as 0-based image lists, subgroups as
//! sorted element-index lists and partitions as canonical label lists.

use pyo3::exceptions::{PyNotImplementedError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use weylgate::building::{self, FlagModel};
use weylgate::coxeter::{self, GroupElement, Subgroup};
use weylgate::morphism::{self, ChamberMap};
use weylgate::partition::Partition;
use weylgate::scenario::{self, MapSpec};
use weylgate::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(e.to_string()),
        Error::Invariant(_) | Error::Structural(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite Coxeter-type group realized as a permutation group.
#[pyclass(name = "CoxeterGroup", module = "weylgate", frozen)]
struct PyCoxeterGroup {
    inner: coxeter::CoxeterGroup,
}

#[pymethods]
impl PyCoxeterGroup {
    /// `S_n` with adjacent transpositions as generators.
    #[staticmethod]
    fn symmetric(n: usize) -> PyResult<Self> {
        coxeter::CoxeterGroup::symmetric(n).map(|inner| Self { inner }).map_err(to_py)
    }

    /// `(Z/2)^r` with its flip `w_1 ⋯ w_r`.
    #[staticmethod]
    fn involution_product(r: usize) -> PyResult<Self> {
        coxeter::CoxeterGroup::involution_product(r)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    /// Parses `S<n>` or `Z2^<r>`.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Self> {
        coxeter::CoxeterGroup::from_spec(spec).map(|inner| Self { inner }).map_err(to_py)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn flip(&self) -> Option<usize> {
        self.inner.flip()
    }

    #[getter]
    fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        self.inner.coxeter_matrix().to_vec()
    }

    fn elements(&self) -> Vec<Vec<usize>> {
        self.inner.elements().iter().map(GroupElement::images).collect()
    }

    /// Cycle notation of element `i`.
    fn element_str(&self, i: usize) -> PyResult<String> {
        self.inner
            .elements()
            .get(i)
            .map(ToString::to_string)
            .ok_or_else(|| PyValueError::new_err("element index out of range"))
    }

    fn index_of(&self, images: Vec<usize>) -> PyResult<Option<usize>> {
        let e = GroupElement::from_images(images).map_err(to_py)?;
        Ok(self.inner.index_of(&e))
    }

    fn longest_element(&self) -> PyResult<Vec<usize>> {
        self.inner.longest_element().map(|e| e.images()).map_err(to_py)
    }

    fn is_irreducible(&self) -> bool {
        self.inner.is_irreducible()
    }

    fn is_normal(&self, members: Vec<usize>) -> PyResult<bool> {
        let v = Subgroup::from_members(&self.inner, members).map_err(to_py)?;
        self.inner.is_normal(&v).map_err(to_py)
    }

    /// All subgroups as member-index lists, in canonical order.
    fn subgroups(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(coxeter::enumerate_subgroups(&self.inner)
            .map_err(to_py)?
            .into_iter()
            .map(|s| s.members().to_vec())
            .collect())
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("CoxeterGroup({}, order={})", self.inner.family(), self.inner.order())
    }
}

/// Homomorphisms `source → target` as dicts with `images` and `kernel`.
#[pyfunction]
#[pyo3(signature = (source, target, pin=None, injective_only=false))]
fn homomorphisms<'py>(
    py: Python<'py>,
    source: &PyCoxeterGroup,
    target: &PyCoxeterGroup,
    pin: Option<(usize, usize)>,
    injective_only: bool,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let homs = coxeter::enumerate_homomorphisms(&source.inner, &target.inner, pin, injective_only)
        .map_err(to_py)?;
    homs.iter()
        .map(|h| {
            let d = PyDict::new(py);
            d.set_item("images", h.images().to_vec())?;
            d.set_item("kernel", h.kernel().members().to_vec())?;
            d.set_item("injective", h.is_injective())?;
            Ok(d)
        })
        .collect()
}

/// Complete flags of `F_q^n` with `S_n` acting on opposite pairs.
#[pyclass(name = "FlagModel", module = "weylgate", frozen)]
struct PyFlagModel {
    inner: FlagModel,
}

impl PyFlagModel {
    fn subgroup(&self, members: Vec<usize>) -> PyResult<Subgroup> {
        Subgroup::from_members(self.inner.group(), members).map_err(to_py)
    }

    fn chamber_checked(&self, i: usize) -> PyResult<&building::Chamber> {
        self.inner
            .building()
            .chambers()
            .get(i)
            .ok_or_else(|| PyValueError::new_err("chamber index out of range"))
    }
}

#[pymethods]
impl PyFlagModel {
    #[new]
    fn new(n: usize, q: u32) -> PyResult<Self> {
        FlagModel::new(n, q).map(|inner| Self { inner }).map_err(to_py)
    }

    #[getter]
    fn chamber_count(&self) -> usize {
        self.inner.building().len()
    }

    #[getter]
    fn opposite_pair_count(&self) -> usize {
        self.inner.opposite_pairs().len()
    }

    fn group(&self) -> PyCoxeterGroup {
        PyCoxeterGroup {
            inner: self.inner.group().clone(),
        }
    }

    fn opposite_pairs(&self) -> Vec<(usize, usize)> {
        self.inner.opposite_pairs().to_vec()
    }

    fn chamber_str(&self, i: usize) -> PyResult<String> {
        Ok(self.chamber_checked(i)?.to_string())
    }

    /// Relative position of chambers `i`, `j` as a 0-based image list.
    fn relative_position(&self, i: usize, j: usize) -> PyResult<Vec<usize>> {
        let (e, f) = (self.chamber_checked(i)?, self.chamber_checked(j)?);
        building::relative_position(e, f).map(|w| w.0.images()).map_err(to_py)
    }

    fn is_opposite(&self, i: usize, j: usize) -> bool {
        self.inner.is_opposite_index(i, j)
    }

    /// `w·(E, F)` for an opposite pair given by chamber indices.
    fn weyl_action(&self, w: Vec<usize>, i: usize, j: usize) -> PyResult<(usize, usize)> {
        let w = GroupElement::from_images(w).map_err(to_py)?;
        let (e, f) = (self.chamber_checked(i)?, self.chamber_checked(j)?);
        let (e2, f2) = building::weyl_action(&w, (e, f)).map_err(to_py)?;
        let b = self.inner.building();
        Ok((b.index_of(&e2).unwrap(), b.index_of(&f2).unwrap()))
    }

    fn diagonal_orbit_count(&self) -> PyResult<usize> {
        self.inner.building().diagonal_orbit_count().map_err(to_py)
    }

    fn partial_flag_quotient(&self, face_type: Vec<usize>) -> PyResult<Vec<usize>> {
        self.inner
            .building()
            .partial_flag_quotient(&face_type)
            .map(|p| p.labels().to_vec())
            .map_err(to_py)
    }

    /// `W_p` for a partition given by labels.
    fn stabilizer_subgroup(&self, labels: Vec<usize>) -> PyResult<Vec<usize>> {
        let p = Partition::from_labels(labels);
        self.inner
            .action()
            .stabilizer_subgroup(&p)
            .map(|s| s.members().to_vec())
            .map_err(to_py)
    }

    /// `p^V` for a subgroup given by member indices.
    fn finest_invariant_quotient(&self, members: Vec<usize>) -> PyResult<Vec<usize>> {
        let v = self.subgroup(members)?;
        self.inner
            .action()
            .finest_invariant_quotient(&v)
            .map(|p| p.labels().to_vec())
            .map_err(to_py)
    }

    fn check_adjunction(&self, members: Vec<usize>, labels: Vec<usize>) -> PyResult<bool> {
        let v = self.subgroup(members)?;
        self.inner
            .action()
            .check_adjunction(&v, &Partition::from_labels(labels))
            .map_err(to_py)
    }

    /// Closed subgroups, closed quotients and their pairing.
    fn closed_lattice<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let lattice = self.inner.action().enumerate_closed().map_err(to_py)?;
        let d = PyDict::new(py);
        let subgroups: Vec<Vec<usize>> = lattice.subgroups().iter().map(|s| s.members().to_vec()).collect();
        let quotients: Vec<Vec<usize>> = lattice.quotients().iter().map(|p| p.labels().to_vec()).collect();
        d.set_item("subgroups", subgroups)?;
        d.set_item("quotients", quotients)?;
        d.set_item("pairing", lattice.pairing().to_vec())?;
        d.set_item("subgroup_hasse", lattice.subgroup_hasse().to_vec())?;
        d.set_item("quotient_hasse", lattice.quotient_hasse().to_vec())?;
        Ok(d)
    }

    /// Runs the morphism checks on a chamber self-map given by images.
    fn check_map<'py>(&self, py: Python<'py>, images: Vec<usize>) -> PyResult<Bound<'py, PyDict>> {
        let m = &self.inner;
        let phi = ChamberMap::new(m, m, images).map_err(to_py)?;
        let opposition = morphism::check_opposition_preserving(m, m, &phi).map_err(to_py)?;
        let equivariant = opposition && morphism::check_w_equivariance(m, m, &phi).map_err(to_py)?;
        let descends = equivariant && morphism::induced_face_maps(m, m, &phi).is_ok();
        let d = PyDict::new(py);
        d.set_item("opposition_preserving", opposition)?;
        d.set_item("w_equivariant", equivariant)?;
        d.set_item("descends", descends)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let b = self.inner.building();
        format!("FlagModel(n={}, q={})", b.ambient_dim(), b.modulus())
    }
}

/// JSON report of the flag-building scenario.
#[pyfunction]
#[pyo3(signature = (n, q, seed=weylgate::DEFAULT_SEED))]
fn flag_building(n: usize, q: u32, seed: u64) -> PyResult<String> {
    scenario::run_flag_building(n, q, seed).map(|r| r.to_json()).map_err(to_py)
}

/// JSON report of the product scenario.
#[pyfunction]
#[pyo3(signature = (m1, m2, seed=weylgate::DEFAULT_SEED))]
fn product(m1: usize, m2: usize, seed: u64) -> PyResult<String> {
    scenario::run_product(m1, m2, seed).map(|r| r.to_json()).map_err(to_py)
}

/// JSON report of pinned homomorphisms between two Weyl groups.
#[pyfunction]
fn obstruction(source: &str, target: &str) -> PyResult<String> {
    scenario::run_obstruction(source, target).map(|r| r.to_json()).map_err(to_py)
}

/// JSON report of the morphism checks for a map spec.
#[pyfunction]
#[pyo3(signature = (n, q, map, seed=weylgate::DEFAULT_SEED))]
fn embed_check(n: usize, q: u32, map: &str, seed: u64) -> PyResult<String> {
    let spec = MapSpec::parse(map).map_err(to_py)?;
    scenario::run_embed_check(n, q, &spec, seed).map(|r| r.to_json()).map_err(to_py)
}

#[pymodule(name = "weylgate")]
fn weylgate_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoxeterGroup>()?;
    m.add_class::<PyFlagModel>()?;
    m.add_function(wrap_pyfunction!(homomorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(flag_building, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(embed_check, m)?)?;
    m.add("DEFAULT_SEED", weylgate::DEFAULT_SEED)?;
    Ok(())
}
