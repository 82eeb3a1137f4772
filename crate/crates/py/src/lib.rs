use pyo3::prelude::*;

#[pymodule]
fn eds_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
