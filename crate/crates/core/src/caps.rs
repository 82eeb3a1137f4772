/// Size caps for the exact routines. Exceeding a cap is a reported error,
/// never a silent approximation.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Largest component size accepted for isomorphism / family matching.
    pub max_component_size: usize,
    /// Largest component the exact MEDS solver accepts.
    pub exact_solver_cap: usize,
    /// Largest graph for which all minimum edge dominating sets are enumerated.
    pub enumeration_cap: usize,
    /// Largest whole instance (modulator included) the decision oracle accepts.
    pub oracle_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_component_size: 12,
            exact_solver_cap: 24,
            enumeration_cap: 14,
            oracle_cap: 22,
        }
    }
}

impl Caps {
    pub fn check(&self, what: &'static str, limit: usize, actual: usize) -> crate::Result<()> {
        if actual > limit {
            Err(crate::EdsError::CapExceeded {
                what,
                limit,
                actual,
            })
        } else {
            Ok(())
        }
    }
}
