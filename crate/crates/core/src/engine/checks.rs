//! Structural checks run over catalogued modules.

use crate::ar::{classify_position, Position};
use crate::config::Caps;
use crate::error::Result;
use crate::kronecker::{is_indecomposable, KroneckerModule};

#[derive(Clone, Debug, Default)]
pub struct FactorCheck {
    /// Indecomposable regular quotients examined.
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Every indecomposable regular quotient `M/S` over the submodule lattice of
/// `m` must contain an indecomposable `(1,1)` submodule.
pub fn regular_factor_check(m: &KroneckerModule, caps: &Caps) -> Result<FactorCheck> {
    let mut out = FactorCheck::default();
    for s in m.enumerate_submodules(caps.submodule_length)? {
        if s.len() == m.len() {
            continue;
        }
        let quotient = m.quotient(&s)?;
        let dim = quotient.dim();
        if classify_position(dim, m.n() as i64, dim.length()) != Position::Regular
            || !is_indecomposable(&quotient, caps)?
        {
            continue;
        }
        out.checked += 1;
        if !quotient.has_11_submodule() {
            out.violations.push(format!("quotient {} of {} has no (1,1) submodule: {}", dim, m.dim(), quotient.to_json()));
        }
    }
    Ok(out)
}
