//! The take-off measures `I_r = μ(P_r)`.

use serde::Serialize;

use crate::ar::preprojective_dims;
use crate::config::Caps;
use crate::engine::measure::gr_measure;
use crate::engine::scan::Catalog;
use crate::error::{Error, Result};
use crate::kronecker::{is_isomorphic, p_module};
use crate::linalg::Fq;
use crate::order::{find_between, GrMeasure};

#[derive(Clone, Debug, Serialize)]
pub struct TakeoffReport {
    pub n: usize,
    pub q: u32,
    pub measures: Vec<GrMeasure>,
    /// Longest module in the cross-checked catalog, if any.
    pub catalog_length: Option<usize>,
    pub violations: Vec<String>,
}

impl TakeoffReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `I_1 = {1}` and `I_r = μ(P_r)` for `r = 2..=depth`, with the recursive
/// shape `I_r = I_{r-1} ∪ {|P_r|}` and strict ascent checked. With a catalog,
/// also checks that nothing realized lies strictly between consecutive
/// `I_r`, and that every realization of `I_r` is isomorphic to `P_r`.
pub fn takeoff_sequence(n: usize, q: u32, depth: usize, catalog: Option<&Catalog>, caps: &Caps) -> Result<TakeoffReport> {
    if depth == 0 {
        return Err(Error::Precondition("take-off depth must be at least 1".into()));
    }
    let field = Fq::new(q)?;
    if let Some(cat) = catalog {
        if (cat.n, cat.q) != (n, q) {
            return Err(Error::ParameterMismatch("catalog is over a different quiver or field".into()));
        }
    }
    let longest = preprojective_dims(n as i64, depth)[depth - 1].length() as usize;
    if longest > caps.submodule_length {
        return Err(Error::CapExceeded(format!("|P_{depth}| = {longest} exceeds the lattice cap")));
    }
    let mut measures = vec![GrMeasure::from_elements(vec![1])?];
    let mut violations = Vec::new();
    let realized = catalog.map(|c| c.measures());
    for r in 2..=depth {
        let p = p_module(r, n, field)?;
        let mu = gr_measure(&p, caps)?;
        let prev = measures.last().expect("nonempty").clone();
        match prev.extend(p.len() as u32) {
            Ok(expected) if expected == mu => {}
            _ => violations.push(format!("I_{r} = {mu} is not I_{} = {prev} extended by |P_{r}| = {}", r - 1, p.len())),
        }
        if prev >= mu {
            violations.push(format!("I_{} = {prev} is not below I_{r} = {mu}", r - 1));
        }
        if let (Some(cat), Some(set)) = (catalog, &realized) {
            if prev < mu {
                if let Some(between) = find_between(&prev, &mu, set)? {
                    violations.push(format!("{between} is realized strictly between I_{} and I_{r}", r - 1));
                }
            }
            for rec in cat.records_with(&mu) {
                if rec.dim != p.dim() || rec.iso_count != 1 {
                    violations.push(format!(
                        "{mu} realized at {} by {} classes ({})",
                        rec.dim, rec.iso_count, rec.provenance
                    ));
                }
                for rep in &rec.representatives {
                    if rep.dim() == p.dim() && !is_isomorphic(rep, &p, caps)? {
                        violations.push(format!("{mu} realized by a module not isomorphic to P_{r}"));
                    }
                }
            }
        }
        measures.push(mu);
    }
    Ok(TakeoffReport { n, q, measures, catalog_length: catalog.map(|c| c.max_length), violations })
}
