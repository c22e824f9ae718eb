//! Bounded search around `μ^m = {1,2,4,…,2m,2m+1}`.
//!
//! Empirical support only: the absence of a direct predecessor is a
//! statement about modules of every length, and the report records the
//! length bound and the dimension vectors that were not scanned.
//!
//! The largest catalog measure below `μ^m` can never be witnessed by the
//! catalog itself. For those, regular representatives `M` are extended by
//! `τ⁻¹M` (the shape of the next module on the ray through `M`) and the
//! extensions are offered as witnesses. They are witnesses only: their own
//! measures are not tested.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ar::Position;
use crate::config::Caps;
use crate::engine::measure::gr_measure;
use crate::engine::scan::Catalog;
use crate::error::{Error, Result};
use crate::kronecker::{is_indecomposable, tau_inverse_module, KroneckerModule};
use crate::linalg::FqMatrix;
use crate::order::{find_between, mu_lower, mu_upper, GrMeasure};

/// Random extension classes tried per representative.
const EXTENSION_TRIES: u64 = 16;

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub m: u32,
    pub n: usize,
    pub q: u32,
    pub max_length: usize,
    pub exhaustive_length: usize,
    pub realized: usize,
    /// Realized measures below `μ^m` with no witness between them and `μ^m`,
    /// neither in the catalog nor among the constructed extensions.
    pub unwitnessed: Vec<String>,
    /// `I < J (dim)`: witnesses found by extending a representative of `I`.
    pub extension_witnesses: Vec<String>,
    /// Why the extension search could not settle an unwitnessed measure.
    pub unresolved: Vec<String>,
    pub violations: Vec<String>,
    /// Dimension vectors left out of the exhaustive part of the catalog.
    pub skipped: Vec<String>,
    pub note: String,
}

impl GapReport {
    pub fn passed(&self) -> bool {
        self.unwitnessed.is_empty() && self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn gap_scan(m: u32, catalog: &Catalog, caps: &Caps) -> Result<GapReport> {
    if m == 0 || (2 * m + 1) as usize > catalog.max_length {
        return Err(Error::Precondition(format!(
            "gap scan at m = {m} needs a catalog reaching length {} (has {})",
            2 * m + 1,
            catalog.max_length
        )));
    }
    let upper = mu_upper(m);
    let lower = mu_lower(m);
    let realized = catalog.measures();
    let mut unwitnessed = Vec::new();
    let mut extension_witnesses = Vec::new();
    let mut unresolved = Vec::new();
    let mut violations = Vec::new();

    for i in realized.range(..upper.clone()) {
        if find_between(i, &upper, &realized)?.is_some() {
            continue;
        }
        match extension_witness(i, &upper, catalog, caps)? {
            Ok((j, dim)) => extension_witnesses.push(format!("{i} < {j} {dim}")),
            Err(why) => {
                unwitnessed.push(i.to_string());
                unresolved.push(format!("{i}: {why}"));
            }
        }
    }
    for rec in &catalog.records {
        let i = &rec.measure;
        let inside = lower < *i && *i < upper;
        if inside && (rec.position != Position::Regular || rec.dim.length() <= (2 * m + 1) as i64) {
            violations.push(format!(
                "{i} between {lower} and {upper} realized at {} ({}, {})",
                rec.dim, rec.position, rec.provenance
            ));
        }
        if *i > upper && !(1..=m).any(|t| i.starts_with(&mu_upper(t))) {
            violations.push(format!(
                "{i} above {upper} at {} ({}) starts with no μ^t, t ≤ {m}",
                rec.dim, rec.provenance
            ));
        }
    }
    violations.sort();
    violations.dedup();
    Ok(GapReport {
        m,
        n: catalog.n,
        q: catalog.q,
        max_length: catalog.max_length,
        exhaustive_length: catalog.exhaustive_length,
        realized: realized.len(),
        unwitnessed,
        extension_witnesses,
        unresolved,
        violations,
        skipped: catalog.skipped.iter().map(|s| s.dim.to_string()).collect(),
        note: format!(
            "empirical support only: exhaustive to length {}, named families to length {}",
            catalog.exhaustive_length, catalog.max_length
        ),
    })
}

/// Searches extensions `0 → M → E → τ⁻¹M → 0` of regular representatives
/// `M` of `lower` for an indecomposable `E` with `lower < μ(E) < upper`.
/// The inner `Err` explains a failed search.
fn extension_witness(
    lower: &GrMeasure,
    upper: &GrMeasure,
    catalog: &Catalog,
    caps: &Caps,
) -> Result<std::result::Result<(GrMeasure, String), String>> {
    let mut too_long = Vec::new();
    let mut tried = 0;
    for rec in catalog.records_with(lower).filter(|r| r.position == Position::Regular) {
        for x in &rec.representatives {
            let t = match tau_inverse_module(x, caps) {
                Ok(t) => t,
                Err(Error::CapExceeded(_) | Error::Undecided(_)) => continue,
                Err(e) => return Err(e),
            };
            let len = x.len() + t.len();
            if len > caps.submodule_length {
                too_long.push(len);
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(len as u64);
            for _ in 0..EXTENSION_TRIES {
                let e = random_extension(x, &t, &mut rng)?;
                tried += 1;
                let mu = match is_indecomposable(&e, caps) {
                    Ok(true) => gr_measure(&e, caps)?,
                    Ok(false) => continue,
                    Err(Error::CapExceeded(_) | Error::Undecided(_)) => continue,
                    Err(e) => return Err(e),
                };
                if *lower < mu && mu < *upper {
                    return Ok(Ok((mu, e.dim().to_string())));
                }
            }
        }
    }
    Ok(Err(if tried > 0 {
        format!("no witness among {tried} extensions")
    } else if let Some(len) = too_long.iter().min() {
        format!("extensions have length {len}, beyond the lattice cap {}", caps.submodule_length)
    } else {
        "no regular representative to extend".into()
    }))
}

fn random_extension(sub: &KroneckerModule, quotient: &KroneckerModule, rng: &mut ChaCha8Rng) -> Result<KroneckerModule> {
    let f = sub.field();
    let eps = (0..sub.n())
        .map(|_| {
            let data = (0..sub.d2() * quotient.d1()).map(|_| rng.gen_range(0..f.q()) as u8).collect();
            FqMatrix::new(f, sub.d2(), quotient.d1(), data)
        })
        .collect::<Result<Vec<_>>>()?;
    sub.extension(quotient, &eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::engine::scan::{scan_realized, ScanMode};

    #[test]
    fn m1_small_catalog() {
        let caps = Caps::default();
        let cat = scan_realized(3, 2, 5, ScanMode::Exhaustive, &caps)
            .unwrap()
            .merge(scan_realized(3, 2, 7, ScanMode::Families, &caps).unwrap())
            .unwrap();
        let rep = gap_scan(1, &cat, &caps).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        // {1,2,4} is witnessed by {1,2,4,5}
        assert!(!rep.unwitnessed.contains(&"{1,2,4}".to_string()));
        assert!(rep.to_json().contains("\"unwitnessed\""));
        assert!(gap_scan(4, &cat, &caps).is_err());
        assert_eq!(rep.unwitnessed.len(), rep.unresolved.len());
    }
}
