//! Brute-force GR measure: enumerate every chain of indecomposable
//! submodules and take the largest length set. Exponential by design; used
//! only to cross-check the lattice recursion on small modules.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::kronecker::{is_indecomposable, KroneckerModule};
use crate::order::GrMeasure;

pub fn gr_measure_oracle(m: &KroneckerModule, caps: &Caps) -> Result<GrMeasure> {
    if m.len() > caps.oracle_length {
        return Err(Error::CapExceeded(format!(
            "oracle on a length-{} module (cap {})",
            m.len(),
            caps.oracle_length
        )));
    }
    let mut indec = Vec::new();
    for s in m.enumerate_submodules(caps.oracle_length)? {
        if !s.is_empty() && is_indecomposable(&m.restrict(&s)?, caps)? {
            indec.push(s);
        }
    }
    // above[i]: indecomposables strictly containing indec[i]
    let above: Vec<Vec<usize>> = indec
        .iter()
        .map(|x| {
            (0..indec.len())
                .filter(|&j| indec[j].len() > x.len() && indec[j].contains(x))
                .collect()
        })
        .collect();

    fn walk(i: usize, lens: &mut Vec<u32>, indec: &[crate::kronecker::SubmodulePair], above: &[Vec<usize>], best: &mut GrMeasure) {
        lens.push(indec[i].len() as u32);
        let here = GrMeasure::from_elements(lens.clone()).expect("chain lengths increase");
        if here > *best {
            *best = here;
        }
        for &j in &above[i] {
            walk(j, lens, indec, above, best);
        }
        lens.pop();
    }

    let mut best = GrMeasure::empty();
    for i in 0..indec.len() {
        walk(i, &mut Vec::new(), &indec, &above, &mut best);
    }
    Ok(best)
}
