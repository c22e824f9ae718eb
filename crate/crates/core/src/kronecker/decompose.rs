//! Indecomposability, Krull-Schmidt decomposition and isomorphism testing.
//!
//! A finite-dimensional module is indecomposable iff every endomorphism is
//! nilpotent or invertible. An endomorphism `φ` that is neither splits the
//! module by Fitting's lemma: `M = ker φ^N ⊕ im φ^N` for `N ≥ dim M`, both
//! summands nonzero. The search tries basis elements of `End(M)` and their
//! scalar shifts first, then (within the cap) every element of `End(M)`.

use crate::ar::DimVector;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::kronecker::hom::{end_basis, hom_basis, hom_dim, Morphism};
use crate::kronecker::{simple, KroneckerModule, SubmodulePair};
use crate::linalg::{projective_points, FqMatrix};

/// Fitting decomposition for `φ`, if `φ` is neither nilpotent nor invertible.
fn fitting_split(m: &KroneckerModule, phi: &Morphism) -> Option<(SubmodulePair, SubmodulePair)> {
    let power = m.d1().max(m.d2()).max(1);
    let p1 = phi.f1.pow(power);
    let p2 = phi.f2.pow(power);
    let (r1, r2) = (p1.rank(), p2.rank());
    if r1 + r2 == 0 || (r1 == m.d1() && r2 == m.d2()) {
        return None;
    }
    let kernel = SubmodulePair { u1: p1.kernel_basis(), u2: p2.kernel_basis() };
    let image = SubmodulePair { u1: p1.image_basis(), u2: p2.image_basis() };
    Some((kernel, image))
}

/// Calls `visit` on every coefficient vector of `F_q^e` except zero, stopping
/// early when it returns `true`.
fn for_each_combination(q: u8, e: usize, mut visit: impl FnMut(&[u8]) -> bool) -> bool {
    let mut coeffs = vec![0u8; e];
    loop {
        let mut i = e;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
        }
        if visit(&coeffs) {
            return true;
        }
    }
}

/// An endomorphism that is neither nilpotent nor invertible, if one exists.
pub fn find_splitting(m: &KroneckerModule, caps: &Caps) -> Result<Option<Morphism>> {
    let basis = end_basis(m);
    if basis.len() <= 1 {
        return Ok(None);
    }
    let f = m.field();
    let id = Morphism::identity(m);
    for b in &basis {
        for lambda in 0..f.q() as u8 {
            let mut shifted = b.clone();
            shifted.f1.add_scaled_in_place(&id.f1, f.neg(lambda));
            shifted.f2.add_scaled_in_place(&id.f2, f.neg(lambda));
            if fitting_split(m, &shifted).is_some() {
                return Ok(Some(shifted));
            }
        }
    }
    let size = f.checked_pow(basis.len());
    if size.is_none_or(|s| s > caps.idempotent_search) {
        return Err(Error::Undecided(format!(
            "End of a {} module has dimension {} over F_{}",
            m.dim(),
            basis.len(),
            f.q()
        )));
    }
    let mut found = None;
    for_each_combination(f.q() as u8, basis.len(), |c| {
        let phi = Morphism::combination(&basis, c, &id);
        if fitting_split(m, &phi).is_some() {
            found = Some(phi);
            true
        } else {
            false
        }
    });
    Ok(found)
}

pub fn is_indecomposable(m: &KroneckerModule, caps: &Caps) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::Precondition("the zero module is neither decomposable nor indecomposable".into()));
    }
    if m.is_semisimple() {
        return Ok(m.len() == 1);
    }
    Ok(find_splitting(m, caps)?.is_none())
}

/// Indecomposable summands, ordered by dimension vector.
pub fn decompose(m: &KroneckerModule, caps: &Caps) -> Result<Vec<KroneckerModule>> {
    let mut out = Vec::new();
    let mut work = vec![m.clone()];
    while let Some(x) = work.pop() {
        if x.is_zero() {
            continue;
        }
        if x.is_semisimple() {
            out.extend((0..x.d1()).map(|_| simple(x.field(), x.n(), 1)));
            out.extend((0..x.d2()).map(|_| simple(x.field(), x.n(), 2)));
            continue;
        }
        match find_splitting(&x, caps)? {
            Some(phi) => {
                let (k, i) = fitting_split(&x, &phi).expect("splitting endomorphism");
                work.push(x.restrict_unchecked(&k));
                work.push(x.restrict_unchecked(&i));
            }
            None => out.push(x),
        }
    }
    out.sort_by_key(|x| (x.dim(), x.maps().iter().map(|a| a.data().to_vec()).collect::<Vec<_>>()));
    Ok(out)
}

/// Decides `a ≅ b` by searching `Hom(a, b)` for an invertible element. When
/// that space is too large to scan and either module splits, the summands
/// are matched instead, which is enough by Krull-Schmidt.
pub fn is_isomorphic(a: &KroneckerModule, b: &KroneckerModule, caps: &Caps) -> Result<bool> {
    a.same_kind(b)?;
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.is_zero() {
        return Ok(true);
    }
    if a == b {
        return Ok(true);
    }
    if hom_dim(a, b)? != hom_dim(a, a)? || hom_dim(b, a)? != hom_dim(b, b)? {
        return Ok(false);
    }
    let basis = hom_basis(a, b)?;
    let f = a.field();
    if basis.is_empty() {
        return Ok(false);
    }
    if f.checked_pow(basis.len()).is_none_or(|s| s > caps.hom_scan) {
        let (pa, pb) = (decompose(a, caps)?, decompose(b, caps)?);
        if pa.len() > 1 || pb.len() > 1 {
            return summands_match(pa, pb, caps);
        }
        return Err(Error::Undecided(format!("Hom space of dimension {} exceeds the scan cap", basis.len())));
    }
    let template = &basis[0];
    Ok(for_each_combination(f.q() as u8, basis.len(), |c| {
        Morphism::combination(&basis, c, template).is_invertible()
    }))
}

/// Pairs off isomorphic indecomposable summands. Isomorphism is an
/// equivalence, so greedy matching is exact.
fn summands_match(pa: Vec<KroneckerModule>, mut pb: Vec<KroneckerModule>, caps: &Caps) -> Result<bool> {
    if pa.len() != pb.len() {
        return Ok(false);
    }
    for x in &pa {
        let mut found = None;
        for (i, y) in pb.iter().enumerate() {
            if is_isomorphic(x, y, caps)? {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                pb.swap_remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// `|Aut(M)|`, the number of invertible endomorphisms.
pub fn aut_count(m: &KroneckerModule, caps: &Caps) -> Result<u64> {
    let basis = end_basis(m);
    let f = m.field();
    if m.is_zero() {
        return Ok(1);
    }
    if basis.len() == 1 {
        return Ok(f.q() as u64 - 1);
    }
    if f.checked_pow(basis.len()).is_none_or(|s| s > caps.idempotent_search) {
        return Err(Error::CapExceeded(format!("End of dimension {} is too large to scan", basis.len())));
    }
    let id = Morphism::identity(m);
    let mut count = 0;
    for_each_combination(f.q() as u8, basis.len(), |c| {
        if Morphism::combination(&basis, c, &id).is_invertible() {
            count += 1;
        }
        false
    });
    Ok(count)
}

/// `Some(|Aut(M)|)` if `M` is indecomposable, `None` otherwise.
///
/// `End(M)` is computed once. For a local endomorphism ring every element is
/// nilpotent or a unit, so one pass over `End(M)` both certifies
/// indecomposability and counts units.
pub fn indecomposable_aut(m: &KroneckerModule, caps: &Caps) -> Result<Option<u64>> {
    if m.is_zero() {
        return Err(Error::Precondition("the zero module is neither decomposable nor indecomposable".into()));
    }
    let f = m.field();
    if m.is_semisimple() {
        return Ok((m.len() == 1).then(|| f.q() as u64 - 1));
    }
    let basis = end_basis(m);
    if basis.len() == 1 {
        return Ok(Some(f.q() as u64 - 1));
    }
    let id = Morphism::identity(m);
    for b in &basis {
        for lambda in 0..f.q() as u8 {
            let mut shifted = b.clone();
            shifted.f1.add_scaled_in_place(&id.f1, f.neg(lambda));
            shifted.f2.add_scaled_in_place(&id.f2, f.neg(lambda));
            if fitting_split(m, &shifted).is_some() {
                return Ok(None);
            }
        }
    }
    if f.checked_pow(basis.len()).is_none_or(|s| s > caps.idempotent_search) {
        return Err(Error::Undecided(format!("End of a {} module has dimension {}", m.dim(), basis.len())));
    }
    let mut units = 0u64;
    let split = for_each_combination(f.q() as u8, basis.len(), |c| {
        let phi = Morphism::combination(&basis, c, &id);
        if phi.is_invertible() {
            units += 1;
            false
        } else {
            fitting_split(m, &phi).is_some()
        }
    });
    Ok((!split).then_some(units))
}

/// Cheap isomorphism invariant: dimension vector, `dim End`, and the rank of
/// every arrow combination `Σ c_i α_i` (one per projective point `c`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoSignature {
    pub dim: DimVector,
    pub end_dim: usize,
    pub combination_ranks: Vec<u8>,
}

impl IsoSignature {
    pub fn of(m: &KroneckerModule) -> Self {
        let f = m.field();
        let combination_ranks = projective_points(f, m.n())
            .into_iter()
            .map(|c| {
                let mut acc = FqMatrix::zeros(f, m.d2(), m.d1());
                for (a, &ci) in m.maps().iter().zip(&c) {
                    if ci != 0 {
                        acc.add_scaled_in_place(a, ci);
                    }
                }
                acc.rank() as u8
            })
            .collect();
        IsoSignature { dim: m.dim(), end_dim: end_basis(m).len(), combination_ranks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::tests::module;
    use crate::linalg::Fq;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn indecomposable_examples() {
        let x = module(2, 1, 1, &[&[1], &[0], &[0]]);
        assert!(is_indecomposable(&x, &caps()).unwrap());
        let s = simple(Fq::new(2).unwrap(), 3, 1);
        assert!(!is_indecomposable(&s.direct_sum(&s).unwrap(), &caps()).unwrap());
        let y = module(2, 2, 1, &[&[1, 0], &[0, 1], &[0, 0]]);
        assert!(is_indecomposable(&y, &caps()).unwrap());
        assert!(is_indecomposable(&KroneckerModule::zero(Fq::new(2).unwrap(), 3), &caps()).is_err());
    }

    #[test]
    fn decompose_examples() {
        let f = Fq::new(2).unwrap();
        let s = simple(f, 3, 1);
        let parts = decompose(&s.direct_sum(&s).unwrap(), &caps()).unwrap();
        assert_eq!(parts, vec![s.clone(), s]);
        let x = module(2, 1, 1, &[&[1], &[0], &[0]]);
        assert_eq!(decompose(&x, &caps()).unwrap(), vec![x.clone()]);
        // both images equal: (1,2) splits as (1,1) ⊕ (0,1)
        let m = module(2, 1, 2, &[&[1, 1], &[1, 1], &[0, 0]]);
        let parts = decompose(&m, &caps()).unwrap();
        let dims: Vec<_> = parts.iter().map(|p| p.dim()).collect();
        assert_eq!(dims, vec![DimVector::new(0, 1), DimVector::new(1, 1)]);
    }

    #[test]
    fn isomorphism_examples() {
        let a = module(2, 1, 1, &[&[1], &[0], &[0]]);
        let b = module(2, 1, 1, &[&[0], &[1], &[0]]);
        assert!(is_isomorphic(&a, &a, &caps()).unwrap());
        assert!(!is_isomorphic(&a, &b, &caps()).unwrap());
        let y = module(2, 2, 1, &[&[1, 0], &[0, 1], &[0, 0]]);
        assert!(!is_isomorphic(&a, &y, &caps()).unwrap());
        let f = Fq::new(2).unwrap();
        let g1 = FqMatrix::from_rows(f, 2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let g2 = FqMatrix::identity(f, 1);
        let y2 = y.change_basis(&g1, &g2).unwrap();
        assert_ne!(y, y2);
        assert!(is_isomorphic(&y, &y2, &caps()).unwrap());
        assert_eq!(IsoSignature::of(&y), IsoSignature::of(&y2));
    }

    #[test]
    fn isomorphism_beyond_hom_cap_matches_summands() {
        let f = Fq::new(3).unwrap();
        let x = module(3, 1, 1, &[&[1], &[1]]);
        let s = simple(f, 2, 1);
        let y = s.direct_sum(&s).unwrap().direct_sum(&s).unwrap();
        let a = x.direct_sum(&y).unwrap();
        let b = y.direct_sum(&x).unwrap();
        // Hom(a, b) has dimension 13 and 3^13 exceeds the default scan cap
        assert!(is_isomorphic(&a, &b, &caps()).unwrap());
        let z = module(3, 1, 1, &[&[1], &[2]]);
        assert!(!is_isomorphic(&a, &z.direct_sum(&y).unwrap(), &caps()).unwrap());
    }

    #[test]
    fn automorphism_counts() {
        let f = Fq::new(3).unwrap();
        let s = simple(f, 2, 1);
        assert_eq!(aut_count(&s, &caps()).unwrap(), 2);
        // GL_2(F_3)
        assert_eq!(aut_count(&s.direct_sum(&s).unwrap(), &caps()).unwrap(), 48);
    }

    #[test]
    fn combined_check_agrees() {
        let f = Fq::new(2).unwrap();
        let x = module(2, 1, 1, &[&[1], &[0], &[0]]);
        assert_eq!(indecomposable_aut(&x, &caps()).unwrap(), Some(1));
        let s = simple(f, 3, 1);
        assert_eq!(indecomposable_aut(&s.direct_sum(&s).unwrap(), &caps()).unwrap(), None);
        // (2,2) with maps (I, J_2(0)) over F_3: End = F_3[J], units 2·3
        let r = module(3, 2, 2, &[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
        assert_eq!(indecomposable_aut(&r, &caps()).unwrap(), Some(6));
        assert_eq!(aut_count(&r, &caps()).unwrap(), 6);
        // (2,2) with maps (I, C) for C irreducible over F_2: End = F_4
        let c = module(2, 2, 2, &[&[1, 0, 0, 1], &[0, 1, 1, 1]]);
        assert_eq!(indecomposable_aut(&c, &caps()).unwrap(), Some(3));
    }
}
