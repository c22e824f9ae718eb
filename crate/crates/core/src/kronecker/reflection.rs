//! The Auslander-Reiten translate as a composite of two reflection functors.
//!
//! `τ`: reflect at the sink (vertex 2) by taking the kernel of
//! `⊕ⁿ M1 → M2`, then at vertex 1, which has become a sink, the same way.
//! `τ⁻¹`: reflect at the source (vertex 1) by taking the cokernel of
//! `M1 → ⊕ⁿ M2`, then at vertex 2. Both land back in the original
//! orientation with `dim τM = dim M · Φ`.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::kronecker::{is_indecomposable, KroneckerModule};
use crate::linalg::{Fq, FqMatrix};

/// Kernel reflection: given maps `g_i: U → V` (each `rows(V) × dim U`),
/// returns the kernel `K ⊆ Uⁿ` of `Σ g_i` together with the component maps
/// `K → U` (each `dim U × dim K`).
fn kernel_reflection(field: Fq, dim_u: usize, maps: &[FqMatrix]) -> Vec<FqMatrix> {
    let n = maps.len();
    let dim_v = maps[0].rows();
    let mut joined = FqMatrix::zeros(field, dim_v, n * dim_u);
    for (i, g) in maps.iter().enumerate() {
        for r in 0..dim_v {
            for c in 0..dim_u {
                joined.set(r, i * dim_u + c, g.get(r, c));
            }
        }
    }
    let kernel = joined.nullspace();
    let s = kernel.rows();
    (0..n)
        .map(|i| {
            let mut p = FqMatrix::zeros(field, dim_u, s);
            for j in 0..s {
                for c in 0..dim_u {
                    p.set(c, j, kernel.get(j, i * dim_u + c));
                }
            }
            p
        })
        .collect()
}

/// Cokernel reflection: given maps `g_i: U → V` (each `dim V × dim U`),
/// returns the inclusions-then-projections `V → C` where
/// `C = Vⁿ / im(u ↦ (g_i u)_i)` (each `dim C × dim V`).
fn cokernel_reflection(field: Fq, dim_u: usize, dim_v: usize, maps: &[FqMatrix]) -> Vec<FqMatrix> {
    let n = maps.len();
    let mut stacked = FqMatrix::zeros(field, n * dim_v, dim_u);
    for (i, g) in maps.iter().enumerate() {
        for r in 0..dim_v {
            for c in 0..dim_u {
                stacked.set(i * dim_v + r, c, g.get(r, c));
            }
        }
    }
    let image = stacked.image_basis();
    let dim_c = n * dim_v - image.dim();
    (0..n)
        .map(|i| {
            let mut e = FqMatrix::zeros(field, dim_c, dim_v);
            for k in 0..dim_v {
                let mut unit = vec![0u8; n * dim_v];
                unit[i * dim_v + k] = 1;
                for (r, x) in image.quotient_coords(&unit).into_iter().enumerate() {
                    e.set(r, k, x);
                }
            }
            e
        })
        .collect()
}

fn require_indecomposable(m: &KroneckerModule, caps: &Caps) -> Result<()> {
    if m.is_zero() || !is_indecomposable(m, caps)? {
        return Err(Error::Precondition("the translate is only defined here for indecomposable modules".into()));
    }
    Ok(())
}

/// Raw `τ` on any module (projective summands are killed).
pub(crate) fn coxeter_plus(m: &KroneckerModule) -> KroneckerModule {
    let f = m.field();
    // vertex-2 reflection: K ⊆ M1ⁿ with maps K → M1
    let to_m1 = kernel_reflection(f, m.d1(), m.maps());
    let dim_k = to_m1[0].cols();
    // vertex-1 reflection: L ⊆ Kⁿ with maps L → K
    let to_k = kernel_reflection(f, dim_k, &to_m1);
    let dim_l = to_k[0].cols();
    KroneckerModule::from_parts(f, dim_l, dim_k, to_k)
}

/// Raw `τ⁻¹` on any module (injective summands are killed).
pub(crate) fn coxeter_minus(m: &KroneckerModule) -> KroneckerModule {
    let f = m.field();
    // vertex-1 reflection: C = M2ⁿ / M1 with maps M2 → C
    let from_m2 = cokernel_reflection(f, m.d1(), m.d2(), m.maps());
    let dim_c = from_m2[0].rows();
    // vertex-2 reflection: D = Cⁿ / M2 with maps C → D
    let from_c = cokernel_reflection(f, m.d2(), dim_c, &from_m2);
    let dim_d = from_c[0].rows();
    KroneckerModule::from_parts(f, dim_c, dim_d, from_c)
}

/// `τM` for indecomposable, non-projective `M`.
pub fn tau_module(m: &KroneckerModule, caps: &Caps) -> Result<KroneckerModule> {
    require_indecomposable(m, caps)?;
    let t = coxeter_plus(m);
    if t.is_zero() {
        return Err(Error::Projective);
    }
    Ok(t)
}

/// `τ⁻¹M` for indecomposable, non-injective `M`.
pub fn tau_inverse_module(m: &KroneckerModule, caps: &Caps) -> Result<KroneckerModule> {
    require_indecomposable(m, caps)?;
    let t = coxeter_minus(m);
    if t.is_zero() {
        return Err(Error::Injective);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::{tau_dim, DimVector};
    use crate::kronecker::tests::module;
    use crate::kronecker::{is_isomorphic, p_module, q_module, simple};

    #[test]
    fn tau_of_11() {
        let caps = Caps::default();
        for q in [2, 3] {
            let x = module(q, 1, 1, &[&[1], &[0], &[1]]);
            let t = tau_module(&x, &caps).unwrap();
            assert_eq!(t.dim(), DimVector::new(5, 2));
            let back = tau_inverse_module(&t, &caps).unwrap();
            assert!(is_isomorphic(&back, &x, &caps).unwrap());
        }
        let x4 = module(2, 1, 1, &[&[1], &[1], &[0], &[0]]);
        assert_eq!(tau_module(&x4, &caps).unwrap().dim(), DimVector::new(11, 3));
    }

    #[test]
    fn projectives_and_injectives_rejected() {
        let caps = Caps::default();
        let f = Fq::new(2).unwrap();
        assert!(matches!(tau_module(&p_module(2, 3, f).unwrap(), &caps), Err(Error::Projective)));
        assert!(matches!(tau_module(&simple(f, 3, 2), &caps), Err(Error::Projective)));
        assert!(matches!(tau_inverse_module(&q_module(1, 3, f).unwrap(), &caps), Err(Error::Injective)));
        let s = simple(f, 3, 1);
        assert!(matches!(tau_module(&s.direct_sum(&s).unwrap(), &caps), Err(Error::Precondition(_))));
    }

    #[test]
    fn dimension_contract() {
        let caps = Caps::default();
        let y = module(3, 2, 1, &[&[1, 0], &[0, 1], &[1, 1]]);
        let t = tau_module(&y, &caps).unwrap();
        assert_eq!(t.dim(), tau_dim(y.dim(), 3));
        assert!(is_isomorphic(&tau_inverse_module(&t, &caps).unwrap(), &y, &caps).unwrap());
    }
}
