//! Hom and Ext¹ between Kronecker modules via the standard two-term complex
//!
//! `Hom(X1,Y1) ⊕ Hom(X2,Y2) → ⊕_i Hom(X1,Y2)`, `(φ1, φ2) ↦ (β_i·φ1 − φ2·α_i)_i`.
//!
//! Its kernel is `Hom(X,Y)` and its cokernel is `Ext¹(X,Y)`.

use crate::error::Result;
use crate::kronecker::KroneckerModule;
use crate::linalg::FqMatrix;

/// A module homomorphism `X → Y`: `f1: X1 → Y1`, `f2: X2 → Y2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub f1: FqMatrix,
    pub f2: FqMatrix,
}

impl Morphism {
    pub fn identity(m: &KroneckerModule) -> Self {
        Morphism { f1: FqMatrix::identity(m.field(), m.d1()), f2: FqMatrix::identity(m.field(), m.d2()) }
    }

    pub fn is_invertible(&self) -> bool {
        self.f1.is_invertible() && self.f2.is_invertible()
    }

    pub fn compose(&self, after: &Morphism) -> Morphism {
        Morphism { f1: after.f1.mul_unchecked(&self.f1), f2: after.f2.mul_unchecked(&self.f2) }
    }

    /// `Σ c_j · basis_j`.
    pub fn combination(basis: &[Morphism], coeffs: &[u8], template: &Morphism) -> Morphism {
        let mut f1 = FqMatrix::zeros(template.f1.field(), template.f1.rows(), template.f1.cols());
        let mut f2 = FqMatrix::zeros(template.f2.field(), template.f2.rows(), template.f2.cols());
        for (b, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                f1.add_scaled_in_place(&b.f1, c);
                f2.add_scaled_in_place(&b.f2, c);
            }
        }
        Morphism { f1, f2 }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    /// Whether `f2·α_i = β_i·f1` for every arrow.
    pub fn is_homomorphism(&self, x: &KroneckerModule, y: &KroneckerModule) -> bool {
        x.maps()
            .iter()
            .zip(y.maps())
            .all(|(a, b)| self.f2.mul_unchecked(a) == b.mul_unchecked(&self.f1))
    }
}

/// Matrix of the complex; columns index `φ1` entries (row-major) then `φ2`.
fn hom_system(x: &KroneckerModule, y: &KroneckerModule) -> FqMatrix {
    let f = x.field();
    let (x1, x2, y1, y2) = (x.d1(), x.d2(), y.d1(), y.d2());
    let n = x.n();
    let unknowns = y1 * x1 + y2 * x2;
    let mut sys = FqMatrix::zeros(f, n * y2 * x1, unknowns);
    for i in 0..n {
        let alpha = &x.maps()[i];
        let beta = &y.maps()[i];
        for r in 0..y2 {
            for c in 0..x1 {
                let row = (i * y2 + r) * x1 + c;
                for k in 0..y1 {
                    sys.set(row, k * x1 + c, beta.get(r, k));
                }
                for k in 0..x2 {
                    let a = alpha.get(k, c);
                    if a != 0 {
                        sys.set(row, y1 * x1 + r * x2 + k, f.neg(a));
                    }
                }
            }
        }
    }
    sys
}

fn unknowns(x: &KroneckerModule, y: &KroneckerModule) -> usize {
    y.d1() * x.d1() + y.d2() * x.d2()
}

pub fn hom_dim(x: &KroneckerModule, y: &KroneckerModule) -> Result<usize> {
    x.same_kind(y)?;
    Ok(unknowns(x, y) - hom_system(x, y).rank())
}

pub fn ext_dim(x: &KroneckerModule, y: &KroneckerModule) -> Result<usize> {
    x.same_kind(y)?;
    Ok(x.n() * y.d2() * x.d1() - hom_system(x, y).rank())
}

pub fn hom_basis(x: &KroneckerModule, y: &KroneckerModule) -> Result<Vec<Morphism>> {
    x.same_kind(y)?;
    let f = x.field();
    let (x1, x2, y1, y2) = (x.d1(), x.d2(), y.d1(), y.d2());
    let kernel = hom_system(x, y).nullspace();
    Ok((0..kernel.rows())
        .map(|r| {
            let v = kernel.row(r);
            let f1 = FqMatrix::new(f, y1, x1, v[..y1 * x1].to_vec()).expect("block shape");
            let f2 = FqMatrix::new(f, y2, x2, v[y1 * x1..].to_vec()).expect("block shape");
            Morphism { f1, f2 }
        })
        .collect())
}

/// Basis of `End(M)`.
pub fn end_basis(m: &KroneckerModule) -> Vec<Morphism> {
    hom_basis(m, m).expect("a module matches itself")
}
