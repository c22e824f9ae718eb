//! Named modules: simples, the preprojectives `P_r`, the preinjectives `Q_r`,
//! and the 2-Kronecker families embedded by padding with zero arrows.

use std::fmt;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::kronecker::{tau_inverse_module, tau_module, KroneckerModule};
use crate::linalg::{Fq, FqMatrix};

/// Eigenvalue parameter of a 2-Kronecker regular module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lambda {
    Finite(u8),
    Infinity,
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Finite(l) => write!(f, "{l}"),
            Lambda::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Lambda {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Lambda::Infinity),
            _ => s
                .parse::<u8>()
                .map(Lambda::Finite)
                .map_err(|_| Error::Parse(format!("bad eigenvalue {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Simple { vertex: u8 },
    P { r: usize },
    Q { r: usize },
    Regular2k { m: usize, lambda: Lambda },
    Preproj2k { m: usize },
    Preinj2k { m: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Simple { vertex } => write!(f, "S{vertex}"),
            Family::P { r } => write!(f, "P{r}"),
            Family::Q { r } => write!(f, "Q{r}"),
            Family::Regular2k { m, lambda } => write!(f, "regular2k({m};{lambda})"),
            Family::Preproj2k { m } => write!(f, "preproj2k({m})"),
            Family::Preinj2k { m } => write!(f, "preinj2k({m})"),
        }
    }
}

/// Simple module at `vertex` (1 gives `(1,0)`, 2 gives `(0,1)`).
pub fn simple(field: Fq, n: usize, vertex: u8) -> KroneckerModule {
    let (d1, d2) = if vertex == 1 { (1, 0) } else { (0, 1) };
    KroneckerModule::from_parts(field, d1, d2, vec![FqMatrix::zeros(field, d2, d1); n])
}

/// Preprojective `P_r`, `r ≥ 1`.
pub fn p_module(r: usize, n: usize, field: Fq) -> Result<KroneckerModule> {
    match r {
        0 => Err(Error::Precondition("preprojectives are indexed from 1".into())),
        1 => Ok(simple(field, n, 2)),
        2 => {
            let maps = (0..n)
                .map(|i| {
                    let mut e = FqMatrix::zeros(field, n, 1);
                    e.set(i, 0, 1);
                    e
                })
                .collect();
            Ok(KroneckerModule::from_parts(field, 1, n, maps))
        }
        _ => tau_inverse_module(&p_module(r - 2, n, field)?, &Caps::default()),
    }
}

/// Preinjective `Q_r`, `r ≥ 0`.
pub fn q_module(r: usize, n: usize, field: Fq) -> Result<KroneckerModule> {
    match r {
        0 => Ok(simple(field, n, 1)),
        1 => {
            let maps = (0..n)
                .map(|i| {
                    let mut e = FqMatrix::zeros(field, 1, n);
                    e.set(0, i, 1);
                    e
                })
                .collect();
            Ok(KroneckerModule::from_parts(field, n, 1, maps))
        }
        _ => tau_module(&q_module(r - 2, n, field)?, &Caps::default()),
    }
}

/// A 2-Kronecker module viewed over `n ≥ 2` arrows.
pub fn embed2k(m: &KroneckerModule, n: usize) -> Result<KroneckerModule> {
    if m.n() != 2 || n < 2 {
        return Err(Error::Precondition(format!("cannot embed a {}-arrow module into {n} arrows", m.n())));
    }
    Ok(m.pad_arrows(n - 2))
}

fn jordan(field: Fq, m: usize, lambda: u8) -> FqMatrix {
    let mut j = FqMatrix::zeros(field, m, m);
    for i in 0..m {
        j.set(i, i, lambda);
        if i + 1 < m {
            j.set(i, i + 1, 1);
        }
    }
    j
}

/// 2-Kronecker regular `(m,m)`: `(I, J_m(λ))`, or `(J_m(0), I)` at infinity.
pub fn regular2k(m: usize, lambda: Lambda, field: Fq) -> Result<KroneckerModule> {
    if m == 0 {
        return Err(Error::Precondition("regular2k needs m >= 1".into()));
    }
    let id = FqMatrix::identity(field, m);
    let maps = match lambda {
        Lambda::Finite(l) if (l as u32) < field.q() => vec![id, jordan(field, m, l)],
        Lambda::Finite(l) => return Err(Error::Precondition(format!("eigenvalue {l} not in F_{}", field.q()))),
        Lambda::Infinity => vec![jordan(field, m, 0), id],
    };
    Ok(KroneckerModule::from_parts(field, m, m, maps))
}

/// 2-Kronecker preprojective `(m, m+1)`: `([I; 0], [0; I])`.
pub fn preproj2k(m: usize, field: Fq) -> KroneckerModule {
    let mut f1 = FqMatrix::zeros(field, m + 1, m);
    let mut f2 = FqMatrix::zeros(field, m + 1, m);
    for i in 0..m {
        f1.set(i, i, 1);
        f2.set(i + 1, i, 1);
    }
    KroneckerModule::from_parts(field, m, m + 1, vec![f1, f2])
}

/// 2-Kronecker preinjective `(m+1, m)`: `([I | 0], [0 | I])`.
pub fn preinj2k(m: usize, field: Fq) -> KroneckerModule {
    let mut f1 = FqMatrix::zeros(field, m, m + 1);
    let mut f2 = FqMatrix::zeros(field, m, m + 1);
    for i in 0..m {
        f1.set(i, i, 1);
        f2.set(i, i + 1, 1);
    }
    KroneckerModule::from_parts(field, m + 1, m, vec![f1, f2])
}

/// Builds a named module over `n` arrows; 2-Kronecker kinds are embedded.
pub fn construct_family(family: Family, n: usize, field: Fq) -> Result<KroneckerModule> {
    match family {
        Family::Simple { vertex: vertex @ (1 | 2) } => Ok(simple(field, n, vertex)),
        Family::Simple { vertex } => Err(Error::Precondition(format!("no vertex {vertex}"))),
        Family::P { r } => p_module(r, n, field),
        Family::Q { r } => q_module(r, n, field),
        Family::Regular2k { m, lambda } => embed2k(&regular2k(m, lambda, field)?, n),
        Family::Preproj2k { m } => embed2k(&preproj2k(m, field), n),
        Family::Preinj2k { m } => embed2k(&preinj2k(m, field), n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::{preinjective_dims, preprojective_dims, DimVector};
    use crate::kronecker::is_indecomposable;

    #[test]
    fn named_dimensions() {
        let f = Fq::new(2).unwrap();
        assert_eq!(p_module(2, 3, f).unwrap().dim(), DimVector::new(1, 3));
        assert_eq!(q_module(2, 3, f).unwrap().dim(), DimVector::new(8, 3));
        assert_eq!(q_module(1, 3, f).unwrap().dim(), DimVector::new(3, 1));
        let r = construct_family(Family::Regular2k { m: 2, lambda: Lambda::Finite(0) }, 3, f).unwrap();
        assert_eq!(r.dim(), DimVector::new(2, 2));
        assert!(r.maps()[2].is_zero());
        assert!(p_module(0, 3, f).is_err());
        assert!(regular2k(2, Lambda::Finite(2), f).is_err());
    }

    #[test]
    fn sequences_match_numerics() {
        let caps = Caps::default();
        for (n, q) in [(2, 3), (3, 2), (3, 3), (4, 2)] {
            let f = Fq::new(q).unwrap();
            let pd = preprojective_dims(n as i64, 4);
            let qd = preinjective_dims(n as i64, 3);
            for r in 1..=4 {
                let p = p_module(r, n, f).unwrap();
                assert_eq!(p.dim(), pd[r - 1]);
                if p.len() <= 12 {
                    assert!(is_indecomposable(&p, &caps).unwrap());
                }
            }
            for r in 0..=3 {
                let m = q_module(r, n, f).unwrap();
                assert_eq!(m.dim(), qd[r]);
            }
        }
    }

    #[test]
    fn two_kronecker_families_are_indecomposable() {
        let caps = Caps::default();
        let f = Fq::new(3).unwrap();
        for m in 1..=3 {
            for lambda in [Lambda::Finite(0), Lambda::Finite(2), Lambda::Infinity] {
                assert!(is_indecomposable(&embed2k(&regular2k(m, lambda, f).unwrap(), 3).unwrap(), &caps).unwrap());
            }
            assert!(is_indecomposable(&embed2k(&preproj2k(m, f), 3).unwrap(), &caps).unwrap());
            assert!(is_indecomposable(&embed2k(&preinj2k(m, f), 4).unwrap(), &caps).unwrap());
        }
    }
}
