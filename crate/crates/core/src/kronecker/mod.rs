//! Representations of the n-Kronecker quiver over `F_q`.
//!
//! A module is a pair of spaces `M1 = F^{d1}`, `M2 = F^{d2}` together with
//! `n` linear maps `M1 → M2`, stored as `d2×d1` matrices acting on column
//! vectors. With arrows pointing into vertex 2, the simple module at vertex
//! 2 (dimension vector `(0,1)`) is projective and the Euler form reads
//! `x1·y1 + x2·y2 − n·x1·y2`.

mod decompose;
mod families;
mod hom;
mod reflection;
mod submodule;

use serde::{Deserialize, Serialize};

use crate::ar::DimVector;
use crate::error::{Error, Result};
use crate::linalg::{Fq, FqMatrix};

pub use decompose::{aut_count, decompose, find_splitting, indecomposable_aut, is_indecomposable, is_isomorphic, IsoSignature};
pub use families::{construct_family, embed2k, p_module, preinj2k, preproj2k, q_module, regular2k, simple, Family, Lambda};
pub use hom::{end_basis, ext_dim, hom_basis, hom_dim, Morphism};
pub use reflection::{tau_inverse_module, tau_module};
pub use submodule::SubmodulePair;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KroneckerModule {
    field: Fq,
    d1: usize,
    d2: usize,
    maps: Vec<FqMatrix>,
}

impl KroneckerModule {
    pub fn new(field: Fq, d1: usize, d2: usize, maps: Vec<FqMatrix>) -> Result<Self> {
        let m = KroneckerModule { field, d1, d2, maps };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_parts(field: Fq, d1: usize, d2: usize, maps: Vec<FqMatrix>) -> Self {
        debug_assert!(maps.iter().all(|a| a.shape() == (d2, d1)));
        KroneckerModule { field, d1, d2, maps }
    }

    pub fn zero(field: Fq, n: usize) -> Self {
        Self::from_parts(field, 0, 0, vec![FqMatrix::zeros(field, 0, 0); n])
    }

    pub fn validate(&self) -> Result<()> {
        if self.maps.is_empty() {
            return Err(Error::InvalidModule("need at least one arrow".into()));
        }
        for (i, a) in self.maps.iter().enumerate() {
            if a.field() != self.field {
                return Err(Error::InvalidModule(format!("map {} has modulus {}", i + 1, a.field().q())));
            }
            if a.shape() != (self.d2, self.d1) {
                return Err(Error::InvalidModule(format!(
                    "map {} has shape {:?}, expected {}x{}",
                    i + 1,
                    a.shape(),
                    self.d2,
                    self.d1
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.maps.len()
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim(&self) -> DimVector {
        DimVector::new(self.d1 as i64, self.d2 as i64)
    }

    /// Composition length `d1 + d2`.
    pub fn len(&self) -> usize {
        self.d1 + self.d2
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    pub fn maps(&self) -> &[FqMatrix] {
        &self.maps
    }

    /// All arrows act by zero.
    pub fn is_semisimple(&self) -> bool {
        self.maps.iter().all(FqMatrix::is_zero)
    }

    pub(crate) fn same_kind(&self, other: &KroneckerModule) -> Result<()> {
        if self.n() != other.n() || self.field != other.field {
            return Err(Error::ParameterMismatch(format!(
                "(n={}, q={}) vs (n={}, q={})",
                self.n(),
                self.q(),
                other.n(),
                other.q()
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &KroneckerModule) -> Result<KroneckerModule> {
        self.same_kind(other)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Self::from_parts(self.field, self.d1 + other.d1, self.d2 + other.d2, maps))
    }

    /// The module with arrows `[[α_i, ε_i], [0, β_i]]`: an extension of
    /// `quotient` (arrows `β`) by `self`. Each `ε_i` is `self.d2 × quotient.d1`.
    pub fn extension(&self, quotient: &KroneckerModule, eps: &[FqMatrix]) -> Result<KroneckerModule> {
        self.same_kind(quotient)?;
        if eps.len() != self.n() || eps.iter().any(|e| e.shape() != (self.d2, quotient.d1) || e.field() != self.field) {
            return Err(Error::Shape(format!(
                "extension needs {} blocks of shape {}x{}",
                self.n(),
                self.d2,
                quotient.d1
            )));
        }
        let (d1, d2) = (self.d1 + quotient.d1, self.d2 + quotient.d2);
        let maps = (0..self.n())
            .map(|i| {
                let mut m = self.maps[i].block_diag(&quotient.maps[i]);
                for r in 0..self.d2 {
                    for c in 0..quotient.d1 {
                        m.set(r, self.d1 + c, eps[i].get(r, c));
                    }
                }
                m
            })
            .collect();
        Ok(Self::from_parts(self.field, d1, d2, maps))
    }

    /// The isomorphic module `g2·α_i·g1⁻¹`.
    pub fn change_basis(&self, g1: &FqMatrix, g2: &FqMatrix) -> Result<KroneckerModule> {
        let g1_inv = g1
            .inverse()
            .ok_or_else(|| Error::Precondition("basis change at vertex 1 is singular".into()))?;
        if !g2.is_invertible() || g2.rows() != self.d2 || g1.rows() != self.d1 {
            return Err(Error::Precondition("basis change at vertex 2 is singular or misshapen".into()));
        }
        let maps = self.maps.iter().map(|a| g2.mul_unchecked(a).mul_unchecked(&g1_inv)).collect();
        Ok(Self::from_parts(self.field, self.d1, self.d2, maps))
    }

    /// Appends `extra` zero arrows.
    pub fn pad_arrows(&self, extra: usize) -> KroneckerModule {
        let mut maps = self.maps.clone();
        maps.extend((0..extra).map(|_| FqMatrix::zeros(self.field, self.d2, self.d1)));
        Self::from_parts(self.field, self.d1, self.d2, maps)
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile {
            n: self.n(),
            q: self.q(),
            dim: [self.d1, self.d2],
            maps: self
                .maps
                .iter()
                .map(|a| a.to_rows().into_iter().map(|r| r.into_iter().map(u32::from).collect()).collect())
                .collect(),
        }
    }

    pub fn from_file(file: &ModuleFile) -> Result<Self> {
        let field = Fq::new(file.q)?;
        let [d1, d2] = file.dim;
        if file.maps.len() != file.n {
            return Err(Error::InvalidModule(format!("n = {} but {} maps given", file.n, file.maps.len())));
        }
        let mut maps = Vec::with_capacity(file.n);
        for (i, rows) in file.maps.iter().enumerate() {
            if rows.len() != d2 {
                return Err(Error::InvalidModule(format!("map {} has {} rows, expected {d2}", i + 1, rows.len())));
            }
            let mut data = Vec::with_capacity(d1 * d2);
            for r in rows {
                if r.len() != d1 {
                    return Err(Error::InvalidModule(format!(
                        "map {} has a row of length {}, expected {d1}",
                        i + 1,
                        r.len()
                    )));
                }
                for &x in r {
                    if x >= file.q {
                        return Err(Error::InvalidModule(format!("entry {x} is not reduced mod {}", file.q)));
                    }
                    data.push(x as u8);
                }
            }
            maps.push(FqMatrix::new(field, d2, d1, data)?);
        }
        KroneckerModule::new(field, d1, d2, maps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("module serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ModuleFile = serde_json::from_str(s)?;
        Self::from_file(&file)
    }
}

/// On-disk form: `{"n":3,"q":2,"dim":[1,1],"maps":[[[1]],[[0]],[[0]]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub n: usize,
    pub q: u32,
    pub dim: [usize; 2],
    pub maps: Vec<Vec<Vec<u32>>>,
}
