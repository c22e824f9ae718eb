use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Fq, FqMatrix};

/// A subspace of `F_q^d`, stored by its reduced row-echelon basis. Two
/// subspaces are equal iff their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: FqMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F^{}, {:?})", self.ambient, self.basis.to_rows())
    }
}

impl Subspace {
    pub fn zero(field: Fq, ambient: usize) -> Self {
        Subspace { ambient, basis: FqMatrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Fq, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FqMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &FqMatrix) -> Self {
        let (r, _) = m.rref();
        Self::from_rows_rref(r)
    }

    /// `m` must already be in RREF; trailing zero rows are dropped.
    pub(crate) fn from_rows_rref(m: FqMatrix) -> Self {
        let ambient = m.cols();
        let mut pivots = Vec::new();
        for r in 0..m.rows() {
            match m.row(r).iter().position(|&x| x != 0) {
                Some(c) => pivots.push(c),
                None => break,
            }
        }
        let k = pivots.len();
        let basis = if k == m.rows() {
            m
        } else {
            FqMatrix::new(m.field(), k, ambient, m.data()[..k * ambient].to_vec()).expect("truncation keeps shape")
        };
        Subspace { ambient, basis, pivots }
    }

    fn from_vectors(field: Fq, ambient: usize, vectors: impl IntoIterator<Item = Vec<u8>>) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for v in vectors {
            debug_assert_eq!(v.len(), ambient);
            data.extend(v);
            rows += 1;
        }
        let m = FqMatrix::new(field, rows, ambient, data).expect("vector lengths match ambient");
        Self::from_rows(&m)
    }

    pub fn field(&self) -> Fq {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates outside the pivot set; the corresponding standard basis
    /// vectors span a complement.
    pub fn nonpivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut p = self.pivots.iter().peekable();
        for c in 0..self.ambient {
            if p.peek() == Some(&&c) {
                p.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Canonical representative of `v` modulo this subspace (zero on pivots).
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field();
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                    if b != 0 {
                        *x = f.add(*x, f.mul(nc, b));
                    }
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && other.dim() <= self.dim()
            && (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }

    /// Coordinates of `v ∈ self` in the stored basis.
    pub fn coords(&self, v: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    /// Coordinates of the class of `v` in `F^d / self`, relative to the
    /// complement spanned by the non-pivot standard vectors.
    pub fn quotient_coords(&self, v: &[u8]) -> Vec<u8> {
        let r = self.reduce(v);
        self.nonpivots().into_iter().map(|c| r[c]).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.field() != other.field() {
            return Err(Error::Shape(format!(
                "subspaces of F^{} and F^{} are not comparable",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)?))
    }

    /// Zassenhaus: reduce `[[U, U], [V, 0]]`; rows with zero left half give `U ∩ V`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let d = self.ambient;
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&FqMatrix::zeros(f, other.dim(), d))?;
        let (r, pivots) = top.vstack(&bottom)?.rref();
        let vectors = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= d)
            .map(|(i, _)| r.row(i)[d..].to_vec())
            .collect::<Vec<_>>();
        Ok(Subspace::from_vectors(f, d, vectors))
    }

    /// The image `A·U`.
    pub fn apply(&self, a: &FqMatrix) -> Result<Subspace> {
        if a.cols() != self.ambient || a.field() != self.field() {
            return Err(Error::Shape(format!(
                "cannot apply a {}x{} map to a subspace of F^{}",
                a.rows(),
                a.cols(),
                self.ambient
            )));
        }
        Ok(Subspace::from_rows(&self.basis.mul_unchecked(&a.transpose())))
    }

    /// Subspace of `self` given by a matrix whose rows are coordinate vectors
    /// relative to the stored basis.
    pub fn lift(&self, coord_rows: &FqMatrix) -> Subspace {
        Subspace::from_rows(&coord_rows.mul_unchecked(&self.basis))
    }

    /// Every hyperplane `H` with `inner ⊆ H ⊂ self`.
    pub fn hyperplanes_containing(&self, inner: &Subspace) -> Vec<Subspace> {
        let f = self.field();
        let u = self.dim();
        if u == 0 || inner.dim() >= u {
            return Vec::new();
        }
        if inner.dim() + 1 == u {
            return vec![inner.clone()];
        }
        // Functionals on coordinates that vanish on `inner`.
        let inner_coords = FqMatrix::new(
            f,
            inner.dim(),
            u,
            (0..inner.dim()).flat_map(|r| self.coords(inner.basis.row(r))).collect(),
        )
        .expect("coordinate shape");
        let annihilator = inner_coords.nullspace();
        projective_points(f, annihilator.rows())
            .into_iter()
            .map(|c| {
                let c = FqMatrix::new(f, 1, c.len(), c).expect("point shape");
                let functional = c.mul_unchecked(&annihilator);
                self.lift(&functional.nullspace())
            })
            .collect()
    }

    pub fn hyperplanes(&self) -> Vec<Subspace> {
        self.hyperplanes_containing(&Subspace::zero(self.field(), self.ambient))
    }
}

/// Nonzero vectors of `F^k` with leading nonzero entry 1, in lexicographic order.
pub fn projective_points(field: Fq, k: usize) -> Vec<Vec<u8>> {
    let q = field.q() as u8;
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        let count = field.checked_pow(tail).expect("small dimension");
        for idx in 0..count {
            let mut v = vec![0u8; k];
            v[lead] = 1;
            let mut x = idx;
            for c in (lead + 1..k).rev() {
                v[c] = (x % q as u64) as u8;
                x /= q as u64;
            }
            out.push(v);
        }
    }
    out
}

/// Gaussian binomial coefficient `[d choose k]_q`.
pub fn gaussian_binomial(d: usize, k: usize, q: u64) -> u64 {
    if k > d {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow((d - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

/// Streams every subspace of `F_q^d` exactly once: by dimension, then by
/// pivot set in lexicographic order, then by the free RREF entries.
pub struct SubspaceIter {
    field: Fq,
    ambient: usize,
    max_dim: usize,
    dim: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u8>,
    done: bool,
}

impl SubspaceIter {
    /// All subspaces of `F^d`; refuses when `q^d` exceeds `cap`.
    pub fn new(field: Fq, ambient: usize, cap: u64) -> Result<Self> {
        Self::with_dims(field, ambient, 0, ambient, cap)
    }

    /// Subspaces with `min_dim <= dim <= max_dim`.
    pub fn with_dims(field: Fq, ambient: usize, min_dim: usize, max_dim: usize, cap: u64) -> Result<Self> {
        match field.checked_pow(ambient) {
            Some(points) if points <= cap => {}
            _ => {
                return Err(Error::CapExceeded(format!(
                    "enumerating subspaces of F_{}^{ambient} exceeds cap {cap}",
                    field.q()
                )))
            }
        }
        let mut it = SubspaceIter {
            field,
            ambient,
            max_dim: max_dim.min(ambient),
            dim: min_dim,
            pivots: Vec::new(),
            free: Vec::new(),
            digits: Vec::new(),
            done: min_dim > max_dim.min(ambient),
        };
        if !it.done {
            it.start_dim();
        }
        Ok(it)
    }

    fn start_dim(&mut self) {
        self.pivots = (0..self.dim).collect();
        self.reset_free();
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.ambient {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        let mut m = FqMatrix::zeros(self.field, self.dim, self.ambient);
        for (r, &p) in self.pivots.iter().enumerate() {
            m.set(r, p, 1);
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            m.set(r, c, d);
        }
        Subspace { ambient: self.ambient, basis: m, pivots: self.pivots.clone() }
    }

    fn advance(&mut self) {
        let q = self.field.q() as u8;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        // next pivot combination
        let k = self.dim;
        let n = self.ambient;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.dim += 1;
        if self.dim > self.max_dim {
            self.done = true;
        } else {
            self.start_dim();
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let s = self.current();
        self.advance();
        Some(s)
    }
}

/// Every subspace `U` with `inner ⊆ U ⊆ F^d`, ordered by dimension.
pub fn subspaces_containing(inner: &Subspace, cap: u64) -> Result<Vec<Subspace>> {
    let f = inner.field();
    let complement = inner.nonpivots();
    let iter = SubspaceIter::new(f, complement.len(), cap)?;
    Ok(iter
        .map(|v| {
            let mut rows = inner.basis.clone();
            let mut embedded = FqMatrix::zeros(f, v.dim(), inner.ambient);
            for r in 0..v.dim() {
                for (j, &c) in complement.iter().enumerate() {
                    embedded.set(r, c, v.basis.get(r, j));
                }
            }
            rows = rows.vstack(&embedded).expect("same ambient");
            Subspace::from_rows(&rows)
        })
        .collect())
}
