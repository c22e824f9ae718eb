use crate::ar::DimVector;
use crate::error::{Error, Result};
use crate::kronecker::KroneckerModule;
use crate::linalg::{projective_points, subspaces_containing, FqMatrix, Subspace, SubspaceIter};

/// Subspaces `U1 ⊆ M1`, `U2 ⊆ M2` with `α_i(U1) ⊆ U2` for every arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubmodulePair {
    pub u1: Subspace,
    pub u2: Subspace,
}

impl SubmodulePair {
    pub fn zero(m: &KroneckerModule) -> Self {
        SubmodulePair { u1: Subspace::zero(m.field(), m.d1()), u2: Subspace::zero(m.field(), m.d2()) }
    }

    pub fn full(m: &KroneckerModule) -> Self {
        SubmodulePair { u1: Subspace::full(m.field(), m.d1()), u2: Subspace::full(m.field(), m.d2()) }
    }

    pub fn dim(&self) -> DimVector {
        DimVector::new(self.u1.dim() as i64, self.u2.dim() as i64)
    }

    pub fn len(&self) -> usize {
        self.u1.dim() + self.u2.dim()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, other: &SubmodulePair) -> bool {
        self.u1.contains(&other.u1) && self.u2.contains(&other.u2)
    }

    pub fn is_closed_in(&self, m: &KroneckerModule) -> bool {
        self.u1.ambient() == m.d1() && self.u2.ambient() == m.d2() && self.u2.contains(&m.forced_floor(&self.u1))
    }

    pub fn sum(&self, other: &SubmodulePair) -> Result<SubmodulePair> {
        Ok(SubmodulePair { u1: self.u1.sum(&other.u1)?, u2: self.u2.sum(&other.u2)? })
    }

    pub fn intersection(&self, other: &SubmodulePair) -> Result<SubmodulePair> {
        Ok(SubmodulePair { u1: self.u1.intersection(&other.u1)?, u2: self.u2.intersection(&other.u2)? })
    }
}

impl KroneckerModule {
    /// `Σ_i α_i(U1)`, the smallest `U2` making `(U1, U2)` closed.
    pub fn forced_floor(&self, u1: &Subspace) -> Subspace {
        let f = self.field();
        let a = u1.dim();
        let mut m = FqMatrix::zeros(f, a * self.n(), self.d2());
        for (i, map) in self.maps().iter().enumerate() {
            for j in 0..a {
                let image = map.mul_vec(u1.basis().row(j));
                for (c, &x) in image.iter().enumerate() {
                    m.set(i * a + j, c, x);
                }
            }
        }
        Subspace::from_rows(&m)
    }

    /// Every submodule, each once: `U1` in subspace-enumeration order, then
    /// every `U2` above the forced floor.
    pub fn enumerate_submodules(&self, max_length: usize) -> Result<Vec<SubmodulePair>> {
        if self.len() > max_length {
            return Err(Error::CapExceeded(format!(
                "submodule enumeration of a length-{} module (cap {max_length})",
                self.len()
            )));
        }
        let mut out = Vec::new();
        for u1 in SubspaceIter::new(self.field(), self.d1(), u64::MAX)? {
            let floor = self.forced_floor(&u1);
            for u2 in subspaces_containing(&floor, u64::MAX)? {
                out.push(SubmodulePair { u1: u1.clone(), u2 });
            }
        }
        Ok(out)
    }

    pub fn restrict(&self, s: &SubmodulePair) -> Result<KroneckerModule> {
        if !s.is_closed_in(self) {
            return Err(Error::Precondition("subspace pair is not closed under the arrows".into()));
        }
        Ok(self.restrict_unchecked(s))
    }

    /// Induced module on `(U1, U2)` in the RREF bases; `s` must be closed.
    pub(crate) fn restrict_unchecked(&self, s: &SubmodulePair) -> KroneckerModule {
        let f = self.field();
        let (a1, a2) = (s.u1.dim(), s.u2.dim());
        let pivots = s.u2.pivots();
        let maps = self
            .maps()
            .iter()
            .map(|map| {
                let mut r = FqMatrix::zeros(f, a2, a1);
                for j in 0..a1 {
                    let image = map.mul_vec(s.u1.basis().row(j));
                    debug_assert!(s.u2.contains_vector(&image));
                    for (k, &p) in pivots.iter().enumerate() {
                        r.set(k, j, image[p]);
                    }
                }
                r
            })
            .collect();
        KroneckerModule::from_parts(f, a1, a2, maps)
    }

    /// Induced module on `(M1/U1, M2/U2)`, with quotient bases given by the
    /// non-pivot standard vectors.
    pub fn quotient(&self, s: &SubmodulePair) -> Result<KroneckerModule> {
        if !s.is_closed_in(self) {
            return Err(Error::Precondition("subspace pair is not closed under the arrows".into()));
        }
        Ok(self.quotient_unchecked(s))
    }

    pub(crate) fn quotient_unchecked(&self, s: &SubmodulePair) -> KroneckerModule {
        let f = self.field();
        let comp1 = s.u1.nonpivots();
        let b2 = self.d2() - s.u2.dim();
        let maps = self
            .maps()
            .iter()
            .map(|map| {
                let mut r = FqMatrix::zeros(f, b2, comp1.len());
                for (j, &c) in comp1.iter().enumerate() {
                    let image = map.column(c);
                    for (k, x) in s.u2.quotient_coords(&image).into_iter().enumerate() {
                        r.set(k, j, x);
                    }
                }
                r
            })
            .collect();
        KroneckerModule::from_parts(f, comp1.len(), b2, maps)
    }

    /// Submodules of colength one inside `s`: a hyperplane of `U1` with the
    /// same `U2`, or `U1` with a hyperplane of `U2` above the forced floor.
    pub fn maximal_submodules(&self, s: &SubmodulePair) -> Vec<SubmodulePair> {
        let mut out: Vec<SubmodulePair> = s
            .u1
            .hyperplanes()
            .into_iter()
            .map(|h| SubmodulePair { u1: h, u2: s.u2.clone() })
            .collect();
        let floor = self.forced_floor(&s.u1);
        out.extend(
            s.u2
                .hyperplanes_containing(&floor)
                .into_iter()
                .map(|h| SubmodulePair { u1: s.u1.clone(), u2: h }),
        );
        out
    }

    /// Whether some submodule of dimension `(1,1)` is indecomposable, i.e.
    /// some `v ≠ 0` has its images spanning exactly a line.
    pub fn has_11_submodule(&self) -> bool {
        let f = self.field();
        projective_points(f, self.d1()).into_iter().any(|v| {
            let mut rows = FqMatrix::zeros(f, self.n(), self.d2());
            for (i, map) in self.maps().iter().enumerate() {
                for (c, x) in map.mul_vec(&v).into_iter().enumerate() {
                    rows.set(i, c, x);
                }
            }
            rows.rank() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kronecker::tests::module;
    use crate::kronecker::{embed2k, is_indecomposable, p_module, regular2k, Lambda};
    use crate::linalg::Fq;
    use crate::Caps;

    #[test]
    fn submodules_of_11() {
        let m = module(2, 1, 1, &[&[1], &[0], &[0]]);
        let subs = m.enumerate_submodules(12).unwrap();
        assert_eq!(subs.len(), 3);
        let dims: Vec<_> = subs.iter().map(|s| (s.u1.dim(), s.u2.dim())).collect();
        assert_eq!(dims, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn zero_module_has_one_submodule() {
        let z = KroneckerModule::zero(Fq::new(2).unwrap(), 3);
        assert_eq!(z.enumerate_submodules(12).unwrap().len(), 1);
    }

    #[test]
    fn p2_forces_full_top() {
        let p2 = p_module(2, 3, Fq::new(2).unwrap()).unwrap();
        for s in p2.enumerate_submodules(12).unwrap() {
            if s.u1.dim() == 1 {
                assert_eq!(s.u2.dim(), 3);
            }
        }
        assert!(!p2.has_11_submodule());
    }

    #[test]
    fn restrict_and_quotient() {
        let f = Fq::new(2).unwrap();
        let m = embed2k(&regular2k(2, Lambda::Finite(0), f).unwrap(), 3).unwrap();
        let full = SubmodulePair::full(&m);
        assert_eq!(m.restrict(&full).unwrap(), m);
        assert_eq!(m.quotient(&SubmodulePair::zero(&m)).unwrap(), m);
        let e1 = Subspace::from_rows(&FqMatrix::from_rows(f, 2, &[vec![1, 0]]).unwrap());
        let s = SubmodulePair { u1: e1.clone(), u2: e1 };
        let sub = m.restrict(&s).unwrap();
        assert_eq!(sub.dim(), DimVector::new(1, 1));
        assert_eq!(sub.maps()[0].get(0, 0), 1);
        assert!(is_indecomposable(&sub, &Caps::default()).unwrap());
        let quo = m.quotient(&s).unwrap();
        assert_eq!(quo.len() + sub.len(), m.len());
        let bad = SubmodulePair { u1: Subspace::full(f, 2), u2: Subspace::zero(f, 2) };
        assert!(m.restrict(&bad).is_err());
        assert!(m.has_11_submodule());
    }

    #[test]
    fn maximal_submodules_have_colength_one() {
        let f = Fq::new(3).unwrap();
        let m = embed2k(&regular2k(2, Lambda::Finite(1), f).unwrap(), 3).unwrap();
        let full = SubmodulePair::full(&m);
        let maxes = m.maximal_submodules(&full);
        assert!(!maxes.is_empty());
        for s in &maxes {
            assert_eq!(s.len(), m.len() - 1);
            assert!(s.is_closed_in(&m));
        }
        // every colength-one submodule appears exactly once
        let all: Vec<_> = m.enumerate_submodules(12).unwrap().into_iter().filter(|s| s.len() == m.len() - 1).collect();
        assert_eq!(all.len(), maxes.len());
    }
}
