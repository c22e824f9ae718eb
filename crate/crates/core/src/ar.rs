//! Dimension-vector calculus for the n-Kronecker quiver: Cartan and Coxeter
//! matrices, the Euler form, the Auslander-Reiten translate on dimension
//! vectors, and the preprojective / preinjective sequences.
//!
//! Dimension vectors are row vectors; `τ` acts as `x ↦ x·Φ`.

use std::fmt;

use serde::{Deserialize, Serialize};

pub type Mat2 = [[i64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector {
    pub x1: i64,
    pub x2: i64,
}

impl DimVector {
    pub const fn new(x1: i64, x2: i64) -> Self {
        DimVector { x1, x2 }
    }

    pub fn length(self) -> i64 {
        self.x1 + self.x2
    }

    /// Row vector times matrix.
    pub fn times(self, m: &Mat2) -> DimVector {
        DimVector {
            x1: self.x1 * m[0][0] + self.x2 * m[1][0],
            x2: self.x1 * m[0][1] + self.x2 * m[1][1],
        }
    }

    pub fn scale(self, k: i64) -> DimVector {
        DimVector::new(self.x1 * k, self.x2 * k)
    }
}

impl std::ops::Add for DimVector {
    type Output = DimVector;

    fn add(self, o: DimVector) -> DimVector {
        DimVector::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x1, self.x2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Preprojective,
    Regular,
    Preinjective,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::Preprojective => "preprojective",
            Position::Regular => "regular",
            Position::Preinjective => "preinjective",
        })
    }
}

pub fn cartan(n: i64) -> Mat2 {
    [[1, 0], [n, 1]]
}

pub fn coxeter(n: i64) -> Mat2 {
    [[n * n - 1, n], [-n, -1]]
}

pub fn coxeter_inv(n: i64) -> Mat2 {
    [[-1, -n], [n, n * n - 1]]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(a: &Mat2) -> Option<Mat2> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det.abs() != 1 {
        return None;
    }
    Some([[a[1][1] * det, -a[0][1] * det], [-a[1][0] * det, a[0][0] * det]])
}

/// `⟨x, y⟩ = x1·y1 + x2·y2 − n·x1·y2`.
pub fn euler_form(x: DimVector, y: DimVector, n: i64) -> i64 {
    x.x1 * y.x1 + x.x2 * y.x2 - n * x.x1 * y.x2
}

pub fn tau_dim(x: DimVector, n: i64) -> DimVector {
    x.times(&coxeter(n))
}

pub fn tau_inv_dim(x: DimVector, n: i64) -> DimVector {
    x.times(&coxeter_inv(n))
}

/// `P_1, …, P_{r_max}`.
pub fn preprojective_dims(n: i64, r_max: usize) -> Vec<DimVector> {
    let mut v = vec![DimVector::new(0, 1), DimVector::new(1, n)];
    while v.len() < r_max {
        let next = tau_inv_dim(v[v.len() - 2], n);
        v.push(next);
    }
    v.truncate(r_max);
    v
}

/// `Q_0, …, Q_{r_max}`.
pub fn preinjective_dims(n: i64, r_max: usize) -> Vec<DimVector> {
    let mut v = vec![DimVector::new(1, 0), DimVector::new(n, 1)];
    while v.len() < r_max + 1 {
        let next = tau_dim(v[v.len() - 2], n);
        v.push(next);
    }
    v.truncate(r_max + 1);
    v
}

/// Position of an indecomposable with dimension vector `x`, by membership in
/// the generated P/Q lists up to `length_bound`.
pub fn classify_position(x: DimVector, n: i64, length_bound: i64) -> Position {
    let in_list = |list: Vec<DimVector>| list.into_iter().take_while(|d| d.length() <= length_bound).any(|d| d == x);
    // lengths grow with r for n >= 2, so length_bound + 2 terms are plenty
    let terms = (length_bound.max(0) as usize) + 2;
    if in_list(preprojective_dims(n, terms)) {
        Position::Preprojective
    } else if in_list(preinjective_dims(n, terms)) {
        Position::Preinjective
    } else {
        Position::Regular
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ID: Mat2 = [[1, 0], [0, 1]];

    #[test]
    fn coxeter_examples() {
        assert_eq!(coxeter(3), [[8, 3], [-3, -1]]);
        for n in 1..=8 {
            assert_eq!(mat_mul(&coxeter(n), &coxeter_inv(n)), ID);
            let c = cartan(n);
            let cit = unimodular_inverse(&transpose(&c)).unwrap();
            let phi = mat_mul(&cit, &c).map(|r| r.map(|x| -x));
            assert_eq!(phi, coxeter(n));
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_form(DimVector::new(1, 1), DimVector::new(5, 2), 3), 1);
        assert_eq!(euler_form(DimVector::new(2, 1), DimVector::new(5, 2), 3), 0);
        assert_eq!(euler_form(DimVector::new(4, 7), DimVector::new(0, 0), 3), 0);
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_dim(DimVector::new(1, 1), 3), DimVector::new(5, 2));
        for n in 3..=8 {
            assert_eq!(tau_dim(DimVector::new(1, 1), n), DimVector::new(n * n - n - 1, n - 1));
            assert_eq!(tau_inv_dim(DimVector::new(0, 1), n), DimVector::new(n, n * n - 1));
        }
    }

    #[test]
    fn sequences_n3() {
        let p = preprojective_dims(3, 4);
        assert_eq!(p, vec![DimVector::new(0, 1), DimVector::new(1, 3), DimVector::new(3, 8), DimVector::new(8, 21)]);
        let q = preinjective_dims(3, 3);
        assert_eq!(q, vec![DimVector::new(1, 0), DimVector::new(3, 1), DimVector::new(8, 3), DimVector::new(21, 8)]);
        assert_eq!(q[1].scale(3), q[2] + q[0]);
    }

    #[test]
    fn positions() {
        assert_eq!(classify_position(DimVector::new(3, 8), 3, 20), Position::Preprojective);
        assert_eq!(classify_position(DimVector::new(8, 3), 3, 20), Position::Preinjective);
        assert_eq!(classify_position(DimVector::new(1, 1), 3, 20), Position::Regular);
        assert_eq!(classify_position(DimVector::new(0, 1), 3, 20), Position::Preprojective);
        assert_eq!(classify_position(DimVector::new(1, 0), 3, 20), Position::Preinjective);
    }
}
