//! Dense square matrices over the rationals, with exact determinants,
//! characteristic polynomials and a complete positive-semidefiniteness test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{common_denominator, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    size: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rational) -> RatMatrix {
        let mut data = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                data.push(f(i, j));
            }
        }
        RatMatrix { size, data }
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> RatMatrix {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix must be square"
        );
        RatMatrix {
            size,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(size: usize) -> RatMatrix {
        Self::from_fn(size, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.size + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The submatrix keeping rows and columns listed in `idx`.
    pub fn principal_submatrix(&self, idx: &[usize]) -> RatMatrix {
        Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.size, other.size);
        Self::from_fn(self.size, |i, j| {
            (0..self.size).fold(Rational::zero(), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        })
    }

    pub fn trace(&self) -> Rational {
        (0..self.size).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        assert_eq!(v.len(), self.size);
        let mut acc = Rational::zero();
        for i in 0..self.size {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.size {
                acc += &v[i] * self.get(i, j) * &v[j];
            }
        }
        acc
    }

    /// Exact determinant: scale to an integer matrix by the common
    /// denominator, run fraction-free Bareiss elimination, then divide the
    /// scale back out.
    pub fn det(&self) -> Rational {
        let n = self.size;
        if n == 0 {
            return Rational::one();
        }
        let scale = common_denominator(&self.data);
        let mut m: Vec<BigInt> = self
            .data
            .iter()
            .map(|x| x.numer() * (&scale / x.denom()))
            .collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return Rational::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&pivot * &m[i * n + j] - &m[i * n + k] * &m[k * n + j]) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        let mut det = m[n * n - 1].clone();
        if negate {
            det = -det;
        }
        Rational::new(det, scale.pow(n as u32))
    }

    /// Coefficients of `det(xI - M)` in ascending degree, computed by the
    /// Faddeev-LeVerrier recursion. The last entry is always 1.
    pub fn char_poly(&self) -> Vec<Rational> {
        let n = self.size;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        // aux holds M_k; M_0 = 0, M_k = M M_{k-1} + c_{n-k+1} I
        let mut aux = RatMatrix::from_fn(n, |_, _| Rational::zero());
        for k in 1..=n {
            let prev_coeff = coeffs[n - k + 1].clone();
            let mut next = self.mul(&aux);
            for i in 0..n {
                next.data[i * n + i] += &prev_coeff;
            }
            aux = next;
            let am = self.mul(&aux);
            coeffs[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
        }
        coeffs
    }

    /// Decides `M >= 0` for a symmetric matrix from the signs of its
    /// characteristic polynomial: with
    /// `det(xI - M) = x^n - e_1 x^{n-1} + e_2 x^{n-2} - ...`,
    /// all roots are real, and they are all nonnegative iff every `e_k >= 0`.
    pub fn psd_check(&self) -> PsdVerdict {
        assert!(self.is_symmetric(), "PSD test needs a symmetric matrix");
        let n = self.size;
        let coeffs = self.char_poly();
        let violated = (1..=n).find(|&k| {
            let e_k = if k % 2 == 0 {
                coeffs[n - k].clone()
            } else {
                -&coeffs[n - k]
            };
            e_k.is_negative()
        });
        match violated {
            None => PsdVerdict::Psd,
            Some(index) => PsdVerdict::NotPsd(NotPsdCertificate {
                coefficient_index: index,
                witness: self.negative_direction(),
            }),
        }
    }

    /// A rational vector `v` with `v^T M v < 0`, or `None` when `M` is
    /// positive semidefinite.
    ///
    /// Symmetric elimination: each positive diagonal pivot is eliminated by a
    /// congruence `T^T M T`, tracking `T`. A negative diagonal entry, or a
    /// zero diagonal with a nonzero off-diagonal partner, exhibits the vector.
    pub fn negative_direction(&self) -> Option<Vec<Rational>> {
        assert!(
            self.is_symmetric(),
            "witness search needs a symmetric matrix"
        );
        let n = self.size;
        let mut a = self.data.clone();
        // Column j of `basis` is the original-coordinate vector behind index j.
        let mut basis = RatMatrix::identity(n).data;
        let column = |basis: &[Rational], j: usize| -> Vec<Rational> {
            (0..n).map(|i| basis[i * n + j].clone()).collect()
        };
        let mut alive: Vec<usize> = (0..n).collect();

        while !alive.is_empty() {
            if let Some(&i) = alive.iter().find(|&&i| a[i * n + i].is_negative()) {
                return Some(column(&basis, i));
            }
            let Some(&p) = alive.iter().find(|&&i| a[i * n + i].is_positive()) else {
                // All remaining diagonal entries vanish.
                for &i in &alive {
                    for &j in &alive {
                        let off = &a[i * n + j];
                        if i != j && !off.is_zero() {
                            let sign = if off.is_positive() {
                                -Rational::one()
                            } else {
                                Rational::one()
                            };
                            let (vi, vj) = (column(&basis, i), column(&basis, j));
                            return Some(vi.iter().zip(&vj).map(|(x, y)| x + &sign * y).collect());
                        }
                    }
                }
                return None;
            };
            let pivot = a[p * n + p].clone();
            for &j in alive.iter().filter(|&&j| j != p) {
                let factor = &a[p * n + j] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                // Column op then row op keeps the matrix symmetric.
                for r in 0..n {
                    let t = &factor * &a[r * n + p];
                    a[r * n + j] -= t;
                }
                for c in 0..n {
                    let t = &factor * &a[p * n + c];
                    a[j * n + c] -= t;
                }
                for r in 0..n {
                    let t = &factor * &basis[r * n + p];
                    basis[r * n + j] -= t;
                }
            }
            alive.retain(|&i| i != p);
        }
        None
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Evidence that a symmetric matrix is not positive semidefinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotPsdCertificate {
    /// Smallest `k` with `e_k < 0` in the characteristic polynomial.
    pub coefficient_index: usize,
    /// A vector with negative quadratic form.
    pub witness: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdVerdict {
    Psd,
    NotPsd(NotPsdCertificate),
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd)
    }
}
