// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices for the small dimensions this crate works with.
//!
//! Every state and operator is a [`ComplexMatrix`] stored row-major. The
//! routines here (Kronecker product, partial trace, Hermitian
//! eigendecomposition) are the only linear algebra the rest of the crate
//! needs, so they are implemented directly rather than pulled from a general
//! linear-algebra package.
//!
//! Tensor-factor convention: in `kron(a, b)` the factor `a` is the slower
//! (more significant) index, so `|i⟩ ⊗ |j⟩` sits at row `i·dim(b) + j`.
//! [`partial_trace`] uses the same convention for its [`DimList`].

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::Real;

/// Largest row or column count [`kron`] will produce.
pub const MAX_KRON_DIM: usize = 4096;

/// Largest dimension accepted by the Hermitian eigensolver.
pub const MAX_EIGEN_DIM: usize = 16;

const MAX_JACOBI_SWEEPS: usize = 100;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Contract(format!("non-finite entry at ({}, {})", k / cols, k % cols)));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[T]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Complex::new(T::zero(), T::zero()))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { Complex::new(T::one(), T::zero()) } else { Complex::new(T::zero(), T::zero()) },
        )
    }

    /// Square diagonal matrix with the given real diagonal.
    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(values[i], T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    /// Outer product `|ψ⟩⟨ψ|` of a (not necessarily normalized) ket.
    pub fn projector(ket: &[Complex<T>]) -> Self {
        let n = ket.len();
        Self::from_fn(n, n, |i, j| ket[i] * ket[j].conj())
    }

    /// Outer product `|ψ⟩⟨φ|`.
    pub fn outer(ket: &[Complex<T>], bra: &[Complex<T>]) -> Self {
        Self::from_fn(ket.len(), bra.len(), |i, j| ket[i] * bra[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Sum of the diagonal. Panics on non-square input.
    pub fn trace(&self) -> Complex<T> {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    pub fn scale(&self, factor: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    pub fn scale_complex(&self, factor: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "subtract")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)] + a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self − other`; infinite if the shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.rows != other.rows || self.cols != other.cols {
            return T::infinity();
        }
        self.data.iter().zip(&other.data).map(|(&a, &b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Largest entrywise |m − m†|; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        assert!(!indices.is_empty(), "empty index set");
        Self::from_fn(indices.len(), indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            Err(Error::Dimension(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        } else {
            Ok(())
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real> ComplexMatrix<T> {
    pub(crate) fn real_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).re.as_f64()).collect()).collect()
    }

    pub(crate) fn imag_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).im.as_f64()).collect()).collect()
    }
}

/// Serialized as `{"re": [[...]], "im": [[...]]}`, row-major.
impl<T: Real> Serialize for ComplexMatrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ComplexMatrix", 2)?;
        s.serialize_field("re", &self.real_rows())?;
        s.serialize_field("im", &self.imag_rows())?;
        s.end()
    }
}

/// Ordered tensor-factor dimensions annotating a square matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct DimList(Vec<usize>);

impl DimList {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Dimension("dimension list is empty".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Dimension(format!("zero factor dimension in {dims:?}")));
        }
        Ok(Self(dims))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total dimension (product of factors).
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Factors of a tensor product: `self` followed by `other`.
    pub fn concat(&self, other: &DimList) -> DimList {
        DimList(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl From<&[usize]> for DimList {
    /// Panics on an empty list or a zero factor; use [`DimList::new`] for
    /// untrusted input.
    fn from(dims: &[usize]) -> Self {
        DimList::new(dims.to_vec()).expect("valid dimension list")
    }
}

/// Kronecker product `a ⊗ b` with the default size limit.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    kron_with_limit(a, b, MAX_KRON_DIM)
}

pub fn kron_with_limit<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    max_dim: usize,
) -> Result<ComplexMatrix<T>> {
    let rows = a.rows.checked_mul(b.rows);
    let cols = a.cols.checked_mul(b.cols);
    let (rows, cols) = match (rows, cols) {
        (Some(r), Some(c)) if r <= max_dim && c <= max_dim => (r, c),
        _ => {
            return Err(Error::Dimension(format!(
                "kron of {}x{} and {}x{} exceeds the {max_dim} limit",
                a.rows, a.cols, b.rows, b.cols
            )))
        }
    };
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| a.get(i / b.rows, j / b.cols) * b.get(i % b.rows, j % b.cols)))
}

/// Kronecker product of a sequence of matrices, left to right.
pub fn kron_all<T: Real>(factors: &[&ComplexMatrix<T>]) -> Result<ComplexMatrix<T>> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::Dimension("kron of an empty factor list".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, m| kron(&acc, m))
}

/// Partial trace keeping the factors listed in `keep`.
///
/// The result is ordered by ascending factor index, whatever order `keep`
/// is given in.
pub fn partial_trace<T: Real>(rho: &ComplexMatrix<T>, dims: &DimList, keep: &[usize]) -> Result<ComplexMatrix<T>> {
    if !rho.is_square() {
        return Err(Error::Dimension(format!("partial trace of a non-square {}x{} matrix", rho.rows, rho.cols)));
    }
    if dims.total() != rho.rows {
        return Err(Error::Dimension(format!(
            "factor dimensions {:?} do not multiply to {}",
            dims.as_slice(),
            rho.rows
        )));
    }
    if keep.is_empty() {
        return Err(Error::Usage("partial trace must keep at least one factor".into()));
    }
    if let Some(&k) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::Dimension(format!("factor index {k} out of range for {} factors", dims.len())));
    }

    let d = dims.as_slice();
    let mut strides = vec![1usize; d.len()];
    for k in (0..d.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * d[k + 1];
    }
    let kept: Vec<usize> = (0..d.len()).filter(|k| keep.contains(k)).collect();
    let traced: Vec<usize> = (0..d.len()).filter(|k| !keep.contains(k)).collect();

    let kept_offsets = offsets(d, &strides, &kept);
    let traced_offsets = offsets(d, &strides, &traced);

    let n = kept_offsets.len();
    Ok(ComplexMatrix::from_fn(n, n, |a, b| {
        traced_offsets
            .iter()
            .map(|&t| rho.get(kept_offsets[a] + t, kept_offsets[b] + t))
            .fold(Complex::new(T::zero(), T::zero()), |x, y| x + y)
    }))
}

/// Flat-index offsets of every multi-index over `factors`, in row-major order
/// of those factors.
fn offsets(dims: &[usize], strides: &[usize], factors: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &k in factors {
        out = out.iter().flat_map(|&base| (0..dims[k]).map(move |i| base + i * strides[k])).collect();
    }
    out
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    /// Ascending.
    pub values: Vec<T>,
    /// Unitary matrix whose column `k` is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix<T>,
}

/// Ascending eigenvalues of a Hermitian matrix of dimension at most 16.
pub fn hermitian_eigenvalues<T: Real>(h: &ComplexMatrix<T>) -> Result<Vec<T>> {
    hermitian_eigen(h).map(|e| e.values)
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `h[p][q]` with a
/// diagonal unitary and then applies a real Givens rotation, so the
/// accumulated transform stays unitary.
pub fn hermitian_eigen<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    if !h.is_square() {
        return Err(Error::Dimension(format!("eigenvalues of a non-square {}x{} matrix", h.rows, h.cols)));
    }
    let n = h.rows;
    if n > MAX_EIGEN_DIM {
        return Err(Error::Dimension(format!("eigensolver supports dimension <= {MAX_EIGEN_DIM}, got {n}")));
    }
    let defect = h.hermiticity_defect();
    if defect > T::HERMITIAN_TOL {
        return Err(Error::Contract(format!("matrix is not Hermitian (max |h - h^dagger| = {defect:e})")));
    }

    let half = T::lit(0.5);
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (h.get(i, j) + h.get(j, i).conj()) * half);
    let mut v = ComplexMatrix::<T>::identity(n);
    let zero = Complex::new(T::zero(), T::zero());

    let frobenius = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let target = T::epsilon() * frobenius;

    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= target || off == T::zero() {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let modulus = apq.norm();
                if modulus == T::zero() {
                    continue;
                }
                let phase = apq / modulus;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;

                let theta = (aqq - app) / (T::lit(2.0) * modulus);
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                // U on the (p, q) plane:
                //   [ c              s             ]
                //   [ -s·conj(phase) c·conj(phase) ]
                let u_pp = Complex::new(c, T::zero());
                let u_pq = Complex::new(s, T::zero());
                let u_qp = phase.conj() * (-s);
                let u_qq = phase.conj() * c;

                // a <- a·U
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a[(k, p)] = akp * u_pp + akq * u_qp;
                    a[(k, q)] = akp * u_pq + akq * u_qq;
                }
                // a <- U†·a
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[(p, q)] = zero;
                a[(q, p)] = zero;
                a[(p, p)] = Complex::new(a.get(p, p).re, T::zero());
                a[(q, q)] = Complex::new(a.get(q, q).re, T::zero());

                // v <- v·U
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v[(k, p)] = vkp * u_pp + vkq * u_qp;
                    v[(k, q)] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target * T::lit(16.0) {
        return Err(Error::Contract(format!("Jacobi iteration did not converge in {MAX_JACOBI_SWEEPS} sweeps")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).expect("finite eigenvalue"));
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v.get(i, order[k]));
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows;
    let mut sum = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum = sum + a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn sigma_z() -> ComplexMatrix<f64> {
        ComplexMatrix::diag(&[1.0, -1.0])
    }

    fn phi_plus() -> ComplexMatrix<f64> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::projector(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)])
    }

    #[test]
    fn new_rejects_bad_lengths_and_non_finite() {
        assert!(matches!(ComplexMatrix::<f64>::new(2, 2, vec![c(1.0, 0.0); 3]), Err(Error::Dimension(_))));
        assert!(matches!(ComplexMatrix::<f64>::new(0, 2, vec![]), Err(Error::Dimension(_))));
        let mut data = vec![c(0.0, 0.0); 4];
        data[3] = c(f64::NAN, 0.0);
        assert!(matches!(ComplexMatrix::new(2, 2, data), Err(Error::Contract(_))));
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::diag(&[1.0, 0.0]);
        let p1 = ComplexMatrix::diag(&[0.0, 1.0]);
        assert_eq!(kron(&p0, &p1).unwrap(), ComplexMatrix::diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_sigma_z_pair() {
        // Blocks: (+1)·σz on the top left, (−1)·σz on the bottom right.
        let zz = kron(&sigma_z(), &sigma_z()).unwrap();
        assert_eq!(zz, ComplexMatrix::diag(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_entry_layout_for_rectangular_factors() {
        let a = ComplexMatrix::from_real(1, 2, &[2.0, 3.0]).unwrap();
        let b = ComplexMatrix::from_real(2, 1, &[5.0, 7.0]).unwrap();
        let k = kron(&a, &b).unwrap();
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, ComplexMatrix::from_real(2, 2, &[10.0, 15.0, 14.0, 21.0]).unwrap());
    }

    #[test]
    fn kron_respects_limit() {
        let a = ComplexMatrix::<f64>::zeros(64, 1);
        let b = ComplexMatrix::<f64>::zeros(128, 1);
        assert!(matches!(kron(&a, &b), Err(Error::Dimension(_))));
        assert!(kron_with_limit(&a, &b, 8192).is_ok());
        let small = ComplexMatrix::<f64>::identity(4);
        assert!(matches!(kron_with_limit(&small, &small, 15), Err(Error::Dimension(_))));
    }

    #[test]
    fn partial_trace_of_phi_plus_is_maximally_mixed() {
        let dims = DimList::from(&[2, 2][..]);
        let expected = ComplexMatrix::diag(&[0.5, 0.5]);
        for keep in [0, 1] {
            let r = partial_trace(&phi_plus(), &dims, &[keep]).unwrap();
            assert!(r.max_abs_diff(&expected) <= 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_product_state_recovers_factor() {
        let rho_a = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                c([0.5, 0.3, 0.2][i], 0.0)
            } else if i < j {
                c(0.05, 0.02)
            } else {
                c(0.05, -0.02)
            }
        });
        let rho_b = ComplexMatrix::diag(&[0.25, 0.75]);
        let joint = kron(&rho_a, &rho_b).unwrap();
        let dims = DimList::new(vec![3, 2]).unwrap();
        let back = partial_trace(&joint, &dims, &[0]).unwrap();
        assert!(back.max_abs_diff(&rho_a) <= 1e-15);
        let back_b = partial_trace(&joint, &dims, &[1]).unwrap();
        assert!(back_b.max_abs_diff(&rho_b) <= 1e-15);
    }

    #[test]
    fn partial_trace_of_scaled_composite_over_fock_factors() {
        let eta = 0.5;
        let fock11 = ComplexMatrix::diag(&[0.0, 0.0, 0.0, 1.0]);
        let joint = kron(&phi_plus().scale(eta * eta), &fock11).unwrap();
        let dims = DimList::from(&[2, 2, 2, 2][..]);
        let r = partial_trace(&joint, &dims, &[0, 1]).unwrap();
        assert!(r.max_abs_diff(&phi_plus().scale(eta * eta)) <= 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = phi_plus();
        assert!(matches!(partial_trace(&rho, &DimList::from(&[2, 3][..]), &[0]), Err(Error::Dimension(_))));
        assert!(matches!(partial_trace(&rho, &DimList::from(&[2, 2][..]), &[]), Err(Error::Usage(_))));
        assert!(matches!(partial_trace(&rho, &DimList::from(&[2, 2][..]), &[2]), Err(Error::Dimension(_))));
    }

    #[test]
    fn partial_trace_keep_all_is_identity_map() {
        let rho = phi_plus();
        let r = partial_trace(&rho, &DimList::from(&[2, 2][..]), &[1, 0]).unwrap();
        assert_eq!(r, rho);
    }

    #[test]
    fn eigenvalues_of_simple_inputs() {
        let ev = hermitian_eigenvalues(&ComplexMatrix::<f64>::diag(&[0.7, 0.3])).unwrap();
        assert!((ev[0] - 0.3).abs() < 1e-15 && (ev[1] - 0.7).abs() < 1e-15);

        let ev = hermitian_eigenvalues(&ComplexMatrix::<f64>::identity(2).scale(0.5)).unwrap();
        assert_eq!(ev, vec![0.5, 0.5]);

        // Rank-one projector: characteristic polynomial λ³(λ − 1).
        let ev = hermitian_eigenvalues(&phi_plus()).unwrap();
        let expected = [0.0, 0.0, 0.0, 1.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{ev:?}");
        }
    }

    #[test]
    fn eigenvalues_of_sigma_y() {
        let sy = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
        let e = hermitian_eigen(&sy).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        let d = ComplexMatrix::diag(&e.values);
        let rebuilt = e.vectors.matmul(&d).unwrap().matmul(&e.vectors.adjoint()).unwrap();
        assert!(rebuilt.max_abs_diff(&sy) < 1e-14);
    }

    #[test]
    fn eigen_rejects_non_hermitian_and_oversized() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::Contract(_))));
        let big = ComplexMatrix::<f64>::identity(17);
        assert!(matches!(hermitian_eigenvalues(&big), Err(Error::Dimension(_))));
        let rect = ComplexMatrix::<f64>::zeros(2, 3);
        assert!(matches!(hermitian_eigenvalues(&rect), Err(Error::Dimension(_))));
    }

    #[test]
    fn eigen_works_in_single_precision() {
        let m = ComplexMatrix::<f32>::diag(&[0.25, 0.75]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!((ev[0] - 0.25).abs() < 1e-6 && (ev[1] - 0.75).abs() < 1e-6);
    }
}
