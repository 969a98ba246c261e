//! Fixed-size complex linear algebra for the 2x2, 3x3 and 4x4 Hermitian
//! matrices that appear in two-qubit problems.
//!
//! Everything is stack-allocated and generic over the dimension `N`. The
//! eigensolver is a cyclic complex Jacobi scheme, which is unconditionally
//! convergent for Hermitian input and accurate to a few ulps at these sizes.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Maximum entrywise deviation `|M - M†|` tolerated as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in `[-PSD_TOL, 0)` are treated as zero where a PSD matrix is
/// required.
pub const PSD_TOL: f64 = 1e-10;

/// Jacobi sweep budget.
pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm, relative to the full Frobenius norm, at which
/// the Jacobi iteration stops.
pub const JACOBI_REL_TOL: f64 = 1e-14;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense `N x N` complex matrix, row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize>(pub [[C64; N]; N]);

pub type Matrix2 = Matrix<2>;
pub type Matrix3 = Matrix<3>;
pub type Matrix4 = Matrix<4>;

impl<const N: usize> Matrix<N> {
    pub fn zeros() -> Self {
        Matrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_diag(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    /// Builds a matrix from real entries.
    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = C64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn diag(&self) -> [f64; N] {
        let mut d = [0.0; N];
        for (i, x) in d.iter_mut().enumerate() {
            *x = self.0[i][i].re;
        }
        d
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn scale_c(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M_ij - conj(M_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..N {
            for j in i..N {
                dev = dev.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        dev
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `[A, B] = AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// `{A, B} = AB + BA`
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// Hermitian part `(M + M†)/2`; used to strip round-off before an
    /// eigendecomposition.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(0.5)
    }

    fn ensure_hermitian(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let dev = self.hermiticity_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(())
    }
}

impl Matrix<2> {
    /// Kronecker product of two single-qubit operators.
    pub fn kron(&self, other: &Matrix<2>) -> Matrix<4> {
        let mut m = Matrix::<4>::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = self.0[i][j] * other.0[k][l];
                    }
                }
            }
        }
        m
    }
}

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> fmt::Debug for Matrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{N}> [")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign for Matrix<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

/// Eigen-decomposition `M = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigensystem<const N: usize> {
    /// Ascending.
    pub eigenvalues: [f64; N],
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: Matrix<N>,
}

impl<const N: usize> HermitianEigensystem<N> {
    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[N - 1]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Rebuilds `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Matrix<N> {
        let v = &self.eigenvectors;
        let mut out = Matrix::<N>::zeros();
        for k in 0..N {
            let fk = f(self.eigenvalues[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..N {
                let vik = v.0[i][k] * fk;
                for j in 0..N {
                    out.0[i][j] += vik * v.0[j][k].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix<N> {
        self.map_spectrum(|x| x)
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix
/// by cyclic complex Jacobi rotations.
pub fn hermitian_eigensystem<const N: usize>(m: &Matrix<N>) -> Result<HermitianEigensystem<N>> {
    m.ensure_hermitian()?;
    let mut a = m.hermitian_part();
    let mut v = Matrix::<N>::identity();
    let scale = a.frobenius_norm();
    let threshold = JACOBI_REL_TOL * scale;

    let off_norm = |a: &Matrix<N>| -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += a.0[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = scale == 0.0 || off_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::ConvergenceFailure {
                sweeps,
                off_diagonal: off_norm(&a),
            });
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_norm(&a) <= threshold;
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a.0[i][i].re.total_cmp(&a.0[j][j].re));
    let eigenvalues = std::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let mut eigenvectors = Matrix::<N>::zeros();
    for (k, &src) in order.iter().enumerate() {
        for i in 0..N {
            eigenvectors.0[i][k] = v.0[i][src];
        }
    }
    Ok(HermitianEigensystem {
        eigenvalues,
        eigenvectors,
    })
}

/// One Jacobi rotation annihilating `a[p][q]`: `a <- G† a G`, `v <- v G` with
/// `G = D R`, where `D` removes the phase of `a[p][q]` and `R` is the real
/// symmetric Jacobi rotation.
fn rotate<const N: usize>(a: &mut Matrix<N>, v: &mut Matrix<N>, p: usize, q: usize) {
    let apq = a.0[p][q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // Columns p and q of G: G[p][p] = c, G[p][q] = s,
    // G[q][p] = -s e^{-iφ}, G[q][q] = c e^{-iφ}.
    let gpp = C64::new(c, 0.0);
    let gpq = C64::new(s, 0.0);
    let gqp = -phase.conj() * s;
    let gqq = phase.conj() * c;

    // a <- a G (columns p, q)
    for i in 0..N {
        let aip = a.0[i][p];
        let aiq = a.0[i][q];
        a.0[i][p] = aip * gpp + aiq * gqp;
        a.0[i][q] = aip * gpq + aiq * gqq;
    }
    // a <- G† a (rows p, q)
    for j in 0..N {
        let apj = a.0[p][j];
        let aqj = a.0[q][j];
        a.0[p][j] = gpp.conj() * apj + gqp.conj() * aqj;
        a.0[q][j] = gpq.conj() * apj + gqq.conj() * aqj;
    }
    a.0[p][q] = ZERO;
    a.0[q][p] = ZERO;
    a.0[p][p].im = 0.0;
    a.0[q][q].im = 0.0;

    for i in 0..N {
        let vip = v.0[i][p];
        let viq = v.0[i][q];
        v.0[i][p] = vip * gpp + viq * gqp;
        v.0[i][q] = vip * gpq + viq * gqq;
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt<const N: usize>(m: &Matrix<N>) -> Result<Matrix<N>> {
    let eig = hermitian_eigensystem(m)?;
    let min = eig.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(eig.map_spectrum(|x| x.max(0.0).sqrt()))
}

/// `‖M‖₁ = Σ|λᵢ|` for Hermitian `M`.
pub fn trace_norm<const N: usize>(m: &Matrix<N>) -> Result<f64> {
    let eig = hermitian_eigensystem(m)?;
    Ok(eig.eigenvalues.iter().map(|x| x.abs()).sum())
}

/// Partial transpose on the second qubit:
/// `⟨i l|ρ^{T_B}|j k⟩ = ⟨i k|ρ|j l⟩`.
pub fn partial_transpose_b(m: &Matrix4) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + l][2 * j + k] = m.0[2 * i + k][2 * j + l];
                }
            }
        }
    }
    out
}

/// Partial transpose on the first qubit.
pub fn partial_transpose_a(m: &Matrix4) -> Matrix4 {
    let mut out = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * j + k][2 * i + l] = m.0[2 * i + k][2 * j + l];
                }
            }
        }
    }
    out
}

/// Reduced state of the first qubit, `tr_B ρ`.
pub fn partial_trace_b(m: &Matrix4) -> Matrix2 {
    let mut out = Matrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out.0[i][j] = m.0[2 * i][2 * j] + m.0[2 * i + 1][2 * j + 1];
        }
    }
    out
}

/// Reduced state of the second qubit, `tr_A ρ`.
pub fn partial_trace_a(m: &Matrix4) -> Matrix2 {
    let mut out = Matrix2::zeros();
    for k in 0..2 {
        for l in 0..2 {
            out.0[k][l] = m.0[k][l] + m.0[2 + k][2 + l];
        }
    }
    out
}

/// Pauli matrices `σx, σy, σz`.
pub fn pauli() -> [Matrix2; 3] {
    let i = C64::new(0.0, 1.0);
    [
        Matrix([[ZERO, ONE], [ONE, ZERO]]),
        Matrix([[ZERO, -i], [i, ZERO]]),
        Matrix([[ONE, ZERO], [ZERO, -ONE]]),
    ]
}
