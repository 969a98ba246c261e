//! Entanglement, discord-like correlations and coherence of two-qubit states.
//!
//! Most quantifiers come in two flavours: a general definition that works on
//! any [`DensityMatrix`] through eigendecompositions, and a closed form for
//! X states. The two must agree; the closed forms are what trajectories use.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::linalg::{
    hermitian_eigensystem, partial_trace_a, partial_trace_b, partial_transpose_b, pauli, psd_sqrt,
    trace_norm, Matrix, Matrix2, Matrix3, Matrix4,
};
use crate::states::{is_x_shaped, DensityMatrix, DickeState, XState, X_SHAPE_TOL};

/// Band around `x = 0` in which the trace-norm MIN switches to the
/// `max{|u1|, |u2|, |u3|}` branch.
pub const MIN_X_TOL: f64 = 1e-9;

/// Slack allowed on the range invariants of [`CorrelationSet`].
pub const RANGE_SLACK: f64 = 1e-10;

/// One record of every quantifier for a single state.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CorrelationSet {
    pub concurrence: f64,
    pub negativity: f64,
    pub log_negativity: f64,
    pub lqu: f64,
    pub min_trace: f64,
    pub correlated_coherence: f64,
    pub l1_coherence: f64,
}

/// Selects one field of a [`CorrelationSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Concurrence,
    Negativity,
    LogNegativity,
    Lqu,
    MinTrace,
    CorrelatedCoherence,
    L1Coherence,
}

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::Concurrence,
        Measure::Negativity,
        Measure::LogNegativity,
        Measure::Lqu,
        Measure::MinTrace,
        Measure::CorrelatedCoherence,
        Measure::L1Coherence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Negativity => "negativity",
            Measure::LogNegativity => "log_negativity",
            Measure::Lqu => "lqu",
            Measure::MinTrace => "min",
            Measure::CorrelatedCoherence => "ccc",
            Measure::L1Coherence => "l1_coherence",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A violated range invariant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RangeViolation {
    pub measure: Measure,
    pub value: f64,
}

impl fmt::Display for RangeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} is out of range", self.measure, self.value)
    }
}

impl CorrelationSet {
    pub fn get(&self, m: Measure) -> f64 {
        match m {
            Measure::Concurrence => self.concurrence,
            Measure::Negativity => self.negativity,
            Measure::LogNegativity => self.log_negativity,
            Measure::Lqu => self.lqu,
            Measure::MinTrace => self.min_trace,
            Measure::CorrelatedCoherence => self.correlated_coherence,
            Measure::L1Coherence => self.l1_coherence,
        }
    }

    /// Checks `C, U ∈ [0, 1]`, `N ∈ [0, ½]`, `L_N ∈ [0, 1]` and
    /// nonnegativity of the rest.
    pub fn check_ranges(&self) -> std::result::Result<(), RangeViolation> {
        for m in Measure::ALL {
            let v = self.get(m);
            let upper = match m {
                Measure::Concurrence | Measure::Lqu | Measure::LogNegativity => 1.0,
                Measure::Negativity => 0.5,
                _ => f64::INFINITY,
            };
            if !v.is_finite() || v < -RANGE_SLACK || v > upper + RANGE_SLACK {
                return Err(RangeViolation { measure: m, value: v });
            }
        }
        Ok(())
    }

    /// Smallest slack over the concurrence/negativity and
    /// concurrence/log-negativity bound chains. Negative means violated.
    pub fn bound_slack(&self) -> f64 {
        let (nlo, nhi) = negativity_bounds(self.concurrence);
        let (llo, lhi) = log_negativity_bounds(self.concurrence);
        [
            self.negativity - nlo,
            nhi - self.negativity,
            self.log_negativity - llo,
            lhi - self.log_negativity,
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
    }
}

/// `((√((1-C)² + C²) - (1-C))/2, C/2)`: the range of negativity compatible
/// with concurrence `C`.
pub fn negativity_bounds(c: f64) -> (f64, f64) {
    let lo = (((1.0 - c) * (1.0 - c) + c * c).sqrt() - (1.0 - c)) / 2.0;
    (lo, c / 2.0)
}

/// `(log₂(√((1-C)² + C²) + C), log₂(C + 1))`.
pub fn log_negativity_bounds(c: f64) -> (f64, f64) {
    let lo = (((1.0 - c) * (1.0 - c) + c * c).sqrt() + c).log2();
    (lo, (c + 1.0).log2())
}

// ---------------------------------------------------------------------------
// Concurrence

/// `σy ⊗ σy`
fn sigma_yy() -> Matrix4 {
    let [_, y, _] = pauli();
    y.kron(&y)
}

/// Wootters concurrence from the spectrum of `S = √ρ ρ̃ √ρ`,
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn concurrence_general(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    let yy = sigma_yy();
    let flipped = yy * m.conj() * yy;
    let root = psd_sqrt(m)?;
    let s = (root * flipped * root).hermitian_part();
    let eig = hermitian_eigensystem(&s)?;
    let mut l = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// `(C1, C2)` with `C1 = 2(|ρ14| - √(ρ22ρ33))` and `C2 = 2(|ρ32| - √(ρ11ρ44))`.
pub fn concurrence_components(x: &XState) -> (f64, f64) {
    let c1 = 2.0 * (x.rho14.norm() - (x.rho22 * x.rho33).max(0.0).sqrt());
    let c2 = 2.0 * (x.rho23.norm() - (x.rho11 * x.rho44).max(0.0).sqrt());
    (c1, c2)
}

pub fn concurrence_x(x: &XState) -> f64 {
    let (c1, c2) = concurrence_components(x);
    c1.max(c2).max(0.0)
}

/// Concurrence from the Dicke-basis populations and coherences.
pub fn concurrence_dicke(d: &DickeState) -> f64 {
    let half_sum = 0.5 * (d.ss + d.aa);
    let half_diff = 0.5 * (d.ss - d.aa);
    let c1 = 2.0 * (d.eg.norm() - (half_sum * half_sum - d.sa.re * d.sa.re).max(0.0).sqrt());
    let c2 = 2.0
        * ((half_diff * half_diff + d.sa.im * d.sa.im).sqrt() - (d.ee * d.gg).max(0.0).sqrt());
    c1.max(c2).max(0.0)
}

// ---------------------------------------------------------------------------
// Negativity

/// `max{0, -λmin(ρ^{T_B})}`
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose_b(rho.matrix());
    Ok((-hermitian_eigensystem(&pt)?.min_eigenvalue()).max(0.0))
}

/// `(‖ρ^{T_B}‖₁ - 1)/2`
pub fn negativity_trace_norm(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose_b(rho.matrix());
    Ok((trace_norm(&pt)? - 1.0) / 2.0)
}

/// Negativity of an X state. `ρ^{T_B}` is again X-shaped with the two
/// coherences exchanged, so its spectrum comes from two 2x2 blocks.
pub fn negativity_x(x: &XState) -> f64 {
    let outer = block_eigenvalues(x.rho11, x.rho44, x.rho23);
    let inner = block_eigenvalues(x.rho22, x.rho33, x.rho14);
    (-outer.0.min(inner.0)).max(0.0)
}

fn block_eigenvalues(a: f64, b: f64, off: C64) -> (f64, f64) {
    let mean = 0.5 * (a + b);
    let r = (0.25 * (a - b) * (a - b) + off.norm_sqr()).sqrt();
    (mean - r, mean + r)
}

/// `log₂(2N + 1) = log₂‖ρ^{T_B}‖₁`
pub fn log_negativity_from_negativity(n: f64) -> f64 {
    (2.0 * n + 1.0).log2()
}

pub fn log_negativity(rho: &DensityMatrix) -> Result<f64> {
    negativity(rho).map(log_negativity_from_negativity)
}

// ---------------------------------------------------------------------------
// Local quantum uncertainty

/// Nonzero entries of the `W` matrix of an X state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WMatrix {
    pub w11: f64,
    pub w22: f64,
    pub w33: f64,
    pub w12: f64,
}

impl WMatrix {
    /// Largest eigenvalue of the block structure
    /// `[[w11, w12, 0], [w12, w22, 0], [0, 0, w33]]`.
    pub fn max_eigenvalue(&self) -> f64 {
        let top = 0.5
            * (self.w11
                + self.w22
                + ((self.w11 - self.w22) * (self.w11 - self.w22) + 4.0 * self.w12 * self.w12)
                    .sqrt());
        top.max(self.w33)
    }

    pub fn to_array(&self) -> [[f64; 3]; 3] {
        [
            [self.w11, self.w12, 0.0],
            [self.w12, self.w22, 0.0],
            [0.0, 0.0, self.w33],
        ]
    }
}

/// `W_ij = tr(√ρ (σi⊗1) √ρ (σj⊗1))` for a given `√ρ`.
fn w_from_root(root: &Matrix4) -> [[f64; 3]; 3] {
    let id = Matrix2::identity();
    let sig = pauli().map(|s| s.kron(&id));
    let left: [Matrix4; 3] = std::array::from_fn(|i| *root * sig[i]);
    let mut w = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            w[i][j] = (left[i] * left[j]).trace().re;
        }
    }
    w
}

/// The full 3x3 `W` matrix from a numerically computed `√ρ`.
pub fn w_matrix(rho: &DensityMatrix) -> Result<[[f64; 3]; 3]> {
    Ok(w_from_root(&psd_sqrt(rho.matrix())?))
}

/// `√` of the PSD block `[[a, z], [z*, b]]`: `(M + √det 𝟙)/√(tr M + 2√det)`.
fn block_sqrt(a: f64, b: f64, z: C64) -> (f64, f64, C64) {
    let s = (a * b - z.norm_sqr()).max(0.0).sqrt();
    let t = (a.max(0.0) + b.max(0.0) + 2.0 * s).sqrt();
    if t == 0.0 {
        return (0.0, 0.0, C64::new(0.0, 0.0));
    }
    ((a.max(0.0) + s) / t, (b.max(0.0) + s) / t, z / t)
}

/// `√ρ` of an X state, blockwise.
pub fn x_state_sqrt(x: &XState) -> Matrix4 {
    let (s11, s44, s14) = block_sqrt(x.rho11, x.rho44, x.rho14);
    let (s22, s33, s23) = block_sqrt(x.rho22, x.rho33, x.rho23);
    let mut m = Matrix4::from_diag([s11, s22, s33, s44]);
    m[(0, 3)] = s14;
    m[(3, 0)] = s14.conj();
    m[(1, 2)] = s23;
    m[(2, 1)] = s23.conj();
    m
}

pub fn w_matrix_x(x: &XState) -> WMatrix {
    let w = w_from_root(&x_state_sqrt(x));
    WMatrix {
        w11: w[0][0],
        w22: w[1][1],
        w33: w[2][2],
        w12: 0.5 * (w[0][1] + w[1][0]),
    }
}

/// `U = 1 - λmax(W)` via the general 3x3 eigenproblem.
pub fn lqu(rho: &DensityMatrix) -> Result<f64> {
    let w = w_matrix(rho)?;
    let eig = hermitian_eigensystem(&Matrix3::from_real(w).hermitian_part())?;
    Ok((1.0 - eig.max_eigenvalue()).max(0.0))
}

/// LQU of an X state from the block form of `W`.
pub fn lqu_x(x: &XState) -> f64 {
    (1.0 - w_matrix_x(x).max_eigenvalue()).max(0.0)
}

// ---------------------------------------------------------------------------
// Measurement-induced nonlocality (trace norm)

/// `x = ρ11 + ρ22 - ρ33 - ρ44` and `u1, u2, u3` of the X-state MIN formula.
pub fn min_branch_parameters(x: &XState) -> (f64, [f64; 3]) {
    let a = x.rho14.norm();
    let b = x.rho23.norm();
    let xp = x.rho11 + x.rho22 - x.rho33 - x.rho44;
    let u = [
        2.0 * (a + b),
        2.0 * (b - a),
        x.rho11 - x.rho22 - x.rho33 + x.rho44,
    ];
    (xp, u)
}

/// Trace-norm MIN of an X state.
pub fn min_trace(x: &XState, x_tol: f64) -> f64 {
    let (xp, u) = min_branch_parameters(x);
    if xp.abs() > x_tol {
        2.0 * (x.rho14.norm() + x.rho23.norm())
    } else {
        u.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
    }
}

/// Trace-norm MIN by direct maximisation of `‖ρ - Π(ρ)‖₁` over local
/// projective measurements on the first qubit that leave `ρ_A` invariant.
///
/// With a nondegenerate `ρ_A` the only admissible measurement is its
/// eigenbasis. With `ρ_A ∝ 𝟙` every basis is admissible and the Bloch sphere
/// is searched: a coarse grid followed by a shrinking pattern search.
pub fn min_trace_general(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    let ra = partial_trace_b(m);
    let eig = hermitian_eigensystem(&ra)?;
    let disturbance = |v: [C64; 2]| -> Result<f64> {
        let p0 = projector(v);
        let p1 = Matrix2::identity() - p0;
        let id = Matrix2::identity();
        let (a, b) = (p0.kron(&id), p1.kron(&id));
        let measured = a * *m * a + b * *m * b;
        trace_norm(&(*m - measured).hermitian_part())
    };
    if eig.eigenvalues[1] - eig.eigenvalues[0] > 1e-9 {
        let v = eig.eigenvectors;
        return disturbance([v[(0, 0)], v[(1, 0)]]);
    }
    let dir = |theta: f64, phi: f64| {
        [
            C64::new((theta / 2.0).cos(), 0.0),
            C64::from_polar((theta / 2.0).sin(), phi),
        ]
    };
    let (nt, np) = (36usize, 72usize);
    let (dt, dp) = (std::f64::consts::PI / nt as f64, std::f64::consts::TAU / np as f64);
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for it in 0..=nt {
        for ip in 0..np {
            let (t, p) = (it as f64 * dt, ip as f64 * dp);
            let val = disturbance(dir(t, p))?;
            if val > best.0 {
                best = (val, t, p);
            }
        }
    }
    let (mut step_t, mut step_p) = (dt, dp);
    while step_t > 1e-10 {
        let mut improved = false;
        for (st, sp) in [(step_t, 0.0), (-step_t, 0.0), (0.0, step_p), (0.0, -step_p)] {
            let (t, p) = (best.1 + st, best.2 + sp);
            let val = disturbance(dir(t, p))?;
            if val > best.0 {
                best = (val, t, p);
                improved = true;
            }
        }
        if !improved {
            step_t *= 0.5;
            step_p *= 0.5;
        }
    }
    Ok(best.0)
}

fn projector(v: [C64; 2]) -> Matrix2 {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v = [v[0] / n, v[1] / n];
    Matrix([
        [v[0] * v[0].conj(), v[0] * v[1].conj()],
        [v[1] * v[0].conj(), v[1] * v[1].conj()],
    ])
}

// ---------------------------------------------------------------------------
// Coherence

/// Sum of off-diagonal magnitudes.
pub fn l1_norm_coherence<const N: usize>(m: &Matrix<N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    s
}

pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    l1_norm_coherence(rho.matrix())
}

/// `2(|ρ14| + |ρ23|)`: the reduced states of an X state are diagonal, so all
/// of the global coherence is correlated.
pub fn correlated_coherence(x: &XState) -> f64 {
    2.0 * (x.rho14.norm() + x.rho23.norm())
}

/// `C_l1(ρ) - C_l1(ρ_A) - C_l1(ρ_B)` for any state.
pub fn correlated_coherence_general(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    l1_norm_coherence(m)
        - l1_norm_coherence(&partial_trace_b(m))
        - l1_norm_coherence(&partial_trace_a(m))
}

// ---------------------------------------------------------------------------

/// All quantifiers for one state: closed forms when the state is X-shaped
/// within 1e-9, general definitions otherwise.
pub fn correlations(rho: &DensityMatrix) -> Result<CorrelationSet> {
    if is_x_shaped(rho, X_SHAPE_TOL) {
        let x = XState::from_density(rho, X_SHAPE_TOL)?;
        Ok(correlations_x(&x))
    } else {
        correlations_general(rho)
    }
}

pub fn correlations_x(x: &XState) -> CorrelationSet {
    let negativity = negativity_x(x);
    CorrelationSet {
        concurrence: concurrence_x(x),
        negativity,
        log_negativity: log_negativity_from_negativity(negativity),
        lqu: lqu_x(x),
        min_trace: min_trace(x, MIN_X_TOL),
        correlated_coherence: correlated_coherence(x),
        l1_coherence: l1_norm_coherence(&x.to_matrix()),
    }
}

pub fn correlations_general(rho: &DensityMatrix) -> Result<CorrelationSet> {
    let negativity = negativity(rho)?;
    Ok(CorrelationSet {
        concurrence: concurrence_general(rho)?,
        negativity,
        log_negativity: log_negativity_from_negativity(negativity),
        lqu: lqu(rho)?,
        min_trace: min_trace_general(rho)?,
        correlated_coherence: correlated_coherence_general(rho),
        l1_coherence: l1_coherence(rho),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_mixture, make_werner, random_x_state};
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bell_phi_plus() -> DensityMatrix {
        make_mixture(0.0).unwrap().to_density()
    }

    fn rng(seed: u64) -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(seed)
    }

    /// Steady state at γ = 0.1, Δ = 0.5, ω = 1, evaluated by hand.
    fn steady_reference() -> XState {
        let d = 0.01 + 4.0 * 1.25;
        XState::new(
            0.25 / d,
            0.25 / d,
            0.25 / d,
            (0.01 + 3.0 + 1.25) / d,
            c(-0.5 * 2.0 / d, -0.5 * 0.1 / d),
            c(0.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn concurrence_reference_values() {
        assert!((concurrence_general(&bell_phi_plus()).unwrap() - 1.0).abs() < 1e-8);
        assert!(concurrence_general(&DensityMatrix::maximally_mixed()).unwrap() < 1e-12);
        let mix = make_mixture(0.5).unwrap();
        assert!((concurrence_general(&mix.to_density()).unwrap() - 0.5).abs() < 1e-8);
        assert!((concurrence_x(&mix) - 0.5).abs() < 1e-15);
        assert!((concurrence_dicke(&mix.to_dicke()) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn werner_concurrence() {
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0 / 3f64.sqrt(), 0.9, 1.0] {
            let x = make_werner(p).unwrap();
            let want = (p - (1.0 - p) / 2.0).max(0.0);
            assert!((concurrence_x(&x) - want).abs() < 1e-15, "p = {p}");
        }
        assert!((concurrence_x(&make_werner(0.5).unwrap()) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn steady_state_concurrence() {
        let x = steady_reference();
        assert!((concurrence_x(&x) - 0.2999).abs() < 5e-5);
        assert!((concurrence_general(&x.to_density()).unwrap() - concurrence_x(&x)).abs() < 1e-9);
    }

    #[test]
    fn dicke_coherence_placement() {
        // purely imaginary ϱ_sa feeds C2
        let d = DickeState {
            ee: 0.05,
            gg: 0.05,
            ss: 0.45,
            aa: 0.45,
            eg: c(0.0, 0.0),
            sa: c(0.0, 0.3),
        };
        let x = XState::from_dicke(&d);
        let (c1, c2) = concurrence_components(&x);
        assert!(c2 > 0.0 && c1 < 0.0);
        assert!((concurrence_dicke(&d) - 2.0 * (0.3 - 0.05)).abs() < 1e-15);
        // purely real ϱ_sa only shrinks the C1 penalty
        let d_real = DickeState { sa: c(0.3, 0.0), eg: c(0.4, 0.0), ..d };
        let c1 = 2.0 * (0.4 - (0.45f64 * 0.45 - 0.09).sqrt());
        assert!((concurrence_dicke(&d_real) - c1).abs() < 1e-15);
        assert!((concurrence_x(&XState::from_dicke(&d_real)) - c1).abs() < 1e-15);
    }

    #[test]
    fn dicke_thermal_state_is_separable() {
        for nbar in [0.0, 0.1, 1.0, 5.0] {
            let m2 = (2.0 * nbar + 1.0f64).powi(2);
            let mid = nbar * (nbar + 1.0) / m2;
            let d = DickeState {
                ee: nbar * nbar / m2,
                gg: (nbar + 1.0) * (nbar + 1.0) / m2,
                ss: mid,
                aa: mid,
                eg: c(0.0, 0.0),
                sa: c(0.0, 0.0),
            };
            assert_eq!(concurrence_dicke(&d), 0.0);
        }
    }

    #[test]
    fn negativity_reference_values() {
        assert!((negativity(&bell_phi_plus()).unwrap() - 0.5).abs() < 1e-14);
        assert!((log_negativity(&bell_phi_plus()).unwrap() - 1.0).abs() < 1e-14);
        assert!(negativity(&DensityMatrix::maximally_mixed()).unwrap() == 0.0);
        let mix = make_mixture(0.5).unwrap().to_density();
        // ρ^{T_B} inner block [[1/2, 1/4], [1/4, 0]] has λmin = (1 - √2)/4
        let want = (2f64.sqrt() - 1.0) / 4.0;
        let n = negativity(&mix).unwrap();
        assert!((n - want).abs() < 1e-14);
        assert!((negativity_trace_norm(&mix).unwrap() - n).abs() < 1e-12);
        assert!((log_negativity(&mix).unwrap() - 0.2716).abs() < 5e-5);
        let ln = log_negativity(&steady_reference().to_density()).unwrap();
        assert!((ln - 0.3784).abs() < 5e-5);
    }

    #[test]
    fn product_state_has_no_negativity() {
        let x = XState::new(0.12, 0.28, 0.18, 0.42, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(negativity(&x.to_density()).unwrap(), 0.0);
        assert_eq!(negativity_x(&x), 0.0);
    }

    #[test]
    fn lqu_reference_values() {
        let singlet = make_werner(1.0).unwrap();
        assert!((lqu(&singlet.to_density()).unwrap() - 1.0).abs() < 1e-9);
        assert!((lqu_x(&singlet) - 1.0).abs() < 1e-12);
        let mix = make_mixture(0.5).unwrap();
        assert!((lqu_x(&mix) - 0.5).abs() < 1e-12);
        assert!((lqu(&mix.to_density()).unwrap() - 0.5).abs() < 1e-9);
        assert!((lqu_x(&steady_reference()) - 0.1597).abs() < 1e-4);
        for p in [-1.0 / 3.0, 0.0, 0.5, 1.0 / 3f64.sqrt(), 0.95] {
            let want = 1.0 - 0.5 * (1.0 - p + ((1.0 - p) * (1.0 + 3.0 * p)).sqrt());
            let got = lqu_x(&make_werner(p).unwrap());
            // at p = -1/3 the inner block is singular and √det amplifies rounding
            let tol = if p < 0.0 { 1e-7 } else { 1e-12 };
            assert!((got - want).abs() < tol, "p = {p}: {got} vs {want}");
        }
        for w in [0.0f64, 0.2, 0.5, 0.7, 1.0] {
            let want = (1.0 - w).min(1.0 - (w * (1.0 - w)).sqrt());
            let got = lqu_x(&make_mixture(w).unwrap());
            assert!((got - want).abs() < 1e-12, "w = {w}: {got} vs {want}");
        }
    }

    #[test]
    fn min_examples() {
        for p in [-1.0 / 3.0, 0.0, 0.5, 1.0] {
            let x = make_werner(p).unwrap();
            let (xp, u) = min_branch_parameters(&x);
            assert_eq!(xp, 0.0);
            assert!((u[0] - p.abs()).abs() < 1e-15);
            assert!((u[1].abs() - p.abs()).abs() < 1e-15);
            assert!((u[2] + p).abs() < 1e-15);
            assert!((min_trace(&x, MIN_X_TOL) - p.abs()).abs() < 1e-15);
            assert!((correlated_coherence(&x) - p.abs()).abs() < 1e-15);
        }
        let mix = make_mixture(0.5).unwrap();
        assert_eq!(min_branch_parameters(&mix).0, 0.5);
        assert_eq!(min_trace(&mix, MIN_X_TOL), 0.5);
        let product = XState::new(0.12, 0.28, 0.18, 0.42, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(min_trace(&product, MIN_X_TOL), 0.0);
    }

    #[test]
    fn min_general_agrees_on_both_branches() {
        let mix = make_mixture(0.5).unwrap();
        assert!((min_trace_general(&mix.to_density()).unwrap() - 0.5).abs() < 1e-12);
        for p in [-1.0 / 3.0, 0.5, 1.0] {
            let x = make_werner(p).unwrap();
            let g = min_trace_general(&x.to_density()).unwrap();
            assert!((g - p.abs()).abs() < 1e-9, "p = {p}: {g}");
        }
    }

    #[test]
    fn coherence_examples() {
        assert_eq!(l1_coherence(&DensityMatrix::maximally_mixed()), 0.0);
        assert!((l1_coherence(&bell_phi_plus()) - 1.0).abs() < 1e-15);
        assert_eq!(l1_coherence(&make_mixture(0.5).unwrap().to_density()), 0.5);
        for w in [0.0, 0.3, 1.0] {
            let x = make_mixture(w).unwrap();
            assert!((correlated_coherence(&x) - (1.0 - w)).abs() < 1e-15);
        }
        let diag = XState::new(0.1, 0.2, 0.3, 0.4, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(correlated_coherence(&diag), 0.0);
    }

    #[test]
    fn correlation_set_examples() {
        let z = correlations(&DensityMatrix::maximally_mixed()).unwrap();
        for m in Measure::ALL {
            assert!(z.get(m).abs() < 1e-12, "{m}");
        }
        let p = 1.0 / 3f64.sqrt();
        let w = correlations(&make_werner(p).unwrap().to_density()).unwrap();
        assert!((w.concurrence - 0.3660).abs() < 5e-5);
        let m = correlations(&make_mixture(0.5).unwrap().to_density()).unwrap();
        assert!((m.concurrence - 0.5).abs() < 1e-15);
        assert!((m.log_negativity - 0.2716).abs() < 5e-5);
        assert!((m.lqu - 0.5).abs() < 1e-12);
        assert_eq!((m.min_trace, m.correlated_coherence, m.l1_coherence), (0.5, 0.5, 0.5));
        assert!(m.check_ranges().is_ok());
        assert!(m.bound_slack() >= -1e-10);
    }

    #[test]
    fn general_path_on_non_x_state() {
        // |+⟩|0⟩: a product state, so every correlation vanishes; l1 = 1
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::pure([c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0)]).unwrap();
        let s = correlations(&rho).unwrap();
        assert!(s.concurrence < 1e-7);
        assert!(s.negativity < 1e-12);
        assert!(s.lqu < 1e-9);
        assert!(s.min_trace < 1e-9);
        assert!(s.correlated_coherence.abs() < 1e-12);
        assert!((s.l1_coherence - 1.0).abs() < 1e-12);
    }

    #[test]
    fn range_check_flags_violations() {
        let bad = CorrelationSet {
            negativity: 0.6,
            ..Default::default()
        };
        assert_eq!(
            bad.check_ranges(),
            Err(RangeViolation {
                measure: Measure::Negativity,
                value: 0.6
            })
        );
    }

    #[test]
    fn w_structure_for_x_states() {
        let mut r = rng(7);
        for _ in 0..50 {
            let x = random_x_state(&mut r);
            let w = w_matrix(&x.to_density()).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((w[i][j] - w[j][i]).abs() <= 1e-12);
                }
            }
            assert!(w[0][2].abs() <= 1e-12 && w[1][2].abs() <= 1e-12);
            let wx = w_matrix_x(&x);
            assert!((wx.w11 - w[0][0]).abs() < 1e-12);
            assert!((wx.w22 - w[1][1]).abs() < 1e-12);
            assert!((wx.w33 - w[2][2]).abs() < 1e-12);
            assert!((wx.w12 - w[0][1]).abs() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn closed_forms_match_general_definitions(seed in any::<u64>()) {
            let x = random_x_state(&mut rng(seed));
            let rho = x.to_density();
            let cx = concurrence_x(&x);
            prop_assert!((cx - concurrence_general(&rho).unwrap()).abs() <= 1e-8);
            prop_assert!((cx - concurrence_dicke(&x.to_dicke())).abs() <= 1e-10);
            let n = negativity(&rho).unwrap();
            prop_assert!((n - negativity_trace_norm(&rho).unwrap()).abs() <= 1e-10);
            prop_assert!((n - negativity_x(&x)).abs() <= 1e-12);
            prop_assert!((lqu_x(&x) - lqu(&rho).unwrap()).abs() <= 1e-9);
            prop_assert!((correlated_coherence(&x) - correlated_coherence_general(&rho)).abs() <= 1e-14);
        }

        #[test]
        fn min_equals_cc_off_the_x_zero_band(seed in any::<u64>()) {
            let x = random_x_state(&mut rng(seed));
            let (xp, _) = min_branch_parameters(&x);
            prop_assume!(xp.abs() > MIN_X_TOL);
            prop_assert_eq!(min_trace(&x, MIN_X_TOL), correlated_coherence(&x));
        }

        #[test]
        fn bound_chains_hold(seed in any::<u64>()) {
            let x = random_x_state(&mut rng(seed));
            let s = correlations_x(&x);
            prop_assert!(s.bound_slack() >= -1e-10, "slack {}", s.bound_slack());
            prop_assert!(s.check_ranges().is_ok());
        }

        #[test]
        fn c1_and_c2_never_both_positive(seed in any::<u64>()) {
            let x = random_x_state(&mut rng(seed));
            let (c1, c2) = concurrence_components(&x);
            prop_assert!(!(c1 > 0.0 && c2 > 0.0));
            let entangled = x.rho22 * x.rho33 < x.rho14.norm_sqr()
                || x.rho11 * x.rho44 < x.rho23.norm_sqr();
            prop_assert_eq!(concurrence_x(&x) > 0.0, entangled);
        }

        #[test]
        fn measures_invariant_under_dephasing(seed in any::<u64>()) {
            let x = random_x_state(&mut rng(seed));
            let y = x.dephased();
            prop_assert!((concurrence_x(&x) - concurrence_x(&y)).abs() < 1e-15);
            prop_assert!((min_trace(&x, MIN_X_TOL) - min_trace(&y, MIN_X_TOL)).abs() < 1e-15);
            prop_assert!((correlated_coherence(&x) - correlated_coherence(&y)).abs() < 1e-15);
            prop_assert!((lqu(&x.to_density()).unwrap() - lqu(&y.to_density()).unwrap()).abs() < 1e-8);
            prop_assert!((negativity(&x.to_density()).unwrap() - negativity(&y.to_density()).unwrap()).abs() < 1e-8);
        }

        #[test]
        fn product_states_have_zero_lqu(
            a in 0.0f64..=1.0, b in 0.0f64..=1.0,
            ra in 0.0f64..1.0, rb in 0.0f64..1.0, pa in 0.0..std::f64::consts::TAU, pb in 0.0..std::f64::consts::TAU,
        ) {
            // general single-qubit states with Bloch vectors inside the ball
            let qubit = |z: f64, r: f64, ph: f64| {
                let zz = 2.0 * z - 1.0;
                let rr = r * (1.0 - zz * zz).max(0.0).sqrt();
                Matrix([
                    [c(0.5 * (1.0 + zz), 0.0), C64::from_polar(0.5 * rr, -ph)],
                    [C64::from_polar(0.5 * rr, ph), c(0.5 * (1.0 - zz), 0.0)],
                ])
            };
            let rho = DensityMatrix::new(qubit(a, ra, pa).kron(&qubit(b, rb, pb))).unwrap();
            let u = lqu(&rho).unwrap();
            prop_assert!(u.abs() <= 1e-9, "lqu {}", u);
        }
    }
}
