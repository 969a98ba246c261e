//! Two-qubit density matrices, with first-class support for X-shaped states.
//!
//! An X state has nonzero entries only on the main and anti-diagonal:
//!
//! ```text
//! ρ11  0    0    ρ14
//! 0    ρ22  ρ23  0
//! 0    ρ32  ρ33  0
//! ρ41  0    0    ρ44
//! ```

use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, Matrix2, Matrix4, HERMITIAN_TOL, PSD_TOL};

/// Tolerance on `|tr ρ - 1|`.
pub const TRACE_TOL: f64 = 1e-10;

/// Off-pattern magnitude below which a state counts as X-shaped for the
/// closed-form measures.
pub const X_SHAPE_TOL: f64 = 1e-9;

/// A validated two-qubit density matrix: Hermitian, unit trace and PSD
/// (each within 1e-10).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Matrix4);

impl DensityMatrix {
    pub fn new(m: Matrix4) -> Result<Self> {
        validate(m)
    }

    /// Wraps a matrix already known to be a state, for example one
    /// materialised from a validated [`XState`].
    pub(crate) fn new_unchecked(m: Matrix4) -> Self {
        DensityMatrix(m)
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix4 {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Matrix4::identity().scale(0.25))
    }

    /// Projector onto a normalised pure state.
    pub fn pure(psi: [C64; 4]) -> Result<Self> {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        validate(m)
    }
}

/// Checks Hermiticity, unit trace and positivity.
pub fn validate(m: Matrix4) -> Result<DensityMatrix> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = m.hermiticity_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let tr = m.trace().re;
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace: tr });
    }
    let min = hermitian_eigensystem(&m)?.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
        });
    }
    Ok(DensityMatrix(m))
}

fn in_x_pattern(i: usize, j: usize) -> bool {
    i == j || i + j == 3
}

/// Largest magnitude among the eight entries outside the X pattern.
pub fn x_shape_deviation(m: &Matrix4) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if !in_x_pattern(i, j) {
                dev = dev.max(m[(i, j)].norm());
            }
        }
    }
    dev
}

pub fn is_x_shaped(rho: &DensityMatrix, tol: f64) -> bool {
    x_shape_deviation(rho.matrix()) <= tol
}

/// The six independent entries of an X-shaped density matrix. `ρ41 = ρ14*`
/// and `ρ32 = ρ23*` are implied.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: C64,
    pub rho23: C64,
}

impl XState {
    pub fn new(
        rho11: f64,
        rho22: f64,
        rho33: f64,
        rho44: f64,
        rho14: C64,
        rho23: C64,
    ) -> Result<Self> {
        let x = XState {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14,
            rho23,
        };
        x.check()?;
        Ok(x)
    }

    pub(crate) fn from_entries(
        rho11: f64,
        rho22: f64,
        rho33: f64,
        rho44: f64,
        rho14: C64,
        rho23: C64,
    ) -> Self {
        XState {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14,
            rho23,
        }
    }

    /// Trace, positivity of populations and the two 2x2 block determinants.
    pub fn check(&self) -> Result<()> {
        let vals = [
            self.rho11,
            self.rho22,
            self.rho33,
            self.rho44,
            self.rho14.re,
            self.rho14.im,
            self.rho23.re,
            self.rho23.im,
        ];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: tr });
        }
        let pops = [self.rho11, self.rho22, self.rho33, self.rho44];
        let min_pop = pops.iter().copied().fold(f64::INFINITY, f64::min);
        if min_pop < -PSD_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min_pop,
            });
        }
        // each 2x2 block is PSD iff its smaller eigenvalue is nonnegative
        let outer = block_min_eigenvalue(self.rho11, self.rho44, self.rho14);
        let inner = block_min_eigenvalue(self.rho22, self.rho33, self.rho23);
        let gap_outer = self.rho11 * self.rho44 - self.rho14.norm_sqr();
        let gap_inner = self.rho22 * self.rho33 - self.rho23.norm_sqr();
        if gap_outer < -PSD_TOL || gap_inner < -PSD_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: outer.min(inner),
            });
        }
        Ok(())
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22 + self.rho33 + self.rho44
    }

    pub fn rho32(&self) -> C64 {
        self.rho23.conj()
    }

    pub fn rho41(&self) -> C64 {
        self.rho14.conj()
    }

    pub fn to_matrix(&self) -> Matrix4 {
        let mut m = Matrix4::from_diag([self.rho11, self.rho22, self.rho33, self.rho44]);
        m[(0, 3)] = self.rho14;
        m[(3, 0)] = self.rho14.conj();
        m[(1, 2)] = self.rho23;
        m[(2, 1)] = self.rho23.conj();
        m
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::new_unchecked(self.to_matrix())
    }

    /// Extracts the X entries, rejecting states with off-pattern entries
    /// above `tol`.
    pub fn from_density(rho: &DensityMatrix, tol: f64) -> Result<Self> {
        let dev = x_shape_deviation(rho.matrix());
        if dev > tol {
            return Err(Error::NotXShaped { magnitude: dev });
        }
        let m = rho.matrix();
        Ok(XState {
            rho11: m[(0, 0)].re,
            rho22: m[(1, 1)].re,
            rho33: m[(2, 2)].re,
            rho44: m[(3, 3)].re,
            // average the conjugate pair to remove round-off asymmetry
            rho14: (m[(0, 3)] + m[(3, 0)].conj()) * 0.5,
            rho23: (m[(1, 2)] + m[(2, 1)].conj()) * 0.5,
        })
    }

    /// The local-unitary image with real, nonnegative coherences.
    pub fn dephased(&self) -> XState {
        XState {
            rho14: C64::new(self.rho14.norm(), 0.0),
            rho23: C64::new(self.rho23.norm(), 0.0),
            ..*self
        }
    }

    /// `tr_B ρ = diag(ρ11 + ρ22, ρ33 + ρ44)`.
    pub fn reduced_a(&self) -> Matrix2 {
        Matrix2::from_diag([self.rho11 + self.rho22, self.rho33 + self.rho44])
    }

    /// `tr_A ρ = diag(ρ11 + ρ33, ρ22 + ρ44)`.
    pub fn reduced_b(&self) -> Matrix2 {
        Matrix2::from_diag([self.rho11 + self.rho33, self.rho22 + self.rho44])
    }

    pub fn purity(&self) -> f64 {
        self.rho11 * self.rho11
            + self.rho22 * self.rho22
            + self.rho33 * self.rho33
            + self.rho44 * self.rho44
            + 2.0 * (self.rho14.norm_sqr() + self.rho23.norm_sqr())
    }

    pub fn to_dicke(&self) -> DickeState {
        let half_sum = 0.5 * (self.rho22 + self.rho33);
        let r32 = self.rho32();
        DickeState {
            ee: self.rho11,
            gg: self.rho44,
            ss: half_sum + r32.re,
            aa: half_sum - r32.re,
            eg: self.rho14,
            sa: C64::new(0.5 * (self.rho22 - self.rho33), r32.im),
        }
    }

    pub fn from_dicke(d: &DickeState) -> XState {
        let half_sum = 0.5 * (d.ss + d.aa);
        let r32 = C64::new(0.5 * (d.ss - d.aa), d.sa.im);
        XState {
            rho11: d.ee,
            rho22: half_sum + d.sa.re,
            rho33: half_sum - d.sa.re,
            rho44: d.gg,
            rho14: d.eg,
            rho23: r32.conj(),
        }
    }
}

fn block_min_eigenvalue(a: f64, b: f64, off: C64) -> f64 {
    0.5 * (a + b) - (0.25 * (a - b) * (a - b) + off.norm_sqr()).sqrt()
}

/// An X state expressed in the Dicke basis `{|e⟩, |g⟩, |s⟩, |a⟩}` with
/// `|e⟩ = |00⟩`, `|g⟩ = |11⟩`, `|s⟩ = (|01⟩ + |10⟩)/√2`,
/// `|a⟩ = (|01⟩ - |10⟩)/√2`. The matrix is block-diagonal in (e, g) and
/// (s, a).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DickeState {
    pub ee: f64,
    pub gg: f64,
    pub ss: f64,
    pub aa: f64,
    pub eg: C64,
    pub sa: C64,
}

impl DickeState {
    pub fn trace(&self) -> f64 {
        self.ee + self.gg + self.ss + self.aa
    }

    /// Matrix in the ordered basis `(e, g, s, a)`.
    pub fn to_matrix(&self) -> Matrix4 {
        let mut m = Matrix4::from_diag([self.ee, self.gg, self.ss, self.aa]);
        m[(0, 1)] = self.eg;
        m[(1, 0)] = self.eg.conj();
        m[(2, 3)] = self.sa;
        m[(3, 2)] = self.sa.conj();
        m
    }
}

/// Unitary taking computational-basis coordinates to Dicke coordinates
/// (rows are `⟨e|, ⟨g|, ⟨s|, ⟨a|`).
pub fn dicke_basis_change() -> Matrix4 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Matrix4::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, r, r, 0.0],
        [0.0, r, -r, 0.0],
    ])
}

/// `tr ρ²`
pub fn purity(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    (*m * *m).trace().re
}

/// `w|01⟩⟨01| + (1-w)|Φ+⟩⟨Φ+|` with `|Φ+⟩ = (|00⟩ + |11⟩)/√2`.
pub fn make_mixture(w: f64) -> Result<XState> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::domain("w", w, "[0, 1]"));
    }
    let h = 0.5 * (1.0 - w);
    Ok(XState::from_entries(h, w, 0.0, h, C64::new(h, 0.0), C64::new(0.0, 0.0)))
}

/// Lower end of the Werner parameter range.
pub const WERNER_P_MIN: f64 = -1.0 / 3.0;

/// `p|Ψ-⟩⟨Ψ-| + (1-p)/4 𝟙` with `|Ψ-⟩ = (|01⟩ - |10⟩)/√2`.
pub fn make_werner(p: f64) -> Result<XState> {
    if !(WERNER_P_MIN..=1.0).contains(&p) {
        return Err(Error::domain("p", p, "[-1/3, 1]"));
    }
    let outer = 0.25 * (1.0 - p);
    let inner = 0.25 * (1.0 + p);
    Ok(XState::from_entries(
        outer,
        inner,
        inner,
        outer,
        C64::new(0.0, 0.0),
        C64::new(-0.5 * p, 0.0),
    ))
}

/// Random valid X state: Dirichlet(1,1,1,1) populations, block coherences
/// uniform in magnitude up to the positivity bound, uniform phases.
pub fn random_x_state<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let e: [f64; 4] = std::array::from_fn(|_| -(1.0 - rng.gen::<f64>()).ln());
    let s: f64 = e.iter().sum();
    let [p1, p2, p3, p4] = e.map(|x| x / s);
    let phase = |rng: &mut R| C64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    let r14 = phase(rng) * ((p1 * p4).sqrt() * rng.gen::<f64>());
    let r23 = phase(rng) * ((p2 * p3).sqrt() * rng.gen::<f64>());
    XState::from_entries(p1, p2, p3, p4, r14, r23)
}

/// Writes a 4x4 complex matrix as four lines of four `re+imi` tokens with 17
/// significant digits.
pub fn format_matrix(m: &Matrix4) -> String {
    let mut out = String::new();
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format_complex(m[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn format_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{}{:.16e}i", z.re, sign, z.im.abs())
}

pub fn parse_complex(tok: &str) -> Result<C64> {
    let bad = || Error::Parse(format!("invalid complex token {tok:?}"));
    let body = tok.strip_suffix('i').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    // split at the last sign that is neither leading nor an exponent sign
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..].parse().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

/// Parses the textual matrix format; blank lines and `#` comments are
/// ignored.
pub fn parse_matrix(text: &str) -> Result<Matrix4> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if rows.len() != 4 {
        return Err(Error::Parse(format!("expected 4 rows, found {}", rows.len())));
    }
    let mut m = Matrix4::zeros();
    for (i, row) in rows.iter().enumerate() {
        let toks: Vec<&str> = row.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected 4",
                i + 1,
                toks.len()
            )));
        }
        for (j, t) in toks.iter().enumerate() {
            m[(i, j)] = parse_complex(t)?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{hamiltonian, ModelParams};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sorted_eigs(m: &Matrix4) -> [f64; 4] {
        hermitian_eigensystem(m).unwrap().eigenvalues
    }

    #[test]
    fn validate_examples() {
        assert!(validate(Matrix4::identity().scale(0.25)).is_ok());
        assert_eq!(
            validate(Matrix4::from_diag([1.0, 1.0, 0.0, 0.0])),
            Err(Error::TraceNotOne { trace: 2.0 })
        );
        let mut m = Matrix4::from_diag([0.25, 0.25, 0.25, 0.25]);
        m[(0, 3)] = c(0.6, 0.0);
        m[(3, 0)] = c(0.6, 0.0);
        match validate(m) {
            Err(Error::NotPsd { min_eigenvalue }) => assert!((min_eigenvalue + 0.35).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let mut m = Matrix4::identity().scale(0.25);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(validate(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn x_state_check_mirrors_validate() {
        let bad = XState::from_entries(0.25, 0.25, 0.25, 0.25, c(0.6, 0.0), c(0.0, 0.0));
        assert!(matches!(bad.check(), Err(Error::NotPsd { .. })));
        assert!(validate(bad.to_matrix()).is_err());
    }

    #[test]
    fn x_shape_detection() {
        for p in [-1.0 / 3.0, 0.0, 0.4, 1.0] {
            assert!(is_x_shaped(&make_werner(p).unwrap().to_density(), 1e-12));
        }
        // |+⟩⟨+| ⊗ |0⟩⟨0|
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::pure([c(r, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((rho.get(0, 2).re - 0.5).abs() < 1e-15);
        assert!(!is_x_shaped(&rho, 1e-9));
        assert!(XState::from_density(&rho, 1e-9).is_err());
    }

    #[test]
    fn dicke_of_01() {
        let x = XState::new(0.0, 1.0, 0.0, 0.0, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        let d = x.to_dicke();
        assert_eq!((d.ss, d.aa), (0.5, 0.5));
        assert_eq!(d.sa, c(0.5, 0.0));
    }

    #[test]
    fn dicke_of_thermal_diagonal_state() {
        for nbar in [0.0, 0.3, 1.0, 4.0] {
            let m2 = (2.0 * nbar + 1.0) * (2.0 * nbar + 1.0);
            let mid = nbar * (nbar + 1.0) / m2;
            let x = XState::new(
                nbar * nbar / m2,
                mid,
                mid,
                (nbar + 1.0) * (nbar + 1.0) / m2,
                c(0.0, 0.0),
                c(0.0, 0.0),
            )
            .unwrap();
            let d = x.to_dicke();
            assert!((d.ss - mid).abs() < 1e-15 && (d.aa - mid).abs() < 1e-15);
            assert_eq!(d.sa, c(0.0, 0.0));
        }
    }

    #[test]
    fn dicke_matches_explicit_basis_change() {
        let x = XState::new(0.1, 0.3, 0.2, 0.4, c(0.05, -0.1), c(0.1, 0.2)).unwrap();
        let u = dicke_basis_change();
        let explicit = u * x.to_matrix() * u.adjoint();
        assert!((explicit - x.to_dicke().to_matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn reduced_states() {
        let w = make_werner(1.0).unwrap();
        assert_eq!(w.reduced_a(), Matrix2::from_diag([0.5, 0.5]));
        assert_eq!(w.reduced_b(), Matrix2::from_diag([0.5, 0.5]));
        let m = make_mixture(0.5).unwrap();
        assert_eq!(m.reduced_a(), Matrix2::from_diag([0.75, 0.25]));
        assert_eq!(m.reduced_b(), Matrix2::from_diag([0.25, 0.75]));
        // agrees with the general partial trace
        let rho = m.to_matrix();
        assert_eq!(crate::linalg::partial_trace_b(&rho), m.reduced_a());
        assert_eq!(crate::linalg::partial_trace_a(&rho), m.reduced_b());
    }

    #[test]
    fn purities() {
        assert!((purity(&make_werner(1.0).unwrap().to_density()) - 1.0).abs() < 1e-15);
        assert!((purity(&make_werner(0.0).unwrap().to_density()) - 0.25).abs() < 1e-15);
        assert!((purity(&DensityMatrix::maximally_mixed()) - 0.25).abs() < 1e-15);
        let m = make_mixture(0.5).unwrap();
        assert!((purity(&m.to_density()) - 0.5).abs() < 1e-15);
        assert!((m.purity() - 0.5).abs() < 1e-15);
        for p in [-1.0 / 3.0, 0.2, 0.9] {
            let x = make_werner(p).unwrap();
            assert!((x.purity() - (1.0 + 3.0 * p * p) / 4.0).abs() < 1e-15);
        }
        for w in [0.0, 0.3, 0.8] {
            let x = make_mixture(w).unwrap();
            assert!((x.purity() - (1.0 - 2.0 * w * (1.0 - w))).abs() < 1e-15);
        }
    }

    #[test]
    fn mixture_constructor() {
        let m = make_mixture(0.5).unwrap();
        assert_eq!(
            m.to_matrix(),
            Matrix4::from_real([
                [0.25, 0.0, 0.0, 0.25],
                [0.0, 0.5, 0.0, 0.0],
                [0.0, 0.0, 0.0, 0.0],
                [0.25, 0.0, 0.0, 0.25],
            ])
        );
        assert_eq!(make_mixture(1.0).unwrap().to_matrix(), Matrix4::from_diag([0.0, 1.0, 0.0, 0.0]));
        let bell = make_mixture(0.0).unwrap();
        assert!((purity(&bell.to_density()) - 1.0).abs() < 1e-15);
        assert!(make_mixture(1.01).is_err());
        assert!(make_mixture(-0.01).is_err());
    }

    #[test]
    fn werner_constructor() {
        assert_eq!(make_werner(0.0).unwrap().to_matrix(), Matrix4::identity().scale(0.25));
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let singlet = DensityMatrix::pure([c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((make_werner(1.0).unwrap().to_matrix() - *singlet.matrix()).max_abs() < 1e-15);
        assert!(make_werner(-0.34).is_err());
        assert!(make_werner(1.0 + 1e-9).is_err());
        assert!(make_werner(WERNER_P_MIN).is_ok());
    }

    #[test]
    fn werner_commutes_with_hamiltonian() {
        let params = ModelParams::new(0.37, -0.8, 1.3, 0.1, 0.0).unwrap();
        let h = hamiltonian(&params);
        for p in [-1.0 / 3.0, 0.0, 0.5, 1.0] {
            let rho = make_werner(p).unwrap().to_matrix();
            assert!(h.commutator(&rho).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn text_format_round_trip() {
        let x = XState::new(0.1, 0.3, 0.2, 0.4, c(0.05, -0.1), c(-1e-300, 0.2)).unwrap();
        let text = format_matrix(&x.to_matrix());
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().next().unwrap().starts_with("1.0000000000000001e-1+0.0000000000000000e0i"));
        assert_eq!(parse_matrix(&text).unwrap(), x.to_matrix());
        assert_eq!(parse_complex("-1.5e-3-2e+2i").unwrap(), c(-1.5e-3, -200.0));
        assert!(parse_complex("1.0").is_err());
        assert!(parse_matrix("1+0i 0+0i\n").is_err());
    }

    proptest! {
        #[test]
        fn random_states_validate(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let x = random_x_state(&mut rng);
            prop_assert!(x.check().is_ok());
            prop_assert!(validate(x.to_matrix()).is_ok());
        }

        #[test]
        fn constructors_always_validate(w in 0.0f64..=1.0, p in -1.0f64/3.0..=1.0) {
            prop_assert!(validate(make_mixture(w).unwrap().to_matrix()).is_ok());
            prop_assert!(validate(make_werner(p).unwrap().to_matrix()).is_ok());
        }

        #[test]
        fn dicke_preserves_trace_and_spectrum(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let x = random_x_state(&mut rng);
            let d = x.to_dicke();
            prop_assert!((d.trace() - x.trace()).abs() < 1e-14);
            let a = sorted_eigs(&x.to_matrix());
            let b = sorted_eigs(&d.to_matrix());
            for k in 0..4 {
                prop_assert!((a[k] - b[k]).abs() < 1e-13);
            }
            let back = XState::from_dicke(&d);
            prop_assert!((back.to_matrix() - x.to_matrix()).max_abs() < 1e-14);
        }

        #[test]
        fn reduced_states_carry_no_coherence(seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let x = random_x_state(&mut rng);
            for r in [x.reduced_a(), x.reduced_b()] {
                prop_assert_eq!(r[(0, 1)].norm() + r[(1, 0)].norm(), 0.0);
                prop_assert!((r.trace().re - 1.0).abs() < 1e-14);
            }
        }
    }
}
