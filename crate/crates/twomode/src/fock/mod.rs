//! Truncated two-mode Fock realization of the orientation observables.
//!
//! The two circular transverse modes carry photon occupations (m, n). On the
//! subspace with total excitation m + n <= n_max the phase-difference
//! displacement operator acts within each total-excitation manifold, where it
//! reduces to a cyclic shift with a phase on the wrap-around entry. That
//! structure has an explicit discrete-Fourier eigenbasis, so the orientation
//! unitary (its principal square root) and the orientation angle operator
//! (half the principal eigenphase) are built exactly, manifold by manifold.
//!
//! Ladder operators, rotating quadratures, coherent states, and commutator
//! expectation values complete the toolkit needed to compare operator
//! commutators against classical Poisson brackets.

pub mod blocks;

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::classical::QuadratureParams;
use crate::{wrap_angle, Mode};

pub use blocks::ManifoldBlocks;

/// Default bound on the truncated-space dimension; callers with more memory
/// can raise it through [`basis_with_cap`].
pub const DEFAULT_DIMENSION_CAP: usize = 5000;

/// Largest truncation tail accepted when preparing a coherent state.
pub const COHERENT_TAIL_BOUND: f64 = 1e-8;

/// Frobenius residual above which the analytic eigenbasis of a shift block
/// is considered inconsistent. The reconstruction is exact in exact
/// arithmetic, so anything beyond rounding noise means a logic error.
const EIGENBASIS_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("truncated space dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("total-excitation cutoff must be at least 1")]
    CutoffTooSmall,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error(
        "coherent-state truncation tail {tail:.3e} exceeds the bound {bound:.1e}; raise the cutoff"
    )]
    TailTooLarge { tail: f64, bound: f64 },
    #[error("state vector has vanishing norm")]
    ZeroState,
    #[error("eigenbasis failed to reconstruct manifold {manifold}: residual {residual:.3e}")]
    BlockReconstruction { manifold: usize, residual: f64 },
}

/// Occupation numbers of the two circular modes: `m` quanta in the
/// positive-helicity mode, `n` in the negative-helicity mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockBasisIndex {
    pub m: usize,
    pub n: usize,
}

impl FockBasisIndex {
    pub fn total(&self) -> usize {
        self.m + self.n
    }
}

/// Basis of the total-excitation-truncated two-mode Fock space.
///
/// States are ordered manifold by manifold (total excitation N = 0, 1, ...,
/// n_max); within the N-manifold the positive-helicity occupation descends:
/// (N, 0), (N-1, 1), ..., (0, N). The state (m, n) therefore sits at flat
/// index N(N+1)/2 + n with N = m + n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSpace {
    n_max: usize,
    states: Vec<FockBasisIndex>,
}

/// Build the truncated basis with the default dimension cap.
pub fn basis(n_max: usize) -> Result<TruncatedSpace, FockError> {
    basis_with_cap(n_max, DEFAULT_DIMENSION_CAP)
}

/// Build the truncated basis, refusing dimensions above `cap`.
pub fn basis_with_cap(n_max: usize, cap: usize) -> Result<TruncatedSpace, FockError> {
    if n_max == 0 {
        return Err(FockError::CutoffTooSmall);
    }
    let dim = (n_max + 1) * (n_max + 2) / 2;
    if dim > cap {
        return Err(FockError::DimensionCap { dim, cap });
    }
    let mut states = Vec::with_capacity(dim);
    for total in 0..=n_max {
        for n in 0..=total {
            states.push(FockBasisIndex { m: total - n, n });
        }
    }
    Ok(TruncatedSpace { n_max, states })
}

impl TruncatedSpace {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[FockBasisIndex] {
        &self.states
    }

    /// Flat index of the first state of the N-manifold.
    pub fn manifold_offset(&self, total: usize) -> usize {
        total * (total + 1) / 2
    }

    pub fn index_of(&self, m: usize, n: usize) -> usize {
        let total = m + n;
        assert!(
            total <= self.n_max,
            "state ({m}, {n}) lies beyond the cutoff {}",
            self.n_max
        );
        self.manifold_offset(total) + n
    }

    pub fn state_at(&self, index: usize) -> FockBasisIndex {
        self.states[index]
    }
}

/// Wrap-around phase of the phase-difference displacement: acting on a state
/// with all quanta in the positive-helicity mode, the displacement returns
/// them all in the negative-helicity mode multiplied by `exp(i phase(N))`.
/// Values are wrapped to (-pi, pi].
#[derive(Clone)]
pub struct PhaseFunction(Arc<dyn Fn(usize) -> f64 + Send + Sync>);

impl PhaseFunction {
    /// The zero phase convention.
    pub fn zero() -> Self {
        Self(Arc::new(|_| 0.0))
    }

    pub fn from_fn(f: impl Fn(usize) -> f64 + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn phase(&self, manifold: usize) -> f64 {
        let raw = (self.0)(manifold);
        assert!(raw.is_finite(), "wrap-around phase must be finite");
        wrap_angle(raw)
    }
}

impl fmt::Debug for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PhaseFunction(..)")
    }
}

/// A dense operator on the truncated space, labeled by what it represents,
/// carrying the symmetry it is supposed to have. The metadata is a claim;
/// [`OperatorMatrix::hermiticity_residual`] and
/// [`OperatorMatrix::unitarity_residual`] (or their blockwise counterparts
/// for manifold-preserving operators) measure how well it holds.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    label: String,
    matrix: DMatrix<Complex64>,
    hermitian: bool,
    unitary: bool,
}

impl OperatorMatrix {
    pub fn new(
        label: impl Into<String>,
        matrix: DMatrix<Complex64>,
        hermitian: bool,
        unitary: bool,
    ) -> Self {
        assert_eq!(matrix.nrows(), matrix.ncols(), "operators must be square");
        Self {
            label: label.into(),
            matrix,
            hermitian,
            unitary,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn unitary(&self) -> bool {
        self.unitary
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix::new(
            format!("adjoint of {}", self.label),
            self.matrix.adjoint(),
            self.hermitian,
            self.unitary,
        )
    }

    /// ||A - A^H||_F; costs one pass over the matrix.
    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ||A^H A - I||_F; costs a dense matrix product, so prefer the
    /// blockwise check for manifold-preserving operators at large cutoffs.
    pub fn unitarity_residual(&self) -> f64 {
        let mut g = self.matrix.adjoint() * &self.matrix;
        for k in 0..g.nrows() {
            g[(k, k)] -= Complex64::new(1.0, 0.0);
        }
        g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Annihilation operator of one circular mode: lowers its occupation by one
/// with the usual sqrt(occupation) factor.
pub fn annihilation(mode: Mode, space: &TruncatedSpace) -> OperatorMatrix {
    let dim = space.dim();
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (col, st) in space.states().iter().enumerate() {
        let (factor, row) = match mode {
            Mode::Plus if st.m >= 1 => ((st.m as f64).sqrt(), space.index_of(st.m - 1, st.n)),
            Mode::Minus if st.n >= 1 => ((st.n as f64).sqrt(), space.index_of(st.m, st.n - 1)),
            _ => continue,
        };
        m[(row, col)] = Complex64::new(factor, 0.0);
    }
    let sign = match mode {
        Mode::Plus => "+",
        Mode::Minus => "-",
    };
    OperatorMatrix::new(format!("annihilation({sign})"), m, false, false)
}

/// One-sided exponential-phase operator of one circular mode: the bare
/// lowering shift, equal to (occupation + 1)^(-1/2) times the annihilation
/// operator. It annihilates the mode vacuum, so it is an isometry only on
/// the range of its adjoint, never unitary.
pub fn susskind_glogower(mode: Mode, space: &TruncatedSpace) -> OperatorMatrix {
    let dim = space.dim();
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (col, st) in space.states().iter().enumerate() {
        let row = match mode {
            Mode::Plus if st.m >= 1 => space.index_of(st.m - 1, st.n),
            Mode::Minus if st.n >= 1 => space.index_of(st.m, st.n - 1),
            _ => continue,
        };
        m[(row, col)] = Complex64::new(1.0, 0.0);
    }
    let sign = match mode {
        Mode::Plus => "+",
        Mode::Minus => "-",
    };
    OperatorMatrix::new(format!("exponential-phase shift({sign})"), m, false, false)
}

/// The shift-with-phased-wrap block of the phase-difference displacement on
/// the N-manifold: moves one quantum from the negative- to the
/// positive-helicity mode, and sends the all-positive state to the
/// all-negative state with the wrap-around phase.
fn shift_block(total: usize, wrap_phase: f64) -> DMatrix<Complex64> {
    let size = total + 1;
    let mut b = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
    for p in 1..size {
        b[(p - 1, p)] = Complex64::new(1.0, 0.0);
    }
    b[(total, 0)] = Complex64::from_polar(1.0, wrap_phase);
    b
}

/// Unitary displacement of the phase difference between the two circular
/// modes. Block diagonal over total-excitation manifolds; within the
/// N-manifold it is the cyclic shift with phase `phi(N)` on the wrap-around.
pub fn phase_difference_unitary(space: &TruncatedSpace, phi: &PhaseFunction) -> OperatorMatrix {
    let blocks = ManifoldBlocks::new(
        (0..=space.n_max())
            .map(|total| shift_block(total, phi.phase(total)))
            .collect(),
    );
    blocks.to_operator(space, "phase-difference unitary", false, true)
}

/// Build a function of the phase-difference displacement through its exact
/// per-manifold eigenbasis.
///
/// On the N-manifold the shift block has eigenvalues
/// `exp(i (phi(N) + 2 pi k) / (N + 1))`, k = 0..N, with discrete-Fourier
/// eigenvectors `v_k[p] = lambda_k^p / sqrt(N + 1)`. The block of `f` is
/// assembled as `sum_k f(w_k) v_k v_k^H` where `w_k` is the principal
/// eigenphase in (-pi, pi]. Reconstructing the shift block itself (f = the
/// eigenvalue) in the same pass guards the eigenbasis: its residual is pure
/// rounding noise unless the construction is wrong.
fn eigenphase_blocks(
    space: &TruncatedSpace,
    phi: &PhaseFunction,
    f: impl Fn(f64) -> Complex64,
) -> Result<ManifoldBlocks, FockError> {
    let mut out = Vec::with_capacity(space.n_max() + 1);
    for total in 0..=space.n_max() {
        let size = total + 1;
        let phase = phi.phase(total);
        let mut block = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
        let mut rebuilt = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
        for k in 0..size {
            let beta = (phase + std::f64::consts::TAU * k as f64) / size as f64;
            let w = wrap_angle(beta);
            let fw = f(w) / size as f64;
            let lw = Complex64::from_polar(1.0 / size as f64, w);
            let v: Vec<Complex64> = (0..size)
                .map(|p| Complex64::from_polar(1.0, w * p as f64))
                .collect();
            for p in 0..size {
                for q in 0..size {
                    let outer = v[p] * v[q].conj();
                    block[(p, q)] += fw * outer;
                    rebuilt[(p, q)] += lw * outer;
                }
            }
        }
        let residual = (&rebuilt - shift_block(total, phase))
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual > EIGENBASIS_GUARD * size as f64 {
            return Err(FockError::BlockReconstruction {
                manifold: total,
                residual,
            });
        }
        out.push(block);
    }
    Ok(ManifoldBlocks::new(out))
}

/// Principal square root of the phase-difference displacement: the unitary
/// generated by the beam-orientation angle. Its square reproduces the
/// displacement exactly (up to rounding).
pub fn orientation_unitary(
    space: &TruncatedSpace,
    phi: &PhaseFunction,
) -> Result<OperatorMatrix, FockError> {
    let blocks = eigenphase_blocks(space, phi, |w| Complex64::from_polar(1.0, 0.5 * w))?;
    Ok(blocks.to_operator(space, "orientation unitary", false, true))
}

/// Hermitian beam-orientation angle operator: half the principal eigenphase
/// of the phase-difference displacement, so its spectrum lies in
/// (-pi/2, pi/2]. Exponentiating i times it recovers the orientation
/// unitary.
pub fn orientation_operator(
    space: &TruncatedSpace,
    phi: &PhaseFunction,
) -> Result<OperatorMatrix, FockError> {
    let blocks = eigenphase_blocks(space, phi, |w| Complex64::new(0.5 * w, 0.0))?;
    Ok(blocks.to_operator(space, "orientation angle", true, false))
}

/// Left-multiply by the annihilation operator of one mode without forming
/// it: column (m, n) of `left * a_mode` is sqrt(occupation) times the column
/// of `left` at the lowered state.
fn multiply_by_annihilation(
    left: &DMatrix<Complex64>,
    mode: Mode,
    space: &TruncatedSpace,
) -> DMatrix<Complex64> {
    let dim = space.dim();
    let mut out = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (col, st) in space.states().iter().enumerate() {
        let (factor, source) = match mode {
            Mode::Plus if st.m >= 1 => ((st.m as f64).sqrt(), space.index_of(st.m - 1, st.n)),
            Mode::Minus if st.n >= 1 => ((st.n as f64).sqrt(), space.index_of(st.m, st.n - 1)),
            _ => continue,
        };
        let scale = Complex64::new(factor, 0.0);
        for (row, value) in left.column(source).iter().enumerate() {
            out[(row, col)] = scale * value;
        }
    }
    out
}

/// Hermitian rotating quadrature at local-oscillator phase `psi_l`: the
/// orientation unitary derotates the positive-helicity mode and counter-
/// rotates the negative-helicity one before the usual two-mode quadrature
/// combination is taken.
pub fn rotating_quadrature_op(
    quadrature: &QuadratureParams,
    space: &TruncatedSpace,
    phi: &PhaseFunction,
) -> Result<OperatorMatrix, FockError> {
    let u = orientation_unitary(space, phi)?;
    let plus_term = multiply_by_annihilation(u.matrix(), Mode::Plus, space);
    let minus_term = multiply_by_annihilation(&u.matrix().adjoint(), Mode::Minus, space);
    let front =
        Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, -quadrature.psi_l) / 2.0f64.sqrt();
    let half = (plus_term - minus_term).map(|z| front * z);
    let x = &half + half.adjoint();
    Ok(OperatorMatrix::new(
        format!("rotating quadrature(psi_l={:.6})", quadrature.psi_l),
        x,
        true,
        false,
    ))
}

/// A normalized state on the truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    coefficients: DVector<Complex64>,
}

impl TwoModeState {
    /// Normalize the given coefficient vector; rejects vanishing norms.
    pub fn new(coefficients: DVector<Complex64>) -> Result<Self, FockError> {
        let norm = coefficients.norm();
        if norm.is_nan() || norm <= 1e-12 {
            return Err(FockError::ZeroState);
        }
        Ok(Self {
            coefficients: coefficients / Complex64::new(norm, 0.0),
        })
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &DVector<Complex64> {
        &self.coefficients
    }
}

/// A coherent state after truncation: the renormalized in-space part plus
/// the probability mass that fell beyond the cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentPreparation {
    pub state: TwoModeState,
    pub tail_mass: f64,
}

/// Prepare the two-mode coherent state with the given amplitudes, truncated
/// to the space. The measured tail mass (the untruncated state has exactly
/// unit norm, so it is one minus the captured norm) must stay below
/// [`COHERENT_TAIL_BOUND`].
pub fn coherent_state(
    alpha_plus: Complex64,
    alpha_minus: Complex64,
    space: &TruncatedSpace,
) -> Result<CoherentPreparation, FockError> {
    assert!(
        alpha_plus.is_finite() && alpha_minus.is_finite(),
        "coherent amplitudes must be finite"
    );
    let total_mean = alpha_plus.norm_sqr() + alpha_minus.norm_sqr();
    let mut coefficients = DVector::from_element(space.dim(), Complex64::new(0.0, 0.0));
    coefficients[0] = Complex64::new((-0.5 * total_mean).exp(), 0.0);
    for index in 1..space.dim() {
        let st = space.state_at(index);
        coefficients[index] = if st.m >= 1 {
            coefficients[space.index_of(st.m - 1, st.n)] * alpha_plus / (st.m as f64).sqrt()
        } else {
            coefficients[space.index_of(st.m, st.n - 1)] * alpha_minus / (st.n as f64).sqrt()
        };
    }
    let captured: f64 = coefficients.iter().map(|z| z.norm_sqr()).sum();
    let tail_mass = (1.0 - captured).max(0.0);
    if tail_mass > COHERENT_TAIL_BOUND {
        return Err(FockError::TailTooLarge {
            tail: tail_mass,
            bound: COHERENT_TAIL_BOUND,
        });
    }
    Ok(CoherentPreparation {
        state: TwoModeState::new(coefficients)?,
        tail_mass,
    })
}

/// Expectation value of an operator in a state.
pub fn expectation(op: &OperatorMatrix, state: &TwoModeState) -> Result<Complex64, FockError> {
    if op.dim() != state.dim() {
        return Err(FockError::DimensionMismatch {
            left: op.dim(),
            right: state.dim(),
        });
    }
    let v = state.coefficients();
    Ok(v.dotc(&(op.matrix() * v)))
}

/// Expectation value of the commutator [A, B], evaluated with four
/// matrix-vector products so no operator product is ever materialized.
pub fn commutator_expectation(
    a: &OperatorMatrix,
    b: &OperatorMatrix,
    state: &TwoModeState,
) -> Result<Complex64, FockError> {
    if a.dim() != b.dim() {
        return Err(FockError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if a.dim() != state.dim() {
        return Err(FockError::DimensionMismatch {
            left: a.dim(),
            right: state.dim(),
        });
    }
    let v = state.coefficients();
    let bv = b.matrix() * v;
    let av = a.matrix() * v;
    let ab = v.dotc(&(a.matrix() * &bv));
    let ba = v.dotc(&(b.matrix() * &av));
    Ok(ab - ba)
}
