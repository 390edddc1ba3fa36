//! System-environment entanglement dynamics and scattering channels.
//!
//! A [`PointerInteraction`] couples each system basis state `|n⟩` to its
//! own Hermitian environment generator, `H = Σ_n |n⟩⟨n| ⊗ B_n`. Evolving
//! a product state under it entangles the factors; the reduced system
//! density then carries the environment overlaps `⟨Φ_m(t)|Φ_n(t)⟩` on
//! its off-diagonal entries. The scattering channels model the same
//! suppression phenomenologically: [`no_recoil_scatter`] multiplies
//! off-diagonal entries by `(1-ε)^N` while leaving the diagonal exactly
//! alone, and [`recoil_scatter`] adds a seeded random unitary kick per
//! event to show what the diagonal invariance costs.

use num_complex::Complex64;
use thiserror::Error;

use crate::density::{
    scale_off_diagonal, scale_off_diagonal_in_basis, BasisChange, DensityError, DensityMatrix,
    StateVector,
};
use crate::linalg::{self, ComplexMatrix, LinalgError};

/// Largest environment dimension accepted for exact tensor-space
/// eigendecomposition.
pub const MAX_ENV_DIM: usize = 32;
/// Norm tolerance on composite state vectors.
pub const COMPOSITE_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum DecoherenceError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("environment dimension {dim} exceeds the supported maximum {max}")]
    EnvironmentTooLarge { dim: usize, max: usize },
    #[error("epsilon must lie in [0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("recoil strength must be finite and nonnegative, got {0}")]
    InvalidRecoil(f64),
    #[error("event count {0} exceeds the supported maximum {max}", max = i32::MAX)]
    TooManyEvents(u32),
    #[error("composite amplitudes have norm {norm}, expected 1")]
    Norm { norm: f64 },
    #[error("no-recoil channel called with recoil strength {0}; use recoil_scatter")]
    UnexpectedRecoil(f64),
}

/// State vector on a system ⊗ environment tensor space with recorded
/// factor dimensions. Index `(n, k)` maps to `n * dim_env + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    amplitudes: Vec<Complex64>,
    dim_system: usize,
    dim_env: usize,
}

impl CompositeState {
    pub fn new(
        amplitudes: Vec<Complex64>,
        dim_system: usize,
        dim_env: usize,
    ) -> Result<Self, DecoherenceError> {
        if dim_system == 0 || dim_env == 0 || amplitudes.len() != dim_system * dim_env {
            return Err(DecoherenceError::Dimension(format!(
                "{} amplitudes cannot fill a {dim_system}x{dim_env} tensor space",
                amplitudes.len()
            )));
        }
        let norm = linalg::vec_norm(&amplitudes);
        if (norm - 1.0).abs() > COMPOSITE_NORM_TOL {
            return Err(DecoherenceError::Norm { norm });
        }
        Ok(Self {
            amplitudes,
            dim_system,
            dim_env,
        })
    }

    /// Product state `ψ_S ⊗ φ_E`.
    pub fn product(system: &StateVector, env: &StateVector) -> Result<Self, DecoherenceError> {
        Self::new(
            linalg::vec_kron(system.amplitudes(), env.amplitudes()),
            system.dim(),
            env.dim(),
        )
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim_system(&self) -> usize {
        self.dim_system
    }

    pub fn dim_env(&self) -> usize {
        self.dim_env
    }

    pub fn norm(&self) -> f64 {
        linalg::vec_norm(&self.amplitudes)
    }

    /// Full density matrix `ψψ†` on the tensor space.
    pub fn density(&self) -> ComplexMatrix {
        linalg::outer_product(&self.amplitudes, &self.amplitudes)
    }
}

/// Diagonal system-environment coupling `H = Σ_n |n⟩⟨n| ⊗ B_n` with one
/// Hermitian environment generator per system basis state.
#[derive(Debug, Clone)]
pub struct PointerInteraction {
    couplings: Vec<ComplexMatrix>,
}

impl PointerInteraction {
    pub fn new(couplings: Vec<ComplexMatrix>) -> Result<Self, DecoherenceError> {
        if couplings.is_empty() {
            return Err(DecoherenceError::Dimension(
                "at least one coupling is required".into(),
            ));
        }
        let dim_env = couplings[0].rows();
        if dim_env > MAX_ENV_DIM {
            return Err(DecoherenceError::EnvironmentTooLarge {
                dim: dim_env,
                max: MAX_ENV_DIM,
            });
        }
        for b in &couplings {
            if !b.is_square() || b.rows() != dim_env {
                return Err(DecoherenceError::Dimension(format!(
                    "couplings must all be {dim_env}x{dim_env}, got {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
            let defect = b.hermitian_defect()?;
            if defect > linalg::HERMITICITY_TOL {
                return Err(DecoherenceError::Linalg(LinalgError::NotHermitian {
                    defect,
                    tolerance: linalg::HERMITICITY_TOL,
                }));
            }
        }
        Ok(Self { couplings })
    }

    pub fn dim_system(&self) -> usize {
        self.couplings.len()
    }

    pub fn dim_env(&self) -> usize {
        self.couplings[0].rows()
    }

    pub fn couplings(&self) -> &[ComplexMatrix] {
        &self.couplings
    }

    /// The full tensor-space Hamiltonian (block diagonal, one `B_n`
    /// block per system basis state).
    pub fn hamiltonian(&self) -> ComplexMatrix {
        let ds = self.dim_system();
        let de = self.dim_env();
        let dim = ds * de;
        let mut h = ComplexMatrix::zeros(dim, dim);
        for (n, b) in self.couplings.iter().enumerate() {
            for i in 0..de {
                for j in 0..de {
                    h.set(n * de + i, n * de + j, b.get(i, j));
                }
            }
        }
        h
    }
}

/// Apply `exp(-i H t)` to the composite state exactly, via the
/// eigendecomposition of the full tensor-space Hamiltonian.
pub fn evolve_composite(
    initial: &CompositeState,
    interaction: &PointerInteraction,
    t: f64,
) -> Result<CompositeState, DecoherenceError> {
    if initial.dim_system() != interaction.dim_system()
        || initial.dim_env() != interaction.dim_env()
    {
        return Err(DecoherenceError::Dimension(format!(
            "state on {}x{} does not match interaction on {}x{}",
            initial.dim_system(),
            initial.dim_env(),
            interaction.dim_system(),
            interaction.dim_env()
        )));
    }
    if t == 0.0 {
        return Ok(initial.clone());
    }
    let h = interaction.hamiltonian();
    let u = linalg::exp_hermitian_scaled(&h, Complex64::new(0.0, -t))?;
    let amplitudes = linalg::mat_vec(&u, initial.amplitudes())?;
    CompositeState::new(amplitudes, initial.dim_system(), initial.dim_env())
}

/// The matrix of pointer overlaps `⟨Φ_m(t)|Φ_n(t)⟩` with
/// `Φ_n(t) = exp(-i B_n t) |env⟩`. Hermitian with a unit diagonal, and
/// every entry has modulus at most 1.
pub fn pointer_overlaps(
    interaction: &PointerInteraction,
    env_initial: &StateVector,
    t: f64,
) -> Result<ComplexMatrix, DecoherenceError> {
    if env_initial.dim() != interaction.dim_env() {
        return Err(DecoherenceError::Dimension(format!(
            "environment state dimension {} does not match couplings of dimension {}",
            env_initial.dim(),
            interaction.dim_env()
        )));
    }
    let ds = interaction.dim_system();
    let mut pointers = Vec::with_capacity(ds);
    for b in interaction.couplings() {
        let u = linalg::exp_hermitian_scaled(b, Complex64::new(0.0, -t))?;
        pointers.push(linalg::mat_vec(&u, env_initial.amplitudes())?);
    }
    let mut overlaps = ComplexMatrix::zeros(ds, ds);
    for m in 0..ds {
        for n in 0..ds {
            overlaps.set(m, n, linalg::vec_inner(&pointers[m], &pointers[n])?);
        }
    }
    Ok(overlaps)
}

/// Reduced system density: the partial trace of `ψψ†` over the
/// environment factor.
pub fn reduced_density(state: &CompositeState) -> Result<DensityMatrix, DecoherenceError> {
    let reduced = linalg::partial_trace_env(
        &state.density(),
        state.dim_system(),
        state.dim_env(),
    )?;
    Ok(DensityMatrix::new(reduced)?)
}

/// Parameters of a repeated-scattering dephasing channel: per-event
/// strength ε, event count, the basis the channel acts in, an optional
/// recoil kick angle per event, and the generator seed for the kicks.
#[derive(Debug, Clone)]
pub struct ScatteringChannelParams {
    epsilon: f64,
    events: u32,
    basis: BasisChange,
    recoil_strength: f64,
    seed: u64,
}

impl ScatteringChannelParams {
    pub fn new(
        epsilon: f64,
        events: u32,
        basis: BasisChange,
        recoil_strength: f64,
        seed: u64,
    ) -> Result<Self, DecoherenceError> {
        if !(0.0..=1.0).contains(&epsilon) || !epsilon.is_finite() {
            return Err(DecoherenceError::InvalidEpsilon(epsilon));
        }
        if !recoil_strength.is_finite() || recoil_strength < 0.0 {
            return Err(DecoherenceError::InvalidRecoil(recoil_strength));
        }
        if events > i32::MAX as u32 {
            return Err(DecoherenceError::TooManyEvents(events));
        }
        Ok(Self {
            epsilon,
            events,
            basis,
            recoil_strength,
            seed,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn events(&self) -> u32 {
        self.events
    }

    pub fn basis(&self) -> &BasisChange {
        &self.basis
    }

    pub fn recoil_strength(&self) -> f64 {
        self.recoil_strength
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Repeated no-recoil scattering: in the channel basis, every event
/// multiplies the off-diagonal entries by `1-ε` while the diagonal
/// stays exactly intact, so `N` events scale them by `(1-ε)^N`.
pub fn no_recoil_scatter(
    rho: &DensityMatrix,
    params: &ScatteringChannelParams,
) -> Result<DensityMatrix, DecoherenceError> {
    if params.recoil_strength() != 0.0 {
        return Err(DecoherenceError::UnexpectedRecoil(params.recoil_strength()));
    }
    check_channel_dims(rho, params)?;
    let factor = (1.0 - params.epsilon()).powi(params.events() as i32);
    let scaled = scale_off_diagonal_in_basis(rho.matrix(), params.basis(), factor)?;
    Ok(DensityMatrix::new(scaled)?)
}

/// Scattering with recoil: each event applies the `1-ε` off-diagonal
/// factor and then conjugates by a small random unitary
/// `exp(-iθG)`, with Hermitian `G` drawn from the seeded generator and
/// `θ` the recoil strength. Both steps act in the channel basis. The
/// trace is preserved, but the diagonal invariance of the no-recoil
/// channel is lost. With zero recoil strength this is exactly
/// [`no_recoil_scatter`].
pub fn recoil_scatter(
    rho: &DensityMatrix,
    params: &ScatteringChannelParams,
) -> Result<DensityMatrix, DecoherenceError> {
    if params.recoil_strength() == 0.0 {
        return no_recoil_scatter(rho, params);
    }
    check_channel_dims(rho, params)?;
    let basis = params.basis();
    let mut working = basis.conjugate(rho.matrix())?;
    let mut rng = XorShift64Star::new(params.seed());
    for _ in 0..params.events() {
        working = scatter_event(
            &working,
            params.epsilon(),
            params.recoil_strength(),
            &mut rng,
        )?;
    }
    let back = basis.unconjugate(&working)?;
    Ok(DensityMatrix::new(back)?)
}

/// One scattering event on a channel-basis representation: off-diagonal
/// suppression by `1-ε`, then (for θ > 0) conjugation by `exp(-iθG)`.
pub(crate) fn scatter_event(
    working: &ComplexMatrix,
    epsilon: f64,
    recoil_strength: f64,
    rng: &mut XorShift64Star,
) -> Result<ComplexMatrix, DecoherenceError> {
    let damped = scale_off_diagonal(working, 1.0 - epsilon);
    if recoil_strength == 0.0 {
        return Ok(damped);
    }
    let kick = random_hermitian_kick(working.rows(), rng);
    let u = linalg::exp_hermitian_scaled(&kick, Complex64::new(0.0, -recoil_strength))?;
    Ok(u.matmul(&damped)?.matmul(&u.adjoint())?)
}

fn check_channel_dims(
    rho: &DensityMatrix,
    params: &ScatteringChannelParams,
) -> Result<(), DecoherenceError> {
    if rho.dim() != params.basis().dim() {
        return Err(DecoherenceError::Dimension(format!(
            "density dimension {} does not match channel basis dimension {}",
            rho.dim(),
            params.basis().dim()
        )));
    }
    Ok(())
}

/// Hermitian kick `G = (R + R†)/2` with the real and imaginary parts of
/// `R` drawn row-major (real part first) from the generator, each
/// uniform on [-1, 1).
pub fn random_hermitian_kick(dim: usize, rng: &mut XorShift64Star) -> ComplexMatrix {
    let mut r = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let re = rng.next_symmetric();
            let im = rng.next_symmetric();
            r.set(i, j, Complex64::new(re, im));
        }
    }
    let mut g = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(i, j, (r.get(i, j) + r.get(j, i).conj()) * 0.5);
        }
    }
    g
}

/// Deterministic 64-bit multiply-xorshift generator (xorshift64*).
///
/// State update per draw:
///
/// ```text
/// x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
/// output = x.wrapping_mul(0x2545_F491_4F6C_DD1D)
/// ```
///
/// A zero seed (the one fixed point of the xorshift map) is remapped to
/// `0x9E37_79B9_7F4A_7C15`. The same seed yields the same stream on
/// every platform; all randomized channels in this crate draw from it
/// and nothing else.
#[derive(Debug, Clone)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = if seed == 0 { 0x9E37_79B9_7F4A_7C15 } else { seed };
        Self { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform on [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}
