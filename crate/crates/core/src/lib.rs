//! Numerical laboratory for thermal density matrices, blackbody
//! radiation laws, and environment-induced dephasing.
//!
//! The crate is organized around one question: which parts of
//! "decoherence" are dynamics, and which are bookkeeping relative to a
//! chosen measurement basis?
//!
//! - [`linalg`] — dense complex matrices, a cyclic Jacobi Hermitian
//!   eigensolver, matrix exponentials, tensor products, partial traces.
//! - [`density`] — validated density matrices, Gibbs states, entropy,
//!   purity, dephasing relative to an explicit basis, and the
//!   non-commutation defect between dephasing and a change of basis.
//! - [`thermal`] — entropy maximization on the discrete spectrum
//!   `ε_n = n·ħω`, the Bose-Einstein occupancy, Planck and
//!   Rayleigh-Jeans spectral densities, and the spectral peak.
//! - [`decoherence`] — exact system-environment evolution under pointer
//!   interactions, reduced densities, pointer overlaps, and the
//!   no-recoil/recoil scattering channels.
//! - [`cli`] — the six scenario commands behind the `decolab` binary.
//! - [`io`] — the JSON matrix schema and lossless CSV floats.

pub mod cli;
pub mod decoherence;
pub mod density;
pub mod io;
pub mod linalg;
pub mod thermal;

pub use decoherence::{
    evolve_composite, no_recoil_scatter, pointer_overlaps, recoil_scatter, reduced_density,
    CompositeState, DecoherenceError, PointerInteraction, ScatteringChannelParams,
    XorShift64Star,
};
pub use density::{
    change_basis, dephase, dephasing_commutator_defect, gibbs_density,
    measurement_probabilities, pure_state_density, BasisChange, DensityError, DensityMatrix,
    StateVector,
};
pub use linalg::{
    eig_hermitian, exp_hermitian_scaled, partial_trace_env, tensor_product, ComplexMatrix,
    EigenDecomposition, LinalgError,
};
pub use thermal::{
    bose_einstein, gibbs_occupancy, maxent_solve, mode_density, peak_frequency,
    planck_density, rayleigh_jeans_density, DiscreteSpectrum, OccupancyDistribution,
    PhysicalConstants, ThermalError, UnitSystem,
};
