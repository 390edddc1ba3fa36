//! C ABI for the decolab library.
//!
//! Conventions:
//! - Every fallible call returns a [`DlStatus`]; `DL_STATUS_OK` is 0.
//!   On failure [`dl_last_error_message`] returns a human-readable
//!   description (thread-local, valid until the next failing call on
//!   the same thread).
//! - Density matrices and basis changes are opaque handles created and
//!   released with their `*_new`/`*_free` pairs. A null handle in is a
//!   `DL_STATUS_NULL_POINTER` out.
//! - Matrices cross the boundary as separate row-major `re`/`im`
//!   buffers of length `dim * dim`.
//!
//! The matching header `include/decolab.h` is generated by cbindgen at
//! build time.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use num_complex::Complex64;

use decolab::decoherence::{
    evolve_composite, no_recoil_scatter, pointer_overlaps, recoil_scatter, reduced_density,
    CompositeState, DecoherenceError, PointerInteraction, ScatteringChannelParams,
};
use decolab::density::{
    change_basis, dephase, dephasing_commutator_defect, gibbs_density,
    measurement_probabilities, pure_state_density, BasisChange, DensityError, DensityMatrix,
    StateVector,
};
use decolab::linalg::{ComplexMatrix, LinalgError};
use decolab::thermal::{self, DiscreteSpectrum, PhysicalConstants, ThermalError};

/// Result of every fallible call in this ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    NotHermitian = 4,
    NotUnitary = 5,
    NotDensity = 6,
    NumericalFailure = 7,
    Infeasible = 8,
    TruncationExceeded = 9,
}

/// Unit system for the thermal functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlUnits {
    Natural = 0,
    Si = 1,
}

impl DlUnits {
    fn constants(self) -> PhysicalConstants {
        match self {
            DlUnits::Natural => PhysicalConstants::natural(),
            DlUnits::Si => PhysicalConstants::si(),
        }
    }
}

/// Opaque handle to a validated density matrix.
pub struct DlDensity {
    inner: DensityMatrix,
}

/// Opaque handle to a unitary change of basis.
pub struct DlBasis {
    inner: BasisChange,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> =
        RefCell::new(CString::new("").expect("empty string"));
}

fn fail(status: DlStatus, message: impl Into<Vec<u8>>) -> DlStatus {
    let text = CString::new(message).unwrap_or_else(|_| CString::new("invalid error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
    status
}

trait IntoStatus {
    fn status(&self) -> DlStatus;
}

impl IntoStatus for LinalgError {
    fn status(&self) -> DlStatus {
        match self {
            LinalgError::Dimension(_) => DlStatus::DimensionMismatch,
            LinalgError::NotHermitian { .. } => DlStatus::NotHermitian,
            LinalgError::NoConvergence { .. } => DlStatus::NumericalFailure,
            _ => DlStatus::InvalidArgument,
        }
    }
}

impl IntoStatus for DensityError {
    fn status(&self) -> DlStatus {
        match self {
            DensityError::Linalg(inner) => inner.status(),
            DensityError::Trace { .. }
            | DensityError::NotPositive { .. }
            | DensityError::Unrepairable => DlStatus::NotDensity,
            DensityError::NotUnitary { .. } => DlStatus::NotUnitary,
            DensityError::Dimension(_) => DlStatus::DimensionMismatch,
            _ => DlStatus::InvalidArgument,
        }
    }
}

impl IntoStatus for ThermalError {
    fn status(&self) -> DlStatus {
        match self {
            ThermalError::Truncation { .. } | ThermalError::TruncationCap { .. } => {
                DlStatus::TruncationExceeded
            }
            ThermalError::Infeasible { .. } => DlStatus::Infeasible,
            ThermalError::NoConvergence { .. } => DlStatus::NumericalFailure,
            _ => DlStatus::InvalidArgument,
        }
    }
}

impl IntoStatus for DecoherenceError {
    fn status(&self) -> DlStatus {
        match self {
            DecoherenceError::Linalg(inner) => inner.status(),
            DecoherenceError::Density(inner) => inner.status(),
            DecoherenceError::Dimension(_) => DlStatus::DimensionMismatch,
            _ => DlStatus::InvalidArgument,
        }
    }
}

fn fail_with<E: IntoStatus + std::fmt::Display>(err: E) -> DlStatus {
    fail(err.status(), err.to_string())
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn complex_from_parts(
    dim_sq: usize,
    re: *const f64,
    im: *const f64,
) -> Option<Vec<Complex64>> {
    if re.is_null() || im.is_null() {
        return None;
    }
    let re = std::slice::from_raw_parts(re, dim_sq);
    let im = std::slice::from_raw_parts(im, dim_sq);
    Some(
        re.iter()
            .zip(im)
            .map(|(&r, &i)| Complex64::new(r, i))
            .collect(),
    )
}

unsafe fn matrix_from_parts(
    dim: usize,
    re: *const f64,
    im: *const f64,
) -> Result<ComplexMatrix, DlStatus> {
    if dim == 0 {
        return Err(fail(DlStatus::InvalidArgument, "dimension must be positive"));
    }
    let entries = complex_from_parts(dim * dim, re, im)
        .ok_or_else(|| fail(DlStatus::NullPointer, "matrix buffer is null"))?;
    ComplexMatrix::new(dim, dim, entries).map_err(fail_with)
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> DlStatus {
    if out.is_null() {
        return fail(DlStatus::NullPointer, "output handle pointer is null");
    }
    *out = Box::into_raw(Box::new(value));
    DlStatus::Ok
}

unsafe fn density_ref<'a>(handle: *const DlDensity) -> Result<&'a DensityMatrix, DlStatus> {
    handle
        .as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(DlStatus::NullPointer, "density handle is null"))
}

unsafe fn basis_ref<'a>(handle: *const DlBasis) -> Result<&'a BasisChange, DlStatus> {
    handle
        .as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(DlStatus::NullPointer, "basis handle is null"))
}

// ---------------------------------------------------------------------------
// Density handles

/// Build a density matrix from row-major parts, re-validating all
/// invariants. With `repair` set, negative eigenvalues are clipped and
/// the trace renormalized before validation.
///
/// # Safety
/// `re` and `im` must point to `dim * dim` readable doubles; `out` must
/// be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_density_new(
    dim: usize,
    re: *const f64,
    im: *const f64,
    repair: bool,
    out: *mut *mut DlDensity,
) -> DlStatus {
    let matrix = match matrix_from_parts(dim, re, im) {
        Ok(m) => m,
        Err(status) => return status,
    };
    let density = if repair {
        DensityMatrix::repaired(matrix)
    } else {
        DensityMatrix::new(matrix)
    };
    match density {
        Ok(d) => write_handle(out, DlDensity { inner: d }),
        Err(e) => fail_with(e),
    }
}

/// Density of a pure state with the given amplitudes (normalized on the
/// way in; the zero vector is rejected).
///
/// # Safety
/// `re` and `im` must point to `dim` readable doubles; `out` must be a
/// valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_density_pure(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut DlDensity,
) -> DlStatus {
    if dim == 0 {
        return fail(DlStatus::InvalidArgument, "dimension must be positive");
    }
    let Some(amplitudes) = complex_from_parts(dim, re, im) else {
        return fail(DlStatus::NullPointer, "amplitude buffer is null");
    };
    let state = match StateVector::normalized(amplitudes) {
        Ok(s) => s,
        Err(e) => return fail_with(e),
    };
    match pure_state_density(&state) {
        Ok(d) => write_handle(out, DlDensity { inner: d }),
        Err(e) => fail_with(e),
    }
}

/// Thermal state `e^{-H/kT}/Z` of the Hermitian matrix in `h_re`/`h_im`.
///
/// # Safety
/// `h_re` and `h_im` must point to `dim * dim` readable doubles; `out`
/// must be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_density_gibbs(
    dim: usize,
    h_re: *const f64,
    h_im: *const f64,
    k_t: f64,
    out: *mut *mut DlDensity,
) -> DlStatus {
    let h = match matrix_from_parts(dim, h_re, h_im) {
        Ok(m) => m,
        Err(status) => return status,
    };
    match gibbs_density(&h, k_t) {
        Ok(d) => write_handle(out, DlDensity { inner: d }),
        Err(e) => fail_with(e),
    }
}

/// Release a density handle. Null is a no-op.
///
/// # Safety
/// `handle` must be null or a pointer previously returned by a
/// `dl_density_*` constructor and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_density_free(handle: *mut DlDensity) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Dimension of the density matrix; 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live density handle.
#[no_mangle]
pub unsafe extern "C" fn dl_density_dim(handle: *const DlDensity) -> usize {
    handle.as_ref().map_or(0, |h| h.inner.dim())
}

/// Read one entry of the density matrix.
///
/// # Safety
/// `handle` must be a live density handle; `re` and `im` must be valid
/// output locations.
#[no_mangle]
pub unsafe extern "C" fn dl_density_get(
    handle: *const DlDensity,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> DlStatus {
    let density = match density_ref(handle) {
        Ok(d) => d,
        Err(status) => return status,
    };
    if re.is_null() || im.is_null() {
        return fail(DlStatus::NullPointer, "output pointer is null");
    }
    if row >= density.dim() || col >= density.dim() {
        return fail(
            DlStatus::DimensionMismatch,
            format!("entry ({row}, {col}) outside a {0}x{0} matrix", density.dim()),
        );
    }
    let z = density.matrix().get(row, col);
    *re = z.re;
    *im = z.im;
    DlStatus::Ok
}

/// `trace(ρ²)` of the density.
///
/// # Safety
/// `handle` must be a live density handle; `out` a valid output location.
#[no_mangle]
pub unsafe extern "C" fn dl_density_purity(
    handle: *const DlDensity,
    out: *mut f64,
) -> DlStatus {
    let density = match density_ref(handle) {
        Ok(d) => d,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(DlStatus::NullPointer, "output pointer is null");
    }
    *out = density.purity();
    DlStatus::Ok
}

/// Von Neumann entropy in nats.
///
/// # Safety
/// `handle` must be a live density handle; `out` a valid output location.
#[no_mangle]
pub unsafe extern "C" fn dl_density_entropy(
    handle: *const DlDensity,
    out: *mut f64,
) -> DlStatus {
    let density = match density_ref(handle) {
        Ok(d) => d,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(DlStatus::NullPointer, "output pointer is null");
    }
    *out = density.von_neumann_entropy();
    DlStatus::Ok
}

/// Ascending eigenvalues of the density, written to `out` (length
/// `dl_density_dim`).
///
/// # Safety
/// `handle` must be a live density handle; `out` must point to at least
/// `dl_density_dim(handle)` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dl_density_eigenvalues(
    handle: *const DlDensity,
    out: *mut f64,
) -> DlStatus {
    let density = match density_ref(handle) {
        Ok(d) => d,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail(DlStatus::NullPointer, "output pointer is null");
    }
    let values = density.eigenvalues();
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    DlStatus::Ok
}

// ---------------------------------------------------------------------------
// Basis handles

/// Build a unitary basis change from row-major parts.
///
/// # Safety
/// `re` and `im` must point to `dim * dim` readable doubles; `out` must
/// be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_basis_new(
    dim: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut DlBasis,
) -> DlStatus {
    let matrix = match matrix_from_parts(dim, re, im) {
        Ok(m) => m,
        Err(status) => return status,
    };
    match BasisChange::new(matrix) {
        Ok(b) => write_handle(out, DlBasis { inner: b }),
        Err(e) => fail_with(e),
    }
}

/// The identity basis of the given dimension.
///
/// # Safety
/// `out` must be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_basis_identity(dim: usize, out: *mut *mut DlBasis) -> DlStatus {
    if dim == 0 {
        return fail(DlStatus::InvalidArgument, "dimension must be positive");
    }
    write_handle(
        out,
        DlBasis {
            inner: BasisChange::identity(dim),
        },
    )
}

/// The 2x2 Hadamard basis change.
///
/// # Safety
/// `out` must be a valid location for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_basis_hadamard(out: *mut *mut DlBasis) -> DlStatus {
    write_handle(
        out,
        DlBasis {
            inner: BasisChange::hadamard(),
        },
    )
}

/// Release a basis handle. Null is a no-op.
///
/// # Safety
/// `handle` must be null or a pointer previously returned by a
/// `dl_basis_*` constructor and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_basis_free(handle: *mut DlBasis) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Dimension of the basis change; 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live basis handle.
#[no_mangle]
pub unsafe extern "C" fn dl_basis_dim(handle: *const DlBasis) -> usize {
    handle.as_ref().map_or(0, |h| h.inner.dim())
}

// ---------------------------------------------------------------------------
// Density operations

/// Zero the off-diagonal entries of the density in the given basis.
///
/// # Safety
/// `density` and `basis` must be live handles; `out` a valid location
/// for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_density_dephase(
    density: *const DlDensity,
    basis: *const DlBasis,
    out: *mut *mut DlDensity,
) -> DlStatus {
    let (rho, b) = match (density_ref(density), basis_ref(basis)) {
        (Ok(r), Ok(b)) => (r, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match dephase(rho, b) {
        Ok(d) => write_handle(out, DlDensity { inner: d }),
        Err(e) => fail_with(e),
    }
}

/// Express the density in another basis: `C ρ C†`.
///
/// # Safety
/// `density` and `basis` must be live handles; `out` a valid location
/// for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_density_change_basis(
    density: *const DlDensity,
    basis: *const DlBasis,
    out: *mut *mut DlDensity,
) -> DlStatus {
    let (rho, b) = match (density_ref(density), basis_ref(basis)) {
        (Ok(r), Ok(b)) => (r, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match change_basis(rho, b) {
        Ok(d) => write_handle(out, DlDensity { inner: d }),
        Err(e) => fail_with(e),
    }
}

/// Projective measurement probabilities in the given basis, written to
/// `out` (length `dl_density_dim`).
///
/// # Safety
/// `density` and `basis` must be live handles; `out` must point to at
/// least `dl_density_dim(density)` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dl_density_measure(
    density: *const DlDensity,
    basis: *const DlBasis,
    out: *mut f64,
) -> DlStatus {
    let (rho, b) = match (density_ref(density), basis_ref(basis)) {
        (Ok(r), Ok(b)) => (r, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    if out.is_null() {
        return fail(DlStatus::NullPointer, "output pointer is null");
    }
    match measurement_probabilities(rho, b) {
        Ok(p) => {
            std::ptr::copy_nonoverlapping(p.as_ptr(), out, p.len());
            DlStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Frobenius gap `‖D(ρ) - C† D(C ρ C†) C‖` between dephasing before and
/// after the change of basis.
///
/// # Safety
/// `density` and `basis` must be live handles; `out` a valid output
/// location.
#[no_mangle]
pub unsafe extern "C" fn dl_dephasing_defect(
    density: *const DlDensity,
    basis: *const DlBasis,
    out: *mut f64,
) -> DlStatus {
    let (rho, b) = match (density_ref(density), basis_ref(basis)) {
        (Ok(r), Ok(b)) => (r, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    if out.is_null() {
        return fail(DlStatus::NullPointer, "output pointer is null");
    }
    match dephasing_commutator_defect(rho, b) {
        Ok(d) => {
            *out = d;
            DlStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// No-recoil scattering channel: `events` repetitions, each scaling the
/// off-diagonal entries (in the channel basis) by `1 - epsilon`.
///
/// # Safety
/// `density` and `basis` must be live handles; `out` a valid location
/// for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_density_no_recoil_scatter(
    density: *const DlDensity,
    basis: *const DlBasis,
    epsilon: f64,
    events: u32,
    out: *mut *mut DlDensity,
) -> DlStatus {
    let (rho, b) = match (density_ref(density), basis_ref(basis)) {
        (Ok(r), Ok(b)) => (r, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let params = match ScatteringChannelParams::new(epsilon, events, b.clone(), 0.0, 0) {
        Ok(p) => p,
        Err(e) => return fail_with(e),
    };
    match no_recoil_scatter(rho, &params) {
        Ok(d) => write_handle(out, DlDensity { inner: d }),
        Err(e) => fail_with(e),
    }
}

/// Scattering with a seeded random recoil kick of angle
/// `recoil_strength` after each event.
///
/// # Safety
/// `density` and `basis` must be live handles; `out` a valid location
/// for a handle pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_density_recoil_scatter(
    density: *const DlDensity,
    basis: *const DlBasis,
    epsilon: f64,
    events: u32,
    recoil_strength: f64,
    seed: u64,
    out: *mut *mut DlDensity,
) -> DlStatus {
    let (rho, b) = match (density_ref(density), basis_ref(basis)) {
        (Ok(r), Ok(b)) => (r, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    let params =
        match ScatteringChannelParams::new(epsilon, events, b.clone(), recoil_strength, seed) {
            Ok(p) => p,
            Err(e) => return fail_with(e),
        };
    match recoil_scatter(rho, &params) {
        Ok(d) => write_handle(out, DlDensity { inner: d }),
        Err(e) => fail_with(e),
    }
}

// ---------------------------------------------------------------------------
// Thermal functions

/// Bose-Einstein mean occupancy `1/(e^{ħω/k_BT} - 1)`.
///
/// # Safety
/// `out` must be a valid output location.
#[no_mangle]
pub unsafe extern "C" fn dl_bose_einstein(
    omega: f64,
    t: f64,
    units: DlUnits,
    out: *mut f64,
) -> DlStatus {
    scalar_out(out, thermal::bose_einstein(omega, t, &units.constants()))
}

/// Mode density `ω²/(π²c³)`.
///
/// # Safety
/// `out` must be a valid output location.
#[no_mangle]
pub unsafe extern "C" fn dl_mode_density(omega: f64, units: DlUnits, out: *mut f64) -> DlStatus {
    scalar_out(out, thermal::mode_density(omega, &units.constants()))
}

/// Planck spectral energy density.
///
/// # Safety
/// `out` must be a valid output location.
#[no_mangle]
pub unsafe extern "C" fn dl_planck_density(
    omega: f64,
    t: f64,
    units: DlUnits,
    out: *mut f64,
) -> DlStatus {
    scalar_out(out, thermal::planck_density(omega, t, &units.constants()))
}

/// Rayleigh-Jeans spectral energy density.
///
/// # Safety
/// `out` must be a valid output location.
#[no_mangle]
pub unsafe extern "C" fn dl_rayleigh_jeans_density(
    omega: f64,
    t: f64,
    units: DlUnits,
    out: *mut f64,
) -> DlStatus {
    scalar_out(
        out,
        thermal::rayleigh_jeans_density(omega, t, &units.constants()),
    )
}

/// Angular frequency of the Planck-density peak at temperature `t`.
///
/// # Safety
/// `out` must be a valid output location.
#[no_mangle]
pub unsafe extern "C" fn dl_peak_frequency(t: f64, units: DlUnits, out: *mut f64) -> DlStatus {
    scalar_out(out, thermal::peak_frequency(t, &units.constants()))
}

unsafe fn scalar_out(out: *mut f64, value: Result<f64, ThermalError>) -> DlStatus {
    if out.is_null() {
        return fail(DlStatus::NullPointer, "output pointer is null");
    }
    match value {
        Ok(v) => {
            *out = v;
            DlStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Gibbs occupancy of a finite `levels`-level ladder at temperature
/// `t`. Probabilities are written to `probs` (length `levels`); `beta`
/// and `mean_occupancy` may be null if not wanted.
///
/// # Safety
/// `probs` must point to `levels` writable doubles; `beta` and
/// `mean_occupancy` must each be null or valid output locations.
#[no_mangle]
pub unsafe extern "C" fn dl_gibbs_occupancy(
    omega: f64,
    levels: usize,
    t: f64,
    units: DlUnits,
    probs: *mut f64,
    beta: *mut f64,
    mean_occupancy: *mut f64,
) -> DlStatus {
    let constants = units.constants();
    let spectrum = match DiscreteSpectrum::finite(omega, levels, &constants) {
        Ok(s) => s,
        Err(e) => return fail_with(e),
    };
    let occupancy = match thermal::gibbs_occupancy(&spectrum, t, &constants) {
        Ok(o) => o,
        Err(e) => return fail_with(e),
    };
    write_occupancy(&occupancy, probs, beta, mean_occupancy)
}

/// Maximize entropy on a finite `levels`-level ladder subject to a
/// mean-energy constraint. Probabilities are written to `probs`
/// (length `levels`); `beta` and `mean_occupancy` may be null.
///
/// # Safety
/// `probs` must point to `levels` writable doubles; `beta` and
/// `mean_occupancy` must each be null or valid output locations.
#[no_mangle]
pub unsafe extern "C" fn dl_maxent_solve(
    omega: f64,
    levels: usize,
    target_energy: f64,
    units: DlUnits,
    probs: *mut f64,
    beta: *mut f64,
    mean_occupancy: *mut f64,
) -> DlStatus {
    let constants = units.constants();
    let spectrum = match DiscreteSpectrum::finite(omega, levels, &constants) {
        Ok(s) => s,
        Err(e) => return fail_with(e),
    };
    let occupancy = match thermal::maxent_solve(&spectrum, target_energy) {
        Ok(o) => o,
        Err(e) => return fail_with(e),
    };
    write_occupancy(&occupancy, probs, beta, mean_occupancy)
}

unsafe fn write_occupancy(
    occupancy: &decolab::thermal::OccupancyDistribution,
    probs: *mut f64,
    beta: *mut f64,
    mean_occupancy: *mut f64,
) -> DlStatus {
    if probs.is_null() {
        return fail(DlStatus::NullPointer, "probability buffer is null");
    }
    let p = occupancy.probabilities();
    std::ptr::copy_nonoverlapping(p.as_ptr(), probs, p.len());
    if !beta.is_null() {
        *beta = occupancy.beta();
    }
    if !mean_occupancy.is_null() {
        *mean_occupancy = occupancy.mean_occupancy();
    }
    DlStatus::Ok
}

// ---------------------------------------------------------------------------
// Composite evolution

/// Evolve `Σ_n c_n |n⟩ ⊗ |Φ0⟩` under the pointer interaction
/// `Σ_n |n⟩⟨n| ⊗ B_n` for time `t` and return the reduced system
/// density. `couplings_re`/`couplings_im` hold the `dim_system`
/// environment generators concatenated, each `dim_env * dim_env`
/// row-major. When `overlaps_re`/`overlaps_im` are non-null they
/// receive the `dim_system x dim_system` pointer-overlap matrix.
///
/// # Safety
/// All input buffers must be readable at their stated lengths; `out`
/// must be a valid location for a handle pointer; the overlap buffers
/// must each be null or `dim_system * dim_system` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dl_composite_reduced(
    dim_system: usize,
    dim_env: usize,
    coeff_re: *const f64,
    coeff_im: *const f64,
    env_re: *const f64,
    env_im: *const f64,
    couplings_re: *const f64,
    couplings_im: *const f64,
    t: f64,
    out: *mut *mut DlDensity,
    overlaps_re: *mut f64,
    overlaps_im: *mut f64,
) -> DlStatus {
    if dim_system == 0 || dim_env == 0 {
        return fail(DlStatus::InvalidArgument, "dimensions must be positive");
    }
    let Some(coefficients) = complex_from_parts(dim_system, coeff_re, coeff_im) else {
        return fail(DlStatus::NullPointer, "coefficient buffer is null");
    };
    let Some(env_amplitudes) = complex_from_parts(dim_env, env_re, env_im) else {
        return fail(DlStatus::NullPointer, "environment buffer is null");
    };
    let Some(all_couplings) =
        complex_from_parts(dim_system * dim_env * dim_env, couplings_re, couplings_im)
    else {
        return fail(DlStatus::NullPointer, "coupling buffer is null");
    };

    let system = match StateVector::normalized(coefficients) {
        Ok(s) => s,
        Err(e) => return fail_with(e),
    };
    let env = match StateVector::normalized(env_amplitudes) {
        Ok(s) => s,
        Err(e) => return fail_with(e),
    };
    let mut couplings = Vec::with_capacity(dim_system);
    for n in 0..dim_system {
        let block =
            all_couplings[n * dim_env * dim_env..(n + 1) * dim_env * dim_env].to_vec();
        match ComplexMatrix::new(dim_env, dim_env, block) {
            Ok(m) => couplings.push(m),
            Err(e) => return fail_with(e),
        }
    }
    let interaction = match PointerInteraction::new(couplings) {
        Ok(i) => i,
        Err(e) => return fail_with(e),
    };
    let initial = match CompositeState::product(&system, &env) {
        Ok(s) => s,
        Err(e) => return fail_with(e),
    };
    let evolved = match evolve_composite(&initial, &interaction, t) {
        Ok(s) => s,
        Err(e) => return fail_with(e),
    };
    let rho = match reduced_density(&evolved) {
        Ok(d) => d,
        Err(e) => return fail_with(e),
    };
    if !overlaps_re.is_null() && !overlaps_im.is_null() {
        let overlaps = match pointer_overlaps(&interaction, &env, t) {
            Ok(o) => o,
            Err(e) => return fail_with(e),
        };
        for i in 0..dim_system {
            for j in 0..dim_system {
                let z = overlaps.get(i, j);
                *overlaps_re.add(i * dim_system + j) = z.re;
                *overlaps_im.add(i * dim_system + j) = z.im;
            }
        }
    }
    write_handle(out, DlDensity { inner: rho })
}
