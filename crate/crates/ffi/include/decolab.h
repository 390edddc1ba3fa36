#ifndef DECOLAB_H
#define DECOLAB_H

/* Generated by cbindgen from crates/ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this ABI.
 */
typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_INVALID_ARGUMENT = 2,
  DL_STATUS_DIMENSION_MISMATCH = 3,
  DL_STATUS_NOT_HERMITIAN = 4,
  DL_STATUS_NOT_UNITARY = 5,
  DL_STATUS_NOT_DENSITY = 6,
  DL_STATUS_NUMERICAL_FAILURE = 7,
  DL_STATUS_INFEASIBLE = 8,
  DL_STATUS_TRUNCATION_EXCEEDED = 9,
} DlStatus;

/**
 * Unit system for the thermal functions.
 */
typedef enum DlUnits {
  DL_UNITS_NATURAL = 0,
  DL_UNITS_SI = 1,
} DlUnits;

/**
 * Opaque handle to a unitary change of basis.
 */
typedef struct DlBasis DlBasis;

/**
 * Opaque handle to a validated density matrix.
 */
typedef struct DlDensity DlDensity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static C string.
 */
const char *dl_version(void);

/**
 * Message for the most recent failure on this thread. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *dl_last_error_message(void);

/**
 * Build a density matrix from row-major parts, re-validating all
 * invariants. With `repair` set, negative eigenvalues are clipped and
 * the trace renormalized before validation.
 *
 * # Safety
 * `re` and `im` must point to `dim * dim` readable doubles; `out` must
 * be a valid location for a handle pointer.
 */
enum DlStatus dl_density_new(size_t dim,
                             const double *re,
                             const double *im,
                             bool repair,
                             struct DlDensity **out);

/**
 * Density of a pure state with the given amplitudes (normalized on the
 * way in; the zero vector is rejected).
 *
 * # Safety
 * `re` and `im` must point to `dim` readable doubles; `out` must be a
 * valid location for a handle pointer.
 */
enum DlStatus dl_density_pure(size_t dim,
                              const double *re,
                              const double *im,
                              struct DlDensity **out);

/**
 * Thermal state `e^{-H/kT}/Z` of the Hermitian matrix in `h_re`/`h_im`.
 *
 * # Safety
 * `h_re` and `h_im` must point to `dim * dim` readable doubles; `out`
 * must be a valid location for a handle pointer.
 */
enum DlStatus dl_density_gibbs(size_t dim,
                               const double *h_re,
                               const double *h_im,
                               double k_t,
                               struct DlDensity **out);

/**
 * Release a density handle. Null is a no-op.
 *
 * # Safety
 * `handle` must be null or a pointer previously returned by a
 * `dl_density_*` constructor and not yet freed.
 */
void dl_density_free(struct DlDensity *handle);

/**
 * Dimension of the density matrix; 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live density handle.
 */
size_t dl_density_dim(const struct DlDensity *handle);

/**
 * Read one entry of the density matrix.
 *
 * # Safety
 * `handle` must be a live density handle; `re` and `im` must be valid
 * output locations.
 */
enum DlStatus dl_density_get(const struct DlDensity *handle,
                             size_t row,
                             size_t col,
                             double *re,
                             double *im);

/**
 * `trace(ρ²)` of the density.
 *
 * # Safety
 * `handle` must be a live density handle; `out` a valid output location.
 */
enum DlStatus dl_density_purity(const struct DlDensity *handle, double *out);

/**
 * Von Neumann entropy in nats.
 *
 * # Safety
 * `handle` must be a live density handle; `out` a valid output location.
 */
enum DlStatus dl_density_entropy(const struct DlDensity *handle, double *out);

/**
 * Ascending eigenvalues of the density, written to `out` (length
 * `dl_density_dim`).
 *
 * # Safety
 * `handle` must be a live density handle; `out` must point to at least
 * `dl_density_dim(handle)` writable doubles.
 */
enum DlStatus dl_density_eigenvalues(const struct DlDensity *handle, double *out);

/**
 * Build a unitary basis change from row-major parts.
 *
 * # Safety
 * `re` and `im` must point to `dim * dim` readable doubles; `out` must
 * be a valid location for a handle pointer.
 */
enum DlStatus dl_basis_new(size_t dim, const double *re, const double *im, struct DlBasis **out);

/**
 * The identity basis of the given dimension.
 *
 * # Safety
 * `out` must be a valid location for a handle pointer.
 */
enum DlStatus dl_basis_identity(size_t dim, struct DlBasis **out);

/**
 * The 2x2 Hadamard basis change.
 *
 * # Safety
 * `out` must be a valid location for a handle pointer.
 */
enum DlStatus dl_basis_hadamard(struct DlBasis **out);

/**
 * Release a basis handle. Null is a no-op.
 *
 * # Safety
 * `handle` must be null or a pointer previously returned by a
 * `dl_basis_*` constructor and not yet freed.
 */
void dl_basis_free(struct DlBasis *handle);

/**
 * Dimension of the basis change; 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live basis handle.
 */
size_t dl_basis_dim(const struct DlBasis *handle);

/**
 * Zero the off-diagonal entries of the density in the given basis.
 *
 * # Safety
 * `density` and `basis` must be live handles; `out` a valid location
 * for a handle pointer.
 */
enum DlStatus dl_density_dephase(const struct DlDensity *density,
                                 const struct DlBasis *basis,
                                 struct DlDensity **out);

/**
 * Express the density in another basis: `C ρ C†`.
 *
 * # Safety
 * `density` and `basis` must be live handles; `out` a valid location
 * for a handle pointer.
 */
enum DlStatus dl_density_change_basis(const struct DlDensity *density,
                                      const struct DlBasis *basis,
                                      struct DlDensity **out);

/**
 * Projective measurement probabilities in the given basis, written to
 * `out` (length `dl_density_dim`).
 *
 * # Safety
 * `density` and `basis` must be live handles; `out` must point to at
 * least `dl_density_dim(density)` writable doubles.
 */
enum DlStatus dl_density_measure(const struct DlDensity *density,
                                 const struct DlBasis *basis,
                                 double *out);

/**
 * Frobenius gap `‖D(ρ) - C† D(C ρ C†) C‖` between dephasing before and
 * after the change of basis.
 *
 * # Safety
 * `density` and `basis` must be live handles; `out` a valid output
 * location.
 */
enum DlStatus dl_dephasing_defect(const struct DlDensity *density,
                                  const struct DlBasis *basis,
                                  double *out);

/**
 * No-recoil scattering channel: `events` repetitions, each scaling the
 * off-diagonal entries (in the channel basis) by `1 - epsilon`.
 *
 * # Safety
 * `density` and `basis` must be live handles; `out` a valid location
 * for a handle pointer.
 */
enum DlStatus dl_density_no_recoil_scatter(const struct DlDensity *density,
                                           const struct DlBasis *basis,
                                           double epsilon,
                                           uint32_t events,
                                           struct DlDensity **out);

/**
 * Scattering with a seeded random recoil kick of angle
 * `recoil_strength` after each event.
 *
 * # Safety
 * `density` and `basis` must be live handles; `out` a valid location
 * for a handle pointer.
 */
enum DlStatus dl_density_recoil_scatter(const struct DlDensity *density,
                                        const struct DlBasis *basis,
                                        double epsilon,
                                        uint32_t events,
                                        double recoil_strength,
                                        uint64_t seed,
                                        struct DlDensity **out);

/**
 * Bose-Einstein mean occupancy `1/(e^{ħω/k_BT} - 1)`.
 *
 * # Safety
 * `out` must be a valid output location.
 */
enum DlStatus dl_bose_einstein(double omega, double t, enum DlUnits units, double *out);

/**
 * Mode density `ω²/(π²c³)`.
 *
 * # Safety
 * `out` must be a valid output location.
 */
enum DlStatus dl_mode_density(double omega, enum DlUnits units, double *out);

/**
 * Planck spectral energy density.
 *
 * # Safety
 * `out` must be a valid output location.
 */
enum DlStatus dl_planck_density(double omega, double t, enum DlUnits units, double *out);

/**
 * Rayleigh-Jeans spectral energy density.
 *
 * # Safety
 * `out` must be a valid output location.
 */
enum DlStatus dl_rayleigh_jeans_density(double omega, double t, enum DlUnits units, double *out);

/**
 * Angular frequency of the Planck-density peak at temperature `t`.
 *
 * # Safety
 * `out` must be a valid output location.
 */
enum DlStatus dl_peak_frequency(double t, enum DlUnits units, double *out);

/**
 * Gibbs occupancy of a finite `levels`-level ladder at temperature
 * `t`. Probabilities are written to `probs` (length `levels`); `beta`
 * and `mean_occupancy` may be null if not wanted.
 *
 * # Safety
 * `probs` must point to `levels` writable doubles; `beta` and
 * `mean_occupancy` must each be null or valid output locations.
 */
enum DlStatus dl_gibbs_occupancy(double omega,
                                 size_t levels,
                                 double t,
                                 enum DlUnits units,
                                 double *probs,
                                 double *beta,
                                 double *mean_occupancy);

/**
 * Maximize entropy on a finite `levels`-level ladder subject to a
 * mean-energy constraint. Probabilities are written to `probs`
 * (length `levels`); `beta` and `mean_occupancy` may be null.
 *
 * # Safety
 * `probs` must point to `levels` writable doubles; `beta` and
 * `mean_occupancy` must each be null or valid output locations.
 */
enum DlStatus dl_maxent_solve(double omega,
                              size_t levels,
                              double target_energy,
                              enum DlUnits units,
                              double *probs,
                              double *beta,
                              double *mean_occupancy);

/**
 * Evolve `Σ_n c_n |n⟩ ⊗ |Φ0⟩` under the pointer interaction
 * `Σ_n |n⟩⟨n| ⊗ B_n` for time `t` and return the reduced system
 * density. `couplings_re`/`couplings_im` hold the `dim_system`
 * environment generators concatenated, each `dim_env * dim_env`
 * row-major. When `overlaps_re`/`overlaps_im` are non-null they
 * receive the `dim_system x dim_system` pointer-overlap matrix.
 *
 * # Safety
 * All input buffers must be readable at their stated lengths; `out`
 * must be a valid location for a handle pointer; the overlap buffers
 * must each be null or `dim_system * dim_system` writable doubles.
 */
enum DlStatus dl_composite_reduced(size_t dim_system,
                                   size_t dim_env,
                                   const double *coeff_re,
                                   const double *coeff_im,
                                   const double *env_re,
                                   const double *env_im,
                                   const double *couplings_re,
                                   const double *couplings_im,
                                   double t,
                                   struct DlDensity **out,
                                   double *overlaps_re,
                                   double *overlaps_im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DECOLAB_H */
