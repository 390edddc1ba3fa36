//! Entropy maximization on discrete spectra and blackbody radiation laws.
//!
//! The harmonic ladder `ε_n = n·ħω` carries a Gibbs occupancy whose mean
//! matches the Bose-Einstein distribution once enough levels are kept.
//! [`maxent_solve`] recovers the same distribution numerically by
//! root-solving the inverse-temperature Lagrange multiplier against a
//! mean-energy constraint, and the radiation laws combine the occupancy
//! with the electromagnetic mode density.

use thiserror::Error;

/// Relative Boltzmann tail weight above which a truncated ladder is
/// rejected as an approximation of the infinite spectrum.
pub const TAIL_WEIGHT_LIMIT: f64 = 1e-9;
/// Tail-weight target used when choosing a truncation depth.
pub const TRUNCATION_TARGET: f64 = 1e-12;
/// Hard cap on the number of ladder levels.
pub const MAX_LEVELS: usize = 10_000;
/// Relative tolerance on the energy constraint in the multiplier solve.
pub const ENERGY_REL_TOL: f64 = 1e-10;
/// Iteration cap for bisection and bracket expansion.
pub const BISECTION_MAX_ITERS: usize = 200;

#[derive(Debug, Error)]
pub enum ThermalError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("spectrum needs at least 2 levels, got {levels}")]
    LevelCount { levels: usize },
    #[error(
        "truncation inadequate: tail weight {tail_weight:.3e} exceeds {limit:.3e}; \
         {required_levels} levels required"
    )]
    Truncation {
        tail_weight: f64,
        limit: f64,
        required_levels: usize,
    },
    #[error("required truncation depth {required_levels} exceeds the cap of {cap} levels")]
    TruncationCap { required_levels: usize, cap: usize },
    #[error(
        "target energy {energy} is outside the attainable range (0, {max_energy})"
    )]
    Infeasible { energy: f64, max_energy: f64 },
    #[error("multiplier solve did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
}

/// Unit system selector for [`PhysicalConstants`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    /// ħ = k_B = c = 1.
    Natural,
    /// CODATA SI values.
    Si,
}

/// The three constants entering the radiation laws, fixed by the unit
/// system at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    k_b: f64,
    c: f64,
    mode: UnitSystem,
}

impl PhysicalConstants {
    /// ħ = k_B = c = 1 exactly; the test and CLI default.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            k_b: 1.0,
            c: 1.0,
            mode: UnitSystem::Natural,
        }
    }

    /// CODATA values: ħ = 1.054571817e-34 J·s, k_B = 1.380649e-23 J/K,
    /// c = 2.99792458e8 m/s.
    pub fn si() -> Self {
        Self {
            hbar: 1.054571817e-34,
            k_b: 1.380649e-23,
            c: 2.99792458e8,
            mode: UnitSystem::Si,
        }
    }

    pub fn for_units(units: UnitSystem) -> Self {
        match units {
            UnitSystem::Natural => Self::natural(),
            UnitSystem::Si => Self::si(),
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn k_b(&self) -> f64 {
        self.k_b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mode(&self) -> UnitSystem {
        self.mode
    }
}

/// Evenly spaced spectrum `ε_n = n·ħω`, `n = 0..levels`.
///
/// A spectrum is either a *truncated ladder* — a finite stand-in for
/// the infinite harmonic spectrum, guarded against inadequate depth —
/// or a genuinely *finite* system (for example a two-level system)
/// where no such guard applies.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpectrum {
    omega: f64,
    levels: usize,
    spacing: f64,
    truncated: bool,
}

impl DiscreteSpectrum {
    /// Ladder truncated to `levels` levels, representing the infinite
    /// spectrum. [`gibbs_occupancy`] rejects it when its Boltzmann tail
    /// weight is too large at the requested temperature.
    pub fn truncated_ladder(
        omega: f64,
        levels: usize,
        constants: &PhysicalConstants,
    ) -> Result<Self, ThermalError> {
        Self::build(omega, levels, constants, true)
    }

    /// Genuinely finite system with `levels` equally spaced levels.
    pub fn finite(
        omega: f64,
        levels: usize,
        constants: &PhysicalConstants,
    ) -> Result<Self, ThermalError> {
        Self::build(omega, levels, constants, false)
    }

    /// Ladder truncated by the tail-weight rule at temperature `t`:
    /// the smallest depth whose Boltzmann tail weight sits below
    /// [`TRUNCATION_TARGET`], capped at [`MAX_LEVELS`].
    pub fn auto_truncated(
        omega: f64,
        t: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self, ThermalError> {
        check_positive("omega", omega)?;
        check_positive("temperature", t)?;
        let x = constants.hbar() * omega / (constants.k_b() * t);
        let levels = required_levels(x)?;
        Self::build(omega, levels, constants, true)
    }

    fn build(
        omega: f64,
        levels: usize,
        constants: &PhysicalConstants,
        truncated: bool,
    ) -> Result<Self, ThermalError> {
        check_positive("omega", omega)?;
        if levels < 2 {
            return Err(ThermalError::LevelCount { levels });
        }
        Ok(Self {
            omega,
            levels,
            spacing: constants.hbar() * omega,
            truncated,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Level spacing `ħω` in energy units.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn is_truncated_ladder(&self) -> bool {
        self.truncated
    }

    /// Energy of level `n`.
    pub fn energy(&self, n: usize) -> f64 {
        n as f64 * self.spacing
    }

    pub fn energies(&self) -> Vec<f64> {
        (0..self.levels).map(|n| self.energy(n)).collect()
    }

    pub fn max_energy(&self) -> f64 {
        self.energy(self.levels - 1)
    }
}

/// Smallest depth `N` with `e^{-N·x} / (1 - e^{-x}) <` the truncation
/// target, for dimensionless spacing `x = βħω`.
fn required_levels(x: f64) -> Result<usize, ThermalError> {
    let denom = -(-x).exp_m1(); // 1 - e^{-x}
    if denom <= 0.0 {
        // x so small the ladder never thins out; report the cap.
        return Err(ThermalError::TruncationCap {
            required_levels: usize::MAX,
            cap: MAX_LEVELS,
        });
    }
    let needed = (-(TRUNCATION_TARGET * denom).ln() / x).ceil();
    let required = if needed.is_finite() && needed > 0.0 {
        needed as usize
    } else {
        usize::MAX
    };
    if required > MAX_LEVELS {
        return Err(ThermalError::TruncationCap {
            required_levels: required,
            cap: MAX_LEVELS,
        });
    }
    Ok(required.max(2))
}

/// Boltzmann tail weight `e^{-N·x} / (1 - e^{-x})` of the levels
/// dropped by an `N`-level ladder at dimensionless spacing `x`.
fn tail_weight(x: f64, levels: usize) -> f64 {
    let denom = -(-x).exp_m1();
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    (-(levels as f64) * x).exp() / denom
}

/// Occupancy distribution over a discrete spectrum: probabilities,
/// the inverse temperature that generated them, and the mean level
/// index.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyDistribution {
    probabilities: Vec<f64>,
    beta: f64,
    mean_occupancy: f64,
}

impl OccupancyDistribution {
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Inverse temperature `1/(k_B T)` in inverse energy units. Zero or
    /// negative values are legitimate maximum-entropy solutions for
    /// finite spectra.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Mean level index `Σ n p_n`.
    pub fn mean_occupancy(&self) -> f64 {
        self.mean_occupancy
    }

    /// Mean energy `Σ p_n ε_n` against the spectrum that produced the
    /// distribution.
    pub fn mean_energy(&self, spectrum: &DiscreteSpectrum) -> f64 {
        mean_energy(&self.probabilities, spectrum)
    }

    /// Shannon entropy `-Σ p ln p` in nats.
    pub fn entropy(&self) -> f64 {
        crate::density::shannon_entropy(&self.probabilities)
    }
}

fn mean_energy(probabilities: &[f64], spectrum: &DiscreteSpectrum) -> f64 {
    probabilities
        .iter()
        .enumerate()
        .map(|(n, &p)| p * spectrum.energy(n))
        .sum()
}

/// Normalized Boltzmann weights `p_n ∝ e^{-β ε_n}` over the spectrum.
/// The reference energy is shifted so every exponent is nonpositive,
/// which keeps negative β (population inversion) finite too.
fn occupancy_from_beta(spectrum: &DiscreteSpectrum, beta: f64) -> OccupancyDistribution {
    let energies = spectrum.energies();
    let reference = if beta >= 0.0 {
        energies[0]
    } else {
        *energies.last().expect("at least two levels")
    };
    let weights: Vec<f64> = energies
        .iter()
        .map(|&e| (-beta * (e - reference)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let probabilities: Vec<f64> = weights.iter().map(|w| w / z).collect();
    let mean_occupancy = probabilities
        .iter()
        .enumerate()
        .map(|(n, &p)| n as f64 * p)
        .sum();
    OccupancyDistribution {
        probabilities,
        beta,
        mean_occupancy,
    }
}

/// Gibbs occupancy of the spectrum at temperature `t`.
///
/// For a truncated ladder the Boltzmann tail weight of the dropped
/// levels must stay below [`TAIL_WEIGHT_LIMIT`]; otherwise the call
/// fails and reports the depth the truncation rule would require.
/// Finite spectra are evaluated as-is.
pub fn gibbs_occupancy(
    spectrum: &DiscreteSpectrum,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<OccupancyDistribution, ThermalError> {
    check_positive("temperature", t)?;
    let beta = 1.0 / (constants.k_b() * t);
    if spectrum.is_truncated_ladder() {
        let x = beta * spectrum.spacing();
        let tail = tail_weight(x, spectrum.levels());
        if tail > TAIL_WEIGHT_LIMIT {
            let required = required_levels(x)?;
            return Err(ThermalError::Truncation {
                tail_weight: tail,
                limit: TAIL_WEIGHT_LIMIT,
                required_levels: required,
            });
        }
    }
    Ok(occupancy_from_beta(spectrum, beta))
}

/// Maximize `-Σ p_n ln p_n` subject to `Σ p_n = 1` and
/// `Σ p_n ε_n = target_energy`.
///
/// The maximizer is the Boltzmann family `p_n ∝ e^{-β ε_n}`; the
/// multiplier β is found by bisection on the (strictly decreasing)
/// mean energy, with the bracket grown by doubling from `±1/E`. The
/// energy constraint is met to [`ENERGY_REL_TOL`] relative.
pub fn maxent_solve(
    spectrum: &DiscreteSpectrum,
    target_energy: f64,
) -> Result<OccupancyDistribution, ThermalError> {
    let max_energy = spectrum.max_energy();
    if !target_energy.is_finite() || target_energy <= 0.0 || target_energy >= max_energy {
        return Err(ThermalError::Infeasible {
            energy: target_energy,
            max_energy,
        });
    }

    let energy_at = |beta: f64| occupancy_from_beta(spectrum, beta).mean_energy(spectrum);

    // Mean energy decreases in β: cold (large β) piles weight on the
    // ground level, inverted (negative β) piles it on the top level.
    let beta0 = 1.0 / target_energy;
    let mut lo = -beta0;
    let mut hi = beta0;
    let mut expansions = 0;
    while energy_at(lo) < target_energy {
        lo *= 2.0;
        expansions += 1;
        if expansions > BISECTION_MAX_ITERS {
            return Err(ThermalError::NoConvergence {
                iterations: expansions,
            });
        }
    }
    while energy_at(hi) > target_energy {
        hi *= 2.0;
        expansions += 1;
        if expansions > BISECTION_MAX_ITERS {
            return Err(ThermalError::NoConvergence {
                iterations: expansions,
            });
        }
    }

    for _ in 0..BISECTION_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        let u = energy_at(mid);
        if ((u - target_energy) / target_energy).abs() <= ENERGY_REL_TOL {
            return Ok(occupancy_from_beta(spectrum, mid));
        }
        if u > target_energy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(ThermalError::NoConvergence {
        iterations: BISECTION_MAX_ITERS,
    })
}

/// Mean occupancy `1/(e^{ħω/k_B T} - 1)` of a mode at temperature `t`.
pub fn bose_einstein(
    omega: f64,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<f64, ThermalError> {
    check_positive("omega", omega)?;
    check_positive("temperature", t)?;
    let x = constants.hbar() * omega / (constants.k_b() * t);
    Ok(1.0 / x.exp_m1())
}

/// Electromagnetic mode density `ω² / (π² c³)` per volume per angular
/// frequency.
pub fn mode_density(omega: f64, constants: &PhysicalConstants) -> Result<f64, ThermalError> {
    check_positive("omega", omega)?;
    let c = constants.c();
    Ok(omega * omega / (std::f64::consts::PI.powi(2) * c * c * c))
}

/// Spectral energy density `ρ(ω, T) = ω²/(π²c³) · ħω · 1/(e^{ħω/k_BT}-1)`.
///
/// Built literally as mode density × energy per photon × occupancy, so
/// the product identity holds to the last bit.
pub fn planck_density(
    omega: f64,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<f64, ThermalError> {
    Ok(mode_density(omega, constants)? * (constants.hbar() * omega)
        * bose_einstein(omega, t, constants)?)
}

/// Classical (continuous-spectrum) law `ω² k_B T / (π² c³)`, the small
/// `ħω/k_BT` limit of the Planck density.
pub fn rayleigh_jeans_density(
    omega: f64,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<f64, ThermalError> {
    check_positive("temperature", t)?;
    Ok(mode_density(omega, constants)? * constants.k_b() * t)
}

/// Angular frequency maximizing the Planck density at temperature `t`.
///
/// Solves `3(1 - e^{-x}) = x` for the dimensionless peak position
/// `x* = ħω*/k_BT` by bisection, then scales: `ω* = x* k_B T / ħ`.
pub fn peak_frequency(t: f64, constants: &PhysicalConstants) -> Result<f64, ThermalError> {
    check_positive("temperature", t)?;
    let g = |x: f64| -3.0 * (-x).exp_m1() - x;
    // g(2) > 0 > g(4) brackets the nontrivial root.
    let mut lo = 2.0;
    let mut hi = 4.0;
    for _ in 0..BISECTION_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= f64::EPSILON * mid {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x_star = 0.5 * (lo + hi);
    Ok(x_star * constants.k_b() * t / constants.hbar())
}

fn check_positive(name: &'static str, value: f64) -> Result<(), ThermalError> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(ThermalError::NonPositive { name, value });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT: PhysicalConstants = PhysicalConstants {
        hbar: 1.0,
        k_b: 1.0,
        c: 1.0,
        mode: UnitSystem::Natural,
    };

    #[test]
    fn gibbs_occupancy_at_doubling_temperature() {
        // ħω/k_BT = ln 2 makes the Bose-Einstein mean exactly 1.
        let t = 1.0 / 2.0f64.ln();
        let spectrum = DiscreteSpectrum::truncated_ladder(1.0, 60, &NAT).unwrap();
        let occ = gibbs_occupancy(&spectrum, t, &NAT).unwrap();
        assert!((occ.mean_occupancy() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gibbs_occupancy_matches_geometric_closed_form() {
        // Oracle: mean of the geometric distribution is 1/(e^x - 1).
        let spectrum = DiscreteSpectrum::truncated_ladder(1.0, 60, &NAT).unwrap();
        let occ = gibbs_occupancy(&spectrum, 1.0, &NAT).unwrap();
        let expected = 1.0 / 1.0f64.exp_m1();
        assert!((occ.mean_occupancy() - expected).abs() < 1e-12);
        assert!((expected - 0.5819767068693264).abs() < 1e-15);
        let total: f64 = occ.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn finite_two_level_system_at_high_temperature() {
        let spectrum = DiscreteSpectrum::finite(1.0, 2, &NAT).unwrap();
        let occ = gibbs_occupancy(&spectrum, 1e9, &NAT).unwrap();
        assert!((occ.probabilities()[0] - 0.5).abs() < 1e-9);
        assert!((occ.probabilities()[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn truncated_ladder_guard_reports_required_depth() {
        let spectrum = DiscreteSpectrum::truncated_ladder(1.0, 5, &NAT).unwrap();
        let err = gibbs_occupancy(&spectrum, 1.0, &NAT).unwrap_err();
        match err {
            ThermalError::Truncation {
                required_levels, ..
            } => {
                // e^{-N} / (1 - e^{-1}) < 1e-12 needs N ≥ 28.
                assert!(required_levels >= 28);
                assert!(required_levels <= 40);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn truncation_cap_binds_at_extreme_temperature() {
        let err = DiscreteSpectrum::auto_truncated(1.0, 1e9, &NAT).unwrap_err();
        assert!(matches!(err, ThermalError::TruncationCap { .. }));
    }

    #[test]
    fn auto_truncation_satisfies_the_rule() {
        let spectrum = DiscreteSpectrum::auto_truncated(1.0, 1.0, &NAT).unwrap();
        assert!(tail_weight(1.0, spectrum.levels()) < TRUNCATION_TARGET);
        assert!(tail_weight(1.0, spectrum.levels() - 1) >= TRUNCATION_TARGET);
    }

    #[test]
    fn maxent_recovers_unit_beta_from_geometric_energy() {
        // Oracle: ladder mean energy at β=1 is 1/(e-1).
        let spectrum = DiscreteSpectrum::truncated_ladder(1.0, 60, &NAT).unwrap();
        let target = 1.0 / 1.0f64.exp_m1();
        let occ = maxent_solve(&spectrum, target).unwrap();
        assert!((occ.beta() - 1.0).abs() < 1e-8);
        assert!(((occ.mean_energy(&spectrum) - target) / target).abs() <= ENERGY_REL_TOL);
    }

    #[test]
    fn maxent_two_level_midpoint_is_uniform() {
        let spectrum = DiscreteSpectrum::finite(1.0, 2, &NAT).unwrap();
        let occ = maxent_solve(&spectrum, 0.5).unwrap();
        assert_eq!(occ.beta(), 0.0);
        assert!((occ.probabilities()[0] - 0.5).abs() < 1e-12);
        assert!((occ.probabilities()[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn maxent_two_level_matches_logit_oracle() {
        // Oracle: for levels {0, 1}, β = ln((1-E)/E).
        let e1 = (-1.0f64).exp();
        let target = e1 / (1.0 + e1);
        let spectrum = DiscreteSpectrum::finite(1.0, 2, &NAT).unwrap();
        let occ = maxent_solve(&spectrum, target).unwrap();
        let oracle = ((1.0 - target) / target).ln();
        assert!((oracle - 1.0).abs() < 1e-14);
        assert!((occ.beta() - oracle).abs() < 1e-8);
    }

    #[test]
    fn maxent_handles_population_inversion() {
        let spectrum = DiscreteSpectrum::finite(1.0, 2, &NAT).unwrap();
        let occ = maxent_solve(&spectrum, 0.75).unwrap();
        let oracle = (0.25f64 / 0.75).ln();
        assert!((occ.beta() - oracle).abs() < 1e-8);
        assert!(occ.beta() < 0.0);
    }

    #[test]
    fn maxent_rejects_infeasible_targets() {
        let spectrum = DiscreteSpectrum::finite(1.0, 2, &NAT).unwrap();
        assert!(matches!(
            maxent_solve(&spectrum, 2.0),
            Err(ThermalError::Infeasible { .. })
        ));
        assert!(matches!(
            maxent_solve(&spectrum, 0.0),
            Err(ThermalError::Infeasible { .. })
        ));
        assert!(matches!(
            maxent_solve(&spectrum, 1.0),
            Err(ThermalError::Infeasible { .. })
        ));
    }

    #[test]
    fn bose_einstein_values() {
        let t_ln2 = 1.0 / 2.0f64.ln();
        assert!((bose_einstein(1.0, t_ln2, &NAT).unwrap() - 1.0).abs() < 1e-12);
        let frozen = bose_einstein(50.0, 1.0, &NAT).unwrap();
        assert!(frozen < 1e-21);
        assert!(frozen > 0.0);
        let unit = bose_einstein(1.0, 1.0, &NAT).unwrap();
        assert!((unit - 0.5819767068693264).abs() < 1e-15);
    }

    #[test]
    fn mode_density_values() {
        let expected = 1.0 / std::f64::consts::PI.powi(2);
        assert!((mode_density(1.0, &NAT).unwrap() - expected).abs() < 1e-16);
        assert!((mode_density(2.0, &NAT).unwrap() - 4.0 * expected).abs() < 1e-15);
        // SI: ω = π² c makes ω²/(π²c³) collapse to π²/c.
        let si = PhysicalConstants::si();
        let omega = std::f64::consts::PI.powi(2) * si.c();
        let expected_si = std::f64::consts::PI.powi(2) / si.c();
        let got = mode_density(omega, &si).unwrap();
        assert!(((got - expected_si) / expected_si).abs() < 1e-12);
        assert!((expected_si - 3.2921456620130713e-8).abs() < 1e-20);
    }

    #[test]
    fn planck_density_scalar_value() {
        // Oracle: 1/(π²(e-1)) at ω = T = 1 in natural units.
        let expected = 1.0 / (std::f64::consts::PI.powi(2) * 1.0f64.exp_m1());
        let got = planck_density(1.0, 1.0, &NAT).unwrap();
        assert!(((got - expected) / expected).abs() < 1e-15);
        assert!((expected - 0.05896656879227).abs() < 1e-14);
    }

    #[test]
    fn planck_to_rayleigh_jeans_ratio() {
        // Oracle: the ratio is x/(e^x - 1).
        for &x in &[0.01, 3.0] {
            let ratio = planck_density(x, 1.0, &NAT).unwrap()
                / rayleigh_jeans_density(x, 1.0, &NAT).unwrap();
            let oracle = x / x.exp_m1();
            assert!((ratio - oracle).abs() < 1e-14);
        }
        let r = planck_density(0.01, 1.0, &NAT).unwrap()
            / rayleigh_jeans_density(0.01, 1.0, &NAT).unwrap();
        assert!((r - 0.9950083333194445).abs() < 1e-13);
        let r3 = planck_density(3.0, 1.0, &NAT).unwrap()
            / rayleigh_jeans_density(3.0, 1.0, &NAT).unwrap();
        assert!((r3 - 0.15718708947376786).abs() < 1e-13);
    }

    #[test]
    fn rayleigh_jeans_is_mode_density_times_kt() {
        for &(omega, t) in &[(0.5, 2.0), (3.0, 0.7), (10.0, 5.0)] {
            let lhs = rayleigh_jeans_density(omega, t, &NAT).unwrap();
            let rhs = mode_density(omega, &NAT).unwrap() * t;
            assert_eq!(lhs, rhs);
        }
        let expected = 1.0 / std::f64::consts::PI.powi(2);
        assert!((rayleigh_jeans_density(1.0, 1.0, &NAT).unwrap() - expected).abs() < 1e-16);
    }

    #[test]
    fn peak_frequency_dimensionless_root() {
        let x_star = peak_frequency(1.0, &NAT).unwrap();
        assert!(((x_star - 2.8214393721220787) / 2.8214393721220787).abs() < 1e-12);
        let doubled = peak_frequency(2.0, &NAT).unwrap();
        assert!(((doubled - 2.0 * x_star) / (2.0 * x_star)).abs() < 1e-8);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            bose_einstein(-1.0, 1.0, &NAT),
            Err(ThermalError::NonPositive { .. })
        ));
        assert!(matches!(
            peak_frequency(0.0, &NAT),
            Err(ThermalError::NonPositive { .. })
        ));
        assert!(matches!(
            DiscreteSpectrum::finite(1.0, 1, &NAT),
            Err(ThermalError::LevelCount { .. })
        ));
    }
}
