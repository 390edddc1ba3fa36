//! Command implementations behind the `decolab` binary.
//!
//! Every command resolves its configuration the same way: command-line
//! flags override values from an optional JSON config file, and
//! whatever is still unset falls back to the built-in default. Config
//! files reject unknown keys. All parameters are validated before any
//! computation runs.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::decoherence::{
    self, evolve_composite, pointer_overlaps, reduced_density, CompositeState,
    DecoherenceError, PointerInteraction, ScatteringChannelParams, XorShift64Star,
};
use crate::density::{
    self, measurement_probabilities, pure_state_density, BasisChange, DensityError,
    DensityMatrix, StateVector,
};
use crate::io::{self, IoError, MatrixJson};
use crate::linalg::{ComplexMatrix, LinalgError};
use crate::thermal::{self, DiscreteSpectrum, PhysicalConstants, ThermalError, UnitSystem};

pub const EXIT_INVALID_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL_FAILURE: i32 = 3;

/// Error carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            exit_code: EXIT_INVALID_CONFIG,
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            exit_code: EXIT_NUMERICAL_FAILURE,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.exit_code
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ThermalError> for CliError {
    fn from(e: ThermalError) -> Self {
        match e {
            ThermalError::NoConvergence { .. } => Self::numerical(e.to_string()),
            _ => Self::invalid(e.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NoConvergence { .. } => Self::numerical(e.to_string()),
            _ => Self::invalid(e.to_string()),
        }
    }
}

impl From<DensityError> for CliError {
    fn from(e: DensityError) -> Self {
        match e {
            DensityError::Linalg(inner) => inner.into(),
            _ => Self::invalid(e.to_string()),
        }
    }
}

impl From<DecoherenceError> for CliError {
    fn from(e: DecoherenceError) -> Self {
        match e {
            DecoherenceError::Linalg(inner) => inner.into(),
            DecoherenceError::Density(inner) => inner.into(),
            _ => Self::invalid(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Linalg(inner) => inner.into(),
            IoError::Density(inner) => inner.into(),
            _ => Self::invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::invalid(format!("i/o error: {e}"))
    }
}

/// Unit-system flag shared by the physics commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitArg {
    Natural,
    Si,
}

impl UnitArg {
    pub fn constants(self) -> PhysicalConstants {
        match self {
            UnitArg::Natural => PhysicalConstants::for_units(UnitSystem::Natural),
            UnitArg::Si => PhysicalConstants::for_units(UnitSystem::Si),
        }
    }
}

fn read_config<T: for<'de> Deserialize<'de> + Default>(
    path: Option<&Path>,
) -> Result<T, CliError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let raw = std::fs::read_to_string(p)
                .map_err(|e| CliError::invalid(format!("cannot read config {p:?}: {e}")))?;
            serde_json::from_str(&raw)
                .map_err(|e| CliError::invalid(format!("invalid config {p:?}: {e}")))
        }
    }
}

// ---------------------------------------------------------------------------
// planck

#[derive(Debug, Clone, clap::Args)]
pub struct PlanckArgs {
    /// Unit system.
    #[arg(long, value_enum)]
    pub units: Option<UnitArg>,
    /// Output CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Lower end of the angular-frequency grid (rad/s).
    #[arg(long)]
    pub omega_min: Option<f64>,
    /// Upper end of the angular-frequency grid (rad/s).
    #[arg(long)]
    pub omega_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    pub points: Option<usize>,
    /// Temperature (K).
    #[arg(long)]
    pub temperature: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanckFile {
    units: Option<UnitArg>,
    out: Option<PathBuf>,
    omega_min: Option<f64>,
    omega_max: Option<f64>,
    points: Option<usize>,
    temperature: Option<f64>,
}

pub fn run_planck(args: &PlanckArgs) -> Result<(), CliError> {
    let file: PlanckFile = read_config(args.config.as_deref())?;
    let units = args.units.or(file.units).unwrap_or(UnitArg::Natural);
    let constants = units.constants();
    let omega_min = args.omega_min.or(file.omega_min).unwrap_or(0.1);
    let omega_max = args.omega_max.or(file.omega_max).unwrap_or(10.0);
    let points = args.points.or(file.points).unwrap_or(200);
    let temperature = args.temperature.or(file.temperature).unwrap_or(1.0);
    let out = args
        .out
        .clone()
        .or(file.out)
        .unwrap_or_else(|| PathBuf::from("planck.csv"));

    if points == 0 {
        return Err(CliError::invalid("frequency grid must not be empty"));
    }
    let range_ok = omega_min.is_finite()
        && omega_max.is_finite()
        && omega_min > 0.0
        && omega_max >= omega_min;
    if !range_ok {
        return Err(CliError::invalid(format!(
            "invalid frequency range [{omega_min}, {omega_max}]"
        )));
    }
    if !temperature.is_finite() || temperature <= 0.0 {
        return Err(CliError::invalid(format!(
            "temperature must be positive, got {temperature}"
        )));
    }

    let mut csv = String::from("omega,T,planck,rayleigh_jeans,bose_einstein,mode_density\n");
    for k in 0..points {
        let omega = if points == 1 {
            omega_min
        } else {
            omega_min + (omega_max - omega_min) * k as f64 / (points - 1) as f64
        };
        let row = [
            omega,
            temperature,
            thermal::planck_density(omega, temperature, &constants)?,
            thermal::rayleigh_jeans_density(omega, temperature, &constants)?,
            thermal::bose_einstein(omega, temperature, &constants)?,
            thermal::mode_density(omega, &constants)?,
        ];
        let line: Vec<String> = row.iter().map(|&x| io::csv_f64(x)).collect();
        let _ = writeln!(csv, "{}", line.join(","));
    }
    std::fs::write(&out, csv)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// maxent

#[derive(Debug, Clone, clap::Args)]
pub struct MaxentArgs {
    /// Unit system.
    #[arg(long, value_enum)]
    pub units: Option<UnitArg>,
    /// Output JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Mode angular frequency (rad/s).
    #[arg(long)]
    pub omega: Option<f64>,
    /// Level count; omitted means the truncation rule picks it.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Temperature (K); mutually exclusive with --target-energy.
    #[arg(long)]
    pub temperature: Option<f64>,
    /// Mean-energy constraint (J); mutually exclusive with --temperature.
    #[arg(long)]
    pub target_energy: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaxentFile {
    units: Option<UnitArg>,
    out: Option<PathBuf>,
    omega: Option<f64>,
    levels: Option<usize>,
    temperature: Option<f64>,
    target_energy: Option<f64>,
}

/// Maximum-entropy solve report.
#[derive(Debug, Serialize)]
pub struct MaxentReport {
    pub omega: f64,
    pub levels: usize,
    pub beta: f64,
    pub target_energy: f64,
    pub mean_energy: f64,
    pub mean_occupancy: f64,
    pub entropy: f64,
    pub probabilities: Vec<f64>,
    /// Sup-norm gap between the solved distribution and the analytic
    /// Gibbs form at the solved multiplier.
    pub gibbs_sup_gap: f64,
}

pub fn run_maxent(args: &MaxentArgs) -> Result<(), CliError> {
    let file: MaxentFile = read_config(args.config.as_deref())?;
    let units = args.units.or(file.units).unwrap_or(UnitArg::Natural);
    let constants = units.constants();
    let omega = args.omega.or(file.omega).unwrap_or(1.0);
    let levels = args.levels.or(file.levels);
    let temperature = args.temperature.or(file.temperature);
    let target_energy = args.target_energy.or(file.target_energy);
    let out = args
        .out
        .clone()
        .or(file.out)
        .unwrap_or_else(|| PathBuf::from("maxent.json"));

    let (spectrum, target) = match (temperature, target_energy) {
        (Some(_), Some(_)) => {
            return Err(CliError::invalid(
                "give either --temperature or --target-energy, not both",
            ));
        }
        (None, None) => {
            return Err(CliError::invalid(
                "either --temperature or --target-energy is required",
            ));
        }
        (Some(t), None) => {
            let spectrum = match levels {
                Some(n) => DiscreteSpectrum::finite(omega, n, &constants)?,
                None => DiscreteSpectrum::auto_truncated(omega, t, &constants)?,
            };
            let target = thermal::gibbs_occupancy(&spectrum, t, &constants)?
                .mean_energy(&spectrum);
            (spectrum, target)
        }
        (None, Some(e)) => {
            let spectrum = match levels {
                Some(n) => DiscreteSpectrum::finite(omega, n, &constants)?,
                None => {
                    // For the infinite ladder the constraint fixes the
                    // multiplier in closed form, which in turn fixes the
                    // truncation depth: βħω = ln(1 + ħω/E).
                    if !e.is_finite() || e <= 0.0 {
                        return Err(CliError::invalid(format!(
                            "target energy must be positive, got {e}"
                        )));
                    }
                    let spacing = constants.hbar() * omega;
                    let x = (1.0 + spacing / e).ln();
                    let t = spacing / (constants.k_b() * x);
                    DiscreteSpectrum::auto_truncated(omega, t, &constants)?
                }
            };
            (spectrum, e)
        }
    };

    let solution = thermal::maxent_solve(&spectrum, target)?;

    // Sup-norm gap against the Boltzmann weights rebuilt from the
    // solved multiplier.
    let energies = spectrum.energies();
    let reference = if solution.beta() >= 0.0 {
        energies[0]
    } else {
        *energies.last().expect("nonempty")
    };
    let weights: Vec<f64> = energies
        .iter()
        .map(|&e| (-solution.beta() * (e - reference)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let gap = solution
        .probabilities()
        .iter()
        .zip(&weights)
        .map(|(&p, &w)| (p - w / z).abs())
        .fold(0.0f64, f64::max);

    let report = MaxentReport {
        omega,
        levels: spectrum.levels(),
        beta: solution.beta(),
        target_energy: target,
        mean_energy: solution.mean_energy(&spectrum),
        mean_occupancy: solution.mean_occupancy(),
        entropy: solution.entropy(),
        probabilities: solution.probabilities().to_vec(),
        gibbs_sup_gap: gap,
    };
    io::write_json(&out, &report)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// decohere

#[derive(Debug, Clone, clap::Args)]
pub struct DecohereArgs {
    /// Output CSV path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Per-event off-diagonal suppression strength in [0, 1].
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Number of scattering events.
    #[arg(long)]
    pub events: Option<u32>,
    /// Recoil kick angle per event (radians); 0 disables recoil.
    #[arg(long)]
    pub recoil_strength: Option<f64>,
    /// Seed for the kick generator.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Initial density: `cat`, `mixed`, `ground`, or a JSON file path.
    #[arg(long)]
    pub density: Option<String>,
    /// Channel basis: `identity`, `hadamard`, or a JSON file path.
    #[arg(long)]
    pub basis: Option<String>,
    /// Clip and renormalize densities loaded from files.
    #[arg(long)]
    pub repair: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecohereFile {
    out: Option<PathBuf>,
    epsilon: Option<f64>,
    events: Option<u32>,
    recoil_strength: Option<f64>,
    seed: Option<u64>,
    density: Option<String>,
    basis: Option<String>,
    repair: Option<bool>,
}

/// Resolve a density argument: a named preset or a JSON file path.
pub fn resolve_density(spec: &str, repair: bool) -> Result<DensityMatrix, CliError> {
    match spec {
        "cat" => Ok(DensityMatrix::cat()),
        "mixed" => Ok(DensityMatrix::maximally_mixed(2)?),
        "ground" => Ok(pure_state_density(&StateVector::basis_state(2, 0)?)?),
        path => Ok(io::load_density(Path::new(path), repair)?),
    }
}

/// Resolve a basis argument: a named preset or a JSON file path.
pub fn resolve_basis(spec: &str, dim: usize) -> Result<BasisChange, CliError> {
    match spec {
        "identity" => Ok(BasisChange::identity(dim)),
        "hadamard" => Ok(BasisChange::hadamard()),
        path => Ok(io::load_basis(Path::new(path))?),
    }
}

pub fn run_decohere(args: &DecohereArgs) -> Result<(), CliError> {
    let file: DecohereFile = read_config(args.config.as_deref())?;
    let epsilon = args.epsilon.or(file.epsilon).unwrap_or(0.1);
    let events = args.events.or(file.events).unwrap_or(10);
    let recoil = args.recoil_strength.or(file.recoil_strength).unwrap_or(0.0);
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let repair = args.repair || file.repair.unwrap_or(false);
    let density_spec = args
        .density
        .clone()
        .or(file.density)
        .unwrap_or_else(|| "cat".to_string());
    let basis_spec = args
        .basis
        .clone()
        .or(file.basis)
        .unwrap_or_else(|| "identity".to_string());
    let out = args
        .out
        .clone()
        .or(file.out)
        .unwrap_or_else(|| PathBuf::from("decohere.csv"));

    let rho = resolve_density(&density_spec, repair)?;
    let basis = resolve_basis(&basis_spec, rho.dim())?;
    // Validates epsilon, recoil, and dimensions before stepping.
    let params = ScatteringChannelParams::new(epsilon, events, basis.clone(), recoil, seed)?;
    if rho.dim() != basis.dim() {
        return Err(CliError::invalid(format!(
            "density dimension {} does not match basis dimension {}",
            rho.dim(),
            basis.dim()
        )));
    }

    // Step the channel event by event in the channel basis, logging the
    // off-diagonal norm and the L1 drift of the diagonal.
    let mut working = basis.conjugate(rho.matrix())?;
    let initial_diag: Vec<Complex64> =
        (0..working.rows()).map(|i| working.get(i, i)).collect();
    let mut rng = XorShift64Star::new(params.seed());

    let mut csv = String::from("event,offdiag_frobenius,diag_l1_drift\n");
    let mut log_row = |event: u32, m: &ComplexMatrix| {
        let drift: f64 = (0..m.rows())
            .map(|i| (m.get(i, i) - initial_diag[i]).norm())
            .sum();
        let _ = writeln!(
            csv,
            "{event},{},{}",
            io::csv_f64(m.off_diagonal_norm()),
            io::csv_f64(drift)
        );
    };
    log_row(0, &working);
    for event in 1..=params.events() {
        working = decoherence::scatter_event(
            &working,
            params.epsilon(),
            params.recoil_strength(),
            &mut rng,
        )?;
        log_row(event, &working);
    }
    drop(log_row);

    std::fs::write(&out, csv)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// basis-defect

#[derive(Debug, Clone, clap::Args)]
pub struct BasisDefectArgs {
    /// Output JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Density: `cat`, `mixed`, `ground`, or a JSON file path.
    #[arg(long)]
    pub density: Option<String>,
    /// Change of basis: `identity`, `hadamard`, or a JSON file path.
    #[arg(long)]
    pub basis: Option<String>,
    /// Clip and renormalize densities loaded from files.
    #[arg(long)]
    pub repair: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDefectFile {
    out: Option<PathBuf>,
    density: Option<String>,
    basis: Option<String>,
    repair: Option<bool>,
}

/// Non-commutation report for dephasing against a change of basis.
#[derive(Debug, Serialize)]
pub struct DefectReport {
    pub density: String,
    pub basis: String,
    pub dim: usize,
    pub defect: f64,
}

pub fn run_basis_defect(args: &BasisDefectArgs) -> Result<(), CliError> {
    let file: BasisDefectFile = read_config(args.config.as_deref())?;
    let density_spec = args
        .density
        .clone()
        .or(file.density)
        .unwrap_or_else(|| "cat".to_string());
    let basis_spec = args
        .basis
        .clone()
        .or(file.basis)
        .unwrap_or_else(|| "hadamard".to_string());
    let repair = args.repair || file.repair.unwrap_or(false);
    let out = args
        .out
        .clone()
        .or(file.out)
        .unwrap_or_else(|| PathBuf::from("basis_defect.json"));

    let rho = resolve_density(&density_spec, repair)?;
    let basis = resolve_basis(&basis_spec, rho.dim())?;
    let defect = density::dephasing_commutator_defect(&rho, &basis)?;
    let report = DefectReport {
        density: density_spec,
        basis: basis_spec,
        dim: rho.dim(),
        defect,
    };
    io::write_json(&out, &report)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// cat

#[derive(Debug, Clone, clap::Args)]
pub struct CatArgs {
    /// Output JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatFile {
    out: Option<PathBuf>,
}

/// The equal-superposition scenario in both bases.
#[derive(Debug, Serialize)]
pub struct CatReport {
    pub rho_basis_a: MatrixJson,
    pub rho_basis_b: MatrixJson,
    pub probabilities_basis_a: Vec<f64>,
    pub probabilities_basis_b: Vec<f64>,
    pub dephased_entropy_basis_a: f64,
    pub dephased_entropy_basis_b: f64,
}

pub fn run_cat(args: &CatArgs) -> Result<(), CliError> {
    let file: CatFile = read_config(args.config.as_deref())?;
    let out = args
        .out
        .clone()
        .or(file.out)
        .unwrap_or_else(|| PathBuf::from("cat.json"));

    let rho = DensityMatrix::cat();
    let basis_a = BasisChange::identity(2);
    let basis_b = BasisChange::hadamard();
    let rho_b = density::change_basis(&rho, &basis_b)?;
    let report = CatReport {
        rho_basis_a: MatrixJson::from_matrix(rho.matrix())?,
        rho_basis_b: MatrixJson::from_matrix(rho_b.matrix())?,
        probabilities_basis_a: measurement_probabilities(&rho, &basis_a)?,
        probabilities_basis_b: measurement_probabilities(&rho, &basis_b)?,
        dephased_entropy_basis_a: density::dephase(&rho, &basis_a)?.von_neumann_entropy(),
        dephased_entropy_basis_b: density::dephase(&rho, &basis_b)?.von_neumann_entropy(),
    };
    io::write_json(&out, &report)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// composite

#[derive(Debug, Clone, clap::Args)]
pub struct CompositeArgs {
    /// Output JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output CSV path for the overlap curves.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Coupling strength g of the ±g·σ_x interaction preset.
    #[arg(long)]
    pub coupling: Option<f64>,
    /// Largest evolution time on the sample grid.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of time samples (including t = 0).
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompositeFile {
    out: Option<PathBuf>,
    csv_out: Option<PathBuf>,
    coupling: Option<f64>,
    t_max: Option<f64>,
    samples: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct CompositeSample {
    pub t: f64,
    pub overlaps: MatrixJson,
    pub reduced_density: MatrixJson,
    pub purity_composite: f64,
    pub purity_reduced: f64,
    pub factorization_residual: f64,
}

/// Entanglement run of the ±g·σ_x pointer preset.
#[derive(Debug, Serialize)]
pub struct CompositeReport {
    pub coupling: f64,
    pub dim_system: usize,
    pub dim_env: usize,
    pub samples: Vec<CompositeSample>,
}

pub fn run_composite(args: &CompositeArgs) -> Result<(), CliError> {
    let file: CompositeFile = read_config(args.config.as_deref())?;
    let coupling = args.coupling.or(file.coupling).unwrap_or(1.0);
    let t_max = args
        .t_max
        .or(file.t_max)
        .unwrap_or(std::f64::consts::FRAC_PI_2);
    let samples = args.samples.or(file.samples).unwrap_or(9);
    let out = args
        .out
        .clone()
        .or(file.out)
        .unwrap_or_else(|| PathBuf::from("composite.json"));
    let csv_out = args
        .csv_out
        .clone()
        .or(file.csv_out)
        .unwrap_or_else(|| PathBuf::from("composite.csv"));

    if samples == 0 {
        return Err(CliError::invalid("sample count must be positive"));
    }
    if !(t_max >= 0.0) || !t_max.is_finite() {
        return Err(CliError::invalid(format!(
            "t-max must be finite and nonnegative, got {t_max}"
        )));
    }
    if !coupling.is_finite() {
        return Err(CliError::invalid(format!(
            "coupling must be finite, got {coupling}"
        )));
    }

    let b0 = ComplexMatrix::pauli_x().scaled(Complex64::new(coupling, 0.0));
    let b1 = ComplexMatrix::pauli_x().scaled(Complex64::new(-coupling, 0.0));
    let interaction = PointerInteraction::new(vec![b0, b1])?;
    let system = StateVector::equal_superposition(2)?;
    let env = StateVector::basis_state(2, 0)?;
    let initial = CompositeState::product(&system, &env)?;
    let coefficients = system.amplitudes().to_vec();

    let ds = interaction.dim_system();
    let mut csv = String::from("t");
    for m in 0..ds {
        for n in (m + 1)..ds {
            let _ = write!(csv, ",re_{m}_{n},im_{m}_{n}");
        }
    }
    csv.push('\n');

    let mut report = CompositeReport {
        coupling,
        dim_system: ds,
        dim_env: interaction.dim_env(),
        samples: Vec::with_capacity(samples),
    };

    for k in 0..samples {
        let t = if samples == 1 {
            0.0
        } else {
            t_max * k as f64 / (samples - 1) as f64
        };
        let evolved = evolve_composite(&initial, &interaction, t)?;
        let overlaps = pointer_overlaps(&interaction, &env, t)?;
        let rho = reduced_density(&evolved)?;

        // Factorization law: ρ_S[m,n] = c_m c_n* ⟨Φ_n|Φ_m⟩.
        let mut residual = 0.0f64;
        for m in 0..ds {
            for n in 0..ds {
                let predicted =
                    coefficients[m] * coefficients[n].conj() * overlaps.get(n, m);
                residual = residual.max((rho.matrix().get(m, n) - predicted).norm());
            }
        }
        if residual >= 1e-10 {
            return Err(CliError::numerical(format!(
                "factorization-law residual {residual:.3e} exceeds 1e-10 at t = {t}"
            )));
        }

        let full = evolved.density();
        let purity_composite = full
            .matmul(&full)
            .map_err(CliError::from)?
            .trace()
            .map_err(CliError::from)?
            .re;

        let _ = write!(csv, "{}", io::csv_f64(t));
        for m in 0..ds {
            for n in (m + 1)..ds {
                let z = overlaps.get(m, n);
                let _ = write!(csv, ",{},{}", io::csv_f64(z.re), io::csv_f64(z.im));
            }
        }
        csv.push('\n');

        report.samples.push(CompositeSample {
            t,
            overlaps: MatrixJson::from_matrix(&overlaps)?,
            reduced_density: MatrixJson::from_matrix(rho.matrix())?,
            purity_composite,
            purity_reduced: rho.purity(),
            factorization_residual: residual,
        });
    }

    io::write_json(&out, &report)?;
    std::fs::write(&csv_out, csv)?;
    Ok(())
}
