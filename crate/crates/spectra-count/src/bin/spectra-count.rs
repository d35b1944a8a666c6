use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use spectra_core::density::{DensityParams, Estimator, Mode};
use spectra_core::estimator::ProbeDistribution;
use spectra_count::circuit::{circuit_to_json, counting_register_circuit};
use spectra_count::{estimate_density, DensityRequest, Error, OutputFormat};

/// Estimate how many eigenvalues of a Hermitian matrix fall in each bin of an
/// interval.
#[derive(Debug, Parser)]
#[command(name = "spectra-count", version)]
struct Cli {
    /// Matrix Market file holding a square Hermitian matrix.
    #[arg(long)]
    matrix: PathBuf,
    /// Interval as `a,b` with a < b.
    #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
    interval: (f64, f64),
    #[arg(long)]
    bins: usize,
    /// Quadrature exponent; the contour uses 2^b points.
    #[arg(long, default_value_t = 6)]
    quad_qubits: u32,
    /// Probe vectors per bin (ignored by exact-eig).
    #[arg(long, default_value_t = 100)]
    probes: usize,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = EstimatorArg::Nu)]
    estimator: EstimatorArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[arg(long, value_enum, default_value_t = DistributionArg::Rademacher)]
    distribution: DistributionArg,
    /// Diagonal value used to pad the matrix to a power-of-two dimension
    /// in quantum-sim mode.
    #[arg(long, allow_hyphen_values = true)]
    pad_value: Option<f64>,
    /// Record wall time in the output metadata.
    #[arg(long)]
    timing: bool,
    /// Also write the counting-register circuit (permutation and QFT) as JSON.
    #[arg(long)]
    circuit_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    ExactEig,
    ClassicalStochastic,
    QuantumSim,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EstimatorArg {
    Mu,
    Nu,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistributionArg {
    Rademacher,
    Gaussian,
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected 'a,b', got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number '{}'", t.trim()));
    Ok((parse(a)?, parse(b)?))
}

impl Cli {
    fn request(&self) -> DensityRequest {
        let mode = match self.mode {
            ModeArg::ExactEig => Mode::ExactEig,
            ModeArg::ClassicalStochastic => Mode::ClassicalStochastic,
            ModeArg::QuantumSim => Mode::QuantumSim,
        };
        let mut params = DensityParams::new(self.interval, self.bins, mode);
        params.quad_qubits = self.quad_qubits;
        params.probes = self.probes;
        params.estimator = match self.estimator {
            EstimatorArg::Mu => Estimator::Mu,
            EstimatorArg::Nu => Estimator::Nu,
        };
        params.seed = self.seed;
        params.distribution = match self.distribution {
            DistributionArg::Rademacher => ProbeDistribution::Rademacher,
            DistributionArg::Gaussian => ProbeDistribution::Gaussian,
        };
        params.pad_value = self.pad_value;
        DensityRequest {
            matrix: self.matrix.clone(),
            params,
            out: self.out.clone(),
            format: match self.format {
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Csv => OutputFormat::Csv,
            },
            timing: self.timing,
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let req = cli.request();
    let histogram = estimate_density(&req)?;
    histogram.write(&req.out, req.format)?;
    if let Some(path) = &cli.circuit_out {
        let json = circuit_to_json(&counting_register_circuit(req.params.quad_qubits))?;
        std::fs::write(path, json).map_err(|source| Error::Io { path: path.clone(), source })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
