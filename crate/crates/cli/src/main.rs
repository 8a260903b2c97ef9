//! `zeno`: command-line front end for gate simulation, absorber physics and design search.

mod commands;
mod config;
mod error;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{load_config, parse_quantity, resolve, CommandKind, Format, RunConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "zeno", version, about = "Quantum-Zeno two-photon gate simulator and design toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for stochastic commands (echoed in every output).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON run configuration; flags given on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective configuration instead of running.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact and leading-order errors of one gate.
    Gate(GateArgs),
    /// Single three-level atom: absorption, scattering and their ratio.
    Absorber(AbsorberArgs),
    /// Enhancement mechanisms.
    #[command(subcommand)]
    Enhance(EnhanceCommand),
    /// Representative feasible (N, kappa) designs for one error target.
    Design(DesignArgs),
    /// The standard design tables.
    Tables(TablesArgs),
    /// Error probabilities along the absorber scale at fixed kappa.
    Curve(CurveArgs),
    /// Survival in the frequently measured double well.
    Demo(DemoArgs),
}

#[derive(Subcommand, Debug)]
enum EnhanceCommand {
    /// Repeated passes through one absorber.
    Multipass(MultipassArgs),
    /// Collective factors of a Dicke-excited ensemble.
    Dicke(DickeArgs),
    /// Monte-Carlo phase sum over randomly placed emitters.
    Phases(PhasesArgs),
    /// Pump steady state sustaining the collective excitation.
    Pump(PumpArgs),
}

/// Flags that map onto parameter keys, with their raw text.
trait ParamFlags {
    fn flags(&self) -> Vec<(&'static str, Option<String>)>;
}

macro_rules! param_args {
    ($name:ident { $($field:ident => $key:literal : $help:literal),* $(,)? } $(bool $flag:ident => $fkey:literal : $fhelp:literal)?) => {
        #[derive(Args, Debug)]
        struct $name {
            $(
                #[doc = $help]
                #[arg(long = $key, value_name = "VALUE[UNIT]")]
                $field: Option<String>,
            )*
            $(
                #[doc = $fhelp]
                #[arg(long = $fkey)]
                $flag: bool,
            )?
        }

        impl ParamFlags for $name {
            fn flags(&self) -> Vec<(&'static str, Option<String>)> {
                #[allow(unused_mut)]
                let mut v = vec![$(($key, self.$field.clone())),*];
                $(
                    if self.$flag {
                        v.push(($fkey, Some("1".to_string())));
                    }
                )?
                v
            }
        }
    };
}

param_args!(GateArgs {
    branches => "branches": "Branch count, 2 or 3",
    n => "N": "Segment count",
    kappa => "kappa": "Rate ratio xi_2 / xi_1",
    xi_1 => "xi_1": "One-photon decay exponent per segment",
    xi_2 => "xi_2": "Two-photon decay exponent per segment (default: optimum for kappa)",
    xi_c => "xi_c": "Control-photon loss exponent per segment",
    epsilon => "epsilon": "Beam-splitter angle in radians",
} bool control => "control": "Control photon present");

param_args!(AbsorberBase {
    omega_1 => "omega_1": "Target photon frequency, energy or wavelength",
    delta => "delta": "Detuning of the target photon from the middle level",
    delta_control => "delta_control": "Detuning of the control photon",
    dipole_length => "dipole_length": "Dipole length",
    area => "area": "Beam cross-section",
    f => "f": "Coupling ratio g12 / g23",
    kappa => "kappa": "Target ratio for the required enhancement",
});

#[derive(Args, Debug)]
struct AbsorberArgs {
    /// Parameter preset: optical or lambda.
    #[arg(long)]
    preset: Option<String>,
    #[command(flatten)]
    params: AbsorberBase,
}

param_args!(MultipassArgs {
    passes => "passes": "Number of passes",
    phase_pair => "phase_pair": "Round-trip phase (k1 + k2) L of the pair",
    phase_1 => "phase_1": "Round-trip phase k1 L of the lone photon",
    tau_g13 => "tau_g13": "Two-photon coupling times interaction time",
    tau_g12 => "tau_g12": "One-photon absorption coupling times interaction time",
    tau_g11 => "tau_g11": "Scattering coupling times interaction time",
});

param_args!(DickeArgs {
    emitters => "emitters": "Emitter count S",
    excitations => "excitations": "Symmetric excitations s",
});

param_args!(PhasesArgs {
    emitters => "emitters": "Emitter count",
    trials => "trials": "Monte-Carlo trials",
    phase_x => "phase_x": "Momentum transfer times box length, x",
    phase_y => "phase_y": "Momentum transfer times box length, y",
    phase_z => "phase_z": "Momentum transfer times box length, z",
});

param_args!(PumpArgs {
    intensity_1 => "intensity_1": "First pump intensity",
    intensity_2 => "intensity_2": "Second pump intensity",
    delta_prime => "delta_prime": "Pump detuning below the middle level",
    emitters => "emitters": "Emitter count",
});

param_args!(DesignBase {
    p => "P": "Error threshold",
    branches => "branches": "Branch count, 2 or 3",
    n_max => "N_max": "Largest segment count searched",
    kappa_max => "kappa_max": "Largest kappa searched",
    kappa_rel_tol => "kappa_rel_tol": "Relative bracket width of the kappa bisection",
    scale_tol => "scale_tol": "Bracket width of the absorber-scale search",
});

#[derive(Args, Debug)]
struct DesignArgs {
    /// Absorber-scale rule: analytic or optimized.
    #[arg(long)]
    rule: Option<String>,
    #[command(flatten)]
    params: DesignBase,
}

param_args!(TablesBase {
    kappa_max => "kappa_max": "Largest kappa searched",
    kappa_rel_tol => "kappa_rel_tol": "Relative bracket width of the kappa bisection",
    scale_tol => "scale_tol": "Bracket width of the absorber-scale search",
});

#[derive(Args, Debug)]
struct TablesArgs {
    /// Absorber-scale rule: analytic or optimized.
    #[arg(long)]
    rule: Option<String>,
    #[command(flatten)]
    params: TablesBase,
}

param_args!(CurveArgs {
    kappa => "kappa": "Rate ratio",
    n => "N": "Segment count",
    branches => "branches": "Branch count, 2 or 3",
    xi_2_min => "xi_2_min": "Start of the xi_2 sweep",
    xi_2_max => "xi_2_max": "End of the xi_2 sweep",
    samples => "samples": "Number of sweep points",
});

param_args!(DemoArgs {
    n => "N": "Number of measurements",
});

impl Command {
    fn parts(&self) -> (CommandKind, Option<String>, Vec<(&'static str, Option<String>)>) {
        match self {
            Command::Gate(a) => (CommandKind::Gate, None, a.flags()),
            Command::Absorber(a) => (CommandKind::Absorber, a.preset.clone(), a.params.flags()),
            Command::Enhance(e) => {
                let (mode, flags) = match e {
                    EnhanceCommand::Multipass(a) => ("multipass", a.flags()),
                    EnhanceCommand::Dicke(a) => ("dicke", a.flags()),
                    EnhanceCommand::Phases(a) => ("phases", a.flags()),
                    EnhanceCommand::Pump(a) => ("pump", a.flags()),
                };
                (CommandKind::Enhance, Some(mode.to_string()), flags)
            }
            Command::Design(a) => (CommandKind::Design, a.rule.clone(), a.params.flags()),
            Command::Tables(a) => (CommandKind::Tables, a.rule.clone(), a.params.flags()),
            Command::Curve(a) => (CommandKind::Curve, None, a.flags()),
            Command::Demo(a) => (CommandKind::Demo, None, a.flags()),
        }
    }
}

/// Builds the effective configuration from an optional file and the command line.
fn effective_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let file = cli.config.as_deref().map(load_config).transpose()?;
    let mut cfg = match (&cli.command, file) {
        (None, Some(f)) => f,
        (None, None) => return Err(CliError::Usage("no command given; see --help".into())),
        (Some(cmd), file) => {
            let (kind, mode, flags) = cmd.parts();
            let mut cfg = match file {
                Some(f) if f.command != kind => {
                    return Err(CliError::Usage(format!("config is for `{}`, command line asks for `{kind}`", f.command)))
                }
                Some(f) => f,
                None => RunConfig::new(kind),
            };
            if mode.is_some() {
                cfg.mode = mode;
            }
            cfg.mode = commands::resolve_mode(kind, cfg.mode.as_deref())?;
            for (key, text) in flags {
                if let Some(text) = text {
                    let unit = commands::default_unit(kind, cfg.mode.as_deref(), key).expect("flag keys are specified");
                    cfg.parameters.insert(key.to_string(), parse_quantity(key, &text, unit)?);
                }
            }
            cfg
        }
    };
    cfg.mode = commands::resolve_mode(cfg.command, cfg.mode.as_deref())?;
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(o) = &cli.output {
        cfg.output = Some(o.clone());
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.parameters = resolve(&cfg.parameters, &commands::param_specs(cfg.command, cfg.mode.as_deref()))?;
    Ok(cfg)
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Io { context: format!("writing {}", path.display()), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io { context: "writing stdout".into(), source })
        }
    }
}

fn run(args: impl IntoIterator<Item = OsString>) -> Result<(), CliError> {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Err(CliError::Usage(e.to_string().trim_end().to_string())),
        Err(e) => {
            print!("{e}");
            return Ok(());
        }
    };
    let cfg = effective_config(&cli)?;
    if cli.print_config {
        // the destination belongs to this invocation, not to the replayed run
        let printed = RunConfig { output: None, ..cfg.clone() };
        return emit(&printed.to_json(), cfg.output.as_ref());
    }
    let tables = commands::execute(&cfg)?;
    emit(&output::render(&tables, &cfg), cfg.output.as_ref())
}

fn main() {
    if let Err(e) = run(std::env::args_os()) {
        eprintln!("zeno: {e}");
        std::process::exit(e.exit_code());
    }
}
