use std::f64::consts::PI;

use zeno_core::absorber::{
    absorption_ratio, absorption_ratio_with, coupling_constants, destructive_interference_frequency,
    one_photon_scattering_prob, two_photon_absorption_prob, ScatteringTerms,
};
use zeno_core::design::{
    error_curve, exact_crossing, generate_tables, required_enhancement, search_feasible_nk, ScaleRule, DEFAULT_LAYOUT,
    TABLE_TITLES,
};
use zeno_core::enhancement::{
    dicke_enhancement, multipass_probabilities, pump_steady_state, random_phase_sum, MultiPassSpec, PumpSpec,
};
use zeno_core::gate::{
    asymptotic_errors, control_loss_adjusted, exact_errors, optimal_rates, propagate, zeno_demo_survival, Order,
};
use zeno_core::{
    AbsorberRates, AtomSpec, Branches, DesignPoint, GateGeometry, PhotonState, Quantity, SearchConfig, Strategy, Unit,
};

use crate::config::{CommandKind, ParamSpec, Params, RunConfig, AREA, INTENSITY, LENGTH, PHOTON, SPECTRAL};
use crate::error::CliError;
use crate::output::{Cell, Table};

const P: &str = "probability";
const D: &str = "dimensionless";

/// Allowed modes of a command; the first is the default.
pub fn modes(cmd: CommandKind) -> &'static [&'static str] {
    match cmd {
        CommandKind::Absorber => &["optical", "lambda"],
        CommandKind::Enhance => &["multipass", "dicke", "phases", "pump"],
        CommandKind::Design | CommandKind::Tables => &["analytic", "optimized"],
        _ => &[],
    }
}

pub fn resolve_mode(cmd: CommandKind, mode: Option<&str>) -> Result<Option<String>, CliError> {
    let allowed = modes(cmd);
    match (mode, allowed.first()) {
        (None, None) => Ok(None),
        (None, Some(first)) if cmd != CommandKind::Enhance => Ok(Some(first.to_string())),
        (None, Some(_)) => Err(CliError::Usage(format!("{cmd} needs a mode: {}", allowed.join(", ")))),
        (Some(m), _) if allowed.contains(&m) => Ok(Some(m.to_string())),
        (Some(m), _) => Err(CliError::Usage(format!("{cmd} does not accept mode `{m}`"))),
    }
}

fn preset(mode: Option<&str>) -> AtomSpec {
    match mode {
        Some("lambda") => AtomSpec::lambda_example(),
        _ => AtomSpec::optical_example(),
    }
}

fn natural_to(value: f64, natural: Unit, unit: Unit) -> f64 {
    Quantity::new(value, natural).to(unit).expect("same kind").value
}

/// Parameter keys, accepted unit kinds and defaults of a command.
pub fn param_specs(cmd: CommandKind, mode: Option<&str>) -> Vec<ParamSpec> {
    use ParamSpec as S;
    let c = S::count;
    match cmd {
        CommandKind::Gate => vec![
            c("branches", Some(3.0)),
            c("N", Some(10.0)),
            c("kappa", Some(1e3)),
            c("xi_1", None),
            c("xi_2", None),
            c("xi_c", Some(0.0)),
            c("epsilon", None),
            c("control", Some(0.0)),
        ],
        CommandKind::Absorber => {
            let a = preset(mode);
            vec![
                S::new("omega_1", PHOTON, Unit::ElectronVolt, Some(a.omega_1())),
                S::new("delta", SPECTRAL, Unit::PerSecond, Some(natural_to(a.delta(), Unit::ElectronVolt, Unit::PerSecond))),
                S::new(
                    "delta_control",
                    SPECTRAL,
                    Unit::PerSecond,
                    Some(natural_to(a.delta_control(), Unit::ElectronVolt, Unit::PerSecond)),
                ),
                S::new(
                    "dipole_length",
                    LENGTH,
                    Unit::Bohr,
                    Some(natural_to(a.dipole_length(), Unit::InverseElectronVolt, Unit::Bohr)),
                ),
                S::new("area", AREA, Unit::SquareMeter, Some(natural_to(a.area(), Unit::InverseElectronVoltSquared, Unit::SquareMeter))),
                c("f", Some(a.coupling_ratio())),
                c("kappa", None),
            ]
        }
        CommandKind::Enhance => match mode {
            Some("multipass") => vec![
                c("passes", Some(16.0)),
                c("phase_pair", Some(0.0)),
                c("phase_1", Some(PI / 2f64.sqrt())),
                c("tau_g13", Some(1e-3)),
                c("tau_g12", Some(1e-3)),
                c("tau_g11", Some(1e-3)),
            ],
            Some("dicke") => vec![c("emitters", Some(1.6e8)), c("excitations", Some(2720.0))],
            Some("phases") => vec![
                c("emitters", Some(1e4)),
                c("trials", Some(200.0)),
                c("phase_x", Some(40.0)),
                c("phase_y", Some(25.0)),
                c("phase_z", Some(10.0)),
            ],
            _ => vec![
                S::new("intensity_1", INTENSITY, Unit::WattPerSquareCentimeter, Some(1e10)),
                S::new("intensity_2", INTENSITY, Unit::WattPerSquareCentimeter, Some(1e10)),
                S::new("delta_prime", SPECTRAL, Unit::PerSecond, Some(3e14)),
                c("emitters", Some(1.6e8)),
            ],
        },
        CommandKind::Design => {
            let d = SearchConfig::default();
            vec![
                c("P", Some(0.5)),
                c("branches", Some(3.0)),
                c("N_max", Some(d.n_max as f64)),
                c("kappa_max", Some(d.kappa_max)),
                c("kappa_rel_tol", Some(d.kappa_rel_tol)),
                c("scale_tol", Some(d.scale_tol)),
            ]
        }
        CommandKind::Tables => {
            let d = SearchConfig::default();
            vec![
                c("kappa_max", Some(d.kappa_max)),
                c("kappa_rel_tol", Some(d.kappa_rel_tol)),
                c("scale_tol", Some(d.scale_tol)),
            ]
        }
        CommandKind::Curve => vec![
            c("kappa", Some(1e3)),
            c("N", Some(1e3)),
            c("branches", Some(2.0)),
            c("xi_2_min", Some(0.0)),
            c("xi_2_max", Some(0.14)),
            c("samples", Some(141.0)),
        ],
        CommandKind::Demo => vec![c("N", Some(10.0))],
    }
}

pub fn default_unit(cmd: CommandKind, mode: Option<&str>, key: &str) -> Option<Unit> {
    param_specs(cmd, mode).iter().find(|s| s.key == key).map(|s| s.unit)
}

pub fn execute(cfg: &RunConfig) -> Result<Vec<Table>, CliError> {
    let p = Params(&cfg.parameters);
    let mode = cfg.mode.as_deref();
    match cfg.command {
        CommandKind::Gate => gate(&p),
        CommandKind::Absorber => absorber(&p),
        CommandKind::Enhance => match mode {
            Some("multipass") => multipass(&p),
            Some("dicke") => dicke(&p),
            Some("phases") => phases(&p, cfg.seed),
            _ => pump(&p),
        },
        CommandKind::Design => design(&p, mode),
        CommandKind::Tables => tables(&p, mode),
        CommandKind::Curve => curve(&p),
        CommandKind::Demo => demo(&p),
    }
}

fn branches(p: &Params, key: &str) -> Result<Branches, CliError> {
    let n = p.count(key)?;
    Branches::from_count(n as usize).ok_or_else(|| CliError::param(key, format!("expected 2 or 3, got {n}")))
}

fn gate(p: &Params) -> Result<Vec<Table>, CliError> {
    let br = branches(p, "branches")?;
    let n = p.count_u32("N")?;
    let kappa = p.real("kappa")?;
    let geom = match p.opt("epsilon", Unit::Dimensionless)? {
        Some(eps) => GateGeometry::with_epsilon(br, n, eps),
        None => GateGeometry::new(br, n),
    }
    .map_err(CliError::domain)?;
    let xi_2 = match p.opt("xi_2", Unit::Dimensionless)? {
        Some(x) => x,
        None => optimal_rates(kappa, n, br).map_err(CliError::domain)?.xi_2,
    };
    let xi_1 = p.opt("xi_1", Unit::Dimensionless)?.unwrap_or(xi_2 / kappa);
    let xi_c = p.real("xi_c")?;
    let rates = AbsorberRates::with_control(xi_1, xi_2, xi_c).map_err(CliError::domain)?;
    let control = p.flag("control")?;
    let exact = exact_errors(&geom, &rates);
    let lead = asymptotic_errors(&geom, &rates, Order::Leading);
    let out = propagate(&geom, &rates, control, &PhotonState::basis(geom.dim(), 0)).map_err(CliError::domain)?;
    let pick = |e: zeno_core::ErrorPair| if control { e.two_photon } else { e.one_photon };
    let ratio = rates.kappa().unwrap_or(f64::INFINITY);
    let loss = if xi_c > 0.0 { control_loss_adjusted(ratio, n, xi_c).map_err(CliError::domain)? } else { lead.max() };

    let mut cols = vec![
        ("branches", D),
        ("N", D),
        ("epsilon", "rad"),
        ("xi_1", D),
        ("xi_2", D),
        ("xi_c", D),
        ("kappa", D),
        ("control", "bool"),
    ];
    let out_names: Vec<String> = (0..geom.dim()).map(|k| format!("p_out_{k}")).collect();
    cols.extend(out_names.iter().map(|s| (s.as_str(), P)));
    cols.extend([
        ("p_error_exact", P),
        ("p_error_leading", P),
        ("p1_exact", P),
        ("p2_exact", P),
        ("p_overall_with_control_loss", P),
    ]);
    let mut t = Table::new("gate", &cols);
    let mut row: Vec<Cell> = vec![
        (br.count() as u64).into(),
        n.into(),
        geom.epsilon().into(),
        xi_1.into(),
        xi_2.into(),
        xi_c.into(),
        ratio.into(),
        control.into(),
    ];
    row.extend((0..geom.dim()).map(|k| Cell::Num(out.probability(k))));
    row.extend([pick(exact), pick(lead), exact.one_photon, exact.two_photon, loss].map(Cell::Num));
    t.push(row);
    Ok(vec![t])
}

fn atom(p: &Params) -> Result<AtomSpec, CliError> {
    AtomSpec::from_detunings(
        p.get("omega_1", Unit::ElectronVolt)?,
        p.get("delta", Unit::ElectronVolt)?,
        p.get("delta_control", Unit::ElectronVolt)?,
        p.get("dipole_length", Unit::InverseElectronVolt)?,
        p.get("area", Unit::InverseElectronVoltSquared)?,
        p.real("f")?,
    )
    .map_err(CliError::domain)
}

fn absorber(p: &Params) -> Result<Vec<Table>, CliError> {
    let a = atom(p)?;
    let g = coupling_constants(&a);
    let p2 = two_photon_absorption_prob(&a).map_err(CliError::domain)?;
    let p1_target = one_photon_scattering_prob(&a, ScatteringTerms::TARGET_ONLY).map_err(CliError::domain)?;
    let p1_full = one_photon_scattering_prob(&a, ScatteringTerms::FULL).map_err(CliError::domain)?;
    let k_full = match absorption_ratio_with(&a, ScatteringTerms::FULL) {
        Ok(k) => k,
        Err(zeno_core::absorber::AbsorberError::UnboundedRatio) => f64::INFINITY,
        Err(e) => return Err(CliError::domain(e)),
    };
    let mut t = Table::new(
        "absorber",
        &[
            ("e12", "eV"),
            ("e23", "eV"),
            ("omega_1", "eV"),
            ("omega_2", "eV"),
            ("delta", "eV"),
            ("delta_control", "eV"),
            ("f", D),
            ("g12", "eV^-1/2"),
            ("g23", "eV^-1/2"),
            ("g_eff", "eV^-2"),
            ("p2gamma", P),
            ("p1gamma_target", P),
            ("p1gamma_full", P),
            ("kappa0_closed_form", D),
            ("kappa0_full", D),
        ],
    );
    t.push(
        [
            a.e12(),
            a.e23(),
            a.omega_1(),
            a.omega_2(),
            a.delta(),
            a.delta_control(),
            a.coupling_ratio(),
            g.g12,
            g.g23,
            g.g_eff,
            p2,
            p1_target,
            p1_full,
            absorption_ratio(&a),
            k_full,
        ]
        .map(Cell::Num)
        .to_vec(),
    );
    let mut tables = vec![t];
    if let Some(kappa) = p.opt("kappa", Unit::Dimensionless)? {
        let mut e = Table::new("required enhancement", &[("kappa", D), ("kappa0_full", D), ("enhancement", D)]);
        e.push(vec![kappa.into(), k_full.into(), required_enhancement(kappa, &a)?.into()]);
        tables.push(e);
    }
    let mut i = Table::new("destructive interference", &[("omega", "eV"), ("e23", "eV")]);
    if let Ok(r) = destructive_interference_frequency(a.e12(), a.dipole_length(), a.mass()) {
        i.push(vec![r.omega.into(), r.e23.into()]);
    }
    tables.push(i);
    Ok(tables)
}

fn multipass(p: &Params) -> Result<Vec<Table>, CliError> {
    let pair = p.real("phase_pair")?;
    let k1 = p.real("phase_1")?;
    let spec = |passes| MultiPassSpec {
        passes,
        k1,
        k2: pair - k1,
        path_length: 1.0,
        tau: 1.0,
        g13: p.real("tau_g13").unwrap_or(0.0),
        g12: p.real("tau_g12").unwrap_or(0.0),
        g11: p.real("tau_g11").unwrap_or(0.0),
    };
    let n = p.count_u32("passes")?;
    let single = multipass_probabilities(&spec(1)).map_err(CliError::domain)?;
    let r = multipass_probabilities(&spec(n)).map_err(CliError::domain)?;
    let mut t = Table::new(
        "multipass",
        &[
            ("passes", D),
            ("two_photon", P),
            ("one_photon_absorption", P),
            ("one_photon_scatter", P),
            ("two_photon_gain", D),
            ("ratio_gain", D),
            ("perturbative", "bool"),
        ],
    );
    let ratio = |m: &zeno_core::enhancement::MultiPassResult| m.two_photon / m.one_photon_scatter;
    t.push(vec![
        n.into(),
        r.two_photon.into(),
        r.one_photon_absorption.into(),
        r.one_photon_scatter.into(),
        (r.two_photon / single.two_photon).into(),
        (ratio(&r) / ratio(&single)).into(),
        r.perturbative.into(),
    ]);
    Ok(vec![t])
}

fn dicke(p: &Params) -> Result<Vec<Table>, CliError> {
    let (total, s) = (p.count("emitters")?, p.count("excitations")?);
    let d = dicke_enhancement(total, s).map_err(CliError::domain)?;
    let mut t = Table::new(
        "dicke",
        &[("emitters", D), ("excitations", D), ("two_photon_factor", D), ("scatter_factor_bound", D), ("ratio_gain", D)],
    );
    t.push(vec![total.into(), s.into(), d.two_photon_factor.into(), d.scatter_factor_bound.into(), d.ratio_gain().into()]);
    Ok(vec![t])
}

fn phases(p: &Params, seed: u64) -> Result<Vec<Table>, CliError> {
    let s = p.count("emitters")?;
    let trials = p.count_u32("trials")?;
    let dk = [p.real("phase_x")?, p.real("phase_y")?, p.real("phase_z")?];
    let e = random_phase_sum(s as usize, dk, [1.0; 3], seed, trials).map_err(CliError::domain)?;
    let mut t = Table::new(
        "random phase sum",
        &[("emitters", D), ("trials", D), ("seed", D), ("mean", D), ("stderr", D), ("mean_over_emitters", D)],
    );
    t.push(vec![s.into(), trials.into(), seed.into(), e.mean.into(), e.stderr.into(), (e.mean / s as f64).into()]);
    Ok(vec![t])
}

fn pump(p: &Params) -> Result<Vec<Table>, CliError> {
    let spec = PumpSpec::from_detuning(
        AtomSpec::optical_example(),
        p.get("delta_prime", Unit::ElectronVolt)?,
        p.get("intensity_1", Unit::ElectronVoltFourth)?,
        p.get("intensity_2", Unit::ElectronVoltFourth)?,
        p.real("emitters")?,
    )
    .map_err(CliError::domain)?;
    let st = pump_steady_state(&spec).map_err(CliError::domain)?;
    let mut t = Table::new(
        "pump steady state",
        &[
            ("pump_omega_1", "eV"),
            ("pump_omega_2", "eV"),
            ("coupling", "eV"),
            ("alpha_g", D),
            ("s_over_S", D),
            ("threshold", "eV"),
            ("delta_prime", "eV"),
            ("pump_safe", "bool"),
        ],
    );
    t.push(vec![
        spec.omega_1.into(),
        spec.omega_2.into(),
        st.coupling.into(),
        st.alpha_g.into(),
        st.s_over_s.into(),
        st.threshold.into(),
        spec.delta_prime.into(),
        st.pump_safe.into(),
    ]);
    Ok(vec![t])
}

fn search_config(p: &Params, mode: Option<&str>) -> Result<SearchConfig, CliError> {
    let d = SearchConfig::default();
    let get = |k: &str, v: f64| p.opt(k, Unit::Dimensionless).map(|o| o.unwrap_or(v));
    let cfg = SearchConfig {
        scale_rule: if mode == Some("optimized") { ScaleRule::Optimized } else { ScaleRule::Analytic },
        kappa_rel_tol: get("kappa_rel_tol", d.kappa_rel_tol)?,
        scale_tol: get("scale_tol", d.scale_tol)?,
        kappa_max: get("kappa_max", d.kappa_max)?,
        ..d
    };
    for (key, v) in [("kappa_rel_tol", cfg.kappa_rel_tol), ("scale_tol", cfg.scale_tol)] {
        if !(v > 0.0) {
            return Err(CliError::param(key, "must be positive"));
        }
    }
    if !(cfg.kappa_max > cfg.kappa_min) {
        return Err(CliError::param("kappa_max", format!("must exceed {}", cfg.kappa_min)));
    }
    Ok(cfg)
}

const DESIGN_COLUMNS: [(&str, &str); 6] =
    [("P_error", P), ("N", D), ("P2gamma_seg", P), ("P1gamma_seg", P), ("kappa", D), ("enhancement", D)];

fn design_row(d: &DesignPoint) -> Vec<Cell> {
    vec![
        d.p_target.into(),
        d.segments.into(),
        d.p2_segment.into(),
        d.p1_segment.into(),
        d.kappa.into(),
        d.required_enhancement.map(Cell::Int).unwrap_or(Cell::Text(String::new())),
    ]
}

fn design(p: &Params, mode: Option<&str>) -> Result<Vec<Table>, CliError> {
    let cfg = SearchConfig {
        branches: branches(p, "branches")?,
        n_max: p.count_u32("N_max")?,
        ..search_config(p, mode)?
    };
    let target = p.real("P")?;
    let pts = search_feasible_nk(target, &Strategy::ALL, &cfg, Some(&AtomSpec::optical_example()))?;
    let mut cols = vec![("strategy", "label")];
    cols.extend(DESIGN_COLUMNS);
    cols.extend([("xi_1", D), ("xi_2", D), ("p1_exact", P), ("p2_exact", P)]);
    let mut t = Table::new("design", &cols);
    for (s, d) in Strategy::ALL.iter().zip(&pts) {
        let mut row = vec![Cell::from(s.name())];
        row.extend(design_row(d));
        row.extend([d.xi_1, d.xi_2, d.errors.one_photon, d.errors.two_photon].map(Cell::Num));
        t.push(row);
    }
    Ok(vec![t])
}

fn tables(p: &Params, mode: Option<&str>) -> Result<Vec<Table>, CliError> {
    let cfg = search_config(p, mode)?;
    let data = generate_tables(&DEFAULT_LAYOUT, &cfg, &AtomSpec::optical_example())?;
    let mut overview = Table::new("kappa by error and segments", &[("P_error", P), ("N", D), ("kappa", D)]);
    for d in &data.overview {
        overview.push(vec![d.p_target.into(), d.segments.into(), d.kappa.into()]);
    }
    let mut out = vec![overview];
    for (title, rows) in TABLE_TITLES.iter().zip(&data.per_segment) {
        let mut t = Table::new(&format!("per segment: {title}"), &DESIGN_COLUMNS);
        rows.iter().for_each(|d| t.push(design_row(d)));
        out.push(t);
    }
    Ok(out)
}

fn curve(p: &Params) -> Result<Vec<Table>, CliError> {
    let kappa = p.real("kappa")?;
    let n = p.count_u32("N")?;
    let br = branches(p, "branches")?;
    let range = (p.real("xi_2_min")?, p.real("xi_2_max")?);
    let samples = p.count("samples")? as usize;
    let pts = error_curve(kappa, n, br, range, samples)?;
    let mut t = Table::new(
        "error curve",
        &[("xi_2gamma", D), ("p1_exact", P), ("p2_exact", P), ("p1_approx", P), ("p2_approx", P)],
    );
    for c in &pts {
        t.push([c.xi_2, c.p1_exact, c.p2_exact, c.p1_approx, c.p2_approx].map(Cell::Num).to_vec());
    }
    let (xi, pc) = exact_crossing(kappa, n, br)?;
    let opt = optimal_rates(kappa, n, br).map_err(CliError::domain)?;
    let mut c = Table::new(
        "crossing",
        &[("xi_2gamma_exact", D), ("p_exact", P), ("xi_2gamma_leading", D), ("p_leading", P)],
    );
    c.push([xi, pc, opt.xi_2, opt.p_overall].map(Cell::Num).to_vec());
    Ok(vec![t, c])
}

fn demo(p: &Params) -> Result<Vec<Table>, CliError> {
    let n = p.count_u32("N")?;
    let s = zeno_demo_survival(n).map_err(CliError::domain)?;
    let mut t = Table::new("zeno demo", &[("N", D), ("survival", P), ("leading_order", P)]);
    t.push(vec![n.into(), s.into(), (1.0 - PI * PI / (4.0 * n as f64)).into()]);
    Ok(vec![t])
}
