//! Search for feasible `(N, kappa)` gate designs and the tables built from them.

use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::absorber::{absorption_ratio_with, AbsorberError, AtomSpec, ScatteringTerms};
use crate::gate::{
    asymptotic_errors, exact_errors, optimal_rates, AbsorberRates, Branches, ErrorPair, GateError, GateGeometry, Order,
};
use crate::numerics::search::{bisect_predicate, bisect_root, golden_section};
use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DesignError {
    #[error("no design with kappa <= {kappa_max} reaches error {p_target} for N <= {n_max}")]
    Infeasible { p_target: f64, kappa_max: f64, n_max: u32 },
    #[error("error threshold must lie in (0, 1), got {0}")]
    Threshold(f64),
    #[error("curve needs at least two samples over an increasing range")]
    Samples,
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Absorber(#[from] AbsorberError),
}

/// How absorber rates are chosen at a given `(N, kappa)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScaleRule {
    /// Leading-order optimal rates for the branch count.
    Analytic,
    /// Golden-section minimisation of the exact `max(P1, P2)` over absorber scale.
    Optimized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    MinN,
    Balanced,
    MinKappa,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::MinN, Strategy::Balanced, Strategy::MinKappa];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::MinN => "min_N",
            Strategy::Balanced => "balanced",
            Strategy::MinKappa => "min_kappa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub branches: Branches,
    pub scale_rule: ScaleRule,
    /// Relative bracket width at which the kappa bisection stops.
    pub kappa_rel_tol: f64,
    /// Bracket width of the golden-section search in log absorber scale.
    pub scale_tol: f64,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub n_max: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            branches: Branches::Three,
            scale_rule: ScaleRule::Analytic,
            kappa_rel_tol: 1e-3,
            scale_tol: 1e-6,
            kappa_min: 1.0,
            kappa_max: 1e7,
            n_max: 200,
        }
    }
}

/// One feasible gate design, certified with the exact error probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignPoint {
    pub p_target: f64,
    pub segments: u32,
    pub kappa: f64,
    pub xi_1: f64,
    pub xi_2: f64,
    pub errors: ErrorPair,
    pub p2_segment: f64,
    pub p1_segment: f64,
    pub required_enhancement: Option<u64>,
}

impl DesignPoint {
    pub fn is_feasible(&self) -> bool {
        self.errors.max() <= self.p_target
    }
}

fn check_threshold(p: f64) -> Result<(), DesignError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(DesignError::Threshold(p))
    }
}

/// Rates chosen by the configured rule and the exact errors they give.
pub fn design_rates(n: u32, kappa: f64, cfg: &SearchConfig) -> Result<(AbsorberRates, ErrorPair), DesignError> {
    let geom = GateGeometry::new(cfg.branches, n)?;
    let analytic = optimal_rates(kappa, n, cfg.branches)?.rates();
    let rates = match cfg.scale_rule {
        ScaleRule::Analytic => analytic,
        ScaleRule::Optimized => {
            let centre = analytic.xi_2().ln();
            let objective = |t: f64| {
                let r = AbsorberRates::from_kappa(kappa, t.exp()).expect("positive scale");
                exact_errors(&geom, &r).max()
            };
            let best = golden_section(objective, centre - 4.0, centre + 4.0, cfg.scale_tol)?;
            AbsorberRates::from_kappa(kappa, best.x.exp())?
        }
    };
    Ok((rates, exact_errors(&geom, &rates)))
}

/// Smallest kappa (to the configured relative width) whose design meets `p_target` at `n` segments.
pub fn min_feasible_kappa(p_target: f64, n: u32, cfg: &SearchConfig) -> Result<Option<f64>, DesignError> {
    check_threshold(p_target)?;
    let feasible = |ln_k: f64| design_rates(n, ln_k.exp(), cfg).map(|(_, e)| e.max() <= p_target).unwrap_or(false);
    let (lo, hi) = (cfg.kappa_min.ln(), cfg.kappa_max.ln());
    if !feasible(hi) {
        return Ok(None);
    }
    if feasible(lo) {
        return Ok(Some(cfg.kappa_min));
    }
    let (_, hi) = bisect_predicate(feasible, lo, hi, (1.0 + cfg.kappa_rel_tol).ln())?;
    Ok(Some(hi.exp()))
}

/// Per-segment absorption and loss probabilities at the three-branch optimum.
pub fn segment_probabilities(n: u32, kappa: f64) -> Result<(f64, f64), DesignError> {
    if n == 0 {
        return Err(GateError::ZeroSegments.into());
    }
    if !(kappa > 0.0) {
        return Err(GateError::Kappa(kappa).into());
    }
    let base = SQRT_2 * PI / n as f64;
    let sk = kappa.sqrt();
    Ok((1.0 - (-2.0 * sk * base).exp(), 1.0 - (-2.0 * base / sk).exp()))
}

/// Enhancement `ceil(kappa / kappa_0)` needed on top of a single atom's ratio.
///
/// `kappa_0` includes control-photon and direct scattering. An atom whose
/// scattering interferes away needs no enhancement.
pub fn required_enhancement(kappa_target: f64, spec: &AtomSpec) -> Result<u64, DesignError> {
    match absorption_ratio_with(spec, ScatteringTerms::FULL) {
        Ok(k0) => Ok((kappa_target / k0).ceil().max(1.0) as u64),
        Err(AbsorberError::UnboundedRatio) => Ok(1),
        Err(e) => Err(e.into()),
    }
}

fn point(p_target: f64, n: u32, kappa: f64, cfg: &SearchConfig, spec: Option<&AtomSpec>) -> Result<DesignPoint, DesignError> {
    let (rates, errors) = design_rates(n, kappa, cfg)?;
    let (p2_segment, p1_segment) = segment_probabilities(n, kappa)?;
    let required_enhancement = spec.map(|s| required_enhancement(kappa, s)).transpose()?;
    Ok(DesignPoint {
        p_target,
        segments: n,
        kappa,
        xi_1: rates.xi_1(),
        xi_2: rates.xi_2(),
        errors,
        p2_segment,
        p1_segment,
        required_enhancement,
    })
}

/// Minimal feasible kappa for every `N` up to `n_max`, in ascending `N`.
pub fn feasible_curve(p_target: f64, cfg: &SearchConfig) -> Result<Vec<DesignPoint>, DesignError> {
    check_threshold(p_target)?;
    let found: Vec<Result<Option<DesignPoint>, DesignError>> = (1..=cfg.n_max)
        .into_par_iter()
        .map(|n| match min_feasible_kappa(p_target, n, cfg)? {
            Some(k) => point(p_target, n, k, cfg, None).map(Some),
            None => Ok(None),
        })
        .collect();
    let mut curve = Vec::new();
    for r in found {
        if let Some(p) = r? {
            curve.push(p);
        }
    }
    Ok(curve)
}

/// One representative design per strategy, in the order requested.
pub fn search_feasible_nk(
    p_target: f64,
    strategies: &[Strategy],
    cfg: &SearchConfig,
    spec: Option<&AtomSpec>,
) -> Result<Vec<DesignPoint>, DesignError> {
    let curve = feasible_curve(p_target, cfg)?;
    if curve.is_empty() {
        return Err(DesignError::Infeasible { p_target, kappa_max: cfg.kappa_max, n_max: cfg.n_max });
    }
    let by = |key: &dyn Fn(&DesignPoint) -> f64| {
        // first minimum wins so ties go to the smaller N
        curve.iter().fold(&curve[0], |best, p| if key(p) < key(best) { p } else { best })
    };
    strategies
        .iter()
        .map(|s| {
            let chosen = match s {
                Strategy::MinN => &curve[0],
                Strategy::Balanced => by(&|p| p.segments as f64 * p.kappa.sqrt()),
                Strategy::MinKappa => by(&|p| p.kappa),
            };
            let mut out = *chosen;
            if let Some(spec) = spec {
                out.required_enhancement = Some(required_enhancement(out.kappa, spec)?);
            }
            Ok(out)
        })
        .collect()
}

/// Error thresholds and segment counts of the standard tables. Column `j`
/// of every threshold forms table `j + 1` of the per-segment tables.
pub const DEFAULT_LAYOUT: [(f64, [u32; 3]); 3] = [(0.5, [8, 10, 40]), (0.25, [20, 25, 70]), (0.1, [50, 60, 160])];

pub const TABLE_TITLES: [&str; 3] = ["small N", "balanced", "small kappa"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignTables {
    /// All `(P, N, kappa)` points, threshold-major.
    pub overview: Vec<DesignPoint>,
    /// Per-segment tables, one per column of the layout.
    pub per_segment: Vec<Vec<DesignPoint>>,
}

/// Builds the `(P, N, kappa)` overview and the three per-segment tables.
pub fn generate_tables(
    layout: &[(f64, [u32; 3])],
    cfg: &SearchConfig,
    spec: &AtomSpec,
) -> Result<DesignTables, DesignError> {
    let jobs: Vec<(f64, u32)> = layout.iter().flat_map(|(p, ns)| ns.iter().map(move |&n| (*p, n))).collect();
    let points: Vec<Result<DesignPoint, DesignError>> = jobs
        .par_iter()
        .map(|&(p, n)| {
            let k = min_feasible_kappa(p, n, cfg)?.ok_or(DesignError::Infeasible {
                p_target: p,
                kappa_max: cfg.kappa_max,
                n_max: n,
            })?;
            point(p, n, k, cfg, Some(spec))
        })
        .collect();
    let overview = points.into_iter().collect::<Result<Vec<_>, _>>()?;
    let per_segment = (0..3).map(|j| overview.iter().skip(j).step_by(3).copied().collect()).collect();
    Ok(DesignTables { overview, per_segment })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub xi_2: f64,
    pub p1_exact: f64,
    pub p2_exact: f64,
    pub p1_approx: f64,
    pub p2_approx: f64,
}

/// Exact and leading-order errors along `xi_2` at fixed `kappa`.
pub fn error_curve(
    kappa: f64,
    n: u32,
    branches: Branches,
    range: (f64, f64),
    samples: usize,
) -> Result<Vec<CurvePoint>, DesignError> {
    if samples < 2 || !(range.1 > range.0) || range.0 < 0.0 {
        return Err(DesignError::Samples);
    }
    let geom = GateGeometry::new(branches, n)?;
    (0..samples)
        .into_par_iter()
        .map(|i| {
            let xi_2 = range.0 + (range.1 - range.0) * i as f64 / (samples - 1) as f64;
            let rates = AbsorberRates::from_kappa(kappa, xi_2)?;
            let e = exact_errors(&geom, &rates);
            let a = asymptotic_errors(&geom, &rates, Order::Leading);
            Ok(CurvePoint { xi_2, p1_exact: e.one_photon, p2_exact: e.two_photon, p1_approx: a.one_photon, p2_approx: a.two_photon })
        })
        .collect()
}

/// Absorber scale where the exact one- and two-photon errors are equal.
pub fn exact_crossing(kappa: f64, n: u32, branches: Branches) -> Result<(f64, f64), DesignError> {
    let geom = GateGeometry::new(branches, n)?;
    let analytic = optimal_rates(kappa, n, branches)?.xi_2;
    let diff = |t: f64| {
        let e = exact_errors(&geom, &AbsorberRates::from_kappa(kappa, t.exp()).expect("positive"));
        e.one_photon - e.two_photon
    };
    let t = bisect_root(diff, analytic.ln() - 4.0, analytic.ln() + 4.0, 1e-12)?;
    let xi_2 = t.exp();
    let e = exact_errors(&geom, &AbsorberRates::from_kappa(kappa, xi_2)?);
    Ok((xi_2, 0.5 * (e.one_photon + e.two_photon)))
}
