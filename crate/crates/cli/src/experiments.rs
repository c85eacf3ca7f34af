use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use lgsim::ancilla::verify_pulse_sequences;
use lgsim::lgi::{k3_curve, k3max_surface, ttb_map, Endpoints, SweepAxis};
use lgsim::noise::{gain_curve, NoiseConfig, NoiseModel};
use lgsim::superpose::{SoeProfile, SuperpositionConfig};
use lgsim::Result;

use crate::args::{Cli, Experiment};
use crate::selftest;
use crate::table::{Cell, Table};

/// Dephasing rate used when `--gamma` is not given.
pub const DEFAULT_GAMMA: f64 = 0.25 / PI;
/// ωt samples per cycle before golden-section refinement.
pub const OMEGA_T_STEPS: usize = 1000;

/// A single embedded assertion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Resolved experiment parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Params {
    pub alpha: Option<f64>,
    pub phi_deg: Option<f64>,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
    pub grid: Option<usize>,
    pub seed: u64,
}

impl From<&Cli> for Params {
    fn from(cli: &Cli) -> Self {
        Self {
            alpha: cli.alpha,
            phi_deg: cli.phi,
            gamma: cli.gamma,
            omega: cli.omega,
            grid: cli.grid,
            seed: cli.seed,
        }
    }
}

impl Params {
    fn omega(&self) -> f64 {
        self.omega.unwrap_or(1.0)
    }

    fn alphas(&self, default_steps: usize) -> Result<Vec<f64>> {
        match self.alpha {
            Some(a) => Ok(vec![a]),
            None => Ok(SweepAxis::new("alpha", 0.0, FRAC_PI_4, default_steps, Endpoints::Closed)?.values()),
        }
    }

    fn phis_deg(&self, defaults: &[f64]) -> Vec<f64> {
        match self.phi_deg {
            Some(p) => vec![p],
            None => defaults.to_vec(),
        }
    }
}

fn nondecreasing(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] >= w[0] - slack)
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub fn run(experiment: Experiment, params: &Params) -> Result<Outcome> {
    let mut outcome = match experiment {
        Experiment::TtbMap => ttb(params),
        Experiment::K3Surface => surface(params),
        Experiment::K3Curves => curves(params),
        Experiment::LifetimeBloch => lifetimes(params, NoiseModel::Bloch),
        Experiment::LifetimeLindblad => lifetimes(params, NoiseModel::Lindblad),
        Experiment::SoeProfiles => soe_profiles(params),
        Experiment::VerifyCircuits => verify_circuits(params),
        Experiment::Selftest => selftest::run(params.seed),
    }?;
    let table = &mut outcome.table;
    let mut meta = vec![
        ("experiment".to_string(), experiment.name().to_string()),
        ("lgsim_version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
    ];
    meta.append(&mut table.meta);
    table.meta = meta;
    Ok(outcome)
}

fn ttb(p: &Params) -> Result<Outcome> {
    let n = p.grid.unwrap_or(50);
    let eta = SweepAxis::new("eta", 0.0, PI, n, Endpoints::HalfOpen)?;
    let xi = SweepAxis::new("xi", 0.0, 2.0 * PI, n, Endpoints::HalfOpen)?;
    let map = ttb_map(&eta, &xi, &SweepAxis::full_cycle(OMEGA_T_STEPS)?)?;

    let mut table = Table::new(&["eta", "xi", "k3max", "argmax_omega_t"]);
    table.meta("grid", format!("{n}x{n}, eta in [0, pi), xi in [0, 2pi)"));
    table.meta("omega_t_steps", OMEGA_T_STEPS);
    for e in &map {
        table.push(vec![e.eta.into(), e.xi.into(), e.k3max.into(), e.argmax_omega_t.into()]);
    }

    let values: Vec<f64> = map.iter().map(|e| e.k3max).collect();
    let max = max_of(&values);
    let equator = max_of(
        &map.iter()
            .filter(|e| (e.eta - FRAC_PI_2).abs() < 1e-12)
            .map(|e| e.k3max)
            .collect::<Vec<_>>(),
    );
    let checks = vec![
        Check::new("bounded by 1.5", max <= 1.5 + 1e-9, format!("max K3 = {max:.12}")),
        Check::new(
            "maximum 1.5 on the equator",
            (max - 1.5).abs() < 1e-4 && (equator - max).abs() < 1e-12,
            format!("max K3 at eta = pi/2: {equator:.9}"),
        ),
    ];
    Ok(Outcome { table, checks })
}

fn surface(p: &Params) -> Result<Outcome> {
    let alpha = match p.alpha {
        Some(a) => SweepAxis::fixed("alpha", a),
        None => SweepAxis::new("alpha", 0.0, FRAC_PI_4, 5, Endpoints::Closed)?,
    };
    let phi = match p.phi_deg {
        Some(d) => SweepAxis::fixed("phi", d.to_radians()),
        None => SweepAxis::new("phi", 0.0, PI, p.grid.unwrap_or(36), Endpoints::HalfOpen)?,
    };
    let entries = k3max_surface(&alpha, &phi, &SweepAxis::full_cycle(OMEGA_T_STEPS)?)?;

    let mut table = Table::new(&["alpha", "phi_deg", "k3max", "argmax_omega_t"]);
    table.meta("omega_t_steps", OMEGA_T_STEPS);
    for e in &entries {
        table.push(vec![
            e.alpha.into(),
            e.phi.to_degrees().into(),
            e.k3max.into(),
            e.argmax_omega_t.into(),
        ]);
    }

    let mut phis: Vec<f64> = entries.iter().map(|e| e.phi).collect();
    phis.sort_by(f64::total_cmp);
    phis.dedup();
    let monotone = phis.iter().all(|&phi| {
        let column: Vec<f64> = entries.iter().filter(|e| e.phi == phi).map(|e| e.k3max).collect();
        nondecreasing(&column, 1e-9)
    });
    let max = max_of(&entries.iter().map(|e| e.k3max).collect::<Vec<_>>());
    let plain = max_of(
        &entries.iter().filter(|e| e.alpha == 0.0).map(|e| e.k3max).collect::<Vec<_>>(),
    );
    let checks = vec![
        Check::new("nondecreasing in alpha", monotone, format!("{} phi columns", phis.len())),
        Check::new("below algebraic maximum 3", max <= 3.0 + 1e-9, format!("max K3 = {max:.9}")),
        Check::new(
            "alpha = 0 bounded by 1.5",
            plain <= 1.5 + 1e-9,
            format!("max K3 at alpha = 0: {plain:.9}"),
        ),
    ];
    Ok(Outcome { table, checks })
}

fn curves(p: &Params) -> Result<Outcome> {
    let omega = p.omega();
    let phi_deg = p.phi_deg.unwrap_or(160.0);
    let alphas = p.alphas(5)?;
    let grid = SweepAxis::new("omega_t", 0.0, 2.0 * PI, p.grid.unwrap_or(201), Endpoints::Closed)?;

    let mut table = Table::new(&["alpha", "phi_deg", "omega_t", "c12", "c23", "c13", "k3"]);
    table.meta("omega", omega);
    let mut checks = Vec::new();
    let mut symmetric = true;
    let mut bounded = true;
    for &alpha in &alphas {
        let cfg = SuperpositionConfig::planar(alpha, phi_deg.to_radians(), omega)?;
        let curve = k3_curve(&cfg, &grid)?;
        for pt in &curve {
            let c = pt.correlators;
            symmetric &= (c.c12 - c.c23).abs() < 1e-12;
            bounded &= c.k3.abs() <= 3.0 + 1e-12;
            table.push(vec![
                alpha.into(),
                phi_deg.into(),
                pt.omega_t.into(),
                c.c12.into(),
                c.c23.into(),
                c.c13.into(),
                c.k3.into(),
            ]);
        }
        if alpha == 0.0 {
            let max = max_of(&curve.iter().map(|pt| pt.correlators.k3).collect::<Vec<_>>());
            checks.push(Check::new(
                "alpha = 0 bounded by 1.5",
                max <= 1.5 + 1e-9,
                format!("max K3 = {max:.9}"),
            ));
        }
    }
    checks.push(Check::new("C12 = C23", symmetric, "stationary correlators"));
    checks.push(Check::new("|K3| <= 3", bounded, "algebraic bound"));
    Ok(Outcome { table, checks })
}

fn lifetimes(p: &Params, model: NoiseModel) -> Result<Outcome> {
    let gamma = p.gamma.unwrap_or(DEFAULT_GAMMA);
    let omega = p.omega();
    let noise = NoiseConfig::new(gamma)?;
    let alphas = p.alphas(p.grid.unwrap_or(5))?;
    let label = match model {
        NoiseModel::Bloch => "bloch",
        NoiseModel::Lindblad => "lindblad",
    };

    let mut table = Table::new(&["model", "phi_deg", "alpha", "tau_alpha", "tau_0", "gain"]);
    table.meta("gamma", gamma);
    table.meta("omega", omega);
    let mut checks = Vec::new();
    for phi_deg in p.phis_deg(&[90.0, 115.0, 140.0]) {
        let curve = gain_curve(phi_deg.to_radians(), omega, &noise, &alphas, model)?;
        for pt in &curve {
            table.push(vec![
                label.into(),
                phi_deg.into(),
                pt.alpha.into(),
                pt.tau_alpha.into(),
                pt.tau_0.into(),
                pt.gain.into(),
            ]);
        }
        let gains: Vec<f64> = curve.iter().map(|pt| pt.gain.unwrap_or(f64::NAN)).collect();
        let crossed = gains.iter().all(|g| g.is_finite());
        checks.push(Check::new(
            format!("phi = {phi_deg}: crossing found"),
            crossed,
            format!("{} alpha points", gains.len()),
        ));
        checks.push(Check::new(
            format!("phi = {phi_deg}: gain >= 1"),
            gains.iter().all(|&g| g >= 1.0 - 1e-6),
            format!("gains {gains:.6?}"),
        ));
        if model == NoiseModel::Bloch && p.alpha.is_none() {
            checks.push(Check::new(
                format!("phi = {phi_deg}: gain nondecreasing in alpha"),
                nondecreasing(&gains, 1e-6),
                format!("gains {gains:.6?}"),
            ));
        }
    }
    Ok(Outcome { table, checks })
}

fn soe_profiles(p: &Params) -> Result<Outcome> {
    let omega = p.omega();
    let alphas = p.alphas(5)?;
    let steps = p.grid.unwrap_or(101);
    let times = SweepAxis::new("t", 0.0, 2.0 * PI / omega, steps, Endpoints::Closed)?.values();

    let mut table = Table::new(&["alpha", "phi_deg", "t", "f", "g", "norm_sq", "nonlinearity"]);
    table.meta("omega", omega);
    let mut checks = Vec::new();
    for phi_deg in p.phis_deg(&[90.0, 135.0, 165.0]) {
        let mut nls = Vec::new();
        for &alpha in &alphas {
            let profile = SoeProfile::new(&SuperpositionConfig::planar(alpha, phi_deg.to_radians(), omega)?)?;
            let nl = profile.nonlinearity();
            nls.push(nl);
            for &t in &times {
                table.push(vec![
                    alpha.into(),
                    phi_deg.into(),
                    t.into(),
                    profile.f(t).into(),
                    profile.g(t).into(),
                    profile.norm_sq(t).into(),
                    nl.into(),
                ]);
            }
            if alpha == 0.0 {
                let constant = times.iter().all(|&t| profile.g(t) == omega);
                checks.push(Check::new(
                    format!("phi = {phi_deg}: g = omega at alpha = 0"),
                    constant,
                    "linear evolution",
                ));
            }
        }
        checks.push(Check::new(
            format!("phi = {phi_deg}: non-linearity nondecreasing in alpha"),
            nondecreasing(&nls, 0.0),
            format!("max g - min g: {nls:.6?}"),
        ));
    }
    Ok(Outcome { table, checks })
}

fn verify_circuits(p: &Params) -> Result<Outcome> {
    let n = p.grid.unwrap_or(21);
    let phis = SweepAxis::new("phi", 0.0, PI, n, Endpoints::Closed)?.values();
    let omega_ts = SweepAxis::new("omega_t", 0.0, 2.0 * PI, n, Endpoints::Closed)?.values();
    let points: Vec<(f64, f64)> = phis
        .iter()
        .flat_map(|&phi| omega_ts.iter().map(move |&wt| (phi, wt)))
        .collect();
    let report = verify_pulse_sequences(&points)?;

    let mut table = Table::new(&["sequence", "phi_deg", "omega_t", "distance"]);
    table.meta("grid", format!("{n}x{n}, phi in [0, pi], omega_t in [0, 2pi]"));
    table.meta("tolerance", report.tolerance);
    for row in &report.rows {
        table.push(vec![
            Cell::from(row.sequence.as_str()),
            row.phi.to_degrees().into(),
            row.omega_t.into(),
            row.distance.into(),
        ]);
    }
    let checks = report
        .summary
        .iter()
        .map(|s| {
            Check::new(
                format!("{} matches target", s.sequence),
                s.passed,
                format!("max distance {:.3e}", s.max_distance),
            )
        })
        .collect();
    Ok(Outcome { table, checks })
}
