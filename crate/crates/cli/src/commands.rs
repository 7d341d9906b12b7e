//! One function per subcommand. Rows are evaluated in parallel and
//! collected in input order.

use std::f64::consts::PI;
use std::fs;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use subharm::indicator::{
    indicator, indicator_closed, indicator_integral, indicator_near_pi, solve_order, zero_set, Level,
};
use subharm::mellin::{mellin_h_closed, mellin_h_numeric};
use subharm::potential::{counterexample_u0, laplacian_u0, scaled_limit, u_canonical, MassModel, SweepSpec};
use subharm::ProblemParams;

use crate::config::{CommandKind, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{Cell, Table};

/// Tables of a finished run, plus the reason if a tolerance check failed.
pub struct Report {
    pub tables: Vec<Table>,
    pub failure: Option<String>,
}

impl Report {
    fn ok(tables: Vec<Table>) -> Self {
        Self { tables, failure: None }
    }
}

pub fn run(config: &RunConfig) -> Result<Report> {
    match config.command {
        CommandKind::Indicator => cmd_indicator(config),
        CommandKind::Zeros => cmd_zeros(config),
        CommandKind::MellinVerify => cmd_mellin_verify(config),
        CommandKind::Simulate => cmd_simulate(config),
        CommandKind::SolveOrder => cmd_solve_order(config),
        CommandKind::Counterexample => cmd_counterexample(config),
    }
}

fn params(config: &RunConfig) -> Result<ProblemParams> {
    Ok(ProblemParams::new(config.n, config.rho, config.delta)?)
}

pub fn cmd_indicator(config: &RunConfig) -> Result<Report> {
    let p = params(config)?;
    let quad = config.quad();
    let rows: Vec<(f64, f64, f64, Option<f64>)> = config
        .theta
        .par_iter()
        .map(|&theta| -> Result<_> {
            if theta >= PI {
                let at_pi = indicator(&p, theta)?;
                let v = match at_pi.value {
                    Level::Finite(v) => v,
                    Level::NegInfinity => f64::NEG_INFINITY,
                };
                return Ok((theta, v, f64::NAN, None));
            }
            let closed = indicator_closed(&p, theta)?;
            let integral = indicator_integral(&p, theta, &quad)?.value;
            let near = if theta > PI - 0.5 { Some(indicator_near_pi(&p, theta)?) } else { None };
            Ok((theta, closed, integral, near))
        })
        .collect::<Result<_>>()?;

    let mut table = Table::new(
        "indicator",
        &["theta_rad", "theta_deg", "h_closed", "h_integral", "h_asymptotic", "abs_diff"],
    );
    let mut failure = None;
    for &(theta, closed, integral, near) in &rows {
        let diff = (closed - integral).abs();
        let diff_cell = if integral.is_nan() { Cell::Empty } else { Cell::Float(diff) };
        if !integral.is_nan() && !(diff <= config.tol * closed.abs().max(config.delta)) && failure.is_none() {
            failure = Some(format!("θ = {theta}: closed {closed} vs integral {integral}"));
        }
        table.push(vec![
            theta.into(),
            theta.to_degrees().into(),
            closed.into(),
            if integral.is_nan() { Cell::Empty } else { integral.into() },
            Cell::opt(near),
            diff_cell,
        ]);
    }
    Ok(Report { tables: vec![table], failure })
}

pub fn cmd_zeros(config: &RunConfig) -> Result<Report> {
    let set = zero_set(&params(config)?)?;
    let mut table = Table::new("zeros", &["n", "rho", "root_index", "beta_deg", "beta_rad", "residual", "count"]);
    for (i, (&root, &res)) in set.roots.iter().zip(&set.residuals).enumerate() {
        table.push(vec![
            config.n.into(),
            config.rho.into(),
            (i + 1).into(),
            root.to_degrees().into(),
            root.into(),
            res.into(),
            set.roots.len().into(),
        ]);
    }
    Ok(Report::ok(vec![table]))
}

pub fn cmd_mellin_verify(config: &RunConfig) -> Result<Report> {
    let mut points = Vec::new();
    for lambda in [0.5, 1.0, 1.5, 2.5] {
        for q in 0u32..3 {
            for xi in [-0.8, -0.3, 0.0, 0.4, 0.9] {
                points.push((lambda, q, -(q as f64) - 0.5, xi));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(config.seed);
    for _ in 0..config.random.unwrap_or(0) {
        let lambda = rng.gen_range(0.5..2.5);
        let q = rng.gen_range(0u32..3);
        let s = -(q as f64) - rng.gen_range(0.15..0.85);
        let xi = rng.gen_range(-0.9..0.95);
        points.push((lambda, q, s, xi));
    }
    let quad = config.quad();
    let rows: Vec<(Complex64, Complex64)> = points
        .par_iter()
        .map(|&(lambda, q, s, xi)| -> Result<_> {
            let s = Complex64::new(s, 0.0);
            Ok((mellin_h_numeric(lambda, q, s, xi, &quad)?.value, mellin_h_closed(lambda, q, s, xi)?))
        })
        .collect::<Result<_>>()?;

    let mut table = Table::new(
        "mellin",
        &["lambda", "q", "s", "xi", "numeric_re", "numeric_im", "closed_re", "closed_im", "rel_err"],
    );
    let mut failure = None;
    for (&(lambda, q, s, xi), &(num, closed)) in points.iter().zip(&rows) {
        let err = (num - closed).norm() / closed.norm();
        if !(err <= config.tol) && failure.is_none() {
            failure = Some(format!("λ = {lambda}, q = {q}, s = {s}, ξ = {xi}: relative error {err:e}"));
        }
        table.push(vec![
            lambda.into(),
            q.into(),
            s.into(),
            xi.into(),
            num.re.into(),
            num.im.into(),
            closed.re.into(),
            closed.im.into(),
            err.into(),
        ]);
    }
    Ok(Report { tables: vec![table], failure })
}

fn load_model(config: &RunConfig) -> Result<MassModel> {
    let path = config.model.as_ref().expect("simulate has a model");
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    Ok(text.parse()?)
}

pub fn cmd_simulate(config: &RunConfig) -> Result<Report> {
    let model = load_model(config)?;
    let rho = match model.order() {
        Some(r) if r != config.rho => {
            return Err(subharm::Error::InvalidParams(format!("model has order {r} but --rho is {}", config.rho)).into())
        }
        Some(r) => r,
        None => config.rho,
    };
    let p = ProblemParams::new(config.n, rho, 1.0)?;
    let quad = config.quad();

    if let Some(radii) = &config.radii {
        let pairs: Vec<(f64, f64)> =
            radii.iter().flat_map(|&r| config.theta.iter().map(move |&t| (r, t))).collect();
        let values: Vec<(f64, f64)> = pairs
            .par_iter()
            .map(|&(r, t)| -> Result<_> {
                let e = u_canonical(&model, &p, r, t, &quad)?;
                Ok((e.value, e.abs_error))
            })
            .collect::<Result<_>>()?;
        let mut table = Table::new("values", &["r", "theta_rad", "u", "error_estimate"]);
        for (&(r, t), &(u, err)) in pairs.iter().zip(&values) {
            table.push(vec![r.into(), t.into(), u.into(), err.into()]);
        }
        return Ok(Report::ok(vec![table]));
    }

    let mut spec = SweepSpec::new(config.grid.geometric()?);
    spec.tol = config.tol;
    spec.extrapolation = config.extrapolation();
    let sweeps = config
        .theta
        .par_iter()
        .map(|&t| scaled_limit(&model, &p, t, &spec, &quad))
        .collect::<subharm::Result<Vec<_>>>()?;
    let mut samples = Table::new("sweep", &["r", "theta_rad", "u", "scaled", "u_over_n", "u_over_big_n"]);
    let mut summary = Table::new(
        "limits",
        &[
            "theta_rad",
            "scaled_limit",
            "scaled_converged",
            "per_n_limit",
            "per_n_converged",
            "per_big_n_limit",
            "per_big_n_converged",
            "indicator",
            "rel_diff",
        ],
    );
    for (&theta, sweep) in config.theta.iter().zip(&sweeps) {
        for s in &sweep.samples {
            samples.push(vec![
                s.r.into(),
                s.theta.into(),
                s.u.into(),
                s.scaled.into(),
                Cell::opt(s.per_n),
                Cell::opt(s.per_big_n),
            ]);
        }
        // lim u/n is the unit-density indicator for every density model
        let h = match model.order() {
            Some(_) => Some(indicator_closed(&p, theta)?),
            None => None,
        };
        let rel = match (h, sweep.per_n) {
            (Some(h), Some(c)) if h != 0.0 => Some((c.extrapolated - h).abs() / h.abs()),
            _ => None,
        };
        summary.push(vec![
            theta.into(),
            sweep.scaled.extrapolated.into(),
            sweep.scaled.converged.into(),
            Cell::opt(sweep.per_n.map(|c| c.extrapolated)),
            sweep.per_n.map_or(Cell::Empty, |c| c.converged.into()),
            Cell::opt(sweep.per_big_n.map(|c| c.extrapolated)),
            sweep.per_big_n.map_or(Cell::Empty, |c| c.converged.into()),
            Cell::opt(h),
            Cell::opt(rel),
        ]);
    }
    Ok(Report::ok(vec![samples, summary]))
}

pub fn cmd_solve_order(config: &RunConfig) -> Result<Report> {
    let target = config.target.expect("solve-order has a target");
    let sol = solve_order(config.n, target)?;
    let roots = sol.roots.iter().map(|r| format!("{r:.16e}")).collect::<Vec<_>>().join(";");
    let mut table = Table::new(
        "order",
        &["n", "target", "rho", "roots", "residual", "admissible_lo", "admissible_hi"],
    );
    table.push(vec![
        config.n.into(),
        target.into(),
        sol.rho.into(),
        roots.into(),
        sol.residual.into(),
        sol.admissible.0.into(),
        sol.admissible.1.into(),
    ]);
    Ok(Report::ok(vec![table]))
}

/// Laplacian samples are taken where r^{ρ-2} is still well inside the
/// double range and the angular differences are reliable.
const LAPLACIAN_R: (f64, f64) = (1e6, 1e40);
const LAPLACIAN_THETA_MAX: f64 = PI - 1e-3;

pub fn cmd_counterexample(config: &RunConfig) -> Result<Report> {
    let rho = config.rho;
    let count = config.points.unwrap_or(2001);
    if count < 2 {
        return Err(CliError::Usage("points must be at least 2".into()));
    }
    let pairs: Vec<(f64, f64)> = (0..count)
        .flat_map(|k| {
            let t = 2.0 * PI * k as f64 / (count - 1) as f64;
            config.theta.iter().map(move |&theta| (t, theta))
        })
        .collect();
    let rows: Vec<(f64, Option<f64>)> = pairs
        .par_iter()
        .map(|&(t, theta)| -> Result<_> {
            let r = t.exp().exp();
            let scaled = counterexample_u0(rho, r, theta)? / r.powf(rho);
            let lap = if (LAPLACIAN_R.0..=LAPLACIAN_R.1).contains(&r) && theta <= LAPLACIAN_THETA_MAX {
                Some(laplacian_u0(rho, r, theta)?.finite_difference / r.powf(rho - 2.0))
            } else {
                None
            };
            Ok((scaled, lap))
        })
        .collect::<Result<_>>()?;

    let mut table = Table::new("counterexample", &["t", "r", "theta_rad", "scaled_u0", "scaled_laplacian"]);
    for (&(t, theta), &(scaled, lap)) in pairs.iter().zip(&rows) {
        table.push(vec![t.into(), t.exp().exp().into(), theta.into(), scaled.into(), Cell::opt(lap)]);
    }
    let mut summary = Table::new("oscillation", &["theta_rad", "min", "max", "range", "min_scaled_laplacian"]);
    for &theta in &config.theta {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut lap_min: Option<f64> = None;
        for (_, &(v, lap)) in pairs.iter().zip(&rows).filter(|((_, t), _)| *t == theta) {
            lo = lo.min(v);
            hi = hi.max(v);
            if let Some(l) = lap {
                lap_min = Some(lap_min.map_or(l, |m| m.min(l)));
            }
        }
        summary.push(vec![theta.into(), lo.into(), hi.into(), (hi - lo).into(), Cell::opt(lap_min)]);
    }
    Ok(Report::ok(vec![table, summary]))
}
