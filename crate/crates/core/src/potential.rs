//! Potentials of masses on the negative axis: the canonical integral, the
//! Poisson-type representation through N(r), sweeps of r^{-ρ}u, u/n and
//! u/N along a ray, and the counterexample u₀.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{h_n, poisson_Pn, weierstrass_K, ProblemParams};
use crate::quad::{integrate_finite, integrate_unit, QuadEstimate, QuadratureSpec};
use crate::specfun::legendre_p_weighted_angle;

/// Perturbation ε(t) of a power law, n(t) = Δ t^ρ (1 + ε(t)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Epsilon {
    /// 1/(1 + ln t)
    InvLog,
    /// 1/(1 + ln(1 + ln t))
    InvLogLog,
}

/// Slowly varying factor ψ₁(t), n(t) = t^ρ ψ₁(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlowFactor {
    One,
    /// 1 + ln t
    Log,
    /// 1 + ln(1 + ln t)
    LogLog,
    /// 2 + sin(ln(1 + ln t))
    SinLogLog,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub t: f64,
    pub mass: f64,
}

/// Mass on the negative axis outside the closed unit ball.
///
/// Density models have n(t) = t^ρ g(t) for t > 1, which leaves a point mass
/// g(1) at the boundary t = 1⁺. Atomic masses are given as actual masses
/// at radii t > 1.
#[derive(Debug, Clone, PartialEq)]
pub enum MassModel {
    PowerLaw { delta: f64, rho: f64 },
    Perturbed { delta: f64, rho: f64, eps: Epsilon },
    SlowlyVarying { rho: f64, psi: SlowFactor },
    Atomic(Vec<Atom>),
}

impl MassModel {
    pub fn power_law(delta: f64, rho: f64) -> Result<Self> {
        check_density(delta, rho)?;
        Ok(Self::PowerLaw { delta, rho })
    }

    pub fn perturbed(delta: f64, rho: f64, eps: Epsilon) -> Result<Self> {
        check_density(delta, rho)?;
        Ok(Self::Perturbed { delta, rho, eps })
    }

    pub fn slowly_varying(rho: f64, psi: SlowFactor) -> Result<Self> {
        check_density(1.0, rho)?;
        Ok(Self::SlowlyVarying { rho, psi })
    }

    /// Atoms sorted by radius.
    pub fn atomic(mut atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if !(a.t > 1.0 && a.t.is_finite()) || !(a.mass > 0.0 && a.mass.is_finite()) {
                return Err(Error::InvalidParams(format!("atoms need t > 1 and mass > 0, got t = {}, mass = {}", a.t, a.mass)));
            }
        }
        atoms.sort_by(|a, b| a.t.total_cmp(&b.t));
        Ok(Self::Atomic(atoms))
    }

    /// Order ρ of a density model.
    pub fn order(&self) -> Option<f64> {
        match *self {
            Self::PowerLaw { rho, .. } | Self::Perturbed { rho, .. } | Self::SlowlyVarying { rho, .. } => Some(rho),
            Self::Atomic(_) => None,
        }
    }

    /// g(t) and t g'(t) for t >= 1.
    fn profile(&self, t: f64) -> (f64, f64) {
        let l = t.ln();
        match *self {
            Self::PowerLaw { delta, .. } => (delta, 0.0),
            Self::Perturbed { delta, eps: Epsilon::InvLog, .. } => {
                let e = 1.0 / (1.0 + l);
                (delta * (1.0 + e), -delta * e * e)
            }
            Self::Perturbed { delta, eps: Epsilon::InvLogLog, .. } => {
                let e = 1.0 / (1.0 + (1.0 + l).ln());
                (delta * (1.0 + e), -delta * e * e / (1.0 + l))
            }
            Self::SlowlyVarying { psi, .. } => match psi {
                SlowFactor::One => (1.0, 0.0),
                SlowFactor::Log => (1.0 + l, 1.0),
                SlowFactor::LogLog => (1.0 + (1.0 + l).ln(), 1.0 / (1.0 + l)),
                SlowFactor::SinLogLog => {
                    let ll = (1.0 + l).ln();
                    (2.0 + ll.sin(), ll.cos() / (1.0 + l))
                }
            },
            Self::Atomic(_) => (0.0, 0.0),
        }
    }
}

fn check_density(delta: f64, rho: f64) -> Result<()> {
    if !(delta >= 0.0 && delta.is_finite()) || !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParams(format!("need Δ >= 0 and ρ > 0, got Δ = {delta}, ρ = {rho}")));
    }
    Ok(())
}

impl fmt::Display for MassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PowerLaw { delta, rho } => writeln!(f, "powerlaw delta={delta:?} rho={rho:?}"),
            Self::Perturbed { delta, rho, eps } => {
                let e = match eps {
                    Epsilon::InvLog => "invlog",
                    Epsilon::InvLogLog => "invloglog",
                };
                writeln!(f, "perturbed delta={delta:?} rho={rho:?} eps={e}")
            }
            Self::SlowlyVarying { rho, psi } => {
                let p = match psi {
                    SlowFactor::One => "one",
                    SlowFactor::Log => "log",
                    SlowFactor::LogLog => "loglog",
                    SlowFactor::SinLogLog => "sinloglog",
                };
                writeln!(f, "slowlyvarying rho={rho:?} psi={p}")
            }
            Self::Atomic(atoms) => {
                for a in atoms {
                    writeln!(f, "atom t={:?} mass={:?}", a.t, a.mass)?;
                }
                Ok(())
            }
        }
    }
}

/// Parses the line format `variant key=value ...`; `#` starts a comment.
impl FromStr for MassModel {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut density: Option<MassModel> = None;
        let mut atoms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse { line: line_no, message };
            let mut words = line.split_whitespace();
            let variant = words.next().unwrap_or_default().to_ascii_lowercase();
            let mut keys = std::collections::BTreeMap::new();
            for w in words {
                let (k, v) = w.split_once('=').ok_or_else(|| perr(format!("expected key=value, got `{w}`")))?;
                if keys.insert(k.to_ascii_lowercase(), v.to_string()).is_some() {
                    return Err(perr(format!("duplicate key `{k}`")));
                }
            }
            let mut take = |k: &str| keys.remove(k).ok_or_else(|| perr(format!("missing key `{k}`")));
            let num = |s: String| s.parse::<f64>().map_err(|e| perr(format!("bad number `{s}`: {e}")));
            let model = match variant.as_str() {
                "atom" => {
                    let t = num(take("t")?)?;
                    let mass = num(take("mass")?)?;
                    atoms.push(Atom { t, mass });
                    None
                }
                "powerlaw" => Some(MassModel::power_law(num(take("delta")?)?, num(take("rho")?)?)),
                "perturbed" => {
                    let (delta, rho) = (num(take("delta")?)?, num(take("rho")?)?);
                    let eps = match take("eps")?.as_str() {
                        "invlog" => Epsilon::InvLog,
                        "invloglog" => Epsilon::InvLogLog,
                        other => return Err(perr(format!("unknown eps `{other}`"))),
                    };
                    Some(MassModel::perturbed(delta, rho, eps))
                }
                "slowlyvarying" => {
                    let rho = num(take("rho")?)?;
                    let psi = match take("psi")?.as_str() {
                        "one" => SlowFactor::One,
                        "log" => SlowFactor::Log,
                        "loglog" => SlowFactor::LogLog,
                        "sinloglog" => SlowFactor::SinLogLog,
                        other => return Err(perr(format!("unknown psi `{other}`"))),
                    };
                    Some(MassModel::slowly_varying(rho, psi))
                }
                other => return Err(perr(format!("unknown variant `{other}`"))),
            };
            if let Some(k) = keys.keys().next() {
                return Err(perr(format!("unexpected key `{k}`")));
            }
            if let Some(m) = model {
                if density.is_some() {
                    return Err(perr("more than one density declaration".into()));
                }
                density = Some(m.map_err(|e| perr(e.to_string()))?);
            }
        }
        match (density, atoms.is_empty()) {
            (Some(_), false) => Err(Error::Parse { line: 0, message: "cannot mix atoms with a density".into() }),
            (Some(m), true) => Ok(m),
            (None, false) => MassModel::atomic(atoms).map_err(|e| Error::Parse { line: 0, message: e.to_string() }),
            (None, true) => Err(Error::Parse { line: 0, message: "empty model".into() }),
        }
    }
}

/// n(t) = t^{2-n} μ(B̄_t); zero for t <= 1.
pub fn counting_n(model: &MassModel, n: u32, t: f64) -> f64 {
    if t <= 1.0 {
        return 0.0;
    }
    match model {
        MassModel::Atomic(atoms) => {
            let mass: f64 = atoms.iter().take_while(|a| a.t <= t).map(|a| a.mass).sum();
            t.powf(2.0 - n as f64) * mass
        }
        _ => t.powf(model.order().expect("density model")) * model.profile(t).0,
    }
}

/// N(r) = (n-2) ∫₁^r n(t)/t dt.
#[allow(non_snake_case)]
pub fn average_N(model: &MassModel, n: u32, r: f64, quad: &QuadratureSpec) -> QuadEstimate<f64> {
    let exact = |value: f64| QuadEstimate { value, abs_error: 0.0, converged: true };
    if r <= 1.0 {
        return exact(0.0);
    }
    let nf = n as f64;
    match model {
        MassModel::PowerLaw { delta, rho } => exact((nf - 2.0) * delta * (r.powf(*rho) - 1.0) / rho),
        MassModel::Atomic(atoms) => {
            let r_pow = r.powf(2.0 - nf);
            exact(atoms.iter().take_while(|a| a.t < r).map(|a| a.mass * (a.t.powf(2.0 - nf) - r_pow)).sum())
        }
        _ => {
            let rho = model.order().expect("density model");
            integrate_finite(|x: f64| (rho * x).exp() * model.profile(x.exp()).0, 0.0, r.ln(), quad).scale(nf - 2.0)
        }
    }
}

fn check_genus(model: &MassModel, params: &ProblemParams) -> Result<()> {
    if let Some(rho) = model.order() {
        if rho.floor() as u32 != params.q || rho != params.rho {
            return Err(Error::InvalidParams(format!("model order {rho} does not match ρ = {}", params.rho)));
        }
    }
    Ok(())
}

/// sign(h) exp(ln|h| + p ln s), which stays finite when s^p alone would not.
fn times_power(h: f64, s: f64, p: f64) -> f64 {
    if h == 0.0 {
        return 0.0;
    }
    h.signum() * (h.abs().ln() + p * s.ln()).exp()
}

/// u(r, θ₁) = ∫ t^{2-n} h_n(r/t, θ₁, q) dμ(t).
///
/// Density models are integrated in s = r/t as
/// g(1) h_n(r) + r^ρ ∫₀^r s^{-ρ-1} h_n(s) [(ρ+n-2) g + t g'](r/s) ds,
/// split at s = 1; atomic models are summed exactly.
pub fn u_canonical(
    model: &MassModel,
    params: &ProblemParams,
    r: f64,
    theta: f64,
    quad: &QuadratureSpec,
) -> Result<QuadEstimate<f64>> {
    check_genus(model, params)?;
    if let MassModel::Atomic(atoms) = model {
        let mut sum = 0.0;
        for a in atoms {
            sum += a.mass * weierstrass_K(params, r, a.t, theta)?;
        }
        return Ok(QuadEstimate { value: sum, abs_error: 0.0, converged: true });
    }
    h_n(params, 0.0, theta)?;
    if !(r >= 0.0) {
        return Err(Error::Domain { function: "u_canonical", detail: format!("r must be >= 0, got {r}") });
    }
    if r == 0.0 {
        return Ok(QuadEstimate::zero());
    }
    let rho = params.rho;
    let weight = rho + params.n as f64 - 2.0;
    let f = |s: f64| -> f64 {
        if s < 1e-200 {
            return 0.0;
        }
        let (g, tg) = model.profile(r / s);
        let h = h_n(params, s, theta).unwrap_or(f64::NAN);
        times_power(h, s, -rho - 1.0) * (weight * g + tg)
    };
    let a = r.min(1.0);
    let mut total = integrate_unit(|x, _| f(a * x), quad).scale(a);
    if r > 1.0 {
        total = total.combine(integrate_finite(
            |x: f64| {
                let s = x.exp();
                f(s) * s
            },
            0.0,
            r.ln(),
            quad,
        ));
    }
    let jump = model.profile(1.0).0 * h_n(params, r, theta)?;
    let scaled = total.scale(r.powf(rho));
    Ok(QuadEstimate { value: scaled.value + jump, ..scaled })
}

/// u(r, θ₁) = ∫₁^∞ P_n(r, t, θ₁) N(t) dt / (r² + 2rt cos θ₁ + t²)^{n/2+1},
/// for 0 < ρ < 1 and θ₁ ∈ [0, π/2].
pub fn u_poisson(model: &MassModel, n: u32, r: f64, theta: f64, quad: &QuadratureSpec) -> Result<QuadEstimate<f64>> {
    if !(0.0..=PI / 2.0).contains(&theta) {
        return Err(Error::Domain { function: "u_poisson", detail: format!("θ₁ must lie in [0, π/2], got {theta}") });
    }
    if model.order().is_some_and(|rho| rho >= 1.0) {
        return Err(Error::InvalidParams("the Poisson-type form needs order ρ < 1".into()));
    }
    if !(r >= 0.0) {
        return Err(Error::Domain { function: "u_poisson", detail: format!("r must be >= 0, got {r}") });
    }
    if r == 0.0 {
        return Ok(QuadEstimate::zero());
    }
    let nf = n as f64;
    let c = (PI / 2.0 - theta).sin();
    let mut nested_ok = true;
    let kernel = |t: f64, big_n: f64| -> f64 {
        let d = r * r + 2.0 * r * t * c + t * t;
        let bracket = ((nf - 1.0) * r * r * c + r * t * (nf + (nf - 2.0) * c * c) + (nf - 1.0) * t * t * c) / d;
        r * (t * t / d).powf((nf - 2.0) / 2.0) * bracket / d * big_n
    };
    debug_assert!((kernel(2.0, 1.0) - poisson_Pn(n, r, 2.0, theta) / (r * r + 4.0 * r * c + 4.0).powf(nf / 2.0 + 1.0)).abs() < 1e-9);
    let big_n = |t: f64| average_N(model, n, t, quad);
    let a = r.max(1.0);
    let near = if a > 1.0 {
        let est = integrate_finite(
            |x: f64| {
                let t = x.exp();
                let nn = big_n(t);
                kernel(t, nn.value) * t
            },
            0.0,
            a.ln(),
            quad,
        );
        nested_ok &= (1..=8).all(|k| big_n(a.powf(k as f64 / 8.0)).converged);
        est
    } else {
        QuadEstimate::zero()
    };
    let far = integrate_unit(
        |v, _| {
            let t = a / v;
            if t > quad.truncation_radius || !t.is_finite() {
                return 0.0;
            }
            kernel(t, big_n(t).value) * a / (v * v)
        },
        quad,
    );
    let mut total = near.combine(far);
    total.converged &= nested_ok;
    Ok(total)
}

/// r_k = start (end/start)^{k/(points-1)}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl GeometricGrid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        if !(start > 0.0 && end > start && end.is_finite()) || points < 5 {
            return Err(Error::InvalidParams(format!(
                "grid needs 0 < start < end and at least 5 points, got {start}..{end} with {points}"
            )));
        }
        Ok(Self { start, end, points })
    }

    pub fn radii(&self) -> Vec<f64> {
        let ratio = (self.end / self.start).ln();
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.end
                } else {
                    self.start * (ratio * k as f64 / (self.points - 1) as f64).exp()
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extrapolation {
    /// Δ² on the last three values, exact for geometric convergence.
    Aitken,
    /// v ≈ L + a/ln r through the last two values.
    InverseLog,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub grid: GeometricGrid,
    /// Relative tolerance for the pairwise check of the last three values.
    pub tol: f64,
    pub extrapolation: Extrapolation,
}

impl SweepSpec {
    pub fn new(grid: GeometricGrid) -> Self {
        Self { grid, tol: 1e-2, extrapolation: Extrapolation::Aitken }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSample {
    pub r: f64,
    pub theta: f64,
    pub u: f64,
    pub scaled: f64,
    pub per_n: Option<f64>,
    pub per_big_n: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepColumn {
    pub extrapolated: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub samples: Vec<SweepSample>,
    /// r^{-ρ} u
    pub scaled: SweepColumn,
    pub per_n: Option<SweepColumn>,
    pub per_big_n: Option<SweepColumn>,
    pub diagnostics: Vec<String>,
}

impl SweepResult {
    pub fn extrapolated_limit(&self) -> f64 {
        self.scaled.extrapolated
    }

    pub fn convergence_flag(&self) -> bool {
        self.scaled.converged
    }
}

pub fn aitken(values: &[f64]) -> Option<f64> {
    let [a, b, c] = values.get(values.len().checked_sub(3)?..)? else {
        return None;
    };
    let denom = (c - b) - (b - a);
    if denom == 0.0 || !denom.is_finite() {
        return Some(*c);
    }
    Some(c - (c - b) * (c - b) / denom)
}

pub fn inverse_log_fit(radii: &[f64], values: &[f64]) -> Option<f64> {
    if radii.len() != values.len() || values.len() < 2 {
        return None;
    }
    let k = values.len();
    let (l1, l2) = (radii[k - 2].ln(), radii[k - 1].ln());
    Some((values[k - 1] * l2 - values[k - 2] * l1) / (l2 - l1))
}

fn column(radii: &[f64], values: &[f64], spec: &SweepSpec) -> SweepColumn {
    let extrapolated = match spec.extrapolation {
        Extrapolation::Aitken => aitken(values),
        Extrapolation::InverseLog => inverse_log_fit(radii, values),
    }
    .unwrap_or(f64::NAN);
    let tail = &values[values.len().saturating_sub(3)..];
    let converged = tail.len() == 3
        && tail.iter().all(|v| v.is_finite())
        && (0..3).all(|i| {
            let (a, b) = (tail[i], tail[(i + 1) % 3]);
            (a - b).abs() <= spec.tol * a.abs().max(b.abs())
        });
    SweepColumn { extrapolated, converged }
}

fn sweep(model: &MassModel, params: &ProblemParams, theta: f64, spec: &SweepSpec, quad: &QuadratureSpec) -> Result<SweepResult> {
    let radii = spec.grid.radii();
    let rho = params.rho;
    let n = params.n;
    let evaluated: Vec<(SweepSample, bool)> = radii
        .par_iter()
        .map(|&r| {
            let u = u_canonical(model, params, r, theta, quad)?;
            let nr = counting_n(model, n, r);
            let big = average_N(model, n, r, quad);
            let sample = SweepSample {
                r,
                theta,
                u: u.value,
                scaled: u.value * r.powf(-rho),
                per_n: (nr > 0.0).then(|| u.value / nr),
                per_big_n: (big.value > 0.0).then(|| u.value / big.value),
            };
            Ok((sample, u.converged && big.converged))
        })
        .collect::<Result<_>>()?;
    let mut diagnostics = Vec::new();
    for (s, ok) in &evaluated {
        if !ok {
            diagnostics.push(format!("quadrature tolerance not met at r = {:e}", s.r));
        }
    }
    let samples: Vec<SweepSample> = evaluated.into_iter().map(|(s, _)| s).collect();
    let scaled_values: Vec<f64> = samples.iter().map(|s| s.scaled).collect();
    let scaled = column(&radii, &scaled_values, spec);
    let ratio_column = |get: fn(&SweepSample) -> Option<f64>| -> Option<SweepColumn> {
        let vals: Option<Vec<f64>> = samples.iter().map(get).collect();
        vals.map(|v| column(&radii, &v, spec))
    };
    let per_n = ratio_column(|s| s.per_n);
    let per_big_n = ratio_column(|s| s.per_big_n);
    if !scaled.converged {
        diagnostics.push(format!("last three scaled values differ by more than {:e}", spec.tol));
    }
    Ok(SweepResult { samples, scaled, per_n, per_big_n, diagnostics })
}

/// Sweep of r^{-ρ} u(r, θ₁) over the grid with extrapolation to r → ∞.
pub fn scaled_limit(
    model: &MassModel,
    params: &ProblemParams,
    theta: f64,
    spec: &SweepSpec,
    quad: &QuadratureSpec,
) -> Result<SweepResult> {
    sweep(model, params, theta, spec, quad)
}

/// Sweep of u/n and u/N; n(r) must be positive on the whole grid.
pub fn ratio_probe(
    model: &MassModel,
    params: &ProblemParams,
    theta: f64,
    spec: &SweepSpec,
    quad: &QuadratureSpec,
) -> Result<SweepResult> {
    if let Some(&r) = spec.grid.radii().iter().find(|&&r| counting_n(model, params.n, r) <= 0.0) {
        return Err(Error::Domain { function: "ratio_probe", detail: format!("n(r) vanishes at r = {r}") });
    }
    sweep(model, params, theta, spec, quad)
}

/// Replaces a density model by `count` atoms on geometric cells of
/// [1, t_max]; each atom carries the mass of its cell at the cell's
/// geometric midpoint, and the boundary mass at t = 1⁺ joins the first cell.
pub fn discretize(model: &MassModel, n: u32, count: usize, t_max: f64) -> Result<MassModel> {
    let rho = model
        .order()
        .ok_or_else(|| Error::InvalidParams("only density models can be discretized".into()))?;
    if count == 0 || !(t_max > 1.0) {
        return Err(Error::InvalidParams(format!("need count >= 1 and t_max > 1, got {count}, {t_max}")));
    }
    let mass_below = |t: f64| t.powf(rho + n as f64 - 2.0) * model.profile(t).0;
    let step = t_max.ln() / count as f64;
    let mut atoms = Vec::with_capacity(count);
    let mut lower_mass = 0.0;
    for k in 0..count {
        let (a, b) = ((k as f64 * step).exp(), ((k + 1) as f64 * step).exp());
        let upper_mass = mass_below(b);
        let mass = upper_mass - lower_mass;
        lower_mass = upper_mass;
        if mass > 0.0 {
            atoms.push(Atom { t: (a * b).sqrt(), mass });
        }
    }
    MassModel::atomic(atoms)
}

fn legendre_p(rho: f64, theta: f64) -> Result<f64> {
    Ok(legendre_p_weighted_angle(Complex64::new(rho, 0.0), Complex64::new(0.0, 0.0), theta)?.re)
}

fn check_counterexample(rho: f64, r: f64, theta: f64) -> Result<()> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParams(format!("ρ must lie in (0, 1), got {rho}")));
    }
    if !(r >= std::f64::consts::E) || !r.is_finite() {
        return Err(Error::Domain { function: "counterexample_u0", detail: format!("r must be >= e, got {r}") });
    }
    if !(0.0..PI).contains(&theta) {
        return Err(Error::Domain { function: "counterexample_u0", detail: format!("θ₁ must lie in [0, π), got {theta}") });
    }
    Ok(())
}

/// u₀ = r^ρ (1 + sin(ln ln r) P_ρ(cos θ₁)) in three dimensions, r >= e.
pub fn counterexample_u0(rho: f64, r: f64, theta: f64) -> Result<f64> {
    check_counterexample(rho, r, theta)?;
    Ok(r.powf(rho) * (1.0 + r.ln().ln().sin() * legendre_p(rho, theta)?))
}

/// Laplacian of u₀: second differences, the two leading terms
/// r^{ρ-2}[ρ(ρ+1) + (2ρ+1) cos(ln ln r) P_ρ(cos θ₁)/ln r] and their gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplacianU0 {
    pub finite_difference: f64,
    pub leading: f64,
    pub remainder: f64,
}

pub const LAPLACIAN_STEP_R: f64 = 1e-4;
pub const LAPLACIAN_STEP_THETA: f64 = 1e-4;

pub fn laplacian_u0(rho: f64, r: f64, theta: f64) -> Result<LaplacianU0> {
    check_counterexample(rho, r, theta)?;
    // P_ρ(cos θ₁) has a log singularity at π, so the angular step shrinks
    // with the distance to it
    let hr = r * LAPLACIAN_STEP_R;
    let ht = LAPLACIAN_STEP_THETA.min((PI - theta) / 200.0);
    if r - hr < std::f64::consts::E {
        return Err(Error::StepSize(format!("radial stencil at r = {r} leaves r >= e")));
    }
    let u = |r: f64, t: f64| counterexample_u0(rho, r, t.abs());
    let u0 = u(r, theta)?;
    let (up, um) = (u(r + hr, theta)?, u(r - hr, theta)?);
    let u_rr = (up - 2.0 * u0 + um) / (hr * hr);
    let u_r = (up - um) / (2.0 * hr);
    let angular_at = |h: f64| -> Result<f64> {
        let (tp, tm) = (u(r, theta + h)?, u(r, theta - h)?);
        let u_tt = (tp - 2.0 * u0 + tm) / (h * h);
        Ok(if theta == 0.0 { 2.0 * u_tt } else { u_tt + (tp - tm) / (2.0 * h) / theta.tan() })
    };
    let (coarse, fine) = (angular_at(ht)?, angular_at(0.5 * ht)?);
    let angular = (4.0 * fine - coarse) / 3.0;
    let fd = u_rr + 2.0 * u_r / r + angular / (r * r);
    // rounding in a second difference is about ε|u|/h²
    let noise = 8.0 * f64::EPSILON * u0.abs() * (1.0 / (hr * hr) + 8.0 / (r * r * ht * ht));
    if !fd.is_finite() || fd.abs() <= noise {
        return Err(Error::StepSize(format!("second differences lost all digits at r = {r}, θ₁ = {theta}")));
    }
    let lr = r.ln();
    let leading = r.powf(rho - 2.0) * (rho * (rho + 1.0) + (2.0 * rho + 1.0) * lr.ln().cos() / lr * legendre_p(rho, theta)?);
    Ok(LaplacianU0 { finite_difference: fd, leading, remainder: fd - leading })
}
