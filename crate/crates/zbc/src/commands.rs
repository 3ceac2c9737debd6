//! Subcommand implementations. Each builds its artifact text and says
//! whether its checks passed; writing and exit codes are left to the
//! caller.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use zbc_core::capacity::{
    boundary_residual, optimal_for_lambda, rates_independent, trace_boundary,
};
use zbc_core::channel::verify_degradation;
use zbc_core::codec::{
    parse_label_table, LabelTable, NextStateRule, Rx1Mode, SimParams, SimReport, TrellisSpec,
    TurboConfig,
};
use zbc_core::math::phi;
use zbc_core::oracle::{
    directional_deltas, frontier_excess, g_value, grid_hull, interior_report, random_channel,
    random_interior_strategy, verify_theorem3 as theorem3_report, GridSpec,
};
use zbc_core::RngStream;

use crate::config::{ChannelConfig, CommandKind, RunConfig, Units};
use crate::error::{CliError, CliResult};
use crate::output::{csv_report, json_report};
use crate::parallel;

/// The text of an artifact and the verdict of any checks it ran.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
    /// First failing check, when `passed` is false.
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            passed: true,
            failure: None,
        }
    }

    fn checked(text: String, failure: Option<String>) -> Self {
        Outcome {
            text,
            passed: failure.is_none(),
            failure,
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Common {
    pub nats: bool,
    pub out: Option<PathBuf>,
}

impl Common {
    fn units(&self) -> Units {
        Units::from_flag(self.nats)
    }

    fn config(&self, command: CommandKind, channel: Option<ChannelConfig>) -> RunConfig {
        let mut c = RunConfig::new(command, channel);
        c.units = self.units();
        c.output = self.out.as_ref().map(|p| p.display().to_string());
        c
    }
}

fn body(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("report bodies are objects"),
    }
}

fn first_failure(checks: &[(bool, String)]) -> Option<String> {
    checks
        .iter()
        .find(|(ok, _)| !ok)
        .map(|(_, msg)| msg.clone())
}

pub fn boundary(c: &Common, channel: ChannelConfig, points: usize) -> CliResult<Outcome> {
    let ch = channel.channel()?;
    let pts = trace_boundary(&ch, points)?;
    let units = c.units();
    let cfg = c
        .config(CommandKind::Boundary, Some(channel))
        .option("points", points);
    let header = [
        "mu1".to_string(),
        "mu2".into(),
        "lambda".into(),
        units.rate_key(1),
        units.rate_key(2),
    ];
    let rows: Vec<Vec<f64>> = pts
        .iter()
        .map(|p| {
            let (r1, r2) = p.rates.bits();
            vec![
                p.mu1,
                p.mu2,
                p.lambda,
                units.from_bits(r1),
                units.from_bits(r2),
            ]
        })
        .collect();
    Ok(Outcome::ok(csv_report(&cfg, &header, &rows)?))
}

pub fn optimize(c: &Common, channel: ChannelConfig, lambda: f64) -> CliResult<Outcome> {
    let ch = channel.channel()?;
    let opt = optimal_for_lambda(lambda, &ch)?;
    let units = c.units();
    let cfg = c
        .config(CommandKind::Optimize, Some(channel))
        .option("lambda", lambda);
    let p = opt.point;
    let (r1, r2) = p.rates.bits();
    let mut m = Map::new();
    m.insert("case".into(), opt.case.number().into());
    m.insert("mu1".into(), p.mu1.into());
    m.insert("mu2".into(), p.mu2.into());
    m.insert("lambda".into(), p.lambda.into());
    m.insert(units.rate_key(1), units.from_bits(r1).into());
    m.insert(units.rate_key(2), units.from_bits(r2).into());
    m.insert(
        "residual".into(),
        boundary_residual(p.mu1, p.mu2, &ch).into(),
    );
    Ok(Outcome::ok(json_report(&cfg, m)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptions {
    pub step: f64,
    pub points: usize,
    pub tolerance: f64,
    /// Grid steps from every face for a strategy to count as interior.
    pub min_steps: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            step: 0.01,
            points: 200,
            tolerance: 1e-3,
            min_steps: 2.0,
        }
    }
}

/// Brute-force `(mu1, mu2, gamma)` grid against the traced boundary.
pub fn verify_grid(c: &Common, channel: ChannelConfig, o: &GridOptions) -> CliResult<Outcome> {
    let ch = channel.channel()?;
    let spec = GridSpec::new(o.step, true)?;
    let boundary = trace_boundary(&ch, o.points)?;
    let hull = grid_hull(&ch, &spec);
    let (excess, worst) = frontier_excess(&hull, &boundary);
    let interior = interior_report(&hull, o.step, o.min_steps, &boundary);
    let cfg = c
        .config(CommandKind::VerifyGrid, Some(channel))
        .option("step", o.step)
        .option("points", o.points)
        .option("tolerance", o.tolerance)
        .option("min_steps", o.min_steps);
    let failure = first_failure(&[
        (
            excess <= o.tolerance,
            format!("frontier point {excess:.3e} bits beyond the traced boundary"),
        ),
        (
            interior.interior_hull_vertices == 0,
            format!(
                "{} interior strategies are vertices of the grid hull",
                interior.interior_hull_vertices
            ),
        ),
        (
            interior.max_excess_bits < 0.0,
            format!(
                "interior strategy {:.3e} bits above the hull of face strategies",
                interior.max_excess_bits
            ),
        ),
    ]);
    let worst = worst.map(|p| json!({"mu1": p.mu1, "mu2": p.mu2, "gamma": p.gamma, "R1_bits": p.r1_bits, "R2_bits": p.r2_bits}));
    let m = body(json!({
        "suite": "grid",
        "passed": failure.is_none(),
        "failure": failure,
        "grid_points": hull.points.len(),
        "frontier_points": hull.frontier.len(),
        "max_frontier_excess_bits": excess,
        "worst_frontier_point": worst,
        "interior_points": interior.interior_points,
        "interior_hull_vertices": interior.interior_hull_vertices,
        "interior_max_excess_bits": interior.max_excess_bits,
        "interior_min_boundary_gap_bits": interior.min_boundary_gap_bits,
    }));
    Ok(Outcome::checked(json_report(&cfg, m)?, failure))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeOptions {
    /// Strategies per channel.
    pub samples: usize,
    pub channels: usize,
    pub seed: u64,
    /// Distance of every strategy from the faces `mu2 in {0, 1}`,
    /// `gamma in {0, mu1}`.
    pub margin: f64,
    pub fd_step: f64,
    pub tolerance: f64,
}

impl Default for DerivativeOptions {
    fn default() -> Self {
        DerivativeOptions {
            samples: 1000,
            channels: 20,
            seed: 1,
            margin: 0.05,
            fd_step: 1e-4,
            tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct DerivativeTally {
    checked: usize,
    sign_failures: usize,
    slope_failures: usize,
    fd_failures: usize,
    max_residual: f64,
    worst: Option<(f64, f64, f64, f64, f64)>,
}

/// Closed-form directional derivatives on random interior strategies of
/// random channels. Channel `i` and its strategies come from sub-stream
/// `i`.
pub fn verify_derivatives(c: &Common, o: &DerivativeOptions) -> CliResult<Outcome> {
    if o.samples == 0 || o.channels == 0 {
        return Err(CliError::Usage(
            "--samples and --channels must be positive".into(),
        ));
    }
    if !(o.margin > 0.0 && o.margin < 0.25) {
        return Err(CliError::Usage(format!(
            "--margin {} outside (0, 0.25)",
            o.margin
        )));
    }
    let root = RngStream::new(o.seed, 0);
    let parts: Vec<zbc_core::Result<DerivativeTally>> = (0..o.channels as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = root.substream(i);
            let ch = random_channel(&mut rng);
            let mut t = DerivativeTally::default();
            for _ in 0..o.samples {
                let s = random_interior_strategy(&mut rng, o.margin);
                let r = directional_deltas(&s, &ch, o.fd_step)?;
                t.checked += 1;
                t.sign_failures += !r.signs_ok() as usize;
                t.slope_failures += !r.slope_inequality_holds() as usize;
                let res = r.max_residual();
                t.fd_failures += !(res <= o.tolerance) as usize;
                if !(res <= t.max_residual) {
                    t.max_residual = res;
                    t.worst = Some((
                        ch.alpha1(),
                        ch.alpha2(),
                        s.mu1.get(),
                        s.mu2.get(),
                        s.gamma.get(),
                    ));
                }
            }
            Ok(t)
        })
        .collect();
    let mut total = DerivativeTally::default();
    for p in parts {
        let p = p?;
        total.checked += p.checked;
        total.sign_failures += p.sign_failures;
        total.slope_failures += p.slope_failures;
        total.fd_failures += p.fd_failures;
        if !(p.max_residual <= total.max_residual) {
            total.max_residual = p.max_residual;
            total.worst = p.worst;
        }
    }
    let failure = first_failure(&[
        (
            total.sign_failures == 0,
            format!(
                "{} strategies break the sign pattern (-,+,+,-)",
                total.sign_failures
            ),
        ),
        (
            total.slope_failures == 0,
            format!(
                "{} strategies break the slope inequality",
                total.slope_failures
            ),
        ),
        (
            total.fd_failures == 0,
            format!(
                "{} finite differences off by more than {:e} (worst {:.3e})",
                total.fd_failures, o.tolerance, total.max_residual
            ),
        ),
    ]);
    let worst = total
        .worst
        .map(|(a1, a2, mu1, mu2, gamma)| json!({"alpha1": a1, "alpha2": a2, "mu1": mu1, "mu2": mu2, "gamma": gamma}));
    let cfg = c
        .config(CommandKind::VerifyDerivatives, None)
        .option("samples", o.samples)
        .option("channels", o.channels)
        .option("margin", o.margin)
        .option("fd_step", o.fd_step)
        .option("tolerance", o.tolerance)
        .seed(o.seed);
    let m = body(json!({
        "suite": "derivatives",
        "passed": failure.is_none(),
        "failure": failure,
        "strategies_checked": total.checked,
        "sign_failures": total.sign_failures,
        "slope_failures": total.slope_failures,
        "fd_failures": total.fd_failures,
        "max_fd_relative_residual": total.max_residual,
        "worst_strategy": worst,
        "seed": o.seed,
    }));
    Ok(Outcome::checked(json_report(&cfg, m)?, failure))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem3Options {
    pub lambdas: usize,
    pub step: f64,
    /// Largest lambda as a multiple of `phi(1)`, where user 2 takes
    /// everything.
    pub span: f64,
    pub tolerance: f64,
}

impl Default for Theorem3Options {
    fn default() -> Self {
        Theorem3Options {
            lambdas: 20,
            step: 1e-3,
            span: 1.3,
            tolerance: 2e-3,
        }
    }
}

/// Grid argmax of `I1 + lambda I2` against the closed-form optimum for
/// `lambdas` values spread evenly over `[0, span * phi(1)]`.
pub fn verify_theorem3(
    c: &Common,
    channel: ChannelConfig,
    o: &Theorem3Options,
) -> CliResult<Outcome> {
    let ch = channel.channel()?;
    if o.lambdas < 2 {
        return Err(CliError::Usage("--lambdas must be at least 2".into()));
    }
    let top = o.span * phi(1.0, &ch)?;
    let reports: Vec<_> = (0..o.lambdas)
        .into_par_iter()
        .map(|k| theorem3_report(top * k as f64 / (o.lambdas - 1) as f64, &ch, o.step))
        .collect::<zbc_core::Result<_>>()?;
    let mut seen = [false; 3];
    let mut max_distance: f64 = 0.0;
    let mut far = None;
    for r in &reports {
        seen[r.case as usize - 1] = true;
        max_distance = max_distance.max(r.distance);
        if far.is_none() && r.distance > o.tolerance {
            far = Some(r.lambda);
        }
    }
    let failure = first_failure(&[
        (
            far.is_none(),
            format!(
                "lambda {:.6}: grid and closed form differ by more than {:e}",
                far.unwrap_or(0.0),
                o.tolerance
            ),
        ),
        (
            seen.iter().all(|&s| s),
            format!("cases covered {seen:?}; widen --span"),
        ),
    ]);
    let rows: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "lambda": r.lambda,
                "case": r.case,
                "grid_mu1": r.grid_mu1,
                "grid_mu2": r.grid_mu2,
                "closed_mu1": r.closed_mu1,
                "closed_mu2": r.closed_mu2,
                "grid_objective": r.grid_objective,
                "closed_objective": r.closed_objective,
                "distance": r.distance,
            })
        })
        .collect();
    let cfg = c
        .config(CommandKind::VerifyTheorem3, Some(channel))
        .option("lambdas", o.lambdas)
        .option("step", o.step)
        .option("span", o.span)
        .option("tolerance", o.tolerance);
    let m = body(json!({
        "suite": "theorem3",
        "passed": failure.is_none(),
        "failure": failure,
        "max_distance": max_distance,
        "cases_covered": seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i + 1).collect::<Vec<_>>(),
        "lambdas": rows,
    }));
    Ok(Outcome::checked(json_report(&cfg, m)?, failure))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegradationOptions {
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for DegradationOptions {
    fn default() -> Self {
        DegradationOptions {
            samples: 10_000_000,
            seed: 1,
            tolerance: 0.002,
        }
    }
}

/// Two-stage `Z(alpha1)` then `Z(alpha_delta)` against `Z(alpha2)`.
pub fn verify_degradation_suite(
    c: &Common,
    channel: ChannelConfig,
    o: &DegradationOptions,
) -> CliResult<Outcome> {
    let ch = channel.channel()?;
    if o.samples < 1_000_000 {
        return Err(CliError::Usage(format!(
            "--samples {} is below 1000000",
            o.samples
        )));
    }
    let r = verify_degradation(&ch, o.samples, &mut RngStream::new(o.seed, 0));
    let failure = first_failure(&[
        (
            r.deviation.abs() <= o.tolerance,
            format!(
                "two-stage crossover {:.6} is {:.3e} from alpha2",
                r.crossover2, r.deviation
            ),
        ),
        (
            r.ones_violations == 0,
            format!("{} transmitted ones were received as 0", r.ones_violations),
        ),
    ]);
    let cfg = c
        .config(CommandKind::VerifyDegradation, Some(channel))
        .option("samples", o.samples)
        .option("tolerance", o.tolerance)
        .seed(o.seed);
    let m = body(json!({
        "suite": "degradation",
        "passed": failure.is_none(),
        "failure": failure,
        "samples": r.n,
        "alpha_delta": ch.alpha_delta(),
        "crossover1": r.crossover1,
        "crossover2": r.crossover2,
        "deviation": r.deviation,
        "std_error": r.std_error,
        "extra_flip_rate": r.extra_flip_rate,
        "ones_violations": r.ones_violations,
        "seed": o.seed,
    }));
    Ok(Outcome::checked(json_report(&cfg, m)?, failure))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GFunctionOptions {
    pub step: f64,
    pub diagonal_tolerance: f64,
}

impl Default for GFunctionOptions {
    fn default() -> Self {
        GFunctionOptions {
            step: 0.05,
            diagonal_tolerance: 1e-12,
        }
    }
}

/// `g(a, b) > 0` for every grid pair `0 < b < a < 1` and `g(b, b) = 0`.
pub fn verify_gfunction(c: &Common, o: &GFunctionOptions) -> CliResult<Outcome> {
    let n = (1.0 / o.step).round() as usize;
    if !(o.step > 0.0 && o.step < 0.5) || ((n as f64) * o.step - 1.0).abs() > 1e-9 {
        return Err(CliError::Usage(format!(
            "--step {} must divide 1 and be below 0.5",
            o.step
        )));
    }
    let at = |i: usize| i as f64 / n as f64;
    let mut pairs = 0usize;
    let mut min_g = f64::INFINITY;
    let mut argmin = (0.0, 0.0);
    let mut max_diag: f64 = 0.0;
    for i in 1..n {
        let a = at(i);
        max_diag = max_diag.max(g_value(a, a)?.abs());
        for j in 1..i {
            let b = at(j);
            let g = g_value(a, b)?;
            pairs += 1;
            if g < min_g {
                min_g = g;
                argmin = (a, b);
            }
        }
    }
    let failure = first_failure(&[
        (
            min_g > 0.0,
            format!("g({}, {}) = {min_g:e} is not positive", argmin.0, argmin.1),
        ),
        (
            max_diag <= o.diagonal_tolerance,
            format!("|g(b, b)| reaches {max_diag:e}"),
        ),
    ]);
    let cfg = c
        .config(CommandKind::VerifyGfunction, None)
        .option("step", o.step)
        .option("diagonal_tolerance", o.diagonal_tolerance);
    let m = body(json!({
        "suite": "gfunction",
        "passed": failure.is_none(),
        "failure": failure,
        "grid_pairs": pairs,
        "min_g": min_g,
        "argmin": {"a": argmin.0, "b": argmin.1},
        "max_abs_diagonal": max_diag,
    }));
    Ok(Outcome::checked(json_report(&cfg, m)?, failure))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulateOptions {
    pub mu1: f64,
    pub mu2: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Empirical rates of the OR source against the closed form.
pub fn simulate(c: &Common, channel: ChannelConfig, o: &SimulateOptions) -> CliResult<Outcome> {
    let ch = channel.channel()?;
    if o.samples < 10_000 {
        return Err(CliError::Usage(format!(
            "--samples {} is below 10000",
            o.samples
        )));
    }
    for (name, v) in [("mu1", o.mu1), ("mu2", o.mu2)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::Usage(format!("--{name} {v} outside [0, 1]")));
        }
    }
    let est = parallel::or_source_counts(o.mu1, o.mu2, &ch, o.samples, o.seed).estimate();
    let (c1, c2) = rates_independent(o.mu1, o.mu2, &ch).bits();
    let units = c.units();
    let z = |emp: f64, closed: f64, se: f64| if se > 0.0 { (emp - closed) / se } else { 0.0 };
    let pair = |x: f64, y: f64| {
        let mut m = Map::new();
        m.insert(units.rate_key(1), units.from_bits(x).into());
        m.insert(units.rate_key(2), units.from_bits(y).into());
        Value::Object(m)
    };
    let cfg = c
        .config(CommandKind::Simulate, Some(channel))
        .option("mu1", o.mu1)
        .option("mu2", o.mu2)
        .option("samples", o.samples)
        .seed(o.seed);
    let m = body(json!({
        "samples": est.n,
        "empirical": pair(est.r1_bits, est.r2_bits),
        "closed_form": pair(c1, c2),
        "std_error": pair(est.se1_bits, est.se2_bits),
        "z_score": {"R1": z(est.r1_bits, c1, est.se1_bits), "R2": z(est.r2_bits, c2, est.se2_bits)},
        "seed": o.seed,
    }));
    Ok(Outcome::ok(json_report(&cfg, m)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrellisChoice {
    #[default]
    ShiftRegister,
    Recursive,
}

impl TrellisChoice {
    pub fn rule(self) -> NextStateRule {
        match self {
            TrellisChoice::Recursive => NextStateRule::RECURSIVE,
            TrellisChoice::ShiftRegister => NextStateRule::ShiftRegister,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TrellisChoice::Recursive => "recursive",
            TrellisChoice::ShiftRegister => "shift-register",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CodecOptions {
    pub labels1: Option<PathBuf>,
    pub labels2: Option<PathBuf>,
    pub k: usize,
    pub iters: usize,
    pub frames: u64,
    pub seed: u64,
    /// Interleaver seed of user 1; user 2 uses the next value.
    pub interleaver_seed: u64,
    /// Zero probability of user 1's codeword assumed by the user-2
    /// decoders.
    pub mu1: f64,
    pub hard: bool,
    pub noiseless: bool,
    pub trellis: TrellisChoice,
}

impl Default for CodecOptions {
    fn default() -> Self {
        CodecOptions {
            labels1: None,
            labels2: None,
            k: 2048,
            iters: 10,
            frames: 10,
            seed: 1,
            interleaver_seed: 1,
            mu1: 0.804,
            hard: false,
            noiseless: false,
            trellis: TrellisChoice::ShiftRegister,
        }
    }
}

/// Reads a label table, with the file name in any error.
pub fn load_labels(path: &Path) -> CliResult<LabelTable> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_label_table(&text).map_err(|source| CliError::Labels {
        path: path.to_owned(),
        source,
    })
}

/// Turbo configurations of both users as the codec command builds them.
pub fn codec_configs(o: &CodecOptions) -> CliResult<(TurboConfig, TurboConfig)> {
    let load = |p: &Option<PathBuf>, shipped: fn() -> LabelTable| {
        p.as_deref().map_or_else(|| Ok(shipped()), load_labels)
    };
    let t1 = TrellisSpec::new(load(&o.labels1, LabelTable::user1)?, o.trellis.rule())?;
    let t2 = TrellisSpec::new(load(&o.labels2, LabelTable::user2)?, o.trellis.rule())?;
    let seed2 = o.interleaver_seed.wrapping_add(1);
    Ok((
        TurboConfig::new(t1, o.k, o.interleaver_seed, o.iters)?,
        TurboConfig::new(t2, o.k, seed2, o.iters)?,
    ))
}

/// Runs the BER harness and returns its report with the artifact.
pub fn codec_report(
    c: &Common,
    channel: ChannelConfig,
    o: &CodecOptions,
) -> CliResult<(Outcome, SimReport)> {
    let ch = channel.channel()?;
    if !(o.mu1 > 0.0 && o.mu1 <= 1.0) {
        return Err(CliError::Usage(format!("--mu1 {} outside (0, 1]", o.mu1)));
    }
    let (cfg1, cfg2) = codec_configs(o)?;
    let params = SimParams {
        mu1: o.mu1,
        mode: if o.hard { Rx1Mode::Hard } else { Rx1Mode::Soft },
        noiseless: o.noiseless,
    };
    let r = parallel::ber_experiment(&cfg1, &cfg2, &ch, o.frames, o.seed, &params)?;
    let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
    let cfg = c
        .config(CommandKind::Codec, Some(channel))
        .option("labels1", path(&o.labels1))
        .option("labels2", path(&o.labels2))
        .option("k", o.k)
        .option("iters", o.iters)
        .option("frames", o.frames)
        .option("interleaver_seed", o.interleaver_seed)
        .option("mu1", o.mu1)
        .option("hard", o.hard)
        .option("noiseless", o.noiseless)
        .option("trellis", o.trellis.name())
        .seed(o.seed);
    let m = body(json!({
        "info_bits": r.info_bits,
        "bit_errors_user1": r.bit_errors_user1,
        "bit_errors_user2": r.bit_errors_user2,
        "frame_errors_user1": r.frame_errors_user1,
        "frame_errors_user2": r.frame_errors_user2,
        "measured_ones_density_1": r.measured_ones_density_1,
        "measured_ones_density_2": r.measured_ones_density_2,
        "seed": r.seed,
        "frames": r.frames,
        "ber_user1": r.ber_user1(),
        "ber_user2": r.ber_user2(),
        "rx1_user2_bit_errors": r.rx1_user2_bit_errors,
        "rx1_user2_frame_errors": r.rx1_user2_frame_errors,
        "decoder_failures": r.decoder_failures,
    }));
    Ok((Outcome::ok(json_report(&cfg, m)?), r))
}

pub fn codec(c: &Common, channel: ChannelConfig, o: &CodecOptions) -> CliResult<Outcome> {
    Ok(codec_report(c, channel, o)?.0)
}
