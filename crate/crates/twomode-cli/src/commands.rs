//! The five verification drivers. Each returns the full record set in
//! deterministic input order; `main` handles serialization and exit status.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, SQRT_2};

use anyhow::{bail, Context};
use twomode::classical::{
    closed_form_orientation_bracket, closed_form_quadrature_bracket, mode_profile, orientation,
    overlap, rotating_quadrature, sample_mode, steady_state, ClosedFormBranch, GridSpec, ModeKind,
    OrientationConvention, QuadratureParams, SteadyState, TransverseModeParams,
};
use twomode::fock::{
    annihilation, basis_with_cap, coherent_state, commutator_expectation, orientation_operator,
    rotating_quadrature_op, PhaseFunction,
};
use twomode::spectrum::{
    estimate_spectrum, squeezing_spectrum, synthesize_photocurrent, SpectrumParams, Window,
};
use twomode::wirtinger::{bracket_from_partials, finite_difference_partials, ModePoint};
use twomode::{Complex64, Mode};

use crate::record::{ResultRecord, RunConfig};

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn complex_str(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

/// Wirtinger bracket checks at a phase-space point: autodiff brackets under
/// both orientation conventions against the closed forms and against the
/// central-difference oracle.
#[derive(Debug, clap::Args)]
pub struct BracketsArgs {
    /// Steady-state amplitude (used when no explicit amplitudes are given).
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Steady-state beam orientation (radians).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta0: f64,
    /// Explicit positive-helicity amplitude as `re[,im]`; overrides
    /// --rho/--theta0 when both amplitudes are given.
    #[arg(long, value_parser = crate::parse_complex, allow_hyphen_values = true)]
    pub alpha_plus: Option<Complex64>,
    /// Explicit negative-helicity amplitude as `re[,im]`.
    #[arg(long, value_parser = crate::parse_complex, allow_hyphen_values = true)]
    pub alpha_minus: Option<Complex64>,
    /// Local-oscillator phase (radians); repeatable. Defaults to the
    /// seven-point grid 0, pi/6, ..., pi.
    #[arg(long, allow_negative_numbers = true)]
    pub psi: Vec<f64>,
    /// Central-difference step for the oracle rows.
    #[arg(long, default_value_t = 1e-6)]
    pub fd_step: f64,
}

pub fn cmd_brackets(args: &BracketsArgs, config: &RunConfig) -> anyhow::Result<Vec<ResultRecord>> {
    let (point, point_echo) = match (args.alpha_plus, args.alpha_minus) {
        (Some(ap), Some(am)) => (
            ModePoint::new(ap, am),
            format!(
                "alpha_plus={} alpha_minus={}",
                complex_str(ap),
                complex_str(am)
            ),
        ),
        (None, None) => (
            steady_state(&SteadyState::new(args.rho, args.theta0)),
            format!("rho={} theta0={}", args.rho, args.theta0),
        ),
        _ => bail!("provide both --alpha-plus and --alpha-minus, or neither"),
    };
    let psis = if args.psi.is_empty() {
        (0..=6).map(|k| k as f64 * FRAC_PI_6).collect()
    } else {
        args.psi.clone()
    };

    let a = point.alpha_plus.norm();
    let b = point.alpha_minus.norm();
    let symmetric = (a - b).abs() <= 1e-12 * a.max(b);
    let rho_scale = 0.5 * (a + b);

    // Central differences sample a step-sized neighbourhood, so they are
    // only meaningful where the orientation is smooth. Near the principal
    // branch cut (relative phase at +/- pi) the stencil straddles a 2*pi
    // jump; skip the oracle rows there and say so.
    let cut_gap = std::f64::consts::PI - (point.alpha_plus.conj() * point.alpha_minus).arg().abs();
    let fd_safe = a > 0.0 && b > 0.0 && cut_gap > 8.0 * args.fd_step * (1.0 / a + 1.0 / b);
    if !fd_safe {
        eprintln!(
            "skipping fd-oracle rows: the point is within the finite-difference \
             stencil of the orientation branch cut (gap {cut_gap:.3e} rad)"
        );
    }

    let mut records = Vec::new();
    for &psi in &psis {
        let q = QuadratureParams::new(psi);
        let x1 = rotating_quadrature(&q, OrientationConvention::HalfAngle);
        let x2 = rotating_quadrature(
            &QuadratureParams::new(psi + FRAC_PI_2),
            OrientationConvention::HalfAngle,
        );
        for (convention, conv_name, angle_factor) in [
            (OrientationConvention::HalfAngle, "half_angle", 1.0),
            (OrientationConvention::FullAngle, "full_angle", 2.0),
        ] {
            let inputs = format!("{point_echo} psi={psi} convention={conv_name}");
            let theta = orientation(convention);

            // Orientation bracket {X^psi, theta}.
            let pairs = match (
                poisson_bracket_or_warn(&x1, &theta, &point, &inputs),
                closed_form_orientation_bracket(&point, &q),
            ) {
                (Some(computed), Ok(closed)) => Some((computed, closed)),
                (_, Err(e)) => {
                    eprintln!("skipping {inputs}: {e}");
                    None
                }
                (None, _) => None,
            };
            if let Some((computed, closed)) = pairs {
                let reference = closed.value * real(angle_factor);
                match closed.branch {
                    ClosedFormBranch::SymmetricLimit => {
                        let scale = reference.norm().max(angle_factor / (SQRT_2 * rho_scale));
                        records.push(ResultRecord::verified(
                            config.command,
                            inputs.clone(),
                            "orientation_bracket",
                            computed,
                            reference,
                            "closed_form_symmetric",
                            (computed - reference).norm() / scale,
                            config.gate_tolerance(1e-9),
                        ));
                    }
                    ClosedFormBranch::AsPrintedTypoSuspect => {
                        records.push(ResultRecord::informative(
                            config.command,
                            inputs.clone(),
                            "orientation_bracket",
                            computed,
                            reference,
                            "printed_closed_form_typo_suspect",
                        ));
                    }
                }
                if fd_safe {
                    if let Some(row) = fd_oracle_row(
                        config,
                        &inputs,
                        "orientation_bracket_vs_oracle",
                        &x1,
                        &theta,
                        &point,
                        args.fd_step,
                        computed,
                    ) {
                        records.push(row);
                    }
                }
            }

            // Orthogonal-pair bracket {X^psi, X^{psi+pi/2}}. The quadrature
            // itself is convention-independent; the row is emitted under
            // both labels so sweeps stay aligned.
            if let Some(computed) = poisson_bracket_or_warn(&x1, &x2, &point, &inputs) {
                if symmetric {
                    records.push(ResultRecord::verified(
                        config.command,
                        inputs.clone(),
                        "quadrature_pair_bracket",
                        computed,
                        real(0.0),
                        "closed_form_symmetric",
                        computed.norm(),
                        config.gate_tolerance(1e-10),
                    ));
                } else {
                    match closed_form_quadrature_bracket(&point) {
                        Ok(printed) => records.push(ResultRecord::informative(
                            config.command,
                            inputs.clone(),
                            "quadrature_pair_bracket",
                            computed,
                            real(printed),
                            "printed_closed_form",
                        )),
                        Err(e) => eprintln!("skipping {inputs}: {e}"),
                    }
                }
                if fd_safe {
                    if let Some(row) = fd_oracle_row(
                        config,
                        &inputs,
                        "quadrature_pair_bracket_vs_oracle",
                        &x1,
                        &x2,
                        &point,
                        args.fd_step,
                        computed,
                    ) {
                        records.push(row);
                    }
                }
            }
        }
    }
    Ok(records)
}

fn poisson_bracket_or_warn(
    f: &twomode::wirtinger::FieldFunction,
    g: &twomode::wirtinger::FieldFunction,
    p: &ModePoint,
    inputs: &str,
) -> Option<Complex64> {
    match twomode::wirtinger::poisson_bracket(f, g, p) {
        Ok(v) => Some(v),
        Err(e) => {
            eprintln!("skipping {inputs}: {e}");
            None
        }
    }
}

/// Central-difference reference for an autodiff bracket. The deviation is
/// scaled by the bracket magnitude or, when the bracket itself vanishes, by
/// the product of partial-derivative norms that feed the bilinear form.
#[allow(clippy::too_many_arguments)]
fn fd_oracle_row(
    config: &RunConfig,
    inputs: &str,
    quantity: &str,
    f: &twomode::wirtinger::FieldFunction,
    g: &twomode::wirtinger::FieldFunction,
    p: &ModePoint,
    step: f64,
    computed: Complex64,
) -> Option<ResultRecord> {
    let df = match finite_difference_partials(f, p, step) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("skipping {inputs}: {e}");
            return None;
        }
    };
    let dg = match finite_difference_partials(g, p, step) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("skipping {inputs}: {e}");
            return None;
        }
    };
    let reference = bracket_from_partials(&df, &dg);
    let tolerance = config.gate_tolerance(1e-6);
    // Central differences carry irreducible noise ~ eps/h (roundoff) plus
    // h^2 (truncation) per partial, amplified by the partner partials in
    // the bilinear form. Folding that absolute allowance into the scale
    // keeps the gate meaningful at critical points, where the bracket and
    // every partial vanish and a purely relative measure would divide
    // noise by zero.
    let noise = 16.0 * (1.0 + df.inf_norm() + dg.inf_norm()) * (f64::EPSILON / step + step * step);
    let scale = reference
        .norm()
        .max(df.inf_norm() * dg.inf_norm())
        .max(1e-12)
        + noise / tolerance;
    Some(ResultRecord::verified(
        config.command,
        inputs.to_string(),
        quantity,
        computed,
        reference,
        "fd_oracle",
        (computed - reference).norm() / scale,
        tolerance,
    ))
}

/// Commutator expectations on truncated-Fock coherent states against the
/// classical brackets.
#[derive(Debug, clap::Args)]
pub struct CommutatorsArgs {
    /// Coherent amplitude; repeatable for a scan (rho = 0 probes the
    /// vacuum). Defaults to 3.
    #[arg(long)]
    pub rho: Vec<f64>,
    /// Beam orientation of the probe state.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta0: f64,
    /// Total-excitation cutoff.
    #[arg(long, default_value_t = 50)]
    pub nmax: usize,
    /// Local-oscillator phase (radians); repeatable. Defaults to
    /// pi/6, pi/3, pi/2.
    #[arg(long, allow_negative_numbers = true)]
    pub psi: Vec<f64>,
}

pub fn cmd_commutators(
    args: &CommutatorsArgs,
    config: &RunConfig,
) -> anyhow::Result<Vec<ResultRecord>> {
    let rhos = if args.rho.is_empty() {
        vec![3.0]
    } else {
        args.rho.clone()
    };
    let psis = if args.psi.is_empty() {
        vec![FRAC_PI_6, FRAC_PI_3, FRAC_PI_2]
    } else {
        args.psi.clone()
    };

    let space = basis_with_cap(args.nmax, config.dimension_cap)
        .context("building the truncated Fock space")?;
    let phi = PhaseFunction::zero();
    let theta_op = orientation_operator(&space, &phi)?;

    // Prepare every probe state up front so cap/tail violations reject the
    // whole run before any output is written.
    let mut states = Vec::new();
    for &rho in &rhos {
        let point = steady_state(&SteadyState::new(rho, args.theta0));
        let prep = coherent_state(point.alpha_plus, point.alpha_minus, &space)
            .with_context(|| format!("preparing the coherent state at rho = {rho}"))?;
        states.push(prep);
    }

    let mut records = Vec::new();

    for (&rho, prep) in rhos.iter().zip(&states) {
        let inputs = format!("rho={rho} theta0={} nmax={}", args.theta0, args.nmax);
        for (mode, name) in [(Mode::Plus, "plus"), (Mode::Minus, "minus")] {
            let a = annihilation(mode, &space);
            let value = commutator_expectation(&a, &a.adjoint(), &prep.state)?;
            records.push(ResultRecord::verified(
                config.command,
                format!("{inputs} mode={name}"),
                "ladder_commutator",
                value,
                real(1.0),
                "exact_identity",
                (value - real(1.0)).norm(),
                config.gate_tolerance(1e-6),
            ));
        }
    }

    for &psi in &psis {
        let x1 = rotating_quadrature_op(&QuadratureParams::new(psi), &space, &phi)?;
        let x2 = rotating_quadrature_op(&QuadratureParams::new(psi + FRAC_PI_2), &space, &phi)?;
        let mut magnitudes = Vec::new();
        for (&rho, prep) in rhos.iter().zip(&states) {
            let inputs = format!(
                "rho={rho} theta0={} nmax={} psi={psi}",
                args.theta0, args.nmax
            );
            let pair = commutator_expectation(&x1, &x2, &prep.state)?;
            magnitudes.push(pair.norm());
            // The classical bracket of the conjugate pair vanishes at
            // symmetric points; the residual magnitude is the
            // finite-amplitude quantum correction, reported but never
            // gated.
            records.push(ResultRecord::informative(
                config.command,
                inputs.clone(),
                "pair_commutator",
                pair,
                real(0.0),
                "classical_limit",
            ));

            if rho > 1e-12 {
                let value = commutator_expectation(&x1, &theta_op, &prep.state)?;
                let reference = Complex64::new(0.0, -psi.sin() / (SQRT_2 * rho));
                let measure = (value - reference).norm() / reference.norm().max(1e-12);
                // The 15% band is calibrated for rho >= 3 (measured
                // deviation +2.4%); smaller amplitudes sit outside the
                // classical regime and stay advisory.
                let tolerance = config.gate_tolerance(0.15);
                records.push(if rho >= 3.0 - 1e-12 {
                    ResultRecord::verified(
                        config.command,
                        inputs.clone(),
                        "orientation_commutator",
                        value,
                        reference,
                        "classical_limit_correspondence",
                        measure,
                        tolerance,
                    )
                } else {
                    ResultRecord::advisory(
                        config.command,
                        inputs.clone(),
                        "orientation_commutator",
                        value,
                        reference,
                        "classical_limit_correspondence",
                        measure,
                        tolerance,
                    )
                });
            }
        }
        if rhos.len() >= 2 {
            let monotone = magnitudes.windows(2).all(|w| w[1] < w[0]);
            let rho_echo: Vec<String> = rhos.iter().map(|r| r.to_string()).collect();
            records.push(ResultRecord::verified(
                config.command,
                format!(
                    "rhos={} theta0={} nmax={} psi={psi}",
                    rho_echo.join(";"),
                    args.theta0,
                    args.nmax
                ),
                "pair_commutator_strictly_decreasing",
                real(if monotone { 1.0 } else { 0.0 }),
                real(1.0),
                "classical_limit",
                if monotone { 0.0 } else { 1.0 },
                config.gate_tolerance(0.0),
            ));
        }
    }
    Ok(records)
}

/// Tabulate the squeezing spectrum against an independently rearranged form
/// of the same expression.
#[derive(Debug, clap::Args)]
pub struct SpectrumArgs {
    /// Local-oscillator phase (radians); repeatable. Defaults to
    /// 0, pi/6, pi/3, pi/2.
    #[arg(long, allow_negative_numbers = true)]
    pub psi: Vec<f64>,
    /// Signal-cavity linewidth.
    #[arg(long, default_value_t = 1.0)]
    pub gamma_s: f64,
    /// Probe frequency (rad/s); repeatable. When absent, a uniform grid is
    /// used instead.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Vec<f64>,
    /// Upper edge of the frequency grid (defaults to 10 gamma_s).
    #[arg(long)]
    pub omega_max: Option<f64>,
    /// Number of grid frequencies.
    #[arg(long, default_value_t = 101)]
    pub omega_points: usize,
}

pub fn cmd_spectrum(args: &SpectrumArgs, config: &RunConfig) -> anyhow::Result<Vec<ResultRecord>> {
    if args.gamma_s.is_nan() || args.gamma_s <= 0.0 {
        bail!("--gamma-s must be positive");
    }
    let psis = if args.psi.is_empty() {
        vec![0.0, FRAC_PI_6, FRAC_PI_3, FRAC_PI_2]
    } else {
        args.psi.clone()
    };
    let omegas: Vec<f64> = if args.omega.is_empty() {
        let top = args.omega_max.unwrap_or(10.0 * args.gamma_s);
        let n = args.omega_points.max(2);
        (0..n).map(|k| top * k as f64 / (n - 1) as f64).collect()
    } else {
        args.omega.clone()
    };

    let mut records = Vec::new();
    for &psi in &psis {
        for &omega in &omegas {
            let value = squeezing_spectrum(&SpectrumParams::new(psi, args.gamma_s, omega));
            // Same physics, different arithmetic route:
            // 1 - sin^2/(1+x^2) = (cos^2 + x^2)/(1 + x^2).
            let x = omega / (2.0 * args.gamma_s);
            let reference = (psi.cos().powi(2) + x * x) / (1.0 + x * x);
            records.push(ResultRecord::verified(
                config.command,
                format!(
                    "psi={psi} gamma_s={} omega_over_gamma={}",
                    args.gamma_s,
                    omega / args.gamma_s
                ),
                "squeezing_spectrum",
                real(value),
                real(reference),
                "formula",
                (value - reference).abs(),
                config.gate_tolerance(1e-12),
            ));
        }
    }
    Ok(records)
}

/// Synthesize a homodyne photocurrent shaped to the squeezing spectrum and
/// estimate the spectrum back from the record.
#[derive(Debug, clap::Args)]
pub struct HomodyneSimArgs {
    /// Local-oscillator phase (radians).
    #[arg(long, default_value_t = FRAC_PI_2, allow_negative_numbers = true)]
    pub psi: f64,
    /// Signal-cavity linewidth.
    #[arg(long, default_value_t = 1.0)]
    pub gamma_s: f64,
    /// Record length (power of two).
    #[arg(long, default_value_t = 1 << 20)]
    pub samples: usize,
    /// Sample interval (seconds).
    #[arg(long, default_value_t = 0.05)]
    pub dt: f64,
    /// Noise seed; identical seeds reproduce identical output bytes.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Welch segment length (power of two).
    #[arg(long, default_value_t = 8192)]
    pub segment: usize,
    /// Segment overlap (defaults to half a segment).
    #[arg(long)]
    pub overlap: Option<usize>,
}

pub fn cmd_homodyne_sim(
    args: &HomodyneSimArgs,
    config: &RunConfig,
) -> anyhow::Result<Vec<ResultRecord>> {
    let params = SpectrumParams::new(args.psi, args.gamma_s, 0.0);
    let ts = synthesize_photocurrent(&params, args.samples, args.dt, args.seed)
        .context("synthesizing the photocurrent record")?;
    let overlap = args.overlap.unwrap_or(args.segment / 2);
    let est = estimate_spectrum(&ts, args.segment, overlap, Window::Hann)
        .context("estimating the spectrum")?;

    let run_echo = format!(
        "psi={} gamma_s={} samples={} dt={} seed={} segment={} overlap={overlap}",
        args.psi, args.gamma_s, args.samples, args.dt, args.seed, args.segment
    );

    let mut records = Vec::new();
    let mut within = 0usize;
    let mut sup_norm: f64 = 0.0;
    for (k, (&value, &stderr)) in est.values.iter().zip(est.stderr.iter()).enumerate() {
        let omega = est.frequencies[k];
        let target = squeezing_spectrum(&params.at_omega(omega));
        let deviation = (value - target).abs();
        sup_norm = sup_norm.max(deviation);
        if deviation < 5.0 * stderr {
            within += 1;
        }
        // Individual bins fluctuate; their five-standard-error bounds are
        // advisory, and the gate lives in the fraction summary below.
        records.push(ResultRecord::advisory(
            config.command,
            format!("{run_echo} omega_over_gamma={}", omega / args.gamma_s),
            "estimated_spectrum_bin",
            real(value),
            real(target),
            "formula",
            deviation,
            5.0 * stderr,
        ));
    }
    let fraction = within as f64 / est.values.len() as f64;
    records.push(ResultRecord::verified(
        config.command,
        run_echo.clone(),
        "bins_within_five_stderr_fraction",
        real(fraction),
        real(1.0),
        "formula",
        1.0 - fraction,
        config.gate_tolerance(0.01),
    ));
    records.push(ResultRecord::informative(
        config.command,
        run_echo.clone(),
        "sup_norm_deviation",
        real(sup_norm),
        real(0.0),
        "formula",
    ));
    if (args.psi - FRAC_PI_2).abs() < 1e-6 {
        records.push(ResultRecord::verified(
            config.command,
            run_echo,
            "zero_frequency_dip",
            real(est.values[0]),
            real(0.0),
            "formula",
            est.values[0].abs(),
            config.gate_tolerance(0.05),
        ));
    }
    Ok(records)
}

/// Transverse-mode maps and overlap geometry.
#[derive(Debug, clap::Args)]
pub struct ModesArgs {
    /// Beam width.
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    /// Bright-mode orientation (radians).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta0: f64,
    /// Local-oscillator amplitude scale (profiles stay unit-normalized).
    #[arg(long, default_value_t = 1.0)]
    pub rho_l: f64,
    /// Grid half-width (defaults to 8 beam widths).
    #[arg(long)]
    pub extent: Option<f64>,
    /// Quadrature grid resolution per axis.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Resolution per axis of the emitted profile maps.
    #[arg(long, default_value_t = 9)]
    pub map_samples: usize,
}

pub fn cmd_modes(args: &ModesArgs, config: &RunConfig) -> anyhow::Result<Vec<ResultRecord>> {
    let extent = args.extent.unwrap_or(8.0 * args.width);
    let params = TransverseModeParams {
        w: args.width,
        rho_l: args.rho_l,
        theta0: args.theta0,
        grid: GridSpec {
            extent,
            samples: args.samples,
        },
    };
    let run_echo = format!(
        "width={} theta0={} extent={extent} samples={}",
        args.width, args.theta0, args.samples
    );

    let bright = sample_mode(ModeKind::Bright, &params)?;
    let lo = sample_mode(ModeKind::LocalOscillator, &params)?;
    let l_plus = sample_mode(ModeKind::LaguerrePlus, &params)?;
    let l_minus = sample_mode(ModeKind::LaguerreMinus, &params)?;

    let mut records = Vec::new();
    let tolerance = config.gate_tolerance(1e-8);
    let gram_rows = [
        ("gram_bright_bright", &bright, &bright, 1.0),
        ("gram_lo_lo", &lo, &lo, 1.0),
        ("gram_bright_lo", &bright, &lo, 0.0),
        ("norm_laguerre_plus", &l_plus, &l_plus, 1.0),
        ("overlap_plus_minus", &l_plus, &l_minus, 0.0),
    ];
    for (name, fa, fb, expected) in gram_rows {
        let estimate = overlap(fa, fb)?;
        records.push(ResultRecord::verified(
            config.command,
            run_echo.clone(),
            name,
            estimate.value,
            real(expected),
            "exact_identity",
            (estimate.value - real(expected)).norm(),
            tolerance,
        ));
        records.push(ResultRecord::informative(
            config.command,
            run_echo.clone(),
            &format!("{name}_resolution_error"),
            real(estimate.resolution_error),
            real(0.0),
            "grid_refinement",
        ));
    }

    // Profile maps, each point cross-checked against an independent
    // identity: circular modes are mutual conjugates, and the bright/LO
    // profiles are fixed linear combinations of the circular pair.
    let map_grid = GridSpec {
        extent,
        samples: args.map_samples.max(2),
    };
    let identity_tolerance = config.gate_tolerance(1e-12 * (1.0 + args.width.powi(-2)));
    let half = real(1.0 / SQRT_2);
    let over_i = Complex64::new(0.0, -1.0 / SQRT_2);
    let plus_phase = Complex64::from_polar(1.0, -args.theta0);
    for iy in 0..map_grid.samples {
        let y = map_grid.coordinate(iy);
        for ix in 0..map_grid.samples {
            let x = map_grid.coordinate(ix);
            let lp = mode_profile(ModeKind::LaguerrePlus, &params, x, y);
            let lm = mode_profile(ModeKind::LaguerreMinus, &params, x, y);
            let cases = [
                ("profile_laguerre_plus", lp, lm.conj(), "conjugate_symmetry"),
                (
                    "profile_laguerre_minus",
                    lm,
                    lp.conj(),
                    "conjugate_symmetry",
                ),
                (
                    "profile_bright",
                    mode_profile(ModeKind::Bright, &params, x, y),
                    half * (plus_phase * lp + plus_phase.conj() * lm),
                    "circular_decomposition",
                ),
                (
                    "profile_lo",
                    mode_profile(ModeKind::LocalOscillator, &params, x, y),
                    over_i * (plus_phase * lp - plus_phase.conj() * lm),
                    "circular_decomposition",
                ),
            ];
            for (name, computed, reference, provenance) in cases {
                records.push(ResultRecord::verified(
                    config.command,
                    format!("{run_echo} x={x} y={y}"),
                    name,
                    computed,
                    reference,
                    provenance,
                    (computed - reference).norm(),
                    identity_tolerance,
                ));
            }
        }
    }
    Ok(records)
}
