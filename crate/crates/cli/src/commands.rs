use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use polqpdf::coherence::{factorization_check, orders_up_to, polarization_residual};
use polqpdf::fock::{required_dim, two_mode_coherent_density};
use polqpdf::qpdf::{
    normalization_check, normalization_single, qpdf_coherent_closed, qpdf_trace,
    section_plane_integral, sweep_modulus, sweep_phase,
};
use polqpdf::quadrature::QuadratureSpec;
use polqpdf::{
    Complex64, OrderParameter, PolarizationIndex, QpdfGrid, SectionParams, SingleModeState,
    TwoModeState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command, Options};
use crate::csv::{fmt_complex, write_grid};
use crate::error::{CliError, CliResult};
use crate::presets::Figure;
use crate::svg::line_plot;

pub const ORACLE_TOL: f64 = 1e-6;
pub const NORM_TOL: f64 = 1e-4;
pub const FACTORIZATION_TOL: f64 = 1e-10;

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let o = &cli.opts;
    match cli.command {
        Command::Figure1a => run_figure(Figure::F1a, o, out),
        Command::Figure1b => run_figure(Figure::F1b, o, out),
        Command::Figure2c => run_figure(Figure::F2c, o, out),
        Command::Figure2d => run_figure(Figure::F2d, o, out),
        Command::Sweep => run_sweep(o, out),
        Command::Normcheck => run_normcheck(o, out),
        Command::Oracle => run_oracle(o, out),
        Command::Report => run_report(o, out),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(io_err(Path::new("<stdout>")))
}

fn order(s: Option<f64>) -> CliResult<OrderParameter> {
    Ok(OrderParameter::new(s.unwrap_or(0.0))?)
}

fn index(z: Complex64) -> CliResult<PolarizationIndex> {
    Ok(PolarizationIndex::new(z)?)
}

fn output_path(o: &Options, default_name: &str) -> PathBuf {
    match (&o.out, &o.out_dir) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => dir.join(default_name),
        (None, None) => PathBuf::from(default_name),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    fs::write(path, contents).map_err(io_err(path))
}

fn write_grid_files(
    grid: &QpdfGrid,
    label: &str,
    caption: &str,
    o: &Options,
    out: &mut dyn Write,
) -> CliResult<()> {
    let path = output_path(o, &format!("{label}.csv"));
    write_file(&path, &write_grid(grid, Some(label)))?;
    let peak = grid.axis_values()[grid.argmax()];
    emit(
        out,
        &format!(
            "wrote {} ({} points, method={}, peak at {peak:.6})\n",
            path.display(),
            grid.values().len(),
            grid.meta().method
        ),
    )?;
    if o.svg {
        let svg_path = path.with_extension("svg");
        write_file(&svg_path, &line_plot(grid, caption)?)?;
        emit(out, &format!("wrote {}\n", svg_path.display()))?;
    }
    Ok(())
}

pub fn run_figure(fig: Figure, o: &Options, out: &mut dyn Write) -> CliResult<()> {
    if o.s.is_some() || o.beta.is_some() || o.p.is_some() || o.q.is_some() {
        return Err(CliError::Usage(format!(
            "{} uses fixed parameters; use `sweep` for custom ones",
            fig.name()
        )));
    }
    if o.modulus.is_some() || o.phase.is_some() || o.max_modulus.is_some() {
        return Err(CliError::Usage(format!("{} has a fixed axis", fig.name())));
    }
    let grid = fig.sweep(o.points, o.method, o.dim)?;
    write_grid_files(&grid, fig.name(), fig.caption(), o, out)
}

pub fn run_sweep(o: &Options, out: &mut dyn Write) -> CliResult<()> {
    let (Some(beta), Some(p), Some(q)) = (o.beta, o.p, o.q) else {
        return Err(CliError::Usage("sweep needs --beta, --p and --q".into()));
    };
    let params = SectionParams {
        beta,
        q: index(q)?,
        p: index(p)?,
        s: order(o.s)?,
    };
    let grid = match (o.modulus, o.phase) {
        (Some(m), None) => sweep_phase(&params, m, o.points, o.method, o.dim)?,
        (None, Some(ph)) => sweep_modulus(
            &params,
            ph,
            o.max_modulus.unwrap_or(crate::presets::AMPLITUDE_MAX),
            o.points,
            o.method,
            o.dim,
        )?,
        _ => {
            return Err(CliError::Usage(
                "sweep needs exactly one of --modulus or --phase".into(),
            ))
        }
    };
    let caption = format!(
        "W(s={}) for \u{3b2}={}, p={}, q={}",
        params.s.value(),
        fmt_complex(beta),
        fmt_complex(p),
        fmt_complex(q)
    );
    write_grid_files(&grid, "sweep", &caption, o, out)
}

/// Settings of a closed-form against trace comparison.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub orders: Vec<OrderParameter>,
    pub tuples: usize,
    pub max_modulus: f64,
    pub dim: usize,
    pub seed: u64,
    pub beta: Option<Complex64>,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleTuple {
    pub s: f64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub ax: Complex64,
    pub ay: Complex64,
    pub closed: f64,
    pub trace: f64,
}

impl OracleTuple {
    pub fn error(&self) -> f64 {
        (self.closed - self.trace).abs()
    }
}

#[derive(Debug, Clone)]
pub struct OracleSummary {
    pub max_abs_err: f64,
    pub mean_abs_err: f64,
    pub worst: OracleTuple,
    pub count: usize,
}

fn disk_sample(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.random::<f64>())
}

pub fn oracle_sweep(cfg: &OracleConfig) -> CliResult<OracleSummary> {
    if cfg.tuples == 0 || cfg.orders.is_empty() {
        return Err(CliError::Usage(
            "oracle needs at least one tuple and one s".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst: Option<OracleTuple> = None;
    let mut total = 0.0;
    for i in 0..cfg.tuples {
        let s = cfg.orders[i % cfg.orders.len()];
        let beta = cfg
            .beta
            .unwrap_or_else(|| disk_sample(&mut rng, cfg.max_modulus));
        let gamma = disk_sample(&mut rng, cfg.max_modulus);
        let ax = disk_sample(&mut rng, cfg.max_modulus);
        let ay = disk_sample(&mut rng, cfg.max_modulus);
        let state = two_mode_coherent_density(beta, gamma, cfg.dim)?;
        let t = OracleTuple {
            s: s.value(),
            beta,
            gamma,
            ax,
            ay,
            closed: qpdf_coherent_closed(beta, gamma, ax, ay, s),
            trace: qpdf_trace(&state, ax, ay, s)?,
        };
        total += t.error();
        if worst.is_none_or(|w| t.error() > w.error()) {
            worst = Some(t);
        }
    }
    let worst = worst.expect("at least one tuple");
    Ok(OracleSummary {
        max_abs_err: worst.error(),
        mean_abs_err: total / cfg.tuples as f64,
        worst,
        count: cfg.tuples,
    })
}

pub fn run_oracle(o: &Options, out: &mut dyn Write) -> CliResult<()> {
    let orders = match o.s {
        Some(s) => vec![OrderParameter::new(s)?],
        None => [-1.0, -0.5, 0.0]
            .iter()
            .map(|&s| OrderParameter::new(s))
            .collect::<Result<_, _>>()?,
    };
    let max_modulus = o.max_modulus.unwrap_or(2.5);
    let reach = max_modulus.max(o.beta.map_or(0.0, |b| b.norm()));
    let cfg = OracleConfig {
        orders,
        tuples: o.tuples,
        max_modulus,
        // the kernel sees displacements up to |α| + |β|
        dim: o.dim.unwrap_or_else(|| required_dim(reach + max_modulus)),
        seed: o.seed,
        beta: o.beta,
    };
    let summary = oracle_sweep(&cfg)?;
    let w = summary.worst;
    let text = format!(
        "oracle tuples={} dim={} seed={} max_modulus={}\n\
         max_abs_err={:.3e}\nmean_abs_err={:.3e}\n\
         worst s={} beta={} gamma={} ax={} ay={} closed={:.16e} trace={:.16e}\n",
        summary.count,
        cfg.dim,
        cfg.seed,
        cfg.max_modulus,
        summary.max_abs_err,
        summary.mean_abs_err,
        w.s,
        fmt_complex(w.beta),
        fmt_complex(w.gamma),
        fmt_complex(w.ax),
        fmt_complex(w.ay),
        w.closed,
        w.trace
    );
    emit(out, &text)?;
    maybe_save(o, &text)?;
    let tol = o.tol.unwrap_or(ORACLE_TOL);
    if summary.max_abs_err > tol {
        return Err(CliError::Tolerance(format!(
            "max_abs_err {:.3e} > {tol:e} at s={} beta={} gamma={} ax={} ay={}",
            summary.max_abs_err,
            w.s,
            fmt_complex(w.beta),
            fmt_complex(w.gamma),
            fmt_complex(w.ax),
            fmt_complex(w.ay)
        )));
    }
    Ok(())
}

fn maybe_save(o: &Options, text: &str) -> CliResult<()> {
    if let Some(p) = &o.out {
        write_file(p, text)?;
    }
    Ok(())
}

pub fn run_normcheck(o: &Options, out: &mut dyn Write) -> CliResult<()> {
    let quad = QuadratureSpec::new(o.half_width, o.nodes)?;
    let orders = match o.s {
        Some(s) => vec![OrderParameter::new(s)?],
        None => vec![OrderParameter::HUSIMI, OrderParameter::WIGNER],
    };
    let beta = o.beta.unwrap_or(Complex64::new(0.5, 0.3));
    let gamma = o.q.map_or(Complex64::new(-0.4, 0.2), |q| q * beta);
    let coherent = SingleModeState::coherent(beta, required_dim(beta.norm()))?;
    let fock1 = SingleModeState::fock(1, 8)?;
    let dim2 = required_dim(beta.norm().max(gamma.norm()));
    let pair = TwoModeState::product(
        &SingleModeState::coherent(beta, dim2)?,
        &SingleModeState::coherent(gamma, dim2)?,
    )?;
    let tol = o.tol.unwrap_or(NORM_TOL);
    let mut text = format!(
        "normcheck box=[-{0},{0}]^2 nodes={1} tol={tol:e}\nstate s value deviation box_warning\n",
        quad.half_width, quad.nodes
    );
    let mut worst: f64 = 0.0;
    for s in &orders {
        let rows = [
            (
                format!("coherent({})", fmt_complex(beta)),
                normalization_single(&coherent, *s, &quad)?,
            ),
            (
                "fock(1)".to_string(),
                normalization_single(&fock1, *s, &quad)?,
            ),
            (
                format!("coherent({})x({})", fmt_complex(beta), fmt_complex(gamma)),
                normalization_check(&pair, *s, &quad)?,
            ),
        ];
        for (name, r) in rows {
            worst = worst.max(r.deviation());
            text.push_str(&format!(
                "{name} {} {:.12} {:.3e} {}\n",
                s.value(),
                r.value,
                r.deviation(),
                r.box_warning
            ));
        }
    }
    let w0 = polqpdf::qpdf::qpdf_single_trace(
        &fock1,
        Complex64::new(0.0, 0.0),
        OrderParameter::WIGNER,
        None,
    )?;
    text.push_str(&format!("fock(1) wigner at origin {w0:.12}\n"));
    text.push_str("section integrals over alpha_x at fixed p (reported only)\n");
    for fig in [Figure::F1a, Figure::F1b] {
        let v = section_plane_integral(&fig.params(), &quad);
        text.push_str(&format!("{} {:.12}\n", fig.name(), v));
    }
    emit(out, &text)?;
    maybe_save(o, &text)?;
    if worst > tol {
        return Err(CliError::Tolerance(format!(
            "normalization deviation {worst:.3e} > {tol:e}"
        )));
    }
    Ok(())
}

pub fn run_report(o: &Options, out: &mut dyn Write) -> CliResult<()> {
    let p = index(o.p.unwrap_or(Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)))?;
    let beta = o.beta.unwrap_or(Complex64::new(1.0, 0.0));
    let gamma = p.value() * beta;
    let perturbed = gamma + 0.1;
    let reach = beta.norm().max(perturbed.norm());
    let dim = o.dim.unwrap_or_else(|| required_dim(reach).max(40));
    let polarized = two_mode_coherent_density(beta, gamma, dim)?;
    let off = two_mode_coherent_density(beta, perturbed, dim)?;
    let vacuum = TwoModeState::vacuum(dim)?;

    let mut text = format!(
        "report beta={} p={} dim={dim}\norder lhs rhs abs_error\n",
        fmt_complex(beta),
        fmt_complex(p.value())
    );
    let mut worst: f64 = 0.0;
    for ord in orders_up_to(4) {
        let f = factorization_check(&polarized, p, &ord)?;
        worst = worst.max(f.abs_error);
        text.push_str(&format!(
            "{ord} {} {} {:.3e}\n",
            fmt_complex(f.lhs),
            fmt_complex(f.rhs),
            f.abs_error
        ));
    }
    text.push_str(&format!("max_abs_error={worst:.3e}\n"));
    text.push_str("state residual\n");
    for (name, st) in [
        ("polarized", &polarized),
        ("perturbed", &off),
        ("vacuum", &vacuum),
    ] {
        text.push_str(&format!("{name} {:.6e}\n", polarization_residual(st, p)?));
    }
    emit(out, &text)?;
    maybe_save(o, &text)?;
    let tol = o.tol.unwrap_or(FACTORIZATION_TOL);
    if worst > tol {
        return Err(CliError::Tolerance(format!(
            "factorization error {worst:.3e} > {tol:e}"
        )));
    }
    Ok(())
}
