//! Grid CSV files: `# key=value` metadata lines, a column header, then one
//! row per sample with 17 significant digits.

use polqpdf::{AxisKind, Complex64, GridMeta, Method, QpdfGrid};

use crate::error::{CliError, CliResult};

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", fmt_f64(z.re), fmt_f64(z.im))
}

/// Parses `re,im` or a bare real.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.split(',');
    let re = parts.next().unwrap_or("");
    let im = parts.next();
    if parts.next().is_some() {
        return Err(format!("expected re,im but got {s:?}"));
    }
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| format!("bad real part in {s:?}"))?;
    let im: f64 = match im {
        Some(t) => t
            .trim()
            .parse()
            .map_err(|_| format!("bad imaginary part in {s:?}"))?,
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

/// Renders a grid. `label` is an optional free-form tag (the preset name).
pub fn write_grid(grid: &QpdfGrid, label: Option<&str>) -> String {
    let meta = grid.meta();
    let mut out = String::new();
    if let Some(l) = label {
        out.push_str(&format!("# label={l}\n"));
    }
    out.push_str(&format!("# axis={}\n", grid.axis_kind().as_str()));
    out.push_str(&format!("# s={}\n", fmt_f64(meta.s)));
    let opt = |z: Option<Complex64>| z.map(fmt_complex).unwrap_or_else(|| "none".into());
    out.push_str(&format!("# p={}\n", opt(meta.p)));
    out.push_str(&format!("# q={}\n", opt(meta.q)));
    out.push_str(&format!("# beta={}\n", opt(meta.beta)));
    let fixed = meta.fixed.map(fmt_f64).unwrap_or_else(|| "none".into());
    out.push_str(&format!("# fixed={fixed}\n"));
    let dim = meta
        .dim_used
        .map(|d| d.to_string())
        .unwrap_or_else(|| "none".into());
    out.push_str(&format!("# dim={dim}\n"));
    out.push_str(&format!("# method={}\n", meta.method));
    out.push_str(&format!("# measure={}\n", meta.measure));
    let axis = grid.axis_values();
    match grid.axis_kind() {
        AxisKind::Plane => {
            out.push_str("re,im,value\n");
            let n = axis.len();
            for (k, v) in grid.values().iter().enumerate() {
                let (ix, iy) = (k % n, k / n);
                out.push_str(&format!(
                    "{},{},{}\n",
                    fmt_f64(axis[ix]),
                    fmt_f64(axis[iy]),
                    fmt_f64(*v)
                ));
            }
        }
        _ => {
            out.push_str("axis,value\n");
            for (x, v) in axis.iter().zip(grid.values()) {
                out.push_str(&format!("{},{}\n", fmt_f64(*x), fmt_f64(*v)));
            }
        }
    }
    out
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Csv(msg.into())
}

fn parse_opt_complex(v: &str) -> CliResult<Option<Complex64>> {
    if v == "none" {
        return Ok(None);
    }
    parse_complex(v).map(Some).map_err(bad)
}

fn parse_f64(v: &str) -> CliResult<f64> {
    v.parse().map_err(|_| bad(format!("bad number {v:?}")))
}

/// Inverse of [`write_grid`]; unknown metadata keys are ignored.
pub fn parse_grid(text: &str) -> CliResult<QpdfGrid> {
    let mut kind = None;
    let mut meta = GridMeta {
        s: f64::NAN,
        p: None,
        q: None,
        beta: None,
        fixed: None,
        dim_used: None,
        method: Method::ClosedForm,
        measure: String::new(),
    };
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.peek() {
        let Some(body) = line.strip_prefix("# ") else {
            break;
        };
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| bad(format!("bad header {line:?}")))?;
        match key {
            "axis" => kind = Some(value.parse::<AxisKind>()?),
            "s" => meta.s = parse_f64(value)?,
            "p" => meta.p = parse_opt_complex(value)?,
            "q" => meta.q = parse_opt_complex(value)?,
            "beta" => meta.beta = parse_opt_complex(value)?,
            "fixed" if value == "none" => meta.fixed = None,
            "fixed" => meta.fixed = Some(parse_f64(value)?),
            "dim" if value == "none" => meta.dim_used = None,
            "dim" => meta.dim_used = Some(value.parse().map_err(|_| bad("bad dim"))?),
            "method" => meta.method = value.parse()?,
            "measure" => meta.measure = value.to_string(),
            _ => {}
        }
        lines.next();
    }
    let kind = kind.ok_or_else(|| bad("missing axis kind"))?;
    let header = lines.next().ok_or_else(|| bad("missing column header"))?;
    let mut axis = Vec::new();
    let mut values = Vec::new();
    match kind {
        AxisKind::Plane => {
            if header != "re,im,value" {
                return Err(bad(format!("unexpected header {header:?}")));
            }
            let mut rows = Vec::new();
            for line in lines {
                let f: Vec<&str> = line.split(',').collect();
                if f.len() != 3 {
                    return Err(bad(format!("bad row {line:?}")));
                }
                rows.push((parse_f64(f[0])?, parse_f64(f[1])?, parse_f64(f[2])?));
            }
            let n = (rows.len() as f64).sqrt().round() as usize;
            if n * n != rows.len() {
                return Err(bad("plane grid is not square"));
            }
            axis.extend(rows.iter().take(n).map(|r| r.0));
            values.extend(rows.iter().map(|r| r.2));
        }
        _ => {
            if header != "axis,value" {
                return Err(bad(format!("unexpected header {header:?}")));
            }
            for line in lines {
                let (x, v) = line
                    .split_once(',')
                    .ok_or_else(|| bad(format!("bad row {line:?}")))?;
                axis.push(parse_f64(x)?);
                values.push(parse_f64(v)?);
            }
        }
    }
    Ok(QpdfGrid::new(kind, axis, values, meta)?)
}
