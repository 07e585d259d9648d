//! Trace CSV format.
//!
//! Fixed column order `k, x_0..x_{d-1}, dist_to_solution, dist_to_K,
//! step_norm, ratio`, every float rendered with 17 significant digits
//! (`{:.16e}`) so a write/read round trip is bit-exact. Missing values are
//! written as `NaN`.

use std::io::Write;
use std::path::Path;

use circumfeas_core::geometry::Point;
use circumfeas_core::Trace;

use crate::error::CliError;

fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// Writes a trace; `reference` supplies the `dist_to_solution` column when
/// the trace itself carries none (e.g. the ray-restricted limit of a
/// crossing-family run).
pub fn write_trace(path: &Path, trace: &Trace, reference: Option<&Point>) -> Result<(), CliError> {
    let dim = trace.final_point().dim();
    let mut out = String::new();
    out.push('k');
    for i in 0..dim {
        out.push_str(&format!(",x_{i}"));
    }
    out.push_str(",dist_to_solution,dist_to_K,step_norm,ratio\n");

    let dist_sol: Option<Vec<f64>> = trace.dist_to_solution.clone().or_else(|| {
        reference.map(|y| trace.iterates.iter().map(|x| x.dist(y)).collect())
    });
    let steps = trace.step_norms();
    for (k, x) in trace.iterates.iter().enumerate() {
        out.push_str(&k.to_string());
        for c in x.coords() {
            out.push(',');
            out.push_str(&fmt_f64(*c));
        }
        let ds = dist_sol.as_ref().map_or(f64::NAN, |d| d[k]);
        let ratio = match (k, dist_sol.as_ref()) {
            (0, _) | (_, None) => f64::NAN,
            (k, Some(d)) => d[k] / d[k - 1],
        };
        out.push(',');
        out.push_str(&fmt_f64(ds));
        out.push(',');
        out.push_str(&fmt_f64(trace.dist_to_k[k]));
        out.push(',');
        out.push_str(&fmt_f64(steps[k]));
        out.push(',');
        out.push_str(&fmt_f64(ratio));
        out.push('\n');
    }

    let mut file = std::fs::File::create(path)
        .map_err(|e| CliError::io(&format!("creating {}", path.display()), e))?;
    file.write_all(out.as_bytes())
        .map_err(|e| CliError::io(&format!("writing {}", path.display()), e))
}

/// A trace as read back from disk.
#[derive(Debug)]
pub struct TraceData {
    pub iterates: Vec<Point>,
    pub dist_to_solution: Option<Vec<f64>>,
    pub dist_to_k: Vec<f64>,
}

pub fn read_trace(path: &Path) -> Result<TraceData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Config(format!("{}: empty trace file", path.display())))?;
    let columns: Vec<&str> = header.split(',').collect();
    let dim = columns.iter().filter(|c| c.starts_with("x_")).count();
    if dim == 0 || columns.first() != Some(&"k") {
        return Err(CliError::Config(format!(
            "{}: header must be k,x_0..x_(d-1),dist_to_solution,dist_to_K,step_norm,ratio",
            path.display()
        )));
    }
    let dist_col = columns
        .iter()
        .position(|c| *c == "dist_to_solution")
        .ok_or_else(|| {
            CliError::Config(format!("{}: missing dist_to_solution column", path.display()))
        })?;
    let dist_k_col = columns.iter().position(|c| *c == "dist_to_K").ok_or_else(|| {
        CliError::Config(format!("{}: missing dist_to_K column", path.display()))
    })?;

    let mut iterates = Vec::new();
    let mut dist_sol = Vec::new();
    let mut dist_k = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != columns.len() {
            return Err(CliError::Config(format!(
                "{}:{}: expected {} cells, got {}",
                path.display(),
                lineno + 2,
                columns.len(),
                cells.len()
            )));
        }
        let parse = |s: &str| -> Result<f64, CliError> {
            s.parse::<f64>().map_err(|_| {
                CliError::Config(format!(
                    "{}:{}: unparseable number '{s}'",
                    path.display(),
                    lineno + 2
                ))
            })
        };
        let coords: Vec<f64> = (0..dim)
            .map(|i| parse(cells[1 + i]))
            .collect::<Result<_, _>>()?;
        iterates.push(Point::new(coords));
        dist_sol.push(parse(cells[dist_col])?);
        dist_k.push(parse(cells[dist_k_col])?);
    }
    if iterates.is_empty() {
        return Err(CliError::Config(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    let have_dist = dist_sol.iter().any(|v| v.is_finite());
    Ok(TraceData {
        iterates,
        dist_to_solution: have_dist.then_some(dist_sol),
        dist_to_k: dist_k,
    })
}
