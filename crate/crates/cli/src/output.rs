//! CSV and SVG emission for sampled curves.

use std::fs;
use std::path::{Path, PathBuf};

use su2_mintime::DiskPoint;

use crate::CliError;

/// One sampled curve destined for a file: `(omega, t, point)` rows.
pub struct CurveData {
    /// File stem, e.g. `frontline_T1.000000`.
    pub name: String,
    /// `# key=value` metadata lines placed before the header.
    pub meta: Vec<String>,
    pub rows: Vec<(f64, f64, DiskPoint)>,
}

/// Numbers in CSV files carry 12 decimals so downstream parses stay well
/// inside solver tolerances; console output sticks to 9.
fn csv_num(x: f64) -> String {
    format!("{x:.12}")
}

pub fn write_curve_csv(dir: &Path, curve: &CurveData) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.csv", curve.name));
    let mut body = String::new();
    for meta in &curve.meta {
        body.push_str(&format!("# {meta}\n"));
    }
    body.push_str("omega,t,x,y\n");
    for (omega, t, p) in &curve.rows {
        body.push_str(&format!(
            "{},{},{},{}\n",
            csv_num(*omega),
            csv_num(*t),
            csv_num(p.x),
            csv_num(p.y)
        ));
    }
    fs::write(&path, body).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(path)
}

/// Map the closed unit disk onto an 800x800 viewport (y up).
fn viewport(p: &DiskPoint) -> (f64, f64) {
    (400.0 + 396.0 * p.x, 400.0 - 396.0 * p.y)
}

pub fn write_curve_svg(dir: &Path, curve: &CurveData) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.svg", curve.name));
    let mut points = String::new();
    for (_, _, p) in &curve.rows {
        let (x, y) = viewport(p);
        points.push_str(&format!("{x:.2},{y:.2} "));
    }
    let svg = format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" ",
            "viewBox=\"0 0 800 800\">\n",
            "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n",
            "<circle cx=\"400\" cy=\"400\" r=\"396\" fill=\"none\" stroke=\"#999\" ",
            "stroke-width=\"1\"/>\n",
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#c22\" stroke-width=\"1.5\"/>\n",
            "</svg>\n"
        ),
        points.trim_end()
    );
    fs::write(&path, svg).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub fn write_sweep_csv(
    dir: &Path,
    points: &[su2_mintime::SweepPoint],
) -> Result<PathBuf, CliError> {
    let path = dir.join("sweep.csv");
    fs::write(&path, sweep_csv_string(points))
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub fn sweep_csv_string(points: &[su2_mintime::SweepPoint]) -> String {
    let mut body = String::from("gamma,t_star,jump\n");
    for p in points {
        body.push_str(&format!(
            "{},{},{}\n",
            csv_num(p.gamma),
            csv_num(p.t_star),
            u8::from(p.jump)
        ));
    }
    body
}
