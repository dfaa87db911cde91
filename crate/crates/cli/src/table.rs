//! Sweep table: header `lambda,v,stderr`, one row per grid point, values
//! with 17 significant digits so they parse back to the same doubles.

use bellvol::SweepPoint;

pub const HEADER: &str = "lambda,v,stderr";

pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_row(lambda: f64, v: f64, stderr: f64) -> String {
    format!("{},{},{}", format_value(lambda), format_value(v), format_value(stderr))
}

pub fn render(points: &[SweepPoint]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format_row(p.lambda, p.estimate.v, p.estimate.stderr));
        out.push('\n');
    }
    out
}
