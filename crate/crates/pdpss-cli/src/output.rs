//! CSV and manifest writing. Floats are printed with 17 significant digits
//! so binary64 values round-trip exactly; complex cells are quoted "re,im"
//! pairs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use pdpss::{ComplexDenseMatrix, RealDenseMatrix};

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_complex_matrix_csv(path: &Path, m: &ComplexDenseMatrix<f64>) -> std::io::Result<()> {
    let mut body = String::new();
    for r in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols())
            .map(|c| {
                let z = m.get(r, c);
                format!("\"{},{}\"", format_float(z.re), format_float(z.im))
            })
            .collect();
        let _ = writeln!(body, "{}", cells.join(","));
    }
    std::fs::write(path, body)
}

pub fn write_real_matrix_csv(path: &Path, m: &RealDenseMatrix<f64>) -> std::io::Result<()> {
    let mut body = String::new();
    for r in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols()).map(|c| format_float(m.get(r, c))).collect();
        let _ = writeln!(body, "{}", cells.join(","));
    }
    std::fs::write(path, body)
}

/// Key:value run manifest; `finish` appends timing, scalar precision and the
/// output file list, then writes `manifest.txt` into the output directory.
pub struct Manifest {
    lines: Vec<(String, String)>,
    files: Vec<PathBuf>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Manifest { lines: vec![("command".into(), command.into())], files: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: usize) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn entry(&mut self, key: &str, value: impl Into<String>) {
        self.lines.push((key.into(), value.into()));
    }

    pub fn file(&mut self, path: &Path) {
        self.files.push(path.to_path_buf());
    }

    pub fn finish(mut self, out_dir: &Path, elapsed: Duration) -> std::io::Result<()> {
        self.lines.push(("eps".into(), format_float(f64::EPSILON)));
        self.lines.push(("wall_time_s".into(), format!("{:.6}", elapsed.as_secs_f64())));
        self.lines.push(("version".into(), env!("CARGO_PKG_VERSION").into()));
        let names: Vec<String> = self
            .files
            .iter()
            .map(|p| p.file_name().unwrap_or_default().to_string_lossy().into_owned())
            .collect();
        self.lines.push(("outputs".into(), names.join(" ")));
        let mut body = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(body, "{k}: {v}");
        }
        std::fs::write(out_dir.join("manifest.txt"), body)
    }
}
