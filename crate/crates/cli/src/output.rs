//! Deterministic output rendering.
//!
//! CSV files are a header line followed by comma-separated values printed
//! with 12 significant digits, so identical configurations produce
//! byte-identical files. JSON goes through `serde_json` with ordered fields.

use num_complex::Complex64;
use spinflux::{Mat2, SpinBasis, Spinor, TransmissionRecord};

/// 12 significant digits, scientific notation. Negative zero is folded into
/// zero so algebraically equal runs stay byte-identical.
pub fn fmt(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.11e}", x)
}

pub struct CsvBuilder {
    lines: Vec<String>,
}

impl CsvBuilder {
    pub fn new(header: &[&str]) -> Self {
        Self {
            lines: vec![header.join(",")],
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|&v| fmt(v)).collect();
        self.lines.push(cells.join(","));
    }

    pub fn row_labeled(&mut self, label: &str, values: &[f64]) {
        let mut cells = vec![label.to_string()];
        cells.extend(values.iter().map(|&v| fmt(v)));
        self.lines.push(cells.join(","));
    }

    pub fn finish(self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

pub fn spinor_components(s: &Spinor) -> [f64; 4] {
    [s.c[0].re, s.c[0].im, s.c[1].re, s.c[1].im]
}

pub fn basis_json(basis: &SpinBasis) -> serde_json::Value {
    let pair = |v: &Complex64| serde_json::json!([v.re, v.im]);
    serde_json::json!({
        "kind": format!("{:?}", basis.kind),
        "up": [pair(&basis.up.c[0]), pair(&basis.up.c[1])],
        "down": [pair(&basis.down.c[0]), pair(&basis.down.c[1])],
    })
}

pub fn matrix_json(m: &Mat2) -> serde_json::Value {
    let pair = |v: &Complex64| serde_json::json!([v.re, v.im]);
    serde_json::json!([
        [pair(&m.e[0][0]), pair(&m.e[0][1])],
        [pair(&m.e[1][0]), pair(&m.e[1][1])],
    ])
}

pub fn record_json(rec: &TransmissionRecord, k_phi: Option<f64>) -> serde_json::Value {
    let mut obj = serde_json::json!({
        "energy": rec.energy,
        "t_uu": rec.coefficients[0][0],
        "t_ud": rec.coefficients[0][1],
        "t_du": rec.coefficients[1][0],
        "t_dd": rec.coefficients[1][1],
    });
    if let Some(k) = k_phi {
        obj.as_object_mut()
            .unwrap()
            .insert("k_phi".into(), serde_json::json!(k));
    }
    obj
}
