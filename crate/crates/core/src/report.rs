//! Report rows and their CSV form.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::lpnorm::QuadratureResult;

pub const APPROX_HEADER: &str = "operation,seminorm,p,param,bound,measured,pass";
pub const QUADRATURE_HEADER: &str = "curve,seminorm,p,value,error_bound,cells,method";

/// One checked claim: `measured` against `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub operation: String,
    pub seminorm: String,
    pub p: Option<f64>,
    pub param: String,
    pub bound: f64,
    pub measured: f64,
    pub pass: bool,
}

impl ReportRow {
    pub fn csv(&self) -> String {
        let p = self.p.map(|p| p.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            field(&self.operation),
            field(&self.seminorm),
            p,
            field(&self.param),
            self.bound,
            self.measured,
            self.pass
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ApproxReport {
    pub rows: Vec<ReportRow>,
}

impl ApproxReport {
    pub fn new() -> Self {
        Self::default()
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        operation: &str,
        seminorm: impl Into<String>,
        p: Option<f64>,
        param: impl Into<String>,
        bound: f64,
        measured: f64,
        pass: bool,
    ) {
        self.rows.push(ReportRow {
            operation: operation.into(),
            seminorm: seminorm.into(),
            p,
            param: param.into(),
            bound,
            measured,
            pass,
        });
    }

    pub fn extend(&mut self, other: ApproxReport) {
        self.rows.extend(other.rows);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&ReportRow> {
        self.rows.iter().find(|r| !r.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(APPROX_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.csv());
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

pub fn quadrature_row(curve: &str, seminorm: &str, p: f64, r: &QuadratureResult) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "{},{},{},{},{},{},{}",
        field(curve),
        field(seminorm),
        p,
        r.value,
        r.abs_error_bound,
        r.cells,
        r.method
    );
    s
}

/// Quotes a CSV field when needed.
pub fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_render() {
        let mut r = ApproxReport::new();
        r.push("urysohn", "q0", Some(1.0), "n=5", 0.2, 0.1, true);
        r.push("cover", "", None, "a,b", 0.01, 0.005, true);
        assert_eq!(
            r.to_csv(),
            "operation,seminorm,p,param,bound,measured,pass\nurysohn,q0,1,n=5,0.2,0.1,true\ncover,,,\"a,b\",0.01,0.005,true\n"
        );
        assert!(r.all_pass());
    }
}
