//! Parallel frequency sweeps rendered as CSV.

use std::fmt::Write as _;

use omlrt_core::greens::spectral_and_reflection;
use omlrt_core::response::stability;
use omlrt_core::{Error, ObservablePoint, OutputKind, StabilityReport, SweepSpec};
use rayon::prelude::*;

use crate::{CliError, CliResult};

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_VAR: &str = "OMLRT_THREADS";

/// Every column in output order, tagged with the output that enables it.
const COLUMNS: [(&str, Option<OutputKind>); 17] = [
    ("omega_pc", None),
    ("d_as", Some(OutputKind::DAs)),
    ("d_s", Some(OutputKind::DS)),
    ("rho", Some(OutputKind::Rho)),
    ("r_power", Some(OutputKind::RPower)),
    ("r_power_approx", Some(OutputKind::RPowerApprox)),
    ("d_badag", Some(OutputKind::DBadag)),
    ("d_ba", Some(OutputKind::DBa)),
    ("g_aadag_re", Some(OutputKind::Greens)),
    ("g_aadag_im", Some(OutputKind::Greens)),
    ("g_aa_re", Some(OutputKind::Greens)),
    ("g_aa_im", Some(OutputKind::Greens)),
    ("g_badag_re", Some(OutputKind::Greens)),
    ("g_badag_im", Some(OutputKind::Greens)),
    ("g_ba_re", Some(OutputKind::Greens)),
    ("g_ba_im", Some(OutputKind::Greens)),
    ("flag", None),
];

/// Column names emitted for `spec`, in order.
pub fn column_names(spec: &SweepSpec) -> Vec<&'static str> {
    COLUMNS
        .iter()
        .filter(|(_, kind)| kind.is_none_or(|k| spec.wants(k)))
        .map(|(name, _)| *name)
        .collect()
}

fn values(pt: &ObservablePoint) -> [f64; 15] {
    let g = &pt.greens;
    [
        pt.d_as,
        pt.d_s,
        pt.rho,
        pt.r_power,
        pt.r_power_approx,
        pt.d_badag,
        pt.d_ba,
        g.g_aadag.re,
        g.g_aadag.im,
        g.g_aa.re,
        g.g_aa.im,
        g.g_badag.re,
        g.g_badag.im,
        g.g_ba.re,
        g.g_ba.im,
    ]
}

/// Fixed 17-significant-digit lowercase scientific notation.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn render_row(spec: &SweepSpec, omega: f64, point: &Result<ObservablePoint, Error>) -> String {
    let mut fields = vec![format_float(omega)];
    let data = point.as_ref().ok().map(values);
    for (k, (_, kind)) in COLUMNS[1..16].iter().enumerate() {
        if kind.is_some_and(|kind| spec.wants(kind)) {
            fields.push(data.map_or_else(|| "nan".to_string(), |d| format_float(d[k])));
        }
    }
    fields.push(
        match point {
            Ok(_) => "ok",
            Err(Error::Singular { .. }) => "singular",
            Err(_) => "error",
        }
        .to_string(),
    );
    fields.join(",")
}

fn header(spec: &SweepSpec, report: &StabilityReport) -> String {
    let p = &spec.params;
    let mut h = String::new();
    let mut line = |key: &str, value: String| {
        let _ = writeln!(h, "# {key} = {value}");
    };
    line(
        "units",
        "all rates, frequencies and amplitudes normalized to kappa".into(),
    );
    for (key, v) in [
        ("delta", p.delta),
        ("omega_m", p.omega_m),
        ("g", p.g),
        ("eps_b", p.eps_b),
        ("eps_t", p.eps_t),
        ("kappa", p.kappa),
        ("gamma_m", p.gamma_m),
        ("kappa_cp", p.kappa_cp),
        ("zeta", p.zeta.re),
        ("zeta_im", p.zeta.im),
        ("omega_min", spec.omega_min),
        ("omega_max", spec.omega_max),
    ] {
        line(key, format_float(v));
    }
    line("n_points", spec.n_points.to_string());
    line(
        "outputs",
        spec.outputs
            .iter()
            .map(|k| k.name())
            .collect::<Vec<_>>()
            .join(","),
    );
    line(
        "stability",
        if report.stable { "stable" } else { "unstable" }.into(),
    );
    line("margin", format_float(report.margin));
    line(
        "eigenvalues",
        report
            .eigenvalues
            .iter()
            .map(|z| format!("{}{:+.16e}i", format_float(z.re), z.im))
            .collect::<Vec<_>>()
            .join(" "),
    );
    h
}

/// Worker count from [`THREADS_VAR`]; `None` leaves rayon's default.
pub fn thread_limit() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_VAR} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

/// Evaluates every grid point of `spec` and renders the CSV document.
///
/// Rows are computed in parallel and assembled in grid order, so the output
/// does not depend on scheduling. A singular grid point yields a flagged
/// row of `nan` values and the sweep continues.
pub fn run_sweep(spec: &SweepSpec) -> CliResult<String> {
    spec.validate()?;
    let report = stability(&spec.params)?;
    let grid = spec.grid();
    let evaluate = || -> Vec<String> {
        grid.par_iter()
            .map(|&w| render_row(spec, w, &spectral_and_reflection(&spec.params, w)))
            .collect()
    };
    let rows = match thread_limit()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Numeric(format!("thread pool: {e}")))?
            .install(evaluate),
        None => evaluate(),
    };

    let mut out = header(spec, &report);
    out.push_str(&column_names(spec).join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use omlrt_core::SystemParams;

    fn data_rows(csv: &str) -> Vec<Vec<String>> {
        csv.lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .map(|l| l.split(',').map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(format_float(0.25), "2.5000000000000000e-1");
        assert_eq!(format_float(-5.0), "-5.0000000000000000e0");
        assert_eq!(format_float(f64::NAN), "NaN");
    }

    #[test]
    fn full_column_set_in_order() {
        let spec = SweepSpec::new(
            4.0,
            6.0,
            5,
            SystemParams {
                g: 0.5,
                ..Default::default()
            },
        );
        let names = column_names(&spec);
        assert_eq!(names.len(), 17);
        assert_eq!(names[0], "omega_pc");
        assert_eq!(names[16], "flag");
        let csv = run_sweep(&spec).unwrap();
        assert!(csv.contains("# stability = stable"));
        let rows = data_rows(&csv);
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.len() == 17 && r[16] == "ok"));
        assert_eq!(rows[2][0], format_float(5.0));
    }

    #[test]
    fn selected_outputs_only() {
        let mut spec = SweepSpec::new(4.0, 6.0, 3, SystemParams::default());
        spec.outputs = vec![OutputKind::Rho, OutputKind::Greens];
        let names = column_names(&spec);
        assert_eq!(names.len(), 11);
        assert_eq!(names[1], "rho");
        let rows = data_rows(&run_sweep(&spec).unwrap());
        assert!(rows.iter().all(|r| r.len() == 11));
    }

    #[test]
    fn singular_point_is_flagged() {
        let p = SystemParams::default();
        let point = Err(Error::Singular {
            omega: 5.0,
            what: "test",
        });
        let row = render_row(&SweepSpec::new(4.0, 6.0, 3, p), 5.0, &point);
        assert!(row.ends_with(",singular"));
        assert_eq!(row.matches("nan").count(), 15);
    }

    #[test]
    fn output_is_deterministic() {
        let spec = SweepSpec::new(
            -8.0,
            -2.0,
            101,
            SystemParams {
                g: 0.5,
                delta: -5.0,
                ..Default::default()
            },
        );
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("# stability = unstable"));
    }
}
