//! `key = value` parameter files.
//!
//! Keys are the [`SystemParams`] fields (`zeta` is the real part of the
//! probe amplitude, `zeta_im` its imaginary part) plus the sweep fields
//! `omega_min`, `omega_max`, `n_points` and `outputs` (comma separated).
//! An optional `preset` key starts from a figure preset instead of the
//! defaults. `#` starts a comment. Unknown or repeated keys are errors.
//! Values in units other than κ are rescaled so that κ = 1.

use std::collections::BTreeMap;
use std::path::Path;

use omlrt_core::{Complex64, FigurePreset, OutputKind, SweepSpec, SystemParams};

use crate::{CliError, CliResult};

const KEYS: [&str; 15] = [
    "preset",
    "delta",
    "omega_m",
    "g",
    "eps_b",
    "eps_t",
    "kappa",
    "gamma_m",
    "kappa_cp",
    "zeta",
    "zeta_im",
    "omega_min",
    "omega_max",
    "n_points",
    "outputs",
];

fn usage(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("line {line}: {msg}"))
}

/// Parses a parameter file into a validated, κ-normalized sweep.
pub fn parse_config(text: &str) -> CliResult<SweepSpec> {
    let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| usage(line, format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(usage(line, format!("unknown key `{key}`")));
        }
        if value.is_empty() {
            return Err(usage(line, format!("missing value for `{key}`")));
        }
        if let Some((first, _)) = entries.insert(key, (line, value)) {
            return Err(usage(line, format!("`{key}` already set on line {first}")));
        }
    }

    let number = |key: &str| -> CliResult<Option<f64>> {
        entries
            .get(key)
            .map(|&(line, v)| {
                v.parse::<f64>()
                    .map_err(|_| usage(line, format!("`{key}`: `{v}` is not a number")))
            })
            .transpose()
    };

    let base = match entries.get("preset") {
        Some(&(line, name)) => FigurePreset::get(name).map_err(|e| usage(line, e))?.spec,
        None => {
            let p = SystemParams::default();
            let centre = p.delta.signum() * p.omega_m;
            SweepSpec::new(centre - 3.0, centre + 3.0, 4001, p)
        }
    };

    let mut p = base.params;
    for (key, slot) in [
        ("delta", &mut p.delta),
        ("omega_m", &mut p.omega_m),
        ("g", &mut p.g),
        ("eps_b", &mut p.eps_b),
        ("eps_t", &mut p.eps_t),
        ("kappa", &mut p.kappa),
        ("gamma_m", &mut p.gamma_m),
        ("kappa_cp", &mut p.kappa_cp),
    ] {
        if let Some(v) = number(key)? {
            *slot = v;
        }
    }
    let zeta_re = number("zeta")?.unwrap_or(p.zeta.re);
    let zeta_im = number("zeta_im")?.unwrap_or(p.zeta.im);
    p.zeta = Complex64::new(zeta_re, zeta_im);

    let mut spec = SweepSpec { params: p, ..base };
    if let Some(v) = number("omega_min")? {
        spec.omega_min = v;
    }
    if let Some(v) = number("omega_max")? {
        spec.omega_max = v;
    }
    if let Some(&(line, v)) = entries.get("n_points") {
        spec.n_points = v.parse().map_err(|_| {
            usage(
                line,
                format!("`n_points`: `{v}` is not a non-negative integer"),
            )
        })?;
    }
    if let Some(&(line, v)) = entries.get("outputs") {
        let mut outputs = v
            .split(',')
            .map(|s| s.trim().parse::<OutputKind>().map_err(|e| usage(line, e)))
            .collect::<CliResult<Vec<_>>>()?;
        outputs.sort();
        outputs.dedup();
        spec.outputs = outputs;
    }

    if !(p.kappa > 0.0 && p.kappa.is_finite()) {
        return Err(CliError::Usage(format!(
            "kappa must be > 0, got {}",
            p.kappa
        )));
    }
    let k = p.kappa;
    spec.params = p.normalized();
    spec.omega_min /= k;
    spec.omega_max /= k;
    spec.validate()?;
    Ok(spec)
}

pub fn load_config(path: &Path) -> CliResult<SweepSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let spec = parse_config("# comment only\ng = 0.5   # trailing\nn_points = 11\n").unwrap();
        assert_eq!(spec.params.g, 0.5);
        assert_eq!(spec.params.delta, 5.0);
        assert_eq!(
            (spec.omega_min, spec.omega_max, spec.n_points),
            (2.0, 8.0, 11)
        );
        assert_eq!(spec.outputs, OutputKind::ALL.to_vec());
    }

    #[test]
    fn preset_base() {
        let spec = parse_config("preset = fig4-red\n").unwrap();
        assert_eq!(spec, FigurePreset::get("fig4-red").unwrap().spec);
        let tweaked = parse_config("preset = fig3-blue\ng = 0.25\n").unwrap();
        assert_eq!(tweaked.params.delta, -5.0);
        assert_eq!(tweaked.params.g, 0.25);
    }

    #[test]
    fn rescales_to_kappa() {
        let spec = parse_config("kappa = 2\ndelta = 10\nomega_m = 10\ng = 1\ngamma_m = 2e-4\nkappa_cp = 0.5\nomega_min = 4\nomega_max = 16\n").unwrap();
        let p = spec.params;
        assert_eq!(
            (p.kappa, p.delta, p.omega_m, p.g, p.kappa_cp),
            (1.0, 5.0, 5.0, 0.5, 0.25)
        );
        assert_eq!((spec.omega_min, spec.omega_max), (2.0, 8.0));
    }

    #[test]
    fn complex_probe_and_outputs() {
        let spec = parse_config("zeta = 0\nzeta_im = 2e-3\noutputs = rho, d_as, rho\n").unwrap();
        assert_eq!(spec.params.zeta, Complex64::new(0.0, 2e-3));
        assert_eq!(spec.outputs, vec![OutputKind::DAs, OutputKind::Rho]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "colour = red\n",
            "g = 1\ng = 2\n",
            "g 1\n",
            "g = abc\n",
            "g =\n",
            "n_points = 1\n",
            "n_points = -3\n",
            "omega_min = 9\n",
            "gamma_m = 0\n",
            "kappa = 0\n",
            "outputs = d_as, bogus\n",
            "preset = fig9\n",
        ] {
            let err = parse_config(bad).unwrap_err();
            assert!(matches!(err, CliError::Usage(_)), "{bad}: {err}");
        }
        assert!(parse_config("colour = red\n")
            .unwrap_err()
            .to_string()
            .contains("line 1"));
    }
}
