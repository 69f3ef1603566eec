//! Sweep specifications and the named parameter sets of the published figures.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// One observable column group of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutputKind {
    DAs,
    DS,
    Rho,
    RPower,
    RPowerApprox,
    DBadag,
    DBa,
    Greens,
}

impl OutputKind {
    pub const ALL: [OutputKind; 8] = [
        OutputKind::DAs,
        OutputKind::DS,
        OutputKind::Rho,
        OutputKind::RPower,
        OutputKind::RPowerApprox,
        OutputKind::DBadag,
        OutputKind::DBa,
        OutputKind::Greens,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputKind::DAs => "d_as",
            OutputKind::DS => "d_s",
            OutputKind::Rho => "rho",
            OutputKind::RPower => "r_power",
            OutputKind::RPowerApprox => "r_power_approx",
            OutputKind::DBadag => "d_badag",
            OutputKind::DBa => "d_ba",
            OutputKind::Greens => "greens",
        }
    }
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OutputKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSweep(format!("unknown output `{s}`")))
    }
}

/// A uniform frequency sweep over one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_points: usize,
    pub params: SystemParams,
    /// Requested outputs, sorted and deduplicated by the constructors.
    pub outputs: Vec<OutputKind>,
}

impl SweepSpec {
    pub fn new(omega_min: f64, omega_max: f64, n_points: usize, params: SystemParams) -> Self {
        Self {
            omega_min,
            omega_max,
            n_points,
            params,
            outputs: OutputKind::ALL.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_min.is_finite() && self.omega_max.is_finite()) {
            return Err(Error::InvalidSweep("sweep bounds must be finite".into()));
        }
        if !(self.omega_min < self.omega_max) {
            return Err(Error::InvalidSweep(format!(
                "omega_min ({}) must be < omega_max ({})",
                self.omega_min, self.omega_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidSweep(format!(
                "n_points ({}) must be >= 2",
                self.n_points
            )));
        }
        if self.outputs.is_empty() {
            return Err(Error::InvalidSweep("no outputs requested".into()));
        }
        self.params.ensure_valid()
    }

    /// Grid point `k`. Both end points are hit exactly.
    pub fn point(&self, k: usize) -> f64 {
        if k + 1 == self.n_points {
            return self.omega_max;
        }
        let frac = k as f64 / (self.n_points - 1) as f64;
        self.omega_min + (self.omega_max - self.omega_min) * frac
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.point(k)).collect()
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }
}

/// A named figure parameter set together with its default sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    /// Name of this variant, e.g. `fig2` or `fig2-rwa`.
    pub name: String,
    pub spec: SweepSpec,
}

pub const PRESET_NAMES: [&str; 7] = [
    "fig2",
    "fig3-red",
    "fig3-blue",
    "fig4-red",
    "fig4-blue",
    "fig6-red",
    "fig6-blue",
];

const OMEGA_M: f64 = 5.0;
const GAMMA_M: f64 = 1e-4;
const KAPPA_CP: f64 = 0.25;

fn caption_params(g: f64, delta: f64, eps_t: f64) -> SystemParams {
    SystemParams {
        delta,
        omega_m: OMEGA_M,
        g,
        eps_b: 1.0,
        eps_t,
        kappa: 1.0,
        gamma_m: GAMMA_M,
        kappa_cp: KAPPA_CP,
        ..SystemParams::default()
    }
}

fn wide(name: &str, p: SystemParams) -> FigurePreset {
    let centre = p.delta.signum() * p.omega_m;
    FigurePreset {
        name: name.to_string(),
        spec: SweepSpec::new(centre - 3.0, centre + 3.0, 4001, p),
    }
}

fn narrow(name: &str, p: SystemParams) -> FigurePreset {
    let centre = p.delta.signum() * p.omega_m;
    FigurePreset {
        name: name.to_string(),
        spec: SweepSpec::new(centre - 0.2, centre + 0.2, 8001, p),
    }
}

impl FigurePreset {
    /// All variants of the named preset. `fig2` yields both the full
    /// interaction and the rotating-wave variant `fig2-rwa` (`eps_t = 0`);
    /// every other name yields a single set.
    pub fn resolve(name: &str) -> Result<Vec<FigurePreset>> {
        let presets = match name {
            "fig2" => vec![
                wide("fig2", caption_params(2.0, OMEGA_M, 1.0)),
                wide("fig2-rwa", caption_params(2.0, OMEGA_M, 0.0)),
            ],
            "fig2-rwa" => vec![wide("fig2-rwa", caption_params(2.0, OMEGA_M, 0.0))],
            "fig3-red" => vec![wide(name, caption_params(0.5, OMEGA_M, 1.0))],
            "fig3-blue" => vec![wide(name, caption_params(0.5, -OMEGA_M, 1.0))],
            "fig4-red" => vec![narrow(name, caption_params(0.005, OMEGA_M, 1.0))],
            "fig4-blue" => vec![narrow(name, caption_params(0.005, -OMEGA_M, 1.0))],
            "fig6-red" => vec![wide(name, caption_params(0.5, OMEGA_M, 1.0))],
            "fig6-blue" => vec![wide(name, caption_params(0.5, -OMEGA_M, 1.0))],
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        Ok(presets)
    }

    /// The first (primary) variant of the named preset.
    pub fn get(name: &str) -> Result<FigurePreset> {
        Ok(Self::resolve(name)?.remove(0))
    }

    /// Every variant of every preset, `fig2-rwa` included.
    pub fn all() -> Vec<FigurePreset> {
        PRESET_NAMES
            .iter()
            .flat_map(|n| Self::resolve(n).expect("built-in preset"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caption_values_are_exact() {
        for preset in FigurePreset::all() {
            let p = preset.spec.params;
            assert_eq!(p.omega_m, 5.0);
            assert_eq!(p.gamma_m, 1e-4);
            assert_eq!(p.kappa_cp, 0.25);
            assert_eq!(p.kappa, 1.0);
            assert_eq!(p.delta.abs(), p.omega_m);
            assert_eq!(p.eps_b, 1.0);
            let g = match &preset.name[..4] {
                "fig2" => 2.0,
                "fig4" => 0.005,
                _ => 0.5,
            };
            assert_eq!(p.g, g, "{}", preset.name);
            assert_eq!(p.delta > 0.0, !preset.name.ends_with("blue"));
            assert_eq!(p.eps_t, if preset.name == "fig2-rwa" { 0.0 } else { 1.0 });
            preset.spec.validate().unwrap();
        }
        assert_eq!(FigurePreset::all().len(), 8);
    }

    #[test]
    fn default_grids() {
        let fig2 = FigurePreset::get("fig2").unwrap().spec;
        assert_eq!(
            (fig2.omega_min, fig2.omega_max, fig2.n_points),
            (2.0, 8.0, 4001)
        );
        let blue = FigurePreset::get("fig3-blue").unwrap().spec;
        assert_eq!((blue.omega_min, blue.omega_max), (-8.0, -2.0));
        let fig4 = FigurePreset::get("fig4-red").unwrap().spec;
        assert_eq!(fig4.n_points, 8001);
        assert_eq!((fig4.omega_min, fig4.omega_max), (4.8, 5.2));
        let grid = fig4.grid();
        assert_eq!(grid[4000], 5.0);
        assert_eq!(*grid.last().unwrap(), 5.2);
    }

    #[test]
    fn unknown_preset_is_rejected() {
        assert!(matches!(
            FigurePreset::resolve("fig5"),
            Err(Error::UnknownPreset(_))
        ));
    }

    #[test]
    fn invalid_sweeps_are_rejected() {
        let p = SystemParams::default();
        assert!(SweepSpec::new(1.0, 1.0, 10, p).validate().is_err());
        assert!(SweepSpec::new(2.0, 1.0, 10, p).validate().is_err());
        assert!(SweepSpec::new(0.0, 1.0, 1, p).validate().is_err());
        assert!(SweepSpec::new(0.0, f64::NAN, 10, p).validate().is_err());
        let minimal = SweepSpec::new(0.0, 1.0, 2, p);
        minimal.validate().unwrap();
        assert_eq!(minimal.grid(), vec![0.0, 1.0]);
    }

    #[test]
    fn output_names_round_trip() {
        for k in OutputKind::ALL {
            assert_eq!(k.name().parse::<OutputKind>().unwrap(), k);
        }
        assert!("bogus".parse::<OutputKind>().is_err());
    }
}
