//! Run configuration: experiment presets overlaid with a strict TOML file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assembly::DEFAULT_SIGMA_IP;
use crate::error::{Error, Result};
use crate::linsolve::SolverKind;
use crate::model::{Material3D, ModelCoefficients, BEREA_SANDSTONE, COPPER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Smooth manufactured solution on the unit square.
    Smooth,
    /// Corner-singular manufactured solution on the L-shaped domain.
    Lshape,
    /// Copper plate, thermoelastic diffusion.
    Example1Ted,
    /// Berea sandstone plate, thermo-poroelasticity.
    Example1Tpe,
    /// Smooth manufactured solution with user-supplied coefficients.
    Custom,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Smooth => "smooth",
            Experiment::Lshape => "lshape",
            Experiment::Example1Ted => "example1-ted",
            Experiment::Example1Tpe => "example1-tpe",
            Experiment::Custom => "custom",
        }
    }

    pub fn is_convergence(self) -> bool {
        matches!(self, Experiment::Smooth | Experiment::Lshape | Experiment::Custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DtPolicy {
    /// `dt = refine_factor * h`, rounded so that it divides the final time.
    Refined,
    /// `dt` as given.
    Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    /// Subdivisions per unit length, strictly increasing.
    pub levels: Vec<usize>,
    /// Appended to `levels` when the extended sweep is requested.
    pub extended_levels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub final_time: f64,
    pub policy: DtPolicy,
    /// Step for the fixed policy.
    pub dt: f64,
    /// `dt / h` for the refined policy.
    pub refine_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    /// Field snapshots every `snapshots` steps; 0 disables them.
    pub snapshots: usize,
    /// Coordinate-format dumps of the coarsest level's operators.
    pub export_matrices: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Example1Config {
    pub material: Material3D,
    pub thickness: f64,
    /// Observation cell `[x0, x1, y0, y1]`.
    pub cell: [f64; 4],
    pub mesh_level: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyConfig {
    pub mesh_level: usize,
    pub steps: usize,
    pub dt: f64,
    pub seed: u64,
    /// Defaults to `sqrt(a2 / a1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<f64>,
    pub c_coer: f64,
    /// Allowed growth `max E / E(1)`.
    pub growth_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    /// Sign of the coupling coefficient for the manufactured studies.
    pub gamma: f64,
    pub sigma_ip: f64,
    pub solver: SolverKind,
    pub mesh: MeshConfig,
    pub time: TimeConfig,
    pub output: OutputConfig,
    pub energy: EnergyConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example1: Option<Example1Config>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<ModelCoefficients>,
}

impl RunConfig {
    pub fn preset(experiment: Experiment) -> Self {
        let mut cfg = Self {
            experiment,
            gamma: -1.0,
            sigma_ip: DEFAULT_SIGMA_IP,
            solver: SolverKind::Direct,
            mesh: MeshConfig { levels: vec![4, 8, 16, 32], extended_levels: vec![64, 128] },
            time: TimeConfig { final_time: 1.0, policy: DtPolicy::Refined, dt: 0.25, refine_factor: 2f64.powf(-1.5) },
            output: OutputConfig { dir: PathBuf::from("out").join(experiment.name()), snapshots: 0, export_matrices: true },
            energy: EnergyConfig {
                mesh_level: 16,
                steps: 200,
                dt: 1.0 / 32.0,
                seed: 2024,
                gamma0: None,
                c_coer: 1.0,
                growth_bound: 10.0,
            },
            example1: None,
            coefficients: None,
        };
        match experiment {
            Experiment::Smooth => {}
            Experiment::Custom => cfg.coefficients = Some(ModelCoefficients::smooth_study(-1.0)),
            Experiment::Lshape => {
                cfg.mesh = MeshConfig { levels: vec![2, 4, 8, 16, 32], extended_levels: vec![64] };
                cfg.time.policy = DtPolicy::Fixed;
                cfg.time.dt = 0.25;
            }
            Experiment::Example1Ted | Experiment::Example1Tpe => {
                let ted = experiment == Experiment::Example1Ted;
                cfg.mesh = MeshConfig { levels: vec![64], extended_levels: vec![] };
                cfg.time = TimeConfig {
                    final_time: if ted { 10.0 } else { 100.0 },
                    policy: DtPolicy::Fixed,
                    dt: if ted { 0.125 } else { 1.25 },
                    refine_factor: 2f64.powf(-1.5),
                };
                cfg.example1 = Some(Example1Config {
                    material: if ted { Material3D::Ted(COPPER) } else { Material3D::Tpe(BEREA_SANDSTONE) },
                    thickness: 0.5,
                    cell: [5.0 / 64.0, 6.0 / 64.0, 5.0 / 64.0, 6.0 / 64.0],
                    mesh_level: 64,
                });
            }
        }
        cfg
    }

    /// Parse TOML text: the `experiment` key picks the preset, every other
    /// key overrides it.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        let experiment = match file.get("experiment") {
            None => Experiment::Smooth,
            Some(v) => v.clone().try_into().map_err(|e: toml::de::Error| Error::Config(format!("experiment: {e}")))?,
        };
        let mut merged = toml::Table::try_from(Self::preset(experiment)).map_err(|e| Error::Config(e.to_string()))?;
        if file.contains_key("example1") && !merged.contains_key("example1") {
            return Err(Error::Config(format!("[example1] is not used by experiment `{}`", experiment.name())));
        }
        merge(&mut merged, file);
        let cfg: Self = toml::Value::Table(merged).try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is representable")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, why: String| Err(Error::Config(format!("{key}: {why}")));
        if self.gamma != 1.0 && self.gamma != -1.0 {
            return bad("gamma", format!("must be +1 or -1, got {}", self.gamma));
        }
        if !(self.sigma_ip > 0.0 && self.sigma_ip.is_finite()) {
            return bad("sigma_ip", format!("must be positive, got {}", self.sigma_ip));
        }
        for (key, levels) in [("mesh.levels", &self.mesh.levels), ("mesh.extended_levels", &self.mesh.extended_levels)] {
            if levels.contains(&0) {
                return bad(key, "levels must be positive".into());
            }
            if levels.windows(2).any(|w| w[1] <= w[0]) {
                return bad(key, format!("levels must be strictly increasing, got {levels:?}"));
            }
        }
        if self.mesh.levels.is_empty() {
            return bad("mesh.levels", "at least one level is required".into());
        }
        let t = &self.time;
        if !(t.final_time > 0.0 && t.final_time.is_finite()) {
            return bad("time.final_time", format!("must be positive, got {}", t.final_time));
        }
        if !(t.dt > 0.0) {
            return bad("time.dt", format!("must be positive, got {}", t.dt));
        }
        if !(t.refine_factor > 0.0) {
            return bad("time.refine_factor", format!("must be positive, got {}", t.refine_factor));
        }
        let e = &self.energy;
        if e.steps < 2 || e.mesh_level == 0 || !(e.dt > 0.0) || !(e.c_coer > 0.0) || !(e.growth_bound > 0.0) {
            return bad("energy", "mesh_level > 0, steps >= 2 and positive dt, c_coer, growth_bound required".into());
        }
        if let Some(x) = &self.example1 {
            if !(x.thickness > 0.0) {
                return bad("example1.thickness", format!("must be positive, got {}", x.thickness));
            }
            let [x0, x1, y0, y1] = x.cell;
            if !(0.0 <= x0 && x0 < x1 && x1 <= 1.0 && 0.0 <= y0 && y0 < y1 && y1 <= 1.0) {
                return bad("example1.cell", format!("must be a nonempty rectangle inside the unit square, got {:?}", x.cell));
            }
            if x.mesh_level == 0 {
                return bad("example1.mesh_level", "must be positive".into());
            }
            x.material.coefficients(x.thickness)?.validate()?;
        }
        match (self.experiment, &self.coefficients) {
            (Experiment::Custom, None) => return bad("coefficients", "required by the custom experiment".into()),
            (Experiment::Custom, Some(c)) => {
                c.validate()?;
                c.check_coupling()?;
            }
            (_, Some(_)) => return bad("coefficients", "only used by the custom experiment".into()),
            _ => {}
        }
        Ok(())
    }

    /// Levels of the sweep, with the extended tail (past the last base
    /// level) when requested.
    pub fn sweep_levels(&self, extended: bool) -> Vec<usize> {
        let mut levels = self.mesh.levels.clone();
        if extended {
            let last = levels.last().copied().unwrap_or(0);
            levels.extend(self.mesh.extended_levels.iter().filter(|&&n| n > last));
        }
        levels
    }

    /// Coefficients of the configured problem.
    pub fn model_coefficients(&self) -> Result<ModelCoefficients> {
        match (self.experiment, &self.example1, &self.coefficients) {
            (Experiment::Custom, _, Some(c)) => Ok(*c),
            (Experiment::Example1Ted | Experiment::Example1Tpe, Some(x), _) => x.material.coefficients(x.thickness),
            (Experiment::Smooth | Experiment::Lshape, _, _) => Ok(ModelCoefficients::smooth_study(self.gamma)),
            _ => Err(Error::Config(format!("incomplete configuration for `{}`", self.experiment.name()))),
        }
    }
}

/// Recursive table overlay; arrays and scalars are replaced wholesale.
fn merge(base: &mut toml::Table, overlay: toml::Table) {
    for (k, v) in overlay {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) if !is_variant_table(b) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// Tagged enums (materials, solver settings) are replaced, not merged, so
/// switching the tag does not leave stale fields behind.
fn is_variant_table(t: &toml::Table) -> bool {
    t.contains_key("model") || t.contains_key("gmres")
}
