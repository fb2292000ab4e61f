//! Scenario files and the artifact runner behind the command line.
//!
//! A scenario is one TOML document: a `kind`, a `[potential]` table whose
//! required fields depend on the kind, a `[time]` grid, optional viscosity
//! lists and particle starts, and the list of artifacts to produce. The
//! loader validates everything up front and names the offending key, so a
//! broken fixture diagnoses itself. Runs are deterministic: the same file
//! always produces byte-identical artifacts, and `manifest.json` records a
//! content hash for each one.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::convex::MomentumSet;
use crate::linalg::SymMat;
use crate::potential::{
    A3EndpointModel, Branch, FiniteMinFamily, FourierSeries, HopfLaxPotential, LinearForm,
    LocalLinearModel, PotentialModel,
};
use crate::shock::{
    detect_cluster_events, render_svg, shock_diagram, NodeClass, Scene, SceneParticle, SvgStyle,
};
use crate::trajectory::{integrate, LimitTrajectory};
use crate::viscous::ViscousSolution;
use crate::{Error, Result};

/// Which simulation a scenario file drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScenarioKind {
    /// One-dimensional Hopf–Lax potential built from Fourier initial data.
    HopfLax1D,
    /// Planar local model: finitely many momenta meeting at a point.
    LocalModel,
    /// Explicit finite family of exact solutions (affine/parabolic branches).
    FiniteMinFamily,
    /// Quartic normal form at an end point of the shock.
    A3,
    /// Viscous-against-limit comparison on Fourier initial data.
    ConvergenceStudy,
}

impl ScenarioKind {
    fn name(self) -> &'static str {
        match self {
            ScenarioKind::HopfLax1D => "HopfLax1D",
            ScenarioKind::LocalModel => "LocalModel",
            ScenarioKind::FiniteMinFamily => "FiniteMinFamily",
            ScenarioKind::A3 => "A3",
            ScenarioKind::ConvergenceStudy => "ConvergenceStudy",
        }
    }
}

/// Time grid of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t0: f64,
    pub t_end: f64,
    pub step: f64,
}

/// Artifacts a run may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Csv,
    Svg,
    Report,
}

/// One closed-form branch of a [`FiniteMinFamily`] scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "type", rename_all = "snake_case")]
pub enum BranchSpec {
    Affine { momentum: Vec<f64>, offset: f64 },
    Parabolic { vertex: Vec<f64>, birth: f64, offset: f64 },
}

/// A linear functional on space-time offsets, written out in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub space: Vec<f64>,
    pub time: f64,
}

impl FormSpec {
    fn to_form(&self) -> LinearForm {
        LinearForm {
            space: self.space.clone(),
            time: self.time,
        }
    }
}

/// Coefficient blocks of the quartic normal form at a shock end point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct A3Spec {
    /// Quartic coefficient of the flat direction.
    pub a4: f64,
    /// Mixed flat²–transverse coefficients (one per transverse direction).
    pub ab: Vec<f64>,
    /// Transverse quadratic block, row by row.
    pub bb: Vec<Vec<f64>>,
    /// Tangent momentum of the end-point trajectory.
    pub p_star: Vec<f64>,
    pub alpha: FormSpec,
    pub beta: FormSpec,
    pub gamma: Vec<FormSpec>,
}

/// Potential data; which fields are required depends on the scenario kind.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSpec {
    /// Period of the Fourier initial data (HopfLax1D, ConvergenceStudy).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
    /// Mean of the Fourier initial data; defaults to zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean: Option<f64>,
    /// Cosine coefficients of the Fourier initial data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cos: Option<Vec<f64>>,
    /// Sine coefficients of the Fourier initial data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sin: Option<Vec<f64>>,
    /// Momentum rows of a local model (LocalModel).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub momenta: Option<Vec<Vec<f64>>>,
    /// Constant force term (LocalModel, FiniteMinFamily); defaults to zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub force: Option<f64>,
    /// Solution branches (FiniteMinFamily).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<BranchSpec>>,
    /// Normal-form blocks (A3).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a3: Option<A3Spec>,
}

/// One parsed scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    /// Viscosities for a ConvergenceStudy, strictly decreasing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_list: Option<Vec<f64>>,
    /// Initial particle positions, one row per particle.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub particles: Vec<Vec<f64>>,
    /// Which artifacts to write.
    pub outputs: Vec<OutputKind>,
    /// Shock-diagram offsets τ to draw, one SVG each (LocalModel only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg_times: Option<Vec<f64>>,
    pub time: TimeGrid,
    pub potential: PotentialSpec,
}

fn bad(path: &str, message: impl Into<String>) -> Error {
    Error::InvalidConfig {
        path: path.into(),
        message: message.into(),
    }
}

fn finite_vec(path: &str, v: &[f64]) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(bad(path, "entries must be finite numbers"));
    }
    Ok(())
}

impl ScenarioConfig {
    /// Parses a TOML document; syntax problems surface as config errors.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| bad("<document>", e.to_string()))
    }

    /// Serializes back to TOML. Round-trips exactly: parsing the output
    /// yields a config equal to `self`.
    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Io(e.to_string()))
    }

    /// Reads, parses, and validates a scenario file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad("<file>", format!("{}: {e}", path.display())))?;
        let config = Self::from_toml_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    /// Checks every invariant the runner relies on and names the offending
    /// key on failure.
    pub fn validate(&self) -> Result<()> {
        let t = &self.time;
        if !(t.step > 0.0) || !t.step.is_finite() {
            return Err(bad("time.step", format!("must be positive, got {}", t.step)));
        }
        if !t.t0.is_finite() || !t.t_end.is_finite() || t.t_end < t.t0 {
            return Err(bad(
                "time",
                format!("need finite t0 <= t_end, got {} and {}", t.t0, t.t_end),
            ));
        }
        if self.outputs.is_empty() {
            return Err(bad("outputs", "at least one artifact must be requested"));
        }
        for (i, o) in self.outputs.iter().enumerate() {
            if self.outputs[..i].contains(o) {
                return Err(bad("outputs", format!("repeated entry {o:?}")));
            }
        }
        let wants_svg = self.outputs.contains(&OutputKind::Svg);
        if wants_svg && self.kind != ScenarioKind::LocalModel {
            return Err(bad(
                "outputs",
                "svg is only available for LocalModel scenarios (planar shock diagrams)",
            ));
        }
        if self.svg_times.is_some() && !wants_svg {
            return Err(bad("svg_times", "given, but outputs does not list \"svg\""));
        }
        if let Some(times) = &self.svg_times {
            if times.is_empty() {
                return Err(bad("svg_times", "must list at least one offset"));
            }
            if times.iter().any(|v| !v.is_finite() || *v == 0.0) {
                return Err(bad("svg_times", "offsets must be finite and nonzero"));
            }
        }

        match (&self.nu_list, self.kind) {
            (None, ScenarioKind::ConvergenceStudy) => {
                return Err(bad("nu_list", "required for ConvergenceStudy"));
            }
            (Some(_), k) if k != ScenarioKind::ConvergenceStudy => {
                return Err(bad("nu_list", "only used by ConvergenceStudy"));
            }
            (Some(nus), _) => {
                if nus.is_empty() {
                    return Err(bad("nu_list", "must list at least one viscosity"));
                }
                finite_vec("nu_list", nus)?;
                if nus.iter().any(|v| *v <= 0.0) {
                    return Err(bad("nu_list", "viscosities must be positive"));
                }
                if nus.windows(2).any(|w| w[1] >= w[0]) {
                    return Err(bad("nu_list", "viscosities must strictly decrease"));
                }
            }
            (None, _) => {}
        }

        for (i, p) in self.particles.iter().enumerate() {
            finite_vec(&format!("particles[{i}]"), p)?;
        }

        self.validate_potential()?;
        self.validate_particle_dims()
    }

    fn validate_potential(&self) -> Result<()> {
        let pot = &self.potential;
        let forbid = |field: &str, present: bool| -> Result<()> {
            if present {
                return Err(bad(
                    &format!("potential.{field}"),
                    format!("not used by {} scenarios", self.kind.name()),
                ));
            }
            Ok(())
        };
        let fourier_kind = matches!(
            self.kind,
            ScenarioKind::HopfLax1D | ScenarioKind::ConvergenceStudy
        );
        if !fourier_kind {
            forbid("period", pot.period.is_some())?;
            forbid("mean", pot.mean.is_some())?;
            forbid("cos", pot.cos.is_some())?;
            forbid("sin", pot.sin.is_some())?;
        }
        if self.kind != ScenarioKind::LocalModel {
            forbid("momenta", pot.momenta.is_some())?;
        }
        if self.kind != ScenarioKind::FiniteMinFamily {
            forbid("branches", pot.branches.is_some())?;
        }
        if !matches!(
            self.kind,
            ScenarioKind::LocalModel | ScenarioKind::FiniteMinFamily
        ) {
            forbid("force", pot.force.is_some())?;
        }
        if self.kind != ScenarioKind::A3 {
            forbid("a3", pot.a3.is_some())?;
        }

        match self.kind {
            ScenarioKind::HopfLax1D | ScenarioKind::ConvergenceStudy => {
                let period = pot
                    .period
                    .ok_or_else(|| bad("potential.period", "required for Fourier initial data"))?;
                if !(period > 0.0) || !period.is_finite() {
                    return Err(bad("potential.period", "must be positive"));
                }
                if let Some(c) = &pot.cos {
                    finite_vec("potential.cos", c)?;
                }
                if let Some(s) = &pot.sin {
                    finite_vec("potential.sin", s)?;
                }
                if let Some(m) = pot.mean {
                    if !m.is_finite() {
                        return Err(bad("potential.mean", "must be finite"));
                    }
                }
            }
            ScenarioKind::LocalModel => {
                let momenta = pot
                    .momenta
                    .as_ref()
                    .ok_or_else(|| bad("potential.momenta", "required for LocalModel"))?;
                if momenta.len() < 2 {
                    return Err(bad("potential.momenta", "need at least two momenta"));
                }
                let dim = momenta[0].len();
                for (i, row) in momenta.iter().enumerate() {
                    let path = format!("potential.momenta[{i}]");
                    finite_vec(&path, row)?;
                    if row.len() != dim {
                        return Err(bad(&path, "rows must share one dimension"));
                    }
                }
                if self.outputs.contains(&OutputKind::Svg) && dim != 2 {
                    return Err(bad(
                        "outputs",
                        "svg requires planar momenta (two components per row)",
                    ));
                }
            }
            ScenarioKind::FiniteMinFamily => {
                let branches = pot
                    .branches
                    .as_ref()
                    .ok_or_else(|| bad("potential.branches", "required for FiniteMinFamily"))?;
                if branches.is_empty() {
                    return Err(bad("potential.branches", "need at least one branch"));
                }
                for (i, b) in branches.iter().enumerate() {
                    let path = format!("potential.branches[{i}]");
                    match b {
                        BranchSpec::Affine { momentum, offset } => {
                            finite_vec(&path, momentum)?;
                            if !offset.is_finite() {
                                return Err(bad(&path, "offset must be finite"));
                            }
                        }
                        BranchSpec::Parabolic {
                            vertex,
                            birth,
                            offset,
                        } => {
                            finite_vec(&path, vertex)?;
                            if !birth.is_finite() || !offset.is_finite() {
                                return Err(bad(&path, "birth and offset must be finite"));
                            }
                        }
                    }
                }
            }
            ScenarioKind::A3 => {
                if pot.a3.is_none() {
                    return Err(bad("potential.a3", "required for A3"));
                }
                if !self.particles.is_empty() {
                    return Err(bad(
                        "particles",
                        "not used by A3 scenarios (the end-point ray is built in)",
                    ));
                }
            }
        }
        if let Some(f) = pot.force {
            if !f.is_finite() {
                return Err(bad("potential.force", "must be finite"));
            }
        }
        Ok(())
    }

    fn validate_particle_dims(&self) -> Result<()> {
        let dim = match self.kind {
            ScenarioKind::HopfLax1D | ScenarioKind::ConvergenceStudy => 1,
            ScenarioKind::LocalModel => self
                .potential
                .momenta
                .as_ref()
                .map(|m| m[0].len())
                .unwrap_or(0),
            ScenarioKind::FiniteMinFamily => match self.potential.branches.as_deref() {
                Some([BranchSpec::Affine { momentum, .. }, ..]) => momentum.len(),
                Some([BranchSpec::Parabolic { vertex, .. }, ..]) => vertex.len(),
                _ => 0,
            },
            ScenarioKind::A3 => return Ok(()),
        };
        for (i, p) in self.particles.iter().enumerate() {
            if p.len() != dim {
                return Err(bad(
                    &format!("particles[{i}]"),
                    format!("expected {dim} components, got {}", p.len()),
                ));
            }
        }
        Ok(())
    }

    fn fourier(&self) -> Result<FourierSeries> {
        let pot = &self.potential;
        FourierSeries::new(
            pot.period.expect("validated"),
            pot.mean.unwrap_or(0.0),
            pot.cos.clone().unwrap_or_default(),
            pot.sin.clone().unwrap_or_default(),
        )
    }

    fn local_model(&self) -> Result<LocalLinearModel> {
        let rows = self.potential.momenta.as_ref().expect("validated");
        LocalLinearModel::new(MomentumSet::from_rows(rows)?, self.potential.force.unwrap_or(0.0))
    }

    fn min_family(&self) -> Result<FiniteMinFamily> {
        let branches = self
            .potential
            .branches
            .as_ref()
            .expect("validated")
            .iter()
            .map(|b| match b {
                BranchSpec::Affine { momentum, offset } => Branch::Affine {
                    momentum: momentum.clone(),
                    offset: *offset,
                },
                BranchSpec::Parabolic {
                    vertex,
                    birth,
                    offset,
                } => Branch::Parabolic {
                    vertex: vertex.clone(),
                    birth: *birth,
                    offset: *offset,
                },
            })
            .collect();
        FiniteMinFamily::new(branches, self.potential.force.unwrap_or(0.0))
    }

    fn a3_model(&self) -> Result<A3EndpointModel> {
        let spec = self.potential.a3.as_ref().expect("validated");
        let k = spec.bb.len();
        let mut rows = Vec::with_capacity(k * k);
        for row in &spec.bb {
            if row.len() != k {
                return Err(bad("potential.a3.bb", "must be a square matrix"));
            }
            rows.extend_from_slice(row);
        }
        A3EndpointModel::new(
            spec.a4,
            spec.ab.clone(),
            SymMat::from_rows(k, &rows)?,
            spec.alpha.to_form(),
            spec.beta.to_form(),
            spec.gamma.iter().map(FormSpec::to_form).collect(),
            spec.p_star.clone(),
        )
    }
}

/// Command-line overrides applied on top of a scenario file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    /// Replaces `time.step`.
    pub step: Option<f64>,
    /// Replaces the model's default active-momentum tolerance in report
    /// summaries (shock membership, active branch counts).
    pub tol: Option<f64>,
}

/// What a run produced, in memory; everything is also on disk.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Artifact names in the output directory, manifest included.
    pub written: Vec<String>,
    /// Named numerical invariants the run violated (empty on success).
    pub invariant_failures: Vec<String>,
    /// The report body, also written to report.json when requested.
    pub report: serde_json::Value,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Fixed CSV layout: a version comment, a header row, then one row per
/// sample with positions and velocities component by component.
fn trajectories_csv(dim: usize, tracks: &[(usize, LimitTrajectory)]) -> String {
    let mut out = String::from("# trajectories v1\n");
    out.push('t');
    out.push_str(",particle_id");
    for i in 0..dim {
        out.push_str(&format!(",x{i}"));
    }
    for i in 0..dim {
        out.push_str(&format!(",v{i}"));
    }
    out.push_str(",on_shock\n");
    for (id, traj) in tracks {
        for i in 0..traj.len() {
            out.push_str(&format!("{}", traj.times()[i]));
            out.push_str(&format!(",{id}"));
            for c in &traj.positions()[i] {
                out.push_str(&format!(",{c}"));
            }
            for c in &traj.velocities()[i] {
                out.push_str(&format!(",{c}"));
            }
            out.push_str(if traj.merge_flags()[i] { ",1\n" } else { ",0\n" });
        }
    }
    out
}

fn particle_summaries(tracks: &[(usize, LimitTrajectory)]) -> Vec<serde_json::Value> {
    tracks
        .iter()
        .map(|(id, traj)| {
            let (t_end, x_end) = traj.endpoint();
            serde_json::json!({
                "id": id,
                "start": traj.positions()[0],
                "end_time": t_end,
                "endpoint": x_end,
                "first_merge_time": traj.first_merge_time(),
                "velocity_bound": traj.velocity_bound(),
            })
        })
        .collect()
}

fn integrate_particles<M: PotentialModel>(
    model: &M,
    particles: &[Vec<f64>],
    time: TimeGrid,
    step: f64,
) -> Result<Vec<(usize, LimitTrajectory)>> {
    particles
        .iter()
        .enumerate()
        .map(|(id, x0)| Ok((id, integrate(model, x0, time.t0, time.t_end, step)?)))
        .collect()
}

/// Executes a validated scenario and writes its artifacts under `out_dir`.
///
/// Numerical invariant violations (a convergence table that fails to
/// decrease, an end-point tangent check that fails) do not abort the run;
/// they are reported in the outcome so the caller can exit nonzero after
/// the artifacts are on disk.
pub fn run(config: &ScenarioConfig, out_dir: &Path, overrides: &Overrides) -> Result<RunOutcome> {
    config.validate()?;
    let step = overrides.step.unwrap_or(config.time.step);
    if !(step > 0.0) || !step.is_finite() {
        return Err(bad("--step", format!("must be positive, got {step}")));
    }
    if let Some(tol) = overrides.tol {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(bad("--tol", format!("must be positive, got {tol}")));
        }
    }

    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let mut failures: Vec<String> = Vec::new();
    let mut body = serde_json::Map::new();
    body.insert(
        "format".into(),
        serde_json::Value::String("adhesion report v1".into()),
    );
    body.insert(
        "kind".into(),
        serde_json::Value::String(config.kind.name().into()),
    );

    let wants = |k: OutputKind| config.outputs.contains(&k);

    match config.kind {
        ScenarioKind::HopfLax1D => {
            let model = HopfLaxPotential::new(config.fourier()?);
            let tracks = integrate_particles(&model, &config.particles, config.time, step)?;
            body.insert("particles".into(), particle_summaries(&tracks).into());
            if wants(OutputKind::Csv) {
                files.push(("trajectories.csv".into(), trajectories_csv(1, &tracks).into_bytes()));
            }
        }
        ScenarioKind::LocalModel => {
            let model = config.local_model()?;
            let tol = overrides.tol.unwrap_or(model.default_active_tol());
            let tracks = integrate_particles(&model, &config.particles, config.time, step)?;
            body.insert("particles".into(), particle_summaries(&tracks).into());
            if wants(OutputKind::Csv) {
                let dim = model.space_dim();
                files.push((
                    "trajectories.csv".into(),
                    trajectories_csv(dim, &tracks).into_bytes(),
                ));
            }
            if model.space_dim() == 2 {
                let default_times = vec![-1.0, 1.0];
                let times = config.svg_times.as_deref().unwrap_or(&default_times);
                let mut diagrams = Vec::new();
                for &tau in times {
                    let complex = shock_diagram(&model, tau)?;
                    diagrams.push(serde_json::json!({
                        "tau": tau,
                        "nonempty_cells": complex.cells.iter().filter(|c| c.nonempty).count(),
                        "edges": complex.edges.len(),
                        "nodes": complex.nodes.iter().map(|n| serde_json::json!({
                            "position": n.position,
                            "momenta": n.momenta,
                            "class": format!("{:?}", n.classification.class),
                            "trapping": n.classification.class == NodeClass::Acute,
                        })).collect::<Vec<_>>(),
                        "special_point": complex.special_point,
                    }));
                    if wants(OutputKind::Svg) {
                        let mut scene = Scene::bare(&complex).with_node_clusters();
                        if tau < 0.0 {
                            // Before the meeting time each momentum still owns
                            // a stream of matter; draw one arrow per cell,
                            // anchored at its site. Afterwards the flow is
                            // summarized by the cluster disks.
                            for (i, cell) in complex.cells.iter().enumerate() {
                                if !cell.nonempty {
                                    continue;
                                }
                                let p = model.momenta().get(i);
                                let p = p.as_slice();
                                scene.particles.push(SceneParticle {
                                    position: [tau * p[0], tau * p[1]],
                                    velocity: [p[0], p[1]],
                                });
                            }
                        }
                        for x0 in &config.particles {
                            let u = model.limit_velocity(x0, tau, tol)?;
                            scene.particles.push(SceneParticle {
                                position: [x0[0], x0[1]],
                                velocity: [u[0], u[1]],
                            });
                        }
                        let name = format!("shock_{tau:+.3}.svg");
                        files.push((name, render_svg(&scene, &SvgStyle::default()).into_bytes()));
                    }
                }
                body.insert("diagrams".into(), diagrams.into());

                if model.momenta().len() >= 3 && config.time.t0 < config.time.t_end {
                    let dt = (config.time.t_end - config.time.t0) / 64.0;
                    let scan = detect_cluster_events(
                        model.momenta(),
                        config.time.t0,
                        config.time.t_end,
                        dt,
                    )?;
                    body.insert(
                        "cluster_events".into(),
                        scan.events
                            .iter()
                            .map(|e| {
                                serde_json::json!({
                                    "kind": format!("{:?}", e.kind),
                                    "time": e.time,
                                    "location": e.location,
                                })
                            })
                            .collect::<Vec<_>>()
                            .into(),
                    );
                    body.insert(
                        "persistent_clusters".into(),
                        scan.persistent
                            .iter()
                            .map(|c| {
                                serde_json::json!({
                                    "fate": format!("{:?}", c.fate),
                                    "velocity": c.velocity,
                                    "since": c.since,
                                    "position_at_end": c.position_at_end,
                                })
                            })
                            .collect::<Vec<_>>()
                            .into(),
                    );
                }
            }
        }
        ScenarioKind::FiniteMinFamily => {
            let model = config.min_family()?;
            let tol = overrides.tol.unwrap_or(model.default_active_tol());
            let tracks = integrate_particles(&model, &config.particles, config.time, step)?;
            let mut summaries = particle_summaries(&tracks);
            for (summary, (_, traj)) in summaries.iter_mut().zip(&tracks) {
                let (t_end, x_end) = traj.endpoint();
                let active = model.active_branches(x_end, t_end, tol)?;
                summary["active_branches_at_end"] = active.into();
            }
            body.insert("particles".into(), summaries.into());
            if wants(OutputKind::Csv) {
                let dim = model.space_dim();
                files.push((
                    "trajectories.csv".into(),
                    trajectories_csv(dim, &tracks).into_bytes(),
                ));
            }
        }
        ScenarioKind::A3 => {
            let model = config.a3_model()?;
            let tol = overrides.tol.unwrap_or(1e-7);
            let diag = model.tangent_check(tol);
            if !diag.passes {
                failures.push("a3 tangent check".into());
            }
            body.insert(
                "tangent_check".into(),
                serde_json::json!({
                    "alpha_value": diag.alpha_value,
                    "beta_value": diag.beta_value,
                    "gamma_values": diag.gamma_values,
                    "transverse_det": diag.transverse_det,
                    "bordered_value": diag.bordered_value,
                    "passes": diag.passes,
                }),
            );
            // The end-point trajectory leaves along its tangent momentum;
            // sample it over (0, horizon] and check each point stays inside
            // the half hyperplane that carries the shock.
            let halfplane = model.shock_halfplane();
            let p_star = model.momentum();
            let horizon = (config.time.t_end - config.time.t0.max(0.0)).min(0.1).max(step);
            let n = ((horizon / step).round() as usize).clamp(1, 1000);
            let mut samples = Vec::with_capacity(n);
            let mut inside_everywhere = true;
            for i in 1..=n {
                let t = horizon * i as f64 / n as f64;
                let q: Vec<f64> = p_star.iter().map(|c| c * t).collect();
                let contains = halfplane.contains(&q, t, 10.0 * t * t + 1e-9);
                inside_everywhere &= contains;
                samples.push(serde_json::json!({
                    "t": t,
                    "position": q,
                    "on_shock_side": contains,
                }));
            }
            if !inside_everywhere {
                failures.push("a3 end-point trajectory leaves the shock halfplane".into());
            }
            body.insert("endpoint_ray".into(), samples.into());
        }
        ScenarioKind::ConvergenceStudy => {
            let phi0 = config.fourier()?;
            let limit = HopfLaxPotential::new(phi0.clone());
            let nus = config.nu_list.as_ref().expect("validated");
            let t_eval = config.time.t_end;
            let grid = 256usize;
            let period = phi0.period();
            let mut table = Vec::new();
            let mut sups = Vec::new();
            for &nu in nus {
                let viscous = ViscousSolution::new(phi0.clone(), nu)?;
                // Mean-aligned sup difference: the potentials only match up
                // to an additive constant, so compare after removing the
                // grid mean of the difference.
                let mut diffs = Vec::with_capacity(grid);
                for i in 0..grid {
                    let x = period * i as f64 / grid as f64;
                    diffs.push(viscous.psi(x, t_eval)? - limit.eval(&[x], t_eval)?);
                }
                let mean = diffs.iter().sum::<f64>() / grid as f64;
                let sup = diffs
                    .iter()
                    .map(|d| (d - mean).abs())
                    .fold(0.0f64, f64::max);
                table.push(serde_json::json!({ "nu": nu, "sup_difference": sup }));
                sups.push(sup);
            }
            let monotone = sups.windows(2).all(|w| w[1] < w[0]);
            if !monotone {
                failures.push("convergence table fails to decrease".into());
            }
            body.insert("evaluation_time".into(), t_eval.into());
            body.insert("grid_points".into(), grid.into());
            body.insert("table".into(), table.into());
            body.insert("monotone_decreasing".into(), monotone.into());

            if !config.particles.is_empty() {
                let tracks = integrate_particles(&limit, &config.particles, config.time, step)?;
                body.insert("particles".into(), particle_summaries(&tracks).into());
                if wants(OutputKind::Csv) {
                    files.push((
                        "trajectories.csv".into(),
                        trajectories_csv(1, &tracks).into_bytes(),
                    ));
                }
            }
        }
    }

    body.insert(
        "invariant_failures".into(),
        failures
            .iter()
            .map(|f| serde_json::Value::String(f.clone()))
            .collect::<Vec<_>>()
            .into(),
    );
    let report = serde_json::Value::Object(body);
    if wants(OutputKind::Report) {
        let mut text = serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))?;
        text.push('\n');
        files.push(("report.json".into(), text.into_bytes()));
    }

    files.sort_by(|a, b| a.0.cmp(&b.0));
    let manifest_entries: Vec<serde_json::Value> = files
        .iter()
        .map(|(name, bytes)| {
            serde_json::json!({
                "name": name,
                "bytes": bytes.len(),
                "sha256": sha256_hex(bytes),
            })
        })
        .collect();
    let manifest = serde_json::json!({
        "format": "adhesion manifest v1",
        "files": manifest_entries,
    });
    let mut manifest_text =
        serde_json::to_string_pretty(&manifest).map_err(|e| Error::Io(e.to_string()))?;
    manifest_text.push('\n');
    files.push(("manifest.json".into(), manifest_text.into_bytes()));

    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::with_capacity(files.len());
    for (name, bytes) in &files {
        std::fs::write(out_dir.join(name), bytes)?;
        written.push(name.clone());
    }

    Ok(RunOutcome {
        written,
        invariant_failures: failures,
        report,
    })
}
