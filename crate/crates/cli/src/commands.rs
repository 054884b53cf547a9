use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use supersep_core::combine::{
    central_lobe_half_width, combine_coherent_with, combine_incoherent, two_plus_one_window,
    CoherentModel, InterferometerLayout,
};
use supersep_core::optics::{sample_intensity, BeamGeometry, ScreenPattern, SlitSystem};
use supersep_core::planner::{
    de_broglie, geometry, matter_wave_checks, rescale_resolution, velocity_for_wavelength,
    ExperimentParams, C12_MASS, ELECTRON_MASS, RB85_MASS,
};
use supersep_core::reeh::{commutator_phase, superconducting_case, FluxConfig, TranslationProbe};
use supersep_core::schmudgen::{in_defect_rectangle, weyl_defect, Grid, GridField, PhaseZ};
use supersep_core::sector::{
    box_spectrum, boxes_equivalent, inner, BoxLength, CVector, SectorState,
};

use crate::args::*;
use crate::config::RunConfig;
use crate::output::{self, emit, Record, Table};

/// Deviation allowed between the computed defect and `(1 - z)χ_R φ`.
const DEFECT_TOLERANCE: f64 = 1e-12;

#[derive(Debug)]
pub enum CliError {
    /// Bad input or an unusable file; exit status 2.
    Invalid(String),
    /// A computed result broke a numerical contract; exit status 3.
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Contract(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "error: {m}"),
            CliError::Contract(m) => write!(f, "contract violation: {m}"),
        }
    }
}

impl From<supersep_core::Error> for CliError {
    fn from(e: supersep_core::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Invalid(format!("cannot write output: {e}"))
    }
}

type Outcome = Result<(), CliError>;

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Pattern(a) => pattern(a),
        Command::Combine(a) => combine(a),
        Command::Reeh(a) => reeh(a),
        Command::Schmudgen(a) => schmudgen(a),
        Command::Sector(a) => sector(a),
        Command::Plan(a) => plan(a),
        Command::Run(a) => run_config(&a.config),
    }
}

fn run_config(path: &Path) -> Outcome {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    let config: RunConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::Invalid(format!("bad config {}: {e}", path.display())))?;
    let cli = config.to_cli().map_err(CliError::Invalid)?;
    if matches!(cli.command, Command::Run(_)) {
        return Err(CliError::Invalid(
            "a config cannot run another config".into(),
        ));
    }
    execute(cli.command)
}

fn write_table(table: &Table, out: &OutputArgs) -> Outcome {
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => emit(out.output.as_deref(), |w| table.write_csv(w))?,
        Format::Json => {
            let text = serde_json::to_string(&table.to_json()).expect("table is plain JSON");
            emit(out.output.as_deref(), |w| writeln!(w, "{text}"))?
        }
        Format::Text => return Err(CliError::Invalid("this command writes csv or json".into())),
    }
    Ok(())
}

fn write_record(record: &Record, out: &OutputArgs, default: Format) -> Outcome {
    let text = match out.format.unwrap_or(default) {
        Format::Json => output::record_to_json(record),
        Format::Text => output::record_to_text(record),
        Format::Csv => return Err(CliError::Invalid("this command writes json or text".into())),
    };
    emit(out.output.as_deref(), |w| w.write_all(text.as_bytes()))?;
    Ok(())
}

fn beam(screen: &ScreenArgs) -> Result<BeamGeometry, CliError> {
    Ok(BeamGeometry::new(
        screen.lambda,
        screen.x,
        screen.amplitude,
    )?)
}

fn intensities(p: &ScreenPattern) -> Vec<f64> {
    p.intensities().expect("intensity pattern").to_vec()
}

fn pattern(a: PatternArgs) -> Outcome {
    let g = beam(&a.screen)?;
    let center = a.center.unwrap_or(0.0);
    let system = SlitSystem::new(a.n, a.screen.b, a.screen.s)?.with_center(center)?;
    let window = match a.screen.window {
        Some(w) => w,
        None => {
            let half = 2.0 * central_lobe_half_width(a.screen.b, &g)?;
            (center - half, center + half)
        }
    };
    let p = sample_intensity(&system, &g, window, a.screen.samples)?;
    let table = Table {
        contract: "pattern",
        columns: vec![("u_m", p.coords().to_vec()), ("intensity", intensities(&p))],
    };
    write_table(&table, &a.out)
}

fn combine(a: CombineArgs) -> Outcome {
    let ScreenArgs { b, s, samples, .. } = a.screen;
    let g = beam(&a.screen)?;
    let window = match a.screen.window {
        Some(w) => w,
        None => two_plus_one_window(b, s, &g)?,
    };
    let layout = InterferometerLayout::two_plus_one(b, s, g, window, samples)?;
    let mut columns = vec![("u_m", layout.coords())];
    if matches!(a.mode, Mode::Superseparable | Mode::Both) {
        columns.push((
            "intensity_superseparable",
            intensities(&combine_incoherent(&layout)?),
        ));
    }
    if matches!(a.mode, Mode::Coherent | Mode::Both) {
        let model = match a.model {
            Model::Fraunhofer => CoherentModel::Fraunhofer,
            Model::Spherical => CoherentModel::Spherical,
        };
        columns.push((
            "intensity_coherent",
            intensities(&combine_coherent_with(&layout, model)?),
        ));
    }
    write_table(
        &Table {
            contract: "combine",
            columns,
        },
        &a.out,
    )
}

fn reeh(a: ReehArgs) -> Outcome {
    let (alpha, weyl) = match (a.flux_quanta, a.alpha) {
        (Some(n), _) => superconducting_case(n),
        (None, Some(alpha)) => {
            let cfg = FluxConfig::from_alpha(alpha);
            (alpha, supersep_core::reeh::is_weyl(&cfg))
        }
        (None, None) => unreachable!("clap requires one flux source"),
    };
    let [x, y, pa, pb] = a.probe[..] else {
        return Err(CliError::Invalid("--probe takes exactly x,y,a,b".into()));
    };
    let probe = TranslationProbe::new(x, y, pa, pb)?;
    let phase = commutator_phase(&FluxConfig::from_alpha(alpha), &probe);
    let mut r = Record::new();
    r.insert("alpha".into(), Value::from(alpha));
    r.insert("weyl".into(), Value::from(weyl));
    r.insert(
        "bracket_product".into(),
        Value::from(probe.bracket_product()),
    );
    r.insert("phase".into(), Value::from(output::complex(phase)));
    write_record(&r, &a.out, Format::Json)
}

fn schmudgen_field(grid: Grid, kind: FieldKind, seed: u64) -> Result<GridField, CliError> {
    // zero beyond half the grid so every shift the command allows stays on it
    let reach = grid.extent() / 2.0;
    let inside = move |x: f64, y: f64| x.abs() <= reach && y.abs() <= reach;
    let zero = Complex64::new(0.0, 0.0);
    let field = match kind {
        FieldKind::Gaussian => GridField::from_fn(grid, |x, y| {
            if inside(x, y) {
                Complex64::from_polar((-(x * x + y * y) / 2.0).exp(), x - y)
            } else {
                zero
            }
        }),
        FieldKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            GridField::from_fn(grid, |x, y| {
                if inside(x, y) {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                } else {
                    zero
                }
            })
        }
    };
    Ok(field?)
}

fn schmudgen(a: SchmudgenArgs) -> Outcome {
    if a.per_unit == 0 {
        return Err(CliError::Invalid("--per-unit must be positive".into()));
    }
    let grid = Grid::new(a.radius, 1.0 / a.per_unit as f64)?;
    let max_steps = a.s_steps.max(a.t_steps) as usize;
    if a.s_steps == 0 || a.t_steps == 0 || 2 * max_steps > a.radius {
        return Err(CliError::Invalid(format!(
            "--s-steps and --t-steps must lie in 1..={}",
            a.radius / 2
        )));
    }
    let z = PhaseZ::from_angle(a.z_angle)?;
    let field = schmudgen_field(grid, a.field, a.seed)?;
    let h = grid.spacing();
    let (s, t) = (a.s_steps as f64 * h, a.t_steps as f64 * h);
    let defect = weyl_defect(s, t, &z, &field)?;

    let factor = Complex64::new(1.0, 0.0) - z.value();
    let mut deviation = 0.0f64;
    let mut stray = 0usize;
    for ((i, j), d) in defect.values().indexed_iter() {
        if in_defect_rectangle(&grid, s, t, i, j) {
            deviation = deviation.max((d - factor * field.get(i, j)).norm());
        } else if *d != Complex64::new(0.0, 0.0) {
            stray += 1;
        }
    }

    match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => emit(a.out.output.as_deref(), |w| {
            writeln!(w, "# supersep schmudgen-defect v{}", output::CSV_VERSION)?;
            writeln!(w, "i,j,x,y,re,im")?;
            defect.write_csv(w)
        })?,
        format => {
            let mut r = Record::new();
            r.insert("grid_size".into(), Value::from(grid.size()));
            r.insert("spacing".into(), Value::from(h));
            r.insert("s".into(), Value::from(s));
            r.insert("t".into(), Value::from(t));
            r.insert("z".into(), Value::from(output::complex(z.value())));
            r.insert("defect_norm".into(), Value::from(defect.norm()));
            r.insert("max_deviation_in_rectangle".into(), Value::from(deviation));
            r.insert("nonzero_outside_rectangle".into(), Value::from(stray));
            r.insert("weyl".into(), Value::from(defect.max_abs() < 1e-9));
            let out = OutputArgs {
                output: a.out.output.clone(),
                format: Some(format),
            };
            write_record(&r, &out, Format::Json)?;
        }
    }
    if deviation >= DEFECT_TOLERANCE || stray > 0 {
        return Err(CliError::Contract(format!(
            "defect differs from (1 - z)χ_R φ: max deviation {deviation:e} in R, {stray} nonzero samples outside"
        )));
    }
    Ok(())
}

fn sector(a: SectorArgs) -> Outcome {
    let parse = |text: &str| text.parse::<BoxLength>();
    let (l1, l2) = (parse(&a.box1)?, parse(&a.box2)?);
    // the same vector placed in each sector
    let psi = CVector::from_vec(vec![
        Complex64::new(1.0 / 2f64.sqrt(), 0.0),
        Complex64::new(0.0, 1.0 / 2f64.sqrt()),
    ]);
    let cross = inner(
        &SectorState::first(psi.clone(), 2),
        &SectorState::second(2, psi),
    )?;
    let mut r = Record::new();
    r.insert("box1".into(), Value::from(l1.to_string()));
    r.insert("box2".into(), Value::from(l2.to_string()));
    r.insert("equivalent".into(), Value::from(boxes_equivalent(&l1, &l2)));
    r.insert(
        "box1_levels".into(),
        Value::from(box_spectrum(&l1, a.levels)),
    );
    r.insert(
        "box2_levels".into(),
        Value::from(box_spectrum(&l2, a.levels)),
    );
    r.insert(
        "cross_sector_inner".into(),
        Value::from(output::complex(cross)),
    );
    write_record(&r, &a.out, Format::Json)
}

fn plan(a: PlanArgs) -> Outcome {
    let params = ExperimentParams {
        mass: None,
        velocity: a.velocity,
        ..ExperimentParams::new(a.b, a.s, a.lambda)
    };
    let report = match a.rescale {
        Some(f) => rescale_resolution(&params, f)?,
        None => geometry(&params)?,
    };
    let mass = a.mass.or(a.species.map(|sp| match sp {
        Species::Rb85 => RB85_MASS,
        Species::C12 => C12_MASS,
        Species::Electron => ELECTRON_MASS,
    }));
    let mut r = Record::new();
    r.insert("theta0_rad".into(), Value::from(report.theta0));
    r.insert("x_detector_m".into(), Value::from(report.x_detector));
    r.insert("delta_m".into(), Value::from(report.delta));
    r.insert(
        "gamma_over_beta".into(),
        Value::from(report.gamma_beta_ratio),
    );
    match (mass, a.velocity) {
        (Some(m), Some(v)) => {
            r.insert(
                "de_broglie_wavelength_m".into(),
                Value::from(de_broglie(m, v)?),
            );
        }
        (Some(m), None) => {
            r.insert(
                "velocity_for_lambda_m_per_s".into(),
                Value::from(velocity_for_wavelength(m, a.lambda)?),
            );
        }
        (None, Some(_)) => {
            return Err(CliError::Invalid(
                "--velocity needs --mass or --species".into(),
            ));
        }
        (None, None) => {}
    }
    if a.checks {
        for (k, d) in matter_wave_checks().iter().enumerate() {
            r.insert(
                format!("check{}", k + 1),
                Value::from(format!(
                    "{}: quoted {:e} {}, computed {:e} {}{}",
                    d.quantity,
                    d.quoted,
                    d.unit,
                    d.computed,
                    d.unit,
                    if d.agrees() { "" } else { " (disagrees)" }
                )),
            );
        }
    }
    write_record(&r, &a.out, Format::Text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Invalid("x".into()).exit_code(), 2);
        assert_eq!(CliError::Contract("x".into()).exit_code(), 3);
        let core = supersep_core::Error::SingularPoint;
        assert_eq!(CliError::from(core).exit_code(), 2);
    }

    #[test]
    fn generated_fields_are_deterministic() {
        let grid = Grid::new(16, 0.25).unwrap();
        let a = schmudgen_field(grid, FieldKind::Random, 7).unwrap();
        let b = schmudgen_field(grid, FieldKind::Random, 7).unwrap();
        let c = schmudgen_field(grid, FieldKind::Random, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
