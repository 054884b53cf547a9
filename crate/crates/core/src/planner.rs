//! Geometry of the 2+1-slit experiment and matter-wave wavelengths.
//!
//! With slit width `b`, gap `s` and wavelength `λ` the first diffraction
//! minimum sits at `θ₀ = arcsin(λ/b)`. The detector distance at which the
//! first minima of the single and double slit coincide is
//! `x = 3b(s+b)/4λ`, and the envelope centres are `δ = 3(s+b)/2` apart.
//! All lengths are in metres.

use crate::error::{require_positive, Error, Result};

/// Planck constant, J·s (exact in SI).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Unified atomic mass unit, kg (CODATA 2018).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of a ⁸⁵Rb atom, kg.
pub const RB85_MASS: f64 = 84.911_789_738 * ATOMIC_MASS_UNIT;
/// Mass of a ¹²C atom, kg (12 u by definition).
pub const C12_MASS: f64 = 12.0 * ATOMIC_MASS_UNIT;
/// Electron mass, kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentParams {
    pub b: f64,
    pub s: f64,
    pub lambda: f64,
    pub mass: Option<f64>,
    pub velocity: Option<f64>,
}

impl ExperimentParams {
    pub fn new(b: f64, s: f64, lambda: f64) -> Self {
        Self {
            b,
            s,
            lambda,
            mass: None,
            velocity: None,
        }
    }

    /// Slit width 0.2 mm, gap 1.0 mm, wavelength 100 nm.
    pub fn reference() -> Self {
        Self::new(0.2e-3, 1.0e-3, 100e-9)
    }

    fn validate(&self) -> Result<()> {
        require_positive("b", self.b)?;
        require_positive("s", self.s)?;
        require_positive("lambda", self.lambda)?;
        if let Some(m) = self.mass {
            require_positive("mass", m)?;
        }
        if let Some(v) = self.velocity {
            require_positive("velocity", v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryReport {
    /// First diffraction minimum, rad.
    pub theta0: f64,
    pub x_detector: f64,
    pub delta: f64,
    /// `γ/β = (s+b)/b`.
    pub gamma_beta_ratio: f64,
}

pub fn geometry(params: &ExperimentParams) -> Result<GeometryReport> {
    params.validate()?;
    let ExperimentParams { b, s, lambda, .. } = *params;
    if lambda >= b {
        return Err(Error::NoFarFieldMinimum {
            wavelength: lambda,
            width: b,
        });
    }
    Ok(GeometryReport {
        theta0: (lambda / b).asin(),
        x_detector: 3.0 * b * (s + b) / (4.0 * lambda),
        delta: 1.5 * (s + b),
        gamma_beta_ratio: (s + b) / b,
    })
}

/// `λ = h/(m·v)`.
pub fn de_broglie(mass: f64, velocity: f64) -> Result<f64> {
    require_positive("mass", mass)?;
    require_positive("velocity", velocity)?;
    Ok(PLANCK / (mass * velocity))
}

/// Speed at which a particle of `mass` has wavelength `lambda`.
pub fn velocity_for_wavelength(mass: f64, lambda: f64) -> Result<f64> {
    require_positive("mass", mass)?;
    require_positive("lambda", lambda)?;
    Ok(PLANCK / (mass * lambda))
}

/// Geometry after shrinking `b` and `s` by `factor` at fixed `λ`.
pub fn rescale_resolution(params: &ExperimentParams, factor: f64) -> Result<GeometryReport> {
    require_positive("factor", factor)?;
    geometry(&ExperimentParams {
        b: params.b / factor,
        s: params.s / factor,
        ..*params
    })
}

/// A literature figure next to the value recomputed from CODATA constants.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub quantity: &'static str,
    pub quoted: f64,
    pub computed: f64,
    pub unit: &'static str,
}

impl Discrepancy {
    pub fn ratio(&self) -> f64 {
        self.quoted / self.computed
    }

    /// Agreement within 5 %.
    pub fn agrees(&self) -> bool {
        (self.ratio() - 1.0).abs() < 0.05
    }
}

/// The commonly quoted matter-wave figures for the reference experiment,
/// each recomputed from `h/(mv)`.
pub fn matter_wave_checks() -> Vec<Discrepancy> {
    let rb_at_2 = PLANCK / (RB85_MASS * 2.0);
    vec![
        Discrepancy {
            quantity: "wavelength of 85Rb at 2 m/s",
            quoted: 23e-9,
            computed: rb_at_2,
            unit: "m",
        },
        Discrepancy {
            quantity: "speed of 85Rb at 100 nm",
            quoted: 0.5,
            computed: PLANCK / (RB85_MASS * 100e-9),
            unit: "m/s",
        },
        Discrepancy {
            quantity: "electron/85Rb wavelength ratio at equal speed",
            quoted: 1.56e4,
            computed: RB85_MASS / ELECTRON_MASS,
            unit: "1",
        },
        Discrepancy {
            quantity: "12C/85Rb wavelength ratio at equal speed",
            quoted: 7.0,
            computed: RB85_MASS / C12_MASS,
            unit: "1",
        },
    ]
}
