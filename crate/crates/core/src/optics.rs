//! Closed-form Fraunhofer diffraction for N-slit systems.
//!
//! An N-slit system has slits of width `b` whose centres sit on a lattice of
//! period `s + b` (`s` is the edge-to-edge gap). At diffraction angle `θ`
//!
//! ```text
//! β = (b/λ)·π·sin θ          γ = ((s+b)/λ)·π·sin θ
//! I = A·(b/x)²·(sin²β/β²)·(sin²Nγ/sin²γ)
//! ```
//!
//! The amplitude model is the square root of this with the slit-lattice phases
//! kept explicit, so that displaced systems can be summed coherently.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{require_positive, Error, Result};

/// Below this distance from a removable singularity the series branch is used.
pub const SINGULARITY_GUARD: f64 = 1e-8;

/// Default number of screen samples across a requested window.
pub const DEFAULT_SAMPLES: usize = 4096;

/// Aperture geometry of one interferometer arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitSystem {
    slit_count: u32,
    slit_width: f64,
    slit_separation: f64,
    center_offset: f64,
}

impl SlitSystem {
    /// A centred system of `slit_count` slits of width `slit_width` separated
    /// edge-to-edge by `slit_separation`.
    pub fn new(slit_count: u32, slit_width: f64, slit_separation: f64) -> Result<Self> {
        if slit_count == 0 {
            return Err(Error::param("slit_count", "must be at least 1"));
        }
        require_positive("slit_width", slit_width)?;
        if !(slit_separation.is_finite() && slit_separation >= 0.0) {
            return Err(Error::param(
                "slit_separation",
                format!("must be finite and >= 0, got {slit_separation}"),
            ));
        }
        Ok(Self {
            slit_count,
            slit_width,
            slit_separation,
            center_offset: 0.0,
        })
    }

    /// Moves the system centre to `offset` on the interferometer face.
    pub fn with_center(mut self, offset: f64) -> Result<Self> {
        if !offset.is_finite() {
            return Err(Error::param("center_offset", "must be finite"));
        }
        self.center_offset = offset;
        Ok(self)
    }

    pub fn slit_count(&self) -> u32 {
        self.slit_count
    }

    pub fn slit_width(&self) -> f64 {
        self.slit_width
    }

    pub fn slit_separation(&self) -> f64 {
        self.slit_separation
    }

    pub fn center_offset(&self) -> f64 {
        self.center_offset
    }

    /// Centre-to-centre spacing of adjacent slits.
    pub fn period(&self) -> f64 {
        self.slit_separation + self.slit_width
    }

    /// Slit-centre positions relative to the system centre.
    pub fn slit_centers(&self) -> Vec<f64> {
        let half = (self.slit_count as f64 - 1.0) / 2.0;
        (0..self.slit_count)
            .map(|j| (j as f64 - half) * self.period())
            .collect()
    }

    /// Leftmost and rightmost slit edges, in face coordinates.
    pub fn aperture_extent(&self) -> (f64, f64) {
        let half_span =
            (self.slit_count as f64 - 1.0) / 2.0 * self.period() + self.slit_width / 2.0;
        (
            self.center_offset - half_span,
            self.center_offset + half_span,
        )
    }
}

/// Illumination and detection parameters shared by every arm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    wavelength: f64,
    detector_distance: f64,
    amplitude_scale: f64,
}

impl BeamGeometry {
    pub fn new(wavelength: f64, detector_distance: f64, amplitude_scale: f64) -> Result<Self> {
        Ok(Self {
            wavelength: require_positive("wavelength", wavelength)?,
            detector_distance: require_positive("detector_distance", detector_distance)?,
            amplitude_scale: require_positive("amplitude_scale", amplitude_scale)?,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn detector_distance(&self) -> f64 {
        self.detector_distance
    }

    pub fn amplitude_scale(&self) -> f64 {
        self.amplitude_scale
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }
}

/// Returns `(β, γ)` for diffraction angle `theta`.
pub fn beta_gamma(theta: f64, b: f64, s: f64, lambda: f64) -> Result<(f64, f64)> {
    require_positive("lambda", lambda)?;
    require_positive("b", b)?;
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::param(
            "s",
            format!("must be finite and >= 0, got {s}"),
        ));
    }
    if !(theta.is_finite() && theta.abs() < FRAC_PI_2) {
        return Err(Error::param(
            "theta",
            format!("|theta| must be < pi/2, got {theta}"),
        ));
    }
    let sin_theta = theta.sin();
    Ok((
        b / lambda * PI * sin_theta,
        (s + b) / lambda * PI * sin_theta,
    ))
}

/// `sin β / β`, continuous through β = 0.
pub fn sinc(beta: f64) -> f64 {
    if beta.abs() < SINGULARITY_GUARD {
        1.0 - beta * beta / 6.0
    } else {
        beta.sin() / beta
    }
}

/// The single-slit envelope `sin²β/β²`.
pub fn diffraction_factor(beta: f64) -> f64 {
    if beta.abs() < SINGULARITY_GUARD {
        1.0 - beta * beta / 3.0
    } else {
        let r = beta.sin() / beta;
        r * r
    }
}

/// The lattice factor `sin²Nγ/sin²γ`, equal to `N²` at `γ = mπ`.
///
/// The argument is reduced to `δ = γ - mπ` first; the ratio only depends on
/// `δ` once squared.
pub fn interference_factor(n: u32, gamma: f64) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    let nf = n as f64;
    let delta = gamma - (gamma / PI).round() * PI;
    if delta.abs() < SINGULARITY_GUARD {
        return nf * nf * (1.0 - (nf * nf - 1.0) * delta * delta / 3.0);
    }
    let r = (nf * delta).sin() / delta.sin();
    r * r
}

/// Far-field intensity of `system` at angle `theta` measured from its centre.
pub fn intensity(system: &SlitSystem, geom: &BeamGeometry, theta: f64) -> Result<f64> {
    let (beta, gamma) = beta_gamma(
        theta,
        system.slit_width,
        system.slit_separation,
        geom.wavelength,
    )?;
    let scale = system.slit_width / geom.detector_distance;
    Ok(geom.amplitude_scale
        * scale
        * scale
        * diffraction_factor(beta)
        * interference_factor(system.slit_count, gamma))
}

/// Far-field complex amplitude of `system` at angle `theta` measured from the
/// coordinate origin of the interferometer face.
///
/// The centre offset contributes the plane-wave phase `e^{ik·c·sinθ}`; the
/// slit lattice is summed explicitly, so `|amplitude|² = intensity` for a
/// system of any offset.
pub fn amplitude(system: &SlitSystem, geom: &BeamGeometry, theta: f64) -> Result<Complex64> {
    amplitude_about(system, geom, theta, 0.0)
}

/// As [`amplitude`], with angles measured from face coordinate `origin`.
pub(crate) fn amplitude_about(
    system: &SlitSystem,
    geom: &BeamGeometry,
    theta: f64,
    origin: f64,
) -> Result<Complex64> {
    let (beta, gamma) = beta_gamma(
        theta,
        system.slit_width,
        system.slit_separation,
        geom.wavelength,
    )?;
    let envelope =
        geom.amplitude_scale.sqrt() * system.slit_width / geom.detector_distance * sinc(beta);
    // k·d_j·sinθ = 2γ·(j - (N-1)/2) on the lattice of period s + b.
    let half = (system.slit_count as f64 - 1.0) / 2.0;
    let lattice: Complex64 = (0..system.slit_count)
        .map(|j| Complex64::from_polar(1.0, 2.0 * gamma * (j as f64 - half)))
        .sum();
    let offset_phase = geom.wavenumber() * (system.center_offset - origin) * theta.sin();
    Ok(lattice * Complex64::from_polar(envelope, offset_phase))
}

/// Angle subtended at a system centre by screen coordinate `u`.
pub fn screen_to_theta(u: f64, system_center: f64, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ((u - system_center) / x).atan()
}

/// `n` evenly spaced coordinates from `lo` to `hi`, both endpoints included.
pub fn uniform_coords(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 samples, got {n}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidInput(format!(
            "degenerate window [{lo}, {hi}]"
        )));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => lo + (hi - lo) * (i as f64 / last),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    Amplitude,
    Intensity,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatternValues {
    Amplitude(Vec<Complex64>),
    Intensity(Vec<f64>),
}

/// Screen samples of an amplitude or intensity pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenPattern {
    coords: Vec<f64>,
    values: PatternValues,
    geometry: BeamGeometry,
}

impl ScreenPattern {
    pub fn new(coords: Vec<f64>, values: PatternValues, geometry: BeamGeometry) -> Result<Self> {
        let len = match &values {
            PatternValues::Amplitude(v) => v.len(),
            PatternValues::Intensity(v) => v.len(),
        };
        if len != coords.len() {
            return Err(Error::DimensionMismatch {
                expected: coords.len(),
                found: len,
            });
        }
        if coords
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::InvalidInput(
                "screen coordinates must be strictly increasing".into(),
            ));
        }
        if let PatternValues::Intensity(v) = &values {
            if let Some(bad) = v.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return Err(Error::InvalidInput(format!(
                    "intensity samples must be finite and >= 0, found {bad}"
                )));
            }
        }
        Ok(Self {
            coords,
            values,
            geometry,
        })
    }

    pub fn intensity(coords: Vec<f64>, values: Vec<f64>, geometry: BeamGeometry) -> Result<Self> {
        Self::new(coords, PatternValues::Intensity(values), geometry)
    }

    pub fn kind(&self) -> PatternKind {
        match self.values {
            PatternValues::Amplitude(_) => PatternKind::Amplitude,
            PatternValues::Intensity(_) => PatternKind::Intensity,
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn values(&self) -> &PatternValues {
        &self.values
    }

    pub fn geometry(&self) -> &BeamGeometry {
        &self.geometry
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Intensity samples; `None` for amplitude patterns.
    pub fn intensities(&self) -> Option<&[f64]> {
        match &self.values {
            PatternValues::Intensity(v) => Some(v),
            PatternValues::Amplitude(_) => None,
        }
    }

    /// Squared modulus of an amplitude pattern; intensity patterns are cloned.
    pub fn to_intensity(&self) -> ScreenPattern {
        let values = match &self.values {
            PatternValues::Intensity(v) => v.clone(),
            PatternValues::Amplitude(v) => v.iter().map(|a| a.norm_sqr()).collect(),
        };
        ScreenPattern {
            coords: self.coords.clone(),
            values: PatternValues::Intensity(values),
            geometry: self.geometry,
        }
    }

    /// Multiplies every intensity sample by `factor` (amplitudes by its root).
    pub fn scaled(&self, factor: f64) -> Result<ScreenPattern> {
        require_positive("factor", factor)?;
        let values = match &self.values {
            PatternValues::Intensity(v) => {
                PatternValues::Intensity(v.iter().map(|x| x * factor).collect())
            }
            PatternValues::Amplitude(v) => {
                let root = factor.sqrt();
                PatternValues::Amplitude(v.iter().map(|a| a * root).collect())
            }
        };
        Ok(ScreenPattern {
            coords: self.coords.clone(),
            values,
            geometry: self.geometry,
        })
    }

    pub(crate) fn require_intensity(&self) -> Result<&[f64]> {
        self.intensities()
            .ok_or_else(|| Error::InvalidInput("expected an intensity pattern".into()))
    }
}

/// Samples the intensity of `system` on `n` screen points spanning `window`,
/// with each angle measured from the system's own centre.
pub fn sample_intensity(
    system: &SlitSystem,
    geom: &BeamGeometry,
    window: (f64, f64),
    n: usize,
) -> Result<ScreenPattern> {
    let coords = uniform_coords(window.0, window.1, n)?;
    let x = geom.detector_distance;
    let values = coords
        .iter()
        .map(|&u| intensity(system, geom, screen_to_theta(u, system.center_offset, x)))
        .collect::<Result<Vec<_>>>()?;
    ScreenPattern::intensity(coords, values, *geom)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub coordinate: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// All strict interior local extrema of an intensity pattern.
///
/// Isolated extrema are refined by the parabola through the sample and its two
/// neighbours. A plateau bounded on both sides by lower (higher) samples is
/// reported once, at its leftmost sample, without refinement.
pub fn find_extrema(pattern: &ScreenPattern) -> Result<Vec<Extremum>> {
    let values = pattern.require_intensity()?;
    let coords = pattern.coords();
    let n = values.len();
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "extremum search needs at least 3 samples, got {n}"
        )));
    }

    let mut out = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        let mut j = i;
        while j + 1 < n && values[j + 1] == values[i] {
            j += 1;
        }
        if j == n - 1 {
            break;
        }
        let left = values[i - 1];
        let right = values[j + 1];
        let v = values[i];
        let kind = if left < v && right < v {
            Some(ExtremumKind::Maximum)
        } else if left > v && right > v {
            Some(ExtremumKind::Minimum)
        } else {
            None
        };
        if let Some(kind) = kind {
            let (coordinate, value) = if i == j {
                parabolic_vertex(
                    (coords[i - 1], left),
                    (coords[i], v),
                    (coords[i + 1], right),
                )
            } else {
                (coords[i], v)
            };
            out.push(Extremum {
                coordinate,
                value,
                kind,
            });
        }
        i = j + 1;
    }
    Ok(out)
}

/// Vertex of the parabola through three points with `p0.0 < p1.0 < p2.0`.
fn parabolic_vertex(p0: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> (f64, f64) {
    let (h0, d0) = (p0.0 - p1.0, p0.1 - p1.1);
    let (h2, d2) = (p2.0 - p1.0, p2.1 - p1.1);
    let det = h0 * h2 * (h2 - h0);
    let lin = (d0 * h2 * h2 - d2 * h0 * h0) / det;
    let quad = (h0 * d2 - h2 * d0) / det;
    if quad == 0.0 || !quad.is_finite() {
        return p1;
    }
    let t = (-lin / (2.0 * quad)).clamp(h0, h2);
    (p1.0 + t, p1.1 + lin * t + quad * t * t)
}
