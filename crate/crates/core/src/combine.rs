//! Coherent and incoherent combination of displaced slit systems.
//!
//! Two arms that carry components of a state in inequivalent sectors do not
//! interfere: their intensities add ([`combine_incoherent`]). Without that
//! separation the arms act as one larger grating and the amplitudes add
//! ([`combine_coherent`]).
//!
//! Screen coordinates are shared by all arms. In the canonical 2+1 layout the
//! double-slit centre sits at `u = 0`, the single slit at `u = 3(s+b)/2` and
//! the equivalent triple slit at `u = (s+b)/2`.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{require_positive, Error, Result};
use crate::optics::{
    amplitude_about, find_extrema, intensity, screen_to_theta, uniform_coords, BeamGeometry,
    Extremum, ExtremumKind, ScreenPattern, SlitSystem,
};

/// Arms of a wavefront-division interferometer and the screen they share.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerLayout {
    arms: Vec<SlitSystem>,
    geometry: BeamGeometry,
    window: (f64, f64),
    sample_count: usize,
    supports: Vec<Option<(f64, f64)>>,
}

impl InterferometerLayout {
    pub fn new(
        arms: Vec<SlitSystem>,
        geometry: BeamGeometry,
        window: (f64, f64),
        sample_count: usize,
    ) -> Result<Self> {
        if arms.is_empty() {
            return Err(Error::InvalidInput("layout needs at least one arm".into()));
        }
        if !(window.0.is_finite() && window.1.is_finite() && window.0 < window.1) {
            return Err(Error::InvalidInput(format!(
                "degenerate screen window [{}, {}]",
                window.0, window.1
            )));
        }
        if sample_count < 3 {
            return Err(Error::InvalidInput(format!(
                "sample_count must be >= 3, got {sample_count}"
            )));
        }
        let supports = vec![None; arms.len()];
        Ok(Self {
            arms,
            geometry,
            window,
            sample_count,
            supports,
        })
    }

    /// Single slit above a double slit, as in the 2+1-slit interferometer.
    ///
    /// Arm 0 is the single slit centred at `3(s+b)/2`, arm 1 the double slit
    /// centred at 0.
    pub fn two_plus_one(
        b: f64,
        s: f64,
        geometry: BeamGeometry,
        window: (f64, f64),
        sample_count: usize,
    ) -> Result<Self> {
        let single = SlitSystem::new(1, b, s)?.with_center(single_slit_center(b, s))?;
        let double = SlitSystem::new(2, b, s)?;
        Self::new(vec![single, double], geometry, window, sample_count)
    }

    /// The triple slit occupying the same three apertures as [`two_plus_one`].
    ///
    /// [`two_plus_one`]: InterferometerLayout::two_plus_one
    pub fn triple(
        b: f64,
        s: f64,
        geometry: BeamGeometry,
        window: (f64, f64),
        sample_count: usize,
    ) -> Result<Self> {
        let triple = SlitSystem::new(3, b, s)?.with_center((s + b) / 2.0)?;
        Self::new(vec![triple], geometry, window, sample_count)
    }

    /// Restricts arm `index` to the screen interval `support`, as a baffle
    /// between the arms would. Outside it the arm contributes nothing.
    pub fn with_arm_support(mut self, index: usize, support: (f64, f64)) -> Result<Self> {
        if index >= self.arms.len() {
            return Err(Error::InvalidInput(format!("no arm with index {index}")));
        }
        if support.0.partial_cmp(&support.1).is_none_or(|o| o.is_gt()) {
            return Err(Error::InvalidInput("support interval is reversed".into()));
        }
        self.supports[index] = Some(support);
        Ok(self)
    }

    pub fn arms(&self) -> &[SlitSystem] {
        &self.arms
    }

    pub fn geometry(&self) -> &BeamGeometry {
        &self.geometry
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn coords(&self) -> Vec<f64> {
        uniform_coords(self.window.0, self.window.1, self.sample_count)
            .expect("window validated at construction")
    }

    /// Midpoint of the combined aperture, used as the common phase origin.
    pub fn common_origin(&self) -> f64 {
        let (lo, hi) = self
            .arms
            .iter()
            .map(SlitSystem::aperture_extent)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (l, h)| {
                (lo.min(l), hi.max(h))
            });
        0.5 * (lo + hi)
    }

    /// Screen period of the coarsest interference fringes, if any arm has
    /// more than one slit.
    pub fn fringe_period(&self) -> Option<f64> {
        let lx = self.geometry.wavelength() * self.geometry.detector_distance();
        self.arms
            .iter()
            .filter(|a| a.slit_count() > 1)
            .map(|a| lx / a.period())
            .reduce(f64::max)
    }

    fn active(&self, arm: usize, u: f64) -> bool {
        match self.supports[arm] {
            Some((lo, hi)) => lo <= u && u <= hi,
            None => true,
        }
    }
}

/// Centre of the single slit in the 2+1 layout, relative to the double slit.
pub fn single_slit_center(b: f64, s: f64) -> f64 {
    1.5 * (s + b)
}

/// Screen interval from the lower first minimum of the double slit to the
/// upper first minimum of the single slit (`-π ≤ β ≤ 3π` about the double
/// slit).
pub fn two_plus_one_window(b: f64, s: f64, geometry: &BeamGeometry) -> Result<(f64, f64)> {
    let half = central_lobe_half_width(b, geometry)?;
    Ok((-half, single_slit_center(b, s) + half))
}

/// Screen distance from an arm centre to its first diffraction minimum.
pub fn central_lobe_half_width(b: f64, geometry: &BeamGeometry) -> Result<f64> {
    require_positive("b", b)?;
    let ratio = geometry.wavelength() / b;
    if ratio >= 1.0 {
        return Err(Error::NoFarFieldMinimum {
            wavelength: geometry.wavelength(),
            width: b,
        });
    }
    Ok(geometry.detector_distance() * ratio.asin().tan())
}

/// Pointwise sum of arm intensities: the prediction when the arms do not
/// interfere. Each arm's angle is measured from its own centre.
pub fn combine_incoherent(layout: &InterferometerLayout) -> Result<ScreenPattern> {
    let geom = &layout.geometry;
    let x = geom.detector_distance();
    let coords = layout.coords();
    let mut values = Vec::with_capacity(coords.len());
    for &u in &coords {
        let mut total = 0.0;
        for (k, arm) in layout.arms.iter().enumerate() {
            if layout.active(k, u) {
                total += intensity(arm, geom, screen_to_theta(u, arm.center_offset(), x))?;
            }
        }
        values.push(total);
    }
    ScreenPattern::intensity(coords, values, *geom)
}

/// Phase model for summing arm amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoherentModel {
    /// All arms share one diffraction angle measured from the common origin;
    /// displacements enter only through the plane-wave phase `e^{ik·c·sinθ}`.
    /// A set of arms tiling a grating reproduces that grating exactly.
    #[default]
    Fraunhofer,
    /// Each arm's envelope is centred on its own axis and carries the exact
    /// path phase `e^{ik(r - x)}`, `r = √(x² + (u - c)²)`.
    Spherical,
}

/// Squared modulus of the summed arm amplitudes in the [`CoherentModel::Fraunhofer`]
/// model: the prediction when the arms interfere.
pub fn combine_coherent(layout: &InterferometerLayout) -> Result<ScreenPattern> {
    combine_coherent_with(layout, CoherentModel::Fraunhofer)
}

pub fn combine_coherent_with(
    layout: &InterferometerLayout,
    model: CoherentModel,
) -> Result<ScreenPattern> {
    let geom = &layout.geometry;
    let x = geom.detector_distance();
    let k = geom.wavenumber();
    let origin = layout.common_origin();
    let coords = layout.coords();
    let mut values = Vec::with_capacity(coords.len());
    for &u in &coords {
        let mut total = Complex64::new(0.0, 0.0);
        for (idx, arm) in layout.arms.iter().enumerate() {
            if !layout.active(idx, u) {
                continue;
            }
            total += match model {
                CoherentModel::Fraunhofer => {
                    amplitude_about(arm, geom, screen_to_theta(u, origin, x), origin)?
                }
                CoherentModel::Spherical => {
                    let c = arm.center_offset();
                    let d = u - c;
                    let r = (x * x + d * d).sqrt();
                    let excess = d * d / (r + x);
                    amplitude_about(arm, geom, screen_to_theta(u, c, x), c)?
                        * Complex64::from_polar(1.0, k * excess)
                }
            };
        }
        values.push(total.norm_sqr());
    }
    ScreenPattern::intensity(coords, values, *geom)
}

/// Normalised L² distance `‖p - q‖ / max(‖p‖, ‖q‖)` between two intensity
/// patterns on the same grid. Lies in `[0, √2]`.
pub fn pattern_discriminator(p: &ScreenPattern, q: &ScreenPattern) -> Result<f64> {
    let a = p.require_intensity()?;
    let b = q.require_intensity()?;
    if p.coords() != q.coords() {
        return Err(Error::InvalidInput(
            "patterns are sampled on different grids".into(),
        ));
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = norm(a).max(norm(b));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    Ok(diff / scale)
}

/// Trapezoidal integral of an intensity pattern over its screen window.
pub fn integrated_counts(pattern: &ScreenPattern) -> Result<f64> {
    let values = pattern.require_intensity()?;
    Ok(pattern
        .coords()
        .windows(2)
        .zip(values.windows(2))
        .map(|(u, v)| 0.5 * (u[1] - u[0]) * (v[0] + v[1]))
        .sum())
}

/// Rescales `pattern` so its integrated counts equal those of `reference`.
pub fn count_matched(pattern: &ScreenPattern, reference: &ScreenPattern) -> Result<ScreenPattern> {
    let own = integrated_counts(pattern)?;
    let target = integrated_counts(reference)?;
    if own <= 0.0 || target <= 0.0 {
        return Err(Error::InvalidInput(
            "count matching needs patterns with positive total counts".into(),
        ));
    }
    pattern.scaled(target / own)
}

/// Fringe-free envelope of an intensity pattern.
///
/// The linear trend between the end samples is removed, spatial frequencies
/// above half the fringe frequency `1/fringe_period` are discarded and the
/// trend restored. For a sinc² envelope modulated by `cos²` fringes the two
/// bands do not overlap, so the envelope passes unchanged. Small negative
/// ripples are clipped to zero. The grid must be uniform.
pub fn diffraction_envelope(pattern: &ScreenPattern, fringe_period: f64) -> Result<ScreenPattern> {
    require_positive("fringe_period", fringe_period)?;
    let values = pattern.require_intensity()?;
    let coords = pattern.coords();
    let n = values.len();
    if n < 3 {
        return Err(Error::InvalidInput(
            "envelope needs at least 3 samples".into(),
        ));
    }
    let step = (coords[n - 1] - coords[0]) / (n - 1) as f64;
    if coords
        .windows(2)
        .any(|w| ((w[1] - w[0]) - step).abs() > 1e-6 * step)
    {
        return Err(Error::InvalidInput(
            "envelope extraction needs a uniform grid".into(),
        ));
    }

    let (first, last) = (values[0], values[n - 1]);
    let trend = |i: usize| first + (last - first) * (i as f64 / (n - 1) as f64);
    let mut buf: Vec<Complex64> = values
        .iter()
        .enumerate()
        .map(|(i, v)| Complex64::new(v - trend(i), 0.0))
        .collect();

    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);
    let cutoff = 0.5 / fringe_period;
    let span = n as f64 * step;
    for (k, c) in buf.iter_mut().enumerate() {
        let index = if k <= n / 2 {
            k as f64
        } else {
            k as f64 - n as f64
        };
        if (index / span).abs() > cutoff {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);

    let smoothed = buf
        .iter()
        .enumerate()
        .map(|(i, c)| (c.re / n as f64 + trend(i)).max(0.0))
        .collect();
    ScreenPattern::intensity(coords.to_vec(), smoothed, *pattern.geometry())
}

/// Maxima of the diffraction envelope whose value is at least
/// `relative_threshold` times the envelope's largest sample.
pub fn envelope_maxima(
    pattern: &ScreenPattern,
    fringe_period: f64,
    relative_threshold: f64,
) -> Result<Vec<Extremum>> {
    let envelope = diffraction_envelope(pattern, fringe_period)?;
    let peak = envelope
        .intensities()
        .expect("envelope is an intensity pattern")
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    Ok(find_extrema(&envelope)?
        .into_iter()
        .filter(|e| e.kind == ExtremumKind::Maximum && e.value >= relative_threshold * peak)
        .collect())
}
