//! Grid realisation of a CCR pair that violates the Weyl relations.
//!
//! On functions of the plane define
//!
//! ```text
//! (U(t)φ)(x, y) = e^{itx} φ(x, y + t)
//! (V(s)φ)(x, y) = c_s(x, y) φ(x + s, y)
//! ```
//!
//! where `c_s = 1` in the closed lower half plane and, for `y > 0`,
//! `c_s = z^{H(x) - H(x+s)}` with `H(x) = [x > 0]`. So the upper half plane
//! picks up `z̄` when a sample is pulled across the y-axis from the right
//! (`x ≤ 0 < x + s`) and `z` when pulled back. With this orientation
//!
//! ```text
//! (I - e^{-its} V(-s) U(-t) V(s) U(t)) φ = (1 - z) χ_R φ,   R = {0 < x ≤ s, 0 < y ≤ t}.
//! ```
//!
//! Shifts are restricted to whole grid steps so every translation is an exact
//! permutation of samples. Phases are accumulated exactly (integer multiples
//! of `h²` and integer powers of `z`) and only materialised at the end, so the
//! identity holds bit-for-bit outside `R`.

use std::io::{self, Write};

use ndarray::{s, Array2};
use num_complex::Complex64;

use crate::error::{require_positive, Error, Result};

/// Relative tolerance for accepting a shift as a whole number of grid steps.
const ALIGNMENT_TOLERANCE: f64 = 1e-9;

/// Square grid with the origin at its centre sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    radius: usize,
    spacing: f64,
}

impl Default for Grid {
    /// 257 × 257 points, `h = 1/16`, half-width 8.
    fn default() -> Self {
        Self {
            radius: 128,
            spacing: 1.0 / 16.0,
        }
    }
}

impl Grid {
    pub fn new(radius: usize, spacing: f64) -> Result<Self> {
        if radius == 0 {
            return Err(Error::param("radius", "must be at least 1"));
        }
        require_positive("spacing", spacing)?;
        Ok(Self { radius, spacing })
    }

    /// Points per axis.
    pub fn size(&self) -> usize {
        2 * self.radius + 1
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn origin_index(&self) -> usize {
        self.radius
    }

    /// Half-width `L = h·radius`.
    pub fn extent(&self) -> f64 {
        self.spacing * self.radius as f64
    }

    /// Signed step count of sample index `i` from the origin.
    pub fn offset(&self, i: usize) -> i64 {
        i as i64 - self.radius as i64
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.offset(i) as f64 * self.spacing
    }

    /// Converts a shift to whole grid steps.
    pub fn steps(&self, shift: f64) -> Result<i64> {
        let exact = shift / self.spacing;
        let rounded = exact.round();
        if !shift.is_finite()
            || (exact - rounded).abs() > ALIGNMENT_TOLERANCE * rounded.abs().max(1.0)
        {
            return Err(Error::Misaligned {
                shift,
                spacing: self.spacing,
            });
        }
        Ok(rounded as i64)
    }
}

/// Unit-modulus phase `z ≠ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseZ(Complex64);

impl PhaseZ {
    pub fn new(z: Complex64) -> Result<Self> {
        if (z.norm() - 1.0).abs() >= 1e-12 {
            return Err(Error::param(
                "z",
                format!("|z| must be 1, got {}", z.norm()),
            ));
        }
        if (z - 1.0).norm() <= 1e-9 {
            return Err(Error::param("z", "must differ from 1"));
        }
        Ok(Self(z))
    }

    pub fn from_angle(angle: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(1.0, angle))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    fn pow(&self, k: i32) -> Complex64 {
        match k {
            0 => Complex64::new(1.0, 0.0),
            1 => self.0,
            -1 => self.0.conj(),
            k => self.0.powi(k),
        }
    }
}

/// Complex samples `φ(x_i, y_j)` on a [`Grid`], indexed `[i, j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    grid: Grid,
    values: Array2<Complex64>,
}

impl GridField {
    pub fn zeros(grid: Grid) -> Self {
        let n = grid.size();
        Self {
            grid,
            values: Array2::zeros((n, n)),
        }
    }

    pub fn from_fn(grid: Grid, mut f: impl FnMut(f64, f64) -> Complex64) -> Result<Self> {
        let n = grid.size();
        let values = Array2::from_shape_fn((n, n), |(i, j)| f(grid.coord(i), grid.coord(j)));
        Self::from_values(grid, values)
    }

    pub fn from_values(grid: Grid, values: Array2<Complex64>) -> Result<Self> {
        let n = grid.size();
        if values.dim() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: values.nrows(),
            });
        }
        if values
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(Error::InvalidInput("field samples must be finite".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &Array2<Complex64> {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[[i, j]]
    }

    /// Grid L² norm `(h² Σ|φ|²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.grid.spacing * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest sample modulus.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Writes `i,j,x,y,re,im` rows (no header).
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        for ((i, j), v) in self.values.indexed_iter() {
            writeln!(
                w,
                "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
                i,
                j,
                self.grid.coord(i),
                self.grid.coord(j),
                v.re,
                v.im
            )?;
        }
        Ok(())
    }
}

/// A field with unapplied phases `e^{i·units·h²}·z^power` per sample.
#[derive(Debug, Clone)]
struct Tracked {
    grid: Grid,
    values: Array2<Complex64>,
    units: Array2<i64>,
    power: Array2<i32>,
}

impl Tracked {
    fn lift(field: &GridField) -> Self {
        let dim = field.values.dim();
        Self {
            grid: field.grid,
            values: field.values.clone(),
            units: Array2::zeros(dim),
            power: Array2::zeros(dim),
        }
    }

    /// Reads sample `(i + di, j + dj)` into `(i, j)`; reads outside the grid
    /// are zero, and nonzero samples that would leave it are an error.
    fn shifted(&self, di: i64, dj: i64) -> Result<Self> {
        let n = self.grid.size() as i64;
        // samples at source index k land at k - d; those outside [d, n + d) are lost
        let kept = |d: i64| (d.max(0), (n + d).min(n));
        let ((ilo, ihi), (jlo, jhi)) = (kept(di), kept(dj));
        let zero = Complex64::new(0.0, 0.0);
        for ((i, j), v) in self.values.indexed_iter() {
            let (i, j) = (i as i64, j as i64);
            if *v != zero && !(ilo <= i && i < ihi && jlo <= j && j < jhi) {
                return Err(Error::ExtentOverflow);
            }
        }
        let dim = self.values.dim();
        let mut out = Self {
            grid: self.grid,
            values: Array2::zeros(dim),
            units: Array2::zeros(dim),
            power: Array2::zeros(dim),
        };
        if ilo < ihi && jlo < jhi {
            let src = s![ilo as isize..ihi as isize, jlo as isize..jhi as isize];
            let dst = s![
                (ilo - di) as isize..(ihi - di) as isize,
                (jlo - dj) as isize..(jhi - dj) as isize
            ];
            out.values.slice_mut(dst).assign(&self.values.slice(src));
            out.units.slice_mut(dst).assign(&self.units.slice(src));
            out.power.slice_mut(dst).assign(&self.power.slice(src));
        }
        Ok(out)
    }

    /// `U(m·h)`: y-shift by `m` steps, then phase `e^{i·m·h·x}`.
    fn apply_u(&self, m: i64) -> Result<Self> {
        let mut out = self.shifted(0, m)?;
        for ((i, _), u) in out.units.indexed_iter_mut() {
            *u += m * self.grid.offset(i);
        }
        Ok(out)
    }

    /// `V(m·h)`: x-shift by `m` steps with the crossing phase in `y > 0`.
    fn apply_v(&self, m: i64) -> Result<Self> {
        let mut out = self.shifted(m, 0)?;
        let above = |k: i64| i32::from(k > 0);
        for ((i, j), p) in out.power.indexed_iter_mut() {
            if self.grid.offset(j) > 0 {
                let x = self.grid.offset(i);
                *p += above(x) - above(x + m);
            }
        }
        Ok(out)
    }

    fn scalar(mut self, units: i64) -> Self {
        self.units.mapv_inplace(|u| u + units);
        self
    }

    fn materialize(&self, z: Option<&PhaseZ>) -> GridField {
        let h2 = self.grid.spacing * self.grid.spacing;
        let mut values = self.values.clone();
        for (v, (&units, &power)) in values
            .iter_mut()
            .zip(self.units.iter().zip(self.power.iter()))
        {
            if *v == Complex64::new(0.0, 0.0) {
                continue;
            }
            if units != 0 {
                *v *= Complex64::from_polar(1.0, units as f64 * h2);
            }
            if power != 0 {
                let z = z.expect("z-phase present only after V");
                *v *= z.pow(power);
            }
        }
        GridField {
            grid: self.grid,
            values,
        }
    }
}

/// `(U(t)φ)(x, y) = e^{itx} φ(x, y + t)`.
pub fn apply_u(t: f64, field: &GridField) -> Result<GridField> {
    let m = field.grid.steps(t)?;
    Ok(Tracked::lift(field).apply_u(m)?.materialize(None))
}

/// `(V(s)φ)(x, y) = c_s(x, y) φ(x + s, y)`; see the module docs for `c_s`.
pub fn apply_v(s: f64, z: &PhaseZ, field: &GridField) -> Result<GridField> {
    let m = field.grid.steps(s)?;
    Ok(Tracked::lift(field).apply_v(m)?.materialize(Some(z)))
}

/// `(I - e^{-its} V(-s) U(-t) V(s) U(t)) φ`, composed step by step.
pub fn weyl_defect(s: f64, t: f64, z: &PhaseZ, field: &GridField) -> Result<GridField> {
    let grid = field.grid;
    let ms = grid.steps(s)?;
    let mt = grid.steps(t)?;
    if ms <= 0 || mt <= 0 {
        return Err(Error::param("s, t", "must be positive"));
    }
    let composed = Tracked::lift(field)
        .apply_u(mt)?
        .apply_v(ms)?
        .apply_u(-mt)?
        .apply_v(-ms)?
        .scalar(-ms * mt)
        .materialize(Some(z));
    let values = &field.values - &composed.values;
    Ok(GridField { grid, values })
}

/// Whether the pair satisfies the Weyl relation for `(s, t)` on every test
/// field, up to a sup-norm defect of `1e-9`. Vacuously true for no fields.
pub fn is_weyl_pair(s: f64, t: f64, z: &PhaseZ, test_fields: &[GridField]) -> Result<bool> {
    for field in test_fields {
        if weyl_defect(s, t, z, field)?.max_abs() >= 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether grid point `(i, j)` lies in `R(s,t) = {0 < x ≤ s, 0 < y ≤ t}`.
pub fn in_defect_rectangle(grid: &Grid, s: f64, t: f64, i: usize, j: usize) -> bool {
    let (ms, mt) = (
        (s / grid.spacing).round() as i64,
        (t / grid.spacing).round() as i64,
    );
    let (x, y) = (grid.offset(i), grid.offset(j));
    0 < x && x <= ms && 0 < y && y <= mt
}
