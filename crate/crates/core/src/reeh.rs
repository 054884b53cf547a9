//! Aharonov-Bohm flux and the exponentiated commutator of the magnetic
//! translations.
//!
//! For a charge `q` circling a flux line `Φ`, the parameter `α = qΦ/2π`
//! decides the group commutator of the translation unitaries:
//!
//! ```text
//! V_x(a) V_y(b) V_x(a)⁻¹ V_y(b)⁻¹ = exp(i·(πα/2)·[ε(x) - ε(x+a)]·[ε(y) - ε(y-b)])·I
//! ```
//!
//! with `ε = sign`. The bracket product is 0 unless the translations cross
//! both axes, where it is ±4 and the phase is `e^{±2πiα}`. Integer `α` gives
//! the Weyl group back.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance for deciding that a flux parameter is an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxConfig {
    charge: f64,
    flux: f64,
    alpha: f64,
}

impl FluxConfig {
    /// Configuration with the given `α`, for unit charge.
    pub fn from_alpha(alpha: f64) -> Self {
        Self {
            charge: 1.0,
            flux: 2.0 * PI * alpha,
            alpha,
        }
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn flux(&self) -> f64 {
        self.flux
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Flux configuration for charge `q` and trapped flux `phi`.
pub fn make_alpha(q: f64, phi: f64) -> FluxConfig {
    FluxConfig {
        charge: q,
        flux: phi,
        alpha: q * phi / (2.0 * PI),
    }
}

/// Base point `(x, y)` and translation amounts `(a, b)` of a commutator probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationProbe {
    x: f64,
    y: f64,
    a: f64,
    b: f64,
}

impl TranslationProbe {
    /// Fails with [`Error::OnAxis`] if any of `x`, `x+a`, `y`, `y-b` is zero.
    pub fn new(x: f64, y: f64, a: f64, b: f64) -> Result<Self> {
        for (name, v) in [("x", x), ("x+a", x + a), ("y", y), ("y-b", y - b)] {
            if !v.is_finite() {
                return Err(Error::param("probe", format!("{name} is not finite")));
            }
            if v == 0.0 {
                return Err(Error::OnAxis(name));
            }
        }
        Ok(Self { x, y, a, b })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `[ε(x) - ε(x+a)]·[ε(y) - ε(y-b)]`, always one of 0, 4, -4.
    pub fn bracket_product(&self) -> i32 {
        let eps = |t: f64| if t > 0.0 { 1 } else { -1 };
        (eps(self.x) - eps(self.x + self.a)) * (eps(self.y) - eps(self.y - self.b))
    }
}

/// Unit complex number `e^{2πi·turns}`, exact at quarter turns.
pub fn cis_turns(turns: f64) -> Complex64 {
    let reduced = turns - turns.round();
    let quarters = reduced * 4.0;
    if quarters == quarters.round() {
        return match quarters as i32 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            -1 => Complex64::new(0.0, -1.0),
            _ => Complex64::new(-1.0, 0.0),
        };
    }
    let (s, c) = (2.0 * PI * reduced).sin_cos();
    Complex64::new(c, s)
}

/// The scalar multiplying the identity in the group commutator.
pub fn commutator_phase(cfg: &FluxConfig, probe: &TranslationProbe) -> Complex64 {
    // (πα/2)·P with P ∈ {0, ±4} is P/4 full turns of α.
    let quarter_turns = probe.bracket_product() / 4;
    cis_turns(quarter_turns as f64 * cfg.alpha)
}

fn is_integer(v: f64) -> bool {
    (v - v.round()).abs() < INTEGER_TOLERANCE
}

/// Whether the translations generate the Weyl group, i.e. `α ∈ ℤ`.
pub fn is_weyl(cfg: &FluxConfig) -> bool {
    is_integer(cfg.alpha)
}

/// Flux trapped in a superconducting ring comes in quanta `π/e`; with `q = e`
/// the parameter is `α = n/2` and only even `n` is Weyl.
pub fn superconducting_case(n: u32) -> (f64, bool) {
    let alpha = n as f64 / 2.0;
    (alpha, n.is_multiple_of(2))
}

/// Whether two flux parameters give unitarily equivalent representations.
pub fn representations_equivalent(a1: f64, a2: f64) -> bool {
    is_integer(a1 - a2)
}

/// Vector potential of a flux line at the origin, `Φ/(2πr)·(-y/r, x/r)`.
pub fn vector_potential(phi: f64, x: f64, y: f64) -> Result<(f64, f64)> {
    let r2 = x * x + y * y;
    if r2 == 0.0 {
        return Err(Error::SingularPoint);
    }
    let scale = phi / (2.0 * PI * r2);
    Ok((-y * scale, x * scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Interference disappears; two separate diffraction peaks remain.
    TwoDiffractionPeaks,
    /// The ordinary Aharonov-Bohm fringe shift.
    FullAbShift,
    /// Half the ordinary fringe shift.
    HalfAbShift,
}

/// Expected result of the solenoid experiment, stray fields neglected.
///
/// If the vector potential cannot be confined to one arm the experiment
/// only ever shows the ordinary shift and cannot detect superseparability.
pub fn predict_outcome(confines_potential: bool, superseparability_holds: bool) -> Outcome {
    match (confines_potential, superseparability_holds) {
        (false, _) => Outcome::FullAbShift,
        (true, true) => Outcome::TwoDiffractionPeaks,
        (true, false) => Outcome::HalfAbShift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E: f64 = 1.602_176_634e-19;

    #[test]
    fn from_alpha_keeps_alpha_exactly() {
        for alpha in [0.5, 1.0 / 3.0, 0.1, 2.0] {
            assert_eq!(FluxConfig::from_alpha(alpha).alpha(), alpha);
        }
        assert!((FluxConfig::from_alpha(0.25).flux() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_from_charge_and_flux() {
        for n in 0..8 {
            let cfg = make_alpha(E, n as f64 * PI / E);
            assert!((cfg.alpha() - n as f64 / 2.0).abs() < 1e-12);
        }
        assert_eq!(make_alpha(3.0, 0.0).alpha(), 0.0);
        assert!((make_alpha(2.0 * PI, 1.0).alpha() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn probe_rejects_axis_points() {
        assert_eq!(
            TranslationProbe::new(0.0, 1.0, 1.0, 1.0),
            Err(Error::OnAxis("x"))
        );
        assert_eq!(
            TranslationProbe::new(1.0, 1.0, -1.0, 1.0),
            Err(Error::OnAxis("x+a"))
        );
        assert_eq!(
            TranslationProbe::new(1.0, 0.0, 1.0, 1.0),
            Err(Error::OnAxis("y"))
        );
        assert_eq!(
            TranslationProbe::new(1.0, 2.0, 1.0, 2.0),
            Err(Error::OnAxis("y-b"))
        );
    }

    #[test]
    fn no_x_crossing_gives_identity() {
        let cfg = make_alpha(1.0, 1.234);
        let p = TranslationProbe::new(1.0, 1.0, 2.0, 5.0).unwrap();
        assert_eq!(commutator_phase(&cfg, &p), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn half_flux_quantum_crossing_gives_minus_one() {
        let cfg = make_alpha(PI, 1.0);
        assert_eq!(cfg.alpha(), 0.5);
        let p = TranslationProbe::new(-1.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(p.bracket_product(), -4);
        assert_eq!(commutator_phase(&cfg, &p), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn generic_alpha_gives_conjugate_pair() {
        let cfg = make_alpha(2.0 * PI, 0.3);
        let plus = TranslationProbe::new(1.0, 1.0, -2.0, 2.0).unwrap();
        let minus = TranslationProbe::new(-1.0, 1.0, 2.0, 2.0).unwrap();
        assert_eq!(plus.bracket_product(), 4);
        let a = commutator_phase(&cfg, &plus);
        let b = commutator_phase(&cfg, &minus);
        let expected = Complex64::from_polar(1.0, 2.0 * PI * 0.3);
        assert!((a - expected).norm() < 1e-15);
        assert!((b - expected.conj()).norm() < 1e-15);
    }

    #[test]
    fn weyl_classification() {
        let from = |a: f64| make_alpha(2.0 * PI, a);
        assert!(is_weyl(&from(3.0)));
        assert!(!is_weyl(&from(0.5)));
        assert!(is_weyl(&from(0.0)));
        assert_eq!(superconducting_case(2), (1.0, true));
        assert_eq!(superconducting_case(1), (0.5, false));
        assert_eq!(superconducting_case(0), (0.0, true));
    }

    #[test]
    fn equivalence_examples() {
        assert!(representations_equivalent(0.5, 1.5));
        assert!(!representations_equivalent(0.0, 0.5));
        assert!(representations_equivalent(0.37, 0.37));
    }

    #[test]
    fn equivalence_is_an_equivalence_relation() {
        let set = [0.0, 0.5, 1.0, 1.5, 2.0, 0.25, -0.75, 3.25, -1.0];
        for &a in &set {
            assert!(representations_equivalent(a, a));
            for &b in &set {
                assert_eq!(
                    representations_equivalent(a, b),
                    representations_equivalent(b, a)
                );
                for &c in &set {
                    if representations_equivalent(a, b) && representations_equivalent(b, c) {
                        assert!(representations_equivalent(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn vector_potential_examples() {
        let (ax, ay) = vector_potential(2.0 * PI, 1.0, 0.0).unwrap();
        assert!(ax.abs() < 1e-16 && (ay - 1.0).abs() < 1e-15);
        assert_eq!(vector_potential(1.0, 0.0, 0.0), Err(Error::SingularPoint));
    }

    #[test]
    fn vector_potential_circulation_equals_flux() {
        let phi = 2.7;
        for radius in [0.01, 1.0, 37.0] {
            let nodes = 10_000;
            let dt = 2.0 * PI / nodes as f64;
            let circulation: f64 = (0..nodes)
                .map(|k| {
                    let t = k as f64 * dt;
                    let (x, y) = (radius * t.cos(), radius * t.sin());
                    let (ax, ay) = vector_potential(phi, x, y).unwrap();
                    // tangent dr/dt = r(-sin t, cos t)
                    (ax * -y + ay * x) * dt
                })
                .sum();
            assert!((circulation - phi).abs() / phi < 1e-6, "R={radius}");
        }
    }

    #[test]
    fn outcome_table() {
        assert_eq!(predict_outcome(true, true), Outcome::TwoDiffractionPeaks);
        assert_eq!(predict_outcome(false, true), Outcome::FullAbShift);
        assert_eq!(predict_outcome(false, false), Outcome::FullAbShift);
        assert_eq!(predict_outcome(true, false), Outcome::HalfAbShift);
    }

    #[test]
    fn cis_turns_is_exact_on_quarters() {
        assert_eq!(cis_turns(0.0), Complex64::new(1.0, 0.0));
        assert_eq!(cis_turns(3.0), Complex64::new(1.0, 0.0));
        assert_eq!(cis_turns(-0.5), Complex64::new(-1.0, 0.0));
        assert_eq!(cis_turns(1.25), Complex64::new(0.0, 1.0));
        assert_eq!(cis_turns(-1.25), Complex64::new(0.0, -1.0));
    }

    fn off_axis() -> impl Strategy<Value = f64> {
        prop_oneof![-10.0f64..-1e-3, 1e-3f64..10.0]
    }

    proptest! {
        #[test]
        fn phase_has_unit_modulus_and_integer_alpha_is_trivial(
            x in off_axis(), y in off_axis(), xa in off_axis(), yb in off_axis(),
            alpha in -5.0f64..5.0, n in -4i32..4,
        ) {
            let p = TranslationProbe::new(x, y, xa - x, y - yb);
            prop_assume!(p.is_ok());
            let p = p.unwrap();
            prop_assert!([0, 4, -4].contains(&p.bracket_product()));
            let phase = commutator_phase(&make_alpha(2.0 * PI, alpha), &p);
            prop_assert!((phase.norm() - 1.0).abs() < 1e-15);
            let trivial = commutator_phase(&make_alpha(2.0 * PI, n as f64), &p);
            prop_assert_eq!(trivial, Complex64::new(1.0, 0.0));
        }

        #[test]
        fn reversing_both_translations_keeps_the_phase(
            x in off_axis(), y in off_axis(), xa in off_axis(), yb in off_axis(),
            alpha in -2.0f64..2.0,
        ) {
            let (a, b) = (xa - x, y - yb);
            let fwd = TranslationProbe::new(x, y, a, b);
            let rev = TranslationProbe::new(x + a, y - b, -a, -b);
            prop_assume!(fwd.is_ok() && rev.is_ok());
            let cfg = make_alpha(2.0 * PI, alpha);
            prop_assert_eq!(
                commutator_phase(&cfg, &fwd.unwrap()),
                commutator_phase(&cfg, &rev.unwrap())
            );
        }

        #[test]
        fn vector_potential_magnitude(phi in -10.0f64..10.0, x in off_axis(), y in off_axis()) {
            let (ax, ay) = vector_potential(phi, x, y).unwrap();
            let r = (x * x + y * y).sqrt();
            let expected = phi.abs() / (2.0 * PI * r);
            prop_assert!(((ax * ax + ay * ay).sqrt() - expected).abs() <= 1e-14 * expected.max(1e-300));
        }
    }
}
