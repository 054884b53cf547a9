//! Two-sector direct sums `H₁ ⊕ H₂` in finite dimensions.
//!
//! A state with components in both sectors is `Ψ = (ψ₁ ⊕ 0) + (0 ⊕ ψ₂)`; the
//! two pieces are orthogonal regardless of how alike `ψ₁` and `ψ₂` look.
//! Operators are 2×2 block matrices. Block-diagonal ones never connect the
//! sectors; any nonzero off-diagonal block does.

mod boxlen;

pub use boxlen::{box_spectrum, boxes_equivalent, BoxLength};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CVector = DVector<Complex64>;
pub type CMatrix = DMatrix<Complex64>;

/// Tolerance on `‖φ‖ - 1` for inputs that must be normalised.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SectorState {
    pub psi1: CVector,
    pub psi2: CVector,
}

impl SectorState {
    pub fn new(psi1: CVector, psi2: CVector) -> Self {
        Self { psi1, psi2 }
    }

    /// `ψ ⊕ 0`.
    pub fn first(psi: CVector, d2: usize) -> Self {
        Self::new(psi, CVector::zeros(d2))
    }

    /// `0 ⊕ ψ`.
    pub fn second(d1: usize, psi: CVector) -> Self {
        Self::new(CVector::zeros(d1), psi)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.psi1.len(), self.psi2.len())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi1.norm_squared() + self.psi2.norm_squared()
    }
}

/// `⟨u, v⟩ = ⟨ψ₁ᵘ, ψ₁ᵛ⟩ + ⟨ψ₂ᵘ, ψ₂ᵛ⟩`, antilinear in `u`.
pub fn inner(u: &SectorState, v: &SectorState) -> Result<Complex64> {
    check_dims(u.dims(), v.dims())?;
    Ok(u.psi1.dotc(&v.psi1) + u.psi2.dotc(&v.psi2))
}

fn check_dims(expected: (usize, usize), found: (usize, usize)) -> Result<()> {
    if expected.0 != found.0 {
        return Err(Error::DimensionMismatch {
            expected: expected.0,
            found: found.0,
        });
    }
    if expected.1 != found.1 {
        return Err(Error::DimensionMismatch {
            expected: expected.1,
            found: found.1,
        });
    }
    Ok(())
}

/// Block operator `[[B₁₁, B₁₂], [B₂₁, B₂₂]]` on `H₁ ⊕ H₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorOperator {
    b11: CMatrix,
    b12: CMatrix,
    b21: CMatrix,
    b22: CMatrix,
}

impl SectorOperator {
    pub fn new(b11: CMatrix, b12: CMatrix, b21: CMatrix, b22: CMatrix) -> Result<Self> {
        let (d1, d2) = (b11.nrows(), b22.nrows());
        let shapes = [
            (b11.shape(), (d1, d1)),
            (b12.shape(), (d1, d2)),
            (b21.shape(), (d2, d1)),
            (b22.shape(), (d2, d2)),
        ];
        for (found, expected) in shapes {
            if found != expected {
                return Err(Error::InvalidInput(format!(
                    "block has shape {found:?}, expected {expected:?}"
                )));
            }
        }
        Ok(Self { b11, b12, b21, b22 })
    }

    /// `A₁ ⊕ A₂`.
    pub fn block_diagonal(a1: CMatrix, a2: CMatrix) -> Result<Self> {
        let (d1, d2) = (a1.nrows(), a2.nrows());
        Self::new(a1, CMatrix::zeros(d1, d2), CMatrix::zeros(d2, d1), a2)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.b11.nrows(), self.b22.nrows())
    }

    pub fn blocks(&self) -> [&CMatrix; 4] {
        [&self.b11, &self.b12, &self.b21, &self.b22]
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        let close = |a: &CMatrix, b: &CMatrix| (a - b).iter().all(|z| z.norm() <= tol);
        close(&self.b11, &self.b11.adjoint())
            && close(&self.b22, &self.b22.adjoint())
            && close(&self.b21, &self.b12.adjoint())
    }

    pub fn apply(&self, state: &SectorState) -> Result<SectorState> {
        check_dims(self.dims(), state.dims())?;
        Ok(SectorState {
            psi1: &self.b11 * &state.psi1 + &self.b12 * &state.psi2,
            psi2: &self.b21 * &state.psi1 + &self.b22 * &state.psi2,
        })
    }
}

/// True iff both off-diagonal blocks are exactly zero, i.e. the operator is
/// of the form `A₁ ⊕ A₂`.
pub fn is_sector_preserving(op: &SectorOperator) -> bool {
    let zero = Complex64::new(0.0, 0.0);
    op.b12.iter().all(|z| *z == zero) && op.b21.iter().all(|z| *z == zero)
}

/// Basis states `u = e_i ⊕ 0`, `v = 0 ⊕ e_j` with `⟨u, op·v⟩ ≠ 0`, if the
/// operator couples the sectors.
pub fn cross_sector_witness(op: &SectorOperator) -> Option<(SectorState, SectorState)> {
    let (d1, d2) = op.dims();
    let zero = Complex64::new(0.0, 0.0);
    let basis = |d: usize, k: usize| {
        let mut e = CVector::zeros(d);
        e[k] = Complex64::new(1.0, 0.0);
        e
    };
    if let Some((i, j)) = (0..d1)
        .flat_map(|i| (0..d2).map(move |j| (i, j)))
        .find(|&(i, j)| op.b12[(i, j)] != zero)
    {
        return Some((
            SectorState::first(basis(d1, i), d2),
            SectorState::second(d1, basis(d2, j)),
        ));
    }
    // ⟨e_i ⊕ 0, op (0 ⊕ e_j)⟩ = B₁₂[i,j]; a lone B₂₁ entry shows up with the roles swapped.
    (0..d2)
        .flat_map(|i| (0..d1).map(move |j| (i, j)))
        .find(|&(i, j)| op.b21[(i, j)] != zero)
        .map(|(i, j)| {
            (
                SectorState::second(d1, basis(d2, i)),
                SectorState::first(basis(d1, j), d2),
            )
        })
}

fn require_unit(name: &'static str, v: &CVector) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::InvalidInput(format!(
            "{name} must be normalised, has norm {norm}"
        )));
    }
    Ok(())
}

/// `⟨φ₁⊗φ₂, (A⊗B)(φ₁⊗φ₂)⟩` without forming the `d₁d₂`-dimensional product.
///
/// The product state is held as the `d₁×d₂` matrix `Φ = φ₁φ₂ᵀ`, on which
/// `A⊗B` acts as `Φ ↦ AΦBᵀ`.
pub fn product_expectation(
    a: &CMatrix,
    b: &CMatrix,
    phi1: &CVector,
    phi2: &CVector,
) -> Result<Complex64> {
    require_unit("phi1", phi1)?;
    require_unit("phi2", phi2)?;
    if !a.is_square() || a.nrows() != phi1.len() {
        return Err(Error::DimensionMismatch {
            expected: phi1.len(),
            found: a.nrows(),
        });
    }
    if !b.is_square() || b.nrows() != phi2.len() {
        return Err(Error::DimensionMismatch {
            expected: phi2.len(),
            found: b.nrows(),
        });
    }
    let state = phi1 * phi2.transpose();
    let image = a * &state * b.transpose();
    Ok(state
        .iter()
        .zip(image.iter())
        .map(|(s, t)| s.conj() * t)
        .sum())
}
