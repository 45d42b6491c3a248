//! Matrix classes that decide existence and uniqueness of equilibria.
//!
//! The P-matrix test enumerates every principal minor; it is exact but
//! exponential, so it refuses dimensions above [`P_ENUMERATION_CAP`].

use std::fmt;

use crate::eigen::eigenvalues;
use crate::error::{Error, Result};
use crate::game_model::DependenceMatrix;
use crate::matrix::{Lu, SquareMatrix};
use crate::simplex;

pub const P_ENUMERATION_CAP: usize = 20;
pub use crate::DEFAULT_TOL;
/// An eigenvalue counts as real when `|Im| ≤ EIGEN_REAL_TOL·(1 + ‖m‖∞)`.
pub const EIGEN_REAL_TOL: f64 = 1e-8;

/// True iff every principal minor is positive.
///
/// A minor of order `k` counts as positive when its determinant exceeds
/// `tol · scale^k`, `scale` being the largest entry magnitude of `m`.
pub fn is_p_matrix(m: &SquareMatrix, tol: f64) -> Result<bool> {
    is_p_matrix_capped(m, tol, P_ENUMERATION_CAP)
}

pub fn is_p_matrix_capped(m: &SquareMatrix, tol: f64, cap: usize) -> Result<bool> {
    let n = m.n();
    let cap = cap.min(62);
    if n > cap {
        return Err(Error::DimensionTooLarge { n, cap });
    }
    let scale = m.max_abs();
    if scale == 0.0 {
        return Ok(false);
    }
    // Cheap necessary condition first: positive diagonal.
    if m.diagonal().any(|d| d <= tol * scale) {
        return Ok(false);
    }
    let mut idx = Vec::with_capacity(n);
    for mask in 1u64..(1u64 << n) {
        idx.clear();
        idx.extend((0..n).filter(|&i| mask & (1 << i) != 0));
        if idx.len() == 1 {
            continue;
        }
        let det = Lu::new(&m.principal_submatrix(&idx)).determinant();
        if det <= tol * scale.powi(idx.len() as i32) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_z_matrix(m: &SquareMatrix) -> bool {
    m.off_diagonal().all(|(_, _, v)| v <= 0.0)
}

pub fn is_l_matrix(m: &SquareMatrix) -> bool {
    is_z_matrix(m) && m.diagonal().all(|d| d > 0.0)
}

/// True iff some `x ≻ 0` has `M x ≻ 0`.
///
/// By positive scaling this is feasibility of `x ≥ 1, M x ≥ 1`, decided with
/// phase-1 simplex after substituting `x = 1 + y` and adding surplus `s`:
/// `M y − s = 1 − M·1`, `y, s ≥ 0`.
pub fn is_s_matrix(m: &SquareMatrix, tol: f64) -> bool {
    let n = m.n();
    let cols = 2 * n;
    let mut a = vec![0.0; n * cols];
    let ones = vec![1.0; n];
    let m1 = m.mul_vec(&ones);
    let mut b = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            a[i * cols + j] = m[(i, j)];
        }
        a[i * cols + n + i] = -1.0;
        b[i] = 1.0 - m1[i];
    }
    simplex::feasible_point(&a, n, cols, &b, tol).is_some()
}

pub fn is_strictly_diagonally_dominant(m: &SquareMatrix) -> bool {
    m.rows().enumerate().all(|(i, row)| {
        let off: f64 = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.abs())
            .sum();
        row[i].abs() > off
    })
}

/// Largest eigenvalue modulus.
///
/// `tol` is accepted for interface symmetry with the other spectral queries;
/// accuracy is that of the QR iteration, roughly machine precision times ‖m‖.
pub fn spectral_radius(m: &SquareMatrix, _tol: f64) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().fold(0.0, |r, e| r.max(e.norm())))
}

/// Smallest real eigenvalue, or `None` when every eigenvalue is complex.
///
/// `tol` is the relative threshold on the imaginary part; see [`EIGEN_REAL_TOL`].
pub fn min_real_eigenvalue(m: &SquareMatrix, tol: f64) -> Result<Option<f64>> {
    let bound = tol * (1.0 + m.norm_inf());
    Ok(eigenvalues(m)?
        .iter()
        .filter(|e| e.im.abs() <= bound)
        .map(|e| e.re)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v)))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniquenessVerdict {
    Unique,
    NotUnique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistenceVerdict {
    /// An equilibrium exists for every standalone target vector.
    Always,
    /// Complements: equilibria exist for every target iff `ρ(G) < 1`.
    IffSpectralRadiusLtOne,
    Inconclusive,
}

/// The result each verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Citation {
    /// Unique equilibrium for every target iff `I + G` is a P-matrix.
    PMatrixUniqueness,
    /// Nonnegative `I + G` with positive diagonal always admits an equilibrium.
    SubstitutesExistence,
    /// For complements, existence for all targets iff `ρ(G) < 1`, and then it is unique.
    ComplementsSpectralRadius,
    /// Symmetric `G`: uniqueness iff `|λ_min(G)| < 1`.
    SymmetricMinEigenvalue,
    /// Z-matrix `G`: uniqueness iff `|λ_min(G)| < 1`.
    ZMatrixMinEigenvalue,
    /// Strictly diagonally dominant `I + G` is a P-matrix.
    DiagonalDominance,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::PMatrixUniqueness => "uniqueness:p-matrix",
            Citation::SubstitutesExistence => "existence:substitutes",
            Citation::ComplementsSpectralRadius => "existence:complements-spectral-radius",
            Citation::SymmetricMinEigenvalue => "uniqueness:symmetric-min-eigenvalue",
            Citation::ZMatrixMinEigenvalue => "uniqueness:z-matrix-min-eigenvalue",
            Citation::DiagonalDominance => "uniqueness:diagonal-dominance",
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Matrix-class flags and equilibrium verdicts for a dependence matrix `G`.
///
/// `is_p`, `is_s`, `is_l` and `is_sdd` describe `I + G`; `is_z` and the
/// spectral quantities describe `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub is_p: bool,
    pub is_z: bool,
    pub is_l: bool,
    pub is_s: bool,
    pub is_sdd: bool,
    pub is_nonnegative: bool,
    pub is_symmetric: bool,
    pub spectral_radius: f64,
    pub min_real_eigenvalue: Option<f64>,
    pub uniqueness_verdict: UniquenessVerdict,
    pub existence_verdict: ExistenceVerdict,
    pub citations: Vec<Citation>,
}

impl ClassificationReport {
    /// Whether an equilibrium exists for every standalone target, when decidable.
    pub fn exists_for_all_targets(&self) -> Option<bool> {
        match self.existence_verdict {
            ExistenceVerdict::Always => Some(true),
            ExistenceVerdict::IffSpectralRadiusLtOne => Some(self.spectral_radius < 1.0),
            ExistenceVerdict::Inconclusive => None,
        }
    }
}

pub fn classify(g: &DependenceMatrix) -> Result<ClassificationReport> {
    classify_with_tol(g, DEFAULT_TOL)
}

pub fn classify_with_tol(g: &DependenceMatrix, tol: f64) -> Result<ClassificationReport> {
    let gm = g.matrix();
    let m = g.identity_plus();
    let is_p = is_p_matrix(&m, tol)?;
    let is_z = is_z_matrix(gm);
    let is_l = is_l_matrix(&m);
    let is_s = is_s_matrix(&m, tol);
    let is_sdd = is_strictly_diagonally_dominant(&m);
    let is_nonnegative = gm.as_slice().iter().all(|&v| v >= 0.0);
    let is_symmetric = gm.is_symmetric(0.0);
    let spectral_radius = spectral_radius(gm, tol)?;
    let min_real_eigenvalue = min_real_eigenvalue(gm, EIGEN_REAL_TOL)?;

    let mut citations = vec![Citation::PMatrixUniqueness];
    let uniqueness_verdict = if is_p {
        UniquenessVerdict::Unique
    } else {
        UniquenessVerdict::NotUnique
    };
    if is_symmetric {
        citations.push(Citation::SymmetricMinEigenvalue);
    }
    if is_z {
        citations.push(Citation::ZMatrixMinEigenvalue);
    }
    if is_sdd {
        citations.push(Citation::DiagonalDominance);
    }

    let existence_verdict = if is_nonnegative {
        citations.push(Citation::SubstitutesExistence);
        ExistenceVerdict::Always
    } else if is_z {
        citations.push(Citation::ComplementsSpectralRadius);
        ExistenceVerdict::IffSpectralRadiusLtOne
    } else if is_p {
        ExistenceVerdict::Always
    } else {
        ExistenceVerdict::Inconclusive
    };
    citations.sort();
    citations.dedup();

    Ok(ClassificationReport {
        is_p,
        is_z,
        is_l,
        is_s,
        is_sdd,
        is_nonnegative,
        is_symmetric,
        spectral_radius,
        min_real_eigenvalue,
        uniqueness_verdict,
        existence_verdict,
        citations,
    })
}
