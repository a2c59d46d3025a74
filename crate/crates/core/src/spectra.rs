//! Dense nonsymmetric eigendecomposition of recurrence matrices and polar
//! classification of the eigenvalues.

use std::collections::hash_map::DefaultHasher;
use std::f64::consts::TAU;
use std::hash::{Hash, Hasher};

use faer::linalg::solvers::Eigen;
use faer::{Mat, MatRef};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::reduction::RecurrenceMatrix;

/// Numerical thresholds used to classify eigenvalues.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// `|λ|` below this is zero.
    pub zero_mod_tol: f64,
    /// `|λ - 1|` below this is one.
    pub one_tol: f64,
    /// `|Im λ|` at or below this with `Re λ > 0` puts `λ` on the positive real axis.
    pub real_axis_tol: f64,
    /// Distance within which further eigenvalues join the primary generator.
    pub generator_match_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            zero_mod_tol: 1e-6,
            one_tol: 1e-6,
            real_axis_tol: 1e-9,
            generator_match_tol: 1e-4,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let all = [
            ("zero_mod_tol", self.zero_mod_tol),
            ("one_tol", self.one_tol),
            ("real_axis_tol", self.real_axis_tol),
            ("generator_match_tol", self.generator_match_tol),
        ];
        for (name, v) in all {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::validation(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self, z: Complex64) -> bool {
        z.norm() < self.zero_mod_tol
    }

    pub fn classify(&self, z: Complex64) -> EigenClass {
        if self.is_zero(z) {
            EigenClass::Zero
        } else if (z - 1.0).norm() < self.one_tol {
            EigenClass::One
        } else if z.im.abs() <= self.real_axis_tol && z.re > 0.0 {
            EigenClass::ThetaZero
        } else {
            EigenClass::ThetaNonzero
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenClass {
    Zero,
    One,
    ThetaZero,
    ThetaNonzero,
}

impl EigenClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EigenClass::Zero => "zero",
            EigenClass::One => "one",
            EigenClass::ThetaZero => "theta_zero",
            EigenClass::ThetaNonzero => "theta_nonzero",
        }
    }
}

/// Polar form of one eigenvalue.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarEigen {
    pub r: f64,
    /// Argument in `[0, 2π)`.
    pub theta: f64,
    pub theta_is_zero: bool,
    pub class: EigenClass,
}

/// Argument of `z` mapped into `[0, 2π)`.
pub fn angle(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        (a + TAU) % TAU
    } else {
        a
    }
}

/// Eigenvalues of a recurrence matrix, optionally with right eigenvectors.
///
/// Eigenvalues are ordered by decreasing modulus, then increasing argument.
/// Each eigenvector has unit Euclidean norm and its largest-modulus component
/// (first one, on near ties) is real and positive.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
    vectors: Option<Mat<Complex64>>,
    index: Vec<NodeId>,
}

impl Spectrum {
    /// Wraps precomputed eigenvalues (no vectors), e.g. closed-form spectra.
    pub fn from_eigenvalues(eigenvalues: Vec<Complex64>) -> Self {
        let index = (0..eigenvalues.len() as u64).map(NodeId).collect();
        Spectrum {
            eigenvalues,
            vectors: None,
            index,
        }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn has_vectors(&self) -> bool {
        self.vectors.is_some()
    }

    /// Node id for each eigenvector component.
    pub fn index(&self) -> &[NodeId] {
        &self.index
    }

    /// Right eigenvector for eigenvalue `j`.
    pub fn eigenvector(&self, j: usize) -> Option<Vec<Complex64>> {
        let v = self.vectors.as_ref()?;
        Some(v.col(j).iter().copied().collect())
    }

    pub fn classes(&self, tol: &ToleranceConfig) -> Vec<EigenClass> {
        self.eigenvalues.iter().map(|&z| tol.classify(z)).collect()
    }
}

/// Polar forms plus class counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarSummary {
    pub polar: Vec<PolarEigen>,
    pub n_zero: usize,
    pub n_one: usize,
    pub n_theta_nonzero: usize,
}

pub fn polar_classify(s: &Spectrum, tol: &ToleranceConfig) -> PolarSummary {
    let mut out = PolarSummary {
        polar: Vec::with_capacity(s.len()),
        n_zero: 0,
        n_one: 0,
        n_theta_nonzero: 0,
    };
    for &z in s.eigenvalues() {
        let class = tol.classify(z);
        match class {
            EigenClass::Zero => out.n_zero += 1,
            EigenClass::One => out.n_one += 1,
            EigenClass::ThetaNonzero => out.n_theta_nonzero += 1,
            EigenClass::ThetaZero => {}
        }
        let theta_is_zero = class != EigenClass::Zero && z.im.abs() <= tol.real_axis_tol && z.re > 0.0;
        out.polar.push(PolarEigen {
            r: z.norm(),
            theta: angle(z),
            theta_is_zero,
            class,
        });
    }
    out
}

/// Full spectrum of a recurrence matrix.
pub fn eig(r: &RecurrenceMatrix, want_vectors: bool) -> Result<Spectrum> {
    eigen_decompose(r.to_mat().as_ref(), r.index().to_vec(), want_vectors)
}

/// Full spectrum of an arbitrary real square matrix whose rows/columns are
/// labelled by `index`.
pub fn eigen_decompose(m: MatRef<'_, f64>, index: Vec<NodeId>, want_vectors: bool) -> Result<Spectrum> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(Error::validation(format!("expected a nonempty square matrix, got {}x{}", n, m.ncols())));
    }
    if index.len() != n {
        return Err(Error::validation("index length does not match matrix dimension"));
    }
    let mut hasher = DefaultHasher::new();
    for j in 0..n {
        for i in 0..n {
            let x = m[(i, j)];
            if !x.is_finite() {
                return Err(Error::NonFinite);
            }
            x.to_bits().hash(&mut hasher);
        }
    }
    let hash = hasher.finish();

    let (values, vectors) = if want_vectors {
        let evd = Eigen::new_from_real(m).map_err(|_| Error::NonConvergence { hash })?;
        let s = evd.S();
        let values: Vec<Complex64> = (0..n).map(|i| s[i]).collect();
        (values, Some(evd.U().to_owned()))
    } else {
        let values = m.eigenvalues().map_err(|_| Error::NonConvergence { hash })?;
        (values, None)
    };
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonConvergence { hash });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (za, zb) = (values[a], values[b]);
        zb.norm()
            .total_cmp(&za.norm())
            .then_with(|| angle(za).total_cmp(&angle(zb)))
            .then_with(|| a.cmp(&b))
    });
    let eigenvalues = order.iter().map(|&i| values[i]).collect();
    let vectors = vectors.map(|u| {
        let mut sorted = Mat::<Complex64>::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            let mut col: Vec<Complex64> = u.col(src).iter().copied().collect();
            normalize_phase(&mut col);
            for (i, z) in col.into_iter().enumerate() {
                sorted[(i, dst)] = z;
            }
        }
        sorted
    });
    Ok(Spectrum {
        eigenvalues,
        vectors,
        index,
    })
}

/// Scales `v` to unit norm and rotates it so its largest-modulus component
/// is real positive. Near ties (relative 1e-9) resolve to the first index.
pub fn normalize_phase(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return;
    }
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pivot = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-9)).unwrap();
    let p = v[pivot];
    let rot = p.conj() / (p.norm() * norm);
    for z in v.iter_mut() {
        *z *= rot;
    }
    v[pivot] = Complex64::new(v[pivot].norm(), 0.0);
}
