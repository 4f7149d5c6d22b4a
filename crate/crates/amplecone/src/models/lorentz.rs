//! Lorentz isometries, their elliptic/parabolic/hyperbolic classification,
//! and the exact change of basis from an integral hyperbolic lattice to the
//! standard Lorentzian form.

use nalgebra::{DMatrix, DVector};
use num::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::ratmat::{self, RMat};
use crate::lattice::{GramLattice, Int, LatticeVector};

use super::{lorentz_inner, Model, ModelPoint, MODEL_TOL};

/// A matrix preserving the form diag(1,...,1,-1) and the upper sheet.
#[derive(Clone, Debug)]
pub struct LorentzIsometry {
    pub matrix: DMatrix<f64>,
}

fn form_j(n1: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n1, n1, |i, j| {
        if i != j {
            0.0
        } else if i == n1 - 1 {
            -1.0
        } else {
            1.0
        }
    })
}

impl LorentzIsometry {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let n1 = matrix.nrows();
        if matrix.ncols() != n1 || n1 == 0 {
            return Err(Error::NotSquare);
        }
        let j = form_j(n1);
        let residual = (matrix.transpose() * &j * &matrix - &j).abs().max();
        let scale = matrix.abs().max().powi(2).max(1.0);
        if residual > MODEL_TOL * scale {
            return Err(Error::NonLorentzian { residual });
        }
        // the apex (0,...,0,1) must stay on the upper sheet
        if matrix[(n1 - 1, n1 - 1)] <= 0.0 {
            return Err(Error::SheetReversing);
        }
        Ok(LorentzIsometry { matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.nrows() - 1
    }

    pub fn apply(&self, p: &ModelPoint) -> Result<ModelPoint> {
        if p.model != Model::Hyperboloid {
            return Err(Error::ModelMismatch);
        }
        let v = DVector::from_column_slice(&p.coords);
        let image = &self.matrix * v;
        ModelPoint::hyperboloid(image.iter().copied().collect())
    }
}

/// Isometry type by fixed-point location.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
    /// Numerically borderline between parabolic and elliptic.
    Ambiguous,
}

impl std::fmt::Display for IsometryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsometryClass::Elliptic => write!(f, "elliptic"),
            IsometryClass::Parabolic => write!(f, "parabolic"),
            IsometryClass::Hyperbolic => write!(f, "hyperbolic"),
            IsometryClass::Ambiguous => write!(f, "parabolic-or-elliptic ambiguous"),
        }
    }
}

/// Classifies an isometry of the upper sheet by its eigenvalue-1 fixed
/// space.
///
/// The sign of the Lorentzian form restricted to ker(A - I) is a complete
/// invariant: a timelike fixed vector is an interior fixed point (elliptic),
/// a lightlike fixed direction without timelike ones is a single boundary
/// fixed point (parabolic), and a spacelike-only or empty fixed space forces
/// an eigenvalue beyond 1, a translation axis (hyperbolic). An elliptic
/// isometry always fixes a timelike eigenvector, and the axis complement of
/// a hyperbolic one is negative definite, so the three cases are disjoint.
pub fn classify(g: &LorentzIsometry) -> IsometryClass {
    let n1 = g.matrix.nrows();

    // numeric fixed space of the eigenvalue 1
    let a_minus_i = &g.matrix - DMatrix::<f64>::identity(n1, n1);
    let svd = a_minus_i.svd(false, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let ns_tol = 1e-7 * smax.max(1.0);
    let vt = svd.v_t.expect("requested right singular vectors");
    let mut fixed: Vec<DVector<f64>> = Vec::new();
    let mut kernel_max: f64 = 0.0;
    let mut rest_min = f64::INFINITY;
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s < ns_tol {
            fixed.push(vt.row(k).transpose());
            kernel_max = kernel_max.max(*s);
        } else {
            rest_min = rest_min.min(*s);
        }
    }
    // rank decisions need a clean spectral gap around the cutoff
    if fixed.is_empty() {
        if rest_min < ns_tol * 50.0 {
            return IsometryClass::Ambiguous;
        }
        return IsometryClass::Hyperbolic;
    }
    if rest_min.is_finite() && kernel_max > 0.0 && rest_min / kernel_max < 1e3 {
        return IsometryClass::Ambiguous;
    }

    // restrict the Lorentzian form to the fixed space
    let k = fixed.len();
    let restricted = DMatrix::from_fn(k, k, |i, j| {
        let a: Vec<f64> = fixed[i].iter().copied().collect();
        let b: Vec<f64> = fixed[j].iter().copied().collect();
        lorentz_inner(&a, &b).expect("equal lengths")
    });
    let min_eig = restricted
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);

    if min_eig < -1e-6 {
        IsometryClass::Elliptic
    } else if min_eig < -1e-9 {
        IsometryClass::Ambiguous
    } else if min_eig <= 1e-6 {
        IsometryClass::Parabolic
    } else {
        IsometryClass::Hyperbolic
    }
}

/// Exact classification of an integral lattice isometry: the same fixed
/// space criterion, carried out in rational arithmetic on the lattice side.
/// Never reports an ambiguity.
pub fn classify_integer(lattice: &GramLattice, w: &[Vec<Int>]) -> Result<IsometryClass> {
    let d = lattice.dim();
    if w.len() != d || w.iter().any(|r| r.len() != d) {
        return Err(Error::NotSquare);
    }
    // kernel of (w - I) over the integers is a saturated sublattice whose
    // rational span is the full eigenvalue-1 eigenspace
    let mut shifted: Vec<Vec<Int>> = w.to_vec();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= 1;
    }
    let fixed = crate::lattice::snf::kernel_basis(&shifted);
    if fixed.is_empty() {
        return Ok(IsometryClass::Hyperbolic);
    }
    let basis: Vec<LatticeVector> = fixed.into_iter().map(LatticeVector).collect();
    let restricted = lattice.restrict(&basis);
    let (pos, _neg, zero) = ratmat::inertia(&ratmat::int_matrix_to_rational(&restricted));
    Ok(if pos >= 1 {
        IsometryClass::Elliptic
    } else if zero >= 1 {
        IsometryClass::Parabolic
    } else {
        IsometryClass::Hyperbolic
    })
}

/// Change of basis M with M^T diag(1,-1,...,-1) M equal to the Gram matrix,
/// built from an exact rational congruence diagonalization followed by
/// square-root scaling. The model side is reached by rotating the timelike
/// coordinate from first to last position.
pub struct GramToLorentz {
    /// lattice coordinates -> time-first Lorentz coordinates
    pub m: DMatrix<f64>,
    /// inverse of `m`, built from the same exact factors
    pub m_inv: DMatrix<f64>,
    dim: usize,
    gram_f64: DMatrix<f64>,
}

/// Builds the bridge; fails unless the signature is (1, dim-1).
pub fn gram_to_lorentz(lattice: &GramLattice) -> Result<GramToLorentz> {
    lattice.is_hyperbolic()?;
    let d = lattice.dim();
    let g = lattice.gram_rational();
    let (c, diag) = ratmat::congruence_diagonalize(&g);

    let t = (0..d)
        .find(|&i| diag[i].is_positive())
        .expect("signature checked");
    let mut order = vec![t];
    order.extend((0..d).filter(|&i| i != t));

    // cp = c with columns permuted so the positive direction comes first
    let cp: RMat = (0..d)
        .map(|i| order.iter().map(|&j| c[i][j].clone()).collect())
        .collect();
    let cp_inv = ratmat::inverse(&cp).expect("congruence basis is invertible");

    let scales: Vec<f64> = order
        .iter()
        .map(|&j| ratmat::rat_to_f64(&diag[j]).abs().sqrt())
        .collect();

    let m = DMatrix::from_fn(d, d, |i, j| scales[i] * ratmat::rat_to_f64(&cp_inv[i][j]));
    let m_inv = DMatrix::from_fn(d, d, |i, j| ratmat::rat_to_f64(&cp[i][j]) / scales[j]);

    let gram_f64 = DMatrix::from_fn(d, d, |i, j| {
        lattice.gram()[i][j].to_f64().expect("small entries")
    });

    Ok(GramToLorentz {
        m,
        m_inv,
        dim: d,
        gram_f64,
    })
}

impl GramToLorentz {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Max-norm of M^T J' M - G; should be at floating-point scale.
    pub fn residual(&self) -> f64 {
        let d = self.dim;
        let jp = DMatrix::from_fn(d, d, |i, j| {
            if i != j {
                0.0
            } else if i == 0 {
                1.0
            } else {
                -1.0
            }
        });
        (self.m.transpose() * jp * &self.m - &self.gram_f64)
            .abs()
            .max()
    }

    fn permute_time_last(&self, y: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut z = Vec::with_capacity(d);
        z.extend_from_slice(&y[1..]);
        z.push(y[0]);
        z
    }

    fn map_real(&self, x: &[f64]) -> Vec<f64> {
        let v = DVector::from_column_slice(x);
        let y = &self.m * v;
        y.iter().copied().collect()
    }

    /// Hyperboloid point of a vector of positive self-pairing; the ray
    /// through x is normalized onto the sheet and the upper component.
    pub fn hyperboloid_point_real(&self, x: &[f64]) -> Result<ModelPoint> {
        let y = self.map_real(x);
        let mut z = self.permute_time_last(&y);
        let q = lorentz_inner(&z, &z)?;
        if q >= -MODEL_TOL {
            return Err(Error::NotInPositiveCone {
                norm: format!("{:.6}", -q),
            });
        }
        let scale = (-q).sqrt();
        for v in z.iter_mut() {
            *v /= scale;
        }
        if z[self.dim - 1] < 0.0 {
            for v in z.iter_mut() {
                *v = -*v;
            }
        }
        ModelPoint::hyperboloid(z)
    }

    pub fn hyperboloid_point(&self, x: &LatticeVector) -> Result<ModelPoint> {
        self.hyperboloid_point_real(&x.to_f64())
    }

    /// Boundary point on the unit sphere of the ball model for an isotropic
    /// ray.
    pub fn boundary_ball_point(&self, e: &LatticeVector) -> Result<Vec<f64>> {
        let y = self.map_real(&e.to_f64());
        let mut z = self.permute_time_last(&y);
        let n = self.dim - 1;
        if z[n].abs() < MODEL_TOL {
            return Err(Error::DegenerateCusp);
        }
        if z[n] < 0.0 {
            for v in z.iter_mut() {
                *v = -*v;
            }
        }
        let t = z[n];
        Ok(z[..n].iter().map(|v| v / t).collect())
    }

    /// Conjugates an integral lattice isometry into the model coordinates.
    pub fn isometry(&self, w: &[Vec<Int>]) -> Result<LorentzIsometry> {
        let d = self.dim;
        if w.len() != d || w.iter().any(|r| r.len() != d) {
            return Err(Error::NotSquare);
        }
        let wf = DMatrix::from_fn(d, d, |i, j| w[i][j].to_f64().expect("small entries"));
        let a_first = &self.m * wf * &self.m_inv;
        // rotate the time coordinate from slot 0 to slot d-1
        let perm = DMatrix::from_fn(d, d, |i, j| {
            let src = if i == d - 1 { 0 } else { i + 1 };
            if j == src {
                1.0
            } else {
                0.0
            }
        });
        let a = &perm * a_first * perm.transpose();
        LorentzIsometry::new(a)
    }
}

/// Lattice reflection x -> x + <x, delta> delta as an integer matrix.
pub fn reflection_matrix(lattice: &GramLattice, delta: &LatticeVector) -> Result<Vec<Vec<Int>>> {
    let norm = lattice.norm(delta)?;
    if norm != Int::from(-2) {
        return Err(Error::NormNotMinusTwo {
            norm: norm.to_string(),
        });
    }
    let d = lattice.dim();
    let functional = lattice.functional(delta);
    let mut w = vec![vec![Int::zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut v = &delta.0[i] * &functional[j];
            if i == j {
                v += 1;
            }
            w[i][j] = v;
        }
    }
    Ok(w)
}
