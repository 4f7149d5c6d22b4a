//! The three classical models of hyperbolic n-space and the conversions
//! between them.
//!
//! Conventions. The hyperboloid model lives in R^{n+1} with the form
//! x.y = x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1}; points satisfy
//! x.x = -1 with positive last (timelike) coordinate. The ball model is the
//! open unit ball of R^n, the upper half-space model the set x_n > 0.
//! Distances in the ball and upper half-space are pulled back through the
//! stereographic projection and the standard transformation respectively.

pub mod lorentz;
pub mod moebius;

use serde::Serialize;

use crate::error::{Error, Result};

pub use lorentz::{classify, gram_to_lorentz, GramToLorentz, IsometryClass, LorentzIsometry};
pub use moebius::{poincare_extension, Generator, MoebiusMap, Point};

pub(crate) const MODEL_TOL: f64 = 1e-9;

/// Which model a point's coordinates refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Hyperboloid,
    Ball,
    UpperHalf,
}

/// A point tagged with its model.
#[derive(Clone, Debug, Serialize)]
pub struct ModelPoint {
    pub model: Model,
    pub coords: Vec<f64>,
}

impl ModelPoint {
    pub fn hyperboloid(coords: Vec<f64>) -> Result<Self> {
        let q = lorentz_inner(&coords, &coords)?;
        // far out on the sheet the defect scales with the squared magnitude
        let scale = coords.iter().map(|v| v * v).sum::<f64>().max(1.0);
        if (q + 1.0).abs() > MODEL_TOL * scale {
            return Err(Error::OutsideModel);
        }
        if *coords.last().ok_or(Error::OutsideModel)? <= 0.0 {
            return Err(Error::OutsideModel);
        }
        Ok(ModelPoint {
            model: Model::Hyperboloid,
            coords,
        })
    }

    pub fn ball(coords: Vec<f64>) -> Result<Self> {
        if euclidean_norm(&coords) >= 1.0 {
            return Err(Error::OutsideModel);
        }
        Ok(ModelPoint {
            model: Model::Ball,
            coords,
        })
    }

    pub fn upper_half(coords: Vec<f64>) -> Result<Self> {
        if *coords.last().ok_or(Error::OutsideModel)? <= 0.0 {
            return Err(Error::OutsideModel);
        }
        Ok(ModelPoint {
            model: Model::UpperHalf,
            coords,
        })
    }

    /// Hyperbolic dimension n of the space the point lives in.
    pub fn dimension(&self) -> usize {
        match self.model {
            Model::Hyperboloid => self.coords.len() - 1,
            _ => self.coords.len(),
        }
    }

    pub fn to_model(&self, target: Model) -> Result<ModelPoint> {
        match (self.model, target) {
            (a, b) if a == b => Ok(self.clone()),
            (Model::Ball, Model::Hyperboloid) => stereo(self),
            (Model::Hyperboloid, Model::Ball) => stereo_inv(self),
            (Model::UpperHalf, Model::Ball) => standard_transformation(self),
            (Model::Ball, Model::UpperHalf) => standard_transformation_inv(self),
            (Model::UpperHalf, Model::Hyperboloid) => stereo(&standard_transformation(self)?),
            (Model::Hyperboloid, Model::UpperHalf) => {
                standard_transformation_inv(&stereo_inv(self)?)
            }
            _ => unreachable!(),
        }
    }
}

pub fn euclidean_norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn euclidean_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// x_1 y_1 + ... + x_n y_n - x_{n+1} y_{n+1}.
pub fn lorentz_inner(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len() - 1;
    let spatial: f64 = x[..n].iter().zip(&y[..n]).map(|(a, b)| a * b).sum();
    Ok(spatial - x[n] * y[n])
}

/// Hyperbolic distance between two points of the same model.
pub fn dist(p: &ModelPoint, q: &ModelPoint) -> Result<f64> {
    if p.model != q.model {
        return Err(Error::ModelMismatch);
    }
    let hp = p.to_model(Model::Hyperboloid)?;
    let hq = q.to_model(Model::Hyperboloid)?;
    let c = -lorentz_inner(&hp.coords, &hq.coords)?;
    Ok(c.max(1.0).acosh())
}

/// Stereographic projection from the ball model to the hyperboloid.
pub fn stereo(p: &ModelPoint) -> Result<ModelPoint> {
    if p.model != Model::Ball {
        return Err(Error::ModelMismatch);
    }
    let norm2: f64 = p.coords.iter().map(|v| v * v).sum();
    if norm2 >= 1.0 {
        return Err(Error::OutsideModel);
    }
    let denom = 1.0 - norm2;
    let mut coords: Vec<f64> = p.coords.iter().map(|v| 2.0 * v / denom).collect();
    coords.push((1.0 + norm2) / denom);
    Ok(ModelPoint {
        model: Model::Hyperboloid,
        coords,
    })
}

/// Inverse stereographic projection, hyperboloid to ball.
pub fn stereo_inv(p: &ModelPoint) -> Result<ModelPoint> {
    if p.model != Model::Hyperboloid {
        return Err(Error::ModelMismatch);
    }
    let n = p.coords.len() - 1;
    let t = p.coords[n];
    let coords: Vec<f64> = p.coords[..n].iter().map(|v| v / (1.0 + t)).collect();
    Ok(ModelPoint {
        model: Model::Ball,
        coords,
    })
}

/// Reflection in the hyperplane {x : a.x = t}; `a` must be a unit vector.
pub fn reflect_plane(a: &[f64], t: f64, x: &[f64]) -> Result<Vec<f64>> {
    if (euclidean_norm(a) - 1.0).abs() > MODEL_TOL {
        return Err(Error::NotUnitVector);
    }
    if a.len() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: x.len(),
        });
    }
    let ax: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
    let f = 2.0 * (t - ax);
    Ok(x.iter().zip(a).map(|(v, u)| v + f * u).collect())
}

/// Inversion in the sphere of radius r centered at a, as an extended map:
/// the center maps to infinity and back.
pub fn invert_sphere(a: &[f64], r: f64, x: &Point) -> Result<Point> {
    if r <= 0.0 {
        return Err(Error::InvalidInput(
            "inversion radius must be positive".into(),
        ));
    }
    match x {
        Point::Infinity => Ok(Point::Finite(a.to_vec())),
        Point::Finite(x) => {
            if a.len() != x.len() {
                return Err(Error::DimensionMismatch {
                    expected: a.len(),
                    got: x.len(),
                });
            }
            let d2: f64 = x.iter().zip(a).map(|(v, u)| (v - u) * (v - u)).sum();
            if d2 == 0.0 {
                return Ok(Point::Infinity);
            }
            let f = r * r / d2;
            Ok(Point::Finite(
                x.iter().zip(a).map(|(v, u)| u + f * (v - u)).collect(),
            ))
        }
    }
}

/// The standard transformation from the upper half-space to the ball:
/// reflect in the boundary plane, then invert in the sphere of radius
/// sqrt(2) centered at e_n.
pub fn standard_transformation(p: &ModelPoint) -> Result<ModelPoint> {
    if p.model != Model::UpperHalf {
        return Err(Error::ModelMismatch);
    }
    if *p.coords.last().unwrap() <= 0.0 {
        return Err(Error::OutsideModel);
    }
    let image = eta_extended(p.coords.len(), &Point::Finite(p.coords.clone()))?;
    match image {
        Point::Finite(coords) => Ok(ModelPoint {
            model: Model::Ball,
            coords,
        }),
        Point::Infinity => Err(Error::OutsideModel),
    }
}

/// Inverse of the standard transformation, ball to upper half-space.
pub fn standard_transformation_inv(p: &ModelPoint) -> Result<ModelPoint> {
    if p.model != Model::Ball {
        return Err(Error::ModelMismatch);
    }
    match eta_inv_extended(p.coords.len(), &Point::Finite(p.coords.clone()))? {
        Point::Finite(coords) => Ok(ModelPoint {
            model: Model::UpperHalf,
            coords,
        }),
        Point::Infinity => Err(Error::OutsideModel),
    }
}

/// The extended standard transformation on the closures; boundary points are
/// allowed and land on the boundary sphere, and infinity maps to e_n.
pub fn eta_extended(dim: usize, x: &Point) -> Result<Point> {
    let mut en = vec![0.0; dim];
    en[dim - 1] = 1.0;
    let reflected = match x {
        Point::Finite(v) => {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            let mut r = v.clone();
            r[dim - 1] = -r[dim - 1];
            Point::Finite(r)
        }
        Point::Infinity => Point::Infinity,
    };
    invert_sphere(&en, std::f64::consts::SQRT_2, &reflected)
}

/// Inverse extended map: invert first, then reflect; e_n maps to infinity.
pub fn eta_inv_extended(dim: usize, x: &Point) -> Result<Point> {
    let mut en = vec![0.0; dim];
    en[dim - 1] = 1.0;
    let inverted = invert_sphere(&en, std::f64::consts::SQRT_2, x)?;
    Ok(match inverted {
        Point::Finite(mut v) => {
            v[dim - 1] = -v[dim - 1];
            Point::Finite(v)
        }
        Point::Infinity => Point::Infinity,
    })
}
