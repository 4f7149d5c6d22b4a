//! Moebius transformations as words in plane reflections and sphere
//! inversions, with the point at infinity as an explicit tagged value.

use serde::Serialize;

use super::{euclidean_norm, invert_sphere, reflect_plane, MODEL_TOL};
use crate::error::{Error, Result};

/// A point of the one-point compactification of Euclidean space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Point {
    Finite(Vec<f64>),
    Infinity,
}

impl Point {
    pub fn finite(&self) -> Option<&Vec<f64>> {
        match self {
            Point::Finite(v) => Some(v),
            Point::Infinity => None,
        }
    }

    pub fn approx_eq(&self, other: &Point, tol: f64) -> bool {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => true,
            (Point::Finite(a), Point::Finite(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
            }
            _ => false,
        }
    }
}

/// One generator: each is an involution of the extended space.
#[derive(Clone, Debug, Serialize)]
pub enum Generator {
    PlaneReflection { normal: Vec<f64>, offset: f64 },
    SphereInversion { center: Vec<f64>, radius: f64 },
}

impl Generator {
    pub fn plane(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if (euclidean_norm(&normal) - 1.0).abs() > MODEL_TOL {
            return Err(Error::NotUnitVector);
        }
        Ok(Generator::PlaneReflection { normal, offset })
    }

    pub fn sphere(center: Vec<f64>, radius: f64) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::InvalidInput(
                "inversion radius must be positive".into(),
            ));
        }
        Ok(Generator::SphereInversion { center, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            Generator::PlaneReflection { normal, .. } => normal.len(),
            Generator::SphereInversion { center, .. } => center.len(),
        }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        match self {
            Generator::PlaneReflection { normal, offset } => match x {
                Point::Infinity => Ok(Point::Infinity),
                Point::Finite(v) => Ok(Point::Finite(reflect_plane(normal, *offset, v)?)),
            },
            Generator::SphereInversion { center, radius } => invert_sphere(center, *radius, x),
        }
    }

    /// The same generator acting on the space one dimension up, fixing the
    /// added coordinate hyperplane.
    pub fn extend(&self) -> Generator {
        match self {
            Generator::PlaneReflection { normal, offset } => {
                let mut n = normal.clone();
                n.push(0.0);
                Generator::PlaneReflection {
                    normal: n,
                    offset: *offset,
                }
            }
            Generator::SphereInversion { center, radius } => {
                let mut c = center.clone();
                c.push(0.0);
                Generator::SphereInversion {
                    center: c,
                    radius: *radius,
                }
            }
        }
    }
}

/// A finite composition of reflections and inversions. The word applies
/// left to right: `[g1, g2]` maps x to g2(g1(x)).
#[derive(Clone, Debug, Default, Serialize)]
pub struct MoebiusMap {
    pub word: Vec<Generator>,
}

impl MoebiusMap {
    pub fn identity() -> Self {
        MoebiusMap { word: vec![] }
    }

    pub fn new(word: Vec<Generator>) -> Self {
        MoebiusMap { word }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        let mut current = x.clone();
        for g in &self.word {
            current = g.apply(&current)?;
        }
        Ok(current)
    }

    pub fn compose(&self, then: &MoebiusMap) -> MoebiusMap {
        let mut word = self.word.clone();
        word.extend(then.word.iter().cloned());
        MoebiusMap { word }
    }
}

/// Poincare extension: pad every generator into the next dimension so the
/// extended word preserves the upper half-space.
pub fn poincare_extension(map: &MoebiusMap) -> MoebiusMap {
    MoebiusMap {
        word: map.word.iter().map(Generator::extend).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rng() -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(13)
    }

    fn random_word(rng: &mut impl Rng, dim: usize, len: usize) -> MoebiusMap {
        let word = (0..len)
            .map(|_| {
                if rng.random_bool(0.5) {
                    let mut n: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
                    let norm = euclidean_norm(&n);
                    for v in n.iter_mut() {
                        *v /= norm;
                    }
                    Generator::plane(n, rng.random_range(-2.0..2.0)).unwrap()
                } else {
                    let c: Vec<f64> = (0..dim).map(|_| rng.random_range(-2.0..2.0)).collect();
                    Generator::sphere(c, rng.random_range(0.5..2.0)).unwrap()
                }
            })
            .collect();
        MoebiusMap::new(word)
    }

    #[test]
    fn generators_are_involutions() {
        let mut rng = rng();
        for _ in 0..1000 {
            let map = random_word(&mut rng, 3, 1);
            let x = Point::Finite((0..3).map(|_| rng.random_range(-3.0..3.0)).collect());
            let twice = map.apply(&map.apply(&x).unwrap()).unwrap();
            assert!(twice.approx_eq(&x, 1e-12 * 10.0));
        }
    }

    #[test]
    fn extension_of_identity_is_identity() {
        let id = MoebiusMap::identity();
        let ext = poincare_extension(&id);
        let x = Point::Finite(vec![0.3, 0.4, 0.5]);
        assert!(ext.apply(&x).unwrap().approx_eq(&x, 0.0));
    }

    #[test]
    fn extension_preserves_upper_half_space() {
        let mut rng = rng();
        for _ in 0..1000 {
            let map = poincare_extension(&random_word(&mut rng, 2, 3));
            let mut coords: Vec<f64> = (0..3).map(|_| rng.random_range(-3.0..3.0)).collect();
            coords[2] = rng.random_range(0.01..3.0);
            match map.apply(&Point::Finite(coords)).unwrap() {
                Point::Finite(v) => assert!(v[2] > -1e-12, "sign flipped: {}", v[2]),
                Point::Infinity => {}
            }
        }
    }

    #[test]
    fn extension_is_a_homomorphism() {
        let mut rng = rng();
        for _ in 0..200 {
            let w1 = random_word(&mut rng, 2, 2);
            let w2 = random_word(&mut rng, 2, 2);
            let lhs = poincare_extension(&w1.compose(&w2));
            let rhs = poincare_extension(&w1).compose(&poincare_extension(&w2));
            let x = Point::Finite(vec![
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(0.1..2.0),
            ]);
            let a = lhs.apply(&x).unwrap();
            let b = rhs.apply(&x).unwrap();
            assert!(a.approx_eq(&b, 1e-12 * 100.0));
        }
    }
}
