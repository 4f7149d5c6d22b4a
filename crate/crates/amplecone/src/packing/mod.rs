//! Boundary spheres of chamber walls, packing and connectivity certificates,
//! and the tangent-point bookkeeping that ties boundary geometry back to
//! isotropic classes.
//!
//! Coordinates come from a null frame at a chosen cusp: a primitive
//! isotropic e placed at infinity, a rational null partner f with
//! <e,f> = 1, and an orthonormal negative basis of their complement. In
//! that frame the boundary is Euclidean space of dimension dim - 2, a wall
//! with <delta, e> != 0 traces the sphere of radius sqrt(2)/|<delta,e>|
//! centered at -<delta,w>/<delta,e>, and a wall through the cusp traces a
//! plane. The integer pairing of two walls is twice their inversive
//! product, which is what makes every tangency test exact.

pub mod render;

use std::collections::BTreeMap;

use num::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chamber::{Chamber, Root};
use crate::error::{Error, Result};
use crate::lattice::ratmat::{self, Rat};
use crate::lattice::{snf, GramLattice, Int, IsotropicClass, LatticeVector};

/// Null coordinate frame at a cusp.
pub struct CuspFrame {
    pub lattice: GramLattice,
    pub cusp: LatticeVector,
    /// rational null partner with <cusp, partner> = 1
    pub partner: Vec<Rat>,
    /// orthonormal negative basis of the complement, in lattice coordinates
    pub basis: Vec<Vec<f64>>,
    /// cached functionals G w_i
    basis_functionals: Vec<Vec<f64>>,
    cusp_functional: Vec<Int>,
    partner_f64: Vec<f64>,
}

impl CuspFrame {
    pub fn new(lattice: &GramLattice, cusp: &LatticeVector) -> Result<Self> {
        if cusp.is_zero() || !cusp.is_primitive() || !lattice.norm(cusp)?.is_zero() {
            return Err(Error::NotPrimitiveIsotropic);
        }
        let dim = lattice.dim();
        let cusp_functional = lattice.functional(cusp);
        let gcd = cusp_functional
            .iter()
            .fold(Int::zero(), |acc, v| num::Integer::gcd(&acc, v));
        if gcd.is_zero() {
            return Err(Error::DegenerateCusp);
        }
        let f0 = snf::solve_integer(&vec![cusp_functional.clone()], std::slice::from_ref(&gcd))
            .ok_or(Error::DegenerateCusp)?;
        // f1 = f0 / gcd pairs to 1 with the cusp; shear off its self-pairing
        let f1: Vec<Rat> = f0
            .iter()
            .map(|v| Rat::new(v.clone(), gcd.clone()))
            .collect();
        let f1_norm = rational_norm(lattice, &f1);
        let half = Rat::new(f1_norm.numer().clone(), f1_norm.denom() * Int::from(2));
        let partner: Vec<Rat> = f1
            .iter()
            .zip(&cusp.0)
            .map(|(fi, ei)| fi - &half * Rat::from_integer(ei.clone()))
            .collect();
        debug_assert!(rational_norm(lattice, &partner).is_zero());

        // integral basis of the complement of the span of cusp and partner
        let partner_scaled = clear_denominators(&partner);
        let rows = vec![
            cusp_functional.clone(),
            lattice.functional(&LatticeVector(partner_scaled)),
        ];
        let kernel = snf::kernel_basis(&rows);
        if kernel.len() != dim - 2 {
            return Err(Error::Internal("cusp complement has wrong rank".into()));
        }
        // the complement must be negative definite
        let kernel_vectors: Vec<LatticeVector> =
            kernel.iter().cloned().map(LatticeVector).collect();
        let restricted = GramLattice::new(lattice.restrict(&kernel_vectors))
            .map_err(|_| Error::Internal("degenerate cusp complement".into()))?;
        if !restricted.is_negative_definite() {
            return Err(Error::Internal("cusp complement is not definite".into()));
        }

        // Gram-Schmidt against the positive form -<,>
        let gram_f64: Vec<Vec<f64>> = lattice
            .gram()
            .iter()
            .map(|r| r.iter().map(|v| v.to_f64().unwrap()).collect())
            .collect();
        let pairing = |x: &[f64], y: &[f64]| -> f64 {
            let mut acc = 0.0;
            for (i, xi) in x.iter().enumerate() {
                for (j, yj) in y.iter().enumerate() {
                    acc += xi * gram_f64[i][j] * yj;
                }
            }
            -acc
        };
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim - 2);
        for k in &kernel_vectors {
            let mut v: Vec<f64> = k.to_f64();
            for w in &basis {
                let c = pairing(&v, w);
                for (vi, wi) in v.iter_mut().zip(w) {
                    *vi -= c * wi;
                }
            }
            let norm = pairing(&v, &v).sqrt();
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            basis.push(v);
        }
        let basis_functionals = basis
            .iter()
            .map(|w| {
                gram_f64
                    .iter()
                    .map(|row| row.iter().zip(w).map(|(g, wi)| g * wi).sum())
                    .collect()
            })
            .collect();
        let partner_f64 = partner.iter().map(ratmat::rat_to_f64).collect();

        Ok(CuspFrame {
            lattice: lattice.clone(),
            cusp: cusp.clone(),
            partner,
            basis,
            basis_functionals,
            cusp_functional,
            partner_f64,
        })
    }

    /// Boundary dimension (dim of the Euclidean space the spheres live in).
    pub fn boundary_dim(&self) -> usize {
        self.basis.len()
    }

    /// <x, cusp>, exact.
    pub fn pairing_with_cusp(&self, x: &LatticeVector) -> Int {
        x.0.iter()
            .zip(&self.cusp_functional)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// <x, partner> as f64.
    fn pairing_with_partner(&self, x: &[f64]) -> f64 {
        // <x, f> = x . (G f)
        let gram = self.lattice.gram();
        let mut acc = 0.0;
        for (i, xi) in x.iter().enumerate() {
            let mut row = 0.0;
            for (j, fj) in self.partner_f64.iter().enumerate() {
                row += gram[i][j].to_f64().unwrap() * fj;
            }
            acc += xi * row;
        }
        acc
    }

    fn w_pairings(&self, x: &[f64]) -> Vec<f64> {
        self.basis_functionals
            .iter()
            .map(|gw| gw.iter().zip(x).map(|(g, xi)| g * xi).sum())
            .collect()
    }

    /// Boundary coordinates of an isotropic ray; `None` is the cusp itself.
    pub fn boundary_coords(&self, xi: &LatticeVector) -> Option<Vec<f64>> {
        let beta = self.pairing_with_cusp(xi);
        if beta.is_zero() {
            return None;
        }
        let beta = beta.to_f64().unwrap();
        let xf = xi.to_f64();
        Some(self.w_pairings(&xf).iter().map(|p| -p / beta).collect())
    }

    /// Boundary coordinates after applying a real matrix to a boundary ray.
    pub fn boundary_action(&self, w: &[Vec<Int>], u: &[f64]) -> Result<Option<Vec<f64>>> {
        let dim = self.lattice.dim();
        // lift u to the lightlike vector (|u|^2/2) e + f + sum u_i w_i
        let half_u2 = 0.5 * u.iter().map(|v| v * v).sum::<f64>();
        let mut lift = vec![0.0; dim];
        for i in 0..dim {
            lift[i] = half_u2 * self.cusp.0[i].to_f64().unwrap() + self.partner_f64[i];
            for (uk, wk) in u.iter().zip(&self.basis) {
                lift[i] += uk * wk[i];
            }
        }
        let mut image = vec![0.0; dim];
        for i in 0..dim {
            for j in 0..dim {
                image[i] += w[i][j].to_f64().unwrap() * lift[j];
            }
        }
        // extract coordinates: beta = <image, e>
        let gram = self.lattice.gram();
        let mut beta = 0.0;
        for (i, xi) in image.iter().enumerate() {
            let mut row = 0.0;
            for (j, ej) in self.cusp.0.iter().enumerate() {
                row += gram[i][j].to_f64().unwrap() * ej.to_f64().unwrap();
            }
            beta += xi * row;
        }
        if beta.abs() < 1e-12 {
            return Ok(None);
        }
        Ok(Some(
            self.w_pairings(&image).iter().map(|p| -p / beta).collect(),
        ))
    }
}

fn rational_norm(lattice: &GramLattice, x: &[Rat]) -> Rat {
    let gram = lattice.gram_rational();
    let mut acc = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            acc += xi * &gram[i][j] * xj;
        }
    }
    acc
}

fn clear_denominators(x: &[Rat]) -> Vec<Int> {
    let lcm = x
        .iter()
        .fold(Int::one(), |acc, v| num::Integer::lcm(&acc, v.denom()));
    x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Euclidean boundary trace of one wall in a cusp frame.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SphereShape {
    Sphere {
        center: Vec<f64>,
        radius: f64,
        /// whether the removed disk is the inside of the sphere
        disk_inside: bool,
    },
    Plane {
        /// unit normal; the removed region is the positive side
        normal: Vec<f64>,
        offset: f64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundarySphere {
    #[serde(flatten)]
    pub shape: SphereShape,
    pub source: Root,
}

impl BoundarySphere {
    /// Oriented curvature: zero for planes, 1/r when the removed disk is
    /// the inside, -1/r when it is the outside.
    pub fn curvature(&self) -> f64 {
        match &self.shape {
            SphereShape::Plane { .. } => 0.0,
            SphereShape::Sphere {
                radius,
                disk_inside,
                ..
            } => {
                if *disk_inside {
                    1.0 / radius
                } else {
                    -1.0 / radius
                }
            }
        }
    }

    fn rescale(&mut self, factor: f64) {
        match &mut self.shape {
            SphereShape::Sphere { center, radius, .. } => {
                for c in center.iter_mut() {
                    *c *= factor;
                }
                *radius *= factor;
            }
            SphereShape::Plane { offset, .. } => {
                *offset *= factor;
            }
        }
    }
}

/// Boundary trace of one wall; the cusp sits at infinity of the frame.
pub fn wall_to_sphere(
    frame: &CuspFrame,
    delta: &LatticeVector,
    height: Int,
) -> Result<BoundarySphere> {
    let norm = frame.lattice.norm(delta)?;
    if norm != Int::from(-2) {
        return Err(Error::NormNotMinusTwo {
            norm: norm.to_string(),
        });
    }
    let af = frame.pairing_with_cusp(delta);
    let df = delta.to_f64();
    let c: Vec<f64> = frame.w_pairings(&df).iter().map(|p| -p).collect();
    let source = Root {
        height,
        vec: delta.clone(),
    };
    if af.is_zero() {
        // wall through the cusp: plane with |c| = sqrt(2) exactly
        let scale = super::models::euclidean_norm(&c);
        let ae = frame.pairing_with_partner(&df);
        Ok(BoundarySphere {
            shape: SphereShape::Plane {
                normal: c.iter().map(|v| v / scale).collect(),
                offset: ae / scale,
            },
            source,
        })
    } else {
        let af_f = af.to_f64().unwrap();
        Ok(BoundarySphere {
            shape: SphereShape::Sphere {
                center: c.iter().map(|v| v / af_f).collect(),
                radius: std::f64::consts::SQRT_2 / af_f.abs(),
                disk_inside: af.is_positive(),
            },
            source,
        })
    }
}

/// All wall spheres of a chamber in one frame, rescaled so the first
/// spherical wall has radius 1 (the frame scale is a free gauge).
pub struct PackingGeometry {
    pub frame: CuspFrame,
    pub spheres: Vec<BoundarySphere>,
    pub scale: f64,
}

impl PackingGeometry {
    pub fn new(chamber: &Chamber, cusp: &LatticeVector) -> Result<Self> {
        let frame = CuspFrame::new(&chamber.lattice, cusp)?;
        let mut spheres = Vec::with_capacity(chamber.walls.len());
        for wall in &chamber.walls {
            spheres.push(wall_to_sphere(&frame, &wall.vec, wall.height.clone())?);
        }
        let scale = spheres
            .iter()
            .find_map(|s| match &s.shape {
                SphereShape::Sphere { radius, .. } => Some(1.0 / radius),
                SphereShape::Plane { .. } => None,
            })
            .unwrap_or(1.0);
        for s in spheres.iter_mut() {
            s.rescale(scale);
        }
        Ok(PackingGeometry {
            frame,
            spheres,
            scale,
        })
    }

    /// Boundary coordinates of an isotropic ray in the rescaled gauge.
    pub fn boundary_coords(&self, xi: &LatticeVector) -> Option<Vec<f64>> {
        self.frame
            .boundary_coords(xi)
            .map(|u| u.iter().map(|v| v * self.scale).collect())
    }
}

/// Numeric mutual position of two boundary traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphereRelation {
    Crossing,
    Tangent,
    Disjoint,
}

/// Classifies two traces by inversive geometry with the given tolerance.
pub fn sphere_relation(a: &BoundarySphere, b: &BoundarySphere, tol: f64) -> SphereRelation {
    use SphereShape::*;
    match (&a.shape, &b.shape) {
        (
            Sphere {
                center: c1,
                radius: r1,
                ..
            },
            Sphere {
                center: c2,
                radius: r2,
                ..
            },
        ) => {
            let d2 = super::models::euclidean_dist(c1, c2).powi(2);
            let inversive = (d2 - r1 * r1 - r2 * r2) / (2.0 * r1 * r2);
            let m = inversive.abs();
            if (m - 1.0).abs() <= tol {
                SphereRelation::Tangent
            } else if m > 1.0 {
                SphereRelation::Disjoint
            } else {
                SphereRelation::Crossing
            }
        }
        (Sphere { center, radius, .. }, Plane { normal, offset })
        | (Plane { normal, offset }, Sphere { center, radius, .. }) => {
            let h = (normal.iter().zip(center).map(|(n, c)| n * c).sum::<f64>() - offset).abs();
            let gap = (h - radius) / radius;
            if gap.abs() <= tol {
                SphereRelation::Tangent
            } else if gap > 0.0 {
                SphereRelation::Disjoint
            } else {
                SphereRelation::Crossing
            }
        }
        (Plane { normal: n1, .. }, Plane { normal: n2, .. }) => {
            let cos = n1.iter().zip(n2).map(|(a, b)| a * b).sum::<f64>();
            // distinct parallel walls only occur with opposite removed sides
            if cos < -1.0 + tol {
                SphereRelation::Tangent
            } else {
                SphereRelation::Crossing
            }
        }
    }
}

/// One crossing pair witnessing the failure of the packing condition.
#[derive(Clone, Debug, Serialize)]
pub struct CrossingPair {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "crate::lattice::serialize_int")]
    pub pairing: Int,
    pub root_i: LatticeVector,
    pub root_j: LatticeVector,
}

/// Exact certificate for the boundary sphere packing condition.
#[derive(Clone, Debug, Serialize)]
pub struct PackingCertificate {
    pub is_packing: bool,
    pub is_connected: bool,
    pub height_bound: u64,
    pub wall_count: usize,
    pub failures: Vec<CrossingPair>,
}

/// Integer scan of all wall pairs: the boundary is a packing exactly when
/// every pair of accepted walls pairs to at least 2.
pub fn is_sphere_packing(chamber: &Chamber) -> PackingCertificate {
    let lattice = &chamber.lattice;
    let two = Int::from(2);
    let mut failures = Vec::new();
    for (i, w1) in chamber.walls.iter().enumerate() {
        for (j, w2) in chamber.walls.iter().enumerate().skip(i + 1) {
            let pairing = lattice.inner_unchecked(&w1.vec, &w2.vec);
            debug_assert!(!pairing.is_negative());
            if pairing < two {
                failures.push(CrossingPair {
                    i,
                    j,
                    pairing,
                    root_i: w1.vec.clone(),
                    root_j: w2.vec.clone(),
                });
            }
        }
    }
    let is_packing = failures.is_empty();
    let is_connected = if is_packing {
        tangency_components(chamber) <= 1
    } else {
        false
    };
    PackingCertificate {
        is_packing,
        is_connected,
        height_bound: chamber.height_bound,
        wall_count: chamber.walls.len(),
        failures,
    }
}

fn tangency_components(chamber: &Chamber) -> usize {
    let n = chamber.walls.len();
    if n == 0 {
        return 0;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let two = Int::from(2);
    for i in 0..n {
        for j in i + 1..n {
            if chamber
                .lattice
                .inner_unchecked(&chamber.walls[i].vec, &chamber.walls[j].vec)
                == two
            {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut count = 0;
    for i in 0..n {
        if root(&mut parent, i) == i {
            count += 1;
        }
    }
    count
}

/// Tangency structure of a packing: edges are wall pairs pairing to exactly
/// 2; each edge carries its tangent point, the primitive part of the sum.
#[derive(Clone, Debug, Serialize)]
pub struct TangencyGraph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub tangent_points: BTreeMap<(usize, usize), IsotropicClass>,
    pub is_connected: bool,
}

pub fn tangency_graph(chamber: &Chamber) -> Result<TangencyGraph> {
    let certificate = is_sphere_packing(chamber);
    if !certificate.is_packing {
        return Err(Error::NotAPacking {
            failures: certificate.failures.len(),
        });
    }
    let lattice = &chamber.lattice;
    let two = Int::from(2);
    let mut edges = Vec::new();
    let mut tangent_points = BTreeMap::new();
    for (i, w1) in chamber.walls.iter().enumerate() {
        for (j, w2) in chamber.walls.iter().enumerate().skip(i + 1) {
            if lattice.inner_unchecked(&w1.vec, &w2.vec) == two {
                let sum = w1.vec.add(&w2.vec);
                debug_assert!(lattice.norm(&sum).unwrap().is_zero());
                let vec = sum.primitive_part();
                let height = lattice.inner_unchecked(&vec, &chamber.ample);
                edges.push((i, j));
                tangent_points.insert((i, j), IsotropicClass { height, vec });
            }
        }
    }
    Ok(TangencyGraph {
        node_count: chamber.walls.len(),
        edges,
        tangent_points,
        is_connected: certificate.is_connected,
    })
}

impl TangencyGraph {
    /// Indices of maximal mutually tangent quadruples.
    pub fn four_cliques(&self) -> Vec<[usize; 4]> {
        use std::collections::BTreeSet;
        let edge_set: BTreeSet<(usize, usize)> = self.edges.iter().copied().collect();
        let has = |i: usize, j: usize| edge_set.contains(&(i.min(j), j.max(i)));
        let mut cliques = Vec::new();
        let n = self.node_count;
        for a in 0..n {
            for b in a + 1..n {
                if !has(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if !has(a, c) || !has(b, c) {
                        continue;
                    }
                    for d in c + 1..n {
                        if has(a, d) && has(b, d) && has(c, d) {
                            cliques.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        cliques
    }

    /// Edges whose tangent point is the given primitive class.
    pub fn edges_at(&self, class: &LatticeVector) -> Vec<(usize, usize)> {
        self.tangent_points
            .iter()
            .filter(|(_, p)| &p.vec == class)
            .map(|(e, _)| *e)
            .collect()
    }
}

/// Outcome of checking that every low isotropic class is a tangent point,
/// possibly after reducing into the chamber by at most `word_bound`
/// reflections.
#[derive(Clone, Debug, Serialize)]
pub struct TangencyCoverage {
    pub pass: bool,
    pub iso_height: u64,
    pub word_bound: usize,
    pub checked: usize,
    pub max_word_length: usize,
    pub uncovered: Vec<IsotropicClass>,
}

/// For every primitive isotropic class up to `iso_height`: reduce it into
/// the chamber closure by height-decreasing wall reflections (at most
/// `word_bound` of them) and require that it lands on a tangent point of
/// the graph.
pub fn elliptic_divisors_at_tangents(
    chamber: &Chamber,
    graph: &TangencyGraph,
    iso_height: u64,
    word_bound: usize,
) -> Result<TangencyCoverage> {
    use std::collections::BTreeSet;
    let lattice = &chamber.lattice;
    let tangent_set: BTreeSet<LatticeVector> = graph
        .tangent_points
        .values()
        .map(|c| c.vec.clone())
        .collect();
    let classes = crate::lattice::enumerate_isotropic(lattice, &chamber.ample, iso_height)?;
    let mut uncovered = Vec::new();
    let mut max_word_length = 0;
    let checked = classes.len();
    for class in classes {
        let mut current = class.vec.clone();
        let mut covered = tangent_set.contains(&current);
        let mut steps = 0;
        while !covered && steps < word_bound {
            // pick the reflection giving the largest height decrease
            let mut best: Option<(Int, &LatticeVector)> = None;
            for wall in &chamber.walls {
                let pairing = lattice.inner_unchecked(&current, &wall.vec);
                if pairing.is_negative() {
                    let drop = -&pairing * &wall.height;
                    let better = match &best {
                        None => true,
                        Some((d, _)) => drop > *d,
                    };
                    if better {
                        best = Some((drop, &wall.vec));
                    }
                }
            }
            let Some((_, delta)) = best else {
                break; // already in the chamber closure
            };
            current = crate::chamber::reflect(lattice, delta, &current)?;
            steps += 1;
            covered = tangent_set.contains(&current);
        }
        max_word_length = max_word_length.max(steps);
        if !covered {
            uncovered.push(class);
        }
    }
    Ok(TangencyCoverage {
        pass: uncovered.is_empty(),
        iso_height,
        word_bound,
        checked,
        max_word_length,
        uncovered,
    })
}

/// |(k1+k2+k3+k4)^2 - 2(k1^2+..+k4^2)| on oriented curvatures; planes count
/// as curvature zero. Only defined for circle-dimensional boundaries.
pub fn descartes_residual(spheres: [&BoundarySphere; 4]) -> Result<f64> {
    for s in spheres {
        let dim = match &s.shape {
            SphereShape::Sphere { center, .. } => center.len(),
            SphereShape::Plane { normal, .. } => normal.len(),
        };
        if dim != 2 {
            return Err(Error::RenderDimension { got: dim });
        }
    }
    let k: Vec<f64> = spheres.iter().map(|s| s.curvature()).collect();
    let sum: f64 = k.iter().sum();
    let sq: f64 = k.iter().map(|v| v * v).sum();
    Ok((sum * sum - 2.0 * sq).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber::{find_interior_point, vinberg_walls};
    use crate::models::lorentz::reflection_matrix;

    fn y2() -> GramLattice {
        GramLattice::from_i64(&[
            &[-2, 2, 2, 4],
            &[2, -2, 2, 4],
            &[2, 2, -2, 0],
            &[4, 4, 0, 0],
        ])
        .unwrap()
    }

    fn y2_chamber(height: u64) -> Chamber {
        let l = y2();
        let a = find_interior_point(&l).unwrap();
        vinberg_walls(&l, &a, height).unwrap()
    }

    fn synthetic_sphere(center: &[f64], radius: f64, disk_inside: bool) -> BoundarySphere {
        BoundarySphere {
            shape: SphereShape::Sphere {
                center: center.to_vec(),
                radius,
                disk_inside,
            },
            source: Root {
                height: Int::from(1),
                vec: LatticeVector::from_i64(&[1, 0, 0, 0]),
            },
        }
    }

    fn synthetic_plane(normal: &[f64], offset: f64) -> BoundarySphere {
        BoundarySphere {
            shape: SphereShape::Plane {
                normal: normal.to_vec(),
                offset,
            },
            source: Root {
                height: Int::from(1),
                vec: LatticeVector::from_i64(&[1, 0, 0, 0]),
            },
        }
    }

    #[test]
    fn frame_rejects_bad_cusp() {
        let l = y2();
        assert!(CuspFrame::new(&l, &LatticeVector::basis(4, 0)).is_err());
        assert!(CuspFrame::new(&l, &LatticeVector::from_i64(&[0, 0, 0, 2])).is_err());
    }

    #[test]
    fn frame_orthonormality() {
        let l = y2();
        let e4 = LatticeVector::basis(4, 3);
        let frame = CuspFrame::new(&l, &e4).unwrap();
        assert_eq!(frame.boundary_dim(), 2);
        // partner is null and pairs to 1 with the cusp
        let norm = rational_norm(&l, &frame.partner);
        assert!(norm.is_zero());
        // basis vectors pair to -1 with themselves, 0 with each other and
        // with both null directions
        let gram: Vec<Vec<f64>> = l
            .gram()
            .iter()
            .map(|r| r.iter().map(|v| v.to_f64().unwrap()).collect())
            .collect();
        let pair = |x: &[f64], y: &[f64]| -> f64 {
            let mut acc = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    acc += x[i] * gram[i][j] * y[j];
                }
            }
            acc
        };
        let ef: Vec<f64> = e4.to_f64();
        let ff: Vec<f64> = frame.partner.iter().map(ratmat::rat_to_f64).collect();
        assert!((pair(&ef, &ff) - 1.0).abs() < 1e-12);
        for (i, w) in frame.basis.iter().enumerate() {
            assert!((pair(w, w) + 1.0).abs() < 1e-9);
            assert!(pair(w, &ef).abs() < 1e-9);
            assert!(pair(w, &ff).abs() < 1e-9);
            for w2 in &frame.basis[i + 1..] {
                assert!(pair(w, w2).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn walls_through_cusp_become_planes() {
        let l = y2();
        let e4 = LatticeVector::basis(4, 3);
        let frame = CuspFrame::new(&l, &e4).unwrap();
        // e3 pairs to zero with e4
        let e3 = LatticeVector::basis(4, 2);
        let s = wall_to_sphere(&frame, &e3, Int::from(2)).unwrap();
        assert!(matches!(s.shape, SphereShape::Plane { .. }));
        // e1 pairs to 4 with e4: a circle of radius sqrt(2)/4
        let e1 = LatticeVector::basis(4, 0);
        let s = wall_to_sphere(&frame, &e1, Int::from(6)).unwrap();
        match s.shape {
            SphereShape::Sphere {
                radius,
                disk_inside,
                ..
            } => {
                assert!((radius - std::f64::consts::SQRT_2 / 4.0).abs() < 1e-12);
                assert!(disk_inside);
            }
            _ => panic!("expected a sphere"),
        }
    }

    #[test]
    fn integer_tangency_matches_numeric_relation() {
        let chamber = y2_chamber(12);
        let cusp = LatticeVector::basis(4, 3);
        let geom = PackingGeometry::new(&chamber, &cusp).unwrap();
        let two = Int::from(2);
        for (i, w1) in chamber.walls.iter().enumerate() {
            for (j, w2) in chamber.walls.iter().enumerate().skip(i + 1) {
                let pairing = chamber.lattice.inner_unchecked(&w1.vec, &w2.vec);
                let relation = sphere_relation(&geom.spheres[i], &geom.spheres[j], 1e-6);
                let expected = if pairing < two {
                    SphereRelation::Crossing
                } else if pairing == two {
                    SphereRelation::Tangent
                } else {
                    SphereRelation::Disjoint
                };
                assert_eq!(
                    relation, expected,
                    "pairing {pairing} vs numeric relation for walls {i},{j}"
                );
            }
        }
    }

    #[test]
    fn y2_is_connected_packing() {
        let chamber = y2_chamber(20);
        let certificate = is_sphere_packing(&chamber);
        assert!(certificate.is_packing);
        assert!(certificate.is_connected);
        assert!(certificate.failures.is_empty());
        let graph = tangency_graph(&chamber).unwrap();
        assert!(graph.is_connected);
        assert!(
            !graph.four_cliques().is_empty(),
            "no mutually tangent quadruple"
        );
    }

    #[test]
    fn trivial_packings() {
        // no roots at all: vacuous packing, zero components
        let l = GramLattice::from_i64(&[&[2, 0], &[0, -8]]).unwrap();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 20).unwrap();
        let cert = is_sphere_packing(&chamber);
        assert!(cert.is_packing);
        assert!(cert.is_connected);
    }

    #[test]
    fn crossing_walls_fail_the_certificate() {
        let l = GramLattice::from_i64(&[&[-2, 1, 0], &[1, -2, 0], &[0, 0, 2]]).unwrap();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 10).unwrap();
        let cert = is_sphere_packing(&chamber);
        assert!(!cert.is_packing);
        assert!(!cert.failures.is_empty());
        let pair = &cert.failures[0];
        assert_eq!(pair.pairing, Int::from(1));
        assert!(matches!(
            tangency_graph(&chamber),
            Err(Error::NotAPacking { .. })
        ));
    }

    #[test]
    fn tangent_points_are_isotropic_and_located_at_touching_point() {
        let chamber = y2_chamber(12);
        let graph = tangency_graph(&chamber).unwrap();
        let cusp = LatticeVector::basis(4, 3);
        let geom = PackingGeometry::new(&chamber, &cusp).unwrap();
        let l = &chamber.lattice;
        for ((i, j), point) in &graph.tangent_points {
            assert!(l.norm(&point.vec).unwrap().is_zero());
            assert!(point.vec.is_primitive());
            // the boundary image of the class is the numeric touching point
            let Some(u) = geom.boundary_coords(&point.vec) else {
                continue; // tangency at the cusp itself
            };
            for idx in [i, j] {
                match &geom.spheres[*idx].shape {
                    SphereShape::Sphere { center, radius, .. } => {
                        let d = crate::models::euclidean_dist(&u, center);
                        assert!(
                            (d - radius).abs() < 1e-6,
                            "tangent point off sphere {idx}: {d} vs {radius}"
                        );
                    }
                    SphereShape::Plane { normal, offset } => {
                        let h = normal.iter().zip(&u).map(|(n, c)| n * c).sum::<f64>() - offset;
                        assert!(h.abs() < 1e-6, "tangent point off plane {idx}: {h}");
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_reflection_acts_as_sphere_inversion_on_boundary() {
        use crate::models::{invert_sphere, reflect_plane, Point};
        let chamber = y2_chamber(8);
        let cusp = LatticeVector::basis(4, 3);
        let frame = CuspFrame::new(&chamber.lattice, &cusp).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for wall in chamber.walls.iter().take(6) {
            let sphere = wall_to_sphere(&frame, &wall.vec, wall.height.clone()).unwrap();
            let w = reflection_matrix(&chamber.lattice, &wall.vec).unwrap();
            for _ in 0..20 {
                let u: Vec<f64> = (0..2).map(|_| rng.random_range(-3.0..3.0)).collect();
                let via_lattice = frame.boundary_action(&w, &u).unwrap();
                let via_sphere = match &sphere.shape {
                    SphereShape::Sphere { center, radius, .. } => {
                        invert_sphere(center, *radius, &Point::Finite(u.clone())).unwrap()
                    }
                    SphereShape::Plane { normal, offset } => {
                        Point::Finite(reflect_plane(normal, *offset, &u).unwrap())
                    }
                };
                match (via_lattice, via_sphere) {
                    (Some(a), Point::Finite(b)) => {
                        let d = crate::models::euclidean_dist(&a, &b);
                        assert!(d < 1e-9, "boundary actions differ by {d}");
                    }
                    (None, Point::Infinity) => {}
                    (got, expected) => {
                        panic!("boundary action mismatch: {:?} vs {:?}", got, expected)
                    }
                }
            }
        }
    }

    #[test]
    fn descartes_on_classical_quadruples() {
        // (-1, 2, 2, 3): outer unit circle with three inscribed circles
        let outer = synthetic_sphere(&[0.0, 0.0], 1.0, false);
        let left = synthetic_sphere(&[-0.5, 0.0], 0.5, true);
        let right = synthetic_sphere(&[0.5, 0.0], 0.5, true);
        let top = synthetic_sphere(&[0.0, 2.0 / 3.0], 1.0 / 3.0, true);
        let r = descartes_residual([&outer, &left, &right, &top]).unwrap();
        assert!(r < 1e-12, "residual {r}");

        // (0, 0, 1, 1): two parallel lines and two unit circles
        let floor = synthetic_plane(&[0.0, -1.0], 1.0);
        let ceil = synthetic_plane(&[0.0, 1.0], 1.0);
        let c1 = synthetic_sphere(&[0.0, 0.0], 1.0, true);
        let c2 = synthetic_sphere(&[2.0, 0.0], 1.0, true);
        let r = descartes_residual([&floor, &ceil, &c1, &c2]).unwrap();
        assert!(r < 1e-12, "residual {r}");

        // far-apart circles violate the relation
        let far = synthetic_sphere(&[10.0, 0.0], 1.0, true);
        let r = descartes_residual([&outer, &left, &right, &far]).unwrap();
        assert!(r > 0.1);
    }

    #[test]
    fn y2_four_cliques_satisfy_descartes() {
        let chamber = y2_chamber(20);
        let graph = tangency_graph(&chamber).unwrap();
        let cusp = LatticeVector::basis(4, 3);
        let geom = PackingGeometry::new(&chamber, &cusp).unwrap();
        let cliques = graph.four_cliques();
        assert!(!cliques.is_empty());
        for clique in &cliques {
            let spheres = [
                &geom.spheres[clique[0]],
                &geom.spheres[clique[1]],
                &geom.spheres[clique[2]],
                &geom.spheres[clique[3]],
            ];
            let r = descartes_residual(spheres).unwrap();
            assert!(r < 1e-9, "clique {clique:?} residual {r}");
        }
    }

    #[test]
    fn y2_coverage_certificate_passes() {
        let chamber = y2_chamber(20);
        let graph = tangency_graph(&chamber).unwrap();
        let coverage = elliptic_divisors_at_tangents(&chamber, &graph, 10, 6).unwrap();
        assert!(coverage.pass, "uncovered classes: {:?}", coverage.uncovered);
        assert!(coverage.checked > 0);
    }

    #[test]
    fn coverage_fails_without_walls() {
        // isotropic classes exist but there are no walls at all
        let l = GramLattice::from_i64(&[&[2, 0], &[0, -8]]).unwrap();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 20).unwrap();
        let graph = tangency_graph(&chamber).unwrap();
        let coverage = elliptic_divisors_at_tangents(&chamber, &graph, 20, 6).unwrap();
        assert!(!coverage.pass);
        assert!(!coverage.uncovered.is_empty());
    }

    #[test]
    fn coverage_vacuous_without_isotropic_classes() {
        let l = GramLattice::from_i64(&[&[2, 0], &[0, -6]]).unwrap();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 20).unwrap();
        let graph = tangency_graph(&chamber).unwrap();
        let coverage = elliptic_divisors_at_tangents(&chamber, &graph, 20, 6).unwrap();
        assert!(coverage.pass);
        assert_eq!(coverage.checked, 0);
    }
}
