//! Reflections, interior-point search, and the wall acceptance loop that
//! carves out the chamber of the positive cone containing a chosen class.
//!
//! Walls are enumerated by increasing height against the interior class and
//! accepted exactly when they pair non-negatively with every wall accepted
//! before them. Since all roots here have self-pairing -2, height order
//! agrees with hyperbolic distance from the interior point, which is what
//! makes the greedy acceptance produce precisely the sides of the chamber.
//! The result is certified only up to the requested height bound.

use num::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_roots, serialize_int, GramLattice, Int, LatticeVector};
use crate::models::dist;
use crate::models::lorentz::gram_to_lorentz;

/// A (-2)-vector oriented positively against the interior class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Root {
    #[serde(serialize_with = "serialize_int")]
    pub height: Int,
    pub vec: LatticeVector,
}

/// The chamber data: interior class, accepted walls in (height, lex) order,
/// and the height bound the wall list is certified for.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub lattice: GramLattice,
    pub ample: LatticeVector,
    pub walls: Vec<Root>,
    pub height_bound: u64,
}

/// s_delta(x) = x + <x, delta> delta, exact.
pub fn reflect(
    lattice: &GramLattice,
    delta: &LatticeVector,
    x: &LatticeVector,
) -> Result<LatticeVector> {
    let norm = lattice.norm(delta)?;
    if norm != Int::from(-2) {
        return Err(Error::NormNotMinusTwo {
            norm: norm.to_string(),
        });
    }
    let pairing = lattice.inner(x, delta)?;
    Ok(x.add(&delta.scale(&pairing)))
}

/// Whether the vector avoids every root hyperplane. Any root orthogonal to
/// `a` lies in the definite sublattice orthogonal to `a`, so the check is a
/// finite enumeration covering all heights at once.
pub fn is_interior(lattice: &GramLattice, a: &LatticeVector) -> Result<bool> {
    let norm = lattice.norm(a)?;
    if !norm.is_positive() {
        return Ok(false);
    }
    let complement = lattice.orthogonal_complement(a);
    let gram = GramLattice::new(lattice.restrict(&complement))
        .map_err(|_| Error::Internal("orthogonal complement is degenerate".into()))?;
    let roots = crate::lattice::enumerate::definite_roots(&gram)?;
    Ok(roots.is_empty())
}

/// Searches for an integer class of positive self-pairing on no root
/// hyperplane: expanding sup-norm boxes, lexicographic inside each box,
/// and only vectors whose first nonzero coordinate is positive (the chamber
/// data for a and -a is the same up to global sign).
pub fn find_interior_point(lattice: &GramLattice) -> Result<LatticeVector> {
    lattice.is_hyperbolic()?;
    let dim = lattice.dim();
    const MAX_RADIUS: u64 = 8;
    for radius in 1..=MAX_RADIUS {
        let r = radius as i64;
        let mut coords = vec![-r; dim];
        loop {
            if coords.iter().any(|&c| c.abs() == r) {
                let first_nonzero = coords.iter().find(|&&c| c != 0);
                if first_nonzero.map(|&c| c > 0).unwrap_or(false) {
                    let candidate = LatticeVector(coords.iter().map(|&c| Int::from(c)).collect());
                    if is_interior(lattice, &candidate)? {
                        return Ok(candidate);
                    }
                }
            }
            let mut k = dim;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                coords[k] += 1;
                if coords[k] <= r {
                    break;
                }
                coords[k] = -r;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX {
                break;
            }
        }
    }
    Err(Error::NoInteriorPoint { bound: MAX_RADIUS })
}

/// Builds the chamber containing `ample` with all walls of height up to
/// `height_bound`.
pub fn vinberg_walls(
    lattice: &GramLattice,
    ample: &LatticeVector,
    height_bound: u64,
) -> Result<Chamber> {
    if !is_interior(lattice, ample)? {
        let norm = lattice.norm(ample)?;
        if !norm.is_positive() {
            return Err(Error::NotInPositiveCone {
                norm: norm.to_string(),
            });
        }
        return Err(Error::OnWall);
    }
    let candidates = enumerate_roots(lattice, ample, height_bound)?;
    let mut walls: Vec<Root> = Vec::new();
    for vec in candidates {
        let accept = walls
            .iter()
            .all(|w| !lattice.inner_unchecked(&w.vec, &vec).is_negative());
        if accept {
            let height = lattice.inner_unchecked(&vec, ample);
            walls.push(Root { height, vec });
        }
    }
    Ok(Chamber {
        lattice: lattice.clone(),
        ample: ample.clone(),
        walls,
        height_bound,
    })
}

impl Chamber {
    /// True when x pairs strictly positively with every accepted wall.
    /// Certified only up to the chamber's height bound.
    pub fn contains(&self, x: &LatticeVector) -> bool {
        if x.is_zero() {
            return false;
        }
        self.walls
            .iter()
            .all(|w| self.lattice.inner_unchecked(x, &w.vec).is_positive())
    }

    pub fn wall_vectors(&self) -> Vec<&LatticeVector> {
        self.walls.iter().map(|w| &w.vec).collect()
    }
}

/// Mutual position of two wall hyperplanes, decided by the integer pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallPairClass {
    /// The hyperplanes cross inside hyperbolic space (pairing 0 or 1).
    Intersecting,
    /// The closures meet in a single boundary point (pairing 2).
    Tangent,
    /// Disjoint closures (pairing above 2).
    Ultraparallel,
}

/// Classifies a pair of positively oriented walls. A negative pairing
/// never occurs between accepted walls of one chamber and is reported as
/// an invariant violation.
pub fn wall_pair_class(
    lattice: &GramLattice,
    d1: &LatticeVector,
    d2: &LatticeVector,
) -> Result<WallPairClass> {
    for d in [d1, d2] {
        let norm = lattice.norm(d)?;
        if norm != Int::from(-2) {
            return Err(Error::NormNotMinusTwo {
                norm: norm.to_string(),
            });
        }
    }
    let pairing = lattice.inner(d1, d2)?;
    if pairing.is_negative() {
        return Err(Error::NegativeWallPairing {
            pairing: pairing.to_string(),
        });
    }
    let two = Int::from(2);
    Ok(if pairing < two {
        WallPairClass::Intersecting
    } else if pairing == two {
        WallPairClass::Tangent
    } else {
        WallPairClass::Ultraparallel
    })
}

/// One disagreement witness from the Dirichlet comparison.
#[derive(Clone, Debug, Serialize)]
pub struct DirichletWitness {
    pub point: LatticeVector,
    pub wall_index: usize,
    pub lattice_sign: i8,
    pub dist_to_center: f64,
    pub dist_to_reflected: f64,
}

/// Outcome of comparing the algebraic chamber membership test against
/// numeric Dirichlet half-space membership in the hyperboloid model.
#[derive(Clone, Debug, Serialize)]
pub struct DirichletReport {
    pub trials: usize,
    pub comparisons: usize,
    pub disagreements: Vec<DirichletWitness>,
    /// largest |d(x,a) - d(x, s a)| over points solved onto a wall
    pub max_on_wall_residual: f64,
}

/// For random points x of the positive cone and each wall delta, checks that
/// sign <x, delta> matches the sign of d(x, s_delta a) - d(x, a), and that
/// points solved exactly onto the wall are numerically equidistant.
pub fn dirichlet_equivalence_check(
    chamber: &Chamber,
    trials: usize,
    seed: u64,
) -> Result<DirichletReport> {
    use rand::Rng;
    use rand::SeedableRng;

    let lattice = &chamber.lattice;
    let bridge = gram_to_lorentz(lattice)?;
    let a = &chamber.ample;
    let a_model = bridge.hyperboloid_point(a)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let dim = lattice.dim();

    // precompute reflected centers per wall
    let mut reflected_models = Vec::with_capacity(chamber.walls.len());
    for w in &chamber.walls {
        let sa = reflect(lattice, &w.vec, a)?;
        reflected_models.push(bridge.hyperboloid_point(&sa)?);
    }

    let mut report = DirichletReport {
        trials,
        comparisons: 0,
        disagreements: Vec::new(),
        max_on_wall_residual: 0.0,
    };

    for _ in 0..trials {
        // a random positive-cone point: jitter around a multiple of the center
        let x = loop {
            let jitter = LatticeVector(
                (0..dim)
                    .map(|_| Int::from(rng.random_range(-6..=6i64)))
                    .collect(),
            );
            let shift = rng.random_range(1..=3i64);
            let candidate = a.scale(&Int::from(shift)).add(&jitter);
            if lattice.norm(&candidate)?.is_positive()
                && lattice.inner(&candidate, a)?.is_positive()
            {
                break candidate;
            }
        };
        let x_model = bridge.hyperboloid_point(&x)?;
        for (idx, wall) in chamber.walls.iter().enumerate() {
            let pairing = lattice.inner(&x, &wall.vec)?;
            let d_center = dist(&x_model, &a_model)?;
            let d_reflected = dist(&x_model, &reflected_models[idx])?;
            report.comparisons += 1;
            if pairing.is_zero() {
                let residual = (d_center - d_reflected).abs();
                report.max_on_wall_residual = report.max_on_wall_residual.max(residual);
                continue;
            }
            let lattice_side = pairing.is_positive();
            let metric_side = d_center < d_reflected;
            if lattice_side != metric_side {
                report.disagreements.push(DirichletWitness {
                    point: x.clone(),
                    wall_index: idx,
                    lattice_sign: if lattice_side { 1 } else { -1 },
                    dist_to_center: d_center,
                    dist_to_reflected: d_reflected,
                });
            }

            // real solve onto the wall: project x along delta
            let xf = x.to_f64();
            let df = wall.vec.to_f64();
            let p = pairing.to_f64().unwrap();
            // <x - t d, d> = 0 with <d,d> = -2 gives t = p / -2
            let t = p / -2.0;
            let on_wall: Vec<f64> = xf.iter().zip(&df).map(|(xi, di)| xi - t * di).collect();
            let w_model = bridge.hyperboloid_point_real(&on_wall)?;
            let r1 = dist(&w_model, &a_model)?;
            let r2 = dist(&w_model, &reflected_models[idx])?;
            let residual = (r1 - r2).abs();
            report.max_on_wall_residual = report.max_on_wall_residual.max(residual);
        }
    }
    Ok(report)
}

/// Serialization schema for a chamber: interior class, bound, wall list.
#[derive(Serialize)]
pub struct ChamberJson<'a> {
    pub ample: &'a LatticeVector,
    pub height_bound: u64,
    pub walls: Vec<&'a LatticeVector>,
}

impl Chamber {
    pub fn to_json(&self) -> ChamberJson<'_> {
        ChamberJson {
            ample: &self.ample,
            height_bound: self.height_bound,
            walls: self.walls.iter().map(|w| &w.vec).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::lorentz::{classify, classify_integer, reflection_matrix, IsometryClass};

    fn y2() -> GramLattice {
        GramLattice::from_i64(&[
            &[-2, 2, 2, 4],
            &[2, -2, 2, 4],
            &[2, 2, -2, 0],
            &[4, 4, 0, 0],
        ])
        .unwrap()
    }

    #[test]
    fn reflect_basics() {
        let l = y2();
        let e1 = LatticeVector::basis(4, 0);
        let e4 = LatticeVector::basis(4, 3);
        // s_d(d) = -d
        assert_eq!(reflect(&l, &e1, &e1).unwrap(), e1.neg());
        // fixes orthogonal vectors
        let orth = LatticeVector::from_i64(&[0, 0, 0, 1]);
        assert!(l
            .inner(&orth, &LatticeVector::basis(4, 2))
            .unwrap()
            .is_zero());
        assert_eq!(
            reflect(&l, &LatticeVector::basis(4, 2), &orth).unwrap(),
            orth
        );
        // s_{e1}(e4) = e4 + 4 e1
        assert_eq!(
            reflect(&l, &e1, &e4).unwrap(),
            LatticeVector::from_i64(&[4, 0, 0, 1])
        );
        // non-root rejected
        assert!(reflect(&l, &e4, &e1).is_err());
    }

    #[test]
    fn reflect_preserves_form_and_is_involution() {
        use rand::{Rng, SeedableRng};
        let l = y2();
        let e1 = LatticeVector::basis(4, 0);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let x = LatticeVector(
                (0..4)
                    .map(|_| Int::from(rng.random_range(-7..=7i64)))
                    .collect(),
            );
            let y = LatticeVector(
                (0..4)
                    .map(|_| Int::from(rng.random_range(-7..=7i64)))
                    .collect(),
            );
            let sx = reflect(&l, &e1, &x).unwrap();
            let sy = reflect(&l, &e1, &y).unwrap();
            assert_eq!(l.inner(&sx, &sy).unwrap(), l.inner(&x, &y).unwrap());
            assert_eq!(reflect(&l, &e1, &sx).unwrap(), x);
        }
    }

    #[test]
    fn interior_point_for_standard_form() {
        // no root is orthogonal to e1 here, so the first candidate wins
        let l = GramLattice::from_i64(&[&[2, 0], &[0, -6]]).unwrap();
        let a = find_interior_point(&l).unwrap();
        assert_eq!(a, LatticeVector::from_i64(&[1, 0]));
    }

    #[test]
    fn interior_point_skips_mirror_candidates() {
        // (1,0,0) lies on the wall of the root (0,1,0); the search must
        // move past it and land on a class off every mirror
        let l = GramLattice::from_i64(&[&[2, 0, 0], &[0, -2, 0], &[0, 0, -4]]).unwrap();
        let a = find_interior_point(&l).unwrap();
        assert_ne!(a, LatticeVector::from_i64(&[1, 0, 0]));
        assert!(is_interior(&l, &a).unwrap());
        assert_eq!(a, LatticeVector::from_i64(&[2, -1, 0]));
    }

    #[test]
    fn interior_point_rejects_definite_lattice() {
        let l = GramLattice::from_i64(&[&[-2, 0], &[0, -4]]).unwrap();
        assert!(find_interior_point(&l).is_err());
    }

    #[test]
    fn y2_interior_point_is_valid() {
        let l = y2();
        let a = find_interior_point(&l).unwrap();
        assert!(l.norm(&a).unwrap().is_positive());
        assert!(is_interior(&l, &a).unwrap());
    }

    #[test]
    fn no_walls_when_no_roots() {
        let l = GramLattice::from_i64(&[&[2, 0], &[0, -8]]).unwrap();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 30).unwrap();
        assert!(chamber.walls.is_empty());
    }

    #[test]
    fn y2_walls_contain_basis_roots() {
        let l = y2();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 12).unwrap();
        let vectors = chamber.wall_vectors();
        for i in 0..3 {
            let e = LatticeVector::basis(4, i);
            let accepted = vectors.contains(&&e) || vectors.contains(&&e.neg());
            assert!(accepted, "basis root e{} missing from walls", i + 1);
        }
        // chamber invariants: positive heights, pairwise non-negative pairings
        for w in &chamber.walls {
            assert!(w.height.is_positive());
            assert_eq!(l.norm(&w.vec).unwrap(), Int::from(-2));
        }
        for (i, w1) in chamber.walls.iter().enumerate() {
            for w2 in &chamber.walls[i + 1..] {
                assert!(!l.inner(&w1.vec, &w2.vec).unwrap().is_negative());
            }
        }
    }

    #[test]
    fn walls_monotone_in_height() {
        let l = y2();
        let a = find_interior_point(&l).unwrap();
        let small = vinberg_walls(&l, &a, 6).unwrap();
        let large = vinberg_walls(&l, &a, 12).unwrap();
        assert_eq!(
            &large.walls[..small.walls.len()],
            &small.walls[..],
            "wall list is not prefix-stable in the height bound"
        );
    }

    #[test]
    fn chamber_membership() {
        let l = y2();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 10).unwrap();
        assert!(chamber.contains(&a));
        assert!(!chamber.contains(&LatticeVector::zero(4)));
        for w in &chamber.walls {
            let crossed = reflect(&l, &w.vec, &a).unwrap();
            assert!(!chamber.contains(&crossed));
        }
    }

    #[test]
    fn wall_pair_classes() {
        let l = y2();
        let e1 = LatticeVector::basis(4, 0);
        let e2 = LatticeVector::basis(4, 1);
        assert_eq!(
            wall_pair_class(&l, &e1, &e2).unwrap(),
            WallPairClass::Tangent
        );
        // intersecting pair: pairing 1
        let block = GramLattice::from_i64(&[&[-2, 1, 0], &[1, -2, 0], &[0, 0, 2]]).unwrap();
        let d1 = LatticeVector::basis(3, 0);
        let d2 = LatticeVector::basis(3, 1);
        assert_eq!(
            wall_pair_class(&block, &d1, &d2).unwrap(),
            WallPairClass::Intersecting
        );
        assert!(matches!(
            wall_pair_class(&block, &d1, &d2.neg()),
            Err(Error::NegativeWallPairing { .. })
        ));
        // ultraparallel: pairing 6
        let far = LatticeVector::from_i64(&[0, 0, 1, 1]);
        assert_eq!(l.norm(&far).unwrap(), Int::from(-2));
        assert_eq!(l.inner(&e1, &far).unwrap(), Int::from(6));
        assert_eq!(
            wall_pair_class(&l, &e1, &far).unwrap(),
            WallPairClass::Ultraparallel
        );
        // tangency identity: <d1 + d2, d1 + d2> = 0 exactly when pairing is 2
        let sum = e1.add(&e2);
        assert!(l.norm(&sum).unwrap().is_zero());
    }

    #[test]
    fn tangent_pair_product_is_parabolic() {
        let l = y2();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 8).unwrap();
        let mut checked = 0;
        for (i, w1) in chamber.walls.iter().enumerate() {
            for w2 in &chamber.walls[i + 1..] {
                if l.inner(&w1.vec, &w2.vec).unwrap() == Int::from(2) {
                    let m1 = reflection_matrix(&l, &w1.vec).unwrap();
                    let m2 = reflection_matrix(&l, &w2.vec).unwrap();
                    let prod = crate::lattice::snf::mat_mul(&m1, &m2);
                    assert_eq!(
                        classify_integer(&l, &prod).unwrap(),
                        IsometryClass::Parabolic
                    );
                    let bridge = gram_to_lorentz(&l).unwrap();
                    let g = bridge.isometry(&prod).unwrap();
                    assert_eq!(classify(&g), IsometryClass::Parabolic);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "no tangent pairs up to height 8");
    }

    #[test]
    fn dirichlet_domain_agreement() {
        let l = y2();
        let a = find_interior_point(&l).unwrap();
        let chamber = vinberg_walls(&l, &a, 8).unwrap();
        let report = dirichlet_equivalence_check(&chamber, 1000, 11).unwrap();
        assert!(
            report.disagreements.is_empty(),
            "{:?}",
            report.disagreements
        );
        assert!(report.max_on_wall_residual < 1e-6);
    }

    #[test]
    fn random_small_lattices_satisfy_chamber_invariants() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20);
        let mut found = 0;
        while found < 20 {
            let dim = if rng.random_bool(0.5) { 3 } else { 4 };
            let mut gram = vec![vec![0i64; dim]; dim];
            for i in 0..dim {
                gram[i][i] = 2 * rng.random_range(-3..=2i64);
                for j in 0..i {
                    let v = rng.random_range(-2..=2i64);
                    gram[i][j] = v;
                    gram[j][i] = v;
                }
            }
            let rows: Vec<&[i64]> = gram.iter().map(|r| r.as_slice()).collect();
            let Ok(l) = GramLattice::from_i64(&rows) else {
                continue;
            };
            if l.is_hyperbolic().is_err() {
                continue;
            }
            let Ok(a) = find_interior_point(&l) else {
                continue;
            };
            let chamber = vinberg_walls(&l, &a, 5).unwrap();
            for w in &chamber.walls {
                assert!(l.inner(&w.vec, &a).unwrap().is_positive());
            }
            for (i, w1) in chamber.walls.iter().enumerate() {
                for w2 in &chamber.walls[i + 1..] {
                    assert!(!l.inner(&w1.vec, &w2.vec).unwrap().is_negative());
                }
            }
            found += 1;
        }
    }
}
