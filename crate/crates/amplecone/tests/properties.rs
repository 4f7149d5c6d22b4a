//! Cross-module property tests: randomized structural invariants plus the
//! exact-versus-numeric agreement on both bundled packing lattices.

use amplecone::chamber::{find_interior_point, vinberg_walls};
use amplecone::lattice::ratmat::{self, Rat};
use amplecone::lattice::snf::{self, IMat};
use amplecone::lattice::{enumerate, GramLattice, Int, LatticeVector};
use amplecone::packing::{self, PackingGeometry, SphereRelation};
use proptest::prelude::*;

fn y3() -> GramLattice {
    GramLattice::from_i64(&[
        &[-2, 2, 2, 2, 4],
        &[2, -2, 2, 2, 4],
        &[2, 2, -2, 2, 4],
        &[2, 2, 2, -2, 0],
        &[4, 4, 4, 0, 0],
    ])
    .unwrap()
}

#[test]
fn y3_exact_tangency_agrees_with_numeric_to_height_20() {
    let lattice = y3();
    let ample = find_interior_point(&lattice).unwrap();
    let chamber = vinberg_walls(&lattice, &ample, 20).unwrap();
    let classes = amplecone::lattice::enumerate_isotropic(&lattice, &ample, 10).unwrap();
    let geometry = PackingGeometry::new(&chamber, &classes[0].vec).unwrap();
    let two = Int::from(2);
    for i in 0..chamber.walls.len() {
        for j in i + 1..chamber.walls.len() {
            let pairing = lattice
                .inner(&chamber.walls[i].vec, &chamber.walls[j].vec)
                .unwrap();
            let relation =
                packing::sphere_relation(&geometry.spheres[i], &geometry.spheres[j], 1e-6);
            let expected = if pairing < two {
                SphereRelation::Crossing
            } else if pairing == two {
                SphereRelation::Tangent
            } else {
                SphereRelation::Disjoint
            };
            assert_eq!(relation, expected, "walls {i},{j} pairing {pairing}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The Smith transform identity p a q = d holds with unimodular p, q
    /// and a divisibility chain on the diagonal.
    #[test]
    fn snf_structure(entries in proptest::collection::vec(-30i64..30, 9)) {
        let a: IMat = (0..3)
            .map(|i| (0..3).map(|j| Int::from(entries[3 * i + j])).collect())
            .collect();
        let f = snf::smith_normal_form(&a);
        prop_assert_eq!(snf::mat_mul(&snf::mat_mul(&f.p, &a), &f.q), f.d.clone());
        prop_assert!(snf::unimodular_inverse(&f.p).is_some());
        prop_assert!(snf::unimodular_inverse(&f.q).is_some());
        for k in 0..2 {
            let d0 = &f.d[k][k];
            let d1 = &f.d[k + 1][k + 1];
            if !num::Zero::is_zero(d0) {
                prop_assert!(num::Zero::is_zero(&(d1 % d0)));
            } else {
                prop_assert!(num::Zero::is_zero(d1));
            }
        }
    }

    /// The primitive part of a nonzero vector has unit content and spans
    /// the same ray.
    #[test]
    fn primitive_part_properties(coords in proptest::collection::vec(-40i64..40, 4), scale in 1i64..5) {
        let base = LatticeVector(coords.iter().map(|&c| Int::from(c * scale)).collect());
        prop_assume!(!base.is_zero());
        let prim = base.primitive_part();
        prop_assert!(prim.is_primitive());
        let g = base.content();
        prop_assert_eq!(prim.scale(&g), base);
    }

    /// The exact ellipsoid enumerator agrees with a brute-force box scan on
    /// random positive definite binary forms.
    #[test]
    fn ellipsoid_matches_brute_force(
        a in 1i64..6,
        b in -3i64..4,
        extra in 1i64..6,
        cx in -8i64..8,
        cy in -8i64..8,
        r2 in 1i64..40,
    ) {
        // a > 0 and det = a*c - b^2 > 0 by construction
        let c = b * b / a + extra;
        let p = vec![
            vec![Rat::from_integer(Int::from(a)), Rat::from_integer(Int::from(b))],
            vec![Rat::from_integer(Int::from(b)), Rat::from_integer(Int::from(c))],
        ];
        prop_assume!(ratmat::inertia(&p) == (2, 0, 0));
        let center = vec![
            Rat::new(Int::from(cx), Int::from(3)),
            Rat::new(Int::from(cy), Int::from(3)),
        ];
        let radius2 = Rat::from_integer(Int::from(r2));
        let got = enumerate::enumerate_ellipsoid(&p, &center, &radius2).unwrap();

        let mut expected = Vec::new();
        for x in -40..=40i64 {
            for y in -40..=40i64 {
                let dx = Rat::from_integer(Int::from(x)) - &center[0];
                let dy = Rat::from_integer(Int::from(y)) - &center[1];
                let val = Rat::from_integer(Int::from(a)) * &dx * &dx
                    + Rat::from_integer(Int::from(2 * b)) * &dx * &dy
                    + Rat::from_integer(Int::from(c)) * &dy * &dy;
                if val <= radius2 {
                    expected.push(vec![Int::from(x), Int::from(y)]);
                }
            }
        }
        expected.sort();
        prop_assert_eq!(got, expected);
    }

    /// Reflections preserve the pairing and square to the identity on
    /// random vectors of the Y3 lattice.
    #[test]
    fn reflection_properties(coords in proptest::collection::vec(-9i64..9, 5)) {
        let lattice = y3();
        let delta = LatticeVector::basis(5, 0);
        let x = LatticeVector::from_i64(&coords);
        let sx = amplecone::chamber::reflect(&lattice, &delta, &x).unwrap();
        prop_assert_eq!(
            lattice.norm(&sx).unwrap(),
            lattice.norm(&x).unwrap()
        );
        let back = amplecone::chamber::reflect(&lattice, &delta, &sx).unwrap();
        prop_assert_eq!(back, x);
    }
}
