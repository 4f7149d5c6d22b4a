//! The hyperboloid, ball, and upper half-space models, the maps between
//! them, and the classification of isometries.
//!
//! Run: cargo run --example hyperbolic_models

use amplecone::lattice::{GramLattice, LatticeVector};
use amplecone::models::lorentz::{classify, gram_to_lorentz, reflection_matrix};
use amplecone::models::{
    dist, lorentz_inner, poincare_extension, standard_transformation, stereo, Generator, Model,
    ModelPoint, MoebiusMap, Point,
};

fn main() {
    println!("=== Hyperbolic models ===\n");

    // the Lorentzian form and a point on the sheet
    let apex = vec![0.0, 0.0, 1.0];
    println!(
        "apex (0,0,1): x.x = {}",
        lorentz_inner(&apex, &apex).unwrap()
    );

    // distances agree across models
    let b1 = ModelPoint::ball(vec![0.0, 0.0]).unwrap();
    let b2 = ModelPoint::ball(vec![0.5, 0.0]).unwrap();
    println!(
        "ball distance 0 -> (1/2, 0): {:.12} (closed form acosh(5/3) = {:.12})",
        dist(&b1, &b2).unwrap(),
        (5.0f64 / 3.0).acosh()
    );
    let h1 = stereo(&b1).unwrap();
    let h2 = stereo(&b2).unwrap();
    println!(
        "same distance on the hyperboloid: {:.12}",
        dist(&h1, &h2).unwrap()
    );

    let u1 = ModelPoint::upper_half(vec![0.0, 1.0]).unwrap();
    let u2 = ModelPoint::upper_half(vec![0.0, std::f64::consts::E]).unwrap();
    println!(
        "vertical geodesic in the upper half-plane: {:.12} (exact value 1)",
        dist(&u1, &u2).unwrap()
    );
    let via_ball = dist(
        &standard_transformation(&u1).unwrap(),
        &standard_transformation(&u2).unwrap(),
    )
    .unwrap();
    println!("after the standard transformation: {:.12}", via_ball);

    // Moebius words and the Poincare extension
    println!("\n=== Moebius words ===\n");
    let word = MoebiusMap::new(vec![
        Generator::plane(vec![1.0, 0.0], 0.5).unwrap(),
        Generator::sphere(vec![0.0, 1.0], 1.5).unwrap(),
    ]);
    let x = Point::Finite(vec![0.25, -0.75]);
    println!(
        "word of 2 generators applied to (0.25, -0.75): {:?}",
        word.apply(&x).unwrap()
    );
    let extended = poincare_extension(&word);
    let lifted = Point::Finite(vec![0.25, -0.75, 0.6]);
    println!(
        "Poincare extension keeps the upper half-space: {:?}",
        extended.apply(&lifted).unwrap()
    );

    // isometry types through the exact lattice bridge
    println!("\n=== Classification ===\n");
    let y2 = GramLattice::from_i64(&[
        &[-2, 2, 2, 4],
        &[2, -2, 2, 4],
        &[2, 2, -2, 0],
        &[4, 4, 0, 0],
    ])
    .unwrap();
    let bridge = gram_to_lorentz(&y2).unwrap();
    println!("bridge residual |M^T J M - G| = {:.3e}", bridge.residual());

    let e1 = LatticeVector::basis(4, 0);
    let w = reflection_matrix(&y2, &e1).unwrap();
    let g = bridge.isometry(&w).unwrap();
    println!("reflection in a (-2)-class: {}", classify(&g));

    let a = LatticeVector::from_i64(&[0, 1, 0, 1]);
    let p = bridge.hyperboloid_point(&a).unwrap();
    println!(
        "interior class {} on the sheet: {:?}",
        a,
        p.coords
            .iter()
            .map(|v| (v * 1e6).round() / 1e6)
            .collect::<Vec<_>>()
    );
    println!(
        "same point in the ball model: {:?}",
        p.to_model(Model::Ball).unwrap().coords
    );
}
