//! Exact lattice arithmetic: pairings, signatures, discriminant groups, and
//! enumeration of roots and isotropic classes.
//!
//! Run: cargo run --example lattice_basics

use amplecone::lattice::{enumerate_isotropic, enumerate_roots, GramLattice, LatticeVector};

fn main() {
    let y2 = GramLattice::from_i64(&[
        &[-2, 2, 2, 4],
        &[2, -2, 2, 4],
        &[2, 2, -2, 0],
        &[4, 4, 0, 0],
    ])
    .unwrap();

    println!("=== Gram lattice basics (Y2) ===\n");
    println!("dim (Picard number): {}", y2.dim());
    println!("signature: {:?}", y2.signature().unwrap());
    println!("determinant: {}", y2.det());
    println!(
        "discriminant group invariant factors: {:?}",
        y2.discriminant_group()
            .unwrap()
            .invariant_factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
    );

    let e1 = LatticeVector::basis(4, 0);
    let e4 = LatticeVector::basis(4, 3);
    println!("\npairings: <e1,e1> = {}", y2.inner(&e1, &e1).unwrap());
    println!("          <e1,e4> = {}", y2.inner(&e1, &e4).unwrap());
    println!("          <e4,e4> = {}", y2.inner(&e4, &e4).unwrap());

    // enumeration slices the search by height against an interior class
    let a = LatticeVector::from_i64(&[0, 1, 0, 1]);
    println!(
        "\ninterior class a = {} with <a,a> = {}",
        a,
        y2.norm(&a).unwrap()
    );

    let roots = enumerate_roots(&y2, &a, 8).unwrap();
    println!("\nroots with height up to 8: {}", roots.len());
    for d in &roots {
        println!("  {}  (height {})", d, y2.inner(d, &a).unwrap());
    }

    let classes = enumerate_isotropic(&y2, &a, 8).unwrap();
    println!(
        "\nprimitive isotropic classes with height up to 8: {}",
        classes.len()
    );
    for c in &classes {
        println!("  {}  (height {})", c.vec, c.height);
    }

    // a definite diagonal form with a congruence obstruction has no roots
    let no_roots = GramLattice::from_i64(&[&[2, 0], &[0, -8]]).unwrap();
    let a2 = LatticeVector::from_i64(&[1, 0]);
    println!(
        "\ndiag(2,-8): roots up to height 50: {}",
        enumerate_roots(&no_roots, &a2, 50).unwrap().len()
    );
    println!(
        "diag(2,-8): isotropic classes up to height 20: {:?}",
        enumerate_isotropic(&no_roots, &a2, 20)
            .unwrap()
            .iter()
            .map(|c| c.vec.to_string())
            .collect::<Vec<_>>()
    );
}
