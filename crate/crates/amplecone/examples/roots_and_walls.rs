//! Interior-point search, wall acceptance, and the Dirichlet-domain
//! comparison between algebraic and metric chamber membership.
//!
//! Run: cargo run --example roots_and_walls

use amplecone::chamber::{
    dirichlet_equivalence_check, find_interior_point, reflect, vinberg_walls, wall_pair_class,
};
use amplecone::cli::load_lattice;
use std::path::Path;

fn main() {
    let path = format!("{}/data/y2.json", env!("CARGO_MANIFEST_DIR"));
    let loaded = load_lattice(Path::new(&path)).unwrap();
    let lattice = &loaded.lattice;

    println!("=== Chamber walls for {} ===\n", loaded.name);
    let ample = find_interior_point(lattice).unwrap();
    println!("interior class found by box search: {}", ample);

    let chamber = vinberg_walls(lattice, &ample, 12).unwrap();
    println!(
        "\nwalls accepted up to height 12 ({} total):",
        chamber.walls.len()
    );
    for w in &chamber.walls {
        println!("  height {:>2}  {}", w.height, w.vec);
    }

    println!("\npairwise wall positions (first four walls):");
    for i in 0..4.min(chamber.walls.len()) {
        for j in i + 1..4.min(chamber.walls.len()) {
            let class =
                wall_pair_class(lattice, &chamber.walls[i].vec, &chamber.walls[j].vec).unwrap();
            let pairing = lattice
                .inner(&chamber.walls[i].vec, &chamber.walls[j].vec)
                .unwrap();
            println!("  walls {i} and {j}: pairing {pairing} -> {class:?}");
        }
    }

    // crossing a wall leaves the chamber
    let crossed = reflect(lattice, &chamber.walls[0].vec, &ample).unwrap();
    println!("\nample in chamber: {}", chamber.contains(&ample));
    println!("reflected ample in chamber: {}", chamber.contains(&crossed));

    // the chamber is the Dirichlet domain of the reflection group:
    // sign <x, delta> agrees with which of a, s_delta(a) is closer to x
    let report = dirichlet_equivalence_check(&chamber, 200, 7).unwrap();
    println!(
        "\nDirichlet comparison: {} point/wall checks, {} disagreements",
        report.comparisons,
        report.disagreements.len()
    );
    println!(
        "max |d(x,a) - d(x,sa)| over on-wall solves: {:.3e}",
        report.max_on_wall_residual
    );
}
