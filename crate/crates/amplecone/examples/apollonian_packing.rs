//! The boundary circle packing of the Y2 lattice: certificates, tangency
//! graph, Descartes quadruples, and an SVG drawing.
//!
//! Run: cargo run --example apollonian_packing

use amplecone::chamber::vinberg_walls;
use amplecone::cli::load_lattice;
use amplecone::lattice::LatticeVector;
use amplecone::packing::{
    descartes_residual, elliptic_divisors_at_tangents, is_sphere_packing, render, tangency_graph,
    PackingGeometry, SphereShape,
};
use std::path::Path;

fn main() {
    let path = format!("{}/data/y2.json", env!("CARGO_MANIFEST_DIR"));
    let loaded = load_lattice(Path::new(&path)).unwrap();
    let chamber = vinberg_walls(&loaded.lattice, &loaded.ample, 20).unwrap();

    println!("=== Boundary packing of {} at height 20 ===\n", loaded.name);
    let certificate = is_sphere_packing(&chamber);
    println!("walls: {}", certificate.wall_count);
    println!("is packing: {}", certificate.is_packing);
    println!("is connected: {}", certificate.is_connected);

    let graph = tangency_graph(&chamber).unwrap();
    println!("tangency edges: {}", graph.edges.len());
    let cliques = graph.four_cliques();
    println!("mutually tangent quadruples: {}", cliques.len());

    // put the lowest cusp at infinity and read off circles and lines
    let cusp = LatticeVector::basis(4, 3);
    let geometry = PackingGeometry::new(&chamber, &cusp).unwrap();
    println!(
        "\nfirst six walls in boundary coordinates (cusp {} at infinity):",
        cusp
    );
    for sphere in geometry.spheres.iter().take(6) {
        match &sphere.shape {
            SphereShape::Sphere { center, radius, .. } => println!(
                "  circle  center ({:>7.4}, {:>7.4})  radius {:.4}  from {}",
                center[0], center[1], radius, sphere.source.vec
            ),
            SphereShape::Plane { normal, offset } => println!(
                "  line    normal ({:>7.4}, {:>7.4})  offset {:.4}  from {}",
                normal[0], normal[1], offset, sphere.source.vec
            ),
        }
    }

    println!("\nDescartes residuals of the first three quadruples:");
    for clique in cliques.iter().take(3) {
        let spheres = [
            &geometry.spheres[clique[0]],
            &geometry.spheres[clique[1]],
            &geometry.spheres[clique[2]],
            &geometry.spheres[clique[3]],
        ];
        let curvatures: Vec<f64> = spheres.iter().map(|s| s.curvature()).collect();
        println!(
            "  walls {:?}: curvatures {:?} residual {:.3e}",
            clique,
            curvatures
                .iter()
                .map(|k| (k * 1e6).round() / 1e6)
                .collect::<Vec<_>>(),
            descartes_residual(spheres).unwrap()
        );
    }

    // every low isotropic class is a tangent point after reduction
    let coverage = elliptic_divisors_at_tangents(&chamber, &graph, 10, 6).unwrap();
    println!(
        "\nelliptic divisors at tangent points: pass = {} ({} classes checked, longest word {})",
        coverage.pass, coverage.checked, coverage.max_word_length
    );

    let svg = render::render_svg(&geometry).unwrap();
    let out = std::env::temp_dir().join("amplecone_y2_packing.svg");
    std::fs::write(&out, &svg).unwrap();
    println!(
        "\nwrote {} circles/lines to {}",
        geometry.spheres.len(),
        out.display()
    );
}
