//! Blow-up charts at cusps: strict transform directions, exceptional
//! spheres, and parabolic orbit accumulation.
//!
//! Run: cargo run --example blowup_cusps

use amplecone::blowup::{
    blowup_map, cusp_exceptional_sphere, parabolic_orbit_accumulation, strict_transform_direction,
};
use amplecone::chamber::vinberg_walls;
use amplecone::cli::load_lattice;
use amplecone::lattice::enumerate_isotropic;
use amplecone::packing::tangency_graph;
use std::path::Path;

fn main() {
    println!("=== Blow-up charts ===\n");

    // the chart doubles a point with its direction of approach
    let (point, direction) = blowup_map(&[0.0, 0.0], &[3.0, 4.0]).unwrap();
    println!(
        "blow-up at the origin sends (3,4) to ({:?}, {:?})",
        point, direction
    );

    // a boundary ray traced through the standard transformation lands at
    // the direction of the ray, wherever it starts
    let v = [0.6, -0.8, 0.0];
    for base in [[0.0, 0.0, 0.0], [2.0, -1.0, 0.5]] {
        let dir = strict_transform_direction(&v, &base, 40).unwrap();
        println!(
            "strict transform of t -> t({:.1},{:.1}) + {:?}: limit direction ({:.6}, {:.6}, {:.6})",
            v[0], v[1], base, dir[0], dir[1], dir[2]
        );
    }

    // cusps of Y2 with their exceptional spheres
    let path = format!("{}/data/y2.json", env!("CARGO_MANIFEST_DIR"));
    let loaded = load_lattice(Path::new(&path)).unwrap();
    let lattice = &loaded.lattice;
    println!("\n=== Cusps of {} ===\n", loaded.name);
    let classes = enumerate_isotropic(lattice, &loaded.ample, 8).unwrap();
    for class in &classes {
        let report = cusp_exceptional_sphere(lattice, class).unwrap();
        println!(
            "cusp {} (height {}): stabilizer rank {} of parabolic rank {}, exceptional {:?}",
            class.vec, class.height, report.mw_rank, report.parabolic_rank, report.exceptional
        );
    }

    // a parabolic built from a tangent wall pair, pushed through the chart
    let chamber = vinberg_walls(lattice, &loaded.ample, 12).unwrap();
    let graph = tangency_graph(&chamber).unwrap();
    let class = classes
        .iter()
        .find(|c| !graph.edges_at(&c.vec).is_empty())
        .expect("some cusp is a tangent point");
    let acc = parabolic_orbit_accumulation(&chamber, &graph, class, 200).unwrap();
    println!(
        "\norbit accumulation at cusp {} ({} samples): {} clusters, spread {:.2e}, span dim {}",
        class.vec,
        acc.orbit_length,
        acc.cluster_directions.len(),
        acc.max_cluster_spread,
        acc.span_dim
    );
    for d in &acc.cluster_directions {
        println!("  direction ({:.6}, {:.6}, {:.6})", d[0], d[1], d[2]);
    }
    println!("word classified as: {}", acc.parabolic_class);
}
