//! End-to-end dimension reports for the three bundled lattices.
//!
//! Run: cargo run --example vcd_reports

use amplecone::blowup::vcd_report;
use amplecone::cli::load_lattice;
use std::path::Path;

fn main() {
    // (file, height bound, assume a Cantor-set limit set)
    let runs = [
        ("y2.json", 20, false),
        ("y3.json", 15, false),
        ("cantor.json", 20, true),
    ];
    for (file, height, assume_cantor) in runs {
        let path = format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"));
        let loaded = load_lattice(Path::new(&path)).unwrap();
        let report = vcd_report(
            &loaded.lattice,
            &loaded.ample,
            height,
            10,
            6,
            assume_cantor,
            false,
        )
        .unwrap();
        println!("=== {} ===", loaded.name);
        println!("rho = {}", report.rho);
        println!(
            "certificates: packing {}, connected {}, divisors covered {} (H = {}, H_iso = {}, word bound {})",
            report.certificates.is_packing,
            report.certificates.is_connected,
            report.certificates.divisors_covered,
            report.certificates.height_bound,
            report.certificates.iso_height,
            report.certificates.word_bound,
        );
        println!("method: {:?}", report.method);
        match report.vcd {
            Some(v) => println!("vcd(Aut) = {v}"),
            None => println!("vcd(Aut) not certified at these bounds"),
        }
        println!(
            "cusps: {} (boundary dimension lower bound {})\n",
            report.per_cusp.len(),
            report.boundary_dim_lower
        );
    }
}
