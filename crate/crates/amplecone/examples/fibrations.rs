//! Mordell-Weil ranks of the elliptic fibrations attached to isotropic
//! classes, with the rank identity fiber_root_rank + mw_rank = rho - 2.
//!
//! Run: cargo run --example fibrations

use amplecone::cli::load_lattice;
use amplecone::fibration::{fibration_table, max_mw_rank, quotient_lattice};
use std::path::Path;

fn main() {
    for file in ["y2.json", "y3.json", "cantor.json"] {
        let path = format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"));
        let loaded = load_lattice(Path::new(&path)).unwrap();
        let lattice = &loaded.lattice;
        let rho = lattice.dim();

        println!("=== {} (rho = {rho}) ===", loaded.name);
        let table = fibration_table(lattice, &loaded.ample, 10).unwrap();
        println!("{:>24}  height  fiber_root_rank  mw_rank", "class");
        for row in &table {
            println!(
                "{:>24}  {:>6}  {:>15}  {:>7}",
                row.class.vec.to_string(),
                row.class.height.to_string(),
                row.fiber_root_rank,
                row.mw_rank
            );
            assert_eq!(row.fiber_root_rank + row.mw_rank, rho - 2);
        }
        let (max_rank, witness) = max_mw_rank(lattice, &loaded.ample, 10).unwrap();
        println!(
            "max Mordell-Weil rank up to height 10: {} (witness {})",
            max_rank, witness.vec
        );

        // the fiber lattice of the lowest class, written out
        let quotient = quotient_lattice(lattice, &table[0].class.vec).unwrap();
        println!(
            "fiber lattice of {}: {:?}\n",
            table[0].class.vec,
            quotient.gram()
        );
    }
}
