//! LC orbits of connected graphs and the cut-rank screen between them.
//!
//!     cargo run --release --example census -- 8

use std::env;
use std::time::Instant;

use stab_lu::census::census;
use stab_lu::Result;

fn main() -> Result<()> {
    let max_n: usize = env::args()
        .nth(1)
        .map_or(7, |a| a.parse().expect("integer"));
    println!(
        "{:>2} {:>7} {:>9} {:>7} {:>9} {:>6} {:>8}",
        "n", "graphs", "connected", "orbits", "cut-rank", "LU", "time"
    );
    for n in 2..=max_n {
        let t = Instant::now();
        let row = census(n)?;
        println!(
            "{:>2} {:>7} {:>9} {:>7} {:>9} {:>6} {:>8.2?}",
            n,
            row.graphs.unwrap_or(0),
            row.connected.unwrap_or(0),
            row.lc_orbits,
            row.cut_rank_pairs,
            row.lu_equivalent_pairs,
            t.elapsed()
        );
        for c in &row.candidates {
            println!(
                "   {} ~ {} under {:?}",
                c.graph6.0, c.graph6.1, c.permutation
            );
        }
    }
    Ok(())
}
