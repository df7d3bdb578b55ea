//! Minimal local sets covering a graph, with their reduced stabilizer
//! groups.
//!
//!     cargo run --example mls_cover
//!     cargo run --example mls_cover -- 'Dhc'

use std::env;

use stab_lu::graphstate::{cycle, Graph};
use stab_lu::mls::{intersection_components, mls_cover};
use stab_lu::Result;

fn main() -> Result<()> {
    let g = match env::args().nth(1) {
        Some(text) => Graph::parse_any(&text)?,
        None => cycle(5),
    };
    println!("graph {} on {} vertices", g.to_graph6(), g.n());
    let cover = mls_cover(&g)?;
    for s in &cover.sets {
        let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
        println!(
            "M = {:?}  D = {:?}  type {:?}",
            one(&s.m.to_indices()),
            one(&s.d.to_indices()),
            s.mls_type
        );
        for (_, p) in s.elements(&g) {
            println!("    {p}");
        }
    }
    let (components, type_ii_only) = intersection_components(&cover);
    println!(
        "{} sets, {} components, {type_ii_only} of Type II only",
        cover.len(),
        components.len()
    );
    Ok(())
}
