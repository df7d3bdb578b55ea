//! The linear systems behind the LC_r hierarchy for one reduced pair.
//!
//!     cargo run --release --example hierarchy

use stab_lu::graphstate::kneser;
use stab_lu::mls::mls_cover;
use stab_lu::pipeline::{
    build_system, complete_level, enumerate_function_pairs, reduce_to_hat, solve_hierarchy,
    twin_classes, HierarchyOutcome,
};
use stab_lu::Result;

fn main() -> Result<()> {
    let g = kneser(7, &[5], false)?;
    let gp = kneser(7, &[5], true)?;
    let cover = mls_cover(&g)?;
    let pairs = enumerate_function_pairs(&g, &gp, &cover);
    println!("{} cover sets, {} function pairs", cover.len(), pairs.len());

    for pair in &pairs {
        let (fg, fgp) = pair.to_strings();
        let Some(rp) = reduce_to_hat(&g, &gp, pair) else {
            println!("{fg} / {fgp}: no common block form");
            continue;
        };
        let twins = twin_classes(&rp);
        println!(
            "{fg} / {fgp}: k = {}, tail {}, Δ = {}, complete at r = {}",
            rp.k,
            rp.tail.len(),
            rp.delta(),
            complete_level(&rp)
        );
        println!("  {} twin classes", twins.classes.len());
        for r in 1..=complete_level(&rp) {
            let (system, _) = build_system(&rp, r)?;
            let odd = system.rows.iter().filter(|row| row.rhs).count();
            println!(
                "  r = {r}: {} rows ({odd} with rhs 1) over Z/2^{}",
                system.rows.len(),
                system.modulus_exponent
            );
            match solve_hierarchy(&rp, r)? {
                HierarchyOutcome::Solved { r, alpha } => {
                    let used = alpha.iter().filter(|a| !a.is_zero()).count();
                    println!("          solved at r = {r}, {used} nonzero angles");
                }
                other => println!("          {other:?}"),
            }
        }
    }
    Ok(())
}
