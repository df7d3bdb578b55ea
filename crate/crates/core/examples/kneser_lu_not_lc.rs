//! A pair of graph states that are LU- but not LC-equivalent.
//!
//!     cargo run --release --example kneser_lu_not_lc -- 7 5
//!     cargo run --release --example kneser_lu_not_lc -- 6 5 4

use std::env;
use std::time::Instant;

use stab_lu::graphstate::kneser;
use stab_lu::hypergraph::verify_certificate;
use stab_lu::{check_lc, check_lu, Result};

fn main() -> Result<()> {
    let args: Vec<usize> = env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer"))
        .collect();
    let (k, sizes) = match args.split_first() {
        Some((&k, rest)) if !rest.is_empty() => (k, rest.to_vec()),
        _ => (7, vec![5]),
    };
    let g = kneser(k, &sizes, false)?;
    let gp = kneser(k, &sizes, true)?;
    println!(
        "K({k},{sizes:?}): {} vertices, {} vs {} edges",
        g.n(),
        g.num_edges(),
        gp.num_edges()
    );

    let t = Instant::now();
    println!("LC: {}", check_lc(&g, &gp)?);
    println!("LU up to r=1: {}", check_lu(&g, &gp, Some(1))?);
    let verdict = check_lu(&g, &gp, None)?;
    println!("LU: {verdict}  ({:.1?})", t.elapsed());

    if let Some(cert) = verdict.certificate() {
        let nonzero: Vec<String> = cert
            .alpha
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(v, a)| format!("{}:{a}", v + 1))
            .collect();
        println!("angles {}", nonzero.join(" "));
        println!(
            "hypergraph check: {}",
            verify_certificate(&cert.reduced, &cert.alpha)
        );
    }
    Ok(())
}
