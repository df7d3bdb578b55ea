//! The 3-qubit star and the triangle are both GHZ states up to local
//! Cliffords. Prints the certificate and checks it two ways.
//!
//!     cargo run --example ghz_check

use stab_lu::graphstate::{complete, star};
use stab_lu::hypergraph::verify_certificate;
use stab_lu::oracle::verify_certificate_dense;
use stab_lu::{check_lc, Result};

fn main() -> Result<()> {
    let g = star(3);
    let gp = complete(3);
    let verdict = check_lc(&g, &gp)?;
    println!("{verdict}");

    let cert = verdict.certificate().expect("the pair is LC-equivalent");
    for (q, factors) in cert.composed.to_strings().iter().enumerate() {
        println!("  qubit {}: {}", q + 1, factors.join(" "));
    }
    println!(
        "pivots {:?}, tail {:?}",
        cert.reduced.pivots, cert.reduced.tail
    );
    println!(
        "hypergraph check: {}",
        verify_certificate(&cert.reduced, &cert.alpha)
    );
    println!(
        "dense check:      {}",
        verify_certificate_dense(&g, &gp, cert)?
    );
    println!(
        "{}",
        serde_json::to_string_pretty(&verdict.to_json()).unwrap()
    );
    Ok(())
}
