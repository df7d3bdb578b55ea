//! Certificates survive a JSON round trip and are rejected once tampered
//! with.
//!
//!     cargo run --example certificate_verify -- 8 42

use std::env;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stab_lu::hypergraph::verify_certificate;
use stab_lu::oracle::verify_certificate_dense;
use stab_lu::pipeline::DENSE_CHECK_LIMIT;
use stab_lu::{check_lu, Certificate, Dyadic, Graph, Result};

fn main() -> Result<()> {
    let mut args = env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("integer"));
    let n = args.next().unwrap_or(8) as usize;
    let seed = args.next().unwrap_or(42);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let g = Graph::random(n, 0.5, &mut rng);
    let mut gp = g.clone();
    for _ in 0..3 * n {
        gp.local_complement_in_place(rng.gen_range(0..n));
    }
    println!("G  = {}\nG' = {}", g.to_graph6(), gp.to_graph6());

    let verdict = check_lu(&g, &gp, None)?;
    let cert = verdict
        .certificate()
        .expect("LC orbit members are equivalent");
    let text = serde_json::to_string(&cert.to_json()).unwrap();
    println!("certificate: {} bytes of JSON", text.len());

    let back = Certificate::from_json(&text)?;
    assert_eq!(&back, cert);
    back.verify(&g, &gp, DENSE_CHECK_LIMIT)?;
    println!(
        "round trip verifies: hypergraph {}, dense {}",
        verify_certificate(&back.reduced, &back.alpha),
        verify_certificate_dense(&g, &gp, &back)?
    );

    let mut bad = back.clone();
    let q = bad
        .reduced
        .tail
        .first()
        .or(bad.reduced.pivots.first())
        .copied()
        .unwrap_or(0);
    bad.alpha[q] += Dyadic::HALF;
    match bad.verify(&g, &gp, DENSE_CHECK_LIMIT) {
        Ok(()) => println!("tampered certificate accepted"),
        Err(e) => println!("tampered certificate rejected: {e}"),
    }
    Ok(())
}
