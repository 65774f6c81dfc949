//! Orthogonality of the finite-N multivariate family under the N-point
//! configuration measure on the truncated lattice: the Gram matrix is
//! numerically diagonal, the diagonal matches the closed-form norm product,
//! and the Andreief cross-moment determinant reproduces the brute-force
//! configuration sum exactly in exact mode.
//!
//!     cargo run --release --example orthogonality_gram

use qjsf::bigq::{phi_finite_norm, QParams};
use qjsf::measure::{gram_andreief, gram_bruteforce, Mode, TruncatedLattice};
use qjsf::partition::{enumerate_partitions, Partition};
use qjsf::qseries::QContext;
use qjsf::Scalar;

fn main() {
    let ctx = QContext::new(Scalar::rat(1, 2)).unwrap();
    let params = QParams::classify(
        ctx,
        Scalar::int(1),
        Scalar::int(-1),
        "1/5+1/7i".parse().unwrap(),
        "1/5-1/7i".parse().unwrap(),
    )
    .unwrap();
    let n = 2;
    let lams: Vec<Partition> = enumerate_partitions(3)
        .into_iter()
        .filter(|l| l.length() <= n)
        .collect();

    // float mode with the automatic truncation rule
    let mode = Mode::float(256, 0.5, 1e-30);
    let lat = TruncatedLattice::auto(params.clone(), n, mode, 1e-14);
    println!(
        "N = {n}, truncation K = {} ({} points), tail ratio {:.2e}",
        lat.k(),
        lat.points().len(),
        lat.tail_bound()
    );
    let g = gram_bruteforce(&lams, n, &lat).unwrap();
    println!();
    println!("Gram diagonal vs closed-form norm product:");
    for (i, lam) in lams.iter().enumerate() {
        let closed = phi_finite_norm(lam, n, &params).unwrap().to_f64();
        println!(
            "  {lam:<6} gram {:.12e}   closed {:.12e}",
            g[i][i].to_f64(),
            closed
        );
    }
    println!();
    println!("largest relative off-diagonal:");
    let mut worst = 0.0f64;
    for a in 0..lams.len() {
        for b in 0..lams.len() {
            if a != b {
                let rel = g[a][b].abs_f64() / (g[a][a].abs_f64() * g[b][b].abs_f64()).sqrt();
                worst = worst.max(rel);
            }
        }
    }
    println!("  {worst:.2e}");

    // exact mode: the two Gram algorithms agree bit-for-bit
    let lat = TruncatedLattice::with_k(params, n, 6, Mode::exact());
    let brute = gram_bruteforce(&lams, n, &lat).unwrap();
    let fast = gram_andreief(&lams, n, &lat).unwrap();
    assert_eq!(brute, fast);
    println!();
    println!(
        "exact mode at K = 6: Andreief determinant == brute force over {} configurations, exactly",
        (1..=n).fold(1usize, |acc, i| acc * (12 - i + 1) / i)
    );
}
