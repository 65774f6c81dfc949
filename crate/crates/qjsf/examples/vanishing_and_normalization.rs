//! The defining property of the N-variable interpolation polynomials: exact
//! vanishing at the nodes X_N(lambda) for every lambda not containing mu
//! ("extra vanishing"), and the N-independent value H(mu) at the diagram's
//! own node.
//!
//!     cargo run --example vanishing_and_normalization

use qjsf::interp::{h_norm, interp_poly_det};
use qjsf::partition::{enumerate_partitions, Partition};
use qjsf::qseries::QContext;
use qjsf::Scalar;

fn main() {
    let ctx = QContext::new(Scalar::rat(1, 2)).unwrap();
    let mu: Partition = "2,1".parse().unwrap();
    let n = 4;

    println!("mu = {mu}, N = {n}, q = {}", ctx.q());
    println!();
    println!("value of I_{{mu|N}} at the node X_N(lambda):");
    for lam in enumerate_partitions(4) {
        if lam.length() > n {
            continue;
        }
        let xs = lam.node_vector(n, &ctx).unwrap();
        let v = interp_poly_det(&mu, n, &xs, &ctx).unwrap();
        let note = if lam == mu {
            "  <- its own node: H(mu)"
        } else if lam.contains(&mu) {
            "  (contains mu: no constraint)"
        } else {
            "  (extra vanishing)"
        };
        println!("  lambda = {lam:<8} I = {v}{note}");
    }
    println!();
    println!("H({mu}) = {}", h_norm(&mu, &ctx));
    println!("The node value is independent of N:");
    for n in mu.length()..=6 {
        let xs = mu.node_vector(n, &ctx).unwrap();
        println!(
            "  N = {n}: {}",
            interp_poly_det(&mu, n, &xs, &ctx).unwrap()
        );
    }
}
