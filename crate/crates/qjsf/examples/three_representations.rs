//! Three independent ways to evaluate the N-variable interpolation
//! polynomial I_{mu|N} — the determinant ratio, the reverse-tableau sum, and
//! the finite-N Schur expansion — agree exactly.
//!
//!     cargo run --example three_representations

use qjsf::interp::{interp_combinatorial, interp_poly_det, interp_poly_expansion};
use qjsf::partition::Partition;
use qjsf::qseries::QContext;
use qjsf::Scalar;

fn main() {
    let ctx = QContext::new(Scalar::rat(1, 2)).unwrap();
    let mu: Partition = "2,1".parse().unwrap();
    let n = 3;
    let xs = [Scalar::rat(5, 3), Scalar::rat(-1, 4), Scalar::rat(2, 7)];

    println!("mu = {mu}, N = {n}, q = {}", ctx.q());
    println!(
        "x = ({})",
        xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    );
    println!();

    let det = interp_poly_det(&mu, n, &xs, &ctx).unwrap();
    println!("determinant ratio:     {det}");

    let tab = interp_combinatorial(&mu, n, &xs, &ctx).unwrap();
    println!("reverse-tableau sum:   {tab}");

    let exp = interp_poly_expansion(&mu, n, &ctx).unwrap();
    let via_schur = exp.eval(n, &xs).unwrap();
    println!("Schur expansion:       {via_schur}");
    println!();
    assert_eq!(det, tab);
    assert_eq!(det, via_schur);
    println!("all three exactly equal.");
    println!();
    println!("the finite-N Schur expansion itself (N-dependent coefficients):");
    for (nu, c) in exp.iter() {
        println!("  S_{nu}: {c}");
    }
}
