//! Expand interpolation symmetric functions I_mu on the Schur basis and
//! inspect the transition coefficients sigma(mu, nu) and the normalization
//! constants H(mu).
//!
//!     cargo run --example interpolation_expansions

use qjsf::interp::{h_norm, interp_expansion, sigma};
use qjsf::partition::enumerate_partitions;
use qjsf::qseries::QContext;
use qjsf::Scalar;

fn main() {
    let ctx = QContext::new(Scalar::rat(1, 2)).unwrap();
    println!("q = {}", ctx.q());
    println!();

    for mu in enumerate_partitions(3) {
        if mu.is_empty() {
            continue;
        }
        let exp = interp_expansion(&mu, &ctx);
        println!("I_{mu} = sum over nu of sigma({mu}, nu) S_nu:");
        for (nu, c) in exp.iter() {
            println!("  S_{nu}: {c}");
        }
        println!("  H({mu}) = {}   (value of I_{mu} at its own node)", h_norm(&mu, &ctx));
        println!();
    }

    // sigma is available directly; the top coefficient is always 1 and
    // sigma vanishes unless nu fits inside mu.
    let mu = "2,1".parse().unwrap();
    let nu = "1".parse().unwrap();
    let outside = "3".parse().unwrap();
    println!("sigma((2,1), (1))  = {}", sigma(&mu, &nu, &ctx));
    println!("sigma((2,1), (3))  = {}   (nu not contained in mu)", sigma(&mu, &outside, &ctx));
    println!("sigma((2,1), (2,1)) = {}", sigma(&mu, &mu, &ctx));
}
