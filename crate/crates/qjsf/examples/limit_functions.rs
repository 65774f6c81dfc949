//! The N -> infinity limits Phi_lambda of the multivariate big q-Jacobi
//! polynomials, as elements of the algebra of symmetric functions: expansion
//! on the interpolation and Schur bases, realness of the coefficients in the
//! principal series, unitriangularity, and the closed-form limit norms.
//!
//!     cargo run --example limit_functions

use qjsf::bigq::{phi_limit_expansion, phi_limit_norm, QParams};
use qjsf::partition::enumerate_partitions;
use qjsf::qseries::QContext;
use qjsf::Scalar;

fn main() {
    let ctx = QContext::new(Scalar::rat(1, 2)).unwrap();
    // principal series: gamma and delta are conjugate Gaussian rationals
    let params = QParams::classify(
        ctx,
        Scalar::int(1),
        Scalar::int(-1),
        "1/5+1/7i".parse().unwrap(),
        "1/5-1/7i".parse().unwrap(),
    )
    .unwrap();
    println!("series: {}  (gamma = {}, delta = {})", params.series(), params.gamma(), params.delta());
    println!();

    for lam in enumerate_partitions(3) {
        if lam.is_empty() {
            continue;
        }
        let exp = phi_limit_expansion(&lam, &params).unwrap();
        println!("Phi_{lam}:");
        println!("  on the interpolation basis I_mu(X gamma):");
        for (mu, c) in &exp.i_coeffs {
            println!("    I_{mu}: {c}");
        }
        println!("  on the Schur basis (all coefficients exactly real, top = 1):");
        for (nu, c) in exp.schur.iter() {
            assert!(c.is_real());
            println!("    S_{nu}: {c}");
        }
        assert!(exp.schur.coeff(&lam).is_one());
        println!("  |Phi_{lam}|^2 = {}", phi_limit_norm(&lam, &params).unwrap());
        println!();
    }
}
