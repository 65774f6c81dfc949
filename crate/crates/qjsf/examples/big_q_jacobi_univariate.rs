//! Monic univariate big q-Jacobi polynomials from the terminating 3phi2
//! formula, cross-checked against Gram-Schmidt orthogonalization over the
//! truncated two-sided q-lattice, with their closed-form squared norms.
//!
//!     cargo run --example big_q_jacobi_univariate

use qjsf::bigq::{h_univariate_norm, lattice, phi_univariate, weight, QParams};
use qjsf::qseries::QContext;
use qjsf::Scalar;

fn main() {
    let ctx = QContext::new(Scalar::rat(1, 2)).unwrap();
    let params = QParams::classify(
        ctx,
        Scalar::int(1),
        Scalar::int(-1),
        Scalar::int(3),
        Scalar::rat(7, 2),
    )
    .unwrap();
    println!("series: {}", params.series());

    let n = 1; // univariate case: the finite-N parameters at N = 1
    let (c, d) = params.finite_n_cd(n);
    println!("(a, b, c, d) = ({}, {}, {c}, {d})", params.alpha(), params.beta());
    println!();

    for ell in 0..=3usize {
        let p = phi_univariate(ell, params.alpha(), params.beta(), &c, &d, params.ctx()).unwrap();
        println!("phi_{ell}(x), ascending coefficients: {:?}",
            p.coeffs().iter().map(|v| v.to_string()).collect::<Vec<_>>());
        println!("  monic: {}", p.is_monic());
        println!("  |phi_{ell}|^2 = {}", h_univariate_norm(ell, n, &params).unwrap());
    }
    println!();

    // Discrete orthogonality on the truncated lattice: float weights, and
    // the inner products <phi_i, phi_j> vanish to truncation accuracy.
    let pts = lattice(&params, 40);
    let bits = 256;
    let terms = 120;
    let table: Vec<(Scalar, Scalar)> = pts
        .iter()
        .map(|x| {
            let xf = x.to_float(bits);
            let w = weight(&xf, params.alpha(), params.beta(), &c, &d, terms, params.ctx())
                .unwrap();
            (xf, w)
        })
        .collect();
    let polys: Vec<_> = (0..=3)
        .map(|l| phi_univariate(l, params.alpha(), params.beta(), &c, &d, params.ctx()).unwrap())
        .collect();
    println!("discrete inner products over {} lattice points:", pts.len());
    for i in 0..polys.len() {
        for j in i..polys.len() {
            let mut acc = Scalar::zero().to_float(bits);
            for (x, w) in &table {
                let t = &polys[i].eval(x).unwrap() * &polys[j].eval(x).unwrap() * w;
                acc = acc + t;
            }
            println!("  <phi_{i}, phi_{j}> = {:.6e}", acc.to_f64());
        }
    }
}
