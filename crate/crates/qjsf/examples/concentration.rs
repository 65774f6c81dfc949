//! The exceptional degeneration gamma = delta = 0: the configuration
//! measures concentrate on the dense packing of the lattice as N grows. The
//! diagnostic compares the mean of the sum of points against the sum of the
//! N outermost truncated-lattice points, and reports the most probable
//! configuration.
//!
//!     cargo run --release --example concentration

use qjsf::bigq::QParams;
use qjsf::measure::{concentration_diagnostic, Mode, TruncatedLattice};
use qjsf::qseries::QContext;
use qjsf::Scalar;

fn main() {
    let ctx = QContext::new(Scalar::rat(1, 2)).unwrap();
    let params = QParams::classify(
        ctx,
        Scalar::int(1),
        Scalar::int(-2),
        Scalar::zero(),
        Scalar::zero(),
    )
    .unwrap();
    println!("series: {}", params.series());

    let lat = TruncatedLattice::with_k(
        params,
        6,
        8,
        Mode::Float {
            bits: 128,
            terms: 80,
        },
    );
    let rows = concentration_diagnostic(&[2, 4, 6], &lat).unwrap();
    println!("K = {} ({} lattice points)", lat.k(), lat.points().len());
    println!();
    println!("{:>3} {:>14} {:>14} {:>12}", "N", "E[sum x_i]", "outer sum", "gap");
    for r in &rows {
        println!(
            "{:>3} {:>14.8} {:>14.8} {:>12.3e}",
            r.n, r.expected_sum, r.outer_sum, r.gap
        );
    }
    println!();
    println!("the gap shrinks monotonically as N grows;");
    println!("most probable configuration at N = 6:");
    let labels: Vec<String> = rows
        .last()
        .unwrap()
        .most_probable
        .iter()
        .map(|x| x.to_string())
        .collect();
    println!("  {{{}}}", labels.join(", "));
}
