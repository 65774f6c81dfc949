//! The finite-N squared norms converge to the limit norm geometrically in N;
//! the consecutive-error ratio tracks q.
//!
//!     cargo run --example norm_convergence

use qjsf::bigq::QParams;
use qjsf::measure::{error_ratios, norm_convergence_study};
use qjsf::partition::Partition;
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

    for lam in ["1", "2", "1,1"] {
        let lam: Partition = lam.parse().unwrap();
        let rows = norm_convergence_study(&lam, 4..=12, &params).unwrap();
        println!("lambda = {lam}  (limit = {})", rows[0].limit);
        println!("  {:>3} {:>24} {:>12}", "N", "finite norm", "rel error");
        for r in &rows {
            println!("  {:>3} {:>24.16e} {:>12.3e}", r.n, r.finite.to_f64(), r.rel_error);
        }
        let ratios: Vec<String> = error_ratios(&rows)
            .iter()
            .map(|r| format!("{r:.3}"))
            .collect();
        println!("  consecutive error ratios (~ q = 0.5): {}", ratios.join(", "));
        println!();
    }
}
