//! Self-contained verification suite: one function per library invariant,
//! each returning a pass/fail report with a short summary of what was
//! checked. The acceptance test target and the `verify` CLI subcommand both
//! drive these.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bigq::{
    phi_finite_norm, phi_limit_expansion, phi_limit_norm, phi_multivariate_det, rho, QParams,
};
use crate::error::Result;
use crate::interp::{
    h_norm, interp_combinatorial, interp_expansion, interp_poly_det, interp_poly_expansion,
    projection_consistency_check, SchurExpansion,
};
use crate::measure::{
    concentration_diagnostic, gram_andreief, gram_bruteforce, norm_convergence_study, Mode,
    TruncatedLattice,
};
use crate::partition::{enumerate_partitions, Partition};
use crate::qseries::{poch_diagram, QContext};
use crate::scalar::Scalar;

/// Outcome of one verification criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl std::fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:2} ({}): {} — {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

fn run(id: usize, name: &'static str, f: impl FnOnce() -> Result<String>) -> CriterionReport {
    match f() {
        Ok(details) => CriterionReport {
            id,
            name,
            passed: true,
            details,
        },
        Err(e) => CriterionReport {
            id,
            name,
            passed: false,
            details: e.to_string(),
        },
    }
}

fn fail(msg: String) -> crate::error::Error {
    crate::error::Error::Parse(msg)
}

fn ctx_at(num: i64, den: i64) -> QContext {
    QContext::new(Scalar::rat(num, den)).expect("valid q")
}

fn principal_params() -> QParams {
    QParams::classify(
        ctx_at(1, 2),
        Scalar::int(1),
        Scalar::int(-1),
        "1/5+1/7i".parse().unwrap(),
        "1/5-1/7i".parse().unwrap(),
    )
    .expect("principal fixture")
}

fn complementary_params() -> QParams {
    QParams::classify(
        ctx_at(1, 2),
        Scalar::int(1),
        Scalar::int(-1),
        Scalar::int(3),
        Scalar::rat(7, 2),
    )
    .expect("complementary fixture")
}

fn exceptional_params() -> QParams {
    QParams::classify(
        ctx_at(1, 2),
        Scalar::int(1),
        Scalar::int(-2),
        Scalar::zero(),
        Scalar::zero(),
    )
    .expect("exceptional fixture")
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Scalar {
    let mut num = 0i64;
    while num == 0 {
        num = rng.gen_range(-9..=9);
    }
    Scalar::rat(num, rng.gen_range(1..=9))
}

/// n pairwise-distinct random rationals avoiding the given values.
fn distinct_points(rng: &mut ChaCha8Rng, n: usize, avoid: &[Scalar]) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    while out.len() < n {
        let x = rand_rat(rng);
        if !out.contains(&x) && !avoid.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// The three closed-form expansions of smallest degree, as functions of q.
fn golden_expansions(ctx: &QContext) -> Vec<(Partition, SchurExpansion)> {
    let q = ctx.q();
    let one = Scalar::one();
    let mk = |top: &str, coeffs: Vec<(&str, Scalar)>| {
        let map = coeffs
            .into_iter()
            .map(|(p, v)| (p.parse().unwrap(), v))
            .collect();
        (top.parse().unwrap(), SchurExpansion::new(map, top.parse().unwrap()))
    };
    let d1 = &one - &q; // 1 - q
    let d2 = &one - &(&q * &q); // 1 - q^2
    vec![
        mk(
            "1",
            vec![("1", one.clone()), ("-", -(&one / &d1))],
        ),
        mk(
            "1,1",
            vec![
                ("1,1", one.clone()),
                ("1", -(&q / &d1)),
                ("-", &(&q * &q) / &(&d1 * &d2)),
            ],
        ),
        mk(
            "2",
            vec![
                ("2", one.clone()),
                ("1", -(&one / &(&q * &d1))),
                ("-", &one / &(&q * &(&d1 * &d2))),
            ],
        ),
    ]
}

/// Criterion 1: the three worked small-degree expansions hold exactly at
/// q = 1/2, 1/3, 2/5.
pub fn criterion_golden_expansions() -> CriterionReport {
    run(1, "golden expansions", || {
        let mut checked = 0usize;
        for (num, den) in [(1i64, 2i64), (1, 3), (2, 5)] {
            let ctx = ctx_at(num, den);
            for (mu, expect) in golden_expansions(&ctx) {
                let got = interp_expansion(&mu, &ctx);
                for (nu, v) in expect.iter() {
                    if got.coeff(nu) != *v {
                        return Err(fail(format!(
                            "I_{mu} at q={num}/{den}: coeff of S_{nu} is {} not {v}",
                            got.coeff(nu)
                        )));
                    }
                }
                if got.len() != expect.len() {
                    return Err(fail(format!("I_{mu}: extra terms at q={num}/{den}")));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} expansions exact"))
    })
}

/// Criterion 2: vanishing and extra vanishing — I_{mu|N} is exactly zero at
/// every node X_N(lambda) with lambda not containing mu.
pub fn criterion_vanishing() -> CriterionReport {
    criterion_vanishing_with(&ctx_at(1, 2), 4)
}

/// As [`criterion_vanishing`] with an explicit base and diagram-size bound.
pub fn criterion_vanishing_with(ctx: &QContext, max_size: usize) -> CriterionReport {
    let ctx = ctx.clone();
    run(2, "vanishing + extra vanishing", move || {
        let mus = enumerate_partitions(max_size);
        let lams = enumerate_partitions(6);
        let mut checked = 0usize;
        for mu in &mus {
            for lam in &lams {
                if lam.contains(mu) {
                    continue;
                }
                let n_min = mu.length().max(lam.length()).max(1);
                for n in n_min..=6 {
                    let xs = lam.node_vector(n, &ctx)?;
                    let v = interp_poly_det(mu, n, &xs, &ctx)?;
                    if !v.is_zero() {
                        return Err(fail(format!(
                            "I_{{{mu}|{n}}} at X_{n}({lam}) = {v}, expected 0"
                        )));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} exact zeros"))
    })
}

/// Criterion 3: normalization — I_{mu|N} at its own node equals H(mu;q),
/// independently of N.
pub fn criterion_normalization() -> CriterionReport {
    run(3, "normalization", || {
        let ctx = ctx_at(1, 2);
        let mut checked = 0usize;
        for mu in enumerate_partitions(4) {
            let h = h_norm(&mu, &ctx);
            for n in [mu.length().max(1), mu.length() + 2] {
                let xs = mu.node_vector(n, &ctx)?;
                let v = interp_poly_det(&mu, n, &xs, &ctx)?;
                if v != h {
                    return Err(fail(format!(
                        "I_{{{mu}|{n}}} at X_{n}({mu}) = {v}, expected H = {h}"
                    )));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} node values match H(mu;q)"))
    })
}

/// Criterion 4: the determinant, tableau-sum, and Schur-expansion forms of
/// I_{mu|N} agree exactly at random rational points.
pub fn criterion_three_way_agreement() -> CriterionReport {
    criterion_three_way_agreement_seeded(40)
}

/// As [`criterion_three_way_agreement`] with an explicit sweep seed.
pub fn criterion_three_way_agreement_seeded(seed: u64) -> CriterionReport {
    run(4, "three-way agreement", || {
        let ctx = ctx_at(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0usize;
        for mu in enumerate_partitions(4) {
            for n in mu.length().max(1)..=5 {
                let expansion = interp_poly_expansion(&mu, n, &ctx)?;
                for _ in 0..10 {
                    let xs = distinct_points(&mut rng, n, &[]);
                    let a = interp_poly_det(&mu, n, &xs, &ctx)?;
                    let b = interp_combinatorial(&mu, n, &xs, &ctx)?;
                    let c = expansion.eval(n, &xs)?;
                    if a != b || a != c {
                        return Err(fail(format!(
                            "I_{{{mu}|{n}}}: det {a}, tableau {b}, expansion {c}"
                        )));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} random evaluations, three forms each"))
    })
}

/// Criterion 5: setting x_N = q^{N-1} specializes I_{mu|N} to I_{mu|N-1}.
pub fn criterion_projective_consistency() -> CriterionReport {
    criterion_projective_consistency_seeded(50)
}

/// As [`criterion_projective_consistency`] with an explicit sweep seed.
pub fn criterion_projective_consistency_seeded(seed: u64) -> CriterionReport {
    run(5, "projective consistency", || {
        let ctx = ctx_at(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0usize;
        for mu in enumerate_partitions(4) {
            for n in (mu.length() + 1).max(1)..=6 {
                let avoid = [ctx.q_pow(n as i64 - 1)?];
                for _ in 0..3 {
                    let xs = distinct_points(&mut rng, n - 1, &avoid);
                    if !projection_consistency_check(&mu, n, &xs, &ctx)? {
                        return Err(fail(format!("projection failed for mu={mu}, N={n}")));
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} specializations exact"))
    })
}

/// Criterion 6: the N-variate determinant form of phi_{lambda|N} equals its
/// expansion sum_{mu in lambda} [(q^N;q)_lambda / (q^N;q)_mu] rho(lambda,mu)
/// I_{mu|N}(gamma X), exactly at random rational points.
pub fn criterion_expansion_consistency() -> CriterionReport {
    criterion_expansion_consistency_seeded(60)
}

/// As [`criterion_expansion_consistency`] with an explicit sweep seed.
pub fn criterion_expansion_consistency_seeded(seed: u64) -> CriterionReport {
    run(6, "expansion consistency", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0usize;
        for params in [principal_params(), complementary_params()] {
            let ctx = params.ctx().clone();
            for lam in enumerate_partitions(3) {
                for n in lam.length().max(1)..=3 {
                    let qn = ctx.q_pow(n as i64)?;
                    let poch_lam = poch_diagram(&qn, &lam, &ctx)?;
                    for _ in 0..3 {
                        let xs = distinct_points(&mut rng, n, &[]);
                        let lhs = phi_multivariate_det(&lam, n, &xs, &params)?;
                        let scaled: Vec<Scalar> = xs
                            .iter()
                            .map(|x| x.checked_mul(params.gamma()))
                            .collect::<Result<_>>()?;
                        let mut rhs = Scalar::zero().coerce_like(&lhs)?;
                        for mu in lam.subdiagrams() {
                            if mu.length() > n {
                                continue;
                            }
                            let r = rho(&lam, &mu, &params)?;
                            let pref = poch_lam
                                .checked_div(&poch_diagram(&qn, &mu, &ctx)?)?
                                .coerce_like(&r)?;
                            let i_val = interp_poly_det(&mu, n, &scaled, &ctx)?;
                            rhs = rhs.checked_add(
                                &pref.checked_mul(&r)?.checked_mul(&i_val)?,
                            )?;
                        }
                        let rhs = rhs.simplify();
                        if lhs != rhs {
                            return Err(fail(format!(
                                "phi_{{{lam}|{n}}} ({}): det {lhs} vs expansion {rhs}",
                                params.series()
                            )));
                        }
                        checked += 1;
                    }
                }
            }
        }
        Ok(format!("{checked} determinant-vs-expansion evaluations"))
    })
}

/// Criterion 7: orthogonality of the finite-N family under the configuration
/// measure in float mode — small off-diagonals, diagonals matching the
/// closed-form norm product.
pub fn criterion_orthogonality() -> CriterionReport {
    run(7, "orthogonality", || {
        let params = principal_params();
        let mode = Mode::float(256, 0.5, 1e-30);
        let mut max_off = 0.0f64;
        let mut max_diag = 0.0f64;
        for n in 1..=3usize {
            let lat = TruncatedLattice::auto(params.clone(), n, mode, 1e-14);
            let lams: Vec<Partition> = enumerate_partitions(3)
                .into_iter()
                .filter(|l| l.length() <= n)
                .collect();
            let g = gram_bruteforce(&lams, n, &lat)?;
            for a in 0..lams.len() {
                let closed = phi_finite_norm(&lams[a], n, &params)?.to_f64();
                let rel = ((g[a][a].to_f64() - closed) / closed).abs();
                max_diag = max_diag.max(rel);
                if rel > 1e-8 {
                    return Err(fail(format!(
                        "diagonal {} at N={n}: {} vs closed {closed} (rel {rel:e})",
                        lams[a],
                        g[a][a].to_f64()
                    )));
                }
                for b in 0..lams.len() {
                    if a == b {
                        continue;
                    }
                    let rel = g[a][b].abs_f64()
                        / (g[a][a].abs_f64() * g[b][b].abs_f64()).sqrt();
                    max_off = max_off.max(rel);
                    if rel > 1e-8 {
                        return Err(fail(format!(
                            "off-diagonal ({}, {}) at N={n}: rel {rel:e}",
                            lams[a], lams[b]
                        )));
                    }
                }
            }
        }
        Ok(format!(
            "max off-diagonal rel {max_off:.2e}, max diagonal rel err {max_diag:.2e}"
        ))
    })
}

/// Criterion 8: the Andreief cross-moment determinant reproduces the
/// brute-force configuration sum exactly in exact mode.
pub fn criterion_fast_path() -> CriterionReport {
    run(8, "Andreief fast path", || {
        let mode = Mode::Exact { terms: 24 };
        let mut checked = 0usize;
        for params in [principal_params(), complementary_params()] {
            for n in 1..=3usize {
                let lams: Vec<Partition> = enumerate_partitions(3)
                    .into_iter()
                    .filter(|l| l.length() <= n)
                    .collect();
                for k in [4usize, 8] {
                    let lat = TruncatedLattice::with_k(params.clone(), n, k, mode);
                    let brute = gram_bruteforce(&lams, n, &lat)?;
                    let fast = gram_andreief(&lams, n, &lat)?;
                    if brute != fast {
                        return Err(fail(format!(
                            "mismatch at N={n}, K={k}, {} series",
                            params.series()
                        )));
                    }
                    checked += lams.len() * lams.len();
                }
            }
        }
        Ok(format!("{checked} Gram entries identical"))
    })
}

/// Criterion 9: the finite-N norm converges to the limit norm geometrically,
/// with consecutive-error ratio within [q/2, 2q].
pub fn criterion_norm_limit() -> CriterionReport {
    run(9, "norm limit", || {
        let params = complementary_params();
        let q = params.ctx().q().to_f64();
        let mut checked = 0usize;
        for lam in ["1", "2", "1,1"] {
            let lam: Partition = lam.parse().unwrap();
            let rows = norm_convergence_study(&lam, 6..=12, &params)?;
            for (i, ratio) in crate::measure::error_ratios(&rows).iter().enumerate() {
                if !(q / 2.0..=2.0 * q).contains(ratio) {
                    return Err(fail(format!(
                        "lambda={lam}, N={}->{}: error ratio {ratio} outside [q/2, 2q]",
                        rows[i].n,
                        rows[i + 1].n
                    )));
                }
                checked += 1;
            }
        }
        Ok(format!("{checked} consecutive-error ratios in [q/2, 2q]"))
    })
}

/// Criterion 10: in the principal series every Schur coefficient of the
/// limit function is exactly real, and the top coefficient is exactly 1.
pub fn criterion_realness_unitriangularity() -> CriterionReport {
    run(10, "realness + unitriangularity", || {
        let params = principal_params();
        let mut checked = 0usize;
        for lam in enumerate_partitions(3) {
            let exp = phi_limit_expansion(&lam, &params)?;
            for (nu, v) in exp.schur.iter() {
                if !v.is_real() {
                    return Err(fail(format!(
                        "Phi_{lam}: coeff of S_{nu} = {v} is not real"
                    )));
                }
                checked += 1;
            }
            if !exp.schur.coeff(&lam).is_one() {
                return Err(fail(format!(
                    "Phi_{lam}: top coeff {} != 1",
                    exp.schur.coeff(&lam)
                )));
            }
        }
        Ok(format!("{checked} coefficients real, all tops exactly 1"))
    })
}

/// Criterion 11: with gamma = delta = 0 the concentration gap decreases over
/// N in {2, 4, 6} at K = 8, and the limit norm vanishes exactly for every
/// nonempty diagram.
pub fn criterion_exceptional_case() -> CriterionReport {
    run(11, "exceptional degeneration", || {
        let params = exceptional_params();
        let lat = TruncatedLattice::with_k(
            params.clone(),
            2,
            8,
            Mode::Float {
                bits: 128,
                terms: 80,
            },
        );
        let rows = concentration_diagnostic(&[2, 4, 6], &lat)?;
        for w in rows.windows(2) {
            if w[1].gap >= w[0].gap {
                return Err(fail(format!(
                    "gap did not decrease: N={} gap {} vs N={} gap {}",
                    w[0].n, w[0].gap, w[1].n, w[1].gap
                )));
            }
        }
        for lam in enumerate_partitions(3) {
            let norm = phi_limit_norm(&lam, &params)?;
            let expect_zero = !lam.is_empty();
            if expect_zero != norm.is_zero() {
                return Err(fail(format!("limit norm of {lam} is {norm}")));
            }
        }
        Ok(format!(
            "gaps {:.3e} > {:.3e} > {:.3e}; nonempty limit norms exactly 0",
            rows[0].gap, rows[1].gap, rows[2].gap
        ))
    })
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_golden_expansions(),
        criterion_vanishing(),
        criterion_normalization(),
        criterion_three_way_agreement(),
        criterion_projective_consistency(),
        criterion_expansion_consistency(),
        criterion_orthogonality(),
        criterion_fast_path(),
        criterion_norm_limit(),
        criterion_realness_unitriangularity(),
        criterion_exceptional_case(),
    ]
}
