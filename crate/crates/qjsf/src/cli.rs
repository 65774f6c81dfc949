//! Thin command-line front end over the library: every subcommand parses its
//! flags, validates parameter admissibility, echoes the classified series
//! tag, and emits exact rational strings (JSON/CSV/pretty) unless a float
//! mode is requested.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bigq::{
    phi_finite_norm, phi_limit_expansion, phi_limit_norm, phi_multivariate_det, rho, QParams,
};
use crate::error::{Error, Result};
use crate::interp::{h_norm, interp_expansion, interp_poly_det, sigma};
use crate::measure::{
    concentration_diagnostic, gram_andreief, gram_bruteforce, gram_csv, gram_json,
    norm_convergence_study, Mode, TruncatedLattice,
};
use crate::partition::{enumerate_partitions, Partition};
use crate::qseries::QContext;
use crate::scalar::Scalar;
use crate::verify;

#[derive(Copy, Clone, Debug, PartialEq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

/// Full parameter bundle (q, alpha, beta, gamma, delta); classification
/// against the admissibility clauses happens before any computation.
#[derive(Args, Clone, Debug)]
struct ParamArgs {
    /// Base q, exact rational strictly inside (0,1)
    #[arg(long, default_value = "1/2")]
    q: String,
    /// alpha > 0, exact rational
    #[arg(long, default_value = "1")]
    alpha: String,
    /// beta < 0, exact rational
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    beta: String,
    /// gamma: rational, or Gaussian rational like 1/5+1/7i
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    gamma: String,
    /// delta: rational, or the conjugate Gaussian rational
    #[arg(long, default_value = "7/2", allow_hyphen_values = true)]
    delta: String,
}

impl ParamArgs {
    fn build(&self) -> Result<QParams> {
        let ctx = QContext::new(self.q.parse()?)?;
        QParams::classify(
            ctx,
            self.alpha.parse()?,
            self.beta.parse()?,
            self.gamma.parse()?,
            self.delta.parse()?,
        )
    }
}

fn parse_partition(s: &str) -> Result<Partition> {
    s.parse()
}

#[derive(Parser, Debug)]
#[command(
    name = "qjsf",
    version,
    about = "Interpolation symmetric functions and big q-Jacobi limits, in exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Transition coefficient sigma(mu, nu; q) between I_mu and the Schur basis
    Sigma {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Schur expansion of the interpolation function I_mu
    Interp {
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Normalization constant H(mu; q): the value of I_mu at its own node
    Hnorm {
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Evaluate I_{mu|N} at explicit points (repeat --x once per coordinate)
    Eval {
        #[arg(long)]
        mu: String,
        #[arg(long, short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: Vec<String>,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Transition coefficient rho(lambda, mu) of Phi_lambda on the I basis
    Rho {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Limit function Phi_lambda (expansion), or its finite-N evaluation
    /// when --N and --x are given
    Phi {
        #[arg(long)]
        lambda: String,
        #[arg(long, short = 'N')]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x: Vec<String>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Squared norm of Phi_lambda (limit), or of phi_{lambda|N} when --N is given
    Phinorm {
        #[arg(long)]
        lambda: String,
        #[arg(long, short = 'N')]
        n: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Pretty)]
        format: Format,
    },
    /// Gram matrix of the finite-N family on the truncated lattice
    Gram {
        #[arg(long, short = 'N')]
        n: usize,
        /// Truncation index; default: smallest K with tail ratio < tail-tol
        #[arg(long, short = 'K')]
        k: Option<usize>,
        /// Include every partition with size up to this bound
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        /// Float mode (default: exact rational, truncated-product weights)
        #[arg(long)]
        float: bool,
        /// Working precision in bits for float mode
        #[arg(long, default_value_t = 256)]
        precision: usize,
        /// Tail-ratio tolerance for the automatic truncation rule
        #[arg(long, default_value_t = 1e-14)]
        tail_tol: f64,
        /// Use the Andreief cross-moment determinant fast path
        #[arg(long)]
        fast: bool,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Finite-N vs limit norm convergence table
    Converge {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 6)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exceptional-series concentration diagnostic (requires gamma = delta = 0)
    Concentrate {
        /// Values of N to diagnose (repeatable)
        #[arg(long, short = 'N', default_values_t = [2usize, 4, 6])]
        n: Vec<usize>,
        #[arg(long, short = 'K', default_value_t = 8)]
        k: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the verification suites (the acceptance entry point)
    Verify {
        /// One of: golden, vanishing, normalization, agreement, projection,
        /// expansion, orthogonality, fastpath, normlimit, realness,
        /// exceptional, all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the random property sweeps
        #[arg(long)]
        seed: Option<u64>,
        /// Diagram-size bound for the vanishing sweep
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Base q for the vanishing sweep
        #[arg(long, default_value = "1/2")]
        q: String,
    },
}

fn scalar_json(v: &Scalar) -> serde_json::Value {
    json!(v.to_string())
}

fn emit_value(tag: &str, v: &Scalar, extra: serde_json::Value, format: Format) {
    match format {
        Format::Pretty => println!("{tag} = {v}"),
        Format::Json | Format::Csv => {
            let mut obj = extra;
            obj["value"] = scalar_json(v);
            println!("{obj}");
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Sigma { mu, nu, q, format } => {
            let ctx = QContext::new(q.parse()?)?;
            let mu = parse_partition(&mu)?;
            let nu = parse_partition(&nu)?;
            let v = sigma(&mu, &nu, &ctx);
            emit_value(
                &format!("sigma({mu}; {nu})"),
                &v,
                json!({"mu": mu.to_string(), "nu": nu.to_string(), "q": ctx.q().to_string()}),
                format,
            );
        }
        Cmd::Interp { mu, q, format } => {
            let ctx = QContext::new(q.parse()?)?;
            let mu = parse_partition(&mu)?;
            let exp = interp_expansion(&mu, &ctx);
            match format {
                Format::Json | Format::Csv => println!("{}", exp.to_json()),
                Format::Pretty => {
                    println!("I_{mu} at q = {}:", ctx.q());
                    for (nu, c) in exp.iter() {
                        println!("  S_{nu}: {c}");
                    }
                }
            }
        }
        Cmd::Hnorm { mu, q, format } => {
            let ctx = QContext::new(q.parse()?)?;
            let mu = parse_partition(&mu)?;
            let v = h_norm(&mu, &ctx);
            emit_value(
                &format!("H({mu})"),
                &v,
                json!({"mu": mu.to_string(), "q": ctx.q().to_string()}),
                format,
            );
        }
        Cmd::Eval {
            mu,
            n,
            x,
            q,
            format,
        } => {
            let ctx = QContext::new(q.parse()?)?;
            let mu = parse_partition(&mu)?;
            let xs: Vec<Scalar> = x.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let v = interp_poly_det(&mu, n, &xs, &ctx)?;
            emit_value(
                &format!("I_{{{mu}|{n}}}(x)"),
                &v,
                json!({"mu": mu.to_string(), "N": n, "q": ctx.q().to_string()}),
                format,
            );
        }
        Cmd::Rho {
            lambda,
            mu,
            params,
            format,
        } => {
            let params = params.build()?;
            let lam = parse_partition(&lambda)?;
            let mu = parse_partition(&mu)?;
            let v = rho(&lam, &mu, &params)?;
            emit_value(
                &format!("rho({lam}; {mu}) [{} series]", params.series()),
                &v,
                json!({"lambda": lam.to_string(), "mu": mu.to_string(),
                       "params": params.echo_json()}),
                format,
            );
        }
        Cmd::Phi {
            lambda,
            n,
            x,
            params,
            format,
        } => {
            let params = params.build()?;
            let lam = parse_partition(&lambda)?;
            match n {
                Some(n) => {
                    let xs: Vec<Scalar> = x.iter().map(|s| s.parse()).collect::<Result<_>>()?;
                    let v = phi_multivariate_det(&lam, n, &xs, &params)?;
                    emit_value(
                        &format!("phi_{{{lam}|{n}}}(x) [{} series]", params.series()),
                        &v,
                        json!({"lambda": lam.to_string(), "N": n,
                               "params": params.echo_json()}),
                        format,
                    );
                }
                None => {
                    let exp = phi_limit_expansion(&lam, &params)?;
                    match format {
                        Format::Json | Format::Csv => println!("{}", exp.to_json(&params)),
                        Format::Pretty => {
                            println!("Phi_{lam} [{} series]:", params.series());
                            for (nu, c) in exp.schur.iter() {
                                println!("  S_{nu}: {c}");
                            }
                        }
                    }
                }
            }
        }
        Cmd::Phinorm {
            lambda,
            n,
            params,
            format,
        } => {
            let params = params.build()?;
            let lam = parse_partition(&lambda)?;
            let (tag, v) = match n {
                Some(n) => (
                    format!("|phi_{{{lam}|{n}}}|^2"),
                    phi_finite_norm(&lam, n, &params)?,
                ),
                None => (format!("|Phi_{lam}|^2"), phi_limit_norm(&lam, &params)?),
            };
            emit_value(
                &format!("{tag} [{} series]", params.series()),
                &v,
                json!({"lambda": lam.to_string(), "N": n, "params": params.echo_json()}),
                format,
            );
        }
        Cmd::Gram {
            n,
            k,
            max_size,
            float,
            precision,
            tail_tol,
            fast,
            params,
            format,
        } => {
            let params = params.build()?;
            let mode = if float {
                Mode::float(precision, params.ctx().q().to_f64(), 1e-30)
            } else {
                Mode::exact()
            };
            let lat = match k {
                Some(k) => TruncatedLattice::with_k(params.clone(), n, k, mode),
                None => TruncatedLattice::auto(params.clone(), n, mode, tail_tol),
            };
            let lams: Vec<Partition> = enumerate_partitions(max_size)
                .into_iter()
                .filter(|l| l.length() <= n)
                .collect();
            let g = if fast {
                gram_andreief(&lams, n, &lat)?
            } else {
                gram_bruteforce(&lams, n, &lat)?
            };
            match format {
                Format::Json => println!("{}", gram_json(&lams, &g, lat.tail_bound())),
                Format::Csv | Format::Pretty => {
                    print!("{}", gram_csv(&lams, &g, lat.tail_bound()))
                }
            }
        }
        Cmd::Converge {
            lambda,
            n_min,
            n_max,
            params,
            format,
        } => {
            let params = params.build()?;
            let lam = parse_partition(&lambda)?;
            let rows = norm_convergence_study(&lam, n_min..=n_max, &params)?;
            match format {
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({"N": r.n, "finite": r.finite.to_string(),
                                   "limit": r.limit.to_string(), "rel_error": r.rel_error})
                        })
                        .collect();
                    println!("{}", json!({"lambda": lam.to_string(), "rows": rows}));
                }
                Format::Csv | Format::Pretty => {
                    println!("n,finite,limit,rel_error");
                    for r in &rows {
                        println!("{},{},{},{:e}", r.n, r.finite, r.limit, r.rel_error);
                    }
                }
            }
        }
        Cmd::Concentrate {
            n,
            k,
            params,
            format,
        } => {
            let params = params.build()?;
            let lat = TruncatedLattice::with_k(
                params,
                *n.iter().max().unwrap_or(&1),
                k,
                Mode::Float {
                    bits: 128,
                    terms: 80,
                },
            );
            let rows = concentration_diagnostic(&n, &lat)?;
            match format {
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({"N": r.n, "expected_sum": r.expected_sum,
                                   "outer_sum": r.outer_sum, "gap": r.gap,
                                   "most_probable": r.most_probable.iter()
                                       .map(|x| x.to_string()).collect::<Vec<_>>()})
                        })
                        .collect();
                    println!("{}", json!({"rows": rows}));
                }
                Format::Csv | Format::Pretty => {
                    println!("n,expected_sum,outer_sum,gap");
                    for r in &rows {
                        println!("{},{},{},{:e}", r.n, r.expected_sum, r.outer_sum, r.gap);
                    }
                }
            }
        }
        Cmd::Verify {
            suite,
            seed,
            max_size,
            q,
        } => {
            let reports = match suite.as_str() {
                "all" => verify::run_all(),
                "golden" => vec![verify::criterion_golden_expansions()],
                "vanishing" => vec![verify::criterion_vanishing_with(
                    &QContext::new(q.parse()?)?,
                    max_size,
                )],
                "normalization" => vec![verify::criterion_normalization()],
                "agreement" => vec![verify::criterion_three_way_agreement_seeded(
                    seed.unwrap_or(40),
                )],
                "projection" => vec![verify::criterion_projective_consistency_seeded(
                    seed.unwrap_or(50),
                )],
                "expansion" => vec![verify::criterion_expansion_consistency_seeded(
                    seed.unwrap_or(60),
                )],
                "orthogonality" => vec![verify::criterion_orthogonality()],
                "fastpath" => vec![verify::criterion_fast_path()],
                "normlimit" => vec![verify::criterion_norm_limit()],
                "realness" => vec![verify::criterion_realness_unitriangularity()],
                "exceptional" => vec![verify::criterion_exceptional_case()],
                other => {
                    return Err(Error::Parse(format!("unknown suite '{other}'")));
                }
            };
            let mut failed = 0usize;
            for r in &reports {
                println!("{r}");
                if !r.passed {
                    failed += 1;
                }
            }
            if failed > 0 {
                eprintln!("{failed} of {} suites failed", reports.len());
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Parse argv, run, and exit: 0 on success, 2 on inadmissible parameters,
/// 1 on any other error.
pub fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e @ Error::InadmissibleParameters(_)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    std::process::exit(code);
}
