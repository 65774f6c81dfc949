//! Finite-N q-beta ensembles on truncated two-sided q-lattices: configuration
//! weights, normalization, Gram matrices (brute force over configurations and
//! the determinant fast path), norm-convergence and concentration diagnostics.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::bigq::{
    lattice, phi_finite_norm, phi_limit_norm, phi_univariate, weight, QParams, SeriesTag,
    UnivariatePoly,
};
use crate::error::{Error, Result};
use crate::interp::vandermonde;
use crate::partition::Partition;
use crate::scalar::Scalar;

/// Arithmetic mode for lattice sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// Exact rational weights from a truncated product with the given number
    /// of factors per Pochhammer. Ratios of sums are exact for a fixed table.
    Exact { terms: usize },
    /// Arbitrary-precision floats; `terms` chosen so the omitted product tail
    /// is far below the working tolerance.
    Float { bits: usize, terms: usize },
}

impl Mode {
    pub fn exact() -> Mode {
        Mode::Exact { terms: 48 }
    }

    /// Float mode with enough product terms that the truncated-tail ratio of
    /// the weight products is below `tail_tol`.
    pub fn float(bits: usize, q: f64, tail_tol: f64) -> Mode {
        let terms = (tail_tol.ln() / q.ln()).ceil() as usize + 8;
        Mode::Float { bits, terms }
    }
}

/// A finite window of the lattice: the 2K innermost points.
#[derive(Clone, Debug)]
pub struct TruncatedLattice {
    params: QParams,
    k: usize,
    points: Vec<Scalar>,
    /// Estimated single-point weight ratio of the first omitted points
    /// relative to the heaviest kept point.
    tail_bound: f64,
    mode: Mode,
}

/// f64 estimate of the univariate weight at lattice point x.
fn weight_f64(x: f64, a: f64, b: f64, c: f64, d: f64, q: f64) -> f64 {
    let mut acc = x.abs();
    let mut qi = 1.0;
    for _ in 0..240 {
        acc *= (1.0 - a * x * qi) * (1.0 - b * x * qi)
            / ((1.0 - c * x * qi) * (1.0 - d * x * qi));
        qi *= q;
    }
    acc
}

impl TruncatedLattice {
    pub fn with_k(params: QParams, n: usize, k: usize, mode: Mode) -> Self {
        let points = lattice(&params, k);
        let tail_bound = Self::tail_ratio(&params, n, k);
        TruncatedLattice {
            params,
            k,
            points,
            tail_bound,
            mode,
        }
    }

    /// Smallest K whose single-point tail weight ratio is below `tol`.
    pub fn auto(params: QParams, n: usize, mode: Mode, tol: f64) -> Self {
        let mut k = 4;
        while Self::tail_ratio(&params, n, k) >= tol && k < 512 {
            k += 4;
        }
        Self::with_k(params, n, k, mode)
    }

    fn tail_ratio(params: &QParams, n: usize, k: usize) -> f64 {
        let q = params.ctx().q().to_f64();
        let (c, d) = params.finite_n_cd(n.max(1));
        let (a, b) = (params.alpha().to_f64(), params.beta().to_f64());
        let (cf, df) = if c.is_real() {
            (c.to_f64(), d.to_f64())
        } else {
            // principal series: fold the conjugate pair into a real quadratic
            // per factor; for the tail estimate the modulus is what matters
            (c.abs_f64(), c.abs_f64())
        };
        let mut kept_max: f64 = 0.0;
        for anchor in [1.0 / a, 1.0 / b] {
            for j in 1..=k {
                let x = anchor * q.powi(j as i32);
                kept_max = kept_max.max(weight_f64(x, a, b, cf, df, q).abs());
            }
        }
        let mut tail_max: f64 = 0.0;
        for anchor in [1.0 / a, 1.0 / b] {
            for j in (k + 1)..=(k + 24) {
                let x = anchor * q.powi(j as i32);
                tail_max = tail_max.max(weight_f64(x, a, b, cf, df, q).abs());
            }
        }
        if kept_max == 0.0 {
            1.0
        } else {
            tail_max / kept_max
        }
    }

    pub fn params(&self) -> &QParams {
        &self.params
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    fn point_in_mode(&self, i: usize) -> Scalar {
        match self.mode {
            Mode::Exact { .. } => self.points[i].clone(),
            Mode::Float { bits, .. } => self.points[i].to_float(bits),
        }
    }

    /// Per-point univariate weights for the N-dependent parameters
    /// (alpha, beta, gamma q^{1-N}, delta q^{1-N}), in the lattice mode.
    pub fn weight_table(&self, n: usize) -> Result<Vec<Scalar>> {
        let (c, d) = self.params.finite_n_cd(n);
        let terms = match self.mode {
            Mode::Exact { terms } | Mode::Float { terms, .. } => terms,
        };
        (0..self.points.len())
            .map(|i| {
                let x = self.point_in_mode(i);
                weight(
                    &x,
                    self.params.alpha(),
                    self.params.beta(),
                    &c,
                    &d,
                    terms,
                    self.params.ctx(),
                )
            })
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
    }
    acc
}

/// Enumeration guard: the number of configurations must not exceed the cap
/// (QJSF_MAX_CONFIGS, default 5_000_000) or an explicit override.
fn config_guard(count: u128, cap: Option<u128>) -> Result<()> {
    let cap = cap.unwrap_or_else(|| {
        std::env::var("QJSF_MAX_CONFIGS")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(5_000_000)
    });
    if count > cap {
        Err(Error::TooManyConfigurations(count))
    } else {
        Ok(())
    }
}

/// Visit all N-subsets of 0..m in lexicographic order.
fn for_each_combination(m: usize, n: usize, mut f: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if n > m {
        return Ok(());
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        f(&idx)?;
        // advance
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] != i + m - n {
                break;
            }
            if i == 0 {
                return Ok(());
            }
        }
        idx[i] += 1;
        for j in i + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Cofactor-expansion determinant for the small matrices that arise here
/// (the enumeration guard caps N well below where elimination would win).
fn det_small(m: &[Vec<Scalar>]) -> Result<Scalar> {
    match m.len() {
        0 => Ok(Scalar::one()),
        1 => Ok(m[0][0].clone()),
        2 => m[0][0]
            .checked_mul(&m[1][1])?
            .checked_sub(&m[0][1].checked_mul(&m[1][0])?),
        n => {
            let mut acc = Scalar::zero().coerce_like(&m[0][0])?;
            for j in 0..n {
                let minor: Vec<Vec<Scalar>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].checked_mul(&det_small(&minor)?)?;
                acc = if j % 2 == 0 {
                    acc.checked_add(&term)?
                } else {
                    acc.checked_sub(&term)?
                };
            }
            Ok(acc)
        }
    }
}

/// Unnormalized weight of an N-point configuration:
/// prod_i W(x_i; alpha, beta, gamma q^{1-N}, delta q^{1-N}) * prod_{i<j} (x_i - x_j)^2.
pub fn config_weight(xs: &[Scalar], n: usize, lat: &TruncatedLattice) -> Result<Scalar> {
    assert_eq!(xs.len(), n);
    let (c, d) = lat.params().finite_n_cd(n);
    let terms = match lat.mode() {
        Mode::Exact { terms } | Mode::Float { terms, .. } => terms,
    };
    let mut acc = Scalar::one();
    for x in xs {
        let w = weight(
            x,
            lat.params().alpha(),
            lat.params().beta(),
            &c,
            &d,
            terms,
            lat.params().ctx(),
        )?;
        acc = acc.coerce_like(&w)?.checked_mul(&w)?;
    }
    if n > 1 {
        let v = vandermonde(xs)?;
        acc = acc.checked_mul(&v.checked_mul(&v)?.coerce_like(&acc)?)?;
    }
    Ok(acc)
}

/// The normalization constant: the sum of config_weight over all C(2K, N)
/// configurations of the truncated lattice.
pub fn normalize(lat: &TruncatedLattice, n: usize) -> Result<Scalar> {
    if n == 0 {
        return Ok(Scalar::one());
    }
    let m = lat.points().len();
    config_guard(binomial(m, n), None)?;
    let weights = lat.weight_table(n)?;
    let points: Vec<Scalar> = (0..m).map(|i| lat.point_in_mode(i)).collect();
    let mut total = Scalar::zero().coerce_like(&weights[0])?;
    for_each_combination(m, n, |idx| {
        let mut w = Scalar::one().coerce_like(&weights[0])?;
        for &i in idx {
            w = w.checked_mul(&weights[i])?;
        }
        if n > 1 {
            let xs: Vec<Scalar> = idx.iter().map(|&i| points[i].clone()).collect();
            let v = vandermonde(&xs)?;
            w = w.checked_mul(&v.checked_mul(&v)?.coerce_like(&w)?)?;
        }
        total = total.checked_add(&w)?;
        Ok(())
    })?;
    Ok(total)
}

/// Values phi_m(x_i) for every required degree m, indexed [degree][point].
struct PhiTable {
    values: Vec<Vec<Scalar>>,
}

impl PhiTable {
    fn build(lams: &[Partition], n: usize, lat: &TruncatedLattice) -> Result<PhiTable> {
        let mut degrees: BTreeSet<usize> = BTreeSet::new();
        for lam in lams.iter().chain(std::iter::once(&Partition::empty())) {
            for i in 1..=n {
                degrees.insert(lam.part(i) + n - i);
            }
        }
        let max_deg = degrees.iter().max().copied().unwrap_or(0);
        let (c, d) = lat.params().finite_n_cd(n);
        let mut values = vec![Vec::new(); max_deg + 1];
        let points: Vec<Scalar> = (0..lat.points().len())
            .map(|i| lat.point_in_mode(i))
            .collect();
        for &m in &degrees {
            let poly: UnivariatePoly = phi_univariate(
                m,
                lat.params().alpha(),
                lat.params().beta(),
                &c,
                &d,
                lat.params().ctx(),
            )?;
            values[m] = points
                .iter()
                .map(|x| Ok(poly.eval(x)?.simplify()))
                .collect::<Result<_>>()?;
        }
        Ok(PhiTable { values })
    }

    /// det[phi_{lam_i + n - i}(x at idx_j)].
    fn config_det(&self, lam: &Partition, n: usize, idx: &[usize]) -> Result<Scalar> {
        let m: Vec<Vec<Scalar>> = (1..=n)
            .map(|i| {
                let deg = lam.part(i) + n - i;
                idx.iter().map(|&j| self.values[deg][j].clone()).collect()
            })
            .collect();
        det_small(&m)
    }
}

fn check_lengths(lams: &[Partition], n: usize) -> Result<()> {
    for lam in lams {
        if lam.length() > n {
            return Err(Error::NTooSmall {
                given: n,
                needed: lam.length(),
            });
        }
    }
    Ok(())
}

/// Normalized Gram matrix G[a][b] = <phi_{lams[a]|N}, phi_{lams[b]|N}> under
/// the configuration measure, by direct summation over all configurations.
///
/// The Vandermonde-squared factor of the measure cancels against the two
/// denominators of the polynomial ratios, so each term is
/// prod w(x_i) * det_a * det_b, normalized by the (empty, empty) sum.
pub fn gram_bruteforce(
    lams: &[Partition],
    n: usize,
    lat: &TruncatedLattice,
) -> Result<Vec<Vec<Scalar>>> {
    check_lengths(lams, n)?;
    let m = lat.points().len();
    config_guard(binomial(m, n), None)?;
    let weights = lat.weight_table(n)?;
    let table = PhiTable::build(lams, n, lat)?;
    let zero = Scalar::zero().coerce_like(&weights[0])?;
    let mut sums = vec![vec![zero.clone(); lams.len()]; lams.len()];
    let mut norm = zero.clone();
    for_each_combination(m, n, |idx| {
        let mut w = Scalar::one().coerce_like(&weights[0])?;
        for &i in idx {
            w = w.checked_mul(&weights[i])?;
        }
        let dets: Vec<Scalar> = lams
            .iter()
            .map(|lam| table.config_det(lam, n, idx))
            .collect::<Result<_>>()?;
        let empty_det = table.config_det(&Partition::empty(), n, idx)?;
        norm = norm.checked_add(&w.checked_mul(&empty_det.checked_mul(&empty_det)?)?)?;
        for a in 0..lams.len() {
            for b in a..lams.len() {
                let t = w.checked_mul(&dets[a].checked_mul(&dets[b])?)?;
                sums[a][b] = sums[a][b].checked_add(&t)?;
            }
        }
        Ok(())
    })?;
    let mut g = vec![vec![zero; lams.len()]; lams.len()];
    for a in 0..lams.len() {
        for b in a..lams.len() {
            let v = sums[a][b].checked_div(&norm)?.simplify();
            g[a][b] = v.clone();
            g[b][a] = v;
        }
    }
    Ok(g)
}

/// The determinant fast path: by the discrete Andreief/Cauchy-Binet identity,
/// sum over N-subsets of prod w(x) det[f_i(x_j)] det[g_k(x_j)]
///   = det[ sum_x w(x) f_i(x) g_k(x) ],
/// so each Gram entry is an N x N determinant of univariate cross-moments,
/// normalized by the (empty, empty) case. Identical to [`gram_bruteforce`]
/// (exactly so in exact mode); validated against it wholesale.
pub fn gram_andreief(
    lams: &[Partition],
    n: usize,
    lat: &TruncatedLattice,
) -> Result<Vec<Vec<Scalar>>> {
    check_lengths(lams, n)?;
    let weights = lat.weight_table(n)?;
    let table = PhiTable::build(lams, n, lat)?;
    let npts = lat.points().len();
    let cross = |da: usize, db: usize| -> Result<Scalar> {
        let mut acc = Scalar::zero().coerce_like(&weights[0])?;
        for i in 0..npts {
            let t = weights[i]
                .checked_mul(&table.values[da][i])?
                .checked_mul(&table.values[db][i])?;
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    };
    let moment_det = |la: &Partition, lb: &Partition| -> Result<Scalar> {
        let m: Vec<Vec<Scalar>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|k| cross(la.part(i) + n - i, lb.part(k) + n - k))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        det_small(&m)
    };
    let empty = Partition::empty();
    let norm = moment_det(&empty, &empty)?;
    let zero = Scalar::zero().coerce_like(&norm)?;
    let mut g = vec![vec![zero; lams.len()]; lams.len()];
    for a in 0..lams.len() {
        for b in a..lams.len() {
            let v = moment_det(&lams[a], &lams[b])?
                .checked_div(&norm)?
                .simplify();
            g[a][b] = v.clone();
            g[b][a] = v;
        }
    }
    Ok(g)
}

/// One row of the finite-N vs limit norm comparison.
#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub n: usize,
    pub finite: Scalar,
    pub limit: Scalar,
    pub rel_error: f64,
}

/// Closed-form finite-N norms against the closed-form limit norm, with
/// relative errors for each N in the range.
pub fn norm_convergence_study(
    lam: &Partition,
    n_range: std::ops::RangeInclusive<usize>,
    params: &QParams,
) -> Result<Vec<ConvergenceRow>> {
    let limit = phi_limit_norm(lam, params)?;
    let lf = limit.to_f64();
    let mut rows = Vec::new();
    for n in n_range {
        if n < lam.length() {
            continue;
        }
        let finite = phi_finite_norm(lam, n, params)?;
        let rel_error = if lf == 0.0 {
            finite.to_f64().abs()
        } else {
            ((finite.to_f64() - lf) / lf).abs()
        };
        rows.push(ConvergenceRow {
            n,
            finite,
            limit: limit.clone(),
            rel_error,
        });
    }
    Ok(rows)
}

/// Consecutive rel_error ratios of a study table.
pub fn error_ratios(rows: &[ConvergenceRow]) -> Vec<f64> {
    rows.windows(2)
        .map(|w| {
            if w[0].rel_error == 0.0 {
                0.0
            } else {
                w[1].rel_error / w[0].rel_error
            }
        })
        .collect()
}

/// One row of the exceptional-series concentration diagnostic.
#[derive(Clone, Debug)]
pub struct ConcentrationRow {
    pub n: usize,
    /// <M_N, S_(1)>: the mean of the sum of the configuration points.
    pub expected_sum: f64,
    /// Sum of the N outermost (largest-|x|) truncated-lattice points.
    pub outer_sum: f64,
    /// |outer_sum - expected_sum|.
    pub gap: f64,
    /// The single most probable configuration under M_N.
    pub most_probable: Vec<Scalar>,
}

/// For gamma = delta = 0, the measure concentrates on densely packed
/// configurations as N grows; the gap between the mean of S_(1) and the sum
/// of the N outermost points shrinks. Reported as a diagnostic, not a
/// theorem-level assertion.
pub fn concentration_diagnostic(
    ns: &[usize],
    lat: &TruncatedLattice,
) -> Result<Vec<ConcentrationRow>> {
    if lat.params().series() != SeriesTag::Exceptional {
        return Err(Error::InadmissibleParameters(
            "concentration diagnostic requires gamma = delta = 0".into(),
        ));
    }
    let m = lat.points().len();
    let mut rows = Vec::new();
    for &n in ns {
        config_guard(binomial(m, n), None)?;
        // gamma = delta = 0 makes the weight table N-independent
        let weights = lat.weight_table(n)?;
        let points: Vec<Scalar> = (0..m).map(|i| lat.point_in_mode(i)).collect();
        let mut total = 0.0f64;
        let mut sum_mean = 0.0f64;
        let mut best = (f64::NEG_INFINITY, Vec::new());
        for_each_combination(m, n, |idx| {
            let mut w = Scalar::one().coerce_like(&weights[0])?;
            for &i in idx {
                w = w.checked_mul(&weights[i])?;
            }
            if n > 1 {
                let xs: Vec<Scalar> = idx.iter().map(|&i| points[i].clone()).collect();
                let v = vandermonde(&xs)?;
                w = w.checked_mul(&v.checked_mul(&v)?.coerce_like(&w)?)?;
            }
            let wf = w.to_f64();
            let s1: f64 = idx.iter().map(|&i| points[i].to_f64()).sum();
            total += wf;
            sum_mean += wf * s1;
            if wf > best.0 {
                best = (wf, idx.to_vec());
            }
            Ok(())
        })?;
        let expected_sum = sum_mean / total;
        let mut by_abs: Vec<&Scalar> = lat.points().iter().collect();
        by_abs.sort_by(|a, b| {
            b.abs_f64()
                .partial_cmp(&a.abs_f64())
                .expect("finite lattice points")
        });
        let outer_sum: f64 = by_abs.iter().take(n).map(|x| x.to_f64()).sum();
        rows.push(ConcentrationRow {
            n,
            expected_sum,
            outer_sum,
            gap: (outer_sum - expected_sum).abs(),
            most_probable: best.1.iter().map(|&i| lat.points()[i].clone()).collect(),
        });
    }
    Ok(rows)
}

/// CSV emission for a Gram matrix: lambda, mu, value_re, value_im, tail_bound.
pub fn gram_csv(lams: &[Partition], g: &[Vec<Scalar>], tail_bound: f64) -> String {
    let mut out = String::from("lambda,mu,value_re,value_im,tail_bound\n");
    for (a, la) in lams.iter().enumerate() {
        for (b, lb) in lams.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{:e}\n",
                la,
                lb,
                g[a][b].re(),
                g[a][b].im(),
                tail_bound
            ));
        }
    }
    out
}

/// JSON emission for a Gram matrix.
pub fn gram_json(lams: &[Partition], g: &[Vec<Scalar>], tail_bound: f64) -> Value {
    let entries: Vec<Value> = lams
        .iter()
        .enumerate()
        .flat_map(|(a, la)| {
            let g = &g;
            lams.iter().enumerate().map(move |(b, lb)| {
                json!({
                    "lambda": la.to_string(),
                    "mu": lb.to_string(),
                    "value": g[a][b].to_string(),
                })
            })
        })
        .collect();
    json!({"entries": entries, "tail_bound": tail_bound})
}
