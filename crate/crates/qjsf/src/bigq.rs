//! Big q-Jacobi polynomials on the two-sided q-lattice, admissibility
//! classification, the coefficients rho, the limit functions Phi_lambda,
//! and the closed-form univariate and multivariate norms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::interp::{sigma, vandermonde, SchurExpansion};
use crate::partition::Partition;
use crate::qseries::{poch, poch_diagram, QContext};
use crate::scalar::{det, Rat, Scalar};

/// Which branch of the admissible parameter range (gamma, delta) falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesTag {
    /// gamma = conj(delta), not real.
    Principal,
    /// gamma, delta real, nonzero, same sign, sharing one open interval of
    /// the doubly infinite sequence
    /// ... < beta q^{-2} < beta q^{-1} < 0 < alpha q^{-1} < alpha q^{-2} < ...
    Complementary,
    /// gamma = delta = 0 (degenerate; used only by the measure module).
    Exceptional,
}

impl fmt::Display for SeriesTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesTag::Principal => "principal",
            SeriesTag::Complementary => "complementary",
            SeriesTag::Exceptional => "exceptional",
        };
        f.write_str(s)
    }
}

/// Validated parameter bundle (q, alpha, beta, gamma, delta).
#[derive(Clone, Debug, PartialEq)]
pub struct QParams {
    ctx: QContext,
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
    series: SeriesTag,
}

/// Position of a real value relative to the endpoint sequence
/// {alpha q^{-k}} (positive side) or {beta q^{-k}} (negative side), k >= 1.
/// Returns None when the value sits exactly on an endpoint.
fn interval_index(x: &Rat, anchor: &Rat, q: &Rat) -> Option<usize> {
    // both x and anchor have the same sign; compare |x| against |anchor| q^{-k}
    let ax = x.abs();
    let mut endpoint = anchor.abs() / q;
    let mut idx = 0usize;
    while endpoint < ax {
        idx += 1;
        endpoint = endpoint / q;
    }
    if endpoint == ax {
        None
    } else {
        Some(idx)
    }
}

impl QParams {
    /// Classify a candidate parameter quadruple per the admissibility
    /// definition, or reject it with the violated clause named.
    pub fn classify(
        ctx: QContext,
        alpha: Scalar,
        beta: Scalar,
        gamma: Scalar,
        delta: Scalar,
    ) -> Result<QParams> {
        let bad = |msg: String| Error::InadmissibleParameters(msg);
        let a = alpha
            .as_rat()
            .ok_or_else(|| bad("alpha must be an exact rational".into()))?
            .clone();
        let b = beta
            .as_rat()
            .ok_or_else(|| bad("beta must be an exact rational".into()))?
            .clone();
        if !a.is_positive() {
            return Err(bad(format!("alpha = {alpha} must be > 0")));
        }
        if !b.is_negative() {
            return Err(bad(format!("beta = {beta} must be < 0")));
        }
        if !gamma.is_exact() || !delta.is_exact() {
            return Err(bad("gamma and delta must be exact".into()));
        }
        let series = if gamma.is_zero() && delta.is_zero() {
            SeriesTag::Exceptional
        } else if !gamma.is_real() || !delta.is_real() {
            if gamma.conj() == delta {
                SeriesTag::Principal
            } else {
                return Err(bad(format!(
                    "non-real gamma = {gamma}, delta = {delta} must be complex conjugates"
                )));
            }
        } else {
            let g = gamma.as_rat().expect("real exact").clone();
            let d = delta.as_rat().expect("real exact").clone();
            if g.is_zero() || d.is_zero() {
                return Err(bad(
                    "real gamma, delta must both be nonzero (or both zero)".into(),
                ));
            }
            if g.is_positive() != d.is_positive() {
                return Err(bad(format!(
                    "gamma = {gamma} and delta = {delta} straddle 0"
                )));
            }
            let anchor = if g.is_positive() { &a } else { &b };
            let gi = interval_index(&g, anchor, ctx.q_rat()).ok_or_else(|| {
                bad(format!("gamma = {gamma} lies on an interval endpoint"))
            })?;
            let di = interval_index(&d, anchor, ctx.q_rat()).ok_or_else(|| {
                bad(format!("delta = {delta} lies on an interval endpoint"))
            })?;
            if gi != di {
                return Err(bad(format!(
                    "gamma = {gamma} and delta = {delta} lie in distinct open intervals"
                )));
            }
            SeriesTag::Complementary
        };
        Ok(QParams {
            ctx,
            alpha,
            beta,
            gamma,
            delta,
            series,
        })
    }

    pub fn ctx(&self) -> &QContext {
        &self.ctx
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn series(&self) -> SeriesTag {
        self.series
    }

    /// s := gamma delta q / (alpha beta).
    pub fn s(&self) -> Scalar {
        (&self.gamma * &self.delta * self.ctx.q() / (&self.alpha * &self.beta)).simplify()
    }

    /// The N-dependent univariate parameter pair (c, d) = (gamma q^{1-N}, delta q^{1-N}).
    pub fn finite_n_cd(&self, n: usize) -> (Scalar, Scalar) {
        let shift = self.ctx.q_pow(1 - n as i64).expect("positive q");
        (&self.gamma * &shift, &self.delta * shift)
    }

    pub fn echo_json(&self) -> Value {
        json!({
            "q": self.ctx.q().to_string(),
            "alpha": self.alpha.to_string(),
            "beta": self.beta.to_string(),
            "gamma": self.gamma.to_string(),
            "delta": self.delta.to_string(),
            "series": self.series.to_string(),
        })
    }
}

/// The 2K innermost lattice points
/// {beta^{-1} q^k} union {alpha^{-1} q^k}, k = 1..K, sorted ascending.
pub fn lattice(params: &QParams, k_max: usize) -> Vec<Scalar> {
    assert!(k_max >= 1);
    let mut pts: Vec<Rat> = Vec::with_capacity(2 * k_max);
    for anchor in [params.beta.as_rat().unwrap(), params.alpha.as_rat().unwrap()] {
        let inv = anchor.recip();
        let mut x = inv * params.ctx.q_rat();
        for _ in 0..k_max {
            pts.push(x.clone());
            x = x * params.ctx.q_rat();
        }
    }
    pts.sort();
    pts.into_iter().map(Scalar::from_rat).collect()
}

/// Truncated weight
/// |x| * prod_{i=0}^{terms-1} (1 - a x q^i)(1 - b x q^i) / ((1 - c x q^i)(1 - d x q^i)).
///
/// At the lattice points the numerator factors make the true infinite
/// products positive; the finite truncation is exact in ratios (relative
/// weights) and accurate to a geometric tail in float mode.
pub fn weight(
    x: &Scalar,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    terms: usize,
    ctx: &QContext,
) -> Result<Scalar> {
    let one = Scalar::one().coerce_like(x)?;
    let mut num = one.clone();
    let mut den = one.clone();
    let mut qi = one.clone();
    let q = ctx.q().coerce_like(x)?;
    for _ in 0..terms {
        let xq = x.checked_mul(&qi)?;
        num = num.checked_mul(&(&one - &a.coerce_like(x)?.checked_mul(&xq)?))?;
        num = num.checked_mul(&(&one - &b.coerce_like(x)?.checked_mul(&xq)?))?;
        den = den.checked_mul(&(&one - &c.coerce_like(&num)?.checked_mul(&xq.coerce_like(&num)?)?))?;
        den = den.checked_mul(&(&one - &d.coerce_like(&num)?.checked_mul(&xq.coerce_like(&num)?)?))?;
        qi = qi.checked_mul(&q)?;
    }
    if den.is_zero() {
        return Err(Error::PoleEncountered);
    }
    let abs_x = if x.to_f64() < 0.0 {
        -x.clone()
    } else {
        x.clone()
    };
    // principal-series factors come in conjugate pairs, so the assembled
    // value is real; drop the (exactly or numerically negligible) imaginary part
    let w = abs_x
        .coerce_like(&num)?
        .checked_mul(&num.checked_div(&den)?)?
        .simplify()
        .re();
    if w.is_exact() {
        if w.to_f64() <= 0.0 {
            return Err(Error::NonPositiveWeight(format!("W({x}) = {w}")));
        }
    } else if w.to_f64() <= 0.0 {
        return Err(Error::NonPositiveWeight(format!(
            "W({x}) ~ {}",
            w.to_f64()
        )));
    }
    Ok(w)
}

/// A univariate polynomial, coefficients in ascending degree order.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariatePoly {
    coeffs: Vec<Scalar>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(Scalar::is_zero) == Some(true) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero());
        }
        UnivariatePoly { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        UnivariatePoly::new(vec![c])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Scalar {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero().coerce_like(x)?;
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(&c.coerce_like(x)?)?;
        }
        Ok(acc)
    }

    fn add_scaled(&self, other: &UnivariatePoly, factor: &Scalar) -> Result<UnivariatePoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a.checked_add(&b.checked_mul(factor)?)?),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.checked_mul(factor)?),
                (None, None) => unreachable!(),
            }
        }
        Ok(UnivariatePoly::new(out))
    }

    fn times_x(&self) -> UnivariatePoly {
        // the padding zero must match the arithmetic kind of the coefficients
        let zero = Scalar::zero()
            .coerce_like(&self.coeffs[0])
            .expect("exact zero coerces to any kind");
        let mut out = vec![zero];
        out.extend(self.coeffs.iter().cloned());
        UnivariatePoly::new(out)
    }
}

/// The monic big q-Jacobi polynomial phi_ell(x; q, a, b, c, d):
///
/// [(cq/a;q)_ell (cq/b;q)_ell / (c^ell (cdq^{ell+1}/ab;q)_ell)]
///   * 3phi2(q^{-ell}, cdq^{ell+1}/ab, cx; cq/a, cq/b; q, q),
///
/// expanded into monomial coefficients. The c = 0 indeterminate form is
/// rejected; use [`gram_schmidt_monic`] for that regime.
pub fn phi_univariate(
    ell: usize,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    ctx: &QContext,
) -> Result<UnivariatePoly> {
    if c.is_zero() {
        return Err(Error::ZeroCParameter);
    }
    let q = ctx.q().coerce_like(c)?;
    let cq_a = c.checked_mul(&q)?.checked_div(&a.coerce_like(c)?)?;
    let cq_b = c.checked_mul(&q)?.checked_div(&b.coerce_like(c)?)?;
    let cd_ab = c
        .checked_mul(&d.coerce_like(c)?)?
        .checked_mul(&ctx.q_pow(ell as i64 + 1)?.coerce_like(c)?)?
        .checked_div(&a.checked_mul(&b.coerce_like(a)?)?.coerce_like(c)?)?;
    let l = ell as i64;
    let pref = poch(&cq_a, l, ctx)?
        .checked_mul(&poch(&cq_b, l, ctx)?)?
        .checked_div(&c.pow_i64(l)?.checked_mul(&poch(&cd_ab, l, ctx)?)?)?;

    // accumulate sum_k A_k (cx;q)_k as a polynomial in x
    let mut acc = UnivariatePoly::constant(Scalar::zero().coerce_like(c)?);
    // (cx;q)_k as a polynomial, built incrementally
    let mut poch_cx = UnivariatePoly::constant(Scalar::one().coerce_like(c)?);
    let q_neg_l = ctx.q_pow(-l)?.coerce_like(c)?;
    for k in 0..=l {
        let num = poch(&q_neg_l, k, ctx)?.checked_mul(&poch(&cd_ab, k, ctx)?)?;
        let d1 = poch(&cq_a, k, ctx)?;
        let d2 = poch(&cq_b, k, ctx)?;
        if d1.is_zero() || d2.is_zero() {
            return Err(Error::PoleEncountered);
        }
        let a_k = num
            .checked_div(&d1.checked_mul(&d2)?.checked_mul(&poch(&q, k, ctx)?)?)?
            .checked_mul(&ctx.q_pow(k)?.coerce_like(c)?)?;
        acc = acc.add_scaled(&poch_cx, &a_k)?;
        // extend (cx;q)_k -> (cx;q)_{k+1}: multiply by (1 - c q^k x)
        let factor = -c.checked_mul(&ctx.q_pow(k)?.coerce_like(c)?)?;
        poch_cx = poch_cx.add_scaled(&poch_cx.times_x(), &factor)?;
    }
    let coeffs = acc
        .coeffs()
        .iter()
        .map(|co| Ok(co.checked_mul(&pref)?.simplify()))
        .collect::<Result<Vec<_>>>()?;
    Ok(UnivariatePoly::new(coeffs))
}

/// Monic orthogonal polynomials of degrees 0..=l_max for the discrete inner
/// product <f,g> = sum w(x) f(x) g(x) over the given weight table, via the
/// three-term recurrence. Independent of the closed form; serves as the
/// oracle and as the c = 0 fallback.
pub fn gram_schmidt_monic(
    l_max: usize,
    table: &[(Scalar, Scalar)],
) -> Result<Vec<UnivariatePoly>> {
    if table.len() < l_max + 1 {
        return Err(Error::DegenerateMoments);
    }
    let like = table[0].1.clone();
    let inner = |f: &UnivariatePoly, g: &UnivariatePoly| -> Result<Scalar> {
        let mut acc = Scalar::zero().coerce_like(&like)?;
        for (x, w) in table {
            let t = w.checked_mul(&f.eval(x)?)?.checked_mul(&g.eval(x)?)?;
            acc = acc.checked_add(&t.coerce_like(&like)?)?;
        }
        Ok(acc)
    };
    let mut polys = vec![UnivariatePoly::constant(Scalar::one().coerce_like(&like)?)];
    let mut norms = vec![inner(&polys[0], &polys[0])?];
    for k in 0..l_max {
        if norms[k].is_zero() {
            return Err(Error::DegenerateMoments);
        }
        let pk = polys[k].clone();
        let xpk = pk.times_x();
        let a_k = inner(&xpk, &pk)?.checked_div(&norms[k])?;
        let mut next = xpk.add_scaled(&pk, &-a_k)?;
        if k > 0 {
            let b_k = norms[k].checked_div(&norms[k - 1])?;
            next = next.add_scaled(&polys[k - 1], &-b_k)?;
        }
        let n_next = inner(&next, &next)?;
        polys.push(next);
        norms.push(n_next);
    }
    Ok(polys)
}

/// The N-variate big q-Jacobi polynomial
/// det[phi_{lambda_i+N-i}(x_j)] / prod_{i<j}(x_i - x_j)
/// with univariate parameters (alpha, beta, gamma q^{1-N}, delta q^{1-N}).
pub fn phi_multivariate_det(
    lam: &Partition,
    n: usize,
    xs: &[Scalar],
    params: &QParams,
) -> Result<Scalar> {
    if lam.length() > n {
        return Err(Error::NTooSmall {
            given: n,
            needed: lam.length(),
        });
    }
    assert_eq!(xs.len(), n, "expected {n} coordinates");
    if n == 0 {
        return Ok(Scalar::one());
    }
    let (c, d) = params.finite_n_cd(n);
    let ctx = params.ctx();
    let polys: Vec<UnivariatePoly> = (1..=n)
        .map(|i| {
            phi_univariate(
                lam.part(i) + n - i,
                params.alpha(),
                params.beta(),
                &c,
                &d,
                ctx,
            )
        })
        .collect::<Result<_>>()?;
    let m: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| xs.iter().map(|x| p.eval(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let v = vandermonde(xs)?;
    Ok(det(&m)?.checked_div(&v.coerce_like(&det(&m)?)?)?.simplify())
}

/// The N-independent expansion coefficient rho(lambda, mu):
///
/// gamma^{-|lambda|} det[ E_{ik} ], i,k = 1..ell(lambda),
/// with n = lambda_i - mu_k - i + k and
/// E_{ik} = (gamma q^{mu_k-k+2}/alpha;q)_n (gamma q^{mu_k-k+2}/beta;q)_n /
///          [q^{(mu_k-k+1)n} ((gamma delta/(alpha beta)) q^{lambda_i+mu_k-i-k+3};q)_n (q;q)_n],
/// where the 1/(q;q)_n factor is 0 for n < 0 (so mu not contained in lambda
/// gives 0). On the diagonal the determinant is unitriangular, so
/// rho(lambda, lambda) = gamma^{-|lambda|}.
pub fn rho(lam: &Partition, mu: &Partition, params: &QParams) -> Result<Scalar> {
    let gamma = params.gamma();
    if gamma.is_zero() {
        return Err(Error::ZeroCParameter);
    }
    if !lam.contains(mu) {
        return Ok(Scalar::zero());
    }
    let l = lam.length();
    if l == 0 {
        return Ok(Scalar::one());
    }
    let ctx = params.ctx();
    let g_a = gamma.checked_div(&params.alpha().coerce_like(gamma)?)?;
    let g_b = gamma.checked_div(&params.beta().coerce_like(gamma)?)?;
    let gd_ab = gamma
        .checked_mul(params.delta())?
        .checked_div(&(params.alpha() * params.beta()).coerce_like(gamma)?)?;
    let mut m = Vec::with_capacity(l);
    for i in 1..=l {
        let mut row = Vec::with_capacity(l);
        for k in 1..=l {
            let n = lam.part(i) as i64 - mu.part(k) as i64 - i as i64 + k as i64;
            if n < 0 {
                row.push(Scalar::zero().coerce_like(gamma)?);
                continue;
            }
            let mk = mu.part(k) as i64 - k as i64;
            let shift = ctx.q_pow(mk + 2)?.coerce_like(gamma)?;
            let num = poch(&g_a.checked_mul(&shift)?, n, ctx)?
                .checked_mul(&poch(&g_b.checked_mul(&shift)?, n, ctx)?)?;
            let den = ctx
                .q_pow((mk + 1) * n)?
                .coerce_like(gamma)?
                .checked_mul(&poch(
                    &gd_ab.checked_mul(
                        &ctx.q_pow(lam.part(i) as i64 + mu.part(k) as i64 - i as i64 - k as i64 + 3)?
                            .coerce_like(gamma)?,
                    )?,
                    n,
                    ctx,
                )?)?
                .checked_mul(&poch(&ctx.q().coerce_like(gamma)?, n, ctx)?)?;
            row.push(num.checked_div(&den)?);
        }
        m.push(row);
    }
    let d = det(&m)?;
    Ok(gamma
        .pow_i64(-(lam.size() as i64))?
        .checked_mul(&d)?
        .simplify())
}

/// Phi_lambda expanded on the interpolation basis and on the Schur basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiExpansion {
    /// Coefficient of I_mu(X gamma; q) for each mu contained in lambda.
    pub i_coeffs: BTreeMap<Partition, Scalar>,
    /// Coefficients in the undilated Schur basis (the gamma-dilation factor
    /// gamma^{|nu|} is folded in).
    pub schur: SchurExpansion,
}

impl PhiExpansion {
    pub fn to_json(&self, params: &QParams) -> Value {
        let mut v = self.schur.to_json();
        let i_basis: Vec<Value> = self
            .i_coeffs
            .iter()
            .map(|(mu, c)| json!({"index": mu.to_string(), "value": c.to_string()}))
            .collect();
        v["i_basis"] = Value::Array(i_basis);
        v["params"] = params.echo_json();
        v
    }
}

/// Phi_lambda = sum_{mu <= lambda} rho(lambda, mu) I_mu(X gamma; q)
///            = sum_{nu <= lambda} gamma^{|nu|}
///              (sum_{nu <= mu <= lambda} rho(lambda, mu) sigma(mu, nu)) S_nu.
pub fn phi_limit_expansion(lam: &Partition, params: &QParams) -> Result<PhiExpansion> {
    let gamma = params.gamma();
    if gamma.is_zero() {
        return Err(Error::ZeroCParameter);
    }
    let ctx = params.ctx();
    let subs = lam.subdiagrams();
    let mut i_coeffs = BTreeMap::new();
    for mu in &subs {
        i_coeffs.insert(mu.clone(), rho(lam, mu, params)?);
    }
    let mut schur = BTreeMap::new();
    for nu in &subs {
        let mut inner = Scalar::zero().coerce_like(gamma)?;
        for mu in &subs {
            if !mu.contains(nu) {
                continue;
            }
            let r = i_coeffs[mu].coerce_like(gamma)?;
            let s = sigma(mu, nu, ctx).coerce_like(gamma)?;
            inner = inner.checked_add(&r.checked_mul(&s)?)?;
        }
        let c = gamma
            .pow_i64(nu.size() as i64)?
            .checked_mul(&inner)?
            .simplify();
        schur.insert(nu.clone(), c);
    }
    Ok(PhiExpansion {
        i_coeffs,
        schur: SchurExpansion::new(schur, lam.clone()),
    })
}

/// The closed-form squared norm of Phi_lambda:
///
/// q^{sum lambda_i (lambda_i + 3 - 2i)} (-s)^{|lambda|} (-alpha beta)^{-|lambda|}
/// * (gq/a;q)_lam (gq/b;q)_lam (dq/a;q)_lam (dq/b;q)_lam / (sq;q)_{lambda-hat},
///
/// where s = gamma delta q/(alpha beta) and lambda-hat doubles the diagram.
pub fn phi_limit_norm(lam: &Partition, params: &QParams) -> Result<Scalar> {
    let ctx = params.ctx();
    let exp: i64 = lam
        .parts()
        .iter()
        .enumerate()
        .map(|(i0, &p)| p as i64 * (p as i64 + 3 - 2 * (i0 as i64 + 1)))
        .sum();
    let s = params.s();
    let ab = params.alpha() * params.beta();
    let size = lam.size() as i64;
    let mut acc = ctx
        .q_pow(exp)?
        .coerce_like(&s)?
        .checked_mul(&(-&s).pow_i64(size)?)?
        .checked_mul(&(-ab).pow_i64(-size)?.coerce_like(&s)?)?;
    let q = ctx.q();
    for z in [
        params.gamma() * &q / params.alpha(),
        params.gamma() * &q / params.beta(),
        params.delta() * &q / params.alpha(),
        params.delta() * &q / params.beta(),
    ] {
        acc = acc.checked_mul(&poch_diagram(&z, lam, ctx)?.coerce_like(&acc)?)?;
    }
    let hat = lam.doubled();
    let den = poch_diagram(&(&s * &q).coerce_like(&acc)?, &hat, ctx)?;
    Ok(acc.checked_div(&den)?.simplify())
}

/// The closed-form squared norm h_ell(N) of the univariate polynomial
/// phi_ell(.; q, alpha, beta, gamma q^{1-N}, delta q^{1-N}):
///
/// q^{2 ell} (-alpha beta)^{-ell}
/// * (g q^{2-N}/a;q)_ell (g q^{2-N}/b;q)_ell (d q^{2-N}/a;q)_ell (d q^{2-N}/b;q)_ell
/// * 1/[(s q^{2-2N};q)_{2 ell} (s q^{3-2N};q)_{2 ell}]
/// * q^{ell(ell-1)/2} (s q^{2-2N};q)_ell * (q;q)_ell.
///
/// The final (q;q)_ell factor is required for the monic normalization: the
/// brute-force lattice-sum oracle pins it down (without it the value is off
/// by exactly 1/(q;q)_ell), and it disappears from the N -> infinity limit
/// of the multivariate norm ratios, keeping the closed-form limit norm intact.
pub fn h_univariate_norm(ell: usize, n: usize, params: &QParams) -> Result<Scalar> {
    let ctx = params.ctx();
    let l = ell as i64;
    let nn = n as i64;
    let s = params.s();
    let ab = params.alpha() * params.beta();
    let mut acc = ctx
        .q_pow(2 * l)?
        .coerce_like(&s)?
        .checked_mul(&(-ab).pow_i64(-l)?.coerce_like(&s)?)?;
    let shift = ctx.q_pow(2 - nn)?;
    for z in [
        params.gamma() * &shift / params.alpha(),
        params.gamma() * &shift / params.beta(),
        params.delta() * &shift / params.alpha(),
        params.delta() * &shift / params.beta(),
    ] {
        acc = acc.checked_mul(&poch(&z.coerce_like(&acc)?, l, ctx)?)?;
    }
    let s2 = (&s * ctx.q_pow(2 - 2 * nn)?).coerce_like(&acc)?;
    let s3 = (&s * ctx.q_pow(3 - 2 * nn)?).coerce_like(&acc)?;
    let den = poch(&s2, 2 * l, ctx)?.checked_mul(&poch(&s3, 2 * l, ctx)?)?;
    if den.is_zero() {
        return Err(Error::PoleEncountered);
    }
    acc = acc.checked_div(&den)?;
    acc = acc
        .checked_mul(&ctx.q_pow(l * (l - 1) / 2)?.coerce_like(&acc)?)?
        .checked_mul(&poch(&s2, l, ctx)?)?
        .checked_mul(&poch(&ctx.q().coerce_like(&acc)?, l, ctx)?)?;
    Ok(acc.simplify())
}

/// The multivariate finite-N squared norm
/// prod_{i=1}^{N} h_{lambda_i+N-i}(N) / h_{N-i}(N)
/// (only the rows with lambda_i > 0 contribute).
pub fn phi_finite_norm(lam: &Partition, n: usize, params: &QParams) -> Result<Scalar> {
    if lam.length() > n {
        return Err(Error::NTooSmall {
            given: n,
            needed: lam.length(),
        });
    }
    let mut acc = Scalar::one();
    for i in 1..=lam.length() {
        let num = h_univariate_norm(lam.part(i) + n - i, n, params)?;
        let den = h_univariate_norm(n - i, n, params)?;
        acc = acc
            .coerce_like(&num)?
            .checked_mul(&num.checked_div(&den)?)?;
    }
    Ok(acc.simplify())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::interp_poly_det;
    use crate::partition::enumerate_partitions;

    fn ctx_half() -> QContext {
        QContext::new(Scalar::rat(1, 2)).unwrap()
    }

    fn s(txt: &str) -> Scalar {
        txt.parse().unwrap()
    }

    fn p(txt: &str) -> Partition {
        txt.parse().unwrap()
    }

    /// q=1/2, alpha=1, beta=-1, complementary gamma=3, delta=7/2
    /// (both inside (2,4)).
    fn complementary_params() -> QParams {
        QParams::classify(ctx_half(), s("1"), s("-1"), s("3"), s("7/2")).unwrap()
    }

    /// q=1/2, alpha=1, beta=-1, principal gamma = 1/5 + i/7.
    fn principal_params() -> QParams {
        QParams::classify(ctx_half(), s("1"), s("-1"), s("1/5+1/7i"), s("1/5-1/7i"))
            .unwrap()
    }

    #[test]
    fn classify_series() {
        assert_eq!(principal_params().series(), SeriesTag::Principal);
        assert_eq!(complementary_params().series(), SeriesTag::Complementary);
        let exc = QParams::classify(ctx_half(), s("1"), s("-1"), s("0"), s("0")).unwrap();
        assert_eq!(exc.series(), SeriesTag::Exceptional);
    }

    #[test]
    fn classify_rejections() {
        let c = ctx_half;
        // 3 in (2,4) but 5 in (4,8): distinct intervals
        assert!(QParams::classify(c(), s("1"), s("-1"), s("3"), s("5")).is_err());
        // straddling zero
        assert!(QParams::classify(c(), s("1"), s("-1"), s("3"), s("-3")).is_err());
        // on an endpoint
        assert!(QParams::classify(c(), s("1"), s("-1"), s("4"), s("3")).is_err());
        // one of the pair zero
        assert!(QParams::classify(c(), s("1"), s("-1"), s("0"), s("3")).is_err());
        // non-conjugate complex
        assert!(QParams::classify(c(), s("1"), s("-1"), s("1/5+1/7i"), s("1/5+1/7i")).is_err());
        // wrong alpha/beta signs
        assert!(QParams::classify(c(), s("-1"), s("-1"), s("3"), s("3")).is_err());
        assert!(QParams::classify(c(), s("1"), s("1"), s("3"), s("3")).is_err());
        // negative pair sharing an interval is fine: (-4,-2) at beta=-1
        assert!(QParams::classify(c(), s("1"), s("-1"), s("-3"), s("-7/2")).is_ok());
    }

    #[test]
    fn lattice_example() {
        let params = QParams::classify(ctx_half(), s("1"), s("-1"), s("0"), s("0")).unwrap();
        let pts = lattice(&params, 2);
        assert_eq!(pts, vec![s("-1/2"), s("-1/4"), s("1/4"), s("1/2")]);
        assert_eq!(lattice(&params, 1).len(), 2);
    }

    #[test]
    fn s_accessor() {
        // s = gamma delta q/(alpha beta) = 3 * 7/2 * 1/2 / (-1) = -21/4
        assert_eq!(complementary_params().s(), s("-21/4"));
    }

    #[test]
    fn weight_positive_and_symmetric_in_cd() {
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let (c, d) = params.finite_n_cd(1);
        for x in lattice(&params, 4) {
            let w1 = weight(&x, params.alpha(), params.beta(), &c, &d, 30, &ctx).unwrap();
            let w2 = weight(&x, params.alpha(), params.beta(), &d, &c, 30, &ctx).unwrap();
            assert!(w1.to_f64() > 0.0);
            assert_eq!(w1, w2);
        }
    }

    #[test]
    fn weight_principal_is_real_positive() {
        let params = principal_params();
        let ctx = params.ctx().clone();
        let (c, d) = params.finite_n_cd(2);
        for x in lattice(&params, 3) {
            let w = weight(&x, params.alpha(), params.beta(), &c, &d, 25, &ctx).unwrap();
            assert!(w.is_real(), "weight not real at {x}");
            assert!(w.to_f64() > 0.0);
        }
    }

    #[test]
    fn phi_univariate_degree_zero_and_monic() {
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let (c, d) = params.finite_n_cd(1);
        let p0 = phi_univariate(0, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
        assert_eq!(p0.coeffs(), &[Scalar::one()]);
        for ell in 1..=5 {
            let poly = phi_univariate(ell, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
            assert_eq!(poly.degree(), ell);
            assert!(poly.is_monic(), "ell = {ell}: leading {}", poly.leading());
        }
    }

    #[test]
    fn phi_univariate_c_zero_rejected() {
        let ctx = ctx_half();
        assert_eq!(
            phi_univariate(1, &s("1"), &s("-1"), &s("0"), &s("1"), &ctx),
            Err(Error::ZeroCParameter)
        );
    }

    #[test]
    fn phi_univariate_cd_symmetry() {
        let params = complementary_params();
        let ctx = params.ctx().clone();
        for n in [1usize, 2, 3] {
            let (c, d) = params.finite_n_cd(n);
            for ell in 0..=5 {
                let p1 =
                    phi_univariate(ell, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
                let p2 =
                    phi_univariate(ell, params.alpha(), params.beta(), &d, &c, &ctx).unwrap();
                assert_eq!(p1, p2, "ell = {ell}, N = {n}");
            }
        }
    }

    #[test]
    fn phi_univariate_cd_symmetry_principal() {
        let params = principal_params();
        let ctx = params.ctx().clone();
        let (c, d) = params.finite_n_cd(2);
        for ell in 0..=4 {
            let p1 = phi_univariate(ell, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
            let p2 = phi_univariate(ell, params.alpha(), params.beta(), &d, &c, &ctx).unwrap();
            assert_eq!(p1, p2, "ell = {ell}");
            // coefficients of a real orthogonal polynomial are real
            for co in p1.coeffs() {
                assert!(co.is_real(), "ell = {ell}: {co}");
            }
        }
    }

    #[test]
    fn phi_univariate_degree_one_matches_moments() {
        // phi_1(x) = x - m1/m0 with moments of the weight over the lattice;
        // float mode, truncation far below the comparison tolerance
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let (c, d) = params.finite_n_cd(1);
        let bits = 256;
        let mut m0 = Scalar::zero().to_float(bits);
        let mut m1 = Scalar::zero().to_float(bits);
        for x in lattice(&params, 120) {
            let xf = x.to_float(bits);
            let w = weight(
                &xf,
                params.alpha(),
                params.beta(),
                &c,
                &d,
                200,
                &ctx,
            )
            .unwrap();
            m0 = m0.checked_add(&w).unwrap();
            m1 = m1.checked_add(&w.checked_mul(&xf).unwrap()).unwrap();
        }
        let phi1 = phi_univariate(1, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
        let expect = -(m1.to_f64() / m0.to_f64());
        let got = phi1.coeffs()[0].to_f64();
        assert!(
            (expect - got).abs() < 1e-12 * (1.0 + got.abs()),
            "moment oracle: {expect} vs {got}"
        );
    }

    #[test]
    fn gram_schmidt_matches_closed_form() {
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let (c, d) = params.finite_n_cd(1);
        let bits = 256;
        let table: Vec<(Scalar, Scalar)> = lattice(&params, 120)
            .into_iter()
            .map(|x| {
                let xf = x.to_float(bits);
                let w = weight(&xf, params.alpha(), params.beta(), &c, &d, 200, &ctx).unwrap();
                (xf, w)
            })
            .collect();
        let gs = gram_schmidt_monic(3, &table).unwrap();
        for ell in 0..=3usize {
            let closed =
                phi_univariate(ell, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
            for k in 0..=ell {
                let a = &gs[ell].coeffs()[k];
                let b = closed.coeffs()[k].to_float(bits);
                let diff = a.checked_sub(&b).unwrap().abs_f64();
                assert!(
                    diff < 1e-20 * (1.0 + b.abs_f64()),
                    "ell={ell} coeff {k}: diff {diff:e}"
                );
            }
        }
    }

    #[test]
    fn gram_schmidt_symmetric_weight_parity() {
        // alpha = -beta, c = d = 0: odd-degree polynomials are odd
        let ctx = ctx_half();
        let params = QParams::classify(ctx.clone(), s("1"), s("-1"), s("0"), s("0")).unwrap();
        let table: Vec<(Scalar, Scalar)> = lattice(&params, 8)
            .into_iter()
            .map(|x| {
                let w = weight(&x, params.alpha(), params.beta(), &s("0"), &s("0"), 20, &ctx)
                    .unwrap();
                (x, w)
            })
            .collect();
        let gs = gram_schmidt_monic(4, &table).unwrap();
        assert_eq!(gs[0].coeffs(), &[Scalar::one()]);
        for ell in [1usize, 3] {
            for (k, co) in gs[ell].coeffs().iter().enumerate() {
                if (ell - k) % 2 == 1 {
                    assert!(co.is_zero(), "ell={ell} coeff {k} = {co}");
                }
            }
        }
    }

    #[test]
    fn gram_schmidt_too_few_points() {
        let table = vec![(s("1"), s("1")), (s("2"), s("1"))];
        assert_eq!(
            gram_schmidt_monic(2, &table).err(),
            Some(Error::DegenerateMoments)
        );
    }

    #[test]
    fn multivariate_base_cases() {
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let x = vec![s("5/7")];
        assert_eq!(
            phi_multivariate_det(&Partition::empty(), 1, &x, &params).unwrap(),
            Scalar::one()
        );
        let (c, d) = params.finite_n_cd(1);
        let phi1 = phi_univariate(1, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
        assert_eq!(
            phi_multivariate_det(&p("1"), 1, &x, &params).unwrap(),
            phi1.eval(&x[0]).unwrap()
        );
    }

    #[test]
    fn rho_diagonal_and_vanishing() {
        let params = complementary_params();
        for lam in enumerate_partitions(3) {
            let diag = rho(&lam, &lam, &params).unwrap();
            assert_eq!(
                diag,
                params.gamma().pow_i64(-(lam.size() as i64)).unwrap(),
                "lam = {lam}"
            );
            for mu in enumerate_partitions(3) {
                if !lam.contains(&mu) {
                    assert!(rho(&lam, &mu, &params).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn rho_single_box_closed_form() {
        // rho((1), empty) = g^{-1} (gq/a;q)_1 (gq/b;q)_1 /
        //                   [((gd/ab)q^2;q)_1 (q;q)_1];
        // cross-checked below against the Newton expansion of phi_1 at N=1:
        // phi_1(x) = x - g^{-1} + pref, so rho((1),empty) = pref/(1-q)
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let q = ctx.q();
        let g = params.gamma();
        let one = Scalar::one();
        let expect = (&one / g)
            * (&one - g * &q / params.alpha())
            * (&one - g * &q / params.beta())
            / ((&one
                - g * params.delta() / (params.alpha() * params.beta())
                    * q.pow_i64(2).unwrap())
                * (&one - &q));
        let got = rho(&p("1"), &Partition::empty(), &params).unwrap();
        assert_eq!(got, expect);
        // independent oracle: constant term of phi_1 at N=1
        let (c, d) = params.finite_n_cd(1);
        let phi1 = phi_univariate(1, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
        let pref = phi1.coeffs()[0].clone() + &one / g;
        assert_eq!(got, pref / (&one - &q));
    }

    #[test]
    fn rho_finite_n_expansion_identity() {
        // phi_{lam|N}(X) = sum_{mu <= lam} [(q^N;q)_lam/(q^N;q)_mu]
        //                  rho(lam,mu) I_{mu|N}(X gamma)
        // with univariate parameters (alpha, beta, gamma q^{1-N}, delta q^{1-N})
        for params in [complementary_params(), principal_params()] {
            let ctx = params.ctx().clone();
            let qn = |n: usize| ctx.q_pow(n as i64).unwrap();
            for (lam, n) in [
                (p("1"), 1),
                (p("1"), 2),
                (p("2"), 2),
                (p("1,1"), 2),
                (p("2,1"), 3),
            ] {
                let xs: Vec<Scalar> =
                    (0..n).map(|i| s(&format!("{}/{}", 3 + 5 * i, 7 + i))).collect();
                let lhs = phi_multivariate_det(&lam, n, &xs, &params).unwrap();
                let top = poch_diagram(&qn(n), &lam, &ctx).unwrap();
                let dilated: Vec<Scalar> = xs
                    .iter()
                    .map(|x| (x * params.gamma()).simplify())
                    .collect();
                let mut rhs = Scalar::zero().coerce_like(params.gamma()).unwrap();
                for mu in lam.subdiagrams() {
                    let pref = top
                        .checked_div(&poch_diagram(&qn(n), &mu, &ctx).unwrap())
                        .unwrap();
                    let r = rho(&lam, &mu, &params).unwrap();
                    let i_val = interp_poly_det(&mu, n, &dilated, &ctx).unwrap();
                    rhs = rhs
                        .checked_add(
                            &pref
                                .coerce_like(params.gamma())
                                .unwrap()
                                .checked_mul(&r.coerce_like(params.gamma()).unwrap())
                                .unwrap()
                                .checked_mul(&i_val.coerce_like(params.gamma()).unwrap())
                                .unwrap(),
                        )
                        .unwrap();
                }
                assert_eq!(
                    lhs.simplify(),
                    rhs.simplify(),
                    "lam = {lam}, N = {n}, series = {}",
                    params.series()
                );
            }
        }
    }

    #[test]
    fn limit_expansion_top_coefficient_is_one() {
        for params in [complementary_params(), principal_params()] {
            for lam in enumerate_partitions(3) {
                let e = phi_limit_expansion(&lam, &params).unwrap();
                assert_eq!(e.schur.coeff(&lam), Scalar::one(), "lam = {lam}");
            }
        }
    }

    #[test]
    fn limit_expansion_real_in_principal_series() {
        let params = principal_params();
        for lam in enumerate_partitions(3) {
            let e = phi_limit_expansion(&lam, &params).unwrap();
            for (nu, c) in e.schur.iter() {
                assert!(c.is_real(), "lam = {lam}, nu = {nu}: {c}");
                assert!(c.as_rat().is_some(), "coefficient not simplified: {c}");
            }
        }
    }

    #[test]
    fn limit_expansion_is_finite_n_limit() {
        // the finite-N Schur coefficient is the limit coefficient times
        // (q^N;q)_lam/(q^N;q)_nu, exactly
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let lam = p("2,1");
        let n = 3usize;
        let e = phi_limit_expansion(&lam, &params).unwrap();
        let qn = ctx.q_pow(n as i64).unwrap();
        // reconstruct finite-N values at a random point from the limit coeffs
        let xs = vec![s("2/3"), s("5/11"), s("-3/13")];
        let mut via_limit = Scalar::zero();
        for (nu, c) in e.schur.iter() {
            let pref = poch_diagram(&qn, &lam, &ctx)
                .unwrap()
                .checked_div(&poch_diagram(&qn, nu, &ctx).unwrap())
                .unwrap();
            let sv = crate::interp::schur_eval(nu, n, &xs).unwrap();
            via_limit = via_limit + pref * c * sv;
        }
        let direct = phi_multivariate_det(&lam, n, &xs, &params).unwrap();
        assert_eq!(direct, via_limit.simplify());
    }

    #[test]
    fn limit_norm_empty_and_single_box() {
        let params = complementary_params();
        assert_eq!(
            phi_limit_norm(&Partition::empty(), &params).unwrap(),
            Scalar::one()
        );
        // factor-by-factor assembly for lam = (1):
        // exponent 1*(1+3-2) = 2; hat = (2,2) -> (sq;q)_{hat} has boxes
        // (1,1),(1,2),(2,1),(2,2) with contents 0,1,-1,0
        let ctx = params.ctx();
        let q = ctx.q();
        let s_ = params.s();
        let one = Scalar::one();
        let hat_poch = (&one - &s_ * &q)
            * (&one - &s_ * q.pow_i64(2).unwrap())
            * (&one - &s_)
            * (&one - &s_ * &q);
        let expect = q.pow_i64(2).unwrap() * (-&s_)
            / (-(params.alpha() * params.beta()))
            * (&one - params.gamma() * &q / params.alpha())
            * (&one - params.gamma() * &q / params.beta())
            * (&one - params.delta() * &q / params.alpha())
            * (&one - params.delta() * &q / params.beta())
            / hat_poch;
        assert_eq!(phi_limit_norm(&p("1"), &params).unwrap(), expect);
    }

    #[test]
    fn limit_norm_positive() {
        for params in [complementary_params(), principal_params()] {
            for lam in enumerate_partitions(4) {
                let v = phi_limit_norm(&lam, &params).unwrap();
                assert!(v.is_real(), "lam = {lam}: {v}");
                assert!(v.to_f64() > 0.0, "lam = {lam}: {v}");
            }
        }
    }

    #[test]
    fn h_norm_base_case() {
        let params = complementary_params();
        for n in 1..=4 {
            assert_eq!(h_univariate_norm(0, n, &params).unwrap(), Scalar::one());
        }
    }

    #[test]
    fn h_norm_brute_force_oracle() {
        // h_ell(N) = sum_x W(x) phi_ell(x)^2 / sum_x W(x), float mode,
        // generous truncation
        let params = complementary_params();
        let ctx = params.ctx().clone();
        let n = 1usize;
        let (c, d) = params.finite_n_cd(n);
        let bits = 256;
        let table: Vec<(Scalar, Scalar)> = lattice(&params, 120)
            .into_iter()
            .map(|x| {
                let xf = x.to_float(bits);
                let w = weight(&xf, params.alpha(), params.beta(), &c, &d, 200, &ctx).unwrap();
                (xf, w)
            })
            .collect();
        let mass: f64 = table.iter().map(|(_, w)| w.to_f64()).sum();
        for ell in [1usize, 2] {
            let poly = phi_univariate(ell, params.alpha(), params.beta(), &c, &d, &ctx).unwrap();
            let num: f64 = table
                .iter()
                .map(|(x, w)| {
                    let v = poly.eval(x).unwrap().to_f64();
                    w.to_f64() * v * v
                })
                .sum();
            let brute = num / mass;
            let closed = h_univariate_norm(ell, n, &params).unwrap().to_f64();
            assert!(
                (brute - closed).abs() < 1e-12 * (1.0 + closed.abs()),
                "ell = {ell}: {brute} vs {closed}"
            );
        }
    }

    #[test]
    fn finite_norm_converges_to_limit_norm() {
        let params = complementary_params();
        let lam = p("1");
        let limit = phi_limit_norm(&lam, &params).unwrap().to_f64();
        let mut prev_err = f64::INFINITY;
        for n in 4..=9 {
            let v = phi_finite_norm(&lam, n, &params).unwrap().to_f64();
            let err = (v - limit).abs();
            assert!(err < prev_err, "N = {n}: {err} !< {prev_err}");
            prev_err = err;
        }
    }

    #[test]
    fn exceptional_limit_norm_degenerates() {
        let params =
            QParams::classify(ctx_half(), s("1"), s("-1"), s("0"), s("0")).unwrap();
        assert_eq!(
            phi_limit_norm(&Partition::empty(), &params).unwrap(),
            Scalar::one()
        );
        for lam in enumerate_partitions(3) {
            if !lam.is_empty() {
                assert!(phi_limit_norm(&lam, &params).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn expansion_json_has_params_echo() {
        let params = complementary_params();
        let e = phi_limit_expansion(&p("1"), &params).unwrap();
        let v = e.to_json(&params);
        assert_eq!(v["params"]["series"], "complementary");
        assert_eq!(v["basis"], "schur");
    }
}

