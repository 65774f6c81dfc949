//! Interpolation symmetric functions I_mu: the coefficients sigma(mu,nu;q),
//! the normalization H(mu;q), finite-N determinant and combinatorial
//! evaluations, Schur-basis expansions, and projective-limit consistency.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::{enumerate_reverse_tableaux, Partition};
use crate::qseries::{poch_diagram, poch_recip_q, QContext};
use crate::scalar::{det, Scalar};

/// An element of Sym written in the Schur basis: a finite map
/// Partition -> Scalar with a distinguished top index.
///
/// Zero coefficients are never stored; for I_mu and Phi_lambda the top
/// coefficient is exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurExpansion {
    coeffs: BTreeMap<Partition, Scalar>,
    top: Partition,
}

impl SchurExpansion {
    pub fn new(coeffs: BTreeMap<Partition, Scalar>, top: Partition) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SchurExpansion { coeffs, top }
    }

    pub fn top(&self) -> &Partition {
        &self.top
    }

    pub fn coeff(&self, nu: &Partition) -> Scalar {
        self.coeffs.get(nu).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|p| p.size()).max().unwrap_or(0)
    }

    /// Evaluate as a symmetric polynomial in N variables.
    pub fn eval(&self, n: usize, xs: &[Scalar]) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (nu, c) in &self.coeffs {
            let s = schur_eval(nu, n, xs)?;
            acc = acc.checked_add(&c.checked_mul(&s)?)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(nu, c)| json!({"index": nu.to_string(), "value": c.to_string()}))
            .collect();
        json!({"basis": "schur", "coeffs": coeffs})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed schur expansion JSON".into());
        if v.get("basis").and_then(Value::as_str) != Some("schur") {
            return Err(bad());
        }
        let mut coeffs = BTreeMap::new();
        for entry in v.get("coeffs").and_then(Value::as_array).ok_or_else(bad)? {
            let idx: Partition = entry
                .get("index")
                .and_then(Value::as_str)
                .ok_or_else(bad)?
                .parse()?;
            let val: Scalar = entry
                .get("value")
                .and_then(Value::as_str)
                .ok_or_else(bad)?
                .parse()?;
            coeffs.insert(idx, val);
        }
        let top = coeffs.keys().max().cloned().unwrap_or_else(Partition::empty);
        Ok(SchurExpansion::new(coeffs, top))
    }
}

/// The Schur-expansion coefficient of I_mu:
/// sigma(mu,nu;q) = (-1)^{|mu|-|nu|} q^{n(mu)-n(mu')-n(nu)+n(nu')}
///                  det[ 1/(q;q)_{mu_i - nu_k - i + k} ]_{i,k=1..ell(mu)}.
///
/// Returns exact 0 when nu is not contained in mu (the determinant
/// vanishes structurally; the containment pre-check is an optimization
/// whose agreement is covered by tests).
pub fn sigma(mu: &Partition, nu: &Partition, ctx: &QContext) -> Scalar {
    if !mu.contains(nu) {
        return Scalar::zero();
    }
    sigma_determinant(mu, nu, ctx)
}

/// The raw determinant evaluation without the containment shortcut; only
/// meaningful when ell(nu) <= ell(mu).
pub(crate) fn sigma_determinant(mu: &Partition, nu: &Partition, ctx: &QContext) -> Scalar {
    let l = mu.length();
    if l == 0 {
        return if nu.is_empty() { Scalar::one() } else { Scalar::zero() };
    }
    let m: Vec<Vec<Scalar>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|k| {
                    let idx = mu.part(i) as i64 - nu.part(k) as i64 - i as i64 + k as i64;
                    poch_recip_q(idx, ctx)
                })
                .collect()
        })
        .collect();
    let d = det(&m).expect("square rational matrix");
    let sign = if (mu.size() as i64 - nu.size() as i64).rem_euclid(2) == 1 {
        -Scalar::one()
    } else {
        Scalar::one()
    };
    let exp = mu.n_stat() as i64 - mu.conjugate().n_stat() as i64 - nu.n_stat() as i64
        + nu.conjugate().n_stat() as i64;
    sign * ctx.q_pow(exp).expect("positive q") * d
}

/// I_mu = sum_{nu <= mu} sigma(mu,nu;q) S_nu, normalized so the top
/// coefficient equals 1.
pub fn interp_expansion(mu: &Partition, ctx: &QContext) -> SchurExpansion {
    let coeffs = mu
        .subdiagrams()
        .into_iter()
        .map(|nu| {
            let c = sigma(mu, &nu, ctx);
            (nu, c)
        })
        .collect();
    SchurExpansion::new(coeffs, mu.clone())
}

/// H(mu;q) = q^{-sum mu_i (mu_i - i + 1)} prod over boxes (1 - q^{h(i,j)}).
pub fn h_norm(mu: &Partition, ctx: &QContext) -> Scalar {
    let exp: i64 = mu
        .parts()
        .iter()
        .enumerate()
        .map(|(i0, &p)| p as i64 * (p as i64 - (i0 as i64 + 1) + 1))
        .sum();
    let mut acc = ctx.q_pow(-exp).expect("positive q");
    for (_, h) in mu.hook_lengths() {
        acc = acc * (Scalar::one() - ctx.q_pow(h as i64).expect("positive q"));
    }
    acc
}

pub(crate) fn vandermonde(xs: &[Scalar]) -> Result<Scalar> {
    let mut acc = Scalar::one().coerce_like(xs.first().unwrap_or(&Scalar::one()))?;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = xs[i].checked_sub(&xs[j])?;
            if d.is_zero() {
                return Err(Error::CoincidentPoints);
            }
            acc = acc.checked_mul(&d)?;
        }
    }
    Ok(acc)
}

/// Determinant evaluation of the N-variate interpolation polynomial:
/// det[(x_j - q^{N-1}) ... (x_j - q^{-mu_i + i})] / prod_{i<j} (x_i - x_j).
pub fn interp_poly_det(
    mu: &Partition,
    n: usize,
    xs: &[Scalar],
    ctx: &QContext,
) -> Result<Scalar> {
    if n < mu.length() {
        return Err(Error::NTooSmall {
            given: n,
            needed: mu.length(),
        });
    }
    assert_eq!(xs.len(), n, "expected {n} coordinates");
    if n == 0 {
        return Ok(Scalar::one());
    }
    let v = vandermonde(xs)?;
    let mut m = Vec::with_capacity(n);
    for i in 1..=n {
        let lo = i as i64 - mu.part(i) as i64;
        let powers: Vec<Scalar> = (lo..=(n as i64 - 1))
            .map(|e| ctx.q_pow(e).expect("positive q"))
            .collect();
        let row: Vec<Scalar> = xs
            .iter()
            .map(|x| {
                let mut acc = Scalar::one().coerce_like(x)?;
                for p in &powers {
                    acc = acc.checked_mul(&x.checked_sub(&p.coerce_like(x)?)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        m.push(row);
    }
    det(&m)?.checked_div(&v)
}

/// Finite-N Schur-polynomial expansion (the coefficients pick up the
/// N-dependent prefactor (q^N;q)_mu / (q^N;q)_nu).
pub fn interp_poly_expansion(mu: &Partition, n: usize, ctx: &QContext) -> Result<SchurExpansion> {
    if n < mu.length() {
        return Err(Error::NTooSmall {
            given: n,
            needed: mu.length(),
        });
    }
    let qn = ctx.q_pow(n as i64)?;
    let top_poch = poch_diagram(&qn, mu, ctx)?;
    let mut coeffs = BTreeMap::new();
    for nu in mu.subdiagrams() {
        let pref = top_poch.checked_div(&poch_diagram(&qn, &nu, ctx)?)?;
        let c = pref.checked_mul(&sigma(mu, &nu, ctx))?;
        coeffs.insert(nu, c);
    }
    Ok(SchurExpansion::new(coeffs, mu.clone()))
}

/// Tableau-sum evaluation:
/// sum over reverse tableaux T of shape mu with entries <= N of
/// prod over boxes (x_{T(i,j)} - q^{T(i,j) + i - j - 1}).
/// Empty sum (N < ell(mu)) gives 0.
pub fn interp_combinatorial(
    mu: &Partition,
    n: usize,
    xs: &[Scalar],
    ctx: &QContext,
) -> Result<Scalar> {
    assert_eq!(xs.len(), n, "expected {n} coordinates");
    let like = xs.first().cloned().unwrap_or_else(Scalar::one);
    let mut acc = Scalar::zero().coerce_like(&like)?;
    for t in enumerate_reverse_tableaux(mu, n) {
        let mut term = Scalar::one().coerce_like(&like)?;
        for (i, j) in mu.boxes() {
            let e = t.entry(i, j);
            let qp = ctx
                .q_pow(e as i64 + i as i64 - j as i64 - 1)?
                .coerce_like(&like)?;
            term = term.checked_mul(&xs[e - 1].checked_sub(&qp)?)?;
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// Schur polynomial S_{nu|N}(X) as the bialternant ratio
/// det[x_j^{nu_k + N - k}] / prod_{i<j}(x_i - x_j).
/// Returns 0 if ell(nu) > N.
pub fn schur_eval(nu: &Partition, n: usize, xs: &[Scalar]) -> Result<Scalar> {
    assert_eq!(xs.len(), n, "expected {n} coordinates");
    if nu.length() > n {
        return Ok(Scalar::zero());
    }
    if n == 0 {
        return Ok(Scalar::one());
    }
    let v = vandermonde(xs)?;
    let m: Vec<Vec<Scalar>> = (1..=n)
        .map(|k| {
            let e = nu.part(k) as i64 + n as i64 - k as i64;
            xs.iter().map(|x| x.pow_i64(e)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    det(&m)?.checked_div(&v)
}

/// True iff specializing the Nth variable at q^{N-1} maps I_{mu|N} to
/// I_{mu|N-1} on the given N-1 coordinates.
pub fn projection_consistency_check(
    mu: &Partition,
    n: usize,
    xs: &[Scalar],
    ctx: &QContext,
) -> Result<bool> {
    assert!(n >= 1);
    assert_eq!(xs.len(), n - 1);
    let mut extended = xs.to_vec();
    extended.push(ctx.q_pow(n as i64 - 1)?);
    let lhs = interp_poly_det(mu, n, &extended, ctx)?;
    let rhs = interp_poly_det(mu, n - 1, xs, ctx)?;
    Ok(lhs == rhs)
}

/// Monomial-basis coefficients of (x - q^{N-1})(x - q^{N-2}) ... (x - q^{N-m}),
/// ascending degree; coefficient of x^n is
/// (-1)^{m-n} q^{E(m) - E(n)} (q;q)_m / ((q;q)_n (q;q)_{m-n}),
/// where E(t) = N t - t^2/2 - t/2.
pub fn newton_expand(n_vars: i64, m: u32, ctx: &QContext) -> Vec<Scalar> {
    let m = m as i64;
    // 2 E(t) = 2 N t - t^2 - t; the difference of two values is even.
    let e2 = |t: i64| 2 * n_vars * t - t * t - t;
    (0..=m)
        .map(|deg| {
            let sign = if (m - deg) % 2 == 1 {
                -Scalar::one()
            } else {
                Scalar::one()
            };
            let exp = (e2(m) - e2(deg)) / 2;
            let binom = Scalar::one()
                / (poch_recip_q(m, ctx))
                * poch_recip_q(deg, ctx)
                * poch_recip_q(m - deg, ctx);
            sign * ctx.q_pow(exp).expect("positive q") * binom
        })
        .collect()
}

/// A-posteriori bound on the tail of the infinite tableau series for
/// I_mu(X;q), via the majorant coordinates x~_n = |x_n| + q^{n - mu_1}:
/// the omitted mass is at most S_mu(x~) - S_{mu|N}(x~_N), estimated here by
/// extending the alphabet to M >= N coordinates.
pub fn combinatorial_tail_bound(
    mu: &Partition,
    xs: &[Scalar],
    n: usize,
    m: usize,
    ctx: &QContext,
) -> Result<f64> {
    assert!(m >= n && xs.len() >= m);
    let majorant: Vec<Scalar> = (1..=m)
        .map(|i| {
            let a = xs[i - 1].abs_f64();
            let rat = crate::scalar::Rat::from_float(a)
                .unwrap_or_else(|| crate::scalar::Rat::new(0.into(), 1.into()));
            Ok(Scalar::Rat(rat)
                .checked_add(&ctx.q_pow(i as i64 - mu.part(1) as i64)?)?)
        })
        .collect::<Result<_>>()?;
    let s_m = schur_eval(mu, m, &majorant)?;
    let s_n = schur_eval(mu, n, &majorant[..n])?;
    Ok((s_m - s_n).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn ctx(q: Scalar) -> QContext {
        QContext::new(q).unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn s(txt: &str) -> Scalar {
        txt.parse().unwrap()
    }

    /// Pseudo-random distinct rational coordinates (test-local; the verify
    /// module has its own seeded generator).
    fn rand_points(n: usize, salt: u64) -> Vec<Scalar> {
        let mut seed = salt.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        (0..n)
            .map(|i| {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let num = ((seed >> 33) % 40) as i64 - 20;
                Scalar::rat(num * 7 + i as i64 * 97 + 3, 13 + i as i64)
            })
            .collect()
    }

    #[test]
    fn sigma_diagonal_is_one() {
        let c = ctx(s("1/2"));
        for mu in enumerate_partitions(4) {
            assert_eq!(sigma(&mu, &mu, &c), Scalar::one(), "mu = {mu}");
        }
    }

    #[test]
    fn sigma_worked_coefficients() {
        for q in [s("1/2"), s("1/3"), s("2/5")] {
            let c = ctx(q.clone());
            let one = Scalar::one();
            // sigma((2),(1)) = -1/(q(1-q))
            assert_eq!(
                sigma(&p("2"), &p("1"), &c),
                -(&one / (&q * (&one - &q)))
            );
            // sigma((1,1),(1)) = -q/(1-q)
            assert_eq!(sigma(&p("1,1"), &p("1"), &c), -(&q / (&one - &q)));
            // sigma((1,1),()) = q^2/((1-q)(1-q^2))
            let q2 = q.pow_i64(2).unwrap();
            assert_eq!(
                sigma(&p("1,1"), &Partition::empty(), &c),
                &q2 / ((&one - &q) * (&one - &q2))
            );
            // sigma((1),()) = -1/(1-q)
            assert_eq!(
                sigma(&p("1"), &Partition::empty(), &c),
                -(&one / (&one - &q))
            );
            // sigma((2),()) = 1/(q(1-q)(1-q^2))
            assert_eq!(
                sigma(&p("2"), &Partition::empty(), &c),
                &one / (&q * (&one - &q) * (&one - &q2))
            );
        }
    }

    #[test]
    fn sigma_shortcut_agrees_with_raw_determinant() {
        // for nu not contained in mu (with ell(nu) <= ell(mu)) the raw
        // determinant vanishes structurally
        let c = ctx(s("1/2"));
        for mu in enumerate_partitions(4) {
            for nu in enumerate_partitions(4) {
                if nu.length() <= mu.length() && !mu.contains(&nu) {
                    assert_eq!(
                        sigma_determinant(&mu, &nu, &c),
                        Scalar::zero(),
                        "mu={mu} nu={nu}"
                    );
                }
            }
        }
    }

    #[test]
    fn interp_expansion_examples() {
        let q = s("1/2");
        let c = ctx(q.clone());
        let e = interp_expansion(&Partition::empty(), &c);
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&Partition::empty()), Scalar::one());

        let e1 = interp_expansion(&p("1"), &c);
        assert_eq!(e1.coeff(&p("1")), Scalar::one());
        assert_eq!(e1.coeff(&Partition::empty()), s("-2")); // -1/(1-q) at q=1/2
    }

    #[test]
    fn h_norm_examples() {
        let q = s("1/2");
        let c = ctx(q.clone());
        assert_eq!(h_norm(&Partition::empty(), &c), Scalar::one());
        // H((1)) = q^{-1}(1-q)
        assert_eq!(h_norm(&p("1"), &c), s("1"));
        // H((2,1)): exponent 4, hooks {3,1,1}
        let expect = c.q_pow(-4).unwrap()
            * (Scalar::one() - c.q_pow(3).unwrap())
            * (Scalar::one() - c.q_pow(1).unwrap()).pow_i64(2).unwrap();
        assert_eq!(h_norm(&p("2,1"), &c), expect);
        assert_eq!(h_norm(&p("2,1"), &c), s("7/2"));
    }

    #[test]
    fn interp_det_base_cases() {
        let c = ctx(s("1/2"));
        let xs = rand_points(3, 5);
        assert_eq!(
            interp_poly_det(&Partition::empty(), 3, &xs, &c).unwrap(),
            Scalar::one()
        );
        let x = rand_points(1, 7);
        // single factor (x - q^{1-mu_1}) = x - 1; checks out against the
        // vanishing property at the node of the empty partition, X_1(()) = (1)
        assert_eq!(
            interp_poly_det(&p("1"), 1, &x, &c).unwrap(),
            &x[0] - Scalar::one()
        );
    }

    #[test]
    fn interp_det_vanishing_and_nodes() {
        let c = ctx(s("1/2"));
        // at the node of the empty partition, I_(1)|2 vanishes
        let x_empty = Partition::empty().node_vector(2, &c).unwrap();
        assert!(interp_poly_det(&p("1"), 2, &x_empty, &c)
            .unwrap()
            .is_zero());
        // at its own node it equals H((1);q), nonzero
        let x_one = p("1").node_vector(2, &c).unwrap();
        let v = interp_poly_det(&p("1"), 2, &x_one, &c).unwrap();
        assert_eq!(v, h_norm(&p("1"), &c));
    }

    #[test]
    fn coincident_points_error() {
        let c = ctx(s("1/2"));
        let xs = vec![s("1"), s("1")];
        assert_eq!(
            interp_poly_det(&p("1"), 2, &xs, &c),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn finite_expansion_example() {
        // mu=(1), N=2, q=1/2: {(1): 1, (): -(1+q)} = {(1): 1, (): -3/2}
        let c = ctx(s("1/2"));
        let e = interp_poly_expansion(&p("1"), 2, &c).unwrap();
        assert_eq!(e.coeff(&p("1")), Scalar::one());
        assert_eq!(e.coeff(&Partition::empty()), s("-3/2"));
    }

    #[test]
    fn three_representations_agree() {
        let c = ctx(s("1/3"));
        for (mu, n) in [(p("1"), 2), (p("2"), 2), (p("1,1"), 2), (p("2,1"), 3)] {
            for salt in 0..3u64 {
                let xs = rand_points(n, 11 + salt + n as u64);
                let a = interp_poly_det(&mu, n, &xs, &c).unwrap();
                let b = interp_combinatorial(&mu, n, &xs, &c).unwrap();
                let e = interp_poly_expansion(&mu, n, &c).unwrap().eval(n, &xs).unwrap();
                assert_eq!(a, b, "det vs comb, mu={mu} n={n}");
                assert_eq!(a, e, "det vs expansion, mu={mu} n={n}");
            }
        }
    }

    #[test]
    fn combinatorial_single_box() {
        // mu=(1), N=2: (x1 - 1) + (x2 - q)
        let c = ctx(s("1/2"));
        let xs = vec![s("5/3"), s("-2/7")];
        let expect = (&xs[0] - Scalar::one()) + (&xs[1] - c.q());
        assert_eq!(
            interp_combinatorial(&p("1"), 2, &xs, &c).unwrap(),
            expect
        );
    }

    #[test]
    fn combinatorial_below_length_is_zero() {
        let c = ctx(s("1/2"));
        let xs = vec![s("2")];
        assert!(interp_combinatorial(&p("1,1"), 1, &xs, &c)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn schur_eval_cases() {
        let xs = vec![s("1"), s("2"), s("3")];
        assert_eq!(
            schur_eval(&Partition::empty(), 3, &xs).unwrap(),
            Scalar::one()
        );
        assert_eq!(schur_eval(&p("1"), 3, &xs).unwrap(), s("6"));
        // s_{21} = e1 e2 - e3 = 6*11 - 6 = 60
        assert_eq!(schur_eval(&p("2,1"), 3, &xs).unwrap(), s("60"));
        assert!(schur_eval(&p("1,1,1,1"), 3, &xs).unwrap().is_zero());
    }

    #[test]
    fn schur_eval_matches_tableau_sum() {
        // reverse tableaux of shape mu with entries <= N enumerate the same
        // monomials as semistandard tableaux
        let xs = rand_points(3, 23);
        for mu in enumerate_partitions(3) {
            if mu.length() > 3 {
                continue;
            }
            let mut oracle = Scalar::zero();
            for t in enumerate_reverse_tableaux(&mu, 3) {
                let mut term = Scalar::one();
                for (i, j) in mu.boxes() {
                    term = term * &xs[t.entry(i, j) - 1];
                }
                oracle = oracle + term;
            }
            assert_eq!(schur_eval(&mu, 3, &xs).unwrap(), oracle, "mu = {mu}");
        }
    }

    #[test]
    fn projection_consistency_small_sweep() {
        let c = ctx(s("1/2"));
        for mu in enumerate_partitions(3) {
            for n in (mu.length() + 1).max(2)..=4 {
                let xs = rand_points(n - 1, 31 + n as u64);
                assert!(
                    projection_consistency_check(&mu, n, &xs, &c).unwrap(),
                    "mu={mu} n={n}"
                );
            }
        }
    }

    #[test]
    fn newton_expand_cases() {
        let c = ctx(s("1/2"));
        assert_eq!(newton_expand(4, 0, &c), vec![Scalar::one()]);
        // m=1: x - q^{N-1}
        assert_eq!(
            newton_expand(4, 1, &c),
            vec![-c.q_pow(3).unwrap(), Scalar::one()]
        );
        // m=3, N=4: direct polynomial-product oracle
        let coeffs = newton_expand(4, 3, &c);
        let mut oracle = vec![Scalar::one()];
        for e in [3i64, 2, 1] {
            // multiply by (x - q^e)
            let root = c.q_pow(e).unwrap();
            let mut next = vec![Scalar::zero(); oracle.len() + 1];
            for (d, co) in oracle.iter().enumerate() {
                next[d + 1] = next[d + 1].clone() + co;
                next[d] = next[d].clone() - co * &root;
            }
            oracle = next;
        }
        assert_eq!(coeffs, oracle);
    }

    #[test]
    fn stability_of_expansion_coefficients() {
        // coeff of S_nu in I_{mu|N} times (q^N;q)_nu/(q^N;q)_mu == sigma(mu,nu)
        let c = ctx(s("2/5"));
        for mu in enumerate_partitions(3) {
            for n in mu.length().max(1)..=5 {
                let e = interp_poly_expansion(&mu, n, &c).unwrap();
                let qn = c.q_pow(n as i64).unwrap();
                for nu in mu.subdiagrams() {
                    let back = e.coeff(&nu) * poch_diagram(&qn, &nu, &c).unwrap()
                        / poch_diagram(&qn, &mu, &c).unwrap();
                    assert_eq!(back, sigma(&mu, &nu, &c), "mu={mu} nu={nu} n={n}");
                }
            }
        }
    }

    #[test]
    fn expansion_json_round_trip() {
        let c = ctx(s("1/2"));
        let e = interp_expansion(&p("2,1"), &c);
        let v = e.to_json();
        let back = SchurExpansion::from_json(&v).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn tail_bound_shrinks() {
        let c = ctx(s("1/2"));
        let mu = p("2");
        let xs = mu.node_vector(16, &c).unwrap();
        let b1 = combinatorial_tail_bound(&mu, &xs, 4, 16, &c).unwrap();
        let b2 = combinatorial_tail_bound(&mu, &xs, 8, 16, &c).unwrap();
        assert!(b2 < b1 && b2 >= 0.0, "b1={b1} b2={b2}");
    }
}
