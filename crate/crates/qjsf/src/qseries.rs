//! q-Pochhammer symbols (including negative-index and diagram-indexed
//! conventions) and the terminating 3phi2 series.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{Rat, Scalar};

/// A fixed base q, exact rational, strictly inside (0,1).
#[derive(Clone, Debug, PartialEq)]
pub struct QContext {
    q: Rat,
}

impl QContext {
    pub fn new(q: Scalar) -> Result<Self> {
        let r = q
            .as_rat()
            .ok_or(Error::InadmissibleParameters(
                "q must be an exact rational".into(),
            ))?
            .clone();
        if r <= Rat::zero() || r >= Rat::one() {
            return Err(Error::InadmissibleParameters(format!(
                "q = {q} is not strictly inside (0,1)"
            )));
        }
        Ok(QContext { q: r })
    }

    pub fn q(&self) -> Scalar {
        Scalar::Rat(self.q.clone())
    }

    pub fn q_rat(&self) -> &Rat {
        &self.q
    }

    /// q^n for any integer n (exact).
    pub fn q_pow(&self, n: i64) -> Result<Scalar> {
        self.q().pow_i64(n)
    }
}

/// (z;q)_n for any integer n. For n >= 0 this is the finite product
/// prod_{i=1..n} (1 - z q^{i-1}); for n < 0 it is
/// 1 / prod_{i=1..-n} (1 - z q^{n+i-1}), with a pole error when a
/// denominator factor vanishes.
pub fn poch(z: &Scalar, n: i64, ctx: &QContext) -> Result<Scalar> {
    let one = Scalar::one().coerce_like(z)?;
    if n >= 0 {
        let mut acc = one.clone();
        let mut zq = z.clone();
        let q = ctx.q().coerce_like(z)?;
        for _ in 0..n {
            acc = acc * (&one - &zq);
            zq = zq * &q;
        }
        Ok(acc)
    } else {
        let mut acc = one.clone();
        let q = ctx.q().coerce_like(z)?;
        let mut zq = z.checked_mul(&ctx.q_pow(n)?.coerce_like(z)?)?;
        for _ in 0..(-n) {
            let factor = &one - &zq;
            if factor.is_zero() {
                return Err(Error::PoleEncountered);
            }
            acc = acc * factor;
            zq = zq * &q;
        }
        one.checked_div(&acc)
    }
}

/// 1/(q;q)_r with the convention that the value is exactly 0 for
/// r = -1, -2, ... (used by the sigma and rho determinant entries).
pub fn poch_recip_q(r: i64, ctx: &QContext) -> Scalar {
    if r < 0 {
        return Scalar::zero();
    }
    let p = poch(&ctx.q(), r, ctx).expect("(q;q)_r is nonzero for 0<q<1");
    Scalar::one().checked_div(&p).expect("nonzero")
}

/// Diagram-indexed Pochhammer (z;q)_lambda = prod over boxes (i,j) of
/// (1 - z q^{j-i}).
pub fn poch_diagram(z: &Scalar, lam: &Partition, ctx: &QContext) -> Result<Scalar> {
    let one = Scalar::one().coerce_like(z)?;
    let mut acc = one.clone();
    for (i, j) in lam.boxes() {
        let qp = ctx.q_pow(j as i64 - i as i64)?.coerce_like(z)?;
        acc = acc * (&one - &z.checked_mul(&qp)?);
    }
    Ok(acc)
}

/// The terminating series
/// 3phi2(q^{-l}, top2, top3; bot1, bot2; q, q)
/// = sum_{k=0..l} [(q^{-l};q)_k (top2;q)_k (top3;q)_k /
///                 ((bot1;q)_k (bot2;q)_k (q;q)_k)] q^k.
pub fn phi32_terminating(
    l: u32,
    top2: &Scalar,
    top3: &Scalar,
    bot1: &Scalar,
    bot2: &Scalar,
    ctx: &QContext,
) -> Result<Scalar> {
    let q_neg_l = ctx.q_pow(-(l as i64))?;
    let mut acc = Scalar::zero().coerce_like(top2)?;
    for k in 0..=l as i64 {
        let num = poch(&q_neg_l.coerce_like(top2)?, k, ctx)?
            .checked_mul(&poch(top2, k, ctx)?)?
            .checked_mul(&poch(top3, k, ctx)?)?;
        let d1 = poch(bot1, k, ctx)?;
        let d2 = poch(bot2, k, ctx)?;
        if d1.is_zero() || d2.is_zero() {
            return Err(Error::PoleEncountered);
        }
        let den = d1
            .checked_mul(&d2)?
            .checked_mul(&poch(&ctx.q().coerce_like(top2)?, k, ctx)?)?;
        acc = acc + num.checked_div(&den)?.checked_mul(&ctx.q_pow(k)?.coerce_like(top2)?)?;
    }
    Ok(acc)
}
