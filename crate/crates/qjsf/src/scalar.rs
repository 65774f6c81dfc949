//! Exact coefficient-field arithmetic shared by all other modules.
//!
//! A [`Scalar`] is a rational, a Gaussian rational, or an arbitrary-precision
//! binary float (real or complex). Exact kinds never silently degrade to
//! floats; mixing the two families is an error unless an explicit conversion
//! is requested via [`Scalar::to_float`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type CRat = Complex<BigRational>;
/// Binary big float with round-half-even semantics.
pub type Mpf = dashu_float::FBig;

/// Default precision (in bits) for the float mode.
pub const DEFAULT_FLOAT_BITS: usize = 256;

#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(Rat),
    Gauss(CRat),
    Float(Mpf),
    FloatC(Mpf, Mpf),
}

fn bigint_to_mpf(n: &BigInt, bits: usize) -> Mpf {
    let s = n.to_str_radix(16);
    let i = dashu_int::IBig::from_str_radix(&s, 16).expect("radix-16 round trip");
    Mpf::from(i).with_precision(bits).value()
}

pub fn rat_to_mpf(r: &Rat, bits: usize) -> Mpf {
    bigint_to_mpf(r.numer(), bits) / bigint_to_mpf(r.denom(), bits)
}

pub fn mpf_to_f64(x: &Mpf) -> f64 {
    x.to_f64().value()
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rat::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn rat(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn gauss(re: Rat, im: Rat) -> Self {
        Scalar::Gauss(Complex::new(re, im)).simplify()
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Rat(r)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rat(_) | Scalar::Gauss(_))
    }

    pub fn is_float(&self) -> bool {
        !self.is_exact()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gauss(c) => c.re.is_zero() && c.im.is_zero(),
            Scalar::Float(f) => f.repr().is_zero(),
            Scalar::FloatC(re, im) => re.repr().is_zero() && im.repr().is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gauss(c) => c.re.is_one() && c.im.is_zero(),
            Scalar::Float(f) => mpf_to_f64(f) == 1.0 && (f - Mpf::ONE).repr().is_zero(),
            Scalar::FloatC(re, im) => Scalar::Float(re.clone()).is_one() && im.repr().is_zero(),
        }
    }

    /// Demote a Gaussian with zero imaginary part to a plain rational
    /// (and a complex float to a real float).
    pub fn simplify(self) -> Self {
        match self {
            Scalar::Gauss(c) if c.im.is_zero() => Scalar::Rat(c.re),
            Scalar::FloatC(re, im) if im.repr().is_zero() => Scalar::Float(re),
            other => other,
        }
    }

    pub fn re(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.clone()),
            Scalar::Gauss(c) => Scalar::Rat(c.re.clone()),
            Scalar::Float(f) => Scalar::Float(f.clone()),
            Scalar::FloatC(re, _) => Scalar::Float(re.clone()),
        }
    }

    pub fn im(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::zero(),
            Scalar::Gauss(c) => Scalar::Rat(c.im.clone()),
            Scalar::Float(f) => Scalar::Float(f.clone() - f),
            Scalar::FloatC(_, im) => Scalar::Float(im.clone()),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rat(_) | Scalar::Float(_) => self.clone(),
            Scalar::Gauss(c) => Scalar::Gauss(c.conj()),
            Scalar::FloatC(re, im) => Scalar::FloatC(re.clone(), -im.clone()),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im().is_zero()
    }

    /// Exact rational value, if this scalar is one.
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Convert to the float family at the given precision.
    pub fn to_float(&self, bits: usize) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Float(rat_to_mpf(r, bits)),
            Scalar::Gauss(c) => {
                Scalar::FloatC(rat_to_mpf(&c.re, bits), rat_to_mpf(&c.im, bits)).simplify()
            }
            Scalar::Float(f) => Scalar::Float(f.clone().with_precision(bits).value()),
            Scalar::FloatC(re, im) => Scalar::FloatC(
                re.clone().with_precision(bits).value(),
                im.clone().with_precision(bits).value(),
            ),
        }
    }

    /// Coerce `self` into the family of `like` (exact values convert to
    /// floats of matching precision; floats never convert back).
    pub fn coerce_like(&self, like: &Scalar) -> Result<Scalar> {
        match (self.is_exact(), like.is_exact()) {
            (true, true) => Ok(self.clone()),
            (true, false) => {
                let bits = like.precision_bits().max(53);
                Ok(self.to_float(bits))
            }
            (false, false) => Ok(self.clone()),
            (false, true) => Err(Error::IncompatibleKinds("float cannot coerce to exact")),
        }
    }

    fn precision_bits(&self) -> usize {
        match self {
            Scalar::Float(f) => f.precision(),
            Scalar::FloatC(re, im) => re.precision().max(im.precision()),
            _ => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Gauss(c) => c.re.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(f) => mpf_to_f64(f),
            Scalar::FloatC(re, _) => mpf_to_f64(re),
        }
    }

    /// |self| as f64, for pivot selection and diagnostics.
    pub fn abs_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64().map(f64::abs).unwrap_or(f64::INFINITY),
            Scalar::Gauss(c) => {
                let re = c.re.to_f64().unwrap_or(f64::INFINITY);
                let im = c.im.to_f64().unwrap_or(f64::INFINITY);
                re.abs() + im.abs()
            }
            Scalar::Float(f) => mpf_to_f64(f).abs(),
            Scalar::FloatC(re, im) => mpf_to_f64(re).abs() + mpf_to_f64(im).abs(),
        }
    }

    fn promote_pair(a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar)> {
        use Scalar::*;
        match (a, b) {
            (Rat(_), Rat(_))
            | (Gauss(_), Gauss(_))
            | (Float(_), Float(_))
            | (FloatC(_, _), FloatC(_, _)) => Ok((a.clone(), b.clone())),
            (Rat(r), Gauss(_)) => Ok((Gauss(Complex::new(r.clone(), Zero::zero())), b.clone())),
            (Gauss(_), Rat(r)) => Ok((a.clone(), Gauss(Complex::new(r.clone(), Zero::zero())))),
            (Float(f), FloatC(_, _)) => {
                let z = f - f;
                Ok((FloatC(f.clone(), z), b.clone()))
            }
            (FloatC(_, _), Float(f)) => {
                let z = f - f;
                Ok((a.clone(), FloatC(f.clone(), z)))
            }
            _ => Err(Error::IncompatibleKinds(
                "exact and float operands cannot mix implicitly",
            )),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        use Scalar::*;
        Ok(match Scalar::promote_pair(self, rhs)? {
            (Rat(a), Rat(b)) => Rat(a + b),
            (Gauss(a), Gauss(b)) => Gauss(a + b),
            (Float(a), Float(b)) => Float(a + b),
            (FloatC(ar, ai), FloatC(br, bi)) => FloatC(ar + br, ai + bi),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        use Scalar::*;
        Ok(match Scalar::promote_pair(self, rhs)? {
            (Rat(a), Rat(b)) => Rat(a - b),
            (Gauss(a), Gauss(b)) => Gauss(a - b),
            (Float(a), Float(b)) => Float(a - b),
            (FloatC(ar, ai), FloatC(br, bi)) => FloatC(ar - br, ai - bi),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        use Scalar::*;
        Ok(match Scalar::promote_pair(self, rhs)? {
            (Rat(a), Rat(b)) => Rat(a * b),
            (Gauss(a), Gauss(b)) => Gauss(a * b),
            (Float(a), Float(b)) => Float(a * b),
            (FloatC(ar, ai), FloatC(br, bi)) => FloatC(
                ar.clone() * &br - ai.clone() * &bi,
                ar * bi + ai * br,
            ),
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        use Scalar::*;
        if rhs.is_exact() && rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match Scalar::promote_pair(self, rhs)? {
            (Rat(a), Rat(b)) => Rat(a / b),
            (Gauss(a), Gauss(b)) => Gauss(a / b),
            (Float(a), Float(b)) => Float(a / b),
            (FloatC(ar, ai), FloatC(br, bi)) => {
                let den = br.clone() * &br + bi.clone() * &bi;
                FloatC(
                    (ar.clone() * &br + ai.clone() * &bi) / &den,
                    (ai * br - ar * bi) / &den,
                )
            }
            _ => unreachable!(),
        })
    }

    /// Integer power; negative exponents invert (error on exact zero base).
    pub fn pow_i64(&self, n: i64) -> Result<Scalar> {
        if n == 0 {
            return Ok(match self {
                Scalar::Float(f) => Scalar::Float((f - f) + Mpf::ONE),
                Scalar::FloatC(re, _) => Scalar::Float((re - re) + Mpf::ONE),
                _ => Scalar::one(),
            });
        }
        let base = if n < 0 {
            self.pow_i64(0)?.checked_div(self)?
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = base.pow_i64(0)?;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq.clone())?;
            }
        }
        Ok(acc)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match Scalar::promote_pair(self, other) {
            Ok((Scalar::Rat(a), Scalar::Rat(b))) => a == b,
            Ok((Scalar::Gauss(a), Scalar::Gauss(b))) => a == b,
            Ok((Scalar::Float(a), Scalar::Float(b))) => (a - b).repr().is_zero(),
            Ok((Scalar::FloatC(ar, ai), Scalar::FloatC(br, bi))) => {
                (&ar - &br).repr().is_zero() && (&ai - &bi).repr().is_zero()
            }
            _ => false,
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar arithmetic")
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar arithmetic")
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);
impl_binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::zero()
            .coerce_like(&self)
            .expect("neg")
            .checked_sub(&self)
            .expect("neg")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Gauss(c) => {
                if c.im.is_negative() {
                    write!(f, "{}-{}i", fmt_rat(&c.re), fmt_rat(&-c.im.clone()))
                } else {
                    write!(f, "{}+{}i", fmt_rat(&c.re), fmt_rat(&c.im))
                }
            }
            Scalar::Float(x) => write!(f, "{:e}", x.to_f64().value()),
            Scalar::FloatC(re, im) => write!(
                f,
                "{:e}{}{:e}i",
                re.to_f64().value(),
                if im.to_f64().value() < 0.0 { "" } else { "+" },
                im.to_f64().value()
            ),
        }
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rat::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses "p/q", "p", and Gaussian literals of the form "a/b+c/di"
    /// (either part optional, signs allowed).
    fn from_str(s: &str) -> Result<Scalar> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        if let Some(body) = s.strip_suffix('i') {
            // Find the sign that separates the real and imaginary parts.
            let split = body
                .char_indices()
                .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
                .map(|(i, _)| i)
                .next_back();
            let (re_str, im_str) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let im = match im_str {
                "" | "+" => Rat::one(),
                "-" => -Rat::one(),
                _ => parse_rat(im_str)?,
            };
            let re = if re_str.is_empty() {
                Rat::zero()
            } else {
                parse_rat(re_str)?
            };
            Ok(Scalar::gauss(re, im))
        } else {
            Ok(Scalar::Rat(parse_rat(&s)?))
        }
    }
}

/// Exact (or partially pivoted, in float mode) determinant of a square
/// matrix of scalars. The empty matrix has determinant 1.
pub fn det(matrix: &[Vec<Scalar>]) -> Result<Scalar> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(Error::IncompatibleKinds("matrix is not square"));
        }
    }
    if n == 0 {
        return Ok(Scalar::one());
    }
    // Promote everything to a common kind.
    let mut kind = matrix[0][0].clone();
    for row in matrix {
        for e in row {
            let (_, k) = Scalar::promote_pair(e, &kind)?;
            kind = k;
        }
    }
    let mut m: Vec<Vec<Scalar>> = matrix
        .iter()
        .map(|row| row.iter().map(|e| e.coerce_like(&kind).map(|v| Scalar::promote_pair(&v, &kind).map(|p| p.0)).and_then(|r| r)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let float_mode = kind.is_float();

    let mut sign = false;
    let mut acc = Scalar::one().coerce_like(&kind)?;
    for col in 0..n {
        // Pivot selection: first nonzero (exact) or largest magnitude (float).
        let pivot = if float_mode {
            (col..n)
                .max_by(|&a, &b| {
                    m[a][col]
                        .abs_f64()
                        .partial_cmp(&m[b][col].abs_f64())
                        .unwrap_or(Ordering::Equal)
                })
                .filter(|&r| !m[r][col].is_zero())
        } else {
            (col..n).find(|&r| !m[r][col].is_zero())
        };
        let Some(p) = pivot else {
            return Ok(Scalar::zero().coerce_like(&kind)?);
        };
        if p != col {
            m.swap(p, col);
            sign = !sign;
        }
        let piv = m[col][col].clone();
        acc = acc.checked_mul(&piv)?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].checked_div(&piv)?;
            for c in col..n {
                let delta = factor.checked_mul(&m[col][c])?;
                m[r][c] = m[r][c].checked_sub(&delta)?;
            }
        }
    }
    if sign {
        acc = -acc;
    }
    Ok(acc)
}
