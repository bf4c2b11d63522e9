//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian
//! rationals (pairs of rationals representing a + bi).
//!
//! All computation in this crate is exact. Rationals are kept in lowest
//! terms with positive denominator (the `num` representation maintains
//! this), and the canonical text forms round-trip losslessly.

use crate::error::{CoreError, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// Exact rational scalar. Lowest terms, positive denominator.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational p/q. Panics if q = 0.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// n/2, the uniform shift appearing in the diagonal oscillator operators.
pub fn half_int(n: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(2))
}

/// Canonical text form of a rational: "p" when integral, else "p/q".
/// Field-level serde adapter rendering rationals as canonical strings.
pub mod rat_serde {
    use super::{parse_rat, rat_string, Rat};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
        rat_string(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub fn rat_string(r: &Rat) -> String {
    r.to_string()
}

/// Parse "p" or "p/q".
pub fn parse_rat(s: &str) -> Result<Rat> {
    s.parse::<Rat>()
        .map_err(|e| CoreError::Parse(format!("bad rational {s:?}: {e}")))
}

/// Scalar coefficients usable in polynomials and operators.
///
/// Implemented by `Rat` and `GaussRat`. Everything is exact; there is no
/// rounding operation anywhere in this trait.
pub trait Scalar:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_int(v: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// Scale by an arbitrary-precision integer (binomials, falling factorials).
    fn mul_big(&self, b: &BigInt) -> Self;
    fn parse_coeff(s: &str) -> Result<Self>;
    /// Text form used inside polynomial terms; `needs_parens` marks forms
    /// that contain an interior sign and must be wrapped when multiplied.
    fn coeff_string(&self) -> String {
        self.to_string()
    }
    fn needs_parens(&self) -> bool {
        false
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_int(v: i64) -> Self {
        rat_int(v)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn mul_big(&self, b: &BigInt) -> Self {
        self * Rat::from_integer(b.clone())
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        parse_rat(s)
    }
}

/// Gaussian rational a + bi, stored as an exact pair.
///
/// Used for highest weight vectors and raising operators expressed in the
/// standard coordinates, where even-rank rotation weights force complex
/// combinations. Arithmetic is componentwise exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }
    pub fn real(re: Rat) -> Self {
        GaussRat {
            re,
            im: Scalar::zero(),
        }
    }
    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: Scalar::zero(),
            im: Scalar::one(),
        }
    }
    pub fn imag(im: Rat) -> Self {
        GaussRat {
            re: Scalar::zero(),
            im,
        }
    }
    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
    pub fn times_i(&self) -> Self {
        GaussRat {
            re: -&self.im,
            im: self.re.clone(),
        }
    }
    pub fn is_real(&self) -> bool {
        Scalar::is_zero(&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one: Rat = Scalar::one();
        if Scalar::is_zero(&self.im) {
            return write!(f, "{}", self.re);
        }
        let imag = |im: &Rat| -> String {
            if *im == one {
                "i".to_string()
            } else if *im == -&one {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        };
        if Scalar::is_zero(&self.re) {
            return write!(f, "{}", imag(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}", self.re, imag(&(-&self.im)))
        } else {
            write!(f, "{}+{}", self.re, imag(&self.im))
        }
    }
}

impl Scalar for GaussRat {
    fn zero() -> Self {
        GaussRat::real(Scalar::zero())
    }
    fn one() -> Self {
        GaussRat::real(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.re) && Scalar::is_zero(&self.im)
    }
    fn add_ref(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        GaussRat {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
    fn neg_ref(&self) -> Self {
        GaussRat {
            re: -&self.re,
            im: -&self.im,
        }
    }
    fn from_int(v: i64) -> Self {
        GaussRat::real(rat_int(v))
    }
    fn from_rat(r: &Rat) -> Self {
        GaussRat::real(r.clone())
    }
    fn mul_big(&self, b: &BigInt) -> Self {
        let s = Rat::from_integer(b.clone());
        GaussRat {
            re: &self.re * &s,
            im: &self.im * &s,
        }
    }
    fn parse_coeff(s: &str) -> Result<Self> {
        parse_gauss(s)
    }
    fn needs_parens(&self) -> bool {
        !Scalar::is_zero(&self.re) && !Scalar::is_zero(&self.im)
    }
}

/// Parse the canonical Gaussian forms: "p/q", "i", "-i", "3i", "-1/2i",
/// "a+bi", "a-bi".
pub fn parse_gauss(s: &str) -> Result<GaussRat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CoreError::Parse("empty coefficient".into()));
    }
    let imag_part = |t: &str| -> Result<Rat> {
        match t {
            "" | "+" => Ok(<Rat as Scalar>::one()),
            "-" => Ok(-<Rat as Scalar>::one()),
            _ => parse_rat(t),
        }
    };
    if let Some(body) = s.strip_suffix('i') {
        // Split an interior sign; position 0 is the sign of the whole value.
        if let Some(pos) = (body.len() > 1)
            .then(|| body[1..].find(['+', '-']).map(|p| p + 1))
            .flatten()
        {
            let re = parse_rat(&body[..pos])?;
            let sign = &body[pos..pos + 1];
            let rest = &body[pos + 1..];
            let mut im = imag_part(rest)?;
            if sign == "-" {
                im = -im;
            }
            return Ok(GaussRat::new(re, im));
        }
        return Ok(GaussRat::new(Scalar::zero(), imag_part(body)?));
    }
    Ok(GaussRat::real(parse_rat(s)?))
}
