//! Scalar fields used throughout the crate.
//!
//! Every computation runs in exactly one [`Mode`]: exact arbitrary-precision
//! rationals, or 64-bit binary floats. The [`Scalar`] trait is the seam
//! between the two; algebra and geometry code is written once, generically.

use std::fmt::{self, Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use dashu_base::SquareRoot;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use num_integer::Integer;
use num_traits::{Num, One, Signed};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = RBig;

/// Arithmetic mode of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!(
                "unknown mode `{other}` (expected `exact` or `float`)"
            )),
        }
    }
}

/// A real scalar: either [`Rational`] or `f64`.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` for exact arithmetic.
    const EXACT: bool;
    const MODE: Mode;

    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    /// Square root. Exact scalars only have one when numerator and
    /// denominator are both perfect squares.
    fn sqrt(&self) -> Option<Self>;

    /// Parses the textual form produced by `Display`.
    fn parse_coeff(s: &str) -> Option<Self>;

    /// A random coefficient bounded by `magnitude` (numerator and denominator
    /// for rationals, absolute value for floats).
    fn random_coeff<R: Rng + ?Sized>(rng: &mut R, magnitude: u32) -> Self;

    /// A random unit vector of `dim` coordinates. Exact scalars use the
    /// rational stereographic parametrization, so the result is exactly unit.
    fn random_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize, magnitude: u32) -> Vec<Self>;

    /// A random point `(c, s)` with `c, s > 0` and `c² + s² = 1`.
    fn random_quarter<R: Rng + ?Sized>(rng: &mut R, magnitude: u32) -> (Self, Self);

    /// `Σ signs[i·n + j]·aᵢbⱼ` accumulated into coordinate `i ⊕ j`, for
    /// operands of length `n`. This is the shape of every Cayley–Dickson
    /// product; rationals override it with integer arithmetic.
    fn signed_xor_product(a: &[Self], b: &[Self], signs: &[i8]) -> Vec<Self> {
        signed_xor_generic(a, b, signs)
    }

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const MODE: Mode = Mode::Exact;

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let num = if den < 0 {
            -IBig::from(num)
        } else {
            IBig::from(num)
        };
        Rational::from_parts(num, UBig::from(den.unsigned_abs()))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        RBig::to_f64(self).value()
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(&UBig::try_from(self.numerator().clone()).ok()?)?;
        let d = exact_isqrt(self.denominator())?;
        Some(Rational::from_parts(n.into(), d))
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n = IBig::from_str(n.trim()).ok()?;
        let d = UBig::from_str(d.trim()).ok()?;
        (!d.is_zero()).then(|| Rational::from_parts(n, d))
    }

    fn random_coeff<R: Rng + ?Sized>(rng: &mut R, magnitude: u32) -> Self {
        let m = i64::from(magnitude.max(1));
        let num = rng.random_range(-m..=m);
        let den = rng.random_range(1..=m);
        Self::from_ratio(num, den)
    }

    fn random_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize, magnitude: u32) -> Vec<Self> {
        if dim == 0 {
            return Vec::new();
        }
        if dim == 1 {
            return vec![if rng.random::<bool>() {
                Self::one()
            } else {
                -Self::one()
            }];
        }
        let y: Vec<Self> = (0..dim - 1)
            .map(|_| Self::random_coeff(rng, magnitude))
            .collect();
        let mut point = stereographic(&y);
        if rng.random::<bool>() {
            point[0] = -point[0].clone();
        }
        point
    }

    fn random_quarter<R: Rng + ?Sized>(rng: &mut R, magnitude: u32) -> (Self, Self) {
        let m = i64::from(magnitude.max(2));
        let den = rng.random_range(2..=m);
        let num = rng.random_range(1..den);
        quarter_from_tangent(&Self::from_ratio(num, den))
    }

    fn signed_xor_product(a: &[Self], b: &[Self], signs: &[i8]) -> Vec<Self> {
        signed_xor_scaled(a, b, signs).unwrap_or_else(|| signed_xor_generic(a, b, signs))
    }
}

fn signed_xor_generic<S: Scalar>(a: &[S], b: &[S], signs: &[i8]) -> Vec<S> {
    let n = a.len();
    let mut out = vec![S::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let term = x.clone() * y.clone();
            let slot = &mut out[i ^ j];
            if signs[i * n + j] > 0 {
                *slot = slot.clone() + term;
            } else {
                *slot = slot.clone() - term;
            }
        }
    }
    out
}

/// `a` as integer numerators over a common positive denominator, when
/// everything fits in `i128`.
fn scaled(a: &[Rational]) -> Option<(Vec<i128>, i128)> {
    let parts = a
        .iter()
        .map(|x| {
            Some((
                i128::try_from(x.numerator()).ok()?,
                i128::try_from(x.denominator()).ok()?,
            ))
        })
        .collect::<Option<Vec<_>>>()?;
    let den = parts
        .iter()
        .try_fold(1i128, |l, &(_, d)| (l / l.gcd(&d)).checked_mul(d))?;
    let nums = parts
        .iter()
        .map(|&(n, d)| n.checked_mul(den / d))
        .collect::<Option<Vec<_>>>()?;
    Some((nums, den))
}

/// The integer kernel of [`signed_xor_generic`]: one reduction per output
/// coordinate instead of one per term. `None` on `i128` overflow.
fn signed_xor_scaled(a: &[Rational], b: &[Rational], signs: &[i8]) -> Option<Vec<Rational>> {
    let (an, ad) = scaled(a)?;
    let (bn, bd) = scaled(b)?;
    let den = ad.checked_mul(bd)?;
    let n = a.len();
    let mut acc = vec![0i128; n];
    for (i, &x) in an.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in bn.iter().enumerate() {
            let term = x.checked_mul(y)?;
            let slot = &mut acc[i ^ j];
            *slot = if signs[i * n + j] > 0 {
                slot.checked_add(term)?
            } else {
                slot.checked_sub(term)?
            };
        }
    }
    Some(
        acc.into_iter()
            .map(|c| {
                let g = c.gcd(&den);
                Rational::from_parts(IBig::from(c / g), UBig::from((den / g) as u128))
            })
            .collect(),
    )
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const MODE: Mode = Mode::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        RBig::to_f64(r).value()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }

    fn parse_coeff(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn random_coeff<R: Rng + ?Sized>(rng: &mut R, magnitude: u32) -> Self {
        let m = f64::from(magnitude.max(1));
        rng.random_range(-m..=m)
    }

    fn random_unit<R: Rng + ?Sized>(rng: &mut R, dim: usize, _magnitude: u32) -> Vec<Self> {
        if dim == 0 {
            return Vec::new();
        }
        if dim == 1 {
            return vec![if rng.random::<bool>() { 1.0 } else { -1.0 }];
        }
        loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-6 {
                return v.into_iter().map(|x| x / n).collect();
            }
        }
    }

    fn random_quarter<R: Rng + ?Sized>(rng: &mut R, _magnitude: u32) -> (Self, Self) {
        let angle = rng.random_range(1e-6..std::f64::consts::FRAC_PI_2 - 1e-6);
        (angle.cos(), angle.sin())
    }
}

fn exact_isqrt(n: &UBig) -> Option<UBig> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Inverse stereographic projection `y ↦ ((1 − |y|²)/(1 + |y|²), 2y/(1 + |y|²))`.
///
/// Maps rational vectors to rational points of the unit sphere one dimension
/// up; the origin goes to the pole `(1, 0, …, 0)`.
pub fn stereographic<S: Scalar>(y: &[S]) -> Vec<S> {
    let sq = norm_sq(y);
    let den = S::one() + sq.clone();
    let two = S::one() + S::one();
    let mut out = Vec::with_capacity(y.len() + 1);
    out.push((S::one() - sq) / den.clone());
    out.extend(y.iter().map(|c| two.clone() * c.clone() / den.clone()));
    out
}

/// The point `(cos θ, sin θ)` with `tan(θ/2) = t`. For `0 ≤ t ≤ 1` it lies on the
/// quarter circle; `t = 0` gives `(1, 0)` and `t = 1` gives `(0, 1)`.
pub fn quarter_from_tangent<S: Scalar>(t: &S) -> (S, S) {
    let p = stereographic(std::slice::from_ref(t));
    (p[0].clone(), p[1].clone())
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn norm_sq<S: Scalar>(a: &[S]) -> S {
    dot(a, a)
}

pub fn scale<S: Scalar>(k: &S, a: &[S]) -> Vec<S> {
    a.iter().map(|x| k.clone() * x.clone()).collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn neg<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -x.clone()).collect()
}

/// Largest absolute coordinate difference, as a float. Vectors of different
/// length are infinitely far apart.
pub fn residual<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x.clone() - y.clone()).abs_value().to_f64())
        .fold(0.0, f64::max)
}

/// Equality in the scalar's own sense: exact equality for rationals, maximum
/// coordinate deviation at most `tolerance` for floats.
pub fn agrees<S: Scalar>(a: &[S], b: &[S], tolerance: f64) -> bool {
    if S::EXACT {
        a == b
    } else {
        residual(a, b) <= tolerance
    }
}

/// Whether a scalar is zero: exactly for rationals, below `threshold` in
/// absolute value for floats.
pub fn negligible<S: Scalar>(x: &S, threshold: f64) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.to_f64().abs() < threshold
    }
}

pub fn to_strings<S: Scalar>(a: &[S]) -> Vec<String> {
    a.iter().map(ToString::to_string).collect()
}
