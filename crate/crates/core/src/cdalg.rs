//! The Cayley–Dickson tower ℝ, ℂ, ℍ, 𝕆, 𝕊, … and its property ladder.
//!
//! A level-`n` element is a vector of `2ⁿ` scalars, basis element `e₀ = 1`
//! first. Doubling is
//!
//! ```text
//! (a, b)(c, d) = (ac − db*,  a*d + cb)      1 = (1, 0)      (a, b)* = (a*, −b)
//! ```
//!
//! with the first half of the coefficient vector as `a` and the second half
//! as `b`. Under this convention the quaternion units satisfy `e₁e₂ = −e₃`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{cartesian_power, CheckConfig, Evaluation, LawCheck, LawReport};
use crate::scalar::{self, Rational, Scalar};

/// Highest level the law suites accept unless configured otherwise.
pub const DEFAULT_MAX_LEVEL: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },
    #[error("coefficient count {0} is not a power of two")]
    BadLength(usize),
    #[error("not invertible: norm is zero")]
    NotInvertible,
    #[error("level {level} exceeds the configured maximum {max}")]
    LevelTooHigh { level: u32, max: u32 },
}

/// Multiplies two coefficient vectors of equal power-of-two length.
///
/// Products of basis vectors are `eᵢeⱼ = ±e_{i⊕j}`, so the product is
/// evaluated from a table of those signs, itself read off
/// [`mul_doubling`]; above [`TABLE_LEVELS`] the doubling is used directly.
pub fn mul_coeffs<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    assert_eq!(a.len(), b.len(), "Cayley-Dickson operands differ in length");
    match sign_table(a.len()) {
        Some(signs) => S::signed_xor_product(a, b, signs),
        None => mul_doubling(a, b),
    }
}

/// The doubling formula applied recursively.
pub fn mul_doubling<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    assert_eq!(a.len(), b.len(), "Cayley-Dickson operands differ in length");
    let n = a.len();
    if n == 1 {
        return vec![a[0].clone() * b[0].clone()];
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let left = scalar::sub(&mul_doubling(a0, b0), &mul_doubling(b1, &conj_coeffs(a1)));
    let right = scalar::add(&mul_doubling(&conj_coeffs(a0), b1), &mul_doubling(b0, a1));
    let mut out = left;
    out.extend(right);
    out
}

/// Levels whose basis sign tables are cached.
pub const TABLE_LEVELS: u32 = 6;

static SIGN_TABLES: [OnceLock<Vec<i8>>; TABLE_LEVELS as usize + 1] =
    [const { OnceLock::new() }; TABLE_LEVELS as usize + 1];

/// `signs[i·n + j]` with `eᵢeⱼ = signs[i·n + j]·e_{i⊕j}`, for length `n`.
fn sign_table(n: usize) -> Option<&'static [i8]> {
    let level = level_of(n)?;
    let cell = SIGN_TABLES.get(level as usize)?;
    Some(cell.get_or_init(|| {
        let basis = |i: usize| {
            let mut v = vec![0.0f64; n];
            v[i] = 1.0;
            v
        };
        let mut signs = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = mul_doubling(&basis(i), &basis(j));
                let k = p
                    .iter()
                    .position(|x| *x != 0.0)
                    .expect("basis products are nonzero");
                assert_eq!(k, i ^ j, "e{i}e{j} lands on e{k}");
                signs[i * n + j] = p[k] as i8;
            }
        }
        signs
    }))
}

/// Conjugates a coefficient vector: `(a, b)* = (a*, −b)`, identity on scalars.
pub fn conj_coeffs<S: Scalar>(a: &[S]) -> Vec<S> {
    if a.len() == 1 {
        return a.to_vec();
    }
    let (a0, a1) = a.split_at(a.len() / 2);
    let mut out = conj_coeffs(a0);
    out.extend(scalar::neg(a1));
    out
}

/// Level of a coefficient vector, if its length is a power of two.
pub fn level_of(len: usize) -> Option<u32> {
    len.is_power_of_two().then(|| len.trailing_zeros())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CdElement<S> {
    level: u32,
    coeffs: Vec<S>,
}

impl<S: Scalar> CdElement<S> {
    pub fn new(level: u32, coeffs: Vec<S>) -> Result<Self, CdError> {
        if coeffs.len() != 1usize << level {
            return Err(CdError::BadLength(coeffs.len()));
        }
        Ok(Self { level, coeffs })
    }

    /// Builds an element, inferring the level from the coefficient count.
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self, CdError> {
        let level = level_of(coeffs.len()).ok_or(CdError::BadLength(coeffs.len()))?;
        Ok(Self { level, coeffs })
    }

    pub fn zero(level: u32) -> Self {
        Self {
            level,
            coeffs: vec![S::zero(); 1 << level],
        }
    }

    pub fn one(level: u32) -> Self {
        Self::basis(level, 0)
    }

    /// The basis element `eᵢ`.
    pub fn basis(level: u32, i: usize) -> Self {
        let mut e = Self::zero(level);
        e.coeffs[i] = S::one();
        e
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn real_part(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Whether this element is the multiplicative unit.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.is_real()
    }

    /// Whether every non-`e₀` coefficient vanishes.
    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &S) -> Self {
        Self {
            level: self.level,
            coeffs: scalar::scale(k, &self.coeffs),
        }
    }

    fn check_level(&self, other: &Self) -> Result<(), CdError> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(CdError::LevelMismatch {
                left: self.level,
                right: other.level,
            })
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, CdError> {
        self.check_level(rhs)?;
        Ok(Self {
            level: self.level,
            coeffs: mul_coeffs(&self.coeffs, &rhs.coeffs),
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, CdError> {
        self.check_level(rhs)?;
        Ok(Self {
            level: self.level,
            coeffs: scalar::add(&self.coeffs, &rhs.coeffs),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, CdError> {
        self.check_level(rhs)?;
        Ok(Self {
            level: self.level,
            coeffs: scalar::sub(&self.coeffs, &rhs.coeffs),
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            level: self.level,
            coeffs: conj_coeffs(&self.coeffs),
        }
    }

    /// `‖a‖ = aa*`, a real number equal to the sum of squared coefficients.
    ///
    /// # Panics
    ///
    /// If `aa*` has a non-real component, which would mean the
    /// multiplication kernel is broken.
    pub fn norm(&self) -> S {
        let p = mul_coeffs(&self.coeffs, &conj_coeffs(&self.coeffs));
        let bound = 1e-9 * (1.0 + p[0].to_f64().abs());
        assert!(
            p[1..].iter().all(|c| scalar::negligible(c, bound)),
            "aa* is not real: {p:?}"
        );
        p[0].clone()
    }

    /// `a⁻¹ = a*/‖a‖`. Only a two-sided inverse where the algebra is a
    /// division algebra.
    pub fn inverse(&self) -> Result<Self, CdError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(CdError::NotInvertible);
        }
        let k = S::one() / n;
        Ok(self.conj().scale(&k))
    }

    /// `(ab)c − a(bc)`.
    pub fn associator(a: &Self, b: &Self, c: &Self) -> Result<Self, CdError> {
        a.checked_mul(b)?
            .checked_mul(c)?
            .checked_sub(&a.checked_mul(&b.checked_mul(c)?)?)
    }

    /// `ab − ba`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, CdError> {
        a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
    }

    pub fn to_f64(&self) -> CdElement<f64> {
        CdElement {
            level: self.level,
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for CdElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// Operator forms panic on level mismatch; use the `checked_*` methods when the
// levels are not known to agree.
impl<S: Scalar> Mul for &CdElement<S> {
    type Output = CdElement<S>;
    fn mul(self, rhs: Self) -> CdElement<S> {
        self.checked_mul(rhs).expect("level mismatch in product")
    }
}

impl<S: Scalar> Add for &CdElement<S> {
    type Output = CdElement<S>;
    fn add(self, rhs: Self) -> CdElement<S> {
        self.checked_add(rhs).expect("level mismatch in sum")
    }
}

impl<S: Scalar> Sub for &CdElement<S> {
    type Output = CdElement<S>;
    fn sub(self, rhs: Self) -> CdElement<S> {
        self.checked_sub(rhs).expect("level mismatch in difference")
    }
}

impl<S: Scalar> Neg for &CdElement<S> {
    type Output = CdElement<S>;
    fn neg(self) -> CdElement<S> {
        CdElement {
            level: self.level,
            coeffs: scalar::neg(&self.coeffs),
        }
    }
}

/// The algebraic laws tracked along the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CdLaw {
    /// `a* = a`
    Realness,
    /// `ab = ba`
    Commutativity,
    /// `(ab)c = a(bc)`
    Associativity,
    /// `(xx)y = x(xy)` and `(xy)y = x(yy)`
    Alternativity,
    /// `a + a*` real, `aa* = a*a`, and `aa* > 0` for `a ≠ 0`
    NicelyNormed,
    /// `‖ab‖ = ‖a‖‖b‖`
    NormMultiplicativity,
    /// `(ab)* = b*a*`
    StarAntihomomorphism,
    /// `a** = a` and `1* = 1`
    StarInvolution,
}

impl CdLaw {
    pub const ALL: [CdLaw; 8] = [
        CdLaw::Realness,
        CdLaw::Commutativity,
        CdLaw::Associativity,
        CdLaw::Alternativity,
        CdLaw::NicelyNormed,
        CdLaw::NormMultiplicativity,
        CdLaw::StarAntihomomorphism,
        CdLaw::StarInvolution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CdLaw::Realness => "realness",
            CdLaw::Commutativity => "commutativity",
            CdLaw::Associativity => "associativity",
            CdLaw::Alternativity => "alternativity",
            CdLaw::NicelyNormed => "nicely-normed",
            CdLaw::NormMultiplicativity => "norm-multiplicativity",
            CdLaw::StarAntihomomorphism => "star-antihomomorphism",
            CdLaw::StarInvolution => "star-involution",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            CdLaw::Realness | CdLaw::NicelyNormed | CdLaw::StarInvolution => 1,
            CdLaw::Commutativity
            | CdLaw::Alternativity
            | CdLaw::NormMultiplicativity
            | CdLaw::StarAntihomomorphism => 2,
            CdLaw::Associativity => 3,
        }
    }

    /// Whether the law holds at the given level of the tower.
    pub fn holds_at(self, level: u32) -> bool {
        match self {
            CdLaw::Realness => level == 0,
            CdLaw::Commutativity => level <= 1,
            CdLaw::Associativity => level <= 2,
            CdLaw::Alternativity | CdLaw::NormMultiplicativity => level <= 3,
            CdLaw::NicelyNormed | CdLaw::StarAntihomomorphism | CdLaw::StarInvolution => true,
        }
    }

    /// Evaluates both sides of the law on `args` (which must have
    /// [`arity`](Self::arity) elements of one level).
    pub fn evaluate<S: Scalar>(self, args: &[CdElement<S>]) -> Evaluation<S> {
        let inputs = args.iter().map(|a| a.coeffs.clone()).collect();
        let (lhs, rhs) = match self {
            CdLaw::Realness => (args[0].conj().coeffs, args[0].coeffs.clone()),
            CdLaw::Commutativity => {
                let (a, b) = (&args[0], &args[1]);
                ((a * b).coeffs, (b * a).coeffs)
            }
            CdLaw::Associativity => {
                let (a, b, c) = (&args[0], &args[1], &args[2]);
                ((&(a * b) * c).coeffs, (a * &(b * c)).coeffs)
            }
            CdLaw::Alternativity => {
                let (x, y) = (&args[0], &args[1]);
                let mut lhs = (&(x * x) * y).coeffs;
                lhs.extend((&(x * y) * y).coeffs);
                let mut rhs = (x * &(x * y)).coeffs;
                rhs.extend((x * &(y * y)).coeffs);
                (lhs, rhs)
            }
            CdLaw::NicelyNormed => {
                let a = &args[0];
                let a_star = a.conj();
                let trace = a + &a_star;
                let aa = mul_coeffs(&a.coeffs, &a_star.coeffs);
                let positive = a.is_zero() || aa[0] > S::zero();
                let mut lhs: Vec<S> = trace.coeffs[1..].to_vec();
                lhs.extend(aa);
                lhs.push(if positive { S::one() } else { S::zero() });
                let mut rhs = vec![S::zero(); a.dim() - 1];
                rhs.extend(mul_coeffs(&a_star.coeffs, &a.coeffs));
                rhs.push(S::one());
                (lhs, rhs)
            }
            CdLaw::NormMultiplicativity => {
                let (a, b) = (&args[0], &args[1]);
                (vec![(a * b).norm()], vec![a.norm() * b.norm()])
            }
            CdLaw::StarAntihomomorphism => {
                let (a, b) = (&args[0], &args[1]);
                ((a * b).conj().coeffs, (&b.conj() * &a.conj()).coeffs)
            }
            CdLaw::StarInvolution => {
                let a = &args[0];
                let one = CdElement::<S>::one(a.level);
                let mut lhs = a.conj().conj().coeffs;
                lhs.extend(one.conj().coeffs);
                let mut rhs = a.coeffs.clone();
                rhs.extend(one.coeffs);
                (lhs, rhs)
            }
        };
        Evaluation::new(inputs, lhs, rhs)
    }
}

/// A random element with bounded rational (or float) coefficients.
pub fn random_element<S: Scalar, R: rand::Rng + ?Sized>(
    rng: &mut R,
    level: u32,
    magnitude: u32,
) -> CdElement<S> {
    CdElement {
        level,
        coeffs: (0..1usize << level)
            .map(|_| S::random_coeff(rng, magnitude))
            .collect(),
    }
}

/// `+e₀, +e₁, …`: the structured inputs. Every tracked law is homogeneous,
/// so flipping signs of single basis vectors cannot turn a pass into a
/// failure.
fn positive_singles<S: Scalar>(level: u32) -> Vec<CdElement<S>> {
    (0..1usize << level)
        .map(|i| CdElement::basis(level, i))
        .collect()
}

/// `+e₀, −e₀, +e₁, −e₁, …` followed by `eᵢ + eⱼ, eᵢ − eⱼ` for `i < j`, the
/// candidate pool of the witness search, in search order.
pub fn witness_candidates<S: Scalar>(level: u32) -> (Vec<CdElement<S>>, usize) {
    let n = 1usize << level;
    let mut out = Vec::new();
    for i in 0..n {
        let e = CdElement::basis(level, i);
        out.push(-&e);
        out.push(e);
        let len = out.len();
        out.swap(len - 2, len - 1);
    }
    let singles = out.len();
    for i in 0..n {
        for j in i + 1..n {
            let (ei, ej) = (CdElement::basis(level, i), CdElement::basis(level, j));
            out.push(&ei + &ej);
            out.push(&ei - &ej);
        }
    }
    (out, singles)
}

fn tuple_at(mut index: u64, base: usize, arity: usize) -> Vec<usize> {
    let mut digits = vec![0; arity];
    for slot in digits.iter_mut().rev() {
        *slot = (index % base as u64) as usize;
        index /= base as u64;
    }
    digits
}

/// Upper bound on tuples examined by the sums-of-two witness search.
const SEARCH_BUDGET: u64 = 1 << 22;

/// Lexicographically first tuple of candidates, containing at least one sum
/// of two basis vectors, on which `law` fails.
pub fn search_sum_witness<S: Scalar>(
    law: CdLaw,
    level: u32,
    tolerance: f64,
) -> Option<Evaluation<S>> {
    // Candidates have entries 0 and ±1, so every law evaluates to small
    // integers and floats decide it exactly; the chosen tuple is then
    // evaluated again in `S`.
    let (pool, singles) = witness_candidates::<f64>(level);
    let arity = law.arity();
    let total = (pool.len() as u64)
        .saturating_pow(arity as u32)
        .min(SEARCH_BUDGET);
    let digits = (0..total).into_par_iter().find_map_first(|idx| {
        let digits = tuple_at(idx, pool.len(), arity);
        if digits.iter().all(|&d| d < singles) {
            return None;
        }
        let args: Vec<_> = digits.iter().map(|&d| pool[d].clone()).collect();
        law.evaluate(&args).fails(0.0).then_some(digits)
    })?;
    let (pool, _) = witness_candidates::<S>(level);
    let args: Vec<_> = digits.iter().map(|&d| pool[d].clone()).collect();
    let e = law.evaluate(&args);
    e.fails(tolerance).then_some(e)
}

/// Checks every law of the ladder at one level.
///
/// Each law is checked exactly on all tuples of basis vectors and on
/// `cfg.samples` random elements. A failing law is given the smallest witness
/// found: a basis tuple, else a tuple of signed sums of two basis vectors,
/// else the first failing random sample.
pub fn law_suite<S: Scalar>(
    level: u32,
    max_level: u32,
    cfg: &CheckConfig,
) -> Result<Vec<LawReport>, CdError> {
    if level > max_level {
        return Err(CdError::LevelTooHigh {
            level,
            max: max_level,
        });
    }
    let instance = format!("level-{level}");
    let singles = positive_singles::<S>(level);
    Ok(CdLaw::ALL
        .iter()
        .map(|&law| {
            let structured = cartesian_power(&singles, law.arity());
            LawCheck::new(law.name(), instance.clone())
                .expecting(law.holds_at(level))
                .run_with_search(
                    cfg,
                    &structured,
                    |rng| {
                        (0..law.arity())
                            .map(|_| random_element::<S, _>(rng, level, cfg.magnitude))
                            .collect::<Vec<_>>()
                    },
                    |args| Some(law.evaluate(args)),
                    || search_sum_witness(law, level, cfg.tolerance),
                )
        })
        .collect())
}

/// A pair of nonzero elements with zero product.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroDivisor {
    pub a: CdElement<Rational>,
    pub b: CdElement<Rational>,
}

impl ZeroDivisor {
    /// `a` scaled to unit norm, in floats.
    pub fn unit_a(&self) -> Vec<f64> {
        unit_f64(&self.a)
    }

    pub fn unit_b(&self) -> Vec<f64> {
        unit_f64(&self.b)
    }
}

fn unit_f64(x: &CdElement<Rational>) -> Vec<f64> {
    let n = Scalar::to_f64(&x.norm()).sqrt();
    x.coeffs.iter().map(|c| Scalar::to_f64(c) / n).collect()
}

/// Exhaustively tries `(eᵢ ± eⱼ)(eₖ ± eₗ)` with `i < j`, `k < l`, returning the
/// first pair with exactly zero product.
pub fn zero_divisor_search(level: u32) -> Option<ZeroDivisor> {
    if level == 0 {
        return None;
    }
    let (pool, singles) = witness_candidates::<Rational>(level);
    let sums = &pool[singles..];
    let n = sums.len() as u64;
    (0..n * n).into_par_iter().find_map_first(|idx| {
        let (a, b) = (&sums[(idx / n) as usize], &sums[(idx % n) as usize]);
        (a * b).is_zero().then(|| ZeroDivisor {
            a: a.clone(),
            b: b.clone(),
        })
    })
}

/// Runs [`zero_divisor_search`] and reports it as the law "no zero divisors",
/// which holds exactly through the octonions.
pub fn zero_divisor_report(level: u32, cfg: &CheckConfig) -> LawReport {
    let started = Instant::now();
    let found = zero_divisor_search(level);
    let pairs = if level == 0 {
        0
    } else {
        let n = 1u64 << level;
        let sums = n * (n - 1);
        sums * sums
    };
    // The witness shows ‖ab‖² = 0 against ‖a‖²‖b‖², in exact arithmetic.
    let counterexample = found.map(|zd| {
        Evaluation::<Rational>::new(
            vec![zd.a.coeffs.clone(), zd.b.coeffs.clone()],
            vec![(&zd.a * &zd.b).norm()],
            vec![zd.a.norm() * zd.b.norm()],
        )
    });
    LawCheck::new("no-zero-divisors", format!("level-{level}"))
        .expecting(level <= 3)
        .decided(cfg, pairs, counterexample, started)
}

/// Checks `‖ab‖ = ‖a‖‖b‖` on `count` random pairs, exactly; returns the number
/// of pairs that satisfied it.
pub fn norm_multiplicative_pairs(level: u32, count: u64, cfg: &CheckConfig) -> u64 {
    let key = crate::rng::suite_key(&format!("norm-pairs@{level}"));
    (0..count)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = crate::rng::sample_rng(cfg.seed, key, i, 0);
            let a = random_element::<Rational, _>(&mut rng, level, cfg.magnitude);
            let b = random_element::<Rational, _>(&mut rng, level, cfg.magnitude);
            (&a * &b).norm() == a.norm() * b.norm()
        })
        .count() as u64
}
