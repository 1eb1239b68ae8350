//! Spheroids, imaginaroids and H-spaces over concrete sphere models, with
//! their law suites.
//!
//! Every structure here acts on raw coordinate vectors: a point of a sphere
//! is its ambient coordinates, and a point of a join is its embedded pair
//! `(p, q)` concatenated. The operations are shared handles, so instances are
//! cheap to clone and safe to use from worker threads.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::cdalg::{conj_coeffs, mul_coeffs};
use crate::report::{cartesian_power, CheckConfig, Evaluation, LawCheck, LawReport};
use crate::rng::SampleRng;
use crate::scalar::{self, Scalar};
use crate::spheremodel::{phi, JoinPoint, ModelError, QuarterPair, SpherePoint, SuspPoint};

pub type BinOp<S> = Arc<dyn Fn(&[S], &[S]) -> Vec<S> + Send + Sync>;
pub type UnOp<S> = Arc<dyn Fn(&[S]) -> Vec<S> + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LawError {
    #[error("associativity of `{0}` has not been verified")]
    AssociativityUnverified(String),
    #[error("`{0}` failed its associativity check")]
    NotAssociative(String),
    #[error("no Cayley-Dickson instance at level {0}")]
    UnsupportedLevel(u32),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The space a multiplication acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    /// The unit sphere in the given ambient dimension.
    Sphere(usize),
    /// The join of the unit spheres in the two ambient dimensions.
    Join(usize, usize),
}

impl Carrier {
    pub fn ambient_dim(self) -> usize {
        match self {
            Carrier::Sphere(d) => d,
            Carrier::Join(l, r) => l + r,
        }
    }

    /// A random point. Join points are `inl` or `inr` a quarter of the time
    /// each, and interior glue points otherwise.
    pub fn random_point<S: Scalar, R: Rng + ?Sized>(self, rng: &mut R, magnitude: u32) -> Vec<S> {
        match self {
            Carrier::Sphere(d) => S::random_unit(rng, d, magnitude),
            Carrier::Join(l, r) => {
                let kind = rng_kind(rng);
                random_join_point(rng, l, r, kind, magnitude).concat()
            }
        }
    }

    /// `±e₀, ±e₁, …` in ambient coordinates; for a join these are the
    /// `inl` and `inr` images of the signed basis vectors. With `signed`
    /// unset only the positive ones.
    pub fn basis_points<S: Scalar>(self, signed: bool) -> Vec<Vec<S>> {
        let d = self.ambient_dim();
        let mut out = Vec::new();
        for i in 0..d {
            let e = SpherePoint::<S>::basis(d, i).into_coords();
            if signed {
                out.push(scalar::neg(&e));
            }
            out.push(e);
        }
        out
    }
}

fn rng_kind<R: Rng + ?Sized>(rng: &mut R) -> usize {
    rng.random_range(0..4).min(2)
}

/// A random join point of the given view kind: `0` inl, `1` inr, `2` glue
/// with an interior parameter.
pub fn random_join_point<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    left_dim: usize,
    right_dim: usize,
    kind: usize,
    magnitude: u32,
) -> JoinPoint<S> {
    match kind {
        0 => JoinPoint::inl(&SpherePoint::random(rng, left_dim, magnitude), right_dim),
        1 => JoinPoint::inr(left_dim, &SpherePoint::random(rng, right_dim, magnitude)),
        _ => {
            let u = SpherePoint::random(rng, left_dim, magnitude);
            let v = SpherePoint::random(rng, right_dim, magnitude);
            let t = QuarterPair::random(rng, magnitude);
            phi(&u, &v, &t)
        }
    }
}

fn expectation(failures: &[String], law: &str) -> bool {
    !failures.iter().any(|f| f == law)
}

/// Checks `lhs = rhs` over tuples of carrier points: all tuples of signed
/// basis points (positive ones only for arity three and up), then random
/// tuples.
#[allow(clippy::too_many_arguments)]
fn run_law<S, E>(
    cfg: &CheckConfig,
    law: &str,
    instance: &str,
    expect: bool,
    carrier: Carrier,
    arity: usize,
    eval: E,
) -> LawReport
where
    S: Scalar,
    E: Fn(&[Vec<S>]) -> (Vec<S>, Vec<S>) + Sync,
{
    let structured = cartesian_power(&carrier.basis_points::<S>(arity <= 2), arity);
    LawCheck::new(law, instance).expecting(expect).run(
        cfg,
        &structured,
        |rng: &mut SampleRng| {
            (0..arity)
                .map(|_| carrier.random_point::<S, _>(rng, cfg.magnitude))
                .collect::<Vec<_>>()
        },
        |args: &Vec<Vec<S>>| {
            let (lhs, rhs) = eval(args);
            Some(Evaluation::new(args.clone(), lhs, rhs))
        },
    )
}

/// A law without variables, checked once.
fn run_closed<S: Scalar>(
    cfg: &CheckConfig,
    law: &str,
    instance: &str,
    expect: bool,
    lhs: Vec<S>,
    rhs: Vec<S>,
) -> LawReport {
    let once = cfg.clone().with_samples(0);
    LawCheck::new(law, instance).expecting(expect).run(
        &once,
        &[()],
        |_: &mut SampleRng| (),
        |_: &()| Some(Evaluation::new(Vec::new(), lhs.clone(), rhs.clone())),
    )
}

/// Primary spheroid laws.
pub const SPHEROID_LAWS: [&str; 6] = [
    "unit-conj",
    "neg-conj",
    "involutions",
    "mul-neg-right",
    "conj-antihom",
    "conj-left-inverse",
];

/// Laws that follow from the primary ones.
pub const DERIVED_SPHEROID_LAWS: [&str; 2] = ["conj-right-inverse", "mul-neg-left"];

/// An H-space on a sphere together with a conjugation and a negation.
#[derive(Clone)]
pub struct SpheroidInstance<S> {
    pub name: String,
    pub dim: usize,
    pub unit: Vec<S>,
    pub mul: BinOp<S>,
    pub conj: UnOp<S>,
    pub neg: UnOp<S>,
    /// Laws this instance is predicted to violate (negative controls).
    pub expected_failures: Vec<String>,
}

impl<S> fmt::Debug for SpheroidInstance<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpheroidInstance")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> SpheroidInstance<S> {
    /// `{±1}` under multiplication, with trivial conjugation.
    pub fn sign_group() -> Self {
        Self {
            name: "sign-s0".into(),
            dim: 1,
            unit: vec![S::one()],
            mul: Arc::new(|x: &[S], y: &[S]| vec![x[0].clone() * y[0].clone()]),
            conj: Arc::new(<[S]>::to_vec),
            neg: Arc::new(|x: &[S]| scalar::neg(x)),
            expected_failures: Vec::new(),
        }
    }

    /// The unit sphere of the level-`level` Cayley–Dickson algebra.
    pub fn cayley_dickson(level: u32) -> Self {
        let dim = 1usize << level;
        Self {
            name: format!("cd-s{}", dim - 1),
            dim,
            unit: SpherePoint::<S>::north(dim).into_coords(),
            mul: Arc::new(|x: &[S], y: &[S]| mul_coeffs(x, y)),
            conj: Arc::new(|x: &[S]| conj_coeffs(x)),
            neg: Arc::new(|x: &[S]| scalar::neg(x)),
            expected_failures: Vec::new(),
        }
    }

    /// The same instance with its conjugation replaced, for negative
    /// controls; `failing` lists the laws the replacement should break.
    pub fn with_conj(mut self, name: &str, conj: UnOp<S>, failing: &[&str]) -> Self {
        self.name = name.into();
        self.conj = conj;
        self.expected_failures = failing.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn carrier(&self) -> Carrier {
        Carrier::Sphere(self.dim)
    }
}

/// Runs every spheroid law, the two derived laws, the unit laws and closure
/// of the multiplication on the sphere.
pub fn spheroid_check<S: Scalar>(inst: &SpheroidInstance<S>, cfg: &CheckConfig) -> Vec<LawReport> {
    let name = inst.name.as_str();
    let c = inst.carrier();
    let e = |law: &str| expectation(&inst.expected_failures, law);
    let (mul, conj, neg) = (&inst.mul, &inst.conj, &inst.neg);
    let one = &inst.unit;
    vec![
        run_closed(
            cfg,
            "unit-conj",
            name,
            e("unit-conj"),
            conj(one),
            one.clone(),
        ),
        run_law(cfg, "neg-conj", name, e("neg-conj"), c, 1, |a| {
            (conj(&neg(&a[0])), neg(&conj(&a[0])))
        }),
        run_law(cfg, "involutions", name, e("involutions"), c, 1, |a| {
            let x = &a[0];
            (
                [neg(&neg(x)), conj(&conj(x))].concat(),
                [x.clone(), x.clone()].concat(),
            )
        }),
        run_law(cfg, "mul-neg-right", name, e("mul-neg-right"), c, 2, |a| {
            (mul(&a[0], &neg(&a[1])), neg(&mul(&a[0], &a[1])))
        }),
        run_law(cfg, "conj-antihom", name, e("conj-antihom"), c, 2, |a| {
            (conj(&mul(&a[0], &a[1])), mul(&conj(&a[1]), &conj(&a[0])))
        }),
        run_law(
            cfg,
            "conj-left-inverse",
            name,
            e("conj-left-inverse"),
            c,
            1,
            |a| (mul(&conj(&a[0]), &a[0]), one.clone()),
        ),
        run_law(
            cfg,
            "conj-right-inverse",
            name,
            e("conj-right-inverse"),
            c,
            1,
            |a| (mul(&a[0], &conj(&a[0])), one.clone()),
        ),
        run_law(cfg, "mul-neg-left", name, e("mul-neg-left"), c, 2, |a| {
            (mul(&neg(&a[0]), &a[1]), neg(&mul(&a[0], &a[1])))
        }),
        run_law(cfg, "unit-left", name, e("unit-left"), c, 1, |a| {
            (mul(one, &a[0]), a[0].clone())
        }),
        run_law(cfg, "unit-right", name, e("unit-right"), c, 1, |a| {
            (mul(&a[0], one), a[0].clone())
        }),
        run_law(cfg, "mul-closure", name, e("mul-closure"), c, 2, |a| {
            (vec![scalar::norm_sq(&mul(&a[0], &a[1]))], vec![S::one()])
        }),
    ]
}

/// Whether the derived laws hold in every instance whose primary laws all
/// hold, judged from one instance's `spheroid_check` reports.
pub fn derived_laws_follow(reports: &[LawReport]) -> bool {
    let holds = |law: &str| reports.iter().any(|r| r.law == law && r.holds());
    !SPHEROID_LAWS.iter().all(|l| holds(l)) || DERIVED_SPHEROID_LAWS.iter().all(|l| holds(l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Associativity {
    Unverified,
    Verified,
    /// Declared without a passing check; only for negative controls.
    Assumed,
}

/// A sphere `A` with an involutive negation, and a multiplication on its
/// suspension `ΣA`.
///
/// `ΣA` is modelled as the unit sphere one dimension up (see
/// [`SuspPoint`]); its negation and conjugation are the suspension
/// negation and conjugation, its unit the north pole.
#[derive(Clone)]
pub struct ImaginaroidInstance<S> {
    pub name: String,
    base_dim: usize,
    pub mul: BinOp<S>,
    pub base_neg: UnOp<S>,
    associativity: Associativity,
    expect_associative: bool,
}

impl<S> fmt::Debug for ImaginaroidInstance<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ImaginaroidInstance")
            .field("name", &self.name)
            .field("base_dim", &self.base_dim)
            .field("associativity", &self.associativity)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> ImaginaroidInstance<S> {
    /// `A` the unit imaginary sphere of the level-`level` Cayley–Dickson
    /// algebra, so `ΣA` is its whole unit sphere: `A = ∅, 𝕊⁰, 𝕊², 𝕊⁶` for
    /// levels 0 to 3.
    pub fn cayley_dickson(level: u32) -> Result<Self, LawError> {
        if level > 3 {
            return Err(LawError::UnsupportedLevel(level));
        }
        let dim = 1usize << level;
        let name = if level == 0 {
            "imag-empty".to_string()
        } else {
            format!("imag-s{}", dim - 2)
        };
        Ok(Self {
            name,
            base_dim: dim - 1,
            mul: Arc::new(|x: &[S], y: &[S]| mul_coeffs(x, y)),
            base_neg: Arc::new(|x: &[S]| scalar::neg(x)),
            associativity: Associativity::Unverified,
            expect_associative: level <= 2,
        })
    }

    /// Ambient dimension of `A`.
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    /// Ambient dimension of `ΣA`.
    pub fn susp_dim(&self) -> usize {
        self.base_dim + 1
    }

    /// The unit `N` of `ΣA`.
    pub fn unit(&self) -> Vec<S> {
        SuspPoint::<S>::north(self.base_dim).coords().to_vec()
    }

    pub fn susp_neg(&self, x: &[S]) -> Vec<S> {
        susp(x).neg().coords().to_vec()
    }

    pub fn susp_conj(&self, x: &[S]) -> Vec<S> {
        susp(x).conj().coords().to_vec()
    }

    pub fn expect_associative(&self) -> bool {
        self.expect_associative
    }

    pub fn associativity_verified(&self) -> bool {
        self.associativity != Associativity::Unverified
    }

    /// Runs [`assoc_check`] and records a pass.
    pub fn verify_associativity(&mut self, cfg: &CheckConfig) -> LawReport {
        let report = assoc_check(self, cfg);
        if report.holds() {
            self.associativity = Associativity::Verified;
        }
        report
    }

    /// Marks the multiplication associative without checking. Used to feed
    /// non-associative multiplications to constructions that require
    /// associativity, as negative controls.
    pub fn assume_associative(mut self) -> Self {
        self.associativity = Associativity::Assumed;
        self
    }

    pub(crate) fn require_associative(&self) -> Result<(), LawError> {
        if self.associativity_verified() {
            Ok(())
        } else {
            Err(LawError::AssociativityUnverified(self.name.clone()))
        }
    }

    /// `ΣA` as a spheroid.
    pub fn spheroid(&self) -> SpheroidInstance<S> {
        SpheroidInstance {
            name: format!("{}/spheroid", self.name),
            dim: self.susp_dim(),
            unit: self.unit(),
            mul: self.mul.clone(),
            conj: Arc::new(|x: &[S]| susp(x).conj().coords().to_vec()),
            neg: Arc::new(|x: &[S]| susp(x).neg().coords().to_vec()),
            expected_failures: Vec::new(),
        }
    }
}

fn susp<S: Scalar>(x: &[S]) -> SuspPoint<S> {
    SuspPoint::from_point(SpherePoint::trusted(x.to_vec()))
        .expect("suspension points have at least one coordinate")
}

/// The imaginaroid laws on `ΣA`, involutivity of the negation on `A`, and
/// then [`spheroid_check`] on the induced spheroid.
pub fn imaginaroid_check<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    cfg: &CheckConfig,
) -> Vec<LawReport> {
    let name = inst.name.as_str();
    let c = Carrier::Sphere(inst.susp_dim());
    let mul = &inst.mul;
    let one = inst.unit();
    let mut out = vec![
        run_law(cfg, "mul-neg-right", name, true, c, 2, |a| {
            (
                mul(&a[0], &inst.susp_neg(&a[1])),
                inst.susp_neg(&mul(&a[0], &a[1])),
            )
        }),
        run_law(cfg, "conj-right-inverse", name, true, c, 1, |a| {
            (mul(&a[0], &inst.susp_conj(&a[0])), one.clone())
        }),
        run_law(cfg, "conj-antihom", name, true, c, 2, |a| {
            (
                inst.susp_conj(&mul(&a[0], &a[1])),
                mul(&inst.susp_conj(&a[1]), &inst.susp_conj(&a[0])),
            )
        }),
        run_law(cfg, "unit-left", name, true, c, 1, |a| {
            (mul(&one, &a[0]), a[0].clone())
        }),
        run_law(cfg, "unit-right", name, true, c, 1, |a| {
            (mul(&a[0], &one), a[0].clone())
        }),
        run_law(cfg, "mul-closure", name, true, c, 2, |a| {
            (vec![scalar::norm_sq(&mul(&a[0], &a[1]))], vec![S::one()])
        }),
    ];
    if inst.base_dim() > 0 {
        let neg = &inst.base_neg;
        out.push(run_law(
            cfg,
            "base-neg-involutive",
            name,
            true,
            Carrier::Sphere(inst.base_dim()),
            1,
            |a| (neg(&neg(&a[0])), a[0].clone()),
        ));
    }
    out.extend(spheroid_check(&inst.spheroid(), cfg));
    out
}

/// A multiplication whose associativity can be checked.
pub trait Multiplication<S: Scalar>: Sync {
    fn name(&self) -> &str;
    fn carrier(&self) -> Carrier;
    fn multiply(&self, x: &[S], y: &[S]) -> Vec<S>;
    fn expect_associative(&self) -> bool;
}

impl<S: Scalar> Multiplication<S> for ImaginaroidInstance<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn carrier(&self) -> Carrier {
        Carrier::Sphere(self.susp_dim())
    }

    fn multiply(&self, x: &[S], y: &[S]) -> Vec<S> {
        (self.mul)(x, y)
    }

    fn expect_associative(&self) -> bool {
        self.expect_associative
    }
}

/// `(xy)z = x(yz)` on all triples of basis points and on random triples.
pub fn assoc_check<S: Scalar, M: Multiplication<S>>(m: &M, cfg: &CheckConfig) -> LawReport {
    run_law(
        cfg,
        "associativity",
        m.name(),
        m.expect_associative(),
        m.carrier(),
        3,
        |a| {
            (
                m.multiply(&m.multiply(&a[0], &a[1]), &a[2]),
                m.multiply(&a[0], &m.multiply(&a[1], &a[2])),
            )
        },
    )
}

/// Both sides of the four identities
///
/// ```text
/// f(−1) = ac    f(x̂) = −db*    g(1) = cb    g(x̂) = a*d
/// ```
///
/// for `f(x) = −(ac)x`, `g(y) = (cy)b` and `x̂ = ((c*a*)d)b*`, all in `ΣA`.
pub fn fg_identities<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    a: &[S],
    b: &[S],
    c: &[S],
    d: &[S],
) -> Evaluation<S> {
    let mul = &inst.mul;
    let star = |x: &[S]| inst.susp_conj(x);
    let neg = |x: &[S]| inst.susp_neg(x);
    let one = inst.unit();
    let ac = mul(a, c);
    let f = |x: &[S]| neg(&mul(&ac, x));
    let g = |y: &[S]| mul(&mul(c, y), b);
    let x_hat = mul(&mul(&mul(&star(c), &star(a)), d), &star(b));
    let lhs = [f(&neg(&one)), f(&x_hat), g(&one), g(&x_hat)].concat();
    let rhs = [
        ac.clone(),
        neg(&mul(d, &star(b))),
        mul(c, b),
        mul(&star(a), d),
    ]
    .concat();
    Evaluation::new(
        vec![a.to_vec(), b.to_vec(), c.to_vec(), d.to_vec()],
        lhs,
        rhs,
    )
}

/// The f/g identities at one 4-tuple of points of `ΣA`.
pub fn fg_lemma_check<S: Scalar>(
    a: &SpherePoint<S>,
    b: &SpherePoint<S>,
    c: &SpherePoint<S>,
    d: &SpherePoint<S>,
    inst: &ImaginaroidInstance<S>,
    cfg: &CheckConfig,
) -> Result<LawReport, LawError> {
    inst.require_associative()?;
    let dim = inst.susp_dim();
    for p in [a, b, c, d] {
        if p.dim() != dim {
            return Err(ModelError::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            }
            .into());
        }
    }
    let tuple = vec![vec![
        a.coords().to_vec(),
        b.coords().to_vec(),
        c.coords().to_vec(),
        d.coords().to_vec(),
    ]];
    let once = cfg.clone().with_samples(0);
    Ok(LawCheck::new("fg-lemma", inst.name.as_str())
        .expecting(inst.expect_associative)
        .run(
            &once,
            &tuple,
            |_: &mut SampleRng| Vec::new(),
            |t: &Vec<Vec<S>>| Some(fg_identities(inst, &t[0], &t[1], &t[2], &t[3])),
        ))
}

/// The f/g identities on all 4-tuples of basis points and on random ones.
pub fn fg_lemma_suite<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    cfg: &CheckConfig,
) -> Result<LawReport, LawError> {
    inst.require_associative()?;
    let c = Carrier::Sphere(inst.susp_dim());
    Ok(run_law(
        cfg,
        "fg-lemma",
        &inst.name,
        inst.expect_associative,
        c,
        4,
        |t| {
            let e = fg_identities(inst, &t[0], &t[1], &t[2], &t[3]);
            (e.lhs, e.rhs)
        },
    ))
}

/// A multiplication with a two-sided unit and an explicit inverse
/// candidate for its translations.
#[derive(Clone)]
pub struct HSpace<S> {
    pub name: String,
    pub carrier: Carrier,
    pub unit: Vec<S>,
    pub mul: BinOp<S>,
    /// `a ↦ a*`; translation by `a*` should invert translation by `a`.
    pub inverse: UnOp<S>,
    pub expect_associative: bool,
}

impl<S> fmt::Debug for HSpace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HSpace")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> HSpace<S> {
    pub fn sign_group() -> Self {
        Self {
            name: "hspace-s0".into(),
            carrier: Carrier::Sphere(1),
            unit: vec![S::one()],
            mul: Arc::new(|x: &[S], y: &[S]| vec![x[0].clone() * y[0].clone()]),
            inverse: Arc::new(<[S]>::to_vec),
            expect_associative: true,
        }
    }

    /// The unit sphere of the level-`level` Cayley–Dickson algebra.
    pub fn cayley_dickson(level: u32) -> Self {
        let dim = 1usize << level;
        Self {
            name: format!("hspace-s{}", dim - 1),
            carrier: Carrier::Sphere(dim),
            unit: SpherePoint::<S>::north(dim).into_coords(),
            mul: Arc::new(|x: &[S], y: &[S]| mul_coeffs(x, y)),
            inverse: Arc::new(|x: &[S]| conj_coeffs(x)),
            expect_associative: level <= 2,
        }
    }
}

impl<S: Scalar> Multiplication<S> for HSpace<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn carrier(&self) -> Carrier {
        self.carrier
    }

    fn multiply(&self, x: &[S], y: &[S]) -> Vec<S> {
        (self.mul)(x, y)
    }

    fn expect_associative(&self) -> bool {
        self.expect_associative
    }
}

/// Unit laws and the four translation-inverse identities
///
/// ```text
/// a*(ax) = x    (xa)a* = x    a(a*x) = x    (xa*)a = x
/// ```
pub fn hspace_check<S: Scalar>(h: &HSpace<S>, cfg: &CheckConfig) -> Vec<LawReport> {
    let name = h.name.as_str();
    let c = h.carrier;
    let (mul, inv, one) = (&h.mul, &h.inverse, &h.unit);
    vec![
        run_law(cfg, "unit-left", name, true, c, 1, |a| {
            (mul(one, &a[0]), a[0].clone())
        }),
        run_law(cfg, "unit-right", name, true, c, 1, |a| {
            (mul(&a[0], one), a[0].clone())
        }),
        run_law(cfg, "inverse-left-cancel", name, true, c, 2, |t| {
            let (a, x) = (&t[0], &t[1]);
            (mul(&inv(a), &mul(a, x)), x.clone())
        }),
        run_law(cfg, "inverse-right-cancel", name, true, c, 2, |t| {
            let (a, x) = (&t[0], &t[1]);
            (mul(&mul(x, a), &inv(a)), x.clone())
        }),
        run_law(cfg, "inverse-left-split", name, true, c, 2, |t| {
            let (a, x) = (&t[0], &t[1]);
            (mul(a, &mul(&inv(a), x)), x.clone())
        }),
        run_law(cfg, "inverse-right-split", name, true, c, 2, |t| {
            let (a, x) = (&t[0], &t[1]);
            (mul(&mul(x, &inv(a)), a), x.clone())
        }),
    ]
}
