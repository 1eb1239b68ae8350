//! Multiplication on the join `ΣA * ΣA`.
//!
//! On point constructors the product is the table
//!
//! ```text
//! inl a · inl c = inl(ac)        inl a · inr d = inr(a*d)
//! inr b · inl c = inr(cb)        inr b · inr d = inl(−db*)
//! ```
//!
//! A glue point times a point constructor runs along the glue arc between
//! two table entries. A glue point times a glue point is a point of a filled
//! square: the diamond `D_x̂` with corners `inl(−1)`, `inr(1)`, `inr(x̂)`,
//! `inl(x̂)`, moved into place by `f * g` with
//!
//! ```text
//! f(u) = −(ac)u      g(v) = (cv)b      x̂ = ((c*a*)d)b*
//! ```
//!
//! The diamond is filled in closed form,
//!
//! ```text
//! D_x(σ, τ) = (−cσcτ·1 + sσsτ·x,  sσcτ·1 + cσsτ·x)
//! ```
//!
//! where `σ = (cσ, sσ)` is the glue parameter of the left factor and
//! `τ = (cτ, sτ)` that of the right. [`join_mul_alg`], the doubling formula
//! applied to embedded coordinates, serves as an independent oracle.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::cdalg::mul_coeffs;
use crate::laws::{Carrier, HSpace, ImaginaroidInstance, LawError};
use crate::report::{cartesian_power, CheckConfig, Evaluation, LawCheck, LawReport};
use crate::rng::SampleRng;
use crate::scalar::{self, Scalar};
use crate::spheremodel::{
    join_functor, phi, JoinPoint, JoinView, ModelError, QuarterPair, SphereMap, SpherePoint,
    SuspPoint, ZERO_THRESHOLD,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JoinError {
    #[error(transparent)]
    Law(#[from] LawError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("diamond precondition violated: {0}")]
    Diamond(&'static str),
    #[error("level {0}: the doubled algebra does not preserve norms")]
    NormNotPreserved(u32),
    #[error("join points must have equal sides of a power-of-two dimension")]
    BadShape,
}

/// Corners of a diamond in a join: `a, a'` on the left, `b, b'` on the
/// right.
#[derive(Clone, Debug, PartialEq)]
pub struct DiamondProblem<S> {
    pub a: SpherePoint<S>,
    pub a_prime: SpherePoint<S>,
    pub b: SpherePoint<S>,
    pub b_prime: SpherePoint<S>,
}

/// Which side of a diamond is degenerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondKind {
    /// `a = a'`.
    Vertical,
    /// `b = b'`.
    Horizontal,
}

/// An edge of a filled square: a glue arc `inl(u) → inr(v)` or its reverse.
#[derive(Clone, Debug, PartialEq)]
pub enum Edge<S> {
    GlueArc {
        u: SpherePoint<S>,
        v: SpherePoint<S>,
    },
    ReversedGlueArc {
        u: SpherePoint<S>,
        v: SpherePoint<S>,
    },
}

impl<S: Scalar> Edge<S> {
    pub fn at(&self, t: &QuarterPair<S>) -> JoinPoint<S> {
        match self {
            Edge::GlueArc { u, v } => phi(u, v, t),
            Edge::ReversedGlueArc { u, v } => phi(u, v, &t.reversed()),
        }
    }
}

/// The four edges of a square `F(σ, τ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Boundary<S> {
    /// `τ ↦ F((1, 0), τ)`.
    pub sigma_start: Edge<S>,
    /// `τ ↦ F((0, 1), τ)`.
    pub sigma_end: Edge<S>,
    /// `σ ↦ F(σ, (1, 0))`.
    pub tau_start: Edge<S>,
    /// `σ ↦ F(σ, (0, 1))`.
    pub tau_end: Edge<S>,
}

type Evaluator<S> = dyn Fn(&QuarterPair<S>, &QuarterPair<S>) -> JoinPoint<S> + Send + Sync;

/// A filled square in a join, with the boundary it claims to have.
#[derive(Clone)]
pub struct SquareFiller<S> {
    boundary: Boundary<S>,
    eval: Arc<Evaluator<S>>,
}

impl<S> fmt::Debug for SquareFiller<S>
where
    S: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SquareFiller")
            .field("boundary", &self.boundary)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> SquareFiller<S> {
    pub fn evaluate(&self, sigma: &QuarterPair<S>, tau: &QuarterPair<S>) -> JoinPoint<S> {
        (self.eval)(sigma, tau)
    }

    pub fn boundary(&self) -> &Boundary<S> {
        &self.boundary
    }

    /// Largest deviation between the filler and its declared boundary at the
    /// given parameters along each edge.
    pub fn boundary_residual(&self, params: &[QuarterPair<S>]) -> f64 {
        let (start, end) = (QuarterPair::start(), QuarterPair::end());
        let b = &self.boundary;
        params
            .iter()
            .flat_map(|t| {
                [
                    (self.evaluate(&start, t), b.sigma_start.at(t)),
                    (self.evaluate(&end, t), b.sigma_end.at(t)),
                    (self.evaluate(t, &start), b.tau_start.at(t)),
                    (self.evaluate(t, &end), b.tau_end.at(t)),
                ]
            })
            .map(|(x, y)| scalar::residual(&x.concat(), &y.concat()))
            .fold(0.0, f64::max)
    }
}

fn same_point<S: Scalar>(x: &SpherePoint<S>, y: &SpherePoint<S>) -> bool {
    scalar::agrees(x.coords(), y.coords(), ZERO_THRESHOLD)
}

/// Fills a diamond one of whose sides is degenerate.
///
/// For `b = b'` (horizontal) the right factor stays `b` and the left factor
/// switches from `a` to `a'` where `cσcτ = sσsτ`, at which point the left
/// component vanishes:
///
/// ```text
/// F(σ, τ) = (|cσcτ − sσsτ|·(a or a'),  (sσcτ + cσsτ)·b)
/// ```
///
/// The vertical case is the mirror image, with the right factor switching
/// from `b` to `b'` across `sσcτ = cσsτ`.
pub fn fill_refl_diamond<S: Scalar>(
    kind: DiamondKind,
    corners: &DiamondProblem<S>,
) -> Result<SquareFiller<S>, JoinError> {
    let DiamondProblem {
        a,
        a_prime,
        b,
        b_prime,
    } = corners.clone();
    if a.dim() != a_prime.dim() || b.dim() != b_prime.dim() {
        return Err(JoinError::Diamond(
            "corners on one side differ in dimension",
        ));
    }
    match kind {
        DiamondKind::Horizontal => {
            if !same_point(&b, &b_prime) {
                return Err(JoinError::Diamond("horizontal filler needs b = b'"));
            }
            let boundary = Boundary {
                sigma_start: Edge::GlueArc {
                    u: a.clone(),
                    v: b.clone(),
                },
                sigma_end: Edge::ReversedGlueArc {
                    u: a_prime.clone(),
                    v: b.clone(),
                },
                tau_start: Edge::GlueArc {
                    u: a.clone(),
                    v: b.clone(),
                },
                tau_end: Edge::ReversedGlueArc {
                    u: a_prime.clone(),
                    v: b.clone(),
                },
            };
            let eval = move |s: &QuarterPair<S>, t: &QuarterPair<S>| {
                let k = s.c().clone() * t.c().clone() - s.s().clone() * t.s().clone();
                let side = if k >= S::zero() { &a } else { &a_prime };
                let w = s.s().clone() * t.c().clone() + s.c().clone() * t.s().clone();
                JoinPoint::trusted(
                    scalar::scale(&k.abs_value(), side.coords()),
                    scalar::scale(&w, b.coords()),
                )
            };
            Ok(SquareFiller {
                boundary,
                eval: Arc::new(eval),
            })
        }
        DiamondKind::Vertical => {
            if !same_point(&a, &a_prime) {
                return Err(JoinError::Diamond("vertical filler needs a = a'"));
            }
            let boundary = Boundary {
                sigma_start: Edge::GlueArc {
                    u: a.clone(),
                    v: b_prime.clone(),
                },
                sigma_end: Edge::ReversedGlueArc {
                    u: a.clone(),
                    v: b.clone(),
                },
                tau_start: Edge::GlueArc {
                    u: a.clone(),
                    v: b.clone(),
                },
                tau_end: Edge::ReversedGlueArc {
                    u: a.clone(),
                    v: b_prime.clone(),
                },
            };
            let eval = move |s: &QuarterPair<S>, t: &QuarterPair<S>| {
                let w = s.c().clone() * t.c().clone() + s.s().clone() * t.s().clone();
                let m = s.s().clone() * t.c().clone() - s.c().clone() * t.s().clone();
                let side = if m >= S::zero() { &b } else { &b_prime };
                JoinPoint::trusted(
                    scalar::scale(&w, a.coords()),
                    scalar::scale(&m.abs_value(), side.coords()),
                )
            };
            Ok(SquareFiller {
                boundary,
                eval: Arc::new(eval),
            })
        }
    }
}

/// `D_x(σ, τ) = (−cσcτ·1 + sσsτ·x, sσcτ·1 + cσsτ·x)` as an embedded pair.
pub fn diamond_point<S: Scalar>(
    x: &[S],
    sigma: &QuarterPair<S>,
    tau: &QuarterPair<S>,
) -> JoinPoint<S> {
    let (cs, ss, ct, st) = (sigma.c(), sigma.s(), tau.c(), tau.s());
    let mut left = scalar::scale(&(ss.clone() * st.clone()), x);
    left[0] = left[0].clone() - cs.clone() * ct.clone();
    let mut right = scalar::scale(&(cs.clone() * st.clone()), x);
    right[0] = right[0].clone() + ss.clone() * ct.clone();
    JoinPoint::trusted(left, right)
}

/// The filler of the diamond with corners `inl(−1)`, `inr(1)`, `inr(x)`,
/// `inl(x)`. The point `x` is unit by construction of [`SuspPoint`].
pub fn solve_x_diamond<S: Scalar>(x: &SuspPoint<S>) -> SquareFiller<S> {
    let n = x.coords().len();
    let one = SpherePoint::<S>::north(n);
    let minus_one = one.negate();
    let xp = x.point().clone();
    let boundary = Boundary {
        sigma_start: Edge::GlueArc {
            u: minus_one.clone(),
            v: xp.clone(),
        },
        sigma_end: Edge::ReversedGlueArc {
            u: xp.clone(),
            v: one.clone(),
        },
        tau_start: Edge::GlueArc {
            u: minus_one,
            v: one,
        },
        tau_end: Edge::ReversedGlueArc {
            u: xp.clone(),
            v: xp.clone(),
        },
    };
    let coords = x.coords().to_vec();
    SquareFiller {
        boundary,
        eval: Arc::new(move |s, t| diamond_point(&coords, s, t)),
    }
}

/// The glue–glue product on explicit representatives:
/// `glue(a, b, σ) · glue(c, d, τ) = (f * g)(D_x̂(σ, τ))`.
///
/// At `σ` or `τ` an endpoint the result does not depend on the
/// representative that the endpoint forgets.
#[allow(clippy::too_many_arguments)]
pub fn glue_product<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    a: &SpherePoint<S>,
    b: &SpherePoint<S>,
    sigma: &QuarterPair<S>,
    c: &SpherePoint<S>,
    d: &SpherePoint<S>,
    tau: &QuarterPair<S>,
) -> Result<JoinPoint<S>, JoinError> {
    inst.require_associative()?;
    let n = inst.susp_dim();
    for p in [a, b, c, d] {
        if p.dim() != n {
            return Err(ModelError::DimensionMismatch {
                expected: n,
                found: p.dim(),
            }
            .into());
        }
    }
    Ok(glue_product_unchecked(
        inst,
        (a.coords(), b.coords(), sigma),
        (c.coords(), d.coords(), tau),
    ))
}

type GlueRep<'a, S> = (&'a [S], &'a [S], &'a QuarterPair<S>);

fn glue_product_unchecked<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    (a, b, sigma): GlueRep<'_, S>,
    (c, d, tau): GlueRep<'_, S>,
) -> JoinPoint<S> {
    let n = inst.susp_dim();
    let mul = inst.mul.clone();
    let x_hat = mul(
        &mul(&mul(&inst.susp_conj(c), &inst.susp_conj(a)), d),
        &inst.susp_conj(b),
    );
    let x_hat =
        SuspPoint::from_point(SpherePoint::trusted(x_hat)).expect("ΣA has positive dimension");
    let square = solve_x_diamond(&x_hat).evaluate(sigma, tau);
    let ac = mul(a, c);
    let f = {
        let mul = mul.clone();
        let inst = inst.clone();
        SphereMap::trusted(n, n, move |u: &[S]| inst.susp_neg(&mul(&ac, u)))
    };
    let (c, b) = (c.to_vec(), b.to_vec());
    let g = SphereMap::trusted(n, n, move |v: &[S]| mul(&mul(&c, v), &b));
    join_functor(&f, &g, &square).expect("dimensions match by construction")
}

/// The glue–glue product from unnormalized embedded pairs `(p, q) = (cσa,
/// sσb)` and `(r, w) = (cτc, sτd)`.
///
/// This is the same filler evaluated in homogeneous coordinates: with
/// `x̃ = ((r*p*)w)q* = cσsσcτsτ·x̂`,
///
/// ```text
/// cσcτ·D_left  = x̃ − ‖p‖²‖r‖²·1      f(D_left)  = −(pr)(cσcτ·D_left) / (‖p‖²‖r‖²)
/// sσcτ·D_right = x̃ + ‖q‖²‖r‖²·1      g(D_right) = (r(sσcτ·D_right))q / (‖q‖²‖r‖²)
/// ```
///
/// so only squared norms appear, and rational inputs give rational outputs
/// even when `cσ, cτ, …` are irrational.
fn glue_product_homogeneous<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    (p, q): (&[S], &[S]),
    (r, w): (&[S], &[S]),
) -> JoinPoint<S> {
    let mul = &inst.mul;
    let (pp, qq, rr) = (scalar::norm_sq(p), scalar::norm_sq(q), scalar::norm_sq(r));
    let x_tilde = mul(
        &mul(&mul(&inst.susp_conj(r), &inst.susp_conj(p)), w),
        &inst.susp_conj(q),
    );
    let mut d_left = x_tilde.clone();
    d_left[0] = d_left[0].clone() - pp.clone() * rr.clone();
    let mut d_right = x_tilde;
    d_right[0] = d_right[0].clone() + qq.clone() * rr.clone();
    let left = scalar::scale(
        &(S::one() / (pp * rr.clone())),
        &inst.susp_neg(&mul(&mul(p, r), &d_left)),
    );
    let right = scalar::scale(&(S::one() / (qq * rr)), &mul(&mul(r, &d_right), q));
    JoinPoint::trusted(left, right)
}

/// The constructor a join point came from, keeping glue points as their
/// embedded pair.
enum Factor<'a, S> {
    Inl(&'a [S]),
    Inr(&'a [S]),
    Glue(&'a JoinPoint<S>),
}

fn factor<S: Scalar>(x: &JoinPoint<S>) -> Factor<'_, S> {
    if x.is_inl() {
        Factor::Inl(x.left())
    } else if x.is_inr() {
        Factor::Inr(x.right())
    } else {
        Factor::Glue(x)
    }
}

fn check_shape<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    x: &JoinPoint<S>,
) -> Result<(), JoinError> {
    let n = inst.susp_dim();
    if x.left_dim() != n || x.right_dim() != n {
        return Err(ModelError::DimensionMismatch {
            expected: n,
            found: if x.left_dim() != n {
                x.left_dim()
            } else {
                x.right_dim()
            },
        }
        .into());
    }
    Ok(())
}

/// The product on `ΣA * ΣA` built from the imaginaroid structure.
///
/// Glue–glue products go through [`glue_product`] on the normalized view
/// when its parameters are exact, and through the homogeneous form of the
/// same filler otherwise. Products with a point constructor are the glue
/// arcs between table entries, e.g. `glue(a, b, σ)·inl(c) = glue(ac, cb, σ)`,
/// computed on the embedded pair since real scalars are central.
pub fn join_mul_syn<S: Scalar>(
    x: &JoinPoint<S>,
    y: &JoinPoint<S>,
    inst: &ImaginaroidInstance<S>,
) -> Result<JoinPoint<S>, JoinError> {
    inst.require_associative()?;
    check_shape(inst, x)?;
    check_shape(inst, y)?;
    Ok(join_mul_syn_unchecked(x, y, inst))
}

fn join_mul_syn_unchecked<S: Scalar>(
    x: &JoinPoint<S>,
    y: &JoinPoint<S>,
    inst: &ImaginaroidInstance<S>,
) -> JoinPoint<S> {
    let n = inst.susp_dim();
    let mul = &inst.mul;
    let star = |v: &[S]| inst.susp_conj(v);
    let neg = |v: &[S]| inst.susp_neg(v);
    let zero = || vec![S::zero(); n];
    match (factor(x), factor(y)) {
        (Factor::Inl(a), Factor::Inl(c)) => JoinPoint::trusted(mul(a, c), zero()),
        (Factor::Inl(a), Factor::Inr(d)) => JoinPoint::trusted(zero(), mul(&star(a), d)),
        (Factor::Inr(b), Factor::Inl(c)) => JoinPoint::trusted(zero(), mul(c, b)),
        (Factor::Inr(b), Factor::Inr(d)) => JoinPoint::trusted(neg(&mul(d, &star(b))), zero()),
        // glue(ac, a*d, τ)
        (Factor::Inl(a), Factor::Glue(g)) => {
            JoinPoint::trusted(mul(a, g.left()), mul(&star(a), g.right()))
        }
        // glue(ac, cb, σ)
        (Factor::Glue(g), Factor::Inl(c)) => {
            JoinPoint::trusted(mul(g.left(), c), mul(c, g.right()))
        }
        // glue(−db*, cb, τ) reversed
        (Factor::Inr(b), Factor::Glue(g)) => {
            JoinPoint::trusted(neg(&mul(g.right(), &star(b))), mul(g.left(), b))
        }
        // glue(−db*, a*d, σ) reversed
        (Factor::Glue(g), Factor::Inr(d)) => {
            JoinPoint::trusted(neg(&mul(d, &star(g.right()))), mul(&star(g.left()), d))
        }
        (Factor::Glue(g), Factor::Glue(h)) => match (g.view(), h.view()) {
            (
                Ok(JoinView::Glue {
                    u: a,
                    v: b,
                    t: sigma,
                }),
                Ok(JoinView::Glue { u: c, v: d, t: tau }),
            ) => glue_product_unchecked(
                inst,
                (a.coords(), b.coords(), &sigma),
                (c.coords(), d.coords(), &tau),
            ),
            _ => glue_product_homogeneous(inst, (g.left(), g.right()), (h.left(), h.right())),
        },
    }
}

/// The doubling formula `(p, q)(r, w) = (pr − wq*, p*w + rq)` on embedded
/// pairs, as a product at Cayley–Dickson level `level` (the level of the
/// doubled algebra).
pub fn join_mul_alg<S: Scalar>(
    x: &JoinPoint<S>,
    y: &JoinPoint<S>,
    level: u32,
) -> Result<JoinPoint<S>, JoinError> {
    if level >= 4 {
        return Err(JoinError::NormNotPreserved(level));
    }
    if level == 0 {
        return Err(JoinError::BadShape);
    }
    let half = 1usize << (level - 1);
    for z in [x, y] {
        if z.left_dim() != half || z.right_dim() != half {
            return Err(JoinError::BadShape);
        }
    }
    let product = mul_coeffs(&x.concat(), &y.concat());
    let (l, r) = product.split_at(half);
    Ok(JoinPoint::trusted(l.to_vec(), r.to_vec()))
}

fn join_name<S: Scalar>(inst: &ImaginaroidInstance<S>) -> String {
    format!("join-s{}", 2 * inst.susp_dim() - 1)
}

fn join_carrier<S: Scalar>(inst: &ImaginaroidInstance<S>) -> Carrier {
    Carrier::Join(inst.susp_dim(), inst.susp_dim())
}

/// `ΣA * ΣA` as an H-space, with unit `inl(1)` and inverse candidate
/// `(p, q) ↦ (p*, −q)`.
pub fn join_hspace<S: Scalar>(inst: &ImaginaroidInstance<S>) -> Result<HSpace<S>, JoinError> {
    inst.require_associative()?;
    let n = inst.susp_dim();
    let mul_inst = inst.clone();
    let inv_inst = inst.clone();
    Ok(HSpace {
        name: format!("hspace-join-s{}", 2 * n - 1),
        carrier: join_carrier(inst),
        unit: JoinPoint::inl(&SpherePoint::<S>::north(n), n).concat(),
        mul: Arc::new(move |x: &[S], y: &[S]| {
            let x = JoinPoint::trusted(x[..n].to_vec(), x[n..].to_vec());
            let y = JoinPoint::trusted(y[..n].to_vec(), y[n..].to_vec());
            join_mul_syn_unchecked(&x, &y, &mul_inst).concat()
        }),
        inverse: Arc::new(move |x: &[S]| {
            [inv_inst.susp_conj(&x[..n]), scalar::neg(&x[n..])].concat()
        }),
        expect_associative: n <= 2,
    })
}

fn split<S: Scalar>(x: &[S], n: usize) -> JoinPoint<S> {
    JoinPoint::trusted(x[..n].to_vec(), x[n..].to_vec())
}

/// `inl(1)·X = X` and `X·inl(1) = X`: exactly on every pair of a unit and a
/// signed basis point constructor, then on random points of all kinds.
pub fn unit_law_check<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    cfg: &CheckConfig,
) -> Result<Vec<LawReport>, JoinError> {
    inst.require_associative()?;
    let n = inst.susp_dim();
    let carrier = join_carrier(inst);
    let name = join_name(inst);
    let one = JoinPoint::inl(&SpherePoint::<S>::north(n), n);
    let structured = carrier.basis_points::<S>(true);
    let report = |law: &str, left: bool| {
        LawCheck::new(law, name.as_str()).run(
            cfg,
            &structured,
            |rng: &mut SampleRng| carrier.random_point::<S, _>(rng, cfg.magnitude),
            |x: &Vec<S>| {
                let xp = split(x, n);
                let out = if left {
                    join_mul_syn_unchecked(&one, &xp, inst)
                } else {
                    join_mul_syn_unchecked(&xp, &one, inst)
                };
                Some(Evaluation::new(vec![x.clone()], out.concat(), x.clone()))
            },
        )
    };
    Ok(vec![
        report("join-unit-left", true),
        report("join-unit-right", false),
    ])
}

/// A random pair of join points whose view kinds are given by
/// `combo = 3·kind(X) + kind(Y)`.
pub fn random_pair<S: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    combo: usize,
    magnitude: u32,
) -> (JoinPoint<S>, JoinPoint<S>) {
    let x = crate::laws::random_join_point(rng, n, n, combo / 3, magnitude);
    let y = crate::laws::random_join_point(rng, n, n, combo % 3, magnitude);
    (x, y)
}

/// `join_mul_syn = join_mul_alg` on all pairs of positive basis point
/// constructors, on ten pairs of each of the nine view combinations, and on
/// random pairs with uniformly drawn combinations.
pub fn oracle_equivalence<S: Scalar>(
    inst: &ImaginaroidInstance<S>,
    cfg: &CheckConfig,
) -> Result<LawReport, JoinError> {
    inst.require_associative()?;
    let n = inst.susp_dim();
    let level = n.trailing_zeros() + 1;
    let carrier = join_carrier(inst);
    let mut structured: Vec<(JoinPoint<S>, JoinPoint<S>)> =
        cartesian_power(&carrier.basis_points::<S>(false), 2)
            .into_iter()
            .map(|p| (split(&p[0], n), split(&p[1], n)))
            .collect();
    for combo in 0..9u64 {
        for i in 0..10 {
            let mut rng = crate::rng::sample_rng(cfg.seed, 0x0c0b_0e5e, combo * 10 + i, 0);
            structured.push(random_pair(&mut rng, n, combo as usize, cfg.magnitude));
        }
    }
    Ok(LawCheck::new("oracle-equivalence", join_name(inst)).run(
        cfg,
        &structured,
        |rng: &mut SampleRng| {
            let combo = rng.random_range(0..9);
            random_pair(rng, n, combo, cfg.magnitude)
        },
        |(x, y): &(JoinPoint<S>, JoinPoint<S>)| {
            let syn = join_mul_syn_unchecked(x, y, inst);
            let alg = join_mul_alg(x, y, level).ok()?;
            Some(Evaluation::new(
                vec![x.concat(), y.concat()],
                syn.concat(),
                alg.concat(),
            ))
        },
    ))
}

/// Parameters `(cos θ, sin θ)` with `tan(θ/2) = i/n`, `i = 0..=n`: exact
/// rational points of the quarter circle from `(1, 0)` to `(0, 1)`.
pub fn grid_params<S: Scalar>(n: usize) -> Vec<QuarterPair<S>> {
    let n = n.max(1);
    (0..=n)
        .map(|i| {
            let (c, s) = scalar::quarter_from_tangent(&S::from_ratio(i as i64, n as i64));
            QuarterPair::trusted(c, s)
        })
        .collect()
}

/// Checks of the diamond fillers over `ΣA` on a `grid × grid` parameter
/// grid: boundary edges and corners of `D_x` for basis and random `x`, the
/// unit-norm identity at every grid point, and the reduction of `D_N` and
/// `D_S` to the pole fillers.
pub fn diamond_check<S: Scalar>(susp_dim: usize, grid: usize, cfg: &CheckConfig) -> Vec<LawReport> {
    let instance = format!("diamond-s{}", susp_dim - 1);
    let params = grid_params::<S>(grid);
    let carrier = Carrier::Sphere(susp_dim);
    let structured = carrier.basis_points::<S>(true);
    let x_of = |x: &Vec<S>| {
        SuspPoint::from_point(SpherePoint::trusted(x.clone())).expect("positive dimension")
    };

    let boundary = LawCheck::new("diamond-boundary", instance.as_str()).run(
        cfg,
        &structured,
        |rng: &mut SampleRng| carrier.random_point::<S, _>(rng, cfg.magnitude),
        |x: &Vec<S>| {
            let filler = solve_x_diamond(&x_of(x));
            let one = SpherePoint::<S>::north(susp_dim).into_coords();
            let zero = vec![S::zero(); susp_dim];
            let (start, end) = (QuarterPair::start(), QuarterPair::end());
            let corners = [
                filler.evaluate(&start, &start).concat(),
                filler.evaluate(&end, &start).concat(),
                filler.evaluate(&start, &end).concat(),
                filler.evaluate(&end, &end).concat(),
            ]
            .concat();
            let expected = [
                [scalar::neg(&one), zero.clone()].concat(),
                [zero.clone(), one.clone()].concat(),
                [zero.clone(), x.clone()].concat(),
                [x.clone(), zero].concat(),
            ]
            .concat();
            let r = filler.boundary_residual(&params);
            let edges_ok = if S::EXACT {
                r == 0.0
            } else {
                r <= cfg.tolerance
            };
            Some(Evaluation::new(
                vec![x.clone()],
                [corners, vec![if edges_ok { S::one() } else { S::zero() }]].concat(),
                [expected, vec![S::one()]].concat(),
            ))
        },
    );

    let unit_norm = LawCheck::new("diamond-unit-norm", instance.as_str()).run(
        cfg,
        &structured,
        |rng: &mut SampleRng| carrier.random_point::<S, _>(rng, cfg.magnitude),
        |x: &Vec<S>| {
            let worst = params
                .iter()
                .flat_map(|s| params.iter().map(move |t| (s, t)))
                .map(|(s, t)| scalar::norm_sq(&diamond_point(x, s, t).concat()) - S::one())
                .map(|d| d.abs_value())
                .fold(S::zero(), |m, d| if d > m { d } else { m });
            Some(Evaluation::new(
                vec![x.clone()],
                vec![S::one() + worst],
                vec![S::one()],
            ))
        },
    );

    let n = SpherePoint::<S>::north(susp_dim);
    let s = n.negate();
    let north = fill_refl_diamond(
        DiamondKind::Horizontal,
        &DiamondProblem {
            a: s.clone(),
            a_prime: n.clone(),
            b: n.clone(),
            b_prime: n.clone(),
        },
    )
    .expect("b = b'");
    let south = fill_refl_diamond(
        DiamondKind::Vertical,
        &DiamondProblem {
            a: s.clone(),
            a_prime: s.clone(),
            b: n.clone(),
            b_prime: s.clone(),
        },
    )
    .expect("a = a'");
    let pole = |law: &str, x: &SpherePoint<S>, refl: &SquareFiller<S>| {
        let once = cfg.clone().with_samples(0);
        let d = solve_x_diamond(&x_of(&x.coords().to_vec()));
        let grid_pts: Vec<_> = params
            .iter()
            .flat_map(|s| params.iter().map(move |t| (s, t)))
            .collect();
        let lhs: Vec<S> = grid_pts
            .iter()
            .flat_map(|(s, t)| d.evaluate(s, t).concat())
            .collect();
        let rhs: Vec<S> = grid_pts
            .iter()
            .flat_map(|(s, t)| refl.evaluate(s, t).concat())
            .collect();
        LawCheck::new(law, instance.as_str()).run(
            &once,
            &[()],
            |_: &mut SampleRng| (),
            |_: &()| {
                Some(Evaluation::new(
                    vec![x.coords().to_vec()],
                    lhs.clone(),
                    rhs.clone(),
                ))
            },
        )
    };
    vec![
        boundary,
        unit_norm,
        pole("diamond-pole-north", &n, &north),
        pole("diamond-pole-south", &s, &south),
    ]
}
