//! The Hopf construction on `G * G → ΣG` and its fibers.
//!
//! The projection sends `inl(u)` to `N`, `inr(v)` to `S`, and `glue(u, v, t)`
//! to the point at parameter `t` of the meridian through `μ(u, v)`. On the
//! embedded pair `(p, q) = (cu, sv)` this is
//!
//! ```text
//! H(p, q) = (c² − s², 2cs·μ(u, v)) = (‖p‖² − ‖q‖², 2μ(p, q))
//! ```
//!
//! using bilinearity of `μ`; the second form needs no square roots.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::joinmul::{oracle_equivalence, unit_law_check, JoinError};
use crate::laws::{assoc_check, hspace_check, HSpace, ImaginaroidInstance};
use crate::report::{CheckConfig, Evaluation, LawCheck, LawReport};
use crate::rng::SampleRng;
use crate::scalar::{self, Scalar};
use crate::spheremodel::{phi, JoinPoint, JoinView, QuarterPair, SpherePoint, SuspPoint};

/// Which of the three fibrations `S⁰ → S¹ → S¹`, `S¹ → S³ → S²`,
/// `S³ → S⁷ → S⁴`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HopfKind {
    Real,
    Complex,
    Quaternionic,
}

impl HopfKind {
    pub const ALL: [HopfKind; 3] = [HopfKind::Real, HopfKind::Complex, HopfKind::Quaternionic];

    /// Cayley–Dickson level of the fiber algebra.
    pub fn level(self) -> u32 {
        match self {
            HopfKind::Real => 0,
            HopfKind::Complex => 1,
            HopfKind::Quaternionic => 2,
        }
    }

    /// `n` for the fiber `Sⁿ`.
    pub fn fiber_sphere(self) -> usize {
        (1usize << self.level()) - 1
    }

    pub fn name(self) -> &'static str {
        match self {
            HopfKind::Real => "real",
            HopfKind::Complex => "complex",
            HopfKind::Quaternionic => "quaternionic",
        }
    }
}

impl fmt::Display for HopfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HopfKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HopfKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                format!("unknown Hopf instance `{s}` (expected real, complex or quaternionic)")
            })
    }
}

/// An H-space `G` on a sphere, with total space `G * G` and base `ΣG`.
#[derive(Clone, Debug)]
pub struct HopfInstance<S> {
    pub kind: HopfKind,
    pub group: HSpace<S>,
}

impl<S: Scalar> HopfInstance<S> {
    pub fn new(kind: HopfKind) -> Self {
        let group = if kind == HopfKind::Real {
            HSpace::sign_group()
        } else {
            HSpace::cayley_dickson(kind.level())
        };
        Self { kind, group }
    }

    /// Ambient dimension of `G`.
    pub fn fiber_dim(&self) -> usize {
        self.group.carrier.ambient_dim()
    }

    pub fn name(&self) -> String {
        format!("hopf-{}", self.kind)
    }

    fn mu(&self, x: &[S], y: &[S]) -> Vec<S> {
        (self.group.mul)(x, y)
    }

    fn inv(&self, x: &[S]) -> Vec<S> {
        (self.group.inverse)(x)
    }
}

/// The Hopf projection `G * G → ΣG`.
pub fn hopf_map<S: Scalar>(x: &JoinPoint<S>, inst: &HopfInstance<S>) -> SuspPoint<S> {
    let (p, q) = (x.left(), x.right());
    let two = S::one() + S::one();
    let mut coords = vec![scalar::norm_sq(p) - scalar::norm_sq(q)];
    coords.extend(scalar::scale(&two, &inst.mu(p, q)));
    SuspPoint::from_point(SpherePoint::trusted(coords)).expect("ΣG has positive dimension")
}

/// The projection computed from the constructor view: `N`, `S`, or
/// `(c² − s², 2cs·μ(u, v))` on `glue(u, v, (c, s))`. `None` when the view is
/// not exact.
pub fn hopf_map_by_view<S: Scalar>(
    x: &JoinPoint<S>,
    inst: &HopfInstance<S>,
) -> Option<SuspPoint<S>> {
    let n = inst.fiber_dim();
    Some(match x.view().ok()? {
        JoinView::Inl(_) => SuspPoint::north(n),
        JoinView::Inr(_) => SuspPoint::south(n),
        JoinView::Glue { u, v, t } => {
            let (c, s) = (t.c().clone(), t.s().clone());
            let two = S::one() + S::one();
            let mut coords = vec![c.clone() * c.clone() - s.clone() * s.clone()];
            coords.extend(scalar::scale(
                &(two * c * s),
                &inst.mu(u.coords(), v.coords()),
            ));
            SuspPoint::from_point(SpherePoint::trusted(coords)).expect("positive dimension")
        }
    })
}

struct FiberSample<S> {
    u: Vec<S>,
    v: Vec<S>,
    w: Vec<S>,
    w2: Vec<S>,
    t: QuarterPair<S>,
}

fn fiber_sample<S: Scalar>(rng: &mut SampleRng, n: usize, magnitude: u32) -> FiberSample<S> {
    FiberSample {
        u: S::random_unit(rng, n, magnitude),
        v: S::random_unit(rng, n, magnitude),
        w: S::random_unit(rng, n, magnitude),
        w2: S::random_unit(rng, n, magnitude),
        t: QuarterPair::random(rng, magnitude),
    }
}

fn point<S: Scalar>(x: &[S]) -> SpherePoint<S> {
    SpherePoint::trusted(x.to_vec())
}

/// Fiber structure of [`hopf_map`]:
///
/// * membership: `(uw, w*v, t)` lies over the same point as `(u, v, t)`;
/// * completeness: any `(u', v', t)` over the same point has
///   `v' = (u*u')* v`, so it is the translate by `w = u*u'`;
/// * separation: translates by `w ≠ w'` are distinct;
/// * polar fibers: `‖H(x) − N‖² = 4‖q‖²` and `‖H(x) − S‖² = 4‖p‖²`, so the
///   fiber over `N` is exactly the `inl` copy of `G` and over `S` the `inr`
///   copy;
///
/// together with unit norm of the image and agreement with the view formula.
pub fn fiber_check<S: Scalar>(inst: &HopfInstance<S>, cfg: &CheckConfig) -> Vec<LawReport> {
    let name = inst.name();
    let n = inst.fiber_dim();
    let gen = |rng: &mut SampleRng| fiber_sample::<S>(rng, n, cfg.magnitude);
    let image =
        |u: &[S], v: &[S], t: &QuarterPair<S>| hopf_map(&phi(&point(u), &point(v), t), inst);
    let none: &[FiberSample<S>] = &[];

    let membership = LawCheck::new("fiber-membership", name.as_str()).run(cfg, none, gen, |f| {
        let (uw, wv) = (inst.mu(&f.u, &f.w), inst.mu(&inst.inv(&f.w), &f.v));
        let unit = scalar::norm_sq(&uw) + scalar::norm_sq(&wv);
        Some(Evaluation::new(
            vec![
                f.u.clone(),
                f.v.clone(),
                f.w.clone(),
                vec![f.t.c().clone(), f.t.s().clone()],
            ],
            [image(&uw, &wv, &f.t).coords().to_vec(), vec![unit]].concat(),
            [
                image(&f.u, &f.v, &f.t).coords().to_vec(),
                vec![S::one() + S::one()],
            ]
            .concat(),
        ))
    });

    // `w` plays the part of u'; v' is then forced by μ(u', v') = μ(u, v).
    let completeness =
        LawCheck::new("fiber-completeness", name.as_str()).run(cfg, none, gen, |f| {
            let u2 = &f.w;
            let v2 = inst.mu(&inst.inv(u2), &inst.mu(&f.u, &f.v));
            let w = inst.mu(&inst.inv(&f.u), u2);
            Some(Evaluation::new(
                vec![
                    f.u.clone(),
                    f.v.clone(),
                    u2.clone(),
                    vec![f.t.c().clone(), f.t.s().clone()],
                ],
                [image(u2, &v2, &f.t).coords().to_vec(), v2.clone()].concat(),
                [
                    image(&f.u, &f.v, &f.t).coords().to_vec(),
                    inst.mu(&inst.inv(&w), &f.v),
                ]
                .concat(),
            ))
        });

    let separation = LawCheck::new("fiber-separation", name.as_str()).run(cfg, none, gen, |f| {
        let translate = |w: &[S]| {
            phi(
                &point(&inst.mu(&f.u, w)),
                &point(&inst.mu(&inst.inv(w), &f.v)),
                &f.t,
            )
            .concat()
        };
        let same_w = scalar::agrees(&f.w, &f.w2, cfg.tolerance);
        let same_point = scalar::agrees(&translate(&f.w), &translate(&f.w2), cfg.tolerance);
        Some(Evaluation::condition(
            vec![f.u.clone(), f.v.clone(), f.w.clone(), f.w2.clone()],
            same_w == same_point,
        ))
    });

    let carrier = crate::laws::Carrier::Join(n, n);
    let structured = carrier.basis_points::<S>(true);
    let north = SuspPoint::<S>::north(n);
    let south = SuspPoint::<S>::south(n);
    let four = S::from_ratio(4, 1);
    let polar = LawCheck::new("fiber-polar", name.as_str()).run(
        cfg,
        &structured,
        |rng: &mut SampleRng| carrier.random_point::<S, _>(rng, cfg.magnitude),
        |x: &Vec<S>| {
            let jp = JoinPoint::trusted(x[..n].to_vec(), x[n..].to_vec());
            let h = hopf_map(&jp, inst);
            let dn = scalar::norm_sq(&scalar::sub(h.coords(), north.coords()));
            let ds = scalar::norm_sq(&scalar::sub(h.coords(), south.coords()));
            Some(Evaluation::new(
                vec![x.clone()],
                vec![dn, ds],
                vec![
                    four.clone() * scalar::norm_sq(jp.right()),
                    four.clone() * scalar::norm_sq(jp.left()),
                ],
            ))
        },
    );

    let unit_norm = LawCheck::new("hopf-unit-norm", name.as_str()).run(
        cfg,
        &structured,
        |rng: &mut SampleRng| carrier.random_point::<S, _>(rng, cfg.magnitude),
        |x: &Vec<S>| {
            let jp = JoinPoint::trusted(x[..n].to_vec(), x[n..].to_vec());
            Some(Evaluation::new(
                vec![x.clone()],
                vec![scalar::norm_sq(hopf_map(&jp, inst).coords())],
                vec![S::one()],
            ))
        },
    );

    let by_view = LawCheck::new("hopf-view-formula", name.as_str()).run(
        cfg,
        &structured,
        |rng: &mut SampleRng| carrier.random_point::<S, _>(rng, cfg.magnitude),
        |x: &Vec<S>| {
            let jp = JoinPoint::trusted(x[..n].to_vec(), x[n..].to_vec());
            let v = hopf_map_by_view(&jp, inst)?;
            Some(Evaluation::new(
                vec![x.clone()],
                hopf_map(&jp, inst).coords().to_vec(),
                v.coords().to_vec(),
            ))
        },
    );

    vec![
        membership,
        completeness,
        separation,
        polar,
        unit_norm,
        by_view,
    ]
}

/// Sphere dimensions of a fibration `Sⁿ → S^{2n+1} → S^{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub fiber: usize,
    pub total: usize,
    pub base: usize,
}

/// Sphere dimensions read off the models: the fiber carrier, the join of
/// two copies, and the image of the projection.
pub fn model_dimensions<S: Scalar>(inst: &HopfInstance<S>) -> Dimensions {
    let n = inst.fiber_dim();
    let one = SpherePoint::<S>::north(n);
    let x = JoinPoint::inl(&one, n);
    Dimensions {
        fiber: n - 1,
        total: x.left_dim() + x.right_dim() - 1,
        base: hopf_map(&x, inst).coords().len() - 1,
    }
}

/// Every check behind one fibration: the H-space laws and associativity of
/// `G`, the unit laws and oracle equivalence of the multiplication on
/// `G * G`, the fiber structure, and the dimension count
/// `Sⁿ → S^{2n+1} → S^{n+1}`.
pub fn fibration_report<S: Scalar>(
    inst: &HopfInstance<S>,
    cfg: &CheckConfig,
) -> Result<Vec<LawReport>, JoinError> {
    let started = Instant::now();
    let mut out = hspace_check(&inst.group, cfg);
    out.push(assoc_check(&inst.group, cfg));

    let mut imag = ImaginaroidInstance::<S>::cayley_dickson(inst.kind.level())?;
    out.push(imag.verify_associativity(cfg));
    if imag.associativity_verified() {
        out.extend(unit_law_check(&imag, cfg)?);
        out.push(oracle_equivalence(&imag, cfg)?);
    }
    out.extend(fiber_check(inst, cfg));

    let dims = model_dimensions(inst);
    let n = inst.kind.fiber_sphere();
    let as_s = |k: usize| S::from_ratio(k as i64, 1);
    let eval = Evaluation::new(
        Vec::new(),
        vec![as_s(dims.fiber), as_s(dims.total), as_s(dims.base)],
        vec![as_s(n), as_s(2 * n + 1), as_s(n + 1)],
    );
    let failed = eval.fails(0.0).then_some(eval);
    out.push(LawCheck::new("dimensions", inst.name()).decided(cfg, 1, failed, started));
    Ok(out)
}
