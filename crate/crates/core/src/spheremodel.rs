//! Coordinate models of spheres, suspensions and joins.
//!
//! A point of the join `X * Y` of two spheres is stored by its embedding
//!
//! ```text
//! Φ(u, v, (c, s)) = (c·u, s·v)      c, s ≥ 0,  c² + s² = 1
//! ```
//!
//! into the unit sphere of the concatenated ambient space. The constructor
//! view (`inl`, `inr` or `glue`) is recovered from the coordinates on demand.
//! Parameters of glue arcs are always points `(c, s)` of the quarter circle,
//! never angles, so that rational inputs stay rational.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::scalar::{self, Scalar};

/// Float coordinates below this are treated as zero when classifying points,
/// and float points this close to the unit sphere count as unit.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Tolerance of the isometry probe in float mode.
const PROBE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("point is not on the unit sphere (|norm² - 1| = {0:e})")]
    NotUnit(f64),
    #[error("({c}, {s}) is not on the closed quarter circle")]
    NotQuarter { c: f64, s: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parameter is irrational; the point has no exact constructor view")]
    IrrationalParameter,
    #[error("map is not a linear isometry (probe residual {0:e})")]
    NotIsometry(f64),
    #[error("meridian parameter ({c}, {s}) has negative sine or is not unit")]
    NotHalfCircle { c: f64, s: f64 },
}

fn is_unit_sq<S: Scalar>(sq: &S) -> bool {
    if S::EXACT {
        sq.is_one()
    } else {
        (sq.to_f64() - 1.0).abs() <= ZERO_THRESHOLD
    }
}

fn unit_defect<S: Scalar>(sq: &S) -> f64 {
    (sq.to_f64() - 1.0).abs()
}

fn side_is_zero<S: Scalar>(norm_sq: &S) -> bool {
    if S::EXACT {
        norm_sq.is_zero()
    } else {
        norm_sq.to_f64().sqrt() < ZERO_THRESHOLD
    }
}

/// A point of the unit sphere in `d`-dimensional ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct SpherePoint<S> {
    coords: Vec<S>,
}

impl<S: Scalar> SpherePoint<S> {
    pub fn new(coords: Vec<S>) -> Result<Self, ModelError> {
        let sq = scalar::norm_sq(&coords);
        if is_unit_sq(&sq) {
            Ok(Self { coords })
        } else {
            Err(ModelError::NotUnit(unit_defect(&sq)))
        }
    }

    /// Wraps coordinates known to be unit by construction.
    pub(crate) fn trusted(coords: Vec<S>) -> Self {
        Self { coords }
    }

    /// `(1, 0, …, 0)`.
    pub fn north(dim: usize) -> Self {
        Self::basis(dim, 0)
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        let mut coords = vec![S::zero(); dim];
        coords[i] = S::one();
        Self { coords }
    }

    /// The inverse stereographic image of `y`, a point of the sphere in
    /// `y.len() + 1` dimensions.
    pub fn stereographic(y: &[S]) -> Self {
        Self {
            coords: scalar::stereographic(y),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, magnitude: u32) -> Self {
        Self {
            coords: S::random_unit(rng, dim, magnitude),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn negate(&self) -> Self {
        Self {
            coords: scalar::neg(&self.coords),
        }
    }

    pub fn to_f64(&self) -> SpherePoint<f64> {
        SpherePoint {
            coords: self.coords.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for SpherePoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point `(c, s)` of the quarter circle: `c, s ≥ 0`, `c² + s² = 1`.
///
/// `(1, 0)` is the start of a glue arc and `(0, 1)` its end.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarterPair<S> {
    c: S,
    s: S,
}

impl<S: Scalar> QuarterPair<S> {
    pub fn new(c: S, s: S) -> Result<Self, ModelError> {
        let sq = c.clone() * c.clone() + s.clone() * s.clone();
        if c < S::zero() || s < S::zero() || !is_unit_sq(&sq) {
            return Err(ModelError::NotQuarter {
                c: c.to_f64(),
                s: s.to_f64(),
            });
        }
        Ok(Self { c, s })
    }

    pub(crate) fn trusted(c: S, s: S) -> Self {
        Self { c, s }
    }

    pub fn start() -> Self {
        Self {
            c: S::one(),
            s: S::zero(),
        }
    }

    pub fn end() -> Self {
        Self {
            c: S::zero(),
            s: S::one(),
        }
    }

    /// The point `(cos θ, sin θ)` with `tan(θ/2) = t`; requires `0 ≤ t ≤ 1`.
    pub fn from_tangent(t: &S) -> Result<Self, ModelError> {
        let (c, s) = scalar::quarter_from_tangent(t);
        Self::new(c, s)
    }

    /// A random interior point.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, magnitude: u32) -> Self {
        let (c, s) = S::random_quarter(rng, magnitude);
        Self { c, s }
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn s(&self) -> &S {
        &self.s
    }

    pub fn is_start(&self) -> bool {
        scalar::negligible(&self.s, ZERO_THRESHOLD)
    }

    pub fn is_end(&self) -> bool {
        scalar::negligible(&self.c, ZERO_THRESHOLD)
    }

    /// The same point traversed backwards: `(s, c)`.
    pub fn reversed(&self) -> Self {
        Self {
            c: self.s.clone(),
            s: self.c.clone(),
        }
    }
}

/// A point of the suspension of a sphere of dimension `d`, stored as a point
/// `(u₀, u⃗)` of the sphere in `1 + d` dimensions. The poles are
/// `N = (1, 0, …)` and `S = (−1, 0, …)`; the meridian through a base point
/// `a` is `θ ↦ (cos θ, sin θ·a)` for `θ ∈ [0, π]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuspPoint<S> {
    point: SpherePoint<S>,
}

/// Constructor view of a suspension point.
#[derive(Clone, Debug, PartialEq)]
pub enum SuspView<S> {
    North,
    South,
    /// `(c, s·base)` with `s > 0`.
    Merid {
        base: SpherePoint<S>,
        c: S,
        s: S,
    },
}

impl<S: Scalar> SuspPoint<S> {
    /// Reads a point of the `(1 + d)`-dimensional sphere as a suspension
    /// point over the `d`-dimensional sphere.
    pub fn from_point(point: SpherePoint<S>) -> Result<Self, ModelError> {
        if point.dim() == 0 {
            return Err(ModelError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { point })
    }

    pub fn new(coords: Vec<S>) -> Result<Self, ModelError> {
        Self::from_point(SpherePoint::new(coords)?)
    }

    pub fn north(base_dim: usize) -> Self {
        Self {
            point: SpherePoint::north(base_dim + 1),
        }
    }

    pub fn south(base_dim: usize) -> Self {
        Self {
            point: SpherePoint::north(base_dim + 1).negate(),
        }
    }

    /// The point `(c, s·a)` of the meridian through `a`; requires `s ≥ 0` and
    /// `c² + s² = 1`.
    pub fn merid(a: &SpherePoint<S>, c: S, s: S) -> Result<Self, ModelError> {
        let sq = c.clone() * c.clone() + s.clone() * s.clone();
        if s < S::zero() || !is_unit_sq(&sq) {
            return Err(ModelError::NotHalfCircle {
                c: c.to_f64(),
                s: s.to_f64(),
            });
        }
        let mut coords = Vec::with_capacity(a.dim() + 1);
        coords.push(c);
        coords.extend(scalar::scale(&s, a.coords()));
        Ok(Self {
            point: SpherePoint::trusted(coords),
        })
    }

    pub fn base_dim(&self) -> usize {
        self.point.dim() - 1
    }

    pub fn point(&self) -> &SpherePoint<S> {
        &self.point
    }

    pub fn coords(&self) -> &[S] {
        self.point.coords()
    }

    pub fn is_north(&self) -> bool {
        *self == Self::north(self.base_dim())
    }

    pub fn is_south(&self) -> bool {
        *self == Self::south(self.base_dim())
    }

    pub fn view(&self) -> Result<SuspView<S>, ModelError> {
        let coords = self.point.coords();
        let tail = &coords[1..];
        let sq = scalar::norm_sq(tail);
        if side_is_zero(&sq) {
            return Ok(if coords[0] > S::zero() {
                SuspView::North
            } else {
                SuspView::South
            });
        }
        let s = sq.sqrt().ok_or(ModelError::IrrationalParameter)?;
        let base = tail.iter().map(|x| x.clone() / s.clone()).collect();
        Ok(SuspView::Merid {
            base: SpherePoint::trusted(base),
            c: coords[0].clone(),
            s,
        })
    }

    /// Negation: the antipode. Swaps the poles and sends the meridian
    /// through `a` to the reversed meridian through `−a`.
    pub fn neg(&self) -> Self {
        Self {
            point: self.point.negate(),
        }
    }

    /// Conjugation: fixes both poles and sends the meridian through `a` to
    /// the meridian through `−a`.
    pub fn conj(&self) -> Self {
        let mut coords = scalar::neg(self.point.coords());
        coords[0] = -coords[0].clone();
        Self {
            point: SpherePoint::trusted(coords),
        }
    }

    /// The same point in the join `S⁰ * X`, with `inl(+1) = N`,
    /// `inl(−1) = S` and `inr(a)` the equator point over `a`.
    pub fn to_join(&self) -> JoinPoint<S> {
        let coords = self.point.coords();
        JoinPoint::trusted(vec![coords[0].clone()], coords[1..].to_vec())
    }

    /// Inverse of [`to_join`](Self::to_join).
    pub fn from_join(x: &JoinPoint<S>) -> Result<Self, ModelError> {
        if x.left_dim() != 1 {
            return Err(ModelError::DimensionMismatch {
                expected: 1,
                found: x.left_dim(),
            });
        }
        Self::from_point(SpherePoint::trusted(x.concat()))
    }
}

pub fn susp_neg<S: Scalar>(x: &SuspPoint<S>) -> SuspPoint<S> {
    x.neg()
}

pub fn susp_conj<S: Scalar>(x: &SuspPoint<S>) -> SuspPoint<S> {
    x.conj()
}

/// A point of the join of a `d₁`- and a `d₂`-dimensional sphere, stored as
/// its embedded pair `(p, q)` with `‖p‖² + ‖q‖² = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct JoinPoint<S> {
    left: Vec<S>,
    right: Vec<S>,
}

/// Constructor view of a join point.
#[derive(Clone, Debug, PartialEq)]
pub enum JoinView<S> {
    Inl(SpherePoint<S>),
    Inr(SpherePoint<S>),
    Glue {
        u: SpherePoint<S>,
        v: SpherePoint<S>,
        t: QuarterPair<S>,
    },
}

impl<S: Scalar> JoinView<S> {
    /// `0` for `inl`, `1` for `inr`, `2` for `glue`.
    pub fn kind(&self) -> usize {
        match self {
            JoinView::Inl(_) => 0,
            JoinView::Inr(_) => 1,
            JoinView::Glue { .. } => 2,
        }
    }
}

impl<S: Scalar> JoinPoint<S> {
    pub fn new(left: Vec<S>, right: Vec<S>) -> Result<Self, ModelError> {
        let sq = scalar::norm_sq(&left) + scalar::norm_sq(&right);
        if is_unit_sq(&sq) {
            Ok(Self { left, right })
        } else {
            Err(ModelError::NotUnit(unit_defect(&sq)))
        }
    }

    pub(crate) fn trusted(left: Vec<S>, right: Vec<S>) -> Self {
        Self { left, right }
    }

    pub fn inl(u: &SpherePoint<S>, right_dim: usize) -> Self {
        Self {
            left: u.coords().to_vec(),
            right: vec![S::zero(); right_dim],
        }
    }

    pub fn inr(left_dim: usize, v: &SpherePoint<S>) -> Self {
        Self {
            left: vec![S::zero(); left_dim],
            right: v.coords().to_vec(),
        }
    }

    pub fn glue(u: &SpherePoint<S>, v: &SpherePoint<S>, t: &QuarterPair<S>) -> Self {
        phi(u, v, t)
    }

    pub fn left(&self) -> &[S] {
        &self.left
    }

    pub fn right(&self) -> &[S] {
        &self.right
    }

    pub fn left_dim(&self) -> usize {
        self.left.len()
    }

    pub fn right_dim(&self) -> usize {
        self.right.len()
    }

    /// `(p, q)` as a single vector of `d₁ + d₂` coordinates.
    pub fn concat(&self) -> Vec<S> {
        let mut out = self.left.clone();
        out.extend(self.right.iter().cloned());
        out
    }

    /// Splits a unit vector after `left_dim` coordinates.
    pub fn from_concat(coords: &[S], left_dim: usize) -> Result<Self, ModelError> {
        if left_dim > coords.len() {
            return Err(ModelError::DimensionMismatch {
                expected: coords.len(),
                found: left_dim,
            });
        }
        let (l, r) = coords.split_at(left_dim);
        Self::new(l.to_vec(), r.to_vec())
    }

    /// The same embedded vector read with a different split point; this is
    /// how `(X * Y) * Z ≅ X * (Y * Z)` acts on embedded coordinates.
    pub fn regroup(&self, left_dim: usize) -> Result<Self, ModelError> {
        let all = self.concat();
        if left_dim > all.len() {
            return Err(ModelError::DimensionMismatch {
                expected: all.len(),
                found: left_dim,
            });
        }
        let (l, r) = all.split_at(left_dim);
        Ok(Self::trusted(l.to_vec(), r.to_vec()))
    }

    /// Classifies the point. In float mode a side of norm below
    /// [`ZERO_THRESHOLD`] counts as zero; in exact mode a glue point whose
    /// parameter is irrational has no exact view.
    pub fn view(&self) -> Result<JoinView<S>, ModelError> {
        let pp = scalar::norm_sq(&self.left);
        let qq = scalar::norm_sq(&self.right);
        if side_is_zero(&qq) {
            return Ok(JoinView::Inl(SpherePoint::trusted(self.left.clone())));
        }
        if side_is_zero(&pp) {
            return Ok(JoinView::Inr(SpherePoint::trusted(self.right.clone())));
        }
        let c = pp.sqrt().ok_or(ModelError::IrrationalParameter)?;
        let s = qq.sqrt().ok_or(ModelError::IrrationalParameter)?;
        let u = self.left.iter().map(|x| x.clone() / c.clone()).collect();
        let v = self.right.iter().map(|x| x.clone() / s.clone()).collect();
        Ok(JoinView::Glue {
            u: SpherePoint::trusted(u),
            v: SpherePoint::trusted(v),
            t: QuarterPair::trusted(c, s),
        })
    }

    /// `q = 0`, up to [`ZERO_THRESHOLD`] on `‖q‖` in float mode.
    pub fn is_inl(&self) -> bool {
        side_is_zero(&scalar::norm_sq(&self.right))
    }

    /// `p = 0`, up to [`ZERO_THRESHOLD`] on `‖p‖` in float mode.
    pub fn is_inr(&self) -> bool {
        side_is_zero(&scalar::norm_sq(&self.left))
    }

    pub fn to_f64(&self) -> JoinPoint<f64> {
        JoinPoint {
            left: self.left.iter().map(Scalar::to_f64).collect(),
            right: self.right.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for JoinPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {}",
            SpherePoint::trusted(self.left.clone()),
            SpherePoint::trusted(self.right.clone())
        )
    }
}

/// `Φ(u, v, (c, s)) = (c·u, s·v)`.
pub fn phi<S: Scalar>(u: &SpherePoint<S>, v: &SpherePoint<S>, t: &QuarterPair<S>) -> JoinPoint<S> {
    JoinPoint::trusted(
        scalar::scale(t.c(), u.coords()),
        scalar::scale(t.s(), v.coords()),
    )
}

/// [`phi`] from a raw parameter pair, which must lie on the quarter circle.
pub fn phi_checked<S: Scalar>(
    u: &SpherePoint<S>,
    v: &SpherePoint<S>,
    c: S,
    s: S,
) -> Result<JoinPoint<S>, ModelError> {
    Ok(phi(u, v, &QuarterPair::new(c, s)?))
}

pub fn join_view<S: Scalar>(x: &JoinPoint<S>) -> Result<JoinView<S>, ModelError> {
    x.view()
}

type LinearFn<S> = dyn Fn(&[S]) -> Vec<S> + Send + Sync;

/// A linear isometry between ambient spaces, restricted to unit spheres.
#[derive(Clone)]
pub struct SphereMap<S> {
    dim_in: usize,
    dim_out: usize,
    f: Arc<LinearFn<S>>,
}

impl<S> fmt::Debug for SphereMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SphereMap")
            .field("dim_in", &self.dim_in)
            .field("dim_out", &self.dim_out)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> SphereMap<S> {
    /// Wraps `f` after probing it on the standard basis and on sums of pairs
    /// of basis vectors: the images of the basis must be orthonormal and `f`
    /// additive on the probes.
    pub fn new<F>(dim_in: usize, dim_out: usize, f: F) -> Result<Self, ModelError>
    where
        F: Fn(&[S]) -> Vec<S> + Send + Sync + 'static,
    {
        let map = Self::trusted(dim_in, dim_out, f);
        let images: Vec<Vec<S>> = (0..dim_in)
            .map(|i| (map.f)(SpherePoint::<S>::basis(dim_in, i).coords()))
            .collect();
        let mut worst = 0.0f64;
        for (i, fi) in images.iter().enumerate() {
            if fi.len() != dim_out {
                return Err(ModelError::DimensionMismatch {
                    expected: dim_out,
                    found: fi.len(),
                });
            }
            for (j, fj) in images.iter().enumerate().skip(i) {
                let target = if i == j { S::one() } else { S::zero() };
                worst = worst.max((scalar::dot(fi, fj) - target).abs_value().to_f64());
                if j > i {
                    let mut probe = vec![S::zero(); dim_in];
                    probe[i] = S::one();
                    probe[j] = S::one();
                    worst = worst.max(scalar::residual(&(map.f)(&probe), &scalar::add(fi, fj)));
                }
            }
        }
        let bad = if S::EXACT {
            worst != 0.0
        } else {
            worst > PROBE_TOLERANCE
        };
        if bad {
            Err(ModelError::NotIsometry(worst))
        } else {
            Ok(map)
        }
    }

    /// Wraps `f` without probing; the caller vouches that it is a linear
    /// isometry.
    pub fn trusted<F>(dim_in: usize, dim_out: usize, f: F) -> Self
    where
        F: Fn(&[S]) -> Vec<S> + Send + Sync + 'static,
    {
        Self {
            dim_in,
            dim_out,
            f: Arc::new(f),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::trusted(dim, dim, <[S]>::to_vec)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Applies the underlying linear map to an ambient vector.
    pub fn apply_vec(&self, x: &[S]) -> Vec<S> {
        (self.f)(x)
    }

    pub fn apply(&self, x: &SpherePoint<S>) -> Result<SpherePoint<S>, ModelError> {
        if x.dim() != self.dim_in {
            return Err(ModelError::DimensionMismatch {
                expected: self.dim_in,
                found: x.dim(),
            });
        }
        Ok(SpherePoint::trusted((self.f)(x.coords())))
    }
}

/// The induced map `f * g` on joins: `(p, q) ↦ (f p, g q)`.
pub fn join_functor<S: Scalar>(
    f: &SphereMap<S>,
    g: &SphereMap<S>,
    x: &JoinPoint<S>,
) -> Result<JoinPoint<S>, ModelError> {
    if x.left_dim() != f.dim_in {
        return Err(ModelError::DimensionMismatch {
            expected: f.dim_in,
            found: x.left_dim(),
        });
    }
    if x.right_dim() != g.dim_in {
        return Err(ModelError::DimensionMismatch {
            expected: g.dim_in,
            found: x.right_dim(),
        });
    }
    Ok(JoinPoint::trusted(
        f.apply_vec(x.left()),
        g.apply_vec(x.right()),
    ))
}
