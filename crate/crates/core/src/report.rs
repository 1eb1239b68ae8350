//! Law reports and the sampling harness that produces them.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::{sample_rng, suite_key, SampleRng};
use crate::scalar::{self, Scalar};

/// Outcome of a law check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    HoldsExact,
    HoldsSampled,
    Fails,
}

impl Status {
    pub fn holds(self) -> bool {
        self != Status::Fails
    }
}

/// A concrete counterexample: the inputs and both sides of the law, each as
/// a coefficient sequence in textual form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<Vec<String>>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub instance: String,
    pub status: Status,
    pub samples: u64,
    pub tolerance: Option<f64>,
    pub max_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub seed: u64,
    pub duration_ms: u64,
    /// Whether the outcome matches what the suite predicts for this instance.
    pub expected: bool,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.status.holds()
    }
}

/// Sampling parameters shared by every suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub samples: u64,
    pub seed: u64,
    /// Float-mode tolerance; ignored in exact mode.
    pub tolerance: f64,
    /// Bound on numerators and denominators of random rationals.
    pub magnitude: u32,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            tolerance: 1e-9,
            magnitude: 10,
        }
    }
}

impl CheckConfig {
    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }
}

/// One evaluated instance of a law.
#[derive(Clone, Debug)]
pub struct Evaluation<S> {
    pub inputs: Vec<Vec<S>>,
    pub lhs: Vec<S>,
    pub rhs: Vec<S>,
}

impl<S: Scalar> Evaluation<S> {
    pub fn new(inputs: Vec<Vec<S>>, lhs: Vec<S>, rhs: Vec<S>) -> Self {
        Self { inputs, lhs, rhs }
    }

    /// A yes/no condition encoded as `[1] = [1]` or `[0] = [1]`.
    pub fn condition(inputs: Vec<Vec<S>>, ok: bool) -> Self {
        let flag = if ok { S::one() } else { S::zero() };
        Self::new(inputs, vec![flag], vec![S::one()])
    }

    pub fn residual(&self) -> f64 {
        scalar::residual(&self.lhs, &self.rhs)
    }

    pub fn fails(&self, tolerance: f64) -> bool {
        !scalar::agrees(&self.lhs, &self.rhs, tolerance)
    }

    pub fn witness(&self) -> Witness {
        Witness {
            inputs: self.inputs.iter().map(|v| scalar::to_strings(v)).collect(),
            lhs: scalar::to_strings(&self.lhs),
            rhs: scalar::to_strings(&self.rhs),
        }
    }
}

/// Attempts per sample before a sample that cannot be evaluated is dropped.
const MAX_ATTEMPTS: u32 = 32;

#[derive(Clone, Debug)]
struct Tally<S> {
    count: u64,
    max_residual: f64,
    first_failure: Option<(u64, Evaluation<S>)>,
}

impl<S: Scalar> Tally<S> {
    fn empty() -> Self {
        Self {
            count: 0,
            max_residual: 0.0,
            first_failure: None,
        }
    }

    fn single(index: u64, eval: Evaluation<S>, tolerance: f64) -> Self {
        let residual = eval.residual();
        let failed = eval.fails(tolerance);
        Self {
            count: 1,
            max_residual: residual,
            first_failure: failed.then_some((index, eval)),
        }
    }

    fn merge(self, other: Self) -> Self {
        let first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        Self {
            count: self.count + other.count,
            max_residual: self.max_residual.max(other.max_residual),
            first_failure,
        }
    }
}

/// Identifies a law check and what the suite predicts for it.
#[derive(Clone, Debug)]
pub struct LawCheck {
    pub law: String,
    pub instance: String,
    pub expect_holds: bool,
}

impl LawCheck {
    pub fn new(law: impl Into<String>, instance: impl Into<String>) -> Self {
        Self {
            law: law.into(),
            instance: instance.into(),
            expect_holds: true,
        }
    }

    pub fn expecting(mut self, holds: bool) -> Self {
        self.expect_holds = holds;
        self
    }

    /// Checks the law on every structured input and on `cfg.samples` random
    /// ones.
    ///
    /// `evaluate` returns `None` when an input cannot be evaluated in the
    /// current mode (an irrational parameter in exact mode); such samples are
    /// redrawn from the next attempt stream.
    pub fn run<S, T, G, E>(
        &self,
        cfg: &CheckConfig,
        structured: &[T],
        generate: G,
        evaluate: E,
    ) -> LawReport
    where
        S: Scalar,
        T: Sync,
        G: Fn(&mut SampleRng) -> T + Sync,
        E: Fn(&T) -> Option<Evaluation<S>> + Sync,
    {
        self.run_with_search(cfg, structured, generate, evaluate, || None)
    }

    /// Like [`run`](Self::run), but when the law fails without a structured
    /// counterexample, `search` is consulted for a smaller witness before
    /// falling back to the first failing random sample.
    pub fn run_with_search<S, T, G, E, F>(
        &self,
        cfg: &CheckConfig,
        structured: &[T],
        generate: G,
        evaluate: E,
        search: F,
    ) -> LawReport
    where
        S: Scalar,
        T: Sync,
        G: Fn(&mut SampleRng) -> T + Sync,
        E: Fn(&T) -> Option<Evaluation<S>> + Sync,
        F: FnOnce() -> Option<Evaluation<S>>,
    {
        let start = Instant::now();
        let tol = cfg.tolerance;
        let key = suite_key(&format!("{}@{}", self.law, self.instance));

        let fixed = structured
            .par_iter()
            .enumerate()
            .map(|(i, t)| match evaluate(t) {
                Some(e) => Tally::single(i as u64, e, tol),
                None => Tally::empty(),
            })
            .reduce(Tally::empty, Tally::merge);

        let sampled = (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                for attempt in 0..MAX_ATTEMPTS {
                    let mut rng = sample_rng(cfg.seed, key, i, attempt);
                    let input = generate(&mut rng);
                    if let Some(e) = evaluate(&input) {
                        return Tally::single(i, e, tol);
                    }
                }
                Tally::empty()
            })
            .reduce(Tally::empty, Tally::merge);

        let failed = fixed.first_failure.is_some() || sampled.first_failure.is_some();
        let witness = if failed {
            fixed
                .first_failure
                .as_ref()
                .map(|(_, e)| e.witness())
                .or_else(|| search().map(|e| e.witness()))
                .or_else(|| sampled.first_failure.as_ref().map(|(_, e)| e.witness()))
        } else {
            None
        };
        let status = if failed {
            Status::Fails
        } else if S::EXACT {
            Status::HoldsExact
        } else {
            Status::HoldsSampled
        };
        LawReport {
            law: self.law.clone(),
            instance: self.instance.clone(),
            status,
            samples: fixed.count + sampled.count,
            tolerance: (!S::EXACT).then_some(tol),
            max_residual: fixed.max_residual.max(sampled.max_residual),
            witness,
            seed: cfg.seed,
            duration_ms: start.elapsed().as_millis() as u64,
            expected: status.holds() == self.expect_holds,
        }
    }

    /// A report for a law decided by a single exhaustive computation rather
    /// than by sampling.
    pub fn decided<S: Scalar>(
        &self,
        cfg: &CheckConfig,
        checked: u64,
        counterexample: Option<Evaluation<S>>,
        started: Instant,
    ) -> LawReport {
        let status = match counterexample {
            Some(_) => Status::Fails,
            None if S::EXACT => Status::HoldsExact,
            None => Status::HoldsSampled,
        };
        LawReport {
            law: self.law.clone(),
            instance: self.instance.clone(),
            status,
            samples: checked,
            tolerance: (!S::EXACT).then_some(cfg.tolerance),
            max_residual: counterexample.as_ref().map_or(0.0, Evaluation::residual),
            witness: counterexample.as_ref().map(Evaluation::witness),
            seed: cfg.seed,
            duration_ms: started.elapsed().as_millis() as u64,
            expected: status.holds() == self.expect_holds,
        }
    }
}

/// All `arity`-tuples of `items`, in lexicographic order.
pub fn cartesian_power<T: Clone>(items: &[T], arity: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |it| {
                    let mut p = prefix.clone();
                    p.push(it.clone());
                    p
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};
    use rand::Rng;

    fn cfg(samples: u64) -> CheckConfig {
        CheckConfig::default().with_samples(samples).with_seed(11)
    }

    #[test]
    fn holding_law_reports_exact_status() {
        let r = LawCheck::new("x+0=x", "test").run(
            &cfg(100),
            &[0i64, 1, 2],
            |rng| rng.random_range(-5i64..5),
            |&x| {
                let x = Rational::from(x);
                Some(Evaluation::new(
                    vec![vec![x.clone()]],
                    vec![x.clone() + Rational::zero()],
                    vec![x],
                ))
            },
        );
        assert_eq!(r.status, Status::HoldsExact);
        assert_eq!(r.samples, 103);
        assert!(r.witness.is_none());
        assert!(r.expected);
        assert_eq!(r.tolerance, None);
    }

    #[test]
    fn failing_law_carries_lowest_index_witness() {
        let r = LawCheck::new("x=1", "test").expecting(false).run(
            &cfg(50),
            &[1i64, 1, 3, 4],
            |_| 1i64,
            |&x| {
                Some(Evaluation::new(
                    vec![vec![Rational::from(x)]],
                    vec![Rational::from(x)],
                    vec![Rational::one()],
                ))
            },
        );
        assert_eq!(r.status, Status::Fails);
        assert_eq!(r.witness.unwrap().inputs, vec![vec!["3".to_string()]]);
        assert_eq!(r.max_residual, 3.0);
        assert!(r.expected);
    }

    #[test]
    fn float_holds_are_sampled_with_tolerance() {
        let r = LawCheck::new("assoc", "f64").run(
            &cfg(200),
            &[] as &[(f64, f64, f64)],
            |rng| {
                (
                    rng.random::<f64>(),
                    rng.random::<f64>(),
                    rng.random::<f64>(),
                )
            },
            |&(a, b, c)| {
                Some(Evaluation::new(
                    vec![],
                    vec![(a + b) + c],
                    vec![a + (b + c)],
                ))
            },
        );
        assert_eq!(r.status, Status::HoldsSampled);
        assert_eq!(r.tolerance, Some(1e-9));
        assert!(r.max_residual < 1e-12);
    }

    #[test]
    fn unevaluable_samples_are_redrawn() {
        let r = LawCheck::new("odd", "test").run(
            &cfg(64),
            &[] as &[u32],
            |rng| rng.random_range(0u32..100),
            |&n| (n % 2 == 1).then(|| Evaluation::<Rational>::condition(vec![], true)),
        );
        assert_eq!(r.samples, 64);
    }

    #[test]
    fn report_is_independent_of_thread_count() {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                LawCheck::new("lt", "test").expecting(false).run(
                    &cfg(500),
                    &[] as &[u32],
                    |rng| rng.random_range(0u32..1000),
                    |&n| {
                        Some(Evaluation::<Rational>::condition(
                            vec![vec![Rational::from(n)]],
                            n < 990,
                        ))
                    },
                )
            })
        };
        let mut a = run(1);
        let mut b = run(4);
        a.duration_ms = 0;
        b.duration_ms = 0;
        assert_eq!(a, b);
    }
}
