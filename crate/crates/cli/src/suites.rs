//! Instance catalogues and the suites behind each subcommand.

use hopfcheck_core::cdalg::{law_suite, zero_divisor_report, DEFAULT_MAX_LEVEL};
use hopfcheck_core::hopf::{fiber_check, fibration_report, HopfInstance, HopfKind};
use hopfcheck_core::joinmul::{diamond_check, join_hspace, oracle_equivalence, unit_law_check};
use hopfcheck_core::laws::{
    assoc_check, fg_lemma_suite, hspace_check, imaginaroid_check, spheroid_check, HSpace,
    ImaginaroidInstance, SpheroidInstance,
};
use hopfcheck_core::{CheckConfig, LawReport, Mode, Rational, Scalar};

use crate::args::RunConfig;
use crate::CliError;

/// A selectable instance: its report name, a short alias, and the
/// Cayley–Dickson level `--level` maps to.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub name: String,
    pub alias: String,
    pub level: u32,
}

fn entry(name: impl Into<String>, alias: impl Into<String>, level: u32) -> Entry {
    Entry {
        name: name.into(),
        alias: alias.into(),
        level,
    }
}

fn sphere(level: u32) -> String {
    format!("s{}", (1u32 << level) - 1)
}

/// The instances a subcommand can run, in default order.
pub fn catalogue(subcommand: &str) -> Vec<Entry> {
    match subcommand {
        "laws" => (0..=DEFAULT_MAX_LEVEL)
            .map(|l| entry(format!("level-{l}"), l.to_string(), l))
            .collect(),
        "zerodiv" => (0..=DEFAULT_MAX_LEVEL)
            .map(|l| entry(format!("level-{l}"), l.to_string(), l))
            .collect(),
        "spheroid" => std::iter::once(entry("sign-s0", "s0", 0))
            .chain((1..=3).map(|l| entry(format!("cd-{}", sphere(l)), sphere(l), l)))
            .collect(),
        "imaginaroid" => [
            ("imag-empty", "empty"),
            ("imag-s0", "s0"),
            ("imag-s2", "s2"),
            ("imag-s6", "s6"),
        ]
        .into_iter()
        .zip(0..)
        .map(|((n, a), l)| entry(n, a, l))
        .collect(),
        "hspace" => std::iter::once(entry("hspace-s0", "s0", 0))
            .chain((1..=3).map(|l| entry(format!("hspace-join-{}", sphere(l)), sphere(l), l)))
            .collect(),
        "diamond" => (0..=3)
            .map(|l| entry(format!("diamond-{}", sphere(l)), sphere(l), l))
            .collect(),
        "fiber" | "fibration" => HopfKind::ALL
            .into_iter()
            .map(|k| entry(format!("hopf-{k}"), k.name(), k.level()))
            .collect(),
        _ => Vec::new(),
    }
}

/// Instances run when neither `--instance` nor `--level` is given.
fn is_default(subcommand: &str, e: &Entry) -> bool {
    match subcommand {
        "laws" | "zerodiv" => e.level <= 4,
        // Suspensions carrying a multiplication used by some join H-space.
        "diamond" => e.level <= 2,
        _ => true,
    }
}

/// Resolves `--instance` and `--level` against the catalogue.
pub fn select(config: &RunConfig) -> Result<Vec<Entry>, CliError> {
    let sub = config.subcommand.as_str();
    let all = catalogue(sub);
    let listing = || {
        all.iter()
            .map(|e| format!("{} ({}, level {})", e.name, e.alias, e.level))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let chosen: Vec<Entry> = match (&config.instance, config.level) {
        (None, None) => all.iter().filter(|e| is_default(sub, e)).cloned().collect(),
        (Some(i), level) => {
            let e = all
                .iter()
                .find(|e| &e.name == i || &e.alias == i)
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "unknown {sub} instance `{i}`; available: {}",
                        listing()
                    ))
                })?;
            if level.is_some_and(|l| l != e.level) {
                return Err(CliError::Usage(format!(
                    "instance `{i}` is at level {}, not {}",
                    e.level,
                    level.unwrap_or_default()
                )));
            }
            vec![e.clone()]
        }
        (None, Some(l)) => {
            let found: Vec<Entry> = all.iter().filter(|e| e.level == l).cloned().collect();
            if found.is_empty() {
                return Err(CliError::Usage(format!(
                    "{sub} has no instance at level {l}; available: {}",
                    listing()
                )));
            }
            found
        }
    };
    Ok(chosen)
}

pub fn check_config(config: &RunConfig) -> CheckConfig {
    let base = CheckConfig::default()
        .with_samples(config.samples)
        .with_seed(config.seed);
    match config.tolerance {
        Some(t) => base.with_tolerance(t),
        None => base,
    }
}

/// Runs the selected suite in the configured arithmetic.
pub fn run_suite(config: &RunConfig) -> Result<Vec<LawReport>, CliError> {
    let entries = select(config)?;
    match config.mode {
        Mode::Exact => run_entries::<Rational>(config, &entries),
        Mode::Float => run_entries::<f64>(config, &entries),
    }
}

fn core_error(e: impl std::fmt::Display) -> CliError {
    CliError::Check(e.to_string())
}

fn run_entries<S: Scalar>(
    config: &RunConfig,
    entries: &[Entry],
) -> Result<Vec<LawReport>, CliError> {
    let cfg = check_config(config);
    let mut out = Vec::new();
    for e in entries {
        let level = e.level;
        match config.subcommand.as_str() {
            "laws" => {
                out.extend(law_suite::<S>(level, DEFAULT_MAX_LEVEL, &cfg).map_err(core_error)?)
            }
            // The search is exhaustive over rationals whatever the mode.
            "zerodiv" => out.push(zero_divisor_report(level, &cfg)),
            "spheroid" => {
                let inst = if level == 0 {
                    SpheroidInstance::<S>::sign_group()
                } else {
                    SpheroidInstance::cayley_dickson(level)
                };
                out.extend(spheroid_check(&inst, &cfg));
            }
            "imaginaroid" => {
                let mut inst =
                    ImaginaroidInstance::<S>::cayley_dickson(level).map_err(core_error)?;
                out.extend(imaginaroid_check(&inst, &cfg));
                out.push(inst.verify_associativity(&cfg));
                // Without associativity the f/g identities are a negative control.
                let fg_inst = if inst.associativity_verified() {
                    inst
                } else {
                    inst.assume_associative()
                };
                out.push(fg_lemma_suite(&fg_inst, &cfg).map_err(core_error)?);
            }
            "hspace" if level == 0 => {
                let h = HSpace::<S>::sign_group();
                out.extend(hspace_check(&h, &cfg));
                out.push(assoc_check(&h, &cfg));
            }
            "hspace" => {
                let mut imag =
                    ImaginaroidInstance::<S>::cayley_dickson(level - 1).map_err(core_error)?;
                out.push(imag.verify_associativity(&cfg));
                if imag.associativity_verified() {
                    let h = join_hspace(&imag).map_err(core_error)?;
                    out.extend(hspace_check(&h, &cfg));
                    out.push(assoc_check(&h, &cfg));
                    out.extend(unit_law_check(&imag, &cfg).map_err(core_error)?);
                    out.push(oracle_equivalence(&imag, &cfg).map_err(core_error)?);
                }
            }
            "diamond" => {
                let grid = config.grid.unwrap_or(64) as usize;
                out.extend(diamond_check::<S>(1 << level, grid, &cfg));
            }
            "fiber" => {
                let kind = kind_of(level);
                out.extend(fiber_check(&HopfInstance::<S>::new(kind), &cfg));
            }
            "fibration" => {
                let kind = kind_of(level);
                out.extend(
                    fibration_report(&HopfInstance::<S>::new(kind), &cfg).map_err(core_error)?,
                );
            }
            other => return Err(CliError::Usage(format!("unknown subcommand `{other}`"))),
        }
    }
    Ok(out)
}

fn kind_of(level: u32) -> HopfKind {
    HopfKind::ALL
        .into_iter()
        .find(|k| k.level() == level)
        .expect("catalogue only lists Hopf levels")
}
