//! Batch verification over a list of group specs.

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::construct::{self, GroupSpec};
use crate::criteria::{
    frobenius_exclusion_check, genuine_slices, realized_frobenius_pairs, verify_npq_psl2,
};
use crate::error::{Error, Result};
use crate::graphs::{gk_graph, nprime_graph, GkMode};
use crate::numtheory::{multiplicative_order, prime_power};
use crate::oracles::{
    descent_suite, frobenius_count_suite, stocking_identity, verify_pushforward_identity,
    verify_quotient_subgraph, verify_ring_commutators,
};
use crate::perm::PermGroup;
use crate::report::{CheckRecord, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Graphs,
    QuotientSubgraph,
    Descent,
    FrobeniusCount,
    NpqPsl2,
    RingProperties,
    CriterionSoundness,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Graphs,
        Suite::QuotientSubgraph,
        Suite::Descent,
        Suite::FrobeniusCount,
        Suite::NpqPsl2,
        Suite::RingProperties,
        Suite::CriterionSoundness,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    /// Overrides the enumeration bound of every built group.
    pub enumeration: Option<usize>,
    pub quotient_max_order: u128,
    pub ring_max_order: u128,
    pub ring_pairs: usize,
    pub ring_samples: usize,
    pub descent_instances: usize,
    pub stocking_max_n: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: None,
            quotient_max_order: 10_000,
            ring_max_order: 60,
            ring_pairs: 50,
            ring_samples: 5,
            descent_instances: 100,
            stocking_max_n: 256,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    /// One JSON record per line.
    #[default]
    Jsonl,
    /// A single JSON array.
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    /// `None` writes to stdout.
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusConfig {
    pub entries: Vec<GroupSpec>,
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub bounds: Bounds,
    #[serde(default)]
    pub output: Output,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

pub const DEFAULT_SEED: u64 = 20240611;

fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl CorpusConfig {
    pub fn new(entries: Vec<GroupSpec>, suites: Vec<Suite>) -> Self {
        CorpusConfig {
            entries,
            suites,
            bounds: Bounds::default(),
            output: Output::default(),
            seed: DEFAULT_SEED,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::param("corpus config needs at least one entry"));
        }
        if self.suites.is_empty() {
            return Err(Error::param("corpus config needs at least one suite"));
        }
        let b = &self.bounds;
        if b.enumeration == Some(0)
            || b.quotient_max_order == 0
            || b.ring_max_order == 0
            || b.ring_pairs == 0
            || b.ring_samples == 0
            || b.descent_instances == 0
        {
            return Err(Error::param("corpus bounds must be positive"));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: CorpusConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// The default corpus: small symmetric and alternating groups, `PSL(2,q)`,
/// cyclic, dihedral, Frobenius, 2-Frobenius and presented groups.
pub fn default_corpus() -> Vec<GroupSpec> {
    [
        "Sym(2)",
        "Sym(3)",
        "Sym(4)",
        "Sym(5)",
        "Sym(6)",
        "Sym(7)",
        "Alt(4)",
        "Alt(5)",
        "Alt(6)",
        "Alt(7)",
        "PSL(2,4)",
        "PSL(2,5)",
        "PSL(2,7)",
        "PSL(2,8)",
        "PSL(2,9)",
        "PSL(2,11)",
        "PSL(2,13)",
        "Cyclic(6)",
        "Cyclic(12)",
        "Cyclic(15)",
        "Dihedral(8)",
        "Dihedral(10)",
        "Dihedral(12)",
        "Frob(7,3,1)",
        "Frob(11,5,1)",
        "Frob(13,2,2)",
        "Frob(13,3,1)",
        "TwoFrob(2,2,3,2)",
        "TwoFrob(2,4,5,4)",
        "TwoFrob(3,6,7,3)",
        "Presented(7,3,2)",
        "Presented(13,3,3)",
    ]
    .iter()
    .map(|s| s.parse().expect("corpus specs parse"))
    .collect()
}

fn bound_or_fail(check: &str, instance: &str, e: Error) -> CheckRecord {
    match e {
        Error::EnumerationBoundExceeded { .. } => CheckRecord::new(
            check,
            instance,
            Verdict::Skip,
            json!({"reason": e.to_string()}),
        ),
        _ => CheckRecord::new(
            check,
            instance,
            Verdict::Fail,
            json!({"error": e.to_string()}),
        ),
    }
}

/// Builds the N-prime graph and the prime graph in all three modes.
pub fn graphs_record(name: &str, g: &PermGroup) -> CheckRecord {
    let run = || -> Result<CheckRecord> {
        let nprime = nprime_graph(g)?;
        let gks = GkMode::ALL
            .iter()
            .map(|&m| gk_graph(g, m))
            .collect::<Result<Vec<_>>>()?;
        let agree = gks.windows(2).all(|w| w[0] == w[1]);
        Ok(CheckRecord::new(
            "graphs",
            name,
            Verdict::from_bool(agree),
            json!({
                "order": g.order().to_string(),
                "nprime": nprime,
                "gk": gks[0],
                "modes_agree": agree,
            }),
        ))
    };
    run().unwrap_or_else(|e| bound_or_fail("graphs", name, e))
}

/// For every realized Frobenius pair `(p, q)` of `g` and every genuine slice,
/// the exclusion criterion must not apply.
pub fn criterion_soundness_records(
    name: &str,
    g: &PermGroup,
    spec: Option<&GroupSpec>,
) -> Vec<CheckRecord> {
    let run = || -> Result<Vec<CheckRecord>> {
        let mut out = Vec::new();
        for (p, q) in realized_frobenius_pairs(g)? {
            let r = (2..p)
                .find(|&r| multiplicative_order(r, p) == Some(q))
                .expect("q divides p - 1") as i64;
            let mut applied = Vec::new();
            let mut checked = Vec::new();
            for (label, slice, rho) in genuine_slices(g, spec, p, r)? {
                let rep = frobenius_exclusion_check(&slice, q, r, &rho)?;
                if rep.applies {
                    applied.push(label.clone());
                }
                checked.push(json!({"slice": label, "failed_condition": rep.failed_condition}));
            }
            out.push(CheckRecord::new(
                "criterion-soundness",
                format!("{name} (p,q)=({p},{q})"),
                Verdict::from_bool(applied.is_empty()),
                json!({"r": r, "slices": checked, "false_exclusions": applied}),
            ));
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![bound_or_fail("criterion-soundness", name, e)])
}

fn ring_records(name: &str, g: PermGroup, bounds: &Bounds, seed: u64) -> Vec<CheckRecord> {
    if g.order() > bounds.ring_max_order {
        return vec![CheckRecord::new(
            "ring-properties",
            name,
            Verdict::Skip,
            json!({"reason": format!("order {} exceeds {}", g.order(), bounds.ring_max_order)}),
        )];
    }
    let g = Arc::new(g);
    let mut out = Vec::new();
    for rec in [
        verify_ring_commutators(name, &g, bounds.ring_pairs, seed),
        verify_pushforward_identity(name, &g, bounds.ring_samples, seed),
    ] {
        out.push(rec.unwrap_or_else(|e| bound_or_fail("ring-properties", name, e)));
    }
    out
}

fn npq_record(spec: &GroupSpec) -> Option<CheckRecord> {
    let GroupSpec::Psl2(q) = spec else {
        return None;
    };
    let (r, f) = prime_power(*q)?;
    if r == 2 || *q < 5 {
        return None;
    }
    let name = spec.to_string();
    Some(match verify_npq_psl2(r, f) {
        Ok(rep) => CheckRecord::new(
            "npq-psl2",
            name,
            Verdict::from_bool(rep.verified),
            json!({"report": rep.verdict(), "npq": rep}),
        ),
        Err(e) => bound_or_fail("npq-psl2", &name, e),
    })
}

fn entry_records(spec: &GroupSpec, cfg: &CorpusConfig, index: usize) -> Vec<CheckRecord> {
    let name = spec.to_string();
    let g = match construct::build(spec) {
        Ok(g) => match cfg.bounds.enumeration {
            Some(b) => g.with_enumeration_bound(b),
            None => g,
        },
        Err(e) => {
            return vec![CheckRecord::new(
                "build",
                name,
                Verdict::Fail,
                json!({"error": e.to_string()}),
            )]
        }
    };
    let mut out = Vec::new();
    for suite in &cfg.suites {
        match suite {
            Suite::Graphs => out.push(graphs_record(&name, &g)),
            Suite::QuotientSubgraph => out.extend(verify_quotient_subgraph(
                &name,
                &g,
                cfg.bounds.quotient_max_order,
            )),
            Suite::NpqPsl2 => out.extend(npq_record(spec)),
            Suite::RingProperties => out.extend(ring_records(
                &name,
                g.clone(),
                &cfg.bounds,
                cfg.seed.wrapping_add(index as u64),
            )),
            Suite::CriterionSoundness => {
                out.extend(criterion_soundness_records(&name, &g, Some(spec)))
            }
            Suite::Descent | Suite::FrobeniusCount => {}
        }
    }
    out
}

/// Runs every configured suite. Entry-level suites run in parallel across
/// entries; records come back in entry order, followed by the global suites.
pub fn run(cfg: &CorpusConfig) -> Result<Vec<CheckRecord>> {
    cfg.validate()?;
    let per_entry: Vec<Vec<CheckRecord>> = cfg
        .entries
        .par_iter()
        .enumerate()
        .map(|(i, spec)| entry_records(spec, cfg, i))
        .collect();
    let mut out: Vec<CheckRecord> = per_entry.into_iter().flatten().collect();
    if cfg.suites.contains(&Suite::Descent) {
        out.extend(descent_suite(cfg.bounds.descent_instances, cfg.seed));
    }
    if cfg.suites.contains(&Suite::FrobeniusCount) {
        out.extend(frobenius_count_suite());
        let n = cfg.bounds.stocking_max_n;
        let ok = (1..=n).all(stocking_identity);
        out.push(CheckRecord::new(
            "stocking-identity",
            format!("n <= {n}"),
            Verdict::from_bool(ok),
            json!({"max_n": n}),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing_and_validation() {
        let cfg =
            CorpusConfig::from_json(r#"{"entries": ["Sym(3)", "PSL(2,7)"], "suites": ["graphs"]}"#)
                .unwrap();
        assert_eq!(cfg.entries[1], GroupSpec::Psl2(7));
        assert_eq!(cfg.seed, DEFAULT_SEED);
        assert_eq!(cfg.bounds.quotient_max_order, 10_000);
        assert!(CorpusConfig::from_json(r#"{"entries": [], "suites": ["graphs"]}"#).is_err());
        assert!(CorpusConfig::from_json(r#"{"entries": ["Sym(3)"], "suites": []}"#).is_err());
        assert!(CorpusConfig::from_json(r#"{"entries": ["Sym(3)"], "suites": ["nope"]}"#).is_err());
        assert!(CorpusConfig::from_json(
            r#"{"entries": ["Sym(3)"], "suites": ["graphs"], "bounds": {"ring_pairs": 0}}"#
        )
        .is_err());
    }

    #[test]
    fn small_run_is_ordered_and_passes() {
        let mut cfg = CorpusConfig::new(
            vec!["Sym(4)".parse().unwrap(), "Frob(7,3,1)".parse().unwrap()],
            vec![
                Suite::Graphs,
                Suite::RingProperties,
                Suite::CriterionSoundness,
            ],
        );
        cfg.bounds.ring_pairs = 5;
        let recs = run(&cfg).unwrap();
        assert_eq!(recs[0].instance, "Sym(4)");
        assert_eq!(recs.last().unwrap().check, "criterion-soundness");
        assert!(recs.iter().all(|r| r.verdict != Verdict::Fail), "{recs:#?}");
        assert_eq!(run(&cfg).unwrap(), recs);
    }

    #[test]
    fn default_corpus_is_large_enough() {
        assert!(default_corpus().len() >= 25);
    }
}
