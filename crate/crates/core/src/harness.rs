//! Sweeps: many checks over many groups, collected into sorted reports.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith;
use crate::catalog::{self, NamedGroup};
use crate::criteria::{self, CheckReport, Lemma, LemmaParams, TranspositionReading};
use crate::error::{Error, Result};
use crate::group::Limits;
use crate::words::{parse_word, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "corollary_a")]
    CorollaryA,
    #[serde(rename = "theorem_gamma")]
    TheoremGamma,
    #[serde(rename = "theorem_delta")]
    TheoremDelta,
    #[serde(rename = "frobenius")]
    Frobenius,
    #[serde(rename = "lemmas")]
    Lemmas,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::P,
        CheckKind::CorollaryA,
        CheckKind::TheoremGamma,
        CheckKind::TheoremDelta,
        CheckKind::Frobenius,
        CheckKind::Lemmas,
    ];
}

/// `"auto"` for the primes dividing each group order, or a fixed list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Primes {
    #[default]
    Auto,
    List(Vec<u64>),
}

impl Primes {
    pub fn for_order(&self, order: u128) -> Vec<u64> {
        match self {
            Primes::Auto => arith::prime_divisors(order),
            Primes::List(ps) => ps.clone(),
        }
    }
}

impl Serialize for Primes {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Primes::Auto => s.serialize_str("auto"),
            Primes::List(ps) => ps.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Primes {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Primes, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            List(Vec<u64>),
        }
        match Raw::deserialize(d)? {
            Raw::Name(s) if s == "auto" => Ok(Primes::Auto),
            Raw::Name(s) => Err(serde::de::Error::custom(format!(
                "primes must be \"auto\" or a list, got {s:?}"
            ))),
            Raw::List(ps) => Ok(Primes::List(ps)),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<u128>,
}

impl Caps {
    /// These caps over `base`.
    pub fn apply(&self, base: Limits) -> Limits {
        Limits {
            enumeration_cap: self.enumeration.unwrap_or(base.enumeration_cap),
            tuple_cap: self.tuple.unwrap_or(base.tuple_cap),
        }
    }
}

/// A pair declared to satisfy `P(w, p)` while `w(G)` is not `p`-nilpotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleEntry {
    pub group: String,
    pub word: String,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub groups: Vec<String>,
    /// Words for the `P` check and the closure lemmas.
    #[serde(default)]
    pub words: Vec<String>,
    #[serde(default)]
    pub primes: Primes,
    #[serde(default)]
    pub checks: Vec<CheckKind>,
    /// Values of `k` for the theorem checks and the lemmas.
    #[serde(default = "default_ks")]
    pub ks: Vec<u32>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default)]
    pub counterexamples: Vec<CounterexampleEntry>,
    #[serde(default = "default_parallel")]
    pub parallel: bool,
}

fn default_ks() -> Vec<u32> {
    vec![1, 2, 3]
}

fn default_parallel() -> bool {
    true
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            groups: Vec::new(),
            words: Vec::new(),
            primes: Primes::Auto,
            checks: Vec::new(),
            ks: default_ks(),
            caps: Caps::default(),
            counterexamples: Vec::new(),
            parallel: true,
        }
    }
}

impl SweepConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<SweepConfig> {
        let text = std::fs::read_to_string(path)?;
        let config: SweepConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    /// Rejects malformed settings up front. Group and word problems are
    /// left to the sweep, which reports them per entry.
    pub fn validate(&self) -> Result<()> {
        if let Primes::List(ps) = &self.primes {
            if let Some(&p) = ps.iter().find(|&&p| !arith::is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
        }
        for entry in &self.counterexamples {
            if let Some(&p) = entry.primes.iter().find(|&&p| !arith::is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
        }
        if self.ks.contains(&0) {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        Ok(())
    }

    /// The same config with any caps set in `caps` taking precedence.
    pub fn with_caps(mut self, caps: &Caps) -> SweepConfig {
        self.caps.enumeration = caps.enumeration.or(self.caps.enumeration);
        self.caps.tuple = caps.tuple.or(self.caps.tuple);
        self
    }

    /// Every default-catalog group under every check.
    pub fn default_sweep() -> SweepConfig {
        SweepConfig {
            groups: catalog::default_catalog().into_iter().map(|e| e.name).collect(),
            words: ["gamma:2", "gamma:3", "delta:2", "pow:2", "pow:3"]
                .map(String::from)
                .to_vec(),
            checks: CheckKind::ALL.to_vec(),
            ..SweepConfig::default()
        }
    }

    /// `Alt(5)` with `x^15` at the primes 2, 3 and 5.
    pub fn counterexample_profile() -> SweepConfig {
        SweepConfig {
            counterexamples: vec![CounterexampleEntry {
                group: "alternating(5)".into(),
                word: "pow:15".into(),
                primes: vec![2, 3, 5],
            }],
            ..SweepConfig::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
    pub mismatches: usize,
    pub errors: usize,
}

impl Summary {
    /// 0 when nothing went wrong, 1 on a mismatch, 2 on input or cap errors.
    pub fn exit_code(&self) -> i32 {
        if self.mismatches > 0 {
            1
        } else if self.errors > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
}

impl SweepOutcome {
    pub fn normalized(&self) -> Vec<CheckReport> {
        self.reports.iter().map(CheckReport::normalized).collect()
    }
}

/// Whether a report is an error record produced by the sweep itself.
pub fn is_error(r: &CheckReport) -> bool {
    r.skipped && r.detail("error").is_some()
}

/// Whether a report contradicts something that must hold: a theorem
/// equivalence, agreement between p-nilpotency tests, a lemma, or a declared
/// counterexample.
pub fn is_mismatch(r: &CheckReport) -> bool {
    if r.skipped {
        return false;
    }
    if r.detail("agrees") == Some(&json!(false)) {
        return true;
    }
    match r.check.as_str() {
        "theorem_gamma" | "theorem_delta" | "counterexample" => !r.holds,
        c if c.starts_with("lemma:") => !r.holds,
        _ => false,
    }
}

pub fn summarize(reports: &[CheckReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        if is_error(r) {
            s.errors += 1;
        } else if r.skipped {
            s.skipped += 1;
        } else if r.holds {
            s.holds += 1;
        } else {
            s.fails += 1;
        }
        if is_mismatch(r) {
            s.mismatches += 1;
        }
    }
    s
}

fn error_report(check: &str, group: &str, word: Option<&str>, p: Option<u64>, err: &Error) -> CheckReport {
    CheckReport {
        check: check.to_string(),
        group: group.to_string(),
        word: word.map(str::to_string),
        k: None,
        p,
        holds: false,
        skipped: true,
        witness: Some(json!({ "error": err.to_string() })),
        ms: 0.0,
    }
}

/// One unit of sweep work.
#[derive(Clone, Debug)]
enum Task {
    P(Word, u64),
    CorollaryA(u64),
    TheoremGamma(u32, u64),
    TheoremDelta(u32, u64),
    Frobenius(u64),
    Lemma(Lemma, LemmaParams),
    Counterexample(Word, u64),
}

impl Task {
    fn run(&self, g: &NamedGroup) -> Result<CheckReport> {
        match self {
            Task::P(w, p) => criteria::satisfies_p(g, w, *p),
            Task::CorollaryA(p) => criteria::check_corollary_a(g, *p),
            Task::TheoremGamma(k, p) => criteria::check_theorem_gamma(g, *k, *p),
            Task::TheoremDelta(k, p) => criteria::check_theorem_delta(g, *k, *p),
            Task::Frobenius(p) => criteria::frobenius_p_nilpotent(g, *p),
            Task::Lemma(l, params) => criteria::lemma_check(*l, g, params),
            Task::Counterexample(w, p) => criteria::check_counterexample(g, w, *p),
        }
    }

    fn error(&self, g: &NamedGroup, err: &Error) -> CheckReport {
        let (check, word, k, p) = match self {
            Task::P(w, p) => ("P".to_string(), Some(w.descriptor()), None, Some(*p)),
            Task::CorollaryA(p) => ("corollary_a".into(), None, None, Some(*p)),
            Task::TheoremGamma(k, p) => ("theorem_gamma".into(), Some(Word::gamma(*k).descriptor()), Some(*k), Some(*p)),
            Task::TheoremDelta(k, p) => ("theorem_delta".into(), Some(Word::delta(*k).descriptor()), Some(*k), Some(*p)),
            Task::Frobenius(p) => ("frobenius".into(), None, None, Some(*p)),
            Task::Lemma(l, params) => (
                format!("lemma:{l}"),
                params.word.as_ref().map(Word::descriptor),
                params.k,
                params.p,
            ),
            Task::Counterexample(w, p) => ("counterexample".into(), Some(w.descriptor()), None, Some(*p)),
        };
        let mut r = error_report(&check, &g.name, word.as_deref(), p, err);
        r.k = k;
        r
    }
}

fn lemma_tasks(ks: &[u32], primes: &[u64], words: &[Word]) -> Vec<Task> {
    let mut tasks = Vec::new();
    let lp = |l: Lemma, k: Option<u32>, p: Option<u64>| Task::Lemma(l, LemmaParams::new(k, p));
    for &k in ks {
        tasks.push(lp(Lemma::Inclusion, Some(k), None));
        tasks.push(lp(Lemma::GammaPrimepowerGen, Some(k), None));
        tasks.push(lp(Lemma::G2Gk, Some(k), None));
        for &p in primes {
            for l in [
                Lemma::PprimeWord,
                Lemma::PSubgroupGamma,
                Lemma::PprimeWordDelta,
                Lemma::PSubgroupDelta,
                Lemma::GammaQpowerGen,
                Lemma::DeltaFocal,
            ] {
                tasks.push(lp(l, Some(k), Some(p)));
            }
        }
    }
    for &p in primes {
        tasks.push(lp(Lemma::FitpEqOp, None, Some(p)));
        tasks.push(lp(Lemma::Meta, None, Some(p)));
        let closure_words: Vec<Word> = if words.is_empty() {
            ks.iter().map(|&k| Word::gamma(k)).collect()
        } else {
            words.to_vec()
        };
        for w in closure_words {
            for l in [Lemma::SubgroupClosure, Lemma::QuotientClosure] {
                tasks.push(Task::Lemma(
                    l,
                    LemmaParams {
                        k: None,
                        p: Some(p),
                        word: Some(w.clone()),
                    },
                ));
            }
        }
    }
    tasks
}

fn tasks_for(config: &SweepConfig, g: &NamedGroup, words: &[Word]) -> Vec<Task> {
    let primes = config.primes.for_order(g.group.order());
    let mut tasks = Vec::new();
    for check in &config.checks {
        match check {
            CheckKind::P => {
                for w in words {
                    tasks.extend(primes.iter().map(|&p| Task::P(w.clone(), p)));
                }
            }
            CheckKind::CorollaryA => tasks.extend(primes.iter().map(|&p| Task::CorollaryA(p))),
            CheckKind::TheoremGamma => {
                for &k in &config.ks {
                    tasks.extend(primes.iter().map(|&p| Task::TheoremGamma(k, p)));
                }
            }
            CheckKind::TheoremDelta => {
                for &k in config.ks.iter().filter(|&&k| k >= 2) {
                    tasks.extend(primes.iter().map(|&p| Task::TheoremDelta(k, p)));
                }
            }
            CheckKind::Frobenius => tasks.extend(primes.iter().map(|&p| Task::Frobenius(p))),
            CheckKind::Lemmas => tasks.extend(lemma_tasks(&config.ks, &primes, words)),
        }
    }
    tasks
}

fn sort_key(r: &CheckReport) -> (String, String, Option<u32>, Option<u64>, Option<String>, String) {
    (
        r.group.clone(),
        r.check.clone(),
        r.k,
        r.p,
        r.word.clone(),
        serde_json::to_string(&r.normalized()).unwrap_or_default(),
    )
}

/// Runs every configured check and returns the sorted reports with their
/// summary. Unresolvable groups, unparsable words and cap overruns become
/// error reports; the rest of the sweep still runs.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let limits = config.caps.apply(Limits::from_env()?);
    let mut reports = Vec::new();

    let mut words = Vec::new();
    for text in &config.words {
        match parse_word(text) {
            Ok(w) => words.push(w),
            Err(e) => reports.push(error_report("parse", "", Some(text), None, &e)),
        }
    }

    let resolve = |name: &str| -> Result<NamedGroup> {
        let g = catalog::resolve(name)?;
        Ok(NamedGroup::new(g.name, g.group.relimit(limits)))
    };

    let mut jobs: Vec<(NamedGroup, Task)> = Vec::new();
    for name in &config.groups {
        match resolve(name) {
            Ok(g) => {
                for t in tasks_for(config, &g, &words) {
                    jobs.push((g.clone(), t));
                }
            }
            Err(e) => reports.push(error_report("resolve", name, None, None, &e)),
        }
    }
    for entry in &config.counterexamples {
        let g = match resolve(&entry.group) {
            Ok(g) => g,
            Err(e) => {
                reports.push(error_report("resolve", &entry.group, None, None, &e));
                continue;
            }
        };
        match parse_word(&entry.word) {
            Ok(w) => {
                for &p in &entry.primes {
                    jobs.push((g.clone(), Task::Counterexample(w.clone(), p)));
                }
            }
            Err(e) => reports.push(error_report("parse", &entry.group, Some(&entry.word), None, &e)),
        }
    }

    let run = |(g, t): &(NamedGroup, Task)| t.run(g).unwrap_or_else(|e| t.error(g, &e));
    if config.parallel {
        reports.par_extend(jobs.par_iter().map(run));
    } else {
        reports.extend(jobs.iter().map(run));
    }

    let mut keyed: Vec<_> = reports.into_iter().map(|r| (sort_key(&r), r)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let reports: Vec<CheckReport> = keyed.into_iter().map(|(_, r)| r).collect();
    let summary = summarize(&reports);
    Ok(SweepOutcome { reports, summary })
}

/// Both readings of the `Alt(5)` transposition-product set at the primes
/// 2, 3 and 5, and which readings hold at all three.
pub fn external_reading_reports(limits: Limits) -> Result<(Vec<CheckReport>, Vec<&'static str>)> {
    let alt5 = NamedGroup::new("alternating(5)", catalog::alternating(5)?.relimit(limits));
    let mut reports = Vec::new();
    let mut matching = Vec::new();
    for reading in [TranspositionReading::Distinct, TranspositionReading::Disjoint] {
        let mut all = true;
        for p in [2, 3, 5] {
            let r = criteria::check_external_reading(&alt5, reading, p)?;
            all &= r.holds;
            reports.push(r);
        }
        if all {
            matching.push(reading.tag());
        }
    }
    Ok((reports, matching))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_empty() {
        let out = run_sweep(&SweepConfig::default()).unwrap();
        assert!(out.reports.is_empty());
        assert_eq!(out.summary.exit_code(), 0);
    }

    #[test]
    fn config_json_round_trip() {
        let text = r#"{"groups": ["symmetric(3)"], "primes": "auto", "checks": ["P", "theorem_gamma"], "words": ["gamma:2"]}"#;
        let c: SweepConfig = serde_json::from_str(text).unwrap();
        assert_eq!(c.primes, Primes::Auto);
        assert_eq!(c.ks, vec![1, 2, 3]);
        let again: SweepConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, again);
        let listed: SweepConfig = serde_json::from_str(r#"{"primes": [2, 3]}"#).unwrap();
        assert_eq!(listed.primes, Primes::List(vec![2, 3]));
        assert!(serde_json::from_str::<SweepConfig>(r#"{"primes": "some"}"#).is_err());
        assert!(serde_json::from_str::<SweepConfig>(r#"{"checks": ["nope"]}"#).is_err());
        let bad: SweepConfig = serde_json::from_str(r#"{"primes": [4]}"#).unwrap();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn bad_entries_are_reported_and_sweep_continues() {
        let config = SweepConfig {
            groups: vec!["no_such_group".into(), "symmetric(3)".into()],
            words: vec!["[x1,".into()],
            checks: vec![CheckKind::CorollaryA],
            ..SweepConfig::default()
        };
        let out = run_sweep(&config).unwrap();
        assert_eq!(out.summary.errors, 2);
        assert_eq!(out.summary.fails + out.summary.holds, 2);
        assert_eq!(out.summary.exit_code(), 2);
    }

    #[test]
    fn counterexample_profile_passes() {
        let out = run_sweep(&SweepConfig::counterexample_profile()).unwrap();
        assert_eq!(out.reports.len(), 3);
        assert!(out.reports.iter().all(|r| r.holds));
        assert_eq!(out.summary.exit_code(), 0);
    }

    #[test]
    fn parallel_matches_serial() {
        let config = SweepConfig {
            groups: vec!["symmetric(4)".into(), "dihedral(6)".into()],
            words: vec!["gamma:2".into()],
            checks: CheckKind::ALL.to_vec(),
            ..SweepConfig::default()
        };
        let par = run_sweep(&config).unwrap();
        let ser = run_sweep(&SweepConfig {
            parallel: false,
            ..config
        })
        .unwrap();
        assert_eq!(par.normalized(), ser.normalized());
        assert_eq!(par.summary.mismatches, 0);
    }
}
