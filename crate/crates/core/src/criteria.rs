//! The order condition on word values and the checks built on it.
//!
//! A group satisfies `P(w, p)` when `p` divides `o(xy)` for every `w`-value
//! `x` of `p'`-order and every non-trivial `w`-value `y` of order divisible
//! by `p`. Every check returns a [`CheckReport`]; failed reports carry a
//! witness that can be re-verified from scratch.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith;
use crate::catalog::NamedGroup;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::structure::{self, generated_by};
use crate::words::{word_values, ValueSet, Word};

/// Bound on the number of subgroups enumerated inside one Sylow subgroup.
pub const SYLOW_SUBGROUP_BOUND: usize = 256;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub group: String,
    pub word: Option<String>,
    pub k: Option<u32>,
    pub p: Option<u64>,
    pub holds: bool,
    pub skipped: bool,
    pub witness: Option<Value>,
    pub ms: f64,
}

impl CheckReport {
    fn new(check: &str, group: &str) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            group: group.to_string(),
            word: None,
            k: None,
            p: None,
            holds: true,
            skipped: false,
            witness: None,
            ms: 0.0,
        }
    }

    fn word(mut self, w: impl Into<String>) -> Self {
        self.word = Some(w.into());
        self
    }

    fn k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    fn p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }

    fn outcome(mut self, holds: bool, witness: Value) -> Self {
        self.holds = holds;
        self.witness = Some(witness);
        self
    }

    fn skip(mut self, reason: impl Into<String>) -> Self {
        self.holds = false;
        self.skipped = true;
        self.witness = Some(json!({ "reason": reason.into() }));
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.ms = start.elapsed().as_secs_f64() * 1e3;
        self
    }

    /// The same report with the timing zeroed, for run-to-run comparison.
    pub fn normalized(&self) -> CheckReport {
        CheckReport {
            ms: 0.0,
            ..self.clone()
        }
    }

    /// The violating pair of a failed `P(w, p)` check, if this report has one.
    pub fn pair_witness(&self) -> Option<PairWitness> {
        let w = self.witness.as_ref()?;
        let pair = w.get("violation").unwrap_or(w);
        serde_json::from_value(pair.clone()).ok()
    }

    pub fn detail(&self, key: &str) -> Option<&Value> {
        self.witness.as_ref()?.get(key)
    }
}

/// `x` of `p'`-order and `y ≠ 1` of order divisible by `p` whose product
/// `xy` has order prime to `p`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairWitness {
    pub x: Perm,
    pub y: Perm,
    pub product_order: u64,
}

impl PairWitness {
    /// Recomputes every order and confirms the pair violates the condition.
    pub fn violates(&self, p: u64) -> bool {
        let xy = match self.x.compose(&self.y) {
            Ok(xy) => xy,
            Err(_) => return false,
        };
        arith::coprime(self.x.order() as u128, p)
            && !self.y.is_identity()
            && !arith::coprime(self.y.order() as u128, p)
            && xy.order() == self.product_order
            && arith::coprime(self.product_order as u128, p)
    }
}

/// First violating pair, scanning `x` then `y` in the iteration order of
/// `values`. `x = 1` is included: it has `p'`-order.
pub fn first_violation<'a>(values: impl IntoIterator<Item = &'a Perm>, p: u64) -> Option<PairWitness> {
    let values: Vec<&Perm> = values.into_iter().collect();
    let ys: Vec<&Perm> = values
        .iter()
        .copied()
        .filter(|y| !y.is_identity() && !arith::coprime(y.order() as u128, p))
        .collect();
    for x in values.iter().filter(|x| arith::coprime(x.order() as u128, p)) {
        for y in &ys {
            let o = x.then(y).order();
            if arith::coprime(o as u128, p) {
                return Some(PairWitness {
                    x: (*x).clone(),
                    y: (*y).clone(),
                    product_order: o,
                });
            }
        }
    }
    None
}

fn require_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn violation_json(v: &Option<PairWitness>) -> Value {
    v.as_ref().map_or(Value::Null, |w| json!(w))
}

/// `P(w, p)` on `G`.
pub fn satisfies_p(g: &NamedGroup, w: &Word, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    let start = Instant::now();
    let values = word_values(&g.group, w)?;
    let v = first_violation(values.values(), p);
    let report = CheckReport::new("P", &g.name).word(w.descriptor()).p(p);
    let report = match v {
        None => report.outcome(true, json!({ "values": values.len() })),
        Some(pair) => report.outcome(false, json!(pair)),
    };
    Ok(report.timed(start))
}

/// The same quantifier over a given value set.
pub fn satisfies_p_on_set(values: &ValueSet, group_name: &str, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    if !values.contains(&values.group().identity()) {
        return Err(Error::InvalidParameter(
            "value set must contain the identity".into(),
        ));
    }
    let start = Instant::now();
    let report = CheckReport::new("P", group_name)
        .word(values.source().label())
        .p(p);
    let report = match first_violation(values.values(), p) {
        None => report.outcome(true, json!({ "values": values.len() })),
        Some(pair) => report.outcome(false, json!(pair)),
    };
    Ok(report.timed(start))
}

/// The all-pairs order condition on `G`, with `is_p_nilpotent(G, p)`
/// recorded alongside; `agrees: false` marks an inconsistency.
pub fn check_corollary_a(g: &NamedGroup, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    let start = Instant::now();
    let violation = first_violation(g.group.elements()?, p);
    let pnil = structure::is_p_nilpotent(&g.group, p)?;
    let holds = violation.is_none();
    let report = CheckReport::new("corollary_a", &g.name).p(p).outcome(
        holds,
        json!({
            "p_nilpotent": pnil,
            "agrees": holds == pnil,
            "violation": violation_json(&violation),
        }),
    );
    Ok(report.timed(start))
}

/// `γ_k(G)` is `p`-nilpotent iff `G` satisfies `P(γ_k, p)`; holds when both
/// sides agree.
pub fn check_theorem_gamma(g: &NamedGroup, k: u32, p: u64) -> Result<CheckReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("theorem_gamma needs k >= 1".into()));
    }
    require_prime(p)?;
    let start = Instant::now();
    let w = Word::gamma(k);
    let values = word_values(&g.group, &w)?;
    let violation = first_violation(values.values(), p);
    let term = structure::lower_central_term(&g.group, k);
    let pnil = structure::is_p_nilpotent(&term, p)?;
    let satisfies = violation.is_none();
    let report = CheckReport::new("theorem_gamma", &g.name)
        .word(w.descriptor())
        .k(k)
        .p(p)
        .outcome(
            satisfies == pnil,
            json!({
                "satisfies_p": satisfies,
                "p_nilpotent": pnil,
                "term_order": term.order(),
                "violation": violation_json(&violation),
            }),
        );
    Ok(report.timed(start))
}

/// For soluble `G`: `G^(k)` is `p`-nilpotent iff `G` satisfies `P(δ_k, p)`.
/// Skipped when `G` is not soluble.
pub fn check_theorem_delta(g: &NamedGroup, k: u32, p: u64) -> Result<CheckReport> {
    if k < 2 {
        return Err(Error::InvalidParameter("theorem_delta needs k >= 2".into()));
    }
    require_prime(p)?;
    let start = Instant::now();
    let w = Word::delta(k);
    let report = CheckReport::new("theorem_delta", &g.name)
        .word(w.descriptor())
        .k(k)
        .p(p);
    if !structure::predicates(&g.group)?.is_soluble {
        return Ok(report.skip("not soluble").timed(start));
    }
    let values = word_values(&g.group, &w)?;
    let violation = first_violation(values.values(), p);
    let term = structure::derived_term(&g.group, k);
    let pnil = structure::is_p_nilpotent(&term, p)?;
    let satisfies = violation.is_none();
    let report = report.outcome(
        satisfies == pnil,
        json!({
            "satisfies_p": satisfies,
            "p_nilpotent": pnil,
            "term_order": term.order(),
            "violation": violation_json(&violation),
        }),
    );
    Ok(report.timed(start))
}

/// All subgroups of a small group, ordered by size and then by element list.
pub fn subgroups_of(g: &PermGroup, bound: usize) -> Result<Vec<PermGroup>> {
    let elems = g.elements()?;
    let trivial = g.subgroup(Vec::new());
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::from([trivial.elements()?.to_vec()]);
    let mut all = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for x in elems {
                if h.has(x) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.push(x.clone());
                let k = g.subgroup(gens);
                if seen.insert(k.elements()?.to_vec()) {
                    if seen.len() > bound {
                        return Err(Error::BoundExceeded(format!(
                            "more than {bound} subgroups"
                        )));
                    }
                    next.push(k.clone());
                    all.push(k);
                }
            }
        }
        frontier = next;
    }
    let mut keyed: Vec<(u128, Vec<Perm>, PermGroup)> = all
        .into_iter()
        .map(|h| Ok((h.order(), h.elements()?.to_vec(), h)))
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(keyed.into_iter().map(|(_, _, h)| h).collect())
}

/// Frobenius' criterion on the subgroups of one Sylow `p`-subgroup:
/// `|N_G(H)| / |C_G(H)|` must be a power of `p` for each.
pub fn frobenius_p_nilpotent(g: &NamedGroup, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    let start = Instant::now();
    let sylow = structure::sylow_subgroup(&g.group, p)?;
    let subgroups = subgroups_of(&sylow, SYLOW_SUBGROUP_BOUND)?;
    let mut failure = Value::Null;
    for h in &subgroups {
        let n = structure::normalizer(&g.group, h)?;
        let c = structure::centralizer(&g.group, h.generators())?;
        let ratio = n.order() / c.order();
        if !arith::is_power_of(ratio, p) {
            failure = json!({
                "subgroup_order": h.order(),
                "subgroup_generators": h.generators(),
                "normalizer_order": n.order(),
                "centralizer_order": c.order(),
            });
            break;
        }
    }
    let holds = failure.is_null();
    let pnil = structure::is_p_nilpotent(&g.group, p)?;
    let report = CheckReport::new("frobenius", &g.name).p(p).outcome(
        holds,
        json!({
            "p_nilpotent": pnil,
            "agrees": holds == pnil,
            "subgroups_checked": subgroups.len(),
            "failure": failure,
        }),
    );
    Ok(report.timed(start))
}

/// `P(w, p)` holds and `w(G)` is not `p`-nilpotent, as for the power word
/// on a simple group. Holds when the pair behaves that way.
pub fn check_counterexample(g: &NamedGroup, w: &Word, p: u64) -> Result<CheckReport> {
    require_prime(p)?;
    let start = Instant::now();
    let values = word_values(&g.group, w)?;
    let violation = first_violation(values.values(), p);
    let verbal = generated_by(&g.group, values.values());
    let pnil = structure::is_p_nilpotent(&verbal, p)?;
    let satisfies = violation.is_none();
    let report = CheckReport::new("counterexample", &g.name)
        .word(w.descriptor())
        .p(p)
        .outcome(
            satisfies && !pnil,
            json!({
                "satisfies_p": satisfies,
                "verbal_order": verbal.order(),
                "verbal_p_nilpotent": pnil,
                "exponent": g.group.exponent()?,
                "values": values.len(),
                "violation": violation_json(&violation),
            }),
        );
    Ok(report.timed(start))
}

/// The two readings of "the identity and all products of two
/// transpositions" in `Alt(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranspositionReading {
    /// Two distinct transpositions, so 3-cycles are included.
    Distinct,
    /// Two disjoint transpositions only.
    Disjoint,
}

impl TranspositionReading {
    pub fn tag(self) -> &'static str {
        match self {
            TranspositionReading::Distinct => "distinct_transpositions",
            TranspositionReading::Disjoint => "disjoint_transpositions",
        }
    }
}

/// The identity together with every product of two transpositions of
/// `Sym(5)` under the given reading.
pub fn transposition_product_set(alt5: &PermGroup, reading: TranspositionReading) -> Result<ValueSet> {
    let n = alt5.degree();
    let mut transpositions = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            transpositions.push((a, b, Perm::from_cycles(n, &[&[a, b]])?));
        }
    }
    let mut values = vec![alt5.identity()];
    for (a1, b1, s) in &transpositions {
        for (a2, b2, t) in &transpositions {
            let shares = a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2;
            let keep = match reading {
                TranspositionReading::Distinct => s != t,
                TranspositionReading::Disjoint => !shares,
            };
            if keep {
                values.push(s.then(t));
            }
        }
    }
    ValueSet::external(alt5, reading.tag(), values)
}

/// `P` on the external `Alt(5)` set under `reading`.
pub fn check_external_reading(
    alt5: &NamedGroup,
    reading: TranspositionReading,
    p: u64,
) -> Result<CheckReport> {
    let set = transposition_product_set(&alt5.group, reading)?;
    let mut report = satisfies_p_on_set(&set, &alt5.name, p)?;
    report.check = "external_set".into();
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma {
    PprimeWord,
    PSubgroupGamma,
    PprimeWordDelta,
    PSubgroupDelta,
    Inclusion,
    GammaPrimepowerGen,
    GammaQpowerGen,
    DeltaFocal,
    FitpEqOp,
    Meta,
    SubgroupClosure,
    QuotientClosure,
    G2Gk,
}

impl Lemma {
    pub const ALL: [Lemma; 13] = [
        Lemma::PprimeWord,
        Lemma::PSubgroupGamma,
        Lemma::PprimeWordDelta,
        Lemma::PSubgroupDelta,
        Lemma::Inclusion,
        Lemma::GammaPrimepowerGen,
        Lemma::GammaQpowerGen,
        Lemma::DeltaFocal,
        Lemma::FitpEqOp,
        Lemma::Meta,
        Lemma::SubgroupClosure,
        Lemma::QuotientClosure,
        Lemma::G2Gk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::PprimeWord => "pprime_word",
            Lemma::PSubgroupGamma => "p_subgroup_gamma",
            Lemma::PprimeWordDelta => "pprime_word_delta",
            Lemma::PSubgroupDelta => "p_subgroup_delta",
            Lemma::Inclusion => "inclusion",
            Lemma::GammaPrimepowerGen => "gamma_primepower_gen",
            Lemma::GammaQpowerGen => "gamma_qpower_gen",
            Lemma::DeltaFocal => "delta_focal",
            Lemma::FitpEqOp => "fitp_eq_op",
            Lemma::Meta => "meta",
            Lemma::SubgroupClosure => "subgroup_closure",
            Lemma::QuotientClosure => "quotient_closure",
            Lemma::G2Gk => "g2_gk",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lemma> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown lemma {s:?}")))
    }
}

/// Parameters a lemma may need; `p` doubles as `q` for `delta_focal`, and
/// `k` as `i`. Closure lemmas default the word to `γ_k`.
#[derive(Clone, Debug, Default)]
pub struct LemmaParams {
    pub k: Option<u32>,
    pub p: Option<u64>,
    pub word: Option<Word>,
}

impl LemmaParams {
    pub fn new(k: Option<u32>, p: Option<u64>) -> LemmaParams {
        LemmaParams { k, p, word: None }
    }

    fn need_k(&self, lemma: Lemma) -> Result<u32> {
        self.k
            .ok_or_else(|| Error::InvalidParameter(format!("{lemma} needs k")))
    }

    fn need_p(&self, lemma: Lemma) -> Result<u64> {
        let p = self
            .p
            .ok_or_else(|| Error::InvalidParameter(format!("{lemma} needs p")))?;
        require_prime(p)?;
        Ok(p)
    }
}

fn p_prime_values(values: &ValueSet, p: u64) -> Vec<&Perm> {
    values
        .values()
        .iter()
        .filter(|x| arith::coprime(x.order() as u128, p))
        .collect()
}

/// Runs one lemma on `g`. Lemmas whose hypotheses fail come back skipped.
pub fn lemma_check(lemma: Lemma, g: &NamedGroup, params: &LemmaParams) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = CheckReport::new(&format!("lemma:{lemma}"), &g.name);
    report.k = params.k;
    report.p = params.p;
    let group = &g.group;
    let report = match lemma {
        Lemma::PprimeWord | Lemma::PprimeWordDelta => {
            let k = params.need_k(lemma)?;
            let p = params.need_p(lemma)?;
            let delta = lemma == Lemma::PprimeWordDelta;
            let (w, depth) = if delta {
                (Word::delta(k), 2)
            } else {
                (Word::gamma(k), k.saturating_sub(1) as usize)
            };
            let report = report.word(w.descriptor());
            if !delta && k < 2 {
                return Ok(report.skip("needs k >= 2").timed(start));
            }
            let values = word_values(group, &w)?;
            if first_violation(values.values(), p).is_some() {
                return Ok(report.skip(format!("P({},{p}) fails", w.descriptor())).timed(start));
            }
            let mut instances = 0usize;
            let mut failure = Value::Null;
            'outer: for x in p_prime_values(&values, p) {
                for h in group.elements()? {
                    instances += 1;
                    let c = Perm::iterated_commutator(h, x, depth)?;
                    if !arith::coprime(c.order() as u128, p) {
                        failure = json!({ "x": x, "g": h, "commutator": c, "order": c.order() });
                        break 'outer;
                    }
                }
            }
            report.outcome(failure.is_null(), json!({ "instances": instances, "failure": failure }))
        }
        Lemma::PSubgroupGamma | Lemma::PSubgroupDelta => {
            let k = params.need_k(lemma)?;
            let p = params.need_p(lemma)?;
            let w = if lemma == Lemma::PSubgroupDelta {
                Word::delta(k)
            } else {
                Word::gamma(k)
            };
            let report = report.word(w.descriptor());
            let values = word_values(group, &w)?;
            if first_violation(values.values(), p).is_some() {
                return Ok(report.skip(format!("P({},{p}) fails", w.descriptor())).timed(start));
            }
            let sylow = structure::sylow_subgroup(group, p)?;
            let subgroups = subgroups_of(&sylow, SYLOW_SUBGROUP_BOUND)?;
            let xs = p_prime_values(&values, p);
            let mut instances = 0usize;
            let mut failure = Value::Null;
            'outer: for h in &subgroups {
                for x in &xs {
                    if !structure::normalizes(x, h) {
                        continue;
                    }
                    instances += 1;
                    if let Some(a) = h.generators().iter().find(|a| a.then(x) != x.then(a)) {
                        failure = json!({
                            "subgroup_generators": h.generators(),
                            "x": x,
                            "non_commuting": a,
                        });
                        break 'outer;
                    }
                }
            }
            report.outcome(
                failure.is_null(),
                json!({ "instances": instances, "subgroups": subgroups.len(), "failure": failure }),
            )
        }
        Lemma::Inclusion => {
            let k = params.need_k(lemma)?;
            let derived = structure::derived_term(group, k);
            let gamma = structure::lower_central_term(group, k + 1);
            report.outcome(
                derived.is_subgroup_of(&gamma),
                json!({ "derived_order": derived.order(), "gamma_order": gamma.order() }),
            )
        }
        Lemma::GammaPrimepowerGen => {
            let k = params.need_k(lemma)?;
            let w = Word::gamma(k);
            let report = report.word(w.descriptor());
            if k < 2 {
                return Ok(report.skip("needs k >= 2").timed(start));
            }
            if !structure::predicates(group)?.is_soluble {
                return Ok(report.skip("not soluble").timed(start));
            }
            let values = word_values(group, &w)?;
            let gen = generated_by(
                group,
                values
                    .values()
                    .iter()
                    .filter(|v| arith::is_prime_power(v.order() as u128)),
            );
            let term = structure::lower_central_term(group, k);
            report.outcome(
                gen.same_elements(&term),
                json!({ "generated_order": gen.order(), "term_order": term.order() }),
            )
        }
        Lemma::GammaQpowerGen => {
            let k = params.need_k(lemma)?;
            let p = params.need_p(lemma)?;
            let w = Word::gamma(k);
            let report = report.word(w.descriptor());
            if !structure::predicates(group)?.is_perfect {
                return Ok(report.skip("not perfect").timed(start));
            }
            if arith::coprime(group.order(), p) {
                return Ok(report.skip("p does not divide |G|").timed(start));
            }
            let values = word_values(group, &w)?;
            let gen = generated_by(
                group,
                values.values().iter().filter(|v| {
                    let primes = arith::prime_divisors(v.order() as u128);
                    primes.len() == 1 && primes[0] != p
                }),
            );
            report.outcome(
                gen.same_elements(group),
                json!({ "generated_order": gen.order(), "group_order": group.order() }),
            )
        }
        Lemma::DeltaFocal => {
            let i = params.need_k(lemma)?;
            let q = params.need_p(lemma)?;
            let w = Word::delta(i);
            let report = report.word(w.descriptor());
            if i < 1 {
                return Ok(report.skip("needs i >= 1").timed(start));
            }
            if !structure::predicates(group)?.is_soluble {
                return Ok(report.skip("not soluble").timed(start));
            }
            if arith::coprime(group.order(), q) {
                return Ok(report.skip("q does not divide |G|").timed(start));
            }
            let sylow = structure::sylow_subgroup(group, q)?;
            let term = structure::derived_term(group, i);
            let meet = generated_by(group, sylow.elements()?.iter().filter(|x| term.has(x)));
            let values = word_values(group, &w)?;
            let gen = generated_by(group, values.values().iter().filter(|v| sylow.has(v)));
            report.outcome(
                gen.same_elements(&meet),
                json!({ "intersection_order": meet.order(), "generated_order": gen.order() }),
            )
        }
        Lemma::FitpEqOp => {
            let p = params.need_p(lemma)?;
            if structure::p_prime_core(group, p)?.order() != 1 {
                return Ok(report.skip("O_p'(G) is not trivial").timed(start));
            }
            let fit = structure::p_fitting(group, p)?;
            let core = structure::p_core(group, p)?;
            report.outcome(
                fit.same_elements(&core) && arith::is_power_of(fit.order(), p),
                json!({ "fit_p_order": fit.order(), "o_p_order": core.order() }),
            )
        }
        Lemma::Meta => {
            let p = params.need_p(lemma)?;
            if !structure::predicates(group)?.is_metanilpotent {
                return Ok(report.skip("not metanilpotent").timed(start));
            }
            let fit = structure::fitting(group)?;
            let core = structure::p_prime_core(&fit, p)?;
            let mut instances = 0usize;
            let mut failure = Value::Null;
            for x in group.elements()? {
                if !arith::is_power_of(x.order() as u128, p) {
                    continue;
                }
                if core.generators().iter().any(|a| a.then(x) != x.then(a)) {
                    continue;
                }
                instances += 1;
                if !fit.has(x) {
                    failure = json!({ "x": x });
                    break;
                }
            }
            report.outcome(
                failure.is_null(),
                json!({ "instances": instances, "fitting_order": fit.order(), "failure": failure }),
            )
        }
        Lemma::SubgroupClosure | Lemma::QuotientClosure => {
            let p = params.need_p(lemma)?;
            let w = match &params.word {
                Some(w) => w.clone(),
                None => Word::gamma(params.need_k(lemma)?),
            };
            let report = report.word(w.descriptor());
            let values = word_values(group, &w)?;
            if first_violation(values.values(), p).is_some() {
                return Ok(report.skip(format!("P({},{p}) fails", w.descriptor())).timed(start));
            }
            let pieces: Vec<(String, PermGroup)> = if lemma == Lemma::SubgroupClosure {
                sample_subgroups(group)?
                    .into_iter()
                    .map(|h| (format!("subgroup of order {}", h.order()), h))
                    .collect()
            } else {
                let mut out = Vec::new();
                for n in structure::normal_subgroups(group)? {
                    if n.order() > 1 && arith::coprime(n.order(), p) {
                        let q = structure::quotient_group(group, &n)?;
                        out.push((format!("quotient by normal subgroup of order {}", n.order()), q.group().clone()));
                    }
                }
                out
            };
            if pieces.is_empty() {
                let what = if lemma == Lemma::SubgroupClosure {
                    "no proper nontrivial subgroups sampled"
                } else {
                    "no nontrivial normal p'-subgroup"
                };
                return Ok(report.skip(what).timed(start));
            }
            let mut failure = Value::Null;
            for (label, h) in &pieces {
                let hv = word_values(h, &w)?;
                if let Some(pair) = first_violation(hv.values(), p) {
                    failure = json!({ "piece": label, "generators": h.generators(), "violation": pair });
                    break;
                }
            }
            report.outcome(
                failure.is_null(),
                json!({
                    "instances": pieces.len(),
                    "pieces": pieces.iter().map(|(l, _)| l.as_str()).collect::<Vec<_>>(),
                    "failure": failure,
                }),
            )
        }
        Lemma::G2Gk => {
            let k = params.need_k(lemma)?;
            let report = report.word(Word::gamma(k).descriptor());
            if k < 2 {
                return Ok(report.skip("needs k >= 2").timed(start));
            }
            if !structure::is_quasisimple(group)? {
                return Ok(report.skip("not quasisimple").timed(start));
            }
            let v2 = word_values(group, &Word::gamma(2))?;
            let vk = word_values(group, &Word::gamma(k))?;
            report.outcome(
                v2 == vk,
                json!({ "gamma_2_values": v2.len(), "gamma_k_values": vk.len() }),
            )
        }
    };
    Ok(report.timed(start))
}

/// Deterministic sample of proper nontrivial subgroups: one Sylow subgroup
/// per prime, the derived subgroup, the centre, the stabilizer of point 1
/// and the cyclic subgroups of the first few elements.
pub fn sample_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut candidates = Vec::new();
    for q in arith::prime_divisors(g.order()) {
        candidates.push(structure::sylow_subgroup(g, q)?.into_group());
    }
    candidates.push(structure::derived_term(g, 1).into_group());
    candidates.push(structure::center(g)?.into_group());
    let elems = g.elements()?;
    candidates.push(generated_by(g, elems.iter().filter(|x| x.image(0) == 0)));
    for x in elems.iter().filter(|x| !x.is_identity()).take(4) {
        candidates.push(g.subgroup(vec![x.clone()]));
    }
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
    let mut out = Vec::new();
    for h in candidates {
        if h.order() == 1 || h.order() == g.order() {
            continue;
        }
        if seen.insert(h.elements()?.to_vec()) {
            out.push(h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, make};

    fn named(name: &str) -> NamedGroup {
        NamedGroup::new(name, make(name).unwrap())
    }

    #[test]
    fn vacuous_when_no_p_values() {
        let r = satisfies_p(&named("cyclic(2)"), &Word::Var(1), 3).unwrap();
        assert!(r.holds && !r.skipped);
    }

    #[test]
    fn corollary_a_on_sym3() {
        let r = check_corollary_a(&named("symmetric(3)"), 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.detail("p_nilpotent"), Some(&json!(false)));
        assert_eq!(r.detail("agrees"), Some(&json!(true)));
        let pair = r.pair_witness().unwrap();
        assert!(pair.violates(3));
        assert_eq!(pair.x.order(), 2);
        assert_eq!(pair.y.order(), 3);
        assert_eq!(pair.product_order, 2);
        let r = check_corollary_a(&named("cyclic(6)"), 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.detail("p_nilpotent"), Some(&json!(true)));
    }

    #[test]
    fn identity_x_is_not_special_cased() {
        // x = 1 with y of order divisible by p always passes, so the
        // violation found must come from a non-identity x
        let r = check_corollary_a(&named("alternating(5)"), 5).unwrap();
        assert!(!r.holds);
        assert!(!r.pair_witness().unwrap().x.is_identity());
    }

    #[test]
    fn theorem_delta_gates_on_solubility() {
        let r = check_theorem_delta(&named("alternating(5)"), 2, 2).unwrap();
        assert!(r.skipped && !r.holds);
        let r = check_theorem_delta(&named("symmetric(4)"), 2, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.detail("satisfies_p"), Some(&json!(true)));
        assert!(check_theorem_delta(&named("symmetric(4)"), 1, 2).is_err());
    }

    #[test]
    fn frobenius_cases() {
        let r = frobenius_p_nilpotent(&named("symmetric(3)"), 2).unwrap();
        assert!(r.holds);
        let r = frobenius_p_nilpotent(&named("alternating(5)"), 2).unwrap();
        assert!(!r.holds);
        let f = r.detail("failure").unwrap();
        assert_eq!(f["subgroup_order"], json!(4));
        assert_eq!(f["normalizer_order"], json!(12));
        assert_eq!(f["centralizer_order"], json!(4));
        assert!(frobenius_p_nilpotent(&named("dihedral(4)"), 2).unwrap().holds);
    }

    #[test]
    fn subgroup_enumeration() {
        let d8 = make("dihedral(4)").unwrap();
        assert_eq!(subgroups_of(&d8, 256).unwrap().len(), 10);
        let q8 = structure::sylow_subgroup(&make("sl2(3)").unwrap(), 2).unwrap();
        assert_eq!(subgroups_of(&q8, 256).unwrap().len(), 6);
        assert!(subgroups_of(&d8, 5).is_err());
    }

    #[test]
    fn lemma_gates() {
        let a5 = named("alternating(5)");
        let r = lemma_check(Lemma::Meta, &a5, &LemmaParams::new(None, Some(2))).unwrap();
        assert!(r.skipped);
        let r = lemma_check(Lemma::Inclusion, &named("symmetric(4)"), &LemmaParams::new(Some(2), None)).unwrap();
        assert!(r.holds);
        assert!(lemma_check(Lemma::Inclusion, &a5, &LemmaParams::default()).is_err());
        assert_eq!("g2_gk".parse::<Lemma>().unwrap(), Lemma::G2Gk);
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn external_readings_differ() {
        let a5 = NamedGroup::new("alternating(5)", catalog::alternating(5).unwrap());
        let distinct = transposition_product_set(&a5.group, TranspositionReading::Distinct).unwrap();
        let disjoint = transposition_product_set(&a5.group, TranspositionReading::Disjoint).unwrap();
        assert_eq!(distinct.len(), 36);
        assert_eq!(disjoint.len(), 16);
        for p in [2, 3, 5] {
            assert!(check_external_reading(&a5, TranspositionReading::Disjoint, p).unwrap().holds);
        }
        assert!(!check_external_reading(&a5, TranspositionReading::Distinct, 2).unwrap().holds);
    }

    #[test]
    fn set_without_identity_is_rejected() {
        let s3 = make("symmetric(3)").unwrap();
        let set = ValueSet::external(&s3, "x", [Perm::parse_cycles("(1 2)", 3).unwrap()]).unwrap();
        assert!(satisfies_p_on_set(&set, "s3", 2).is_err());
    }
}
