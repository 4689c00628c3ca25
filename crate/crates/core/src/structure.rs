//! Subgroup-level computations: closures, the lower central and derived
//! series, Sylow subgroups, cores, Fitting subgroups, quotients and the
//! p-nilpotency test.
//!
//! Everything here works at desk scale: the element lists of the groups
//! involved are enumerated (subject to the enumeration cap) and filtered.

use std::collections::{BTreeSet, HashMap};
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;

/// A subgroup together with the group it was computed inside.
#[derive(Clone, Debug)]
pub struct SubgroupRef {
    parent: PermGroup,
    group: PermGroup,
}

impl SubgroupRef {
    pub(crate) fn new(parent: &PermGroup, group: PermGroup) -> SubgroupRef {
        SubgroupRef {
            parent: parent.clone(),
            group,
        }
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(g: &PermGroup) -> SubgroupRef {
        SubgroupRef::new(g, g.clone())
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn into_group(self) -> PermGroup {
        self.group
    }

    pub fn index(&self) -> u128 {
        self.parent.order() / self.group.order()
    }

    pub fn is_normal(&self) -> bool {
        self.group.is_normal_in(&self.parent)
    }

    pub fn to_json(&self, parent_name: &str) -> SubgroupJson {
        SubgroupJson {
            parent: parent_name.to_string(),
            degree: self.group.degree(),
            order: self.group.order(),
            generators: self.group.generators().to_vec(),
        }
    }
}

impl Deref for SubgroupRef {
    type Target = PermGroup;

    fn deref(&self) -> &PermGroup {
        &self.group
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SubgroupJson {
    pub parent: String,
    pub degree: usize,
    pub order: u128,
    pub generators: Vec<Perm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms of a series, truncated once two consecutive terms agree.
#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<SubgroupRef>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SeriesJson {
    pub kind: SeriesKind,
    pub orders: Vec<u128>,
    pub generators: Vec<Vec<Perm>>,
}

impl SeriesResult {
    pub fn orders(&self) -> Vec<u128> {
        self.terms.iter().map(|t| t.order()).collect()
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            kind: self.kind,
            orders: self.orders(),
            generators: self.terms.iter().map(|t| t.generators().to_vec()).collect(),
        }
    }
}

/// Grows a subgroup one generator at a time, skipping elements already in it.
struct Accumulator {
    gens: Vec<Perm>,
    group: PermGroup,
}

impl Accumulator {
    fn new(ambient: &PermGroup) -> Accumulator {
        Accumulator {
            gens: Vec::new(),
            group: ambient.subgroup(Vec::new()),
        }
    }

    fn add(&mut self, x: &Perm) -> bool {
        if self.group.has(x) {
            return false;
        }
        self.gens.push(x.clone());
        self.group = self.group.subgroup(self.gens.clone());
        true
    }

    fn add_all<'a>(&mut self, xs: impl IntoIterator<Item = &'a Perm>) {
        let before = self.gens.len();
        for x in xs {
            if !x.is_identity() && !self.gens.contains(x) {
                self.gens.push(x.clone());
            }
        }
        if self.gens.len() != before {
            self.group = self.group.subgroup(self.gens.clone());
        }
    }

    fn finish(self) -> PermGroup {
        self.group
    }
}

fn check_members(g: &PermGroup, s: &[Perm]) -> Result<()> {
    for x in s {
        if !g.contains(x)? {
            return Err(Error::NotInGroup(x.to_string()));
        }
    }
    Ok(())
}

/// Subgroup generated by elements drawn from `g`, without membership checks.
pub(crate) fn generated_by<'a>(g: &PermGroup, xs: impl IntoIterator<Item = &'a Perm>) -> PermGroup {
    let mut acc = Accumulator::new(g);
    for x in xs {
        acc.add(x);
    }
    acc.finish()
}

pub fn subgroup_generated(g: &PermGroup, s: &[Perm]) -> Result<SubgroupRef> {
    check_members(g, s)?;
    Ok(SubgroupRef::new(g, g.subgroup(s.to_vec())))
}

/// Closure of `gens` under conjugation by the generators of `ambient`.
fn normal_closure_of(ambient: &PermGroup, gens: &[Perm]) -> PermGroup {
    let mut current: Vec<Perm> = gens.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut group = ambient.subgroup(current.clone());
    let mut queue = current.clone();
    while let Some(x) = queue.pop() {
        for g in ambient.generators() {
            let c = x.conj(g);
            if !group.has(&c) {
                current.push(c.clone());
                group = ambient.subgroup(current.clone());
                queue.push(c);
            }
        }
    }
    group
}

pub fn normal_closure(g: &PermGroup, s: &[Perm]) -> Result<SubgroupRef> {
    check_members(g, s)?;
    Ok(SubgroupRef::new(g, normal_closure_of(g, s)))
}

fn same_parent(a: &SubgroupRef, b: &SubgroupRef) -> bool {
    a.parent.same_elements(&b.parent)
}

/// `[A, B]`: the normal closure in `⟨A, B⟩` of the generator commutators.
pub fn commutator_subgroup(a: &SubgroupRef, b: &SubgroupRef) -> Result<SubgroupRef> {
    if !same_parent(a, b) {
        return Err(Error::ParentMismatch);
    }
    let mut joint = a.generators().to_vec();
    joint.extend(b.generators().iter().cloned());
    let join = a.parent.subgroup(joint);
    Ok(SubgroupRef::new(&a.parent, commutator_of(&join, a, b)))
}

fn commutator_of(ambient: &PermGroup, a: &PermGroup, b: &PermGroup) -> PermGroup {
    let comms: Vec<Perm> = a
        .generators()
        .iter()
        .flat_map(|x| b.generators().iter().map(move |y| x.comm(y)))
        .collect();
    normal_closure_of(ambient, &comms)
}

/// `γ_1 = G`, `γ_k = [γ_{k-1}, G]`; `k = 0` is treated as `k = 1`.
pub fn lower_central_term(g: &PermGroup, k: u32) -> SubgroupRef {
    let mut term = g.clone();
    for _ in 1..k {
        let next = commutator_of(g, &term, g);
        if next.order() == term.order() {
            break;
        }
        term = next;
    }
    SubgroupRef::new(g, term)
}

/// `G^(0) = G`, `G^(k) = [G^(k-1), G^(k-1)]`.
pub fn derived_term(g: &PermGroup, k: u32) -> SubgroupRef {
    let mut term = g.clone();
    for _ in 0..k {
        let next = commutator_of(&term, &term, &term);
        if next.order() == term.order() {
            break;
        }
        term = next;
    }
    SubgroupRef::new(g, term)
}

pub fn lower_central_series(g: &PermGroup) -> SeriesResult {
    let mut terms = vec![SubgroupRef::whole(g)];
    loop {
        let last = terms.last().expect("nonempty").group.clone();
        let next = commutator_of(g, &last, g);
        let stable = next.order() == last.order();
        terms.push(SubgroupRef::new(g, next));
        if stable {
            break;
        }
    }
    SeriesResult {
        kind: SeriesKind::LowerCentral,
        terms,
    }
}

pub fn derived_series(g: &PermGroup) -> SeriesResult {
    let mut terms = vec![SubgroupRef::whole(g)];
    loop {
        let last = terms.last().expect("nonempty").group.clone();
        let next = commutator_of(&last, &last, &last);
        let stable = next.order() == last.order();
        terms.push(SubgroupRef::new(g, next));
        if stable {
            break;
        }
    }
    SeriesResult {
        kind: SeriesKind::Derived,
        terms,
    }
}

/// Does `x` normalize the subgroup `h`?
pub(crate) fn normalizes(x: &Perm, h: &PermGroup) -> bool {
    h.generators().iter().all(|a| h.has(&a.conj(x)))
}

pub fn centralizer(g: &PermGroup, s: &[Perm]) -> Result<SubgroupRef> {
    check_members(g, s)?;
    let elems = g.elements()?;
    let group = generated_by(
        g,
        elems
            .iter()
            .filter(|x| s.iter().all(|y| x.then(y) == y.then(x))),
    );
    Ok(SubgroupRef::new(g, group))
}

pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<SubgroupRef> {
    check_members(g, h.generators())?;
    let elems = g.elements()?;
    let group = generated_by(g, elems.iter().filter(|x| normalizes(x, h)));
    Ok(SubgroupRef::new(g, group))
}

pub fn center(g: &PermGroup) -> Result<SubgroupRef> {
    centralizer(g, g.generators())
}

/// A Sylow `p`-subgroup, grown through normalizers; trivial when `p ∤ |G|`.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<SubgroupRef> {
    require_prime(p)?;
    let target = arith::p_part(g.order(), p);
    let mut sylow = g.subgroup(Vec::new());
    if target == 1 {
        return Ok(SubgroupRef::new(g, sylow));
    }
    let elems = g.elements()?;
    while sylow.order() < target {
        let next = elems
            .iter()
            .find(|x| {
                arith::is_power_of(x.order() as u128, p) && !sylow.has(x) && normalizes(x, &sylow)
            })
            .expect("a proper p-subgroup is proper in its normalizer");
        let mut gens = sylow.generators().to_vec();
        gens.push(next.clone());
        sylow = g.subgroup(gens);
    }
    Ok(SubgroupRef::new(g, sylow))
}

/// Join of the normal closures of the elements whose normal closure passes
/// `keep`. Only elements satisfying `candidate` are tried.
fn normal_join(
    g: &PermGroup,
    candidate: impl Fn(&Perm) -> bool,
    mut keep: impl FnMut(&PermGroup) -> bool,
) -> Result<PermGroup> {
    let mut acc = Accumulator::new(g);
    for x in g.elements()? {
        if x.is_identity() || !candidate(x) || acc.group.has(x) {
            continue;
        }
        let closure = normal_closure_of(g, std::slice::from_ref(x));
        if keep(&closure) {
            acc.add_all(closure.generators());
        }
    }
    Ok(acc.finish())
}

/// `O_p(G)`, the largest normal `p`-subgroup.
pub fn p_core(g: &PermGroup, p: u64) -> Result<SubgroupRef> {
    require_prime(p)?;
    let core = normal_join(
        g,
        |x| arith::is_power_of(x.order() as u128, p),
        |n| arith::is_power_of(n.order(), p),
    )?;
    Ok(SubgroupRef::new(g, core))
}

/// `O_{p'}(G)`, the largest normal subgroup of order prime to `p`.
pub fn p_prime_core(g: &PermGroup, p: u64) -> Result<SubgroupRef> {
    require_prime(p)?;
    let core = normal_join(
        g,
        |x| arith::coprime(x.order() as u128, p),
        |n| arith::coprime(n.order(), p),
    )?;
    Ok(SubgroupRef::new(g, core))
}

/// `F(G)`, the product of `O_q(G)` over the primes dividing `|G|`.
pub fn fitting(g: &PermGroup) -> Result<SubgroupRef> {
    let mut acc = Accumulator::new(g);
    for q in arith::prime_divisors(g.order()) {
        acc.add_all(p_core(g, q)?.generators());
    }
    Ok(SubgroupRef::new(g, acc.finish()))
}

/// `Fit_p(G)`, the largest normal `p`-nilpotent subgroup.
pub fn p_fitting(g: &PermGroup, p: u64) -> Result<SubgroupRef> {
    require_prime(p)?;
    let mut failure = None;
    let fit = normal_join(
        g,
        |_| true,
        |n| match is_p_nilpotent(n, p) {
            Ok(b) => b,
            Err(e) => {
                failure.get_or_insert(e);
                false
            }
        },
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(SubgroupRef::new(g, fit)),
    }
}

fn require_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// True iff `G` has a normal `p`-complement. The subgroup generated by all
/// `p'`-elements is normal, and it is a `p'`-group exactly when a normal
/// complement exists.
pub fn is_p_nilpotent(g: &PermGroup, p: u64) -> Result<bool> {
    require_prime(p)?;
    if arith::coprime(g.order(), p) {
        return Ok(true);
    }
    let h = generated_by(
        g,
        g.elements()?
            .iter()
            .filter(|x| arith::coprime(x.order() as u128, p)),
    );
    Ok(arith::coprime(h.order(), p))
}

/// Independent route: `|O_{p'}(G)|` equals the `p'`-part of `|G|`.
pub fn is_p_nilpotent_by_core(g: &PermGroup, p: u64) -> Result<bool> {
    let core = p_prime_core(g, p)?;
    Ok(core.order() == arith::p_prime_part(g.order(), p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_soluble: bool,
    pub is_metanilpotent: bool,
    pub is_perfect: bool,
    /// The prime `p` when `G` is a nontrivial `p`-group.
    pub p_group: Option<u64>,
    pub is_trivial: bool,
}

impl Predicates {
    pub fn is_p_group(&self, p: u64) -> bool {
        self.is_trivial || self.p_group == Some(p)
    }
}

/// Last term of the lower central series.
pub(crate) fn nilpotent_residual(g: &PermGroup) -> PermGroup {
    lower_central_series(g)
        .terms
        .pop()
        .expect("nonempty series")
        .into_group()
}

pub fn predicates(g: &PermGroup) -> Result<Predicates> {
    let is_trivial = g.order() == 1;
    let residual = nilpotent_residual(g);
    let is_nilpotent = residual.order() == 1;
    let derived = derived_series(g);
    let is_soluble = derived.terms.last().expect("nonempty").order() == 1;
    let is_perfect = derived.terms[1].order() == g.order();
    // G/F(G) is nilpotent iff the nilpotent residual lies in F(G)
    let is_metanilpotent = is_nilpotent || residual.is_subgroup_of(fitting(g)?.group());
    let primes = arith::prime_divisors(g.order());
    Ok(Predicates {
        is_abelian: g.is_abelian(),
        is_nilpotent,
        is_soluble,
        is_metanilpotent,
        is_perfect,
        p_group: (primes.len() == 1).then(|| primes[0]),
        is_trivial,
    })
}

/// `G` nontrivial and every nontrivial normal closure is all of `G`.
/// Every normal subgroup contains an element of prime order, so only those
/// are tried.
pub fn is_simple(g: &PermGroup) -> Result<bool> {
    if g.order() == 1 {
        return Ok(false);
    }
    for x in g.elements()? {
        if !x.is_identity()
            && arith::is_prime(x.order())
            && normal_closure_of(g, std::slice::from_ref(x)).order() != g.order()
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Perfect, and `G/Z(G)` simple: `⟨x^G, Z(G)⟩ = G` for every `x ∉ Z(G)`.
pub fn is_quasisimple(g: &PermGroup) -> Result<bool> {
    if g.order() == 1 || derived_term(g, 1).order() != g.order() {
        return Ok(false);
    }
    let z = center(g)?;
    if z.order() == g.order() {
        return Ok(false);
    }
    for x in g.elements()? {
        if z.has(x) {
            continue;
        }
        let mut gens = normal_closure_of(g, std::slice::from_ref(x)).generators().to_vec();
        gens.extend(z.generators().iter().cloned());
        if g.subgroup(gens).order() != g.order() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every normal subgroup, as joins of normal closures of single elements,
/// sorted by order. Intended for small groups.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut closures: Vec<PermGroup> = Vec::new();
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
    for x in g.elements()? {
        let n = normal_closure_of(g, std::slice::from_ref(x));
        if seen.insert(n.elements()?.to_vec()) {
            closures.push(n);
        }
    }
    let mut all = closures.clone();
    let mut frontier = closures.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &closures {
                let mut gens = a.generators().to_vec();
                gens.extend(b.generators().iter().cloned());
                let join = g.subgroup(gens);
                if seen.insert(join.elements()?.to_vec()) {
                    next.push(join.clone());
                    all.push(join);
                }
            }
        }
        frontier = next;
    }
    all.sort_by_key(|n| n.order());
    Ok(all)
}

/// `G/N` acting on the right cosets of `N`, with the projection map.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: PermGroup,
    representatives: Vec<Perm>,
    labels: HashMap<Perm, usize>,
}

impl Quotient {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.representatives
    }

    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Perm) -> Option<usize> {
        self.labels.get(x).copied()
    }

    /// The permutation of cosets induced by right multiplication with `x`.
    pub fn project(&self, x: &Perm) -> Result<Perm> {
        let images = self
            .representatives
            .iter()
            .map(|r| {
                self.labels
                    .get(&r.compose(x)?)
                    .copied()
                    .ok_or_else(|| Error::NotInGroup(x.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(images)
    }
}

pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let n_elems = n.elements()?;
    let mut labels = HashMap::new();
    let mut representatives = Vec::new();
    for x in g.elements()? {
        if labels.contains_key(x) {
            continue;
        }
        let idx = representatives.len();
        representatives.push(x.clone());
        for m in n_elems {
            labels.insert(m.then(x), idx);
        }
    }
    let degree = representatives.len();
    let limits = g.limits();
    let mut q = Quotient {
        group: PermGroup::trivial(degree),
        representatives,
        labels,
    };
    let gens = g
        .generators()
        .iter()
        .map(|x| q.project(x))
        .collect::<Result<Vec<_>>>()?;
    q.group = PermGroup::with_limits(degree, gens, limits)?;
    Ok(q)
}

/// Invariant factors `d_1 | d_2 | ...` of an abelian group, read off from
/// the sizes of `Ω_i = {a : a^{p^i} = 1}` in each Sylow subgroup.
pub fn abelian_invariants(a: &PermGroup) -> Result<Vec<u64>> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let elems = a.elements()?;
    // per prime, exponents of the cyclic primary factors, largest first
    let mut primary: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in arith::prime_divisors(a.order()) {
        let pp = p as u128;
        let log_p = |n: usize| {
            let mut n = n as u128;
            let mut e = 0i64;
            while n > 1 {
                n /= pp;
                e += 1;
            }
            e
        };
        let p_orders: Vec<u128> = elems
            .iter()
            .map(|x| x.order() as u128)
            .filter(|&o| arith::is_power_of(o, p))
            .collect();
        let max_exp = p_orders.iter().map(|&o| log_p(o as usize)).max().unwrap_or(0);
        // r[i] = log_p |Ω_i|
        let r: Vec<i64> = (0..=max_exp + 1)
            .map(|i| {
                let bound = pp.pow(i as u32);
                log_p(p_orders.iter().filter(|&&o| bound.is_multiple_of(o)).count())
            })
            .collect();
        let mut exps = Vec::new();
        for i in 1..=max_exp as usize {
            let at_least_i = r[i] - r[i - 1];
            let at_least_next = r[i + 1] - r[i];
            for _ in 0..(at_least_i - at_least_next) {
                exps.push(i as u32);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        primary.push((p, exps));
    }
    let count = primary.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..count)
        .map(|j| {
            primary
                .iter()
                .map(|(p, e)| e.get(j).map_or(1, |&k| p.pow(k)))
                .product()
        })
        .collect();
    factors.reverse();
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse_cycles(text, n).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let cycle: Vec<usize> = (1..=n).collect();
        PermGroup::new(
            n,
            vec![p("(1 2)", n), Perm::from_cycles(n, &[&cycle]).unwrap()],
        )
        .unwrap()
    }

    fn alt5() -> PermGroup {
        PermGroup::new(5, vec![p("(1 2 3)", 5), p("(1 2 3 4 5)", 5)]).unwrap()
    }

    fn klein() -> PermGroup {
        PermGroup::new(4, vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)]).unwrap()
    }

    #[test]
    fn generated_subgroups() {
        let s3 = sym(3);
        assert_eq!(subgroup_generated(&s3, &[]).unwrap().order(), 1);
        assert_eq!(subgroup_generated(&s3, &[p("(1 2 3)", 3)]).unwrap().order(), 3);
        assert!(matches!(
            subgroup_generated(&alt5(), &[p("(1 2)", 5)]),
            Err(Error::NotInGroup(_))
        ));
        let a5 = alt5();
        let involutions: Vec<Perm> = a5
            .elements()
            .unwrap()
            .iter()
            .filter(|x| x.order() == 2)
            .cloned()
            .collect();
        assert_eq!(subgroup_generated(&a5, &involutions).unwrap().order(), 60);
    }

    #[test]
    fn normal_closures() {
        assert_eq!(normal_closure(&sym(3), &[p("(1 2)", 3)]).unwrap().order(), 6);
        assert_eq!(normal_closure(&sym(3), &[Perm::identity(3)]).unwrap().order(), 1);
        let v = normal_closure(&sym(4), &[p("(1 2)(3 4)", 4)]).unwrap();
        assert_eq!(v.group(), &klein());
        assert!(v.is_normal());
    }

    #[test]
    fn commutator_subgroups() {
        let s3 = SubgroupRef::whole(&sym(3));
        assert_eq!(commutator_subgroup(&s3, &s3).unwrap().order(), 3);
        let a5 = SubgroupRef::whole(&alt5());
        assert_eq!(commutator_subgroup(&a5, &a5).unwrap().order(), 60);
        let s4 = sym(4);
        let a = subgroup_generated(&s4, &[p("(1 2)", 4)]).unwrap();
        let b = subgroup_generated(&s4, &[p("(3 4)", 4)]).unwrap();
        assert_eq!(commutator_subgroup(&a, &b).unwrap().order(), 1);
        let other = SubgroupRef::whole(&sym(3));
        let c = SubgroupRef::whole(&PermGroup::new(3, vec![p("(1 2 3)", 3)]).unwrap());
        assert!(matches!(commutator_subgroup(&other, &c), Err(Error::ParentMismatch)));
    }

    #[test]
    fn series_of_sym4() {
        let s4 = sym(4);
        assert_eq!(lower_central_term(&s4, 1).group(), &s4);
        assert_eq!(lower_central_term(&s4, 2).order(), 12);
        assert_eq!(lower_central_term(&s4, 3).order(), 12);
        assert_eq!(derived_term(&s4, 0).order(), 24);
        assert_eq!(derived_term(&s4, 1).order(), 12);
        assert_eq!(derived_term(&s4, 2).group(), &klein());
        assert_eq!(derived_term(&s4, 3).order(), 1);
        assert_eq!(derived_series(&s4).orders(), vec![24, 12, 4, 1, 1]);
        assert_eq!(lower_central_series(&s4).orders(), vec![24, 12, 12]);
    }

    #[test]
    fn sylow_subgroups() {
        assert_eq!(sylow_subgroup(&sym(4), 2).unwrap().order(), 8);
        assert_eq!(sylow_subgroup(&alt5(), 5).unwrap().order(), 5);
        assert_eq!(sylow_subgroup(&sym(3), 5).unwrap().order(), 1);
        assert!(matches!(sylow_subgroup(&sym(3), 4), Err(Error::NotPrime(4))));
    }

    #[test]
    fn cores_and_fitting() {
        assert_eq!(p_core(&sym(4), 2).unwrap().group(), &klein());
        assert_eq!(p_prime_core(&sym(3), 2).unwrap().order(), 3);
        for q in [2, 3, 5] {
            assert_eq!(p_core(&alt5(), q).unwrap().order(), 1);
        }
        assert_eq!(fitting(&sym(4)).unwrap().group(), &klein());
        assert_eq!(fitting(&klein()).unwrap().order(), 4);
        assert_eq!(p_fitting(&sym(3), 3).unwrap().order(), 3);
        assert_eq!(p_fitting(&sym(3), 2).unwrap().order(), 6);
    }

    #[test]
    fn p_nilpotency() {
        assert!(is_p_nilpotent(&sym(3), 2).unwrap());
        assert!(!is_p_nilpotent(&sym(3), 3).unwrap());
        for q in [2, 3, 5] {
            assert!(!is_p_nilpotent(&alt5(), q).unwrap());
            assert!(!is_p_nilpotent_by_core(&alt5(), q).unwrap());
        }
        assert!(is_p_nilpotent(&klein(), 2).unwrap());
        assert!(is_p_nilpotent(&sym(3), 7).unwrap());
    }

    #[test]
    fn predicate_flags() {
        let s4 = predicates(&sym(4)).unwrap();
        assert!(s4.is_soluble && !s4.is_nilpotent && !s4.is_metanilpotent);
        let v = predicates(&klein()).unwrap();
        assert!(v.is_p_group(2) && v.is_nilpotent && v.is_abelian);
        let a5 = predicates(&alt5()).unwrap();
        assert!(a5.is_perfect && !a5.is_soluble);
        assert!(predicates(&sym(3)).unwrap().is_metanilpotent);
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&alt5()).unwrap());
        assert!(!is_simple(&sym(4)).unwrap());
        assert!(is_quasisimple(&alt5()).unwrap());
        assert!(!is_quasisimple(&sym(4)).unwrap());
    }

    #[test]
    fn quotients() {
        let s4 = sym(4);
        let q = quotient_group(&s4, &s4).unwrap();
        assert_eq!(q.group().order(), 1);
        let q = quotient_group(&s4, &klein()).unwrap();
        assert_eq!(q.group().order(), 6);
        assert!(!q.group().is_abelian());
        let a = p("(1 2 3)", 4);
        let b = p("(1 4)", 4);
        assert_eq!(
            q.project(&(&a * &b)).unwrap(),
            &q.project(&a).unwrap() * &q.project(&b).unwrap()
        );
        let not_normal = PermGroup::new(4, vec![p("(1 2)", 4)]).unwrap();
        assert!(matches!(quotient_group(&s4, &not_normal), Err(Error::NotNormal)));
    }

    #[test]
    fn invariants() {
        assert_eq!(abelian_invariants(&PermGroup::trivial(2)).unwrap(), Vec::<u64>::new());
        assert_eq!(abelian_invariants(&klein()).unwrap(), vec![2, 2]);
        let c4c6 = PermGroup::new(10, vec![p("(1 2 3 4)", 10), p("(5 6 7 8 9 10)", 10)]).unwrap();
        assert_eq!(abelian_invariants(&c4c6).unwrap(), vec![2, 12]);
        assert!(matches!(abelian_invariants(&sym(3)), Err(Error::NotAbelian)));
    }

    #[test]
    fn centralizers_and_normalizers() {
        assert_eq!(center(&klein()).unwrap().order(), 4);
        assert_eq!(center(&sym(3)).unwrap().order(), 1);
        let a5 = alt5();
        let v = PermGroup::new(5, vec![p("(1 2)(3 4)", 5), p("(1 3)(2 4)", 5)]).unwrap();
        assert_eq!(normalizer(&a5, &v).unwrap().order(), 12);
        assert_eq!(centralizer(&a5, v.generators()).unwrap().order(), 4);
    }

    #[test]
    fn normal_subgroup_scan() {
        let orders: Vec<u128> = normal_subgroups(&sym(4)).unwrap().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(normal_subgroups(&alt5()).unwrap().len(), 2);
    }
}
