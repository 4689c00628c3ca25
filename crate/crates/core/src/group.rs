//! Permutation groups given by generators, backed by a Schreier–Sims
//! stabilizer chain for order and membership.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;
pub const DEFAULT_TUPLE_CAP: u128 = 100_000_000;

pub const ENUMERATION_CAP_ENV: &str = "PNILP_ENUM_CAP";
pub const TUPLE_CAP_ENV: &str = "PNILP_TUPLE_CAP";

/// Size limits inherited by every subgroup and quotient built from a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order that may be fully enumerated.
    pub enumeration_cap: usize,
    /// Largest number of argument tuples a generic word evaluation may visit.
    pub tuple_cap: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            tuple_cap: DEFAULT_TUPLE_CAP,
        }
    }
}

impl Limits {
    /// Defaults overridden by `PNILP_ENUM_CAP` / `PNILP_TUPLE_CAP` when set.
    pub fn from_env() -> Result<Limits> {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var(ENUMERATION_CAP_ENV) {
            limits.enumeration_cap = v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{ENUMERATION_CAP_ENV}={v:?} is not an integer"))
            })?;
        }
        if let Ok(v) = std::env::var(TUPLE_CAP_ENV) {
            limits.tuple_cap = v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("{TUPLE_CAP_ENV}={v:?} is not an integer"))
            })?;
        }
        Ok(limits)
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[p]` maps `base` to `p`.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn extend_orbit(&mut self) {
        let mut queue: VecDeque<usize> = self.orbit.iter().copied().collect();
        while let Some(pt) = queue.pop_front() {
            let rep = self.transversal[pt].clone().expect("orbit point has a transversal");
            for g in &self.gens {
                let next = g.image(pt);
                if self.transversal[next].is_none() {
                    self.transversal[next] = Some(rep.then(g));
                    self.orbit.push(next);
                    queue.push_back(next);
                }
            }
        }
    }
}

/// Base and strong generating set. Level `i` holds generators fixing the
/// first `i` base points, together with the orbit of base point `i`.
#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub(crate) fn new(degree: usize, gens: &[Perm]) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if !chain.sift(0, g).is_identity() {
                chain.add(0, g.clone());
            }
        }
        chain
    }

    /// Strips `g` through the levels starting at `from`; the residue is the
    /// identity exactly when `g` lies in the group those levels describe.
    fn sift(&self, from: usize, g: &Perm) -> Perm {
        let mut g = g.clone();
        for level in &self.levels[from.min(self.levels.len())..] {
            let pt = g.image(level.base);
            match &level.transversal[pt] {
                Some(t) => g = g.then(&t.inverse()),
                None => return g,
            }
        }
        g
    }

    fn add(&mut self, level: usize, g: Perm) {
        if level == self.levels.len() {
            let base = g.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        {
            let lvl = &mut self.levels[level];
            lvl.gens.push(g);
            lvl.extend_orbit();
        }
        let lvl = self.levels[level].clone();
        for &pt in &lvl.orbit {
            let t = lvl.transversal[pt].as_ref().expect("orbit point");
            for s in &lvl.gens {
                let ts = t.then(s);
                let back = lvl.transversal[ts.image(lvl.base)]
                    .as_ref()
                    .expect("orbit is closed");
                let schreier = ts.then(&back.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let residue = self.sift(level + 1, &schreier);
                if !residue.is_identity() {
                    self.add(level + 1, residue);
                }
            }
        }
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub(crate) fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(0, g).is_identity()
    }

    pub(crate) fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Every element, as products of transversal elements from the deepest
    /// level up.
    fn elements(&self) -> Vec<Perm> {
        let mut current = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(current.len() * level.orbit.len());
            for h in &current {
                for &pt in &level.orbit {
                    next.push(h.then(level.transversal[pt].as_ref().expect("orbit point")));
                }
            }
            current = next;
        }
        current
    }
}

struct Inner {
    degree: usize,
    generators: Vec<Perm>,
    limits: Limits,
    chain: OnceLock<StabChain>,
    elements: OnceLock<Vec<Perm>>,
}

/// A permutation group on `{1..degree}`. Cheap to clone; caches are filled
/// lazily and are safe to share between threads.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::with_limits(degree, generators, Limits::default())
    }

    pub fn with_limits(degree: usize, generators: Vec<Perm>, limits: Limits) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::EmptyDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup::build(degree, generators, limits))
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::build(degree.max(1), Vec::new(), Limits::default())
    }

    fn build(degree: usize, generators: Vec<Perm>, limits: Limits) -> PermGroup {
        let mut seen = HashSet::new();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                generators,
                limits,
                chain: OnceLock::new(),
                elements: OnceLock::new(),
            }),
        }
    }

    /// The subgroup generated by `gens`, sharing this group's degree and
    /// limits. Membership of `gens` is not checked.
    pub fn subgroup(&self, gens: Vec<Perm>) -> PermGroup {
        PermGroup::build(self.degree(), gens, self.limits())
    }

    /// Same generators under different limits.
    pub fn relimit(&self, limits: Limits) -> PermGroup {
        PermGroup::build(self.degree(), self.generators().to_vec(), limits)
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.inner.generators
    }

    pub fn limits(&self) -> Limits {
        self.inner.limits
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    fn chain(&self) -> &StabChain {
        self.inner
            .chain
            .get_or_init(|| StabChain::new(self.degree(), self.generators()))
    }

    /// Fills the chain and, when within the cap, the element list.
    pub fn precompute(&self) {
        self.chain();
        let _ = self.elements();
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn contains(&self, a: &Perm) -> Result<bool> {
        if a.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: a.degree(),
            });
        }
        Ok(self.chain().contains(a))
    }

    /// Membership test that treats a degree mismatch as non-membership.
    pub fn has(&self, a: &Perm) -> bool {
        self.chain().contains(a)
    }

    /// All elements in lexicographic order of their image sequences.
    pub fn elements(&self) -> Result<&[Perm]> {
        if let Some(e) = self.inner.elements.get() {
            return Ok(e);
        }
        let order = self.order();
        let cap = self.limits().enumeration_cap;
        if order > cap as u128 {
            return Err(Error::EnumerationCap { order, cap });
        }
        Ok(self.inner.elements.get_or_init(|| {
            let mut e = self.chain().elements();
            e.sort();
            e
        }))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.has(g))
    }

    /// Equality of element sets.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && self
                .generators()
                .iter()
                .all(|h| other.generators().iter().all(|g| self.has(&h.conj(g))))
    }

    /// Lcm of all element orders.
    pub fn exponent(&self) -> Result<u64> {
        Ok(self
            .elements()?
            .iter()
            .fold(1u128, |acc, g| crate::arith::lcm(acc, g.order() as u128)) as u64)
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_elements(other)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}

/// Free-function constructor matching the operation list.
pub fn group_from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
    PermGroup::new(degree, gens)
}

/// Breadth-first closure under the generators, with no stabilizer chain
/// involved. Used to cross-check the chain's order and element set.
pub fn enumerate_by_closure(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::EnumerationCap {
                        order: seen.len() as u128,
                        cap,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}
