use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::syntax::{disjoint, Word};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::structure::{generated_by, SubgroupRef};

/// Where a value set came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueSource {
    Word(Word),
    /// A set given directly rather than as the values of a word.
    External(String),
}

impl ValueSource {
    pub fn label(&self) -> String {
        match self {
            ValueSource::Word(w) => w.descriptor(),
            ValueSource::External(tag) => format!("external:{tag}"),
        }
    }
}

/// The set `G_w` of `w`-values of a group.
#[derive(Clone, Debug)]
pub struct ValueSet {
    group: PermGroup,
    source: ValueSource,
    values: BTreeSet<Perm>,
}

impl ValueSet {
    /// A value set given as an explicit element list; every element must lie
    /// in `group`.
    pub fn external(group: &PermGroup, tag: &str, values: impl IntoIterator<Item = Perm>) -> Result<ValueSet> {
        let values: BTreeSet<Perm> = values.into_iter().collect();
        for v in &values {
            if !group.contains(v)? {
                return Err(Error::NotInGroup(v.to_string()));
            }
        }
        Ok(ValueSet {
            group: group.clone(),
            source: ValueSource::External(tag.to_string()),
            values,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn source(&self) -> &ValueSource {
        &self.source
    }

    /// Values in lexicographic order of their image sequences.
    pub fn values(&self) -> &BTreeSet<Perm> {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, x: &Perm) -> bool {
        self.values.contains(x)
    }

    /// `v^g ∈ V` for every value `v` and generator `g` of the group.
    pub fn is_conjugation_closed(&self) -> bool {
        self.values
            .iter()
            .all(|v| self.group.generators().iter().all(|g| self.values.contains(&v.conj(g))))
    }

    pub fn is_inversion_closed(&self) -> bool {
        self.values.iter().all(|v| self.values.contains(&v.inverse()))
    }
}

impl PartialEq for ValueSet {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

/// `G_w`. Words built from variables, powers, products and brackets whose
/// factors use disjoint variables are evaluated bottom-up on value sets,
/// since the factors then range independently; anything else falls back to
/// enumerating argument tuples, bounded by the tuple cap.
pub fn word_values(g: &PermGroup, w: &Word) -> Result<ValueSet> {
    let elems = g.elements()?;
    let values = match recursive_values(elems, w) {
        Some(set) => set.into_iter().collect(),
        None => tuple_values(g, w)?,
    };
    Ok(ValueSet {
        group: g.clone(),
        source: ValueSource::Word(w.clone()),
        values,
    })
}

/// `G_w` by enumerating every tuple of arguments for the variables that
/// occur in `w`. Serves as the independent check on [`word_values`].
pub fn word_values_brute_force(g: &PermGroup, w: &Word) -> Result<ValueSet> {
    Ok(ValueSet {
        group: g.clone(),
        source: ValueSource::Word(w.clone()),
        values: tuple_values(g, w)?,
    })
}

fn recursive_values(elems: &[Perm], w: &Word) -> Option<HashSet<Perm>> {
    match w {
        Word::Var(_) => Some(elems.iter().cloned().collect()),
        Word::Power(u, n) => {
            let inner = recursive_values(elems, u)?;
            Some(inner.iter().map(|a| a.pow(*n)).collect())
        }
        Word::Product(items) => {
            let mut seen: Vec<u32> = Vec::new();
            for item in items {
                let vars = item.variables();
                if !disjoint(&vars, &seen) {
                    return None;
                }
                seen.extend(vars);
                seen.sort_unstable();
            }
            let mut acc: HashSet<Perm> = recursive_values(elems, &items[0])?;
            for item in &items[1..] {
                let right: Vec<Perm> = recursive_values(elems, item)?.into_iter().collect();
                let left: Vec<Perm> = acc.into_iter().collect();
                acc = pairwise(&left, &right, |a, b| a.then(b));
            }
            Some(acc)
        }
        Word::Bracket(u, v) => {
            if !disjoint(&u.variables(), &v.variables()) {
                return None;
            }
            let left: Vec<Perm> = recursive_values(elems, u)?.into_iter().collect();
            let right: Vec<Perm> = recursive_values(elems, v)?.into_iter().collect();
            Some(pairwise(&left, &right, |a, b| a.comm(b)))
        }
    }
}

fn pairwise(left: &[Perm], right: &[Perm], op: impl Fn(&Perm, &Perm) -> Perm + Sync) -> HashSet<Perm> {
    left.par_iter()
        .fold(HashSet::new, |mut set, a| {
            for b in right {
                set.insert(op(a, b));
            }
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

fn tuple_values(g: &PermGroup, w: &Word) -> Result<BTreeSet<Perm>> {
    let elems = g.elements()?;
    let vars = w.variables();
    let n = elems.len() as u128;
    let tuples = n.checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    let cap = g.limits().tuple_cap;
    if tuples > cap {
        return Err(Error::TupleCap { tuples, cap });
    }
    let arity = w.arity();
    let id = g.identity();
    let rest = vars.len() - 1;
    let set = elems
        .par_iter()
        .fold(HashSet::new, |mut set, first| {
            let mut args = vec![id.clone(); arity];
            args[vars[0] as usize - 1] = first.clone();
            // odometer over the remaining variables
            let mut idx = vec![0usize; rest];
            loop {
                for (slot, &i) in idx.iter().enumerate() {
                    args[vars[slot + 1] as usize - 1] = elems[i].clone();
                }
                set.insert(w.eval_unchecked(&args));
                let mut pos = 0;
                while pos < rest {
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == rest {
                    break;
                }
            }
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(set.into_iter().collect())
}

/// `w(G) = ⟨G_w⟩`.
pub fn verbal_subgroup(g: &PermGroup, w: &Word) -> Result<SubgroupRef> {
    let values = word_values(g, w)?;
    Ok(SubgroupRef::new(g, generated_by(g, values.values())))
}

/// Subgroup generated by a value set.
pub fn generated_by_values(values: &ValueSet) -> PermGroup {
    generated_by(&values.group, values.values())
}
