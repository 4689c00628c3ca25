//! Permutations of `{1..n}`.
//!
//! Products are read left to right: `a.compose(&b)` applies `a` first and
//! then `b`, so points act on the right. Points are stored 0-based and shown
//! 1-based in cycle notation and in every serialized form.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!(
                    "point {} appears twice",
                    i + 1
                )));
            }
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation from 1-based images, the external format.
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        let zero = images
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("point 0 in 1-based image list".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(zero)
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..{degree}"
                    )));
                }
                if std::mem::replace(&mut used[pt - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears in two cycles"
                    )));
                }
                let next = cycle[(i + 1) % cycle.len()];
                images[pt - 1] = next - 1;
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`, `(1,2)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::InvalidPermutation("empty cycle text".into()));
        }
        while !rest.is_empty() {
            let inner_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {text:?}")))?;
            let close = inner_start
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {text:?}")))?;
            let body = &inner_start[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner_start[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Smallest 0-based point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &j)| i as u32 != j)
            .map(|(i, _)| i)
    }

    fn check_degree(&self, other: &Perm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// Left-to-right product: `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Perm { images }
    }

    /// `self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Perm) -> Result<Perm> {
        self.check_degree(other)?;
        Ok(self.comm(other))
    }

    pub(crate) fn comm(&self, other: &Perm) -> Perm {
        self.inverse()
            .then(&other.inverse())
            .then(self)
            .then(other)
    }

    /// `by⁻¹ self by`.
    pub fn conjugate(&self, by: &Perm) -> Result<Perm> {
        self.check_degree(by)?;
        Ok(self.conj(by))
    }

    pub(crate) fn conj(&self, by: &Perm) -> Perm {
        // image of by(i) is by(self(i))
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[by.images[i] as usize] = by.images[j as usize];
        }
        Perm { images }
    }

    /// `[g, x, x, ..., x]` with `m` copies of `x`; `m = 0` gives `g`.
    pub fn iterated_commutator(g: &Perm, x: &Perm, m: usize) -> Result<Perm> {
        g.check_degree(x)?;
        let mut acc = g.clone();
        for _ in 0..m {
            acc = acc.comm(x);
        }
        Ok(acc)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, exp: i64) -> Perm {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image(start);
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `m ≥ 1` with `self^m = 1`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| arith::lcm(acc, c.len() as u128)) as u64
    }
}

/// Free-function form of [`Perm::order`].
pub fn element_order(a: &Perm) -> u64 {
    a.order()
}

impl Mul for &Perm {
    type Output = Perm;

    /// Left-to-right product; panics on a degree mismatch.
    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based_images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Perm, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Perm::from_one_based(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        assert_eq!(p("(1 2)", 3).compose(&p("(1 3)", 3)).unwrap(), p("(1 2 3)", 3));
        let a = p("(1 4 2)(3 5)", 5);
        assert_eq!(Perm::identity(5).compose(&a).unwrap(), a);
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(Perm::identity(4).inverse(), Perm::identity(4));
        assert_eq!(p("(1 2 3)", 3).inverse(), p("(1 3 2)", 3));
        assert_eq!(p("(1 2)", 3).inverse(), p("(1 2)", 3));
    }

    #[test]
    fn commutator_and_conjugate() {
        let a = p("(1 2)", 3);
        assert!(a.commutator(&a).unwrap().is_identity());
        assert!(a.commutator(&Perm::identity(3)).unwrap().is_identity());
        assert_eq!(a.commutator(&p("(1 3)", 3)).unwrap(), p("(1 3 2)", 3));
        assert_eq!(a.conjugate(&p("(2 3)", 3)).unwrap(), p("(1 3)", 3));
        assert_eq!(a.conjugate(&Perm::identity(3)).unwrap(), a);
        let b = p("(1 2 3 4)", 5);
        let c = p("(2 5)", 5);
        assert_eq!(b.conjugate(&c).unwrap().order(), b.order());
        // conj agrees with the explicit product
        assert_eq!(b.conj(&c), &(&c.inverse() * &b) * &c);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
        assert!(a.commutator(&b).is_err());
        assert!(a.conjugate(&b).is_err());
        assert!(Perm::iterated_commutator(&a, &b, 2).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(Perm::identity(5).order(), 1);
        assert_eq!(p("(1 2 3 4 5)", 5).order(), 5);
        assert_eq!(element_order(&p("(1 2)(3 4 5)", 5)), 6);
    }

    #[test]
    fn iterated_commutator_cases() {
        let g = p("(1 2 3)", 4);
        let x = p("(2 3 4)", 4);
        assert_eq!(Perm::iterated_commutator(&g, &x, 0).unwrap(), g);
        assert_eq!(Perm::iterated_commutator(&g, &x, 1).unwrap(), g.comm(&x));
        let y = p("(1 2)", 4);
        let z = p("(3 4)", 4);
        for m in 1..4 {
            assert!(Perm::iterated_commutator(&y, &z, m).unwrap().is_identity());
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = p("(1 2 3 4 5)(6 7)", 7);
        let mut acc = Perm::identity(7);
        for e in 0..12 {
            assert_eq!(a.pow(e), acc);
            assert_eq!(a.pow(-e), acc.inverse());
            acc = &acc * &a;
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("(1,2,3)(4 5)", 5).to_string(), "(1 2 3)(4 5)");
        assert_eq!(p("()", 3).to_string(), "()");
        assert!(Perm::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Perm::parse_cycles("(1 4)", 3).is_err());
        assert!(Perm::parse_cycles("1 2", 3).is_err());
        assert!(Perm::from_one_based(&[1, 1, 2]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn serde_uses_one_based_images() {
        let a = p("(1 3)", 3);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[3,2,1]");
        let back: Perm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<Perm>("[1,1,2]").is_err());
    }
}
