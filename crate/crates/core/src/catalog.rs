//! Deterministic group constructors, the default sweep catalog, and the
//! group JSON format.
//!
//! Groups are named by constructor expressions such as `cyclic(6)`,
//! `direct_product(symmetric(3),cyclic(2))` or `affine(5,1,[[2]])`;
//! [`resolve`] turns a name (or a path to a `.json` file) back into a group.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::structure;

/// A group together with the name reports use for it.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: PermGroup,
}

impl NamedGroup {
    pub fn new(name: impl Into<String>, group: PermGroup) -> NamedGroup {
        NamedGroup {
            name: name.into(),
            group,
        }
    }
}

/// On-disk group format with 1-based image arrays.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GroupJson {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &NamedGroup) -> GroupJson {
        GroupJson {
            name: g.name.clone(),
            degree: g.group.degree(),
            generators: g.group.generators().iter().map(Perm::one_based_images).collect(),
        }
    }

    pub fn into_group(self) -> Result<NamedGroup> {
        let gens = self
            .generators
            .iter()
            .map(|images| Perm::from_one_based(images))
            .collect::<Result<Vec<_>>>()?;
        Ok(NamedGroup::new(self.name, PermGroup::new(self.degree, gens)?))
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<NamedGroup> {
    let text = std::fs::read_to_string(path)?;
    let json: GroupJson = serde_json::from_str(&text)?;
    json.into_group()
}

pub fn save(path: impl AsRef<Path>, g: &NamedGroup) -> Result<()> {
    std::fs::write(path, group_json_text(g)?)?;
    Ok(())
}

/// The group JSON with one generator per line.
pub fn group_json_text(g: &NamedGroup) -> Result<String> {
    let json = GroupJson::from_group(g);
    let gens = json
        .generators
        .iter()
        .map(|images| serde_json::to_string(images).map(|s| format!("    {s}")))
        .collect::<serde_json::Result<Vec<_>>>()?;
    Ok(format!(
        "{{\n  \"name\": {},\n  \"degree\": {},\n  \"generators\": [\n{}\n  ]\n}}\n",
        serde_json::to_string(&json.name)?,
        json.degree,
        gens.join(",\n")
    ))
}

/// The catalog manifest with one entry per line.
pub fn manifest_text(entries: &[CatalogEntry]) -> Result<String> {
    let lines = entries
        .iter()
        .map(|e| serde_json::to_string(e).map(|s| format!("  {s}")))
        .collect::<serde_json::Result<Vec<_>>>()?;
    Ok(format!("[\n{}\n]\n", lines.join(",\n")))
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(invalid("cyclic(n) needs n >= 1"));
    }
    let images = (0..n).map(|i| (i + 1) % n).collect();
    PermGroup::new(n, vec![Perm::from_images(images)?])
}

/// Dihedral group of order `2n`: symmetries of an `n`-gon for `n ≥ 3`,
/// `C_2` for `n = 1` and the Klein four-group for `n = 2`.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    match n {
        0 => Err(invalid("dihedral(n) needs n >= 1")),
        1 => cyclic(2),
        2 => PermGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[&[1, 2], &[3, 4]])?,
                Perm::from_cycles(4, &[&[1, 3], &[2, 4]])?,
            ],
        ),
        _ => {
            let rotation = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
            let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
            PermGroup::new(n, vec![rotation, reflection])
        }
    }
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(invalid("symmetric(n) needs n >= 1"));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let cycle = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    PermGroup::new(n, vec![Perm::from_cycles(n, &[&[1, 2]])?, cycle])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(invalid("alternating(n) needs n >= 1"));
    }
    let gens = (3..=n)
        .map(|i| Perm::from_cycles(n, &[&[1, 2, i]]))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n, gens)
}

/// `C_p^r` as `r` disjoint `p`-cycles.
pub fn elementary_abelian(p: u64, r: usize) -> Result<PermGroup> {
    if !arith::is_prime(p) || r == 0 {
        return Err(invalid(format!("elementary_abelian({p},{r}) needs p prime and r >= 1")));
    }
    let p = p as usize;
    let degree = p * r;
    let gens = (0..r)
        .map(|j| {
            let cycle: Vec<usize> = (j * p + 1..=(j + 1) * p).collect();
            Perm::from_cycles(degree, &[&cycle])
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

/// `A × B` acting on the disjoint union of their points.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (na, nb) = (a.degree(), b.degree());
    let degree = na + nb;
    let left = a.generators().iter().map(|g| {
        let images = g.images().chain(na..degree).collect();
        Perm::from_images(images)
    });
    let right = b.generators().iter().map(|g| {
        let images = (0..na).chain(g.images().map(|i| i + na)).collect();
        Perm::from_images(images)
    });
    PermGroup::new(degree, left.chain(right).collect::<Result<Vec<_>>>()?)
}

pub type Matrix = Vec<Vec<u64>>;

/// Vectors of `F_p^r` are numbered `Σ v_i p^i`.
fn decode(mut index: usize, p: u64, r: usize) -> Vec<u64> {
    (0..r)
        .map(|_| {
            let d = index as u64 % p;
            index /= p as usize;
            d
        })
        .collect()
}

fn encode(v: &[u64], p: u64) -> usize {
    v.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

/// Row vector times matrix over `F_p`.
fn apply_matrix(v: &[u64], m: &Matrix, p: u64) -> Vec<u64> {
    (0..v.len())
        .map(|j| v.iter().enumerate().map(|(i, &vi)| vi * m[i][j]).sum::<u64>() % p)
        .collect()
}

fn check_matrix(m: &Matrix, p: u64, r: usize) -> Result<()> {
    if m.len() != r || m.iter().any(|row| row.len() != r) {
        return Err(invalid(format!("matrix must be {r}x{r}")));
    }
    if m.iter().flatten().any(|&e| e >= p) {
        return Err(invalid(format!("matrix entries must lie in 0..{p}")));
    }
    Ok(())
}

/// The linear map `v ↦ vM` on the points `F_p^r` (all of them, or the
/// nonzero ones when `skip_zero`).
fn matrix_perm(m: &Matrix, p: u64, r: usize, skip_zero: bool) -> Result<Perm> {
    check_matrix(m, p, r)?;
    let count = (p as usize).pow(r as u32);
    let shift = usize::from(skip_zero);
    let images = (shift..count)
        .map(|i| encode(&apply_matrix(&decode(i, p, r), m, p), p) - shift)
        .collect();
    Perm::from_images(images).map_err(|_| invalid("matrix is not invertible"))
}

/// `F_p^r ⋊ ⟨matrices⟩` acting on the `p^r` affine points: translations by
/// the standard basis together with `v ↦ vM`.
pub fn affine_semidirect(p: u64, r: usize, matrices: &[Matrix]) -> Result<PermGroup> {
    if !arith::is_prime(p) || r == 0 {
        return Err(invalid(format!("affine({p},{r},..) needs p prime and r >= 1")));
    }
    let degree = (p as usize).pow(r as u32);
    let mut gens = Vec::new();
    for axis in 0..r {
        let images = (0..degree)
            .map(|i| {
                let mut v = decode(i, p, r);
                v[axis] = (v[axis] + 1) % p;
                encode(&v, p)
            })
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    for m in matrices {
        gens.push(matrix_perm(m, p, r, false)?);
    }
    PermGroup::new(degree, gens)
}

/// `SL(2,q)` on the `q² − 1` nonzero vectors of `F_q²`, which keeps the
/// centre `{±1}` faithful.
pub fn sl2(q: u64) -> Result<PermGroup> {
    if q != 3 && q != 5 {
        return Err(invalid(format!("sl2(q) supports q in {{3, 5}}, got {q}")));
    }
    let upper = vec![vec![1, 1], vec![0, 1]];
    let lower = vec![vec![1, 0], vec![1, 1]];
    let degree = (q * q - 1) as usize;
    PermGroup::new(
        degree,
        vec![matrix_perm(&upper, q, 2, true)?, matrix_perm(&lower, q, 2, true)?],
    )
}

/// The group `(C_3 × C_3) ⋊ D_8` of order 72 on the nine points of `F_3²`,
/// with its distinguished generators.
#[derive(Clone, Debug)]
pub struct Group72 {
    pub group: PermGroup,
    pub g1: Perm,
    pub g2: Perm,
    pub g3: Perm,
    pub h1: Perm,
    pub h2: Perm,
}

/// `h1`, `h2` translate by the standard basis; `g1` acts as `diag(−1, 1)`,
/// `g2` swaps the coordinates and `g3 = [g2, g1]`.
pub fn group_72() -> Group72 {
    let g1m: Matrix = vec![vec![2, 0], vec![0, 1]];
    let swap: Matrix = vec![vec![0, 1], vec![1, 0]];
    let group = affine_semidirect(3, 2, &[g1m, swap]).expect("valid construction");
    let gens = group.generators();
    let (h1, h2, g1, g2) = (gens[0].clone(), gens[1].clone(), gens[2].clone(), gens[3].clone());
    let g3 = g2.comm(&g1);
    Group72 {
        group,
        g1,
        g2,
        g3,
        h1,
        h2,
    }
}

impl Group72 {
    /// Each defining relation with whether it holds.
    pub fn relations(&self) -> Vec<(&'static str, bool)> {
        let Group72 {
            g1, g2, g3, h1, h2, ..
        } = self;
        vec![
            ("g1^2 = 1", g1.pow(2).is_identity()),
            ("g2^2 = 1", g2.pow(2).is_identity()),
            ("g3^2 = 1", g3.pow(2).is_identity()),
            ("h1^3 = 1", h1.pow(3).is_identity()),
            ("h2^3 = 1", h2.pow(3).is_identity()),
            ("[g2,g1] = g3", g2.comm(g1) == *g3),
            ("[h1,g1] = h1", h1.comm(g1) == *h1),
            ("[h1,g3] = h1", h1.comm(g3) == *h1),
            ("[h2,g3] = h2", h2.comm(g3) == *h2),
            ("h1^g2 = h2", h1.conj(g2) == *h2),
            ("h2^g2 = h1", h2.conj(g2) == *h1),
        ]
    }

    pub fn named(&self) -> NamedGroup {
        NamedGroup::new("group_72", self.group.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tag {
    Soluble,
    Nilpotent,
    Simple,
    Quasisimple,
    Metanilpotent,
}

/// A catalog group with its declared order and structural tags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub expected_order: u128,
    pub tags: BTreeSet<Tag>,
}

impl CatalogEntry {
    fn new(name: &str, expected_order: u128, tags: &[Tag]) -> CatalogEntry {
        CatalogEntry {
            name: name.to_string(),
            expected_order,
            tags: tags.iter().copied().collect(),
        }
    }

    pub fn make(&self) -> Result<NamedGroup> {
        Ok(NamedGroup::new(self.name.clone(), make(&self.name)?))
    }

    /// Tags recomputed from the group itself.
    pub fn computed_tags(group: &PermGroup) -> Result<BTreeSet<Tag>> {
        let preds = structure::predicates(group)?;
        let mut tags = BTreeSet::new();
        if preds.is_soluble {
            tags.insert(Tag::Soluble);
        }
        if preds.is_nilpotent {
            tags.insert(Tag::Nilpotent);
        }
        if preds.is_metanilpotent {
            tags.insert(Tag::Metanilpotent);
        }
        if structure::is_simple(group)? {
            tags.insert(Tag::Simple);
        }
        if structure::is_quasisimple(group)? {
            tags.insert(Tag::Quasisimple);
        }
        Ok(tags)
    }
}

/// The default sweep catalog. Orders and tags are declared here, not
/// computed, so the catalog tests compare them against the engine.
pub fn default_catalog() -> Vec<CatalogEntry> {
    use Tag::*;
    let mut out = Vec::new();
    let abelian = [Soluble, Nilpotent, Metanilpotent];
    for n in 1..=24usize {
        let mut tags = abelian.to_vec();
        if arith::is_prime(n as u64) {
            tags.push(Simple);
        }
        out.push(CatalogEntry::new(&format!("cyclic({n})"), n as u128, &tags));
    }
    for n in 3..=12usize {
        let tags: &[Tag] = if n.is_power_of_two() {
            &abelian
        } else {
            &[Soluble, Metanilpotent]
        };
        out.push(CatalogEntry::new(&format!("dihedral({n})"), 2 * n as u128, tags));
    }
    out.push(CatalogEntry::new("symmetric(3)", 6, &[Soluble, Metanilpotent]));
    out.push(CatalogEntry::new("symmetric(4)", 24, &[Soluble]));
    out.push(CatalogEntry::new("alternating(4)", 12, &[Soluble, Metanilpotent]));
    out.push(CatalogEntry::new("alternating(5)", 60, &[Simple, Quasisimple]));
    for (p, r) in [(2u64, 1usize), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)] {
        let mut tags = abelian.to_vec();
        if r == 1 {
            tags.push(Simple);
        }
        out.push(CatalogEntry::new(
            &format!("elementary_abelian({p},{r})"),
            (p as u128).pow(r as u32),
            &tags,
        ));
    }
    let meta: &[Tag] = &[Soluble, Metanilpotent];
    for (name, order, tags) in [
        ("direct_product(symmetric(3),cyclic(2))", 12, meta),
        ("direct_product(symmetric(3),cyclic(3))", 18, meta),
        ("direct_product(symmetric(3),symmetric(3))", 36, meta),
        ("direct_product(alternating(4),cyclic(2))", 24, meta),
        ("direct_product(alternating(4),cyclic(3))", 36, meta),
        ("direct_product(dihedral(4),cyclic(3))", 24, &abelian[..]),
        ("direct_product(symmetric(4),cyclic(2))", 48, &[Soluble][..]),
        ("direct_product(sl2(3),cyclic(2))", 48, meta),
        ("direct_product(symmetric(3),dihedral(5))", 60, meta),
        ("direct_product(alternating(4),symmetric(3))", 72, meta),
        ("direct_product(symmetric(4),symmetric(3))", 144, &[Soluble][..]),
        ("affine(5,1,[[2]])", 20, meta),
        ("affine(7,1,[[2]])", 21, meta),
        ("affine(7,1,[[3]])", 42, meta),
        ("affine(3,2,[[0,1],[2,0]])", 36, meta),
        ("group_72", 72, meta),
        ("sl2(3)", 24, meta),
        ("sl2(5)", 120, &[Quasisimple][..]),
    ] {
        out.push(CatalogEntry::new(name, order, tags));
    }
    out
}

/// Builds a group from a constructor expression.
pub fn make(name: &str) -> Result<PermGroup> {
    let mut parser = NameParser {
        src: name.as_bytes(),
        pos: 0,
    };
    let g = parser.group()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(Error::UnknownGroup(name.to_string()));
    }
    Ok(g)
}

/// A catalog name, or a path to a group JSON file.
pub fn resolve(name_or_path: &str) -> Result<NamedGroup> {
    let path = Path::new(name_or_path);
    if name_or_path.ends_with(".json") || path.is_file() {
        return load(path);
    }
    Ok(NamedGroup::new(name_or_path, make(name_or_path)?))
}

struct NameParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl NameParser<'_> {
    fn fail<T>(&self) -> Result<T> {
        Err(Error::UnknownGroup(
            String::from_utf8_lossy(self.src).into_owned(),
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn int(&mut self) -> Result<u64> {
        let s = self.ident();
        s.parse().or_else(|_| self.fail())
    }

    /// A JSON matrix literal such as `[[0,1],[2,0]]`.
    fn matrix(&mut self) -> Result<Matrix> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b'[' => depth += 1,
                b']' => depth -= 1,
                _ => {}
            }
            self.pos += 1;
            if depth == 0 {
                break;
            }
        }
        serde_json::from_slice(&self.src[start..self.pos])
            .map_err(|e| invalid(format!("bad matrix: {e}")))
    }

    fn group(&mut self) -> Result<PermGroup> {
        let name = self.ident();
        let simple = |s: &mut Self| -> Result<u64> {
            if !s.eat(b'(') {
                return s.fail();
            }
            let n = s.int()?;
            if !s.eat(b')') {
                return s.fail();
            }
            Ok(n)
        };
        match name.as_str() {
            "group_72" | "g72" => Ok(group_72().group),
            "cyclic" => cyclic(simple(self)? as usize),
            "dihedral" => dihedral(simple(self)? as usize),
            "symmetric" => symmetric(simple(self)? as usize),
            "alternating" => alternating(simple(self)? as usize),
            "sl2" => sl2(simple(self)?),
            "elementary_abelian" => {
                if !self.eat(b'(') {
                    return self.fail();
                }
                let p = self.int()?;
                if !self.eat(b',') {
                    return self.fail();
                }
                let r = self.int()? as usize;
                if !self.eat(b')') {
                    return self.fail();
                }
                elementary_abelian(p, r)
            }
            "direct_product" => {
                if !self.eat(b'(') {
                    return self.fail();
                }
                let a = self.group()?;
                if !self.eat(b',') {
                    return self.fail();
                }
                let b = self.group()?;
                if !self.eat(b')') {
                    return self.fail();
                }
                direct_product(&a, &b)
            }
            "affine" => {
                if !self.eat(b'(') {
                    return self.fail();
                }
                let p = self.int()?;
                if !self.eat(b',') {
                    return self.fail();
                }
                let r = self.int()? as usize;
                let mut mats = Vec::new();
                while self.eat(b',') {
                    mats.push(self.matrix()?);
                }
                if !self.eat(b')') {
                    return self.fail();
                }
                affine_semidirect(p, r, &mats)
            }
            _ => self.fail(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_constructors() {
        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.is_abelian());
        assert_eq!(dihedral(5).unwrap().order(), 10);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        assert_eq!(dihedral(1).unwrap().order(), 2);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(2).unwrap().order(), 1);
        assert_eq!(elementary_abelian(3, 2).unwrap().order(), 9);
        assert!(cyclic(0).is_err());
        assert!(elementary_abelian(4, 1).is_err());
    }

    #[test]
    fn products_and_affine() {
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.degree(), 5);
        let a = affine_semidirect(3, 2, &[vec![vec![2, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]]).unwrap();
        assert_eq!(a.order(), 72);
        assert_eq!(a.degree(), 9);
        assert!(affine_semidirect(3, 2, &[vec![vec![1, 1], vec![1, 1]]]).is_err());
        assert!(affine_semidirect(3, 2, &[vec![vec![1, 0]]]).is_err());
    }

    #[test]
    fn special_linear() {
        let s3 = sl2(3).unwrap();
        assert_eq!(s3.order(), 24);
        let s5 = sl2(5).unwrap();
        assert_eq!(s5.order(), 120);
        assert_eq!(s5.degree(), 24);
        assert_eq!(structure::center(&s5).unwrap().order(), 2);
        assert!(sl2(7).is_err());
    }

    #[test]
    fn names_resolve() {
        assert_eq!(make("direct_product(symmetric(3), cyclic(2))").unwrap().order(), 12);
        assert_eq!(make("affine(5,1,[[2]])").unwrap().order(), 20);
        assert_eq!(make("g72").unwrap().order(), 72);
        assert!(matches!(make("cyclic(3"), Err(Error::UnknownGroup(_))));
        assert!(matches!(make("klein"), Err(Error::UnknownGroup(_))));
        assert!(make("cyclic(3)x").is_err());
    }

    #[test]
    fn group_72_relations() {
        let g = group_72();
        assert_eq!(g.group.order(), 72);
        for (rel, ok) in g.relations() {
            assert!(ok, "{rel}");
        }
        assert_eq!(g.h2.then(&g.g3).order(), 2);
    }

    #[test]
    fn json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        let s3 = NamedGroup::new("symmetric(3)", symmetric(3).unwrap());
        save(&path, &s3).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back.name, "symmetric(3)");
        assert_eq!(back.group, s3.group);
        assert_eq!(back.group.elements().unwrap(), s3.group.elements().unwrap());
    }

    #[test]
    fn json_rejects_non_bijections() {
        let bad = r#"{"name": "bad", "degree": 3, "generators": [[1, 1, 2]]}"#;
        let json: GroupJson = serde_json::from_str(bad).unwrap();
        assert!(matches!(json.into_group(), Err(Error::InvalidPermutation(_))));
        let short = r#"{"name": "bad", "degree": 3, "generators": [[2, 1]]}"#;
        let json: GroupJson = serde_json::from_str(short).unwrap();
        assert!(matches!(json.into_group(), Err(Error::DegreeMismatch { .. })));
    }
}
