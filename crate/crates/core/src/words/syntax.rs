use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// A free-group word as a syntax tree. Inverses are powers with exponent -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    /// `x_i`, `i ≥ 1`.
    Var(u32),
    /// Juxtaposition of two or more factors.
    Product(Vec<Word>),
    Power(Box<Word>, i64),
    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    Bracket(Box<Word>, Box<Word>),
}

impl Word {
    pub fn var(i: u32) -> Word {
        Word::Var(i)
    }

    pub fn bracket(u: Word, v: Word) -> Word {
        Word::Bracket(Box::new(u), Box::new(v))
    }

    pub fn power(u: Word, n: i64) -> Word {
        Word::Power(Box::new(u), n)
    }

    pub fn inverse(u: Word) -> Word {
        Word::power(u, -1)
    }

    /// `γ_1 = x_1`, `γ_k = [γ_{k-1}, x_k]`.
    pub fn gamma(k: u32) -> Word {
        let k = k.max(1);
        (2..=k).fold(Word::Var(1), |acc, i| Word::bracket(acc, Word::Var(i)))
    }

    /// `δ_0 = x_1`, `δ_k = [δ_{k-1}(x_1..x_{2^{k-1}}), δ_{k-1}(x_{2^{k-1}+1}..x_{2^k})]`.
    pub fn delta(k: u32) -> Word {
        fn build(k: u32, offset: u32) -> Word {
            if k == 0 {
                return Word::Var(offset + 1);
            }
            let half = 1 << (k - 1);
            Word::bracket(build(k - 1, offset), build(k - 1, offset + half))
        }
        build(k, 0)
    }

    /// `x_1^n`.
    pub fn power_word(n: i64) -> Word {
        Word::power(Word::Var(1), n)
    }

    /// Highest variable index used.
    pub fn arity(&self) -> usize {
        match self {
            Word::Var(i) => *i as usize,
            Word::Product(items) => items.iter().map(Word::arity).max().unwrap_or(0),
            Word::Power(u, _) => u.arity(),
            Word::Bracket(u, v) => u.arity().max(v.arity()),
        }
    }

    /// Sorted distinct variable indices occurring in the word.
    pub fn variables(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            Word::Var(i) => out.push(*i),
            Word::Product(items) => items.iter().for_each(|w| w.collect_vars(out)),
            Word::Power(u, _) => u.collect_vars(out),
            Word::Bracket(u, v) => {
                u.collect_vars(out);
                v.collect_vars(out);
            }
        }
    }

    /// Exponent sum of each variable.
    pub fn exponent_sums(&self) -> BTreeMap<u32, i64> {
        let mut sums = BTreeMap::new();
        self.add_sums(1, &mut sums);
        sums
    }

    fn add_sums(&self, scale: i64, sums: &mut BTreeMap<u32, i64>) {
        match self {
            Word::Var(i) => *sums.entry(*i).or_insert(0) += scale,
            Word::Product(items) => items.iter().for_each(|w| w.add_sums(scale, sums)),
            Word::Power(u, n) => u.add_sums(scale * n, sums),
            // u⁻¹v⁻¹uv: each side cancels itself
            Word::Bracket(u, v) => {
                u.add_sums(0, sums);
                v.add_sums(0, sums);
            }
        }
    }

    /// Syntactic test: every variable has exponent sum zero.
    pub fn is_commutator_word(&self) -> bool {
        self.exponent_sums().values().all(|&s| s == 0)
    }

    /// Substitutes `args[i-1]` for `x_i`.
    pub fn evaluate(&self, args: &[Perm]) -> Result<Perm> {
        let needed = self.arity();
        if args.len() < needed {
            return Err(Error::TooFewArguments {
                needed,
                got: args.len(),
            });
        }
        let degree = args[0].degree();
        if let Some(bad) = args.iter().find(|a| a.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        Ok(self.eval_unchecked(args))
    }

    pub(crate) fn eval_unchecked(&self, args: &[Perm]) -> Perm {
        match self {
            Word::Var(i) => args[*i as usize - 1].clone(),
            Word::Product(items) => {
                let mut it = items.iter();
                let first = it.next().expect("product has factors").eval_unchecked(args);
                it.fold(first, |acc, w| acc.then(&w.eval_unchecked(args)))
            }
            Word::Power(u, n) => u.eval_unchecked(args).pow(*n),
            Word::Bracket(u, v) => u.eval_unchecked(args).comm(&v.eval_unchecked(args)),
        }
    }

    /// `gamma:k`, `delta:k` or `pow:n` when the word has exactly that shape,
    /// otherwise the canonical text.
    pub fn descriptor(&self) -> String {
        if let Word::Power(base, n) = self {
            if **base == Word::Var(1) {
                return format!("pow:{n}");
            }
        }
        if let Some(k) = self.gamma_length() {
            if k >= 2 {
                return format!("gamma:{k}");
            }
        }
        if let Some(k) = self.delta_depth() {
            if k >= 2 {
                return format!("delta:{k}");
            }
        }
        self.to_string()
    }

    /// `Some(k)` when the word is exactly `γ_k`.
    pub fn gamma_length(&self) -> Option<u32> {
        match self {
            Word::Var(1) => Some(1),
            Word::Bracket(u, v) => {
                let k = u.gamma_length()?;
                (**v == Word::Var(k + 1)).then_some(k + 1)
            }
            _ => None,
        }
    }

    /// `Some(k)` when the word is exactly `δ_k`.
    pub fn delta_depth(&self) -> Option<u32> {
        let arity = self.arity();
        if !arity.is_power_of_two() {
            return None;
        }
        let k = arity.trailing_zeros();
        (*self == Word::delta(k)).then_some(k)
    }

    /// True when the word is a variable or a bracket of multilinear words
    /// on disjoint variable sets.
    pub fn is_multilinear(&self) -> bool {
        match self {
            Word::Var(_) => true,
            Word::Bracket(u, v) => {
                u.is_multilinear() && v.is_multilinear() && disjoint(&u.variables(), &v.variables())
            }
            _ => false,
        }
    }
}

pub(crate) fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_err())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Var(i) => write!(f, "x{i}"),
            Word::Product(items) => {
                for w in items {
                    match w {
                        Word::Product(_) => write!(f, "({w})")?,
                        _ => write!(f, "{w}")?,
                    }
                }
                Ok(())
            }
            Word::Power(u, n) => match **u {
                Word::Var(_) | Word::Bracket(..) => write!(f, "{u}^{n}"),
                _ => write!(f, "({u})^{n}"),
            },
            Word::Bracket(u, v) => {
                // left-nested brackets print flat: [[a,b],c] -> [a,b,c]
                let mut args = vec![&**v];
                let mut head = &**u;
                while let Word::Bracket(a, b) = head {
                    args.push(b);
                    head = a;
                }
                args.push(head);
                args.reverse();
                f.write_str("[")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Recursive-descent parser for
///
/// ```text
/// word := term+
/// term := atom ('^' int)?
/// atom := 'x' int | '[' word (',' word)+ ']' | '(' word ')'
/// ```
///
/// Multi-argument brackets nest to the left. Whitespace between tokens is
/// ignored.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn word(&mut self) -> Result<Word> {
        let mut terms = vec![self.term()?];
        while matches!(self.peek(), Some(b'x') | Some(b'[') | Some(b'(')) {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Word::Product(terms)
        })
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.int()?;
            return Ok(Word::power(atom, n));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return self.err("expected a variable index after 'x'");
                }
                let i = self.int()?;
                if i == 0 {
                    self.pos = at;
                    return self.err("variable index must be at least 1");
                }
                let i = u32::try_from(i).or_else(|_| self.err("variable index out of range"))?;
                Ok(Word::Var(i))
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.word()?;
                let mut n = 1;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    acc = Word::bracket(acc, self.word()?);
                    n += 1;
                }
                if n < 2 {
                    return self.err("a bracket needs at least two entries");
                }
                self.expect(b']')?;
                Ok(acc)
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses the word grammar, or one of the shortcuts `gamma:k`, `delta:k`,
/// `pow:n`.
pub fn parse_word(text: &str) -> Result<Word> {
    let trimmed = text.trim();
    if let Some((name, arg)) = trimmed.split_once(':') {
        let n: i64 = arg.trim().parse().map_err(|_| Error::Parse {
            pos: name.len() + 1,
            msg: format!("bad shortcut argument {arg:?}"),
        })?;
        let nonneg = || {
            u32::try_from(n).map_err(|_| Error::Parse {
                pos: name.len() + 1,
                msg: format!("shortcut argument must be non-negative, got {n}"),
            })
        };
        return match name.trim() {
            "gamma" if n >= 1 => Ok(Word::gamma(nonneg()?)),
            "gamma" => Err(Error::Parse {
                pos: name.len() + 1,
                msg: "gamma:k needs k >= 1".into(),
            }),
            "delta" => Ok(Word::delta(nonneg()?)),
            "pow" => Ok(Word::power_word(n)),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown shortcut {other:?}"),
            }),
        };
    }
    let mut parser = Parser {
        src: trimmed.as_bytes(),
        pos: 0,
    };
    let w = parser.word()?;
    if parser.peek().is_some() {
        return parser.err("trailing input");
    }
    Ok(w)
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.descriptor())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Word, D::Error> {
        let text = String::deserialize(d)?;
        parse_word(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_brackets() {
        let w = parse_word("[x1,x2]").unwrap();
        assert_eq!(w, Word::bracket(Word::Var(1), Word::Var(2)));
        assert_eq!(w.arity(), 2);
        assert_eq!(parse_word("[x1,x2,x3]").unwrap(), Word::gamma(3));
        assert_eq!(parse_word("[[x1, x2], [x3, x4]]").unwrap(), Word::delta(2));
    }

    #[test]
    fn parses_powers_and_products() {
        let w = parse_word("x1^15").unwrap();
        assert_eq!(w, Word::power_word(15));
        assert_eq!(w.arity(), 1);
        assert_eq!(
            parse_word("x1 x2^-1").unwrap(),
            Word::Product(vec![Word::Var(1), Word::inverse(Word::Var(2))])
        );
        assert_eq!(
            parse_word("(x1x2)^2").unwrap(),
            Word::power(Word::Product(vec![Word::Var(1), Word::Var(2)]), 2)
        );
    }

    #[test]
    fn shortcuts() {
        assert_eq!(parse_word("gamma:3").unwrap(), Word::gamma(3));
        assert_eq!(parse_word("delta:2").unwrap(), Word::delta(2));
        assert_eq!(parse_word("pow:15").unwrap(), Word::power_word(15));
        assert!(parse_word("gamma:0").is_err());
        assert!(parse_word("nope:2").is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_word("[x1,x0]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_word("[x1]"), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("x1)"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_word("y1"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_word(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn arities() {
        assert_eq!(Word::gamma(4).arity(), 4);
        assert_eq!(Word::delta(3).arity(), 8);
        assert_eq!(Word::delta(0), Word::Var(1));
        assert_eq!(Word::gamma(2), Word::delta(1));
    }

    #[test]
    fn descriptors() {
        assert_eq!(Word::gamma(3).descriptor(), "gamma:3");
        assert_eq!(Word::delta(2).descriptor(), "delta:2");
        assert_eq!(Word::power_word(15).descriptor(), "pow:15");
        assert_eq!(Word::Var(1).descriptor(), "x1");
        assert_eq!(parse_word("[x1,x2,x2]").unwrap().descriptor(), "[x1,x2,x2]");
    }

    #[test]
    fn commutator_word_check() {
        assert!(Word::delta(2).is_commutator_word());
        assert!(parse_word("x1 x2 x1^-1 x2^-1").unwrap().is_commutator_word());
        assert!(!Word::power_word(3).is_commutator_word());
        assert!(parse_word("[x1,x2]^3").unwrap().is_commutator_word());
    }

    #[test]
    fn multilinear_shape() {
        assert!(Word::gamma(3).is_multilinear());
        assert!(Word::delta(2).is_multilinear());
        assert!(parse_word("[[x1,x2],[x3,x4,x5],x6]").unwrap().is_multilinear());
        assert!(!parse_word("[x1,x2,x2]").unwrap().is_multilinear());
    }

    #[test]
    fn evaluation() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(1 3)", 3).unwrap();
        let g2 = Word::gamma(2);
        assert!(g2.evaluate(&[a.clone(), a.clone()]).unwrap().is_identity());
        assert_eq!(
            g2.evaluate(&[a.clone(), b.clone()]).unwrap(),
            Perm::parse_cycles("(1 3 2)", 3).unwrap()
        );
        let c5 = Perm::parse_cycles("(1 2 3 4 5)", 5).unwrap();
        assert!(Word::power_word(15).evaluate(&[c5]).unwrap().is_identity());
        assert!(matches!(
            g2.evaluate(std::slice::from_ref(&a)),
            Err(Error::TooFewArguments { needed: 2, got: 1 })
        ));
        assert!(matches!(
            g2.evaluate(&[a, Perm::identity(4)]),
            Err(Error::DegreeMismatch { .. })
        ));
    }
}
