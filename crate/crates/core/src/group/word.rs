use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::simplicial::is_token;

/// A generator raised to +1 or -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: String,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: impl Into<String>, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Self {
            generator: generator.into(),
            exponent,
        }
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.generator.clone(), -self.exponent)
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.generator == other.generator && self.exponent == -other.exponent
    }
}

/// Generator names are tokens starting with a lowercase letter; the
/// capitalized token denotes the inverse letter.
pub fn is_generator_name(name: &str) -> bool {
    is_token(name) && name.starts_with(|c: char| c.is_ascii_lowercase())
}

/// A word in generators and their inverses. Not reduced unless produced by a
/// reducing operation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn generator(name: &str) -> Self {
        Self(vec![Letter::new(name, 1)])
    }

    /// `name^power` for any integer power.
    pub fn power_of(name: &str, power: i64) -> Self {
        let exponent = if power < 0 { -1 } else { 1 };
        Self(vec![
            Letter::new(name, exponent);
            power.unsigned_abs() as usize
        ])
    }

    /// Parses whitespace separated letters: `x1` is a generator, `X1` its
    /// inverse. A trailing `^n` repeats the letter (`b^-2` is `B B`). `1`
    /// or `e` alone is the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (base, power) = match tok.split_once('^') {
                Some((b, p)) => (
                    b,
                    p.parse::<i64>()
                        .map_err(|_| Error::InvalidGenerator(tok.to_owned()))?,
                ),
                None => (tok, 1),
            };
            let (name, sign) = if is_generator_name(base) {
                (base.to_owned(), 1)
            } else {
                let mut chars = base.chars();
                let first = chars
                    .next()
                    .ok_or_else(|| Error::InvalidGenerator(tok.into()))?;
                let lowered = format!("{}{}", first.to_ascii_lowercase(), chars.as_str());
                if !first.is_ascii_uppercase() || !is_generator_name(&lowered) {
                    return Err(Error::InvalidGenerator(tok.to_owned()));
                }
                (lowered, -1)
            };
            letters.extend(Word::power_of(&name, sign * power).0);
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            out.extend(base.0.iter().cloned());
        }
        Word(out)
    }

    /// `c · self · c⁻¹`, unreduced.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        &(c * self) * &c.inverse()
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if stack.last().is_some_and(|top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l.clone());
            }
        }
        Word(stack)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Homomorphic image under `map`, freely reduced.
    pub fn substitute(&self, map: &BTreeMap<String, Word>) -> Result<Word> {
        let mut out = Vec::new();
        for l in &self.0 {
            let image = map
                .get(&l.generator)
                .ok_or_else(|| Error::UnmappedGenerator(l.generator.clone()))?;
            if l.exponent > 0 {
                out.extend(image.0.iter().cloned());
            } else {
                out.extend(image.inverse().0);
            }
        }
        Ok(Word(out).free_reduce())
    }

    /// Like [`Word::substitute`] but generators missing from `map` map to
    /// themselves.
    pub fn substitute_partial(&self, map: &BTreeMap<String, Word>) -> Word {
        let mut out = Vec::new();
        for l in &self.0 {
            match map.get(&l.generator) {
                Some(image) if l.exponent > 0 => out.extend(image.0.iter().cloned()),
                Some(image) => out.extend(image.inverse().0),
                None => out.push(l.clone()),
            }
        }
        Word(out).free_reduce()
    }

    /// Replaces every occurrence of the reduced subword `from` in the reduced
    /// form of `self` by `to`, scanning left to right, then reduces.
    pub fn replace_subword(&self, from: &Word, to: &Word) -> Word {
        let word = self.free_reduce();
        let pattern = from.free_reduce();
        if pattern.is_empty() {
            return word;
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < word.0.len() {
            if word.0[i..].starts_with(&pattern.0) {
                out.extend(to.0.iter().cloned());
                i += pattern.0.len();
            } else {
                out.push(word.0[i].clone());
                i += 1;
            }
        }
        Word(out).free_reduce()
    }

    /// Exponent sum of `generator`.
    pub fn exponent_sum(&self, generator: &str) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| i64::from(l.exponent))
            .sum()
    }

    pub fn occurrences(&self, generator: &str) -> usize {
        self.0.iter().filter(|l| l.generator == generator).count()
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|l| l.generator.as_str())
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(rhs.0.iter().cloned());
        Word(letters)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(mut self, rhs: Word) -> Word {
        self.0.extend(rhs.0);
        self
    }
}

impl fmt::Display for Word {
    /// Inverse letters are capitalized; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exponent > 0 {
                f.write_str(&l.generator)?;
            } else {
                let mut chars = l.generator.chars();
                if let Some(c) = chars.next() {
                    write!(f, "{}{}", c.to_ascii_uppercase(), chars.as_str())?;
                }
            }
        }
        Ok(())
    }
}
