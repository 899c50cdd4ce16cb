use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::smith::AbelianInvariants;
use super::word::{is_generator_name, Word};
use crate::error::{parse_err, Error, Result};

/// A finite presentation `⟨generators | relators⟩`. Relators are words equal
/// to the identity; an equation `u = v` is stored as `u·v⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !is_generator_name(g) || generators[..i].contains(g) {
                return Err(Error::InvalidGenerator(g.clone()));
            }
        }
        let p = Self {
            generators,
            relators,
        };
        for r in &p.relators {
            p.check_word(r)?;
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn has_generator(&self, g: &str) -> bool {
        self.generators.iter().any(|x| x == g)
    }

    /// Errors if `w` uses an undeclared generator.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.generators().find(|g| !self.has_generator(g)) {
            Some(g) => Err(Error::UnmappedGenerator(g.to_owned())),
            None => Ok(()),
        }
    }

    /// Adds a relator without any derivation: the result presents a quotient
    /// of the original group. Used for surgery and handle relators, which are
    /// not consequences of the existing ones.
    pub fn with_relator(&self, relator: Word) -> Result<Self> {
        self.check_word(&relator)?;
        let mut next = self.clone();
        next.relators.push(relator);
        Ok(next)
    }

    pub(crate) fn push_generator(&mut self, g: String) {
        self.generators.push(g);
    }

    pub(crate) fn relators_mut(&mut self) -> &mut Vec<Word> {
        &mut self.relators
    }

    pub(crate) fn generators_mut(&mut self) -> &mut Vec<String> {
        &mut self.generators
    }

    /// Relator exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<BigInt>> {
        self.relators
            .iter()
            .map(|r| {
                self.generators
                    .iter()
                    .map(|g| BigInt::from(r.exponent_sum(g)))
                    .collect()
            })
            .collect()
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        AbelianInvariants::from_relation_matrix(&self.exponent_matrix(), self.generators.len())
    }

    /// Solves a relator in which `g` occurs exactly once for `g` in terms of
    /// the other letters.
    pub fn solve_relator(relator: &Word, g: &str) -> Result<Word> {
        if relator.occurrences(g) != 1 {
            return Err(Error::RejectedMove(format!(
                "generator {g} must occur exactly once in {relator}"
            )));
        }
        let letters = relator.letters();
        let pos = letters.iter().position(|l| l.generator == g).unwrap();
        let before = Word::from_letters(letters[..pos].to_vec());
        let after = Word::from_letters(letters[pos + 1..].to_vec());
        // before · g^e · after = 1  ⇒  g^e = before⁻¹ · after⁻¹
        let rhs = &before.inverse() * &after.inverse();
        let solved = if letters[pos].exponent > 0 {
            rhs
        } else {
            rhs.inverse()
        };
        Ok(solved.free_reduce())
    }

    /// Parses the `.fp` format: `gens: a b c` and `rel: a b A c` lines.
    pub fn parse_fp(text: &str) -> Result<Self> {
        let mut generators = Vec::new();
        let mut relators = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(i + 1, "expected `gens:` or `rel:`"))?;
            match key.trim() {
                "gens" => generators.extend(rest.split_whitespace().map(str::to_owned)),
                "rel" => {
                    relators.push(Word::parse(rest).map_err(|e| parse_err(i + 1, e.to_string()))?)
                }
                other => return Err(parse_err(i + 1, format!("unknown key {other:?}"))),
            }
        }
        Self::new(generators, relators)
    }

    pub fn to_fp(&self) -> String {
        let mut out = format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relators {
            out.push_str(&format!("rel: {r}\n"));
        }
        out
    }

    /// Maps every relator through `map` (generators absent from the map are
    /// kept), e.g. to rewrite a presentation in new coordinates.
    pub fn rewrite(&self, map: &BTreeMap<String, Word>) -> Vec<Word> {
        self.relators
            .iter()
            .map(|r| r.substitute_partial(map))
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(Word::to_string).collect();
        write!(
            f,
            "< {} | {} >",
            self.generators.join(", "),
            rels.join(", ")
        )
    }
}
