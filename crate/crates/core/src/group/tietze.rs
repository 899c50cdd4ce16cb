//! Certificate-checked Tietze transformations.
//!
//! The caller supplies every derivation; moves are verified by free reduction
//! and never searched for.

use std::collections::BTreeMap;

use super::presentation::Presentation;
use super::word::{is_generator_name, Word};
use crate::error::{Error, Result};

/// `conjugator · relator[index]^exponent · conjugator⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateFactor {
    pub conjugator: Word,
    pub relator: usize,
    pub exponent: i8,
}

impl ConjugateFactor {
    pub fn new(conjugator: Word, relator: usize, exponent: i8) -> Self {
        Self {
            conjugator,
            relator,
            exponent,
        }
    }
}

/// A product of conjugates of relators.
pub type Consequence = Vec<ConjugateFactor>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TietzeMove {
    /// Append `word`, which must equal the freely reduced `consequence`.
    AddRelator {
        word: Word,
        consequence: Consequence,
    },
    /// Drop relator `index`, which must follow from the remaining relators.
    /// Indices in `consequence` refer to the presentation after removal.
    RemoveRelator {
        index: usize,
        consequence: Consequence,
    },
    /// New generator `name` with relator `name · definition⁻¹`.
    AddGenerator { name: String, definition: Word },
    /// Eliminate `name` using relator `relator`, in which it occurs once; the
    /// solved expression is substituted into every other relator.
    RemoveGenerator { name: String, relator: usize },
}

/// Evaluates a consequence against `relators`, freely reduced.
pub fn expand_consequence(relators: &[Word], consequence: &Consequence) -> Result<Word> {
    let mut product = Word::empty();
    for f in consequence {
        let r = relators.get(f.relator).ok_or_else(|| {
            Error::RejectedMove(format!("certificate cites missing relator {}", f.relator))
        })?;
        if f.exponent != 1 && f.exponent != -1 {
            return Err(Error::RejectedMove(
                "certificate exponent must be ±1".into(),
            ));
        }
        let term = r.pow(i64::from(f.exponent)).conjugate_by(&f.conjugator);
        product = product * term;
    }
    Ok(product.free_reduce())
}

/// Applies `m` if its certificate verifies; the input is never modified.
///
/// The abelianization is recomputed afterwards and must be unchanged.
pub fn apply_tietze(p: &Presentation, m: &TietzeMove) -> Result<Presentation> {
    let next = match m {
        TietzeMove::AddRelator { word, consequence } => {
            p.check_word(word)?;
            let derived = expand_consequence(p.relators(), consequence)?;
            if derived != word.free_reduce() {
                return Err(Error::RejectedMove(format!(
                    "certificate reduces to {derived}, not {}",
                    word.free_reduce()
                )));
            }
            p.with_relator(word.clone())?
        }
        TietzeMove::RemoveRelator { index, consequence } => {
            let target = p
                .relators()
                .get(*index)
                .ok_or_else(|| Error::RejectedMove(format!("no relator {index}")))?;
            let mut rest = p.relators().to_vec();
            rest.remove(*index);
            let derived = expand_consequence(&rest, consequence)?;
            if derived != target.free_reduce() {
                return Err(Error::RejectedMove(format!(
                    "relator {index} is not derived by the certificate"
                )));
            }
            let mut next = p.clone();
            *next.relators_mut() = rest;
            next
        }
        TietzeMove::AddGenerator { name, definition } => {
            if !is_generator_name(name) || p.has_generator(name) {
                return Err(Error::RejectedMove(format!(
                    "cannot add generator {name:?}"
                )));
            }
            p.check_word(definition)?;
            let mut next = p.clone();
            next.push_generator(name.clone());
            next.relators_mut()
                .push(&Word::generator(name) * &definition.inverse());
            next
        }
        TietzeMove::RemoveGenerator { name, relator } => {
            if !p.has_generator(name) {
                return Err(Error::RejectedMove(format!("no generator {name}")));
            }
            let defining = p
                .relators()
                .get(*relator)
                .ok_or_else(|| Error::RejectedMove(format!("no relator {relator}")))?;
            let solved = Presentation::solve_relator(defining, name)?;
            let map = BTreeMap::from([(name.clone(), solved)]);
            let mut next = p.clone();
            let mut rels: Vec<Word> = p.relators().to_vec();
            rels.remove(*relator);
            *next.relators_mut() = rels.iter().map(|r| r.substitute_partial(&map)).collect();
            next.generators_mut().retain(|g| g != name);
            next
        }
    };
    let before = p.abelianization();
    let after = next.abelianization();
    if before != after {
        return Err(Error::RejectedMove(format!(
            "abelianization changed from {before} to {after}"
        )));
    }
    Ok(next)
}
