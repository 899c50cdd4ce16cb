//! Splitting conclusions built on top of collapse certificates, and the
//! free-factor multiset invariant for infinite sums.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::collapse::{is_collapsible, replay, CollapseCertificate, SearchBudget, Verdict};
use crate::error::{parse_err, Error, Result};
use crate::simplicial::{is_token, SimplicialComplex};

pub const SPLIT_CONCLUSION: &str = "splits-into-closed-balls";

/// Evidence that a spine `A ∪ B` has `A`, `B` and `A ∩ B` all collapsible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCertificate {
    pub spine: String,
    pub parts: (String, String),
    /// Certificates for `A`, `B`, `A ∩ B`, in that order.
    pub evidence: [CollapseCertificate; 3],
    pub conclusion: &'static str,
}

/// Checks `A ∪ B = spine` and searches collapses of `A`, `B` and `A ∩ B`.
///
/// Every certificate found is replayed before the split is issued.
pub fn verify_spine_split(
    spine: &SimplicialComplex,
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    budget: &SearchBudget,
) -> Result<SplitCertificate> {
    if a.union(b).simplices() != spine.simplices() {
        return Err(Error::SplitRejected(format!(
            "{} and {} do not cover {} exactly",
            a.name(),
            b.name(),
            spine.name()
        )));
    }
    let meet = a.intersection(b);
    let mut certs = Vec::with_capacity(3);
    for k in [a, b, &meet] {
        let outcome = is_collapsible(k, budget);
        let Verdict::Yes(cert) = outcome.verdict else {
            return Err(Error::SplitRejected(format!(
                "{} is not certified collapsible (search verdict: {})",
                k.name(),
                outcome.verdict.label()
            )));
        };
        match replay(k, &cert) {
            Ok(r) if r.collapsed_to_point() => certs.push(cert),
            Ok(_) => {
                return Err(Error::SplitRejected(format!(
                    "certificate for {} does not end at a vertex",
                    k.name()
                )))
            }
            Err(f) => {
                return Err(Error::SplitRejected(format!(
                    "certificate for {} fails to replay: {f}",
                    k.name()
                )))
            }
        }
    }
    let evidence: [CollapseCertificate; 3] = certs.try_into().expect("three certificates");
    Ok(SplitCertificate {
        spine: spine.name().to_owned(),
        parts: (a.name().to_owned(), b.name().to_owned()),
        evidence,
        conclusion: SPLIT_CONCLUSION,
    })
}

/// A multiplicity in ℕ ∪ {ω}. `ω` absorbs under addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u64),
    Omega,
}

impl std::ops::Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        match (self, rhs) {
            (Count::Finite(x), Count::Finite(y)) => Count::Finite(x.saturating_add(y)),
            _ => Count::Omega,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Omega => f.write_str("w"),
        }
    }
}

impl FromStr for Count {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "w" | "ω" | "omega" => Ok(Count::Omega),
            _ => match s.parse::<u64>() {
                Ok(0) => Err("counts must be positive".into()),
                Ok(n) => Ok(Count::Finite(n)),
                Err(_) => Err(format!("bad count {s:?}")),
            },
        }
    }
}

/// Label → positive count. Labels stand for pairwise distinct indecomposable
/// groups; they are compared as tokens only.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorMultiset {
    counts: BTreeMap<String, Count>,
}

impl FactorMultiset {
    pub fn new(counts: impl IntoIterator<Item = (String, Count)>) -> Result<Self> {
        let mut m = Self::default();
        for (label, count) in counts {
            m.add(label, count)?;
        }
        Ok(m)
    }

    fn add(&mut self, label: String, count: Count) -> Result<()> {
        if !is_token(&label) {
            return Err(Error::OutOfRange(format!("bad factor label {label:?}")));
        }
        if count == Count::Finite(0) {
            return Err(Error::OutOfRange(format!("label {label} has count 0")));
        }
        let slot = self.counts.entry(label).or_insert(Count::Finite(0));
        *slot = *slot + count;
        Ok(())
    }

    pub fn counts(&self) -> &BTreeMap<String, Count> {
        &self.counts
    }

    pub fn count(&self, label: &str) -> Option<Count> {
        self.counts.get(label).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Parses `label:count(,label:count)*`, with `w` for ω. Repeated labels
    /// add up. An empty string is the empty multiset.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Self::default();
        let text = text.trim();
        if text.is_empty() {
            return Ok(m);
        }
        for item in text.split(',') {
            let (label, count) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| parse_err(1, format!("expected label:count, got {item:?}")))?;
            let count: Count = count.trim().parse().map_err(|e: String| parse_err(1, e))?;
            m.add(label.trim().to_owned(), count)?;
        }
        Ok(m)
    }
}

impl fmt::Display for FactorMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(l, c)| format!("{l}:{c}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// A finite description of a summand sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumDescription {
    /// `prefix` followed by `period` repeated forever; an empty period is a
    /// finite sum.
    Sequence {
        prefix: Vec<String>,
        period: Vec<String>,
    },
    Counts(FactorMultiset),
}

impl SumDescription {
    pub fn is_finite(&self) -> bool {
        match self {
            SumDescription::Sequence { period, .. } => period.is_empty(),
            SumDescription::Counts(m) => m.counts().values().all(|c| *c != Count::Omega),
        }
    }

    /// Parses either a count map (`J3:5,J7:w`) or a sequence such as
    /// `J3 J3 (J1 J2)*`, whose starred group repeats forever.
    pub fn parse(text: &str) -> Result<Self> {
        if text.contains(':') {
            return FactorMultiset::parse(text).map(SumDescription::Counts);
        }
        let (head, tail) = match text.find('(') {
            Some(i) => {
                let rest = text[i + 1..].trim_end();
                let inner = rest
                    .strip_suffix(")*")
                    .ok_or_else(|| parse_err(1, "periodic part must be written (…)*"))?;
                (&text[..i], Some(inner))
            }
            None => (text, None),
        };
        let tokens = |s: &str| -> Result<Vec<String>> {
            s.split_whitespace()
                .map(|t| {
                    if is_token(t) {
                        Ok(t.to_owned())
                    } else {
                        Err(parse_err(1, format!("bad factor label {t:?}")))
                    }
                })
                .collect()
        };
        let prefix = tokens(head)?;
        let period = match tail {
            Some(inner) => {
                let p = tokens(inner)?;
                if p.is_empty() {
                    return Err(parse_err(1, "empty periodic part"));
                }
                p
            }
            None => Vec::new(),
        };
        Ok(SumDescription::Sequence { prefix, period })
    }
}

/// Label counts of the described sequence.
pub fn multiset_of(s: &SumDescription) -> FactorMultiset {
    match s {
        SumDescription::Counts(m) => m.clone(),
        SumDescription::Sequence { prefix, period } => {
            let mut m = FactorMultiset::default();
            for l in prefix {
                m.add(l.clone(), Count::Finite(1))
                    .expect("labels validated");
            }
            for l in period {
                m.add(l.clone(), Count::Omega).expect("labels validated");
            }
            m
        }
    }
}

/// True iff some label occurs a different number of times. `false` means
/// only that this invariant does not separate the two sums.
pub fn distinguishable(m1: &FactorMultiset, m2: &FactorMultiset) -> bool {
    m1 != m2
}

pub const FAMILY_MAX_K: u32 = 20;

/// Largest `k` checked by literal all-pairs comparison; above it the family is
/// sorted and neighbours compared, which is equivalent since
/// distinguishability is inequality.
const ALL_PAIRS_MAX_K: u32 = 12;

/// The multiset `{Jᵢ: ω for i ∈ subset}` for a bitmask over `J1…Jk`.
pub fn subset_multiset(k: u32, mask: u64) -> FactorMultiset {
    let mut m = FactorMultiset::default();
    for i in 0..k {
        if mask >> i & 1 == 1 {
            m.add(format!("J{}", i + 1), Count::Omega)
                .expect("valid label");
        }
    }
    m
}

/// Builds the `2^k` subset descriptions over `J1…Jk` and returns how many are
/// pairwise distinguishable (`2^k` when the invariant separates all of them).
pub fn family_demo(k: u32) -> Result<u64> {
    if k > FAMILY_MAX_K {
        return Err(Error::OutOfRange(format!(
            "family size k = {k} exceeds {FAMILY_MAX_K}"
        )));
    }
    let mut family: Vec<FactorMultiset> = (0..1u64 << k)
        .map(|mask| subset_multiset(k, mask))
        .collect();
    if k <= ALL_PAIRS_MAX_K {
        // count members separated from every earlier member
        let separated = (0..family.len())
            .filter(|&j| (0..j).all(|i| distinguishable(&family[i], &family[j])))
            .count();
        return Ok(separated as u64);
    }
    family.sort_unstable();
    let repeats = family
        .windows(2)
        .filter(|w| !distinguishable(&w[0], &w[1]))
        .count();
    Ok((family.len() - repeats) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::Simplex;

    fn desc(s: &str) -> FactorMultiset {
        multiset_of(&SumDescription::parse(s).unwrap())
    }

    #[test]
    fn sequence_descriptions() {
        assert_eq!(
            desc("(J1 J2)*"),
            FactorMultiset::parse("J1:w,J2:w").unwrap()
        );
        assert_eq!(desc("(J1)*"), FactorMultiset::parse("J1:w").unwrap());
        assert_eq!(
            desc("J3:5,J7:w"),
            FactorMultiset::parse("J7:w,J3:5").unwrap()
        );
        assert_eq!(
            desc("J2 J1 J2"),
            FactorMultiset::parse("J1:1,J2:2").unwrap()
        );
        assert!(SumDescription::parse("J2 J1").unwrap().is_finite());
        assert!(!SumDescription::parse("J1 (J2)*").unwrap().is_finite());
        assert!(SumDescription::parse("J1 (J2").is_err());
        assert!(SumDescription::parse("()*").is_err());
    }

    #[test]
    fn omega_absorbs() {
        assert_eq!(Count::Finite(3) + Count::Omega, Count::Omega);
        assert_eq!(desc("J1 (J1)*").count("J1"), Some(Count::Omega));
    }

    #[test]
    fn distinguishing_examples() {
        let a = FactorMultiset::parse("J1:w").unwrap();
        let b = FactorMultiset::parse("J1:w,J2:1").unwrap();
        assert!(distinguishable(&a, &b));
        assert!(distinguishable(&b, &a));
        assert!(!distinguishable(&a, &a));
    }

    #[test]
    fn bad_multisets() {
        assert!(FactorMultiset::parse("J1:0").is_err());
        assert!(FactorMultiset::parse("J1").is_err());
        assert!(FactorMultiset::parse("J-1:3").is_err());
        assert!(FactorMultiset::parse("J1:x").is_err());
        assert_eq!(
            FactorMultiset::parse("J1:2,J1:3").unwrap().count("J1"),
            Some(Count::Finite(5))
        );
    }

    #[test]
    fn family_sizes() {
        assert_eq!(family_demo(0).unwrap(), 1);
        assert_eq!(family_demo(1).unwrap(), 2);
        assert_eq!(family_demo(14).unwrap(), 1 << 14);
        assert!(family_demo(21).is_err());
    }

    #[test]
    fn trivial_split() {
        let ab = Simplex::parse("a b").unwrap();
        let spine = SimplicialComplex::build("spine", [ab.clone()]);
        let a = SimplicialComplex::build("A", [ab]);
        let b = SimplicialComplex::build("B", [Simplex::parse("b").unwrap()]);
        let cert = verify_spine_split(&spine, &a, &b, &SearchBudget::default()).unwrap();
        assert_eq!(cert.conclusion, SPLIT_CONCLUSION);
        assert!(verify_spine_split(&spine, &b, &b, &SearchBudget::default()).is_err());
    }
}
