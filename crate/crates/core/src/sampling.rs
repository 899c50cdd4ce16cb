//! Seeded random inputs for the property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::Letter;
use crate::group::{expand_consequence, ConjugateFactor, Presentation, TietzeMove, Word};
use crate::simplicial::{Simplex, SimplicialComplex, Vertex};
use crate::splitting::{Count, FactorMultiset};

/// Cone with apex `z` over a random complex of edges and triangles on at most
/// six vertices. Cones are always collapsible.
pub fn random_cone<R: Rng>(rng: &mut R) -> SimplicialComplex {
    let n = rng.gen_range(2..=6);
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let pieces = rng.gen_range(1..=8);
    let mut maximal = Vec::with_capacity(pieces);
    for _ in 0..pieces {
        let k = rng.gen_range(1..=3usize.min(n));
        let chosen: Vec<&str> = names.choose_multiple(rng, k).map(String::as_str).collect();
        maximal.push(Simplex::from_names(chosen).expect("distinct names"));
    }
    let base = SimplicialComplex::build("base", maximal);
    base.cone(&Vertex::new("z").expect("valid name"))
        .expect("apex is fresh")
}

/// Random word of length `0..=max_len` over `generators`.
pub fn random_word<R: Rng>(rng: &mut R, generators: &[String], max_len: usize) -> Word {
    if generators.is_empty() {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    Word::from_letters(
        (0..len)
            .map(|_| {
                let g = generators.choose(rng).expect("nonempty generators");
                Letter::new(g.clone(), if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect(),
    )
}

/// Random presentation on two or three generators.
pub fn random_presentation<R: Rng>(rng: &mut R) -> Presentation {
    let generators: Vec<String> = ["a", "b", "c"][..rng.gen_range(2..=3)]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let relators = (0..rng.gen_range(1..=3))
        .map(|_| random_word(rng, &generators, 6))
        .collect();
    Presentation::new(generators, relators).expect("letters are declared")
}

fn random_consequence<R: Rng>(
    rng: &mut R,
    p: &Presentation,
    relators: usize,
) -> Vec<ConjugateFactor> {
    (0..rng.gen_range(1..=2))
        .map(|_| {
            ConjugateFactor::new(
                random_word(rng, p.generators(), 3),
                rng.gen_range(0..relators),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
        })
        .collect()
}

/// A Tietze move on `p` that carries a valid certificate. `fresh` numbers new
/// generator names.
pub fn random_certified_move<R: Rng>(rng: &mut R, p: &Presentation, fresh: usize) -> TietzeMove {
    let rels = p.relators();
    // keep presentations small so repeated substitution cannot blow up
    let total: usize = rels.iter().map(Word::len).sum();
    let roomy = total < 60 && rels.len() < 6;
    for attempt in 0.. {
        let forced = attempt > 20;
        match rng.gen_range(0..4) {
            0 if !rels.is_empty() && roomy => {
                let consequence = random_consequence(rng, p, rels.len());
                let word = expand_consequence(rels, &consequence).expect("indices in range");
                return TietzeMove::AddRelator { word, consequence };
            }
            1 => {
                // a relator equal to a product of conjugates of the others
                let candidates: Vec<usize> = (0..rels.len())
                    .filter(|&i| rels.len() > 1 && redundant_certificate(rels, i).is_some())
                    .collect();
                if let Some(&index) = candidates.choose(rng) {
                    let consequence = redundant_certificate(rels, index).expect("filtered");
                    return TietzeMove::RemoveRelator { index, consequence };
                }
            }
            2 if p.generators().len() < 6 || forced => {
                return TietzeMove::AddGenerator {
                    name: format!("g{fresh}"),
                    definition: random_word(rng, p.generators(), 4),
                };
            }
            3 if p.generators().len() > 1 => {
                let options: Vec<(String, usize)> = p
                    .generators()
                    .iter()
                    .flat_map(|g| {
                        rels.iter()
                            .enumerate()
                            .filter(|(_, r)| r.occurrences(g) == 1 && (r.len() <= 7 || forced))
                            .map(move |(i, _)| (g.clone(), i))
                    })
                    .collect();
                if let Some((name, relator)) = options.choose(rng).cloned() {
                    return TietzeMove::RemoveGenerator { name, relator };
                }
            }
            _ => {}
        }
    }
    unreachable!("a generator can always be added")
}

/// Cheap redundancy detector: relator `i` is a cyclic duplicate or inverse
/// of another relator, or trivial.
fn redundant_certificate(rels: &[Word], i: usize) -> Option<Vec<ConjugateFactor>> {
    let target = rels[i].free_reduce();
    if target.is_empty() {
        return Some(Vec::new());
    }
    let rest: Vec<usize> = (0..rels.len()).filter(|&j| j != i).collect();
    for (pos, &j) in rest.iter().enumerate() {
        let r = rels[j].free_reduce();
        for exponent in [1i8, -1] {
            let base = r.pow(i64::from(exponent));
            // conjugating by a prefix realises every cyclic rotation
            for cut in 0..=base.len() {
                let prefix = Word::from_letters(base.letters()[..cut].to_vec());
                let rotated = base.conjugate_by(&prefix.inverse()).free_reduce();
                if rotated == target {
                    return Some(vec![ConjugateFactor::new(prefix.inverse(), pos, exponent)]);
                }
            }
        }
    }
    None
}

/// Random multiset over labels `J1..J6`.
pub fn random_multiset<R: Rng>(rng: &mut R) -> FactorMultiset {
    let mut counts = Vec::new();
    for i in 1..=6 {
        if rng.gen_bool(0.5) {
            let count = if rng.gen_bool(0.3) {
                Count::Omega
            } else {
                Count::Finite(rng.gen_range(1..=5))
            };
            counts.push((format!("J{i}"), count));
        }
    }
    FactorMultiset::new(counts).expect("labels and counts are valid")
}
