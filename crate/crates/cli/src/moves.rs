//! Line format for scripted Tietze moves.
//!
//! ```text
//! addgen gamma = a a
//! delgen gamma 1
//! addrel b a a B = b@0
//! delrel 1 = 1@0 1@0^-1
//! ```
//!
//! A certificate factor `u@i^e` stands for `u · r_i^e · u⁻¹`; the conjugator
//! `u` is written with `.` between letters (`a.B`), `1` for the empty word.

use splitcert::group::{ConjugateFactor, TietzeMove, Word};

pub fn parse_moves(text: &str) -> Result<Vec<TietzeMove>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_move(line).map_err(|e| format!("line {}: {e}", i + 1))?);
    }
    Ok(out)
}

fn word(s: &str) -> Result<Word, String> {
    Word::parse(s).map_err(|e| e.to_string())
}

fn index(s: &str) -> Result<usize, String> {
    s.parse().map_err(|_| format!("bad relator index {s:?}"))
}

fn parse_move(line: &str) -> Result<TietzeMove, String> {
    let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let (lhs, rhs) = match rest.split_once('=') {
        Some((l, r)) => (l.trim(), Some(r.trim())),
        None => (rest.trim(), None),
    };
    match head {
        "addgen" => Ok(TietzeMove::AddGenerator {
            name: lhs.to_owned(),
            definition: word(rhs.ok_or("addgen needs `= definition`")?)?,
        }),
        "delgen" => {
            let mut f = lhs.split_whitespace();
            match (f.next(), f.next(), f.next()) {
                (Some(name), Some(i), None) => Ok(TietzeMove::RemoveGenerator {
                    name: name.to_owned(),
                    relator: index(i)?,
                }),
                _ => Err("delgen takes a generator and a relator index".into()),
            }
        }
        "addrel" => Ok(TietzeMove::AddRelator {
            word: word(lhs)?,
            consequence: parse_factors(rhs.ok_or("addrel needs `= certificate`")?)?,
        }),
        "delrel" => Ok(TietzeMove::RemoveRelator {
            index: index(lhs)?,
            consequence: parse_factors(rhs.ok_or("delrel needs `= certificate`")?)?,
        }),
        other => Err(format!("unknown move {other:?}")),
    }
}

fn parse_factors(s: &str) -> Result<Vec<ConjugateFactor>, String> {
    s.split_whitespace()
        .map(|f| {
            let (conj, rest) = f.split_once('@').ok_or(format!("factor {f:?} lacks @"))?;
            let (i, exp) = match rest.split_once('^') {
                Some((i, e)) => (
                    i,
                    e.parse::<i8>()
                        .map_err(|_| format!("bad exponent in {f:?}"))?,
                ),
                None => (rest, 1),
            };
            Ok(ConjugateFactor::new(
                word(&conj.replace('.', " "))?,
                index(i)?,
                exp,
            ))
        })
        .collect()
}
