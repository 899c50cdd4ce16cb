//! Link diagrams and their Wirtinger presentations.

use std::collections::BTreeMap;

use super::presentation::Presentation;
use super::word::{is_generator_name, Word};
use crate::error::{parse_err, Error, Result};

/// One crossing: `under_in` passes beneath `over` and continues as
/// `under_out`. A positive sign means `under_out = over · under_in · over⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub sign: i8,
}

impl Crossing {
    /// The relator `under_out · (over^s · under_in · over^-s)⁻¹`.
    pub fn relator(&self) -> Word {
        let over = Word::power_of(&self.over, i64::from(self.sign));
        let conj = &(&over * &Word::generator(&self.under_in)) * &over.inverse();
        &Word::generator(&self.under_out) * &conj.inverse()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    arcs: Vec<String>,
    crossings: Vec<Crossing>,
    components: Vec<Vec<String>>,
}

impl LinkDiagram {
    pub fn new(
        arcs: Vec<String>,
        crossings: Vec<Crossing>,
        components: Vec<Vec<String>>,
    ) -> Result<Self> {
        let d = Self {
            arcs,
            crossings,
            components,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn arcs(&self) -> &[String] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<String>] {
        &self.components
    }

    fn component_of(&self, arc: &str) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.iter().any(|a| a == arc))
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedDiagram(m));
        for (i, a) in self.arcs.iter().enumerate() {
            if !is_generator_name(a) {
                return bad(format!("arc name {a:?} is not a generator token"));
            }
            if self.arcs[..i].contains(a) {
                return bad(format!("arc {a} declared twice"));
            }
        }
        let mut seen = 0;
        for comp in &self.components {
            if comp.is_empty() {
                return bad("empty component".into());
            }
            for a in comp {
                if !self.arcs.contains(a) {
                    return bad(format!("component lists unknown arc {a}"));
                }
                seen += 1;
            }
        }
        if seen != self.arcs.len() || self.arcs.iter().any(|a| self.component_of(a).is_none()) {
            return bad("components must partition the arcs".into());
        }
        for c in &self.crossings {
            for a in [&c.over, &c.under_in, &c.under_out] {
                if !self.arcs.contains(a) {
                    return bad(format!("crossing references unknown arc {a}"));
                }
            }
            if c.sign != 1 && c.sign != -1 {
                return bad(format!("crossing sign {} is not ±1", c.sign));
            }
            if self.component_of(&c.under_in) != self.component_of(&c.under_out) {
                return bad(format!(
                    "under arcs {} and {} lie on different components",
                    c.under_in, c.under_out
                ));
            }
        }
        let mut ends: BTreeMap<&str, (usize, usize)> =
            self.arcs.iter().map(|a| (a.as_str(), (0, 0))).collect();
        for c in &self.crossings {
            ends.get_mut(c.under_in.as_str()).unwrap().0 += 1;
            ends.get_mut(c.under_out.as_str()).unwrap().1 += 1;
        }
        for comp in &self.components {
            let crossing_free = comp.iter().all(|a| ends[a.as_str()] == (0, 0));
            if crossing_free {
                // an unknotted component drawn without undercrossings is one arc
                if comp.len() != 1 {
                    return bad("a component without undercrossings must be a single arc".into());
                }
                continue;
            }
            for a in comp {
                if ends[a.as_str()] != (1, 1) {
                    return bad(format!(
                        "arc {a} must end at exactly one undercrossing on each side"
                    ));
                }
            }
        }
        Ok(())
    }

    /// One generator per arc, one relator per crossing.
    pub fn wirtinger(&self) -> Presentation {
        Presentation::new(
            self.arcs.clone(),
            self.crossings.iter().map(Crossing::relator).collect(),
        )
        .expect("validated diagram yields a valid presentation")
    }

    /// Parses the `.lnk` format.
    ///
    /// ```text
    /// arc: x1 x2
    /// x: over=x2 in=x1 out=x2 sign=+
    /// comp: x1 x2
    /// ```
    pub fn parse_lnk(text: &str) -> Result<Self> {
        let mut arcs = Vec::new();
        let mut crossings = Vec::new();
        let mut components = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(i + 1, "expected `arc:`, `x:` or `comp:`"))?;
            match key.trim() {
                "arc" => arcs.extend(rest.split_whitespace().map(str::to_owned)),
                "comp" => components.push(rest.split_whitespace().map(str::to_owned).collect()),
                "x" => crossings.push(parse_crossing(rest).map_err(|m| parse_err(i + 1, m))?),
                other => return Err(parse_err(i + 1, format!("unknown key {other:?}"))),
            }
        }
        Self::new(arcs, crossings, components)
    }

    pub fn to_lnk(&self) -> String {
        let mut out = String::new();
        for a in &self.arcs {
            out.push_str(&format!("arc: {a}\n"));
        }
        for c in &self.crossings {
            let sign = if c.sign > 0 { '+' } else { '-' };
            out.push_str(&format!(
                "x: over={} in={} out={} sign={sign}\n",
                c.over, c.under_in, c.under_out
            ));
        }
        for comp in &self.components {
            out.push_str(&format!("comp: {}\n", comp.join(" ")));
        }
        out
    }
}

fn parse_crossing(fields: &str) -> std::result::Result<Crossing, String> {
    let mut over = None;
    let mut under_in = None;
    let mut under_out = None;
    let mut sign = None;
    for field in fields.split_whitespace() {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| format!("crossing field {field:?} is not key=value"))?;
        match k {
            "over" => over = Some(v.to_owned()),
            "in" => under_in = Some(v.to_owned()),
            "out" => under_out = Some(v.to_owned()),
            "sign" => {
                sign = Some(match v {
                    "+" | "+1" => 1,
                    "-" | "-1" => -1,
                    _ => return Err(format!("bad sign {v:?}")),
                })
            }
            _ => return Err(format!("unknown crossing field {k:?}")),
        }
    }
    Ok(Crossing {
        over: over.ok_or("crossing without over=")?,
        under_in: under_in.ok_or("crossing without in=")?,
        under_out: under_out.ok_or("crossing without out=")?,
        sign: sign.ok_or("crossing without sign=")?,
    })
}
