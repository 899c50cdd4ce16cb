//! The aggregated verification report behind `verify-all`.

use std::f64::consts::PI;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::assets::AssetSource;
use crate::collapse::{free_faces, is_collapsible, replay, SearchBudget, Verdict};
use crate::error::Result;
use crate::group::{apply_tietze, Presentation, Word};
use crate::hyperbolic::{rotation, DEFAULT_TOL};
use crate::mazur;
use crate::sampling;
use crate::simplicial::SimplicialComplex;
use crate::splitting::{distinguishable, family_demo, verify_spine_split};

pub const RANDOM_CONES: usize = 1000;
pub const RANDOM_TIETZE_MOVES: usize = 500;
pub const RANDOM_MULTISETS: usize = 1000;
const SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, id: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_owned(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        });
    }

    fn push_result(&mut self, id: &str, r: Result<(bool, String)>) {
        match r {
            Ok((ok, detail)) => self.push(id, ok, detail),
            Err(e) => self.push(id, false, e.to_string()),
        }
    }

    /// PASS iff no check failed.
    pub fn overall(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Checks whose id starts with `prefix` all passed (and there is one).
    pub fn group_passed(&self, prefix: &str) -> bool {
        let mut group = self
            .checks
            .iter()
            .filter(|c| c.id.starts_with(prefix))
            .peekable();
        group.peek().is_some() && group.all(|c| c.status != Status::Fail)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "[{}] {} {}", c.status, c.id, c.detail)?;
        }
        writeln!(f, "OVERALL: {}", self.overall())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    pub budget: SearchBudget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            budget: SearchBudget::default(),
        }
    }
}

/// Runs every check. Each check loads its own assets, so a missing or
/// corrupted file fails only the checks that read it.
pub fn verify_all(src: &AssetSource, opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::default();
    dunce_checks(&mut report, src, opts);
    jester_checks(&mut report, src, opts);
    search_checks(&mut report, src, opts);
    wirtinger_checks(&mut report, src);
    triangle_checks(&mut report, opts);
    abelian_checks(&mut report);
    csi_checks(&mut report);
    report
}

fn dunce_checks(report: &mut VerificationReport, src: &AssetSource, opts: &VerifyOptions) {
    let dunce = src.complex("dunce_hat.scx");
    report.push_result(
        "dunce.free_faces",
        dunce.as_ref().map_err(Clone::clone).map(|k| {
            let n = free_faces(k).len();
            (n == 0, format!("free faces = {n}"))
        }),
    );
    report.push_result(
        "dunce.not_collapsible",
        dunce.as_ref().map_err(Clone::clone).map(|k| {
            let out = is_collapsible(k, &opts.budget);
            (
                out.verdict == Verdict::No,
                format!(
                    "collapsible = {} ({} nodes)",
                    out.verdict.label(),
                    out.nodes
                ),
            )
        }),
    );
    report.push_result(
        "dunce.euler",
        dunce.as_ref().map_err(Clone::clone).map(|k| {
            let chi = k.euler_characteristic();
            (chi == 1, format!("chi = {chi}"))
        }),
    );
}

fn replay_check(src: &AssetSource, complex: &str, cert: &str) -> Result<(bool, String)> {
    let k = src.complex(complex)?;
    let c = src.certificate(cert)?;
    Ok(match replay(&k, &c) {
        Ok(r) => {
            let euler_kept = r.trace.iter().all(|s| s.euler == k.euler_characteristic());
            let end: Vec<String> = r
                .final_complex
                .simplices()
                .iter()
                .map(|s| s.to_string())
                .collect();
            (
                r.collapsed_to_point() && euler_kept,
                format!("{} steps, ends at {{{}}}", c.len(), end.join(", ")),
            )
        }
        Err(f) => (false, format!("replay failed at {f}")),
    })
}

fn jester_checks(report: &mut VerificationReport, src: &AssetSource, opts: &VerifyOptions) {
    let j = src.complex("jester_hat.scx");
    report.push_result(
        "jester.no_free_faces",
        j.as_ref().map_err(Clone::clone).map(|k| {
            let n = free_faces(k).len();
            (
                n == 0 && k.euler_characteristic() == 1,
                format!("free faces = {n}, chi = {}", k.euler_characteristic()),
            )
        }),
    );
    let parts = || -> Result<(SimplicialComplex, SimplicialComplex, SimplicialComplex)> {
        Ok((
            src.complex("jester_A.scx")?,
            src.complex("jester_B.scx")?,
            src.complex("jester_C.scx")?,
        ))
    };
    report.push_result(
        "jester.union",
        j.as_ref().map_err(Clone::clone).and_then(|k| {
            let (a, b, _) = parts()?;
            Ok((
                a.union(&b).simplices() == k.simplices(),
                "A + B = J".to_owned(),
            ))
        }),
    );
    report.push_result(
        "jester.intersection",
        parts().map(|(a, b, c)| {
            (
                a.intersection(&b).simplices() == c.simplices(),
                "A ^ B = C".to_owned(),
            )
        }),
    );
    for (id, complex, cert) in [
        ("jester.cert_C", "jester_C.scx", "jester_C.cert"),
        ("jester.cert_A", "jester_A.scx", "jester_A.cert"),
        ("jester.cert_B", "jester_B.scx", "jester_B.cert"),
        ("jester.cert_hat", "jester_hat.scx", "jester_C.cert"),
    ] {
        let mut result = replay_check(src, complex, cert);
        if id == "jester.cert_hat" {
            // the disk certificate must not apply inside J
            result = result.map(|(ok, detail)| (!ok, format!("C certificate inside J: {detail}")));
        }
        report.push_result(id, result);
    }
    report.push_result(
        "jester.split",
        j.as_ref().map_err(Clone::clone).and_then(|k| {
            let (a, b, _) = parts()?;
            Ok(match verify_spine_split(k, &a, &b, &opts.budget) {
                Ok(cert) => (
                    true,
                    format!(
                        "{} = {} + {}: {} (evidence {}/{}/{} steps)",
                        cert.spine,
                        cert.parts.0,
                        cert.parts.1,
                        cert.conclusion,
                        cert.evidence[0].len(),
                        cert.evidence[1].len(),
                        cert.evidence[2].len()
                    ),
                ),
                Err(e) => (false, e.to_string()),
            })
        }),
    );
}

fn search_checks(report: &mut VerificationReport, src: &AssetSource, opts: &VerifyOptions) {
    for (id, file) in [
        ("search.A", "jester_A.scx"),
        ("search.B", "jester_B.scx"),
        ("search.C", "jester_C.scx"),
    ] {
        report.push_result(
            id,
            src.complex(file).map(|k| {
                let out = is_collapsible(&k, &opts.budget);
                match &out.verdict {
                    Verdict::Yes(cert) => {
                        let replays = replay(&k, cert)
                            .map(|r| r.collapsed_to_point())
                            .unwrap_or(false);
                        (
                            replays,
                            format!(
                                "yes in {} nodes, {} steps, replay ok = {replays}",
                                out.nodes,
                                cert.len()
                            ),
                        )
                    }
                    v => (false, format!("{} after {} nodes", v.label(), out.nodes)),
                }
            }),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    let mut steps = 0;
    for _ in 0..RANDOM_CONES {
        let k = sampling::random_cone(&mut rng);
        let chi = k.euler_characteristic();
        let ok = match is_collapsible(&k, &opts.budget).verdict {
            Verdict::Yes(cert) => match replay(&k, &cert) {
                Ok(r) => {
                    steps += r.trace.len();
                    r.collapsed_to_point() && r.trace.iter().all(|s| s.euler == chi)
                }
                Err(_) => false,
            },
            _ => false,
        };
        failures += usize::from(!ok);
    }
    report.push(
        "search.random_cones",
        failures == 0,
        format!("{RANDOM_CONES} cones, {steps} collapse steps, chi kept at every step, {failures} failures"),
    );
}

fn wirtinger_checks(report: &mut VerificationReport, src: &AssetSource) {
    let derivation = src.link("mazur_link.lnk").and_then(|d| mazur::derive(&d));
    let with = |f: &dyn Fn(&mazur::MazurDerivation) -> (bool, String)| {
        derivation.as_ref().map_err(Clone::clone).map(f)
    };
    report.push_result(
        "wirtinger.counts",
        with(&|d| {
            let (g, r) = (
                d.link_group.generators().len(),
                d.link_group.relators().len(),
            );
            (g == 9 && r == 9, format!("{g} generators, {r} relators"))
        }),
    );
    report.push_result(
        "wirtinger.abelianization",
        with(&|d| {
            let ab = d.link_group.abelianization();
            (
                ab.free_rank == 2 && ab.torsion.is_empty(),
                format!("H1 = {ab}"),
            )
        }),
    );
    report.push_result(
        "wirtinger.x1_crossing",
        with(&|d| {
            let ok = d.x1_raw == Word::parse("X7 x2 x7").expect("static");
            (ok, format!("x1 = {}", d.x1_raw))
        }),
    );
    report.push_result(
        "wirtinger.surgery",
        with(&|d| {
            let ab = d.surgered.abelianization();
            let ext = d.extended.abelianization();
            (
                ab.is_trivial() && ext.is_trivial(),
                format!("H1 after surgery = {ab}"),
            )
        }),
    );
    report.push_result(
        "wirtinger.x1",
        with(&|d| (d.x1_matches(), format!("x1 = {}", d.x1))),
    );
    report.push_result(
        "wirtinger.x5",
        with(&|d| (d.x5_matches(), format!("x5 = {}", d.x5))),
    );
}

fn triangle_checks(report: &mut VerificationReport, opts: &VerifyOptions) {
    let tol = opts.tol;
    let (t, rep) = mazur::triangle_representation(tol);
    let group = mazur::triangle_group();
    report.push_result(
        "triangle.relators",
        rep.certify_relators(&group).map(|r| {
            (
                r.passed(),
                format!("max residual {:.1e} < {tol:e}", r.max_residual.max(1e-300)),
            )
        }),
    );
    let powers = |g: &str, n: i64| -> Result<(bool, String)> {
        let mut min: f64 = f64::INFINITY;
        for k in 1..n {
            min = min.min(rep.evaluate(&Word::power_of(g, k))?.probe_displacement());
        }
        Ok((
            min > 10.0 * tol,
            format!(
                "{g}^1..{g}^{} non-identity, min displacement {min:.6}",
                n - 1
            ),
        ))
    };
    report.push_result("triangle.beta_powers", powers("beta", 5));
    report.push_result("triangle.gamma_powers", powers("gamma", 7));
    report.push_result(
        "triangle.beta_gamma",
        rep.evaluate(&Word::parse("beta gamma").expect("static"))
            .map(|m| {
                (
                    m.approx_eq(&rotation(t.b, -PI, tol)),
                    "h(beta gamma) = half-turn about B".to_owned(),
                )
            }),
    );
    report.push_result(
        "triangle.meridian",
        rep.certify_nontrivial(&mazur::expected_x5(), t.a).map(|r| {
            (
                r.passed() && r.displacement > 1e-3,
                format!("h(beta^-2 gamma) moves A by {:.12}", r.displacement),
            )
        }),
    );
    let measured: f64 = t.measured_angles().iter().sum();
    let defect = PI - measured;
    report.push(
        "triangle.gauss_bonnet",
        (defect - 11.0 * PI / 70.0).abs() < tol,
        format!("area {defect:.12} vs 11pi/70 = {:.12}", 11.0 * PI / 70.0),
    );
    report.push_result(
        "triangle.sign_convention",
        mazur::opposite_sign_assignment(tol)
            .certify_relators(&group)
            .map(|r| {
                (
                    !r.passed(),
                    format!(
                        "opposite rotation senses leave (beta gamma)^2 residual {:.6}",
                        r.max_residual
                    ),
                )
            }),
    );
}

fn abelian_checks(report: &mut VerificationReport) {
    let commutator = Presentation::parse_fp("gens: a b\nrel: a b A B\n").expect("static");
    let ab = commutator.abelianization();
    report.push(
        "abelian.commutator",
        ab.free_rank == 2 && ab.torsion.is_empty(),
        format!("H1 = {ab}"),
    );
    let g = mazur::triangle_group().abelianization();
    report.push(
        "abelian.triangle_group",
        g.is_trivial(),
        format!("H1 = {g}"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut accepted = 0;
    let mut p = sampling::random_presentation(&mut rng);
    let mut error = None;
    for i in 0..RANDOM_TIETZE_MOVES {
        if i % 25 == 0 {
            p = sampling::random_presentation(&mut rng);
        }
        let m = sampling::random_certified_move(&mut rng, &p, i);
        match apply_tietze(&p, &m) {
            Ok(next) if next.abelianization() == p.abelianization() => {
                accepted += 1;
                p = next;
            }
            Ok(_) => error = Some(format!("move {i} changed invariant factors")),
            Err(e) => error = Some(format!("move {i}: {e}")),
        }
    }
    report.push(
        "abelian.tietze_random",
        accepted == RANDOM_TIETZE_MOVES,
        error.unwrap_or_else(|| format!("{accepted} certified moves, invariant factors unchanged")),
    );
}

fn csi_checks(report: &mut VerificationReport) {
    report.push_result(
        "csi.family_demo",
        family_demo(10).map(|n| {
            (
                n == 1024,
                format!("{n} pairwise-distinguishable descriptions for k = 10"),
            )
        }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let separated = (0..RANDOM_MULTISETS)
        .filter(|_| {
            let m = sampling::random_multiset(&mut rng);
            distinguishable(&m, &m.clone())
        })
        .count();
    report.push(
        "csi.irreflexive",
        separated == 0,
        format!("{RANDOM_MULTISETS} multisets, {separated} separated from themselves"),
    );
}
