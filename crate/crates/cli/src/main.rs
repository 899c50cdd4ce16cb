//! Command-line front end: exit 0 on PASS, 1 on a failed check, 2 on usage or
//! I/O errors.

mod moves;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use splitcert::assets::{stem, AssetSource};
use splitcert::collapse::{
    free_faces, greedy_collapse, is_collapsible, replay, CollapseCertificate, SearchBudget,
    TieBreak, Verdict, DEFAULT_MAX_NODES,
};
use splitcert::group::{apply_tietze, LinkDiagram, Presentation, Word};
use splitcert::hyperbolic::DEFAULT_TOL;
use splitcert::mazur;
use splitcert::report::{verify_all, Status, VerifyOptions};
use splitcert::simplicial::SimplicialComplex;
use splitcert::splitting::{distinguishable, multiset_of, verify_spine_split, SumDescription};

#[derive(Parser)]
#[command(
    name = "splitcert",
    version,
    about = "Verify collapse, presentation and hyperbolic certificates"
)]
struct Cli {
    /// Numeric tolerance for isometry checks.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Node budget for collapsibility search.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    budget: u64,
    /// Free-face tie-break: lex or highdim.
    #[arg(long, global = true, default_value = "lex")]
    tie_break: TieBreak,
    /// Asset directory; the bundled copies are used when absent.
    #[arg(long, global = true)]
    assets: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on a single `.scx` complex.
    Complex {
        #[command(subcommand)]
        op: ComplexOp,
    },
    /// Certificate replay.
    Cert {
        #[command(subcommand)]
        op: CertOp,
    },
    /// Jester's hat checks.
    Jester {
        #[command(subcommand)]
        op: JesterOp,
    },
    /// Dunce hat checks.
    Dunce {
        #[command(subcommand)]
        op: DunceOp,
    },
    /// Print the Wirtinger presentation of a `.lnk` diagram.
    Wirtinger { file: PathBuf },
    /// Word and presentation utilities.
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Mazur boundary certificate.
    Mazur {
        #[command(subcommand)]
        op: MazurOp,
    },
    /// Free-factor multiset invariant.
    Csi {
        #[command(subcommand)]
        op: CsiOp,
    },
    /// Run every check and print the report.
    VerifyAll,
}

#[derive(Subcommand)]
enum ComplexOp {
    Validate {
        file: PathBuf,
    },
    Chi {
        file: PathBuf,
    },
    FreeFaces {
        file: PathBuf,
    },
    /// Greedy collapse; passes when it reaches a vertex.
    Collapse {
        file: PathBuf,
    },
    /// Exhaustive collapsibility search.
    Search {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum CertOp {
    Replay { complex: PathBuf, cert: PathBuf },
}

#[derive(Subcommand)]
enum JesterOp {
    VerifySplit,
}

#[derive(Subcommand)]
enum DunceOp {
    Check,
}

#[derive(Subcommand)]
enum GroupOp {
    /// Freely reduce a word.
    Reduce {
        word: String,
    },
    /// Substitute `gen=word` images into a word.
    Subst {
        word: String,
        #[arg(required = true)]
        images: Vec<String>,
    },
    /// Apply a file of certified moves to a `.fp` presentation.
    Tietze {
        fp: PathBuf,
        moves: PathBuf,
    },
    Abelianize {
        fp: PathBuf,
    },
}

#[derive(Subcommand)]
enum MazurOp {
    Certify,
}

#[derive(Subcommand)]
enum CsiOp {
    /// Exit 0 when the descriptions are distinguished, 1 otherwise.
    Distinguish { first: String, second: String },
}

/// A command's printed report and verdict, or a usage/I/O error.
enum Outcome {
    Verdict(String, bool),
    Usage(String),
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, String> {
    let name = stem(path.to_str().unwrap_or("complex")).to_owned();
    SimplicialComplex::parse_scx(name, &read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdict_line(out: &mut String, ok: bool) {
    out.push_str(if ok { "PASS\n" } else { "FAIL\n" });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => Outcome::Usage(msg),
    };
    match outcome {
        Outcome::Verdict(text, ok) => {
            print!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Outcome::Usage(msg) => {
            eprintln!("splitcert: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let budget = SearchBudget::new(cli.budget, cli.tie_break).map_err(|e| e.to_string())?;
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(format!("tolerance must be positive, got {}", cli.tol));
    }
    let src = match &cli.assets {
        Some(dir) => AssetSource::dir(dir),
        None => AssetSource::Embedded,
    };
    let mut out = String::new();
    let ok = match &cli.command {
        Command::Complex { op } => complex(op, &budget, &mut out)?,
        Command::Cert {
            op: CertOp::Replay { complex, cert },
        } => {
            let k = load_complex(complex)?;
            let c = CollapseCertificate::parse(k.name(), &read(cert)?)
                .map_err(|e| format!("{}: {e}", cert.display()))?;
            replay_report(&k, &c, &mut out)
        }
        Command::Jester {
            op: JesterOp::VerifySplit,
        } => {
            let load = |f: &str| src.complex(f).map_err(|e| e.to_string());
            let (j, a, b) = (
                load("jester_hat.scx")?,
                load("jester_A.scx")?,
                load("jester_B.scx")?,
            );
            let ok = match verify_spine_split(&j, &a, &b, &budget) {
                Ok(cert) => {
                    let _ = writeln!(out, "spine: {}", cert.spine);
                    let _ = writeln!(out, "parts: {} {}", cert.parts.0, cert.parts.1);
                    for (label, c) in ["A", "B", "A^B"].iter().zip(&cert.evidence) {
                        let _ = writeln!(out, "evidence {label}: {} steps", c.len());
                    }
                    let _ = writeln!(out, "conclusion: {}", cert.conclusion);
                    true
                }
                Err(e) => {
                    let _ = writeln!(out, "{e}");
                    false
                }
            };
            verdict_line(&mut out, ok);
            ok
        }
        Command::Dunce { op: DunceOp::Check } => {
            let k = src.complex("dunce_hat.scx").map_err(|e| e.to_string())?;
            let free = free_faces(&k).len();
            let search = is_collapsible(&k, &budget);
            let chi = k.euler_characteristic();
            let _ = writeln!(out, "free faces = {free}");
            let _ = writeln!(out, "collapsible = {}", search.verdict.label());
            let _ = writeln!(out, "chi = {chi}");
            let ok = free == 0 && search.verdict == Verdict::No && chi == 1;
            verdict_line(&mut out, ok);
            ok
        }
        Command::Wirtinger { file } => {
            let d = LinkDiagram::parse_lnk(&read(file)?)
                .map_err(|e| format!("{}: {e}", file.display()))?;
            let p = d.wirtinger();
            out.push_str(&p.to_fp());
            let _ = writeln!(
                out,
                "# {} generators, {} relators, H1 = {}",
                p.generators().len(),
                p.relators().len(),
                p.abelianization()
            );
            verdict_line(&mut out, true);
            true
        }
        Command::Group { op } => group(op, &mut out)?,
        Command::Mazur {
            op: MazurOp::Certify,
        } => {
            let d = src.link("mazur_link.lnk").map_err(|e| e.to_string())?;
            let cert = mazur::certify(&d, cli.tol).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "x1 = {}", cert.derivation.x1);
            let _ = writeln!(out, "x5 = {}", cert.derivation.x5);
            let _ = writeln!(out, "relator residual = {:.1e}", cert.relators.max_residual);
            let _ = writeln!(
                out,
                "h(x5) displaces A by {:.12}",
                cert.meridian.displacement
            );
            let pi1 = cert.boundary_group_nontrivial();
            let meridian = cert.meridian_nontrivial();
            let word = |b: bool| if b { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "PI1_BOUNDARY_NONTRIVIAL: {}", word(pi1));
            let _ = writeln!(out, "MERIDIAN_NONTRIVIAL: {}", word(meridian));
            pi1 && meridian
        }
        Command::Csi {
            op: CsiOp::Distinguish { first, second },
        } => {
            let parse = |s: &str| {
                SumDescription::parse(s)
                    .map(|d| multiset_of(&d))
                    .map_err(|e| e.to_string())
            };
            let (m1, m2) = (parse(first)?, parse(second)?);
            let _ = writeln!(out, "first:  {{{m1}}}");
            let _ = writeln!(out, "second: {{{m2}}}");
            let ok = distinguishable(&m1, &m2);
            out.push_str(if ok {
                "distinguishable\n"
            } else {
                "not separated by this invariant\n"
            });
            ok
        }
        Command::VerifyAll => {
            let report = verify_all(
                &src,
                &VerifyOptions {
                    tol: cli.tol,
                    budget,
                },
            );
            out.push_str(&report.to_string());
            report.overall() == Status::Pass
        }
    };
    Ok(Outcome::Verdict(out, ok))
}

fn replay_report(k: &SimplicialComplex, c: &CollapseCertificate, out: &mut String) -> bool {
    let ok = match replay(k, c) {
        Ok(r) => {
            for s in &r.trace {
                let _ = writeln!(
                    out,
                    "{:>3}. {} into {} (chi {})",
                    s.index + 1,
                    s.face,
                    s.coface,
                    s.euler
                );
            }
            let end: Vec<String> = r
                .final_complex
                .simplices()
                .iter()
                .map(|s| s.to_string())
                .collect();
            let _ = writeln!(out, "final: {{{}}}", end.join(", "));
            r.collapsed_to_point()
        }
        Err(f) => {
            let _ = writeln!(out, "replay failed at {f}");
            false
        }
    };
    verdict_line(out, ok);
    ok
}

fn complex(op: &ComplexOp, budget: &SearchBudget, out: &mut String) -> Result<bool, String> {
    Ok(match op {
        ComplexOp::Validate { file } => {
            let k = load_complex(file)?;
            let counts: Vec<String> = k.count_by_dim().iter().map(usize::to_string).collect();
            let _ = writeln!(out, "simplices by dimension: [{}]", counts.join(", "));
            let closed = k.is_face_closed();
            let _ = writeln!(out, "face-closed: {closed}");
            verdict_line(out, closed);
            closed
        }
        ComplexOp::Chi { file } => {
            let k = load_complex(file)?;
            let _ = writeln!(out, "chi = {}", k.euler_characteristic());
            verdict_line(out, true);
            true
        }
        ComplexOp::FreeFaces { file } => {
            let k = load_complex(file)?;
            let faces = free_faces(&k);
            let _ = writeln!(out, "free faces = {}", faces.len());
            for f in faces {
                let _ = writeln!(out, "{f}");
            }
            verdict_line(out, true);
            true
        }
        ComplexOp::Collapse { file } => {
            let k = load_complex(file)?;
            let g = greedy_collapse(&k, budget);
            out.push_str(&g.cert.to_text());
            let ok = g.residual.is_single_vertex();
            let _ = writeln!(out, "# residual has {} simplices", g.residual.len());
            verdict_line(out, ok);
            ok
        }
        ComplexOp::Search { file } => {
            let k = load_complex(file)?;
            let s = is_collapsible(&k, budget);
            let _ = writeln!(
                out,
                "# collapsible = {} ({} nodes)",
                s.verdict.label(),
                s.nodes
            );
            if let Verdict::Yes(c) = &s.verdict {
                out.push_str(&c.to_text());
            }
            verdict_line(out, s.verdict.is_yes());
            s.verdict.is_yes()
        }
    })
}

fn parse_word(s: &str) -> Result<Word, String> {
    Word::parse(s).map_err(|e| e.to_string())
}

fn load_fp(path: &Path) -> Result<Presentation, String> {
    Presentation::parse_fp(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn group(op: &GroupOp, out: &mut String) -> Result<bool, String> {
    Ok(match op {
        GroupOp::Reduce { word } => {
            let _ = writeln!(out, "{}", parse_word(word)?.free_reduce());
            true
        }
        GroupOp::Subst { word, images } => {
            let mut map = BTreeMap::new();
            for item in images {
                let (g, w) = item
                    .split_once('=')
                    .ok_or_else(|| format!("image {item:?} is not gen=word"))?;
                map.insert(g.trim().to_owned(), parse_word(w)?);
            }
            let _ = writeln!(out, "{}", parse_word(word)?.substitute_partial(&map));
            true
        }
        GroupOp::Tietze { fp, moves } => {
            let mut p = load_fp(fp)?;
            let script = moves::parse_moves(&read(moves)?)?;
            let _ = writeln!(out, "# H1 = {}", p.abelianization());
            for (i, m) in script.iter().enumerate() {
                match apply_tietze(&p, m) {
                    Ok(next) => p = next,
                    Err(e) => {
                        let _ = writeln!(out, "move {} rejected: {e}", i + 1);
                        verdict_line(out, false);
                        return Ok(false);
                    }
                }
            }
            out.push_str(&p.to_fp());
            let _ = writeln!(
                out,
                "# {} moves applied, H1 = {}",
                script.len(),
                p.abelianization()
            );
            verdict_line(out, true);
            true
        }
        GroupOp::Abelianize { fp } => {
            let _ = writeln!(out, "{}", load_fp(fp)?.abelianization());
            true
        }
    })
}
