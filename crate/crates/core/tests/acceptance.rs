//! Acceptance suite: one PASS/FAIL line per criterion, with runtime limits.
//! Oracles here are computed independently of the library code paths where
//! practical (quadrature, minors, hand-transcribed sequences).

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use splitcert::assets::AssetSource;
use splitcert::collapse::{
    free_faces, is_collapsible, replay, CollapseCertificate, SearchBudget, Verdict,
};
use splitcert::group::{apply_tietze, Presentation, Word};
use splitcert::hyperbolic::{rotation, DEFAULT_TOL};
use splitcert::mazur;
use splitcert::report::{verify_all, Status, VerifyOptions};
use splitcert::sampling;
use splitcert::simplicial::{Simplex, SimplicialComplex};
use splitcert::splitting::{distinguishable, family_demo, verify_spine_split};

/// Displacement of A under h(β⁻²γ), from a 40-digit mpmath evaluation.
const MERIDIAN_DISPLACEMENT: f64 = 3.328_648_500_145_139_4;
/// Vertex positions of the (π/7, π/2, π/5) triangle, same oracle.
const B_ORACLE: f64 = 0.549_382_170_321_896_9;
const C_ORACLE: (f64, f64) = (0.625_254_417_585_863_5, 0.301_106_657_806_635_6);

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn criterion(n: u32, limit: Duration, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut o = Outcome::new();
    body(&mut o);
    let elapsed = start.elapsed();
    o.check(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    );
    let ok = o.failures.is_empty();
    if ok {
        println!("CRITERION {n}: PASS");
    } else {
        println!("CRITERION {n}: FAIL ({})", o.failures.join("; "));
    }
    ok
}

fn assets() -> AssetSource {
    AssetSource::dir(concat!(env!("CARGO_MANIFEST_DIR"), "/assets"))
}

fn steps(seq: &str) -> Vec<Simplex> {
    seq.split_whitespace()
        .map(|s| Simplex::parse(s).unwrap())
        .collect()
}

fn ends_at_point(k: &SimplicialComplex, c: &CollapseCertificate) -> bool {
    replay(k, c)
        .map(|r| r.collapsed_to_point())
        .unwrap_or(false)
}

fn c1_dunce(o: &mut Outcome) {
    let k = assets().complex("dunce_hat.scx").unwrap();
    o.check(free_faces(&k).is_empty(), "dunce hat has a free face");
    o.check(
        is_collapsible(&k, &SearchBudget::default()).verdict == Verdict::No,
        "dunce hat search not no",
    );
    o.check(k.euler_characteristic() == 1, "dunce hat chi");
}

fn c2_jester(o: &mut Outcome) {
    let src = assets();
    let j = src.complex("jester_hat.scx").unwrap();
    let a = src.complex("jester_A.scx").unwrap();
    let b = src.complex("jester_B.scx").unwrap();
    let c = src.complex("jester_C.scx").unwrap();
    o.check(free_faces(&j).is_empty(), "J has free faces");
    o.check(j.euler_characteristic() == 1, "chi(J)");
    o.check(a.union(&b).simplices() == j.simplices(), "A + B != J");
    o.check(
        a.intersection(&b).simplices() == c.simplices(),
        "A ^ B != C",
    );
    // the disk sequence, transcribed by hand
    let literal = CollapseCertificate::new("C", steps("wd de ef fv fg dg cg ag d e f g w c b a"));
    o.check(ends_at_point(&c, &literal), "literal C sequence");
    o.check(
        src.certificate("jester_C.cert").unwrap()
            == CollapseCertificate::new("jester_C", literal.steps.clone()),
        "C file differs from sequence",
    );
    let ca = src.certificate("jester_A.cert").unwrap();
    let cb = src.certificate("jester_B.cert").unwrap();
    o.check(
        ca.steps[..12] == literal.steps[..12],
        "A certificate prefix",
    );
    o.check(ends_at_point(&a, &ca), "A certificate");
    o.check(ends_at_point(&b, &cb), "B certificate");
    o.check(
        verify_spine_split(&j, &a, &b, &SearchBudget::default()).is_ok(),
        "split certificate",
    );
}

fn c3_search(o: &mut Outcome) {
    let src = assets();
    let budget = SearchBudget::default();
    for f in ["jester_A.scx", "jester_B.scx", "jester_C.scx"] {
        let k = src.complex(f).unwrap();
        match is_collapsible(&k, &budget).verdict {
            Verdict::Yes(c) => o.check(
                ends_at_point(&k, &c),
                format!("{f} certificate does not replay"),
            ),
            v => o.check(false, format!("{f}: {}", v.label())),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..1000 {
        let k = sampling::random_cone(&mut rng);
        let chi = k.euler_characteristic();
        let Verdict::Yes(c) = is_collapsible(&k, &budget).verdict else {
            o.check(false, format!("cone {i} not certified"));
            continue;
        };
        // recompute chi from scratch after every step
        let mut cur = k.clone();
        for s in &c.steps {
            cur = splitcert::collapse::elementary_collapse(&cur, s).unwrap();
            let by_dim = cur.count_by_dim();
            let chi_now: i64 = by_dim
                .iter()
                .enumerate()
                .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
                .sum();
            if chi_now != chi {
                o.check(false, format!("cone {i}: chi changed"));
                break;
            }
        }
        o.check(cur.is_single_vertex(), format!("cone {i}: not a point"));
    }
}

fn c4_wirtinger(o: &mut Outcome) {
    let d = assets().link("mazur_link.lnk").unwrap();
    let p = d.wirtinger();
    o.check(
        p.generators().len() == 9 && p.relators().len() == 9,
        "9 generators, 9 relators",
    );
    let ab = p.abelianization();
    o.check(
        ab.free_rank == 2 && ab.torsion.is_empty(),
        format!("H1 = {ab}"),
    );
    let crossing = Word::parse("x1 X7 X2 x7").unwrap();
    o.check(
        p.relators().contains(&crossing),
        "crossing relator for x1 missing",
    );
    let der = mazur::derive(&d).unwrap();
    o.check(
        der.x1 == Word::parse("Beta Beta alpha beta").unwrap(),
        format!("x1 = {}", der.x1),
    );
    o.check(
        der.x5 == Word::parse("Beta Beta gamma").unwrap(),
        format!("x5 = {}", der.x5),
    );
    o.check(
        der.surgered.abelianization().is_trivial(),
        "surgered H1 nontrivial",
    );
}

/// Area of the triangle by integrating the hyperbolic area density over the
/// sector from A, bounded by geodesic BC.
fn quadrature_area(b: Complex64, c: Complex64) -> f64 {
    // geodesic BC lies on the circle |z - q|² = |q|² - 1; solve 2Re(q̄p) = |p|² + 1
    let (b1, b2, c1, c2) = (b.re, b.im, c.re, c.im);
    let (rb, rc) = (b.norm_sqr() + 1.0, c.norm_sqr() + 1.0);
    let det = 2.0 * (b1 * c2 - b2 * c1);
    let q = Complex64::new((rb * c2 - rc * b2) / det, (b1 * rc - c1 * rb) / det);
    let edge = |phi: f64| {
        let u = (q.conj() * Complex64::from_polar(1.0, phi)).re;
        u - (u * u - 1.0).sqrt()
    };
    let (lo, hi) = (b.arg(), c.arg());
    let n = 4000;
    let h = (hi - lo) / n as f64;
    let f = |phi: f64| {
        let r = edge(phi);
        2.0 / (1.0 - r * r) - 2.0
    };
    let mut sum = f(lo) + f(hi);
    for i in 1..n {
        sum += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

fn c5_triangle(o: &mut Outcome) {
    let tol = DEFAULT_TOL;
    let (t, rep) = mazur::triangle_representation(tol);
    o.check(
        (t.b.z().re - B_ORACLE).abs() < 1e-12 && t.b.z().im == 0.0,
        "B position",
    );
    o.check(
        (t.c.z() - Complex64::new(C_ORACLE.0, C_ORACLE.1)).norm() < 1e-12,
        "C position",
    );
    let report = rep.certify_relators(&mazur::triangle_group()).unwrap();
    o.check(
        report.passed() && report.max_residual < 1e-9,
        format!("relator residual {}", report.max_residual),
    );
    for (g, n) in [("beta", 5), ("gamma", 7)] {
        for k in 1..n {
            o.check(
                !rep.evaluate(&Word::power_of(g, k)).unwrap().is_identity(),
                format!("{g}^{k} is identity"),
            );
        }
    }
    let bg = rep.evaluate(&Word::parse("beta gamma").unwrap()).unwrap();
    o.check(
        bg.approx_eq(&rotation(t.b, -PI, tol)),
        "h(beta gamma) is not the half-turn at B",
    );
    let disp = rep
        .certify_nontrivial(&Word::parse("beta^-2 gamma").unwrap(), t.a)
        .unwrap();
    o.check(disp.displacement > 1e-3, "meridian displacement too small");
    o.check(
        (disp.displacement - MERIDIAN_DISPLACEMENT).abs() < 1e-9,
        format!("displacement {}", disp.displacement),
    );
    let expected = 11.0 * PI / 70.0;
    o.check((t.angle_defect() - expected).abs() < 1e-9, "angle defect");
    let measured: f64 = t.measured_angles().iter().sum();
    o.check(
        (PI - measured - expected).abs() < 1e-9,
        "measured angle defect",
    );
    let area = quadrature_area(t.b.z(), t.c.z());
    o.check(
        (area - expected).abs() < 1e-9,
        format!("quadrature area {area}"),
    );
}

/// Invariant factors of an integer matrix from gcds of k×k minors.
fn minors_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m[0].len();
    let mut dets = vec![BigInt::from(1)];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                    .collect();
                g = g.gcd(&BigInt::from(det(&sub)));
            }
        }
        if g.is_zero() {
            break;
        }
        dets.push(g);
    }
    dets.windows(2).map(|w| &w[1] / &w[0]).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|first| {
            subsets(n, k - 1)
                .into_iter()
                .filter(move |rest| rest.iter().all(|&x| x > first))
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| [&r[..j], &r[j + 1..]].concat())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn c6_abelian(o: &mut Outcome) {
    let comm = Presentation::parse_fp("gens: a b\nrel: a b A B\n")
        .unwrap()
        .abelianization();
    o.check(comm.free_rank == 2 && comm.torsion.is_empty(), "commutator");
    let g = mazur::triangle_group();
    o.check(g.abelianization().is_trivial(), "triangle group H1");
    let matrix: Vec<Vec<i64>> = g
        .relators()
        .iter()
        .map(|r| g.generators().iter().map(|x| r.exponent_sum(x)).collect())
        .collect();
    o.check(
        matrix == vec![vec![0, 7], vec![5, 0], vec![2, 2]],
        "exponent matrix",
    );
    o.check(
        minors_oracle(&matrix) == vec![BigInt::from(1), BigInt::from(1)],
        "minors oracle",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut p = sampling::random_presentation(&mut rng);
    for i in 0..500 {
        if i % 25 == 0 {
            p = sampling::random_presentation(&mut rng);
        }
        let m = sampling::random_certified_move(&mut rng, &p, i);
        match apply_tietze(&p, &m) {
            Ok(next) => {
                o.check(
                    next.abelianization() == p.abelianization(),
                    format!("move {i} changed H1"),
                );
                p = next;
            }
            Err(e) => o.check(false, format!("move {i} rejected: {e}")),
        }
    }
}

fn c7_sums(o: &mut Outcome) {
    o.check(family_demo(10).unwrap() == 1024, "family_demo(10)");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let m = sampling::random_multiset(&mut rng);
        o.check(
            !distinguishable(&m, &m.clone()),
            format!("{m} separated from itself"),
        );
    }
}

fn c8_verify_all(o: &mut Outcome) {
    let first = verify_all(&assets(), &VerifyOptions::default());
    let second = verify_all(&assets(), &VerifyOptions::default());
    o.check(first.overall() == Status::Pass, "overall not PASS");
    o.check(
        first.to_string() == second.to_string(),
        "report not byte-stable",
    );
    for prefix in [
        "dunce.",
        "jester.",
        "search.",
        "wirtinger.",
        "triangle.",
        "abelian.",
        "csi.",
    ] {
        o.check(first.group_passed(prefix), format!("{prefix} checks"));
    }
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, Duration::from_secs(1), c1_dunce),
        criterion(2, Duration::from_secs(1), c2_jester),
        criterion(3, Duration::from_secs(30), c3_search),
        criterion(4, Duration::from_secs(1), c4_wirtinger),
        criterion(5, Duration::from_secs(1), c5_triangle),
        criterion(6, Duration::from_secs(5), c6_abelian),
        criterion(7, Duration::from_secs(5), c7_sums),
        criterion(8, Duration::from_secs(30), c8_verify_all),
    ];
    // the criterion's literal pairing, rotation(C, -2π/5) with rotation(A, 2π/7)
    let literal = mazur::opposite_sign_assignment(DEFAULT_TOL)
        .certify_relators(&mazur::triangle_group())
        .unwrap();
    println!(
        "NOTE 5: literal pairing rotation(C,-2pi/5), rotation(A,2pi/7) leaves (beta gamma)^2 residual {:.6}; checked with rotation(C,+2pi/5)",
        literal.max_residual
    );
    assert!(
        results.iter().all(|&ok| ok),
        "some criteria failed: {results:?}"
    );
}

#[test]
fn minors_oracle_agrees_with_smith_form() {
    let cases: [Vec<Vec<i64>>; 3] = [
        vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
        vec![vec![0, 7], vec![5, 0], vec![2, 2]],
        vec![vec![6, 0], vec![0, 4]],
    ];
    for m in cases {
        let big: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(splitcert::group::smith_diagonal(&big), minors_oracle(&m));
    }
}
