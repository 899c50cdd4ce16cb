//! The Mazur link group, its surgery quotient, and the triangle-group
//! representation showing the boundary group is nontrivial.
//!
//! Sign convention: with `C` placed in the upper half-disk, `h(γ)` is the
//! counterclockwise rotation about `A` by `2π/7` and `h(β)` the
//! counterclockwise rotation about `C` by `2π/5`. Both are products of two
//! side reflections, `h(γ) = r_AC ∘ r_AB` and `h(β) = r_BC ∘ r_AC`, so
//! `h(βγ) = r_BC ∘ r_AB` is the half-turn about `B`. Pairing a clockwise
//! `h(β)` with a counterclockwise `h(γ)` breaks `(βγ)² = 1`; see
//! [`opposite_sign_assignment`].

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::Result;
use crate::group::{apply_tietze, LinkDiagram, Presentation, TietzeMove, Word};
use crate::hyperbolic::{
    build_triangle, reflection, rotation, NontrivialReport, RelatorReport, RepAssignment, Triangle,
};

/// Index of the crossing relator `x1 = X7 x2 x7` in the bundled diagram.
pub const X1_CROSSING: usize = 0;

fn w(s: &str) -> Word {
    Word::parse(s).expect("static word")
}

/// Surgery relator of the dotted component: `x5 = x1 x2`.
pub fn r_zeta() -> Word {
    w("x5 X2 X1")
}

/// Surgery relator of the knotted component (its zero-framed longitude).
pub fn r_gamma() -> Word {
    w("X7 X5 x7 X3 X2 X7")
}

/// `⟨β, γ | γ⁷, β⁵, (βγ)²⟩`.
pub fn triangle_group() -> Presentation {
    Presentation::new(
        vec!["beta".into(), "gamma".into()],
        vec![w("gamma^7"), w("beta^5"), w("beta gamma beta gamma")],
    )
    .expect("static presentation")
}

/// Expected normal forms of the two derived meridians.
pub fn expected_x1() -> Word {
    w("beta^-2 alpha beta")
}

pub fn expected_x5() -> Word {
    w("beta^-2 gamma")
}

/// Every intermediate stage of the derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MazurDerivation {
    pub link_group: Presentation,
    /// The link group with `r_ζ` and `r_Γ` adjoined.
    pub surgered: Presentation,
    /// `surgered` after the certified generator additions
    /// `beta = x7`, `lambda = x2`, `alpha = beta lambda`, `gamma = alpha²`.
    pub extended: Presentation,
    /// `x1` solved from the crossing relator.
    pub x1_raw: Word,
    pub x1: Word,
    pub x5: Word,
}

impl MazurDerivation {
    pub fn x1_matches(&self) -> bool {
        self.x1 == expected_x1()
    }

    pub fn x5_matches(&self) -> bool {
        self.x5 == expected_x5()
    }
}

/// Runs the derivation chain on the diagram's Wirtinger presentation.
pub fn derive(diagram: &LinkDiagram) -> Result<MazurDerivation> {
    let link_group = diagram.wirtinger();
    // surgery relators present a quotient, not a Tietze-equivalent group
    let surgered = link_group.with_relator(r_zeta())?.with_relator(r_gamma())?;
    let mut extended = surgered.clone();
    for (name, definition) in [
        ("beta", "x7"),
        ("lambda", "x2"),
        ("alpha", "beta lambda"),
        ("gamma", "alpha alpha"),
    ] {
        extended = apply_tietze(
            &extended,
            &TietzeMove::AddGenerator {
                name: name.into(),
                definition: w(definition),
            },
        )?;
    }
    let x1_raw = Presentation::solve_relator(&link_group.relators()[X1_CROSSING], "x1")?;
    // lambda = beta⁻¹ alpha from alpha = beta lambda
    let coords = BTreeMap::from([
        ("x7".to_string(), w("beta")),
        ("x2".to_string(), w("Beta alpha")),
    ]);
    let x1 = x1_raw.substitute(&coords)?;
    let x5_raw = Presentation::solve_relator(&r_zeta(), "x5")?;
    let with_x1 = BTreeMap::from([("x1".to_string(), x1.clone())]);
    let x5 = x5_raw
        .substitute_partial(&with_x1)
        .substitute_partial(&coords)
        .replace_subword(&w("alpha alpha"), &w("gamma"))
        .free_reduce();
    Ok(MazurDerivation {
        link_group,
        surgered,
        extended,
        x1_raw,
        x1,
        x5,
    })
}

/// The `(π/7, π/2, π/5)` triangle with angles at `A`, `B`, `C`.
pub fn mazur_triangle() -> Triangle {
    build_triangle(PI / 7.0, PI / 2.0, PI / 5.0).expect("angle sum below π")
}

/// `h(β) = r_BC ∘ r_AC`, `h(γ) = r_AC ∘ r_AB`.
pub fn triangle_representation(tol: f64) -> (Triangle, RepAssignment) {
    let t = mazur_triangle();
    let r_ab = reflection(t.a, t.b, tol).expect("distinct vertices");
    let r_ac = reflection(t.a, t.c, tol).expect("distinct vertices");
    let r_bc = reflection(t.b, t.c, tol).expect("distinct vertices");
    let rep = RepAssignment::new(
        [
            ("beta".to_string(), r_bc.compose(&r_ac)),
            ("gamma".to_string(), r_ac.compose(&r_ab)),
        ],
        tol,
    );
    (t, rep)
}

/// Clockwise `h(β)` with counterclockwise `h(γ)`; `(βγ)²` fails here.
pub fn opposite_sign_assignment(tol: f64) -> RepAssignment {
    let t = mazur_triangle();
    RepAssignment::new(
        [
            ("beta".to_string(), rotation(t.c, -2.0 * PI / 5.0, tol)),
            ("gamma".to_string(), rotation(t.a, 2.0 * PI / 7.0, tol)),
        ],
        tol,
    )
}

/// The combined verdicts on the surgered boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct MazurCertificate {
    pub derivation: MazurDerivation,
    pub relators: RelatorReport,
    /// `h(x5) = h(β⁻²γ)` acting on `A`.
    pub meridian: NontrivialReport,
    /// `h(γ)` acting on `B`: any nontrivial image makes the quotient nontrivial.
    pub generator: NontrivialReport,
}

impl MazurCertificate {
    pub fn boundary_group_nontrivial(&self) -> bool {
        self.relators.passed() && self.generator.passed()
    }

    pub fn meridian_nontrivial(&self) -> bool {
        self.relators.passed() && self.derivation.x5_matches() && self.meridian.passed()
    }
}

pub fn certify(diagram: &LinkDiagram, tol: f64) -> Result<MazurCertificate> {
    let derivation = derive(diagram)?;
    let (t, rep) = triangle_representation(tol);
    let relators = rep.certify_relators(&triangle_group())?;
    let meridian = rep.certify_nontrivial(&derivation.x5, t.a)?;
    let generator = rep.certify_nontrivial(&w("gamma"), t.b)?;
    Ok(MazurCertificate {
        derivation,
        relators,
        meridian,
        generator,
    })
}
