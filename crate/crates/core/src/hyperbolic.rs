//! Isometries of the Poincaré disk and numeric certification of group
//! relations.
//!
//! An isometry is a unit-determinant matrix `[[a, b], [c, d]]` acting by
//! `z ↦ (az + b)/(cz + d)`, optionally preceded by complex conjugation. With
//! `(M, r)` denoting "conjugate first iff r", composition is
//!
//! ```text
//! (M₁, r₁) ∘ (M₂, r₂) = (M₁ · (r₁ ? conj(M₂) : M₂), r₁ xor r₂)
//! ```
//!
//! and the inverse of `(M, r)` is `(r ? conj(M⁻¹) : M⁻¹, r)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{Presentation, Word};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Boundary margin for disk points.
const DISK_MARGIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.is_finite() && z.norm() < 1.0 - DISK_MARGIN {
            Ok(Self(z))
        } else {
            Err(Error::OutsideDisk(format!("{z}")))
        }
    }

    pub fn origin() -> Self {
        Self(Complex64::new(0.0, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }
}

impl std::fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:.12}, {:.12})", self.0.re, self.0.im)
    }
}

/// Poincaré disk distance.
pub fn hyp_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    let num = (p.0 - q.0).norm();
    let den = (Complex64::new(1.0, 0.0) - p.0.conj() * q.0).norm();
    2.0 * (num / den).min(1.0).atanh()
}

type Mat = [[Complex64; 2]; 2];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    [
        [
            x[0][0] * y[0][0] + x[0][1] * y[1][0],
            x[0][0] * y[0][1] + x[0][1] * y[1][1],
        ],
        [
            x[1][0] * y[0][0] + x[1][1] * y[1][0],
            x[1][0] * y[0][1] + x[1][1] * y[1][1],
        ],
    ]
}

fn mat_conj(x: &Mat) -> Mat {
    [
        [x[0][0].conj(), x[0][1].conj()],
        [x[1][0].conj(), x[1][1].conj()],
    ]
}

/// Inverse of a unit-determinant matrix.
fn mat_inv(x: &Mat) -> Mat {
    [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]
}

fn det(x: &Mat) -> Complex64 {
    x[0][0] * x[1][1] - x[0][1] * x[1][0]
}

/// Möbius map sending `c` to 0: `z ↦ (z − c)/(1 − c̄z)`, unit determinant.
fn to_origin(c: Complex64) -> Mat {
    let s = (1.0 - c.norm_sqr()).sqrt();
    let one = Complex64::new(1.0, 0.0);
    [[one / s, -c / s], [-c.conj() / s, one / s]]
}

#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    matrix: Mat,
    reversing: bool,
    tol: f64,
}

impl Isometry {
    pub fn identity(tol: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self {
            matrix: [[one, zero], [zero, one]],
            reversing: false,
            tol,
        }
    }

    fn from_parts(matrix: Mat, reversing: bool, tol: f64) -> Self {
        Self {
            matrix,
            reversing,
            tol,
        }
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.reversing
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn determinant(&self) -> Complex64 {
        det(&self.matrix)
    }

    pub fn apply_z(&self, z: Complex64) -> Complex64 {
        let z = if self.reversing { z.conj() } else { z };
        let m = &self.matrix;
        (m[0][0] * z + m[0][1]) / (m[1][0] * z + m[1][1])
    }

    pub fn apply(&self, p: DiskPoint) -> DiskPoint {
        // disk automorphisms keep points inside, so no re-validation
        DiskPoint(self.apply_z(p.0))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let rhs = if self.reversing {
            mat_conj(&other.matrix)
        } else {
            other.matrix
        };
        Isometry::from_parts(
            mat_mul(&self.matrix, &rhs),
            self.reversing ^ other.reversing,
            self.tol.max(other.tol),
        )
    }

    pub fn inverse(&self) -> Isometry {
        let inv = mat_inv(&self.matrix);
        let matrix = if self.reversing { mat_conj(&inv) } else { inv };
        Isometry::from_parts(matrix, self.reversing, self.tol)
    }

    pub fn pow(&self, n: i64) -> Isometry {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Isometry::identity(self.tol), |acc, _| acc.compose(&base))
    }

    /// Largest hyperbolic displacement over three non-collinear probe points.
    pub fn probe_displacement(&self) -> f64 {
        probes()
            .into_iter()
            .map(|p| hyp_distance(p, self.apply(p)))
            .fold(0.0, f64::max)
    }

    pub fn is_identity(&self) -> bool {
        !self.reversing && self.probe_displacement() < self.tol
    }

    /// Equality as maps, up to the tolerance.
    pub fn approx_eq(&self, other: &Isometry) -> bool {
        self.compose(&other.inverse()).is_identity()
    }

    /// Whether `(M, r)` maps the disk to itself, checked on sample points.
    pub fn preserves_disk(&self) -> bool {
        (det(&self.matrix) - Complex64::new(1.0, 0.0)).norm() <= self.tol.max(1e-12)
            && (0..8).all(|k| {
                let z = Complex64::from_polar(0.9, f64::from(k) * PI / 4.0);
                self.apply_z(z).norm() < 1.0
            })
    }
}

fn probes() -> [DiskPoint; 3] {
    [
        DiskPoint(Complex64::new(0.0, 0.0)),
        DiskPoint(Complex64::new(0.5, 0.0)),
        DiskPoint(Complex64::new(0.0, 0.5)),
    ]
}

/// Orientation-preserving rotation about `center`; derivative `e^{i·angle}`
/// at the center.
pub fn rotation(center: DiskPoint, angle: f64, tol: f64) -> Isometry {
    let t = to_origin(center.0);
    let half = Complex64::from_polar(1.0, angle / 2.0);
    let spin = [
        [half, Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), half.conj()],
    ];
    Isometry::from_parts(mat_mul(&mat_inv(&t), &mat_mul(&spin, &t)), false, tol)
}

/// Reflection in the geodesic through `p` and `q`.
pub fn reflection(p: DiskPoint, q: DiskPoint, tol: f64) -> Result<Isometry> {
    if hyp_distance(p, q) <= tol {
        return Err(Error::CoincidentPoints);
    }
    let t = to_origin(p.0);
    let q0 = Isometry::from_parts(t, false, tol).apply_z(q.0);
    // reflection across the diameter at angle φ: z ↦ e^{2iφ} z̄
    let half = Complex64::from_polar(1.0, q0.arg());
    let mirror = [
        [half, Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), half.conj()],
    ];
    let m = mat_mul(&mat_inv(&t), &mat_mul(&mirror, &mat_conj(&t)));
    Ok(Isometry::from_parts(m, true, tol))
}

/// Interior angle at `x` between the geodesics to `y` and `z`.
pub fn angle_at(x: DiskPoint, y: DiskPoint, z: DiskPoint) -> f64 {
    let t = Isometry::from_parts(to_origin(x.0), false, 0.0);
    let d = (t.apply_z(z.0).arg() - t.apply_z(y.0).arg()).abs();
    if d > PI {
        2.0 * PI - d
    } else {
        d
    }
}

/// A geodesic triangle with `a` at the origin, `b` on the positive real axis
/// and `c` in the upper half-disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    pub a: DiskPoint,
    pub b: DiskPoint,
    pub c: DiskPoint,
    pub angles: [f64; 3],
}

impl Triangle {
    /// Interior angles at `a`, `b`, `c` measured from the placed geodesics.
    pub fn measured_angles(&self) -> [f64; 3] {
        [
            angle_at(self.a, self.b, self.c),
            angle_at(self.b, self.c, self.a),
            angle_at(self.c, self.a, self.b),
        ]
    }

    /// Gauss–Bonnet area `π − (α + β + γ)`.
    pub fn angle_defect(&self) -> f64 {
        PI - self.angles.iter().sum::<f64>()
    }
}

/// Places the triangle with interior angles `at_a`, `at_b`, `at_c`.
pub fn build_triangle(at_a: f64, at_b: f64, at_c: f64) -> Result<Triangle> {
    let sum = at_a + at_b + at_c;
    if sum >= PI || sum.is_nan() || [at_a, at_b, at_c].iter().any(|&x| x <= 0.0) {
        return Err(Error::NotHyperbolic(sum));
    }
    // hyperbolic law of cosines for angles
    let cosh_ab = (at_c.cos() + at_a.cos() * at_b.cos()) / (at_a.sin() * at_b.sin());
    let cosh_ac = (at_b.cos() + at_a.cos() * at_c.cos()) / (at_a.sin() * at_c.sin());
    let radius = |cosh_d: f64| (cosh_d.acosh() / 2.0).tanh();
    Ok(Triangle {
        a: DiskPoint::origin(),
        b: DiskPoint::new(Complex64::new(radius(cosh_ab), 0.0))?,
        c: DiskPoint::new(Complex64::from_polar(radius(cosh_ac), at_a))?,
        angles: [at_a, at_b, at_c],
    })
}

/// Generator images of a representation into the isometry group.
#[derive(Clone, Debug, PartialEq)]
pub struct RepAssignment {
    map: BTreeMap<String, Isometry>,
    tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelatorReport {
    pub residuals: Vec<(Word, f64)>,
    pub max_residual: f64,
    pub tol: f64,
}

impl RelatorReport {
    pub fn passed(&self) -> bool {
        self.max_residual < self.tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NontrivialReport {
    pub word: Word,
    pub displacement: f64,
    pub threshold: f64,
}

impl NontrivialReport {
    pub fn passed(&self) -> bool {
        self.displacement > self.threshold
    }
}

impl RepAssignment {
    /// All images are re-tagged with the shared tolerance.
    pub fn new(images: impl IntoIterator<Item = (String, Isometry)>, tol: f64) -> Self {
        let map = images
            .into_iter()
            .map(|(g, mut iso)| {
                iso.tol = tol;
                (g, iso)
            })
            .collect();
        Self { map, tol }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn image(&self, g: &str) -> Option<&Isometry> {
        self.map.get(g)
    }

    /// `h(l₁) ∘ h(l₂) ∘ …` for the word `l₁ l₂ …`.
    pub fn evaluate(&self, w: &Word) -> Result<Isometry> {
        let mut acc = Isometry::identity(self.tol);
        for l in w.letters() {
            let iso = self
                .map
                .get(&l.generator)
                .ok_or_else(|| Error::UnmappedGenerator(l.generator.clone()))?;
            acc = if l.exponent > 0 {
                acc.compose(iso)
            } else {
                acc.compose(&iso.inverse())
            };
        }
        Ok(acc)
    }

    pub fn certify_relators(&self, p: &Presentation) -> Result<RelatorReport> {
        if let Some(g) = p.generators().iter().find(|g| !self.map.contains_key(*g)) {
            return Err(Error::UnmappedGenerator(g.clone()));
        }
        let mut residuals = Vec::new();
        let mut max_residual: f64 = 0.0;
        for r in p.relators() {
            let iso = self.evaluate(r)?;
            let residual = if iso.is_orientation_reversing() {
                f64::INFINITY
            } else {
                iso.probe_displacement()
            };
            max_residual = max_residual.max(residual);
            residuals.push((r.clone(), residual));
        }
        Ok(RelatorReport {
            residuals,
            max_residual,
            tol: self.tol,
        })
    }

    /// Displacement of `witness` under `h(w)`; passes above `10·tol`.
    pub fn certify_nontrivial(&self, w: &Word, witness: DiskPoint) -> Result<NontrivialReport> {
        let iso = self.evaluate(w)?;
        Ok(NontrivialReport {
            word: w.clone(),
            displacement: hyp_distance(witness, iso.apply(witness)),
            threshold: 10.0 * self.tol,
        })
    }
}
