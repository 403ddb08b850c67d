//! Coordinate systems for once-punctured-torus representations: trace
//! coordinates and the Markov surface, complex length, the Maskit family
//! and its rank-2-cusp extension, and complex Fenchel-Nielsen coordinates.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::mobius::{commutator, compose, ExtComplex, UnitDetMatrix};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point (x, y, z) on the Markov surface x^2 + y^2 + z^2 = xyz,
/// holding the traces of a generator pair and their product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceTriple {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl TraceTriple {
    /// Validates the Markov relation within `1e-6 * (1 + |x|^2 + |y|^2 + |z|^2)`
    /// and rejects the excluded origin (0, 0, 0).
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Result<Self> {
        let t = TraceTriple { x, y, z };
        if t.residual() > 1e-6 * t.scale() {
            return Err(Error::domain(
                "trace triple",
                format!("Markov residual {} too large", t.residual()),
            ));
        }
        if x.norm() < 1e-9 && y.norm() < 1e-9 && z.norm() < 1e-9 {
            return Err(Error::domain("trace triple", "the origin is excluded"));
        }
        Ok(t)
    }

    pub fn new_unchecked(x: Complex64, y: Complex64, z: Complex64) -> Self {
        TraceTriple { x, y, z }
    }

    /// |x^2 + y^2 + z^2 - xyz|
    pub fn residual(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z - self.x * self.y * self.z).norm()
    }

    pub fn scale(&self) -> f64 {
        1.0 + self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    pub fn coords(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }
}

/// A complex translation length, normalized into the strip
/// Re > 0, -pi < Im <= pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexLength(pub Complex64);

impl ComplexLength {
    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// Trace coordinates (alpha, beta) restricted to the branch domain:
/// Re beta > 0 and alpha^2 beta^2 != 4 (alpha^2 + beta^2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceCoords {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl TraceCoords {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(beta.re > 0.0) {
            return Err(Error::domain(
                "trace coordinates",
                format!("Re beta = {} must be positive", beta.re),
            ));
        }
        if discriminant(alpha, beta).norm() == 0.0 {
            return Err(Error::domain(
                "trace coordinates",
                "point lies on the critical locus of the branched double cover",
            ));
        }
        Ok(TraceCoords { alpha, beta })
    }

    /// Skips the domain checks; used for values produced by [`theta`],
    /// which may leave the branch domain for extreme twists.
    pub fn new_unchecked(alpha: Complex64, beta: Complex64) -> Self {
        TraceCoords { alpha, beta }
    }
}

/// Complex Fenchel-Nielsen coordinates: length parameter away from 2 pi i Z
/// and a twist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FnCoords {
    pub lambda: Complex64,
    pub tau: Complex64,
}

impl FnCoords {
    pub fn new(lambda: Complex64, tau: Complex64) -> Result<Self> {
        if dist_to_2pii_lattice(lambda) <= 1e-9 {
            return Err(Error::domain(
                "Fenchel-Nielsen coordinates",
                format!("lambda = {lambda} is within 1e-9 of 2 pi i Z"),
            ));
        }
        Ok(FnCoords { lambda, tau })
    }
}

/// Distance from z to the lattice 2 pi i Z.
pub fn dist_to_2pii_lattice(z: Complex64) -> f64 {
    let k = (z.im / TAU).round();
    (z - c(0.0, TAU * k)).norm()
}

/// A representation of the rank-2 free group with parabolic commutator,
/// given by the images of the fixed generator pair.
#[derive(Debug, Clone, Copy)]
pub struct PuncturedTorusRep {
    pub a: UnitDetMatrix,
    pub b: UnitDetMatrix,
}

impl PuncturedTorusRep {
    /// Checks tr[A, B] = -2 within 1e-7.
    pub fn new(a: UnitDetMatrix, b: UnitDetMatrix) -> Result<Self> {
        let t = commutator(&a, &b).trace();
        if (t + 2.0).norm() > 1e-7 {
            return Err(Error::domain(
                "punctured torus representation",
                format!("tr[A,B] = {t}, expected -2"),
            ));
        }
        Ok(PuncturedTorusRep { a, b })
    }

    pub fn new_unchecked(a: UnitDetMatrix, b: UnitDetMatrix) -> Self {
        PuncturedTorusRep { a, b }
    }

    /// Trace triple (tr A, tr B, tr AB) of this representation.
    pub fn trace_triple(&self) -> TraceTriple {
        TraceTriple::new_unchecked(
            self.a.trace(),
            self.b.trace(),
            compose(&self.a, &self.b).trace(),
        )
    }
}

/// Inverse of w -> 2 cosh(w/2) on the right half-plane minus the slit (0, 2],
/// normalized into the strip Re > 0, -pi < Im <= pi.
///
/// Implemented as 2 log(z/2 + sqrt(z^2/4 - 1)) with an explicit fold into the
/// strip, which avoids relying on any library acosh branch convention.
pub fn complex_length(z: Complex64) -> Result<ComplexLength> {
    if !(z.re > 0.0) {
        return Err(Error::domain(
            "complex length",
            format!("Re z = {} must be positive", z.re),
        ));
    }
    if z.im == 0.0 && z.re <= 2.0 {
        return Err(Error::domain(
            "complex length",
            format!("z = {} lies on the excluded slit (0, 2]", z.re),
        ));
    }
    let u = z / 2.0;
    let s = (u * u - 1.0).sqrt();
    let mut w = 2.0 * (u + s).ln();
    if w.re < 0.0 {
        w = -w;
    }
    while w.im > PI {
        w.im -= TAU;
    }
    while w.im <= -PI {
        w.im += TAU;
    }
    Ok(ComplexLength(w))
}

/// 2 cosh(lambda / 2), the trace value with complex length `lambda`.
pub fn beta_from_lambda(lambda: Complex64) -> Complex64 {
    2.0 * (lambda / 2.0).cosh()
}

pub(crate) fn discriminant(alpha: Complex64, beta: Complex64) -> Complex64 {
    let a2 = alpha * alpha;
    let b2 = beta * beta;
    a2 * b2 - 4.0 * (a2 + b2)
}

/// The preferred root gamma of gamma^2 - alpha beta gamma + alpha^2 + beta^2 = 0,
/// continued from the anchor gamma(alpha, 2) = alpha - 2i.
///
/// The square root of the discriminant is tracked along the straight segment
/// from (alpha, 2) to (alpha, beta) in the second coordinate, starting from
/// the anchor value -4i, with adaptive subdivision. Fails if the segment
/// runs into the critical locus.
pub fn gamma_branch(tc: &TraceCoords) -> Result<Complex64> {
    let (alpha, beta) = (tc.alpha, tc.beta);
    let mut steps = 64usize;
    'retry: loop {
        // sqrt(disc) at beta = 2 is +-4i; the branch is fixed at -4i.
        let mut s_prev = c(0.0, -4.0);
        for k in 1..=steps {
            let t = k as f64 / steps as f64;
            let b = c(2.0, 0.0) + t * (beta - 2.0);
            let disc = discriminant(alpha, b);
            let scale = alpha.norm_sqr() * b.norm_sqr() + 4.0 * (alpha.norm_sqr() + b.norm_sqr());
            if disc.norm() <= 1e-30 * (1.0 + scale) {
                return Err(Error::Branch {
                    alpha,
                    beta,
                    detail: "segment meets the critical locus".into(),
                });
            }
            let p = disc.sqrt();
            let (near, far) = if (p - s_prev).norm() <= (p + s_prev).norm() {
                (p, -p)
            } else {
                (-p, p)
            };
            // Nearly equidistant roots mean the step straddled a half-turn of
            // the discriminant; refine the subdivision.
            if (near - s_prev).norm() > 0.8 * (far - s_prev).norm() {
                if steps >= 1 << 14 {
                    return Err(Error::Branch {
                        alpha,
                        beta,
                        detail: "square-root tracking did not converge".into(),
                    });
                }
                steps *= 2;
                continue 'retry;
            }
            s_prev = near;
        }
        return Ok(0.5 * (alpha * beta + s_prev));
    }
}

/// The representation with A = [[alpha, -i], [-i, 0]] and parabolic
/// B = [[1, 2], [0, 1]].
pub fn rho_alpha(alpha: Complex64) -> PuncturedTorusRep {
    PuncturedTorusRep::new_unchecked(
        UnitDetMatrix::new_unchecked(alpha, c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0)),
        UnitDetMatrix::translation(c(2.0, 0.0)),
    )
}

/// The Maskit-slice family: `sigma_mu == rho_alpha` with alpha = -i mu.
pub fn sigma_mu(mu: Complex64) -> PuncturedTorusRep {
    rho_alpha(-I * mu)
}

/// The rank-2-cusp extension of `sigma_mu`: the generator pair together with
/// the commuting parabolic C = [[1, zeta], [0, 1]].
///
/// Satisfies C^-k A = sigma_{mu - k zeta}(a) for all integers k.
pub fn hat_sigma(mu: Complex64, zeta: Complex64) -> (PuncturedTorusRep, UnitDetMatrix) {
    (sigma_mu(mu), UnitDetMatrix::translation(zeta))
}

/// Fenchel-Nielsen representation: B is diagonal loxodromic with complex
/// length lambda, A has perpendicular axis, premultiplied by the twist.
pub fn eta(fnc: &FnCoords) -> Result<PuncturedTorusRep> {
    let half = fnc.lambda / 2.0;
    let sh = half.sinh();
    if sh.norm() < 1e-12 {
        return Err(Error::degenerate(
            "eta",
            format!("sinh(lambda/2) = {sh} vanishes"),
        ));
    }
    let ch = half.cosh();
    let tw = (fnc.tau / 2.0).exp();
    // diag(e^{tau/2}, e^{-tau/2}) * (1/sinh)[[cosh, -1], [-1, cosh]]
    let a = UnitDetMatrix::new_unchecked(tw * ch / sh, -tw / sh, -1.0 / (tw * sh), ch / (tw * sh));
    let b = UnitDetMatrix::new_unchecked(half.exp(), c(0.0, 0.0), c(0.0, 0.0), (-half).exp());
    Ok(PuncturedTorusRep::new_unchecked(a, b))
}

/// Trace coordinates of [`eta`]:
/// (2 coth(lambda/2) cosh(tau/2), 2 cosh(lambda/2)).
pub fn theta(fnc: &FnCoords) -> Result<TraceCoords> {
    let half = fnc.lambda / 2.0;
    let sh = half.sinh();
    if sh.norm() < 1e-12 {
        return Err(Error::degenerate(
            "theta",
            format!("sinh(lambda/2) = {sh} vanishes"),
        ));
    }
    let first = 2.0 * (half.cosh() / sh) * (fnc.tau / 2.0).cosh();
    let second = 2.0 * half.cosh();
    Ok(TraceCoords::new_unchecked(first, second))
}

/// Normalizing map g_lambda(z) = (2/lambda)(z - pi i), taking the twist
/// lattice <z + lambda, z + 2 pi i> to <z + 2, z + 4 pi i / lambda>.
pub fn g_lam(lambda: Complex64, z: Complex64) -> Complex64 {
    2.0 / lambda * (z - c(0.0, PI))
}

/// Inverse of [`g_lam`]: z -> lambda z / 2 + pi i.
pub fn g_lam_inv(lambda: Complex64, z: Complex64) -> Complex64 {
    lambda * z / 2.0 + c(0.0, PI)
}

/// h_lambda(z) = 2 i coth(lambda/2) sinh(lambda z / 4); converges to
/// z -> i z uniformly on compacts as lambda -> 0.
pub fn h_lam(lambda: Complex64, z: Complex64) -> Complex64 {
    let half = lambda / 2.0;
    2.0 * I * (half.cosh() / half.sinh()) * (lambda * z / 4.0).sinh()
}

/// F(z, w) = (i z, 4 pi i / lambda(w)), with F(z, 2) = (i z, infinity).
pub fn map_f(z: Complex64, w: Complex64) -> Result<(Complex64, ExtComplex)> {
    if w == c(2.0, 0.0) {
        return Ok((I * z, ExtComplex::Infinity));
    }
    let lam = complex_length(w)?;
    Ok((I * z, ExtComplex::Finite(c(0.0, 4.0 * PI) / lam.value())))
}

/// Trace-faithful realization of a Markov triple.
///
/// Uses A = [[x, 1], [-1, 0]] and B = [[0, xi], [-1/xi, y]] with xi the
/// larger-modulus root of xi^2 + z xi + 1 = 0; only the postconditions
/// (the traces and tr[A,B] = -2) are contractual.
pub fn realize_triple(t: &TraceTriple) -> Result<PuncturedTorusRep> {
    let z = t.z;
    if (z - 2.0).norm() <= 1e-12 || (z + 2.0).norm() <= 1e-12 {
        return Err(Error::degenerate(
            "realize_triple",
            format!("third trace {z} is parabolic"),
        ));
    }
    let mut s = (z * z - 4.0).sqrt();
    // Align the root so that |z + s| >= |z - s|.
    if (z.conj() * s).re < 0.0 {
        s = -s;
    }
    let xi = -(z + s) / 2.0;
    let xin = xi.norm();
    if !(1e-8..=1e8).contains(&xin) {
        return Err(Error::degenerate(
            "realize_triple",
            format!("quadratic root has modulus {xin}"),
        ));
    }
    let a = UnitDetMatrix::new_unchecked(t.x, c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
    let b = UnitDetMatrix::new_unchecked(c(0.0, 0.0), xi, -1.0 / xi, t.y);
    PuncturedTorusRep::new(a, b)
}
