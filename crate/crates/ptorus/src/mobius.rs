//! Double-precision arithmetic on determinant-1 complex 2x2 matrices,
//! with comparison up to the PSL(2,C) sign quotient.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `|det - 1|` accepted by [`UnitDetMatrix::new`].
pub const DET_TOL: f64 = 1e-9;

/// The point at infinity on the Riemann sphere, or a finite complex number.
///
/// Infinity compares equal only to infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

/// An SL(2,C) lift of a Moebius transformation: a complex 2x2 matrix with
/// determinant 1, entries stored row-major.
///
/// PSL(2,C) semantics (sign quotient) are applied only at comparison time,
/// via [`psl_distance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDetMatrix {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl UnitDetMatrix {
    /// Builds a matrix, checking that all entries are finite and that the
    /// determinant is 1 within [`DET_TOL`].
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = UnitDetMatrix { a, b, c, d };
        if !m.entries_finite() {
            return Err(Error::NonFiniteMatrix);
        }
        let det = m.det();
        if (det - 1.0).norm() > DET_TOL {
            return Err(Error::DeterminantNotOne { det });
        }
        Ok(m)
    }

    /// Same as [`new`](Self::new) but without validation. The caller
    /// guarantees det = 1 up to round-off.
    pub fn new_unchecked(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        UnitDetMatrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        UnitDetMatrix {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Upper-triangular parabolic `[[1, t], [0, 1]]`.
    pub fn translation(t: Complex64) -> Self {
        UnitDetMatrix {
            a: Complex64::new(1.0, 0.0),
            b: t,
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    fn entries_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Entrywise max-modulus norm.
    pub fn norm_max(&self) -> f64 {
        self.a
            .norm()
            .max(self.b.norm())
            .max(self.c.norm())
            .max(self.d.norm())
    }

    pub fn neg(&self) -> Self {
        UnitDetMatrix {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

/// Matrix product. The product of det-1 matrices is det-1 up to round-off;
/// no renormalization is applied.
pub fn compose(m: &UnitDetMatrix, n: &UnitDetMatrix) -> UnitDetMatrix {
    UnitDetMatrix {
        a: m.a * n.a + m.b * n.c,
        b: m.a * n.b + m.b * n.d,
        c: m.c * n.a + m.d * n.c,
        d: m.c * n.b + m.d * n.d,
    }
}

/// Inverse of a det-1 matrix: `[[d, -b], [-c, a]]`.
pub fn inverse(m: &UnitDetMatrix) -> UnitDetMatrix {
    UnitDetMatrix {
        a: m.d,
        b: -m.b,
        c: -m.c,
        d: m.a,
    }
}

/// Integer power by binary exponentiation; `power(m, 0)` is the identity and
/// negative exponents go through [`inverse`].
pub fn power(m: &UnitDetMatrix, k: i64) -> UnitDetMatrix {
    let (mut base, mut e) = if k < 0 {
        (inverse(m), (k as i128).unsigned_abs())
    } else {
        (*m, k as u128)
    };
    let mut acc = UnitDetMatrix::identity();
    while e > 0 {
        if e & 1 == 1 {
            acc = compose(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = compose(&base, &base);
        }
    }
    acc
}

/// `m n m^-1 n^-1`.
pub fn commutator(m: &UnitDetMatrix, n: &UnitDetMatrix) -> UnitDetMatrix {
    compose(&compose(m, n), &compose(&inverse(m), &inverse(n)))
}

/// Distance between two lifts as PSL(2,C) elements:
/// `min(||M - N||_max, ||M + N||_max)`.
pub fn psl_distance(m: &UnitDetMatrix, n: &UnitDetMatrix) -> f64 {
    let diff = |p: &UnitDetMatrix, q: &UnitDetMatrix| {
        (p.a - q.a)
            .norm()
            .max((p.b - q.b).norm())
            .max((p.c - q.c).norm())
            .max((p.d - q.d).norm())
    };
    diff(m, n).min(diff(m, &n.neg()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> C {
        c(
            (rng.random::<f64>() - 0.5) * 2.0 * scale,
            (rng.random::<f64>() - 0.5) * 2.0 * scale,
        )
    }

    /// Random det-1 matrix: pick a, b, c freely and solve for d.
    pub(crate) fn random_unit_det(rng: &mut ChaCha8Rng, scale: f64) -> UnitDetMatrix {
        loop {
            let a = random_complex(rng, scale);
            if a.norm() < 0.1 {
                continue;
            }
            let b = random_complex(rng, scale);
            let cc = random_complex(rng, scale);
            let d = (C::new(1.0, 0.0) + b * cc) / a;
            return UnitDetMatrix::new_unchecked(a, b, cc, d);
        }
    }

    #[test]
    fn compose_parabolic_powers() {
        let t = UnitDetMatrix::translation(c(2.0, 0.0));
        let tt = compose(&t, &t);
        assert_eq!(tt.b, c(4.0, 0.0));
        assert_eq!(tt.a, c(1.0, 0.0));
        assert_eq!(tt.c, c(0.0, 0.0));
    }

    #[test]
    fn compose_rho_alpha_generators() {
        // [[alpha, -i], [-i, 0]] * [[1, 2], [0, 1]] = [[alpha, 2 alpha - i], [-i, -2i]]
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let alpha = random_complex(&mut rng, 3.0);
            let a = UnitDetMatrix::new_unchecked(alpha, c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0));
            let b = UnitDetMatrix::translation(c(2.0, 0.0));
            let ab = compose(&a, &b);
            assert!((ab.a - alpha).norm() < 1e-14);
            assert!((ab.b - (2.0 * alpha - c(0.0, 1.0))).norm() < 1e-14);
            assert!((ab.c - c(0.0, -1.0)).norm() < 1e-14);
            assert!((ab.d - c(0.0, -2.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn inverse_of_translation() {
        let z = c(1.25, -0.5);
        let inv = inverse(&UnitDetMatrix::translation(z));
        assert_eq!(inv.b, -z);
        let id = inverse(&UnitDetMatrix::identity());
        assert_eq!(psl_distance(&id, &UnitDetMatrix::identity()), 0.0);
    }

    #[test]
    fn inverse_is_right_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = random_unit_det(&mut rng, 2.0);
            let prod = compose(&m, &inverse(&m));
            assert!(
                psl_distance(&prod, &UnitDetMatrix::identity()) < 1e-12,
                "m = {m:?}"
            );
        }
    }

    #[test]
    fn power_parabolic_and_negative() {
        let t = UnitDetMatrix::translation(c(2.0, 0.0));
        for k in [-7i64, -1, 0, 1, 5, 33] {
            let p = power(&t, k);
            assert!((p.b - c(2.0 * k as f64, 0.0)).norm() < 1e-12);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_unit_det(&mut rng, 2.0);
        assert!(psl_distance(&power(&m, -1), &inverse(&m)) < 1e-15);
    }

    #[test]
    fn power_diagonal_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let lam = random_complex(&mut rng, 0.02);
            let m_exp = 1 + (rng.random::<f64>() * 900.0) as i64;
            if (lam * m_exp as f64).norm() > 20.0 {
                continue;
            }
            let d = UnitDetMatrix::new_unchecked(
                (lam / 2.0).exp(),
                c(0.0, 0.0),
                c(0.0, 0.0),
                (-lam / 2.0).exp(),
            );
            let p = power(&d, m_exp);
            let want = (lam * (m_exp as f64) / 2.0).exp();
            assert!((p.a - want).norm() < 1e-9 * want.norm().max(1.0));
            assert!((p.d - 1.0 / want).norm() < 1e-9 * (1.0 / want).norm().max(1.0));
        }
    }

    #[test]
    fn commutator_of_rho_alpha_has_trace_minus_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let alpha = random_complex(&mut rng, 4.0);
            let a = UnitDetMatrix::new_unchecked(alpha, c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0));
            let b = UnitDetMatrix::translation(c(2.0, 0.0));
            let t = commutator(&a, &b).trace();
            assert!((t - c(-2.0, 0.0)).norm() < 1e-9, "alpha = {alpha}");
        }
    }

    #[test]
    fn commutator_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_unit_det(&mut rng, 2.0);
        let id = UnitDetMatrix::identity();
        assert!(psl_distance(&commutator(&m, &id), &id) < 1e-12);
        // b and c generate a rank-2 parabolic group; they commute.
        let b = UnitDetMatrix::translation(c(2.0, 0.0));
        let cc = UnitDetMatrix::translation(c(0.3, 1.7));
        assert!(psl_distance(&commutator(&b, &cc), &id) < 1e-15);
    }

    #[test]
    fn psl_distance_quotients_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let m = random_unit_det(&mut rng, 2.0);
        assert_eq!(psl_distance(&m, &m.neg()), 0.0);
        let t1 = UnitDetMatrix::translation(c(2.0, 0.0));
        let t2 = UnitDetMatrix::translation(c(2.1, 0.0));
        assert!((psl_distance(&t1, &t2) - 0.1) < 1e-15);
    }

    #[test]
    fn trace_identity_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..2000 {
            let a = random_unit_det(&mut rng, 2.0);
            let b = random_unit_det(&mut rng, 2.0);
            let lhs = compose(&a, &b).trace() + compose(&a, &inverse(&b)).trace();
            let rhs = a.trace() * b.trace();
            assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn power_additivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            // Near-elliptic matrices keep powers bounded up to exponent 1000.
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            let eps = (rng.random::<f64>() - 0.5) * 2e-4;
            let lam = c(eps, theta);
            let g = random_unit_det(&mut rng, 1.0);
            let d = UnitDetMatrix::new_unchecked(
                (lam / 2.0).exp(),
                c(0.0, 0.0),
                c(0.0, 0.0),
                (-lam / 2.0).exp(),
            );
            let m = compose(&compose(&g, &d), &inverse(&g));
            let j = (rng.random::<f64>() * 2000.0) as i64 - 1000;
            let k = (rng.random::<f64>() * 2000.0) as i64 - 1000;
            let lhs = power(&m, j + k);
            let rhs = compose(&power(&m, j), &power(&m, k));
            assert!(
                psl_distance(&lhs, &rhs) < 1e-9 * (1.0 + lhs.norm_max()),
                "j={j} k={k}"
            );
        }
    }
}
