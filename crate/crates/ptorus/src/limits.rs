//! Parameter sequences approaching the parabolic locus, the
//! horocyclic/tangential dichotomy, Hausdorff distance between raster member
//! sets, and the cyclic geometric-limit check.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::coords::beta_from_lambda;
use crate::discreteness::ScanParams;
use crate::error::{Error, Result};
use crate::mobius::{power, psl_distance, UnitDetMatrix};
use crate::slices::{
    raster_im_zeta, raster_linear, raster_maskit, rotate_raster_im, RasterMeta, SliceRaster,
    Window, CODE_ERROR, CODE_MEMBER,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A generator of length-parameter sequences approaching 0 in the right
/// half-plane.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    /// lambda_n = t_n e^{i theta} along a ray: horocyclic approach.
    Horocyclic { theta: f64, scales: Vec<f64> },
    /// lambda_n = 2 pi i / (m_n + xi): tangential approach with limit datum
    /// xi; the identity 2 pi i / lambda_n - m_n = xi holds exactly.
    Tangential { xi: Complex64, schedule: Vec<u64> },
    /// Points on the circle |z - 1| = 1 with prescribed imaginary parts,
    /// taken on the side approaching 0. The limit datum xi is not determined
    /// by the sequence alone and must be supplied for limit rasters.
    CircleTangential {
        im_values: Vec<f64>,
        xi: Option<Complex64>,
    },
}

impl SequenceSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::Horocyclic { theta, scales } => {
                if !(theta.abs() < PI / 2.0) {
                    return Err(Error::domain(
                        "sequence",
                        format!("ray angle {theta} must lie in (-pi/2, pi/2)"),
                    ));
                }
                if scales.is_empty() || scales.iter().any(|&t| !(t > 0.0)) {
                    return Err(Error::domain("sequence", "scales must be positive"));
                }
                if scales.windows(2).any(|w| w[1] >= w[0]) {
                    return Err(Error::domain("sequence", "scales must strictly decrease"));
                }
            }
            SequenceSpec::Tangential { xi, schedule } => {
                if xi.im < 0.0 {
                    return Err(Error::domain("sequence", "Im xi must be >= 0"));
                }
                if schedule.is_empty() || schedule[0] == 0 {
                    return Err(Error::domain("sequence", "schedule must be positive"));
                }
                if schedule.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::domain(
                        "sequence",
                        "schedule must strictly increase",
                    ));
                }
            }
            SequenceSpec::CircleTangential { im_values, .. } => {
                if im_values.is_empty() || im_values.iter().any(|&y| !(y > 0.0 && y <= 1.0)) {
                    return Err(Error::domain(
                        "sequence",
                        "circle imaginary parts must lie in (0, 1]",
                    ));
                }
            }
        }
        Ok(())
    }

    /// The length parameters lambda_n.
    pub fn lambdas(&self) -> Result<Vec<Complex64>> {
        self.validate()?;
        Ok(match self {
            SequenceSpec::Horocyclic { theta, scales } => scales
                .iter()
                .map(|&t| c(t * theta.cos(), t * theta.sin()))
                .collect(),
            SequenceSpec::Tangential { xi, schedule } => schedule
                .iter()
                .map(|&m| c(0.0, 2.0 * PI) / (xi + m as f64))
                .collect(),
            SequenceSpec::CircleTangential { im_values, .. } => im_values
                .iter()
                .map(|&y| c(1.0 - (1.0 - y * y).sqrt(), y))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceKind {
    Horocyclic,
    Tangential,
    Indeterminate,
}

/// Classification of a length sequence with the diagnostic series
/// w_n = Im(2 pi i / lambda_n) attached.
#[derive(Debug, Clone)]
pub struct Classification {
    pub kind: ConvergenceKind,
    pub w_series: Vec<f64>,
}

/// Default threshold above which a tail of increasing w_n counts as
/// horocyclic.
pub const HOROCYCLIC_THRESHOLD: f64 = 100.0;
/// Default bound below which a tail of w_n counts as tangential.
pub const TANGENTIAL_BOUND: f64 = 20.0;

/// Classifies how a sequence of length parameters approaches 0, by the tail
/// behaviour of w_n = Im(2 pi i / lambda_n): unbounded growth is horocyclic,
/// a bounded tail tangential.
pub fn classify(lams: &[Complex64]) -> Result<Classification> {
    classify_with(lams, HOROCYCLIC_THRESHOLD, TANGENTIAL_BOUND)
}

pub fn classify_with(lams: &[Complex64], w_threshold: f64, bound: f64) -> Result<Classification> {
    if lams.len() < 2 {
        return Err(Error::domain("classify", "need at least two terms"));
    }
    if lams.iter().any(|l| !(l.re > 0.0)) {
        return Err(Error::domain(
            "classify",
            "all terms must lie in the right half-plane",
        ));
    }
    let first = lams[0].norm();
    let last = lams[lams.len() - 1].norm();
    if last >= first / 10.0 {
        return Err(Error::domain(
            "classify",
            format!("sequence does not decay: |first| = {first}, |last| = {last}"),
        ));
    }
    let w_series: Vec<f64> = lams
        .iter()
        .map(|l| 2.0 * PI * l.re / l.norm_sqr())
        .collect();
    let tail_start = lams.len() / 2;
    let tail = &w_series[tail_start..];
    let increasing = tail.windows(2).all(|w| w[1] > w[0]);
    let kind = if increasing && *tail.last().unwrap() > w_threshold {
        ConvergenceKind::Horocyclic
    } else if tail.iter().all(|&w| w < bound) {
        ConvergenceKind::Tangential
    } else {
        ConvergenceKind::Indeterminate
    };
    Ok(Classification { kind, w_series })
}

/// The loxodromic element used by the cyclic-limit check: upper triangular
/// with complex length 2 pi i / (m + xi) and fixed off-diagonal 2, which
/// converges to the parabolic [[1, 2], [0, 1]].
pub fn cyclic_b_n(xi: Complex64, m: u64) -> UnitDetMatrix {
    let lam = c(0.0, 2.0 * PI) / (xi + m as f64);
    assert!(
        (lam * m as f64).norm() <= 50.0,
        "|m lambda| out of range for the cyclic family"
    );
    let half = (lam / 2.0).exp();
    UnitDetMatrix::new_unchecked(half, c(2.0, 0.0), c(0.0, 0.0), 1.0 / half)
}

/// Distance, in PSL(2,C), between B_n^{-m} and the parabolic limit
/// [[1, 2 xi], [0, 1]].
pub fn cyclic_limit_check(xi: Complex64, m: u64) -> f64 {
    let b = cyclic_b_n(xi, m);
    let target = UnitDetMatrix::translation(2.0 * xi);
    psl_distance(&power(&b, -(m as i64)), &target)
}

// --- Hausdorff distance on raster member sets -------------------------------

/// One-dimensional squared distance transform on a sampled grid with spacing
/// `h` (lower envelope of parabolas). Infinite entries mean "no site".
fn dt1d(f: &[f64], h: f64, out: &mut [f64]) {
    let n = f.len();
    let h2 = h * h;
    let mut v = vec![0usize; n];
    let mut z = vec![0.0f64; n + 1];
    let mut k = 0usize;
    let mut started = false;
    for q in 0..n {
        if !f[q].is_finite() {
            continue;
        }
        if !started {
            started = true;
            v[0] = q;
            z[0] = f64::NEG_INFINITY;
            z[1] = f64::INFINITY;
            continue;
        }
        let fq = f[q] + h2 * (q * q) as f64;
        loop {
            let p = v[k];
            let s = (fq - (f[p] + h2 * (p * p) as f64)) / (2.0 * h2 * (q as f64 - p as f64));
            if k > 0 && s <= z[k] {
                k -= 1;
            } else {
                v[k + 1] = q;
                z[k + 1] = s;
                z[k + 2] = f64::INFINITY;
                k += 1;
                break;
            }
        }
    }
    if !started {
        out.fill(f64::INFINITY);
        return;
    }
    let mut j = 0usize;
    for q in 0..n {
        while z[j + 1] < q as f64 {
            j += 1;
        }
        let p = v[j];
        let d = q as f64 - p as f64;
        out[q] = f[p] + h2 * d * d;
    }
}

/// Exact squared Euclidean distance transform from the member cells of a
/// raster, in plane units, by row and column sweeps.
fn member_distance_sq(r: &SliceRaster) -> Vec<f64> {
    let (nx, ny) = (r.nx, r.ny);
    let dx = r.window.width / nx as f64;
    let dy = r.window.height / ny as f64;
    let mut g = vec![f64::INFINITY; nx * ny];
    for (idx, &code) in r.cells.iter().enumerate() {
        if code == CODE_MEMBER {
            g[idx] = 0.0;
        }
    }
    let mut row_out = vec![0.0f64; nx];
    for j in 0..ny {
        dt1d(&g[j * nx..(j + 1) * nx], dx, &mut row_out);
        g[j * nx..(j + 1) * nx].copy_from_slice(&row_out);
    }
    let mut col_in = vec![0.0f64; ny];
    let mut col_out = vec![0.0f64; ny];
    for i in 0..nx {
        for j in 0..ny {
            col_in[j] = g[j * nx + i];
        }
        dt1d(&col_in, dy, &mut col_out);
        for j in 0..ny {
            g[j * nx + i] = col_out[j];
        }
    }
    g
}

/// Symmetric Hausdorff distance between the presumed-member cell-center sets
/// of two rasters on the same grid. Both sets empty gives 0; exactly one
/// empty gives infinity.
pub fn hausdorff(r1: &SliceRaster, r2: &SliceRaster) -> Result<f64> {
    if r1.window != r2.window || r1.nx != r2.nx || r1.ny != r2.ny {
        return Err(Error::WindowMismatch);
    }
    let m1 = r1.member_count();
    let m2 = r2.member_count();
    if m1 == 0 && m2 == 0 {
        return Ok(0.0);
    }
    if m1 == 0 || m2 == 0 {
        return Ok(f64::INFINITY);
    }
    let directed = |from: &SliceRaster, to: &SliceRaster| -> f64 {
        let dist = member_distance_sq(to);
        let mut worst: f64 = 0.0;
        for (idx, &code) in from.cells.iter().enumerate() {
            if code == CODE_MEMBER {
                worst = worst.max(dist[idx]);
            }
        }
        worst.sqrt()
    };
    Ok(directed(r1, r2).max(directed(r2, r1)))
}

// --- convergence experiments -------------------------------------------------

/// One row of a convergence experiment.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub n: usize,
    pub lambda: Complex64,
    pub beta: Complex64,
    pub hausdorff: f64,
    pub member_area: f64,
    pub member_cells: usize,
    pub error_cells: usize,
}

/// Rendered slices, the predicted limit raster, and the per-row statistics.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ReportRow>,
    pub slices: Vec<SliceRaster>,
    pub limit: SliceRaster,
}

impl ConvergenceReport {
    /// CSV with header; infinity is written as "inf".
    pub fn csv_string(&self) -> String {
        let mut out = String::from(
            "n,lambda_re,lambda_im,beta_re,beta_im,hausdorff,member_area,member_cells,error_cells\n",
        );
        for row in &self.rows {
            let h = if row.hausdorff.is_infinite() {
                "inf".to_string()
            } else {
                format!("{}", row.hausdorff)
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                row.n,
                row.lambda.re,
                row.lambda.im,
                row.beta.re,
                row.beta.im,
                h,
                row.member_area,
                row.member_cells,
                row.error_cells
            )
            .expect("write to String");
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.csv_string()).map_err(|e| Error::io(path, e))
    }
}

/// Renders the linear slices L(beta_n) for the sequence, renders the
/// predicted limit raster (the rotated Maskit slice for horocyclic
/// sequences, the rotated horizontal slice i M(2 xi) for tangential ones),
/// and tabulates Hausdorff distances and member areas.
///
/// Rendering failures in a single row are recorded (infinite distance, all
/// cells in error) and the remaining rows still run.
pub fn run_experiment(
    spec: &SequenceSpec,
    w: &Window,
    nx: usize,
    ny: usize,
    p: &ScanParams,
    k_max: u32,
) -> Result<ConvergenceReport> {
    let lambdas = spec.lambdas()?;
    let limit = match spec {
        SequenceSpec::Horocyclic { .. } => rotate_raster_im(&raster_maskit(w, nx, ny, p))?,
        SequenceSpec::Tangential { xi, .. } => raster_im_zeta(2.0 * xi, k_max, w, nx, ny, p)?,
        SequenceSpec::CircleTangential { xi, .. } => match xi {
            Some(xi) => raster_im_zeta(2.0 * xi, k_max, w, nx, ny, p)?,
            None => {
                return Err(Error::degenerate(
                    "run_experiment",
                    "a circle sequence needs an explicit xi for its limit raster",
                ))
            }
        },
    };

    let mut rows = Vec::with_capacity(lambdas.len());
    let mut slices = Vec::with_capacity(lambdas.len());
    for (idx, &lambda) in lambdas.iter().enumerate() {
        let beta = beta_from_lambda(lambda);
        let (raster, h) = match raster_linear(beta, w, nx, ny, p) {
            Ok(r) => {
                let h = hausdorff(&r, &limit)?;
                (r, h)
            }
            Err(_) => (error_raster(w, nx, ny, p), f64::INFINITY),
        };
        rows.push(ReportRow {
            n: idx + 1,
            lambda,
            beta,
            hausdorff: h,
            member_area: raster.member_area(),
            member_cells: raster.member_count(),
            error_cells: raster.counts()[CODE_ERROR as usize],
        });
        slices.push(raster);
    }
    Ok(ConvergenceReport {
        rows,
        slices,
        limit,
    })
}

fn error_raster(w: &Window, nx: usize, ny: usize, p: &ScanParams) -> SliceRaster {
    SliceRaster {
        window: *w,
        nx,
        ny,
        cells: vec![CODE_ERROR; nx * ny],
        meta: RasterMeta {
            kind: "error".into(),
            parameters: Default::default(),
            scan: *p,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slices::CODE_CERTIFIED;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    fn raster_with_members(members: &[(usize, usize)], nx: usize, ny: usize) -> SliceRaster {
        let mut cells = vec![CODE_CERTIFIED; nx * ny];
        for &(i, j) in members {
            cells[j * nx + i] = CODE_MEMBER;
        }
        SliceRaster {
            window: Window::new(c(0.0, 0.0), nx as f64, ny as f64).unwrap(),
            nx,
            ny,
            cells,
            meta: RasterMeta {
                kind: "test".into(),
                parameters: BTreeMap::new(),
                scan: ScanParams::default(),
            },
        }
    }

    /// O(n^2) reference for the symmetric Hausdorff distance.
    fn hausdorff_brute(r1: &SliceRaster, r2: &SliceRaster) -> f64 {
        let centers = |r: &SliceRaster| -> Vec<Complex64> {
            let mut out = Vec::new();
            for j in 0..r.ny {
                for i in 0..r.nx {
                    if r.cell(i, j) == CODE_MEMBER {
                        out.push(r.window.cell_center(i, j, r.nx, r.ny));
                    }
                }
            }
            out
        };
        let a = centers(r1);
        let b = centers(r2);
        if a.is_empty() && b.is_empty() {
            return 0.0;
        }
        if a.is_empty() || b.is_empty() {
            return f64::INFINITY;
        }
        let directed = |from: &[Complex64], to: &[Complex64]| -> f64 {
            from.iter()
                .map(|p| {
                    to.iter()
                        .map(|q| (p - q).norm())
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        };
        directed(&a, &b).max(directed(&b, &a))
    }

    #[test]
    fn lambda_formulas() {
        let horo = SequenceSpec::Horocyclic {
            theta: PI / 4.0,
            scales: vec![0.7, 0.3, 0.1],
        };
        let lams = horo.lambdas().unwrap();
        assert!((lams[0] - c(0.7 / 2f64.sqrt(), 0.7 / 2f64.sqrt())).norm() < 1e-12);

        let tan = SequenceSpec::Tangential {
            xi: c(0.0, 1.0),
            schedule: vec![3, 6, 12],
        };
        for (lam, m) in tan.lambdas().unwrap().iter().zip([3u64, 6, 12]) {
            // 2 pi i / lambda - m = xi exactly by construction
            let back = c(0.0, 2.0 * PI) / lam - m as f64;
            assert!((back - c(0.0, 1.0)).norm() < 1e-12);
        }

        let circ = SequenceSpec::CircleTangential {
            im_values: vec![0.7, 0.3, 0.1],
            xi: None,
        };
        for lam in circ.lambdas().unwrap() {
            assert!((lam - 1.0).norm() - 1.0 < 1e-12);
            assert!(lam.re > 0.0);
        }
    }

    #[test]
    fn classify_ray_is_horocyclic() {
        let lams: Vec<Complex64> = [0.7, 0.3, 0.1, 0.01, 0.001]
            .iter()
            .map(|&t| c(t, t))
            .collect();
        let cl = classify(&lams).unwrap();
        assert_eq!(cl.kind, ConvergenceKind::Horocyclic);
        // w_n = pi / t for the diagonal ray
        for (w, t) in cl.w_series.iter().zip([0.7, 0.3, 0.1, 0.01, 0.001]) {
            assert!((w - PI / t).abs() < 1e-9 * (1.0 + PI / t));
        }
    }

    #[test]
    fn classify_circle_is_tangential() {
        let spec = SequenceSpec::CircleTangential {
            im_values: vec![0.7, 0.3, 0.1, 0.03],
            xi: None,
        };
        let lams = spec.lambdas().unwrap();
        let cl = classify(&lams).unwrap();
        assert_eq!(cl.kind, ConvergenceKind::Tangential);
        for w in cl.w_series {
            assert!((w - PI).abs() < 1e-9, "w = {w}");
        }
    }

    #[test]
    fn classify_schedule_is_tangential() {
        let spec = SequenceSpec::Tangential {
            xi: c(0.0, 1.0),
            schedule: vec![4, 8, 16, 32, 64],
        };
        let lams = spec.lambdas().unwrap();
        let cl = classify(&lams).unwrap();
        assert_eq!(cl.kind, ConvergenceKind::Tangential);
        for w in cl.w_series {
            assert!((w - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn classify_rejects_non_decaying() {
        let lams: Vec<Complex64> = vec![c(0.5, 0.0), c(0.4, 0.0)];
        assert!(classify(&lams).is_err());
    }

    #[test]
    fn cyclic_limit_distances_shrink() {
        let xi = c(0.0, 1.0);
        let d10 = cyclic_limit_check(xi, 10);
        let d100 = cyclic_limit_check(xi, 100);
        let d1000 = cyclic_limit_check(xi, 1000);
        assert!(d10 > d100 && d100 > d1000, "{d10} {d100} {d1000}");
        assert!(cyclic_limit_check(xi, 10_000) < 1e-2);
    }

    #[test]
    fn cyclic_limit_xi_zero_gives_identity() {
        // C = [[1, 0], [0, 1]] when xi = 0
        for m in [10u64, 1000] {
            let d = cyclic_limit_check(c(0.0, 0.0), m);
            assert!(d < 1e-9, "m = {m}, d = {d}");
        }
    }

    #[test]
    fn cyclic_b_n_converges_to_parabolic() {
        let xi = c(0.0, 1.0);
        let b = cyclic_b_n(xi, 10_000);
        let target = UnitDetMatrix::translation(c(2.0, 0.0));
        assert!(psl_distance(&b, &target) < 1e-3);
    }

    #[test]
    fn hausdorff_trivial_cases() {
        let r = raster_with_members(&[(1, 1), (3, 2)], 5, 4);
        assert_eq!(hausdorff(&r, &r).unwrap(), 0.0);

        let a = raster_with_members(&[(2, 2)], 5, 5);
        let empty = raster_with_members(&[], 5, 5);
        assert!(hausdorff(&a, &empty).unwrap().is_infinite());
        assert_eq!(hausdorff(&empty, &empty).unwrap(), 0.0);

        // cell pitch is 1 here, so neighbours are at distance 1
        let b = raster_with_members(&[(3, 2)], 5, 5);
        let d = hausdorff(&a, &b).unwrap();
        assert!((d - 1.0).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn hausdorff_window_mismatch() {
        let a = raster_with_members(&[(0, 0)], 4, 4);
        let b = raster_with_members(&[(0, 0)], 5, 5);
        assert!(hausdorff(&a, &b).is_err());
    }

    #[test]
    fn hausdorff_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..40 {
            let nx = 3 + (rng.random::<u32>() % 14) as usize;
            let ny = 3 + (rng.random::<u32>() % 14) as usize;
            let pick = |rng: &mut ChaCha8Rng| -> Vec<(usize, usize)> {
                let count = rng.random::<u32>() % 12;
                (0..count)
                    .map(|_| {
                        (
                            (rng.random::<u32>() as usize) % nx,
                            (rng.random::<u32>() as usize) % ny,
                        )
                    })
                    .collect()
            };
            let a = raster_with_members(&pick(&mut rng), nx, ny);
            let b = raster_with_members(&pick(&mut rng), nx, ny);
            let fast = hausdorff(&a, &b).unwrap();
            let slow = hausdorff_brute(&a, &b);
            if slow.is_infinite() {
                assert!(fast.is_infinite());
            } else {
                assert!((fast - slow).abs() < 1e-9 * (1.0 + slow), "{fast} vs {slow}");
            }
        }
    }

    #[test]
    fn hausdorff_is_pseudometric_on_random_rasters() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..30 {
            let nx = 8;
            let ny = 6;
            let pick = |rng: &mut ChaCha8Rng| -> Vec<(usize, usize)> {
                let count = 1 + rng.random::<u32>() % 10;
                (0..count)
                    .map(|_| {
                        (
                            (rng.random::<u32>() as usize) % nx,
                            (rng.random::<u32>() as usize) % ny,
                        )
                    })
                    .collect()
            };
            let a = raster_with_members(&pick(&mut rng), nx, ny);
            let b = raster_with_members(&pick(&mut rng), nx, ny);
            let cr = raster_with_members(&pick(&mut rng), nx, ny);
            let dab = hausdorff(&a, &b).unwrap();
            let dba = hausdorff(&b, &a).unwrap();
            assert_eq!(dab, dba);
            let dac = hausdorff(&a, &cr).unwrap();
            let dcb = hausdorff(&cr, &b).unwrap();
            assert!(dab <= dac + dcb + 1e-9);
        }
    }

    #[test]
    fn run_experiment_smoke() {
        let spec = SequenceSpec::Horocyclic {
            theta: PI / 4.0,
            scales: vec![0.9, 0.45],
        };
        let w = Window::square(c(0.0, 0.0), 16.0).unwrap();
        let p = ScanParams {
            max_depth: 20,
            node_budget: 10_000,
            ..ScanParams::default()
        };
        let report = run_experiment(&spec, &w, 24, 24, &p, 4).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.slices.len(), 2);
        let csv = report.csv_string();
        assert!(csv.starts_with("n,lambda_re"));
        assert_eq!(csv.lines().count(), 3);
        for row in &report.rows {
            assert!(row.hausdorff.is_finite());
            assert!(row.member_cells > 0, "slices in this window are nonempty");
        }
    }

    #[test]
    fn run_experiment_circle_requires_xi() {
        let spec = SequenceSpec::CircleTangential {
            im_values: vec![0.7, 0.3],
            xi: None,
        };
        let w = Window::square(c(0.0, 0.0), 8.0).unwrap();
        let p = ScanParams::default();
        assert!(run_experiment(&spec, &w, 8, 8, &p, 2).is_err());
    }
}
