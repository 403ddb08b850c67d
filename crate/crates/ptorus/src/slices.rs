//! Rasterized slices over rectangular windows of the complex plane, with
//! binary-PGM output and a JSON metadata sidecar.
//!
//! Cells are sampled at cell centers with the row index increasing upward;
//! rendering is row-parallel but the output is independent of the thread
//! count.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::discreteness::{membership_fn, membership_maskit, membership_trace, ScanParams};
use crate::coords::g_lam_inv;
use crate::error::{Error, Result};

/// Gray levels for the four cell codes: member, likely exterior, certified
/// exterior, error.
pub const GRAY_LEVELS: [u8; 4] = [96, 200, 255, 0];

pub const CODE_MEMBER: u8 = 0;
pub const CODE_LIKELY: u8 = 1;
pub const CODE_CERTIFIED: u8 = 2;
pub const CODE_ERROR: u8 = 3;

/// A rectangular window, given by center and side lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    #[serde(with = "complex_pair")]
    pub center: Complex64,
    pub width: f64,
    pub height: f64,
}

impl Window {
    pub fn new(center: Complex64, width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0 && height > 0.0) {
            return Err(Error::domain(
                "window",
                format!("side lengths {width} x {height} must be positive"),
            ));
        }
        Ok(Window {
            center,
            width,
            height,
        })
    }

    pub fn square(center: Complex64, width: f64) -> Result<Self> {
        Window::new(center, width, width)
    }

    /// Center of cell (i, j) on an nx-by-ny grid; j increases upward.
    pub fn cell_center(&self, i: usize, j: usize, nx: usize, ny: usize) -> Complex64 {
        let re = self.center.re + ((i as f64 + 0.5) / nx as f64 - 0.5) * self.width;
        let im = self.center.im + ((j as f64 + 0.5) / ny as f64 - 0.5) * self.height;
        Complex64::new(re, im)
    }
}

/// Parameter record carried by a raster: slice kind, the defining complex
/// parameters, and the scan settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterMeta {
    pub kind: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub scan: ScanParams,
}

/// A windowed grid of membership verdict codes (row-major, j upward).
#[derive(Debug, Clone, PartialEq)]
pub struct SliceRaster {
    pub window: Window,
    pub nx: usize,
    pub ny: usize,
    pub cells: Vec<u8>,
    pub meta: RasterMeta,
}

impl SliceRaster {
    pub fn cell(&self, i: usize, j: usize) -> u8 {
        self.cells[j * self.nx + i]
    }

    /// Cell counts by code: [member, likely, certified, error].
    pub fn counts(&self) -> [usize; 4] {
        let mut counts = [0usize; 4];
        for &c in &self.cells {
            counts[c as usize] += 1;
        }
        counts
    }

    pub fn member_count(&self) -> usize {
        self.counts()[CODE_MEMBER as usize]
    }

    /// Area of one grid cell in plane units.
    pub fn cell_area(&self) -> f64 {
        (self.window.width / self.nx as f64) * (self.window.height / self.ny as f64)
    }

    /// Total area of the presumed-member cells.
    pub fn member_area(&self) -> f64 {
        self.member_count() as f64 * self.cell_area()
    }
}

fn complex_param(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

/// Row-parallel rendering; rows are assembled in order so the result does
/// not depend on scheduling.
fn render_cells<F>(nx: usize, ny: usize, f: F) -> Vec<u8>
where
    F: Fn(usize, usize) -> u8 + Sync,
{
    let rows: Vec<Vec<u8>> = (0..ny)
        .into_par_iter()
        .map(|j| (0..nx).map(|i| f(i, j)).collect())
        .collect();
    let mut cells = Vec::with_capacity(nx * ny);
    for row in rows {
        cells.extend_from_slice(&row);
    }
    cells
}

/// Maskit slice raster: cell (i, j) holds the verdict for mu at the cell
/// center.
pub fn raster_maskit(w: &Window, nx: usize, ny: usize, p: &ScanParams) -> SliceRaster {
    let cells = render_cells(nx, ny, |i, j| {
        membership_maskit(w.cell_center(i, j, nx, ny), p).code()
    });
    SliceRaster {
        window: *w,
        nx,
        ny,
        cells,
        meta: RasterMeta {
            kind: "maskit".into(),
            parameters: BTreeMap::new(),
            scan: *p,
        },
    }
}

/// Linear slice raster for a fixed second trace beta. beta = 2 is delegated
/// to the Maskit raster composed with the quarter-turn (L(2) = i M), which
/// needs a square window centered at 0.
pub fn raster_linear(
    beta: Complex64,
    w: &Window,
    nx: usize,
    ny: usize,
    p: &ScanParams,
) -> Result<SliceRaster> {
    if beta == Complex64::new(2.0, 0.0) {
        let mut r = rotate_raster_im(&raster_maskit(w, nx, ny, p))?;
        r.meta.kind = "linear".into();
        r.meta.parameters.insert("beta".into(), complex_param(beta));
        return Ok(r);
    }
    if !(beta.re > 0.0) || (beta.im == 0.0 && beta.re <= 2.0) {
        return Err(Error::domain(
            "linear slice",
            format!("beta = {beta} must have Re > 0 and avoid the slit (0, 2]"),
        ));
    }
    let cells = render_cells(nx, ny, |i, j| {
        membership_trace(w.cell_center(i, j, nx, ny), beta, p).code()
    });
    let mut parameters = BTreeMap::new();
    parameters.insert("beta".into(), complex_param(beta));
    Ok(SliceRaster {
        window: *w,
        nx,
        ny,
        cells,
        meta: RasterMeta {
            kind: "linear".into(),
            parameters,
            scan: *p,
        },
    })
}

/// Horizontal slice raster: a cell is a member exactly when every translate
/// mu - k zeta for |k| <= k_max is a presumed member; otherwise it carries
/// the strongest exclusion found. k_max = 0 degenerates to the Maskit
/// raster.
pub fn raster_m_zeta(
    zeta: Complex64,
    k_max: u32,
    w: &Window,
    nx: usize,
    ny: usize,
    p: &ScanParams,
) -> Result<SliceRaster> {
    if !(zeta.im > 0.0) {
        return Err(Error::domain(
            "horizontal slice",
            format!("Im zeta = {} must be positive", zeta.im),
        ));
    }
    let cells = render_cells(nx, ny, |i, j| {
        let mu = w.cell_center(i, j, nx, ny);
        let mut worst = CODE_MEMBER;
        for k in -(k_max as i64)..=(k_max as i64) {
            let code = membership_maskit(mu - (k as f64) * zeta, p).code();
            if code == CODE_CERTIFIED {
                return CODE_CERTIFIED;
            }
            worst = worst.max(code);
        }
        worst
    });
    let mut parameters = BTreeMap::new();
    parameters.insert("zeta".into(), complex_param(zeta));
    parameters.insert("k_max".into(), json!(k_max));
    Ok(SliceRaster {
        window: *w,
        nx,
        ny,
        cells,
        meta: RasterMeta {
            kind: "mzeta".into(),
            parameters,
            scan: *p,
        },
    })
}

/// Fenchel-Nielsen twist slice raster. The plain variant samples the twist
/// tau directly; the hat variant samples through the inverse of g_lambda so
/// the picture shows the normalized slice with period-2 translation.
pub fn raster_fn(
    lambda: Complex64,
    w: &Window,
    nx: usize,
    ny: usize,
    p: &ScanParams,
    hat: bool,
) -> Result<SliceRaster> {
    if crate::coords::dist_to_2pii_lattice(lambda) <= 1e-9 {
        return Err(Error::domain(
            "fn slice",
            format!("lambda = {lambda} lies on the 2 pi i lattice"),
        ));
    }
    let cells = render_cells(nx, ny, |i, j| {
        let z = w.cell_center(i, j, nx, ny);
        let tau = if hat { g_lam_inv(lambda, z) } else { z };
        membership_fn(lambda, tau, p).code()
    });
    let mut parameters = BTreeMap::new();
    parameters.insert("lambda".into(), complex_param(lambda));
    parameters.insert("hat".into(), json!(hat));
    Ok(SliceRaster {
        window: *w,
        nx,
        ny,
        cells,
        meta: RasterMeta {
            kind: if hat { "fn_hat" } else { "fn" }.into(),
            parameters,
            scan: *p,
        },
    })
}

/// Quarter-turn of a raster: the cell at alpha takes the source verdict at
/// -i alpha, exact on square symmetric grids. Used for L(2) = i M and the
/// limit rasters i M(zeta).
pub fn rotate_raster_im(src: &SliceRaster) -> Result<SliceRaster> {
    let n = src.nx;
    if src.ny != n
        || src.window.width != src.window.height
        || src.window.center != Complex64::new(0.0, 0.0)
    {
        return Err(Error::WindowShape);
    }
    let mut cells = vec![0u8; n * n];
    for j in 0..n {
        for i in 0..n {
            cells[j * n + i] = src.cells[(n - 1 - i) * n + j];
        }
    }
    let mut meta = src.meta.clone();
    meta.kind = format!("i_{}", meta.kind);
    Ok(SliceRaster {
        window: src.window,
        nx: n,
        ny: n,
        cells,
        meta,
    })
}

/// Rotated horizontal slice i M(zeta), the tangential limit shape of linear
/// slices.
pub fn raster_im_zeta(
    zeta: Complex64,
    k_max: u32,
    w: &Window,
    nx: usize,
    ny: usize,
    p: &ScanParams,
) -> Result<SliceRaster> {
    rotate_raster_im(&raster_m_zeta(zeta, k_max, w, nx, ny, p)?)
}

// --- serialization ---------------------------------------------------------

/// Scan settings stored in the sidecar.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ScanMeta {
    max_depth: u32,
    delta: f64,
    tau_real: f64,
    trace_cap: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CountsMeta {
    member: usize,
    likely: usize,
    certified: usize,
    error: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MetaDoc {
    kind: String,
    parameters: BTreeMap<String, serde_json::Value>,
    window: Window,
    nx: usize,
    ny: usize,
    scan: ScanMeta,
    counts: CountsMeta,
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Writes the raster as binary PGM (P5, maxval 255, scanlines top-down) plus
/// a JSON sidecar with all parameters and cell counts.
pub fn write_raster(r: &SliceRaster, path_pgm: &Path, path_meta: &Path) -> Result<()> {
    let mut buf = Vec::with_capacity(r.nx * r.ny + 32);
    write!(&mut buf, "P5\n{} {}\n255\n", r.nx, r.ny).expect("write to Vec");
    for j in (0..r.ny).rev() {
        for i in 0..r.nx {
            buf.push(GRAY_LEVELS[r.cell(i, j) as usize]);
        }
    }
    fs::write(path_pgm, &buf).map_err(|e| Error::io(path_pgm, e))?;

    let [member, likely, certified, error] = r.counts();
    let doc = MetaDoc {
        kind: r.meta.kind.clone(),
        parameters: r.meta.parameters.clone(),
        window: r.window,
        nx: r.nx,
        ny: r.ny,
        scan: ScanMeta {
            max_depth: r.meta.scan.max_depth,
            delta: r.meta.scan.delta,
            tau_real: r.meta.scan.tau_real,
            trace_cap: r.meta.scan.trace_cap,
        },
        counts: CountsMeta {
            member,
            likely,
            certified,
            error,
        },
    };
    let text = serde_json::to_string_pretty(&doc).expect("meta serializes");
    fs::write(path_meta, text).map_err(|e| Error::io(path_meta, e))?;
    Ok(())
}

/// Reads back a raster written by [`write_raster`].
pub fn read_raster(path_pgm: &Path, path_meta: &Path) -> Result<SliceRaster> {
    let meta_text = fs::read_to_string(path_meta).map_err(|e| Error::io(path_meta, e))?;
    let doc: MetaDoc = serde_json::from_str(&meta_text).map_err(|e| Error::Format {
        path: path_meta.display().to_string(),
        detail: e.to_string(),
    })?;

    let bytes = fs::read(path_pgm).map_err(|e| Error::io(path_pgm, e))?;
    let bad = |detail: &str| Error::Format {
        path: path_pgm.display().to_string(),
        detail: detail.to_string(),
    };
    // Header: "P5\n<nx> <ny>\n255\n" as written by write_raster.
    let mut fields = Vec::new();
    let mut pos = 0usize;
    while fields.len() < 4 && pos < bytes.len() {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        fields.push(&bytes[start..pos]);
    }
    if fields.len() != 4 || fields[0] != b"P5" || fields[3] != b"255" {
        return Err(bad("not a maxval-255 binary PGM"));
    }
    let parse = |b: &[u8]| -> Result<usize> {
        std::str::from_utf8(b)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("malformed dimension"))
    };
    let nx = parse(fields[1])?;
    let ny = parse(fields[2])?;
    if nx != doc.nx || ny != doc.ny {
        return Err(bad("dimensions disagree with the sidecar"));
    }
    pos += 1; // single whitespace after maxval
    let data = &bytes[pos..];
    if data.len() != nx * ny {
        return Err(bad("payload length does not match dimensions"));
    }
    let mut cells = vec![0u8; nx * ny];
    for jr in 0..ny {
        let j = ny - 1 - jr;
        for i in 0..nx {
            let g = data[jr * nx + i];
            let code = match g {
                96 => CODE_MEMBER,
                200 => CODE_LIKELY,
                255 => CODE_CERTIFIED,
                0 => CODE_ERROR,
                other => return Err(bad(&format!("unexpected gray level {other}"))),
            };
            cells[j * nx + i] = code;
        }
    }
    Ok(SliceRaster {
        window: doc.window,
        nx,
        ny,
        cells,
        meta: RasterMeta {
            kind: doc.kind,
            parameters: doc.parameters,
            scan: ScanParams {
                max_depth: doc.scan.max_depth,
                delta: doc.scan.delta,
                tau_real: doc.scan.tau_real,
                trace_cap: doc.scan.trace_cap,
                ..ScanParams::default()
            },
        },
    })
}

/// Bytes of the PGM representation, for determinism checks without touching
/// the filesystem.
pub fn pgm_bytes(r: &SliceRaster) -> Vec<u8> {
    let mut buf = Vec::with_capacity(r.nx * r.ny + 32);
    write!(&mut buf, "P5\n{} {}\n255\n", r.nx, r.ny).expect("write to Vec");
    for j in (0..r.ny).rev() {
        for i in 0..r.nx {
            buf.push(GRAY_LEVELS[r.cell(i, j) as usize]);
        }
    }
    buf
}
