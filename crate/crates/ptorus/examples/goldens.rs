//! Regenerates the figure rasters pinned by the acceptance suite and prints
//! their SHA-256 hashes. Output lands in target/goldens/.

use ptorus::*;
use sha2::{Digest, Sha256};
use std::f64::consts::PI;
use std::path::PathBuf;

fn sha_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The six length parameters of the figure panels: circle points with
/// imaginary parts 0.7, 0.3, 0.1 (tangential) and the diagonal ray values
/// 0.7+0.7i, 0.3+0.3i, 0.1+0.1i (horocyclic).
pub fn panel_lambdas() -> Vec<(String, Complex64)> {
    let mut out = Vec::new();
    for y in [0.7f64, 0.3, 0.1] {
        out.push((format!("circle{y}"), c(1.0 - (1.0 - y * y).sqrt(), y)));
    }
    for t in [0.7, 0.3, 0.1] {
        out.push((format!("ray{t}"), c(t, t)));
    }
    out
}

fn main() {
    let dir = PathBuf::from("target/goldens");
    std::fs::create_dir_all(&dir).unwrap();
    let panel_scan = ScanParams {
        max_depth: 300,
        tau_real: 1e-4,
        ..ScanParams::default()
    };
    let n = 256;

    let w24 = Window::square(c(0.0, 0.0), 24.0).unwrap();
    for (name, lambda) in panel_lambdas() {
        let r = raster_linear(beta_from_lambda(lambda), &w24, n, n, &panel_scan).unwrap();
        let bytes = pgm_bytes(&r);
        let file = dir.join(format!("fig3_{name}.pgm"));
        std::fs::write(&file, &bytes).unwrap();
        println!("fig3_{name} {} counts {:?}", sha_hex(&bytes), r.counts());
    }

    let wfn = Window::square(c(0.0, PI), 2.0 * PI).unwrap();
    for (name, lambda) in panel_lambdas() {
        let r = raster_fn(lambda, &wfn, n, n, &panel_scan, false).unwrap();
        let bytes = pgm_bytes(&r);
        let file = dir.join(format!("fig6_{name}.pgm"));
        std::fs::write(&file, &bytes).unwrap();
        println!("fig6_{name} {} counts {:?}", sha_hex(&bytes), r.counts());
    }

    let w5 = Window::new(c(2.0, 0.0), 0.2, 0.2).unwrap();
    let scan5 = ScanParams {
        max_depth: 80,
        ..ScanParams::default()
    };
    let r = raster_linear(c(5.9, 0.0), &w5, 512, 512, &scan5).unwrap();
    let bytes = pgm_bytes(&r);
    std::fs::write(dir.join("fig5.pgm"), &bytes).unwrap();
    println!("fig5 {} counts {:?}", sha_hex(&bytes), r.counts());
}
