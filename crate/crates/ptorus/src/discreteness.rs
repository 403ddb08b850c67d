//! Semi-decision membership test for the discreteness locus in trace
//! coordinates, by breadth-first descent of the Markov trace tree with
//! escape pruning.
//!
//! The tree is the trivalent tree of Markov triples generated by the three
//! exchange moves (x, y, z) -> (x, y, xy - z) and its permutations. A
//! parameter is certified exterior as soon as some visited trace is real and
//! elliptic (real part strictly inside (-2, 2), small imaginary part): such
//! an element cannot belong to a discrete, faithful, type-preserving
//! representation. Subtrees whose traces provably grow forever are pruned;
//! if every branch is pruned the parameter is presumed a member, and if the
//! depth or node budget runs out first the verdict stays inconclusive.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coords::{gamma_branch, eta, FnCoords, TraceCoords, TraceTriple};

/// Which coordinate of a triple a tree move replaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    X,
    Y,
    Z,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::X, Slot::Y, Slot::Z];
}

/// The exchange move replacing one coordinate: slot z maps (x, y, z) to
/// (x, y, xy - z). Applying the same slot twice returns the input.
pub fn neighbor(t: &TraceTriple, slot: Slot) -> TraceTriple {
    match slot {
        Slot::X => TraceTriple::new_unchecked(t.y * t.z - t.x, t.y, t.z),
        Slot::Y => TraceTriple::new_unchecked(t.x, t.x * t.z - t.y, t.z),
        Slot::Z => TraceTriple::new_unchecked(t.x, t.y, t.x * t.y - t.z),
    }
}

/// Tuning knobs for [`scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanParams {
    /// Maximum number of tree levels explored.
    pub max_depth: u32,
    /// Escape margin: a trace counts as large when its modulus is >= 2 + delta.
    pub delta: f64,
    /// Half-height of the real interval used for exterior certificates; also
    /// its margin from the parabolic endpoints +-2.
    pub tau_real: f64,
    /// Any trace whose modulus exceeds this prunes its branch.
    pub trace_cap: f64,
    /// Hard cap on visited nodes per scan; exhausted scans report
    /// [`Verdict::ExteriorLikely`]. Non-escaping subtrees grow exponentially
    /// with depth, so an unbounded breadth-first scan is not an option.
    pub node_budget: usize,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            max_depth: 60,
            delta: 0.01,
            tau_real: 1e-3,
            trace_cap: 1e12,
            node_budget: 200_000,
        }
    }
}

impl ScanParams {
    pub fn with_depth(self, max_depth: u32) -> Self {
        ScanParams { max_depth, ..self }
    }
}

/// Outcome of a membership scan.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Every branch of the trace tree escaped before the depth cap.
    PresumedMember { depth_scanned: u32 },
    /// Inconclusive: the frontier was still alive at the depth cap or node
    /// budget. `degenerate` marks parameter-level failures (branch tracking,
    /// degenerate families) that never reached a scan.
    ExteriorLikely {
        frontier_size: usize,
        degenerate: bool,
    },
    /// A visited triple contains a real elliptic trace; the witness and the
    /// move sequence leading to it are attached.
    ExteriorCertified {
        witness: TraceTriple,
        path: Vec<Slot>,
    },
}

impl Verdict {
    /// Raster cell code: 0 member, 1 likely exterior, 2 certified exterior,
    /// 3 parameter error.
    pub fn code(&self) -> u8 {
        match self {
            Verdict::PresumedMember { .. } => 0,
            Verdict::ExteriorLikely {
                degenerate: false, ..
            } => 1,
            Verdict::ExteriorCertified { .. } => 2,
            Verdict::ExteriorLikely {
                degenerate: true, ..
            } => 3,
        }
    }

    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::PresumedMember { .. })
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::ExteriorCertified { .. })
    }

    fn degenerate() -> Self {
        Verdict::ExteriorLikely {
            frontier_size: 0,
            degenerate: true,
        }
    }
}

/// A visited tree node; parents form the move paths reported with
/// certificates.
#[derive(Debug, Clone, Copy)]
struct FareyNode {
    coords: [Complex64; 3],
    parent: u32,
    entered: Slot,
}

const NO_PARENT: u32 = u32::MAX;

/// Real elliptic certificate box: |Im t| <= tau and Re t strictly inside
/// (-2 + tau, 2 - tau). The margin keeps accidental parabolics (trace
/// exactly +-2, which are cusps and do belong to the closure) uncertified.
#[inline]
fn violates(t: Complex64, tau: f64) -> bool {
    t.im.abs() <= tau && t.re > -2.0 + tau && t.re < 2.0 - tau
}

#[inline]
fn parabolic(y: Complex64) -> bool {
    let d2 = (y.re - 2.0) * (y.re - 2.0) + y.im * y.im;
    let d2m = (y.re + 2.0) * (y.re + 2.0) + y.im * y.im;
    d2 <= 1e-18 || d2m <= 1e-18
}

/// Sound escape test for the fan of triples (v_j, y, v_{j+1}) around a
/// bounded axis trace y, given the consecutive values v1, v2. The fan obeys
/// v_{j+1} = y v_j - v_{j-1}; once every future value is guaranteed to stay
/// at modulus >= 2 + delta, the whole subtree (fan plus side branches, whose
/// entries are products of large fan values) grows forever.
fn fan_escapes(y: Complex64, v1: Complex64, v2: Complex64, big2: f64) -> bool {
    if v2.norm_sqr() < big2 || v1.norm_sqr() < big2 {
        return false;
    }
    if parabolic(y) {
        // Arithmetic progression: |v_1 + (j-1) d|^2 is a convex quadratic in
        // j, so one increasing step keeps it increasing forever.
        return v2.norm_sqr() >= v1.norm_sqr();
    }
    // v_j = A w^j + B w^-j with w the larger root of w^2 - y w + 1 = 0.
    let disc = (y * y - 4.0).sqrt();
    let r1 = (y + disc) / 2.0;
    let r2 = (y - disc) / 2.0;
    let omega = if r1.norm_sqr() >= r2.norm_sqr() {
        r1
    } else {
        r2
    };
    let r = omega.norm();
    if r <= 1.0 + 1e-8 {
        // Elliptic axis (or numerically indistinguishable from one): the fan
        // oscillates and never provably escapes.
        return false;
    }
    let io = 1.0 / omega;
    let (o1, o2) = (omega, omega * omega);
    let (io1, io2) = (io, io * io);
    let det = o1 * io2 - o2 * io1;
    let a = (v1 * io2 - v2 * io1) / det;
    let b = (o1 * v2 - o2 * v1) / det;
    // |v_j| >= |A| r^j - |B| r^-j for j >= 3, and the bound is increasing.
    let r3 = r * r * r;
    let lower = a.norm() * r3 - b.norm() / r3;
    lower > 0.0 && lower * lower >= big2
}

/// Decides whether the directed edge replacing `old` by `new` (retained
/// coordinates `u`, `v`) enters a subtree that provably escapes.
#[inline]
fn prune_edge(new: Complex64, old: Complex64, u: Complex64, v: Complex64, big2: f64) -> bool {
    if new.norm_sqr() < old.norm_sqr() {
        return false;
    }
    let u_big = u.norm_sqr() >= big2;
    let v_big = v.norm_sqr() >= big2;
    if u_big && v_big {
        // Classical escape: everything in the child triple is large and the
        // replaced coordinate grew, so all descendants grow geometrically.
        return new.norm_sqr() >= big2;
    }
    // One bounded retained coordinate: treat it as a fan axis.
    if u_big {
        fan_escapes(v, u, new, big2)
    } else if v_big {
        fan_escapes(u, v, new, big2)
    } else {
        false
    }
}

/// Breadth-first scan of the trace tree from `t`.
///
/// The seed and its z-exchange partner (the other root of the defining
/// quadratic; the same image group with the marking changed by b -> b^-1)
/// are both placed at depth 0, which makes the verdict independent of the
/// root choice within that pair.
pub fn scan(t: &TraceTriple, p: &ScanParams) -> Verdict {
    let partner = neighbor(t, Slot::Z);
    scan_seeds(t, Some(&partner), p)
}

fn scan_seeds(seed: &TraceTriple, partner: Option<&TraceTriple>, p: &ScanParams) -> Verdict {
    let big2 = (2.0 + p.delta) * (2.0 + p.delta);
    let cap2 = p.trace_cap * p.trace_cap;
    let tau = p.tau_real;

    let mut arena: Vec<FareyNode> = Vec::with_capacity(256);
    let mut frontier: Vec<u32> = Vec::new();
    let mut next: Vec<u32> = Vec::new();

    for c in seed.coords() {
        if violates(c, tau) {
            return Verdict::ExteriorCertified {
                witness: *t_ref(seed),
                path: vec![],
            };
        }
    }
    arena.push(FareyNode {
        coords: seed.coords(),
        parent: NO_PARENT,
        entered: Slot::Z,
    });
    frontier.push(0);

    if let Some(pt) = partner {
        if pt != seed {
            // Only the exchanged z coordinate is new.
            if violates(pt.z, tau) {
                return Verdict::ExteriorCertified {
                    witness: *pt,
                    path: vec![Slot::Z],
                };
            }
            arena.push(FareyNode {
                coords: pt.coords(),
                parent: 0,
                entered: Slot::Z,
            });
            frontier.push(1);
        }
    }

    for level in 0..p.max_depth {
        next.clear();
        let mut exhausted = false;
        for &idx in &frontier {
            let node = arena[idx as usize];
            let [x, y, z] = node.coords;
            for slot in Slot::ALL {
                if slot == node.entered {
                    continue;
                }
                let (old, u, v) = match slot {
                    Slot::X => (x, y, z),
                    Slot::Y => (y, x, z),
                    Slot::Z => (z, x, y),
                };
                let new = u * v - old;
                // Retained coordinates were checked when their node was
                // generated; only the exchanged one needs a look.
                if violates(new, tau) {
                    let coords = child_coords(&node.coords, slot, new);
                    return Verdict::ExteriorCertified {
                        witness: TraceTriple::new_unchecked(coords[0], coords[1], coords[2]),
                        path: path_to(&arena, idx, slot),
                    };
                }
                if new.norm_sqr() > cap2 {
                    continue;
                }
                if prune_edge(new, old, u, v, big2) {
                    continue;
                }
                // Past the node budget the rest of the level is still
                // checked for certificates, so the verdict class does not
                // depend on expansion order within the level.
                if arena.len() >= p.node_budget {
                    exhausted = true;
                    continue;
                }
                let id = arena.len() as u32;
                arena.push(FareyNode {
                    coords: child_coords(&node.coords, slot, new),
                    parent: idx,
                    entered: slot,
                });
                next.push(id);
            }
        }
        if exhausted {
            return Verdict::ExteriorLikely {
                frontier_size: next.len(),
                degenerate: false,
            };
        }
        if next.is_empty() {
            return Verdict::PresumedMember {
                depth_scanned: level + 1,
            };
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    Verdict::ExteriorLikely {
        frontier_size: frontier.len(),
        degenerate: false,
    }
}

#[inline]
fn t_ref(t: &TraceTriple) -> &TraceTriple {
    t
}

#[inline]
fn child_coords(coords: &[Complex64; 3], slot: Slot, new: Complex64) -> [Complex64; 3] {
    let mut c = *coords;
    match slot {
        Slot::X => c[0] = new,
        Slot::Y => c[1] = new,
        Slot::Z => c[2] = new,
    }
    c
}

fn path_to(arena: &[FareyNode], parent: u32, last: Slot) -> Vec<Slot> {
    let mut path = vec![last];
    let mut cur = parent;
    while cur != NO_PARENT {
        let node = &arena[cur as usize];
        if node.parent == NO_PARENT {
            break;
        }
        path.push(node.entered);
        cur = node.parent;
    }
    path.reverse();
    path
}

/// Membership verdict for trace coordinates (alpha, beta): scans from the
/// root triple (alpha, beta, gamma(alpha, beta)). Branch-tracking failures
/// come back as a flagged inconclusive verdict rather than an error.
pub fn membership_trace(alpha: Complex64, beta: Complex64, p: &ScanParams) -> Verdict {
    let root = match TraceCoords::new(alpha, beta).and_then(|tc| gamma_branch(&tc)) {
        Ok(g) => TraceTriple::new_unchecked(alpha, beta, g),
        Err(_) => return Verdict::degenerate(),
    };
    scan(&root, p)
}

/// Membership verdict for the Maskit family: root triple
/// (-i mu, 2, -i mu - 2i).
pub fn membership_maskit(mu: Complex64, p: &ScanParams) -> Verdict {
    let alpha = Complex64::new(mu.im, -mu.re);
    let root = TraceTriple::new_unchecked(
        alpha,
        Complex64::new(2.0, 0.0),
        alpha - Complex64::new(0.0, 2.0),
    );
    scan(&root, p)
}

/// Membership verdict in complex Fenchel-Nielsen coordinates: scans from the
/// trace triple of `eta(lambda, tau)`.
pub fn membership_fn(lambda: Complex64, tau: Complex64, p: &ScanParams) -> Verdict {
    let rep = match FnCoords::new(lambda, tau).and_then(|fnc| eta(&fnc)) {
        Ok(r) => r,
        Err(_) => return Verdict::degenerate(),
    };
    scan(&rep.trace_triple(), p)
}
