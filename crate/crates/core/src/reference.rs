//! Closed-form reference models: the lasso secular function and its band
//! density integral, the three-edge "dihedral" secular equation, and the
//! reflection phase through which a singly attached decoration enters the
//! lasso scattering matrix.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::bonds::{BondSystem, Direction};
use crate::error::{Error, Result};
use crate::graph::MagneticGraph;
use crate::linalg;
use crate::sampling::{chunks, TorusSampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceValue {
    pub value: f64,
    pub method: Method,
    /// Quadrature error estimate, or the Monte Carlo standard error.
    pub error_bound: f64,
}

/// Lasso secular function up to a nonvanishing factor:
/// `2 cos k2 (cos k1 - cos a) - sin k1 sin k2`.
pub fn phi_lasso(kappa1: f64, kappa2: f64, alpha: f64) -> f64 {
    2.0 * kappa2.cos() * (kappa1.cos() - alpha.cos()) - kappa1.sin() * kappa2.sin()
}

/// Whether `phi_lasso(kappa1, kappa2, alpha) = 0` for some real `alpha`:
/// `|2 cos k2 cos k1 - sin k1 sin k2| <= |2 cos k2|`. On `cos k2 = 0` this
/// reduces to `sin k1 sin k2 = 0`.
pub fn lasso_membership(kappa1: f64, kappa2: f64) -> bool {
    let c2 = kappa2.cos();
    (2.0 * c2 * kappa1.cos() - kappa1.sin() * kappa2.sin()).abs() <= (2.0 * c2).abs()
}

/// `arctan(2 cot(k/2))` on `[0, pi]`, written as `pi/2 - arctan(tan(k/2)/2)`
/// so it is finite at `k = 0`.
pub fn lasso_integrand(kappa: f64) -> f64 {
    FRAC_PI_2 - (0.5 * (0.5 * kappa).tan()).atan()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and `|K15 - G7|` on `[a, b]`.
fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let pair = f(c - x) + f(c + x);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss–Kronrod quadrature. Returns the integral and the summed
/// `|K15 - G7|` error estimates of the accepted panels.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let mut stack = vec![(a, b)];
    let (mut total, mut error) = (0.0, 0.0);
    while let Some((lo, hi)) = stack.pop() {
        let (v, e) = gauss_kronrod(&f, lo, hi);
        let share = tol * (hi - lo) / (b - a);
        if e <= share || hi - lo < 1e-12 * (b - a) {
            total += v;
            error += e;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    (total, error)
}

/// `(2 / pi^2) int_0^pi arctan(2 cot(k/2)) dk`, the lasso band density.
pub fn lasso_reference_density() -> ReferenceValue {
    let (integral, error) = integrate(lasso_integrand, 0.0, PI, 1e-13);
    let scale = 2.0 / (PI * PI);
    ReferenceValue {
        value: scale * integral,
        method: Method::Quadrature,
        // Floor at a few ulps so the bound stays positive.
        error_bound: (scale * error).max(1e-15),
    }
}

/// `sin(k1 + k2 + k3) - sin k1 sin k2 sin k3 / 2 - sin k1 - cos a (sin k2 + sin k3)`.
pub fn dihedral_secular(kappa1: f64, kappa2: f64, kappa3: f64, alpha: f64) -> f64 {
    (kappa1 + kappa2 + kappa3).sin() - 0.5 * kappa1.sin() * kappa2.sin() * kappa3.sin()
        - kappa1.sin()
        - alpha.cos() * (kappa2.sin() + kappa3.sin())
}

/// Whether [`dihedral_secular`] has a real `alpha` root at `kappa`.
pub fn dihedral_membership(kappa1: f64, kappa2: f64, kappa3: f64) -> bool {
    let (s1, s2, s3) = (kappa1.sin(), kappa2.sin(), kappa3.sin());
    let lhs = (kappa1 + kappa2 + kappa3).sin() - 0.5 * s1 * s2 * s3 - s1;
    lhs.abs() <= (s2 + s3).abs()
}

/// Monte Carlo volume fraction of the dihedral membership region in `[0, 2pi)^3`.
pub fn dihedral_density(samples: u64, seed: u64) -> Result<ReferenceValue> {
    use rayon::prelude::*;
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let sampler = TorusSampler::new(seed, 3);
    let hits: u64 = chunks(samples, 1 << 16)
        .into_par_iter()
        .map(|(start, count)| {
            let mut hits = 0;
            sampler.for_each_in(start, count, |p| {
                if dihedral_membership(p[0], p[1], p[2]) {
                    hits += 1;
                }
            });
            hits
        })
        .sum();
    let value = hits as f64 / samples as f64;
    let stderr = (value * (1.0 - value) / samples as f64).sqrt();
    Ok(ReferenceValue {
        value,
        method: Method::MonteCarlo,
        error_bound: stderr.max(1.0 / samples as f64),
    })
}

/// Flux-free subgraph hanging off the periodic backbone by a single stem edge.
///
/// `graph` contains the stem edge; its outer endpoint must have degree 1 and
/// is treated as an open lead.
#[derive(Debug, Clone)]
pub struct Decoration {
    bonds: BondSystem,
    incoming: usize,
    outgoing: usize,
}

impl Decoration {
    pub fn new(graph: &MagneticGraph, stem_edge: i64, attachment: i64) -> Result<Self> {
        if graph.edges.iter().any(|e| e.flux.iter().any(|&f| f != 0)) {
            return Err(Error::Decoration("decoration must be flux-free".into()));
        }
        let stem = graph
            .edges
            .iter()
            .find(|e| e.id == stem_edge)
            .ok_or_else(|| Error::Decoration(format!("no stem edge {stem_edge}")))?;
        let (dir, outer) = if stem.to == attachment {
            (Direction::Forward, stem.from)
        } else if stem.from == attachment {
            (Direction::Reverse, stem.to)
        } else {
            return Err(Error::Decoration(format!(
                "vertex {attachment} is not an endpoint of edge {stem_edge}"
            )));
        };
        if stem.is_loop() || graph.degrees()[&outer] != 1 {
            return Err(Error::Decoration(
                "outer end of the stem must be a degree-1 vertex".into(),
            ));
        }
        let bonds = BondSystem::from_graph(graph)?;
        let incoming = bonds.bond(stem_edge, dir).expect("stem bond exists");
        let outgoing = bonds.reverse(incoming);
        Ok(Self {
            bonds,
            incoming,
            outgoing,
        })
    }

    pub fn bonds(&self) -> &BondSystem {
        &self.bonds
    }
}

/// Reflection amplitude at the attachment vertex for a unit wave arriving
/// along the stem, including every multiple scattering inside the decoration.
///
/// With `a_b` the amplitude leaving along interior bond `b`,
/// `(I - S_II e^{ikL_I}) a = S_{I,in}` and
/// `Theta = S_{out,in} + S_{out,I} e^{ikL_I} a`.
pub fn effective_reflection(decoration: &Decoration, k: f64) -> Result<Complex64> {
    let bs = &decoration.bonds;
    let s = bs.scattering();
    let interior: Vec<usize> = (0..bs.bond_count())
        .filter(|&b| b != decoration.incoming && b != decoration.outgoing)
        .collect();
    let n = interior.len();
    let phase: Vec<Complex64> = interior
        .iter()
        .map(|&b| Complex64::from_polar(1.0, k * bs.bond_lengths()[b]))
        .collect();
    let mut direct = Complex64::new(s[(decoration.outgoing, decoration.incoming)], 0.0);
    if n == 0 {
        return Ok(direct);
    }
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for (r, &br) in interior.iter().enumerate() {
        for (c, &bc) in interior.iter().enumerate() {
            let v = -phase[c] * s[(br, bc)];
            m[r * n + c] = if r == c { v + 1.0 } else { v };
        }
    }
    let rhs: Vec<Complex64> = interior
        .iter()
        .map(|&b| Complex64::new(s[(b, decoration.incoming)], 0.0))
        .collect();
    let mut perm = vec![0; n];
    let (_, min_pivot, max_pivot) = linalg::lu_in_place(&mut m, n, &mut perm);
    if min_pivot.is_nan() || min_pivot <= 1e-12 * max_pivot.max(1.0) {
        return Err(Error::Resonance(k));
    }
    let amplitudes = linalg::lu_solve(&m, n, &perm, &rhs);
    for (i, &b) in interior.iter().enumerate() {
        direct += s[(decoration.outgoing, b)] * phase[i] * amplitudes[i];
    }
    Ok(direct)
}

/// Lasso scattering matrix with the degree-1 reflection replaced by `theta`.
pub fn lasso_scattering_with_reflection(theta: Complex64) -> [[Complex64; 4]; 4] {
    let t = Complex64::new(2.0 / 3.0, 0.0);
    let o = Complex64::new(-1.0 / 3.0, 0.0);
    let z = Complex64::new(0.0, 0.0);
    [[t, t, o, z], [z, z, z, theta], [o, t, t, z], [t, o, t, z]]
}

/// `det(I - e^{i(A + kL)} S_theta)` for the lasso with loop length `l1`, stem
/// length `l2` and reflection `theta` at the stem end.
pub fn reduced_lasso_secular(l1: f64, l2: f64, k: f64, alpha: f64, theta: Complex64) -> Complex64 {
    let s = lasso_scattering_with_reflection(theta);
    let phases = [alpha + k * l1, k * l2, -alpha + k * l1, k * l2];
    let mut m = vec![Complex64::new(0.0, 0.0); 16];
    for r in 0..4 {
        let p = Complex64::from_polar(1.0, phases[r]);
        for c in 0..4 {
            m[r * 4 + c] = -p * s[r][c] + if r == c { 1.0 } else { 0.0 };
        }
    }
    let mut perm = [0usize; 4];
    linalg::determinant_in_place(&mut m, 4, &mut perm)
}
