//! Polynomial roots through companion-matrix eigenvalues.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Coefficients below this fraction of the largest one are treated as zero
/// when trimming the leading and trailing ends.
pub const TRIM_RELATIVE: f64 = 1e-14;

/// Roots closer than this are treated as one numerically split multiple root.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Roots of `sum_j coeffs[j] z^j` (lowest order first).
///
/// Negligible leading coefficients only produce roots of huge modulus and are
/// dropped; negligible trailing coefficients are returned as roots at zero.
/// The all-zero polynomial has no finite root set and returns an empty vector.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let cut = TRIM_RELATIVE * scale;
    let hi = coeffs.iter().rposition(|c| c.norm() > cut).unwrap_or(0);
    let lo = coeffs.iter().position(|c| c.norm() > cut).unwrap_or(0);
    let mut roots = vec![Complex64::new(0.0, 0.0); lo];
    let core = &coeffs[lo..=hi];
    let degree = core.len() - 1;
    match degree {
        0 => {}
        1 => roots.push(-core[0] / core[1]),
        2 => roots.extend(quadratic_roots(core[2], core[1], core[0])),
        _ => {
            let lead = core[degree];
            let mut companion = DMatrix::<Complex64>::zeros(degree, degree);
            for i in 1..degree {
                companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
            }
            for i in 0..degree {
                companion[(i, degree - 1)] = -core[i] / lead;
            }
            let (_, t) = companion.schur().unpack();
            roots.extend((0..degree).map(|i| t[(i, i)]));
        }
    }
    roots
}

/// Roots of `a z^2 + b z + c`, `a != 0`, without cancellation.
fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    let q = if (b.conj() * disc).re >= 0.0 {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    if q == Complex64::new(0.0, 0.0) {
        return [q, q];
    }
    [q / a, c / q]
}

/// Whether any root, or the mean of any cluster of nearby roots, lies within
/// `tol` of the unit circle in modulus.
pub fn has_unit_circle_root(roots: &[Complex64], tol: f64) -> bool {
    let on_circle = |z: Complex64| (z.norm() - 1.0).abs() <= tol;
    if roots.iter().any(|&z| on_circle(z)) {
        return true;
    }
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let mut sum = roots[i];
        let mut count = 1.0;
        for j in i + 1..roots.len() {
            if !used[j] && (roots[j] - roots[i]).norm() < CLUSTER_RADIUS {
                used[j] = true;
                sum += roots[j];
                count += 1.0;
            }
        }
        if count > 1.0 && on_circle(sum / count) {
            return true;
        }
    }
    false
}
