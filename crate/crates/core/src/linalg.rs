//! Small dense complex LU kernels working on row-major buffers.
//!
//! The secular determinant is evaluated millions of times on matrices of size
//! `2E`, so these routines work in place on caller-owned storage.

use num_complex::Complex64;

/// In-place LU factorisation with partial pivoting of the `n x n` row-major
/// matrix `a`. Returns the determinant and the smallest and largest pivot
/// magnitudes.
pub fn lu_in_place(a: &mut [Complex64], n: usize, perm: &mut [usize]) -> (Complex64, f64, f64) {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(perm.len(), n);
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    let mut det = Complex64::new(1.0, 0.0);
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0f64;
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].norm_sqr();
        for row in col + 1..n {
            let v = a[row * n + col].norm_sqr();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            perm.swap(col, piv);
            det = -det;
        }
        let pivot = a[col * n + col];
        min_pivot = min_pivot.min(best);
        max_pivot = max_pivot.max(best);
        det *= pivot;
        if best == 0.0 {
            continue;
        }
        let inv = pivot.inv();
        for row in col + 1..n {
            let factor = a[row * n + col] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            a[row * n + col] = factor;
            for j in col + 1..n {
                let upd = factor * a[col * n + j];
                a[row * n + j] -= upd;
            }
        }
    }
    (det, min_pivot.sqrt(), max_pivot.sqrt())
}

/// Determinant of a row-major `n x n` matrix; `a` is overwritten.
pub fn determinant_in_place(a: &mut [Complex64], n: usize, perm: &mut [usize]) -> Complex64 {
    lu_in_place(a, n, perm).0
}

/// Solves `A x = b` given the factorisation produced by [`lu_in_place`].
pub fn lu_solve(lu: &[Complex64], n: usize, perm: &[usize], b: &[Complex64]) -> Vec<Complex64> {
    let mut x: Vec<Complex64> = perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        let mut s = x[i];
        for j in 0..i {
            s -= lu[i * n + j] * x[j];
        }
        x[i] = s;
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= lu[i * n + j] * x[j];
        }
        x[i] = s / lu[i * n + i];
    }
    x
}
